//! The canonical maps `β: C ⊙ C → C ⊗_B C`, `λ: C ⊛ C → C ⊗_B C` and the
//! inverses an antipode provides.

use crate::algebroid::tensors::{first, pair, render_emb4, second, Pairs};
use crate::algebroid::{render_with, Elem};
use crate::error::Result;
use crate::kernel::lin::Lin;
use crate::kernel::scalar::Scalar;
use crate::quantum_spaces::Sphere;
use crate::report::Check;

use super::antipode::{all_equal, AntipodeMap};

/// `β(h ⊙ h') = h_(1) ⊗_B h_(2) h'`.
pub fn beta<S: Scalar>(s: &Sphere<S>, p: &Pairs<S>) -> Result<Pairs<S>> {
    let mut out = Lin::zero();
    for (k, c) in p {
        let d = s.coproduct(&first(k))?;
        out.add_scaled(&s.pairs_right_mul_second(&d, &second(k))?, c);
    }
    Ok(out)
}

/// `β̃(h ⊗_B h') = S^{-1}(S(h)_(2)) ⊙ S(h)_(1) h'`.
pub fn beta_tilde<S: Scalar>(s: &Sphere<S>, a: &AntipodeMap<S>, p: &Pairs<S>) -> Result<Pairs<S>> {
    let mut out = Lin::zero();
    for (k, c) in p {
        let d = s.coproduct(&a.apply(s, &first(k))?)?;
        for (dk, dc) in &d {
            let l = a.apply_inv(s, &second(dk))?;
            let r = s.alg_mul(&first(dk), &second(k))?;
            out.add_scaled(&pair(&l, &r), &(c.clone() * dc.clone()));
        }
    }
    Ok(out)
}

/// `λ(h ⊛ h') = h'_(1) h ⊗_B h'_(2)`.
pub fn lambda<S: Scalar>(s: &Sphere<S>, p: &Pairs<S>) -> Result<Pairs<S>> {
    let mut out = Lin::zero();
    for (k, c) in p {
        let d = s.coproduct(&second(k))?;
        for (dk, dc) in &d {
            let l = s.alg_mul(&first(dk), &first(k))?;
            out.add_scaled(&pair(&l, &second(dk)), &(c.clone() * dc.clone()));
        }
    }
    Ok(out)
}

/// `λ^{-1}(h ⊗_B h') = S^{-1}(h')_(2) h ⊛ S(S^{-1}(h')_(1))`.
pub fn lambda_inv<S: Scalar>(s: &Sphere<S>, a: &AntipodeMap<S>, p: &Pairs<S>) -> Result<Pairs<S>> {
    let mut out = Lin::zero();
    for (k, c) in p {
        let d = s.coproduct(&a.apply_inv(s, &second(k))?)?;
        for (dk, dc) in &d {
            let l = s.alg_mul(&second(dk), &first(k))?;
            let r = a.apply(s, &first(dk))?;
            out.add_scaled(&pair(&l, &r), &(c.clone() * dc.clone()));
        }
    }
    Ok(out)
}

/// Round trips of `β`, `β̃`, `λ`, `λ^{-1}` on all generator pairs (unit
/// included), compared under the embeddings of the respective products.
pub fn verify_beta_lambda<S: Scalar>(s: &Sphere<S>, a: &AntipodeMap<S>) -> Vec<Check> {
    let nm = &a.name;
    let mut gens: Vec<(String, Elem<S>)> = vec![("1".into(), s.alg_one())];
    match s.generators() {
        Ok(g) => gens.extend(g),
        Err(e) => return vec![Check::from_error(format!("{nm}: generators"), &e)],
    }
    let pairs: Vec<(String, Pairs<S>)> =
        gens.iter().flat_map(|(l1, h)| gens.iter().map(move |(l2, g)| (format!("{l1},{l2}"), pair(h, g)))).collect();
    let render = |x: &Lin<_, S>| render_with(x, render_emb4);
    let one = s.alg_one();
    let gen_only = &gens[1..];
    vec![
        all_equal(
            &format!("{nm}: β(h ⊙ 1) = Δ(h)"),
            gen_only.iter().map(|(l, h)| Ok((l.clone(), s.e_b(&beta(s, &pair(h, &one))?)?, s.e_b(&s.coproduct(h)?)?))),
            render,
        ),
        all_equal(
            &format!("{nm}: λ(1 ⊛ h) = Δ(h)"),
            gen_only
                .iter()
                .map(|(l, h)| Ok((l.clone(), s.e_b(&lambda(s, &pair(&one, h))?)?, s.e_b(&s.coproduct(h)?)?))),
            render,
        ),
        all_equal(
            &format!("{nm}: β̃∘β = id on C ⊙ C"),
            pairs.iter().map(|(l, p)| Ok((l.clone(), s.e_odot(&beta_tilde(s, a, &beta(s, p)?)?)?, s.e_odot(p)?))),
            render,
        ),
        all_equal(
            &format!("{nm}: β∘β̃ = id on C ⊗_B C"),
            pairs.iter().map(|(l, p)| Ok((l.clone(), s.e_b(&beta(s, &beta_tilde(s, a, p)?)?)?, s.e_b(p)?))),
            render,
        ),
        all_equal(
            &format!("{nm}: λ^-1∘λ = id on C ⊛ C"),
            pairs.iter().map(|(l, p)| Ok((l.clone(), s.e_ast(&lambda_inv(s, a, &lambda(s, p)?)?)?, s.e_ast(p)?))),
            render,
        ),
        all_equal(
            &format!("{nm}: λ∘λ^-1 = id on C ⊗_B C"),
            pairs.iter().map(|(l, p)| Ok((l.clone(), s.e_b(&lambda(s, &lambda_inv(s, a, p)?)?)?, s.e_b(p)?))),
            render,
        ),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::antipodes::antipode::{antipode_flip, antipode_s};
    use crate::kernel::scalar::Laurent;
    use crate::report::Status;

    #[test]
    fn round_trips_for_both_antipodes() {
        for n in 1..=3 {
            let s: Sphere<Laurent> = Sphere::new(n, ()).unwrap();
            for a in [antipode_s(&s).unwrap(), antipode_flip(&s).unwrap()] {
                for c in verify_beta_lambda(&s, &a) {
                    assert_eq!(c.status, Status::Pass, "n={n} {}: {} vs {}", c.name, c.lhs, c.rhs);
                }
            }
        }
    }

    #[test]
    fn named_examples() {
        let s: Sphere<Laurent> = Sphere::new(2, ()).unwrap();
        let a = antipode_s(&s).unwrap();
        let (v12, w11) = (s.gen_v(1, 2).unwrap(), s.gen_w(1, 1).unwrap());
        let x = pair(&v12, &w11);
        let back = beta_tilde(&s, &a, &beta(&s, &x).unwrap()).unwrap();
        assert_eq!(s.e_odot(&back).unwrap(), s.e_odot(&x).unwrap());
        let y = pair(&w11, &v12);
        let back = lambda_inv(&s, &a, &lambda(&s, &y).unwrap()).unwrap();
        assert_eq!(s.e_ast(&back).unwrap(), s.e_ast(&y).unwrap());
        // β(1 ⊙ h') = 1 ⊗_B h' and λ(h ⊛ 1) = h ⊗_B 1, syntactically
        let one = s.alg_one();
        assert_eq!(beta(&s, &pair(&one, &w11)).unwrap(), pair(&one, &w11));
        assert_eq!(lambda(&s, &pair(&w11, &one)).unwrap(), pair(&w11, &one));
    }
}
