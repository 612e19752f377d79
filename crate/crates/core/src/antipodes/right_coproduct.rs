//! The right coproduct `h ↦ h^[1] ⊗_{B^op} h^[2]` induced by an antipode.

use crate::algebroid::prover::{prove_equal_mod_relations, BalancedBop, BalancedBopB, InverseOnTarget, Verdict};
use crate::algebroid::tensors::{first, pair, render_emb4, render_pairs, second, triple, Pairs, Triples};
use crate::algebroid::{elem_check, render_with, Elem};
use crate::error::Result;
use crate::kernel::lin::Lin;
use crate::kernel::scalar::Scalar;
use crate::kernel::word::NCPoly;
use crate::quantum_spaces::Sphere;
use crate::report::{Check, Status};

use super::antipode::AntipodeMap;
use super::canonical::lambda_inv;

/// Degree bound for base monomials in relation certificates.
pub const CERTIFICATE_DEGREE: usize = 4;

/// `h^[1] ⊗ h^[2] = S(S^{-1}(h)_(2)) ⊗ S(S^{-1}(h)_(1))`, as a representative.
pub fn right_coproduct<S: Scalar>(s: &Sphere<S>, a: &AntipodeMap<S>, h: &Elem<S>) -> Result<Pairs<S>> {
    let mut out = Lin::zero();
    for (k, c) in &s.coproduct(&a.apply_inv(s, h)?)? {
        out.add_scaled(&pair(&a.apply(s, &second(k))?, &a.apply(s, &first(k))?), c);
    }
    Ok(out)
}

fn verdict_check<F>(name: String, lhs: String, rhs: String, v: Verdict<F>) -> Check {
    let status = match v {
        Verdict::Proved(_) => Status::Pass,
        Verdict::Refuted(_) => Status::Fail,
        Verdict::Inconclusive(_) => Status::Inconclusive,
    };
    Check::new(name, status, format!("{lhs}  [{}]", v.describe()), rhs)
}

/// The four properties of the right coproduct on the unit and all generators.
pub fn verify_right_coprod_lemma<S: Scalar>(s: &Sphere<S>, a: &AntipodeMap<S>) -> Vec<Check> {
    let nm = &a.name;
    let mut hs: Vec<(String, Elem<S>)> = vec![("1".into(), s.alg_one())];
    match s.generators() {
        Ok(g) => hs.extend(g),
        Err(e) => return vec![Check::from_error(format!("{nm}: generators"), &e)],
    }
    let inv_tgt = |b: &NCPoly<S>| -> Result<Elem<S>> { a.apply_inv(s, &s.tgt(b)?) };
    let inv_tgt: InverseOnTarget<S> = &inv_tgt;
    let bop = BalancedBop { sphere: s, inv_tgt };
    let bopb = BalancedBopB { sphere: s, inv_tgt };
    let mut checks = Vec::new();
    for (lh, h) in &hs {
        checks.push(Check::run(format!("{nm}: h^[1] S(h^[2]) = s(ε(h)) at {lh}"), || {
            let mut lhs = Lin::zero();
            for (k, c) in &right_coproduct(s, a, h)? {
                lhs.add_scaled(&s.alg_mul(&first(k), &a.apply(s, &second(k))?)?, c);
            }
            Ok(elem_check(&lhs, &s.src(&s.counit(h)?)?))
        }));
    }
    for (lh, h) in &hs {
        for (lg, g) in hs.iter().skip(1) {
            checks.push(Check::run(
                format!("{nm}: λ^-1(h ⊗_B h') = S^-1(h'^[1]) h ⊛ h'^[2] at {lh},{lg}"),
                || {
                    let lhs = lambda_inv(s, a, &pair(h, g))?;
                    let mut rhs = Lin::zero();
                    for (k, c) in &right_coproduct(s, a, g)? {
                        let l = s.alg_mul(&a.apply_inv(s, &first(k))?, h)?;
                        rhs.add_scaled(&pair(&l, &second(k)), c);
                    }
                    let (le, re) = (s.e_ast(&lhs)?, s.e_ast(&rhs)?);
                    Ok(Check::compare("", le == re, render_with(&le, render_emb4), render_with(&re, render_emb4)))
                },
            ));
        }
    }
    for (lh, h) in &hs {
        checks.push(Check::run(
            format!("{nm}: h^[1] ⊗_Bop h^[2]_(1) ⊗_B h^[2]_(2) = h_(1)^[1] ⊗_Bop h_(1)^[2] ⊗_B h_(2) at {lh}"),
            || {
                let lhs = s.coproduct_right(&right_coproduct(s, a, h)?)?;
                let mut rhs: Triples<S> = Lin::zero();
                for (k, c) in &s.coproduct(h)? {
                    rhs.add_scaled(&triple(&right_coproduct(s, a, &first(k))?, &second(k)), c);
                }
                let v = prove_equal_mod_relations(&bopb, &lhs, &rhs, CERTIFICATE_DEGREE)?;
                Ok(verdict_check(String::new(), format!("{} terms", lhs.len()), format!("{} terms", rhs.len()), v))
            },
        ));
        checks.push(Check::run(format!("{nm}: S(h)^[1] ⊗_Bop S(h)^[2] = S(h_(2)) ⊗_Bop S(h_(1)) at {lh}"), || {
            let lhs = right_coproduct(s, a, &a.apply(s, h)?)?;
            let mut rhs = Lin::zero();
            for (k, c) in &s.coproduct(h)? {
                rhs.add_scaled(&pair(&a.apply(s, &second(k))?, &a.apply(s, &first(k))?), c);
            }
            let v = prove_equal_mod_relations(&bop, &lhs, &rhs, CERTIFICATE_DEGREE)?;
            Ok(verdict_check(String::new(), render_pairs(&lhs), render_pairs(&rhs), v))
        }));
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::antipodes::antipode::{antipode_flip, antipode_s};
    use crate::kernel::scalar::Laurent;

    #[test]
    fn lemma_holds_for_both_antipodes_at_n2() {
        let s: Sphere<Laurent> = Sphere::new(2, ()).unwrap();
        for a in [antipode_s(&s).unwrap(), antipode_flip(&s).unwrap()] {
            for c in verify_right_coprod_lemma(&s, &a) {
                assert_eq!(c.status, Status::Pass, "{}: {} vs {}", c.name, c.lhs, c.rhs);
            }
        }
    }

    #[test]
    fn unit_right_coproduct() {
        let s: Sphere<Laurent> = Sphere::new(2, ()).unwrap();
        let a = antipode_s(&s).unwrap();
        let one = s.alg_one();
        assert_eq!(right_coproduct(&s, &a, &one).unwrap(), pair(&one, &one));
    }
}
