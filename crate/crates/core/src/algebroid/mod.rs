//! The Ehresmann–Schauenburg bialgebroid `C(A, H) ⊆ A ⊗ A^op` over
//! `B = O(CP^{n-1}_q)`: generators, ring and coring structure, and checks of
//! the bialgebroid axioms.

pub mod prover;
pub mod tensors;

use crate::error::{Error, Result};
use crate::kernel::lin::{render_sum, Lin};
use crate::kernel::scalar::Scalar;
use crate::kernel::word::{self, Letter, NCPoly, Word};
use crate::quantum_spaces::{render_aa, tensor, Sphere, TensorAA};
use crate::report::Check;

pub use tensors::{Emb4, Emb6, Key4, Key6, Pairs, Triples};

/// An element of `C(A, H)`, stored as a normalized element of `A ⊗ A`.
pub type Elem<S> = TensorAA<S>;

impl<S: Scalar> Sphere<S> {
    fn idx(&self, i: usize) -> Result<u8> {
        if i == 0 || i > self.n() {
            Err(Error::Config(format!("index {i} out of range 1..={}", self.n())))
        } else {
            Ok(i as u8)
        }
    }

    /// `V_ij = z*_i ⊗ z_j`.
    pub fn gen_v(&self, i: usize, j: usize) -> Result<Elem<S>> {
        let key = (Word::letter(Letter::zs(self.idx(i)?)), Word::letter(Letter::z(self.idx(j)?)));
        Ok(Lin::basis(key))
    }

    /// `W_ij = q^{2n-i-j} z_i ⊗ z*_j`.
    pub fn gen_w(&self, i: usize, j: usize) -> Result<Elem<S>> {
        let key = (Word::letter(Letter::z(self.idx(i)?)), Word::letter(Letter::zs(self.idx(j)?)));
        Ok(Lin::term(key, self.q_pow((2 * self.n() - i - j) as i32)))
    }

    /// All `V_ij` then all `W_ij`, labelled.
    pub fn generators(&self) -> Result<Vec<(String, Elem<S>)>> {
        let n = self.n();
        let mut out = Vec::with_capacity(2 * n * n);
        for i in 1..=n {
            for j in 1..=n {
                out.push((format!("V{i}{j}"), self.gen_v(i, j)?));
            }
        }
        for i in 1..=n {
            for j in 1..=n {
                out.push((format!("W{i}{j}"), self.gen_w(i, j)?));
            }
        }
        Ok(out)
    }

    pub fn alg_one(&self) -> Elem<S> {
        Lin::basis((Word::one(), Word::one()))
    }

    /// `(a ⊗ ã)(c ⊗ c̃) = ac ⊗ c̃ã`.
    pub fn alg_mul(&self, h: &Elem<S>, g: &Elem<S>) -> Result<Elem<S>> {
        let mut out = Lin::zero();
        for ((a, at), c1) in h {
            for ((c, ct), c2) in g {
                let left = self.mul_words(a, c)?;
                let right = self.mul_words(ct, at)?;
                out.add_scaled(&tensor(&left, &right), &(c1.clone() * c2.clone()));
            }
        }
        Ok(out)
    }

    pub fn alg_mul_all(&self, factors: &[&Elem<S>]) -> Result<Elem<S>> {
        let mut acc = self.alg_one();
        for f in factors {
            acc = self.alg_mul(&acc, f)?;
        }
        Ok(acc)
    }

    fn check_base(&self, b: &NCPoly<S>) -> Result<()> {
        match b.keys().find(|w| w.weight() != 0) {
            Some(w) => Err(Error::Domain(format!("{w} has weight {}, not in the base algebra", w.weight()))),
            None => Ok(()),
        }
    }

    /// `s(b) = b ⊗ 1`.
    pub fn src(&self, b: &NCPoly<S>) -> Result<Elem<S>> {
        self.check_base(b)?;
        Ok(tensor(&self.normalize(b)?, &self.one()))
    }

    /// `t(b) = 1 ⊗ b`.
    pub fn tgt(&self, b: &NCPoly<S>) -> Result<Elem<S>> {
        self.check_base(b)?;
        Ok(tensor(&self.one(), &self.normalize(b)?))
    }

    /// `Δ(x ⊗ y) = (x ⊗ τ(t^{wt x})<1>) ⊗_B (τ(t^{wt x})<2> ⊗ y)`.
    pub fn coproduct(&self, h: &Elem<S>) -> Result<Pairs<S>> {
        let mut out = Lin::zero();
        for ((x, y), c) in h {
            let tau = self.translation(x.weight())?;
            for ((t1, t2), d) in &tau {
                out.add_term((x.clone(), t1.clone(), t2.clone(), y.clone()), c.clone() * d.clone());
            }
        }
        Ok(out)
    }

    /// `ε(a ⊗ ã) = a ã`.
    pub fn counit(&self, h: &Elem<S>) -> Result<NCPoly<S>> {
        let mut out = Lin::zero();
        for ((a, b), c) in h {
            out.add_scaled(&self.mul_words(a, b)?, c);
        }
        Ok(out)
    }

    /// Whether every term is weight-balanced, i.e. lies in `C(A, H)`.
    pub fn is_balanced(&self, h: &Elem<S>) -> bool {
        h.keys().all(|(a, b)| a.weight() + b.weight() == 0)
    }
}

/// Renders an algebroid element.
pub fn render_elem<S: Scalar>(h: &Elem<S>) -> String {
    render_aa(h)
}

/// Renders a combination with a custom key printer.
pub fn render_with<K: Ord + Clone, S: Scalar>(x: &Lin<K, S>, key: impl Fn(&K) -> String) -> String {
    render_sum(x.iter().map(|(k, c)| (key(k), c)))
}

fn eq_check<K: Ord + Clone, S: Scalar>(lhs: &Lin<K, S>, rhs: &Lin<K, S>, key: impl Fn(&K) -> String) -> Check {
    Check::compare("", lhs == rhs, render_with(lhs, &key), render_with(rhs, &key))
}

pub(crate) fn elem_check<S: Scalar>(lhs: &Elem<S>, rhs: &Elem<S>) -> Check {
    Check::compare("", lhs == rhs, render_aa(lhs), render_aa(rhs))
}

pub(crate) fn poly_check<S: Scalar>(lhs: &NCPoly<S>, rhs: &NCPoly<S>) -> Check {
    Check::compare("", lhs == rhs, word::render(lhs), word::render(rhs))
}

pub(crate) fn emb_check<S: Scalar>(lhs: &Lin<Emb4, S>, rhs: &Lin<Emb4, S>) -> Check {
    eq_check(lhs, rhs, tensors::render_emb4)
}

/// The V/W commutation relations, the projective-space form of source and
/// target, and the bialgebroid axioms on generators.
pub fn verify_bialgebroid_axioms<S: Scalar>(s: &Sphere<S>) -> Vec<Check> {
    let mut checks = Vec::new();
    let gens = match s.generators() {
        Ok(g) => g,
        Err(e) => return vec![Check::from_error("generators", &e)],
    };
    let bases = match s.base_generators() {
        Ok(b) => b,
        Err(e) => return vec![Check::from_error("base generators", &e)],
    };
    checks.extend(commutation_checks(s));
    checks.extend(source_target_checks(s));

    let mut elems = vec![("1".to_string(), s.alg_one())];
    elems.extend(gens.iter().cloned());
    for (label, h) in &elems {
        checks.push(Check::run(format!("coassociativity on {label}"), || {
            let d = s.coproduct(h)?;
            let left = s.coproduct_left(&d)?;
            let right = s.coproduct_right(&d)?;
            let (l, r) = (s.e_bb(&left)?, s.e_bb(&right)?);
            Ok(eq_check(&l, &r, tensors::render_emb6))
        }));
        checks.push(Check::run(format!("counit law s(ε(h1))h2 = h on {label}"), || {
            let lhs = s.counit_left(&s.coproduct(h)?)?;
            Ok(elem_check(&lhs, h))
        }));
        checks.push(Check::run(format!("counit law t(ε(h2))h1 = h on {label}"), || {
            let lhs = s.counit_right(&s.coproduct(h)?)?;
            Ok(elem_check(&lhs, h))
        }));
        for (bl, b) in &bases {
            checks.push(Check::run(format!("Takeuchi membership of Δ({label}), b = {bl}"), || {
                let d = s.coproduct(h)?;
                let lhs = s.pairs_right_mul_first(&d, &s.tgt(b)?)?;
                let rhs = s.pairs_right_mul_second(&d, &s.src(b)?)?;
                Ok(emb_check(&s.e_b(&lhs)?, &s.e_b(&rhs)?))
            }));
        }
    }
    for (bl, b) in &bases {
        checks.push(Check::run(format!("Δ(s({bl})) = s({bl}) ⊗_B 1"), || {
            let sb = s.src(b)?;
            let lhs = s.e_b(&s.coproduct(&sb)?)?;
            let rhs = s.e_b(&tensors::pair(&sb, &s.alg_one()))?;
            Ok(emb_check(&lhs, &rhs))
        }));
        checks.push(Check::run(format!("Δ(t({bl})) = 1 ⊗_B t({bl})"), || {
            let tb = s.tgt(b)?;
            let lhs = s.e_b(&s.coproduct(&tb)?)?;
            let rhs = s.e_b(&tensors::pair(&s.alg_one(), &tb))?;
            Ok(emb_check(&lhs, &rhs))
        }));
        for (cl, c) in &bases {
            checks.push(Check::run(format!("s({bl}) t({cl}) = t({cl}) s({bl})"), || {
                let (sb, tc) = (s.src(b)?, s.tgt(c)?);
                Ok(elem_check(&s.alg_mul(&sb, &tc)?, &s.alg_mul(&tc, &sb)?))
            }));
        }
    }
    for (hl, h) in &gens {
        for (gl, g) in &gens {
            checks.push(Check::run(format!("Δ multiplicative on {hl}·{gl}"), || {
                let lhs = s.coproduct(&s.alg_mul(h, g)?)?;
                let rhs = s.pairs_mul(&s.coproduct(h)?, &s.coproduct(g)?)?;
                Ok(emb_check(&s.e_b(&lhs)?, &s.e_b(&rhs)?))
            }));
            checks.push(Check::run(format!("ε(hh') = ε(h s(ε(h'))) on {hl}·{gl}"), || {
                let lhs = s.counit(&s.alg_mul(h, g)?)?;
                let rhs = s.counit(&s.alg_mul(h, &s.src(&s.counit(g)?)?)?)?;
                Ok(poly_check(&lhs, &rhs))
            }));
            checks.push(Check::run(format!("ε(hh') = ε(h t(ε(h'))) on {hl}·{gl}"), || {
                let lhs = s.counit(&s.alg_mul(h, g)?)?;
                let rhs = s.counit(&s.alg_mul(h, &s.tgt(&s.counit(g)?)?)?)?;
                Ok(poly_check(&lhs, &rhs))
            }));
        }
    }
    checks
}

/// `V_ik V_jk = q^{-1} V_jk V_ik` and its companions, and the same for `W`.
fn commutation_checks<S: Scalar>(s: &Sphere<S>) -> Vec<Check> {
    let n = s.n();
    let mut checks = Vec::new();
    // (name, exponent) for: same column, same row, crossed, anti-crossed
    let families: [(&str, [i32; 4]); 2] = [("V", [-1, -1, 0, -2]), ("W", [1, 1, 0, 2])];
    for (fam, exps) in families {
        let g = |i: usize, j: usize| if fam == "V" { s.gen_v(i, j) } else { s.gen_w(i, j) };
        let mut rel = |name: String, a: (usize, usize), b: (usize, usize), e: i32| {
            checks.push(Check::run(name, || {
                let (x, y) = (g(a.0, a.1)?, g(b.0, b.1)?);
                let lhs = s.alg_mul(&x, &y)?;
                let rhs = s.alg_mul(&y, &x)?.scale(&s.q_pow(e));
                Ok(elem_check(&lhs, &rhs))
            }));
        };
        for i in 1..=n {
            for j in i + 1..=n {
                for k in 1..=n {
                    rel(
                        format!("{fam}{i}{k}{fam}{j}{k} = q^{} {fam}{j}{k}{fam}{i}{k}", exps[0]),
                        (i, k),
                        (j, k),
                        exps[0],
                    );
                    rel(
                        format!("{fam}{k}{i}{fam}{k}{j} = q^{} {fam}{k}{j}{fam}{k}{i}", exps[1]),
                        (k, i),
                        (k, j),
                        exps[1],
                    );
                }
                for l in 1..=n {
                    for k in l + 1..=n {
                        rel(format!("{fam}{i}{k}{fam}{j}{l} = {fam}{j}{l}{fam}{i}{k}"), (i, k), (j, l), exps[2]);
                        rel(
                            format!("{fam}{i}{l}{fam}{j}{k} = q^{} {fam}{j}{k}{fam}{i}{l}", exps[3]),
                            (i, l),
                            (j, k),
                            exps[3],
                        );
                    }
                }
            }
        }
    }
    checks
}

/// `s(P_ij) = Σ_k q^{j-k} V_ik W_jk` and the three companion expansions, plus
/// the spanning claim in bidegree (1, 1).
type Expansion<'a, S> = Box<dyn Fn() -> Result<(Elem<S>, Elem<S>)> + 'a>;

fn source_target_checks<S: Scalar>(s: &Sphere<S>) -> Vec<Check> {
    let n = s.n();
    let mut checks = Vec::new();
    for i in 1..=n {
        for j in 1..=n {
            let expansions: [(&str, Expansion<'_, S>); 4] = [
                (
                    "s(P{i}{j}) = Σ_k q^(j-k) V{i}k W{j}k",
                    Box::new(move || {
                        let mut rhs = Lin::zero();
                        for k in 1..=n {
                            let t = s.alg_mul(&s.gen_v(i, k)?, &s.gen_w(j, k)?)?;
                            rhs.add_scaled(&t, &s.q_pow(j as i32 - k as i32));
                        }
                        Ok((s.src(&s.proj_p(i, j)?)?, rhs))
                    }),
                ),
                (
                    "s(Q{i}{j}) = Σ_k q^(k-j) W{i}k V{j}k",
                    Box::new(move || {
                        let mut rhs = Lin::zero();
                        for k in 1..=n {
                            let t = s.alg_mul(&s.gen_w(i, k)?, &s.gen_v(j, k)?)?;
                            rhs.add_scaled(&t, &s.q_pow(k as i32 - j as i32));
                        }
                        Ok((s.src(&s.proj_q(i, j)?)?, rhs))
                    }),
                ),
                (
                    "t(P{i}{j}) = Σ_k q^(i-k) Vk{j} Wk{i}",
                    Box::new(move || {
                        let mut rhs = Lin::zero();
                        for k in 1..=n {
                            let t = s.alg_mul(&s.gen_v(k, j)?, &s.gen_w(k, i)?)?;
                            rhs.add_scaled(&t, &s.q_pow(i as i32 - k as i32));
                        }
                        Ok((s.tgt(&s.proj_p(i, j)?)?, rhs))
                    }),
                ),
                (
                    "t(Q{i}{j}) = Σ_k q^(k-i) Wk{j} Vk{i}",
                    Box::new(move || {
                        let mut rhs = Lin::zero();
                        for k in 1..=n {
                            let t = s.alg_mul(&s.gen_w(k, j)?, &s.gen_v(k, i)?)?;
                            rhs.add_scaled(&t, &s.q_pow(k as i32 - i as i32));
                        }
                        Ok((s.tgt(&s.proj_q(i, j)?)?, rhs))
                    }),
                ),
            ];
            for (name, f) in expansions {
                let name = name.replace("{i}", &i.to_string()).replace("{j}", &j.to_string());
                checks.push(Check::run(name, || {
                    let (lhs, rhs) = f()?;
                    Ok(elem_check(&lhs, &rhs))
                }));
            }
            checks.push(Check::run(format!("ε(V{i}{j}) = P{i}{j}"), || {
                Ok(poly_check(&s.counit(&s.gen_v(i, j)?)?, &s.proj_p(i, j)?))
            }));
            checks.push(Check::run(format!("ε(W{i}{j}) = Q{i}{j}"), || {
                Ok(poly_check(&s.counit(&s.gen_w(i, j)?)?, &s.proj_q(i, j)?))
            }));
            for (fam, gen) in [("V", s.gen_v(i, j)), ("W", s.gen_w(i, j))] {
                checks.push(Check::run(format!("Δ({fam}{i}{j}) = Σ_k {fam}{i}k ⊗_B {fam}k{j}"), || {
                    let h = gen?;
                    let mut rhs = Lin::zero();
                    for k in 1..=n {
                        let (a, b) = if fam == "V" {
                            (s.gen_v(i, k)?, s.gen_v(k, j)?)
                        } else {
                            (s.gen_w(i, k)?, s.gen_w(k, j)?)
                        };
                        rhs.add_assign(&tensors::pair(&a, &b));
                    }
                    Ok(emb_check(&s.e_b(&s.coproduct(&h)?)?, &s.e_b(&rhs)?))
                }));
            }
            checks.push(Check::run(format!("z*{i} ⊗ z{j} and z{i} ⊗ z*{j} are generator multiples"), || {
                let a = tensor(&s.zs(i), &s.z(j));
                let b = tensor(&s.z(i), &s.zs(j));
                let w = s.gen_w(i, j)?.scale(&s.q_pow(-((2 * n - i - j) as i32)));
                Ok(Check::compare("", a == s.gen_v(i, j)? && b == w, render_aa(&a), render_aa(&b)))
            }));
        }
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::scalar::Laurent;
    use crate::report::Status;

    fn sphere(n: usize) -> Sphere<Laurent> {
        Sphere::new(n, ()).unwrap()
    }

    #[test]
    fn generators_and_structure_maps() {
        let s = sphere(2);
        assert_eq!(render_elem(&s.gen_v(1, 2).unwrap()), "(zs1) @ z2");
        assert_eq!(render_elem(&s.gen_w(1, 2).unwrap()), "(q*z1) @ zs2");
        assert!(s.gen_v(3, 1).is_err());
        let v = s.gen_v(1, 2).unwrap();
        assert_eq!(s.alg_mul(&s.alg_one(), &v).unwrap(), v);
        assert_eq!(s.counit(&v).unwrap(), s.proj_p(1, 2).unwrap());
        assert_eq!(s.counit(&s.alg_one()).unwrap(), s.one());
        assert_eq!(s.tgt(&s.one()).unwrap(), s.alg_one());
        assert!(s.src(&s.z(1)).is_err());
        let m = s.coinvariance_membership(&v).unwrap();
        assert!(m.in_l && m.in_co && m.in_c);
    }

    #[test]
    fn coproduct_of_generators() {
        let s = sphere(2);
        let d = s.coproduct(&s.gen_v(1, 2).unwrap()).unwrap();
        let mut expected = Lin::zero();
        for k in 1..=2 {
            expected.add_assign(&tensors::pair(&s.gen_v(1, k).unwrap(), &s.gen_v(k, 2).unwrap()));
        }
        assert_eq!(d, expected);
        assert_eq!(s.coproduct(&s.alg_one()).unwrap(), tensors::pair(&s.alg_one(), &s.alg_one()));
    }

    #[test]
    fn axioms_hold() {
        for n in [1, 2, 3] {
            let checks = verify_bialgebroid_axioms(&sphere(n));
            let bad: Vec<_> = checks.iter().filter(|c| c.status != Status::Pass).collect();
            assert!(bad.is_empty(), "n={n}: {bad:#?}");
        }
    }
}
