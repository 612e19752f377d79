//! The canonical map `χ: A ⊗_B A → A ⊗ H`, its inverse through the
//! translation map, and the balanced tensor product decided through `χ`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::kernel::lin::Lin;
use crate::kernel::scalar::Scalar;
use crate::kernel::word::{self, NCPoly, Word};
use crate::quantum_spaces::{render_aa, render_ah, render_t, tensor, Sphere, TensorAA, TensorAH};
use crate::report::Check;

impl<S: Scalar> Sphere<S> {
    /// `χ(a ⊗ ã) = a ã_(0) ⊗ ã_(1)`.
    pub fn chi(&self, x: &TensorAA<S>) -> Result<TensorAH<S>> {
        let mut out = Lin::zero();
        for ((a, b), c) in x {
            let k = b.weight();
            for (w, d) in &self.mul_words(a, b)? {
                out.add_term((k, w.clone()), c.clone() * d.clone());
            }
        }
        Ok(out)
    }

    /// `χ'(a ⊗ ã) = a_(0) ã ⊗ a_(1)`.
    pub fn chi_prime(&self, x: &TensorAA<S>) -> Result<TensorAH<S>> {
        let mut out = Lin::zero();
        for ((a, b), c) in x {
            let k = a.weight();
            for (w, d) in &self.mul_words(a, b)? {
                out.add_term((k, w.clone()), c.clone() * d.clone());
            }
        }
        Ok(out)
    }

    /// `τ(t^k)`, built from `τ(t^{±1})` by `τ(hk) = k<1> h<1> ⊗ h<2> k<2>` and
    /// checked against `χ(τ(t^k)) = 1 ⊗ t^k` before it is cached.
    pub fn translation(&self, k: i32) -> Result<TensorAA<S>> {
        if let Some(t) = self.tau_cache.read().unwrap().get(&k) {
            return Ok(t.clone());
        }
        let n = self.n();
        let value = match k {
            0 => Lin::basis((Word::one(), Word::one())),
            1 => (1..=n)
                .map(|j| {
                    let key = (Word::letter(word::Letter::zs(j as u8)), Word::letter(word::Letter::z(j as u8)));
                    (key, self.q_pow(2 * (n - j) as i32))
                })
                .collect(),
            -1 => (1..=n)
                .map(|j| {
                    let key = (Word::letter(word::Letter::z(j as u8)), Word::letter(word::Letter::zs(j as u8)));
                    (key, S::one())
                })
                .collect(),
            _ => {
                let step = if k > 0 { 1 } else { -1 };
                let inner = self.translation(k - step)?;
                let outer = self.translation(step)?;
                self.translation_product(&inner, &outer)?
            }
        };
        let expected = Lin::basis((k, Word::one()));
        if self.chi(&value)? != expected {
            return Err(Error::Invariant(format!("χ(τ(t^{k})) is not 1 ⊗ t^{k}")));
        }
        self.tau_cache.write().unwrap().insert(k, value.clone());
        Ok(value)
    }

    /// `Σ k<1> h<1> ⊗ h<2> k<2>` for `τ(h) = Σ h<1> ⊗ h<2>`, `τ(k) = Σ k<1> ⊗ k<2>`.
    pub fn translation_product(&self, th: &TensorAA<S>, tk: &TensorAA<S>) -> Result<TensorAA<S>> {
        let mut out = Lin::zero();
        for ((h1, h2), c) in th {
            for ((k1, k2), d) in tk {
                let left = self.mul_words(k1, h1)?;
                let right = self.mul_words(h2, k2)?;
                out.add_scaled(&tensor(&left, &right), &(c.clone() * d.clone()));
            }
        }
        Ok(out)
    }

    /// `χ^{-1}(Σ a_k ⊗ t^k) = Σ a_k τ(t^k)`.
    pub fn chi_inv(&self, x: &TensorAH<S>) -> Result<TensorAA<S>> {
        let mut out = Lin::zero();
        for ((k, a), c) in x {
            let tau = self.translation(*k)?;
            out.add_scaled(&self.left_mul_aa(&Lin::basis(a.clone()), &tau)?, c);
        }
        Ok(out)
    }

    /// `a · (x ⊗ y) = a x ⊗ y`.
    pub fn left_mul_aa(&self, a: &NCPoly<S>, x: &TensorAA<S>) -> Result<TensorAA<S>> {
        let mut out = Lin::zero();
        for ((l, r), c) in x {
            let left = self.mul(a, &Lin::basis(l.clone()))?;
            for (w, d) in &left {
                out.add_term((w.clone(), r.clone()), c.clone() * d.clone());
            }
        }
        Ok(out)
    }

    /// `(x ⊗ y) · a = x ⊗ y a`.
    pub fn right_mul_aa(&self, x: &TensorAA<S>, a: &NCPoly<S>) -> Result<TensorAA<S>> {
        let mut out = Lin::zero();
        for ((l, r), c) in x {
            let right = self.mul(&Lin::basis(r.clone()), a)?;
            for (w, d) in &right {
                out.add_term((l.clone(), w.clone()), c.clone() * d.clone());
            }
        }
        Ok(out)
    }

    pub fn balanced(&self, rep: TensorAA<S>) -> Result<BalancedAB<S>> {
        let chi_form = self.chi(&rep)?;
        Ok(BalancedAB { rep, chi_form })
    }
}

/// `varphi(a ⊗ t^k) = a_(0) ⊗ a_(1) S^{-1}(t^k)`, so that `χ = varphi ∘ χ'`.
pub fn varphi<S: Scalar>(x: &TensorAH<S>) -> TensorAH<S> {
    x.map_keys(|(k, w)| (w.weight() - k, w.clone()))
}

/// A class in `A ⊗_B A`: a representative and its `χ`-image. Two values are
/// equal exactly when their images are.
#[derive(Clone, Debug)]
pub struct BalancedAB<S: Scalar> {
    pub rep: TensorAA<S>,
    pub chi_form: TensorAH<S>,
}

impl<S: Scalar> PartialEq for BalancedAB<S> {
    fn eq(&self, other: &Self) -> bool {
        self.chi_form == other.chi_form
    }
}

/// Membership flags for `L_A`, `(A ⊗ A)^{coH}` and `C(A, H)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Membership {
    pub in_l: bool,
    pub in_co: bool,
    pub in_c: bool,
}

impl<S: Scalar> Sphere<S> {
    /// Evaluates the three defining equations on `x`, whose legs must be
    /// normalized.
    pub fn coinvariance_membership(&self, x: &TensorAA<S>) -> Result<Membership> {
        // a ⊗ ã_(0) ⊗ ã_(1)  vs  a_(0) ⊗ ã ⊗ S(a_(1))
        let l_left = x.map_keys(|(a, b)| (a.clone(), b.clone(), b.weight()));
        let l_right = x.map_keys(|(a, b)| (a.clone(), b.clone(), -a.weight()));
        // a_(0) ⊗ ã_(0) ⊗ a_(1) ã_(1)  vs  a ⊗ ã ⊗ 1
        let co_left = x.map_keys(|(a, b)| (a.clone(), b.clone(), a.weight() + b.weight()));
        let co_right = x.map_keys(|(a, b)| (a.clone(), b.clone(), 0));
        // a_(0) ⊗ τ(a_(1)) ã  vs  a ⊗ ã ⊗_B 1, the ⊗_B decided by χ
        let mut c_left: Lin<(Word, i32, Word), S> = Lin::zero();
        let mut c_right: Lin<(Word, i32, Word), S> = Lin::zero();
        for ((a, b), c) in x {
            let tau = self.translation(a.weight())?;
            let moved = self.right_mul_aa(&tau, &Lin::basis(b.clone()))?;
            for ((k, w), d) in &self.chi(&moved)? {
                c_left.add_term((a.clone(), *k, w.clone()), c.clone() * d.clone());
            }
            for ((k, w), d) in &self.chi(&Lin::basis((b.clone(), Word::one())))? {
                c_right.add_term((a.clone(), *k, w.clone()), c.clone() * d.clone());
            }
        }
        Ok(Membership { in_l: l_left == l_right, in_co: co_left == co_right, in_c: c_left == c_right })
    }
}

/// Splits `x` by the weight of the chosen leg.
fn split_by_weight<S: Scalar>(x: &TensorAA<S>, right_leg: bool) -> BTreeMap<i32, TensorAA<S>> {
    let mut out: BTreeMap<i32, TensorAA<S>> = BTreeMap::new();
    for ((a, b), c) in x {
        let k = if right_leg { b.weight() } else { a.weight() };
        out.entry(k).or_default().add_term((a.clone(), b.clone()), c.clone());
    }
    out
}

/// Checks of the translation-map identities for `h = t^k`, `|k| <= kmax`,
/// and `χ(τ(t^k)) = 1 ⊗ t^k` for `|k| <= kmax + 1`.
pub fn verify_translation_properties<S: Scalar>(s: &Sphere<S>, kmax: i32) -> Vec<Check> {
    let mut checks = Vec::new();
    for k in -(kmax + 1)..=(kmax + 1) {
        checks.push(Check::run(format!("chi of tau(t^{k})"), || {
            let tau = s.translation(k)?;
            let image = s.chi(&tau)?;
            let expected = Lin::basis((k, Word::one()));
            Ok(Check::compare("", image == expected, render_ah(&image), render_ah(&expected)))
        }));
    }
    for k in -kmax..=kmax {
        checks.push(Check::run(format!("tau<2> coaction, h = {}", render_t(k)), || {
            // τ<1> ⊗_B τ<2>_(0) ⊗ τ<2>_(1) = τ ⊗ h: every right-leg weight other
            // than k must vanish in A ⊗_B A.
            let tau = s.translation(k)?;
            let parts = split_by_weight(&tau, true);
            let mut ok = true;
            let mut lhs = Vec::new();
            for (m, part) in &parts {
                let image = s.chi(part)?;
                if *m != k && !image.is_zero() {
                    ok = false;
                }
                lhs.push(format!("[{}] ⊗ {}", render_ah(&image), render_t(*m)));
            }
            let rhs = format!("[{}] ⊗ {}", render_ah(&s.chi(&tau)?), render_t(k));
            Ok(Check::compare("", ok, lhs.join(" + "), rhs))
        }));
        checks.push(Check::run(format!("tau<1> coaction, h = {}", render_t(k)), || {
            let tau = s.translation(k)?;
            let parts = split_by_weight(&tau, false);
            let mut ok = true;
            let mut lhs = Vec::new();
            for (m, part) in &parts {
                let image = s.chi(part)?;
                if *m != -k && !image.is_zero() {
                    ok = false;
                }
                lhs.push(format!("[{}] ⊗ {}", render_ah(&image), render_t(*m)));
            }
            let rhs = format!("[{}] ⊗ {}", render_ah(&s.chi(&tau)?), render_t(-k));
            Ok(Check::compare("", ok, lhs.join(" + "), rhs))
        }));
        checks.push(Check::run(format!("tau<1> tau<2> = 1, h = {}", render_t(k)), || {
            let tau = s.translation(k)?;
            let mut prod = Lin::zero();
            for ((a, b), c) in &tau {
                prod.add_scaled(&s.mul_words(a, b)?, c);
            }
            let one = s.one();
            Ok(Check::compare("", prod == one, word::render(&prod), "1"))
        }));
        for j in -kmax..=kmax {
            checks.push(Check::run(format!("tau multiplicative, h = {}, k = {}", render_t(k), render_t(j)), || {
                let lhs = s.translation(k + j)?;
                let rhs = s.translation_product(&s.translation(k)?, &s.translation(j)?)?;
                let (l, r) = (s.chi(&lhs)?, s.chi(&rhs)?);
                Ok(Check::compare("", l == r, render_ah(&l), render_ah(&r)))
            }));
        }
    }
    for i in 1..=s.n() {
        for a in [s.z(i), s.zs(i)] {
            let label = word::render(&a);
            checks.push(Check::run(format!("a_(0) tau(a_(1)) = 1 ⊗_B a, a = {label}"), || {
                let w = a.keys().next().map(|w| w.weight()).unwrap_or(0);
                let lhs = s.left_mul_aa(&a, &s.translation(w)?)?;
                let rhs = tensor(&s.one(), &a);
                let (l, r) = (s.chi(&lhs)?, s.chi(&rhs)?);
                Ok(Check::compare("", l == r, render_ah(&l), render_ah(&r)))
            }));
        }
    }
    checks
}

/// Generator-level checks of `χ`: well-definedness on `⊗_B`,
/// `χ = varphi ∘ χ'`, `χ ∘ χ^{-1} = id`, and left `A`-linearity.
pub fn verify_chi_structure<S: Scalar>(s: &Sphere<S>) -> Vec<Check> {
    let n = s.n();
    let mut gens = Vec::new();
    for i in 1..=n {
        gens.push(s.z(i));
        gens.push(s.zs(i));
    }
    let mut checks = Vec::new();
    let bases = match s.base_generators() {
        Ok(b) => b,
        Err(e) => return vec![Check::from_error("base generators", &e)],
    };
    for a in &gens {
        for at in &gens {
            for (label, b) in &bases {
                let name = format!("chi balanced: {} ⊗ {}, b = {label}", word::render(a), word::render(at));
                checks.push(Check::run(name, || {
                    let lhs = s.chi(&tensor(&s.mul(a, b)?, at))?;
                    let rhs = s.chi(&tensor(a, &s.mul(b, at)?))?;
                    Ok(Check::compare("", lhs == rhs, render_ah(&lhs), render_ah(&rhs)))
                }));
            }
            let pair = tensor(a, at);
            let name = format!("chi = varphi chi': {}", render_aa(&pair));
            checks.push(Check::run(name, || {
                let lhs = s.chi(&pair)?;
                let rhs = varphi(&s.chi_prime(&pair)?);
                Ok(Check::compare("", lhs == rhs, render_ah(&lhs), render_ah(&rhs)))
            }));
            let name = format!("chi chi_inv = id on {}", render_aa(&pair));
            checks.push(Check::run(name, || {
                let target = s.chi(&pair)?;
                let back = s.chi(&s.chi_inv(&target)?)?;
                Ok(Check::compare("", back == target, render_ah(&back), render_ah(&target)))
            }));
            let name = format!("chi left A-linear: {} · (1 ⊗ {})", word::render(a), word::render(at));
            checks.push(Check::run(name, || {
                let lhs = s.chi(&s.left_mul_aa(a, &tensor(&s.one(), at))?)?;
                let mut rhs = Lin::zero();
                for ((k, w), c) in &s.chi(&tensor(&s.one(), at))? {
                    for (v, d) in &s.mul(a, &Lin::basis(w.clone()))? {
                        rhs.add_term((*k, v.clone()), c.clone() * d.clone());
                    }
                }
                Ok(Check::compare("", lhs == rhs, render_ah(&lhs), render_ah(&rhs)))
            }));
        }
    }
    checks
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::parse::parse;
    use crate::kernel::scalar::Laurent;
    use crate::report::Status;

    fn sphere(n: usize) -> Sphere<Laurent> {
        Sphere::new(n, ()).unwrap()
    }

    fn t2(s: &Sphere<Laurent>, text: &str) -> TensorAA<Laurent> {
        s.normalize_aa(&parse(text).unwrap().into_tensor2().unwrap()).unwrap()
    }

    fn ah(text: &str) -> TensorAH<Laurent> {
        parse(text).unwrap().into_a_tensor_h().unwrap()
    }

    #[test]
    fn chi_examples() {
        let s = sphere(2);
        assert_eq!(s.chi(&t2(&s, "1 @ z1")).unwrap(), ah("z1 @ t"));
        assert_eq!(s.chi(&t2(&s, "q^2*zs1 @ z1 + zs2 @ z2")).unwrap(), ah("1 @ t"));
        assert_eq!(s.chi(&t2(&s, "z1*zs2 @ 1")).unwrap(), ah("z1*zs2 @ 1"));
        assert_eq!(s.chi_prime(&t2(&s, "z1 @ 1")).unwrap(), ah("z1 @ t"));
        let x = t2(&s, "z1 @ zs1");
        assert_eq!(varphi(&s.chi_prime(&x).unwrap()), s.chi(&x).unwrap());
        assert_eq!(s.chi(&x).unwrap(), ah("z1*zs1 @ t^-1"));
    }

    #[test]
    fn translation_examples() {
        let s = sphere(2);
        assert_eq!(s.translation(1).unwrap(), t2(&s, "q^2*zs1 @ z1 + zs2 @ z2"));
        assert_eq!(s.translation(0).unwrap(), t2(&s, "1 @ 1"));
        assert_eq!(s.translation(-1).unwrap(), t2(&s, "z1 @ zs1 + z2 @ zs2"));
        // independent oracle for τ(t^2): the closed double sum
        let mut expected = Lin::zero();
        for j in 1..=2usize {
            for l in 1..=2usize {
                let c = Laurent::q_pow((2 * (2 - j) + 2 * (2 - l)) as i32);
                let left = s.mul(&s.zs(l), &s.zs(j)).unwrap();
                let right = s.mul(&s.z(j), &s.z(l)).unwrap();
                expected.add_scaled(&tensor(&left, &right), &c);
            }
        }
        assert_eq!(s.translation(2).unwrap(), expected);
        assert_eq!(s.chi(&expected).unwrap(), ah("1 @ t^2"));
    }

    #[test]
    fn chi_inv_examples() {
        let s = sphere(2);
        assert_eq!(s.chi_inv(&ah("1 @ t")).unwrap(), s.translation(1).unwrap());
        let a = ah("z1*zs2 @ 1");
        assert_eq!(s.chi_inv(&a).unwrap(), t2(&s, "z1*zs2 @ 1"));
        let x = ah("zs1 @ t^-1");
        let back = s.chi_inv(&x).unwrap();
        assert_eq!(back, t2(&s, "zs1*z1 @ zs1 + zs1*z2 @ zs2"));
        assert_eq!(s.chi(&back).unwrap(), x);
    }

    #[test]
    fn membership_examples() {
        let s = sphere(2);
        let all = Membership { in_l: true, in_co: true, in_c: true };
        let none = Membership { in_l: false, in_co: false, in_c: false };
        assert_eq!(s.coinvariance_membership(&t2(&s, "zs1 @ z2")).unwrap(), all);
        assert_eq!(s.coinvariance_membership(&t2(&s, "z1 @ z2")).unwrap(), none);
        assert_eq!(s.coinvariance_membership(&t2(&s, "1 @ 1")).unwrap(), all);
    }

    #[test]
    fn balanced_equality_is_chi_equality() {
        let s = sphere(2);
        let p = s.proj_p(1, 2).unwrap();
        let left = s.balanced(tensor(&s.mul(&s.z(1), &p).unwrap(), &s.zs(2))).unwrap();
        let right = s.balanced(tensor(&s.z(1), &s.mul(&p, &s.zs(2)).unwrap())).unwrap();
        assert_ne!(left.rep, right.rep);
        assert_eq!(left, right);
    }

    #[test]
    fn property_suites_pass() {
        for n in [1, 2, 3] {
            let s = sphere(n);
            let checks = verify_translation_properties(&s, 2);
            let bad: Vec<_> = checks.iter().filter(|c| c.status != Status::Pass).collect();
            assert!(bad.is_empty(), "n={n}: {bad:?}");
        }
        let checks = verify_chi_structure(&sphere(2));
        assert!(checks.iter().all(|c| c.status == Status::Pass));
    }
}
