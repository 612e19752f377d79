//! The sphere algebra `A`, the circle Hopf algebra `H = Q[t, t^-1]`, the
//! coaction, and the projector entries generating the base `B`.

use std::collections::HashMap;
use std::sync::RwLock;

use crate::error::{Error, Result};
use crate::kernel::lin::Lin;
use crate::kernel::rewrite::RewriteSystem;
use crate::kernel::scalar::{Laurent, Scalar};
use crate::kernel::word::{self, Letter, NCPoly, Word};
use crate::report::Check;

/// Element of `A ⊗ A`, keyed by pairs of words.
pub type TensorAA<S> = Lin<(Word, Word), S>;
/// Element of `A ⊗ H`, keyed by `(t-exponent, word)`.
pub type TensorAH<S> = Lin<(i32, Word), S>;
/// Element of `H`, keyed by the exponent of `t`.
pub type HopfH<S> = Lin<i32, S>;
/// `A ⊗ H ⊗ H`, keyed `(word, t-exp, t-exp)`.
pub type TensorAHH<S> = Lin<(Word, i32, i32), S>;

/// The sphere `O(S^{2n-1}_q)` over a coefficient ring, together with caches
/// shared by the Galois and algebroid layers.
pub struct Sphere<S: Scalar> {
    rs: RewriteSystem<S>,
    pub(crate) tau_cache: RwLock<HashMap<i32, TensorAA<S>>>,
}

impl<S: Scalar> Sphere<S> {
    pub fn new(n: usize, ctx: S::Ctx) -> Result<Self> {
        Ok(Sphere { rs: RewriteSystem::new(n, ctx)?, tau_cache: RwLock::new(HashMap::new()) })
    }

    pub fn with_rewrite(rs: RewriteSystem<S>) -> Self {
        Sphere { rs, tau_cache: RwLock::new(HashMap::new()) }
    }

    pub fn n(&self) -> usize {
        self.rs.n()
    }

    pub fn rs(&self) -> &RewriteSystem<S> {
        &self.rs
    }

    pub fn ctx(&self) -> &S::Ctx {
        self.rs.ctx()
    }

    pub fn q_pow(&self, k: i32) -> S {
        self.rs.q_pow(k)
    }

    pub fn lift(&self, value: &Laurent) -> S {
        self.rs.lift(value)
    }

    pub fn int(&self, k: i64) -> S {
        S::from_int(self.ctx(), k)
    }

    pub fn normalize(&self, p: &NCPoly<S>) -> Result<NCPoly<S>> {
        self.rs.normalize(p)
    }

    pub fn mul(&self, a: &NCPoly<S>, b: &NCPoly<S>) -> Result<NCPoly<S>> {
        self.rs.mul(a, b)
    }

    pub fn mul_all(&self, factors: &[&NCPoly<S>]) -> Result<NCPoly<S>> {
        self.rs.mul_all(factors)
    }

    pub fn star(&self, p: &NCPoly<S>) -> Result<NCPoly<S>> {
        self.rs.star(p)
    }

    pub fn z(&self, i: usize) -> NCPoly<S> {
        word::gen(Letter::z(i as u8))
    }

    pub fn zs(&self, i: usize) -> NCPoly<S> {
        word::gen(Letter::zs(i as u8))
    }

    pub fn one(&self) -> NCPoly<S> {
        word::unit()
    }

    pub fn scalar(&self, c: S) -> NCPoly<S> {
        word::scalar(c)
    }

    /// Normal form of a single word.
    pub fn nf_word(&self, w: &Word) -> Result<NCPoly<S>> {
        self.rs.normalize_word_poly(w)
    }

    /// Normal form of the product of two words.
    pub fn mul_words(&self, a: &Word, b: &Word) -> Result<NCPoly<S>> {
        self.rs.normalize_word_poly(&a.concat(b))
    }

    fn check_index(&self, i: usize) -> Result<()> {
        if i == 0 || i > self.n() {
            Err(Error::Config(format!("index {i} out of range 1..={}", self.n())))
        } else {
            Ok(())
        }
    }

    /// `P_ij = z*_i z_j`.
    pub fn proj_p(&self, i: usize, j: usize) -> Result<NCPoly<S>> {
        self.check_index(i)?;
        self.check_index(j)?;
        self.nf_word(&Word(vec![Letter::zs(i as u8), Letter::z(j as u8)]))
    }

    /// `Q_ij = q^{2n-i-j} z_i z*_j`.
    pub fn proj_q(&self, i: usize, j: usize) -> Result<NCPoly<S>> {
        self.check_index(i)?;
        self.check_index(j)?;
        let c = self.q_pow((2 * self.n() - i - j) as i32);
        Ok(self.nf_word(&Word(vec![Letter::z(i as u8), Letter::zs(j as u8)]))?.scale(&c))
    }

    /// All entries `P_ij`, `Q_ij`, labelled.
    pub fn base_generators(&self) -> Result<Vec<(String, NCPoly<S>)>> {
        let mut out = Vec::new();
        for i in 1..=self.n() {
            for j in 1..=self.n() {
                out.push((format!("P{i}{j}"), self.proj_p(i, j)?));
            }
        }
        for i in 1..=self.n() {
            for j in 1..=self.n() {
                out.push((format!("Q{i}{j}"), self.proj_q(i, j)?));
            }
        }
        Ok(out)
    }

    /// All normal words of length at most `max_len`.
    pub fn normal_words(&self, max_len: usize) -> Vec<Word> {
        let letters = self.rs.alphabet();
        let mut out = vec![Word::one()];
        let mut frontier = vec![Word::one()];
        for _ in 0..max_len {
            let mut next = Vec::new();
            for w in &frontier {
                for &l in &letters {
                    let mut v = w.0.clone();
                    v.push(l);
                    let cand = Word(v);
                    if self.rs.is_normal(&cand) {
                        next.push(cand);
                    }
                }
            }
            out.extend(next.iter().cloned());
            frontier = next;
        }
        out
    }

    /// Normal monomials of `B` (weight zero) of length at most `max_len`.
    pub fn base_monomials(&self, max_len: usize) -> Vec<Word> {
        self.normal_words(max_len).into_iter().filter(|w| w.weight() == 0).collect()
    }

    /// Normalizes both legs of a tensor.
    pub fn normalize_aa(&self, x: &TensorAA<S>) -> Result<TensorAA<S>> {
        let mut out = Lin::zero();
        for ((a, b), c) in x {
            let na = self.nf_word(a)?;
            let nb = self.nf_word(b)?;
            for (wa, ca) in &na {
                for (wb, cb) in &nb {
                    out.add_term((wa.clone(), wb.clone()), c.clone() * ca.clone() * cb.clone());
                }
            }
        }
        Ok(out)
    }
}

/// Builds `Σ a_i ⊗ b_i` from polynomial legs.
pub fn tensor<S: Scalar>(a: &NCPoly<S>, b: &NCPoly<S>) -> TensorAA<S> {
    let mut out = Lin::zero();
    for (wa, ca) in a {
        for (wb, cb) in b {
            out.add_term((wa.clone(), wb.clone()), ca.clone() * cb.clone());
        }
    }
    out
}

/// `ρ(a) = Σ_k a_k ⊗ t^k`; the weight grading is the coaction.
pub fn coaction<S: Scalar>(a: &NCPoly<S>) -> TensorAH<S> {
    a.map_keys(|w| (w.weight(), w.clone()))
}

/// `(id ⊗ ε) ∘ ρ`.
pub fn coaction_counit<S: Scalar>(x: &TensorAH<S>) -> NCPoly<S> {
    x.map_keys(|(_, w)| w.clone())
}

/// `(ρ ⊗ id) ∘ ρ` and `(id ⊗ Δ) ∘ ρ`, keyed `(word, t-exp, t-exp)`.
pub fn coaction_twice<S: Scalar>(a: &NCPoly<S>) -> (TensorAHH<S>, TensorAHH<S>) {
    let rho = coaction(a);
    let left = rho.map_keys(|(k, w)| (w.clone(), w.weight(), *k));
    let right = rho.map_keys(|(k, w)| (w.clone(), *k, *k));
    (left, right)
}

pub fn h_antipode<S: Scalar>(h: &HopfH<S>) -> HopfH<S> {
    h.map_keys(|k| -k)
}

pub fn h_coproduct<S: Scalar>(h: &HopfH<S>) -> Lin<(i32, i32), S> {
    h.map_keys(|k| (*k, *k))
}

pub fn h_counit<S: Scalar>(h: &HopfH<S>) -> S {
    h.iter().fold(S::zero(), |acc, (_, c)| acc + c.clone())
}

pub fn h_mul<S: Scalar>(a: &HopfH<S>, b: &HopfH<S>) -> HopfH<S> {
    let mut out = Lin::zero();
    for (ka, ca) in a {
        for (kb, cb) in b {
            out.add_term(ka + kb, ca.clone() * cb.clone());
        }
    }
    out
}

/// `m ∘ (S ⊗ id) ∘ Δ`.
pub fn h_antipode_convolution<S: Scalar>(h: &HopfH<S>) -> HopfH<S> {
    let mut out = Lin::zero();
    for ((a, b), c) in &h_coproduct(h) {
        out.add_term(-a + b, c.clone());
    }
    out
}

/// Antipode of `H` recovered from the Hopf–Galois structure of `K ⊆ H`:
/// `h ↦ h<1> ε(h<2>)` with `τ(t^k) = t^{-k} ⊗ t^k`.
pub fn h_antipode_from_translation<S: Scalar>(h: &HopfH<S>) -> HopfH<S> {
    let mut out = Lin::zero();
    for (k, c) in h {
        let (left, right) = (-k, *k);
        out.add_term(left, c.clone() * h_counit(&Lin::basis(right)));
    }
    out
}

fn poly_eq<S: Scalar>(name: impl Into<String>, lhs: &NCPoly<S>, rhs: &NCPoly<S>) -> Check {
    Check::compare(name, lhs == rhs, word::render(lhs), word::render(rhs))
}

/// Sphere relations in normal form, the star structure, the comodule axioms
/// for the coaction, and the Hopf structure of `H`.
pub fn verify_sphere<S: Scalar>(s: &Sphere<S>) -> Vec<Check> {
    let n = s.n();
    let mut checks = Vec::new();
    checks.push(Check::run("Σ_j q^(2(n-j)) z*_j z_j = 1", || {
        let mut sum = Lin::zero();
        for j in 1..=n {
            sum.add_scaled(&s.mul(&s.zs(j), &s.z(j))?, &s.q_pow(2 * (n - j) as i32));
        }
        Ok(poly_eq("", &sum, &s.one()))
    }));
    checks.push(Check::run("Σ_j z_j z*_j = 1", || {
        let mut sum = Lin::zero();
        for j in 1..=n {
            sum.add_assign(&s.mul(&s.z(j), &s.zs(j))?);
        }
        Ok(poly_eq("", &sum, &s.one()))
    }));
    checks.push(Check::run("z_j z_i = q^-1 z_i z_j and z*_j z*_i = q z*_i z*_j for i < j", || {
        let mut ok = true;
        for i in 1..=n {
            for j in i + 1..=n {
                ok &= s.mul(&s.z(j), &s.z(i))? == s.mul(&s.z(i), &s.z(j))?.scale(&s.q_pow(-1));
                ok &= s.mul(&s.zs(j), &s.zs(i))? == s.mul(&s.zs(i), &s.zs(j))?.scale(&s.q_pow(1));
            }
        }
        Ok(Check::compare("", ok, format!("{} index pairs", n * (n - 1) / 2), "relations hold"))
    }));
    checks.push(Check::run("z*_i z_j = q z_j z*_i for i ≠ j", || {
        let mut ok = true;
        for i in 1..=n {
            for j in (1..=n).filter(|&j| j != i) {
                ok &= s.mul(&s.zs(i), &s.z(j))? == s.mul(&s.z(j), &s.zs(i))?.scale(&s.q_pow(1));
            }
        }
        Ok(Check::compare("", ok, format!("{} index pairs", n * (n - 1)), "relations hold"))
    }));
    let words = s.normal_words(3);
    checks.push(Check::run("star is an involutive anti-automorphism on words up to length 3", || {
        for a in &words {
            let pa = s.nf_word(a)?;
            if s.star(&s.star(&pa)?)? != pa {
                return Ok(Check::compare("", false, a.to_string(), "a** = a"));
            }
            for b in words.iter().take(12) {
                let lhs = s.star(&s.mul_words(a, b)?)?;
                let rhs = s.mul(&s.star(&s.nf_word(b)?)?, &s.star(&pa)?)?;
                if lhs != rhs {
                    return Ok(poly_eq("", &lhs, &rhs));
                }
            }
        }
        Ok(Check::compare("", true, format!("{} words", words.len()), "(ab)* = b*a*"))
    }));
    let monomials = s.normal_words(4);
    checks.push(Check::run("coaction is counital and coassociative up to length 4", || {
        for w in &monomials {
            let a = s.nf_word(w)?;
            let (l, r) = coaction_twice(&a);
            if coaction_counit(&coaction(&a)) != a || l != r {
                return Ok(Check::compare("", false, w.to_string(), "comodule axioms"));
            }
        }
        Ok(Check::compare("", true, format!("{} monomials", monomials.len()), "comodule axioms hold"))
    }));
    checks.push(Check::run("coaction is multiplicative on words up to length 2", || {
        let short = s.normal_words(2);
        for a in &short {
            for b in &short {
                let ab = s.mul_words(a, b)?;
                if coaction(&ab) != ab.map_keys(|w| (a.weight() + b.weight(), w.clone())) {
                    return Ok(Check::compare("", false, format!("{a}·{b}"), "ρ(ab) = ρ(a)ρ(b)"));
                }
            }
        }
        Ok(Check::compare("", true, format!("{} pairs", short.len() * short.len()), "ρ(ab) = ρ(a)ρ(b)"))
    }));
    checks.push(Check::run("H: m(S ⊗ id)Δ = ε on t^k, |k| <= 5", || {
        let mut ok = true;
        for k in -5..=5 {
            let h: HopfH<S> = Lin::basis(k);
            ok &= h_antipode_convolution(&h) == Lin::term(0, h_counit(&h));
            ok &= h_mul(&h_antipode(&h), &h) == Lin::basis(0);
        }
        Ok(Check::compare("", ok, "11 powers of t", "antipode condition"))
    }));
    checks.push(Check::run("H: h<1> ε(h<2>) reproduces S(t) = t^-1", || {
        let t: HopfH<S> = Lin::basis(1);
        let got = h_antipode_from_translation(&t);
        Ok(Check::compare("", got == h_antipode(&t), format!("{:?}", got.keys().collect::<Vec<_>>()), "[-1]"))
    }));
    checks
}

/// `P = v v†` and `Q = w w†` are self-adjoint idempotents, and
/// `v† v = w† w = 1`, for `v = (z*_i)` and `w = (q^{n-i} z_i)`.
pub fn verify_projections<S: Scalar>(s: &Sphere<S>) -> Vec<Check> {
    let n = s.n();
    let mut checks = Vec::new();
    type Entry<S> = fn(&Sphere<S>, usize, usize) -> Result<NCPoly<S>>;
    let mats: [(&str, Entry<S>); 2] = [("P", Sphere::proj_p), ("Q", Sphere::proj_q)];
    for (name, entry) in mats {
        checks.push(Check::run(format!("{name}² = {name}"), || {
            for i in 1..=n {
                for j in 1..=n {
                    let mut sum = Lin::zero();
                    for k in 1..=n {
                        sum.add_assign(&s.mul(&entry(s, i, k)?, &entry(s, k, j)?)?);
                    }
                    let want = entry(s, i, j)?;
                    if sum != want {
                        return Ok(poly_eq(format!("{name}² = {name} at ({i},{j})"), &sum, &want));
                    }
                }
            }
            Ok(Check::compare("", true, format!("{}x{} entries", n, n), "idempotent"))
        }));
        checks.push(Check::run(format!("{name}* = {name}"), || {
            for i in 1..=n {
                for j in 1..=n {
                    let lhs = s.star(&entry(s, i, j)?)?;
                    let want = entry(s, j, i)?;
                    if lhs != want {
                        return Ok(poly_eq("", &lhs, &want));
                    }
                }
            }
            Ok(Check::compare("", true, format!("{}x{} entries", n, n), "self-adjoint"))
        }));
        checks.push(Check::run(format!("{name} has weight zero"), || {
            let mut ok = true;
            for i in 1..=n {
                for j in 1..=n {
                    ok &= word::is_homogeneous(&entry(s, i, j)?, 0);
                }
            }
            Ok(Check::compare("", ok, "all entries", "weight 0"))
        }));
    }
    checks.push(Check::run("v† v = Σ z_j z*_j = 1", || {
        let mut sum = Lin::zero();
        for j in 1..=n {
            sum.add_assign(&s.mul(&s.z(j), &s.zs(j))?);
        }
        Ok(poly_eq("", &sum, &s.one()))
    }));
    checks.push(Check::run("w† w = Σ q^(2(n-j)) z*_j z_j = 1", || {
        let mut sum = Lin::zero();
        for j in 1..=n {
            let wj = s.z(j).scale(&s.q_pow((n - j) as i32));
            sum.add_assign(&s.mul(&s.star(&wj)?, &wj)?);
        }
        Ok(poly_eq("", &sum, &s.one()))
    }));
    checks
}

/// Renders an element of `A ⊗ H` as `a @ t^k + ...`.
pub fn render_ah<S: Scalar>(x: &TensorAH<S>) -> String {
    let mut groups: std::collections::BTreeMap<i32, NCPoly<S>> = Default::default();
    for ((k, w), c) in x {
        groups.entry(*k).or_default().add_term(w.clone(), c.clone());
    }
    if groups.is_empty() {
        return "0".into();
    }
    groups.iter().map(|(k, a)| format!("({}) @ {}", word::render(a), render_t(*k))).collect::<Vec<_>>().join(" + ")
}

pub fn render_t(k: i32) -> String {
    match k {
        0 => "1".into(),
        1 => "t".into(),
        k => format!("t^{k}"),
    }
}

/// Renders an element of `A ⊗ A` as `(a) @ (b) + ...`, grouped by right leg.
pub fn render_aa<S: Scalar>(x: &TensorAA<S>) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut groups: std::collections::BTreeMap<Word, NCPoly<S>> = Default::default();
    for ((a, b), c) in x {
        groups.entry(b.clone()).or_default().add_term(a.clone(), c.clone());
    }
    groups.iter().rev().map(|(b, a)| format!("({}) @ {}", word::render(a), b)).collect::<Vec<_>>().join(" + ")
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn sphere(n: usize) -> Sphere<Laurent> {
        Sphere::new(n, ()).unwrap()
    }

    #[test]
    fn projector_entries() {
        let s = sphere(2);
        assert_eq!(word::render(&s.proj_p(1, 1).unwrap()), "z1*zs1");
        assert_eq!(word::render(&s.proj_q(1, 2).unwrap()), "q*z1*zs2");
        assert!(s.proj_p(0, 1).is_err());
        let p11 = s.proj_p(1, 1).unwrap();
        assert_eq!(s.star(&p11).unwrap(), p11);
    }

    #[test]
    fn coaction_examples() {
        let s = sphere(2);
        assert_eq!(coaction(&s.z(1)), Lin::basis((1, Word::letter(Letter::z(1)))));
        let z1z2 = s.mul(&s.z(1), &s.z(2)).unwrap();
        let rho = coaction(&z1z2);
        assert!(rho.keys().all(|(k, _)| *k == 2));
        assert_eq!(coaction_counit(&rho), z1z2);
        let (l, r) = coaction_twice(&z1z2);
        assert_eq!(l, r);
    }

    #[test]
    fn hopf_structure_of_h() {
        let t: HopfH<Laurent> = Lin::basis(1);
        assert_eq!(h_antipode(&t), Lin::basis(-1));
        assert_eq!(h_antipode(&Lin::<i32, Laurent>::basis(0)), Lin::basis(0));
        assert_eq!(h_coproduct(&Lin::<i32, Laurent>::basis(-3)), Lin::basis((-3, -3)));
        for k in -5..=5 {
            let h: HopfH<Laurent> = Lin::basis(k);
            assert_eq!(h_antipode_convolution(&h), Lin::term(0, h_counit(&h)));
            assert_eq!(h_antipode_from_translation(&h), h_antipode(&h));
        }
        assert!(h_counit(&t).is_one());
    }

    #[test]
    fn normal_word_enumeration() {
        let s = sphere(2);
        let ws = s.normal_words(2);
        assert!(ws.iter().all(|w| s.rs().is_normal(w)));
        // 1, four letters, and the 16 - 7 pairs that are not rule patterns
        assert_eq!(ws.len(), 1 + 4 + 9);
        assert!(s.base_monomials(2).iter().all(|w| w.weight() == 0));
    }
}
