//! Tensor squares and cubes of `C(A, H)` and the embeddings that decide
//! equality in the balanced products `⊗_B`, `⊙` and `⊛`.
//!
//! Each embedding applies `χ` to the two legs that the balancing relation
//! couples. Because `χ` descends to `A ⊗_B A`, every relation generator maps
//! to zero. That the embeddings are injective on the balanced products is the
//! one assumption taken on trust; it holds for faithfully flat extensions.

use crate::error::Result;
use crate::kernel::lin::Lin;
use crate::kernel::scalar::Scalar;
use crate::kernel::word::Word;
use crate::quantum_spaces::{render_t, Sphere};

use super::Elem;

/// `(x ⊗ y) ⊗ (u ⊗ v)`.
pub type Key4 = (Word, Word, Word, Word);
/// `(x ⊗ y) ⊗ (u ⊗ v) ⊗ (r ⊗ s)`.
pub type Key6 = (Word, Word, Word, Word, Word, Word);
/// Formal sums of pairs of algebroid monomials.
pub type Pairs<S> = Lin<Key4, S>;
/// Formal sums of triples of algebroid monomials.
pub type Triples<S> = Lin<Key6, S>;
/// Embedded pair: two free legs around one `χ`-image `w ⊗ t^k`, packed as
/// `(free, w, k, free)`.
pub type Emb4 = (Word, Word, i32, Word);
/// Embedded triple: `(x, w1, k1, w2, k2, s)`.
pub type Emb6 = (Word, Word, i32, Word, i32, Word);

pub fn pair<S: Scalar>(h: &Elem<S>, g: &Elem<S>) -> Pairs<S> {
    let mut out = Lin::zero();
    for ((x, y), c) in h {
        for ((u, v), d) in g {
            out.add_term((x.clone(), y.clone(), u.clone(), v.clone()), c.clone() * d.clone());
        }
    }
    out
}

pub fn triple<S: Scalar>(p: &Pairs<S>, g: &Elem<S>) -> Triples<S> {
    let mut out = Lin::zero();
    for ((x, y, u, v), c) in p {
        for ((r, s), d) in g {
            out.add_term((x.clone(), y.clone(), u.clone(), v.clone(), r.clone(), s.clone()), c.clone() * d.clone());
        }
    }
    out
}

pub fn first<S: Scalar>(k: &Key4) -> Elem<S> {
    Lin::basis((k.0.clone(), k.1.clone()))
}

pub fn second<S: Scalar>(k: &Key4) -> Elem<S> {
    Lin::basis((k.2.clone(), k.3.clone()))
}

pub fn render_pairs<S: Scalar>(p: &Pairs<S>) -> String {
    super::render_with(p, |(x, y, u, v)| format!("[{x} @ {y}]⊗[{u} @ {v}]"))
}

pub fn render_emb4(k: &Emb4) -> String {
    format!("[{} | {}·{} | {}]", k.0, k.1, render_t(k.2), k.3)
}

pub fn render_emb6(k: &Emb6) -> String {
    format!("[{} | {}·{} | {}·{} | {}]", k.0, k.1, render_t(k.2), k.3, render_t(k.4), k.5)
}

impl<S: Scalar> Sphere<S> {
    /// `χ(a ⊗ b)` for words, as `(t-exponent, word, coefficient)` terms.
    fn chi_words(&self, a: &Word, b: &Word) -> Result<Vec<(i32, Word, S)>> {
        let k = b.weight();
        Ok(self.mul_words(a, b)?.iter().map(|(w, c)| (k, w.clone(), c.clone())).collect())
    }

    /// `e_B: (x ⊗ y) ⊗_B (u ⊗ v) ↦ x ⊗ χ(y ⊗ u) ⊗ v`.
    pub fn e_b(&self, p: &Pairs<S>) -> Result<Lin<Emb4, S>> {
        let mut out = Lin::zero();
        for ((x, y, u, v), c) in p {
            for (k, w, d) in self.chi_words(y, u)? {
                out.add_term((x.clone(), w, k, v.clone()), c.clone() * d);
            }
        }
        Ok(out)
    }

    /// `e_⊙: (x ⊗ y) ⊙ (u ⊗ v) ↦ x ⊗ u ⊗ χ(v ⊗ y)`, packed `(x, w, k, u)`.
    pub fn e_odot(&self, p: &Pairs<S>) -> Result<Lin<Emb4, S>> {
        let mut out = Lin::zero();
        for ((x, y, u, v), c) in p {
            for (k, w, d) in self.chi_words(v, y)? {
                out.add_term((x.clone(), w, k, u.clone()), c.clone() * d);
            }
        }
        Ok(out)
    }

    /// `e_⊛: (x ⊗ y) ⊛ (u ⊗ v) ↦ χ(u ⊗ x) ⊗ y ⊗ v`, packed `(y, w, k, v)`.
    pub fn e_ast(&self, p: &Pairs<S>) -> Result<Lin<Emb4, S>> {
        let mut out = Lin::zero();
        for ((x, y, u, v), c) in p {
            for (k, w, d) in self.chi_words(u, x)? {
                out.add_term((y.clone(), w, k, v.clone()), c.clone() * d);
            }
        }
        Ok(out)
    }

    /// Five-leg form of `C ⊗_B C ⊗_B C`: `χ` on both inner leg pairs.
    pub fn e_bb(&self, t: &Triples<S>) -> Result<Lin<Emb6, S>> {
        let mut out = Lin::zero();
        for ((x, y, u, v, r, s), c) in t {
            let left = self.chi_words(y, u)?;
            let right = self.chi_words(v, r)?;
            for (k1, w1, d1) in &left {
                for (k2, w2, d2) in &right {
                    let key = (x.clone(), w1.clone(), *k1, w2.clone(), *k2, s.clone());
                    out.add_term(key, c.clone() * d1.clone() * d2.clone());
                }
            }
        }
        Ok(out)
    }

    /// `(Δ ⊗ id)` applied to a pair.
    pub fn coproduct_left(&self, p: &Pairs<S>) -> Result<Triples<S>> {
        let mut out = Lin::zero();
        for (key, c) in p {
            for ((a, b, e, f), d) in &self.coproduct(&first(key))? {
                let k = (a.clone(), b.clone(), e.clone(), f.clone(), key.2.clone(), key.3.clone());
                out.add_term(k, c.clone() * d.clone());
            }
        }
        Ok(out)
    }

    /// `(id ⊗ Δ)` applied to a pair.
    pub fn coproduct_right(&self, p: &Pairs<S>) -> Result<Triples<S>> {
        let mut out = Lin::zero();
        for (key, c) in p {
            for ((a, b, e, f), d) in &self.coproduct(&second(key))? {
                let k = (key.0.clone(), key.1.clone(), a.clone(), b.clone(), e.clone(), f.clone());
                out.add_term(k, c.clone() * d.clone());
            }
        }
        Ok(out)
    }

    /// `Σ s(ε(h1)) h2`.
    pub fn counit_left(&self, p: &Pairs<S>) -> Result<Elem<S>> {
        let mut out = Lin::zero();
        for (key, c) in p {
            let sb = self.src(&self.counit(&first(key))?)?;
            out.add_scaled(&self.alg_mul(&sb, &second(key))?, c);
        }
        Ok(out)
    }

    /// `Σ t(ε(h2)) h1`.
    pub fn counit_right(&self, p: &Pairs<S>) -> Result<Elem<S>> {
        let mut out = Lin::zero();
        for (key, c) in p {
            let tb = self.tgt(&self.counit(&second(key))?)?;
            out.add_scaled(&self.alg_mul(&tb, &first(key))?, c);
        }
        Ok(out)
    }

    /// Applies `f ⊗ g` slotwise.
    pub fn pairs_map(
        &self,
        p: &Pairs<S>,
        mut f: impl FnMut(&Elem<S>) -> Result<Elem<S>>,
        mut g: impl FnMut(&Elem<S>) -> Result<Elem<S>>,
    ) -> Result<Pairs<S>> {
        let mut out = Lin::zero();
        for (key, c) in p {
            out.add_scaled(&pair(&f(&first(key))?, &g(&second(key))?), c);
        }
        Ok(out)
    }

    /// `Σ h1 m ⊗ h2`.
    pub fn pairs_right_mul_first(&self, p: &Pairs<S>, m: &Elem<S>) -> Result<Pairs<S>> {
        self.pairs_map(p, |h| self.alg_mul(h, m), |h| Ok(h.clone()))
    }

    /// `Σ h1 ⊗ h2 m`.
    pub fn pairs_right_mul_second(&self, p: &Pairs<S>, m: &Elem<S>) -> Result<Pairs<S>> {
        self.pairs_map(p, |h| Ok(h.clone()), |h| self.alg_mul(h, m))
    }

    /// Factorwise product `(h1 ⊗ h2)(g1 ⊗ g2) = h1 g1 ⊗ h2 g2`.
    pub fn pairs_mul(&self, p: &Pairs<S>, r: &Pairs<S>) -> Result<Pairs<S>> {
        let mut out = Lin::zero();
        for (k1, c1) in p {
            for (k2, c2) in r {
                let a = self.alg_mul(&first(k1), &first(k2))?;
                let b = self.alg_mul(&second(k1), &second(k2))?;
                out.add_scaled(&pair(&a, &b), &(c1.clone() * c2.clone()));
            }
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::scalar::Laurent;

    /// Each embedding sends its own relation generators to zero.
    #[test]
    fn embeddings_annihilate_relations() {
        let s: Sphere<Laurent> = Sphere::new(2, ()).unwrap();
        let gens = s.generators().unwrap();
        let mut bases = s.base_generators().unwrap();
        let prod = s.mul(&bases[1].1, &bases[6].1).unwrap();
        bases.push(("P12Q21".into(), prod));
        for (_, b) in &bases {
            let (sb, tb) = (s.src(b).unwrap(), s.tgt(b).unwrap());
            for (_, h) in gens.iter().take(5) {
                for (_, g) in gens.iter().skip(3) {
                    // ⊗_B: t(b)u ⊗ u' = u ⊗ s(b)u'
                    let l = pair(&s.alg_mul(&tb, h).unwrap(), g);
                    let r = pair(h, &s.alg_mul(&sb, g).unwrap());
                    assert_eq!(s.e_b(&l).unwrap(), s.e_b(&r).unwrap());
                    assert_ne!(l, r);
                    // ⊙: u t(b) ⊗ u' = u ⊗ t(b) u'
                    let l = pair(&s.alg_mul(h, &tb).unwrap(), g);
                    let r = pair(h, &s.alg_mul(&tb, g).unwrap());
                    assert_eq!(s.e_odot(&l).unwrap(), s.e_odot(&r).unwrap());
                    // ⊛: s(b) u ⊗ u' = u ⊗ u' s(b)
                    let l = pair(&s.alg_mul(&sb, h).unwrap(), g);
                    let r = pair(h, &s.alg_mul(g, &sb).unwrap());
                    assert_eq!(s.e_ast(&l).unwrap(), s.e_ast(&r).unwrap());
                }
            }
        }
    }

    #[test]
    fn embeddings_separate_distinct_generators() {
        let s: Sphere<Laurent> = Sphere::new(2, ()).unwrap();
        let gens = s.generators().unwrap();
        let one = s.alg_one();
        for (i, (_, h)) in gens.iter().enumerate() {
            for (j, (_, g)) in gens.iter().enumerate() {
                let same = s.e_b(&pair(h, &one)).unwrap() == s.e_b(&pair(g, &one)).unwrap();
                assert_eq!(same, i == j);
            }
        }
    }
}
