//! Normal forms in the quantum sphere algebra.
//!
//! Relations are oriented into five families of length-two rules:
//!
//! ```text
//! z_j  z_i  -> q^-1 z_i z_j                          (i < j)
//! z*_i z*_j -> q^-1 z*_j z*_i                        (i < j)
//! z*_i z_j  -> q    z_j z*_i                         (i != j)
//! z*_k z_k  -> z_k z*_k + (1 - q^2) sum_{j<k} z_j z*_j
//! z_n  z*_n -> 1 - sum_{j<n} z_j z*_j
//! ```
//!
//! Every rule strictly decreases the degree-lexicographic order with
//! `z_1 < .. < z_n < z*_n < .. < z*_1`, so rewriting terminates. Normal words
//! are a block of `z`s with ascending indices followed by a block of `z*`s
//! with descending indices, and never contain both `z_n` and `z*_n`: the two
//! would meet at the junction where the last rule removes them. With the
//! `z*` block ascending instead, words such as `z_n z*_1 z*_n` would be
//! irreducible and the system would not be confluent.

use std::collections::HashMap;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::RwLock;

use super::lin::Lin;
use super::scalar::{Laurent, Scalar};
use super::word::{Letter, NCPoly, Word};
use crate::error::{Error, Result};

pub const DEFAULT_MAX_DEGREE: usize = 12;
pub const DEFAULT_FUEL: usize = 50_000_000;

pub struct RewriteSystem<S: Scalar> {
    n: u8,
    ctx: S::Ctx,
    max_degree: usize,
    fuel: usize,
    cache: RwLock<HashMap<(Word, Letter), NCPoly<S>>>,
}

impl<S: Scalar> RewriteSystem<S> {
    pub fn new(n: usize, ctx: S::Ctx) -> Result<Self> {
        Self::with_limits(n, ctx, DEFAULT_MAX_DEGREE, DEFAULT_FUEL)
    }

    pub fn with_limits(n: usize, ctx: S::Ctx, max_degree: usize, fuel: usize) -> Result<Self> {
        if n == 0 || n > u8::MAX as usize {
            return Err(Error::Config(format!("n must be in 1..=255, got {n}")));
        }
        Ok(RewriteSystem { n: n as u8, ctx, max_degree, fuel, cache: RwLock::new(HashMap::new()) })
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn ctx(&self) -> &S::Ctx {
        &self.ctx
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn q_pow(&self, k: i32) -> S {
        S::q_pow(&self.ctx, k)
    }

    pub fn lift(&self, value: &Laurent) -> S {
        S::lift(&self.ctx, value)
    }

    /// Replacement for the adjacent pair `a b`, or `None` if it is not a redex.
    pub fn rule(&self, a: Letter, b: Letter) -> Option<NCPoly<S>> {
        let pair = |x: Letter, y: Letter| Word(vec![x, y]);
        match (a.star, b.star) {
            (false, false) if a.index > b.index => Some(Lin::term(pair(b, a), self.q_pow(-1))),
            (true, true) if a.index < b.index => Some(Lin::term(pair(b, a), self.q_pow(-1))),
            (true, false) if a.index != b.index => Some(Lin::term(pair(b, a), self.q_pow(1))),
            (true, false) => {
                let k = a.index;
                let mut out = Lin::basis(pair(Letter::z(k), Letter::zs(k)));
                let c = S::one() - self.q_pow(2);
                for j in 1..k {
                    out.add_term(pair(Letter::z(j), Letter::zs(j)), c.clone());
                }
                Some(out)
            }
            (false, true) if a.index == self.n && b.index == self.n => {
                let mut out = Lin::basis(Word::one());
                for j in 1..self.n {
                    out.add_term(pair(Letter::z(j), Letter::zs(j)), -S::one());
                }
                Some(out)
            }
            _ => None,
        }
    }

    /// All rules as `(pattern, replacement)` pairs.
    pub fn rules(&self) -> Vec<(Word, NCPoly<S>)> {
        let letters = self.alphabet();
        let mut out = Vec::new();
        for &a in &letters {
            for &b in &letters {
                if let Some(r) = self.rule(a, b) {
                    out.push((Word(vec![a, b]), r));
                }
            }
        }
        out
    }

    pub fn alphabet(&self) -> Vec<Letter> {
        (1..=self.n).map(Letter::z).chain((1..=self.n).map(Letter::zs)).collect()
    }

    pub fn is_normal(&self, w: &Word) -> bool {
        w.letters().windows(2).all(|p| self.rule(p[0], p[1]).is_none())
    }

    fn check_letter(&self, l: Letter) -> Result<()> {
        if l.index == 0 || l.index > self.n {
            Err(Error::Config(format!("generator {l} out of range for n = {}", self.n)))
        } else {
            Ok(())
        }
    }

    pub fn check_word(&self, w: &Word) -> Result<()> {
        w.letters().iter().try_for_each(|&l| self.check_letter(l))
    }

    /// Normal form of a polynomial given in the free algebra.
    pub fn normalize(&self, p: &NCPoly<S>) -> Result<NCPoly<S>> {
        let steps = AtomicUsize::new(0);
        let mut out = Lin::zero();
        for (w, c) in p {
            out.add_scaled(&self.normalize_word(w, &steps)?, c);
        }
        Ok(out)
    }

    pub fn normalize_word_poly(&self, w: &Word) -> Result<NCPoly<S>> {
        self.normalize_word(w, &AtomicUsize::new(0))
    }

    fn normalize_word(&self, w: &Word, steps: &AtomicUsize) -> Result<NCPoly<S>> {
        self.check_word(w)?;
        if w.len() > self.max_degree {
            return Err(Error::DegreeCap { cap: self.max_degree, len: w.len() });
        }
        if self.is_normal(w) {
            return Ok(Lin::basis(w.clone()));
        }
        let mut acc: NCPoly<S> = Lin::basis(Word::one());
        for &l in w.letters() {
            acc = self.times_letter(&acc, l, steps)?;
        }
        Ok(acc)
    }

    /// `p * l` for normalized `p`.
    fn times_letter(&self, p: &NCPoly<S>, l: Letter, steps: &AtomicUsize) -> Result<NCPoly<S>> {
        let mut out = Lin::zero();
        for (w, c) in p {
            out.add_scaled(&self.word_times_letter(w, l, steps)?, c);
        }
        Ok(out)
    }

    fn word_times_letter(&self, w: &Word, l: Letter, steps: &AtomicUsize) -> Result<NCPoly<S>> {
        if w.len() + 1 > self.max_degree {
            return Err(Error::DegreeCap { cap: self.max_degree, len: w.len() + 1 });
        }
        let Some(&last) = w.letters().last() else {
            return Ok(Lin::basis(Word::letter(l)));
        };
        let Some(replacement) = self.rule(last, l) else {
            let mut v = w.0.clone();
            v.push(l);
            return Ok(Lin::basis(Word(v)));
        };
        let key = (w.clone(), l);
        if let Some(hit) = self.cache.read().unwrap().get(&key) {
            return Ok(hit.clone());
        }
        if steps.fetch_add(1, Ordering::Relaxed) >= self.fuel {
            return Err(Error::FuelExhausted(self.fuel));
        }
        let prefix = Word(w.letters()[..w.len() - 1].to_vec());
        let mut out = Lin::zero();
        for (u, c) in &replacement {
            let mut acc: NCPoly<S> = Lin::basis(prefix.clone());
            for &x in u.letters() {
                acc = self.times_letter(&acc, x, steps)?;
            }
            out.add_scaled(&acc, c);
        }
        self.cache.write().unwrap().insert(key, out.clone());
        Ok(out)
    }

    /// Product of two polynomials, normalized.
    pub fn mul(&self, a: &NCPoly<S>, b: &NCPoly<S>) -> Result<NCPoly<S>> {
        let steps = AtomicUsize::new(0);
        let a = self.normalize(a)?;
        let mut out = Lin::zero();
        for (w, c) in b {
            self.check_word(w)?;
            let mut acc = a.clone();
            for &l in w.letters() {
                acc = self.times_letter(&acc, l, &steps)?;
            }
            out.add_scaled(&acc, c);
        }
        Ok(out)
    }

    pub fn mul_all(&self, factors: &[&NCPoly<S>]) -> Result<NCPoly<S>> {
        let mut acc: NCPoly<S> = Lin::basis(Word::one());
        for f in factors {
            acc = self.mul(&acc, f)?;
        }
        Ok(acc)
    }

    /// Image under `*`: reverses words and conjugates letters, `q` fixed.
    pub fn star(&self, p: &NCPoly<S>) -> Result<NCPoly<S>> {
        self.normalize(&p.map_keys(|w| w.star()))
    }

    /// Checks that every one-step rewrite of every word of length at most
    /// `max_deg` containing overlapping redexes reaches the same normal form.
    pub fn check_local_confluence(&self, max_deg: usize) -> Result<ConfluenceReport> {
        let max_deg = max_deg.max(2);
        if max_deg > self.max_degree {
            return Err(Error::DegreeCap { cap: self.max_degree, len: max_deg });
        }
        let letters = self.alphabet();
        let mut report =
            ConfluenceReport { n: self.n(), max_deg, words_checked: 0, pairs_checked: 0, failures: Vec::new() };
        let mut frontier: Vec<Word> = vec![Word::one()];
        for len in 1..=max_deg {
            let mut next = Vec::with_capacity(frontier.len() * letters.len());
            for w in &frontier {
                for &l in &letters {
                    let mut v = w.0.clone();
                    v.push(l);
                    next.push(Word(v));
                }
            }
            frontier = next;
            if len < 3 {
                continue;
            }
            for w in &frontier {
                let redexes: Vec<usize> =
                    (0..w.len() - 1).filter(|&i| self.rule(w.0[i], w.0[i + 1]).is_some()).collect();
                if !redexes.windows(2).any(|p| p[1] == p[0] + 1) {
                    continue;
                }
                report.words_checked += 1;
                let branches =
                    redexes.iter().map(|&i| self.normalize(&self.rewrite_at(w, i))).collect::<Result<Vec<_>>>()?;
                for (k, b) in branches.iter().enumerate().skip(1) {
                    report.pairs_checked += 1;
                    if *b != branches[0] {
                        report.failures.push(CriticalPair {
                            word: w.clone(),
                            left_position: redexes[0],
                            right_position: redexes[k],
                            left: super::word::render(&branches[0]),
                            right: super::word::render(b),
                        });
                    }
                }
            }
        }
        Ok(report)
    }

    /// One rewrite step at position `i` (in the free algebra).
    fn rewrite_at(&self, w: &Word, i: usize) -> NCPoly<S> {
        let replacement = self.rule(w.0[i], w.0[i + 1]).expect("redex");
        let prefix = Word(w.0[..i].to_vec());
        let suffix = Word(w.0[i + 2..].to_vec());
        replacement.map_keys(|u| prefix.concat(u).concat(&suffix))
    }
}

#[derive(Clone, Debug)]
pub struct CriticalPair {
    pub word: Word,
    pub left_position: usize,
    pub right_position: usize,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug)]
pub struct ConfluenceReport {
    pub n: usize,
    pub max_deg: usize,
    pub words_checked: usize,
    pub pairs_checked: usize,
    pub failures: Vec<CriticalPair>,
}

impl ConfluenceReport {
    pub fn is_confluent(&self) -> bool {
        self.failures.is_empty()
    }
}
