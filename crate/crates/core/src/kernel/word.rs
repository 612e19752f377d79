//! Letters, words and noncommutative polynomials in the sphere generators.

use std::cmp::Ordering;
use std::fmt;

use super::lin::{render_sum, Lin};
use super::scalar::Scalar;

/// A generator `z_i` (`star == false`) or `z*_i`.
///
/// Letters are ordered `z_1 < .. < z_n < z*_n < .. < z*_1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Letter {
    pub star: bool,
    pub index: u8,
}

impl Letter {
    pub const fn z(index: u8) -> Self {
        Letter { star: false, index }
    }

    pub const fn zs(index: u8) -> Self {
        Letter { star: true, index }
    }

    pub fn weight(self) -> i32 {
        if self.star {
            -1
        } else {
            1
        }
    }

    pub fn conj(self) -> Self {
        Letter { star: !self.star, index: self.index }
    }
}

impl Ord for Letter {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self.star, other.star) {
            (false, false) => self.index.cmp(&other.index),
            (true, true) => other.index.cmp(&self.index),
            (a, b) => a.cmp(&b),
        }
    }
}

impl PartialOrd for Letter {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Letter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.star {
            write!(f, "zs{}", self.index)
        } else {
            write!(f, "z{}", self.index)
        }
    }
}

/// A monomial; the empty word is `1`. Ordered degree-lexicographically.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Word(pub Vec<Letter>);

impl Word {
    pub fn one() -> Self {
        Word(Vec::new())
    }

    pub fn letter(l: Letter) -> Self {
        Word(vec![l])
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn weight(&self) -> i32 {
        self.0.iter().map(|l| l.weight()).sum()
    }

    pub fn concat(&self, other: &Word) -> Word {
        let mut v = Vec::with_capacity(self.len() + other.len());
        v.extend_from_slice(&self.0);
        v.extend_from_slice(&other.0);
        Word(v)
    }

    pub fn max_index(&self) -> u8 {
        self.0.iter().map(|l| l.index).max().unwrap_or(0)
    }

    /// Image under the anti-automorphism `*`: reverse and conjugate each letter.
    pub fn star(&self) -> Word {
        Word(self.0.iter().rev().map(|l| l.conj()).collect())
    }
}

impl Ord for Word {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Word {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "1");
        }
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, "*")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Element of the free algebra on the letters (before or after normalization).
pub type NCPoly<S> = Lin<Word, S>;

pub fn unit<S: Scalar>() -> NCPoly<S> {
    Lin::basis(Word::one())
}

pub fn scalar<S: Scalar>(c: S) -> NCPoly<S> {
    Lin::term(Word::one(), c)
}

pub fn gen<S: Scalar>(l: Letter) -> NCPoly<S> {
    Lin::basis(Word::letter(l))
}

/// Product in the free algebra (concatenation, no rewriting).
pub fn free_mul<S: Scalar>(a: &NCPoly<S>, b: &NCPoly<S>) -> NCPoly<S> {
    let mut out = Lin::zero();
    for (wa, ca) in a {
        for (wb, cb) in b {
            out.add_term(wa.concat(wb), ca.clone() * cb.clone());
        }
    }
    out
}

/// Weight components `a = Σ_k a_k`, keyed by weight.
pub fn weight_components<S: Scalar>(a: &NCPoly<S>) -> std::collections::BTreeMap<i32, NCPoly<S>> {
    let mut out: std::collections::BTreeMap<i32, NCPoly<S>> = Default::default();
    for (w, c) in a {
        out.entry(w.weight()).or_default().add_term(w.clone(), c.clone());
    }
    out
}

pub fn is_homogeneous<S: Scalar>(a: &NCPoly<S>, weight: i32) -> bool {
    a.keys().all(|w| w.weight() == weight)
}

/// Renders a polynomial in the expression grammar, highest deg-lex term first.
pub fn render<S: Scalar>(p: &NCPoly<S>) -> String {
    render_sum(p.iter().rev().map(|(w, c)| (if w.is_empty() { String::new() } else { w.to_string() }, c)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::scalar::Laurent;
    use num_traits::One;

    #[test]
    fn letter_and_word_order() {
        assert!(Letter::z(2) < Letter::zs(1));
        assert!(Letter::z(1) < Letter::z(2));
        assert!(Letter::zs(2) < Letter::zs(1));
        let short = Word(vec![Letter::zs(2)]);
        let long = Word(vec![Letter::z(1), Letter::z(1)]);
        assert!(short < long);
        assert!(Word::one() < short);
    }

    #[test]
    fn weight_and_star() {
        let w = Word(vec![Letter::z(1), Letter::zs(2), Letter::z(2)]);
        assert_eq!(w.weight(), 1);
        assert_eq!(w.star(), Word(vec![Letter::zs(2), Letter::z(2), Letter::zs(1)]));
        assert_eq!(w.to_string(), "z1*zs2*z2");
    }

    #[test]
    fn rendering() {
        let mut p: NCPoly<Laurent> = Lin::zero();
        p.add_term(Word(vec![Letter::z(2), Letter::zs(2)]), Laurent::one());
        p.add_term(Word(vec![Letter::z(1), Letter::zs(1)]), Laurent::one() - Laurent::q_pow(2));
        assert_eq!(render(&p), "z2*zs2 + (1 - q^2)*z1*zs1");
        let mut r: NCPoly<Laurent> = unit();
        r.add_term(Word(vec![Letter::z(1), Letter::zs(1)]), -Laurent::one());
        assert_eq!(render(&r), "-z1*zs1 + 1");
        assert_eq!(render::<Laurent>(&Lin::zero()), "0");
    }
}
