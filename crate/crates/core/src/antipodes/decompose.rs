//! Factoring elements of `C(A, H)` through the generators `V_ij`, `W_ij`.
//!
//! A monomial `x ⊗ y` is peeled one letter at a time using the sphere
//! relations `Σ_j q^{2(n-j)} z*_j z_j = 1` and `Σ_j z_j z*_j = 1`:
//!
//! - `z*_i x' ⊗ y = Σ_j q^{2(n-j)} V_ij · (x' ⊗ y z*_j)`
//! - `z_i x' ⊗ y = Σ_l q^{-(2n-i-l)} W_il · (x' ⊗ y z_l)`
//! - `1 ⊗ z_m y' z*_l = Σ_j q^{-(2n-j-l)} W_jl · (1 ⊗ y') · V_jm`
//!
//! Each step shortens the left leg, or the right leg when the left is empty.

use std::fmt;

use crate::error::{Error, Result};
use crate::kernel::lin::Lin;
use crate::kernel::scalar::Scalar;
use crate::kernel::word::{Letter, Word};
use crate::quantum_spaces::{tensor, Sphere};

use crate::algebroid::Elem;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Gen {
    V(u8, u8),
    W(u8, u8),
}

impl fmt::Display for Gen {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Gen::V(i, j) => write!(f, "V{i}{j}"),
            Gen::W(i, j) => write!(f, "W{i}{j}"),
        }
    }
}

impl Gen {
    pub fn all(n: usize) -> Vec<Gen> {
        let idx = 1..=n as u8;
        let v = idx.clone().flat_map(|i| (1..=n as u8).map(move |j| Gen::V(i, j)));
        let w = idx.flat_map(|i| (1..=n as u8).map(move |j| Gen::W(i, j)));
        v.chain(w).collect()
    }

    pub fn elem<S: Scalar>(self, s: &Sphere<S>) -> Result<Elem<S>> {
        match self {
            Gen::V(i, j) => s.gen_v(i as usize, j as usize),
            Gen::W(i, j) => s.gen_w(i as usize, j as usize),
        }
    }
}

/// One peeling step: `coeff · left · rest · right`.
pub(crate) struct Step<S: Scalar> {
    pub coeff: S,
    pub left: Gen,
    pub rest: Elem<S>,
    pub right: Option<Gen>,
}

/// Peels one generator off a normalized, weight-balanced monomial. Returns
/// no steps for `1 ⊗ 1`.
pub(crate) fn split<S: Scalar>(s: &Sphere<S>, x: &Word, y: &Word) -> Result<Vec<Step<S>>> {
    if x.weight() + y.weight() != 0 {
        return Err(Error::Domain(format!("{x} @ {y} is not weight-balanced")));
    }
    let n = s.n() as u8;
    let two_n = 2 * s.n() as i32;
    let mut out = Vec::new();
    if let Some((&first, tail)) = x.letters().split_first() {
        let x_rest = Word(tail.to_vec());
        let i = first.index;
        for j in 1..=n {
            let (coeff, left, letter) = if first.star {
                (s.q_pow(2 * (n - j) as i32), Gen::V(i, j), Letter::zs(j))
            } else {
                (s.q_pow(-(two_n - i as i32 - j as i32)), Gen::W(i, j), Letter::z(j))
            };
            let y_ext = s.nf_word(&y.concat(&Word::letter(letter)))?;
            let rest = tensor(&s.nf_word(&x_rest)?, &y_ext);
            out.push(Step { coeff, left, rest, right: None });
        }
        return Ok(out);
    }
    let letters = y.letters();
    if letters.is_empty() {
        return Ok(out);
    }
    let (head, last) = (letters[0], letters[letters.len() - 1]);
    if head.star || !last.star {
        return Err(Error::Domain(format!("{y} is not a normal weight-zero word")));
    }
    let middle = Word(letters[1..letters.len() - 1].to_vec());
    let rest = tensor(&s.one(), &s.nf_word(&middle)?);
    let (m, l) = (head.index, last.index);
    for j in 1..=n {
        let coeff = s.q_pow(-(two_n - j as i32 - l as i32));
        out.push(Step { coeff, left: Gen::W(j, l), rest: rest.clone(), right: Some(Gen::V(j, m)) });
    }
    Ok(out)
}

/// Writes `h` as a combination of ordered products of generators.
pub fn decompose<S: Scalar>(s: &Sphere<S>, h: &Elem<S>) -> Result<Lin<Vec<Gen>, S>> {
    let mut out = Lin::zero();
    for ((x, y), c) in h {
        for step in split(s, x, y)? {
            let inner = decompose(s, &step.rest)?;
            for (word, d) in &inner {
                let mut full = Vec::with_capacity(word.len() + 2);
                full.push(step.left);
                full.extend_from_slice(word);
                full.extend(step.right);
                out.add_term(full, c.clone() * step.coeff.clone() * d.clone());
            }
        }
        if x.is_empty() && y.is_empty() {
            out.add_term(Vec::new(), c.clone());
        }
    }
    Ok(out)
}

/// Multiplies out a combination of generator products.
pub fn recompose<S: Scalar>(s: &Sphere<S>, d: &Lin<Vec<Gen>, S>) -> Result<Elem<S>> {
    let mut out = Lin::zero();
    for (word, c) in d {
        let mut acc = s.alg_one();
        for g in word {
            acc = s.alg_mul(&acc, &g.elem(s)?)?;
        }
        out.add_scaled(&acc, c);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::scalar::Laurent;

    #[test]
    fn recomposition_reproduces_normal_forms() {
        // full expansions grow like n^length, so n = 3 stops at length 2
        for (n, len) in [(1, 3), (2, 3), (3, 2)] {
            let s: Sphere<Laurent> = Sphere::new(n, ()).unwrap();
            let words = s.normal_words(len);
            for x in &words {
                for y in &words {
                    if x.weight() + y.weight() != 0 {
                        continue;
                    }
                    let h: Elem<Laurent> = Lin::basis((x.clone(), y.clone()));
                    let d = decompose(&s, &h).unwrap();
                    assert_eq!(recompose(&s, &d).unwrap(), h, "{x} @ {y}");
                }
            }
        }
    }

    #[test]
    fn generators_decompose_to_themselves_up_to_relations() {
        let s: Sphere<Laurent> = Sphere::new(2, ()).unwrap();
        for g in Gen::all(2) {
            let h = g.elem(&s).unwrap();
            assert_eq!(recompose(&s, &decompose(&s, &h).unwrap()).unwrap(), h);
        }
        let unit = decompose(&s, &s.alg_one()).unwrap();
        assert_eq!(unit, Lin::basis(Vec::new()));
    }

    #[test]
    fn unbalanced_input_is_rejected() {
        let s: Sphere<Laurent> = Sphere::new(2, ()).unwrap();
        let h: Elem<Laurent> = Lin::basis((Word::letter(Letter::z(1)), Word::one()));
        assert!(matches!(decompose(&s, &h), Err(Error::Domain(_))));
    }
}
