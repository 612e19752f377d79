//! Parser for the expression grammar.
//!
//! ```text
//! sum     := tensor (("+" | "-") tensor)*
//! tensor  := product ("@" product)*
//! product := factor ("*" factor)*
//! factor  := "-" factor | atom ("^" integer)?
//! atom    := "q" | rational | "z" index | "zs" index | "t" | "(" sum ")"
//! ```
//!
//! `@` binds tighter than `+`, so `z1 @ zs1 + z2 @ zs2` is a sum of two
//! tensors. Negative exponents are accepted on units (`q^-1`, `2*t`, ...).

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::lin::Lin;
use super::scalar::{Laurent, Scalar};
use super::word::{Letter, NCPoly, Word};
use crate::error::{Error, Result};

const MAX_EXPONENT: u32 = 64;

/// One tensor leg of a monomial: a word and a power of `t`.
pub type Leg = (Word, i32);

/// A parsed expression: a linear combination of tensor monomials with a fixed
/// number of legs.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Expr {
    legs: usize,
    terms: Lin<Vec<Leg>, Laurent>,
}

impl Expr {
    fn scalar(c: Laurent) -> Self {
        Expr { legs: 1, terms: Lin::term(vec![(Word::one(), 0)], c) }
    }

    fn monomial(w: Word, t: i32) -> Self {
        Expr { legs: 1, terms: Lin::basis(vec![(w, t)]) }
    }

    pub fn legs(&self) -> usize {
        self.legs
    }

    pub fn terms(&self) -> &Lin<Vec<Leg>, Laurent> {
        &self.terms
    }

    fn is_scalar(&self) -> bool {
        self.terms.keys().all(|k| k.iter().all(|(w, t)| w.is_empty() && *t == 0))
    }

    fn uses_t(&self) -> bool {
        self.terms.keys().any(|k| k.iter().any(|(_, t)| *t != 0))
    }

    fn promote(&self, legs: usize) -> Option<Expr> {
        if self.legs == legs {
            return Some(self.clone());
        }
        if !self.is_scalar() {
            return None;
        }
        let key = vec![(Word::one(), 0); legs];
        Some(Expr { legs, terms: Lin::term(key, self.terms.coeff(&vec![(Word::one(), 0); self.legs])) })
    }

    fn align(a: &Expr, b: &Expr, pos: usize) -> Result<(Expr, Expr)> {
        let legs = a.legs.max(b.legs);
        match (a.promote(legs), b.promote(legs)) {
            (Some(x), Some(y)) => Ok((x, y)),
            _ => Err(Error::Parse { pos, msg: format!("cannot combine tensors with {} and {} legs", a.legs, b.legs) }),
        }
    }

    fn add(&self, other: &Expr, pos: usize) -> Result<Expr> {
        let (a, b) = Self::align(self, other, pos)?;
        Ok(Expr { legs: a.legs, terms: a.terms.plus(&b.terms) })
    }

    fn mul(&self, other: &Expr, pos: usize) -> Result<Expr> {
        let (a, b) = Self::align(self, other, pos)?;
        let mut terms = Lin::zero();
        for (ka, ca) in &a.terms {
            for (kb, cb) in &b.terms {
                let key = ka.iter().zip(kb).map(|((wa, ta), (wb, tb))| (wa.concat(wb), ta + tb)).collect();
                terms.add_term(key, ca.clone() * cb.clone());
            }
        }
        Ok(Expr { legs: a.legs, terms })
    }

    fn tensor(&self, other: &Expr) -> Expr {
        let mut terms = Lin::zero();
        for (ka, ca) in &self.terms {
            for (kb, cb) in &other.terms {
                let mut key = ka.clone();
                key.extend(kb.iter().cloned());
                terms.add_term(key, ca.clone() * cb.clone());
            }
        }
        Expr { legs: self.legs + other.legs, terms }
    }

    /// Inverse of a single monomial with unit coefficient and no letters.
    fn unit_inverse(&self) -> Option<Expr> {
        if self.terms.len() != 1 {
            return None;
        }
        let (key, c) = self.terms.iter().next().unwrap();
        if key.iter().any(|(w, _)| !w.is_empty()) {
            return None;
        }
        let inv_key = key.iter().map(|(w, t)| (w.clone(), -t)).collect();
        Some(Expr { legs: self.legs, terms: Lin::term(inv_key, c.unit_inverse()?) })
    }

    fn pow(&self, e: i64, pos: usize) -> Result<Expr> {
        let base = if e < 0 {
            self.unit_inverse()
                .ok_or_else(|| Error::Parse { pos, msg: "negative exponent on a non-invertible expression".into() })?
        } else {
            self.clone()
        };
        let e = e.unsigned_abs();
        if e > MAX_EXPONENT as u64 {
            return Err(Error::Parse { pos, msg: format!("exponent {e} exceeds {MAX_EXPONENT}") });
        }
        let mut out = Expr::scalar(Laurent::one()).promote(self.legs).unwrap();
        for _ in 0..e {
            out = out.mul(&base, pos)?;
        }
        Ok(out)
    }

    /// The expression as an element of the free algebra; fails on tensors or `t`.
    pub fn into_poly(self) -> Result<NCPoly<Laurent>> {
        if self.legs != 1 || self.uses_t() {
            return Err(Error::Parse { pos: 0, msg: "expected a polynomial in z, zs and q".into() });
        }
        Ok(self.terms.map_keys(|k| k[0].0.clone()))
    }

    /// The expression as a two-leg tensor of polynomials.
    pub fn into_tensor2(self) -> Result<Lin<(Word, Word), Laurent>> {
        let e = self
            .promote(2)
            .filter(|e| e.legs == 2 && !e.uses_t())
            .ok_or_else(|| Error::Parse { pos: 0, msg: "expected a tensor `a @ b` of polynomials".into() })?;
        Ok(e.terms.map_keys(|k| (k[0].0.clone(), k[1].0.clone())))
    }

    /// The expression as an element of `A ⊗ H`: `a @ t^k` sums.
    pub fn into_a_tensor_h(self) -> Result<Lin<(i32, Word), Laurent>> {
        let bad = || Error::Parse { pos: 0, msg: "expected a tensor `a @ t^k`".into() };
        let e = self.promote(2).filter(|e| e.legs == 2).ok_or_else(bad)?;
        let mut out = Lin::zero();
        for (k, c) in &e.terms {
            let ((a, ta), (h, th)) = (&k[0], &k[1]);
            if *ta != 0 || !h.is_empty() {
                return Err(bad());
            }
            out.add_term((*th, a.clone()), c.clone());
        }
        Ok(out)
    }
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

pub fn parse(text: &str) -> Result<Expr> {
    let mut p = Parser { src: text.as_bytes(), pos: 0 };
    let e = p.sum()?;
    p.skip_ws();
    if p.pos < p.src.len() {
        return Err(p.error(format!("unexpected character {:?}", p.src[p.pos] as char)));
    }
    Ok(e)
}

pub fn parse_poly(text: &str) -> Result<NCPoly<Laurent>> {
    parse(text)?.into_poly()
}

impl Parser<'_> {
    fn error(&self, msg: impl Into<String>) -> Error {
        Error::Parse { pos: self.pos, msg: msg.into() }
    }

    fn skip_ws(&mut self) {
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_whitespace() {
            self.pos += 1;
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn eat(&mut self, c: u8) -> bool {
        if self.peek() == Some(c) {
            self.pos += 1;
            true
        } else {
            false
        }
    }

    fn sum(&mut self) -> Result<Expr> {
        let mut acc = self.tensor()?;
        loop {
            let at = self.pos;
            if self.eat(b'+') {
                let rhs = self.tensor()?;
                acc = acc.add(&rhs, at)?;
            } else if self.eat(b'-') {
                let rhs = self.tensor()?;
                let neg = Expr { legs: rhs.legs, terms: rhs.terms.neg() };
                acc = acc.add(&neg, at)?;
            } else {
                return Ok(acc);
            }
        }
    }

    fn tensor(&mut self) -> Result<Expr> {
        let mut acc = self.product()?;
        while self.eat(b'@') {
            let rhs = self.product()?;
            acc = acc.tensor(&rhs);
        }
        Ok(acc)
    }

    fn product(&mut self) -> Result<Expr> {
        let mut acc = self.factor()?;
        loop {
            let at = self.pos;
            if !self.eat(b'*') {
                return Ok(acc);
            }
            let rhs = self.factor()?;
            acc = acc.mul(&rhs, at)?;
        }
    }

    fn factor(&mut self) -> Result<Expr> {
        if self.eat(b'-') {
            let inner = self.factor()?;
            return Ok(Expr { legs: inner.legs, terms: inner.terms.neg() });
        }
        let base = self.atom()?;
        let at = self.pos;
        if self.eat(b'^') {
            let e = self.signed_integer()?;
            let e: i64 = e.try_into().map_err(|_| self.error("exponent out of range"))?;
            return base.pow(e, at);
        }
        Ok(base)
    }

    fn digits(&mut self) -> Option<String> {
        let start = self.pos;
        while self.pos < self.src.len() && self.src[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if self.pos == start {
            None
        } else {
            Some(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
        }
    }

    fn signed_integer(&mut self) -> Result<BigInt> {
        let negative = self.eat(b'-');
        if !negative {
            self.eat(b'+');
        }
        self.skip_ws();
        let d = self.digits().ok_or_else(|| self.error("expected an integer"))?;
        let v: BigInt = d.parse().unwrap();
        Ok(if negative { -v } else { v })
    }

    fn atom(&mut self) -> Result<Expr> {
        let start = match self.peek() {
            Some(c) => c,
            None => return Err(self.error("unexpected end of input")),
        };
        match start {
            b'(' => {
                self.pos += 1;
                let e = self.sum()?;
                if !self.eat(b')') {
                    return Err(self.error("expected ')'"));
                }
                Ok(e)
            }
            b'q' => {
                self.pos += 1;
                Ok(Expr::scalar(Laurent::q_pow(1)))
            }
            b't' => {
                self.pos += 1;
                Ok(Expr::monomial(Word::one(), 1))
            }
            b'z' => {
                let at = self.pos;
                self.pos += 1;
                let star = self.src.get(self.pos) == Some(&b's');
                if star {
                    self.pos += 1;
                }
                let idx = self.digits().ok_or_else(|| self.error("expected a generator index"))?;
                let index: u8 = match idx.parse() {
                    Ok(i) if i >= 1 => i,
                    _ => return Err(Error::Parse { pos: at, msg: format!("unknown generator index {idx}") }),
                };
                let l = if star { Letter::zs(index) } else { Letter::z(index) };
                Ok(Expr::monomial(Word::letter(l), 0))
            }
            c if c.is_ascii_digit() => {
                let num: BigInt = self.digits().unwrap().parse().unwrap();
                let mut value = BigRational::from_integer(num);
                let save = self.pos;
                // A '/' directly followed by digits is part of the rational literal.
                if self.eat(b'/') {
                    self.skip_ws();
                    match self.digits() {
                        Some(d) => {
                            let den: BigInt = d.parse().unwrap();
                            if den.is_zero() {
                                return Err(self.error("zero denominator"));
                            }
                            value /= BigRational::from_integer(den);
                        }
                        None => {
                            self.pos = save;
                            return Err(self.error("expected a positive integer denominator"));
                        }
                    }
                }
                Ok(Expr::scalar(Laurent::from_rational(value)))
            }
            c => Err(self.error(format!("unexpected character {:?}", c as char))),
        }
    }
}

/// Specializes every coefficient at `q = q0`.
pub fn eval_at_q<S: Scalar>(p: &NCPoly<Laurent>, ctx: &S::Ctx) -> NCPoly<S> {
    p.map_coeffs(|c| S::lift(ctx, c))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::scalar::{QPoint, Specialized};
    use crate::kernel::word::render;

    #[test]
    fn polynomial_input() {
        let p = parse_poly("q^2 * zs1*z1 + zs2*z2").unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.coeff(&Word(vec![Letter::zs(1), Letter::z(1)])), Laurent::q_pow(2));
        assert_eq!(render(&parse_poly("1").unwrap()), "1");
        assert_eq!(render(&parse_poly("q - q").unwrap()), "0");
        assert_eq!(render(&parse_poly("(1 - q^2)*z1*zs1").unwrap()), "(1 - q^2)*z1*zs1");
        assert_eq!(render(&parse_poly("-z1 + 3/4*q^-1").unwrap()), "-z1 + 3/4*q^-1");
    }

    #[test]
    fn tensor_input() {
        let t = parse("z1 @ zs1 + z2 @ zs2").unwrap().into_tensor2().unwrap();
        assert_eq!(t.len(), 2);
        assert!(t.coeff(&(Word::letter(Letter::z(2)), Word::letter(Letter::zs(2)))).is_one());
        let h = parse("z1 @ t + 2*zs1 @ t^-1").unwrap().into_a_tensor_h().unwrap();
        assert_eq!(h.coeff(&(-1, Word::letter(Letter::zs(1)))), Laurent::from_int(2));
    }

    #[test]
    fn errors_carry_positions() {
        match parse("z1 + * z2") {
            Err(Error::Parse { pos, .. }) => assert_eq!(pos, 5),
            other => panic!("{other:?}"),
        }
        assert!(matches!(parse("z0"), Err(Error::Parse { .. })));
        assert!(matches!(parse("z1^-1"), Err(Error::Parse { .. })));
        assert!(matches!(parse("(z1"), Err(Error::Parse { .. })));
        assert!(matches!(parse("z1 @ zs1 + z2"), Err(Error::Parse { .. })));
    }

    #[test]
    fn specialization() {
        let p = parse_poly("(1 - q^2)*z1*zs1").unwrap();
        let one = QPoint::new(BigRational::one()).unwrap();
        assert!(eval_at_q::<Specialized>(&p, &one).is_zero());
        let half = QPoint::new(BigRational::new(1.into(), 2.into())).unwrap();
        assert_eq!(render(&eval_at_q::<Specialized>(&p, &half)), "3/4*z1*zs1");
        assert!(QPoint::new(BigRational::zero()).is_err());
    }
}
