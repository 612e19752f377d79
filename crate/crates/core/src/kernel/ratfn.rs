//! Rational functions in `q` over the rationals.
//!
//! Only the certificate prover divides by non-monomial scalars; it does so in
//! this field. Values are kept in lowest terms with a monic denominator whose
//! lowest power of `q` is zero.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::{FieldElem, Laurent};

/// Dense univariate polynomial, coefficient `i` multiplies `q^i`.
#[derive(Clone, Debug, PartialEq, Eq)]
struct Poly(Vec<BigRational>);

impl Poly {
    fn trim(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    fn lead(&self) -> &BigRational {
        self.0.last().expect("nonzero polynomial")
    }

    fn scale(&self, c: &BigRational) -> Poly {
        Poly(self.0.iter().map(|x| x * c).collect()).trim()
    }

    fn monic(&self) -> Poly {
        let l = self.lead().recip();
        self.scale(&l)
    }

    /// Euclidean division.
    fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let mut rem = self.0.clone();
        if self.0.len() < d.0.len() {
            return (Poly(vec![]), self.clone());
        }
        let mut quot = vec![BigRational::zero(); self.0.len() - d.0.len() + 1];
        let dl = d.lead().clone();
        for i in (0..quot.len()).rev() {
            let c = &rem[i + d.0.len() - 1] / &dl;
            if !c.is_zero() {
                for (j, dj) in d.0.iter().enumerate() {
                    rem[i + j] -= &c * dj;
                }
            }
            quot[i] = c;
        }
        (Poly(quot).trim(), Poly(rem).trim())
    }

    fn gcd(a: &Poly, b: &Poly) -> Poly {
        let (mut a, mut b) = (a.clone(), b.clone());
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r;
        }
        if a.is_zero() {
            a
        } else {
            a.monic()
        }
    }

    /// Splits a Laurent polynomial as `q^shift * poly` with `poly(0) != 0`.
    fn from_laurent(l: &Laurent) -> (i32, Poly) {
        let Some(lo) = l.min_exp() else {
            return (0, Poly(vec![]));
        };
        let hi = l.max_exp().unwrap();
        let mut coeffs = vec![BigRational::zero(); (hi - lo) as usize + 1];
        for (k, c) in l.terms() {
            coeffs[(k - lo) as usize] = c.clone();
        }
        (lo, Poly(coeffs))
    }

    fn to_laurent(&self, shift: i32) -> Laurent {
        Laurent::from_terms(self.0.iter().enumerate().map(|(i, c)| (i as i32 + shift, c.clone())))
    }
}

/// Element of `Q(q)`.
#[derive(Clone, PartialEq, Eq)]
pub struct RationalFn {
    num: Laurent,
    den: Laurent,
}

impl RationalFn {
    pub fn from_laurent(num: Laurent) -> Self {
        RationalFn { num, den: Laurent::one() }
    }

    /// Builds `num / den` in lowest terms; `None` if `den` is zero.
    pub fn new(num: Laurent, den: Laurent) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        if num.is_zero() {
            return Some(Self::zero());
        }
        let (sn, pn) = Poly::from_laurent(&num);
        let (sd, pd) = Poly::from_laurent(&den);
        let g = Poly::gcd(&pn, &pd);
        let (pn, _) = pn.div_rem(&g);
        let (pd, _) = pd.div_rem(&g);
        let lead = pd.lead().recip();
        let pn = pn.scale(&lead);
        let pd = pd.scale(&lead);
        Some(RationalFn { num: pn.to_laurent(sn - sd), den: pd.to_laurent(0) })
    }

    pub fn numer(&self) -> &Laurent {
        &self.num
    }

    pub fn denom(&self) -> &Laurent {
        &self.den
    }

    /// The value as a Laurent polynomial when the denominator is trivial.
    pub fn as_laurent(&self) -> Option<Laurent> {
        if self.den == Laurent::one() {
            Some(self.num.clone())
        } else {
            None
        }
    }

    pub fn eval(&self, q: &BigRational) -> Option<BigRational> {
        let d = self.den.eval(q).ok()?;
        if d.is_zero() {
            return None;
        }
        Some(self.num.eval(q).ok()? / d)
    }
}

impl Zero for RationalFn {
    fn zero() -> Self {
        RationalFn { num: Laurent::zero(), den: Laurent::one() }
    }
    fn is_zero(&self) -> bool {
        self.num.is_zero()
    }
}

impl One for RationalFn {
    fn one() -> Self {
        RationalFn { num: Laurent::one(), den: Laurent::one() }
    }
}

impl Add for RationalFn {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        if self.den == rhs.den {
            return RationalFn::new(self.num + rhs.num, self.den).unwrap();
        }
        let num = self.num * rhs.den.clone() + rhs.num * self.den.clone();
        RationalFn::new(num, self.den * rhs.den).unwrap()
    }
}

impl Sub for RationalFn {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl Neg for RationalFn {
    type Output = Self;
    fn neg(self) -> Self {
        RationalFn { num: -self.num, den: self.den }
    }
}

impl Mul for RationalFn {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        RationalFn::new(self.num * rhs.num, self.den * rhs.den).unwrap()
    }
}

impl FieldElem for RationalFn {
    fn inv(&self) -> Option<Self> {
        RationalFn::new(self.den.clone(), self.num.clone())
    }
}

impl fmt::Debug for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RationalFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == Laurent::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
