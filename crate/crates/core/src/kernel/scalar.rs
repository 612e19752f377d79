//! Coefficient rings.
//!
//! Every computation in the crate is generic over a [`Scalar`]. Two rings are
//! provided: [`Laurent`], the formal ring `Q[q, q^-1]` in which identities are
//! proved, and [`Specialized`], the rationals with `q` replaced by a fixed
//! nonzero value. Running the same pipeline over both gives an independent
//! numeric cross-check of the symbolic arithmetic.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::modp::{self, Residue};
use super::ratfn::RationalFn;
use crate::error::{Error, Result};

/// Field elements used by the certificate prover.
pub trait FieldElem:
    Clone
    + PartialEq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    fn inv(&self) -> Option<Self>;
}

impl FieldElem for BigRational {
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            None
        } else {
            Some(self.recip())
        }
    }
}

/// A commutative coefficient ring containing the Laurent polynomials in `q`
/// (possibly through a specialization map).
pub trait Scalar:
    Clone
    + PartialEq
    + Eq
    + fmt::Debug
    + fmt::Display
    + Send
    + Sync
    + 'static
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    /// Data needed to interpret a formal Laurent polynomial in this ring.
    type Ctx: Clone + fmt::Debug + Send + Sync + 'static;
    /// Fraction field used when solving linear systems.
    type Field: FieldElem;

    fn lift(ctx: &Self::Ctx, value: &Laurent) -> Self;
    fn to_field(&self) -> Self::Field;
    /// Image in `F_p` when the formal parameter is sent to `q`; `None` if a
    /// denominator vanishes.
    fn residue(&self, q: Residue) -> Option<Residue>;
    /// Inverse when the element is a unit of the ring.
    fn unit_inverse(&self) -> Option<Self>;
    /// Description of the ring, e.g. `exact` or `q=1/2`.
    fn ring_label(ctx: &Self::Ctx) -> String;

    fn q_pow(ctx: &Self::Ctx, k: i32) -> Self {
        Self::lift(ctx, &Laurent::q_pow(k))
    }

    fn from_int(ctx: &Self::Ctx, k: i64) -> Self {
        Self::lift(ctx, &Laurent::from_int(k))
    }
}

/// Exact Laurent polynomial in `q` with rational coefficients, stored sparsely.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Laurent {
    coeffs: BTreeMap<i32, BigRational>,
}

impl Laurent {
    pub fn from_rational(c: BigRational) -> Self {
        Self::monomial(c, 0)
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_rational(BigRational::from_integer(BigInt::from(c)))
    }

    pub fn q_pow(k: i32) -> Self {
        Self::monomial(BigRational::one(), k)
    }

    pub fn monomial(c: BigRational, k: i32) -> Self {
        let mut coeffs = BTreeMap::new();
        if !c.is_zero() {
            coeffs.insert(k, c);
        }
        Self { coeffs }
    }

    pub fn from_terms<I: IntoIterator<Item = (i32, BigRational)>>(terms: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in terms {
            out.add_monomial(k, c);
        }
        out
    }

    fn add_monomial(&mut self, k: i32, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.coeffs.entry(k).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.coeffs.remove(&k);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (i32, &BigRational)> {
        self.coeffs.iter().map(|(k, c)| (*k, c))
    }

    pub fn coeff(&self, k: i32) -> BigRational {
        self.coeffs.get(&k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn num_terms(&self) -> usize {
        self.coeffs.len()
    }

    pub fn min_exp(&self) -> Option<i32> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i32> {
        self.coeffs.keys().next_back().copied()
    }

    /// `Some((c, k))` when the value is `c * q^k` with `c != 0`: exactly the
    /// units of `Q[q, q^-1]`.
    pub fn as_unit(&self) -> Option<(BigRational, i32)> {
        if self.coeffs.len() == 1 {
            let (k, c) = self.coeffs.iter().next().unwrap();
            Some((c.clone(), *k))
        } else {
            None
        }
    }

    pub fn shift(&self, by: i32) -> Self {
        Self { coeffs: self.coeffs.iter().map(|(k, c)| (k + by, c.clone())).collect() }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self { coeffs: self.coeffs.iter().map(|(k, v)| (*k, v * c)).collect() }
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut out = Self::one();
        for _ in 0..e {
            out = out * self.clone();
        }
        out
    }

    /// Evaluation at a nonzero rational point.
    pub fn eval(&self, q: &BigRational) -> Result<BigRational> {
        if q.is_zero() {
            return Err(Error::Domain("q must be nonzero".into()));
        }
        Ok(self.eval_nonzero(q))
    }

    fn eval_nonzero(&self, q: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for (k, c) in &self.coeffs {
            acc += c * rational_pow(q, *k);
        }
        acc
    }
}

pub(crate) fn rational_pow(q: &BigRational, k: i32) -> BigRational {
    let base = if k < 0 { q.recip() } else { q.clone() };
    let mut out = BigRational::one();
    for _ in 0..k.unsigned_abs() {
        out *= &base;
    }
    out
}

impl Zero for Laurent {
    fn zero() -> Self {
        Self::default()
    }
    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }
}

impl One for Laurent {
    fn one() -> Self {
        Self::q_pow(0)
    }
}

impl Add for Laurent {
    type Output = Laurent;
    fn add(mut self, rhs: Laurent) -> Laurent {
        for (k, c) in rhs.coeffs {
            self.add_monomial(k, c);
        }
        self
    }
}

impl Sub for Laurent {
    type Output = Laurent;
    fn sub(self, rhs: Laurent) -> Laurent {
        self + (-rhs)
    }
}

impl Neg for Laurent {
    type Output = Laurent;
    fn neg(self) -> Laurent {
        Laurent { coeffs: self.coeffs.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl Mul for Laurent {
    type Output = Laurent;
    fn mul(self, rhs: Laurent) -> Laurent {
        let mut out = Laurent::zero();
        for (a, ca) in &self.coeffs {
            for (b, cb) in &rhs.coeffs {
                out.add_monomial(a + b, ca * cb);
            }
        }
        out
    }
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Renders in the expression grammar, ascending powers: `1 - q^2`, `3/4*q^-1`.
impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.coeffs.iter().enumerate() {
            let negative = c.is_negative();
            if i == 0 {
                if negative {
                    write!(f, "-")?;
                }
            } else if negative {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            let power = match *k {
                0 => String::new(),
                1 => "q".to_string(),
                k => format!("q^{k}"),
            };
            if power.is_empty() {
                write!(f, "{mag}")?;
            } else if mag.is_one() {
                write!(f, "{power}")?;
            } else {
                write!(f, "{mag}*{power}")?;
            }
        }
        Ok(())
    }
}

impl Scalar for Laurent {
    type Ctx = ();
    type Field = RationalFn;

    fn lift(_: &(), value: &Laurent) -> Self {
        value.clone()
    }

    fn to_field(&self) -> RationalFn {
        RationalFn::from_laurent(self.clone())
    }

    fn residue(&self, q: Residue) -> Option<Residue> {
        let q_inv = modp::inv(q)?;
        let mut acc = 0;
        for (k, c) in &self.coeffs {
            let base = if *k < 0 { q_inv } else { q };
            let term = modp::mul(rational_residue(c)?, modp::pow(base, k.unsigned_abs() as u64));
            acc = modp::add(acc, term);
        }
        Some(acc)
    }

    fn unit_inverse(&self) -> Option<Self> {
        let (c, k) = self.as_unit()?;
        Some(Laurent::monomial(c.recip(), -k))
    }

    fn ring_label(_: &()) -> String {
        "exact".to_string()
    }
}

pub(crate) fn rational_residue(c: &BigRational) -> Option<Residue> {
    let p = BigInt::from(modp::P);
    let num = c.numer().mod_floor(&p).to_u64()?;
    let den = c.denom().mod_floor(&p).to_u64()?;
    Some(modp::mul(num, modp::inv(den)?))
}

/// A rational number obtained by specializing `q` to a fixed nonzero value.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Specialized(pub BigRational);

impl Specialized {
    pub fn value(&self) -> &BigRational {
        &self.0
    }
}

impl Zero for Specialized {
    fn zero() -> Self {
        Specialized(BigRational::zero())
    }
    fn is_zero(&self) -> bool {
        self.0.is_zero()
    }
}

impl One for Specialized {
    fn one() -> Self {
        Specialized(BigRational::one())
    }
}

impl Add for Specialized {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Specialized(self.0 + rhs.0)
    }
}

impl Sub for Specialized {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Specialized(self.0 - rhs.0)
    }
}

impl Mul for Specialized {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Specialized(self.0 * rhs.0)
    }
}

impl Neg for Specialized {
    type Output = Self;
    fn neg(self) -> Self {
        Specialized(-self.0)
    }
}

impl fmt::Debug for Specialized {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Specialized {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The specialization point; guaranteed nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QPoint(BigRational);

impl QPoint {
    pub fn new(q: BigRational) -> Result<Self> {
        if q.is_zero() {
            Err(Error::Domain("q must be nonzero".into()))
        } else {
            Ok(QPoint(q))
        }
    }

    pub fn value(&self) -> &BigRational {
        &self.0
    }
}

impl Scalar for Specialized {
    type Ctx = QPoint;
    type Field = BigRational;

    fn lift(ctx: &QPoint, value: &Laurent) -> Self {
        Specialized(value.eval_nonzero(&ctx.0))
    }

    fn to_field(&self) -> BigRational {
        self.0.clone()
    }

    fn residue(&self, _q: Residue) -> Option<Residue> {
        rational_residue(&self.0)
    }

    fn unit_inverse(&self) -> Option<Self> {
        self.0.inv().map(Specialized)
    }

    fn ring_label(ctx: &QPoint) -> String {
        format!("q={}", ctx.0)
    }
}

/// Parses `a` or `a/b` into a rational.
pub fn parse_rational(text: &str) -> Result<BigRational> {
    let text = text.trim();
    let bad = || Error::Domain(format!("not a rational number: {text:?}"));
    let (num, den) = match text.split_once('/') {
        Some((a, b)) => (a.trim(), b.trim()),
        None => (text, "1"),
    };
    let num: BigInt = num.parse().map_err(|_| bad())?;
    let den: BigInt = den.parse().map_err(|_| bad())?;
    if den.is_zero() {
        return Err(bad());
    }
    Ok(BigRational::new(num, den))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn r(a: i64, b: i64) -> BigRational {
        BigRational::new(a.into(), b.into())
    }

    #[test]
    fn laurent_ring_ops() {
        let one_minus_q2 = Laurent::one() - Laurent::q_pow(2);
        assert_eq!(one_minus_q2.to_string(), "1 - q^2");
        let prod = one_minus_q2.clone() * Laurent::q_pow(-1);
        assert_eq!(prod.to_string(), "q^-1 - q");
        assert!((one_minus_q2.clone() - one_minus_q2).is_zero());
        assert_eq!(Laurent::from_rational(r(-3, 4)).to_string(), "-3/4");
    }

    #[test]
    fn evaluation() {
        let x = Laurent::one() - Laurent::q_pow(2);
        assert_eq!(x.eval(&r(1, 2)).unwrap(), r(3, 4));
        assert_eq!(x.eval(&r(1, 1)).unwrap(), r(0, 1));
        assert!(x.eval(&r(0, 1)).is_err());
        let y = Laurent::q_pow(2);
        assert_eq!(y.eval(&r(2, 3)).unwrap(), r(4, 9));
    }

    #[test]
    fn units() {
        let u = Laurent::monomial(r(2, 3), -2);
        let inv = u.unit_inverse().unwrap();
        assert_eq!(u * inv, Laurent::one());
        assert!((Laurent::one() + Laurent::q_pow(1)).unit_inverse().is_none());
    }

    #[test]
    fn residues_are_ring_maps() {
        let a = Laurent::one() - Laurent::monomial(r(5, 7), 3);
        let b = Laurent::q_pow(-2) + Laurent::from_int(4);
        let q = 123_456_789;
        let lhs = (a.clone() * b.clone()).residue(q).unwrap();
        let rhs = modp::mul(a.residue(q).unwrap(), b.residue(q).unwrap());
        assert_eq!(lhs, rhs);
    }
}
