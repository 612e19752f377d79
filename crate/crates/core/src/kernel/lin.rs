//! Finite formal linear combinations with canonical sparse storage.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;

use super::scalar::Scalar;

/// `Σ c_k · k` over basis keys `K`, no zero coefficient ever stored.
#[derive(Clone, PartialEq, Eq)]
pub struct Lin<K: Ord, S> {
    terms: BTreeMap<K, S>,
}

impl<K: Ord, S> Default for Lin<K, S> {
    fn default() -> Self {
        Lin { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone, S: Scalar> Lin<K, S> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn basis(k: K) -> Self {
        Self::term(k, S::one())
    }

    pub fn term(k: K, c: S) -> Self {
        let mut out = Self::zero();
        out.add_term(k, c);
        out
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, k: K, c: S) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(k) {
            btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            btree_map::Entry::Occupied(mut e) => {
                let sum = e.get().clone() + c;
                if sum.is_zero() {
                    e.remove();
                } else {
                    e.insert(sum);
                }
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Self, c: &S) {
        if c.is_zero() {
            return;
        }
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone() * c.clone());
        }
    }

    pub fn add_assign(&mut self, other: &Self) {
        for (k, v) in &other.terms {
            self.add_term(k.clone(), v.clone());
        }
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, c);
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(&(-S::one()))
    }

    pub fn plus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_assign(other);
        out
    }

    pub fn minus(&self, other: &Self) -> Self {
        let mut out = self.clone();
        out.add_scaled(other, &(-S::one()));
        out
    }

    pub fn coeff(&self, k: &K) -> S {
        self.terms.get(k).cloned().unwrap_or_else(S::zero)
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, S> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, S> {
        self.terms.keys()
    }

    /// Linear extension of `f` on basis keys.
    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> Lin<K2, S> {
        let mut out = Lin::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c.clone());
        }
        out
    }

    /// Linear extension of a map from keys to combinations.
    pub fn flat_map<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> Lin<K2, S>) -> Lin<K2, S> {
        let mut out = Lin::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }

    /// Like [`Lin::flat_map`] for fallible maps.
    pub fn try_flat_map<K2: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&K) -> Result<Lin<K2, S>, E>,
    ) -> Result<Lin<K2, S>, E> {
        let mut out = Lin::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k)?, c);
        }
        Ok(out)
    }

    pub fn map_coeffs<T: Scalar>(&self, mut f: impl FnMut(&S) -> T) -> Lin<K, T> {
        let mut out = Lin::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), f(c));
        }
        out
    }

    pub fn filter(&self, mut keep: impl FnMut(&K) -> bool) -> Self {
        Lin { terms: self.terms.iter().filter(|(k, _)| keep(k)).map(|(k, c)| (k.clone(), c.clone())).collect() }
    }
}

impl<K: Ord + Clone, S: Scalar> FromIterator<(K, S)> for Lin<K, S> {
    fn from_iter<I: IntoIterator<Item = (K, S)>>(iter: I) -> Self {
        let mut out = Self::zero();
        for (k, c) in iter {
            out.add_term(k, c);
        }
        out
    }
}

impl<'a, K: Ord, S> IntoIterator for &'a Lin<K, S> {
    type Item = (&'a K, &'a S);
    type IntoIter = btree_map::Iter<'a, K, S>;
    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + fmt::Debug, S: fmt::Display> fmt::Debug for Lin<K, S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter().map(|(k, c)| (k, c.to_string()))).finish()
    }
}

/// Writes a scalar as a coefficient prefix (`""`, `"-"`, `"q*"`, `"(1 - q^2)*"`),
/// returning whether the coefficient is rendered with a leading minus sign.
pub(crate) fn coeff_prefix<S: Scalar>(c: &S, has_basis: bool) -> (bool, String) {
    let text = c.to_string();
    let negated = (-c.clone()).to_string();
    // A single-term coefficient prints without parentheses; a leading minus is
    // pulled out so sums read `a - b` instead of `a + -b`.
    let single = !text.contains(" + ") && !text.trim_start_matches('-').contains(" - ");
    let (neg, body) = if single && text.starts_with('-') { (true, negated) } else { (false, text) };
    if !has_basis {
        return (neg, body);
    }
    if body == "1" {
        (neg, String::new())
    } else if single {
        (neg, format!("{body}*"))
    } else {
        (neg, format!("({body})*"))
    }
}

/// Renders `Σ c·key` as `a + b - c`, with terms in the given order.
pub(crate) fn render_sum<'a, S: Scalar + 'a>(terms: impl Iterator<Item = (String, &'a S)>) -> String {
    let mut out = String::new();
    for (i, (basis, c)) in terms.enumerate() {
        let has_basis = !basis.is_empty();
        let (neg, prefix) = coeff_prefix(c, has_basis);
        if i == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        out.push_str(&prefix);
        out.push_str(&basis);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::scalar::Laurent;
    use num_traits::One;

    #[test]
    fn cancellation_removes_keys() {
        let mut x: Lin<u32, Laurent> = Lin::basis(3);
        x.add_term(3, -Laurent::from_int(1));
        assert!(x.is_zero());
        let y: Lin<u32, Laurent> = [(1, Laurent::q_pow(1)), (2, Laurent::from_int(2))].into_iter().collect();
        assert_eq!(y.minus(&y), Lin::zero());
        assert_eq!(y.coeff(&1), Laurent::q_pow(1));
    }

    #[test]
    fn coefficient_rendering() {
        let one_minus = Laurent::one() - Laurent::q_pow(2);
        assert_eq!(coeff_prefix(&one_minus, true), (false, "(1 - q^2)*".to_string()));
        assert_eq!(coeff_prefix(&-Laurent::q_pow(1), true), (true, "q*".to_string()));
        assert_eq!(coeff_prefix(&Laurent::from_int(-1), true), (true, String::new()));
        assert_eq!(coeff_prefix(&Laurent::from_int(-1), false), (true, "1".to_string()));
    }
}
