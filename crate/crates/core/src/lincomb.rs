//! Sparse formal linear combinations with exact coefficients.

use std::collections::btree_map::{self, BTreeMap};
use std::fmt;
use std::ops::{Add, AddAssign, MulAssign, Neg, Sub};

use num_traits::Zero;

/// Coefficient ring for [`LinComb`]; `BigInt` and `BigRational` both qualify.
pub trait Coeff:
    Clone + PartialEq + Zero + Neg<Output = Self> + for<'a> AddAssign<&'a Self> + for<'a> MulAssign<&'a Self>
{
}

impl<C> Coeff for C where
    C: Clone + PartialEq + Zero + Neg<Output = C> + for<'a> AddAssign<&'a C> + for<'a> MulAssign<&'a C>
{
}

/// `Σ c_k · k` over an ordered key set. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord, C> {
    terms: BTreeMap<K, C>,
}

impl<K: Ord, C> Default for LinComb<K, C> {
    fn default() -> Self {
        Self { terms: BTreeMap::new() }
    }
}

impl<K: Ord + Clone, C: Coeff> LinComb<K, C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn from_term(key: K, coeff: C) -> Self {
        let mut v = Self::zero();
        v.add_term(key, &coeff);
        v
    }

    pub fn add_term(&mut self, key: K, coeff: &C) {
        if coeff.is_zero() {
            return;
        }
        match self.terms.entry(key) {
            btree_map::Entry::Vacant(e) => {
                e.insert(coeff.clone());
            }
            btree_map::Entry::Occupied(mut e) => {
                *e.get_mut() += coeff;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    /// `self += scale · other`.
    pub fn add_scaled(&mut self, other: &Self, scale: &C) {
        for (k, c) in &other.terms {
            let mut c = c.clone();
            c *= scale;
            self.add_term(k.clone(), &c);
        }
    }

    pub fn scaled(&self, scale: &C) -> Self {
        let mut out = Self::zero();
        out.add_scaled(self, scale);
        out
    }

    /// Coefficient of `key`, zero when absent.
    pub fn coeff(&self, key: &K) -> C {
        self.terms.get(key).cloned().unwrap_or_else(C::zero)
    }

    pub fn get(&self, key: &K) -> Option<&C> {
        self.terms.get(key)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn iter(&self) -> btree_map::Iter<'_, K, C> {
        self.terms.iter()
    }

    pub fn keys(&self) -> btree_map::Keys<'_, K, C> {
        self.terms.keys()
    }

    /// Linear extension of `f` on keys; coinciding images are merged.
    pub fn map_keys<K2: Ord + Clone>(&self, mut f: impl FnMut(&K) -> K2) -> LinComb<K2, C> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_term(f(k), c);
        }
        out
    }

    pub fn map_coeffs<C2: Coeff>(&self, mut f: impl FnMut(&C) -> C2) -> LinComb<K, C2> {
        let mut out = LinComb::zero();
        for (k, c) in &self.terms {
            out.add_term(k.clone(), &f(c));
        }
        out
    }

    /// Linear extension of a key-to-combination map.
    pub fn apply_linear(&self, mut f: impl FnMut(&K) -> LinComb<K, C>) -> Self {
        let mut out = Self::zero();
        for (k, c) in &self.terms {
            out.add_scaled(&f(k), c);
        }
        out
    }
}

impl<K: Ord + Clone, C: Coeff> FromIterator<(K, C)> for LinComb<K, C> {
    fn from_iter<I: IntoIterator<Item = (K, C)>>(iter: I) -> Self {
        let mut v = Self::zero();
        for (k, c) in iter {
            v.add_term(k, &c);
        }
        v
    }
}

impl<K: Ord, C> IntoIterator for LinComb<K, C> {
    type Item = (K, C);
    type IntoIter = btree_map::IntoIter<K, C>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.into_iter()
    }
}

impl<'a, K: Ord, C> IntoIterator for &'a LinComb<K, C> {
    type Item = (&'a K, &'a C);
    type IntoIter = btree_map::Iter<'a, K, C>;

    fn into_iter(self) -> Self::IntoIter {
        self.terms.iter()
    }
}

impl<K: Ord + Clone, C: Coeff> AddAssign<&LinComb<K, C>> for LinComb<K, C> {
    fn add_assign(&mut self, rhs: &LinComb<K, C>) {
        for (k, c) in &rhs.terms {
            self.add_term(k.clone(), c);
        }
    }
}

impl<K: Ord + Clone, C: Coeff> Add for LinComb<K, C> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        self += &rhs;
        self
    }
}

impl<K: Ord + Clone, C: Coeff> Neg for LinComb<K, C> {
    type Output = Self;

    fn neg(self) -> Self {
        Self { terms: self.terms.into_iter().map(|(k, c)| (k, -c)).collect() }
    }
}

impl<K: Ord + Clone, C: Coeff> Sub for LinComb<K, C> {
    type Output = Self;

    fn sub(self, rhs: Self) -> Self {
        self + (-rhs)
    }
}

impl<K: Ord + fmt::Display, C: fmt::Display> fmt::Display for LinComb<K, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (k, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                write!(f, " + ")?;
            }
            write!(f, "({c})·{k}")?;
        }
        Ok(())
    }
}

impl<K: Ord + fmt::Debug, C: fmt::Debug> fmt::Debug for LinComb<K, C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_map().entries(self.terms.iter()).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn zeros_are_dropped() {
        let mut v: LinComb<u32, BigInt> = LinComb::zero();
        v.add_term(1, &BigInt::from(3));
        v.add_term(1, &BigInt::from(-3));
        v.add_term(2, &BigInt::from(0));
        assert!(v.is_zero());
    }

    #[test]
    fn map_keys_merges() {
        let v: LinComb<u32, BigInt> = [(1, BigInt::from(1)), (2, BigInt::from(2))].into_iter().collect();
        let w = v.map_keys(|_| 0u32);
        assert_eq!(w.coeff(&0), BigInt::from(3));
        assert_eq!((v.clone() - v).len(), 0);
    }
}
