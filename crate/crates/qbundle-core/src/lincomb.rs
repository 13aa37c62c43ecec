//! Finite formal linear combinations with exact scalar coefficients.

use alloc::collections::btree_map::{self, BTreeMap};
use core::ops::{Add, Neg, Sub};

use crate::scalars::Scalar;

/// Map from keys to nonzero coefficients; the empty map is zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinComb<K: Ord>(BTreeMap<K, Scalar>);

impl<K: Ord> Default for LinComb<K> {
    fn default() -> Self {
        LinComb(BTreeMap::new())
    }
}

impl<K: Ord + Clone> LinComb<K> {
    pub fn zero() -> Self {
        Self::default()
    }
    pub fn single(k: K, c: Scalar) -> Self {
        let mut l = Self::zero();
        l.add_term(k, c);
        l
    }
    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }
    pub fn len(&self) -> usize {
        self.0.len()
    }
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
    pub fn coeff(&self, k: &K) -> Scalar {
        self.0.get(k).cloned().unwrap_or_else(Scalar::zero)
    }
    pub fn iter(&self) -> btree_map::Iter<'_, K, Scalar> {
        self.0.iter()
    }
    pub fn keys(&self) -> btree_map::Keys<'_, K, Scalar> {
        self.0.keys()
    }
    pub fn add_term(&mut self, k: K, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.0.entry(k) {
            btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            btree_map::Entry::Occupied(mut o) => {
                let s = o.get() + &c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }
    pub fn add_scaled(&mut self, o: &Self, c: &Scalar) {
        if c.is_zero() {
            return;
        }
        for (k, v) in o.iter() {
            self.add_term(k.clone(), v * c);
        }
    }
    pub fn add_assign(&mut self, o: &Self) {
        for (k, v) in o.iter() {
            self.add_term(k.clone(), v.clone());
        }
    }
    pub fn scale(&self, c: &Scalar) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        LinComb(self.0.iter().map(|(k, v)| (k.clone(), v * c)).collect())
    }
    pub fn conj_coeffs(&self) -> Self {
        LinComb(self.0.iter().map(|(k, v)| (k.clone(), v.conj())).collect())
    }
    pub fn pop_last(&mut self) -> Option<(K, Scalar)> {
        self.0.pop_last()
    }
    /// Apply a linear map given on keys.
    pub fn map_linear<L: Ord + Clone, E>(
        &self,
        mut f: impl FnMut(&K) -> Result<LinComb<L>, E>,
    ) -> Result<LinComb<L>, E> {
        let mut out = LinComb::zero();
        for (k, c) in self.iter() {
            out.add_scaled(&f(k)?, c);
        }
        Ok(out)
    }
}

impl<K: Ord + Clone> FromIterator<(K, Scalar)> for LinComb<K> {
    fn from_iter<I: IntoIterator<Item = (K, Scalar)>>(iter: I) -> Self {
        let mut l = Self::zero();
        for (k, c) in iter {
            l.add_term(k, c);
        }
        l
    }
}

impl<K: Ord + Clone> IntoIterator for LinComb<K> {
    type Item = (K, Scalar);
    type IntoIter = btree_map::IntoIter<K, Scalar>;
    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<K: Ord + Clone> Add for &LinComb<K> {
    type Output = LinComb<K>;
    fn add(self, o: &LinComb<K>) -> LinComb<K> {
        let mut r = self.clone();
        r.add_assign(o);
        r
    }
}

impl<K: Ord + Clone> Sub for &LinComb<K> {
    type Output = LinComb<K>;
    fn sub(self, o: &LinComb<K>) -> LinComb<K> {
        let mut r = self.clone();
        r.add_scaled(o, &Scalar::int(-1));
        r
    }
}

impl<K: Ord + Clone> Neg for &LinComb<K> {
    type Output = LinComb<K>;
    fn neg(self) -> LinComb<K> {
        self.scale(&Scalar::int(-1))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collection_and_cancellation() {
        let mut l: LinComb<u8> = LinComb::zero();
        l.add_term(1, Scalar::one());
        l.add_term(1, Scalar::one());
        assert_eq!(l.coeff(&1), Scalar::int(2));
        l.add_term(1, Scalar::int(-2));
        assert!(l.is_zero());
    }
}
