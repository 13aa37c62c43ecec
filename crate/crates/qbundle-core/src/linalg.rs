//! Sparse Gaussian elimination over the scalar field.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::lincomb::LinComb;
use crate::scalars::Scalar;

/// Reduced row space. Each row has a pivot (its largest key, coefficient 1)
/// and carries a tag recording which inserted vectors it combines.
#[derive(Debug, Clone)]
pub struct Echelon<K: Ord + Clone> {
    rows: BTreeMap<K, (LinComb<K>, LinComb<usize>)>,
    inserted: usize,
}

impl<K: Ord + Clone> Default for Echelon<K> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new(), inserted: 0 }
    }
}

impl<K: Ord + Clone> Echelon<K> {
    pub fn new() -> Self {
        Self::default()
    }
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Remainder of `v` modulo the row space and the combination of inserted
    /// vectors subtracted: `v = sum tags_i * inserted_i + remainder`.
    pub fn reduce(&self, v: &LinComb<K>) -> (LinComb<K>, LinComb<usize>) {
        let mut r = v.clone();
        let mut tags = LinComb::zero();
        let mut bound: Option<K> = None;
        loop {
            let next = r
                .keys()
                .rev()
                .find(|k| bound.as_ref().is_none_or(|b| *k < b) && self.rows.contains_key(*k))
                .cloned();
            let Some(p) = next else { break };
            let (row, tag) = &self.rows[&p];
            let c = r.coeff(&p);
            r.add_scaled(row, &-&c);
            tags.add_scaled(tag, &c);
            bound = Some(p);
        }
        (r, tags)
    }

    /// Insert a vector; returns `false` if it was already in the span.
    pub fn insert(&mut self, v: &LinComb<K>) -> bool {
        let id = self.inserted;
        self.inserted += 1;
        let (r, tags) = self.reduce(v);
        let Some((p, c)) = r.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let mut tag = LinComb::single(id, Scalar::one());
        tag.add_scaled(&tags, &Scalar::int(-1));
        let inv = c.inv().expect("nonzero pivot");
        self.rows.insert(p, (r.scale(&inv), tag.scale(&inv)));
        true
    }

    /// Rows as `(pivot, row)`; each row has coefficient 1 on its pivot.
    pub fn rows(&self) -> impl Iterator<Item = (&K, &LinComb<K>)> {
        self.rows.iter().map(|(k, (r, _))| (k, r))
    }

    pub fn contains(&self, v: &LinComb<K>) -> bool {
        self.reduce(v).0.is_zero()
    }
}

/// Inverse of a square scalar matrix, `None` when singular.
pub fn invert(m: &[Vec<Scalar>]) -> Option<Vec<Vec<Scalar>>> {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m
        .iter()
        .enumerate()
        .map(|(i, r)| {
            let mut row = r.clone();
            row.extend((0..n).map(|j| if i == j { Scalar::one() } else { Scalar::zero() }));
            row
        })
        .collect();
    for col in 0..n {
        let p = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, p);
        let inv = a[col][col].inv().ok()?;
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot = a[col].clone();
                for (x, y) in a[r].iter_mut().zip(pivot.iter()) {
                    *x = &*x - &(&f * y);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}
