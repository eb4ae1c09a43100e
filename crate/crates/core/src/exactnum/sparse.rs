//! Sparse vectors and an incremental echelon basis that tracks how each
//! pivot row was assembled. This covers rank, span membership, coordinates
//! and kernels of large sparse maps.

use std::collections::BTreeMap;

use super::Field;

pub type SparseVec<F> = BTreeMap<usize, F>;

/// `a += c * b`, dropping entries that cancel.
pub fn axpy<F: Field>(a: &mut SparseVec<F>, c: &F, b: &SparseVec<F>) {
    for (k, x) in b {
        let add = c.clone() * x.clone();
        match a.get_mut(k) {
            Some(y) => {
                *y += add;
                if y.is_zero() {
                    a.remove(k);
                }
            }
            None => {
                if !add.is_zero() {
                    a.insert(*k, add);
                }
            }
        }
    }
}

pub fn to_sparse<F: Field>(v: &[F]) -> SparseVec<F> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, x)| (i, x.clone())).collect()
}

pub fn to_dense<F: Field>(v: &SparseVec<F>, n: usize) -> Vec<F> {
    let mut out = vec![F::zero(); n];
    for (i, x) in v {
        out[*i] = x.clone();
    }
    out
}

#[derive(Clone, Debug)]
struct Row<F> {
    vec: SparseVec<F>,
    tag: SparseVec<F>,
}

/// Row-echelon basis. Each stored row has leading coefficient one and carries
/// a tag recording it as a combination of the inserted generators.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    rows: BTreeMap<usize, Row<F>>,
    inserted: usize,
}

impl<F: Field> Default for Echelon<F> {
    fn default() -> Self {
        Echelon { rows: BTreeMap::new(), inserted: 0 }
    }
}

impl<F: Field> Echelon<F> {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn pivots(&self) -> impl Iterator<Item = usize> + '_ {
        self.rows.keys().copied()
    }

    fn reduce_tagged(&self, v: &mut SparseVec<F>, tag: &mut SparseVec<F>) {
        let mut cursor = 0;
        loop {
            let next = v.range(cursor..).map(|(k, _)| *k).find(|k| self.rows.contains_key(k));
            let Some(k) = next else { break };
            let c = -v[&k].clone();
            let row = &self.rows[&k];
            axpy(v, &c, &row.vec);
            axpy(tag, &c, &row.tag);
            cursor = k + 1;
        }
    }

    /// Reduces `v` modulo the current span.
    pub fn reduce(&self, v: &SparseVec<F>) -> SparseVec<F> {
        let mut v = v.clone();
        let mut tag = SparseVec::new();
        self.reduce_tagged(&mut v, &mut tag);
        v
    }

    pub fn contains(&self, v: &SparseVec<F>) -> bool {
        self.reduce(v).is_empty()
    }

    /// Inserts generator number `self.inserted`. Returns `None` when it was
    /// independent, otherwise the dependency among generators it revealed
    /// (a combination of generator indices summing to zero).
    pub fn insert(&mut self, v: SparseVec<F>) -> Option<SparseVec<F>> {
        let id = self.inserted;
        self.inserted += 1;
        let mut tag = SparseVec::new();
        tag.insert(id, F::one());
        self.insert_tagged(v, tag)
    }

    fn insert_tagged(&mut self, mut v: SparseVec<F>, mut tag: SparseVec<F>) -> Option<SparseVec<F>> {
        self.reduce_tagged(&mut v, &mut tag);
        let Some((&lead, c)) = v.iter().next() else { return Some(tag) };
        let inv = c.inverse().expect("nonzero lead");
        for x in v.values_mut() {
            *x *= inv.clone();
        }
        for x in tag.values_mut() {
            *x *= inv.clone();
        }
        self.rows.insert(lead, Row { vec: v, tag });
        None
    }

    /// Coordinates of `v` as a combination of the inserted generators.
    pub fn express(&self, v: &SparseVec<F>) -> Option<SparseVec<F>> {
        let mut v = v.clone();
        let mut tag = SparseVec::new();
        self.reduce_tagged(&mut v, &mut tag);
        if !v.is_empty() {
            return None;
        }
        for x in tag.values_mut() {
            *x = -x.clone();
        }
        Some(tag)
    }
}

/// Kernel of the linear map sending generator `i` to `images[i]`.
pub fn kernel_of_images<F: Field>(images: impl IntoIterator<Item = SparseVec<F>>) -> Vec<SparseVec<F>> {
    let mut ech = Echelon::new();
    images.into_iter().filter_map(|im| ech.insert(im)).collect()
}

/// Rank of a family of sparse vectors.
pub fn rank_of<F: Field>(vs: impl IntoIterator<Item = SparseVec<F>>) -> usize {
    let mut ech = Echelon::new();
    for v in vs {
        ech.insert(v);
    }
    ech.rank()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactnum::Rational;

    fn sv(pairs: &[(usize, i64)]) -> SparseVec<Rational> {
        pairs.iter().map(|&(i, x)| (i, Rational::from_int(x))).collect()
    }

    #[test]
    fn kernel_of_simple_map() {
        let k = kernel_of_images(vec![sv(&[(0, 1)]), sv(&[(1, 1)]), sv(&[(0, 2), (1, -3)])]);
        assert_eq!(k, vec![sv(&[(0, -2), (1, 3), (2, 1)])]);
    }

    #[test]
    fn express_recovers_coordinates() {
        let mut e = Echelon::new();
        e.insert(sv(&[(0, 1), (1, 1)]));
        e.insert(sv(&[(1, 1), (2, 1)]));
        let c = e.express(&sv(&[(0, 1), (1, 2), (2, 1)])).unwrap();
        assert_eq!(c, sv(&[(0, 1), (1, 1)]));
        assert!(e.express(&sv(&[(2, 1)])).is_none());
    }
}
