//! Named subspaces of `k`, Killing orthocomplements and the transversality maps.

use crate::exactnum::sparse::{rank_of, to_sparse};
use crate::exactnum::{Matrix, Rational};
use crate::rootdata::f4::{self, weights, Weight};
use crate::rootdata::RootSystem;

use super::{add_vec, unit, F4Model, LieAlgebra};

type Vq = Vec<Rational>;

/// Names accepted by [`F4Model::subspace`].
pub const SUBSPACES: &[&str] =
    &["k", "k+", "k-", "h_k", "t", "m", "m+", "y", "q+", "h_r", "q-", "q", "q~", "s", "m+perp", "y_perp"];

pub fn rank(vs: &[Vq]) -> usize {
    rank_of(vs.iter().map(|v| to_sparse(v)))
}

pub fn contains(space: &[Vq], v: &[Rational]) -> bool {
    LieAlgebra::<Rational>::coordinates(space, v).is_some()
}

pub fn is_subspace(sub: &[Vq], space: &[Vq]) -> bool {
    sub.iter().all(|v| contains(space, v))
}

pub fn same_span(a: &[Vq], b: &[Vq]) -> bool {
    rank(a) == rank(b) && is_subspace(a, b)
}

/// Coefficient of `target` when `v` is written in `modulo` plus `target`.
pub fn coefficient_mod(v: &[Rational], target: &[Rational], modulo: &[Vq]) -> Option<Rational> {
    let mut basis = modulo.to_vec();
    basis.push(target.to_vec());
    LieAlgebra::<Rational>::coordinates(&basis, v).map(|c| c[c.len() - 1].clone())
}

fn w(num: [i64; 4], den: i64) -> Weight {
    f4::w(num, den)
}

impl F4Model {
    /// Root vector of `k` with weight `num / den`.
    pub fn rv(&self, num: [i64; 4], den: i64) -> Vq {
        self.root_vector(&w(num, den))
    }

    /// Coroot of a compact weight `num / den`.
    pub fn coroot_w(&self, num: [i64; 4], den: i64) -> Vq {
        self.coroot_k(&w(num, den))
    }

    /// A named subspace of `k`, as a list of spanning vectors in `k` coordinates.
    pub fn subspace(&self, name: &str) -> Option<Vec<Vq>> {
        let n = self.dim_k();
        Some(match name {
            "k" => (0..n).map(|i| unit(n, i)).collect(),
            "k+" => self.k_plus(),
            "k-" => self.k_minus(),
            "h_k" => self.h_k(),
            "t" => (2..=4).map(|i| self.el(&format!("t{i}"))).collect(),
            "m" => self.m_basis(),
            "m+" => self.mplus(),
            "y" => self.y_space(),
            "q+" => self
                .positive_compact()
                .iter()
                .filter(|a| **a != weights::gamma1())
                .map(|a| self.root_vector(a))
                .collect(),
            "h_r" => vec![self.coroot_w([0, 0, 1, -1], 1), self.coroot_w([-1, 0, 0, 1], 1)],
            "q-" => vec![self.rv([0, 0, -1, 1], 1)],
            "q" => [self.subspace("q+")?, self.subspace("h_r")?, self.subspace("q-")?].concat(),
            "q~" => {
                let extra = vec![self.rv([0, 0, -1, 1], 1), self.rv([1, 0, 0, -1], 1), self.rv([1, 0, -1, 0], 1)];
                [self.k_plus(), self.subspace("h_r")?, extra].concat()
            }
            "s" => {
                let extra = vec![self.rv([1, 0, 1, 0], 1), self.rv([1, 0, 0, 1], 1), self.el("T34"), self.el("X1")];
                [self.k_minus(), self.h_k(), extra].concat()
            }
            "m+perp" => self.orthocomplement(&self.mplus()),
            "y_perp" => self.orthocomplement(&self.y_space()),
            _ => return None,
        })
    }

    /// Killing orthocomplement in `k` of the span of `s`.
    pub fn orthocomplement(&self, s: &[Vq]) -> Vec<Vq> {
        if s.is_empty() {
            return (0..self.dim_k()).map(|i| unit(self.dim_k(), i)).collect();
        }
        let rows: Vec<Vq> = s.iter().map(|v| self.killing_k.apply(v)).collect();
        Matrix::from_rows(rows).kernel()
    }

    /// Whether `[x, s]` lies in `s` for all `x` in `a`.
    pub fn normalizes(&self, a: &[Vq], s: &[Vq]) -> bool {
        self.k.normalizes(a, s)
    }

    pub fn is_subalgebra(&self, s: &[Vq]) -> bool {
        self.k.normalizes(s, s)
    }

    /// Rank of `(X, Y) -> [X, z] + Y` on `q x (m+)^perp` (or `q~ x (m+)^perp`).
    pub fn transversality_rank(&self, tilde: bool, z: &[Rational]) -> usize {
        let q = self.subspace(if tilde { "q~" } else { "q" }).unwrap();
        let mut image: Vec<Vq> = q.iter().map(|x| self.bracket_k(x, z)).collect();
        image.extend(self.subspace("m+perp").unwrap());
        rank(&image)
    }

    /// The image of the transversality map, as spanning vectors.
    pub fn transversality_image(&self, tilde: bool, z: &[Rational]) -> Vec<Vq> {
        let q = self.subspace(if tilde { "q~" } else { "q" }).unwrap();
        let mut image: Vec<Vq> = q.iter().map(|x| self.bracket_k(x, z)).collect();
        image.extend(self.subspace("m+perp").unwrap());
        image
    }

    /// Basis (Chevalley coordinates) of the subalgebra generated by the root
    /// vectors of `+-e2`, `+-a1`, `+-(e3+e4)`, with its root subsystem type.
    pub fn g_tilde(&self) -> (Vec<Vq>, String) {
        let dim = self.ch.dim();
        let rs = &self.ch.rs;
        let gens: Vec<Vq> = [w([0, 1, 0, 0], 1), w([1, -1, -1, -1], 2), w([0, 0, 1, 1], 1)]
            .iter()
            .flat_map(|r| {
                let neg: Weight = r.iter().map(|x| -x.clone()).collect();
                [r.clone(), neg]
            })
            .map(|r| unit(dim, self.ch.e(&rs.coeffs_of(&r).unwrap())))
            .collect();
        let basis = self.ch.alg.generated_subalgebra(&gens);
        let pos: Vec<Weight> = rs
            .positive()
            .iter()
            .map(|r| rs.ambient(r))
            .filter(|r| contains(&basis, &unit(dim, self.ch.e(&rs.coeffs_of(r).unwrap()))))
            .collect();
        let simple: Vec<Weight> =
            pos.iter().filter(|v| !pos.iter().any(|a| pos.contains(&f4::sub(v, a)))).cloned().collect();
        let ty = RootSystem::from_simple_roots(simple).map(|r| r.cartan_type()).unwrap_or_default();
        (basis, ty)
    }

    /// The element `Z_o` spanning the transversal direction.
    pub fn z_o(&self) -> Vq {
        self.el("Zo")
    }

    /// Sum of the listed named elements.
    pub fn sum_of(&self, names: &[&str]) -> Vq {
        names.iter().fold(vec![Rational::ZERO; self.dim_k()], |acc, n| add_vec(&acc, &self.el(n)))
    }
}
