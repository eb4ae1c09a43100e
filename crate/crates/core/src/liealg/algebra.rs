//! Finite-dimensional Lie algebras given by structure constants.

use crate::exactnum::sparse::{axpy, to_dense, to_sparse, Echelon};
use crate::exactnum::{Field, Matrix, SparseVec};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum LieError {
    #[error("Jacobi identity fails on basis triple ({0}, {1}, {2})")]
    Jacobi(usize, usize, usize),
    #[error("bracket is not antisymmetric on ({0}, {1})")]
    Antisymmetry(usize, usize),
    #[error("vectors do not span a subalgebra")]
    NotClosed,
    #[error("change of basis is singular")]
    Singular,
    #[error("{0}")]
    Model(String),
}

/// A Lie algebra with basis `b_0..b_{n-1}`; `table[i][j] = [b_i, b_j]`.
#[derive(Clone, Debug)]
pub struct LieAlgebra<F> {
    names: Vec<String>,
    table: Vec<Vec<SparseVec<F>>>,
}

impl<F: Field> LieAlgebra<F> {
    pub fn new(names: Vec<String>, table: Vec<Vec<SparseVec<F>>>) -> Self {
        assert_eq!(names.len(), table.len());
        LieAlgebra { names, table }
    }

    pub fn dim(&self) -> usize {
        self.names.len()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn bracket_basis(&self, i: usize, j: usize) -> &SparseVec<F> {
        &self.table[i][j]
    }

    pub fn bracket_sparse(&self, x: &SparseVec<F>, y: &SparseVec<F>) -> SparseVec<F> {
        let mut out = SparseVec::new();
        for (i, a) in x {
            for (j, b) in y {
                let t = &self.table[*i][*j];
                if !t.is_empty() {
                    axpy(&mut out, &(a.clone() * b.clone()), t);
                }
            }
        }
        out
    }

    pub fn bracket(&self, x: &[F], y: &[F]) -> Vec<F> {
        to_dense(&self.bracket_sparse(&to_sparse(x), &to_sparse(y)), self.dim())
    }

    /// Matrix of `ad x` acting on column vectors.
    pub fn ad(&self, x: &[F]) -> Matrix<F> {
        let n = self.dim();
        let xs = to_sparse(x);
        let mut m = Matrix::zeros(n, n);
        for j in 0..n {
            let mut e = SparseVec::new();
            e.insert(j, F::one());
            for (i, c) in self.bracket_sparse(&xs, &e) {
                m[(i, j)] = c;
            }
        }
        m
    }

    pub fn ad_basis(&self, i: usize) -> Matrix<F> {
        let mut x = vec![F::zero(); self.dim()];
        x[i] = F::one();
        self.ad(&x)
    }

    /// Killing form `tr(ad b_i ad b_j)` on the basis.
    pub fn killing(&self) -> Matrix<F> {
        let n = self.dim();
        let mut m = Matrix::zeros(n, n);
        for i in 0..n {
            for j in i..n {
                let mut acc = F::zero();
                for k in 0..n {
                    for (l, c1) in &self.table[j][k] {
                        if let Some(c2) = self.table[i][*l].get(&k) {
                            acc += c1.clone() * c2.clone();
                        }
                    }
                }
                m[(i, j)] = acc.clone();
                m[(j, i)] = acc;
            }
        }
        m
    }

    pub fn check_antisymmetry(&self) -> Result<(), LieError> {
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                let mut s = self.table[i][j].clone();
                axpy(&mut s, &F::one(), &self.table[j][i]);
                if !s.is_empty() {
                    return Err(LieError::Antisymmetry(i, j));
                }
            }
        }
        Ok(())
    }

    /// Exhaustive Jacobi check on basis triples `i < j < k`.
    pub fn check_jacobi(&self) -> Result<(), LieError> {
        let n = self.dim();
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let mut acc = SparseVec::new();
                    for (a, b, c) in [(i, j, k), (j, k, i), (k, i, j)] {
                        for (l, x) in &self.table[b][c] {
                            axpy(&mut acc, x, &self.table[a][*l]);
                        }
                    }
                    if !acc.is_empty() {
                        return Err(LieError::Jacobi(i, j, k));
                    }
                }
            }
        }
        Ok(())
    }

    /// Basis (in echelon form) of the subalgebra generated by `gens`.
    pub fn generated_subalgebra(&self, gens: &[Vec<F>]) -> Vec<Vec<F>> {
        let mut ech = Echelon::new();
        let mut basis: Vec<SparseVec<F>> = Vec::new();
        for g in gens {
            let s = to_sparse(g);
            if !ech.contains(&s) {
                ech.insert(s.clone());
                basis.push(s);
            }
        }
        let mut frontier = 0;
        while frontier < basis.len() {
            let x = basis[frontier].clone();
            for y in basis.clone() {
                let b = self.bracket_sparse(&x, &y);
                if !b.is_empty() && !ech.contains(&b) {
                    ech.insert(b.clone());
                    basis.push(b);
                }
            }
            frontier += 1;
        }
        basis.iter().map(|v| to_dense(v, self.dim())).collect()
    }

    /// The algebra in a new basis given by the rows of `basis` (coordinates in
    /// the old basis). The new vectors must span a subalgebra; they need not
    /// span the whole algebra.
    pub fn restrict(&self, basis: &[Vec<F>], names: Vec<String>) -> Result<LieAlgebra<F>, LieError> {
        assert_eq!(basis.len(), names.len());
        let mut ech = Echelon::new();
        for b in basis {
            if ech.insert(to_sparse(b)).is_some() {
                return Err(LieError::Singular);
            }
        }
        let sparse: Vec<SparseVec<F>> = basis.iter().map(|b| to_sparse(b)).collect();
        let mut table = vec![vec![SparseVec::new(); basis.len()]; basis.len()];
        for i in 0..basis.len() {
            for j in i + 1..basis.len() {
                let br = self.bracket_sparse(&sparse[i], &sparse[j]);
                let coords = ech.express(&br).ok_or(LieError::NotClosed)?;
                let mut neg = SparseVec::new();
                axpy(&mut neg, &(-F::one()), &coords);
                table[i][j] = coords;
                table[j][i] = neg;
            }
        }
        Ok(LieAlgebra::new(names, table))
    }

    /// Coordinates of `v` with respect to the vectors `basis`, if it lies in
    /// their span.
    pub fn coordinates(basis: &[Vec<F>], v: &[F]) -> Option<Vec<F>> {
        let mut ech = Echelon::new();
        for b in basis {
            ech.insert(to_sparse(b));
        }
        ech.express(&to_sparse(v)).map(|c| to_dense(&c, basis.len()))
    }

    pub fn map_field<G: Field>(&self, f: impl Fn(&F) -> G) -> LieAlgebra<G> {
        let table = self
            .table
            .iter()
            .map(|row| row.iter().map(|v| v.iter().map(|(k, x)| (*k, f(x))).filter(|(_, x)| !x.is_zero()).collect()).collect())
            .collect();
        LieAlgebra { names: self.names.clone(), table }
    }

    /// Whether `ad` of each vector preserves the span of `sub`.
    pub fn normalizes(&self, xs: &[Vec<F>], sub: &[Vec<F>]) -> bool {
        let mut ech = Echelon::new();
        for s in sub {
            ech.insert(to_sparse(s));
        }
        xs.iter().all(|x| sub.iter().all(|s| ech.contains(&to_sparse(&self.bracket(x, s)))))
    }
}

pub fn unit<F: Field>(n: usize, i: usize) -> Vec<F> {
    let mut v = vec![F::zero(); n];
    v[i] = F::one();
    v
}

pub fn lin_comb<F: Field>(terms: &[(F, &Vec<F>)]) -> Vec<F> {
    let n = terms.first().map_or(0, |t| t.1.len());
    let mut out = vec![F::zero(); n];
    for (c, v) in terms {
        for (o, x) in out.iter_mut().zip(v.iter()) {
            if !x.is_zero() {
                *o += c.clone() * x.clone();
            }
        }
    }
    out
}

pub fn scale_vec<F: Field>(v: &[F], c: &F) -> Vec<F> {
    v.iter().map(|x| x.clone() * c.clone()).collect()
}

pub fn add_vec<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() + y.clone()).collect()
}

pub fn sub_vec<F: Field>(a: &[F], b: &[F]) -> Vec<F> {
    a.iter().zip(b).map(|(x, y)| x.clone() - y.clone()).collect()
}

pub fn is_zero_vec<F: Field>(v: &[F]) -> bool {
    v.iter().all(F::is_zero)
}

/// The scalar `c` with `a = c b`, if `b` is nonzero and `a` is a multiple.
pub fn ratio<F: Field>(a: &[F], b: &[F]) -> Option<F> {
    let i = b.iter().position(|x| !x.is_zero())?;
    let c = a[i].clone() / b[i].clone();
    let ok = a.iter().zip(b).all(|(x, y)| *x == c.clone() * y.clone());
    ok.then_some(c)
}

/// Bilinear form `x^T B y`.
pub fn form<F: Field>(b: &Matrix<F>, x: &[F], y: &[F]) -> F {
    let by = b.apply(y);
    x.iter().zip(by).fold(F::zero(), |acc, (a, c)| acc + a.clone() * c)
}
