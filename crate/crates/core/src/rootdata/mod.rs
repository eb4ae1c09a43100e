//! Root systems built by closure from a Cartan matrix or from explicit
//! simple roots, plus Cartan-type classification.

pub mod f4;

use std::collections::HashMap;

use num_traits::Zero;
use serde::Serialize;

use crate::exactnum::Rational;

/// A crystallographic root system. Roots are stored by their integer
/// coordinates in the simple roots; `ambient` gives them as vectors in the
/// space the simple roots were supplied in (for Cartan-built systems this is
/// the simple-root coordinate space, with `gram` as the metric).
#[derive(Clone, Debug)]
pub struct RootSystem {
    cartan: Vec<Vec<i64>>,
    gram: Vec<Vec<Rational>>,
    simple_ambient: Vec<Vec<Rational>>,
    positive: Vec<Vec<i64>>,
    index: HashMap<Vec<i64>, usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum RootDataError {
    #[error("not a finite-type Cartan matrix: {0}")]
    NotFiniteType(String),
    #[error("not a root: {0}")]
    NotARoot(String),
}

impl RootSystem {
    /// Builds the root system of a finite-type Cartan matrix, with the
    /// convention `A[i][j] = 2 (a_i, a_j) / (a_j, a_j)`.
    pub fn from_cartan(cartan: Vec<Vec<i64>>) -> Result<Self, RootDataError> {
        let cartan = transpose(&cartan);
        let n = cartan.len();
        let d = symmetrizer(&cartan)?;
        let gram: Vec<Vec<Rational>> =
            (0..n).map(|i| (0..n).map(|j| &d[i] * &Rational::new(cartan[i][j], 2)).collect()).collect();
        for i in 0..n {
            for j in 0..n {
                if gram[i][j] != gram[j][i] {
                    return Err(RootDataError::NotFiniteType("not symmetrizable".into()));
                }
            }
        }
        let simple_ambient =
            (0..n).map(|i| (0..n).map(|j| if i == j { Rational::ONE } else { Rational::ZERO }).collect()).collect();
        Self::close(cartan, gram, simple_ambient)
    }

    /// Builds the root system with the given simple roots, as vectors in a
    /// Euclidean space with the standard inner product.
    pub fn from_simple_roots(simple: Vec<Vec<Rational>>) -> Result<Self, RootDataError> {
        let n = simple.len();
        let gram: Vec<Vec<Rational>> = (0..n).map(|i| (0..n).map(|j| dot(&simple[i], &simple[j])).collect()).collect();
        let mut cartan = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                let a = &(&Rational::from_int(2) * &gram[i][j]) / &gram[i][i];
                cartan[i][j] = a.to_i64().ok_or_else(|| RootDataError::NotFiniteType("non-integral Cartan entry".into()))?;
            }
        }
        Self::close(cartan, gram, simple)
    }

    fn close(cartan: Vec<Vec<i64>>, gram: Vec<Vec<Rational>>, simple_ambient: Vec<Vec<Rational>>) -> Result<Self, RootDataError> {
        let n = cartan.len();
        for i in 0..n {
            if cartan[i][i] != 2 {
                return Err(RootDataError::NotFiniteType("diagonal entries must be 2".into()));
            }
        }
        let unit = |i: usize| -> Vec<i64> { (0..n).map(|j| i64::from(i == j)).collect() };
        let mut positive: Vec<Vec<i64>> = (0..n).map(unit).collect();
        let mut seen: std::collections::HashSet<Vec<i64>> = positive.iter().cloned().collect();
        let mut layer = positive.clone();
        while !layer.is_empty() {
            let mut next = Vec::new();
            for beta in &layer {
                for i in 0..n {
                    if *beta == unit(i) {
                        continue;
                    }
                    // p: how far down the i-string from beta goes
                    let mut p = 0;
                    let mut down = beta.clone();
                    loop {
                        down[i] -= 1;
                        if seen.contains(&down) {
                            p += 1;
                        } else {
                            break;
                        }
                    }
                    let pairing: i64 = (0..n).map(|j| beta[j] * cartan[i][j]).sum();
                    let q = p - pairing;
                    if q > 0 {
                        let mut up = beta.clone();
                        up[i] += 1;
                        if seen.insert(up.clone()) {
                            next.push(up);
                        }
                    }
                }
            }
            if positive.len() + next.len() > 10_000 {
                return Err(RootDataError::NotFiniteType("root closure does not terminate".into()));
            }
            next.sort();
            positive.extend(next.iter().cloned());
            layer = next;
        }
        positive.sort_by(|a, b| {
            let ha: i64 = a.iter().sum();
            let hb: i64 = b.iter().sum();
            ha.cmp(&hb).then_with(|| b.cmp(a))
        });
        let mut rs = RootSystem { cartan, gram, simple_ambient, positive, index: HashMap::new() };
        let all = rs.roots();
        rs.index = all.into_iter().enumerate().map(|(i, r)| (r, i)).collect();
        Ok(rs)
    }

    pub fn rank(&self) -> usize {
        self.cartan.len()
    }

    /// Cartan matrix with `A[i][j] = 2 (a_i, a_j) / (a_j, a_j)`.
    pub fn cartan(&self) -> Vec<Vec<i64>> {
        transpose(&self.cartan)
    }

    /// Positive roots in simple-root coordinates, ordered by height.
    pub fn positive(&self) -> &[Vec<i64>] {
        &self.positive
    }

    /// All roots: the positive ones followed by their negatives.
    pub fn roots(&self) -> Vec<Vec<i64>> {
        let mut all = self.positive.clone();
        all.extend(self.positive.iter().map(|r| r.iter().map(|x| -x).collect::<Vec<_>>()));
        all
    }

    pub fn num_roots(&self) -> usize {
        2 * self.positive.len()
    }

    /// Index of a root in [`RootSystem::roots`].
    pub fn root_index(&self, coeffs: &[i64]) -> Option<usize> {
        self.index.get(coeffs).copied()
    }

    pub fn is_root(&self, coeffs: &[i64]) -> bool {
        self.index.contains_key(coeffs)
    }

    pub fn height(coeffs: &[i64]) -> i64 {
        coeffs.iter().sum()
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> Rational {
        let mut acc = Rational::ZERO;
        for i in 0..a.len() {
            if a[i] == 0 {
                continue;
            }
            for j in 0..b.len() {
                if b[j] != 0 {
                    acc += &self.gram[i][j] * &Rational::from_int(a[i] * b[j]);
                }
            }
        }
        acc
    }

    pub fn norm2(&self, a: &[i64]) -> Rational {
        self.inner(a, a)
    }

    /// `<beta, alpha^vee> = 2 (beta, alpha) / (alpha, alpha)`.
    pub fn pairing(&self, beta: &[i64], alpha: &[i64]) -> i64 {
        let v = &(&Rational::from_int(2) * &self.inner(beta, alpha)) / &self.norm2(alpha);
        v.to_i64().expect("integral pairing")
    }

    pub fn ambient(&self, coeffs: &[i64]) -> Vec<Rational> {
        let dim = self.simple_ambient.first().map_or(0, Vec::len);
        let mut out = vec![Rational::ZERO; dim];
        for (i, c) in coeffs.iter().enumerate() {
            if *c != 0 {
                for (o, s) in out.iter_mut().zip(&self.simple_ambient[i]) {
                    *o += &Rational::from_int(*c) * s;
                }
            }
        }
        out
    }

    /// Simple-root coordinates of an ambient vector, if it is a root.
    pub fn coeffs_of(&self, v: &[Rational]) -> Option<Vec<i64>> {
        self.roots().into_iter().find(|r| self.ambient(r) == v)
    }

    /// Cartan type, e.g. `"F4"` or `"B3"`, with components joined by `x`.
    pub fn cartan_type(&self) -> String {
        classify(&self.cartan)
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).fold(Rational::ZERO, |acc, (x, y)| acc + x * y)
}

fn symmetrizer(cartan: &[Vec<i64>]) -> Result<Vec<Rational>, RootDataError> {
    let n = cartan.len();
    let mut d: Vec<Option<Rational>> = vec![None; n];
    for start in 0..n {
        if d[start].is_some() {
            continue;
        }
        d[start] = Some(Rational::ONE);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..n {
                if i == j || cartan[i][j] == 0 {
                    continue;
                }
                if cartan[j][i] == 0 {
                    return Err(RootDataError::NotFiniteType("asymmetric zero pattern".into()));
                }
                let dj = &d[i].clone().unwrap() * &Rational::new(cartan[i][j], cartan[j][i]);
                match &d[j] {
                    Some(x) if *x != dj => return Err(RootDataError::NotFiniteType("not symmetrizable".into())),
                    Some(_) => {}
                    None => {
                        d[j] = Some(dj);
                        stack.push(j);
                    }
                }
            }
        }
    }
    let d: Vec<Rational> = d.into_iter().map(Option::unwrap).collect();
    // normalize each component so that its shortest simple root has length 1
    let comps = components(cartan);
    let mut out = d.clone();
    for comp in comps {
        let min = comp.iter().map(|&i| d[i].clone()).min().unwrap();
        for &i in &comp {
            out[i] = &d[i] / &min;
        }
    }
    if out.iter().any(|x| x.is_zero() || x.is_negative()) {
        return Err(RootDataError::NotFiniteType("indefinite symmetrizer".into()));
    }
    Ok(out)
}

fn components(cartan: &[Vec<i64>]) -> Vec<Vec<usize>> {
    let n = cartan.len();
    let mut comp = vec![usize::MAX; n];
    let mut out = Vec::new();
    for s in 0..n {
        if comp[s] != usize::MAX {
            continue;
        }
        let id = out.len();
        let mut members = vec![s];
        comp[s] = id;
        let mut k = 0;
        while k < members.len() {
            let i = members[k];
            for j in 0..n {
                if j != i && cartan[i][j] != 0 && comp[j] == usize::MAX {
                    comp[j] = id;
                    members.push(j);
                }
            }
            k += 1;
        }
        members.sort();
        out.push(members);
    }
    out
}

fn transpose(a: &[Vec<i64>]) -> Vec<Vec<i64>> {
    (0..a.len()).map(|i| a.iter().map(|row| row[i]).collect()).collect()
}

/// Names the Cartan type of a finite-type Cartan matrix.
pub fn cartan_type(cartan: &[Vec<i64>]) -> String {
    classify(&transpose(cartan))
}

// Rows index the root whose length normalizes the entry.
fn classify(cartan: &[Vec<i64>]) -> String {
    let mut names: Vec<String> = components(cartan).iter().map(|c| component_type(cartan, c)).collect();
    names.sort();
    names.join("x")
}

fn component_type(a: &[Vec<i64>], comp: &[usize]) -> String {
    let n = comp.len();
    let nbrs = |i: usize| comp.iter().copied().filter(|&j| j != i && a[i][j] != 0).collect::<Vec<_>>();
    let mut multiple = None;
    for &i in comp {
        for &j in comp {
            if i != j && a[i][j] * a[j][i] > 1 {
                multiple = Some((i, j, a[i][j] * a[j][i]));
            }
        }
    }
    match multiple {
        None => {
            let branch: Vec<usize> = comp.iter().copied().filter(|&i| nbrs(i).len() == 3).collect();
            if branch.is_empty() {
                return format!("A{n}");
            }
            let b = branch[0];
            let mut legs: Vec<usize> = nbrs(b)
                .into_iter()
                .map(|start| {
                    let (mut prev, mut cur, mut len) = (b, start, 1);
                    loop {
                        let next: Vec<usize> = nbrs(cur).into_iter().filter(|&x| x != prev).collect();
                        if next.is_empty() {
                            break len;
                        }
                        prev = cur;
                        cur = next[0];
                        len += 1;
                    }
                })
                .collect();
            legs.sort();
            if legs[0] == 1 && legs[1] == 1 {
                format!("D{n}")
            } else {
                format!("E{n}")
            }
        }
        Some((_, _, 3)) => "G2".to_string(),
        Some((i, j, _)) => {
            if n == 2 {
                return "B2".to_string();
            }
            if n == 4 && nbrs(i).len() == 2 && nbrs(j).len() == 2 {
                return "F4".to_string();
            }
            // the short root s satisfies a[s][l] = -2
            let (short, long) = if a[i][j] == -2 { (i, j) } else { (j, i) };
            if nbrs(short).len() == 1 {
                format!("B{n}")
            } else {
                debug_assert_eq!(nbrs(long).len(), 1);
                format!("C{n}")
            }
        }
    }
}

/// Serializable summary of a root system.
#[derive(Debug, Clone, Serialize)]
pub struct RootSystemDump {
    pub cartan_type: String,
    pub cartan: Vec<Vec<i64>>,
    pub positive_roots: Vec<Vec<i64>>,
    pub positive_roots_ambient: Vec<Vec<Rational>>,
}

impl RootSystem {
    pub fn dump(&self) -> RootSystemDump {
        RootSystemDump {
            cartan_type: self.cartan_type(),
            cartan: self.cartan(),
            positive_roots: self.positive.clone(),
            positive_roots_ambient: self.positive.iter().map(|r| self.ambient(r)).collect(),
        }
    }
}

/// Standard Cartan matrices, with `A[i][j] = 2 (a_i, a_j) / (a_j, a_j)` and
/// the Bourbaki numbering (the short root of `B_n` is last).
pub fn standard_cartan(kind: char, n: usize) -> Vec<Vec<i64>> {
    let mut a = vec![vec![0i64; n]; n];
    for i in 0..n {
        a[i][i] = 2;
        if i + 1 < n {
            a[i][i + 1] = -1;
            a[i + 1][i] = -1;
        }
    }
    match kind {
        'A' => {}
        'B' => a[n - 1][n - 2] = -2,
        'C' => a[n - 2][n - 1] = -2,
        'D' => {
            a[n - 2][n - 1] = 0;
            a[n - 1][n - 2] = 0;
            a[n - 3][n - 1] = -1;
            a[n - 1][n - 3] = -1;
        }
        'F' => {
            assert_eq!(n, 4);
            a[2][1] = -2;
        }
        'G' => {
            assert_eq!(n, 2);
            a[1][0] = -3;
        }
        _ => panic!("unsupported Cartan kind {kind}"),
    }
    transpose(&a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classical_counts_and_types() {
        for (k, n, roots, name) in [
            ('A', 1, 2, "A1"),
            ('A', 3, 12, "A3"),
            ('B', 3, 18, "B3"),
            ('B', 4, 32, "B4"),
            ('C', 3, 18, "C3"),
            ('D', 4, 24, "D4"),
            ('F', 4, 48, "F4"),
            ('G', 2, 12, "G2"),
        ] {
            let rs = RootSystem::from_cartan(standard_cartan(k, n)).unwrap();
            assert_eq!(rs.num_roots(), roots, "{name}");
            assert_eq!(rs.cartan_type(), name);
        }
    }

    #[test]
    fn rejects_affine_matrix() {
        let affine = vec![vec![2, -2], vec![-2, 2]];
        assert!(RootSystem::from_cartan(affine).is_err());
    }
}
