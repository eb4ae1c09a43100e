//! Degree bookkeeping, index sets and coefficient matrices of the linear
//! systems satisfied by the K-type components of elements of `B`, together
//! with the enveloping-algebra assemblies they come from.

pub mod battery;
mod system;

use std::collections::BTreeSet;

use num_traits::Zero;
use serde::Serialize;

use crate::exactnum::{factorial, poly_det, split_linear, Field, LinearSplit, Matrix, Poly, Rational};

pub use system::{Assembly, CombinError, SystemContext, TypedElement};

type Q = Rational;

/// `C(n, k)` with every out-of-range argument (including negative `n`)
/// mapped to zero.
pub fn binom(n: i64, k: i64) -> Q {
    if n < 0 || k < 0 || k > n {
        Q::ZERO
    } else {
        crate::exactnum::binomial(n, k)
    }
}

fn pow_i(base: i64, e: i64) -> Q {
    Q::from_int(base).pow(e as u32)
}

/// `d_r = floor((3m - 2r + 2) / 2)` for `0 <= r <= m`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub m: u32,
    pub dr: Vec<u32>,
}

impl DegreeProfile {
    pub fn new(m: u32) -> Self {
        DegreeProfile { m, dr: (0..=m).map(|r| (3 * m + 2 - 2 * r) / 2).collect() }
    }

    pub fn d0(&self) -> u32 {
        self.dr[0]
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IndexSets {
    pub m: u32,
    pub t: u32,
    pub n: u32,
    pub l: Vec<u32>,
    pub r: Vec<u32>,
    pub r_tilde: Vec<u32>,
}

/// `L(T,n)`, `R_F(T,n)` and the reduced set `R~_F(T,n)`.
pub fn index_sets(m: u32, t: u32, n: u32) -> Result<IndexSets, CombinError> {
    let d0 = DegreeProfile::new(m).d0();
    if t < m || t > 2 * d0 || n > t.min(2 * d0 - t) {
        return Err(CombinError::Range(format!("(T, n) = ({t}, {n}) is outside the valid range for m = {m}")));
    }
    // An upper bound below zero leaves L empty.
    let l: Vec<u32> = match (2 * m).min(t).checked_sub(n) {
        Some(top) => (0..=top).filter(|x| (x + n) % 2 == 1).collect(),
        None => Vec::new(),
    };
    let r: Vec<u32> = (0..=m.min(t.min(2 * d0 - t) - n)).filter(|x| (x + t + n) % 2 == 0).collect();
    let r_tilde = if (t + n) % 2 == 0 { r.iter().copied().filter(|&x| 2 * x < t + n).collect() } else { r.clone() };
    Ok(IndexSets { m, t, n, l, r, r_tilde })
}

/// Every `(T, n)` with `m <= T <= 2 d_0` and `0 <= n <= min(T, 2 d_0 - T)`.
pub fn valid_pairs(m: u32) -> Vec<(u32, u32)> {
    let d0 = DegreeProfile::new(m).d0();
    (m..=2 * d0).flat_map(|t| (0..=t.min(2 * d0 - t)).map(move |n| (t, n))).collect()
}

/// A coefficient together with whether its indices were in the range where
/// the formula is stated; outside it the value is zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coefficient {
    pub value: Q,
    pub in_range: bool,
}

/// `A_{i,r}(T,n,l) = (-1/2)^{r-i} (-1)^{i-n} r! C(T-n-l, i-n) C(l, r-i)`.
pub fn coefficient_a(i: i64, r: i64, t: i64, n: i64, l: i64) -> Coefficient {
    let in_range = n <= i && i <= t - l && i <= r && r <= i + l;
    if !in_range || r < 0 {
        return Coefficient { value: Q::ZERO, in_range };
    }
    let sign = if (i - n).rem_euclid(2) == 1 { -Q::ONE } else { Q::ONE };
    let value = Q::new(-1, 2).pow((r - i) as u32) * sign * factorial(r as u64) * binom(t - n - l, i - n) * binom(l, r - i);
    Coefficient { value, in_range }
}

/// `B_{r,k}(T,n,L) = r! (-1)^T 2^{T-r-2k} C(L, T-r-2k) C(T-L-n, r-n)`,
/// stated for `T - L <= 2k + r <= T - n`.
pub fn coefficient_b(r: i64, k: i64, t: i64, n: i64, big_l: i64) -> Coefficient {
    let s = 2 * k + r;
    let in_range = r >= 0 && k >= 0 && t - big_l <= s && s <= t - n;
    let e = t - r - 2 * k;
    if !in_range || e < 0 {
        return Coefficient { value: Q::ZERO, in_range };
    }
    let sign = if t % 2 == 1 { -Q::ONE } else { Q::ONE };
    let value = factorial(r as u64) * sign * pow_i(2, e) * binom(big_l, e) * binom(t - big_l - n, r - n);
    Coefficient { value, in_range }
}

/// `sum_l (-2)^l C(L, l) C(T-n-l, r-l)`.
pub fn system_entry(big_l: i64, r: i64, t: i64, n: i64) -> Q {
    (0..=big_l.min(r)).fold(Q::ZERO, |acc, l| acc + pow_i(-2, l) * binom(big_l, l) * binom(t - n - l, r - l))
}

/// Coefficient matrix of the system in the dominant unknowns: rows over
/// `L(T,n)`, columns over `R_F(T,n)` (or `R~_F(T,n)` when `reduced`).
#[derive(Clone, Debug)]
pub struct SystemMatrix<F: Field> {
    pub rows: Vec<u32>,
    pub cols: Vec<u32>,
    pub entries: Matrix<F>,
}

pub fn system_matrix<F: Field>(t: u32, n: u32, m: u32, reduced: bool) -> Result<SystemMatrix<F>, CombinError> {
    let sets = index_sets(m, t, n)?;
    let cols = if reduced { sets.r_tilde } else { sets.r };
    let rows = sets.l;
    let data: Vec<Vec<F>> = rows
        .iter()
        .map(|&l| cols.iter().map(|&r| F::from_rational(system_entry(l.into(), r.into(), t.into(), n.into()))).collect())
        .collect();
    let entries = if data.is_empty() { Matrix::zeros(0, cols.len()) } else { Matrix::from_rows(data) };
    Ok(SystemMatrix { rows, cols, entries })
}

/// `C(s - l, t)` as a polynomial in `s` of degree `t`.
pub fn binom_poly<F: Field>(shift: i64, t: u32) -> Poly<F> {
    let mut acc = Poly::constant(F::one());
    for u in 0..i64::from(t) {
        acc = &acc * &Poly::linear_root(F::from_int(shift + u));
    }
    acc.scale(&F::from_rational(factorial(t.into()).recip().expect("factorial is nonzero")))
}

/// `A_ij(s) = sum_l (-2)^l C(L_i, l) C(s - l, 2j + delta - l)`.
pub fn generalized_entry<F: Field>(li: u32, j: u32, delta: u32) -> Poly<F> {
    let top = 2 * j + delta;
    let mut acc = Poly::zero();
    for l in 0..=li.min(top) {
        let c = F::from_rational(pow_i(-2, l.into()) * binom(li.into(), l.into()));
        acc = &acc + &binom_poly::<F>(l.into(), top - l).scale(&c);
    }
    acc
}

/// The square matrix `A(s)` for an increasing sequence `L_0 < ... < L_k`.
pub fn generalized_a_matrix<F: Field>(lseq: &[u32], delta: u32) -> Result<Vec<Vec<Poly<F>>>, CombinError> {
    if lseq.windows(2).any(|w| w[0] >= w[1]) || delta > 1 {
        return Err(CombinError::Range(format!("L sequence {lseq:?} must be strictly increasing and delta in {{0, 1}}")));
    }
    let k = lseq.len() as u32;
    Ok(lseq.iter().map(|&li| (0..k).map(|j| generalized_entry(li, j, delta)).collect()).collect())
}

#[derive(Clone, Debug, Serialize)]
pub struct DeterminantReport {
    pub lseq: Vec<u32>,
    pub delta: u32,
    /// `lead * prod (s - root)^mult`, when the determinant splits.
    pub lead: Option<Q>,
    pub roots: Vec<(Q, usize)>,
    pub splits: bool,
    pub identically_zero: bool,
}

pub fn determinant(lseq: &[u32], delta: u32) -> Result<(Poly<Q>, DeterminantReport), CombinError> {
    let det = poly_det(&generalized_a_matrix::<Q>(lseq, delta)?);
    let split: Option<LinearSplit> = split_linear(&det);
    let report = DeterminantReport {
        lseq: lseq.to_vec(),
        delta,
        lead: split.as_ref().map(|s| s.lead.clone()),
        roots: split.as_ref().map(|s| s.roots.clone()).unwrap_or_default(),
        splits: split.is_some(),
        identically_zero: det.is_zero(),
    };
    Ok((det, report))
}

/// All strictly increasing sequences in `0..=l_max` of length `1..=size`.
pub fn increasing_sequences(l_max: u32, size: usize) -> Vec<Vec<u32>> {
    let mut out = Vec::new();
    let mut stack: Vec<Vec<u32>> = (0..=l_max).map(|x| vec![x]).collect();
    while let Some(s) = stack.pop() {
        if s.len() < size {
            let last = *s.last().expect("nonempty");
            stack.extend((last + 1..=l_max).map(|x| {
                let mut t = s.clone();
                t.push(x);
                t
            }));
        }
        out.push(s);
    }
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

/// Determinants for every sequence up to the given size and bound, both parities.
pub fn determinant_table(k_max: usize, l_max: u32) -> Vec<DeterminantReport> {
    let mut out = Vec::new();
    for lseq in increasing_sequences(l_max, k_max + 1) {
        for delta in 0..2 {
            out.push(determinant(&lseq, delta).expect("sequences are increasing").1);
        }
    }
    out
}

/// Whether `A(T,n)` (square in the `L(T,n)` rows) is singular at `s = T - n`,
/// together with the linear factors of `det A(s)`.
#[derive(Clone, Debug, Serialize)]
pub struct SingularCase {
    pub m: u32,
    pub t: u32,
    pub n: u32,
    pub report: DeterminantReport,
    pub singular: bool,
}

pub fn singular_cases(m_max: u32) -> Vec<SingularCase> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for m in 0..=m_max {
        for (t, n) in valid_pairs(m) {
            let sets = index_sets(m, t, n).expect("pair is valid");
            if sets.l.is_empty() || !seen.insert((m, t, n)) {
                continue;
            }
            let (det, report) = determinant(&sets.l, (t - n) % 2).expect("L is increasing");
            let singular = det.eval(&Q::from_int((t - n).into())).is_zero();
            out.push(SingularCase { m, t, n, report, singular });
        }
    }
    out
}

#[cfg(test)]
mod tests;
