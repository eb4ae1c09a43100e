//! Chevalley bases from root systems, with structure constants fixed by
//! declaring every extraspecial pair positive.

use std::collections::HashMap;

use crate::exactnum::{Rational, SparseVec};
use crate::rootdata::RootSystem;

use super::LieAlgebra;

/// A split simple Lie algebra with basis `h_1..h_r` (simple coroots)
/// followed by `e_a` for every root `a` in [`RootSystem::roots`] order.
#[derive(Clone, Debug)]
pub struct Chevalley {
    pub rs: RootSystem,
    pub alg: LieAlgebra<Rational>,
}

fn neg(v: &[i64]) -> Vec<i64> {
    v.iter().map(|x| -x).collect()
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

fn is_pos(v: &[i64]) -> bool {
    v.iter().any(|&x| x > 0)
}

struct Constants<'a> {
    rs: &'a RootSystem,
    pos: HashMap<(Vec<i64>, Vec<i64>), Rational>,
}

impl Constants<'_> {
    /// `N_{x,y}` for arbitrary roots, reduced to positive pairs.
    fn n(&self, x: &[i64], y: &[i64]) -> Rational {
        let z = add(x, y);
        if z.iter().all(|&c| c == 0) || !self.rs.is_root(&z) {
            return Rational::ZERO;
        }
        let norm = |v: &[i64]| self.rs.norm2(v);
        match (is_pos(x), is_pos(y)) {
            (true, true) => self.pos.get(&(x.to_vec(), y.to_vec())).cloned().expect("positive pair computed in height order"),
            (false, false) => -self.n(&neg(x), &neg(y)),
            (true, false) => {
                if is_pos(&z) {
                    -(&(&norm(&z) / &norm(x)) * &self.n(&neg(y), &z))
                } else {
                    &(&norm(&z) / &norm(y)) * &self.n(&neg(&z), x)
                }
            }
            (false, true) => -self.n(y, x),
        }
    }

    fn string_p(&self, alpha: &[i64], beta: &[i64]) -> i64 {
        let mut p = 0;
        let mut cur = beta.to_vec();
        loop {
            cur = cur.iter().zip(alpha).map(|(b, a)| b - a).collect();
            if self.rs.is_root(&cur) {
                p += 1;
            } else {
                return p;
            }
        }
    }
}

impl Chevalley {
    pub fn new(rs: RootSystem) -> Self {
        let pos_roots = rs.positive().to_vec();
        let mut c = Constants { rs: &rs, pos: HashMap::new() };
        for xi in pos_roots.iter().filter(|r| RootSystem::height(r) > 1) {
            let pairs: Vec<(Vec<i64>, Vec<i64>)> = pos_roots
                .iter()
                .filter_map(|a| {
                    let b: Vec<i64> = xi.iter().zip(a).map(|(x, y)| x - y).collect();
                    (rs.is_root(&b) && is_pos(&b)).then(|| (a.clone(), b))
                })
                .collect();
            // extraspecial pair: first root in the fixed order
            let (g, d) = pairs[0].clone();
            let ngd = Rational::from_int(c.string_p(&g, &d) + 1);
            c.pos.insert((g.clone(), d.clone()), ngd.clone());
            c.pos.insert((d.clone(), g.clone()), -ngd.clone());
            let nxi = rs.norm2(xi);
            for (a, b) in pairs.iter().skip(1) {
                if c.pos.contains_key(&(a.clone(), b.clone())) {
                    continue;
                }
                let ng = neg(&g);
                let nd = neg(&d);
                let bg = add(b, &ng);
                let ag = add(a, &ng);
                let mut s = Rational::ZERO;
                if rs.is_root(&bg) {
                    s += &(&c.n(b, &ng) * &c.n(a, &nd)) / &rs.norm2(&bg);
                }
                if rs.is_root(&ag) {
                    s += &(&c.n(&ng, a) * &c.n(b, &nd)) / &rs.norm2(&ag);
                }
                let nab = &(&nxi / &ngd) * &s;
                c.pos.insert((a.clone(), b.clone()), nab.clone());
                c.pos.insert((b.clone(), a.clone()), -nab);
            }
        }

        let r = rs.rank();
        let roots = rs.roots();
        let dim = r + roots.len();
        let mut names: Vec<String> = (1..=r).map(|i| format!("h{i}")).collect();
        names.extend(roots.iter().map(|a| format!("e[{}]", a.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))));
        let mut table = vec![vec![SparseVec::<Rational>::new(); dim]; dim];
        let simple: Vec<Vec<i64>> = (0..r).map(|i| (0..r).map(|j| i64::from(i == j)).collect()).collect();
        for (ai, a) in roots.iter().enumerate() {
            for i in 0..r {
                let v = Rational::from_int(rs.pairing(a, &simple[i]));
                if !num_traits::Zero::is_zero(&v) {
                    table[i][r + ai].insert(r + ai, v.clone());
                    table[r + ai][i].insert(r + ai, -v);
                }
            }
            for (bi, b) in roots.iter().enumerate() {
                let s = add(a, b);
                if s.iter().all(|&x| x == 0) {
                    // [e_a, e_-a] = h_a, the coroot in simple coroots
                    let na = rs.norm2(a);
                    for i in 0..r {
                        if a[i] != 0 {
                            let coeff = &(&Rational::from_int(a[i]) * &rs.norm2(&simple[i])) / &na;
                            table[r + ai][r + bi].insert(i, coeff);
                        }
                    }
                } else if let Some(si) = rs.root_index(&s) {
                    table[r + ai][r + bi].insert(r + si, c.n(a, b));
                }
            }
        }
        Chevalley { alg: LieAlgebra::new(names, table), rs }
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    /// Basis index of `e_a`.
    pub fn e(&self, root: &[i64]) -> usize {
        self.rank() + self.rs.root_index(root).expect("not a root")
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::standard_cartan;

    #[test]
    fn sl2_killing_form() {
        let ch = Chevalley::new(RootSystem::from_cartan(vec![vec![2]]).unwrap());
        ch.alg.check_jacobi().unwrap();
        assert_eq!(ch.alg.killing()[(0, 0)], Rational::from_int(8));
    }

    #[test]
    fn jacobi_for_small_types() {
        for (k, n, dim) in [('A', 2, 8), ('B', 2, 10), ('G', 2, 14), ('B', 3, 21), ('C', 3, 21)] {
            let ch = Chevalley::new(RootSystem::from_cartan(standard_cartan(k, n)).unwrap());
            assert_eq!(ch.dim(), dim);
            ch.alg.check_antisymmetry().unwrap();
            ch.alg.check_jacobi().unwrap();
        }
    }

    #[test]
    fn f4_and_b4_dimensions_and_jacobi() {
        let f4 = Chevalley::new(crate::rootdata::f4::f4());
        assert_eq!(f4.dim(), 52);
        f4.alg.check_jacobi().unwrap();
        let b4 = Chevalley::new(RootSystem::from_cartan(standard_cartan('B', 4)).unwrap());
        assert_eq!(b4.dim(), 36);
        b4.alg.check_jacobi().unwrap();
    }
}
