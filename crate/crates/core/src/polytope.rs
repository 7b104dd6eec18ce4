//! Lattice points of bounded rational polyhedra `{x : a_k . x >= b_k}`.
//!
//! Coordinates are fixed one at a time; the admissible range of the next
//! coordinate is read off the vertices of the remaining section, so every
//! visited prefix extends to at least one rational point.

use num_integer::Integer;

use crate::exec::Strategy;
use crate::vector::{det_i128, subsets};

/// The half-space `normal . x >= offset`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HalfSpace {
    pub normal: Vec<i64>,
    pub offset: i64,
}

impl HalfSpace {
    pub fn new(normal: Vec<i64>, offset: i64) -> Self {
        HalfSpace { normal, offset }
    }

    pub fn contains(&self, x: &[i64]) -> bool {
        crate::vector::dot(&self.normal, x) >= self.offset
    }
}

#[derive(Clone, Debug)]
struct Section {
    rows: Vec<Vec<i128>>,
    rhs: Vec<i128>,
}

impl Section {
    fn restrict(&self, value: i128) -> Section {
        Section {
            rows: self.rows.iter().map(|r| r[1..].to_vec()).collect(),
            rhs: self
                .rows
                .iter()
                .zip(&self.rhs)
                .map(|(r, b)| b - r[0] * value)
                .collect(),
        }
    }

    /// Integer range of the first coordinate over the section, or `None`
    /// when the section is empty. The section must be bounded.
    fn first_range(&self) -> Option<(i128, i128)> {
        let dim = self.rows.first().map_or(0, |r| r.len());
        debug_assert!(dim >= 1);
        if dim == 1 {
            let (mut lo, mut hi) = (i128::MIN, i128::MAX);
            for (r, &b) in self.rows.iter().zip(&self.rhs) {
                let a = r[0];
                if a > 0 {
                    lo = lo.max(Integer::div_ceil(&b, &a));
                } else if a < 0 {
                    hi = hi.min(Integer::div_floor(&b, &a));
                } else if b > 0 {
                    return None;
                }
            }
            assert!(lo > i128::MIN && hi < i128::MAX, "unbounded polyhedron");
            return (lo <= hi).then_some((lo, hi));
        }
        let mut lo: Option<(i128, i128)> = None;
        let mut hi: Option<(i128, i128)> = None;
        for subset in subsets(self.rows.len(), dim) {
            let a: Vec<Vec<i128>> = subset.iter().map(|&k| self.rows[k].clone()).collect();
            let den = det_i128(&a);
            if den == 0 {
                continue;
            }
            // Cramer's rule: x_j = det(A with column j replaced by b) / den.
            let x: Vec<i128> = (0..dim)
                .map(|j| {
                    let mut aj = a.clone();
                    for (row, &k) in aj.iter_mut().zip(&subset) {
                        row[j] = self.rhs[k];
                    }
                    det_i128(&aj)
                })
                .collect();
            let (x, den) = if den < 0 {
                (x.iter().map(|v| -v).collect::<Vec<_>>(), -den)
            } else {
                (x, den)
            };
            let feasible = self.rows.iter().zip(&self.rhs).all(|(r, &b)| {
                let lhs: i128 = r.iter().zip(&x).map(|(p, q)| p * q).sum();
                lhs >= b * den
            });
            if !feasible {
                continue;
            }
            let v = (x[0], den);
            if lo.is_none_or(|l| v.0 * l.1 < l.0 * v.1) {
                lo = Some(v);
            }
            if hi.is_none_or(|h| v.0 * h.1 > h.0 * v.1) {
                hi = Some(v);
            }
        }
        let (lo, hi) = (lo?, hi?);
        let lo = Integer::div_ceil(&lo.0, &lo.1);
        let hi = Integer::div_floor(&hi.0, &hi.1);
        (lo <= hi).then_some((lo, hi))
    }

    fn collect(&self, prefix: &mut Vec<i64>, out: &mut Vec<Vec<i64>>) {
        let dim = self.rows.first().map_or(0, |r| r.len());
        if dim == 0 {
            if self.rhs.iter().all(|&b| b <= 0) {
                out.push(prefix.clone());
            }
            return;
        }
        let Some((lo, hi)) = self.first_range() else {
            return;
        };
        for v in lo..=hi {
            prefix.push(i64::try_from(v).expect("lattice point coordinate exceeds i64"));
            self.restrict(v).collect(prefix, out);
            prefix.pop();
        }
    }
}

/// All lattice points of the bounded polyhedron cut out by `constraints`
/// in `Z^dim`, in lexicographic order.
///
/// Panics if the polyhedron is unbounded.
pub fn lattice_points(constraints: &[HalfSpace], dim: usize) -> Vec<Vec<i64>> {
    lattice_points_with(constraints, dim, Strategy::default())
}

pub fn lattice_points_with(
    constraints: &[HalfSpace],
    dim: usize,
    strategy: Strategy,
) -> Vec<Vec<i64>> {
    for h in constraints {
        assert_eq!(h.normal.len(), dim, "constraint of wrong dimension");
    }
    let section = Section {
        rows: constraints
            .iter()
            .map(|h| h.normal.iter().map(|&x| x as i128).collect())
            .collect(),
        rhs: constraints.iter().map(|h| h.offset as i128).collect(),
    };
    if dim == 0 {
        let mut out = Vec::new();
        section.collect(&mut Vec::new(), &mut out);
        return out;
    }
    if constraints.is_empty() {
        panic!("unbounded polyhedron");
    }
    let Some((lo, hi)) = section.first_range() else {
        return Vec::new();
    };
    let firsts: Vec<i128> = (lo..=hi).collect();
    strategy
        .map(&firsts, |&v| {
            let mut out = Vec::new();
            let mut prefix = vec![i64::try_from(v).expect("lattice point coordinate exceeds i64")];
            section.restrict(v).collect(&mut prefix, &mut out);
            out
        })
        .into_iter()
        .flatten()
        .collect()
}
