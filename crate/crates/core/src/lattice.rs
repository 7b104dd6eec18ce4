//! Exact integer linear algebra: Hermite and Smith normal forms, integer
//! kernels, Diophantine solving and cokernel structure.
//!
//! Every routine is deterministic. Pivots are chosen by minimal absolute
//! value with ties broken by the smallest index.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};

/// Dense integer matrix stored row-major.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from `i64` rows. `cols` fixes the width when there
    /// are no rows.
    pub fn from_rows(rows: &[Vec<i64>], cols: usize) -> Self {
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            for (j, &x) in r.iter().enumerate() {
                m.data[i * cols + j] = BigInt::from(x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn mul(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j] += a * other.get(k, j);
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape mismatch");
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// Exact determinant by fraction-free elimination.
    pub fn determinant(&self) -> BigInt {
        assert_eq!(self.rows, self.cols, "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                let Some(p) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, p);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    pub fn rank(&self) -> usize {
        let h = hnf(self).h;
        (0..h.rows)
            .filter(|&i| h.row(i).iter().any(|x| !x.is_zero()))
            .count()
    }

    /// Converts to `i64` rows, failing on overflow.
    pub fn to_i64_rows(&self) -> Result<Vec<Vec<i64>>> {
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .map(|x| x.to_i64().ok_or(Error::Overflow))
                    .collect()
            })
            .collect()
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] -= factor * row[source]
    fn sub_row(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(source, j) * factor;
            self.data[target * self.cols + j] -= v;
        }
    }

    /// col[target] -= factor * col[source]
    fn sub_col(&mut self, target: usize, source: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, source) * factor;
            self.data[i * self.cols + target] -= v;
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j);
            self.set(i, j, v);
        }
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for i in 0..self.rows {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    write!(f, ", ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, "]")
    }
}

pub fn to_big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn to_i64(v: &[BigInt]) -> Result<Vec<i64>> {
    v.iter()
        .map(|x| x.to_i64().ok_or(Error::Overflow))
        .collect()
}

/// Row Hermite normal form `h = u * m`.
#[derive(Clone, Debug)]
pub struct HermiteForm {
    pub h: IntMatrix,
    pub u: IntMatrix,
}

/// Smith normal form `s = u * m * w`.
#[derive(Clone, Debug)]
pub struct SmithForm {
    pub s: IntMatrix,
    pub u: IntMatrix,
    pub w: IntMatrix,
}

impl SmithForm {
    /// Diagonal entries `d_1 | d_2 | ...` (length `min(rows, cols)`).
    pub fn diagonal(&self) -> Vec<BigInt> {
        (0..self.s.rows.min(self.s.cols))
            .map(|i| self.s.get(i, i).clone())
            .collect()
    }

    pub fn rank(&self) -> usize {
        self.diagonal().iter().filter(|d| !d.is_zero()).count()
    }
}

fn min_abs_row(m: &IntMatrix, col: usize, from: usize) -> Option<usize> {
    (from..m.rows)
        .filter(|&i| !m.get(i, col).is_zero())
        .min_by(|&a, &b| {
            m.get(a, col)
                .abs()
                .cmp(&m.get(b, col).abs())
                .then(a.cmp(&b))
        })
}

/// Row Hermite normal form: row echelon, positive pivots, entries above a
/// pivot reduced into `[0, pivot)`. Zero rows come last.
pub fn hnf(m: &IntMatrix) -> HermiteForm {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut r = 0;
    for c in 0..m.cols {
        if r == m.rows {
            break;
        }
        let mut found = false;
        while let Some(p) = min_abs_row(&h, c, r) {
            found = true;
            h.swap_rows(r, p);
            u.swap_rows(r, p);
            let mut clean = true;
            for i in r + 1..m.rows {
                if h.get(i, c).is_zero() {
                    continue;
                }
                let q = h.get(i, c).div_floor(h.get(r, c));
                h.sub_row(i, r, &q);
                u.sub_row(i, r, &q);
                clean &= h.get(i, c).is_zero();
            }
            if clean {
                break;
            }
        }
        if !found {
            continue;
        }
        if h.get(r, c).is_negative() {
            h.negate_row(r);
            u.negate_row(r);
        }
        for i in 0..r {
            let q = h.get(i, c).div_floor(h.get(r, c));
            h.sub_row(i, r, &q);
            u.sub_row(i, r, &q);
        }
        r += 1;
    }
    HermiteForm { h, u }
}

/// Smith normal form with nonnegative diagonal `d_1 | d_2 | ...`.
pub fn snf(m: &IntMatrix) -> SmithForm {
    let (rows, cols) = (m.rows, m.cols);
    let mut s = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut w = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let pivot = (t..rows)
                .flat_map(|i| (t..cols).map(move |j| (i, j)))
                .filter(|&(i, j)| !s.get(i, j).is_zero())
                .min_by(|&a, &b| {
                    s.get(a.0, a.1)
                        .abs()
                        .cmp(&s.get(b.0, b.1).abs())
                        .then(a.cmp(&b))
                });
            let Some((pi, pj)) = pivot else {
                return SmithForm { s, u, w };
            };
            s.swap_rows(t, pi);
            u.swap_rows(t, pi);
            s.swap_cols(t, pj);
            w.swap_cols(t, pj);

            let mut clean = true;
            for i in t + 1..rows {
                let q = s.get(i, t).div_floor(s.get(t, t));
                s.sub_row(i, t, &q);
                u.sub_row(i, t, &q);
                clean &= s.get(i, t).is_zero();
            }
            for j in t + 1..cols {
                let q = s.get(t, j).div_floor(s.get(t, t));
                s.sub_col(j, t, &q);
                w.sub_col(j, t, &q);
                clean &= s.get(t, j).is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = s.get(t, t).clone();
            let bad =
                (t + 1..rows).find(|&i| (t + 1..cols).any(|j| !s.get(i, j).is_multiple_of(&pivot)));
            match bad {
                Some(i) => {
                    let minus_one = -BigInt::one();
                    s.sub_row(t, i, &minus_one);
                    u.sub_row(t, i, &minus_one);
                }
                None => break,
            }
        }
        if s.get(t, t).is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    SmithForm { s, u, w }
}

/// A finitely generated abelian group `Z^free_rank ⊕ ⊕ Z/d_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct FinAbGroup {
    pub free_rank: usize,
    /// Each factor is at least 2 and divides the next.
    #[serde(serialize_with = "serialize_bigints")]
    pub invariant_factors: Vec<BigInt>,
}

fn serialize_bigints<S: serde::Serializer>(
    v: &[BigInt],
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    use serde::ser::{Error as _, SerializeSeq};
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for x in v {
        let n = x
            .to_i64()
            .ok_or_else(|| S::Error::custom("invariant factor exceeds i64"))?;
        seq.serialize_element(&n)?;
    }
    seq.end()
}

impl FinAbGroup {
    pub fn trivial() -> Self {
        FinAbGroup {
            free_rank: 0,
            invariant_factors: Vec::new(),
        }
    }

    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.invariant_factors.is_empty()
    }

    /// Group order, `None` when infinite.
    pub fn order(&self) -> Option<BigInt> {
        (self.free_rank == 0).then(|| self.invariant_factors.iter().product())
    }
}

impl fmt::Display for FinAbGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_trivial() {
            return write!(f, "0");
        }
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.invariant_factors.iter().map(|d| format!("Z/{d}")));
        write!(f, "{}", parts.join(" + "))
    }
}

/// Structure of `Z^rows / (column span of m)`.
pub fn cokernel_structure(m: &IntMatrix) -> FinAbGroup {
    let smith = snf(m);
    let rank = smith.rank();
    FinAbGroup {
        free_rank: m.rows - rank,
        invariant_factors: smith
            .diagonal()
            .into_iter()
            .filter(|d| *d > BigInt::one())
            .collect(),
    }
}

/// Finds an integer `x` with `m * x = b`, if one exists.
pub fn solve_integer(m: &IntMatrix, b: &[BigInt]) -> Result<Option<Vec<BigInt>>> {
    if b.len() != m.rows {
        return Err(Error::DimensionMismatch {
            expected: m.rows,
            found: b.len(),
        });
    }
    let smith = snf(m);
    let rank = smith.rank();
    let c = smith.u.mul_vec(b);
    let mut y = vec![BigInt::zero(); m.cols];
    for (i, ci) in c.iter().enumerate() {
        if i < rank {
            let d = smith.s.get(i, i);
            if !ci.is_multiple_of(d) {
                return Ok(None);
            }
            y[i] = ci / d;
        } else if !ci.is_zero() {
            return Ok(None);
        }
    }
    Ok(Some(smith.w.mul_vec(&y)))
}

/// Lattice basis of `{x : m * x = 0}` in Hermite normal form.
pub fn kernel_basis(m: &IntMatrix) -> Vec<Vec<BigInt>> {
    let HermiteForm { h, u } = hnf(&m.transpose());
    let rank = (0..h.rows)
        .filter(|&i| h.row(i).iter().any(|x| !x.is_zero()))
        .count();
    if rank == h.rows {
        return Vec::new();
    }
    let mut kernel = IntMatrix::zeros(h.rows - rank, m.cols);
    for (k, i) in (rank..h.rows).enumerate() {
        for j in 0..m.cols {
            kernel.set(k, j, u.get(i, j).clone());
        }
    }
    let reduced = hnf(&kernel).h;
    (0..reduced.rows).map(|i| reduced.row(i).to_vec()).collect()
}

/// Row Hermite basis of the lattice spanned by `vectors`, as `i64` rows.
pub fn lattice_basis(vectors: &[Vec<i64>], dim: usize) -> Result<Vec<Vec<i64>>> {
    let h = hnf(&IntMatrix::from_rows(vectors, dim)).h;
    let rows = h.to_i64_rows()?;
    Ok(rows
        .into_iter()
        .filter(|r| r.iter().any(|&x| x != 0))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        let cols = rows.first().map_or(0, |r| r.len());
        let owned: Vec<Vec<i64>> = rows.iter().map(|r| r.to_vec()).collect();
        IntMatrix::from_rows(&owned, cols)
    }

    fn unimodular(u: &IntMatrix) -> bool {
        u.determinant().abs().is_one()
    }

    #[test]
    fn hnf_two_by_two() {
        let a = m(&[&[2, 4], &[1, 3]]);
        let HermiteForm { h, u } = hnf(&a);
        assert_eq!(u.mul(&a), h);
        assert!(unimodular(&u));
        // Reduced form of the row lattice spanned by (1,3),(0,2).
        assert_eq!(h, m(&[&[1, 1], &[0, 2]]));
        assert_eq!(hnf(&m(&[&[1, 3], &[0, 2]])).h, h);
    }

    #[test]
    fn hnf_fixed_points() {
        let id = IntMatrix::identity(3);
        let f = hnf(&id);
        assert_eq!(f.h, id);
        assert_eq!(f.u, id);
        let z = IntMatrix::zeros(2, 3);
        assert_eq!(hnf(&z).h, z);
    }

    #[test]
    fn snf_examples() {
        let a = m(&[&[0, 1], &[3, -1]]);
        let f = snf(&a);
        assert_eq!(f.u.mul(&a).mul(&f.w), f.s);
        assert!(unimodular(&f.u) && unimodular(&f.w));
        assert_eq!(f.s, m(&[&[1, 0], &[0, 3]]));
        assert_eq!(snf(&m(&[&[2, 0], &[0, 2]])).s, m(&[&[2, 0], &[0, 2]]));
        assert_eq!(snf(&m(&[&[1]])).s, m(&[&[1]]));
        // 2 and 3 are coprime: diag(2,3) ~ diag(1,6).
        assert_eq!(snf(&m(&[&[2, 0], &[0, 3]])).s, m(&[&[1, 0], &[0, 6]]));
    }

    #[test]
    fn cokernels() {
        let g = cokernel_structure(&m(&[&[0, 1], &[3, -1]]));
        assert_eq!(g.free_rank, 0);
        assert_eq!(g.invariant_factors, vec![BigInt::from(3)]);
        let g = cokernel_structure(&m(&[&[1, 0], &[0, 1], &[1, 1]]));
        assert_eq!(
            g,
            FinAbGroup {
                free_rank: 1,
                invariant_factors: vec![]
            }
        );
        let g = cokernel_structure(&IntMatrix::zeros(2, 2));
        assert_eq!(g.free_rank, 2);
        assert!(g.invariant_factors.is_empty());
    }

    #[test]
    fn cokernel_rank_one_by_residues() {
        // Z^3 / <(1,0,1),(0,1,1)>: the map (x,y,z) -> z - x - y is an
        // isomorphism onto Z, so residues are classified by one integer.
        let a = m(&[&[1, 0], &[0, 1], &[1, 1]]);
        let mut seen = std::collections::BTreeSet::new();
        for x in -2i64..=2 {
            for y in -2i64..=2 {
                for z in -2i64..=2 {
                    seen.insert(z - x - y);
                }
            }
        }
        assert_eq!(seen.len(), 13);
        assert_eq!(cokernel_structure(&a).free_rank, 1);
    }

    #[test]
    fn solving() {
        let a = m(&[&[1, 0], &[1, 2]]);
        let x = solve_integer(&a, &to_big(&[1, 1])).unwrap().unwrap();
        assert_eq!(x, to_big(&[1, 0]));
        assert_eq!(solve_integer(&m(&[&[2]]), &to_big(&[1])).unwrap(), None);
        let id = IntMatrix::identity(3);
        let b = to_big(&[4, -7, 9]);
        assert_eq!(solve_integer(&id, &b).unwrap().unwrap(), b);
        assert!(matches!(
            solve_integer(&id, &to_big(&[1])),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn kernels() {
        assert_eq!(kernel_basis(&m(&[&[1, 1]])), vec![to_big(&[1, -1])]);
        assert!(kernel_basis(&IntMatrix::identity(2)).is_empty());
        assert_eq!(kernel_basis(&m(&[&[2, 4]])), vec![to_big(&[2, -1])]);
        // No rows: the whole space.
        assert_eq!(kernel_basis(&IntMatrix::zeros(0, 2)).len(), 2);
    }

    #[test]
    fn determinants() {
        assert_eq!(m(&[&[2, 4], &[1, 3]]).determinant(), BigInt::from(2));
        assert_eq!(
            m(&[&[0, 1, 2], &[1, 0, 3], &[4, -3, 8]]).determinant(),
            BigInt::from(-2)
        );
        assert_eq!(IntMatrix::zeros(0, 0).determinant(), BigInt::one());
    }

    #[test]
    fn group_display() {
        assert_eq!(FinAbGroup::trivial().to_string(), "0");
        let g = FinAbGroup {
            free_rank: 1,
            invariant_factors: vec![BigInt::from(3)],
        };
        assert_eq!(g.to_string(), "Z + Z/3");
        assert_eq!(g.order(), None);
    }
}
