//! Small helpers for integer vectors and fixed-size determinants.

use num_integer::Integer;

pub fn dot(a: &[i64], b: &[i64]) -> i64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub(a: &[i64], b: &[i64]) -> Vec<i64> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn neg(a: &[i64]) -> Vec<i64> {
    a.iter().map(|x| -x).collect()
}

pub fn is_zero(a: &[i64]) -> bool {
    a.iter().all(|&x| x == 0)
}

pub fn content(a: &[i64]) -> i64 {
    a.iter().fold(0i64, |g, &x| g.gcd(&x))
}

/// Divides out the content; the zero vector is returned unchanged.
pub fn primitive(a: &[i64]) -> Vec<i64> {
    let g = content(a);
    if g == 0 {
        return a.to_vec();
    }
    a.iter().map(|x| x / g).collect()
}

/// Applies an integer matrix given by rows to a vector.
pub fn apply(rows: &[Vec<i64>], z: &[i64]) -> Vec<i64> {
    rows.iter().map(|r| dot(r, z)).collect()
}

/// Fraction-free (Bareiss) determinant of a square matrix.
pub fn det_i128(m: &[Vec<i128>]) -> i128 {
    let n = m.len();
    if n == 0 {
        return 1;
    }
    let mut a: Vec<Vec<i128>> = m.to_vec();
    let mut sign = 1i128;
    let mut prev = 1i128;
    for k in 0..n - 1 {
        if a[k][k] == 0 {
            let Some(swap) = (k + 1..n).find(|&i| a[i][k] != 0) else {
                return 0;
            };
            a.swap(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
        }
        prev = a[k][k];
    }
    sign * a[n - 1][n - 1]
}

pub fn det(rows: &[Vec<i64>]) -> i128 {
    let m: Vec<Vec<i128>> = rows
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    det_i128(&m)
}

/// Rank of a set of vectors over the rationals.
#[allow(clippy::needless_range_loop)]
pub fn rank(vectors: &[Vec<i64>]) -> usize {
    let Some(first) = vectors.first() else {
        return 0;
    };
    let cols = first.len();
    let mut a: Vec<Vec<i128>> = vectors
        .iter()
        .map(|r| r.iter().map(|&x| x as i128).collect())
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..a.len()).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(rank, p);
        for i in rank + 1..a.len() {
            if a[i][c] != 0 {
                let (f, g) = (a[rank][c], a[i][c]);
                for j in c..cols {
                    a[i][j] = a[i][j] * f - a[rank][j] * g;
                }
                let content = a[i].iter().fold(0i128, |acc, &x| acc.gcd(&x));
                if content > 1 {
                    a[i].iter_mut().for_each(|x| *x /= content);
                }
            }
        }
        rank += 1;
        if rank == a.len() {
            break;
        }
    }
    rank
}

/// Primitive normal vector of the hyperplane spanned by `d - 1` vectors in
/// `Z^d`, via signed maximal minors. Zero when the vectors are dependent.
pub fn hyperplane_normal(vectors: &[Vec<i64>], d: usize) -> Vec<i64> {
    debug_assert_eq!(vectors.len() + 1, d);
    let mut normal = Vec::with_capacity(d);
    for skip in 0..d {
        let minor: Vec<Vec<i64>> = vectors
            .iter()
            .map(|v| {
                v.iter()
                    .enumerate()
                    .filter(|&(j, _)| j != skip)
                    .map(|(_, &x)| x)
                    .collect()
            })
            .collect();
        let m = det(&minor);
        let signed = if skip % 2 == 0 { m } else { -m };
        normal.push(i64::try_from(signed).expect("minor exceeds i64"));
    }
    primitive(&normal)
}

/// All `k`-element subsets of `0..n` in lexicographic order.
pub fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    if k > n {
        return out;
    }
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(idx.clone());
        let mut i = k;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            if idx[i] != i + n - k {
                break;
            }
            if i == 0 {
                return out;
            }
        }
        idx[i] += 1;
        for j in i + 1..k {
            idx[j] = idx[j - 1] + 1;
        }
    }
}
