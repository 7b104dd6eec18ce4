//! Rational polyhedral cones given by generators: facets (dual
//! description), extreme rays, the face lattice and Hilbert bases.
//!
//! Rays and facet forms are primitive and sorted lexicographically, so the
//! facet order (which indexes every divisor downstream) is reproducible.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::lattice::{hnf, IntMatrix};
use crate::vector::{self, dot, hyperplane_normal, primitive, rank, subsets};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Cone {
    dim_ambient: usize,
    rays: Vec<Vec<i64>>,
    facets: Vec<Vec<i64>>,
    pointed: bool,
}

/// A face of a pointed cone, cut out by the facets in `facet_subset`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Face {
    pub facet_subset: Vec<usize>,
    pub ray_subset: Vec<usize>,
    pub dim: usize,
}

/// Computes facets and extreme rays of the cone spanned by `generators`.
///
/// Each facet hyperplane is spanned by `dim - 1` independent generators,
/// so the candidates are the normals of all such subsets that keep every
/// generator on one side.
pub fn dual_description(generators: &[Vec<i64>], ambient_rank: usize) -> Result<Cone> {
    if generators.is_empty() {
        return Err(Error::EmptyGenerators);
    }
    for g in generators {
        if g.len() != ambient_rank {
            return Err(Error::DimensionMismatch {
                expected: ambient_rank,
                found: g.len(),
            });
        }
    }
    let r = rank(generators);
    if r < ambient_rank {
        return Err(Error::NotFullDimensional {
            rank: r,
            ambient: ambient_rank,
        });
    }
    let d = ambient_rank;
    if d == 0 {
        return Ok(Cone {
            dim_ambient: 0,
            rays: Vec::new(),
            facets: Vec::new(),
            pointed: true,
        });
    }

    let directions: Vec<Vec<i64>> = generators
        .iter()
        .filter(|g| !vector::is_zero(g))
        .map(|g| primitive(g))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();

    let mut facets = BTreeSet::new();
    for subset in subsets(directions.len(), d - 1) {
        let spanning: Vec<Vec<i64>> = subset.iter().map(|&i| directions[i].clone()).collect();
        let normal = hyperplane_normal(&spanning, d);
        if vector::is_zero(&normal) {
            continue;
        }
        let values: Vec<i64> = directions.iter().map(|g| dot(&normal, g)).collect();
        if values.iter().all(|&v| v >= 0) {
            facets.insert(normal);
        } else if values.iter().all(|&v| v <= 0) {
            facets.insert(vector::neg(&normal));
        }
    }
    let facets: Vec<Vec<i64>> = facets.into_iter().collect();
    let pointed = rank(&facets) == d;

    let rays = if pointed {
        directions
            .iter()
            .filter(|g| {
                let tight: Vec<Vec<i64>> =
                    facets.iter().filter(|f| dot(f, g) == 0).cloned().collect();
                rank(&tight) == d - 1
            })
            .cloned()
            .collect()
    } else {
        Vec::new()
    };

    Ok(Cone {
        dim_ambient: d,
        rays,
        facets,
        pointed,
    })
}

impl Cone {
    pub fn dim_ambient(&self) -> usize {
        self.dim_ambient
    }

    /// Extreme rays; empty for cones with a lineality space.
    pub fn rays(&self) -> &[Vec<i64>] {
        &self.rays
    }

    pub fn facets(&self) -> &[Vec<i64>] {
        &self.facets
    }

    pub fn is_pointed(&self) -> bool {
        self.pointed
    }

    pub fn facet_values(&self, z: &[i64]) -> Vec<i64> {
        vector::apply(&self.facets, z)
    }

    pub fn contains(&self, z: &[i64]) -> bool {
        self.facets.iter().all(|f| dot(f, z) >= 0)
    }

    /// Every facet form is strictly positive, i.e. at least one.
    pub fn in_relative_interior(&self, z: &[i64]) -> bool {
        self.facets.iter().all(|f| dot(f, z) >= 1)
    }

    /// Sum of all facet values; positive on nonzero points of a pointed cone.
    pub fn degree(&self, z: &[i64]) -> i64 {
        self.facets.iter().map(|f| dot(f, z)).sum()
    }

    /// All faces, from the cone itself down to the apex.
    pub fn enumerate_faces(&self) -> Result<Vec<Face>> {
        if !self.pointed {
            return Err(Error::NotPointed);
        }
        let on_facet: Vec<BTreeSet<usize>> = self
            .facets
            .iter()
            .map(|f| {
                (0..self.rays.len())
                    .filter(|&i| dot(f, &self.rays[i]) == 0)
                    .collect()
            })
            .collect();
        let full: BTreeSet<usize> = (0..self.rays.len()).collect();
        let mut seen = BTreeSet::from([full.clone()]);
        let mut queue = VecDeque::from([full]);
        while let Some(face) = queue.pop_front() {
            for facet_rays in &on_facet {
                let next: BTreeSet<usize> = face.intersection(facet_rays).copied().collect();
                if seen.insert(next.clone()) {
                    queue.push_back(next);
                }
            }
        }
        let mut faces: Vec<Face> = seen
            .into_iter()
            .map(|rays| self.face_from_rays(rays.into_iter().collect()))
            .collect();
        faces.sort_by(|a, b| b.dim.cmp(&a.dim).then_with(|| a.cmp(b)));
        Ok(faces)
    }

    fn face_from_rays(&self, ray_subset: Vec<usize>) -> Face {
        let rays: Vec<Vec<i64>> = ray_subset.iter().map(|&i| self.rays[i].clone()).collect();
        let facet_subset = (0..self.facets.len())
            .filter(|&k| rays.iter().all(|r| dot(&self.facets[k], r) == 0))
            .collect();
        Face {
            facet_subset,
            dim: rank(&rays),
            ray_subset,
        }
    }

    /// The face on which exactly the facets in `facet_subset` (and those
    /// implied by them) vanish.
    pub fn face_of_facets(&self, facet_subset: &[usize]) -> Face {
        let rays = (0..self.rays.len())
            .filter(|&i| {
                facet_subset
                    .iter()
                    .all(|&k| dot(&self.facets[k], &self.rays[i]) == 0)
            })
            .collect();
        self.face_from_rays(rays)
    }

    /// Minimal generating set of the monoid `cone ∩ Z^d`.
    pub fn hilbert_basis(&self) -> Result<Vec<Vec<i64>>> {
        self.hilbert_basis_with(Strategy::default())
    }

    /// Every lattice point of the cone lies in some simplicial subcone
    /// spanned by `d` independent rays; subtracting rays leaves a point of
    /// its half-open fundamental parallelepiped. Those points and the rays
    /// therefore contain the Hilbert basis, which is then extracted by
    /// discarding candidates that dominate a smaller one.
    pub fn hilbert_basis_with(&self, strategy: Strategy) -> Result<Vec<Vec<i64>>> {
        if !self.pointed {
            return Err(Error::NotPointed);
        }
        let d = self.dim_ambient;
        if d == 0 {
            return Ok(Vec::new());
        }
        let simplices = subsets(self.rays.len(), d);
        let per_simplex = strategy.map(&simplices, |s| {
            let rows: Vec<Vec<i64>> = s.iter().map(|&i| self.rays[i].clone()).collect();
            parallelepiped_points(&rows)
        });
        let mut candidates: BTreeMap<(i64, Vec<i64>), ()> = BTreeMap::new();
        for p in per_simplex
            .into_iter()
            .flatten()
            .chain(self.rays.iter().cloned())
        {
            if !vector::is_zero(&p) {
                candidates.insert((self.degree(&p), p), ());
            }
        }
        let mut basis: Vec<Vec<i64>> = Vec::new();
        for ((_, x), ()) in candidates {
            let reducible = basis.iter().any(|h| self.contains(&vector::sub(&x, h)));
            if !reducible {
                basis.push(x);
            }
        }
        basis.sort();
        Ok(basis)
    }
}

/// Lattice points `Σ λ_i r_i` with `0 <= λ_i < 1` for linearly independent
/// rows `r_i`; empty if the rows are dependent.
fn parallelepiped_points(rows: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let d = rows.len();
    let det = vector::det(rows);
    if det == 0 {
        return Vec::new();
    }
    // Residues of Z^d modulo the row lattice: the box of HNF diagonal sizes.
    let h = hnf(&IntMatrix::from_rows(rows, d)).h;
    let diag: Vec<i64> = h
        .to_i64_rows()
        .expect("HNF of small rays fits in i64")
        .iter()
        .enumerate()
        .map(|(i, r)| r[i])
        .collect();
    let adj = adjugate(rows);
    let (sign, modulus) = if det < 0 { (-1, -det) } else { (1, det) };

    let mut out = Vec::with_capacity(modulus as usize);
    let mut t = vec![0i64; d];
    loop {
        // λ = t · adj / det; keep the fractional parts.
        let frac: Vec<i128> = (0..d)
            .map(|j| {
                let num: i128 = (0..d).map(|i| t[i] as i128 * adj[i][j]).sum();
                (sign * num).rem_euclid(modulus)
            })
            .collect();
        let x: Vec<i64> = (0..d)
            .map(|k| {
                let s: i128 = (0..d).map(|j| frac[j] * rows[j][k] as i128).sum();
                debug_assert_eq!(s % modulus, 0);
                i64::try_from(s / modulus).expect("parallelepiped point exceeds i64")
            })
            .collect();
        out.push(x);

        let mut i = d;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            t[i] += 1;
            if t[i] < diag[i] {
                break;
            }
            t[i] = 0;
        }
    }
}

/// Adjugate of a square matrix: `m · adj(m) = det(m) · I`.
#[allow(clippy::needless_range_loop)]
fn adjugate(m: &[Vec<i64>]) -> Vec<Vec<i128>> {
    let d = m.len();
    let mut adj = vec![vec![0i128; d]; d];
    for i in 0..d {
        for j in 0..d {
            let minor: Vec<Vec<i64>> = m
                .iter()
                .enumerate()
                .filter(|&(r, _)| r != i)
                .map(|(_, row)| {
                    row.iter()
                        .enumerate()
                        .filter(|&(c, _)| c != j)
                        .map(|(_, &x)| x)
                        .collect()
                })
                .collect();
            let c = vector::det(&minor);
            adj[j][i] = if (i + j) % 2 == 0 { c } else { -c };
        }
    }
    adj
}

#[cfg(test)]
mod tests {
    use super::*;

    fn quadric_lattice_gens() -> Vec<Vec<i64>> {
        // (1,1,0,0),(0,0,1,1),(1,0,0,1),(0,1,1,0) written in the basis
        // (1,1,0,0),(0,0,1,1),(1,0,0,1) of the lattice they span.
        vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1], vec![1, 1, -1]]
    }

    #[test]
    fn twisted_cubic_cone() {
        let c = dual_description(&[vec![1, 0], vec![1, 1], vec![1, 2], vec![1, 3]], 2).unwrap();
        assert_eq!(c.rays(), &[vec![1, 0], vec![1, 3]]);
        assert_eq!(c.facets(), &[vec![0, 1], vec![3, -1]]);
        for g in [[1, 0], [1, 1], [1, 2], [1, 3]] {
            assert!(c.contains(&g));
        }
        assert!(!c.in_relative_interior(&[1, 3]));
        assert!(c.in_relative_interior(&[1, 2]));
    }

    #[test]
    fn quadrant() {
        let c = dual_description(&[vec![1, 0], vec![0, 1]], 2).unwrap();
        assert_eq!(c.rays(), &[vec![0, 1], vec![1, 0]]);
        assert_eq!(c.facets(), &[vec![0, 1], vec![1, 0]]);
        assert!(c.in_relative_interior(&[1, 1]));
        assert!(!c.in_relative_interior(&[1, 0]));
        let faces = c.enumerate_faces().unwrap();
        let dims: Vec<usize> = faces.iter().map(|f| f.dim).collect();
        assert_eq!(dims, vec![2, 1, 1, 0]);
    }

    #[test]
    fn cone_over_square() {
        let c = dual_description(&quadric_lattice_gens(), 3).unwrap();
        assert_eq!(c.rays().len(), 4);
        assert_eq!(c.facets().len(), 4);
        let faces = c.enumerate_faces().unwrap();
        assert_eq!(faces.len(), 10);
        let count = |d| faces.iter().filter(|f| f.dim == d).count();
        assert_eq!((count(0), count(1), count(2), count(3)), (1, 4, 4, 1));
    }

    #[test]
    fn face_count_by_facet_subsets() {
        // Brute force: every subset of facets, keep the distinct sets of
        // rays that satisfy them with equality.
        let c = dual_description(&quadric_lattice_gens(), 3).unwrap();
        let n = c.facets().len();
        let mut distinct = BTreeSet::new();
        for mask in 0u32..(1 << n) {
            let subset: Vec<usize> = (0..n).filter(|k| mask & (1 << k) != 0).collect();
            distinct.insert(c.face_of_facets(&subset).ray_subset);
        }
        assert_eq!(distinct.len(), 10);
    }

    #[test]
    fn half_line() {
        let c = dual_description(&[vec![2], vec![3]], 1).unwrap();
        assert_eq!(c.rays(), &[vec![1]]);
        assert_eq!(c.facets(), &[vec![1]]);
        assert_eq!(c.enumerate_faces().unwrap().len(), 2);
        assert_eq!(c.hilbert_basis().unwrap(), vec![vec![1]]);
    }

    #[test]
    fn lineality_is_detected() {
        let c = dual_description(&[vec![1, 0], vec![-1, 0], vec![0, 1]], 2).unwrap();
        assert!(!c.is_pointed());
        assert_eq!(c.facets(), &[vec![0, 1]]);
        assert!(c.enumerate_faces().is_err());
    }

    #[test]
    fn errors() {
        assert_eq!(dual_description(&[], 2), Err(Error::EmptyGenerators));
        assert!(matches!(
            dual_description(&[vec![1, 1], vec![2, 2]], 2),
            Err(Error::NotFullDimensional {
                rank: 1,
                ambient: 2
            })
        ));
    }

    #[test]
    fn hilbert_bases() {
        let c = dual_description(&[vec![1, 0], vec![1, 3]], 2).unwrap();
        assert_eq!(
            c.hilbert_basis().unwrap(),
            vec![vec![1, 0], vec![1, 1], vec![1, 2], vec![1, 3]]
        );
        // Cone spanned by (2,-1) and (0,1) in Z^2: A_1 after a change of basis.
        let c = dual_description(&[vec![2, -1], vec![0, 1]], 2).unwrap();
        assert_eq!(
            c.hilbert_basis().unwrap(),
            vec![vec![0, 1], vec![1, 0], vec![2, -1]]
        );
        let c = dual_description(&quadric_lattice_gens(), 3).unwrap();
        assert_eq!(c.hilbert_basis().unwrap().len(), 4);
    }

    #[test]
    fn parallelepiped_sizes() {
        let pts = parallelepiped_points(&[vec![1, 0], vec![1, 3]]);
        assert_eq!(pts.len(), 3);
        assert!(pts.contains(&vec![0, 0]));
        assert!(pts.contains(&vec![1, 1]));
        assert!(pts.contains(&vec![1, 2]));
    }
}
