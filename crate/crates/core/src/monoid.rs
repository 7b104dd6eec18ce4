//! Affine monoids: construction, unit splitting, saturation, dimension
//! and the prime spectrum.
//!
//! A monoid is given by generators in `Z^l`. All cone and ideal data is
//! expressed in coordinates of its group `Q^gp`, using the Hermite basis
//! of the lattice spanned by the generators. Saturation is relative to
//! that group.

use std::collections::HashSet;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::cone::{dual_description, Cone, Face};
use crate::error::{Error, Result};
use crate::lattice::{cokernel_structure, kernel_basis, lattice_basis, snf, to_i64, IntMatrix};
use crate::vector::{self, dot};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AffineMonoid {
    ambient_rank: usize,
    generators: Vec<Vec<i64>>,
    gp_basis: Vec<Vec<i64>>,
    pivots: Vec<usize>,
    generators_gp: Vec<Vec<i64>>,
    units_basis: Vec<Vec<i64>>,
    cone: Cone,
    sharp: bool,
    saturated: bool,
    hilbert_basis: Option<Vec<Vec<i64>>>,
}

/// A prime ideal `Q \ F` for a face `F` of the cone.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PrimeIdeal {
    pub face: Face,
    pub height: usize,
}

impl PrimeIdeal {
    /// Membership of an element of `Q` (in group coordinates): it lies in
    /// the prime iff it is off the face.
    pub fn contains(&self, monoid: &AffineMonoid, z: &[i64]) -> bool {
        self.face
            .facet_subset
            .iter()
            .any(|&k| dot(&monoid.cone.facets()[k], z) > 0)
    }
}

impl AffineMonoid {
    pub fn build(generators: &[Vec<i64>], ambient_rank: usize) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        if let Some(g) = generators.iter().find(|g| g.len() != ambient_rank) {
            return Err(Error::DimensionMismatch {
                expected: ambient_rank,
                found: g.len(),
            });
        }
        let gp_basis = lattice_basis(generators, ambient_rank)?;
        let pivots = gp_basis
            .iter()
            .map(|row| {
                row.iter()
                    .position(|&x| x != 0)
                    .expect("basis rows are nonzero")
            })
            .collect();
        let mut monoid = AffineMonoid {
            ambient_rank,
            generators: generators.to_vec(),
            gp_basis,
            pivots,
            generators_gp: Vec::new(),
            units_basis: Vec::new(),
            cone: dual_description(&[vec![]], 0)?,
            sharp: true,
            saturated: true,
            hilbert_basis: None,
        };
        monoid.generators_gp = generators
            .iter()
            .map(|g| monoid.to_gp(g))
            .collect::<Result<_>>()?;
        let d = monoid.rank();
        monoid.cone = dual_description(&monoid.generators_gp, d)?;

        let unit_generators: Vec<Vec<i64>> = monoid
            .generators_gp
            .iter()
            .filter(|g| !vector::is_zero(g) && monoid.cone.facet_values(g).iter().all(|&v| v == 0))
            .cloned()
            .collect();
        monoid.units_basis = lattice_basis(&unit_generators, d)?;
        monoid.sharp = monoid.units_basis.is_empty();

        if monoid.sharp {
            let basis = monoid.cone.hilbert_basis()?;
            monoid.saturated = basis
                .iter()
                .all(|h| member_by_generators(&monoid.generators_gp, &monoid.cone, h));
            monoid.hilbert_basis = monoid.saturated.then_some(basis);
        } else {
            let units = IntMatrix::from_rows(&monoid.units_basis, d).transpose();
            let torsion_free = cokernel_structure(&units).invariant_factors.is_empty();
            monoid.saturated = torsion_free && monoid.split_units()?.0.saturated;
        }
        Ok(monoid)
    }

    /// The saturated monoid `cone ∩ Z^l` for a full-dimensional pointed cone.
    pub fn normal_from_rays(rays: &[Vec<i64>], ambient_rank: usize) -> Result<Self> {
        let cone = dual_description(rays, ambient_rank)?;
        let basis = cone.hilbert_basis()?;
        if basis.is_empty() {
            return Self::build(&[vec![0; ambient_rank]], ambient_rank);
        }
        Self::build(&basis, ambient_rank)
    }

    pub fn ambient_rank(&self) -> usize {
        self.ambient_rank
    }

    pub fn generators(&self) -> &[Vec<i64>] {
        &self.generators
    }

    /// Basis of `Q^gp` inside `Z^l`, one row per basis vector.
    pub fn gp_basis(&self) -> &[Vec<i64>] {
        &self.gp_basis
    }

    /// Rank of `Q^gp`.
    pub fn rank(&self) -> usize {
        self.gp_basis.len()
    }

    pub fn generators_gp(&self) -> &[Vec<i64>] {
        &self.generators_gp
    }

    /// Basis of the unit group, in group coordinates.
    pub fn units_basis(&self) -> &[Vec<i64>] {
        &self.units_basis
    }

    pub fn unit_rank(&self) -> usize {
        self.units_basis.len()
    }

    /// The cone of the monoid in group coordinates.
    pub fn cone(&self) -> &Cone {
        &self.cone
    }

    pub fn facets(&self) -> &[Vec<i64>] {
        self.cone.facets()
    }

    pub fn is_sharp(&self) -> bool {
        self.sharp
    }

    pub fn is_saturated(&self) -> bool {
        self.saturated
    }

    /// Minimal generating set in group coordinates, present for sharp
    /// saturated monoids.
    pub fn hilbert_basis(&self) -> Option<&[Vec<i64>]> {
        self.hilbert_basis.as_deref()
    }

    /// Sum of the facet values of `z`.
    pub fn degree(&self, z: &[i64]) -> i64 {
        self.cone.degree(z)
    }

    /// Coordinates of an ambient vector in the basis of `Q^gp`.
    pub fn to_gp(&self, z: &[i64]) -> Result<Vec<i64>> {
        if z.len() != self.ambient_rank {
            return Err(Error::DimensionMismatch {
                expected: self.ambient_rank,
                found: z.len(),
            });
        }
        let mut residual = z.to_vec();
        let mut coords = Vec::with_capacity(self.rank());
        for (row, &p) in self.gp_basis.iter().zip(&self.pivots) {
            let (c, r) = residual[p].div_rem(&row[p]);
            if r != 0 {
                return Err(Error::NotInLattice(z.to_vec()));
            }
            for (x, b) in residual.iter_mut().zip(row) {
                *x -= c * b;
            }
            coords.push(c);
        }
        if !vector::is_zero(&residual) {
            return Err(Error::NotInLattice(z.to_vec()));
        }
        Ok(coords)
    }

    pub fn to_ambient(&self, coords: &[i64]) -> Vec<i64> {
        debug_assert_eq!(coords.len(), self.rank());
        let mut z = vec![0; self.ambient_rank];
        for (c, row) in coords.iter().zip(&self.gp_basis) {
            for (x, b) in z.iter_mut().zip(row) {
                *x += c * b;
            }
        }
        z
    }

    /// Membership of a group element. Requires a sharp monoid; saturated
    /// monoids use the facet test, others a degree-bounded search over sums
    /// of generators.
    pub fn contains(&self, z: &[i64]) -> Result<bool> {
        if !self.sharp {
            return Err(Error::NotSharp);
        }
        if self.saturated {
            return Ok(self.cone.contains(z));
        }
        Ok(member_by_generators(&self.generators_gp, &self.cone, z))
    }

    fn require_sharp(&self) -> Result<()> {
        if self.sharp {
            Ok(())
        } else {
            Err(Error::NotSharp)
        }
    }

    pub(crate) fn require_normal(&self) -> Result<()> {
        self.require_sharp()?;
        if self.saturated {
            Ok(())
        } else {
            Err(Error::NotSaturated)
        }
    }

    /// Image of the monoid in `Q^gp / Q^×` (modulo the saturation of the
    /// unit lattice, which is `Q^×` itself whenever that quotient is torsion
    /// free), together with the rank of the unit group.
    pub fn split_units(&self) -> Result<(AffineMonoid, usize)> {
        if self.sharp {
            return Ok((self.clone(), 0));
        }
        let d = self.rank();
        let facets = IntMatrix::from_rows(self.cone.facets(), d);
        let lineality: Vec<Vec<i64>> = kernel_basis(&facets)
            .iter()
            .map(|v| to_i64(v))
            .collect::<Result<_>>()?;
        let k = lineality.len();
        // U N W = [I 0], so x -> (x W)[k..] kills exactly the lineality lattice.
        let w = snf(&IntMatrix::from_rows(&lineality, d)).w.to_i64_rows()?;
        let project = |x: &[i64]| -> Vec<i64> {
            (k..d)
                .map(|j| (0..d).map(|i| x[i] * w[i][j]).sum())
                .collect()
        };
        let images: Vec<Vec<i64>> = self.generators_gp.iter().map(|g| project(g)).collect();
        Ok((AffineMonoid::build(&images, d - k)?, self.unit_rank()))
    }

    /// The root closure `cone(Q) ∩ Q^gp`, in the same ambient coordinates.
    pub fn saturate(&self) -> Result<AffineMonoid> {
        self.require_sharp()?;
        if self.saturated {
            return Ok(self.clone());
        }
        let basis = self.cone.hilbert_basis()?;
        let ambient: Vec<Vec<i64>> = basis.iter().map(|h| self.to_ambient(h)).collect();
        AffineMonoid::build(&ambient, self.ambient_rank)
    }

    /// Krull dimension, which for sharp monoids is the rank of `Q^gp`.
    pub fn dimension(&self) -> Result<usize> {
        self.require_sharp()?;
        Ok(self.rank())
    }

    /// One prime per face of the cone, starting with the empty prime.
    pub fn spectrum(&self) -> Result<Vec<PrimeIdeal>> {
        self.require_normal()?;
        let d = self.rank();
        Ok(self
            .cone
            .enumerate_faces()?
            .into_iter()
            .map(|face| PrimeIdeal {
                height: d - face.dim,
                face,
            })
            .collect())
    }

    /// Height one primes in facet order; this order indexes divisors.
    pub fn height_one_primes(&self) -> Result<Vec<PrimeIdeal>> {
        self.require_normal()?;
        let d = self.rank();
        Ok((0..self.cone.facets().len())
            .map(|k| {
                let face = self.cone.face_of_facets(&[k]);
                debug_assert_eq!(face.dim + 1, d);
                PrimeIdeal {
                    height: d - face.dim,
                    face,
                }
            })
            .collect())
    }
}

/// Decides `z ∈ ⟨generators⟩` for a pointed cone by searching backwards
/// from `z`; each step lowers the degree, so the search is finite.
fn member_by_generators(generators: &[Vec<i64>], cone: &Cone, z: &[i64]) -> bool {
    if !cone.contains(z) {
        return false;
    }
    let steps: Vec<&Vec<i64>> = generators.iter().filter(|g| !vector::is_zero(g)).collect();
    let mut stack = vec![z.to_vec()];
    let mut visited: HashSet<Vec<i64>> = HashSet::from([z.to_vec()]);
    while let Some(x) = stack.pop() {
        if vector::is_zero(&x) {
            return true;
        }
        for g in &steps {
            let y = vector::sub(&x, g);
            if cone.contains(&y) && visited.insert(y.clone()) {
                stack.push(y);
            }
        }
    }
    false
}

/// Length of the longest strictly increasing chain of primes, computed
/// from face inclusions alone.
pub fn max_chain_length(spectrum: &[PrimeIdeal]) -> usize {
    let mut order: Vec<&PrimeIdeal> = spectrum.iter().collect();
    // Larger faces (smaller primes) first.
    order.sort_by_key(|p| std::cmp::Reverse(p.face.ray_subset.len()));
    let mut best = vec![0usize; order.len()];
    for i in 0..order.len() {
        for j in 0..i {
            let (big, small) = (&order[j].face.ray_subset, &order[i].face.ray_subset);
            let strictly_inside = small.len() < big.len() && small.iter().all(|r| big.contains(r));
            if strictly_inside {
                best[i] = best[i].max(best[j] + 1);
            }
        }
    }
    best.into_iter().max().unwrap_or(0)
}

/// The named families of monoids.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StandardMonoid {
    /// Generated by `(n+1,0), (1,1), (0,n+1)`.
    An(i64),
    /// Generated by `(n,0), (0,n)` and `(i, i*m mod n)` for `0 < i < n`.
    Jungian { n: i64, m: i64 },
    /// `N^r`.
    Free(i64),
    /// Generated by `(1,1,0,0), (0,0,1,1), (1,0,0,1), (0,1,1,0)`.
    Quadric,
    /// Generated by `(1,0), (1,1), (1,2), (1,3)`.
    Twisted,
}

impl StandardMonoid {
    pub fn parse(kind: &str, params: &[i64]) -> Result<Self> {
        let invalid = |reason: &str| Error::InvalidParameters {
            kind: kind.to_string(),
            reason: reason.to_string(),
        };
        let arity = |n: usize| {
            if params.len() == n {
                Ok(())
            } else {
                Err(invalid(&format!(
                    "expected {n} parameter(s), got {}",
                    params.len()
                )))
            }
        };
        let monoid = match kind {
            "a_n" | "an" => {
                arity(1)?;
                if params[0] < 1 {
                    return Err(invalid("n must be at least 1"));
                }
                StandardMonoid::An(params[0])
            }
            "jungian" => {
                arity(2)?;
                let (n, m) = (params[0], params[1]);
                if n < 1 || m < 0 || m > n {
                    return Err(invalid("need 0 <= m <= n and n >= 1"));
                }
                if n.gcd(&m) != 1 {
                    return Err(invalid("m and n must be coprime"));
                }
                StandardMonoid::Jungian { n, m }
            }
            "free" => {
                arity(1)?;
                if params[0] < 0 {
                    return Err(invalid("rank must be nonnegative"));
                }
                StandardMonoid::Free(params[0])
            }
            "quadric" => {
                arity(0)?;
                StandardMonoid::Quadric
            }
            "twisted" => {
                arity(0)?;
                StandardMonoid::Twisted
            }
            other => return Err(Error::UnknownKind(other.to_string())),
        };
        Ok(monoid)
    }

    pub fn name(&self) -> String {
        match self {
            StandardMonoid::An(n) => format!("a_{n}"),
            StandardMonoid::Jungian { n, m } => format!("jungian({n},{m})"),
            StandardMonoid::Free(r) => format!("free({r})"),
            StandardMonoid::Quadric => "quadric".to_string(),
            StandardMonoid::Twisted => "twisted".to_string(),
        }
    }

    /// Generators and ambient rank.
    pub fn generators(&self) -> (Vec<Vec<i64>>, usize) {
        match *self {
            StandardMonoid::An(n) => (vec![vec![n + 1, 0], vec![1, 1], vec![0, n + 1]], 2),
            StandardMonoid::Jungian { n, m } => {
                let mut gens = vec![vec![n, 0], vec![0, n]];
                gens.extend((1..n).map(|i| vec![i, (i * m).rem_euclid(n)]));
                (gens, 2)
            }
            StandardMonoid::Free(r) => {
                let r = r as usize;
                if r == 0 {
                    return (vec![vec![]], 0);
                }
                let gens = (0..r)
                    .map(|i| (0..r).map(|j| i64::from(i == j)).collect())
                    .collect();
                (gens, r)
            }
            StandardMonoid::Quadric => (
                vec![
                    vec![1, 1, 0, 0],
                    vec![0, 0, 1, 1],
                    vec![1, 0, 0, 1],
                    vec![0, 1, 1, 0],
                ],
                4,
            ),
            StandardMonoid::Twisted => (vec![vec![1, 0], vec![1, 1], vec![1, 2], vec![1, 3]], 2),
        }
    }

    pub fn build(&self) -> Result<AffineMonoid> {
        let (gens, l) = self.generators();
        AffineMonoid::build(&gens, l)
    }
}

pub fn standard_monoid(kind: &str, params: &[i64]) -> Result<AffineMonoid> {
    StandardMonoid::parse(kind, params)?.build()
}

/// On-disk description of a monoid.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonoidFile {
    pub name: String,
    pub ambient_rank: usize,
    pub generators: Vec<Vec<i64>>,
}

impl MonoidFile {
    pub fn build(&self) -> Result<AffineMonoid> {
        AffineMonoid::build(&self.generators, self.ambient_rank)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gens(v: &[&[i64]]) -> Vec<Vec<i64>> {
        v.iter().map(|g| g.to_vec()).collect()
    }

    #[test]
    fn twisted_cubic() {
        let q = AffineMonoid::build(&gens(&[&[1, 0], &[1, 1], &[1, 2], &[1, 3]]), 2).unwrap();
        assert_eq!(q.rank(), 2);
        assert!(q.is_sharp() && q.is_saturated());
        let hb: Vec<Vec<i64>> = q
            .hilbert_basis()
            .unwrap()
            .iter()
            .map(|h| q.to_ambient(h))
            .collect();
        let mut expected = q.generators().to_vec();
        expected.sort();
        let mut hb_sorted = hb.clone();
        hb_sorted.sort();
        assert_eq!(hb_sorted, expected);
        assert_eq!(q.dimension().unwrap(), 2);
    }

    #[test]
    fn missing_middle_generator() {
        let q = AffineMonoid::build(&gens(&[&[1, 0], &[1, 1], &[1, 3]]), 2).unwrap();
        assert!(q.is_sharp());
        assert!(!q.is_saturated());
        assert!(q.hilbert_basis().is_none());
        let (x, y) = (q.to_gp(&[1, 2]).unwrap(), q.to_gp(&[2, 4]).unwrap());
        assert!(!q.contains(&x).unwrap());
        assert!(q.contains(&y).unwrap());
        let sat = q.saturate().unwrap();
        assert!(sat.is_saturated());
        let mut hb: Vec<Vec<i64>> = sat
            .hilbert_basis()
            .unwrap()
            .iter()
            .map(|h| sat.to_ambient(h))
            .collect();
        hb.sort();
        assert_eq!(hb, gens(&[&[1, 0], &[1, 1], &[1, 2], &[1, 3]]));
        assert_eq!(sat.saturate().unwrap(), sat);
    }

    #[test]
    fn numerical_semigroup_saturates_to_n() {
        let q = AffineMonoid::build(&gens(&[&[2], &[3]]), 1).unwrap();
        assert!(!q.is_saturated());
        let sat = q.saturate().unwrap();
        assert_eq!(sat.hilbert_basis().unwrap(), &[vec![1]]);
    }

    #[test]
    fn a_n_is_saturated_in_its_own_group() {
        let q = standard_monoid("a_n", &[2]).unwrap();
        assert!(q.is_saturated());
        assert_eq!(q.saturate().unwrap(), q);
        assert_eq!(q.hilbert_basis().unwrap().len(), 3);
    }

    #[test]
    fn units() {
        let q = AffineMonoid::build(&gens(&[&[1, 0], &[-1, 0], &[0, 1]]), 2).unwrap();
        assert!(!q.is_sharp());
        assert_eq!(q.unit_rank(), 1);
        assert!(q.is_saturated());
        let (sharp, r) = q.split_units().unwrap();
        assert_eq!(r, 1);
        assert!(sharp.is_sharp());
        assert_eq!(sharp.rank(), 1);
        assert_eq!(sharp.hilbert_basis().unwrap(), &[vec![1]]);

        let q = AffineMonoid::build(&gens(&[&[1, 1], &[-1, -1], &[1, 0]]), 2).unwrap();
        let (sharp, r) = q.split_units().unwrap();
        assert_eq!((sharp.rank(), r), (1, 1));
        assert!(sharp.is_sharp() && sharp.is_saturated());

        let n2 = standard_monoid("free", &[2]).unwrap();
        assert_eq!(n2.split_units().unwrap(), (n2.clone(), 0));
    }

    #[test]
    fn non_saturated_unit_lattice() {
        // Units 2Z x 0 inside the group Z^2: (1,0) is a root of a unit.
        let q = AffineMonoid::build(&gens(&[&[2, 0], &[-2, 0], &[0, 1], &[1, 1]]), 2).unwrap();
        assert!(!q.is_sharp());
        assert!(!q.is_saturated());
    }

    #[test]
    fn group_coordinates() {
        let q = standard_monoid("a_n", &[2]).unwrap();
        assert_eq!(q.gp_basis(), &[vec![1, 1], vec![0, 3]]);
        assert_eq!(q.to_gp(&[3, 0]).unwrap(), vec![3, -1]);
        assert_eq!(q.to_ambient(&[3, -1]), vec![3, 0]);
        assert!(matches!(q.to_gp(&[1, 0]), Err(Error::NotInLattice(_))));
    }

    #[test]
    fn spectra() {
        let n2 = standard_monoid("free", &[2]).unwrap();
        let spec = n2.spectrum().unwrap();
        let mut heights: Vec<usize> = spec.iter().map(|p| p.height).collect();
        heights.sort();
        assert_eq!(heights, vec![0, 1, 1, 2]);
        assert_eq!(max_chain_length(&spec), 2);

        let quadric = standard_monoid("quadric", &[]).unwrap();
        assert_eq!(quadric.dimension().unwrap(), 3);
        let spec = quadric.spectrum().unwrap();
        assert_eq!(spec.len(), 10);
        assert_eq!(max_chain_length(&spec), 3);
        assert_eq!(quadric.height_one_primes().unwrap().len(), 4);

        let n1 = standard_monoid("free", &[1]).unwrap();
        assert_eq!(n1.spectrum().unwrap().len(), 2);
        assert_eq!(
            standard_monoid("twisted", &[])
                .unwrap()
                .height_one_primes()
                .unwrap()
                .len(),
            2
        );
    }

    #[test]
    fn primes_are_ideals_and_prime() {
        let q = standard_monoid("twisted", &[]).unwrap();
        let elements: Vec<Vec<i64>> = (0..4)
            .flat_map(|x| (0..=3 * x).map(move |y| vec![x, y]))
            .collect();
        for p in q.spectrum().unwrap() {
            for a in &elements {
                for b in &elements {
                    let sum = vector::add(a, b);
                    if p.contains(&q, a) {
                        assert!(p.contains(&q, &sum));
                    }
                    if p.contains(&q, &sum) {
                        assert!(p.contains(&q, a) || p.contains(&q, b));
                    }
                }
            }
        }
    }

    #[test]
    fn standard_constructors() {
        let (g, _) = StandardMonoid::parse("jungian", &[3, 2])
            .unwrap()
            .generators();
        assert_eq!(g, gens(&[&[3, 0], &[0, 3], &[1, 2], &[2, 1]]));
        assert!(standard_monoid("jungian", &[3, 2]).unwrap().is_saturated());
        let (g, _) = StandardMonoid::parse("a_n", &[1]).unwrap().generators();
        assert_eq!(g, gens(&[&[2, 0], &[1, 1], &[0, 2]]));
        let n2 = standard_monoid("free", &[2]).unwrap();
        assert_eq!(n2.rank(), 2);
        assert!(n2.is_saturated());
        let n0 = standard_monoid("free", &[0]).unwrap();
        assert_eq!(n0.rank(), 0);
        assert_eq!(n0.spectrum().unwrap().len(), 1);

        assert!(matches!(
            standard_monoid("a_n", &[0]),
            Err(Error::InvalidParameters { .. })
        ));
        assert!(matches!(
            standard_monoid("jungian", &[4, 2]),
            Err(Error::InvalidParameters { .. })
        ));
        assert!(matches!(
            standard_monoid("jungian", &[3, 4]),
            Err(Error::InvalidParameters { .. })
        ));
        assert!(matches!(
            standard_monoid("free", &[-1]),
            Err(Error::InvalidParameters { .. })
        ));
        assert!(matches!(
            standard_monoid("cubic", &[]),
            Err(Error::UnknownKind(_))
        ));
    }

    #[test]
    fn build_errors() {
        assert_eq!(AffineMonoid::build(&[], 2), Err(Error::EmptyGenerators));
        assert!(matches!(
            AffineMonoid::build(&gens(&[&[1, 0], &[1]]), 2),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn monoid_file_round_trip() {
        let json = r#"{ "name": "t", "ambient_rank": 2, "generators": [[1,0],[1,1],[1,2],[1,3]] }"#;
        let file: MonoidFile = serde_json::from_str(json).unwrap();
        assert_eq!(
            file.build().unwrap(),
            standard_monoid("twisted", &[]).unwrap()
        );
    }
}
