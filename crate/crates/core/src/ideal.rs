//! Fractional ideals of a sharp saturated affine monoid.
//!
//! For such a monoid `Q = {z : v_i(z) >= 0}`, where the `v_i` are the
//! primitive facet forms. A principal ideal `s + Q` is `{z : v(z) >= v(s)}`,
//! and divisorial ideals are exactly the sets `I(n) = {z : v(z) >= n}`.
//! Star closure and inverse therefore reduce to componentwise envelopes of
//! generator valuations; colon and intersection are computed from
//! generator pairs and never rely on those envelopes.
//!
//! Ideals are stored by their minimal generators (pairwise incomparable
//! under `x <= y ⟺ y - x ∈ Q`), sorted lexicographically, so structural
//! equality is ideal equality.

use std::collections::BTreeSet;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::monoid::AffineMonoid;
use crate::polytope::{lattice_points, HalfSpace};
use crate::vector::{self, dot, subsets};

/// Facet valuations of a group element, in facet order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ValuationVector(pub Vec<i64>);

impl ValuationVector {
    pub fn as_slice(&self) -> &[i64] {
        &self.0
    }
}

#[derive(Clone, Debug)]
pub struct MonoidIdeal {
    parent: Arc<AffineMonoid>,
    gens: Vec<Vec<i64>>,
}

impl PartialEq for MonoidIdeal {
    fn eq(&self, other: &Self) -> bool {
        same_parent(&self.parent, &other.parent) && self.gens == other.gens
    }
}

impl Eq for MonoidIdeal {}

fn same_parent(a: &Arc<AffineMonoid>, b: &Arc<AffineMonoid>) -> bool {
    Arc::ptr_eq(a, b) || a == b
}

/// On-disk ideal: generators in the ambient coordinates of the parent.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdealFile {
    pub generators: Vec<Vec<i64>>,
}

pub fn valuations(q: &AffineMonoid, z: &[i64]) -> Result<ValuationVector> {
    if z.len() != q.rank() {
        return Err(Error::DimensionMismatch {
            expected: q.rank(),
            found: z.len(),
        });
    }
    Ok(ValuationVector(q.cone().facet_values(z)))
}

/// Minimal generators of `I(n) = {z : v_i(z) >= n_i}`.
///
/// A minimal generator is a vertex-hull point plus a point of a half-open
/// parallelepiped over independent rays (otherwise a ray could be
/// subtracted), which bounds each valuation by the largest vertex value
/// plus the sum of the `d` largest ray values. The lattice points of that
/// bounded region are filtered down to the minimal ones.
pub fn divisorial_generators(
    q: &Arc<AffineMonoid>,
    bounds: &ValuationVector,
) -> Result<MonoidIdeal> {
    q.require_normal()?;
    let facets = q.facets();
    let d = q.rank();
    if bounds.0.len() != facets.len() {
        return Err(Error::DimensionMismatch {
            expected: facets.len(),
            found: bounds.0.len(),
        });
    }
    let upper = valuation_upper_bounds(q, &bounds.0);
    let mut constraints = Vec::with_capacity(2 * facets.len());
    for ((f, &lo), &hi) in facets.iter().zip(&bounds.0).zip(&upper) {
        constraints.push(HalfSpace::new(f.clone(), lo));
        constraints.push(HalfSpace::new(vector::neg(f), -hi));
    }
    let candidates = lattice_points(&constraints, d);
    let gens = minimal_elements(q, candidates);
    debug_assert!(!gens.is_empty());
    Ok(MonoidIdeal {
        parent: Arc::clone(q),
        gens,
    })
}

fn valuation_upper_bounds(q: &AffineMonoid, bounds: &[i64]) -> Vec<i64> {
    let facets = q.facets();
    let d = q.rank();
    let rays = q.cone().rays();
    // Largest value of each facet form over the vertices of {v >= n}.
    let mut vertex_max: Vec<Option<i128>> = vec![None; facets.len()];
    for subset in subsets(facets.len(), d) {
        let a: Vec<Vec<i64>> = subset.iter().map(|&k| facets[k].clone()).collect();
        let den = vector::det(&a);
        if den == 0 {
            continue;
        }
        let num: Vec<i128> = (0..d)
            .map(|j| {
                let mut aj = a.clone();
                for (row, &k) in aj.iter_mut().zip(&subset) {
                    row[j] = bounds[k];
                }
                vector::det(&aj)
            })
            .collect();
        let (num, den) = if den < 0 {
            (num.iter().map(|x| -x).collect::<Vec<_>>(), -den)
        } else {
            (num, den)
        };
        let values: Vec<i128> = facets
            .iter()
            .map(|f| f.iter().zip(&num).map(|(&c, x)| c as i128 * x).sum())
            .collect();
        if values
            .iter()
            .zip(bounds)
            .any(|(&v, &b)| v < b as i128 * den)
        {
            continue;
        }
        for (m, v) in vertex_max.iter_mut().zip(values) {
            let ceil = num_integer::Integer::div_ceil(&v, &den);
            *m = Some(m.map_or(ceil, |x| x.max(ceil)));
        }
    }
    facets
        .iter()
        .zip(vertex_max)
        .map(|(f, vmax)| {
            let mut ray_values: Vec<i64> = rays.iter().map(|r| dot(f, r)).collect();
            ray_values.sort_unstable_by(|a, b| b.cmp(a));
            let spread: i64 = ray_values.iter().take(d).sum();
            i64::try_from(vmax.expect("polyhedron {v >= n} has a vertex"))
                .expect("vertex value exceeds i64")
                + spread
        })
        .collect()
}

/// Elements of `points` not above any other element, sorted lexicographically.
fn minimal_elements(q: &AffineMonoid, points: impl IntoIterator<Item = Vec<i64>>) -> Vec<Vec<i64>> {
    let cone = q.cone();
    let by_degree: BTreeSet<(i64, Vec<i64>)> =
        points.into_iter().map(|p| (cone.degree(&p), p)).collect();
    let mut kept: Vec<Vec<i64>> = Vec::new();
    for (_, p) in by_degree {
        if !kept.iter().any(|k| cone.contains(&vector::sub(&p, k))) {
            kept.push(p);
        }
    }
    kept.sort();
    kept
}

fn componentwise(vals: impl Iterator<Item = Vec<i64>>, pick: fn(i64, i64) -> i64) -> Vec<i64> {
    vals.reduce(|a, b| a.iter().zip(&b).map(|(&x, &y)| pick(x, y)).collect())
        .expect("ideals have generators")
}

impl MonoidIdeal {
    /// Ideal generated by `gens` (group coordinates) over a sharp saturated
    /// parent. Generators are reduced to the minimal ones.
    pub fn new(parent: &Arc<AffineMonoid>, gens: Vec<Vec<i64>>) -> Result<Self> {
        parent.require_normal()?;
        if gens.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        if let Some(g) = gens.iter().find(|g| g.len() != parent.rank()) {
            return Err(Error::DimensionMismatch {
                expected: parent.rank(),
                found: g.len(),
            });
        }
        let gens = minimal_elements(parent, gens);
        Ok(MonoidIdeal {
            parent: Arc::clone(parent),
            gens,
        })
    }

    pub fn from_ambient(parent: &Arc<AffineMonoid>, gens: &[Vec<i64>]) -> Result<Self> {
        let gp = gens
            .iter()
            .map(|g| parent.to_gp(g))
            .collect::<Result<Vec<_>>>()?;
        Self::new(parent, gp)
    }

    pub fn from_file(parent: &Arc<AffineMonoid>, file: &IdealFile) -> Result<Self> {
        Self::from_ambient(parent, &file.generators)
    }

    /// `a + Q`.
    pub fn principal(parent: &Arc<AffineMonoid>, a: Vec<i64>) -> Result<Self> {
        Self::new(parent, vec![a])
    }

    /// `Q` itself, generated by `0`.
    pub fn unit(parent: &Arc<AffineMonoid>) -> Result<Self> {
        Self::new(parent, vec![vec![0; parent.rank()]])
    }

    /// The ideal `Q^+` of non-units.
    pub fn maximal(parent: &Arc<AffineMonoid>) -> Result<Self> {
        parent.require_normal()?;
        let hb = parent
            .hilbert_basis()
            .expect("normal monoids carry a Hilbert basis");
        if hb.is_empty() {
            return Err(Error::EmptyIdeal);
        }
        Self::new(parent, hb.to_vec())
    }

    pub fn parent(&self) -> &Arc<AffineMonoid> {
        &self.parent
    }

    /// Minimal generators in group coordinates.
    pub fn generators(&self) -> &[Vec<i64>] {
        &self.gens
    }

    pub fn generators_ambient(&self) -> Vec<Vec<i64>> {
        self.gens
            .iter()
            .map(|g| self.parent.to_ambient(g))
            .collect()
    }

    fn check_parent(&self, other: &MonoidIdeal) -> Result<()> {
        if same_parent(&self.parent, &other.parent) {
            Ok(())
        } else {
            Err(Error::ParentMismatch)
        }
    }

    fn generator_valuations(&self) -> impl Iterator<Item = Vec<i64>> + '_ {
        self.gens.iter().map(|g| self.parent.cone().facet_values(g))
    }

    pub fn contains(&self, z: &[i64]) -> bool {
        let cone = self.parent.cone();
        self.gens.iter().any(|s| cone.contains(&vector::sub(z, s)))
    }

    pub fn is_subset_of(&self, other: &MonoidIdeal) -> bool {
        self.gens.iter().all(|g| other.contains(g))
    }

    /// `a + I`.
    pub fn shift(&self, a: &[i64]) -> MonoidIdeal {
        MonoidIdeal {
            parent: Arc::clone(&self.parent),
            gens: self.gens.iter().map(|g| vector::add(g, a)).collect(),
        }
    }

    /// Ideal generated by the generators of both ideals.
    pub fn sum(&self, other: &MonoidIdeal) -> Result<MonoidIdeal> {
        self.check_parent(other)?;
        let gens = self.gens.iter().chain(&other.gens).cloned().collect();
        MonoidIdeal::new(&self.parent, gens)
    }

    pub fn product(&self, other: &MonoidIdeal) -> Result<MonoidIdeal> {
        self.check_parent(other)?;
        let sums = self
            .gens
            .iter()
            .flat_map(|a| other.gens.iter().map(move |b| vector::add(a, b)))
            .collect();
        MonoidIdeal::new(&self.parent, sums)
    }

    /// `(s + Q) ∩ (t + Q) = I(max(v(s), v(t)))`, unioned over generator pairs.
    pub fn intersect(&self, other: &MonoidIdeal) -> Result<MonoidIdeal> {
        self.check_parent(other)?;
        let cone = self.parent.cone();
        let mut gens = Vec::new();
        for s in &self.gens {
            for t in &other.gens {
                let bound = componentwise(
                    [cone.facet_values(s), cone.facet_values(t)].into_iter(),
                    i64::max,
                );
                let piece = divisorial_generators(&self.parent, &ValuationVector(bound))?;
                gens.extend(piece.gens);
            }
        }
        let result = MonoidIdeal::new(&self.parent, gens)?;
        debug_assert!(result.is_subset_of(self) && result.is_subset_of(other));
        Ok(result)
    }

    /// `(I : J) = ⋂_{t ∈ gens(J)} (-t + I)`.
    pub fn colon(&self, other: &MonoidIdeal) -> Result<MonoidIdeal> {
        self.check_parent(other)?;
        let mut shifted = other.gens.iter().map(|t| self.shift(&vector::neg(t)));
        let first = shifted.next().expect("ideals have generators");
        shifted.try_fold(first, |acc, next| acc.intersect(&next))
    }

    /// `(Q : I) = {z : v(z) >= -min_s v(s)}`.
    pub fn inverse(&self) -> Result<MonoidIdeal> {
        let min = componentwise(self.generator_valuations(), i64::min);
        let bound = min.iter().map(|x| -x).collect();
        divisorial_generators(&self.parent, &ValuationVector(bound))
    }

    /// `I* = (I^{-1})^{-1} = {z : v(z) >= min_s v(s)}`.
    pub fn star(&self) -> Result<MonoidIdeal> {
        let min = componentwise(self.generator_valuations(), i64::min);
        divisorial_generators(&self.parent, &ValuationVector(min))
    }

    pub fn is_divisorial(&self) -> Result<bool> {
        Ok(self.star()? == *self)
    }

    /// Componentwise minimum of generator valuations: the divisor of `I*`.
    pub fn valuation_envelope(&self) -> ValuationVector {
        ValuationVector(componentwise(self.generator_valuations(), i64::min))
    }

    /// `Some(a)` when `I = a + Q`.
    pub fn principal_generator(&self) -> Option<&[i64]> {
        match self.gens.as_slice() {
            [a] => Some(a),
            _ => None,
        }
    }
}
