//! The canonical ideal, the Gorenstein criterion and two-dimensional
//! normal forms.
//!
//! The canonical ideal of a sharp saturated monoid is generated by its
//! relative interior `{z : v_i(z) >= 1}`, the divisorial ideal of the
//! all-ones divisor. The monoid is Gorenstein exactly when this ideal is
//! principal, `relint Q = c + Q`, which is the integer system `v(c) = 1`.

use std::collections::BTreeMap;
use std::sync::Arc;

use num_integer::Integer;
use num_traits::One;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::ideal::{divisorial_generators, MonoidIdeal, ValuationVector};
use crate::lattice::{solve_integer, to_i64, IntMatrix};
use crate::monoid::AffineMonoid;
use crate::vector;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CanonicalIdeal {
    pub ideal: MonoidIdeal,
    pub is_principal: bool,
    pub principal_generator: Option<Vec<i64>>,
}

fn require_positive_rank(q: &AffineMonoid) -> Result<()> {
    q.require_normal()?;
    if q.rank() == 0 {
        return Err(Error::WrongRank {
            expected: 1,
            found: 0,
        });
    }
    Ok(())
}

pub fn relint_ideal(q: &Arc<AffineMonoid>) -> Result<CanonicalIdeal> {
    require_positive_rank(q)?;
    let ones = ValuationVector(vec![1; q.facets().len()]);
    let ideal = divisorial_generators(q, &ones)?;
    let principal_generator = ideal.principal_generator().map(<[i64]>::to_vec);
    Ok(CanonicalIdeal {
        is_principal: principal_generator.is_some(),
        principal_generator,
        ideal,
    })
}

/// Some `c` with `v(c) = (1, ..., 1)`, if one exists in `Q^gp`.
pub fn gorenstein(q: &AffineMonoid) -> Result<Option<Vec<i64>>> {
    require_positive_rank(q)?;
    let v = IntMatrix::from_rows(q.facets(), q.rank());
    let ones = vec![One::one(); q.facets().len()];
    solve_integer(&v, &ones)?.map(|c| to_i64(&c)).transpose()
}

/// Generators `(a, (1, ..., 1))` of the canonical ideal of `Q ⊕ N^r`, one
/// for each minimal generator `a` of the relative interior of `Q`.
pub fn canonical_module_generators(
    q: &Arc<AffineMonoid>,
    r: usize,
) -> Result<Vec<(Vec<i64>, Vec<i64>)>> {
    let omega = relint_ideal(q)?;
    Ok(omega
        .ideal
        .generators()
        .iter()
        .map(|a| (a.clone(), vec![1; r]))
        .collect())
}

/// Normal form of a two-dimensional sharp saturated monoid: the cone of
/// `(1,0)` and `(a,b)` in `Z^2` with `0 <= a < b`, `gcd(a,b) = 1`, with `a`
/// replaced by `min(a, a^{-1} mod b)` so swapping the rays changes nothing.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TwoDimType {
    pub b: i64,
    pub a: i64,
    #[serde(rename = "A_type")]
    pub is_a_type: bool,
}

impl TwoDimType {
    fn new(b: i64, a: i64) -> Self {
        let a = if b == 1 { 0 } else { a.min(mod_inverse(a, b)) };
        TwoDimType {
            b,
            a,
            is_a_type: b == 1 || a == b - 1,
        }
    }
}

fn mod_inverse(a: i64, b: i64) -> i64 {
    let e = a.extended_gcd(&b);
    debug_assert_eq!(e.gcd.abs(), 1);
    (e.x * e.gcd).rem_euclid(b)
}

pub fn two_dim_type(q: &AffineMonoid) -> Result<TwoDimType> {
    q.require_normal()?;
    if q.rank() != 2 {
        return Err(Error::WrongRank {
            expected: 2,
            found: q.rank(),
        });
    }
    let rays = q.cone().rays();
    Ok(type_of_rays(&rays[0], &rays[1]))
}

/// Sends the primitive vector `u` to `(1,0)` by `[[x, y], [-q, p]]` with
/// `xp + yq = 1`, then shears the image of `v` into the strip `0 <= a < b`.
fn type_of_rays(u: &[i64], v: &[i64]) -> TwoDimType {
    let (p, q) = (u[0], u[1]);
    let e = p.extended_gcd(&q);
    let (x, y) = (e.x * e.gcd, e.y * e.gcd);
    debug_assert_eq!(x * p + y * q, 1);
    let a_raw = x * v[0] + y * v[1];
    let b = (p * v[1] - q * v[0]).abs();
    debug_assert!(b > 0);
    TwoDimType::new(b, a_raw.rem_euclid(b))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepEntry {
    pub normal_form: TwoDimType,
    pub gorenstein: bool,
    pub relint_principal: bool,
    pub ray_pairs: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepReport {
    pub bound: i64,
    pub ray_pairs: usize,
    pub normal_forms: Vec<SweepEntry>,
    /// Ray pairs where the A-type test and the Gorenstein test disagree, or
    /// where the two Gorenstein tests disagree with each other.
    pub counterexamples: Vec<[Vec<i64>; 2]>,
}

impl SweepReport {
    pub fn passed(&self) -> bool {
        self.counterexamples.is_empty()
    }
}

/// Checks `is_A_type ⟺ Gorenstein` on the saturated monoid of every
/// pointed cone spanned by two primitive vectors with coordinates in
/// `[-bound, bound]`.
pub fn two_dim_sweep(bound: i64, strategy: Strategy) -> Result<SweepReport> {
    let primitive: Vec<Vec<i64>> = (-bound..=bound)
        .flat_map(|x| (-bound..=bound).map(move |y| vec![x, y]))
        .filter(|v| vector::content(v) == 1)
        .collect();
    let mut pairs = Vec::new();
    for (i, u) in primitive.iter().enumerate() {
        for v in &primitive[i + 1..] {
            if vector::det(&[u.clone(), v.clone()]) != 0 {
                pairs.push([u.clone(), v.clone()]);
            }
        }
    }
    let outcomes = strategy.map(&pairs, |[u, v]| -> Result<(TwoDimType, bool, bool)> {
        let q = Arc::new(AffineMonoid::normal_from_rays(&[u.clone(), v.clone()], 2)?);
        let kind = two_dim_type(&q)?;
        debug_assert_eq!(kind, type_of_rays(u, v));
        let c = gorenstein(&q)?;
        let principal = relint_ideal(&q)?.is_principal;
        Ok((kind, c.is_some(), principal))
    });
    let mut by_form: BTreeMap<TwoDimType, SweepEntry> = BTreeMap::new();
    let mut counterexamples = Vec::new();
    for (pair, outcome) in pairs.iter().zip(outcomes) {
        let (kind, gor, principal) = outcome?;
        if kind.is_a_type != gor || gor != principal {
            counterexamples.push(pair.clone());
        }
        let entry = by_form.entry(kind).or_insert(SweepEntry {
            normal_form: kind,
            gorenstein: gor,
            relint_principal: principal,
            ray_pairs: 0,
        });
        if entry.gorenstein != gor || entry.relint_principal != principal {
            counterexamples.push(pair.clone());
        }
        entry.ray_pairs += 1;
    }
    Ok(SweepReport {
        bound,
        ray_pairs: pairs.len(),
        normal_forms: by_form.into_values().collect(),
        counterexamples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ideal::valuations;
    use crate::monoid::standard_monoid;

    fn arc(kind: &str, params: &[i64]) -> Arc<AffineMonoid> {
        Arc::new(standard_monoid(kind, params).unwrap())
    }

    #[test]
    fn relint_examples() {
        let t = arc("twisted", &[]);
        let omega = relint_ideal(&t).unwrap();
        assert_eq!(
            omega.ideal.generators_ambient(),
            vec![vec![1, 1], vec![1, 2]]
        );
        assert!(!omega.is_principal);
        assert_eq!(omega.principal_generator, None);
        let n3 = arc("free", &[3]);
        let omega = relint_ideal(&n3).unwrap();
        assert_eq!(omega.principal_generator, Some(vec![1, 1, 1]));
        for n in 1..=10 {
            let q = arc("a_n", &[n]);
            let omega = relint_ideal(&q).unwrap();
            let c = omega.principal_generator.expect("A_n is Gorenstein");
            assert_eq!(q.to_ambient(&c), vec![1, 1]);
        }
    }

    #[test]
    fn gorenstein_examples() {
        let n2 = arc("free", &[2]);
        assert_eq!(gorenstein(&n2).unwrap(), Some(vec![1, 1]));
        assert_eq!(gorenstein(&arc("twisted", &[])).unwrap(), None);
        let j = arc("jungian", &[3, 1]);
        let c = gorenstein(&j).unwrap().unwrap();
        assert_eq!(valuations(&j, &c).unwrap().0, vec![1; j.facets().len()]);
        // The group of jungian(3,2) is {a + b ≡ 0 mod 3}, which misses (1,1).
        assert_eq!(gorenstein(&arc("jungian", &[3, 2])).unwrap(), None);
        assert!(gorenstein(&arc("quadric", &[])).unwrap().is_some());
    }

    #[test]
    fn canonical_lift() {
        let t = arc("twisted", &[]);
        let gens: Vec<_> = canonical_module_generators(&t, 2)
            .unwrap()
            .into_iter()
            .map(|(a, e)| (t.to_ambient(&a), e))
            .collect();
        assert_eq!(
            gens,
            vec![(vec![1, 1], vec![1, 1]), (vec![1, 2], vec![1, 1])]
        );
        let n1 = arc("free", &[1]);
        assert_eq!(
            canonical_module_generators(&n1, 1).unwrap(),
            vec![(vec![1], vec![1])]
        );
        let a1 = arc("a_n", &[1]);
        let gens = canonical_module_generators(&a1, 0).unwrap();
        assert_eq!(gens.len(), 1);
        assert_eq!(
            (a1.to_ambient(&gens[0].0), gens[0].1.clone()),
            (vec![1, 1], vec![])
        );
    }

    #[test]
    fn two_dim_examples() {
        let t = two_dim_type(&arc("a_n", &[2])).unwrap();
        assert_eq!((t.b, t.a, t.is_a_type), (3, 2, true));
        let t = two_dim_type(&arc("twisted", &[])).unwrap();
        assert_eq!((t.b, t.a, t.is_a_type), (3, 1, false));
        let t = two_dim_type(&arc("free", &[2])).unwrap();
        assert_eq!((t.b, t.a, t.is_a_type), (1, 0, true));
        let t = two_dim_type(&arc("jungian", &[3, 1])).unwrap();
        assert_eq!((t.b, t.a, t.is_a_type), (3, 2, true));
        let t = two_dim_type(&arc("jungian", &[3, 2])).unwrap();
        assert_eq!((t.b, t.a, t.is_a_type), (3, 1, false));
        for n in 1..=10 {
            let t = two_dim_type(&arc("a_n", &[n])).unwrap();
            assert_eq!((t.b, t.a, t.is_a_type), (n + 1, n, true));
        }
    }

    #[test]
    fn swap_normalization() {
        // (5,2) and (5,3) are swapped versions of each other: 2 * 3 = 6 ≡ 1.
        assert_eq!(
            type_of_rays(&[1, 0], &[2, 5]),
            type_of_rays(&[1, 0], &[3, 5])
        );
        assert_eq!(
            type_of_rays(&[1, 0], &[2, 5]),
            type_of_rays(&[2, 5], &[1, 0])
        );
        assert_eq!(type_of_rays(&[1, 0], &[2, 5]).a, 2);
        assert_ne!(
            type_of_rays(&[1, 0], &[1, 5]),
            type_of_rays(&[1, 0], &[2, 5])
        );
    }

    #[test]
    fn rank_errors() {
        assert_eq!(
            two_dim_type(&arc("free", &[3])),
            Err(Error::WrongRank {
                expected: 2,
                found: 3
            })
        );
        assert_eq!(
            two_dim_type(&arc("free", &[1])),
            Err(Error::WrongRank {
                expected: 2,
                found: 1
            })
        );
        assert!(matches!(
            relint_ideal(&arc("free", &[0])),
            Err(Error::WrongRank { .. })
        ));
    }

    #[test]
    fn small_sweep() {
        let report = two_dim_sweep(2, Strategy::default()).unwrap();
        assert!(report.passed(), "{:?}", report.counterexamples);
        assert!(report.normal_forms.iter().any(|e| e.normal_form.b == 1));
        assert_eq!(report, two_dim_sweep(2, Strategy::Sequential).unwrap());
    }
}
