//! Divisors and the divisor class group.
//!
//! A divisor is an integer vector indexed by the height one primes, which
//! are the facets in their canonical order. Divisors correspond bijectively
//! to divisorial ideals via `n ↦ {z : v(z) >= n}`, and the class group is
//! `Z^D` modulo the image of the valuation map `Q^gp → Z^D`.
//!
//! The same group is the divisor class group of any local log-regular ring
//! built on the monoid, so nothing here refers to a ring.

use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::ideal::{divisorial_generators, valuations, MonoidIdeal, ValuationVector};
use crate::lattice::{snf, to_big, FinAbGroup, IntMatrix};
use crate::monoid::{AffineMonoid, PrimeIdeal};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Divisor(pub Vec<i64>);

impl Divisor {
    pub fn zero(len: usize) -> Self {
        Divisor(vec![0; len])
    }

    pub fn indicator(len: usize, k: usize) -> Self {
        let mut n = vec![0; len];
        n[k] = 1;
        Divisor(n)
    }

    pub fn coefficients(&self) -> &[i64] {
        &self.0
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        Divisor(crate::vector::add(&self.0, &other.0))
    }

    /// The divisorial ideal `{z : v(z) >= n}`.
    pub fn ideal(&self, q: &Arc<AffineMonoid>) -> Result<MonoidIdeal> {
        divisorial_generators(q, &ValuationVector(self.0.clone()))
    }
}

/// A class in normal form: free coordinates, then torsion residues in
/// `[0, d_i)` against the invariant factors.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ClassElement {
    pub free: Vec<i64>,
    pub torsion: Vec<i64>,
}

impl ClassElement {
    pub fn is_identity(&self) -> bool {
        self.free.iter().chain(&self.torsion).all(|&x| x == 0)
    }
}

/// `Cl(Q)` together with the projection `Z^D → Cl(Q)`.
///
/// With `u * V * w = s` in Smith form, a divisor `n` has class read off
/// from `u * n`: entries against diagonal entries `> 1` are torsion
/// residues, entries past the rank are free, the rest vanish.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassGroupData {
    group: FinAbGroup,
    u: IntMatrix,
    torsion_rows: Vec<(usize, BigInt)>,
    free_rows: Vec<usize>,
}

impl ClassGroupData {
    pub fn group(&self) -> &FinAbGroup {
        &self.group
    }

    /// Number of height one primes.
    pub fn height_one_primes(&self) -> usize {
        self.u.rows()
    }

    pub fn project(&self, divisor: &Divisor) -> Result<ClassElement> {
        if divisor.0.len() != self.u.rows() {
            return Err(Error::DimensionMismatch {
                expected: self.u.rows(),
                found: divisor.0.len(),
            });
        }
        let c = self.u.mul_vec(&to_big(&divisor.0));
        let narrow = |x: &BigInt| i64::try_from(x).map_err(|_| Error::Overflow);
        let free = self
            .free_rows
            .iter()
            .map(|&i| narrow(&c[i]))
            .collect::<Result<_>>()?;
        let torsion = self
            .torsion_rows
            .iter()
            .map(|(i, d)| narrow(&c[*i].mod_floor(d)))
            .collect::<Result<_>>()?;
        Ok(ClassElement { free, torsion })
    }

    pub fn add(&self, a: &ClassElement, b: &ClassElement) -> ClassElement {
        ClassElement {
            free: crate::vector::add(&a.free, &b.free),
            torsion: a
                .torsion
                .iter()
                .zip(&b.torsion)
                .zip(&self.torsion_rows)
                .map(|((x, y), (_, d))| {
                    let d = i64::try_from(d).expect("torsion factor fits i64 when residues do");
                    (x + y).rem_euclid(d)
                })
                .collect(),
        }
    }

    pub fn identity(&self) -> ClassElement {
        ClassElement {
            free: vec![0; self.free_rows.len()],
            torsion: vec![0; self.torsion_rows.len()],
        }
    }

    /// Classes of the height one primes, in facet order.
    pub fn prime_classes(&self) -> Result<Vec<ClassElement>> {
        let d = self.height_one_primes();
        (0..d)
            .map(|k| self.project(&Divisor::indicator(d, k)))
            .collect()
    }
}

/// `div(a + Q)`: the facet valuations of `a`.
pub fn div_of_element(q: &AffineMonoid, a: &[i64]) -> Result<Divisor> {
    q.require_normal()?;
    Ok(Divisor(valuations(q, a)?.0))
}

/// The divisor `n` with `I = {z : v(z) >= n}`.
pub fn divisor_of_ideal(ideal: &MonoidIdeal) -> Result<Divisor> {
    if !ideal.is_divisorial()? {
        return Err(Error::NotDivisorial);
    }
    Ok(Divisor(ideal.valuation_envelope().0))
}

pub fn class_group(q: &AffineMonoid) -> Result<ClassGroupData> {
    q.require_normal()?;
    if q.rank() == 0 {
        return Err(Error::WrongRank {
            expected: 1,
            found: 0,
        });
    }
    let v = IntMatrix::from_rows(q.facets(), q.rank());
    let smith = snf(&v);
    let diag = smith.diagonal();
    let rank = smith.rank();
    let torsion_rows: Vec<(usize, BigInt)> = diag
        .iter()
        .enumerate()
        .take(rank)
        .filter(|(_, d)| !d.is_one())
        .map(|(i, d)| (i, d.abs()))
        .collect();
    debug_assert!(torsion_rows.iter().all(|(_, d)| !d.is_zero()));
    let free_rows: Vec<usize> = (rank..v.rows()).collect();
    let group = FinAbGroup {
        free_rank: free_rows.len(),
        invariant_factors: torsion_rows.iter().map(|(_, d)| d.clone()).collect(),
    };
    Ok(ClassGroupData {
        group,
        u: smith.u,
        torsion_rows,
        free_rows,
    })
}

/// Class of `I*`; starring does not change the class.
pub fn class_of(data: &ClassGroupData, ideal: &MonoidIdeal) -> Result<ClassElement> {
    data.project(&Divisor(ideal.valuation_envelope().0))
}

pub fn is_principal_prime(q: &Arc<AffineMonoid>, p: &PrimeIdeal) -> Result<bool> {
    if p.height != 1 {
        return Err(Error::WrongHeight(p.height));
    }
    let data = class_group(q)?;
    let [k] = p.face.facet_subset[..] else {
        unreachable!("a height one prime is cut out by one facet");
    };
    let divisor = Divisor::indicator(q.facets().len(), k);
    Ok(class_of(&data, &divisor.ideal(q)?)?.is_identity())
}
