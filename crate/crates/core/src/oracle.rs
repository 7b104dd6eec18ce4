//! Brute-force ground truth on bounded boxes.
//!
//! Everything here works from definitions: membership in `Q` is the facet
//! test (cross-checked against breadth-first closure of the generators),
//! membership in an ideal is `z - s ∈ Q` for some generator `s`, and set
//! operations are computed pointwise over the valuation box
//! `{z ∈ Q^gp : -B <= v_i(z) <= B}`. The closed forms of the [`ideal`],
//! [`divisor`] and [`canonical`] modules are compared against these sets.
//!
//! [`ideal`]: crate::ideal
//! [`divisor`]: crate::divisor
//! [`canonical`]: crate::canonical

use std::collections::{BTreeSet, VecDeque};
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::canonical::{gorenstein, relint_ideal};
use crate::divisor::{class_group, class_of, div_of_element, divisor_of_ideal, Divisor};
use crate::error::{Error, Result};
use crate::exec::Strategy;
use crate::ideal::MonoidIdeal;
use crate::monoid::AffineMonoid;
use crate::polytope::{lattice_points, HalfSpace};
use crate::vector;

pub const DEFAULT_BOUND: i64 = 8;
const MAX_BOUND: i64 = 64;
/// Valuations of random ideal generators and divisor coefficients stay
/// within this range.
const SAMPLE_RANGE: i64 = 3;

/// The elements of `Q` of total facet valuation at most `bound`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BoundedEnumeration {
    pub bound: i64,
    pub elements: Vec<Vec<i64>>,
}

/// Elements of degree at most `bound`, by the facet test for saturated
/// monoids and by generator closure otherwise. For saturated monoids both
/// are computed and must agree.
pub fn enumerate(q: &AffineMonoid, bound: i64) -> Result<BoundedEnumeration> {
    if !q.is_sharp() {
        return Err(Error::NotSharp);
    }
    let closure = enumerate_by_generators(q, bound);
    if q.is_saturated() {
        let facet = enumerate_by_facets(q, bound);
        if facet != closure {
            return Err(Error::OracleMismatch(format!(
                "generator closure and facet test disagree below degree {bound}"
            )));
        }
    }
    Ok(BoundedEnumeration {
        bound,
        elements: closure,
    })
}

/// `{z : v(z) >= 0, Σ v_i(z) <= bound}`, sorted.
pub fn enumerate_by_facets(q: &AffineMonoid, bound: i64) -> Vec<Vec<i64>> {
    let facets = q.facets();
    let d = q.rank();
    let mut constraints: Vec<HalfSpace> = facets
        .iter()
        .map(|f| HalfSpace::new(f.clone(), 0))
        .collect();
    let total = facets
        .iter()
        .fold(vec![0; d], |acc, f| vector::add(&acc, f));
    constraints.push(HalfSpace::new(vector::neg(&total), -bound));
    lattice_points(&constraints, d)
}

/// Breadth-first closure of the generators below the degree bound, sorted.
pub fn enumerate_by_generators(q: &AffineMonoid, bound: i64) -> Vec<Vec<i64>> {
    let zero = vec![0; q.rank()];
    let mut seen = BTreeSet::from([zero.clone()]);
    let mut queue = VecDeque::from([zero]);
    while let Some(x) = queue.pop_front() {
        for g in q.generators_gp() {
            let y = vector::add(&x, g);
            if q.degree(&y) <= bound && !seen.contains(&y) {
                seen.insert(y.clone());
                queue.push_back(y);
            }
        }
    }
    seen.into_iter().collect()
}

/// The lattice points of `Q^gp` with every facet valuation in `[-bound, bound]`.
#[derive(Clone, Debug)]
pub struct ValuationBox {
    pub bound: i64,
    pub points: Vec<Vec<i64>>,
}

impl ValuationBox {
    pub fn new(q: &AffineMonoid, bound: i64) -> Self {
        let mut constraints = Vec::new();
        for f in q.facets() {
            constraints.push(HalfSpace::new(f.clone(), -bound));
            constraints.push(HalfSpace::new(vector::neg(f), -bound));
        }
        ValuationBox {
            bound,
            points: lattice_points(&constraints, q.rank()),
        }
    }

    fn on_boundary(&self, q: &AffineMonoid, z: &[i64]) -> bool {
        q.cone()
            .facet_values(z)
            .iter()
            .any(|v| v.abs() == self.bound)
    }
}

fn in_monoid(q: &AffineMonoid, z: &[i64]) -> bool {
    q.cone().contains(z)
}

fn in_generated(q: &AffineMonoid, gens: &[Vec<i64>], z: &[i64]) -> bool {
    gens.iter().any(|s| in_monoid(q, &vector::sub(z, s)))
}

/// Box points `z` with `z + t ∈ ⟨gens_i⟩` for every `t` in `gens_j`.
pub fn brute_colon(
    q: &AffineMonoid,
    gens_i: &[Vec<i64>],
    gens_j: &[Vec<i64>],
    cube: &ValuationBox,
) -> BTreeSet<Vec<i64>> {
    cube.points
        .iter()
        .filter(|z| {
            gens_j
                .iter()
                .all(|t| in_generated(q, gens_i, &vector::add(z, t)))
        })
        .cloned()
        .collect()
}

/// `(Q : I)` on the box.
pub fn brute_inverse(
    q: &AffineMonoid,
    gens: &[Vec<i64>],
    cube: &ValuationBox,
) -> BTreeSet<Vec<i64>> {
    brute_colon(q, &[vec![0; q.rank()]], gens, cube)
}

pub fn brute_intersect(
    q: &AffineMonoid,
    gens_i: &[Vec<i64>],
    gens_j: &[Vec<i64>],
    cube: &ValuationBox,
) -> BTreeSet<Vec<i64>> {
    cube.points
        .iter()
        .filter(|z| in_generated(q, gens_i, z) && in_generated(q, gens_j, z))
        .cloned()
        .collect()
}

pub fn brute_product(
    q: &AffineMonoid,
    gens_i: &[Vec<i64>],
    gens_j: &[Vec<i64>],
    cube: &ValuationBox,
) -> BTreeSet<Vec<i64>> {
    let sums: Vec<Vec<i64>> = gens_i
        .iter()
        .flat_map(|s| gens_j.iter().map(move |t| vector::add(s, t)))
        .collect();
    members(q, &sums, cube)
}

/// Box points of the ideal generated by `gens`.
pub fn members(q: &AffineMonoid, gens: &[Vec<i64>], cube: &ValuationBox) -> BTreeSet<Vec<i64>> {
    cube.points
        .iter()
        .filter(|z| in_generated(q, gens, z))
        .cloned()
        .collect()
}

fn minimal_points(q: &AffineMonoid, set: &BTreeSet<Vec<i64>>) -> Vec<Vec<i64>> {
    set.iter()
        .filter(|z| {
            !set.iter()
                .any(|y| y != *z && in_monoid(q, &vector::sub(z, y)))
        })
        .cloned()
        .collect()
}

/// Result of a literal double-colon computation on the box.
#[derive(Clone, Debug)]
pub struct BruteStar {
    pub points: BTreeSet<Vec<i64>>,
    /// A minimal element of `(Q : I)` sits on the box boundary, so the box
    /// may be too small to see all generators.
    pub boundary_hit: bool,
}

/// `I* = (Q : (Q : I))` on the box: scan for `(Q : I)`, keep its minimal
/// elements, then scan for the points sending all of them into `Q`.
pub fn brute_star(q: &AffineMonoid, gens: &[Vec<i64>], cube: &ValuationBox) -> BruteStar {
    let inverse = brute_inverse(q, gens, cube);
    let minimal = minimal_points(q, &inverse);
    let boundary_hit = minimal.is_empty() || minimal.iter().any(|m| cube.on_boundary(q, m));
    let points = cube
        .points
        .iter()
        .filter(|z| minimal.iter().all(|y| in_monoid(q, &vector::add(z, y))))
        .cloned()
        .collect();
    BruteStar {
        points,
        boundary_hit,
    }
}

/// Box points of a closed-form ideal.
fn closed(ideal: &MonoidIdeal, cube: &ValuationBox) -> BTreeSet<Vec<i64>> {
    cube.points
        .iter()
        .filter(|z| ideal.contains(z))
        .cloned()
        .collect()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Counterexample {
    pub trial: usize,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyResult {
    pub name: String,
    pub passed: bool,
    pub checks: usize,
    pub failures: usize,
    pub counterexample: Option<Counterexample>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Report {
    pub seed: u64,
    pub bound: i64,
    pub trials: usize,
    /// Trials rerun on a doubled box because a generator reached the boundary.
    pub bound_doublings: usize,
    pub passed: bool,
    pub properties: Vec<PropertyResult>,
}

impl Report {
    pub fn failures(&self) -> impl Iterator<Item = &PropertyResult> {
        self.properties.iter().filter(|p| !p.passed)
    }
}

/// Outcome of one named check: `Err` carries a human-readable witness.
type Check = (&'static str, std::result::Result<(), String>);

struct TrialOutcome {
    checks: Vec<Check>,
    doublings: usize,
}

fn aggregate(seed: u64, bound: i64, trials: usize, outcomes: Vec<TrialOutcome>) -> Report {
    let mut properties: Vec<PropertyResult> = Vec::new();
    let mut doublings = 0;
    for (trial, outcome) in outcomes.into_iter().enumerate() {
        doublings += outcome.doublings;
        for (name, result) in outcome.checks {
            let idx = match properties.iter().position(|p| p.name == name) {
                Some(i) => i,
                None => {
                    properties.push(PropertyResult {
                        name: name.to_string(),
                        passed: true,
                        checks: 0,
                        failures: 0,
                        counterexample: None,
                    });
                    properties.len() - 1
                }
            };
            let p = &mut properties[idx];
            p.checks += 1;
            if let Err(detail) = result {
                p.failures += 1;
                p.passed = false;
                p.counterexample
                    .get_or_insert(Counterexample { trial, detail });
            }
        }
    }
    properties.sort_by(|a, b| a.name.cmp(&b.name));
    Report {
        seed,
        bound,
        trials,
        bound_doublings: doublings,
        passed: properties.iter().all(|p| p.passed),
        properties,
    }
}

fn rng_for(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Sample points for random ideals: box points with small valuations.
fn sample_pool(q: &AffineMonoid, cube: &ValuationBox) -> Vec<Vec<i64>> {
    cube.points
        .iter()
        .filter(|z| {
            q.cone()
                .facet_values(z)
                .iter()
                .all(|v| v.abs() <= SAMPLE_RANGE)
        })
        .cloned()
        .collect()
}

fn random_gens(rng: &mut ChaCha8Rng, pool: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let k = rng.gen_range(1..=4);
    (0..k)
        .map(|_| pool.choose(rng).expect("pool contains 0").clone())
        .collect()
}

fn random_divisor(rng: &mut ChaCha8Rng, len: usize) -> Divisor {
    Divisor(
        (0..len)
            .map(|_| rng.gen_range(-SAMPLE_RANGE..=SAMPLE_RANGE))
            .collect(),
    )
}

fn show(q: &AffineMonoid, gens: &[Vec<i64>]) -> String {
    let ambient: Vec<Vec<i64>> = gens.iter().map(|g| q.to_ambient(g)).collect();
    format!("{ambient:?}")
}

fn compare(
    q: &AffineMonoid,
    what: &str,
    expected: &BTreeSet<Vec<i64>>,
    actual: &BTreeSet<Vec<i64>>,
) -> std::result::Result<(), String> {
    match expected.symmetric_difference(actual).next() {
        None => Ok(()),
        Some(z) => Err(format!(
            "{what}: point {:?} is {} by brute force",
            q.to_ambient(z),
            if expected.contains(z) {
                "included"
            } else {
                "excluded"
            }
        )),
    }
}

fn ensure(cond: bool, detail: impl FnOnce() -> String) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(detail())
    }
}

fn lift<T>(r: Result<T>) -> std::result::Result<T, String> {
    r.map_err(|e| format!("unexpected error: {e}"))
}

/// The ideal-calculus checks for one pair of random ideals `I`, `J` and a
/// shift `a`. Returns `None` when the box is too small for the brute star.
fn ideal_checks(
    q: &Arc<AffineMonoid>,
    gi: &[Vec<i64>],
    gj: &[Vec<i64>],
    a: &[i64],
    cube: &ValuationBox,
) -> Option<Vec<Check>> {
    let star_i = brute_star(q, gi, cube);
    let star_j = brute_star(q, gj, cube);
    if star_i.boundary_hit || star_j.boundary_hit {
        return None;
    }
    let label = || format!("I = {}, J = {}", show(q, gi), show(q, gj));
    let mut checks: Vec<Check> = Vec::new();
    let result = (|| -> std::result::Result<Vec<Check>, String> {
        let i = lift(MonoidIdeal::new(q, gi.to_vec()))?;
        let j = lift(MonoidIdeal::new(q, gj.to_vec()))?;
        let unit = lift(MonoidIdeal::unit(q))?;
        let si = lift(i.star())?;
        let sj = lift(j.star())?;
        let mut out: Vec<Check> = vec![
            ("star_idempotent", ensure(lift(si.star())? == si, label)),
            ("star_contains_ideal", ensure(i.is_subset_of(&si), label)),
            (
                "star_is_divisorial",
                ensure(lift(si.is_divisorial())?, label),
            ),
            (
                "star_oracle",
                compare(q, &label(), &star_i.points, &closed(&si, cube)),
            ),
        ];
        let shifted = lift(i.shift(a).star())?;
        out.push((
            "star_shift_equivariant",
            ensure(shifted == si.shift(a), || {
                format!("{}, a = {:?}", label(), q.to_ambient(a))
            }),
        ));
        let ij = lift(i.product(&j))?;
        let lhs = lift(ij.star())?;
        let rhs = lift(lift(si.product(&sj))?.star())?;
        out.push(("star_multiplicative", ensure(lhs == rhs, label)));
        out.push((
            "product_oracle",
            compare(
                q,
                &label(),
                &brute_product(q, gi, gj, cube),
                &closed(&ij, cube),
            ),
        ));
        let inter = lift(i.intersect(&j))?;
        out.push((
            "intersect_oracle",
            compare(
                q,
                &label(),
                &brute_intersect(q, gi, gj, cube),
                &closed(&inter, cube),
            ),
        ));
        let colon = lift(i.colon(&j))?;
        out.push((
            "colon_oracle",
            compare(
                q,
                &label(),
                &brute_colon(q, gi, gj, cube),
                &closed(&colon, cube),
            ),
        ));
        let inverse = lift(i.inverse())?;
        out.push((
            "inverse_oracle",
            compare(
                q,
                &label(),
                &brute_inverse(q, gi, cube),
                &closed(&inverse, cube),
            ),
        ));
        out.push((
            "inverse_is_colon",
            ensure(inverse == lift(unit.colon(&i))?, label),
        ));
        let data = lift(class_group(q))?;
        let sum = data.add(&lift(class_of(&data, &i))?, &lift(class_of(&data, &j))?);
        out.push((
            "class_additive",
            ensure(lift(class_of(&data, &ij))? == sum, label),
        ));
        let principal = lift(class_of(
            &data,
            &lift(MonoidIdeal::principal(q, a.to_vec()))?,
        ))?;
        out.push((
            "principal_class_trivial",
            ensure(principal.is_identity(), || {
                format!("a = {:?}", q.to_ambient(a))
            }),
        ));
        let back = lift(divisor_of_ideal(&si))?.ideal(q);
        out.push(("ideal_divisor_round_trip", ensure(lift(back)? == si, label)));
        Ok(out)
    })();
    match result {
        Ok(found) => checks.extend(found),
        Err(detail) => checks.push(("no_errors", Err(format!("{}: {detail}", label())))),
    }
    Some(checks)
}

/// Round trip and oracle check for a random divisor `n`:
/// `divisor_of_ideal(I(n)) = n` and `I(n)` matches `{z : v(z) >= n}` on the box.
fn divisor_checks(q: &Arc<AffineMonoid>, n: &Divisor, cube: &ValuationBox) -> Vec<Check> {
    let label = || format!("n = {:?}", n.0);
    let ideal = match n.ideal(q) {
        Ok(i) => i,
        Err(e) => return vec![("no_errors", Err(format!("{}: {e}", label())))],
    };
    let brute: BTreeSet<Vec<i64>> = cube
        .points
        .iter()
        .filter(|z| {
            q.cone()
                .facet_values(z)
                .iter()
                .zip(&n.0)
                .all(|(v, b)| v >= b)
        })
        .cloned()
        .collect();
    let again = ideal.star().map(|s| s == ideal).unwrap_or(false);
    vec![
        (
            "divisor_ideal_round_trip",
            ensure(divisor_of_ideal(&ideal).as_ref() == Ok(n), label),
        ),
        (
            "divisorial_generators_oracle",
            compare(q, &label(), &brute, &closed(&ideal, cube)),
        ),
        ("divisorial_ideal_is_star_closed", ensure(again, label)),
    ]
}

/// Monoid-level checks that need no randomness.
fn monoid_checks(q: &Arc<AffineMonoid>, cube: &ValuationBox) -> Vec<Check> {
    let mut out: Vec<Check> = Vec::new();
    out.push((
        "enumeration_agrees",
        enumerate(q, cube.bound)
            .map(|_| ())
            .map_err(|e| e.to_string()),
    ));
    let result = (|| -> std::result::Result<Vec<Check>, String> {
        let mut out: Vec<Check> = Vec::new();
        let omega = lift(relint_ideal(q))?;
        let c = lift(gorenstein(q))?;
        out.push((
            "gorenstein_iff_principal",
            ensure(c.is_some() == omega.is_principal, || format!("c = {c:?}")),
        ));
        let relint: BTreeSet<Vec<i64>> = cube
            .points
            .iter()
            .filter(|z| q.cone().in_relative_interior(z))
            .cloned()
            .collect();
        out.push((
            "relint_oracle",
            compare(q, "relative interior", &relint, &closed(&omega.ideal, cube)),
        ));
        if let Some(c) = c {
            let low: BTreeSet<Vec<i64>> = relint
                .iter()
                .filter(|z| q.degree(z) <= cube.bound)
                .cloned()
                .collect();
            let shifted: BTreeSet<Vec<i64>> = lift(enumerate(q, cube.bound))?
                .elements
                .iter()
                .map(|x| vector::add(&c, x))
                .filter(|z| q.degree(z) <= cube.bound)
                .collect();
            out.push(("relint_is_shift", compare(q, "c + Q", &low, &shifted)));
        }
        let data = lift(class_group(q))?;
        let gens_trivial = q.generators_gp().iter().all(|g| {
            div_of_element(q, g)
                .and_then(|d| data.project(&d))
                .map(|c| c.is_identity())
                .unwrap_or(false)
        });
        out.push((
            "principal_divisors_trivial",
            ensure(gens_trivial, || "a generator has nontrivial class".into()),
        ));
        Ok(out)
    })();
    match result {
        Ok(found) => out.extend(found),
        Err(detail) => out.push(("no_errors", Err(detail))),
    }
    out
}

/// Runs one trial, doubling the box until the brute star sees every generator.
fn run_trial(
    q: &Arc<AffineMonoid>,
    seed: u64,
    trial: usize,
    bound: i64,
    base: &ValuationBox,
) -> TrialOutcome {
    let mut rng = rng_for(seed, trial);
    let pool = sample_pool(q, base);
    let gi = random_gens(&mut rng, &pool);
    let gj = random_gens(&mut rng, &pool);
    let a = pool.choose(&mut rng).expect("pool contains 0").clone();
    let n = random_divisor(&mut rng, q.facets().len());
    let mut doublings = 0;
    let mut b = bound;
    let mut owned;
    let mut cube = base;
    let mut checks = loop {
        if let Some(found) = ideal_checks(q, &gi, &gj, &a, cube) {
            break found;
        }
        if b * 2 > MAX_BOUND {
            let detail = format!(
                "generators reach the boundary at B = {b}: I = {}, J = {}",
                show(q, &gi),
                show(q, &gj)
            );
            break vec![("box_large_enough", Err(detail))];
        }
        b *= 2;
        doublings += 1;
        owned = ValuationBox::new(q, b);
        cube = &owned;
    };
    checks.extend(divisor_checks(q, &n, cube));
    TrialOutcome { checks, doublings }
}

/// Runs the full property list on `trials` random ideal pairs and divisors
/// over a fixed sharp saturated monoid.
pub fn verify_monoid(
    q: &AffineMonoid,
    bound: i64,
    seed: u64,
    trials: usize,
    strategy: Strategy,
) -> Result<Report> {
    q.require_normal()?;
    if bound < 1 {
        return Err(Error::InvalidParameters {
            kind: "oracle".into(),
            reason: "bound must be positive".into(),
        });
    }
    let q = Arc::new(q.clone());
    let cube = ValuationBox::new(&q, bound);
    let indices: Vec<usize> = (0..trials).collect();
    let mut outcomes = strategy.map(&indices, |&t| run_trial(&q, seed, t, bound, &cube));
    if let Some(first) = outcomes.first_mut() {
        first.checks.extend(monoid_checks(&q, &cube));
    } else {
        outcomes.push(TrialOutcome {
            checks: monoid_checks(&q, &cube),
            doublings: 0,
        });
    }
    Ok(aggregate(seed, bound, trials, outcomes))
}

/// A random sharp saturated monoid: ambient rank 1 to 3, at most six
/// nonzero generators with coordinates in `[0, 4]`, resampled until
/// saturated.
pub fn random_saturated_monoid(rng: &mut impl Rng) -> AffineMonoid {
    loop {
        let l = rng.gen_range(1..=3usize);
        let k = rng.gen_range(1..=6usize);
        let gens: Vec<Vec<i64>> = (0..k)
            .map(|_| (0..l).map(|_| rng.gen_range(0..=4)).collect())
            .filter(|g: &Vec<i64>| !vector::is_zero(g))
            .collect();
        if gens.is_empty() {
            continue;
        }
        if let Ok(q) = AffineMonoid::build(&gens, l) {
            if q.is_saturated() && q.rank() >= 1 {
                return q;
            }
        }
    }
}

/// Each trial draws its own random monoid and runs one round of the
/// property list on it.
pub fn random_suite(seed: u64, trials: usize, bound: i64, strategy: Strategy) -> Report {
    let indices: Vec<usize> = (0..trials).collect();
    let outcomes = strategy.map(&indices, |&t| {
        let mut rng = rng_for(seed, t);
        let q = Arc::new(random_saturated_monoid(&mut rng));
        let cube = ValuationBox::new(&q, bound);
        let mut outcome = run_trial(&q, rng.gen(), 0, bound, &cube);
        outcome.checks.extend(monoid_checks(&q, &cube));
        outcome
    });
    aggregate(seed, bound, trials, outcomes)
}

/// Round trip `n ↦ I(n) ↦ divisor` for `count` random divisors.
pub fn divisor_round_trips(
    q: &AffineMonoid,
    seed: u64,
    count: usize,
    strategy: Strategy,
) -> Result<Report> {
    q.require_normal()?;
    let q = Arc::new(q.clone());
    let cube = ValuationBox::new(&q, DEFAULT_BOUND);
    let indices: Vec<usize> = (0..count).collect();
    let outcomes = strategy.map(&indices, |&t| {
        let n = random_divisor(&mut rng_for(seed, t), q.facets().len());
        TrialOutcome {
            checks: divisor_checks(&q, &n, &cube),
            doublings: 0,
        }
    });
    Ok(aggregate(seed, DEFAULT_BOUND, count, outcomes))
}
