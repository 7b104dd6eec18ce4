use std::fs;
use std::path::Path;
use std::sync::Arc;

use affmon::canonical::{canonical_module_generators, relint_ideal, two_dim_type};
use affmon::divisor::{class_group, class_of, divisor_of_ideal};
use affmon::monoid::max_chain_length;
use affmon::oracle::verify_monoid;
use affmon::{AffineMonoid, IdealFile, MonoidFile, MonoidIdeal, StandardMonoid, Strategy};
use serde_json::{json, Value};

use crate::{IdealArgs, IdealOp, Source, VerifyArgs};

pub enum Failure {
    Domain(affmon::Error),
    Input { code: &'static str, message: String },
}

impl From<affmon::Error> for Failure {
    fn from(e: affmon::Error) -> Self {
        Failure::Domain(e)
    }
}

impl Failure {
    pub fn to_json(&self) -> Value {
        let (code, message) = match self {
            Failure::Domain(e) => (e.code(), e.to_string()),
            Failure::Input { code, message } => (*code, message.clone()),
        };
        json!({ "error": { "code": code, "message": message } })
    }
}

type Outcome = Result<Value, Failure>;

fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::Input {
        code: "unreadable_input",
        message: format!("{}: {e}", path.display()),
    })?;
    serde_json::from_str(&text).map_err(|e| Failure::Input {
        code: "malformed_input",
        message: format!("{}: {e}", path.display()),
    })
}

struct Loaded {
    name: String,
    monoid: Arc<AffineMonoid>,
}

fn load(source: &Source) -> Result<Loaded, Failure> {
    match (&source.monoid, &source.name) {
        (Some(path), _) => {
            let file: MonoidFile = read_json(path)?;
            if file.generators.iter().any(|g| g.len() != file.ambient_rank) {
                return Err(Failure::Input {
                    code: "malformed_input",
                    message: format!(
                        "{}: every generator needs {} coordinates",
                        path.display(),
                        file.ambient_rank
                    ),
                });
            }
            Ok(Loaded {
                monoid: Arc::new(file.build()?),
                name: file.name,
            })
        }
        (None, Some(kind)) => {
            let family = StandardMonoid::parse(kind, &source.params)?;
            Ok(Loaded {
                monoid: Arc::new(family.build()?),
                name: family.name(),
            })
        }
        (None, None) => unreachable!("clap requires an input source"),
    }
}

fn ambient(q: &AffineMonoid, vectors: &[Vec<i64>]) -> Vec<Vec<i64>> {
    vectors.iter().map(|v| q.to_ambient(v)).collect()
}

pub fn info(source: &Source) -> Outcome {
    let Loaded { name, monoid: q } = load(source)?;
    let pointed = q.cone().is_pointed();
    Ok(json!({
        "name": name,
        "ambient_rank": q.ambient_rank(),
        "rank": q.rank(),
        "generators": q.generators(),
        "gp_basis": q.gp_basis(),
        "sharp": q.is_sharp(),
        "saturated": q.is_saturated(),
        "unit_rank": q.unit_rank(),
        "units_basis": ambient(&q, q.units_basis()),
        "rays": if pointed { json!(ambient(&q, q.cone().rays())) } else { Value::Null },
        "facets_gp": q.facets(),
        "hilbert_basis": q.hilbert_basis().map(|hb| ambient(&q, hb)),
    }))
}

pub fn saturate(source: &Source) -> Outcome {
    let Loaded { name, monoid: q } = load(source)?;
    let s = q.saturate()?;
    Ok(json!({
        "name": format!("{name}_saturated"),
        "ambient_rank": s.ambient_rank(),
        "generators": s.generators(),
        "gp_basis": s.gp_basis(),
    }))
}

pub fn spectrum(source: &Source) -> Outcome {
    let Loaded { monoid: q, .. } = load(source)?;
    let primes = q.spectrum()?;
    let rays = q.cone().rays();
    let listed: Vec<Value> = primes
        .iter()
        .map(|p| {
            let face_rays: Vec<Vec<i64>> = p
                .face
                .ray_subset
                .iter()
                .map(|&r| q.to_ambient(&rays[r]))
                .collect();
            json!({ "height": p.height, "face_rays": face_rays, "facets": p.face.facet_subset })
        })
        .collect();
    Ok(json!({
        "count": primes.len(),
        "dimension": q.dimension()?,
        "max_chain_length": max_chain_length(&primes),
        "primes": listed,
        "gp_basis": q.gp_basis(),
    }))
}

pub fn classgroup(source: &Source) -> Outcome {
    let Loaded { monoid: q, .. } = load(source)?;
    let data = class_group(&q)?;
    let group = data.group();
    Ok(json!({
        "free_rank": group.free_rank,
        "invariant_factors": serde_json::to_value(group).expect("serializable")["invariant_factors"],
        "group": group.to_string(),
        "height_one_primes": data.height_one_primes(),
        "generator_classes": data.prime_classes()?,
        "gp_basis": q.gp_basis(),
    }))
}

pub fn canonical(source: &Source) -> Outcome {
    let Loaded { monoid: q, .. } = load(source)?;
    let omega = relint_ideal(&q)?;
    let lift = canonical_module_generators(&q, 0)?;
    debug_assert_eq!(lift.len(), omega.ideal.generators().len());
    Ok(json!({
        "omega_generators": omega.ideal.generators_ambient(),
        "principal": omega.is_principal,
        "c": omega.principal_generator.map(|c| q.to_ambient(&c)),
        "gp_basis": q.gp_basis(),
    }))
}

pub fn gorenstein(source: &Source) -> Outcome {
    let Loaded { monoid: q, .. } = load(source)?;
    let c = affmon::gorenstein(&q)?;
    let omega = relint_ideal(&q)?;
    Ok(json!({
        "omega_generators": omega.ideal.generators_ambient(),
        "principal": c.is_some(),
        "c": c.map(|c| q.to_ambient(&c)),
        "gp_basis": q.gp_basis(),
    }))
}

pub fn type2d(source: &Source) -> Outcome {
    let Loaded { monoid: q, .. } = load(source)?;
    let t = two_dim_type(&q)?;
    Ok(json!({ "b": t.b, "a": t.a, "A_type": t.is_a_type }))
}

fn load_ideal(q: &Arc<AffineMonoid>, path: &Path) -> Result<MonoidIdeal, Failure> {
    let file: IdealFile = read_json(path)?;
    Ok(MonoidIdeal::from_file(q, &file)?)
}

pub fn ideal(args: &IdealArgs) -> Outcome {
    let Loaded { monoid: q, .. } = load(&args.source)?;
    let i = load_ideal(&q, &args.ideal)?;
    let j = match &args.other {
        Some(path) if args.op.is_binary() => Some(load_ideal(&q, path)?),
        _ => None,
    };
    let j = || {
        j.as_ref()
            .expect("clap requires --other for binary operations")
    };
    let result = match args.op {
        IdealOp::Show => i,
        IdealOp::Star => i.star()?,
        IdealOp::Inverse => i.inverse()?,
        IdealOp::Sum => i.sum(j())?,
        IdealOp::Product => i.product(j())?,
        IdealOp::Intersect => i.intersect(j())?,
        IdealOp::Colon => i.colon(j())?,
    };
    let divisorial = result.is_divisorial()?;
    let divisor = if divisorial {
        Some(divisor_of_ideal(&result)?)
    } else {
        None
    };
    let data = class_group(&q)?;
    Ok(json!({
        "generators": result.generators_ambient(),
        "divisorial": divisorial,
        "principal_generator": result.principal_generator().map(|a| q.to_ambient(a)),
        "divisor": divisor,
        "class": class_of(&data, &result)?,
        "gp_basis": q.gp_basis(),
    }))
}

pub fn verify(args: &VerifyArgs) -> Outcome {
    let Loaded { name, monoid: q } = load(&args.source)?;
    let report = verify_monoid(&q, args.bound, args.seed, args.trials, Strategy::default())?;
    let mut value = serde_json::to_value(&report).expect("reports serialize");
    value["monoid"] = json!(name);
    Ok(value)
}
