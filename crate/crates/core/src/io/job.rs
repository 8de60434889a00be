//! Job descriptions and the JSON documents they produce.

use std::path::PathBuf;

use num_bigint::BigInt;
use num_traits::ToPrimitive;
use serde::{Deserialize, Serialize};
use serde_json::{json, Map, Value};

use super::format::{factored, roots_triples};
use super::parse::{parse_s_poly, parse_tuple};
use crate::algebra::Rational;
use crate::corpus::{self, SuiteConfig};
use crate::error::{Error, Result};
use crate::groebner::Budget;
use crate::locus::{
    check_structure, diagonal_specialization, exp_locus, locus_components, HyperplaneComponent, StructureReport,
    SupportLocus, TranslationCheck,
};
use crate::oracle::{find_witness, oracle_bfunction, AnsatzBounds};
use crate::pipeline::{lct_of, Annihilator, BSIdeal, InputTuple, MultiIndex};
use crate::zeta::{conjecture_check, polar_candidates, ResolutionData};

pub const ENGINE_VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Bfun,
    Ann,
    Tuple,
    Verify,
    OracleBfun,
    ExpLocus,
    Zeta,
    Suite,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Bfun => "bfun",
            Command::Ann => "ann",
            Command::Tuple => "tuple",
            Command::Verify => "verify",
            Command::OracleBfun => "oracle-bfun",
            Command::ExpLocus => "exp-locus",
            Command::Zeta => "zeta",
            Command::Suite => "suite",
        }
    }
}

/// Everything that determines a result, plus where to put it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct JobSpec {
    pub command: Command,
    /// Polynomial sources `f_1, …, f_r`.
    pub f: Vec<String>,
    pub m: Option<Vec<u32>>,
    /// Candidate element for `verify`.
    pub b: Option<String>,
    /// Weights for the diagonal specialization in `exp-locus`.
    pub weights: Option<Vec<u32>>,
    pub resolution: Option<ResolutionData>,
    pub budget: Budget,
    pub bounds: AnsatzBounds,
    /// Half-width of the shift search in the structure check.
    pub box_size: i64,
    #[serde(skip)]
    pub output: Option<PathBuf>,
    #[serde(skip)]
    pub use_cache: bool,
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        JobSpec {
            command,
            f: Vec::new(),
            m: None,
            b: None,
            weights: None,
            resolution: None,
            budget: Budget::default(),
            bounds: AnsatzBounds::default(),
            box_size: 10,
            output: None,
            use_cache: false,
        }
    }

    pub fn with_f<S: Into<String>>(mut self, f: impl IntoIterator<Item = S>) -> Self {
        self.f = f.into_iter().map(Into::into).collect();
        self
    }

    pub fn with_m(mut self, m: Vec<u32>) -> Self {
        self.m = Some(m);
        self
    }

    pub fn with_b(mut self, b: impl Into<String>) -> Self {
        self.b = Some(b.into());
        self
    }

    /// Checks arities without running anything.
    pub fn validate(&self) -> Result<()> {
        let needs_f = !matches!(self.command, Command::Suite | Command::Zeta);
        if needs_f && self.f.is_empty() {
            return Err(Error::InvalidInput(format!("`{}` needs at least one polynomial", self.command.name())));
        }
        if matches!(self.command, Command::Bfun | Command::OracleBfun) && self.f.len() != 1 {
            return Err(Error::InvalidInput(format!("`{}` takes exactly one polynomial", self.command.name())));
        }
        if let Some(m) = &self.m {
            if m.len() != self.f.len() {
                return Err(Error::RankMismatch {
                    expected: self.f.len(),
                    got: m.len(),
                });
            }
        }
        if let Some(w) = &self.weights {
            if w.len() != self.f.len() {
                return Err(Error::RankMismatch {
                    expected: self.f.len(),
                    got: w.len(),
                });
            }
        }
        if self.command == Command::Verify && self.b.is_none() {
            return Err(Error::InvalidInput("`verify` needs a candidate b".into()));
        }
        if self.command == Command::Zeta && self.resolution.is_none() {
            return Err(Error::InvalidInput("`zeta` needs resolution data".into()));
        }
        if self.box_size < 0 {
            return Err(Error::InvalidInput("box size must be non-negative".into()));
        }
        Ok(())
    }

    /// The spec with polynomial sources replaced by their canonical strings,
    /// so that spelling differences share a cache entry.
    pub fn normalized(&self) -> Result<JobSpec> {
        self.validate()?;
        let mut out = self.clone();
        out.output = None;
        out.use_cache = false;
        if !self.f.is_empty() {
            out.f = parse_tuple(&self.f)?.describe();
        }
        if let Some(b) = &self.b {
            out.b = Some(parse_s_poly(b, self.f.len())?.to_string());
        }
        if let Some(res) = &self.resolution {
            out.resolution = Some(res.clone().validated()?);
        }
        Ok(out)
    }
}

fn int_json(n: &BigInt) -> Result<Value> {
    n.to_i64()
        .map(Value::from)
        .ok_or_else(|| Error::InvalidInput(format!("{n} does not fit in a JSON integer")))
}

fn rational_json(q: &Rational) -> Result<Value> {
    Ok(json!([int_json(q.numer())?, int_json(q.denom())?]))
}

fn locus_json(l: &SupportLocus) -> Result<Vec<Value>> {
    l.components()
        .map(|c| Ok(json!({"dir": c.direction(), "theta": rational_json(c.theta())?})))
        .collect()
}

fn components_json(cs: &[HyperplaneComponent]) -> Vec<Value> {
    cs.iter().map(|h| json!({"a": h.a, "b": h.b})).collect()
}

/// Variable fields of a result document.
#[derive(Default)]
struct Body {
    generators: Vec<String>,
    roots: Vec<Value>,
    components: Vec<Value>,
    exp_locus: Vec<Value>,
    reports: Map<String, Value>,
}

impl Body {
    fn set_roots(&mut self, b: &crate::algebra::MultiPoly) -> Result<()> {
        self.roots = roots_triples(b)?
            .into_iter()
            .map(|(n, d, k)| Ok(json!([int_json(&n)?, int_json(&d)?, k])))
            .collect::<Result<_>>()?;
        Ok(())
    }

    fn report(&mut self, key: &str, v: Value) {
        self.reports.insert(key.into(), v);
    }

    /// Generators, hyperplane components and `Exp` image of an ideal. A
    /// remainder that cannot be resolved is reported rather than fatal.
    fn set_ideal(&mut self, ideal: &BSIdeal) -> Result<()> {
        self.generators = ideal.generators.iter().map(factored).collect::<Result<_>>()?;
        let dec = locus_components(ideal)?;
        self.components = components_json(&dec.components);
        match exp_locus(ideal) {
            Ok(l) => self.exp_locus = locus_json(&l)?,
            Err(Error::Unresolved(rest)) => self.report("exp_locus_unresolved", json!(rest)),
            Err(e) => return Err(e),
        }
        Ok(())
    }
}

fn structure_json(rep: &StructureReport) -> Value {
    let translation = match &rep.translation {
        TranslationCheck::Vacuous => json!({"status": "vacuous"}),
        TranslationCheck::Verified { component, shift } => {
            json!({"status": "verified", "component": {"a": component.a, "b": component.b}, "shift": shift})
        }
        TranslationCheck::NotVerifiedWithinBox { box_size } => {
            json!({"status": "not_verified", "box": box_size})
        }
    };
    json!({
        "passes": rep.passes(),
        "shape_violations": rep.shape_violations,
        "support_violations": components_json(&rep.support_violations),
        "atypical": rep.decomposition.atypical.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "unresolved": rep.decomposition.unresolved.iter().map(ToString::to_string).collect::<Vec<_>>(),
        "translation": translation,
    })
}

fn tuple_and_m(spec: &JobSpec) -> Result<(InputTuple, MultiIndex)> {
    let input = parse_tuple(&spec.f)?;
    let m = MultiIndex::new(spec.m.clone().unwrap_or_else(|| vec![1; input.r()]));
    m.validate(&input)?;
    Ok((input, m))
}

/// Runs the job and returns its result document. Keys are emitted in
/// sorted order, so equal results serialize to equal bytes.
pub fn run_job(spec: &JobSpec) -> Result<Value> {
    spec.validate()?;
    let mut body = Body::default();
    let mut input_doc = json!({"command": spec.command.name()});
    match spec.command {
        Command::Suite => run_suite(spec, &mut body),
        Command::Zeta => run_zeta(spec, &mut body, &mut input_doc)?,
        _ => {
            let (input, m) = tuple_and_m(spec)?;
            input_doc["f"] = json!(input.describe());
            input_doc["x"] = json!(input.x_names());
            input_doc["m"] = json!(m.as_slice());
            run_on_tuple(spec, &input, &m, &mut body, &mut input_doc)?;
        }
    }
    Ok(json!({
        "input": input_doc,
        "generators": body.generators,
        "roots": body.roots,
        "components": body.components,
        "exp_locus": body.exp_locus,
        "reports": body.reports,
        "budget": {
            "max_pairs": spec.budget.max_pairs,
            "max_degree": spec.budget.max_degree,
            "max_s_degree": spec.budget.max_s_degree,
            "ansatz": spec.bounds,
            "box": spec.box_size,
        },
        "engine_version": ENGINE_VERSION,
    }))
}

fn run_on_tuple(spec: &JobSpec, input: &InputTuple, m: &MultiIndex, body: &mut Body, input_doc: &mut Value) -> Result<()> {
    match spec.command {
        Command::Bfun => {
            let ideal = Annihilator::compute(input, &spec.budget)?.bs_ideal(m)?;
            let b = ideal.generators[0].clone();
            body.set_ideal(&ideal)?;
            body.set_roots(&b)?;
            let negative = crate::algebra::univariate_rational_roots(&b)?
                .iter()
                .all(|(q, _)| q < &Rational::from_integer(0.into()));
            body.report("lct", rational_json(&lct_of(&b)?)?);
            body.report("roots_negative", json!(negative));
        }
        Command::Ann => {
            let ann = Annihilator::compute(input, &spec.budget)?;
            body.generators = ann.generators().iter().map(ToString::to_string).collect();
            body.report("annihilates", json!(ann.verify()?));
        }
        Command::Tuple | Command::ExpLocus => {
            let ideal = Annihilator::compute(input, &spec.budget)?.bs_ideal(m)?;
            body.set_ideal(&ideal)?;
            if input.r() == 1 {
                body.set_roots(&ideal.generators[0])?;
            }
            if spec.command == Command::Tuple {
                let rep = check_structure(&ideal, m, spec.box_size)?;
                body.report("structure", structure_json(&rep));
                body.report("principal", json!(ideal.is_principal()));
            } else {
                let locus = exp_locus(&ideal)?;
                if let Some(w) = &spec.weights {
                    let c = diagonal_specialization(&locus, w)?;
                    let angles = c.angles.iter().map(rational_json).collect::<Result<Vec<_>>>()?;
                    body.report("diagonal", json!({"weights": w, "angles": angles, "everything": c.everything}));
                }
            }
        }
        Command::Verify => {
            let b = parse_s_poly(spec.b.as_deref().expect("validated"), input.r())?;
            input_doc["b"] = json!(b.to_string());
            body.generators = vec![factored(&b)?];
            let mut found = None;
            for order in 0..=spec.bounds.max_order {
                if let Some(p) = find_witness(&b, input, m, &spec.bounds.with_order(order))? {
                    found = Some((order, p));
                    break;
                }
            }
            body.report("verified", json!(found.is_some()));
            body.report("witness", json!(found.as_ref().map(|(_, p)| p.to_string())));
            body.report("order", json!(found.as_ref().map(|(k, _)| k)));
        }
        Command::OracleBfun => {
            let cert = oracle_bfunction(&input.f()[0], &spec.bounds)?;
            body.report("found", json!(cert.is_some()));
            if let Some(c) = &cert {
                body.generators = vec![factored(&c.b)?];
                body.set_roots(&c.b)?;
                body.report("witness", json!(c.operator.to_string()));
            } else {
                body.report("witness", Value::Null);
            }
        }
        Command::Zeta | Command::Suite => unreachable!("handled by run_job"),
    }
    Ok(())
}

fn run_zeta(spec: &JobSpec, body: &mut Body, input_doc: &mut Value) -> Result<()> {
    let data = spec.resolution.clone().expect("validated").validated()?;
    input_doc["resolution"] = json!(data);
    let candidates = polar_candidates(&data)?;
    body.components = components_json(&candidates);
    if !spec.f.is_empty() {
        let (input, m) = tuple_and_m(spec)?;
        input_doc["f"] = json!(input.describe());
        input_doc["x"] = json!(input.x_names());
        input_doc["m"] = json!(m.as_slice());
        let ideal = Annihilator::compute(&input, &spec.budget)?.bs_ideal(&m)?;
        body.generators = ideal.generators.iter().map(factored).collect::<Result<_>>()?;
        let rep = conjecture_check(&data, &ideal)?;
        body.report(
            "containment",
            json!({
                "all_contained": rep.all_contained(),
                "contained": components_json(&rep.contained),
                "candidate_only": components_json(&rep.candidate_only),
            }),
        );
    }
    Ok(())
}

/// Timings are kept out of the document so that it stays reproducible.
fn run_suite(spec: &JobSpec, body: &mut Body) {
    let cfg = SuiteConfig {
        budget: spec.budget,
        bounds: spec.bounds,
        box_size: spec.box_size,
    };
    let outcomes = corpus::run_all(&cfg);
    let criteria: Vec<Value> = outcomes
        .iter()
        .map(|o| {
            json!({
                "id": o.id,
                "title": o.title,
                "passed": o.passed(),
                "checks": o.checks.iter().map(|c| json!({
                    "label": c.label,
                    "passed": c.passed,
                    "detail": c.detail,
                    "known_defect": c.known_defect,
                })).collect::<Vec<_>>(),
            })
        })
        .collect();
    let unexpected: usize = outcomes.iter().map(|o| o.unexpected_failures().len()).sum();
    body.report("criteria", json!(criteria));
    body.report("unexpected_failures", json!(unexpected));
}

/// Canonical bytes of a result document.
pub fn render(doc: &Value) -> String {
    let mut s = serde_json::to_string_pretty(doc).expect("serializable");
    s.push('\n');
    s
}
