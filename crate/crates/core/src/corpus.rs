//! The reference corpus and the checks run against it.
//!
//! Each criterion returns a [`CriterionOutcome`] made of individual checks.
//! A check that fails for a documented reason carries a `known_defect` note
//! together with the evidence gathered for it; such a note is attached only
//! after the evidence has been recomputed.

use std::time::{Duration, Instant};

use serde::Serialize;

use crate::algebra::{univariate_rational_roots, LinearForm, MultiPoly, Rational};
use crate::error::Result;
use crate::groebner::{left_buchberger, Budget, TermOrder};
use crate::io::format::factored;
use crate::io::parse::{parse_poly, parse_s_poly, parse_tuple};
use crate::locus::{
    check_structure, diagonal_specialization, exp_image, exp_locus, locus_components, locus_union, CircleLocus,
    HyperplaneComponent, SupportLocus,
};
use crate::oracle::{cross_validate, find_witness, AnsatzBounds};
use crate::pipeline::{Annihilator, BSIdeal, InputTuple, MultiIndex};
use crate::weyl::{weyl_mul, WeylElement};
use crate::zeta::{conjecture_check, Divisor, ResolutionData};

/// Single polynomials with their b-functions.
pub const BFUNCTIONS: &[(&str, &str)] = &[
    ("x", "s+1"),
    ("x^2", "(s+1)*(s+1/2)"),
    ("x^3", "(s+1)*(s+1/3)*(s+2/3)"),
    ("x^4", "(s+1)*(s+1/4)*(s+1/2)*(s+3/4)"),
    ("x^2+y^2", "(s+1)^2"),
    ("x^2+y^3", "(s+1)*(s+5/6)*(s+7/6)"),
    ("x*y", "(s+1)^2"),
];

/// Pairs used for the multivariate checks.
pub const TUPLES: &[[&str; 2]] = &[["x", "y"], ["x", "x"], ["x", "x+y"], ["x", "x*y"]];

/// The multi-indices `(1,1)`, `(1,0)`, `(0,1)`.
pub const MULTI_INDICES: [[u32; 2]; 3] = [[1, 1], [1, 0], [0, 1]];

/// Principal Bernstein-Sato ideals asserted for pairs.
pub const MULTIVARIATE: &[([&str; 2], [u32; 2], &str)] = &[
    (["x", "y"], [1, 1], "(s1+1)*(s2+1)"),
    (["x", "x"], [1, 1], "s1+s2+2"),
    (["x", "y"], [1, 0], "s1+1"),
];

/// Pairs for the union formula.
pub const UNION_TUPLES: &[[&str; 2]] = &[["x", "y"], ["x", "x+y"], ["x", "x*y"]];

/// Numerical data of the minimal embedded resolution of the cusp.
pub fn cusp_resolution() -> ResolutionData {
    resolution(1, &[(&[1], 1), (&[2], 2), (&[3], 3), (&[6], 5)], "cusp x^2+y^3")
}

/// `(x, y)` is already in normal crossings.
pub fn normal_crossing_resolution() -> ResolutionData {
    resolution(2, &[(&[1, 0], 1), (&[0, 1], 1)], "normal crossings (x, y)")
}

fn resolution(r: usize, divs: &[(&[u32], u32)], label: &str) -> ResolutionData {
    ResolutionData {
        r,
        divisors: divs
            .iter()
            .enumerate()
            .map(|(k, (n, nu))| Divisor {
                n: n.to_vec(),
                nu: *nu,
                label: format!("E{}", k + 1),
            })
            .collect(),
        label: label.into(),
    }
}

/// Outcome of one check inside a criterion.
#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub label: String,
    pub passed: bool,
    pub detail: String,
    pub elapsed_ms: u128,
    /// Why a failing check is expected to fail, with the evidence found.
    pub known_defect: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CriterionOutcome {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub elapsed_ms: u128,
    pub limit_ms: u128,
}

impl CriterionOutcome {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed) && self.elapsed_ms <= self.limit_ms
    }

    /// Failures not covered by a verified defect note, and time overruns.
    pub fn unexpected_failures(&self) -> Vec<String> {
        let mut out: Vec<String> = self
            .checks
            .iter()
            .filter(|c| !c.passed && c.known_defect.is_none())
            .map(|c| format!("{}: {}", c.label, c.detail))
            .collect();
        if self.elapsed_ms > self.limit_ms {
            out.push(format!("took {} ms, limit {} ms", self.elapsed_ms, self.limit_ms));
        }
        out
    }

    /// One line: `criterion N: PASS|FAIL title (k/n checks, t s)`.
    pub fn summary(&self) -> String {
        let ok = self.checks.iter().filter(|c| c.passed).count();
        let mut line = format!(
            "criterion {}: {} {} ({}/{} checks, {:.2} s)",
            self.id,
            if self.passed() { "PASS" } else { "FAIL" },
            self.title,
            ok,
            self.checks.len(),
            self.elapsed_ms as f64 / 1000.0
        );
        for c in self.checks.iter().filter(|c| c.known_defect.is_some()) {
            line.push_str(&format!(" [known defect in {}]", c.label));
        }
        line
    }
}

/// Collects checks, each with its own time limit.
struct Recorder {
    checks: Vec<Check>,
    start: Instant,
}

impl Recorder {
    fn new() -> Self {
        Recorder {
            checks: Vec::new(),
            start: Instant::now(),
        }
    }

    /// Runs `f`; an error fails the check, as does exceeding `limit`.
    fn run(&mut self, label: impl Into<String>, limit: Option<Duration>, f: impl FnOnce() -> Result<CheckResult>) {
        let t = Instant::now();
        let res = f();
        let elapsed = t.elapsed();
        let (mut passed, mut detail, known_defect) = match res {
            Ok(c) => (c.passed, c.detail, c.known_defect),
            Err(e) => (false, format!("error: {e}"), None),
        };
        if let Some(limit) = limit {
            if elapsed > limit {
                passed = false;
                detail = format!("{detail}; over the {} s limit", limit.as_secs());
            }
        }
        self.checks.push(Check {
            label: label.into(),
            passed,
            detail,
            elapsed_ms: elapsed.as_millis(),
            known_defect,
        });
    }

    fn finish(self, id: u8, title: &'static str, limit: Duration) -> CriterionOutcome {
        CriterionOutcome {
            id,
            title,
            checks: self.checks,
            elapsed_ms: self.start.elapsed().as_millis(),
            limit_ms: limit.as_millis(),
        }
    }
}

struct CheckResult {
    passed: bool,
    detail: String,
    known_defect: Option<String>,
}

impl CheckResult {
    fn new(passed: bool, detail: impl Into<String>) -> Self {
        CheckResult {
            passed,
            detail: detail.into(),
            known_defect: None,
        }
    }
}

/// Settings shared by every criterion.
#[derive(Clone, Copy, Debug)]
pub struct SuiteConfig {
    pub budget: Budget,
    pub bounds: AnsatzBounds,
    pub box_size: i64,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            budget: Budget::default(),
            bounds: AnsatzBounds::default(),
            box_size: 10,
        }
    }
}

const MINUTE: Duration = Duration::from_secs(60);
/// Reported limit for criteria that carry no time bound of their own.
const UNBOUNDED: Duration = Duration::from_secs(3600);

fn ideal_of(fs: &[&str], m: &[u32], budget: &Budget) -> Result<(InputTuple, MultiIndex, BSIdeal)> {
    let input = parse_tuple(fs)?;
    let m = MultiIndex::new(m.to_vec());
    let ideal = Annihilator::compute(&input, budget)?.bs_ideal(&m)?;
    Ok((input, m, ideal))
}

fn show_ideal(ideal: &BSIdeal) -> String {
    let gens: Vec<String> = ideal
        .generators
        .iter()
        .map(|g| factored(g).unwrap_or_else(|_| g.to_string()))
        .collect();
    format!("<{}>", gens.join(", "))
}

/// Whether `ideal = ⟨g⟩`.
fn equals_principal(ideal: &BSIdeal, g: &MultiPoly) -> Result<bool> {
    if !ideal.contains(g)? {
        return Ok(false);
    }
    for h in &ideal.generators {
        if h.embed_by_name(g.signature())?.try_exact_div(g)?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

fn pair_label(fs: &[&str], m: &[u32]) -> String {
    format!("({}) m={:?}", fs.join(", "), m)
}

/// Exact b-functions of the single-polynomial corpus.
pub fn criterion_1(cfg: &SuiteConfig) -> CriterionOutcome {
    let mut rec = Recorder::new();
    for &(f, expected) in BFUNCTIONS {
        rec.run(format!("b_{{{f}}}"), Some(Duration::from_secs(10)), || {
            let b = crate::pipeline::bfunction(&parse_poly(f)?, &cfg.budget)?;
            let want = parse_s_poly(expected, 1)?;
            Ok(CheckResult::new(b == want, format!("got {}, expected {expected}", factored(&b)?)))
        });
    }
    rec.finish(1, "b-function corpus", UNBOUNDED)
}

/// Principal ideals for pairs. A mismatch counts as a known defect only
/// when the asserted generator is shown not to lie in the ideal and every
/// computed generator carries a witness. At `m = (1, …, 1)` non-membership
/// is certified on the diagonal: restricting `b ∈ B_F` to `s_i = σ` gives an
/// element of `B_g` for `g = ∏ f_i`, hence a multiple of `b_g(σ)`. Otherwise
/// the asserted generator must lack a witness inside the bounds.
pub fn criterion_2(cfg: &SuiteConfig) -> CriterionOutcome {
    let mut rec = Recorder::new();
    for &(fs, m, expected) in MULTIVARIATE {
        rec.run(pair_label(&fs, &m), Some(MINUTE), || {
            let (input, mi, ideal) = ideal_of(&fs, &m, &cfg.budget)?;
            let want = parse_s_poly(expected, 2)?;
            if equals_principal(&ideal, &want)? {
                return Ok(CheckResult::new(true, format!("{} as expected", show_ideal(&ideal))));
            }
            let detail = format!("got {}, expected <{expected}>", show_ideal(&ideal));
            let mut result = CheckResult::new(false, detail);
            let excluded = if m.iter().all(|&k| k == 1) {
                let g = input.f().iter().fold(MultiPoly::one(input.f()[0].signature()), |acc, f| &acc * f);
                let bg = crate::pipeline::bfunction(&g, &cfg.budget)?;
                let restricted = want.embed(bg.signature(), &vec![0; want.signature().len()]);
                let divisible = !restricted.is_zero() && restricted.try_exact_div(&bg)?.is_none();
                divisible.then(|| {
                    format!(
                        "{expected} restricted to the diagonal is {}, not a multiple of b_{{{g}}} = {}",
                        factored(&restricted).unwrap_or_else(|_| restricted.to_string()),
                        factored(&bg).unwrap_or_default()
                    )
                })
            } else {
                find_witness(&want, &input, &mi, &cfg.bounds)?
                    .is_none()
                    .then(|| format!("{expected} has no witness up to order {}", cfg.bounds.max_order))
            };
            let report = cross_validate(&ideal, &input, &mi, &cfg.bounds)?;
            if let (Some(why), true) = (excluded, report.all_verified()) {
                let witnesses: Vec<String> = report
                    .entries
                    .iter()
                    .filter_map(|e| {
                        let (_, p) = e.witness.as_ref()?;
                        Some(format!("{} via {p}", factored(&e.generator).unwrap_or_default()))
                    })
                    .collect();
                result.known_defect = Some(format!("{why}; computed generators certified: {}", witnesses.join("; ")));
            }
            Ok(result)
        });
    }
    rec.finish(2, "multivariate corpus", UNBOUNDED)
}

/// Roots of every one-parameter output are negative rationals and account
/// for the whole polynomial.
pub fn criterion_3(cfg: &SuiteConfig) -> CriterionOutcome {
    let mut rec = Recorder::new();
    for &(f, _) in BFUNCTIONS {
        rec.run(format!("b_{{{f}}}"), None, || {
            let b = crate::pipeline::bfunction(&parse_poly(f)?, &cfg.budget)?;
            let roots = univariate_rational_roots(&b)?;
            let count: u32 = roots.iter().map(|(_, k)| k).sum();
            let negative = roots.iter().all(|(q, _)| q < &Rational::from_integer(0.into()));
            let ok = negative && count == b.total_degree();
            let shown: Vec<String> = roots.iter().map(|(q, k)| format!("{q}^{k}")).collect();
            Ok(CheckResult::new(ok, format!("roots {}", shown.join(", "))))
        });
    }
    rec.finish(3, "Kashiwara negativity", MINUTE)
}

/// Every corpus ideal: hyperplane shape, support condition, no remainder.
pub fn criterion_4(cfg: &SuiteConfig) -> CriterionOutcome {
    let mut rec = Recorder::new();
    let mut cases: Vec<(Vec<&str>, Vec<u32>)> = BFUNCTIONS.iter().map(|(f, _)| (vec![*f], vec![1])).collect();
    for fs in TUPLES {
        for m in MULTI_INDICES {
            cases.push((fs.to_vec(), m.to_vec()));
        }
    }
    for (fs, m) in cases {
        rec.run(pair_label(&fs, &m), None, || {
            let (_, mi, ideal) = ideal_of(&fs, &m, &cfg.budget)?;
            let report = check_structure(&ideal, &mi, cfg.box_size)?;
            let dec = &report.decomposition;
            let ok = report.passes() && dec.is_fully_resolved() && dec.atypical.is_empty();
            let comps: Vec<String> = dec.components.iter().map(ToString::to_string).collect();
            let mut detail = format!("components [{}]", comps.join(", "));
            if !ok {
                detail.push_str(&format!(
                    "; shape {:?}, support {:?}, unresolved {}",
                    report.shape_violations,
                    report.support_violations,
                    dec.unresolved.len()
                ));
            }
            Ok(CheckResult::new(ok, detail))
        });
    }
    rec.finish(4, "structure of zero loci", UNBOUNDED)
}

fn locus_of(fs: &[&str], m: [u32; 2], budget: &Budget) -> Result<SupportLocus> {
    exp_locus(&ideal_of(fs, &m, budget)?.2)
}

/// `Exp Z(B^{(1,1)}) = Exp Z(B^{(1,0)}) ∪ Exp Z(B^{(0,1)})`.
pub fn criterion_5(cfg: &SuiteConfig) -> CriterionOutcome {
    let mut rec = Recorder::new();
    for fs in UNION_TUPLES {
        rec.run(format!("({})", fs.join(", ")), Some(2 * MINUTE), || {
            let full = locus_of(fs, [1, 1], &cfg.budget)?;
            let union = locus_union(&locus_of(fs, [1, 0], &cfg.budget)?, &locus_of(fs, [0, 1], &cfg.budget)?)?;
            Ok(CheckResult::new(full == union, format!("{full} vs {union}")))
        });
    }
    rec.finish(5, "union formula", UNBOUNDED)
}

fn show_circle(c: &CircleLocus) -> String {
    let a: Vec<String> = c.angles.iter().map(ToString::to_string).collect();
    format!("{{{}}}{}", a.join(", "), if c.everything { " and all of C*" } else { "" })
}

/// Pulling `Exp Z(B_{(x,y)})` back along `λ ↦ (λ, λ)` gives `Exp` of the
/// roots of `b_{xy}`.
pub fn criterion_6(cfg: &SuiteConfig) -> CriterionOutcome {
    let mut rec = Recorder::new();
    rec.run("(x, y) along (1, 1)", None, || {
        let locus = locus_of(&["x", "y"], [1, 1], &cfg.budget)?;
        let pulled = diagonal_specialization(&locus, &[1, 1])?;
        let b = crate::pipeline::bfunction(&parse_poly("x*y")?, &cfg.budget)?;
        let mut direct = SupportLocus::empty(1);
        for (root, _) in univariate_rational_roots(&b)? {
            let form = LinearForm::new(vec![root.denom().clone()], -root.numer().clone(), 1)?;
            let h = HyperplaneComponent::from_form(&form)
                .ok_or_else(|| crate::Error::InvalidInput(format!("root {root} is not negative")))?;
            direct.insert(exp_image(&h))?;
        }
        let direct = CircleLocus::from_locus(&direct)?;
        Ok(CheckResult::new(
            pulled == direct,
            format!("pulled back {}, from b_xy {}", show_circle(&pulled), show_circle(&direct)),
        ))
    });
    rec.finish(6, "diagonal specialization", UNBOUNDED)
}

/// Candidate poles from resolution data lie in the zero locus.
pub fn criterion_7(cfg: &SuiteConfig) -> CriterionOutcome {
    let mut rec = Recorder::new();
    let cases = [
        (cusp_resolution(), vec!["x^2+y^3"], vec![1], vec!["s + 1", "6*s + 5"]),
        (normal_crossing_resolution(), vec!["x", "y"], vec![1, 1], vec!["s2 + 1", "s1 + 1"]),
    ];
    for (data, fs, m, expected) in cases {
        let label = data.label.clone();
        rec.run(label, Some(Duration::from_secs(10)), || {
            let (_, _, ideal) = ideal_of(&fs, &m, &cfg.budget)?;
            let report = conjecture_check(&data, &ideal)?;
            let shown: Vec<String> = report.candidates.iter().map(ToString::to_string).collect();
            let ok = report.all_contained() && shown == expected;
            Ok(CheckResult::new(
                ok,
                format!("candidates [{}], {} outside Z(B)", shown.join(", "), report.candidate_only.len()),
            ))
        });
    }
    rec.finish(7, "polar candidates in Z(B)", UNBOUNDED)
}

fn corpus_cases() -> Vec<(Vec<&'static str>, Vec<u32>)> {
    let mut cases: Vec<(Vec<&str>, Vec<u32>)> = BFUNCTIONS.iter().map(|(f, _)| (vec![*f], vec![1])).collect();
    for fs in TUPLES {
        for m in MULTI_INDICES {
            cases.push((fs.to_vec(), m.to_vec()));
        }
    }
    cases
}

/// Every generator of every corpus ideal gets a witness, and the oracle's
/// own b-function matches at `r = 1`.
pub fn criterion_8(cfg: &SuiteConfig) -> CriterionOutcome {
    let mut rec = Recorder::new();
    for (fs, m) in corpus_cases() {
        rec.run(pair_label(&fs, &m), None, || {
            let (input, mi, ideal) = ideal_of(&fs, &m, &cfg.budget)?;
            let report = cross_validate(&ideal, &input, &mi, &cfg.bounds)?;
            let mut ok = report.all_verified();
            let mut parts: Vec<String> = report
                .entries
                .iter()
                .map(|e| match &e.witness {
                    Some((k, p)) => format!("{} by order {k}: {p}", factored(&e.generator).unwrap_or_default()),
                    None => format!("{} unverified", factored(&e.generator).unwrap_or_default()),
                })
                .collect();
            if input.r() == 1 {
                let agrees = report.oracle_b.as_ref() == ideal.generators.first();
                ok &= agrees;
                if !agrees {
                    parts.push(format!("oracle b {:?}", report.oracle_b.as_ref().map(ToString::to_string)));
                }
            }
            Ok(CheckResult::new(ok, parts.join("; ")))
        });
    }
    rec.finish(8, "oracle cross-validation", 10 * MINUTE)
}

/// Deterministic structural properties: Gröbner bases of every corpus
/// computation satisfy the S-pair criterion and contain what they should,
/// and `Exp` is invariant under integer translation of each component.
pub fn criterion_9(cfg: &SuiteConfig) -> CriterionOutcome {
    let mut rec = Recorder::new();
    for (fs, m) in corpus_cases() {
        rec.run(format!("bases for {}", pair_label(&fs, &m)), None, || groebner_soundness(&fs, &m, cfg));
    }
    rec.run("translation invariance", None, || {
        let mut comps = Vec::new();
        for (fs, m) in corpus_cases() {
            let (_, _, ideal) = ideal_of(&fs, &m, &cfg.budget)?;
            comps.extend(locus_components(&ideal)?.components);
        }
        comps.push(HyperplaneComponent::new(vec![2, 4], 3)?);
        comps.push(HyperplaneComponent::new(vec![6, 0, 9], 5)?);
        let bad: Vec<String> = comps
            .iter()
            .flat_map(|h| (-5..=5).filter(|&k| !crate::locus::translation_invariant(h, k)).map(move |k| format!("{h} k={k}")))
            .collect();
        Ok(CheckResult::new(bad.is_empty(), format!("{} components x 11 shifts; failures {bad:?}", comps.len())))
    });
    rec.finish(9, "property suites (deterministic part)", UNBOUNDED)
}

/// For `Ann + D[s]·f^m` under degrevlex: the basis passes Buchberger's
/// criterion, reduces the input generators, left multiples of them, and
/// every generator of `B_F^m` to zero; the basis of `B_F^m` itself passes.
fn groebner_soundness(fs: &[&str], m: &[u32], cfg: &SuiteConfig) -> Result<CheckResult> {
    let input = parse_tuple(fs)?;
    let mi = MultiIndex::new(m.to_vec());
    let ann = Annihilator::compute(&input, &cfg.budget)?;
    let sig = ann.signature().clone();
    let mut gens = ann.generators().to_vec();
    gens.push(WeylElement::from_poly(&sig, &input.power_product(&mi))?);
    let gb = left_buchberger(&gens, &TermOrder::degrevlex(&sig), &cfg.budget)?;
    let mut failures = Vec::new();
    if !gb.satisfies_buchberger_criterion() {
        failures.push("S-pair criterion".to_string());
    }
    let multipliers: Vec<WeylElement> = (0..sig.n())
        .flat_map(|i| [WeylElement::x(&sig, i), WeylElement::d(&sig, i)])
        .chain((0..sig.r()).map(|j| WeylElement::s(&sig, j)))
        .collect();
    for g in &gens {
        if !gb.contains(g)? {
            failures.push(format!("generator {g} not reduced to zero"));
        }
        for u in &multipliers {
            let p = &weyl_mul(u, g)? + g;
            if !gb.contains(&p)? {
                failures.push(format!("{u}*g + g not reduced to zero for g = {g}"));
            }
        }
    }
    let ideal = ann.bs_ideal(&mi)?;
    for b in &ideal.generators {
        if !gb.contains(&WeylElement::from_poly(&sig, &b.embed_by_name(&sig.xs_signature())?)?)? {
            failures.push(format!("{b} not in Ann + D[s]f^m"));
        }
    }
    let psig = crate::weyl::WeylSignature::parameters_only(ideal.r);
    let bgens: Vec<WeylElement> = ideal
        .generators
        .iter()
        .map(|b| WeylElement::from_poly(&psig, b))
        .collect::<Result<_>>()?;
    let sgb = left_buchberger(&bgens, &TermOrder::degrevlex(&psig), &cfg.budget)?;
    if !sgb.satisfies_buchberger_criterion() || sgb.generators != bgens {
        failures.push("B_F^m basis is not a reduced Groebner basis".into());
    }
    let ok = failures.is_empty();
    let detail = if ok {
        format!("{} basis elements, {} generators checked", gb.generators.len(), gens.len())
    } else {
        failures.join("; ")
    };
    Ok(CheckResult::new(ok, detail))
}

/// Runs criteria 1 through 9 in order.
pub fn run_all(cfg: &SuiteConfig) -> Vec<CriterionOutcome> {
    vec![
        criterion_1(cfg),
        criterion_2(cfg),
        criterion_3(cfg),
        criterion_4(cfg),
        criterion_5(cfg),
        criterion_6(cfg),
        criterion_7(cfg),
        criterion_8(cfg),
        criterion_9(cfg),
    ]
}
