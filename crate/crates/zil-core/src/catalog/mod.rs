//! The identity registry and its check/adjudication engine.
//!
//! Each [`Identity`] bundles evaluators for both sides of a classical series
//! or integral identity, built from [`crate::specfun`], [`crate::sumkit`] and
//! [`crate::quadkit`].  Entries come in three flavours:
//!
//! * **proven** — both sides are evaluated at every recorded sample point and
//!   must agree to the entry's tolerance class;
//! * **adjudicate** — the printed sources disagree (or a printed value is
//!   suspect), so an independently computed oracle value classifies every
//!   printed variant as consistent or inconsistent at a fixed 10⁻¹⁰
//!   tolerance;
//! * **conjecture** — both sides are evaluated and reported verbatim, with no
//!   verdict and no effect on suite pass/fail.
//!
//! [`load_catalog`] returns the registry in its canonical order, and
//! [`run_suite`] evaluates a filtered selection (optionally across worker
//! threads) into a deterministic [`Report`].

mod s5;
mod s6a;
mod s6b;
mod s6c;
mod s7;
mod s8;
mod util;

use crate::numkernel::{abs_err, rel_err};
use crate::{Context, Error, Real, Result};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};
use std::time::{Duration, Instant};

/// An evaluator for one side (or one oracle/variant) of an identity.
pub type Eval = Arc<dyn Fn(&Context) -> Result<Real> + Send + Sync>;

/// Wraps a closure into an [`Eval`].
pub(crate) fn ev<F>(f: F) -> Eval
where
    F: Fn(&Context) -> Result<Real> + Send + Sync + 'static,
{
    Arc::new(f)
}

/// Which part of the catalog an identity belongs to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Section {
    S5,
    S6,
    S7,
    S8,
}

impl Section {
    pub fn as_str(self) -> &'static str {
        match self {
            Section::S5 => "S5",
            Section::S6 => "S6",
            Section::S7 => "S7",
            Section::S8 => "S8",
        }
    }

    /// Parses `"S5".."S8"` (case-insensitive).
    pub fn parse(s: &str) -> Option<Section> {
        match s.to_ascii_uppercase().as_str() {
            "S5" => Some(Section::S5),
            "S6" => Some(Section::S6),
            "S7" => Some(Section::S7),
            "S8" => Some(Section::S8),
            _ => None,
        }
    }
}

impl std::fmt::Display for Section {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Check discipline applied to an identity.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Status {
    Proven,
    Adjudicate,
    Conjecture,
}

impl Status {
    pub fn as_str(self) -> &'static str {
        match self {
            Status::Proven => "proven",
            Status::Adjudicate => "adjudicate",
            Status::Conjecture => "conjecture",
        }
    }

    pub fn parse(s: &str) -> Option<Status> {
        match s.to_ascii_lowercase().as_str() {
            "proven" => Some(Status::Proven),
            "adjudicate" => Some(Status::Adjudicate),
            "conjecture" => Some(Status::Conjecture),
            _ => None,
        }
    }
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Tolerance tier for proven entries.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TolClass {
    /// `10^{-(digits-5)}` — exact-arithmetic or near-exact routes.
    Tight,
    /// `10^{-(digits-10)}` — the default numeric tier.
    Standard,
    /// `10^{-12}` — conditionally convergent (Fourier-boundary) members.
    Slow,
}

impl TolClass {
    pub fn as_str(self) -> &'static str {
        match self {
            TolClass::Tight => "tight",
            TolClass::Standard => "standard",
            TolClass::Slow => "slow",
        }
    }

    /// The relative-error bound this class grants at the context's precision.
    pub fn tolerance(self, ctx: &Context) -> Real {
        match self {
            TolClass::Tight => ctx.pow10(-(ctx.digits() as i32 - 5)),
            TolClass::Standard => ctx.pow10(-(ctx.digits() as i32 - 10)),
            TolClass::Slow => ctx.pow10(-12),
        }
    }
}

/// One sample point of a proven identity: both sides at fixed parameters.
pub struct SamplePoint {
    pub label: String,
    pub lhs: Eval,
    pub rhs: Eval,
}

/// One printed form competing in an adjudication.
pub struct Variant {
    pub label: String,
    pub value: Eval,
}

/// The evaluation payload of an identity.
pub enum Kind {
    Proven {
        points: Vec<SamplePoint>,
    },
    Adjudicate {
        oracle_label: String,
        oracle: Eval,
        variants: Vec<Variant>,
    },
    Conjecture {
        lhs_label: String,
        rhs_label: String,
        lhs: Eval,
        rhs: Eval,
    },
}

/// A catalog entry.
pub struct Identity {
    pub id: &'static str,
    pub section: Section,
    /// Equation label in the collection the catalog is drawn from.
    pub anchor: &'static str,
    pub tol_class: TolClass,
    pub kind: Kind,
}

impl Identity {
    pub fn status(&self) -> Status {
        match self.kind {
            Kind::Proven { .. } => Status::Proven,
            Kind::Adjudicate { .. } => Status::Adjudicate,
            Kind::Conjecture { .. } => Status::Conjecture,
        }
    }
}

/// Builder shorthands used by the section files.
pub(crate) fn proven(
    id: &'static str,
    section: Section,
    anchor: &'static str,
    tol_class: TolClass,
    points: Vec<SamplePoint>,
) -> Identity {
    Identity {
        id,
        section,
        anchor,
        tol_class,
        kind: Kind::Proven { points },
    }
}

pub(crate) fn adjudicate(
    id: &'static str,
    section: Section,
    anchor: &'static str,
    oracle_label: &str,
    oracle: Eval,
    variants: Vec<Variant>,
) -> Identity {
    Identity {
        id,
        section,
        anchor,
        tol_class: TolClass::Standard,
        kind: Kind::Adjudicate {
            oracle_label: oracle_label.to_string(),
            oracle,
            variants,
        },
    }
}

pub(crate) fn conjecture(
    id: &'static str,
    section: Section,
    anchor: &'static str,
    lhs_label: &str,
    lhs: Eval,
    rhs_label: &str,
    rhs: Eval,
) -> Identity {
    Identity {
        id,
        section,
        anchor,
        tol_class: TolClass::Standard,
        kind: Kind::Conjecture {
            lhs_label: lhs_label.to_string(),
            rhs_label: rhs_label.to_string(),
            lhs,
            rhs,
        },
    }
}

pub(crate) fn point(label: &str, lhs: Eval, rhs: Eval) -> SamplePoint {
    SamplePoint {
        label: label.to_string(),
        lhs,
        rhs,
    }
}

pub(crate) fn variant(label: &str, value: Eval) -> Variant {
    Variant {
        label: label.to_string(),
        value,
    }
}

/// Classification of one printed variant against the adjudication oracle.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum VariantVerdict {
    Consistent,
    Inconsistent,
}

impl VariantVerdict {
    pub fn as_str(self) -> &'static str {
        match self {
            VariantVerdict::Consistent => "consistent",
            VariantVerdict::Inconsistent => "inconsistent",
        }
    }
}

/// Outcome of checking one identity.
#[derive(Clone, Debug)]
pub enum Verdict {
    Pass,
    Fail,
    Adjudicated(Vec<(String, VariantVerdict)>),
    ConjectureValue,
}

impl Verdict {
    /// Short single-word form (CSV column, summary counting).
    pub fn token(&self) -> &'static str {
        match self {
            Verdict::Pass => "pass",
            Verdict::Fail => "fail",
            Verdict::Adjudicated(_) => "adjudicated",
            Verdict::ConjectureValue => "conjecture_value",
        }
    }

    /// Long form carrying per-variant classifications.
    pub fn describe(&self) -> String {
        match self {
            Verdict::Adjudicated(parts) => {
                let inner: Vec<String> = parts
                    .iter()
                    .map(|(label, v)| format!("{label} -> {}", v.as_str()))
                    .collect();
                format!("adjudicated({})", inner.join("; "))
            }
            other => other.token().to_string(),
        }
    }
}

/// Result of checking one catalog entry.
#[derive(Clone, Debug)]
pub struct CheckResult {
    pub id: String,
    pub anchor: String,
    pub section: Section,
    pub status: Status,
    pub tol_class: TolClass,
    /// Worst-point left side (proven), oracle value (adjudicate), or left
    /// side (conjecture).  Absent when evaluation failed before a value.
    pub lhs: Option<Real>,
    /// Worst-point right side, first printed variant, or conjecture right.
    pub rhs: Option<Real>,
    pub abs_err: Option<Real>,
    pub rel_err: Option<Real>,
    pub verdict: Verdict,
    /// One line per sample point or per variant.
    pub detail: Vec<String>,
    /// Evaluator failure, when one occurred.
    pub error: Option<String>,
    pub elapsed: Duration,
}

impl CheckResult {
    /// Whether this result should fail a verification run.
    pub fn is_failure(&self) -> bool {
        matches!(self.verdict, Verdict::Fail)
    }
}

/// The full registry, in canonical (report) order.
pub fn load_catalog() -> Vec<Identity> {
    let mut entries = Vec::new();
    entries.extend(s5::entries());
    entries.extend(s6a::entries());
    entries.extend(s6b::entries());
    entries.extend(s6c::entries());
    entries.extend(s7::entries());
    entries.extend(s8::entries());
    debug_assert!({
        let mut ids: Vec<&str> = entries.iter().map(|e| e.id).collect();
        ids.sort_unstable();
        let before = ids.len();
        ids.dedup();
        before == ids.len()
    });
    entries
}

fn format_value(ctx: &Context, v: &Real) -> String {
    ctx.to_decimal(v)
}

fn check_proven(ctx: &Context, ident: &Identity, points: &[SamplePoint]) -> CheckResult {
    let start = Instant::now();
    let tol = ident.tol_class.tolerance(ctx);
    let mut detail = Vec::new();
    let mut error = None;
    let mut worst: Option<(Real, Real, Real, Real)> = None;
    let mut all_ok = true;
    for pt in points {
        let lhs = (pt.lhs)(ctx);
        let rhs = (pt.rhs)(ctx);
        match (lhs, rhs) {
            (Ok(l), Ok(r)) => {
                let re = rel_err(&l, &r);
                let ae = abs_err(&l, &r);
                let ok = re <= tol;
                if !ok {
                    all_ok = false;
                }
                detail.push(format!(
                    "{}: lhs = {}, rhs = {}, rel_err = {} [{}]",
                    pt.label,
                    format_value(ctx, &l),
                    format_value(ctx, &r),
                    format_value(ctx, &re),
                    if ok { "ok" } else { "exceeds tolerance" }
                ));
                let replace = match &worst {
                    Some((_, _, _, w)) => re > *w,
                    None => true,
                };
                if replace {
                    worst = Some((l, r, ae, re));
                }
            }
            (l, r) => {
                all_ok = false;
                for (side, res) in [("lhs", l), ("rhs", r)] {
                    if let Err(e) = res {
                        detail.push(format!("{}: {side} failed: {e}", pt.label));
                        if error.is_none() {
                            error = Some(e.to_string());
                        }
                    }
                }
            }
        }
    }
    let (lhs, rhs, ae, re) = match worst {
        Some((l, r, a, e)) => (Some(l), Some(r), Some(a), Some(e)),
        None => (None, None, None, None),
    };
    CheckResult {
        id: ident.id.to_string(),
        anchor: ident.anchor.to_string(),
        section: ident.section,
        status: ident.status(),
        tol_class: ident.tol_class,
        lhs,
        rhs,
        abs_err: ae,
        rel_err: re,
        verdict: if all_ok { Verdict::Pass } else { Verdict::Fail },
        detail,
        error,
        elapsed: start.elapsed(),
    }
}

/// Printed-variant classifications are decided at this fixed relative
/// tolerance, independent of context precision: the misprints at stake differ
/// from the true values at `O(1)`–`O(10⁻²)`, so ten digits is decisive while
/// staying robust to slow-class evaluations.
pub const ADJUDICATION_TOL_EXP: i32 = -10;

fn check_adjudicate(
    ctx: &Context,
    ident: &Identity,
    oracle_label: &str,
    oracle: &Eval,
    variants: &[Variant],
) -> CheckResult {
    let start = Instant::now();
    let tol = ctx.pow10(ADJUDICATION_TOL_EXP);
    let mut detail = Vec::new();
    match oracle(ctx) {
        Ok(oracle_value) => {
            detail.push(format!(
                "oracle {oracle_label} = {}",
                format_value(ctx, &oracle_value)
            ));
            let mut classified = Vec::new();
            let mut first_variant: Option<Real> = None;
            let mut error = None;
            for var in variants {
                match (var.value)(ctx) {
                    Ok(v) => {
                        let re = rel_err(&v, &oracle_value);
                        let verdict = if re <= tol {
                            VariantVerdict::Consistent
                        } else {
                            VariantVerdict::Inconsistent
                        };
                        detail.push(format!(
                            "variant {}: value = {}, rel_err vs oracle = {} -> {}",
                            var.label,
                            format_value(ctx, &v),
                            format_value(ctx, &re),
                            verdict.as_str()
                        ));
                        if first_variant.is_none() {
                            first_variant = Some(v);
                        }
                        classified.push((var.label.clone(), verdict));
                    }
                    Err(e) => {
                        detail.push(format!("variant {}: evaluation failed: {e}", var.label));
                        if error.is_none() {
                            error = Some(e.to_string());
                        }
                        classified.push((var.label.clone(), VariantVerdict::Inconsistent));
                    }
                }
            }
            let (ae, re) = match &first_variant {
                Some(v) => (
                    Some(abs_err(&oracle_value, v)),
                    Some(rel_err(&oracle_value, v)),
                ),
                None => (None, None),
            };
            CheckResult {
                id: ident.id.to_string(),
                anchor: ident.anchor.to_string(),
                section: ident.section,
                status: ident.status(),
                tol_class: ident.tol_class,
                lhs: Some(oracle_value),
                rhs: first_variant,
                abs_err: ae,
                rel_err: re,
                verdict: Verdict::Adjudicated(classified),
                detail,
                error,
                elapsed: start.elapsed(),
            }
        }
        Err(e) => CheckResult {
            id: ident.id.to_string(),
            anchor: ident.anchor.to_string(),
            section: ident.section,
            status: ident.status(),
            tol_class: ident.tol_class,
            lhs: None,
            rhs: None,
            abs_err: None,
            rel_err: None,
            verdict: Verdict::Fail,
            detail: vec![format!("oracle {oracle_label} failed: {e}")],
            error: Some(e.to_string()),
            elapsed: start.elapsed(),
        },
    }
}

fn check_conjecture(
    ctx: &Context,
    ident: &Identity,
    lhs_label: &str,
    rhs_label: &str,
    lhs: &Eval,
    rhs: &Eval,
) -> CheckResult {
    let start = Instant::now();
    let mut detail = Vec::new();
    let mut error = None;
    let mut get = |label: &str, e: &Eval| match e(ctx) {
        Ok(v) => {
            detail.push(format!("{label} = {}", format_value(ctx, &v)));
            Some(v)
        }
        Err(err) => {
            detail.push(format!("{label} failed: {err}"));
            if error.is_none() {
                error = Some(err.to_string());
            }
            None
        }
    };
    let l = get(lhs_label, lhs);
    let r = get(rhs_label, rhs);
    let (ae, re) = match (&l, &r) {
        (Some(a), Some(b)) => (Some(abs_err(a, b)), Some(rel_err(a, b))),
        _ => (None, None),
    };
    if let (Some(a), Some(b)) = (&ae, &re) {
        detail.push(format!(
            "discrepancy: abs = {}, rel = {}",
            format_value(ctx, a),
            format_value(ctx, b)
        ));
    }
    CheckResult {
        id: ident.id.to_string(),
        anchor: ident.anchor.to_string(),
        section: ident.section,
        status: ident.status(),
        tol_class: ident.tol_class,
        lhs: l,
        rhs: r,
        abs_err: ae,
        rel_err: re,
        verdict: Verdict::ConjectureValue,
        detail,
        error,
        elapsed: start.elapsed(),
    }
}

/// Evaluates one entry under its own discipline.
pub fn check_entry(ctx: &Context, ident: &Identity) -> CheckResult {
    match &ident.kind {
        Kind::Proven { points } => check_proven(ctx, ident, points),
        Kind::Adjudicate {
            oracle_label,
            oracle,
            variants,
        } => check_adjudicate(ctx, ident, oracle_label, oracle, variants),
        Kind::Conjecture {
            lhs_label,
            rhs_label,
            lhs,
            rhs,
        } => check_conjecture(ctx, ident, lhs_label, rhs_label, lhs, rhs),
    }
}

/// Looks up `id` in the registry and checks it.
pub fn check_identity(ctx: &Context, id: &str) -> Result<CheckResult> {
    let catalog = load_catalog();
    let ident = catalog
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::UnknownId(id.to_string()))?;
    Ok(check_entry(ctx, ident))
}

/// Selection predicate for [`run_suite`].
#[derive(Clone, Debug, Default)]
pub struct Filter {
    pub section: Option<Section>,
    pub status: Option<Status>,
    pub id_prefix: Option<String>,
    /// Explicit id selection; empty means "no id constraint".
    pub ids: Vec<String>,
}

impl Filter {
    pub fn matches(&self, ident: &Identity) -> bool {
        if let Some(s) = self.section {
            if ident.section != s {
                return false;
            }
        }
        if let Some(s) = self.status {
            if ident.status() != s {
                return false;
            }
        }
        if let Some(p) = &self.id_prefix {
            if !ident.id.starts_with(p.as_str()) {
                return false;
            }
        }
        if !self.ids.is_empty() && !self.ids.iter().any(|x| x == ident.id) {
            return false;
        }
        true
    }
}

/// Outcome of a suite run: results in catalog order plus verdict counts and
/// the full anchor → id coverage map.
pub struct Report {
    pub digits: u32,
    pub results: Vec<CheckResult>,
    pub pass: usize,
    pub fail: usize,
    pub adjudicated: usize,
    pub conjectures: usize,
    /// `(anchor, id)` for every catalog entry, in catalog order.
    pub coverage: Vec<(String, String)>,
}

/// Runs every catalog entry matching `filter`, fanning evaluations across
/// `jobs` worker threads.  Results are reported in catalog order regardless
/// of completion order; individual failures are recorded, never raised.
pub fn run_suite(ctx: &Context, filter: &Filter, jobs: usize) -> Report {
    let catalog = load_catalog();
    let selected: Vec<&Identity> = catalog.iter().filter(|e| filter.matches(e)).collect();
    let results = if jobs <= 1 || selected.len() <= 1 {
        selected.iter().map(|e| check_entry(ctx, e)).collect()
    } else {
        let slots: Mutex<Vec<Option<CheckResult>>> = Mutex::new(vec![None; selected.len()]);
        let cursor = AtomicUsize::new(0);
        std::thread::scope(|scope| {
            for _ in 0..jobs.min(selected.len()) {
                scope.spawn(|| loop {
                    let i = cursor.fetch_add(1, Ordering::Relaxed);
                    if i >= selected.len() {
                        break;
                    }
                    let result = check_entry(ctx, selected[i]);
                    slots.lock().expect("result slots poisoned")[i] = Some(result);
                });
            }
        });
        slots
            .into_inner()
            .expect("result slots poisoned")
            .into_iter()
            .map(|r| r.expect("every selected entry produces a result"))
            .collect::<Vec<_>>()
    };
    let mut pass = 0;
    let mut fail = 0;
    let mut adjudicated = 0;
    let mut conjectures = 0;
    for r in &results {
        match r.verdict {
            Verdict::Pass => pass += 1,
            Verdict::Fail => fail += 1,
            Verdict::Adjudicated(_) => adjudicated += 1,
            Verdict::ConjectureValue => conjectures += 1,
        }
    }
    let coverage = catalog
        .iter()
        .map(|e| (e.anchor.to_string(), e.id.to_string()))
        .collect();
    Report {
        digits: ctx.digits(),
        results,
        pass,
        fail,
        adjudicated,
        conjectures,
        coverage,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn catalog_is_well_formed() {
        let catalog = load_catalog();
        assert!(catalog.len() >= 95, "catalog has {} entries", catalog.len());
        let mut ids: Vec<&str> = catalog.iter().map(|e| e.id).collect();
        ids.sort_unstable();
        let n = ids.len();
        ids.dedup();
        assert_eq!(n, ids.len(), "duplicate identity ids");
        for e in &catalog {
            assert!(!e.anchor.is_empty(), "{} lacks an anchor", e.id);
            if let Kind::Adjudicate { variants, .. } = &e.kind {
                assert!(
                    !variants.is_empty(),
                    "{} adjudicates without variants",
                    e.id
                );
            }
        }
    }

    #[test]
    fn section_seven_has_exactly_three_entries() {
        let catalog = load_catalog();
        let s7: Vec<&str> = catalog
            .iter()
            .filter(|e| e.section == Section::S7)
            .map(|e| e.id)
            .collect();
        assert_eq!(s7, ["E7.5", "E7.8", "E7.17"]);
    }

    #[test]
    fn unknown_id_is_reported() {
        let ctx = Context::new(20).unwrap();
        match check_identity(&ctx, "NOPE") {
            Err(Error::UnknownId(id)) => assert_eq!(id, "NOPE"),
            other => panic!("expected UnknownId, got {other:?}"),
        }
    }

    #[test]
    fn filters_compose() {
        let catalog = load_catalog();
        let f = Filter {
            status: Some(Status::Adjudicate),
            ..Filter::default()
        };
        let ids: Vec<&str> = catalog
            .iter()
            .filter(|e| f.matches(e))
            .map(|e| e.id)
            .collect();
        assert!(ids.contains(&"A-6.48a"));
        assert!(ids.contains(&"A-8.52"));
        let g = Filter {
            id_prefix: Some("E6.117".to_string()),
            ..Filter::default()
        };
        assert!(catalog.iter().filter(|e| g.matches(e)).count() >= 5);
    }
}
