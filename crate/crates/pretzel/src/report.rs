//! Invariant reports and verification sweeps behind the command-line
//! interface.
//!
//! [`build_report`] computes every invariant that applies to a pretzel
//! spec — Conway polynomial per orientation class, Alexander and Jones
//! polynomials, genus, basket number, and (for three-box knots) the torus
//! classification — and tags each polynomial with the computation path
//! that produced it (`"closed-form"`, `"computation-tree"`, or
//! `"oracle"`). With verification enabled, every value that two
//! independent paths can compute is computed twice and the agreement is
//! recorded. [`cmd_sweep`] runs the same cross-checks over an exhaustive
//! grid of small specs and tallies the outcomes.

use crate::alexander_jones::{alexander_classical, alexander_from_conway, jones_pretzel_family};
use crate::classify::{
    basket_number, classify_classical, genus_npretzel, BasketReport, Classification,
    GenusError, GenusReport,
};
use crate::conway::{computation_tree_trace, conway_closed_form, ConwayMemo, TraceError, TraceNode};
use crate::diagram::{Diagram, DiagramError, SkeinOptions};
use crate::model::{reduce_unit_box, Mark, ModelError, Pretzel};
use crate::poly::{TPoly, ZPoly};
use num_bigint::BigInt;
use num_traits::Zero;
use rayon::prelude::*;
use serde::Serialize;
use std::fmt::Write as _;
use std::sync::Mutex;

/// Source tag for values from a closed-form theorem.
pub const SOURCE_CLOSED_FORM: &str = "closed-form";
/// Source tag for values from the memoized computation tree.
pub const SOURCE_TREE: &str = "computation-tree";
/// Source tag for values from the brute-force diagram oracles.
pub const SOURCE_ORACLE: &str = "oracle";

/// A polynomial with its canonical rendering and provenance tag.
#[derive(Clone, Debug, Serialize)]
pub struct PolyValue<P> {
    /// Canonical string rendering (round-trips through the parser).
    pub text: String,
    /// Exponent/coefficient pairs (round-trip through serde).
    pub terms: P,
    /// Which computation path produced the value.
    pub source: &'static str,
}

impl<P: std::fmt::Display> PolyValue<P> {
    fn new(terms: P, source: &'static str) -> Self {
        PolyValue {
            text: terms.to_string(),
            terms,
            source,
        }
    }
}

/// The Conway polynomial of one orientation class.
#[derive(Clone, Debug, Serialize)]
pub struct ConwayEntry {
    /// Index of the class in [`Pretzel::orientation_classes`] order.
    pub class: usize,
    /// Box marks of the class.
    pub marks: Vec<Mark>,
    /// The Conway polynomial.
    pub conway: PolyValue<ZPoly>,
    /// The rendered computation tree, when tracing was requested.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trace: Option<TraceNode>,
}

/// Results of cross-checking invariants across independent paths.
#[derive(Clone, Debug, Serialize)]
pub struct OracleAgreement {
    /// Tree Conway vs. the skein oracle, over the reported classes.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub conway: Option<bool>,
    /// Reported Jones vs. the other available Jones path.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jones: Option<bool>,
    /// Closed-form Alexander vs. the Conway substitution (up to units).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alexander: Option<bool>,
    /// Conjunction of every check that ran.
    pub all: bool,
    /// One line per check, including skips.
    pub details: Vec<String>,
}

/// Everything computed for one pretzel spec.
#[derive(Clone, Debug, Serialize)]
pub struct InvariantReport {
    /// The box parameters as given.
    pub spec: Vec<i64>,
    /// Number of link components.
    pub components: usize,
    /// Whether the spec is a knot.
    pub is_knot: bool,
    /// Image under one unit-box move, when a unit box can be absorbed.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub normalized: Option<Vec<i64>>,
    /// Torus/hyperbolic classification (three-box specs only).
    #[serde(skip_serializing_if = "Option::is_none")]
    pub classification: Option<Classification>,
    /// Conway polynomial of every reported orientation class.
    pub conway: Vec<ConwayEntry>,
    /// Alexander polynomial under the reported orientation.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alexander: Option<PolyValue<TPoly>>,
    /// Jones polynomial.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub jones: Option<PolyValue<TPoly>>,
    /// Genus report, when the degree method applies.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus: Option<GenusReport>,
    /// Basket-number report.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub basket: Option<BasketReport>,
    /// Human-readable remarks (normalization, split links, skips).
    pub notes: Vec<String>,
    /// Cross-check outcomes, when verification ran.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub oracle_agreement: Option<OracleAgreement>,
}

/// Which orientation classes to report.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum OrientationChoice {
    /// Every realizable class.
    #[default]
    All,
    /// One class by index.
    Index(usize),
}

impl std::str::FromStr for OrientationChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.eq_ignore_ascii_case("all") {
            return Ok(OrientationChoice::All);
        }
        s.parse::<usize>()
            .map(OrientationChoice::Index)
            .map_err(|_| format!("expected an orientation index or \"all\", got {s:?}"))
    }
}

/// Knobs for [`build_report`].
#[derive(Clone, Copy, Debug)]
pub struct ReportOptions {
    /// Cross-check every invariant against an independent path.
    pub verify: bool,
    /// Which orientation classes to report.
    pub orientation: OrientationChoice,
    /// Crossing budget for the Kauffman bracket.
    pub jones_budget: usize,
    /// Render the Conway computation tree per reported class.
    pub trace: bool,
}

impl Default for ReportOptions {
    fn default() -> Self {
        ReportOptions {
            verify: false,
            orientation: OrientationChoice::All,
            jones_budget: 24,
            trace: false,
        }
    }
}

/// Failures of report construction, mapped onto process exit codes.
#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    /// Unparseable spec or an out-of-range selection.
    #[error("{0}")]
    Usage(String),
    /// Structural model errors (e.g. too many components to orient).
    #[error(transparent)]
    Model(#[from] ModelError),
    /// A resource budget was exceeded.
    #[error("{0}")]
    Budget(String),
}

impl From<TraceError> for ReportError {
    fn from(e: TraceError) -> Self {
        ReportError::Budget(e.to_string())
    }
}

impl ReportError {
    /// Exit code contract: 1 usage, 3 resource budget (0 success and
    /// 2 verification mismatch are decided by the caller).
    pub fn exit_code(&self) -> i32 {
        match self {
            ReportError::Usage(_) | ReportError::Model(_) => 1,
            ReportError::Budget(_) => 3,
        }
    }
}

/// Parses a comma-separated list of half-twist counts.
///
/// ```
/// assert_eq!(pretzel::report::parse_spec("-2,3,7").unwrap(), vec![-2, 3, 7]);
/// assert!(pretzel::report::parse_spec("1,,2").is_err());
/// ```
pub fn parse_spec(s: &str) -> Result<Vec<i64>, ReportError> {
    s.split(',')
        .map(|part| {
            part.trim()
                .parse::<i64>()
                .map_err(|_| ReportError::Usage(format!("invalid half-twist count {part:?}")))
        })
        .collect()
}

/// The directions of one representative orientation of a class, for
/// building diagrams.
fn class_dirs(pretzel: &Pretzel, class: usize) -> Result<Vec<bool>, ReportError> {
    let classes = pretzel.orientation_classes()?;
    Ok(classes[class].orientations[0].clone())
}

/// Computes every applicable invariant of the pretzel `params`.
///
/// # Errors
///
/// [`ReportError::Usage`] for an out-of-range `--orientation` index or an
/// empty spec; [`ReportError::Budget`] when tracing exceeds its node
/// budget; [`ReportError::Model`] when the component count exceeds the
/// orientation-enumeration limit.
pub fn build_report(params: &[i64], opts: &ReportOptions) -> Result<InvariantReport, ReportError> {
    let pretzel = Pretzel::new(params.to_vec())?;
    let mut notes = Vec::new();

    let normalized = reduce_unit_box(params).ok();
    if let Some(image) = &normalized {
        notes.push(format!(
            "a unit-box move reduces this spec to {image:?} (isotopic link)"
        ));
    }

    let classification = if params.len() == 3 {
        match classify_classical(params[0], params[1], params[2]) {
            Ok(c) => Some(c),
            Err(e) => {
                notes.push(e.to_string());
                None
            }
        }
    } else {
        None
    };

    let classes = pretzel.orientation_classes()?;
    let selected: Vec<usize> = match opts.orientation {
        OrientationChoice::All => (0..classes.len()).collect(),
        OrientationChoice::Index(i) if i < classes.len() => vec![i],
        OrientationChoice::Index(i) => {
            return Err(ReportError::Usage(format!(
                "orientation index {i} out of range: this spec has {} classes (0..{})",
                classes.len(),
                classes.len()
            )));
        }
    };

    let memo = ConwayMemo::new();
    let mut conway = Vec::new();
    for &idx in &selected {
        let boxes = pretzel.marked(&classes[idx].marks);
        let value = memo.eval(&boxes);
        let trace = if opts.trace {
            let (traced, node) = computation_tree_trace(&boxes)?;
            debug_assert_eq!(traced, value);
            Some(node)
        } else {
            None
        };
        conway.push(ConwayEntry {
            class: idx,
            marks: classes[idx].marks.clone(),
            conway: PolyValue::new(value, SOURCE_TREE),
            trace,
        });
    }

    let genus = match genus_npretzel(&pretzel) {
        Ok(report) => Some(report),
        Err(GenusError::SplitLink { .. }) => {
            notes.push(
                "every orientation has a vanishing Conway polynomial (split link); \
                 genus and basket number unavailable"
                    .into(),
            );
            None
        }
        Err(GenusError::Model(e)) => return Err(e.into()),
        Err(GenusError::NotAKnot { .. }) => unreachable!("genus_npretzel accepts links"),
    };
    let basket = genus.as_ref().map(|_| {
        basket_number(&pretzel).expect("basket shares the genus computation, which succeeded")
    });

    // The Alexander polynomial of the orientation that minimizes the
    // Conway degree (links are orientation-sensitive; knots have one
    // class).
    let alexander = genus.as_ref().map(|g| {
        if !pretzel.is_knot() {
            notes.push(format!(
                "alexander refers to the degree-minimizing orientation {:?}",
                g.orientation
            ));
        }
        PolyValue::new(
            alexander_from_conway(&pretzel.marked(&g.orientation)),
            SOURCE_TREE,
        )
    });

    // Jones: a tabulated three-box closed form when one exists, otherwise
    // the Kauffman bracket within the crossing budget. Knots are
    // orientation-free; links take the representative orientation of the
    // first reported class.
    let closed_jones = if params.len() == 3 && pretzel.is_knot() {
        jones_pretzel_family([params[0], params[1], params[2]]).ok()
    } else {
        None
    };
    let bracket_dirs = class_dirs(&pretzel, *selected.first().unwrap_or(&0))?;
    let bracket_jones = || -> Result<TPoly, DiagramError> {
        let (diagram, _) = Diagram::from_pretzel(&pretzel, &bracket_dirs);
        diagram.kauffman_jones(opts.jones_budget)
    };
    let jones = match &closed_jones {
        Some(v) => Some(PolyValue::new(v.clone(), SOURCE_CLOSED_FORM)),
        None => match bracket_jones() {
            Ok(v) => {
                if !pretzel.is_knot() {
                    notes.push(format!(
                        "jones computed under the orientation of class {}",
                        selected[0]
                    ));
                }
                Some(PolyValue::new(v, SOURCE_ORACLE))
            }
            Err(e @ DiagramError::CrossingBudget { .. }) => {
                notes.push(format!("jones skipped: {e}; raise --jones-budget"));
                None
            }
            Err(e) => return Err(ReportError::Budget(e.to_string())),
        },
    };

    let oracle_agreement = if opts.verify {
        Some(verify_report(
            &pretzel, &classes, &selected, &conway, &closed_jones, &jones, &mut notes,
        ))
    } else {
        None
    };

    Ok(InvariantReport {
        spec: params.to_vec(),
        components: pretzel.components(),
        is_knot: pretzel.is_knot(),
        normalized,
        classification,
        conway,
        alexander,
        jones,
        genus,
        basket,
        notes,
        oracle_agreement,
    })
}

/// Runs every available independent cross-check for [`build_report`].
fn verify_report(
    pretzel: &Pretzel,
    classes: &[crate::model::OrientationClass],
    selected: &[usize],
    conway: &[ConwayEntry],
    closed_jones: &Option<TPoly>,
    jones: &Option<PolyValue<TPoly>>,
    notes: &mut Vec<String>,
) -> OracleAgreement {
    let mut details = Vec::new();
    let skein = SkeinOptions::default();

    // Conway: tree vs. the skein oracle on the actual diagram.
    let mut conway_ok: Option<bool> = None;
    for entry in conway {
        let class = &classes[entry.class];
        let (diagram, marks) = Diagram::from_pretzel(pretzel, &class.orientations[0]);
        debug_assert_eq!(marks, class.marks);
        match diagram.conway_skein(&skein) {
            Ok(oracle) => {
                let same = oracle == entry.conway.terms;
                details.push(format!(
                    "conway class {}: tree {} skein oracle",
                    entry.class,
                    if same { "==" } else { "!=" }
                ));
                conway_ok = Some(conway_ok.unwrap_or(true) && same);
            }
            Err(e) => details.push(format!("conway class {}: oracle skipped ({e})", entry.class)),
        }
    }

    // Jones: whichever path produced the report value, compare against the
    // other one when it is available.
    let jones_ok = match (closed_jones, jones) {
        (Some(closed), Some(_)) => {
            let dirs = classes[selected[0]].orientations[0].clone();
            let (diagram, _) = Diagram::from_pretzel(pretzel, &dirs);
            match diagram.kauffman_jones(skein.max_crossings) {
                Ok(bracket) => {
                    let same = bracket == *closed;
                    details.push(format!(
                        "jones: closed form {} kauffman bracket",
                        if same { "==" } else { "!=" }
                    ));
                    Some(same)
                }
                Err(e) => {
                    details.push(format!("jones: bracket skipped ({e})"));
                    None
                }
            }
        }
        _ => {
            details.push("jones: single path, nothing to cross-check".into());
            None
        }
    };

    // Alexander: the three-box closed form against the Conway
    // substitution, through the canonical parameter mapping.
    let alexander_ok = classical_alexander(pretzel.params()).map(|closed| {
        let class = classes.first().expect("knots have one class");
        let substituted = alexander_from_conway(&pretzel.marked(&class.marks));
        let same = closed.equal_up_to_unit(&substituted);
        details.push(format!(
            "alexander: closed form {} conway substitution (up to units)",
            if same { "==" } else { "!=" }
        ));
        same
    });
    if alexander_ok.is_none() {
        details.push("alexander: no closed form for this shape".into());
    }

    let checks = [conway_ok, jones_ok, alexander_ok];
    let all = checks.iter().flatten().all(|&ok| ok);
    if !all {
        notes.push("verification found a mismatch; see oracle_agreement.details".into());
    }
    OracleAgreement {
        conway: conway_ok,
        jones: jones_ok,
        alexander: alexander_ok,
        all,
        details,
    }
}

/// The closed-form Alexander polynomial for three-box knots of the shape
/// `K(−2l, q, ±r)`, after normalizing mirrors and the canonical odd order.
/// Alexander polynomials are mirror-blind up to units, so the mirror image
/// maps onto the same closed form.
fn classical_alexander(params: &[i64]) -> Option<TPoly> {
    if params.len() != 3 {
        return None;
    }
    let evens: Vec<i64> = params.iter().copied().filter(|p| p % 2 == 0).collect();
    let odds: Vec<i64> = params.iter().copied().filter(|p| p % 2 != 0).collect();
    if evens.len() != 1 || evens[0] == 0 {
        return None;
    }
    // Mirror so the even box is negative: Δ is unchanged up to units.
    let sign = -evens[0].signum();
    let l = evens[0].abs() / 2;
    let (a, b) = (odds[0] * sign, odds[1] * sign);
    // Canonical order: the odd box of larger magnitude first, preferring
    // the positive one on ties.
    let (q, r) = if (a.abs(), a) >= (b.abs(), b) { (a, b) } else { (b, a) };
    // The closed form needs the leading odd parameter positive and, when
    // the other is negative, no smaller than its magnitude.
    if q < 1 || (r < 0 && q < -r) {
        return None;
    }
    Some(alexander_classical(l, q, r))
}

/// The squared link determinant from a Jones polynomial: the squared norm
/// of its value at `t = −1`, reading `t^{1/2}` as the imaginary unit, so a
/// term `c·t^{num/2}` contributes `c·i^num`.
fn squared_det_from_jones(v: &TPoly) -> BigInt {
    let (mut re, mut im) = (BigInt::zero(), BigInt::zero());
    for (num, c) in v.terms() {
        match num.rem_euclid(4) {
            0 => re += c,
            1 => im += c,
            2 => re -= c,
            _ => im -= c,
        }
    }
    &re * &re + &im * &im
}

/// The squared link determinant from a Conway polynomial: the squared norm
/// of its value at `z = 2i`, so a term `c·z^j` contributes `c·2^j·i^j`.
/// Both determinants agree on every oriented link, which ties the bracket
/// state sum to the twist-expansion engine at one exactly computable point.
fn squared_det_from_conway(nabla: &ZPoly) -> BigInt {
    let (mut re, mut im) = (BigInt::zero(), BigInt::zero());
    for (num, c) in nabla.terms() {
        let j = usize::try_from(num / 2).expect("conway exponents are non-negative");
        let scaled = c.clone() << j;
        match j % 4 {
            0 => re += scaled,
            1 => im += scaled,
            2 => re -= scaled,
            _ => im -= scaled,
        }
    }
    &re * &re + &im * &im
}

/// Renders a report as readable text.
pub fn render_text(report: &InvariantReport) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "pretzel {:?}", report.spec);
    let _ = writeln!(
        out,
        "components: {} ({})",
        report.components,
        if report.is_knot { "knot" } else { "link" }
    );
    if let Some(image) = &report.normalized {
        let _ = writeln!(out, "normalizes to: {image:?}");
    }
    if let Some(c) = &report.classification {
        let _ = writeln!(out, "classification: {:?} — {}", c.kind, c.reason);
    }
    for entry in &report.conway {
        let marks: Vec<&str> = entry.marks.iter().map(|m| m.as_str()).collect();
        let _ = writeln!(
            out,
            "conway[class {} | {}]: {}   ({})",
            entry.class,
            marks.join(","),
            entry.conway.text,
            entry.conway.source
        );
        if let Some(trace) = &entry.trace {
            render_trace(&mut out, trace, 1);
        }
    }
    if let Some(a) = &report.alexander {
        let _ = writeln!(out, "alexander: {}   ({})", a.text, a.source);
    }
    if let Some(j) = &report.jones {
        let _ = writeln!(out, "jones: {}   ({})", j.text, j.source);
    }
    if let Some(g) = &report.genus {
        let _ = writeln!(
            out,
            "genus: {} (case {}, conway degree {})",
            g.genus, g.case_label, g.conway_degree
        );
        for w in &g.warnings {
            let _ = writeln!(out, "  warning: {w}");
        }
    }
    if let Some(b) = &report.basket {
        let _ = writeln!(out, "basket number: {}", b.basket_number);
    }
    for note in &report.notes {
        let _ = writeln!(out, "note: {note}");
    }
    if let Some(agreement) = &report.oracle_agreement {
        let _ = writeln!(
            out,
            "verification: {}",
            if agreement.all { "all checks agree" } else { "MISMATCH" }
        );
        for d in &agreement.details {
            let _ = writeln!(out, "  {d}");
        }
    }
    out
}

fn render_trace(out: &mut String, node: &TraceNode, depth: usize) {
    let boxes: Vec<String> = node
        .vector
        .iter()
        .map(|b| format!("{}{}", b.twists, if b.mark == "anti" { "a" } else { "p" }))
        .collect();
    let _ = writeln!(
        out,
        "{}[{}] {} → {}  (weight {})",
        "  ".repeat(depth),
        boxes.join(","),
        node.rule,
        node.value,
        node.weight
    );
    for child in &node.children {
        render_trace(out, child, depth + 1);
    }
}

/// Builds, renders, and grades one invariant report.
///
/// Returns the rendered output plus the process exit code: 0, or 2 when
/// verification ran and found a mismatch.
pub fn cmd_invariants(
    spec: &str,
    opts: &ReportOptions,
    json: bool,
) -> Result<(String, i32), ReportError> {
    let params = parse_spec(spec)?;
    let report = build_report(&params, opts)?;
    let code = match &report.oracle_agreement {
        Some(agreement) if !agreement.all => 2,
        _ => 0,
    };
    let rendered = if json {
        serde_json::to_string_pretty(&report).expect("report serializes")
    } else {
        render_text(&report)
    };
    Ok((rendered, code))
}

/// Knobs for [`cmd_sweep`].
#[derive(Clone, Copy, Debug)]
pub struct SweepOptions {
    /// Largest box count to sweep (must be ≤ 6).
    pub nmax: usize,
    /// Largest absolute half-twist count per box (must be ≤ 5).
    pub pmax: i64,
    /// Also check the tabulated Jones rows against the bracket.
    pub jones: bool,
    /// Crossing budget for the bracket during the sweep.
    pub jones_budget: usize,
}

impl Default for SweepOptions {
    fn default() -> Self {
        SweepOptions {
            nmax: 4,
            pmax: 3,
            jones: false,
            jones_budget: 20,
        }
    }
}

/// Outcome counts of a verification sweep.
#[derive(Clone, Debug, Default, Serialize)]
pub struct SweepSummary {
    /// Largest box count swept.
    pub nmax: usize,
    /// Largest absolute half-twist count swept.
    pub pmax: i64,
    /// Individual cross-checks performed.
    pub checked: u64,
    /// Checks where every path agreed.
    pub agreed: u64,
    /// Checks where some path disagreed.
    pub mismatched: u64,
    /// Checks skipped for resource budgets.
    pub skipped: u64,
    /// Jones comparisons inside `checked` (bracket determinant against the
    /// Conway determinant, plus tabulated-row equality).
    pub jones_checked: u64,
    /// Jones comparisons skipped for the crossing budget.
    pub jones_skipped: u64,
    /// Up to 16 mismatch descriptions.
    pub mismatch_examples: Vec<String>,
}

/// Renders a sweep summary as readable text.
pub fn render_sweep_text(summary: &SweepSummary) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "sweep n ≤ {}, |p| ≤ {}: {} checked, {} agreed, {} mismatches, {} skipped",
        summary.nmax, summary.pmax, summary.checked, summary.agreed, summary.mismatched,
        summary.skipped
    );
    if summary.jones_checked + summary.jones_skipped > 0 {
        let _ = writeln!(
            out,
            "jones rows: {} checked, {} skipped over budget",
            summary.jones_checked, summary.jones_skipped
        );
    }
    for example in &summary.mismatch_examples {
        let _ = writeln!(out, "mismatch: {example}");
    }
    out
}

/// All parameter vectors with `n` boxes and entries in `-pmax..=pmax`.
fn sweep_grid(n: usize, pmax: i64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..n {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-pmax..=pmax).map(move |p| {
                    let mut w = v.clone();
                    w.push(p);
                    w
                })
            })
            .collect();
    }
    out
}

/// Cross-checks the Conway engines (computation tree, closed forms, skein
/// oracle) on every spec with at most `nmax` boxes and entries bounded by
/// `pmax`, every realizable orientation class — and optionally the
/// tabulated Jones rows against the Kauffman bracket.
///
/// # Errors
///
/// [`ReportError::Usage`] when the bounds exceed `nmax ≤ 6`, `pmax ≤ 5`.
pub fn cmd_sweep(opts: &SweepOptions) -> Result<SweepSummary, ReportError> {
    if opts.nmax > 6 {
        return Err(ReportError::Usage(format!(
            "--nmax {} exceeds the supported maximum of 6",
            opts.nmax
        )));
    }
    if opts.pmax > 5 {
        return Err(ReportError::Usage(format!(
            "--pmax {} exceeds the supported maximum of 5",
            opts.pmax
        )));
    }

    let memo = ConwayMemo::new();
    let skein = SkeinOptions::default();
    let summary = Mutex::new(SweepSummary {
        nmax: opts.nmax,
        pmax: opts.pmax,
        ..SweepSummary::default()
    });

    let mut specs = Vec::new();
    for n in 1..=opts.nmax {
        specs.extend(sweep_grid(n, opts.pmax));
    }

    specs.par_iter().for_each(|params| {
        let pretzel = Pretzel::new(params.clone()).expect("nonempty spec");
        let Ok(classes) = pretzel.orientation_classes() else {
            let mut s = summary.lock().unwrap();
            s.skipped += 1;
            return;
        };
        for class in &classes {
            let boxes = pretzel.marked(&class.marks);
            let tree = memo.eval(&boxes);
            let mut agree = true;
            let mut what = Vec::new();

            match Diagram::from_pretzel(&pretzel, &class.orientations[0])
                .0
                .conway_skein(&skein)
            {
                Ok(oracle) => {
                    if oracle != tree {
                        agree = false;
                        what.push(format!("skein oracle {oracle} != tree {tree}"));
                    }
                }
                Err(_) => {
                    let mut s = summary.lock().unwrap();
                    s.skipped += 1;
                }
            }
            if let Ok(closed) = conway_closed_form(&boxes) {
                if closed != tree {
                    agree = false;
                    what.push(format!("closed form {closed} != tree {tree}"));
                }
            }

            let mut s = summary.lock().unwrap();
            s.checked += 1;
            if agree {
                s.agreed += 1;
            } else {
                s.mismatched += 1;
                if s.mismatch_examples.len() < 16 {
                    s.mismatch_examples
                        .push(format!("{params:?} {:?}: {}", class.marks, what.join("; ")));
                }
            }
        }

        // Alexander closed form against the Conway substitution, on the
        // three-box rows where the closed form applies.
        if let Some(closed) = classical_alexander(params) {
            let substituted = alexander_from_conway(&pretzel.marked(&classes[0].marks));
            let same = closed.equal_up_to_unit(&substituted);
            let mut s = summary.lock().unwrap();
            s.checked += 1;
            if same {
                s.agreed += 1;
            } else {
                s.mismatched += 1;
                if s.mismatch_examples.len() < 16 {
                    s.mismatch_examples.push(format!(
                        "{params:?}: alexander closed form {closed} differs from the \
                         conway substitution {substituted} by more than a unit"
                    ));
                }
            }
        }

        // Jones checks per class, within the crossing budget: the bracket
        // determinant must match the Conway determinant, and tabulated
        // three-box rows must match the bracket exactly.
        if opts.jones {
            let crossings: usize = params.iter().map(|p| p.unsigned_abs() as usize).sum();
            if crossings > opts.jones_budget {
                let mut s = summary.lock().unwrap();
                s.jones_skipped += classes.len() as u64;
                return;
            }
            for class in &classes {
                let (diagram, _) = Diagram::from_pretzel(&pretzel, &class.orientations[0]);
                let bracket = match diagram.kauffman_jones(opts.jones_budget) {
                    Ok(v) => v,
                    Err(_) => {
                        summary.lock().unwrap().jones_skipped += 1;
                        continue;
                    }
                };
                let nabla = memo.eval(&pretzel.marked(&class.marks));
                let mut agree = true;
                let mut what = Vec::new();
                if squared_det_from_jones(&bracket) != squared_det_from_conway(&nabla) {
                    agree = false;
                    what.push("jones and conway determinants differ".to_string());
                }
                if params.len() == 3 && pretzel.is_knot() {
                    if let Ok(closed) = jones_pretzel_family([params[0], params[1], params[2]]) {
                        if closed != bracket {
                            agree = false;
                            what.push(format!(
                                "jones closed form {closed} != bracket {bracket}"
                            ));
                        }
                    }
                }
                let mut s = summary.lock().unwrap();
                s.checked += 1;
                s.jones_checked += 1;
                if agree {
                    s.agreed += 1;
                } else {
                    s.mismatched += 1;
                    if s.mismatch_examples.len() < 16 {
                        s.mismatch_examples
                            .push(format!("{params:?} {:?}: {}", class.marks, what.join("; ")));
                    }
                }
            }
        }
    });

    Ok(summary.into_inner().unwrap())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reports_carry_sources_classification_and_agreement() {
        let opts = ReportOptions {
            verify: true,
            ..ReportOptions::default()
        };
        let report = build_report(&[-2, 3, 7], &opts).unwrap();
        assert!(report.is_knot);
        assert_eq!(report.components, 1);
        assert_eq!(report.conway.len(), 1);
        assert_eq!(report.conway[0].conway.source, SOURCE_TREE);
        assert_eq!(
            report.classification.as_ref().unwrap().kind,
            crate::classify::LinkKind::Hyperbolic
        );
        assert_eq!(report.genus.as_ref().unwrap().genus, 5);
        assert_eq!(report.basket.as_ref().unwrap().basket_number, 10);
        assert_eq!(report.jones.as_ref().unwrap().source, SOURCE_CLOSED_FORM);
        let agreement = report.oracle_agreement.as_ref().unwrap();
        assert_eq!(agreement.conway, Some(true));
        assert_eq!(agreement.jones, Some(true));
        assert_eq!(agreement.alexander, Some(true));
        assert!(agreement.all, "{:?}", agreement.details);
    }

    #[test]
    fn unit_boxes_are_normalized_in_the_report() {
        let report = build_report(&[3, -1, 5], &ReportOptions::default()).unwrap();
        assert_eq!(report.normalized, Some(vec![1, 1, 3]));
        assert!(report.notes.iter().any(|n| n.contains("[1, 1, 3]")));
    }

    #[test]
    fn split_links_report_the_vanishing_conway() {
        let report = build_report(&[0, 0, 3], &ReportOptions::default()).unwrap();
        assert!(report.genus.is_none());
        assert!(report.basket.is_none());
        assert!(report.conway.iter().all(|e| e.conway.terms.is_zero()));
        assert!(report.notes.iter().any(|n| n.contains("split link")));
    }

    #[test]
    fn closed_form_jones_is_used_for_tabulated_rows() {
        let report = build_report(&[-2, 3, 5], &ReportOptions::default()).unwrap();
        let jones = report.jones.as_ref().unwrap();
        assert_eq!(jones.source, SOURCE_CLOSED_FORM);
        assert_eq!(
            jones.terms,
            crate::alexander_jones::jones_torus(3, 5),
            "tabulated row must match the torus value"
        );
    }

    #[test]
    fn orientation_selection_and_bad_indices() {
        let opts = ReportOptions {
            orientation: OrientationChoice::Index(1),
            ..ReportOptions::default()
        };
        let report = build_report(&[2, 4], &opts).unwrap();
        assert_eq!(report.conway.len(), 1);
        assert_eq!(report.conway[0].class, 1);

        let opts = ReportOptions {
            orientation: OrientationChoice::Index(5),
            ..ReportOptions::default()
        };
        let err = build_report(&[2, 4], &opts).unwrap_err();
        assert_eq!(err.exit_code(), 1);
    }

    #[test]
    fn traces_render_and_json_round_trips() {
        let opts = ReportOptions {
            trace: true,
            ..ReportOptions::default()
        };
        let (rendered, code) = cmd_invariants("2,3,-1", &opts, true).unwrap();
        assert_eq!(code, 0);
        let value: serde_json::Value = serde_json::from_str(&rendered).unwrap();
        let text = value["conway"][0]["conway"]["text"].as_str().unwrap();
        let parsed: ZPoly = text.parse().unwrap();
        let terms: ZPoly =
            serde_json::from_value(value["conway"][0]["conway"]["terms"].clone()).unwrap();
        assert_eq!(parsed, terms, "canonical text and term pairs must agree");
        assert!(value["conway"][0]["trace"]["rule"].is_string());
    }

    #[test]
    fn sweeps_count_and_bound_checks() {
        let summary = cmd_sweep(&SweepOptions {
            nmax: 2,
            pmax: 2,
            jones: true,
            jones_budget: 6,
        })
        .unwrap();
        assert!(summary.checked > 0);
        assert!(summary.jones_checked > 0);
        assert_eq!(summary.jones_skipped, 0);
        assert_eq!(summary.mismatched, 0, "{:?}", summary.mismatch_examples);
        assert_eq!(summary.checked, summary.agreed);

        // A one-crossing budget forces skips on every multi-crossing spec.
        let tight = cmd_sweep(&SweepOptions {
            nmax: 2,
            pmax: 2,
            jones: true,
            jones_budget: 1,
        })
        .unwrap();
        assert!(tight.jones_skipped > 0);
        assert_eq!(tight.mismatched, 0, "{:?}", tight.mismatch_examples);

        let err = cmd_sweep(&SweepOptions {
            nmax: 9,
            ..SweepOptions::default()
        })
        .unwrap_err();
        assert_eq!(err.exit_code(), 1);

        let empty = cmd_sweep(&SweepOptions {
            nmax: 0,
            ..SweepOptions::default()
        })
        .unwrap();
        assert_eq!(empty.checked, 0);
    }
}
