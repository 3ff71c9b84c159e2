use std::io::Write;

use rvbound::bounds::{certify, BoundReport, CertifyOptions, Verdict};
use rvbound::fuchsian::{systole_check, GeodesicCandidate};
use rvbound::surface::{classify_curves, parse_surface, SurfaceDocument};
use rvbound::symmetrize::reduce_full_twists;
use rvbound::Error;
use serde::Serialize;

use crate::{CertifyCmd, EXIT_CERTIFIED, EXIT_INPUT, EXIT_NOT_CERTIFIED, SCHEMA_VERSION, TOOL_VERSION};

#[derive(Debug, Clone, PartialEq)]
pub struct CertifyArgs {
    pub scan_depth: usize,
    pub scan_budget: u64,
    pub assume_systole: bool,
    pub comparator: bool,
    pub rho: Option<f64>,
    pub workers: usize,
}

impl Default for CertifyArgs {
    fn default() -> Self {
        CertifyArgs {
            scan_depth: rvbound::fuchsian::DEFAULT_SCAN_DEPTH,
            scan_budget: rvbound::fuchsian::DEFAULT_SCAN_BUDGET,
            assume_systole: false,
            comparator: false,
            rho: None,
            workers: 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScanStatus {
    Disabled,
    Clean,
    UndeclaredShortGeodesic,
    Indeterminate,
    BudgetExceeded,
    NumericalFailure,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UndeclaredGeodesic {
    /// Index of the scanned subsurface the word belongs to.
    pub component: usize,
    /// Shortest word found with this length.
    pub word: String,
    #[serde(skip)]
    word_len: usize,
    pub length: f64,
    /// Scanned words of this length; conjugates and relator-equivalent words
    /// of one geodesic all show up.
    pub words: usize,
}

/// Collapse candidates (sorted by length) whose lengths agree to `1e-8`
/// relative into one entry.
fn group_by_length(candidates: &[GeodesicCandidate<f64>]) -> Vec<UndeclaredGeodesic> {
    let mut out: Vec<UndeclaredGeodesic> = Vec::new();
    for c in candidates {
        match out.last_mut() {
            Some(u) if (c.length - u.length).abs() <= 1e-8 * u.length.max(1.0) => {
                u.words += 1;
                if c.word.len() < u.word_len {
                    u.word = c.word.to_string();
                    u.word_len = c.word.len();
                }
            }
            _ => out.push(UndeclaredGeodesic {
                component: c.component,
                word: c.word.to_string(),
                word_len: c.word.len(),
                length: c.length,
                words: 1,
            }),
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ScanSummary {
    pub status: ScanStatus,
    pub max_word_len: usize,
    pub budget: u64,
    pub words_visited: u64,
    pub candidates_at_most_one: usize,
    pub undeclared: Vec<UndeclaredGeodesic>,
    pub note: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurfaceSummary {
    pub curve_labels: Vec<String>,
    pub lengths: Vec<f64>,
    pub twists: Vec<f64>,
}

/// Machine-readable certificate.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CertifyDocument {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub surface: SurfaceSummary,
    #[serde(flatten)]
    pub report: BoundReport<f64>,
    pub scan: ScanSummary,
}

impl CertifyDocument {
    pub fn exit_code(&self) -> u8 {
        match self.report.verdict {
            Verdict::NegativeCertified => EXIT_CERTIFIED,
            Verdict::NotCertified => EXIT_NOT_CERTIFIED,
        }
    }
}

fn run_scan(
    doc: &SurfaceDocument<f64>,
    classification: &mut rvbound::surface::CurveClassification,
    args: &CertifyArgs,
) -> ScanSummary {
    let mut summary = ScanSummary {
        status: ScanStatus::Disabled,
        max_word_len: args.scan_depth,
        budget: args.scan_budget,
        words_visited: 0,
        candidates_at_most_one: 0,
        undeclared: Vec::new(),
        note: "scan disabled (--scan-depth 0)".to_string(),
    };
    if args.scan_depth == 0 {
        return summary;
    }
    // Full Dehn twists do not change the surface; reducing keeps the
    // gluing matrices small.
    let reduced = reduce_full_twists(&doc.coordinates);
    match systole_check(
        &doc.decomposition,
        &reduced,
        classification,
        args.scan_depth,
        args.scan_budget,
        args.workers.max(1),
    ) {
        Ok((updated, assessment, outcome)) => {
            summary.words_visited = outcome.words_visited;
            summary.candidates_at_most_one = outcome.candidates.len();
            summary.undeclared = group_by_length(&assessment.undeclared);
            summary.status = if !assessment.undeclared.is_empty() {
                ScanStatus::UndeclaredShortGeodesic
            } else if assessment.clean {
                ScanStatus::Clean
            } else {
                ScanStatus::Indeterminate
            };
            summary.note = assessment.note;
            *classification = updated;
        }
        Err(e @ Error::BudgetExceeded { .. }) => {
            summary.status = ScanStatus::BudgetExceeded;
            summary.note = format!("systole status unchanged: {e}");
        }
        Err(e) => {
            summary.status = ScanStatus::NumericalFailure;
            summary.note = format!("systole status unchanged: {e}");
        }
    }
    summary
}

/// Parse a surface description and evaluate its certificate.
pub fn certify_text(text: &str, args: &CertifyArgs) -> rvbound::Result<CertifyDocument> {
    if let Some(r) = args.rho {
        if !(r > 0.0 && r.is_finite()) {
            return Err(Error::Domain { op: "certify", msg: format!("--rho must be positive and finite, got {r}") });
        }
    }
    let doc: SurfaceDocument<f64> = parse_surface(text)?;
    let mut classification = classify_curves(&doc.coordinates, doc.systole_asserted || args.assume_systole);
    let scan = run_scan(&doc, &mut classification, args);
    let options = CertifyOptions {
        comparator_asserted: args.comparator,
        rho_asserted: args.rho,
        systole_note: (scan.status != ScanStatus::Disabled).then(|| scan.note.clone()),
    };
    let report = certify(&doc.decomposition, &doc.coordinates, &classification, &options)?;
    Ok(CertifyDocument {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION,
        surface: SurfaceSummary {
            curve_labels: doc.decomposition.curve_labels().to_vec(),
            lengths: doc.coordinates.lengths().to_vec(),
            twists: doc.coordinates.twists().to_vec(),
        },
        report,
        scan,
    })
}

fn tag<S: Serialize>(v: &S) -> String {
    match serde_json::to_value(v) {
        Ok(serde_json::Value::String(s)) => s,
        Ok(other) => other.to_string(),
        Err(_) => "?".to_string(),
    }
}

fn labels(doc: &CertifyDocument, idx: &[usize]) -> String {
    if idx.is_empty() {
        return "none".to_string();
    }
    idx.iter()
        .map(|&i| format!("{} ({})", doc.surface.curve_labels[i], doc.surface.lengths[i]))
        .collect::<Vec<_>>()
        .join(", ")
}

pub(crate) fn write_text(doc: &CertifyDocument, out: &mut dyn Write) -> std::io::Result<()> {
    let r = &doc.report;
    writeln!(out, "genus {}, {} pants curves", r.genus, doc.surface.lengths.len())?;
    writeln!(out, "short curves (k = {}): {}", r.k, labels(doc, &r.short_curves))?;
    writeln!(out, "curves below their threshold: k1 = {}", r.k1)?;
    for t in &r.thresholds {
        writeln!(out, "  A({}, {}, {}) = {:.6e}", r.genus, t.k1, t.k, t.threshold)?;
    }
    writeln!(out)?;
    writeln!(out, "main bound              {:>+.6e}", r.mainthm_value)?;
    writeln!(out, "main bound, sharp       {:>+.6e}", r.mainthm_sharp_value)?;
    writeln!(out, "symmetric bound         {:>+.6e}", r.symmetric_value)?;
    writeln!(out, "symmetrization cost     {:>+.6e}", r.correction_value)?;
    match r.comparator_value {
        Some(v) => writeln!(out, "comparator              {v:>+.6e}")?,
        None => writeln!(out, "comparator              n/a")?,
    }
    match r.fixed_curve_value {
        Some(v) => writeln!(out, "fixed-curve bound       {v:>+.6e}  (rho = {})", r.rho)?,
        None => writeln!(out, "fixed-curve bound       n/a")?,
    }
    writeln!(out, "Bers bound              {:.6}", r.bers_bound)?;
    writeln!(out)?;
    writeln!(out, "hypotheses:")?;
    for h in &r.hypothesis_provenance {
        writeln!(out, "  {:<40} {:<20} {}", h.name, tag(&h.status), h.note)?;
    }
    writeln!(out, "scan: {} ({})", tag(&doc.scan.status), doc.scan.note)?;
    for u in &doc.scan.undeclared {
        writeln!(
            out,
            "  undeclared geodesic {} (subsurface {}) of length {} ({} word(s))",
            u.word, u.component, u.length, u.words
        )?;
    }
    for n in &r.notes {
        writeln!(out, "note: {n}")?;
    }
    let by = r.certified_by.map(|b| format!(" (by {})", tag(&b))).unwrap_or_default();
    writeln!(out, "verdict: {}{by}", tag(&r.verdict))
}

pub(crate) fn run(cmd: &CertifyCmd, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let path = cmd.file.display();
    let text = match std::fs::read_to_string(&cmd.file) {
        Ok(t) => t,
        Err(e) => {
            let _ = writeln!(err, "error: cannot read {path}: {e}");
            return EXIT_INPUT;
        }
    };
    let args = CertifyArgs {
        scan_depth: cmd.scan_depth,
        scan_budget: cmd.scan_budget,
        assume_systole: cmd.assume_systole,
        comparator: cmd.comparator,
        rho: cmd.rho,
        workers: cmd.workers,
    };
    let doc = match certify_text(&text, &args) {
        Ok(d) => d,
        Err(Error::Parse(p)) => {
            let _ = writeln!(err, "{path}:{}:{}: {}", p.line, p.column, p.message);
            return EXIT_INPUT;
        }
        Err(e) => {
            let _ = writeln!(err, "{path}: {e}");
            return EXIT_INPUT;
        }
    };
    let written = if cmd.json {
        serde_json::to_writer_pretty(&mut *out, &doc).map_err(std::io::Error::from).and_then(|_| writeln!(out))
    } else {
        write_text(&doc, out)
    };
    match written {
        Ok(()) => doc.exit_code(),
        Err(e) => crate::write_failure(e, err, doc.exit_code()),
    }
}
