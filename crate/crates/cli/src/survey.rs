use std::collections::BTreeMap;
use std::io::Write;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use rvbound::bounds::{certify, CertifyOptions, Verdict};
use rvbound::hypmath::bers_length_bound;
use rvbound::surface::{classify_curves, FnCoordinates, PantsDecomposition, SystoleStatus};
use serde::Serialize;

use crate::{SurveyCmd, EXIT_INPUT, SCHEMA_VERSION, TOOL_VERSION};

pub const SURVEY_CAVEAT: &str = "systole hypothesis asserted_by_sampler: sampled surfaces are not scanned, \
and random twists can create geodesics of length <= 1 besides the pants curves; certified fractions assume \
they do not. Lengths are log-uniform, which is a modeling choice and not the Weil-Petersson measure.";

/// Normal quantile for a two-sided 95% interval.
const Z95: f64 = 1.959963984540054;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SurveyConfig {
    pub genus: usize,
    pub samples: u64,
    pub seed: u64,
    pub len_min: f64,
    pub len_max: f64,
    /// Number of curves drawn from the length range; the others are drawn
    /// log-uniformly from `(1, Bers bound]`. `None` draws every curve from
    /// the range.
    pub short_count: Option<usize>,
}

impl SurveyConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.genus < 2 {
            return Err(format!("--genus must be at least 2, got {}", self.genus));
        }
        if self.samples == 0 {
            return Err("--samples must be at least 1".to_string());
        }
        if !(self.len_min > 0.0 && self.len_min < self.len_max && self.len_max.is_finite()) {
            return Err(format!("need 0 < --len-min < --len-max, got {} and {}", self.len_min, self.len_max));
        }
        if let Some(k) = self.short_count {
            if k > 3 * self.genus - 3 {
                return Err(format!("--short-count {k} exceeds 3g - 3 = {}", 3 * self.genus - 3));
            }
            if k > 0 && self.len_min > 1.0 {
                return Err("--short-count needs --len-min <= 1".to_string());
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
struct SampleOutcome {
    k: usize,
    k1: usize,
    certified: bool,
    mainthm_value: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SurveyReport {
    pub schema_version: u32,
    pub tool_version: &'static str,
    pub config: SurveyConfig,
    pub length_sampling: &'static str,
    pub twist_sampling: &'static str,
    pub systole_status: SystoleStatus,
    pub certified: u64,
    pub fraction: f64,
    /// Wilson score interval.
    pub ci95: [f64; 2],
    /// Number of samples per count of short curves.
    pub k_histogram: BTreeMap<usize, u64>,
    pub k1_histogram: BTreeMap<usize, u64>,
    pub mainthm_min: f64,
    pub mainthm_max: f64,
    pub caveat: &'static str,
}

/// 95% Wilson score interval for `successes` out of `n`.
pub fn wilson_interval(successes: u64, n: u64) -> [f64; 2] {
    let total = n;
    let n = n as f64;
    let p = successes as f64 / n;
    let z2 = Z95 * Z95;
    let denom = 1.0 + z2 / n;
    let center = (p + z2 / (2.0 * n)) / denom;
    let half = Z95 * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt() / denom;
    // The interval touches 0 (or 1) exactly when no (or every) trial succeeds.
    let lo = if successes == 0 { 0.0 } else { (center - half).max(0.0) };
    let hi = if successes == total { 1.0 } else { (center + half).min(1.0) };
    [lo, hi]
}

fn log_uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let (a, b) = (lo.ln(), hi.ln());
    (a + rng.random::<f64>() * (b - a)).exp().clamp(lo, hi)
}

fn sample(cfg: &SurveyConfig, decomp: &PantsDecomposition, bers: f64, index: u64) -> rvbound::Result<SampleOutcome> {
    // One independent stream per sample index.
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(index);
    let n = decomp.num_curves();
    let mut lengths = Vec::with_capacity(n);
    for j in 0..n {
        let l = match cfg.short_count {
            None => log_uniform(&mut rng, cfg.len_min, cfg.len_max),
            Some(k) if j < k => log_uniform(&mut rng, cfg.len_min, cfg.len_max.min(1.0)),
            // 1 - u lies in (0, 1], so the length is strictly above 1.
            Some(_) => (bers.ln() * (1.0 - rng.random::<f64>())).exp().max(f64::from_bits(1f64.to_bits() + 1)),
        };
        lengths.push(l);
    }
    let twists = lengths.iter().map(|&l| rng.random::<f64>() * l).collect();
    let coords = FnCoordinates::for_decomposition(decomp, lengths, twists)?;
    let mut class = classify_curves(&coords, false);
    class.systole = SystoleStatus::AssertedBySampler;
    let report = certify(decomp, &coords, &class, &CertifyOptions::default())?;
    Ok(SampleOutcome {
        k: report.k,
        k1: report.k1,
        certified: report.verdict == Verdict::NegativeCertified,
        mainthm_value: report.mainthm_value,
    })
}

/// Run the survey on `workers` threads. The report does not depend on
/// `workers`.
pub fn run_survey(cfg: &SurveyConfig, workers: usize) -> Result<SurveyReport, String> {
    cfg.validate()?;
    let decomp = PantsDecomposition::chain(cfg.genus).map_err(|e| e.to_string())?;
    let bers = bers_length_bound::<f64>(cfg.genus).map_err(|e| e.to_string())?;
    let pool =
        rayon::ThreadPoolBuilder::new().num_threads(workers.max(1)).build().map_err(|e| format!("thread pool: {e}"))?;
    let outcomes: Vec<SampleOutcome> = pool
        .install(|| (0..cfg.samples).into_par_iter().map(|i| sample(cfg, &decomp, bers, i)).collect::<Result<_, _>>())
        .map_err(|e| e.to_string())?;

    let certified = outcomes.iter().filter(|o| o.certified).count() as u64;
    let mut k_histogram = BTreeMap::new();
    let mut k1_histogram = BTreeMap::new();
    for o in &outcomes {
        *k_histogram.entry(o.k).or_insert(0) += 1;
        *k1_histogram.entry(o.k1).or_insert(0) += 1;
    }
    let values = outcomes.iter().map(|o| o.mainthm_value);
    Ok(SurveyReport {
        schema_version: SCHEMA_VERSION,
        tool_version: TOOL_VERSION,
        config: *cfg,
        length_sampling: "log_uniform",
        twist_sampling: "uniform_0_to_length",
        systole_status: SystoleStatus::AssertedBySampler,
        certified,
        fraction: certified as f64 / cfg.samples as f64,
        ci95: wilson_interval(certified, cfg.samples),
        k_histogram,
        k1_histogram,
        mainthm_min: values.clone().fold(f64::INFINITY, f64::min),
        mainthm_max: values.fold(f64::NEG_INFINITY, f64::max),
        caveat: SURVEY_CAVEAT,
    })
}

pub(crate) fn write_text(r: &SurveyReport, out: &mut dyn Write) -> std::io::Result<()> {
    let c = &r.config;
    writeln!(out, "survey: genus {}, {} samples, seed {}", c.genus, c.samples, c.seed)?;
    match c.short_count {
        Some(k) => writeln!(
            out,
            "lengths: {k} curve(s) log-uniform in [{}, {}], others log-uniform in (1, Bers]",
            c.len_min,
            c.len_max.min(1.0)
        )?,
        None => writeln!(out, "lengths: log-uniform in [{}, {}]", c.len_min, c.len_max)?,
    }
    writeln!(out, "twists: uniform in [0, l)")?;
    writeln!(out, "certified: {} / {} = {}", r.certified, c.samples, r.fraction)?;
    writeln!(out, "95% Wilson interval: [{:.6}, {:.6}]", r.ci95[0], r.ci95[1])?;
    writeln!(out, "short curves per sample (k: count):")?;
    for (k, n) in &r.k_histogram {
        writeln!(out, "  {k}: {n}")?;
    }
    writeln!(out, "curves below threshold per sample (k1: count):")?;
    for (k, n) in &r.k1_histogram {
        writeln!(out, "  {k}: {n}")?;
    }
    writeln!(out, "main bound range: [{:+.6e}, {:+.6e}]", r.mainthm_min, r.mainthm_max)?;
    writeln!(out, "caveat: {}", r.caveat)
}

pub(crate) fn run(cmd: &SurveyCmd, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    let cfg = SurveyConfig {
        genus: cmd.genus,
        samples: cmd.samples,
        seed: cmd.seed,
        len_min: cmd.len_min,
        len_max: cmd.len_max,
        short_count: cmd.short_count,
    };
    let report = match run_survey(&cfg, cmd.workers) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let written = if cmd.json {
        serde_json::to_writer_pretty(&mut *out, &report).map_err(std::io::Error::from).and_then(|_| writeln!(out))
    } else {
        write_text(&report, out)
    };
    match written {
        Ok(()) => 0,
        Err(e) => crate::write_failure(e, err, 0),
    }
}
