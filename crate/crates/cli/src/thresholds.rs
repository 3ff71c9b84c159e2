use std::io::Write;

use rvbound::bounds::negativity_threshold;
use serde::Serialize;

use crate::{ThresholdsCmd, EXIT_INPUT};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ThresholdRow {
    pub genus: usize,
    pub k1: usize,
    pub k: usize,
    pub threshold: f64,
}

/// `A(g, k1, k)` for `2 <= g <= max_genus`, `1 <= k1 <= k <= 3g - 3`, in
/// that nesting order.
pub fn threshold_rows(max_genus: usize) -> rvbound::Result<Vec<ThresholdRow>> {
    let mut rows = Vec::new();
    for genus in 2..=max_genus {
        for k in 1..=3 * genus - 3 {
            for k1 in 1..=k {
                let threshold = negativity_threshold(genus, k1, k)?;
                rows.push(ThresholdRow { genus, k1, k, threshold });
            }
        }
    }
    Ok(rows)
}

pub(crate) fn run(cmd: &ThresholdsCmd, out: &mut dyn Write, err: &mut dyn Write) -> u8 {
    if cmd.max_genus < 2 {
        let _ = writeln!(err, "error: --max-genus must be at least 2, got {}", cmd.max_genus);
        return EXIT_INPUT;
    }
    let rows = match threshold_rows(cmd.max_genus) {
        Ok(r) => r,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            return EXIT_INPUT;
        }
    };
    let res = if cmd.csv { write_csv(&rows, out) } else { write_table(&rows, out) };
    match res {
        Ok(()) => 0,
        Err(e) => crate::write_failure(e, err, 0),
    }
}

fn write_csv(rows: &[ThresholdRow], out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "genus,k1,k,threshold")?;
    for r in rows {
        writeln!(out, "{},{},{},{:e}", r.genus, r.k1, r.k, r.threshold)?;
    }
    Ok(())
}

fn write_table(rows: &[ThresholdRow], out: &mut dyn Write) -> std::io::Result<()> {
    writeln!(out, "{:>5} {:>4} {:>4}  {:>22}", "genus", "k1", "k", "A(g, k1, k)")?;
    for r in rows {
        writeln!(out, "{:>5} {:>4} {:>4}  {:>22.15e}", r.genus, r.k1, r.k, r.threshold)?;
    }
    Ok(())
}
