use serde::Serialize;
use spectra_bounds::{BoundReport, Side};

/// One bound compared with the oracle.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ResultRow {
    pub kind: String,
    pub alpha: Option<f64>,
    pub i: usize,
    pub side: Side,
    pub bound: f64,
    pub rho: f64,
    pub gap: f64,
    pub equality: bool,
    pub branch: String,
}

impl ResultRow {
    pub fn new(kind: &str, rho: f64, r: &BoundReport) -> Self {
        Self {
            kind: kind.to_string(),
            alpha: r.alpha,
            i: r.index_i,
            side: r.side,
            bound: r.value,
            rho,
            gap: r.value - rho,
            equality: r.equality.holds,
            branch: r.equality.branch.to_string(),
        }
    }

    /// Outside the sandwich by more than `1e-6 (1 + rho)`.
    pub fn violates(&self) -> bool {
        let slack = 1e-6 * (1.0 + self.rho);
        match self.side {
            Side::Upper => self.gap < -slack,
            Side::Lower => self.gap > slack,
        }
    }

    fn rounded(&self, digits: usize) -> Self {
        Self {
            alpha: self.alpha.map(|a| sig(a, digits)),
            bound: sig(self.bound, digits),
            rho: sig(self.rho, digits),
            gap: sig(self.gap, digits),
            ..self.clone()
        }
    }

    fn cells(&self, digits: usize) -> Vec<String> {
        let r = self.rounded(digits);
        vec![
            r.kind,
            r.alpha.map(num).unwrap_or_default(),
            r.i.to_string(),
            r.side.as_str().to_string(),
            num(r.bound),
            num(r.rho),
            num(r.gap),
            r.equality.to_string(),
            r.branch,
        ]
    }
}

pub const ROW_HEADER: [&str; 9] = [
    "kind", "alpha", "i", "side", "bound", "rho", "gap", "equality", "branch",
];

/// Best upper bound and the lower bound for one (kind, alpha).
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepRow {
    pub kind: String,
    pub alpha: f64,
    pub best_i: usize,
    pub upper: f64,
    pub lower: f64,
    pub rho: f64,
    pub upper_gap: f64,
    pub lower_gap: f64,
}

impl SweepRow {
    fn rounded(&self, digits: usize) -> Self {
        Self {
            kind: self.kind.clone(),
            alpha: sig(self.alpha, digits),
            best_i: self.best_i,
            upper: sig(self.upper, digits),
            lower: sig(self.lower, digits),
            rho: sig(self.rho, digits),
            upper_gap: sig(self.upper_gap, digits),
            lower_gap: sig(self.lower_gap, digits),
        }
    }

    fn cells(&self, digits: usize) -> Vec<String> {
        let r = self.rounded(digits);
        vec![
            r.kind,
            num(r.alpha),
            r.best_i.to_string(),
            num(r.upper),
            num(r.lower),
            num(r.rho),
            num(r.upper_gap),
            num(r.lower_gap),
        ]
    }
}

pub const SWEEP_HEADER: [&str; 8] = [
    "kind",
    "alpha",
    "best_i",
    "upper",
    "lower",
    "rho",
    "upper_gap",
    "lower_gap",
];

/// Machine formats keep 12 significant digits, the table 6.
pub const MACHINE_DIGITS: usize = 12;
pub const TABLE_DIGITS: usize = 6;

/// `x` rounded to `digits` significant digits, with `-0` mapped to `0`.
pub fn sig(x: f64, digits: usize) -> f64 {
    if x == 0.0 || !x.is_finite() {
        return x + 0.0;
    }
    let s = format!("{:.*e}", digits - 1, x);
    s.parse::<f64>().expect("formatted float parses") + 0.0
}

/// Shortest round-trip text; exponent form outside `[1e-4, 1e15)`.
fn num(x: f64) -> String {
    let a = x.abs();
    if a != 0.0 && !(1e-4..1e15).contains(&a) {
        format!("{x:e}")
    } else {
        x.to_string()
    }
}

pub fn csv(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let mut out = header.join(",");
    out.push('\n');
    for cells in rows {
        out.push_str(&cells.join(","));
        out.push('\n');
    }
    out
}

pub fn table(header: &[&str], rows: impl IntoIterator<Item = Vec<String>>) -> String {
    let rows: Vec<Vec<String>> = rows.into_iter().collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.len()).collect();
    for cells in &rows {
        for (w, c) in widths.iter_mut().zip(cells) {
            *w = (*w).max(c.len());
        }
    }
    let line = |cells: Vec<&str>| {
        let padded: Vec<String> = cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect();
        padded.join("  ").trim_end().to_string() + "\n"
    };
    let mut out = line(header.to_vec());
    for cells in &rows {
        out.push_str(&line(cells.iter().map(String::as_str).collect()));
    }
    out
}

pub fn render_rows(rows: &[ResultRow], format: crate::args::Format) -> String {
    use crate::args::Format;
    match format {
        Format::Table => table(&ROW_HEADER, rows.iter().map(|r| r.cells(TABLE_DIGITS))),
        Format::Csv => csv(&ROW_HEADER, rows.iter().map(|r| r.cells(MACHINE_DIGITS))),
        Format::Json => json(&rows.iter().map(|r| r.rounded(MACHINE_DIGITS)).collect::<Vec<_>>()),
    }
}

pub fn render_sweep(rows: &[SweepRow], format: crate::args::Format) -> String {
    use crate::args::Format;
    match format {
        Format::Table => table(&SWEEP_HEADER, rows.iter().map(|r| r.cells(TABLE_DIGITS))),
        Format::Csv => csv(&SWEEP_HEADER, rows.iter().map(|r| r.cells(MACHINE_DIGITS))),
        Format::Json => json(&rows.iter().map(|r| r.rounded(MACHINE_DIGITS)).collect::<Vec<_>>()),
    }
}

/// A verify violation with the seed that reproduces its instance.
#[derive(Debug, Clone, Serialize)]
pub struct Violation {
    pub seed: u64,
    #[serde(flatten)]
    pub row: ResultRow,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub mode: &'static str,
    pub min_n: usize,
    pub max_n: usize,
    pub trials: u64,
    pub seed: u64,
    pub checks: usize,
    pub violations: Vec<Violation>,
}

pub fn render_verify(report: &VerifyReport, format: crate::args::Format) -> String {
    use crate::args::Format;
    let mut header = vec!["seed"];
    header.extend(ROW_HEADER);
    let violation_cells = |digits| {
        report.violations.iter().map(move |v| {
            let mut cells = vec![v.seed.to_string()];
            cells.extend(v.row.cells(digits));
            cells
        })
    };
    match format {
        Format::Json => {
            let rounded = VerifyReport {
                violations: report
                    .violations
                    .iter()
                    .map(|v| Violation {
                        seed: v.seed,
                        row: v.row.rounded(MACHINE_DIGITS),
                    })
                    .collect(),
                ..*report
            };
            json(&rounded)
        }
        Format::Csv => csv(&header, violation_cells(MACHINE_DIGITS)),
        Format::Table => {
            let mut out = format!(
                "mode: {}, n in [{}, {}]\ntrials: {} (seeds {}..={})\nchecks: {}\nviolations: {}\n",
                report.mode,
                report.min_n,
                report.max_n,
                report.trials,
                report.seed,
                report.seed.wrapping_add(report.trials - 1),
                report.checks,
                report.violations.len(),
            );
            if !report.violations.is_empty() {
                out.push('\n');
                out.push_str(&table(&header, violation_cells(TABLE_DIGITS)));
                out.push_str(
                    "\nreproduce one instance with `verify --trials 1 --seed <seed>` and the same options\n",
                );
            }
            out
        }
    }
}

fn json<T: Serialize + ?Sized>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("rows serialize");
    s.push('\n');
    s
}
