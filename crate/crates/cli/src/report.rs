use std::fmt::Write as _;

use fqt_core::lseries::AlgSeries;
use fqt_core::{Error, FqPoly};
use serde::Serialize;
use serde_json::Value;

use crate::Global;

/// What every report states about how its claims were established.
#[derive(Serialize, Debug, Default)]
pub struct Certification {
    pub precision: usize,
    pub prime_bound: Option<usize>,
    pub prime_bound_certified: Option<bool>,
    pub ball_index: Option<usize>,
    /// t-adic floors at which claims were established
    pub floors: Vec<(String, i64)>,
    /// ball steps and other integer parameters
    pub steps: Vec<(String, i64)>,
    pub seed: u64,
    pub low_confidence: bool,
}

#[derive(Serialize, Debug)]
pub struct Report {
    pub command: &'static str,
    pub holds: bool,
    pub fixture: Option<String>,
    pub certification: Certification,
    pub result: Value,
    #[serde(skip)]
    pub summary: String,
}

impl Report {
    pub fn new(command: &'static str, holds: bool, fixture: Option<String>, certification: Certification, result: impl Serialize) -> Self {
        Report {
            command,
            holds,
            fixture,
            certification,
            result: serde_json::to_value(result).expect("reports serialize"),
            summary: String::new(),
        }
    }

    pub fn line(mut self, s: impl AsRef<str>) -> Self {
        self.summary.push_str(s.as_ref());
        self.summary.push('\n');
        self
    }

    pub fn human(&self) -> String {
        let c = &self.certification;
        let mut s = format!("{}: {}\n", self.command, if self.holds { "PASS" } else { "FAIL" });
        if let Some(f) = &self.fixture {
            let _ = writeln!(s, "  fixture       {f}");
        }
        let _ = writeln!(s, "  precision     N = {}", c.precision);
        if let Some(b) = c.prime_bound {
            let tag = match c.prime_bound_certified {
                Some(false) => " (OVERRIDDEN, not certified)",
                _ => "",
            };
            let _ = writeln!(s, "  prime bound   deg p ≤ {b}{tag}");
        }
        if let Some(b) = c.ball_index {
            let _ = writeln!(s, "  ball index    {b}");
        }
        for (k, v) in &c.floors {
            let _ = writeln!(s, "  {k:<13} t^{v}");
        }
        for (k, v) in &c.steps {
            let _ = writeln!(s, "  {k:<13} {v}");
        }
        if c.low_confidence {
            let _ = writeln!(s, "  LOW CONFIDENCE: verdict established above t^-4");
        }
        for l in self.summary.lines() {
            let _ = writeln!(s, "  {l}");
        }
        s
    }

    pub fn emit(&self, g: &Global) -> Result<(), Error> {
        let json = serde_json::to_string_pretty(self).expect("reports serialize");
        if g.json {
            println!("{json}");
        } else {
            print!("{}", self.human());
        }
        if let Some(dir) = &g.report_dir {
            let io = |e: std::io::Error| Error::Config(format!("report-dir: {}: {e}", dir.display()));
            std::fs::create_dir_all(dir).map_err(io)?;
            std::fs::write(dir.join(format!("{}.json", self.command)), json + "\n").map_err(io)?;
            std::fs::write(dir.join(format!("{}.txt", self.command)), self.human()).map_err(io)?;
        }
        Ok(())
    }
}

pub fn poly(p: &FqPoly) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let terms: Vec<String> = p
        .iter()
        .enumerate()
        .rev()
        .filter(|(_, &c)| c != 0)
        .map(|(i, &c)| match (i, c) {
            (0, c) => c.to_string(),
            (1, 1) => "t".into(),
            (1, c) => format!("{c}t"),
            (i, 1) => format!("t^{i}"),
            (i, c) => format!("{c}t^{i}"),
        })
        .collect();
    terms.join(" + ")
}

/// Element of A[G] as Σ_h a_h·[h].
pub fn group_poly(x: &[FqPoly]) -> String {
    if x.len() == 1 {
        return poly(&x[0]);
    }
    let terms: Vec<String> = x.iter().enumerate().filter(|(_, p)| !p.is_empty()).map(|(h, p)| format!("({})·g{h}", poly(p))).collect();
    if terms.is_empty() {
        "0".into()
    } else {
        terms.join(" + ")
    }
}

/// Leading terms of a series over F_q[G], exponent descending.
pub fn series(s: &AlgSeries, terms: usize) -> String {
    let Some(top) = s.top() else { return format!("0 + O(t^{})", s.floor - 1) };
    let mut out = vec![];
    for e in (s.floor..=top).rev() {
        let i = (e - s.floor) as usize;
        let c = &s.coeffs[i];
        if c.iter().all(|&x| x == 0) {
            continue;
        }
        let coeff = if c.len() == 1 { c[0].to_string() } else { format!("{c:?}") };
        out.push(format!("{coeff}·t^{e}"));
        if out.len() == terms {
            break;
        }
    }
    format!("{} + O(t^{})", out.join(" + "), s.floor - 1)
}
