//! Batch reproduction of the catalogue over a parameter box.

use super::table::{classify, table_rows, RowKind};
use super::verify::{verify_type_with, Status, VerificationOutcome, VerifyOptions};
use crate::geometry::KConfigType;
use crate::waldschmidt::rational_json;
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};
use std::collections::BTreeSet;
use std::fmt::Write;

#[derive(Clone, Copy, Debug)]
pub struct TableOptions<'a> {
    pub b_max: u32,
    pub c_max: u32,
    pub verify: VerifyOptions<'a>,
}

impl Default for TableOptions<'_> {
    fn default() -> Self {
        TableOptions {
            b_max: 5,
            c_max: 12,
            verify: VerifyOptions::default(),
        }
    }
}

/// Types `(a)`, `(a, b)` and `(a, b, c)` with `a < b <= b_max` and
/// `b < c <= c_max`, in lexicographic order by length then degrees.
pub fn enumerate_types(b_max: u32, c_max: u32) -> Vec<KConfigType> {
    let mut out = Vec::new();
    let mk = |d: Vec<u32>| KConfigType::new(d).expect("increasing");
    out.extend((1..=b_max).map(|a| mk(vec![a])));
    for a in 1..=b_max {
        out.extend((a + 1..=b_max).map(|b| mk(vec![a, b])));
    }
    for a in 1..=b_max {
        for b in a + 1..=b_max {
            out.extend((b + 1..=c_max).map(|c| mk(vec![a, b, c])));
        }
    }
    out
}

/// Equality of `(1,b,c)` and `(1,b,c+1)` for even `c <= 2b - 4`.
#[derive(Clone, Debug)]
pub struct StepCheck {
    pub even: KConfigType,
    pub odd: KConfigType,
    pub closed_forms_equal: bool,
    /// `alpha(mu X) / mu` for both types, when both were established.
    pub ratios: Option<(BigRational, BigRational)>,
    pub status: Status,
}

#[derive(Clone, Debug)]
pub struct TableReport {
    pub b_max: u32,
    pub c_max: u32,
    pub m_max: u32,
    pub long_run: bool,
    pub outcomes: Vec<VerificationOutcome>,
    pub uncatalogued: Vec<KConfigType>,
    pub step_checks: Vec<StepCheck>,
}

pub fn reproduce_table(b_max: u32, c_max: u32, m_max: u32) -> TableReport {
    let mut opts = TableOptions {
        b_max,
        c_max,
        ..TableOptions::default()
    };
    opts.verify.m_max = m_max;
    reproduce_table_with(&opts)
}

pub fn reproduce_table_with(opts: &TableOptions) -> TableReport {
    let types = enumerate_types(opts.b_max, opts.c_max);
    let uncatalogued: Vec<KConfigType> = types
        .iter()
        .filter(|t| classify(t).is_none())
        .cloned()
        .collect();
    let outcomes: Vec<VerificationOutcome> = types
        .par_iter()
        .filter(|t| classify(t).is_some())
        .map(|t| verify_type_with(t, &opts.verify).expect("catalogued type"))
        .collect();
    let step_checks = step_checks(&outcomes);
    TableReport {
        b_max: opts.b_max,
        c_max: opts.c_max,
        m_max: opts.verify.m_max,
        long_run: opts.verify.long_run,
        outcomes,
        uncatalogued,
        step_checks,
    }
}

fn ratio_at_mu(o: &VerificationOutcome) -> Option<BigRational> {
    let (mu, _) = o.mu_d?;
    o.alphas
        .iter()
        .find(|&&(t, _)| t == mu)
        .map(|&(t, a)| BigRational::new(BigInt::from(a), BigInt::from(t)))
}

fn step_checks(outcomes: &[VerificationOutcome]) -> Vec<StepCheck> {
    let find = |t: &KConfigType| outcomes.iter().find(|o| o.ty == *t);
    let mut out = Vec::new();
    for even in outcomes.iter().filter(|o| o.row == RowKind::OneBCEven) {
        let d = even.ty.degrees();
        let odd_t = KConfigType::new(vec![1, d[1], d[2] + 1]).expect("increasing");
        let Some(odd) = find(&odd_t) else { continue };
        let closed_forms_equal =
            even.closed_form == odd.closed_form && even.mu_d.map(|x| x.0) == odd.mu_d.map(|x| x.0);
        let ratios = ratio_at_mu(even).zip(ratio_at_mu(odd));
        let status = match &ratios {
            _ if !closed_forms_equal => Status::Failed,
            Some((a, b)) if a == b => Status::Passed,
            Some(_) => Status::Failed,
            None => Status::Skipped,
        };
        out.push(StepCheck {
            even: even.ty.clone(),
            odd: odd_t,
            closed_forms_equal,
            ratios,
            status,
        });
    }
    out
}

fn status_str(s: Status) -> &'static str {
    match s {
        Status::Passed => "passed",
        Status::Failed => "failed",
        Status::Skipped => "skipped",
        Status::Inconclusive => "inconclusive",
        Status::DegenerateParameter => "degenerate-parameter",
    }
}

impl TableReport {
    /// Number of failed checks, including step checks.
    pub fn failures(&self) -> usize {
        self.outcomes
            .iter()
            .map(|o| o.count(Status::Failed))
            .sum::<usize>()
            + self
                .step_checks
                .iter()
                .filter(|s| s.status == Status::Failed)
                .count()
    }

    pub fn rows_covered(&self) -> BTreeSet<RowKind> {
        self.outcomes.iter().map(|o| o.row).collect()
    }

    pub fn to_markdown(&self) -> String {
        let rows = table_rows();
        let mut s = String::new();
        let _ = writeln!(s, "# Waldschmidt constants of standard k-configurations\n");
        let _ = writeln!(
            s,
            "Parameters: b <= {}, c <= {}, m <= {}{}.\n",
            self.b_max,
            self.c_max,
            self.m_max,
            if self.long_run { ", long run" } else { "" }
        );
        let _ = writeln!(s, "| Type | Note | Value | Source | Instance | Closed form | (mu, d) | Passed | Failed | Skipped | Status |");
        let _ = writeln!(s, "|---|---|---|---|---|---|---|---|---|---|---|");
        for o in &self.outcomes {
            let flag = if o.degenerate_parameter {
                " (degenerate parameter)"
            } else {
                ""
            };
            let r = rows.iter().find(|r| r.kind == o.row).expect("row exists");
            let md = o
                .mu_d
                .map_or("-".to_string(), |(m, d)| format!("({m}, {d})"));
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {}{flag} |",
                r.pattern,
                r.note,
                r.value,
                r.source,
                o.ty,
                o.closed_form,
                md,
                o.count(Status::Passed),
                o.count(Status::Failed),
                o.count(Status::Skipped),
                status_str(o.status())
            );
        }
        let _ = writeln!(s, "\n## Step function\n");
        if self.step_checks.is_empty() {
            let _ = writeln!(s, "No (1,b,c), (1,b,c+1) pairs within bounds.");
        } else {
            let _ = writeln!(
                s,
                "| Even | Odd | Closed forms equal | alpha(mu X)/mu | Status |"
            );
            let _ = writeln!(s, "|---|---|---|---|---|");
            for c in &self.step_checks {
                let r = c
                    .ratios
                    .as_ref()
                    .map_or("-".to_string(), |(a, b)| format!("{a} / {b}"));
                let _ = writeln!(
                    s,
                    "| {} | {} | {} | {} | {} |",
                    c.even,
                    c.odd,
                    c.closed_forms_equal,
                    r,
                    status_str(c.status)
                );
            }
        }
        let _ = writeln!(s, "\n## Uncatalogued\n");
        if self.uncatalogued.is_empty() {
            let _ = writeln!(s, "None.");
        } else {
            for t in &self.uncatalogued {
                let _ = writeln!(s, "- {t}");
            }
        }
        let _ = writeln!(s, "\nFailed checks: {}", self.failures());
        s
    }

    /// The report without timings; byte-identical across runs.
    pub fn to_json(&self) -> Value {
        json!({
            "parameters": {"b_max": self.b_max, "c_max": self.c_max, "m_max": self.m_max, "long_run": self.long_run},
            "outcomes": self.outcomes.iter().map(VerificationOutcome::to_json).collect::<Vec<_>>(),
            "step_checks": self.step_checks.iter().map(|c| json!({
                "even": c.even.to_string(),
                "odd": c.odd.to_string(),
                "closed_forms_equal": c.closed_forms_equal,
                "ratios": c.ratios.as_ref().map(|(a, b)| [rational_json(a), rational_json(b)]),
                "status": c.status,
            })).collect::<Vec<_>>(),
            "uncatalogued": self.uncatalogued.iter().map(|t| t.to_string()).collect::<Vec<_>>(),
            "failures": self.failures(),
        })
    }

    /// Wall time per type in milliseconds.
    pub fn timing_json(&self) -> Value {
        self.outcomes
            .iter()
            .map(|o| (o.ty.to_string(), json!(o.wall_time.as_millis() as u64)))
            .collect::<serde_json::Map<_, _>>()
            .into()
    }
}
