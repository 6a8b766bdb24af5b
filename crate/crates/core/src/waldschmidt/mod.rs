//! Brackets for Waldschmidt constants: upper bounds from computed initial
//! degrees, the Chudnovsky lower bound, stabilization evidence, and the
//! catalogue's closed forms.
//!
//! Nothing here computes the constant itself, which is a limit. Each number
//! in a report says where it came from.

use crate::configs::table::{classify, closed_form_of, ClosedForm, RowKind};
use crate::geometry::{FatPointScheme, KConfigType, ProjPoint};
use crate::linsys::{alpha_symbolic_with, is_nonempty, Alpha, DimOptions, LinearSystemQuery};
use num_bigint::BigInt;
use num_rational::BigRational;
use rayon::prelude::*;
use serde_json::{json, Value};

fn q(n: u64, d: u64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

pub fn rational_json(x: &BigRational) -> Value {
    Value::String(format!("{}/{}", x.numer(), x.denom()))
}

/// `4 * sum of multiplicities`, or the witness degree plus 2 when one is
/// known.
pub fn default_degree_cap(scheme: &FatPointScheme, recipe_degree: Option<u32>) -> u32 {
    match recipe_degree {
        Some(d) => d + 2,
        None => 4 * scheme.supports().iter().map(|(_, m)| *m).sum::<u32>(),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqEntry {
    pub t: u32,
    pub alpha: Alpha,
    pub ratio: Option<BigRational>,
}

/// `alpha(I^(t))` and `alpha / t` for `t = 1..=t_max`.
pub fn wc_sequence(points: &[ProjPoint], t_max: u32, degree_cap: u32) -> Vec<SeqEntry> {
    sequence_for(points, &(1..=t_max).collect::<Vec<_>>(), |_| degree_cap)
}

fn sequence_for(
    points: &[ProjPoint],
    ts: &[u32],
    cap: impl Fn(u32) -> u32 + Sync,
) -> Vec<SeqEntry> {
    let opts = DimOptions::default();
    ts.par_iter()
        .map(|&t| {
            let alpha = alpha_symbolic_with(points, t, cap(t), &opts);
            SeqEntry {
                t,
                alpha,
                ratio: alpha.value().map(|a| q(a as u64, t as u64)),
            }
        })
        .collect()
}

/// `(alpha(I_X) + 1) / 2`, a lower bound for every `alpha(I^(m)) / m` in
/// the plane.
pub fn chudnovsky_lower_bound(points: &[ProjPoint]) -> BigRational {
    // n points lie on n lines, so alpha(I_X) <= n
    let a = alpha_symbolic_with(
        points,
        1,
        points.len().max(1) as u32,
        &DimOptions::default(),
    )
    .value()
    .expect("alpha of a reduced set is at most its size");
    q(a as u64 + 1, 2)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StabilizationEntry {
    pub m: u32,
    /// `[I_{m mu X}]_{m d - 1} = 0`.
    pub empty_below: bool,
    /// `[I_{m mu X}]_{m d} != 0`.
    pub nonempty_at: bool,
}

impl StabilizationEntry {
    pub fn passed(&self) -> bool {
        self.empty_below && self.nonempty_at
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stabilization {
    pub mu: u32,
    pub d: u32,
    pub entries: Vec<StabilizationEntry>,
}

impl Stabilization {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(StabilizationEntry::passed)
    }

    /// `d / mu` when every entry passed; consistent with the constant but
    /// not a proof of the limit.
    pub fn implied_value(&self) -> Option<BigRational> {
        self.passed().then(|| q(self.d as u64, self.mu as u64))
    }
}

/// Checks `alpha(m mu X) = m d` for `m = 1..=m_max`.
///
/// Dimension is monotone in the degree, so the check is exactly
/// `[I]_{md-1} = 0` and `[I]_{md} != 0`.
pub fn verify_stabilization(points: &[ProjPoint], mu: u32, d: u32, m_max: u32) -> Stabilization {
    let opts = DimOptions::default();
    let entries = (1..=m_max)
        .into_par_iter()
        .map(|m| stabilization_entry(points, mu, d, m, &opts))
        .collect();
    Stabilization { mu, d, entries }
}

/// The two checks for one `m`.
pub fn stabilization_entry(
    points: &[ProjPoint],
    mu: u32,
    d: u32,
    m: u32,
    opts: &DimOptions,
) -> StabilizationEntry {
    let z = FatPointScheme::uniform(points, m * mu).expect("distinct points");
    let empty_below =
        m * d == 0 || !is_nonempty(&LinearSystemQuery::new(z.clone(), m * d - 1), opts);
    let nonempty_at = is_nonempty(&LinearSystemQuery::new(z, m * d), opts);
    StabilizationEntry {
        m,
        empty_below,
        nonempty_at,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Bracket {
    pub lower: BigRational,
    pub upper: Option<BigRational>,
    pub seq: Vec<SeqEntry>,
}

/// Upper bound `min alpha(I^(t)) / t` over `t_list`, lower bound from
/// Chudnovsky.
pub fn bracket(points: &[ProjPoint], t_list: &[u32]) -> Bracket {
    let seq = sequence_for(points, t_list, |t| {
        default_degree_cap(&FatPointScheme::uniform(points, t).expect("distinct"), None)
    });
    bracket_from(points, seq)
}

fn bracket_from(points: &[ProjPoint], seq: Vec<SeqEntry>) -> Bracket {
    let upper = seq.iter().filter_map(|e| e.ratio.clone()).min();
    Bracket {
        lower: chudnovsky_lower_bound(points),
        upper,
        seq,
    }
}

/// Which configurations a closed form applies to.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Applicability {
    /// The standard configuration of the type.
    Standard,
    /// Every configuration of the type (`d1 >= s`).
    AnyKConfiguration,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosedFormResult {
    Known {
        value: ClosedForm,
        row: Option<RowKind>,
        applies_to: Applicability,
    },
    Unknown,
}

impl std::fmt::Display for ClosedFormResult {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ClosedFormResult::Known {
                value, applies_to, ..
            } => {
                let scope = match applies_to {
                    Applicability::Standard => "standard configuration",
                    Applicability::AnyKConfiguration => "any k-configuration",
                };
                write!(f, "{value} ({scope})")
            }
            ClosedFormResult::Unknown => write!(f, "unknown"),
        }
    }
}

/// The catalogue value for `t`. Types with `d1 >= s` get `s` for every
/// configuration; other types outside the catalogue are `Unknown`.
pub fn closed_form(t: &KConfigType) -> ClosedFormResult {
    let s = t.len() as u64;
    let general = t.degrees()[0] as u64 >= s;
    match classify(t) {
        Some(row) => ClosedFormResult::Known {
            value: closed_form_of(row, t),
            row: Some(row),
            applies_to: if general {
                Applicability::AnyKConfiguration
            } else {
                Applicability::Standard
            },
        },
        None if general => ClosedFormResult::Known {
            value: ClosedForm::Exact(q(s, 1)),
            row: None,
            applies_to: Applicability::AnyKConfiguration,
        },
        None => ClosedFormResult::Unknown,
    }
}

/// Everything known about one point set.
#[derive(Clone, Debug)]
pub struct WaldschmidtReport {
    pub seq: Vec<SeqEntry>,
    pub upper_bound: Option<BigRational>,
    pub lower_bound: BigRational,
    pub closed_form: ClosedFormResult,
    pub stabilization: Option<Stabilization>,
}

impl WaldschmidtReport {
    /// Sequence for `t = 1..=t_max`, plus stabilization at `(mu, d)` when
    /// given.
    pub fn compute(
        points: &[ProjPoint],
        ty: Option<&KConfigType>,
        t_max: u32,
        stabilization: Option<(u32, u32, u32)>,
    ) -> Self {
        let seq = sequence_for(points, &(1..=t_max).collect::<Vec<_>>(), |t| {
            default_degree_cap(&FatPointScheme::uniform(points, t).expect("distinct"), None)
        });
        let b = bracket_from(points, seq);
        WaldschmidtReport {
            seq: b.seq,
            upper_bound: b.upper,
            lower_bound: b.lower,
            closed_form: ty.map_or(ClosedFormResult::Unknown, closed_form),
            stabilization: stabilization.map(|(mu, d, m)| verify_stabilization(points, mu, d, m)),
        }
    }

    /// Bounds are ordered and a single closed form lies between them.
    pub fn consistent(&self) -> bool {
        let Some(upper) = &self.upper_bound else {
            return true;
        };
        if self.lower_bound > *upper {
            return false;
        }
        match &self.closed_form {
            ClosedFormResult::Known {
                value: ClosedForm::Exact(v),
                ..
            } => self.lower_bound <= *v && v <= upper,
            ClosedFormResult::Known {
                value: ClosedForm::Interval(lo, _),
                ..
            } => *lo <= *upper,
            ClosedFormResult::Unknown => true,
        }
    }

    pub fn to_json(&self) -> Value {
        let seq: Vec<Value> = self
            .seq
            .iter()
            .map(|e| match e.alpha {
                Alpha::Found(a) => json!({"t": e.t, "alpha": a, "ratio": rational_json(e.ratio.as_ref().expect("found"))}),
                Alpha::NotFoundBelowCap(cap) => json!({"t": e.t, "alpha": null, "status": "not-found-below-cap", "cap": cap}),
            })
            .collect();
        let closed = match &self.closed_form {
            ClosedFormResult::Unknown => json!({"status": "unknown"}),
            ClosedFormResult::Known {
                value,
                row,
                applies_to,
            } => {
                let applies = match applies_to {
                    Applicability::Standard => "standard",
                    Applicability::AnyKConfiguration => "any-k-configuration",
                };
                let mut v = match value {
                    ClosedForm::Exact(x) => json!({"value": rational_json(x)}),
                    ClosedForm::Interval(lo, hi) => {
                        json!({"interval": [rational_json(lo), rational_json(hi)]})
                    }
                };
                v["status"] = json!("catalogue");
                v["row"] = json!(row);
                v["applies_to"] = json!(applies);
                v
            }
        };
        let stab = self.stabilization.as_ref().map(|s| {
            json!({
                "mu": s.mu,
                "d": s.d,
                "verdicts": s.entries.iter().map(|e| json!({
                    "m": e.m,
                    "empty_below": e.empty_below,
                    "nonempty_at": e.nonempty_at,
                    "passed": e.passed(),
                })).collect::<Vec<_>>(),
                "implied_value": s.implied_value().as_ref().map(rational_json),
                "status": "consistent with the limit, not a proof of it",
            })
        });
        json!({
            "seq": seq,
            "upper_bound": self.upper_bound.as_ref().map(rational_json),
            "upper_bound_status": "min of computed alpha(I^(t))/t",
            "lower_bound": rational_json(&self.lower_bound),
            "lower_bound_status": "Chudnovsky bound (alpha(I)+1)/2",
            "closed_form": closed,
            "stabilization": stab,
        })
    }
}
