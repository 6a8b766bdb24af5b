//! Fixed-component reductions and replayable emptiness certificates.
//!
//! A line carrying `s >= 2` support points with multiplicities summing to
//! more than `d` is a fixed component of `[I_Z]_d`, with multiplicity at
//! least `ceil((sum - d) / (s - 1))`. Removing it maps `[I_Z]_d`
//! isomorphically onto the residual system, so a chain of such removals
//! ending in an obviously empty system proves emptiness.

mod json;

use crate::error::{Error, Result};
use crate::geometry::{
    line_through, CurveComponent, FatPointScheme, Line, PolyCurve, ProjPoint, Shape,
};
use crate::linsys::{
    dim_linear_system_with, DimOptions, LinearSystemQuery, RankMethod, RankPolicy,
};
use std::collections::BTreeSet;

/// `max(0, ceil((sum m_i - d) / (s - 1)))` for `s >= 2` multiplicities.
pub fn mu_fixed_multiplicity(mults: &[u32], d: u32) -> Result<u32> {
    if mults.len() < 2 {
        return Err(Error::TooFewPoints(mults.len()));
    }
    let sum: u64 = mults.iter().map(|&m| m as u64).sum();
    Ok(forced_count(sum, mults.len() as u64, d))
}

fn forced_count(sum: u64, s: u64, d: u32) -> u32 {
    let d = d as u64;
    if sum <= d {
        0
    } else {
        (sum - d).div_ceil(s - 1) as u32
    }
}

/// Removes `k` copies of `comp`: degree drops by `k * deg(comp)` and each
/// multiplicity by `k` times the component's order there, clamped at 0.
pub fn reduce_by_component(
    scheme: &FatPointScheme,
    d: u32,
    comp: &CurveComponent,
    k: u32,
) -> Result<(FatPointScheme, u32)> {
    let removed = k * comp.degree();
    if k == 0 || removed > d {
        return Err(Error::DegreeOverflow { removed, degree: d });
    }
    let supports = scheme
        .supports()
        .iter()
        .map(|(p, m)| (p.clone(), m.saturating_sub(k * comp.order_at(p))))
        .collect();
    Ok((FatPointScheme::from_clamped(supports), d - removed))
}

/// Why a component is fixed.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Justification {
    ForcedLine {
        points_on_component: u32,
        sum_mults: u64,
        degree: u32,
    },
    BezoutExcess {
        intersection_count: u64,
        degree_product: u64,
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStep {
    /// The reduced component; its own `multiplicity` field is 1.
    pub component: CurveComponent,
    pub forced_multiplicity: u32,
    pub justification: Justification,
}

/// The forced multiplicity of `line` in `[I_Z]_d`, if any.
pub fn line_step(
    scheme: &FatPointScheme,
    d: u32,
    line: &Line,
    label: &str,
) -> Option<ReductionStep> {
    let mults: Vec<u32> = scheme
        .supports()
        .iter()
        .filter(|(p, _)| line.contains(p))
        .map(|(_, m)| *m)
        .collect();
    let k = mu_fixed_multiplicity(&mults, d).ok()?;
    (k > 0).then(|| ReductionStep {
        component: CurveComponent::line(line.clone(), 1, label),
        forced_multiplicity: k,
        justification: Justification::ForcedLine {
            points_on_component: mults.len() as u32,
            sum_mults: mults.iter().map(|&m| m as u64).sum(),
            degree: d,
        },
    })
}

fn intersection_count(scheme: &FatPointScheme, comp: &CurveComponent) -> u64 {
    scheme
        .supports()
        .iter()
        .map(|(p, m)| comp.order_at(p) as u64 * *m as u64)
        .sum()
}

/// Bezout test for an irreducible curve: if it meets every member of
/// `[I_Z]_d` in more than `deg * d` points counted with multiplicity, it is
/// a fixed component.
pub fn bezout_fixed_check(
    scheme: &FatPointScheme,
    d: u32,
    comp: &PolyCurve,
) -> Option<ReductionStep> {
    bezout_step(scheme, d, &CurveComponent::curve(comp.clone(), 1, "C"))
}

fn bezout_step(scheme: &FatPointScheme, d: u32, comp: &CurveComponent) -> Option<ReductionStep> {
    let ic = intersection_count(scheme, comp);
    let dp = comp.degree() as u64 * d as u64;
    (ic > dp).then(|| ReductionStep {
        component: CurveComponent {
            multiplicity: 1,
            ..comp.clone()
        },
        forced_multiplicity: 1,
        justification: Justification::BezoutExcess {
            intersection_count: ic,
            degree_product: dp,
        },
    })
}

fn hint_step(scheme: &FatPointScheme, d: u32, hint: &CurveComponent) -> Option<ReductionStep> {
    match &hint.shape {
        Shape::Line(l) => line_step(scheme, d, l, &hint.label),
        Shape::Curve(_) => bezout_step(scheme, d, hint),
    }
}

/// Every line through two support points, forced ones first.
fn candidate_steps(scheme: &FatPointScheme, d: u32) -> Vec<ReductionStep> {
    let pts: Vec<&ProjPoint> = scheme.points().collect();
    let mut lines = BTreeSet::new();
    for (i, p) in pts.iter().enumerate() {
        for q in &pts[i + 1..] {
            lines.insert(line_through(p, q).expect("distinct support points"));
        }
    }
    let mut steps: Vec<(Line, ReductionStep)> = lines
        .into_iter()
        .filter_map(|l| line_step(scheme, d, &l, "line").map(|s| (l, s)))
        .collect();
    steps.sort_by(|(la, a), (lb, b)| {
        b.forced_multiplicity
            .cmp(&a.forced_multiplicity)
            .then(la.cmp(lb))
    });
    steps.into_iter().map(|(_, s)| s).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TerminalReason {
    /// The next forced component does not fit in the remaining degree.
    DegreeExhausted { blocking: ReductionStep },
    /// A point has multiplicity above the degree.
    PointExceedsDegree { point: ProjPoint, multiplicity: u32 },
    /// An exact rank computation shows the residual system is zero.
    ResidualEmptyByCount { method: RankMethod },
}

impl std::fmt::Display for TerminalReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TerminalReason::DegreeExhausted { blocking } => write!(
                f,
                "{} is forced {} times, more than the remaining degree allows",
                blocking.component, blocking.forced_multiplicity
            ),
            TerminalReason::PointExceedsDegree {
                point,
                multiplicity,
            } => {
                write!(
                    f,
                    "{point} has multiplicity {multiplicity}, above the degree"
                )
            }
            TerminalReason::ResidualEmptyByCount { method } => {
                write!(f, "residual system is zero ({method:?})")
            }
        }
    }
}

/// A replayable proof that `[I_Z]_d = 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionCertificate {
    pub initial: (FatPointScheme, u32),
    pub steps: Vec<ReductionStep>,
    pub terminal: TerminalReason,
    /// Residual scheme and degree after all steps.
    pub residual: (FatPointScheme, u32),
}

/// No terminal predicate was reached; the trace so far is kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inconclusive {
    pub initial: (FatPointScheme, u32),
    pub steps: Vec<ReductionStep>,
    pub residual: (FatPointScheme, u32),
    pub residual_dimension: Option<usize>,
}

fn exceeding_point(scheme: &FatPointScheme, d: u32) -> Option<(ProjPoint, u32)> {
    scheme
        .supports()
        .iter()
        .filter(|(_, m)| *m > d)
        .max_by_key(|(_, m)| *m)
        .cloned()
}

/// Plays the fixed-component game forward on `[I_Z]_d`.
pub fn emptiness_certificate(
    scheme: &FatPointScheme,
    d: u32,
    hints: &[CurveComponent],
) -> std::result::Result<ReductionCertificate, Inconclusive> {
    let initial = (scheme.clone(), d);
    let done = |steps, terminal, z: FatPointScheme, d| {
        Ok(ReductionCertificate {
            initial: initial.clone(),
            steps,
            terminal,
            residual: (z, d),
        })
    };
    if let Some((point, multiplicity)) = exceeding_point(scheme, d) {
        return done(
            Vec::new(),
            TerminalReason::PointExceedsDegree {
                point,
                multiplicity,
            },
            scheme.clone(),
            d,
        );
    }
    let (mut z, mut deg) = (scheme.clone(), d);
    let mut steps = Vec::new();
    loop {
        let next = hints
            .iter()
            .find_map(|h| hint_step(&z, deg, h))
            .or_else(|| candidate_steps(&z, deg).into_iter().next());
        let Some(step) = next else { break };
        if step.forced_multiplicity * step.component.degree() > deg {
            return done(
                steps,
                TerminalReason::DegreeExhausted { blocking: step },
                z,
                deg,
            );
        }
        let (nz, nd) = reduce_by_component(&z, deg, &step.component, step.forced_multiplicity)
            .expect("degree checked");
        steps.push(step);
        z = nz;
        deg = nd;
    }
    if let Some((point, multiplicity)) = exceeding_point(&z, deg) {
        return done(
            steps,
            TerminalReason::PointExceedsDegree {
                point,
                multiplicity,
            },
            z,
            deg,
        );
    }
    if z.is_empty() {
        let residual_dimension = Some(LinearSystemQuery::new(z.clone(), deg).monomial_count());
        return Err(Inconclusive {
            initial,
            steps,
            residual: (z, deg),
            residual_dimension,
        });
    }
    let r = residual_dim(&z, deg);
    if r.dimension == 0 {
        return done(
            steps,
            TerminalReason::ResidualEmptyByCount { method: r.method },
            z,
            deg,
        );
    }
    Err(Inconclusive {
        initial,
        steps,
        residual: (z, deg),
        residual_dimension: Some(r.dimension),
    })
}

fn residual_dim(z: &FatPointScheme, d: u32) -> crate::linsys::DimResult {
    let opts = DimOptions {
        policy: RankPolicy::Modular,
        ..DimOptions::default()
    };
    dim_linear_system_with(&LinearSystemQuery::new(z.clone(), d), &opts)
}

/// Removes forced lines until none is forced. The residual system has the
/// same dimension as the original one, or `None` is returned when the
/// original system is empty.
pub fn forced_line_reduction(
    scheme: &FatPointScheme,
    d: u32,
) -> Option<(FatPointScheme, u32, Vec<ReductionStep>)> {
    let (mut z, mut deg) = (scheme.clone(), d);
    let mut steps = Vec::new();
    if exceeding_point(&z, deg).is_some() {
        return None;
    }
    while let Some(step) = candidate_steps(&z, deg).into_iter().next() {
        if step.forced_multiplicity > deg {
            return None;
        }
        let (nz, nd) =
            reduce_by_component(&z, deg, &step.component, step.forced_multiplicity).ok()?;
        steps.push(step);
        z = nz;
        deg = nd;
        if exceeding_point(&z, deg).is_some() {
            return None;
        }
    }
    Some((z, deg, steps))
}

/// Recomputes the justification of `step` in the state `(z, d)`.
fn step_is_valid(z: &FatPointScheme, d: u32, step: &ReductionStep) -> bool {
    if step.forced_multiplicity == 0 || step.component.multiplicity != 1 {
        return false;
    }
    match (&step.justification, &step.component.shape) {
        (
            Justification::ForcedLine {
                points_on_component,
                sum_mults,
                degree,
            },
            Shape::Line(l),
        ) => {
            let mults: Vec<u64> = z
                .supports()
                .iter()
                .filter(|(p, _)| l.contains(p))
                .map(|(_, m)| *m as u64)
                .collect();
            let s = mults.len() as u64;
            let sum: u64 = mults.iter().sum();
            s >= 2
                && s == *points_on_component as u64
                && sum == *sum_mults
                && *degree == d
                && sum > d as u64
                && (sum - d as u64).div_ceil(s - 1) == step.forced_multiplicity as u64
        }
        (
            Justification::BezoutExcess {
                intersection_count: claimed_ic,
                degree_product: claimed_dp,
            },
            _,
        ) => {
            let ic = intersection_count(z, &step.component);
            let dp = step.component.degree() as u64 * d as u64;
            ic == *claimed_ic && dp == *claimed_dp && ic > dp && step.forced_multiplicity == 1
        }
        _ => false,
    }
}

/// Replays every step and the terminal predicate.
pub fn verify_certificate(c: &ReductionCertificate) -> bool {
    let (mut z, mut d) = c.initial.clone();
    for step in &c.steps {
        if !step_is_valid(&z, d, step) {
            return false;
        }
        let Ok((nz, nd)) = reduce_by_component(&z, d, &step.component, step.forced_multiplicity)
        else {
            return false;
        };
        z = nz;
        d = nd;
    }
    if (z.clone(), d) != c.residual {
        return false;
    }
    match &c.terminal {
        TerminalReason::PointExceedsDegree {
            point,
            multiplicity,
        } => z.multiplicity(point) == *multiplicity && *multiplicity > d,
        TerminalReason::DegreeExhausted { blocking } => {
            step_is_valid(&z, d, blocking)
                && blocking.forced_multiplicity * blocking.component.degree() > d
        }
        TerminalReason::ResidualEmptyByCount { .. } => {
            !z.is_empty() && residual_dim(&z, d).dimension == 0
        }
    }
}

pub use json::{certificate_from_json, certificate_to_json, inconclusive_to_json};

#[cfg(test)]
mod tests;
