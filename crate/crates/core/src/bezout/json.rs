//! Certificate serialization. Integers that can grow (polynomial
//! coefficients, rationals) are strings; counts are JSON numbers.

use super::{Inconclusive, Justification, ReductionCertificate, ReductionStep, TerminalReason};
use crate::error::{Error, Result};
use crate::geometry::{
    parse_rational, CurveComponent, FatPointScheme, HomogPoly, Line, PolyCurve, ProjPoint, Shape,
};
use crate::linsys::RankMethod;
use num_bigint::BigInt;
use serde_json::{json, Value};

fn rat(x: &num_rational::BigRational) -> Value {
    Value::String(format!("{}/{}", x.numer(), x.denom()))
}

fn component_json(c: &CurveComponent) -> Value {
    match &c.shape {
        Shape::Line(l) => json!({
            "label": c.label,
            "line": l.coeffs().iter().map(rat).collect::<Vec<_>>(),
        }),
        Shape::Curve(p) => json!({
            "label": c.label,
            "curve": {
                "degree": p.degree(),
                "coeffs": p.poly().coeffs().iter().map(|x| x.to_string()).collect::<Vec<_>>(),
            },
        }),
    }
}

fn step_json(s: &ReductionStep) -> Value {
    let just = match &s.justification {
        Justification::ForcedLine {
            points_on_component,
            sum_mults,
            degree,
        } => json!({"forced-line": {
            "points_on_component": points_on_component,
            "sum_mults": sum_mults,
            "degree": degree,
        }}),
        Justification::BezoutExcess {
            intersection_count,
            degree_product,
        } => json!({"bezout_excess": {
            "intersection_count": intersection_count,
            "degree_product": degree_product,
        }}),
    };
    json!({
        "component": component_json(&s.component),
        "forced_multiplicity": s.forced_multiplicity,
        "justification": just,
    })
}

fn state_json(z: &FatPointScheme, d: u32) -> Value {
    json!({"scheme": z.to_json(), "degree": d})
}

pub fn certificate_to_json(c: &ReductionCertificate) -> Value {
    let terminal = match &c.terminal {
        TerminalReason::DegreeExhausted { blocking } => json!({
            "reason": "DegreeExhausted",
            "blocking_step": step_json(blocking),
        }),
        TerminalReason::PointExceedsDegree {
            point,
            multiplicity,
        } => json!({
            "reason": "PointExceedsDegree",
            "point": point.coords().iter().map(rat).collect::<Vec<_>>(),
            "multiplicity": multiplicity,
        }),
        TerminalReason::ResidualEmptyByCount { method } => json!({
            "reason": "ResidualEmptyByCount",
            "method": method,
        }),
    };
    json!({
        "initial": state_json(&c.initial.0, c.initial.1),
        "steps": c.steps.iter().map(step_json).collect::<Vec<_>>(),
        "terminal": terminal,
        "residual": state_json(&c.residual.0, c.residual.1),
    })
}

pub fn inconclusive_to_json(c: &Inconclusive) -> Value {
    json!({
        "initial": state_json(&c.initial.0, c.initial.1),
        "steps": c.steps.iter().map(step_json).collect::<Vec<_>>(),
        "terminal": {"reason": "Inconclusive", "residual_dimension": c.residual_dimension},
        "residual": state_json(&c.residual.0, c.residual.1),
    })
}

fn bad(what: &str) -> Error {
    Error::Parse(format!("certificate: bad or missing {what}"))
}

fn field<'a>(v: &'a Value, key: &str) -> Result<&'a Value> {
    v.get(key).ok_or_else(|| bad(key))
}

fn uint(v: &Value, key: &str) -> Result<u64> {
    field(v, key)?.as_u64().ok_or_else(|| bad(key))
}

fn u32_of(v: &Value, key: &str) -> Result<u32> {
    u32::try_from(uint(v, key)?).map_err(|_| bad(key))
}

fn triple(v: &Value, key: &str) -> Result<[num_rational::BigRational; 3]> {
    let arr = field(v, key)?
        .as_array()
        .filter(|a| a.len() == 3)
        .ok_or_else(|| bad(key))?;
    let mut out = Vec::with_capacity(3);
    for x in arr {
        out.push(parse_rational(x.as_str().ok_or_else(|| bad(key))?)?);
    }
    Ok(out.try_into().expect("three entries"))
}

fn component_from(v: &Value) -> Result<CurveComponent> {
    let label = field(v, "label")?
        .as_str()
        .ok_or_else(|| bad("label"))?
        .to_string();
    if v.get("line").is_some() {
        return Ok(CurveComponent::line(
            Line::new(triple(v, "line")?)?,
            1,
            label,
        ));
    }
    let c = field(v, "curve")?;
    let degree = u32_of(c, "degree")?;
    let coeffs = field(c, "coeffs")?
        .as_array()
        .ok_or_else(|| bad("coeffs"))?
        .iter()
        .map(|x| {
            x.as_str()
                .and_then(|s| s.parse::<BigInt>().ok())
                .ok_or_else(|| bad("coeffs"))
        })
        .collect::<Result<Vec<_>>>()?;
    let curve = PolyCurve::new(HomogPoly::new(degree, coeffs)?)?;
    Ok(CurveComponent {
        shape: Shape::Curve(curve),
        multiplicity: 1,
        label,
    })
}

fn step_from(v: &Value) -> Result<ReductionStep> {
    let component = component_from(field(v, "component")?)?;
    let forced_multiplicity = u32_of(v, "forced_multiplicity")?;
    let j = field(v, "justification")?;
    let justification = if let Some(l) = j.get("forced-line") {
        Justification::ForcedLine {
            points_on_component: u32_of(l, "points_on_component")?,
            sum_mults: uint(l, "sum_mults")?,
            degree: u32_of(l, "degree")?,
        }
    } else {
        let b = field(j, "bezout_excess")?;
        Justification::BezoutExcess {
            intersection_count: uint(b, "intersection_count")?,
            degree_product: uint(b, "degree_product")?,
        }
    };
    Ok(ReductionStep {
        component,
        forced_multiplicity,
        justification,
    })
}

fn state_from(v: &Value) -> Result<(FatPointScheme, u32)> {
    Ok((
        FatPointScheme::from_json(field(v, "scheme")?)?,
        u32_of(v, "degree")?,
    ))
}

pub fn certificate_from_json(v: &Value) -> Result<ReductionCertificate> {
    let steps = field(v, "steps")?
        .as_array()
        .ok_or_else(|| bad("steps"))?
        .iter()
        .map(step_from)
        .collect::<Result<Vec<_>>>()?;
    let t = field(v, "terminal")?;
    let terminal = match field(t, "reason")?.as_str() {
        Some("DegreeExhausted") => TerminalReason::DegreeExhausted {
            blocking: step_from(field(t, "blocking_step")?)?,
        },
        Some("PointExceedsDegree") => TerminalReason::PointExceedsDegree {
            point: ProjPoint::new(triple(t, "point")?)?,
            multiplicity: u32_of(t, "multiplicity")?,
        },
        Some("ResidualEmptyByCount") => TerminalReason::ResidualEmptyByCount {
            method: serde_json::from_value::<RankMethod>(field(t, "method")?.clone())
                .map_err(|_| bad("method"))?,
        },
        _ => return Err(bad("terminal reason")),
    };
    Ok(ReductionCertificate {
        initial: state_from(field(v, "initial")?)?,
        steps,
        terminal,
        residual: state_from(field(v, "residual")?)?,
    })
}
