use super::config::standard_parts;
use super::{line_through, FatPointScheme, KConfigType, Line, PolyCurve, ProjPoint};
use crate::configs::table::{classify, mu_d, RowKind};
use crate::error::{Error, Result};
use crate::linsys::{system_basis, LinearSystemQuery};
use serde::Serialize;
use std::fmt;

/// Points and lines of the standard configurations with three lines, in
/// the usual naming: `P_i` on `x2 = 0`, `Q_i` on `x2 = x0`, and `R`
/// (or `R_1`, `R_2`) on `x2 = 2 x0`.
pub mod named {
    use super::*;

    pub fn p(i: u32) -> ProjPoint {
        ProjPoint::from_ints(1, i as i64 - 1, 0)
    }

    pub fn q(i: u32) -> ProjPoint {
        ProjPoint::from_ints(1, i as i64 - 1, 1)
    }

    pub fn r() -> ProjPoint {
        r1()
    }

    pub fn r1() -> ProjPoint {
        ProjPoint::from_ints(1, 0, 2)
    }

    pub fn r2() -> ProjPoint {
        ProjPoint::from_ints(1, 1, 2)
    }

    /// `x2 = 0`, through the `P_i`.
    pub fn l1() -> Line {
        Line::from_ints(0, 0, 1)
    }

    /// `x2 = x0`, through the `Q_i`.
    pub fn l2() -> Line {
        Line::from_ints(-1, 0, 1)
    }

    /// `x2 = 2 x0`, through `R_1, R_2`.
    pub fn l3() -> Line {
        Line::from_ints(-2, 0, 1)
    }

    /// Through `P_{2i-1}`, `Q_i` and `R`.
    pub fn m(i: u32) -> Line {
        line_through(&p(2 * i - 1), &q(i)).expect("distinct")
    }

    /// Through `P_{2i}` and `R`.
    pub fn n(i: u32) -> Line {
        line_through(&p(2 * i), &r()).expect("distinct")
    }

    /// Through `Q_i` and `R`.
    pub fn t(i: u32) -> Line {
        line_through(&q(i), &r()).expect("distinct")
    }
}

/// Whether a recipe's point multiplicity is attained exactly or bounded
/// below.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Exactness {
    Exact,
    AtLeast,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Shape {
    Line(Line),
    Curve(PolyCurve),
}

/// `multiplicity * shape`, with a display label such as `M2` or `C1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurveComponent {
    pub shape: Shape,
    pub multiplicity: u32,
    pub label: String,
}

impl CurveComponent {
    pub fn line(l: Line, multiplicity: u32, label: impl Into<String>) -> Self {
        CurveComponent {
            shape: Shape::Line(l),
            multiplicity,
            label: label.into(),
        }
    }

    pub fn curve(c: PolyCurve, multiplicity: u32, label: impl Into<String>) -> Self {
        let label = label.into();
        match c.as_line() {
            Some(l) => Self::line(l, multiplicity, label),
            None => CurveComponent {
                shape: Shape::Curve(c),
                multiplicity,
                label,
            },
        }
    }

    pub fn degree(&self) -> u32 {
        match &self.shape {
            Shape::Line(_) => 1,
            Shape::Curve(c) => c.degree(),
        }
    }

    /// Order of vanishing of the reduced component (multiplicity ignored).
    pub fn order_at(&self, p: &ProjPoint) -> u32 {
        match &self.shape {
            Shape::Line(l) => l.contains(p) as u32,
            Shape::Curve(c) => c.order_at(p),
        }
    }
}

impl fmt::Display for CurveComponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let body = match &self.shape {
            Shape::Line(l) => l.to_string(),
            Shape::Curve(c) => format!("{c} = 0"),
        };
        if self.multiplicity == 1 {
            write!(f, "{}: {body}", self.label)
        } else {
            write!(f, "{}{}: {body}", self.multiplicity, self.label)
        }
    }
}

/// A witness curve `F` as a formal sum of components.
#[derive(Clone, Debug)]
pub struct CurveRecipe {
    pub components: Vec<CurveComponent>,
    pub declared_degree: u32,
    pub declared_point_multiplicity: u32,
    pub exactness: Exactness,
    /// Set when a component expected to be a higher-degree curve came out
    /// as a line.
    pub degenerate: bool,
}

impl CurveRecipe {
    pub fn degree(&self) -> u32 {
        self.components
            .iter()
            .map(|c| c.multiplicity * c.degree())
            .sum()
    }

    pub fn audit(&self, points: &[ProjPoint]) -> RecipeAudit {
        let per_point: Vec<u32> = points.iter().map(|p| multiplicity_at(self, p)).collect();
        let want = self.declared_point_multiplicity;
        let multiplicity_ok = per_point.iter().all(|&m| match self.exactness {
            Exactness::Exact => m == want,
            Exactness::AtLeast => m >= want,
        });
        RecipeAudit {
            degree: self.degree(),
            degree_ok: self.degree() == self.declared_degree,
            per_point,
            multiplicity_ok,
        }
    }
}

impl fmt::Display for CurveRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rel = match self.exactness {
            Exactness::Exact => "=",
            Exactness::AtLeast => ">=",
        };
        writeln!(
            f,
            "degree {}, multiplicity {rel} {}{}",
            self.declared_degree,
            self.declared_point_multiplicity,
            if self.degenerate { " (degenerate)" } else { "" }
        )?;
        for c in &self.components {
            writeln!(f, "  {c}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RecipeAudit {
    pub degree: u32,
    pub degree_ok: bool,
    pub per_point: Vec<u32>,
    pub multiplicity_ok: bool,
}

impl RecipeAudit {
    pub fn passed(&self) -> bool {
        self.degree_ok && self.multiplicity_ok
    }
}

/// Sum of component multiplicity times vanishing order at `p`.
pub fn multiplicity_at(r: &CurveRecipe, p: &ProjPoint) -> u32 {
    r.components
        .iter()
        .map(|c| c.multiplicity * c.order_at(p))
        .sum()
}

/// The unique curve of degree `degree` through `conditions`.
fn unique_curve(conditions: Vec<(ProjPoint, u32)>, degree: u32) -> Result<PolyCurve> {
    let scheme = FatPointScheme::from_clamped(conditions);
    let mut basis = system_basis(&LinearSystemQuery::new(scheme, degree));
    if basis.len() != 1 {
        return Err(Error::KernelDimension {
            expected: 1,
            found: basis.len(),
        });
    }
    Ok(basis.pop().expect("one element"))
}

/// Degree `b-1` curve through the even `P` up to `P_{2b-2}`, every `Q`
/// except `Q_i`, and `R` with multiplicity `b-2`.
fn curve_c_short(b: u32, i: u32) -> Result<PolyCurve> {
    let mut cond: Vec<(ProjPoint, u32)> = (1..b).map(|k| (named::p(2 * k), 1)).collect();
    cond.extend((1..=b).filter(|&j| j != i).map(|j| (named::q(j), 1)));
    cond.push((named::r(), b - 2));
    unique_curve(cond, b - 1)
}

/// Degree `b` curve through the even `P` up to `P_{2b}` except `P_{skip}`,
/// the extra points `extra`, every `Q`, and `R` with multiplicity `b-1`.
fn curve_c_long(b: u32, skip: Option<u32>, extra: &[ProjPoint]) -> Result<PolyCurve> {
    let mut cond: Vec<(ProjPoint, u32)> = (1..=b)
        .map(|k| 2 * k)
        .filter(|&k| Some(k) != skip)
        .map(|k| (named::p(k), 1))
        .collect();
    cond.extend(extra.iter().map(|p| (p.clone(), 1)));
    cond.extend((1..=b).map(|j| (named::q(j), 1)));
    cond.push((named::r(), b - 1));
    unique_curve(cond, b)
}

/// The witness curve of the catalogue row matching `t`.
///
/// Higher-degree components are recovered as one-dimensional kernels of
/// interpolation matrices.
pub fn build_recipe(ty: &KConfigType) -> Result<CurveRecipe> {
    use named::*;
    use RowKind::*;
    let kind = classify(ty).ok_or_else(|| Error::NoRecipe(ty.degrees().to_vec()))?;
    let (mu, d) = mu_d(kind, ty).ok_or_else(|| Error::NoRecipe(ty.degrees().to_vec()))?;
    let deg = ty.degrees();
    let b = deg.get(1).copied().unwrap_or(0);
    let c = deg.get(2).copied().unwrap_or(0);
    let mut comps: Vec<CurveComponent> = Vec::new();
    let mut line = |l: Line, k: u32, label: String| {
        if k > 0 {
            comps.push(CurveComponent::line(l, k, label));
        }
    };
    let exactness = match kind {
        A | AB | OneBCOdd | OneBCLarge | TwoThreeC | TwoBC | ABC => Exactness::AtLeast,
        _ => Exactness::Exact,
    };
    let mut curves: Vec<(PolyCurve, u32, String)> = Vec::new();
    match kind {
        A | AB | TwoThreeC | TwoBC | ABC => {
            let k = (mu as u32).max(1);
            for (i, part) in standard_parts(ty).into_iter().enumerate() {
                line(part.line, k, format!("L{}", i + 1));
            }
        }
        OneB => {
            // R = [1:0:1] off the line x2 = 0 carrying b points
            let r = ProjPoint::from_ints(1, 0, 1);
            line(l1(), b - 1, "L".into());
            for j in 0..b {
                let pj = ProjPoint::from_ints(1, j as i64, 0);
                line(line_through(&r, &pj)?, 1, format!("RP{}", j + 1));
            }
        }
        OneBBPlus1 | OneBCEven | OneBCOdd => {
            let (k, m_count, n_count) = match kind {
                OneBBPlus1 => ((3 * b - 2) / 2, b / 2 + 1, b / 2),
                OneBCEven => ((2 * b + c - 2) / 2, c / 2, c / 2),
                _ => ((2 * b + c - 3) / 2, c.div_ceil(2), (c - 1) / 2),
            };
            line(l1(), k, "L1".into());
            line(l2(), k, "L2".into());
            for i in 1..=m_count {
                line(m(i), 1, format!("M{i}"));
            }
            for i in 1..=n_count {
                line(n(i), 1, format!("N{i}"));
            }
            for i in m_count + 1..=b {
                line(t(i), 1, format!("T{i}"));
            }
        }
        OneB2bMinus2 => {
            line(l1(), 2 * b * b - 5 * b + 2, "L1".into());
            line(l2(), 2 * b * b - 6 * b + 4, "L2".into());
            for i in 1..b {
                line(m(i), b - 1, format!("M{i}"));
            }
            line(t(b), b - 2, format!("T{b}"));
            for i in 1..b {
                curves.push((curve_c_short(b, i)?, 1, format!("C{i}")));
            }
        }
        OneB2bMinus1 => {
            line(l1(), 2 * b * b - 3 * b, "L1".into());
            line(l2(), 2 * b * b - 4 * b + 1, "L2".into());
            for i in 1..=b {
                line(m(i), b, format!("M{i}"));
            }
            for i in 1..=b {
                curves.push((curve_c_short(b, i)?, 1, format!("C{i}")));
            }
        }
        OneB2b => {
            line(l1(), 2 * b - 2, "L1".into());
            line(l2(), 2 * b - 3, "L2".into());
            for i in 1..=b {
                line(m(i), 1, format!("M{i}"));
            }
            curves.push((curve_c_long(b, None, &[])?, 1, "C".into()));
        }
        OneB2bPlus1 => {
            line(l1(), 2 * b * b - b - 1, "L1".into());
            line(l2(), 2 * b * b - 2 * b - 2, "L2".into());
            for i in 1..=b {
                line(m(i), b, format!("M{i}"));
            }
            let last = p(2 * b + 1);
            for i in 1..=b {
                curves.push((
                    curve_c_long(b, Some(2 * i), std::slice::from_ref(&last))?,
                    1,
                    format!("C{i}"),
                ));
            }
            curves.push((curve_c_long(b, None, &[])?, 1, format!("C{}", b + 1)));
        }
        OneBCLarge => {
            line(l1(), b, "L1".into());
            line(l2(), b - 1, "L2".into());
            for i in 1..=b {
                line(m(i), 1, format!("M{i}"));
            }
        }
        T234 => {
            line(l1(), 3, "L1".into());
            line(l2(), 2, "L2".into());
            line(line_through(&p(1), &q(1))?, 3, "M1".into());
            line(line_through(&p(2), &q(2))?, 2, "M2".into());
            line(line_through(&p(3), &r1())?, 2, "N1".into());
            line(line_through(&p(4), &r2())?, 3, "N2".into());
            let cond = [p(2), p(3), q(1), q(3), r1(), r2()]
                .map(|x| (x, 1))
                .to_vec();
            curves.push((unique_curve(cond, 2)?, 1, "C".into()));
        }
        T235 => unreachable!("no witness curve"),
    }
    let mut degenerate = false;
    for (curve, k, label) in curves {
        degenerate |= curve.degree() == 1;
        comps.push(CurveComponent::curve(curve, k, label));
    }
    Ok(CurveRecipe {
        components: comps,
        declared_degree: d as u32,
        declared_point_multiplicity: mu as u32,
        exactness,
        degenerate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::standard_k_config;

    fn ty(d: &[u32]) -> KConfigType {
        KConfigType::new(d.to_vec()).unwrap()
    }

    #[test]
    fn named_lines_pass_through_their_points() {
        for i in 1..=3 {
            assert!(named::m(i).contains(&named::p(2 * i - 1)));
            assert!(named::m(i).contains(&named::q(i)));
            assert!(named::m(i).contains(&named::r()));
        }
        assert_eq!(named::m(1), Line::from_ints(0, 1, 0));
    }

    #[test]
    fn recipes_pass_their_audits() {
        for d in [
            &[3][..],
            &[1, 4],
            &[3, 5],
            &[1, 4, 5],
            &[1, 5, 6],
            &[1, 5, 7],
            &[1, 3, 4],
            &[1, 2, 3],
            &[1, 3, 5],
            &[1, 2, 4],
            &[1, 3, 6],
            &[1, 2, 5],
            &[1, 2, 6],
            &[2, 3, 4],
            &[2, 3, 6],
            &[2, 4, 5],
            &[3, 4, 6],
        ] {
            let t = ty(d);
            let r = build_recipe(&t).unwrap();
            let audit = r.audit(&standard_k_config(&t));
            assert!(audit.passed(), "{t}: {audit:?}\n{r}");
        }
    }

    #[test]
    fn large_c_recipe_at_b_two() {
        let r = build_recipe(&ty(&[1, 2, 6])).unwrap();
        assert_eq!((r.declared_degree, r.declared_point_multiplicity), (5, 2));
        assert_eq!(r.exactness, Exactness::AtLeast);
        assert_eq!(multiplicity_at(&r, &named::p(1)), 3);
    }

    #[test]
    fn conic_in_two_three_four() {
        let r = build_recipe(&ty(&[2, 3, 4])).unwrap();
        assert_eq!((r.declared_degree, r.declared_point_multiplicity), (17, 6));
        assert_eq!(r.components.iter().filter(|c| c.degree() == 2).count(), 1);
    }

    #[test]
    fn degenerate_flag_for_one_two_three() {
        assert!(build_recipe(&ty(&[1, 2, 3])).unwrap().degenerate);
        assert!(!build_recipe(&ty(&[1, 3, 5])).unwrap().degenerate);
    }

    #[test]
    fn no_recipe_for_two_three_five() {
        assert!(matches!(
            build_recipe(&ty(&[2, 3, 5])),
            Err(Error::NoRecipe(_))
        ));
        assert!(build_recipe(&ty(&[1, 2, 3, 4])).is_err());
    }
}
