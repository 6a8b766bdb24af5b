//! The catalogue of closed forms for standard configurations with at most
//! three lines.

use crate::geometry::{Exactness, KConfigType};
use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;
use std::fmt;

/// Parameter family of a catalogue row.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum RowKind {
    A,
    OneB,
    AB,
    OneBBPlus1,
    OneBCEven,
    OneBCOdd,
    OneB2bMinus2,
    OneB2bMinus1,
    OneB2b,
    OneB2bPlus1,
    OneBCLarge,
    T234,
    T235,
    TwoThreeC,
    TwoBC,
    ABC,
}

/// Closed form of a row: a single value or the (2,3,5) interval.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ClosedForm {
    Exact(BigRational),
    Interval(BigRational, BigRational),
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClosedForm::Exact(v) => write!(f, "{v}"),
            ClosedForm::Interval(lo, hi) => write!(f, "[{lo}, {hi}]"),
        }
    }
}

#[derive(Clone, Debug)]
pub struct TableRow {
    pub kind: RowKind,
    pub pattern: &'static str,
    pub note: &'static str,
    pub value: &'static str,
    pub source: &'static str,
    pub has_recipe: bool,
    pub recipe_exactness: Option<Exactness>,
}

/// All sixteen rows, in catalogue order.
pub fn table_rows() -> Vec<TableRow> {
    use Exactness::{AtLeast, Exact};
    let row = |kind, pattern, note, value, source, ex: Option<Exactness>| TableRow {
        kind,
        pattern,
        note,
        value,
        source,
        has_recipe: ex.is_some(),
        recipe_exactness: ex,
    };
    vec![
        row(RowKind::A, "(a)", "", "1", "one line", Some(AtLeast)),
        row(
            RowKind::OneB,
            "(1,b)",
            "b >= 2",
            "(2b-1)/b",
            "two lines, point off the long one",
            Some(Exact),
        ),
        row(
            RowKind::AB,
            "(a,b)",
            "a >= 2",
            "2",
            "union of lines",
            Some(AtLeast),
        ),
        row(
            RowKind::OneBBPlus1,
            "(1,b,b+1)",
            "b even, b >= 4",
            "(9b-4)/(3b)",
            "(1,b,b+1)",
            Some(Exact),
        ),
        row(
            RowKind::OneBCEven,
            "(1,b,c)",
            "c even, c <= 2b-4",
            "(6b+3c-4)/(2b+c)",
            "(1,b,c) c even",
            Some(Exact),
        ),
        row(
            RowKind::OneBCOdd,
            "(1,b,c)",
            "c odd, b+1 < c <= 2b-3",
            "(6b+3c-7)/(2b+c-1)",
            "(1,b,c) c odd",
            Some(AtLeast),
        ),
        row(
            RowKind::OneB2bMinus2,
            "(1,b,2b-2)",
            "",
            "(6b^2-14b+6)/(2b^2-4b+1)",
            "(1,b,2b-2)",
            Some(Exact),
        ),
        row(
            RowKind::OneB2bMinus1,
            "(1,b,2b-1)",
            "",
            "(6b^2-8b+1)/(2b^2-2b)",
            "(1,b,2b-1)",
            Some(Exact),
        ),
        row(
            RowKind::OneB2b,
            "(1,b,2b)",
            "",
            "(6b-5)/(2b-1)",
            "(1,b,2b)",
            Some(Exact),
        ),
        row(
            RowKind::OneB2bPlus1,
            "(1,b,2b+1)",
            "",
            "(6b^2-2b-3)/(2b^2-1)",
            "(1,b,2b+1)",
            Some(Exact),
        ),
        row(
            RowKind::OneBCLarge,
            "(1,b,c)",
            "c >= 2b+2",
            "(3b-1)/b",
            "(1,b,c) c large",
            Some(AtLeast),
        ),
        row(
            RowKind::T234,
            "(2,3,4)",
            "",
            "17/6",
            "(2,3,4) with conic",
            Some(Exact),
        ),
        row(
            RowKind::T235,
            "(2,3,5)",
            "",
            "[17/6, 71/24]",
            "(2,3,5) bounds",
            None,
        ),
        row(
            RowKind::TwoThreeC,
            "(2,3,c)",
            "c >= 6",
            "3",
            "(2,b,c)",
            Some(AtLeast),
        ),
        row(
            RowKind::TwoBC,
            "(2,b,c)",
            "b >= 4",
            "3",
            "(2,b,c)",
            Some(AtLeast),
        ),
        row(
            RowKind::ABC,
            "(a,b,c)",
            "a >= 3",
            "3",
            "(a,b,c)",
            Some(AtLeast),
        ),
    ]
}

fn guard(kind: RowKind, d: &[u32]) -> bool {
    use RowKind::*;
    match (kind, d) {
        (A, [_]) => true,
        (OneB, [1, b]) => *b >= 2,
        (AB, [a, _]) => *a >= 2,
        (OneBBPlus1, [1, b, c]) => *c == b + 1 && b % 2 == 0 && *b >= 4,
        (OneBCEven, [1, b, c]) => c % 2 == 0 && c + 4 <= 2 * b,
        (OneBCOdd, [1, b, c]) => c % 2 == 1 && b + 1 < *c && c + 3 <= 2 * b,
        (OneB2bMinus2, [1, b, c]) => c + 2 == 2 * b,
        (OneB2bMinus1, [1, b, c]) => c + 1 == 2 * b,
        (OneB2b, [1, b, c]) => *c == 2 * b,
        (OneB2bPlus1, [1, b, c]) => *c == 2 * b + 1,
        (OneBCLarge, [1, b, c]) => *c >= 2 * b + 2,
        (T234, [2, 3, 4]) | (T235, [2, 3, 5]) => true,
        (TwoThreeC, [2, 3, c]) => *c >= 6,
        (TwoBC, [2, b, _]) => *b >= 4,
        (ABC, [a, _, _]) => *a >= 3,
        _ => false,
    }
}

/// Row matching a type, or `None` for uncatalogued types.
///
/// Panics if two guards accept the same type.
pub fn classify(t: &KConfigType) -> Option<RowKind> {
    let hits: Vec<RowKind> = table_rows()
        .into_iter()
        .map(|r| r.kind)
        .filter(|&k| guard(k, t.degrees()))
        .collect();
    assert!(hits.len() <= 1, "type {t} matches rows {hits:?}");
    hits.first().copied()
}

/// `(mu, d)` as used by the row's witness curve: the scheme `mu X` has
/// initial degree `d`, and `mu m X` has `m d`.
pub fn mu_d(kind: RowKind, t: &KConfigType) -> Option<(u64, u64)> {
    use RowKind::*;
    let d: Vec<u64> = t.degrees().iter().map(|&x| x as u64).collect();
    let b = d.get(1).copied().unwrap_or(0);
    let c = d.get(2).copied().unwrap_or(0);
    Some(match kind {
        A => (1, 1),
        OneB => (b, 2 * b - 1),
        AB => (1, 2),
        OneBBPlus1 => (3 * b / 2, (9 * b - 4) / 2),
        OneBCEven => ((2 * b + c) / 2, (6 * b + 3 * c - 4) / 2),
        OneBCOdd => ((2 * b + c - 1) / 2, (6 * b + 3 * c - 7) / 2),
        OneB2bMinus2 => (2 * b * b - 4 * b + 1, 6 * b * b - 14 * b + 6),
        OneB2bMinus1 => (2 * b * b - 2 * b, 6 * b * b - 8 * b + 1),
        OneB2b => (2 * b - 1, 6 * b - 5),
        OneB2bPlus1 => (2 * b * b - 1, 6 * b * b - 2 * b - 3),
        OneBCLarge => (b, 3 * b - 1),
        T234 => (6, 17),
        T235 => return None,
        TwoThreeC | TwoBC | ABC => {
            if d == [2, 3, 6] {
                (3, 9)
            } else if d == [2, 4, 5] {
                (2, 6)
            } else {
                (1, 3)
            }
        }
    })
}

pub fn closed_form_of(kind: RowKind, t: &KConfigType) -> ClosedForm {
    let q = |n: i64, d: i64| BigRational::new(BigInt::from(n), BigInt::from(d));
    match mu_d(kind, t) {
        Some((mu, d)) => ClosedForm::Exact(q(d as i64, mu as i64)),
        None => ClosedForm::Interval(q(17, 6), q(71, 24)),
    }
}
