//! Verdicts, witnesses and condition reports shared by the checkers.

use std::fmt;

use num_traits::Zero;
use serde::ser::{SerializeStruct, Serializer};
use serde::Serialize;

use crate::algebra::rational::{format_rational, to_f64, Rational};
use crate::algebra::MultiPoly;

/// A point `(x, y)` with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SamplePoint {
    pub x: Vec<Rational>,
    pub y: Vec<Rational>,
}

impl SamplePoint {
    pub fn new(x: Vec<Rational>, y: Vec<Rational>) -> Self {
        assert_eq!(x.len(), y.len());
        SamplePoint { x, y }
    }

    pub fn n(&self) -> usize {
        self.x.len()
    }

    pub fn eval(&self, p: &MultiPoly) -> Rational {
        p.evaluate(&self.x, &self.y)
    }

    pub fn x_f64(&self) -> Vec<f64> {
        self.x.iter().map(to_f64).collect()
    }

    pub fn y_f64(&self) -> Vec<f64> {
        self.y.iter().map(to_f64).collect()
    }
}

fn fmt_coords(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(format_rational).collect();
    format!("({})", parts.join(", "))
}

impl fmt::Display for SamplePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "x={} y={}", fmt_coords(&self.x), fmt_coords(&self.y))
    }
}

impl Serialize for SamplePoint {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("SamplePoint", 2)?;
        let x: Vec<String> = self.x.iter().map(format_rational).collect();
        let y: Vec<String> = self.y.iter().map(format_rational).collect();
        st.serialize_field("x", &x)?;
        st.serialize_field("y", &y)?;
        st.end()
    }
}

impl Serialize for MultiPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

pub(crate) fn serialize_rational<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&format_rational(r))
}

/// Evidence attached to a failing condition: the offending nonzero
/// polynomial and a rational point where it does not vanish.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub label: String,
    pub polynomial: MultiPoly,
    pub point: SamplePoint,
    #[serde(serialize_with = "serialize_rational")]
    pub value: Rational,
}

impl Witness {
    /// Builds a witness for a nonzero polynomial, searching for a point
    /// where it does not vanish.
    pub fn for_polynomial(label: impl Into<String>, polynomial: MultiPoly) -> Witness {
        assert!(!polynomial.is_zero(), "witness polynomial must be nonzero");
        let point = find_nonvanishing_point(&polynomial);
        let value = point.eval(&polynomial);
        Witness {
            label: label.into(),
            polynomial,
            point,
            value,
        }
    }
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}: {} = {} at {}",
            self.label,
            self.polynomial,
            format_rational(&self.value),
            self.point
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Verdict {
    Holds,
    Fails { witnesses: Vec<Witness> },
    Inconclusive { reason: String },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Holds,
    Fails,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Holds => "Holds",
            Status::Fails => "Fails",
            Status::Inconclusive => "Inconclusive",
        })
    }
}

impl Verdict {
    /// `Holds` when every labelled polynomial is zero, otherwise `Fails`
    /// with one witness per nonzero polynomial.
    pub fn from_polynomials<I, L>(polys: I) -> Verdict
    where
        I: IntoIterator<Item = (L, MultiPoly)>,
        L: Into<String>,
    {
        let witnesses: Vec<Witness> = polys
            .into_iter()
            .filter(|(_, p)| !p.is_zero())
            .map(|(l, p)| Witness::for_polynomial(l, p))
            .collect();
        if witnesses.is_empty() {
            Verdict::Holds
        } else {
            Verdict::Fails { witnesses }
        }
    }

    pub fn status(&self) -> Status {
        match self {
            Verdict::Holds => Status::Holds,
            Verdict::Fails { .. } => Status::Fails,
            Verdict::Inconclusive { .. } => Status::Inconclusive,
        }
    }

    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Holds)
    }

    pub fn fails(&self) -> bool {
        matches!(self, Verdict::Fails { .. })
    }

    pub fn witnesses(&self) -> &[Witness] {
        match self {
            Verdict::Fails { witnesses } => witnesses,
            _ => &[],
        }
    }
}

/// Combines statuses: any failure wins, then any inconclusive entry.
pub fn combine<I: IntoIterator<Item = Status>>(statuses: I) -> Status {
    let mut out = Status::Holds;
    for s in statuses {
        match s {
            Status::Fails => return Status::Fails,
            Status::Inconclusive => out = Status::Inconclusive,
            Status::Holds => {}
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionEntry {
    pub name: String,
    pub statement: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Fact {
    pub name: String,
    pub value: String,
}

/// Per-condition verdicts plus derived facts for one check.
///
/// `overall` is `Holds` exactly when every condition holds.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConditionReport {
    pub check: String,
    pub conditions: Vec<ConditionEntry>,
    pub overall: Status,
    pub facts: Vec<Fact>,
}

impl ConditionReport {
    pub fn new(check: impl Into<String>) -> Self {
        ConditionReport {
            check: check.into(),
            conditions: Vec::new(),
            overall: Status::Holds,
            facts: Vec::new(),
        }
    }

    pub fn push_condition(
        &mut self,
        name: impl Into<String>,
        statement: impl Into<String>,
        verdict: Verdict,
    ) {
        self.conditions.push(ConditionEntry {
            name: name.into(),
            statement: statement.into(),
            verdict,
        });
        self.overall = combine(self.conditions.iter().map(|c| c.verdict.status()));
    }

    pub fn push_fact(&mut self, name: impl Into<String>, value: impl fmt::Display) {
        self.facts.push(Fact {
            name: name.into(),
            value: value.to_string(),
        });
    }

    pub fn condition(&self, name: &str) -> Option<&ConditionEntry> {
        self.conditions.iter().find(|c| c.name == name)
    }

    pub fn fact(&self, name: &str) -> Option<&str> {
        self.facts
            .iter()
            .find(|f| f.name == name)
            .map(|f| f.value.as_str())
    }
}

impl fmt::Display for ConditionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {}", self.check, self.overall)?;
        for c in &self.conditions {
            write!(f, "  [{}] {}: {}", c.verdict.status(), c.name, c.statement)?;
            match &c.verdict {
                Verdict::Holds => writeln!(f)?,
                Verdict::Fails { witnesses } => {
                    writeln!(f)?;
                    for w in witnesses {
                        writeln!(f, "      {w}")?;
                    }
                }
                Verdict::Inconclusive { reason } => writeln!(f, "\n      {reason}")?,
            }
        }
        for fact in &self.facts {
            writeln!(f, "  - {}: {}", fact.name, fact.value)?;
        }
        Ok(())
    }
}

/// Candidate coordinate values, in search order: 0, 1, -1, 1/2, -1/2, 2,
/// -2, 1/3, ...
fn grid_value(index: usize) -> Rational {
    if index == 0 {
        return Rational::zero();
    }
    let k = (index - 1) / 4 + 1;
    let k = k as i64;
    match (index - 1) % 4 {
        0 => Rational::from_integer(k.into()),
        1 => Rational::from_integer((-k).into()),
        2 => Rational::new(1.into(), (k + 1).into()),
        _ => Rational::new((-1).into(), (k + 1).into()),
    }
}

/// Deterministic search for a rational point where `p` is nonzero.
///
/// Tries `x = 0, y = (1, …, 1)` first, then walks growing grids
/// `S_k^(2n)` with `S_k` the first `k` candidate values. A nonzero
/// polynomial of total degree `d` cannot vanish on a product grid with more
/// than `d` values per coordinate, so the walk stops by `k = d + 1`.
pub fn find_nonvanishing_point(p: &MultiPoly) -> SamplePoint {
    assert!(!p.is_zero(), "zero polynomial vanishes everywhere");
    let n = p.n();
    let preferred = SamplePoint::new(
        vec![Rational::zero(); n],
        vec![Rational::from_integer(1.into()); n],
    );
    if !preferred.eval(p).is_zero() {
        return preferred;
    }
    let dims = 2 * n;
    let max_k = p.total_degree() as usize + 2;
    for k in 1..=max_k {
        let values: Vec<Rational> = (0..k).map(grid_value).collect();
        let mut idx = vec![0usize; dims];
        loop {
            // only points that use the newest value are unvisited
            if idx.iter().any(|&i| i == k - 1) {
                let coords: Vec<Rational> = idx.iter().map(|&i| values[i].clone()).collect();
                let point = SamplePoint::new(coords[..n].to_vec(), coords[n..].to_vec());
                if !point.eval(p).is_zero() {
                    return point;
                }
            }
            let mut d = 0;
            loop {
                if d == dims {
                    break;
                }
                idx[d] += 1;
                if idx[d] < k {
                    break;
                }
                idx[d] = 0;
                d += 1;
            }
            if d == dims {
                break;
            }
        }
    }
    unreachable!("a nonzero polynomial cannot vanish on the whole grid")
}
