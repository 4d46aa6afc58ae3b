//! Biquandle brackets: coefficient matrices `A`, `B` with derived `δ` and `w`.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{Ring, RingElement};
use crate::biquandle::Biquandle;
use crate::matrix::{Matrix, ShapeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BracketError {
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error("entry {entry} lies in {found}, expected {expected}")]
    RingMismatch {
        entry: String,
        expected: String,
        found: String,
    },
    #[error("not a bracket: {0}")]
    Invalid(BracketReport),
    #[error("scaling factor {0} is not a unit")]
    NotAUnit(String),
}

/// The condition a [`BracketViolation`] refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BracketCondition {
    /// Every entry of `A` and `B` is a unit.
    #[serde(rename = "units")]
    Units,
    /// `δ = -A B⁻¹ - A⁻¹ B` is the same for every pair.
    #[serde(rename = "ii")]
    Delta,
    /// `w = δ A_xx + B_xx` is a unit.
    #[serde(rename = "w-unit")]
    WUnit,
    /// `δ A_xx + B_xx = w` for every `x`.
    #[serde(rename = "i")]
    W,
    /// `δ A_xx⁻¹ + B_xx⁻¹ = w⁻¹` for every `x`.
    #[serde(rename = "i-inverse")]
    WInverse,
    /// `w = -A_xx² B_xx⁻¹` for every `x`.
    #[serde(rename = "w-square")]
    WSquare,
    /// One of the five equations of condition (iii), numbered 1 to 5.
    #[serde(rename = "iii")]
    Exchange(u8),
}

impl fmt::Display for BracketCondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Units => write!(f, "units"),
            Self::Delta => write!(f, "(ii) delta"),
            Self::WUnit => write!(f, "w unit"),
            Self::W => write!(f, "(i) w"),
            Self::WInverse => write!(f, "(i) w inverse"),
            Self::WSquare => write!(f, "w = -A^2 B^-1"),
            Self::Exchange(k) => write!(f, "(iii) equation {k}"),
        }
    }
}

/// First failure of one condition. Witness entries are 1-based element labels:
/// a pair for entry-level conditions (two pairs for `δ`), `[x]` for diagonal
/// conditions, `[x, y, z]` for (iii).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BracketViolation {
    pub condition: BracketCondition,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketReport {
    pub delta: Option<RingElement>,
    pub w: Option<RingElement>,
    pub violations: Vec<BracketViolation>,
}

impl BracketReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violation(&self, condition: BracketCondition) -> Option<&BracketViolation> {
        self.violations.iter().find(|v| v.condition == condition)
    }
}

impl fmt::Display for BracketReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "all conditions hold");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{} at {:?}", v.condition, v.witness))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

fn one_based(v: &[usize]) -> Vec<usize> {
    v.iter().map(|x| x + 1).collect()
}

fn check_ring(ring: &Ring, m: &Matrix<RingElement>, name: &str) -> Result<(), BracketError> {
    for ((i, j), e) in m.indexed() {
        if e.ring() != ring {
            return Err(BracketError::RingMismatch {
                entry: format!("{name}[{},{}]", i + 1, j + 1),
                expected: ring.to_string(),
                found: e.ring().to_string(),
            });
        }
    }
    Ok(())
}

fn delta_of(a: &RingElement, b: &RingElement) -> Option<RingElement> {
    let (ai, bi) = (a.inverse()?, b.inverse()?);
    Some(-(a * &bi) - &ai * b)
}

/// Derives `δ` and `w` and checks their consistency.
///
/// The report is empty on success; otherwise it lists the first failing
/// condition in the order units, `δ`, `w`.
pub fn derive_delta_w(
    biquandle: &Biquandle,
    ring: &Ring,
    a: &Matrix<RingElement>,
    b: &Matrix<RingElement>,
) -> Result<BracketReport, BracketError> {
    let n = biquandle.size();
    if a.size() != n || b.size() != n {
        return Err(ShapeError {
            expected: n,
            detail: format!("A is {0}x{0}, B is {1}x{1}", a.size(), b.size()),
        }
        .into());
    }
    check_ring(ring, a, "A")?;
    check_ring(ring, b, "B")?;

    let mut report = BracketReport {
        delta: None,
        w: None,
        violations: Vec::new(),
    };
    let fail = |report: &mut BracketReport, condition, witness: &[usize]| {
        report.violations.push(BracketViolation {
            condition,
            witness: one_based(witness),
        });
    };

    for ((i, j), _) in a.indexed() {
        if !a[(i, j)].is_unit() || !b[(i, j)].is_unit() {
            fail(&mut report, BracketCondition::Units, &[i, j]);
            return Ok(report);
        }
    }

    let delta = delta_of(&a[(0, 0)], &b[(0, 0)]).expect("units checked");
    for ((i, j), _) in a.indexed() {
        if delta_of(&a[(i, j)], &b[(i, j)]).as_ref() != Some(&delta) {
            fail(&mut report, BracketCondition::Delta, &[0, 0, i, j]);
            return Ok(report);
        }
    }
    report.delta = Some(delta.clone());

    let w = &delta * &a[(0, 0)] + &b[(0, 0)];
    let Some(w_inv) = w.inverse() else {
        fail(&mut report, BracketCondition::WUnit, &[0]);
        return Ok(report);
    };
    report.w = Some(w.clone());

    let diag = |x: usize| (&a[(x, x)], &b[(x, x)]);
    if let Some(x) = (0..n).find(|&x| {
        let (ax, bx) = diag(x);
        &delta * ax + bx != w
    }) {
        fail(&mut report, BracketCondition::W, &[x]);
    }
    if let Some(x) = (0..n).find(|&x| {
        let (ax, bx) = diag(x);
        &delta * &ax.inverse().unwrap() + bx.inverse().unwrap() != w_inv
    }) {
        fail(&mut report, BracketCondition::WInverse, &[x]);
    }
    if let Some(x) = (0..n).find(|&x| {
        let (ax, bx) = diag(x);
        -(ax * ax * bx.inverse().unwrap()) != w
    }) {
        fail(&mut report, BracketCondition::WSquare, &[x]);
    }
    Ok(report)
}

/// Full verification: units, `δ`, `w`, then the five equations of (iii).
pub fn check_bracket(
    biquandle: &Biquandle,
    ring: &Ring,
    a: &Matrix<RingElement>,
    b: &Matrix<RingElement>,
) -> Result<BracketReport, BracketError> {
    let mut report = derive_delta_w(biquandle, ring, a, b)?;
    let Some(delta) = report.delta.clone() else {
        return Ok(report);
    };
    let n = biquandle.size();
    let (u, o) = (|p, q| biquandle.under(p, q), |p, q| biquandle.over(p, q));
    let mut first: [Option<[usize; 3]>; 5] = [None; 5];
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let l = (x, y);
                let m = (y, z);
                let r = (u(x, y), o(z, y));
                let l2 = (x, z);
                let m2 = (o(y, x), o(z, x));
                let r2 = (u(x, z), u(y, z));
                let holds = exchange_equations(&delta, a, b, [l, m, r, l2, m2, r2]);
                for k in 0..5 {
                    if !holds[k] && first[k].is_none() {
                        first[k] = Some([x, y, z]);
                    }
                }
            }
        }
    }
    for (k, w) in first.iter().enumerate() {
        if let Some(w) = w {
            report.violations.push(BracketViolation {
                condition: BracketCondition::Exchange(k as u8 + 1),
                witness: one_based(w),
            });
        }
    }
    Ok(report)
}

type Pair = (usize, usize);

/// Evaluates the five equations of (iii) at the six index pairs
/// `(x,y), (y,z), (x⊳̲y, z⊳̄y), (x,z), (y⊳̄x, z⊳̄x), (x⊳̲z, y⊳̲z)`.
fn exchange_equations(
    delta: &RingElement,
    a: &Matrix<RingElement>,
    b: &Matrix<RingElement>,
    [p1, p2, p3, q1, q2, q3]: [Pair; 6],
) -> [bool; 5] {
    let (a1, a2, a3) = (&a[p1], &a[p2], &a[p3]);
    let (b1, b2, b3) = (&b[p1], &b[p2], &b[p3]);
    let (c1, c2, c3) = (&a[q1], &a[q2], &a[q3]);
    let (d1, d2, d3) = (&b[q1], &b[q2], &b[q3]);
    let eq1 = a1 * a2 * a3 == c1 * c2 * c3;
    let eq2 = a1 * b2 * b3 == d1 * d2 * c3;
    let eq3 = b1 * a2 * b3 == d1 * c2 * d3;
    let eq4 = a1 * a2 * b3 == c1 * d2 * c3 + c1 * c2 * d3 + delta * c1 * d2 * d3 + d1 * d2 * d3;
    let eq5 = d1 * c2 * c3 == b1 * a2 * a3 + a1 * b2 * a3 + delta * b1 * b2 * a3 + b1 * b2 * b3;
    [eq1, eq2, eq3, eq4, eq5]
}

/// Unverified bracket data, as read from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BracketData {
    pub biquandle: Biquandle,
    pub ring: Ring,
    pub a: Matrix<RingElement>,
    pub b: Matrix<RingElement>,
}

impl BracketData {
    pub fn check(&self) -> Result<BracketReport, BracketError> {
        check_bracket(&self.biquandle, &self.ring, &self.a, &self.b)
    }

    pub fn build(self) -> Result<BiquandleBracket, BracketError> {
        BiquandleBracket::new(self.biquandle, self.ring, self.a, self.b)
    }
}

impl From<&BiquandleBracket> for BracketData {
    fn from(b: &BiquandleBracket) -> Self {
        Self {
            biquandle: b.biquandle.clone(),
            ring: b.ring.clone(),
            a: b.a.clone(),
            b: b.b.clone(),
        }
    }
}

/// A verified biquandle bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiquandleBracket {
    biquandle: Biquandle,
    ring: Ring,
    a: Matrix<RingElement>,
    b: Matrix<RingElement>,
    delta: RingElement,
    w: RingElement,
}

impl BiquandleBracket {
    pub fn new(
        biquandle: Biquandle,
        ring: Ring,
        a: Matrix<RingElement>,
        b: Matrix<RingElement>,
    ) -> Result<Self, BracketError> {
        let report = check_bracket(&biquandle, &ring, &a, &b)?;
        if !report.passed() {
            return Err(BracketError::Invalid(report));
        }
        Ok(Self {
            delta: report.delta.unwrap(),
            w: report.w.unwrap(),
            biquandle,
            ring,
            a,
            b,
        })
    }

    /// `A ≡ a`, `B ≡ b`.
    pub fn constant(
        biquandle: Biquandle,
        a: RingElement,
        b: RingElement,
    ) -> Result<Self, BracketError> {
        let n = biquandle.size();
        let ring = a.ring().clone();
        Self::new(
            biquandle,
            ring,
            Matrix::from_fn(n, |_, _| a.clone()),
            Matrix::from_fn(n, |_, _| b.clone()),
        )
    }

    pub fn biquandle(&self) -> &Biquandle {
        &self.biquandle
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn a(&self) -> &Matrix<RingElement> {
        &self.a
    }

    pub fn b(&self) -> &Matrix<RingElement> {
        &self.b
    }

    pub fn delta(&self) -> &RingElement {
        &self.delta
    }

    pub fn w(&self) -> &RingElement {
        &self.w
    }

    /// Multiplies every entry by the unit `c`.
    pub fn scale(&self, c: &RingElement) -> Result<Self, BracketError> {
        if c.ring() != &self.ring || !c.is_unit() {
            return Err(BracketError::NotAUnit(c.to_string()));
        }
        Self::new(
            self.biquandle.clone(),
            self.ring.clone(),
            self.a.map(|x| x * c),
            self.b.map(|x| x * c),
        )
    }

    /// The unit `c` with `other = scale(self, c)`, if there is one.
    pub fn scaling_factor_to(&self, other: &BiquandleBracket) -> Option<RingElement> {
        if self.biquandle != other.biquandle || self.ring != other.ring {
            return None;
        }
        let c = &other.a[(0, 0)] * &self.a[(0, 0)].inverse()?;
        let same = |m: &Matrix<RingElement>, n: &Matrix<RingElement>| {
            m.indexed().all(|(p, x)| &(x * &c) == &n[p])
        };
        (same(&self.a, &other.a) && same(&self.b, &other.b)).then_some(c)
    }

    pub fn equivalent_up_to_scaling(&self, other: &BiquandleBracket) -> bool {
        self.scaling_factor_to(other).is_some()
    }

    /// Block matrix `[A | B]` as text, one row per line.
    pub fn presentation(&self) -> String {
        presentation(&self.a, &self.b)
    }
}

/// Formats `[A | B]` with columns padded to a common width.
pub fn presentation(a: &Matrix<RingElement>, b: &Matrix<RingElement>) -> String {
    let cells: Vec<Vec<String>> = a
        .rows()
        .zip(b.rows())
        .map(|(ra, rb)| ra.iter().chain(rb).map(|e| e.to_string()).collect())
        .collect();
    let width = cells.iter().flatten().map(|c| c.chars().count()).max().unwrap_or(1);
    let n = a.size();
    cells
        .iter()
        .map(|row| {
            let pad = |c: &String| format!("{c:>width$}");
            let left: Vec<String> = row[..n].iter().map(pad).collect();
            let right: Vec<String> = row[n..].iter().map(pad).collect();
            format!("[ {} | {} ]", left.join(" "), right.join(" "))
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Entrywise products `(A' ⊙ φ, B' ⊙ φ)`; no verification.
pub fn hadamard(
    a: &Matrix<RingElement>,
    b: &Matrix<RingElement>,
    phi: &Matrix<RingElement>,
) -> Result<(Matrix<RingElement>, Matrix<RingElement>), BracketError> {
    let mix = |m: &Matrix<RingElement>| -> Result<Matrix<RingElement>, BracketError> {
        let out = m.zip_with(phi, |x, y| x.try_mul(y))?;
        out.try_map(|r| {
            r.clone().map_err(|e| BracketError::RingMismatch {
                entry: "phi".into(),
                expected: m[(0, 0)].ring().to_string(),
                found: e.to_string(),
            })
        })
    };
    Ok((mix(a)?, mix(b)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64) -> Ring {
        Ring::modular(n).unwrap()
    }

    fn mat(r: &Ring, rows: &[&[i64]]) -> Matrix<RingElement> {
        Matrix::from_rows(
            rows.iter().map(|row| row.iter().map(|&v| r.int(v)).collect()).collect(),
            None,
        )
        .unwrap()
    }

    #[test]
    fn constant_jones_bracket() {
        let r = Ring::laurent(&["q"]).unwrap();
        let q = r.var("q").unwrap();
        let qi = q.inverse().unwrap();
        let br = BiquandleBracket::constant(Biquandle::trivial(1).unwrap(), q.clone(), qi).unwrap();
        let expect_delta = -(&q * &q) - r.monomial(1, &[("q", -2)]).unwrap();
        assert_eq!(br.delta(), &expect_delta);
        assert_eq!(br.w(), &r.monomial(-1, &[("q", 3)]).unwrap());
    }

    #[test]
    fn trivial_one_over_z4() {
        let r = z(4);
        let br = BiquandleBracket::new(
            Biquandle::trivial(1).unwrap(),
            r.clone(),
            mat(&r, &[&[1]]),
            mat(&r, &[&[1]]),
        )
        .unwrap();
        assert_eq!(br.delta(), &r.int(2));
        assert_eq!(br.w(), &r.int(3));
    }

    #[test]
    fn remark4_bracket() {
        let r = z(4);
        let report = check_bracket(
            &Biquandle::trivial(2).unwrap(),
            &r,
            &mat(&r, &[&[1, 1], &[1, 1]]),
            &mat(&r, &[&[1, 3], &[3, 1]]),
        )
        .unwrap();
        assert!(report.passed(), "{report}");
    }

    #[test]
    fn non_unit_entry() {
        let r = z(4);
        let report = check_bracket(
            &Biquandle::trivial(2).unwrap(),
            &r,
            &mat(&r, &[&[1, 2], &[1, 1]]),
            &mat(&r, &[&[1, 3], &[3, 1]]),
        )
        .unwrap();
        assert_eq!(report.violations[0].condition, BracketCondition::Units);
        assert_eq!(report.violations[0].witness, vec![1, 2]);
    }

    #[test]
    fn delta_mismatch() {
        let r = z(5);
        let report = check_bracket(
            &Biquandle::trivial(2).unwrap(),
            &r,
            &mat(&r, &[&[1, 1], &[1, 1]]),
            &mat(&r, &[&[1, 2], &[1, 1]]),
        )
        .unwrap();
        let v = report.violation(BracketCondition::Delta).unwrap();
        assert_eq!(v.witness, vec![1, 1, 1, 2]);
    }

    #[test]
    fn shape_mismatch() {
        let r = z(5);
        assert!(matches!(
            check_bracket(&Biquandle::trivial(2).unwrap(), &r, &mat(&r, &[&[1]]), &mat(&r, &[&[1]])),
            Err(BracketError::Shape(_))
        ));
    }

    #[test]
    fn scaling() {
        let r = z(5);
        let br = BiquandleBracket::constant(Biquandle::flip2(), r.int(1), r.int(2)).unwrap();
        let s = br.scale(&r.int(3)).unwrap();
        assert_eq!(s.delta(), br.delta());
        assert_eq!(s.w(), &(br.w() * &r.int(3)));
        assert_eq!(br.scale(&r.int(1)).unwrap(), br);
        assert_eq!(br.scaling_factor_to(&s), Some(r.int(3)));
        assert!(br.scale(&r.int(0)).is_err());
        let ss = s.scale(&r.int(4)).unwrap();
        assert_eq!(ss, br.scale(&r.int(2)).unwrap());
    }

    #[test]
    fn hadamard_identity() {
        let r = z(7);
        let a = mat(&r, &[&[1, 2], &[3, 4]]);
        let b = mat(&r, &[&[5, 6], &[1, 2]]);
        let ones = mat(&r, &[&[1, 1], &[1, 1]]);
        assert_eq!(hadamard(&a, &b, &ones).unwrap(), (a.clone(), b.clone()));
        assert!(hadamard(&a, &b, &mat(&r, &[&[1]])).is_err());
    }

    #[test]
    fn presentation_text() {
        let r = z(4);
        let br = BiquandleBracket::new(
            Biquandle::trivial(2).unwrap(),
            r.clone(),
            mat(&r, &[&[1, 1], &[1, 1]]),
            mat(&r, &[&[1, 3], &[3, 1]]),
        )
        .unwrap();
        assert_eq!(br.presentation(), "[ 1 1 | 1 3 ]\n[ 1 1 | 3 1 ]");
    }
}
