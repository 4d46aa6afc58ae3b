//! Finite biquandles given by operation tables.
//!
//! Elements are 0-based indices in the API. Tables read from or written to
//! files, and witnesses in reports, use 1-based labels so that they match
//! the usual printed operation tables.

use serde::Serialize;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum BiquandleError {
    #[error("malformed tables: {0}")]
    Format(String),
    #[error("tables violate the biquandle axioms: {0}")]
    Axioms(BiquandleReport),
    #[error("element {0} is out of range 1..={1}")]
    OutOfRange(usize, usize),
    #[error("{0}")]
    InvalidParameter(String),
}

/// Which table an operation reads.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Operation {
    /// `x ⊳̲ y`, "x passes under y".
    Under,
    /// `x ⊳̄ y`, "x passes over y".
    Over,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BiquandleAxiom {
    /// `x ⊳̲ x = x ⊳̄ x`.
    #[serde(rename = "i")]
    Diagonal,
    /// `x ↦ x ⊳̄ y` is a bijection for every `y`.
    #[serde(rename = "ii-alpha")]
    OverColumns,
    /// `x ↦ x ⊳̲ y` is a bijection for every `y`.
    #[serde(rename = "ii-beta")]
    UnderColumns,
    /// `S(x, y) = (y ⊳̄ x, x ⊳̲ y)` is a bijection.
    #[serde(rename = "ii-S")]
    SMap,
    #[serde(rename = "iii-1")]
    Exchange1,
    #[serde(rename = "iii-2")]
    Exchange2,
    #[serde(rename = "iii-3")]
    Exchange3,
}

impl BiquandleAxiom {
    pub const ALL: [BiquandleAxiom; 7] = [
        Self::Diagonal,
        Self::OverColumns,
        Self::UnderColumns,
        Self::SMap,
        Self::Exchange1,
        Self::Exchange2,
        Self::Exchange3,
    ];
}

/// First failure of one axiom. Witness entries are 1-based labels:
/// `[x]`, `[y]`, `[x1, y1, x2, y2]` (two pairs with equal `S` image) or `[x, y, z]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomViolation {
    pub axiom: BiquandleAxiom,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BiquandleReport {
    pub size: usize,
    pub violations: Vec<AxiomViolation>,
}

impl BiquandleReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violation(&self, axiom: BiquandleAxiom) -> Option<&AxiomViolation> {
        self.violations.iter().find(|v| v.axiom == axiom)
    }
}

impl std::fmt::Display for BiquandleReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.passed() {
            return write!(f, "all axioms hold");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{:?} at {:?}", v.axiom, v.witness))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

/// A validated finite biquandle.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Biquandle {
    n: usize,
    under: Vec<usize>,
    over: Vec<usize>,
}

/// Built-in constructors.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BiquandleKind {
    Trivial(usize),
    Flip2,
    Dihedral(usize),
}

/// Unverified 1-based operation tables, as read from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BiquandleTables {
    pub under: Vec<Vec<usize>>,
    pub over: Vec<Vec<usize>>,
}

impl BiquandleTables {
    pub fn check(&self) -> Result<BiquandleReport, BiquandleError> {
        check_biquandle(&self.under, &self.over)
    }

    pub fn build(&self) -> Result<Biquandle, BiquandleError> {
        Biquandle::from_tables(&self.under, &self.over)
    }
}

impl From<&Biquandle> for BiquandleTables {
    fn from(b: &Biquandle) -> Self {
        Self {
            under: b.under_table(),
            over: b.over_table(),
        }
    }
}

/// Checks 1-based tables against every axiom, collecting the first
/// lexicographic witness for each axiom that fails.
pub fn check_biquandle(
    under: &[Vec<usize>],
    over: &[Vec<usize>],
) -> Result<BiquandleReport, BiquandleError> {
    let n = under.len();
    if n == 0 {
        return Err(BiquandleError::Format("tables are empty".into()));
    }
    for (name, t) in [("under", under), ("over", over)] {
        if t.len() != n {
            return Err(BiquandleError::Format(format!(
                "{name} table has {} rows, expected {n}",
                t.len()
            )));
        }
        for (i, row) in t.iter().enumerate() {
            if row.len() != n {
                return Err(BiquandleError::Format(format!(
                    "{name} row {} has {} entries, expected {n}",
                    i + 1,
                    row.len()
                )));
            }
            if let Some(v) = row.iter().find(|&&v| v < 1 || v > n) {
                return Err(BiquandleError::Format(format!(
                    "{name} row {} contains {v}, outside 1..={n}",
                    i + 1
                )));
            }
        }
    }
    let flat = |t: &[Vec<usize>]| t.iter().flatten().map(|v| v - 1).collect::<Vec<_>>();
    let raw = Biquandle {
        n,
        under: flat(under),
        over: flat(over),
    };
    Ok(raw.report())
}

impl Biquandle {
    /// Validates 1-based tables.
    pub fn from_tables(under: &[Vec<usize>], over: &[Vec<usize>]) -> Result<Self, BiquandleError> {
        let report = check_biquandle(under, over)?;
        if !report.passed() {
            return Err(BiquandleError::Axioms(report));
        }
        let flat = |t: &[Vec<usize>]| t.iter().flatten().map(|v| v - 1).collect::<Vec<_>>();
        Ok(Self {
            n: under.len(),
            under: flat(under),
            over: flat(over),
        })
    }

    fn from_fns(
        n: usize,
        under: impl Fn(usize, usize) -> usize,
        over: impl Fn(usize, usize) -> usize,
    ) -> Result<Self, BiquandleError> {
        let mut b = Self {
            n,
            under: Vec::with_capacity(n * n),
            over: Vec::with_capacity(n * n),
        };
        for x in 0..n {
            for y in 0..n {
                b.under.push(under(x, y));
                b.over.push(over(x, y));
            }
        }
        let report = b.report();
        if report.passed() {
            Ok(b)
        } else {
            Err(BiquandleError::Axioms(report))
        }
    }

    pub fn make(kind: BiquandleKind) -> Result<Self, BiquandleError> {
        match kind {
            BiquandleKind::Trivial(n) => Self::trivial(n),
            BiquandleKind::Flip2 => Ok(Self::flip2()),
            BiquandleKind::Dihedral(n) => Self::dihedral(n),
        }
    }

    /// `x ⊳̲ y = x ⊳̄ y = x`.
    pub fn trivial(n: usize) -> Result<Self, BiquandleError> {
        if n == 0 {
            return Err(BiquandleError::InvalidParameter("size must be at least 1".into()));
        }
        Self::from_fns(n, |x, _| x, |x, _| x)
    }

    /// Two elements; both operations swap the left operand.
    pub fn flip2() -> Self {
        Self::from_fns(2, |x, _| 1 - x, |x, _| 1 - x).expect("flip biquandle is valid")
    }

    /// Dihedral quandle: `x ⊳̲ y = 2y - x (mod n)`, `x ⊳̄ y = x`.
    ///
    /// Label `k` stands for the residue `k mod n`, so label `n` is residue 0.
    pub fn dihedral(n: usize) -> Result<Self, BiquandleError> {
        if n < 2 {
            return Err(BiquandleError::InvalidParameter(
                "dihedral quandles need n >= 2".into(),
            ));
        }
        // index i <-> label i+1 <-> residue (i+1) mod n
        let to_res = |i: usize| (i + 1) % n;
        let to_idx = |r: usize| (r + n - 1) % n;
        Self::from_fns(
            n,
            |x, y| to_idx((2 * to_res(y) + n - to_res(x)) % n),
            |x, _| x,
        )
    }

    pub fn size(&self) -> usize {
        self.n
    }

    /// `x ⊳̲ y` on 0-based indices.
    #[inline]
    pub fn under(&self, x: usize, y: usize) -> usize {
        self.under[x * self.n + y]
    }

    /// `x ⊳̄ y` on 0-based indices.
    #[inline]
    pub fn over(&self, x: usize, y: usize) -> usize {
        self.over[x * self.n + y]
    }

    /// `S(x, y) = (y ⊳̄ x, x ⊳̲ y)`.
    pub fn s_map(&self, x: usize, y: usize) -> (usize, usize) {
        (self.over(y, x), self.under(x, y))
    }

    /// Table lookup on 1-based labels.
    pub fn apply(&self, op: Operation, x: usize, y: usize) -> Result<usize, BiquandleError> {
        for v in [x, y] {
            if v < 1 || v > self.n {
                return Err(BiquandleError::OutOfRange(v, self.n));
            }
        }
        Ok(match op {
            Operation::Under => self.under(x - 1, y - 1),
            Operation::Over => self.over(x - 1, y - 1),
        } + 1)
    }

    /// `x ⊳̄ y = x` everywhere.
    pub fn is_quandle(&self) -> bool {
        (0..self.n).all(|x| (0..self.n).all(|y| self.over(x, y) == x))
    }

    /// Smallest `x` (0-based) whose two operation rows jointly cover the set.
    pub fn semi_transitive_witness(&self) -> Option<usize> {
        (0..self.n).find(|&x| {
            let mut seen = vec![false; self.n];
            for y in 0..self.n {
                seen[self.under(x, y)] = true;
                seen[self.over(x, y)] = true;
            }
            seen.iter().all(|&s| s)
        })
    }

    pub fn is_semi_transitive(&self) -> bool {
        self.semi_transitive_witness().is_some()
    }

    /// 1-based under table.
    pub fn under_table(&self) -> Vec<Vec<usize>> {
        self.under.chunks(self.n).map(|r| r.iter().map(|v| v + 1).collect()).collect()
    }

    /// 1-based over table.
    pub fn over_table(&self) -> Vec<Vec<usize>> {
        self.over.chunks(self.n).map(|r| r.iter().map(|v| v + 1).collect()).collect()
    }

    pub fn report(&self) -> BiquandleReport {
        let n = self.n;
        let mut violations = Vec::new();
        let mut push = |axiom, witness: Vec<usize>| {
            violations.push(AxiomViolation {
                axiom,
                witness: witness.into_iter().map(|v| v + 1).collect(),
            })
        };

        if let Some(x) = (0..n).find(|&x| self.under(x, x) != self.over(x, x)) {
            push(BiquandleAxiom::Diagonal, vec![x]);
        }
        let column_fails = |f: &dyn Fn(usize, usize) -> usize| {
            (0..n).find(|&y| {
                let mut seen = vec![false; n];
                (0..n).any(|x| std::mem::replace(&mut seen[f(x, y)], true))
            })
        };
        if let Some(y) = column_fails(&|x, y| self.over(x, y)) {
            push(BiquandleAxiom::OverColumns, vec![y]);
        }
        if let Some(y) = column_fails(&|x, y| self.under(x, y)) {
            push(BiquandleAxiom::UnderColumns, vec![y]);
        }
        let mut first_at = vec![None; n * n];
        'pairs: for x in 0..n {
            for y in 0..n {
                let (a, b) = self.s_map(x, y);
                match first_at[a * n + b] {
                    Some((x0, y0)) => {
                        push(BiquandleAxiom::SMap, vec![x0, y0, x, y]);
                        break 'pairs;
                    }
                    None => first_at[a * n + b] = Some((x, y)),
                }
            }
        }

        let (u, o) = (|a, b| self.under(a, b), |a, b| self.over(a, b));
        let laws: [(BiquandleAxiom, &dyn Fn(usize, usize, usize) -> bool); 3] = [
            (BiquandleAxiom::Exchange1, &|x, y, z| {
                u(u(x, y), u(z, y)) == u(u(x, z), o(y, z))
            }),
            (BiquandleAxiom::Exchange2, &|x, y, z| {
                o(u(x, y), u(z, y)) == u(o(x, z), o(y, z))
            }),
            (BiquandleAxiom::Exchange3, &|x, y, z| {
                o(o(x, y), o(z, y)) == o(o(x, z), u(y, z))
            }),
        ];
        for (axiom, law) in laws {
            let witness = (0..n * n * n)
                .map(|k| (k / (n * n), (k / n) % n, k % n))
                .find(|&(x, y, z)| !law(x, y, z));
            if let Some((x, y, z)) = witness {
                push(axiom, vec![x, y, z]);
            }
        }
        BiquandleReport { size: n, violations }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(rows: &[&[usize]]) -> Vec<Vec<usize>> {
        rows.iter().map(|r| r.to_vec()).collect()
    }

    #[test]
    fn trivial_and_flip_pass() {
        for n in 1..=4 {
            assert!(Biquandle::trivial(n).unwrap().report().passed());
        }
        let f = Biquandle::flip2();
        assert_eq!(f.under_table(), t(&[&[2, 2], &[1, 1]]));
        assert_eq!(f.over_table(), t(&[&[2, 2], &[1, 1]]));
        assert_eq!(f.apply(Operation::Over, 1, 2).unwrap(), 2);
        assert_eq!(Biquandle::trivial(1).unwrap().under_table(), t(&[&[1]]));
    }

    #[test]
    fn diagonal_failure_witness() {
        let r = check_biquandle(&t(&[&[1, 1], &[2, 2]]), &t(&[&[2, 2], &[1, 1]])).unwrap();
        let v = r.violation(BiquandleAxiom::Diagonal).unwrap();
        assert_eq!(v.witness, vec![1]);
    }

    #[test]
    fn format_errors_are_not_axiom_failures() {
        assert!(matches!(
            check_biquandle(&t(&[&[1, 1]]), &t(&[&[1]])),
            Err(BiquandleError::Format(_))
        ));
        assert!(matches!(
            check_biquandle(&t(&[&[3]]), &t(&[&[1]])),
            Err(BiquandleError::Format(_))
        ));
        assert!(matches!(
            check_biquandle(&[], &[]),
            Err(BiquandleError::Format(_))
        ));
    }

    #[test]
    fn dihedral_tables() {
        let d3 = Biquandle::dihedral(3).unwrap();
        for i in 1..=3usize {
            for j in 1..=3usize {
                let r = ((2 * j + 3 - i) % 3) as usize;
                let expect = if r == 0 { 3 } else { r };
                assert_eq!(d3.apply(Operation::Under, i, j).unwrap(), expect);
                assert_eq!(d3.apply(Operation::Over, i, j).unwrap(), i);
            }
        }
        let d5 = Biquandle::dihedral(5).unwrap();
        assert_eq!(d5.apply(Operation::Under, 1, 3).unwrap(), 5);
        assert!(d5.is_quandle());
        assert!(Biquandle::dihedral(1).is_err());
    }

    #[test]
    fn apply_range() {
        let f = Biquandle::flip2();
        assert!(matches!(f.apply(Operation::Under, 0, 1), Err(BiquandleError::OutOfRange(0, 2))));
        assert!(f.apply(Operation::Under, 1, 3).is_err());
    }

    #[test]
    fn semi_transitivity() {
        assert_eq!(Biquandle::dihedral(3).unwrap().semi_transitive_witness(), Some(0));
        assert_eq!(Biquandle::dihedral(5).unwrap().semi_transitive_witness(), Some(0));
        assert_eq!(Biquandle::trivial(2).unwrap().semi_transitive_witness(), None);
    }

    #[test]
    fn dihedral_parity() {
        for n in 2..=9 {
            let d = Biquandle::dihedral(n).unwrap();
            assert_eq!(d.is_semi_transitive(), n % 2 == 1, "n = {n}");
        }
    }

    #[test]
    fn builtins_pass_for_small_sizes() {
        for n in 1..=9 {
            assert!(Biquandle::trivial(n).unwrap().report().passed());
            if n >= 2 {
                assert!(Biquandle::dihedral(n).unwrap().report().passed());
            }
        }
    }

    #[test]
    fn columns_and_s_map_are_bijective() {
        for b in [Biquandle::flip2(), Biquandle::dihedral(5).unwrap(), Biquandle::trivial(3).unwrap()] {
            let n = b.size();
            for y in 0..n {
                let mut u: Vec<_> = (0..n).map(|x| b.under(x, y)).collect();
                let mut o: Vec<_> = (0..n).map(|x| b.over(x, y)).collect();
                u.sort();
                o.sort();
                assert_eq!(u, (0..n).collect::<Vec<_>>());
                assert_eq!(o, (0..n).collect::<Vec<_>>());
            }
            let mut images: Vec<_> = (0..n * n).map(|k| b.s_map(k / n, k % n)).collect();
            images.sort();
            images.dedup();
            assert_eq!(images.len(), n * n);
        }
    }
}
