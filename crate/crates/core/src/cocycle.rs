//! Biquandle 2-cocycles with values in an abelian group.

use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AbelianGroup, AlgebraError, GroupElement, RingElement};
use crate::biquandle::Biquandle;
use crate::matrix::{Matrix, ShapeError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CocycleError {
    #[error(transparent)]
    Shape(#[from] ShapeError),
    #[error("phi[{row},{col}]: {source}")]
    Entry {
        row: usize,
        col: usize,
        source: AlgebraError,
    },
    #[error("not a 2-cocycle: {0}")]
    Invalid(CocycleReport),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CocycleCondition {
    /// `φ(x,x) = 1`.
    #[serde(rename = "i")]
    Diagonal,
    /// The six-term product identity.
    #[serde(rename = "ii")]
    Hexagon,
    /// `φ(x,x) = φ(y,y)`, the test for being a cocycle up to a constant.
    #[serde(rename = "constant-diagonal")]
    ConstantDiagonal,
}

/// Witness labels are 1-based: `[x]`, `[x, y, z]`, or the diagonal pair `[x, y]`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CocycleViolation {
    pub condition: CocycleCondition,
    pub witness: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Default)]
pub struct CocycleReport {
    pub violations: Vec<CocycleViolation>,
}

impl CocycleReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn violation(&self, condition: CocycleCondition) -> Option<&CocycleViolation> {
        self.violations.iter().find(|v| v.condition == condition)
    }
}

impl fmt::Display for CocycleReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.passed() {
            return write!(f, "all conditions hold");
        }
        let parts: Vec<String> = self
            .violations
            .iter()
            .map(|v| format!("{:?} at {:?}", v.condition, v.witness))
            .collect();
        write!(f, "{}", parts.join("; "))
    }
}

fn validate(
    biquandle: &Biquandle,
    group: &AbelianGroup,
    phi: &Matrix<GroupElement>,
) -> Result<(), CocycleError> {
    if phi.size() != biquandle.size() {
        return Err(ShapeError {
            expected: biquandle.size(),
            detail: format!("phi is {0}x{0}", phi.size()),
        }
        .into());
    }
    for ((i, j), e) in phi.indexed() {
        if let Err(source) = group.mul(e, &group.identity()) {
            return Err(CocycleError::Entry {
                row: i + 1,
                col: j + 1,
                source,
            });
        }
    }
    Ok(())
}

/// First index triple (0-based) where the six-term identity fails.
fn hexagon_failure(
    biquandle: &Biquandle,
    group: &AbelianGroup,
    phi: &Matrix<GroupElement>,
) -> Option<[usize; 3]> {
    let n = biquandle.size();
    let (u, o) = (|p, q| biquandle.under(p, q), |p, q| biquandle.over(p, q));
    let prod = |ps: [(usize, usize); 3]| group.product(ps.iter().map(|p| &phi[*p])).unwrap();
    (0..n * n * n)
        .map(|k| [k / (n * n), (k / n) % n, k % n])
        .find(|&[x, y, z]| {
            prod([(x, y), (y, z), (u(x, y), o(z, y))])
                != prod([(x, z), (o(y, x), o(z, x)), (u(x, z), u(y, z))])
        })
}

pub fn check_cocycle(
    biquandle: &Biquandle,
    group: &AbelianGroup,
    phi: &Matrix<GroupElement>,
) -> Result<CocycleReport, CocycleError> {
    validate(biquandle, group, phi)?;
    let mut report = CocycleReport::default();
    if let Some(x) = (0..biquandle.size()).find(|&x| !phi[(x, x)].is_identity()) {
        report.violations.push(CocycleViolation {
            condition: CocycleCondition::Diagonal,
            witness: vec![x + 1],
        });
    }
    if let Some(t) = hexagon_failure(biquandle, group, phi) {
        report.violations.push(CocycleViolation {
            condition: CocycleCondition::Hexagon,
            witness: t.iter().map(|v| v + 1).collect(),
        });
    }
    Ok(report)
}

/// Outcome of [`cocycle_up_to_constant`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum UpToConstant {
    /// `φ = c · ψ` with `ψ` a cocycle.
    Cocycle {
        constant: GroupElement,
        cocycle: TwoCocycle,
    },
    Rejected(CocycleViolation),
}

impl UpToConstant {
    pub fn is_cocycle(&self) -> bool {
        matches!(self, UpToConstant::Cocycle { .. })
    }
}

/// Tests whether `φ` is a constant multiple of a 2-cocycle.
pub fn cocycle_up_to_constant(
    biquandle: &Biquandle,
    group: &AbelianGroup,
    phi: &Matrix<GroupElement>,
) -> Result<UpToConstant, CocycleError> {
    validate(biquandle, group, phi)?;
    let c = phi[(0, 0)].clone();
    if let Some(y) = (1..biquandle.size()).find(|&y| phi[(y, y)] != c) {
        return Ok(UpToConstant::Rejected(CocycleViolation {
            condition: CocycleCondition::ConstantDiagonal,
            witness: vec![1, y + 1],
        }));
    }
    let c_inv = group.inverse(&c).expect("validated");
    let reduced = phi.map(|e| group.mul(e, &c_inv).expect("validated"));
    let report = check_cocycle(biquandle, group, &reduced)?;
    match report.violations.into_iter().next() {
        Some(v) => Ok(UpToConstant::Rejected(v)),
        None => Ok(UpToConstant::Cocycle {
            constant: c,
            cocycle: TwoCocycle {
                biquandle: biquandle.clone(),
                group: group.clone(),
                phi: reduced,
            },
        }),
    }
}

/// Wraps a matrix of ring units as elements of the ring's unit group.
pub fn units_matrix(
    group: &AbelianGroup,
    m: &Matrix<RingElement>,
) -> Result<Matrix<GroupElement>, CocycleError> {
    let mut out = Vec::with_capacity(m.size());
    for (i, row) in m.rows().enumerate() {
        let mut r = Vec::with_capacity(row.len());
        for (j, e) in row.iter().enumerate() {
            r.push(group.unit(e.clone()).map_err(|source| CocycleError::Entry {
                row: i + 1,
                col: j + 1,
                source,
            })?);
        }
        out.push(r);
    }
    Ok(Matrix::from_rows(out, None)?)
}

/// Unverified cocycle data, as read from a file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleData {
    pub biquandle: Biquandle,
    pub group: AbelianGroup,
    pub phi: Matrix<GroupElement>,
}

impl CocycleData {
    pub fn check(&self) -> Result<CocycleReport, CocycleError> {
        check_cocycle(&self.biquandle, &self.group, &self.phi)
    }

    pub fn up_to_constant(&self) -> Result<UpToConstant, CocycleError> {
        cocycle_up_to_constant(&self.biquandle, &self.group, &self.phi)
    }

    pub fn build(self) -> Result<TwoCocycle, CocycleError> {
        TwoCocycle::new(self.biquandle, self.group, self.phi)
    }
}

impl From<&TwoCocycle> for CocycleData {
    fn from(c: &TwoCocycle) -> Self {
        Self {
            biquandle: c.biquandle.clone(),
            group: c.group.clone(),
            phi: c.phi.clone(),
        }
    }
}

/// A verified 2-cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoCocycle {
    biquandle: Biquandle,
    group: AbelianGroup,
    phi: Matrix<GroupElement>,
}

impl TwoCocycle {
    pub fn new(
        biquandle: Biquandle,
        group: AbelianGroup,
        phi: Matrix<GroupElement>,
    ) -> Result<Self, CocycleError> {
        let report = check_cocycle(&biquandle, &group, &phi)?;
        if !report.passed() {
            return Err(CocycleError::Invalid(report));
        }
        Ok(Self {
            biquandle,
            group,
            phi,
        })
    }

    /// The cocycle that is identically 1.
    pub fn identity(biquandle: Biquandle, group: AbelianGroup) -> Self {
        let phi = Matrix::from_fn(biquandle.size(), |_, _| group.identity());
        Self {
            biquandle,
            group,
            phi,
        }
    }

    pub fn biquandle(&self) -> &Biquandle {
        &self.biquandle
    }

    pub fn group(&self) -> &AbelianGroup {
        &self.group
    }

    pub fn phi(&self) -> &Matrix<GroupElement> {
        &self.phi
    }

    /// Entrywise product of two cocycles on the same biquandle and group.
    pub fn pointwise(&self, other: &TwoCocycle) -> Result<Self, CocycleError> {
        let mut phi = self.phi.clone();
        for ((i, j), y) in other.phi.indexed() {
            phi[(i, j)] = self.group.mul(&self.phi[(i, j)], y).map_err(|source| CocycleError::Entry {
                row: i + 1,
                col: j + 1,
                source,
            })?;
        }
        Self::new(self.biquandle.clone(), self.group.clone(), phi)
    }

    /// Unit-valued entries as ring elements, for ring-unit groups.
    pub fn as_ring_matrix(&self) -> Option<Matrix<RingElement>> {
        self.phi.try_map(|e| e.as_unit().cloned().ok_or(())).ok()
    }
}
