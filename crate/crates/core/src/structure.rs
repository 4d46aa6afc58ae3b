//! Structural analyses of brackets: ratio profiles, the `ψ` decomposition,
//! factorization into a constant bracket times a cocycle, and the diagonal
//! rigidity results.

use serde::Serialize;

use crate::algebra::{AbelianGroup, RingElement};
use crate::bracket::{check_bracket, BracketError, BracketReport, BiquandleBracket};
use crate::cocycle::{cocycle_up_to_constant, units_matrix, CocycleError, CocycleViolation, TwoCocycle, UpToConstant};
use crate::matrix::Matrix;

/// Ratios `A_{x,y} B_{x,y}⁻¹` of a bracket.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatioProfile {
    pub ratios: Matrix<RingElement>,
    /// Distinct ratios in row-major order of first appearance.
    pub distinct: Vec<RingElement>,
    /// Their inverses `B A⁻¹`, in the same order.
    pub distinct_inverse: Vec<RingElement>,
    /// Whether every ratio is `u` or `u⁻¹` for a single unit `u`.
    pub dichotomy: bool,
}

impl RatioProfile {
    pub fn count(&self) -> usize {
        self.distinct.len()
    }

    pub fn is_constant(&self) -> bool {
        self.distinct.len() == 1
    }
}

pub fn ratio_profile(bracket: &BiquandleBracket) -> RatioProfile {
    let ratios = bracket
        .a()
        .zip_with(bracket.b(), |a, b| a * &b.inverse().expect("bracket entries are units"))
        .expect("same shape");
    let mut distinct: Vec<RingElement> = Vec::new();
    for (_, r) in ratios.indexed() {
        if !distinct.contains(r) {
            distinct.push(r.clone());
        }
    }
    let distinct_inverse: Vec<RingElement> = distinct.iter().map(|r| r.inverse().unwrap()).collect();
    let dichotomy = match distinct.as_slice() {
        [_] => true,
        [u, v] => u * v == u.ring().one(),
        _ => false,
    };
    RatioProfile {
        ratios,
        distinct,
        distinct_inverse,
        dichotomy,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum PsiCase {
    /// `A_{x,y} a⁻¹ = B_{x,y} b⁻¹`.
    #[serde(rename = "i")]
    Same,
    /// `A_{x,y} b⁻¹ = B_{x,y} a⁻¹`.
    #[serde(rename = "ii")]
    Swapped,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PsiDecomposition {
    /// 0-based base pair.
    pub base: (usize, usize),
    pub a: RingElement,
    pub b: RingElement,
    /// `None` where the pair fits neither case.
    pub psi: Matrix<Option<RingElement>>,
    pub cases: Matrix<Option<PsiCase>>,
    /// 0-based pairs fitting neither case.
    pub residuals: Vec<(usize, usize)>,
}

/// Splits each pair into case (i) or (ii) relative to `(a, b) = (A, B)` at `base`.
/// Case (i) wins ties.
pub fn theorem2_decompose(bracket: &BiquandleBracket, base: (usize, usize)) -> Option<PsiDecomposition> {
    let n = bracket.biquandle().size();
    if base.0 >= n || base.1 >= n {
        return None;
    }
    let a = bracket.a()[base].clone();
    let b = bracket.b()[base].clone();
    let (ai, bi) = (a.inverse().unwrap(), b.inverse().unwrap());
    let mut cases = Matrix::from_fn(n, |_, _| None);
    let mut psi = Matrix::from_fn(n, |_, _| None);
    let mut residuals = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let (axy, bxy) = (&bracket.a()[(x, y)], &bracket.b()[(x, y)]);
            let same = axy * &ai;
            let swapped = axy * &bi;
            if same == bxy * &bi {
                cases[(x, y)] = Some(PsiCase::Same);
                psi[(x, y)] = Some(same);
            } else if swapped == bxy * &ai {
                cases[(x, y)] = Some(PsiCase::Swapped);
                psi[(x, y)] = Some(swapped);
            } else {
                residuals.push((x, y));
            }
        }
    }
    Some(PsiDecomposition {
        base,
        a,
        b,
        psi,
        cases,
        residuals,
    })
}

/// A bracket written as a constant bracket times a 2-cocycle.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConstantFactorization {
    pub a: RingElement,
    pub b: RingElement,
    pub phi: TwoCocycle,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorRejection {
    /// Two 0-based pairs with different ratios.
    RatioNotConstant {
        first: (usize, usize),
        second: (usize, usize),
    },
    /// The quotient failed to be a cocycle; contradicts the theory.
    TheoremViolation(CocycleViolation),
}

/// Factors a bracket with constant ratio as `(a, b) ⊙ φ`, `a = A_{1,1}`, `b = B_{1,1}`.
pub fn factor_constant(bracket: &BiquandleBracket) -> Result<ConstantFactorization, FactorRejection> {
    let profile = ratio_profile(bracket);
    if let Some((p, _)) = profile.ratios.indexed().find(|(_, r)| **r != profile.distinct[0]) {
        return Err(FactorRejection::RatioNotConstant {
            first: (0, 0),
            second: p,
        });
    }
    let a = bracket.a()[(0, 0)].clone();
    let b = bracket.b()[(0, 0)].clone();
    let ai = a.inverse().unwrap();
    let phi = bracket.a().map(|x| x * &ai);
    let group = AbelianGroup::ring_units(bracket.ring().clone());
    let phi_g = units_matrix(&group, &phi).expect("unit entries");
    match cocycle_up_to_constant(bracket.biquandle(), &group, &phi_g).expect("validated shape") {
        UpToConstant::Cocycle { cocycle, .. } => Ok(ConstantFactorization { a, b, phi: cocycle }),
        UpToConstant::Rejected(v) => Err(FactorRejection::TheoremViolation(v)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem1Report {
    /// Verification of `(A/φ, B/φ)`.
    pub quotient: BracketReport,
    pub cocycle: UpToConstant,
    /// Both sides agree.
    pub holds: bool,
}

impl Theorem1Report {
    pub fn quotient_is_bracket(&self) -> bool {
        self.quotient.passed()
    }
}

/// Checks that `(A/φ, B/φ)` is a bracket exactly when `φ` is a cocycle up to a constant.
pub fn theorem1_verify(bracket: &BiquandleBracket, phi: &Matrix<RingElement>) -> Result<Theorem1Report, CocycleError> {
    let group = AbelianGroup::ring_units(bracket.ring().clone());
    let phi_g = units_matrix(&group, phi)?;
    let cocycle = cocycle_up_to_constant(bracket.biquandle(), &group, &phi_g)?;
    let inv = phi.map(|x| x.inverse().expect("units checked"));
    let a = bracket.a().zip_with(&inv, |x, y| x * y)?;
    let b = bracket.b().zip_with(&inv, |x, y| x * y)?;
    let quotient = match check_bracket(bracket.biquandle(), bracket.ring(), &a, &b) {
        Ok(r) => r,
        Err(BracketError::Shape(s)) => return Err(s.into()),
        Err(e) => unreachable!("quotient entries live in the bracket ring: {e}"),
    };
    let holds = quotient.passed() == cocycle.is_cocycle();
    Ok(Theorem1Report {
        quotient,
        cocycle,
        holds,
    })
}

/// Whether a conditional result applied, and if so whether its conclusion held.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", content = "detail", rename_all = "kebab-case")]
pub enum Conclusion {
    NotApplicable(String),
    Holds,
    Violated(String),
}

impl Conclusion {
    pub fn is_violated(&self) -> bool {
        matches!(self, Conclusion::Violated(_))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorollaryReport {
    /// 0-based pairs `(x, y)` where a diagonal-orbit equality fails.
    pub diagonal_orbit_failures: Vec<(usize, usize)>,
    pub corollary1: Conclusion,
    pub corollary2: Conclusion,
}

impl CorollaryReport {
    pub fn passed(&self) -> bool {
        self.diagonal_orbit_failures.is_empty() && !self.corollary1.is_violated() && !self.corollary2.is_violated()
    }
}

fn a_is_cocycle_up_to_constant(bracket: &BiquandleBracket) -> Result<(), String> {
    let group = AbelianGroup::ring_units(bracket.ring().clone());
    let phi = units_matrix(&group, bracket.a()).expect("unit entries");
    match cocycle_up_to_constant(bracket.biquandle(), &group, &phi).expect("validated shape") {
        UpToConstant::Cocycle { .. } => Ok(()),
        UpToConstant::Rejected(v) => Err(format!("A is not a cocycle up to a constant: {:?} at {:?}", v.condition, v.witness)),
    }
}

pub fn corollary_checks(bracket: &BiquandleBracket) -> CorollaryReport {
    let bq = bracket.biquandle();
    let n = bq.size();
    let (a, b) = (bracket.a(), bracket.b());
    let mut diagonal_orbit_failures = Vec::new();
    for x in 0..n {
        for y in 0..n {
            let (u, o) = (bq.under(x, y), bq.over(x, y));
            let ok = |m: &Matrix<RingElement>| m[(x, x)] == m[(u, u)] && m[(x, x)] == m[(o, o)];
            if !ok(a) || !ok(b) {
                diagonal_orbit_failures.push((x, y));
            }
        }
    }

    let equal_pair = a.indexed().find(|(p, v)| *v == &b[*p]).map(|(p, _)| p);
    let corollary1 = if !bracket.ring().is_integral_domain() {
        Conclusion::NotApplicable(format!("{} is not an integral domain", bracket.ring()))
    } else if let Some(p0) = equal_pair {
        match a.indexed().find(|(p, v)| *v != &b[*p]) {
            Some((p, _)) => Conclusion::Violated(format!(
                "A = B at ({},{}) but not at ({},{})",
                p0.0 + 1,
                p0.1 + 1,
                p.0 + 1,
                p.1 + 1
            )),
            None => match a_is_cocycle_up_to_constant(bracket) {
                Ok(()) => Conclusion::Holds,
                Err(e) => Conclusion::Violated(e),
            },
        }
    } else {
        Conclusion::NotApplicable("no pair with A = B".into())
    };

    let corollary2 = match bq.semi_transitive_witness() {
        None => Conclusion::NotApplicable("biquandle is not semi-transitive".into()),
        Some(_) => match (1..n).find(|&x| a[(x, x)] != a[(0, 0)]) {
            Some(x) => Conclusion::Violated(format!("A_(1,1) != A_({0},{0})", x + 1)),
            None => match a_is_cocycle_up_to_constant(bracket) {
                Ok(()) => Conclusion::Holds,
                Err(e) => Conclusion::Violated(e),
            },
        },
    };

    CorollaryReport {
        diagonal_orbit_failures,
        corollary1,
        corollary2,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::Ring;
    use crate::biquandle::Biquandle;

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

    fn remark4() -> BiquandleBracket {
        let r = z(4);
        BiquandleBracket::new(
            Biquandle::trivial(2).unwrap(),
            r.clone(),
            mat(&r, &[&[1, 1], &[1, 1]]),
            mat(&r, &[&[1, 3], &[3, 1]]),
        )
        .unwrap()
    }

    #[test]
    fn constant_bracket_profile() {
        let r = z(5);
        let br = BiquandleBracket::constant(Biquandle::flip2(), r.int(1), r.int(2)).unwrap();
        let p = ratio_profile(&br);
        assert!(p.is_constant() && p.dichotomy);
        let d = theorem2_decompose(&br, (0, 0)).unwrap();
        assert!(d.residuals.is_empty());
        assert!(d.psi.indexed().all(|(_, v)| v.as_ref() == Some(&r.one())));
        let f = factor_constant(&br).unwrap();
        assert_eq!((f.a, f.b), (r.int(1), r.int(2)));
        assert!(corollary_checks(&br).passed());
    }

    #[test]
    fn remark4_corollary1_not_applicable() {
        let c = corollary_checks(&remark4());
        assert!(matches!(c.corollary1, Conclusion::NotApplicable(_)));
        assert!(c.passed());
    }

    #[test]
    fn theorem1_identity_phi() {
        let br = remark4();
        let r = br.ring().clone();
        let t = theorem1_verify(&br, &mat(&r, &[&[1, 1], &[1, 1]])).unwrap();
        assert!(t.holds && t.quotient_is_bracket());
        assert!(theorem1_verify(&br, &mat(&r, &[&[1, 2], &[1, 1]])).is_err());
    }

    #[test]
    fn non_constant_ratio_rejected() {
        assert!(matches!(
            factor_constant(&remark4()),
            Err(FactorRejection::RatioNotConstant { .. })
        ));
    }
}
