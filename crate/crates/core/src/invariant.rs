//! Link invariants: counting, biquandle bracket, 2-cocycle, and the Kauffman
//! bracket form of the Jones polynomial.

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::algebra::{GroupElement, Ring, RingElement};
use crate::biquandle::Biquandle;
use crate::bracket::{hadamard, BiquandleBracket};
use crate::cocycle::TwoCocycle;
use crate::diagram::{Coloring, LinkDiagram, Sign, Smoothing};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InvariantError {
    #[error("coloring violates the crossing relation at crossing {0}")]
    InvalidColoring(usize),
    #[error("coloring does not fit the diagram or biquandle")]
    MalformedColoring,
    #[error("{0}")]
    Precondition(String),
}

/// A multiset of invariant values, each tagged with the coloring it came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InvariantValue<T> {
    entries: Vec<(T, Coloring)>,
}

impl<T: Ord + Clone> InvariantValue<T> {
    pub fn new(entries: Vec<(T, Coloring)>) -> Self {
        Self { entries }
    }

    /// Number of colorings, i.e. the counting invariant.
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Values in coloring enumeration order, with their colorings.
    pub fn entries(&self) -> &[(T, Coloring)] {
        &self.entries
    }

    /// Values sorted ascending.
    pub fn sorted_values(&self) -> Vec<T> {
        let mut v: Vec<T> = self.entries.iter().map(|(x, _)| x.clone()).collect();
        v.sort();
        v
    }

    pub fn multiset(&self) -> BTreeMap<T, usize> {
        let mut m = BTreeMap::new();
        for (x, _) in &self.entries {
            *m.entry(x.clone()).or_insert(0) += 1;
        }
        m
    }

    pub fn same_multiset(&self, other: &Self) -> bool {
        self.sorted_values() == other.sorted_values()
    }
}

fn check_coloring(d: &LinkDiagram, b: &Biquandle, c: &Coloring) -> Result<(), InvariantError> {
    match d.coloring_violation(b, c) {
        None => Ok(()),
        Some(usize::MAX) => Err(InvariantError::MalformedColoring),
        Some(ci) => Err(InvariantError::InvalidColoring(ci + 1)),
    }
}

fn state_sum(
    diagram: &LinkDiagram,
    loops: &[usize],
    coloring: &Coloring,
    bracket: &BiquandleBracket,
) -> RingElement {
    let ring = bracket.ring();
    let (a, b) = (bracket.a(), bracket.b());
    // coefficient for the (1-2)(3-4) pairing and the (1-4)(2-3) pairing
    let coef: Vec<[RingElement; 2]> = (0..diagram.crossing_count())
        .map(|ci| {
            let p = diagram.crossing_pair(coloring, ci);
            match diagram.signs()[ci] {
                Sign::Positive => [a[p].clone(), b[p].clone()],
                Sign::Negative => [b[p].inverse().unwrap(), a[p].inverse().unwrap()],
            }
        })
        .collect();
    let max_loops = loops.iter().copied().max().unwrap_or(1);
    let mut delta_pow = vec![ring.one()];
    for k in 1..max_loops {
        let next = &delta_pow[k - 1] * bracket.delta();
        delta_pow.push(next);
    }
    let mut total = ring.zero();
    for (mask, &l) in loops.iter().enumerate() {
        let mut term = delta_pow[l - 1].clone();
        for (ci, c) in coef.iter().enumerate() {
            let k = match Smoothing::from_mask(mask as u64, ci) {
                Smoothing::A => 0,
                Smoothing::B => 1,
            };
            term = term * &c[k];
        }
        total = total + term;
    }
    let p = diagram.positive_count() as i64;
    let n = diagram.crossing_count() as i64 - p;
    total * bracket.w().pow(n - p).expect("w is a unit")
}

/// Bracket value of one coloring.
pub fn bracket_value(
    diagram: &LinkDiagram,
    coloring: &Coloring,
    bracket: &BiquandleBracket,
) -> Result<RingElement, InvariantError> {
    check_coloring(diagram, bracket.biquandle(), coloring)?;
    Ok(state_sum(diagram, &diagram.all_loop_counts(), coloring, bracket))
}

/// Multiset of bracket values over all colorings.
pub fn bracket_invariant(diagram: &LinkDiagram, bracket: &BiquandleBracket) -> InvariantValue<RingElement> {
    let loops = diagram.all_loop_counts();
    let entries = diagram
        .colorings(bracket.biquandle())
        .into_par_iter()
        .map(|c| (state_sum(diagram, &loops, &c, bracket), c))
        .collect();
    InvariantValue::new(entries)
}

/// `∏ φ(x,y)^ε` over crossings.
pub fn cocycle_value(
    diagram: &LinkDiagram,
    coloring: &Coloring,
    cocycle: &TwoCocycle,
) -> Result<GroupElement, InvariantError> {
    check_coloring(diagram, cocycle.biquandle(), coloring)?;
    let g = cocycle.group();
    let mut acc = g.identity();
    for (ci, s) in diagram.signs().iter().enumerate() {
        let p = diagram.crossing_pair(coloring, ci);
        let f = g.pow(&cocycle.phi()[p], s.value()).expect("validated cocycle");
        acc = g.mul(&acc, &f).expect("validated cocycle");
    }
    Ok(acc)
}

pub fn cocycle_invariant(diagram: &LinkDiagram, cocycle: &TwoCocycle) -> InvariantValue<GroupElement> {
    let entries = diagram
        .colorings(cocycle.biquandle())
        .into_iter()
        .map(|c| (cocycle_value(diagram, &c, cocycle).expect("enumerated coloring"), c))
        .collect();
    InvariantValue::new(entries)
}

pub fn counting_invariant(diagram: &LinkDiagram, biquandle: &Biquandle) -> usize {
    diagram.colorings(biquandle).len()
}

/// `Z[q^±1]`, the ring [`kauffman_jones`] takes values in.
pub fn jones_ring() -> Ring {
    Ring::laurent(&["q"]).expect("valid ring")
}

/// Normalized Kauffman bracket `(-q³)^(-writhe) <D>` with `<O> = 1`.
///
/// Loops are traced by walking the smoothed diagram, without any reference to
/// biquandles or brackets.
pub fn kauffman_jones(diagram: &LinkDiagram) -> RingElement {
    let ring = jones_ring();
    let q = |k: i64| ring.monomial(1, &[("q", k)]).unwrap();
    let crossings = diagram.crossings();
    let c = crossings.len();
    let mut other_end = BTreeMap::new();
    for (ci, cr) in crossings.iter().enumerate() {
        for (p, e) in cr.iter().enumerate() {
            other_end.entry(*e).or_insert_with(Vec::new).push((ci, p));
        }
    }
    let across = |ci: usize, p: usize| {
        let ends = &other_end[&crossings[ci][p]];
        if ends[0] == (ci, p) {
            ends[1]
        } else {
            ends[0]
        }
    };
    let loop_delta = -q(2) - q(-2);
    let mut total = ring.zero();
    for mask in 0..1u64 << c {
        let joined = |ci: usize, p: usize| -> usize {
            let a_pairing = mask >> ci & 1 == 0;
            match (a_pairing, p) {
                (true, 0) => 1,
                (true, 1) => 0,
                (true, 2) => 3,
                (true, _) => 2,
                (false, 0) => 3,
                (false, 3) => 0,
                (false, 1) => 2,
                (false, _) => 1,
            }
        };
        let mut seen = vec![[false; 4]; c];
        let mut loops = diagram.free_loops();
        for ci in 0..c {
            for p in 0..4 {
                if seen[ci][p] {
                    continue;
                }
                loops += 1;
                let (mut x, mut y) = (ci, p);
                while !seen[x][y] {
                    seen[x][y] = true;
                    let j = joined(x, y);
                    seen[x][j] = true;
                    (x, y) = across(x, j);
                }
            }
        }
        let a_count = (0..c).filter(|ci| mask >> ci & 1 == 0).count() as i64;
        let mut term = q(a_count - (c as i64 - a_count));
        for _ in 1..loops {
            term = term * &loop_delta;
        }
        total = total + term;
    }
    let w = diagram.writhe();
    let norm = ring.monomial(if w % 2 == 0 { 1 } else { -1 }, &[("q", -3 * w)]).unwrap();
    total * norm
}

/// Per-coloring outcome of [`product_decomposition_check`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionEntry {
    pub coloring: Coloring,
    pub product: RingElement,
    pub factor: RingElement,
    pub cocycle: RingElement,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DecompositionReport {
    pub colorings: usize,
    /// Colorings where `value(A,B) ≠ value(A',B') · φ-value`.
    pub violations: Vec<DecompositionEntry>,
}

impl DecompositionReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `value(A ⊙ φ, B ⊙ φ) = value(A', B') · ∏ φ^ε` on every coloring.
pub fn product_decomposition_check(
    diagram: &LinkDiagram,
    bracket: &BiquandleBracket,
    factor: &BiquandleBracket,
    phi: &TwoCocycle,
) -> Result<DecompositionReport, InvariantError> {
    if bracket.biquandle() != factor.biquandle() || bracket.biquandle() != phi.biquandle() {
        return Err(InvariantError::Precondition("biquandles differ".into()));
    }
    if bracket.ring() != factor.ring() || phi.group().ring() != Some(bracket.ring()) {
        return Err(InvariantError::Precondition(
            "bracket, factor and cocycle must share one ring".into(),
        ));
    }
    let phi_ring = phi
        .as_ring_matrix()
        .ok_or_else(|| InvariantError::Precondition("cocycle is not unit-valued".into()))?;
    let (a, b) = hadamard(factor.a(), factor.b(), &phi_ring)
        .map_err(|e| InvariantError::Precondition(e.to_string()))?;
    if &a != bracket.a() || &b != bracket.b() {
        return Err(InvariantError::Precondition(
            "bracket is not the entrywise product of the factor and the cocycle".into(),
        ));
    }
    let loops = diagram.all_loop_counts();
    let colorings = diagram.colorings(bracket.biquandle());
    let count = colorings.len();
    let violations = colorings
        .into_par_iter()
        .filter_map(|c| {
            let product = state_sum(diagram, &loops, &c, bracket);
            let factor_value = state_sum(diagram, &loops, &c, factor);
            let cocycle = cocycle_value(diagram, &c, phi).ok()?.as_unit()?.clone();
            (product != &factor_value * &cocycle).then_some(DecompositionEntry {
                coloring: c,
                product,
                factor: factor_value,
                cocycle,
            })
        })
        .collect();
    Ok(DecompositionReport {
        colorings: count,
        violations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn jones_bracket() -> BiquandleBracket {
        let r = jones_ring();
        let q = r.var("q").unwrap();
        BiquandleBracket::constant(Biquandle::trivial(1).unwrap(), q.clone(), q.inverse().unwrap()).unwrap()
    }

    #[test]
    fn unknots_are_one() {
        let r = jones_ring();
        for pd in ["O", "X[1,1,2,2]", "X[1,2,2,1]"] {
            let d = LinkDiagram::parse_pd(pd).unwrap();
            assert_eq!(kauffman_jones(&d), r.one(), "{pd}");
            let inv = bracket_invariant(&d, &jones_bracket());
            assert_eq!(inv.sorted_values(), vec![r.one()], "{pd}");
        }
    }

    #[test]
    fn trefoil_jones() {
        let r = jones_ring();
        let d = LinkDiagram::parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]").unwrap();
        let j = kauffman_jones(&d);
        // positive trefoil: -q^-16 + q^-12 + q^-4
        let expect = r.monomial(-1, &[("q", -16)]).unwrap()
            + r.monomial(1, &[("q", -12)]).unwrap()
            + r.monomial(1, &[("q", -4)]).unwrap();
        assert_eq!(j, expect);
        assert_eq!(kauffman_jones(&d.mirror()), j.invert_variables());
        assert_eq!(bracket_invariant(&d, &jones_bracket()).sorted_values(), vec![j]);
    }

    #[test]
    fn invalid_coloring_rejected() {
        let d = LinkDiagram::parse_pd("X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]").unwrap();
        let b = Biquandle::flip2();
        let br = BiquandleBracket::constant(b.clone(), Ring::modular(5).unwrap().int(1), Ring::modular(5).unwrap().int(2))
            .unwrap();
        let bad = Coloring {
            edges: vec![0; 6],
            free: vec![],
        };
        assert!(matches!(bracket_value(&d, &bad, &br), Err(InvariantError::InvalidColoring(_))));
        let short = Coloring {
            edges: vec![0; 2],
            free: vec![],
        };
        assert_eq!(bracket_value(&d, &short, &br), Err(InvariantError::MalformedColoring));
    }
}
