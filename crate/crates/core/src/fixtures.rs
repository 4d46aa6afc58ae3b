//! Built-in corpus of biquandles, brackets, cocycles and diagrams.
//!
//! Everything here is constructed in code and rendered through [`crate::json`],
//! so emitted files are canonical and identical from run to run.

use std::fmt;

use crate::algebra::{AbelianGroup, GroupElement, Ring, RingElement};
use crate::biquandle::{Biquandle, BiquandleTables};
use crate::bracket::BracketData;
use crate::cocycle::CocycleData;
use crate::diagram::LinkDiagram;
use crate::invariant::jones_ring;
use crate::json;
use crate::matrix::Matrix;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FixtureKind {
    Biquandle,
    Bracket,
    Cocycle,
    Diagram,
}

impl fmt::Display for FixtureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Biquandle => "biquandle",
            Self::Bracket => "bracket",
            Self::Cocycle => "cocycle",
            Self::Diagram => "diagram",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Fixture {
    pub name: &'static str,
    pub kind: FixtureKind,
    pub summary: &'static str,
}

impl Fixture {
    /// `name.kind.json`, or `name.pd` for diagrams.
    pub fn file_name(&self) -> String {
        match self.kind {
            FixtureKind::Diagram => format!("{}.pd", self.name),
            k => format!("{}.{k}.json", self.name),
        }
    }

    pub fn contents(&self) -> String {
        match self.kind {
            FixtureKind::Biquandle => json::to_canonical_string(&json::tables_to_json(
                &biquandle_tables(self.name).expect("listed"),
            )),
            FixtureKind::Bracket => json::to_canonical_string(&json::bracket_data_to_json(
                &bracket(self.name).expect("listed"),
            )),
            FixtureKind::Cocycle => json::to_canonical_string(&json::cocycle_data_to_json(
                &cocycle(self.name).expect("listed"),
            )),
            FixtureKind::Diagram => format!("{}\n", diagram_pd(self.name).expect("listed")),
        }
    }
}

const fn fx(name: &'static str, kind: FixtureKind, summary: &'static str) -> Fixture {
    Fixture { name, kind, summary }
}

use FixtureKind::{Biquandle as Bq, Bracket as Br, Cocycle as Co, Diagram as Di};

const CATALOG: &[Fixture] = &[
    fx("candidate3", Bq, "three-element tables that fail the diagonal axiom"),
    fx("flip2", Bq, "two elements, x op y = y + 1"),
    fx("reflect3", Bq, "three elements with a reflection over-operation"),
    fx("trivial1", Bq, "trivial biquandle on one element"),
    fx("trivial2", Bq, "trivial biquandle on two elements"),
    fx("trivial3", Bq, "trivial biquandle on three elements"),
    fx("dihedral3", Bq, "dihedral quandle of order 3"),
    fx("dihedral5", Bq, "dihedral quandle of order 5"),
    fx("flip2-gf8", Br, "flip2 over Z_2[t]/(1+t+t^3)"),
    fx("reflect3-z5", Br, "reflect3 over Z_5"),
    fx("trivial2-z4", Br, "trivial(2) over Z_4"),
    fx("trivial3-z9", Br, "trivial(3) over Z_9 with three distinct ratios"),
    fx("trivial2-laurent", Br, "trivial(2) over Z[t, t^-1]"),
    fx("flip2-z7", Br, "flip2 over Z_7, a constant bracket times a cocycle"),
    fx("flip2-z7-constant", Br, "the constant factor of flip2-z7"),
    fx("jones", Br, "constant bracket (q, q^-1) on trivial(1)"),
    fx("flip2-free2", Co, "flip2 cocycle in the free abelian group on a, b"),
    fx("flip2-free3", Co, "flip2 cocycle in the free abelian group on n, e, w"),
    fx("flip2-z7-units", Co, "the cocycle factor of flip2-z7 in Z_7 units"),
    fx("unknot-0", Di, "crossingless unknot"),
    fx("unknot-kink-positive", Di, "one positive kink"),
    fx("unknot-kink-negative", Di, "one negative kink"),
    fx("hopf-positive", Di, "Hopf link, linking number +1"),
    fx("hopf-negative", Di, "Hopf link, linking number -1"),
    fx("trefoil", Di, "trefoil, writhe +3"),
    fx("trefoil-RII-variant", Di, "the trefoil with an extra Reidemeister II pair"),
    fx("figure-eight", Di, "figure-eight knot"),
    fx("figure-eight-braid", Di, "figure-eight as the closure of s1 s2^-1 s1 s2^-1"),
];

pub fn catalog() -> &'static [Fixture] {
    CATALOG
}

pub fn find(name: &str) -> Option<Fixture> {
    CATALOG.iter().copied().find(|f| f.name == name)
}

pub fn names(kind: FixtureKind) -> impl Iterator<Item = &'static str> {
    CATALOG.iter().filter(move |f| f.kind == kind).map(|f| f.name)
}

pub fn biquandle_tables(name: &str) -> Option<BiquandleTables> {
    let built = |b: Biquandle| Some(BiquandleTables::from(&b));
    match name {
        "candidate3" => Some(BiquandleTables {
            under: vec![vec![2, 1, 2], vec![1, 3, 3], vec![3, 2, 1]],
            over: vec![vec![3, 3, 3], vec![2, 2, 2], vec![1, 1, 1]],
        }),
        "flip2" => built(Biquandle::flip2()),
        "reflect3" => built(reflect3()),
        "trivial1" => built(Biquandle::trivial(1).ok()?),
        "trivial2" => built(Biquandle::trivial(2).ok()?),
        "trivial3" => built(Biquandle::trivial(3).ok()?),
        "dihedral3" => built(Biquandle::dihedral(3).ok()?),
        "dihedral5" => built(Biquandle::dihedral(5).ok()?),
        _ => None,
    }
}

/// Valid biquandle fixtures; `None` for unknown names and for `candidate3`.
pub fn biquandle(name: &str) -> Option<Biquandle> {
    biquandle_tables(name)?.build().ok()
}

fn reflect3() -> Biquandle {
    Biquandle::from_tables(
        &[vec![3, 1, 3], vec![2, 2, 2], vec![1, 3, 1]],
        &[vec![3, 3, 3], vec![2, 2, 2], vec![1, 1, 1]],
    )
    .expect("valid tables")
}

pub fn gf8() -> Ring {
    Ring::quotient(2, &[1, 1, 0, 1]).expect("valid ring")
}

fn ints(ring: &Ring, rows: &[&[i64]]) -> Matrix<RingElement> {
    Matrix::from_fn(rows.len(), |i, j| ring.int(rows[i][j]))
}

fn polys(ring: &Ring, rows: &[&[&[i64]]]) -> Matrix<RingElement> {
    Matrix::from_fn(rows.len(), |i, j| ring.poly(rows[i][j]).expect("quotient ring"))
}

pub fn bracket(name: &str) -> Option<BracketData> {
    let data = |biquandle, ring: Ring, a, b| Some(BracketData { biquandle, ring, a, b });
    match name {
        "flip2-gf8" => {
            let r = gf8();
            let a = polys(&r, &[&[&[1], &[1, 1]], &[&[1, 0, 1], &[1]]]);
            let b = polys(&r, &[&[&[0, 1], &[0, 1, 1]], &[&[1], &[0, 1]]]);
            data(Biquandle::flip2(), r, a, b)
        }
        "reflect3-z5" => {
            let r = Ring::modular(5).ok()?;
            let a = ints(&r, &[&[1, 3, 1], &[1, 4, 1], &[1, 3, 1]]);
            let b = ints(&r, &[&[2, 4, 2], &[2, 2, 2], &[2, 4, 2]]);
            data(reflect3(), r, a, b)
        }
        "trivial2-z4" => {
            let r = Ring::modular(4).ok()?;
            let a = ints(&r, &[&[1, 1], &[1, 1]]);
            let b = ints(&r, &[&[1, 3], &[3, 1]]);
            data(Biquandle::trivial(2).ok()?, r, a, b)
        }
        "trivial3-z9" => {
            let r = Ring::modular(9).ok()?;
            let a = ints(&r, &[&[1, 1, 1], &[1, 1, 1], &[1, 1, 1]]);
            let b = ints(&r, &[&[1, 1, 1], &[4, 1, 4], &[4, 7, 1]]);
            data(Biquandle::trivial(3).ok()?, r, a, b)
        }
        "trivial2-laurent" => {
            let r = Ring::laurent(&["t"]).ok()?;
            let t = r.var("t").ok()?;
            let ti = t.inverse()?;
            let a = Matrix::from_fn(2, |_, _| r.one());
            let b = Matrix::from_rows(vec![vec![t.clone(), t.clone()], vec![ti, t]], Some(2)).ok()?;
            data(Biquandle::trivial(2).ok()?, r, a, b)
        }
        "flip2-z7" => {
            let r = Ring::modular(7).ok()?;
            let a = ints(&r, &[&[1, 3], &[5, 1]]);
            let b = ints(&r, &[&[2, 6], &[3, 2]]);
            data(Biquandle::flip2(), r, a, b)
        }
        "flip2-z7-constant" => {
            let r = Ring::modular(7).ok()?;
            let a = ints(&r, &[&[1, 1], &[1, 1]]);
            let b = ints(&r, &[&[2, 2], &[2, 2]]);
            data(Biquandle::flip2(), r, a, b)
        }
        "jones" => {
            let r = jones_ring();
            let q = r.var("q").ok()?;
            let a = Matrix::from_fn(1, |_, _| q.clone());
            let b = Matrix::from_fn(1, |_, _| q.inverse().expect("unit"));
            data(Biquandle::trivial(1).ok()?, r, a, b)
        }
        _ => None,
    }
}

pub fn cocycle(name: &str) -> Option<CocycleData> {
    let flip = Biquandle::flip2();
    let free = |symbols: &[&str], rows: [[&[(&str, i64)]; 2]; 2]| {
        let group = AbelianGroup::free_abelian(symbols).expect("valid symbols");
        let phi = Matrix::from_fn(2, |i, j| group.word(rows[i][j]).expect("known symbols"));
        (group, phi)
    };
    let (group, phi) = match name {
        "flip2-free2" => free(&["a", "b"], [[&[], &[("a", 1)]], [&[("b", 1)], &[]]]),
        "flip2-free3" => free(
            &["n", "e", "w"],
            [[&[], &[("n", -1), ("e", 1)]], [&[("n", -1), ("w", 1)], &[]]],
        ),
        "flip2-z7-units" => {
            let r = Ring::modular(7).ok()?;
            let group = AbelianGroup::ring_units(r.clone());
            let phi: Matrix<GroupElement> =
                ints(&r, &[&[1, 3], &[5, 1]]).map(|x| group.unit(x.clone()).expect("unit"));
            (group, phi)
        }
        _ => return None,
    };
    Some(CocycleData {
        biquandle: flip,
        group,
        phi,
    })
}

pub fn diagram_pd(name: &str) -> Option<&'static str> {
    Some(match name {
        "unknot-0" => "O",
        "unknot-kink-positive" => "X[1,1,2,2]",
        "unknot-kink-negative" => "X[1,2,2,1]",
        "hopf-positive" => "X[4,2,3,1] X[2,4,1,3]",
        "hopf-negative" => "X[1,4,2,3] X[3,2,4,1]",
        "trefoil" => "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]",
        "trefoil-RII-variant" => "X[6,2,7,1] X[2,8,3,7] X[3,8,4,9] X[4,10,5,9] X[10,6,1,5]",
        "figure-eight" => "X[4,2,5,1] X[8,6,1,5] X[6,3,7,4] X[2,7,3,8]",
        "figure-eight-braid" => "X[4,2,5,1] X[2,7,3,8] X[8,6,1,5] X[6,3,7,4]",
        _ => return None,
    })
}

pub fn diagram(name: &str) -> Option<LinkDiagram> {
    LinkDiagram::parse_pd(diagram_pd(name)?).ok()
}
