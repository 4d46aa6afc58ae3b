//! Acceptance suite: one PASS/FAIL line per criterion.
//!
//! A criterion listed in `KNOWN` may fail for the stated reason without failing
//! the run; any other failure, or a known one failing for a different reason,
//! exits non-zero.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bqlab_core::algebra::AbelianGroup;
use bqlab_core::bracket::hadamard;
use bqlab_core::cocycle::{cocycle_up_to_constant, units_matrix, UpToConstant};
use bqlab_core::fixtures::{self, FixtureKind};
use bqlab_core::invariant::{
    bracket_invariant, bracket_value, cocycle_invariant, counting_invariant, kauffman_jones,
    product_decomposition_check,
};
use bqlab_core::search::{catalog_compare, search_brackets, CatalogEntry};
use bqlab_core::structure::{corollary_checks, ratio_profile, theorem1_verify, theorem2_decompose};
use bqlab_core::{
    BiquandleBracket, Biquandle, LinkDiagram, Matrix, Ring, RingElement, SearchSpec, TwoCocycle,
};

type Outcome = Result<String, String>;

/// Criteria expected to fail, with the exact failure detail.
const KNOWN: &[(u8, &str)] = &[(1, "candidate3: axiom i fails at [1]")];

fn diagrams() -> Vec<(&'static str, LinkDiagram)> {
    fixtures::names(FixtureKind::Diagram)
        .map(|n| (n, fixtures::diagram(n).expect("fixture parses")))
        .collect()
}

fn fixture_brackets() -> Vec<(&'static str, BiquandleBracket)> {
    fixtures::names(FixtureKind::Bracket)
        .map(|n| (n, fixtures::bracket(n).unwrap().build().expect("fixture bracket")))
        .collect()
}

fn fixture_cocycles() -> Vec<(&'static str, TwoCocycle)> {
    fixtures::names(FixtureKind::Cocycle)
        .map(|n| (n, fixtures::cocycle(n).unwrap().build().expect("fixture cocycle")))
        .collect()
}

fn search_all(b: Biquandle, r: Ring) -> Vec<BiquandleBracket> {
    let out = search_brackets(&SearchSpec::new(b, r)).expect("finite ring");
    assert!(out.complete);
    out.results
}

/// All `n x n` matrices over `units`, in lexicographic order.
fn unit_matrices(units: &[RingElement], n: usize) -> Vec<Matrix<RingElement>> {
    let k = units.len();
    let total = k.pow((n * n) as u32);
    (0..total)
        .map(|mut idx| {
            let mut digits = vec![0; n * n];
            for d in digits.iter_mut().rev() {
                *d = idx % k;
                idx /= k;
            }
            Matrix::from_fn(n, |i, j| units[digits[i * n + j]].clone())
        })
        .collect()
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let t = Instant::now();
    let v = f();
    (v, t.elapsed())
}

fn criterion1() -> Outcome {
    let mut failures = Vec::new();
    let mut checked = 0;
    for name in fixtures::names(FixtureKind::Biquandle) {
        let (report, dt) = timed(|| fixtures::biquandle_tables(name).unwrap().check().unwrap());
        checked += 1;
        if let Some(v) = report.violations.first() {
            failures.push(format!("{name}: axiom {} fails at {:?}", axiom_label(v), v.witness));
        }
        if dt > Duration::from_secs(1) {
            failures.push(format!("{name}: took {dt:?}"));
        }
    }
    for name in fixtures::names(FixtureKind::Bracket) {
        let (report, dt) = timed(|| fixtures::bracket(name).unwrap().check().unwrap());
        checked += 1;
        if !report.passed() {
            failures.push(format!("{name}: {report}"));
        }
        if dt > Duration::from_secs(1) {
            failures.push(format!("{name}: took {dt:?}"));
        }
    }
    for name in fixtures::names(FixtureKind::Cocycle) {
        let (report, dt) = timed(|| fixtures::cocycle(name).unwrap().check().unwrap());
        checked += 1;
        if !report.passed() {
            failures.push(format!("{name}: {report}"));
        }
        if dt > Duration::from_secs(1) {
            failures.push(format!("{name}: took {dt:?}"));
        }
    }
    if failures.is_empty() {
        Ok(format!("{checked} objects verified"))
    } else {
        Err(failures.join("; "))
    }
}

fn axiom_label(v: &bqlab_core::biquandle::AxiomViolation) -> String {
    serde_json::to_value(v.axiom).unwrap().as_str().unwrap().to_string()
}

fn criterion2() -> Outcome {
    let mut pairs = 0usize;
    let mut quotients = 0usize;
    let mut sizes = Vec::new();
    for (b, r) in [
        (Biquandle::trivial(2).unwrap(), Ring::modular(4).unwrap()),
        (Biquandle::flip2(), Ring::modular(5).unwrap()),
    ] {
        let brackets = search_all(b.clone(), r.clone());
        let candidates = unit_matrices(&r.units().unwrap(), b.size());
        sizes.push(format!("{} over {r} x {} phi{}", brackets.len(), candidates.len(), if candidates.len() < 100 { " (every unit matrix)" } else { "" }));
        for br in &brackets {
            for phi in &candidates {
                let rep = theorem1_verify(br, phi).map_err(|e| e.to_string())?;
                pairs += 1;
                quotients += rep.quotient_is_bracket() as usize;
                if !rep.holds {
                    return Err(format!("{} / {:?} breaks the biconditional", br.presentation(), phi));
                }
            }
        }
    }
    Ok(format!("{pairs} pairs [{}], {quotients} quotients are brackets", sizes.join("; ")))
}

fn criterion3() -> Outcome {
    let mut count = 0;
    let biquandles = [
        Biquandle::trivial(2).unwrap(),
        Biquandle::flip2(),
        Biquandle::dihedral(3).unwrap(),
        fixtures::biquandle("reflect3").unwrap(),
    ];
    for b in &biquandles {
        for n in [3, 5, 7] {
            for br in search_all(b.clone(), Ring::modular(n).unwrap()) {
                count += 1;
                let p = ratio_profile(&br);
                if p.count() > 2 {
                    return Err(format!("{} over Z_{n}: {} ratios", br.presentation(), p.count()));
                }
                let d = theorem2_decompose(&br, (0, 0)).unwrap();
                if !d.residuals.is_empty() {
                    return Err(format!("{}: psi undefined at {:?}", br.presentation(), d.residuals));
                }
            }
        }
    }

    let z9 = fixtures::bracket("trivial3-z9").unwrap().build().unwrap();
    let p = ratio_profile(&z9);
    let got: BTreeSet<String> = p.distinct.iter().map(|x| x.to_string()).collect();
    let want: BTreeSet<String> = ["7", "4", "1"].iter().map(|s| s.to_string()).collect();
    if got != want {
        return Err(format!("Z_9 ratios {got:?}"));
    }
    let residuals = theorem2_decompose(&z9, (0, 0)).unwrap().residuals.len();
    if residuals == 0 {
        return Err("Z_9 bracket has no psi residual".into());
    }

    let r3 = fixtures::bracket("reflect3-z5").unwrap().build().unwrap();
    let d = theorem2_decompose(&r3, (0, 0)).unwrap();
    let z5 = r3.ring();
    if d.psi[(0, 0)].as_ref() != Some(&z5.int(1)) || d.psi[(1, 1)].as_ref() != Some(&z5.int(2)) {
        return Err(format!("psi(1,1) = {:?}, psi(2,2) = {:?}", d.psi[(0, 0)], d.psi[(1, 1)]));
    }
    Ok(format!("{count} searched brackets; Z_9 ratios {{7,4,1}} with {residuals} residuals; psi(2,2) = 2"))
}

fn criterion4() -> Outcome {
    let mut corpus = Vec::new();
    for b in [Biquandle::trivial(2).unwrap(), Biquandle::flip2(), fixtures::biquandle("reflect3").unwrap()] {
        for n in [3, 4, 5, 7] {
            corpus.extend(search_all(b.clone(), Ring::modular(n).unwrap()));
        }
    }
    let mut dihedral = Vec::new();
    for n in [3, 5, 7] {
        dihedral.extend(search_all(Biquandle::dihedral(3).unwrap(), Ring::modular(n).unwrap()));
    }
    let mut spec = SearchSpec::new(Biquandle::dihedral(5).unwrap(), Ring::modular(3).unwrap());
    spec.up_to_scaling = true;
    let d5 = search_brackets(&spec).map_err(|e| e.to_string())?;
    if !d5.complete || d5.results.is_empty() {
        return Err("dihedral(5) search incomplete".into());
    }
    dihedral.extend(d5.results);

    for br in corpus.iter().chain(&dihedral) {
        let rep = corollary_checks(br);
        if !rep.passed() {
            return Err(format!("{}: {:?}", br.presentation(), rep));
        }
    }
    for br in &dihedral {
        let a = br.a();
        if (0..a.size()).any(|x| a[(x, x)] != a[(0, 0)]) {
            return Err(format!("{}: A diagonal not constant", br.presentation()));
        }
        let g = AbelianGroup::ring_units(br.ring().clone());
        let phi = units_matrix(&g, a).unwrap();
        if !cocycle_up_to_constant(br.biquandle(), &g, &phi).unwrap().is_cocycle() {
            return Err(format!("{}: A is not a cocycle up to a constant", br.presentation()));
        }
    }
    for n in 2..=9 {
        if Biquandle::dihedral(n).unwrap().is_semi_transitive() != (n % 2 == 1) {
            return Err(format!("dihedral({n}) semi-transitivity"));
        }
    }
    Ok(format!("{} brackets, {} over dihedral biquandles", corpus.len() + dihedral.len(), dihedral.len()))
}

fn criterion5() -> Outcome {
    let phi = fixtures::cocycle("flip2-free2").unwrap().build().unwrap();
    let g = phi.group().clone();
    for name in ["trefoil", "figure-eight"] {
        let d = fixtures::diagram(name).unwrap();
        let inv = cocycle_invariant(&d, &phi);
        if inv.sorted_values() != vec![g.identity(), g.identity()] {
            return Err(format!("{name}: {:?}", inv.sorted_values()));
        }
    }
    for name in ["hopf-positive", "hopf-negative"] {
        let d = fixtures::diagram(name).unwrap();
        let l = d.linking_number(0, 1).unwrap();
        let ab = g.word(&[("a", l), ("b", l)]).unwrap();
        let mut want = vec![g.identity(), g.identity(), ab.clone(), ab];
        want.sort();
        let got = cocycle_invariant(&d, &phi).sorted_values();
        if got != want {
            return Err(format!("{name}: {got:?}"));
        }
    }
    let flip = Biquandle::flip2();
    for (name, d) in diagrams() {
        let k = d.component_count() as u32;
        if counting_invariant(&d, &flip) != 1 << k {
            return Err(format!("{name}: flip2 count {}", counting_invariant(&d, &flip)));
        }
    }
    let t = counting_invariant(&fixtures::diagram("trefoil").unwrap(), &Biquandle::dihedral(3).unwrap());
    if t != 9 {
        return Err(format!("trefoil/dihedral(3) count {t}"));
    }
    Ok("cocycle multisets, flip2 counts and trefoil count 9 reproduced".into())
}

fn criterion6() -> Outcome {
    let jones = fixtures::bracket("jones").unwrap().build().unwrap();
    let mut small = 0;
    for (name, d) in diagrams() {
        if d.crossing_count() > 4 {
            continue;
        }
        small += 1;
        let inv = bracket_invariant(&d, &jones).sorted_values();
        let oracle = kauffman_jones(&d);
        if inv != vec![oracle.clone()] {
            return Err(format!("{name}: bracket {inv:?} vs oracle {oracle}"));
        }
    }
    let yang = fixtures::bracket("flip2-z7").unwrap().build().unwrap();
    let constant = fixtures::bracket("flip2-z7-constant").unwrap().build().unwrap();
    let mut knots = 0;
    for (name, d) in diagrams() {
        if d.component_count() != 1 {
            continue;
        }
        knots += 1;
        for (value, coloring) in bracket_invariant(&d, &yang).entries() {
            let c = bracket_value(&d, coloring, &constant).unwrap();
            if &c != value {
                return Err(format!("{name}: {value} vs constant part {c}"));
            }
        }
    }
    Ok(format!("Jones agrees on {small} diagrams; Z_7 bracket matches its constant part on {knots} knots"))
}

fn criterion7() -> Outcome {
    let mut brackets = fixture_brackets();
    let searched: Vec<BiquandleBracket> = [
        (Biquandle::trivial(2).unwrap(), 4),
        (Biquandle::flip2(), 5),
        (Biquandle::dihedral(3).unwrap(), 5),
        (fixtures::biquandle("reflect3").unwrap(), 5),
    ]
    .into_iter()
    .flat_map(|(b, n)| search_all(b, Ring::modular(n).unwrap()))
    .collect();
    brackets.extend(searched.iter().map(|b| ("searched", b.clone())));

    let kinks = [
        fixtures::diagram("unknot-kink-positive").unwrap(),
        fixtures::diagram("unknot-kink-negative").unwrap(),
    ];
    for (name, br) in &brackets {
        for d in &kinks {
            for (v, _) in bracket_invariant(d, br).entries() {
                if !v.is_one() {
                    return Err(format!("{name} {}: kink value {v}", br.presentation()));
                }
            }
        }
    }

    let t = fixtures::diagram("trefoil").unwrap();
    let t2 = fixtures::diagram("trefoil-RII-variant").unwrap();
    for (name, br) in fixture_brackets() {
        if !bracket_invariant(&t, &br).same_multiset(&bracket_invariant(&t2, &br)) {
            return Err(format!("{name}: trefoil variants differ"));
        }
    }
    for (name, phi) in fixture_cocycles() {
        if !cocycle_invariant(&t, &phi).same_multiset(&cocycle_invariant(&t2, &phi)) {
            return Err(format!("{name}: trefoil variants differ"));
        }
    }

    let all = diagrams();
    for (name, br) in fixture_brackets() {
        let c = br
            .ring()
            .units()
            .ok()
            .and_then(|u| u.into_iter().find(|x| !x.is_one()))
            .or_else(|| br.ring().variables().first().map(|v| br.ring().var(v).unwrap()))
            .expect("a non-trivial unit");
        let scaled = br.scale(&c).unwrap();
        for (dn, d) in &all {
            if !bracket_invariant(d, &br).same_multiset(&bracket_invariant(d, &scaled)) {
                return Err(format!("{name} scaled by {c} on {dn}"));
            }
        }
    }
    Ok(format!("{} brackets fix both kinks; RII and scaling invariance hold", brackets.len()))
}

fn criterion8() -> Outcome {
    let mut spec = SearchSpec::new(Biquandle::trivial(2).unwrap(), Ring::modular(4).unwrap());
    spec.up_to_scaling = true;
    let z4 = search_brackets(&spec).map_err(|e| e.to_string())?;
    let gf8 = search_brackets(&SearchSpec::new(Biquandle::flip2(), fixtures::gf8())).map_err(|e| e.to_string())?;
    for (out, name) in [(&z4, "trivial2-z4"), (&gf8, "flip2-gf8")] {
        let data = fixtures::bracket(name).unwrap();
        let entry = CatalogEntry { name: name.into(), a: data.a, b: data.b };
        if !out.complete || !catalog_compare(&out.results, &[entry]).passed() {
            return Err(format!("{name} not found"));
        }
        if out.elapsed > Duration::from_secs(600) {
            return Err(format!("{name} search took {:?}", out.elapsed));
        }
    }

    let mut micro = 0;
    for size in [1, 2] {
        for n in [3, 4] {
            let b = Biquandle::trivial(size).unwrap();
            let r = Ring::modular(n).unwrap();
            let units = r.units().unwrap();
            let mats = unit_matrices(&units, size);
            let mut brute = BTreeSet::new();
            for a in &mats {
                for bm in &mats {
                    if bqlab_core::bracket::check_bracket(&b, &r, a, bm).unwrap().passed() {
                        brute.insert(bqlab_core::bracket::presentation(a, bm));
                    }
                }
            }
            for scaled in [false, true] {
                let mut spec = SearchSpec::new(b.clone(), r.clone());
                spec.up_to_scaling = scaled;
                let found: BTreeSet<String> =
                    search_brackets(&spec).unwrap().results.iter().map(|x| x.presentation()).collect();
                let want: BTreeSet<String> = if scaled {
                    let one = bqlab_core::bracket::presentation(&Matrix::from_fn(1, |_, _| r.one()), &Matrix::from_fn(1, |_, _| r.one()));
                    let prefix = &one[..one.find(" |").unwrap()];
                    brute.iter().filter(|p| p.starts_with(prefix)).cloned().collect()
                } else {
                    brute.clone()
                };
                if found != want {
                    return Err(format!("trivial({size})/Z_{n} scaled={scaled}: {} vs brute force {}", found.len(), want.len()));
                }
                micro += 1;
            }
        }
    }
    Ok(format!(
        "catalog hits in {:?} and {:?}; {micro} micro searches match brute force",
        z4.elapsed, gf8.elapsed
    ))
}

fn criterion9() -> Outcome {
    let all = diagrams();
    let check = |product: &BiquandleBracket, factor: &BiquandleBracket, phi: &TwoCocycle| -> Result<(), String> {
        for (dn, d) in &all {
            let rep = product_decomposition_check(d, product, factor, phi).map_err(|e| e.to_string())?;
            if !rep.passed() {
                return Err(format!("{} on {dn}: {} colorings disagree", product.presentation(), rep.violations.len()));
            }
        }
        Ok(())
    };
    check(
        &fixtures::bracket("flip2-z7").unwrap().build().unwrap(),
        &fixtures::bracket("flip2-z7-constant").unwrap().build().unwrap(),
        &fixtures::cocycle("flip2-z7-units").unwrap().build().unwrap(),
    )?;

    let mut products = 1;
    for (b, r) in [
        (Biquandle::trivial(2).unwrap(), Ring::modular(4).unwrap()),
        (Biquandle::flip2(), Ring::modular(5).unwrap()),
    ] {
        let g = AbelianGroup::ring_units(r.clone());
        let constants: Vec<BiquandleBracket> = search_all(b.clone(), r.clone())
            .into_iter()
            .filter(|br| ratio_profile(br).is_constant() && br.a().indexed().all(|(_, x)| x == &br.a()[(0, 0)]))
            .collect();
        let mut cocycles: Vec<TwoCocycle> = Vec::new();
        for c in unit_matrices(&r.units().unwrap(), b.size())
            .iter()
            .filter_map(|m| match cocycle_up_to_constant(&b, &g, &units_matrix(&g, m).unwrap()).unwrap() {
                UpToConstant::Cocycle { cocycle, .. } => Some(cocycle),
                UpToConstant::Rejected(_) => None,
            })
        {
            if !cocycles.contains(&c) {
                cocycles.push(c);
            }
        }
        for factor in &constants {
            for phi in &cocycles {
                let (a, bm) = hadamard(factor.a(), factor.b(), &phi.as_ring_matrix().unwrap()).unwrap();
                let product = BiquandleBracket::new(b.clone(), r.clone(), a, bm).map_err(|e| e.to_string())?;
                check(&product, factor, phi)?;
                products += 1;
            }
        }
    }
    Ok(format!("{products} products decompose on all {} fixtures", all.len()))
}

fn main() -> ExitCode {
    let criteria: [(u8, &str, fn() -> Outcome); 9] = [
        (1, "verification of the published matrices", criterion1),
        (2, "quotient bracket iff cocycle up to a constant", criterion2),
        (3, "ratio dichotomy and psi decomposition", criterion3),
        (4, "diagonal orbits and dihedral rigidity", criterion4),
        (5, "cocycle and counting invariants", criterion5),
        (6, "Jones equivalence", criterion6),
        (7, "kinks, RII and scaling", criterion7),
        (8, "search regression and completeness", criterion8),
        (9, "constant-times-cocycle decomposition", criterion9),
    ];
    let mut unexpected = 0;
    for (id, title, f) in criteria {
        let start = Instant::now();
        let outcome = f();
        let dt = start.elapsed();
        match outcome {
            Ok(detail) => println!("criterion {id} PASS  {title} — {detail} ({dt:.2?})"),
            Err(detail) => {
                let known = KNOWN.iter().any(|(k, d)| *k == id && *d == detail);
                let tag = if known { "FAIL (known)" } else { "FAIL" };
                println!("criterion {id} {tag}  {title} — {detail} ({dt:.2?})");
                if !known {
                    unexpected += 1;
                }
            }
        }
    }
    if unexpected == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
