//! Exhaustive search for brackets and 2-cocycles over finite rings.
//!
//! Entries are assigned pair by pair, `(A_{x,y}, B_{x,y})` together: the
//! diagonal first, then off-diagonal pairs in row-major order. A branch is cut
//! as soon as `δ` disagrees with the first pair, a diagonal pair breaks
//! condition (i), or an equation of (iii) has all of its entries assigned and
//! fails. The first level is split across worker threads; results come back in
//! the same order regardless of the thread count.

use std::sync::atomic::{AtomicBool, AtomicU64, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AbelianGroup, Ring, RingElement};
use crate::biquandle::Biquandle;
use crate::bracket::BiquandleBracket;
use crate::cocycle::{units_matrix, TwoCocycle};
use crate::matrix::Matrix;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("search needs a finite ring; {0} is infinite")]
    InfiniteRing(String),
    #[error("ring has {0} elements; at most 256 are supported")]
    RingTooLarge(u64),
    #[error("could not start worker threads: {0}")]
    Threads(String),
    #[error("search produced an object that fails verification: {0}")]
    Unsound(String),
}

#[derive(Clone, Debug)]
pub struct SearchSpec {
    pub biquandle: Biquandle,
    pub ring: Ring,
    /// Only emit brackets with `A_{1,1} = 1`.
    pub up_to_scaling: bool,
    pub limit: Option<usize>,
    pub jobs: Option<usize>,
    /// Bounds the enumeration; everything found is still verified afterwards.
    pub time_budget: Option<Duration>,
}

impl SearchSpec {
    pub fn new(biquandle: Biquandle, ring: Ring) -> Self {
        Self {
            biquandle,
            ring,
            up_to_scaling: false,
            limit: None,
            jobs: None,
            time_budget: None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome<T> {
    pub results: Vec<T>,
    /// False when the limit or the time budget cut the search short.
    pub complete: bool,
    pub nodes: u64,
    pub elapsed: Duration,
}

/// Arithmetic tables of a finite ring, indexed by [`Ring::element_at`] order.
struct Tables {
    size: usize,
    elements: Vec<RingElement>,
    add: Vec<u8>,
    mul: Vec<u8>,
    neg: Vec<u8>,
    /// Inverse index, or `u8::MAX` for non-units.
    inv: Vec<u8>,
    units: Vec<u8>,
    one: u8,
}

impl Tables {
    fn new(ring: &Ring) -> Result<Self, SearchError> {
        let size = ring.size().ok_or_else(|| SearchError::InfiniteRing(ring.to_string()))?;
        if size > 256 {
            return Err(SearchError::RingTooLarge(size));
        }
        let elements = ring.elements().expect("finite");
        let m = elements.len();
        let idx = |e: &RingElement| e.index().unwrap() as u8;
        let mut add = vec![0; m * m];
        let mut mul = vec![0; m * m];
        for i in 0..m {
            for j in 0..m {
                add[i * m + j] = idx(&(&elements[i] + &elements[j]));
                mul[i * m + j] = idx(&(&elements[i] * &elements[j]));
            }
        }
        let neg = elements.iter().map(|e| idx(&-e)).collect();
        let inv: Vec<u8> = elements
            .iter()
            .map(|e| e.inverse().map(|x| idx(&x)).unwrap_or(u8::MAX))
            .collect();
        let units = (0..m as u8).filter(|&i| inv[i as usize] != u8::MAX).collect();
        Ok(Self {
            size: m,
            one: idx(&ring.one()),
            elements,
            add,
            mul,
            neg,
            inv,
            units,
        })
    }

    #[inline]
    fn add(&self, a: u8, b: u8) -> u8 {
        self.add[a as usize * self.size + b as usize]
    }

    #[inline]
    fn mul(&self, a: u8, b: u8) -> u8 {
        self.mul[a as usize * self.size + b as usize]
    }

    #[inline]
    fn mul3(&self, a: u8, b: u8, c: u8) -> u8 {
        self.mul(self.mul(a, b), c)
    }

    fn inv(&self, a: u8) -> u8 {
        self.inv[a as usize]
    }

    fn delta(&self, a: u8, b: u8) -> u8 {
        let s = self.add(self.mul(a, self.inv(b)), self.mul(self.inv(a), b));
        self.neg[s as usize]
    }
}

/// Index pairs of one (iii) instance: `(x,y), (y,z), (x⊳̲y, z⊳̄y), (x,z), (y⊳̄x, z⊳̄x), (x⊳̲z, y⊳̲z)`,
/// as flattened matrix positions.
fn triples(b: &Biquandle) -> Vec<[usize; 6]> {
    let n = b.size();
    let f = |p: usize, q: usize| p * n + q;
    let mut out = Vec::with_capacity(n * n * n);
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                out.push([
                    f(x, y),
                    f(y, z),
                    f(b.under(x, y), b.over(z, y)),
                    f(x, z),
                    f(b.over(y, x), b.over(z, x)),
                    f(b.under(x, z), b.under(y, z)),
                ]);
            }
        }
    }
    out
}

/// Assignment order over flattened positions, plus each triple's completing step.
fn schedule(n: usize, triples: &[[usize; 6]]) -> (Vec<usize>, Vec<Vec<usize>>) {
    let mut order: Vec<usize> = (0..n).map(|x| x * n + x).collect();
    order.extend((0..n * n).filter(|p| p / n != p % n));
    let mut step_of = vec![0; n * n];
    for (s, &p) in order.iter().enumerate() {
        step_of[p] = s;
    }
    let mut at_step = vec![Vec::new(); n * n];
    for (t, pos) in triples.iter().enumerate() {
        let s = pos.iter().map(|&p| step_of[p]).max().unwrap();
        at_step[s].push(t);
    }
    (order, at_step)
}

struct Budget {
    deadline: Option<Instant>,
    expired: AtomicBool,
    nodes: AtomicU64,
}

impl Budget {
    fn tick(&self, local: &mut u64) -> bool {
        *local += 1;
        if *local % 1024 == 0 {
            self.nodes.fetch_add(1024, Ordering::Relaxed);
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.expired.store(true, Ordering::Relaxed);
                }
            }
        }
        !self.expired.load(Ordering::Relaxed)
    }

    fn flush(&self, local: u64) {
        self.nodes.fetch_add(local % 1024, Ordering::Relaxed);
    }
}

struct BracketSearch<'a> {
    t: &'a Tables,
    order: Vec<usize>,
    at_step: Vec<Vec<usize>>,
    triples: Vec<[usize; 6]>,
    n: usize,
    /// Unit pairs `(a, b)` grouped by their `δ`.
    by_delta: Vec<Vec<(u8, u8)>>,
    limit: usize,
}

struct Branch {
    a: Vec<u8>,
    b: Vec<u8>,
    delta: u8,
    w: u8,
    w_inv: u8,
    found: Vec<(Vec<u8>, Vec<u8>)>,
    nodes: u64,
    cut: bool,
}

impl BracketSearch<'_> {
    fn diagonal_ok(&self, br: &Branch, a: u8, b: u8) -> bool {
        let t = self.t;
        t.add(t.mul(br.delta, a), b) == br.w && t.add(t.mul(br.delta, t.inv(a)), t.inv(b)) == br.w_inv
    }

    fn equations_hold(&self, br: &Branch, tri: &[usize; 6]) -> bool {
        let t = self.t;
        let (a, b) = (&br.a, &br.b);
        let [p1, p2, p3, q1, q2, q3] = *tri;
        let (a1, a2, a3, b1, b2, b3) = (a[p1], a[p2], a[p3], b[p1], b[p2], b[p3]);
        let (c1, c2, c3, d1, d2, d3) = (a[q1], a[q2], a[q3], b[q1], b[q2], b[q3]);
        if t.mul3(a1, a2, a3) != t.mul3(c1, c2, c3)
            || t.mul3(a1, b2, b3) != t.mul3(d1, d2, c3)
            || t.mul3(b1, a2, b3) != t.mul3(d1, c2, d3)
        {
            return false;
        }
        let dl = br.delta;
        let sum4 = |w: u8, x: u8, y: u8, z: u8| t.add(t.add(w, x), t.add(y, z));
        let rhs4 = sum4(
            t.mul3(c1, d2, c3),
            t.mul3(c1, c2, d3),
            t.mul(dl, t.mul3(c1, d2, d3)),
            t.mul3(d1, d2, d3),
        );
        if t.mul3(a1, a2, b3) != rhs4 {
            return false;
        }
        let rhs5 = sum4(
            t.mul3(b1, a2, a3),
            t.mul3(a1, b2, a3),
            t.mul(dl, t.mul3(b1, b2, a3)),
            t.mul3(b1, b2, b3),
        );
        t.mul3(d1, c2, c3) == rhs5
    }

    fn step_ok(&self, br: &Branch, step: usize) -> bool {
        self.at_step[step].iter().all(|&k| self.equations_hold(br, &self.triples[k]))
    }

    fn dfs(&self, br: &mut Branch, step: usize, budget: &Budget) {
        if br.found.len() >= self.limit {
            br.cut = true;
            return;
        }
        if !budget.tick(&mut br.nodes) {
            br.cut = true;
            return;
        }
        if step == self.order.len() {
            br.found.push((br.a.clone(), br.b.clone()));
            return;
        }
        let pos = self.order[step];
        let diagonal = step < self.n;
        for &(a, b) in &self.by_delta[br.delta as usize] {
            if diagonal && !self.diagonal_ok(br, a, b) {
                continue;
            }
            br.a[pos] = a;
            br.b[pos] = b;
            if self.step_ok(br, step) {
                self.dfs(br, step + 1, budget);
            }
            if br.cut {
                return;
            }
        }
    }
}

fn with_jobs<T: Send>(jobs: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T, SearchError> {
    match jobs {
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k.max(1))
            .build()
            .map(|pool| pool.install(f))
            .map_err(|e| SearchError::Threads(e.to_string())),
        None => Ok(f()),
    }
}

/// Enumerates every bracket on `spec.biquandle` over `spec.ring`, in a fixed order.
pub fn search_brackets(spec: &SearchSpec) -> Result<SearchOutcome<BiquandleBracket>, SearchError> {
    let start = Instant::now();
    let t = Tables::new(&spec.ring)?;
    let n = spec.biquandle.size();
    let triples = triples(&spec.biquandle);
    let (order, at_step) = schedule(n, &triples);
    let mut by_delta = vec![Vec::new(); t.size];
    for &a in &t.units {
        for &b in &t.units {
            by_delta[t.delta(a, b) as usize].push((a, b));
        }
    }
    let limit = spec.limit.unwrap_or(usize::MAX);
    let search = BracketSearch {
        t: &t,
        order,
        at_step,
        triples,
        n,
        by_delta,
        limit,
    };
    let budget = Budget {
        deadline: spec.time_budget.map(|d| start + d),
        expired: AtomicBool::new(false),
        nodes: AtomicU64::new(0),
    };

    let first: Vec<(u8, u8)> = t
        .units
        .iter()
        .filter(|&&a| !spec.up_to_scaling || a == t.one)
        .flat_map(|&a| t.units.iter().map(move |&b| (a, b)))
        .collect();

    let run_branch = |&(a, b): &(u8, u8)| -> Branch {
        let delta = t.delta(a, b);
        let w = t.add(t.mul(delta, a), b);
        let mut br = Branch {
            a: vec![0; n * n],
            b: vec![0; n * n],
            delta,
            w,
            w_inv: t.inv(w),
            found: Vec::new(),
            nodes: 0,
            cut: false,
        };
        if br.w_inv == u8::MAX || !search.diagonal_ok(&br, a, b) {
            return br;
        }
        br.a[0] = a;
        br.b[0] = b;
        if search.step_ok(&br, 0) {
            search.dfs(&mut br, 1, &budget);
        }
        budget.flush(br.nodes);
        br
    };
    let branches: Vec<Branch> = with_jobs(spec.jobs, || first.par_iter().map(run_branch).collect())?;

    let mut complete = !budget.expired.load(Ordering::Relaxed);
    let mut raw = Vec::new();
    for br in branches {
        complete &= !br.cut;
        raw.extend(br.found);
    }
    if raw.len() > limit {
        raw.truncate(limit);
        complete = false;
    }

    let to_matrix = |v: &[u8]| Matrix::from_fn(n, |i, j| t.elements[v[i * n + j] as usize].clone());
    let results = with_jobs(spec.jobs, || {
        raw.par_iter()
            .map(|(a, b)| {
                BiquandleBracket::new(spec.biquandle.clone(), spec.ring.clone(), to_matrix(a), to_matrix(b))
                    .map_err(|e| SearchError::Unsound(e.to_string()))
            })
            .collect::<Result<Vec<_>, _>>()
    })??;
    Ok(SearchOutcome {
        results,
        complete,
        nodes: budget.nodes.load(Ordering::Relaxed),
        elapsed: start.elapsed(),
    })
}

/// Enumerates every 2-cocycle on `biquandle` with values in the units of `ring`.
pub fn search_cocycles(
    biquandle: &Biquandle,
    ring: &Ring,
    limit: Option<usize>,
) -> Result<SearchOutcome<TwoCocycle>, SearchError> {
    let start = Instant::now();
    let t = Tables::new(ring)?;
    let n = biquandle.size();
    let triples = triples(biquandle);
    let (order, at_step) = schedule(n, &triples);
    let limit = limit.unwrap_or(usize::MAX);
    let mut phi = vec![t.one; n * n];
    let mut found = Vec::new();
    let mut nodes = 0u64;

    fn holds(t: &Tables, phi: &[u8], tri: &[usize; 6]) -> bool {
        let [p1, p2, p3, q1, q2, q3] = *tri;
        t.mul3(phi[p1], phi[p2], phi[p3]) == t.mul3(phi[q1], phi[q2], phi[q3])
    }

    #[allow(clippy::too_many_arguments)]
    fn dfs(
        t: &Tables,
        order: &[usize],
        at_step: &[Vec<usize>],
        triples: &[[usize; 6]],
        phi: &mut Vec<u8>,
        step: usize,
        found: &mut Vec<Vec<u8>>,
        limit: usize,
        nodes: &mut u64,
    ) {
        *nodes += 1;
        if found.len() >= limit {
            return;
        }
        if step == order.len() {
            found.push(phi.clone());
            return;
        }
        let n = order.len().isqrt();
        let choices: Vec<u8> = if order[step] / n == order[step] % n {
            vec![t.one]
        } else {
            t.units.clone()
        };
        for v in choices {
            phi[order[step]] = v;
            if at_step[step].iter().all(|&k| holds(t, phi, &triples[k])) {
                dfs(t, order, at_step, triples, phi, step + 1, found, limit, nodes);
            }
        }
        phi[order[step]] = t.one;
    }

    dfs(&t, &order, &at_step, &triples, &mut phi, 0, &mut found, limit, &mut nodes);
    let complete = found.len() < limit;
    let group = AbelianGroup::ring_units(ring.clone());
    let results = found
        .iter()
        .map(|v| {
            let m = Matrix::from_fn(n, |i, j| t.elements[v[i * n + j] as usize].clone());
            let g = units_matrix(&group, &m).map_err(|e| SearchError::Unsound(e.to_string()))?;
            TwoCocycle::new(biquandle.clone(), group.clone(), g).map_err(|e| SearchError::Unsound(e.to_string()))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(SearchOutcome {
        results,
        complete,
        nodes,
        elapsed: start.elapsed(),
    })
}

/// An expected bracket for [`catalog_compare`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub name: String,
    pub a: Matrix<RingElement>,
    pub b: Matrix<RingElement>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EntryDifference {
    pub matrix: char,
    pub row: usize,
    pub col: usize,
    pub expected: String,
    pub found: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogMatch {
    pub name: String,
    /// Position of the match among the results.
    pub found_at: Option<usize>,
    /// Closest result by number of differing entries, when there is no match.
    pub nearest: Option<usize>,
    pub differences: Vec<EntryDifference>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CatalogReport {
    pub entries: Vec<CatalogMatch>,
}

impl CatalogReport {
    pub fn passed(&self) -> bool {
        self.entries.iter().all(|e| e.found_at.is_some())
    }
}

fn differences(expected: &CatalogEntry, got: &BiquandleBracket) -> Option<Vec<EntryDifference>> {
    if expected.a.size() != got.a().size() || expected.b.size() != got.b().size() {
        return None;
    }
    let mut out = Vec::new();
    for (name, e, g) in [('A', &expected.a, got.a()), ('B', &expected.b, got.b())] {
        for ((i, j), x) in e.indexed() {
            if x != &g[(i, j)] {
                out.push(EntryDifference {
                    matrix: name,
                    row: i + 1,
                    col: j + 1,
                    expected: x.to_string(),
                    found: g[(i, j)].to_string(),
                });
            }
        }
    }
    Some(out)
}

/// Looks up each expected bracket among `results`; reports the nearest miss otherwise.
pub fn catalog_compare(results: &[BiquandleBracket], expected: &[CatalogEntry]) -> CatalogReport {
    let entries = expected
        .iter()
        .map(|e| {
            let scored: Vec<(usize, Vec<EntryDifference>)> = results
                .iter()
                .enumerate()
                .filter_map(|(k, r)| differences(e, r).map(|d| (k, d)))
                .collect();
            match scored.iter().find(|(_, d)| d.is_empty()) {
                Some((k, _)) => CatalogMatch {
                    name: e.name.clone(),
                    found_at: Some(*k),
                    nearest: None,
                    differences: Vec::new(),
                },
                None => {
                    let best = scored.into_iter().min_by_key(|(k, d)| (d.len(), *k));
                    CatalogMatch {
                        name: e.name.clone(),
                        found_at: None,
                        nearest: best.as_ref().map(|(k, _)| *k),
                        differences: best.map(|(_, d)| d).unwrap_or_default(),
                    }
                }
            }
        })
        .collect();
    CatalogReport { entries }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_one_over_z5() {
        let r = Ring::modular(5).unwrap();
        let out = search_brackets(&SearchSpec::new(Biquandle::trivial(1).unwrap(), r.clone())).unwrap();
        assert!(out.complete);
        // one bracket per unit pair with w a unit
        let expected = r
            .units()
            .unwrap()
            .into_iter()
            .flat_map(|a| r.units().unwrap().into_iter().map(move |b| (a.clone(), b)))
            .filter(|(a, b)| {
                BiquandleBracket::constant(Biquandle::trivial(1).unwrap(), a.clone(), b.clone()).is_ok()
            })
            .count();
        assert_eq!(out.results.len(), expected);
    }

    #[test]
    fn infinite_ring_rejected() {
        let r = Ring::laurent(&["q"]).unwrap();
        assert!(matches!(
            search_brackets(&SearchSpec::new(Biquandle::trivial(1).unwrap(), r)),
            Err(SearchError::InfiniteRing(_))
        ));
    }

    #[test]
    fn limit_truncates() {
        let mut spec = SearchSpec::new(Biquandle::trivial(2).unwrap(), Ring::modular(5).unwrap());
        spec.limit = Some(3);
        let out = search_brackets(&spec).unwrap();
        assert_eq!(out.results.len(), 3);
        assert!(!out.complete);
    }

    #[test]
    fn trivial_one_cocycles() {
        let out = search_cocycles(&Biquandle::trivial(1).unwrap(), &Ring::modular(5).unwrap(), None).unwrap();
        assert_eq!(out.results.len(), 1);
    }
}
