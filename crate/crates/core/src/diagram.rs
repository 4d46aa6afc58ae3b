//! Oriented link diagrams given as PD codes.
//!
//! A crossing `X[a,b,c,d]` lists its four edges counterclockwise, starting at
//! the incoming under-edge `a`; `c` is the outgoing under-edge. Orientation of
//! the over-strand is inferred by propagating edge directions through the
//! whole diagram. A component that never passes under anything falls back to
//! the PD numbering: along a component, edge labels increase in the direction
//! of travel (cyclically).
//!
//! Colorings follow the "left side" convention: at each crossing, the
//! semiarcs on the left when the crossing is turned so both strands point
//! downward carry the pair `(x, y)`, and the two semiarcs on the right carry
//! `x ⊳̲ y` (continuing the under-strand) and `y ⊳̄ x` (continuing the
//! over-strand). That pair `(x, y)` is what indexes bracket coefficients and
//! cocycle weights.

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::biquandle::Biquandle;

pub type EdgeId = u64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum DiagramError {
    #[error("parse error at byte {offset}: {message}")]
    Parse { offset: usize, message: String },
    #[error("edge {edge} occurs {count} times; every edge must occur exactly twice")]
    EdgeCount { edge: EdgeId, count: usize },
    #[error("inconsistent orientation at edge {0}")]
    Orientation(EdgeId),
    #[error("diagram is empty")]
    Empty,
    #[error("{0}")]
    Braid(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    #[serde(rename = "+")]
    Positive,
    #[serde(rename = "-")]
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

/// Dense edge indices of the four semiarcs at a crossing.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CrossingRoles {
    pub under_in: usize,
    pub under_out: usize,
    pub over_in: usize,
    pub over_out: usize,
}

impl CrossingRoles {
    /// The left-side pair `(x-edge, y-edge)` and the right-side pair
    /// `(x⊳̲y-edge, y⊳̄x-edge)`.
    pub fn sides(&self, sign: Sign) -> ([usize; 2], [usize; 2]) {
        match sign {
            Sign::Positive => ([self.under_in, self.over_out], [self.under_out, self.over_in]),
            Sign::Negative => ([self.under_out, self.over_in], [self.under_in, self.over_out]),
        }
    }
}

/// Smoothing choice at a crossing, named by the position pairing it uses.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Smoothing {
    /// Joins positions 1–2 and 3–4.
    A,
    /// Joins positions 1–4 and 2–3.
    B,
}

impl Smoothing {
    /// Smoothing at crossing `k` of the state encoded by `mask` (bit set = B).
    pub fn from_mask(mask: u64, k: usize) -> Self {
        if mask >> k & 1 == 1 {
            Smoothing::B
        } else {
            Smoothing::A
        }
    }

    /// Joined position pairs (0-based).
    pub fn pairs(self) -> [(usize, usize); 2] {
        match self {
            Smoothing::A => [(0, 1), (2, 3)],
            Smoothing::B => [(0, 3), (1, 2)],
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinkDiagram {
    crossings: Vec<[EdgeId; 4]>,
    free_loops: usize,
    edges: Vec<EdgeId>,
    signs: Vec<Sign>,
    roles: Vec<CrossingRoles>,
    /// Edge cycles in direction of travel, each starting at its smallest id.
    components: Vec<Vec<EdgeId>>,
    component_of: Vec<usize>,
}

impl LinkDiagram {
    /// Parses `X[a,b,c,d]` tokens and `O` free loops. `#` starts a comment.
    pub fn parse_pd(text: &str) -> Result<Self, DiagramError> {
        let bytes = text.as_bytes();
        let mut i = 0;
        let mut crossings = Vec::new();
        let mut free = 0;
        let err = |offset, message: &str| DiagramError::Parse {
            offset,
            message: message.to_string(),
        };
        while i < bytes.len() {
            match bytes[i] {
                b'#' => {
                    while i < bytes.len() && bytes[i] != b'\n' {
                        i += 1;
                    }
                }
                c if c.is_ascii_whitespace() || c == b',' => i += 1,
                b'O' => {
                    free += 1;
                    i += 1;
                }
                b'X' => {
                    let start = i;
                    i += 1;
                    while i < bytes.len() && bytes[i].is_ascii_whitespace() {
                        i += 1;
                    }
                    if bytes.get(i) != Some(&b'[') {
                        return Err(err(i, "expected '[' after X"));
                    }
                    let close = text[i..]
                        .find(']')
                        .map(|k| i + k)
                        .ok_or_else(|| err(start, "unterminated crossing"))?;
                    let nums: Result<Vec<EdgeId>, _> =
                        text[i + 1..close].split(',').map(|s| s.trim().parse::<EdgeId>()).collect();
                    let nums = nums.map_err(|_| err(i + 1, "edge labels must be nonnegative integers"))?;
                    let tuple: [EdgeId; 4] = nums
                        .try_into()
                        .map_err(|_| err(start, "a crossing needs exactly four edges"))?;
                    crossings.push(tuple);
                    i = close + 1;
                }
                _ => return Err(err(i, "unexpected character")),
            }
        }
        Self::from_crossings(crossings, free)
    }

    pub fn from_crossings(crossings: Vec<[EdgeId; 4]>, free_loops: usize) -> Result<Self, DiagramError> {
        if crossings.is_empty() && free_loops == 0 {
            return Err(DiagramError::Empty);
        }
        let mut occurrences: BTreeMap<EdgeId, Vec<(usize, usize)>> = BTreeMap::new();
        for (ci, c) in crossings.iter().enumerate() {
            for (p, &e) in c.iter().enumerate() {
                occurrences.entry(e).or_default().push((ci, p));
            }
        }
        if let Some((&edge, occ)) = occurrences.iter().find(|(_, o)| o.len() != 2) {
            return Err(DiagramError::EdgeCount {
                edge,
                count: occ.len(),
            });
        }
        let edges: Vec<EdgeId> = occurrences.keys().copied().collect();
        let dense: BTreeMap<EdgeId, usize> = edges.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        let partner = |ci: usize, p: usize| -> (usize, usize) {
            let occ = &occurrences[&crossings[ci][p]];
            if occ[0] == (ci, p) {
                occ[1]
            } else {
                occ[0]
            }
        };

        // incoming[ci][p]: whether the edge at position p enters crossing ci
        let mut incoming: Vec<[Option<bool>; 4]> = vec![[None; 4]; crossings.len()];
        let mut stack = Vec::new();
        let set = |incoming: &mut Vec<[Option<bool>; 4]>,
                   stack: &mut Vec<(usize, usize)>,
                   ci: usize,
                   p: usize,
                   v: bool|
         -> Result<(), DiagramError> {
            match incoming[ci][p] {
                Some(old) if old != v => Err(DiagramError::Orientation(crossings[ci][p])),
                Some(_) => Ok(()),
                None => {
                    incoming[ci][p] = Some(v);
                    stack.push((ci, p));
                    Ok(())
                }
            }
        };
        for ci in 0..crossings.len() {
            set(&mut incoming, &mut stack, ci, 0, true)?;
            set(&mut incoming, &mut stack, ci, 2, false)?;
        }
        let undirected = undirected_components(&crossings, &occurrences);
        loop {
            while let Some((ci, p)) = stack.pop() {
                let v = incoming[ci][p].unwrap();
                let (cj, q) = partner(ci, p);
                if (cj, q) != (ci, p) {
                    set(&mut incoming, &mut stack, cj, q, !v)?;
                }
                if p % 2 == 1 {
                    set(&mut incoming, &mut stack, ci, 4 - p, !v)?;
                }
            }
            let Some(ci) = (0..crossings.len()).find(|&ci| incoming[ci][1].is_none()) else {
                break;
            };
            let (b, d) = (crossings[ci][1], crossings[ci][3]);
            let comp = undirected.iter().find(|c| c.contains(&b)).expect("edge has a component");
            let succ = |e: EdgeId| {
                let k = comp.iter().position(|&x| x == e).unwrap();
                comp[(k + 1) % comp.len()]
            };
            let b_in = succ(b) == d && succ(d) != b;
            set(&mut incoming, &mut stack, ci, 1, b_in)?;
        }

        let mut signs = Vec::with_capacity(crossings.len());
        let mut roles = Vec::with_capacity(crossings.len());
        for (ci, c) in crossings.iter().enumerate() {
            let e = |p: usize| dense[&c[p]];
            if incoming[ci][3] == Some(true) {
                signs.push(Sign::Positive);
                roles.push(CrossingRoles {
                    under_in: e(0),
                    under_out: e(2),
                    over_in: e(3),
                    over_out: e(1),
                });
            } else {
                signs.push(Sign::Negative);
                roles.push(CrossingRoles {
                    under_in: e(0),
                    under_out: e(2),
                    over_in: e(1),
                    over_out: e(3),
                });
            }
        }

        // successor of each edge along its strand
        let mut next = vec![usize::MAX; edges.len()];
        for r in &roles {
            next[r.under_in] = r.under_out;
            next[r.over_in] = r.over_out;
        }
        let mut component_of = vec![usize::MAX; edges.len()];
        let mut components = Vec::new();
        for start in 0..edges.len() {
            if component_of[start] != usize::MAX {
                continue;
            }
            let mut cycle = Vec::new();
            let mut e = start;
            while component_of[e] == usize::MAX {
                component_of[e] = components.len();
                cycle.push(edges[e]);
                e = next[e];
            }
            components.push(cycle);
        }

        Ok(Self {
            crossings,
            free_loops,
            edges,
            signs,
            roles,
            components,
            component_of,
        })
    }

    /// Closure of a braid on `strands` strands. Generator `i` is `σ_i`, `-i` is `σ_i⁻¹`.
    ///
    /// Strands never touched by the word become free loops. Edge labels run
    /// consecutively along each component.
    pub fn braid_closure(strands: usize, word: &[i32]) -> Result<Self, DiagramError> {
        if strands == 0 {
            return Err(DiagramError::Braid("a braid needs at least one strand".into()));
        }
        let mut label: Vec<usize> = (0..strands).collect();
        let mut next_label = strands;
        let mut succ: Vec<usize> = vec![usize::MAX; strands];
        let mut raw = Vec::with_capacity(word.len());
        let mut touched = vec![false; strands];
        for &g in word {
            let i = g.unsigned_abs() as usize;
            if g == 0 || i >= strands {
                return Err(DiagramError::Braid(format!("generator {g} out of range for {strands} strands")));
            }
            let (el, er) = (label[i - 1], label[i]);
            let (fl, fr) = (next_label, next_label + 1);
            next_label += 2;
            succ.extend([usize::MAX, usize::MAX]);
            succ[el] = fr;
            succ[er] = fl;
            raw.push(if g > 0 { [er, fr, fl, el] } else { [el, er, fr, fl] });
            label[i - 1] = fl;
            label[i] = fr;
            touched[i - 1] = true;
            touched[i] = true;
        }
        // identify the top of each strand with its bottom
        let mut alias: Vec<usize> = (0..next_label).collect();
        for s in 0..strands {
            alias[label[s]] = s;
        }
        let resolve = |e: usize| alias[e];
        let free = touched.iter().filter(|t| !**t).count();
        let mut number = vec![0 as EdgeId; next_label];
        let mut seen = vec![false; next_label];
        let mut k = 1;
        for s in (0..strands).filter(|&s| touched[s]) {
            let mut e = s;
            while !seen[e] {
                seen[e] = true;
                number[e] = k;
                k += 1;
                e = resolve(succ[e]);
            }
        }
        let crossings = raw
            .iter()
            .map(|c| c.map(|e| number[resolve(e)]))
            .collect();
        Self::from_crossings(crossings, free)
    }

    pub fn crossings(&self) -> &[[EdgeId; 4]] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    pub fn free_loops(&self) -> usize {
        self.free_loops
    }

    /// Sorted edge ids; dense edge index `k` is `edges()[k]`.
    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn signs(&self) -> &[Sign] {
        &self.signs
    }

    pub fn roles(&self) -> &[CrossingRoles] {
        &self.roles
    }

    pub fn writhe(&self) -> i64 {
        self.signs.iter().map(|s| s.value()).sum()
    }

    pub fn positive_count(&self) -> usize {
        self.signs.iter().filter(|s| **s == Sign::Positive).count()
    }

    /// Edge cycles of the components with crossings; free loops not included.
    pub fn components(&self) -> &[Vec<EdgeId>] {
        &self.components
    }

    /// Number of components, free loops included.
    pub fn component_count(&self) -> usize {
        self.components.len() + self.free_loops
    }

    /// Linking number of components `i` and `j` (indices into [`Self::components`]).
    pub fn linking_number(&self, i: usize, j: usize) -> Option<i64> {
        if i == j || i >= self.components.len() || j >= self.components.len() {
            return None;
        }
        let twice: i64 = self
            .roles
            .iter()
            .zip(&self.signs)
            .filter(|(r, _)| {
                let (cu, co) = (self.component_of[r.under_in], self.component_of[r.over_in]);
                (cu, co) == (i, j) || (cu, co) == (j, i)
            })
            .map(|(_, s)| s.value())
            .sum();
        Some(twice / 2)
    }

    /// The mirror image: every crossing switched, orientation kept.
    pub fn mirror(&self) -> Self {
        let crossings = self
            .crossings
            .iter()
            .zip(&self.signs)
            .map(|(&[a, b, c, d], s)| match s {
                Sign::Positive => [d, a, b, c],
                Sign::Negative => [b, c, d, a],
            })
            .collect();
        Self::from_crossings(crossings, self.free_loops).expect("mirror of a valid diagram")
    }

    /// Number of loops in the smoothing where crossing `k` uses `state(k)`.
    pub fn count_loops(&self, state: impl Fn(usize) -> Smoothing) -> usize {
        let c = self.crossings.len();
        let mut uf = UnionFind::new(4 * c);
        let mut first: Vec<Option<usize>> = vec![None; self.edges.len()];
        for (ci, cr) in self.crossings.iter().enumerate() {
            for (p, e) in cr.iter().enumerate() {
                let k = self.edges.binary_search(e).unwrap();
                match first[k] {
                    Some(node) => uf.union(node, 4 * ci + p),
                    None => first[k] = Some(4 * ci + p),
                }
            }
            for (p, q) in state(ci).pairs() {
                uf.union(4 * ci + p, 4 * ci + q);
            }
        }
        uf.roots() + self.free_loops
    }

    /// Loop counts of every state, indexed by state mask (bit `k` set = B at crossing `k`).
    pub fn all_loop_counts(&self) -> Vec<usize> {
        let c = self.crossings.len();
        assert!(c < 32, "too many crossings for a full state sum");
        (0..1u64 << c)
            .map(|mask| self.count_loops(|k| Smoothing::from_mask(mask, k)))
            .collect()
    }

    pub fn to_pd(&self) -> String {
        let mut parts: Vec<String> = self
            .crossings
            .iter()
            .map(|[a, b, c, d]| format!("X[{a},{b},{c},{d}]"))
            .collect();
        parts.extend(std::iter::repeat("O".to_string()).take(self.free_loops));
        parts.join(" ")
    }

    /// The left-side pair `(x, y)` at crossing `ci`, as 0-based elements.
    pub fn crossing_pair(&self, coloring: &Coloring, ci: usize) -> (usize, usize) {
        let ([l1, l2], _) = self.roles[ci].sides(self.signs[ci]);
        (coloring.edges[l1], coloring.edges[l2])
    }

    /// First crossing whose relation fails, if any.
    pub fn coloring_violation(&self, biquandle: &Biquandle, coloring: &Coloring) -> Option<usize> {
        if coloring.edges.len() != self.edges.len()
            || coloring.free.len() != self.free_loops
            || coloring.edges.iter().chain(&coloring.free).any(|&v| v >= biquandle.size())
        {
            return Some(usize::MAX);
        }
        (0..self.crossings.len()).find(|&ci| {
            let (l, [r1, r2]) = self.roles[ci].sides(self.signs[ci]);
            let (x, y) = (coloring.edges[l[0]], coloring.edges[l[1]]);
            coloring.edges[r1] != biquandle.under(x, y) || coloring.edges[r2] != biquandle.over(y, x)
        })
    }

    /// All colorings, in lexicographic order of edge colors (edges sorted by id),
    /// then free-loop colors.
    pub fn colorings(&self, biquandle: &Biquandle) -> Vec<Coloring> {
        let n = biquandle.size();
        let mut fwd = vec![(0, 0); n * n];
        let mut bwd = vec![(usize::MAX, usize::MAX); n * n];
        for x in 0..n {
            for y in 0..n {
                let r = (biquandle.under(x, y), biquandle.over(y, x));
                fwd[x * n + y] = r;
                bwd[r.0 * n + r.1] = (x, y);
            }
        }
        let sides: Vec<([usize; 2], [usize; 2])> =
            self.roles.iter().zip(&self.signs).map(|(r, s)| r.sides(*s)).collect();
        let mut watch = vec![Vec::new(); self.edges.len()];
        for (ci, (l, r)) in sides.iter().enumerate() {
            for &e in l.iter().chain(r) {
                watch[e].push(ci);
            }
        }
        let mut search = ColoringSearch {
            n,
            fwd,
            bwd,
            sides,
            watch,
            color: vec![None; self.edges.len()],
            trail: Vec::new(),
            found: Vec::new(),
        };
        search.run(0);

        let mut out = Vec::new();
        for edges in search.found {
            for k in 0..n.pow(self.free_loops as u32) {
                let mut free = vec![0; self.free_loops];
                let mut r = k;
                for slot in free.iter_mut().rev() {
                    *slot = r % n;
                    r /= n;
                }
                out.push(Coloring {
                    edges: edges.clone(),
                    free,
                });
            }
        }
        out
    }
}

impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_pd())
    }
}

fn undirected_components(
    crossings: &[[EdgeId; 4]],
    occurrences: &BTreeMap<EdgeId, Vec<(usize, usize)>>,
) -> Vec<Vec<EdgeId>> {
    let index: BTreeMap<EdgeId, usize> = occurrences.keys().enumerate().map(|(k, &e)| (e, k)).collect();
    let mut uf = UnionFind::new(index.len());
    for c in crossings {
        uf.union(index[&c[0]], index[&c[2]]);
        uf.union(index[&c[1]], index[&c[3]]);
    }
    let mut groups: BTreeMap<usize, Vec<EdgeId>> = BTreeMap::new();
    for (&e, &k) in &index {
        groups.entry(uf.find(k)).or_default().push(e);
    }
    groups.into_values().collect()
}

struct ColoringSearch {
    n: usize,
    fwd: Vec<(usize, usize)>,
    bwd: Vec<(usize, usize)>,
    sides: Vec<([usize; 2], [usize; 2])>,
    watch: Vec<Vec<usize>>,
    color: Vec<Option<usize>>,
    trail: Vec<usize>,
    found: Vec<Vec<usize>>,
}

impl ColoringSearch {
    fn run(&mut self, from: usize) {
        let Some(e) = (from..self.color.len()).find(|&e| self.color[e].is_none()) else {
            self.found.push(self.color.iter().map(|c| c.unwrap()).collect());
            return;
        };
        for v in 0..self.n {
            let mark = self.trail.len();
            if self.assign(e, v) {
                self.run(e + 1);
            }
            for k in self.trail.drain(mark..) {
                self.color[k] = None;
            }
        }
    }

    fn assign(&mut self, e: usize, v: usize) -> bool {
        let mut queue = vec![(e, v)];
        while let Some((e, v)) = queue.pop() {
            match self.color[e] {
                Some(old) if old != v => return false,
                Some(_) => continue,
                None => {
                    self.color[e] = Some(v);
                    self.trail.push(e);
                }
            }
            for &ci in &self.watch[e] {
                let ([l1, l2], [r1, r2]) = self.sides[ci];
                let n = self.n;
                if let (Some(x), Some(y)) = (self.color[l1], self.color[l2]) {
                    let (a, b) = self.fwd[x * n + y];
                    queue.push((r1, a));
                    queue.push((r2, b));
                }
                if let (Some(a), Some(b)) = (self.color[r1], self.color[r2]) {
                    let (x, y) = self.bwd[a * n + b];
                    queue.push((l1, x));
                    queue.push((l2, y));
                }
            }
        }
        true
    }
}

/// A coloring by 0-based biquandle elements.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Coloring {
    /// Color of dense edge `k`, i.e. of edge id `diagram.edges()[k]`.
    pub edges: Vec<usize>,
    /// Colors of the free loops.
    pub free: Vec<usize>,
}

impl Coloring {
    /// `(edge id, 1-based label)` pairs followed by free-loop labels.
    pub fn labelled(&self, diagram: &LinkDiagram) -> (Vec<(EdgeId, usize)>, Vec<usize>) {
        (
            diagram.edges().iter().zip(&self.edges).map(|(&e, &c)| (e, c + 1)).collect(),
            self.free.iter().map(|c| c + 1).collect(),
        )
    }
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra] = rb;
        }
    }

    pub(crate) fn roots(&mut self) -> usize {
        (0..self.parent.len()).filter(|&a| self.find(a) == a).count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const TREFOIL: &str = "X[1,5,2,4] X[3,1,4,6] X[5,3,6,2]";

    #[test]
    fn trefoil_basics() {
        let d = LinkDiagram::parse_pd(TREFOIL).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.component_count(), 1);
        assert_eq!(d.writhe(), 3);
        assert_eq!(d.mirror().writhe(), -3);
        assert_eq!(d.components()[0], vec![1, 2, 3, 4, 5, 6]);
    }

    #[test]
    fn kinks() {
        assert_eq!(LinkDiagram::parse_pd("X[1,1,2,2]").unwrap().writhe(), 1);
        assert_eq!(LinkDiagram::parse_pd("X[1,2,2,1]").unwrap().writhe(), -1);
    }

    #[test]
    fn hopf_linking() {
        let d = LinkDiagram::parse_pd("X[1,4,2,3] X[3,2,4,1]").unwrap();
        assert_eq!(d.component_count(), 2);
        assert_eq!(d.linking_number(0, 1), Some(-1));
        let m = LinkDiagram::parse_pd("X[4,2,3,1] X[2,4,1,3]").unwrap();
        assert_eq!(m.linking_number(0, 1), Some(1));
    }

    #[test]
    fn unknot() {
        let d = LinkDiagram::parse_pd("O").unwrap();
        assert_eq!((d.crossing_count(), d.free_loops(), d.component_count()), (0, 1, 1));
        assert_eq!(d.count_loops(|_| Smoothing::A), 1);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(LinkDiagram::parse_pd(""), Err(DiagramError::Empty)));
        assert!(matches!(LinkDiagram::parse_pd("X[1,2,3]"), Err(DiagramError::Parse { .. })));
        assert!(matches!(LinkDiagram::parse_pd("Y"), Err(DiagramError::Parse { .. })));
        assert!(matches!(
            LinkDiagram::parse_pd("X[1,2,3,4]"),
            Err(DiagramError::EdgeCount { edge: 1, count: 1 })
        ));
    }

    #[test]
    fn kink_loop_counts() {
        let d = LinkDiagram::parse_pd("X[1,1,2,2]").unwrap();
        assert_eq!(d.count_loops(|_| Smoothing::A), 2);
        assert_eq!(d.count_loops(|_| Smoothing::B), 1);
    }

    #[test]
    fn braid_trefoil_matches_pd() {
        let b = LinkDiagram::braid_closure(2, &[1, 1, 1]).unwrap();
        assert_eq!(b.writhe(), 3);
        assert_eq!(b.component_count(), 1);
        let d = LinkDiagram::braid_closure(3, &[1]).unwrap();
        assert_eq!((d.component_count(), d.free_loops()), (2, 1));
        assert!(LinkDiagram::braid_closure(2, &[2]).is_err());
    }

    #[test]
    fn colorings_flip_and_dihedral() {
        let d = LinkDiagram::parse_pd(TREFOIL).unwrap();
        assert_eq!(d.colorings(&Biquandle::flip2()).len(), 2);
        let d3 = Biquandle::dihedral(3).unwrap();
        let cs = d.colorings(&d3);
        assert_eq!(cs.len(), 9);
        assert!(cs.iter().all(|c| d.coloring_violation(&d3, c).is_none()));
        let hopf = LinkDiagram::parse_pd("X[1,4,2,3] X[3,2,4,1]").unwrap();
        assert_eq!(hopf.colorings(&Biquandle::flip2()).len(), 4);
        let two = LinkDiagram::parse_pd("O O").unwrap();
        assert_eq!(two.colorings(&d3).len(), 9);
    }

    #[test]
    fn round_trip_text() {
        let d = LinkDiagram::parse_pd("X[1,1,2,2] O # kink\n").unwrap();
        assert_eq!(d.to_pd(), "X[1,1,2,2] O");
        assert_eq!(LinkDiagram::parse_pd(&d.to_pd()).unwrap(), d);
    }
}
