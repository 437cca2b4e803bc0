//! Spanning thrackles of `K_{s,t}`: predicates, enumeration, counting and
//! the bijection with `{0,1}` strings.
//!
//! A spanning thrackle is pinned down by its breakpoints
//! `s+1 <= i_1 <= ... <= i_{s-1} <= s+t`: left vertex `k` is adjacent to
//! exactly the right vertices in `[i_{k-1}, i_k]`, with `i_0 = s+1` and
//! `i_s = s+t`. Enumeration walks these non-decreasing sequences.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;
use num_bigint::BigUint;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::binomial;
use crate::embedding::{meets, Edge, EmbeddedBipartite};
use crate::error::{Error, Result};

/// Largest `s*t` accepted by [`brute_force_spanning_thrackles`].
pub const BRUTE_FORCE_MAX_EDGES: usize = 30;
/// Largest edge set accepted by [`maximal_thrackles`].
pub const MAXIMAL_THRACKLE_MAX_EDGES: usize = 24;

/// True iff every pair of edges meets. Vacuous for at most one edge.
pub fn is_thrackle(edges: &[Edge]) -> bool {
    edges
        .iter()
        .enumerate()
        .all(|(k, a)| edges[k + 1..].iter().all(|b| meets(a, b)))
}

/// True iff `edges` is a thrackle with `s+t-1` distinct edges of `g` that
/// touches every vertex.
pub fn is_spanning_thrackle(g: &EmbeddedBipartite, edges: &[Edge]) -> bool {
    let distinct: BTreeSet<&Edge> = edges.iter().collect();
    if distinct.len() != edges.len() || edges.len() != g.n() - 1 {
        return false;
    }
    if !edges.iter().all(|e| g.contains(e)) || !is_thrackle(edges) {
        return false;
    }
    let mut covered = vec![false; g.n() + 1];
    for e in edges {
        covered[e.left] = true;
        covered[e.right] = true;
    }
    covered[1..].iter().all(|&c| c)
}

/// Union-find cycle check over the vertex set of `g`.
pub fn is_acyclic(g: &EmbeddedBipartite, edges: &[Edge]) -> bool {
    let mut parent: Vec<usize> = (0..=g.n()).collect();
    fn find(parent: &mut [usize], mut v: usize) -> usize {
        while parent[v] != v {
            parent[v] = parent[parent[v]];
            v = parent[v];
        }
        v
    }
    for e in edges {
        let a = find(&mut parent, e.left);
        let b = find(&mut parent, e.right);
        if a == b {
            return false;
        }
        parent[a] = b;
    }
    true
}

/// A set of pairwise-meeting edges of an embedded `K_{s,t}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Thrackle {
    graph: EmbeddedBipartite,
    edges: BTreeSet<Edge>,
}

impl Thrackle {
    pub fn new(graph: EmbeddedBipartite, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let edges: BTreeSet<Edge> = edges.into_iter().collect();
        for e in &edges {
            graph.check_edge(e)?;
        }
        let list: Vec<Edge> = edges.iter().copied().collect();
        if !is_thrackle(&list) {
            return Err(Error::NotSpanningThrackle(format!(
                "edges {} contain a non-meeting pair",
                fmt_edges(&list)
            )));
        }
        Ok(Thrackle { graph, edges })
    }

    pub fn graph(&self) -> &EmbeddedBipartite {
        &self.graph
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }
}

/// A thrackle that is also a spanning tree. Always carries its breakpoints.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SpanningThrackle {
    graph: EmbeddedBipartite,
    edges: Vec<Edge>,
}

impl SpanningThrackle {
    /// Validates and wraps an edge set.
    pub fn new(graph: EmbeddedBipartite, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let mut edges: Vec<Edge> = edges.into_iter().collect();
        edges.sort();
        if !is_spanning_thrackle(&graph, &edges) {
            return Err(Error::NotSpanningThrackle(format!(
                "{} in K_{{{},{}}}",
                fmt_edges(&edges),
                graph.s(),
                graph.t()
            )));
        }
        Ok(SpanningThrackle { graph, edges })
    }

    pub fn graph(&self) -> &EmbeddedBipartite {
        &self.graph
    }

    /// Edges in `(left, right)` lexicographic order.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn contains(&self, e: &Edge) -> bool {
        self.edges.binary_search(e).is_ok()
    }

    pub fn to_thrackle(&self) -> Thrackle {
        Thrackle {
            graph: self.graph,
            edges: self.edges.iter().copied().collect(),
        }
    }

    /// Right neighbours of left vertex `k`, increasing.
    pub fn right_neighbors(&self, k: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|e| e.left == k)
            .map(|e| e.right)
            .collect()
    }

    /// Left neighbours of right vertex `v`, increasing.
    pub fn left_neighbors(&self, v: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|e| e.right == v)
            .map(|e| e.left)
            .collect()
    }

    pub fn breakpoints(&self) -> Vec<usize> {
        (2..=self.graph.s())
            .map(|k| self.right_neighbors(k)[0])
            .collect()
    }

    pub fn to_json(&self) -> ThrackleJson {
        ThrackleJson {
            s: self.graph.s(),
            t: self.graph.t(),
            edges: self.edges.clone(),
            breakpoints: self.breakpoints(),
        }
    }
}

impl fmt::Display for SpanningThrackle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&fmt_edges(&self.edges))
    }
}

pub(crate) fn fmt_edges(edges: &[Edge]) -> String {
    format!("{{{}}}", edges.iter().map(|e| e.to_string()).join(","))
}

/// Serialized form of a spanning thrackle.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ThrackleJson {
    pub s: usize,
    pub t: usize,
    pub edges: Vec<Edge>,
    pub breakpoints: Vec<usize>,
}

impl ThrackleJson {
    pub fn into_thrackle(self) -> Result<SpanningThrackle> {
        let g = EmbeddedBipartite::new(self.s, self.t)?;
        let h = SpanningThrackle::new(g, self.edges)?;
        if h.breakpoints() != self.breakpoints {
            return Err(Error::BadBreakpoints(format!(
                "stored {:?} but edges give {:?}",
                self.breakpoints,
                h.breakpoints()
            )));
        }
        Ok(h)
    }
}

/// Breakpoint encoding of a spanning thrackle.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct IntervalRep {
    s: usize,
    t: usize,
    breakpoints: Vec<usize>,
}

impl IntervalRep {
    pub fn new(s: usize, t: usize, breakpoints: Vec<usize>) -> Result<Self> {
        EmbeddedBipartite::new(s, t)?;
        if breakpoints.len() != s - 1 {
            return Err(Error::BadBreakpoints(format!(
                "expected {} breakpoints, got {}",
                s - 1,
                breakpoints.len()
            )));
        }
        let lo = s + 1;
        let hi = s + t;
        if breakpoints.iter().any(|&b| b < lo || b > hi) {
            return Err(Error::BadBreakpoints(format!(
                "{breakpoints:?} leaves [{lo}, {hi}]"
            )));
        }
        if breakpoints.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::BadBreakpoints(format!(
                "{breakpoints:?} is not non-decreasing"
            )));
        }
        Ok(IntervalRep { s, t, breakpoints })
    }

    pub fn breakpoints(&self) -> &[usize] {
        &self.breakpoints
    }

    /// The closed interval of right vertices adjacent to left vertex `k`.
    pub fn interval(&self, k: usize) -> (usize, usize) {
        let lo = if k == 1 { self.s + 1 } else { self.breakpoints[k - 2] };
        let hi = if k == self.s {
            self.s + self.t
        } else {
            self.breakpoints[k - 1]
        };
        (lo, hi)
    }

    fn edges(&self) -> Vec<Edge> {
        (1..=self.s)
            .flat_map(|k| {
                let (lo, hi) = self.interval(k);
                (lo..=hi).map(move |j| Edge::new(k, j))
            })
            .collect()
    }
}

/// Reads the breakpoints of a spanning thrackle: `i_k` is the smallest
/// right neighbour of left vertex `k+1`.
pub fn thrackle_to_interval(h: &SpanningThrackle) -> IntervalRep {
    let g = h.graph();
    IntervalRep {
        s: g.s(),
        t: g.t(),
        breakpoints: h.breakpoints(),
    }
}

pub fn interval_to_thrackle(rep: &IntervalRep) -> SpanningThrackle {
    let graph = EmbeddedBipartite::new(rep.s, rep.t).expect("validated on construction");
    let edges = rep.edges();
    debug_assert!(is_spanning_thrackle(&graph, &edges));
    SpanningThrackle { graph, edges }
}

/// Checks an arbitrary edge set and returns its breakpoint encoding.
pub fn edges_to_interval(g: &EmbeddedBipartite, edges: &[Edge]) -> Result<IntervalRep> {
    let h = SpanningThrackle::new(*g, edges.iter().copied())?;
    Ok(thrackle_to_interval(&h))
}

/// Streams the spanning thrackles of `K_{s,t}` in lexicographic order of
/// their breakpoint vectors.
#[derive(Debug, Clone)]
pub struct SpanningThrackles {
    s: usize,
    t: usize,
    next: Option<Vec<usize>>,
}

impl Iterator for SpanningThrackles {
    type Item = SpanningThrackle;

    fn next(&mut self) -> Option<SpanningThrackle> {
        let current = self.next.take()?;
        let top = self.s + self.t;
        if let Some(pos) = current.iter().rposition(|&b| b < top) {
            let mut succ = current.clone();
            let v = succ[pos] + 1;
            succ[pos..].iter_mut().for_each(|b| *b = v);
            self.next = Some(succ);
        }
        let rep = IntervalRep {
            s: self.s,
            t: self.t,
            breakpoints: current,
        };
        Some(interval_to_thrackle(&rep))
    }
}

pub fn enumerate_spanning_thrackles(s: usize, t: usize) -> Result<SpanningThrackles> {
    EmbeddedBipartite::new(s, t)?;
    Ok(SpanningThrackles {
        s,
        t,
        next: Some(vec![s + 1; s - 1]),
    })
}

/// Every `(s+t-1)`-subset of the edges, filtered by
/// [`is_spanning_thrackle`]. Independent of the breakpoint machinery.
pub fn brute_force_spanning_thrackles(s: usize, t: usize) -> Result<BTreeSet<SpanningThrackle>> {
    let g = EmbeddedBipartite::new(s, t)?;
    if g.edge_count() > BRUTE_FORCE_MAX_EDGES {
        return Err(Error::SizeGuard(format!(
            "brute force needs s*t <= {BRUTE_FORCE_MAX_EDGES}, got {}",
            g.edge_count()
        )));
    }
    Ok(g.all_edges()
        .into_iter()
        .combinations(g.n() - 1)
        .filter(|c| is_spanning_thrackle(&g, c))
        .map(|edges| SpanningThrackle { graph: g, edges })
        .collect())
}

/// `f(s,t) = sum_{i=0}^{t-1} f(s-1, t-i)` with `f(1,t) = 1`, tabulated
/// bottom-up per call.
pub fn count_recurrence(s: usize, t: usize) -> Result<BigUint> {
    EmbeddedBipartite::new(s, t)?;
    // row[u] holds f(current_s, u) for u in 1..=t
    let mut row: Vec<BigUint> = vec![BigUint::one(); t + 1];
    row[0] = BigUint::zero();
    for _ in 2..=s {
        let mut next = vec![BigUint::zero(); t + 1];
        for u in 1..=t {
            next[u] = (0..u).map(|i| &row[u - i]).sum();
        }
        row = next;
    }
    Ok(row[t].clone())
}

/// `f(s,t) = C(s+t-2, s-1)`.
pub fn count_closed_form(s: usize, t: usize) -> Result<BigUint> {
    EmbeddedBipartite::new(s, t)?;
    Ok(binomial((s + t - 2) as u64, (s - 1) as u64))
}

/// Number of spanning trees of `K_{s,t}`, `s^(t-1) * t^(s-1)`.
pub fn spanning_tree_count(s: usize, t: usize) -> Result<BigUint> {
    EmbeddedBipartite::new(s, t)?;
    Ok(BigUint::from(s).pow(t as u32 - 1) * BigUint::from(t).pow(s as u32 - 1))
}

/// A word over `{0,1}`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BitString(Vec<bool>);

impl BitString {
    pub fn bits(&self) -> &[bool] {
        &self.0
    }

    pub fn zeros(&self) -> usize {
        self.0.iter().filter(|&&b| !b).count()
    }

    pub fn ones(&self) -> usize {
        self.0.iter().filter(|&&b| b).count()
    }

    /// All words with the given numbers of zeros and ones, in increasing
    /// lexicographic order.
    pub fn all_with_counts(zeros: usize, ones: usize) -> Vec<BitString> {
        let len = zeros + ones;
        (0..len)
            .combinations(ones)
            .map(|pos| {
                let mut bits = vec![false; len];
                for p in pos {
                    bits[p] = true;
                }
                BitString(bits)
            })
            .sorted()
            .collect()
    }
}

impl From<Vec<bool>> for BitString {
    fn from(bits: Vec<bool>) -> Self {
        BitString(bits)
    }
}

impl fmt::Display for BitString {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for &b in &self.0 {
            f.write_str(if b { "1" } else { "0" })?;
        }
        Ok(())
    }
}

impl FromStr for BitString {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        text.chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                _ => Err(Error::BadBitString {
                    zeros: 0,
                    ones: 0,
                    found: text.to_owned(),
                }),
            })
            .collect::<Result<Vec<bool>>>()
            .map(BitString)
    }
}

/// Walks the right vertices `s+1..s+t-1` in order. At each, every not yet
/// marked left neighbour other than `1` contributes a `0` and is marked,
/// then a `1` closes the vertex. Left neighbours of `s+t` that are still
/// unmarked add trailing zeros.
pub fn phi(h: &SpanningThrackle) -> BitString {
    let g = h.graph();
    let (s, n) = (g.s(), g.n());
    let mut marked = vec![false; s + 1];
    let mut out = Vec::with_capacity(n - 2);
    let mut visit = |v: usize, out: &mut Vec<bool>| {
        for w in h.left_neighbors(v) {
            if w != 1 && !marked[w] {
                out.push(false);
                marked[w] = true;
            }
        }
    };
    for v in s + 1..n {
        visit(v, &mut out);
        out.push(true);
    }
    visit(n, &mut out);
    BitString(out)
}

/// Inverse of [`phi`]: a zero seen after `c` ones places the next left
/// vertex's first neighbour at `s+1+c`.
pub fn phi_inverse(bits: &BitString, s: usize, t: usize) -> Result<SpanningThrackle> {
    EmbeddedBipartite::new(s, t)?;
    if bits.zeros() != s - 1 || bits.ones() != t - 1 {
        return Err(Error::BadBitString {
            zeros: s - 1,
            ones: t - 1,
            found: bits.to_string(),
        });
    }
    let mut ones_seen = 0;
    let mut breakpoints = Vec::with_capacity(s - 1);
    for &b in bits.bits() {
        if b {
            ones_seen += 1;
        } else {
            breakpoints.push(s + 1 + ones_seen);
        }
    }
    Ok(interval_to_thrackle(&IntervalRep::new(s, t, breakpoints)?))
}

/// All inclusion-maximal thrackles inside `sub`, i.e. the maximal cliques
/// of the meets relation, found by Bron–Kerbosch with pivoting. Each
/// result is sorted, and the list is sorted.
pub fn maximal_thrackles(g: &EmbeddedBipartite, sub: &[Edge]) -> Result<Vec<Vec<Edge>>> {
    let sub: Vec<Edge> = sub.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
    if sub.len() > MAXIMAL_THRACKLE_MAX_EDGES {
        return Err(Error::SizeGuard(format!(
            "maximal thrackle search needs at most {MAXIMAL_THRACKLE_MAX_EDGES} edges, got {}",
            sub.len()
        )));
    }
    for e in &sub {
        g.check_edge(e)?;
    }
    if sub.is_empty() {
        return Ok(vec![Vec::new()]);
    }
    let adj: Vec<u32> = sub
        .iter()
        .enumerate()
        .map(|(a, ea)| {
            sub.iter()
                .enumerate()
                .filter(|&(b, eb)| a != b && meets(ea, eb))
                .fold(0u32, |m, (b, _)| m | (1 << b))
        })
        .collect();
    let mut cliques = Vec::new();
    let all = if sub.len() == 32 { u32::MAX } else { (1u32 << sub.len()) - 1 };
    bron_kerbosch(&adj, 0, all, 0, &mut cliques);
    let mut out: Vec<Vec<Edge>> = cliques
        .into_iter()
        .map(|mask| {
            (0..sub.len())
                .filter(|&b| mask & (1 << b) != 0)
                .map(|b| sub[b])
                .collect()
        })
        .collect();
    out.sort();
    Ok(out)
}

fn bron_kerbosch(adj: &[u32], r: u32, mut p: u32, mut x: u32, out: &mut Vec<u32>) {
    if p == 0 {
        if x == 0 {
            out.push(r);
        }
        return;
    }
    let pivot = bits_of(p | x)
        .max_by_key(|&u| (adj[u] & p).count_ones())
        .expect("p is nonempty");
    for v in bits_of(p & !adj[pivot]).collect::<Vec<_>>() {
        let bit = 1u32 << v;
        bron_kerbosch(adj, r | bit, p & adj[v], x & adj[v], out);
        p &= !bit;
        x |= bit;
    }
}

fn bits_of(mask: u32) -> impl Iterator<Item = usize> {
    (0..32).filter(move |b| mask & (1 << b) != 0)
}
