//! The fixed convex drawing of `K_{s,t}`.
//!
//! Left vertices `1..=s` sit on a vertical line labelled bottom to top,
//! right vertices `s+1..=s+t` on a parallel line labelled top to bottom.
//! Under that drawing two vertex-disjoint edges `(i,j)` and `(k,l)` cross
//! exactly when `(i-k)(j-l) > 0`, so every geometric question below is
//! answered with integer arithmetic.

use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// An edge `(left, right)` of `K_{s,t}` with `1 <= left <= s < right <= s+t`.
///
/// The derived ordering is lexicographic on `(left, right)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Edge {
    pub left: usize,
    pub right: usize,
}

impl Edge {
    pub const fn new(left: usize, right: usize) -> Self {
        Edge { left, right }
    }

    pub fn shares_vertex(&self, other: &Edge) -> bool {
        self.left == other.left || self.right == other.right
    }
}

impl From<[usize; 2]> for Edge {
    fn from([left, right]: [usize; 2]) -> Self {
        Edge { left, right }
    }
}

impl From<Edge> for [usize; 2] {
    fn from(e: Edge) -> Self {
        [e.left, e.right]
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.left, self.right)
    }
}

/// `K_{s,t}` in its convex embedding.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct EmbeddedBipartite {
    s: usize,
    t: usize,
}

impl EmbeddedBipartite {
    pub fn new(s: usize, t: usize) -> Result<Self> {
        if s == 0 || t == 0 {
            return Err(Error::EmptyPart { s, t });
        }
        Ok(EmbeddedBipartite { s, t })
    }

    /// The graph `K_{r,n-r}` attached to rank `r` on `n` elements.
    pub fn for_matroid(r: usize, n: usize) -> Result<Self> {
        if r == 0 || r >= n {
            return Err(Error::BadRank { r, n });
        }
        Self::new(r, n - r)
    }

    pub fn s(&self) -> usize {
        self.s
    }

    pub fn t(&self) -> usize {
        self.t
    }

    /// Total vertex count `s + t`.
    pub fn n(&self) -> usize {
        self.s + self.t
    }

    pub fn edge_count(&self) -> usize {
        self.s * self.t
    }

    pub fn contains(&self, e: &Edge) -> bool {
        (1..=self.s).contains(&e.left) && (self.s + 1..=self.n()).contains(&e.right)
    }

    pub fn check_edge(&self, e: &Edge) -> Result<()> {
        if self.contains(e) {
            Ok(())
        } else {
            Err(Error::EdgeOutOfRange {
                left: e.left,
                right: e.right,
                s: self.s,
                t: self.t,
            })
        }
    }

    /// Builds an edge after range-checking it against this graph.
    pub fn edge(&self, left: usize, right: usize) -> Result<Edge> {
        let e = Edge::new(left, right);
        self.check_edge(&e)?;
        Ok(e)
    }

    /// All `s*t` edges in `(left, right)` lexicographic order.
    pub fn all_edges(&self) -> Vec<Edge> {
        let n = self.n();
        (1..=self.s)
            .flat_map(|i| (self.s + 1..=n).map(move |j| Edge::new(i, j)))
            .collect()
    }

    /// Position of `e` in [`all_edges`](Self::all_edges).
    pub fn edge_index(&self, e: &Edge) -> usize {
        (e.left - 1) * self.t + (e.right - self.s - 1)
    }

    /// Number of edges `f != e` that do not meet `e`.
    pub fn weight(&self, e: &Edge) -> usize {
        self.all_edges().iter().filter(|f| !meets(e, f)).count()
    }

    /// Drawing coordinates of a vertex: left column at `x = 0` with heights
    /// `1..=s` bottom-up, right column at `x = 1` with labels `s+1..=s+t`
    /// running top-down from height `t`.
    pub fn position(&self, v: usize) -> (usize, usize) {
        if v <= self.s {
            (0, v)
        } else {
            (1, self.n() + 1 - v)
        }
    }

    /// Graphviz rendering with pinned coordinates. Edges in `highlight`
    /// are drawn solid and the rest dashed grey; with no highlight every
    /// edge is drawn plainly.
    pub fn to_dot(&self, name: &str, highlight: Option<&[Edge]>) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "graph {name} {{");
        let _ = writeln!(out, "  node [shape=circle, fixedsize=true, width=0.3];");
        for v in 1..=self.n() {
            let (x, y) = self.position(v);
            let _ = writeln!(out, "  {v} [pos=\"{x},{y}!\"];");
        }
        for e in self.all_edges() {
            match highlight {
                None => {
                    let _ = writeln!(out, "  {} -- {};", e.left, e.right);
                }
                Some(h) if h.contains(&e) => {
                    let _ = writeln!(out, "  {} -- {} [penwidth=2];", e.left, e.right);
                }
                Some(_) => {
                    let _ = writeln!(out, "  {} -- {} [style=dashed, color=grey];", e.left, e.right);
                }
            }
        }
        out.push_str("}\n");
        out
    }
}

/// Whether two vertex-disjoint edges cross in the embedding.
pub fn crosses(a: &Edge, b: &Edge) -> Result<bool> {
    if a.shares_vertex(b) {
        return Err(Error::SharedVertex(a.left, a.right, b.left, b.right));
    }
    Ok(crossing_sign(a, b))
}

fn crossing_sign(a: &Edge, b: &Edge) -> bool {
    let dl = a.left as i64 - b.left as i64;
    let dr = a.right as i64 - b.right as i64;
    dl * dr > 0
}

/// Closed segments intersect: shared endpoint or a proper crossing.
/// An edge meets itself.
pub fn meets(a: &Edge, b: &Edge) -> bool {
    a.shares_vertex(b) || crossing_sign(a, b)
}

/// Free-function form of [`EmbeddedBipartite::all_edges`].
pub fn all_edges(g: &EmbeddedBipartite) -> Vec<Edge> {
    g.all_edges()
}

/// Free-function form of [`EmbeddedBipartite::weight`].
pub fn weight(e: &Edge, g: &EmbeddedBipartite) -> usize {
    g.weight(e)
}
