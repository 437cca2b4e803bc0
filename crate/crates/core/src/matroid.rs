//! Matroids given by explicit basis lists, their base-polytope adjacency,
//! and the bipartite subgraph describing the tangent cone at a basis.

use std::collections::BTreeSet;

use itertools::Itertools;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::embedding::{Edge, EmbeddedBipartite};
use crate::error::{Error, Result};
use crate::lattice::LatticePoint;
use crate::thrackle::maximal_thrackles;

/// Largest ground set for which [`relabeling_spread`] tries every labeling.
pub const RELABELING_MAX_N: usize = 8;

/// A rank-`r` set system on `{1..n}`, stored as sorted basis vectors.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatroidBases {
    n: usize,
    r: usize,
    bases: BTreeSet<Vec<usize>>,
}

/// Wire form: `{"n": .., "r": .., "bases": [[..], ..]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatroidJson {
    pub n: usize,
    pub r: usize,
    pub bases: Vec<Vec<usize>>,
}

impl MatroidBases {
    /// Checks shape only: nonempty, every member an `r`-subset of `{1..n}`.
    pub fn from_raw(n: usize, r: usize, bases: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        if r == 0 || r > n {
            return Err(Error::BadMatroid(format!("rank {r} on {n} elements")));
        }
        let mut set = BTreeSet::new();
        for b in bases {
            let sorted: Vec<usize> = b.iter().copied().sorted().dedup().collect();
            if sorted.len() != r || b.len() != r {
                return Err(Error::BadMatroid(format!("{b:?} is not an {r}-subset")));
            }
            if sorted.iter().any(|&x| x == 0 || x > n) {
                return Err(Error::BadMatroid(format!("{b:?} leaves {{1..{n}}}")));
            }
            set.insert(sorted);
        }
        if set.is_empty() {
            return Err(Error::BadMatroid("no bases".into()));
        }
        Ok(MatroidBases { n, r, bases: set })
    }

    /// Shape checks plus the basis-exchange axiom.
    pub fn new(n: usize, r: usize, bases: impl IntoIterator<Item = Vec<usize>>) -> Result<Self> {
        let m = Self::from_raw(n, r, bases)?;
        if !validate_bases(&m) {
            return Err(Error::BadMatroid("basis exchange fails".into()));
        }
        Ok(m)
    }

    pub fn from_json(j: MatroidJson) -> Result<Self> {
        Self::new(j.n, j.r, j.bases)
    }

    pub fn to_json(&self) -> MatroidJson {
        MatroidJson {
            n: self.n,
            r: self.r,
            bases: self.bases.iter().cloned().collect(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn r(&self) -> usize {
        self.r
    }

    pub fn bases(&self) -> impl Iterator<Item = &Vec<usize>> {
        self.bases.iter()
    }

    pub fn len(&self) -> usize {
        self.bases.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bases.is_empty()
    }

    pub fn is_basis(&self, b: &[usize]) -> bool {
        let sorted: Vec<usize> = b.iter().copied().sorted().collect();
        self.bases.contains(&sorted)
    }

    fn require_basis(&self, b: &[usize]) -> Result<Vec<usize>> {
        let sorted: Vec<usize> = b.iter().copied().sorted().collect();
        if self.bases.contains(&sorted) {
            Ok(sorted)
        } else {
            Err(Error::NotABasis(b.to_vec()))
        }
    }
}

fn exchange(b: &[usize], out: usize, inn: usize) -> Vec<usize> {
    b.iter()
        .copied()
        .filter(|&x| x != out)
        .chain(std::iter::once(inn))
        .sorted()
        .collect()
}

/// All `r`-subsets of `{1..n}`.
pub fn uniform_bases(r: usize, n: usize) -> Result<MatroidBases> {
    MatroidBases::from_raw(n, r, (1..=n).combinations(r))
}

/// For all bases `B1`, `B2` and `i` in `B1 \ B2` some `j` in `B2 \ B1`
/// makes `B1 - i + j` a basis.
pub fn validate_bases(m: &MatroidBases) -> bool {
    m.bases.iter().all(|b1| {
        m.bases.iter().all(|b2| {
            b1.iter().filter(|i| !b2.contains(i)).all(|&i| {
                b2.iter()
                    .filter(|j| !b1.contains(j))
                    .any(|&j| m.bases.contains(&exchange(b1, i, j)))
            })
        })
    })
}

/// Bases one exchange away from `b`, i.e. the neighbours of `e_B` on the
/// base polytope.
pub fn adjacent_bases(b: &[usize], m: &MatroidBases) -> Result<Vec<Vec<usize>>> {
    let b = m.require_basis(b)?;
    let outside: Vec<usize> = (1..=m.n).filter(|x| !b.contains(x)).collect();
    let mut out: Vec<Vec<usize>> = b
        .iter()
        .flat_map(|&i| outside.iter().map(move |&j| (i, j)))
        .map(|(i, j)| exchange(&b, i, j))
        .filter(|c| m.bases.contains(c))
        .collect();
    out.sort();
    out.dedup();
    Ok(out)
}

/// `e_B = sum of e_i over i in B`.
pub fn incidence_vector(b: &[usize], n: usize) -> LatticePoint {
    let mut v = vec![0; n];
    for &i in b {
        v[i - 1] = 1;
    }
    LatticePoint(v)
}

/// Exchange graph at a basis, relabeled onto `K_{r,n-r}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentSubgraph {
    pub base: Vec<usize>,
    /// `left_labels[k-1]` is the element relabeled to left vertex `k`.
    pub left_labels: Vec<usize>,
    /// `right_labels[m]` is the element relabeled to right vertex `r+1+m`.
    pub right_labels: Vec<usize>,
    pub edges: Vec<Edge>,
}

impl TangentSubgraph {
    pub fn graph(&self) -> Option<EmbeddedBipartite> {
        EmbeddedBipartite::new(self.left_labels.len(), self.right_labels.len()).ok()
    }

    pub fn is_complete(&self) -> bool {
        self.edges.len() == self.left_labels.len() * self.right_labels.len()
    }
}

/// Tangent subgraph under the order-preserving relabeling.
pub fn tangent_subgraph(b: &[usize], m: &MatroidBases) -> Result<TangentSubgraph> {
    let b = m.require_basis(b)?;
    let outside: Vec<usize> = (1..=m.n).filter(|x| !b.contains(x)).collect();
    tangent_subgraph_labeled(m, b, outside)
}

fn tangent_subgraph_labeled(
    m: &MatroidBases,
    left_labels: Vec<usize>,
    right_labels: Vec<usize>,
) -> Result<TangentSubgraph> {
    let r = left_labels.len();
    let mut edges = Vec::new();
    for (p, &i) in left_labels.iter().enumerate() {
        for (q, &j) in right_labels.iter().enumerate() {
            if m.bases.contains(&exchange(&left_labels, i, j)) {
                edges.push(Edge::new(p + 1, r + 1 + q));
            }
        }
    }
    edges.sort();
    Ok(TangentSubgraph {
        base: left_labels.iter().copied().sorted().collect(),
        left_labels,
        right_labels,
        edges,
    })
}

/// Maximal-thrackle census of one tangent subgraph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TangentConeReport {
    pub subgraph: TangentSubgraph,
    pub count: usize,
    /// Sizes of the maximal thrackles, ascending, with repetition.
    pub sizes: Vec<usize>,
}

impl TangentConeReport {
    /// Whether all maximal thrackles have the same number of edges. When
    /// they do not, the count is not the cell count of a triangulation.
    pub fn equal_cardinality(&self) -> bool {
        self.sizes.iter().all_equal()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "basis": self.subgraph.base,
            "relabeling": {
                "left": self.subgraph.left_labels,
                "right": self.subgraph.right_labels,
            },
            "edges": self.subgraph.edges,
            "complete": self.subgraph.is_complete(),
            "count": self.count,
            "equal_cardinality": self.equal_cardinality(),
        })
    }
}

fn census(sub: TangentSubgraph) -> Result<TangentConeReport> {
    let (count, sizes) = match sub.graph() {
        Some(g) => {
            let maxes = maximal_thrackles(&g, &sub.edges)?;
            let sizes = maxes.iter().map(Vec::len).sorted().collect::<Vec<_>>();
            (maxes.len(), sizes)
        }
        // r = n: the polytope is a point and the cone is trivial
        None => (1, vec![0]),
    };
    Ok(TangentConeReport {
        subgraph: sub,
        count,
        sizes,
    })
}

/// Number of maximal thrackles of the tangent subgraph at `b`.
pub fn tangent_cone_simplex_count(b: &[usize], m: &MatroidBases) -> Result<TangentConeReport> {
    census(tangent_subgraph(b, m)?)
}

/// Smallest and largest maximal-thrackle count over every relabeling of
/// the two sides at `b`.
pub fn relabeling_spread(b: &[usize], m: &MatroidBases) -> Result<(usize, usize)> {
    if m.n > RELABELING_MAX_N {
        return Err(Error::SizeGuard(format!(
            "relabeling sweep needs n <= {RELABELING_MAX_N}, got {}",
            m.n
        )));
    }
    let b = m.require_basis(b)?;
    let outside: Vec<usize> = (1..=m.n).filter(|x| !b.contains(x)).collect();
    let mut lo = usize::MAX;
    let mut hi = 0;
    for left in b.iter().copied().permutations(b.len()) {
        for right in outside.iter().copied().permutations(outside.len()) {
            let count = census(tangent_subgraph_labeled(m, left.clone(), right)?)?.count;
            lo = lo.min(count);
            hi = hi.max(count);
        }
    }
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn four_cycle() -> MatroidBases {
        MatroidBases::new(4, 3, vec![vec![1, 2, 3], vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]]).unwrap()
    }

    #[test]
    fn uniform() {
        assert_eq!(uniform_bases(2, 4).unwrap().len(), 6);
        let m = uniform_bases(1, 3).unwrap();
        assert_eq!(m.bases().cloned().collect::<Vec<_>>(), vec![vec![1], vec![2], vec![3]]);
        assert!(validate_bases(&uniform_bases(3, 6).unwrap()));
        assert!(uniform_bases(0, 3).is_err());
    }

    #[test]
    fn exchange_axiom() {
        let bad = MatroidBases::from_raw(4, 2, vec![vec![1, 2], vec![3, 4]]).unwrap();
        assert!(!validate_bases(&bad));
        assert!(MatroidBases::new(4, 2, vec![vec![1, 2], vec![3, 4]]).is_err());
        assert!(validate_bases(&four_cycle()));
        assert!(MatroidBases::from_raw(4, 2, vec![vec![1, 5]]).is_err());
        assert!(MatroidBases::from_raw(4, 2, vec![vec![1, 1]]).is_err());
        assert!(MatroidBases::from_raw(4, 2, Vec::<Vec<usize>>::new()).is_err());
    }

    #[test]
    fn adjacency() {
        let m = uniform_bases(2, 4).unwrap();
        assert_eq!(
            adjacent_bases(&[1, 2], &m).unwrap(),
            vec![vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]]
        );
        assert!(adjacent_bases(&[1, 2, 3], &uniform_bases(3, 3).unwrap()).unwrap().is_empty());
        assert_eq!(
            adjacent_bases(&[1, 2, 3], &four_cycle()).unwrap(),
            vec![vec![1, 2, 4], vec![1, 3, 4], vec![2, 3, 4]]
        );
        assert!(adjacent_bases(&[1, 5], &m).is_err());
    }

    #[test]
    fn tangent_subgraphs() {
        let m = uniform_bases(2, 5).unwrap();
        for b in m.bases() {
            assert!(tangent_subgraph(b, &m).unwrap().is_complete());
        }
        let sub = tangent_subgraph(&[1, 2, 3], &four_cycle()).unwrap();
        assert!(sub.is_complete());
        assert_eq!(sub.edges.len(), 3);

        let no34 = MatroidBases::new(
            4,
            2,
            vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4]],
        )
        .unwrap();
        let sub = tangent_subgraph(&[1, 3], &no34).unwrap();
        assert_eq!(sub.left_labels, vec![1, 3]);
        assert_eq!(sub.right_labels, vec![2, 4]);
        assert_eq!(sub.edges, vec![Edge::new(1, 3), Edge::new(2, 3), Edge::new(2, 4)]);
    }

    #[test]
    fn simplex_counts() {
        let m = uniform_bases(2, 5).unwrap();
        for b in m.bases() {
            let rep = tangent_cone_simplex_count(b, &m).unwrap();
            assert_eq!(rep.count, 3);
            assert!(rep.equal_cardinality());
        }
        let m = uniform_bases(3, 6).unwrap();
        assert_eq!(tangent_cone_simplex_count(&[2, 4, 6], &m).unwrap().count, 6);
        assert_eq!(tangent_cone_simplex_count(&[1, 2, 3], &four_cycle()).unwrap().count, 1);
        assert_eq!(relabeling_spread(&[1, 3], &uniform_bases(2, 5).unwrap()).unwrap(), (3, 3));
    }

    #[test]
    fn incidence_vectors() {
        let m = uniform_bases(3, 6).unwrap();
        let vs: BTreeSet<LatticePoint> = m.bases().map(|b| incidence_vector(b, 6)).collect();
        assert_eq!(vs.len(), m.len());
        assert!(vs.iter().all(|v| v.coords().iter().sum::<i64>() == 3));
    }
}
