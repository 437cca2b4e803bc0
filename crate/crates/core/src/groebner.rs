//! Binomials over edge variables, the quadratic basis attached to
//! non-crossing edge pairs, and a Buchberger certificate for it.
//!
//! Variable `x_{ij}` belongs to edge `(i,j)`; its image under the toric map
//! is `t_i t_j`. Variables are ordered by `x_{ij} > x_{kl}` iff `i < k` or
//! (`i = k` and `j > l`), and monomials by the induced pure lex order.
//! For each vertex-disjoint non-crossing pair the basis holds
//! `x_{il} x_{kj} - x_{ij} x_{kl}` (`i < k`, `j < l`) with the non-crossing
//! product as initial term, so reducing a monomial trades non-crossing
//! pairs for crossing ones.

use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use itertools::Itertools;
use serde_json::{json, Value};

use crate::embedding::{meets, Edge, EmbeddedBipartite};
use crate::error::{Error, Result};

/// Largest `r*(n-r)` accepted by [`buchberger_check`].
pub const BUCHBERGER_MAX_EDGES: usize = 20;

/// A variable, ordered so that larger variables sort first.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
struct Var(Edge);

impl Ord for Var {
    fn cmp(&self, other: &Self) -> Ordering {
        var_compare(&other.0, &self.0)
    }
}

impl PartialOrd for Var {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `Greater` iff `a` is the larger variable.
pub fn var_compare(a: &Edge, b: &Edge) -> Ordering {
    b.left.cmp(&a.left).then(a.right.cmp(&b.right))
}

/// A monomial in the edge variables.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct Monomial {
    // iterated from the largest variable down
    exps: BTreeMap<Var, u32>,
}

impl Monomial {
    pub fn one() -> Self {
        Monomial::default()
    }

    /// Product of the given variables, with repetition.
    pub fn from_edges<'a>(edges: impl IntoIterator<Item = &'a Edge>) -> Self {
        let mut m = Monomial::one();
        for e in edges {
            *m.exps.entry(Var(*e)).or_insert(0) += 1;
        }
        m
    }

    pub fn from_exponents(exps: impl IntoIterator<Item = (Edge, u32)>) -> Self {
        Monomial {
            exps: exps
                .into_iter()
                .filter(|&(_, k)| k > 0)
                .map(|(e, k)| (Var(e), k))
                .collect(),
        }
    }

    pub fn is_one(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponent(&self, e: &Edge) -> u32 {
        self.exps.get(&Var(*e)).copied().unwrap_or(0)
    }

    pub fn degree(&self) -> u32 {
        self.exps.values().sum()
    }

    /// Support in `(left, right)` order.
    pub fn support(&self) -> Vec<Edge> {
        self.exps.keys().map(|v| v.0).sorted().collect()
    }

    /// `(edge, exponent)` pairs from the largest variable down.
    pub fn terms(&self) -> impl Iterator<Item = (Edge, u32)> + '_ {
        self.exps.iter().map(|(v, &k)| (v.0, k))
    }

    pub fn is_squarefree(&self) -> bool {
        self.exps.values().all(|&k| k == 1)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.exps
            .iter()
            .all(|(v, &k)| other.exps.get(v).is_some_and(|&o| o >= k))
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (v, &k) in &other.exps {
            *out.exps.entry(*v).or_insert(0) += k;
        }
        out
    }

    /// `self / other`, or `None` if `other` does not divide `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut out = self.clone();
        for (v, &k) in &other.exps {
            let slot = out.exps.get_mut(v)?;
            match (*slot).cmp(&k) {
                Ordering::Less => return None,
                Ordering::Equal => {
                    out.exps.remove(v);
                }
                Ordering::Greater => *slot -= k,
            }
        }
        Some(out)
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        let mut out = self.clone();
        for (v, &k) in &other.exps {
            let slot = out.exps.entry(*v).or_insert(0);
            *slot = (*slot).max(k);
        }
        out
    }

    pub fn is_coprime(&self, other: &Monomial) -> bool {
        self.exps.keys().all(|v| !other.exps.contains_key(v))
    }

    /// Image under `x_{ij} -> t_i t_j`, as vertex exponents.
    pub fn image(&self) -> BTreeMap<usize, u32> {
        let mut out = BTreeMap::new();
        for (v, &k) in &self.exps {
            *out.entry(v.0.left).or_insert(0) += k;
            *out.entry(v.0.right).or_insert(0) += k;
        }
        out
    }

    /// Sum of variable weights in `g`, with multiplicity.
    pub fn weight(&self, g: &EmbeddedBipartite) -> usize {
        self.exps
            .iter()
            .map(|(v, &k)| g.weight(&v.0) * k as usize)
            .sum()
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts = self.terms().map(|(e, k)| {
            if k == 1 {
                format!("x[{},{}]", e.left, e.right)
            } else {
                format!("x[{},{}]^{k}", e.left, e.right)
            }
        });
        f.write_str(&parts.collect::<Vec<_>>().join("*"))
    }
}

/// Term orders on monomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TermOrder {
    /// Pure lex on the variable order of [`var_compare`].
    Lex,
    /// Total weight in the given graph first, lex to break ties.
    WeightLex(EmbeddedBipartite),
}

pub fn mono_compare(a: &Monomial, b: &Monomial, order: &TermOrder) -> Ordering {
    let lex = || {
        // walk the union of supports from the largest variable down
        let mut xs = a.exps.iter().peekable();
        let mut ys = b.exps.iter().peekable();
        loop {
            match (xs.peek(), ys.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((vx, kx)), Some((vy, ky))) => match vx.cmp(vy) {
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => {
                        if kx != ky {
                            return kx.cmp(ky);
                        }
                        xs.next();
                        ys.next();
                    }
                },
            }
        }
    };
    match order {
        TermOrder::Lex => lex(),
        TermOrder::WeightLex(g) => a.weight(g).cmp(&b.weight(g)).then_with(lex),
    }
}

/// `plus - minus`; `plus` is the marked initial term.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Binomial {
    pub plus: Monomial,
    pub minus: Monomial,
}

impl Binomial {
    pub fn new(plus: Monomial, minus: Monomial) -> Result<Self> {
        if plus == minus {
            return Err(Error::DegenerateBinomial);
        }
        Ok(Binomial { plus, minus })
    }

    /// Whether the marked initial term is the larger one under `order`.
    pub fn marked_consistently(&self, order: &TermOrder) -> bool {
        mono_compare(&self.plus, &self.minus, order) == Ordering::Greater
    }

    pub fn to_json(&self) -> Value {
        json!({
            "text": self.to_string(),
            "terms": [
                {"monomial": self.plus.support(), "initial": true},
                {"monomial": self.minus.support(), "initial": false},
            ],
        })
    }
}

impl fmt::Display for Binomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} - {}", self.plus, self.minus)
    }
}

/// One binomial per vertex-disjoint non-crossing edge pair of `K_{r,n-r}`,
/// with the non-crossing product marked initial. Empty when either side
/// has fewer than two vertices.
pub fn generate_cg(r: usize, n: usize) -> Result<Vec<Binomial>> {
    let g = EmbeddedBipartite::for_matroid(r, n)?;
    let mut out = Vec::new();
    for (i, k) in (1..=r).tuple_combinations() {
        for (j, l) in (r + 1..=n).tuple_combinations() {
            let plus = Monomial::from_edges(&[g.edge(i, l)?, g.edge(k, j)?]);
            let minus = Monomial::from_edges(&[g.edge(i, j)?, g.edge(k, l)?]);
            out.push(Binomial::new(plus, minus)?);
        }
    }
    Ok(out)
}

/// Normal form of `m`: while some initial term divides it, swap that factor
/// for the trailing term. Terminates when every basis element is marked
/// consistently with a term order.
pub fn reduce(m: &Monomial, basis: &[Binomial]) -> Monomial {
    let mut current = m.clone();
    'outer: loop {
        for b in basis {
            if let Some(rest) = current.div(&b.plus) {
                current = rest.mul(&b.minus);
                continue 'outer;
            }
        }
        return current;
    }
}

/// Whether the S-pair of `b1` and `b2` reduces to zero modulo `basis`.
/// Pairs with coprime initial terms pass without work.
pub fn s_poly_reduces_to_zero(b1: &Binomial, b2: &Binomial, basis: &[Binomial]) -> bool {
    if b1.plus.is_coprime(&b2.plus) {
        return true;
    }
    let l = b1.plus.lcm(&b2.plus);
    let left = l.div(&b1.plus).expect("lcm").mul(&b1.minus);
    let right = l.div(&b2.plus).expect("lcm").mul(&b2.minus);
    reduce(&left, basis) == reduce(&right, basis)
}

/// Outcome of [`check_basis`].
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct BuchbergerReport {
    pub basis_size: usize,
    pub pairs_checked: usize,
    pub pairs_skipped_coprime: usize,
    /// Index pairs whose S-polynomial did not reduce to zero.
    pub failed_pairs: Vec<(usize, usize)>,
    /// Indices whose marked term is not the larger one.
    pub inconsistent_markings: Vec<usize>,
    /// `(a, b)`: a term of element `a` is divisible by the initial term of `b`.
    pub reducedness_violations: Vec<(usize, usize)>,
}

impl BuchbergerReport {
    pub fn passed(&self) -> bool {
        self.failed_pairs.is_empty()
            && self.inconsistent_markings.is_empty()
            && self.reducedness_violations.is_empty()
    }
}

/// Buchberger's criterion plus reducedness for a marked binomial list.
/// S-pairs are only attempted when every marking agrees with `order`.
pub fn check_basis(basis: &[Binomial], order: &TermOrder) -> BuchbergerReport {
    let mut report = BuchbergerReport {
        basis_size: basis.len(),
        ..Default::default()
    };
    report.inconsistent_markings = basis
        .iter()
        .positions(|b| !b.marked_consistently(order))
        .collect();
    if !report.inconsistent_markings.is_empty() {
        return report;
    }
    for (a, b) in (0..basis.len()).tuple_combinations() {
        if basis[a].plus.is_coprime(&basis[b].plus) {
            report.pairs_skipped_coprime += 1;
            continue;
        }
        report.pairs_checked += 1;
        if !s_poly_reduces_to_zero(&basis[a], &basis[b], basis) {
            report.failed_pairs.push((a, b));
        }
    }
    for (a, elem) in basis.iter().enumerate() {
        for (b, other) in basis.iter().enumerate() {
            let hits_plus = a != b && other.plus.divides(&elem.plus);
            if hits_plus || other.plus.divides(&elem.minus) {
                report.reducedness_violations.push((a, b));
            }
        }
    }
    report
}

/// Certifies that the non-crossing binomials of `K_{r,n-r}` form a reduced
/// Gröbner basis under lex.
pub fn buchberger_check(r: usize, n: usize) -> Result<BuchbergerReport> {
    let g = EmbeddedBipartite::for_matroid(r, n)?;
    if g.edge_count() > BUCHBERGER_MAX_EDGES {
        return Err(Error::SizeGuard(format!(
            "Buchberger check needs r*(n-r) <= {BUCHBERGER_MAX_EDGES}, got {}",
            g.edge_count()
        )));
    }
    Ok(check_basis(&generate_cg(r, n)?, &TermOrder::Lex))
}

/// Copy of `basis` with the trailing terms of elements `a` and `b`
/// exchanged. Used as a negative control.
pub fn with_swapped_trailing(basis: &[Binomial], a: usize, b: usize) -> Vec<Binomial> {
    let mut out = basis.to_vec();
    let tmp = out[a].minus.clone();
    out[a].minus = out[b].minus.clone();
    out[b].minus = tmp;
    out
}

/// No initial term of the basis divides `m`.
pub fn is_standard(m: &Monomial, r: usize, n: usize) -> Result<bool> {
    Ok(generate_cg(r, n)?.iter().all(|b| !b.plus.divides(m)))
}

/// Same as [`is_standard`] against a precomputed basis.
pub fn is_standard_in(m: &Monomial, basis: &[Binomial]) -> bool {
    basis.iter().all(|b| !b.plus.divides(m))
}

/// Whether every pair of support edges meets.
pub fn support_is_thrackle(m: &Monomial) -> bool {
    let s = m.support();
    s.iter().tuple_combinations().all(|(a, b)| meets(a, b))
}

/// Binomial of a closed even walk `v_1, v_2, ..., v_{2k}, v_1`: odd steps
/// go to the initial monomial, even steps to the other.
pub fn walk_binomial(walk: &[usize], r: usize, n: usize) -> Result<Binomial> {
    let g = EmbeddedBipartite::for_matroid(r, n)?;
    if walk.len() < 3 || walk.first() != walk.last() {
        return Err(Error::BadWalk(format!("{walk:?} is not closed")));
    }
    if walk.len().is_multiple_of(2) {
        return Err(Error::BadWalk(format!("{walk:?} has odd length")));
    }
    let mut odd = Vec::new();
    let mut even = Vec::new();
    for (step, pair) in walk.windows(2).enumerate() {
        let (a, b) = (pair[0].min(pair[1]), pair[0].max(pair[1]));
        if a == 0 || a > r || b <= r || b > n {
            return Err(Error::BadWalk(format!(
                "step {}-{} does not alternate between the two sides",
                pair[0], pair[1]
            )));
        }
        let e = g.edge(a, b)?;
        if step % 2 == 0 {
            odd.push(e);
        } else {
            even.push(e);
        }
    }
    Binomial::new(Monomial::from_edges(&odd), Monomial::from_edges(&even))
}

/// Both terms have the same image under `x_{ij} -> t_i t_j`.
pub fn in_kernel(b: &Binomial) -> bool {
    b.plus.image() == b.minus.image()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(pairs: &[(usize, usize)]) -> Monomial {
        let edges: Vec<Edge> = pairs.iter().map(|&(i, j)| Edge::new(i, j)).collect();
        Monomial::from_edges(&edges)
    }

    #[test]
    fn variable_order() {
        let e = Edge::new;
        assert_eq!(var_compare(&e(1, 5), &e(1, 3)), Ordering::Greater);
        assert_eq!(var_compare(&e(1, 3), &e(2, 3)), Ordering::Greater);
        let g = EmbeddedBipartite::new(2, 3).unwrap();
        let sorted: Vec<Edge> = g
            .all_edges()
            .into_iter()
            .sorted_by(|a, b| var_compare(b, a))
            .collect();
        assert_eq!(
            sorted,
            vec![e(1, 5), e(1, 4), e(1, 3), e(2, 5), e(2, 4), e(2, 3)]
        );
    }

    #[test]
    fn monomial_order() {
        let lex = TermOrder::Lex;
        assert_eq!(
            mono_compare(&x(&[(1, 5), (2, 3)]), &x(&[(1, 3), (2, 5)]), &lex),
            Ordering::Greater
        );
        assert_eq!(mono_compare(&x(&[(2, 3)]), &Monomial::one(), &lex), Ordering::Greater);
        assert_eq!(
            mono_compare(&x(&[(1, 3), (1, 3)]), &x(&[(1, 3), (1, 4)]), &lex),
            Ordering::Less
        );
        let g = EmbeddedBipartite::new(2, 3).unwrap();
        assert_eq!(x(&[(1, 5), (2, 3)]).weight(&g), 4);
        assert_eq!(x(&[(1, 3), (2, 5)]).weight(&g), 0);
        assert_eq!(
            mono_compare(&x(&[(1, 5), (2, 3)]), &x(&[(1, 3), (2, 5)]), &TermOrder::WeightLex(g)),
            Ordering::Greater
        );
    }

    #[test]
    fn cg_small_cases() {
        let cg = generate_cg(2, 5).unwrap();
        let text: Vec<String> = cg.iter().map(|b| b.to_string()).collect();
        assert_eq!(
            text,
            vec![
                "x[1,4]*x[2,3] - x[1,3]*x[2,4]",
                "x[1,5]*x[2,3] - x[1,3]*x[2,5]",
                "x[1,5]*x[2,4] - x[1,4]*x[2,5]",
            ]
        );
        assert_eq!(generate_cg(2, 4).unwrap().len(), 1);
        assert_eq!(generate_cg(3, 6).unwrap().len(), 9);
        assert!(generate_cg(1, 4).unwrap().is_empty());
        assert!(generate_cg(2, 3).unwrap().is_empty());
    }

    #[test]
    fn markings_agree_with_weights() {
        for n in 4..=9 {
            for r in 2..n - 1 {
                let g = EmbeddedBipartite::for_matroid(r, n).unwrap();
                for b in generate_cg(r, n).unwrap() {
                    assert!(b.marked_consistently(&TermOrder::Lex));
                    let (wp, wm) = (b.plus.weight(&g), b.minus.weight(&g));
                    if wp != wm {
                        assert!(wp > wm, "{b}");
                    }
                    assert!(in_kernel(&b));
                }
            }
        }
    }

    #[test]
    fn reductions() {
        let cg = generate_cg(2, 5).unwrap();
        assert_eq!(reduce(&x(&[(1, 5), (2, 3)]), &cg), x(&[(1, 3), (2, 5)]));
        assert_eq!(reduce(&x(&[(1, 3), (2, 4)]), &cg), x(&[(1, 3), (2, 4)]));
        assert_eq!(reduce(&Monomial::one(), &cg), Monomial::one());
    }

    #[test]
    fn buchberger_small() {
        assert!(buchberger_check(2, 5).unwrap().passed());
        assert!(buchberger_check(3, 6).unwrap().passed());
        let empty = buchberger_check(2, 3).unwrap();
        assert!(empty.passed());
        assert_eq!(empty.basis_size, 0);
        assert!(matches!(buchberger_check(5, 10), Err(Error::SizeGuard(_))));
    }

    #[test]
    fn coprime_pair_passes_trivially() {
        let cg = generate_cg(4, 8).unwrap();
        let (a, b) = cg
            .iter()
            .tuple_combinations()
            .find(|(a, b)| a.plus.is_coprime(&b.plus))
            .unwrap();
        assert!(s_poly_reduces_to_zero(a, b, &[]));
    }

    #[test]
    fn corrupted_basis_fails() {
        let cg = generate_cg(2, 5).unwrap();
        let bad = with_swapped_trailing(&cg, 0, 1);
        let report = check_basis(&bad, &TermOrder::Lex);
        assert!(!report.failed_pairs.is_empty());
        assert!(!report.passed());
    }

    #[test]
    fn standard_monomials() {
        assert!(is_standard(&x(&[(1, 3), (2, 4), (2, 5)]), 2, 5).unwrap());
        assert!(!is_standard(&x(&[(1, 5), (2, 3)]), 2, 5).unwrap());
        assert!(is_standard(&Monomial::one(), 2, 5).unwrap());
    }

    #[test]
    fn walks() {
        let b = walk_binomial(&[1, 3, 2, 5, 1], 2, 5).unwrap();
        assert_eq!(b.plus, x(&[(1, 3), (2, 5)]));
        assert_eq!(b.minus, x(&[(2, 3), (1, 5)]));
        assert!(in_kernel(&b));
        let off = Binomial::new(x(&[(1, 3), (2, 4)]), x(&[(1, 4), (2, 5)])).unwrap();
        assert!(!in_kernel(&off));
        assert!(walk_binomial(&[1, 3, 2, 1], 2, 5).is_err());
        assert!(walk_binomial(&[1, 3, 2, 5], 2, 5).is_err());
        assert!(walk_binomial(&[1, 2, 3, 4, 1], 2, 5).is_err());
        assert!(matches!(
            walk_binomial(&[1, 3, 1], 2, 5),
            Err(Error::DegenerateBinomial)
        ));
    }

    #[test]
    fn cg_json() {
        let cg = generate_cg(2, 4).unwrap();
        assert_eq!(
            cg[0].to_json().to_string(),
            r#"{"terms":[{"initial":true,"monomial":[[1,4],[2,3]]},{"initial":false,"monomial":[[1,3],[2,4]]}],"text":"x[1,4]*x[2,3] - x[1,3]*x[2,4]"}"#
        );
    }
}
