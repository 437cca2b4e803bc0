//! The thrackle triangulation of `conv(B_{r,n})` and its certificates.
//!
//! Each spanning thrackle of `K_{r,n-r}` contributes the simplex spanned by
//! the points `e_i + e_j` of its edges. Unimodularity is checked by exact
//! determinants. Coverage without overlap follows from volume additivity
//! against the independently counted Ehrhart polynomial, and is spot-checked
//! by locating random interior points.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arith::{binomial, solve_rational};
use crate::error::{Error, Result};
use crate::lattice::{
    b_points, ehrhart_fit, involution_map, normalized_simplex_volume, LatticePoint, Simplex,
};
use crate::thrackle::{enumerate_spanning_thrackles, SpanningThrackle};

/// Largest `n` accepted by [`build_triangulation`].
pub const TRIANGULATION_MAX_N: usize = 12;
/// Largest `n` accepted by [`verify_volume`].
pub const VOLUME_ORACLE_MAX_N: usize = 8;

#[derive(Debug, Clone)]
pub struct Triangulation {
    pub r: usize,
    pub n: usize,
    pub simplices: Vec<Simplex>,
    pub thrackles: Vec<SpanningThrackle>,
}

/// A simplicial cone at the vertex `e_B`, `B = {1..r}`, with generators in
/// `E_{r,n}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConeDescription {
    pub apex: LatticePoint,
    pub generators: Vec<LatticePoint>,
}

/// One simplex per spanning thrackle of `K_{r,n-r}`, in enumeration order.
pub fn build_triangulation(r: usize, n: usize) -> Result<Triangulation> {
    if r == 0 || r >= n {
        return Err(Error::BadRank { r, n });
    }
    if n > TRIANGULATION_MAX_N {
        return Err(Error::SizeGuard(format!(
            "triangulation needs n <= {TRIANGULATION_MAX_N}, got {n}"
        )));
    }
    let thrackles: Vec<SpanningThrackle> = enumerate_spanning_thrackles(r, n - r)?.collect();
    let simplices = thrackles
        .iter()
        .map(|h| Simplex {
            vertices: h.edges().iter().map(|e| LatticePoint::of_edge(e, n)).collect(),
        })
        .collect();
    Ok(Triangulation {
        r,
        n,
        simplices,
        thrackles,
    })
}

impl Triangulation {
    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// `C(n-2, r-1)`.
    pub fn expected_count(&self) -> BigUint {
        binomial((self.n - 2) as u64, (self.r - 1) as u64)
    }

    /// Normalized volume of every simplex, in order.
    pub fn volumes(&self) -> Result<Vec<BigUint>> {
        self.simplices
            .par_iter()
            .map(|sx| normalized_simplex_volume(sx, self.r, self.n))
            .collect()
    }

    pub fn to_json(&self) -> Result<Value> {
        let volumes = self.volumes()?;
        let simplices: Vec<Value> = self
            .simplices
            .iter()
            .zip(&self.thrackles)
            .zip(&volumes)
            .map(|((sx, h), vol)| {
                json!({
                    "thrackle": h.edges(),
                    "vertices": sx.vertices.iter().map(|v| v.coords()).collect::<Vec<_>>(),
                    "volume": vol.to_string().parse::<u64>().expect("unit volumes"),
                })
            })
            .collect();
        Ok(json!({
            "r": self.r,
            "n": self.n,
            "count": self.len(),
            "simplices": simplices,
        }))
    }
}

/// Every simplex has normalized volume exactly 1.
pub fn verify_unimodular(t: &Triangulation) -> Result<bool> {
    Ok(t.volumes()?.iter().all(|v| v.is_one()))
}

/// Total simplex volume against the Ehrhart-derived volume of the polytope.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VolumeCheck {
    pub simplex_total: BigUint,
    pub polytope_volume: BigRational,
}

impl VolumeCheck {
    pub fn ok(&self) -> bool {
        BigRational::from_integer(BigInt::from(self.simplex_total.clone())) == self.polytope_volume
    }
}

pub fn verify_volume(t: &Triangulation) -> Result<VolumeCheck> {
    if t.n > VOLUME_ORACLE_MAX_N {
        return Err(Error::SizeGuard(format!(
            "volume oracle needs n <= {VOLUME_ORACLE_MAX_N}, got {}",
            t.n
        )));
    }
    let simplex_total = t.volumes()?.into_iter().sum();
    let polytope_volume = ehrhart_fit(t.r, t.n)?.normalized_volume();
    Ok(VolumeCheck {
        simplex_total,
        polytope_volume,
    })
}

fn rational(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

/// Barycentric coordinates of `q` in simplex `idx`, or `None` if the
/// simplex is degenerate.
pub fn barycentric(q: &[BigRational], t: &Triangulation, idx: usize) -> Result<Option<Vec<BigRational>>> {
    check_in_span(q, t.r, t.n)?;
    let sx = &t.simplices[idx];
    let keep: Vec<usize> = (0..t.n).filter(|&k| k != 0 && k != t.r).collect();
    let base = &sx.vertices[0];
    // columns are v_k - v_0 for k >= 1, rows are the kept coordinates
    let a: Vec<Vec<BigRational>> = keep
        .iter()
        .map(|&c| {
            sx.vertices[1..]
                .iter()
                .map(|v| rational(v.coords()[c] - base.coords()[c]))
                .collect()
        })
        .collect();
    let rhs: Vec<BigRational> = keep
        .iter()
        .map(|&c| &q[c] - rational(base.coords()[c]))
        .collect();
    let Some(lambda) = solve_rational(&a, &rhs) else {
        return Ok(None);
    };
    let first = BigRational::one() - lambda.iter().sum::<BigRational>();
    let mut out = Vec::with_capacity(lambda.len() + 1);
    out.push(first);
    out.extend(lambda);
    Ok(Some(out))
}

fn check_in_span(q: &[BigRational], r: usize, n: usize) -> Result<()> {
    if q.len() != n {
        return Err(Error::Dimension {
            expected: n,
            got: q.len(),
        });
    }
    let left: BigRational = q[..r].iter().sum();
    let right: BigRational = q[r..].iter().sum();
    if !left.is_one() || !right.is_one() {
        return Err(Error::OutsideSpan(format!(
            "side sums are {left} and {right}, expected 1 and 1"
        )));
    }
    Ok(())
}

/// Indices of all simplices containing `q`, with its barycentric
/// coordinates in each.
pub fn locate_point_detailed(
    q: &[BigRational],
    t: &Triangulation,
) -> Result<Vec<(usize, Vec<BigRational>)>> {
    check_in_span(q, t.r, t.n)?;
    let hits: Vec<Option<(usize, Vec<BigRational>)>> = (0..t.len())
        .into_par_iter()
        .map(|idx| {
            Ok(barycentric(q, t, idx)?
                .filter(|lam| lam.iter().all(|c| !c.is_negative()))
                .map(|lam| (idx, lam)))
        })
        .collect::<Result<_>>()?;
    Ok(hits.into_iter().flatten().collect())
}

/// Indices of all simplices containing `q`.
pub fn locate_point(q: &[BigRational], t: &Triangulation) -> Result<Vec<usize>> {
    Ok(locate_point_detailed(q, t)?
        .into_iter()
        .map(|(idx, _)| idx)
        .collect())
}

/// Rational points strictly inside `conv(B_{r,n})`: convex combinations of
/// all of `B_{r,n}` with positive integer weights drawn from a seeded RNG.
pub fn sample_interior_points(r: usize, n: usize, count: usize, seed: u64) -> Result<Vec<Vec<BigRational>>> {
    let points = b_points(r, n)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    Ok((0..count)
        .map(|_| {
            let weights: Vec<i64> = points.iter().map(|_| rng.gen_range(1..=1000)).collect();
            let total: i64 = weights.iter().sum();
            (0..n)
                .map(|c| {
                    let num: i64 = points.iter().zip(&weights).map(|(p, w)| p.coords()[c] * w).sum();
                    BigRational::new(num.into(), total.into())
                })
                .collect()
        })
        .collect())
}

/// Tallies from locating sampled interior points.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct CoveringReport {
    pub samples: usize,
    /// Points found in no simplex.
    pub uncovered: usize,
    /// Points strictly inside some simplex (no zero barycentric coordinate).
    pub generic: usize,
    /// Generic points that were located in more than one simplex.
    pub generic_overlaps: usize,
    /// Points on a shared face, excluded from the overlap count.
    pub on_faces: usize,
}

impl CoveringReport {
    pub fn ok(&self) -> bool {
        self.uncovered == 0 && self.generic_overlaps == 0
    }
}

pub fn covering_check(t: &Triangulation, samples: usize, seed: u64) -> Result<CoveringReport> {
    let mut report = CoveringReport {
        samples,
        ..Default::default()
    };
    for q in sample_interior_points(t.r, t.n, samples, seed)? {
        let hits = locate_point_detailed(&q, t)?;
        if hits.is_empty() {
            report.uncovered += 1;
            continue;
        }
        let strictly_inside = hits
            .iter()
            .any(|(_, lam)| lam.iter().all(|c| c.is_positive()));
        if strictly_inside {
            report.generic += 1;
            if hits.len() != 1 {
                report.generic_overlaps += 1;
            }
        } else {
            report.on_faces += 1;
        }
    }
    Ok(report)
}

/// Maps each simplex back through the sign flip to a cone at `e_B`,
/// `B = {1..r}`, generated by members of `E_{r,n}`.
pub fn tangent_cone_view(t: &Triangulation) -> Vec<ConeDescription> {
    let apex = LatticePoint((0..t.n).map(|k| i64::from(k < t.r)).collect());
    t.simplices
        .iter()
        .map(|sx| ConeDescription {
            apex: apex.clone(),
            generators: sx.vertices.iter().map(|v| involution_map(v, t.r)).collect(),
        })
        .collect()
}

/// One row of the CSV summary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SummaryRow {
    pub r: usize,
    pub n: usize,
    pub count: usize,
    pub expected: BigUint,
    pub unimodular: usize,
    /// `None` when the volume oracle is out of range.
    pub volume_ok: Option<bool>,
}

impl SummaryRow {
    pub const CSV_HEADER: &'static str = "r,n,count,expected,unimodular,volume_ok";

    pub fn compute(t: &Triangulation) -> Result<Self> {
        let unimodular = t.volumes()?.iter().filter(|v| v.is_one()).count();
        let volume_ok = if t.n <= VOLUME_ORACLE_MAX_N {
            Some(verify_volume(t)?.ok())
        } else {
            None
        };
        Ok(SummaryRow {
            r: t.r,
            n: t.n,
            count: t.len(),
            expected: t.expected_count(),
            unimodular,
            volume_ok,
        })
    }

    pub fn to_csv(&self) -> String {
        let vol = match self.volume_ok {
            Some(true) => "true",
            Some(false) => "false",
            None => "skipped",
        };
        format!(
            "{},{},{},{},{},{}",
            self.r, self.n, self.count, self.expected, self.unimodular, vol
        )
    }
}

/// `e_1 + e_{r+1}`, the point of edge `(1, r+1)`.
pub fn corner_vertex(r: usize, n: usize) -> LatticePoint {
    let mut v = vec![0; n];
    v[0] = 1;
    v[r] = 1;
    LatticePoint(v)
}

/// The given lattice point as an exact rational vector.
pub fn to_rational(p: &LatticePoint) -> Vec<BigRational> {
    p.coords().iter().map(|&c| rational(c)).collect()
}
