//! The point configurations `B_{r,n}` and `E_{r,n}`, exact normalized
//! volumes, and a brute-force Ehrhart oracle for `conv(B_{r,n})`.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::arith::{bareiss_determinant, factorial, integer_rank};
use crate::embedding::{Edge, EmbeddedBipartite};
use crate::error::{Error, Result};

/// Largest `n` accepted by [`ehrhart_fit`].
pub const EHRHART_MAX_N: usize = 10;

/// An integer vector in `Z^n`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LatticePoint(pub Vec<i64>);

impl LatticePoint {
    pub fn coords(&self) -> &[i64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    /// `e_i + e_j` for the edge `(i, j)`, in `Z^n`.
    pub fn of_edge(e: &Edge, n: usize) -> Self {
        let mut v = vec![0; n];
        v[e.left - 1] = 1;
        v[e.right - 1] = 1;
        LatticePoint(v)
    }
}

impl fmt::Display for LatticePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// A list of vertices; maximal cells of the triangulation have `n-1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Simplex {
    pub vertices: Vec<LatticePoint>,
}

fn check_rank(r: usize, n: usize) -> Result<()> {
    EmbeddedBipartite::for_matroid(r, n).map(|_| ())
}

/// `B_{r,n} = { e_i + e_j : i <= r < j }`, in edge order.
pub fn b_points(r: usize, n: usize) -> Result<Vec<LatticePoint>> {
    let g = EmbeddedBipartite::for_matroid(r, n)?;
    Ok(g.all_edges().iter().map(|e| LatticePoint::of_edge(e, n)).collect())
}

/// `E_{r,n} = { e_j - e_i : i <= r < j }`, in edge order.
pub fn e_points(r: usize, n: usize) -> Result<Vec<LatticePoint>> {
    Ok(b_points(r, n)?
        .iter()
        .map(|p| involution_map(p, r))
        .collect())
}

/// Negates the first `r` coordinates. Its own inverse.
pub fn involution_map(p: &LatticePoint, r: usize) -> LatticePoint {
    LatticePoint(
        p.0.iter()
            .enumerate()
            .map(|(k, &v)| if k < r { -v } else { v })
            .collect(),
    )
}

/// Dimension of the affine hull, or `None` for an empty list.
pub fn affine_dim(points: &[LatticePoint]) -> Option<usize> {
    let (base, rest) = points.split_first()?;
    let rows: Vec<Vec<BigInt>> = rest
        .iter()
        .map(|p| {
            p.0.iter()
                .zip(&base.0)
                .map(|(a, b)| BigInt::from(a - b))
                .collect()
        })
        .collect();
    Some(integer_rank(&rows))
}

/// Which two coordinates a chart discards: one from each side.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Chart {
    pub drop_left: usize,
    pub drop_right: usize,
}

impl Chart {
    /// Drops coordinates `1` and `r+1`.
    pub fn standard(r: usize) -> Self {
        Chart {
            drop_left: 1,
            drop_right: r + 1,
        }
    }
}

fn side_sums(p: &LatticePoint, r: usize) -> (i64, i64) {
    (p.0[..r].iter().sum(), p.0[r..].iter().sum())
}

/// Integer coordinates on the affine span of `B_{r,n}` obtained by
/// dropping coordinates `1` and `r+1`.
pub fn chart_project(p: &LatticePoint, r: usize, n: usize) -> Result<Vec<i64>> {
    chart_project_with(p, r, n, Chart::standard(r))
}

pub fn chart_project_with(p: &LatticePoint, r: usize, n: usize, chart: Chart) -> Result<Vec<i64>> {
    check_rank(r, n)?;
    if p.dim() != n {
        return Err(Error::Dimension {
            expected: n,
            got: p.dim(),
        });
    }
    if side_sums(p, r) != (1, 1) {
        return Err(Error::OutsideSpan(format!(
            "{p} does not have unit coordinate sum on both sides of r={r}"
        )));
    }
    Ok(p.0
        .iter()
        .enumerate()
        .filter(|&(k, _)| k + 1 != chart.drop_left && k + 1 != chart.drop_right)
        .map(|(_, &v)| v)
        .collect())
}

/// Inverse of [`chart_project`]: restores the two dropped coordinates from
/// the side-sum constraints.
pub fn chart_lift(q: &[i64], r: usize, n: usize) -> Result<LatticePoint> {
    check_rank(r, n)?;
    if q.len() != n - 2 {
        return Err(Error::Dimension {
            expected: n - 2,
            got: q.len(),
        });
    }
    let left_rest: i64 = q[..r - 1].iter().sum();
    let right_rest: i64 = q[r - 1..].iter().sum();
    let mut v = Vec::with_capacity(n);
    v.push(1 - left_rest);
    v.extend_from_slice(&q[..r - 1]);
    v.push(1 - right_rest);
    v.extend_from_slice(&q[r - 1..]);
    Ok(LatticePoint(v))
}

/// Absolute determinant of the chart-projected edge vectors from vertex 0;
/// zero for a degenerate simplex.
pub fn normalized_simplex_volume(sx: &Simplex, r: usize, n: usize) -> Result<BigUint> {
    normalized_simplex_volume_with(sx, r, n, Chart::standard(r))
}

pub fn normalized_simplex_volume_with(
    sx: &Simplex,
    r: usize,
    n: usize,
    chart: Chart,
) -> Result<BigUint> {
    check_rank(r, n)?;
    if sx.vertices.len() != n - 1 {
        return Err(Error::Dimension {
            expected: n - 1,
            got: sx.vertices.len(),
        });
    }
    let projected = sx
        .vertices
        .iter()
        .map(|v| chart_project_with(v, r, n, chart))
        .collect::<Result<Vec<_>>>()?;
    let base = &projected[0];
    let rows: Vec<Vec<BigInt>> = projected[1..]
        .iter()
        .map(|q| q.iter().zip(base).map(|(a, b)| BigInt::from(a - b)).collect())
        .collect();
    Ok(bareiss_determinant(&rows).abs().to_biguint().expect("absolute value"))
}

/// Nonnegative integer vectors of length `n` with both side sums equal to
/// `k`, i.e. the lattice points of `k * conv(B_{r,n})`. Each candidate
/// coordinate is tried in turn; only partial sums exceeding `k` are pruned.
pub fn count_lattice_points(r: usize, n: usize, k: usize) -> Result<BigUint> {
    check_rank(r, n)?;
    // partitioned on the first coordinate
    let total: u64 = (0..=k as i64)
        .into_par_iter()
        .map(|x0| {
            let mut count = 0u64;
            let mut prefix = vec![x0];
            walk(r, n, k as i64, &mut prefix, &mut |_| count += 1);
            count
        })
        .sum();
    Ok(BigUint::from(total))
}

/// The lattice points themselves, for small dilations.
pub fn lattice_points(r: usize, n: usize, k: usize) -> Result<Vec<LatticePoint>> {
    check_rank(r, n)?;
    let mut out = Vec::new();
    for x0 in 0..=k as i64 {
        let mut prefix = vec![x0];
        walk(r, n, k as i64, &mut prefix, &mut |v| out.push(LatticePoint(v.to_vec())));
    }
    out.sort();
    Ok(out)
}

fn walk(r: usize, n: usize, k: i64, prefix: &mut Vec<i64>, visit: &mut dyn FnMut(&[i64])) {
    let left: i64 = prefix.iter().take(r).sum();
    let right: i64 = prefix.iter().skip(r).sum();
    if left > k || right > k {
        return;
    }
    if prefix.len() == n {
        if left == k && right == k {
            visit(prefix);
        }
        return;
    }
    for x in 0..=k {
        prefix.push(x);
        walk(r, n, k, prefix, visit);
        prefix.pop();
    }
}

/// At dilation 1 the constraint description must cut out exactly `B_{r,n}`.
pub fn validate_h_description(r: usize, n: usize) -> Result<bool> {
    let mut expected = b_points(r, n)?;
    expected.sort();
    Ok(lattice_points(r, n, 1)? == expected)
}

/// A polynomial with exact rational coefficients, constant term first.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EhrhartPoly {
    pub coefficients: Vec<BigRational>,
}

impl EhrhartPoly {
    /// Lagrange interpolation through `(x_m, y_m)`.
    pub fn interpolate(samples: &[(i64, BigInt)]) -> Self {
        let mut coeffs = vec![BigRational::zero(); samples.len()];
        for (m, (xm, ym)) in samples.iter().enumerate() {
            // basis polynomial prod_{j != m} (x - x_j) / (x_m - x_j)
            let mut basis = vec![BigRational::one()];
            let mut denom = BigInt::one();
            for (j, (xj, _)) in samples.iter().enumerate() {
                if j == m {
                    continue;
                }
                let mut next = vec![BigRational::zero(); basis.len() + 1];
                for (d, c) in basis.iter().enumerate() {
                    next[d + 1] += c;
                    next[d] -= c * BigRational::from_integer(BigInt::from(*xj));
                }
                basis = next;
                denom *= BigInt::from(xm - xj);
            }
            let scale = BigRational::new(ym.clone(), denom);
            for (d, c) in basis.into_iter().enumerate() {
                coeffs[d] += c * &scale;
            }
        }
        while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        EhrhartPoly {
            coefficients: coeffs,
        }
    }

    pub fn degree(&self) -> usize {
        self.coefficients.len() - 1
    }

    pub fn leading_coefficient(&self) -> &BigRational {
        self.coefficients.last().expect("nonempty")
    }

    pub fn evaluate(&self, k: i64) -> BigRational {
        let x = BigRational::from_integer(BigInt::from(k));
        self.coefficients
            .iter()
            .rev()
            .fold(BigRational::zero(), |acc, c| acc * &x + c)
    }

    /// `leading coefficient * degree!`.
    pub fn normalized_volume(&self) -> BigRational {
        self.leading_coefficient()
            * BigRational::from_integer(BigInt::from(factorial(self.degree() as u64)))
    }

    /// `[[numerator, denominator], ...]`, constant term first.
    pub fn to_json(&self) -> Value {
        Value::Array(
            self.coefficients
                .iter()
                .map(|c| json!([big_json(c.numer()), big_json(c.denom())]))
                .collect(),
        )
    }
}

impl fmt::Display for EhrhartPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (d, c) in self.coefficients.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            terms.push(match d {
                0 => format!("{c}"),
                1 => format!("({c})*k"),
                _ => format!("({c})*k^{d}"),
            });
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}

fn big_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(small) => json!(small),
        None => json!(v.to_string()),
    }
}

/// Counts at `k = 0..=n-2` from the brute-force oracle, interpolated to a
/// degree `n-2` polynomial. Fails if the constraint description does not
/// reproduce `B_{r,n}` at `k = 1`.
pub fn ehrhart_fit(r: usize, n: usize) -> Result<EhrhartPoly> {
    check_rank(r, n)?;
    if n > EHRHART_MAX_N {
        return Err(Error::SizeGuard(format!(
            "Ehrhart oracle needs n <= {EHRHART_MAX_N}, got {n}"
        )));
    }
    if !validate_h_description(r, n)? {
        return Err(Error::OutsideSpan(format!(
            "lattice points at k=1 differ from B_{{{r},{n}}}"
        )));
    }
    let samples = (0..=n - 2)
        .map(|k| Ok((k as i64, BigInt::from(count_lattice_points(r, n, k)?))))
        .collect::<Result<Vec<_>>>()?;
    Ok(EhrhartPoly::interpolate(&samples))
}

/// Ehrhart values `(k, count)` as CSV with a header row.
pub fn ehrhart_csv(r: usize, n: usize, kmax: usize) -> Result<String> {
    let mut out = String::from("k,count\n");
    for k in 0..=kmax {
        out.push_str(&format!("{k},{}\n", count_lattice_points(r, n, k)?));
    }
    Ok(out)
}
