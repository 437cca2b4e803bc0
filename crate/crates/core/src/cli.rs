//! The `thrackle` command-line front end.
//!
//! [`run`] parses arguments, does the work on a rayon pool, and writes to
//! the given sinks. Exit codes: `0` success, `1` a verification failed,
//! `2` usage error.

use std::io::Write;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use itertools::Itertools;
use serde_json::json;

use crate::error::Error;
use crate::groebner::{buchberger_check, generate_cg};
use crate::lattice::{count_lattice_points, ehrhart_fit, EHRHART_MAX_N};
use crate::matroid::{relabeling_spread, tangent_cone_simplex_count, MatroidBases, MatroidJson};
use crate::thrackle::{
    brute_force_spanning_thrackles, count_closed_form, count_recurrence,
    enumerate_spanning_thrackles, phi, phi_inverse, BitString,
};
use crate::triangulation::{
    build_triangulation, covering_check, verify_volume, SummaryRow, VOLUME_ORACLE_MAX_N,
};
use crate::EmbeddedBipartite;

/// Environment variable holding the default worker count.
pub const THREADS_ENV: &str = "THRACKLE_THREADS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "thrackle",
    version,
    about = "Spanning thrackles and the thrackle triangulation of uniform matroid tangent cones"
)]
struct Cli {
    /// Worker threads (default: $THRACKLE_THREADS, else all cores)
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Count spanning thrackles of K_{s,t}, cross-checking several methods
    Count {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_delimiter = ',', default_value = "closed")]
        method: Vec<Method>,
    },
    /// Stream the spanning thrackles of K_{s,t}
    Enum {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long, value_enum, default_value_t = EnumFormat::Text)]
        format: EnumFormat,
    },
    /// Map spanning thrackles to bit strings, or a bit string back
    Phi {
        #[arg(long)]
        s: usize,
        #[arg(long)]
        t: usize,
        #[arg(long)]
        invert: Option<String>,
    },
    /// Certify the binomial Gröbner basis of K_{r,n-r}
    GroebnerCheck {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Emit the thrackle triangulation of conv(B_{r,n})
    Triangulate {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = TriFormat::Text)]
        format: TriFormat,
    },
    /// Check unimodularity, volume additivity and sampled covering
    Verify {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Count lattice points of dilates and fit the Ehrhart polynomial
    Ehrhart {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
        /// Largest dilation to count (default n-2)
        #[arg(long)]
        kmax: Option<usize>,
        #[arg(long, value_enum, default_value_t = EhrhartFormat::Text)]
        format: EhrhartFormat,
    },
    /// Tangent subgraphs and maximal-thrackle counts of a matroid
    Matroid {
        /// JSON file {"n":..,"r":..,"bases":[[..],..]}
        #[arg(long)]
        input: PathBuf,
        /// Restrict to one basis, e.g. 1,3
        #[arg(long, value_delimiter = ',')]
        basis: Option<Vec<usize>>,
        /// Also sweep every relabeling of the two sides (n <= 8)
        #[arg(long)]
        all_relabelings: bool,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, ValueEnum)]
enum Method {
    Closed,
    Recurrence,
    Enum,
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EnumFormat {
    Text,
    Json,
    Dot,
    Intervals,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum TriFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum EhrhartFormat {
    Text,
    Json,
    Csv,
}

/// A command outcome other than plain success.
enum Failure {
    Usage(String),
    Check(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::EmptyPart { .. }
            | Error::BadRank { .. }
            | Error::SizeGuard(_)
            | Error::BadBitString { .. }
            | Error::BadMatroid(_)
            | Error::NotABasis(_) => Failure::Usage(e.to_string()),
            other => Failure::Check(other.to_string()),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Check(format!("i/o error: {e}"))
    }
}

type Outcome = std::result::Result<(), Failure>;

/// Runs one invocation. `args` includes the program name.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if code == EXIT_OK {
                out.write_all(text.as_bytes())
            } else {
                err.write_all(text.as_bytes())
            };
            return code;
        }
    };
    let threads = cli
        .threads
        .or_else(|| std::env::var(THREADS_ENV).ok().and_then(|v| v.parse().ok()))
        .unwrap_or(0);
    let pool = match rayon::ThreadPoolBuilder::new().num_threads(threads).build() {
        Ok(pool) => pool,
        Err(e) => {
            let _ = writeln!(err, "error: cannot start thread pool: {e}");
            return EXIT_FAILED;
        }
    };
    let mut buf = Vec::new();
    let result = pool.install(|| dispatch(cli.command, &mut buf));
    let _ = out.write_all(&buf);
    let _ = out.flush();
    match result {
        Ok(()) => EXIT_OK,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}\n\nRun `thrackle --help` for usage.");
            EXIT_USAGE
        }
        Err(Failure::Check(msg)) => {
            let _ = writeln!(err, "FAILED: {msg}");
            EXIT_FAILED
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Outcome {
    match command {
        Command::Count { s, t, method } => count(s, t, &method, out),
        Command::Enum { s, t, format } => enumerate(s, t, format, out),
        Command::Phi { s, t, invert } => phi_cmd(s, t, invert, out),
        Command::GroebnerCheck { r, n, format } => groebner(r, n, format, out),
        Command::Triangulate { r, n, format } => triangulate(r, n, format, out),
        Command::Verify { r, n, samples, seed } => verify(r, n, samples, seed, out),
        Command::Ehrhart { r, n, kmax, format } => ehrhart(r, n, kmax, format, out),
        Command::Matroid {
            input,
            basis,
            all_relabelings,
            format,
        } => matroid(&input, basis, all_relabelings, format, out),
    }
}

fn count(s: usize, t: usize, methods: &[Method], out: &mut dyn Write) -> Outcome {
    EmbeddedBipartite::new(s, t)?;
    let mut values = Vec::new();
    for m in methods.iter().unique() {
        let v = match m {
            Method::Closed => count_closed_form(s, t)?,
            Method::Recurrence => count_recurrence(s, t)?,
            Method::Enum => enumerate_spanning_thrackles(s, t)?.count().into(),
            Method::Brute => brute_force_spanning_thrackles(s, t)?.len().into(),
        };
        values.push(v);
    }
    let line = values.iter().join(" ");
    if values.len() == 1 {
        writeln!(out, "{line}")?;
        return Ok(());
    }
    if values.iter().all_equal() {
        writeln!(out, "{line} OK")?;
        Ok(())
    } else {
        writeln!(out, "{line} MISMATCH")?;
        Err(Failure::Check(format!("counting methods disagree: {line}")))
    }
}

fn enumerate(s: usize, t: usize, format: EnumFormat, out: &mut dyn Write) -> Outcome {
    let g = EmbeddedBipartite::new(s, t)?;
    for (k, h) in enumerate_spanning_thrackles(s, t)?.enumerate() {
        match format {
            EnumFormat::Text => writeln!(
                out,
                "{k:>4}  breakpoints={:?}  edges={h}",
                h.breakpoints()
            )?,
            EnumFormat::Json => writeln!(
                out,
                "{}",
                serde_json::to_string(&h.to_json()).expect("serializable")
            )?,
            EnumFormat::Dot => write!(out, "{}", g.to_dot(&format!("thrackle_{k}"), Some(h.edges())))?,
            EnumFormat::Intervals => writeln!(out, "{}", h.breakpoints().iter().join(" "))?,
        }
    }
    Ok(())
}

fn phi_cmd(s: usize, t: usize, invert: Option<String>, out: &mut dyn Write) -> Outcome {
    EmbeddedBipartite::new(s, t)?;
    match invert {
        Some(text) => {
            let bits: BitString = text.parse()?;
            let h = phi_inverse(&bits, s, t)?;
            writeln!(out, "breakpoints={:?}  edges={h}", h.breakpoints())?;
        }
        None => {
            for h in enumerate_spanning_thrackles(s, t)? {
                let bits = phi(&h);
                writeln!(out, "{bits}  breakpoints={:?}", h.breakpoints())?;
            }
        }
    }
    Ok(())
}

fn groebner(r: usize, n: usize, format: Format, out: &mut dyn Write) -> Outcome {
    let report = buchberger_check(r, n)?;
    let cg = generate_cg(r, n)?;
    match format {
        Format::Text => {
            for b in &cg {
                writeln!(out, "{b}")?;
            }
            writeln!(
                out,
                "basis={} s_pairs={} coprime_skipped={} failed={} reduced={} groebner={}",
                report.basis_size,
                report.pairs_checked,
                report.pairs_skipped_coprime,
                report.failed_pairs.len(),
                report.reducedness_violations.is_empty(),
                if report.passed() { "OK" } else { "FAIL" }
            )?;
        }
        Format::Json => {
            let v = json!({
                "r": r,
                "n": n,
                "basis": cg.iter().map(|b| b.to_json()).collect::<Vec<_>>(),
                "s_pairs": report.pairs_checked,
                "failed_pairs": report.failed_pairs,
                "reduced": report.reducedness_violations.is_empty(),
                "passed": report.passed(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable"))?;
        }
    }
    if report.passed() {
        Ok(())
    } else if let Some((a, b)) = report.failed_pairs.first() {
        Err(Failure::Check(format!(
            "S-pair ({}, {}) does not reduce to zero",
            cg[*a], cg[*b]
        )))
    } else {
        Err(Failure::Check("basis is not reduced".into()))
    }
}

fn triangulate(r: usize, n: usize, format: TriFormat, out: &mut dyn Write) -> Outcome {
    let t = build_triangulation(r, n)?;
    match format {
        TriFormat::Text => {
            writeln!(out, "r={r} n={n} simplices={} expected={}", t.len(), t.expected_count())?;
            let volumes = t.volumes()?;
            for (k, ((h, sx), vol)) in t.thrackles.iter().zip(&t.simplices).zip(&volumes).enumerate() {
                let verts = sx.vertices.iter().map(|v| v.to_string()).join(" ");
                writeln!(out, "{k:>4}  volume={vol}  thrackle={h}  vertices={verts}")?;
            }
        }
        TriFormat::Json => {
            writeln!(out, "{}", serde_json::to_string_pretty(&t.to_json()?).expect("serializable"))?;
        }
        TriFormat::Csv => {
            writeln!(out, "{}", SummaryRow::CSV_HEADER)?;
            writeln!(out, "{}", SummaryRow::compute(&t)?.to_csv())?;
        }
    }
    Ok(())
}

fn verify(r: usize, n: usize, samples: usize, seed: u64, out: &mut dyn Write) -> Outcome {
    let t = build_triangulation(r, n)?;
    let volumes = t.volumes()?;
    let unit = volumes.iter().filter(|v| num_traits::One::is_one(*v)).count();
    let expected = t.expected_count();
    let count_ok = num_bigint::BigUint::from(t.len()) == expected;
    let mut failures = Vec::new();
    if !count_ok {
        failures.push(format!("simplex count {} differs from {expected}", t.len()));
    }
    if unit != t.len() {
        failures.push(format!("{} of {} simplices are not unimodular", t.len() - unit, t.len()));
    }
    let volume_field = if n <= VOLUME_ORACLE_MAX_N {
        let check = verify_volume(&t)?;
        if !check.ok() {
            failures.push(format!(
                "simplex volumes sum to {} but the polytope has volume {}",
                check.simplex_total, check.polytope_volume
            ));
        }
        format!("{}/{}", check.simplex_total, check.polytope_volume)
    } else {
        "skipped".to_owned()
    };
    let cover = covering_check(&t, samples, seed)?;
    if !cover.ok() {
        failures.push(format!(
            "covering: {} uncovered, {} interior overlaps",
            cover.uncovered, cover.generic_overlaps
        ));
    }
    writeln!(
        out,
        "r={r} n={n} count={} expected={expected} unimodular={unit}/{} volume={volume_field} \
         covering={}/{} interior_unique={}/{} seed={seed} {}",
        t.len(),
        t.len(),
        cover.samples - cover.uncovered,
        cover.samples,
        cover.generic - cover.generic_overlaps,
        cover.generic,
        if failures.is_empty() { "OK" } else { "FAIL" }
    )?;
    match failures.into_iter().next() {
        None => Ok(()),
        Some(first) => Err(Failure::Check(first)),
    }
}

fn ehrhart(r: usize, n: usize, kmax: Option<usize>, format: EhrhartFormat, out: &mut dyn Write) -> Outcome {
    EmbeddedBipartite::for_matroid(r, n)?;
    if n > EHRHART_MAX_N {
        return Err(Failure::Usage(format!("ehrhart needs n <= {EHRHART_MAX_N}")));
    }
    let kmax = kmax.unwrap_or(n - 2);
    let poly = ehrhart_fit(r, n)?;
    let counts = (0..=kmax)
        .map(|k| count_lattice_points(r, n, k))
        .collect::<Result<Vec<_>, _>>()?;
    let mut mismatch = None;
    for (k, c) in counts.iter().enumerate() {
        let predicted = poly.evaluate(k as i64);
        if predicted != num_rational::BigRational::from_integer(c.clone().into()) {
            mismatch.get_or_insert(format!("polynomial gives {predicted} at k={k}, counted {c}"));
        }
    }
    match format {
        EhrhartFormat::Text => {
            writeln!(out, "k  count")?;
            for (k, c) in counts.iter().enumerate() {
                writeln!(out, "{k}  {c}")?;
            }
            writeln!(out, "i(P,k) = {poly}")?;
            writeln!(out, "normalized_volume = {}", poly.normalized_volume())?;
        }
        EhrhartFormat::Json => {
            let v = json!({
                "r": r,
                "n": n,
                "counts": counts.iter().map(|c| c.to_string()).collect::<Vec<_>>(),
                "coefficients": poly.to_json(),
                "normalized_volume": poly.normalized_volume().to_string(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable"))?;
        }
        EhrhartFormat::Csv => {
            writeln!(out, "k,count")?;
            for (k, c) in counts.iter().enumerate() {
                writeln!(out, "{k},{c}")?;
            }
        }
    }
    match mismatch {
        None => Ok(()),
        Some(msg) => Err(Failure::Check(msg)),
    }
}

fn matroid(
    input: &std::path::Path,
    basis: Option<Vec<usize>>,
    all_relabelings: bool,
    format: Format,
    out: &mut dyn Write,
) -> Outcome {
    let text = std::fs::read_to_string(input)
        .map_err(|e| Failure::Usage(format!("cannot read {}: {e}", input.display())))?;
    let raw: MatroidJson = serde_json::from_str(&text)
        .map_err(|e| Failure::Usage(format!("cannot parse {}: {e}", input.display())))?;
    let m = MatroidBases::from_json(raw)?;
    let targets: Vec<Vec<usize>> = match basis {
        Some(b) => vec![b],
        None => m.bases().cloned().collect(),
    };
    let mut reports = Vec::new();
    for b in &targets {
        let rep = tangent_cone_simplex_count(b, &m)?;
        let spread = if all_relabelings {
            Some(relabeling_spread(b, &m)?)
        } else {
            None
        };
        reports.push((rep, spread));
    }
    match format {
        Format::Text => {
            writeln!(out, "n={} r={} bases={}", m.n(), m.r(), m.len())?;
            for (rep, spread) in &reports {
                let sub = &rep.subgraph;
                write!(
                    out,
                    "basis={:?} left={:?} right={:?} edges={}/{} count={} equal_cardinality={}",
                    sub.base,
                    sub.left_labels,
                    sub.right_labels,
                    sub.edges.len(),
                    sub.left_labels.len() * sub.right_labels.len(),
                    rep.count,
                    rep.equal_cardinality()
                )?;
                if let Some((lo, hi)) = spread {
                    write!(out, " relabeling_spread={lo}..{hi}")?;
                }
                writeln!(out)?;
            }
        }
        Format::Json => {
            let v = json!({
                "n": m.n(),
                "r": m.r(),
                "reports": reports.iter().map(|(rep, spread)| {
                    let mut j = rep.to_json();
                    if let Some((lo, hi)) = spread {
                        j["relabeling_spread"] = json!([lo, hi]);
                    }
                    j
                }).collect::<Vec<_>>(),
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("serializable"))?;
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn call(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let argv = std::iter::once("thrackle").chain(args.iter().copied());
        let code = run(argv, &mut out, &mut err);
        (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
    }

    #[test]
    fn count_cross_check() {
        let (code, out, _) = call(&["count", "--s", "2", "--t", "3", "--method", "closed,brute"]);
        assert_eq!(code, 0);
        assert_eq!(out, "3 3 OK\n");
    }

    #[test]
    fn usage_errors() {
        assert_eq!(call(&["count", "--s", "0", "--t", "3"]).0, 2);
        assert_eq!(call(&["count", "--s", "x", "--t", "3"]).0, 2);
        assert_eq!(call(&["frobnicate"]).0, 2);
        assert_eq!(call(&["count", "--s", "6", "--t", "6", "--method", "brute"]).0, 2);
        assert_eq!(call(&["phi", "--s", "2", "--t", "3", "--invert", "0"]).0, 2);
        assert_eq!(call(&["--help"]).0, 0);
    }

    #[test]
    fn verify_summary() {
        let (code, out, _) = call(&["verify", "--r", "2", "--n", "5"]);
        assert_eq!(code, 0);
        assert!(out.contains("count=3 expected=3 unimodular=3/3 volume=3/3"), "{out}");
        assert!(out.trim_end().ends_with("OK"));
    }

    #[test]
    fn phi_both_ways() {
        let (_, out, _) = call(&["phi", "--s", "2", "--t", "3"]);
        assert_eq!(
            out,
            "011  breakpoints=[3]\n101  breakpoints=[4]\n110  breakpoints=[5]\n"
        );
        let (code, out, _) = call(&["phi", "--s", "2", "--t", "3", "--invert", "101"]);
        assert_eq!(code, 0);
        assert_eq!(out, "breakpoints=[4]  edges={(1,3),(1,4),(2,4),(2,5)}\n");
    }
}
