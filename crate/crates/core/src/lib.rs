//! Thrackle triangulations of tangent cones of uniform matroid base
//! polytopes, computed and certified in exact arithmetic.
//!
//! The tangent cone of `P(U^{r,n})` at a vertex is (up to a unimodular
//! sign flip) the cone over `conv{e_i + e_j : i <= r < j}`, whose points
//! are the columns of the incidence matrix of `K_{r,n-r}`. A binomial
//! Gröbner basis of its toric ideal induces a unimodular triangulation
//! whose maximal cells are the spanning thrackles of `K_{r,n-r}`; there are
//! `C(n-2, r-1)` of them.
//!
//! Modules, bottom-up:
//!
//! * [`embedding`]: the convex drawing of `K_{s,t}` and its meet/cross tests.
//! * [`thrackle`]: spanning thrackles, their counts, and the bit-string bijection.
//! * [`lattice`]: the point sets, exact volumes, and an Ehrhart oracle.
//! * [`groebner`]: the binomial basis, reduction, and a Buchberger certificate.
//! * [`triangulation`]: assembly and verification of the triangulation.
//! * [`matroid`]: explicit-basis matroids and their tangent-cone subgraphs.
//! * [`cli`]: the `thrackle` command-line front end.

pub mod arith;
pub mod cli;
pub mod embedding;
pub mod error;
pub mod groebner;
pub mod lattice;
pub mod matroid;
pub mod thrackle;
pub mod triangulation;

pub use embedding::{crosses, meets, Edge, EmbeddedBipartite};
pub use error::{Error, Result};
pub use thrackle::{BitString, IntervalRep, SpanningThrackle, Thrackle};
