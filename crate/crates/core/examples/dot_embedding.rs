//! Graphviz drawing of the convex embedding with one spanning thrackle
//! highlighted. Pipe into `neato -n -Tsvg`.

use matroid_thrackles::thrackle::enumerate_spanning_thrackles;
use matroid_thrackles::{crosses, EmbeddedBipartite};

fn main() -> matroid_thrackles::Result<()> {
    let g = EmbeddedBipartite::new(3, 4)?;
    let h = enumerate_spanning_thrackles(3, 4)?.nth(4).expect("15 thrackles");
    eprintln!("highlighting {h}");
    for (a, b) in h.edges().iter().zip(h.edges().iter().skip(1)) {
        if !a.shares_vertex(b) {
            eprintln!("  {a} crosses {b}: {}", crosses(a, b)?);
        }
    }
    print!("{}", g.to_dot("k34", Some(h.edges())));
    Ok(())
}
