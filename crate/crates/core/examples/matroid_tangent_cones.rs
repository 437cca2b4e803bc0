//! Tangent subgraphs and maximal-thrackle counts for a few small matroids.

use matroid_thrackles::matroid::{
    adjacent_bases, relabeling_spread, tangent_cone_simplex_count, uniform_bases, MatroidBases,
};

fn census(name: &str, m: &MatroidBases) -> matroid_thrackles::Result<()> {
    println!("{name}: n={} r={} with {} bases", m.n(), m.r(), m.len());
    for b in m.bases() {
        let rep = tangent_cone_simplex_count(b, m)?;
        let (lo, hi) = relabeling_spread(b, m)?;
        println!(
            "  {b:?}: {} neighbours, {} tangent edges, {} maximal thrackles (sizes {:?}, relabelings {lo}..{hi})",
            adjacent_bases(b, m)?.len(),
            rep.subgraph.edges.len(),
            rep.count,
            rep.sizes,
        );
    }
    Ok(())
}

fn main() -> matroid_thrackles::Result<()> {
    census("U(2,5)", &uniform_bases(2, 5)?)?;

    let cycle = MatroidBases::new(4, 3, [[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]].map(Vec::from))?;
    census("4-cycle", &cycle)?;

    let no_34 = MatroidBases::new(4, 2, [[1, 2], [1, 3], [1, 4], [2, 3], [2, 4]].map(Vec::from))?;
    census("U(2,4) minus {3,4}", &no_34)?;

    let json = r#"{"n":6,"r":2,"bases":[[1,3],[1,4],[1,5],[1,6],[2,3],[2,4],[2,5],[2,6],[3,5],[3,6],[4,5],[4,6]]}"#;
    let m = MatroidBases::from_json(serde_json::from_str(json).expect("valid json"))?;
    census("from JSON", &m)?;
    Ok(())
}
