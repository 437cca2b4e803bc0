//! The thrackle triangulation of conv(B_{r,n}) and its three checks.

use matroid_thrackles::triangulation::{
    build_triangulation, covering_check, tangent_cone_view, verify_unimodular, verify_volume,
};

fn main() -> matroid_thrackles::Result<()> {
    let (r, n) = (3, 6);
    let t = build_triangulation(r, n)?;
    println!("{} simplices (expected {})", t.len(), t.expected_count());
    for (h, sx) in t.thrackles.iter().zip(&t.simplices) {
        let verts: Vec<String> = sx.vertices.iter().map(|v| v.to_string()).collect();
        println!("  {h}\n      {}", verts.join(" "));
    }

    println!("unimodular: {}", verify_unimodular(&t)?);
    let vol = verify_volume(&t)?;
    println!("volume: simplices {} vs polytope {}", vol.simplex_total, vol.polytope_volume);
    let cover = covering_check(&t, 200, 0)?;
    println!("covering: {cover:?}");

    let cone = &tangent_cone_view(&t)[0];
    let gens: Vec<String> = cone.generators.iter().map(|g| g.to_string()).collect();
    println!("first cone at {}: {}", cone.apex, gens.join(" "));
    Ok(())
}
