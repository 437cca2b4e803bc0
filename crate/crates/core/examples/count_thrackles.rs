//! Spanning thrackles of K_{s,t} counted four ways.
//!
//!     cargo run --example count_thrackles -- 4 5

use matroid_thrackles::thrackle::{
    brute_force_spanning_thrackles, count_closed_form, count_recurrence,
    enumerate_spanning_thrackles, spanning_tree_count, BRUTE_FORCE_MAX_EDGES,
};

fn main() -> matroid_thrackles::Result<()> {
    let args: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let (s, t) = match args[..] {
        [s, t, ..] => (s, t),
        _ => (3, 4),
    };

    println!("K_{{{s},{t}}}");
    println!("  closed form       {}", count_closed_form(s, t)?);
    println!("  recurrence        {}", count_recurrence(s, t)?);
    println!("  interval enum     {}", enumerate_spanning_thrackles(s, t)?.count());
    if s * t <= BRUTE_FORCE_MAX_EDGES {
        println!("  brute force       {}", brute_force_spanning_thrackles(s, t)?.len());
    }
    println!("  spanning trees    {}", spanning_tree_count(s, t)?);

    println!("\n  s\\t {}", (1..=8).map(|t| format!("{t:>5}")).collect::<String>());
    for s in 1..=6 {
        let row: String = (1..=8)
            .map(|t| format!("{:>5}", count_closed_form(s, t).unwrap()))
            .collect();
        println!("  {s:>3} {row}");
    }
    Ok(())
}
