//! Build C_g for K_{r,n-r}, certify it with Buchberger's criterion, then
//! break it on purpose.

use matroid_thrackles::groebner::{
    buchberger_check, check_basis, generate_cg, reduce, with_swapped_trailing, Monomial, TermOrder,
};
use matroid_thrackles::Edge;

fn main() -> matroid_thrackles::Result<()> {
    let (r, n) = (2, 5);
    let cg = generate_cg(r, n)?;
    for b in &cg {
        println!("  {b}");
    }
    let report = buchberger_check(r, n)?;
    println!(
        "{} S-pairs checked, {} skipped as coprime, passed: {}",
        report.pairs_checked,
        report.pairs_skipped_coprime,
        report.passed()
    );

    let m = Monomial::from_edges(&[Edge::new(1, 5), Edge::new(2, 3), Edge::new(1, 4), Edge::new(2, 3)]);
    println!("normal form of {m}: {}", reduce(&m, &cg));

    for (r, n) in [(3, 6), (3, 7), (4, 8)] {
        let rep = buchberger_check(r, n)?;
        println!("(r,n)=({r},{n}): {} binomials, passed: {}", rep.basis_size, rep.passed());
    }

    let broken = with_swapped_trailing(&cg, 0, 1);
    let rep = check_basis(&broken, &TermOrder::Lex);
    println!("after swapping two trailing terms: passed: {}", rep.passed());
    Ok(())
}
