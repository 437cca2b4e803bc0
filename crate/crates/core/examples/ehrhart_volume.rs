//! Lattice points of dilates of conv(B_{r,n}), the interpolated Ehrhart
//! polynomial, and the volume it implies.

use matroid_thrackles::arith::binomial;
use matroid_thrackles::lattice::{ehrhart_csv, ehrhart_fit};

fn main() -> matroid_thrackles::Result<()> {
    print!("{}", ehrhart_csv(2, 5, 6)?);
    for (r, n) in [(2, 5), (2, 6), (3, 6), (3, 7), (4, 8)] {
        let p = ehrhart_fit(r, n)?;
        println!(
            "({r},{n}) i(P,k) = {p}\n       normalized volume {} = C({}, {}) = {}",
            p.normalized_volume(),
            n - 2,
            r - 1,
            binomial((n - 2) as u64, (r - 1) as u64)
        );
    }
    Ok(())
}
