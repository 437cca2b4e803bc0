//! Spanning thrackles <-> bit strings with s-1 zeros and t-1 ones.

use matroid_thrackles::thrackle::{enumerate_spanning_thrackles, phi, phi_inverse, BitString};

fn main() -> matroid_thrackles::Result<()> {
    let (s, t) = (3, 4);
    println!("{:<8} {:<12} edges", "bits", "breakpoints");
    for h in enumerate_spanning_thrackles(s, t)? {
        let bits = phi(&h);
        assert_eq!(phi_inverse(&bits, s, t)?, h);
        println!("{:<8} {:<12} {h}", bits.to_string(), format!("{:?}", h.breakpoints()));
    }

    let bits: BitString = "10110".parse()?;
    let h = phi_inverse(&bits, s, t)?;
    println!("\n{bits} decodes to {h}");
    Ok(())
}
