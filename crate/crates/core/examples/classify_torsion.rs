//! Torsion of the ratio curve for a few angles and ratios, with the order
//! eight witnesses when they exist.

use theta_envelope::theta_curves::classify_torsion;
use theta_envelope::{parse_rational, Angle};

fn main() -> theta_envelope::Result<()> {
    for (r, s, m) in [(2, 1, "2"), (2, 1, "3"), (2, 1, "1"), (25, 7, "1"), (3, 1, "1/2")] {
        let angle = Angle::new(r, s)?;
        let m = parse_rational(m)?;
        let class = classify_torsion(&angle, &m)?;
        println!("{angle} m={m}: {}", class.structure);
        println!("  M1 = {}, M2 = {}", class.quantities.m1, class.quantities.m2);
        for p in &class.order_eight {
            println!("  order 8: {p}");
        }
    }
    Ok(())
}
