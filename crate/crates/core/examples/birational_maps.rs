//! Walks multiples of the independent point through the cubic to quartic map
//! and back, then certifies the `n` each point produces.

use theta_envelope::theta_curves::{independent_point, make_g_cubic};
use theta_envelope::transforms::{certified_n, cubic_to_quartic, quartic_to_cubic};
use theta_envelope::{int, Angle};

fn main() -> theta_envelope::Result<()> {
    let angle = Angle::new(2, 1)?;
    let m = int(2);
    let curve = make_g_cubic(&angle, &m)?;
    let p = independent_point(&angle, &m)?;
    println!("{curve}, P = {p}");
    for k in 2..=5 {
        let q = curve.scalar_mul(k, &p)?;
        let (x, z) = cubic_to_quartic(&angle, &m, 1, &q)?;
        let back = quartic_to_cubic(&angle, &m, 1, &x, &z)?;
        assert_eq!(back, q);
        print!("{k}P -> quartic ({x}, {z})");
        match certified_n(&angle, &m, &q) {
            Ok(cert) => println!("; certifies n = {} via {}", cert.n, cert.envelope),
            Err(e) => println!("; no certificate: {e}"),
        }
    }
    Ok(())
}
