//! Checks a quintuple and applies the scaling and supplementary-angle
//! dualities to it.

use theta_envelope::envelopes::Envelope;
use theta_envelope::{int, parse_rational, Angle};

fn main() -> theta_envelope::Result<()> {
    let angle = Angle::new(2, 1)?;
    let parts = ["143/42", "20/7", "19/6", "1256/1001", "3583/858"].map(|t| parse_rational(t).unwrap());
    let env = Envelope::new(angle, parts)?;
    println!("{env}: n = {}, verifies for 7: {}", env.n(), env.verify(7));
    let scaled = env.scale(&int(3))?;
    println!("scaled by 3: certifies n = {:?}", scaled.certified_n());
    let reflected = env.reflect_dual();
    println!("supplementary angle: {reflected}, certifies {:?}", reflected.certified_n());
    let dual = env.ratio_dual();
    println!("ratio {} dual: {dual}, n = {}", env.ratio(), dual.n());
    Ok(())
}
