//! Envelopes for several `n` at the right angle and at cos = 3/5, built from
//! multiples of a point on the Heron curve, plus distinct ratios for one `n`.
//!
//! Usage: `cargo run --example generate_envelopes [count]`

use theta_envelope::envelopes::{generate_envelopes, infinitely_many_ratios};
use theta_envelope::Angle;

fn main() -> theta_envelope::Result<()> {
    let count: usize = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(2);
    for (r, s) in [(1, 0), (5, 3)] {
        let angle = Angle::new(r, s)?;
        for n in [1u64, 2, 3, 5] {
            for env in generate_envelopes(&angle, n, count)? {
                assert!(env.verify(n));
                println!("n={n} {env}");
            }
        }
    }
    let angle = Angle::new(5, 3)?;
    for (m, env) in infinitely_many_ratios(&angle, 6, 5)? {
        println!("ratio {m}: {env}");
    }
    Ok(())
}
