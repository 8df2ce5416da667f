//! Bounded searches: small points on y^2 = x^3 - 25x, rank evidence for the
//! ratio curve, and an ad hoc envelope hunt.
//!
//! Usage: `cargo run --release --example search_points [n]`

use theta_envelope::search::{
    find_envelope_adhoc, heuristic_rank_positive, naive_points, theta_congruent_heuristic, SearchBudget,
};
use theta_envelope::{int, Angle, CubicCurve};

fn main() -> theta_envelope::Result<()> {
    let budget = SearchBudget::with_height(60)?;
    let curve = CubicCurve::new(int(0), int(-25), int(0))?;
    let found = naive_points(&curve, &budget);
    println!("{} points of height <= 60 on {curve}", found.points.len());
    for p in found.points.iter().take(6) {
        println!("  {p}");
    }
    println!("5 at the right angle: {:?}", theta_congruent_heuristic(&Angle::right(), 5, &budget)?);
    let angle = Angle::new(2, 1)?;
    println!("rank evidence at m = 2: {:?}", heuristic_rank_positive(&angle, &int(2), &budget)?);

    let n: u64 = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(7);
    match find_envelope_adhoc(&angle, n, &SearchBudget::default()) {
        Some(env) => println!("envelope for n = {n}: {env}"),
        None => println!("no envelope for n = {n} within the default budget"),
    }
    Ok(())
}
