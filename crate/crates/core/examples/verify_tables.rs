//! Recompute every bundled table and print a one-line summary for each.

use theta_envelope::reproduce::reproduce;

fn main() -> theta_envelope::Result<()> {
    for id in 1..=5 {
        let report = reproduce(id)?;
        println!("{}", report.summary());
        for line in report.lines.iter().filter(|l| !l.starts_with("ok")) {
            println!("  {line}");
        }
    }
    Ok(())
}
