//! Probability that a small signal ball straddles a quantizer boundary:
//! the analytic bound against Monte Carlo.
//!
//! ```text
//! cargo run --release --example boundary_crossing
//! ```

use uembed::randproj::{RandomState, Stream};
use uembed::theory::{p2_bound, p2_meaningful_radius, p2_monte_carlo};

fn main() -> uembed::Result<()> {
    let (sigma, delta) = (1.0, 1.0);
    let rs = RandomState::new(1, Stream::MonteCarlo);
    println!(
        "{:>5} {:>8} {:>10} {:>10} {:>10} {:>10}",
        "N", "r", "bound", "meaningful", "mc", "stderr"
    );
    for n in [10u64, 100, 1000] {
        let r_max = p2_meaningful_radius(n, sigma, delta);
        for frac in [0.05, 0.2, 0.8] {
            let r = frac * r_max;
            let b = p2_bound(n, sigma, r, delta)?;
            let mc = p2_monte_carlo(n, sigma, r, delta, 20_000, &rs.derive(n))?;
            println!(
                "{n:>5} {r:>8.5} {:>10.4} {:>10} {:>10.4} {:>10.4}",
                b.value, b.meaningful, mc.mean, mc.stderr
            );
        }
    }
    Ok(())
}
