//! Power spectra and summary constants of the built-in maps.
//!
//! ```text
//! cargo run --example map_spectra
//! ```

use uembed::maps::{make_multibit, quantize_map, PeriodicMap};

fn main() -> uembed::Result<()> {
    let mut maps: Vec<PeriodicMap> = ["square", "sawtooth", "mixture:1:0.7071,10:0.7071"]
        .iter()
        .map(|s| s.parse())
        .collect::<uembed::Result<_>>()?;
    maps.push(make_multibit(3)?);
    maps.push(quantize_map(&maps[2], 2)?);

    println!(
        "{:<40} {:>8} {:>8} {:>8} {:>8}  leading |H_k|^2",
        "map", "range", "mean", "power", "g_inf"
    );
    for map in &maps {
        let c = map.coefficient_table(6);
        let lead: Vec<String> = c[1..].iter().map(|v| format!("{v:.4}")).collect();
        println!(
            "{:<40} {:>8.4} {:>8.4} {:>8.4} {:>8.4}  {}",
            map.id(),
            map.range(),
            map.mean(),
            map.mean_square(),
            map.saturation(),
            lead.join(" ")
        );
    }

    let sq = &maps[0];
    let spec = sq.power_coeffs(1e-6)?;
    println!(
        "\nsquare wave to 1e-6: {} coefficients, captured {:.8} of {:.8}, tail bound {:.2e}",
        spec.kmax(),
        spec.captured_power(),
        spec.total_power(),
        spec.tail_bound()
    );
    println!("value at t = 0.25, 0.75: {} {}", sq.eval(0.25)?, sq.eval(0.75)?);
    Ok(())
}
