//! Prints both question orders for a grid of framework offsets.
//!
//! ```text
//! cargo run --example order_effect
//! ```

use std::f64::consts::PI;

use qprop::cognition::{order_effect_magnitude, order_effect_summary};

fn main() -> qprop::Result<()> {
    let theta = PI / 6.0;
    println!("theta = pi/6");
    println!(
        "{:>8} {:>10} {:>10} {:>10}",
        "phi/pi", "B+ (A,B)", "B+ (B,A)", "delta"
    );
    for k in 0..=8 {
        let phi = k as f64 * PI / 16.0;
        let s = order_effect_summary(theta, phi)?;
        println!(
            "{:>8.4} {:>10.6} {:>10.6} {:>10.6}",
            phi / PI,
            s.a_then_b.b_yes,
            s.b_then_a.b_yes,
            order_effect_magnitude(theta, phi)
        );
        assert!(s.closed_form_deviation < 1e-12);
    }
    Ok(())
}
