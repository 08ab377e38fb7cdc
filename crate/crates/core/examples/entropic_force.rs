//! Entropic force of a single propensity curve is a linear spring.

use qprop::propensity::{entropic_force, log_price, oscillator_from_curve, PropensityCurve};

fn main() -> qprop::Result<()> {
    let curve = PropensityCurve::gaussian(log_price(1.0)?, 0.25)?;
    let osc = oscillator_from_curve(&curve, 1.0, 1.0)?;
    let scale = osc.scale();
    println!("k = {}", osc.k);
    for i in -4..=4 {
        let x = i as f64 * 0.125;
        let f = entropic_force(&curve, x, &scale)?;
        println!("x = {x:>6.3}  price = {:>6.4}  force = {f:>7.3}", x.exp());
    }
    Ok(())
}
