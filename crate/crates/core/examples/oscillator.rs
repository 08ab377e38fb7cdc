//! Maps propensity widths onto harmonic-oscillator parameters.

use qprop::propensity::{density, ground_state_density, oscillator_from_curve, PropensityCurve};

fn main() -> qprop::Result<()> {
    println!("{:>6} {:>10} {:>10} {:>6}", "sigma", "mass", "k", "gamma");
    for sigma in [0.05, 0.1, 0.25, 0.5, 1.0] {
        let curve = PropensityCurve::gaussian(0.0, sigma)?;
        let p = oscillator_from_curve(&curve, 1.0, 1.0)?;
        println!("{sigma:>6} {:>10.3} {:>10.3} {:>6}", p.mass, p.k, p.gamma);
        let x = 0.7 * sigma;
        assert!((ground_state_density(&p, 0.0, x) - density(&curve, x)?).abs() < 1e-12);
    }
    Ok(())
}
