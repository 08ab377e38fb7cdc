//! The reversal criterion and the energy it costs.

use qprop::cognition::preference_reversal_switch;
use qprop::propensity::{reversal_energy, work_for_ratio, EntropicScale};

fn main() -> qprop::Result<()> {
    for x2 in [2.0, 2.999, 3.0, 3.001, 4.0] {
        let d = preference_reversal_switch(1.0, x2)?;
        println!("x2/x1 = {:<6} switches: {}", d.ratio, d.switches);
    }

    let e = reversal_energy(1.0, 1.0)?;
    println!("reversal energy (hbar = omega = 1): {:.10}", e.exact);
    println!("small-gap approximation:            {:.10}", e.approx);
    println!("relative gap:                       {:.4}", e.relative_gap);

    let w = work_for_ratio(3.0, &EntropicScale::direct(1.0)?)?;
    println!("work for a 3x density ratio at gamma = 1: {w:.10}");
    Ok(())
}
