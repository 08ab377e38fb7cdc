//! Disjunction effect: asking A first destroys the interference term.
//!
//! Compares the exact B-yes probabilities with and without measuring A,
//! then samples the measured protocol by collapse-and-continue.

use qprop::cognition::{interference_term, measured_b_yes, sample_sequential, unmeasured_b_yes};
use qprop::qcore::{rotation_gate, seeded_rng};

fn main() -> qprop::Result<()> {
    let (theta, phi) = (0.9, 0.35);
    let unmeasured = unmeasured_b_yes(theta, phi)?;
    let measured = measured_b_yes(theta, phi)?;
    println!("P(B+) without A : {unmeasured:.6}");
    println!("P(B+) after A   : {measured:.6}");
    println!("interference    : {:.6}", interference_term(theta, phi));

    let n = 100_000;
    let freq = sample_sequential(
        &rotation_gate(theta)?,
        &rotation_gate(-phi)?,
        n,
        &mut seeded_rng(1),
    )?;
    let se = (measured * (1.0 - measured) / n as f64).sqrt();
    println!(
        "sampled P(B+)   : {:.6} (+/- {:.6})",
        freq.b_yes(),
        3.0 * se
    );
    Ok(())
}
