//! Measuring one qubit twice gives the same event probabilities as the
//! entangled two-qubit circuit, for arbitrary unitaries.

use qprop::cognition::equivalence_check;
use qprop::qcore::{random_unitary_2x2, seeded_rng};

fn main() -> qprop::Result<()> {
    let mut rng = seeded_rng(7);
    let mut worst: f64 = 0.0;
    for _ in 0..1000 {
        let a = random_unitary_2x2(&mut rng);
        let b = random_unitary_2x2(&mut rng);
        let report = equivalence_check(&a, &b, 1e-12)?;
        assert!(report.passed);
        worst = worst.max(report.max_abs_deviation);
    }
    println!("1000 random pairs, worst deviation {worst:e}");

    let a = random_unitary_2x2(&mut rng);
    let b = random_unitary_2x2(&mut rng);
    let r = equivalence_check(&a, &b, 1e-12)?;
    for (label, (s, e)) in ["A+B+", "A+B-", "A-B+", "A-B-"].iter().zip(
        r.sequential
            .as_array()
            .into_iter()
            .zip(r.entangled.as_array()),
    ) {
        println!("{label}: sequential {s:.12}  entangled {e:.12}");
    }
    Ok(())
}
