//! Two-question decision circuits and the cognitive effects they produce.
//!
//! Qubit 1 always carries the answer to question A and qubit 2 the answer to
//! question B; bit 0 means "yes". Question order only changes which wire
//! controls the C-NOT and which rotations are loaded into the gates.

use std::fmt;

use rand::Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qcore::{
    apply, cnot, initial_state, is_unitary, measure_collapse, probabilities, rotation_gate, tensor,
    BasisLabel, Gate, Matrix, StateVector, NORM_TOL, UNITARY_TOL,
};

/// Cost ratio that must be exceeded before a preference reversal occurs.
pub const REVERSAL_RATIO: f64 = 3.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum QuestionOrder {
    #[serde(rename = "ab")]
    AThenB,
    #[serde(rename = "ba")]
    BThenA,
}

impl fmt::Display for QuestionOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            QuestionOrder::AThenB => "A then B",
            QuestionOrder::BThenA => "B then A",
        })
    }
}

/// Context angle `theta` for question A, framework offset `phi` for B.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DecisionScenario {
    theta: f64,
    phi: f64,
    order: QuestionOrder,
}

impl DecisionScenario {
    pub fn new(theta: f64, phi: f64, order: QuestionOrder) -> Result<Self> {
        if !theta.is_finite() {
            return Err(Error::NonFinite("theta"));
        }
        if !phi.is_finite() {
            return Err(Error::NonFinite("phi"));
        }
        Ok(Self { theta, phi, order })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    pub fn order(&self) -> QuestionOrder {
        self.order
    }
}

/// The four joint answers to questions A and B, in basis order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Event {
    YesYes,
    YesNo,
    NoYes,
    NoNo,
}

impl Event {
    pub const ALL: [Event; 4] = [Event::YesYes, Event::YesNo, Event::NoYes, Event::NoNo];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn label(self) -> &'static str {
        match self {
            Event::YesYes => "A+B+",
            Event::YesNo => "A+B-",
            Event::NoYes => "A-B+",
            Event::NoNo => "A-B-",
        }
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Joint probabilities of the four answer events.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EventDistribution {
    #[serde(rename = "A+B+")]
    yes_yes: f64,
    #[serde(rename = "A+B-")]
    yes_no: f64,
    #[serde(rename = "A-B+")]
    no_yes: f64,
    #[serde(rename = "A-B-")]
    no_no: f64,
}

impl EventDistribution {
    /// Builds a distribution from probabilities ordered as [`Event::ALL`].
    pub fn new(p: [f64; 4]) -> Result<Self> {
        if let Some(x) = p.iter().find(|x| !(0.0..=1.0).contains(*x)) {
            return Err(Error::InvalidDistribution(format!(
                "event probability {x} outside [0, 1]"
            )));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidDistribution(format!(
                "event probabilities sum to {total}"
            )));
        }
        Ok(Self {
            yes_yes: p[0],
            yes_no: p[1],
            no_yes: p[2],
            no_no: p[3],
        })
    }

    pub fn get(&self, event: Event) -> f64 {
        self.as_array()[event.index()]
    }

    pub fn as_array(&self) -> [f64; 4] {
        [self.yes_yes, self.yes_no, self.no_yes, self.no_no]
    }

    pub fn a_yes(&self) -> f64 {
        self.yes_yes + self.yes_no
    }

    pub fn a_no(&self) -> f64 {
        self.no_yes + self.no_no
    }

    pub fn b_yes(&self) -> f64 {
        self.yes_yes + self.no_yes
    }

    pub fn b_no(&self) -> f64 {
        self.yes_no + self.no_no
    }

    pub fn marginals(&self) -> Marginals {
        Marginals {
            a_yes: self.a_yes(),
            a_no: self.a_no(),
            b_yes: self.b_yes(),
            b_no: self.b_no(),
        }
    }

    /// Largest per-event absolute difference.
    pub fn max_abs_diff(&self, other: &EventDistribution) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

/// Yes/no marginals for both questions.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Marginals {
    pub a_yes: f64,
    pub a_no: f64,
    pub b_yes: f64,
    pub b_no: f64,
}

impl Marginals {
    pub fn as_array(&self) -> [f64; 4] {
        [self.a_yes, self.a_no, self.b_yes, self.b_no]
    }

    pub fn max_abs_diff(&self, other: &Marginals) -> f64 {
        self.as_array()
            .iter()
            .zip(other.as_array())
            .map(|(a, b)| (a - b).abs())
            .fold(0.0, f64::max)
    }
}

fn rotation(angle: f64) -> Gate {
    rotation_gate(angle).expect("scenario angles are finite")
}

fn events_from_state(gates: &Gate, control: usize) -> EventDistribution {
    let state = apply(gates, &initial_state(2).expect("two qubits")).expect("4x4 gate");
    let state = apply(&cnot(control).expect("valid control"), &state).expect("4x4 gate");
    let p = probabilities(&state);
    let p = p.probabilities();
    EventDistribution::new([p[0], p[1], p[2], p[3]]).expect("unitary circuit output")
}

/// Runs the two-qubit decision circuit for `scenario`.
///
/// A then B: `X_c(1) · (R_θ ⊗ R_φ) · |00⟩`.
/// B then A: `X_c(2) · (R_φ ⊗ R_{θ-φ}) · |00⟩`.
pub fn order_effect_circuit(scenario: &DecisionScenario) -> EventDistribution {
    let (theta, phi) = (scenario.theta, scenario.phi);
    let (top, bottom, control) = match scenario.order {
        QuestionOrder::AThenB => (rotation(theta), rotation(phi), 1),
        QuestionOrder::BThenA => (rotation(phi), rotation(theta - phi), 2),
    };
    let gates = tensor(&top, &bottom).expect("two 2x2 gates");
    events_from_state(&gates, control)
}

/// Marginals for both question orders.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OrderEffectSummary {
    pub theta: f64,
    pub phi: f64,
    pub a_then_b: Marginals,
    pub b_then_a: Marginals,
    /// Largest deviation between the circuit marginals and the closed forms.
    pub closed_form_deviation: f64,
}

/// Closed-form marginals for both orders, as `(A then B, B then A)`.
pub fn order_effect_closed_form(theta: f64, phi: f64) -> (Marginals, Marginals) {
    let (ct, st) = (theta.cos().powi(2), theta.sin().powi(2));
    let (cp, sp) = (phi.cos().powi(2), phi.sin().powi(2));
    let (cd, sd) = ((theta - phi).cos().powi(2), (theta - phi).sin().powi(2));
    let a_then_b = Marginals {
        a_yes: ct,
        a_no: st,
        b_yes: ct * cp + st * sp,
        b_no: ct * sp + st * cp,
    };
    let b_then_a = Marginals {
        a_yes: cd * cp + sd * sp,
        a_no: cd * sp + sd * cp,
        b_yes: cd,
        b_no: sd,
    };
    (a_then_b, b_then_a)
}

/// Runs both question orders through the circuit and tabulates marginals.
pub fn order_effect_summary(theta: f64, phi: f64) -> Result<OrderEffectSummary> {
    let run = |order| -> Result<Marginals> {
        Ok(order_effect_circuit(&DecisionScenario::new(theta, phi, order)?).marginals())
    };
    let a_then_b = run(QuestionOrder::AThenB)?;
    let b_then_a = run(QuestionOrder::BThenA)?;
    let (ab, ba) = order_effect_closed_form(theta, phi);
    let closed_form_deviation = a_then_b.max_abs_diff(&ab).max(b_then_a.max_abs_diff(&ba));
    Ok(OrderEffectSummary {
        theta,
        phi,
        a_then_b,
        b_then_a,
        closed_form_deviation,
    })
}

/// `P(B yes | A then B) - P(B yes | B then A)`.
pub fn order_effect_magnitude(theta: f64, phi: f64) -> f64 {
    let (ab, ba) = order_effect_closed_form(theta, phi);
    ab.b_yes - ba.b_yes
}

/// Excess of the unmeasured over the measured probability of answering yes
/// to B: `cos²(θ-φ) - (cos²θ cos²φ + sin²θ sin²φ) = ½ sin 2θ sin 2φ`.
pub fn interference_term(theta: f64, phi: f64) -> f64 {
    0.5 * (2.0 * theta).sin() * (2.0 * phi).sin()
}

/// `P(B yes)` when A is never asked, computed on the one-qubit circuit.
///
/// B is measured by rotating its basis onto the computational one, `R_{-φ}`.
pub fn unmeasured_b_yes(theta: f64, phi: f64) -> Result<f64> {
    let prepared = apply(&rotation_gate(theta)?, &initial_state(1)?)?;
    let in_b = apply(&rotation_gate(-phi)?, &prepared)?;
    Ok(probabilities(&in_b).probabilities()[0])
}

/// `P(B yes)` when A is asked first and collapses the state, summed over
/// both A outcomes on the one-qubit circuit.
pub fn measured_b_yes(theta: f64, phi: f64) -> Result<f64> {
    let prepared = apply(&rotation_gate(theta)?, &initial_state(1)?)?;
    let to_b = rotation_gate(-phi)?;
    let a = probabilities(&prepared);
    let mut total = 0.0;
    for (label, p_a) in a.iter() {
        let collapsed = StateVector::basis(label);
        total += p_a * probabilities(&apply(&to_b, &collapsed)?).probabilities()[0];
    }
    Ok(total)
}

/// Empirical event frequencies from repeated sampling.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EventFrequencies {
    pub trials: u64,
    pub counts: [u64; 4],
}

impl EventFrequencies {
    pub fn frequency(&self, event: Event) -> f64 {
        self.counts[event.index()] as f64 / self.trials as f64
    }

    pub fn b_yes(&self) -> f64 {
        self.frequency(Event::YesYes) + self.frequency(Event::NoYes)
    }
}

fn check_gate(m: &Matrix) -> Result<()> {
    if m.dim() != 2 {
        return Err(Error::DimensionMismatch {
            expected: 2,
            found: m.dim(),
        });
    }
    if !is_unitary(m, UNITARY_TOL) {
        return Err(Error::NotUnitary(m.unitarity_deviation()));
    }
    Ok(())
}

/// Event probabilities of the one-qubit circuit that measures after `a`
/// and again after `b`.
pub fn sequential_measurement(
    a: impl AsRef<Matrix>,
    b: impl AsRef<Matrix>,
) -> Result<EventDistribution> {
    let (a, b) = (a.as_ref(), b.as_ref());
    check_gate(a)?;
    check_gate(b)?;
    let (a11, a21) = (a.get(0, 0), a.get(1, 0));
    let (b11, b12, b21, b22) = (b.get(0, 0), b.get(0, 1), b.get(1, 0), b.get(1, 1));
    EventDistribution::new([
        (a11 * b11).norm_sqr(),
        (a11 * b21).norm_sqr(),
        (a21 * b12).norm_sqr(),
        (a21 * b22).norm_sqr(),
    ])
}

/// Samples the sequential circuit `trials` times, collapsing the qubit at
/// each measurement and continuing from the collapsed state.
pub fn sample_sequential<R: Rng + ?Sized>(
    a: &Gate,
    b: &Gate,
    trials: u64,
    rng: &mut R,
) -> Result<EventFrequencies> {
    check_gate(a.matrix())?;
    check_gate(b.matrix())?;
    if trials == 0 {
        return Err(Error::NonPositive {
            name: "trials",
            value: 0.0,
        });
    }
    let start = apply(a, &initial_state(1)?)?;
    // post-A states are basis states, so both B branches can be prepared once
    let after_b = [
        apply(b, &StateVector::basis(BasisLabel::new(1, 0)?))?,
        apply(b, &StateVector::basis(BasisLabel::new(1, 1)?))?,
    ];
    let mut counts = [0u64; 4];
    for _ in 0..trials {
        let (first, _) = measure_collapse(&start, rng);
        let (second, _) = measure_collapse(&after_b[first.index()], rng);
        counts[2 * first.index() + second.index()] += 1;
    }
    Ok(EventFrequencies { trials, counts })
}

/// Event probabilities of `X_c(1) · (A ⊗ B) · |00⟩`.
pub fn entangled_circuit(
    a: impl AsRef<Matrix>,
    b: impl AsRef<Matrix>,
) -> Result<EventDistribution> {
    let (a, b) = (a.as_ref(), b.as_ref());
    check_gate(a)?;
    check_gate(b)?;
    let gates = tensor(&Gate::new(a.clone())?, &Gate::new(b.clone())?)?;
    Ok(events_from_state(&gates, 1))
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EquivalenceReport {
    pub sequential: EventDistribution,
    pub entangled: EventDistribution,
    pub max_abs_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Deviation between the sequential events and the entangled circuit's
    /// probabilities before the C-NOT; generally nonzero.
    pub intermediate_deviation: f64,
}

/// Compares the sequential and entangled circuits event by event.
pub fn equivalence_check(
    a: impl AsRef<Matrix>,
    b: impl AsRef<Matrix>,
    tol: f64,
) -> Result<EquivalenceReport> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::NonPositive {
            name: "tolerance",
            value: tol,
        });
    }
    let (a, b) = (a.as_ref(), b.as_ref());
    let sequential = sequential_measurement(a, b)?;
    let entangled = entangled_circuit(a, b)?;
    let max_abs_deviation = sequential.max_abs_diff(&entangled);

    let pre = apply(
        &tensor(&Gate::new(a.clone())?, &Gate::new(b.clone())?)?,
        &initial_state(2)?,
    )?;
    let intermediate_deviation = probabilities(&pre)
        .probabilities()
        .iter()
        .zip(sequential.as_array())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);

    Ok(EquivalenceReport {
        sequential,
        entangled,
        max_abs_deviation,
        tolerance: tol,
        passed: max_abs_deviation <= tol,
        intermediate_deviation,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReversalDecision {
    pub ratio: f64,
    pub switches: bool,
}

/// Whether a decision maker switches from the more attractive option
/// (cost `x2`) to the less attractive one (cost `x1`).
pub fn preference_reversal_switch(x1: f64, x2: f64) -> Result<ReversalDecision> {
    for (name, value) in [("x1", x1), ("x2", x2)] {
        if !value.is_finite() {
            return Err(Error::NonFinite(name));
        }
        if value <= 0.0 {
            return Err(Error::NonPositive { name, value });
        }
    }
    let ratio = x2 / x1;
    Ok(ReversalDecision {
        ratio,
        switches: ratio > REVERSAL_RATIO,
    })
}
