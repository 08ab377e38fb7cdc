//! Executes a [`Model`] and renders its results as CSV and JSON.

use serde::Serialize;
use serde_json::{json, Value};

use super::args::*;
use super::format::{num, Csv};
use super::CliError;
use crate::cognition::{
    equivalence_check, interference_term, measured_b_yes, order_effect_circuit,
    order_effect_magnitude, preference_reversal_switch, sample_sequential, unmeasured_b_yes,
    DecisionScenario, Event, QuestionOrder,
};
use crate::error::Error;
use crate::propensity::{
    density, entropic_force, fixed_price_joint, joint_propensity, log_price, oscillator_from_curve,
    reversal_energy, sample_prices, work, EntropicScale, JointPropensity, PropensityCurve,
};
use crate::qcore::{random_unitary_2x2, rotation_gate, seeded_rng};

/// Results of one model run.
#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub payload: Value,
    pub csv: String,
    /// Set when the run completed but its check did not pass (exit code 1).
    pub failure: Option<String>,
    /// Human-readable summary for standard error.
    pub note: Option<String>,
}

impl Report {
    fn new(payload: Value, csv: Csv) -> Self {
        Report {
            payload,
            csv: csv.finish(),
            failure: None,
            note: None,
        }
    }
}

fn invalid(e: Error) -> CliError {
    CliError::Usage(e.to_string())
}

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("plain data serializes")
}

fn angles(theta: f64, phi: f64, degrees: bool) -> (f64, f64) {
    if degrees {
        (theta.to_radians(), phi.to_radians())
    } else {
        (theta, phi)
    }
}

fn scale(gamma: Option<f64>, omega: f64, hbar: f64) -> Result<EntropicScale, CliError> {
    match gamma {
        Some(g) => EntropicScale::direct(g),
        None => EntropicScale::oscillator(omega, hbar),
    }
    .map_err(invalid)
}

fn grid(lo: f64, hi: f64, points: usize) -> Result<Vec<f64>, CliError> {
    if points < 2 {
        return Err(CliError::Usage(format!(
            "grid needs at least 2 points, got {points}"
        )));
    }
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(CliError::Usage(format!("invalid grid bounds [{lo}, {hi}]")));
    }
    let step = (hi - lo) / (points - 1) as f64;
    Ok((0..points)
        .map(|i| {
            if i == points - 1 {
                hi
            } else {
                lo + i as f64 * step
            }
        })
        .collect())
}

pub fn execute(model: &Model) -> Result<Report, CliError> {
    match model {
        Model::OrderEffect(a) => order_effect(a),
        Model::Interference(a) => interference(a),
        Model::Equivalence(a) => equivalence(a),
        Model::Reversal(a) => reversal(a),
        Model::Force(a) => force(a),
        Model::Oscillator(a) => oscillator(a),
        Model::Joint(a) => joint(a),
        Model::Work(a) => work_done(a),
        Model::Sample(a) => sample(a),
    }
}

fn order_effect(a: &OrderEffectArgs) -> Result<Report, CliError> {
    let (theta, phi) = angles(a.theta, a.phi, a.degrees);
    let orders: &[QuestionOrder] = match a.order {
        OrderArg::Ab => &[QuestionOrder::AThenB],
        OrderArg::Ba => &[QuestionOrder::BThenA],
        OrderArg::Both => &[QuestionOrder::AThenB, QuestionOrder::BThenA],
    };
    let mut csv = Csv::new(&[
        "order", "A+B+", "A+B-", "A-B+", "A-B-", "A_yes", "A_no", "B_yes", "B_no",
    ]);
    let mut rows = Vec::new();
    for &order in orders {
        let scenario = DecisionScenario::new(theta, phi, order).map_err(invalid)?;
        let events = order_effect_circuit(&scenario);
        let m = events.marginals();
        csv.row(
            std::iter::once(to_value(&order).as_str().unwrap_or_default().to_owned()).chain(
                events
                    .as_array()
                    .iter()
                    .chain(m.as_array().iter())
                    .map(|&p| num(p)),
            ),
        );
        rows.push(json!({ "order": order, "joint": events, "marginals": m }));
    }
    let payload = json!({
        "theta": theta,
        "phi": phi,
        "rows": rows,
        "order_effect": order_effect_magnitude(theta, phi),
    });
    Ok(Report::new(payload, csv))
}

fn interference(a: &InterferenceArgs) -> Result<Report, CliError> {
    let (theta, phi) = angles(a.theta, a.phi, a.degrees);
    let unmeasured = unmeasured_b_yes(theta, phi).map_err(invalid)?;
    let measured = measured_b_yes(theta, phi).map_err(invalid)?;
    let term = interference_term(theta, phi);
    let magnitude = order_effect_magnitude(theta, phi);

    let mut header = vec![
        "theta",
        "phi",
        "unmeasured_B_yes",
        "measured_B_yes",
        "interference",
        "order_effect",
    ];
    let mut fields = vec![
        num(theta),
        num(phi),
        num(unmeasured),
        num(measured),
        num(term),
        num(magnitude),
    ];
    let mut payload = json!({
        "theta": theta,
        "phi": phi,
        "unmeasured_b_yes": unmeasured,
        "measured_b_yes": measured,
        "interference": term,
        "order_effect": magnitude,
    });

    if let Some(trials) = a.trials {
        let seed = a.seed.ok_or_else(|| {
            CliError::Usage("sampling requires a seed (--seed or QPROP_SEED)".into())
        })?;
        let first = rotation_gate(theta).map_err(invalid)?;
        let second = rotation_gate(-phi).map_err(invalid)?;
        let freq =
            sample_sequential(&first, &second, trials, &mut seeded_rng(seed)).map_err(invalid)?;
        let sampled = freq.b_yes();
        let se = (measured * (1.0 - measured) / trials as f64).sqrt();
        header.extend(["trials", "seed", "sampled_B_yes", "std_error"]);
        fields.extend([trials.to_string(), seed.to_string(), num(sampled), num(se)]);
        payload["trials"] = json!(trials);
        payload["seed"] = json!(seed);
        payload["sampled_b_yes"] = json!(sampled);
        payload["std_error"] = json!(se);
        payload["counts"] = json!(Event::ALL
            .iter()
            .map(|e| (e.label().to_owned(), json!(freq.counts[e.index()])))
            .collect::<serde_json::Map<_, _>>());
    }
    let mut csv = Csv::new(&header);
    csv.row(fields);
    Ok(Report::new(payload, csv))
}

fn equivalence(a: &EquivalenceArgs) -> Result<Report, CliError> {
    if a.trials == 0 {
        return Err(CliError::Usage("trials must be at least 1".into()));
    }
    if a.tol.is_nan() || a.tol <= 0.0 {
        return Err(CliError::Model(format!(
            "tolerance must be positive, got {}: the two circuits agree up to floating-point \
             rounding, so exact equality is not required",
            a.tol
        )));
    }
    let mut rng = seeded_rng(a.seed);
    let mut csv = Csv::new(&["trial", "max_abs_deviation", "moduli_deviation", "passed"]);
    let (mut worst, mut worst_moduli, mut failures) = (0.0f64, 0.0f64, 0u64);
    for trial in 0..a.trials {
        let first = random_unitary_2x2(&mut rng);
        let second = random_unitary_2x2(&mut rng);
        let report = equivalence_check(&first, &second, a.tol)
            .map_err(|e| CliError::Model(e.to_string()))?;
        let b = |i, j| second.get(i, j).norm_sqr();
        let moduli = (b(0, 1) - b(1, 0)).abs().max((b(0, 0) - b(1, 1)).abs());
        let passed = report.passed && moduli <= a.tol;
        if !passed {
            failures += 1;
        }
        worst = worst.max(report.max_abs_deviation);
        worst_moduli = worst_moduli.max(moduli);
        csv.row([
            (trial + 1).to_string(),
            num(report.max_abs_deviation),
            num(moduli),
            passed.to_string(),
        ]);
    }
    let payload = json!({
        "trials": a.trials,
        "seed": a.seed,
        "tol": a.tol,
        "max_abs_deviation": worst,
        "max_moduli_deviation": worst_moduli,
        "failures": failures,
        "passed": failures == 0,
    });
    let mut report = Report::new(payload, csv);
    report.note = Some(format!(
        "max deviation {} over {} trials (tol {}): {}",
        num(worst),
        a.trials,
        num(a.tol),
        if failures == 0 {
            "all passed"
        } else {
            "FAILED"
        }
    ));
    if failures > 0 {
        report.failure = Some(format!(
            "{failures} of {} trials exceeded the tolerance",
            a.trials
        ));
    }
    Ok(report)
}

fn reversal(a: &ReversalArgs) -> Result<Report, CliError> {
    let d = preference_reversal_switch(a.x1, a.x2).map_err(invalid)?;
    let mut csv = Csv::new(&["x1", "x2", "ratio", "switches"]);
    csv.row([num(a.x1), num(a.x2), num(d.ratio), d.switches.to_string()]);
    let payload = json!({ "x1": a.x1, "x2": a.x2, "ratio": d.ratio, "switches": d.switches });
    Ok(Report::new(payload, csv))
}

fn force(a: &ForceArgs) -> Result<Report, CliError> {
    let mu = log_price(a.price).map_err(invalid)?;
    let curve = PropensityCurve::gaussian(mu, a.sigma).map_err(invalid)?;
    let s = scale(a.gamma, a.omega, a.hbar)?;
    let xs = grid(
        a.x_min.unwrap_or(mu - 4.0 * a.sigma),
        a.x_max.unwrap_or(mu + 4.0 * a.sigma),
        a.points,
    )?;
    let k = s.gamma() / (a.sigma * a.sigma);
    let mut csv = Csv::new(&["x", "price", "density", "force"]);
    let mut rows = Vec::with_capacity(xs.len());
    for &x in &xs {
        let p = density(&curve, x).map_err(invalid)?;
        let f = entropic_force(&curve, x, &s).map_err(invalid)?;
        csv.row([num(x), num(x.exp()), num(p), num(f)]);
        rows.push(json!({ "x": x, "price": x.exp(), "density": p, "force": f }));
    }
    let payload = json!({
        "curve": curve,
        "scale": s,
        "k": k,
        "grid": rows,
    });
    Ok(Report::new(payload, csv))
}

fn oscillator(a: &OscillatorArgs) -> Result<Report, CliError> {
    let curve = PropensityCurve::gaussian(0.0, a.sigma).map_err(invalid)?;
    let p = oscillator_from_curve(&curve, a.omega, a.hbar).map_err(invalid)?;
    let e = reversal_energy(a.omega, a.hbar).map_err(invalid)?;
    let mut csv = Csv::new(&[
        "sigma",
        "omega",
        "hbar",
        "mass",
        "k",
        "gamma",
        "reversal_energy",
        "reversal_energy_approx",
    ]);
    csv.row([
        num(p.sigma),
        num(p.omega),
        num(p.hbar),
        num(p.mass),
        num(p.k),
        num(p.gamma),
        num(e.exact),
        num(e.approx),
    ]);
    let payload = json!({ "oscillator": p, "reversal_energy": e });
    Ok(Report::new(payload, csv))
}

fn curves(
    buyer_price: f64,
    buyer_sigma: f64,
    seller_price: Option<f64>,
    seller_sigma: Option<f64>,
    fixed_price: Option<f64>,
) -> Result<JointPropensity, CliError> {
    let buyer = PropensityCurve::gaussian(log_price(buyer_price).map_err(invalid)?, buyer_sigma)
        .map_err(invalid)?;
    match (seller_price, seller_sigma, fixed_price) {
        (Some(price), Some(sigma), None) => {
            let seller = PropensityCurve::gaussian(log_price(price).map_err(invalid)?, sigma)
                .map_err(invalid)?;
            joint_propensity(&buyer, &seller).map_err(invalid)
        }
        (None, None, Some(price)) => {
            fixed_price_joint(&buyer, log_price(price).map_err(invalid)?).map_err(invalid)
        }
        _ => Err(CliError::Usage(
            "give either seller_price and seller_sigma, or fixed_price".into(),
        )),
    }
}

fn joint(a: &JointArgs) -> Result<Report, CliError> {
    let j = curves(
        a.buyer_price,
        a.buyer_sigma,
        a.seller_price,
        a.seller_sigma,
        a.fixed_price,
    )?;
    let s = scale(a.gamma, a.omega, a.hbar)?;
    let (mu_b, sigma_b) = j.buyer.gaussian_params().map_err(invalid)?;
    let (lo, hi) = match j.seller {
        PropensityCurve::Gaussian { mu, sigma } => (
            (mu_b - 4.0 * sigma_b).min(mu - 4.0 * sigma),
            (mu_b + 4.0 * sigma_b).max(mu + 4.0 * sigma),
        ),
        PropensityCurve::PointMass { point } => (
            (mu_b - 4.0 * sigma_b).min(point),
            (mu_b + 4.0 * sigma_b).max(point),
        ),
    };
    let xs = grid(a.x_min.unwrap_or(lo), a.x_max.unwrap_or(hi), a.points)?;

    let optional = |c: &PropensityCurve, f: &dyn Fn(&PropensityCurve) -> crate::Result<f64>| match c
    {
        PropensityCurve::Gaussian { .. } => f(c).map(Some),
        PropensityCurve::PointMass { .. } => Ok(None),
    };
    let cell = |v: Option<f64>| v.map(num).unwrap_or_default();

    let mut csv = Csv::new(&[
        "x",
        "price",
        "buyer_density",
        "seller_density",
        "joint_density",
        "buyer_force",
        "seller_force",
        "joint_force",
    ]);
    let mut rows = Vec::with_capacity(xs.len());
    for &x in &xs {
        let bd = density(&j.buyer, x).map_err(invalid)?;
        let sd = optional(&j.seller, &|c| density(c, x)).map_err(invalid)?;
        let jd = optional(&j.joint, &|c| density(c, x)).map_err(invalid)?;
        let bf = entropic_force(&j.buyer, x, &s).map_err(invalid)?;
        let sf = optional(&j.seller, &|c| entropic_force(c, x, &s)).map_err(invalid)?;
        let jf = j.force(x, &s).map_err(invalid)?;
        csv.row([
            num(x),
            num(x.exp()),
            num(bd),
            cell(sd),
            cell(jd),
            num(bf),
            cell(sf),
            num(jf),
        ]);
        rows.push(json!({
            "x": x,
            "price": x.exp(),
            "buyer_density": bd,
            "seller_density": sd,
            "joint_density": jd,
            "buyer_force": bf,
            "seller_force": sf,
            "joint_force": jf,
        }));
    }
    let payload = json!({
        "buyer": j.buyer,
        "seller": j.seller,
        "joint": j.joint,
        "scale": j.scale,
        "entropic_scale": s,
        "grid": rows,
    });
    Ok(Report::new(payload, csv))
}

fn work_done(a: &WorkArgs) -> Result<Report, CliError> {
    let mu = log_price(a.price).map_err(invalid)?;
    let curve = PropensityCurve::gaussian(mu, a.sigma).map_err(invalid)?;
    let s = scale(a.gamma, a.omega, a.hbar)?;
    let x1 = log_price(a.from_price).map_err(invalid)?;
    let x2 = log_price(a.to_price).map_err(invalid)?;
    let energy = work(&curve, x1, x2, &s).map_err(|e| CliError::Model(e.to_string()))?;
    let ratio = (energy / s.gamma()).exp();
    let mut csv = Csv::new(&[
        "from_price",
        "to_price",
        "x1",
        "x2",
        "gamma",
        "propensity_ratio",
        "work",
    ]);
    csv.row([
        num(a.from_price),
        num(a.to_price),
        num(x1),
        num(x2),
        num(s.gamma()),
        num(ratio),
        num(energy),
    ]);
    let payload = json!({
        "curve": curve,
        "scale": s,
        "x1": x1,
        "x2": x2,
        "propensity_ratio": ratio,
        "work": energy,
    });
    Ok(Report::new(payload, csv))
}

fn sample(a: &SampleArgs) -> Result<Report, CliError> {
    let j = curves(
        a.buyer_price,
        a.buyer_sigma,
        a.seller_price,
        a.seller_sigma,
        a.fixed_price,
    )?;
    let xs = sample_prices(&j, a.n, &mut seeded_rng(a.seed)).map_err(invalid)?;
    let n = xs.len() as f64;
    let mean = xs.iter().sum::<f64>() / n;
    let std = if xs.len() > 1 {
        (xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (n - 1.0)).sqrt()
    } else {
        0.0
    };
    let mut csv = Csv::new(&["index", "x", "price"]);
    for (i, x) in xs.iter().enumerate() {
        csv.row([(i + 1).to_string(), num(*x), num(x.exp())]);
    }
    let payload = json!({
        "joint": j.joint,
        "scale": j.scale,
        "n": a.n,
        "seed": a.seed,
        "mean": mean,
        "std": std,
        "samples": xs,
    });
    Ok(Report::new(payload, csv))
}
