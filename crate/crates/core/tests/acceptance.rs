//! End-to-end acceptance checks, one per numbered criterion.
//!
//! Run with `cargo test -p qprop --test acceptance -- --nocapture` to see the
//! per-criterion PASS/FAIL lines.

use std::f64::consts::PI;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::Rng;

use qprop::cognition::{
    entangled_circuit, interference_term, measured_b_yes, order_effect_circuit,
    order_effect_summary, preference_reversal_switch, sample_sequential, sequential_measurement,
    unmeasured_b_yes, DecisionScenario, Event, QuestionOrder,
};
use qprop::propensity::{
    density, entropic_force, ground_state_density, joint_propensity, oscillator_from_curve,
    reversal_energy, work, work_for_ratio, EntropicScale, PropensityCurve,
};
use qprop::qcore::{random_unitary_2x2, rotation_gate, seeded_rng};

const LN_3: f64 = 1.098_612_288_668_109_6;

struct Outcome {
    id: u32,
    title: &'static str,
    failures: Vec<String>,
    elapsed: Duration,
    budget: Duration,
}

fn criterion(
    id: u32,
    title: &'static str,
    budget_secs: f64,
    body: impl FnOnce(&mut Vec<String>),
) -> Outcome {
    let start = Instant::now();
    let mut failures = Vec::new();
    body(&mut failures);
    let elapsed = start.elapsed();
    let budget = Duration::from_secs_f64(budget_secs);
    if elapsed > budget {
        failures.push(format!("took {elapsed:?}, budget {budget:?}"));
    }
    Outcome {
        id,
        title,
        failures,
        elapsed,
        budget,
    }
}

fn check(failures: &mut Vec<String>, ok: bool, what: impl FnOnce() -> String) {
    if !ok && failures.len() < 5 {
        failures.push(what());
    }
}

fn grid() -> Vec<(f64, f64)> {
    let angles: Vec<f64> = (0..24).map(|k| k as f64 * PI / 24.0).collect();
    angles
        .iter()
        .flat_map(|&t| angles.iter().map(move |&p| (t, p)))
        .collect()
}

fn c2(x: f64) -> f64 {
    x.cos().powi(2)
}

fn s2(x: f64) -> f64 {
    x.sin().powi(2)
}

fn table_1() -> Outcome {
    criterion(1, "joint probabilities on the 576-point grid", 1.0, |f| {
        let pts = grid();
        check(f, pts.len() == 576, || {
            format!("grid has {} points", pts.len())
        });
        for (t, p) in pts {
            let got =
                order_effect_circuit(&DecisionScenario::new(t, p, QuestionOrder::AThenB).unwrap());
            let want = [c2(t) * c2(p), c2(t) * s2(p), s2(t) * s2(p), s2(t) * c2(p)];
            for (e, w) in Event::ALL.iter().zip(want) {
                let d = (got.get(*e) - w).abs();
                check(f, d <= 1e-12, || {
                    format!("θ={t} φ={p} {}: off by {d:e}", e.label())
                });
            }
        }
    })
}

fn table_2() -> Outcome {
    criterion(
        2,
        "both-order marginals and nonzero order effect",
        1.0,
        |f| {
            for (t, p) in grid() {
                let s = order_effect_summary(t, p).unwrap();
                let ab = [
                    c2(t),
                    s2(t),
                    c2(t) * c2(p) + s2(t) * s2(p),
                    c2(t) * s2(p) + s2(t) * c2(p),
                ];
                let ba = [
                    c2(t - p) * c2(p) + s2(t - p) * s2(p),
                    c2(t - p) * s2(p) + s2(t - p) * c2(p),
                    c2(t - p),
                    s2(t - p),
                ];
                for (got, want) in [(s.a_then_b.as_array(), ab), (s.b_then_a.as_array(), ba)] {
                    for i in 0..4 {
                        let d = (got[i] - want[i]).abs();
                        check(f, d <= 1e-12, || {
                            format!("θ={t} φ={p} marginal {i}: off by {d:e}")
                        });
                    }
                }
                let driver = (2.0 * t).sin() * (2.0 * p).sin();
                if driver.abs() > 1e-9 {
                    let delta = s.a_then_b.b_yes - s.b_then_a.b_yes;
                    check(f, delta.abs() > 1e-6, || {
                        format!("θ={t} φ={p}: order effect only {delta:e}")
                    });
                }
            }
        },
    )
}

fn appendix() -> Outcome {
    criterion(
        3,
        "sequential measurement equals entangled circuit",
        1.0,
        |f| {
            let mut rng = seeded_rng(20_211_231);
            for i in 0..1000 {
                let a = random_unitary_2x2(&mut rng);
                let b = random_unitary_2x2(&mut rng);
                let (a11, a21) = (a.get(0, 0), a.get(1, 0));
                let (b11, b12, b21, b22) = (b.get(0, 0), b.get(0, 1), b.get(1, 0), b.get(1, 1));
                // direct products straight from the matrix entries
                let want = [
                    (a11 * b11).norm_sqr(),
                    (a11 * b21).norm_sqr(),
                    (a21 * b12).norm_sqr(),
                    (a21 * b22).norm_sqr(),
                ];
                let seq = sequential_measurement(&a, &b).unwrap().as_array();
                let ent = entangled_circuit(&a, &b).unwrap().as_array();
                for k in 0..4 {
                    let d = (seq[k] - ent[k]).abs().max((seq[k] - want[k]).abs());
                    check(f, d <= 1e-12, || {
                        format!("pair {i} event {k}: off by {d:e}")
                    });
                }
                let m1 = (b12.norm_sqr() - b21.norm_sqr()).abs();
                let m2 = (b11.norm_sqr() - b22.norm_sqr()).abs();
                check(f, m1.max(m2) <= 1e-12, || {
                    format!("pair {i}: moduli off by {:e}", m1.max(m2))
                });
            }
        },
    )
}

fn interference() -> Outcome {
    criterion(
        4,
        "interference identity and collapse simulation",
        5.0,
        |f| {
            for (t, p) in grid() {
                let lhs = c2(t - p) - (c2(t) * c2(p) + s2(t) * s2(p));
                let d = (lhs - interference_term(t, p)).abs();
                check(f, d <= 1e-12, || {
                    format!("θ={t} φ={p}: identity off by {d:e}")
                });
                let u = unmeasured_b_yes(t, p).unwrap() - c2(t - p);
                let m = measured_b_yes(t, p).unwrap() - (c2(t) * c2(p) + s2(t) * s2(p));
                check(f, u.abs().max(m.abs()) <= 1e-12, || {
                    format!("θ={t} φ={p}: protocol off by {:e}", u.abs().max(m.abs()))
                });
            }
            let n = 100_000;
            for (t, p) in [(PI / 4.0, PI / 4.0), (0.3, 1.1), (1.2, -0.4)] {
                let freq = sample_sequential(
                    &rotation_gate(t).unwrap(),
                    &rotation_gate(-p).unwrap(),
                    n,
                    &mut seeded_rng(42),
                )
                .unwrap();
                let want = c2(t) * c2(p) + s2(t) * s2(p);
                let se = (want * (1.0 - want) / n as f64).sqrt();
                let got = freq.b_yes();
                check(f, (got - want).abs() <= 3.0 * se, || {
                    format!("θ={t} φ={p}: sampled {got} vs {want} (se {se:e})")
                });
            }
        },
    )
}

fn gaussian_pdf(mu: f64, sigma: f64, x: f64) -> f64 {
    (-(x - mu).powi(2) / (2.0 * sigma * sigma)).exp() / (sigma * (2.0 * PI).sqrt())
}

fn force() -> Outcome {
    criterion(5, "entropic force from finite differences", 1.0, |f| {
        let mut rng = seeded_rng(5);
        let scale = EntropicScale::default();
        let gamma = scale.gamma();
        for _ in 0..20 {
            let mu = rng.random_range(-1.0..1.0);
            let sigma = rng.random_range(0.05..1.0);
            let c = PropensityCurve::gaussian(mu, sigma).unwrap();
            let k = gamma / (sigma * sigma);
            let h = 1e-5 * sigma;
            for i in 0..61 {
                let x = mu + (i as f64 - 30.0) / 10.0 * sigma;
                let fd = gamma
                    * (density(&c, x + h).unwrap().ln() - density(&c, x - h).unwrap().ln())
                    / (2.0 * h);
                let want = -k * (x - mu);
                // relative to the force one sigma from the mean where it vanishes
                let denom = want.abs().max(k * sigma);
                let e1 = (fd - want).abs() / denom;
                let e2 = (entropic_force(&c, x, &scale).unwrap() - want).abs() / denom;
                check(f, e1.max(e2) <= 1e-6, || {
                    format!("μ={mu} σ={sigma} x={x}: rel err {:e}", e1.max(e2))
                });
            }
            let other =
                PropensityCurve::gaussian(rng.random_range(-1.0..1.0), rng.random_range(0.05..1.0))
                    .unwrap();
            let j = joint_propensity(&c, &other).unwrap();
            for i in 0..61 {
                let x = mu + (i as f64 - 30.0) / 10.0 * sigma;
                let sum = entropic_force(&c, x, &scale).unwrap()
                    + entropic_force(&other, x, &scale).unwrap();
                let d = (j.force(x, &scale).unwrap() - sum).abs();
                check(f, d <= 1e-9 * sum.abs().max(1.0), || {
                    format!("joint force at {x} off by {d:e}")
                });
            }
        }
    })
}

fn simpson(g: impl Fn(f64) -> f64, a: f64, b: f64, n: usize) -> f64 {
    let h = (b - a) / n as f64;
    let inner: f64 = (1..n)
        .map(|i| g(a + i as f64 * h) * if i % 2 == 1 { 4.0 } else { 2.0 })
        .sum();
    (g(a) + g(b) + inner) * h / 3.0
}

fn gaussian_product() -> Outcome {
    criterion(6, "Gaussian product against quadrature", 2.0, |f| {
        let mut rng = seeded_rng(6);
        for _ in 0..20 {
            let (mb, sb) = (rng.random_range(-0.5..0.5), rng.random_range(0.05..0.5));
            let (ms, ss) = (rng.random_range(-0.5..0.5), rng.random_range(0.05..0.5));
            let j = joint_propensity(
                &PropensityCurve::gaussian(mb, sb).unwrap(),
                &PropensityCurve::gaussian(ms, ss).unwrap(),
            )
            .unwrap();
            let (mu, sigma) = j.joint.gaussian_params().unwrap();
            let raw = |x: f64| gaussian_pdf(mb, sb, x) * gaussian_pdf(ms, ss, x);
            // the product is concentrated between the two means
            let (lo, hi) = (
                mb.min(ms) - 12.0 * sb.max(ss),
                mb.max(ms) + 12.0 * sb.max(ss),
            );
            let n = 20_000;
            let mass = simpson(raw, lo, hi, n);
            let mean = simpson(|x| x * raw(x), lo, hi, n) / mass;
            let var = simpson(|x| (x - mean).powi(2) * raw(x), lo, hi, n) / mass;
            let dm = (j.scale - mass).abs() / mass;
            let dmu = (mu - mean).abs();
            let dv = (sigma * sigma - var).abs();
            check(f, dm <= 1e-8 && dmu <= 1e-8 && dv <= 1e-8, || {
                format!(
                    "buyer N({mb},{sb}) seller N({ms},{ss}): mass {dm:e} mean {dmu:e} var {dv:e}"
                )
            });
        }
    })
}

fn oscillator() -> Outcome {
    criterion(7, "oscillator closure", 1.0, |f| {
        let mut rng = seeded_rng(7);
        for _ in 0..20 {
            let (mu, sigma) = (rng.random_range(-1.0..1.0), rng.random_range(0.05..2.0));
            let (omega, hbar) = (rng.random_range(0.1..5.0), rng.random_range(0.1..5.0));
            let c = PropensityCurve::gaussian(mu, sigma).unwrap();
            let p = oscillator_from_curve(&c, omega, hbar).unwrap();
            let errs = [
                (p.mass - hbar / (2.0 * omega * sigma * sigma)).abs() / p.mass,
                (p.k - p.gamma / (sigma * sigma)).abs() / p.k,
                (p.gamma - hbar * omega / 2.0).abs() / p.gamma,
            ];
            check(f, errs.iter().all(|e| *e <= 1e-12), || {
                format!("σ={sigma} ω={omega} ħ={hbar}: {errs:?}")
            });
            for i in 0..41 {
                let x = mu + (i as f64 - 20.0) / 5.0 * sigma;
                let want = gaussian_pdf(mu, sigma, x);
                let d = (ground_state_density(&p, mu, x) - want).abs();
                check(f, d <= 1e-12 * want.max(1.0), || {
                    format!("σ={sigma} x={x}: density off by {d:e}")
                });
            }
        }
        let unit =
            oscillator_from_curve(&PropensityCurve::gaussian(0.0, 1.0).unwrap(), 1.0, 1.0).unwrap();
        check(f, unit.mass == 0.5 && unit.gamma == 0.5, || {
            format!("m={} γ={}", unit.mass, unit.gamma)
        });
    })
}

fn reversal() -> Outcome {
    criterion(8, "energy of preference reversal", 1.0, |f| {
        let e = reversal_energy(1.0, 1.0).unwrap();
        check(f, (e.exact - 0.5 * LN_3).abs() <= 1e-12, || {
            format!("exact {}", e.exact)
        });
        check(
            f,
            (e.exact - 0.549_306_144_334_054_8).abs() <= 1e-12,
            || format!("exact {}", e.exact),
        );
        check(f, e.approx == 0.5, || format!("approx {}", e.approx));
        let unit = EntropicScale::direct(1.0).unwrap();
        let w = work_for_ratio(3.0, &unit).unwrap();
        check(f, (w - LN_3).abs() <= 1e-12, || {
            format!("work for ratio 3 = {w}")
        });
        // the same energy from two points of a curve whose densities differ by 3
        let c = PropensityCurve::gaussian(0.0, 1.0).unwrap();
        let x = (2.0 * LN_3).sqrt();
        let path = work(&c, 0.0, x, &unit).unwrap();
        check(f, (path.abs() - LN_3).abs() <= 1e-12, || {
            format!("path work {path}")
        });
        for (x2, want) in [(1.0, false), (2.999, false), (3.0, false), (3.001, true)] {
            let got = preference_reversal_switch(1.0, x2).unwrap().switches;
            check(f, got == want, || format!("ratio {x2}: switches={got}"));
        }
    })
}

fn reproducibility() -> Outcome {
    criterion(9, "byte-identical CLI reruns", 30.0, |f| {
        let bin = env!("CARGO_BIN_EXE_qprop");
        let root = env!("CARGO_MANIFEST_DIR");
        let commands: Vec<Vec<String>> = [
            "order-effect --theta 0.5235987755982988 --phi 0.7853981633974483",
            "order-effect --theta 0.6 --phi 0.6 --order ba",
            "interference --theta 0.7853981633974483 --phi 0.7853981633974483 --trials 100000 --seed 42 --output json",
            "equivalence --trials 25 --seed 7",
            "reversal --x1 1 --x2 4",
            "force --price 1 --sigma 0.25 --points 21",
            "oscillator --sigma 0.1",
            "joint --buyer-price 1.05 --buyer-sigma 0.1 --seller-price 0.95 --seller-sigma 0.1 --points 501",
            "joint --buyer-price 1.05 --buyer-sigma 0.1 --fixed-price 1.0 --points 9",
            "work --price 1 --sigma 1 --from-price 1 --to-price 2.718281828459045 --gamma 1",
            "sample --buyer-price 1.05 --buyer-sigma 0.1 --seller-price 0.95 --seller-sigma 0.1 --n 20 --seed 7",
        ]
        .iter()
        .map(|c| c.split(' ').map(str::to_owned).collect())
        .chain(["order_effect.toml", "joint_curves.toml"].iter().map(|n| vec!["run".to_owned(), format!("{root}/configs/{n}")]))
        .collect();
        for args in &commands {
            let runs: Vec<_> = (0..2)
                .map(|_| {
                    Command::new(bin)
                        .args(args)
                        .env_remove("QPROP_SEED")
                        .output()
                        .unwrap()
                })
                .collect();
            let ok = runs.iter().all(|o| o.status.success()) && runs[0].stdout == runs[1].stdout;
            check(f, ok, || {
                format!("`qprop {}` differs between runs", args.join(" "))
            });
        }
        // run records carry wall time, so compare only their results
        for name in ["reversal.toml", "sample.toml", "equivalence.toml"] {
            let results: Vec<String> = (0..2)
                .map(|_| {
                    let o = Command::new(bin)
                        .args(["run", &format!("{root}/configs/{name}")])
                        .output()
                        .unwrap();
                    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
                    v["results"].to_string()
                })
                .collect();
            check(f, results[0] == results[1], || {
                format!("{name}: results differ")
            });
        }
    })
}

#[test]
fn acceptance_criteria() {
    let start = Instant::now();
    let outcomes = [
        table_1(),
        table_2(),
        appendix(),
        interference(),
        force(),
        gaussian_product(),
        oscillator(),
        reversal(),
        reproducibility(),
    ];
    let total = start.elapsed();
    let mut failed = Vec::new();
    for o in &outcomes {
        let status = if o.failures.is_empty() {
            "PASS"
        } else {
            "FAIL"
        };
        println!(
            "criterion {}: {status} {} ({:.3}s, budget {:.0}s)",
            o.id,
            o.title,
            o.elapsed.as_secs_f64(),
            o.budget.as_secs_f64()
        );
        for msg in &o.failures {
            println!("    {msg}");
        }
        if !o.failures.is_empty() {
            failed.push(o.id);
        }
    }
    println!(
        "acceptance suite: {:.3}s total, budget 60s",
        total.as_secs_f64()
    );
    assert!(
        total < Duration::from_secs(60),
        "acceptance suite took {total:?}"
    );
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
