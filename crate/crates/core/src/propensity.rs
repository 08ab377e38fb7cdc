//! Propensity curves over log-price and the forces and energies they imply.
//!
//! A Gaussian propensity `P(x)` with mean `μ` and width `σ` generates the
//! entropic force `γ P'(x)/P(x) = -k (x - μ)` with `k = γ/σ²`. Reading the
//! curve as the ground state of a quantum harmonic oscillator with frequency
//! `ω` fixes the mass `m = ħ/(2ωσ²)` and the energy scale `γ = ħω/2`.

use std::f64::consts::PI;

use rand::Rng;
use rand_distr::{Distribution, Normal};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::quadrature::{simpson, SIMPSON_POINTS, WINDOW_SIGMAS};

/// Densities below this are treated as underflow.
pub const DENSITY_FLOOR: f64 = 1e-300;

/// Propensity ratio that triggers a preference reversal.
pub const REVERSAL_FACTOR: f64 = 3.0;

pub const DEFAULT_HBAR: f64 = 1.0;
pub const DEFAULT_OMEGA: f64 = 1.0;

fn positive(name: &'static str, value: f64) -> Result<f64> {
    if !value.is_finite() {
        return Err(Error::NonFinite(name));
    }
    if value <= 0.0 {
        return Err(Error::NonPositive { name, value });
    }
    Ok(value)
}

fn finite(name: &'static str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(Error::NonFinite(name))
    }
}

/// Converts a price in currency units to log-price.
pub fn log_price(price: f64) -> Result<f64> {
    positive("price", price).map(f64::ln)
}

fn gaussian_pdf(mu: f64, sigma: f64, x: f64) -> f64 {
    let z = (x - mu) / sigma;
    (-0.5 * z * z).exp() / (sigma * (2.0 * PI).sqrt())
}

/// Willingness to transact as a function of log-price.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PropensityCurve {
    Gaussian {
        mu: f64,
        sigma: f64,
    },
    /// A price that is fixed and not open to negotiation.
    PointMass {
        point: f64,
    },
}

impl PropensityCurve {
    pub fn gaussian(mu: f64, sigma: f64) -> Result<Self> {
        Ok(PropensityCurve::Gaussian {
            mu: finite("mu", mu)?,
            sigma: positive("sigma", sigma)?,
        })
    }

    pub fn point_mass(point: f64) -> Result<Self> {
        Ok(PropensityCurve::PointMass {
            point: finite("point", point)?,
        })
    }

    /// `(μ, σ)` of a Gaussian curve.
    pub fn gaussian_params(&self) -> Result<(f64, f64)> {
        match *self {
            PropensityCurve::Gaussian { mu, sigma } => Ok((mu, sigma)),
            PropensityCurve::PointMass { .. } => Err(Error::PointMass),
        }
    }

    /// Location of the curve: the mean, or the fixed price.
    pub fn center(&self) -> f64 {
        match *self {
            PropensityCurve::Gaussian { mu, .. } => mu,
            PropensityCurve::PointMass { point } => point,
        }
    }

    /// Simpson integral of the density over `[μ - 8σ, μ + 8σ]`.
    pub fn total_mass(&self) -> Result<f64> {
        let (mu, sigma) = self.gaussian_params()?;
        Ok(simpson(
            |x| gaussian_pdf(mu, sigma, x),
            mu - WINDOW_SIGMAS * sigma,
            mu + WINDOW_SIGMAS * sigma,
            SIMPSON_POINTS,
        ))
    }
}

/// Propensity density at log-price `x`.
pub fn density(c: &PropensityCurve, x: f64) -> Result<f64> {
    let (mu, sigma) = c.gaussian_params()?;
    Ok(gaussian_pdf(mu, sigma, x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ScaleProvenance {
    /// `γ = ħω/2`.
    OscillatorHalfHBarOmega,
    /// Supplied directly, e.g. as a thermal energy `k_B T`.
    Direct,
}

/// Energy scale `γ` multiplying `P'/P` in the entropic force.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EntropicScale {
    gamma: f64,
    provenance: ScaleProvenance,
}

impl EntropicScale {
    pub fn direct(gamma: f64) -> Result<Self> {
        Ok(Self {
            gamma: positive("gamma", gamma)?,
            provenance: ScaleProvenance::Direct,
        })
    }

    pub fn oscillator(omega: f64, hbar: f64) -> Result<Self> {
        let omega = positive("omega", omega)?;
        let hbar = positive("hbar", hbar)?;
        Ok(Self {
            gamma: hbar * omega / 2.0,
            provenance: ScaleProvenance::OscillatorHalfHBarOmega,
        })
    }

    pub fn gamma(&self) -> f64 {
        self.gamma
    }

    pub fn provenance(&self) -> ScaleProvenance {
        self.provenance
    }
}

impl Default for EntropicScale {
    fn default() -> Self {
        Self::oscillator(DEFAULT_OMEGA, DEFAULT_HBAR).expect("positive defaults")
    }
}

fn guarded_log_density(mu: f64, sigma: f64, x: f64) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::NonFinite("log-price"));
    }
    if gaussian_pdf(mu, sigma, x) < DENSITY_FLOOR {
        return Err(Error::ZeroDensity(x));
    }
    let z = (x - mu) / sigma;
    Ok(-0.5 * z * z - (sigma * (2.0 * PI).sqrt()).ln())
}

/// Entropic force `γ P'(x)/P(x)` at log-price `x`.
pub fn entropic_force(c: &PropensityCurve, x: f64, scale: &EntropicScale) -> Result<f64> {
    let (mu, sigma) = c.gaussian_params()?;
    guarded_log_density(mu, sigma, x)?;
    Ok(-scale.gamma * (x - mu) / (sigma * sigma))
}

/// Quantum harmonic oscillator whose ground state reproduces a propensity curve.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct OscillatorParams {
    pub hbar: f64,
    pub omega: f64,
    pub sigma: f64,
    /// `ħ / (2ωσ²)`
    pub mass: f64,
    /// `γ / σ²`
    pub k: f64,
    /// `ħω / 2`
    pub gamma: f64,
}

impl OscillatorParams {
    pub fn scale(&self) -> EntropicScale {
        EntropicScale {
            gamma: self.gamma,
            provenance: ScaleProvenance::OscillatorHalfHBarOmega,
        }
    }

    /// Ground-state width recovered from the mass, `√(ħ/(2mω))`.
    pub fn ground_state_sigma(&self) -> f64 {
        (self.hbar / (2.0 * self.mass * self.omega)).sqrt()
    }
}

pub fn oscillator_from_curve(
    c: &PropensityCurve,
    omega: f64,
    hbar: f64,
) -> Result<OscillatorParams> {
    let omega = positive("omega", omega)?;
    let hbar = positive("hbar", hbar)?;
    let (_, sigma) = c.gaussian_params()?;
    let variance = sigma * sigma;
    let gamma = hbar * omega / 2.0;
    Ok(OscillatorParams {
        hbar,
        omega,
        sigma,
        mass: hbar / (2.0 * omega * variance),
        k: gamma / variance,
        gamma,
    })
}

/// Position density `|ψ₀(x)|²` of the oscillator ground state centred on `mu`.
pub fn ground_state_density(p: &OscillatorParams, mu: f64, x: f64) -> f64 {
    let variance = p.hbar / (2.0 * p.mass * p.omega);
    let z2 = (x - mu) * (x - mu) / variance;
    (-0.5 * z2).exp() / (2.0 * PI * variance).sqrt()
}

/// Product of buyer and seller propensities, renormalized.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct JointPropensity {
    pub buyer: PropensityCurve,
    pub seller: PropensityCurve,
    pub joint: PropensityCurve,
    /// Total mass of the raw product before renormalizing.
    pub scale: f64,
}

impl JointPropensity {
    /// Entropic force acting on a transaction at `x`.
    ///
    /// For a fixed price the force comes from the negotiating side alone.
    pub fn force(&self, x: f64, scale: &EntropicScale) -> Result<f64> {
        match (self.joint, self.buyer, self.seller) {
            (PropensityCurve::Gaussian { .. }, _, _) => entropic_force(&self.joint, x, scale),
            (PropensityCurve::PointMass { .. }, c @ PropensityCurve::Gaussian { .. }, _)
            | (PropensityCurve::PointMass { .. }, _, c @ PropensityCurve::Gaussian { .. }) => {
                entropic_force(&c, x, scale)
            }
            _ => Err(Error::PointMass),
        }
    }

    /// Raw (unnormalized) product `P_b(x) P_s(x)`; zero away from a fixed price.
    pub fn raw_density(&self, x: f64) -> Result<f64> {
        match self.joint {
            PropensityCurve::Gaussian { .. } => Ok(self.scale * density(&self.joint, x)?),
            PropensityCurve::PointMass { .. } => Err(Error::PointMass),
        }
    }
}

/// Closed-form Gaussian product of two propensity curves.
pub fn joint_propensity(
    buyer: &PropensityCurve,
    seller: &PropensityCurve,
) -> Result<JointPropensity> {
    let (mu_b, sigma_b) = buyer.gaussian_params()?;
    let (mu_s, sigma_s) = seller.gaussian_params()?;
    let (var_b, var_s) = (sigma_b * sigma_b, sigma_s * sigma_s);
    let var = var_b * var_s / (var_b + var_s);
    let mu = var * (mu_b / var_b + mu_s / var_s);
    let scale = gaussian_pdf(mu_b - mu_s, (var_b + var_s).sqrt(), 0.0);
    Ok(JointPropensity {
        buyer: *buyer,
        seller: *seller,
        joint: PropensityCurve::gaussian(mu, var.sqrt())?,
        scale,
    })
}

/// Joint propensity when the seller fixes the price at log-price `price`.
pub fn fixed_price_joint(counterparty: &PropensityCurve, price: f64) -> Result<JointPropensity> {
    let fixed = PropensityCurve::point_mass(price)?;
    Ok(JointPropensity {
        buyer: *counterparty,
        seller: fixed,
        joint: fixed,
        scale: density(counterparty, price)?,
    })
}

/// Work `γ ln(P(x2)/P(x1))` done moving the mental state from `x1` to `x2`.
///
/// Under this sign convention a move toward the mean yields a positive value.
pub fn work(c: &PropensityCurve, x1: f64, x2: f64, scale: &EntropicScale) -> Result<f64> {
    let (mu, sigma) = c.gaussian_params()?;
    let l1 = guarded_log_density(mu, sigma, x1)?;
    let l2 = guarded_log_density(mu, sigma, x2)?;
    Ok(scale.gamma * (l2 - l1))
}

/// Work associated with a given propensity ratio `P(x2)/P(x1)`.
pub fn work_for_ratio(ratio: f64, scale: &EntropicScale) -> Result<f64> {
    Ok(scale.gamma * positive("propensity ratio", ratio)?.ln())
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReversalEnergy {
    /// `(ħω/2) ln 3`
    pub exact: f64,
    /// `ħω/2`, taking the factor of 3 as roughly `e`.
    pub approx: f64,
    /// `exact/approx - 1 = ln 3 - 1`.
    pub relative_gap: f64,
}

/// Energy needed to shift a propensity by the reversal factor of 3.
pub fn reversal_energy(omega: f64, hbar: f64) -> Result<ReversalEnergy> {
    let scale = EntropicScale::oscillator(omega, hbar)?;
    let exact = scale.gamma * REVERSAL_FACTOR.ln();
    let approx = scale.gamma;
    Ok(ReversalEnergy {
        exact,
        approx,
        relative_gap: exact / approx - 1.0,
    })
}

/// Draws `n` transaction log-prices from the joint propensity.
pub fn sample_prices<R: Rng + ?Sized>(
    j: &JointPropensity,
    n: usize,
    rng: &mut R,
) -> Result<Vec<f64>> {
    if n == 0 {
        return Err(Error::NonPositive {
            name: "sample count",
            value: 0.0,
        });
    }
    match j.joint {
        PropensityCurve::PointMass { point } => Ok(vec![point; n]),
        PropensityCurve::Gaussian { mu, sigma } => {
            let normal =
                Normal::new(mu, sigma).map_err(|e| Error::InvalidDistribution(e.to_string()))?;
            Ok((0..n).map(|_| normal.sample(rng)).collect())
        }
    }
}
