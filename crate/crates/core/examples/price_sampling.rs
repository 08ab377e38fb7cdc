//! Draws transaction prices from the joint propensity curve.

use qprop::propensity::{joint_propensity, log_price, sample_prices, PropensityCurve};
use qprop::qcore::seeded_rng;

fn main() -> qprop::Result<()> {
    let buyer = PropensityCurve::gaussian(log_price(1.05)?, 0.1)?;
    let seller = PropensityCurve::gaussian(log_price(0.95)?, 0.1)?;
    let j = joint_propensity(&buyer, &seller)?;
    let prices: Vec<f64> = sample_prices(&j, 10_000, &mut seeded_rng(3))?
        .into_iter()
        .map(f64::exp)
        .collect();
    let mean = prices.iter().sum::<f64>() / prices.len() as f64;
    let mut sorted = prices.clone();
    sorted.sort_by(f64::total_cmp);
    println!("n = {}", prices.len());
    println!("mean price   {mean:.4}");
    println!("median price {:.4}", sorted[sorted.len() / 2]);
    println!("5%..95%      {:.4} .. {:.4}", sorted[500], sorted[9500]);
    Ok(())
}
