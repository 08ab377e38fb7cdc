//! Buyer and seller curves combine into a joint curve around the mid-price.

use qprop::propensity::{
    fixed_price_joint, joint_propensity, log_price, EntropicScale, PropensityCurve,
};

fn main() -> qprop::Result<()> {
    let buyer = PropensityCurve::gaussian(log_price(1.05)?, 0.1)?;
    let seller = PropensityCurve::gaussian(log_price(0.95)?, 0.1)?;
    let j = joint_propensity(&buyer, &seller)?;
    let (mu, sigma) = j.joint.gaussian_params()?;
    println!(
        "joint curve: price {:.6}, log-price width {sigma:.6}",
        mu.exp()
    );
    println!("overlap mass: {:.6}", j.scale);

    let scale = EntropicScale::default();
    for price in [0.9, 1.0, 1.1] {
        let x = log_price(price)?;
        println!("force at price {price}: {:.4}", j.force(x, &scale)?);
    }

    // a seller who will not negotiate
    let fixed = fixed_price_joint(&buyer, log_price(1.0)?)?;
    println!("fixed price 1.0: buyer density there {:.6}", fixed.scale);
    Ok(())
}
