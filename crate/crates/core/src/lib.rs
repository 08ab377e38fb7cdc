//! Quantum-probability models of economic decision making.
//!
//! * [`qcore`]: exact one- and two-qubit statevector engine.
//! * [`cognition`]: decision circuits for order effects, interference
//!   (the disjunction effect) and preference reversal, plus the equivalence
//!   between sequential measurement and the entangled two-qubit circuit.
//! * [`propensity`]: propensity curves over log-price, entropic forces,
//!   the oscillator mass/energy mapping and buyer/seller joint propensities.
//! * [`cli`]: the `qprop` command-line surface.

pub mod cli;
pub mod cognition;
pub mod error;
pub mod propensity;
pub mod qcore;
pub mod quadrature;

pub use error::{Error, Result};
