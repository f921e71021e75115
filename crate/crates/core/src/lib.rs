//! Exact-arithmetic laboratory for the privacy-aware data-curation game.
//!
//! Agents commit to randomized reporting strategies for their private bits,
//! a center replies according to a protocol, and each agent guesses a social
//! function of all bits. The crate evaluates profits and utilities exactly,
//! implements the competitive and fair competitive protocols, and checks
//! equilibrium claims on finite strategy grids.

pub mod battery;
pub mod cli;
pub mod equilibrium;
pub mod error;
pub mod inference;
pub mod model;
pub mod montecarlo;
pub mod protocol;
pub mod rational;
pub mod verify;

pub use error::{Error, Result};
pub use model::{BitVector, PriceFunction, Scenario, SocialFunction, Strategy, StrategyProfile};
pub use protocol::{Protocol, Ranking, ReplyKernel, ReplyPlan};
pub use rational::Rational;
