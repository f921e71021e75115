//! Static vocabulary of the game: bits, strategies, social functions, prices
//! and the scenario that bundles them.

pub(crate) mod bits;
mod price;
mod scenario;
mod social;
mod strategy;

pub use bits::BitVector;
pub use price::{price, relative_price, PriceFunction};
pub use scenario::{PriceDoc, Scenario, ScenarioDoc, SocialFunctionDoc};
pub use social::{eval_social_function, SocialFunction};
pub use strategy::{message_prob, Strategy, StrategyProfile};
