use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{format_rational, is_probability, parse_probability, Rational};

/// A conditional commitment: `p = P(m = 0 | b = 0)`, `q = P(m = 0 | b = 1)`.
///
/// Ordering is lexicographic on `(p, q)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Strategy {
    p: Rational,
    q: Rational,
}

impl Strategy {
    pub fn new(p: Rational, q: Rational) -> Result<Self> {
        for r in [&p, &q] {
            if !is_probability(r) {
                return Err(Error::InvalidProbability(format_rational(r)));
            }
        }
        Ok(Self { p, q })
    }

    /// The truthful strategy `(1, 0)`: the message always equals the bit.
    pub fn truthful() -> Self {
        Self {
            p: Rational::one(),
            q: Rational::zero(),
        }
    }

    /// The zero-information strategy `(c, c)`.
    pub fn zero_information(c: Rational) -> Result<Self> {
        Self::new(c.clone(), c)
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    pub fn q(&self) -> &Rational {
        &self.q
    }

    pub fn is_truthful(&self) -> bool {
        self.p.is_one() && self.q.is_zero()
    }

    pub fn is_zero_information(&self) -> bool {
        self.p == self.q
    }

    /// `|p - q|`.
    pub fn gap(&self) -> Rational {
        if self.p >= self.q {
            &self.p - &self.q
        } else {
            &self.q - &self.p
        }
    }

    /// Parses `"p,q"`.
    pub fn parse(s: &str) -> Result<Self> {
        let (p, q) = s
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("strategy `{s}` must be written `p,q`")))?;
        Self::new(parse_probability(p)?, parse_probability(q)?)
    }
}

impl fmt::Display for Strategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{}", format_rational(&self.p), format_rational(&self.q))
    }
}

#[derive(Serialize, Deserialize)]
struct StrategyWire {
    p: String,
    q: String,
}

impl Serialize for Strategy {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        StrategyWire {
            p: format_rational(&self.p),
            q: format_rational(&self.q),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for Strategy {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let w = StrategyWire::deserialize(d)?;
        let p = parse_probability(&w.p).map_err(serde::de::Error::custom)?;
        let q = parse_probability(&w.q).map_err(serde::de::Error::custom)?;
        Strategy::new(p, q).map_err(serde::de::Error::custom)
    }
}

/// `P(m = 0 | b)` under `s`.
pub fn message_prob(s: &Strategy, bit: u8) -> Rational {
    if bit == 0 {
        s.p.clone()
    } else {
        s.q.clone()
    }
}

/// Strategies of agents `1..=N`. The center has no strategy (`m_0 = b_0`).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct StrategyProfile {
    strategies: Vec<Strategy>,
}

impl StrategyProfile {
    pub fn new(strategies: Vec<Strategy>) -> Result<Self> {
        if strategies.is_empty() {
            return Err(Error::Dimension { expected: 1, got: 0 });
        }
        Ok(Self { strategies })
    }

    pub fn uniform(n_agents: usize, s: Strategy) -> Self {
        Self {
            strategies: vec![s; n_agents],
        }
    }

    pub fn all_truthful(n_agents: usize) -> Self {
        Self::uniform(n_agents, Strategy::truthful())
    }

    pub fn n_agents(&self) -> usize {
        self.strategies.len()
    }

    /// Strategy of agent `agent` (1-based, matching bit coordinates).
    pub fn get(&self, agent: usize) -> &Strategy {
        &self.strategies[agent - 1]
    }

    /// The strategy governing message coordinate `k`; the center reports truthfully.
    pub fn coordinate_strategy(&self, k: usize) -> Strategy {
        if k == 0 {
            Strategy::truthful()
        } else {
            self.get(k).clone()
        }
    }

    pub fn strategies(&self) -> &[Strategy] {
        &self.strategies
    }

    /// Copy of the profile with agent `agent` switched to `s`.
    pub fn with(&self, agent: usize, s: Strategy) -> Self {
        let mut next = self.clone();
        next.strategies[agent - 1] = s;
        next
    }

    pub fn is_all_truthful(&self) -> bool {
        self.strategies.iter().all(Strategy::is_truthful)
    }

    pub fn is_all_zero_information(&self) -> bool {
        self.strategies.iter().all(Strategy::is_zero_information)
    }

    /// Parses `"p1,q1;p2,q2;..."`.
    pub fn parse(s: &str) -> Result<Self> {
        let strategies = s
            .split(';')
            .filter(|part| !part.trim().is_empty())
            .map(Strategy::parse)
            .collect::<Result<Vec<_>>>()?;
        Self::new(strategies)
    }
}

impl fmt::Display for StrategyProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.strategies.iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join(";"))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{half, ratio};

    #[test]
    fn classification() {
        assert!(Strategy::truthful().is_truthful());
        let zi = Strategy::zero_information(ratio(3, 5)).unwrap();
        assert!(zi.is_zero_information());
        assert!(!zi.is_truthful());
        let flipped = Strategy::new(ratio(0, 1), ratio(1, 1)).unwrap();
        assert!(!flipped.is_truthful());
        assert_eq!(flipped.gap(), ratio(1, 1));
    }

    #[test]
    fn message_probabilities() {
        assert_eq!(message_prob(&Strategy::truthful(), 0), ratio(1, 1));
        let s = Strategy::new(ratio(4, 5), ratio(2, 5)).unwrap();
        assert_eq!(message_prob(&s, 1), ratio(2, 5));
        let c = Strategy::zero_information(ratio(3, 7)).unwrap();
        assert_eq!(message_prob(&c, 0), ratio(3, 7));
        assert_eq!(message_prob(&c, 1), ratio(3, 7));
    }

    #[test]
    fn rejects_out_of_range() {
        assert!(Strategy::new(ratio(6, 5), half()).is_err());
        assert!(Strategy::parse("1/2").is_err());
        assert!(StrategyProfile::parse("1/2,1/2;x,1").is_err());
    }

    #[test]
    fn profile_text_round_trip() {
        let prof = StrategyProfile::parse("1/1,0/1; 0.6,0.6").unwrap();
        assert_eq!(prof.n_agents(), 2);
        assert_eq!(prof.get(2), &Strategy::zero_information(ratio(3, 5)).unwrap());
        assert_eq!(StrategyProfile::parse(&prof.to_string()).unwrap(), prof);
        assert_eq!(prof.coordinate_strategy(0), Strategy::truthful());
    }

    #[test]
    fn serde_uses_string_rationals() {
        let s = Strategy::new(ratio(4, 5), ratio(2, 5)).unwrap();
        let json = serde_json::to_string(&s).unwrap();
        assert_eq!(json, r#"{"p":"4/5","q":"2/5"}"#);
        assert_eq!(serde_json::from_str::<Strategy>(&json).unwrap(), s);
        assert!(serde_json::from_str::<Strategy>(r#"{"p":"2/1","q":"0/1"}"#).is_err());
    }
}
