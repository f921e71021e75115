use std::path::Path;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{PriceFunction, SocialFunction};
use crate::rational::{format_rational, parse_rational, Rational};

/// One experiment configuration: the social function plus each agent's price
/// and profit constant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Scenario {
    name: Option<String>,
    n_agents: usize,
    g: SocialFunction,
    prices: Vec<PriceFunction>,
    profits: Vec<Rational>,
}

impl Scenario {
    pub fn new(g: SocialFunction, prices: Vec<PriceFunction>, profits: Vec<Rational>) -> Result<Self> {
        let n = g.n_agents();
        for len in [prices.len(), profits.len()] {
            if len != n {
                return Err(Error::Dimension { expected: n, got: len });
            }
        }
        if let Some(pf) = prices.iter().find(|pf| !pf.is_continuous()) {
            return Err(Error::InvalidPriceFunction(format!(
                "{pf:?} cannot be an agent price; agent prices must be power-of-gap"
            )));
        }
        if let Some(c) = profits.iter().find(|c| **c <= Rational::zero()) {
            return Err(Error::Parameter(format!(
                "profit constant {} must be positive",
                format_rational(c)
            )));
        }
        Ok(Self {
            name: None,
            n_agents: n,
            g,
            prices,
            profits,
        })
    }

    /// Every agent gets `weight · |p - q|` and profit 1.
    pub fn symmetric_linear(g: SocialFunction, weight: Rational) -> Result<Self> {
        let n = g.n_agents();
        Self::new(g, vec![PriceFunction::linear(weight)?; n], vec![Rational::one(); n])
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn id(&self) -> String {
        self.name.clone().unwrap_or_else(|| "unnamed".to_string())
    }

    pub fn n_agents(&self) -> usize {
        self.n_agents
    }

    pub fn g(&self) -> &SocialFunction {
        &self.g
    }

    /// Price function of agent `agent` (1-based).
    pub fn price_fn(&self, agent: usize) -> &PriceFunction {
        &self.prices[agent - 1]
    }

    pub fn prices(&self) -> &[PriceFunction] {
        &self.prices
    }

    /// Profit constant `c_i` of agent `agent` (1-based).
    pub fn profit(&self, agent: usize) -> &Rational {
        &self.profits[agent - 1]
    }

    pub fn profits(&self) -> &[Rational] {
        &self.profits
    }

    /// Agents `1..=N`.
    pub fn agents(&self) -> std::ops::RangeInclusive<usize> {
        1..=self.n_agents
    }

    /// Relabels agents: agent `k` becomes agent `perm[k - 1]`.
    pub fn permute_agents(&self, perm: &[usize]) -> Result<Self> {
        let g = self.g.permute_agents(perm)?;
        let mut prices = self.prices.clone();
        let mut profits = self.profits.clone();
        for (k, &target) in perm.iter().enumerate() {
            prices[target - 1] = self.prices[k].clone();
            profits[target - 1] = self.profits[k].clone();
        }
        let mut out = Self::new(g, prices, profits)?;
        out.name = self.name.clone();
        Ok(out)
    }

    pub fn to_doc(&self) -> ScenarioDoc {
        let social_function = match self.g.builtin_name() {
            Some(name) => SocialFunctionDoc::Builtin {
                builtin: name.to_string(),
            },
            None => SocialFunctionDoc::Table {
                table: self.g.table_string(),
            },
        };
        let prices = self
            .prices
            .iter()
            .map(|pf| match pf {
                PriceFunction::PowerOfGap { weight, exponent } => PriceDoc {
                    form: None,
                    weight: format_rational(weight),
                    exponent: format!("{exponent}/1"),
                },
                PriceFunction::Indicator => PriceDoc {
                    form: Some("indicator".into()),
                    weight: "1/1".into(),
                    exponent: "1/1".into(),
                },
            })
            .collect();
        ScenarioDoc {
            name: self.name.clone(),
            n_agents: self.n_agents,
            social_function,
            prices,
            profits: self.profits.iter().map(format_rational).collect(),
        }
    }

    pub fn from_doc(doc: &ScenarioDoc) -> Result<Self> {
        let g = match &doc.social_function {
            SocialFunctionDoc::Builtin { builtin } => SocialFunction::builtin(builtin, doc.n_agents)?,
            SocialFunctionDoc::Table { table } => SocialFunction::from_table_str(doc.n_agents, table)?,
        };
        let prices = doc
            .prices
            .iter()
            .map(|p| match p.form.as_deref() {
                None | Some("power-of-gap") => {
                    PriceFunction::power_of_gap(parse_rational(&p.weight)?, parse_rational(&p.exponent)?)
                }
                Some("indicator") => Ok(PriceFunction::Indicator),
                Some(other) => Err(Error::InvalidPriceFunction(format!("unknown form `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        let profits = doc
            .profits
            .iter()
            .map(|c| parse_rational(c))
            .collect::<Result<Vec<_>>>()?;
        let mut scenario = Self::new(g, prices, profits)?;
        scenario.name = doc.name.clone();
        Ok(scenario)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let doc: ScenarioDoc = serde_json::from_str(text)?;
        Self::from_doc(&doc)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(&self.to_doc())?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)?;
        let mut scenario = Self::from_json(&text)?;
        if scenario.name.is_none() {
            scenario.name = path.file_stem().map(|s| s.to_string_lossy().into_owned());
        }
        Ok(scenario)
    }
}

/// Serialized scenario. Rationals are `"num/den"` strings.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub name: Option<String>,
    pub n_agents: usize,
    pub social_function: SocialFunctionDoc,
    pub prices: Vec<PriceDoc>,
    pub profits: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged, deny_unknown_fields)]
pub enum SocialFunctionDoc {
    Builtin { builtin: String },
    Table { table: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PriceDoc {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub form: Option<String>,
    pub weight: String,
    pub exponent: String,
}
