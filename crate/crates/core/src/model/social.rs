use crate::error::{Error, Result};
use crate::model::BitVector;

/// A binary function of all `N + 1` bits, stored as its truth table.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SocialFunction {
    n_agents: usize,
    table: Vec<bool>,
    builtin: Option<String>,
}

impl SocialFunction {
    pub fn from_table(n_agents: usize, table: Vec<bool>) -> Result<Self> {
        if n_agents == 0 {
            return Err(Error::Parameter("a social function needs at least one agent".into()));
        }
        let expected = 1usize << (n_agents + 1);
        if table.len() != expected {
            return Err(Error::Dimension {
                expected,
                got: table.len(),
            });
        }
        Ok(Self {
            n_agents,
            table,
            builtin: None,
        })
    }

    /// Parses a `'0'`/`'1'` string in table-index order.
    pub fn from_table_str(n_agents: usize, table: &str) -> Result<Self> {
        let bits = table
            .trim()
            .chars()
            .map(|c| match c {
                '0' => Ok(false),
                '1' => Ok(true),
                other => Err(Error::Parse(format!("truth table character `{other}`"))),
            })
            .collect::<Result<Vec<_>>>()?;
        Self::from_table(n_agents, bits)
    }

    pub fn from_fn(n_agents: usize, f: impl Fn(&BitVector) -> bool) -> Result<Self> {
        if n_agents == 0 {
            return Err(Error::Parameter("a social function needs at least one agent".into()));
        }
        let table = BitVector::all(n_agents + 1).map(|b| f(&b)).collect();
        Self::from_table(n_agents, table)
    }

    /// Builds a named builtin:
    ///
    /// * `parity`: XOR of all bits
    /// * `majority`: more than half of all bits are 1
    /// * `and-xor-center`: `b_0 XOR (b_1 AND ... AND b_N)`
    /// * `dictator:k`: copies bit `k` (`k = 0` is the center)
    /// * `constant:v`: always `v`
    pub fn builtin(name: &str, n_agents: usize) -> Result<Self> {
        let len = n_agents + 1;
        let mut g = match name.split_once(':') {
            None => match name {
                "parity" => Self::from_fn(n_agents, |b| b.bits().iter().filter(|&&x| x == 1).count() % 2 == 1)?,
                "majority" => Self::from_fn(n_agents, |b| 2 * b.bits().iter().filter(|&&x| x == 1).count() > len)?,
                "and-xor-center" => Self::from_fn(n_agents, |b| {
                    let all = b.bits()[1..].iter().all(|&x| x == 1);
                    (b.get(0) == 1) ^ all
                })?,
                _ => return Err(Error::Config(format!("unknown social function `{name}`"))),
            },
            Some(("dictator", k)) => {
                let k: usize = k
                    .parse()
                    .map_err(|_| Error::Parse(format!("dictator index `{k}`")))?;
                if k >= len {
                    return Err(Error::Parameter(format!("dictator index {k} out of range 0..{len}")));
                }
                Self::from_fn(n_agents, |b| b.get(k) == 1)?
            }
            Some(("constant", v)) => {
                let v = match v {
                    "0" => false,
                    "1" => true,
                    _ => return Err(Error::Parse(format!("constant value `{v}`"))),
                };
                Self::from_fn(n_agents, |_| v)?
            }
            _ => return Err(Error::Config(format!("unknown social function `{name}`"))),
        };
        g.builtin = Some(name.to_string());
        Ok(g)
    }

    pub fn n_agents(&self) -> usize {
        self.n_agents
    }

    pub fn table(&self) -> &[bool] {
        &self.table
    }

    pub fn builtin_name(&self) -> Option<&str> {
        self.builtin.as_deref()
    }

    pub fn table_string(&self) -> String {
        self.table.iter().map(|&v| if v { '1' } else { '0' }).collect()
    }

    #[inline]
    pub fn at_index(&self, index: usize) -> bool {
        self.table[index]
    }

    /// The complementary function `1 - g`.
    pub fn negate(&self) -> Self {
        Self {
            n_agents: self.n_agents,
            table: self.table.iter().map(|v| !v).collect(),
            builtin: None,
        }
    }

    /// Relabels agents: agent `k` of `self` becomes agent `perm[k - 1]` of the result.
    /// The center stays at coordinate 0.
    pub fn permute_agents(&self, perm: &[usize]) -> Result<Self> {
        if perm.len() != self.n_agents {
            return Err(Error::Dimension {
                expected: self.n_agents,
                got: perm.len(),
            });
        }
        let len = self.n_agents + 1;
        Self::from_fn(self.n_agents, |b| {
            let mut orig = vec![0u8; len];
            orig[0] = b.get(0);
            for (k, &target) in perm.iter().enumerate() {
                orig[k + 1] = b.get(target);
            }
            self.table[BitVector::new(orig).unwrap().index()]
        })
    }
}

pub fn eval_social_function(g: &SocialFunction, b: &BitVector) -> Result<bool> {
    if b.len() != g.n_agents + 1 {
        return Err(Error::Dimension {
            expected: g.n_agents + 1,
            got: b.len(),
        });
    }
    Ok(g.table[b.index()])
}
