//! Exact Bayesian inference for a single agent.
//!
//! Bits are i.i.d. uniform and each reply coordinate depends only on the
//! matching message, so an agent's posterior factorises into independent
//! per-coordinate posteriors. [`expected_profit`] exploits that; the
//! `*_naive` and [`expected_profit_by_guess`] routes enumerate the full joint
//! space instead and serve as oracles for it.

use std::collections::BTreeMap;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{bits::bit_of, message_prob, price, BitVector, Scenario, SocialFunction, Strategy, StrategyProfile};
use crate::protocol::{Protocol, ReplyKernel};
use crate::rational::{half, int, serde_rational_vec, Rational};

/// `v_k = P(b_k = 1 | f_{i,k}, m_i, b_i)` for every coordinate `k`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PosteriorVector(#[serde(with = "serde_rational_vec")] Vec<Rational>);

impl PosteriorVector {
    pub fn new(v: Vec<Rational>) -> Self {
        Self(v)
    }

    pub fn uninformed(len: usize) -> Self {
        Self(vec![half(); len])
    }

    pub fn values(&self) -> &[Rational] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

/// One point of the joint sample space seen from agent `i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub b: BitVector,
    /// Messages `m_0..m_N`, with `m_0 = b_0`.
    pub m: Vec<u8>,
    /// Reply to the agent, coordinates `0..N`.
    pub f: Vec<u8>,
    pub weight: Rational,
}

/// `P(f = 0 | b)` when `m ~ s(b)` and `f ~ kernel(m)`.
fn reply_zero_given_bit(kernel: &ReplyKernel, s: &Strategy, b: u8) -> Rational {
    let m0 = message_prob(s, b);
    let m1 = Rational::one() - &m0;
    m0 * kernel.a00() + m1 * kernel.a01()
}

fn reply_given_bit(kernel: &ReplyKernel, s: &Strategy, b: u8, f: u8) -> Rational {
    let zero = reply_zero_given_bit(kernel, s, b);
    if f == 0 {
        zero
    } else {
        Rational::one() - zero
    }
}

/// Posterior `P(b_k = 1 | f_k)` under a uniform prior on `b_k`. For the
/// center pass [`Strategy::truthful`], since `m_0 = b_0`.
pub fn coordinate_posterior(kernel: &ReplyKernel, s_k: &Strategy, f_k: u8) -> Result<Rational> {
    let like0 = reply_given_bit(kernel, s_k, 0, f_k);
    let like1 = reply_given_bit(kernel, s_k, 1, f_k);
    let total = &like0 + &like1;
    if total.is_zero() {
        return Err(Error::ImpossibleEvidence);
    }
    Ok(like1 / total)
}

fn check_agent(scenario: &Scenario, agent: usize) -> Result<()> {
    if agent == 0 || agent > scenario.n_agents() {
        return Err(Error::Parameter(format!(
            "agent {agent} outside 1..={}",
            scenario.n_agents()
        )));
    }
    Ok(())
}

fn check_row(scenario: &Scenario, row: &[ReplyKernel]) -> Result<()> {
    if row.len() != scenario.n_agents() + 1 {
        return Err(Error::Dimension {
            expected: scenario.n_agents() + 1,
            got: row.len(),
        });
    }
    Ok(())
}

/// Agent `i`'s posterior vector after seeing reply `f` under `row`.
pub fn posterior_vector(
    scenario: &Scenario,
    profile: &StrategyProfile,
    row: &[ReplyKernel],
    i: usize,
    b_i: u8,
    m_i: u8,
    f: &[u8],
) -> Result<PosteriorVector> {
    check_agent(scenario, i)?;
    check_row(scenario, row)?;
    let len = scenario.n_agents() + 1;
    if f.len() != len {
        return Err(Error::Dimension { expected: len, got: f.len() });
    }
    // m_i is part of the information set but carries nothing beyond b_i
    // under independent bits; it must still be a possible message.
    if message_prob_of(profile.get(i), b_i, m_i).is_zero() {
        return Err(Error::ImpossibleEvidence);
    }
    let v = (0..len)
        .map(|k| {
            if k == i {
                Ok(int(b_i as i64))
            } else {
                coordinate_posterior(&row[k], &profile.coordinate_strategy(k), f[k])
            }
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(PosteriorVector(v))
}

fn message_prob_of(s: &Strategy, b: u8, m: u8) -> Rational {
    let zero = message_prob(s, b);
    if m == 0 {
        zero
    } else {
        Rational::one() - zero
    }
}

/// `P(g = 1)` when bit `k` is 1 independently with probability `v_k`.
pub fn g_posterior(g: &SocialFunction, v: &PosteriorVector) -> Rational {
    let len = g.n_agents() + 1;
    debug_assert_eq!(v.len(), len);
    let complement: Vec<Rational> = v.0.iter().map(|x| Rational::one() - x).collect();
    let mut total = Rational::zero();
    'outer: for index in 0..1usize << len {
        if !g.at_index(index) {
            continue;
        }
        let mut term = Rational::one();
        for k in 0..len {
            let factor = if bit_of(index, len, k) == 1 { &v.0[k] } else { &complement[k] };
            if factor.is_zero() {
                continue 'outer;
            }
            term *= factor;
        }
        total += term;
    }
    total
}

/// The guess rule's distribution over the submitted guess.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Guess {
    /// Probability of guessing 1.
    pub p_one: Rational,
}

impl Guess {
    pub fn prob_of(&self, guess: bool) -> Rational {
        if guess {
            self.p_one.clone()
        } else {
            Rational::one() - &self.p_one
        }
    }
}

fn guess_from_posterior(post: &Rational) -> Guess {
    let h = half();
    let p_one = if *post > h {
        Rational::one()
    } else if *post < h {
        Rational::zero()
    } else {
        h
    };
    Guess { p_one }
}

pub fn guess(g: &SocialFunction, v: &PosteriorVector) -> Guess {
    guess_from_posterior(&g_posterior(g, v))
}

fn max_side(post: &Rational) -> Rational {
    let other = Rational::one() - post;
    if *post >= other {
        post.clone()
    } else {
        other
    }
}

/// `V_i` for agent `i` under `protocol` at `profile`.
pub fn expected_profit(scenario: &Scenario, profile: &StrategyProfile, protocol: &Protocol, i: usize) -> Result<Rational> {
    check_agent(scenario, i)?;
    let plan = protocol.plan(scenario, profile)?;
    expected_profit_row(scenario, profile, plan.row(i), i)
}

/// `V_i` given agent `i`'s reply row directly.
///
/// Coordinates whose kernel ignores the message contribute posterior 1/2 and
/// are not enumerated.
pub fn expected_profit_row(scenario: &Scenario, profile: &StrategyProfile, row: &[ReplyKernel], i: usize) -> Result<Rational> {
    check_agent(scenario, i)?;
    check_row(scenario, row)?;
    let len = scenario.n_agents() + 1;

    // (coordinate, [(P(f_k = f), v_k) for each possible f])
    let mut active: Vec<(usize, Vec<(Rational, Rational)>)> = Vec::new();
    for k in (0..len).filter(|&k| k != i && !row[k].is_constant()) {
        let s_k = profile.coordinate_strategy(k);
        let mut branches = Vec::with_capacity(2);
        for f in 0..2u8 {
            let like0 = reply_given_bit(&row[k], &s_k, 0, f);
            let like1 = reply_given_bit(&row[k], &s_k, 1, f);
            let total = &like0 + &like1;
            if total.is_zero() {
                continue;
            }
            branches.push((&total * half(), like1 / total));
        }
        active.push((k, branches));
    }

    let mut v = vec![half(); len];
    let mut sum = Rational::zero();
    let mut choice = vec![0usize; active.len()];
    for b_i in 0..2u8 {
        v[i] = int(b_i as i64);
        loop {
            let mut weight = half();
            for (slot, (k, branches)) in active.iter().enumerate() {
                let (p, post) = &branches[choice[slot]];
                weight *= p;
                v[*k] = post.clone();
            }
            let post = g_posterior(scenario.g(), &PosteriorVector(v.clone()));
            sum += weight * max_side(&post);

            // odometer over the active coordinates
            let mut slot = 0;
            while slot < active.len() {
                choice[slot] += 1;
                if choice[slot] < active[slot].1.len() {
                    break;
                }
                choice[slot] = 0;
                slot += 1;
            }
            if slot == active.len() {
                break;
            }
        }
    }
    Ok(sum * scenario.profit(i))
}

/// Full joint enumeration of `(b, m, f)` for agent `i`, zero-weight points omitted.
pub fn enumerate_outcomes(scenario: &Scenario, profile: &StrategyProfile, row: &[ReplyKernel], i: usize) -> Result<Vec<Outcome>> {
    check_agent(scenario, i)?;
    check_row(scenario, row)?;
    let n = scenario.n_agents();
    let len = n + 1;
    let prior = Rational::new(1.into(), (1u64 << len).into());
    let mut out = Vec::new();
    for b_index in 0..1usize << len {
        let b = BitVector::from_index(len, b_index);
        for m_rest in 0..1usize << n {
            let mut m = vec![b.get(0)];
            m.extend((0..n).map(|j| bit_of(m_rest, n, j)));
            let mut w_m = prior.clone();
            for k in 1..len {
                w_m *= message_prob_of(profile.get(k), b.get(k), m[k]);
            }
            if w_m.is_zero() {
                continue;
            }
            for f_index in 0..1usize << len {
                let f: Vec<u8> = (0..len).map(|k| bit_of(f_index, len, k)).collect();
                let mut w = w_m.clone();
                for k in 0..len {
                    let zero = row[k].prob_zero(m[k]);
                    w *= if f[k] == 0 { zero.clone() } else { Rational::one() - zero };
                }
                if w.is_zero() {
                    continue;
                }
                out.push(Outcome {
                    b: b.clone(),
                    m: m.clone(),
                    f,
                    weight: w,
                });
            }
        }
    }
    Ok(out)
}

type Observation = (u8, u8, Vec<u8>);

/// `P(obs)` and `P(obs, g = 1)` for every observation `(b_i, m_i, f)`.
fn observation_table(g: &SocialFunction, outcomes: &[Outcome], i: usize) -> BTreeMap<Observation, (Rational, Rational)> {
    let mut table: BTreeMap<Observation, (Rational, Rational)> = BTreeMap::new();
    for o in outcomes {
        let entry = table
            .entry((o.b.get(i), o.m[i], o.f.clone()))
            .or_insert_with(|| (Rational::zero(), Rational::zero()));
        entry.0 += &o.weight;
        if g.at_index(o.b.index()) {
            entry.1 += &o.weight;
        }
    }
    table
}

/// `c_i · E[max(P(g=0 | obs), P(g=1 | obs))]` with posteriors obtained by
/// conditioning the full joint distribution.
pub fn expected_profit_naive(scenario: &Scenario, profile: &StrategyProfile, protocol: &Protocol, i: usize) -> Result<Rational> {
    check_agent(scenario, i)?;
    let plan = protocol.plan(scenario, profile)?;
    let outcomes = enumerate_outcomes(scenario, profile, plan.row(i), i)?;
    let mut sum = Rational::zero();
    for (total, ones) in observation_table(scenario.g(), &outcomes, i).into_values() {
        let zeros = &total - &ones;
        sum += if ones >= zeros { ones } else { zeros };
    }
    Ok(sum * scenario.profit(i))
}

/// Expected payoff of actually playing the guess rule (coin flip on ties),
/// summed outcome by outcome.
pub fn expected_profit_by_guess(scenario: &Scenario, profile: &StrategyProfile, protocol: &Protocol, i: usize) -> Result<Rational> {
    check_agent(scenario, i)?;
    let plan = protocol.plan(scenario, profile)?;
    let outcomes = enumerate_outcomes(scenario, profile, plan.row(i), i)?;
    let table = observation_table(scenario.g(), &outcomes, i);
    let mut sum = Rational::zero();
    for o in &outcomes {
        let (total, ones) = &table[&(o.b.get(i), o.m[i], o.f.clone())];
        let guess = guess_from_posterior(&(ones / total));
        sum += &o.weight * guess.prob_of(scenario.g().at_index(o.b.index()));
    }
    Ok(sum * scenario.profit(i))
}

/// `U_i = V_i - price_i(s_i)`.
pub fn utility(scenario: &Scenario, profile: &StrategyProfile, protocol: &Protocol, i: usize) -> Result<Rational> {
    let v = expected_profit(scenario, profile, protocol, i)?;
    Ok(v - price(scenario.price_fn(i), profile.get(i)))
}

/// `c_i · E[max_v P(g = v | bits in `known`)]` by enumeration.
fn best_guess_profit(scenario: &Scenario, i: usize, known: &[usize]) -> Rational {
    let len = scenario.n_agents() + 1;
    let g = scenario.g();
    let mut ones = vec![0u64; 1 << known.len()];
    let mut counts = vec![0u64; 1 << known.len()];
    for index in 0..1usize << len {
        let key = known
            .iter()
            .fold(0usize, |acc, &k| (acc << 1) | bit_of(index, len, k) as usize);
        counts[key] += 1;
        if g.at_index(index) {
            ones[key] += 1;
        }
    }
    let total = (1u64 << len) as i64;
    let best: u64 = ones.iter().zip(&counts).map(|(&o, &c)| o.max(c - o)).sum();
    Rational::new((best as i64).into(), total.into()) * scenario.profit(i)
}

/// Profit of the best guess from the agent's own bit alone.
pub fn baseline_profit(scenario: &Scenario, i: usize) -> Result<Rational> {
    check_agent(scenario, i)?;
    Ok(best_guess_profit(scenario, i, &[i]))
}

/// Profit of the best guess from the agent's own bit and the center's bit.
pub fn center_bonus_profit(scenario: &Scenario, i: usize) -> Result<Rational> {
    check_agent(scenario, i)?;
    Ok(best_guess_profit(scenario, i, &[0, i]))
}

/// `|v1_k - 1/2| >= |v2_k - 1/2|` for every coordinate.
pub fn dominates(v1: &PosteriorVector, v2: &PosteriorVector) -> Result<bool> {
    if v1.len() != v2.len() {
        return Err(Error::Dimension {
            expected: v1.len(),
            got: v2.len(),
        });
    }
    let h = half();
    let dist = |x: &Rational| {
        let d = x - &h;
        if d < Rational::zero() {
            -d
        } else {
            d
        }
    };
    Ok(v1.0.iter().zip(&v2.0).all(|(a, b)| dist(a) >= dist(b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::PriceFunction;
    use crate::rational::ratio;

    fn s(p: Rational, q: Rational) -> Strategy {
        Strategy::new(p, q).unwrap()
    }

    fn sc(name: &str, n: usize) -> Scenario {
        Scenario::symmetric_linear(SocialFunction::builtin(name, n).unwrap(), ratio(1, 10)).unwrap()
    }

    fn pv(v: &[Rational]) -> PosteriorVector {
        PosteriorVector::new(v.to_vec())
    }

    #[test]
    fn coordinate_posterior_examples() {
        let pt = ReplyKernel::pass_through();
        assert_eq!(
            coordinate_posterior(&pt, &s(ratio(4, 5), ratio(2, 5)), 0).unwrap(),
            ratio(1, 3)
        );
        for f in 0..2 {
            assert_eq!(
                coordinate_posterior(&ReplyKernel::uniform(), &s(ratio(4, 5), ratio(2, 5)), f).unwrap(),
                half()
            );
        }
        assert_eq!(coordinate_posterior(&pt, &Strategy::truthful(), 1).unwrap(), int(1));
        assert_eq!(coordinate_posterior(&pt, &s(ratio(3, 7), ratio(3, 7)), 0).unwrap(), half());
    }

    #[test]
    fn impossible_evidence() {
        // m = 0 always, so a pass-through reply of 1 cannot happen.
        let always_zero = s(int(1), int(1));
        assert!(matches!(
            coordinate_posterior(&ReplyKernel::pass_through(), &always_zero, 1),
            Err(Error::ImpossibleEvidence)
        ));
    }

    #[test]
    fn posterior_vector_examples() {
        let scenario = sc("parity", 2);
        let truthful = StrategyProfile::all_truthful(2);
        let fmax = Protocol::FMax.plan(&scenario, &truthful).unwrap();
        for index in 0..8 {
            let b = BitVector::from_index(3, index);
            let v = posterior_vector(&scenario, &truthful, fmax.row(1), 1, b.get(1), b.get(1), b.bits()).unwrap();
            let expect: Vec<Rational> = b.bits().iter().map(|&x| int(x as i64)).collect();
            assert_eq!(v.values(), expect.as_slice());
        }

        let fmin = Protocol::FMin.plan(&scenario, &truthful).unwrap();
        let v = posterior_vector(&scenario, &truthful, fmin.row(2), 2, 1, 1, &[0, 1, 0]).unwrap();
        assert_eq!(v.values(), &[half(), half(), int(1)]);

        let profile = StrategyProfile::new(vec![Strategy::truthful(), s(half(), half())]).unwrap();
        let comp = Protocol::competitive().plan(&scenario, &profile).unwrap();
        let v = posterior_vector(&scenario, &profile, comp.row(1), 1, 0, 0, &[1, 0, 1]).unwrap();
        assert_eq!(v.values(), &[int(1), int(0), half()]);
        let v = posterior_vector(&scenario, &profile, comp.row(1), 1, 1, 1, &[0, 1, 0]).unwrap();
        assert_eq!(v.values(), &[int(0), int(1), half()]);
        // a truthful agent with b_i = 0 cannot have sent m_i = 1
        assert!(posterior_vector(&scenario, &profile, comp.row(1), 1, 0, 1, &[0, 1, 0]).is_err());
    }

    #[test]
    fn g_posterior_examples() {
        let parity = SocialFunction::builtin("parity", 2).unwrap();
        assert_eq!(g_posterior(&parity, &pv(&[int(1), int(0), int(1)])), int(0));
        assert_eq!(g_posterior(&parity, &PosteriorVector::uninformed(3)), half());
        let and3 = SocialFunction::from_fn(2, |b| b.bits().iter().all(|&x| x == 1)).unwrap();
        assert_eq!(g_posterior(&and3, &pv(&[half(), int(1), int(1)])), half());
    }

    #[test]
    fn guess_examples() {
        assert_eq!(guess_from_posterior(&ratio(3, 4)).p_one, int(1));
        assert_eq!(guess_from_posterior(&half()).p_one, half());
        assert_eq!(guess_from_posterior(&int(0)).p_one, int(0));
        let parity = SocialFunction::builtin("parity", 2).unwrap();
        assert_eq!(guess(&parity, &pv(&[int(1), int(1), int(1)])).p_one, int(1));
    }

    #[test]
    fn expected_profit_examples() {
        let truthful = StrategyProfile::all_truthful(2);
        let zero = StrategyProfile::uniform(2, s(half(), half()));
        for name in ["parity", "majority", "and-xor-center", "dictator:0"] {
            let scenario = sc(name, 2);
            assert_eq!(expected_profit(&scenario, &truthful, &Protocol::FMax, 1).unwrap(), int(1));
        }
        assert_eq!(
            expected_profit(&sc("majority", 2), &zero, &Protocol::FMin, 1).unwrap(),
            ratio(3, 4)
        );
        assert_eq!(expected_profit(&sc("parity", 2), &zero, &Protocol::FMin, 1).unwrap(), half());
        let profile = StrategyProfile::new(vec![Strategy::truthful(), s(ratio(3, 5), ratio(3, 5))]).unwrap();
        assert_eq!(
            expected_profit(&sc("parity", 2), &profile, &Protocol::competitive(), 1).unwrap(),
            half()
        );
    }

    #[test]
    fn profit_scales_with_constant() {
        let g = SocialFunction::builtin("majority", 2).unwrap();
        let scenario = Scenario::new(
            g,
            vec![PriceFunction::linear(ratio(1, 10)).unwrap(); 2],
            vec![ratio(5, 2), int(1)],
        )
        .unwrap();
        let zero = StrategyProfile::uniform(2, s(half(), half()));
        assert_eq!(expected_profit(&scenario, &zero, &Protocol::FMin, 1).unwrap(), ratio(15, 8));
    }

    #[test]
    fn utility_examples() {
        let truthful = StrategyProfile::all_truthful(2);
        assert_eq!(
            utility(&sc("majority", 2), &truthful, &Protocol::competitive(), 1).unwrap(),
            ratio(9, 10)
        );
        let zero = StrategyProfile::uniform(2, s(half(), half()));
        assert_eq!(
            utility(&sc("parity", 2), &zero, &Protocol::competitive(), 2).unwrap(),
            half()
        );
        let mixed = StrategyProfile::new(vec![s(half(), half()), Strategy::truthful()]).unwrap();
        for protocol in Protocol::builtins(2) {
            let scenario = sc("and-xor-center", 2);
            assert_eq!(
                utility(&scenario, &mixed, &protocol, 1).unwrap(),
                expected_profit(&scenario, &mixed, &protocol, 1).unwrap()
            );
        }
    }

    #[test]
    fn baseline_and_bonus_examples() {
        let cases = [
            ("majority", ratio(3, 4), ratio(3, 4)),
            ("parity", half(), half()),
            ("and-xor-center", half(), ratio(3, 4)),
            ("dictator:0", half(), int(1)),
        ];
        for (name, base, bonus) in cases {
            let scenario = sc(name, 2);
            for i in 1..=2 {
                assert_eq!(baseline_profit(&scenario, i).unwrap(), base, "{name}");
                assert_eq!(center_bonus_profit(&scenario, i).unwrap(), bonus, "{name}");
            }
        }
    }

    #[test]
    fn dominates_examples() {
        let v1 = pv(&[int(0), int(1), half()]);
        let v2 = pv(&[ratio(1, 4), ratio(9, 10), half()]);
        assert!(dominates(&v1, &v2).unwrap());
        assert!(!dominates(&v2, &v1).unwrap());
        assert!(dominates(&v2, &PosteriorVector::uninformed(3)).unwrap());
        assert!(dominates(&v1, &v1).unwrap());
        assert!(matches!(
            dominates(&v1, &PosteriorVector::uninformed(2)),
            Err(Error::Dimension { .. })
        ));
    }

    #[test]
    fn outcome_weights_sum_to_one() {
        let scenario = sc("majority", 2);
        let profile = StrategyProfile::new(vec![s(ratio(4, 5), ratio(2, 5)), s(ratio(1, 3), ratio(1, 3))]).unwrap();
        let protocol = Protocol::garble(Protocol::competitive(), vec![ratio(3, 4), int(1), ratio(5, 8)]).unwrap();
        let plan = protocol.plan(&scenario, &profile).unwrap();
        for i in 1..=2 {
            let outcomes = enumerate_outcomes(&scenario, &profile, plan.row(i), i).unwrap();
            let total: Rational = outcomes.iter().map(|o| o.weight.clone()).sum();
            assert_eq!(total, int(1));
            assert!(outcomes.iter().all(|o| o.m[0] == o.b.get(0)));
        }
    }

    #[test]
    fn fast_matches_naive_and_guess_routes() {
        let protocols = vec![
            Protocol::competitive(),
            Protocol::fair_competitive(),
            Protocol::FMax,
            Protocol::FMin,
            Protocol::improve(Protocol::FMin),
            Protocol::garble(Protocol::FMax, vec![ratio(3, 4), ratio(5, 8), int(1)]).unwrap(),
        ];
        let profiles = [
            "1,0;1,0",
            "4/5,2/5;1/2,1/2",
            "9/10,1/10;1/5,3/5",
            "0,1;1,1",
            "1,1;1/4,0",
        ];
        for name in ["parity", "majority", "and-xor-center", "dictator:2"] {
            let scenario = sc(name, 2);
            for text in profiles {
                let profile = StrategyProfile::parse(text).unwrap();
                for protocol in &protocols {
                    for i in 1..=2 {
                        let fast = expected_profit(&scenario, &profile, protocol, i).unwrap();
                        let naive = expected_profit_naive(&scenario, &profile, protocol, i).unwrap();
                        let direct = expected_profit_by_guess(&scenario, &profile, protocol, i).unwrap();
                        assert_eq!(fast, naive, "{name} {text} {protocol} agent {i}");
                        assert_eq!(fast, direct, "{name} {text} {protocol} agent {i}");
                    }
                }
            }
        }
    }
}
