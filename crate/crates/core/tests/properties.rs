use curation_game::inference::{
    baseline_profit, expected_profit, expected_profit_by_guess, expected_profit_naive, g_posterior, utility, PosteriorVector,
};
use curation_game::protocol::{competitive_case, CompetitiveCase};
use curation_game::rational::{half, int, ratio};
use curation_game::{PriceFunction, Protocol, Ranking, Rational, ReplyKernel, Scenario, SocialFunction, Strategy, StrategyProfile};
use proptest::prelude::*;
use proptest::strategy::Strategy as _;

fn grid_strategy(g: i64) -> impl proptest::strategy::Strategy<Value = Strategy> {
    (0..=g, 0..=g).prop_map(move |(a, b)| Strategy::new(ratio(a, g), ratio(b, g)).unwrap())
}

fn profile(n: usize) -> impl proptest::strategy::Strategy<Value = StrategyProfile> {
    proptest::collection::vec(grid_strategy(10), n).prop_map(|v| StrategyProfile::new(v).unwrap())
}

fn table(n: usize) -> impl proptest::strategy::Strategy<Value = SocialFunction> {
    proptest::collection::vec(any::<bool>(), 1 << (n + 1)).prop_map(move |t| SocialFunction::from_table(n, t).unwrap())
}

/// Random table, per-agent weights in tenths, exponents 1 or 2, profits 1 or 2.
fn scenario(n: usize) -> impl proptest::strategy::Strategy<Value = Scenario> {
    (
        table(n),
        proptest::collection::vec((1..=9i64, 1..=2u32), n),
        proptest::collection::vec(1..=2i64, n),
    )
        .prop_map(move |(g, prices, profits)| {
            let prices = prices
                .into_iter()
                .map(|(w, a)| PriceFunction::power_of_gap(ratio(w, 10), int(a as i64)).unwrap())
                .collect();
            Scenario::new(g, prices, profits.into_iter().map(int).collect()).unwrap()
        })
}

fn noise() -> impl proptest::strategy::Strategy<Value = Rational> {
    (4..=8i64).prop_map(|k| ratio(k, 8))
}

fn builtin_protocol() -> impl proptest::strategy::Strategy<Value = Protocol> {
    prop_oneof![
        Just(Protocol::competitive()),
        Just(Protocol::fair_competitive()),
        Just(Protocol::FMax),
        Just(Protocol::FMin),
    ]
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn garbling_composes(a00 in 0..=8i64, a01 in 0..=8i64, z in noise(), z2 in noise()) {
        let k = ReplyKernel::new(ratio(a00, 8), ratio(a01, 8)).unwrap();
        let combined = &z * &z2 + (int(1) - &z) * (int(1) - &z2);
        prop_assert_eq!(k.garbled(&z).garbled(&z2), k.garbled(&combined));
    }

    #[test]
    fn garbled_protocols_compose(sc in scenario(2), p in profile(2), base in builtin_protocol(),
                                 z in proptest::collection::vec(noise(), 3), z2 in proptest::collection::vec(noise(), 3)) {
        let twice = Protocol::garble(Protocol::garble(base.clone(), z.clone()).unwrap(), z2.clone()).unwrap();
        let combined: Vec<Rational> = z.iter().zip(&z2).map(|(a, b)| a * b + (int(1) - a) * (int(1) - b)).collect();
        let once = Protocol::garble(base, combined).unwrap();
        prop_assert_eq!(twice.plan(&sc, &p).unwrap(), once.plan(&sc, &p).unwrap());
    }

    #[test]
    fn relabeling_permutes_profits(sc in scenario(2), p in profile(2), protocol in builtin_protocol()) {
        let perm = [2usize, 1];
        let swapped = sc.permute_agents(&perm).unwrap();
        let q = StrategyProfile::new(vec![p.get(2).clone(), p.get(1).clone()]).unwrap();
        for k in 1..=2 {
            prop_assert_eq!(
                expected_profit(&sc, &p, &protocol, k).unwrap(),
                expected_profit(&swapped, &q, &protocol, perm[k - 1]).unwrap()
            );
        }
    }

    #[test]
    fn zero_information_representative_is_irrelevant(sc in scenario(2), p in profile(2), j in 1..=2usize,
                                                     c in 0..=10i64, c2 in 0..=10i64, protocol in builtin_protocol()) {
        let a = p.with(j, Strategy::zero_information(ratio(c, 10)).unwrap());
        let b = p.with(j, Strategy::zero_information(ratio(c2, 10)).unwrap());
        for i in 1..=2 {
            prop_assert_eq!(utility(&sc, &a, &protocol, i).unwrap(), utility(&sc, &b, &protocol, i).unwrap());
        }
    }

    #[test]
    fn improvement_never_hurts(sc in scenario(2), p in profile(2), base in builtin_protocol()) {
        let improved = Protocol::improve(base.clone());
        for i in 1..=2 {
            prop_assert!(utility(&sc, &p, &improved, i).unwrap() >= utility(&sc, &p, &base, i).unwrap());
        }
    }

    #[test]
    fn fmin_profit_is_baseline(sc in scenario(2), p in profile(2)) {
        for i in 1..=2 {
            prop_assert_eq!(expected_profit(&sc, &p, &Protocol::FMin, i).unwrap(), baseline_profit(&sc, i).unwrap());
        }
    }

    #[test]
    fn garbling_never_helps(sc in scenario(2), p in profile(2), base in builtin_protocol(),
                            z in proptest::collection::vec(noise(), 3)) {
        let garbled = Protocol::garble(base.clone(), z).unwrap();
        for i in 1..=2 {
            prop_assert!(expected_profit(&sc, &p, &garbled, i).unwrap() <= expected_profit(&sc, &p, &base, i).unwrap());
        }
    }

    #[test]
    fn posteriors_of_g_and_not_g_sum_to_one(g in table(2), v in proptest::collection::vec(0..=6i64, 3)) {
        let v = PosteriorVector::new(v.into_iter().map(|x| ratio(x, 6)).collect());
        prop_assert_eq!(g_posterior(&g, &v) + g_posterior(&g.negate(), &v), int(1));
    }

    #[test]
    fn competitive_case_matches_definition(sc in scenario(3), p in profile(3)) {
        let case = competitive_case(&sc, &p, Ranking::RelativePrice).unwrap();
        let scores: Vec<Rational> = (1..=3)
            .map(|i| curation_game::model::relative_price(sc.price_fn(i), p.get(i)).unwrap())
            .collect();
        let top = scores.iter().max().unwrap();
        let leaders: Vec<usize> = (1..=3).filter(|&i| scores[i - 1] == *top).collect();
        match case {
            CompetitiveCase::AllTruthful => prop_assert!(p.is_all_truthful()),
            CompetitiveCase::StrictWinner(w) => {
                prop_assert!(!p.is_all_truthful());
                prop_assert_eq!(leaders, vec![w]);
            }
            CompetitiveCase::Tie => {
                prop_assert!(!p.is_all_truthful());
                prop_assert!(leaders.len() > 1);
            }
        }
    }

    #[test]
    fn indicator_ranking_changes_nothing_when_cases_agree(sc in scenario(2), p in profile(2)) {
        prop_assume!(
            competitive_case(&sc, &p, Ranking::RelativePrice).unwrap() == competitive_case(&sc, &p, Ranking::Indicator).unwrap()
        );
        let indicator = Protocol::Competitive(Ranking::Indicator);
        prop_assert_eq!(Protocol::competitive().plan(&sc, &p).unwrap(), indicator.plan(&sc, &p).unwrap());
    }

    #[test]
    fn partial_deviation_from_truth_loses_to_zero_information(sc in scenario(2), s in grid_strategy(10), c in 0..=10i64, i in 1..=2usize) {
        prop_assume!(!s.is_truthful() && !s.is_zero_information());
        let truthful = StrategyProfile::all_truthful(2);
        let comp = Protocol::competitive();
        let partial = utility(&sc, &truthful.with(i, s), &comp, i).unwrap();
        let zero = utility(&sc, &truthful.with(i, Strategy::zero_information(ratio(c, 10)).unwrap()), &comp, i).unwrap();
        prop_assert!(partial < zero);
    }

    #[test]
    fn utilities_bounded(sc in scenario(2), p in profile(2), protocol in builtin_protocol()) {
        for i in 1..=2 {
            let v = expected_profit(&sc, &p, &protocol, i).unwrap();
            prop_assert!(v >= baseline_profit(&sc, i).unwrap());
            prop_assert!(v <= sc.profit(i).clone());
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn single_agent_profit_routes_agree(sc in scenario(1), p in profile(1)) {
        for protocol in Protocol::builtins(1) {
            let fast = expected_profit(&sc, &p, &protocol, 1).unwrap();
            prop_assert_eq!(&fast, &expected_profit_naive(&sc, &p, &protocol, 1).unwrap());
            prop_assert_eq!(&fast, &expected_profit_by_guess(&sc, &p, &protocol, 1).unwrap());
        }
    }

    #[test]
    fn three_agent_profit_routes_agree(sc in scenario(3), p in profile(3), protocol in builtin_protocol(), i in 1..=3usize) {
        let fast = expected_profit(&sc, &p, &protocol, i).unwrap();
        prop_assert_eq!(&fast, &expected_profit_naive(&sc, &p, &protocol, i).unwrap());
        prop_assert_eq!(&fast, &expected_profit_by_guess(&sc, &p, &protocol, i).unwrap());
    }

    #[test]
    fn n1_shares_center_bit_only_when_truthful(sc in scenario(1), p in profile(1)) {
        let plan = Protocol::N1.plan(&sc, &p).unwrap();
        prop_assert_eq!(plan.kernel(1, 0).is_pass_through(), p.get(1).is_truthful());
        prop_assert!(plan.kernel(1, 1).is_pass_through());
    }
}

#[test]
fn half_is_uninformative_posterior() {
    let g = SocialFunction::builtin("parity", 2).unwrap();
    assert_eq!(g_posterior(&g, &PosteriorVector::uninformed(3)), half());
}
