use num_traits::{One, Pow, Zero};

use crate::error::{Error, Result};
use crate::model::Strategy;
use crate::rational::{format_rational, Rational};

/// Privacy cost of a strategy.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PriceFunction {
    /// `weight · |p - q|^exponent`.
    PowerOfGap { weight: Rational, exponent: u32 },
    /// 0 on zero-information strategies, 1 elsewhere. Only used to rank agents
    /// inside protocols; it is not continuous, so scenarios reject it.
    Indicator,
}

impl PriceFunction {
    /// The exponent must be a positive integer so that prices stay rational.
    pub fn power_of_gap(weight: Rational, exponent: Rational) -> Result<Self> {
        if weight <= Rational::zero() {
            return Err(Error::InvalidPriceFunction(format!(
                "weight {} must be positive",
                format_rational(&weight)
            )));
        }
        if !exponent.is_integer() || exponent <= Rational::zero() {
            return Err(Error::InvalidPriceFunction(format!(
                "exponent {} must be a positive integer",
                format_rational(&exponent)
            )));
        }
        let exponent = u32::try_from(exponent.to_integer())
            .map_err(|_| Error::InvalidPriceFunction("exponent too large".into()))?;
        Ok(PriceFunction::PowerOfGap { weight, exponent })
    }

    pub fn linear(weight: Rational) -> Result<Self> {
        Self::power_of_gap(weight, Rational::one())
    }

    pub fn is_continuous(&self) -> bool {
        matches!(self, PriceFunction::PowerOfGap { .. })
    }
}

pub fn price(pf: &PriceFunction, s: &Strategy) -> Rational {
    match pf {
        PriceFunction::PowerOfGap { weight, exponent } => weight * Pow::pow(s.gap(), *exponent),
        PriceFunction::Indicator => {
            if s.is_zero_information() {
                Rational::zero()
            } else {
                Rational::one()
            }
        }
    }
}

/// `price(s) / price(s^t)`, in `[0, 1]` for every admissible price function.
pub fn relative_price(pf: &PriceFunction, s: &Strategy) -> Result<Rational> {
    let top = price(pf, &Strategy::truthful());
    if top.is_zero() {
        return Err(Error::InvalidPriceFunction("truthful price is zero".into()));
    }
    Ok(price(pf, s) / top)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{half, int, ratio};

    fn s(p: Rational, q: Rational) -> Strategy {
        Strategy::new(p, q).unwrap()
    }

    #[test]
    fn price_examples() {
        let unit = PriceFunction::linear(int(1)).unwrap();
        assert_eq!(price(&unit, &Strategy::truthful()), int(1));
        assert_eq!(price(&unit, &s(half(), half())), int(0));
        let two = PriceFunction::linear(int(2)).unwrap();
        assert_eq!(price(&two, &s(ratio(4, 5), ratio(2, 5))), ratio(4, 5));
        let sq = PriceFunction::power_of_gap(int(3), int(2)).unwrap();
        assert_eq!(price(&sq, &s(ratio(1, 2), int(0))), ratio(3, 4));
    }

    #[test]
    fn relative_price_examples() {
        let two = PriceFunction::linear(int(2)).unwrap();
        assert_eq!(relative_price(&two, &Strategy::truthful()).unwrap(), int(1));
        assert_eq!(relative_price(&two, &s(ratio(1, 3), ratio(1, 3))).unwrap(), int(0));
        assert_eq!(relative_price(&two, &s(ratio(4, 5), ratio(2, 5))).unwrap(), ratio(2, 5));
    }

    #[test]
    fn indicator_is_zero_one() {
        let ind = PriceFunction::Indicator;
        assert_eq!(price(&ind, &s(ratio(1, 3), ratio(1, 3))), int(0));
        assert_eq!(price(&ind, &s(ratio(1, 3), ratio(1, 4))), int(1));
        assert_eq!(relative_price(&ind, &Strategy::truthful()).unwrap(), int(1));
        assert!(!ind.is_continuous());
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(PriceFunction::linear(int(0)).is_err());
        assert!(PriceFunction::power_of_gap(int(1), ratio(1, 2)).is_err());
        assert!(PriceFunction::power_of_gap(int(1), int(0)).is_err());
    }

    #[test]
    fn grid_price_properties() {
        let pfs = [
            PriceFunction::linear(ratio(1, 10)).unwrap(),
            PriceFunction::power_of_gap(ratio(3, 5), int(2)).unwrap(),
            PriceFunction::power_of_gap(int(2), int(3)).unwrap(),
        ];
        for pf in &pfs {
            let top = price(pf, &Strategy::truthful());
            for a in 0..=20 {
                for b in 0..=20 {
                    let st = s(ratio(a, 20), ratio(b, 20));
                    let pr = price(pf, &st);
                    let rel = relative_price(pf, &st).unwrap();
                    assert_eq!(pr.is_zero(), a == b);
                    assert!(pr <= top);
                    assert!(rel >= int(0) && rel <= int(1));
                    assert_eq!(rel == int(1), st.gap() == int(1));
                }
            }
        }
    }
}
