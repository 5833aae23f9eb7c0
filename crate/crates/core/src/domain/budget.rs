use crate::{Error, Result};

/// Smallest unit of cost the ledger tracks, in equivalent high-fidelity
/// evaluations. Every tabulated fidelity cost is an exact multiple of it.
pub const COST_RESOLUTION: f64 = 1e-9;
const TICKS_PER_UNIT: f64 = 1e9;

/// Computational budget of one run.
///
/// Costs are accumulated as integer multiples of [`COST_RESOLUTION`], so
/// `spent` is the exact sum of the accepted charges and a budget of 100 is
/// consumed exactly by, say, 2000 charges of 0.05.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BudgetLedger {
    total: u64,
    spent: u64,
}

fn to_ticks(amount: f64) -> Result<u64> {
    if !amount.is_finite() || amount <= 0.0 {
        return Err(Error::InvalidArgument(format!(
            "cost must be positive and finite, got {amount}"
        )));
    }
    let ticks = (amount * TICKS_PER_UNIT).round();
    if ticks < 1.0 || ticks > u64::MAX as f64 / 4.0 {
        return Err(Error::InvalidArgument(format!(
            "cost {amount} not representable at resolution {COST_RESOLUTION}"
        )));
    }
    Ok(ticks as u64)
}

fn from_ticks(ticks: u64) -> f64 {
    ticks as f64 / TICKS_PER_UNIT
}

impl BudgetLedger {
    pub fn new(total: f64) -> Result<Self> {
        Ok(Self {
            total: to_ticks(total)?,
            spent: 0,
        })
    }

    pub fn total(&self) -> f64 {
        from_ticks(self.total)
    }

    pub fn spent(&self) -> f64 {
        from_ticks(self.spent)
    }

    pub fn remaining(&self) -> f64 {
        from_ticks(self.total - self.spent)
    }

    /// Whether a charge of `cost` would be accepted.
    pub fn can_afford(&self, cost: f64) -> Result<bool> {
        Ok(self.spent + to_ticks(cost)? <= self.total)
    }

    /// Charges `cost`, or leaves the ledger untouched and returns
    /// [`Error::BudgetExhausted`] when it would overrun the total.
    pub fn charge(&mut self, cost: f64) -> Result<()> {
        let ticks = to_ticks(cost)?;
        if self.spent + ticks > self.total {
            return Err(Error::BudgetExhausted {
                spent: self.spent(),
                total: self.total(),
                cost,
            });
        }
        self.spent += ticks;
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn accepts_affordable_charge() {
        let mut ledger = BudgetLedger::new(100.0).unwrap();
        ledger.charge(1.0).unwrap();
        assert_eq!(ledger.spent(), 1.0);
    }

    #[test]
    fn refuses_overrun_without_partial_charge() {
        let mut ledger = BudgetLedger::new(100.0).unwrap();
        ledger.charge(99.95).unwrap();
        let err = ledger.charge(0.1).unwrap_err();
        assert!(err.is_exhausted());
        assert!((ledger.spent() - 99.95).abs() < 1e-12);
        ledger.charge(0.05).unwrap();
        assert_eq!(ledger.spent(), 100.0);
    }

    #[test]
    fn hundred_unit_charges_consume_budget_exactly() {
        let mut ledger = BudgetLedger::new(100.0).unwrap();
        for _ in 0..100 {
            ledger.charge(1.0).unwrap();
        }
        assert_eq!(ledger.remaining(), 0.0);
        assert!(ledger.charge(1.0).unwrap_err().is_exhausted());
    }

    #[test]
    fn fractional_costs_sum_exactly() {
        let mut ledger = BudgetLedger::new(100.0).unwrap();
        for _ in 0..50 {
            ledger.charge(1.0).unwrap();
        }
        for _ in 0..1000 {
            ledger.charge(0.05).unwrap();
        }
        assert_eq!(ledger.spent(), 100.0);
        assert!(ledger.charge(0.05).is_err());
    }

    #[test]
    fn rejects_non_positive_cost() {
        let mut ledger = BudgetLedger::new(10.0).unwrap();
        assert!(matches!(ledger.charge(0.0), Err(Error::InvalidArgument(_))));
        assert!(matches!(
            ledger.charge(-1.0),
            Err(Error::InvalidArgument(_))
        ));
        assert!(matches!(
            ledger.charge(f64::NAN),
            Err(Error::InvalidArgument(_))
        ));
        assert!(BudgetLedger::new(0.0).is_err());
    }

    proptest! {
        #[test]
        fn spent_is_monotone_and_bounded(costs in proptest::collection::vec(1e-3f64..30.0, 0..300)) {
            let mut ledger = BudgetLedger::new(200.0).unwrap();
            let mut previous = 0.0;
            for c in costs {
                let before = ledger;
                match ledger.charge(c) {
                    Ok(()) => {}
                    Err(e) => {
                        prop_assert!(e.is_exhausted());
                        prop_assert_eq!(before, ledger);
                    }
                }
                prop_assert!(ledger.spent() >= previous);
                prop_assert!(ledger.spent() <= ledger.total());
                previous = ledger.spent();
            }
        }
    }
}
