//! Exact enumeration of the three-player coin game.
//!
//! Player A lends `loan_coins` to player B at a simple interest of
//! `interest_coins`. B then trades against player C, who holds
//! `competitor_coins`. At the end of a round B holds some `b_end` coins out of
//! the fixed pot, every value in `0..=total_pot` being equally likely. A is
//! repaid out of whatever B holds; debts that B cannot cover are extinguished
//! when the round ends.
//!
//! Everything in here is integer or rational arithmetic.

use num_rational::Ratio;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DiscreteGameConfig {
    pub loan_coins: u64,
    pub competitor_coins: u64,
    pub interest_coins: u64,
}

impl DiscreteGameConfig {
    pub fn new(loan_coins: u64, competitor_coins: u64, interest_coins: u64) -> Result<Self> {
        let config = Self {
            loan_coins,
            competitor_coins,
            interest_coins,
        };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.loan_coins == 0 {
            return Err(Error::InvalidConfig("loan_coins must be at least 1".into()));
        }
        if self.loan_coins.checked_add(self.competitor_coins).is_none()
            || self.loan_coins.checked_add(self.interest_coins).is_none()
        {
            return Err(Error::InvalidConfig("coin counts overflow".into()));
        }
        Ok(())
    }

    /// Coins in play: the loan plus the competitor's endowment.
    pub fn total_pot(&self) -> u64 {
        self.loan_coins + self.competitor_coins
    }

    /// Amount B owes at the end of the round.
    pub fn amount_due(&self) -> u64 {
        self.loan_coins + self.interest_coins
    }

    fn check_outcome(&self, b_end: u64) -> Result<()> {
        if b_end > self.total_pot() {
            return Err(Error::OutcomeOutOfRange {
                b_end,
                total_pot: self.total_pot(),
            });
        }
        Ok(())
    }
}

/// One equiprobable end-of-round state, laid out like the rows of the coin tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct OutcomeRow {
    pub b_end: u64,
    pub c_end: u64,
    pub a_recovered: u64,
    pub a_win: u64,
    pub a_loss: u64,
    pub b_net: u64,
}

impl OutcomeRow {
    pub fn new(b_end: u64, config: &DiscreteGameConfig) -> Result<Self> {
        config.validate()?;
        config.check_outcome(b_end)?;
        let loan = config.loan_coins;
        let a_recovered = b_end.min(config.amount_due());
        Ok(Self {
            b_end,
            c_end: config.total_pot() - b_end,
            a_recovered,
            a_win: a_recovered.saturating_sub(loan),
            a_loss: loan.saturating_sub(a_recovered),
            b_net: b_end.saturating_sub(config.amount_due()),
        })
    }

    /// Investor payoff in coins, `a_win - a_loss`.
    pub fn investor_net(&self) -> i64 {
        self.a_win as i64 - self.a_loss as i64
    }

    /// `a_recovered + b_net + c_end`; always equal to the pot.
    pub fn conserved_total(&self) -> u64 {
        self.a_recovered + self.b_net + self.c_end
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerationSummary {
    pub config: DiscreteGameConfig,
    pub rows: Vec<OutcomeRow>,
    pub total_win: u64,
    pub total_loss: u64,
    pub total_b_net: u64,
    /// Per-round investor expectation in coins, exact.
    #[serde(with = "ratio_serde")]
    pub expected_net: Ratio<i64>,
}

impl EnumerationSummary {
    pub fn net_total(&self) -> i64 {
        self.total_win as i64 - self.total_loss as i64
    }

    pub fn outcome_count(&self) -> u64 {
        self.rows.len() as u64
    }
}

/// Investor payoff in coins when B ends the round holding `b_end`.
pub fn investor_payoff(b_end: u64, config: &DiscreteGameConfig) -> Result<i64> {
    Ok(OutcomeRow::new(b_end, config)?.investor_net())
}

/// Coins B keeps after repaying as much of the debt as it can.
pub fn borrower_net(b_end: u64, config: &DiscreteGameConfig) -> Result<u64> {
    Ok(OutcomeRow::new(b_end, config)?.b_net)
}

pub fn enumerate_outcomes(config: &DiscreteGameConfig) -> Result<EnumerationSummary> {
    config.validate()?;
    let rows = (0..=config.total_pot())
        .map(|b| OutcomeRow::new(b, config))
        .collect::<Result<Vec<_>>>()?;
    let total_win = rows.iter().map(|r| r.a_win).sum::<u64>();
    let total_loss = rows.iter().map(|r| r.a_loss).sum::<u64>();
    let total_b_net = rows.iter().map(|r| r.b_net).sum::<u64>();
    let expected_net = Ratio::new(total_win as i64 - total_loss as i64, rows.len() as i64);
    Ok(EnumerationSummary {
        config: *config,
        rows,
        total_win,
        total_loss,
        total_b_net,
        expected_net,
    })
}

/// Smallest whole-coin interest at which the investor does not lose on
/// average, scanning `0..=total_pot`. `None` when no such interest exists,
/// which happens when the competitor holds too little for B to ever repay
/// with a profit for A.
pub fn discrete_breakeven(loan_coins: u64, competitor_coins: u64) -> Result<Option<u64>> {
    let base = DiscreteGameConfig::new(loan_coins, competitor_coins, 0)?;
    for k in 0..=base.total_pot() {
        let summary = enumerate_outcomes(&DiscreteGameConfig {
            interest_coins: k,
            ..base
        })?;
        if summary.total_win >= summary.total_loss {
            return Ok(Some(k));
        }
    }
    Ok(None)
}

mod ratio_serde {
    use num_rational::Ratio;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    struct Fraction {
        numer: i64,
        denom: i64,
        value: f64,
    }

    pub fn serialize<S: Serializer>(r: &Ratio<i64>, s: S) -> Result<S::Ok, S::Error> {
        Fraction {
            numer: *r.numer(),
            denom: *r.denom(),
            value: *r.numer() as f64 / *r.denom() as f64,
        }
        .serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Ratio<i64>, D::Error> {
        let f = Fraction::deserialize(d)?;
        if f.denom == 0 {
            return Err(serde::de::Error::custom("zero denominator"));
        }
        Ok(Ratio::new(f.numer, f.denom))
    }
}
