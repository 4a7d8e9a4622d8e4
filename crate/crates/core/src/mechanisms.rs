//! Simultaneous item auctions: allocation under a fixed tie-break, prices,
//! payments, utilities, welfare, and revenue.

use num::{Signed, Zero};

use crate::error::{Error, Result};
use crate::items::ItemSet;
use crate::rational::{rat_sum, Rat};
use crate::valuations::Valuation;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Mechanism {
    /// Highest bidder wins, pays the second-highest bid.
    SecondPrice,
    /// Highest bidder wins, pays her own bid.
    FirstPrice,
}

/// Deterministic total order over bidders, applied per item: among the
/// highest bidders, the earliest bidder in the order wins.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TieBreak {
    order: Vec<usize>,
    rank: Vec<usize>,
}

impl TieBreak {
    pub fn ascending(n: usize) -> Self {
        TieBreak::new((0..n).collect()).expect("identity is a permutation")
    }

    pub fn new(order: Vec<usize>) -> Result<Self> {
        let n = order.len();
        let mut rank = vec![usize::MAX; n];
        for (pos, &b) in order.iter().enumerate() {
            if b >= n || rank[b] != usize::MAX {
                return Err(Error::InvalidInput(format!(
                    "tie-break order is not a permutation of 0..{n}"
                )));
            }
            rank[b] = pos;
        }
        Ok(TieBreak { order, rank })
    }

    pub fn order(&self) -> &[usize] {
        &self.order
    }

    /// True when bidder `a` beats bidder `b` on equal bids.
    pub fn prefers(&self, a: usize, b: usize) -> bool {
        self.rank[a] < self.rank[b]
    }
}

/// An auction market: bidders with valuations, items, mechanism, tie-break.
#[derive(Debug, Clone)]
pub struct AuctionInstance {
    valuations: Vec<Valuation>,
    items: usize,
    mechanism: Mechanism,
    tie_break: TieBreak,
}

impl AuctionInstance {
    pub fn new(
        valuations: Vec<Valuation>,
        items: usize,
        mechanism: Mechanism,
        tie_break: Option<TieBreak>,
    ) -> Result<Self> {
        if valuations.is_empty() {
            return Err(Error::InvalidInput("need at least one bidder".into()));
        }
        if items == 0 {
            return Err(Error::InvalidInput("need at least one item".into()));
        }
        for (i, v) in valuations.iter().enumerate() {
            v.validate()
                .map_err(|e| Error::InvalidValuation(format!("bidder {i}: {e}")))?;
            if v.item_count() != items {
                return Err(Error::DimensionMismatch {
                    expected: format!("{items} items"),
                    got: format!("{} items for bidder {i}", v.item_count()),
                });
            }
        }
        let tie_break = match tie_break {
            Some(tb) => {
                if tb.order.len() != valuations.len() {
                    return Err(Error::DimensionMismatch {
                        expected: format!("tie-break over {} bidders", valuations.len()),
                        got: format!("{}", tb.order.len()),
                    });
                }
                tb
            }
            None => TieBreak::ascending(valuations.len()),
        };
        Ok(AuctionInstance {
            valuations,
            items,
            mechanism,
            tie_break,
        })
    }

    pub fn bidder_count(&self) -> usize {
        self.valuations.len()
    }

    pub fn item_count(&self) -> usize {
        self.items
    }

    pub fn mechanism(&self) -> Mechanism {
        self.mechanism
    }

    pub fn tie_break(&self) -> &TieBreak {
        &self.tie_break
    }

    pub fn valuation(&self, i: usize) -> &Valuation {
        &self.valuations[i]
    }

    pub fn valuations(&self) -> &[Valuation] {
        &self.valuations
    }

    /// Same market under a different mechanism.
    pub fn with_mechanism(&self, mechanism: Mechanism) -> Self {
        let mut inst = self.clone();
        inst.mechanism = mechanism;
        inst
    }
}

/// Nonnegative bid matrix, one row per bidder, one column per item.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BidProfile {
    rows: Vec<Vec<Rat>>,
}

impl BidProfile {
    pub fn new(rows: Vec<Vec<Rat>>) -> Result<Self> {
        if rows.is_empty() {
            return Err(Error::InvalidInput("empty bid profile".into()));
        }
        let m = rows[0].len();
        for (i, row) in rows.iter().enumerate() {
            if row.len() != m {
                return Err(Error::DimensionMismatch {
                    expected: format!("{m} columns"),
                    got: format!("{} in row {i}", row.len()),
                });
            }
            for (j, b) in row.iter().enumerate() {
                if b.is_negative() {
                    return Err(Error::NegativeBid { bidder: i, item: j });
                }
            }
        }
        Ok(BidProfile { rows })
    }

    pub fn zeros(n: usize, m: usize) -> Self {
        BidProfile {
            rows: vec![vec![Rat::zero(); m]; n],
        }
    }

    pub fn bidder_count(&self) -> usize {
        self.rows.len()
    }

    pub fn item_count(&self) -> usize {
        self.rows[0].len()
    }

    pub fn get(&self, i: usize, j: usize) -> &Rat {
        &self.rows[i][j]
    }

    pub fn row(&self, i: usize) -> &[Rat] {
        &self.rows[i]
    }

    pub fn rows(&self) -> &[Vec<Rat>] {
        &self.rows
    }

    /// Copy of the profile with bidder `i`'s row replaced.
    pub fn with_row(&self, i: usize, row: Vec<Rat>) -> Result<Self> {
        if row.len() != self.item_count() {
            return Err(Error::DimensionMismatch {
                expected: format!("{} columns", self.item_count()),
                got: format!("{}", row.len()),
            });
        }
        if let Some(j) = row.iter().position(|b| b.is_negative()) {
            return Err(Error::NegativeBid { bidder: i, item: j });
        }
        let mut rows = self.rows.clone();
        rows[i] = row;
        Ok(BidProfile { rows })
    }

    /// Copy of the profile with column `j` replaced.
    pub fn with_column(&self, j: usize, column: &[Rat]) -> Result<Self> {
        if column.len() != self.bidder_count() {
            return Err(Error::DimensionMismatch {
                expected: format!("{} rows", self.bidder_count()),
                got: format!("{}", column.len()),
            });
        }
        let mut rows = self.rows.clone();
        for (i, b) in column.iter().enumerate() {
            if b.is_negative() {
                return Err(Error::NegativeBid { bidder: i, item: j });
            }
            rows[i][j] = b.clone();
        }
        Ok(BidProfile { rows })
    }
}

/// A partition of the items among the bidders; index = bidder.
pub type Allocation = Vec<ItemSet>;

/// Checks that `alloc` is a partition of `[m]` across `n` bidders.
pub fn validate_partition(alloc: &Allocation, n: usize, m: usize) -> Result<()> {
    if alloc.len() != n {
        return Err(Error::NotAPartition(format!(
            "{} bundles for {n} bidders",
            alloc.len()
        )));
    }
    let mut seen = ItemSet::empty();
    for (i, s) in alloc.iter().enumerate() {
        if !s.intersect(seen).is_empty() {
            return Err(Error::NotAPartition(format!(
                "bidder {i} overlaps earlier bundles"
            )));
        }
        seen = seen.union(*s);
    }
    if seen != ItemSet::full(m) {
        return Err(Error::NotAPartition(format!(
            "items {} not covered",
            ItemSet::full(m).difference(seen)
        )));
    }
    Ok(())
}

/// Full result of running an auction on a bid profile.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    /// Winner of each item.
    pub winner: Vec<usize>,
    /// Items won by each bidder (a partition of the items).
    pub allocation: Allocation,
    /// Price paid for each item by its winner.
    pub item_prices: Vec<Rat>,
    /// Total payment per bidder.
    pub payments: Vec<Rat>,
    /// Quasi-linear utility per bidder: value of the won bundle minus payment.
    pub utilities: Vec<Rat>,
    /// Sum of bidder values for their bundles.
    pub welfare: Rat,
    /// Sum of payments.
    pub revenue: Rat,
}

fn check_dims(inst: &AuctionInstance, bids: &BidProfile) -> Result<()> {
    if bids.bidder_count() != inst.bidder_count() || bids.item_count() != inst.item_count() {
        return Err(Error::DimensionMismatch {
            expected: format!("{}x{}", inst.bidder_count(), inst.item_count()),
            got: format!("{}x{}", bids.bidder_count(), bids.item_count()),
        });
    }
    Ok(())
}

/// Winner of item `j`: highest bid, ties to the earliest bidder in the
/// tie-break order.
fn item_winner(inst: &AuctionInstance, bids: &BidProfile, j: usize) -> usize {
    let mut winner = 0usize;
    for i in 1..inst.bidder_count() {
        let better = bids.get(i, j) > bids.get(winner, j)
            || (bids.get(i, j) == bids.get(winner, j) && inst.tie_break.prefers(i, winner));
        if better {
            winner = i;
        }
    }
    winner
}

/// Runs the auction: allocates every item, prices it per the mechanism,
/// and aggregates payments, utilities, welfare, and revenue.
pub fn run_auction(inst: &AuctionInstance, bids: &BidProfile) -> Result<Outcome> {
    check_dims(inst, bids)?;
    let n = inst.bidder_count();
    let m = inst.item_count();

    let mut winner = Vec::with_capacity(m);
    let mut item_prices = Vec::with_capacity(m);
    let mut allocation = vec![ItemSet::empty(); n];
    for j in 0..m {
        let w = item_winner(inst, bids, j);
        let price = match inst.mechanism {
            Mechanism::FirstPrice => bids.get(w, j).clone(),
            Mechanism::SecondPrice => (0..n)
                .filter(|&k| k != w)
                .map(|k| bids.get(k, j).clone())
                .max()
                .unwrap_or_else(Rat::zero),
        };
        allocation[w] = allocation[w].with(j);
        winner.push(w);
        item_prices.push(price);
    }

    let payments: Vec<Rat> = (0..n)
        .map(|i| rat_sum(allocation[i].iter().map(|j| &item_prices[j])))
        .collect();
    let utilities: Vec<Rat> = (0..n)
        .map(|i| inst.valuation(i).value(allocation[i]) - &payments[i])
        .collect();
    let welfare = rat_sum(
        (0..n)
            .map(|i| inst.valuation(i).value(allocation[i]))
            .collect::<Vec<_>>()
            .iter(),
    );
    let revenue = rat_sum(payments.iter());

    Ok(Outcome {
        winner,
        allocation,
        item_prices,
        payments,
        utilities,
        welfare,
        revenue,
    })
}

/// Items other than `j` won by bidder `i`. Column independence makes this
/// the winners of the remaining columns under the same tie-break.
///
/// A bare "wins the maximum bid" reading is ambiguous when several
/// bidders tie; this resolves ties with the instance's global tie-break,
/// the same order the auction itself uses.
pub fn won_items_excluding(
    inst: &AuctionInstance,
    bids: &BidProfile,
    i: usize,
    j: usize,
) -> Result<ItemSet> {
    check_dims(inst, bids)?;
    if i >= inst.bidder_count() {
        return Err(Error::BidderOutOfRange {
            bidder: i,
            bidders: inst.bidder_count(),
        });
    }
    if j >= inst.item_count() {
        return Err(Error::ItemOutOfRange {
            item: j,
            items: inst.item_count(),
        });
    }
    let mut won = ItemSet::empty();
    for k in 0..inst.item_count() {
        if k != j && item_winner(inst, bids, k) == i {
            won = won.with(k);
        }
    }
    Ok(won)
}

/// Second-price revenue dominates the losers' bids on their optimal
/// bundles: `revenue >= sum over i, j in sstar_i \ won_i of b_ij`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RevenueBidsCheck {
    pub holds: bool,
    /// `revenue - bound`; never negative for a second-price outcome.
    pub slack: Rat,
}

pub fn check_revenue_bids_lemma(
    inst: &AuctionInstance,
    bids: &BidProfile,
    sstar: &Allocation,
) -> Result<RevenueBidsCheck> {
    if inst.mechanism != Mechanism::SecondPrice {
        return Err(Error::UnsupportedMechanism(
            "revenue-vs-bids inequality is a second-price property".into(),
        ));
    }
    validate_partition(sstar, inst.bidder_count(), inst.item_count())?;
    let outcome = run_auction(inst, bids)?;
    let mut bound = Rat::zero();
    for (i, bundle) in sstar.iter().enumerate() {
        for j in bundle.difference(outcome.allocation[i]).iter() {
            bound += bids.get(i, j);
        }
    }
    let slack = &outcome.revenue - &bound;
    Ok(RevenueBidsCheck {
        holds: !slack.is_negative(),
        slack,
    })
}
