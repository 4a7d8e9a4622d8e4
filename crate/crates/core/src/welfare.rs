//! Exact optimal welfare and the complete list of welfare-maximizing
//! allocations.
//!
//! Depth-first assignment of items to bidders. Branches are cut only when
//! an admissible upper bound proves them strictly worse than the incumbent,
//! so the maximizer list stays complete:
//!   - all valuations submodular: remaining gain per item is bounded by the
//!     best conditional marginal given current bundles;
//!   - all valuations subadditive: bounded by the best singleton value
//!     (conditional marginals are not an admissible bound here);
//!   - otherwise: plain enumeration.

use num::Zero;

use crate::error::{Error, Result};
use crate::items::ItemSet;
use crate::mechanisms::{Allocation, AuctionInstance, BidProfile};
use crate::rational::Rat;
use crate::valuations::{SetClass, Valuation, CLASS_ENUM_LIMIT};

/// Default cap on explored assignment nodes.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

/// Optimal welfare with every maximizing allocation, in lexicographic
/// item-to-bidder order, plus the explored node count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Optimum {
    pub value: Rat,
    pub maximizers: Vec<Allocation>,
    pub explored: u64,
}

impl Optimum {
    /// The canonical (lexicographically first) maximizer.
    pub fn first(&self) -> &Allocation {
        &self.maximizers[0]
    }
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Bound {
    None,
    Singleton,
    ConditionalMarginal,
}

fn pruning_bound(inst: &AuctionInstance) -> Bound {
    let class_of = |v: &Valuation, class: SetClass| -> bool {
        v.check_class(class, CLASS_ENUM_LIMIT)
            .map(|c| c.holds)
            .unwrap_or(false)
    };
    if inst
        .valuations()
        .iter()
        .all(|v| class_of(v, SetClass::Submodular))
    {
        Bound::ConditionalMarginal
    } else if inst
        .valuations()
        .iter()
        .all(|v| class_of(v, SetClass::Subadditive))
    {
        Bound::Singleton
    } else {
        Bound::None
    }
}

struct Search<'a> {
    inst: &'a AuctionInstance,
    bound: Bound,
    budget: u64,
    explored: u64,
    assignment: Vec<usize>,
    bundles: Vec<ItemSet>,
    bundle_values: Vec<Rat>,
    best: Rat,
    maximizers: Vec<Allocation>,
}

impl Search<'_> {
    fn run(&mut self, item: usize, current: Rat) -> Result<()> {
        self.explored += 1;
        if self.explored > self.budget {
            return Err(Error::BudgetExceeded(format!(
                "welfare search exceeded {} nodes",
                self.budget
            )));
        }
        let m = self.inst.item_count();
        if item == m {
            if current > self.best {
                self.best = current;
                self.maximizers.clear();
                self.maximizers.push(self.bundles.clone());
            } else if current == self.best {
                self.maximizers.push(self.bundles.clone());
            }
            return Ok(());
        }
        if self.bound != Bound::None && !self.maximizers.is_empty() {
            let mut optimistic = current.clone();
            for j in item..m {
                let gain = (0..self.inst.bidder_count())
                    .map(|i| match self.bound {
                        Bound::ConditionalMarginal => {
                            self.inst.valuation(i).item_marginal(j, self.bundles[i])
                        }
                        _ => self.inst.valuation(i).value(ItemSet::singleton(j)),
                    })
                    .max()
                    .expect("at least one bidder");
                optimistic += gain;
            }
            // Strict cut only: equal-bound branches may hold more maximizers.
            if optimistic < self.best {
                return Ok(());
            }
        }
        for i in 0..self.inst.bidder_count() {
            let old_value = self.bundle_values[i].clone();
            let new_bundle = self.bundles[i].with(item);
            let new_value = self.inst.valuation(i).value(new_bundle);
            let next = &current - &old_value + &new_value;
            self.assignment[item] = i;
            self.bundles[i] = new_bundle;
            self.bundle_values[i] = new_value;
            self.run(item + 1, next)?;
            self.bundles[i] = self.bundles[i].without(item);
            self.bundle_values[i] = old_value;
        }
        Ok(())
    }
}

/// Exhaustively computes the optimal welfare and all maximizers.
pub fn optimal_allocations(inst: &AuctionInstance, budget: u64) -> Result<Optimum> {
    let n = inst.bidder_count() as u128;
    let m = inst.item_count() as u32;
    if n.checked_pow(m)
        .is_none_or(|leaves| leaves > budget as u128)
    {
        return Err(Error::BudgetExceeded(format!(
            "{}^{} assignments exceed budget {budget}",
            inst.bidder_count(),
            m
        )));
    }
    let mut search = Search {
        inst,
        bound: pruning_bound(inst),
        budget: budget.saturating_mul(2),
        explored: 0,
        assignment: vec![0; inst.item_count()],
        bundles: vec![ItemSet::empty(); inst.bidder_count()],
        bundle_values: vec![Rat::zero(); inst.bidder_count()],
        best: Rat::zero() - Rat::from_integer(1.into()),
        maximizers: Vec::new(),
    };
    search.run(0, Rat::zero())?;
    // DFS assigns bidders in ascending order per item, so the list is
    // already lexicographic by item-to-bidder assignment.
    Ok(Optimum {
        value: search.best,
        maximizers: search.maximizers,
        explored: search.explored,
    })
}

/// Welfare of the profile's outcome divided by the optimal welfare.
pub fn welfare_ratio(inst: &AuctionInstance, bids: &BidProfile, opt_value: &Rat) -> Result<Rat> {
    if opt_value.is_zero() {
        return Err(Error::OptIsZero);
    }
    let outcome = crate::mechanisms::run_auction(inst, bids)?;
    Ok(outcome.welfare / opt_value)
}
