//! Bid-profile conditions: no-overbidding (weak and strong), item and set
//! no-underbidding, weak dominance of underbids, the flat bid profile on an
//! optimal allocation, and set no-underbidding in expectation.

use num::{Signed, Zero};

use crate::bayes::{realizations, StrategyProfile, TypeDistribution, TypeSpace};
use crate::error::{Error, Result};
use crate::items::ItemSet;
use crate::mechanisms::{
    run_auction, validate_partition, won_items_excluding, Allocation, AuctionInstance, BidProfile,
    Outcome,
};
use crate::rational::{rat_sum, Rat};
use crate::welfare::{optimal_allocations, DEFAULT_SEARCH_BUDGET};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BidProperty {
    NoOverbidding,
    StrongNoOverbidding,
    ItemNoUnderbidding,
    SetNoUnderbidding,
    SetNoUnderbiddingExpected,
}

/// One failed inequality: the bidder, the item set it concerns, the value
/// the condition required, and what the bids actually provided.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub bidder: usize,
    pub items: ItemSet,
    pub required: Rat,
    pub actual: Rat,
}

/// Result of a condition check. For the existential conditions (item/set
/// no-underbidding) a certifying optimal allocation is reported when the
/// condition holds, and one violation per optimal allocation tried when it
/// does not.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub property: BidProperty,
    pub holds: bool,
    pub witness_allocation: Option<Allocation>,
    pub violations: Vec<Violation>,
}

/// Which quantifier order the existential no-underbidding checks use:
/// one optimal allocation shared by all bidders (the definitional
/// reading), or a possibly different one per bidder.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum WitnessMode {
    #[default]
    Shared,
    PerBidder,
}

/// Weak: per bidder, the bids on the won set sum to at most its value.
/// Strong: that holds for every subset of the items, enumerated up to
/// `limit` items.
pub fn check_nob(
    inst: &AuctionInstance,
    bids: &BidProfile,
    strong: bool,
    limit: usize,
) -> Result<PropertyReport> {
    let outcome = run_auction(inst, bids)?;
    let property = if strong {
        BidProperty::StrongNoOverbidding
    } else {
        BidProperty::NoOverbidding
    };
    if strong && inst.item_count() > limit {
        return Err(Error::BudgetExceeded(format!(
            "strong no-overbidding enumerates 2^{} sets, limit is 2^{limit}",
            inst.item_count()
        )));
    }
    let mut violations = Vec::new();
    for i in 0..inst.bidder_count() {
        let mut check_set = |s: ItemSet| {
            let bid_sum = rat_sum(s.iter().map(|j| bids.get(i, j)));
            let value = inst.valuation(i).value(s);
            if bid_sum > value {
                violations.push(Violation {
                    bidder: i,
                    items: s,
                    required: value,
                    actual: bid_sum,
                });
            }
        };
        if strong {
            for s in ItemSet::all_subsets(inst.item_count()) {
                check_set(s);
            }
        } else {
            check_set(outcome.allocation[i]);
        }
    }
    Ok(PropertyReport {
        property,
        holds: violations.is_empty(),
        witness_allocation: None,
        violations,
    })
}

/// First violation of item no-underbidding against a fixed optimal
/// allocation, or `None` if the allocation certifies it.
pub fn inub_violation_for(
    inst: &AuctionInstance,
    bids: &BidProfile,
    outcome: &Outcome,
    sstar: &Allocation,
    bidder: Option<usize>,
) -> Option<Violation> {
    let bidders: Vec<usize> = match bidder {
        Some(i) => vec![i],
        None => (0..inst.bidder_count()).collect(),
    };
    for i in bidders {
        let missing = sstar[i].difference(outcome.allocation[i]);
        for j in missing.iter() {
            let required = inst.valuation(i).item_marginal(j, outcome.allocation[i]);
            if *bids.get(i, j) < required {
                return Some(Violation {
                    bidder: i,
                    items: ItemSet::singleton(j),
                    required,
                    actual: bids.get(i, j).clone(),
                });
            }
        }
    }
    None
}

/// First violation of set no-underbidding against a fixed optimal
/// allocation, or `None` if the allocation certifies it.
pub fn snub_violation_for(
    inst: &AuctionInstance,
    bids: &BidProfile,
    outcome: &Outcome,
    sstar: &Allocation,
    bidder: Option<usize>,
) -> Option<Violation> {
    let bidders: Vec<usize> = match bidder {
        Some(i) => vec![i],
        None => (0..inst.bidder_count()).collect(),
    };
    for i in bidders {
        let missing = sstar[i].difference(outcome.allocation[i]);
        let bid_sum = rat_sum(missing.iter().map(|j| bids.get(i, j)));
        let required = inst.valuation(i).marginal(missing, outcome.allocation[i]);
        if bid_sum < required {
            return Some(Violation {
                bidder: i,
                items: missing,
                required,
                actual: bid_sum,
            });
        }
    }
    None
}

fn check_existential<F>(
    inst: &AuctionInstance,
    bids: &BidProfile,
    maximizers: &[Allocation],
    property: BidProperty,
    mode: WitnessMode,
    violation_for: F,
) -> Result<PropertyReport>
where
    F: Fn(&Outcome, &Allocation, Option<usize>) -> Option<Violation>,
{
    if maximizers.is_empty() {
        return Err(Error::EmptyMaximizers);
    }
    for sstar in maximizers {
        validate_partition(sstar, inst.bidder_count(), inst.item_count())?;
    }
    let outcome = run_auction(inst, bids)?;
    match mode {
        WitnessMode::Shared => {
            let mut violations = Vec::new();
            for sstar in maximizers {
                match violation_for(&outcome, sstar, None) {
                    None => {
                        return Ok(PropertyReport {
                            property,
                            holds: true,
                            witness_allocation: Some(sstar.clone()),
                            violations: Vec::new(),
                        })
                    }
                    Some(v) => violations.push(v),
                }
            }
            Ok(PropertyReport {
                property,
                holds: false,
                witness_allocation: None,
                violations,
            })
        }
        WitnessMode::PerBidder => {
            // Alternative quantifier order: each bidder may be certified by
            // a different optimal allocation.
            let mut violations = Vec::new();
            for i in 0..inst.bidder_count() {
                let mut certified = false;
                let mut first = None;
                for sstar in maximizers {
                    match violation_for(&outcome, sstar, Some(i)) {
                        None => {
                            certified = true;
                            break;
                        }
                        Some(v) => first.get_or_insert(v),
                    };
                }
                if !certified {
                    violations.push(first.expect("violation recorded for uncertified bidder"));
                }
            }
            Ok(PropertyReport {
                property,
                holds: violations.is_empty(),
                witness_allocation: None,
                violations,
            })
        }
    }
}

/// Item no-underbidding: some optimal allocation is such that every bidder
/// bids at least the item marginal (given her won set) on each item of her
/// optimal bundle she failed to win.
pub fn check_inub(
    inst: &AuctionInstance,
    bids: &BidProfile,
    maximizers: &[Allocation],
) -> Result<PropertyReport> {
    check_inub_with(inst, bids, maximizers, WitnessMode::Shared)
}

pub fn check_inub_with(
    inst: &AuctionInstance,
    bids: &BidProfile,
    maximizers: &[Allocation],
    mode: WitnessMode,
) -> Result<PropertyReport> {
    check_existential(
        inst,
        bids,
        maximizers,
        BidProperty::ItemNoUnderbidding,
        mode,
        |outcome, sstar, bidder| inub_violation_for(inst, bids, outcome, sstar, bidder),
    )
}

/// Set no-underbidding: as above, but the bids on the whole missing set
/// must cover its set marginal.
pub fn check_snub(
    inst: &AuctionInstance,
    bids: &BidProfile,
    maximizers: &[Allocation],
) -> Result<PropertyReport> {
    check_snub_with(inst, bids, maximizers, WitnessMode::Shared)
}

pub fn check_snub_with(
    inst: &AuctionInstance,
    bids: &BidProfile,
    maximizers: &[Allocation],
    mode: WitnessMode,
) -> Result<PropertyReport> {
    check_existential(
        inst,
        bids,
        maximizers,
        BidProperty::SetNoUnderbidding,
        mode,
        |outcome, sstar, bidder| snub_violation_for(inst, bids, outcome, sstar, bidder),
    )
}

/// True iff bidder `i` bids strictly less on item `j` than the marginal
/// value of `j` given the items she wins elsewhere.
pub fn is_item_underbid(
    inst: &AuctionInstance,
    bids: &BidProfile,
    i: usize,
    j: usize,
) -> Result<bool> {
    let won_elsewhere = won_items_excluding(inst, bids, i, j)?;
    let marginal = inst.valuation(i).item_marginal(j, won_elsewhere);
    Ok(*bids.get(i, j) < marginal)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DominanceReport {
    /// The dominating bid: the marginal value of the item given the items
    /// won elsewhere.
    pub marginal_bid: Rat,
    /// Probes where the marginal bid did at least as well as the underbid.
    pub probes_checked: usize,
    /// Opponent column realizing a strict improvement.
    pub strict_witness: Vec<Rat>,
    pub holds: bool,
}

/// Verifies that underbidding on an item is weakly dominated by bidding
/// its marginal value: at least as good against every probe column, and
/// strictly better against a column placing an opponent bid strictly
/// between the underbid and the marginal value.
///
/// `context` fixes all bids on items other than `j`; its column `j` is
/// replaced by each probe in turn (bidder `i`'s entry comes from
/// `underbid` or the marginal bid).
pub fn dominance_check(
    inst: &AuctionInstance,
    context: &BidProfile,
    i: usize,
    j: usize,
    underbid: Rat,
    probes: &[Vec<Rat>],
) -> Result<DominanceReport> {
    if underbid.is_negative() {
        return Err(Error::InvalidInput("underbid must be nonnegative".into()));
    }
    let won_elsewhere = won_items_excluding(inst, context, i, j)?;
    let w = inst.valuation(i).item_marginal(j, won_elsewhere);
    if underbid >= w {
        return Err(Error::InvalidInput(format!(
            "bid {underbid} is not an underbid: marginal value is {w}"
        )));
    }
    if inst.bidder_count() < 2 {
        return Err(Error::InvalidInput(
            "dominance needs an opponent to construct the strict witness".into(),
        ));
    }

    let utility_with = |own_bid: &Rat, column: &[Rat]| -> Result<Rat> {
        let mut col = column.to_vec();
        col[i] = own_bid.clone();
        let profile = context.with_column(j, &col)?;
        Ok(run_auction(inst, &profile)?.utilities[i].clone())
    };

    for probe in probes {
        if probe.len() != inst.bidder_count() {
            return Err(Error::DimensionMismatch {
                expected: format!("{} column entries", inst.bidder_count()),
                got: format!("{}", probe.len()),
            });
        }
        let u_marginal = utility_with(&w, probe)?;
        let u_under = utility_with(&underbid, probe)?;
        if u_marginal < u_under {
            return Ok(DominanceReport {
                marginal_bid: w,
                probes_checked: probes.len(),
                strict_witness: Vec::new(),
                holds: false,
            });
        }
    }

    // Opponent bid strictly between the underbid and the marginal value:
    // the marginal bid wins at a price below value, the underbid loses.
    let mid = (&underbid + &w) / crate::rational::rat(2);
    let opponent = (0..inst.bidder_count()).find(|&k| k != i).expect("n >= 2");
    let mut witness = vec![Rat::zero(); inst.bidder_count()];
    witness[opponent] = mid;
    let u_marginal = utility_with(&w, &witness)?;
    let u_under = utility_with(&underbid, &witness)?;
    Ok(DominanceReport {
        marginal_bid: w,
        probes_checked: probes.len(),
        strict_witness: witness,
        holds: u_marginal > u_under,
    })
}

/// The bid profile that spreads each bidder's optimal-bundle value evenly
/// over the bundle's items and bids zero elsewhere.
pub fn construct_flat_optimal_profile(
    inst: &AuctionInstance,
    sstar: &Allocation,
) -> Result<BidProfile> {
    validate_partition(sstar, inst.bidder_count(), inst.item_count())?;
    let mut rows = Vec::with_capacity(inst.bidder_count());
    for (i, &bundle) in sstar.iter().enumerate() {
        let mut row = vec![Rat::zero(); inst.item_count()];
        if !bundle.is_empty() {
            let share =
                inst.valuation(i).value(bundle) / Rat::from_integer((bundle.len() as i64).into());
            for j in bundle.iter() {
                row[j] = share.clone();
            }
        }
        rows.push(row);
    }
    BidProfile::new(rows)
}

/// Set no-underbidding in expectation: for every bidder and every type of
/// positive marginal probability, conditioned on that type, the expected
/// bid mass on the missing optimal set covers the expected set marginal.
/// The optimal allocation is fixed per type profile as the canonical
/// (lexicographically first) maximizer.
pub fn check_snub_expected(
    space: &TypeSpace,
    dist: &TypeDistribution,
    strategies: &StrategyProfile,
) -> Result<PropertyReport> {
    space.validate()?;
    let worlds = realizations(space, dist, strategies)?;

    // Conditional expectations share a positive normalizer per (bidder,
    // type), so comparing unnormalized sums is exact.
    let n = space.bidder_count();
    let mut bid_mass: Vec<Vec<Rat>> = (0..n)
        .map(|i| vec![Rat::zero(); space.bidder_types[i].len()])
        .collect();
    let mut marginal_mass = bid_mass.clone();

    let mut sstar_cache: std::collections::BTreeMap<Vec<usize>, Allocation> =
        std::collections::BTreeMap::new();

    for world in &worlds {
        let inst = space.instance_for(world.type_profile)?;
        let sstar = match sstar_cache.get(world.type_profile) {
            Some(s) => s.clone(),
            None => {
                let opt = optimal_allocations(&inst, DEFAULT_SEARCH_BUDGET)?;
                let s = opt.first().clone();
                sstar_cache.insert(world.type_profile.to_vec(), s.clone());
                s
            }
        };
        let outcome = run_auction(&inst, &world.bids)?;
        for i in 0..n {
            let t = world.type_profile[i];
            let missing = sstar[i].difference(outcome.allocation[i]);
            let bid_sum = rat_sum(missing.iter().map(|j| world.bids.get(i, j)));
            let marg = inst.valuation(i).marginal(missing, outcome.allocation[i]);
            bid_mass[i][t] += &world.prob * bid_sum;
            marginal_mass[i][t] += &world.prob * marg;
        }
    }

    let mut violations = Vec::new();
    for i in 0..n {
        for t in 0..space.bidder_types[i].len() {
            if dist.marginal(i, t).is_zero() {
                continue;
            }
            if bid_mass[i][t] < marginal_mass[i][t] {
                violations.push(Violation {
                    bidder: i,
                    items: ItemSet::empty(),
                    required: marginal_mass[i][t].clone(),
                    actual: bid_mass[i][t].clone(),
                });
            }
        }
    }
    Ok(PropertyReport {
        property: BidProperty::SetNoUnderbiddingExpected,
        holds: violations.is_empty(),
        witness_allocation: None,
        violations,
    })
}
