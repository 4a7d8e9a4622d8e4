//! Best responses and equilibrium verification.
//!
//! Against fixed opponent bids in a second-price item auction, a bidder's
//! outcome depends only on which items she wins and their fixed prices, so
//! the best response is exact subset enumeration rather than a scan over a
//! bid grid. Deviations in the coarse-correlated and Bayes checks reduce
//! the same way, to finitely many per-item breakpoints around the opponent
//! bids seen in the support. This reduction is exact for second-price
//! utilities and these checks refuse first-price input.

use num::{Integer, One, Signed, Zero};

use crate::bayes::{realizations, BidDistribution, StrategyProfile, TypeDistribution, TypeSpace};
use crate::error::{Error, Result};
use crate::items::ItemSet;
use crate::mechanisms::{run_auction, AuctionInstance, BidProfile, Mechanism};
use crate::properties::{check_inub, check_nob, check_snub};
use crate::rational::{rat_sum, Rat};
use crate::valuations::CLASS_ENUM_LIMIT;
use crate::welfare::{welfare_ratio, Optimum};

/// Cap on candidate deviation rows enumerated per bidder in the
/// coarse-correlated and Bayes checks.
pub const DEFAULT_DEVIATION_BUDGET: u64 = 1_000_000;

/// Uniform bid grid `{0, step, 2·step, …} ∩ [0, max]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BidGrid {
    pub step: Rat,
    pub max: Rat,
}

impl BidGrid {
    pub fn new(step: Rat, max: Rat) -> Result<Self> {
        if !step.is_positive() || max.is_negative() {
            return Err(Error::InvalidInput(
                "grid needs a positive step and a nonnegative max".into(),
            ));
        }
        Ok(BidGrid { step, max })
    }

    /// Grid sized for the instance: step a quarter of the smallest gap
    /// between distinct bundle values (zero included), max the largest
    /// bundle value. Every truthful and just-above bid is expressible.
    pub fn default_for(inst: &AuctionInstance) -> Result<Self> {
        let m = inst.item_count();
        if m > 12 {
            return Err(Error::BudgetExceeded(
                "default grid enumerates all bundle values; too many items".into(),
            ));
        }
        let mut values: Vec<Rat> = vec![Rat::zero()];
        for i in 0..inst.bidder_count() {
            for s in ItemSet::all_subsets(m) {
                values.push(inst.valuation(i).value(s));
            }
        }
        values.sort();
        values.dedup();
        if values.len() < 2 {
            return Err(Error::InvalidInput(
                "all bundle values are zero; no meaningful grid".into(),
            ));
        }
        let min_gap = values
            .windows(2)
            .map(|w| &w[1] - &w[0])
            .min()
            .expect("at least two distinct values");
        let max = values.last().expect("nonempty").clone();
        BidGrid::new(min_gap / crate::rational::rat(4), max)
    }

    /// Smallest grid point at least `x`.
    pub fn ceil_to(&self, x: &Rat) -> Option<Rat> {
        let k = (x / &self.step).ceil();
        let point = k * &self.step;
        (point <= self.max).then_some(point)
    }

    /// Smallest grid point strictly above `x`.
    pub fn next_above(&self, x: &Rat) -> Option<Rat> {
        let q = x / &self.step;
        let k = if q.denom().is_one() {
            q.floor() + Rat::one()
        } else {
            q.ceil()
        };
        let point = k * &self.step;
        (point <= self.max).then_some(point)
    }

    pub fn point_count(&self) -> u64 {
        let q = (&self.max / &self.step).floor();
        let (quot, _) = q.numer().div_rem(q.denom());
        u64::try_from(quot).map(|k| k + 1).unwrap_or(u64::MAX)
    }

    pub fn points_capped(&self, cap: u64) -> Result<Vec<Rat>> {
        let count = self.point_count();
        if count > cap {
            return Err(Error::BudgetExceeded(format!(
                "grid has {count} points, cap is {cap}"
            )));
        }
        let mut out = Vec::with_capacity(count as usize);
        let mut x = Rat::zero();
        while x <= self.max {
            out.push(x.clone());
            x += &self.step;
        }
        Ok(out)
    }
}

/// An exact best response: the achievable utility, a bid row achieving it,
/// and the item set it targets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BestResponse {
    pub utility: Rat,
    pub bids: Vec<Rat>,
    pub items: ItemSet,
}

/// Per-item winning conditions for bidder `i` against the others' bids.
struct ItemMarket {
    price: Rat,
    favored: bool,
}

fn item_markets(inst: &AuctionInstance, i: usize, bids: &BidProfile) -> Vec<ItemMarket> {
    let n = inst.bidder_count();
    (0..inst.item_count())
        .map(|j| {
            let price = (0..n)
                .filter(|&k| k != i)
                .map(|k| bids.get(k, j).clone())
                .max()
                .unwrap_or_else(Rat::zero);
            let favored = (0..n)
                .filter(|&k| k != i && *bids.get(k, j) == price)
                .all(|k| inst.tie_break().prefers(i, k));
            ItemMarket { price, favored }
        })
        .collect()
}

/// Exact best response for bidder `i` against the other rows of `bids`
/// (row `i` is ignored). With a grid, the returned row lies on the grid
/// and items whose winning bid is not expressible are treated as
/// unwinnable; without one, the deviation space is unconstrained and the
/// result is the exact optimum over all real bid rows.
pub fn best_response(
    inst: &AuctionInstance,
    i: usize,
    bids: &BidProfile,
    grid: Option<&BidGrid>,
) -> Result<BestResponse> {
    if inst.mechanism() != Mechanism::SecondPrice {
        return Err(Error::UnsupportedMechanism(
            "subset-enumeration best response is a second-price construction".into(),
        ));
    }
    if i >= inst.bidder_count() {
        return Err(Error::BidderOutOfRange {
            bidder: i,
            bidders: inst.bidder_count(),
        });
    }
    let m = inst.item_count();
    let markets = item_markets(inst, i, bids);

    // The bid that wins item j at price markets[j].price, if expressible.
    let winning_bid = |j: usize| -> Option<Rat> {
        let mk = &markets[j];
        match grid {
            None => Some(if mk.favored {
                mk.price.clone()
            } else {
                &mk.price + Rat::one()
            }),
            Some(g) => {
                if mk.favored {
                    g.ceil_to(&mk.price)
                } else {
                    g.next_above(&mk.price)
                }
            }
        }
    };

    let mut winnable = ItemSet::empty();
    let mut win_bids: Vec<Option<Rat>> = Vec::with_capacity(m);
    for j in 0..m {
        let wb = winning_bid(j);
        if wb.is_some() {
            winnable = winnable.with(j);
        }
        win_bids.push(wb);
    }

    let mut best_utility = Rat::zero();
    let mut best_set = ItemSet::empty();
    for t in winnable.subsets() {
        let cost = rat_sum(t.iter().map(|j| &markets[j].price));
        let utility = inst.valuation(i).value(t) - cost;
        if utility > best_utility {
            best_utility = utility;
            best_set = t;
        }
    }

    let row: Vec<Rat> = (0..m)
        .map(|j| {
            if best_set.contains(j) {
                win_bids[j]
                    .clone()
                    .expect("winnable item has a winning bid")
            } else {
                Rat::zero()
            }
        })
        .collect();

    #[cfg(debug_assertions)]
    {
        let realized = run_auction(inst, &bids.with_row(i, row.clone())?)?;
        debug_assert_eq!(
            realized.utilities[i], best_utility,
            "best-response row must realize its claimed utility"
        );
    }

    Ok(BestResponse {
        utility: best_utility,
        bids: row,
        items: best_set,
    })
}

/// A strictly improving unilateral deviation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Deviation {
    pub bidder: usize,
    pub bids: Vec<Rat>,
    pub gain: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PneCheck {
    pub is_equilibrium: bool,
    pub deviation: Option<Deviation>,
}

/// Verifies a pure Nash equilibrium against all real-valued unilateral
/// deviations (exact via subset enumeration).
pub fn verify_pne(inst: &AuctionInstance, bids: &BidProfile) -> Result<PneCheck> {
    let outcome = run_auction(inst, bids)?;
    for i in 0..inst.bidder_count() {
        let br = best_response(inst, i, bids, None)?;
        if br.utility > outcome.utilities[i] {
            let gain = &br.utility - &outcome.utilities[i];
            return Ok(PneCheck {
                is_equilibrium: false,
                deviation: Some(Deviation {
                    bidder: i,
                    bids: br.bids,
                    gain,
                }),
            });
        }
    }
    Ok(PneCheck {
        is_equilibrium: true,
        deviation: None,
    })
}

/// Candidate per-item deviation bids covering every outcome equivalence
/// class against the given per-world prices: zero, each threshold (wins
/// ties where favored), a midpoint into each open interval, and a point
/// above everything.
fn item_candidates(thresholds: &mut Vec<Rat>) -> Vec<Rat> {
    thresholds.sort();
    thresholds.dedup();
    let mut cands = vec![Rat::zero()];
    for (idx, t) in thresholds.iter().enumerate() {
        cands.push(t.clone());
        let above = match thresholds.get(idx + 1) {
            Some(next) => (t + next) / crate::rational::rat(2),
            None => t + Rat::one(),
        };
        cands.push(above);
    }
    cands.sort();
    cands.dedup();
    cands
}

fn cartesian_rows(per_item: &[Vec<Rat>], budget: u64) -> Result<Vec<Vec<Rat>>> {
    let mut total: u64 = 1;
    for c in per_item {
        total = total.saturating_mul(c.len() as u64);
        if total > budget {
            return Err(Error::BudgetExceeded(format!(
                "deviation candidates exceed budget {budget}"
            )));
        }
    }
    let mut rows: Vec<Vec<Rat>> = vec![Vec::new()];
    for cands in per_item {
        let mut next = Vec::with_capacity(rows.len() * cands.len());
        for row in &rows {
            for c in cands {
                let mut r = row.clone();
                r.push(c.clone());
                next.push(r);
            }
        }
        rows = next;
    }
    Ok(rows)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CceCheck {
    pub holds: bool,
    pub deviation: Option<Deviation>,
}

/// Coarse correlated equilibrium over a finite distribution of bid
/// profiles: no bidder gains in expectation from any fixed deviation row.
pub fn verify_cce(inst: &AuctionInstance, dist: &BidDistribution, budget: u64) -> Result<CceCheck> {
    if inst.mechanism() != Mechanism::SecondPrice {
        return Err(Error::UnsupportedMechanism(
            "breakpoint deviation reduction is second-price only".into(),
        ));
    }
    let m = inst.item_count();
    for i in 0..inst.bidder_count() {
        let mut expected_utility = Rat::zero();
        let mut per_item_thresholds: Vec<Vec<Rat>> = vec![Vec::new(); m];
        for (b, p) in dist.support() {
            let outcome = run_auction(inst, b)?;
            expected_utility += p * &outcome.utilities[i];
            let markets = item_markets(inst, i, b);
            for j in 0..m {
                per_item_thresholds[j].push(markets[j].price.clone());
            }
        }
        let per_item: Vec<Vec<Rat>> = per_item_thresholds
            .iter_mut()
            .map(item_candidates)
            .collect();
        for row in cartesian_rows(&per_item, budget)? {
            let mut deviated = Rat::zero();
            for (b, p) in dist.support() {
                let outcome = run_auction(inst, &b.with_row(i, row.clone())?)?;
                deviated += p * &outcome.utilities[i];
            }
            if deviated > expected_utility {
                let gain = &deviated - &expected_utility;
                return Ok(CceCheck {
                    holds: false,
                    deviation: Some(Deviation {
                        bidder: i,
                        bids: row,
                        gain,
                    }),
                });
            }
        }
    }
    Ok(CceCheck {
        holds: true,
        deviation: None,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BneDeviation {
    pub bidder: usize,
    pub type_index: usize,
    pub bids: Vec<Rat>,
    pub gain: Rat,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BneCheck {
    pub holds: bool,
    pub deviation: Option<BneDeviation>,
}

/// Bayes Nash equilibrium over a finite, possibly correlated type
/// distribution, with pure or mixed strategies. For every bidder and every
/// positive-probability type, conditioned on that type, no deviation row
/// beats the strategy in expectation.
pub fn verify_bne(
    space: &TypeSpace,
    dist: &TypeDistribution,
    strategies: &StrategyProfile,
    budget: u64,
) -> Result<BneCheck> {
    if space.mechanism != Mechanism::SecondPrice {
        return Err(Error::UnsupportedMechanism(
            "breakpoint deviation reduction is second-price only".into(),
        ));
    }
    space.validate()?;
    let worlds = realizations(space, dist, strategies)?;
    let m = space.item_count;

    for i in 0..space.bidder_count() {
        for t in 0..space.bidder_types[i].len() {
            if dist.marginal(i, t).is_zero() {
                continue;
            }
            // Unnormalized conditional expectations: the shared positive
            // normalizer cancels in the comparison.
            let mut lhs = Rat::zero();
            let mut per_item_thresholds: Vec<Vec<Rat>> = vec![Vec::new(); m];
            let mut relevant: Vec<(&crate::bayes::Realization, AuctionInstance)> = Vec::new();
            for world in &worlds {
                if world.type_profile[i] != t {
                    continue;
                }
                let inst = space.instance_for(world.type_profile)?;
                let outcome = run_auction(&inst, &world.bids)?;
                lhs += &world.prob * &outcome.utilities[i];
                let markets = item_markets(&inst, i, &world.bids);
                for j in 0..m {
                    per_item_thresholds[j].push(markets[j].price.clone());
                }
                relevant.push((world, inst));
            }
            let per_item: Vec<Vec<Rat>> = per_item_thresholds
                .iter_mut()
                .map(item_candidates)
                .collect();
            for row in cartesian_rows(&per_item, budget)? {
                let mut rhs = Rat::zero();
                for (world, inst) in &relevant {
                    let outcome = run_auction(inst, &world.bids.with_row(i, row.clone())?)?;
                    rhs += &world.prob * &outcome.utilities[i];
                }
                if rhs > lhs {
                    // Report the gain conditioned on the type.
                    let gain = (&rhs - &lhs) / dist.marginal(i, t);
                    return Ok(BneCheck {
                        holds: false,
                        deviation: Some(BneDeviation {
                            bidder: i,
                            type_index: t,
                            bids: row,
                            gain,
                        }),
                    });
                }
            }
        }
    }
    Ok(BneCheck {
        holds: true,
        deviation: None,
    })
}

/// The clause-bid equilibrium: on the canonical optimal allocation, each
/// bidder bids her maximizing clause on her bundle and zero elsewhere.
/// Requires clause-representable valuations.
pub fn construct_xos_pne(inst: &AuctionInstance, opt: &Optimum) -> Result<BidProfile> {
    if opt.maximizers.is_empty() {
        return Err(Error::EmptyMaximizers);
    }
    let sstar = opt.first();
    let mut rows = Vec::with_capacity(inst.bidder_count());
    for (i, bundle) in sstar.iter().enumerate() {
        let (_, clause) = inst.valuation(i).maximizing_clause(*bundle)?;
        let row: Vec<Rat> = (0..inst.item_count())
            .map(|j| {
                if bundle.contains(j) {
                    clause[j].clone()
                } else {
                    Rat::zero()
                }
            })
            .collect();
        rows.push(row);
    }
    BidProfile::new(rows)
}

/// Which bid-profile conditions surviving equilibria must satisfy.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct PneFilters {
    pub nob: bool,
    pub strong_nob: bool,
    pub inub: bool,
    pub snub: bool,
}

#[derive(Debug, Clone)]
pub struct PneSearch {
    /// Every grid profile that is a pure Nash equilibrium (against all
    /// real-valued deviations) and passes the filters, with its welfare
    /// ratio, in grid odometer order.
    pub equilibria: Vec<(BidProfile, Rat)>,
    pub worst_ratio: Option<Rat>,
    pub profiles_scanned: u64,
}

/// Scans every bid profile on the grid, keeps the pure Nash equilibria
/// passing the filters, and reports the worst welfare ratio found.
pub fn enumerate_pne(
    inst: &AuctionInstance,
    grid: &BidGrid,
    filters: PneFilters,
    opt: &Optimum,
    budget: u64,
) -> Result<PneSearch> {
    let n = inst.bidder_count();
    let m = inst.item_count();
    let points = grid.points_capped(budget)?;
    let g = points.len() as u128;
    let cells = n * m;
    let total = g
        .checked_pow(cells as u32)
        .ok_or_else(|| Error::BudgetExceeded("grid profile space overflows".into()))?;
    if total > budget as u128 {
        return Err(Error::BudgetExceeded(format!(
            "{total} grid profiles exceed budget {budget}"
        )));
    }

    let mut equilibria = Vec::new();
    let mut worst: Option<Rat> = None;
    let mut indices = vec![0usize; cells];
    let mut scanned: u64 = 0;
    loop {
        scanned += 1;
        let rows: Vec<Vec<Rat>> = (0..n)
            .map(|i| (0..m).map(|j| points[indices[i * m + j]].clone()).collect())
            .collect();
        let profile = BidProfile::new(rows)?;
        if passes(inst, &profile, filters, opt)? {
            let ratio = welfare_ratio(inst, &profile, &opt.value)?;
            if worst.as_ref().is_none_or(|w| ratio < *w) {
                worst = Some(ratio.clone());
            }
            equilibria.push((profile, ratio));
        }
        // Odometer.
        let mut k = 0;
        loop {
            if k == cells {
                break;
            }
            indices[k] += 1;
            if indices[k] < points.len() {
                break;
            }
            indices[k] = 0;
            k += 1;
        }
        if k == cells {
            break;
        }
    }
    Ok(PneSearch {
        equilibria,
        worst_ratio: worst,
        profiles_scanned: scanned,
    })
}

fn passes(
    inst: &AuctionInstance,
    profile: &BidProfile,
    filters: PneFilters,
    opt: &Optimum,
) -> Result<bool> {
    if !verify_pne(inst, profile)?.is_equilibrium {
        return Ok(false);
    }
    if filters.nob && !check_nob(inst, profile, false, CLASS_ENUM_LIMIT)?.holds {
        return Ok(false);
    }
    if filters.strong_nob && !check_nob(inst, profile, true, CLASS_ENUM_LIMIT)?.holds {
        return Ok(false);
    }
    if filters.inub && !check_inub(inst, profile, &opt.maximizers)?.holds {
        return Ok(false);
    }
    if filters.snub && !check_snub(inst, profile, &opt.maximizers)?.holds {
        return Ok(false);
    }
    Ok(true)
}

#[derive(Debug, Clone)]
pub struct Dynamics {
    /// Profiles visited, starting with the initial one; a new entry per
    /// strictly improving move.
    pub trajectory: Vec<BidProfile>,
    pub converged: bool,
    pub rounds: usize,
}

/// Repeated strict-improvement best-response updates in the given bidder
/// order. A full pass with no strict improvement is a fixed point, which
/// then verifies as a pure Nash equilibrium. Non-convergence within
/// `max_rounds` is an outcome, not an error.
pub fn best_response_dynamics(
    inst: &AuctionInstance,
    start: &BidProfile,
    order: &[usize],
    max_rounds: usize,
    grid: &BidGrid,
) -> Result<Dynamics> {
    for &i in order {
        if i >= inst.bidder_count() {
            return Err(Error::BidderOutOfRange {
                bidder: i,
                bidders: inst.bidder_count(),
            });
        }
    }
    let mut current = start.clone();
    let mut trajectory = vec![current.clone()];
    for round in 0..max_rounds {
        let mut improved = false;
        for &i in order {
            let utility = run_auction(inst, &current)?.utilities[i].clone();
            let br = best_response(inst, i, &current, Some(grid))?;
            if br.utility > utility {
                current = current.with_row(i, br.bids)?;
                trajectory.push(current.clone());
                improved = true;
            }
        }
        if !improved {
            return Ok(Dynamics {
                trajectory,
                converged: true,
                rounds: round + 1,
            });
        }
    }
    Ok(Dynamics {
        trajectory,
        converged: false,
        rounds: max_rounds,
    })
}

/// The allocation-certifying checks used by the search filters, exposed
/// for callers that need a single profile's full verdict.
pub fn profile_passes(
    inst: &AuctionInstance,
    profile: &BidProfile,
    filters: PneFilters,
    opt: &Optimum,
) -> Result<bool> {
    passes(inst, profile, filters, opt)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::mechanisms::fixtures::{bids, ud_2x2_high, ud_2x2_low};
    use crate::rational::{rat, ratio};
    use crate::valuations::Valuation;
    use crate::welfare::{optimal_allocations, DEFAULT_SEARCH_BUDGET};

    fn opt(inst: &AuctionInstance) -> Optimum {
        optimal_allocations(inst, DEFAULT_SEARCH_BUDGET).unwrap()
    }

    #[test]
    fn best_response_known_values() {
        let low = ud_2x2_low();
        let b = bids(&[&[0, 0], &[1, 0]]);
        let br = best_response(&low, 0, &b, None).unwrap();
        assert_eq!(br.utility, rat(1));

        let quiet = bids(&[&[0, 0], &[0, 0]]);
        let br = best_response(&low, 0, &quiet, None).unwrap();
        assert_eq!(br.utility, rat(2), "everything is free");

        let high = ud_2x2_high();
        let b = bids(&[&[0, 0], &[2, 1]]);
        let br = best_response(&high, 0, &b, None).unwrap();
        assert_eq!(br.utility, rat(1));
    }

    #[test]
    fn best_response_grid_mode_skips_unwinnable() {
        let high = ud_2x2_high();
        let b = bids(&[&[0, 0], &[2, 1]]);
        // Max 1: item 0 needs a bid above 2, unreachable; item 1 reachable.
        let grid = BidGrid::new(ratio(1, 2), rat(1)).unwrap();
        let br = best_response(&high, 0, &b, Some(&grid)).unwrap();
        assert_eq!(br.items, ItemSet::singleton(1));
        assert_eq!(br.utility, rat(1));
        assert_eq!(br.bids, vec![rat(0), rat(1)]);
    }

    #[test]
    fn verify_pne_on_known_profiles() {
        let high = ud_2x2_high();
        assert!(
            verify_pne(&high, &bids(&[&[1, 2], &[2, 1]]))
                .unwrap()
                .is_equilibrium
        );

        let single = AuctionInstance::new(
            vec![
                Valuation::Additive(vec![rat(1)]),
                Valuation::Additive(vec![rat(0)]),
            ],
            1,
            Mechanism::SecondPrice,
            None,
        )
        .unwrap();
        let losing = BidProfile::new(vec![vec![rat(0)], vec![ratio(1, 2)]]).unwrap();
        let check = verify_pne(&single, &losing).unwrap();
        assert!(!check.is_equilibrium);
        assert_eq!(check.deviation.as_ref().unwrap().bidder, 0);
        assert_eq!(check.deviation.unwrap().gain, ratio(1, 2));
    }

    #[test]
    fn cce_point_mass_matches_pne() {
        let high = ud_2x2_high();
        for rows in [
            vec![vec![rat(1), rat(2)], vec![rat(2), rat(1)]],
            vec![vec![rat(0), rat(0)], vec![rat(2), rat(1)]],
        ] {
            let b = BidProfile::new(rows).unwrap();
            let pne = verify_pne(&high, &b).unwrap().is_equilibrium;
            let cce = verify_cce(
                &high,
                &BidDistribution::point_mass(b),
                DEFAULT_DEVIATION_BUDGET,
            )
            .unwrap()
            .holds;
            assert_eq!(pne, cce);
        }
    }

    #[test]
    fn cce_mix_of_equilibria_holds() {
        let low = ud_2x2_low();
        let b1 = bids(&[&[0, 1], &[1, 0]]);
        let b2 = bids(&[&[1, 0], &[0, 1]]);
        assert!(verify_pne(&low, &b1).unwrap().is_equilibrium);
        assert!(verify_pne(&low, &b2).unwrap().is_equilibrium);
        let dist = BidDistribution::new(vec![(b1, ratio(1, 2)), (b2, ratio(1, 2))]).unwrap();
        assert!(
            verify_cce(&low, &dist, DEFAULT_DEVIATION_BUDGET)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn cce_mix_with_exploitable_branch_fails() {
        let high = ud_2x2_high();
        let eq = bids(&[&[1, 2], &[2, 1]]);
        let slack = bids(&[&[0, 0], &[2, 1]]);
        let dist = BidDistribution::new(vec![(eq, ratio(1, 2)), (slack, ratio(1, 2))]).unwrap();
        let check = verify_cce(&high, &dist, DEFAULT_DEVIATION_BUDGET).unwrap();
        assert!(!check.holds);
        assert_eq!(check.deviation.unwrap().bidder, 0);
    }

    #[test]
    fn cce_refuses_first_price() {
        let inst = ud_2x2_high().with_mechanism(Mechanism::FirstPrice);
        let dist = BidDistribution::point_mass(bids(&[&[1, 2], &[2, 1]]));
        assert!(matches!(
            verify_cce(&inst, &dist, DEFAULT_DEVIATION_BUDGET),
            Err(Error::UnsupportedMechanism(_))
        ));
    }

    fn point_mass_space(inst: &AuctionInstance) -> (TypeSpace, TypeDistribution) {
        let space = TypeSpace {
            mechanism: inst.mechanism(),
            tie_break: None,
            item_count: inst.item_count(),
            bidder_types: inst.valuations().iter().map(|v| vec![v.clone()]).collect(),
        };
        let profile = vec![0; inst.bidder_count()];
        let dist = TypeDistribution::new(&space, vec![(profile, Rat::one())]).unwrap();
        (space, dist)
    }

    #[test]
    fn bne_point_mass_reduces_to_pne() {
        let high = ud_2x2_high();
        let (space, dist) = point_mass_space(&high);
        for (rows, expected) in [
            (vec![vec![rat(1), rat(2)], vec![rat(2), rat(1)]], true),
            (vec![vec![rat(0), rat(0)], vec![rat(2), rat(1)]], false),
        ] {
            let strategies = StrategyProfile {
                per_bidder: rows
                    .iter()
                    .map(|r| vec![crate::bayes::MixedBid::pure(r.clone())])
                    .collect(),
            };
            let check = verify_bne(&space, &dist, &strategies, DEFAULT_DEVIATION_BUDGET).unwrap();
            assert_eq!(check.holds, expected);
            let pne = verify_pne(&high, &BidProfile::new(rows).unwrap()).unwrap();
            assert_eq!(check.holds, pne.is_equilibrium);
        }
    }

    #[test]
    fn bne_flags_ignored_conditional_deviation() {
        // Bidder 0 has a low and a high type for one item; the opponent
        // always bids 3/2. The high type leaving the item on the table is
        // a profitable conditional deviation.
        let space = TypeSpace {
            mechanism: Mechanism::SecondPrice,
            tie_break: None,
            item_count: 1,
            bidder_types: vec![
                vec![
                    Valuation::Additive(vec![rat(1)]),
                    Valuation::Additive(vec![rat(3)]),
                ],
                vec![Valuation::Additive(vec![rat(2)])],
            ],
        };
        let dist = TypeDistribution::new(
            &space,
            vec![(vec![0, 0], ratio(1, 2)), (vec![1, 0], ratio(1, 2))],
        )
        .unwrap();
        let passive = StrategyProfile {
            per_bidder: vec![
                vec![
                    crate::bayes::MixedBid::pure(vec![rat(0)]),
                    crate::bayes::MixedBid::pure(vec![rat(0)]),
                ],
                vec![crate::bayes::MixedBid::pure(vec![ratio(3, 2)])],
            ],
        };
        let check = verify_bne(&space, &dist, &passive, DEFAULT_DEVIATION_BUDGET).unwrap();
        assert!(!check.holds);
        let deviation = check.deviation.unwrap();
        assert_eq!((deviation.bidder, deviation.type_index), (0, 1));
        assert_eq!(deviation.gain, ratio(3, 2));

        // Bidding the value per type is a Bayes Nash equilibrium here.
        let truthful = StrategyProfile {
            per_bidder: vec![
                vec![
                    crate::bayes::MixedBid::pure(vec![rat(1)]),
                    crate::bayes::MixedBid::pure(vec![rat(3)]),
                ],
                vec![crate::bayes::MixedBid::pure(vec![rat(2)])],
            ],
        };
        assert!(
            verify_bne(&space, &dist, &truthful, DEFAULT_DEVIATION_BUDGET)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn bne_two_type_product_expectation() {
        // Two equiprobable types per bidder, each playing the clause bids
        // of its own full-information equilibrium. The verdict is
        // computed, then cross-checked under a uniform value rescaling,
        // which cannot change any expected-utility comparison.
        let scale = |v: &Valuation, k: i64| match v {
            Valuation::UnitDemand(vals) => {
                Valuation::UnitDemand(vals.iter().map(|x| x * rat(k)).collect())
            }
            _ => unreachable!(),
        };
        let high = ud_2x2_high();
        let build = |k: i64| -> (TypeSpace, TypeDistribution, StrategyProfile) {
            let space = TypeSpace {
                mechanism: Mechanism::SecondPrice,
                tie_break: None,
                item_count: 2,
                bidder_types: vec![
                    vec![scale(high.valuation(0), k), scale(high.valuation(0), 2 * k)],
                    vec![scale(high.valuation(1), k), scale(high.valuation(1), 2 * k)],
                ],
            };
            let quarter = ratio(1, 4);
            let dist = TypeDistribution::new(
                &space,
                vec![
                    (vec![0, 0], quarter.clone()),
                    (vec![0, 1], quarter.clone()),
                    (vec![1, 0], quarter.clone()),
                    (vec![1, 1], quarter),
                ],
            )
            .unwrap();
            let strategies = StrategyProfile {
                per_bidder: vec![
                    vec![
                        crate::bayes::MixedBid::pure(vec![rat(3 * k), rat(0)]),
                        crate::bayes::MixedBid::pure(vec![rat(6 * k), rat(0)]),
                    ],
                    vec![
                        crate::bayes::MixedBid::pure(vec![rat(0), rat(3 * k)]),
                        crate::bayes::MixedBid::pure(vec![rat(0), rat(6 * k)]),
                    ],
                ],
            };
            (space, dist, strategies)
        };
        let (space, dist, strategies) = build(1);
        let verdict = verify_bne(&space, &dist, &strategies, DEFAULT_DEVIATION_BUDGET)
            .unwrap()
            .holds;
        let (space2, dist2, strategies2) = build(3);
        let rescaled = verify_bne(&space2, &dist2, &strategies2, DEFAULT_DEVIATION_BUDGET)
            .unwrap()
            .holds;
        assert_eq!(verdict, rescaled, "verdict must be scale-invariant");
        // Bidding on disjoint items, every type wins its item for free.
        assert!(verdict);
    }

    #[test]
    fn cce_breakpoint_reduction_matches_grid_scan() {
        // The breakpoint deviation set must dominate every on-grid
        // deviation row; sweep a fine grid and compare expected utilities.
        let high = ud_2x2_high();
        let b1 = bids(&[&[1, 2], &[2, 1]]);
        let b2 = bids(&[&[0, 0], &[1, 3]]);
        let dist = BidDistribution::new(vec![(b1, ratio(1, 2)), (b2, ratio(1, 2))]).unwrap();
        let check = verify_cce(&high, &dist, DEFAULT_DEVIATION_BUDGET).unwrap();

        let grid = BidGrid::new(ratio(1, 4), rat(4)).unwrap();
        let points = grid.points_capped(100).unwrap();
        let mut any_grid_gain = false;
        for i in 0..2 {
            let expected: Rat = dist
                .support()
                .iter()
                .map(|(b, p)| p * &run_auction(&high, b).unwrap().utilities[i])
                .fold(Rat::zero(), |acc, x| acc + x);
            for x in &points {
                for y in &points {
                    let row = vec![x.clone(), y.clone()];
                    let deviated: Rat = dist
                        .support()
                        .iter()
                        .map(|(b, p)| {
                            p * &run_auction(&high, &b.with_row(i, row.clone()).unwrap())
                                .unwrap()
                                .utilities[i]
                        })
                        .fold(Rat::zero(), |acc, x| acc + x);
                    if deviated > expected {
                        any_grid_gain = true;
                    }
                }
            }
        }
        assert_eq!(check.holds, !any_grid_gain);
    }

    #[test]
    fn xos_pne_construction_on_clause_pair() {
        let inst = AuctionInstance::new(
            vec![
                Valuation::Xos(vec![
                    vec![rat(2), rat(2), rat(0), rat(0)],
                    vec![rat(0), rat(0), rat(1), rat(1)],
                ]),
                Valuation::Xos(vec![
                    vec![rat(0), rat(0), rat(2), rat(2)],
                    vec![rat(1), rat(1), rat(0), rat(0)],
                ]),
            ],
            4,
            Mechanism::SecondPrice,
            None,
        )
        .unwrap();
        let optimum = opt(&inst);
        let b = construct_xos_pne(&inst, &optimum).unwrap();
        assert_eq!(b.row(0), &[rat(2), rat(2), rat(0), rat(0)]);
        assert_eq!(b.row(1), &[rat(0), rat(0), rat(2), rat(2)]);
        assert!(verify_pne(&inst, &b).unwrap().is_equilibrium);
        let out = run_auction(&inst, &b).unwrap();
        assert_eq!(out.welfare, optimum.value);
    }

    #[test]
    fn xos_pne_construction_on_unit_demand() {
        let high = ud_2x2_high();
        let optimum = opt(&high);
        let b = construct_xos_pne(&high, &optimum).unwrap();
        assert_eq!(b.row(0), &[rat(3), rat(0)]);
        assert_eq!(b.row(1), &[rat(0), rat(3)]);
        assert!(verify_pne(&high, &b).unwrap().is_equilibrium);
        assert_eq!(welfare_ratio(&high, &b, &optimum.value).unwrap(), rat(1));
    }

    #[test]
    fn xos_pne_rejects_tables() {
        let inst = AuctionInstance::new(
            vec![Valuation::Table {
                items: 1,
                values: vec![rat(0), rat(1)],
            }],
            1,
            Mechanism::SecondPrice,
            None,
        )
        .unwrap();
        let optimum = opt(&inst);
        assert!(matches!(
            construct_xos_pne(&inst, &optimum),
            Err(Error::UnsupportedKind(_))
        ));
    }

    #[test]
    fn enumerate_pne_worst_ratios() {
        let high = ud_2x2_high();
        let optimum = opt(&high);
        let grid = BidGrid::new(rat(1), rat(3)).unwrap();
        let filters = PneFilters {
            nob: true,
            inub: true,
            ..Default::default()
        };
        let search = enumerate_pne(&high, &grid, filters, &optimum, 1_000_000).unwrap();
        assert!(!search.equilibria.is_empty());
        assert_eq!(search.worst_ratio, Some(ratio(2, 3)));

        let low = ud_2x2_low();
        let optimum = opt(&low);
        let grid = BidGrid::new(rat(1), rat(2)).unwrap();
        let filters = PneFilters {
            nob: true,
            ..Default::default()
        };
        let search = enumerate_pne(&low, &grid, filters, &optimum, 1_000_000).unwrap();
        assert_eq!(search.worst_ratio, Some(ratio(1, 2)));
    }

    #[test]
    fn enumerate_pne_single_item_full_efficiency() {
        let inst = AuctionInstance::new(
            vec![
                Valuation::Additive(vec![rat(1)]),
                Valuation::Additive(vec![ratio(1, 2)]),
            ],
            1,
            Mechanism::SecondPrice,
            None,
        )
        .unwrap();
        let optimum = opt(&inst);
        let grid = BidGrid::new(ratio(1, 2), rat(1)).unwrap();
        let filters = PneFilters {
            nob: true,
            inub: true,
            ..Default::default()
        };
        let search = enumerate_pne(&inst, &grid, filters, &optimum, 1_000_000).unwrap();
        assert_eq!(search.worst_ratio, Some(rat(1)));
    }

    #[test]
    fn enumerate_pne_budget_enforced() {
        let high = ud_2x2_high();
        let optimum = opt(&high);
        let grid = BidGrid::new(rat(1), rat(3)).unwrap();
        assert!(matches!(
            enumerate_pne(&high, &grid, PneFilters::default(), &optimum, 10),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn dynamics_fixed_point_and_convergence() {
        let high = ud_2x2_high();
        let grid = BidGrid::new(ratio(1, 4), rat(3)).unwrap();
        let eq = bids(&[&[1, 2], &[2, 1]]);
        let dyn0 = best_response_dynamics(&high, &eq, &[0, 1], 20, &grid).unwrap();
        assert!(dyn0.converged);
        assert_eq!(dyn0.trajectory.len(), 1, "already a fixed point");

        let from_zero =
            best_response_dynamics(&high, &BidProfile::zeros(2, 2), &[0, 1], 50, &grid).unwrap();
        assert!(from_zero.converged);
        let last = from_zero.trajectory.last().unwrap();
        assert!(verify_pne(&high, last).unwrap().is_equilibrium);
    }

    #[test]
    fn dynamics_single_item_winner_is_higher_value() {
        let inst = AuctionInstance::new(
            vec![
                Valuation::Additive(vec![rat(1)]),
                Valuation::Additive(vec![ratio(1, 2)]),
            ],
            1,
            Mechanism::SecondPrice,
            None,
        )
        .unwrap();
        let grid = BidGrid::new(ratio(1, 4), rat(1)).unwrap();
        let run =
            best_response_dynamics(&inst, &BidProfile::zeros(2, 1), &[0, 1], 50, &grid).unwrap();
        assert!(run.converged);
        let last = run.trajectory.last().unwrap();
        let out = run_auction(&inst, last).unwrap();
        assert_eq!(out.winner, vec![0]);
    }

    #[test]
    fn grid_rounding() {
        let grid = BidGrid::new(ratio(1, 2), rat(2)).unwrap();
        assert_eq!(grid.ceil_to(&ratio(3, 4)), Some(rat(1)));
        assert_eq!(grid.ceil_to(&rat(1)), Some(rat(1)));
        assert_eq!(grid.next_above(&rat(1)), Some(ratio(3, 2)));
        assert_eq!(grid.next_above(&ratio(3, 4)), Some(rat(1)));
        assert_eq!(grid.next_above(&rat(2)), None);
        assert_eq!(grid.point_count(), 5);
    }

    #[test]
    fn default_grid_expresses_values() {
        let high = ud_2x2_high();
        let grid = BidGrid::default_for(&high).unwrap();
        assert_eq!(grid.max, rat(3));
        assert_eq!(grid.step, ratio(1, 4));
    }
}
