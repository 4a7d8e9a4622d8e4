//! Welfare and revenue certificates: pointwise smoothness and
//! revenue-guarantee inequalities, the composed equilibrium-welfare bound,
//! and the expected-form floors over finite type distributions.
//!
//! Every check is per-profile and exact. Conditional certificates
//! distinguish "inapplicable" (a precondition failed) from "violated"
//! (the certified inequality itself failed).

use num::{One, Signed, Zero};

use crate::bayes::{realizations, StrategyProfile, TypeDistribution, TypeSpace};
use crate::equilibria::verify_pne;
use crate::error::{Error, Result};
use crate::mechanisms::{run_auction, Allocation, AuctionInstance, BidProfile};
use crate::properties::{check_nob, check_snub};
use crate::rational::{rat, rat_sum, Rat};
use crate::valuations::{SetClass, CLASS_ENUM_LIMIT};
use crate::welfare::{optimal_allocations, Optimum, DEFAULT_SEARCH_BUDGET};

/// Certificate parameters. The smoothness pair bounds deviation utilities,
/// the revenue pair bounds revenue; either may be absent. No upper bound
/// is enforced on `delta`: the clause-valuation guarantee needs
/// `delta = m`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct GuaranteeParams {
    pub lambda: Option<Rat>,
    pub mu: Option<Rat>,
    pub gamma: Option<Rat>,
    pub delta: Option<Rat>,
}

impl GuaranteeParams {
    pub fn smooth(lambda: Rat, mu: Rat) -> Self {
        GuaranteeParams {
            lambda: Some(lambda),
            mu: Some(mu),
            ..Default::default()
        }
    }

    pub fn revenue(gamma: Rat, delta: Rat) -> Self {
        GuaranteeParams {
            gamma: Some(gamma),
            delta: Some(delta),
            ..Default::default()
        }
    }

    pub fn both(lambda: Rat, mu: Rat, gamma: Rat, delta: Rat) -> Self {
        GuaranteeParams {
            lambda: Some(lambda),
            mu: Some(mu),
            gamma: Some(gamma),
            delta: Some(delta),
        }
    }

    fn validate(&self) -> Result<()> {
        let pair = |a: &Option<Rat>, b: &Option<Rat>, name: &str| -> Result<()> {
            if a.is_some() != b.is_some() {
                return Err(Error::InvalidInput(format!(
                    "{name} parameters come in pairs"
                )));
            }
            for x in [a, b].into_iter().flatten() {
                if x.is_negative() {
                    return Err(Error::InvalidInput(format!(
                        "{name} parameters must be >= 0"
                    )));
                }
            }
            Ok(())
        };
        pair(&self.lambda, &self.mu, "smoothness")?;
        pair(&self.gamma, &self.delta, "revenue-guarantee")
    }
}

/// Equilibrium-welfare floor implied by the present certificates:
/// `lambda/(1+mu)`, `gamma/(1+delta)`, or `(lambda+gamma)/(1+mu+delta)`
/// when both pairs are present.
pub fn poa_bound(params: &GuaranteeParams) -> Result<Rat> {
    params.validate()?;
    let (num, den) = match (&params.lambda, &params.mu, &params.gamma, &params.delta) {
        (Some(l), Some(m), Some(g), Some(d)) => (l + g, Rat::one() + m + d),
        (Some(l), Some(m), None, None) => (l.clone(), Rat::one() + m),
        (None, None, Some(g), Some(d)) => (g.clone(), Rat::one() + d),
        _ => {
            return Err(Error::InvalidInput(
                "need at least one certificate pair".into(),
            ))
        }
    };
    Ok(num / den)
}

/// Result of checking one inequality over a list of profiles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SlackReport {
    pub holds: bool,
    /// Minimum of `lhs - rhs` across the profiles; negative iff violated.
    pub worst_slack: Option<Rat>,
    /// Index of the first violating profile.
    pub violator: Option<usize>,
}

/// `revenue(b) >= gamma·OPT − delta·SW(b)` for every listed profile.
pub fn check_revenue_guarantee(
    inst: &AuctionInstance,
    profiles: &[BidProfile],
    opt_value: &Rat,
    gamma: &Rat,
    delta: &Rat,
) -> Result<SlackReport> {
    let mut worst: Option<Rat> = None;
    let mut violator = None;
    for (idx, b) in profiles.iter().enumerate() {
        let outcome = run_auction(inst, b)?;
        let bound = gamma * opt_value - delta * &outcome.welfare;
        let slack = &outcome.revenue - bound;
        if slack.is_negative() && violator.is_none() {
            violator = Some(idx);
        }
        if worst.as_ref().is_none_or(|w| slack < *w) {
            worst = Some(slack);
        }
    }
    Ok(SlackReport {
        holds: violator.is_none(),
        worst_slack: worst,
        violator,
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SmoothnessCheck {
    pub holds: bool,
    /// `sum of deviation utilities − (lambda·OPT − mu·SW)`.
    pub slack: Rat,
    pub deviation_utility_sum: Rat,
}

/// Checks the smoothness inequality at one profile with supplied
/// per-bidder deviation rows: the sum over bidders of the utility of
/// deviating unilaterally must cover `lambda·OPT − mu·SW(b)`.
pub fn check_smoothness_at(
    inst: &AuctionInstance,
    bids: &BidProfile,
    deviations: &[Vec<Rat>],
    opt_value: &Rat,
    lambda: &Rat,
    mu: &Rat,
) -> Result<SmoothnessCheck> {
    if deviations.len() != inst.bidder_count() {
        return Err(Error::DimensionMismatch {
            expected: format!("{} deviation rows", inst.bidder_count()),
            got: format!("{}", deviations.len()),
        });
    }
    let outcome = run_auction(inst, bids)?;
    let mut utility_sum = Rat::zero();
    for (i, row) in deviations.iter().enumerate() {
        let deviated = run_auction(inst, &bids.with_row(i, row.clone())?)?;
        utility_sum += &deviated.utilities[i];
    }
    let bound = lambda * opt_value - mu * &outcome.welfare;
    let slack = &utility_sum - bound;
    Ok(SmoothnessCheck {
        holds: !slack.is_negative(),
        slack,
        deviation_utility_sum: utility_sum,
    })
}

/// The clause deviation: each bidder bids her maximizing clause on her
/// optimal bundle and zero elsewhere. Requires clause-representable
/// valuations.
pub fn xos_deviation(inst: &AuctionInstance, sstar: &Allocation) -> Result<Vec<Vec<Rat>>> {
    let mut rows = Vec::with_capacity(inst.bidder_count());
    for (i, bundle) in sstar.iter().enumerate() {
        let (_, clause) = inst.valuation(i).maximizing_clause(*bundle)?;
        rows.push(
            (0..inst.item_count())
                .map(|j| {
                    if bundle.contains(j) {
                        clause[j].clone()
                    } else {
                        Rat::zero()
                    }
                })
                .collect(),
        );
    }
    Ok(rows)
}

/// The prefix-marginal deviation for arbitrary valuations: each bidder
/// bids, on the items of her optimal bundle, the marginals of a
/// permutation that places the bundle first. The row sums to exactly the
/// bundle value, and the bundle-prefixed supports are dominated by the
/// valuation up to its marginal-shrinkage factor.
pub fn prefix_support_deviation(
    inst: &AuctionInstance,
    sstar: &Allocation,
) -> Result<Vec<Vec<Rat>>> {
    let m = inst.item_count();
    let mut rows = Vec::with_capacity(inst.bidder_count());
    for (i, bundle) in sstar.iter().enumerate() {
        let perm: Vec<usize> = bundle
            .iter()
            .chain((0..m).filter(|&j| !bundle.contains(j)))
            .collect();
        let support = inst
            .valuation(i)
            .permutation_supports(std::slice::from_ref(&perm))?
            .pop()
            .expect("one permutation in, one support out");
        rows.push(
            (0..m)
                .map(|j| {
                    if bundle.contains(j) {
                        support[j].clone()
                    } else {
                        Rat::zero()
                    }
                })
                .collect(),
        );
    }
    Ok(rows)
}

/// Deviation rows for the smoothness checks: the clause deviation where
/// the representation has clauses, the prefix-marginal deviation for
/// tables.
pub fn smoothness_deviation(inst: &AuctionInstance, sstar: &Allocation) -> Result<Vec<Vec<Rat>>> {
    if inst.valuations().iter().all(|v| v.as_clauses().is_some()) {
        xos_deviation(inst, sstar)
    } else {
        prefix_support_deviation(inst, sstar)
    }
}

/// Three-way verdict for conditional certificates.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Holds,
    Violated,
    Inapplicable,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FloorReport {
    pub status: CheckStatus,
    /// Welfare side of the comparison (pointwise or expected).
    pub lhs: Option<Rat>,
    /// Floor it must clear.
    pub rhs: Option<Rat>,
    pub detail: String,
}

impl FloorReport {
    fn inapplicable(detail: String) -> Self {
        FloorReport {
            status: CheckStatus::Inapplicable,
            lhs: None,
            rhs: None,
            detail,
        }
    }
}

/// Pointwise welfare floor: every profile with nonnegative utility sum and
/// a holding revenue-guarantee inequality has `SW >= gamma/(1+delta)·OPT`.
/// Profiles failing either precondition make the check inapplicable.
pub fn check_welfare_floor_profiles(
    inst: &AuctionInstance,
    profiles: &[BidProfile],
    opt_value: &Rat,
    gamma: &Rat,
    delta: &Rat,
) -> Result<FloorReport> {
    let floor_factor = gamma / (Rat::one() + delta);
    let mut worst: Option<(Rat, Rat)> = None;
    for (idx, b) in profiles.iter().enumerate() {
        let outcome = run_auction(inst, b)?;
        let utility_sum = rat_sum(outcome.utilities.iter());
        if utility_sum.is_negative() {
            return Ok(FloorReport::inapplicable(format!(
                "profile {idx}: utility sum {utility_sum} is negative"
            )));
        }
        let guarantee = gamma * opt_value - delta * &outcome.welfare;
        if outcome.revenue < guarantee {
            return Ok(FloorReport::inapplicable(format!(
                "profile {idx}: revenue-guarantee inequality fails"
            )));
        }
        let rhs = &floor_factor * opt_value;
        if worst.as_ref().is_none_or(|(lhs, _)| outcome.welfare < *lhs) {
            worst = Some((outcome.welfare.clone(), rhs));
        }
    }
    let Some((lhs, rhs)) = worst else {
        return Ok(FloorReport::inapplicable("no profiles supplied".into()));
    };
    Ok(FloorReport {
        status: if lhs >= rhs {
            CheckStatus::Holds
        } else {
            CheckStatus::Violated
        },
        detail: format!("welfare {lhs} vs floor {rhs}"),
        lhs: Some(lhs),
        rhs: Some(rhs),
    })
}

/// Expected welfare floor over a finite, possibly correlated type
/// distribution with a strategy profile:
/// `E[SW] >= gamma/(1+delta)·E[OPT]`, provided the expected utility sum is
/// nonnegative and the revenue-guarantee inequality holds in every
/// realization.
pub fn check_welfare_floor_expected(
    space: &TypeSpace,
    dist: &TypeDistribution,
    strategies: &StrategyProfile,
    gamma: &Rat,
    delta: &Rat,
) -> Result<FloorReport> {
    space.validate()?;
    let worlds = realizations(space, dist, strategies)?;
    let mut expected_welfare = Rat::zero();
    let mut expected_opt = Rat::zero();
    let mut expected_utility_sum = Rat::zero();
    let mut opt_cache: std::collections::BTreeMap<Vec<usize>, Rat> =
        std::collections::BTreeMap::new();
    for world in &worlds {
        let inst = space.instance_for(world.type_profile)?;
        let opt_value = match opt_cache.get(world.type_profile) {
            Some(v) => v.clone(),
            None => {
                let v = optimal_allocations(&inst, DEFAULT_SEARCH_BUDGET)?.value;
                opt_cache.insert(world.type_profile.to_vec(), v.clone());
                v
            }
        };
        let outcome = run_auction(&inst, &world.bids)?;
        let guarantee = gamma * &opt_value - delta * &outcome.welfare;
        if outcome.revenue < guarantee {
            return Ok(FloorReport::inapplicable(
                "revenue-guarantee inequality fails in a realization".into(),
            ));
        }
        expected_welfare += &world.prob * &outcome.welfare;
        expected_opt += &world.prob * &opt_value;
        expected_utility_sum += &world.prob * rat_sum(outcome.utilities.iter());
    }
    if expected_utility_sum.is_negative() {
        return Ok(FloorReport::inapplicable(format!(
            "expected utility sum {expected_utility_sum} is negative"
        )));
    }
    let rhs = gamma / (Rat::one() + delta) * &expected_opt;
    Ok(FloorReport {
        status: if expected_welfare >= rhs {
            CheckStatus::Holds
        } else {
            CheckStatus::Violated
        },
        detail: format!("expected welfare {expected_welfare} vs floor {rhs}"),
        lhs: Some(expected_welfare),
        rhs: Some(rhs),
    })
}

/// The two-thirds floor for subadditive markets: a pure Nash equilibrium
/// satisfying strong no-overbidding and set no-underbidding has welfare at
/// least `2/3` of optimal. Preconditions are re-verified; failing any
/// makes the check inapplicable.
pub fn subadditive_composed_check(
    inst: &AuctionInstance,
    bids: &BidProfile,
    opt: &Optimum,
) -> Result<FloorReport> {
    for (i, v) in inst.valuations().iter().enumerate() {
        match v.check_class(SetClass::Subadditive, CLASS_ENUM_LIMIT) {
            Ok(check) if check.holds => {}
            Ok(_) => {
                return Ok(FloorReport::inapplicable(format!(
                    "bidder {i}'s valuation is not subadditive"
                )))
            }
            Err(e) => return Ok(FloorReport::inapplicable(format!("bidder {i}: {e}"))),
        }
    }
    if !verify_pne(inst, bids)?.is_equilibrium {
        return Ok(FloorReport::inapplicable(
            "profile is not a pure Nash equilibrium".into(),
        ));
    }
    if !check_nob(inst, bids, true, CLASS_ENUM_LIMIT)?.holds {
        return Ok(FloorReport::inapplicable(
            "strong no-overbidding fails".into(),
        ));
    }
    if !check_snub(inst, bids, &opt.maximizers)?.holds {
        return Ok(FloorReport::inapplicable(
            "set no-underbidding fails".into(),
        ));
    }
    let outcome = run_auction(inst, bids)?;
    let rhs = rat(2) / rat(3) * &opt.value;
    Ok(FloorReport {
        status: if outcome.welfare >= rhs {
            CheckStatus::Holds
        } else {
            CheckStatus::Violated
        },
        detail: format!("welfare {} vs floor {rhs}", outcome.welfare),
        lhs: Some(outcome.welfare),
        rhs: Some(rhs),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bayes::MixedBid;
    use crate::mechanisms::fixtures::{bids, ud_2x2_high, ud_2x2_low};
    use crate::mechanisms::Mechanism;
    use crate::rational::ratio;
    use crate::valuations::Valuation;

    fn optimum(inst: &AuctionInstance) -> Optimum {
        optimal_allocations(inst, DEFAULT_SEARCH_BUDGET).unwrap()
    }

    fn clause_pair_instance() -> AuctionInstance {
        AuctionInstance::new(
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
        .unwrap()
    }

    #[test]
    fn poa_bound_forms() {
        assert_eq!(
            poa_bound(&GuaranteeParams::revenue(rat(1), rat(1))).unwrap(),
            ratio(1, 2)
        );
        assert_eq!(
            poa_bound(&GuaranteeParams::both(rat(1), rat(1), rat(1), rat(1))).unwrap(),
            ratio(2, 3)
        );
        let a = ratio(1, 2);
        assert_eq!(
            poa_bound(&GuaranteeParams::both(a.clone(), rat(1), a.clone(), a)).unwrap(),
            ratio(2, 5)
        );
        assert!(poa_bound(&GuaranteeParams::default()).is_err());
    }

    #[test]
    fn revenue_guarantee_on_known_profiles() {
        let high = ud_2x2_high();
        let opt = optimum(&high);
        let eq = bids(&[&[1, 2], &[2, 1]]);
        let report = check_revenue_guarantee(&high, &[eq], &opt.value, &rat(1), &rat(1)).unwrap();
        assert!(report.holds);
        assert_eq!(report.worst_slack, Some(rat(0)));

        let anything = bids(&[&[0, 0], &[0, 0]]);
        let report =
            check_revenue_guarantee(&high, &[anything], &opt.value, &rat(0), &rat(0)).unwrap();
        assert!(report.holds);

        // Zero-revenue clause equilibrium: (1,1) fails, (1,m) holds.
        let inst = clause_pair_instance();
        let opt = optimum(&inst);
        let bad_eq = bids(&[&[0, 0, 1, 1], &[1, 1, 0, 0]]);
        let report = check_revenue_guarantee(
            &inst,
            std::slice::from_ref(&bad_eq),
            &opt.value,
            &rat(1),
            &rat(1),
        )
        .unwrap();
        assert!(!report.holds);
        assert_eq!(report.worst_slack, Some(rat(-4)));
        let report =
            check_revenue_guarantee(&inst, &[bad_eq], &opt.value, &rat(1), &rat(4)).unwrap();
        assert!(report.holds);
    }

    #[test]
    fn smoothness_at_equilibrium() {
        let high = ud_2x2_high();
        let opt = optimum(&high);
        let eq = bids(&[&[1, 2], &[2, 1]]);
        let deviations = xos_deviation(&high, opt.first()).unwrap();
        assert_eq!(deviations[0], vec![rat(3), rat(0)]);
        assert_eq!(deviations[1], vec![rat(0), rat(3)]);
        let check =
            check_smoothness_at(&high, &eq, &deviations, &opt.value, &rat(1), &rat(1)).unwrap();
        assert!(check.holds);
        assert_eq!(check.slack, rat(0));
        assert_eq!(check.deviation_utility_sum, rat(2));
    }

    #[test]
    fn smoothness_at_truthful_profile() {
        let inst = clause_pair_instance();
        let opt = optimum(&inst);
        let deviations = xos_deviation(&inst, opt.first()).unwrap();
        let truthful = BidProfile::new(deviations.clone()).unwrap();
        let check =
            check_smoothness_at(&inst, &truthful, &deviations, &opt.value, &rat(1), &rat(1))
                .unwrap();
        assert!(check.holds);
    }

    #[test]
    fn prefix_smoothness_on_steep_identical_items() {
        // Two bidders with the three-identical-item table whose marginal
        // shrinkage factor is 1/2; the prefix deviation certifies the
        // (1/2, 1) inequality at a no-overbidding profile.
        let by_card = [rat(0), rat(2), rat(3), rat(5)];
        let values: Vec<Rat> = (0u32..8)
            .map(|mask| by_card[mask.count_ones() as usize].clone())
            .collect();
        let v = Valuation::Table { items: 3, values };
        let alpha = v
            .alpha_star(crate::valuations::CLASS_ENUM_LIMIT)
            .unwrap()
            .alpha;
        assert_eq!(alpha, ratio(1, 2));
        let inst =
            AuctionInstance::new(vec![v.clone(), v], 3, Mechanism::SecondPrice, None).unwrap();
        let opt = optimum(&inst);
        let rows = prefix_support_deviation(&inst, opt.first()).unwrap();
        for b in [
            bids(&[&[1, 1, 0], &[0, 0, 2]]),
            bids(&[&[2, 0, 0], &[0, 2, 0]]),
            bids(&[&[0, 0, 0], &[0, 0, 0]]),
        ] {
            assert!(
                check_nob(&inst, &b, false, crate::valuations::CLASS_ENUM_LIMIT)
                    .unwrap()
                    .holds
            );
            let check = check_smoothness_at(&inst, &b, &rows, &opt.value, &alpha, &rat(1)).unwrap();
            assert!(check.holds, "{check:?}");
        }
    }

    #[test]
    fn prefix_deviation_sums_to_bundle_value() {
        let v1 = Valuation::Table {
            items: 3,
            values: [0, 5, 5, 10, 10, 15, 15, 16]
                .iter()
                .map(|&x| rat(x))
                .collect(),
        };
        let v2 = Valuation::Table {
            items: 3,
            values: [0, 8, 8, 14, 15, 15, 15, 15]
                .iter()
                .map(|&x| rat(x))
                .collect(),
        };
        let inst = AuctionInstance::new(vec![v1, v2], 3, Mechanism::SecondPrice, None).unwrap();
        let opt = optimum(&inst);
        let rows = prefix_support_deviation(&inst, opt.first()).unwrap();
        for (i, row) in rows.iter().enumerate() {
            let total = rat_sum(row.iter());
            assert_eq!(total, inst.valuation(i).value(opt.first()[i]));
        }
    }

    #[test]
    fn welfare_floor_pointwise() {
        let high = ud_2x2_high();
        let opt = optimum(&high);
        let eq = bids(&[&[1, 2], &[2, 1]]);
        let report =
            check_welfare_floor_profiles(&high, &[eq], &opt.value, &rat(1), &rat(1)).unwrap();
        assert_eq!(report.status, CheckStatus::Holds);
        assert_eq!(report.lhs, Some(rat(4)));
        assert_eq!(report.rhs, Some(rat(3)));

        // Tight at the half-welfare equilibrium of the low-value pair.
        let low = ud_2x2_low();
        let opt = optimum(&low);
        let spite = bids(&[&[1, 100], &[100, 1]]);
        let report =
            check_welfare_floor_profiles(&low, &[spite], &opt.value, &rat(1), &rat(1)).unwrap();
        assert_eq!(report.status, CheckStatus::Holds);
        assert_eq!(report.lhs, report.rhs);
    }

    #[test]
    fn welfare_floor_inapplicable_when_guarantee_fails() {
        let inst = clause_pair_instance();
        let opt = optimum(&inst);
        let bad_eq = bids(&[&[0, 0, 1, 1], &[1, 1, 0, 0]]);
        let report =
            check_welfare_floor_profiles(&inst, &[bad_eq], &opt.value, &rat(1), &rat(1)).unwrap();
        assert_eq!(report.status, CheckStatus::Inapplicable);
    }

    #[test]
    fn expected_welfare_floor_scaled_copies() {
        // Correlated two-point distribution over a market and its doubled
        // copy, each playing its equilibrium: expectations clear the floor.
        let scale = |v: &Valuation, k: i64| match v {
            Valuation::UnitDemand(vals) => {
                Valuation::UnitDemand(vals.iter().map(|x| x * rat(k)).collect())
            }
            _ => unreachable!(),
        };
        let high = ud_2x2_high();
        let space = TypeSpace {
            mechanism: Mechanism::SecondPrice,
            tie_break: None,
            item_count: 2,
            bidder_types: vec![
                vec![high.valuation(0).clone(), scale(high.valuation(0), 2)],
                vec![high.valuation(1).clone(), scale(high.valuation(1), 2)],
            ],
        };
        let dist = TypeDistribution::new(
            &space,
            vec![(vec![0, 0], ratio(1, 2)), (vec![1, 1], ratio(1, 2))],
        )
        .unwrap();
        let strategies = StrategyProfile {
            per_bidder: vec![
                vec![
                    MixedBid::pure(vec![rat(1), rat(2)]),
                    MixedBid::pure(vec![rat(2), rat(4)]),
                ],
                vec![
                    MixedBid::pure(vec![rat(2), rat(1)]),
                    MixedBid::pure(vec![rat(4), rat(2)]),
                ],
            ],
        };
        let report =
            check_welfare_floor_expected(&space, &dist, &strategies, &rat(1), &rat(1)).unwrap();
        assert_eq!(report.status, CheckStatus::Holds);
        assert_eq!(report.lhs, Some(rat(6)));
        assert_eq!(report.rhs, Some(ratio(9, 2)));
    }

    #[test]
    fn composed_two_thirds_floor() {
        let high = ud_2x2_high();
        let opt = optimum(&high);
        let eq = bids(&[&[1, 2], &[2, 1]]);
        let report = subadditive_composed_check(&high, &eq, &opt).unwrap();
        assert_eq!(report.status, CheckStatus::Holds);
        assert_eq!(report.lhs, report.rhs, "the bound is tight here");

        let truthful = bids(&[&[3, 0], &[0, 3]]);
        let report = subadditive_composed_check(&high, &truthful, &opt).unwrap();
        assert_eq!(report.status, CheckStatus::Holds);

        // Non-equilibrium input is inapplicable, not violated.
        let junk = bids(&[&[0, 0], &[0, 0]]);
        let report = subadditive_composed_check(&high, &junk, &opt).unwrap();
        assert_eq!(report.status, CheckStatus::Inapplicable);
    }
}
