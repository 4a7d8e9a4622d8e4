//! Finite-support machinery for incomplete-information checks: type
//! spaces, joint (possibly correlated) distributions over type profiles,
//! distributions over bid profiles, and pure or mixed strategies.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::mechanisms::{AuctionInstance, BidProfile, Mechanism, TieBreak};
use crate::rational::{rat_sum, Rat};
use crate::valuations::Valuation;

/// Per-bidder lists of possible valuations, with the shared market shape.
#[derive(Debug, Clone)]
pub struct TypeSpace {
    pub mechanism: Mechanism,
    pub tie_break: Option<TieBreak>,
    pub item_count: usize,
    /// `bidder_types[i]` holds bidder `i`'s possible valuations.
    pub bidder_types: Vec<Vec<Valuation>>,
}

impl TypeSpace {
    pub fn bidder_count(&self) -> usize {
        self.bidder_types.len()
    }

    pub fn validate(&self) -> Result<()> {
        if self.bidder_types.is_empty() {
            return Err(Error::InvalidInput(
                "type space needs at least one bidder".into(),
            ));
        }
        for (i, types) in self.bidder_types.iter().enumerate() {
            if types.is_empty() {
                return Err(Error::InvalidInput(format!("bidder {i} has no types")));
            }
            for (t, v) in types.iter().enumerate() {
                v.validate()
                    .map_err(|e| Error::InvalidValuation(format!("bidder {i} type {t}: {e}")))?;
                if v.item_count() != self.item_count {
                    return Err(Error::DimensionMismatch {
                        expected: format!("{} items", self.item_count),
                        got: format!("{} for bidder {i} type {t}", v.item_count()),
                    });
                }
            }
        }
        Ok(())
    }

    /// The full-information instance realized by one type profile.
    pub fn instance_for(&self, profile: &[usize]) -> Result<AuctionInstance> {
        if profile.len() != self.bidder_count() {
            return Err(Error::DimensionMismatch {
                expected: format!("{} type indices", self.bidder_count()),
                got: format!("{}", profile.len()),
            });
        }
        let mut vals = Vec::with_capacity(profile.len());
        for (i, &t) in profile.iter().enumerate() {
            let types = &self.bidder_types[i];
            let v = types
                .get(t)
                .ok_or_else(|| Error::InvalidInput(format!("bidder {i} has no type {t}")))?;
            vals.push(v.clone());
        }
        AuctionInstance::new(
            vals,
            self.item_count,
            self.mechanism,
            self.tie_break.clone(),
        )
    }
}

/// Joint distribution over type profiles; probabilities are exact and sum
/// to one. Correlation across bidders is allowed.
#[derive(Debug, Clone)]
pub struct TypeDistribution {
    support: Vec<(Vec<usize>, Rat)>,
}

impl TypeDistribution {
    pub fn new(space: &TypeSpace, support: Vec<(Vec<usize>, Rat)>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::InvalidDistribution("empty support".into()));
        }
        let mut total = Rat::zero();
        for (profile, p) in &support {
            if p.is_negative() {
                return Err(Error::InvalidDistribution("negative probability".into()));
            }
            if profile.len() != space.bidder_count() {
                return Err(Error::InvalidDistribution(format!(
                    "profile length {} for {} bidders",
                    profile.len(),
                    space.bidder_count()
                )));
            }
            for (i, &t) in profile.iter().enumerate() {
                if t >= space.bidder_types[i].len() {
                    return Err(Error::InvalidDistribution(format!(
                        "bidder {i} type {t} out of range"
                    )));
                }
            }
            total += p;
        }
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {total}, expected 1"
            )));
        }
        Ok(TypeDistribution { support })
    }

    pub fn support(&self) -> &[(Vec<usize>, Rat)] {
        &self.support
    }

    /// Marginal probability that bidder `i` has type `t`.
    pub fn marginal(&self, i: usize, t: usize) -> Rat {
        rat_sum(
            self.support
                .iter()
                .filter(|(profile, _)| profile[i] == t)
                .map(|(_, p)| p),
        )
    }
}

/// Finite distribution over bid profiles (for coarse-correlated checks).
#[derive(Debug, Clone)]
pub struct BidDistribution {
    support: Vec<(BidProfile, Rat)>,
}

impl BidDistribution {
    pub fn new(support: Vec<(BidProfile, Rat)>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::InvalidDistribution("empty support".into()));
        }
        let mut total = Rat::zero();
        let (n, m) = (support[0].0.bidder_count(), support[0].0.item_count());
        for (b, p) in &support {
            if p.is_negative() {
                return Err(Error::InvalidDistribution("negative probability".into()));
            }
            if b.bidder_count() != n || b.item_count() != m {
                return Err(Error::InvalidDistribution("ragged support profiles".into()));
            }
            total += p;
        }
        if !total.is_one() {
            return Err(Error::InvalidDistribution(format!(
                "probabilities sum to {total}, expected 1"
            )));
        }
        Ok(BidDistribution { support })
    }

    pub fn point_mass(b: BidProfile) -> Self {
        BidDistribution {
            support: vec![(b, Rat::one())],
        }
    }

    pub fn support(&self) -> &[(BidProfile, Rat)] {
        &self.support
    }
}

/// A bid row, or a finite mixture of bid rows.
#[derive(Debug, Clone)]
pub struct MixedBid {
    support: Vec<(Vec<Rat>, Rat)>,
}

impl MixedBid {
    pub fn pure(row: Vec<Rat>) -> Self {
        MixedBid {
            support: vec![(row, Rat::one())],
        }
    }

    pub fn mixed(support: Vec<(Vec<Rat>, Rat)>) -> Result<Self> {
        if support.is_empty() {
            return Err(Error::InvalidDistribution("empty bid mixture".into()));
        }
        let total = rat_sum(support.iter().map(|(_, p)| p));
        if !total.is_one() || support.iter().any(|(_, p)| p.is_negative()) {
            return Err(Error::InvalidDistribution(
                "bid mixture probabilities must be nonnegative and sum to 1".into(),
            ));
        }
        Ok(MixedBid { support })
    }

    pub fn support(&self) -> &[(Vec<Rat>, Rat)] {
        &self.support
    }
}

/// Per bidder, a (possibly mixed) bid row for each of her types.
#[derive(Debug, Clone)]
pub struct StrategyProfile {
    /// `per_bidder[i][t]` is bidder `i`'s play at type `t`.
    pub per_bidder: Vec<Vec<MixedBid>>,
}

impl StrategyProfile {
    pub fn validate(&self, space: &TypeSpace) -> Result<()> {
        if self.per_bidder.len() != space.bidder_count() {
            return Err(Error::DimensionMismatch {
                expected: format!("{} bidders", space.bidder_count()),
                got: format!("{}", self.per_bidder.len()),
            });
        }
        for (i, per_type) in self.per_bidder.iter().enumerate() {
            if per_type.len() != space.bidder_types[i].len() {
                return Err(Error::DimensionMismatch {
                    expected: format!(
                        "strategy for each of bidder {i}'s {} types",
                        space.bidder_types[i].len()
                    ),
                    got: format!("{}", per_type.len()),
                });
            }
            for (t, mixed) in per_type.iter().enumerate() {
                for (row, _) in mixed.support() {
                    if row.len() != space.item_count {
                        return Err(Error::DimensionMismatch {
                            expected: format!("{} bids (bidder {i} type {t})", space.item_count),
                            got: format!("{}", row.len()),
                        });
                    }
                    if row.iter().any(|b| b.is_negative()) {
                        return Err(Error::InvalidInput(format!(
                            "negative bid in strategy of bidder {i} type {t}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// One realized world: a type profile with its instance, a drawn bid
/// profile, and the joint probability of the draw.
pub struct Realization<'a> {
    pub type_profile: &'a [usize],
    pub bids: BidProfile,
    pub prob: Rat,
}

/// Enumerates every (type profile, strategy draw) realization with its
/// joint probability. Probabilities sum to one across the output.
pub fn realizations<'a>(
    space: &TypeSpace,
    dist: &'a TypeDistribution,
    strategies: &StrategyProfile,
) -> Result<Vec<Realization<'a>>> {
    strategies.validate(space)?;
    let n = space.bidder_count();
    let mut out = Vec::new();
    for (profile, p) in dist.support() {
        if p.is_zero() {
            continue;
        }
        // Cartesian product over each bidder's mixture support.
        let per_bidder: Vec<&[(Vec<Rat>, Rat)]> = (0..n)
            .map(|i| strategies.per_bidder[i][profile[i]].support())
            .collect();
        let mut picks = vec![0usize; n];
        loop {
            let mut rows = Vec::with_capacity(n);
            let mut prob = p.clone();
            for i in 0..n {
                let (row, q) = &per_bidder[i][picks[i]];
                rows.push(row.clone());
                prob *= q;
            }
            if !prob.is_zero() {
                out.push(Realization {
                    type_profile: profile,
                    bids: BidProfile::new(rows)?,
                    prob,
                });
            }
            // Odometer increment.
            let mut i = 0;
            loop {
                if i == n {
                    break;
                }
                picks[i] += 1;
                if picks[i] < per_bidder[i].len() {
                    break;
                }
                picks[i] = 0;
                i += 1;
            }
            if i == n {
                break;
            }
        }
    }
    Ok(out)
}
