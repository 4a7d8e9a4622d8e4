// Shared by several integration-test binaries; not all of them use every helper.
#![allow(dead_code)]

//! Independent oracles and small instance draws for the acceptance suite.
//!
//! The oracles deliberately avoid the library's search/enumeration code
//! paths: plain odometer enumeration for optimal welfare, a full grid
//! scan with a from-scratch utility evaluator for best responses, and a
//! quadratic subset-pair scan for the marginal-shrinkage certificate.

use bidlab::items::ItemSet;
use bidlab::mechanisms::{Allocation, AuctionInstance, Mechanism};
use bidlab::rational::{rat, Rat};
use bidlab::valuations::Valuation;
use num::{One, Signed, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Optimal welfare and all maximizers by plain `n^m` odometer
/// enumeration, no pruning, no shared search code.
pub fn naive_optimum(inst: &AuctionInstance) -> (Rat, Vec<Allocation>) {
    let n = inst.bidder_count();
    let m = inst.item_count();
    let mut assignment = vec![0usize; m];
    let mut best: Option<Rat> = None;
    let mut maximizers: Vec<Allocation> = Vec::new();
    loop {
        let mut bundles = vec![ItemSet::empty(); n];
        for (j, &i) in assignment.iter().enumerate() {
            bundles[i] = bundles[i].with(j);
        }
        let welfare = (0..n)
            .map(|i| inst.valuation(i).value(bundles[i]))
            .fold(Rat::zero(), |acc, v| acc + v);
        match &best {
            Some(b) if welfare < *b => {}
            Some(b) if welfare == *b => maximizers.push(bundles),
            _ => {
                best = Some(welfare);
                maximizers = vec![bundles];
            }
        }
        let mut k = 0;
        loop {
            if k == m {
                break;
            }
            assignment[k] += 1;
            if assignment[k] < n {
                break;
            }
            assignment[k] = 0;
            k += 1;
        }
        if k == m {
            break;
        }
    }
    (best.expect("at least one assignment"), maximizers)
}

/// Bidder `i`'s utility under the given rows, evaluated from scratch:
/// per-item winner by maximum bid with the instance tie-break, prices per
/// mechanism.
pub fn naive_utility(inst: &AuctionInstance, rows: &[Vec<Rat>], i: usize) -> Rat {
    let n = inst.bidder_count();
    let m = inst.item_count();
    let mut won = ItemSet::empty();
    let mut paid = Rat::zero();
    #[allow(clippy::needless_range_loop)] // column-major walk over a row-major matrix
    for j in 0..m {
        let mut winner = 0usize;
        for k in 1..n {
            if rows[k][j] > rows[winner][j]
                || (rows[k][j] == rows[winner][j] && inst.tie_break().prefers(k, winner))
            {
                winner = k;
            }
        }
        if winner == i {
            won = won.with(j);
            paid += match inst.mechanism() {
                Mechanism::FirstPrice => rows[i][j].clone(),
                Mechanism::SecondPrice => (0..n)
                    .filter(|&k| k != i)
                    .map(|k| rows[k][j].clone())
                    .max()
                    .unwrap_or_else(Rat::zero),
            };
        }
    }
    inst.valuation(i).value(won) - paid
}

/// Best response utility for bidder `i` by scanning every grid row.
pub fn naive_best_response_scan(
    inst: &AuctionInstance,
    i: usize,
    rows: &[Vec<Rat>],
    grid_points: &[Rat],
) -> Rat {
    let m = inst.item_count();
    let mut indices = vec![0usize; m];
    let mut best: Option<Rat> = None;
    loop {
        let mut candidate = rows.to_vec();
        candidate[i] = indices.iter().map(|&k| grid_points[k].clone()).collect();
        let u = naive_utility(inst, &candidate, i);
        if best.as_ref().is_none_or(|b| u > *b) {
            best = Some(u);
        }
        let mut k = 0;
        loop {
            if k == m {
                break;
            }
            indices[k] += 1;
            if indices[k] < grid_points.len() {
                break;
            }
            indices[k] = 0;
            k += 1;
        }
        if k == m {
            break;
        }
    }
    best.expect("grid is nonempty")
}

/// Largest admissible shrinkage factor by scanning every ordered subset
/// pair: for all `s ⊂ t` and `j ∉ t` with a positive large-side marginal,
/// the minimum marginal ratio, clamped to `[0, 1]`.
pub fn brute_alpha(v: &Valuation) -> Rat {
    let m = v.item_count();
    let mut alpha = Rat::one();
    for t in ItemSet::all_subsets(m) {
        for s in ItemSet::all_subsets(m) {
            if s == t || !s.is_subset_of(t) {
                continue;
            }
            for j in (0..m).filter(|&j| !t.contains(j)) {
                let big = v.item_marginal(j, t);
                if !big.is_positive() {
                    continue;
                }
                let ratio = v.item_marginal(j, s) / big;
                if ratio < alpha {
                    alpha = ratio;
                }
            }
        }
    }
    alpha
}

/// Small-valued clause pair for grid enumeration: one or two clauses,
/// entries in {1, 2}, so the half-gap grid stays tiny.
pub fn small_xos(rng: &mut ChaCha8Rng, m: usize) -> Valuation {
    let clauses = rng.gen_range(1..=2);
    Valuation::Xos(
        (0..clauses)
            .map(|_| (0..m).map(|_| rat(rng.gen_range(1..=2))).collect())
            .collect(),
    )
}

/// Small subadditive two-item table: positive singletons, pair value
/// between the larger singleton and the singleton sum.
pub fn small_subadditive_pair(rng: &mut ChaCha8Rng) -> Valuation {
    let a = rat(rng.gen_range(1..=2));
    let b = rat(rng.gen_range(1..=2));
    let lo = a.clone().max(b.clone());
    let hi = &a + &b;
    let span = (&hi - &lo).to_integer();
    let pair = &lo + rat(rng.gen_range(0..=i64::try_from(&span).unwrap_or(0)));
    Valuation::Table {
        items: 2,
        values: vec![rat(0), a, b, pair],
    }
}

/// The half-minimum-gap grid over the instance's bundle values.
pub fn half_gap_grid(inst: &AuctionInstance) -> bidlab::equilibria::BidGrid {
    let m = inst.item_count();
    let mut values: Vec<Rat> = vec![Rat::zero()];
    for i in 0..inst.bidder_count() {
        for s in ItemSet::all_subsets(m) {
            values.push(inst.valuation(i).value(s));
        }
    }
    values.sort();
    values.dedup();
    let min_gap = values
        .windows(2)
        .map(|w| &w[1] - &w[0])
        .min()
        .expect("distinct values exist");
    let max = values.last().unwrap().clone();
    bidlab::equilibria::BidGrid::new(min_gap / rat(2), max).unwrap()
}
