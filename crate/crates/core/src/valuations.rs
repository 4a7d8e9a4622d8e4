//! Set-function valuations: evaluation, validation, class membership, and
//! the marginal-shrinkage certificate.
//!
//! Four representations are supported: additive and unit-demand vectors,
//! XOS clause lists, and dense tables indexed by item bitmask. All values
//! are exact rationals.

use num::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::feasibility::{maximize, LinearProgram, LpOutcome};
use crate::items::ItemSet;
use crate::rational::{rat_sum, Rat};

/// Default cap on item count for the exhaustive class checks.
pub const CLASS_ENUM_LIMIT: usize = 6;

/// A single bidder's valuation over subsets of `[m]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Valuation {
    /// `v(S) = sum of the coefficients of the items in S`.
    Additive(Vec<Rat>),
    /// `v(S) = max over items in S of the item value`.
    UnitDemand(Vec<Rat>),
    /// `v(S) = max over clauses of the clause's additive value on S`.
    Xos(Vec<Vec<Rat>>),
    /// Dense table: `values[mask]` is the value of the subset `mask`.
    Table { items: usize, values: Vec<Rat> },
}

/// Set-function classes, ordered by containment (each contains the previous).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SetClass {
    Submodular,
    Xos,
    Subadditive,
    Monotone,
}

/// Outcome of a class-membership check, with a violating witness when false.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClassCheck {
    pub holds: bool,
    pub witness: Option<ClassViolation>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ClassViolation {
    /// `v(smaller) > v(larger)` with `smaller ⊆ larger`.
    Monotonicity { smaller: ItemSet, larger: ItemSet },
    /// `v(s) + v(t) < v(s ∪ t)`.
    Subadditivity { s: ItemSet, t: ItemSet },
    /// `v(item | s) < v(item | t)` with `s ⊆ t`, `item ∉ t`.
    Submodularity { s: ItemSet, t: ItemSet, item: usize },
    /// No additive clause attains `v(s)` while staying below `v` everywhere.
    XosAt { s: ItemSet },
}

/// Largest `alpha` for which every item marginal shrinks by at most a
/// factor `alpha` when the conditioning set grows, with a minimizing
/// witness `(s, t, item)` unless the bound is vacuous.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AlphaCertificate {
    pub alpha: Rat,
    pub witness: Option<(ItemSet, ItemSet, usize)>,
}

impl Valuation {
    pub fn item_count(&self) -> usize {
        match self {
            Valuation::Additive(v) | Valuation::UnitDemand(v) => v.len(),
            Valuation::Xos(clauses) => clauses.first().map_or(0, |c| c.len()),
            Valuation::Table { items, .. } => *items,
        }
    }

    /// Checks normalization, monotonicity, and representation well-formedness.
    pub fn validate(&self) -> Result<()> {
        let m = self.item_count();
        if m == 0 {
            return Err(Error::InvalidValuation("no items".into()));
        }
        if m > crate::items::MAX_ITEMS {
            return Err(Error::InvalidValuation(format!(
                "item count {m} exceeds the supported maximum"
            )));
        }
        match self {
            Valuation::Additive(v) | Valuation::UnitDemand(v) => {
                if let Some(j) = v.iter().position(|x| x.is_negative()) {
                    return Err(Error::InvalidValuation(format!(
                        "negative value at item {j}"
                    )));
                }
            }
            Valuation::Xos(clauses) => {
                if clauses.is_empty() {
                    return Err(Error::InvalidValuation(
                        "xos needs at least one clause".into(),
                    ));
                }
                for (l, clause) in clauses.iter().enumerate() {
                    if clause.len() != m {
                        return Err(Error::InvalidValuation(format!(
                            "clause {l} has {} entries, expected {m}",
                            clause.len()
                        )));
                    }
                    if let Some(j) = clause.iter().position(|x| x.is_negative()) {
                        return Err(Error::InvalidValuation(format!(
                            "negative entry in clause {l} at item {j}"
                        )));
                    }
                }
            }
            Valuation::Table { items, values } => {
                if values.len() != 1usize << items {
                    return Err(Error::InvalidValuation(format!(
                        "table has {} entries, expected {}",
                        values.len(),
                        1usize << items
                    )));
                }
                if !values[0].is_zero() {
                    return Err(Error::InvalidValuation(
                        "table is not normalized: v(empty set) != 0".into(),
                    ));
                }
                for s in ItemSet::all_subsets(*items) {
                    for j in 0..*items {
                        if s.contains(j) {
                            continue;
                        }
                        let t = s.with(j);
                        if values[s.0 as usize] > values[t.0 as usize] {
                            return Err(Error::InvalidValuation(format!(
                                "not monotone: v({s}) > v({t})"
                            )));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Exact value of the set `s`.
    ///
    /// Panics if `s` contains an index at or beyond `item_count()`; the
    /// scenario layer validates indices before they reach here.
    pub fn value(&self, s: ItemSet) -> Rat {
        let m = self.item_count();
        assert!(
            s.is_subset_of(ItemSet::full(m)),
            "item set {s} out of range for {m} items"
        );
        match self {
            Valuation::Additive(v) => rat_sum(s.iter().map(|j| &v[j])),
            Valuation::UnitDemand(v) => s
                .iter()
                .map(|j| v[j].clone())
                .max()
                .unwrap_or_else(Rat::zero),
            Valuation::Xos(clauses) => clauses
                .iter()
                .map(|c| rat_sum(s.iter().map(|j| &c[j])))
                .max()
                .expect("validated xos has at least one clause"),
            Valuation::Table { values, .. } => values[s.0 as usize].clone(),
        }
    }

    /// Marginal value of `added` given `given`: `v(given ∪ added) − v(given)`.
    pub fn marginal(&self, added: ItemSet, given: ItemSet) -> Rat {
        self.value(given.union(added)) - self.value(given)
    }

    /// Marginal value of a single item given a set.
    pub fn item_marginal(&self, item: usize, given: ItemSet) -> Rat {
        self.marginal(ItemSet::singleton(item), given)
    }

    /// Class membership. Representation kinds that imply the class are
    /// answered constructively; tables are checked by exhaustive
    /// enumeration, capped at `limit` items.
    pub fn check_class(&self, class: SetClass, limit: usize) -> Result<ClassCheck> {
        let m = self.item_count();
        let enumerable = m <= limit;
        let by_kind = |needs_enum: bool| -> Result<()> {
            if needs_enum && !enumerable {
                Err(Error::BudgetExceeded(format!(
                    "class check needs enumeration over {m} items, limit is {limit}"
                )))
            } else {
                Ok(())
            }
        };
        match class {
            SetClass::Monotone => match self {
                // Nonnegative vectors and clauses are monotone by construction.
                Valuation::Additive(_) | Valuation::UnitDemand(_) | Valuation::Xos(_) => {
                    Ok(ClassCheck {
                        holds: true,
                        witness: None,
                    })
                }
                Valuation::Table { .. } => {
                    by_kind(true)?;
                    Ok(self.check_monotone())
                }
            },
            SetClass::Subadditive => match self {
                Valuation::Additive(_) | Valuation::UnitDemand(_) | Valuation::Xos(_) => {
                    Ok(ClassCheck {
                        holds: true,
                        witness: None,
                    })
                }
                Valuation::Table { .. } => {
                    by_kind(true)?;
                    Ok(self.check_subadditive())
                }
            },
            SetClass::Submodular => match self {
                Valuation::Additive(_) | Valuation::UnitDemand(_) => Ok(ClassCheck {
                    holds: true,
                    witness: None,
                }),
                Valuation::Xos(_) | Valuation::Table { .. } => {
                    by_kind(true)?;
                    Ok(self.check_submodular())
                }
            },
            SetClass::Xos => match self {
                Valuation::Additive(_) | Valuation::UnitDemand(_) | Valuation::Xos(_) => {
                    Ok(ClassCheck {
                        holds: true,
                        witness: None,
                    })
                }
                Valuation::Table { .. } => {
                    by_kind(true)?;
                    Ok(self.check_xos())
                }
            },
        }
    }

    fn check_monotone(&self) -> ClassCheck {
        let m = self.item_count();
        for s in ItemSet::all_subsets(m) {
            for j in (0..m).filter(|&j| !s.contains(j)) {
                let t = s.with(j);
                if self.value(s) > self.value(t) {
                    return ClassCheck {
                        holds: false,
                        witness: Some(ClassViolation::Monotonicity {
                            smaller: s,
                            larger: t,
                        }),
                    };
                }
            }
        }
        ClassCheck {
            holds: true,
            witness: None,
        }
    }

    fn check_subadditive(&self) -> ClassCheck {
        let m = self.item_count();
        for s in ItemSet::all_subsets(m) {
            for t in ItemSet::all_subsets(m) {
                if self.value(s) + self.value(t) < self.value(s.union(t)) {
                    return ClassCheck {
                        holds: false,
                        witness: Some(ClassViolation::Subadditivity { s, t }),
                    };
                }
            }
        }
        ClassCheck {
            holds: true,
            witness: None,
        }
    }

    fn check_submodular(&self) -> ClassCheck {
        let m = self.item_count();
        for t in ItemSet::all_subsets(m) {
            for s in t.subsets() {
                if s == t {
                    continue;
                }
                for j in (0..m).filter(|&j| !t.contains(j)) {
                    if self.item_marginal(j, s) < self.item_marginal(j, t) {
                        return ClassCheck {
                            holds: false,
                            witness: Some(ClassViolation::Submodularity { s, t, item: j }),
                        };
                    }
                }
            }
        }
        ClassCheck {
            holds: true,
            witness: None,
        }
    }

    /// A table is XOS iff for every set `s` there is an additive vector
    /// supported on `s` that attains `v(s)` while staying at most `v`
    /// pointwise. That is one exact LP per set: maximize the mass placed
    /// on `s` subject to every subset's cap; feasibility means the
    /// optimum reaches `v(s)`.
    fn check_xos(&self) -> ClassCheck {
        let m = self.item_count();
        for s in ItemSet::all_subsets(m) {
            if s.is_empty() {
                continue;
            }
            let items: Vec<usize> = s.iter().collect();
            let target = self.value(s);
            if target.is_zero() {
                continue;
            }
            let mut constraints = Vec::new();
            for t in s.subsets() {
                if t.is_empty() {
                    continue;
                }
                let row: Vec<Rat> = items
                    .iter()
                    .map(|&j| {
                        if t.contains(j) {
                            Rat::one()
                        } else {
                            Rat::zero()
                        }
                    })
                    .collect();
                constraints.push((row, self.value(t)));
            }
            let lp = LinearProgram {
                objective: vec![Rat::one(); items.len()],
                constraints,
            };
            match maximize(&lp).expect("xos feasibility program is well-formed") {
                LpOutcome::Optimal { value, .. } => {
                    if value < target {
                        return ClassCheck {
                            holds: false,
                            witness: Some(ClassViolation::XosAt { s }),
                        };
                    }
                }
                LpOutcome::Unbounded => unreachable!("objective is capped by v(s)"),
            }
        }
        ClassCheck {
            holds: true,
            witness: None,
        }
    }

    /// Certifies the largest `alpha` such that `v(j|S) >= alpha * v(j|T)`
    /// for every `S ⊂ T` and `j ∉ T`. Pairs with `v(j|T) = 0` impose no
    /// constraint; the result is clamped to `[0, 1]` and is `1` vacuously
    /// when no pair constrains it.
    pub fn alpha_star(&self, limit: usize) -> Result<AlphaCertificate> {
        let m = self.item_count();
        if m > limit {
            return Err(Error::BudgetExceeded(format!(
                "alpha certification enumerates over {m} items, limit is {limit}"
            )));
        }
        let mut best: Option<(Rat, (ItemSet, ItemSet, usize))> = None;
        for t in ItemSet::all_subsets(m) {
            for s in t.subsets() {
                if s == t {
                    continue;
                }
                for j in (0..m).filter(|&j| !t.contains(j)) {
                    let denom = self.item_marginal(j, t);
                    if !denom.is_positive() {
                        continue;
                    }
                    let ratio = self.item_marginal(j, s) / denom;
                    if best.as_ref().is_none_or(|(r, _)| ratio < *r) {
                        best = Some((ratio, (s, t, j)));
                    }
                }
            }
        }
        Ok(match best {
            Some((ratio, witness)) if ratio < Rat::one() => AlphaCertificate {
                alpha: ratio,
                witness: Some(witness),
            },
            // Every constraining ratio is at least 1, or none exists.
            _ => AlphaCertificate {
                alpha: Rat::one(),
                witness: None,
            },
        })
    }

    /// For each permutation, the additive vector of prefix marginals:
    /// entry `j` is `v(j | items preceding j in the permutation)`.
    pub fn permutation_supports(&self, perms: &[Vec<usize>]) -> Result<Vec<Vec<Rat>>> {
        let m = self.item_count();
        let mut out = Vec::with_capacity(perms.len());
        for perm in perms {
            if perm.len() != m {
                return Err(Error::InvalidInput(format!(
                    "permutation has {} entries, expected {m}",
                    perm.len()
                )));
            }
            let mut seen = ItemSet::empty();
            let mut support = vec![Rat::zero(); m];
            for &j in perm {
                if j >= m || seen.contains(j) {
                    return Err(Error::InvalidInput(format!("not a permutation of 0..{m}")));
                }
                support[j] = self.item_marginal(j, seen);
                seen = seen.with(j);
            }
            out.push(support);
        }
        Ok(out)
    }

    /// The valuation as an explicit clause list, when the representation
    /// admits one: additive is a single clause, unit-demand is one
    /// singleton clause per item, XOS is its clause list.
    pub fn as_clauses(&self) -> Option<Vec<Vec<Rat>>> {
        match self {
            Valuation::Additive(v) => Some(vec![v.clone()]),
            Valuation::UnitDemand(v) => {
                let m = v.len();
                Some(
                    (0..m)
                        .map(|j| {
                            let mut c = vec![Rat::zero(); m];
                            c[j] = v[j].clone();
                            c
                        })
                        .collect(),
                )
            }
            Valuation::Xos(clauses) => Some(clauses.clone()),
            Valuation::Table { .. } => None,
        }
    }

    /// A clause attaining `v(s)`, as `(clause index, clause)`. Errors on
    /// table-represented valuations, which carry no clause list.
    pub fn maximizing_clause(&self, s: ItemSet) -> Result<(usize, Vec<Rat>)> {
        let clauses = self
            .as_clauses()
            .ok_or_else(|| Error::UnsupportedKind("table valuation has no clause list".into()))?;
        let mut best = 0usize;
        let mut best_val = rat_sum(s.iter().map(|j| &clauses[0][j]));
        for (l, clause) in clauses.iter().enumerate().skip(1) {
            let val = rat_sum(s.iter().map(|j| &clause[j]));
            if val > best_val {
                best = l;
                best_val = val;
            }
        }
        debug_assert_eq!(best_val, self.value(s));
        Ok((best, clauses[best].clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{rat, ratio};

    fn table(values: &[Rat]) -> Valuation {
        let items = values.len().trailing_zeros() as usize;
        Valuation::Table {
            items,
            values: values.to_vec(),
        }
    }

    /// Three identical items, value 1 for one or two, 3/2 for all three.
    pub(crate) fn three_identical_flat() -> Valuation {
        table(&[
            rat(0),
            rat(1),
            rat(1),
            rat(1),
            rat(1),
            rat(1),
            rat(1),
            ratio(3, 2),
        ])
    }

    /// Three identical items with cardinality values 2, 2(1+a), 2(2+a).
    pub(crate) fn three_identical_steep(a: Rat) -> Valuation {
        let two = rat(2);
        let v1 = two.clone();
        let v2 = &two * (rat(1) + &a);
        let v3 = &two * (rat(2) + &a);
        let by_card = [rat(0), v1, v2, v3];
        let values: Vec<Rat> = (0u32..8)
            .map(|mask| by_card[mask.count_ones() as usize].clone())
            .collect();
        table(&values)
    }

    /// The submodular pair from the three-item equilibrium example.
    pub(crate) fn snub_example_tables() -> (Valuation, Valuation) {
        // Order: x=0, y=1, z=2; index by bitmask.
        let v1 = table(&[
            rat(0),
            rat(5),
            rat(5),
            rat(10),
            rat(10),
            rat(15),
            rat(15),
            rat(16),
        ]);
        let v2 = table(&[
            rat(0),
            rat(8),
            rat(8),
            rat(14),
            rat(15),
            rat(15),
            rat(15),
            rat(15),
        ]);
        (v1, v2)
    }

    #[test]
    fn value_per_kind() {
        let ud = Valuation::UnitDemand(vec![rat(2), rat(1)]);
        assert_eq!(ud.value(ItemSet::from_indices([0, 1])), rat(2));
        assert_eq!(ud.value(ItemSet::empty()), rat(0));

        let xos = Valuation::Xos(vec![
            vec![rat(2), rat(2), rat(0), rat(0)],
            vec![rat(0), rat(0), rat(1), rat(1)],
        ]);
        assert_eq!(xos.value(ItemSet::from_indices([2, 3])), rat(2));
        assert_eq!(xos.value(ItemSet::empty()), rat(0));

        let add = Valuation::Additive(vec![rat(1), rat(3)]);
        assert_eq!(add.value(ItemSet::from_indices([0, 1])), rat(4));
    }

    #[test]
    fn marginal_values() {
        let (v1, _) = snub_example_tables();
        // v1(xy | z) = v1(xyz) - v1(z) = 16 - 10.
        assert_eq!(
            v1.marginal(ItemSet::from_indices([0, 1]), ItemSet::singleton(2)),
            rat(6)
        );
        assert_eq!(v1.marginal(ItemSet::empty(), ItemSet::singleton(2)), rat(0));

        let flat = three_identical_flat();
        assert_eq!(flat.item_marginal(0, ItemSet::singleton(1)), rat(0));
    }

    #[test]
    fn validation_rejects_non_monotone_table() {
        let bad = Valuation::Table {
            items: 2,
            values: vec![rat(0), rat(2), rat(1), rat(1)],
        };
        let err = bad.validate().unwrap_err();
        assert!(err.to_string().contains("not monotone"));
    }

    #[test]
    fn validation_rejects_denormalized_table() {
        let bad = Valuation::Table {
            items: 1,
            values: vec![rat(1), rat(2)],
        };
        assert!(bad.validate().is_err());
    }

    #[test]
    fn xos_membership_flat_yes_steep_no() {
        let flat = three_identical_flat();
        flat.validate().unwrap();
        let check = flat.check_class(SetClass::Xos, CLASS_ENUM_LIMIT).unwrap();
        assert!(check.holds);

        let steep = three_identical_steep(ratio(1, 2));
        steep.validate().unwrap();
        let check = steep.check_class(SetClass::Xos, CLASS_ENUM_LIMIT).unwrap();
        assert!(!check.holds);
        assert_eq!(
            check.witness,
            Some(ClassViolation::XosAt {
                s: ItemSet::full(3)
            })
        );
    }

    #[test]
    fn additive_is_submodular() {
        let add = Valuation::Additive(vec![rat(1), rat(2), rat(3)]);
        assert!(
            add.check_class(SetClass::Submodular, CLASS_ENUM_LIMIT)
                .unwrap()
                .holds
        );
    }

    #[test]
    fn alpha_star_flat_is_zero_with_witness() {
        let flat = three_identical_flat();
        let cert = flat.alpha_star(CLASS_ENUM_LIMIT).unwrap();
        assert_eq!(cert.alpha, rat(0));
        let (s, t, j) = cert.witness.expect("witness for alpha = 0");
        assert_eq!(s.len(), 1);
        assert_eq!(t.len(), 2);
        assert!(s.is_subset_of(t));
        assert!(!t.contains(j));
    }

    #[test]
    fn alpha_star_additive_is_one() {
        let add = Valuation::Additive(vec![rat(1), rat(2)]);
        let cert = add.alpha_star(CLASS_ENUM_LIMIT).unwrap();
        assert_eq!(cert.alpha, rat(1));
        assert!(cert.witness.is_none());
    }

    #[test]
    fn alpha_star_steep_matches_parameter() {
        let a = ratio(1, 2);
        let cert = three_identical_steep(a.clone())
            .alpha_star(CLASS_ENUM_LIMIT)
            .unwrap();
        assert_eq!(cert.alpha, a);
    }

    #[test]
    fn submodular_iff_alpha_one() {
        let (v1, v2) = snub_example_tables();
        for v in [v1, v2] {
            assert!(
                v.check_class(SetClass::Submodular, CLASS_ENUM_LIMIT)
                    .unwrap()
                    .holds
            );
            assert_eq!(v.alpha_star(CLASS_ENUM_LIMIT).unwrap().alpha, rat(1));
        }
        let steep = three_identical_steep(ratio(1, 2));
        assert!(
            !steep
                .check_class(SetClass::Submodular, CLASS_ENUM_LIMIT)
                .unwrap()
                .holds
        );
        assert!(steep.alpha_star(CLASS_ENUM_LIMIT).unwrap().alpha < rat(1));
    }

    #[test]
    fn permutation_supports_prefix_marginals() {
        let add = Valuation::Additive(vec![rat(1), rat(2), rat(3)]);
        let supports = add.permutation_supports(&[vec![2, 0, 1]]).unwrap();
        assert_eq!(supports[0], vec![rat(1), rat(2), rat(3)]);

        let (v1, _) = snub_example_tables();
        let supports = v1
            .permutation_supports(&[vec![0, 1, 2], vec![2, 0, 1]])
            .unwrap();
        assert_eq!(supports[0], vec![rat(5), rat(5), rat(6)]);
        assert_eq!(supports[1], vec![rat(5), rat(1), rat(10)]);
    }

    #[test]
    fn permutation_supports_rejects_bad_input() {
        let add = Valuation::Additive(vec![rat(1), rat(2)]);
        assert!(add.permutation_supports(&[vec![0, 0]]).is_err());
        assert!(add.permutation_supports(&[vec![0]]).is_err());
    }

    #[test]
    fn maximizing_clause_selection() {
        let v1 = Valuation::Xos(vec![
            vec![rat(2), rat(2), rat(0), rat(0)],
            vec![rat(0), rat(0), rat(1), rat(1)],
        ]);
        let (idx, clause) = v1.maximizing_clause(ItemSet::from_indices([0, 1])).unwrap();
        assert_eq!(idx, 0);
        assert_eq!(clause, vec![rat(2), rat(2), rat(0), rat(0)]);
        let (_, clause) = v1.maximizing_clause(ItemSet::empty()).unwrap();
        assert_eq!(clause.len(), 4);

        let v2 = Valuation::Xos(vec![
            vec![rat(0), rat(0), rat(2), rat(2)],
            vec![rat(1), rat(1), rat(0), rat(0)],
        ]);
        let (idx, clause) = v2.maximizing_clause(ItemSet::from_indices([2, 3])).unwrap();
        assert_eq!(idx, 0);
        assert_eq!(clause, vec![rat(0), rat(0), rat(2), rat(2)]);
    }

    #[test]
    fn class_check_budget_enforced() {
        let big = Valuation::Table {
            items: 3,
            values: vec![rat(0); 8],
        };
        assert!(matches!(
            big.check_class(SetClass::Submodular, 2),
            Err(Error::BudgetExceeded(_))
        ));
    }

    #[test]
    fn marginal_sum_bound_holds_at_alpha_star() {
        // For alpha = alpha*(v): sum of item marginals given S covers
        // alpha times the set marginal, for every pair of sets.
        let (v1, v2) = snub_example_tables();
        let steep = three_identical_steep(ratio(1, 2));
        for v in [v1, v2, steep, three_identical_flat()] {
            let m = v.item_count();
            let alpha = v.alpha_star(CLASS_ENUM_LIMIT).unwrap().alpha;
            for s in ItemSet::all_subsets(m) {
                for sp in ItemSet::all_subsets(m) {
                    let lhs = rat_sum(
                        sp.iter()
                            .map(|j| v.item_marginal(j, s))
                            .collect::<Vec<_>>()
                            .iter(),
                    );
                    let rhs = &alpha * v.marginal(sp, s);
                    assert!(lhs >= rhs, "failed at S={s} S'={sp}");
                }
            }
        }
    }

    #[test]
    fn permutation_support_dominance_at_alpha_star() {
        // v(S) >= alpha* × support(S) for every S, with equality on prefixes.
        let (v1, _) = snub_example_tables();
        let steep = three_identical_steep(ratio(1, 2));
        for v in [v1, steep] {
            let m = v.item_count();
            let alpha = v.alpha_star(CLASS_ENUM_LIMIT).unwrap().alpha;
            let perm = vec![2, 0, 1];
            let support = &v.permutation_supports(std::slice::from_ref(&perm)).unwrap()[0];
            for s in ItemSet::all_subsets(m) {
                let a_s = rat_sum(s.iter().map(|j| &support[j]));
                assert!(v.value(s) >= &alpha * &a_s, "dominated at {s}");
            }
            for k in 0..=m {
                let prefix = ItemSet::from_indices(perm[..k].iter().copied());
                let a_s = rat_sum(prefix.iter().map(|j| &support[j]));
                assert_eq!(v.value(prefix), a_s, "prefix {prefix} must be exact");
            }
        }
    }
}
