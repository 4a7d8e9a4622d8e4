//! Scenario files: a JSON tree describing an instance, optional bids,
//! grid, type space, distributions and strategies, plus an ordered list of
//! checks to run. Rationals are written as `"p/q"` strings, sets as item
//! index lists, tables as `2^m` values indexed by subset bitmask.
//!
//! Boolean checks accept an `expect` field (default `true`) and numeric
//! checks accept `expect_*` values; a record reports `holds` when the
//! computed outcome matches the expectation, so a scenario doubles as an
//! executable statement of its intended results.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bayes::{BidDistribution, MixedBid, StrategyProfile, TypeDistribution, TypeSpace};
use crate::bounds::{
    check_revenue_guarantee, check_smoothness_at, check_welfare_floor_expected,
    check_welfare_floor_profiles, poa_bound, smoothness_deviation, subadditive_composed_check,
    GuaranteeParams,
};
use crate::equilibria::{
    best_response, best_response_dynamics, construct_xos_pne, enumerate_pne, verify_bne,
    verify_cce, verify_pne, BidGrid, PneFilters, DEFAULT_DEVIATION_BUDGET,
};
use crate::error::{Error, Result};
use crate::items::ItemSet;
use crate::mechanisms::{
    check_revenue_bids_lemma, run_auction, won_items_excluding, AuctionInstance, BidProfile,
    Mechanism, TieBreak,
};
use crate::properties::{
    check_inub, check_nob, check_snub, check_snub_expected, construct_flat_optimal_profile,
    dominance_check, is_item_underbid, PropertyReport,
};
use crate::rational::{format_rat, parse_rat, Rat};
use crate::report::{digest, CheckRecord, CheckStatus, Report};
use crate::valuations::{SetClass, Valuation, CLASS_ENUM_LIMIT};
use crate::welfare::{optimal_allocations, welfare_ratio, Optimum, DEFAULT_SEARCH_BUDGET};

// ---------------------------------------------------------------------------
// File DTOs

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ScenarioFile {
    pub instance: InstanceDto,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bids: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<GridDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub type_space: Option<TypeSpaceDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub distribution: Option<DistributionDto>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strategies: Option<Vec<Vec<MixtureDto>>>,
    #[serde(default)]
    pub checks: Vec<CheckOp>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct InstanceDto {
    pub n: usize,
    pub m: usize,
    pub mechanism: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tie_break: Option<Vec<usize>>,
    pub valuations: Vec<ValuationDto>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "kind", content = "data", rename_all = "snake_case")]
pub enum ValuationDto {
    Additive(Vec<String>),
    UnitDemand(Vec<String>),
    Xos(Vec<Vec<String>>),
    Table(Vec<String>),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GridDto {
    pub step: String,
    pub max: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TypeSpaceDto {
    pub bidder_types: Vec<Vec<ValuationDto>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistributionDto {
    pub kind: String,
    pub support: Vec<SupportDto>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SupportDto {
    pub weight: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub types: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bids: Option<Vec<Vec<String>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MixtureDto {
    pub support: Vec<MixtureEntryDto>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct MixtureEntryDto {
    pub row: Vec<String>,
    pub prob: String,
}

fn default_true() -> bool {
    true
}

/// One check invocation. `expect`-style fields turn the check into an
/// assertion: the record holds iff the outcome matches.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum CheckOp {
    Value {
        bidder: usize,
        items: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expect: Option<String>,
    },
    Marginal {
        bidder: usize,
        added: Vec<usize>,
        given: Vec<usize>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expect: Option<String>,
    },
    CheckClass {
        bidder: usize,
        class: String,
        #[serde(default = "default_true")]
        expect: bool,
    },
    AlphaStar {
        bidder: usize,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expect: Option<String>,
    },
    PermutationSupports {
        bidder: usize,
        perms: Vec<Vec<usize>>,
    },
    MaximizingClause {
        bidder: usize,
        items: Vec<usize>,
    },
    RunAuction {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expect_welfare: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expect_revenue: Option<String>,
    },
    WonItemsExcluding {
        bidder: usize,
        item: usize,
    },
    RevenueBidsLemma,
    Optimal {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expect_value: Option<String>,
    },
    WelfareRatio {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expect: Option<String>,
    },
    CheckNob {
        #[serde(default)]
        strong: bool,
        #[serde(default = "default_true")]
        expect: bool,
    },
    CheckInub {
        #[serde(default = "default_true")]
        expect: bool,
    },
    CheckSnub {
        #[serde(default = "default_true")]
        expect: bool,
    },
    IsItemUnderbid {
        bidder: usize,
        item: usize,
        #[serde(default = "default_true")]
        expect: bool,
    },
    Dominance {
        bidder: usize,
        item: usize,
        underbid: String,
        probes: Vec<Vec<String>>,
    },
    FlatProfile,
    BestResponse {
        bidder: usize,
    },
    VerifyPne {
        #[serde(default = "default_true")]
        expect: bool,
    },
    VerifyCce {
        #[serde(default = "default_true")]
        expect: bool,
    },
    VerifyBne {
        #[serde(default = "default_true")]
        expect: bool,
    },
    CheckSnubExpected {
        #[serde(default = "default_true")]
        expect: bool,
    },
    ConstructXosPne,
    EnumeratePne {
        #[serde(default)]
        filters: Vec<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expect_worst_ratio: Option<String>,
    },
    BestResponseDynamics {
        max_rounds: usize,
    },
    RevenueGuarantee {
        gamma: String,
        delta: String,
        #[serde(default = "default_true")]
        expect: bool,
    },
    Smoothness {
        lambda: String,
        mu: String,
        #[serde(default = "default_true")]
        expect: bool,
    },
    WelfareFloor {
        gamma: String,
        delta: String,
    },
    PoaBound {
        #[serde(default, skip_serializing_if = "Option::is_none")]
        lambda: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        mu: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        gamma: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        delta: Option<String>,
        #[serde(default, skip_serializing_if = "Option::is_none")]
        expect: Option<String>,
    },
    SubadditiveComposed,
}

impl CheckOp {
    pub fn name(&self) -> String {
        let value = serde_json::to_value(self).expect("check op serializes");
        value["op"]
            .as_str()
            .expect("tagged enum has op field")
            .to_string()
    }

    fn needs_bids(&self) -> bool {
        matches!(
            self,
            CheckOp::RunAuction { .. }
                | CheckOp::WonItemsExcluding { .. }
                | CheckOp::RevenueBidsLemma
                | CheckOp::WelfareRatio { .. }
                | CheckOp::CheckNob { .. }
                | CheckOp::CheckInub { .. }
                | CheckOp::CheckSnub { .. }
                | CheckOp::IsItemUnderbid { .. }
                | CheckOp::Dominance { .. }
                | CheckOp::BestResponse { .. }
                | CheckOp::VerifyPne { .. }
                | CheckOp::RevenueGuarantee { .. }
                | CheckOp::Smoothness { .. }
                | CheckOp::SubadditiveComposed
        )
    }

    fn needs_bayes(&self) -> bool {
        matches!(
            self,
            CheckOp::VerifyBne { .. } | CheckOp::CheckSnubExpected { .. }
        )
    }
}

// ---------------------------------------------------------------------------
// Resolution

/// A parsed, validated scenario with domain types resolved.
#[derive(Debug, Clone)]
pub struct Scenario {
    pub instance: AuctionInstance,
    pub bids: Option<BidProfile>,
    pub grid: Option<BidGrid>,
    pub type_space: Option<TypeSpace>,
    pub type_distribution: Option<TypeDistribution>,
    pub bid_distribution: Option<BidDistribution>,
    pub strategies: Option<StrategyProfile>,
    pub checks: Vec<CheckOp>,
    pub seed: u64,
    /// Digest seed identifying the scenario inputs.
    identity: String,
}

fn parse_row(row: &[String]) -> Result<Vec<Rat>> {
    row.iter().map(|s| parse_rat(s)).collect()
}

fn parse_matrix(rows: &[Vec<String>]) -> Result<Vec<Vec<Rat>>> {
    rows.iter().map(|r| parse_row(r)).collect()
}

fn resolve_valuation(dto: &ValuationDto) -> Result<Valuation> {
    let v = match dto {
        ValuationDto::Additive(d) => Valuation::Additive(parse_row(d)?),
        ValuationDto::UnitDemand(d) => Valuation::UnitDemand(parse_row(d)?),
        ValuationDto::Xos(d) => Valuation::Xos(parse_matrix(d)?),
        ValuationDto::Table(d) => {
            let values = parse_row(d)?;
            if !values.len().is_power_of_two() {
                return Err(Error::InvalidValuation(format!(
                    "table length {} is not a power of two",
                    values.len()
                )));
            }
            let items = values.len().trailing_zeros() as usize;
            Valuation::Table { items, values }
        }
    };
    v.validate()?;
    Ok(v)
}

fn valuation_dto(v: &Valuation) -> ValuationDto {
    let render = |xs: &[Rat]| xs.iter().map(format_rat).collect::<Vec<_>>();
    match v {
        Valuation::Additive(d) => ValuationDto::Additive(render(d)),
        Valuation::UnitDemand(d) => ValuationDto::UnitDemand(render(d)),
        Valuation::Xos(cs) => ValuationDto::Xos(cs.iter().map(|c| render(c)).collect()),
        Valuation::Table { values, .. } => ValuationDto::Table(render(values)),
    }
}

fn parse_mechanism(s: &str) -> Result<Mechanism> {
    match s {
        "s2pa" => Ok(Mechanism::SecondPrice),
        "s1pa" => Ok(Mechanism::FirstPrice),
        other => Err(Error::Parse(format!("unknown mechanism {other:?}"))),
    }
}

fn mechanism_name(m: Mechanism) -> &'static str {
    match m {
        Mechanism::SecondPrice => "s2pa",
        Mechanism::FirstPrice => "s1pa",
    }
}

pub fn resolve(file: &ScenarioFile) -> Result<Scenario> {
    let dto = &file.instance;
    if dto.valuations.len() != dto.n {
        return Err(Error::DimensionMismatch {
            expected: format!("{} valuations", dto.n),
            got: format!("{}", dto.valuations.len()),
        });
    }
    let valuations: Vec<Valuation> = dto
        .valuations
        .iter()
        .map(resolve_valuation)
        .collect::<Result<_>>()?;
    let tie_break = dto.tie_break.clone().map(TieBreak::new).transpose()?;
    let instance = AuctionInstance::new(
        valuations,
        dto.m,
        parse_mechanism(&dto.mechanism)?,
        tie_break.clone(),
    )?;

    let bids = file
        .bids
        .as_ref()
        .map(|rows| -> Result<BidProfile> {
            let b = BidProfile::new(parse_matrix(rows)?)?;
            if b.bidder_count() != dto.n || b.item_count() != dto.m {
                return Err(Error::DimensionMismatch {
                    expected: format!("{}x{} bids", dto.n, dto.m),
                    got: format!("{}x{}", b.bidder_count(), b.item_count()),
                });
            }
            Ok(b)
        })
        .transpose()?;

    let grid = file
        .grid
        .as_ref()
        .map(|g| BidGrid::new(parse_rat(&g.step)?, parse_rat(&g.max)?))
        .transpose()?;

    let type_space = file
        .type_space
        .as_ref()
        .map(|ts| -> Result<TypeSpace> {
            let bidder_types = ts
                .bidder_types
                .iter()
                .map(|types| {
                    types
                        .iter()
                        .map(resolve_valuation)
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let space = TypeSpace {
                mechanism: instance.mechanism(),
                tie_break,
                item_count: dto.m,
                bidder_types,
            };
            space.validate()?;
            Ok(space)
        })
        .transpose()?;

    let mut type_distribution = None;
    let mut bid_distribution = None;
    if let Some(d) = &file.distribution {
        match d.kind.as_str() {
            "over_type_profiles" => {
                let space = type_space.as_ref().ok_or_else(|| {
                    Error::InvalidInput("type-profile distribution needs a type_space".into())
                })?;
                let support = d
                    .support
                    .iter()
                    .map(|s| -> Result<(Vec<usize>, Rat)> {
                        let types = s.types.clone().ok_or_else(|| {
                            Error::InvalidDistribution("support entry missing types".into())
                        })?;
                        Ok((types, parse_rat(&s.weight)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                type_distribution = Some(TypeDistribution::new(space, support)?);
            }
            "over_bid_profiles" => {
                let support = d
                    .support
                    .iter()
                    .map(|s| -> Result<(BidProfile, Rat)> {
                        let rows = s.bids.as_ref().ok_or_else(|| {
                            Error::InvalidDistribution("support entry missing bids".into())
                        })?;
                        Ok((BidProfile::new(parse_matrix(rows)?)?, parse_rat(&s.weight)?))
                    })
                    .collect::<Result<Vec<_>>>()?;
                bid_distribution = Some(BidDistribution::new(support)?);
            }
            other => {
                return Err(Error::InvalidDistribution(format!(
                    "unknown distribution kind {other:?}"
                )))
            }
        }
    }

    let strategies = file
        .strategies
        .as_ref()
        .map(|per_bidder| -> Result<StrategyProfile> {
            let resolved = per_bidder
                .iter()
                .map(|types| {
                    types
                        .iter()
                        .map(|mix| -> Result<MixedBid> {
                            let support = mix
                                .support
                                .iter()
                                .map(|e| Ok((parse_row(&e.row)?, parse_rat(&e.prob)?)))
                                .collect::<Result<Vec<_>>>()?;
                            MixedBid::mixed(support)
                        })
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(StrategyProfile {
                per_bidder: resolved,
            })
        })
        .transpose()?;
    if let (Some(strat), Some(space)) = (&strategies, &type_space) {
        strat.validate(space)?;
    }

    // Checks may only reference inputs the scenario defines.
    for op in &file.checks {
        if op.needs_bids() && bids.is_none() {
            return Err(Error::InvalidInput(format!(
                "check {} needs bids, which the scenario does not define",
                op.name()
            )));
        }
        if op.needs_bayes()
            && (type_space.is_none() || type_distribution.is_none() || strategies.is_none())
        {
            return Err(Error::InvalidInput(format!(
                "check {} needs type_space, distribution and strategies",
                op.name()
            )));
        }
        if matches!(op, CheckOp::VerifyCce { .. }) && bid_distribution.is_none() {
            return Err(Error::InvalidInput(
                "check verify_cce needs a distribution over bid profiles".into(),
            ));
        }
        if let CheckOp::WelfareFloor { .. } = op {
            let bayes_ready =
                type_space.is_some() && type_distribution.is_some() && strategies.is_some();
            if bids.is_none() && !bayes_ready {
                return Err(Error::InvalidInput(
                    "check welfare_floor needs bids or a full incomplete-information setup".into(),
                ));
            }
        }
        validate_indices(op, dto.n, dto.m)?;
    }

    let identity = serde_json::to_string(file).map_err(|e| Error::Parse(e.to_string()))?;
    Ok(Scenario {
        instance,
        bids,
        grid,
        type_space,
        type_distribution,
        bid_distribution,
        strategies,
        checks: file.checks.clone(),
        seed: file.seed.unwrap_or(0),
        identity,
    })
}

fn validate_indices(op: &CheckOp, n: usize, m: usize) -> Result<()> {
    let bidder_ok = |i: usize| -> Result<()> {
        if i >= n {
            Err(Error::BidderOutOfRange {
                bidder: i,
                bidders: n,
            })
        } else {
            Ok(())
        }
    };
    let item_ok = |j: usize| -> Result<()> {
        if j >= m {
            Err(Error::ItemOutOfRange { item: j, items: m })
        } else {
            Ok(())
        }
    };
    match op {
        CheckOp::Value { bidder, items, .. } | CheckOp::MaximizingClause { bidder, items } => {
            bidder_ok(*bidder)?;
            items.iter().try_for_each(|&j| item_ok(j))
        }
        CheckOp::Marginal {
            bidder,
            added,
            given,
            ..
        } => {
            bidder_ok(*bidder)?;
            added.iter().chain(given).try_for_each(|&j| item_ok(j))
        }
        CheckOp::CheckClass { bidder, .. }
        | CheckOp::AlphaStar { bidder, .. }
        | CheckOp::PermutationSupports { bidder, .. }
        | CheckOp::BestResponse { bidder } => bidder_ok(*bidder),
        CheckOp::WonItemsExcluding { bidder, item }
        | CheckOp::IsItemUnderbid { bidder, item, .. }
        | CheckOp::Dominance { bidder, item, .. } => {
            bidder_ok(*bidder)?;
            item_ok(*item)
        }
        _ => Ok(()),
    }
}

pub fn parse_scenario_file(text: &str) -> Result<ScenarioFile> {
    serde_json::from_str(text).map_err(|e| Error::Parse(format!("scenario: {e}")))
}

pub fn parse_scenario(text: &str) -> Result<Scenario> {
    resolve(&parse_scenario_file(text)?)
}

pub fn load_scenario(path: &Path) -> Result<Scenario> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("{}: {e}", path.display())))?;
    parse_scenario(&text)
}

/// Scenario file for a bare instance (used by the generators).
pub fn scenario_file_for_instance(inst: &AuctionInstance, seed: Option<u64>) -> ScenarioFile {
    ScenarioFile {
        instance: InstanceDto {
            n: inst.bidder_count(),
            m: inst.item_count(),
            mechanism: mechanism_name(inst.mechanism()).to_string(),
            tie_break: Some(inst.tie_break().order().to_vec()),
            valuations: inst.valuations().iter().map(valuation_dto).collect(),
        },
        bids: None,
        grid: None,
        type_space: None,
        distribution: None,
        strategies: None,
        checks: Vec::new(),
        seed,
    }
}

// ---------------------------------------------------------------------------
// Execution

/// Budgets for the search-flavored checks.
#[derive(Debug, Clone)]
pub struct RunOptions {
    pub search_budget: u64,
    pub enumeration_budget: u64,
    pub deviation_budget: u64,
    pub class_limit: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            search_budget: DEFAULT_SEARCH_BUDGET,
            enumeration_budget: 20_000_000,
            deviation_budget: DEFAULT_DEVIATION_BUDGET,
            class_limit: CLASS_ENUM_LIMIT,
        }
    }
}

struct Exec<'a> {
    scenario: &'a Scenario,
    opts: &'a RunOptions,
    optimum: Option<Optimum>,
}

fn fmt_set(s: ItemSet) -> String {
    format!("{s}")
}

fn fmt_row(row: &[Rat]) -> String {
    row.iter().map(format_rat).collect::<Vec<_>>().join(",")
}

fn fmt_rows(rows: &[Vec<Rat>]) -> String {
    rows.iter()
        .map(|r| fmt_row(r))
        .collect::<Vec<_>>()
        .join("|")
}

fn fmt_alloc(alloc: &[ItemSet]) -> String {
    alloc
        .iter()
        .map(|s| fmt_set(*s))
        .collect::<Vec<_>>()
        .join("|")
}

fn verdict(matches: bool) -> CheckStatus {
    if matches {
        CheckStatus::Holds
    } else {
        CheckStatus::Violated
    }
}

fn bool_verdict(outcome: bool, expect: bool, details: &mut Vec<(String, String)>) -> CheckStatus {
    details.push(("outcome".into(), outcome.to_string()));
    if outcome != expect {
        details.push(("expected".into(), expect.to_string()));
    }
    verdict(outcome == expect)
}

fn rat_verdict(
    value: &Rat,
    expect: &Option<String>,
    key: &str,
    details: &mut Vec<(String, String)>,
) -> Result<CheckStatus> {
    details.push((key.into(), format_rat(value)));
    match expect {
        None => Ok(CheckStatus::Holds),
        Some(s) => {
            let expected = parse_rat(s)?;
            if expected != *value {
                details.push(("expected".into(), format_rat(&expected)));
            }
            Ok(verdict(expected == *value))
        }
    }
}

impl Exec<'_> {
    fn optimum(&mut self) -> Result<&Optimum> {
        if self.optimum.is_none() {
            self.optimum = Some(optimal_allocations(
                &self.scenario.instance,
                self.opts.search_budget,
            )?);
        }
        Ok(self.optimum.as_ref().expect("just computed"))
    }

    fn bids(&self) -> &BidProfile {
        self.scenario
            .bids
            .as_ref()
            .expect("validated at resolve time")
    }

    fn grid(&self) -> Result<BidGrid> {
        match &self.scenario.grid {
            Some(g) => Ok(g.clone()),
            None => BidGrid::default_for(&self.scenario.instance),
        }
    }

    fn property_details(report: &PropertyReport, details: &mut Vec<(String, String)>) {
        if let Some(w) = &report.witness_allocation {
            details.push(("witness_allocation".into(), fmt_alloc(w)));
        }
        if let Some(v) = report.violations.first() {
            details.push(("violating_bidder".into(), v.bidder.to_string()));
            details.push(("violating_items".into(), fmt_set(v.items)));
            details.push(("required".into(), format_rat(&v.required)));
            details.push(("actual".into(), format_rat(&v.actual)));
        }
    }

    fn execute(&mut self, op: &CheckOp) -> Result<CheckRecord> {
        let inst = &self.scenario.instance;
        let mut details: Vec<(String, String)> = Vec::new();
        let status = match op {
            CheckOp::Value {
                bidder,
                items,
                expect,
            } => {
                let v = inst
                    .valuation(*bidder)
                    .value(ItemSet::from_indices(items.iter().copied()));
                rat_verdict(&v, expect, "value", &mut details)?
            }
            CheckOp::Marginal {
                bidder,
                added,
                given,
                expect,
            } => {
                let v = inst.valuation(*bidder).marginal(
                    ItemSet::from_indices(added.iter().copied()),
                    ItemSet::from_indices(given.iter().copied()),
                );
                rat_verdict(&v, expect, "marginal", &mut details)?
            }
            CheckOp::CheckClass {
                bidder,
                class,
                expect,
            } => {
                let class = match class.as_str() {
                    "monotone" => SetClass::Monotone,
                    "subadditive" => SetClass::Subadditive,
                    "submodular" => SetClass::Submodular,
                    "xos" => SetClass::Xos,
                    other => return Err(Error::Parse(format!("unknown class {other:?}"))),
                };
                let check = inst
                    .valuation(*bidder)
                    .check_class(class, self.opts.class_limit)?;
                if let Some(w) = &check.witness {
                    details.push(("witness".into(), format!("{w:?}")));
                }
                bool_verdict(check.holds, *expect, &mut details)
            }
            CheckOp::AlphaStar { bidder, expect } => {
                let cert = inst.valuation(*bidder).alpha_star(self.opts.class_limit)?;
                if let Some((s, t, j)) = cert.witness {
                    details.push((
                        "witness".into(),
                        format!("s={} t={} item={j}", fmt_set(s), fmt_set(t)),
                    ));
                }
                rat_verdict(&cert.alpha, expect, "alpha", &mut details)?
            }
            CheckOp::PermutationSupports { bidder, perms } => {
                let supports = inst.valuation(*bidder).permutation_supports(perms)?;
                details.push(("supports".into(), fmt_rows(&supports)));
                CheckStatus::Holds
            }
            CheckOp::MaximizingClause { bidder, items } => {
                let (idx, clause) = inst
                    .valuation(*bidder)
                    .maximizing_clause(ItemSet::from_indices(items.iter().copied()))?;
                details.push(("clause_index".into(), idx.to_string()));
                details.push(("clause".into(), fmt_row(&clause)));
                CheckStatus::Holds
            }
            CheckOp::RunAuction {
                expect_welfare,
                expect_revenue,
            } => {
                let out = run_auction(inst, self.bids())?;
                details.push(("allocation".into(), fmt_alloc(&out.allocation)));
                details.push(("prices".into(), fmt_row(&out.item_prices)));
                details.push(("payments".into(), fmt_row(&out.payments)));
                details.push(("utilities".into(), fmt_row(&out.utilities)));
                let w = rat_verdict(&out.welfare, expect_welfare, "welfare", &mut details)?;
                let r = rat_verdict(&out.revenue, expect_revenue, "revenue", &mut details)?;
                verdict(w == CheckStatus::Holds && r == CheckStatus::Holds)
            }
            CheckOp::WonItemsExcluding { bidder, item } => {
                let s = won_items_excluding(inst, self.bids(), *bidder, *item)?;
                details.push(("items".into(), fmt_set(s)));
                CheckStatus::Holds
            }
            CheckOp::RevenueBidsLemma => {
                let sstar = self.optimum()?.first().clone();
                let check = check_revenue_bids_lemma(inst, self.bids(), &sstar)?;
                details.push(("slack".into(), format_rat(&check.slack)));
                verdict(check.holds)
            }
            CheckOp::Optimal { expect_value } => {
                let opt = self.optimum()?.clone();
                details.push(("maximizers".into(), opt.maximizers.len().to_string()));
                details.push(("first".into(), fmt_alloc(opt.first())));
                details.push(("explored".into(), opt.explored.to_string()));
                rat_verdict(&opt.value, expect_value, "opt", &mut details)?
            }
            CheckOp::WelfareRatio { expect } => {
                let opt_value = self.optimum()?.value.clone();
                let ratio = welfare_ratio(inst, self.bids(), &opt_value)?;
                rat_verdict(&ratio, expect, "ratio", &mut details)?
            }
            CheckOp::CheckNob { strong, expect } => {
                let report = check_nob(inst, self.bids(), *strong, self.opts.class_limit)?;
                Self::property_details(&report, &mut details);
                bool_verdict(report.holds, *expect, &mut details)
            }
            CheckOp::CheckInub { expect } => {
                let maximizers = self.optimum()?.maximizers.clone();
                let report = check_inub(inst, self.bids(), &maximizers)?;
                Self::property_details(&report, &mut details);
                bool_verdict(report.holds, *expect, &mut details)
            }
            CheckOp::CheckSnub { expect } => {
                let maximizers = self.optimum()?.maximizers.clone();
                let report = check_snub(inst, self.bids(), &maximizers)?;
                Self::property_details(&report, &mut details);
                bool_verdict(report.holds, *expect, &mut details)
            }
            CheckOp::IsItemUnderbid {
                bidder,
                item,
                expect,
            } => {
                let under = is_item_underbid(inst, self.bids(), *bidder, *item)?;
                bool_verdict(under, *expect, &mut details)
            }
            CheckOp::Dominance {
                bidder,
                item,
                underbid,
                probes,
            } => {
                let probes: Vec<Vec<Rat>> =
                    probes.iter().map(|p| parse_row(p)).collect::<Result<_>>()?;
                let report = dominance_check(
                    inst,
                    self.bids(),
                    *bidder,
                    *item,
                    parse_rat(underbid)?,
                    &probes,
                )?;
                details.push(("marginal_bid".into(), format_rat(&report.marginal_bid)));
                details.push(("probes".into(), report.probes_checked.to_string()));
                details.push(("strict_witness".into(), fmt_row(&report.strict_witness)));
                verdict(report.holds)
            }
            CheckOp::FlatProfile => {
                let opt = self.optimum()?.clone();
                let profile = construct_flat_optimal_profile(inst, opt.first())?;
                details.push(("bids".into(), fmt_rows(profile.rows())));
                let out = run_auction(inst, &profile)?;
                details.push((
                    "allocates_optimum".into(),
                    (&out.allocation == opt.first()).to_string(),
                ));
                let nob = check_nob(inst, &profile, false, self.opts.class_limit)?.holds;
                let snub = check_snub(inst, &profile, &opt.maximizers)?.holds;
                details.push(("nob".into(), nob.to_string()));
                details.push(("snub".into(), snub.to_string()));
                verdict(nob && snub)
            }
            CheckOp::BestResponse { bidder } => {
                let grid = self.grid()?;
                let br = best_response(inst, *bidder, self.bids(), Some(&grid))?;
                details.push(("utility".into(), format_rat(&br.utility)));
                details.push(("bids".into(), fmt_row(&br.bids)));
                details.push(("items".into(), fmt_set(br.items)));
                CheckStatus::Holds
            }
            CheckOp::VerifyPne { expect } => {
                let check = verify_pne(inst, self.bids())?;
                if let Some(d) = &check.deviation {
                    details.push(("deviating_bidder".into(), d.bidder.to_string()));
                    details.push(("deviation".into(), fmt_row(&d.bids)));
                    details.push(("gain".into(), format_rat(&d.gain)));
                }
                bool_verdict(check.is_equilibrium, *expect, &mut details)
            }
            CheckOp::VerifyCce { expect } => {
                let dist = self
                    .scenario
                    .bid_distribution
                    .as_ref()
                    .expect("validated at resolve time");
                let check = verify_cce(inst, dist, self.opts.deviation_budget)?;
                if let Some(d) = &check.deviation {
                    details.push(("deviating_bidder".into(), d.bidder.to_string()));
                    details.push(("gain".into(), format_rat(&d.gain)));
                }
                bool_verdict(check.holds, *expect, &mut details)
            }
            CheckOp::VerifyBne { expect } => {
                let (space, dist, strat) = self.bayes_inputs();
                let check = verify_bne(space, dist, strat, self.opts.deviation_budget)?;
                if let Some(d) = &check.deviation {
                    details.push(("deviating_bidder".into(), d.bidder.to_string()));
                    details.push(("type".into(), d.type_index.to_string()));
                    details.push(("gain".into(), format_rat(&d.gain)));
                }
                bool_verdict(check.holds, *expect, &mut details)
            }
            CheckOp::CheckSnubExpected { expect } => {
                let (space, dist, strat) = self.bayes_inputs();
                let report = check_snub_expected(space, dist, strat)?;
                Self::property_details(&report, &mut details);
                bool_verdict(report.holds, *expect, &mut details)
            }
            CheckOp::ConstructXosPne => {
                let opt = self.optimum()?.clone();
                let profile = construct_xos_pne(inst, &opt)?;
                details.push(("bids".into(), fmt_rows(profile.rows())));
                let pne = verify_pne(inst, &profile)?.is_equilibrium;
                let nob = check_nob(inst, &profile, false, self.opts.class_limit)?.holds;
                let snub = check_snub(inst, &profile, &opt.maximizers)?.holds;
                let ratio = welfare_ratio(inst, &profile, &opt.value)?;
                details.push(("pne".into(), pne.to_string()));
                details.push(("nob".into(), nob.to_string()));
                details.push(("snub".into(), snub.to_string()));
                details.push(("ratio".into(), format_rat(&ratio)));
                verdict(pne && nob && snub)
            }
            CheckOp::EnumeratePne {
                filters,
                expect_worst_ratio,
            } => {
                let mut f = PneFilters::default();
                for name in filters {
                    match name.as_str() {
                        "nob" => f.nob = true,
                        "strong_nob" => f.strong_nob = true,
                        "inub" => f.inub = true,
                        "snub" => f.snub = true,
                        other => return Err(Error::Parse(format!("unknown filter {other:?}"))),
                    }
                }
                let grid = self.grid()?;
                let opt = self.optimum()?.clone();
                let search = enumerate_pne(inst, &grid, f, &opt, self.opts.enumeration_budget)?;
                details.push(("equilibria".into(), search.equilibria.len().to_string()));
                details.push(("scanned".into(), search.profiles_scanned.to_string()));
                match (&search.worst_ratio, expect_worst_ratio) {
                    (None, _) => {
                        details.push(("worst_ratio".into(), "no PNE found at this grid".into()));
                        verdict(expect_worst_ratio.is_none())
                    }
                    (Some(r), expect) => rat_verdict(r, expect, "worst_ratio", &mut details)?,
                }
            }
            CheckOp::BestResponseDynamics { max_rounds } => {
                let grid = self.grid()?;
                let start = match &self.scenario.bids {
                    Some(b) => b.clone(),
                    None => BidProfile::zeros(inst.bidder_count(), inst.item_count()),
                };
                let order: Vec<usize> = (0..inst.bidder_count()).collect();
                let run = best_response_dynamics(inst, &start, &order, *max_rounds, &grid)?;
                details.push(("converged".into(), run.converged.to_string()));
                details.push(("steps".into(), (run.trajectory.len() - 1).to_string()));
                let last = run.trajectory.last().expect("trajectory includes start");
                details.push(("final".into(), fmt_rows(last.rows())));
                if run.converged {
                    let pne = verify_pne(inst, last)?.is_equilibrium;
                    details.push(("fixed_point_is_pne".into(), pne.to_string()));
                    verdict(pne)
                } else {
                    CheckStatus::Holds
                }
            }
            CheckOp::RevenueGuarantee {
                gamma,
                delta,
                expect,
            } => {
                let opt_value = self.optimum()?.value.clone();
                let report = check_revenue_guarantee(
                    inst,
                    std::slice::from_ref(self.bids()),
                    &opt_value,
                    &parse_rat(gamma)?,
                    &parse_rat(delta)?,
                )?;
                if let Some(s) = &report.worst_slack {
                    details.push(("slack".into(), format_rat(s)));
                }
                bool_verdict(report.holds, *expect, &mut details)
            }
            CheckOp::Smoothness { lambda, mu, expect } => {
                let opt = self.optimum()?.clone();
                let deviations = smoothness_deviation(inst, opt.first())?;
                details.push(("deviations".into(), fmt_rows(&deviations)));
                let check = check_smoothness_at(
                    inst,
                    self.bids(),
                    &deviations,
                    &opt.value,
                    &parse_rat(lambda)?,
                    &parse_rat(mu)?,
                )?;
                details.push(("slack".into(), format_rat(&check.slack)));
                bool_verdict(check.holds, *expect, &mut details)
            }
            CheckOp::WelfareFloor { gamma, delta } => {
                let gamma = parse_rat(gamma)?;
                let delta = parse_rat(delta)?;
                let report = if let Some(bids) = &self.scenario.bids {
                    let opt_value = self.optimum()?.value.clone();
                    check_welfare_floor_profiles(
                        inst,
                        std::slice::from_ref(bids),
                        &opt_value,
                        &gamma,
                        &delta,
                    )?
                } else {
                    let (space, dist, strat) = self.bayes_inputs();
                    check_welfare_floor_expected(space, dist, strat, &gamma, &delta)?
                };
                if let Some(lhs) = &report.lhs {
                    details.push(("welfare".into(), format_rat(lhs)));
                }
                if let Some(rhs) = &report.rhs {
                    details.push(("floor".into(), format_rat(rhs)));
                }
                details.push(("detail".into(), report.detail.clone()));
                report.status.into()
            }
            CheckOp::PoaBound {
                lambda,
                mu,
                gamma,
                delta,
                expect,
            } => {
                let parse_opt = |s: &Option<String>| -> Result<Option<Rat>> {
                    s.as_ref().map(|x| parse_rat(x)).transpose()
                };
                let params = GuaranteeParams {
                    lambda: parse_opt(lambda)?,
                    mu: parse_opt(mu)?,
                    gamma: parse_opt(gamma)?,
                    delta: parse_opt(delta)?,
                };
                let bound = poa_bound(&params)?;
                rat_verdict(&bound, expect, "bound", &mut details)?
            }
            CheckOp::SubadditiveComposed => {
                let opt = self.optimum()?.clone();
                let report = subadditive_composed_check(inst, self.bids(), &opt)?;
                if let Some(lhs) = &report.lhs {
                    details.push(("welfare".into(), format_rat(lhs)));
                }
                if let Some(rhs) = &report.rhs {
                    details.push(("floor".into(), format_rat(rhs)));
                }
                details.push(("detail".into(), report.detail.clone()));
                report.status.into()
            }
        };
        let op_json = serde_json::to_string(op).map_err(|e| Error::Parse(e.to_string()))?;
        Ok(CheckRecord {
            name: op.name(),
            digest: digest(&[&self.scenario.identity, &op_json]),
            status,
            details,
        })
    }

    fn bayes_inputs(&self) -> (&TypeSpace, &TypeDistribution, &StrategyProfile) {
        (
            self.scenario
                .type_space
                .as_ref()
                .expect("validated at resolve time"),
            self.scenario
                .type_distribution
                .as_ref()
                .expect("validated at resolve time"),
            self.scenario
                .strategies
                .as_ref()
                .expect("validated at resolve time"),
        )
    }
}

/// Runs every check in order and collects the report.
pub fn run_scenario(scenario: &Scenario, opts: &RunOptions) -> Result<Report> {
    let mut exec = Exec {
        scenario,
        opts,
        optimum: None,
    };
    let mut report = Report::default();
    for op in &scenario.checks {
        report.push(exec.execute(op)?);
    }
    Ok(report)
}
