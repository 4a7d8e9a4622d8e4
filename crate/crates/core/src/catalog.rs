//! Built-in catalog of canonical worked examples, stored as scenario data
//! so they double as documentation of the scenario format. Each entry
//! embeds its expected exact numbers; running one verifies them.

use num::One;

use crate::error::{Error, Result};
use crate::rational::{format_rat, parse_rat, rat, Rat};
use crate::report::Report;
use crate::scenario::{
    parse_scenario, resolve, run_scenario, CheckOp, InstanceDto, RunOptions, Scenario,
    ScenarioFile, ValuationDto,
};

/// Catalog names, with their parameter slots.
pub fn catalog_names() -> &'static [&'static str] {
    &[
        "ex-1.1",
        "ex-1.2",
        "prop-6.2",
        "ex-xos-inub(m)",
        "ex-xos-nob-inub",
        "ex-single-minded(R)",
        "app-b1",
        "app-b2(alpha)",
        "app-d",
    ]
}

/// Two unit-demand bidders where underbidding halves the welfare: the
/// equilibrium is efficient-by-half, no-overbidding holds, and bidder 0
/// underbids on item 0 (so item no-underbidding fails).
const EX_1_1: &str = r#"{
    "instance": {
        "n": 2, "m": 2, "mechanism": "s2pa",
        "valuations": [
            {"kind": "unit_demand", "data": ["2", "1"]},
            {"kind": "unit_demand", "data": ["1", "2"]}
        ]
    },
    "bids": [["0", "1"], ["1", "0"]],
    "checks": [
        {"op": "run_auction", "expect_welfare": "2", "expect_revenue": "0"},
        {"op": "optimal", "expect_value": "4"},
        {"op": "welfare_ratio", "expect": "1/2"},
        {"op": "verify_pne"},
        {"op": "check_nob", "strong": false},
        {"op": "check_inub", "expect": false},
        {"op": "check_snub", "expect": false},
        {"op": "is_item_underbid", "bidder": 0, "item": 0},
        {"op": "dominance", "bidder": 0, "item": 0, "underbid": "0",
         "probes": [["0", "0"], ["0", "1/2"], ["0", "1"], ["0", "2"]]}
    ]
}"#;

/// The tight two-thirds equilibrium: both no-overbidding and both
/// no-underbidding conditions hold, and the welfare ratio is exactly 2/3.
const EX_1_2: &str = r#"{
    "instance": {
        "n": 2, "m": 2, "mechanism": "s2pa",
        "valuations": [
            {"kind": "unit_demand", "data": ["3", "2"]},
            {"kind": "unit_demand", "data": ["2", "3"]}
        ]
    },
    "bids": [["1", "2"], ["2", "1"]],
    "checks": [
        {"op": "run_auction", "expect_welfare": "4", "expect_revenue": "2"},
        {"op": "optimal", "expect_value": "6"},
        {"op": "welfare_ratio", "expect": "2/3"},
        {"op": "verify_pne"},
        {"op": "check_nob", "strong": false},
        {"op": "check_nob", "strong": true},
        {"op": "check_inub"},
        {"op": "check_snub"},
        {"op": "revenue_bids_lemma"},
        {"op": "revenue_guarantee", "gamma": "1", "delta": "1"},
        {"op": "smoothness", "lambda": "1", "mu": "1"},
        {"op": "welfare_floor", "gamma": "1", "delta": "1"},
        {"op": "subadditive_composed"},
        {"op": "poa_bound", "lambda": "1", "mu": "1", "gamma": "1", "delta": "1",
         "expect": "2/3"}
    ]
}"#;

/// Half-welfare equilibrium held up by spiteful losing overbids: item
/// no-underbidding holds, but the 100-bids win, so no-overbidding fails.
const PROP_6_2: &str = r#"{
    "instance": {
        "n": 2, "m": 2, "mechanism": "s2pa",
        "valuations": [
            {"kind": "unit_demand", "data": ["2", "1"]},
            {"kind": "unit_demand", "data": ["1", "2"]}
        ]
    },
    "bids": [["1", "100"], ["100", "1"]],
    "checks": [
        {"op": "run_auction", "expect_welfare": "2", "expect_revenue": "2"},
        {"op": "optimal", "expect_value": "4"},
        {"op": "welfare_ratio", "expect": "1/2"},
        {"op": "verify_pne"},
        {"op": "check_inub"},
        {"op": "check_nob", "strong": false, "expect": false},
        {"op": "welfare_floor", "gamma": "1", "delta": "1"}
    ]
}"#;

/// Three identical items, flat then a late jump: an XOS function whose
/// item marginals can grow from zero, so no positive shrinkage factor
/// certifies it.
const APP_B1: &str = r#"{
    "instance": {
        "n": 1, "m": 3, "mechanism": "s2pa",
        "valuations": [
            {"kind": "table",
             "data": ["0", "1", "1", "1", "1", "1", "1", "3/2"]}
        ]
    },
    "checks": [
        {"op": "check_class", "bidder": 0, "class": "monotone"},
        {"op": "check_class", "bidder": 0, "class": "subadditive"},
        {"op": "check_class", "bidder": 0, "class": "submodular", "expect": false},
        {"op": "check_class", "bidder": 0, "class": "xos"},
        {"op": "alpha_star", "bidder": 0, "expect": "0"}
    ]
}"#;

/// Submodular three-item market with an equilibrium that covers set
/// marginals but underbids item-by-item.
const APP_D: &str = r#"{
    "instance": {
        "n": 2, "m": 3, "mechanism": "s2pa",
        "valuations": [
            {"kind": "table",
             "data": ["0", "5", "5", "10", "10", "15", "15", "16"]},
            {"kind": "table",
             "data": ["0", "8", "8", "14", "15", "15", "15", "15"]}
        ]
    },
    "bids": [["3", "3", "8"], ["8", "8", "2"]],
    "checks": [
        {"op": "check_class", "bidder": 0, "class": "submodular"},
        {"op": "check_class", "bidder": 1, "class": "submodular"},
        {"op": "run_auction", "expect_welfare": "24", "expect_revenue": "8"},
        {"op": "optimal", "expect_value": "25"},
        {"op": "welfare_ratio", "expect": "24/25"},
        {"op": "verify_pne"},
        {"op": "check_snub"},
        {"op": "check_inub", "expect": false},
        {"op": "is_item_underbid", "bidder": 0, "item": 0},
        {"op": "welfare_floor", "gamma": "1", "delta": "1"}
    ]
}"#;

fn zeros(m: usize) -> Vec<String> {
    vec!["0".to_string(); m]
}

/// The two-clause pair over `m` items whose item-no-underbidding
/// equilibrium earns only `2/m` of the optimum.
fn xos_pair_instance(m: usize) -> Result<InstanceDto> {
    if m < 4 {
        return Err(Error::InvalidInput(
            "the clause-pair example needs m >= 4".into(),
        ));
    }
    let mut a1 = zeros(m);
    a1[0] = "2".into();
    a1[1] = "2".into();
    let mut a2 = zeros(m);
    a2[2] = "1".into();
    a2[3] = "1".into();
    let mut a3 = zeros(m);
    for slot in a3.iter_mut().skip(2) {
        *slot = "2".into();
    }
    let mut a4 = zeros(m);
    a4[0] = "1".into();
    a4[1] = "1".into();
    Ok(InstanceDto {
        n: 2,
        m,
        mechanism: "s2pa".into(),
        tie_break: None,
        valuations: vec![
            ValuationDto::Xos(vec![a1, a2]),
            ValuationDto::Xos(vec![a3, a4]),
        ],
    })
}

fn ex_xos_inub(m: usize) -> Result<ScenarioFile> {
    let instance = xos_pair_instance(m)?;
    let mut b1 = zeros(m);
    for slot in b1.iter_mut().skip(2) {
        *slot = "2".into();
    }
    let mut b2 = zeros(m);
    b2[0] = "2".into();
    b2[1] = "2".into();
    let opt = 2 * m as i64;
    Ok(ScenarioFile {
        instance,
        bids: Some(vec![b1, b2]),
        grid: None,
        type_space: None,
        distribution: None,
        strategies: None,
        checks: vec![
            CheckOp::RunAuction {
                expect_welfare: Some("4".into()),
                expect_revenue: Some("0".into()),
            },
            CheckOp::Optimal {
                expect_value: Some(opt.to_string()),
            },
            CheckOp::WelfareRatio {
                expect: Some(format!("4/{opt}")),
            },
            CheckOp::VerifyPne { expect: true },
            CheckOp::CheckInub { expect: true },
            CheckOp::RevenueGuarantee {
                gamma: "1".into(),
                delta: m.to_string(),
                expect: true,
            },
        ],
        seed: None,
    })
}

fn ex_xos_nob_inub() -> Result<ScenarioFile> {
    let instance = xos_pair_instance(4)?;
    Ok(ScenarioFile {
        instance,
        bids: Some(vec![
            vec!["0".into(), "0".into(), "1".into(), "1".into()],
            vec!["1".into(), "1".into(), "0".into(), "0".into()],
        ]),
        grid: None,
        type_space: None,
        distribution: None,
        strategies: None,
        checks: vec![
            CheckOp::RunAuction {
                expect_welfare: Some("4".into()),
                expect_revenue: Some("0".into()),
            },
            CheckOp::Optimal {
                expect_value: Some("8".into()),
            },
            CheckOp::WelfareRatio {
                expect: Some("1/2".into()),
            },
            CheckOp::VerifyPne { expect: true },
            CheckOp::CheckNob {
                strong: false,
                expect: true,
            },
            CheckOp::CheckInub { expect: true },
            CheckOp::CheckSnub { expect: false },
        ],
        seed: None,
    })
}

/// Two single-minded bidders for the same pair: the low bidder can take
/// both items at any markup, so the ratio is unboundedly bad while item
/// no-underbidding holds vacuously (single-item marginals are zero).
fn ex_single_minded(r: &Rat) -> Result<ScenarioFile> {
    if *r < Rat::one() {
        return Err(Error::InvalidInput(
            "the package ratio R must be at least 1".into(),
        ));
    }
    let r_str = format_rat(r);
    let instance = InstanceDto {
        n: 2,
        m: 2,
        mechanism: "s2pa".into(),
        tie_break: None,
        valuations: vec![
            ValuationDto::Table(vec!["0".into(), "0".into(), "0".into(), "1".into()]),
            ValuationDto::Table(vec!["0".into(), "0".into(), "0".into(), r_str.clone()]),
        ],
    };
    let ratio = Rat::one() / r;
    Ok(ScenarioFile {
        instance,
        bids: Some(vec![
            vec![r_str.clone(), r_str],
            vec!["0".into(), "0".into()],
        ]),
        grid: None,
        type_space: None,
        distribution: None,
        strategies: None,
        checks: vec![
            CheckOp::RunAuction {
                expect_welfare: Some("1".into()),
                expect_revenue: Some("0".into()),
            },
            CheckOp::Optimal {
                expect_value: Some(format_rat(r)),
            },
            CheckOp::WelfareRatio {
                expect: Some(format_rat(&ratio)),
            },
            CheckOp::VerifyPne { expect: true },
            CheckOp::CheckInub { expect: true },
        ],
        seed: None,
    })
}

/// Three identical items with values 2, 2(1+a), 2(2+a): the late marginal
/// growth factor is exactly `a`, and for `a < 1` no clause list attains
/// the full-set value.
fn app_b2(alpha: &Rat) -> Result<ScenarioFile> {
    if !num::Signed::is_positive(alpha) || *alpha > Rat::one() {
        return Err(Error::InvalidInput("alpha must be in (0, 1]".into()));
    }
    let v1 = rat(2);
    let v2 = rat(2) * (Rat::one() + alpha);
    let v3 = rat(2) * (rat(2) + alpha);
    let by_card = [rat(0), v1, v2, v3];
    let data: Vec<String> = (0u32..8)
        .map(|mask| format_rat(&by_card[mask.count_ones() as usize]))
        .collect();
    let is_submodular = alpha.is_one();
    Ok(ScenarioFile {
        instance: InstanceDto {
            n: 1,
            m: 3,
            mechanism: "s2pa".into(),
            tie_break: None,
            valuations: vec![ValuationDto::Table(data)],
        },
        bids: None,
        grid: None,
        type_space: None,
        distribution: None,
        strategies: None,
        checks: vec![
            CheckOp::CheckClass {
                bidder: 0,
                class: "monotone".into(),
                expect: true,
            },
            CheckOp::CheckClass {
                bidder: 0,
                class: "subadditive".into(),
                expect: true,
            },
            CheckOp::CheckClass {
                bidder: 0,
                class: "submodular".into(),
                expect: is_submodular,
            },
            CheckOp::CheckClass {
                bidder: 0,
                class: "xos".into(),
                expect: is_submodular,
            },
            CheckOp::AlphaStar {
                bidder: 0,
                expect: Some(format_rat(alpha)),
            },
        ],
        seed: None,
    })
}

fn split_name(name: &str) -> Result<(&str, Option<&str>)> {
    match name.find('(') {
        None => Ok((name, None)),
        Some(open) => {
            let close = name
                .rfind(')')
                .ok_or_else(|| Error::Parse(format!("unbalanced parentheses in {name:?}")))?;
            if close != name.len() - 1 || close <= open {
                return Err(Error::Parse(format!("malformed catalog name {name:?}")));
            }
            Ok((&name[..open], Some(&name[open + 1..close])))
        }
    }
}

/// Builds the named catalog entry. Parameterized entries take their
/// argument in parentheses: `ex-xos-inub(6)`, `ex-single-minded(1000)`,
/// `app-b2(1/2)`.
pub fn catalog_scenario(name: &str) -> Result<Scenario> {
    let (base, arg) = split_name(name)?;
    let need_arg = || -> Result<&str> {
        arg.ok_or_else(|| Error::Parse(format!("{base} needs a parameter, e.g. {base}(4)")))
    };
    let file = match base {
        "ex-1.1" => return parse_scenario(EX_1_1),
        "ex-1.2" => return parse_scenario(EX_1_2),
        "prop-6.2" => return parse_scenario(PROP_6_2),
        "app-b1" => return parse_scenario(APP_B1),
        "app-d" => return parse_scenario(APP_D),
        "ex-xos-inub" => {
            let m: usize = need_arg()?
                .parse()
                .map_err(|_| Error::Parse("item count must be an integer".into()))?;
            ex_xos_inub(m)?
        }
        "ex-xos-nob-inub" => ex_xos_nob_inub()?,
        "ex-single-minded" => ex_single_minded(&parse_rat(need_arg()?)?)?,
        "app-b2" => app_b2(&parse_rat(need_arg()?)?)?,
        other => {
            return Err(Error::Parse(format!(
                "unknown catalog entry {other:?}; known: {}",
                catalog_names().join(", ")
            )))
        }
    };
    resolve(&file)
}

/// Runs the named entry's canonical check suite.
pub fn run_catalog(name: &str, opts: &RunOptions) -> Result<Report> {
    let scenario = catalog_scenario(name)?;
    run_scenario(&scenario, opts)
}
