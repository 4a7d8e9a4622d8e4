//! Desk-scale laboratory for simultaneous item auctions.
//!
//! Exact-rational implementations of simultaneous first- and second-price
//! item auctions, set-function valuation classes, bid-profile conditions
//! (no-overbidding and no-underbidding in item and set form), equilibrium
//! verification, and welfare/revenue certificates, plus a scenario runner,
//! a catalog of canonical worked examples, and seeded instance generators.
//!
//! ```
//! use bidlab::rational::{rat, ratio};
//! use bidlab::welfare::{optimal_allocations, welfare_ratio, DEFAULT_SEARCH_BUDGET};
//! use bidlab::{AuctionInstance, BidProfile, Mechanism, Valuation};
//!
//! // Two unit-demand bidders with crossed preferences over two items.
//! let market = AuctionInstance::new(
//!     vec![
//!         Valuation::UnitDemand(vec![rat(3), rat(2)]),
//!         Valuation::UnitDemand(vec![rat(2), rat(3)]),
//!     ],
//!     2,
//!     Mechanism::SecondPrice,
//!     None,
//! )?;
//! // A stable but inefficient bid profile: each bidder wins her
//! // second-choice item.
//! let bids = BidProfile::new(vec![vec![rat(1), rat(2)], vec![rat(2), rat(1)]])?;
//! assert!(bidlab::equilibria::verify_pne(&market, &bids)?.is_equilibrium);
//!
//! let opt = optimal_allocations(&market, DEFAULT_SEARCH_BUDGET)?;
//! assert_eq!(opt.value, rat(6));
//! assert_eq!(welfare_ratio(&market, &bids, &opt.value)?, ratio(2, 3));
//! # Ok::<(), bidlab::Error>(())
//! ```

pub mod bayes;
pub mod bounds;
pub mod catalog;
pub mod equilibria;
pub mod error;
pub mod feasibility;
pub mod generate;
pub mod items;
pub mod mechanisms;
pub mod properties;
pub mod rational;
pub mod report;
pub mod scenario;
pub mod valuations;
pub mod welfare;

pub use error::{Error, Result};
pub use items::ItemSet;
pub use mechanisms::{Allocation, AuctionInstance, BidProfile, Mechanism, Outcome, TieBreak};
pub use rational::{format_rat, parse_rat, Rat};
pub use valuations::{AlphaCertificate, ClassCheck, SetClass, Valuation};
pub use welfare::Optimum;
