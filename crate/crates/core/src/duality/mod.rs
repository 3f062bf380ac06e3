//! Twisted (co)chains, chain-level products and the duality verdicts.

mod kunneth;
mod products;
mod thom;
mod triad;
mod twisted;
mod verdict;

pub use kunneth::{
    cap_cross_check, kunneth_check, kunneth_prediction, sum_groups, tensor_groups, tor_groups, CapCrossCheck, Factor,
    KunnethDegree, KunnethReport,
};
pub use products::{
    cap_elements, cap_sign, cap_with_cocycle, cap_with_cycle, cross_chain, cross_cochain, cup, swap_factors, theta_map,
    CapMap,
};
pub use thom::{find_thom_class, verify_thom_class, ThomClass};
pub use triad::{verify_triad, PieceReport, TriadReport};
pub use twisted::{
    twisted_chain_complex, twisted_cochain_complex, twisted_complex, ClassFile, CycleClass, TwistedComplex, Variance,
};
pub use verdict::{
    check_condition, check_pair_with_class, class_sign, find_fundamental_classes, transfer_class, verify_pair,
    verify_pair_with, ConditionVerdict, DualityReport, FundamentalSearch, OrientationInfo, PairCheck, Status, Verdict,
    VerifyOptions, Witness,
};
