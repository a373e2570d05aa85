//! Shared fixtures for the unit tests.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::action::PartialAction;
use crate::graph::Graph;
use crate::prefix::{rules_from_strings, PrefixMap};

/// The full 2-shift as a one-vertex graph action: `a` prepends `e`,
/// `b` prepends `f`.
pub(crate) fn a1() -> Arc<PartialAction> {
    let g = Arc::new(Graph::new(&["v"], &[("e", "v", "v"), ("f", "v", "v")]).unwrap());
    let ta = rules_from_strings(&g, &[("v", "e")]).unwrap();
    let tb = rules_from_strings(&g, &[("v", "f")]).unwrap();
    Arc::new(PartialAction::new(&g, vec![("a", ta), ("b", tb)]).unwrap())
}

/// The full n-shift: one vertex with loops `x1..xn`, generator `gi`
/// prepending `xi`.
pub(crate) fn full_shift(n: usize) -> Arc<PartialAction> {
    let edges: Vec<(String, String, String)> =
        (1..=n).map(|i| (format!("x{i}"), "v".into(), "v".into())).collect();
    let edge_refs: Vec<(&str, &str, &str)> =
        edges.iter().map(|(e, r, s)| (e.as_str(), r.as_str(), s.as_str())).collect();
    let g = Arc::new(Graph::new(&["v"], &edge_refs).unwrap());
    let maps: Vec<(String, PrefixMap)> = (1..=n)
        .map(|i| {
            let m = rules_from_strings(&g, &[("v", format!("x{i}").as_str())]).unwrap();
            (format!("g{i}"), m)
        })
        .collect();
    let named: Vec<(&str, PrefixMap)> =
        maps.iter().map(|(n, m)| (n.as_str(), m.clone())).collect();
    Arc::new(PartialAction::new(&g, named).unwrap())
}

/// One generator acting as the identity on a two-point edge-free
/// space.
pub(crate) fn identity_two_points() -> Arc<PartialAction> {
    let g = Arc::new(Graph::new(&["u", "w"], &[]).unwrap());
    let id = PrefixMap::identity(&g);
    Arc::new(PartialAction::new(&g, vec![("a", id)]).unwrap())
}
