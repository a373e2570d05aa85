//! Report text for each command.  Identical inputs and flags produce
//! byte-identical reports.

use std::fmt::Write as _;
use std::sync::Arc;

use parthom_core::action::PartialAction;
use parthom_core::dr::{dr_homology, dr_route_matrices, dr_routes_agree, dr_to_action};
use parthom_core::homology::{base_level, cohomology_tower, graph_oracle, homology_tower};
use parthom_core::resolution::verify_homotopy;

use crate::input::{InputDocument, Payload};

/// A finished command: its text and whether it counts as a pass.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub text: String,
    pub pass: bool,
}

impl Report {
    fn pass(text: String) -> Report {
        Report { text, pass: true }
    }
}

fn require_action(doc: &InputDocument) -> Result<Arc<PartialAction>, String> {
    match &doc.payload {
        Payload::Action(act) => Ok(act.clone()),
        Payload::Map(sys) => dr_to_action(sys).map_err(|e| e.to_string()),
        Payload::GraphOnly => {
            Err("the input declares neither generators nor map rules".to_string())
        }
    }
}

pub fn homology(
    doc: &InputDocument,
    max_level: Option<usize>,
    window: usize,
) -> Result<Report, String> {
    let act = require_action(doc)?;
    let max = max_level.unwrap_or(base_level(&act) + 6);
    let out = match &doc.payload {
        Payload::Map(sys) => dr_homology(sys, max, window),
        _ => homology_tower(&act, max, window),
    }
    .map_err(|e| e.to_string())?;
    let mut text = String::new();
    let _ = writeln!(text, "H0 = {}", out.h0);
    let _ = writeln!(text, "H1 = {}", out.h1);
    let _ = writeln!(text, "Hn = 0 for n >= 2");
    let _ = writeln!(text, "{}", out.stable);
    for lvl in &out.levels {
        let _ = writeln!(text, "level {}: H0 = {}, H1 = {}", lvl.level, lvl.h0, lvl.h1);
    }
    Ok(Report::pass(text))
}

pub fn cohomology(
    doc: &InputDocument,
    max_level: Option<usize>,
    window: usize,
) -> Result<Report, String> {
    let act = require_action(doc)?;
    let max = max_level.unwrap_or(base_level(&act) + 6);
    let out = cohomology_tower(&act, max, window).map_err(|e| e.to_string())?;
    let mut text = String::new();
    let _ = writeln!(text, "H^0 = {}", out.h0);
    let _ = writeln!(text, "H^1 = {}", out.h1);
    let _ = writeln!(text, "H^n = 0 for n >= 2");
    let _ = writeln!(text, "{}", out.stable);
    for lvl in &out.levels {
        let _ = writeln!(text, "level {}: H^0 = {}, H^1 = {}", lvl.level, lvl.h0, lvl.h1);
    }
    Ok(Report::pass(text))
}

pub fn verify(
    doc: &InputDocument,
    samples: usize,
    seed: u64,
    max_word_len: usize,
    max_depth: usize,
) -> Result<Report, String> {
    let act = require_action(doc)?;
    let report =
        verify_homotopy(&act, samples, seed, max_word_len, max_depth).map_err(|e| e.to_string())?;
    Ok(Report { text: format!("{report}\n"), pass: report.all_passed() })
}

pub fn word(doc: &InputDocument, text: &str, strict: bool) -> Result<Report, String> {
    let act = require_action(doc)?;
    let w = act.parse_word(text, strict).map_err(|e| e.to_string())?;
    let theta = act.theta_word(&w).map_err(|e| e.to_string())?;
    let mut out = String::new();
    let _ = writeln!(out, "theta({}) = {}", act.word_string(&w), theta);
    let _ = writeln!(out, "domain = {}", theta.domain());
    let _ = writeln!(out, "range = {}", theta.range());
    Ok(Report::pass(out))
}

pub fn oracle(doc: &InputDocument) -> Result<Report, String> {
    let (h0, h1) = graph_oracle(&doc.graph).map_err(|e| e.to_string())?;
    let mut text = String::new();
    let _ = writeln!(text, "H0 = {h0}");
    let _ = writeln!(text, "H1 = {h1}");
    let _ = writeln!(text, "Hn = 0 for n >= 2");
    let _ = writeln!(text, "{}", h0.stable);
    Ok(Report::pass(text))
}

pub fn dr_check(doc: &InputDocument) -> Result<Report, String> {
    let Payload::Map(sys) = &doc.payload else {
        return Err("dr-check needs an input with map rules".to_string());
    };
    let n0 = sys.base_level();
    let mut text = String::new();
    let mut pass = true;
    for n in n0..=n0 + 2 {
        let (direct, via) = dr_route_matrices(sys, n).map_err(|e| e.to_string())?;
        let agree = dr_routes_agree(sys, n).map_err(|e| e.to_string())?;
        let _ = writeln!(text, "level {n}: direct = {direct}");
        let _ = writeln!(text, "level {n}: action = {via}");
        let _ = writeln!(text, "level {n}: {}", if agree { "agree" } else { "disagree" });
        pass &= agree;
    }
    let _ = writeln!(text, "{}", if pass { "routes agree" } else { "routes disagree" });
    Ok(Report { text, pass })
}
