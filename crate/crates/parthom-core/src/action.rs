//! Semi-saturated partial actions of a finitely generated free group
//! on the boundary-path space, one prefix-exchange map per generator.
//!
//! For a reduced word `w = l1...ln` the word map is the composite
//! `theta_w = theta_{l1} . ... . theta_{ln}` on its natural domain.
//! Composites of partial maps only shrink domains, so
//! `theta_u . theta_v <= theta_{uv}` automatically: the action is a
//! dual prehomomorphism, semi-saturated by construction.

use alloc::string::{String, ToString};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt::Write as _;

use crate::clopen::{same_graph, ClopenSet};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::prefix::PrefixMap;
use crate::word::{GenId, Letter, ReducedWord, Sign};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartialAction {
    graph: Arc<Graph>,
    names: Vec<String>,
    theta: Vec<PrefixMap>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name
            .bytes()
            .all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

impl PartialAction {
    pub fn new<S: AsRef<str>>(
        graph: &Arc<Graph>,
        generators: Vec<(S, PrefixMap)>,
    ) -> Result<PartialAction> {
        let mut names = Vec::new();
        let mut theta = Vec::new();
        for (name, map) in generators {
            let name = name.as_ref();
            if !valid_name(name) {
                return Err(Error::InvalidName(name.to_string()));
            }
            if names.iter().any(|n| n == name) {
                return Err(Error::DuplicateName(name.to_string()));
            }
            same_graph(graph, map.graph())?;
            names.push(name.to_string());
            theta.push(map);
        }
        Ok(PartialAction { graph: graph.clone(), names, theta })
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn generator_count(&self) -> usize {
        self.names.len()
    }

    pub fn generator_ids(&self) -> impl Iterator<Item = GenId> {
        (0..self.names.len() as u32).map(GenId)
    }

    pub fn generator_name(&self, g: GenId) -> &str {
        &self.names[g.0 as usize]
    }

    pub fn generator(&self, name: &str) -> Result<GenId> {
        self.names
            .iter()
            .position(|n| n == name)
            .map(|i| GenId(i as u32))
            .ok_or_else(|| Error::UnknownGenerator(name.to_string()))
    }

    pub fn theta(&self, g: GenId) -> &PrefixMap {
        &self.theta[g.0 as usize]
    }

    pub fn theta_letter(&self, l: Letter) -> PrefixMap {
        match l.sign {
            Sign::Pos => self.theta(l.gen).clone(),
            Sign::Neg => self.theta(l.gen).invert(),
        }
    }

    /// The word map `theta_w`, composed letter by letter.
    pub fn theta_word(&self, w: &ReducedWord) -> Result<PrefixMap> {
        let mut acc = PrefixMap::identity(&self.graph);
        for &l in w.letters() {
            acc = acc.after(&self.theta_letter(l))?;
        }
        Ok(acc)
    }

    /// `X_w`, the range of `theta_w`; `X_{w^{-1}}` is its domain.
    pub fn x_set(&self, w: &ReducedWord) -> Result<ClopenSet> {
        Ok(self.theta_word(w)?.range())
    }

    pub fn x_letter(&self, l: Letter) -> ClopenSet {
        match l.sign {
            Sign::Pos => self.theta(l.gen).range(),
            Sign::Neg => self.theta(l.gen).domain(),
        }
    }

    /// Parses `a.b^-1.a` style words.  Unless `strict`, the input is
    /// freely reduced; in strict mode unreduced input is an error.
    pub fn parse_word(&self, text: &str, strict: bool) -> Result<ReducedWord> {
        if text == "1" {
            return Ok(ReducedWord::empty());
        }
        let mut letters = Vec::new();
        for token in text.split('.') {
            let (name, sign) = match token.strip_suffix("^-1") {
                Some(base) => (base, Sign::Neg),
                None => (token, Sign::Pos),
            };
            letters.push(Letter { gen: self.generator(name)?, sign });
        }
        if strict && !ReducedWord::is_reduced(&letters) {
            return Err(Error::NotReduced(text.to_string()));
        }
        Ok(ReducedWord::reduce(letters))
    }

    /// Formats a word with generator names; the empty word prints `1`.
    pub fn word_string(&self, w: &ReducedWord) -> String {
        if w.is_empty() {
            return "1".to_string();
        }
        let mut out = String::new();
        for (i, l) in w.letters().iter().enumerate() {
            if i > 0 {
                out.push('.');
            }
            out.push_str(self.generator_name(l.gen));
            if l.sign == Sign::Neg {
                let _ = write!(out, "^-1");
            }
        }
        out
    }
}
