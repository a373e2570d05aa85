//! Locally constant integer functions on the boundary-path space with
//! clopen support, stored as finite sums `sum c_p * 1_{Z(p)}` over a
//! prefix-incomparable support.  As with clopen sets, a complete
//! sibling family carrying one common value collapses to its parent,
//! which makes the representation canonical and equality structural.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::clopen::{same_graph, ClopenSet};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Path};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntFun {
    graph: Arc<Graph>,
    terms: BTreeMap<Path, BigInt>,
}

/// Behaviour of a function on the cylinder of one path.
enum Local {
    /// Constant on the whole cylinder.
    Const(BigInt),
    /// Some support path sits strictly deeper.
    Deeper,
}

fn term_prefix_value(terms: &BTreeMap<Path, BigInt>, q: &Path) -> Option<BigInt> {
    let mut p = q.clone();
    loop {
        if let Some(c) = terms.get(&p) {
            return Some(c.clone());
        }
        match p.parent() {
            Some((parent, _)) => p = parent,
            None => return None,
        }
    }
}

fn term_has_extension(terms: &BTreeMap<Path, BigInt>, q: &Path) -> bool {
    terms
        .range(q.clone()..)
        .take_while(|(p, _)| q.is_prefix_of(p))
        .any(|(p, _)| p != q)
}

/// Collapses complete sibling families that carry a single value.
fn canonicalize(graph: &Graph, terms: &mut BTreeMap<Path, BigInt>) {
    loop {
        let mut families: BTreeMap<Path, Vec<EdgeId>> = BTreeMap::new();
        for p in terms.keys() {
            if let Some((parent, last)) = p.parent() {
                families.entry(parent).or_default().push(last);
            }
        }
        let mut changed = false;
        for (parent, mut have) in families {
            let ext = graph.extensions(graph.path_source(&parent));
            if ext.is_empty() || have.len() != ext.len() {
                continue;
            }
            have.sort();
            let mut want = ext.to_vec();
            want.sort();
            if have != want {
                continue;
            }
            let children: Vec<Path> = ext
                .iter()
                .map(|&e| graph.extend(&parent, e).expect("family member is a path"))
                .collect();
            let value = terms[&children[0]].clone();
            if children[1..].iter().any(|c| terms[c] != value) {
                continue;
            }
            for c in &children {
                terms.remove(c);
            }
            terms.insert(parent, value);
            changed = true;
        }
        if !changed {
            break;
        }
    }
}

impl IntFun {
    pub fn zero(graph: &Arc<Graph>) -> IntFun {
        IntFun { graph: graph.clone(), terms: BTreeMap::new() }
    }

    pub fn indicator(set: &ClopenSet) -> IntFun {
        let terms = set.atoms().map(|p| (p.clone(), BigInt::one())).collect();
        IntFun { graph: set.graph().clone(), terms }
    }

    /// `c * 1_{Z(p)}`.
    pub fn single(graph: &Arc<Graph>, p: Path, c: impl Into<BigInt>) -> Result<IntFun> {
        graph.validate_path(&p)?;
        let c = c.into();
        if c.is_zero() {
            return Ok(Self::zero(graph));
        }
        let mut terms = BTreeMap::new();
        terms.insert(p, c);
        canonicalize(graph, &mut terms);
        Ok(IntFun { graph: graph.clone(), terms })
    }

    /// Sum of `c * 1_{Z(p)}` over arbitrary, possibly overlapping terms.
    pub fn from_terms<I, C>(graph: &Arc<Graph>, terms: I) -> Result<IntFun>
    where
        I: IntoIterator<Item = (Path, C)>,
        C: Into<BigInt>,
    {
        let mut acc = Self::zero(graph);
        for (p, c) in terms {
            acc = acc.add(&Self::single(graph, p, c)?)?;
        }
        Ok(acc)
    }

    /// Wraps terms already known to be a prefix-incomparable support.
    pub(crate) fn from_disjoint_terms(
        graph: &Arc<Graph>,
        terms: BTreeMap<Path, BigInt>,
    ) -> IntFun {
        debug_assert!(terms.values().all(|c| !c.is_zero()));
        debug_assert!({
            let keys: Vec<&Path> = terms.keys().collect();
            keys.iter().enumerate().all(|(i, p)| {
                keys[i + 1..].iter().all(|q| !p.comparable(q))
            })
        });
        let mut terms = terms;
        canonicalize(graph, &mut terms);
        IntFun { graph: graph.clone(), terms }
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Path, &BigInt)> {
        self.terms.iter()
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn depth(&self) -> usize {
        self.terms.keys().map(Path::len).max().unwrap_or(0)
    }

    pub fn support(&self) -> ClopenSet {
        ClopenSet::normalize(&self.graph, self.terms.keys().cloned())
            .expect("support paths are valid")
    }

    pub fn supported_in(&self, set: &ClopenSet) -> Result<bool> {
        same_graph(&self.graph, set.graph())?;
        Ok(self.terms.keys().all(|p| set.contains_cylinder(p)))
    }

    /// The coefficient of the unique term whose path is a prefix of
    /// `q`, if any.
    pub(crate) fn term_at_prefix(&self, q: &Path) -> Option<BigInt> {
        term_prefix_value(&self.terms, q)
    }

    /// Terms whose paths strictly extend `q`.
    pub(crate) fn terms_extending<'a>(
        &'a self,
        q: &'a Path,
    ) -> impl Iterator<Item = (&'a Path, &'a BigInt)> {
        self.terms
            .range(q.clone()..)
            .take_while(move |(p, _)| q.is_prefix_of(p))
            .filter(move |(p, _)| *p != q)
    }

    fn classify(&self, p: &Path) -> Local {
        if let Some(c) = term_prefix_value(&self.terms, p) {
            return Local::Const(c);
        }
        if term_has_extension(&self.terms, p) {
            Local::Deeper
        } else {
            Local::Const(BigInt::zero())
        }
    }

    /// Pointwise combination along the common refinement of the two
    /// supports.  `op` must send `(0, 0)` to `0`.
    fn zip_with<F>(&self, other: &IntFun, op: F) -> Result<IntFun>
    where
        F: Fn(&BigInt, &BigInt) -> BigInt,
    {
        same_graph(&self.graph, &other.graph)?;
        let mut terms = BTreeMap::new();
        for v in self.graph.vertex_ids() {
            self.zip_rec(other, self.graph.empty_path(v), &op, &mut terms);
        }
        canonicalize(&self.graph, &mut terms);
        Ok(IntFun { graph: self.graph.clone(), terms })
    }

    fn zip_rec<F>(&self, other: &IntFun, p: Path, op: &F, out: &mut BTreeMap<Path, BigInt>)
    where
        F: Fn(&BigInt, &BigInt) -> BigInt,
    {
        match (self.classify(&p), other.classify(&p)) {
            (Local::Const(x), Local::Const(y)) => {
                let v = op(&x, &y);
                if !v.is_zero() {
                    out.insert(p, v);
                }
            }
            _ => {
                let end = self.graph.path_source(&p);
                for &e in self.graph.extensions(end) {
                    let child = self.graph.extend(&p, e).expect("extension is composable");
                    self.zip_rec(other, child, op, out);
                }
            }
        }
    }

    pub fn add(&self, other: &IntFun) -> Result<IntFun> {
        self.zip_with(other, |x, y| x + y)
    }

    pub fn sub(&self, other: &IntFun) -> Result<IntFun> {
        self.zip_with(other, |x, y| x - y)
    }

    /// Pointwise product.
    pub fn mul(&self, other: &IntFun) -> Result<IntFun> {
        self.zip_with(other, |x, y| x * y)
    }

    pub fn neg(&self) -> IntFun {
        self.scale(&BigInt::from(-1))
    }

    pub fn scale(&self, k: &BigInt) -> IntFun {
        if k.is_zero() {
            return Self::zero(&self.graph);
        }
        let terms = self.terms.iter().map(|(p, c)| (p.clone(), c * k)).collect();
        IntFun { graph: self.graph.clone(), terms }
    }

    /// Restriction: the function times the indicator of `set`.
    pub fn restrict(&self, set: &ClopenSet) -> Result<IntFun> {
        self.mul(&IntFun::indicator(set))
    }

    /// The constant value on the cylinder of `q`; the function must be
    /// constant there.
    pub fn value_on(&self, q: &Path) -> Result<BigInt> {
        match self.classify(q) {
            Local::Const(c) => Ok(c),
            Local::Deeper => Err(Error::DepthExceeded { depth: self.depth(), level: q.len() }),
        }
    }

    /// Coordinates in the level-`n` cylinder basis, ordered like
    /// `Graph::level_atoms(n)`.  Needs `n >= depth()`.
    pub fn to_level_vector(&self, n: usize) -> Result<Vec<BigInt>> {
        let depth = self.depth();
        if n < depth {
            return Err(Error::DepthExceeded { depth, level: n });
        }
        Ok(self
            .graph
            .level_atoms(n)
            .iter()
            .map(|q| term_prefix_value(&self.terms, q).unwrap_or_else(BigInt::zero))
            .collect())
    }

    /// Inverse of `to_level_vector` for a coordinate vector over the
    /// level-`n` atoms.
    pub fn from_level_vector(graph: &Arc<Graph>, n: usize, coords: &[BigInt]) -> Result<IntFun> {
        let atoms = graph.level_atoms(n);
        if atoms.len() != coords.len() {
            return Err(Error::DimensionMismatch { expected: atoms.len(), got: coords.len() });
        }
        let mut terms = BTreeMap::new();
        for (p, c) in atoms.into_iter().zip(coords) {
            if !c.is_zero() {
                terms.insert(p, c.clone());
            }
        }
        canonicalize(graph, &mut terms);
        Ok(IntFun { graph: graph.clone(), terms })
    }
}

impl fmt::Display for IntFun {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (p, c)) in self.terms.iter().enumerate() {
            let name = self.graph.path_string(p);
            if i == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let a = c.abs();
            if a.is_one() {
                write!(f, "Z({name})")?;
            } else {
                write!(f, "{a}*Z({name})")?;
            }
        }
        Ok(())
    }
}

/// Paths of the canonical support together with their values, as
/// strings; handy in tests.
pub fn term_strings(f: &IntFun) -> Vec<(String, BigInt)> {
    f.terms()
        .map(|(p, c)| (f.graph().path_string(p), c.clone()))
        .collect()
}

/// Level-`n` membership oracle used by tests: sums raw term values over
/// all raw prefixes of each level atom.
pub fn level_values_oracle(
    graph: &Arc<Graph>,
    raw: &[(Path, BigInt)],
    n: usize,
) -> Vec<BigInt> {
    graph
        .level_atoms(n)
        .iter()
        .map(|q| {
            raw.iter()
                .filter(|(p, _)| p.is_prefix_of(q))
                .map(|(_, c)| c.clone())
                .fold(BigInt::zero(), |a, b| a + b)
        })
        .collect()
}
