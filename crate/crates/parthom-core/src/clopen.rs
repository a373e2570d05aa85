//! Clopen subsets of the boundary-path space.
//!
//! A clopen set is stored as the unique antichain of cylinder paths
//! whose cylinders partition it: no atom is a prefix of another, and no
//! complete sibling family `{p.g : g extends s(p)}` is present (such a
//! family collapses to `p`).  Canonical form makes equality structural.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Path};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClopenSet {
    graph: Arc<Graph>,
    atoms: BTreeSet<Path>,
}

/// The member of `set` that is a prefix of `q` (including `q`), if any.
/// An antichain contains at most one.
pub(crate) fn prefix_in(set: &BTreeSet<Path>, q: &Path) -> Option<Path> {
    let mut p = q.clone();
    loop {
        if set.contains(&p) {
            return Some(p);
        }
        match p.parent() {
            Some((parent, _)) => p = parent,
            None => return None,
        }
    }
}

/// True when some member of `set` strictly extends `q`.  Extensions of
/// `q` are contiguous right after `q` in path order.
pub(crate) fn has_extension_in(set: &BTreeSet<Path>, q: &Path) -> bool {
    set.range(q.clone()..)
        .take_while(|p| q.is_prefix_of(p))
        .any(|p| p != q)
}

/// Collapses complete sibling families in an antichain of paths.
fn collapse(graph: &Graph, set: &mut BTreeSet<Path>) {
    loop {
        let mut families: BTreeMap<Path, Vec<EdgeId>> = BTreeMap::new();
        for p in set.iter() {
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
            for &e in ext {
                let child = graph.extend(&parent, e).expect("family member is a path");
                set.remove(&child);
            }
            set.insert(parent);
            changed = true;
        }
        if !changed {
            break;
        }
    }
}

impl ClopenSet {
    pub fn empty(graph: &Arc<Graph>) -> ClopenSet {
        ClopenSet { graph: graph.clone(), atoms: BTreeSet::new() }
    }

    /// The whole boundary-path space: one empty path per vertex.
    pub fn full(graph: &Arc<Graph>) -> ClopenSet {
        let atoms = graph.vertex_ids().map(|v| graph.empty_path(v)).collect();
        ClopenSet { graph: graph.clone(), atoms }
    }

    pub fn cylinder(graph: &Arc<Graph>, p: Path) -> Result<ClopenSet> {
        Self::normalize(graph, [p])
    }

    /// Builds the canonical form of a union of cylinders: drops atoms
    /// lying inside others, then repeatedly collapses complete sibling
    /// families to their parent.
    pub fn normalize<I>(graph: &Arc<Graph>, paths: I) -> Result<ClopenSet>
    where
        I: IntoIterator<Item = Path>,
    {
        let mut set = BTreeSet::new();
        for p in paths {
            graph.validate_path(&p)?;
            set.insert(p);
        }
        let snapshot: Vec<Path> = set.iter().cloned().collect();
        for q in snapshot {
            let mut p = q.clone();
            while let Some((parent, _)) = p.parent() {
                if set.contains(&parent) {
                    set.remove(&q);
                    break;
                }
                p = parent;
            }
        }
        collapse(graph, &mut set);
        Ok(ClopenSet { graph: graph.clone(), atoms: set })
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn atoms(&self) -> impl Iterator<Item = &Path> {
        self.atoms.iter()
    }

    pub fn atom_count(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    /// Longest atom length; the set is a union of level-`depth()`
    /// cylinders.
    pub fn depth(&self) -> usize {
        self.atoms.iter().map(Path::len).max().unwrap_or(0)
    }

    pub(crate) fn same_graph(&self, other: &ClopenSet) -> Result<()> {
        same_graph(&self.graph, &other.graph)
    }

    /// Whether the cylinder of `p` lies inside this set.  For a
    /// canonical antichain this happens exactly when an atom is a
    /// prefix of `p`.
    pub fn contains_cylinder(&self, p: &Path) -> bool {
        prefix_in(&self.atoms, p).is_some()
    }

    pub fn subset_of(&self, other: &ClopenSet) -> Result<bool> {
        self.same_graph(other)?;
        Ok(self.atoms.iter().all(|p| other.contains_cylinder(p)))
    }

    pub fn meet(&self, other: &ClopenSet) -> Result<ClopenSet> {
        self.same_graph(other)?;
        let mut out = Vec::new();
        for p in &self.atoms {
            if prefix_in(&other.atoms, p).is_some() {
                out.push(p.clone());
            }
            for q in other
                .atoms
                .range(p.clone()..)
                .take_while(|q| p.is_prefix_of(q))
            {
                if q != p {
                    out.push(q.clone());
                }
            }
        }
        Self::normalize(&self.graph, out)
    }

    pub fn join(&self, other: &ClopenSet) -> Result<ClopenSet> {
        self.same_graph(other)?;
        Self::normalize(
            &self.graph,
            self.atoms.iter().chain(other.atoms.iter()).cloned(),
        )
    }

    /// Complement inside the whole boundary-path space, by descending
    /// the path tree only where atoms sit deeper.
    pub fn complement(&self) -> ClopenSet {
        let mut out = Vec::new();
        for v in self.graph.vertex_ids() {
            self.complement_rec(self.graph.empty_path(v), &mut out);
        }
        Self::normalize(&self.graph, out).expect("complement atoms are valid")
    }

    fn complement_rec(&self, p: Path, out: &mut Vec<Path>) {
        if self.contains_cylinder(&p) {
            return;
        }
        if !has_extension_in(&self.atoms, &p) {
            out.push(p);
            return;
        }
        let end = self.graph.path_source(&p);
        for &e in self.graph.extensions(end) {
            let child = self.graph.extend(&p, e).expect("extension is composable");
            self.complement_rec(child, out);
        }
    }

    pub fn minus(&self, other: &ClopenSet) -> Result<ClopenSet> {
        self.meet(&other.complement())
    }

    /// The level-`n` atoms whose cylinders lie in this set; their union
    /// is exactly the set, which needs `n >= depth()`.
    pub fn level_atoms_within(&self, n: usize) -> Result<Vec<Path>> {
        let depth = self.depth();
        if n < depth {
            return Err(Error::DepthExceeded { depth, level: n });
        }
        Ok(self
            .graph
            .level_atoms(n)
            .into_iter()
            .filter(|q| self.contains_cylinder(q))
            .collect())
    }
}

pub(crate) fn same_graph(a: &Arc<Graph>, b: &Arc<Graph>) -> Result<()> {
    if Arc::ptr_eq(a, b) || a == b {
        Ok(())
    } else {
        Err(Error::GraphMismatch)
    }
}

impl fmt::Display for ClopenSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.atoms.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", self.graph.path_string(p))?;
        }
        write!(f, "}}")
    }
}
