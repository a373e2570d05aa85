//! Clopen partial homeomorphisms of the boundary-path space given by
//! finite prefix-exchange tables.
//!
//! A rule `src -> dst` with `s(src) = s(dst)` sends `src.x` to `dst.x`
//! for every continuation `x`.  Sources are pairwise prefix-
//! incomparable and so are targets, making the map a homeomorphism
//! from the union of the source cylinders to the union of the target
//! cylinders.  Tables are kept canonical: a complete rule family
//! `{p.g -> q.g}` over all extensions `g` merges to `p -> q`, so equal
//! maps have equal tables.

use alloc::collections::BTreeMap;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;

use crate::clopen::{same_graph, ClopenSet};
use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Path};
use crate::intfun::IntFun;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrefixMap {
    graph: Arc<Graph>,
    /// Keyed by source path; the value is the target path.
    rules: BTreeMap<Path, Path>,
}

/// Merges complete sibling rule families `{p.g -> q.g}` to `p -> q`.
fn merge_families(graph: &Graph, rules: &mut BTreeMap<Path, Path>) {
    loop {
        let mut families: BTreeMap<(Path, Path), Vec<EdgeId>> = BTreeMap::new();
        for (src, dst) in rules.iter() {
            if let (Some((sp, sl)), Some((dp, dl))) = (src.parent(), dst.parent()) {
                if sl == dl {
                    families.entry((sp, dp)).or_default().push(sl);
                }
            }
        }
        let mut changed = false;
        for ((sp, dp), mut have) in families {
            let ext = graph.extensions(graph.path_source(&sp));
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
                let child = graph.extend(&sp, e).expect("family member is a path");
                rules.remove(&child);
            }
            rules.insert(sp, dp);
            changed = true;
        }
        if !changed {
            break;
        }
    }
}

impl PrefixMap {
    /// The empty map (empty domain).
    pub fn empty(graph: &Arc<Graph>) -> PrefixMap {
        PrefixMap { graph: graph.clone(), rules: BTreeMap::new() }
    }

    /// The identity on the whole space.
    pub fn identity(graph: &Arc<Graph>) -> PrefixMap {
        Self::identity_on(&ClopenSet::full(graph))
    }

    /// The identity on a clopen set.
    pub fn identity_on(set: &ClopenSet) -> PrefixMap {
        let rules = set.atoms().map(|p| (p.clone(), p.clone())).collect();
        PrefixMap { graph: set.graph().clone(), rules }
    }

    /// Builds and canonicalises a rule table, checking endpoint
    /// preservation and prefix-incomparability on both sides.
    pub fn from_rules<I>(graph: &Arc<Graph>, rules: I) -> Result<PrefixMap>
    where
        I: IntoIterator<Item = (Path, Path)>,
    {
        let pairs: Vec<(Path, Path)> = rules.into_iter().collect();
        for (src, dst) in &pairs {
            graph.validate_path(src)?;
            graph.validate_path(dst)?;
            if graph.path_source(src) != graph.path_source(dst) {
                return Err(Error::RuleEndpointMismatch {
                    src: graph.path_string(src),
                    dst: graph.path_string(dst),
                });
            }
        }
        for (i, (si, di)) in pairs.iter().enumerate() {
            for (sj, dj) in &pairs[i + 1..] {
                if si.comparable(sj) && (si, di) != (sj, dj) {
                    return Err(Error::OverlappingSources {
                        a: graph.path_string(si),
                        b: graph.path_string(sj),
                    });
                }
                if di.comparable(dj) && (si, di) != (sj, dj) {
                    return Err(Error::OverlappingTargets {
                        a: graph.path_string(di),
                        b: graph.path_string(dj),
                    });
                }
            }
        }
        let mut table = BTreeMap::new();
        for (src, dst) in pairs {
            table.insert(src, dst);
        }
        merge_families(graph, &mut table);
        Ok(PrefixMap { graph: graph.clone(), rules: table })
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn rules(&self) -> impl Iterator<Item = (&Path, &Path)> {
        self.rules.iter()
    }

    pub fn rule_count(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn domain(&self) -> ClopenSet {
        ClopenSet::normalize(&self.graph, self.rules.keys().cloned())
            .expect("rule sources are valid")
    }

    pub fn range(&self) -> ClopenSet {
        ClopenSet::normalize(&self.graph, self.rules.values().cloned())
            .expect("rule targets are valid")
    }

    pub fn invert(&self) -> PrefixMap {
        let rules = self.rules.iter().map(|(s, d)| (d.clone(), s.clone())).collect();
        PrefixMap { graph: self.graph.clone(), rules }
    }

    /// Function composition `self . first` (apply `first`, then
    /// `self`), restricted to where it is defined.
    pub fn after(&self, first: &PrefixMap) -> Result<PrefixMap> {
        same_graph(&self.graph, &first.graph)?;
        let mut out = Vec::new();
        for (p, q) in first.rules.iter() {
            for (u, v) in self.rules.iter() {
                if let Some(t) = q.tail_after(u) {
                    // u = q.t: the overlap is Z(u), pulled back to Z(p.t).
                    let src = self.graph.concat(p, t).expect("t continues s(p) = s(q)");
                    out.push((src, v.clone()));
                } else if let Some(t) = u.tail_after(q) {
                    if !t.is_empty() {
                        // q = u.t strictly: all of Z(p) maps through.
                        let dst = self.graph.concat(v, t).expect("t continues s(v) = s(u)");
                        out.push((p.clone(), dst));
                    }
                }
            }
        }
        Self::from_rules(&self.graph, out)
    }

    /// Domain restriction to `set`: the same map on `domain() meet set`.
    pub fn restrict(&self, set: &ClopenSet) -> Result<PrefixMap> {
        same_graph(&self.graph, set.graph())?;
        let mut out = Vec::new();
        for (src, dst) in self.rules.iter() {
            if set.contains_cylinder(src) {
                out.push((src.clone(), dst.clone()));
                continue;
            }
            for c in set.atoms() {
                if let Some(t) = src.tail_after(c) {
                    if !t.is_empty() {
                        let d = self.graph.concat(dst, t).expect("t continues s(dst)");
                        out.push((c.clone(), d));
                    }
                }
            }
        }
        Self::from_rules(&self.graph, out)
    }

    /// The image of `set meet domain()` under the map.
    pub fn image_of(&self, set: &ClopenSet) -> Result<ClopenSet> {
        Ok(self.restrict(set)?.range())
    }

    /// Pulls a function back along the map: `x |-> f(self(x))`,
    /// supported in the domain.
    pub fn pullback(&self, f: &IntFun) -> Result<IntFun> {
        same_graph(&self.graph, f.graph())?;
        let mut terms: BTreeMap<Path, BigInt> = BTreeMap::new();
        for (src, dst) in self.rules.iter() {
            if let Some(c) = f.term_at_prefix(dst) {
                terms.insert(src.clone(), c);
                continue;
            }
            for (u, c) in f.terms_extending(dst) {
                let t = dst.tail_after(u).expect("u extends dst");
                let p = self.graph.concat(src, t).expect("t continues s(src) = s(dst)");
                terms.insert(p, c.clone());
            }
        }
        Ok(IntFun::from_disjoint_terms(&self.graph, terms))
    }

    /// Pushes a function forward along the map: transport of
    /// `f` restricted to the domain, supported in the range.
    pub fn pushforward(&self, f: &IntFun) -> Result<IntFun> {
        self.invert().pullback(f)
    }

    /// The image of the cylinder of `p` when it falls inside a single
    /// source cylinder; `None` when `p` is not that deep.
    pub fn map_cylinder(&self, p: &Path) -> Option<Path> {
        for (src, dst) in self.rules.iter() {
            if let Some(t) = src.tail_after(p) {
                return Some(self.graph.concat(dst, t).expect("t continues s(dst)"));
            }
        }
        None
    }
}

impl fmt::Display for PrefixMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, (src, dst)) in self.rules.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(
                f,
                "{} -> {}",
                self.graph.path_string(src),
                self.graph.path_string(dst)
            )?;
        }
        write!(f, "}}")
    }
}

/// Builds a rule table from `(src, dst)` path strings.
pub fn rules_from_strings(
    graph: &Arc<Graph>,
    pairs: &[(&str, &str)],
) -> Result<PrefixMap> {
    let mut rules = Vec::new();
    for (s, d) in pairs {
        rules.push((graph.parse_path(s)?, graph.parse_path(d)?));
    }
    PrefixMap::from_rules(graph, rules)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::format;
    use alloc::string::String;
    use alloc::vec;

    fn g1() -> Arc<Graph> {
        Arc::new(Graph::new(&["v"], &[("e", "v", "v"), ("f", "v", "v")]).unwrap())
    }

    fn map(g: &Arc<Graph>, pairs: &[(&str, &str)]) -> PrefixMap {
        rules_from_strings(g, pairs).unwrap()
    }

    fn set(g: &Arc<Graph>, paths: &[&str]) -> ClopenSet {
        ClopenSet::normalize(g, paths.iter().map(|s| g.parse_path(s).unwrap())).unwrap()
    }

    #[test]
    fn construction_validates_rules() {
        let g = g1();
        assert!(rules_from_strings(&g, &[("v", "e")]).is_ok());
        // Overlapping sources.
        assert!(matches!(
            rules_from_strings(&g, &[("e", "e"), ("e.f", "f")]),
            Err(Error::OverlappingSources { .. })
        ));
        // Overlapping targets.
        assert!(matches!(
            rules_from_strings(&g, &[("e", "e"), ("f", "e.f")]),
            Err(Error::OverlappingTargets { .. })
        ));
        // Endpoint mismatch needs a graph with two vertices.
        let h = Arc::new(
            Graph::new(&["u", "w"], &[("x", "u", "w"), ("l", "u", "u")]).unwrap(),
        );
        let x = h.parse_path("x").unwrap(); // ends at w
        let l = h.parse_path("l").unwrap(); // ends at u
        assert!(matches!(
            PrefixMap::from_rules(&h, vec![(x, l)]),
            Err(Error::RuleEndpointMismatch { .. })
        ));
    }

    #[test]
    fn tables_merge_to_canonical_form() {
        let g = g1();
        let a = map(&g, &[("e", "f.e"), ("f", "f.f")]);
        let b = map(&g, &[("v", "f")]);
        assert_eq!(a, b);
        assert_eq!(format!("{a}"), "{v -> f}");
    }

    #[test]
    fn domain_and_range_normalize() {
        let g = g1();
        let m = map(&g, &[("e", "e.e"), ("f", "e.f")]);
        // Sources {e, f} cover everything; targets tile Z(e).
        assert_eq!(m.domain(), ClopenSet::full(&g));
        assert_eq!(m.range(), set(&g, &["e"]));
        // The table itself merged to {v -> e}.
        assert_eq!(m.rule_count(), 1);
    }

    #[test]
    fn compose_shift_maps() {
        let g = g1();
        let theta_a = map(&g, &[("v", "e")]);
        let theta_b = map(&g, &[("v", "f")]);
        // theta_a . theta_b^{-1} exchanges the prefixes f and e.
        let c = theta_a.after(&theta_b.invert()).unwrap();
        assert_eq!(format!("{c}"), "{f -> e}");
        // theta_a^{-1} . theta_b is empty: Z(f) misses Z(e).
        let d = theta_a.invert().after(&theta_b).unwrap();
        assert!(d.is_empty());
        // Composing with the identity changes nothing.
        let id = PrefixMap::identity(&g);
        assert_eq!(theta_a.after(&id).unwrap(), theta_a);
        assert_eq!(id.after(&theta_a).unwrap(), theta_a);
    }

    #[test]
    fn compose_splits_across_pieces() {
        let g = g1();
        // first sends all of X into Z(e); second acts differently on
        // Z(e.e) and Z(e.f).
        let first = map(&g, &[("v", "e")]);
        let second = map(&g, &[("e.e", "f.e"), ("e.f", "e")]);
        let c = second.after(&first).unwrap();
        let expect = map(&g, &[("e", "f.e"), ("f", "e")]);
        assert_eq!(c, expect);
    }

    #[test]
    fn restrict_refines_rules() {
        let g = g1();
        let theta_a = map(&g, &[("v", "e")]);
        let r = theta_a.restrict(&set(&g, &["e"])).unwrap();
        assert_eq!(format!("{r}"), "{e -> e.e}");
        assert_eq!(r.domain(), set(&g, &["e"]));
        assert_eq!(r.range(), set(&g, &["e.e"]));
        // Restricting to the full set round-trips to the original.
        assert_eq!(theta_a.restrict(&ClopenSet::full(&g)).unwrap(), theta_a);
    }

    #[test]
    fn image_of_meets_domain_first() {
        let g = g1();
        let m = map(&g, &[("e", "f")]);
        assert_eq!(m.image_of(&set(&g, &["e.e"])).unwrap(), set(&g, &["f.e"]));
        assert!(m.image_of(&set(&g, &["f"])).unwrap().is_empty());
    }

    #[test]
    fn pullback_transports_terms() {
        let g = g1();
        let theta_a = map(&g, &[("v", "e")]);
        let f = IntFun::single(&g, g.parse_path("e.f").unwrap(), 1).unwrap();
        // (f . theta_a)(x) = 1 iff theta_a(x) = e.x in Z(e.f) iff x in Z(f).
        let pb = theta_a.pullback(&f).unwrap();
        assert_eq!(pb, IntFun::single(&g, g.parse_path("f").unwrap(), 1).unwrap());
        // A term above the whole range restricts to the whole domain.
        let c = IntFun::single(&g, g.parse_path("e").unwrap(), 7).unwrap();
        assert_eq!(
            theta_a.pullback(&c).unwrap(),
            IntFun::single(&g, g.parse_path("v").unwrap(), 7).unwrap()
        );
        // Terms outside the range vanish.
        let out = IntFun::single(&g, g.parse_path("f").unwrap(), 1).unwrap();
        assert!(theta_a.pullback(&out).unwrap().is_zero());
    }

    #[test]
    fn pushforward_inverts_pullback_on_domain() {
        let g = g1();
        let theta_a = map(&g, &[("v", "e")]);
        let f = IntFun::single(&g, g.parse_path("f").unwrap(), 4).unwrap();
        let pf = theta_a.pushforward(&f).unwrap();
        assert_eq!(pf, IntFun::single(&g, g.parse_path("e.f").unwrap(), 4).unwrap());
        assert_eq!(theta_a.pullback(&pf).unwrap(), f);
    }

    #[test]
    fn identity_on_acts_as_restriction() {
        let g = g1();
        let c = set(&g, &["e.e", "f"]);
        let id = PrefixMap::identity_on(&c);
        assert_eq!(id.domain(), c);
        assert_eq!(id.range(), c);
        let f = IntFun::from_terms(
            &g,
            vec![(g.parse_path("e").unwrap(), 2), (g.parse_path("f").unwrap(), 3)],
        )
        .unwrap();
        assert_eq!(id.pullback(&f).unwrap(), f.restrict(&c).unwrap());
    }

    #[test]
    fn map_cylinder_follows_one_rule() {
        let g = g1();
        let m = map(&g, &[("e", "f.e")]);
        let img = m.map_cylinder(&g.parse_path("e.f").unwrap()).unwrap();
        assert_eq!(g.path_string(&img), "f.e.f");
        assert!(m.map_cylinder(&g.parse_path("f").unwrap()).is_none());
        // Z(v) spans several pieces of the inverse, so no single image.
        assert!(m.map_cylinder(&g.parse_path("v").unwrap()).is_none());
    }

    #[test]
    fn display_orders_by_source() {
        let g = g1();
        let m = map(&g, &[("f", "e.e"), ("e.e", "f")]);
        let s: String = format!("{m}");
        assert_eq!(s, "{e.e -> f, f -> e.e}");
    }
}
