//! Deaconu–Renault systems: a local homeomorphism `T` defined on a
//! clopen subset, presented by finitely many prefix pieces
//! `src . t -> dst . t`.
//!
//! Inverting the pieces yields a partial action of a free group with
//! one generator per piece and pairwise disjoint ranges, so the
//! groupoid homology can be computed two ways: from the action tower,
//! or directly from the matrix of `i - T_*` where `T_*` sums a
//! function over fibres.  Both give literally the same columns once
//! the bases are aligned, and the computation asserts so.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use crate::action::PartialAction;
use crate::clopen::ClopenSet;
use crate::error::{Error, Result};
use crate::graph::{Graph, Path};
use crate::homology::{assemble_d_matrix, homology_tower, TowerOutcome};
use crate::intfun::IntFun;
use crate::matrix::IntMatrix;
use crate::prefix::PrefixMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DRSystem {
    graph: Arc<Graph>,
    pieces: Vec<(Path, Path)>,
}

impl DRSystem {
    /// Builds a system from `(src, dst)` pieces; sources must be
    /// pairwise prefix-incomparable so `T` is single-valued, and each
    /// piece must preserve the end vertex.
    pub fn new(graph: &Arc<Graph>, pieces: Vec<(Path, Path)>) -> Result<DRSystem> {
        let mut sorted = pieces;
        sorted.sort();
        for (src, dst) in &sorted {
            graph.validate_path(src)?;
            graph.validate_path(dst)?;
            if graph.path_source(src) != graph.path_source(dst) {
                return Err(Error::RuleEndpointMismatch {
                    src: graph.path_string(src),
                    dst: graph.path_string(dst),
                });
            }
        }
        for (i, (a, _)) in sorted.iter().enumerate() {
            for (b, _) in sorted.iter().skip(i + 1) {
                if a.comparable(b) {
                    return Err(Error::OverlappingSources {
                        a: graph.path_string(a),
                        b: graph.path_string(b),
                    });
                }
            }
        }
        Ok(DRSystem { graph: graph.clone(), pieces: sorted })
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    pub fn pieces(&self) -> &[(Path, Path)] {
        &self.pieces
    }

    pub fn piece_count(&self) -> usize {
        self.pieces.len()
    }

    /// The clopen domain of `T`.
    pub fn domain(&self) -> ClopenSet {
        ClopenSet::normalize(&self.graph, self.pieces.iter().map(|(s, _)| s.clone()))
            .expect("piece sources are validated paths")
    }

    /// Each piece as a partial homeomorphism in the direction of `T`.
    pub fn piece_maps(&self) -> Vec<PrefixMap> {
        self.pieces
            .iter()
            .map(|(s, d)| {
                PrefixMap::from_rules(&self.graph, [(s.clone(), d.clone())])
                    .expect("a single validated rule is a prefix map")
            })
            .collect()
    }

    /// The coarsest level whose atoms refine every piece.
    pub fn base_level(&self) -> usize {
        self.pieces.iter().map(|(s, d)| s.len().max(d.len())).max().unwrap_or(0)
    }

    fn depth_excess(&self) -> usize {
        self.pieces.iter().map(|(s, d)| d.len().saturating_sub(s.len())).max().unwrap_or(0)
    }
}

/// The full shift on the boundary-path space of a graph: every edge
/// cylinder maps to the cylinder of its source vertex by cutting the
/// edge.
pub fn shift_system(graph: &Arc<Graph>) -> DRSystem {
    let pieces = graph
        .edge_ids()
        .map(|e| {
            let src = graph
                .path(graph.range(e), &[e])
                .expect("single edges are paths");
            (src, graph.empty_path(graph.source(e)))
        })
        .collect();
    DRSystem::new(graph, pieces).expect("edge cylinders are pairwise incomparable")
}

/// The semi-saturated orthogonal partial action of inverse branches:
/// one generator per piece, named `a1, a2, ...` in piece order, with
/// the single rule `dst -> src`.
pub fn dr_to_action(sys: &DRSystem) -> Result<Arc<PartialAction>> {
    let maps: Vec<(String, PrefixMap)> = sys
        .pieces
        .iter()
        .enumerate()
        .map(|(i, (src, dst))| {
            let m = PrefixMap::from_rules(sys.graph(), [(dst.clone(), src.clone())])?;
            Ok((format!("a{}", i + 1), m))
        })
        .collect::<Result<_>>()?;
    let named: Vec<(&str, PrefixMap)> =
        maps.iter().map(|(n, m)| (n.as_str(), m.clone())).collect();
    Ok(Arc::new(PartialAction::new(sys.graph(), named)?))
}

/// The matrix of `i - T_*` over the level-`n` atoms of `dom T`
/// (columns) and level-`m` atoms of the whole space (rows), with
/// `T_*(f)(x) = sum over T(y) = x of f(y)` realised as the sum of
/// piece pushforwards.
pub fn dr_direct_matrix(sys: &DRSystem, n: usize) -> Result<(IntMatrix, Vec<Path>, Vec<Path>)> {
    let n0 = sys.base_level();
    if n < n0 {
        return Err(Error::LevelTooSmall { min: n0, given: n });
    }
    let m = n + sys.depth_excess();
    let graph = sys.graph();
    let codomain = graph.level_atoms(m);
    let domain = sys.domain().level_atoms_within(n)?;
    let maps = sys.piece_maps();
    let mut matrix = IntMatrix::zero(codomain.len(), domain.len());
    for (j, p) in domain.iter().enumerate() {
        let ind = IntFun::indicator(&ClopenSet::cylinder(graph, p.clone())?);
        let mut col_fun = ind.clone();
        for piece in &maps {
            col_fun = col_fun.sub(&piece.pushforward(&ind)?)?;
        }
        for (i, v) in col_fun.to_level_vector(m)?.into_iter().enumerate() {
            matrix.set(i, j, v);
        }
    }
    Ok((matrix, domain, codomain))
}

/// The action-route matrix at level `n`, columns sorted by atom so
/// that they line up with `dr_direct_matrix`.
fn aligned_action_matrix(sys: &DRSystem, n: usize) -> Result<(IntMatrix, Vec<Path>, Vec<Path>)> {
    let act = dr_to_action(sys)?;
    let lvl = assemble_d_matrix(&act, n)?;
    let mut order: Vec<usize> = (0..lvl.domain.len()).collect();
    order.sort_by(|&i, &j| lvl.domain[i].1.cmp(&lvl.domain[j].1));
    let mut aligned = IntMatrix::zero(lvl.matrix.rows(), lvl.matrix.cols());
    for (new_j, &old_j) in order.iter().enumerate() {
        for i in 0..lvl.matrix.rows() {
            aligned.set(i, new_j, lvl.matrix.get(i, old_j).clone());
        }
    }
    let atoms: Vec<Path> = order.iter().map(|&i| lvl.domain[i].1.clone()).collect();
    Ok((aligned, atoms, lvl.codomain))
}

/// Both route matrices at level `n`, `(direct, via the action)`, over
/// a common column order.
pub fn dr_route_matrices(sys: &DRSystem, n: usize) -> Result<(IntMatrix, IntMatrix)> {
    let (direct, _, _) = dr_direct_matrix(sys, n)?;
    let (aligned, _, _) = aligned_action_matrix(sys, n)?;
    Ok((direct, aligned))
}

/// Checks that the direct `i - T_*` matrix at level `n` coincides with
/// the action-route matrix after sorting the action columns by atom.
pub fn dr_routes_agree(sys: &DRSystem, n: usize) -> Result<bool> {
    let (direct, dom_direct, cod_direct) = dr_direct_matrix(sys, n)?;
    let (aligned, atoms, codomain) = aligned_action_matrix(sys, n)?;
    Ok(codomain == cod_direct && atoms == dom_direct && aligned == direct)
}

/// Homology of the transformation groupoid of `(X, T)` through the
/// inverse-branch action, with the direct route checked against it on
/// every computed level.
pub fn dr_homology(sys: &DRSystem, max_level: usize, window: usize) -> Result<TowerOutcome> {
    let act = dr_to_action(sys)?;
    let outcome = homology_tower(&act, max_level, window)?;
    for lvl in &outcome.levels {
        debug_assert!(
            dr_routes_agree(sys, lvl.level).unwrap_or(false),
            "direct and action routes must assemble the same matrix"
        );
    }
    Ok(outcome)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::graph_oracle;
    use crate::matrix::Stability;
    use alloc::vec;

    fn two_shift_graph() -> Arc<Graph> {
        Arc::new(Graph::new(&["v"], &[("e", "v", "v"), ("f", "v", "v")]).unwrap())
    }

    #[test]
    fn shift_system_pieces() {
        let g = two_shift_graph();
        let sys = shift_system(&g);
        assert_eq!(sys.piece_count(), 2);
        assert_eq!(sys.domain(), ClopenSet::full(&g));
        let act = dr_to_action(&sys).unwrap();
        assert_eq!(act.generator_count(), 2);
        // Ranges are pairwise disjoint: orthogonality.
        let x1 = act.theta(act.generator("a1").unwrap()).range();
        let x2 = act.theta(act.generator("a2").unwrap()).range();
        assert!(x1.meet(&x2).unwrap().is_empty());
    }

    #[test]
    fn routes_agree_on_the_two_shift() {
        let g = two_shift_graph();
        let sys = shift_system(&g);
        for n in 1..=3 {
            assert!(dr_routes_agree(&sys, n).unwrap());
        }
        let t = dr_homology(&sys, 7, 2).unwrap();
        assert!(t.h0.is_trivial());
        assert!(t.h1.is_trivial());
        assert_eq!(t.stable, Stability::StabilizedAt(1));
    }

    #[test]
    fn dr_matches_graph_oracle() {
        let g = Arc::new(
            Graph::new(
                &["u", "w"],
                &[("l", "u", "u"), ("c", "w", "u"), ("d", "u", "w"), ("k", "w", "w")],
            )
            .unwrap(),
        );
        let sys = shift_system(&g);
        let t = dr_homology(&sys, 7, 2).unwrap();
        let (h0, h1) = graph_oracle(&g).unwrap();
        assert!(t.h0.same_group(&h0));
        assert!(t.h1.same_group(&h1));
    }

    #[test]
    fn empty_system_gives_unit_groupoid() {
        let g = two_shift_graph();
        let sys = DRSystem::new(&g, vec![]).unwrap();
        assert!(sys.domain().is_empty());
        let t = dr_homology(&sys, 2, 2).unwrap();
        for lvl in &t.levels {
            assert_eq!(lvl.h0.free_rank, 2usize.pow(lvl.level as u32));
            assert!(lvl.h1.is_trivial());
        }
    }

    #[test]
    fn overlapping_sources_rejected() {
        let g = two_shift_graph();
        let e = g.parse_path("e").unwrap();
        let ee = g.parse_path("e.e").unwrap();
        let v = g.empty_path(g.vertex("v").unwrap());
        assert!(matches!(
            DRSystem::new(&g, vec![(e.clone(), v.clone()), (ee, v.clone())]),
            Err(Error::OverlappingSources { .. })
        ));
        // A non-injective T is fine: overlapping targets allowed.
        let f = g.parse_path("f").unwrap();
        assert!(DRSystem::new(&g, vec![(e, v.clone()), (f, v)]).is_ok());
    }

    #[test]
    fn piece_with_longer_target() {
        // T maps Z(e) into Z(f.e) by rewriting the head: the pullback
        // side gets deeper, exercising the level offset.
        let g = two_shift_graph();
        let e = g.parse_path("e").unwrap();
        let fe = g.parse_path("f.e").unwrap();
        let sys = DRSystem::new(&g, vec![(e, fe)]).unwrap();
        let (m, dom, cod) = dr_direct_matrix(&sys, 2).unwrap();
        assert_eq!(dom.len(), 2);
        assert_eq!(cod.len(), 8);
        assert_eq!(m.rows(), 8);
        assert!(dr_routes_agree(&sys, 2).unwrap());
        // Away from the graph of T the groupoid is just the space, so
        // the level ranks keep growing and the tower reports that.
        let t = dr_homology(&sys, 5, 2).unwrap();
        assert_eq!(t.stable, Stability::ApproximateUpTo(5));
        for lvl in &t.levels {
            assert_eq!(lvl.h0.free_rank, 3 * 2usize.pow(lvl.level as u32 - 1));
            assert!(lvl.h0.invariant_factors.is_empty());
            assert!(lvl.h1.is_trivial());
        }
    }
}
