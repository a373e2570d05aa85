//! Groupoid homology of a partial action as a stabilizing tower of
//! integer matrices, plus the dual cohomology tower and a closed-form
//! oracle for graph shift systems.
//!
//! At level `n` the chain map is assembled over the basis of level-`n`
//! cylinder atoms inside each generator range, with values expanded
//! over level-`m` atoms (`m = n + k` absorbs rule shrinkage).  `H0` is
//! its cokernel and `H1` its kernel; refining the basis induces
//! connecting maps, and once those are isomorphisms for a full window
//! of steps the tower has provably converged for the kernel side and
//! is reported as stabilized.

use alloc::string::ToString;
use alloc::sync::Arc;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::One;

use crate::action::PartialAction;
use crate::error::{Error, Result};
use crate::graph::{Graph, Path};
use crate::intfun::IntFun;
use crate::matrix::{
    cokernel, kernel_basis, smith_normal_form, GroupPresentation, IntMatrix, Stability,
};
use crate::word::GenId;

/// The smallest level whose atoms refine every rule of the action.
pub fn base_level(action: &PartialAction) -> usize {
    action
        .generator_ids()
        .flat_map(|a| action.theta(a).rules().map(|(s, d)| s.len().max(d.len())))
        .max()
        .unwrap_or(0)
}

/// How much deeper a pulled-back level-`n` atom can get: the largest
/// shrinkage `|src| - |dst|` over all rules.
pub fn depth_excess(action: &PartialAction) -> usize {
    action
        .generator_ids()
        .flat_map(|a| action.theta(a).rules().map(|(s, d)| s.len().saturating_sub(d.len())))
        .max()
        .unwrap_or(0)
}

/// The chain map at one level of the tower, with its bases.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DMatrixLevel {
    pub level: usize,
    pub codomain_level: usize,
    /// Rows indexed by `codomain`, columns by `domain`.
    pub matrix: IntMatrix,
    pub domain: Vec<(GenId, Path)>,
    pub codomain: Vec<Path>,
}

/// The matrix of `(+)_a (i_a - theta_a^*)` over the level-`n` bases:
/// one column `1_{Z(p)} - 1_{Z(p)} o theta_a` per level-`n` atom `p`
/// inside each `X_a`, expanded over level-`m` atoms.
pub fn assemble_d_matrix(action: &PartialAction, n: usize) -> Result<DMatrixLevel> {
    let n0 = base_level(action);
    if n < n0 {
        return Err(Error::LevelTooSmall { min: n0, given: n });
    }
    let m = n + depth_excess(action);
    let graph = action.graph();
    let codomain = graph.level_atoms(m);
    let mut domain: Vec<(GenId, Path)> = Vec::new();
    for a in action.generator_ids() {
        for p in action.theta(a).range().level_atoms_within(n)? {
            domain.push((a, p));
        }
    }
    let mut matrix = IntMatrix::zero(codomain.len(), domain.len());
    for (j, (a, p)) in domain.iter().enumerate() {
        let ind = IntFun::indicator(&crate::clopen::ClopenSet::cylinder(graph, p.clone())?);
        let col_fun = ind.sub(&action.theta(*a).pullback(&ind)?)?;
        for (i, v) in col_fun.to_level_vector(m)?.into_iter().enumerate() {
            matrix.set(i, j, v);
        }
    }
    Ok(DMatrixLevel { level: n, codomain_level: m, matrix, domain, codomain })
}

/// Subdivision matrices from a level to the next: `(S_dom, S_cod)`
/// satisfying `S_cod * M_n = M_{n+1} * S_dom`.  Each has exactly one
/// `1` per row because every finer atom has a unique coarser ancestor.
pub fn subdivision_pair(lo: &DMatrixLevel, hi: &DMatrixLevel) -> (IntMatrix, IntMatrix) {
    let mut s_dom = IntMatrix::zero(hi.domain.len(), lo.domain.len());
    for (i, (a, q)) in hi.domain.iter().enumerate() {
        for (j, (b, p)) in lo.domain.iter().enumerate() {
            if a == b && p.is_prefix_of(q) {
                s_dom.set(i, j, BigInt::one());
            }
        }
    }
    let mut s_cod = IntMatrix::zero(hi.codomain.len(), lo.codomain.len());
    for (i, q) in hi.codomain.iter().enumerate() {
        for (j, p) in lo.codomain.iter().enumerate() {
            if p.is_prefix_of(q) {
                s_cod.set(i, j, BigInt::one());
            }
        }
    }
    (s_dom, s_cod)
}

/// One computed level of a tower.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerLevel {
    pub level: usize,
    pub h0: GroupPresentation,
    pub h1: GroupPresentation,
}

/// The reported groups, the stability verdict, and the per-level log.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerOutcome {
    pub h0: GroupPresentation,
    pub h1: GroupPresentation,
    pub stable: Stability,
    pub levels: Vec<TowerLevel>,
}

fn check_window(window: usize) -> Result<()> {
    if window == 0 {
        return Err(Error::WindowTooSmall);
    }
    Ok(())
}

/// Whether the map induced on cokernels by `connecting` (codomain
/// side) is onto: together with equal presentations this certifies an
/// isomorphism.
fn induced_coker_surjective(connecting: &IntMatrix, target: &IntMatrix) -> Result<bool> {
    Ok(cokernel(&connecting.hstack(target)?).is_trivial())
}

/// Groupoid homology `H0 = coker`, `H1 = ker` over refining levels.
///
/// A step counts as an isomorphism when the `H0` presentations agree
/// and the induced map is onto (a surjection between isomorphic
/// finitely generated abelian groups is bijective) and the `H1` ranks
/// agree (the subdivided kernel embeds as a saturated sublattice, so
/// equal ranks force equality).  After `window` consecutive such steps
/// the tower stops and reports the common value.
pub fn homology_tower(
    action: &PartialAction,
    max_level: usize,
    window: usize,
) -> Result<TowerOutcome> {
    check_window(window)?;
    let n0 = base_level(action);
    if max_level < n0 {
        return Err(Error::LevelTooSmall { min: n0, given: max_level });
    }
    let mut levels: Vec<TowerLevel> = Vec::new();
    let mut prev: Option<(DMatrixLevel, GroupPresentation, usize)> = None;
    let mut streak = 0usize;
    let mut stabilized: Option<usize> = None;
    let mut last = n0;
    for n in n0..=max_level {
        last = n;
        let cur = assemble_d_matrix(action, n)?;
        let h0 = cokernel(&cur.matrix);
        let h1_rank = kernel_basis(&cur.matrix).len();
        levels.push(TowerLevel {
            level: n,
            h0: h0.clone(),
            h1: GroupPresentation::free(h1_rank),
        });
        if let Some((prev_m, prev_h0, prev_h1_rank)) = &prev {
            let (s_dom, s_cod) = subdivision_pair(prev_m, &cur);
            debug_assert_eq!(
                s_cod.mul(&prev_m.matrix).expect("ladder shapes match"),
                cur.matrix.mul(&s_dom).expect("ladder shapes match"),
                "subdivision must commute with the chain map"
            );
            let iso = h0.same_group(prev_h0)
                && induced_coker_surjective(&s_cod, &cur.matrix)?
                && h1_rank == *prev_h1_rank;
            if iso {
                streak += 1;
                if streak >= window {
                    stabilized = Some(n - window);
                    prev = Some((cur, h0, h1_rank));
                    break;
                }
            } else {
                streak = 0;
            }
        }
        prev = Some((cur, h0, h1_rank));
    }
    let (_, h0, h1_rank) = prev.expect("at least one level was computed");
    let stable = match stabilized {
        Some(n) => Stability::StabilizedAt(n),
        None => Stability::ApproximateUpTo(last),
    };
    Ok(TowerOutcome {
        h0: h0.with_stability(stable),
        h1: GroupPresentation::free(h1_rank).with_stability(stable),
        stable,
        levels,
    })
}

/// The dual tower: transpose each level.  `H0` (cohomology degree
/// zero) is the kernel of the transpose and is free; `H1` is its
/// cokernel.  Connecting maps run downward along the transposed
/// subdivisions, so the isomorphism test mirrors the homology one with
/// the roles of the two sides exchanged.
pub fn cohomology_tower(
    action: &PartialAction,
    max_level: usize,
    window: usize,
) -> Result<TowerOutcome> {
    check_window(window)?;
    let n0 = base_level(action);
    if max_level < n0 {
        return Err(Error::LevelTooSmall { min: n0, given: max_level });
    }
    let mut levels: Vec<TowerLevel> = Vec::new();
    let mut prev: Option<(DMatrixLevel, IntMatrix, usize, GroupPresentation)> = None;
    let mut streak = 0usize;
    let mut stabilized: Option<usize> = None;
    let mut last = n0;
    for n in n0..=max_level {
        last = n;
        let cur = assemble_d_matrix(action, n)?;
        let dual = cur.matrix.transpose();
        let h0_rank = kernel_basis(&dual).len();
        let h1 = cokernel(&dual);
        levels.push(TowerLevel {
            level: n,
            h0: GroupPresentation::free(h0_rank),
            h1: h1.clone(),
        });
        if let Some((prev_m, prev_dual, prev_h0_rank, prev_h1)) = &prev {
            let (s_dom, s_cod) = subdivision_pair(prev_m, &cur);
            debug_assert_eq!(
                s_cod.mul(&prev_m.matrix).expect("ladder shapes match"),
                cur.matrix.mul(&s_dom).expect("ladder shapes match"),
                "subdivision must commute with the chain map"
            );
            // The finer level maps down to the coarser one.
            let iso = h1.same_group(prev_h1)
                && induced_coker_surjective(&s_dom.transpose(), prev_dual)?
                && h0_rank == *prev_h0_rank;
            if iso {
                streak += 1;
                if streak >= window {
                    stabilized = Some(n - window);
                    prev = Some((cur, dual, h0_rank, h1));
                    break;
                }
            } else {
                streak = 0;
            }
        }
        prev = Some((cur, dual, h0_rank, h1));
    }
    let (_, _, h0_rank, h1) = prev.expect("at least one level was computed");
    let stable = match stabilized {
        Some(n) => Stability::StabilizedAt(n),
        None => Stability::ApproximateUpTo(last),
    };
    Ok(TowerOutcome {
        h0: GroupPresentation::free(h0_rank).with_stability(stable),
        h1: h1.with_stability(stable),
        stable,
        levels,
    })
}

/// The vertex matrix of the shift system on the boundary-path space:
/// `B = M - I` with `M[u][v]` counting edges with source `u` and range
/// `v`.
pub fn vertex_matrix(graph: &Arc<Graph>) -> Result<IntMatrix> {
    for v in graph.vertex_ids() {
        if graph.is_terminal(v) {
            return Err(Error::TerminalVertex(graph.vertex_name(v).to_string()));
        }
    }
    let nv = graph.vertex_count();
    let mut m = IntMatrix::zero(nv, nv);
    for e in graph.edge_ids() {
        let u = graph.source(e).0 as usize;
        let v = graph.range(e).0 as usize;
        let val = m.get(u, v) + BigInt::one();
        m.set(u, v, val);
    }
    for i in 0..nv {
        let val = m.get(i, i) - BigInt::one();
        m.set(i, i, val);
    }
    Ok(m)
}

/// Closed-form homology of the full shift on the boundary-path space
/// of a graph without terminal vertices: cokernel and kernel of the
/// vertex matrix.
pub fn graph_oracle(graph: &Arc<Graph>) -> Result<(GroupPresentation, GroupPresentation)> {
    let b = vertex_matrix(graph)?;
    let h0 = cokernel(&b);
    let h1 = GroupPresentation::free(kernel_basis(&b).len());
    Ok((h0, h1))
}

/// Sanity helper for tests: the full diagonal of the normal form.
pub fn invariant_diagonal(a: &IntMatrix) -> Vec<BigInt> {
    smith_normal_form(a).diagonal()
}
