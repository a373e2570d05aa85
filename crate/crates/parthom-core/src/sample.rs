//! Seeded random generators for graphs, actions and module elements.
//!
//! Everything here is deterministic given the caller's RNG, which the
//! verification entry points seed from a `u64` so that runs are
//! reproducible across platforms.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::action::PartialAction;
use crate::algebra::{element_from_components, AlgElement};
use crate::clopen::ClopenSet;
use crate::graph::{Graph, Path};
use crate::intfun::IntFun;
use crate::prefix::PrefixMap;
use crate::resolution::{p1_from_components, support_bound, P1Element};
use crate::word::{GenId, Letter, ReducedWord};

/// The portable deterministic generator behind every seed parameter:
/// the stream is identical across platforms and runs.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn graph<R: Rng>(rng: &mut R, max_vertices: usize, max_edges: usize) -> Arc<Graph> {
    let nv = rng.gen_range(1..=max_vertices.max(1));
    let ne = rng.gen_range(0..=max_edges);
    build_graph(rng, nv, ne, false)
}

/// A graph in which every vertex receives an edge, so the boundary
/// space has no isolated finite paths.
pub fn graph_no_terminal<R: Rng>(
    rng: &mut R,
    max_vertices: usize,
    max_edges: usize,
) -> Arc<Graph> {
    let nv = rng.gen_range(1..=max_vertices.max(1));
    let ne = rng.gen_range(nv..=max_edges.max(nv));
    build_graph(rng, nv, ne, true)
}

fn build_graph<R: Rng>(rng: &mut R, nv: usize, ne: usize, cover: bool) -> Arc<Graph> {
    let vertices: Vec<String> = (1..=nv).map(|i| format!("v{i}")).collect();
    let mut edges: Vec<(String, String, String)> = Vec::new();
    for i in 1..=ne {
        // With `cover` set, the first pass hands each vertex an
        // incoming edge before the remainder are placed freely.
        let range = if cover && i <= nv { i - 1 } else { rng.gen_range(0..nv) };
        let source = rng.gen_range(0..nv);
        edges.push((format!("e{i}"), vertices[range].clone(), vertices[source].clone()));
    }
    Arc::new(Graph::new(&vertices, &edges).expect("generated names are valid"))
}

pub fn path<R: Rng>(rng: &mut R, graph: &Arc<Graph>, max_len: usize) -> Path {
    let vertices: Vec<_> = graph.vertex_ids().collect();
    let v = vertices[rng.gen_range(0..vertices.len())];
    let mut p = graph.empty_path(v);
    let target = rng.gen_range(0..=max_len);
    while p.len() < target {
        let end = graph.path_source(&p);
        let exts = graph.extensions(end);
        if exts.is_empty() {
            break;
        }
        let e = exts[rng.gen_range(0..exts.len())];
        p = graph.extend(&p, e).expect("extension edges are composable");
    }
    p
}

pub fn clopen<R: Rng>(
    rng: &mut R,
    graph: &Arc<Graph>,
    max_depth: usize,
    max_atoms: usize,
) -> ClopenSet {
    let n = rng.gen_range(0..=max_atoms);
    let atoms: Vec<Path> = (0..n).map(|_| path(rng, graph, max_depth)).collect();
    ClopenSet::normalize(graph, atoms).expect("sampled paths are valid")
}

pub fn intfun<R: Rng>(
    rng: &mut R,
    graph: &Arc<Graph>,
    max_depth: usize,
    max_terms: usize,
    coeff_bound: i64,
) -> IntFun {
    let n = rng.gen_range(0..=max_terms);
    let mut acc = IntFun::zero(graph);
    for _ in 0..n {
        let c = rng.gen_range(-coeff_bound..=coeff_bound);
        if c == 0 {
            continue;
        }
        let p = path(rng, graph, max_depth);
        let term = IntFun::single(graph, p, c).expect("sampled paths are valid");
        acc = acc.add(&term).expect("terms share the graph");
    }
    acc
}

pub fn prefix_map<R: Rng>(
    rng: &mut R,
    graph: &Arc<Graph>,
    max_rules: usize,
    max_len: usize,
) -> PrefixMap {
    let pool = graph.paths_up_to(max_len);
    let n = rng.gen_range(0..=max_rules);
    let mut rules: Vec<(Path, Path)> = Vec::new();
    for _ in 0..n {
        let src_pool: Vec<&Path> = pool
            .iter()
            .filter(|p| rules.iter().all(|(s, _)| !p.comparable(s)))
            .collect();
        if src_pool.is_empty() {
            break;
        }
        let src = src_pool[rng.gen_range(0..src_pool.len())].clone();
        let end = graph.path_source(&src);
        let dst_pool: Vec<&Path> = pool
            .iter()
            .filter(|p| graph.path_source(p) == end)
            .filter(|p| rules.iter().all(|(_, d)| !p.comparable(d)))
            .collect();
        if dst_pool.is_empty() {
            continue;
        }
        let dst = dst_pool[rng.gen_range(0..dst_pool.len())].clone();
        rules.push((src, dst));
    }
    PrefixMap::from_rules(graph, rules).expect("sampled rules are prefix-compatible")
}

pub fn partial_action<R: Rng>(
    rng: &mut R,
    graph: &Arc<Graph>,
    generators: usize,
    max_rules: usize,
    max_len: usize,
) -> Arc<PartialAction> {
    let maps: Vec<(String, PrefixMap)> = (1..=generators)
        .map(|i| (format!("g{i}"), prefix_map(rng, graph, max_rules, max_len)))
        .collect();
    let named: Vec<(&str, PrefixMap)> =
        maps.iter().map(|(n, m)| (n.as_str(), m.clone())).collect();
    Arc::new(PartialAction::new(graph, named).expect("sampled maps are valid"))
}

pub fn reduced_word<R: Rng>(rng: &mut R, generators: usize, max_len: usize) -> ReducedWord {
    let target = rng.gen_range(0..=max_len);
    let mut w = ReducedWord::empty();
    for _ in 0..target {
        if generators == 0 {
            break;
        }
        let candidates: Vec<Letter> = (0..generators as u32)
            .flat_map(|g| [Letter::pos(GenId(g)), Letter::neg(GenId(g))])
            .filter(|l| w.grows_by(*l))
            .collect();
        let l = candidates[rng.gen_range(0..candidates.len())];
        w = w.append(l);
    }
    w
}

pub fn alg_element<R: Rng>(
    rng: &mut R,
    action: &Arc<PartialAction>,
    max_components: usize,
    max_word_len: usize,
    max_depth: usize,
    coeff_bound: i64,
) -> AlgElement {
    let n = rng.gen_range(0..=max_components);
    let mut parts: Vec<(ReducedWord, IntFun)> = Vec::new();
    for _ in 0..n {
        let w = reduced_word(rng, action.generator_count(), max_word_len);
        let x_w = action.x_set(&w).expect("sampled words are valid");
        let f = intfun(rng, action.graph(), max_depth, 3, coeff_bound)
            .restrict(&x_w)
            .expect("restriction shares the graph");
        parts.push((w, f));
    }
    element_from_components(action, parts).expect("coefficients were restricted")
}

pub fn p1_element<R: Rng>(
    rng: &mut R,
    action: &Arc<PartialAction>,
    max_components: usize,
    max_word_len: usize,
    max_depth: usize,
    coeff_bound: i64,
) -> P1Element {
    let n = rng.gen_range(0..=max_components);
    let mut parts: Vec<(ReducedWord, GenId, IntFun)> = Vec::new();
    for _ in 0..n {
        if action.generator_count() == 0 {
            break;
        }
        let w = reduced_word(rng, action.generator_count(), max_word_len);
        let a = GenId(rng.gen_range(0..action.generator_count() as u32));
        let bound = support_bound(action, &w, a).expect("sampled words are valid");
        let f = intfun(rng, action.graph(), max_depth, 3, coeff_bound)
            .restrict(&bound)
            .expect("restriction shares the graph");
        parts.push((w, a, f));
    }
    p1_from_components(action, parts).expect("coefficients were restricted")
}
