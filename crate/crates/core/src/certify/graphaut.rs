//! Automorphism groups of finite edge-labeled graphs.
//!
//! Groups here are small (nerve graphs of the systems under study), so the
//! whole group is enumerated by a backtracking search pruned with color
//! refinement, and orders are cross-checked along a stabilizer chain.

use std::collections::{BTreeMap, BTreeSet};

use crate::coxeter::CoxeterSystem;
use crate::error::{Error, Result};

/// Finite graph with a label on every edge and an optional color on every
/// vertex; automorphisms must preserve both.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LabeledGraph {
    pub names: Vec<String>,
    /// keyed by (min, max) endpoint index
    pub edges: BTreeMap<(usize, usize), u32>,
    pub vcolor: Vec<u32>,
}

impl LabeledGraph {
    pub fn new(names: Vec<String>, edges: &[(usize, usize, u32)]) -> Result<Self> {
        let n = names.len();
        let mut map = BTreeMap::new();
        for &(a, b, m) in edges {
            if a == b || a >= n || b >= n {
                return Err(Error::InvalidComplex(format!("bad edge ({a}, {b})")));
            }
            let key = (a.min(b), a.max(b));
            if let Some(&old) = map.get(&key) {
                if old != m {
                    return Err(Error::InvalidComplex(format!(
                        "edge ({a}, {b}) listed with labels {old} and {m}"
                    )));
                }
            }
            map.insert(key, m);
        }
        Ok(LabeledGraph { names, edges: map, vcolor: vec![0; n] })
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn label(&self, a: usize, b: usize) -> Option<u32> {
        self.edges.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    pub fn neighbors(&self, v: usize) -> Vec<usize> {
        (0..self.n()).filter(|&u| u != v && self.label(v, u).is_some()).collect()
    }

    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        if perm.len() != self.n() {
            return false;
        }
        let mut seen = vec![false; self.n()];
        for &x in perm {
            if x >= self.n() || seen[x] {
                return false;
            }
            seen[x] = true;
        }
        if (0..self.n()).any(|v| self.vcolor[v] != self.vcolor[perm[v]]) {
            return false;
        }
        // label-preserving in both directions: perm is a bijection, so
        // checking every edge and every non-edge once suffices
        for a in 0..self.n() {
            for b in a + 1..self.n() {
                if self.label(a, b) != self.label(perm[a], perm[b]) {
                    return false;
                }
            }
        }
        true
    }
}

/// The nerve of a system as a labeled graph: vertices are generators, edges
/// the spherical pairs with their Coxeter labels. Errors if the nerve has a
/// 2-simplex (some spherical triple), since the reports that consume this
/// require a 1-dimensional nerve.
pub fn nerve_graph(sys: &CoxeterSystem) -> Result<LabeledGraph> {
    if let Some(bad) = sys.spherical.iter().find(|&&m| m.count_ones() >= 3) {
        return Err(Error::InvalidComplex(format!(
            "nerve is not a graph: {{{}}} spans a simplex",
            sys.mask_names(*bad)
        )));
    }
    let mut edges = vec![];
    for &m in &sys.spherical {
        if m.count_ones() == 2 {
            let gens: Vec<usize> = crate::coxeter::mask_iter(m).map(|g| g as usize).collect();
            let label = sys.mat.label(gens[0] as u8, gens[1] as u8).finite().unwrap();
            edges.push((gens[0], gens[1], label));
        }
    }
    LabeledGraph::new(sys.mat.names.clone(), &edges)
}

/// Stable colors under 1-dimensional refinement with edge labels in the
/// signature; the initial coloring must already separate vertex colors.
fn refine(g: &LabeledGraph, init: Vec<u64>) -> Vec<u64> {
    let mut c = init;
    loop {
        let sig = |c: &[u64], v: usize| {
            let mut ns: Vec<(u32, u64)> =
                g.neighbors(v).into_iter().map(|u| (g.label(v, u).unwrap(), c[u])).collect();
            ns.sort_unstable();
            (c[v], ns)
        };
        let mut table: BTreeMap<(u64, Vec<(u32, u64)>), u64> = BTreeMap::new();
        for v in 0..g.n() {
            table.entry(sig(&c, v)).or_insert(0);
        }
        for (i, (_, id)) in table.iter_mut().enumerate() {
            *id = i as u64;
        }
        let next: Vec<u64> = (0..g.n()).map(|v| table[&sig(&c, v)]).collect();
        let classes = |c: &[u64]| c.iter().collect::<BTreeSet<_>>().len();
        if classes(&next) == classes(&c) {
            return next;
        }
        c = next;
    }
}

/// Every label-preserving automorphism, enumerated by backtracking. The cap
/// bounds the number of elements (not the search space).
pub fn automorphisms(g: &LabeledGraph, cap: usize) -> Result<Vec<Vec<usize>>> {
    let n = g.n();
    if n == 0 {
        return Ok(vec![vec![]]);
    }
    let init: Vec<u64> = {
        let mut table: BTreeMap<(u32, usize), u64> = BTreeMap::new();
        for v in 0..n {
            table.entry((g.vcolor[v], g.degree(v))).or_insert(0);
        }
        for (i, (_, id)) in table.iter_mut().enumerate() {
            *id = i as u64;
        }
        (0..n).map(|v| table[&(g.vcolor[v], g.degree(v))]).collect()
    };
    let colors = refine(g, init);
    let mut class_size: BTreeMap<u64, usize> = BTreeMap::new();
    for &c in &colors {
        *class_size.entry(c).or_insert(0) += 1;
    }
    // rarest classes first keeps the search tree thin
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (class_size[&colors[v]], colors[v], v));
    let mut out: Vec<Vec<usize>> = vec![];
    let mut assign: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    search(g, &order, &colors, 0, &mut assign, &mut used, &mut out, cap)?;
    out.sort();
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
fn search(
    g: &LabeledGraph,
    order: &[usize],
    colors: &[u64],
    pos: usize,
    assign: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
    out: &mut Vec<Vec<usize>>,
    cap: usize,
) -> Result<()> {
    if pos == order.len() {
        let perm: Vec<usize> = assign.iter().map(|x| x.unwrap()).collect();
        debug_assert!(g.is_automorphism(&perm));
        if out.len() >= cap {
            return Err(Error::ResourceCap {
                context: "automorphism enumeration".into(),
                limit: cap,
                reached: out.len() + 1,
            });
        }
        out.push(perm);
        return Ok(());
    }
    let v = order[pos];
    for w in 0..g.n() {
        if used[w] || colors[w] != colors[v] {
            continue;
        }
        let consistent = order[..pos]
            .iter()
            .all(|&u| g.label(u, v) == g.label(assign[u].unwrap(), w));
        if !consistent {
            continue;
        }
        assign[v] = Some(w);
        used[w] = true;
        search(g, order, colors, pos + 1, assign, used, out, cap)?;
        assign[v] = None;
        used[w] = false;
    }
    Ok(())
}

/// Full automorphism group of a labeled graph, with orbit and stabilizer
/// bookkeeping.
#[derive(Clone, Debug)]
pub struct LabeledGraphAutGroup {
    pub graph: LabeledGraph,
    /// all elements, sorted; identity first
    pub elements: Vec<Vec<usize>>,
    /// transversal generators read off a stabilizer chain
    pub generators: Vec<Vec<usize>>,
    pub order: u64,
    /// |G| recomputed as the product of orbit sizes along the chain
    pub chain_order: u64,
    pub vertex_orbits: Vec<Vec<usize>>,
    pub edge_orbits: Vec<Vec<(usize, usize)>>,
    pub vertex_transitive: bool,
    pub edge_transitive: bool,
}

impl LabeledGraphAutGroup {
    pub fn vertex_stabilizer(&self, t: usize) -> Vec<&Vec<usize>> {
        self.elements.iter().filter(|p| p[t] == t).collect()
    }

    pub fn stabilizer_order(&self, t: usize) -> u64 {
        self.vertex_stabilizer(t).len() as u64
    }

    /// Order of the stabilizer of the edge {t, u} inside the stabilizer of t.
    pub fn edge_stabilizer_order(&self, t: usize, u: usize) -> u64 {
        self.elements.iter().filter(|p| p[t] == t && p[u] == u).count() as u64
    }

    /// Does the stabilizer of t act transitively on the edges at t?
    pub fn edge_transitive_at(&self, t: usize) -> bool {
        let nbrs = self.graph.neighbors(t);
        if nbrs.is_empty() {
            return true;
        }
        let orbit: BTreeSet<usize> = self
            .elements
            .iter()
            .filter(|p| p[t] == t)
            .map(|p| p[nbrs[0]])
            .collect();
        orbit.len() == nbrs.len()
    }
}

fn orbits<T: Ord + Clone>(items: &[T], image: impl Fn(&Vec<usize>, &T) -> T, elements: &[Vec<usize>]) -> Vec<Vec<T>> {
    let mut seen: BTreeSet<T> = BTreeSet::new();
    let mut out = vec![];
    for x in items {
        if seen.contains(x) {
            continue;
        }
        let orbit: BTreeSet<T> = elements.iter().map(|p| image(p, x)).collect();
        for y in &orbit {
            seen.insert(y.clone());
        }
        out.push(orbit.into_iter().collect());
    }
    out
}

/// Product of orbit sizes along a stabilizer chain, with one transversal
/// element per non-base orbit point pushed into `gens`.
fn chain(elements: Vec<Vec<usize>>, n: usize, gens: &mut Vec<Vec<usize>>) -> u64 {
    let base = (0..n).find(|&v| elements.iter().any(|p| p[v] != v));
    let Some(v) = base else {
        return 1; // only the identity moves nothing
    };
    let mut orbit: BTreeMap<usize, &Vec<usize>> = BTreeMap::new();
    for p in &elements {
        orbit.entry(p[v]).or_insert(p);
    }
    for (&w, &p) in &orbit {
        if w != v {
            gens.push(p.clone());
        }
    }
    let orbit_size = orbit.len() as u64;
    let stab: Vec<Vec<usize>> = elements.into_iter().filter(|p| p[v] == v).collect();
    orbit_size * chain(stab, n, gens)
}

pub fn graph_aut(g: &LabeledGraph) -> Result<LabeledGraphAutGroup> {
    let elements = automorphisms(g, 1_000_000)?;
    let order = elements.len() as u64;
    let mut generators = vec![];
    let chain_order = chain(elements.clone(), g.n(), &mut generators);
    if chain_order != order {
        return Err(Error::Other(format!(
            "stabilizer chain order {chain_order} disagrees with element count {order}"
        )));
    }
    if generators.is_empty() {
        generators.push((0..g.n()).collect());
    }
    let verts: Vec<usize> = (0..g.n()).collect();
    let vertex_orbits = orbits(&verts, |p, &v| p[v], &elements);
    let edge_list: Vec<(usize, usize)> = g.edges.keys().copied().collect();
    let edge_orbits = orbits(
        &edge_list,
        |p, &(a, b)| (p[a].min(p[b]), p[a].max(p[b])),
        &elements,
    );
    for orb in vertex_orbits.iter().map(|o| o.len() as u64) {
        if order % orb != 0 {
            return Err(Error::Other(format!("orbit size {orb} does not divide |G| = {order}")));
        }
    }
    let vertex_transitive = vertex_orbits.len() <= 1;
    let edge_transitive = edge_orbits.len() <= 1;
    Ok(LabeledGraphAutGroup {
        graph: g.clone(),
        elements,
        generators,
        order,
        chain_order,
        vertex_orbits,
        edge_orbits,
        vertex_transitive,
        edge_transitive,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;

    fn complete(n: usize, m: u32) -> LabeledGraph {
        let names = (0..n).map(|i| format!("s{i}")).collect();
        let edges: Vec<(usize, usize, u32)> =
            (0..n).tuple_combinations().map(|(a, b)| (a, b, m)).collect();
        LabeledGraph::new(names, &edges).unwrap()
    }

    fn cycle(k: usize, m: u32) -> LabeledGraph {
        let names = (0..k).map(|i| format!("s{i}")).collect();
        let edges: Vec<(usize, usize, u32)> = (0..k).map(|i| (i, (i + 1) % k, m)).collect();
        LabeledGraph::new(names, &edges).unwrap()
    }

    fn brute_force_order(g: &LabeledGraph) -> u64 {
        assert!(g.n() <= 8);
        (0..g.n())
            .permutations(g.n())
            .filter(|p| g.is_automorphism(p))
            .count() as u64
    }

    #[test]
    fn k4_group() {
        let a = graph_aut(&complete(4, 3)).unwrap();
        assert_eq!(a.order, 24);
        assert_eq!(a.chain_order, 24);
        assert_eq!(a.stabilizer_order(0), 6);
        assert_eq!(a.edge_stabilizer_order(0, 1), 2);
        assert!(a.edge_transitive_at(0));
        assert!(a.vertex_transitive && a.edge_transitive);
        assert_eq!(brute_force_order(&complete(4, 3)), 24);
    }

    #[test]
    fn five_cycle_is_dihedral() {
        let a = graph_aut(&cycle(5, 2)).unwrap();
        assert_eq!(a.order, 10);
        assert_eq!(brute_force_order(&cycle(5, 2)), 10);
        assert!(a.vertex_transitive && a.edge_transitive);
        assert_eq!(a.stabilizer_order(0), 2);
    }

    #[test]
    fn distinct_labels_rigid() {
        let g = LabeledGraph::new(
            vec!["a".into(), "b".into(), "c".into()],
            &[(0, 1, 3), (1, 2, 4)],
        )
        .unwrap();
        let a = graph_aut(&g).unwrap();
        assert_eq!(a.order, 1);
        assert_eq!(brute_force_order(&g), 1);
        // same shape with equal labels has the end swap
        let h = LabeledGraph::new(
            vec!["a".into(), "b".into(), "c".into()],
            &[(0, 1, 3), (1, 2, 3)],
        )
        .unwrap();
        assert_eq!(graph_aut(&h).unwrap().order, 2);
    }

    #[test]
    fn petersen_has_order_120() {
        let (names, edges) = crate::fixtures::petersen_graph();
        let labeled: Vec<(usize, usize, u32)> = edges.iter().map(|&(a, b)| (a, b, 3)).collect();
        let g = LabeledGraph::new(names, &labeled).unwrap();
        let a = graph_aut(&g).unwrap();
        assert_eq!(a.order, 120);
        assert!(a.vertex_transitive && a.edge_transitive);
        // 3-regular with vertex-transitive action: |G_t| = 120/10 = 12
        assert_eq!(a.stabilizer_order(0), 12);
        assert!(a.edge_transitive_at(0));
    }

    #[test]
    fn nerve_graph_of_pentagon_and_rejection() {
        let sys = crate::fixtures::kgon_system(5).unwrap();
        let g = nerve_graph(&sys).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edges.len(), 5);
        assert_eq!(graph_aut(&g).unwrap().order, 10);
        // (Z/2)^3 has a spherical triple: not a graph
        let z = crate::fixtures::z2_cubed_system();
        assert!(matches!(nerve_graph(&z), Err(Error::InvalidComplex(_))));
    }

    #[test]
    fn brute_force_oracle_on_small_zoo() {
        let zoo: Vec<LabeledGraph> = vec![
            complete(5, 3),
            cycle(4, 2),
            cycle(6, 2),
            LabeledGraph::new(
                (0..5).map(|i| i.to_string()).collect(),
                &[(0, 1, 2), (1, 2, 2), (2, 3, 2), (3, 4, 2)],
            )
            .unwrap(),
            LabeledGraph::new((0..4).map(|i| i.to_string()).collect(), &[(0, 1, 5)]).unwrap(),
        ];
        for g in &zoo {
            assert_eq!(graph_aut(g).unwrap().order, brute_force_order(g));
        }
    }
}
