//! Star transitivity arithmetic at a generator of a 1-dimensional nerve.
//!
//! The vanishing arithmetic needs, for a vertex t of the nerve whose star is
//! uniformly labeled m: a group G_t of star automorphisms fixing t that is
//! transitive on the deg(t) edges at t, the stabilizer E_T of one edge, and
//! the exact integer identity lcm(2|G_t|, 2m|E_T|) = 2|G_t|·m/deg(t) when
//! deg(t) divides m. The acting group is the alternating group on the
//! pendant neighbors (even permutations preserve every uniform star); the
//! full automorphism group of the nerve is reported alongside for
//! cross-reference, but the identity is evaluated on the alternating
//! restriction.

use itertools::Itertools;
use num_integer::Integer;

use crate::certify::graphaut::{graph_aut, nerve_graph, LabeledGraph};
use crate::coxeter::{CoxeterSystem, Gen};
use crate::error::{Error, Result};

/// Even permutations of 0..d that preserve the given labels positionwise.
/// Enumerated outright; d is a vertex degree of a nerve, so small.
pub fn alternating_label_preserving(labels: &[u32]) -> Result<Vec<Vec<usize>>> {
    let d = labels.len();
    if d > 8 {
        return Err(Error::ResourceCap {
            context: "alternating group enumeration".into(),
            limit: 8,
            reached: d,
        });
    }
    if d == 0 {
        return Ok(vec![vec![]]);
    }
    let even = |p: &[usize]| {
        let mut inv = 0usize;
        for i in 0..p.len() {
            for j in i + 1..p.len() {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        inv % 2 == 0
    };
    Ok((0..d)
        .permutations(d)
        .filter(|p| even(p) && (0..d).all(|i| labels[p[i]] == labels[i]))
        .collect())
}

#[derive(Clone, Debug)]
pub struct StarReport {
    pub t: Gen,
    pub t_name: String,
    pub neighbors: Vec<Gen>,
    pub labels: Vec<u32>,
    pub degree: u64,
    pub uniform_label: Option<u32>,
    /// |G_t| for the alternating restriction acting on the star
    pub group_order: u64,
    /// |E_T|: elements of that group fixing the first edge at t
    pub edge_stabilizer_order: u64,
    pub edge_transitive: bool,
    /// |G_t| = deg(t) · |E_T| (orbit–stabilizer, full-orbit form)
    pub ratio_ok: bool,
    /// deg(t) | m, when the star is uniform
    pub divides: Option<bool>,
    pub lcm_lhs: Option<u64>,
    pub lcm_rhs: Option<u64>,
    pub lcm_ok: Option<bool>,
    /// whole-nerve automorphism data for cross-reference
    pub full_aut_order: u64,
    pub full_stabilizer_order: u64,
    pub full_edge_transitive_at_t: bool,
}

impl StarReport {
    /// All hypotheses of the star-vanishing arithmetic hold at this vertex.
    pub fn lemma_applies(&self) -> bool {
        self.uniform_label.is_some()
            && self.edge_transitive
            && self.ratio_ok
            && self.divides == Some(true)
            && self.lcm_ok == Some(true)
    }
}

pub fn star_transitivity_report(sys: &CoxeterSystem, t: Gen) -> Result<StarReport> {
    if (t as usize) >= sys.n() {
        return Err(Error::UnknownGenerator(format!("generator index {t}")));
    }
    let nerve = nerve_graph(sys)?;
    star_report_on_graph(&nerve, t as usize)
}

/// Same report computed directly on a labeled graph (the nerve).
pub fn star_report_on_graph(nerve: &LabeledGraph, t: usize) -> Result<StarReport> {
    let neighbors: Vec<usize> = nerve.neighbors(t);
    let labels: Vec<u32> = neighbors.iter().map(|&u| nerve.label(t, u).unwrap()).collect();
    let degree = neighbors.len() as u64;
    let uniform_label = match labels.iter().min() {
        Some(&m) if labels.iter().all(|&x| x == m) => Some(m),
        _ => None,
    };
    let group = alternating_label_preserving(&labels)?;
    if cfg!(debug_assertions) {
        // each element, extended by t ↦ t, is an automorphism of the star graph
        let mut star_names = vec![nerve.names[t].clone()];
        star_names.extend(neighbors.iter().map(|&u| nerve.names[u].clone()));
        let star_edges: Vec<(usize, usize, u32)> =
            (0..labels.len()).map(|i| (0, i + 1, labels[i])).collect();
        let star = LabeledGraph::new(star_names, &star_edges).unwrap();
        for p in &group {
            let mut ext = vec![0usize];
            ext.extend(p.iter().map(|&i| i + 1));
            debug_assert!(star.is_automorphism(&ext));
        }
    }
    let group_order = group.len() as u64;
    let (edge_stabilizer_order, edge_transitive) = if neighbors.is_empty() {
        (group_order, true)
    } else {
        let stab = group.iter().filter(|p| p[0] == 0).count() as u64;
        let orbit: std::collections::BTreeSet<usize> = group.iter().map(|p| p[0]).collect();
        (stab, orbit.len() as u64 == degree)
    };
    let ratio_ok = degree > 0 && group_order == degree * edge_stabilizer_order;
    let divides = uniform_label.map(|m| degree > 0 && (m as u64) % degree == 0);
    let (lcm_lhs, lcm_rhs, lcm_ok) = match (uniform_label, divides) {
        (Some(m), Some(true)) if edge_transitive && degree > 0 => {
            let lhs = (2 * group_order).lcm(&(2 * m as u64 * edge_stabilizer_order));
            let rhs = 2 * group_order * (m as u64 / degree);
            (Some(lhs), Some(rhs), Some(lhs == rhs))
        }
        _ => (None, None, None),
    };
    let full = graph_aut(nerve)?;
    Ok(StarReport {
        t: t as Gen,
        t_name: nerve.names[t].clone(),
        neighbors: neighbors.iter().map(|&u| u as Gen).collect(),
        labels,
        degree,
        uniform_label,
        group_order,
        edge_stabilizer_order,
        edge_transitive,
        ratio_ok,
        divides,
        lcm_lhs,
        lcm_rhs,
        lcm_ok,
        full_aut_order: full.order,
        full_stabilizer_order: full.stabilizer_order(t),
        full_edge_transitive_at_t: full.edge_transitive_at(t),
    })
}
