use std::collections::{BTreeMap, BTreeSet};

use crate::complexes::cw::RegularCWComplex;
use crate::complexes::simplicial::SimplicialComplex;
use crate::error::Result;

fn adjacency(k: &SimplicialComplex) -> Vec<BTreeSet<usize>> {
    let mut adj = vec![BTreeSet::new(); k.labels.len()];
    for f in k.face_set() {
        if f.len() == 2 {
            adj[f[0]].insert(f[1]);
            adj[f[1]].insert(f[0]);
        }
    }
    adj
}

/// Joint 1-dimensional color refinement; returns stable colors for both
/// vertex sets with ids comparable across the two graphs.
fn refine(
    adj_a: &[BTreeSet<usize>],
    adj_b: &[BTreeSet<usize>],
    init_a: Vec<u64>,
    init_b: Vec<u64>,
) -> (Vec<u64>, Vec<u64>) {
    let (mut ca, mut cb) = (init_a, init_b);
    loop {
        let sig = |adj: &[BTreeSet<usize>], c: &[u64], v: usize| {
            let mut ns: Vec<u64> = adj[v].iter().map(|&w| c[w]).collect();
            ns.sort_unstable();
            (c[v], ns)
        };
        let mut table: BTreeMap<(u64, Vec<u64>), u64> = BTreeMap::new();
        for v in 0..ca.len() {
            table.entry(sig(adj_a, &ca, v)).or_insert(0);
        }
        for v in 0..cb.len() {
            table.entry(sig(adj_b, &cb, v)).or_insert(0);
        }
        for (i, (_, id)) in table.iter_mut().enumerate() {
            *id = i as u64;
        }
        let na: Vec<u64> = (0..ca.len()).map(|v| table[&sig(adj_a, &ca, v)]).collect();
        let nb: Vec<u64> = (0..cb.len()).map(|v| table[&sig(adj_b, &cb, v)]).collect();
        let stable = {
            let classes = |c: &[u64]| c.iter().collect::<BTreeSet<_>>().len();
            classes(&na) == classes(&ca) && classes(&nb) == classes(&cb)
        };
        ca = na;
        cb = nb;
        if stable {
            return (ca, cb);
        }
    }
}

/// Search for a grade-preserving simplicial isomorphism; returns the vertex
/// bijection (on compacted indices) if one exists.
///
/// Color refinement on (grade, degree) prunes the backtracking; a candidate
/// bijection is accepted only after both maximal-face sets are verified to
/// map onto faces of the other complex.
pub fn graded_simplicial_iso(
    a: &SimplicialComplex,
    b: &SimplicialComplex,
) -> Option<Vec<usize>> {
    let a = a.compact();
    let b = b.compact();
    let n = a.labels.len();
    if n != b.labels.len() || a.f_vector() != b.f_vector() {
        return None;
    }
    let adj_a = adjacency(&a);
    let adj_b = adjacency(&b);
    // initial colors: (grade, degree), pooled so ids are comparable
    let mut table: BTreeMap<(u32, usize), u64> = BTreeMap::new();
    for v in 0..n {
        table.entry((a.grade[v], adj_a[v].len())).or_insert(0);
        table.entry((b.grade[v], adj_b[v].len())).or_insert(0);
    }
    for (i, (_, id)) in table.iter_mut().enumerate() {
        *id = i as u64;
    }
    let init_a = (0..n).map(|v| table[&(a.grade[v], adj_a[v].len())]).collect();
    let init_b = (0..n).map(|v| table[&(b.grade[v], adj_b[v].len())]).collect();
    let (ca, cb) = refine(&adj_a, &adj_b, init_a, init_b);
    let count = |c: &[u64]| {
        let mut m: BTreeMap<u64, usize> = BTreeMap::new();
        for &x in c {
            *m.entry(x).or_insert(0) += 1;
        }
        m
    };
    if count(&ca) != count(&cb) {
        return None;
    }
    // map vertices in order of ascending color-class size (rarest first)
    let sizes = count(&ca);
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (sizes[&ca[v]], ca[v], v));
    let mut assign: Vec<Option<usize>> = vec![None; n];
    let mut used = vec![false; n];
    if !backtrack(0, &order, &ca, &cb, &adj_a, &adj_b, &mut assign, &mut used) {
        return None;
    }
    let sigma: Vec<usize> = assign.into_iter().map(Option::unwrap).collect();
    // verify the face sets correspond under σ (and σ⁻¹)
    let maps_into = |from: &SimplicialComplex, to: &SimplicialComplex, f: &dyn Fn(usize) -> usize| {
        from.maximal().iter().all(|face| {
            let img: Vec<usize> = face.iter().map(|&v| f(v)).collect();
            to.has_face(&img)
        })
    };
    let mut inv = vec![0usize; n];
    for (v, &w) in sigma.iter().enumerate() {
        inv[w] = v;
    }
    if maps_into(&a, &b, &|v| sigma[v]) && maps_into(&b, &a, &|w| inv[w]) {
        Some(sigma)
    } else {
        None
    }
}

#[allow(clippy::too_many_arguments)]
fn backtrack(
    pos: usize,
    order: &[usize],
    ca: &[u64],
    cb: &[u64],
    adj_a: &[BTreeSet<usize>],
    adj_b: &[BTreeSet<usize>],
    assign: &mut Vec<Option<usize>>,
    used: &mut Vec<bool>,
) -> bool {
    if pos == order.len() {
        return true;
    }
    let v = order[pos];
    for w in 0..cb.len() {
        if used[w] || cb[w] != ca[v] {
            continue;
        }
        let consistent = order[..pos].iter().all(|&u| {
            let m = assign[u].unwrap();
            adj_a[u].contains(&v) == adj_b[m].contains(&w)
        });
        if !consistent {
            continue;
        }
        assign[v] = Some(w);
        used[w] = true;
        if backtrack(pos + 1, order, ca, cb, adj_a, adj_b, assign, used) {
            return true;
        }
        assign[v] = None;
        used[w] = false;
    }
    false
}

/// Check that the link of a barycenter v = σ in the subdivision of X is the
/// join of the subdivided boundary of σ with the subdivided "link" of σ
/// (the order complex of the cells strictly above σ).
///
/// The left side is computed generically from the simplicial structure of bX,
/// the right side from the face poset, and the two are compared by graded
/// isomorphism search.
pub fn link_join_decomposition_check(x: &RegularCWComplex, cell: usize) -> Result<bool> {
    let bx = x.barycentric_subdivision();
    let p = x.face_poset();
    link_join_decomposition_check_in(&bx, &p, cell)
}

/// Same check against a pre-built subdivision and face poset, for callers
/// that run it over many cells of one complex.
pub fn link_join_decomposition_check_in(
    bx: &crate::complexes::simplicial::SimplicialComplex,
    p: &crate::complexes::posetview::Poset,
    cell: usize,
) -> Result<bool> {
    let lhs = bx.link(&[cell])?;
    let below = p.strictly_below_poset(cell).order_complex();
    let above = p.strictly_above_poset(cell).order_complex();
    let rhs = below.join(&above);
    Ok(graded_simplicial_iso(&lhs, &rhs).is_some())
}

/// Removing one barycenter must leave the lower link factor of every vertex
/// of lower-or-equal dimension untouched, and the upper factor of every
/// vertex of higher-or-equal dimension untouched. Verified by recomputing
/// both factors from the pruned poset.
pub fn affecting_links_stability(x: &RegularCWComplex, removed: usize) -> Result<bool> {
    let p = x.face_poset();
    let d = p.grade[removed];
    let keep: Vec<usize> = (0..p.len()).filter(|&v| v != removed).collect();
    let (q, back) = p.induced(&keep);
    for (nv, &ov) in back.iter().enumerate() {
        let k = q.grade[nv];
        if k <= d {
            let before = p.strictly_below_poset(ov).order_complex();
            let after = q.strictly_below_poset(nv).order_complex();
            if !before.eq_as_labeled(&after) {
                return Ok(false);
            }
        }
        if k >= d {
            let before = p.strictly_above_poset(ov).order_complex();
            let after = q.strictly_above_poset(nv).order_complex();
            if !before.eq_as_labeled(&after) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
