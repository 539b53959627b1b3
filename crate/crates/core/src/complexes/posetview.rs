use std::collections::BTreeSet;

use crate::complexes::simplicial::SimplicialComplex;
use crate::error::{Error, Result};

/// Finite strict partial order with labeled, graded elements.
///
/// The relation is stored as a dense bit matrix of the full strict order
/// (transitive closure of whatever generating pairs were supplied), so
/// `lt` is O(1) and induced subposets are cheap. Grades are display/tag
/// data (cell dimensions for face posets); the order does not consult them.
#[derive(Clone, Debug)]
pub struct Poset {
    pub labels: Vec<String>,
    pub grade: Vec<u32>,
    stride: usize,
    lt: Vec<u64>,
}

impl Poset {
    /// Build from generating pairs `a < b` (typically covering pairs).
    /// Fails on cycles.
    pub fn from_pairs(labels: Vec<String>, grade: Vec<u32>, pairs: &[(usize, usize)]) -> Result<Self> {
        let n = labels.len();
        if grade.len() != n {
            return Err(Error::InvalidComplex("grade/label length mismatch".into()));
        }
        let mut succ: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); n];
        for &(a, b) in pairs {
            if a >= n || b >= n {
                return Err(Error::InvalidComplex(format!(
                    "order pair ({a},{b}) out of range for {n} elements"
                )));
            }
            if a == b {
                return Err(Error::InvalidComplex(format!("reflexive pair at {a}")));
            }
            succ[a].insert(b);
        }
        // Kahn topological order over the generating pairs
        let mut indeg = vec![0usize; n];
        for s in &succ {
            for &b in s {
                indeg[b] += 1;
            }
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut topo = Vec::with_capacity(n);
        while let Some(v) = queue.pop() {
            topo.push(v);
            for &b in &succ[v] {
                indeg[b] -= 1;
                if indeg[b] == 0 {
                    queue.push(b);
                }
            }
        }
        if topo.len() < n {
            return Err(Error::InvalidComplex("cycle in order relation".into()));
        }
        let stride = n.div_ceil(64);
        let mut lt = vec![0u64; n * stride];
        for &u in topo.iter().rev() {
            for &w in succ[u].clone().iter() {
                lt[u * stride + w / 64] |= 1 << (w % 64);
                // row u |= row w
                for k in 0..stride {
                    let x = lt[w * stride + k];
                    lt[u * stride + k] |= x;
                }
            }
        }
        Ok(Poset { labels, grade, stride, lt })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.lt[a * self.stride + b / 64] >> (b % 64) & 1 == 1
    }

    /// Elements strictly above `v`, ascending.
    pub fn above(&self, v: usize) -> Vec<usize> {
        (0..self.len()).filter(|&w| self.lt(v, w)).collect()
    }

    /// Elements strictly below `v`, ascending.
    pub fn below(&self, v: usize) -> Vec<usize> {
        (0..self.len()).filter(|&u| self.lt(u, v)).collect()
    }

    /// Induced subposet on `keep` (deduplicated, ascending). Also returns the
    /// map from new indices back to old ones (which is just the sorted list).
    pub fn induced(&self, keep: &[usize]) -> (Poset, Vec<usize>) {
        let keep: Vec<usize> = keep.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let labels = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let grade = keep.iter().map(|&i| self.grade[i]).collect();
        let n = keep.len();
        let stride = n.div_ceil(64);
        let mut lt = vec![0u64; n * stride];
        for (i, &oi) in keep.iter().enumerate() {
            for (j, &oj) in keep.iter().enumerate() {
                if self.lt(oi, oj) {
                    lt[i * stride + j / 64] |= 1 << (j % 64);
                }
            }
        }
        (Poset { labels, grade, stride, lt }, keep)
    }

    pub fn strictly_below_poset(&self, v: usize) -> Poset {
        self.induced(&self.below(v)).0
    }

    pub fn strictly_above_poset(&self, v: usize) -> Poset {
        self.induced(&self.above(v)).0
    }

    /// Covering pairs (a ⋖ b): a < b with nothing strictly between.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let n = self.len();
        let mut out = vec![];
        for a in 0..n {
            'next: for b in self.above(a) {
                for k in 0..self.stride {
                    // elements above a and below b, computed via the transpose bit
                    let mut between = self.lt[a * self.stride + k];
                    if between == 0 {
                        continue;
                    }
                    for off in 0..64 {
                        let c = k * 64 + off;
                        if c < n && between & 1 == 1 && self.lt(c, b) {
                            continue 'next;
                        }
                        between >>= 1;
                        if between == 0 {
                            break;
                        }
                    }
                }
                out.push((a, b));
            }
        }
        out
    }

    /// Number of elements in a longest chain.
    pub fn height(&self) -> usize {
        let n = self.len();
        // below-counts give a linear extension
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| self.below(v).len());
        let mut h = vec![1usize; n];
        let mut best = 0;
        for &v in &order {
            for u in self.below(v) {
                h[v] = h[v].max(h[u] + 1);
            }
            best = best.max(h[v]);
        }
        best
    }

    /// Total number of nonempty chains (size estimate for order complexes).
    pub fn chain_count(&self) -> usize {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&v| self.below(v).len());
        let mut ending = vec![1usize; n];
        let mut total = 0usize;
        for &v in &order {
            for u in self.below(v) {
                ending[v] = ending[v].saturating_add(ending[u]);
            }
            total = total.saturating_add(ending[v]);
        }
        total
    }

    /// Order complex: vertices are the poset elements (labels and grades kept),
    /// maximal simplices are the maximal chains.
    pub fn order_complex(&self) -> SimplicialComplex {
        let n = self.len();
        if n == 0 {
            return SimplicialComplex::empty();
        }
        let covers = self.covers();
        let mut succ: Vec<Vec<usize>> = vec![vec![]; n];
        for &(a, b) in &covers {
            succ[a].push(b);
        }
        let minimal: Vec<usize> = (0..n).filter(|&v| self.below(v).is_empty()).collect();
        let mut chains: Vec<Vec<usize>> = vec![];
        let mut path: Vec<usize> = vec![];
        for &m in &minimal {
            dfs_chains(m, &succ, &mut path, &mut chains);
        }
        SimplicialComplex::from_maximal_graded(self.labels.clone(), self.grade.clone(), chains)
            .expect("chains of a poset form a simplicial complex")
    }
}

fn dfs_chains(v: usize, succ: &[Vec<usize>], path: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
    path.push(v);
    if succ[v].is_empty() {
        out.push(path.clone());
    } else {
        for &w in &succ[v] {
            dfs_chains(w, succ, path, out);
        }
    }
    path.pop();
}
