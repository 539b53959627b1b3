use std::collections::{BTreeMap, BTreeSet};

use itertools::Itertools;

use crate::complexes::posetview::Poset;
use crate::error::{Error, Result};

/// Finite abstract simplicial complex with labeled, graded vertices.
///
/// Vertices live in the fixed universe `0..labels.len()`; a vertex belongs to
/// the complex iff it appears in some maximal face (so a full subcomplex can
/// keep its parent's universe). Faces are sorted vertex lists; `maximal` is an
/// antichain sorted by (size, lex). Grades carry cell dimensions through
/// barycentric subdivisions; plain complexes leave them at zero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialComplex {
    pub labels: Vec<String>,
    pub grade: Vec<u32>,
    maximal: Vec<Vec<usize>>,
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut it = b.iter();
    'outer: for x in a {
        for y in it.by_ref() {
            if y == x {
                continue 'outer;
            }
            if y > x {
                return false;
            }
        }
        return false;
    }
    true
}

impl SimplicialComplex {
    pub fn empty() -> Self {
        SimplicialComplex { labels: vec![], grade: vec![], maximal: vec![] }
    }

    pub fn from_maximal(labels: Vec<String>, faces: Vec<Vec<usize>>) -> Result<Self> {
        let grade = vec![0; labels.len()];
        Self::from_maximal_graded(labels, grade, faces)
    }

    pub fn from_maximal_graded(
        labels: Vec<String>,
        grade: Vec<u32>,
        faces: Vec<Vec<usize>>,
    ) -> Result<Self> {
        if grade.len() != labels.len() {
            return Err(Error::InvalidComplex("grade/label length mismatch".into()));
        }
        let mut norm: Vec<Vec<usize>> = Vec::with_capacity(faces.len());
        for mut f in faces {
            f.sort_unstable();
            if f.is_empty() {
                continue;
            }
            if f.windows(2).any(|w| w[0] == w[1]) {
                return Err(Error::InvalidComplex(format!("repeated vertex in face {f:?}")));
            }
            if *f.last().unwrap() >= labels.len() {
                return Err(Error::InvalidComplex(format!(
                    "vertex {} out of range ({} labels)",
                    f.last().unwrap(),
                    labels.len()
                )));
            }
            norm.push(f);
        }
        norm.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        norm.dedup();
        // keep the antichain of maximal faces; only strictly longer faces can
        // contain a given one because norm is deduplicated
        let mut by_len_start = BTreeMap::new();
        for (i, f) in norm.iter().enumerate() {
            by_len_start.entry(f.len()).or_insert(i);
        }
        let mut keep: Vec<Vec<usize>> = vec![];
        for f in &norm {
            let mut contained = false;
            if let Some((_, &start)) = by_len_start.range(f.len() + 1..).next() {
                contained = norm[start..].iter().any(|g| is_subset(f, g));
            }
            if !contained {
                keep.push(f.clone());
            }
        }
        Ok(SimplicialComplex { labels, grade, maximal: keep })
    }

    pub fn maximal(&self) -> &[Vec<usize>] {
        &self.maximal
    }

    pub fn is_void(&self) -> bool {
        self.maximal.is_empty()
    }

    /// Vertices actually present, ascending.
    pub fn vertex_set(&self) -> Vec<usize> {
        let mut s = BTreeSet::new();
        for f in &self.maximal {
            s.extend(f.iter().copied());
        }
        s.into_iter().collect()
    }

    /// Dimension, or None for the empty complex.
    pub fn dim(&self) -> Option<usize> {
        self.maximal.iter().map(|f| f.len() - 1).max()
    }

    pub fn has_face(&self, f: &[usize]) -> bool {
        let mut f = f.to_vec();
        f.sort_unstable();
        self.maximal.iter().any(|m| is_subset(&f, m))
    }

    /// Every nonempty face, as sorted vertex lists.
    pub fn face_set(&self) -> BTreeSet<Vec<usize>> {
        let mut out = BTreeSet::new();
        for m in &self.maximal {
            for k in 1..=m.len() {
                for c in m.iter().copied().combinations(k) {
                    out.insert(c);
                }
            }
        }
        out
    }

    /// Faces grouped by dimension.
    pub fn faces_by_dim(&self) -> Vec<Vec<Vec<usize>>> {
        let mut out: Vec<Vec<Vec<usize>>> = vec![vec![]; self.dim().map_or(0, |d| d + 1)];
        for f in self.face_set() {
            out[f.len() - 1].push(f);
        }
        out
    }

    pub fn f_vector(&self) -> Vec<usize> {
        self.faces_by_dim().iter().map(|fs| fs.len()).collect()
    }

    /// True iff every clique of the 1-skeleton spans a face.
    pub fn is_flag(&self) -> bool {
        let faces = self.face_set();
        let mut adj: BTreeMap<usize, BTreeSet<usize>> = BTreeMap::new();
        for f in &faces {
            if f.len() == 2 {
                adj.entry(f[0]).or_default().insert(f[1]);
                adj.entry(f[1]).or_default().insert(f[0]);
            }
        }
        // grow cliques one vertex at a time; every clique must already be a face
        let mut frontier: Vec<Vec<usize>> =
            faces.iter().filter(|f| f.len() == 2).cloned().collect();
        while !frontier.is_empty() {
            let mut next = vec![];
            for c in &frontier {
                let last = *c.last().unwrap();
                let Some(cands) = adj.get(&last) else { continue };
                for &v in cands.range(last + 1..) {
                    if c[..c.len() - 1].iter().all(|u| adj[u].contains(&v)) {
                        let mut c2 = c.clone();
                        c2.push(v);
                        if !faces.contains(&c2) {
                            return false;
                        }
                        next.push(c2);
                    }
                }
            }
            frontier = next;
        }
        true
    }

    /// Subcomplex induced on a vertex subset (labels/universe preserved).
    pub fn full_subcomplex(&self, keep: &[usize]) -> SimplicialComplex {
        let keep: BTreeSet<usize> = keep.iter().copied().collect();
        let faces = self
            .maximal
            .iter()
            .map(|f| f.iter().copied().filter(|v| keep.contains(v)).collect())
            .collect();
        Self::from_maximal_graded(self.labels.clone(), self.grade.clone(), faces)
            .expect("induced faces of a valid complex")
    }

    /// Drop absent vertices and reindex.
    pub fn compact(&self) -> SimplicialComplex {
        let verts = self.vertex_set();
        let index: BTreeMap<usize, usize> =
            verts.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let labels = verts.iter().map(|&v| self.labels[v].clone()).collect();
        let grade = verts.iter().map(|&v| self.grade[v]).collect();
        let maximal = self
            .maximal
            .iter()
            .map(|f| f.iter().map(|v| index[v]).collect())
            .collect();
        SimplicialComplex { labels, grade, maximal }
    }

    /// Link of a face: all τ disjoint from σ with τ ∪ σ in the complex.
    pub fn link(&self, simplex: &[usize]) -> Result<SimplicialComplex> {
        if !self.has_face(simplex) {
            return Err(Error::InvalidComplex(format!("simplex absent: {simplex:?}")));
        }
        let mut sig = simplex.to_vec();
        sig.sort_unstable();
        let faces = self
            .maximal
            .iter()
            .filter(|m| is_subset(&sig, m))
            .map(|m| m.iter().copied().filter(|v| !sig.contains(v)).collect())
            .collect();
        Self::from_maximal_graded(self.labels.clone(), self.grade.clone(), faces)
    }

    /// Closed star of a face.
    pub fn star(&self, simplex: &[usize]) -> Result<SimplicialComplex> {
        if !self.has_face(simplex) {
            return Err(Error::InvalidComplex(format!("simplex absent: {simplex:?}")));
        }
        let mut sig = simplex.to_vec();
        sig.sort_unstable();
        let faces = self
            .maximal
            .iter()
            .filter(|m| is_subset(&sig, m))
            .cloned()
            .collect();
        Self::from_maximal_graded(self.labels.clone(), self.grade.clone(), faces)
    }

    /// Simplicial join: every face of one factor unioned with every face of
    /// the other. Right-factor labels are disambiguated with trailing quotes
    /// if they collide.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let off = self.labels.len();
        let mut labels = self.labels.clone();
        let mut used: BTreeSet<String> = labels.iter().cloned().collect();
        for l in &other.labels {
            let mut cand = l.clone();
            while used.contains(&cand) {
                cand.push('\'');
            }
            used.insert(cand.clone());
            labels.push(cand);
        }
        let mut grade = self.grade.clone();
        grade.extend(other.grade.iter().copied());
        let shift = |f: &Vec<usize>| f.iter().map(|v| v + off).collect::<Vec<_>>();
        let maximal: Vec<Vec<usize>> = if self.maximal.is_empty() {
            other.maximal.iter().map(shift).collect()
        } else if other.maximal.is_empty() {
            self.maximal.clone()
        } else {
            self.maximal
                .iter()
                .cartesian_product(&other.maximal)
                .map(|(a, b)| a.iter().copied().chain(shift(b)).collect())
                .collect()
        };
        Self::from_maximal_graded(labels, grade, maximal).expect("join of valid complexes")
    }

    /// Canonical `simp v1` text: one maximal face per line, labels sorted
    /// within a face, lines sorted by (size, lex).
    pub fn print_simp(&self) -> String {
        let mut lines: Vec<Vec<String>> = self
            .maximal
            .iter()
            .map(|f| {
                let mut ls: Vec<String> = f.iter().map(|&v| self.labels[v].clone()).collect();
                ls.sort();
                ls
            })
            .collect();
        lines.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        let mut out = String::from("simp v1\n");
        for l in lines {
            out.push_str(&l.join(" "));
            out.push('\n');
        }
        out
    }

    pub fn parse_simp(text: &str) -> Result<SimplicialComplex> {
        let mut names: Vec<String> = vec![];
        let mut index: BTreeMap<String, usize> = BTreeMap::new();
        let mut faces: Vec<Vec<usize>> = vec![];
        let mut seen_header = false;
        for (ln, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if !seen_header {
                if line != "simp v1" {
                    return Err(Error::Parse {
                        line: ln + 1,
                        msg: format!("expected `simp v1` header, found `{line}`"),
                    });
                }
                seen_header = true;
                continue;
            }
            let mut face = vec![];
            for tok in line.split_whitespace() {
                let id = *index.entry(tok.to_string()).or_insert_with(|| {
                    names.push(tok.to_string());
                    names.len() - 1
                });
                if face.contains(&id) {
                    return Err(Error::Parse {
                        line: ln + 1,
                        msg: format!("repeated vertex `{tok}` in face"),
                    });
                }
                face.push(id);
            }
            faces.push(face);
        }
        if !seen_header {
            return Err(Error::Parse { line: 1, msg: "missing `simp v1` header".into() });
        }
        Self::from_maximal(names, faces)
    }

    /// Same set of faces up to labels (grades ignored; used for round-trips).
    pub fn eq_as_labeled(&self, other: &SimplicialComplex) -> bool {
        let lab = |k: &SimplicialComplex| {
            k.maximal
                .iter()
                .map(|f| {
                    let mut ls: Vec<String> = f.iter().map(|&v| k.labels[v].clone()).collect();
                    ls.sort();
                    ls
                })
                .collect::<BTreeSet<_>>()
        };
        lab(self) == lab(other)
    }
}

/// k-skeleton of the full simplex on `n_verts` vertices; k < 0 gives the
/// empty complex (whose reduced homology is a single class in degree −1).
pub fn simplex_skeleton(n_verts: usize, k: i64) -> SimplicialComplex {
    let labels = (0..n_verts).map(|i| i.to_string()).collect();
    if k < 0 {
        return SimplicialComplex::from_maximal(labels, vec![]).unwrap();
    }
    let k = (k as usize).min(n_verts.saturating_sub(1));
    let faces = (0..n_verts).combinations(k + 1).collect();
    SimplicialComplex::from_maximal(labels, faces).unwrap()
}

/// Full simplex with `n_verts` vertices.
pub fn full_simplex(n_verts: usize) -> SimplicialComplex {
    simplex_skeleton(n_verts, n_verts as i64 - 1)
}

/// Boundary of the n-simplex (n+1 vertices).
pub fn boundary_simplex(n: usize) -> SimplicialComplex {
    simplex_skeleton(n + 1, n as i64 - 1)
}

/// Full subcomplex of the barycentrically subdivided ∂Δ^{m−1} on barycenters
/// of faces of dimension ≥ k−1. Its reduced homology is concentrated in
/// degree m−k−1 (k=m gives the empty complex, concentrated in degree −1).
pub fn flag_poset_complement(m: usize, k: usize) -> Result<SimplicialComplex> {
    if k < 1 || k > m {
        return Err(Error::InvalidComplex(format!("need 1 <= k <= m, got k={k}, m={m}")));
    }
    let subsets: Vec<u32> = (1u32..(1 << m))
        .filter(|s| {
            let c = s.count_ones() as usize;
            (k..m).contains(&c)
        })
        .collect();
    let labels: Vec<String> = subsets
        .iter()
        .map(|s| (0..m).filter(|i| s >> i & 1 == 1).map(|i| i.to_string()).collect())
        .collect();
    let grade: Vec<u32> = subsets.iter().map(|s| s.count_ones() - 1).collect();
    let mut pairs = vec![];
    for (i, &a) in subsets.iter().enumerate() {
        for (j, &b) in subsets.iter().enumerate() {
            if a != b && a & b == a && b.count_ones() == a.count_ones() + 1 {
                pairs.push((i, j));
            }
        }
    }
    Ok(Poset::from_pairs(labels, grade, &pairs)?.order_complex())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> SimplicialComplex {
        let labels = (0..n).map(|i| format!("c{i}")).collect();
        let faces = (0..n).map(|i| vec![i, (i + 1) % n]).collect();
        SimplicialComplex::from_maximal(labels, faces).unwrap()
    }

    fn crosspoly3() -> SimplicialComplex {
        // octahedron boundary: vertices i and i+3 are antipodal
        let labels = (0..6).map(|i| format!("p{i}")).collect();
        let mut faces = vec![];
        for a in [0, 3] {
            for b in [1, 4] {
                for c in [2, 5] {
                    faces.push(vec![a, b, c]);
                }
            }
        }
        SimplicialComplex::from_maximal(labels, faces).unwrap()
    }

    #[test]
    fn maximality_and_ordering() {
        let k = SimplicialComplex::from_maximal(
            (0..4).map(|i| i.to_string()).collect(),
            vec![vec![2, 1, 0], vec![0, 1], vec![3], vec![1, 2, 0]],
        )
        .unwrap();
        assert_eq!(k.maximal(), &[vec![3], vec![0, 1, 2]]);
        assert_eq!(k.dim(), Some(2));
        assert_eq!(k.f_vector(), vec![4, 3, 1]);
    }

    #[test]
    fn flagness_examples() {
        assert!(!boundary_simplex(2).is_flag()); // empty triangle
        assert!(cycle(5).is_flag());
        assert!(full_simplex(4).is_flag());
        assert!(crosspoly3().is_flag()); // octahedron is flag
        assert!(!simplex_skeleton(5, 1).is_flag()); // K5 graph, no triangles
    }

    #[test]
    fn full_subcomplex_examples() {
        let tri = full_simplex(3);
        let e = tri.full_subcomplex(&[0, 2]);
        assert_eq!(e.maximal(), &[vec![0, 2]]);
        let nothing = tri.full_subcomplex(&[]);
        assert!(nothing.is_void());
        assert_eq!(nothing.labels.len(), 3);
    }

    #[test]
    fn link_and_star() {
        let oct = crosspoly3();
        let lk = oct.link(&[0]).unwrap().compact();
        assert_eq!(lk.f_vector(), vec![4, 4]);
        assert_eq!(
            lk.maximal().to_vec(),
            vec![vec![0, 1], vec![0, 3], vec![1, 2], vec![2, 3]]
        );
        let st = oct.star(&[0]).unwrap();
        assert_eq!(st.f_vector(), vec![5, 8, 4]);
        assert!(oct.link(&[0, 3]).is_err()); // antipodal pair is not a face
    }

    #[test]
    fn join_of_two_point_pairs_is_square() {
        let s0 = SimplicialComplex::from_maximal(
            vec!["a".into(), "b".into()],
            vec![vec![0], vec![1]],
        )
        .unwrap();
        let sq = s0.join(&s0);
        assert_eq!(sq.f_vector(), vec![4, 4]);
        assert!(sq.is_flag());
        assert_eq!(sq.labels, vec!["a", "b", "a'", "b'"]);
        // join with the empty complex changes nothing
        let same = s0.join(&SimplicialComplex::empty());
        assert_eq!(same.maximal(), s0.maximal());
    }

    #[test]
    fn skeleton_counts() {
        assert_eq!(simplex_skeleton(5, 1).f_vector(), vec![5, 10]);
        assert_eq!(boundary_simplex(3).f_vector(), vec![4, 6, 4]);
        assert!(simplex_skeleton(4, -1).is_void());
    }

    #[test]
    fn flag_poset_complement_shapes() {
        let hexagon = flag_poset_complement(3, 1).unwrap();
        assert_eq!(hexagon.f_vector(), vec![6, 6]);
        let three_points = flag_poset_complement(3, 2).unwrap();
        assert_eq!(three_points.f_vector(), vec![3]);
        assert!(flag_poset_complement(3, 3).unwrap().is_void());
        assert!(flag_poset_complement(3, 0).is_err());
    }

    #[test]
    fn simp_round_trip() {
        let text = "simp v1\nw\na b\nb c\n";
        let k = SimplicialComplex::parse_simp(text).unwrap();
        assert_eq!(k.print_simp(), text);
        let k2 = SimplicialComplex::parse_simp(&k.print_simp()).unwrap();
        assert!(k.eq_as_labeled(&k2));
        assert_eq!(k.f_vector(), vec![4, 2]);
    }

    #[test]
    fn simp_parse_errors() {
        assert!(SimplicialComplex::parse_simp("a b\n").is_err());
        assert!(SimplicialComplex::parse_simp("simp v1\na a\n").is_err());
    }
}
