//! Coxeter matrices, word arithmetic, finiteness classification, spherical
//! subsets, and coset representatives.
//!
//! Elements are represented by their ShortLex-least reduced words. Normal
//! forms are computed by Tits rewriting (braid moves plus `ss` deletion);
//! right-angled systems take a fast combinatorial path that never searches
//! braid orbits. Generator subsets are bitmasks (`u64`), so systems are
//! limited to 64 generators.

use crate::error::{Error, Result};
use crate::poly::Mono;
use crate::Q;
use num_bigint::BigUint;
use num_traits::{One, Signed, Zero};
use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;
use std::sync::RwLock;

pub type Gen = u8;
/// A word in the generators; canonical (ShortLex-least reduced) unless a
/// function says otherwise.
pub type Word = Vec<Gen>;

pub const MAX_RANK: usize = 64;
/// Default cap on ball enumeration, in elements.
pub const DEFAULT_BALL_CAP: usize = 1_000_000;

/// Off-diagonal Coxeter label.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Label {
    Fin(u32),
    Inf,
}

impl Label {
    pub fn is_inf(self) -> bool {
        matches!(self, Label::Inf)
    }

    pub fn finite(self) -> Option<u32> {
        match self {
            Label::Fin(m) => Some(m),
            Label::Inf => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Fin(m) => write!(f, "{}", m),
            Label::Inf => write!(f, "inf"),
        }
    }
}

/// Symmetric matrix of labels; diagonal is implicitly 1, missing pairs are ∞.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoxeterMatrix {
    pub names: Vec<String>,
    m: Vec<Label>, // flattened n*n; diagonal stored as Fin(1)
}

impl CoxeterMatrix {
    /// All off-diagonal labels start at ∞.
    pub fn new(names: Vec<String>) -> Result<Self> {
        if names.is_empty() {
            return Err(Error::InvalidMatrix("no generators".into()));
        }
        if names.len() > MAX_RANK {
            return Err(Error::InvalidMatrix(format!(
                "at most {} generators supported, got {}",
                MAX_RANK,
                names.len()
            )));
        }
        let mut seen = HashSet::new();
        for name in &names {
            if name.is_empty() || name.contains(char::is_whitespace) {
                return Err(Error::InvalidMatrix(format!("bad generator name {:?}", name)));
            }
            if !seen.insert(name.clone()) {
                return Err(Error::InvalidMatrix(format!("duplicate generator {:?}", name)));
            }
        }
        let n = names.len();
        let mut m = vec![Label::Inf; n * n];
        for i in 0..n {
            m[i * n + i] = Label::Fin(1);
        }
        Ok(CoxeterMatrix { names, m })
    }

    /// Complete graph of labels: every off-diagonal pair gets `label`.
    pub fn uniform(names: Vec<String>, label: u32) -> Result<Self> {
        let mut mat = Self::new(names)?;
        for i in 0..mat.n() {
            for j in (i + 1)..mat.n() {
                mat.set(i as Gen, j as Gen, Label::Fin(label))?;
            }
        }
        Ok(mat)
    }

    pub fn n(&self) -> usize {
        self.names.len()
    }

    pub fn label(&self, i: Gen, j: Gen) -> Label {
        self.m[i as usize * self.n() + j as usize]
    }

    pub fn set(&mut self, i: Gen, j: Gen, label: Label) -> Result<()> {
        if i == j {
            return Err(Error::InvalidMatrix("diagonal labels are implicit".into()));
        }
        if let Label::Fin(m) = label {
            if m < 2 {
                return Err(Error::InvalidMatrix(format!(
                    "off-diagonal label {} < 2 for pair ({}, {})",
                    m, self.names[i as usize], self.names[j as usize]
                )));
            }
        }
        let n = self.n();
        self.m[i as usize * n + j as usize] = label;
        self.m[j as usize * n + i as usize] = label;
        Ok(())
    }

    pub fn gen_index(&self, name: &str) -> Result<Gen> {
        self.names
            .iter()
            .position(|g| g == name)
            .map(|i| i as Gen)
            .ok_or_else(|| Error::UnknownGenerator(name.into()))
    }

    /// Parse the `coxeter v1` text format:
    ///
    /// ```text
    /// coxeter v1
    /// generators: s t u
    /// m: s t 3
    /// m: t u inf
    /// ```
    ///
    /// One `m:` line per off-diagonal pair; `inf` permitted explicitly;
    /// omitted pairs default to ∞.
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.trim()))
            .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
        let (ln, header) = lines.next().ok_or(Error::Parse {
            line: 0,
            msg: "empty input".into(),
        })?;
        if header != "coxeter v1" {
            return Err(Error::Parse {
                line: ln,
                msg: format!("expected `coxeter v1` header, got {:?}", header),
            });
        }
        let (ln, gens) = lines.next().ok_or(Error::Parse {
            line: ln,
            msg: "missing `generators:` line".into(),
        })?;
        let names: Vec<String> = match gens.strip_prefix("generators:") {
            Some(rest) => rest.split_whitespace().map(String::from).collect(),
            None => {
                return Err(Error::Parse {
                    line: ln,
                    msg: "missing `generators:` line".into(),
                })
            }
        };
        let mut mat = Self::new(names).map_err(|e| Error::Parse {
            line: ln,
            msg: e.to_string(),
        })?;
        let mut assigned: HashSet<(Gen, Gen)> = HashSet::new();
        for (ln, line) in lines {
            let rest = line.strip_prefix("m:").ok_or_else(|| Error::Parse {
                line: ln,
                msg: format!("expected `m:` line, got {:?}", line),
            })?;
            let toks: Vec<&str> = rest.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(Error::Parse {
                    line: ln,
                    msg: "`m:` line needs `m: <s> <t> <label>`".into(),
                });
            }
            let i = mat.gen_index(toks[0]).map_err(|e| Error::Parse {
                line: ln,
                msg: e.to_string(),
            })?;
            let j = mat.gen_index(toks[1]).map_err(|e| Error::Parse {
                line: ln,
                msg: e.to_string(),
            })?;
            let label = if toks[2] == "inf" {
                Label::Inf
            } else {
                let v: u32 = toks[2].parse().map_err(|_| Error::Parse {
                    line: ln,
                    msg: format!("bad label {:?}", toks[2]),
                })?;
                Label::Fin(v)
            };
            if i == j {
                return Err(Error::Parse {
                    line: ln,
                    msg: "diagonal labels are implicit".into(),
                });
            }
            let key = (i.min(j), i.max(j));
            if !assigned.insert(key) {
                return Err(Error::Parse {
                    line: ln,
                    msg: format!("conflicting label for pair ({}, {})", toks[0], toks[1]),
                });
            }
            mat.set(i, j, label).map_err(|e| Error::Parse {
                line: ln,
                msg: e.to_string(),
            })?;
        }
        Ok(mat)
    }

    /// Canonical `coxeter v1` text: finite labels only, row-major order.
    pub fn print(&self) -> String {
        let mut out = String::from("coxeter v1\n");
        out.push_str("generators:");
        for name in &self.names {
            out.push(' ');
            out.push_str(name);
        }
        out.push('\n');
        for i in 0..self.n() {
            for j in (i + 1)..self.n() {
                if let Label::Fin(m) = self.label(i as Gen, j as Gen) {
                    out.push_str(&format!("m: {} {} {}\n", self.names[i], self.names[j], m));
                }
            }
        }
        out
    }
}

/// Irreducible finite types, with classical orders and longest-element
/// lengths (= number of positive roots).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FiniteType {
    A(u32),
    B(u32),
    D(u32),
    E(u32),
    F4,
    H(u32),
    I2(u32),
}

impl FiniteType {
    pub fn order(self) -> u64 {
        fn fact(n: u64) -> u64 {
            (1..=n).product()
        }
        match self {
            FiniteType::A(n) => fact(n as u64 + 1),
            FiniteType::B(n) => (1u64 << n) * fact(n as u64),
            FiniteType::D(n) => (1u64 << (n - 1)) * fact(n as u64),
            FiniteType::E(6) => 51_840,
            FiniteType::E(7) => 2_903_040,
            FiniteType::E(8) => 696_729_600,
            FiniteType::E(_) => unreachable!(),
            FiniteType::F4 => 1_152,
            FiniteType::H(3) => 120,
            FiniteType::H(4) => 14_400,
            FiniteType::H(_) => unreachable!(),
            FiniteType::I2(m) => 2 * m as u64,
        }
    }

    pub fn longest_length(self) -> u32 {
        match self {
            FiniteType::A(n) => n * (n + 1) / 2,
            FiniteType::B(n) => n * n,
            FiniteType::D(n) => n * (n - 1),
            FiniteType::E(6) => 36,
            FiniteType::E(7) => 63,
            FiniteType::E(8) => 120,
            FiniteType::E(_) => unreachable!(),
            FiniteType::F4 => 24,
            FiniteType::H(3) => 15,
            FiniteType::H(4) => 60,
            FiniteType::H(_) => unreachable!(),
            FiniteType::I2(m) => m,
        }
    }
}

pub fn mask_iter(mask: u64) -> impl Iterator<Item = Gen> {
    (0..64u8).filter(move |i| mask >> i & 1 == 1)
}

pub fn mask_of(gens: &[Gen]) -> u64 {
    gens.iter().fold(0u64, |m, &g| m | 1 << g)
}

/// A validated Coxeter system: matrix, generator conjugacy classes, and the
/// full downward-closed poset of spherical subsets with their orders and
/// longest-element lengths.
#[derive(Debug, Clone)]
pub struct CoxeterSystem {
    pub mat: CoxeterMatrix,
    /// class id per generator; classes numbered by smallest member
    pub class_of: Vec<usize>,
    pub n_classes: usize,
    /// smallest generator in each class
    pub class_rep: Vec<Gen>,
    /// all spherical subsets as bitmasks, sorted by (cardinality, value)
    pub spherical: Vec<u64>,
    index: HashMap<u64, usize>,
    sph_order: Vec<u64>,
    sph_longest: Vec<u32>,
}

impl CoxeterSystem {
    pub fn new(mat: CoxeterMatrix) -> Result<Self> {
        let n = mat.n();
        // conjugacy classes: connected components under odd finite labels
        let mut class_of: Vec<usize> = (0..n).collect();
        fn find(p: &mut Vec<usize>, i: usize) -> usize {
            if p[i] != i {
                let r = find(p, p[i]);
                p[i] = r;
            }
            p[i]
        }
        for i in 0..n {
            for j in (i + 1)..n {
                if let Label::Fin(m) = mat.label(i as Gen, j as Gen) {
                    if m % 2 == 1 {
                        let (a, b) = (find(&mut class_of, i), find(&mut class_of, j));
                        if a != b {
                            class_of[a.max(b)] = a.min(b);
                        }
                    }
                }
            }
        }
        for i in 0..n {
            find(&mut class_of, i);
        }
        let mut roots: Vec<usize> = class_of.clone();
        roots.sort_unstable();
        roots.dedup();
        let class_rep: Vec<Gen> = roots.iter().map(|&r| r as Gen).collect();
        let relabel: HashMap<usize, usize> =
            roots.iter().enumerate().map(|(k, &r)| (r, k)).collect();
        let class_of: Vec<usize> = class_of.iter().map(|r| relabel[r]).collect();
        let n_classes = class_rep.len();

        let mut sys = CoxeterSystem {
            mat,
            class_of,
            n_classes,
            class_rep,
            spherical: vec![],
            index: HashMap::new(),
            sph_order: vec![],
            sph_longest: vec![],
        };
        sys.enumerate_spherical();
        Ok(sys)
    }

    pub fn parse(text: &str) -> Result<Self> {
        Self::new(CoxeterMatrix::parse(text)?)
    }

    pub fn n(&self) -> usize {
        self.mat.n()
    }

    pub fn full_mask(&self) -> u64 {
        if self.n() == 64 {
            u64::MAX
        } else {
            (1u64 << self.n()) - 1
        }
    }

    pub fn is_right_angled(&self) -> bool {
        (0..self.n()).all(|i| {
            ((i + 1)..self.n())
                .all(|j| matches!(self.mat.label(i as Gen, j as Gen), Label::Fin(2) | Label::Inf))
        })
    }

    /// Connected components of the diagram induced on `mask` (edges = labels
    /// ≥ 3 or ∞), as masks. W_mask is the direct product of the W_component.
    pub fn diagram_components(&self, mask: u64) -> Vec<u64> {
        let verts: Vec<Gen> = mask_iter(mask).filter(|&g| (g as usize) < self.n()).collect();
        let mut seen: HashSet<Gen> = HashSet::new();
        let mut out = vec![];
        for &v in &verts {
            if seen.contains(&v) {
                continue;
            }
            let mut comp = 1u64 << v;
            seen.insert(v);
            let mut stack = vec![v];
            while let Some(x) = stack.pop() {
                for &y in &verts {
                    if !seen.contains(&y) && !matches!(self.mat.label(x, y), Label::Fin(2)) {
                        seen.insert(y);
                        comp |= 1 << y;
                        stack.push(y);
                    }
                }
            }
            out.push(comp);
        }
        out
    }

    /// Decompose the diagram induced on `mask` into irreducible components
    /// and classify each; `None` if any component is of infinite type.
    pub fn finite_components(&self, mask: u64) -> Option<Vec<FiniteType>> {
        self.diagram_components(mask)
            .into_iter()
            .map(|comp| self.classify_component(&mask_iter(comp).collect::<Vec<_>>()))
            .collect()
    }

    fn classify_component(&self, comp: &[Gen]) -> Option<FiniteType> {
        let k = comp.len();
        let mut edges: Vec<(usize, usize, u32)> = vec![];
        for a in 0..k {
            for b in (a + 1)..k {
                match self.mat.label(comp[a], comp[b]) {
                    Label::Inf => return None,
                    Label::Fin(2) => {}
                    Label::Fin(m) => edges.push((a, b, m)),
                }
            }
        }
        if k == 1 {
            return Some(FiniteType::A(1));
        }
        if k == 2 {
            return Some(FiniteType::I2(edges[0].2));
        }
        if edges.len() != k - 1 {
            return None; // a cycle somewhere
        }
        let mut deg = vec![0usize; k];
        let mut adj: Vec<Vec<usize>> = vec![vec![]; k];
        for &(a, b, _) in &edges {
            deg[a] += 1;
            deg[b] += 1;
            adj[a].push(b);
            adj[b].push(a);
        }
        if deg.iter().any(|&d| d >= 4) {
            return None;
        }
        let branches: Vec<usize> = (0..k).filter(|&i| deg[i] == 3).collect();
        let high: Vec<&(usize, usize, u32)> = edges.iter().filter(|e| e.2 >= 4).collect();
        if branches.len() >= 2 {
            return None;
        }
        if let [b] = branches[..] {
            if !high.is_empty() {
                return None;
            }
            let mut legs: Vec<u32> = adj[b]
                .iter()
                .map(|&start| {
                    let (mut prev, mut cur, mut len) = (b, start, 1u32);
                    while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
                        prev = cur;
                        cur = next;
                        len += 1;
                    }
                    len
                })
                .collect();
            legs.sort_unstable();
            // vertices = 1 (branch) + sum of leg lengths
            return match legs[..] {
                [1, 1, l] => Some(FiniteType::D(l + 3)),
                [1, 2, 2] => Some(FiniteType::E(6)),
                [1, 2, 3] => Some(FiniteType::E(7)),
                [1, 2, 4] => Some(FiniteType::E(8)),
                _ => None,
            };
        }
        // a path
        if high.len() >= 2 {
            return None;
        }
        if high.is_empty() {
            return Some(FiniteType::A(k as u32));
        }
        let &(a, b, m) = high[0];
        // distance from each endpoint of the high edge to its far path end
        let far = |from: usize, avoid: usize| -> u32 {
            let (mut prev, mut cur, mut len) = (avoid, from, 0u32);
            while let Some(&next) = adj[cur].iter().find(|&&x| x != prev) {
                prev = cur;
                cur = next;
                len += 1;
            }
            len
        };
        let (da, db) = (far(a, b), far(b, a));
        let at_end = da.min(db) == 0;
        match m {
            4 if at_end => Some(FiniteType::B(k as u32)),
            4 if k == 4 && da == 1 && db == 1 => Some(FiniteType::F4),
            5 if at_end && k == 3 => Some(FiniteType::H(3)),
            5 if at_end && k == 4 => Some(FiniteType::H(4)),
            _ => None,
        }
    }

    pub fn is_finite_subset(&self, mask: u64) -> bool {
        self.finite_components(mask).is_some()
    }

    fn enumerate_spherical(&mut self) {
        // grow one generator at a time; valid since the family is
        // downward closed
        let mut found: HashSet<u64> = HashSet::new();
        found.insert(0);
        let mut frontier: Vec<u64> = vec![0];
        while !frontier.is_empty() {
            let mut next = vec![];
            for &t in &frontier {
                for s in 0..self.n() {
                    let cand = t | 1 << s;
                    if cand != t && !found.contains(&cand) && self.is_finite_subset(cand) {
                        found.insert(cand);
                        next.push(cand);
                    }
                }
            }
            frontier = next;
        }
        let mut spherical: Vec<u64> = found.into_iter().collect();
        spherical.sort_by_key(|&m| (m.count_ones(), m));
        self.index = spherical.iter().enumerate().map(|(i, &m)| (m, i)).collect();
        self.sph_order = spherical
            .iter()
            .map(|&m| {
                self.finite_components(m)
                    .unwrap()
                    .iter()
                    .map(|t| t.order())
                    .product()
            })
            .collect();
        self.sph_longest = spherical
            .iter()
            .map(|&m| {
                self.finite_components(m)
                    .unwrap()
                    .iter()
                    .map(|t| t.longest_length())
                    .sum()
            })
            .collect();
        self.spherical = spherical;
    }

    pub fn is_spherical(&self, mask: u64) -> bool {
        self.index.contains_key(&mask)
    }

    pub fn spherical_index(&self, mask: u64) -> Option<usize> {
        self.index.get(&mask).copied()
    }

    /// Spherical subsets of cardinality `k`, ascending as masks.
    pub fn spherical_of_card(&self, k: u32) -> impl Iterator<Item = u64> + '_ {
        self.spherical
            .iter()
            .copied()
            .filter(move |m| m.count_ones() == k)
    }

    pub fn order_of(&self, mask: u64) -> Result<u64> {
        self.spherical_index(mask)
            .map(|i| self.sph_order[i])
            .ok_or_else(|| Error::NotSpherical(self.mask_names(mask)))
    }

    pub fn longest_length(&self, mask: u64) -> Result<u32> {
        self.spherical_index(mask)
            .map(|i| self.sph_longest[i])
            .ok_or_else(|| Error::NotSpherical(self.mask_names(mask)))
    }

    pub fn mask_names(&self, mask: u64) -> String {
        let names: Vec<&str> = mask_iter(mask)
            .filter(|&g| (g as usize) < self.n())
            .map(|g| self.mat.names[g as usize].as_str())
            .collect();
        if names.is_empty() {
            "{}".into()
        } else {
            format!("{{{}}}", names.join(","))
        }
    }

    /// Exponent vector (one slot per conjugacy class) of t_w for a reduced
    /// word; well defined because braid moves preserve per-class counts.
    pub fn word_monomial(&self, w: &[Gen]) -> Mono {
        let mut exps = vec![0u16; self.n_classes];
        for &g in w {
            exps[self.class_of[g as usize]] += 1;
        }
        exps
    }

    /// Variable names for the conjugacy-class indeterminates, e.g. `t_s`.
    pub fn class_var_names(&self) -> Vec<String> {
        self.class_rep
            .iter()
            .map(|&g| format!("t_{}", self.mat.names[g as usize]))
            .collect()
    }
}

/// Positive weights, constant on conjugacy classes.
#[derive(Clone, Debug, PartialEq)]
pub struct WeightVector {
    pub per_class: Vec<Q>,
}

impl WeightVector {
    pub fn uniform(sys: &CoxeterSystem, q: Q) -> Result<Self> {
        if !q.is_positive() {
            return Err(Error::InvalidWeight(format!("q = {} is not positive", q)));
        }
        Ok(WeightVector {
            per_class: vec![q; sys.n_classes],
        })
    }

    pub fn per_class(sys: &CoxeterSystem, per_class: Vec<Q>) -> Result<Self> {
        if per_class.len() != sys.n_classes {
            return Err(Error::InvalidWeight(format!(
                "expected {} class weights, got {}",
                sys.n_classes,
                per_class.len()
            )));
        }
        if let Some(bad) = per_class.iter().find(|q| !q.is_positive()) {
            return Err(Error::InvalidWeight(format!("weight {} is not positive", bad)));
        }
        Ok(WeightVector { per_class })
    }

    /// Per-generator weights, validated constant on conjugacy classes.
    pub fn per_generator(sys: &CoxeterSystem, per_gen: Vec<Q>) -> Result<Self> {
        if per_gen.len() != sys.n() {
            return Err(Error::InvalidWeight(format!(
                "expected {} weights, got {}",
                sys.n(),
                per_gen.len()
            )));
        }
        for (g, q) in per_gen.iter().enumerate() {
            let rep = sys.class_rep[sys.class_of[g]] as usize;
            if *q != per_gen[rep] {
                return Err(Error::InvalidWeight(format!(
                    "generators {} and {} are conjugate but have weights {} and {}",
                    sys.mat.names[rep], sys.mat.names[g], per_gen[rep], q
                )));
            }
        }
        let per_class = sys.class_rep.iter().map(|&g| per_gen[g as usize].clone()).collect();
        Self::per_class(sys, per_class)
    }

    pub fn of_gen(&self, sys: &CoxeterSystem, g: Gen) -> Q {
        self.per_class[sys.class_of[g as usize]].clone()
    }

    /// q_w = product of q_s over any reduced word for w.
    pub fn of_word(&self, sys: &CoxeterSystem, w: &[Gen]) -> Q {
        let mut v = Q::one();
        for &g in w {
            v *= self.of_gen(sys, g);
        }
        v
    }

    pub fn inverse(&self) -> WeightVector {
        WeightVector {
            per_class: self.per_class.iter().map(|q| Q::one() / q.clone()).collect(),
        }
    }
}

enum OrbitOutcome {
    Shortened(Word),
    Reduced(Word),
}

/// Word-arithmetic engine with a memoized normal-form map.
///
/// Thread-safe: normal forms are pure values; the memo table sits behind an
/// `RwLock` and admits concurrent readers.
pub struct WordEngine {
    pub sys: CoxeterSystem,
    ra: bool,
    memo: RwLock<HashMap<Word, Word>>,
}

impl WordEngine {
    pub fn new(sys: CoxeterSystem) -> Self {
        let ra = sys.is_right_angled();
        WordEngine {
            sys,
            ra,
            memo: RwLock::new(HashMap::new()),
        }
    }

    /// ShortLex-least reduced word representing the same element.
    pub fn nf(&self, word: &[Gen]) -> Word {
        if self.ra {
            return self.nf_ra(word);
        }
        if word.len() <= 1 {
            return word.to_vec();
        }
        if let Some(hit) = self.memo.read().unwrap().get(word) {
            return hit.clone();
        }
        let mut cur = word.to_vec();
        loop {
            match self.orbit_search(&cur) {
                OrbitOutcome::Shortened(next) => cur = next,
                OrbitOutcome::Reduced(best) => {
                    let mut memo = self.memo.write().unwrap();
                    memo.insert(word.to_vec(), best.clone());
                    memo.insert(cur, best.clone());
                    return best;
                }
            }
        }
    }

    /// BFS over braid moves. Stops early with a shortened word when some
    /// orbit member contains `ss`; otherwise returns the lex-least member.
    fn orbit_search(&self, w: &Word) -> OrbitOutcome {
        const ORBIT_CAP: usize = 4_000_000;
        if let Some(v) = delete_adjacent_pair(w) {
            return OrbitOutcome::Shortened(v);
        }
        let mut seen: HashSet<Word> = HashSet::new();
        seen.insert(w.clone());
        let mut queue: VecDeque<Word> = VecDeque::new();
        queue.push_back(w.clone());
        let mut best = w.clone();
        while let Some(u) = queue.pop_front() {
            for i in 0..u.len().saturating_sub(1) {
                let (s, t) = (u[i], u[i + 1]);
                if s == t {
                    continue;
                }
                let m = match self.sys.mat.label(s, t) {
                    Label::Fin(m) => m as usize,
                    Label::Inf => continue,
                };
                if i + m > u.len() {
                    continue;
                }
                if !(0..m).all(|k| u[i + k] == if k % 2 == 0 { s } else { t }) {
                    continue;
                }
                let mut v = u.clone();
                for k in 0..m {
                    v[i + k] = if k % 2 == 0 { t } else { s };
                }
                if seen.contains(&v) {
                    continue;
                }
                if let Some(short) = delete_adjacent_pair(&v) {
                    return OrbitOutcome::Shortened(short);
                }
                if v < best {
                    best = v.clone();
                }
                seen.insert(v.clone());
                queue.push_back(v);
                if seen.len() > ORBIT_CAP {
                    panic!(
                        "braid orbit exceeded {} words; word too long for exact rewriting",
                        ORBIT_CAP
                    );
                }
            }
        }
        OrbitOutcome::Reduced(best)
    }

    /// Right-angled fast path: cancel `x…x` pairs with commuting interiors,
    /// then greedily front the least movable letter.
    fn nf_ra(&self, word: &[Gen]) -> Word {
        let commutes = |a: Gen, b: Gen| matches!(self.sys.mat.label(a, b), Label::Fin(2));
        let mut cur = word.to_vec();
        'cancel: loop {
            for i in 0..cur.len() {
                let x = cur[i];
                for j in (i + 1)..cur.len() {
                    if cur[j] == x {
                        cur.remove(j);
                        cur.remove(i);
                        continue 'cancel;
                    }
                    if !commutes(cur[j], x) {
                        break;
                    }
                }
            }
            break;
        }
        let mut rem = cur;
        let mut out = Word::with_capacity(rem.len());
        while !rem.is_empty() {
            let mut pick: Option<usize> = None;
            for i in 0..rem.len() {
                if rem[..i].iter().all(|&y| commutes(y, rem[i])) {
                    if pick.map(|p| rem[i] < rem[p]).unwrap_or(true) {
                        pick = Some(i);
                    }
                }
            }
            out.push(rem.remove(pick.unwrap()));
        }
        out
    }

    pub fn is_canonical(&self, word: &[Gen]) -> bool {
        self.nf(word) == word
    }

    pub fn is_reduced(&self, word: &[Gen]) -> bool {
        self.nf(word).len() == word.len()
    }

    pub fn mult(&self, a: &[Gen], b: &[Gen]) -> Word {
        let mut w = a.to_vec();
        w.extend_from_slice(b);
        self.nf(&w)
    }

    pub fn inv(&self, w: &[Gen]) -> Word {
        let rev: Word = w.iter().rev().copied().collect();
        self.nf(&rev)
    }

    pub fn is_right_descent(&self, w: &[Gen], s: Gen) -> bool {
        let mut v = w.to_vec();
        v.push(s);
        self.nf(&v).len() < w.len()
    }

    pub fn is_left_descent(&self, w: &[Gen], s: Gen) -> bool {
        let mut v = Word::with_capacity(w.len() + 1);
        v.push(s);
        v.extend_from_slice(w);
        self.nf(&v).len() < w.len()
    }

    /// The (∅,T)-reduced representative of wW_T: the unique shortest element
    /// of the coset, characterized by l(us) > l(u) for all s in T.
    pub fn min_coset_rep(&self, w: &[Gen], tmask: u64) -> Word {
        let mut cur = self.nf(w);
        'strip: loop {
            for s in mask_iter(tmask) {
                if (s as usize) < self.sys.n() && self.is_right_descent(&cur, s) {
                    let mut v = cur.clone();
                    v.push(s);
                    cur = self.nf(&v);
                    continue 'strip;
                }
            }
            return cur;
        }
    }

    /// All canonical words of length ≤ `radius` with letters in `mask`,
    /// in ShortLex order. Errors with a resource cap when the count
    /// exceeds `cap`.
    pub fn ball_in(&self, radius: usize, mask: u64, cap: usize) -> Result<Vec<Word>> {
        let letters: Vec<Gen> = mask_iter(mask).filter(|&g| (g as usize) < self.sys.n()).collect();
        let mut all: Vec<Word> = vec![vec![]];
        let mut level: Vec<Word> = vec![vec![]];
        for _ in 1..=radius {
            let mut next: Vec<Word> = vec![];
            for w in &level {
                for &s in &letters {
                    let mut c = w.clone();
                    c.push(s);
                    if self.is_canonical(&c) {
                        next.push(c);
                    }
                }
            }
            if all.len() + next.len() > cap {
                return Err(Error::ResourceCap {
                    context: "ball enumeration".into(),
                    limit: cap,
                    reached: all.len() + next.len(),
                });
            }
            if next.is_empty() {
                break;
            }
            all.extend(next.iter().cloned());
            level = next;
        }
        Ok(all)
    }

    pub fn ball(&self, radius: usize, cap: usize) -> Result<Vec<Word>> {
        self.ball_in(radius, self.sys.full_mask(), cap)
    }

    /// Every element of a spherical standard subgroup, in ShortLex order.
    pub fn subgroup_elements(&self, tmask: u64) -> Result<Vec<Word>> {
        let longest = self.sys.longest_length(tmask)? as usize;
        let order = self.sys.order_of(tmask)? as usize;
        let elems = self.ball_in(longest, tmask, order + 1)?;
        debug_assert_eq!(elems.len(), order);
        Ok(elems)
    }

    /// Number of elements per length 0..=radius. Right-angled systems use an
    /// exact normal-form automaton (no enumeration); otherwise counts come
    /// from `ball`, subject to `cap`.
    pub fn census(&self, radius: usize, cap: usize) -> Result<Vec<BigUint>> {
        if self.ra {
            return Ok(self.census_ra(radius, self.sys.full_mask()));
        }
        self.census_ball(radius, cap)
    }

    /// Census by honest enumeration (any system; capped).
    pub fn census_ball(&self, radius: usize, cap: usize) -> Result<Vec<BigUint>> {
        let ball = self.ball(radius, cap)?;
        let mut counts = vec![BigUint::zero(); radius + 1];
        for w in &ball {
            counts[w.len()] += 1u32;
        }
        // drop trailing zero levels of a finite group
        while counts.len() > 1 && counts.last().unwrap().is_zero() {
            counts.pop();
        }
        Ok(counts)
    }

    /// Right-angled census via the canonical-word automaton. State = one
    /// "blocked" bit per generator; appending y is legal iff y is unblocked;
    /// afterwards x is blocked when x = y, or x commutes with y, x > y stays
    /// unblocked only if it was… concretely:
    /// blocked'(x) = [x = y] or (m(x,y) = 2 and (y > x or blocked(x))).
    fn census_ra(&self, radius: usize, mask: u64) -> Vec<BigUint> {
        let letters: Vec<Gen> = mask_iter(mask).filter(|&g| (g as usize) < self.sys.n()).collect();
        let mut states: HashMap<u64, BigUint> = HashMap::new();
        states.insert(0u64, BigUint::one());
        let mut counts = vec![BigUint::one()];
        for _ in 1..=radius {
            let mut next: HashMap<u64, BigUint> = HashMap::new();
            for (&state, cnt) in &states {
                for &y in &letters {
                    if state >> y & 1 == 1 {
                        continue;
                    }
                    let mut ns = 0u64;
                    for &x in &letters {
                        let blocked = if x == y {
                            true
                        } else if matches!(self.sys.mat.label(x, y), Label::Fin(2)) {
                            y > x || state >> x & 1 == 1
                        } else {
                            false
                        };
                        if blocked {
                            ns |= 1 << x;
                        }
                    }
                    *next.entry(ns).or_insert_with(BigUint::zero) += cnt.clone();
                }
            }
            let total: BigUint = next.values().sum();
            if total.is_zero() {
                break;
            }
            counts.push(total);
            states = next;
        }
        counts
    }
}

fn delete_adjacent_pair(w: &[Gen]) -> Option<Word> {
    for i in 0..w.len().saturating_sub(1) {
        if w[i] == w[i + 1] {
            let mut v = Vec::with_capacity(w.len() - 2);
            v.extend_from_slice(&w[..i]);
            v.extend_from_slice(&w[i + 2..]);
            return Some(v);
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names(s: &str) -> Vec<String> {
        s.split_whitespace().map(String::from).collect()
    }

    /// Path with the given consecutive labels (rank = labels.len()+1).
    fn path_system(labels: &[u32]) -> CoxeterSystem {
        let n = labels.len() + 1;
        let nm: Vec<String> = (0..n).map(|i| format!("g{}", i)).collect();
        let mut mat = CoxeterMatrix::new(nm).unwrap();
        for (i, &m) in labels.iter().enumerate() {
            mat.set(i as Gen, i as Gen + 1, Label::Fin(m)).unwrap();
        }
        // non-adjacent pairs commute (diagram path, not ∞)
        for i in 0..n {
            for j in (i + 2)..n {
                mat.set(i as Gen, j as Gen, Label::Fin(2)).unwrap();
            }
        }
        CoxeterSystem::new(mat).unwrap()
    }

    /// Right-angled k-gon: cycle of commuting pairs, diagonals ∞.
    fn kgon(k: usize) -> CoxeterSystem {
        let nm: Vec<String> = (0..k).map(|i| format!("s{}", i)).collect();
        let mut mat = CoxeterMatrix::new(nm).unwrap();
        for i in 0..k {
            mat.set(i as Gen, ((i + 1) % k) as Gen, Label::Fin(2)).unwrap();
        }
        CoxeterSystem::new(mat).unwrap()
    }

    #[test]
    fn parse_print_roundtrip() {
        let text = "coxeter v1\ngenerators: s t u\nm: s t 3\nm: s u 2\n";
        let mat = CoxeterMatrix::parse(text).unwrap();
        assert_eq!(mat.label(0, 1), Label::Fin(3));
        assert_eq!(mat.label(1, 2), Label::Inf); // omitted pair
        assert_eq!(mat.print(), text);
        let again = CoxeterMatrix::parse(&mat.print()).unwrap();
        assert_eq!(again, mat);
    }

    #[test]
    fn parse_errors() {
        assert!(CoxeterMatrix::parse("coxeter v1\ngenerators: s s\n").is_err());
        assert!(CoxeterMatrix::parse("coxeter v1\ngenerators: s t\nm: s t 1\n").is_err());
        assert!(CoxeterMatrix::parse("coxeter v1\ngenerators: s t\nm: s t 3\nm: t s 4\n").is_err());
        assert!(CoxeterMatrix::parse("coxeter v1\ngenerators: s t\nm: s v 3\n").is_err());
        assert!(CoxeterMatrix::parse("nope\n").is_err());
    }

    #[test]
    fn conjugacy_classes_by_odd_labels() {
        // m=3 merges, m=2 and ∞ do not
        let sys = path_system(&[3]);
        assert_eq!(sys.n_classes, 1);
        let sys = path_system(&[2]);
        assert_eq!(sys.n_classes, 2);
        let sys = path_system(&[4]);
        assert_eq!(sys.n_classes, 2);
        let sys = kgon(5);
        assert_eq!(sys.n_classes, 5);
    }

    #[test]
    fn classifier_matches_bfs_orders() {
        // (labels of a path, expected order, expected longest length)
        let cases: Vec<(&[u32], u64, u32)> = vec![
            (&[3], 6, 3),        // A2
            (&[3, 3], 24, 6),    // A3
            (&[3, 3, 3], 120, 10), // A4
            (&[4], 8, 4),        // B2
            (&[4, 3], 48, 9),    // B3
            (&[5], 10, 5),       // I2(5)
            (&[5, 3], 120, 15),  // H3
            (&[6], 12, 6),       // G2
            (&[2], 4, 2),        // A1 x A1
        ];
        for (labels, order, longest) in cases {
            let sys = path_system(labels);
            let full = sys.full_mask();
            assert!(sys.is_spherical(full), "{:?} should be finite", labels);
            assert_eq!(sys.order_of(full).unwrap(), order, "order for {:?}", labels);
            assert_eq!(sys.longest_length(full).unwrap(), longest, "longest for {:?}", labels);
            let eng = WordEngine::new(sys);
            let elems = eng.subgroup_elements(full).unwrap();
            assert_eq!(elems.len() as u64, order, "BFS order for {:?}", labels);
            assert_eq!(
                elems.iter().map(|w| w.len()).max().unwrap() as u32,
                longest,
                "BFS longest for {:?}",
                labels
            );
        }
    }

    #[test]
    fn classifier_branch_types() {
        // star with three legs of length 1 = D4
        let mut mat = CoxeterMatrix::uniform(names("c a b d"), 2).unwrap();
        for other in 1..4 {
            mat.set(0, other, Label::Fin(3)).unwrap();
        }
        let sys = CoxeterSystem::new(mat).unwrap();
        let full = sys.full_mask();
        assert_eq!(sys.finite_components(full), Some(vec![FiniteType::D(4)]));
        assert_eq!(sys.order_of(full).unwrap(), 192);
        let eng = WordEngine::new(sys);
        assert_eq!(eng.subgroup_elements(full).unwrap().len(), 192);
    }

    #[test]
    fn classifier_rejects_infinite_diagrams() {
        // affine triangle (3,3,3)
        let mat = CoxeterMatrix::uniform(names("s t u"), 3).unwrap();
        let sys = CoxeterSystem::new(mat).unwrap();
        assert!(!sys.is_finite_subset(sys.full_mask()));
        // a growing ball backs this up: an irreducible rank-3 finite group
        // has at most 120 elements, and this one keeps going
        let eng = WordEngine::new(sys);
        let c = eng.census_ball(10, 100_000).unwrap();
        assert_eq!(c.len(), 11); // elements of length 10 exist
        let total: BigUint = c.iter().sum();
        assert!(total > BigUint::from(120u32));

        // (4,4) path, (6,3) path, F4-with-a-tail, infinite dihedral
        assert!(!path_system(&[4, 4]).is_finite_subset(0b111));
        assert!(!path_system(&[6, 3]).is_finite_subset(0b111));
        assert!(path_system(&[3, 4, 3]).is_finite_subset(0b1111)); // F4 itself
        assert!(!path_system(&[3, 4, 3, 3]).is_finite_subset(0b11111));
        assert!(!path_system(&[3, 5, 3]).is_finite_subset(0b1111));
        assert!(path_system(&[5, 3, 3]).is_finite_subset(0b1111)); // H4 is finite
        let mut mat = CoxeterMatrix::new(names("s t")).unwrap();
        mat.set(0, 1, Label::Inf).unwrap();
        assert!(!CoxeterSystem::new(mat).unwrap().is_finite_subset(0b11));
    }

    #[test]
    fn spherical_enumeration_matches_brute_force() {
        for sys in [kgon(5), path_system(&[3, 4]), path_system(&[3, 3, 3])] {
            let full = sys.full_mask();
            let brute: Vec<u64> = (0..=full)
                .filter(|&m| m & full == m && sys.is_finite_subset(m))
                .collect();
            let mut enumerated = sys.spherical.clone();
            enumerated.sort_unstable();
            let mut brute = brute;
            brute.sort_unstable();
            assert_eq!(enumerated, brute);
            // downward closed
            for &t in &sys.spherical {
                for s in mask_iter(t) {
                    assert!(sys.is_spherical(t & !(1 << s)));
                }
            }
        }
        // pentagon: 1 + 5 + 5 members
        assert_eq!(kgon(5).spherical.len(), 11);
        // K4 with uniform label 3: 1 + 4 + 6, no spherical triples
        let k4 = CoxeterSystem::new(CoxeterMatrix::uniform(names("a b c d"), 3).unwrap()).unwrap();
        assert_eq!(k4.spherical.len(), 11);
        assert_eq!(k4.spherical_of_card(3).count(), 0);
    }

    #[test]
    fn normal_form_basics() {
        let sys = path_system(&[3]); // m(s,t)=3
        let eng = WordEngine::new(sys);
        assert_eq!(eng.nf(&[0, 0]), Vec::<Gen>::new());
        assert_eq!(eng.nf(&[0, 1, 0]), vec![0, 1, 0]);
        assert_eq!(eng.nf(&[1, 0, 1]), vec![0, 1, 0]); // braid, ShortLex-least
        let sys2 = path_system(&[2]);
        let eng2 = WordEngine::new(sys2);
        assert_eq!(eng2.nf(&[1, 0]), vec![0, 1]); // commutation
        assert_eq!(eng2.nf(&[1, 0, 1, 0]), Vec::<Gen>::new());
    }

    #[test]
    fn normal_form_idempotent_dihedral() {
        let sys = path_system(&[4]);
        let eng = WordEngine::new(sys);
        for w in eng.ball(6, 1000).unwrap() {
            assert_eq!(eng.nf(&w), w);
            // left-multiplying and undoing returns w
            let sw = eng.mult(&[0], &w);
            assert_eq!(eng.mult(&[0], &sw), w);
        }
    }

    #[test]
    fn ra_and_generic_normal_forms_agree() {
        // pentagon is right-angled; force the generic path by building an
        // engine that thinks it is not
        let sys = kgon(5);
        let eng_ra = WordEngine::new(sys.clone());
        let mut eng_gen = WordEngine::new(sys);
        eng_gen.ra = false;
        let words: Vec<Word> = vec![
            vec![4, 2, 0, 3, 1],
            vec![0, 1, 0, 1],
            vec![2, 1, 0, 4, 3, 2, 1, 0],
            vec![3, 3, 2, 2],
            vec![4, 0, 4, 0, 1],
        ];
        for w in words {
            assert_eq!(eng_ra.nf(&w), eng_gen.nf(&w), "word {:?}", w);
        }
        for w in eng_gen.ball(4, 10_000).unwrap() {
            assert_eq!(eng_ra.nf(&w), w);
        }
    }

    #[test]
    fn ball_counts() {
        // dihedral m=3: 6 elements
        let eng = WordEngine::new(path_system(&[3]));
        assert_eq!(eng.ball(3, 100).unwrap().len(), 6);
        assert_eq!(eng.ball(10, 100).unwrap().len(), 6); // stops growing
        // pentagon censuses: 1, 5, 15, 35, ... (ball(2) has 21 elements)
        let eng = WordEngine::new(kgon(5));
        let ball2 = eng.ball(2, 1000).unwrap();
        assert_eq!(ball2.len(), 21);
        // coefficients of (1+t)^2 / (1-3t+t^2)
        let census = eng.census(6, 100_000).unwrap();
        let expect: Vec<u32> = vec![1, 5, 15, 40, 105, 275, 720];
        for (i, e) in expect.iter().enumerate() {
            assert_eq!(census[i], BigUint::from(*e), "census length {}", i);
        }
        // automaton census agrees with honest enumeration
        let by_ball = eng.census_ball(6, 100_000).unwrap();
        assert_eq!(census[..7], by_ball[..7]);
    }

    #[test]
    fn ball_is_shortlex_sorted_and_capped() {
        let eng = WordEngine::new(kgon(4));
        let ball = eng.ball(4, 10_000).unwrap();
        let mut sorted = ball.clone();
        sorted.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        assert_eq!(ball, sorted);
        match eng.ball(30, 100) {
            Err(Error::ResourceCap { limit, .. }) => assert_eq!(limit, 100),
            other => panic!("expected resource cap, got {:?}", other.map(|b| b.len())),
        }
    }

    #[test]
    fn infinite_dihedral_census() {
        let mut mat = CoxeterMatrix::new(names("s t")).unwrap();
        mat.set(0, 1, Label::Inf).unwrap();
        let eng = WordEngine::new(CoxeterSystem::new(mat).unwrap());
        let census = eng.census(8, 1000).unwrap();
        assert_eq!(census[0], BigUint::one());
        for c in &census[1..] {
            assert_eq!(*c, BigUint::from(2u32));
        }
    }

    #[test]
    fn min_coset_rep_brute_force() {
        // dihedral m=4, T = {t}
        let sys = path_system(&[4]);
        let eng = WordEngine::new(sys);
        let tmask = 0b10u64;
        let wt: Vec<Word> = eng.subgroup_elements(tmask).unwrap();
        for w in eng.ball(4, 100).unwrap() {
            let rep = eng.min_coset_rep(&w, tmask);
            // characterization: no right descent in T
            assert!(!eng.is_right_descent(&rep, 1));
            // rep is the shortest element of wW_T
            let coset: Vec<Word> = wt.iter().map(|x| eng.mult(&w, x)).collect();
            let best = coset
                .iter()
                .min_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)))
                .unwrap();
            assert_eq!(&rep, best);
            assert!(coset.contains(&rep));
        }
    }

    #[test]
    fn min_coset_rep_spec_cases() {
        let sys = path_system(&[2]); // commuting s,t
        let eng = WordEngine::new(sys);
        assert_eq!(eng.min_coset_rep(&[1], 0b10), Vec::<Gen>::new());
        assert_eq!(eng.min_coset_rep(&[0, 1], 0b10), vec![0]);
    }

    #[test]
    fn weight_vectors_respect_classes() {
        let sys = path_system(&[3]); // one class
        assert!(WeightVector::per_generator(&sys, vec![crate::q(1, 2), crate::q(1, 3)]).is_err());
        assert!(WeightVector::per_generator(&sys, vec![crate::q(1, 2), crate::q(1, 2)]).is_ok());
        assert!(WeightVector::uniform(&sys, crate::q(-1, 2)).is_err());
        let sys2 = path_system(&[4]); // two classes
        let q = WeightVector::per_generator(&sys2, vec![crate::q(1, 2), crate::q(2, 3)]).unwrap();
        assert_eq!(q.of_word(&sys2, &[0, 1, 0]), crate::q(1, 6));
    }

    #[test]
    fn word_monomials_per_class() {
        let sys = path_system(&[4]);
        assert_eq!(sys.word_monomial(&[0, 1, 0, 1]), vec![2, 2]);
        assert_eq!(sys.class_var_names(), vec!["t_g0", "t_g1"]);
    }
}
