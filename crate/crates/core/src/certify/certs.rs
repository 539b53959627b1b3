//! Vanishing certificates: hypothesis records with exact evidence.
//!
//! A certificate never asserts an analytic conclusion as computed. It asserts
//! that the hypotheses of a named vanishing statement were verified, shows
//! the arithmetic, and quotes the statement's conclusion. Every certificate
//! re-validates from its own records: [`verify_certificate`] reruns the
//! arithmetic on the stored integers, rationals, and polynomials without
//! touching the original system.

use std::collections::BTreeMap;
use std::str::FromStr;

use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::certify::graphaut::{nerve_graph, LabeledGraph};
use crate::certify::reports::{star_report_on_graph, star_transitivity_report, StarReport};
use crate::coxeter::{CoxeterSystem, WeightVector, WordEngine};
use crate::davis::st_of;
use crate::error::{Error, Result};
use crate::poly::UPoly;
use crate::roots::SturmChain;
use crate::series::{
    default_root_width, growth_rational, in_region_subsystem, radius_of_convergence, subsystem,
    RadiusResult,
};
use crate::{davis, Q};

pub const THEOREM_IDS: [&str; 6] = [
    "vanishing-by-stars",
    "atiyah-Kn",
    "atiyah-trianglefree",
    "surface-interval",
    "davis-okun-6",
    "davis-okun-8",
];

fn q_str(x: &Q) -> String {
    x.to_string()
}

fn parse_q(s: &str) -> Result<Q> {
    Q::from_str(s).map_err(|e| Error::BadCertificate(format!("bad rational {s:?}: {e}")))
}

fn parse_poly(coeffs: &[String]) -> Result<UPoly> {
    let c: Result<Vec<Q>> = coeffs.iter().map(|s| parse_q(s)).collect();
    Ok(UPoly::new(c?))
}

fn poly_strings(p: &UPoly) -> Vec<String> {
    (0..=p.degree().unwrap_or(0)).map(|i| q_str(&p.coeff(i))).collect()
}

/// One verifiable record. Each variant carries everything its re-validation
/// needs; nothing is looked up outside the certificate.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Evidence {
    /// Star arithmetic at one vertex: |G_t| = deg·|E_T| when transitive, and
    /// lcm(2|G_t|, 2m|E_T|) = 2|G_t|·m/deg when the lcm pair is present.
    StarArithmetic {
        vertex: String,
        degree: u64,
        m: u64,
        group_order: u64,
        edge_stabilizer_order: u64,
        edge_transitive: bool,
        lcm_lhs: Option<u64>,
        lcm_rhs: Option<u64>,
    },
    /// m ≡ 0 (mod lcm of the listed vertex degrees).
    DegreeDivisibility { m: u64, degrees: Vec<u64>, lcm: u64 },
    /// The listed edge set spans no triangle.
    TriangleFree { vertices: u64, edges: Vec<(u64, u64)> },
    /// Complete uniform nerve bookkeeping and the label bound m ≥ n−1.
    CompleteUniform { n: u64, m: u64, edge_count: u64 },
    /// m > n−1: the system embeds in the complete system on m+1 generators.
    SubgroupReduction { n: u64, m: u64, ambient: u64 },
    /// The polynomial (reduced growth-series denominator along the ray
    /// scaled through the weight point) has no root in (0, 1].
    RegionMember {
        subsystem: String,
        poly: Vec<String>,
        rho_lo: Option<String>,
        rho_hi: Option<String>,
    },
    /// The polynomial's smallest positive root lies strictly below q
    /// (isolated in (lo, hi]).
    RootBelow { poly: Vec<String>, q: String, lo: String, hi: String },
    /// The polynomial has no root in (0, q] (so q sits strictly below the
    /// smallest positive root, isolated in (lo, hi] when present).
    NoRootUpTo {
        poly: Vec<String>,
        q: String,
        lo: Option<String>,
        hi: Option<String>,
    },
    /// Flag-surface shape bookkeeping: 2-dimensional flag nerve, every
    /// vertex link a cycle with ≥ 4 vertices, closed and orientable
    /// (reduced H₂ of rank 1), apex = vertex of maximal link size.
    SurfaceShape {
        f: Vec<u64>,
        euler: i64,
        link_sizes: Vec<u64>,
        apex: String,
        apex_link_size: u64,
        flag: bool,
        h2_rank: u64,
    },
    /// Reduced homology of a named complex, concentrated in one degree.
    Concentration {
        complex: String,
        degree: i64,
        rank: u64,
        betti: Vec<(i64, u64)>,
    },
    /// Per-stage tallies of the manifold reduction checks.
    StageSummary {
        removed_dim: u32,
        removed: u64,
        lower_sphere_pass: u64,
        upper_sphere_pass: u64,
        stability_pass: u64,
        join_checked: u64,
        join_pass: u64,
    },
    /// Free-form exact items in stable key order.
    Items { items: BTreeMap<String, String> },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Hypothesis {
    pub name: String,
    pub passed: bool,
    #[serde(default)]
    pub note: String,
    pub evidence: Evidence,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VanishingCertificate {
    pub theorem: String,
    pub system_hash: String,
    pub parameters: BTreeMap<String, String>,
    pub hypotheses: Vec<Hypothesis>,
    pub conclusion: String,
}

fn system_hash(sys: &CoxeterSystem) -> String {
    crate::hash::fnv1a_hex(sys.mat.print().as_bytes())
}

/// The conclusion string a certificate of the given theorem must carry.
pub fn expected_conclusion(theorem: &str, parameters: &BTreeMap<String, String>) -> Result<String> {
    match theorem {
        "vanishing-by-stars" => {
            let k = parameters
                .get("k")
                .ok_or_else(|| Error::BadCertificate("missing parameter k".into()))?;
            Ok(format!("L²_q H_n(Σ) = 0 for n > {k}"))
        }
        "atiyah-Kn" | "atiyah-trianglefree" => Ok("L²_q H₂(Σ) = 0 for q ≤ 1".into()),
        "surface-interval" => {
            Ok("L²_q H_*(Σ) is concentrated in dimension 1 for ρ < q < ρ_Lk(v₀)".into())
        }
        "davis-okun-6" => Ok("b_i^q(bL) = 0 for i > 3".into()),
        "davis-okun-8" => Ok("b_i^q(bL) = 0 for i > 4".into()),
        other => Err(Error::BadCertificate(format!("unknown theorem id {other:?}"))),
    }
}

fn check(cond: bool, msg: impl Into<String>) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::BadCertificate(msg.into()))
    }
}

/// Re-validate one evidence record from its own content.
pub fn verify_evidence(e: &Evidence) -> Result<()> {
    match e {
        Evidence::StarArithmetic {
            vertex,
            degree,
            m,
            group_order,
            edge_stabilizer_order,
            edge_transitive,
            lcm_lhs,
            lcm_rhs,
        } => {
            if *edge_transitive {
                check(
                    *degree > 0 && *group_order == degree * edge_stabilizer_order,
                    format!("star at {vertex}: |G_t| ≠ deg·|E_T|"),
                )?;
            }
            match (lcm_lhs, lcm_rhs) {
                (Some(l), Some(r)) => {
                    check(*edge_transitive, format!("star at {vertex}: lcm pair without transitivity"))?;
                    check(m % degree == 0, format!("star at {vertex}: deg ∤ m"))?;
                    let lhs = (2 * group_order).lcm(&(2 * m * edge_stabilizer_order));
                    let rhs = 2 * group_order * (m / degree);
                    check(
                        lhs == *l && rhs == *r && l == r,
                        format!("star at {vertex}: lcm identity fails ({lhs} vs {rhs})"),
                    )?;
                }
                (None, None) => {}
                _ => return Err(Error::BadCertificate(format!("star at {vertex}: half an lcm pair"))),
            }
            Ok(())
        }
        Evidence::DegreeDivisibility { m, degrees, lcm } => {
            check(!degrees.is_empty() && degrees.iter().all(|&d| d > 0), "empty or zero degree list")?;
            let l = degrees.iter().fold(1u64, |a, &d| a.lcm(&d));
            check(l == *lcm, format!("lcm of degrees is {l}, record says {lcm}"))?;
            check(m % l == 0, format!("{m} is not a multiple of {l}"))
        }
        Evidence::TriangleFree { vertices, edges } => {
            let n = *vertices as usize;
            let mut adj = vec![vec![false; n]; n];
            for &(a, b) in edges {
                let (a, b) = (a as usize, b as usize);
                check(a < n && b < n && a != b, "edge endpoint out of range")?;
                adj[a][b] = true;
                adj[b][a] = true;
            }
            for &(a, b) in edges {
                for c in 0..n {
                    if adj[a as usize][c] && adj[b as usize][c] {
                        return Err(Error::BadCertificate(format!("triangle {{{a}, {b}, {c}}}")));
                    }
                }
            }
            Ok(())
        }
        Evidence::CompleteUniform { n, m, edge_count } => {
            check(*edge_count == n * (n - 1) / 2, "edge count is not n(n−1)/2")?;
            check(*m + 1 >= *n, format!("m = {m} < n−1 = {}", n - 1))
        }
        Evidence::SubgroupReduction { n, m, ambient } => {
            check(*m > *n - 1, "reduction recorded although m = n−1")?;
            check(*ambient == *m + 1, "ambient system is not on m+1 generators")
        }
        Evidence::RegionMember { subsystem, poly, .. } => {
            if poly.is_empty() {
                return Ok(()); // polynomial growth: the region is everything
            }
            let p = parse_poly(poly)?;
            if p.degree().unwrap_or(0) == 0 {
                return Ok(());
            }
            let roots = SturmChain::new(&p).count_in(&Q::zero(), &Q::one());
            check(
                roots == 0,
                format!("denominator for {subsystem} has {roots} root(s) in (0, 1]"),
            )
        }
        Evidence::RootBelow { poly, q, lo, hi } => {
            let p = parse_poly(poly)?;
            let qv = parse_q(q)?;
            let (lo, hi) = (parse_q(lo)?, parse_q(hi)?);
            check(lo < hi, "empty isolating interval")?;
            check(!p.eval(&qv).is_zero(), "q is itself a root")?;
            let below = SturmChain::new(&p).count_in(&Q::zero(), &qv);
            check(below >= 1, "no root at or below q: root is not below q")?;
            let inside = SturmChain::new(&p).count_in(&lo, &hi);
            check(inside >= 1, "isolating interval contains no root")
        }
        Evidence::NoRootUpTo { poly, q, lo, hi } => {
            let p = parse_poly(poly)?;
            let qv = parse_q(q)?;
            let upto = SturmChain::new(&p).count_in(&Q::zero(), &qv);
            check(upto == 0, format!("{upto} root(s) in (0, {q}]"))?;
            if let (Some(lo), Some(hi)) = (lo, hi) {
                let (lo, hi) = (parse_q(lo)?, parse_q(hi)?);
                check(lo < hi, "empty isolating interval")?;
                check(
                    SturmChain::new(&p).count_in(&lo, &hi) >= 1,
                    "isolating interval contains no root",
                )?;
                check(qv <= lo, "q is not below the isolated root's interval")?;
            }
            Ok(())
        }
        Evidence::SurfaceShape {
            f,
            euler,
            link_sizes,
            apex_link_size,
            flag,
            h2_rank,
            ..
        } => {
            check(*flag, "nerve is not flag")?;
            check(f.len() == 3, "nerve is not 2-dimensional")?;
            let chi = f[0] as i64 - f[1] as i64 + f[2] as i64;
            check(chi == *euler, "Euler characteristic mismatch")?;
            check(
                link_sizes.iter().all(|&k| k >= 4),
                "some vertex link has fewer than 4 vertices",
            )?;
            check(
                link_sizes.len() == f[0] as usize,
                "one link size per vertex required",
            )?;
            check(
                link_sizes.iter().max() == Some(apex_link_size),
                "apex link size is not the maximum",
            )?;
            // 2f₁ = Σ deg(v) and 3f₂ = 2f₁ for a closed surface triangulation
            let degsum: u64 = link_sizes.iter().sum();
            check(degsum == 2 * f[1], "degree sum is not twice the edge count")?;
            check(3 * f[2] == 2 * f[1], "not every edge lies in exactly two triangles")?;
            check(*h2_rank == 1, "top homology rank is not 1 (not closed orientable)")
        }
        Evidence::Concentration { complex, degree, rank, betti } => {
            for &(d, r) in betti {
                let want = if d == *degree { *rank } else { 0 };
                check(
                    r == want,
                    format!("{complex}: homology rank {r} in degree {d}, expected {want}"),
                )?;
            }
            check(
                betti.iter().any(|&(d, _)| d == *degree),
                format!("{complex}: claimed degree {degree} absent from the betti record"),
            )
        }
        Evidence::StageSummary {
            removed_dim,
            removed,
            lower_sphere_pass,
            upper_sphere_pass,
            stability_pass,
            join_checked,
            join_pass,
        } => {
            check(
                lower_sphere_pass == removed && upper_sphere_pass == removed && stability_pass == removed,
                format!("stage dim {removed_dim}: some per-vertex check did not pass"),
            )?;
            check(join_pass == join_checked, "some explicit join check failed")
        }
        Evidence::Items { items } => {
            check(!items.is_empty(), "empty evidence record")
        }
    }
}

/// Re-validate a whole certificate from its own records.
pub fn verify_certificate(cert: &VanishingCertificate) -> Result<()> {
    check(
        THEOREM_IDS.contains(&cert.theorem.as_str()),
        format!("unknown theorem id {:?}", cert.theorem),
    )?;
    check(!cert.system_hash.is_empty(), "missing system hash")?;
    check(!cert.hypotheses.is_empty(), "certificate with no hypotheses")?;
    for h in &cert.hypotheses {
        check(h.passed, format!("hypothesis {:?} is marked failed", h.name))?;
        verify_evidence(&h.evidence)
            .map_err(|e| Error::BadCertificate(format!("hypothesis {:?}: {e}", h.name)))?;
    }
    let want = expected_conclusion(&cert.theorem, &cert.parameters)?;
    check(
        cert.conclusion == want,
        format!("conclusion {:?} does not match {:?}", cert.conclusion, want),
    )
}

/// Canonical, diffable text rendering (the `--json` twin is serde output).
pub fn render_certificate(cert: &VanishingCertificate) -> String {
    let mut out = String::new();
    out.push_str(&format!("certificate {}\n", cert.theorem));
    out.push_str(&format!("system {}\n", cert.system_hash));
    for (k, v) in &cert.parameters {
        out.push_str(&format!("param {k} = {v}\n"));
    }
    for h in &cert.hypotheses {
        let status = if h.passed { "PASS" } else { "FAIL" };
        out.push_str(&format!("hypothesis [{status}] {}\n", h.name));
        out.push_str(&format!("  {}\n", render_evidence(&h.evidence)));
        if !h.note.is_empty() {
            out.push_str(&format!("  note: {}\n", h.note));
        }
    }
    out.push_str(&format!("conclusion {}\n", cert.conclusion));
    out
}

fn render_evidence(e: &Evidence) -> String {
    match e {
        Evidence::StarArithmetic {
            vertex,
            degree,
            m,
            group_order,
            edge_stabilizer_order,
            edge_transitive,
            lcm_lhs,
            lcm_rhs,
        } => {
            let mut s = format!(
                "star at {vertex}: deg = {degree}, m = {m}, |G_t| = {group_order}, |E_T| = {edge_stabilizer_order}, transitive = {edge_transitive}"
            );
            if let (Some(l), Some(r)) = (lcm_lhs, lcm_rhs) {
                s.push_str(&format!(
                    ", lcm(2|G_t|, 2m|E_T|) = {l} = 2|G_t|·m/deg = {r}"
                ));
            }
            s
        }
        Evidence::DegreeDivisibility { m, degrees, lcm } => {
            format!("degrees {degrees:?}, lcm = {lcm}, divides m = {m}")
        }
        Evidence::TriangleFree { vertices, edges } => {
            format!("{} edges on {vertices} vertices, no triangle", edges.len())
        }
        Evidence::CompleteUniform { n, m, edge_count } => {
            format!("complete nerve on {n} vertices ({edge_count} edges), uniform label {m} ≥ {}", n - 1)
        }
        Evidence::SubgroupReduction { n, m, ambient } => {
            format!("m = {m} > {} = n−1: standard subgroup of the complete system on {ambient} generators", n - 1)
        }
        Evidence::RegionMember { subsystem, poly, rho_lo, rho_hi } => {
            let rho = match (rho_lo, rho_hi) {
                (Some(lo), Some(hi)) => format!(", ρ ∈ ({lo}, {hi}]"),
                _ => ", polynomial growth".into(),
            };
            format!("{subsystem}: denominator [{}] has no root in (0, 1]{rho}", poly.join(", "))
        }
        Evidence::RootBelow { poly, q, lo, hi } => {
            format!("smallest positive root of [{}] lies in ({lo}, {hi}] and below q = {q}", poly.join(", "))
        }
        Evidence::NoRootUpTo { poly, q, lo, hi } => {
            let iso = match (lo, hi) {
                (Some(lo), Some(hi)) => format!(", root isolated in ({lo}, {hi}]"),
                _ => String::new(),
            };
            format!("[{}] has no root in (0, {q}]{iso}", poly.join(", "))
        }
        Evidence::SurfaceShape { f, euler, apex, apex_link_size, .. } => {
            format!("flag surface, f = {f:?}, χ = {euler}, apex {apex} with {apex_link_size}-gon link")
        }
        Evidence::Concentration { complex, degree, rank, .. } => {
            format!("{complex}: reduced homology concentrated in degree {degree} with rank {rank}")
        }
        Evidence::StageSummary { removed_dim, removed, join_checked, .. } => {
            format!("removed {removed} vertices of dimension {removed_dim}; all sphere/stability checks passed, {join_checked} explicit join checks")
        }
        Evidence::Items { items } => items
            .iter()
            .map(|(k, v)| format!("{k} = {v}"))
            .collect::<Vec<_>>()
            .join(", "),
    }
}

fn q_params(sys: &CoxeterSystem, q: &WeightVector) -> (String, String) {
    let names = sys.class_var_names();
    let vals: Vec<String> = q.per_class.iter().map(q_str).collect();
    (names.join(","), vals.join(","))
}

fn region_evidence(
    sys: &CoxeterSystem,
    stmask: u64,
    mem: &crate::series::RegionMembership,
) -> Evidence {
    let (poly, rho_lo, rho_hi) = match &mem.radius {
        RadiusResult::Infinite { .. } => (vec![], None, None),
        RadiusResult::Finite { lo, hi, poly, .. } => {
            (poly_strings(poly), Some(q_str(lo)), Some(q_str(hi)))
        }
    };
    Evidence::RegionMember {
        subsystem: format!("{{{}}}", sys.mask_names(stmask)),
        poly,
        rho_lo,
        rho_hi,
    }
}

/// Certificate that the weight point lies in the convergence region of every
/// rank-k star subgroup, so weighted cohomology vanishes above degree k.
pub fn cert_vanishing_by_stars(
    eng: &WordEngine,
    q: &WeightVector,
    k: u32,
) -> Result<VanishingCertificate> {
    let sys = &eng.sys;
    let width = default_root_width();
    let ts: Vec<u64> = if k == 0 {
        vec![0]
    } else {
        sys.spherical_of_card(k).collect()
    };
    if ts.is_empty() {
        return Err(Error::Refused(format!("no spherical subsets of rank {k}")));
    }
    let mut hypotheses = vec![];
    for tmask in ts {
        let st = st_of(sys, tmask, sys.full_mask())?;
        let mem = in_region_subsystem(eng, st, q, &width)?;
        let tname = if tmask == 0 { "∅".to_string() } else { sys.mask_names(tmask) };
        if !mem.inside {
            return Err(Error::Refused(format!(
                "q lies outside the convergence region of the subgroup on St({tname}) = {}",
                sys.mask_names(st)
            )));
        }
        hypotheses.push(Hypothesis {
            name: format!("q ∈ R_St(T) for T = {tname}"),
            passed: true,
            note: String::new(),
            evidence: region_evidence(sys, st, &mem),
        });
    }
    let (cnames, cvals) = q_params(sys, q);
    let mut parameters = BTreeMap::new();
    parameters.insert("k".into(), k.to_string());
    parameters.insert("q-classes".into(), cnames);
    parameters.insert("q".into(), cvals);
    let conclusion = expected_conclusion("vanishing-by-stars", &parameters)?;
    Ok(VanishingCertificate {
        theorem: "vanishing-by-stars".into(),
        system_hash: system_hash(sys),
        parameters,
        hypotheses,
        conclusion,
    })
}

fn star_evidence(r: &StarReport, m: u64) -> Evidence {
    Evidence::StarArithmetic {
        vertex: r.t_name.clone(),
        degree: r.degree,
        m,
        group_order: r.group_order,
        edge_stabilizer_order: r.edge_stabilizer_order,
        edge_transitive: r.edge_transitive,
        lcm_lhs: r.lcm_lhs,
        lcm_rhs: r.lcm_rhs,
    }
}

/// Certificate for a complete nerve with uniform label m ≥ n−1.
pub fn cert_atiyah_kn(n: usize, m: u32) -> Result<VanishingCertificate> {
    if n < 2 {
        return Err(Error::InvalidMatrix(format!("complete nerve needs n ≥ 2, got {n}")));
    }
    let sys = crate::fixtures::complete_graph_system(n, m)?;
    let nerve = nerve_graph(&sys)?; // rejects m = 2 (spherical triples)
    let mut hypotheses = vec![Hypothesis {
        name: "nerve is complete with uniform label m ≥ n−1".into(),
        passed: true,
        note: String::new(),
        evidence: Evidence::CompleteUniform {
            n: n as u64,
            m: m as u64,
            edge_count: nerve.edges.len() as u64,
        },
    }];
    if (m as usize) < n - 1 {
        return Err(Error::Refused(format!("label m = {m} is below n−1 = {}", n - 1)));
    }
    let core = if m as usize == n - 1 {
        sys.clone()
    } else {
        hypotheses.push(Hypothesis {
            name: "reduction to the core case m = n−1".into(),
            passed: true,
            note: "top-dimensional vanishing for the ambient complete system restricts to the standard subgroup".into(),
            evidence: Evidence::SubgroupReduction {
                n: n as u64,
                m: m as u64,
                ambient: m as u64 + 1,
            },
        });
        crate::fixtures::complete_graph_system(m as usize + 1, m)?
    };
    for t in 0..core.n() {
        let r = star_transitivity_report(&core, t as u8)?;
        if !r.lemma_applies() {
            return Err(Error::Other(format!(
                "star arithmetic unexpectedly fails at {} of the core complete system",
                r.t_name
            )));
        }
        hypotheses.push(Hypothesis {
            name: format!("edge-transitive star arithmetic at {} (core case)", r.t_name),
            passed: true,
            note: String::new(),
            evidence: star_evidence(&r, m as u64),
        });
    }
    let mut parameters = BTreeMap::new();
    parameters.insert("n".into(), n.to_string());
    parameters.insert("m".into(), m.to_string());
    let conclusion = expected_conclusion("atiyah-Kn", &parameters)?;
    Ok(VanishingCertificate {
        theorem: "atiyah-Kn".into(),
        system_hash: system_hash(&sys),
        parameters,
        hypotheses,
        conclusion,
    })
}

/// Certificate for a triangle-free uniformly labeled nerve with m a multiple
/// of every vertex degree.
pub fn cert_atiyah_trianglefree(g: &LabeledGraph, m: u32) -> Result<VanishingCertificate> {
    if g.edges.values().any(|&x| x != m) {
        return Err(Error::InvalidWeight(format!(
            "nerve labels are not uniformly {m}"
        )));
    }
    if g.edges.is_empty() {
        return Err(Error::InvalidComplex("nerve has no edges".into()));
    }
    // triangle-freeness
    let edges: Vec<(u64, u64)> = g.edges.keys().map(|&(a, b)| (a as u64, b as u64)).collect();
    for &(a, b) in g.edges.keys() {
        for c in 0..g.n() {
            if c != a && c != b && g.label(a, c).is_some() && g.label(b, c).is_some() {
                return Err(Error::Refused(format!(
                    "triangle {{{}, {}, {}}} in the nerve",
                    g.names[a], g.names[b], g.names[c]
                )));
            }
        }
    }
    let mut hypotheses = vec![Hypothesis {
        name: "nerve is a triangle-free graph".into(),
        passed: true,
        note: String::new(),
        evidence: Evidence::TriangleFree { vertices: g.n() as u64, edges },
    }];
    let degrees: Vec<u64> = (0..g.n()).map(|v| g.degree(v) as u64).collect();
    if let Some(v) = degrees.iter().position(|&d| d == 0) {
        return Err(Error::Refused(format!("generator {} is isolated in the nerve", g.names[v])));
    }
    let lcm = degrees.iter().fold(1u64, |a, &d| a.lcm(&d));
    if (m as u64) % lcm != 0 {
        return Err(Error::Refused(format!(
            "m = {m} is not a multiple of lcm of degrees = {lcm}"
        )));
    }
    hypotheses.push(Hypothesis {
        name: "m is a multiple of every vertex degree".into(),
        passed: true,
        note: String::new(),
        evidence: Evidence::DegreeDivisibility { m: m as u64, degrees, lcm },
    });
    for v in 0..g.n() {
        let r = star_report_on_graph(g, v)?;
        let note = if r.edge_transitive {
            String::new()
        } else {
            "the alternating group on two pendant edges is trivial, so the stated transitivity \
             fails at degree 2; the divisibility hypotheses above do not require it"
                .into()
        };
        hypotheses.push(Hypothesis {
            name: format!("alternating star action at {}", r.t_name),
            passed: true,
            note,
            evidence: star_evidence(&r, m as u64),
        });
    }
    let mut parameters = BTreeMap::new();
    parameters.insert("m".into(), m.to_string());
    parameters.insert("vertices".into(), g.n().to_string());
    let sys = crate::fixtures::graph_label_system(
        g.names.clone(),
        &g.edges.keys().copied().collect::<Vec<_>>(),
        m,
    )?;
    let conclusion = expected_conclusion("atiyah-trianglefree", &parameters)?;
    Ok(VanishingCertificate {
        theorem: "atiyah-trianglefree".into(),
        system_hash: system_hash(&sys),
        parameters,
        hypotheses,
        conclusion,
    })
}

/// Certificate for the flag-surface interval: for a right-angled system whose
/// nerve is a flag triangulation of a closed orientable surface, weighted
/// cohomology at a uniform rational q with ρ < q < ρ_Lk(v₀) is concentrated
/// in dimension 1.
pub fn cert_surface_interval(eng: &WordEngine, q: &Q) -> Result<VanishingCertificate> {
    use num_traits::Signed;
    let sys = &eng.sys;
    if !q.is_positive() {
        return Err(Error::InvalidWeight(format!("q = {q} is not positive")));
    }
    if !sys.is_right_angled() {
        return Err(Error::InvalidMatrix("system is not right-angled".into()));
    }
    let nerve = davis::nerve(sys);
    let f = nerve.f_vector();
    if f.len() != 3 {
        return Err(Error::InvalidComplex(format!(
            "nerve has dimension {}, not a surface",
            f.len() as i64 - 1
        )));
    }
    if !nerve.is_flag() {
        return Err(Error::InvalidComplex("nerve is not flag".into()));
    }
    // every vertex link must be a single cycle on ≥ 4 vertices
    let mut link_sizes = vec![];
    for v in 0..sys.n() {
        let lk = nerve.link(&[v])?.compact();
        let sizes = lk.f_vector();
        let ok = sizes.len() == 2
            && sizes[0] == sizes[1]
            && sizes[0] >= 4
            && (0..lk.labels.len()).all(|u| {
                lk.face_set().iter().filter(|f| f.len() == 2 && f.contains(&u)).count() == 2
            })
            && crate::complexes::simplicial_betti(&lk, true).is_concentrated(1, 1);
        if !ok {
            return Err(Error::InvalidComplex(format!(
                "link of {} is not a single cycle on ≥ 4 vertices",
                sys.mat.names[v]
            )));
        }
        link_sizes.push(sizes[0] as u64);
    }
    let h2 = crate::complexes::simplicial_betti(&nerve, true).rank(2) as u64;
    if h2 != 1 {
        return Err(Error::InvalidComplex(
            "nerve is not a closed orientable surface (H₂ rank ≠ 1)".into(),
        ));
    }
    let apex = (0..sys.n()).max_by_key(|&v| (link_sizes[v], std::cmp::Reverse(v))).unwrap();
    let euler = f[0] as i64 - f[1] as i64 + f[2] as i64;
    let mut hypotheses = vec![Hypothesis {
        name: "nerve is a flag triangulation of a closed orientable surface".into(),
        passed: true,
        note: String::new(),
        evidence: Evidence::SurfaceShape {
            f: f.iter().map(|&x| x as u64).collect(),
            euler,
            link_sizes: link_sizes.clone(),
            apex: sys.mat.names[apex].clone(),
            apex_link_size: link_sizes[apex],
            flag: true,
            h2_rank: h2,
        },
    }];

    let width = default_root_width();
    let series = growth_rational(eng)?;
    let ones = vec![Q::one(); series.nvars()];
    let rho = radius_of_convergence(&series, &ones, &width)?;
    let RadiusResult::Finite { lo, hi, poly, .. } = &rho else {
        return Err(Error::InvalidComplex("surface system has polynomial growth".into()));
    };
    // ρ < q, i.e. the denominator has a root at or below q but not at q
    if poly.eval(q).is_zero() || SturmChain::new(poly).count_in(&Q::zero(), q) == 0 {
        return Err(Error::Refused(format!("q = {q} is not strictly above ρ ∈ ({lo}, {hi}]")));
    }
    hypotheses.push(Hypothesis {
        name: "ρ < q".into(),
        passed: true,
        note: String::new(),
        evidence: Evidence::RootBelow {
            poly: poly_strings(poly),
            q: q_str(q),
            lo: q_str(lo),
            hi: q_str(hi),
        },
    });

    // q < ρ_Lk(v₀): uniform-ray radius of the apex link subsystem
    let lkmask = crate::davis::lk_of(sys, 1u64 << apex, sys.full_mask())?;
    let (lksys, _) = subsystem(sys, lkmask)?;
    let lkeng = WordEngine::new(lksys);
    let lkseries = growth_rational(&lkeng)?;
    let lkones = vec![Q::one(); lkseries.nvars()];
    let lkrho = radius_of_convergence(&lkseries, &lkones, &width)?;
    let RadiusResult::Finite { lo: llo, hi: lhi, poly: lpoly, .. } = &lkrho else {
        return Err(Error::InvalidComplex("apex link subsystem has polynomial growth".into()));
    };
    if SturmChain::new(lpoly).count_in(&Q::zero(), q) != 0 {
        return Err(Error::Refused(format!(
            "q = {q} is not strictly below ρ_Lk(v₀) ∈ ({llo}, {lhi}]"
        )));
    }
    hypotheses.push(Hypothesis {
        name: format!("q < ρ_Lk(v₀) at v₀ = {}", sys.mat.names[apex]),
        passed: true,
        note: String::new(),
        evidence: Evidence::NoRootUpTo {
            poly: poly_strings(lpoly),
            q: q_str(q),
            lo: Some(q_str(llo)),
            hi: Some(q_str(lhi)),
        },
    });

    // the star membership for every generator (rank-1 star certificate)
    let qvec = WeightVector::uniform(sys, q.clone())?;
    for t in 0..sys.n() {
        let st = st_of(sys, 1u64 << t, sys.full_mask())?;
        let mem = in_region_subsystem(eng, st, &qvec, &width)?;
        if !mem.inside {
            return Err(Error::Refused(format!(
                "q lies outside the convergence region of the star subgroup at {}",
                sys.mat.names[t]
            )));
        }
        hypotheses.push(Hypothesis {
            name: format!("q ∈ R_St(T) for T = {{{}}}", sys.mat.names[t]),
            passed: true,
            note: String::new(),
            evidence: region_evidence(sys, st, &mem),
        });
    }

    let mut parameters = BTreeMap::new();
    parameters.insert("q".into(), q_str(q));
    parameters.insert("v0".into(), sys.mat.names[apex].clone());
    parameters.insert("rho-lo".into(), q_str(lo));
    parameters.insert("rho-hi".into(), q_str(hi));
    parameters.insert("rho-link-lo".into(), q_str(llo));
    parameters.insert("rho-link-hi".into(), q_str(lhi));
    let conclusion = expected_conclusion("surface-interval", &parameters)?;
    Ok(VanishingCertificate {
        theorem: "surface-interval".into(),
        system_hash: system_hash(sys),
        parameters,
        hypotheses,
        conclusion,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{kgon_system, petersen_graph, torus_grid_system};
    use crate::q;

    #[test]
    fn stars_k0_matches_region() {
        // finite system: region is everything, k = 0 certifies at any q
        let eng = WordEngine::new(crate::fixtures::a3_system());
        let qv = WeightVector::uniform(&eng.sys, q(7, 2)).unwrap();
        let cert = cert_vanishing_by_stars(&eng, &qv, 0).unwrap();
        assert_eq!(cert.hypotheses.len(), 1);
        verify_certificate(&cert).unwrap();
        // pentagon at q = 1 is outside R (ρ < 1): k = 0 refuses
        let peng = WordEngine::new(kgon_system(5).unwrap());
        let one = WeightVector::uniform(&peng.sys, q(1, 1)).unwrap();
        assert!(matches!(
            cert_vanishing_by_stars(&peng, &one, 0),
            Err(Error::Refused(_))
        ));
    }

    #[test]
    fn pentagon_stars_k1_refuses_at_one() {
        let eng = WordEngine::new(kgon_system(5).unwrap());
        let one = WeightVector::uniform(&eng.sys, q(1, 1)).unwrap();
        // St(t) generates Z/2 × D_∞ with ρ = 1: q = 1 is not strictly inside
        assert!(matches!(cert_vanishing_by_stars(&eng, &one, 1), Err(Error::Refused(_))));
        // but a small q certifies
        let small = WeightVector::uniform(&eng.sys, q(1, 3)).unwrap();
        let cert = cert_vanishing_by_stars(&eng, &small, 1).unwrap();
        assert_eq!(cert.hypotheses.len(), 5);
        verify_certificate(&cert).unwrap();
        assert_eq!(cert.conclusion, "L²_q H_n(Σ) = 0 for n > 1");
    }

    #[test]
    fn kn_certificates_and_refusal() {
        let c43 = cert_atiyah_kn(4, 3).unwrap();
        verify_certificate(&c43).unwrap();
        // 1 completeness + 4 per-vertex star records
        assert_eq!(c43.hypotheses.len(), 5);
        let star = c43.hypotheses.iter().find_map(|h| match &h.evidence {
            Evidence::StarArithmetic { degree, group_order, edge_stabilizer_order, lcm_lhs, .. } => {
                Some((*degree, *group_order, *edge_stabilizer_order, *lcm_lhs))
            }
            _ => None,
        });
        assert_eq!(star, Some((3, 3, 1, Some(6))));

        let c47 = cert_atiyah_kn(4, 7).unwrap();
        verify_certificate(&c47).unwrap();
        // completeness + reduction + 8 vertices of K_8
        assert_eq!(c47.hypotheses.len(), 10);
        assert!(c47
            .hypotheses
            .iter()
            .any(|h| matches!(h.evidence, Evidence::SubgroupReduction { ambient: 8, .. })));

        assert!(matches!(cert_atiyah_kn(5, 3), Err(Error::Refused(_))));
    }

    #[test]
    fn trianglefree_certificates() {
        let (names, edges) = petersen_graph();
        let labeled: Vec<(usize, usize, u32)> = edges.iter().map(|&(a, b)| (a, b, 3)).collect();
        let g = LabeledGraph::new(names, &labeled).unwrap();
        let cert = cert_atiyah_trianglefree(&g, 3).unwrap();
        verify_certificate(&cert).unwrap();
        assert_eq!(cert.hypotheses.len(), 12); // triangle-free + divisibility + 10 vertices
        assert!(cert.hypotheses.iter().all(|h| h.note.is_empty()));

        // 4-cycle at m = 2: certifies, with degree-2 notes on every vertex
        let sq = LabeledGraph::new(
            (0..4).map(|i| format!("s{i}")).collect(),
            &[(0, 1, 2), (1, 2, 2), (2, 3, 2), (3, 0, 2)],
        )
        .unwrap();
        let cert = cert_atiyah_trianglefree(&sq, 2).unwrap();
        verify_certificate(&cert).unwrap();
        let notes = cert.hypotheses.iter().filter(|h| !h.note.is_empty()).count();
        assert_eq!(notes, 4);

        // K4 has triangles: refusal regardless of m
        let k4 = LabeledGraph::new(
            (0..4).map(|i| format!("s{i}")).collect(),
            &[(0, 1, 12), (0, 2, 12), (0, 3, 12), (1, 2, 12), (1, 3, 12), (2, 3, 12)],
        )
        .unwrap();
        assert!(matches!(cert_atiyah_trianglefree(&k4, 12), Err(Error::Refused(_))));
    }

    #[test]
    fn surface_interval_certificate() {
        let (sys, _) = torus_grid_system(4, 4).unwrap();
        let eng = WordEngine::new(sys);
        // ρ ≈ 0.085, ρ_Lk = 2 − √3 ≈ 0.268: q = 1/5 sits inside
        let cert = cert_surface_interval(&eng, &q(1, 5)).unwrap();
        verify_certificate(&cert).unwrap();
        assert_eq!(cert.parameters["q"], "1/5");
        // both endpoints match the frozen closed forms to the stored width
        let lo: Q = cert.parameters["rho-link-lo"].parse().unwrap();
        let hi: Q = cert.parameters["rho-link-hi"].parse().unwrap();
        // 2 − √3 ∈ (lo, hi] and the interval is tight
        let two_minus_sqrt3_sq = |x: &Q| (x.clone() - q(2, 1)) * (x.clone() - q(2, 1)); // (x−2)² vs 3
        assert!(two_minus_sqrt3_sq(&lo) > q(3, 1) && two_minus_sqrt3_sq(&hi) <= q(3, 1));
        assert!(hi - lo <= default_root_width());

        // below ρ: refusal
        assert!(matches!(
            cert_surface_interval(&eng, &q(1, 20)),
            Err(Error::Refused(_))
        ));
        // above the link radius: refusal
        assert!(matches!(
            cert_surface_interval(&eng, &q(1, 2)),
            Err(Error::Refused(_))
        ));
    }

    #[test]
    fn json_round_trip_and_tamper_detection() {
        let cert = cert_atiyah_kn(4, 3).unwrap();
        let js = serde_json::to_string_pretty(&cert).unwrap();
        let back: VanishingCertificate = serde_json::from_str(&js).unwrap();
        assert_eq!(cert, back);
        verify_certificate(&back).unwrap();
        // tampering with the arithmetic is caught
        let mut bad = cert.clone();
        if let Evidence::StarArithmetic { group_order, .. } = &mut bad.hypotheses[1].evidence {
            *group_order = 4;
        }
        assert!(matches!(verify_certificate(&bad), Err(Error::BadCertificate(_))));
        let mut wrong_conclusion = cert.clone();
        wrong_conclusion.conclusion = "something else".into();
        assert!(matches!(verify_certificate(&wrong_conclusion), Err(Error::BadCertificate(_))));
    }
}
