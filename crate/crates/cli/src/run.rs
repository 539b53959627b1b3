//! Command implementations. Each returns the complete stdout text, so output
//! ordering is decided in exactly one place and stays byte-deterministic.

use std::path::Path;

use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use coxl2::certify::{
    cert_atiyah_trianglefree, cert_davis_okun, cert_surface_interval, cert_vanishing_by_stars,
    nerve_graph, render_certificate, verify_certificate, VanishingCertificate,
};
use coxl2::complexes::{cw_betti, link_join_decomposition_check_in, simplicial_betti};
use coxl2::coxeter::{FiniteType, Label, WordEngine};
use coxl2::davis::{
    coxeter_cellulation, euler_identity_check, expected_relative_types,
    ruin_dimension_series_in, weighted_euler,
};
use coxl2::fixtures;
use coxl2::roots::decimal_approx;
use coxl2::series::{default_root_width, growth_rational, radius_of_convergence, RadiusResult};
use coxl2::{Error, Result, Q};

use crate::input::{self, ComplexFile};
use crate::FixtureCmd;

fn yesno(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

fn fmt_finite_type(t: FiniteType) -> String {
    match t {
        FiniteType::A(n) => format!("A{n}"),
        FiniteType::B(n) => format!("B{n}"),
        FiniteType::D(n) => format!("D{n}"),
        FiniteType::E(n) => format!("E{n}"),
        FiniteType::F4 => "F4".into(),
        FiniteType::H(n) => format!("H{n}"),
        FiniteType::I2(m) => format!("I2({m})"),
    }
}

fn join<T: ToString>(xs: &[T], sep: &str) -> String {
    xs.iter().map(ToString::to_string).collect::<Vec<_>>().join(sep)
}

fn pretty(v: &serde_json::Value) -> Result<String> {
    Ok(serde_json::to_string_pretty(v)? + "\n")
}

pub fn classify(path: &Path, json_out: bool) -> Result<String> {
    let sys = input::load_system(path)?;
    let mut classes: Vec<Vec<String>> = vec![vec![]; sys.n_classes];
    for g in 0..sys.n() {
        classes[sys.class_of[g]].push(sys.mat.names[g].clone());
    }
    let full = sys.full_mask();
    let finite = sys.is_spherical(full);
    let type_str = sys
        .finite_components(full)
        .map(|ts| ts.into_iter().map(fmt_finite_type).collect::<Vec<_>>().join(" x "));
    let max_card = sys.spherical.last().map(|m| m.count_ones()).unwrap_or(0);
    let by_card: Vec<usize> = (0..=max_card).map(|k| sys.spherical_of_card(k).count()).collect();

    if json_out {
        return pretty(&json!({
            "generators": sys.mat.names,
            "right_angled": sys.is_right_angled(),
            "conjugacy_classes": classes,
            "finite": finite,
            "finite_type": type_str,
            "order": if finite { Some(sys.order_of(full)?) } else { None },
            "longest_length": if finite { Some(sys.longest_length(full)?) } else { None },
            "spherical_by_cardinality": by_card,
        }));
    }
    let mut out = format!("system: {} generators ({})\n", sys.n(), sys.mat.names.join(" "));
    out += &format!("right-angled: {}\n", yesno(sys.is_right_angled()));
    out += &format!("conjugacy classes: {}\n", sys.n_classes);
    for c in &classes {
        out += &format!("  {{{}}}\n", c.join(","));
    }
    if finite {
        out += &format!(
            "finite: yes ({}, order {}, longest length {})\n",
            type_str.unwrap_or_default(),
            sys.order_of(full)?,
            sys.longest_length(full)?
        );
    } else {
        out += "finite: no\n";
    }
    out += &format!(
        "spherical subsets: {} (by cardinality: {})\n",
        sys.spherical.len(),
        join(&by_card, " ")
    );
    Ok(out)
}

pub fn growth(path: &Path, coeffs: Option<usize>, json_out: bool) -> Result<String> {
    let eng = WordEngine::new(input::load_system(path)?);
    let series = growth_rational(&eng)?;
    let rec = series.reciprocal_urat_uniform().render("t");
    let cs: Option<Vec<String>> =
        coeffs.map(|n| series.census_coefficients(n).iter().map(ToString::to_string).collect());
    if json_out {
        return pretty(&json!({ "reciprocal": rec, "coefficients": cs }));
    }
    let mut out = format!("1/W = {rec}\n");
    if let Some(cs) = cs {
        out += &format!("W coefficients: {}\n", cs.join(" "));
    }
    Ok(out)
}

pub fn rho(path: &Path, ray: Option<&str>, width: Option<&str>, json_out: bool) -> Result<String> {
    let eng = WordEngine::new(input::load_system(path)?);
    let series = growth_rational(&eng)?;
    let ray: Vec<Q> = match ray {
        None => vec![Q::one(); series.nvars()],
        Some(s) => input::parse_rationals(s)?,
    };
    let width = match width {
        None => default_root_width(),
        Some(s) => input::parse_width(s)?,
    };
    match radius_of_convergence(&series, &ray, &width)? {
        RadiusResult::Infinite { .. } => {
            if json_out {
                pretty(&json!({ "finite": false }))
            } else {
                Ok("rho = +inf (W has no positive pole along this ray)\n".into())
            }
        }
        RadiusResult::Finite { lo, hi, poly, .. } => {
            let mid = (lo.clone() + hi.clone()) / coxl2::qi(2);
            let dec = decimal_approx(&mid, 11);
            if json_out {
                return pretty(&json!({
                    "finite": true,
                    "rho_decimal": dec,
                    "lo": lo.to_string(),
                    "hi": hi.to_string(),
                    "isolating_polynomial": poly.render("t"),
                }));
            }
            Ok(format!(
                "rho = {dec}... in [{lo}, {hi}]\nisolating polynomial: {}\n",
                poly.render("t")
            ))
        }
    }
}

pub fn euler(path: &Path, qarg: &str, json_out: bool) -> Result<String> {
    let eng = WordEngine::new(input::load_system(path)?);
    let w = input::parse_weights(&eng.sys, qarg)?;
    let ok = euler_identity_check(&eng, input::ball_cap()?)?;
    let chi = weighted_euler(&eng, &w)?;
    let qs = input::fmt_weights(&w);
    if json_out {
        return pretty(&json!({
            "identity_verified": ok,
            "chi": chi.to_string(),
            "q": qs,
        }));
    }
    Ok(format!(
        "alternating-sum identity 1/W(q) = sum over spherical T of (-1)^|T|/W_T(q): {}\nchi_q = {chi} at q = {qs}\n",
        if ok { "verified" } else { "FAILED" }
    ))
}

pub fn cert_stars(path: &Path, qarg: &str, k: u32) -> Result<VanishingCertificate> {
    let eng = WordEngine::new(input::load_system(path)?);
    let w = input::parse_weights(&eng.sys, qarg)?;
    cert_vanishing_by_stars(&eng, &w, k)
}

pub fn cert_trianglefree(path: &Path, m: u32) -> Result<VanishingCertificate> {
    let sys = input::load_system(path)?;
    cert_atiyah_trianglefree(&nerve_graph(&sys)?, m)
}

pub fn cert_do_reduce(path: &Path, n: usize) -> Result<VanishingCertificate> {
    cert_davis_okun(&input::load_as_cw(path)?, n)
}

pub fn cert_surface(path: &Path, qarg: &str) -> Result<VanishingCertificate> {
    let eng = WordEngine::new(input::load_system(path)?);
    cert_surface_interval(&eng, &input::parse_rational(qarg)?)
}

pub fn cert_verify(path: &Path) -> Result<String> {
    let cert: VanishingCertificate = serde_json::from_str(&std::fs::read_to_string(path)?)?;
    verify_certificate(&cert)?;
    Ok(render_certificate(&cert) + "certificate verified\n")
}

pub fn emit_cert(
    cert: &VanishingCertificate,
    json_out: bool,
    out: Option<&Path>,
) -> Result<String> {
    let js = serde_json::to_string_pretty(cert)? + "\n";
    if let Some(p) = out {
        std::fs::write(p, &js)?;
    }
    Ok(if json_out { js } else { render_certificate(cert) })
}

pub fn ruin(
    path: &Path,
    targ: &str,
    uarg: Option<&str>,
    qarg: &str,
    json_out: bool,
) -> Result<String> {
    let eng = WordEngine::new(input::load_system(path)?);
    let sys = &eng.sys;
    let tmask = input::parse_mask(sys, targ)?;
    let umask = match uarg {
        Some(s) => input::parse_mask(sys, s)?,
        None => sys.full_mask(),
    };
    let w = input::parse_weights(sys, qarg)?;
    let dims = ruin_dimension_series_in(&eng, &w, umask, tmask)?;
    let types = expected_relative_types(sys, umask, tmask, usize::MAX);
    let base = tmask.count_ones() as usize;
    let qs = input::fmt_weights(&w);

    let mut degrees = vec![];
    for (rel, dim) in dims.iter().enumerate() {
        let degree = base + rel;
        let names: Vec<String> = types
            .get(degree)
            .map(|set| set.iter().map(|&v| sys.mask_names(v)).collect())
            .unwrap_or_default();
        degrees.push((degree, names, dim.clone()));
    }
    if json_out {
        let rows: Vec<_> = degrees
            .iter()
            .map(|(d, names, dim)| {
                json!({ "degree": d, "types": names, "dim": dim.to_string() })
            })
            .collect();
        return pretty(&json!({
            "T": sys.mask_names(tmask),
            "U": sys.mask_names(umask),
            "q": qs,
            "degrees": rows,
        }));
    }
    let mut out = format!(
        "ruin inside U = {} relative to T = {}\n",
        sys.mask_names(umask),
        sys.mask_names(tmask)
    );
    out += "types by degree:\n";
    for (d, names, _) in &degrees {
        out += &format!("  {d}: {}\n", names.join(" "));
    }
    out += &format!("weighted dimensions at q = {qs}:\n");
    for (d, _, dim) in &degrees {
        out += &format!("  dim C_{d} = {dim}\n");
    }
    Ok(out)
}

#[allow(clippy::too_many_arguments)]
pub fn davis_ball(
    path: &Path,
    radius: usize,
    qarg: &str,
    check_adjoint: bool,
    homology: bool,
    seed: u64,
    json_out: bool,
) -> Result<String> {
    let eng = WordEngine::new(input::load_system(path)?);
    let w = input::parse_weights(&eng.sys, qarg)?;
    let complex = coxeter_cellulation(&eng, &w, radius, input::ball_cap()?)?;
    let dims = complex.dims();
    let interior: Vec<usize> =
        complex.interior.iter().map(|l| l.iter().filter(|&&b| b).count()).collect();
    let qs = input::fmt_weights(&w);

    let mut adjoint_pairs: Option<usize> = None;
    if check_adjoint {
        let top = complex.top();
        for k in 1..top {
            if !complex.boundary(k).mul(&complex.boundary(k + 1)).is_zero() {
                return Err(Error::other(format!("dd != 0 in degree {k}")));
            }
            if !complex.boundary_q(k).mul(&complex.boundary_q(k + 1)).is_zero() {
                return Err(Error::other(format!("d^q d^q != 0 in degree {k}")));
            }
        }
        let mut done = 0usize;
        if top >= 1 && interior.iter().sum::<usize>() > 0 {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let rand_q = |rng: &mut ChaCha8Rng| {
                coxl2::q(rng.gen_range(-9..=9), rng.gen_range(1..=4))
            };
            let mut attempts = 0usize;
            while done < 100 && attempts < 10_000 {
                attempts += 1;
                let k = 1 + attempts % top;
                let f: Vec<Q> =
                    (0..complex.cells[k].len()).map(|_| rand_q(&mut rng)).collect();
                let g: Vec<Q> = (0..complex.cells[k - 1].len())
                    .map(|i| {
                        if complex.interior[k - 1][i] {
                            rand_q(&mut rng)
                        } else {
                            Q::zero()
                        }
                    })
                    .collect();
                if g.iter().all(|x| x.is_zero()) {
                    continue;
                }
                let lhs = complex.inner(k - 1, &complex.boundary_q(k).apply(&f), &g);
                let rhs = complex.inner(k, &f, &complex.coboundary(k - 1).apply(&g));
                if lhs != rhs {
                    return Err(Error::other(format!("adjointness failed in degree {k}")));
                }
                done += 1;
            }
        }
        adjoint_pairs = Some(done);
    }
    let betti = if homology { Some(complex.homology_q()?) } else { None };

    if json_out {
        return pretty(&json!({
            "radius": radius,
            "q": qs,
            "cells_by_dimension": dims,
            "interior_by_dimension": interior,
            "boundary_squares_zero": check_adjoint.then_some(true),
            "adjoint_pairs": adjoint_pairs,
            "seed": check_adjoint.then_some(seed),
            "homology": betti,
        }));
    }
    let mut out = format!("truncated complex: radius {radius}, q = {qs}\n");
    out += &format!("cells by dimension: {}\n", join(&dims, " "));
    out += &format!("interior cells by dimension: {}\n", join(&interior, " "));
    if check_adjoint {
        out += "dd = 0 and d^q d^q = 0: ok\n";
        match adjoint_pairs {
            Some(0) => out += "interior adjointness: no interior pairs to sample\n",
            Some(n) => {
                out += &format!("interior adjointness: {n} sampled pairs ok (seed {seed})\n")
            }
            None => {}
        }
    }
    if let Some(b) = betti {
        out += &format!("homology of (C, d^q): {}\n", join(&b, " "));
    }
    Ok(out)
}

pub fn subdivide(path: &Path) -> Result<String> {
    Ok(input::load_as_cw(path)?.barycentric_subdivision().print_simp())
}

pub fn links(path: &Path, json_out: bool) -> Result<String> {
    let x = input::load_as_cw(path)?;
    let bx = x.barycentric_subdivision();
    let p = x.face_poset();
    let mut rows = vec![];
    for (i, c) in x.cells.iter().enumerate() {
        let ok = link_join_decomposition_check_in(&bx, &p, i)?;
        rows.push((c.name.clone(), c.dim, ok));
    }
    let pass = rows.iter().filter(|r| r.2).count();
    if json_out {
        let checks: Vec<_> = rows
            .iter()
            .map(|(name, dim, ok)| json!({ "cell": name, "dim": dim, "join_ok": ok }))
            .collect();
        return pretty(&json!({ "checks": checks, "passed": pass, "total": rows.len() }));
    }
    let mut out = String::from("link join decomposition, cell by cell:\n");
    for (name, dim, ok) in &rows {
        out += &format!("  {name} (dim {dim}): {}\n", if *ok { "ok" } else { "FAIL" });
    }
    out += &format!("summary: {pass}/{} ok\n", rows.len());
    Ok(out)
}

pub fn homology(path: &Path, unreduced: bool, json_out: bool) -> Result<String> {
    let b = match input::load_complex(path)? {
        ComplexFile::Simp(k) => simplicial_betti(&k, !unreduced),
        ComplexFile::Cw(x) => cw_betti(&x, !unreduced),
    };
    if json_out {
        return pretty(&json!({
            "reduced": b.reduced,
            "minus_one": b.minus_one,
            "ranks": b.ranks,
        }));
    }
    Ok(format!("{b}"))
}

pub fn fixture(cmd: FixtureCmd) -> Result<String> {
    /// boundary families precompute their cell count against the cap
    fn guard_cells(family: &str, count: Option<usize>) -> Result<()> {
        let cap = input::ball_cap()?;
        match count {
            Some(c) if c <= cap => Ok(()),
            c => Err(Error::ResourceCap {
                context: format!("{family} cells"),
                limit: cap,
                reached: c.unwrap_or(usize::MAX),
            }),
        }
    }
    match cmd {
        FixtureCmd::Kgon { k } => Ok(fixtures::kgon_system(k)?.mat.print()),
        FixtureCmd::Kn { n, m } => Ok(fixtures::complete_graph_system(n, m)?.mat.print()),
        FixtureCmd::Dihedral { label } => {
            let l = if label == "inf" {
                Label::Inf
            } else {
                Label::Fin(label.parse().map_err(|_| {
                    Error::InvalidMatrix(format!(
                        "dihedral label must be an integer >= 2 or `inf`, got `{label}`"
                    ))
                })?)
            };
            Ok(fixtures::dihedral_system(l)?.mat.print())
        }
        FixtureCmd::Petersen { m } => {
            let (names, edges) = fixtures::petersen_graph();
            Ok(fixtures::graph_label_system(names, &edges, m)?.mat.print())
        }
        FixtureCmd::TorusGrid { g, h, complex } => {
            if complex {
                Ok(fixtures::torus_grid_complex(g, h)?.print_simp())
            } else {
                Ok(fixtures::torus_grid_system(g, h)?.0.mat.print())
            }
        }
        FixtureCmd::CubeBoundary { n } => {
            if !(1..=16).contains(&n) {
                return Err(Error::InvalidComplex(format!(
                    "cube boundary needs 1 <= n <= 16, got {n}"
                )));
            }
            guard_cells("cube boundary", 3usize.checked_pow(n as u32).map(|c| c - 1))?;
            Ok(fixtures::cube_boundary_cw(n).print_cw())
        }
        FixtureCmd::SimplexBoundary { n } => {
            if n < 1 {
                return Err(Error::InvalidComplex("simplex boundary needs n >= 1".into()));
            }
            guard_cells(
                "simplex boundary",
                1usize.checked_shl(n as u32 + 1).map(|c| c - 2),
            )?;
            Ok(fixtures::simplex_boundary_cw(n).print_cw())
        }
        FixtureCmd::CrosspolytopeBoundary { n } => {
            if !(1..=16).contains(&n) {
                return Err(Error::InvalidComplex(format!(
                    "cross-polytope boundary needs 1 <= n <= 16, got {n}"
                )));
            }
            guard_cells("cross-polytope boundary", 3usize.checked_pow(n as u32).map(|c| c - 1))?;
            Ok(fixtures::crosspolytope_boundary_cw(n).print_cw())
        }
    }
}
