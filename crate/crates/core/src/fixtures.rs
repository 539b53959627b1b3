//! Built-in example systems and complexes.
//!
//! Everything here is generated deterministically and round-trips through the
//! text formats bit-exactly; the CLI `fixtures` subcommand is a thin wrapper
//! over these builders.

use itertools::Itertools;

use crate::complexes::cw::{CwCell, RegularCWComplex};
use crate::complexes::simplicial::{boundary_simplex, full_simplex, SimplicialComplex};
use crate::coxeter::{CoxeterMatrix, CoxeterSystem, Label};
use crate::error::{Error, Result};

/// Coxeter system whose nerve is the given graph: label `m` on edges, ∞
/// between non-adjacent generators.
pub fn graph_label_system(
    names: Vec<String>,
    edges: &[(usize, usize)],
    m: u32,
) -> Result<CoxeterSystem> {
    let mut mat = CoxeterMatrix::new(names)?;
    for &(a, b) in edges {
        mat.set(a as u8, b as u8, Label::Fin(m))?;
    }
    CoxeterSystem::new(mat)
}

/// Right-angled system on a k-cycle: adjacent generators commute, all other
/// pairs are free. Rejected for k < 4 (the triangle and smaller are not the
/// polygon systems the surface computations need: a commuting 3-cycle is
/// finite and the associated links stop being k-gons with k ≥ 4).
pub fn kgon_system(k: usize) -> Result<CoxeterSystem> {
    if k < 4 {
        return Err(Error::InvalidMatrix(format!("k-gon fixture needs k >= 4, got {k}")));
    }
    let names = (0..k).map(|i| format!("s{i}")).collect();
    let edges: Vec<(usize, usize)> = (0..k).map(|i| (i, (i + 1) % k)).collect();
    graph_label_system(names, &edges, 2)
}

/// All generator pairs joined with the same label m (nerve = complete graph).
pub fn complete_graph_system(n: usize, m: u32) -> Result<CoxeterSystem> {
    let names = (0..n).map(|i| format!("s{i}")).collect();
    let edges: Vec<(usize, usize)> = (0..n).tuple_combinations().collect();
    graph_label_system(names, &edges, m)
}

/// Two generators with the given label (`Label::Inf` for the infinite
/// dihedral group).
pub fn dihedral_system(label: Label) -> Result<CoxeterSystem> {
    let mut mat = CoxeterMatrix::new(vec!["s".into(), "t".into()])?;
    mat.set(0, 1, label)?;
    CoxeterSystem::new(mat)
}

/// Symmetric group S₄ as a Coxeter system (linear diagram 3–3).
pub fn a3_system() -> CoxeterSystem {
    let mut mat = CoxeterMatrix::uniform(vec!["s".into(), "t".into(), "u".into()], 2).unwrap();
    mat.set(0, 1, Label::Fin(3)).unwrap();
    mat.set(1, 2, Label::Fin(3)).unwrap();
    CoxeterSystem::new(mat).unwrap()
}

/// Hyperoctahedral group of rank 3 (linear diagram 4–3).
pub fn b3_system() -> CoxeterSystem {
    let mut mat = CoxeterMatrix::uniform(vec!["s".into(), "t".into(), "u".into()], 2).unwrap();
    mat.set(0, 1, Label::Fin(4)).unwrap();
    mat.set(1, 2, Label::Fin(3)).unwrap();
    CoxeterSystem::new(mat).unwrap()
}

/// (ℤ/2)³: three commuting involutions.
pub fn z2_cubed_system() -> CoxeterSystem {
    let mat = CoxeterMatrix::uniform(vec!["s".into(), "t".into(), "u".into()], 2).unwrap();
    CoxeterSystem::new(mat).unwrap()
}

/// Flag triangulation of the torus: g×h grid with one diagonal per square.
/// Needs g, h ≥ 4, otherwise wraparound creates empty triangles.
pub fn torus_grid_complex(g: usize, h: usize) -> Result<SimplicialComplex> {
    if g < 4 || h < 4 {
        return Err(Error::InvalidComplex(format!(
            "torus grid needs g, h >= 4 for flagness, got {g}×{h}"
        )));
    }
    let labels = (0..g)
        .cartesian_product(0..h)
        .map(|(i, j)| format!("v{i}x{j}"))
        .collect();
    let at = |i: usize, j: usize| (i % g) * h + (j % h);
    let mut faces = vec![];
    for i in 0..g {
        for j in 0..h {
            let (a, b, c, d) = (at(i, j), at(i + 1, j), at(i, j + 1), at(i + 1, j + 1));
            faces.push(vec![a, b, d]);
            faces.push(vec![a, d, c]);
        }
    }
    SimplicialComplex::from_maximal(labels, faces)
}

/// Right-angled system whose nerve is a torus triangulation, together with
/// the triangulation itself.
pub fn torus_grid_system(g: usize, h: usize) -> Result<(CoxeterSystem, SimplicialComplex)> {
    let l = torus_grid_complex(g, h)?;
    let edges: Vec<(usize, usize)> = l
        .face_set()
        .into_iter()
        .filter(|f| f.len() == 2)
        .map(|f| (f[0], f[1]))
        .collect();
    let sys = graph_label_system(l.labels.clone(), &edges, 2)?;
    Ok((sys, l))
}

fn cube_cells(n: usize, include_top: bool) -> Vec<CwCell> {
    assert!(n >= 1 && n <= 16, "cube fixture dimension out of range");
    let full: u32 = (1 << n) - 1;
    // (free coordinates, values of the fixed ones): name like "0*1"
    let name_of = |free: u32, vals: u32| -> String {
        (0..n)
            .map(|i| {
                if free >> i & 1 == 1 {
                    '*'
                } else if vals >> i & 1 == 1 {
                    '1'
                } else {
                    '0'
                }
            })
            .collect()
    };
    let mut ids: Vec<(u32, u32)> = vec![];
    for free in 0..=full {
        if !include_top && free == full {
            continue;
        }
        let fixed = full & !free;
        // enumerate values on the fixed coordinates only
        let mut vals = 0u32;
        loop {
            ids.push((free, vals));
            // next subset of `fixed`
            vals = (vals.wrapping_sub(fixed)) & fixed;
            if vals == 0 {
                break;
            }
        }
    }
    ids.sort_by_key(|&(free, vals)| (free.count_ones(), name_of(free, vals)));
    let index: std::collections::BTreeMap<(u32, u32), usize> =
        ids.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    ids.iter()
        .map(|&(free, vals)| {
            let mut boundary = vec![];
            let mut r = 0;
            for a in 0..n {
                if free >> a & 1 == 0 {
                    continue;
                }
                let nf = free & !(1 << a);
                let sign = if r % 2 == 0 { 1 } else { -1 };
                boundary.push((index[&(nf, vals | 1 << a)], sign));
                boundary.push((index[&(nf, vals)], -sign));
                r += 1;
            }
            CwCell { name: name_of(free, vals), dim: free.count_ones(), boundary }
        })
        .collect()
}

/// The solid n-cube as a regular CW complex (all faces, top cell included).
pub fn cube_cw(n: usize) -> RegularCWComplex {
    RegularCWComplex::new(cube_cells(n, true), true).expect("cubical incidences are valid")
}

/// Boundary of the n-cube: a PL cellulation of the (n−1)-sphere with
/// Σ_k 2^{n−k} C(n,k) cells.
pub fn cube_boundary_cw(n: usize) -> RegularCWComplex {
    RegularCWComplex::new(cube_cells(n, false), true).expect("cubical incidences are valid")
}

/// The solid n-simplex as a regular CW complex.
pub fn simplex_cw(n: usize) -> RegularCWComplex {
    let mut x = RegularCWComplex::from_simplicial(&full_simplex(n + 1))
        .expect("simplicial incidences are valid");
    x.pl_asserted = true;
    x
}

/// Boundary of the n-simplex as a regular CW complex.
pub fn simplex_boundary_cw(n: usize) -> RegularCWComplex {
    let mut x = RegularCWComplex::from_simplicial(&boundary_simplex(n))
        .expect("simplicial incidences are valid");
    x.pl_asserted = true;
    x
}

/// Boundary of the n-dimensional cross-polytope (octahedron family) as a
/// regular CW complex; vertices p0…, m0… are antipodal pairs.
pub fn crosspolytope_boundary_cw(n: usize) -> RegularCWComplex {
    let labels: Vec<String> = (0..n)
        .map(|i| format!("p{i}"))
        .chain((0..n).map(|i| format!("m{i}")))
        .collect();
    let faces = (0..n)
        .map(|_| [0usize, 1])
        .multi_cartesian_product()
        .map(|signs| {
            signs
                .iter()
                .enumerate()
                .map(|(axis, &s)| axis + s * n)
                .collect::<Vec<_>>()
        })
        .collect();
    let k = SimplicialComplex::from_maximal(labels, faces).expect("antipodal-free subsets");
    let mut x = RegularCWComplex::from_simplicial(&k).expect("simplicial incidences are valid");
    x.pl_asserted = true;
    x
}

/// The Petersen graph: outer 5-cycle o0…o4, inner pentagram i0…i4, spokes.
/// 3-regular with girth 5.
pub fn petersen_graph() -> (Vec<String>, Vec<(usize, usize)>) {
    let labels = (0..5)
        .map(|i| format!("o{i}"))
        .chain((0..5).map(|i| format!("i{i}")))
        .collect();
    let mut edges = vec![];
    for k in 0..5 {
        edges.push((k, (k + 1) % 5));
        edges.push((k, k + 5));
        edges.push((k + 5, (k + 2) % 5 + 5));
    }
    (labels, edges)
}
