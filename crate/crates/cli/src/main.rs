//! `coxl2`: exact computations on Coxeter systems with deterministic,
//! diffable output. Identical inputs produce byte-identical reports.
//!
//! Exit codes: 0 success, 2 refusal (a hypothesis does not hold), 3 resource
//! cap exceeded, 64 usage error, 1 anything else. The enumeration cap is
//! configurable through `COXL2_BALL_CAP`.

use std::path::PathBuf;

use clap::{Parser, Subcommand};

mod input;
mod run;

#[derive(Parser)]
#[command(
    name = "coxl2",
    version,
    about = "Exact growth series, weighted chain calculus, and vanishing certificates for Coxeter systems"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Conjugacy classes, finite type, and spherical subsets of a system
    Classify {
        /// `coxeter v1` file
        system: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Growth series W(t), printed as a reduced rational function
    Growth {
        system: PathBuf,
        /// also print the first N coefficients of W(t)
        #[arg(long, value_name = "N")]
        coeffs: Option<usize>,
        #[arg(long)]
        json: bool,
    },
    /// Radius of convergence of W along a ray, with a certified interval
    Rho {
        system: PathBuf,
        /// per-class ray, comma separated (default: all ones)
        #[arg(long, value_name = "P/Q,...")]
        ray: Option<String>,
        /// width of the isolating interval (default 1/10^13)
        #[arg(long, value_name = "P/Q")]
        width: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Alternating-sum identity over spherical subsets, and chi_q
    Euler {
        system: PathBuf,
        /// uniform rational, or one value per class / per generator
        #[arg(long, value_name = "P/Q[,...]", default_value = "1")]
        q: String,
        #[arg(long)]
        json: bool,
    },
    /// Star-region certificate: cohomology vanishes above degree k
    VanishStars {
        system: PathBuf,
        #[arg(long, value_name = "P/Q[,...]", default_value = "1")]
        q: String,
        /// degree bound (certificate covers degrees > k)
        #[arg(long, default_value_t = 1)]
        k: u32,
        #[arg(long)]
        json: bool,
        /// also write the certificate JSON to FILE
        #[arg(long, value_name = "FILE")]
        out: Option<PathBuf>,
    },
    /// Relative cell types and weighted dimensions of a ruin
    Ruin {
        system: PathBuf,
        /// type subset: comma-separated generator names
        #[arg(long = "T", value_name = "GEN,...")]
        t: String,
        /// ambient subset (default: all generators)
        #[arg(long = "U", value_name = "GEN,...")]
        u: Option<String>,
        #[arg(long, value_name = "P/Q[,...]", default_value = "1")]
        q: String,
        #[arg(long)]
        json: bool,
    },
    /// Truncated weighted coset complex: cells, checks, homology
    DavisBall {
        system: PathBuf,
        /// truncation radius (word length)
        #[arg(long)]
        radius: usize,
        #[arg(long, value_name = "P/Q[,...]", default_value = "1")]
        q: String,
        /// verify dd = 0, d^q d^q = 0, and sampled interior adjointness
        #[arg(long)]
        check_adjoint: bool,
        /// betti numbers of (C, d^q)
        #[arg(long)]
        homology: bool,
        /// RNG seed for the sampled adjointness pairs
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Barycentric subdivision, emitted as a `simp v1` file
    Subdivide {
        /// `simp v1` or `cw v1` file
        complex: PathBuf,
    },
    /// Link join-decomposition check for every cell of a complex
    Links {
        complex: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Exact homology of a complex (reduced unless --unreduced)
    Homology {
        complex: PathBuf,
        #[arg(long)]
        unreduced: bool,
        #[arg(long)]
        json: bool,
    },
    /// Emit or re-validate vanishing certificates
    Cert {
        #[command(subcommand)]
        family: Option<CertCmd>,
        /// re-validate a certificate JSON file instead of emitting one
        #[arg(long, value_name = "FILE")]
        verify: Option<PathBuf>,
        #[arg(long, global = true)]
        json: bool,
        /// also write the certificate JSON to FILE
        #[arg(long, value_name = "FILE", global = true)]
        out: Option<PathBuf>,
    },
    /// Built-in systems and complexes in their text formats
    Fixtures {
        #[command(subcommand)]
        family: FixtureCmd,
    },
}

#[derive(Subcommand)]
enum CertCmd {
    /// q inside every star region: vanishing above degree k
    Stars {
        system: PathBuf,
        #[arg(long, value_name = "P/Q[,...]", default_value = "1")]
        q: String,
        #[arg(long, default_value_t = 1)]
        k: u32,
    },
    /// complete nerve on n generators with uniform label m
    Kn {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: u32,
    },
    /// triangle-free nerve with uniform label m
    Trianglefree {
        system: PathBuf,
        #[arg(long)]
        m: u32,
    },
    /// manifold reduction for an (n-1)-sphere cellulation, n = 6 or 8
    DoReduce {
        complex: PathBuf,
        #[arg(long)]
        n: usize,
    },
    /// flag-surface interval certificate at uniform rational q
    Surface {
        system: PathBuf,
        #[arg(long, value_name = "P/Q", default_value = "1")]
        q: String,
    },
}

#[derive(Subcommand)]
enum FixtureCmd {
    /// right-angled k-gon system (k >= 4)
    Kgon { k: usize },
    /// complete-graph system on n generators, uniform label m
    Kn { n: usize, m: u32 },
    /// dihedral system; label is an integer >= 2 or `inf`
    Dihedral { label: String },
    /// system whose nerve is the Petersen graph, uniform label m
    Petersen { m: u32 },
    /// g x h flag torus triangulation and its right-angled system
    TorusGrid {
        g: usize,
        h: usize,
        /// emit the triangulation (`simp v1`) instead of the system
        #[arg(long)]
        complex: bool,
    },
    /// boundary of the n-cube as `cw v1`
    CubeBoundary { n: usize },
    /// boundary of the n-simplex as `cw v1`
    SimplexBoundary { n: usize },
    /// boundary of the n-dimensional cross-polytope as `cw v1`
    CrosspolytopeBoundary { n: usize },
}

fn usage_bail(msg: &str) -> ! {
    eprintln!("usage error: {msg}");
    std::process::exit(64);
}

fn dispatch(cmd: Cmd) -> coxl2::Result<String> {
    match cmd {
        Cmd::Classify { system, json } => run::classify(&system, json),
        Cmd::Growth { system, coeffs, json } => run::growth(&system, coeffs, json),
        Cmd::Rho { system, ray, width, json } => {
            run::rho(&system, ray.as_deref(), width.as_deref(), json)
        }
        Cmd::Euler { system, q, json } => run::euler(&system, &q, json),
        Cmd::VanishStars { system, q, k, json, out } => {
            let cert = run::cert_stars(&system, &q, k)?;
            run::emit_cert(&cert, json, out.as_deref())
        }
        Cmd::Ruin { system, t, u, q, json } => run::ruin(&system, &t, u.as_deref(), &q, json),
        Cmd::DavisBall { system, radius, q, check_adjoint, homology, seed, json } => {
            run::davis_ball(&system, radius, &q, check_adjoint, homology, seed, json)
        }
        Cmd::Subdivide { complex } => run::subdivide(&complex),
        Cmd::Links { complex, json } => run::links(&complex, json),
        Cmd::Homology { complex, unreduced, json } => run::homology(&complex, unreduced, json),
        Cmd::Cert { family, verify, json, out } => match (family, verify) {
            (None, Some(file)) => run::cert_verify(&file),
            (Some(_), Some(_)) => {
                usage_bail("--verify cannot be combined with a certificate family")
            }
            (None, None) => usage_bail(
                "expected a certificate family (stars|kn|trianglefree|do-reduce|surface) or --verify FILE",
            ),
            (Some(fam), None) => {
                let cert = match fam {
                    CertCmd::Stars { system, q, k } => run::cert_stars(&system, &q, k)?,
                    CertCmd::Kn { n, m } => coxl2::certify::cert_atiyah_kn(n, m)?,
                    CertCmd::Trianglefree { system, m } => run::cert_trianglefree(&system, m)?,
                    CertCmd::DoReduce { complex, n } => run::cert_do_reduce(&complex, n)?,
                    CertCmd::Surface { system, q } => run::cert_surface(&system, &q)?,
                };
                run::emit_cert(&cert, json, out.as_deref())
            }
        },
        Cmd::Fixtures { family } => run::fixture(family),
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                std::process::exit(0);
            }
            eprint!("{e}");
            std::process::exit(64);
        }
    };
    match dispatch(cli.cmd) {
        Ok(text) => print!("{text}"),
        Err(e) => {
            eprintln!("error: {e}");
            std::process::exit(e.exit_code());
        }
    }
}
