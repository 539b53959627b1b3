//! Vanishing certificates: machine-checkable records that a weighted
//! L²-Betti number vanishes (or is concentrated in one degree), together
//! with the graph-automorphism and star-transitivity arithmetic that the
//! hypotheses rest on. A certificate carries enough evidence to be
//! re-validated without recomputing anything about the group.

pub mod certs;
pub mod graphaut;
pub mod reduce;
pub mod reports;

pub use certs::{
    cert_atiyah_kn, cert_atiyah_trianglefree, cert_surface_interval, cert_vanishing_by_stars,
    expected_conclusion, render_certificate, verify_certificate, verify_evidence, Evidence,
    Hypothesis, VanishingCertificate, THEOREM_IDS,
};
pub use graphaut::{
    automorphisms, graph_aut, nerve_graph, LabeledGraph, LabeledGraphAutGroup,
};
pub use reduce::{
    cert_davis_okun, davis_okun_reduce, ReduceReport, StageReport, VertexCheck,
};
pub use reports::{
    alternating_label_preserving, star_report_on_graph, star_transitivity_report, StarReport,
};
