//! Spanning-tree counts of bicirculant graphs by three independent routes:
//! the Matrix-Tree determinant, exact resultant closed forms, and a
//! high-precision Chebyshev product; plus their arithmetic structure,
//! Mahler-measure asymptotics, and rational generating functions.

pub mod arithmetic;
pub mod bigjson;
pub mod closed_form;
pub mod error;
pub mod genfun;
pub mod linalg;
pub mod mahler;
pub mod model;
pub mod poly;

pub use arithmetic::{arithmetic_profile, verify_square_structure, ArithmeticProfile, Branch, SquareWitness};
pub use closed_form::{
    closed_form_tau, degeneracy_report, spectral_system, tree_count_by_oracle, tree_count_chebyshev, tree_count_closed,
    Method, SpectralSystem, TreeCount,
};
pub use error::{Error, Result};
pub use genfun::{
    analyze, family_scale, find_recurrence, genfun, tau_sequence, verify_symmetry, GenfunAnalysis, RationalGF,
    Recurrence, TauSequence, DEFAULT_MAX_ORDER,
};
pub use linalg::{det_fraction_free, laplacian, tree_count_oracle, IntegerMatrix};
pub use mahler::{
    asymptotic_prediction, convergence_report, growth_base, mahler_quadrature, mahler_root_product, MahlerEstimate,
};
pub use model::{
    check_connectivity, classify_family, is_connected, realize, validate_spec, ConnectionSpec, Connectivity, Family,
    GraphRealization, RawSpec,
};
pub use poly::{IntPoly, SymmetricLaurentPoly};
