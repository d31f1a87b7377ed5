//! Normal bundles of rational normal curves on hypersurfaces.

pub mod binforms;
pub mod construct;
pub mod error;
pub mod matrix;
pub mod mpoly;
pub mod normalmap;
pub mod rnc;
pub mod sampler;
pub mod scalars;
pub mod splitting;
pub mod strata;

pub use binforms::{bf_arith, bf_gcd, mult_matrix, BinForm, BinOp};
pub use construct::{
    construct, construct_d3, construct_quadric, construct_quadric_low_corank, corank_bound,
    low_corank_search, quad_corank, quad_matrix, schur_rank, smooth_along_curve,
    verify_grid_point, ConstructionReport, GridCheck, LowCorankOutcome, QuadMat,
    L_SEARCH_ATTEMPTS, L_SEARCH_SEED,
};
pub use error::{Error, Result};
pub use matrix::Matrix;
pub use mpoly::{mp_arith, MPoly, MpOp};
pub use scalars::{scalar_arith, ArithOp, FieldSpec, Scalar, DEFAULT_PRIME};
pub use rnc::{CurveContext, IdealDecomposition};
pub use sampler::{
    random_ideal_element, sample_distribution, trial_rng, FrequencyTable, SampleConfig,
};
pub use strata::{
    census, dim_sigma, h1_hom_normal, quadric_phi_dims, stratum_report, QuadricPhiDims, StratumReport,
};
pub use normalmap::{phi_codomain_dim, phi_matrix, phi_matrix_on, psi_from_poly, PsiMap};
pub use splitting::{
    balanced_type, enumerate_types, expected_total, h0_line, h0_twist, h1_end, h1_line,
    is_admissible, splitting_report, splitting_type, SplitType, SplittingReport, TwistProfile,
};
