//! Spectral radius, Perron vectors, quotient closed forms and the
//! bound checks built on them.

pub mod bounds;
pub mod identity;
pub mod perron;
pub mod quotient;

pub use bounds::{
    check_lemma22, fan_free_bound, runner_up_lower_bound, Dominance, Lemma22Options, Lemma22Report,
};
pub use identity::{edge_bound_at_extremal, walk_identity_residual, EdgeBoundCheck};
pub use perron::{
    compare_rho, perron, perron_with_cap, PerronData, RhoOrder, DEFAULT_MARGIN, DEFAULT_TOL,
    MAX_ITERATIONS,
};
pub use quotient::{characteristic_polynomial, largest_real_root, rho_exact_family, QuotientMatrix};
