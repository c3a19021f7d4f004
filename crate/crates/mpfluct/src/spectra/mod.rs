//! Matrix constructions and trace functionals: the normalized sample
//! covariance matrix `W = (1/n) Y Y*`, its power and Chebyshev-polynomial
//! traces, and the chiral block embedding with the index relation it induces
//! on the enlarged grid.

mod chiral;
mod covariance;

pub use chiral::{
    chiral_embed, in_diagonal_region, induced_chiral_relation, psi, ChiralMatrix, ChiralRelation,
    MAX_CHIRAL_POINTS, MAX_CHIRAL_TRACE_POWER,
};
pub use covariance::{
    build_w, gamma_trace_from_powers, trace_gamma, trace_powers, CovarianceMatrix,
    MAX_GAMMA_TRACE_ORDER, MAX_TRACE_POWER,
};
