//! Construction and certification of the curves `(T_3, y, z)`.
//!
//! For `N = 2n+1`, the plane part comes from a deformation `A` of `C_n` with planted
//! roots `0, ±δ_i`; `y` is the divided-difference preimage of `A`. The height `z` is the
//! preimage of an even `B` taking the values `(-1)^i` at the same roots.

mod basis;
mod deform;
mod height;
mod oracle;
mod plane;
mod synth;

pub use basis::{CnBasis, CnTildeBasis};
pub use deform::{
    auto_nodes, certify_a, default_epsilon, solve_deformation, Deformation, NodeChoice, NodeSet,
    MAX_HALVINGS,
};
pub use height::{
    check_coincidence, is_t3, lift_height, node_sign, solve_height, verify_space, Height,
    SpaceCurve, COINCIDENCE_TOL,
};
pub use oracle::{crossing_oracle, crossing_oracle_pairs, DEFAULT_GRID};
pub use plane::{
    crossing_parameters, crossings, crossings_at, lift_plane, pair_at, x_cheb, x_poly, Crossing,
    CrossingReport, PlaneCurve, ORDERING_MARGIN, REFINE_BITS, VALUE_BITS,
};
pub use synth::{synthesize, SynthOptions, Synthesis};

/// `(deg x, deg y, deg z) = (3, N + 2⌊N/4⌋ + 1, N + 2⌊(N+1)/4⌋)`.
pub fn degrees(n_crossings: usize) -> (usize, usize, usize) {
    (
        3,
        n_crossings + 2 * (n_crossings / 4) + 1,
        n_crossings + 2 * ((n_crossings + 1) / 4),
    )
}
