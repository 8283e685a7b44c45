//! Explicit sets and the pipelines that certify their properties.

mod compose;
mod gamma;
mod lift;
mod usc;

pub use compose::{compose_spectral, compose_tiling, Composed, Composition};
pub use gamma::{build_gamma, extend_by_zero, gamma_nonspectral_certificate, GammaBundle, GammaVariant};
pub use lift::{
    embed, embed_dual, enlarged_group, grid, lift, lift_zero_structure_check, lifted_obstruction_check,
    LIFT_ORDER_LIMIT, ZERO_STRUCTURE_CASES,
};
pub use usc::{
    build_e, build_k, build_usc_certificate, even_subgroup, find_covering_permutations, k_prime, permutations,
    usc_group, CoveringChoice, UscBundle, KERNEL_COUNT, K_COLUMNS, K_PRIME_NUMERATORS,
};
