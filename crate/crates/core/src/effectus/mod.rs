//! Corners, filters, pure maps, the polar decomposition and diamond adjoints.

pub mod corner;
pub mod dagger;
pub mod diamond;
pub mod polar;
pub mod witness;

pub use corner::{
    corner_map, corner_of_ceiling, corner_of_floor, mediate_corner, mediate_filter, peirce_corner, standard_corner,
    standard_filter, CornerAlgebra, EFFECT_ZERO,
};
pub use diamond::{
    check_pure_diamond_positive_normal_form, diamond, diamond_lower, diamond_table, galois_violation,
    idempotent_lattice, is_diamond_positive_witnessed, is_diamond_self_adjoint, support_noise,
};
pub use polar::{polar_decompose, PolarClaims, PolarDecomposition};
pub use witness::{adjoint_witness, compose_pure, exchange, sequential_product, PurityWitness, WitnessDescriptor};
