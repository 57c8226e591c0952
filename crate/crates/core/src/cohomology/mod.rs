//! Factor sets, their cohomology, and the multiplier of a brace.

mod factor_set;
mod h2;
mod maps;
mod system;

pub use factor_set::{BraceFactorSet, FactorSetViolation, GroupFactorSet};
pub use h2::{
    connecting_image, group_connecting_image, group_h2, group_schur_multiplier,
    group_schur_multiplier_at, h2b, schur_multiplier, schur_multiplier_at, BraceCohomology,
    BraceMultiplier, Cocycle, CohomologyGroup, CohomologyKind, GroupCohomology, GroupMultiplier,
    MultiplierResult,
};
pub use maps::{
    characters, delta_kernels, delta_maps, hochschild_serre_check, inflation, multiplier_for,
    restriction, transgression, transgression_images, DeltaKernels, DeltaMaps, ExactnessReport,
    PositionReport,
};
pub use system::{assemble_brace_cocycle_system, brace_coboundary_generators, assemble_group_cocycle_system, CocycleSystem};
