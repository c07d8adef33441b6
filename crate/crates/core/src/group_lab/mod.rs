//! Explicit finite p-groups: multiplication tables, the augmentation-ideal
//! filtration of `F_p[G]`, dimension subgroups, Magnus expansions and Fox
//! derivatives of relators, and a direct computation of the kernel
//! dimensions `e_n` of the Jacobian sequence.
//!
//! Everything here works with concrete vectors over `F_p`, independently
//! of the generating-function machinery in [`crate::jennings`] and
//! [`crate::validity`], so the two can be checked against each other.

pub mod filtration;
pub mod fp;
pub mod input;
pub mod magnus;
pub mod presentation;
pub mod table;

pub use filtration::{
    abelian_power_convention, augmentation_powers, dimension_subgroups, lazard_check, lazard_subgroups,
    satisfies_filtration_axioms, AugmentationFiltration, DimensionSubgroups, LazardReport, PowerConvention,
};
pub use input::{parse_group_input, GroupInput};
pub use magnus::{fox_derivative, magnus_embed, magnus_relator, Letter, NcTruncPoly, Word};
pub use presentation::{builtin_presentation, Presentation, PresentationData, RecursionReport, RecursionRow};
pub use table::{
    build_group, build_group_with_limit, lower_central_series, standard_generators, FiniteGroupTable, GroupKind,
    DEFAULT_SIZE_LIMIT,
};
