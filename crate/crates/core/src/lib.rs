pub mod classify;
pub mod green;
pub mod hom;
pub mod io;
mod search;
pub mod seed;
pub mod surface;
pub mod semigroup;
pub mod symbolic;
pub mod varset;

pub use green::{green_relations, GreenPartition, Partition};
pub use hom::{
    all_seed_isos, automorphism_group, check_partial_hom, compose, find_seed_iso, identity_inclusion, image_seed,
    is_retraction, mixing_subseed, Factorization, HomError, HomViolation, PartialSeedHom, SeedIso, SubSeedSpec,
};
pub use seed::{
    validate_parts, validate_seed, ExtendedExchangeMatrix, Seed, SeedError, ValidationReport, Violation,
};
pub use semigroup::{enumerate_endpar, SemigroupError, SemigroupTable};
pub use varset::VarSet;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/seeds.md")]
    pub mod seeds {}
    #[doc = include_str!("../../../book/src/homomorphisms.md")]
    pub mod homomorphisms {}
    #[doc = include_str!("../../../book/src/semigroup.md")]
    pub mod semigroup {}
    #[doc = include_str!("../../../book/src/classification.md")]
    pub mod classification {}
    #[doc = include_str!("../../../book/src/surfaces.md")]
    pub mod surfaces {}
}
