//! Representation rings of finite groups, computed exactly.
//!
//! The Burnside ring, the trivial source ring, the character ring and the
//! Brauer character ring of a finite group are realized as integer lattices
//! inside their ghost rings. Tensor induction along right-free bisets acts
//! on all of them, and the torsion units of each ring are enumerated
//! exhaustively.

pub mod biset;
pub mod bisetspec;
pub mod cyclotomic;
pub mod error;
pub mod ghost;
pub mod group;
pub mod intmat;
pub mod lattice;
pub mod teninduct;
pub mod units;
pub mod algmaps;
pub mod gset;

pub use cyclotomic::CycInt;
pub use error::{Error, Result};
pub use biset::Biset;
pub use group::Group;
pub use gset::GSet;

/// Library version, embedded in every report.
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/cyclotomic.md")]
    mod cyclotomic {}
    #[doc = include_str!("../../../book/src/ghost-rings.md")]
    mod ghost_rings {}
    #[doc = include_str!("../../../book/src/lattices.md")]
    mod lattices {}
    #[doc = include_str!("../../../book/src/bisets.md")]
    mod bisets {}
    #[doc = include_str!("../../../book/src/tensor-induction.md")]
    mod tensor_induction {}
    #[doc = include_str!("../../../book/src/units.md")]
    mod units {}
    #[doc = include_str!("../../../book/src/degree.md")]
    mod degree {}
}
