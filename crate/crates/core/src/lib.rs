//! Abelian extensions of Hopf algebras attached to matched pairs of finite groups.
//!
//! The guide in `book/` walks through each module; its code blocks are compiled and
//! run as doc-tests of this crate.

pub mod cohomology;
pub mod complexes;
pub mod exactlin;
pub mod groups;
pub mod kac;
pub mod matched;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/exact.md")]
    mod exact {}
    #[doc = include_str!("../../../book/src/cohomology.md")]
    mod cohomology {}
    #[doc = include_str!("../../../book/src/opext.md")]
    mod opext {}
    #[doc = include_str!("../../../book/src/sequences.md")]
    mod sequences {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
