//! Integral Weyl modules for `GL_n`, their Hom and Ext groups, and checks of
//! closed-form extension orders.

pub mod combinatorics;
pub mod zlinalg;
pub mod abw;
pub mod homology;
pub mod theorems;
pub mod sweep;

/// The guide chapters, compiled so their snippets run as doc-tests.
pub mod guide {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/partitions.md")]
    pub mod partitions {}
    #[doc = include_str!("../../../book/src/integer-linear-algebra.md")]
    pub mod integer_linear_algebra {}
    #[doc = include_str!("../../../book/src/weyl-modules.md")]
    pub mod weyl_modules {}
    #[doc = include_str!("../../../book/src/ext-groups.md")]
    pub mod ext_groups {}
    #[doc = include_str!("../../../book/src/verification.md")]
    pub mod verification {}
    #[doc = include_str!("../../../book/src/cli.md")]
    pub mod cli {}
}
