//! Lie algebras of polynomial vector fields on smooth affine varieties over
//! the rationals, with exact Gröbner-basis machinery underneath.

pub mod alggroup;
pub mod groebner;
pub mod hyperelliptic;
pub mod linalg;
pub mod parser;
pub mod poly;
pub mod sample;
pub mod sphere;
pub mod variety;
pub mod vecfield;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/polynomials.md")]
    mod polynomials {}
    #[doc = include_str!("../../../book/src/varieties.md")]
    mod varieties {}
    #[doc = include_str!("../../../book/src/vector-fields.md")]
    mod vector_fields {}
    #[doc = include_str!("../../../book/src/simplicity.md")]
    mod simplicity {}
    #[doc = include_str!("../../../book/src/sphere.md")]
    mod sphere {}
    #[doc = include_str!("../../../book/src/hyperelliptic.md")]
    mod hyperelliptic {}
    #[doc = include_str!("../../../book/src/groups.md")]
    mod groups {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
