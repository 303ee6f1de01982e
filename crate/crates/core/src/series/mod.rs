//! Noncommutative polynomials and truncated series.
//!
//! [`NCPoly`] is a finitely supported map word -> coefficient with zero
//! coefficients always pruned, so equality is map equality. Products are
//! concatenation (`*`), shuffle and quasi-shuffle (stuffle). [`Truncated`]
//! carries an explicit grade bound; arithmetic never extends it.

mod poly;
mod products;
mod tensor;
mod text;
mod truncated;

use thiserror::Error;

pub use poly::{conc_product, pi_y, shuffle_product, stuffle_product, NCPoly};
pub use products::{shuffle_words, stuffle_words};
pub use tensor::{coproduct, CoproductKind, TensorPoly};
pub use text::{parse_poly, ParsePolyError};
pub use truncated::{shift, star, t_exp, t_log, Side, Truncated};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("operands live over different alphabets")]
    AlphabetMismatch,
    #[error("operation requires the graded alphabet Y")]
    NotGraded,
    #[error("grade {needed} exceeds the truncation bound {bound}")]
    BoundExceeded { needed: usize, bound: usize },
    #[error("series must have zero constant term")]
    NonzeroConstant,
    #[error("series must have constant term one")]
    ConstantNotOne,
}
