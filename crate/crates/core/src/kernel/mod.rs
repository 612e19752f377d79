//! Scalars, words, the rewriting engine and the expression parser.

pub mod lin;
pub mod modp;
pub mod parse;
pub mod ratfn;
pub mod rewrite;
pub mod scalar;
pub mod word;

pub use lin::Lin;
pub use parse::{eval_at_q, parse, parse_poly, Expr};
pub use ratfn::RationalFn;
pub use rewrite::{ConfluenceReport, CriticalPair, RewriteSystem};
pub use scalar::{parse_rational, FieldElem, Laurent, QPoint, Scalar, Specialized};
pub use word::{Letter, NCPoly, Word};
