//! Exact-arithmetic differential polynomial ring and the concrete polynomial
//! types it is substituted into.

mod mpoly;
mod param;
mod parse;
mod poly;
mod poly1;
pub mod rational;
mod substitute;
mod symbol;

pub use mpoly::MPoly;
pub use param::{FloatParamPoly, ParamPoly};
pub use parse::{parse_family, parse_mpoly, parse_poly1, ParseError};
pub use poly::{DiffPoly, Monomial};
pub use poly1::Poly1;
pub use rational::Rational;
pub use substitute::{substitute, to_potential_form, to_v_form, SubstituteError};
pub use symbol::{Symbol, SymbolKind};
