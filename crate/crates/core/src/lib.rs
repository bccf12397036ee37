//! Marked bases over quasi-stable monomial modules, their syzygies and free
//! resolutions, and the polynomial equation systems cutting out marked
//! families — all with exact rational or parameter-polynomial coefficients,
//! and without any term order entering the algebra.

pub mod coeff;
pub mod error;
pub mod matrix;
pub mod poly;
pub mod term;

pub mod quasistable;

pub mod marked;
pub mod oracle;
pub mod syzres;

pub mod scheme;

pub mod json;
pub mod parse;
pub mod sampling;

pub use coeff::{Coeff, ParamId, ParamMono, ParamPoly, Rat};
pub use error::{Error, Result};
pub use matrix::PolyMatrix;
pub use poly::Poly;
pub use term::{Ambient, ModuleTerm, Term};
