//! Characteristic classes of projective schemes from Gröbner bases.
//!
//! Given the homogeneous ideal of a subscheme `X ⊂ ℙⁿ`, this crate computes
//! the push-forwards to `ℙⁿ` of the Segre class, Fulton's Chern class, the
//! Chern-Schwartz-MacPherson class and the Milnor class of `X`, together with
//! Euler characteristics. Classes are polynomials in the hyperplane class `H`
//! truncated at `H^{n+1}`.

pub mod chow;
pub mod classes;
pub mod error;
pub mod field;
pub mod groebner;
pub mod hilbert;
pub mod ideal;
pub mod order;
pub mod parse;
pub mod poly;
pub mod rng;

pub use error::{Error, Result};
pub use field::{FieldElement, FieldSpec};
pub use groebner::{buchberger, normal_form, s_polynomial, GroebnerBasis};
pub use hilbert::{Dimension, HilbertSeries, SchemeMetrics};
pub use ideal::{Context, GraphIdeal, Ideal};
pub use order::MonomialOrder;
pub use parse::{parse_ideal, parse_polynomial};
pub use poly::{Monomial, Polynomial, PolynomialRing, Ring};
pub use rng::SliceRng;
pub use chow::ChowClass;
pub use classes::{AffineMethod, ClassOptions, ClassReport, Pipeline, ProjectiveDegrees, DEFAULT_SEED};
