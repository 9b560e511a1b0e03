//! Plausibility values on ordinal scales compared lexicographically.
//!
//! A [`Scale`] is a finite chain of labelled grades. A [`Valuation`] is a
//! canonical nondecreasing string of grades; [`algebra`] supplies the
//! conjunction, disjunction, negation and implications over them, [`engine`]
//! runs rule bases, [`oracle`] checks the algebra by brute force, and
//! [`stability`] shows what numeric interpretations of the same grades do to
//! conclusion order.
//!
//! ```
//! use lexval::{algebra, Scale, Valuation};
//!
//! let s = Scale::new("pv", ["LOW", "MID", "HIGH", "TOP"]).unwrap();
//! let a = Valuation::from_labels(&s, &["MID"]).unwrap();
//! let b = Valuation::from_labels(&s, &["HIGH"]).unwrap();
//! assert_eq!(algebra::conj(&a, &b).unwrap().to_string(), "(MID, HIGH)");
//! ```

pub mod algebra;
pub mod cli;
pub mod dsl;
pub mod engine;
pub mod error;
pub mod oracle;
pub mod scale;
pub mod stability;
pub mod valuation;

pub use engine::{infer, Atom, Fact, InferenceResult, Mode, Rule, RuleBase};
pub use error::{Error, Result};
pub use scale::{Grade, Scale};
pub use stability::{Embedding, Scalar, StabilityReport, TNorm};
pub use valuation::{Valuation, WedgeString};

/// Embedding with exact rational values.
pub type ExactEmbedding = Embedding<num_rational::Rational64>;
/// Embedding with binary floating-point values, as produced by sampling.
pub type FloatEmbedding = Embedding<f64>;
pub type ExactReport = StabilityReport<num_rational::Rational64>;
pub type FloatReport = StabilityReport<f64>;
