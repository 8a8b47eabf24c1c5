//! Exact symbolic normal ordering for the quantum superalgebra
//! `U_q[gl(m|n)]`.
//!
//! The crate provides the scalar field of rational `q`-functions
//! ([`coeff`]), the graded word algebra ([`algebra`]), the complete
//! exchange-rule table ([`rulebook`]), the PBW straightening engine
//! ([`normalizer`]), recursive expansion of nonsimple generators
//! ([`expansion`]), a textual grammar ([`exprio`]), and the
//! differential-consistency harness ([`verify`]).

pub mod algebra;
pub mod coeff;
pub mod expansion;
pub mod exprio;
pub mod normalizer;
pub mod rulebook;
pub mod verify;

pub use algebra::{AlgebraError, Element, Gen, Letter, Signature, Word};
pub use coeff::{Coeff, CoeffError, LaurentPoly};
pub use expansion::{expand_gen, expand_gen_with_pivot, expand_ns, PivotStrategy};
pub use exprio::{parse_element, print_element, ParseError};
pub use normalizer::{is_normal, normal_order, NormalOrderConfig, NormalizeError};
pub use rulebook::{bracket, classify, exchange, rule_table, RuleCase};
