//! Exact big-oh term independence for two-variable monomial sums.
//!
//! A term `T_i` of `S = T_1 + ... + T_k` is *independent* when
//! `T_i = O(S - T_i)` fails, and `S` is *irreducible* when every term is
//! independent. This crate decides both exactly over rational exponents,
//! emits checkable certificates, builds arbitrarily long irreducible
//! families, and fits concise irreducible bounds to measured costs.

pub mod cli;
pub mod error;
pub mod family;
pub mod fitter;
pub mod hardy;
pub mod independence;
pub mod rational;
pub mod term;

pub use error::{Error, Result};
pub use family::{
    envelope_table, gen_theorem1, gen_theorem2, gen_theorem3, plot_data, witness_plan, Family,
    FamilySpec, WitnessPlan,
};
pub use fitter::{fit, validate_bound, FitOptions, FitResult, Measurement};
pub use hardy::{parse_uni_sum, reduce_single, UniTerm};
pub use independence::{
    check_term, feasible_interval, is_irreducible, ratio_r, reduce, DominationCert,
    FeasibleInterval, Verdict, Witness,
};
pub use rational::Rational;
pub use term::{parse_sum, print_sum, Term, TermSum};
