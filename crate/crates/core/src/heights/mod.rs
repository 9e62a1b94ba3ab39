//! Multiplicative Weil heights, ideals of quadratic fields, and the
//! enumeration of the witness sets S_l(K, Z) by two independent methods.

mod element;
pub mod interval;

pub use element::FieldElement;
