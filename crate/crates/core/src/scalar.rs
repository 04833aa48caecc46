//! Entry types accepted by the generic matrix machinery.

use std::fmt;

use num_traits::Signed;

/// Exact scalar for matrix arithmetic: `BigInt`, `BigRational`, or a
/// primitive signed integer in tests. `Signed` pulls in the full `Num`
/// tower (ring ops, zero/one, signs) from num-traits.
///
/// Division is only ever performed where it is exact (Bareiss pivots,
/// field entries), so the truncating `Div` of integer types is safe.
pub trait Scalar: Clone + fmt::Debug + fmt::Display + PartialEq + PartialOrd + Signed {}

impl<T> Scalar for T where T: Clone + fmt::Debug + fmt::Display + PartialEq + PartialOrd + Signed {}
