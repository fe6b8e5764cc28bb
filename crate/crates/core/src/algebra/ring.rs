/// The commutative-ring surface the division-free determinant needs.
///
/// Implemented by [`MultiPoly`](super::MultiPoly) and
/// [`XSeries`](super::XSeries); the "like" constructors exist because a
/// truncated series carries its truncation order in every value.
pub trait Ring: Clone + PartialEq {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add_ref(&self, other: &Self) -> Self;
    fn sub_ref(&self, other: &Self) -> Self;
    fn mul_ref(&self, other: &Self) -> Self;
    fn neg_ref(&self) -> Self;
}
