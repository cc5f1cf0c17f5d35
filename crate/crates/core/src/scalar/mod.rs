//! Exact and high-precision numeric kernels.
//!
//! Everything downstream builds on four carriers: canonical big rationals,
//! dense rational polynomials and rational functions, negative-order polylog
//! closed forms, and a round-to-nearest-even big float. All operations here
//! are pure functions of immutable inputs (the polylog table and ln 2 cache
//! are append-only and locked), so values are freely shareable across threads.

pub mod bigfloat;
pub mod linalg;
pub mod polylog;
pub mod polynomial;
pub mod quadext;
pub mod ratfunc;
pub mod rational;

pub use bigfloat::{BigFloat, DEFAULT_PRECISION};
pub use polylog::{negorder_polylog, negorder_polylog_rf, poly_geometric_sum};
pub use polynomial::Polynomial;
pub use quadext::QuadExt;
pub use ratfunc::RationalFunction;
pub use rational::{format_rational, parse_rational, Rational};

/// Minimal ring interface shared by the exact, quadratic-extension, and
/// big-float carriers. Lattice sums and weight products are generic over it,
/// which is what lets one enumeration core serve three verification routes.
pub trait Scalar: Clone + PartialEq + std::fmt::Debug {
    fn ring_zero() -> Self;
    fn ring_one() -> Self;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn is_ring_zero(&self) -> bool;
}

/// Scalars with exact or rounded division.
pub trait FieldScalar: Scalar {
    fn div(&self, rhs: &Self) -> Self;
}

impl Scalar for Rational {
    fn ring_zero() -> Self {
        num_traits::Zero::zero()
    }
    fn ring_one() -> Self {
        num_traits::One::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        self + rhs
    }
    fn sub(&self, rhs: &Self) -> Self {
        self - rhs
    }
    fn mul(&self, rhs: &Self) -> Self {
        self * rhs
    }
    fn is_ring_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
}

impl FieldScalar for Rational {
    fn div(&self, rhs: &Self) -> Self {
        self / rhs
    }
}

impl Scalar for BigFloat {
    fn ring_zero() -> Self {
        BigFloat::zero()
    }
    fn ring_one() -> Self {
        BigFloat::one()
    }
    fn add(&self, rhs: &Self) -> Self {
        BigFloat::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        BigFloat::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        BigFloat::mul(self, rhs)
    }
    fn is_ring_zero(&self) -> bool {
        BigFloat::is_zero(self)
    }
}

impl FieldScalar for BigFloat {
    fn div(&self, rhs: &Self) -> Self {
        BigFloat::div(self, rhs)
    }
}

impl Scalar for QuadExt {
    fn ring_zero() -> Self {
        QuadExt::from_rational(num_traits::Zero::zero())
    }
    fn ring_one() -> Self {
        QuadExt::from_rational(num_traits::One::one())
    }
    fn add(&self, rhs: &Self) -> Self {
        QuadExt::add(self, rhs)
    }
    fn sub(&self, rhs: &Self) -> Self {
        QuadExt::sub(self, rhs)
    }
    fn mul(&self, rhs: &Self) -> Self {
        QuadExt::mul(self, rhs)
    }
    fn is_ring_zero(&self) -> bool {
        QuadExt::is_zero(self)
    }
}

impl FieldScalar for QuadExt {
    fn div(&self, rhs: &Self) -> Self {
        QuadExt::div(self, rhs)
    }
}
