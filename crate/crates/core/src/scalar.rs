//! Scalar traits.
//!
//! [`Rational`] abstracts the coefficient type of the cyclotomic field (an
//! exact rational such as `BigRational`), and [`Field`] is the minimal
//! interface the dense and sparse linear algebra needs.

use std::fmt::{Debug, Display};
use std::hash::Hash;

use num_bigint::{BigInt, ToBigInt};
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::{FromPrimitive, Num, Signed};

/// Exact rational coefficient type.
pub trait Rational: Clone + Eq + Hash + Debug + Display + Num + Signed + Send + Sync + 'static {
    fn from_int(n: i64) -> Self;

    fn from_frac(n: i64, d: i64) -> Self {
        Self::from_int(n) / Self::from_int(d)
    }

    fn numer_big(&self) -> BigInt;

    fn denom_big(&self) -> BigInt;
}

impl<T> Rational for Ratio<T>
where
    T: Clone + Integer + Signed + ToBigInt + FromPrimitive + Hash + Debug + Display + Send + Sync + 'static,
{
    fn from_int(n: i64) -> Self {
        Ratio::from_integer(T::from_i64(n).expect("integer fits the rational type"))
    }

    fn numer_big(&self) -> BigInt {
        self.numer().to_bigint().expect("integer converts to BigInt")
    }

    fn denom_big(&self) -> BigInt {
        self.denom().to_bigint().expect("integer converts to BigInt")
    }
}

/// A field element that can manufacture its own zero and one.
///
/// Elements of `Q(zeta_m)` only know their field through the order `m` they
/// carry, so constants are produced from an existing element.
pub trait Field: Clone + PartialEq + Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, rhs: &Self) -> Self;
    fn sub(&self, rhs: &Self) -> Self;
    fn mul(&self, rhs: &Self) -> Self;
    fn neg(&self) -> Self;
    fn inv(&self) -> Option<Self>;
}

impl<R: Rational> Field for R {
    fn zero_like(&self) -> Self {
        R::zero()
    }
    fn one_like(&self) -> Self {
        R::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, rhs: &Self) -> Self {
        self.clone() + rhs.clone()
    }
    fn sub(&self, rhs: &Self) -> Self {
        self.clone() - rhs.clone()
    }
    fn mul(&self, rhs: &Self) -> Self {
        self.clone() * rhs.clone()
    }
    fn neg(&self) -> Self {
        -self.clone()
    }
    fn inv(&self) -> Option<Self> {
        if Field::is_zero(self) {
            None
        } else {
            Some(R::one() / self.clone())
        }
    }
}
