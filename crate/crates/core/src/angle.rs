//! Measurement angles.
//!
//! Angles are kept as exact rational multiples of π whenever possible so that
//! Pauli measurements (`M^x` at 0, `M^y` at π/2) can be recognised without a
//! tolerance. Real-valued angles are accepted too, but they never classify
//! as Pauli.

use std::cmp::Ordering;
use std::f64::consts::PI;
use std::fmt;
use std::ops::{Add, Neg, Sub};

use num_rational::Ratio;
use num_traits::{ToPrimitive, Zero};

use crate::scalar::Real;

pub type Rational = Ratio<i64>;

#[derive(Clone, Copy, Debug)]
pub enum Angle {
    /// `q·π` with `q` reduced and normalised into `[0, 2)`.
    Exact(Rational),
    /// Radians, normalised into `[0, 2π)`.
    Inexact(f64),
}

/// The Pauli axis an angle measures along, up to a swap of outcomes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PauliAxis {
    X,
    Y,
}

fn reduce_exact(q: Rational) -> Rational {
    let two = Rational::from_integer(2);
    let shifted = q - two * (q / two).floor();
    if shifted >= two {
        shifted - two
    } else {
        shifted
    }
}

fn reduce_inexact(r: f64) -> f64 {
    let v = r.rem_euclid(2.0 * PI);
    // rem_euclid can round up to exactly 2π
    if v >= 2.0 * PI {
        0.0
    } else {
        v
    }
}

impl Angle {
    pub fn zero() -> Self {
        Angle::Exact(Rational::zero())
    }

    pub fn pi() -> Self {
        Angle::Exact(Rational::from_integer(1))
    }

    /// `(numer/denom)·π`.
    ///
    /// # Panics
    /// Panics if `denom` is zero.
    pub fn pi_frac(numer: i64, denom: i64) -> Self {
        Angle::from_pi_multiple(Rational::new(numer, denom))
    }

    pub fn from_pi_multiple(q: Rational) -> Self {
        Angle::Exact(reduce_exact(q))
    }

    pub fn radians(r: f64) -> Self {
        Angle::Inexact(reduce_inexact(r))
    }

    pub fn is_exact(&self) -> bool {
        matches!(self, Angle::Exact(_))
    }

    pub fn to_radians<T: Real>(&self) -> T {
        match *self {
            Angle::Exact(q) => {
                let pi = T::PI();
                T::from_i64(*q.numer()).unwrap() * pi / T::from_i64(*q.denom()).unwrap()
            }
            Angle::Inexact(r) => T::from_f64(r).unwrap(),
        }
    }

    /// The angle plus π.
    pub fn add_pi(self) -> Self {
        self + Angle::pi()
    }

    /// Halves the representative in `[0, 2π)`.
    pub fn half(self) -> Self {
        match self {
            Angle::Exact(q) => Angle::Exact(q / 2),
            Angle::Inexact(r) => Angle::Inexact(r / 2.0),
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, Angle::Exact(q) if q.is_zero())
    }

    pub fn is_half_pi(&self) -> bool {
        matches!(self, Angle::Exact(q) if *q == Rational::new(1, 2))
    }

    /// Exact angles with `α ≡ −α (mod 2π)`, i.e. 0 and π. The X-action is
    /// trivial on these.
    pub fn is_self_conjugate(&self) -> bool {
        matches!(self, Angle::Exact(q) if q.denom() == &1)
    }

    /// Pauli axis for exact angles in `{0, π/2, π, 3π/2}`; `None` otherwise.
    pub fn pauli_axis(&self) -> Option<PauliAxis> {
        match self {
            Angle::Exact(q) if q.denom() == &1 => Some(PauliAxis::X),
            Angle::Exact(q) if q.denom() == &2 => Some(PauliAxis::Y),
            _ => None,
        }
    }

    /// Splits off a π so that the remaining angle lies in `[0, π)`.
    /// Returns the reduced angle and whether π was removed.
    pub fn fold_pi(self) -> (Self, bool) {
        match self {
            Angle::Exact(q) if q >= Rational::from_integer(1) => (Angle::Exact(q - Rational::from_integer(1)), true),
            Angle::Inexact(r) if r >= PI => (Angle::radians(r - PI), true),
            other => (other, false),
        }
    }

    /// The rational multiple of π, if exact.
    pub fn as_pi_multiple(&self) -> Option<Rational> {
        match self {
            Angle::Exact(q) => Some(*q),
            Angle::Inexact(_) => None,
        }
    }

    fn as_f64(&self) -> f64 {
        match self {
            Angle::Exact(q) => q.to_f64().unwrap() * PI,
            Angle::Inexact(r) => *r,
        }
    }
}

impl Default for Angle {
    fn default() -> Self {
        Angle::zero()
    }
}

impl PartialEq for Angle {
    fn eq(&self, other: &Self) -> bool {
        match (self, other) {
            (Angle::Exact(a), Angle::Exact(b)) => a == b,
            (Angle::Inexact(a), Angle::Inexact(b)) => a == b,
            _ => false,
        }
    }
}

impl Neg for Angle {
    type Output = Angle;

    fn neg(self) -> Angle {
        match self {
            Angle::Exact(q) => Angle::from_pi_multiple(-q),
            Angle::Inexact(r) => Angle::radians(-r),
        }
    }
}

impl Add for Angle {
    type Output = Angle;

    fn add(self, rhs: Angle) -> Angle {
        match (self, rhs) {
            (Angle::Exact(a), Angle::Exact(b)) => Angle::from_pi_multiple(a + b),
            (a, b) => Angle::radians(a.as_f64() + b.as_f64()),
        }
    }
}

impl Sub for Angle {
    type Output = Angle;

    fn sub(self, rhs: Angle) -> Angle {
        self + (-rhs)
    }
}

impl PartialOrd for Angle {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        match (self, other) {
            (Angle::Exact(a), Angle::Exact(b)) => Some(a.cmp(b)),
            _ => self.as_f64().partial_cmp(&other.as_f64()),
        }
    }
}

/// Exact angles print as `p/q pi`, `pi` or `0`; inexact ones as the shortest
/// decimal that reads back to the same radians.
impl fmt::Display for Angle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Angle::Exact(q) if q.is_zero() => f.write_str("0"),
            Angle::Exact(q) if q.is_integer() => {
                if *q.numer() == 1 {
                    f.write_str("pi")
                } else {
                    write!(f, "{} pi", q.numer())
                }
            }
            Angle::Exact(q) => write!(f, "{}/{} pi", q.numer(), q.denom()),
            Angle::Inexact(r) => write!(f, "{r:?}"),
        }
    }
}
