#![allow(clippy::suspicious_arithmetic_impl)]

use std::cell::Cell;
use std::cmp::Ordering;
use std::ops::{Add, Div, Mul, Sub};

use crate::scalar::Scalar;

/// Operation tallies gathered by [`Counted`].
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct FlopTally {
    pub adds: u64,
    pub subs: u64,
    pub mults: u64,
    pub divs: u64,
}

impl FlopTally {
    pub fn adds_subs(&self) -> u64 {
        self.adds + self.subs
    }

    pub fn total(&self) -> u64 {
        self.adds + self.subs + self.mults + self.divs
    }
}

thread_local! {
    static TALLY: Cell<FlopTally> = const {
        Cell::new(FlopTally { adds: 0, subs: 0, mults: 0, divs: 0 })
    };
}

#[inline]
fn bump(f: impl FnOnce(&mut FlopTally)) {
    TALLY.with(|c| {
        let mut t = c.get();
        f(&mut t);
        c.set(t);
    });
}

/// Runs `f` and returns the flops performed by [`Counted`] values inside it.
///
/// The tally is scoped to this call on this thread: the previous value is
/// restored afterwards, so concurrent or nested measurements do not mix.
pub fn measure<R>(f: impl FnOnce() -> R) -> (R, FlopTally) {
    let saved = TALLY.with(|c| c.replace(FlopTally::default()));
    let out = f();
    let tally = TALLY.with(|c| c.replace(saved));
    (out, tally)
}

/// An `f64` that tallies every `+`, `-`, `*` and `/` applied to it.
/// Conversions, comparisons and copies are free.
#[derive(Clone, Copy, Debug, Default)]
pub struct Counted(pub f64);

impl Add for Counted {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        bump(|t| t.adds += 1);
        Counted(self.0 + rhs.0)
    }
}

impl Sub for Counted {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        bump(|t| t.subs += 1);
        Counted(self.0 - rhs.0)
    }
}

impl Mul for Counted {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        bump(|t| t.mults += 1);
        Counted(self.0 * rhs.0)
    }
}

impl Div for Counted {
    type Output = Self;
    fn div(self, rhs: Self) -> Self {
        bump(|t| t.divs += 1);
        Counted(self.0 / rhs.0)
    }
}

impl PartialEq for Counted {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for Counted {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl Scalar for Counted {
    fn zero() -> Self {
        Counted(0.0)
    }
    fn one() -> Self {
        Counted(1.0)
    }
    fn from_f64(x: f64) -> Self {
        Counted(x)
    }
    fn to_f64(self) -> f64 {
        self.0
    }
    fn from_usize(k: usize) -> Self {
        Counted(k as f64)
    }
    fn is_finite(self) -> bool {
        self.0.is_finite()
    }
    fn abs(self) -> Self {
        Counted(self.0.abs())
    }
    fn unit_roundoff() -> f64 {
        f64::EPSILON / 2.0
    }
}
