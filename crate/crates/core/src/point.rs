use std::fmt;
use std::ops::Index;

use crate::scalar::Scalar;

/// A point in `E^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct Point<S = f64> {
    coords: Vec<S>,
}

impl<S: Scalar> Point<S> {
    pub fn new(coords: Vec<S>) -> Self {
        Point { coords }
    }

    pub fn from_slice(coords: &[S]) -> Self {
        Point {
            coords: coords.to_vec(),
        }
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[S] {
        &self.coords
    }

    pub fn into_coords(self) -> Vec<S> {
        self.coords
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(S) -> T) -> Point<T> {
        Point {
            coords: self.coords.iter().map(|&c| f(c)).collect(),
        }
    }

    pub fn to_f64(&self) -> Point<f64> {
        self.map(|c| c.to_f64())
    }
}

impl<S> Index<usize> for Point<S> {
    type Output = S;

    fn index(&self, i: usize) -> &S {
        &self.coords[i]
    }
}

impl<S: Scalar> From<Vec<S>> for Point<S> {
    fn from(coords: Vec<S>) -> Self {
        Point::new(coords)
    }
}

impl<S: Scalar, const D: usize> From<[S; D]> for Point<S> {
    fn from(coords: [S; D]) -> Self {
        Point::new(coords.to_vec())
    }
}

impl<S: Scalar> fmt::Display for Point<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, c) in self.coords.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}", c.to_f64())?;
        }
        f.write_str(")")
    }
}
