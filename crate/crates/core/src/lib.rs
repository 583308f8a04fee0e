//! Exact orbifold Riemann–Roch on baskets of terminal quotient points,
//! the packing calculus on baskets, constraint-pruned enumeration of
//! geometric weighted baskets, Gorenstein index bounds, and the arithmetic
//! behind non-pencil and birationality thresholds for Fano 3-folds.

pub mod basket;
pub mod birationality;
pub mod canonical;
pub mod data;
pub mod delta1;
pub mod error;
pub mod index_bound;
pub mod pencil;
pub mod rational;
pub mod recovery;
pub mod report;
pub mod rr;
pub mod search;
pub mod wci;

pub use basket::{Basket, OrbifoldPoint, WeightedBasket};
pub use error::{Error, Result};
pub use rational::Rational;
pub use rr::PlurigenusSequence;
