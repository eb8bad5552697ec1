//! Surface grids, Dyck-grids and certified minor models, together with the tangle
//! and society machinery around them, at sizes where exhaustive checks are feasible.

pub mod config;
pub mod error;
pub mod expansion;
pub mod flow;
pub mod graph;
pub mod grids;
pub mod io;
pub mod mask;
pub mod minors;
pub mod planarity;
pub mod search;
pub mod separation;
pub mod societies;
pub mod tangles;
pub mod treedec;
pub mod transforms;
pub mod treewidth;
pub mod wall;

pub use config::Caps;
pub use error::{Error, Result};
pub use graph::{Graph, Label, Linkage};
pub use separation::{enumerate_separations, is_quasi_4_connected, is_separation, Separation};

/// Numeric type of balance thresholds.
pub trait Scalar: num_traits::Num + num_traits::FromPrimitive + PartialOrd + Copy + std::fmt::Debug {}

impl<T> Scalar for T where T: num_traits::Num + num_traits::FromPrimitive + PartialOrd + Copy + std::fmt::Debug {}

/// Exact rational thresholds.
pub type Rational = num_rational::Ratio<i64>;
