//! Exact computations with Cayley graphs, distance-regular graphs and
//! difference sets over explicitly tabulated finite groups.

pub mod array;
pub mod bridge;
pub mod catalog;
pub mod cayley;
pub mod designs;
pub mod diffsets;
pub mod error;
pub mod field;
pub mod graph;
pub mod group;
pub mod iso;
pub mod report;
pub mod search;
pub mod spectrum;

pub use array::IntersectionArray;
pub use error::{Error, Result};
pub use graph::Graph;
