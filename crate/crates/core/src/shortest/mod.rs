//! Shortest segments in a homotopy class, their ties, and extremal pairs.

mod envelope;
mod graph;

pub use envelope::{bifurcation_scan, class_representatives, BifurcationReport, BifurcationRow, ExtremalPair};
pub use graph::{shortest_grown, shortest_segment, shortest_with, Minimizers, ShortestOptions};

/// A node of the visibility graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize)]
#[serde(rename_all = "snake_case")]
pub enum VisibilityNode {
    Base,
    Lift(usize),
    Target,
}

#[cfg(test)]
mod tests;
