//! Small maps used throughout tests and documentation.

use crate::rgraph::RibbonGraph;

/// One vertex with two interleaved loops `a`, `b`: rotation `a.0 b.0 a.1 b.1`.
/// Cellularly embedded in the torus.
pub fn two_loop_torus() -> RibbonGraph {
    RibbonGraph::from_rotations(&[vec![0, 2, 1, 3]]).expect("valid rotation")
}

/// Two vertices joined by edges `a`, `b`, `c` with rotation `(a b c)` at
/// both ends. One face, genus one.
pub fn theta_torus() -> RibbonGraph {
    RibbonGraph::from_rotations(&[vec![0, 2, 4], vec![1, 3, 5]]).expect("valid rotation")
}

/// A single non-loop edge on the sphere.
pub fn single_edge() -> RibbonGraph {
    RibbonGraph::from_rotations(&[vec![0], vec![1]]).expect("valid rotation")
}

/// A single loop on the sphere.
pub fn single_loop() -> RibbonGraph {
    RibbonGraph::from_rotations(&[vec![0, 1]]).expect("valid rotation")
}
