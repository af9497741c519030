//! Graphs embedded in closed orientable surfaces, cellular or not.
//!
//! An [`EmbeddedGraph`] is a cellularly embedded carrier map together with a
//! set of marked edges. The surface is the carrier's capped surface and the
//! graph is the spanning subgraph on the marked edges. All four topological
//! parameters of a spanning subgraph `H` reduce to orbit counts:
//!
//! * `c(H)`: components of (all vertices, `H`);
//! * `s(H)`: twice the genus of the regular neighbourhood of `H`, which is the
//!   carrier restricted to `H`;
//! * `s⊥(H)`: twice the genus of the surface minus that neighbourhood, which is
//!   the dual carrier restricted to the edges outside `H`;
//! * `k(H)`: components of that complement minus components of the surface.

use thiserror::Error;

use crate::rgraph::{Dsu, EdgeSubset, RibbonError, RibbonGraph};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EmbedError {
    #[error("subset {subset:#x} is not contained in the marked edges {marked:#x}")]
    HNotWithinMarked { subset: u64, marked: u64 },
    #[error("edge {0} is not marked")]
    EdgeNotMarked(usize),
    #[error("embedding is not cellular")]
    NotCellular,
    #[error(transparent)]
    Ribbon(#[from] RibbonError),
}

/// The four exponents contributed by one spanning subgraph.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubgraphParams {
    pub c: usize,
    pub k: usize,
    pub s: usize,
    pub s_perp: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EmbeddedGraph {
    carrier: RibbonGraph,
    dual: RibbonGraph,
    marked: EdgeSubset,
}

impl EmbeddedGraph {
    /// `G` is the spanning subgraph on `marked` inside the carrier's surface.
    pub fn new(carrier: RibbonGraph, marked: EdgeSubset) -> Result<Self, EmbedError> {
        carrier.check_subset(marked)?;
        let dual = carrier.dual();
        Ok(EmbeddedGraph {
            carrier,
            dual,
            marked,
        })
    }

    /// The cellular embedding described by the map itself.
    pub fn cellular(g: RibbonGraph) -> Self {
        let marked = g.all_edges();
        EmbeddedGraph::new(g, marked).expect("full subset is in range")
    }

    pub fn carrier(&self) -> &RibbonGraph {
        &self.carrier
    }

    pub fn marked(&self) -> EdgeSubset {
        self.marked
    }

    pub fn is_cellular(&self) -> bool {
        self.marked == self.carrier.all_edges()
    }

    /// Genus of the ambient surface.
    pub fn surface_genus(&self) -> usize {
        self.carrier.genus()
    }

    /// Number of components of the ambient surface.
    pub fn surface_components(&self) -> usize {
        self.carrier.counts().c
    }

    fn check(&self, h: EdgeSubset) -> Result<(), EmbedError> {
        if h.is_subset_of(self.marked) {
            Ok(())
        } else {
            Err(EmbedError::HNotWithinMarked {
                subset: h.bits(),
                marked: self.marked.bits(),
            })
        }
    }

    fn outside(&self, h: EdgeSubset) -> EdgeSubset {
        h.complement(self.carrier.num_edges())
    }

    /// Components of the spanning subgraph on `h`.
    pub fn c_sub(&self, h: EdgeSubset) -> Result<usize, EmbedError> {
        self.check(h)?;
        let g = self.carrier.underlying();
        let mut dsu = Dsu::new(g.vertices);
        for e in h.iter() {
            let (a, b) = g.edges[e];
            dsu.union(a, b);
        }
        Ok(dsu.sets())
    }

    /// Twice the genus of the regular neighbourhood of `h`.
    pub fn s_param(&self, h: EdgeSubset) -> Result<usize, EmbedError> {
        self.check(h)?;
        Ok(2 * self.carrier.restrict(h)?.genus())
    }

    /// Twice the genus of the surface with the neighbourhood of `h` removed.
    pub fn s_perp(&self, h: EdgeSubset) -> Result<usize, EmbedError> {
        self.check(h)?;
        Ok(2 * self.dual.restrict(self.outside(h))?.genus())
    }

    /// Dimension of the kernel of `H_1(h) → H_1(Σ)`, as the number of
    /// components of `Σ \ h` minus the number of components of `Σ`.
    pub fn k_param(&self, h: EdgeSubset) -> Result<usize, EmbedError> {
        self.check(h)?;
        let complement = self.dual.restrict(self.outside(h))?.counts().c;
        Ok(complement - self.surface_components())
    }

    /// `k(H)` recovered from the cycle-matroid nullity,
    /// `n(H) - g - s(H)/2 + s⊥(H)/2`. Cellular embeddings only.
    pub fn k_param_via_nullity(&self, h: EdgeSubset) -> Result<i64, EmbedError> {
        if !self.is_cellular() {
            return Err(EmbedError::NotCellular);
        }
        let v = self.carrier.counts().v as i64;
        let nullity = h.len() as i64 - v + self.c_sub(h)? as i64;
        let s = self.s_param(h)? as i64;
        let sp = self.s_perp(h)? as i64;
        Ok(nullity - self.surface_genus() as i64 - s / 2 + sp / 2)
    }

    /// All four parameters at once.
    pub fn params(&self, h: EdgeSubset) -> Result<SubgraphParams, EmbedError> {
        self.check(h)?;
        let neighbourhood = self.carrier.restrict(h)?;
        let complement = self.dual.restrict(self.outside(h))?;
        let cc = complement.counts().c;
        Ok(SubgraphParams {
            c: neighbourhood.counts().c,
            k: cc - self.surface_components(),
            s: 2 * neighbourhood.genus(),
            s_perp: 2 * complement.genus(),
        })
    }

    /// Deletes a marked edge while keeping the ambient surface.
    pub fn delete_embedded(&self, e: usize) -> Result<EmbeddedGraph, EmbedError> {
        if !self.marked.contains(e) {
            return Err(EmbedError::EdgeNotMarked(e));
        }
        Ok(EmbeddedGraph {
            carrier: self.carrier.clone(),
            dual: self.dual.clone(),
            marked: self.marked.without(e),
        })
    }

    /// Marks an edge of the carrier again.
    pub fn mark(&self, e: usize) -> Result<EmbeddedGraph, EmbedError> {
        EmbeddedGraph::new(self.carrier.clone(), self.marked.with(e))
    }

    /// Replaces the surface by the capped regular neighbourhood of the
    /// marked graph, making the embedding cellular.
    pub fn recap(&self) -> EmbeddedGraph {
        let g = self
            .carrier
            .restrict(self.marked)
            .expect("marked edges are within the carrier");
        EmbeddedGraph::cellular(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog;

    fn e(edges: &[usize]) -> EdgeSubset {
        EdgeSubset::from_edges(edges.iter().copied())
    }

    #[test]
    fn component_counts() {
        let g = EmbeddedGraph::cellular(catalog::theta_torus());
        assert_eq!(g.c_sub(EdgeSubset::EMPTY).unwrap(), 2);
        assert_eq!(g.c_sub(e(&[0])).unwrap(), 1);
        assert_eq!(g.c_sub(g.marked()).unwrap(), 1);
    }

    #[test]
    fn neighbourhood_genus() {
        let g = EmbeddedGraph::cellular(catalog::two_loop_torus());
        assert_eq!(g.s_param(e(&[0, 1])).unwrap(), 2);
        for h in [e(&[]), e(&[0]), e(&[1])] {
            assert_eq!(g.s_param(h).unwrap(), 0);
        }
        let t = EmbeddedGraph::cellular(catalog::theta_torus());
        assert_eq!(t.s_param(e(&[0, 1, 2])).unwrap(), 2);
    }

    #[test]
    fn complement_genus() {
        let g = EmbeddedGraph::cellular(catalog::two_loop_torus());
        assert_eq!(g.s_perp(EdgeSubset::EMPTY).unwrap(), 2);
        let t = EmbeddedGraph::cellular(catalog::theta_torus());
        assert_eq!(t.s_perp(e(&[0, 1])).unwrap(), 0);
        assert_eq!(t.s_perp(e(&[1])).unwrap(), 2);
    }

    #[test]
    fn kernel_dimension() {
        let t = EmbeddedGraph::cellular(catalog::theta_torus());
        let g = EmbeddedGraph::cellular(catalog::two_loop_torus());
        for h in 0..8 {
            assert_eq!(t.k_param(EdgeSubset(h)).unwrap(), 0);
            assert_eq!(t.k_param_via_nullity(EdgeSubset(h)).unwrap(), 0);
        }
        for h in 0..4 {
            assert_eq!(g.k_param(EdgeSubset(h)).unwrap(), 0);
        }
        let lp = EmbeddedGraph::cellular(catalog::single_loop());
        assert_eq!(lp.k_param(e(&[0])).unwrap(), 1);
        assert_eq!(lp.k_param_via_nullity(e(&[0])).unwrap(), 1);
        let point = EmbeddedGraph::cellular(RibbonGraph::empty(1));
        assert_eq!(point.k_param_via_nullity(EdgeSubset::EMPTY).unwrap(), 0);
        assert_eq!(g.k_param_via_nullity(e(&[0, 1])).unwrap(), 0);
    }

    #[test]
    fn subsets_outside_the_marked_edges_are_rejected() {
        let t = EmbeddedGraph::cellular(catalog::theta_torus())
            .delete_embedded(2)
            .unwrap();
        assert!(matches!(
            t.c_sub(e(&[2])),
            Err(EmbedError::HNotWithinMarked { .. })
        ));
        assert!(matches!(
            t.k_param_via_nullity(EdgeSubset::EMPTY),
            Err(EmbedError::NotCellular)
        ));
        assert!(matches!(
            t.delete_embedded(2),
            Err(EmbedError::EdgeNotMarked(2))
        ));
    }

    #[test]
    fn embedded_deletion_keeps_the_surface() {
        let g = EmbeddedGraph::cellular(catalog::theta_torus());
        let d = g.delete_embedded(2).unwrap();
        assert_eq!(d.carrier(), g.carrier());
        assert_eq!(d.marked(), e(&[0, 1]));
        assert!(!d.is_cellular());
        assert_eq!(d.surface_genus(), 1);
        assert_eq!(d.mark(2).unwrap(), g);
    }

    #[test]
    fn recap_caps_the_neighbourhood() {
        let g = EmbeddedGraph::cellular(catalog::theta_torus());
        let r = g.delete_embedded(2).unwrap().recap();
        assert!(r.is_cellular());
        assert_eq!(r.surface_genus(), 0);
        assert_eq!(r.carrier().counts().v, 2);
        assert_eq!(r.carrier().num_edges(), 2);
        assert!(g.recap().carrier().is_isomorphic(g.carrier()));
        let l = EmbeddedGraph::cellular(catalog::two_loop_torus())
            .delete_embedded(1)
            .unwrap()
            .recap();
        assert_eq!(l.carrier().num_edges(), 1);
        assert_eq!(l.surface_genus(), 0);
    }

    #[test]
    fn combined_params_match_individual_routes() {
        let t = EmbeddedGraph::cellular(catalog::theta_torus());
        for h in 0..8 {
            let h = EdgeSubset(h);
            let p = t.params(h).unwrap();
            assert_eq!(p.c, t.c_sub(h).unwrap());
            assert_eq!(p.k, t.k_param(h).unwrap());
            assert_eq!(p.s, t.s_param(h).unwrap());
            assert_eq!(p.s_perp, t.s_perp(h).unwrap());
        }
    }
}
