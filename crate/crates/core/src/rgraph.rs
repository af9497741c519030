//! Orientable ribbon graphs as combinatorial maps.
//!
//! A map on `2m` half-edges is a pair of permutations. `sigma` sends a
//! half-edge to the next one counterclockwise around its vertex; `alpha`
//! swaps the two ends of an edge. Edge `i` always owns half-edges `2i` and
//! `2i + 1`, so `alpha` is stored implicitly as `h ^ 1`. Faces are the orbits
//! of `phi = sigma ∘ alpha` (apply `alpha` first).
//!
//! Vertices without half-edges cannot be expressed by a permutation, so the
//! map also carries a count of isolated vertices. Each isolated vertex is a
//! sphere component with one vertex, no edge and one face.

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RibbonError {
    #[error("half-edge count {0} is odd")]
    OddHalfEdgeCount(usize),
    #[error("sigma has length {sigma} but alpha has length {alpha}")]
    LengthMismatch { sigma: usize, alpha: usize },
    #[error("{which} is not a permutation of 0..{len}")]
    NotAPermutation { which: &'static str, len: usize },
    #[error("alpha is not an involution at half-edge {0}")]
    AlphaNotInvolution(usize),
    #[error("alpha fixes half-edge {0}")]
    AlphaHasFixedPoint(usize),
    #[error("edge {edge} out of range for a map with {edges} edges")]
    EdgeOutOfRange { edge: usize, edges: usize },
    #[error("edge subset {subset:#x} exceeds {edges} edges")]
    SubsetOutOfRange { subset: u64, edges: usize },
    #[error("{0} edges exceed the 64-edge subset limit")]
    TooManyEdges(usize),
}

/// Bitset over edge indices.
#[derive(
    Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize,
)]
pub struct EdgeSubset(pub u64);

impl EdgeSubset {
    pub const EMPTY: EdgeSubset = EdgeSubset(0);

    /// All of `0..m`.
    pub fn full(m: usize) -> Self {
        assert!(m <= 64, "edge subsets hold at most 64 edges");
        if m == 64 {
            EdgeSubset(u64::MAX)
        } else {
            EdgeSubset((1u64 << m) - 1)
        }
    }

    pub fn from_edges<I: IntoIterator<Item = usize>>(edges: I) -> Self {
        EdgeSubset(edges.into_iter().fold(0, |acc, e| acc | (1u64 << e)))
    }

    pub fn single(e: usize) -> Self {
        EdgeSubset(1u64 << e)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, e: usize) -> bool {
        e < 64 && self.0 >> e & 1 == 1
    }

    pub fn with(self, e: usize) -> Self {
        EdgeSubset(self.0 | 1u64 << e)
    }

    pub fn without(self, e: usize) -> Self {
        EdgeSubset(self.0 & !(1u64 << e))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset_of(self, other: EdgeSubset) -> bool {
        self.0 & !other.0 == 0
    }

    /// Complement within `0..m`.
    pub fn complement(self, m: usize) -> Self {
        EdgeSubset(!self.0 & EdgeSubset::full(m).0)
    }

    pub fn fits(self, m: usize) -> bool {
        self.is_subset_of(EdgeSubset::full(m))
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        let bits = self.0;
        (0..64).filter(move |&i| bits >> i & 1 == 1)
    }

    /// Every subset of `self`, in increasing bitmask order.
    pub fn subsets(self) -> impl Iterator<Item = EdgeSubset> {
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur.wrapping_sub(mask)) & mask)
            };
            Some(EdgeSubset(cur))
        })
    }
}

/// Vertex, edge, face and component counts of a map.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Counts {
    pub v: usize,
    pub e: usize,
    pub f: usize,
    pub c: usize,
}

/// A graph with one cyclic order of half-edges per vertex.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RibbonGraph {
    sigma: Vec<u32>,
    isolated: usize,
}

/// Plain multigraph: vertex count plus edge endpoint list, indexed like the map's edges.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Multigraph {
    pub vertices: usize,
    pub edges: Vec<(usize, usize)>,
}

fn is_permutation(p: &[usize]) -> bool {
    let mut seen = vec![false; p.len()];
    for &x in p {
        if x >= p.len() || seen[x] {
            return false;
        }
        seen[x] = true;
    }
    true
}

impl RibbonGraph {
    /// The map with no half-edges and `isolated` bare vertices.
    pub fn empty(isolated: usize) -> Self {
        RibbonGraph {
            sigma: Vec::new(),
            isolated,
        }
    }

    /// Validates an arbitrary permutation pair and relabels half-edges so
    /// that `alpha(2i) = 2i + 1`.
    pub fn validate(sigma: &[usize], alpha: &[usize]) -> Result<Self, RibbonError> {
        if sigma.len() % 2 == 1 {
            return Err(RibbonError::OddHalfEdgeCount(sigma.len()));
        }
        if sigma.len() != alpha.len() {
            return Err(RibbonError::LengthMismatch {
                sigma: sigma.len(),
                alpha: alpha.len(),
            });
        }
        let n = sigma.len();
        if n / 2 > 64 {
            return Err(RibbonError::TooManyEdges(n / 2));
        }
        if !is_permutation(sigma) {
            return Err(RibbonError::NotAPermutation {
                which: "sigma",
                len: n,
            });
        }
        if !is_permutation(alpha) {
            return Err(RibbonError::NotAPermutation {
                which: "alpha",
                len: n,
            });
        }
        for h in 0..n {
            if alpha[h] == h {
                return Err(RibbonError::AlphaHasFixedPoint(h));
            }
            if alpha[alpha[h]] != h {
                return Err(RibbonError::AlphaNotInvolution(h));
            }
        }
        let mut label = vec![usize::MAX; n];
        let mut next = 0;
        for h in 0..n {
            if label[h] == usize::MAX {
                label[h] = next;
                label[alpha[h]] = next + 1;
                next += 2;
            }
        }
        let mut out = vec![0u32; n];
        for h in 0..n {
            out[label[h]] = label[sigma[h]] as u32;
        }
        Ok(RibbonGraph {
            sigma: out,
            isolated: 0,
        })
    }

    /// A map from its vertex permutation under the canonical pairing.
    pub fn from_sigma(sigma: &[usize]) -> Result<Self, RibbonError> {
        let alpha: Vec<usize> = (0..sigma.len()).map(|h| h ^ 1).collect();
        Self::validate(sigma, &alpha)
    }

    /// Builds a map from rotations: each list is the counterclockwise cyclic
    /// order of half-edges at one vertex, using the canonical pairing. An
    /// empty list is an isolated vertex.
    pub fn from_rotations(rotations: &[Vec<usize>]) -> Result<Self, RibbonError> {
        let n: usize = rotations.iter().map(Vec::len).sum();
        if n % 2 == 1 {
            return Err(RibbonError::OddHalfEdgeCount(n));
        }
        if n / 2 > 64 {
            return Err(RibbonError::TooManyEdges(n / 2));
        }
        let mut sigma = vec![usize::MAX; n];
        let mut isolated = 0;
        for rot in rotations {
            if rot.is_empty() {
                isolated += 1;
                continue;
            }
            for (k, &h) in rot.iter().enumerate() {
                if h >= n || sigma[h] != usize::MAX {
                    return Err(RibbonError::NotAPermutation {
                        which: "sigma",
                        len: n,
                    });
                }
                sigma[h] = rot[(k + 1) % rot.len()];
            }
        }
        Ok(RibbonGraph {
            sigma: sigma.into_iter().map(|x| x as u32).collect(),
            isolated,
        })
    }

    pub fn with_isolated(mut self, isolated: usize) -> Self {
        self.isolated = isolated;
        self
    }

    pub fn num_half_edges(&self) -> usize {
        self.sigma.len()
    }

    pub fn num_edges(&self) -> usize {
        self.sigma.len() / 2
    }

    pub fn isolated_vertices(&self) -> usize {
        self.isolated
    }

    pub fn all_edges(&self) -> EdgeSubset {
        EdgeSubset::full(self.num_edges())
    }

    pub fn sigma(&self, h: usize) -> usize {
        self.sigma[h] as usize
    }

    #[inline]
    pub fn alpha(&self, h: usize) -> usize {
        h ^ 1
    }

    #[inline]
    pub fn phi(&self, h: usize) -> usize {
        self.sigma[h ^ 1] as usize
    }

    /// Image array of sigma.
    pub fn sigma_array(&self) -> Vec<usize> {
        self.sigma.iter().map(|&x| x as usize).collect()
    }

    /// Image array of alpha.
    pub fn alpha_array(&self) -> Vec<usize> {
        (0..self.sigma.len()).map(|h| h ^ 1).collect()
    }

    fn cycles(&self, step: impl Fn(usize) -> usize) -> Vec<Vec<usize>> {
        let n = self.sigma.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cyc = Vec::new();
            let mut h = start;
            while !seen[h] {
                seen[h] = true;
                cyc.push(h);
                h = step(h);
            }
            out.push(cyc);
        }
        out
    }

    /// Rotations at the non-isolated vertices, ordered by smallest half-edge.
    pub fn rotations(&self) -> Vec<Vec<usize>> {
        self.cycles(|h| self.sigma(h))
    }

    /// Face boundaries as orbits of `phi`.
    pub fn faces(&self) -> Vec<Vec<usize>> {
        self.cycles(|h| self.phi(h))
    }

    /// Vertex index of every half-edge, numbering vertices as in [`Self::rotations`].
    pub fn vertex_of(&self) -> Vec<usize> {
        let mut out = vec![0; self.sigma.len()];
        for (v, rot) in self.rotations().iter().enumerate() {
            for &h in rot {
                out[h] = v;
            }
        }
        out
    }

    /// Component index of every half-edge; returns the labels and the number
    /// of components containing half-edges.
    pub fn component_labels(&self) -> (Vec<usize>, usize) {
        let n = self.sigma.len();
        let mut label = vec![usize::MAX; n];
        let mut count = 0;
        let mut stack = Vec::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            label[start] = count;
            stack.push(start);
            while let Some(h) = stack.pop() {
                for g in [self.sigma(h), h ^ 1] {
                    if label[g] == usize::MAX {
                        label[g] = count;
                        stack.push(g);
                    }
                }
            }
            count += 1;
        }
        (label, count)
    }

    pub fn counts(&self) -> Counts {
        let (_, comps) = self.component_labels();
        Counts {
            v: self.rotations().len() + self.isolated,
            e: self.num_edges(),
            f: self.faces().len() + self.isolated,
            c: comps + self.isolated,
        }
    }

    /// Total genus of the capped surface, summed over components.
    pub fn genus(&self) -> usize {
        let Counts { v, e, f, c } = self.counts();
        let chi = v as i64 - e as i64 + f as i64;
        let twice = 2 * c as i64 - chi;
        assert!(
            twice >= 0 && twice % 2 == 0,
            "corrupted map: v - e + f = {chi} with {c} components"
        );
        (twice / 2) as usize
    }

    pub fn is_connected(&self) -> bool {
        self.counts().c == 1
    }

    /// Surface dual: vertices and faces swap, edges keep their indices.
    pub fn dual(&self) -> RibbonGraph {
        RibbonGraph {
            sigma: (0..self.sigma.len()).map(|h| self.phi(h) as u32).collect(),
            isolated: self.isolated,
        }
    }

    /// Orientation reversal.
    pub fn mirror(&self) -> RibbonGraph {
        let mut inv = vec![0u32; self.sigma.len()];
        for (h, &s) in self.sigma.iter().enumerate() {
            inv[s as usize] = h as u32;
        }
        RibbonGraph {
            sigma: inv,
            isolated: self.isolated,
        }
    }

    pub fn check_subset(&self, h: EdgeSubset) -> Result<(), RibbonError> {
        if h.fits(self.num_edges()) {
            Ok(())
        } else {
            Err(RibbonError::SubsetOutOfRange {
                subset: h.bits(),
                edges: self.num_edges(),
            })
        }
    }

    /// Spanning ribbon subgraph on the edges of `h`. Kept edges are
    /// renumbered in increasing order; vertices left without half-edges
    /// become isolated.
    pub fn restrict(&self, h: EdgeSubset) -> Result<RibbonGraph, RibbonError> {
        self.check_subset(h)?;
        let m = self.num_edges();
        let mut new_edge = vec![usize::MAX; m];
        for (k, e) in h.iter().enumerate() {
            new_edge[e] = k;
        }
        let relabel = |d: usize| 2 * new_edge[d / 2] + (d & 1);
        let mut sigma = vec![0u32; 2 * h.len()];
        let mut isolated = self.isolated;
        for rot in self.rotations() {
            let kept: Vec<usize> = rot.iter().copied().filter(|&d| h.contains(d / 2)).collect();
            if kept.is_empty() {
                isolated += 1;
                continue;
            }
            for (k, &d) in kept.iter().enumerate() {
                sigma[relabel(d)] = relabel(kept[(k + 1) % kept.len()]) as u32;
            }
        }
        Ok(RibbonGraph { sigma, isolated })
    }

    fn check_edge(&self, e: usize) -> Result<(), RibbonError> {
        if e < self.num_edges() {
            Ok(())
        } else {
            Err(RibbonError::EdgeOutOfRange {
                edge: e,
                edges: self.num_edges(),
            })
        }
    }

    /// Ribbon deletion: the result is capped to its own surface.
    pub fn delete_ribbon(&self, e: usize) -> Result<RibbonGraph, RibbonError> {
        self.check_edge(e)?;
        self.restrict(self.all_edges().without(e))
    }

    /// Contraction, defined for every edge as dual ∘ delete ∘ dual.
    pub fn contract(&self, e: usize) -> Result<RibbonGraph, RibbonError> {
        self.check_edge(e)?;
        Ok(self.dual().delete_ribbon(e)?.dual())
    }

    /// An edge whose deletion disconnects its component.
    pub fn is_bridge(&self, e: usize) -> bool {
        let g = self.underlying();
        let (a, b) = g.edges[e];
        if a == b {
            return false;
        }
        let mut dsu = Dsu::new(g.vertices);
        for (i, &(x, y)) in g.edges.iter().enumerate() {
            if i != e {
                dsu.union(x, y);
            }
        }
        dsu.find(a) != dsu.find(b)
    }

    pub fn is_loop(&self, e: usize) -> bool {
        let vof = self.vertex_of();
        vof[2 * e] == vof[2 * e + 1]
    }

    /// Disjoint union; edges of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &RibbonGraph) -> RibbonGraph {
        let off = self.sigma.len() as u32;
        let mut sigma = self.sigma.clone();
        sigma.extend(other.sigma.iter().map(|&x| x + off));
        RibbonGraph {
            sigma,
            isolated: self.isolated + other.isolated,
        }
    }

    /// Underlying multigraph; isolated vertices are numbered last.
    pub fn underlying(&self) -> Multigraph {
        let vof = self.vertex_of();
        let v = self.rotations().len();
        Multigraph {
            vertices: v + self.isolated,
            edges: (0..self.num_edges())
                .map(|e| (vof[2 * e], vof[2 * e + 1]))
                .collect(),
        }
    }

    /// Canonical code invariant under half-edge relabeling that conjugates
    /// both permutations.
    pub fn canonical_form(&self) -> CanonicalForm {
        let (label, count) = self.component_labels();
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); count];
        for (h, &c) in label.iter().enumerate() {
            members[c].push(h);
        }
        let mut components: Vec<Vec<u32>> = members
            .iter()
            .map(|darts| {
                darts
                    .iter()
                    .map(|&s| self.bfs_code(s, darts.len()))
                    .min()
                    .expect("component has half-edges")
            })
            .collect();
        components.sort();
        CanonicalForm {
            components,
            isolated: self.isolated,
        }
    }

    // Labels half-edges in breadth-first order from `start`, visiting sigma
    // then alpha, and records (label(sigma h), label(alpha h)) per label.
    fn bfs_code(&self, start: usize, size: usize) -> Vec<u32> {
        let mut label: Vec<u32> = vec![u32::MAX; self.sigma.len()];
        let mut order = Vec::with_capacity(size);
        label[start] = 0;
        order.push(start);
        let mut code = Vec::with_capacity(2 * size);
        let mut i = 0;
        while i < order.len() {
            let h = order[i];
            for g in [self.sigma(h), h ^ 1] {
                if label[g] == u32::MAX {
                    label[g] = order.len() as u32;
                    order.push(g);
                }
                code.push(label[g]);
            }
            i += 1;
        }
        code
    }

    pub fn is_isomorphic(&self, other: &RibbonGraph) -> bool {
        self.num_edges() == other.num_edges()
            && self.isolated == other.isolated
            && self.canonical_form() == other.canonical_form()
    }
}

impl fmt::Debug for RibbonGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RibbonGraph{{rotations: {:?}", self.rotations())?;
        if self.isolated > 0 {
            write!(f, ", isolated: {}", self.isolated)?;
        }
        write!(f, "}}")
    }
}

/// Isomorphism-class key of a [`RibbonGraph`].
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CanonicalForm {
    components: Vec<Vec<u32>>,
    isolated: usize,
}

impl CanonicalForm {
    /// The canonical representative map.
    pub fn to_map(&self) -> RibbonGraph {
        let mut out = RibbonGraph::empty(self.isolated);
        for code in &self.components {
            let sigma: Vec<usize> = code.iter().step_by(2).map(|&x| x as usize).collect();
            let alpha: Vec<usize> = code
                .iter()
                .skip(1)
                .step_by(2)
                .map(|&x| x as usize)
                .collect();
            let comp =
                RibbonGraph::validate(&sigma, &alpha).expect("canonical code is a valid map");
            out = out.disjoint_union(&comp);
        }
        out
    }
}

impl fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .components
            .iter()
            .map(|c| {
                c.iter()
                    .map(|x| x.to_string())
                    .collect::<Vec<_>>()
                    .join(".")
            })
            .collect();
        write!(f, "[{}]+{}", parts.join("|"), self.isolated)
    }
}

/// Union-find over `0..n` with path halving.
#[derive(Clone, Debug)]
pub struct Dsu {
    parent: Vec<usize>,
    sets: usize,
}

impl Dsu {
    pub fn new(n: usize) -> Self {
        Dsu {
            parent: (0..n).collect(),
            sets: n,
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra.max(rb)] = ra.min(rb);
        self.sets -= 1;
        true
    }

    pub fn sets(&self) -> usize {
        self.sets
    }
}
