//! Isomorph-free generation of small maps and collision searches.
//!
//! Connected maps are grown one edge at a time: every connected map with at
//! least one edge has an edge whose ribbon deletion leaves a connected map
//! (possibly plus one isolated vertex, for a pendant edge), so re-inserting
//! a pair of half-edges in every position reaches every class. Classes are
//! deduplicated by canonical form and each is represented by its canonical
//! map, which makes every stream deterministic.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::embed::EmbeddedGraph;
use crate::polys::{self, InvariantError};
use crate::rgraph::{CanonicalForm, Multigraph, RibbonGraph};
use crate::Poly;

/// Largest edge count handled by the generators.
pub const MAX_ENUM_EDGES: usize = 6;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("{0} edges exceed the enumeration cap of {MAX_ENUM_EDGES}")]
    TooLarge(usize),
    #[error("disconnected enumeration needs a vertex bound")]
    UnboundedVertices,
    #[error("edge ({0}, {1}) refers to a missing vertex")]
    BadEdge(usize, usize),
    #[error(transparent)]
    Invariant(#[from] InvariantError),
}

/// Which maps [`all_maps`] emits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct MapFilter {
    pub connected: bool,
    pub one_vertex: bool,
    pub one_face: bool,
    /// Only maps with exactly `max_edges` edges.
    pub exact_edges: bool,
    /// Required when `connected` is false.
    pub max_vertices: Option<usize>,
}

impl MapFilter {
    pub fn connected() -> Self {
        MapFilter {
            connected: true,
            ..Default::default()
        }
    }

    fn accepts(&self, g: &RibbonGraph, max_edges: usize) -> bool {
        let c = g.counts();
        (!self.connected || c.c == 1)
            && (!self.one_vertex || c.v == 1)
            && (!self.one_face || c.f == 1)
            && (!self.exact_edges || c.e == max_edges)
            && self.max_vertices.is_none_or(|mv| c.v <= mv)
    }
}

/// Every rotation system of a multigraph: one cyclic order of incident
/// half-edges per vertex, each counted once up to rotation. Edge `i` runs
/// from half-edge `2i` at its first endpoint to `2i + 1` at its second.
pub fn rotation_systems(g: &Multigraph) -> Result<Vec<RibbonGraph>, EnumerateError> {
    if g.edges.len() > MAX_ENUM_EDGES {
        return Err(EnumerateError::TooLarge(g.edges.len()));
    }
    let mut incident: Vec<Vec<usize>> = vec![Vec::new(); g.vertices];
    for (i, &(a, b)) in g.edges.iter().enumerate() {
        if a >= g.vertices || b >= g.vertices {
            return Err(EnumerateError::BadEdge(a, b));
        }
        incident[a].push(2 * i);
        incident[b].push(2 * i + 1);
    }
    let per_vertex: Vec<Vec<Vec<usize>>> = incident.iter().map(|h| cyclic_orders(h)).collect();
    let mut out = Vec::new();
    let mut choice = vec![0usize; g.vertices];
    loop {
        let rotations: Vec<Vec<usize>> = per_vertex
            .iter()
            .zip(&choice)
            .map(|(orders, &k)| orders[k].clone())
            .collect();
        out.push(
            RibbonGraph::from_rotations(&rotations).expect("rotation system is a permutation"),
        );
        // odometer over the per-vertex choices
        let mut v = 0;
        loop {
            if v == g.vertices {
                return Ok(out);
            }
            choice[v] += 1;
            if choice[v] < per_vertex[v].len() {
                break;
            }
            choice[v] = 0;
            v += 1;
        }
    }
}

/// Cyclic orders of `items` with the first item fixed in front.
fn cyclic_orders(items: &[usize]) -> Vec<Vec<usize>> {
    let Some((&first, rest)) = items.split_first() else {
        return vec![Vec::new()];
    };
    let mut out = Vec::new();
    let mut rest = rest.to_vec();
    permutations(&mut rest, 0, &mut |p| {
        let mut v = vec![first];
        v.extend_from_slice(p);
        out.push(v);
    });
    out
}

fn permutations(items: &mut [usize], k: usize, emit: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        emit(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permutations(items, k + 1, emit);
        items.swap(k, i);
    }
}

/// Connected maps by edge count: entry `m` lists every class with `m` edges.
pub fn connected_maps(max_edges: usize) -> Result<Vec<Vec<RibbonGraph>>, EnumerateError> {
    if max_edges > MAX_ENUM_EDGES {
        return Err(EnumerateError::TooLarge(max_edges));
    }
    let mut levels = vec![vec![RibbonGraph::empty(1)]];
    for _ in 0..max_edges {
        let prev = levels.last().expect("nonempty");
        let mut next: BTreeMap<CanonicalForm, ()> = BTreeMap::new();
        for g in prev {
            for h in add_edge(g) {
                next.insert(h.canonical_form(), ());
            }
        }
        levels.push(next.keys().map(CanonicalForm::to_map).collect());
    }
    Ok(levels)
}

/// All ways of adding one edge to a connected map while staying connected.
fn add_edge(g: &RibbonGraph) -> Vec<RibbonGraph> {
    let n = g.num_half_edges();
    if n == 0 {
        return vec![
            RibbonGraph::from_rotations(&[vec![0, 1]]).expect("loop"),
            RibbonGraph::from_rotations(&[vec![0], vec![1]]).expect("edge"),
        ];
    }
    let (a, b) = (n, n + 1);
    let base = g.sigma_array();
    let mut out = Vec::new();
    for d in 0..n {
        let mut s = base.clone();
        s.push(usize::MAX);
        s.push(usize::MAX);
        s[a] = s[d];
        s[d] = a;
        // b as a new pendant vertex
        let mut pendant = s.clone();
        pendant[b] = b;
        out.push(RibbonGraph::from_sigma(&pendant).expect("valid insertion"));
        for d2 in 0..=a {
            let mut t = s.clone();
            t[b] = t[d2];
            t[d2] = b;
            out.push(RibbonGraph::from_sigma(&t).expect("valid insertion"));
        }
    }
    out
}

/// One-vertex maps with exactly `m` edges: chord diagrams on `2m` points up to rotation.
pub fn chord_diagrams(m: usize) -> Result<Vec<RibbonGraph>, EnumerateError> {
    if m > MAX_ENUM_EDGES {
        return Err(EnumerateError::TooLarge(m));
    }
    if m == 0 {
        return Ok(vec![RibbonGraph::empty(1)]);
    }
    let n = 2 * m;
    let sigma: Vec<usize> = (0..n).map(|h| (h + 1) % n).collect();
    let mut classes = BTreeMap::new();
    for alpha in matchings(n) {
        let g = RibbonGraph::validate(&sigma, &alpha).expect("matching is a valid pairing");
        classes.insert(g.canonical_form(), ());
    }
    Ok(classes.keys().map(CanonicalForm::to_map).collect())
}

/// Perfect matchings of `0..n` as involution image arrays.
pub fn matchings(n: usize) -> Vec<Vec<usize>> {
    fn go(alpha: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        let Some(i) = alpha.iter().position(|&x| x == usize::MAX) else {
            out.push(alpha.clone());
            return;
        };
        for j in i + 1..alpha.len() {
            if alpha[j] == usize::MAX {
                alpha[i] = j;
                alpha[j] = i;
                go(alpha, out);
                alpha[i] = usize::MAX;
                alpha[j] = usize::MAX;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut vec![usize::MAX; n], &mut out);
    out
}

/// Every isomorphism class of maps with at most `max_edges` edges passing
/// the filter, ordered by edge count then canonical form.
pub fn all_maps(max_edges: usize, filter: MapFilter) -> Result<Vec<RibbonGraph>, EnumerateError> {
    if max_edges > MAX_ENUM_EDGES {
        return Err(EnumerateError::TooLarge(max_edges));
    }
    let candidates: Vec<RibbonGraph> = if filter.one_vertex {
        (0..=max_edges)
            .map(chord_diagrams)
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .flatten()
            .collect()
    } else if filter.connected {
        connected_maps(max_edges)?.into_iter().flatten().collect()
    } else {
        let max_vertices = filter
            .max_vertices
            .ok_or(EnumerateError::UnboundedVertices)?;
        disconnected_maps(max_edges, max_vertices)?
    };
    Ok(candidates
        .into_iter()
        .filter(|g| filter.accepts(g, max_edges))
        .collect())
}

/// Multisets of connected components within the edge and vertex budgets.
fn disconnected_maps(
    max_edges: usize,
    max_vertices: usize,
) -> Result<Vec<RibbonGraph>, EnumerateError> {
    let parts: Vec<(RibbonGraph, usize, usize)> = connected_maps(max_edges)?
        .into_iter()
        .flatten()
        .map(|g| {
            let c = g.counts();
            (g, c.e, c.v)
        })
        .filter(|&(_, _, v)| v <= max_vertices)
        .collect();
    let mut classes: BTreeMap<(usize, CanonicalForm), RibbonGraph> = BTreeMap::new();
    fn go(
        parts: &[(RibbonGraph, usize, usize)],
        from: usize,
        acc: &RibbonGraph,
        edges: usize,
        vertices: usize,
        out: &mut BTreeMap<(usize, CanonicalForm), RibbonGraph>,
    ) {
        for i in from..parts.len() {
            let (g, e, v) = &parts[i];
            if *e > edges || *v > vertices {
                continue;
            }
            let u = acc.disjoint_union(g);
            out.insert((u.num_edges(), u.canonical_form()), u.clone());
            go(parts, i, &u, edges - e, vertices - v, out);
        }
    }
    go(
        &parts,
        0,
        &RibbonGraph::empty(0),
        max_edges,
        max_vertices,
        &mut classes,
    );
    Ok(classes
        .into_iter()
        .map(|((_, cf), _)| cf.to_map())
        .collect())
}

/// Invariants available to the collision searches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Invariant {
    Krushkal,
    LasVergnas,
    BollobasRiordan,
    Tutte,
}

impl Invariant {
    pub fn compute(self, g: &RibbonGraph) -> Result<Poly, InvariantError> {
        match self {
            Invariant::Krushkal => polys::krushkal(&EmbeddedGraph::cellular(g.clone())),
            Invariant::LasVergnas => polys::las_vergnas(g),
            Invariant::BollobasRiordan => polys::bollobas_riordan(g),
            Invariant::Tutte => polys::tutte(g),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Invariant::Krushkal => "krushkal",
            Invariant::LasVergnas => "lv",
            Invariant::BollobasRiordan => "br",
            Invariant::Tutte => "tutte",
        }
    }
}

impl std::str::FromStr for Invariant {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "krushkal" => Ok(Invariant::Krushkal),
            "lv" | "las_vergnas" => Ok(Invariant::LasVergnas),
            "br" | "bollobas_riordan" => Ok(Invariant::BollobasRiordan),
            "tutte" => Ok(Invariant::Tutte),
            _ => Err(format!("unknown invariant `{s}`")),
        }
    }
}

/// Two non-isomorphic maps agreeing on one invariant.
#[derive(Clone, Debug)]
pub struct Witness {
    pub first: RibbonGraph,
    pub second: RibbonGraph,
    pub first_form: CanonicalForm,
    pub second_form: CanonicalForm,
    pub shared: Poly,
    /// Values of the distinguishing invariant, when one was requested.
    pub distinct: Option<(Poly, Poly)>,
    /// The two maps are orientation reversals of each other.
    pub mirror_images: bool,
    /// The two maps agree once isolated vertices are dropped.
    pub isolated_padding: bool,
}

/// All unordered pairs of non-isomorphic pool members that agree on
/// `equal` and, if `distinct` is given, differ on it. Isomorphic duplicates
/// in the pool are collapsed first.
pub fn search_collisions(
    pool: &[RibbonGraph],
    equal: Invariant,
    distinct: Option<Invariant>,
) -> Result<Vec<Witness>, EnumerateError> {
    let mut classes: BTreeMap<CanonicalForm, RibbonGraph> = BTreeMap::new();
    for g in pool {
        classes
            .entry(g.canonical_form())
            .or_insert_with(|| g.clone());
    }
    let members: Vec<(CanonicalForm, RibbonGraph)> = classes.into_iter().collect();
    let values: Vec<(Poly, Option<Poly>)> = members
        .par_iter()
        .map(|(_, g)| -> Result<_, InvariantError> {
            Ok((
                equal.compute(g)?,
                distinct.map(|d| d.compute(g)).transpose()?,
            ))
        })
        .collect::<Result<_, _>>()?;

    let mut groups: BTreeMap<String, Vec<usize>> = BTreeMap::new();
    for (i, (v, _)) in values.iter().enumerate() {
        groups.entry(v.to_string()).or_default().push(i);
    }
    let mut out = Vec::new();
    for idx in groups.values() {
        for (a, &i) in idx.iter().enumerate() {
            for &j in &idx[a + 1..] {
                let (di, dj) = (&values[i].1, &values[j].1);
                if distinct.is_some() && di == dj {
                    continue;
                }
                let (fi, gi) = &members[i];
                let (fj, gj) = &members[j];
                out.push(Witness {
                    first: gi.clone(),
                    second: gj.clone(),
                    first_form: fi.clone(),
                    second_form: fj.clone(),
                    shared: values[i].0.clone(),
                    distinct: di.clone().zip(dj.clone()),
                    mirror_images: gi.mirror().canonical_form() == *fj,
                    isolated_padding: gi.clone().with_isolated(0).canonical_form()
                        == gj.clone().with_isolated(0).canonical_form(),
                });
            }
        }
    }
    Ok(out)
}

/// Non-isomorphic pairs with equal Krushkal polynomials.
pub fn search_krushkal_equal(pool: &[RibbonGraph]) -> Result<Vec<Witness>, EnumerateError> {
    search_collisions(pool, Invariant::Krushkal, None)
}
