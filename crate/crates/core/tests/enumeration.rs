//! Generators checked against orbit counting over every rotation permutation.

use std::collections::BTreeMap;

use ribbonpoly::enumerate::{all_maps, chord_diagrams, connected_maps, MapFilter};
use ribbonpoly::RibbonGraph;

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..n {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Relabelings of half-edges commuting with `h -> h ^ 1`: an edge
/// permutation plus an orientation flip per edge.
fn relabelings(m: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    for p in permutations(m) {
        for flips in 0..1u32 << m {
            let mut g = vec![0; 2 * m];
            for (e, &t) in p.iter().enumerate() {
                let f = (flips >> e & 1) as usize;
                g[2 * e] = 2 * t + f;
                g[2 * e + 1] = 2 * t + (1 - f);
            }
            out.push(g);
        }
    }
    out
}

fn rank(p: &[usize]) -> usize {
    // Lehmer code, used as a dense index into all permutations
    let n = p.len();
    let mut r = 0;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        r = r * (n - i) + smaller;
    }
    r
}

/// One representative rotation per isomorphism class of maps with `m`
/// edges and no isolated vertices.
fn oracle_classes(m: usize) -> Vec<Vec<usize>> {
    let sigmas = permutations(2 * m);
    let group = relabelings(m);
    let mut index = vec![usize::MAX; sigmas.len()];
    for (i, s) in sigmas.iter().enumerate() {
        index[rank(s)] = i;
    }
    let mut seen = vec![false; sigmas.len()];
    let mut reps = Vec::new();
    for (i, s) in sigmas.iter().enumerate() {
        if seen[i] {
            continue;
        }
        reps.push(s.clone());
        for g in &group {
            // conjugate: g . s . g^-1
            let mut t = vec![0; s.len()];
            for h in 0..s.len() {
                t[g[h]] = g[s[h]];
            }
            seen[index[rank(&t)]] = true;
        }
    }
    reps
}

fn genus_histogram(maps: &[RibbonGraph]) -> BTreeMap<(usize, usize, usize), usize> {
    let mut h = BTreeMap::new();
    for g in maps {
        let c = g.counts();
        *h.entry((g.genus(), c.v, c.c)).or_insert(0) += 1;
    }
    h
}

fn oracle_maps(m: usize) -> Vec<RibbonGraph> {
    oracle_classes(m)
        .iter()
        .map(|s| RibbonGraph::from_sigma(s).unwrap())
        .collect()
}

#[test]
fn connected_classes_match_orbit_count() {
    let levels = connected_maps(4).unwrap();
    assert_eq!(levels[0], vec![RibbonGraph::empty(1)]);
    for (m, level) in levels.iter().enumerate().skip(1) {
        let oracle: Vec<RibbonGraph> = oracle_maps(m)
            .into_iter()
            .filter(|g| g.is_connected())
            .collect();
        assert_eq!(level.len(), oracle.len(), "{m} edges");
        assert_eq!(
            genus_histogram(level),
            genus_histogram(&oracle),
            "{m} edges"
        );
        for g in &oracle {
            assert!(level.iter().any(|h| h.is_isomorphic(g)));
        }
    }
}

#[test]
fn connected_class_counts() {
    let sizes: Vec<usize> = connected_maps(5).unwrap().iter().map(Vec::len).collect();
    assert_eq!(sizes, vec![1, 2, 5, 20, 107, 870]);
}

#[test]
fn generated_maps_are_canonical_and_distinct() {
    for level in connected_maps(4).unwrap() {
        for (i, g) in level.iter().enumerate() {
            assert_eq!(g.canonical_form().to_map(), *g);
            for h in &level[..i] {
                assert!(!g.is_isomorphic(h));
            }
        }
    }
}

#[test]
fn chord_diagrams_match_one_vertex_orbits() {
    for m in 0..=4 {
        let oracle: Vec<RibbonGraph> = if m == 0 {
            vec![RibbonGraph::empty(1)]
        } else {
            oracle_maps(m)
                .into_iter()
                .filter(|g| g.counts().v == 1)
                .collect()
        };
        let cd = chord_diagrams(m).unwrap();
        assert_eq!(cd.len(), oracle.len(), "{m} chords");
        assert_eq!(genus_histogram(&cd), genus_histogram(&oracle));
    }
}

#[test]
fn disconnected_pool_matches_oracle_with_isolated_vertices() {
    let max_edges = 3;
    let max_vertices = 3;
    let pool = all_maps(
        max_edges,
        MapFilter {
            max_vertices: Some(max_vertices),
            ..Default::default()
        },
    )
    .unwrap();
    let mut oracle = Vec::new();
    for m in 0..=max_edges {
        let base = if m == 0 {
            vec![RibbonGraph::empty(0)]
        } else {
            oracle_maps(m)
        };
        for g in base {
            for iso in 0..=max_vertices {
                let h = g.clone().with_isolated(iso);
                let v = h.counts().v;
                if v >= 1 && v <= max_vertices {
                    oracle.push(h);
                }
            }
        }
    }
    assert_eq!(pool.len(), oracle.len());
    assert_eq!(genus_histogram(&pool), genus_histogram(&oracle));
}

#[test]
fn filters_select_subsets() {
    let all = all_maps(4, MapFilter::connected()).unwrap();
    let one_face = all_maps(
        4,
        MapFilter {
            connected: true,
            one_face: true,
            exact_edges: true,
            ..Default::default()
        },
    )
    .unwrap();
    let expected: Vec<&RibbonGraph> = all
        .iter()
        .filter(|g| g.counts().f == 1 && g.num_edges() == 4)
        .collect();
    assert_eq!(one_face.iter().collect::<Vec<_>>(), expected);

    let bouquets = all_maps(
        4,
        MapFilter {
            one_vertex: true,
            one_face: true,
            exact_edges: true,
            ..Default::default()
        },
    )
    .unwrap();
    assert_eq!(bouquets.len(), 4);
    assert!(bouquets.iter().all(|g| g.genus() == 2));
}
