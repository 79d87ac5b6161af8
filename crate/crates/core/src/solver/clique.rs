use alloc::vec::Vec;

use crate::graph::BitGraph;
use crate::BitSet;

/// A large clique, for the lower bound `χ >= ω`. In `D(P)` a clique is a
/// family of pairwise disjoint segments.
///
/// Greedy from every start vertex (next vertex: most neighbors among the
/// remaining candidates, smallest id on ties), then (1, 2)-swaps until no
/// swap grows the clique. Deterministic.
pub fn clique_lower(g: &BitGraph) -> (usize, Vec<usize>) {
    let m = g.vertex_count();
    let mut best: Vec<usize> = Vec::new();
    for start in 0..m {
        let mut clique = alloc::vec![start];
        let mut cand = g.neighbors(start).clone();
        grow(g, &mut clique, &mut cand);
        if clique.len() > best.len() {
            best = clique;
        }
    }
    while let Some(bigger) = swap_improve(g, &best) {
        best = bigger;
    }
    best.sort_unstable();
    (best.len(), best)
}

fn grow(g: &BitGraph, clique: &mut Vec<usize>, cand: &mut BitSet) {
    while let Some(v) = cand.iter().fold(None, |best: Option<(usize, usize)>, v| {
        let score = g.neighbors(v).intersection_count(cand);
        match best {
            Some((_, s)) if s >= score => best,
            _ => Some((v, score)),
        }
    }) {
        let v = v.0;
        clique.push(v);
        cand.intersect_with(g.neighbors(v));
    }
}

/// Replaces one clique vertex by two adjacent vertices, then grows greedily.
fn swap_improve(g: &BitGraph, clique: &[usize]) -> Option<Vec<usize>> {
    let m = g.vertex_count();
    for drop in 0..clique.len() {
        let mut cand = BitSet::full(m);
        for (a, &v) in clique.iter().enumerate() {
            if a != drop {
                cand.intersect_with(g.neighbors(v));
            }
        }
        for &v in clique {
            if cand.contains(v) {
                cand.remove(v);
            }
        }
        let options: Vec<usize> = cand.iter().collect();
        for (a, &x) in options.iter().enumerate() {
            if let Some(&y) = options[a + 1..].iter().find(|&&y| g.adjacent(x, y)) {
                let mut next: Vec<usize> =
                    clique.iter().enumerate().filter(|&(b, _)| b != drop).map(|(_, &v)| v).collect();
                next.push(x);
                next.push(y);
                let mut rest = cand.clone();
                rest.intersect_with(g.neighbors(x));
                rest.intersect_with(g.neighbors(y));
                grow(g, &mut next, &mut rest);
                return Some(next);
            }
        }
    }
    None
}
