use alloc::vec;
use alloc::vec::Vec;

use crate::coloring::Coloring;
use crate::graph::BitGraph;
use crate::BitSet;

/// Greedy DSATUR coloring: repeatedly color the uncolored vertex with the
/// most distinct neighbor colors (smallest id on ties) with its smallest
/// free color.
pub fn dsatur_upper(g: &BitGraph) -> Coloring {
    let m = g.vertex_count();
    let mut color = vec![usize::MAX; m];
    // Colors seen among each vertex's neighbors; at most m colors are used.
    let mut seen: Vec<BitSet> = (0..m).map(|_| BitSet::new(m)).collect();
    let mut saturation = vec![0usize; m];
    for _ in 0..m {
        let v = (0..m)
            .filter(|&v| color[v] == usize::MAX)
            .fold(None, |best: Option<usize>, v| match best {
                Some(b) if saturation[b] >= saturation[v] => Some(b),
                _ => Some(v),
            })
            .unwrap();
        let c = (0..m).find(|&c| !seen[v].contains(c)).unwrap();
        color[v] = c;
        for w in g.neighbors(v).iter() {
            if !seen[w].contains(c) {
                seen[w].insert(c);
                saturation[w] += 1;
            }
        }
    }
    Coloring::new(color).expect("greedy colors are contiguous")
}
