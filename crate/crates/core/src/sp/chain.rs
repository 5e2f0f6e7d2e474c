use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use super::Graph;
use crate::Vertex;

/// A path `v_0 … v_l` whose internal vertices have degree 2 in the host
/// graph and are not terminals.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Chain {
    vertices: Vec<Vertex>,
}

impl Chain {
    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    /// Number of edges.
    pub fn length(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn interior(&self) -> &[Vertex] {
        &self.vertices[1..self.vertices.len() - 1]
    }

    pub fn ends(&self) -> (Vertex, Vertex) {
        (self.vertices[0], self.vertices[self.vertices.len() - 1])
    }
}

/// The lexicographically smallest chain of length `l` whose internal
/// vertices have degree 2 and avoid the graph's terminals, if any exists.
/// Returns `None` for `l < 2`.
pub fn find_removable_chain(g: &Graph, l: usize) -> Option<Chain> {
    let excluded: Vec<Vertex> = g.terminals().map_or(Vec::new(), |(x, y)| alloc::vec![x, y]);
    find_chain_excluding(g, l, &excluded)
}

/// As [`find_removable_chain`], with an explicit set of vertices barred
/// from the interior in place of the terminals.
pub fn find_chain_excluding(g: &Graph, l: usize, excluded: &[Vertex]) -> Option<Chain> {
    if l < 2 {
        return None;
    }
    let eligible = |v: Vertex| g.degree(v) == 2 && !excluded.contains(&v);
    let mut seen = BTreeSet::new();
    let mut best: Option<Vec<Vertex>> = None;
    let mut offer = |window: &[Vertex]| {
        let distinct = window.iter().collect::<BTreeSet<_>>().len() == window.len();
        if !distinct {
            return;
        }
        let mut rev = window.to_vec();
        rev.reverse();
        let cand = if rev.as_slice() < window { rev } else { window.to_vec() };
        if best.as_ref().is_none_or(|b| cand < *b) {
            best = Some(cand);
        }
    };

    for &start in g.vertices() {
        if !eligible(start) || seen.contains(&start) {
            continue;
        }
        // walk the maximal run of eligible vertices through `start`
        seen.insert(start);
        let nb: Vec<Vertex> = g.neighbours(start).collect();
        let (left, closed) = walk(g, start, nb[0], &eligible, &mut seen);
        if closed {
            // the whole run is a cycle of eligible vertices: left = [start, ...]
            let r = left.len();
            if r > l {
                for i in 0..r {
                    let window: Vec<Vertex> = (0..=l).map(|j| left[(i + j) % r]).collect();
                    offer(&window);
                }
            }
            continue;
        }
        let (right, _) = walk(g, start, nb[1], &eligible, &mut seen);
        // left = [start, u.., end_a], right = [start, w.., end_b]
        let mut seq: Vec<Vertex> = left.into_iter().rev().collect();
        seq.extend(right.into_iter().skip(1));
        if seq.len() > l {
            for window in seq.windows(l + 1) {
                offer(window);
            }
        }
    }
    best.map(|vertices| Chain { vertices })
}

/// Follows eligible vertices from `start` via `next`. Returns the visited
/// sequence starting with `start` and ending with the first ineligible
/// vertex, or the cycle back to (excluding) `start` with `true`.
fn walk(
    g: &Graph,
    start: Vertex,
    mut next: Vertex,
    eligible: &impl Fn(Vertex) -> bool,
    seen: &mut BTreeSet<Vertex>,
) -> (Vec<Vertex>, bool) {
    let mut seq = alloc::vec![start];
    let mut prev = start;
    loop {
        if next == start {
            return (seq, true);
        }
        seq.push(next);
        if !eligible(next) {
            return (seq, false);
        }
        seen.insert(next);
        let after = g.neighbours(next).find(|&w| w != prev).expect("degree 2");
        prev = next;
        next = after;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sp::{parse_sp_expression, realize};

    fn r(s: &str) -> Graph {
        realize(&parse_sp_expression(s).unwrap()).unwrap()
    }

    fn check_invariants(g: &Graph, c: &Chain, l: usize) {
        assert_eq!(c.length(), l);
        let set: BTreeSet<_> = c.vertices().iter().collect();
        assert_eq!(set.len(), l + 1);
        for w in c.vertices().windows(2) {
            assert!(g.has_edge(w[0], w[1]));
        }
        for &v in c.interior() {
            assert_eq!(g.degree(v), 2);
            assert!(!g.is_terminal(v));
        }
    }

    #[test]
    fn six_cycle() {
        let g = Graph::new(0..6, (0..6).map(|i| (i, (i + 1) % 6)), None).unwrap();
        let c = find_removable_chain(&g, 3).unwrap();
        check_invariants(&g, &c, 3);
        assert_eq!(c.vertices(), &[0, 1, 2, 3]);
    }

    #[test]
    fn cycle_too_short_for_window() {
        let g = Graph::new(0..4, (0..4).map(|i| (i, (i + 1) % 4)), None).unwrap();
        assert!(find_removable_chain(&g, 4).is_none());
        assert!(find_removable_chain(&g, 3).is_some());
    }

    #[test]
    fn bare_path_with_terminal_ends() {
        let p = r("e^2");
        let c = find_removable_chain(&p, 2).unwrap();
        assert_eq!(c.vertices(), &[0, 2, 1]);
        assert!(find_removable_chain(&r("e"), 2).is_none());
        assert!(find_removable_chain(&r("e^2"), 3).is_none());
    }

    #[test]
    fn theta_picks_short_branch() {
        let g = r("P(e^2,e^3)");
        let c = find_removable_chain(&g, 2).unwrap();
        check_invariants(&g, &c, 2);
        assert_eq!(c.vertices(), &[0, 2, 1]);
    }

    #[test]
    fn terminals_block_interior() {
        // C4 with terminals on opposite corners: each side has one free vertex
        let g = r("P(e^2,e^2)");
        assert!(find_removable_chain(&g, 3).is_none());
        assert!(find_chain_excluding(&g, 3, &[]).is_some());
    }

    #[test]
    fn short_l_is_absent() {
        assert!(find_removable_chain(&r("P(e^2,e^2)"), 1).is_none());
    }
}
