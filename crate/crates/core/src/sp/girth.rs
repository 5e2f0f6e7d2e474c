use alloc::collections::VecDeque;
use alloc::vec;

use super::Graph;

/// Length of a shortest cycle, or `Acyclic` for forests.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GirthValue {
    Finite(u32),
    Acyclic,
}

impl GirthValue {
    /// Membership test for "girth at least `k`"; forests always qualify.
    pub fn at_least(self, k: u32) -> bool {
        match self {
            GirthValue::Finite(g) => g >= k,
            GirthValue::Acyclic => true,
        }
    }
}

/// Exact girth: for every edge `uv`, the shortest `u`–`v` path avoiding
/// that edge closes a cycle. Searches stop once they cannot beat the best
/// cycle found so far.
pub fn girth(g: &Graph) -> GirthValue {
    let adj = g.adj_indices();
    let n = adj.len();
    let mut best = u32::MAX;
    let mut dist = vec![u32::MAX; n];
    let mut touched = vec![];
    let mut queue = VecDeque::new();
    for u in 0..n {
        for &v in adj[u].iter().filter(|&&v| v > u) {
            if best == 3 {
                return GirthValue::Finite(3);
            }
            for &t in &touched {
                dist[t] = u32::MAX;
            }
            touched.clear();
            queue.clear();
            dist[u] = 0;
            touched.push(u);
            queue.push_back(u);
            'bfs: while let Some(a) = queue.pop_front() {
                // a cycle through uv has length dist(v) + 1
                if dist[a] + 2 >= best {
                    break;
                }
                for &b in &adj[a] {
                    if a == u && b == v {
                        continue;
                    }
                    if dist[b] == u32::MAX {
                        dist[b] = dist[a] + 1;
                        touched.push(b);
                        if b == v {
                            best = best.min(dist[b] + 1);
                            break 'bfs;
                        }
                        queue.push_back(b);
                    }
                }
            }
        }
    }
    if best == u32::MAX {
        GirthValue::Acyclic
    } else {
        GirthValue::Finite(best)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sp::{parse_sp_expression, realize};

    fn girth_of(s: &str) -> GirthValue {
        girth(&realize(&parse_sp_expression(s).unwrap()).unwrap())
    }

    #[test]
    fn examples() {
        assert_eq!(girth_of("P(e^2,e^2)"), GirthValue::Finite(4));
        assert_eq!(girth_of("e"), GirthValue::Acyclic);
        assert_eq!(girth_of("P(e^2,e^3)"), GirthValue::Finite(5));
        assert_eq!(girth_of("P(e,e^2)"), GirthValue::Finite(3));
        assert_eq!(girth_of("e^2|3"), GirthValue::Finite(4));
        assert_eq!(girth_of("S(e^4,P(e^3,e^5))"), GirthValue::Finite(8));
    }

    #[test]
    fn stretched_theta() {
        let t = parse_sp_expression("P(e^2,e^3)").unwrap().stretch(3).unwrap();
        assert_eq!(girth(&realize(&t).unwrap()), GirthValue::Finite(15));
    }

    #[test]
    fn at_least() {
        assert!(GirthValue::Acyclic.at_least(100));
        assert!(GirthValue::Finite(5).at_least(5));
        assert!(!GirthValue::Finite(4).at_least(5));
    }
}
