//! Colour sets, list assignments, m-fold colourings and their validity checks.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;
use core::fmt;

use crate::error::{precondition, Result};
use crate::sp::Graph;
use crate::{Colour, Vertex};

/// A finite set of colours, iterated in ascending order.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ColourSet(BTreeSet<Colour>);

impl ColourSet {
    pub fn new() -> Self {
        ColourSet(BTreeSet::new())
    }

    /// The contiguous block `start..start + len`.
    pub fn range(start: Colour, len: u32) -> Self {
        (start..start + len).collect()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, c: Colour) -> bool {
        self.0.contains(&c)
    }

    pub fn insert(&mut self, c: Colour) -> bool {
        self.0.insert(c)
    }

    pub fn remove(&mut self, c: Colour) -> bool {
        self.0.remove(&c)
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = Colour> + '_ {
        self.0.iter().copied()
    }

    pub fn max(&self) -> Option<Colour> {
        self.0.last().copied()
    }

    pub fn is_subset(&self, other: &ColourSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &ColourSet) -> bool {
        self.0.is_disjoint(&other.0)
    }

    pub fn intersection_len(&self, other: &ColourSet) -> usize {
        self.0.intersection(&other.0).count()
    }

    pub fn intersection(&self, other: &ColourSet) -> ColourSet {
        ColourSet(self.0.intersection(&other.0).copied().collect())
    }

    pub fn union(&self, other: &ColourSet) -> ColourSet {
        ColourSet(self.0.union(&other.0).copied().collect())
    }

    pub fn difference(&self, other: &ColourSet) -> ColourSet {
        ColourSet(self.0.difference(&other.0).copied().collect())
    }

    pub fn extend(&mut self, other: &ColourSet) {
        self.0.extend(other.iter());
    }

    /// The `n` smallest colours (all of them when `n ≥ len`).
    pub fn smallest(&self, n: usize) -> ColourSet {
        ColourSet(self.0.iter().take(n).copied().collect())
    }

    pub fn to_vec(&self) -> Vec<Colour> {
        self.iter().collect()
    }
}

impl FromIterator<Colour> for ColourSet {
    fn from_iter<I: IntoIterator<Item = Colour>>(iter: I) -> Self {
        ColourSet(iter.into_iter().collect())
    }
}

impl<const N: usize> From<[Colour; N]> for ColourSet {
    fn from(arr: [Colour; N]) -> Self {
        arr.into_iter().collect()
    }
}

impl<'a> IntoIterator for &'a ColourSet {
    type Item = Colour;
    type IntoIter = core::iter::Copied<alloc::collections::btree_set::Iter<'a, Colour>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

impl fmt::Debug for ColourSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl fmt::Display for ColourSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("}")
    }
}

/// Vertex → permitted colours.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ListAssignment(BTreeMap<Vertex, ColourSet>);

impl ListAssignment {
    pub fn new() -> Self {
        ListAssignment(BTreeMap::new())
    }

    pub fn get(&self, v: Vertex) -> Option<&ColourSet> {
        self.0.get(&v)
    }

    pub fn insert(&mut self, v: Vertex, list: ColourSet) -> Option<ColourSet> {
        self.0.insert(v, list)
    }

    pub fn get_mut(&mut self, v: Vertex) -> Option<&mut ColourSet> {
        self.0.get_mut(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, &ColourSet)> + '_ {
        self.0.iter().map(|(v, l)| (*v, l))
    }

    /// Lists along a vertex sequence; fails on the first vertex without a list.
    pub fn along(&self, path: &[Vertex]) -> Result<Vec<ColourSet>> {
        path.iter()
            .map(|v| self.get(*v).cloned().ok_or_else(|| precondition(alloc::format!("vertex {v} has no list"))))
            .collect()
    }
}

impl FromIterator<(Vertex, ColourSet)> for ListAssignment {
    fn from_iter<I: IntoIterator<Item = (Vertex, ColourSet)>>(iter: I) -> Self {
        ListAssignment(iter.into_iter().collect())
    }
}

/// An `m`-fold colouring; may be partial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiColouring {
    fold: usize,
    colours: BTreeMap<Vertex, ColourSet>,
}

impl MultiColouring {
    pub fn new(fold: usize) -> Self {
        MultiColouring { fold, colours: BTreeMap::new() }
    }

    /// Colouring of the vertex sequence `path` by `sets` position-wise.
    pub fn from_path(fold: usize, path: &[Vertex], sets: &[ColourSet]) -> Self {
        debug_assert_eq!(path.len(), sets.len());
        MultiColouring { fold, colours: path.iter().copied().zip(sets.iter().cloned()).collect() }
    }

    pub fn fold(&self) -> usize {
        self.fold
    }

    pub fn get(&self, v: Vertex) -> Option<&ColourSet> {
        self.colours.get(&v)
    }

    pub fn set(&mut self, v: Vertex, colours: ColourSet) {
        self.colours.insert(v, colours);
    }

    pub fn len(&self) -> usize {
        self.colours.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colours.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, &ColourSet)> + '_ {
        self.colours.iter().map(|(v, c)| (*v, c))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    WrongSize { vertex: Vertex, size: usize, expected: usize },
    NotInList { vertex: Vertex, outside: ColourSet },
    Clash { u: Vertex, v: Vertex, shared: ColourSet },
    UnknownVertex { vertex: Vertex },
    MissingList { vertex: Vertex },
    ListTooSmall { vertex: Vertex, size: usize, required: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::WrongSize { vertex, size, expected } => {
                write!(f, "vertex {vertex} has {size} colours, expected {expected}")
            }
            Violation::NotInList { vertex, outside } => {
                write!(f, "vertex {vertex} uses {outside} outside its list")
            }
            Violation::Clash { u, v, shared } => write!(f, "edge {u}-{v} shares {shared}"),
            Violation::UnknownVertex { vertex } => write!(f, "vertex {vertex} is not in the graph"),
            Violation::MissingList { vertex } => write!(f, "vertex {vertex} has no list"),
            Violation::ListTooSmall { vertex, size, required } => {
                write!(f, "vertex {vertex} has a list of size {size} < {required}")
            }
        }
    }
}

/// Violations found by a check; empty means valid.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ValidityReport {
    pub violations: Vec<Violation>,
}

impl ValidityReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks `phi` against sizes `|φ(v)| = m`, containment `φ(v) ⊆ L(v)` and
/// disjointness on every edge with both ends coloured, where `m = phi.fold()`.
pub fn check_colouring(g: &Graph, lists: &ListAssignment, phi: &MultiColouring) -> ValidityReport {
    let m = phi.fold();
    let mut violations = Vec::new();
    for (v, set) in phi.iter() {
        if !g.contains(v) {
            violations.push(Violation::UnknownVertex { vertex: v });
            continue;
        }
        if set.len() != m {
            violations.push(Violation::WrongSize { vertex: v, size: set.len(), expected: m });
        }
        match lists.get(v) {
            None => violations.push(Violation::MissingList { vertex: v }),
            Some(list) => {
                let outside = set.difference(list);
                if !outside.is_empty() {
                    violations.push(Violation::NotInList { vertex: v, outside });
                }
            }
        }
    }
    for &(u, v) in g.edges() {
        if let (Some(a), Some(b)) = (phi.get(u), phi.get(v)) {
            let shared = a.intersection(b);
            if !shared.is_empty() {
                violations.push(Violation::Clash { u, v, shared });
            }
        }
    }
    ValidityReport { violations }
}

/// Reports every vertex of `required` whose list is missing or shorter than its bound.
pub fn validate_list_sizes(g: &Graph, lists: &ListAssignment, required: &BTreeMap<Vertex, usize>) -> ValidityReport {
    let mut violations = Vec::new();
    for (&v, &bound) in required {
        if !g.contains(v) {
            violations.push(Violation::UnknownVertex { vertex: v });
            continue;
        }
        match lists.get(v) {
            None => violations.push(Violation::MissingList { vertex: v }),
            Some(list) if list.len() < bound => {
                violations.push(Violation::ListTooSmall { vertex: v, size: list.len(), required: bound })
            }
            Some(_) => {}
        }
    }
    ValidityReport { violations }
}

/// Lexicographic iterator over the `m`-subsets of a sorted slice.
#[derive(Clone, Debug)]
pub struct Subsets<'a> {
    items: &'a [Colour],
    idx: Vec<usize>,
    done: bool,
}

impl<'a> Subsets<'a> {
    /// `items` must be strictly increasing.
    pub fn new(items: &'a [Colour], m: usize) -> Self {
        Subsets { items, idx: (0..m).collect(), done: m > items.len() }
    }
}

impl Iterator for Subsets<'_> {
    type Item = Vec<Colour>;

    fn next(&mut self) -> Option<Vec<Colour>> {
        if self.done {
            return None;
        }
        let out = self.idx.iter().map(|&i| self.items[i]).collect();
        let n = self.items.len();
        let m = self.idx.len();
        // advance the rightmost index that still has room
        match (0..m).rev().find(|&i| self.idx[i] < n - m + i) {
            None => self.done = true,
            Some(i) => {
                self.idx[i] += 1;
                for j in i + 1..m {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
            }
        }
        Some(out)
    }
}

/// All `m`-subsets of `s` in lexicographic order.
pub fn enumerate_m_subsets(s: &ColourSet, m: usize) -> Result<Vec<ColourSet>> {
    if m > s.len() {
        return Err(precondition(alloc::format!("cannot choose {m} colours from a set of {}", s.len())));
    }
    let items = s.to_vec();
    Ok(Subsets::new(&items, m).map(|c| c.into_iter().collect()).collect())
}

/// The `count` smallest non-negative colours not in `used`.
pub fn fresh_colours(count: usize, used: &ColourSet) -> ColourSet {
    (0..).filter(|c| !used.contains(*c)).take(count).collect()
}

/// Binomial coefficient, `None` on overflow.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u64 = 1;
    for i in 0..k {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sp::{parse_sp_expression, realize, Graph};
    use proptest::prelude::*;

    fn k2() -> Graph {
        Graph::new([0, 1], [(0, 1)], Some((0, 1))).unwrap()
    }

    fn cs(c: &[u32]) -> ColourSet {
        c.iter().copied().collect()
    }

    #[test]
    fn k2_valid_colouring() {
        let g = k2();
        let lists: ListAssignment = [(0, cs(&[1, 2])), (1, cs(&[1, 2]))].into_iter().collect();
        let phi = MultiColouring::from_path(1, &[0, 1], &[cs(&[1]), cs(&[2])]);
        assert!(check_colouring(&g, &lists, &phi).is_valid());
    }

    #[test]
    fn k2_clash() {
        let g = k2();
        let lists: ListAssignment = [(0, cs(&[1, 2])), (1, cs(&[1, 2]))].into_iter().collect();
        let phi = MultiColouring::from_path(1, &[0, 1], &[cs(&[1]), cs(&[1])]);
        let report = check_colouring(&g, &lists, &phi);
        assert_eq!(report.violations, vec![Violation::Clash { u: 0, v: 1, shared: cs(&[1]) }]);
    }

    #[test]
    fn triangle_never_two_colourable() {
        let g = Graph::new([0, 1, 2], [(0, 1), (1, 2), (0, 2)], None).unwrap();
        let lists: ListAssignment = (0..3).map(|v| (v, cs(&[1, 2]))).collect();
        for mask in 0..8u32 {
            let sets: Vec<_> = (0..3).map(|i| cs(&[1 + ((mask >> i) & 1)])).collect();
            let phi = MultiColouring::from_path(1, &[0, 1, 2], &sets);
            assert!(!check_colouring(&g, &lists, &phi).is_valid());
        }
    }

    #[test]
    fn size_and_list_violations() {
        let g = k2();
        let lists: ListAssignment = [(0, cs(&[1, 2])), (1, cs(&[3, 4]))].into_iter().collect();
        let phi = MultiColouring::from_path(2, &[0, 1], &[cs(&[1]), cs(&[3, 5])]);
        let report = check_colouring(&g, &lists, &phi);
        assert_eq!(report.violations.len(), 2);
        assert!(matches!(report.violations[0], Violation::WrongSize { vertex: 0, .. }));
        assert!(matches!(report.violations[1], Violation::NotInList { vertex: 1, .. }));
    }

    #[test]
    fn partial_colouring_ignores_uncoloured_edges() {
        let g = realize(&parse_sp_expression("e^3").unwrap()).unwrap();
        let lists: ListAssignment = g.vertices().iter().map(|&v| (v, cs(&[1]))).collect();
        let mut phi = MultiColouring::new(1);
        phi.set(0, cs(&[1]));
        phi.set(3, cs(&[1]));
        assert!(check_colouring(&g, &lists, &phi).is_valid());
    }

    #[test]
    fn subsets_examples() {
        assert_eq!(enumerate_m_subsets(&cs(&[1, 2, 3]), 2).unwrap(), vec![cs(&[1, 2]), cs(&[1, 3]), cs(&[2, 3])]);
        assert_eq!(enumerate_m_subsets(&cs(&[4, 7]), 0).unwrap(), vec![ColourSet::new()]);
        assert_eq!(enumerate_m_subsets(&ColourSet::range(0, 5), 2).unwrap().len(), 10);
        assert!(enumerate_m_subsets(&cs(&[1]), 2).is_err());
    }

    #[test]
    fn fresh_examples() {
        assert_eq!(fresh_colours(2, &cs(&[0, 1, 2])), cs(&[3, 4]));
        assert_eq!(fresh_colours(0, &cs(&[5])), ColourSet::new());
        assert_eq!(fresh_colours(3, &cs(&[1, 3])), cs(&[0, 2, 4]));
    }

    #[test]
    fn list_size_examples() {
        let g = realize(&parse_sp_expression("e^2").unwrap()).unwrap();
        let lists: ListAssignment = [(0, cs(&[1, 2, 3])), (1, cs(&[1, 2, 3])), (2, cs(&[1, 2]))].into_iter().collect();
        let all3: BTreeMap<_, _> = g.vertices().iter().map(|&v| (v, 3)).collect();
        let report = validate_list_sizes(&g, &lists, &all3);
        assert_eq!(report.violations, vec![Violation::ListTooSmall { vertex: 2, size: 2, required: 3 }]);
        let lists3: ListAssignment = g.vertices().iter().map(|&v| (v, cs(&[1, 2, 3]))).collect();
        assert!(validate_list_sizes(&g, &lists3, &all3).is_valid());
        let empty = Graph::new([], [], None).unwrap();
        assert!(validate_list_sizes(&empty, &ListAssignment::new(), &BTreeMap::new()).is_valid());
    }

    #[test]
    fn binomials() {
        assert_eq!(binomial(5, 2), Some(10));
        assert_eq!(binomial(7, 3), Some(35));
        assert_eq!(binomial(3, 5), Some(0));
        assert_eq!(binomial(0, 0), Some(1));
    }

    proptest! {
        #[test]
        fn subsets_are_lexicographic_and_complete(n in 0usize..9, m in 0usize..9) {
            prop_assume!(m <= n);
            let s = ColourSet::range(10, n as u32);
            let subs = enumerate_m_subsets(&s, m).unwrap();
            prop_assert_eq!(subs.len() as u64, binomial(n as u64, m as u64).unwrap());
            for w in subs.windows(2) {
                prop_assert!(w[0].to_vec() < w[1].to_vec());
            }
            for sub in &subs {
                prop_assert_eq!(sub.len(), m);
                prop_assert!(sub.is_subset(&s));
            }
        }

        #[test]
        fn fresh_is_disjoint(used in proptest::collection::btree_set(0u32..40, 0..20), count in 0usize..15) {
            let used: ColourSet = used.into_iter().collect();
            let fresh = fresh_colours(count, &used);
            prop_assert_eq!(fresh.len(), count);
            prop_assert!(fresh.is_disjoint(&used));
        }
    }
}
