//! Lower-bound machinery: list assignments with `2m + e` colours per vertex
//! (`q·e < m`) that admit no `m`-fold colouring.
//!
//! A bad path `v_0 … v_l` (`q = ⌊l/2⌋`) uses fresh blocks `A_r` and `B_s` of
//! `m` colours and `Z_t` of `e` colours:
//!
//! ```text
//! v_0       M1
//! v_1       M1 ∪ A_1 ∪ Z_1
//! v_2j      B_2j ∪ A_2j−1 ∪ Z_2j−1          1 ≤ j ≤ q − 1
//! v_2i+1    B_2i ∪ A_2i+1 ∪ Z_2i+1          interior odd positions
//! v_2q−1    M2 ∪ B_2q−2 ∪ Z_2q−1            (l = 2q)
//! v_2q      M2 ∪ A_2q−1 ∪ Z_2q−1            (l = 2q + 1)
//! v_l       M2
//! ```
//!
//! For `l = 2` the single interior list is `M1 ∪ M2 ∪ Z_1` with `M1 ∩ M2 = ∅`.
//! Along any colouring `φ(v_2j)` keeps at least `m − j·e` colours of
//! `B_2j`, which leaves fewer than `m` colours for the vertex next to `v_l`.
//!
//! The gadget joins `C(2m + e, m)²` such paths of length `⌈k/2⌉` in
//! parallel, one for each pair of `m`-subsets of the terminal lists.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;

use crate::bound::q_for_girth;
use crate::colour::{binomial, enumerate_m_subsets, fresh_colours, ColourSet, ListAssignment, Subsets};
use crate::error::{precondition, Error, Result};
use crate::sp::Graph;
use crate::Vertex;

/// Parameters and named colour blocks of one bad path.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BadPathSpec {
    pub l: usize,
    pub m: usize,
    pub slack: usize,
    pub q: usize,
    pub m1: ColourSet,
    pub m2: ColourSet,
    /// `"A1"`, `"B2"`, `"Z1"`, … in allocation order of the names.
    pub blocks: BTreeMap<String, ColourSet>,
}

impl BadPathSpec {
    pub fn block(&self, name: &str) -> Option<&ColourSet> {
        self.blocks.get(name)
    }
}

struct Blocks {
    used: ColourSet,
    named: BTreeMap<String, ColourSet>,
}

impl Blocks {
    fn get(&mut self, kind: char, index: usize, size: usize) -> ColourSet {
        let name = format!("{kind}{index}");
        if let Some(b) = self.named.get(&name) {
            return b.clone();
        }
        let b = fresh_colours(size, &self.used);
        self.used.extend(&b);
        self.named.insert(name, b.clone());
        b
    }
}

fn union3(a: &ColourSet, b: &ColourSet, c: &ColourSet) -> ColourSet {
    a.union(b).union(c)
}

/// Lists `L(v_0) … L(v_l)` of a path with no `m`-fold colouring whose ends
/// are pinned to `M1` and `M2`. Fresh blocks avoid `used ∪ M1 ∪ M2`.
///
/// Needs `l ≥ 2`, `e ≥ 1`, `⌊l/2⌋·e < m`, `|M1| = |M2| = m`, and disjoint
/// `M1`, `M2` when `l = 2`.
pub fn bad_path_list(
    l: usize,
    m: usize,
    e: usize,
    m1: &ColourSet,
    m2: &ColourSet,
    used: &ColourSet,
) -> Result<(Vec<ColourSet>, BadPathSpec)> {
    if l >= 2 && e >= 1 && (l / 2) * e >= m {
        return Err(precondition(format!("q·e = {} must be below m = {m}", (l / 2) * e)));
    }
    bad_path_layout(l, m, e, m1, m2, used)
}

/// The block layout of [`bad_path_list`] without the `⌊l/2⌋·e < m` gate.
/// Above the gate the lists may be colourable; prefix bounds such as
/// [`check_prefix_overlap`] still apply.
pub fn bad_path_layout(
    l: usize,
    m: usize,
    e: usize,
    m1: &ColourSet,
    m2: &ColourSet,
    used: &ColourSet,
) -> Result<(Vec<ColourSet>, BadPathSpec)> {
    if l < 2 {
        return Err(precondition("bad path needs length at least 2"));
    }
    if e == 0 {
        return Err(precondition("slack e must be at least 1"));
    }
    let q = l / 2;
    if m1.len() != m || m2.len() != m {
        return Err(precondition(format!("end pins must have m = {m} colours")));
    }
    if l == 2 && !m1.is_disjoint(m2) {
        return Err(precondition("for l = 2 the end pins must be disjoint"));
    }
    let mut blocks = Blocks { used: used.union(m1).union(m2), named: BTreeMap::new() };
    let mut lists = Vec::with_capacity(l + 1);
    lists.push(m1.clone());
    if l == 2 {
        let z1 = blocks.get('Z', 1, e);
        lists.push(union3(m1, m2, &z1));
    } else {
        for pos in 1..l {
            let list = if pos == 1 {
                let a = blocks.get('A', 1, m);
                let z = blocks.get('Z', 1, e);
                union3(m1, &a, &z)
            } else if pos == l - 1 && l.is_multiple_of(2) {
                let b = blocks.get('B', 2 * q - 2, m);
                let z = blocks.get('Z', 2 * q - 1, e);
                union3(m2, &b, &z)
            } else if pos == l - 1 {
                let a = blocks.get('A', 2 * q - 1, m);
                let z = blocks.get('Z', 2 * q - 1, e);
                union3(m2, &a, &z)
            } else if pos % 2 == 0 {
                let b = blocks.get('B', pos, m);
                let a = blocks.get('A', pos - 1, m);
                let z = blocks.get('Z', pos - 1, e);
                union3(&b, &a, &z)
            } else {
                let b = blocks.get('B', pos - 1, m);
                let a = blocks.get('A', pos, m);
                let z = blocks.get('Z', pos, e);
                union3(&b, &a, &z)
            };
            lists.push(list);
        }
    }
    lists.push(m2.clone());
    for list in &lists[1..l] {
        assert_eq!(list.len(), 2 * m + e, "interior lists have 2m + e colours");
    }
    let spec = BadPathSpec { l, m, slack: e, q, m1: m1.clone(), m2: m2.clone(), blocks: blocks.named };
    Ok((lists, spec))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GadgetParams {
    pub k: u32,
    pub m: usize,
    pub e: usize,
    pub q: usize,
    pub l: usize,
    pub p: usize,
}

/// One designated path of a gadget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairPath {
    pub s: ColourSet,
    pub t: ColourSet,
    /// `x, v_1, …, v_{l−1}, y`.
    pub path: Vec<Vertex>,
}

/// `p` paths of length `l` in parallel between `x = 0` and `y = 1`, with
/// lists that block every `m`-fold colouring of the terminals.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetBundle {
    pub graph: Graph,
    pub lists: ListAssignment,
    pub x_list: ColourSet,
    pub y_list: ColourSet,
    /// Ordered lexicographically by `(S, T)`.
    pub pairing: Vec<PairPath>,
    pub params: GadgetParams,
    pub blocks: BTreeMap<String, ColourSet>,
}

/// Builds the parallel bundle for girth `k`: `l = ⌈k/2⌉`, `X = {0 … 2m+e−1}`,
/// `Y` the next `2m + e` colours, and one bad path per pair `(S, T)` of
/// `m`-subsets `S ⊆ X`, `T ⊆ Y`. All paths share one block layout; their
/// interiors are pairwise non-adjacent.
///
/// Needs `k ≥ 3`, `e ≥ 1` and `q·e < m` for `q = ⌊(k + 1)/4⌋`.
pub fn build_gadget(k: u32, m: usize, e: usize) -> Result<GadgetBundle> {
    let q = q_for_girth(k)? as usize;
    if e == 0 {
        return Err(precondition("slack e must be at least 1"));
    }
    if q * e >= m {
        return Err(precondition(format!(
            "q·e = {} must be below m = {m} (smallest legal fold is {})",
            q * e,
            q * e + 1
        )));
    }
    let l = k.div_ceil(2) as usize;
    let n = 2 * m + e;
    let per = binomial(n as u64, m as u64).ok_or(Error::Overflow)?;
    let p = usize::try_from(per.checked_mul(per).ok_or(Error::Overflow)?).map_err(|_| Error::Overflow)?;
    let nv = Vertex::try_from(p.checked_mul(l - 1).and_then(|x| x.checked_add(2)).ok_or(Error::Overflow)?)
        .map_err(|_| Error::Overflow)?;

    let x_list = ColourSet::range(0, n as u32);
    let y_list = ColourSet::range(n as u32, n as u32);
    let used = x_list.union(&y_list);
    let s_all = enumerate_m_subsets(&x_list, m)?;
    let t_all = enumerate_m_subsets(&y_list, m)?;

    let mut lists = ListAssignment::new();
    lists.insert(0, x_list.clone());
    lists.insert(1, y_list.clone());
    let mut edges = Vec::with_capacity(p * l);
    let mut pairing = Vec::with_capacity(p);
    let mut blocks = BTreeMap::new();
    let mut next: Vertex = 2;
    for s in &s_all {
        for t in &t_all {
            let (path_lists, spec) = bad_path_list(l, m, e, s, t, &used)?;
            let mut path = Vec::with_capacity(l + 1);
            path.push(0);
            for list in &path_lists[1..l] {
                lists.insert(next, list.clone());
                path.push(next);
                next += 1;
            }
            path.push(1);
            edges.extend(path.windows(2).map(|w| (w[0], w[1])));
            blocks = spec.blocks;
            pairing.push(PairPath { s: s.clone(), t: t.clone(), path });
        }
    }
    debug_assert_eq!(next, nv);
    let graph = Graph::new(0..nv, edges, Some((0, 1)))?;
    let params = GadgetParams { k, m, e, q, l, p };
    Ok(GadgetBundle { graph, lists, x_list, y_list, pairing, params, blocks })
}

/// Outcome of checking the overlap bound on one prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PrefixOverlapReport {
    pub j: usize,
    /// `m − (j − 1)·e`.
    pub bound: usize,
    /// Smallest `|φ(v_{2j−2}) ∩ B_{2j−2}|` over all colourings of the prefix,
    /// `None` when the prefix has no colouring.
    pub min_overlap: Option<usize>,
    /// Number of distinct sets `φ(v_{2j−2})` that some prefix colouring reaches.
    pub reachable: usize,
    pub passed: bool,
}

impl PrefixOverlapReport {
    pub fn vacuous(&self) -> bool {
        self.min_overlap.is_none()
    }
}

/// Exhaustively checks that every `m`-fold colouring of `v_0 … v_{2j−2}`
/// keeps at least `m − (j−1)·e` colours of `B_{2j−2}` at its last vertex.
/// The prefix is explored level by level over all `m`-subsets of each list,
/// keeping every set that some colouring of the prefix can end with.
///
/// Needs `q ≥ 2` and `2 ≤ j ≤ q`.
pub fn check_prefix_overlap(lists: &[ColourSet], spec: &BadPathSpec, j: usize) -> Result<PrefixOverlapReport> {
    let (m, e) = (spec.m, spec.slack);
    if spec.q < 2 || j < 2 || j > spec.q {
        return Err(precondition(format!("need 2 ≤ j ≤ q, got j = {j}, q = {}", spec.q)));
    }
    let end = 2 * j - 2;
    if lists.len() <= end {
        return Err(precondition("prefix longer than the path"));
    }
    let b = spec.block(&format!("B{end}")).ok_or_else(|| precondition(format!("no block B{end}")))?;
    let mut frontier: BTreeSet<Vec<u32>> =
        Subsets::new(&lists[0].to_vec(), m).filter(|s| s.len() == lists[0].len()).collect();
    for list in &lists[1..=end] {
        let items = list.to_vec();
        frontier =
            Subsets::new(&items, m).filter(|cand| frontier.iter().any(|prev| disjoint_sorted(prev, cand))).collect();
    }
    let bound = m.saturating_sub((j - 1) * e);
    let min_overlap = frontier.iter().map(|s| s.iter().filter(|c| b.contains(**c)).count()).min();
    Ok(PrefixOverlapReport {
        j,
        bound,
        min_overlap,
        reachable: frontier.len(),
        passed: min_overlap.is_none_or(|v| v >= bound),
    })
}

pub(crate) fn disjoint_sorted(a: &[u32], b: &[u32]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            core::cmp::Ordering::Less => i += 1,
            core::cmp::Ordering::Greater => j += 1,
            core::cmp::Ordering::Equal => return false,
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sp::{girth, GirthValue};

    fn cs(c: &[u32]) -> ColourSet {
        c.iter().copied().collect()
    }

    #[test]
    fn length_two() {
        let (lists, spec) = bad_path_list(2, 2, 1, &cs(&[0, 1]), &cs(&[2, 3]), &ColourSet::new()).unwrap();
        assert_eq!(lists, vec![cs(&[0, 1]), cs(&[0, 1, 2, 3, 4]), cs(&[2, 3])]);
        assert_eq!(spec.block("Z1"), Some(&cs(&[4])));
        assert!(bad_path_list(2, 2, 1, &cs(&[0, 1]), &cs(&[1, 2]), &ColourSet::new()).is_err());
    }

    #[test]
    fn length_four_layout() {
        let m1 = cs(&[0, 1, 2]);
        let m2 = cs(&[3, 4, 5]);
        let (lists, spec) = bad_path_list(4, 3, 1, &m1, &m2, &ColourSet::new()).unwrap();
        let sizes: Vec<_> = lists.iter().map(ColourSet::len).collect();
        assert_eq!(sizes, vec![3, 7, 7, 7, 3]);
        let a1 = spec.block("A1").unwrap();
        let z1 = spec.block("Z1").unwrap();
        let b2 = spec.block("B2").unwrap();
        let z3 = spec.block("Z3").unwrap();
        assert_eq!(lists[1], union3(&m1, a1, z1));
        assert_eq!(lists[2], union3(b2, a1, z1));
        assert_eq!(lists[3], union3(&m2, b2, z3));
        assert_eq!(spec.blocks.len(), 4);
    }

    #[test]
    fn odd_lengths_use_last_a_block() {
        let (lists, spec) = bad_path_list(5, 3, 1, &cs(&[0, 1, 2]), &cs(&[3, 4, 5]), &ColourSet::new()).unwrap();
        // q = 2: A1, A3, B2, Z1, Z3
        assert_eq!(spec.blocks.len(), 5);
        let a3 = spec.block("A3").unwrap();
        assert_eq!(lists[3], union3(spec.block("B2").unwrap(), a3, spec.block("Z3").unwrap()));
        assert_eq!(lists[4], union3(&cs(&[3, 4, 5]), a3, spec.block("Z3").unwrap()));

        // l = 3 allows overlapping pins
        let (lists, _) = bad_path_list(3, 2, 1, &cs(&[0, 1]), &cs(&[1, 2]), &ColourSet::new()).unwrap();
        assert_eq!(lists[1].intersection(&lists[2]).len(), 4);
    }

    #[test]
    fn gates() {
        let m1 = cs(&[0]);
        let m2 = cs(&[1]);
        assert!(bad_path_list(2, 1, 1, &m1, &m2, &ColourSet::new()).is_err());
        assert!(bad_path_list(1, 2, 1, &m1, &m2, &ColourSet::new()).is_err());
        assert!(bad_path_list(4, 3, 0, &m1, &m2, &ColourSet::new()).is_err());
        assert!(build_gadget(3, 1, 1).is_err());
        assert!(build_gadget(2, 3, 1).is_err());
        assert!(build_gadget(7, 2, 1).is_err());
    }

    #[test]
    fn blocks_avoid_used() {
        let used = ColourSet::range(0, 20);
        let (lists, spec) = bad_path_list(6, 4, 1, &cs(&[0, 1, 2, 3]), &cs(&[10, 11, 12, 13]), &used).unwrap();
        for b in spec.blocks.values() {
            assert!(b.is_disjoint(&used));
        }
        assert!(lists[1..6].iter().all(|l| l.len() == 9));
    }

    #[test]
    fn small_gadget() {
        let g = build_gadget(3, 2, 1).unwrap();
        assert_eq!(g.params.p, 100);
        assert_eq!(g.graph.vertex_count(), 102);
        assert_eq!(g.pairing.len(), 100);
        assert_eq!(girth(&g.graph), GirthValue::Finite(4));
        assert_eq!(g.lists.get(0), Some(&ColourSet::range(0, 5)));
        assert_eq!(g.lists.get(1), Some(&ColourSet::range(5, 5)));
        let first = &g.pairing[0];
        assert_eq!(first.s, cs(&[0, 1]));
        assert_eq!(first.t, cs(&[5, 6]));
        assert_eq!(first.path, vec![0, 2, 1]);
        assert_eq!(g.lists.get(2), Some(&cs(&[0, 1, 5, 6, 10])));
    }

    #[test]
    fn prefix_overlap_small() {
        let (lists, spec) = bad_path_list(4, 3, 1, &cs(&[0, 1, 2]), &cs(&[3, 4, 5]), &ColourSet::new()).unwrap();
        let r = check_prefix_overlap(&lists, &spec, 2).unwrap();
        assert_eq!(r.bound, 2);
        assert!(r.passed);
        assert!(!r.vacuous());
        assert!(check_prefix_overlap(&lists, &spec, 3).is_err());
        assert!(check_prefix_overlap(&lists, &spec, 1).is_err());
    }

    #[test]
    fn prefix_overlap_vacuous_prefix() {
        let (mut lists, spec) = bad_path_list(4, 3, 1, &cs(&[0, 1, 2]), &cs(&[3, 4, 5]), &ColourSet::new()).unwrap();
        // v_1 can only repeat the pinned colours of v_0
        lists[1] = cs(&[0, 1, 2]);
        let r = check_prefix_overlap(&lists, &spec, 2).unwrap();
        assert!(r.vacuous());
        assert!(r.passed);
        assert_eq!(r.reachable, 0);
    }
}
