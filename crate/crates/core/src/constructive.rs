//! Upper-bound machinery: every series-parallel graph of girth at least `k`
//! is `(⌈(2 + 1/q)m⌉, m)`-choosable, `q = ⌊(k + 1) / 4⌋`.
//!
//! The colourer peels off a chain of `l = ⌈k/2⌉` edges whose interior
//! vertices have degree 2, colours what is left, and re-inserts the chain
//! with both ends already fixed. Pinned-end paths are coloured through
//! T-sets: for a path whose first vertex has an `m`-list and whose other
//! lists have `2m + e` colours, `T_j ⊆ L(v_j)` is a set such that any
//! `m`-set at `v_j` meeting `T_j` in at least `τ(j) = max(0, m − ⌊j/2⌋·e)`
//! colours extends backwards to an `m`-fold colouring of `v_0 … v_j`.
//!
//! All path-level functions work on a slice of lists indexed by position
//! and return one colour set per position.

use alloc::collections::{BTreeMap, BTreeSet};
use alloc::format;
use alloc::vec::Vec;

use crate::bound::q_for_girth;
use crate::colour::{check_colouring, validate_list_sizes, ColourSet, ListAssignment, MultiColouring};
use crate::error::{precondition, Error, Result};
use crate::sp::{find_chain_excluding, find_removable_chain, girth, GirthValue, Graph};
use crate::Vertex;

/// T-sets of a path, `T_0 = L(v_0)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TSetCertificate {
    pub m: usize,
    /// The integer slack `e`; interior lists have `2m + e` colours.
    pub slack: usize,
    pub tsets: Vec<ColourSet>,
}

impl TSetCertificate {
    /// Checks sizes, containment in (truncated) lists and `T_j ∩ T_{j-1} = ∅`.
    pub fn check(&self, lists: &[ColourSet]) -> Result<()> {
        if self.tsets.len() != lists.len() {
            return Err(precondition("certificate and path differ in length"));
        }
        for (j, t) in self.tsets.iter().enumerate() {
            let want = if j % 2 == 1 { self.m + self.slack } else { self.m };
            if t.len() != want {
                return Err(precondition(format!("|T_{j}| = {}, expected {want}", t.len())));
            }
            if !t.is_subset(&lists[j]) {
                return Err(precondition(format!("T_{j} is not inside L(v_{j})")));
            }
            if j > 0 && !t.is_disjoint(&self.tsets[j - 1]) {
                return Err(precondition(format!("T_{j} meets T_{}", j - 1)));
            }
        }
        if self.tsets.first() != lists.first() {
            return Err(precondition("T_0 differs from L(v_0)"));
        }
        Ok(())
    }
}

/// `τ(j) = max(0, m − ⌊j/2⌋·e)`.
pub fn threshold(j: usize, m: usize, e: usize) -> usize {
    m.saturating_sub((j / 2).saturating_mul(e))
}

fn check_path_lists(lists: &[ColourSet], m: usize, e: usize) -> Result<()> {
    if e == 0 {
        return Err(precondition("slack e must be at least 1"));
    }
    let Some(first) = lists.first() else {
        return Err(precondition("empty path"));
    };
    if first.len() != m {
        return Err(precondition(format!("|L(v_0)| = {}, expected m = {m}", first.len())));
    }
    for (i, l) in lists.iter().enumerate().skip(1) {
        if l.len() < 2 * m + e {
            return Err(precondition(format!("|L(v_{i})| = {} is below 2m + e = {}", l.len(), 2 * m + e)));
        }
    }
    Ok(())
}

/// Keeps the `2m + e` smallest colours of every list after the first.
fn truncate(lists: &[ColourSet], m: usize, e: usize) -> Vec<ColourSet> {
    lists.iter().enumerate().map(|(i, l)| if i == 0 { l.clone() } else { l.smallest(2 * m + e) }).collect()
}

/// Builds `T_0 = L(v_0)` and, for `j ≥ 1`, `T_j` as the smallest `m + e`
/// (odd `j`) or `m` (even `j`) colours of `L(v_j) − T_{j−1}`.
///
/// Needs `|L(v_0)| = m`, `|L(v_i)| ≥ 2m + e` and `e ≥ 1`; longer lists are
/// cut to their `2m + e` smallest colours first.
pub fn build_t_sets(lists: &[ColourSet], m: usize, e: usize) -> Result<TSetCertificate> {
    check_path_lists(lists, m, e)?;
    Ok(t_sets_unchecked(&truncate(lists, m, e), m, e))
}

fn t_sets_unchecked(lists: &[ColourSet], m: usize, e: usize) -> TSetCertificate {
    let mut tsets: Vec<ColourSet> = Vec::with_capacity(lists.len());
    tsets.push(lists[0].clone());
    for j in 1..lists.len() {
        let size = if j % 2 == 1 { m + e } else { m };
        let t = lists[j].difference(&tsets[j - 1]).smallest(size);
        assert_eq!(t.len(), size, "|L(v_j) − T_(j−1)| is at least the T-set size");
        tsets.push(t);
    }
    TSetCertificate { m, slack: e, tsets }
}

/// Colours `v_0 … v_l` with `φ(v_l) = target`, walking backwards: each
/// `B_{j−1}` is an `m`-subset of `L(v_{j−1}) − B_j` holding at least
/// `τ(j−1)` colours of `T_{j−1}`, taking those smallest-first and padding
/// with the smallest remaining colours.
///
/// Needs `|target| = m`, `target ⊆ L(v_l)` and `|target ∩ T_l| ≥ τ(l)`.
pub fn extend_to_target(
    lists: &[ColourSet],
    m: usize,
    e: usize,
    cert: &TSetCertificate,
    target: &ColourSet,
) -> Result<Vec<ColourSet>> {
    check_path_lists(lists, m, e)?;
    let l = lists.len() - 1;
    if target.len() != m {
        return Err(precondition(format!("target has {} colours, expected {m}", target.len())));
    }
    if !target.is_subset(&lists[l]) {
        return Err(precondition("target is not inside L(v_l)"));
    }
    let lists = truncate(lists, m, e);
    cert.check(&lists)?;
    let need = threshold(l, m, e);
    if target.intersection_len(&cert.tsets[l]) < need {
        return Err(precondition(format!(
            "target meets T_{l} in {} colours, needs τ({l}) = {need}",
            target.intersection_len(&cert.tsets[l])
        )));
    }
    Ok(backward_pass(&lists, m, e, &cert.tsets, target.clone()))
}

fn backward_pass(lists: &[ColourSet], m: usize, e: usize, tsets: &[ColourSet], target: ColourSet) -> Vec<ColourSet> {
    let l = lists.len() - 1;
    let mut out = alloc::vec![ColourSet::new(); l + 1];
    out[l] = target;
    for j in (1..=l).rev() {
        let avail = lists[j - 1].difference(&out[j]);
        let need = threshold(j - 1, m, e);
        let mut pick = tsets[j - 1].difference(&out[j]).smallest(need);
        assert_eq!(pick.len(), need, "T_(j−1) − B_j holds at least τ(j−1) colours");
        let pad = avail.difference(&pick).smallest(m - need);
        pick.extend(&pad);
        assert_eq!(pick.len(), m, "L(v_(j−1)) − B_j holds at least m colours");
        out[j - 1] = pick;
    }
    out
}

/// Colours a path whose end lists are the pinned `m`-sets `lists[0]` and
/// `lists[l]`, given interior lists of at least `2m + e` colours, `l ≥ 2`
/// and `⌊l/2⌋·e ≥ m`.
///
/// Even `l`: pick `B_{l−1} ⊆ L(v_{l−1}) − L(v_l)` rich in `T_{l−1}` and
/// extend backwards. Odd `l`: pin `v_{l−1}` to the `m` smallest colours of
/// `L(v_{l−1}) − L(v_l)` and solve the even path `v_0 … v_{l−1}`.
pub fn colour_path_pinned(lists: &[ColourSet], m: usize, e: usize) -> Result<Vec<ColourSet>> {
    let l = lists.len().saturating_sub(1);
    if l < 2 {
        return Err(precondition("pinned path needs length at least 2"));
    }
    if e == 0 {
        return Err(precondition("slack e must be at least 1"));
    }
    if (l / 2) * e < m {
        return Err(precondition(format!("⌊l/2⌋·e = {} is below m = {m}", (l / 2) * e)));
    }
    if lists[l].len() != m {
        return Err(precondition(format!("|L(v_l)| = {}, expected m = {m}", lists[l].len())));
    }
    check_path_lists(&lists[..l], m, e)?;
    let lists = {
        let mut t = truncate(&lists[..l], m, e);
        t.push(lists[l].clone());
        t
    };
    let last = &lists[l];
    if l % 2 == 1 {
        let pin = lists[l - 1].difference(last).smallest(m);
        let mut head = colour_even_pinned(&lists[..l - 1], &pin, m, e);
        head.push(pin);
        head.push(last.clone());
        return Ok(head);
    }
    let mut out = colour_even_pinned(&lists[..l], last, m, e);
    out.push(last.clone());
    Ok(out)
}

/// Even case on `v_0 … v_{l−1}` (the slice) with `v_l` pinned to `end`;
/// returns colours for the slice only.
fn colour_even_pinned(head: &[ColourSet], end: &ColourSet, m: usize, e: usize) -> Vec<ColourSet> {
    let j = head.len() - 1;
    let tsets = t_sets_unchecked(head, m, e).tsets;
    let need = threshold(j, m, e);
    let mut pick = tsets[j].difference(end).smallest(need);
    assert_eq!(pick.len(), need, "T_(l−1) − L(v_l) holds at least e ≥ τ(l−1) colours");
    let pad = head[j].difference(end).difference(&pick).smallest(m - need);
    pick.extend(&pad);
    assert_eq!(pick.len(), m, "L(v_(l−1)) − L(v_l) holds at least m colours");
    backward_pass(head, m, e, &tsets, pick)
}

/// Greedy colouring of a path from its first vertex: each vertex takes the
/// `m` smallest colours not used by its predecessor. Needs `|L(v)| ≥ 2m`.
pub fn colour_path_greedy(lists: &[ColourSet], m: usize) -> Result<Vec<ColourSet>> {
    if let Some((i, l)) = lists.iter().enumerate().find(|(_, l)| l.len() < 2 * m) {
        return Err(precondition(format!("|L(v_{i})| = {} is below 2m = {}", l.len(), 2 * m)));
    }
    let mut out: Vec<ColourSet> = Vec::with_capacity(lists.len());
    for l in lists {
        let c = match out.last() {
            Some(prev) => l.difference(prev).smallest(m),
            None => l.smallest(m),
        };
        out.push(c);
    }
    Ok(out)
}

/// One reduction performed by [`colour_sp`], in removal order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum TraceStep {
    /// A chain whose interior was deleted and later re-coloured with both ends pinned.
    Chain { vertices: Vec<Vertex> },
    /// Same, but the chain runs through a terminal of the current graph.
    ChainThroughTerminal { vertices: Vec<Vertex> },
    /// A vertex of degree at most one, coloured after its neighbour.
    Leaf { vertex: Vertex, neighbour: Option<Vertex> },
    /// A component that is a path, coloured greedily from its first vertex.
    Path { vertices: Vec<Vertex> },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpColouring {
    pub colouring: MultiColouring,
    pub trace: Vec<TraceStep>,
}

/// `2m + ⌈m/q⌉ = ⌈(2 + 1/q)m⌉`.
pub fn required_list_size(m: usize, k: u32) -> Result<usize> {
    let q = q_for_girth(k)? as usize;
    Ok(2 * m + m.div_ceil(q))
}

/// Colours a series-parallel graph of girth at least `k` from lists of at
/// least `⌈(2 + 1/q)m⌉` colours.
///
/// With `l = ⌈k/2⌉` and `e = ⌈m/q⌉` (so `⌊l/2⌋·e = q·e ≥ m`): while some
/// component is not a path, remove the interior of a chain of length `l`,
/// or else a vertex of degree at most one. Path components are coloured
/// greedily; removed pieces are then restored in reverse order.
///
/// The result is checked against the lists before it is returned.
pub fn colour_sp(g: &Graph, lists: &ListAssignment, m: usize, k: u32) -> Result<SpColouring> {
    if m == 0 {
        return Err(precondition("fold m must be at least 1"));
    }
    let q = q_for_girth(k)? as usize;
    let size = required_list_size(m, k)?;
    if let GirthValue::Finite(gv) = girth(g) {
        if gv < k {
            return Err(Error::GirthTooSmall { girth: gv, k });
        }
    }
    let required: BTreeMap<Vertex, usize> = g.vertices().iter().map(|&v| (v, size)).collect();
    let report = validate_list_sizes(g, lists, &required);
    if !report.is_valid() {
        return Err(Error::ListsTooSmall(report));
    }
    let l = k.div_ceil(2) as usize;
    let e = m.div_ceil(q);
    debug_assert!((l / 2) * e >= m);

    let mut trace = Vec::new();
    let mut current = g.clone();
    loop {
        let comps = current.components();
        let non_path = comps.iter().find(|c| !current.induced(&c.iter().copied().collect()).is_path());
        let Some(comp) = non_path else { break };
        let step = if let Some(c) = find_removable_chain(&current, l) {
            TraceStep::Chain { vertices: c.vertices().to_vec() }
        } else if let Some(&v) = current.vertices().iter().find(|&&v| current.degree(v) <= 1) {
            TraceStep::Leaf { vertex: v, neighbour: current.neighbours(v).next() }
        } else if let Some(c) = find_chain_excluding(&current, l, &[]) {
            TraceStep::ChainThroughTerminal { vertices: c.vertices().to_vec() }
        } else {
            return Err(Error::NoChain { component: comp[0] });
        };
        let drop: BTreeSet<Vertex> = match &step {
            TraceStep::Chain { vertices } | TraceStep::ChainThroughTerminal { vertices } => {
                vertices[1..vertices.len() - 1].iter().copied().collect()
            }
            TraceStep::Leaf { vertex, .. } => [*vertex].into_iter().collect(),
            TraceStep::Path { .. } => unreachable!(),
        };
        current = current.without(&drop);
        trace.push(step);
    }

    let mut phi = MultiColouring::new(m);
    for comp in current.components() {
        let order = path_order(&current, &comp);
        let sets = colour_path_greedy(&lists.along(&order)?, m)?;
        for (v, c) in order.iter().zip(sets) {
            phi.set(*v, c);
        }
        trace.push(TraceStep::Path { vertices: order });
    }
    for step in trace.iter().rev() {
        match step {
            TraceStep::Chain { vertices } | TraceStep::ChainThroughTerminal { vertices } => {
                let n = vertices.len();
                let mut path_lists = lists.along(vertices)?;
                path_lists[0] = phi.get(vertices[0]).expect("chain end coloured").clone();
                path_lists[n - 1] = phi.get(vertices[n - 1]).expect("chain end coloured").clone();
                let sets = colour_path_pinned(&path_lists, m, e)?;
                for (v, c) in vertices[1..n - 1].iter().zip(&sets[1..n - 1]) {
                    phi.set(*v, c.clone());
                }
            }
            TraceStep::Leaf { vertex, neighbour } => {
                let list = lists.get(*vertex).expect("lists validated");
                let c = match neighbour {
                    Some(w) => list.difference(phi.get(*w).expect("neighbour coloured")).smallest(m),
                    None => list.smallest(m),
                };
                phi.set(*vertex, c);
            }
            TraceStep::Path { .. } => {}
        }
    }
    let report = check_colouring(g, lists, &phi);
    assert!(report.is_valid() && phi.len() == g.vertex_count(), "colour_sp produced an invalid colouring: {report:?}");
    Ok(SpColouring { colouring: phi, trace })
}

/// Vertices of a path component in order, starting from its smallest end.
fn path_order(g: &Graph, comp: &[Vertex]) -> Vec<Vertex> {
    let start = comp.iter().copied().find(|&v| g.degree(v) <= 1).expect("path has an end");
    let mut order = alloc::vec![start];
    let mut prev = None;
    let mut cur = start;
    while let Some(next) = g.neighbours(cur).find(|&w| Some(w) != prev) {
        order.push(next);
        prev = Some(cur);
        cur = next;
    }
    order
}
