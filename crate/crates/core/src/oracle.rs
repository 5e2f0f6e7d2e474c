//! Exact solvers used to certify colourings and their absence.
//!
//! [`solve_path_pinned_dp`] decides pinned-end paths by dynamic programming
//! over the `m`-subsets of every list. [`solve_generic`] backtracks over any
//! small graph. The two share no code beyond subset enumeration, so they can
//! check each other.

use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::adversary::GadgetBundle;
use crate::colour::{
    binomial, check_colouring, enumerate_m_subsets, ColourSet, ListAssignment, MultiColouring, Subsets,
};
use crate::error::{precondition, Result};
use crate::sp::Graph;
use crate::{Colour, Vertex};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    Colouring(MultiColouring),
    /// Returned only after the search space was exhausted.
    NoColouring,
    /// The node budget ran out first; says nothing either way.
    BudgetExceeded {
        nodes: u64,
    },
}

impl SolveOutcome {
    pub fn is_colourable(&self) -> Option<bool> {
        match self {
            SolveOutcome::Colouring(_) => Some(true),
            SolveOutcome::NoColouring => Some(false),
            SolveOutcome::BudgetExceeded { .. } => None,
        }
    }
}

/// Decides whether the path with lists `lists[0..=l]` has an `m`-fold
/// colouring with `φ(v_0) = s` and `φ(v_l) = t`. The witness is keyed by
/// position `0..=l`; among colourings it takes the smallest feasible set at
/// `v_{l−1}` and the first feasible predecessor at every earlier level.
pub fn solve_path_pinned_dp(lists: &[ColourSet], m: usize, s: &ColourSet, t: &ColourSet) -> Result<SolveOutcome> {
    let Some(l) = lists.len().checked_sub(1) else {
        return Err(precondition("empty path"));
    };
    if s.len() != m || t.len() != m {
        return Err(precondition(format!("pins must have m = {m} colours")));
    }
    if !s.is_subset(&lists[0]) || !t.is_subset(&lists[l]) {
        return Err(precondition("pins must lie inside the end lists"));
    }
    let s_vec = s.to_vec();
    let t_vec = t.to_vec();
    if l == 0 {
        return Ok(if s == t {
            SolveOutcome::Colouring(MultiColouring::from_path(m, &[0], core::slice::from_ref(s)))
        } else {
            SolveOutcome::NoColouring
        });
    }

    // levels[i] = (state, parent index in levels[i - 1])
    let mut levels: Vec<Vec<(Vec<Colour>, usize)>> = vec![vec![(s_vec, 0)]];
    for list in &lists[1..l] {
        let items = list.to_vec();
        let prev = levels.last().expect("level 0 present");
        let next: Vec<(Vec<Colour>, usize)> = Subsets::new(&items, m)
            .filter_map(|cand| prev.iter().position(|(p, _)| disjoint(p, &cand)).map(|i| (cand, i)))
            .collect();
        if next.is_empty() {
            return Ok(SolveOutcome::NoColouring);
        }
        levels.push(next);
    }
    let last = levels.last().expect("non-empty");
    let Some(mut idx) = last.iter().position(|(p, _)| disjoint(p, &t_vec)) else {
        return Ok(SolveOutcome::NoColouring);
    };
    let mut sets = vec![ColourSet::new(); l + 1];
    sets[l] = t.clone();
    for i in (0..l).rev() {
        let (state, parent) = &levels[i][idx];
        sets[i] = state.iter().copied().collect();
        idx = *parent;
    }
    let positions: Vec<Vertex> = (0..=l as Vertex).collect();
    Ok(SolveOutcome::Colouring(MultiColouring::from_path(m, &positions, &sets)))
}

fn disjoint(a: &[Colour], b: &[Colour]) -> bool {
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        if a[i] < b[j] {
            i += 1;
        } else if a[i] > b[j] {
            j += 1;
        } else {
            return false;
        }
    }
    true
}

/// Backtracking search for an `m`-fold `L`-colouring of `g`.
///
/// Vertices are visited breadth-first from the vertex of highest degree
/// (ties to the smaller id), component by component; each vertex tries the
/// `m`-subsets of its list that avoid its coloured neighbours, in
/// lexicographic order, and a choice is undone as soon as an uncoloured
/// neighbour is left with fewer than `m` usable colours. Every tried subset
/// counts as a node; the search stops with `BudgetExceeded` after `budget`
/// nodes. Vertices without a list have an empty one.
pub fn solve_generic(g: &Graph, lists: &ListAssignment, m: usize, budget: u64) -> SolveOutcome {
    let order = search_order(g);
    let n = order.len();
    let pos: BTreeMap<Vertex, usize> = order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let nbrs: Vec<Vec<usize>> = order.iter().map(|&v| g.neighbours(v).map(|w| pos[&w]).collect()).collect();
    let lists: Vec<ColourSet> = order.iter().map(|&v| lists.get(v).cloned().unwrap_or_default()).collect();
    let mut search = Search { m, nbrs, lists, chosen: vec![None; n], nodes: 0, budget };
    match search.run(0) {
        Step::Found => {
            let mut phi = MultiColouring::new(m);
            for (i, set) in search.chosen.into_iter().enumerate() {
                phi.set(order[i], set.expect("all vertices assigned"));
            }
            SolveOutcome::Colouring(phi)
        }
        Step::Exhausted => SolveOutcome::NoColouring,
        Step::OutOfBudget => SolveOutcome::BudgetExceeded { nodes: search.nodes },
    }
}

fn search_order(g: &Graph) -> Vec<Vertex> {
    let mut placed: BTreeMap<Vertex, ()> = BTreeMap::new();
    let mut order = Vec::with_capacity(g.vertex_count());
    while order.len() < g.vertex_count() {
        let root = g
            .vertices()
            .iter()
            .copied()
            .filter(|v| !placed.contains_key(v))
            .max_by_key(|&v| (g.degree(v), core::cmp::Reverse(v)))
            .expect("unplaced vertex");
        placed.insert(root, ());
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            order.push(u);
            for w in g.neighbours(u) {
                if placed.insert(w, ()).is_none() {
                    queue.push_back(w);
                }
            }
        }
    }
    order
}

enum Step {
    Found,
    Exhausted,
    OutOfBudget,
}

struct Search {
    m: usize,
    nbrs: Vec<Vec<usize>>,
    lists: Vec<ColourSet>,
    chosen: Vec<Option<ColourSet>>,
    nodes: u64,
    budget: u64,
}

impl Search {
    fn available(&self, i: usize) -> ColourSet {
        let mut avail = self.lists[i].clone();
        for &w in &self.nbrs[i] {
            if let Some(c) = &self.chosen[w] {
                avail = avail.difference(c);
            }
        }
        avail
    }

    fn run(&mut self, i: usize) -> Step {
        if i == self.chosen.len() {
            return Step::Found;
        }
        let avail = self.available(i).to_vec();
        for cand in Subsets::new(&avail, self.m) {
            if self.nodes >= self.budget {
                return Step::OutOfBudget;
            }
            self.nodes += 1;
            self.chosen[i] = Some(cand.into_iter().collect());
            let starved = self.nbrs[i].iter().any(|&w| self.chosen[w].is_none() && self.available(w).len() < self.m);
            if !starved {
                match self.run(i + 1) {
                    Step::Exhausted => {}
                    other => return other,
                }
            }
            self.chosen[i] = None;
        }
        Step::Exhausted
    }
}

/// Structural or colouring defect found while verifying a gadget.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GadgetDefect {
    /// The designated path of `(s, t)` has a pinned colouring.
    Witness {
        s: ColourSet,
        t: ColourSet,
        witness: MultiColouring,
    },
    Structure(String),
}

/// Per-pair verdicts of [`verify_gadget`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GadgetCertificate {
    pub pairs_checked: usize,
    pub all_uncolourable: bool,
    pub defects: Vec<GadgetDefect>,
    /// Wall-clock time, filled in by callers that have a clock.
    pub runtime_ms: Option<u64>,
}

/// What an all-uncolourable certificate establishes.
pub const GADGET_CLAIM: &str = "every m-fold colouring of the terminals restricts to some pair (S, T); \
the designated path of (S, T) has no colouring pinned to S and T, so the gadget has no m-fold L-colouring";

/// Checks the pairing of a bundle: `p = C(2m+e, m)²` pairs in lexicographic
/// order covering all `m`-subsets of the terminal lists, each with a path of
/// length `l` from `x` to `y` whose interior is private to it, and every
/// edge of the graph used by exactly one path.
pub fn check_bundle_structure(bundle: &GadgetBundle) -> Vec<String> {
    let mut out = Vec::new();
    let prm = bundle.params;
    let Some((x, y)) = bundle.graph.terminals() else {
        out.push("graph has no terminals".into());
        return out;
    };
    if bundle.lists.get(x) != Some(&bundle.x_list) || bundle.lists.get(y) != Some(&bundle.y_list) {
        out.push("terminal lists differ from X and Y".into());
    }
    let n = 2 * prm.m + prm.e;
    if bundle.x_list.len() != n || bundle.y_list.len() != n {
        out.push(format!("terminal lists must have 2m + e = {n} colours"));
    }
    let per = binomial(bundle.x_list.len() as u64, prm.m as u64).unwrap_or(0) as usize;
    if prm.p != per * per || bundle.pairing.len() != prm.p {
        out.push(format!("expected p = {} pairs, found {} (params say {})", per * per, bundle.pairing.len(), prm.p));
    }
    let s_all = enumerate_m_subsets(&bundle.x_list, prm.m).unwrap_or_default();
    let t_all = enumerate_m_subsets(&bundle.y_list, prm.m).unwrap_or_default();
    let expected = s_all.iter().flat_map(|s| t_all.iter().map(move |t| (s, t)));
    for (i, (pp, (s, t))) in bundle.pairing.iter().zip(expected).enumerate() {
        if &pp.s != s || &pp.t != t {
            out.push(format!("pair {i} is ({}, {}), expected ({s}, {t})", pp.s, pp.t));
        }
    }
    let mut owner: BTreeMap<Vertex, usize> = BTreeMap::new();
    let mut edges_used = 0usize;
    for (i, pp) in bundle.pairing.iter().enumerate() {
        let path = &pp.path;
        if path.len() != prm.l + 1 || path.first() != Some(&x) || path.last() != Some(&y) {
            out.push(format!("pair {i}: path is not an x–y path of length {}", prm.l));
            continue;
        }
        for w in path.windows(2) {
            if !bundle.graph.has_edge(w[0], w[1]) {
                out.push(format!("pair {i}: {}-{} is not an edge", w[0], w[1]));
            }
        }
        edges_used += prm.l;
        for &v in &path[1..prm.l] {
            if let Some(j) = owner.insert(v, i) {
                out.push(format!("vertex {v} lies on the paths of pairs {j} and {i}"));
            }
            if bundle.graph.degree(v) != 2 {
                out.push(format!("interior vertex {v} has degree {}", bundle.graph.degree(v)));
            }
        }
    }
    if edges_used != bundle.graph.edge_count() {
        out.push(format!("paths cover {edges_used} edges, graph has {}", bundle.graph.edge_count()));
    }
    out
}

/// Runs the path DP on the designated path of pair `index`, pinned to its
/// `(S, T)`. `Ok(None)` means no pinned colouring exists; `Ok(Some(w))`
/// returns a witness keyed by the bundle's vertex ids.
pub fn verify_pair(bundle: &GadgetBundle, index: usize) -> Result<Option<MultiColouring>> {
    let pp = bundle.pairing.get(index).ok_or_else(|| precondition(format!("no pair {index}")))?;
    let lists = bundle.lists.along(&pp.path)?;
    match solve_path_pinned_dp(&lists, bundle.params.m, &pp.s, &pp.t)? {
        SolveOutcome::Colouring(c) => {
            let sets: Vec<ColourSet> =
                (0..pp.path.len() as Vertex).map(|i| c.get(i).expect("path position").clone()).collect();
            Ok(Some(MultiColouring::from_path(bundle.params.m, &pp.path, &sets)))
        }
        _ => Ok(None),
    }
}

/// Folds per-pair verdicts into a certificate.
pub fn assemble_certificate(
    bundle: &GadgetBundle,
    structure: Vec<String>,
    verdicts: Vec<Result<Option<MultiColouring>>>,
) -> GadgetCertificate {
    let mut defects: Vec<GadgetDefect> = structure.into_iter().map(GadgetDefect::Structure).collect();
    let pairs_checked = verdicts.len();
    for (pp, v) in bundle.pairing.iter().zip(verdicts) {
        match v {
            Ok(None) => {}
            Ok(Some(witness)) => {
                debug_assert!(check_colouring(&bundle.graph, &bundle.lists, &witness).is_valid());
                defects.push(GadgetDefect::Witness { s: pp.s.clone(), t: pp.t.clone(), witness })
            }
            Err(e) => defects.push(GadgetDefect::Structure(format!("pair ({}, {}): {e}", pp.s, pp.t))),
        }
    }
    GadgetCertificate {
        pairs_checked,
        all_uncolourable: defects.is_empty() && pairs_checked == bundle.params.p,
        defects,
        runtime_ms: None,
    }
}

/// Checks the bundle's structure, then every pair in order on one thread.
pub fn verify_gadget(bundle: &GadgetBundle) -> GadgetCertificate {
    let structure = check_bundle_structure(bundle);
    let verdicts = (0..bundle.pairing.len()).map(|i| verify_pair(bundle, i)).collect();
    assemble_certificate(bundle, structure, verdicts)
}
