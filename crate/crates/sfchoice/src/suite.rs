//! The acceptance suite: seven checks covering both directions of the
//! bound, the path results behind them, and the solvers used to certify them.

use std::fmt;
use std::time::{Duration, Instant};

use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sfchoice_core::adversary::{bad_path_layout, bad_path_list, build_gadget, check_prefix_overlap, GadgetBundle};
use sfchoice_core::bound::bound_for_girth;
use sfchoice_core::colour::{
    binomial, check_colouring, enumerate_m_subsets, fresh_colours, ColourSet, ListAssignment, MultiColouring,
};
use sfchoice_core::constructive::{
    build_t_sets, colour_path_pinned, colour_sp, extend_to_target, required_list_size, threshold,
};
use sfchoice_core::oracle::{solve_generic, solve_path_pinned_dp, SolveOutcome};
use sfchoice_core::sp::{girth, random_sp_graph, Graph};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Profile {
    /// Smaller samples and no 1225-pair gadgets.
    Quick,
    /// The sizes and limits of the acceptance criteria.
    Full,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Corruption {
    /// Grow block `Z1` of the first gadget to `m` colours.
    GadgetZBlock,
}

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub profile: Profile,
    pub workers: usize,
    /// Node budget for the backtracking solver.
    pub budget: u64,
    pub corrupt: Option<Corruption>,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions { profile: Profile::Full, workers: 0, budget: 10_000_000, corrupt: None }
    }
}

#[derive(Clone, Debug)]
pub struct Outcome {
    pub id: u8,
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
    pub elapsed: Duration,
    pub limit: Option<Duration>,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{}] {} {}: {} ({:.2} s",
            if self.passed { "PASS" } else { "FAIL" },
            self.id,
            self.name,
            self.detail,
            self.elapsed.as_secs_f64()
        )?;
        if let Some(l) = self.limit {
            write!(f, ", limit {} s", l.as_secs())?;
        }
        f.write_str(")")
    }
}

pub const CRITERIA: [u8; 7] = [1, 2, 3, 4, 5, 6, 7];

pub fn run_suite(opts: &SuiteOptions) -> Vec<Outcome> {
    CRITERIA.iter().map(|&id| run_criterion(id, opts)).collect()
}

pub fn run_criterion(id: u8, opts: &SuiteOptions) -> Outcome {
    let start = Instant::now();
    let (name, limit, result) = match id {
        1 => ("lower bound gadgets", None, lower_bound(opts)),
        2 => ("upper bound colourer", Some(120), upper_bound(opts)),
        3 => ("T-set extension", Some(60), t_set_extension(opts)),
        4 => ("threshold duality", None, duality(opts)),
        5 => ("prefix overlap bound", Some(60), prefix_overlap()),
        6 => ("solver agreement", None, solver_agreement(opts)),
        7 => ("bound table", None, bound_table()),
        _ => ("unknown", None, Err(format!("no criterion {id}"))),
    };
    let elapsed = start.elapsed();
    let limit = limit.map(Duration::from_secs);
    let (mut passed, mut detail) = match result {
        Ok(d) => (true, d),
        Err(d) => (false, d),
    };
    if let Some(l) = limit {
        if elapsed >= l {
            passed = false;
            detail.push_str("; over time limit");
        }
    }
    Outcome { id, name, passed, detail, elapsed, limit }
}

type Check = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn random_set(rng: &mut ChaCha8Rng, universe: u32, size: usize) -> ColourSet {
    sample(rng, universe as usize, size).into_iter().map(|c| c as u32).collect()
}

fn path_graph(n: usize) -> Graph {
    let n = n as u32;
    Graph::new(0..n, (1..n).map(|i| (i - 1, i)), None).expect("path")
}

fn path_lists(lists: &[ColourSet]) -> ListAssignment {
    lists.iter().cloned().enumerate().map(|(i, l)| (i as u32, l)).collect()
}

fn valid_on_path(lists: &[ColourSet], sets: &[ColourSet], m: usize) -> bool {
    if sets.len() != lists.len() {
        return false;
    }
    let path: Vec<u32> = (0..lists.len() as u32).collect();
    let phi = MultiColouring::from_path(m, &path, sets);
    check_colouring(&path_graph(lists.len()), &path_lists(lists), &phi).is_valid()
}

/// Adds `m − e` fresh colours to `Z1` and to every list that contains it.
pub fn corrupt_gadget(bundle: &mut GadgetBundle) {
    let z1 = bundle.blocks["Z1"].clone();
    let mut used = ColourSet::new();
    for (_, l) in bundle.lists.iter() {
        used.extend(l);
    }
    let extra = fresh_colours(bundle.params.m - bundle.params.e, &used);
    let targets: Vec<u32> = bundle.lists.iter().filter(|(_, l)| z1.is_subset(l)).map(|(v, _)| v).collect();
    for v in targets {
        bundle.lists.get_mut(v).expect("listed vertex").extend(&extra);
    }
    bundle.blocks.get_mut("Z1").expect("Z1").extend(&extra);
}

fn lower_bound(opts: &SuiteOptions) -> Check {
    let mut cases = vec![(3, 2, 1, 100, 5), (4, 2, 1, 100, 5), (5, 2, 1, 100, 5), (6, 2, 1, 100, 5)];
    if opts.profile == Profile::Full {
        cases.extend([(7, 3, 1, 1225, 60), (8, 3, 1, 1225, 60)]);
    }
    let mut parts = Vec::new();
    for (i, &(k, m, e, pairs, secs)) in cases.iter().enumerate() {
        let start = Instant::now();
        let mut bundle = build_gadget(k, m, e).map_err(|err| format!("k={k}: {err}"))?;
        if i == 0 && opts.corrupt == Some(Corruption::GadgetZBlock) {
            corrupt_gadget(&mut bundle);
        }
        let g = girth(&bundle.graph);
        let cert = crate::certify::verify_gadget_parallel(&bundle, opts.workers);
        let elapsed = start.elapsed();
        ensure(g.at_least(k), || format!("k={k}: girth {g:?} below k"))?;
        ensure(cert.pairs_checked == pairs && cert.all_uncolourable, || {
            format!("k={k} m={m} e={e}: {} pairs checked, {} defect(s)", cert.pairs_checked, cert.defects.len())
        })?;
        ensure(elapsed < Duration::from_secs(secs), || {
            format!("k={k}: {:.2} s exceeds {secs} s", elapsed.as_secs_f64())
        })?;
        parts.push(format!("k={k} {pairs}/{pairs}"));
    }
    Ok(format!("uncolourable: {}", parts.join(", ")))
}

fn upper_bound(opts: &SuiteOptions) -> Check {
    let per = if opts.profile == Profile::Full { 200 } else { 50 };
    let mut total = 0;
    for k in 3..=8u32 {
        for m in 1..=3usize {
            let size = required_list_size(m, k).map_err(|e| e.to_string())?;
            for i in 0..per {
                let seed = u64::from(k) * 1_000_000 + m as u64 * 1_000 + i as u64;
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let leaves = rng.gen_range(2..=14);
                let (_, g) = random_sp_graph(leaves, seed, k).map_err(|e| e.to_string())?;
                ensure(girth(&g).at_least(k), || format!("seed {seed}: girth below {k}"))?;
                let lists: ListAssignment =
                    g.vertices().iter().map(|&v| (v, random_set(&mut rng, 6 * m as u32, size))).collect();
                let out = colour_sp(&g, &lists, m, k).map_err(|e| format!("k={k} m={m} seed={seed}: {e}"))?;
                let report = check_colouring(&g, &lists, &out.colouring);
                ensure(report.is_valid() && out.colouring.len() == g.vertex_count(), || {
                    format!("k={k} m={m} seed={seed}: invalid colouring")
                })?;
                total += 1;
            }
        }
    }
    Ok(format!("{total}/{total} graphs coloured with lists of size ⌈(2+1/q)m⌉"))
}

fn t_set_extension(opts: &SuiteOptions) -> Check {
    let families = if opts.profile == Profile::Full { 20 } else { 5 };
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut extended = 0usize;
    for l in 0..=5usize {
        for m in 1..=2usize {
            for e in 1..=2usize {
                let n = 2 * m + e;
                for _ in 0..families {
                    let universe = (2 * n) as u32;
                    let mut lists = vec![random_set(&mut rng, universe, m)];
                    lists.extend((0..l).map(|_| random_set(&mut rng, universe, n)));
                    for j in 0..=l {
                        let prefix = &lists[..=j];
                        let cert = build_t_sets(prefix, m, e).map_err(|err| err.to_string())?;
                        cert.check(prefix).map_err(|err| err.to_string())?;
                        for b in enumerate_m_subsets(&prefix[j], m).map_err(|err| err.to_string())? {
                            if b.intersection_len(&cert.tsets[j]) < threshold(j, m, e) {
                                continue;
                            }
                            let out = extend_to_target(prefix, m, e, &cert, &b)
                                .map_err(|err| format!("l={l} m={m} e={e} j={j} B={b}: {err}"))?;
                            ensure(out[j] == b && valid_on_path(prefix, &out, m), || {
                                format!("l={l} m={m} e={e} j={j} B={b}: invalid extension")
                            })?;
                            extended += 1;
                        }
                    }
                }
            }
        }
    }
    Ok(format!("{extended} qualifying targets extended, 0 failures"))
}

fn duality(opts: &SuiteOptions) -> Check {
    let families = if opts.profile == Profile::Full { 20 } else { 5 };
    let (l, m, e) = (4usize, 2usize, 1usize);
    let xs = enumerate_m_subsets(&ColourSet::range(0, 5), m).map_err(|err| err.to_string())?;
    let ys = enumerate_m_subsets(&ColourSet::range(5, 5), m).map_err(|err| err.to_string())?;
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut coloured = 0;
    for f in 0..families {
        let interior: Vec<ColourSet> = (1..l).map(|_| random_set(&mut rng, 15, 2 * m + e)).collect();
        for s in &xs {
            for t in &ys {
                let mut lists = vec![s.clone()];
                lists.extend(interior.iter().cloned());
                lists.push(t.clone());
                let out = colour_path_pinned(&lists, m, e).map_err(|err| format!("family {f} ({s}, {t}): {err}"))?;
                ensure(valid_on_path(&lists, &out, m), || format!("family {f} ({s}, {t}): invalid colouring"))?;
                let dp = solve_path_pinned_dp(&lists, m, s, t).map_err(|err| err.to_string())?;
                ensure(dp.is_colourable() == Some(true), || format!("family {f} ({s}, {t}): oracle disagrees"))?;
                coloured += 1;
            }
        }
    }
    ensure(
        bad_path_list(4, 2, 1, &ColourSet::range(0, 2), &ColourSet::range(2, 2), &ColourSet::new()).is_err(),
        || "bad_path_list accepted q·e = m".into(),
    )?;
    let (m1, m2) = (ColourSet::range(0, 3), ColourSet::range(3, 3));
    let (lists, _) = bad_path_list(4, 3, 1, &m1, &m2, &ColourSet::new()).map_err(|err| err.to_string())?;
    let verdict = solve_path_pinned_dp(&lists, 3, &m1, &m2).map_err(|err| err.to_string())?;
    ensure(verdict == SolveOutcome::NoColouring, || "bad path (4,3,1) is colourable".into())?;
    Ok(format!("{coloured}/{coloured} pinned pairs coloured at q·e = m; bad path (4,3,1) uncolourable"))
}

/// Every colouring of `v_0 … v_end` with `v_0` pinned to its list, as the
/// set given to `v_end`.
fn enumerate_prefix(lists: &[ColourSet], m: usize, end: usize) -> Vec<ColourSet> {
    let choices: Vec<Vec<ColourSet>> =
        lists[1..=end].iter().map(|l| enumerate_m_subsets(l, m).expect("list has m colours")).collect();
    let mut out = Vec::new();
    let mut stack = vec![(0usize, lists[0].clone())];
    while let Some((i, prev)) = stack.pop() {
        if i == end {
            out.push(prev);
            continue;
        }
        for c in &choices[i] {
            if c.is_disjoint(&prev) {
                stack.push((i + 1, c.clone()));
            }
        }
    }
    out
}

fn prefix_overlap() -> Check {
    let mut parts = Vec::new();
    for (l, m, e) in [(4usize, 3usize, 1usize), (6, 3, 1)] {
        let (m1, m2) = (ColourSet::range(0, m as u32), ColourSet::range(m as u32, m as u32));
        let (lists, spec) = bad_path_layout(l, m, e, &m1, &m2, &ColourSet::new()).map_err(|err| err.to_string())?;
        for j in 2..=spec.q {
            let end = 2 * j - 2;
            let b = spec.block(&format!("B{end}")).ok_or_else(|| format!("no block B{end}"))?;
            let ends = enumerate_prefix(&lists, m, end);
            let bound = m.saturating_sub((j - 1) * e);
            let min = ends.iter().map(|s| s.intersection_len(b)).min();
            ensure(min.is_none_or(|v| v >= bound), || {
                format!("(l,m,e)=({l},{m},{e}) j={j}: overlap {min:?} below {bound}")
            })?;
            let report = check_prefix_overlap(&lists, &spec, j).map_err(|err| err.to_string())?;
            ensure(report.passed && report.min_overlap == min, || {
                format!("(l,m,e)=({l},{m},{e}) j={j}: reachability check disagrees with enumeration")
            })?;
            parts.push(format!(
                "({l},{m},{e}) j={j}: {} colourings, min overlap {} ≥ {bound}",
                ends.len(),
                min.map_or("none".into(), |v| v.to_string())
            ));
        }
    }
    Ok(parts.join("; "))
}

/// A random pinned path with at most `C(9, 3) = 84` choices per vertex.
pub fn random_path_instance(rng: &mut ChaCha8Rng) -> (Vec<ColourSet>, usize) {
    let m = rng.gen_range(1..=3usize);
    let l = rng.gen_range(1..=5usize);
    let universe = rng.gen_range(2 * m..=3 * m + 2);
    let mut lists = vec![random_set(rng, universe as u32, m)];
    for _ in 1..l {
        let size = rng.gen_range(m..=(2 * m + 3).min(universe));
        lists.push(random_set(rng, universe as u32, size));
    }
    lists.push(random_set(rng, universe as u32, m));
    (lists, m)
}

fn solver_agreement(opts: &SuiteOptions) -> Check {
    let count = if opts.profile == Profile::Full { 500 } else { 150 };
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let (mut yes, mut no) = (0, 0);
    for i in 0..count {
        let (lists, m) = random_path_instance(&mut rng);
        for l in &lists {
            let c = binomial(l.len() as u64, m as u64).unwrap_or(u64::MAX);
            ensure(c <= 1000, || format!("instance {i}: {c} subsets at one vertex"))?;
        }
        let g = path_graph(lists.len());
        let la = path_lists(&lists);
        let (s, t) = (&lists[0], &lists[lists.len() - 1]);
        let dp = solve_path_pinned_dp(&lists, m, s, t).map_err(|err| err.to_string())?;
        let generic = solve_generic(&g, &la, m, opts.budget);
        if let SolveOutcome::BudgetExceeded { nodes } = generic {
            return Err(format!("instance {i}: backtracking gave up after {nodes} nodes"));
        }
        ensure(dp.is_colourable() == generic.is_colourable(), || format!("instance {i}: verdicts differ"))?;
        for out in [&dp, &generic] {
            if let SolveOutcome::Colouring(phi) = out {
                ensure(check_colouring(&g, &la, phi).is_valid(), || format!("instance {i}: invalid witness"))?;
            }
        }
        if dp.is_colourable() == Some(true) {
            yes += 1;
        } else {
            no += 1;
        }
    }
    Ok(format!("{count}/{count} agree ({yes} colourable, {no} not)"))
}

fn gcd(a: u32, b: u32) -> u32 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn bound_table() -> Check {
    for k in 3..=14u32 {
        let row = bound_for_girth(k).map_err(|e| e.to_string())?;
        let q = (k + 1) / 4;
        let (n, d) = (2 * q + 1, q);
        let g = gcd(n, d);
        let expected = if d / g == 1 { format!("{}", n / g) } else { format!("{}/{}", n / g, d / g) };
        let line = row.to_string();
        ensure(row.q == q && line.ends_with(&format!("bound={expected}")), || {
            format!("k={k}: got \"{line}\", expected 2 + 1/{q} = {expected}")
        })?;
        ensure(row.class.0 <= k && k <= row.class.1 && row.class.0 == 4 * q - 1, || {
            format!("k={k}: class {:?}", row.class)
        })?;
    }
    Ok("2 + 1/q exact for k = 3..=14".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn corruption_is_caught() {
        let opts =
            SuiteOptions { profile: Profile::Quick, corrupt: Some(Corruption::GadgetZBlock), ..Default::default() };
        let out = run_criterion(1, &opts);
        assert!(!out.passed);
        assert!(out.detail.contains("k=3"), "{}", out.detail);
    }

    #[test]
    fn cheap_criteria_pass() {
        let opts = SuiteOptions { profile: Profile::Quick, ..Default::default() };
        for id in [4, 5, 7] {
            let out = run_criterion(id, &opts);
            assert!(out.passed, "{out}");
        }
    }

    #[test]
    fn prefix_enumeration_counts() {
        let (lists, _) =
            bad_path_layout(4, 3, 1, &ColourSet::range(0, 3), &ColourSet::range(3, 3), &ColourSet::new()).unwrap();
        // v1 avoids M1: only A1 ∪ Z1 remains, which has exactly 4 colours
        let ends = enumerate_prefix(&lists, 3, 1);
        assert_eq!(ends.len(), 4);
    }
}
