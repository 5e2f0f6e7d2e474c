use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use sfchoice_core::adversary::{bad_path_layout, bad_path_list, build_gadget, check_prefix_overlap};
use sfchoice_core::colour::{binomial, check_colouring, enumerate_m_subsets, ColourSet, ListAssignment};
use sfchoice_core::oracle::{solve_generic, solve_path_pinned_dp, verify_gadget, SolveOutcome};
use sfchoice_core::sp::{girth, parse_sp_expression, realize, GirthValue, Graph};

/// Every choice of interior sets, checked edge by edge.
fn brute_force_colourable(lists: &[ColourSet], m: usize, s: &ColourSet, t: &ColourSet) -> bool {
    fn go(lists: &[ColourSet], m: usize, i: usize, prev: &ColourSet, t: &ColourSet) -> bool {
        if i == lists.len() - 1 {
            return prev.is_disjoint(t);
        }
        enumerate_m_subsets(&lists[i], m)
            .unwrap()
            .into_iter()
            .any(|c| c.is_disjoint(prev) && go(lists, m, i + 1, &c, t))
    }
    if lists.len() == 1 {
        return s == t;
    }
    go(lists, m, 1, s, t)
}

/// All prefix colourings `φ(v_0) … φ(v_end)`, enumerated one vertex at a time.
fn all_prefix_ends(lists: &[ColourSet], m: usize, end: usize) -> Vec<ColourSet> {
    let mut out = Vec::new();
    fn go(lists: &[ColourSet], m: usize, i: usize, end: usize, prev: &ColourSet, out: &mut Vec<ColourSet>) {
        if i > end {
            out.push(prev.clone());
            return;
        }
        for c in enumerate_m_subsets(&lists[i], m).unwrap() {
            if c.is_disjoint(prev) {
                go(lists, m, i + 1, end, &c, out);
            }
        }
    }
    go(lists, m, 1, end, &lists[0], &mut out);
    out
}

fn cs(c: &[u32]) -> ColourSet {
    c.iter().copied().collect()
}

#[test]
fn l2_bad_path_exhausts_all_ten_choices() {
    let (lists, _) = bad_path_list(2, 2, 1, &cs(&[0, 1]), &cs(&[2, 3]), &ColourSet::new()).unwrap();
    assert_eq!(lists[1], cs(&[0, 1, 2, 3, 4]));
    let choices = enumerate_m_subsets(&lists[1], 2).unwrap();
    assert_eq!(choices.len(), 10);
    assert!(choices.iter().all(|c| !c.is_disjoint(&cs(&[0, 1, 2, 3]))));
    assert!(!brute_force_colourable(&lists, 2, &lists[0], &lists[2]));
}

/// Uncolourability for every parameter set with `C(2m+e, m) ≤ 1000`.
#[test]
fn bad_paths_are_uncolourable() {
    let mut checked = 0;
    for l in 2..=9usize {
        let q = l / 2;
        for m in 1..=6usize {
            for e in 1..=3usize {
                if q * e >= m || binomial((2 * m + e) as u64, m as u64).unwrap() > 1000 {
                    continue;
                }
                let m1 = ColourSet::range(0, m as u32);
                let m2 = ColourSet::range(m as u32, m as u32);
                let (lists, spec) = bad_path_list(l, m, e, &m1, &m2, &ColourSet::new()).unwrap();
                assert_eq!(lists.len(), l + 1);
                assert!(lists[1..l].iter().all(|x| x.len() == 2 * m + e));
                // blocks are pairwise disjoint and avoid the pins
                let blocks: Vec<_> = spec.blocks.values().collect();
                for (i, a) in blocks.iter().enumerate() {
                    assert!(a.is_disjoint(&m1.union(&m2)));
                    for b in &blocks[i + 1..] {
                        assert!(a.is_disjoint(b));
                    }
                }
                assert_eq!(
                    solve_path_pinned_dp(&lists, m, &m1, &m2).unwrap(),
                    SolveOutcome::NoColouring,
                    "l={l} m={m} e={e}"
                );
                if l <= 3 && binomial((2 * m + e) as u64, m as u64).unwrap() <= 100 {
                    assert!(!brute_force_colourable(&lists, m, &m1, &m2));
                }
                checked += 1;
            }
        }
    }
    assert!(checked > 20);
}

/// At `q·e = m` the same layout is no longer blocking, so the strict
/// inequality is needed.
#[test]
fn slack_at_threshold_admits_colourings() {
    let (m, e, l) = (2usize, 1usize, 4usize);
    let m1 = ColourSet::range(0, 2);
    let m2 = ColourSet::range(2, 2);
    assert!(bad_path_list(l, m, e, &m1, &m2, &ColourSet::new()).is_err());
    // one extra colour per interior list lifts the slack to 2, where q·e ≥ m
    let (mut lists, _) =
        bad_path_list(4, 3, 1, &ColourSet::range(0, 3), &ColourSet::range(3, 3), &ColourSet::new()).unwrap();
    let extra = 900;
    lists[1].insert(extra);
    lists[2].insert(extra);
    lists[3].insert(extra + 1);
    assert!(matches!(
        solve_path_pinned_dp(&lists, 3, &lists[0].clone(), &lists[4].clone()).unwrap(),
        SolveOutcome::Colouring(_)
    ));
}

#[test]
fn prefix_overlap_matches_full_prefix_enumeration() {
    for &(l, m, e) in &[(4usize, 3usize, 1usize), (5, 3, 1), (6, 3, 1), (6, 4, 1), (7, 4, 1)] {
        let (lists, spec) = bad_path_layout(
            l,
            m,
            e,
            &ColourSet::range(0, m as u32),
            &ColourSet::range(50, m as u32),
            &ColourSet::new(),
        )
        .unwrap();
        for j in 2..=spec.q {
            let report = check_prefix_overlap(&lists, &spec, j).unwrap();
            assert!(report.passed, "l={l} m={m} e={e} j={j}: {report:?}");
            let b = spec.block(&format!("B{}", 2 * j - 2)).unwrap();
            let ends = all_prefix_ends(&lists, m, 2 * j - 2);
            let brute_min = ends.iter().map(|s| s.intersection_len(b)).min();
            assert_eq!(report.min_overlap, brute_min);
            let distinct: std::collections::BTreeSet<_> = ends.into_iter().collect();
            assert_eq!(report.reachable, distinct.len());
        }
    }
}

#[test]
fn prefix_overlap_l6_bound() {
    assert!(bad_path_list(6, 3, 1, &cs(&[0, 1, 2]), &cs(&[3, 4, 5]), &ColourSet::new()).is_err());
    let (lists, spec) = bad_path_layout(6, 3, 1, &cs(&[0, 1, 2]), &cs(&[3, 4, 5]), &ColourSet::new()).unwrap();
    let r = check_prefix_overlap(&lists, &spec, 3).unwrap();
    assert_eq!(r.bound, 1);
    assert!(r.min_overlap.unwrap() >= 1);
}

#[test]
fn gadget_k7_shape() {
    let bundle = build_gadget(7, 3, 1).unwrap();
    assert_eq!(bundle.params.l, 4);
    assert_eq!(bundle.params.p, 1225);
    assert_eq!(bundle.graph.vertex_count(), 2 + 1225 * 3);
    assert_eq!(girth(&bundle.graph), GirthValue::Finite(8));
    assert_eq!(bundle.x_list.len(), 7);
    assert!(bundle.x_list.is_disjoint(&bundle.y_list));
    let mut seen = std::collections::BTreeSet::new();
    for pp in &bundle.pairing {
        assert!(seen.insert((pp.s.clone(), pp.t.clone())));
        let lists = bundle.lists.along(&pp.path).unwrap();
        let (expected, _) = bad_path_list(4, 3, 1, &pp.s, &pp.t, &bundle.x_list.union(&bundle.y_list)).unwrap();
        assert_eq!(&lists[1..4], &expected[1..4]);
    }
}

#[test]
fn gadgets_certify_for_each_girth_class() {
    for k in 3..=6 {
        let cert = verify_gadget(&build_gadget(k, 2, 1).unwrap());
        assert_eq!(cert.pairs_checked, 100);
        assert!(cert.all_uncolourable, "k={k}");
    }
}

#[test]
fn gadget_matches_term_realization() {
    let bundle = build_gadget(5, 2, 1).unwrap();
    let term = parse_sp_expression("e^3|100").unwrap();
    assert_eq!(realize(&term).unwrap(), bundle.graph);
}

fn random_path_instance(rng: &mut ChaCha8Rng) -> (Vec<ColourSet>, usize, ColourSet, ColourSet) {
    let m = rng.gen_range(1..=3usize);
    let l = rng.gen_range(1..=4usize);
    let universe = rng.gen_range(2 * m..=3 * m + 2) as u32;
    let pick = |size: usize, rng: &mut ChaCha8Rng| -> ColourSet {
        let mut all: Vec<u32> = (0..universe).collect();
        all.shuffle(rng);
        all.into_iter().take(size).collect()
    };
    let s = pick(m, rng);
    let t = pick(m, rng);
    let mut lists = vec![s.clone()];
    for _ in 1..l {
        let size = rng.gen_range(m..=(2 * m + 2).min(universe as usize));
        lists.push(pick(size, rng));
    }
    lists.push(t.clone());
    if l == 0 {
        lists.truncate(1);
    }
    (lists, m, s, t)
}

/// DP and backtracking agree on random pinned paths; tiny cases are also
/// re-derived by brute force.
#[test]
fn solvers_agree_on_random_paths() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let (mut yes, mut no) = (0, 0);
    for _ in 0..400 {
        let (lists, m, s, t) = random_path_instance(&mut rng);
        let n = lists.len() as u32;
        let g = Graph::new(0..n, (1..n).map(|i| (i - 1, i)), None).unwrap();
        let la: ListAssignment = lists.iter().cloned().enumerate().map(|(i, l)| (i as u32, l)).collect();
        let dp = solve_path_pinned_dp(&lists, m, &s, &t).unwrap();
        let generic = solve_generic(&g, &la, m, 10_000_000);
        assert_eq!(dp.is_colourable(), generic.is_colourable(), "{lists:?} m={m}");
        assert_eq!(dp.is_colourable(), Some(brute_force_colourable(&lists, m, &s, &t)));
        for out in [dp, generic] {
            if let SolveOutcome::Colouring(phi) = out {
                assert!(check_colouring(&g, &la, &phi).is_valid());
                assert_eq!(phi.get(0), Some(&s));
                yes += 1;
            } else {
                no += 1;
            }
        }
    }
    assert!(yes > 100 && no > 100, "yes={yes} no={no}");
}
