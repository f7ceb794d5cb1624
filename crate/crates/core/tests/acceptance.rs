//! Acceptance criteria. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any fails.

mod common;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::{Duration, Instant};

use asymtree::asym::{
    count_rooted, count_unrooted, find_rooted, find_unrooted, motion, motion_rooted, unrank_rooted,
    verify_rooted, verify_unrooted, MotionResult,
};
use asymtree::cardinal::{binom, pow, product_family, sum_family, two_pow, Cardinal};
use asymtree::generate::{all_rooted_trees, all_unrooted_trees, random_local, random_tree};
use asymtree::graph::RootedGraph;
use asymtree::oracle::{oracle_count_asym, oracle_is_asymmetrizing, oracle_motion, Caps};
use asymtree::presented::{
    count_presented, motion_presented, unfold, PresentedMotion, Theorem, TreeKind, TreePresentation,
};
use asymtree::tree::{RootedTree, VertexId};
use asymtree::treelike::{
    asymmetrize_treelike, check_treelike, contract_even_levels, extract_forest, lift_asym_set,
    unexposed, Asymmetrization, FailureReason, LiftMode,
};
use num_bigint::{BigUint, RandBigInt};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestRunner};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

// Pinned limits. All comparisons below are exact.
const ROOTED_MAX_N: usize = 9;
const UNROOTED_MAX_N: usize = 10;
const CORPUS_BUDGET: Duration = Duration::from_secs(300);
const LARGE_N: usize = 5000;
const LARGE_TREES: usize = 100;
const LARGE_BUDGET: Duration = Duration::from_secs(1);
const CARDINAL_CASES: u32 = 10_000;
const RAYLESS_FAMILY: usize = 100;
const CONSISTENCY_CASES: usize = 1000;
const CONSISTENCY_MAX_UNFOLD: usize = 500;
const CONSISTENCY_BUDGET: Duration = Duration::from_secs(120);
const LIFT_TREES: usize = 500;
const LIFT_MAX_N: usize = 200;
const SWEEP_CAP: usize = 16;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn rooted_corpus() -> Vec<RootedTree> {
    (1..=ROOTED_MAX_N).flat_map(all_rooted_trees).collect()
}

fn adjacency(t: &RootedTree) -> Vec<Vec<VertexId>> {
    t.to_unrooted().adjacency().to_vec()
}

fn counting() -> Outcome {
    let start = Instant::now();
    let caps = Caps::default();
    let mut mismatches = Vec::new();
    let rooted = rooted_corpus();
    for t in &rooted {
        let oracle = oracle_count_asym(&adjacency(t), Some(t.root()), &caps).unwrap();
        if count_rooted(t) != oracle {
            mismatches.push(t.to_string());
        }
    }
    let mut unrooted = 0;
    for n in 1..=UNROOTED_MAX_N {
        for t in all_unrooted_trees(n) {
            unrooted += 1;
            if count_unrooted(&t) != oracle_count_asym(t.adjacency(), None, &caps).unwrap() {
                mismatches.push(t.to_string().replace('\n', " "));
            }
        }
    }
    let at_ten = all_unrooted_trees(UNROOTED_MAX_N).len();
    let elapsed = start.elapsed();
    outcome(
        mismatches.is_empty() && at_ten == 106 && elapsed < CORPUS_BUDGET,
        format!(
            "{} rooted + {unrooted} unrooted trees ({at_ten} at n=10), {} mismatches, {:.1}s",
            rooted.len(),
            mismatches.len(),
            elapsed.as_secs_f64()
        ),
    )
}

fn motion_agreement() -> Outcome {
    let caps = Caps::default();
    let mut checked = 0;
    let mut mismatches = 0;
    for t in rooted_corpus() {
        checked += 1;
        if motion_rooted(&t) != oracle_motion(&adjacency(&t), Some(t.root()), &caps).unwrap() {
            mismatches += 1;
        }
    }
    for n in 1..=UNROOTED_MAX_N {
        for t in all_unrooted_trees(n) {
            checked += 1;
            if motion(&t) != oracle_motion(t.adjacency(), None, &caps).unwrap() {
                mismatches += 1;
            }
        }
    }
    outcome(
        mismatches == 0,
        format!("{checked} trees, {mismatches} mismatches"),
    )
}

fn construction() -> Outcome {
    let caps = Caps::default();
    let mut found = 0;
    let mut failures = 0;
    for t in rooted_corpus() {
        if let Some(s) = find_rooted(&t) {
            found += 1;
            let by_oracle =
                oracle_is_asymmetrizing(&adjacency(&t), Some(t.root()), s.members(), &caps)
                    .unwrap();
            failures += usize::from(!(verify_rooted(&t, s.members()) && by_oracle));
        }
    }
    for n in 1..=UNROOTED_MAX_N {
        for t in all_unrooted_trees(n) {
            if let Some(s) = find_unrooted(&t) {
                found += 1;
                let by_oracle =
                    oracle_is_asymmetrizing(t.adjacency(), None, s.members(), &caps).unwrap();
                failures += usize::from(!(verify_unrooted(&t, s.members()) && by_oracle));
            }
        }
    }

    // Large trees: thin random attachment trees, kept when asymmetrizable.
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut slowest = Duration::ZERO;
    let (mut large, mut generated) = (0, 0);
    while large < LARGE_TREES && generated < 50 * LARGE_TREES {
        generated += 1;
        let t = random_local(LARGE_N, rng.gen_range(2..=4), &mut rng);
        let start = Instant::now();
        let Some(s) = find_rooted(&t) else {
            continue;
        };
        let ok = verify_rooted(&t, s.members());
        slowest = slowest.max(start.elapsed());
        large += 1;
        failures += usize::from(!ok);
    }
    outcome(
        failures == 0 && large == LARGE_TREES && slowest < LARGE_BUDGET,
        format!(
            "{found} corpus sets, {large} trees at n={LARGE_N} ({generated} generated), \
             slowest find+verify {:.1}ms, {failures} failures",
            slowest.as_secs_f64() * 1e3
        ),
    )
}

fn cardinal() -> BoxedStrategy<Cardinal> {
    prop_oneof![
        3 => (0u64..40).prop_map(Cardinal::finite),
        1 => (0u64..u64::MAX).prop_map(Cardinal::finite),
        2 => (0u32..4).prop_map(Cardinal::Beth),
    ]
    .boxed()
}

/// One child of the vertex in the replay: subtree size and twin count.
fn replay_children(m: u32) -> impl Strategy<Value = Vec<(Cardinal, Cardinal)>> {
    let size = prop_oneof![
        (1u64..40).prop_map(Cardinal::finite),
        (0u32..4).prop_map(Cardinal::Beth),
    ];
    let child = (size, 0u64..5, 0u32..=m + 1).prop_map(move |(size, t, tb)| {
        // Subtrees smaller than the motion are asymmetric and have no twins;
        // larger ones may repeat up to 2^motion times.
        let tau = if size < Cardinal::Beth(m) {
            Cardinal::one()
        } else if t == 0 {
            Cardinal::Beth(tb.min(m + 1))
        } else {
            Cardinal::finite(t)
        };
        (size, tau)
    });
    proptest::collection::vec(child, 0..5)
}

fn cardinal_laws() -> Outcome {
    let config = Config {
        cases: CARDINAL_CASES,
        failure_persistence: None,
        rng_algorithm: proptest::test_runner::RngAlgorithm::ChaCha,
        ..Config::default()
    };
    let mut runner = TestRunner::new_with_rng(
        config.clone(),
        proptest::test_runner::TestRng::from_seed(
            proptest::test_runner::RngAlgorithm::ChaCha,
            &[7; 32],
        ),
    );
    let laws = runner.run(&(cardinal(), cardinal(), cardinal()), |(a, b, c)| {
        // Total order.
        prop_assert_eq!(a.cmp(&a), std::cmp::Ordering::Equal);
        prop_assert!(a <= b || b <= a);
        if a <= b && b <= a {
            prop_assert_eq!(&a, &b);
        }
        if a <= b && b <= c {
            prop_assert!(a <= c);
        }
        // 2^x is strictly increasing and above x.
        if let (Ok(pa), Ok(pb)) = (two_pow(&a), two_pow(&b)) {
            prop_assert!(pa > a);
            if a < b {
                prop_assert!(pa < pb);
            }
        }
        // binom(a, t) = a^t for t <= a when a is infinite, 0 for t > a.
        let bn = binom(&a, &b);
        if b > a {
            prop_assert_eq!(bn.unwrap(), Cardinal::zero());
        } else if a.is_infinite() {
            prop_assert_eq!(bn.unwrap(), pow(&a, &b).unwrap());
        } else if let (Some(n), Some(k)) = (a.to_u64(), b.to_u64()) {
            if n < 40 {
                let expected = (0..k).fold(BigUint::from(1u32), |acc, i| acc * (n - i) / (i + 1));
                prop_assert_eq!(bn.unwrap(), Cardinal::Finite(expected));
            }
        }
        // Sums and products of infinite values are maxima.
        if a.is_infinite() || b.is_infinite() {
            prop_assert_eq!(a.add(&b), a.clone().max(b.clone()));
            if !a.is_zero() && !b.is_zero() {
                prop_assert_eq!(a.mul(&b), a.clone().max(b.clone()));
            }
        }
        Ok(())
    });

    // Replay of the recursion step under infinite motion: if every child
    // has 2^|T^x| asymmetrizing sets then the parent has 2^|T^y|.
    let mut replay_runner = TestRunner::new_with_rng(
        config,
        proptest::test_runner::TestRng::from_seed(
            proptest::test_runner::RngAlgorithm::ChaCha,
            &[9; 32],
        ),
    );
    let replay = replay_runner.run(
        &(0u32..3).prop_flat_map(|m| (Just(m), replay_children(m))),
        |(_, children)| {
            let factors: Vec<(Cardinal, Cardinal)> = children
                .iter()
                .map(|(size, tau)| {
                    (
                        binom(&two_pow(size).unwrap(), tau).unwrap(),
                        Cardinal::one(),
                    )
                })
                .collect();
            let a_y = Cardinal::finite(2).mul(&product_family(&factors).unwrap());
            let mut terms = vec![(Cardinal::one(), Cardinal::one())];
            terms.extend(children.iter().cloned());
            let size_y = sum_family(&terms);
            if let Ok(expected) = two_pow(&size_y) {
                prop_assert_eq!(a_y, expected);
            }
            Ok(())
        },
    );
    let pass = laws.is_ok() && replay.is_ok();
    let mut detail = format!("{CARDINAL_CASES} triples, {CARDINAL_CASES} recursion replays");
    if let Err(e) = laws {
        detail.push_str(&format!("; law failure: {e}"));
    }
    if let Err(e) = replay {
        detail.push_str(&format!("; replay failure: {e}"));
    }
    outcome(pass, detail)
}

fn presentation(text: &str) -> TreePresentation {
    TreePresentation::parse(text).unwrap()
}

fn theorem_replays() -> Outcome {
    let mut failures = Vec::new();
    let mut expect = |name: &str, ok: bool| {
        if !ok {
            failures.push(name.to_string());
        }
    };
    let t3 = count_presented(&presentation("r: d*3 / d: d*2")).unwrap();
    expect(
        "T_3",
        t3.count == Cardinal::Beth(1)
            && t3.count == two_pow(&t3.size).unwrap()
            && t3.theorem == Theorem::DoubleRay,
    );
    let ray = count_presented(&presentation("r: r*1")).unwrap();
    expect(
        "ray",
        ray.count == Cardinal::Beth(1)
            && ray.count == two_pow(&ray.size).unwrap()
            && ray.theorem == Theorem::OneEnded,
    );
    let big = count_presented(&presentation("r: q*beth_1 / q: q*1")).unwrap();
    expect(
        "beth_1 rays",
        big.count == Cardinal::Beth(2) && big.count == two_pow(&Cardinal::Beth(1)).unwrap(),
    );
    let star = presentation("r: l*w / l:");
    expect(
        "star",
        count_presented(&star).unwrap().count.is_zero()
            && motion_presented(&star) == PresentedMotion::Moved(Cardinal::finite(2)),
    );

    // Rayless presentations whose motion exceeds every cardinal, i.e.
    // asymmetric ones; the twin bound holds since every slot is single.
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let mut family = BTreeSet::new();
    let mut family_failures = 0;
    let mut tries = 0;
    while family.len() < RAYLESS_FAMILY && tries < 100_000 {
        tries += 1;
        let p = common::random_presentation(&mut rng, 12, &[Cardinal::one()]);
        if motion_presented(&p) != PresentedMotion::Asymmetric || !family.insert(p.to_line()) {
            continue;
        }
        let r = count_presented(&p).unwrap();
        let ok = matches!(
            r.classification,
            TreeKind::FiniteTree | TreeKind::RaylessInfinite
        ) && r.count == two_pow(&r.size).unwrap();
        family_failures += usize::from(!ok);
    }
    expect(
        "rayless family",
        family.len() == RAYLESS_FAMILY && family_failures == 0,
    );

    // Infinite rayless presentations all have twins of finite size below
    // the first infinite multiplicity, so their motion is finite.
    let mults = [
        Cardinal::one(),
        Cardinal::finite(2),
        Cardinal::aleph0(),
        Cardinal::Beth(1),
    ];
    let mut infinite_rayless = 0;
    let mut infinite_motion = 0;
    for _ in 0..2000 {
        let p = common::random_presentation(&mut rng, 6, &mults);
        let r = count_presented(&p).unwrap();
        if r.classification == TreeKind::RaylessInfinite {
            infinite_rayless += 1;
            infinite_motion += usize::from(!matches!(
                r.motion,
                PresentedMotion::Moved(Cardinal::Finite(_))
            ));
        }
    }
    expect("infinite rayless motion is finite", infinite_motion == 0);
    outcome(
        failures.is_empty(),
        format!(
            "T_3, ray, beth_2, star, {} asymmetric rayless presentations; \
             {infinite_rayless} random infinite rayless presentations all of finite motion{}",
            family.len(),
            if failures.is_empty() {
                String::new()
            } else {
                format!("; failed: {}", failures.join(", "))
            }
        ),
    )
}

fn consistency() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(6);
    let mults: Vec<Cardinal> = (1..=4).map(Cardinal::finite).collect();
    let (mut checked, mut count_bad, mut motion_bad) = (0, 0, 0);
    let mut largest = 0;
    while checked < CONSISTENCY_CASES {
        let p = common::random_presentation(&mut rng, 7, &mults);
        let Some(size) = common::unfolded_size(&p, CONSISTENCY_MAX_UNFOLD) else {
            continue;
        };
        checked += 1;
        largest = largest.max(size);
        let t = unfold(&p, p.len(), CONSISTENCY_MAX_UNFOLD).unwrap().tree;
        assert_eq!(t.len(), size);
        let report = count_presented(&p).unwrap();
        if report.count != Cardinal::Finite(count_rooted(&t)) {
            count_bad += 1;
        }
        let agree = match (motion_presented(&p), motion_rooted(&t)) {
            (PresentedMotion::Asymmetric, MotionResult::Asymmetric) => true,
            (PresentedMotion::Moved(c), MotionResult::Moved(m)) => c == Cardinal::finite(m as u64),
            _ => false,
        };
        motion_bad += usize::from(!agree);
    }
    let elapsed = start.elapsed();
    outcome(
        count_bad == 0 && motion_bad == 0 && elapsed < CONSISTENCY_BUDGET,
        format!(
            "{checked} presentations (largest unfolding {largest}), {count_bad} count and \
             {motion_bad} motion mismatches, {:.1}s",
            elapsed.as_secs_f64()
        ),
    )
}

/// A random rooted tree, extended so that every leaf has even depth of at
/// least 4: the finite stand-in for every vertex lying on a double ray.
/// Leaves are extended by paths of one to three vertices.
fn lift_tree(rng: &mut ChaCha8Rng) -> RootedTree {
    let n = rng.gen_range(2..=LIFT_MAX_N / 2);
    let base = if rng.gen_bool(0.5) {
        random_tree(n, rng.gen()).unwrap()
    } else {
        random_local(n, rng.gen_range(2..=5), rng)
    };
    let depth = base.depths();
    let mut labels = base.labels().to_vec();
    let mut parents: Vec<Option<VertexId>> = (0..base.len()).map(|v| base.parent(v)).collect();
    let mut extend = |v: VertexId, steps: usize| {
        let mut at = v;
        for i in 0..steps {
            parents.push(Some(at));
            labels.push(format!("x{v}_{i}"));
            at = parents.len() - 1;
        }
    };
    for v in 0..base.len() {
        if base.children(v).is_empty() {
            match depth[v] {
                1 => extend(v, 3),
                2 => extend(v, 2),
                d if d % 2 == 1 => extend(v, 1),
                _ => {}
            }
        }
    }
    RootedTree::from_parents(labels, parents).unwrap()
}

fn lift_shadow() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let caps = Caps::with_n(14);
    let (mut trees, mut tried, mut failures) = (0, 0, 0);
    let (mut degree_one, mut oracle_checked) = (0, 0);
    let mut degree_one_with_root = [0usize; 3];
    while trees < LIFT_TREES && tried < 100 * LIFT_TREES {
        tried += 1;
        let t = lift_tree(&mut rng);
        if t.len() > LIFT_MAX_N {
            continue;
        }
        let cm = contract_even_levels(&t);
        let count = count_rooted(&cm.contracted);
        if count == BigUint::ZERO {
            continue;
        }
        trees += 1;
        let rank = rng.gen_biguint_below(&count);
        let s = unrank_rooted(&cm.contracted, &rank).unwrap();
        let w = cm.map[t.root()];
        let root_degree = t.children(t.root()).len();
        // The root is in S' for a root of degree at least 2 and outside S'
        // for a root of degree 1; a complement is again asymmetrizing.
        let want_root = root_degree >= 2;
        let members: Vec<VertexId> = if s.contains(w) == want_root {
            s.members().to_vec()
        } else {
            (0..cm.contracted.len())
                .filter(|&x| !s.contains(x))
                .collect()
        };
        let adj = adjacency(&t);
        let plain = lift_asym_set(&t, &cm, &members, LiftMode::Plain).unwrap();
        let augmented = lift_asym_set(&t, &cm, &members, LiftMode::Augmented).unwrap();
        let mut ok = verify_rooted(&t, plain.members()) && verify_rooted(&t, augmented.members());
        ok &= unexposed(&adj, plain.members()).is_empty();
        let covered = unexposed(&adj, augmented.members()).len();
        ok &= if root_degree == 1 {
            covered == 0
        } else {
            covered == 1
        };
        if t.len() <= caps.group_n {
            oracle_checked += 1;
            for set in [&plain, &augmented] {
                ok &= oracle_is_asymmetrizing(&adj, Some(t.root()), set.members(), &caps).unwrap();
            }
        }
        if root_degree == 1 {
            degree_one += 1;
            // Not gated: with the root in S' a root of degree 1 gives one or
            // two covered vertices.
            let with_root: Vec<VertexId> = (0..cm.contracted.len())
                .filter(|&x| !members.contains(&x))
                .collect();
            let lifted = lift_asym_set(&t, &cm, &with_root, LiftMode::Augmented).unwrap();
            degree_one_with_root[unexposed(&adj, lifted.members()).len().min(2)] += 1;
        }
        failures += usize::from(!ok);
    }
    outcome(
        failures == 0 && trees == LIFT_TREES,
        format!(
            "{trees} trees ({tried} generated, {degree_one} with root degree 1, {oracle_checked} \
             also by oracle), {failures} failures; root degree 1 with root in S' gives \
             0/1/2 covered vertices {}/{}/{} times",
            degree_one_with_root[0], degree_one_with_root[1], degree_one_with_root[2]
        ),
    )
}

fn binary_graph(depth: usize) -> RootedGraph {
    let n = (1usize << (depth + 1)) - 1;
    let labels = (0..n).map(|i| format!("b{i}")).collect();
    let edges: Vec<(usize, usize)> = (1..n).map(|i| ((i - 1) / 2, i)).collect();
    RootedGraph::from_edges(labels, &edges, 0).unwrap()
}

fn treelike_truncations() -> Outcome {
    let caps = Caps::with_n(SWEEP_CAP);
    let mut notes = Vec::new();
    let mut pass = true;

    let c4 = RootedGraph::parse("graph root w\nw a\na c\nc b\nb w\n").unwrap();
    let report = check_treelike(&c4, 2).unwrap();
    let failing: Vec<&str> = report.failures().map(|c| c4.label(c.vertex)).collect();
    let verdict = asymmetrize_treelike(&c4, &caps).unwrap();
    let swept = common::sweep_treelike(&c4, &caps);
    pass &= failing == ["a", "b"]
        && matches!(verdict, Asymmetrization::Failure(FailureReason::Component))
        && !swept;
    notes.push(format!(
        "4-cycle fails at {failing:?}, {verdict:?}, sweep={swept}"
    ));

    for depth in [2, 3] {
        let g = binary_graph(depth);
        let forest = extract_forest(&g).unwrap();
        let tree_edges: Vec<(usize, usize)> = g.edges();
        let all_edges = forest.edges.len() == tree_edges.len() && forest.components.len() == 1;
        let verdict = asymmetrize_treelike(&g, &caps).unwrap();
        let swept = common::sweep_treelike(&g, &caps);
        let agree = matches!(verdict, Asymmetrization::Success(_)) == swept;
        pass &= all_edges && agree && check_treelike(&g, depth).unwrap().passes();
        notes.push(format!(
            "binary depth {depth} (n={}): forest has all {} edges={all_edges}, {}, sweep={swept}",
            g.len(),
            tree_edges.len(),
            match verdict {
                Asymmetrization::Success(s) => format!("success {}", s.render(g.labels())),
                Asymmetrization::Failure(r) => format!("failure {r}"),
            }
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut disagreements = 0;
    let graphs = 300;
    let mut successes = 0;
    for _ in 0..graphs {
        let n = rng.gen_range(1..=9);
        let extra = rng.gen_range(0..=2);
        let g = common::random_connected_graph(&mut rng, n, extra);
        let verdict = matches!(
            asymmetrize_treelike(&g, &caps).unwrap(),
            Asymmetrization::Success(_)
        );
        successes += usize::from(verdict);
        disagreements += usize::from(verdict != common::sweep_treelike(&g, &caps));
    }
    pass &= disagreements == 0;
    notes.push(format!(
        "{graphs} random graphs: {successes} asymmetrized, {disagreements} disagreements with sweep"
    ));
    outcome(pass, notes.join("; "))
}

fn corpus_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/corpus")
}

/// Every subcommand applicable to a corpus file.
fn invocations(path: &Path) -> Vec<Vec<String>> {
    let file = path.to_string_lossy().to_string();
    let ext = path.extension().and_then(|e| e.to_str()).unwrap_or("");
    let text = std::fs::read_to_string(path).unwrap();
    let mut out: Vec<Vec<&str>> = Vec::new();
    let first_label;
    let lift_set;
    match ext {
        "tree" | "utree" => {
            out.extend([
                vec!["canon"],
                vec!["center"],
                vec!["count"],
                vec!["motion"],
                vec!["find"],
                vec!["enumerate", "--limit", "5"],
                vec!["oracle", "count"],
                vec!["oracle", "motion"],
                vec!["oracle", "aut", "--list"],
            ]);
            let t = asymtree::tree::parse_tree_input(&text).unwrap();
            first_label = match &t {
                asymtree::tree::TreeInput::Rooted(t) => t.label(0).to_string(),
                asymtree::tree::TreeInput::Unrooted(t) => t.label(0).to_string(),
            };
            out.push(vec!["verify", "--set", &first_label]);
            if let asymtree::tree::TreeInput::Rooted(t) = &t {
                out.extend([vec!["similarity"], vec!["contract"]]);
                let cm = contract_even_levels(t);
                lift_set = find_rooted(&cm.contracted).map(|s| {
                    s.render(cm.contracted.labels())
                        .trim_matches(['{', '}'])
                        .to_string()
                });
                if let Some(set) = &lift_set {
                    out.push(vec!["lift", "--mode", "plain", "--set", set]);
                    out.push(vec!["lift", "--mode", "augmented", "--set", set]);
                }
            }
        }
        "graph" => out.extend([
            vec!["treelike", "check"],
            vec!["treelike", "forest"],
            vec!["treelike", "asymmetrize"],
            vec!["oracle", "count"],
            vec!["oracle", "motion"],
            vec!["oracle", "aut"],
        ]),
        "pres" => out.extend([
            vec!["presented", "classify"],
            vec!["presented", "count"],
            vec!["presented", "motion"],
            vec!["presented", "rank"],
            vec!["presented", "report"],
            vec!["presented", "minimize"],
            vec!["presented", "unfold", "--depth", "2"],
            vec!["presented", "certificate", "--depth", "2"],
        ]),
        _ => {}
    }
    out.into_iter()
        .map(|args| {
            let mut v: Vec<String> = args.into_iter().map(String::from).collect();
            v.push(file.clone());
            v
        })
        .collect()
}

fn determinism() -> Outcome {
    let bin = env!("CARGO_BIN_EXE_asymtree");
    let mut entries: Vec<PathBuf> = std::fs::read_dir(corpus_dir())
        .unwrap()
        .map(|e| e.unwrap().path())
        .collect();
    entries.sort();
    let mut commands: Vec<Vec<String>> = entries.iter().flat_map(|p| invocations(p)).collect();
    for (n, seed) in [(1, 0), (40, 7), (300, 11), (700, 3)] {
        commands.push(vec![
            "random-tree".into(),
            "--n".into(),
            n.to_string(),
            "--seed".into(),
            seed.to_string(),
        ]);
    }
    let mut subcommands = BTreeSet::new();
    let mut differing = Vec::new();
    let mut runs = 0;
    for args in &commands {
        subcommands.insert(
            args.iter()
                .take_while(|a| !a.starts_with('-') && !a.contains('/'))
                .cloned()
                .collect::<Vec<_>>()
                .join(" "),
        );
        for format in ["plain", "json-lines"] {
            let run = || {
                Command::new(bin)
                    .arg("--format")
                    .arg(format)
                    .args(args)
                    .output()
                    .unwrap()
            };
            let (a, b) = (run(), run());
            runs += 2;
            if a.stdout != b.stdout || a.stderr != b.stderr || a.status.code() != b.status.code() {
                differing.push(args.join(" "));
            }
        }
    }
    outcome(
        differing.is_empty(),
        format!(
            "{} subcommands, {} invocations on {} corpus files, {runs} runs, {} differing",
            subcommands.len(),
            commands.len(),
            entries.len(),
            differing.len()
        ),
    )
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("formula-vs-oracle counting", counting),
        ("motion", motion_agreement),
        ("construction soundness", construction),
        ("cardinal laws", cardinal_laws),
        ("theorem replays", theorem_replays),
        ("finite/presented consistency", consistency),
        ("even-level lift", lift_shadow),
        ("tree-like truncations", treelike_truncations),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = check();
        failed += usize::from(!result.pass);
        println!(
            "criterion {}: {} {name} [{:.1}s] {}",
            i + 1,
            if result.pass { "PASS" } else { "FAIL" },
            start.elapsed().as_secs_f64(),
            result.detail
        );
    }
    println!(
        "acceptance: {}/{} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
