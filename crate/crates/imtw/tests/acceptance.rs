//! The acceptance suite: one test per criterion, each printing a PASS line
//! with its effective budget (visible under `--nocapture`). Every tolerance
//! is pinned here; all comparisons on weights are exact rational equality.

use imtw::automata::catalogue::{DegreeCap, DegreeExact, SizeMod};
use imtw::automata::{accepts, neighborhood_state, Automaton, Preset, State};
use imtw::graph::{
    is_induced_matching, maximal_independent_sets, mu_of_set, refine_to_induced_matching,
    treewidth_exact, Graph, Matching,
};
use imtw::inner::{build_inner, ell_bound, verify_inner};
use imtw::io::{emit_gr, emit_td, emit_weights, parse_gr, parse_td, parse_weights};
use imtw::oracle::{brute_force_optimal, feasibility_check, ProblemSpec};
use imtw::pipeline::{solve_pipeline, Instance, SolveStatus, TdInput};
use imtw::rng::{
    random_binary_decomposition, random_graph, random_subset, random_tree_decomposition,
    random_weights, Rng,
};
use imtw::signatures::{
    classify_dangling, construct_signature_for, dangling_vertices, enumerate_bag_family,
    signature_is_valid, FamilyMode,
};
use imtw::supernice::make_supernice;
use imtw::treedec::{mu_width, validate, width, TreeDecomposition};
use imtw::weights::VertexWeights;
use imtw::{Guards, VertexSet};

/// Criterion 1: the pipeline's weight equals the exhaustive oracle's weight
/// exactly on >= 200 instances per preset, and every returned set passes the
/// ground-truth feasibility audit.
#[test]
fn criterion_1_oracle_equivalence() {
    let guards = Guards::default();
    const PER_PRESET: usize = 200;
    let mut total = 0usize;
    for preset in Preset::all() {
        let mut rng = Rng::new(0x1000 + preset.treewidth_bound() as u64 * 31 + preset.name().len() as u64);
        for i in 0..PER_PRESET {
            let n = rng.range(2, 10);
            let p = *rng.pick(&[20, 40, 60]);
            let g = random_graph(&mut rng, n, p);
            let weights = random_weights(&mut rng, n);
            let spec = ProblemSpec::new(preset);
            let oracle = brute_force_optimal(&g, &weights, &spec, &guards).expect("oracle");
            let mut inst = Instance::new(g.clone(), weights.clone(), preset);
            inst.mode = if i % 2 == 0 { FamilyMode::Bounded } else { FamilyMode::All };
            let rep = solve_pipeline(&inst).expect("pipeline");
            match (&oracle, rep.status) {
                (None, SolveStatus::Infeasible) => {}
                (Some((_, ow)), SolveStatus::Optimal) => {
                    assert_eq!(
                        *ow,
                        rep.weight.unwrap(),
                        "weight mismatch on preset {} instance {i}:\n{}",
                        preset.name(),
                        emit_gr(&g)
                    );
                    let x = rep.solution.unwrap();
                    let feas = feasibility_check(&g, &weights, &spec, x, &guards).expect("audit");
                    assert!(feas.ok(), "infeasible solver output {x:?} on {}", emit_gr(&g));
                }
                other => panic!(
                    "feasibility disagreement on preset {} instance {i}: {other:?}\n{}",
                    preset.name(),
                    emit_gr(&g)
                ),
            }
            total += 1;
        }
    }
    println!("criterion 1 PASS: oracle equivalence on {total} instances ({PER_PRESET} per preset), exact weights");
}

/// Criterion 2: for >= 100 instances, the oracle optimum's intersection with
/// every bag of the working decomposition is in the enumerated family, in
/// both modes. Zero misses permitted.
#[test]
fn criterion_2_signature_completeness() {
    let guards = Guards::default();
    const INSTANCES: usize = 100;
    let mut rng = Rng::new(0x2000);
    let mut done = 0usize;
    let mut bags_checked = 0usize;
    let presets = [Preset::Mwis, Preset::Forest, Preset::Tree];
    while done < INSTANCES {
        let n = rng.range(2, 9);
        let p = *rng.pick(&[20, 40, 60]);
        let g = random_graph(&mut rng, n, p);
        let weights = random_weights(&mut rng, n);
        let preset = presets[done % presets.len()];
        let spec = ProblemSpec::new(preset);
        let Some((x, _)) = brute_force_optimal(&g, &weights, &spec, &guards).expect("oracle") else {
            continue;
        };
        done += 1;
        let td = random_tree_decomposition(&mut rng, &g);
        let k = mu_width(&g, &td, &guards).expect("mu");
        let aut = preset.build(2 * k * (spec.w + 1) + 2);
        for t in 0..td.node_count() {
            let b = td.bag(t);
            for mode in [FamilyMode::Bounded, FamilyMode::All] {
                let fam =
                    enumerate_bag_family(&g, &weights, b, k, spec.w, aut.as_ref(), mode, &guards)
                        .expect("family");
                assert!(
                    fam.contains(&(x & b)),
                    "{mode:?} family misses the optimum at bag {b:?} (x = {x:?}, preset {})\n{}",
                    preset.name(),
                    emit_gr(&g)
                );
                bags_checked += 1;
            }
        }
    }
    println!("criterion 2 PASS: signature completeness on {done} instances, {bags_checked} bag/mode checks, zero misses");
}

/// Criterion 3: >= 100 random (graph, host, solution) triples: the inner
/// decomposition builds, verifies, stays within width k(w+1)(5w+6), and the
/// three per-bag component bounds hold bag-wise. Zero violations.
#[test]
fn criterion_3_inner_decomposition() {
    let guards = Guards::default();
    const TRIPLES: usize = 100;
    let mut rng = Rng::new(0x3000);
    let mut done = 0usize;
    while done < TRIPLES {
        let n = rng.range(2, 9);
        let p = *rng.pick(&[20, 40, 60]);
        let g = random_graph(&mut rng, n, p);
        let w = rng.range(0, 2);
        let x = random_subset(&mut rng, g.vertex_set());
        let h = g.induced(x).expect("induced");
        if treewidth_exact(&h, &guards).expect("tw") > w as isize {
            continue;
        }
        let td = random_tree_decomposition(&mut rng, &g);
        let k = mu_width(&g, &td, &guards).expect("mu");
        let ell = ell_bound(k, w);
        let sn = make_supernice(&g, &td, ell).expect("normalize");
        let (part, inner) = build_inner(&g, &sn, x, w, &guards).expect("build_inner");
        let issues = verify_inner(&g, &sn, &part, &inner, x);
        assert!(issues.is_empty(), "verify_inner: {issues:?} for x={x:?} on {}", emit_gr(&g));
        assert_eq!(ell, k * (w + 1) * (5 * w + 6));
        for t in 0..sn.node_count() {
            assert!(inner.ibag[t].len() <= ell + 1, "inner width exceeded at node {t}");
            let bag = sn.bag(t);
            assert!((bag & part.x_high).len() <= k * (w + 1) * (w + 1), "high-part bound");
            assert!(
                (bag & part.x_low_linked).len() <= k * (w + 1) * (2 * w + 3),
                "linked-part bound"
            );
            let pulled = (inner.ibag[t] & part.x_high) - bag;
            assert!(pulled.len() <= 2 * k * (w + 1) * (w + 1), "pulled-part bound");
        }
        done += 1;
    }
    println!("criterion 3 PASS: inner decomposition contract on {TRIPLES} triples, zero violations");
}

/// Criterion 4: >= 100 random valid decompositions, each normalized at
/// ell in {0, 1, 2, 5}: output validates, classifies as ell-supernice,
/// keeps every bag under an input bag, preserves every input bag, and has
/// at most 100 (|T| + n + ell)^3 nodes.
#[test]
fn criterion_4_supernice_normalization() {
    const DECOMPOSITIONS: usize = 100;
    const C: usize = 100; // the documented node-count constant
    let mut rng = Rng::new(0x4000);
    let mut normalizations = 0usize;
    for _ in 0..DECOMPOSITIONS {
        let n = rng.range(1, 9);
        let p = *rng.pick(&[20, 40, 60]);
        let g = random_graph(&mut rng, n, p);
        let td = random_tree_decomposition(&mut rng, &g);
        assert!(validate(&g, &td).is_valid());
        for ell in [0usize, 1, 2, 5] {
            let sn = make_supernice(&g, &td, ell).expect("normalize");
            // verify() re-checks validity, the classification, top nodes,
            // and the ell-long neutral runs
            let issues = sn.verify(&g);
            assert!(issues.is_empty(), "{issues:?}");
            for t in 0..sn.node_count() {
                let nb = sn.bag(t);
                assert!(
                    (0..td.node_count()).any(|s| nb.is_subset_of(td.bag(s))),
                    "bag-subset contract broken"
                );
            }
            for s in 0..td.node_count() {
                assert!(
                    (0..sn.node_count()).any(|t| sn.bag(t) == td.bag(s)),
                    "bag-preservation contract broken"
                );
            }
            let a = td.node_count() + g.vertex_count() + ell;
            assert!(
                sn.node_count() <= C * a * a * a,
                "node count {} exceeds {C}*({a})^3",
                sn.node_count()
            );
            normalizations += 1;
        }
    }
    println!("criterion 4 PASS: supernice normalization on {DECOMPOSITIONS} decompositions x 4 ell values = {normalizations} runs");
}

/// Criterion 5: >= 1000 (graph, valid binary decomposition) pairs per shipped
/// automaton agree with the direct checker, and acceptance is invariant
/// across three decompositions of the same graph. Zero disagreements.
#[test]
fn criterion_5_automaton_agreement() {
    const GRAPHS: usize = 334; // x3 decompositions each: >= 1000 pairs
    let mut pairs_total = 0usize;

    // direct checkers for the standalone factors
    fn degree_le(g: &Graph, d: usize) -> bool {
        imtw::oracle::max_degree_le(g, g.vertex_set(), d)
    }
    fn degree_eq(g: &Graph, d: usize) -> bool {
        g.vertices().all(|v| g.degree(v) == d)
    }

    let automata: Vec<(String, Box<dyn Fn(usize) -> Box<dyn Automaton>>, Box<dyn Fn(&Graph) -> bool>)> = vec![
        (
            "edgeless/mwis".into(),
            Box::new(|w| Preset::Mwis.build(w)),
            Box::new(|g: &Graph| ProblemSpec::new(Preset::Mwis).holds(g, g.vertex_set())),
        ),
        (
            "forest".into(),
            Box::new(|w| Preset::Forest.build(w)),
            Box::new(|g: &Graph| ProblemSpec::new(Preset::Forest).holds(g, g.vertex_set())),
        ),
        (
            "tree".into(),
            Box::new(|w| Preset::Tree.build(w)),
            Box::new(|g: &Graph| ProblemSpec::new(Preset::Tree).holds(g, g.vertex_set())),
        ),
        (
            "path".into(),
            Box::new(|w| Preset::Path.build(w)),
            Box::new(|g: &Graph| ProblemSpec::new(Preset::Path).holds(g, g.vertex_set())),
        ),
        (
            "cycle".into(),
            Box::new(|w| Preset::Cycle.build(w)),
            Box::new(|g: &Graph| ProblemSpec::new(Preset::Cycle).holds(g, g.vertex_set())),
        ),
        (
            "degree-cap:2".into(),
            Box::new(|w| Box::new(DegreeCap { width: w, d: 2 })),
            Box::new(|g: &Graph| degree_le(g, 2)),
        ),
        (
            "degree-exact:2".into(),
            Box::new(|w| Box::new(DegreeExact { width: w, d: 2 })),
            Box::new(|g: &Graph| degree_eq(g, 2)),
        ),
        (
            "size-mod:1:3".into(),
            Box::new(|w| Box::new(SizeMod { width: w, q: 1, r: 3 })),
            Box::new(|g: &Graph| g.vertex_count() % 3 == 1),
        ),
    ];

    for (name, build, check) in &automata {
        let mut rng = Rng::new(0x5000 ^ name.len() as u64);
        for _ in 0..GRAPHS {
            let n = rng.range(1, 9);
            let p = *rng.pick(&[20, 40, 60]);
            let g = random_graph(&mut rng, n, p);
            let want = check(&g);
            let aut = build(n.max(1));
            let mut verdicts = Vec::new();
            for _ in 0..3 {
                let (bags, children, root) = random_binary_decomposition(&mut rng, &g);
                verdicts
                    .push(accepts(aut.as_ref(), &g, &bags, &children, root).expect("run"));
                pairs_total += 1;
            }
            assert!(
                verdicts.iter().all(|&v| v == want),
                "{name} disagrees on {}\nverdicts {verdicts:?}, direct {want}",
                emit_gr(&g)
            );
        }
    }
    println!(
        "criterion 5 PASS: automaton/checker agreement on {pairs_total} (graph, decomposition) pairs across {} automata, zero disagreements",
        automata.len()
    );
}

/// Reachable-state count of the iterated group chain: the state of the
/// automaton on a ladder of m same-type side branches depends only on m and
/// eventually cycles; the number of distinct states bounds both thresholds.
fn chain_state_count(
    g: &Graph,
    aut: &dyn Automaton,
    q_type: &State,
    nx: VertexSet,
    max_len: usize,
) -> usize {
    let mut seen: Vec<State> = Vec::new();
    let mut cur = aut.leaf(g, nx);
    for _ in 0..=max_len {
        if seen.contains(&cur) {
            break;
        }
        seen.push(cur.clone());
        cur = aut.join(g, q_type, &cur, nx, nx, nx);
    }
    seen.len()
}

/// Criterion 6: on >= 100 instances, every dangling group of the optimum's
/// witness signature meets the suffix structure and the threshold
/// disjunction with the measured reachable-state count.
#[test]
fn criterion_6_suffix_structure() {
    let guards = Guards::default();
    const INSTANCES: usize = 100;
    let mut rng = Rng::new(0x6000);
    let mut done = 0usize;
    let mut groups_checked = 0usize;
    let presets = [Preset::Mwis, Preset::Forest, Preset::Tree];
    while done < INSTANCES {
        let n = rng.range(2, 9);
        let p = *rng.pick(&[20, 40, 60]);
        let g = random_graph(&mut rng, n, p);
        let weights = random_weights(&mut rng, n);
        let preset = presets[done % presets.len()];
        let spec = ProblemSpec::new(preset);
        let Some((x, _)) = brute_force_optimal(&g, &weights, &spec, &guards).expect("oracle") else {
            continue;
        };
        done += 1;
        let b = random_subset(&mut rng, g.vertex_set());
        let k = mu_of_set(&g, b, &guards).expect("mu");
        let w = spec.w;
        let sig = construct_signature_for(&g, x, b, k, w, &guards).expect("signature");
        assert!(signature_is_valid(&g, &sig, x));
        let u = dangling_vertices(&g, &sig);
        let aut = preset.build(2 * k * (w + 1) + 2 + n);
        let groups = classify_dangling(&g, &weights, u, sig.c, Some(aut.as_ref())).expect("classify");
        for (ty, members) in groups {
            // suffix structure: the optimum takes a suffix of the group
            let chosen: Vec<bool> = members.iter().map(|&v| x.contains(v)).collect();
            if let Some(i) = chosen.iter().position(|&c| c) {
                assert!(
                    chosen[i..].iter().all(|&c| c),
                    "not a suffix: {chosen:?} in group {members:?} on {}",
                    emit_gr(&g)
                );
            }
            // threshold disjunction with the reachable-state count
            let nx = ty.trace & x;
            let r = chain_state_count(&g, aut.as_ref(), ty.state.as_ref().unwrap(), nx, members.len());
            let inside = members.iter().filter(|&&v| x.contains(v)).count();
            let outside = members.len() - inside;
            assert!(
                inside <= (w + 1).max(r) || outside <= r,
                "threshold broken: |U∩X| = {inside}, |U\\X| = {outside}, R = {r}, w = {w}"
            );
            groups_checked += 1;
        }
    }
    println!("criterion 6 PASS: suffix and threshold structure on {done} instances, {groups_checked} dangling groups");
}

/// Criterion 7: >= 500 random graphs: bounded-treewidth sparsity (edge count
/// and independent set size) and the induced-submatching refinement bound.
/// Zero violations.
#[test]
fn criterion_7_sparsity_lemmas() {
    let guards = Guards::default();
    const GRAPHS: usize = 500;
    let mut rng = Rng::new(0x7000);
    let mut matchings_checked = 0usize;
    for _ in 0..GRAPHS {
        let n = rng.range(1, 10);
        let p = *rng.pick(&[20, 40, 60]);
        let g = random_graph(&mut rng, n, p);
        let w = treewidth_exact(&g, &guards).expect("tw").max(0) as usize;
        assert!(
            g.edge_count() <= g.vertex_count() * w,
            "edge bound broken: {} edges, n = {}, w = {w}",
            g.edge_count(),
            g.vertex_count()
        );
        let alpha = maximal_independent_sets(&g, &guards)
            .expect("mis")
            .iter()
            .map(|s| s.len())
            .max()
            .unwrap_or(0);
        assert!(alpha >= g.vertex_count().div_ceil(w + 1), "independence bound broken");
        // random maximal matchings plus random submatchings of each: all
        // must refine within the bound
        for _ in 0..3 {
            let mut edges = g.edges();
            rng.shuffle(&mut edges);
            let mut used = VertexSet::EMPTY;
            let mut maximal: Matching = Vec::new();
            for (u, v) in edges {
                if !used.contains(u) && !used.contains(v) {
                    used.insert(u);
                    used.insert(v);
                    maximal.push((u, v));
                }
            }
            if maximal.is_empty() {
                continue;
            }
            let sub: Matching =
                maximal.iter().copied().filter(|_| rng.chance(2, 3)).collect();
            for m in [maximal, sub] {
                if m.is_empty() {
                    continue;
                }
                let refined = refine_to_induced_matching(&g, &m, &guards).expect("refine");
                assert!(is_induced_matching(&g, &refined).expect("check"));
                assert!(
                    refined.len() >= m.len().div_ceil(w + 1),
                    "refinement bound broken: |M| = {}, w = {w}, |M'| = {}",
                    m.len(),
                    refined.len()
                );
                matchings_checked += 1;
            }
        }
    }
    println!("criterion 7 PASS: sparsity and refinement bounds on {GRAPHS} graphs, {matchings_checked} matchings, zero violations");
}

/// Criterion 8: parse/emit round-trip identity on a corpus of hand-written
/// and generated graph, decomposition, and weight files, including negative
/// and fractional weights.
#[test]
fn criterion_8_format_round_trips() {
    let mut files = 0usize;

    // hand-written graphs
    let hand_gr = [
        "p tw 0 0\n",
        "p tw 1 0\n",
        "p tw 2 1\n1 2\n",
        "c leading comment\np tw 3 3\n1 2\n2 3\n1 3\n",
        "p tw 5 5\nc interleaved\n1 2\n2 3\n3 4\n4 5\n1 5\n",
        "p tw 6 7\n1 2\n1 3\n2 3\n3 4\n4 5\n4 6\n5 6\n",
        "p tw 4 0\n",
        "p tw 10 1\n1 10\n",
    ];
    for text in hand_gr {
        let g = parse_gr(text).expect("hand-written graph");
        assert_eq!(parse_gr(&emit_gr(&g)).expect("round"), g);
        files += 1;
    }

    // hand-written decompositions
    let hand_td = [
        "s td 1 0 0\nb 1\n",
        "s td 1 3 3\nb 1 1 2 3\n",
        "s td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n",
        "c comment\ns td 3 2 4\nb 1 1 2\nb 2 2 3\nb 3 3 4\n1 2\n2 3\n",
        "s td 4 1 2\nb 1\nb 2 1\nb 3 2\nb 4\n1 2\n2 3\n3 4\n",
    ];
    for text in hand_td {
        let td = parse_td(text).expect("hand-written td");
        let rt = parse_td(&emit_td(&td, 10)).expect("round");
        assert_eq!(rt.bags(), td.bags());
        assert_eq!(rt.tree_edges(), td.tree_edges());
        files += 1;
    }

    // hand-written weights with negative and fractional entries
    let hand_w = ["1 5\n", "1 -3\n2 7/2\n", "2 -7/2\n3 0\n", "1 1/3\n2 -2/3\n3 4\n"];
    for text in hand_w {
        let w = parse_weights(text, 4).expect("hand-written weights");
        let rt = parse_weights(&emit_weights(&w), 4).expect("round");
        for v in 0..4 {
            assert_eq!(w.get(v), rt.get(v));
        }
        files += 1;
    }

    // generated corpus
    let mut rng = Rng::new(0x8000);
    while files < 80 {
        let n = rng.range(1, 10);
        let p = *rng.pick(&[20, 40, 60]);
        let g = random_graph(&mut rng, n, p);
        assert_eq!(parse_gr(&emit_gr(&g)).expect("gen graph"), g);
        files += 1;

        let td = random_tree_decomposition(&mut rng, &g);
        let rt = parse_td(&emit_td(&td, n)).expect("gen td");
        assert_eq!(rt.bags(), td.bags());
        files += 1;

        let w = random_weights(&mut rng, n);
        let rt = parse_weights(&emit_weights(&w), n).expect("gen weights");
        for v in 0..n {
            assert_eq!(w.get(v), rt.get(v));
        }
        files += 1;
    }

    // malformed inputs are rejected with line numbers
    assert!(parse_gr("p tw 2 1\n1 1\n").is_err());
    assert!(parse_gr("p tw 2 2\n1 2\n2 1\n").is_err());
    assert!(parse_td("s td 2 2 3\nb 1 1\nb 1 2\n1 2\n").is_err());
    assert!(parse_weights("1 1/0\n", 2).is_err());

    println!("criterion 8 PASS: round-trip identity on {files} files (negative and fractional weights included)");
}

/// Exhaustive sweep: every labeled graph on four vertices, every preset,
/// three weight regimes (unit, all-zero, mixed signs). Unit and zero weights
/// force heavy tie-breaking through the lexicographic order.
#[test]
fn exhaustive_four_vertex_graphs() {
    let guards = Guards::default();
    let pairs = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
    let weight_sets: [Vec<i64>; 3] =
        [vec![1, 1, 1, 1], vec![0, 0, 0, 0], vec![-2, 3, 0, -1]];
    let mut runs = 0usize;
    for mask in 0u32..64 {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, e)| *e)
            .collect();
        let g = Graph::from_edges(4, &edges).expect("graph");
        for ws in &weight_sets {
            let weights = VertexWeights::from_ints(ws);
            for preset in Preset::all() {
                let spec = ProblemSpec::new(preset);
                let oracle = brute_force_optimal(&g, &weights, &spec, &guards).expect("oracle");
                let inst = Instance::new(g.clone(), weights.clone(), preset);
                let rep = solve_pipeline(&inst).expect("pipeline");
                assert_eq!(
                    oracle.as_ref().map(|(_, w)| *w),
                    rep.weight,
                    "mismatch: preset {}, weights {ws:?}, graph mask {mask:06b}",
                    preset.name()
                );
                runs += 1;
            }
        }
    }
    println!("extra PASS: exhaustive four-vertex sweep, {runs} solver runs");
}

/// Cross-checks the solver once more on a preset with an extra automaton
/// factor plugged in, to keep the product path exercised end to end.
#[test]
fn product_factors_end_to_end() {
    let guards = Guards::default();
    let mut rng = Rng::new(0x9000);
    let mut done = 0;
    while done < 15 {
        let n = rng.range(2, 7);
        let g = random_graph(&mut rng, n, 40);
        let weights = random_weights(&mut rng, n);
        // mwis restricted to even-size solutions, brute-forced directly
        let mut best: Option<imtw::Weight> = None;
        imtw::bits::for_each_subset(g.vertex_set(), &mut |x| {
            if x.len() % 2 == 0 && imtw::oracle::is_edgeless(&g, x) {
                let w = weights.total(x);
                if best.is_none() || w > best.unwrap() {
                    best = Some(w);
                }
            }
            true
        });
        let mut inst = Instance::new(g.clone(), weights, Preset::Mwis);
        inst.extra.push("size-mod:0:2".into());
        inst.mode = FamilyMode::All;
        let rep = solve_pipeline(&inst).expect("pipeline");
        assert_eq!(rep.weight, best, "even-size mwis mismatch on {}", emit_gr(&g));
        done += 1;
    }
    let _ = guards;
    println!("extra PASS: product factors end to end");
}

/// Provided multi-bag decompositions go through the same machinery as
/// acquired ones; their branching hosts exercise the join transitions the
/// trivial single-bag hosts never produce.
#[test]
fn provided_decomposition_path() {
    let guards = Guards::default();
    let mut rng = Rng::new(0xa000);
    for i in 0..40 {
        let n = rng.range(2, 8);
        let p = *rng.pick(&[20, 40, 60]);
        let g = random_graph(&mut rng, n, p);
        let weights = random_weights(&mut rng, n);
        let td: TreeDecomposition = random_tree_decomposition(&mut rng, &g);
        assert!(width(&td) >= -1);
        let preset = Preset::all()[i % 5];
        let spec = ProblemSpec::new(preset);
        let oracle = brute_force_optimal(&g, &weights, &spec, &guards).expect("oracle");
        let mut inst = Instance::new(g.clone(), weights, preset);
        inst.td = TdInput::Provided(td);
        let rep = solve_pipeline(&inst).expect("pipeline");
        assert_eq!(
            oracle.map(|(_, w)| w),
            rep.weight,
            "provided-decomposition mismatch for {} on {}",
            preset.name(),
            emit_gr(&g)
        );
    }
    println!("extra PASS: provided decompositions across presets");
}

/// The dangling-vertex neighborhood law behind the grouping: every dangling
/// vertex of a valid signature has all its solution neighbors inside C.
#[test]
fn dangling_neighborhoods_stay_in_c() {
    let guards = Guards::default();
    let mut rng = Rng::new(0xb000);
    let mut done = 0;
    while done < 40 {
        let n = rng.range(2, 9);
        let p = *rng.pick(&[20, 40, 60]);
        let g = random_graph(&mut rng, n, p);
        let weights = random_weights(&mut rng, n);
        let spec = ProblemSpec::new(Preset::Forest);
        let Some((x, _)) = brute_force_optimal(&g, &weights, &spec, &guards).expect("oracle") else {
            continue;
        };
        done += 1;
        let b = random_subset(&mut rng, g.vertex_set());
        let k = mu_of_set(&g, b, &guards).expect("mu");
        let sig = construct_signature_for(&g, x, b, k, spec.w, &guards).expect("signature");
        for v in dangling_vertices(&g, &sig).iter() {
            assert!((g.neighbors(v) & x).is_subset_of(sig.c));
            // the neighborhood state is defined at the signature width
            let aut = Preset::Forest.build(sig.c.len() + 1);
            let _ = neighborhood_state(aut.as_ref(), &g, v, g.neighbors(v) & sig.c).expect("state");
        }
    }
    println!("extra PASS: dangling neighborhood law");
}
