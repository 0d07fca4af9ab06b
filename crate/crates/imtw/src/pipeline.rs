//! End-to-end assembly: acquire a working decomposition, measure its induced
//! matching width, enumerate per-bag families, normalize to supernice form,
//! propagate the families by intersection, run the dynamic program, and audit
//! the answer against the ground-truth feasibility definition. Also the home
//! of the seeded selfcheck suites.

use crate::automata::catalogue::Product;
use crate::automata::{factor_by_name, Automaton, Preset};
use crate::bits::VertexSet;
use crate::dp::{self, DpStats};
use crate::graph::Graph;
use crate::inner::{build_inner, ell_bound, verify_inner};
use crate::oracle::{brute_force_optimal, feasibility_check, Feasibility, ProblemSpec};
use crate::signatures::{enumerate_bag_family, FamilyMode};
use crate::supernice::{make_supernice, Supernice};
use crate::treedec::{acquire_decomposition, mu_width, validate, AcquireSource, TreeDecomposition};
use crate::weights::{VertexWeights, Weight};
use crate::{Error, FastMap, Guards, Result};

/// Where the working decomposition comes from.
#[derive(Debug, Clone)]
pub enum TdInput {
    Provided(TreeDecomposition),
    Trivial,
    Search,
}

/// One solve request.
pub struct Instance {
    pub graph: Graph,
    pub weights: VertexWeights,
    pub td: TdInput,
    pub preset: Preset,
    /// Extra automaton factors (names as in `factor_by_name`).
    pub extra: Vec<String>,
    /// Treewidth budget; must be at least the preset's own bound.
    pub w: usize,
    /// Optional claimed bound on the decomposition's mu-width. The measured
    /// value is what the pipeline uses; exceeding the claim aborts instead.
    pub k: Option<usize>,
    pub mode: FamilyMode,
    pub guards: Guards,
}

impl Instance {
    pub fn new(graph: Graph, weights: VertexWeights, preset: Preset) -> Self {
        Instance {
            graph,
            weights,
            td: TdInput::Trivial,
            preset,
            extra: Vec::new(),
            w: preset.treewidth_bound(),
            k: None,
            mode: FamilyMode::Bounded,
            guards: Guards::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SolveStatus {
    Optimal,
    Infeasible,
    MuExceeded,
}

#[derive(Debug, Clone)]
pub struct SolveReport {
    pub status: SolveStatus,
    pub solution: Option<VertexSet>,
    pub weight: Option<Weight>,
    pub measured_mu: usize,
    pub ell: usize,
    pub supernice_nodes: usize,
    pub stats: DpStats,
    pub verification: Option<Feasibility>,
}

/// Builds the working automaton: the preset product plus any extra factors.
pub fn build_automaton(preset: Preset, extra: &[String], width: usize) -> Result<Box<dyn Automaton>> {
    if extra.is_empty() {
        return Ok(preset.build(width));
    }
    let mut factors = vec![preset.build(width)];
    for name in extra {
        let f = factor_by_name(name, width)
            .ok_or_else(|| Error::Invalid(format!("unknown automaton factor `{name}`")))?;
        factors.push(f);
    }
    Ok(Box::new(Product { factors }))
}

/// Direct (automaton-free) check of the extra factors, for verification.
fn extra_holds(g: &Graph, x: VertexSet, extra: &[String]) -> Result<bool> {
    use crate::oracle;
    for name in extra {
        let ok = if let Some(rest) = name.strip_prefix("degree-cap:") {
            let d: usize = rest.parse().map_err(|_| Error::Invalid(format!("bad factor `{name}`")))?;
            oracle::max_degree_le(g, x, d)
        } else if let Some(rest) = name.strip_prefix("degree-exact:") {
            let d: usize = rest.parse().map_err(|_| Error::Invalid(format!("bad factor `{name}`")))?;
            x.iter().all(|v| (g.neighbors(v) & x).len() == d)
        } else if let Some(rest) = name.strip_prefix("size-mod:") {
            let mut it = rest.split(':');
            let q: usize = it.next().unwrap_or("").parse().map_err(|_| Error::Invalid(format!("bad factor `{name}`")))?;
            let r: usize = it.next().unwrap_or("").parse().map_err(|_| Error::Invalid(format!("bad factor `{name}`")))?;
            x.len() % r == q
        } else {
            match name.as_str() {
                "edgeless" => oracle::is_edgeless(g, x),
                "forest" => oracle::is_forest(g, x),
                "connected" => oracle::is_connected(g, x),
                "true" => true,
                _ => return Err(Error::Invalid(format!("unknown automaton factor `{name}`"))),
            }
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Family for every supernice node: intersect, over the original nodes whose
/// bag contains the new bag, the projections of their families.
pub fn propagate_families(
    original: &TreeDecomposition,
    per_original: &[Vec<VertexSet>],
    sn: &Supernice,
) -> Vec<Vec<VertexSet>> {
    // cache by new bag: identical bags get identical families
    let mut cache: FastMap<VertexSet, Vec<VertexSet>> = FastMap::default();
    (0..sn.node_count())
        .map(|t| {
            let nb = sn.bag(t);
            if let Some(f) = cache.get(&nb) {
                return f.clone();
            }
            let mut acc: Option<std::collections::BTreeSet<VertexSet>> = None;
            for s in 0..original.node_count() {
                if !nb.is_subset_of(original.bag(s)) {
                    continue;
                }
                let projected: std::collections::BTreeSet<VertexSet> =
                    per_original[s].iter().map(|&x| x & nb).collect();
                acc = Some(match acc {
                    None => projected,
                    Some(prev) => prev.intersection(&projected).copied().collect(),
                });
            }
            let fam: Vec<VertexSet> = acc.unwrap_or_default().into_iter().collect();
            cache.insert(nb, fam.clone());
            fam
        })
        .collect()
}

pub fn solve_pipeline(inst: &Instance) -> Result<SolveReport> {
    let g = &inst.graph;
    let guards = &inst.guards;
    if inst.weights.len() != g.n() {
        return Err(Error::Invalid(format!(
            "{} weights for a graph on {} vertices",
            inst.weights.len(),
            g.n()
        )));
    }
    if inst.w < inst.preset.treewidth_bound() {
        return Err(Error::Invalid(format!(
            "w = {} below the `{}` preset's treewidth bound {}",
            inst.w,
            inst.preset.name(),
            inst.preset.treewidth_bound()
        )));
    }

    // working decomposition
    let td = match &inst.td {
        TdInput::Provided(td) => {
            let report = validate(g, td);
            if !report.is_valid() {
                return Err(Error::Invalid(format!("provided decomposition invalid: {report}")));
            }
            td.clone()
        }
        TdInput::Trivial => acquire_decomposition(g, AcquireSource::Trivial, guards)?,
        TdInput::Search => acquire_decomposition(g, AcquireSource::Search, guards)?,
    };

    // measured mu-width drives everything; a user-declared k only gates
    let measured_mu = mu_width(g, &td, guards)?;
    if let Some(claimed) = inst.k {
        if measured_mu > claimed {
            return Ok(SolveReport {
                status: SolveStatus::MuExceeded,
                solution: None,
                weight: None,
                measured_mu,
                ell: 0,
                supernice_nodes: 0,
                stats: DpStats::default(),
                verification: None,
            });
        }
    }
    let k = measured_mu;
    let w = inst.w;
    let ell = ell_bound(k, w);

    // families on the original bags, then the supernice propagation
    let sig_aut = build_automaton(inst.preset, &inst.extra, (2 * k * (w + 1)).max(w) + 1)?;
    let mut family_cache: FastMap<VertexSet, Vec<VertexSet>> = FastMap::default();
    let mut per_original: Vec<Vec<VertexSet>> = Vec::with_capacity(td.node_count());
    for t in 0..td.node_count() {
        let bag = td.bag(t);
        let fam = match family_cache.get(&bag) {
            Some(f) => f.clone(),
            None => {
                let f = enumerate_bag_family(
                    g,
                    &inst.weights,
                    bag,
                    k,
                    w,
                    sig_aut.as_ref(),
                    inst.mode,
                    guards,
                )?;
                family_cache.insert(bag, f.clone());
                f
            }
        };
        per_original.push(fam);
    }

    let sn = make_supernice(g, &td, ell)?;
    let families = propagate_families(&td, &per_original, &sn);

    let aut = build_automaton(inst.preset, &inst.extra, ell)?;
    let outcome = dp::solve(g, &inst.weights, &sn, &families, aut.as_ref(), ell)?;

    match outcome.best {
        None => Ok(SolveReport {
            status: SolveStatus::Infeasible,
            solution: None,
            weight: None,
            measured_mu,
            ell,
            supernice_nodes: sn.node_count(),
            stats: outcome.stats,
            verification: None,
        }),
        Some((x, wt)) => {
            let spec = ProblemSpec::with_w(inst.preset, w);
            let feas = feasibility_check(g, &inst.weights, &spec, x, guards)?;
            if !feas.ok() || !extra_holds(g, x, &inst.extra)? {
                return Err(Error::Contract(format!(
                    "solver output {x:?} fails the ground-truth audit: {feas:?}"
                )));
            }
            if feas.weight != wt {
                return Err(Error::Contract("solver weight disagrees with recomputation".into()));
            }
            Ok(SolveReport {
                status: SolveStatus::Optimal,
                solution: Some(x),
                weight: Some(wt),
                measured_mu,
                ell,
                supernice_nodes: sn.node_count(),
                stats: outcome.stats,
                verification: Some(feas),
            })
        }
    }
}

// ---------------------------------------------------------------------------
// selfcheck
// ---------------------------------------------------------------------------

#[derive(Debug, Clone)]
pub struct SuiteOutcome {
    pub name: &'static str,
    pub passed: usize,
    pub failed: usize,
    pub first_witness: Option<String>,
}

#[derive(Debug, Clone)]
pub struct SelfcheckReport {
    pub seed: u64,
    pub budget: usize,
    pub suites: Vec<SuiteOutcome>,
}

impl SelfcheckReport {
    pub fn all_passed(&self) -> bool {
        self.suites.iter().all(|s| s.failed == 0)
    }
}

impl std::fmt::Display for SelfcheckReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        writeln!(f, "selfcheck seed={} budget={}", self.seed, self.budget)?;
        for s in &self.suites {
            writeln!(
                f,
                "{:<24} pass {:>4}  fail {:>4}  {}",
                s.name,
                s.passed,
                s.failed,
                if s.failed == 0 { "ok" } else { "FAILED" }
            )?;
            if let Some(w) = &s.first_witness {
                writeln!(f, "  first failing instance:")?;
                for line in w.lines() {
                    writeln!(f, "    {line}")?;
                }
            }
        }
        Ok(())
    }
}

fn describe_instance(g: &Graph, weights: &VertexWeights, preset: Preset, detail: &str) -> String {
    format!(
        "problem {}\n{}{}{}",
        preset.name(),
        crate::io::emit_gr(g),
        crate::io::emit_weights(weights),
        detail
    )
}

/// Runs the randomized cross-validation suites with a fixed seed. The
/// instance stream is a pure function of the seed.
pub fn selfcheck(seed: u64, budget: usize) -> SelfcheckReport {
    use crate::rng::{random_binary_decomposition, random_graph, random_weights, Rng};
    let guards = Guards::default();
    let mut suites = Vec::new();

    // oracle equivalence of the full pipeline
    {
        let mut rng = Rng::new(seed);
        let mut outcome =
            SuiteOutcome { name: "oracle-equivalence", passed: 0, failed: 0, first_witness: None };
        let presets = Preset::all();
        for i in 0..budget {
            let n = rng.range(2, 8);
            let p = *rng.pick(&[20, 40, 60]);
            let g = random_graph(&mut rng, n, p);
            let weights = random_weights(&mut rng, n);
            let preset = presets[i % presets.len()];
            let spec = ProblemSpec::new(preset);
            let expect = brute_force_optimal(&g, &weights, &spec, &guards).map(|o| o.map(|(_, w)| w));
            let mut inst = Instance::new(g.clone(), weights.clone(), preset);
            inst.mode = FamilyMode::All;
            let got = solve_pipeline(&inst).map(|r| r.weight);
            let agree = matches!((&expect, &got), (Ok(a), Ok(b)) if a == b);
            if agree {
                outcome.passed += 1;
            } else {
                outcome.failed += 1;
                if outcome.first_witness.is_none() {
                    outcome.first_witness = Some(describe_instance(
                        &g,
                        &weights,
                        preset,
                        &format!("oracle: {expect:?}\nsolver: {got:?}\n"),
                    ));
                }
            }
        }
        suites.push(outcome);
    }

    // automaton versus direct checker on random binary decompositions
    {
        let mut rng = Rng::new(seed ^ 0xa5a5_a5a5);
        let mut outcome =
            SuiteOutcome { name: "automaton-agreement", passed: 0, failed: 0, first_witness: None };
        for i in 0..budget {
            let n = rng.range(1, 8);
            let p = *rng.pick(&[20, 40, 60]);
            let g = random_graph(&mut rng, n, p);
            let (bags, children, root) = random_binary_decomposition(&mut rng, &g);
            let preset = Preset::all()[i % 5];
            let aut = preset.build(n.max(1));
            let spec = ProblemSpec::new(preset);
            match crate::automata::accepts(aut.as_ref(), &g, &bags, &children, root) {
                Ok(acc) if acc == spec.holds(&g, g.vertex_set()) => outcome.passed += 1,
                other => {
                    outcome.failed += 1;
                    if outcome.first_witness.is_none() {
                        outcome.first_witness = Some(describe_instance(
                            &g,
                            &VertexWeights::unit(n),
                            preset,
                            &format!("automaton said {other:?}\n"),
                        ));
                    }
                }
            }
        }
        suites.push(outcome);
    }

    // signature completeness at a random bag
    {
        let mut rng = Rng::new(seed ^ 0x5a5a_5a5a);
        let mut outcome =
            SuiteOutcome { name: "signature-completeness", passed: 0, failed: 0, first_witness: None };
        let mut i = 0;
        while outcome.passed + outcome.failed < budget {
            i += 1;
            let n = rng.range(2, 7);
            let p = *rng.pick(&[20, 40, 60]);
            let g = random_graph(&mut rng, n, p);
            let weights = random_weights(&mut rng, n);
            let preset = [Preset::Mwis, Preset::Forest][i % 2];
            let spec = ProblemSpec::new(preset);
            let Ok(Some((x, _))) = brute_force_optimal(&g, &weights, &spec, &guards) else {
                continue;
            };
            let b = crate::rng::random_subset(&mut rng, g.vertex_set());
            let k = crate::graph::mu_of_set(&g, b, &guards).unwrap_or(0);
            let aut = preset.build(2 * k * (spec.w + 1) + 2);
            let ok = [FamilyMode::Bounded, FamilyMode::All].iter().all(|&mode| {
                enumerate_bag_family(&g, &weights, b, k, spec.w, aut.as_ref(), mode, &guards)
                    .map(|fam| fam.contains(&(x & b)))
                    .unwrap_or(false)
            });
            if ok {
                outcome.passed += 1;
            } else {
                outcome.failed += 1;
                if outcome.first_witness.is_none() {
                    outcome.first_witness = Some(describe_instance(
                        &g,
                        &weights,
                        preset,
                        &format!("bag {b:?} misses x∩b for x = {x:?}\n"),
                    ));
                }
            }
        }
        suites.push(outcome);
    }

    // inner decomposition construction and verification
    {
        let mut rng = Rng::new(seed ^ 0x0f0f_f0f0);
        let mut outcome =
            SuiteOutcome { name: "inner-decomposition", passed: 0, failed: 0, first_witness: None };
        while outcome.passed + outcome.failed < budget {
            let n = rng.range(2, 8);
            let p = *rng.pick(&[20, 40, 60]);
            let g = random_graph(&mut rng, n, p);
            let w = rng.range(0, 2);
            // rejection-sample a bounded-treewidth subset
            let x = crate::rng::random_subset(&mut rng, g.vertex_set());
            let Ok(h) = g.induced(x) else { continue };
            let Ok(tw) = crate::graph::treewidth_exact(&h, &guards) else { continue };
            if tw > w as isize {
                continue;
            }
            let td = acquire_decomposition(&g, AcquireSource::Trivial, &guards).unwrap();
            let k = mu_width(&g, &td, &guards).unwrap_or(0);
            let ell = ell_bound(k, w);
            let Ok(sn) = make_supernice(&g, &td, ell) else {
                outcome.failed += 1;
                continue;
            };
            match build_inner(&g, &sn, x, w, &guards) {
                Ok((part, inner)) => {
                    if verify_inner(&g, &sn, &part, &inner, x).is_empty() {
                        outcome.passed += 1;
                    } else {
                        outcome.failed += 1;
                    }
                }
                Err(e) => {
                    outcome.failed += 1;
                    if outcome.first_witness.is_none() {
                        outcome.first_witness = Some(describe_instance(
                            &g,
                            &VertexWeights::unit(n),
                            Preset::Mwis,
                            &format!("x = {x:?}, w = {w}: {e}\n"),
                        ));
                    }
                }
            }
        }
        suites.push(outcome);
    }

    SelfcheckReport { seed, budget, suites }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rng::{random_graph, random_weights, Rng};
    use crate::weights::w_int;

    fn unit_instance(g: Graph, preset: Preset) -> Instance {
        let n = g.n();
        Instance::new(g, VertexWeights::unit(n), preset)
    }

    #[test]
    fn pipeline_examples() {
        // C5 unit weights, independent set: weight 2
        let rep = solve_pipeline(&unit_instance(Graph::cycle(5), Preset::Mwis)).unwrap();
        assert_eq!(rep.status, SolveStatus::Optimal);
        assert_eq!(rep.weight, Some(w_int(2)));

        // C6 under the cycle preset: the whole graph
        let rep = solve_pipeline(&unit_instance(Graph::cycle(6), Preset::Cycle)).unwrap();
        assert_eq!(rep.status, SolveStatus::Optimal);
        assert_eq!(rep.weight, Some(w_int(6)));
        assert_eq!(rep.solution, Some(Graph::cycle(6).vertex_set()));

        // K4 under the forest preset: any two vertices
        let rep = solve_pipeline(&unit_instance(Graph::complete(4), Preset::Forest)).unwrap();
        assert_eq!(rep.weight, Some(w_int(2)));

        // claimed k = 0 with an edge in some bag: the mu-exceeded branch
        let mut inst = unit_instance(Graph::complete(2), Preset::Mwis);
        inst.k = Some(0);
        let rep = solve_pipeline(&inst).unwrap();
        assert_eq!(rep.status, SolveStatus::MuExceeded);

        // cycle preset on a tree: infeasible
        let rep = solve_pipeline(&unit_instance(Graph::path(4), Preset::Cycle)).unwrap();
        assert_eq!(rep.status, SolveStatus::Infeasible);

        // w below the preset bound is a usage error
        let mut inst = unit_instance(Graph::path(3), Preset::Cycle);
        inst.w = 1;
        assert!(solve_pipeline(&inst).is_err());
    }

    #[test]
    fn pipeline_with_negative_weights() {
        let g = Graph::complete(2);
        let inst = Instance::new(g, VertexWeights::from_ints(&[-1, -2]), Preset::Mwis);
        let rep = solve_pipeline(&inst).unwrap();
        assert_eq!(rep.status, SolveStatus::Optimal);
        assert_eq!(rep.solution, Some(VertexSet::EMPTY));
        assert_eq!(rep.weight, Some(w_int(0)));
    }

    #[test]
    fn pipeline_with_extra_factor() {
        // mwis restricted to solutions of even size on C6: best is 2 not 3?
        // no: independent sets of size 3 exist in C6 ({0,2,4}), odd; with
        // size-mod 0:2 the best even size is 2
        let g = Graph::cycle(6);
        let mut inst = unit_instance(g, Preset::Mwis);
        inst.extra.push("size-mod:0:2".into());
        inst.mode = FamilyMode::All;
        let rep = solve_pipeline(&inst).unwrap();
        assert_eq!(rep.status, SolveStatus::Optimal);
        assert_eq!(rep.weight, Some(w_int(2)));
    }

    #[test]
    fn pipeline_matches_oracle_on_random_instances() {
        let guards = Guards::default();
        let mut rng = Rng::new(4242);
        let presets = Preset::all();
        for i in 0..40 {
            let n = rng.range(2, 7);
            let p = *rng.pick(&[20, 40, 60]);
            let g = random_graph(&mut rng, n, p);
            let weights = random_weights(&mut rng, n);
            let preset = presets[i % presets.len()];
            let spec = ProblemSpec::new(preset);
            let expect = brute_force_optimal(&g, &weights, &spec, &guards).unwrap();
            let mut inst = Instance::new(g.clone(), weights.clone(), preset);
            inst.mode = if i % 2 == 0 { FamilyMode::All } else { FamilyMode::Bounded };
            let rep = solve_pipeline(&inst).unwrap();
            match (expect, rep.weight) {
                (None, None) => assert_eq!(rep.status, SolveStatus::Infeasible),
                (Some((_, ew)), Some(gw)) => {
                    assert_eq!(ew, gw, "weight mismatch on {g:?} preset {}", preset.name());
                }
                (e, g2) => panic!("feasibility mismatch: oracle {e:?} solver {g2:?}"),
            }
        }
    }

    #[test]
    fn custom_vertex_order_shared_by_oracle_and_solver() {
        use crate::weights::{w_int, VertexOrder};
        let guards = Guards::default();
        let mut rng = Rng::new(505);
        for _ in 0..10 {
            let n = rng.range(3, 7);
            let g = random_graph(&mut rng, n, 40);
            let mut perm: Vec<usize> = (0..n).collect();
            rng.shuffle(&mut perm);
            let order = VertexOrder::from_permutation(&perm).unwrap();
            let weights =
                VertexWeights::new(vec![w_int(1); n], order).unwrap();
            let spec = ProblemSpec::new(Preset::Mwis);
            let oracle = brute_force_optimal(&g, &weights, &spec, &guards).unwrap();
            let inst = Instance::new(g, weights, Preset::Mwis);
            let rep = solve_pipeline(&inst).unwrap();
            assert_eq!(oracle.map(|(_, w)| w), rep.weight);
        }
    }

    #[test]
    fn w_override_above_preset_bound() {
        // a larger treewidth budget leaves preset answers unchanged, since
        // each preset property already implies its own bound
        let g = Graph::cycle(5);
        let mut inst = unit_instance(g, Preset::Mwis);
        inst.w = 2;
        let rep = solve_pipeline(&inst).unwrap();
        assert_eq!(rep.weight, Some(w_int(2)));
    }

    #[test]
    fn oracle_guard_fails_loudly() {
        let mut guards = Guards::default();
        guards.max_oracle_n = 4;
        let g = Graph::cycle(6);
        let w = VertexWeights::unit(6);
        let spec = ProblemSpec::new(Preset::Mwis);
        assert!(matches!(
            brute_force_optimal(&g, &w, &spec, &guards),
            Err(crate::Error::GuardExceeded { .. })
        ));
    }

    #[test]
    fn pipeline_is_deterministic() {
        let mut rng = Rng::new(606);
        let n = 7;
        let g = random_graph(&mut rng, n, 40);
        let weights = random_weights(&mut rng, n);
        let inst = Instance::new(g, weights, Preset::Forest);
        let a = solve_pipeline(&inst).unwrap();
        let b = solve_pipeline(&inst).unwrap();
        assert_eq!(a.solution, b.solution);
        assert_eq!(a.weight, b.weight);
        assert_eq!(a.stats.total_entries, b.stats.total_entries);
    }

    #[test]
    fn selfcheck_small_budget_passes_and_reproduces() {
        let a = selfcheck(7, 6);
        assert!(a.all_passed(), "{a}");
        let b = selfcheck(7, 6);
        for (x, y) in a.suites.iter().zip(b.suites.iter()) {
            assert_eq!(x.passed, y.passed);
            assert_eq!(x.failed, y.failed);
        }
    }
}
