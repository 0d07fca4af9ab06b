//! Cross-validate the solver against the exhaustive oracle on a stream of
//! seeded random instances. Run with `cargo run --release --example
//! oracle_crosscheck [count] [seed]`.

use imtw::automata::Preset;
use imtw::oracle::{brute_force_optimal, ProblemSpec};
use imtw::pipeline::{solve_pipeline, Instance};
use imtw::rng::{random_graph, random_weights, Rng};
use imtw::signatures::FamilyMode;
use imtw::Guards;

fn main() {
    let mut args = std::env::args().skip(1);
    let count: usize = args.next().and_then(|s| s.parse().ok()).unwrap_or(60);
    let seed: u64 = args.next().and_then(|s| s.parse().ok()).unwrap_or(12345);

    let guards = Guards::default();
    let mut rng = Rng::new(seed);
    let mut agree = 0usize;
    let mut infeasible = 0usize;
    for i in 0..count {
        let n = rng.range(2, 9);
        let p = *rng.pick(&[20, 40, 60]);
        let g = random_graph(&mut rng, n, p);
        let weights = random_weights(&mut rng, n);
        let preset = Preset::all()[i % 5];
        let spec = ProblemSpec::new(preset);
        let oracle = brute_force_optimal(&g, &weights, &spec, &guards).expect("oracle");

        let mut inst = Instance::new(g.clone(), weights, preset);
        inst.mode = if i % 2 == 0 { FamilyMode::Bounded } else { FamilyMode::All };
        let rep = solve_pipeline(&inst).expect("pipeline");

        match (&oracle, &rep.weight) {
            (None, None) => {
                infeasible += 1;
                agree += 1;
            }
            (Some((_, ow)), Some(sw)) if ow == sw => agree += 1,
            other => {
                println!("MISMATCH on instance {i}: {other:?}");
                println!("{}", imtw::io::emit_gr(&g));
                std::process::exit(1);
            }
        }
    }
    println!("{agree}/{count} instances agree with the oracle ({infeasible} infeasible)");
}
