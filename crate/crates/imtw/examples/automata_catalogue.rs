//! Evaluate every preset automaton along random valid binary decompositions
//! and compare with the direct graph checkers. Run with
//! `cargo run --release --example automata_catalogue [rounds]`.

use imtw::automata::{accepts, Preset};
use imtw::oracle::ProblemSpec;
use imtw::rng::{random_binary_decomposition, random_graph, Rng};

fn main() {
    let rounds: usize =
        std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(500);
    let mut rng = Rng::new(2026);
    let mut checked = 0usize;
    for preset in Preset::all() {
        let mut ok = 0usize;
        for _ in 0..rounds {
            let n = rng.range(1, 9);
            let p = *rng.pick(&[20, 40, 60]);
            let g = random_graph(&mut rng, n, p);
            let want = ProblemSpec::new(preset).holds(&g, g.vertex_set());
            let aut = preset.build(n);
            // three different decompositions of the same graph must agree
            let mut verdicts = Vec::new();
            for _ in 0..3 {
                let (bags, children, root) = random_binary_decomposition(&mut rng, &g);
                verdicts.push(accepts(aut.as_ref(), &g, &bags, &children, root).expect("run"));
            }
            checked += 3;
            if verdicts.iter().all(|&v| v == want) {
                ok += 1;
            } else {
                println!("disagreement for {} on {:?}: {:?} vs {}", preset.name(), g, verdicts, want);
                std::process::exit(1);
            }
        }
        println!("{:<7} {ok}/{rounds} graphs agree with the direct checker", preset.name());
    }
    println!("{checked} automaton runs total, zero disagreements");
}
