//! Solve a few small graphs under every problem preset and print the
//! reports. Run with `cargo run --example solve_presets`.

use imtw::automata::Preset;
use imtw::io::{format_solution, format_weight};
use imtw::pipeline::{solve_pipeline, Instance, SolveStatus};
use imtw::weights::VertexWeights;
use imtw::Graph;

fn main() {
    let graphs: Vec<(&str, Graph)> = vec![
        ("C5", Graph::cycle(5)),
        ("C6", Graph::cycle(6)),
        ("P6", Graph::path(6)),
        ("K4", Graph::complete(4)),
        ("K33", Graph::complete_bipartite(3, 3)),
    ];
    for (name, g) in &graphs {
        println!("--- {name} ({} vertices, {} edges)", g.vertex_count(), g.edge_count());
        for preset in Preset::all() {
            let inst = Instance::new(g.clone(), VertexWeights::unit(g.n()), preset);
            let rep = solve_pipeline(&inst).expect("pipeline");
            match rep.status {
                SolveStatus::Optimal => println!(
                    "  {:<7} weight {:<6} solution [{}]  (mu {}, ell {}, {} dp entries max)",
                    preset.name(),
                    format_weight(&rep.weight.unwrap()),
                    format_solution(rep.solution.unwrap()),
                    rep.measured_mu,
                    rep.ell,
                    rep.stats.max_entries,
                ),
                SolveStatus::Infeasible => println!("  {:<7} infeasible", preset.name()),
                SolveStatus::MuExceeded => println!("  {:<7} mu-exceeded", preset.name()),
            }
        }
    }

    // negative weights are first-class: the empty set can win
    println!("--- K2 with weights (-1, -2) under mwis");
    let inst = Instance::new(
        Graph::complete(2),
        VertexWeights::from_ints(&[-1, -2]),
        Preset::Mwis,
    );
    let rep = solve_pipeline(&inst).expect("pipeline");
    println!(
        "  weight {} solution [{}]",
        format_weight(&rep.weight.unwrap()),
        format_solution(rep.solution.unwrap())
    );
}
