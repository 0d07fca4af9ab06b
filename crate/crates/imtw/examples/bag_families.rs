//! Enumerate the candidate family of a bag and show the completeness
//! contract: the optimal solution's intersection with the bag is always a
//! member. Run with `cargo run --example bag_families`.

use imtw::automata::Preset;
use imtw::graph::mu_of_set;
use imtw::oracle::{brute_force_optimal, ProblemSpec};
use imtw::signatures::{
    construct_signature_for, dangling_vertices, enumerate_bag_family, FamilyMode,
};
use imtw::weights::VertexWeights;
use imtw::{Graph, Guards};

fn main() {
    let guards = Guards::default();
    let g = Graph::cycle(5);
    let weights = VertexWeights::unit(5);
    let b = g.vertex_set();
    let k = mu_of_set(&g, b, &guards).expect("mu");
    let preset = Preset::Mwis;
    let w = preset.treewidth_bound();

    let spec = ProblemSpec::new(preset);
    let (x, wt) = brute_force_optimal(&g, &weights, &spec, &guards)
        .expect("oracle")
        .expect("feasible");
    println!("C5 under {}: optimal solution {:?} with weight {}", preset.name(), x, wt);

    let aut = preset.build(2 * k * (w + 1) + 2);
    for mode in [FamilyMode::Bounded, FamilyMode::All] {
        let fam = enumerate_bag_family(&g, &weights, b, k, w, aut.as_ref(), mode, &guards)
            .expect("family");
        println!(
            "{mode:?} family of the full bag: {} candidates, contains the optimum: {}",
            fam.len(),
            fam.contains(&(x & b))
        );
        for cand in fam.iter().take(8) {
            println!("  {cand:?}");
        }
        if fam.len() > 8 {
            println!("  ... {} more", fam.len() - 8);
        }
    }

    // the witness signature of the optimum, and its dangling vertices
    let sig = construct_signature_for(&g, x, b, k, w, &guards).expect("signature");
    println!(
        "witness signature: C = {:?}, S = {:?}, D = {:?}, dangling = {:?}",
        sig.c,
        sig.s,
        sig.d,
        dangling_vertices(&g, &sig)
    );
}
