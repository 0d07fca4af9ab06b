//! Build the inner tree decomposition of a solution along a supernice host
//! and verify every structural property. Run with
//! `cargo run --example inner_decomposition`.

use imtw::inner::{build_inner, ell_bound, partition_solution, verify_inner};
use imtw::supernice::make_supernice;
use imtw::treedec::{acquire_decomposition, mu_width, AcquireSource};
use imtw::{Graph, Guards};

fn main() {
    let guards = Guards::default();
    // a star plus a path hanging off one leaf
    let g = Graph::from_edges(
        8,
        &[(0, 1), (0, 2), (0, 3), (0, 4), (0, 5), (5, 6), (6, 7)],
    )
    .expect("graph");
    let x = g.vertex_set();
    let w = 1; // the graph is a tree

    let part = partition_solution(&g, x, w);
    println!("solution {:?}", x);
    println!("  high-degree part {:?}", part.x_high);
    println!("  linked low part  {:?}", part.x_low_linked);
    println!("  scattered part   {:?}", part.x2);

    let td = acquire_decomposition(&g, AcquireSource::Trivial, &guards).expect("acquire");
    let k = mu_width(&g, &td, &guards).expect("mu");
    let ell = ell_bound(k, w);
    println!("mu-width {k}, w {w}: inner width budget ell = {ell}");

    let sn = make_supernice(&g, &td, ell).expect("normalize");
    println!("supernice host has {} nodes", sn.node_count());

    let (part, inner) = build_inner(&g, &sn, x, w, &guards).expect("build");
    let widest = inner.ibag.iter().map(|b| b.len()).max().unwrap_or(0);
    println!("inner decomposition built; largest inner bag {widest} (budget {})", ell + 1);

    let issues = verify_inner(&g, &sn, &part, &inner, x);
    println!("verifier: {}", if issues.is_empty() { "all properties hold".into() } else { issues.join("; ") });
}
