//! Normalize a tree decomposition to ell-supernice form and print a census
//! of node kinds. Run with `cargo run --example normalize_supernice`.

use imtw::supernice::{make_supernice, NodeKind};
use imtw::treedec::{mu_width, width, TreeDecomposition};
use imtw::{Graph, Guards, VertexSet};

fn main() {
    // a 3x2 grid with a decomposition of width 2
    let g = Graph::from_edges(6, &[(0, 1), (1, 2), (3, 4), (4, 5), (0, 3), (1, 4), (2, 5)])
        .expect("grid");
    let bags: Vec<VertexSet> = vec![
        [0, 1, 3].iter().copied().collect(),
        [1, 3, 4].iter().copied().collect(),
        [1, 2, 4].iter().copied().collect(),
        [2, 4, 5].iter().copied().collect(),
    ];
    let td = TreeDecomposition::new(bags, vec![(0, 1), (1, 2), (2, 3)]).expect("tree");
    let guards = Guards::default();
    println!(
        "input: {} nodes, width {}, mu-width {}",
        td.node_count(),
        width(&td),
        mu_width(&g, &td, &guards).expect("mu")
    );

    for ell in [0, 2, 5] {
        let sn = make_supernice(&g, &td, ell).expect("normalize");
        let mut census = [0usize; 6];
        for t in 0..sn.node_count() {
            let slot = match sn.kind(t) {
                NodeKind::Initial => 0,
                NodeKind::Introduce(_) => 1,
                NodeKind::Forget(_) => 2,
                NodeKind::Join => 3,
                NodeKind::Neutral => 4,
                NodeKind::Top(_) => 5,
            };
            census[slot] += 1;
        }
        println!(
            "ell={ell}: {} nodes | initial {} introduce {} forget {} join {} neutral {} top {}",
            sn.node_count(),
            census[0],
            census[1],
            census[2],
            census[3],
            census[4],
            census[5]
        );
        let issues = sn.verify(&g);
        assert!(issues.is_empty(), "{issues:?}");
        println!(
            "  verified; mu-width now {}",
            mu_width(&g, &sn.to_treedec(), &guards).expect("mu")
        );
    }
}
