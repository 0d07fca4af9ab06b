//! Write and read the `.gr`, `.td`, and weights text formats.
//! Run with `cargo run --example pace_files`.

use imtw::io::{emit_gr, emit_td, emit_weights, parse_gr, parse_td, parse_weights};
use imtw::treedec::validate;
use imtw::weights::w_frac;
use imtw::{Graph, VertexWeights};

fn main() {
    let g = Graph::cycle(4);
    let gr = emit_gr(&g);
    println!("-- C4 as .gr --\n{gr}");
    assert_eq!(parse_gr(&gr).expect("parse"), g);

    let td_text = "c width-1 decomposition of P3\ns td 2 2 3\nb 1 1 2\nb 2 2 3\n1 2\n";
    let td = parse_td(td_text).expect("parse td");
    let p3 = Graph::path(3);
    println!("-- parsed .td is valid: {} --", validate(&p3, &td).is_valid());
    print!("{}", emit_td(&td, 3));

    let mut w = VertexWeights::unit(4);
    w.set(2, w_frac(-7, 2));
    let wtext = emit_weights(&w);
    println!("-- weights --\n{wtext}");
    let parsed = parse_weights(&wtext, 4).expect("parse weights");
    assert_eq!(parsed.get(2), w_frac(-7, 2));

    // malformed inputs fail with line numbers
    match parse_gr("p tw 2 1\n1 9\n") {
        Err(e) => println!("rejected bad edge: {e}"),
        Ok(_) => unreachable!(),
    }
    match parse_td("s td 2 2 3\nb 1 1\nb 1 2\n1 2\n") {
        Err(e) => println!("rejected duplicate bag: {e}"),
        Ok(_) => unreachable!(),
    }
}
