//! Writes a graph in the text format, reads it back and shows a parse error.
//!
//! cargo run --example file_format

use bct::constructions::gen_random;
use bct::format::{parse_graph, write_graph};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let (g, s) = gen_random(4, 2, 500, None, 3)?;
    let text = write_graph(&g, &s, &["seeded sample".to_string()]);
    print!("{text}");
    assert_eq!(parse_graph(&text)?, (g, s));

    match parse_graph("p bbg 2 1\ne 1 3\n") {
        Ok(_) => unreachable!(),
        Err(e) => println!("rejected: {e}"),
    }
    Ok(())
}
