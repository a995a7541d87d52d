//! Writes the built-in fixtures as graph files and reads one back.
//!
//!     cargo run --example graph_files -- out_dir

use std::path::PathBuf;

use vgbs::cli::{graph_to_json, parse_graph_file};
use vgbs::fixtures;

fn main() {
    let dir = PathBuf::from(std::env::args().nth(1).unwrap_or_else(|| "fixtures".into()));
    std::fs::create_dir_all(&dir).expect("create output directory");
    for (name, group) in fixtures::all() {
        let text = graph_to_json(group.graph().spec());
        let path = dir.join(format!("{name}.json"));
        std::fs::write(&path, &text).expect("write graph file");
        let back = parse_graph_file(&text).expect("written file parses");
        println!("{:<6} {} vertices, {} edges -> {}", name, back.vertices().len(), back.edges().len(), path.display());
    }
}
