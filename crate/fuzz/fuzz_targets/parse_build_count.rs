#![no_main]

use butterfly_core::count::{bb_base, bb_bucket};
use butterfly_core::ingest::{parse_edge_list, EdgeListFormat};
use libfuzzer_sys::fuzz_target;

// Whole pipeline on hostile input: parse, build, count. On anything small
// enough to count twice, the two exact counters must agree.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else {
        return;
    };
    let Ok(edges) = parse_edge_list(text, EdgeListFormat::SignedTsv) else {
        return;
    };
    let Ok(graph) = edges.to_graph() else {
        return;
    };
    if graph.edge_count() > 512 {
        return;
    }
    let bucket = bb_bucket(&graph).expect("counting cannot fail on parsed input");
    let base = bb_base(&graph).expect("counting cannot fail on parsed input");
    assert_eq!(bucket.balanced, base.balanced);
    assert_eq!(bucket.unbalanced, base.unbalanced);
    assert_eq!(bucket.wedges_processed, base.wedges_processed);
});
