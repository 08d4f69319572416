#![no_main]

use butterfly_core::ingest::{parse_edge_list, EdgeListFormat};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(edges) = parse_edge_list(text, EdgeListFormat::UnsignedTsv) {
            // Unsigned rows must refuse to build until signs are assigned.
            assert!(edges.to_graph().is_err());
            let _ = edges.with_random_signs(0.5, 0).to_graph();
        }
    }
});
