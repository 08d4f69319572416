#![no_main]

use butterfly_core::ingest::{parse_edge_list, EdgeListFormat};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    if let Ok(text) = std::str::from_utf8(data) {
        if let Ok(edges) = parse_edge_list(text, EdgeListFormat::KonectWeighted) {
            // Weighted rows always carry signs and thresholding never panics.
            let _ = edges.to_graph();
            let _ = edges.with_threshold_signs(0.0);
        }
    }
});
