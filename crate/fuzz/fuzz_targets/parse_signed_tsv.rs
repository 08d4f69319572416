#![no_main]

use butterfly_core::ingest::{parse_edge_list, EdgeListFormat};
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    // Arbitrary bytes must parse or error, never panic.
    if let Ok(text) = std::str::from_utf8(data) {
        let _ = parse_edge_list(text, EdgeListFormat::SignedTsv);
    }
});
