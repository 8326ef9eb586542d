#![no_main]

use libfuzzer_sys::fuzz_target;
use lsq::parser::{parse_term_with, ParseOptions};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    for opts in [ParseOptions::default(), ParseOptions::with_extensions()] {
        match parse_term_with(text, opts) {
            // printing and reparsing must give the same tree
            Ok(t) => assert_eq!(parse_term_with(&t.to_string(), opts).unwrap(), t),
            Err(e) => assert!(e.line >= 1 && e.col >= 1),
        }
    }
});
