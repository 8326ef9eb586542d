#![no_main]

use libfuzzer_sys::fuzz_target;
use lsq::parser::{parse_prop_with, ParseOptions};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    match parse_prop_with(text, ParseOptions::with_extensions()) {
        Ok(p) => assert_eq!(parse_prop_with(&p.to_string(), ParseOptions::with_extensions()).unwrap(), p),
        Err(e) => assert!(e.line >= 1 && e.col >= 1),
    }
});
