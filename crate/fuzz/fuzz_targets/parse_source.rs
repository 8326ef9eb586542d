#![no_main]

use libfuzzer_sys::fuzz_target;
use lsq::parser::{parse_source, ParseOptions};
use lsq::syntax::{typecheck, Context};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    match parse_source(text, ParseOptions::with_extensions()) {
        Ok(file) => {
            if let Some(main) = file.main {
                let _ = typecheck(&Context::new(), &main);
            }
        }
        Err(e) => assert!(e.line >= 1 && e.col >= 1),
    }
});
