#![no_main]

use libfuzzer_sys::fuzz_target;
use lsq::lambda_s::{parse_s_source, s_typecheck, SContext};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    match parse_s_source(text) {
        Ok(file) => {
            if let Some(main) = file.main {
                let _ = s_typecheck(&SContext::new(), &main);
            }
        }
        Err(e) => assert!(e.line >= 1 && e.col >= 1),
    }
});
