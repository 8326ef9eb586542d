#![no_main]

use libfuzzer_sys::fuzz_target;
use lsq::vector::interchange::{read_matrix, read_vector, write_matrix};

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(m) = read_matrix(text) {
        assert_eq!(read_matrix(&write_matrix(&m)).unwrap(), m);
    }
    let _ = read_vector(text);
});
