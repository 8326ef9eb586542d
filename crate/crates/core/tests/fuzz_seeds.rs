//! Runs the fuzz-target properties over the checked-in seeds and random
//! mutations of them.

use std::path::PathBuf;

use lsq::lambda_s::parse_s_source;
use lsq::parser::{parse_prop_with, parse_source, parse_term_with, ParseOptions};
use lsq::vector::interchange::{read_matrix, write_matrix};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn seeds() -> Vec<Vec<u8>> {
    let root = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../fuzz/corpus");
    let mut out = Vec::new();
    for dir in std::fs::read_dir(&root).unwrap() {
        for file in std::fs::read_dir(dir.unwrap().path()).unwrap() {
            out.push(std::fs::read(file.unwrap().path()).unwrap());
        }
    }
    assert!(out.len() >= 10, "corpus missing at {}", root.display());
    out
}

fn mutate(rng: &mut ChaCha8Rng, seed: &[u8], pool: &[Vec<u8>]) -> Vec<u8> {
    let mut b = seed.to_vec();
    for _ in 0..rng.gen_range(1..4) {
        let at = rng.gen_range(0..=b.len());
        match rng.gen_range(0..4) {
            0 if !b.is_empty() => {
                let end = rng.gen_range(at..=b.len().min(at + 4));
                b.drain(at..end);
            }
            1 => b.insert(at, b"()[]<>{}+-*.,:;|=ilxTQ0123 "[rng.gen_range(0..27)]),
            2 => {
                let other = &pool[rng.gen_range(0..pool.len())];
                let start = rng.gen_range(0..=other.len());
                let end = rng.gen_range(start..=other.len().min(start + 12));
                b.splice(at..at, other[start..end].iter().copied());
            }
            _ => b.insert(at, rng.gen()),
        }
    }
    b
}

fn check(text: &str) {
    for opts in [ParseOptions::default(), ParseOptions::with_extensions()] {
        match parse_term_with(text, opts) {
            Ok(t) => assert_eq!(parse_term_with(&t.to_string(), opts).unwrap(), t, "{text:?}"),
            Err(e) => assert!(e.line >= 1 && e.col >= 1),
        }
        if let Err(e) = parse_source(text, opts) {
            assert!(e.line >= 1 && e.col >= 1);
        }
    }
    match parse_prop_with(text, ParseOptions::with_extensions()) {
        Ok(p) => assert_eq!(parse_prop_with(&p.to_string(), ParseOptions::with_extensions()).unwrap(), p),
        Err(e) => assert!(e.line >= 1 && e.col >= 1),
    }
    if let Err(e) = parse_s_source(text) {
        assert!(e.line >= 1 && e.col >= 1);
    }
    if let Ok(m) = read_matrix(text) {
        assert_eq!(read_matrix(&write_matrix(&m)).unwrap(), m);
    }
}

#[test]
fn seeds_and_mutations() {
    let pool = seeds();
    let mut rng = ChaCha8Rng::seed_from_u64(99);
    for s in &pool {
        check(&String::from_utf8_lossy(s));
    }
    for _ in 0..20_000 {
        let s = &pool[rng.gen_range(0..pool.len())];
        let m = mutate(&mut rng, s, &pool);
        if let Ok(text) = std::str::from_utf8(&m) {
            check(text);
        }
    }
}
