//! Acceptance suite: one PASS/FAIL line per criterion.

mod common;

use std::panic;
use std::process::ExitCode;
use std::time::Instant;

use lsq::lambda_s::{self, combination, combinations_close, s_normalize, s_typecheck, SContext, STerm, SType};
use lsq::parser::{parse_prop, parse_source, parse_term_with, ParseOptions};
use lsq::reduce::{normalize_det, Mode, Reducer, Strategy, DEFAULT_FUEL};
use lsq::syntax::{alpha_eq, typecheck, Context, Term};
use lsq::vector::{
    decode, encode, gate, gate_matrix, interchange, kron, mat_mul, mat_vec, measure, measure_with, state, vec_add,
    vec_scale, CMatrix, CVector, MeasureOptions,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn vec_of(t: &Term) -> Result<CVector, String> {
    let nf = normalize_det(t, DEFAULT_FUEL).map_err(|e| e.to_string())?;
    decode(&nf).map_err(|e| e.to_string())
}

fn canonical(rng: &mut ChaCha8Rng, n: usize) -> Term {
    if n == 0 {
        Term::Star(common::scalar(rng))
    } else {
        Term::pair(canonical(rng, n - 1), canonical(rng, n - 1))
    }
}

fn encoding_bijection() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for n in 0..=4 {
        for _ in 0..100 {
            let v = common::vector(&mut rng, n);
            let back = decode(&encode(&v)).map_err(|e| e.to_string())?;
            ensure(back == v, || format!("decode(encode(v)) != v at n={n}"))?;
            let t = canonical(&mut rng, n);
            let again = encode(&decode(&t).map_err(|e| e.to_string())?);
            ensure(alpha_eq(&again, &t), || format!("encode(decode(t)) != t: {t}"))?;
        }
    }
    Ok("500 vectors and 500 canonical terms".into())
}

fn homomorphism() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let n = rng.gen_range(0..=3);
        let (t1, t2) = (common::q_term(&mut rng, n, 3), common::q_term(&mut rng, n, 3));
        let (v1, v2) = (vec_of(&t1)?, vec_of(&t2)?);
        let sum = vec_of(&Term::sum(t1.clone(), t2))?;
        let oracle = vec_add(&v1, &v2).map_err(|e| e.to_string())?;
        worst = worst.max(sum.max_abs_diff(&oracle));
        let a = common::scalar(&mut rng);
        let scaled = vec_of(&Term::scale(a, t1))?;
        worst = worst.max(scaled.max_abs_diff(&vec_scale(a, &v1)));
    }
    ensure(worst <= 1e-9, || format!("max |delta| {worst:e}"))?;
    Ok(format!("200 instances, max |delta| {worst:e}"))
}

fn matrix_compiler() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for _ in 0..50 {
        let (rows, cols) = (rng.gen_range(0..=3), rng.gen_range(0..=3));
        let m = common::matrix(&mut rng, rows, cols);
        let t = lsq::vector::compile_matrix(&m);
        let ty = typecheck(&Context::new(), &t).map_err(|e| e.to_string())?;
        ensure(ty == lsq::syntax::Prop::lolli(lsq::syntax::qpow(cols), lsq::syntax::qpow(rows)), || format!("type {ty}"))?;
        for _ in 0..5 {
            let v = common::vector(&mut rng, cols);
            let got = vec_of(&Term::app(t.clone(), encode(&v)))?;
            worst = worst.max(got.max_abs_diff(&mat_vec(&m, &v).map_err(|e| e.to_string())?));
        }
    }
    ensure(worst <= 1e-9, || format!("max |delta| {worst:e}"))?;
    Ok(format!("250 products, max |delta| {worst:e}"))
}

fn linearity() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut worst: f64 = 0.0;
    for name in lsq::vector::library::GATES {
        let g = gate(name).map_err(|e| e.to_string())?;
        let n = gate_matrix(name).map_err(|e| e.to_string())?.cols().trailing_zeros() as usize;
        for _ in 0..50 {
            let (r, s) = (encode(&common::vector(&mut rng, n)), encode(&common::vector(&mut rng, n)));
            let (a, b) = (common::small_scalar(&mut rng), common::small_scalar(&mut rng));
            let lhs = vec_of(&Term::app(g.clone(), Term::sum(Term::scale(a, r.clone()), Term::scale(b, s.clone()))))?;
            let rhs = vec_of(&Term::sum(
                Term::scale(a, Term::app(g.clone(), r)),
                Term::scale(b, Term::app(g.clone(), s)),
            ))?;
            worst = worst.max(lhs.max_abs_diff(&rhs));
        }
    }
    ensure(worst <= 1e-9, || format!("max |delta| {worst:e}"))?;
    Ok(format!("{} gates x 50, max |delta| {worst:e}", lsq::vector::library::GATES.len()))
}

fn quantum_sanity() -> Check {
    let h = gate_matrix("H").map_err(|e| e.to_string())?;
    let r = std::f64::consts::FRAC_1_SQRT_2;
    let apply = |g: &str, t: Term| -> Result<CVector, String> { vec_of(&Term::app(gate(g).map_err(|e| e.to_string())?, t)) };

    let plus = apply("H", state("ket0").unwrap())?;
    ensure(plus.approx_eq(&CVector::from_reals(&[r, r]).unwrap(), 1e-9), || format!("H|0> = {plus:?}"))?;

    let minus = CVector::from_reals(&[r, -r]).unwrap();
    let got = apply("H", encode(&minus))?;
    let oracle = mat_vec(&h, &minus).unwrap();
    ensure(got.approx_eq(&oracle, 1e-9), || format!("H|-> = {got:?}"))?;
    ensure(got.approx_eq(&CVector::basis(1, 1), 1e-9), || "H|-> is not |1>".into())?;

    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..20 {
        let v = common::vector(&mut rng, 1);
        let hh = Term::app(gate("H").unwrap(), Term::app(gate("H").unwrap(), encode(&v)));
        let got = vec_of(&hh)?;
        ensure(got.approx_eq(&v, 1e-9), || format!("HH v != v for {v:?}"))?;
    }

    let bell_term = Term::app(gate("CNOT").unwrap(), Term::app(gate("H_I").unwrap(), state("ket00").unwrap()));
    let bell = vec_of(&bell_term)?;
    let circuit = mat_mul(&gate_matrix("CNOT").unwrap(), &kron(&h, &CMatrix::identity(1))).unwrap();
    let oracle = mat_vec(&circuit, &CVector::basis(2, 0)).unwrap();
    ensure(bell.approx_eq(&oracle, 1e-9), || format!("Bell = {bell:?}"))?;
    ensure(bell.approx_eq(&CVector::from_reals(&[r, 0.0, 0.0, r]).unwrap(), 1e-9), || "Bell shape".into())?;
    Ok("H|0>, H|->, 20 x HH, Bell".into())
}

fn born_statistics() -> Check {
    let plus = measure(&state("ketp").unwrap(), 10_000, 42).map_err(|e| e.to_string())?;
    let f0 = plus.frequency(0);
    ensure((f0 - 0.5).abs() <= 0.02, || format!("|+> freq(0) = {f0}"))?;

    let bell_term = Term::app(gate("CNOT").unwrap(), Term::app(gate("H_I").unwrap(), state("ket00").unwrap()));
    let one = measure_with(&bell_term, 10_000, 7, MeasureOptions { threads: 1, ..Default::default() }).map_err(|e| e.to_string())?;
    let support: Vec<usize> = one.counts.keys().copied().collect();
    ensure(support == vec![0, 3], || format!("Bell support {support:?}"))?;
    for i in [0, 3] {
        let f = one.frequency(i);
        ensure((f - 0.5).abs() <= 0.02, || format!("Bell freq({i}) = {f}"))?;
    }
    let again = measure_with(&bell_term, 10_000, 7, MeasureOptions { threads: 1, ..Default::default() }).unwrap();
    let eight = measure_with(&bell_term, 10_000, 7, MeasureOptions { threads: 8, ..Default::default() }).unwrap();
    ensure(one.counts == again.counts, || "rerun differs".into())?;
    ensure(one.counts == eight.counts, || "1 vs 8 threads differ".into())?;
    Ok(format!("|+> freq(0) {f0}, Bell {:?}", one.counts))
}

fn rewrite_robustness() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let mut worst: f64 = 0.0;
    let mut steps = 0usize;
    let corpus = 500;
    for k in 0..corpus {
        let n = rng.gen_range(0..=2);
        let t = common::q_term(&mut rng, n, 8);
        let ty = typecheck(&Context::new(), &t).map_err(|e| format!("generated term {k} ill-typed: {e}"))?;
        let mut outs = Vec::new();
        for strategy in [Strategy::LeftmostOutermost, Strategy::RightmostInnermost] {
            let mut reducer = Reducer::new(Mode::Deterministic).strategy(strategy);
            let mut cur = t.clone();
            let mut fuel = DEFAULT_FUEL;
            while let Some(step) = reducer.step(&cur).map_err(|e| e.to_string())? {
                let sty = typecheck(&Context::new(), &step.term).map_err(|e| format!("{} broke typing: {e}", step.rule))?;
                ensure(sty == ty, || format!("{} changed {ty} to {sty}", step.rule))?;
                cur = step.term;
                steps += 1;
                fuel -= 1;
                ensure(fuel > 0, || "fuel".into())?;
            }
            outs.push(decode(&cur).map_err(|e| e.to_string())?);
        }
        worst = worst.max(outs[0].max_abs_diff(&outs[1]));
    }
    ensure(worst <= 1e-9, || format!("strategies differ by {worst:e}"))?;
    Ok(format!("{corpus} terms, {steps} typed steps, max |delta| {worst:e}"))
}

fn lambda_s_eq1() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let bool_fn = [SType::arrow(SType::Bool, SType::Bool), SType::arrow(SType::Bool, SType::span(SType::Bool))];
    for _ in 0..50 {
        let t = common::s_function(&mut rng, 4);
        let ty = s_typecheck(&SContext::new(), &t).map_err(|e| format!("{t}: {e}"))?;
        ensure(bool_fn.contains(&ty), || format!("generated {ty}"))?;
        let (a, b) = (common::scalar(&mut rng), common::scalar(&mut rng));
        let arg = STerm::sum(STerm::scale(a, STerm::True), STerm::scale(b, STerm::False));
        let lhs = s_normalize(&STerm::app(t.clone(), arg), DEFAULT_FUEL).map_err(|e| e.to_string())?;
        let rhs = s_normalize(
            &STerm::sum(STerm::scale(a, STerm::app(t.clone(), STerm::True)), STerm::scale(b, STerm::app(t, STerm::False))),
            DEFAULT_FUEL,
        )
        .map_err(|e| e.to_string())?;
        let (cl, cr) = (combination(&lhs), combination(&rhs));
        let same = matches!((&cl, &cr), (Some(l), Some(r)) if combinations_close(l, r, 1e-12));
        ensure(same, || format!("{lhs} vs {rhs}"))?;
    }
    let dup = STerm::lam("x", SType::span(SType::Bool), STerm::sum(STerm::var("x"), STerm::var("x")));
    let rejected = matches!(s_typecheck(&SContext::new(), &dup), Err(lambda_s::SError::NonLinearUseOfSpanVariable { .. }));
    ensure(rejected, || "x + x accepted".into())?;
    Ok("50 instances; lam x:S(Bool). x+x rejected".into())
}

fn positioned(e: &lsq::parser::SyntaxError, text: &str) -> bool {
    let lines = text.split('\n').count();
    e.line >= 1 && e.col >= 1 && e.line <= lines + 1
}

fn parser() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for k in 0..1000 {
        let ext = k % 2 == 1;
        let t = common::any_term(&mut rng, 6, ext);
        let text = t.to_string();
        let back = parse_term_with(&text, ParseOptions { extensions: ext }).map_err(|e| format!("{text}: {e}"))?;
        ensure(back == t, || format!("roundtrip changed {text} into {back}"))?;
    }
    let alphabet: &[u8] = b"()[]<>{},.:;+-*^|=&%_ \n\t0123456789.eilmnoprstuvx/Tabcdfghjkqwyz'QSB#\"\\";
    let hook = panic::take_hook();
    panic::set_hook(Box::new(|_| {}));
    let mut failures = Vec::new();
    for k in 0..100_000u32 {
        let len = rng.gen_range(0..48);
        let bytes: Vec<u8> = if k % 2 == 0 {
            (0..len).map(|_| rng.gen()).collect()
        } else {
            (0..len).map(|_| alphabet[rng.gen_range(0..alphabet.len())]).collect()
        };
        let text = String::from_utf8_lossy(&bytes).into_owned();
        let outcome = panic::catch_unwind(|| {
            let mut ok = true;
            for opts in [ParseOptions::default(), ParseOptions::with_extensions()] {
                if let Err(e) = parse_source(&text, opts) {
                    ok &= positioned(&e, &text);
                }
                if let Err(e) = parse_term_with(&text, opts) {
                    ok &= positioned(&e, &text);
                }
            }
            if let Err(e) = parse_prop(&text) {
                ok &= positioned(&e, &text);
            }
            if let Err(e) = lambda_s::parse_s_source(&text) {
                ok &= positioned(&e, &text);
            }
            let _ = interchange::read_matrix(&text);
            ok
        });
        match outcome {
            Ok(true) => {}
            Ok(false) => failures.push(format!("unpositioned error for {text:?}")),
            Err(_) => failures.push(format!("panic for {text:?}")),
        }
        if failures.len() > 3 {
            break;
        }
    }
    panic::set_hook(hook);
    ensure(failures.is_empty(), || failures.join("; "))?;
    Ok("1000 roundtrips, 100000 random inputs".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("1 encoding bijection", encoding_bijection),
        ("2 sum and scalar homomorphism", homomorphism),
        ("3 matrix compiler", matrix_compiler),
        ("4 gate linearity", linearity),
        ("5 quantum sanity", quantum_sanity),
        ("6 Born statistics", born_statistics),
        ("7 rewrite robustness", rewrite_robustness),
        ("8 Lambda-S distribution law", lambda_s_eq1),
        ("9 parser roundtrip and fuzz", parser),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        let result = panic::catch_unwind(check).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match result {
            Ok(detail) if secs < 60.0 => println!("PASS {name} ({secs:.1}s): {detail}"),
            Ok(detail) => {
                failed += 1;
                println!("FAIL {name} ({secs:.1}s, over 60s): {detail}");
            }
            Err(why) => {
                failed += 1;
                println!("FAIL {name} ({secs:.1}s): {why}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
