use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::Serialize;

use crate::reduce::{normalize_det, Branch, Mode, Reducer, DEFAULT_FUEL};
use crate::syntax::Term;

use super::{decode, encode, CVector, VecError};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SampleReport {
    pub qubits: usize,
    pub shots: u64,
    pub seed: u64,
    pub counts: BTreeMap<usize, u64>,
    pub frequencies: BTreeMap<usize, f64>,
}

impl SampleReport {
    pub fn frequency(&self, index: usize) -> f64 {
        self.frequencies.get(&index).copied().unwrap_or(0.0)
    }

    /// Total-variation distance to a distribution over outcome indices.
    pub fn tv_distance(&self, probs: &[f64]) -> f64 {
        let mut d: f64 = probs.iter().enumerate().map(|(i, p)| (self.frequency(i) - p).abs()).sum();
        d += self.frequencies.iter().filter(|(i, _)| **i >= probs.len()).map(|(_, f)| f).sum::<f64>();
        d / 2.0
    }
}

#[derive(Debug, Clone, Copy)]
pub struct MeasureOptions {
    pub threads: usize,
    pub eps: f64,
    pub fuel: u64,
}

impl Default for MeasureOptions {
    fn default() -> Self {
        MeasureOptions { threads: 1, eps: crate::scalar::DEFAULT_EPS, fuel: DEFAULT_FUEL }
    }
}

/// `|v_i|^2 / |v|^2` for each index.
pub fn born_probabilities(v: &CVector) -> Vec<f64> {
    let total = v.sq_norm();
    v.entries().iter().map(|a| a.sq_modulus() / total).collect()
}

/// `smatch t { a => C(a) | b => C(b) }` nested `n` levels deep, ending in
/// the variable itself.
pub fn cascade(t: Term, n: usize) -> Term {
    if n == 0 {
        return t;
    }
    let (a, b) = (format!("m{n}l"), format!("m{n}r"));
    Term::match_sup(t, &a, cascade(Term::var(&a), n - 1), &b, cascade(Term::var(&b), n - 1))
}

pub fn measure(t: &Term, shots: u64, seed: u64) -> Result<SampleReport, VecError> {
    measure_with(t, shots, seed, MeasureOptions::default())
}

/// Normalizes `t` deterministically, then collapses the resulting state
/// `shots` times. Shot `k` reduces the measurement cascade in
/// probabilistic mode with seed `seed ^ k`; outcome bits are the branch
/// choices, most significant first.
pub fn measure_with(t: &Term, shots: u64, seed: u64, opts: MeasureOptions) -> Result<SampleReport, VecError> {
    let v = decode(&normalize_det(t, opts.fuel)?)?;
    if v.sq_norm() <= opts.eps {
        return Err(VecError::ZeroNorm);
    }
    let n = v.qubits();
    let circuit = cascade(encode(&v), n);
    let shot = |k: u64| -> Result<usize, VecError> {
        let mut reducer = Reducer::new(Mode::Probabilistic { seed: seed ^ k, renormalize: true }).eps(opts.eps);
        let (_, trace) = reducer.normalize(&circuit, opts.fuel)?;
        Ok(trace.choices().fold(0, |acc, (b, _)| (acc << 1) | usize::from(b == Branch::Right)))
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.threads.max(1))
        .build()
        .map_err(|e| VecError::Threads(e.to_string()))?;
    let outcomes: Vec<usize> = pool.install(|| (0..shots).into_par_iter().map(shot).collect::<Result<_, _>>())?;
    let mut counts = BTreeMap::new();
    for i in outcomes {
        *counts.entry(i).or_insert(0) += 1;
    }
    let frequencies = counts.iter().map(|(&i, &c)| (i, c as f64 / shots.max(1) as f64)).collect();
    Ok(SampleReport { qubits: n, shots, seed, counts, frequencies })
}
