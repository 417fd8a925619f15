//! Brute-force reference implementations shared by the integration tests.
//!
//! Everything here works on dense arrays and plain loops and does not call
//! into the library code it checks.

#![allow(dead_code)]

use rand::Rng;
use rand_chacha::ChaCha8Rng;

/// Rocchio straight from the formula over dense arrays.
pub fn dense_rocchio(
    initial: &[f64],
    docs: &[Vec<f64>],
    member: &[bool],
    alpha: f64,
    beta: f64,
    gamma: f64,
) -> Vec<f64> {
    let n = initial.len();
    let n_pos = member.iter().filter(|&&m| m).count();
    let n_neg = docs.len() - n_pos;
    (0..n)
        .map(|i| {
            let mut pos = 0.0;
            let mut neg = 0.0;
            for (d, &m) in docs.iter().zip(member) {
                if m {
                    pos += d[i];
                } else {
                    neg += d[i];
                }
            }
            let pos_mean = if n_pos == 0 { 0.0 } else { pos / n_pos as f64 };
            let neg_mean = if n_neg == 0 { 0.0 } else { neg / n_neg as f64 };
            let w = alpha * initial[i] + beta * pos_mean - gamma * neg_mean;
            if w < 0.0 {
                0.0
            } else {
                w
            }
        })
        .collect()
}

/// Widrow-Hoff straight from the update rule over dense arrays.
pub fn dense_widrow_hoff(initial: &[f64], docs: &[Vec<f64>], member: &[bool], eta: f64) -> Vec<f64> {
    let mut w = initial.to_vec();
    for (d, &m) in docs.iter().zip(member) {
        let y = if m { 1.0 } else { 0.0 };
        let dot: f64 = d.iter().zip(&w).map(|(a, b)| a * b).sum();
        let step = 2.0 * eta * (dot - y);
        for i in 0..w.len() {
            w[i] -= step * d[i];
        }
    }
    w
}

/// Interpolated precision by listing every cutoff's (recall, precision) and
/// taking, for each level, the best precision among cutoffs at or above it.
pub fn brute_interpolated(relevance: &[bool], total_relevant: usize) -> [f64; 11] {
    let mut points = Vec::new();
    let mut found = 0;
    for (i, &r) in relevance.iter().enumerate() {
        if r {
            found += 1;
        }
        points.push((found as f64 / total_relevant as f64, found as f64 / (i + 1) as f64));
    }
    let mut out = [0.0; 11];
    for (level, slot) in out.iter_mut().enumerate() {
        let r = level as f64 / 10.0;
        *slot = points
            .iter()
            .filter(|(recall, _)| *recall >= r - 1e-12)
            .map(|&(_, p)| p)
            .fold(0.0, f64::max);
    }
    out
}

fn entropy(counts: &[u64]) -> f64 {
    let total: u64 = counts.iter().sum();
    counts
        .iter()
        .filter(|&&c| c > 0)
        .map(|&c| {
            let p = c as f64 / total as f64;
            -p * p.log2()
        })
        .sum()
}

/// Mutual information of two binary indicators as H(T) + H(C) − H(T,C).
pub fn mi_by_entropy(term: &[bool], cat: &[bool]) -> f64 {
    let mut joint = [0u64; 4];
    for (&t, &c) in term.iter().zip(cat) {
        joint[(t as usize) * 2 + c as usize] += 1;
    }
    let t = [joint[0] + joint[1], joint[2] + joint[3]];
    let c = [joint[0] + joint[2], joint[1] + joint[3]];
    (entropy(&t) + entropy(&c) - entropy(&joint)).max(0.0)
}

/// A small random training set: dense non-negative document vectors with
/// some zeros, and category labels per document.
pub struct Fixture {
    pub n_terms: usize,
    pub docs: Vec<Vec<f64>>,
    pub labels: Vec<Vec<String>>,
    pub categories: Vec<String>,
    pub initials: Vec<Vec<f64>>,
}

pub fn random_fixture(rng: &mut ChaCha8Rng, max_docs: usize, max_terms: usize, max_cats: usize) -> Fixture {
    let n_docs = rng.gen_range(1..=max_docs);
    let n_terms = rng.gen_range(1..=max_terms);
    let n_cats = rng.gen_range(1..=max_cats);
    let categories: Vec<String> = (0..n_cats).map(|c| format!("c{c}")).collect();
    let docs = (0..n_docs)
        .map(|_| {
            (0..n_terms)
                .map(|_| {
                    if rng.gen_bool(0.4) {
                        0.0
                    } else {
                        rng.gen_range(0.05..5.0)
                    }
                })
                .collect()
        })
        .collect();
    let labels = (0..n_docs)
        .map(|_| categories.iter().filter(|_| rng.gen_bool(0.4)).cloned().collect())
        .collect();
    let initials = (0..n_cats)
        .map(|_| {
            (0..n_terms)
                .map(|_| {
                    if rng.gen_bool(0.6) {
                        0.0
                    } else {
                        rng.gen_range(0.0..2.0)
                    }
                })
                .collect()
        })
        .collect();
    Fixture {
        n_terms,
        docs,
        labels,
        categories,
        initials,
    }
}

/// Largest Euclidean norm of the dense documents.
pub fn dense_max_norm(docs: &[Vec<f64>]) -> f64 {
    docs.iter()
        .map(|d| d.iter().map(|x| x * x).sum::<f64>().sqrt())
        .fold(0.0, f64::max)
}
