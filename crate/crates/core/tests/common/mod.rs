//! Test-only generators and oracles. The oracles here use naive loops and
//! closed forms, never the library's own numerical paths.
#![allow(dead_code)]

use opvframe_core::{haar_random_unitary, Complex64, ComplexMatrix, OpvFrame};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

/// Naive triple-loop product `a* b`.
pub fn naive_adjoint_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.cols(), b.cols());
    for i in 0..a.cols() {
        for j in 0..b.cols() {
            let mut acc = c(0.0, 0.0);
            for k in 0..a.rows() {
                acc += a[(k, i)].conj() * b[(k, j)];
            }
            out[(i, j)] = acc;
        }
    }
    out
}

/// Naive triple-loop product `a b`.
pub fn naive_product(a: &ComplexMatrix, b: &ComplexMatrix) -> ComplexMatrix {
    let mut out = ComplexMatrix::zeros(a.rows(), b.cols());
    for i in 0..a.rows() {
        for j in 0..b.cols() {
            let mut acc = c(0.0, 0.0);
            for k in 0..a.cols() {
                acc += a[(i, k)] * b[(k, j)];
            }
            out[(i, j)] = acc;
        }
    }
    out
}

pub fn stack(frame: &OpvFrame) -> ComplexMatrix {
    let rows: Vec<Vec<Complex64>> = frame.blocks().iter().flat_map(ComplexMatrix::to_rows).collect();
    ComplexMatrix::from_rows(&rows).unwrap()
}

/// `Σ_j V_j* V_j` by naive loops.
pub fn naive_frame_operator(frame: &OpvFrame) -> ComplexMatrix {
    let t = stack(frame);
    naive_adjoint_product(&t, &t)
}

/// The hand-written 4×2 harmonic instance with roots `c₁ = i`, `c₂ = −1`:
/// row `i` is `(c₁^i, c₂^i)/2`, split into two 2×2 blocks.
pub fn desk_instance() -> OpvFrame {
    let b1 = ComplexMatrix::from_rows(&[vec![c(0.5, 0.0), c(0.5, 0.0)], vec![c(0.0, 0.5), c(-0.5, 0.0)]]).unwrap();
    let b2 = ComplexMatrix::from_rows(&[vec![c(-0.5, 0.0), c(0.5, 0.0)], vec![c(0.0, -0.5), c(-0.5, 0.0)]]).unwrap();
    OpvFrame::new(vec![b1, b2]).unwrap()
}

/// Random block sizes in `1..=max_size` with `m` blocks.
pub fn random_sizes(rng: &mut ChaCha8Rng, m: usize, max_size: usize) -> Vec<usize> {
    (0..m).map(|_| rng.random_range(1..=max_size)).collect()
}

pub fn gaussian(rng: &mut ChaCha8Rng) -> f64 {
    // Box–Muller; independent of the library's sampler.
    let u1: f64 = rng.random_range(f64::EPSILON..1.0);
    let u2: f64 = rng.random::<f64>();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

pub fn random_complex_matrix(rng: &mut ChaCha8Rng, rows: usize, cols: usize) -> ComplexMatrix {
    let data = (0..rows * cols).map(|_| c(gaussian(rng), gaussian(rng))).collect();
    ComplexMatrix::from_vec(rows, cols, data).unwrap()
}

pub fn random_hermitian(rng: &mut ChaCha8Rng, n: usize) -> ComplexMatrix {
    let g = random_complex_matrix(rng, n, n);
    let mut h = &g + &g.adjoint();
    for i in 0..n {
        h[(i, i)].im = 0.0;
    }
    h
}

/// Parseval frame on `C^n` with random sizes, built from a Haar unitary.
pub fn random_parseval_frame(rng: &mut ChaCha8Rng, n: usize, sizes: &[usize]) -> OpvFrame {
    let l: usize = sizes.iter().sum();
    let u = haar_random_unitary(l, rng.random()).unwrap();
    OpvFrame::from_analysis(&u.column_block(0, n), sizes).unwrap()
}

/// Frame with singular values of `θ` spread over `[1, sqrt(max_condition)]`,
/// so `cond(S) ≤ max_condition`.
pub fn random_conditioned_frame(rng: &mut ChaCha8Rng, n: usize, sizes: &[usize], max_condition: f64) -> OpvFrame {
    let parseval = random_parseval_frame(rng, n, sizes);
    let top = max_condition.sqrt();
    let sigmas: Vec<f64> = (0..n)
        .map(|k| {
            if n == 1 {
                1.0
            } else {
                top.powf(k as f64 / (n - 1) as f64)
            }
        })
        .collect();
    let v = haar_random_unitary(n, rng.random()).unwrap();
    let t = &ComplexMatrix::from_diag(&sigmas) * &v;
    parseval.right_multiply(&t).unwrap()
}

/// First 1-based prefix length at which the descending `targets` exceed
/// the descending `spectrum`, or `m` if the totals disagree.
pub fn oracle_majorization_index(spectrum: &[f64], targets: &[f64], tol: f64) -> Option<usize> {
    let mut a = spectrum.to_vec();
    let mut b = targets.to_vec();
    a.sort_by(|x, y| y.partial_cmp(x).unwrap());
    b.sort_by(|x, y| y.partial_cmp(x).unwrap());
    let scale: f64 = 1.0 + a.iter().map(|x| x.abs()).sum::<f64>();
    let mut pa = 0.0;
    let mut pb = 0.0;
    for k in 0..a.len() {
        pa += a[k];
        pb += b[k];
        if k + 1 < a.len() && pb > pa + tol * scale {
            return Some(k + 1);
        }
    }
    if (pa - pb).abs() > tol * (1.0 + pa.abs()) {
        return Some(a.len());
    }
    None
}

/// Real diagonal of `o · diag(lambda) · o*` by explicit multiplication.
pub fn conjugated_diagonal(o: &ComplexMatrix, lambda: &[f64]) -> Vec<f64> {
    let prod = naive_product(&naive_product(o, &ComplexMatrix::from_diag(lambda)), &o.adjoint());
    (0..lambda.len()).map(|i| prod[(i, i)].re).collect()
}

/// Targets majorized by `lambda`: the diagonal of a Haar conjugate.
pub fn majorized_targets(rng: &mut ChaCha8Rng, lambda: &[f64]) -> Vec<f64> {
    let u = haar_random_unitary(lambda.len(), rng.random()).unwrap();
    conjugated_diagonal(&u, lambda)
}

pub fn frobenius(a: &ComplexMatrix) -> f64 {
    a.as_slice().iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
