//! Oracles shared by the integration test targets. Each one recomputes its
//! quantity by a route independent of the library implementation.
#![allow(dead_code)]

use itertools::Itertools;
use num_complex::Complex64;

use cmr_core::algebra::{GlMatrix, TwoTensor};
use cmr_core::lax::{build_lax, PhasePoint};
use cmr_core::potentials::PotentialKind;

/// Dense n^k × n^k integer matrix.
pub type Dense = Vec<Vec<i64>>;

fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut out = vec![vec![0; n]; n];
    for i in 0..n {
        for m in 0..n {
            if a[i][m] == 0 {
                continue;
            }
            for j in 0..n {
                out[i][j] += a[i][m] * b[m][j];
            }
        }
    }
    out
}

fn dense_comm(a: &Dense, b: &Dense) -> Dense {
    let ab = dense_mul(a, b);
    let ba = dense_mul(b, a);
    ab.iter()
        .zip(&ba)
        .map(|(x, y)| x.iter().zip(y).map(|(p, q)| p - q).collect())
        .collect()
}

/// The three embeddings R₁₂, R₁₃, R₂₃ as n³×n³ operators, built from Kronecker
/// index arithmetic on (row, column) multi-indices.
fn embeddings(r: &TwoTensor<i64>) -> (Dense, Dense, Dense) {
    let n = r.dim();
    let n3 = n * n * n;
    let idx = |a: usize, b: usize, c: usize| (a * n + b) * n + c;
    let mut r12 = vec![vec![0; n3]; n3];
    let mut r13 = vec![vec![0; n3]; n3];
    let mut r23 = vec![vec![0; n3]; n3];
    for ((a, b, c, d), v) in r.nonzero_entries() {
        for e in 0..n {
            r12[idx(a, c, e)][idx(b, d, e)] += v;
            r13[idx(a, e, c)][idx(b, e, d)] += v;
            r23[idx(e, a, c)][idx(e, b, d)] += v;
        }
    }
    (r12, r13, r23)
}

pub fn dense_cybe(r: &TwoTensor<i64>) -> Dense {
    let (r12, r13, r23) = embeddings(r);
    let sum = |x: Dense, y: Dense| -> Dense {
        x.iter()
            .zip(&y)
            .map(|(a, b)| a.iter().zip(b).map(|(p, q)| p + q).collect())
            .collect()
    };
    sum(
        sum(dense_comm(&r12, &r13), dense_comm(&r12, &r23)),
        dense_comm(&r13, &r23),
    )
}

/// `{L_ij, L_kl}` by differencing L in every p_m and q_m.
pub fn fd_poisson(x: &PhasePoint, kind: PotentialKind) -> TwoTensor<Complex64> {
    let n = x.dim();
    let h = 1e-6;
    let diff = |dq: bool, m: usize| -> GlMatrix {
        let (mut qp, mut pp) = (x.q().to_vec(), x.p().to_vec());
        let (mut qm, mut pm) = (x.q().to_vec(), x.p().to_vec());
        if dq {
            qp[m] += h;
            qm[m] -= h;
        } else {
            pp[m] += h;
            pm[m] -= h;
        }
        let lp = build_lax(&PhasePoint::new(qp, pp).unwrap(), kind).unwrap();
        let lm = build_lax(&PhasePoint::new(qm, pm).unwrap(), kind).unwrap();
        (lp - lm).scale(&Complex64::new(1.0 / (2.0 * h), 0.0))
    };
    let dp: Vec<GlMatrix> = (0..n).map(|m| diff(false, m)).collect();
    let dq: Vec<GlMatrix> = (0..n).map(|m| diff(true, m)).collect();
    TwoTensor::from_fn(n, |i, j, k, l| {
        (0..n).fold(Complex64::new(0.0, 0.0), |acc, m| {
            acc + dp[m][(i, j)] * dq[m][(k, l)] - dq[m][(i, j)] * dp[m][(k, l)]
        })
    })
}

/// `φ_jk = Σ_{P ⊂ I_k, |P| = n−j} Π_{l∈P} q_l` by explicit subset enumeration.
pub fn phi_by_subsets(q: &[f64]) -> Vec<Vec<f64>> {
    let n = q.len();
    (0..n)
        .map(|j| {
            (0..n)
                .map(|k| {
                    let others: Vec<f64> = (0..n).filter(|&l| l != k).map(|l| q[l]).collect();
                    others
                        .iter()
                        .combinations(n - 1 - j)
                        .map(|c| c.into_iter().product::<f64>())
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// Largest entry of the dense Yang–Baxter residual, indexed like `ThreeTensor`.
pub fn dense_cybe_entry(d: &Dense, n: usize, idx: [usize; 6]) -> i64 {
    let [i1, j1, i2, j2, i3, j3] = idx;
    d[(i1 * n + i2) * n + i3][(j1 * n + j2) * n + j3]
}
