//! Seeded random inputs kept away from the singular loci.

use std::f64::consts::PI;

use rand::Rng;

use crate::error::{Error, Result};
use crate::lax::PhasePoint;
use crate::potentials::PotentialKind;

/// Minimal pairwise separation of sampled coordinates.
pub const MIN_SEPARATION: f64 = 0.1;

pub const MAX_ATTEMPTS: usize = 10_000;

fn well_separated(q: &[f64], kind: PotentialKind) -> bool {
    let n = q.len();
    (0..n).all(|k| {
        (k + 1..n).all(|l| {
            let d = q[k] - q[l];
            if d.abs() < MIN_SEPARATION {
                return false;
            }
            match kind {
                PotentialKind::Trigonometric { a } => {
                    let r = (a * d).rem_euclid(PI);
                    r > MIN_SEPARATION && r < PI - MIN_SEPARATION
                }
                _ => true,
            }
        })
    })
}

/// Coordinates uniform in `[0, n)` with pairwise separation at least
/// [`MIN_SEPARATION`] (and, for the trigonometric kind, `a(q_k − q_l)` kept in
/// `(0.1, π − 0.1)` modulo π).
pub fn random_coordinates<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    kind: PotentialKind,
) -> Result<Vec<f64>> {
    let width = n.max(1) as f64;
    for _ in 0..MAX_ATTEMPTS {
        let q: Vec<f64> = (0..n).map(|_| rng.random::<f64>() * width).collect();
        if well_separated(&q, kind) {
            return Ok(q);
        }
    }
    Err(Error::InvalidParameter(format!(
        "no regular sample found for n = {n}, {kind} after {MAX_ATTEMPTS} attempts"
    )))
}

/// Regular coordinates with momenta uniform in `[−1, 1]`.
pub fn random_phase_point<R: Rng + ?Sized>(
    rng: &mut R,
    n: usize,
    kind: PotentialKind,
) -> Result<PhasePoint> {
    let q = random_coordinates(rng, n, kind)?;
    let p = (0..n).map(|_| rng.random_range(-1.0..=1.0)).collect();
    PhasePoint::new(q, p)
}

/// Traceless diagonal values on the `n − 1` simple roots with a random
/// symmetric pairing `α_i(C_{α_j}) = B_ij`, entries of `B` uniform in `[−1, 1]`.
#[allow(clippy::needless_range_loop)]
pub fn random_simple_cartan<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Vec<Vec<f64>> {
    let r = n.saturating_sub(1);
    let mut b = vec![vec![0.0; r]; r];
    for i in 0..r {
        for j in i..r {
            let v = rng.random_range(-1.0..=1.0);
            b[i][j] = v;
            b[j][i] = v;
        }
    }
    (0..r)
        .map(|j| {
            let mut c = vec![0.0; n];
            for i in 0..r {
                c[i + 1] = c[i] - b[i][j];
            }
            let mean = c.iter().sum::<f64>() / n as f64;
            c.iter().map(|x| x - mean).collect()
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rmatrix::extend_simple_c;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    #[test]
    fn samples_are_regular() {
        let mut rng = StdRng::seed_from_u64(3);
        for kind in [
            PotentialKind::Rational,
            PotentialKind::Hyperbolic { a: 1.0 },
            PotentialKind::Trigonometric { a: 1.0 },
        ] {
            for n in 1..=6 {
                let x = random_phase_point(&mut rng, n, kind).unwrap();
                x.check_regular(kind).unwrap();
                assert!(x.p().iter().all(|p| p.abs() <= 1.0));
            }
        }
    }

    #[test]
    fn random_cartan_is_extendable() {
        let mut rng = StdRng::seed_from_u64(11);
        for n in 2..=6 {
            let simple = random_simple_cartan(&mut rng, n);
            let c = extend_simple_c(&simple, n).unwrap();
            assert!(c.pairing_residual() < 1e-12);
        }
    }
}
