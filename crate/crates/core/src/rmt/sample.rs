//! Haar samplers for U(N), SO(2N) and USp(2N).

use std::f64::consts::FRAC_1_SQRT_2;

use nalgebra::DMatrix;
use num::complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::Serialize;

use crate::kernel::SymmetryClass;

/// Eigenangles of one Haar draw together with its log weight.
#[derive(Clone, Debug, Serialize)]
pub struct EigenangleSample {
    /// U: N angles in (−π, π]; SO/USp: the N angles in [0, π] of the conjugate pairs
    pub angles: Vec<f64>,
    /// Σ_j log(2 − 2cos θ_j), i.e. the weight for k = 1
    pub log_char: f64,
}

impl EigenangleSample {
    pub fn from_angles(angles: Vec<f64>) -> Option<Self> {
        let log_char: f64 = angles.iter().map(|t| (2.0 - 2.0 * t.cos()).ln()).sum();
        log_char.is_finite().then_some(EigenangleSample { angles, log_char })
    }

    /// k·Σ log(2 − 2cos θ_j)
    pub fn log_weight(&self, k: u32) -> f64 {
        if k == 0 {
            0.0
        } else {
            k as f64 * self.log_char
        }
    }
}

fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    rng.sample(StandardNormal)
}

fn complex_gaussian<R: Rng + ?Sized>(rng: &mut R) -> Complex64 {
    Complex64::new(gaussian(rng), gaussian(rng)) * FRAC_1_SQRT_2
}

/// Haar unitary via Ginibre QR with the phases of diag(R) divided out.
pub fn haar_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    let g = DMatrix::from_fn(n, n, |_, _| complex_gaussian(rng));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { Complex64::new(1.0, 0.0) };
        let mut col = q.column_mut(j);
        col *= phase.conj();
    }
    q
}

/// Haar SO(2N): real Ginibre QR with sign fix; a draw with det = −1 has its first
/// column negated, which maps Haar O(2N) restricted to det −1 onto Haar SO(2N).
pub fn haar_so_even<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<f64> {
    let m = 2 * n;
    let g = DMatrix::from_fn(m, m, |_, _| gaussian(rng));
    let qr = g.qr();
    let r = qr.r();
    let mut q = qr.q();
    for j in 0..m {
        if r[(j, j)] < 0.0 {
            q.column_mut(j).neg_mut();
        }
    }
    if q.determinant() < 0.0 {
        q.column_mut(0).neg_mut();
    }
    q
}

/// Haar USp(2N) by quaternionic Gram–Schmidt: each Gaussian quaternion column is the
/// complex pair (u, −Jū) with J = [[0, I], [−I, 0]], orthonormalized against all
/// previous pairs. The result satisfies AᵀJA = J.
pub fn haar_usp<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DMatrix<Complex64> {
    let m = 2 * n;
    // column-major, columns j and n + j form one quaternion column
    let mut cols = vec![Complex64::new(0.0, 0.0); m * m];
    let mut u = vec![Complex64::new(0.0, 0.0); m];
    for j in 0..n {
        for z in u.iter_mut() {
            *z = complex_gaussian(rng);
        }
        for _ in 0..2 {
            for c in (0..j).chain(n..n + j) {
                let col = &cols[c * m..(c + 1) * m];
                let p: Complex64 = col.iter().zip(&u).map(|(a, b)| a.conj() * b).sum();
                for (x, a) in u.iter_mut().zip(col) {
                    *x -= a * p;
                }
            }
        }
        let norm = u.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt();
        for i in 0..m {
            let x = u[i] / norm;
            cols[j * m + i] = x;
            // −J ū: rows < n take −ū_{i+n}, rows ≥ n take ū_{i−n}
            if i < n {
                cols[(n + j) * m + i + n] = x.conj();
            } else {
                cols[(n + j) * m + i - n] = -x.conj();
            }
        }
    }
    DMatrix::from_vec(m, m, cols)
}

/// max |AᵀJA − J| for A = [U, −JŪ], which reduces to the blocks U*U − I and UᵀJU.
pub fn symplectic_defect(a: &DMatrix<Complex64>) -> f64 {
    let m = a.nrows();
    let n = m / 2;
    let u = a.columns(0, n);
    let v = a.columns(n, n);
    let mut ju = u.clone_owned();
    for c in 0..n {
        for i in 0..m {
            ju[(i, c)] = if i < n { u[(i + n, c)] } else { -u[(i - n, c)] };
        }
    }
    let gram = u.adjoint() * u;
    let skew = u.transpose() * &ju;
    let mut d: f64 = 0.0;
    for i in 0..n {
        for c in 0..n {
            let id = if i == c { 1.0 } else { 0.0 };
            d = d.max((gram[(i, c)] - id).norm()).max(skew[(i, c)].norm());
        }
    }
    // the second block must be exactly −JŪ
    for c in 0..n {
        for i in 0..m {
            let want = if i < n { -u[(i + n, c)].conj() } else { u[(i - n, c)].conj() };
            d = d.max((v[(i, c)] - want).norm());
        }
    }
    d
}

/// cos θ of the conjugate pairs: eigenvalues of the Hermitian part come in equal
/// pairs; adjacent sorted values are averaged.
fn paired(mut cos: Vec<f64>) -> Vec<f64> {
    cos.sort_by(f64::total_cmp);
    cos.chunks(2).map(|p| ((p[0] + p[1]) / 2.0).clamp(-1.0, 1.0).acos()).collect()
}

/// Signed eigenangles of a unitary matrix: e^{iθ} = v*Av for the eigenvectors v
/// of the Hermitian part (A is normal, so they are shared).
pub fn unitary_angles(a: &DMatrix<Complex64>) -> Vec<f64> {
    let h = (a + a.adjoint()) * Complex64::new(0.5, 0.0);
    let eig = h.symmetric_eigen();
    let av = a * &eig.eigenvectors;
    (0..a.nrows())
        .map(|j| eig.eigenvectors.column(j).dotc(&av.column(j)).arg())
        .collect()
}

/// |θ_j| ∈ [0, π] of a unitary matrix, from the Hermitian part only.
pub fn unitary_abs_angles(a: &DMatrix<Complex64>) -> Vec<f64> {
    let h = (a + a.adjoint()) * Complex64::new(0.5, 0.0);
    h.symmetric_eigenvalues().iter().map(|c| c.clamp(-1.0, 1.0).acos()).collect()
}

pub fn so_angles(a: &DMatrix<f64>) -> Vec<f64> {
    let h = (a + a.transpose()) * 0.5;
    paired(h.symmetric_eigenvalues().iter().copied().collect())
}

pub fn usp_angles(a: &DMatrix<Complex64>) -> Vec<f64> {
    let h = (a + a.adjoint()) * Complex64::new(0.5, 0.0);
    paired(h.symmetric_eigenvalues().iter().copied().collect())
}

/// Counts draws that had to be redrawn.
#[derive(Clone, Copy, Debug, Default, Serialize)]
pub struct Resampled(pub u64);

pub const SYMPLECTIC_TOL: f64 = 1e-8;

/// One Haar draw; U angles are signed only when `signed` is set (the estimator
/// needs |θ| alone).
pub fn sample<R: Rng + ?Sized>(
    group: SymmetryClass,
    n: usize,
    signed: bool,
    rng: &mut R,
    resampled: &mut Resampled,
) -> EigenangleSample {
    loop {
        let angles = match group {
            SymmetryClass::U => {
                let a = haar_unitary(n, rng);
                if signed {
                    unitary_angles(&a)
                } else {
                    unitary_abs_angles(&a)
                }
            }
            SymmetryClass::SOPlus => so_angles(&haar_so_even(n, rng)),
            SymmetryClass::USp => {
                let a = haar_usp(n, rng);
                if symplectic_defect(&a) > SYMPLECTIC_TOL {
                    resampled.0 += 1;
                    continue;
                }
                usp_angles(&a)
            }
        };
        match EigenangleSample::from_angles(angles) {
            Some(s) => return s,
            None => resampled.0 += 1,
        }
    }
}

pub fn sample_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> EigenangleSample {
    sample(SymmetryClass::U, n, true, rng, &mut Resampled::default())
}

pub fn sample_so_even<R: Rng + ?Sized>(n: usize, rng: &mut R) -> EigenangleSample {
    sample(SymmetryClass::SOPlus, n, false, rng, &mut Resampled::default())
}

pub fn sample_usp<R: Rng + ?Sized>(n: usize, rng: &mut R) -> EigenangleSample {
    sample(SymmetryClass::USp, n, false, rng, &mut Resampled::default())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn matrices_are_in_their_groups() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        let u = haar_unitary(5, &mut rng);
        let e = (&u.adjoint() * &u - DMatrix::identity(5, 5)).norm();
        assert!(e < 1e-12);
        for _ in 0..50 {
            let o = haar_so_even(3, &mut rng);
            assert!((o.determinant() - 1.0).abs() < 1e-8);
            assert!((&o.transpose() * &o - DMatrix::identity(6, 6)).norm() < 1e-12);
        }
        let s = haar_usp(4, &mut rng);
        assert!(symplectic_defect(&s) < 1e-12);
        assert!((&s.adjoint() * &s - DMatrix::identity(8, 8)).norm() < 1e-12);
    }

    #[test]
    fn angles_match_traces() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let u = haar_unitary(6, &mut rng);
        let th = unitary_angles(&u);
        let tr: Complex64 = th.iter().map(|t| Complex64::from_polar(1.0, *t)).sum();
        assert!((tr - u.trace()).norm() < 1e-10);
        let o = haar_so_even(4, &mut rng);
        let s: f64 = so_angles(&o).iter().map(|t| 2.0 * t.cos()).sum();
        assert!((s - o.trace()).abs() < 1e-10);
        let p = haar_usp(3, &mut rng);
        let s: f64 = usp_angles(&p).iter().map(|t| 2.0 * t.cos()).sum();
        assert!((Complex64::new(s, 0.0) - p.trace()).norm() < 1e-10);
    }
}
