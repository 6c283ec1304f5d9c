//! Matrix exponentials for the truncated-Fock oracle.
//!
//! Dense path: scaling-and-squaring with a Pade(13) approximant and a
//! hand-rolled partially pivoted LU solve (no external linear-algebra
//! backend). Vector path: the su(1,1) generator couples only `n -> n, n±2`,
//! so `exp(G) v` is evaluated by uniformly scaled Taylor steps on the banded
//! form, each step rigorously inside the Taylor convergence budget.

use ndarray::Array2;
use num_complex::Complex64 as C64;

/// Pade(13) numerator coefficients.
const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

/// Scaling threshold for Pade(13) (Higham 2005, Table 10.2).
const THETA13: f64 = 5.371_920_351_148_152;

/// Per-step norm budget of the scaled-Taylor vector path; 30 terms at this
/// norm leave a remainder below 1e-17.
const TAYLOR_THETA: f64 = 3.5;
const TAYLOR_MAX_TERMS: usize = 46;

/// 1-norm (maximum absolute column sum).
pub fn one_norm(a: &Array2<C64>) -> f64 {
    let mut worst = 0.0f64;
    for col in a.columns() {
        let s: f64 = col.iter().map(|z| z.norm()).sum();
        worst = worst.max(s);
    }
    worst
}

/// Dense `exp(A)` by Pade(13) scaling-and-squaring.
pub fn expm_dense(a: &Array2<C64>) -> Array2<C64> {
    let n = a.nrows();
    assert_eq!(n, a.ncols(), "expm needs a square matrix");
    if n == 0 {
        return a.clone();
    }

    let norm = one_norm(a);
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as u32
    } else {
        0
    };
    let scale = C64::new(1.0 / f64::powi(2.0, squarings as i32), 0.0);
    let a_s = a.mapv(|z| z * scale);

    let eye = Array2::<C64>::eye(n);
    let a2 = a_s.dot(&a_s);
    let a4 = a2.dot(&a2);
    let a6 = a2.dot(&a4);

    // u = A (A6 (b13 A6 + b11 A4 + b9 A2) + b7 A6 + b5 A4 + b3 A2 + b1 I)
    let w1 = &a6 * c(PADE13[13]) + &a4 * c(PADE13[11]) + &a2 * c(PADE13[9]);
    let w2 = a6.dot(&w1)
        + &a6 * c(PADE13[7])
        + &a4 * c(PADE13[5])
        + &a2 * c(PADE13[3])
        + &eye * c(PADE13[1]);
    let u = a_s.dot(&w2);
    // v = A6 (b12 A6 + b10 A4 + b8 A2) + b6 A6 + b4 A4 + b2 A2 + b0 I
    let z1 = &a6 * c(PADE13[12]) + &a4 * c(PADE13[10]) + &a2 * c(PADE13[8]);
    let v = a6.dot(&z1)
        + &a6 * c(PADE13[6])
        + &a4 * c(PADE13[4])
        + &a2 * c(PADE13[2])
        + &eye * c(PADE13[0]);

    // solve (v - u) r = (v + u)
    let lhs = &v - &u;
    let rhs = &v + &u;
    let mut r = lu_solve(lhs, rhs);

    for _ in 0..squarings {
        r = r.dot(&r);
    }
    r
}

fn c(x: f64) -> C64 {
    C64::new(x, 0.0)
}

/// Solves `A X = B` by LU with partial pivoting, consuming both operands.
fn lu_solve(mut a: Array2<C64>, mut b: Array2<C64>) -> Array2<C64> {
    let n = a.nrows();
    let ncols = b.ncols();
    for k in 0..n {
        // pivot
        let mut piv = k;
        let mut best = a[[k, k]].norm();
        for i in (k + 1)..n {
            let v = a[[i, k]].norm();
            if v > best {
                best = v;
                piv = i;
            }
        }
        assert!(best > 0.0, "singular matrix in Pade solve");
        if piv != k {
            for j in 0..n {
                a.swap([k, j], [piv, j]);
            }
            for j in 0..ncols {
                b.swap([k, j], [piv, j]);
            }
        }
        let inv = 1.0 / a[[k, k]];
        for i in (k + 1)..n {
            let factor = a[[i, k]] * inv;
            if factor == C64::new(0.0, 0.0) {
                continue;
            }
            a[[i, k]] = factor;
            for j in (k + 1)..n {
                let akj = a[[k, j]];
                a[[i, j]] -= factor * akj;
            }
            for j in 0..ncols {
                let bkj = b[[k, j]];
                b[[i, j]] -= factor * bkj;
            }
        }
    }
    // back substitution
    for j in 0..ncols {
        for i in (0..n).rev() {
            let mut acc = b[[i, j]];
            for k in (i + 1)..n {
                acc -= a[[i, k]] * b[[k, j]];
            }
            b[[i, j]] = acc / a[[i, i]];
        }
    }
    b
}

/// The su(1,1) generator `i alpha K0 + tau K+ - conj(tau) K-` in banded form:
/// a diagonal plus couplings `n <-> n±2`.
pub struct BandedGenerator {
    dim: usize,
    alpha: f64,
    tau: C64,
    /// `sqrt((n+1)(n+2))/2` for `n = 0..dim-2`.
    couple: Vec<f64>,
}

impl BandedGenerator {
    pub fn new(alpha: f64, tau: C64, dim: usize) -> Self {
        assert!(dim >= 4, "need at least four Fock states");
        let couple = (0..dim.saturating_sub(2))
            .map(|n| ((n as f64 + 1.0) * (n as f64 + 2.0)).sqrt() / 2.0)
            .collect();
        Self {
            dim,
            alpha,
            tau,
            couple,
        }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// `out = G v`.
    pub fn apply(&self, v: &[C64], out: &mut [C64]) {
        let tau = self.tau;
        let tau_conj = tau.conj();
        for n in 0..self.dim {
            let diag = C64::new(0.0, self.alpha * (2.0 * n as f64 + 1.0) / 4.0);
            let mut acc = diag * v[n];
            if n >= 2 {
                acc += tau * self.couple[n - 2] * v[n - 2];
            }
            if n + 2 < self.dim {
                acc -= tau_conj * self.couple[n] * v[n + 2];
            }
            out[n] = acc;
        }
    }

    /// 1-norm: max over columns of `|diag| + |tau|(up + down couplings)`.
    pub fn one_norm(&self) -> f64 {
        let t = self.tau.norm();
        let mut worst = 0.0f64;
        for n in 0..self.dim {
            let mut s = self.alpha.abs() * (2.0 * n as f64 + 1.0) / 4.0;
            if n + 2 < self.dim {
                s += t * self.couple[n];
            }
            if n >= 2 {
                s += t * self.couple[n - 2];
            }
            worst = worst.max(s);
        }
        worst
    }

    /// Largest out-of-basis coupling magnitude (the `K+` element that would
    /// feed `|dim>` and `|dim+1>`).
    pub fn boundary_coupling(&self) -> f64 {
        let n = self.dim as f64;
        self.tau.norm() * (n * (n + 1.0)).sqrt() / 2.0
    }

    /// `exp(G) v` by `s` uniformly scaled Taylor steps with
    /// `||G||_1 / s <= TAYLOR_THETA`.
    pub fn expm_action(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        let steps = ((self.one_norm() / TAYLOR_THETA).ceil() as usize).max(1);
        let inv_steps = 1.0 / steps as f64;

        let mut state = v.to_vec();
        let mut term = vec![C64::new(0.0, 0.0); self.dim];
        let mut next = vec![C64::new(0.0, 0.0); self.dim];
        for _ in 0..steps {
            term.copy_from_slice(&state);
            let mut acc = state.clone();
            for k in 1..=TAYLOR_MAX_TERMS {
                self.apply(&term, &mut next);
                let f = inv_steps / k as f64;
                let mut term_norm = 0.0f64;
                let mut acc_norm = 0.0f64;
                for i in 0..self.dim {
                    let t = next[i] * f;
                    term[i] = t;
                    acc[i] += t;
                    term_norm = term_norm.max(t.norm_sqr());
                    acc_norm = acc_norm.max(acc[i].norm_sqr());
                }
                if k >= 8 && term_norm <= 1e-34 * acc_norm.max(f64::MIN_POSITIVE) {
                    break;
                }
            }
            state = acc;
        }
        state
    }
}
