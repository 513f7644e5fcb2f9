//! The internal Fourier matrix B(y), the internal cocycle B⁽ⁿ⁾(y) and its
//! scaled limit C(y), and Fourier–Bohr amplitudes computed from it.
//!
//! B(y) has entries Σ exp(2πi y·t⋆) over the starred displacements t⋆ of an
//! inflation rule, so B(0) is the substitution matrix. Products along the
//! contracting orbit y, σy, σ²y, … converge after scaling by |σ|^(d·n) to a
//! rank-one matrix C(y) = |c(y)⟩⟨u|, and the amplitudes of the model set are
//! A_i(k) = (λ_PF / 5^(d/2)) · c_i(k⋆). Convergence is exponential, which is
//! what makes amplitudes of fractal-window rules computable at all.

use crate::golden::{FourierIndex, SIGMA_F64};
use crate::inflation::{pf_data, InflationError, InflationRule, PfData};
use num_complex::Complex64;
use std::f64::consts::TAU as TWO_PI;

/// Default accuracy target for the cocycle limit.
pub const DEFAULT_TOL: f64 = 1e-12;

/// A small dense complex matrix (N ≤ 4 in this crate).
#[derive(Clone, Debug, PartialEq)]
pub struct CMatrix {
    pub n: usize,
    pub data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(n: usize) -> Self {
        CMatrix {
            n,
            data: vec![Complex64::new(0.0, 0.0); n * n],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    /// Outer product |a⟩⟨b| of real vectors.
    pub fn outer(a: &[f64], b: &[f64]) -> Self {
        let n = a.len();
        let mut m = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                m[(i, j)] = Complex64::new(a[i] * b[j], 0.0);
            }
        }
        m
    }

    pub fn from_integer(m: &[Vec<u64>]) -> Self {
        let n = m.len();
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = Complex64::new(m[i][j] as f64, 0.0);
            }
        }
        out
    }

    pub fn mul(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n);
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for k in 0..n {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..n {
                    out[(i, j)] += a * rhs[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        let n = self.n;
        let mut out = vec![Complex64::new(0.0, 0.0); n];
        for i in 0..n {
            for j in 0..n {
                out[i] += self[(i, j)] * v[j];
            }
        }
        out
    }

    pub fn scale(&self, s: f64) -> CMatrix {
        CMatrix {
            n: self.n,
            data: self.data.iter().map(|z| z * s).collect(),
        }
    }

    pub fn sub(&self, rhs: &CMatrix) -> CMatrix {
        assert_eq!(self.n, rhs.n);
        CMatrix {
            n: self.n,
            data: self
                .data
                .iter()
                .zip(&rhs.data)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    /// Max-norm over entries.
    pub fn norm_max(&self) -> f64 {
        self.data.iter().map(|z| z.norm()).fold(0.0, f64::max)
    }

    /// Conjugate transpose.
    pub fn adjoint(&self) -> CMatrix {
        let n = self.n;
        let mut out = CMatrix::zeros(n);
        for i in 0..n {
            for j in 0..n {
                out[(i, j)] = self[(j, i)].conj();
            }
        }
        out
    }

    /// All singular values in descending order, by one-sided Jacobi.
    ///
    /// Working on the columns directly (rather than on M†M) keeps tiny
    /// singular values resolvable down to machine precision relative to σ₁,
    /// which the rank-1 diagnostics of the cocycle limit rely on.
    pub fn singular_values(&self) -> Vec<f64> {
        let n = self.n;
        let mut cols: Vec<Vec<Complex64>> = (0..n)
            .map(|j| (0..n).map(|i| self[(i, j)]).collect())
            .collect();
        for _sweep in 0..60 {
            let mut off = 0.0f64;
            for i in 0..n {
                for j in (i + 1)..n {
                    let a: f64 = cols[i].iter().map(|z| z.norm_sqr()).sum();
                    let b: f64 = cols[j].iter().map(|z| z.norm_sqr()).sum();
                    let g: Complex64 = cols[i]
                        .iter()
                        .zip(&cols[j])
                        .map(|(x, y)| x.conj() * y)
                        .sum();
                    let gn = g.norm();
                    if gn <= f64::MIN_POSITIVE || a == 0.0 || b == 0.0 {
                        continue;
                    }
                    off = off.max(gn / (a * b).sqrt());
                    if gn < 1e-300 || gn / (a * b).sqrt() < 1e-17 {
                        continue;
                    }
                    // Rotate the phase of column j so the pivot is real, then
                    // apply the classical real Jacobi rotation.
                    let phase = g / gn;
                    let zeta = (b - a) / (2.0 * gn);
                    let t = zeta.signum() / (zeta.abs() + (1.0 + zeta * zeta).sqrt());
                    let c = 1.0 / (1.0 + t * t).sqrt();
                    let s = c * t;
                    for r in 0..n {
                        let xi = cols[i][r];
                        let xj = cols[j][r] * phase.conj();
                        cols[i][r] = c * xi - s * xj;
                        cols[j][r] = (s * xi + c * xj) * phase;
                    }
                }
            }
            if off < 1e-16 {
                break;
            }
        }
        let mut sv: Vec<f64> = cols
            .iter()
            .map(|col| col.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt())
            .collect();
        sv.sort_by(|x, y| y.partial_cmp(x).unwrap());
        sv
    }

    /// Convenience accessor for rank-1 checks.
    pub fn top_two_singular_values(&self) -> (f64, f64) {
        let sv = self.singular_values();
        (sv[0], sv.get(1).copied().unwrap_or(0.0))
    }
}

impl std::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;
    #[inline]
    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.n + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for CMatrix {
    #[inline]
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.n + j]
    }
}

/// The cocycle limit at one point: C(y)|v⟩ together with convergence info.
#[derive(Clone, Debug)]
pub struct CocycleLimit {
    pub c: Vec<Complex64>,
    pub n_used: u32,
    pub residual: f64,
}

/// Evaluator for B(y), B⁽ⁿ⁾(y), C(y) and Fourier–Bohr amplitudes of one rule.
///
/// Immutable after construction; evaluation at distinct y or k is pure, so
/// callers may fan out over points freely.
#[derive(Clone, Debug)]
pub struct CocycleEvaluator {
    dimension: usize,
    size: usize,
    /// Starred displacements t⋆ per (i, j), as doubles.
    tstar: Vec<Vec<Vec<[f64; 2]>>>,
    pf: PfData,
}

impl CocycleEvaluator {
    pub fn new(rule: &InflationRule) -> Result<Self, InflationError> {
        let pf = pf_data(&rule.substitution_matrix())?;
        let tstar = rule
            .displacements
            .iter()
            .map(|row| {
                row.iter()
                    .map(|set| set.iter().map(|t| t.star_value()).collect())
                    .collect()
            })
            .collect();
        Ok(CocycleEvaluator {
            dimension: rule.dimension,
            size: rule.tile_count(),
            tstar,
            pf,
        })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn pf(&self) -> &PfData {
        &self.pf
    }

    /// B(y)ᵢⱼ = Σ_{t ∈ T[i][j]} exp(2πi y·t⋆).
    pub fn fourier_matrix(&self, y: [f64; 2]) -> CMatrix {
        let mut m = CMatrix::zeros(self.size);
        for i in 0..self.size {
            for j in 0..self.size {
                let mut acc = Complex64::new(0.0, 0.0);
                for t in &self.tstar[i][j] {
                    let phase = TWO_PI * (y[0] * t[0] + y[1] * t[1]);
                    acc += Complex64::from_polar(1.0, phase);
                }
                m[(i, j)] = acc;
            }
        }
        m
    }

    /// B⁽ⁿ⁾(y) = B(y) B(σy) ⋯ B(σⁿ⁻¹y).
    pub fn cocycle_product(&self, y: [f64; 2], n: u32) -> CMatrix {
        assert!(n >= 1, "cocycle product needs n >= 1");
        let mut acc = self.fourier_matrix(y);
        let mut point = y;
        for _ in 1..n {
            point = [SIGMA_F64 * point[0], SIGMA_F64 * point[1]];
            acc = acc.mul(&self.fourier_matrix(point));
        }
        acc
    }

    /// Number of cocycle steps needed to push σⁿy below `tol`.
    fn steps_for(&self, y: [f64; 2], tol: f64) -> u32 {
        let norm = y[0].abs().max(y[1].abs()).max(1.0);
        let sigma = SIGMA_F64.abs();
        let mut n = (norm / tol).ln() / (1.0 / sigma).ln();
        if !n.is_finite() || n < 1.0 {
            n = 1.0;
        }
        n.ceil() as u32
    }

    /// The scaled limit C(y) ≈ |σ|^(d·n) B⁽ⁿ⁾(y) P, as a full matrix.
    ///
    /// The tail C(σⁿy) is replaced by P = C(0); the first-order error decays
    /// like |σ|ⁿ‖y‖, so n is chosen from `tol`.
    pub fn limit_matrix(&self, y: [f64; 2], tol: f64) -> (CMatrix, u32, f64) {
        assert!(tol > 0.0);
        let n = self.steps_for(y, tol);
        let product = self.cocycle_product(y, n);
        let projector = CMatrix::outer(&self.pf.right, &self.pf.left);
        let scale = SIGMA_F64.abs().powi((self.dimension as i32) * (n as i32));
        let residual = SIGMA_F64.abs().powi(n as i32) * y[0].abs().max(y[1].abs());
        (product.mul(&projector).scale(scale), n, residual)
    }

    /// |c(y)⟩ = C(y)|v⟩, with |c(0)⟩ = |v⟩.
    pub fn limit_c(&self, y: [f64; 2], tol: f64) -> CocycleLimit {
        let (matrix, n_used, residual) = self.limit_matrix(y, tol);
        let v: Vec<Complex64> = self
            .pf
            .right
            .iter()
            .map(|&x| Complex64::new(x, 0.0))
            .collect();
        CocycleLimit {
            c: matrix.mul_vec(&v),
            n_used,
            residual,
        }
    }

    /// Fourier–Bohr amplitudes Aᵢ(k) = (λ_PF / 5^(d/2)) · cᵢ(k⋆).
    ///
    /// At k = 0 this returns the densities dens(Λ)·vᵢ of the control points.
    pub fn fb_amplitude(&self, k: &[FourierIndex]) -> Vec<Complex64> {
        assert_eq!(k.len(), self.dimension, "one Fourier index per axis");
        let mut kstar = [0.0; 2];
        for (axis, idx) in k.iter().enumerate() {
            kstar[axis] = idx.star_value();
        }
        let limit = self.limit_c(kstar, DEFAULT_TOL);
        let factor = self.pf.lambda / 5f64.powf(self.dimension as f64 / 2.0);
        limit.c.into_iter().map(|z| z * factor).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden::TAU_F64;
    use crate::inflation::{fibonacci_rule, matrix_power, square_rule};

    fn fib_eval() -> CocycleEvaluator {
        CocycleEvaluator::new(&fibonacci_rule()).unwrap()
    }

    fn square_eval() -> CocycleEvaluator {
        CocycleEvaluator::new(&square_rule()).unwrap()
    }

    #[test]
    fn fourier_matrix_at_zero_is_m() {
        let eval = fib_eval();
        let b0 = eval.fourier_matrix([0.0, 0.0]);
        assert_eq!(b0[(0, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(b0[(0, 1)], Complex64::new(1.0, 0.0));
        assert_eq!(b0[(1, 0)], Complex64::new(1.0, 0.0));
        assert_eq!(b0[(1, 1)], Complex64::new(0.0, 0.0));
    }

    #[test]
    fn fourier_matrix_phase_entry() {
        // B(y)₁₀ = exp(2πi σ y) for the chain.
        let eval = fib_eval();
        let y = 0.731;
        let b = eval.fourier_matrix([y, 0.0]);
        let expected = Complex64::from_polar(1.0, TWO_PI * SIGMA_F64 * y);
        assert!((b[(1, 0)] - expected).norm() < 1e-14);
    }

    #[test]
    fn square_fourier_matrix_structure() {
        let eval = square_eval();
        let y = [0.4, -0.9];
        let b = eval.fourier_matrix(y);
        for j in 0..4 {
            assert!((b[(3, j)] - Complex64::new(1.0, 0.0)).norm() < 1e-15);
        }
        let expected = Complex64::from_polar(1.0, TWO_PI * SIGMA_F64 * (y[0] + y[1]));
        assert!((b[(0, 3)] - expected).norm() < 1e-14);
        for j in 0..3 {
            assert_eq!(b[(0, j)], Complex64::new(0.0, 0.0));
        }
    }

    #[test]
    fn cocycle_at_zero_gives_matrix_powers() {
        for (eval, rule) in [
            (fib_eval(), fibonacci_rule()),
            (square_eval(), square_rule()),
        ] {
            let m = rule.substitution_matrix();
            for n in 1..=12 {
                let bn = eval.cocycle_product([0.0, 0.0], n);
                let mn = matrix_power(&m, n);
                for i in 0..rule.tile_count() {
                    for j in 0..rule.tile_count() {
                        assert_eq!(bn[(i, j)], Complex64::new(mn[i][j] as f64, 0.0));
                    }
                }
            }
        }
    }

    #[test]
    fn cocycle_splitting_identity() {
        let eval = square_eval();
        let y = [0.37, 1.21];
        let full = eval.cocycle_product(y, 5);
        let sigma2y = [
            SIGMA_F64 * SIGMA_F64 * y[0],
            SIGMA_F64 * SIGMA_F64 * y[1],
        ];
        let split = eval.cocycle_product(y, 2).mul(&eval.cocycle_product(sigma2y, 3));
        assert!(full.sub(&split).norm_max() < 1e-12);
    }

    #[test]
    fn limit_at_zero_is_v() {
        for eval in [fib_eval(), square_eval()] {
            let lim = eval.limit_c([0.0, 0.0], 1e-10);
            for (ci, vi) in lim.c.iter().zip(&eval.pf().right) {
                assert!((ci - Complex64::new(*vi, 0.0)).norm() < 1e-10);
            }
        }
    }

    /// The window transforms of the chain in closed form, normalised so that
    /// c(0) = v (one factor τ below the raw interval transforms).
    fn closed_form_c(y: f64) -> (Complex64, Complex64) {
        let h = |lo: f64, hi: f64| -> Complex64 {
            if y.abs() < 1e-12 {
                Complex64::new(hi - lo, 0.0)
            } else {
                let e = |x: f64| Complex64::from_polar(1.0, TWO_PI * y * x);
                (e(hi) - e(lo)) / Complex64::new(0.0, TWO_PI * y)
            }
        };
        let ca = h(TAU_F64 - 2.0, TAU_F64 - 1.0) / TAU_F64;
        let cb = h(-1.0, TAU_F64 - 2.0) / TAU_F64;
        (ca, cb)
    }

    #[test]
    fn limit_matches_closed_form_on_the_line() {
        let eval = fib_eval();
        let mut y = -20.0;
        while y <= 20.0 {
            let lim = eval.limit_c([y, 0.0], 1e-12);
            let (ca, cb) = closed_form_c(y);
            assert!((lim.c[0] - ca).norm() < 1e-9, "c_a at y = {y}");
            assert!((lim.c[1] - cb).norm() < 1e-9, "c_b at y = {y}");
            y += 0.7919;
        }
    }

    #[test]
    fn eigen_relation_and_rank_one() {
        let eval = square_eval();
        let m = CMatrix::from_integer(&square_rule().substitution_matrix());
        let lambda = eval.pf().lambda;
        let mut rng_state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            rng_state = rng_state.wrapping_mul(6364136223846793005).wrapping_add(1);
            ((rng_state >> 11) as f64 / (1u64 << 53) as f64 - 0.5) * 30.0
        };
        for _ in 0..100 {
            let y = [next(), next()];
            let (c, _, _) = eval.limit_matrix(y, 1e-12);
            // τ² C(y) = C(y) M
            let lhs = c.scale(lambda);
            let rhs = c.mul(&m);
            assert!(lhs.sub(&rhs).norm_max() < 1e-8, "eigen relation at {y:?}");
            let (s1, s2) = c.top_two_singular_values();
            assert!(s2 < 1e-8 * s1.max(1e-30), "rank-1 at {y:?}: {s1} {s2}");
        }
    }

    #[test]
    fn product_form_of_planar_limit() {
        let eval2 = square_eval();
        let eval1 = fib_eval();
        let pts = [[0.3, -1.7], [2.4, 0.9], [-4.1, 3.3]];
        for y in pts {
            let c2 = eval2.limit_c(y, 1e-12).c;
            let cx = eval1.limit_c([y[0], 0.0], 1e-12).c;
            let cy = eval1.limit_c([y[1], 0.0], 1e-12).c;
            // Types: 0 = (b,b), 1 = (a,b), 2 = (b,a), 3 = (a,a).
            let expected = [
                cx[1] * cy[1],
                cx[0] * cy[1],
                cx[1] * cy[0],
                cx[0] * cy[0],
            ];
            for (got, want) in c2.iter().zip(expected) {
                assert!((got - want).norm() < 1e-9, "at {y:?}");
            }
        }
    }

    #[test]
    fn amplitudes_at_zero_are_densities() {
        let eval = fib_eval();
        let a = eval.fb_amplitude(&[FourierIndex::ZERO]);
        let total: Complex64 = a.iter().sum();
        assert!((total.re - TAU_F64 / 5f64.sqrt()).abs() < 1e-12);
        assert!(total.im.abs() < 1e-12);

        let eval2 = square_eval();
        let a2 = eval2.fb_amplitude(&[FourierIndex::ZERO, FourierIndex::ZERO]);
        let dens = TAU_F64 * TAU_F64 / 5.0;
        let expected = [0.076_393_2, 0.123_606_8, 0.123_606_8, 0.2];
        for (got, want) in a2.iter().zip(expected) {
            assert!((got.re - want).abs() < 1e-6);
        }
        let total2: Complex64 = a2.iter().sum();
        assert!((total2.re - dens).abs() < 1e-12);
    }

    #[test]
    fn amplitude_sum_matches_sinc_formula() {
        let eval = fib_eval();
        let k = FourierIndex::new(1, 0);
        let a = eval.fb_amplitude(&[k]);
        let total = a[0] + a[1];
        let ks = k.star_value();
        let x = std::f64::consts::PI * TAU_F64 * ks;
        let sinc = x.sin() / x;
        let expected = Complex64::from_polar(1.0, std::f64::consts::PI * ks * (TAU_F64 - 2.0))
            * (TAU_F64 / 5f64.sqrt())
            * sinc;
        assert!((total - expected).norm() < 1e-10);
        assert!((total.norm() - 0.2430).abs() < 1e-4);
    }
}
