//! Pure-point diffraction: peak enumeration on the Fourier module,
//! intensities for weighted combs, and independent brute-force oracles.
//!
//! Peaks live on ℤ[τ]/√5 per axis. Because the amplitudes decay in the
//! internal coordinate k⋆ (the windows are compact), truncating by |k⋆| gives
//! a complete finite peak list for any physical cutoff; intensity thresholds
//! are never used. The module also carries the Bernoulli-randomised chain of
//! the one-dimensional model, whose diffraction splits into a pure-point part
//! with averaged weights plus a constant absolutely continuous background.

use crate::cocycle::CocycleEvaluator;
use crate::golden::{FourierIndex, GoldenNumber, SQRT5_F64, TAU_F64};
use crate::inflation::{dpv_rule, fibonacci_rule, DpvCode, Patch};
use num_complex::Complex64;
use rand::distributions::{Bernoulli, Distribution};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::collections::BTreeMap;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum DiffractionError {
    #[error("probability must lie in [0, 1], got {0}")]
    BadProbability(f64),
    #[error("region has empty interior")]
    EmptyRegion,
    #[error("patch dimension {patch} does not match region dimension {region}")]
    DimensionMismatch { patch: usize, region: usize },
}

/// Density of the unit-scaled Fibonacci chain, (τ+2)/5 = τ/√5.
pub const CHAIN_DENSITY: f64 = TAU_F64 / SQRT5_F64;

/// One Bragg peak of a weighted Dirac comb.
#[derive(Clone, Debug)]
pub struct Peak {
    /// Module indices, one (p, q) pair per axis.
    pub index: Vec<FourierIndex>,
    /// Physical position per axis.
    pub k: [f64; 2],
    /// Internal position per axis.
    pub kstar: [f64; 2],
    /// Per-type Fourier–Bohr amplitudes Aᵢ(k).
    pub amplitudes: Vec<Complex64>,
    /// Weighted amplitude Σᵢ uᵢ Aᵢ(k).
    pub weighted: Complex64,
    /// I(k) = |Σᵢ uᵢ Aᵢ(k)|².
    pub intensity: f64,
}

/// All module points with |k| ≤ kmax and |k⋆| ≤ ystarmax on every axis.
///
/// The (p, q) search box follows from inverting the linear map
/// (p, q) ↦ (p + qτ, p + qσ), so no point is missed.
pub fn enumerate_module(d: usize, kmax: f64, ystarmax: f64) -> Vec<Vec<FourierIndex>> {
    assert!(d == 1 || d == 2, "dimension must be 1 or 2");
    assert!(kmax >= 0.0 && ystarmax >= 0.0);
    let axis = enumerate_axis(kmax, ystarmax);
    match d {
        1 => axis.into_iter().map(|ix| vec![ix]).collect(),
        _ => {
            let mut out = Vec::with_capacity(axis.len() * axis.len());
            for &a in &axis {
                for &b in &axis {
                    out.push(vec![a, b]);
                }
            }
            out
        }
    }
}

fn enumerate_axis(kmax: f64, ystarmax: f64) -> Vec<FourierIndex> {
    let q_bound = (kmax + ystarmax).ceil() as i64 + 1;
    let p_bound = (kmax * SQRT5_F64 + TAU_F64 * (kmax + ystarmax)).ceil() as i64 + 1;
    let k_cut = kmax * (1.0 + 1e-12) + 1e-12;
    let ys_cut = ystarmax * (1.0 + 1e-12) + 1e-12;
    let mut out = Vec::new();
    for p in -p_bound..=p_bound {
        for q in -q_bound..=q_bound {
            let ix = FourierIndex::new(p, q);
            if ix.value().abs() <= k_cut && ix.star_value().abs() <= ys_cut {
                out.push(ix);
            }
        }
    }
    out.sort();
    out
}

fn peak_from_amplitudes(
    index: Vec<FourierIndex>,
    amplitudes: Vec<Complex64>,
    weights: &[Complex64],
) -> Peak {
    let mut k = [0.0; 2];
    let mut kstar = [0.0; 2];
    for (axis, ix) in index.iter().enumerate() {
        k[axis] = ix.value();
        kstar[axis] = ix.star_value();
    }
    let weighted: Complex64 = weights.iter().zip(&amplitudes).map(|(u, a)| u * a).sum();
    Peak {
        index,
        k,
        kstar,
        amplitudes,
        weighted,
        intensity: weighted.norm_sqr(),
    }
}

/// Sort peaks by descending intensity; ties break on the module indices so
/// output order is reproducible bit for bit.
fn sort_peaks(peaks: &mut [Peak]) {
    peaks.sort_by(|a, b| {
        b.intensity
            .total_cmp(&a.intensity)
            .then_with(|| a.index.cmp(&b.index))
    });
}

/// The diffraction of the weighted control-point comb of a rule:
/// γ̂ = Σ I(k) δ_k over the Fourier module, with amplitudes from the cocycle.
pub fn diffract(
    eval: &CocycleEvaluator,
    weights: &[Complex64],
    kmax: f64,
    ystarmax: f64,
) -> Vec<Peak> {
    assert_eq!(weights.len(), eval.size(), "one weight per tile type");
    let points = enumerate_module(eval.dimension(), kmax, ystarmax);
    let mut peaks: Vec<Peak> = points
        .into_par_iter()
        .map(|index| {
            let amplitudes = eval.fb_amplitude(&index);
            peak_from_amplitudes(index, amplitudes, weights)
        })
        .collect();
    sort_peaks(&mut peaks);
    peaks
}

/// Transform of the indicator of [lo, hi], evaluated at k⋆ and normalised by
/// √5: the amplitude contribution of a model set with that window.
///
/// Uses the midpoint-sinc form, which is stable for k⋆ → 0.
fn interval_amplitude(lo: f64, hi: f64, kstar: f64) -> Complex64 {
    let width = hi - lo;
    let x = PI * kstar * width;
    let sinc = if x.abs() < 1e-8 { 1.0 } else { x.sin() / x };
    Complex64::from_polar(1.0, PI * kstar * (lo + hi)) * (width / SQRT5_F64) * sinc
}

/// Closed-form chain amplitudes (A_a, A_b) from the interval windows
/// W_a = [τ−2, τ−1] and W_b = [−1, τ−2].
pub fn closed_form_1d(k: FourierIndex) -> (Complex64, Complex64) {
    let ks = k.star_value();
    let a = interval_amplitude(TAU_F64 - 2.0, TAU_F64 - 1.0, ks);
    let b = interval_amplitude(-1.0, TAU_F64 - 2.0, ks);
    (a, b)
}

/// An axis-aligned averaging region for finite-patch amplitude sums.
#[derive(Clone, Copy, Debug)]
pub struct Region {
    pub dimension: usize,
    pub lo: [f64; 2],
    pub hi: [f64; 2],
}

impl Region {
    pub fn interval(lo: f64, hi: f64) -> Self {
        Region {
            dimension: 1,
            lo: [lo, 0.0],
            hi: [hi, 0.0],
        }
    }

    pub fn rect(lo: [f64; 2], hi: [f64; 2]) -> Self {
        Region {
            dimension: 2,
            lo,
            hi,
        }
    }

    pub fn volume(&self) -> f64 {
        (0..self.dimension)
            .map(|ax| self.hi[ax] - self.lo[ax])
            .product()
    }

    fn contains(&self, x: [f64; 2]) -> bool {
        (0..self.dimension).all(|ax| x[ax] >= self.lo[ax] && x[ax] < self.hi[ax])
    }
}

/// Compensated complex accumulator; exponential sums over 10⁶ points lose a
/// few digits without it.
#[derive(Clone, Copy, Default)]
struct KahanComplex {
    sum: Complex64,
    carry: Complex64,
}

impl KahanComplex {
    #[inline]
    fn add(&mut self, value: Complex64) {
        let y = value - self.carry;
        let t = self.sum + y;
        self.carry = (t - self.sum) - y;
        self.sum = t;
    }
}

/// Finite-size Fourier–Bohr sums over a patch region:
/// Aᵢ ≈ (1/vol) Σ_{x ∈ Λᵢ ∩ region} exp(−2πi k·x), error O(1/R) in the
/// region inradius R.
pub fn patch_amplitude(
    patch: &Patch,
    region: &Region,
    k: &[FourierIndex],
) -> Result<Vec<Complex64>, DiffractionError> {
    if region.volume() <= 0.0 {
        return Err(DiffractionError::EmptyRegion);
    }
    if region.dimension != patch.dimension {
        return Err(DiffractionError::DimensionMismatch {
            patch: patch.dimension,
            region: region.dimension,
        });
    }
    let kvec: Vec<f64> = k.iter().map(|ix| ix.value()).collect();
    let types = 1 + patch.tiles.iter().map(|&(t, _)| t).max().unwrap_or(0);
    let mut acc = vec![KahanComplex::default(); types];
    for &(tile, anchor) in &patch.tiles {
        let x = anchor.value();
        if !region.contains(x) {
            continue;
        }
        let phase: f64 = (0..patch.dimension).map(|ax| kvec[ax] * x[ax]).sum();
        acc[tile].add(Complex64::from_polar(1.0, -2.0 * PI * phase));
    }
    let vol = region.volume();
    Ok(acc.into_iter().map(|k| k.sum / vol).collect())
}

/// Total amplitude at an arbitrary real k, for probing positions off the
/// Fourier module.
pub fn patch_amplitude_at(
    patch: &Patch,
    region: &Region,
    k: [f64; 2],
) -> Result<Complex64, DiffractionError> {
    if region.volume() <= 0.0 {
        return Err(DiffractionError::EmptyRegion);
    }
    let mut acc = KahanComplex::default();
    for &(_, anchor) in &patch.tiles {
        let x = anchor.value();
        if !region.contains(x) {
            continue;
        }
        let phase: f64 = (0..patch.dimension).map(|ax| k[ax] * x[ax]).sum();
        acc.add(Complex64::from_polar(1.0, -2.0 * PI * phase));
    }
    Ok(acc.sum / region.volume())
}

/// Result of checking A′ᵢ(k) = Aᵢ(Sᵀk) between the sheared variation (0,0,1)
/// and the direct product rule, with S = [[1,−1],[0,1]].
#[derive(Clone, Debug)]
pub struct ShearReport {
    pub checked: usize,
    pub max_deviation: f64,
}

/// Sᵀ acts on module indices as ((p₁,q₁),(p₂,q₂)) ↦ ((p₁,q₁),(p₂−p₁,q₂−q₁));
/// in particular it maps the Fourier module onto itself.
pub fn shear_transpose_index(k: &[FourierIndex]) -> Vec<FourierIndex> {
    assert_eq!(k.len(), 2);
    vec![k[0], k[1] - k[0]]
}

pub fn shear_check(k_list: &[Vec<FourierIndex>]) -> ShearReport {
    let base = CocycleEvaluator::new(&dpv_rule(DpvCode::new(0, 0, 0).unwrap()))
        .expect("direct product rule is primitive");
    let sheared = CocycleEvaluator::new(&dpv_rule(DpvCode::new(0, 0, 1).unwrap()))
        .expect("sheared rule is primitive");
    let mut max_deviation = 0.0f64;
    for k in k_list {
        let lhs = sheared.fb_amplitude(k);
        let rhs = base.fb_amplitude(&shear_transpose_index(k));
        for (a, b) in lhs.iter().zip(&rhs) {
            max_deviation = max_deviation.max((a - b).norm());
        }
    }
    ShearReport {
        checked: k_list.len(),
        max_deviation,
    }
}

/// Labels of the randomised chain: kept a, relabelled ā, and b.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum RandLabel {
    A,
    ABar,
    B,
}

/// A Fibonacci chain with Bernoulli-randomised a-positions.
#[derive(Clone, Debug)]
pub struct RandomizedChain {
    pub p_keep: f64,
    pub seed: u64,
    pub tiles: Vec<(RandLabel, GoldenNumber)>,
}

/// Relabel each a-tile independently as ā with probability q = 1 − p.
///
/// Randomness comes from a ChaCha8 generator seeded with `seed`, so runs are
/// reproducible across platforms.
pub fn randomize_chain(
    patch: &Patch,
    p: f64,
    seed: u64,
) -> Result<RandomizedChain, DiffractionError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(DiffractionError::BadProbability(p));
    }
    assert_eq!(patch.dimension, 1, "randomisation applies to the chain");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let relabel = Bernoulli::new(1.0 - p).expect("valid probability");
    let tiles = patch
        .tiles
        .iter()
        .map(|&(tile, anchor)| {
            let label = match tile {
                0 => {
                    if relabel.sample(&mut rng) {
                        RandLabel::ABar
                    } else {
                        RandLabel::A
                    }
                }
                _ => RandLabel::B,
            };
            (label, anchor.x)
        })
        .collect();
    Ok(RandomizedChain {
        p_keep: p,
        seed,
        tiles,
    })
}

/// Candidate constants for the absolutely continuous part of the randomised
/// diffraction, each multiplying p·q·|u_a − u_ā|²·λ_Lebesgue.
#[derive(Clone, Copy, Debug)]
pub struct AcCandidates {
    /// From re-deriving the ν-algebra: dens(Λ)/τ = dens(Λ_a) = 1/√5.
    pub recomputed: f64,
    /// The full chain density dens(Λ) = τ/√5.
    pub chain_density: f64,
    /// A bare Lebesgue term with constant 1.
    pub unit: f64,
}

impl AcCandidates {
    pub fn values() -> Self {
        AcCandidates {
            recomputed: 1.0 / SQRT5_F64,
            chain_density: CHAIN_DENSITY,
            unit: 1.0,
        }
    }
}

/// Diffraction of the randomised chain: pure-point part with averaged
/// weights, plus a constant absolutely continuous density.
#[derive(Clone, Debug)]
pub struct RandomizedDiffraction {
    pub p_keep: f64,
    /// Pure-point peaks for weights (v_a, v_b) = (p·u_a + q·u_ā, u_b).
    pub pp: Vec<Peak>,
    /// Density of the a.c. part: dens(Λ_a)·p·q·|u_a − u_ā|².
    pub ac_density: f64,
    /// The competing candidate constants, for empirical arbitration.
    pub candidates: AcCandidates,
    pub averaged_weights: [Complex64; 2],
}

pub fn randomized_diffraction(
    p: f64,
    u_a: Complex64,
    u_abar: Complex64,
    u_b: Complex64,
    kmax: f64,
    ystarmax: f64,
) -> Result<RandomizedDiffraction, DiffractionError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(DiffractionError::BadProbability(p));
    }
    let q = 1.0 - p;
    let v_a = u_a * p + u_abar * q;
    let v_b = u_b;
    let eval = CocycleEvaluator::new(&fibonacci_rule()).expect("chain is primitive");
    let pp = diffract(&eval, &[v_a, v_b], kmax, ystarmax);
    let candidates = AcCandidates::values();
    let ac_density = candidates.recomputed * p * q * (u_a - u_abar).norm_sqr();
    Ok(RandomizedDiffraction {
        p_keep: p,
        pp,
        ac_density,
        candidates,
        averaged_weights: [v_a, v_b],
    })
}

/// Pair-correlation coefficients ν_αβ(z) of a two-label chain, together with
/// the pair and chain-pair counts needed for exact error bars.
#[derive(Clone, Debug, Default)]
pub struct BaseCorrelations {
    pub n_points: u64,
    pub n_a: u64,
    pub n_b: u64,
    /// z ↦ (aa, ab, ba, bb) pair counts.
    pub pair_counts: BTreeMap<GoldenNumber, [u64; 4]>,
    /// z ↦ number of x with x, x+z, x+2z all of type a (adjacent-pair
    /// covariance of the randomised estimators).
    pub aaa_chain_counts: BTreeMap<GoldenNumber, u64>,
}

impl BaseCorrelations {
    pub fn nu(&self, alpha: usize, beta: usize, z: GoldenNumber) -> f64 {
        let idx = alpha * 2 + beta;
        self.pair_counts
            .get(&z)
            .map(|c| c[idx] as f64 / self.n_points as f64)
            .unwrap_or(0.0)
    }
}

fn key_of(g: GoldenNumber) -> i128 {
    ((g.a as i128) << 64) | (g.b as i128 & 0xffff_ffff_ffff_ffff)
}

fn golden_of(key: i128) -> GoldenNumber {
    GoldenNumber::new((key >> 64) as i64, key as i64)
}

/// Count pair correlations of a plain chain patch at the given displacements.
pub fn base_correlations(patch: &Patch, z_values: &[GoldenNumber]) -> BaseCorrelations {
    assert_eq!(patch.dimension, 1);
    let mut anchors: Vec<(i128, usize)> = patch
        .tiles
        .iter()
        .map(|&(t, v)| (key_of(v.x), t))
        .collect();
    anchors.sort_by_key(|&(k, _)| k);
    let keys: Vec<i128> = anchors.iter().map(|&(k, _)| k).collect();
    let type_of = |key: i128| -> Option<usize> { keys.binary_search(&key).ok().map(|i| anchors[i].1) };

    let n_a = anchors.iter().filter(|&&(_, t)| t == 0).count() as u64;
    let mut out = BaseCorrelations {
        n_points: anchors.len() as u64,
        n_a,
        n_b: anchors.len() as u64 - n_a,
        ..Default::default()
    };

    for &z in z_values {
        let mut counts = [0u64; 4];
        let mut aaa = 0u64;
        for &(key, t) in &anchors {
            let x = golden_of(key);
            if let Some(t2) = type_of(key_of(x + z)) {
                counts[t * 2 + t2] += 1;
                if t == 0 && t2 == 0 && type_of(key_of(x + z + z)) == Some(0) {
                    aaa += 1;
                }
            }
        }
        out.pair_counts.insert(z, counts);
        out.aaa_chain_counts.insert(z, aaa);
    }
    out
}

/// The smallest displacements |z| occurring in the difference set of a chain
/// patch, in increasing |z| order, z ≥ 0, including z = 0.
pub fn smallest_displacements(patch: &Patch, count: usize) -> Vec<GoldenNumber> {
    assert_eq!(patch.dimension, 1);
    let mut anchors: Vec<GoldenNumber> = patch.tiles.iter().map(|&(_, v)| v.x).collect();
    anchors.sort();
    let window = anchors.len().min(4 * count + 8);
    let mut seen: Vec<GoldenNumber> = vec![GoldenNumber::ZERO];
    for i in 0..window {
        for j in (i + 1)..window {
            let z = anchors[j] - anchors[i];
            if !seen.contains(&z) {
                seen.push(z);
            }
        }
    }
    seen.sort_by(|a, b| {
        a.value()
            .abs()
            .total_cmp(&b.value().abs())
            .then_with(|| a.cmp(b))
    });
    seen.truncate(count);
    seen
}

/// One predicted coefficient ν⁽ᵖ⁾_{αβ}(z) of the randomised chain, with the
/// exact standard error of its empirical estimator over a given base patch.
#[derive(Clone, Debug)]
pub struct NuPrediction {
    pub alpha: RandLabel,
    pub beta: RandLabel,
    pub z: GoldenNumber,
    pub mean: f64,
    pub std_error: f64,
}

/// All seven displayed coefficient families of the randomised chain over the
/// z-range of `base`.
///
/// Off z = 0: ν⁽ᵖ⁾_aa = p²ν_aa, ν⁽ᵖ⁾_āā = q²ν_aa, ν⁽ᵖ⁾_aā = ν⁽ᵖ⁾_āa = pqν_aa,
/// ν⁽ᵖ⁾_ab = pν_ab, ν⁽ᵖ⁾_āb = qν_ab, ν⁽ᵖ⁾_bb = ν_bb. At z = 0 the diagonal
/// masses are p/τ and q/τ while the mixed ones vanish. Standard errors come
/// from the Bernoulli model with the adjacent-pair covariance counted
/// exactly on the base patch.
pub fn pair_correlations_theoretical(p: f64, base: &BaseCorrelations) -> Vec<NuPrediction> {
    let q = 1.0 - p;
    let n = base.n_points as f64;
    let mut out = Vec::new();
    use RandLabel::*;
    for (&z, counts) in &base.pair_counts {
        let n_aa = counts[0] as f64;
        let n_ab = counts[1] as f64;
        let chain = *base.aaa_chain_counts.get(&z).unwrap_or(&0) as f64;
        let nu_aa = n_aa / n;
        let nu_ab = n_ab / n;
        let nu_bb = counts[3] as f64 / n;

        let mut push = |alpha, beta, mean: f64, var: f64| {
            out.push(NuPrediction {
                alpha,
                beta,
                z,
                mean,
                std_error: var.max(0.0).sqrt() / n,
            });
        };

        if z.is_zero() {
            push(A, A, p * nu_aa, base.n_a as f64 * p * q);
            push(ABar, ABar, q * nu_aa, base.n_a as f64 * p * q);
            push(A, ABar, 0.0, 0.0);
            push(ABar, A, 0.0, 0.0);
            push(A, B, 0.0, 0.0);
            push(ABar, B, 0.0, 0.0);
            push(B, B, nu_bb, 0.0);
        } else {
            // Var(Σ terms) = N_z·Var(term) + 2·N_chain·Cov(adjacent terms).
            push(
                A,
                A,
                p * p * nu_aa,
                n_aa * p * p * (1.0 - p * p) + 2.0 * chain * (p.powi(3) - p.powi(4)),
            );
            push(
                ABar,
                ABar,
                q * q * nu_aa,
                n_aa * q * q * (1.0 - q * q) + 2.0 * chain * (q.powi(3) - q.powi(4)),
            );
            let var_mixed = n_aa * p * q * (1.0 - p * q) - 2.0 * chain * p * p * q * q;
            push(A, ABar, p * q * nu_aa, var_mixed);
            push(ABar, A, p * q * nu_aa, var_mixed);
            push(A, B, p * nu_ab, n_ab * p * q);
            push(ABar, B, q * nu_ab, n_ab * p * q);
            push(B, B, nu_bb, 0.0);
        }
    }
    out
}

/// Empirical ν̂⁽ᵖ⁾_{αβ}(z) for all label pairs at the given displacements,
/// in one pass over the chain.
pub fn empirical_nu_table(
    chain: &RandomizedChain,
    z_values: &[GoldenNumber],
) -> BTreeMap<(RandLabel, RandLabel, GoldenNumber), f64> {
    let mut anchors: Vec<(i128, RandLabel)> = chain
        .tiles
        .iter()
        .map(|&(l, x)| (key_of(x), l))
        .collect();
    anchors.sort_by_key(|&(k, _)| k);
    let keys: Vec<i128> = anchors.iter().map(|&(k, _)| k).collect();
    let n = chain.tiles.len() as f64;
    let mut out = BTreeMap::new();
    use RandLabel::*;
    for &z in z_values {
        let mut counts: BTreeMap<(RandLabel, RandLabel), u64> = BTreeMap::new();
        for &(key, label) in &anchors {
            if let Ok(i) = keys.binary_search(&key_of(golden_of(key) + z)) {
                *counts.entry((label, anchors[i].1)).or_insert(0) += 1;
            }
        }
        for alpha in [A, ABar, B] {
            for beta in [A, ABar, B] {
                let c = *counts.get(&(alpha, beta)).unwrap_or(&0);
                out.insert((alpha, beta, z), c as f64 / n);
            }
        }
    }
    out
}

/// The empirical autocorrelation mass at z = 0 beyond the averaged-weights
/// part, normalised by p·q·|u_a − u_ā|²; arbitrates the a.c. constant.
pub fn empirical_ac_constant(
    chain: &RandomizedChain,
    u_a: Complex64,
    u_abar: Complex64,
    u_b: Complex64,
) -> f64 {
    let p = chain.p_keep;
    let q = 1.0 - p;
    let n = chain.tiles.len() as f64;
    let mut counts = [0.0f64; 3];
    for &(label, _) in &chain.tiles {
        counts[label as usize] += 1.0;
    }
    let gamma_zero = CHAIN_DENSITY
        * (counts[0] / n * u_a.norm_sqr()
            + counts[1] / n * u_abar.norm_sqr()
            + counts[2] / n * u_b.norm_sqr());
    let v_a = u_a * p + u_abar * q;
    let gamma_v_zero =
        CHAIN_DENSITY * (v_a.norm_sqr() / TAU_F64 + u_b.norm_sqr() / (TAU_F64 * TAU_F64));
    let denom = p * q * (u_a - u_abar).norm_sqr();
    if denom == 0.0 {
        return 0.0;
    }
    (gamma_zero - gamma_v_zero) / denom
}

/// Pure-point intensities of the bar-swapped four-letter chain.
///
/// The four windows coincide pairwise with the plain chain windows, so each
/// amplitude is half the corresponding plain amplitude: A_α = ǩ_{W_α}/(2√5).
pub fn twisted_intensities(weights: &[Complex64; 4], kmax: f64, ystarmax: f64) -> Vec<Peak> {
    let points = enumerate_module(1, kmax, ystarmax);
    let mut peaks: Vec<Peak> = points
        .into_par_iter()
        .map(|index| {
            let (a, b) = closed_form_1d(index[0]);
            let amplitudes = vec![a / 2.0, a / 2.0, b / 2.0, b / 2.0];
            peak_from_amplitudes(index, amplitudes, weights)
        })
        .collect();
    sort_peaks(&mut peaks);
    peaks
}
