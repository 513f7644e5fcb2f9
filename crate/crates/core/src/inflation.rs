//! Inflation rules for Fibonacci-type tilings and their combinatorics.
//!
//! A rule is a set of prototiles together with a set-valued displacement
//! matrix `T`: entry `T[i][j]` lists the anchor positions of the type-`i`
//! subtiles inside the τ-inflated type-`j` prototile. The cardinality matrix
//! |T[i][j]| is the substitution matrix. All anchors and extents are exact
//! elements of ℤ[τ], which lets the stone-inflation property (subtiles tile
//! the inflated prototile exactly) be verified without floats.
//!
//! Besides the classic two-letter chain, the catalog contains the bar-swapped
//! four-letter chain, the planar direct product of two chains, and its 48
//! rearrangements ("direct product variations", DPVs) indexed by triples
//! (i1, i2, i3).

use crate::golden::{GoldenNumber, GoldenVec};
use serde::{Deserialize, Serialize};
use thiserror::Error;

const G0: GoldenNumber = GoldenNumber::ZERO;
const G1: GoldenNumber = GoldenNumber::ONE;
const GT: GoldenNumber = GoldenNumber::TAU;

#[derive(Debug, Error)]
pub enum InflationError {
    #[error("unknown builtin rule `{0}`")]
    UnknownRule(String),
    #[error("DPV code out of range: ({0}, {1}, {2}); need i1,i2 in 0..2 and i3 in 0..12")]
    BadDpvCode(u8, u8, u8),
    #[error("substitution matrix is not primitive")]
    NotPrimitive,
}

/// A rectangular prototile, with one side length per axis (each 1 or τ).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prototile {
    pub id: usize,
    pub extent: GoldenVec,
}

/// A stone inflation with per-axis factor τ.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InflationRule {
    pub name: String,
    pub dimension: usize,
    pub prototiles: Vec<Prototile>,
    /// displacements[i][j] = anchors of type-i subtiles in the inflated type-j tile.
    pub displacements: Vec<Vec<Vec<GoldenVec>>>,
}

/// Parameter triple for a direct product variation.
///
/// `i1` and `i2` pick the decomposition of the two rectangle prototiles,
/// `i3 = 3c + s` places the big square at corner `c` of its supertile and the
/// small square at slot `s` of the remaining L-shaped region.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DpvCode {
    pub i1: u8,
    pub i2: u8,
    pub i3: u8,
}

impl DpvCode {
    pub fn new(i1: u8, i2: u8, i3: u8) -> Result<Self, InflationError> {
        if i1 < 2 && i2 < 2 && i3 < 12 {
            Ok(DpvCode { i1, i2, i3 })
        } else {
            Err(InflationError::BadDpvCode(i1, i2, i3))
        }
    }

    /// All 48 codes in lexicographic order.
    pub fn all() -> Vec<DpvCode> {
        let mut v = Vec::with_capacity(48);
        for i1 in 0..2 {
            for i2 in 0..2 {
                for i3 in 0..12 {
                    v.push(DpvCode { i1, i2, i3 });
                }
            }
        }
        v
    }
}

impl std::fmt::Display for DpvCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "({},{},{})", self.i1, self.i2, self.i3)
    }
}

/// Perron–Frobenius data of a primitive substitution matrix.
///
/// Normalised so that ⟨1|v⟩ = 1 (v holds relative tile frequencies) and
/// ⟨u|v⟩ = 1.
#[derive(Clone, Debug)]
pub struct PfData {
    pub lambda: f64,
    pub left: Vec<f64>,
    pub right: Vec<f64>,
}

/// A finite patch: tiles given by type and lower-left anchor.
#[derive(Clone, Debug, Default)]
pub struct Patch {
    pub dimension: usize,
    pub tiles: Vec<(usize, GoldenVec)>,
}

/// Outcome of the exact stone-inflation check.
#[derive(Clone, Debug)]
pub enum StoneReport {
    Pass,
    /// Two subtiles of the inflated tile `parent` overlap with open interiors.
    Overlap {
        parent: usize,
        first: (usize, GoldenVec),
        second: (usize, GoldenVec),
    },
    /// A subtile of `parent` sticks out of the inflated prototile.
    OutOfBounds {
        parent: usize,
        tile: (usize, GoldenVec),
    },
    /// Subtile areas do not add up to the inflated prototile's area.
    AreaDeficit {
        parent: usize,
    },
}

impl StoneReport {
    pub fn is_pass(&self) -> bool {
        matches!(self, StoneReport::Pass)
    }
}

impl InflationRule {
    pub fn tile_count(&self) -> usize {
        self.prototiles.len()
    }

    /// M[i][j] = |T[i][j]|.
    pub fn substitution_matrix(&self) -> Vec<Vec<u64>> {
        self.displacements
            .iter()
            .map(|row| row.iter().map(|set| set.len() as u64).collect())
            .collect()
    }

    /// Area (length for d = 1) of a prototile, exactly.
    pub fn tile_area(&self, id: usize) -> GoldenNumber {
        let e = self.prototiles[id].extent;
        if self.dimension == 1 {
            e.x
        } else {
            e.x * e.y
        }
    }

    /// The n-fold supertile expansion of `seed`, anchored at the origin.
    ///
    /// Tile-type counts equal column `seed` of Mⁿ.
    pub fn generate_patch(&self, steps: u32, seed: usize) -> Patch {
        assert!(seed < self.tile_count(), "seed tile out of range");
        let mut tiles = vec![(seed, GoldenVec::ZERO)];
        for _ in 0..steps {
            tiles = self.inflate_tiles(&tiles);
        }
        Patch {
            dimension: self.dimension,
            tiles,
        }
    }

    /// One inflation step applied to a list of placed tiles.
    pub fn inflate_tiles(&self, tiles: &[(usize, GoldenVec)]) -> Vec<(usize, GoldenVec)> {
        let mut sub_count = 0usize;
        for &(j, _) in tiles {
            for i in 0..self.tile_count() {
                sub_count += self.displacements[i][j].len();
            }
        }
        let mut out = Vec::with_capacity(sub_count);
        for &(j, anchor) in tiles {
            let scaled = anchor.scale_golden(GT);
            for (i, row) in self.displacements.iter().enumerate() {
                for &t in &row[j] {
                    out.push((i, scaled + t));
                }
            }
        }
        out
    }

    /// Exact verification that each inflated prototile is tiled by its
    /// subtiles: pairwise interior-disjoint, inside the inflated box, with
    /// areas summing exactly. Signs of ℤ[τ] elements decide everything.
    pub fn verify_stone_inflation(&self) -> StoneReport {
        let d = self.dimension;
        for j in 0..self.tile_count() {
            let parent_extent = self.prototiles[j].extent.scale_golden(GT);
            let subtiles: Vec<(usize, GoldenVec)> = (0..self.tile_count())
                .flat_map(|i| self.displacements[i][j].iter().map(move |&t| (i, t)))
                .collect();

            // Containment in [0, τ·extent(j)] per axis.
            for &(i, t) in &subtiles {
                for axis in 0..d {
                    let lo = t.component(axis);
                    let hi = lo + self.prototiles[i].extent.component(axis);
                    if lo.signum() < 0 || (hi - parent_extent.component(axis)).signum() > 0 {
                        return StoneReport::OutOfBounds {
                            parent: j,
                            tile: (i, t),
                        };
                    }
                }
            }

            // Pairwise interior disjointness: boxes are disjoint iff they are
            // separated along some axis.
            for (n, &(i1, t1)) in subtiles.iter().enumerate() {
                for &(i2, t2) in &subtiles[n + 1..] {
                    let mut separated = false;
                    for axis in 0..d {
                        let hi1 = t1.component(axis) + self.prototiles[i1].extent.component(axis);
                        let hi2 = t2.component(axis) + self.prototiles[i2].extent.component(axis);
                        if (hi1 - t2.component(axis)).signum() <= 0
                            || (hi2 - t1.component(axis)).signum() <= 0
                        {
                            separated = true;
                            break;
                        }
                    }
                    if !separated {
                        return StoneReport::Overlap {
                            parent: j,
                            first: (i1, t1),
                            second: (i2, t2),
                        };
                    }
                }
            }

            // With containment and disjointness, exact area equality forces a
            // perfect tiling.
            let mut total = G0;
            for &(i, _) in &subtiles {
                total = total + self.tile_area(i);
            }
            let parent_area = if d == 1 {
                parent_extent.x
            } else {
                parent_extent.x * parent_extent.y
            };
            if total != parent_area {
                return StoneReport::AreaDeficit { parent: j };
            }
        }
        StoneReport::Pass
    }
}

fn v1(x: GoldenNumber) -> GoldenVec {
    GoldenVec::new1(x)
}

fn v2(x: GoldenNumber, y: GoldenNumber) -> GoldenVec {
    GoldenVec::new2(x, y)
}

/// The classic chain: a ↦ ab, b ↦ a, with |a| = τ and |b| = 1.
pub fn fibonacci_rule() -> InflationRule {
    InflationRule {
        name: "fibonacci1d".into(),
        dimension: 1,
        prototiles: vec![
            Prototile {
                id: 0,
                extent: v1(GT),
            },
            Prototile {
                id: 1,
                extent: v1(G1),
            },
        ],
        // T = ({0} {0}; {τ} ∅)
        displacements: vec![vec![vec![v1(G0)], vec![v1(G0)]], vec![vec![v1(GT)], vec![]]],
    }
}

/// The bar-swapped four-letter chain: a ↦ ab, ā ↦ āb̄, b ↦ ā, b̄ ↦ a.
///
/// Letter order is (a, ā, b, b̄) with lengths (τ, τ, 1, 1).
pub fn twisted_rule() -> InflationRule {
    let tiles = [GT, GT, G1, G1]
        .iter()
        .enumerate()
        .map(|(id, &len)| Prototile {
            id,
            extent: v1(len),
        })
        .collect();
    let e: Vec<GoldenVec> = vec![];
    InflationRule {
        name: "twisted4".into(),
        dimension: 1,
        prototiles: tiles,
        displacements: vec![
            // a appears at 0 in inflated a, and at 0 in inflated b̄
            vec![vec![v1(G0)], e.clone(), e.clone(), vec![v1(G0)]],
            // ā appears at 0 in inflated ā and inflated b
            vec![e.clone(), vec![v1(G0)], vec![v1(G0)], e.clone()],
            // b at τ in inflated a
            vec![vec![v1(GT)], e.clone(), e.clone(), e.clone()],
            // b̄ at τ in inflated ā
            vec![e.clone(), vec![v1(GT)], e.clone(), e],
        ],
    }
}

/// The direct product of two Fibonacci chains; equals DPV (0,0,0).
///
/// Tile types: 0 = 1×1, 1 = τ×1, 2 = 1×τ, 3 = τ×τ.
pub fn square_rule() -> InflationRule {
    dpv_rule(DpvCode { i1: 0, i2: 0, i3: 0 })
}

/// Builtin rules by name.
pub fn builtin_rule(name: &str) -> Result<InflationRule, InflationError> {
    match name {
        "fibonacci1d" | "fib1d" => Ok(fibonacci_rule()),
        "twisted4" => Ok(twisted_rule()),
        "square00x" | "square" => Ok(square_rule()),
        other => Err(InflationError::UnknownRule(other.into())),
    }
}

/// Layout of the inflated big square (type 3) for i3 = 3c + s.
///
/// `c` is the corner occupied by the big square (0 = lower left, 1 = lower
/// right, 2 = upper right, 3 = upper left). The small square fills the outer
/// corner of the remaining L for s = 0; s = 1 and s = 2 move it to the far
/// end of the full-length horizontal respectively vertical strip, with the
/// two roles swapped at the upper corners c ∈ {2, 3}.
fn square_column(i3: u8) -> [GoldenVec; 4] {
    let (c, s) = (i3 / 3, i3 % 3);
    // Entries: anchors of (tile0, tile1, tile2, tile3).
    match (c, s) {
        (0, 0) => [v2(GT, GT), v2(G0, GT), v2(GT, G0), v2(G0, G0)],
        (0, 1) => [v2(G0, GT), v2(G1, GT), v2(GT, G0), v2(G0, G0)],
        (0, 2) => [v2(GT, G0), v2(G0, GT), v2(GT, G1), v2(G0, G0)],
        (1, 0) => [v2(G0, GT), v2(G1, GT), v2(G0, G0), v2(G1, G0)],
        (1, 1) => [v2(GT, GT), v2(G0, GT), v2(G0, G0), v2(G1, G0)],
        (1, 2) => [v2(G0, G0), v2(G1, GT), v2(G0, G1), v2(G1, G0)],
        (2, 0) => [v2(G0, G0), v2(G1, G0), v2(G0, G1), v2(G1, G1)],
        (2, 1) => [v2(G0, GT), v2(G1, G0), v2(G0, G0), v2(G1, G1)],
        (2, 2) => [v2(GT, G0), v2(G0, G0), v2(G0, G1), v2(G1, G1)],
        (3, 0) => [v2(GT, G0), v2(G0, G0), v2(GT, G1), v2(G0, G1)],
        (3, 1) => [v2(GT, GT), v2(G0, G0), v2(GT, G0), v2(G0, G1)],
        (3, 2) => [v2(G0, G0), v2(G1, G0), v2(GT, G1), v2(G0, G1)],
        _ => unreachable!(),
    }
}

/// The DPV with parameters `code`; all 48 share the substitution matrix of
/// the direct product rule and are stone inflations.
pub fn dpv_rule(code: DpvCode) -> InflationRule {
    let prototiles = vec![
        Prototile {
            id: 0,
            extent: v2(G1, G1),
        },
        Prototile {
            id: 1,
            extent: v2(GT, G1),
        },
        Prototile {
            id: 2,
            extent: v2(G1, GT),
        },
        Prototile {
            id: 3,
            extent: v2(GT, GT),
        },
    ];

    // Column 0: the inflated small square is a single big square.
    let col0 = [None, None, None, Some(v2(G0, G0))];

    // Column 1: the τ²×τ strip splits into a big square and a vertical
    // rectangle, in one of two orders.
    let col1 = if code.i1 == 0 {
        [None, None, Some(v2(GT, G0)), Some(v2(G0, G0))]
    } else {
        [None, None, Some(v2(G0, G0)), Some(v2(G1, G0))]
    };

    // Column 2: vertical analogue.
    let col2 = if code.i2 == 0 {
        [None, Some(v2(G0, GT)), None, Some(v2(G0, G0))]
    } else {
        [None, Some(v2(G0, G0)), None, Some(v2(G0, G1))]
    };

    let col3 = square_column(code.i3);

    let mut displacements: Vec<Vec<Vec<GoldenVec>>> = vec![vec![vec![]; 4]; 4];
    for i in 0..4 {
        if let Some(t) = col0[i] {
            displacements[i][0].push(t);
        }
        if let Some(t) = col1[i] {
            displacements[i][1].push(t);
        }
        if let Some(t) = col2[i] {
            displacements[i][2].push(t);
        }
        displacements[i][3].push(col3[i]);
    }

    InflationRule {
        name: format!("dpv:{},{},{}", code.i1, code.i2, code.i3),
        dimension: 2,
        prototiles,
        displacements,
    }
}

/// Mⁿ over u64 (sizes here keep entries far below overflow for the n used).
pub fn matrix_power(m: &[Vec<u64>], n: u32) -> Vec<Vec<u64>> {
    let size = m.len();
    let mut acc: Vec<Vec<u64>> = (0..size)
        .map(|i| (0..size).map(|j| u64::from(i == j)).collect())
        .collect();
    for _ in 0..n {
        let mut next = vec![vec![0u64; size]; size];
        for i in 0..size {
            for k in 0..size {
                if acc[i][k] == 0 {
                    continue;
                }
                for j in 0..size {
                    next[i][j] += acc[i][k]
                        .checked_mul(m[k][j])
                        .expect("matrix power overflow");
                }
            }
        }
        acc = next;
    }
    acc
}

fn is_primitive(m: &[Vec<u64>]) -> bool {
    let size = m.len();
    let mut reach: Vec<Vec<bool>> = m
        .iter()
        .map(|row| row.iter().map(|&x| x > 0).collect())
        .collect();
    for _ in 0..(2 * size) {
        if reach.iter().all(|row| row.iter().all(|&x| x)) {
            return true;
        }
        let mut next = vec![vec![false; size]; size];
        for i in 0..size {
            for k in 0..size {
                if reach[i][k] {
                    for j in 0..size {
                        next[i][j] |= m[k][j] > 0;
                    }
                }
            }
        }
        reach = next;
    }
    reach.iter().all(|row| row.iter().all(|&x| x))
}

/// Perron–Frobenius eigenvalue and eigenvectors by power iteration.
///
/// The matrices here are at most 4×4, so plain iteration with a Rayleigh
/// quotient converges to machine precision in well under a thousand steps.
pub fn pf_data(m: &[Vec<u64>]) -> Result<PfData, InflationError> {
    if !is_primitive(m) {
        return Err(InflationError::NotPrimitive);
    }
    let size = m.len();
    let mf: Vec<Vec<f64>> = m
        .iter()
        .map(|row| row.iter().map(|&x| x as f64).collect())
        .collect();
    let mt: Vec<Vec<f64>> = (0..size)
        .map(|i| (0..size).map(|j| mf[j][i]).collect())
        .collect();

    let (lambda, mut right) = power_iterate(&mf);
    let (_, mut left) = power_iterate(&mt);

    // ⟨1|v⟩ = 1, then ⟨u|v⟩ = 1.
    let sum: f64 = right.iter().sum();
    right.iter_mut().for_each(|x| *x /= sum);
    let dot: f64 = left.iter().zip(&right).map(|(a, b)| a * b).sum();
    left.iter_mut().for_each(|x| *x /= dot);

    Ok(PfData {
        lambda,
        left,
        right,
    })
}

fn power_iterate(m: &[Vec<f64>]) -> (f64, Vec<f64>) {
    let size = m.len();
    let mut v = vec![1.0; size];
    let mut lambda = 0.0;
    for _ in 0..10_000 {
        let mut w = vec![0.0; size];
        for i in 0..size {
            for j in 0..size {
                w[i] += m[i][j] * v[j];
            }
        }
        let norm: f64 = w.iter().map(|x| x * x).sum::<f64>().sqrt();
        w.iter_mut().for_each(|x| *x /= norm);
        // Rayleigh quotient and eigen-equation residual for w.
        let mut mv = vec![0.0; size];
        for i in 0..size {
            for j in 0..size {
                mv[i] += m[i][j] * w[j];
            }
        }
        lambda = w.iter().zip(&mv).map(|(a, b)| a * b).sum();
        let residual = mv
            .iter()
            .zip(&w)
            .map(|(mw, wi)| (mw - lambda * wi).abs())
            .fold(0.0, f64::max);
        v = w;
        // The λ estimate converges faster than the vector; stop on the
        // residual so the eigenvector itself reaches machine precision.
        if residual < 1e-15 * lambda.abs().max(1.0) {
            break;
        }
    }
    (lambda, v)
}

/// Characteristic polynomial of an integer matrix, exactly.
///
/// Coefficients are returned lowest degree first, with leading coefficient 1.
/// Computed by Laplace expansion of det(xI − M) over ℤ[x]; fine for N ≤ 4.
pub fn char_poly(m: &[Vec<u64>]) -> Vec<i64> {
    let size = m.len();
    // Polynomials as coefficient vectors over i128 to be safe.
    let entry = |i: usize, j: usize| -> Vec<i128> {
        let diag = i128::from(i == j);
        vec![-(m[i][j] as i128), diag]
    };
    let rows: Vec<usize> = (0..size).collect();
    let det = poly_det(&rows, &(0..size).collect::<Vec<_>>(), &entry);
    det.into_iter()
        .map(|c| i64::try_from(c).expect("characteristic polynomial overflow"))
        .collect()
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0i128; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add(a: &mut Vec<i128>, b: &[i128], sign: i128) {
    if a.len() < b.len() {
        a.resize(b.len(), 0);
    }
    for (i, &y) in b.iter().enumerate() {
        a[i] += sign * y;
    }
}

fn poly_det(rows: &[usize], cols: &[usize], entry: &dyn Fn(usize, usize) -> Vec<i128>) -> Vec<i128> {
    if rows.len() == 1 {
        return entry(rows[0], cols[0]);
    }
    let mut acc = vec![0i128];
    for (k, &c) in cols.iter().enumerate() {
        let sub_cols: Vec<usize> = cols.iter().copied().filter(|&x| x != c).collect();
        let minor = poly_det(&rows[1..], &sub_cols, entry);
        let term = poly_mul(&entry(rows[0], c), &minor);
        poly_add(&mut acc, &term, if k % 2 == 0 { 1 } else { -1 });
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::golden::TAU_F64;

    #[test]
    fn fibonacci_displacements_match_the_chain() {
        let rule = fibonacci_rule();
        assert_eq!(rule.substitution_matrix(), vec![vec![1, 1], vec![1, 0]]);
        assert_eq!(rule.displacements[1][0], vec![v1(GT)]);
        assert!(rule.displacements[1][1].is_empty());
        assert!(rule.verify_stone_inflation().is_pass());
    }

    #[test]
    fn square_rule_column_three() {
        let rule = square_rule();
        // tile0@(τ,τ), tile1@(0,τ), tile2@(τ,0), tile3@(0,0)
        assert_eq!(rule.displacements[0][3], vec![v2(GT, GT)]);
        assert_eq!(rule.displacements[1][3], vec![v2(G0, GT)]);
        assert_eq!(rule.displacements[2][3], vec![v2(GT, G0)]);
        assert_eq!(rule.displacements[3][3], vec![v2(G0, G0)]);
    }

    #[test]
    fn square_matrix_is_kronecker_square() {
        let rule = square_rule();
        let m = rule.substitution_matrix();
        let expected = vec![
            vec![0, 0, 0, 1],
            vec![0, 0, 1, 1],
            vec![0, 1, 0, 1],
            vec![1, 1, 1, 1],
        ];
        assert_eq!(m, expected);
    }

    #[test]
    fn dpv_001_matches_the_rearranged_rule() {
        let rule = dpv_rule(DpvCode::new(0, 0, 1).unwrap());
        assert_eq!(rule.displacements[0][3], vec![v2(G0, GT)]);
        assert_eq!(rule.displacements[1][3], vec![v2(G1, GT)]);
        assert_eq!(rule.displacements[2][3], vec![v2(GT, G0)]);
        assert_eq!(rule.displacements[3][3], vec![v2(G0, G0)]);
    }

    #[test]
    fn dpv_100_swaps_the_strip_order() {
        let rule = dpv_rule(DpvCode::new(1, 0, 0).unwrap());
        assert_eq!(rule.displacements[2][1], vec![v2(G0, G0)]);
        assert_eq!(rule.displacements[3][1], vec![v2(G1, G0)]);
    }

    #[test]
    fn all_dpvs_share_matrix_and_are_stone_inflations() {
        let reference = square_rule().substitution_matrix();
        for code in DpvCode::all() {
            let rule = dpv_rule(code);
            assert_eq!(rule.substitution_matrix(), reference, "code {code}");
            assert!(rule.verify_stone_inflation().is_pass(), "code {code}");
        }
    }

    #[test]
    fn corrupted_rule_fails_with_overlap() {
        let mut rule = square_rule();
        // Move tile 0 of the inflated big square by 1 to the left: it now
        // overlaps the type-1 rectangle.
        rule.displacements[0][3][0] = v2(GT - G1, GT);
        match rule.verify_stone_inflation() {
            StoneReport::Overlap { parent: 3, .. } => {}
            other => panic!("expected overlap, got {other:?}"),
        }
    }

    #[test]
    fn twisted_rule_is_a_stone_inflation_with_expected_matrix() {
        let rule = twisted_rule();
        assert!(rule.verify_stone_inflation().is_pass());
        let m = rule.substitution_matrix();
        let expected = vec![
            vec![1, 0, 0, 1],
            vec![0, 1, 1, 0],
            vec![1, 0, 0, 0],
            vec![0, 1, 0, 0],
        ];
        assert_eq!(m, expected);
    }

    #[test]
    fn twisted_char_poly_is_exact() {
        // (x²−x−1)(x²−x+1) = x⁴ − 2x³ + x² − 1
        let rule = twisted_rule();
        let p = char_poly(&rule.substitution_matrix());
        assert_eq!(p, vec![-1, 0, 1, -2, 1]);
    }

    #[test]
    fn pf_data_fibonacci() {
        let pf = pf_data(&fibonacci_rule().substitution_matrix()).unwrap();
        assert!((pf.lambda - TAU_F64).abs() < 1e-12);
        assert!((pf.right[0] - 1.0 / TAU_F64).abs() < 1e-12);
        assert!((pf.right[1] - 1.0 / TAU_F64.powi(2)).abs() < 1e-12);
        // ⟨u| = ((τ+2)/5)·(τ, 1)
        let c = (TAU_F64 + 2.0) / 5.0;
        assert!((pf.left[0] - c * TAU_F64).abs() < 1e-12);
        assert!((pf.left[1] - c).abs() < 1e-12);
    }

    #[test]
    fn pf_data_square() {
        let pf = pf_data(&square_rule().substitution_matrix()).unwrap();
        assert!((pf.lambda - TAU_F64 * TAU_F64).abs() < 1e-12);
        let expected = [
            TAU_F64.powi(-4),
            TAU_F64.powi(-3),
            TAU_F64.powi(-3),
            TAU_F64.powi(-2),
        ];
        for (got, want) in pf.right.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn pf_data_twisted() {
        let pf = pf_data(&twisted_rule().substitution_matrix()).unwrap();
        assert!((pf.lambda - TAU_F64).abs() < 1e-12);
        let c = (2.0 - TAU_F64) / 2.0;
        let expected = [c * TAU_F64, c * TAU_F64, c, c];
        for (got, want) in pf.right.iter().zip(expected) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn pf_rejects_non_primitive() {
        let m = vec![vec![1, 0], vec![0, 1]];
        assert!(pf_data(&m).is_err());
    }

    #[test]
    fn patch_counts_follow_matrix_powers() {
        let rule = fibonacci_rule();
        let patch = rule.generate_patch(5, 0);
        assert_eq!(patch.tiles.len(), 13);
        let a_count = patch.tiles.iter().filter(|(t, _)| *t == 0).count();
        let b_count = patch.tiles.iter().filter(|(t, _)| *t == 1).count();
        assert_eq!((a_count, b_count), (8, 5));

        let rule2 = square_rule();
        for steps in 0..5 {
            let patch = rule2.generate_patch(steps, 3);
            let mn = matrix_power(&rule2.substitution_matrix(), steps);
            let expected: u64 = (0..4).map(|i| mn[i][3]).sum();
            assert_eq!(patch.tiles.len() as u64, expected);
        }
    }

    #[test]
    fn zero_step_patch_is_the_seed() {
        let rule = square_rule();
        let patch = rule.generate_patch(0, 2);
        assert_eq!(patch.tiles, vec![(2, GoldenVec::ZERO)]);
    }

    #[test]
    fn one_step_patch_of_big_square_is_column_three() {
        let rule = square_rule();
        let patch = rule.generate_patch(1, 3);
        assert_eq!(patch.tiles.len(), 4);
        assert!(patch.tiles.contains(&(0, v2(GT, GT))));
        assert!(patch.tiles.contains(&(1, v2(G0, GT))));
        assert!(patch.tiles.contains(&(2, v2(GT, G0))));
        assert!(patch.tiles.contains(&(3, v2(G0, G0))));
    }

    #[test]
    fn area_sums_match_inflated_areas() {
        for code in DpvCode::all() {
            let rule = dpv_rule(code);
            for j in 0..4 {
                let mut total = G0;
                for i in 0..4 {
                    for _ in &rule.displacements[i][j] {
                        total = total + rule.tile_area(i);
                    }
                }
                let tau_sq = GT * GT;
                assert_eq!(total, rule.tile_area(j) * tau_sq, "column {j} of {code}");
            }
        }
    }

    #[test]
    fn supertile_coherence() {
        for rule in [fibonacci_rule(), twisted_rule(), square_rule()] {
            for n in 0..4 {
                let small = rule.generate_patch(n, 0);
                let expanded = rule.inflate_tiles(&small.tiles);
                let big = rule.generate_patch(n + 1, 0);
                assert_eq!(expanded, big.tiles);
            }
        }
    }

    #[test]
    fn small_patches_are_interior_disjoint() {
        let rule = dpv_rule(DpvCode::new(0, 0, 6).unwrap());
        let patch = rule.generate_patch(2, 3);
        for (n, &(i1, t1)) in patch.tiles.iter().enumerate() {
            for &(i2, t2) in &patch.tiles[n + 1..] {
                let mut separated = false;
                for axis in 0..2 {
                    let hi1 = t1.component(axis) + rule.prototiles[i1].extent.component(axis);
                    let hi2 = t2.component(axis) + rule.prototiles[i2].extent.component(axis);
                    if (hi1 - t2.component(axis)).signum() <= 0
                        || (hi2 - t1.component(axis)).signum() <= 0
                    {
                        separated = true;
                        break;
                    }
                }
                assert!(separated, "tiles overlap: {t1:?} {t2:?}");
            }
        }
    }
}
