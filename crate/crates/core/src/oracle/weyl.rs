//! Weyl matrix models for `S_{n²}^+` over `Z_n`, and their stationarity matrices.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};

use super::montecarlo::{estimate, haar_unitary, MCConfig};

/// Inputs further than this from unitary are rejected.
pub const UNITARY_TOLERANCE: f64 = 1e-10;

pub type NumericMatrix = DMatrix<Complex64>;

/// `W_{ia} e_b = ω^{ib} e_{a+b}` on `C^n`, `ω = e^{2πi/n}`.
#[derive(Clone, Debug)]
pub struct WeylModel {
    pub n: usize,
    pub root: Complex64,
    /// Indexed by `i * n + a`.
    pub matrices: Vec<NumericMatrix>,
}

#[derive(Clone, Debug, Serialize)]
pub struct WeylReport {
    pub n: usize,
    /// `max |U*U − 1|` of the input.
    pub unitarity_residual: f64,
    /// Worst residual over the four product and adjoint relations and unitarity of the `W_{ia}`.
    pub relation_residual: f64,
    /// Worst residual over all magic conditions on the projections.
    pub magic_residual: f64,
    /// Only at `n = 2`: distance of each `W_{ia}` from a unimodular multiple of a Pauli matrix.
    pub pauli_residual: Option<f64>,
}

impl WeylModel {
    pub fn new(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        let root = Complex64::from_polar(1.0, std::f64::consts::TAU / n as f64);
        let mut matrices = Vec::with_capacity(n * n);
        for i in 0..n {
            for a in 0..n {
                let mut w = DMatrix::zeros(n, n);
                for b in 0..n {
                    w[((a + b) % n, b)] = coupling(root, i, b, n);
                }
                matrices.push(w);
            }
        }
        Ok(WeylModel { n, root, matrices })
    }

    pub fn get(&self, i: usize, a: usize) -> &NumericMatrix {
        let n = self.n;
        &self.matrices[(i % n) * n + a % n]
    }

    fn coupling(&self, i: usize, b: usize) -> Complex64 {
        coupling(self.root, i % self.n, b % self.n, self.n)
    }

    /// Worst residual over the defining relations:
    /// `W_{ia}* = ⟨i,a⟩W_{−i,−a}`, `W_{ia}W_{jb} = ⟨i,b⟩W_{i+j,a+b}`,
    /// `W_{ia}W_{jb}* = ⟨j−i,b⟩W_{i−j,a−b}`, `W_{ia}*W_{jb} = ⟨i,a−b⟩W_{j−i,b−a}`,
    /// and unitarity.
    pub fn relation_residual(&self) -> f64 {
        let n = self.n;
        let neg = |x: usize| (n - x % n) % n;
        let id = DMatrix::<Complex64>::identity(n, n);
        let mut worst = 0.0f64;
        for i in 0..n {
            for a in 0..n {
                let w = self.get(i, a);
                let ws = w.adjoint();
                worst = worst.max(max_abs(&(&ws * w - &id)));
                worst = worst.max(max_abs(&(&ws - self.get(neg(i), neg(a)) * self.coupling(i, a))));
                for j in 0..n {
                    for b in 0..n {
                        let v = self.get(j, b);
                        let r2 = w * v - self.get(i + j, a + b) * self.coupling(i, b);
                        let r3 = w * v.adjoint() - self.get(i + neg(j), a + neg(b)) * self.coupling(j + neg(i), b);
                        let r4 = &ws * v - self.get(j + neg(i), b + neg(a)) * self.coupling(i, a + neg(b));
                        worst = worst.max(max_abs(&r2)).max(max_abs(&r3)).max(max_abs(&r4));
                    }
                }
            }
        }
        worst
    }

    /// At `n = 2`, `W_{00}, W_{10}, W_{01}, W_{11}` against `1, σ_z, σ_x, σ_y`.
    pub fn pauli_residual(&self) -> Option<f64> {
        if self.n != 2 {
            return None;
        }
        let c = |re: f64, im: f64| Complex64::new(re, im);
        let m = |e: [Complex64; 4]| DMatrix::from_row_slice(2, 2, &e);
        let (o, z) = (c(1.0, 0.0), c(0.0, 0.0));
        let pauli = [
            ((0, 0), m([o, z, z, o])),
            ((1, 0), m([o, z, z, -o])),
            ((0, 1), m([z, o, o, z])),
            ((1, 1), m([z, c(0.0, -1.0), c(0.0, 1.0), z])),
        ];
        let mut worst = 0.0f64;
        for ((i, a), p) in pauli {
            let w = self.get(i, a);
            // best factor is tr(P* W)/2; it must be unimodular
            let factor = (p.adjoint() * w).trace() / c(2.0, 0.0);
            worst = worst
                .max((factor.norm() - 1.0).abs())
                .max(max_abs(&(w - p * factor)));
        }
        Some(worst)
    }

    /// `P_{ia,jb} = Proj(W_{ia} U W_{jb}*)` in `M_{n²}`, with `(ia)` flattened to `i * n + a`.
    pub fn projections(&self, u: &NumericMatrix) -> Vec<Vec<NumericMatrix>> {
        let vectors = self.vectors(u);
        vectors
            .iter()
            .map(|row| {
                row.iter()
                    .map(|v| {
                        let p = v * v.adjoint();
                        let norm = v.norm_squared();
                        p / Complex64::new(norm, 0.0)
                    })
                    .collect()
            })
            .collect()
    }

    /// Unit vectors `vec(W_{ia} U W_{jb}*)` in `C^{n²}`.
    pub fn vectors(&self, u: &NumericMatrix) -> Vec<Vec<DMatrix<Complex64>>> {
        let k = self.n * self.n;
        (0..k)
            .map(|x| {
                (0..k)
                    .map(|y| {
                        let m = &self.matrices[x] * u * self.matrices[y].adjoint();
                        let v = DMatrix::from_column_slice(k, 1, m.as_slice());
                        let norm = v.norm();
                        v / Complex64::new(norm, 0.0)
                    })
                    .collect()
            })
            .collect()
    }
}

fn coupling(root: Complex64, i: usize, b: usize, n: usize) -> Complex64 {
    root.powi(((i * b) % n) as i32)
}

fn max_abs(m: &NumericMatrix) -> f64 {
    m.iter().map(|x| x.norm()).fold(0.0, f64::max)
}

/// Worst violation of: each `P` a projection; products of distinct entries in a
/// row or column vanish; rows and columns sum to the identity.
pub fn magic_residual(p: &[Vec<NumericMatrix>]) -> f64 {
    let k = p.len();
    if k == 0 {
        return 0.0;
    }
    let dim = p[0][0].nrows();
    let id = DMatrix::<Complex64>::identity(dim, dim);
    let mut worst = 0.0f64;
    for x in 0..k {
        let mut row = DMatrix::zeros(dim, dim);
        let mut col = DMatrix::zeros(dim, dim);
        for y in 0..k {
            let q = &p[x][y];
            worst = worst.max(max_abs(&(q * q - q))).max(max_abs(&(q.adjoint() - q)));
            row += q;
            col += &p[y][x];
            for z in 0..k {
                if z != y {
                    worst = worst.max(max_abs(&(q * &p[x][z]))).max(max_abs(&(&p[y][x] * &p[z][x])));
                }
            }
        }
        worst = worst.max(max_abs(&(row - &id))).max(max_abs(&(col - &id)));
    }
    worst
}

/// Builds the projection grid for `U` and checks every relation.
pub fn weyl_model(n: usize, u: &NumericMatrix) -> Result<(WeylModel, Vec<Vec<NumericMatrix>>, WeylReport)> {
    if u.nrows() != n || u.ncols() != n {
        return Err(Error::LengthMismatch {
            expected: n,
            found: u.nrows().max(u.ncols()),
        });
    }
    let unitarity = max_abs(&(u.adjoint() * u - DMatrix::identity(n, n)));
    if !(unitarity <= UNITARY_TOLERANCE) {
        return Err(Error::NotUnitary(unitarity));
    }
    let model = WeylModel::new(n)?;
    let grid = model.projections(u);
    let report = WeylReport {
        n,
        unitarity_residual: unitarity,
        relation_residual: model.relation_residual(),
        magic_residual: magic_residual(&grid),
        pauli_residual: model.pauli_residual(),
    };
    Ok((model, grid, report))
}

/// A Haar unitary of size `n` from a seed, for feeding `weyl_model`.
pub fn random_unitary(n: usize, seed: u64) -> NumericMatrix {
    haar_unitary(&mut ChaCha8Rng::seed_from_u64(seed), n)
}

#[derive(Clone, Debug, Serialize)]
pub struct StationarityResult {
    pub n: usize,
    pub p: usize,
    /// Row-major real parts; the matrix side is `(n²)^p`.
    pub matrix: Vec<Vec<f64>>,
    pub stderr_max: f64,
    /// `max |(T² − T)_{xy}|`.
    pub residual: f64,
}

/// `(T_p)_{x,y} = ∫_{U_n} tr(P_{x_1 y_1}(U) ⋯ P_{x_p y_p}(U)) dU` with `tr`
/// the normalized trace on `M_{n²}`. Projections are self-adjoint, so
/// exponent patterns play no role.
pub fn stationarity_matrix(n: usize, p: usize, cfg: &MCConfig) -> Result<StationarityResult> {
    if !(1..=3).contains(&n) || p > 2 {
        return Err(Error::InvalidArgument("stationarity needs n ∈ {1, 2, 3} and p ≤ 2".into()));
    }
    let model = WeylModel::new(n)?;
    let k = n * n;
    let side = k.pow(p as u32);
    let decode = |x: usize| -> Vec<usize> { (0..p).rev().map(|r| (x / k.pow(r as u32)) % k).collect() };
    let (matrix, stderr_max) = if p == 0 {
        (vec![vec![1.0]], 0.0)
    } else {
        let stats = estimate(cfg, side * side, |rng, out| {
            let u = haar_unitary(rng, n);
            let v = model.vectors(&u);
            for x in 0..side {
                let xs = decode(x);
                for y in 0..side {
                    let ys = decode(y);
                    out[x * side + y] = trace_of_product(&v, &xs, &ys) / k as f64;
                }
            }
        })?;
        let stderr = stats.iter().map(|s| s.1).fold(0.0, f64::max);
        let rows = (0..side).map(|x| (0..side).map(|y| stats[x * side + y].0).collect()).collect();
        (rows, stderr)
    };
    let t = DMatrix::from_fn(side, side, |x, y| matrix[x][y]);
    let residual = (&t * &t - &t).iter().map(|x| x.abs()).fold(0.0, f64::max);
    Ok(StationarityResult {
        n,
        p,
        matrix,
        stderr_max,
        residual,
    })
}

/// `Tr(P_1 ⋯ P_p)` for rank-one `P_r = v_r v_r*`: a cyclic product of overlaps.
fn trace_of_product(v: &[Vec<DMatrix<Complex64>>], xs: &[usize], ys: &[usize]) -> f64 {
    let p = xs.len();
    let mut acc = Complex64::new(1.0, 0.0);
    for r in 0..p {
        let a = &v[xs[r]][ys[r]];
        let b = &v[xs[(r + 1) % p]][ys[(r + 1) % p]];
        acc *= a.dotc(b);
    }
    acc.re
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pauli_family() {
        let m = WeylModel::new(2).unwrap();
        assert!(m.pauli_residual().unwrap() < 1e-15);
        assert!(m.relation_residual() < 1e-15);
        assert!(WeylModel::new(3).unwrap().pauli_residual().is_none());
    }

    #[test]
    fn identity_input_is_magic() {
        let (_, _, r) = weyl_model(2, &DMatrix::identity(2, 2)).unwrap();
        assert!(r.magic_residual < 1e-12);
        let (_, grid, r) = weyl_model(1, &DMatrix::identity(1, 1)).unwrap();
        assert_eq!(grid.len(), 1);
        assert!(r.magic_residual < 1e-15);
    }

    #[test]
    fn random_inputs_are_magic() {
        for seed in 0..5 {
            for n in [2, 3] {
                let (_, _, r) = weyl_model(n, &random_unitary(n, seed)).unwrap();
                assert!(r.relation_residual < 1e-12 && r.magic_residual < 1e-12, "{r:?}");
            }
        }
    }

    #[test]
    fn rejects_non_unitary() {
        let u = DMatrix::identity(2, 2) * Complex64::new(1.01, 0.0);
        assert!(matches!(weyl_model(2, &u), Err(Error::NotUnitary(_))));
    }

    #[test]
    fn residual_tracks_unitarity_defect() {
        let mut u = random_unitary(3, 11);
        u[(0, 1)] += Complex64::new(3e-11, 0.0);
        let (_, _, r) = weyl_model(3, &u).unwrap();
        assert!(r.magic_residual <= 10.0 * r.unitarity_residual + 1e-13, "{r:?}");
    }

    #[test]
    fn first_stationarity_matrix_is_constant() {
        let cfg = MCConfig::new(200, 1).unwrap();
        let t = stationarity_matrix(2, 1, &cfg).unwrap();
        assert!(t.matrix.iter().flatten().all(|x| (x - 0.25).abs() < 1e-14));
        assert!(t.residual < 1e-14);
        assert_eq!(stationarity_matrix(2, 0, &cfg).unwrap().matrix, vec![vec![1.0]]);
    }
}
