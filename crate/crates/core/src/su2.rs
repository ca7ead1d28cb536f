//! Band-limited harmonic analysis on SU(2).
//!
//! Spins are stored as twice-j integers (`tj`), magnetic indices as twice-m
//! (`tm`). Matrix rows and columns run over `m = j, j-1, ..., -j`, so index
//! `k` corresponds to `tm = tj - 2k`.
//!
//! Rotations use ZYZ Euler angles with `α ∈ [0, 2π)`, `β ∈ [0, π]`,
//! `γ ∈ [0, 4π)`, which covers SU(2) once:
//!
//! ```text
//! D^j_{m'm}(α, β, γ) = exp(-i m' α) d^j_{m'm}(β) exp(-i m γ)
//! ```
//!
//! Clebsch–Gordan coefficients follow the Condon–Shortley phase convention.

use std::collections::HashMap;
use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, OnceLock, RwLock};

use nalgebra::DMatrix;

use crate::error::{Error, Result};
use crate::linalg::{CMatrix, C64, ZERO};

/// Largest supported `2j` for Wigner matrices.
pub const MAX_TWICE_J: u32 = 100;
/// Largest supported `2J` for quadrature bands.
pub const MAX_TWICE_BAND: u32 = 25;
/// Largest supported `2(j1 + j2)` for Clebsch–Gordan tables.
pub const MAX_TWICE_CG_SUM: u32 = 50;

/// A spin `j`, stored as `2j`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Spin(pub u32);

impl Spin {
    pub fn twice(self) -> u32 {
        self.0
    }

    pub fn j(self) -> f64 {
        self.0 as f64 / 2.0
    }

    /// `2j + 1`.
    pub fn dim(self) -> usize {
        self.0 as usize + 1
    }

    /// Twice-m values in matrix order, `2j, 2j-2, ..., -2j`.
    pub fn twice_m_values(self) -> Vec<i32> {
        (0..self.dim()).map(|k| self.0 as i32 - 2 * k as i32).collect()
    }

    /// Matrix index of a twice-m value.
    pub fn index_of(self, tm: i32) -> Result<usize> {
        let tj = self.0 as i32;
        if tm.abs() > tj || (tj - tm) % 2 != 0 {
            return Err(Error::InvalidProjection { tj: self.0, tm });
        }
        Ok(((tj - tm) / 2) as usize)
    }
}

impl FromStr for Spin {
    type Err = Error;

    /// Accepts `"p/2"`, integers, and decimals ending in `.0` or `.5`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::InvalidSpin(s.to_string());
        if let Some((num, den)) = t.split_once('/') {
            let num: u32 = num.trim().parse().map_err(|_| bad())?;
            let den: u32 = den.trim().parse().map_err(|_| bad())?;
            return match den {
                1 => Ok(Spin(2 * num)),
                2 => Ok(Spin(num)),
                _ => Err(bad()),
            };
        }
        if let Some((int, frac)) = t.split_once('.') {
            let int: u32 = int.parse().map_err(|_| bad())?;
            return match frac.trim_end_matches('0') {
                "" => Ok(Spin(2 * int)),
                "5" => Ok(Spin(2 * int + 1)),
                _ => Err(bad()),
            };
        }
        t.parse::<u32>().map(|n| Spin(2 * n)).map_err(|_| bad())
    }
}

impl fmt::Display for Spin {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_multiple_of(2) {
            write!(f, "{}", self.0 / 2)
        } else {
            write!(f, "{}/2", self.0)
        }
    }
}

/// `ln(k!)` for `k` up to a fixed bound.
fn log_factorial(k: i64) -> f64 {
    static TABLE: OnceLock<Vec<f64>> = OnceLock::new();
    let table = TABLE.get_or_init(|| {
        let mut t = vec![0.0; 512];
        for i in 1..t.len() {
            t[i] = t[i - 1] + (i as f64).ln();
        }
        t
    });
    assert!(k >= 0, "factorial of a negative number");
    table[k as usize]
}

/// ZYZ Euler angles.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Euler {
    pub alpha: f64,
    pub beta: f64,
    pub gamma: f64,
}

impl Euler {
    pub const IDENTITY: Euler = Euler { alpha: 0.0, beta: 0.0, gamma: 0.0 };

    pub fn new(alpha: f64, beta: f64, gamma: f64) -> Self {
        Euler { alpha, beta, gamma }
    }

    /// Euler angles of a matrix in SU(2), in the canonical ranges. Inverse
    /// of `wigner_big_d(1/2, ·)`.
    pub fn from_su2(u: &CMatrix) -> Euler {
        // u00 = e^{-i(α+γ)/2} cos(β/2),  u10 = e^{i(α-γ)/2} sin(β/2)
        let (u00, u10) = (u[(0, 0)], u[(1, 0)]);
        let beta = 2.0 * u10.norm().atan2(u00.norm());
        let p = if u00.norm() > 1e-300 { -u00.arg() } else { 0.0 }; // (α+γ)/2
        let q = if u10.norm() > 1e-300 { u10.arg() } else { 0.0 }; // (α-γ)/2
        let alpha = (p + q).rem_euclid(2.0 * PI);
        let gamma = (2.0 * p - alpha).rem_euclid(4.0 * PI);
        Euler { alpha, beta, gamma }
    }
}

/// Above this `2j` the factorial sum loses digits to cancellation and the
/// little-d matrix is computed from the eigenvectors of `J_y` instead.
const FACTORIAL_SUM_MAX_TWICE_J: u32 = 25;

/// Wigner little-d matrix `d^j(β) = exp(-iβJ_y)`: factorial sum with
/// log-factorials for `j ≤ 25/2`, spectral decomposition of `J_y` above.
pub fn wigner_d_small(spin: Spin, beta: f64) -> Result<DMatrix<f64>> {
    if spin.0 > MAX_TWICE_J {
        return Err(Error::OutOfRange { what: "spin", detail: format!("j = {spin} exceeds {}", MAX_TWICE_J / 2) });
    }
    if spin.0 > FACTORIAL_SUM_MAX_TWICE_J {
        return Ok(little_d_spectral(spin, beta));
    }
    Ok(little_d_factorial(spin, beta))
}

/// `J_y` in the descending-m basis.
pub fn spin_y(spin: Spin) -> CMatrix {
    let n = spin.dim();
    let j = spin.j();
    let tms = spin.twice_m_values();
    let mut jy = CMatrix::zeros(n, n);
    // J+ |m> = sqrt((j-m)(j+m+1)) |m+1>, and m+1 sits one row above m
    for c in 1..n {
        let m = tms[c] as f64 / 2.0;
        let v = ((j - m) * (j + m + 1.0)).sqrt();
        jy[(c - 1, c)] += C64::new(0.0, -v / 2.0);
        jy[(c, c - 1)] += C64::new(0.0, v / 2.0);
    }
    jy
}

fn little_d_spectral(spin: Spin, beta: f64) -> DMatrix<f64> {
    let eig = nalgebra::SymmetricEigen::new(spin_y(spin));
    let v = &eig.eigenvectors;
    let phases = CMatrix::from_diagonal(&eig.eigenvalues.map(|l| C64::from_polar(1.0, -beta * l)));
    (v * phases * v.adjoint()).map(|z| z.re)
}

fn little_d_factorial(spin: Spin, beta: f64) -> DMatrix<f64> {
    let n = spin.dim();
    let tj = spin.0 as i64;
    let (c, s) = ((beta / 2.0).cos(), (beta / 2.0).sin());
    let tms = spin.twice_m_values();
    let mut d = DMatrix::zeros(n, n);
    for (r, &tmp) in tms.iter().enumerate() {
        for (col, &tm) in tms.iter().enumerate() {
            let (mp, m) = (tmp as i64, tm as i64);
            let jpm = (tj + m) / 2;
            let jmm = (tj - m) / 2;
            let jpmp = (tj + mp) / 2;
            let jmmp = (tj - mp) / 2;
            let shift = (mp - m) / 2; // m' - m
            let half_log = 0.5 * (log_factorial(jpmp) + log_factorial(jmmp) + log_factorial(jpm) + log_factorial(jmm));
            let k_min = 0.max(-shift);
            let k_max = jpm.min(jmmp);
            let mut sum = 0.0;
            for k in k_min..=k_max {
                let denom =
                    log_factorial(jpm - k) + log_factorial(k) + log_factorial(jmmp - k) + log_factorial(k + shift);
                let sign = if (k + shift) % 2 == 0 { 1.0 } else { -1.0 };
                let pc = (tj - 2 * k - shift) as i32; // 2j + m - m' - 2k
                let ps = (2 * k + shift) as i32; // 2k - m + m'
                sum += sign * (half_log - denom).exp() * c.powi(pc) * s.powi(ps);
            }
            d[(r, col)] = sum;
        }
    }
    d
}

/// Wigner D-matrix `D^j(α, β, γ)`.
pub fn wigner_big_d(spin: Spin, e: Euler) -> Result<CMatrix> {
    let d = wigner_d_small(spin, e.beta)?;
    let tms = spin.twice_m_values();
    Ok(CMatrix::from_fn(spin.dim(), spin.dim(), |r, c| {
        let phase = -(tms[r] as f64 * e.alpha + tms[c] as f64 * e.gamma) / 2.0;
        C64::from_polar(d[(r, c)], phase)
    }))
}

/// Gauss–Legendre nodes and weights on `[-1, 1]` by Newton iteration on
/// the three-term recurrence.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut x = vec![0.0; n];
    let mut w = vec![0.0; n];
    for i in 0..n.div_ceil(2) {
        let mut z = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 1.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, z);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            let pn = if n == 0 {
                1.0
            } else if n == 1 {
                z
            } else {
                p1
            };
            let pnm1 = if n == 1 { 1.0 } else { p0 };
            dp = n as f64 * (z * pn - pnm1) / (z * z - 1.0);
            let dz = pn / dp;
            z -= dz;
            if dz.abs() < 1e-16 {
                break;
            }
        }
        // recompute the derivative at the converged node
        let (mut p0, mut p1) = (1.0, z);
        for k in 2..=n {
            let p2 = ((2 * k - 1) as f64 * z * p1 - (k - 1) as f64 * p0) / k as f64;
            p0 = p1;
            p1 = p2;
        }
        if n > 1 {
            dp = n as f64 * (z * p1 - p0) / (z * z - 1.0);
        }
        let wi = 2.0 / ((1.0 - z * z) * dp * dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = wi;
        w[n - 1 - i] = wi;
    }
    (x, w)
}

/// One node of the SU(2) quadrature.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureNode {
    pub euler: Euler,
    pub weight: f64,
}

/// Product quadrature for the normalized Haar measure, exact for products
/// of two D-matrix entries of spin at most `band`: `2(2J)+1` equispaced
/// nodes in `α ∈ [0, 2π)` and `γ ∈ [0, 4π)`, `2J+1` Gauss–Legendre nodes in
/// `cos β`. Weights sum to one.
pub fn su2_quadrature(band: Spin) -> Result<Vec<QuadratureNode>> {
    if band.0 > MAX_TWICE_BAND {
        return Err(Error::OutOfRange { what: "band limit", detail: format!("J = {band} exceeds 25/2") });
    }
    let n_alpha = 2 * band.0 as usize + 1;
    let n_gamma = 2 * band.0 as usize + 1;
    let n_beta = band.0 as usize + 1;
    let (xs, ws) = gauss_legendre(n_beta);
    let mut nodes = Vec::with_capacity(n_alpha * n_beta * n_gamma);
    for a in 0..n_alpha {
        let alpha = 2.0 * PI * a as f64 / n_alpha as f64;
        for (x, w) in xs.iter().zip(&ws) {
            let beta = x.clamp(-1.0, 1.0).acos();
            for c in 0..n_gamma {
                let gamma = 4.0 * PI * c as f64 / n_gamma as f64;
                nodes.push(QuadratureNode {
                    euler: Euler { alpha, beta, gamma },
                    weight: w / 2.0 / (n_alpha * n_gamma) as f64,
                });
            }
        }
    }
    Ok(nodes)
}

/// Clebsch–Gordan coefficients for one pair of spins as a real orthogonal
/// matrix `U[(J, M), (m1, m2)] = (j1 j2 m1 m2 | J M)`.
///
/// Rows: `J` ascending from `|j1 - j2|`, and within each `J`, `M`
/// descending. Columns: `m1` descending (outer), `m2` descending (inner),
/// which is the order of the Kronecker product basis.
#[derive(Debug, Clone, PartialEq)]
pub struct CGTable {
    pub j1: Spin,
    pub j2: Spin,
    pub matrix: DMatrix<f64>,
    /// `(2J, 2M)` per row.
    pub rows: Vec<(u32, i32)>,
    /// `(2m1, 2m2)` per column.
    pub cols: Vec<(i32, i32)>,
}

impl CGTable {
    pub fn coupled_spins(&self) -> Vec<Spin> {
        let lo = self.j1.0.abs_diff(self.j2.0);
        (lo..=self.j1.0 + self.j2.0).step_by(2).map(Spin).collect()
    }

    /// `(j1 j2 m1 m2 | J M)`; zero outside the selection rules.
    pub fn coefficient(&self, tm1: i32, tm2: i32, tj: u32, tm: i32) -> f64 {
        let row = self.rows.iter().position(|&r| r == (tj, tm));
        let col = self.cols.iter().position(|&c| c == (tm1, tm2));
        match (row, col) {
            (Some(r), Some(c)) => self.matrix[(r, c)],
            _ => 0.0,
        }
    }

    /// Row offset of the block for coupled spin `J`.
    pub fn row_offset(&self, coupled: Spin) -> Option<usize> {
        self.rows.iter().position(|&(tj, _)| tj == coupled.0)
    }

    /// Nonzero entries as `(2m1, 2m2, 2J, 2M, value)`, in row order.
    pub fn entries(&self) -> Vec<(i32, i32, u32, i32, f64)> {
        let mut out = Vec::new();
        for (r, &(tj, tm)) in self.rows.iter().enumerate() {
            for (c, &(tm1, tm2)) in self.cols.iter().enumerate() {
                let v = self.matrix[(r, c)];
                if v != 0.0 {
                    out.push((tm1, tm2, tj, tm, v));
                }
            }
        }
        out
    }
}

/// Racah's closed form for `(j1 j2 m1 m2 | J M)`, all arguments doubled.
pub fn cg_coefficient(tj1: u32, tm1: i32, tj2: u32, tm2: i32, tj: u32, tm: i32) -> f64 {
    let (j1, j2, j) = (tj1 as i64, tj2 as i64, tj as i64);
    let (m1, m2, m) = (tm1 as i64, tm2 as i64, tm as i64);
    if m1 + m2 != m || m1.abs() > j1 || m2.abs() > j2 || m.abs() > j {
        return 0.0;
    }
    if (j1 + m1) % 2 != 0 || (j2 + m2) % 2 != 0 || (j + m) % 2 != 0 {
        return 0.0;
    }
    if j < (j1 - j2).abs() || j > j1 + j2 || (j1 + j2 + j) % 2 != 0 {
        return 0.0;
    }
    let h = |x: i64| x / 2; // exact: every use has even argument
    let a = h(j1 + j2 - j);
    let b = h(j1 - m1);
    let c = h(j2 + m2);
    let d = h(j - j2 + m1);
    let e = h(j - j1 - m2);
    let pre = 0.5
        * (((j + 1) as f64).ln() + log_factorial(h(j + j1 - j2)) + log_factorial(h(j - j1 + j2)) + log_factorial(a)
            - log_factorial(h(j1 + j2 + j) + 1)
            + log_factorial(h(j + m))
            + log_factorial(h(j - m))
            + log_factorial(h(j1 - m1))
            + log_factorial(h(j1 + m1))
            + log_factorial(h(j2 - m2))
            + log_factorial(h(j2 + m2)));
    let k_min = 0.max(-d).max(-e);
    let k_max = a.min(b).min(c);
    let mut sum = 0.0;
    for k in k_min..=k_max {
        let den = log_factorial(k)
            + log_factorial(a - k)
            + log_factorial(b - k)
            + log_factorial(c - k)
            + log_factorial(d + k)
            + log_factorial(e + k);
        let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
        sum += sign * (pre - den).exp();
    }
    sum
}

impl CGTable {
    /// The table layout with every coefficient zero: columns run over the
    /// product basis `(m1, m2)`, rows over the coupled basis `(j, m)` with
    /// `j` ascending.
    pub fn zeros(j1: Spin, j2: Spin) -> CGTable {
        let cols: Vec<(i32, i32)> = j1
            .twice_m_values()
            .into_iter()
            .flat_map(|a| j2.twice_m_values().into_iter().map(move |b| (a, b)))
            .collect();
        let lo = j1.0.abs_diff(j2.0);
        let rows: Vec<(u32, i32)> = (lo..=j1.0 + j2.0)
            .step_by(2)
            .flat_map(|tj| Spin(tj).twice_m_values().into_iter().map(move |tm| (tj, tm)))
            .collect();
        let matrix = DMatrix::zeros(rows.len(), cols.len());
        CGTable { j1, j2, matrix, rows, cols }
    }
}

fn build_cg(j1: Spin, j2: Spin) -> CGTable {
    let CGTable { rows, cols, mut matrix, .. } = CGTable::zeros(j1, j2);
    for (r, &(tj, tm)) in rows.iter().enumerate() {
        for (c, &(tm1, tm2)) in cols.iter().enumerate() {
            if tm1 + tm2 == tm {
                matrix[(r, c)] = cg_coefficient(j1.0, tm1, j2.0, tm2, tj, tm);
            }
        }
    }
    CGTable { j1, j2, matrix, rows, cols }
}

/// Clebsch–Gordan table for `j1 ⊗ j2`.
pub fn clebsch_gordan(j1: Spin, j2: Spin) -> Result<CGTable> {
    if j1.0 + j2.0 > MAX_TWICE_CG_SUM {
        return Err(Error::OutOfRange { what: "j1 + j2", detail: format!("{j1} + {j2} exceeds 25") });
    }
    Ok(build_cg(j1, j2))
}

/// Memoized [`clebsch_gordan`]; tables are shared across threads and
/// inserted at most once per spin pair.
pub fn clebsch_gordan_cached(j1: Spin, j2: Spin) -> Result<Arc<CGTable>> {
    type Memo = RwLock<HashMap<(u32, u32), Arc<CGTable>>>;
    static MEMO: OnceLock<Memo> = OnceLock::new();
    let memo = MEMO.get_or_init(Default::default);
    if let Some(t) = memo.read().expect("memo lock poisoned").get(&(j1.0, j2.0)) {
        return Ok(Arc::clone(t));
    }
    let table = Arc::new(clebsch_gordan(j1, j2)?);
    let mut w = memo.write().expect("memo lock poisoned");
    Ok(Arc::clone(w.entry((j1.0, j2.0)).or_insert(table)))
}

/// Coefficients `c(κ)_kl` with `D^{j1}_{ab} D^{j2}_{rs} = Σ_κ Σ_kl c(κ)_kl D^κ_kl`.
#[derive(Debug, Clone, PartialEq)]
pub struct ProductExpansion {
    pub terms: Vec<(Spin, DMatrix<f64>)>,
}

impl ProductExpansion {
    pub fn evaluate(&self, e: Euler) -> Result<C64> {
        let mut s = ZERO;
        for (kappa, c) in &self.terms {
            let d = wigner_big_d(*kappa, e)?;
            s += d.iter().zip(c.iter()).map(|(x, y)| x * *y).sum::<C64>();
        }
        Ok(s)
    }
}

/// Expand the pointwise product of two D-matrix entries, indices given as
/// matrix positions `(a, b)` in `j1` and `(r, s)` in `j2`:
/// `c(κ)_kl = (j1 j2 a r | κ k)(j1 j2 b s | κ l)`.
pub fn pointwise_product_expand(
    j1: Spin,
    ab: (usize, usize),
    j2: Spin,
    rs: (usize, usize),
) -> Result<ProductExpansion> {
    let check = |spin: Spin, i: usize| {
        if i < spin.dim() {
            Ok(spin.twice_m_values()[i])
        } else {
            Err(Error::IndexOutOfRange { index: i, order: spin.dim() })
        }
    };
    let (ta, tb) = (check(j1, ab.0)?, check(j1, ab.1)?);
    let (tr, ts) = (check(j2, rs.0)?, check(j2, rs.1)?);
    let table = clebsch_gordan_cached(j1, j2)?;
    let terms = table
        .coupled_spins()
        .into_iter()
        .map(|kappa| {
            let ms = kappa.twice_m_values();
            let c = DMatrix::from_fn(kappa.dim(), kappa.dim(), |k, l| {
                table.coefficient(ta, tr, kappa.0, ms[k]) * table.coefficient(tb, ts, kappa.0, ms[l])
            });
            (kappa, c)
        })
        .collect();
    Ok(ProductExpansion { terms })
}

/// Structure constants of pointwise multiplication in the basis
/// `e^j_ab = (2j+1) D^j_ab`: `e^{j1}_ab e^{j2}_rs = Σ_κ Σ_kl s(κ)_kl e^κ_kl` with
/// `s(κ)_kl = n(j1) n(j2) / n(κ) · c(κ)_kl`. The returned terms are
/// coefficients of `e^κ`, not of `D^κ`.
pub fn pointwise_structure_constants(
    j1: Spin,
    ab: (usize, usize),
    j2: Spin,
    rs: (usize, usize),
) -> Result<ProductExpansion> {
    let mut exp = pointwise_product_expand(j1, ab, j2, rs)?;
    for (kappa, c) in &mut exp.terms {
        *c *= (j1.dim() * j2.dim()) as f64 / kappa.dim() as f64;
    }
    Ok(exp)
}

/// A band-limited function on SU(2) given by its Peter–Weyl blocks
/// `F(j)` for `j = 0, 1/2, ..., J`.
#[derive(Debug, Clone, PartialEq)]
pub struct BandlimitedFunction {
    pub band: Spin,
    pub blocks: Vec<CMatrix>,
}

impl BandlimitedFunction {
    pub fn new(band: Spin, blocks: Vec<CMatrix>) -> Result<Self> {
        if blocks.len() != band.dim() {
            return Err(Error::LengthMismatch { expected: band.dim(), got: blocks.len() });
        }
        for (tj, b) in blocks.iter().enumerate() {
            if b.nrows() != tj + 1 || b.ncols() != tj + 1 {
                return Err(Error::DimensionMismatch(format!("block for 2j = {tj} is {}x{}", b.nrows(), b.ncols())));
            }
        }
        Ok(BandlimitedFunction { band, blocks })
    }

    pub fn zero(band: Spin) -> Self {
        BandlimitedFunction { band, blocks: (0..=band.0 as usize).map(|tj| CMatrix::zeros(tj + 1, tj + 1)).collect() }
    }

    /// Band-limited delta `Σ_{j ≤ J} ε(j)`: identity blocks.
    pub fn band_delta(band: Spin) -> Self {
        BandlimitedFunction {
            band,
            blocks: (0..=band.0 as usize).map(|tj| CMatrix::identity(tj + 1, tj + 1)).collect(),
        }
    }

    /// `f(g) = Σ_j (2j+1) Σ_nm F(j)_nm D^j_nm(g)`.
    pub fn evaluate(&self, e: Euler) -> Result<C64> {
        let mut s = ZERO;
        for (tj, b) in self.blocks.iter().enumerate() {
            let d = wigner_big_d(Spin(tj as u32), e)?;
            s += b.iter().zip(d.iter()).map(|(x, y)| x * y).sum::<C64>() * (tj + 1) as f64;
        }
        Ok(s)
    }

    /// Blocks from samples at the quadrature nodes of band `J`:
    /// `F(j)_nm = ∫ conj D^j_nm(g) f(g) dg`.
    pub fn forward(band: Spin, nodes: &[QuadratureNode], samples: &[C64]) -> Result<Self> {
        if nodes.len() != samples.len() {
            return Err(Error::LengthMismatch { expected: nodes.len(), got: samples.len() });
        }
        let mut out = Self::zero(band);
        for (node, &v) in nodes.iter().zip(samples) {
            for (tj, b) in out.blocks.iter_mut().enumerate() {
                let d = wigner_big_d(Spin(tj as u32), node.euler)?;
                *b += d.map(|z| z.conj()) * (v * node.weight);
            }
        }
        Ok(out)
    }

    /// Convolution: blockwise matrix product.
    pub fn convolve(&self, other: &BandlimitedFunction) -> Result<Self> {
        if self.band != other.band {
            return Err(Error::DimensionMismatch(format!("band {} vs {}", self.band, other.band)));
        }
        Ok(BandlimitedFunction {
            band: self.band,
            blocks: self.blocks.iter().zip(&other.blocks).map(|(a, b)| a * b).collect(),
        })
    }
}
