//! Peter–Weyl transform of the group algebra and everything expressed in
//! irrep blocks.
//!
//! With `D(α)` the catalog irreps and `n(α)` their dimensions:
//!
//! ```text
//! F(α)_nm = (1/N) Σ_g conj D(α)_nm(g) f(g)
//! f(g)    = Σ_α n(α) Σ_nm F(α)_nm D(α)_nm(g)
//! ```
//!
//! Under this convention convolution becomes the ordinary block product,
//! `forward(f * h)(α) = F(α) H(α)`, and the involution becomes the block
//! adjoint. The basis `ε(α)_ij = n(α) D(α)_ij` transforms to the matrix
//! unit `E_ij` in block `α`.

use crate::algebra::{AlgebraElement, GroupAlgebra};
use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::linalg::{cmp_complex, general_eigenvalues, hermitian_deviation, CMatrix, C64, ZERO};
use crate::repr::{check_complete, irreps_of, Irrep};

/// Eigenvalues closer than this are reported as one with summed multiplicity.
pub const CLUSTER_TOL: f64 = 1e-8;
/// Hermiticity tolerance for inputs that must be self-adjoint.
pub const HERMITIAN_TOL: f64 = 1e-10;

/// One complex `n(α) × n(α)` matrix per irrep, in catalog order.
#[derive(Debug, Clone, PartialEq)]
pub struct SpectralBlocks {
    pub group: String,
    pub labels: Vec<String>,
    pub blocks: Vec<CMatrix>,
}

impl SpectralBlocks {
    pub fn get(&self, label: &str) -> Option<&CMatrix> {
        self.labels.iter().position(|l| l == label).map(|i| &self.blocks[i])
    }

    /// Blockwise Hermitian conjugate.
    pub fn adjoint(&self) -> SpectralBlocks {
        self.map(|b| b.adjoint())
    }

    pub fn map(&self, f: impl Fn(&CMatrix) -> CMatrix) -> SpectralBlocks {
        SpectralBlocks {
            group: self.group.clone(),
            labels: self.labels.clone(),
            blocks: self.blocks.iter().map(f).collect(),
        }
    }

    pub fn max_abs_diff(&self, other: &SpectralBlocks) -> f64 {
        self.blocks.iter().zip(&other.blocks).map(|(a, b)| crate::linalg::max_abs_diff(a, b)).fold(0.0, f64::max)
    }
}

/// An eigenvalue together with its multiplicity in the regular representation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectrumEntry {
    pub value: C64,
    pub multiplicity: usize,
}

/// A group together with its complete list of irreps.
#[derive(Debug, Clone)]
pub struct PeterWeyl {
    group: GroupTable,
    irreps: Vec<Irrep>,
}

impl PeterWeyl {
    /// Use the catalog irreps of `group`.
    pub fn new(group: &GroupTable) -> Result<Self> {
        Ok(PeterWeyl { irreps: irreps_of(group)?, group: group.clone() })
    }

    /// Use a caller-supplied irrep list; it must be complete.
    pub fn with_irreps(group: &GroupTable, irreps: Vec<Irrep>) -> Result<Self> {
        check_complete(&irreps, group)?;
        Ok(PeterWeyl { group: group.clone(), irreps })
    }

    pub fn group(&self) -> &GroupTable {
        &self.group
    }

    pub fn algebra(&self) -> GroupAlgebra<'_> {
        GroupAlgebra::new(&self.group)
    }

    pub fn irreps(&self) -> &[Irrep] {
        &self.irreps
    }

    pub fn labels(&self) -> Vec<String> {
        self.irreps.iter().map(|d| d.label.clone()).collect()
    }

    pub fn index_of(&self, label: &str) -> Result<usize> {
        self.irreps.iter().position(|d| d.label == label).ok_or_else(|| Error::UnknownIrrep(label.to_string()))
    }

    fn blocks_from(&self, blocks: Vec<CMatrix>) -> SpectralBlocks {
        SpectralBlocks { group: self.group.label().to_string(), labels: self.labels(), blocks }
    }

    pub fn check_blocks(&self, b: &SpectralBlocks) -> Result<()> {
        if b.group != self.group.label() {
            return Err(Error::GroupMismatch { left: b.group.clone(), right: self.group.label().to_string() });
        }
        if b.blocks.len() != self.irreps.len() {
            return Err(Error::DimensionMismatch(format!(
                "{} blocks for {} irreps",
                b.blocks.len(),
                self.irreps.len()
            )));
        }
        for ((d, m), label) in self.irreps.iter().zip(&b.blocks).zip(&b.labels) {
            if *label != d.label {
                return Err(Error::UnknownIrrep(label.clone()));
            }
            if m.nrows() != d.dim || m.ncols() != d.dim {
                return Err(Error::DimensionMismatch(format!(
                    "block `{}` is {}x{}, expected {}x{}",
                    d.label,
                    m.nrows(),
                    m.ncols(),
                    d.dim,
                    d.dim
                )));
            }
        }
        Ok(())
    }

    /// Build blocks from `(label, matrix)` pairs in any order; every irrep
    /// must appear exactly once.
    pub fn blocks_from_labeled(&self, pairs: Vec<(String, CMatrix)>) -> Result<SpectralBlocks> {
        let mut slots: Vec<Option<CMatrix>> = vec![None; self.irreps.len()];
        for (label, m) in pairs {
            let i = self.index_of(&label)?;
            if slots[i].replace(m).is_some() {
                return Err(Error::DimensionMismatch(format!("block `{label}` given twice")));
            }
        }
        let blocks = slots
            .into_iter()
            .zip(&self.irreps)
            .map(|(m, d)| m.ok_or_else(|| Error::DimensionMismatch(format!("missing block `{}`", d.label))))
            .collect::<Result<Vec<_>>>()?;
        let b = self.blocks_from(blocks);
        self.check_blocks(&b)?;
        Ok(b)
    }

    pub fn zero_blocks(&self) -> SpectralBlocks {
        self.blocks_from(self.irreps.iter().map(|d| CMatrix::zeros(d.dim, d.dim)).collect())
    }

    /// Blocks of the unit `𝕀`: identity matrices.
    pub fn identity_blocks(&self) -> SpectralBlocks {
        self.blocks_from(self.irreps.iter().map(|d| CMatrix::identity(d.dim, d.dim)).collect())
    }

    pub fn forward(&self, f: &AlgebraElement) -> Result<SpectralBlocks> {
        self.algebra().check(f)?;
        let w = self.group.haar_weight();
        let blocks = self
            .irreps
            .iter()
            .map(|d| {
                let mut acc = CMatrix::zeros(d.dim, d.dim);
                for (m, &v) in d.matrices.iter().zip(&f.values) {
                    if v != ZERO {
                        acc += m.map(|z| z.conj()) * v;
                    }
                }
                acc * C64::new(w, 0.0)
            })
            .collect();
        Ok(self.blocks_from(blocks))
    }

    pub fn inverse(&self, b: &SpectralBlocks) -> Result<AlgebraElement> {
        self.check_blocks(b)?;
        Ok(AlgebraElement::from_fn(&self.group, |g| {
            self.irreps
                .iter()
                .zip(&b.blocks)
                .map(|(d, f)| f.iter().zip(d.matrices[g].iter()).map(|(x, y)| x * y).sum::<C64>() * d.dim as f64)
                .sum()
        }))
    }

    /// Blockwise matrix product; the image of convolution.
    pub fn convolve(&self, a: &SpectralBlocks, b: &SpectralBlocks) -> Result<SpectralBlocks> {
        self.check_blocks(a)?;
        self.check_blocks(b)?;
        Ok(self.blocks_from(a.blocks.iter().zip(&b.blocks).map(|(x, y)| x * y).collect()))
    }

    /// `Σ_α n(α) Tr F(α)`, equal to `f(e)`.
    pub fn trace(&self, b: &SpectralBlocks) -> Result<C64> {
        self.check_blocks(b)?;
        Ok(self.irreps.iter().zip(&b.blocks).map(|(d, f)| f.trace() * d.dim as f64).sum())
    }

    /// `Σ_α Tr F(α)`: the trace normalized per ideal, under which every
    /// `ε(α)_ii` has unit trace.
    pub fn block_trace(&self, b: &SpectralBlocks) -> Result<C64> {
        self.check_blocks(b)?;
        Ok(b.blocks.iter().map(|f| f.trace()).sum())
    }

    /// `Σ_α n(α) Tr(F(α)⁺ G(α))`, equal to the spatial scalar product.
    pub fn scalar(&self, a: &SpectralBlocks, b: &SpectralBlocks) -> Result<C64> {
        self.check_blocks(a)?;
        self.check_blocks(b)?;
        Ok(self
            .irreps
            .iter()
            .zip(a.blocks.iter().zip(&b.blocks))
            .map(|(d, (x, y))| x.iter().zip(y.iter()).map(|(p, q)| p.conj() * q).sum::<C64>() * d.dim as f64)
            .sum())
    }

    /// `ε(α)_ij = n(α) D(α)_ij` for every irrep.
    pub fn epsilon_basis(&self) -> EpsilonBasis {
        let elements = self
            .irreps
            .iter()
            .map(|d| {
                (0..d.dim)
                    .flat_map(|i| (0..d.dim).map(move |j| (i, j)))
                    .map(|(i, j)| AlgebraElement::from_fn(&self.group, |g| d.matrices[g][(i, j)] * d.dim as f64))
                    .collect()
            })
            .collect();
        EpsilonBasis { labels: self.labels(), dims: self.irreps.iter().map(|d| d.dim).collect(), elements }
    }

    /// `ε(α)_ij` for one irrep.
    pub fn epsilon(&self, alpha: usize, i: usize, j: usize) -> AlgebraElement {
        let d = &self.irreps[alpha];
        AlgebraElement::from_fn(&self.group, |g| d.matrices[g][(i, j)] * d.dim as f64)
    }

    /// `ε(α) = n(α) χ(α)`: Hermitian, central, idempotent.
    pub fn central_idempotent(&self, alpha: usize) -> AlgebraElement {
        let d = &self.irreps[alpha];
        AlgebraElement::from_fn(&self.group, |g| d.matrices[g].trace() * d.dim as f64)
    }

    /// `ε(α) * f`, the orthogonal projection onto the ideal `M(α)`.
    pub fn project_ideal(&self, f: &AlgebraElement, alpha: usize) -> Result<AlgebraElement> {
        self.algebra().convolve(&self.central_idempotent(alpha), f)
    }

    /// The same projection computed by zeroing every other block.
    pub fn project_ideal_spectral(&self, f: &AlgebraElement, alpha: usize) -> Result<AlgebraElement> {
        let mut b = self.forward(f)?;
        for (i, m) in b.blocks.iter_mut().enumerate() {
            if i != alpha {
                m.fill(ZERO);
            }
        }
        self.inverse(&b)
    }

    /// Eigenvalues of the convolution operator `h ↦ f * h`: each eigenvalue
    /// of `F(α)` with multiplicity `n(α)` times its algebraic multiplicity.
    pub fn spectrum(&self, f: &AlgebraElement) -> Result<Vec<SpectrumEntry>> {
        let b = self.forward(f)?;
        let mut raw: Vec<(C64, usize)> = Vec::new();
        for (d, m) in self.irreps.iter().zip(&b.blocks) {
            for ev in block_eigenvalues(m)? {
                raw.push((ev, d.dim));
            }
        }
        Ok(cluster(raw, CLUSTER_TOL))
    }

    /// Spectrum as a flat sorted list with repetitions.
    pub fn spectrum_flat(&self, f: &AlgebraElement) -> Result<Vec<C64>> {
        let mut out = Vec::new();
        for e in self.spectrum(f)? {
            out.extend(std::iter::repeat_n(e.value, e.multiplicity));
        }
        Ok(out)
    }

    /// A normalized Hermitian `ρ` with `a * ρ = λ ρ = ρ * a`, built from a
    /// block eigenvector `v` of `A(α)` as the block `v v⁺ / n(α)` in the first
    /// irrep (catalog order) whose block has `λ` as an eigenvalue.
    /// Returns `None` when `λ` is not in the spectrum.
    pub fn eigen_density(&self, a: &AlgebraElement, lambda: f64) -> Result<Option<AlgebraElement>> {
        let alg = self.algebra();
        alg.check(a)?;
        let dev = a.max_abs_diff(&alg.involution(a));
        if dev > HERMITIAN_TOL {
            return Err(Error::NotHermitian { max_deviation: dev });
        }
        let b = self.forward(a)?;
        for (alpha, (d, m)) in self.irreps.iter().zip(&b.blocks).enumerate() {
            let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
            let eig = nalgebra::SymmetricEigen::new(h);
            let Some(k) = (0..d.dim)
                .filter(|&k| (eig.eigenvalues[k] - lambda).abs() <= CLUSTER_TOL)
                .min_by(|&x, &y| (eig.eigenvalues[x] - lambda).abs().total_cmp(&(eig.eigenvalues[y] - lambda).abs()))
            else {
                continue;
            };
            let mut v = eig.eigenvectors.column(k).clone_owned();
            // fix the phase: the largest component becomes real positive
            let big =
                v.iter().enumerate().max_by(|x, y| x.1.norm().total_cmp(&y.1.norm())).map(|(i, _)| i).unwrap_or(0);
            let phase = v[big].conj() / v[big].norm();
            v *= phase;
            let rho = &v * v.adjoint() * C64::new(1.0 / d.dim as f64, 0.0);
            let mut blocks = self.zero_blocks();
            blocks.blocks[alpha] = rho;
            return self.inverse(&blocks).map(Some);
        }
        Ok(None)
    }
}

/// Eigenvalues of one block; Hermitian blocks go through the symmetric
/// solver, others through the complex Schur form.
pub fn block_eigenvalues(m: &CMatrix) -> Result<Vec<C64>> {
    if hermitian_deviation(m) <= 1e-12 {
        let h = (m + m.adjoint()) * C64::new(0.5, 0.0);
        Ok(crate::linalg::hermitian_eigenvalues(&h).into_iter().map(|x| C64::new(x, 0.0)).collect())
    } else {
        general_eigenvalues(m)
    }
}

/// Merge numerically coincident eigenvalues, summing multiplicities; the
/// result is sorted by real part, then imaginary part.
pub fn cluster(raw: Vec<(C64, usize)>, tol: f64) -> Vec<SpectrumEntry> {
    let mut groups: Vec<(C64, usize, usize)> = Vec::new(); // (sum of values, count, multiplicity)
    for (v, mult) in raw {
        match groups.iter_mut().find(|(s, c, _)| (*s / *c as f64 - v).norm() <= tol) {
            Some(g) => {
                g.0 += v;
                g.1 += 1;
                g.2 += mult;
            }
            None => groups.push((v, 1, mult)),
        }
    }
    let mut out: Vec<SpectrumEntry> =
        groups.into_iter().map(|(s, c, m)| SpectrumEntry { value: s / c as f64, multiplicity: m }).collect();
    out.sort_by(|a, b| cmp_complex(&a.value, &b.value));
    out
}

/// All `ε(α)_ij`, grouped by irrep, row-major in `(i, j)`.
#[derive(Debug, Clone)]
pub struct EpsilonBasis {
    pub labels: Vec<String>,
    pub dims: Vec<usize>,
    pub elements: Vec<Vec<AlgebraElement>>,
}

impl EpsilonBasis {
    pub fn get(&self, alpha: usize, i: usize, j: usize) -> &AlgebraElement {
        &self.elements[alpha][i * self.dims[alpha] + j]
    }
}
