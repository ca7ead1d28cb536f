//! The operator algebra `L(H)` of a finite-dimensional unitary space with an
//! arbitrary (not necessarily orthonormal) basis.
//!
//! Operators are stored as their matrices `x^a_b` in the basis `e_i`. The
//! scalar product of vectors is `<u|v> = conj(u)ᵀ Γ v`, so the Hermitian
//! conjugate of an operator is `x⁺ = Γ⁻¹ x† Γ`.

use crate::error::{Error, Result};
use crate::hplus::HPlusAlgebra;
use crate::linalg::{hermitian_deviation, hermitian_eigenvalues, CMatrix, C64, ONE, ZERO};

pub const MAX_DIM: usize = 16;
const GRAM_TOL: f64 = 1e-10;

#[derive(Debug, Clone, PartialEq)]
pub struct UnitarySpace {
    gram: CMatrix,
    gram_inv: CMatrix,
}

impl UnitarySpace {
    pub fn new(gram: CMatrix) -> Result<Self> {
        let n = gram.nrows();
        if n != gram.ncols() {
            return Err(Error::DimensionMismatch(format!("Gram matrix is {}x{}", n, gram.ncols())));
        }
        if n == 0 || n > MAX_DIM {
            return Err(Error::OutOfRange {
                what: "space dimension",
                detail: format!("{n} (supported 1..={MAX_DIM})"),
            });
        }
        if let Some(p) = gram.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NotFinite(p));
        }
        let dev = hermitian_deviation(&gram);
        if dev > GRAM_TOL {
            return Err(Error::NotHermitian { max_deviation: dev });
        }
        let min_eigenvalue = hermitian_eigenvalues(&gram)[0];
        if min_eigenvalue <= GRAM_TOL {
            return Err(Error::SingularGram { min_eigenvalue });
        }
        let gram_inv = gram.clone().try_inverse().ok_or(Error::SingularGram { min_eigenvalue })?;
        Ok(UnitarySpace { gram, gram_inv })
    }

    pub fn orthonormal(n: usize) -> Result<Self> {
        Self::new(CMatrix::identity(n, n))
    }

    /// Space with a diagonal Gram matrix.
    pub fn diagonal(weights: &[f64]) -> Result<Self> {
        let n = weights.len();
        Self::new(CMatrix::from_fn(n, n, |i, j| if i == j { C64::new(weights[i], 0.0) } else { ZERO }))
    }

    pub fn dim(&self) -> usize {
        self.gram.nrows()
    }

    /// `Γ_ij = <e_i|e_j>`.
    pub fn gram(&self) -> &CMatrix {
        &self.gram
    }

    /// `Γ^ij`, with `Γ^ik Γ_kj = δ^i_j`.
    pub fn gram_inv(&self) -> &CMatrix {
        &self.gram_inv
    }

    /// `<u|v> = Γ_ij conj(u^i) v^j`.
    pub fn inner(&self, u: &[C64], v: &[C64]) -> C64 {
        let mut s = ZERO;
        for (i, ui) in u.iter().enumerate() {
            for (j, vj) in v.iter().enumerate() {
                s += self.gram[(i, j)] * ui.conj() * vj;
            }
        }
        s
    }

    /// Mixed basis operator `e_j^i = e_j ⊗ e^i`, i.e. `e_j^i e_k = δ^i_k e_j`.
    pub fn mixed(&self, j: usize, i: usize) -> CMatrix {
        let n = self.dim();
        let mut m = CMatrix::zeros(n, n);
        m[(j, i)] = ONE;
        m
    }

    /// Covariant basis operator `e_ji = Γ_ik e_j^k`.
    pub fn covariant(&self, j: usize, i: usize) -> CMatrix {
        let n = self.dim();
        CMatrix::from_fn(n, n, |a, b| if a == j { self.gram[(i, b)] } else { ZERO })
    }

    /// All `n²` operators of both kinds, row-major in `(first, second)` index.
    pub fn adapted_basis(&self) -> AdaptedBasis {
        let n = self.dim();
        let mut mixed = Vec::with_capacity(n * n);
        let mut covariant = Vec::with_capacity(n * n);
        for first in 0..n {
            for second in 0..n {
                mixed.push(BasisOperator { kind: BasisKind::Mixed, first, second, matrix: self.mixed(first, second) });
                covariant.push(BasisOperator {
                    kind: BasisKind::Covariant,
                    first,
                    second,
                    matrix: self.covariant(first, second),
                });
            }
        }
        AdaptedBasis { n, mixed, covariant }
    }

    /// Hermitian conjugate with respect to the Γ scalar product.
    pub fn adjoint(&self, x: &CMatrix) -> CMatrix {
        &self.gram_inv * x.adjoint() * &self.gram
    }

    /// Minimal left ideals `M_j = span_i {e_ij}`.
    pub fn left_ideals(&self) -> Vec<Subspace> {
        let n = self.dim();
        (0..n).map(|j| Subspace { spanning: (0..n).map(|i| self.covariant(i, j)).collect() }).collect()
    }

    /// Minimal right ideals `_jM = span_i {e_ji}`.
    pub fn right_ideals(&self) -> Vec<Subspace> {
        let n = self.dim();
        (0..n).map(|j| Subspace { spanning: (0..n).map(|i| self.covariant(j, i)).collect() }).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BasisKind {
    /// `e_j^i`
    Mixed,
    /// `e_ji`
    Covariant,
}

#[derive(Debug, Clone, PartialEq)]
pub struct BasisOperator {
    pub kind: BasisKind,
    pub first: usize,
    pub second: usize,
    pub matrix: CMatrix,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AdaptedBasis {
    n: usize,
    pub mixed: Vec<BasisOperator>,
    pub covariant: Vec<BasisOperator>,
}

impl AdaptedBasis {
    /// `e_j^i`
    pub fn mixed(&self, j: usize, i: usize) -> &CMatrix {
        &self.mixed[j * self.n + i].matrix
    }

    /// `e_ji`
    pub fn covariant(&self, j: usize, i: usize) -> &CMatrix {
        &self.covariant[j * self.n + i].matrix
    }
}

/// A linear subspace of `L(H)` given by spanning matrices.
#[derive(Debug, Clone, PartialEq)]
pub struct Subspace {
    pub spanning: Vec<CMatrix>,
}

impl Subspace {
    fn stacked(&self, extra: Option<&CMatrix>) -> CMatrix {
        let cols: Vec<&CMatrix> = self.spanning.iter().chain(extra).collect();
        let rows = cols.first().map_or(0, |m| m.len());
        CMatrix::from_fn(rows, cols.len(), |r, c| cols[c][r])
    }

    pub fn dim(&self) -> usize {
        if self.spanning.is_empty() {
            return 0;
        }
        let m = self.stacked(None);
        m.ncols() - crate::linalg::nullity(&m, 1e-12)
    }

    /// Whether `x` lies in the span, up to a relative rank tolerance.
    pub fn contains(&self, x: &CMatrix, tol: f64) -> bool {
        let with = self.stacked(Some(x));
        let rank_with = with.ncols() - crate::linalg::nullity(&with, tol);
        rank_with == self.dim()
    }
}

/// `L(H)` as an H⁺-algebra: matrix product, Γ-adjoint, matrix trace.
impl HPlusAlgebra for UnitarySpace {
    type Elem = CMatrix;

    fn combine(&self, lambda: C64, x: &CMatrix, mu: C64, y: &CMatrix) -> CMatrix {
        x * lambda + y * mu
    }

    fn product(&self, x: &CMatrix, y: &CMatrix) -> CMatrix {
        x * y
    }

    fn involution(&self, x: &CMatrix) -> CMatrix {
        self.adjoint(x)
    }

    fn trace(&self, x: &CMatrix) -> C64 {
        x.trace()
    }
}
