//! Observables and density states in the group algebra, and the
//! convolution-type operators acting on wave functions `Ψ: G → C`.
//!
//! Wave functions share the storage of [`AlgebraElement`]. Operators are
//! dense matrices on `L²(G)` in the canonical element order; with the
//! normalized measure every translation is a permutation matrix and the
//! Hilbert adjoint is the conjugate transpose.
//!
//! ```text
//! (L[g]Ψ)(x) = Ψ(g⁻¹x)     (R[g]Ψ)(x) = Ψ(xg⁻¹)     A[g] = L[g]R[g⁻¹]
//! L{F} = (1/N) Σ F(g) L[g]        (L{F}Ψ = F * Ψ)
//! R{F} = (1/N) Σ F(g) R[g]        (R{F}Ψ = Ψ * F)
//! Rᵀ{F} = (1/N) Σ F(g) R[g⁻¹]
//! T{F}  = (1/N²) Σ F(g₁,g₂) L[g₁]R[g₂]
//! T_t{F} = (1/N²) Σ F(g₁,g₂) L[g₁]R[g₂⁻¹]
//! ```

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result, StateViolation};
use crate::group::GroupTable;
use crate::linalg::{hermitian_eigenvalues, max_abs_diff, CMatrix, C64, ONE, ZERO};
use crate::spectral::{PeterWeyl, HERMITIAN_TOL};

pub const TRACE_TOL: f64 = 1e-10;
pub const POSITIVITY_FLOOR: f64 = -1e-10;
pub const PURITY_TOL: f64 = 1e-10;

/// A self-adjoint element `A⁺ = A`.
#[derive(Debug, Clone, PartialEq)]
pub struct Observable {
    element: AlgebraElement,
}

impl Observable {
    pub fn element(&self) -> &AlgebraElement {
        &self.element
    }

    pub fn into_inner(self) -> AlgebraElement {
        self.element
    }
}

pub fn make_observable(pw: &PeterWeyl, f: &AlgebraElement) -> Result<Observable> {
    let alg = pw.algebra();
    alg.check(f)?;
    let dev = f.max_abs_diff(&alg.involution(f));
    if dev > HERMITIAN_TOL {
        return Err(Error::NotHermitian { max_deviation: dev });
    }
    Ok(Observable { element: f.clone() })
}

/// A Hermitian, normalized, positive element; pure when idempotent.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityState {
    element: AlgebraElement,
    pure: bool,
}

impl DensityState {
    pub fn element(&self) -> &AlgebraElement {
        &self.element
    }

    pub fn is_pure(&self) -> bool {
        self.pure
    }
}

/// Every quantity that enters the state conditions.
#[derive(Debug, Clone, PartialEq)]
pub struct StateReport {
    pub hermitian_deviation: f64,
    pub trace: C64,
    /// Smallest eigenvalue over the Hermitian parts of all spectral blocks.
    pub min_block_eigenvalue: f64,
    /// `‖ρ * ρ − ρ‖₂`.
    pub purity_residual: f64,
}

impl StateReport {
    pub fn hermitian(&self) -> bool {
        self.hermitian_deviation <= HERMITIAN_TOL
    }

    pub fn normalized(&self) -> bool {
        (self.trace - ONE).norm() <= TRACE_TOL
    }

    pub fn positive(&self) -> bool {
        self.min_block_eigenvalue >= POSITIVITY_FLOOR
    }

    pub fn pure(&self) -> bool {
        self.purity_residual <= PURITY_TOL
    }

    pub fn violations(&self) -> Vec<StateViolation> {
        let mut v = Vec::new();
        if !self.hermitian() {
            v.push(StateViolation::NotHermitian { max_deviation: self.hermitian_deviation });
        }
        if !self.normalized() {
            v.push(StateViolation::TraceNotOne { trace: self.trace.re });
        }
        if !self.positive() {
            v.push(StateViolation::NotPositive { min_eigenvalue: self.min_block_eigenvalue });
        }
        v
    }
}

pub fn state_report(pw: &PeterWeyl, f: &AlgebraElement) -> Result<StateReport> {
    let alg = pw.algebra();
    alg.check(f)?;
    let hermitian_deviation = f.max_abs_diff(&alg.involution(f));
    let blocks = pw.forward(f)?;
    let min_block_eigenvalue = blocks
        .blocks
        .iter()
        .map(|m| hermitian_eigenvalues(&((m + m.adjoint()) * C64::new(0.5, 0.0)))[0])
        .fold(f64::INFINITY, f64::min);
    let purity_residual = alg.l2_norm(&(&alg.convolve(f, f)? - f));
    Ok(StateReport { hermitian_deviation, trace: alg.trace(f), min_block_eigenvalue, purity_residual })
}

/// Validate a density element; each failed condition is reported.
pub fn make_state(pw: &PeterWeyl, f: &AlgebraElement) -> Result<DensityState> {
    let report = state_report(pw, f)?;
    let violations = report.violations();
    if !violations.is_empty() {
        return Err(Error::InvalidState(violations));
    }
    Ok(DensityState { element: f.clone(), pure: report.pure() })
}

/// `⟨A⟩_ρ = Tr(A * ρ)`; the imaginary part must vanish.
pub fn expectation(pw: &PeterWeyl, a: &Observable, rho: &DensityState) -> Result<f64> {
    let alg = pw.algebra();
    let v = alg.trace(&alg.convolve(&a.element, &rho.element)?);
    if v.im.abs() > HERMITIAN_TOL {
        return Err(Error::NotHermitian { max_deviation: v.im.abs() });
    }
    Ok(v.re)
}

/// `Tr(ρ * ρ₀)` for a pure `ρ₀`.
pub fn transition_probability(pw: &PeterWeyl, rho: &DensityState, rho0: &DensityState) -> Result<f64> {
    let alg = pw.algebra();
    if !rho0.pure {
        let residual = alg.l2_norm(&(&alg.convolve(&rho0.element, &rho0.element)? - &rho0.element));
        return Err(Error::NotPure { residual });
    }
    Ok(alg.trace(&alg.convolve(&rho.element, &rho0.element)?).re)
}

/// A function on `G × G`, stored row-major: `values[g1 * N + g2]`.
#[derive(Debug, Clone, PartialEq)]
pub struct PairFunction {
    pub group: String,
    pub order: usize,
    pub values: Vec<C64>,
}

impl PairFunction {
    pub fn new(g: &GroupTable, values: Vec<C64>) -> Result<Self> {
        let n = g.order();
        if values.len() != n * n {
            return Err(Error::LengthMismatch { expected: n * n, got: values.len() });
        }
        Ok(PairFunction { group: g.label().to_string(), order: n, values })
    }

    pub fn from_fn(g: &GroupTable, mut f: impl FnMut(usize, usize) -> C64) -> Self {
        let n = g.order();
        let values = (0..n * n).map(|k| f(k / n, k % n)).collect();
        PairFunction { group: g.label().to_string(), order: n, values }
    }

    #[inline]
    pub fn at(&self, g1: usize, g2: usize) -> C64 {
        self.values[g1 * self.order + g2]
    }

    /// `δ_(h,k)`: value `N²` at `(h, k)`.
    pub fn delta(g: &GroupTable, h: usize, k: usize) -> Result<Self> {
        g.check_index(h)?;
        g.check_index(k)?;
        let n2 = (g.order() * g.order()) as f64;
        Ok(Self::from_fn(g, |a, b| if (a, b) == (h, k) { C64::new(n2, 0.0) } else { ZERO }))
    }

    /// `F⁺(g₁, g₂) = conj F(g₁⁻¹, g₂⁻¹)`.
    pub fn involution(&self, g: &GroupTable) -> Self {
        Self::from_fn(g, |a, b| self.at(g.inv(a), g.inv(b)).conj())
    }

    /// Convolution on `G × G`:
    /// `(F * H)(g₁, g₂) = (1/N²) Σ F(h₁, h₂) H(h₁⁻¹g₁, h₂⁻¹g₂)`.
    pub fn convolve(&self, h: &PairFunction, g: &GroupTable) -> Self {
        self.convolve_with(h, g, |h2, g2| g.mul(g.inv(h2), g2))
    }

    /// Convolution transposed in the second slot:
    /// `(F (*ᵗ) H)(g₁, g₂) = (1/N²) Σ F(h₁, h₂) H(h₁⁻¹g₁, g₂h₂⁻¹)`.
    pub fn convolve_transposed(&self, h: &PairFunction, g: &GroupTable) -> Self {
        self.convolve_with(h, g, |h2, g2| g.mul(g2, g.inv(h2)))
    }

    fn convolve_with(&self, other: &PairFunction, g: &GroupTable, second: impl Fn(usize, usize) -> usize) -> Self {
        let n = g.order();
        let w = 1.0 / (n * n) as f64;
        Self::from_fn(g, |g1, g2| {
            let mut s = ZERO;
            for h1 in 0..n {
                let a = g.mul(g.inv(h1), g1);
                for h2 in 0..n {
                    s += self.at(h1, h2) * other.at(a, second(h2, g2));
                }
            }
            s * w
        })
    }
}

/// Where an operator matrix came from; conjugation rules depend on it.
#[derive(Debug, Clone, PartialEq)]
pub enum Provenance {
    LeftTranslation(usize),
    RightTranslation(usize),
    Automorphism(usize),
    LeftConvolution(AlgebraElement),
    RightConvolution(AlgebraElement),
    RightTransposedConvolution(AlgebraElement),
    TwoSided(PairFunction),
    TwoSidedTransposed(PairFunction),
}

impl Provenance {
    pub fn tag(&self) -> &'static str {
        match self {
            Provenance::LeftTranslation(_) => "L[g]",
            Provenance::RightTranslation(_) => "R[g]",
            Provenance::Automorphism(_) => "A[g]",
            Provenance::LeftConvolution(_) => "L{F}",
            Provenance::RightConvolution(_) => "R{F}",
            Provenance::RightTransposedConvolution(_) => "RT{F}",
            Provenance::TwoSided(_) => "T{F}",
            Provenance::TwoSidedTransposed(_) => "T_t{F}",
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct FunctionOperator {
    pub matrix: CMatrix,
    pub provenance: Provenance,
}

impl FunctionOperator {
    pub fn apply(&self, f: &AlgebraElement) -> AlgebraElement {
        let v = &self.matrix * nalgebra::DVector::from_column_slice(&f.values);
        AlgebraElement { group: f.group.clone(), values: v.iter().copied().collect() }
    }

    /// `‖U⁺U − I‖_max`.
    pub fn unitarity_deviation(&self) -> f64 {
        let n = self.matrix.nrows();
        max_abs_diff(&(self.matrix.adjoint() * &self.matrix), &CMatrix::identity(n, n))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TranslationKind {
    Left,
    Right,
    Auto,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConvolutionKind {
    /// `L{F}`
    Left,
    /// `R{F}`
    Right,
    /// `Rᵀ{F}`
    RightTransposed,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TwoSidedKind {
    /// `T{F}`, built from `L[g₁]R[g₂]`
    Plain,
    /// `T_t{F}`, built from `L[g₁]R[g₂⁻¹]`
    Transposed,
}

fn permutation(g: &GroupTable, source: impl Fn(usize) -> usize) -> CMatrix {
    let n = g.order();
    let mut m = CMatrix::zeros(n, n);
    for x in 0..n {
        m[(x, source(x))] = ONE;
    }
    m
}

/// `L[h]`, `R[h]` or `A[h]` as a permutation matrix.
pub fn translation_operator(g: &GroupTable, kind: TranslationKind, h: usize) -> Result<FunctionOperator> {
    g.check_index(h)?;
    let hi = g.inv(h);
    let (matrix, provenance) = match kind {
        TranslationKind::Left => (permutation(g, |x| g.mul(hi, x)), Provenance::LeftTranslation(h)),
        TranslationKind::Right => (permutation(g, |x| g.mul(x, hi)), Provenance::RightTranslation(h)),
        TranslationKind::Auto => (permutation(g, |x| g.conjugate(hi, x)), Provenance::Automorphism(h)),
    };
    Ok(FunctionOperator { matrix, provenance })
}

/// `L{F}`, `R{F}` or `Rᵀ{F}` as a dense matrix.
pub fn convolution_operator(pw: &PeterWeyl, kind: ConvolutionKind, f: &AlgebraElement) -> Result<FunctionOperator> {
    let g = pw.group();
    pw.algebra().check(f)?;
    let w = g.haar_weight();
    let n = g.order();
    let (matrix, provenance) = match kind {
        // (F * Ψ)(x) = (1/N) Σ_y F(x y⁻¹) Ψ(y)
        ConvolutionKind::Left => {
            (CMatrix::from_fn(n, n, |x, y| f.values[g.mul(x, g.inv(y))] * w), Provenance::LeftConvolution(f.clone()))
        }
        // (Ψ * F)(x) = (1/N) Σ_y Ψ(y) F(y⁻¹ x)
        ConvolutionKind::Right => {
            (CMatrix::from_fn(n, n, |x, y| f.values[g.mul(g.inv(y), x)] * w), Provenance::RightConvolution(f.clone()))
        }
        // (1/N) Σ_g F(g) Ψ(x g) = (1/N) Σ_y F(x⁻¹ y) Ψ(y)
        ConvolutionKind::RightTransposed => (
            CMatrix::from_fn(n, n, |x, y| f.values[g.mul(g.inv(x), y)] * w),
            Provenance::RightTransposedConvolution(f.clone()),
        ),
    };
    Ok(FunctionOperator { matrix, provenance })
}

/// `T{F}` or `T_t{F}` as a dense matrix on `L²(G)`.
pub fn two_sided_operator(g: &GroupTable, kind: TwoSidedKind, f: &PairFunction) -> Result<FunctionOperator> {
    let n = g.order();
    if f.group != g.label() {
        return Err(Error::GroupMismatch { left: f.group.clone(), right: g.label().to_string() });
    }
    if f.values.len() != n * n {
        return Err(Error::LengthMismatch { expected: n * n, got: f.values.len() });
    }
    let w = 1.0 / (n * n) as f64;
    let mut m = CMatrix::zeros(n, n);
    for g1 in 0..n {
        let g1i = g.inv(g1);
        for g2 in 0..n {
            let v = f.at(g1, g2) * w;
            if v == ZERO {
                continue;
            }
            // T:   (L[g₁]R[g₂]Ψ)(x)   = Ψ(g₁⁻¹ x g₂⁻¹)
            // T_t: (L[g₁]R[g₂⁻¹]Ψ)(x) = Ψ(g₁⁻¹ x g₂)
            let right = match kind {
                TwoSidedKind::Plain => g.inv(g2),
                TwoSidedKind::Transposed => g2,
            };
            for x in 0..n {
                m[(x, g.mul(g.mul(g1i, x), right))] += v;
            }
        }
    }
    let provenance = match kind {
        TwoSidedKind::Plain => Provenance::TwoSided(f.clone()),
        TwoSidedKind::Transposed => Provenance::TwoSidedTransposed(f.clone()),
    };
    Ok(FunctionOperator { matrix: m, provenance })
}

/// Apply `A[g₁] ⊗ A[g₂]` to a pair function:
/// `F'(k₁, k₂) = F(g₁⁻¹k₁g₁, g₂⁻¹k₂g₂)`.
pub fn pair_automorphism(g: &GroupTable, g1: usize, g2: usize, f: &PairFunction) -> PairFunction {
    PairFunction::from_fn(g, |k1, k2| f.at(g.conjugate(g.inv(g1), k1), g.conjugate(g.inv(g2), k2)))
}

/// Conjugate a convolution-type operator by `L[g₁]R[g₂]` using the
/// transformation rules on the underlying function:
///
/// * `L{F} ↦ L{A[g₁]F}`
/// * `R{F} ↦ R{A[g₂⁻¹]F}`, and likewise for `Rᵀ{F}`
/// * `T{F}`, `T_t{F} ↦ (A[g₁] ⊗ A[g₂⁻¹])F`
///
/// The matrix is rebuilt from the transformed function, not obtained by
/// multiplying matrices.
pub fn conjugate_operator(pw: &PeterWeyl, g1: usize, g2: usize, op: &FunctionOperator) -> Result<FunctionOperator> {
    let g = pw.group();
    g.check_index(g1)?;
    g.check_index(g2)?;
    let alg = pw.algebra();
    match &op.provenance {
        Provenance::LeftConvolution(f) => convolution_operator(pw, ConvolutionKind::Left, &alg.automorphism(g1, f)),
        Provenance::RightConvolution(f) => {
            convolution_operator(pw, ConvolutionKind::Right, &alg.automorphism(g.inv(g2), f))
        }
        Provenance::RightTransposedConvolution(f) => {
            convolution_operator(pw, ConvolutionKind::RightTransposed, &alg.automorphism(g.inv(g2), f))
        }
        Provenance::TwoSided(f) => two_sided_operator(g, TwoSidedKind::Plain, &pair_automorphism(g, g1, g.inv(g2), f)),
        Provenance::TwoSidedTransposed(f) => {
            two_sided_operator(g, TwoSidedKind::Transposed, &pair_automorphism(g, g1, g.inv(g2), f))
        }
        other => Err(Error::UnsupportedProvenance(other.tag().to_string())),
    }
}

/// Outcome of the unitarity test for `L{F}`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UnitarityReport {
    /// `max |F⁺ * F − 𝕀| / N`
    pub algebra_deviation: f64,
    /// largest `‖F(α)⁺F(α) − I‖_max` over the blocks
    pub block_deviation: f64,
    /// `‖L{F}⁺L{F} − I‖_max`
    pub operator_deviation: f64,
    pub unitary: bool,
}

/// `L{F}` is unitary iff `F⁺ * F = 𝕀`; both sides are computed so they can
/// be compared.
pub fn unitarity_check(pw: &PeterWeyl, f: &AlgebraElement, tol: f64) -> Result<UnitarityReport> {
    let alg = pw.algebra();
    let ff = alg.convolve(&alg.involution(f), f)?;
    let algebra_deviation = ff.max_abs_diff(&alg.delta()) / pw.group().order() as f64;
    let blocks = pw.forward(f)?;
    let block_deviation = blocks
        .blocks
        .iter()
        .map(|m| max_abs_diff(&(m.adjoint() * m), &CMatrix::identity(m.nrows(), m.nrows())))
        .fold(0.0, f64::max);
    let operator_deviation = convolution_operator(pw, ConvolutionKind::Left, f)?.unitarity_deviation();
    Ok(UnitarityReport { algebra_deviation, block_deviation, operator_deviation, unitary: algebra_deviation <= tol })
}
