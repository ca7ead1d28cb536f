//! Pontryagin duality for finite abelian groups `Z_n1 × ... × Z_nr`.
//!
//! Characters are indexed like group elements, by tuples `k` in mixed-radix
//! order, with `⟨χ_k|g⟩ = exp(2πi Σ k_i g_i / n_i)`. The group carries the
//! normalized measure and the dual group the counting measure, so
//!
//! ```text
//! Ψ̂(χ) = (1/N) Σ_g conj⟨χ|g⟩ Ψ(g)        Ψ(g) = Σ_χ ⟨χ|g⟩ Ψ̂(χ)
//! ```
//!
//! are exact inverses and Plancherel holds without extra factors.

use std::f64::consts::PI;

use crate::algebra::AlgebraElement;
use crate::error::{Error, Result};
use crate::group::{mixed_radix_digits, mixed_radix_index, GroupSpec, GroupTable};
use crate::linalg::{C64, ZERO};

/// The character group of a product of cyclic groups.
#[derive(Debug, Clone)]
pub struct DualGroup {
    group: String,
    factors: Vec<usize>,
    order: usize,
}

/// A function on the dual group, indexed like the characters.
#[derive(Debug, Clone, PartialEq)]
pub struct DualFunction {
    pub group: String,
    pub values: Vec<C64>,
}

impl DualFunction {
    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// Pointwise product, the image of convolution.
    pub fn pointwise(&self, other: &DualFunction) -> Result<DualFunction> {
        if self.group != other.group {
            return Err(Error::GroupMismatch { left: self.group.clone(), right: other.group.clone() });
        }
        let values = self.values.iter().zip(&other.values).map(|(a, b)| a * b).collect();
        Ok(DualFunction { group: self.group.clone(), values })
    }

    /// `Σ_χ conj a(χ) b(χ)` under the counting measure.
    pub fn scalar(&self, other: &DualFunction) -> C64 {
        self.values.iter().zip(&other.values).map(|(a, b)| a.conj() * b).sum()
    }

    pub fn max_abs_diff(&self, other: &DualFunction) -> f64 {
        crate::linalg::max_abs_diff_slice(&self.values, &other.values)
    }
}

/// Outcome of the double-dual check: `g ↦ (χ ↦ ⟨χ|g⟩)` should be an
/// injective homomorphism `G → Ĝ^`.
#[derive(Debug, Clone, Copy)]
pub struct Reflexivity {
    /// Largest `|ev_{gh}(χ) - ev_g(χ) ev_h(χ)|`.
    pub homomorphism: f64,
    /// Largest `|ev_g(χχ') - ev_g(χ) ev_g(χ')|`, i.e. each `ev_g` is a character of `Ĝ`.
    pub evaluation: f64,
    pub injective: bool,
}

impl Reflexivity {
    pub fn holds(&self, tol: f64) -> bool {
        self.injective && self.homomorphism <= tol && self.evaluation <= tol
    }
}

impl DualGroup {
    pub fn new(g: &GroupTable) -> Result<Self> {
        if !g.is_abelian() {
            return Err(Error::NonAbelian(g.label().to_string()));
        }
        match g.spec() {
            Some(GroupSpec::Cyclic(ns)) => {
                Ok(DualGroup { group: g.label().to_string(), factors: ns.clone(), order: g.order() })
            }
            _ => Err(Error::NotCyclicProduct(g.label().to_string())),
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn group(&self) -> &str {
        &self.group
    }

    pub fn factors(&self) -> &[usize] {
        &self.factors
    }

    /// Tuple `(k1, ..., kr)` of a character index.
    pub fn character_tuple(&self, chi: usize) -> Vec<usize> {
        mixed_radix_digits(chi, &self.factors)
    }

    /// Index of `χ χ'`.
    pub fn character_product(&self, a: usize, b: usize) -> usize {
        let (ka, kb) = (self.character_tuple(a), self.character_tuple(b));
        let k: Vec<usize> = ka.iter().zip(&kb).zip(&self.factors).map(|((x, y), n)| (x + y) % n).collect();
        mixed_radix_index(&k, &self.factors)
    }

    /// `⟨χ|g⟩`.
    pub fn pairing(&self, chi: usize, g: usize) -> C64 {
        let k = self.character_tuple(chi);
        let x = mixed_radix_digits(g, &self.factors);
        // reduce before dividing so the phase stays exact for small orders
        let turns: f64 = k.iter().zip(&x).zip(&self.factors).map(|((a, b), n)| ((a * b) % n) as f64 / *n as f64).sum();
        C64::from_polar(1.0, 2.0 * PI * turns)
    }

    /// A character as a function on the group.
    pub fn character(&self, chi: usize) -> AlgebraElement {
        AlgebraElement { group: self.group.clone(), values: (0..self.order).map(|g| self.pairing(chi, g)).collect() }
    }

    fn check_element(&self, f: &AlgebraElement) -> Result<()> {
        if f.group != self.group {
            return Err(Error::GroupMismatch { left: f.group.clone(), right: self.group.clone() });
        }
        if f.values.len() != self.order {
            return Err(Error::LengthMismatch { expected: self.order, got: f.values.len() });
        }
        Ok(())
    }

    pub fn forward(&self, psi: &AlgebraElement) -> Result<DualFunction> {
        self.check_element(psi)?;
        let w = 1.0 / self.order as f64;
        let values = (0..self.order)
            .map(|chi| psi.values.iter().enumerate().map(|(g, v)| self.pairing(chi, g).conj() * v).sum::<C64>() * w)
            .collect();
        Ok(DualFunction { group: self.group.clone(), values })
    }

    pub fn inverse(&self, f: &DualFunction) -> Result<AlgebraElement> {
        if f.group != self.group {
            return Err(Error::GroupMismatch { left: f.group.clone(), right: self.group.clone() });
        }
        if f.values.len() != self.order {
            return Err(Error::LengthMismatch { expected: self.order, got: f.values.len() });
        }
        if let Some(p) = f.values.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NotFinite(p));
        }
        let values = (0..self.order)
            .map(|g| f.values.iter().enumerate().map(|(chi, v)| self.pairing(chi, g) * v).sum())
            .collect();
        Ok(AlgebraElement { group: self.group.clone(), values })
    }

    /// Indicator of a set of characters.
    pub fn indicator(&self, subset: &[usize]) -> Result<DualFunction> {
        let mut values = vec![ZERO; self.order];
        for &chi in subset {
            if chi >= self.order {
                return Err(Error::IndexOutOfRange { index: chi, order: self.order });
            }
            values[chi] = C64::new(1.0, 0.0);
        }
        Ok(DualFunction { group: self.group.clone(), values })
    }

    /// `δ{U}(g) = Σ_{χ∈U} ⟨χ|g⟩`, the convolution identity on functions whose
    /// transform is supported in `U`. Duplicates in `subset` count once.
    pub fn band_delta(&self, subset: &[usize]) -> Result<AlgebraElement> {
        if subset.is_empty() {
            return Err(Error::EmptySubset);
        }
        self.inverse(&self.indicator(subset)?)
    }

    /// Double-dual check on all elements and character pairs.
    pub fn reflexivity(&self, g: &GroupTable) -> Reflexivity {
        let n = self.order;
        let mut homomorphism: f64 = 0.0;
        let mut evaluation: f64 = 0.0;
        for x in 0..n {
            for chi in 0..n {
                for y in 0..n {
                    let lhs = self.pairing(chi, g.mul(x, y));
                    homomorphism = homomorphism.max((lhs - self.pairing(chi, x) * self.pairing(chi, y)).norm());
                }
                for psi in 0..n {
                    let lhs = self.pairing(self.character_product(chi, psi), x);
                    evaluation = evaluation.max((lhs - self.pairing(chi, x) * self.pairing(psi, x)).norm());
                }
            }
        }
        // ev_x is trivial only for x = e
        let injective =
            (0..n).all(|x| x == g.identity() || (0..n).any(|chi| (self.pairing(chi, x) - 1.0).norm() > 1e-9));
        Reflexivity { homomorphism, evaluation, injective }
    }
}
