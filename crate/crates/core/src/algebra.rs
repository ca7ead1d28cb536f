//! The group algebra of a finite group: functions on the group with the
//! normalized convolution
//!
//! ```text
//! (f * h)(g) = (1/N) Σ_k f(k) h(k⁻¹ g)
//! ```
//!
//! involution `f⁺(x) = conj f(x⁻¹)`, trace `Tr f = f(e)` and scalar product
//! `(f, h) = Tr(f⁺ * h) = (1/N) Σ conj f(x) h(x)`.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::group::GroupTable;
use crate::hplus::HPlusAlgebra;
use crate::linalg::{C64, ZERO};

#[derive(Debug, Clone, PartialEq)]
pub struct AlgebraElement {
    pub group: String,
    pub values: Vec<C64>,
}

impl AlgebraElement {
    pub fn new(g: &GroupTable, values: Vec<C64>) -> Result<Self> {
        if values.len() != g.order() {
            return Err(Error::LengthMismatch { expected: g.order(), got: values.len() });
        }
        if let Some(p) = values.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(Error::NotFinite(p));
        }
        Ok(AlgebraElement { group: g.label().to_string(), values })
    }

    pub fn from_fn(g: &GroupTable, f: impl FnMut(usize) -> C64) -> Self {
        AlgebraElement { group: g.label().to_string(), values: g.elements().map(f).collect() }
    }

    pub fn zero(g: &GroupTable) -> Self {
        Self::from_fn(g, |_| ZERO)
    }

    pub fn constant(g: &GroupTable, c: C64) -> Self {
        Self::from_fn(g, |_| c)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn scale(&self, c: C64) -> Self {
        AlgebraElement { group: self.group.clone(), values: self.values.iter().map(|v| v * c).collect() }
    }

    /// Largest pointwise deviation from another element.
    pub fn max_abs_diff(&self, other: &AlgebraElement) -> f64 {
        crate::linalg::max_abs_diff_slice(&self.values, &other.values)
    }

    pub fn max_abs(&self) -> f64 {
        self.values.iter().map(|v| v.norm()).fold(0.0, f64::max)
    }

    fn zip_with(&self, other: &AlgebraElement, f: impl Fn(C64, C64) -> C64) -> AlgebraElement {
        assert_eq!(self.values.len(), other.values.len(), "algebra elements of different length");
        AlgebraElement {
            group: self.group.clone(),
            values: self.values.iter().zip(&other.values).map(|(&a, &b)| f(a, b)).collect(),
        }
    }
}

impl Add for &AlgebraElement {
    type Output = AlgebraElement;
    fn add(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.zip_with(rhs, |a, b| a + b)
    }
}

impl Sub for &AlgebraElement {
    type Output = AlgebraElement;
    fn sub(self, rhs: &AlgebraElement) -> AlgebraElement {
        self.zip_with(rhs, |a, b| a - b)
    }
}

impl Neg for &AlgebraElement {
    type Output = AlgebraElement;
    fn neg(self) -> AlgebraElement {
        self.scale(C64::new(-1.0, 0.0))
    }
}

impl Mul<C64> for &AlgebraElement {
    type Output = AlgebraElement;
    fn mul(self, rhs: C64) -> AlgebraElement {
        self.scale(rhs)
    }
}

/// Operations of the group algebra over a fixed group.
#[derive(Debug, Clone, Copy)]
pub struct GroupAlgebra<'g> {
    group: &'g GroupTable,
}

impl<'g> GroupAlgebra<'g> {
    pub fn new(group: &'g GroupTable) -> Self {
        GroupAlgebra { group }
    }

    pub fn group(&self) -> &'g GroupTable {
        self.group
    }

    pub fn order(&self) -> usize {
        self.group.order()
    }

    /// Reject elements that do not live on this group.
    pub fn check(&self, f: &AlgebraElement) -> Result<()> {
        if f.group != self.group.label() {
            return Err(Error::GroupMismatch { left: f.group.clone(), right: self.group.label().to_string() });
        }
        if f.values.len() != self.order() {
            return Err(Error::LengthMismatch { expected: self.order(), got: f.values.len() });
        }
        Ok(())
    }

    /// `(f * h)(g) = (1/N) Σ_k f(k) h(k⁻¹ g)`, by direct double sum.
    pub fn convolve(&self, f: &AlgebraElement, h: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(f)?;
        self.check(h)?;
        Ok(self.convolve_unchecked(f, h))
    }

    fn convolve_unchecked(&self, f: &AlgebraElement, h: &AlgebraElement) -> AlgebraElement {
        let g = self.group;
        let w = g.haar_weight();
        let mut out = vec![ZERO; g.order()];
        for k in g.elements() {
            let fk = f.values[k] * w;
            if fk == ZERO {
                continue;
            }
            // k⁻¹ x runs over all y as x runs; x = k y
            for y in g.elements() {
                out[g.mul(k, y)] += fk * h.values[y];
            }
        }
        AlgebraElement { group: f.group.clone(), values: out }
    }

    /// `f⁺(x) = conj f(x⁻¹)`.
    pub fn involution(&self, f: &AlgebraElement) -> AlgebraElement {
        AlgebraElement::from_fn(self.group, |x| f.values[self.group.inv(x)].conj())
    }

    /// `Tr f = f(e)`.
    pub fn trace(&self, f: &AlgebraElement) -> C64 {
        f.values[self.group.identity()]
    }

    /// `(f, h) = (1/N) Σ conj f(x) h(x)`.
    pub fn scalar_product(&self, f: &AlgebraElement, h: &AlgebraElement) -> Result<C64> {
        self.check(f)?;
        self.check(h)?;
        Ok(f.values.iter().zip(&h.values).map(|(a, b)| a.conj() * b).sum::<C64>() * self.group.haar_weight())
    }

    pub fn l2_norm(&self, f: &AlgebraElement) -> f64 {
        (f.values.iter().map(|v| v.norm_sqr()).sum::<f64>() * self.group.haar_weight()).sqrt()
    }

    /// `‖f‖₁ = (1/N) Σ |f(x)|`.
    pub fn l1_norm(&self, f: &AlgebraElement) -> f64 {
        f.values.iter().map(|v| v.norm()).sum::<f64>() * self.group.haar_weight()
    }

    /// The unit `𝕀`: value `N` at the identity, zero elsewhere.
    pub fn delta(&self) -> AlgebraElement {
        self.point_delta(self.group.identity()).expect("identity is a valid index")
    }

    /// `δ_h`: value `N` at `h`, zero elsewhere. Convolving with it from the
    /// left translates: `δ_h * f = L[h] f`.
    pub fn point_delta(&self, h: usize) -> Result<AlgebraElement> {
        self.group.check_index(h)?;
        let n = self.order() as f64;
        Ok(AlgebraElement::from_fn(self.group, |x| if x == h { C64::new(n, 0.0) } else { ZERO }))
    }

    /// `(L[h] f)(x) = f(h⁻¹ x)`.
    pub fn translate_left(&self, h: usize, f: &AlgebraElement) -> AlgebraElement {
        let g = self.group;
        AlgebraElement::from_fn(g, |x| f.values[g.mul(g.inv(h), x)])
    }

    /// `(R[h] f)(x) = f(x h⁻¹)`.
    pub fn translate_right(&self, h: usize, f: &AlgebraElement) -> AlgebraElement {
        let g = self.group;
        AlgebraElement::from_fn(g, |x| f.values[g.mul(x, g.inv(h))])
    }

    /// `(A[h] f)(x) = f(h⁻¹ x h)`.
    pub fn automorphism(&self, h: usize, f: &AlgebraElement) -> AlgebraElement {
        let g = self.group;
        AlgebraElement::from_fn(g, |x| f.values[g.conjugate(g.inv(h), x)])
    }

    pub fn adjoin_unit(&self, f: &AlgebraElement, lambda: C64) -> Result<UnitalizedElement> {
        self.check(f)?;
        Ok(UnitalizedElement { base: f.clone(), scalar: lambda })
    }

    /// `(x, λ)(y, μ) = (x*y + λy + μx, λμ)`.
    pub fn unital_product(&self, a: &UnitalizedElement, b: &UnitalizedElement) -> Result<UnitalizedElement> {
        let xy = self.convolve(&a.base, &b.base)?;
        let base = &(&xy + &b.base.scale(a.scalar)) + &a.base.scale(b.scalar);
        Ok(UnitalizedElement { base, scalar: a.scalar * b.scalar })
    }

    /// `‖(x, λ)‖ = ‖x‖₁ + |λ|`.
    pub fn unital_norm(&self, a: &UnitalizedElement) -> f64 {
        self.l1_norm(&a.base) + a.scalar.norm()
    }

    /// The unit `(0, 1)` of the unitalization.
    pub fn unital_identity(&self) -> UnitalizedElement {
        UnitalizedElement { base: AlgebraElement::zero(self.group), scalar: C64::new(1.0, 0.0) }
    }
}

/// An element `(x, λ)` of the algebra with an adjoined unit.
#[derive(Debug, Clone, PartialEq)]
pub struct UnitalizedElement {
    pub base: AlgebraElement,
    pub scalar: C64,
}

impl HPlusAlgebra for GroupAlgebra<'_> {
    type Elem = AlgebraElement;

    fn combine(&self, lambda: C64, x: &AlgebraElement, mu: C64, y: &AlgebraElement) -> AlgebraElement {
        x.zip_with(y, |a, b| lambda * a + mu * b)
    }

    fn product(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        self.convolve_unchecked(x, y)
    }

    fn involution(&self, x: &AlgebraElement) -> AlgebraElement {
        GroupAlgebra::involution(self, x)
    }

    fn trace(&self, x: &AlgebraElement) -> C64 {
        GroupAlgebra::trace(self, x)
    }

    fn norm(&self, x: &AlgebraElement) -> f64 {
        self.l2_norm(x)
    }
}
