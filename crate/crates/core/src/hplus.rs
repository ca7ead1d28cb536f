//! The abstract H⁺-algebra interface and a numerical axiom checker.
//!
//! Both the group algebra and the operator algebra `L(H)` implement
//! [`HPlusAlgebra`], so the same axiom checks run against either.

use crate::linalg::C64;

pub trait HPlusAlgebra {
    type Elem: Clone;

    /// `lambda * x + mu * y`.
    fn combine(&self, lambda: C64, x: &Self::Elem, mu: C64, y: &Self::Elem) -> Self::Elem;
    fn product(&self, x: &Self::Elem, y: &Self::Elem) -> Self::Elem;
    fn involution(&self, x: &Self::Elem) -> Self::Elem;
    /// The trace functional `T`.
    fn trace(&self, x: &Self::Elem) -> C64;

    /// `(x, y) = T(x⁺ y)`.
    fn scalar(&self, x: &Self::Elem, y: &Self::Elem) -> C64 {
        self.trace(&self.product(&self.involution(x), y))
    }

    fn norm(&self, x: &Self::Elem) -> f64 {
        self.scalar(x, x).re.max(0.0).sqrt()
    }

    fn distance(&self, x: &Self::Elem, y: &Self::Elem) -> f64 {
        self.norm(&self.combine(C64::new(1.0, 0.0), x, C64::new(-1.0, 0.0), y))
    }
}

/// Largest observed violation of each axiom, as an absolute deviation.
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct AxiomViolations {
    /// `x⁺⁺ = x`
    pub involutive: f64,
    /// `(λx + μy)⁺ = λ̄x⁺ + μ̄y⁺`
    pub antilinear: f64,
    /// `(xy)⁺ = y⁺x⁺`
    pub antimultiplicative: f64,
    /// `(x, x)` real and non-negative
    pub norm_square: f64,
    /// `(wx, y) = (x, w⁺y)`
    pub left_adjoint: f64,
    /// `‖x⁺‖ = ‖x‖`
    pub norm_preserving: f64,
    /// `x ≠ 0 ⇒ x⁺x ≠ 0`; counts failures
    pub nondegenerate: f64,
    /// `(x⁺, y⁺) = conj (x, y)`
    pub antiunitary: f64,
    /// `‖y⁺ − x⁺‖ = ‖y − x‖`
    pub isometry: f64,
    /// `(xw, y) = (x, yw⁺)`
    pub right_adjoint: f64,
    /// `T(xy) = T(yx)`
    pub trace_cyclic: f64,
    /// `T(x⁺) = conj T(x)`
    pub trace_conjugate: f64,
}

impl AxiomViolations {
    pub fn named(&self) -> [(&'static str, f64); 12] {
        [
            ("involutive", self.involutive),
            ("antilinear", self.antilinear),
            ("antimultiplicative", self.antimultiplicative),
            ("norm_square", self.norm_square),
            ("left_adjoint", self.left_adjoint),
            ("norm_preserving", self.norm_preserving),
            ("nondegenerate", self.nondegenerate),
            ("antiunitary", self.antiunitary),
            ("isometry", self.isometry),
            ("right_adjoint", self.right_adjoint),
            ("trace_cyclic", self.trace_cyclic),
            ("trace_conjugate", self.trace_conjugate),
        ]
    }

    pub fn max(&self) -> f64 {
        self.named().iter().map(|(_, v)| *v).fold(0.0, f64::max)
    }

    pub fn merge(&mut self, other: &AxiomViolations) {
        macro_rules! take_max {
            ($($f:ident),*) => { $( self.$f = self.$f.max(other.$f); )* };
        }
        take_max!(
            involutive,
            antilinear,
            antimultiplicative,
            norm_square,
            left_adjoint,
            norm_preserving,
            nondegenerate,
            antiunitary,
            isometry,
            right_adjoint,
            trace_cyclic,
            trace_conjugate
        );
    }
}

/// Evaluate every axiom on one triple of elements and one pair of scalars.
pub fn axiom_violations<A: HPlusAlgebra>(
    alg: &A,
    x: &A::Elem,
    y: &A::Elem,
    w: &A::Elem,
    lambda: C64,
    mu: C64,
) -> AxiomViolations {
    let one = C64::new(1.0, 0.0);
    let xp = alg.involution(x);
    let yp = alg.involution(y);
    let wp = alg.involution(w);
    let diff = |a: &A::Elem, b: &A::Elem| alg.distance(a, b);

    let lin = alg.combine(lambda, x, mu, y);
    let xy = alg.product(x, y);
    let yx = alg.product(y, x);
    let xx = alg.scalar(x, x);
    let nondegenerate = if alg.norm(x) > 1e-8 && alg.norm(&alg.product(&xp, x)) <= 1e-14 { 1.0 } else { 0.0 };

    AxiomViolations {
        involutive: diff(&alg.involution(&xp), x),
        antilinear: diff(&alg.involution(&lin), &alg.combine(lambda.conj(), &xp, mu.conj(), &yp)),
        antimultiplicative: diff(&alg.involution(&xy), &alg.product(&yp, &xp)),
        norm_square: xx.im.abs().max(-xx.re),
        left_adjoint: (alg.scalar(&alg.product(w, x), y) - alg.scalar(x, &alg.product(&wp, y))).norm(),
        norm_preserving: (alg.norm(&xp) - alg.norm(x)).abs(),
        nondegenerate,
        antiunitary: (alg.scalar(&xp, &yp) - alg.scalar(x, y).conj()).norm(),
        isometry: (alg.norm(&alg.combine(one, &yp, -one, &xp)) - alg.norm(&alg.combine(one, y, -one, x))).abs(),
        right_adjoint: (alg.scalar(&alg.product(x, w), y) - alg.scalar(x, &alg.product(y, &wp))).norm(),
        trace_cyclic: (alg.trace(&xy) - alg.trace(&yx)).norm(),
        trace_conjugate: (alg.trace(&xp) - alg.trace(x).conj()).norm(),
    }
}
