use harmonika::quantum::{
    conjugate_operator, convolution_operator, expectation, make_observable, make_state, state_report,
    transition_probability, translation_operator, two_sided_operator, unitarity_check, ConvolutionKind,
    TranslationKind, TwoSidedKind,
};
use harmonika::{AlgebraElement, CMatrix, GroupTable, PairFunction, PeterWeyl, C64};
use rand::Rng;

use crate::oracle::*;

const TOL: f64 = 1e-10;

fn zero() -> C64 {
    C64::new(0.0, 0.0)
}

/// Tr f = f(e).
fn trace(g: &GroupTable, f: &[C64]) -> C64 {
    f[identity(g)]
}

/// Eqs. 1.85-1.89 for the pure states ε(α)₁₁ of the one-dimensional ideals
/// and for the maximally mixed state 𝕀/N on S₃.
pub fn quantum_layer() -> Check {
    let mut c = Check::default();
    let mut r = rng(6);
    let g = group("symmetric:3");
    let n = g.order();
    let pw = PeterWeyl::new(&g).unwrap();
    let wrap = |v: &[C64]| AlgebraElement::new(&g, v.to_vec()).unwrap();

    let pure: Vec<Vec<C64>> =
        pw.irreps().iter().filter(|d| d.dim == 1).map(|d| d.matrices.iter().map(|m| m[(0, 0)]).collect()).collect();
    c.holds(pure.len() == 2, || format!("S₃ has {} one-dimensional irreps", pure.len()));
    let mut mixed = vec![zero(); n];
    mixed[identity(&g)] = C64::new(1.0, 0.0);

    let states: Vec<(&str, &Vec<C64>, bool)> =
        vec![("ε(trivial)₁₁", &pure[0], true), ("ε(sign)₁₁", &pure[1], true), ("𝕀/6", &mixed, false)];
    let observables: Vec<Vec<C64>> = (0..20)
        .map(|_| {
            let v = values(n, &mut r);
            let vp = involution(&g, &v);
            v.iter().zip(&vp).map(|(a, b)| (a + b) * 0.5).collect()
        })
        .collect();

    for (name, rho, is_pure) in &states {
        let rep = state_report(&pw, &wrap(rho)).unwrap();
        c.holds(rep.hermitian() && rep.normalized() && rep.positive(), || format!("{name}: library rejects the state"));
        c.holds(rep.pure() == *is_pure, || format!("{name}: library purity is {}", rep.pure()));
        let state = make_state(&pw, &wrap(rho)).unwrap();

        // 1.85
        c.close((trace(&g, rho) - 1.0).norm(), TOL, || format!("{name}: Tr ρ"));
        // 1.86: (ρ, A⁺ * A) ≥ 0, strictly for the faithful mixed state
        for _ in 0..50 {
            let a = values(n, &mut r);
            let aa = convolve(&g, &involution(&g, &a), &a);
            let p = scalar(rho, &aa);
            c.close(p.im.abs().max(-p.re), TOL, || format!("{name}: (ρ, A⁺A) negative"));
            if !is_pure {
                c.holds(p.re > 1e-6, || format!("{name}: (ρ, A⁺A) not positive"));
            }
        }
        // 1.87
        c.close(diff(&involution(&g, rho), rho), TOL, || format!("{name}: ρ⁺ = ρ"));
        let idem = diff(&convolve(&g, rho, rho), rho);
        if *is_pure {
            c.close(idem, TOL, || format!("{name}: ρρ = ρ"));
        } else {
            c.holds(idem > 0.1, || format!("{name}: mixed state is idempotent"));
        }
        // 1.88: ⟨A⟩ = Tr(Aρ) = (A⁺, ρ) = (A, ρ)
        for a in &observables {
            let direct = trace(&g, &convolve(&g, a, rho));
            c.close((direct - scalar(&involution(&g, a), rho)).norm(), TOL, || format!("{name}: Tr(Aρ) vs (A⁺, ρ)"));
            c.close((direct - scalar(a, rho)).norm(), TOL, || format!("{name}: Tr(Aρ) vs (A, ρ)"));
            let obs = make_observable(&pw, &wrap(a)).unwrap();
            let lib = expectation(&pw, &obs, &state).unwrap();
            c.close((lib - direct.re).abs().max(direct.im.abs()), TOL, || format!("{name}: library expectation"));
        }
        // 1.89: Tr(ρρ₀) = (ρ, ρ₀)
        for (k, rho0) in pure.iter().enumerate() {
            let direct = trace(&g, &convolve(&g, rho, rho0));
            c.close((direct - scalar(rho, rho0)).norm(), TOL, || format!("{name}: Tr(ρρ₀) vs (ρ, ρ₀)"));
            let s0 = make_state(&pw, &wrap(rho0)).unwrap();
            let lib = transition_probability(&pw, &state, &s0).unwrap();
            c.close((lib - direct.re).abs(), TOL, || format!("{name}: library transition probability to pure {k}"));
        }
    }

    // pure states in distinct ideals
    let (p0, p1) = (make_state(&pw, &wrap(&pure[0])).unwrap(), make_state(&pw, &wrap(&pure[1])).unwrap());
    for (a, b) in [(&p0, &p1), (&p1, &p0)] {
        let v = transition_probability(&pw, a, b).unwrap();
        c.holds(v == 0.0, || format!("transition probability across ideals is {v:e}, not exactly 0"));
    }

    // mixed against pure: derived value 1/N, and Σ_α n(α) Tr(ρ(α) ρ₀(α)) from the blocks
    let derived = 1.0 / n as f64;
    let m = make_state(&pw, &wrap(&mixed)).unwrap();
    for (k, rho0) in pure.iter().enumerate() {
        let s0 = make_state(&pw, &wrap(rho0)).unwrap();
        let lib = transition_probability(&pw, &m, &s0).unwrap();
        c.close((lib - derived).abs(), 1e-12, || format!("mixed vs pure {k}: {lib}"));
        let blockwise: C64 =
            pw.irreps().iter().map(|d| (forward(d, &mixed) * forward(d, rho0)).trace() * d.dim as f64).sum();
        c.close((blockwise - derived).norm(), 1e-12, || format!("mixed vs pure {k}: block oracle {blockwise}"));
    }

    let two = pw.irreps().iter().position(|d| d.dim == 2).unwrap();
    let e11 = state_report(&pw, &pw.epsilon(two, 0, 0)).unwrap();
    c.note(format!(
        "ε(α)₁₁ of the 2-dim irrep is a Hermitian idempotent with f(e) = {}, so it is not a normalized state",
        e11.trace.re
    ));
    c
}

fn pair_values(g: &GroupTable, r: &mut impl Rng) -> PairFunction {
    PairFunction::from_fn(g, |_, _| complex(r))
}

/// `(1/N) Σ_g F(g) U(g)`.
fn shell(g: &GroupTable, f: &[C64], u: impl Fn(usize) -> CMatrix) -> CMatrix {
    let n = g.order();
    g.elements().fold(CMatrix::zeros(n, n), |acc, x| acc + u(x) * f[x]) / C64::new(n as f64, 0.0)
}

/// `(1/N²) Σ F(a, b) U(a, b)`.
fn pair_shell(g: &GroupTable, f: &PairFunction, u: impl Fn(usize, usize) -> CMatrix) -> CMatrix {
    let n = g.order();
    let mut acc = CMatrix::zeros(n, n);
    for a in 0..n {
        for b in 0..n {
            acc += u(a, b) * f.at(a, b);
        }
    }
    acc / C64::new((n * n) as f64, 0.0)
}

/// Convolution on `G × G`; the transposed form multiplies the second slot on
/// the other side.
fn pair_convolve(g: &GroupTable, f: &PairFunction, h: &PairFunction, transposed: bool) -> PairFunction {
    let n = g.order();
    PairFunction::from_fn(g, |g1, g2| {
        let mut s = zero();
        for h1 in 0..n {
            for h2 in 0..n {
                let second = if transposed { g.mul(g2, inverse(g, h2)) } else { g.mul(inverse(g, h2), g2) };
                s += f.at(h1, h2) * h.at(g.mul(inverse(g, h1), g1), second);
            }
        }
        s / (n * n) as f64
    })
}

/// `(A[g]F)(x) = F(g⁻¹ x g)`.
fn automorphism(g: &GroupTable, h: usize, f: &[C64]) -> Vec<C64> {
    g.elements().map(|x| f[g.mul(g.mul(inverse(g, h), x), h)]).collect()
}

fn unitary_function(g: &GroupTable, pw: &PeterWeyl, r: &mut impl Rng) -> Vec<C64> {
    // f(g) = Σ_α n(α) Tr(U(α) D(α)(g)ᵀ) with unitary blocks U(α)
    let blocks: Vec<CMatrix> = pw.irreps().iter().map(|d| matrix(d.dim, r).qr().q()).collect();
    g.elements()
        .map(|x| {
            pw.irreps()
                .iter()
                .zip(&blocks)
                .map(|(d, u)| u.iter().zip(d.matrices[x].iter()).map(|(p, q)| p * q).sum::<C64>() * d.dim as f64)
                .sum()
        })
        .collect()
}

fn is_unitary(m: &CMatrix) -> f64 {
    mat_diff(&(m.adjoint() * m), &CMatrix::identity(m.nrows(), m.nrows()))
}

/// Operator identities as dense matrices on S₃, with pair functions on Z₃
/// and S₃ for the two-sided operators.
pub fn operator_algebra() -> Check {
    let mut c = Check::default();
    let mut r = rng(7);
    let g = group("symmetric:3");
    let n = g.order();
    let pw = PeterWeyl::new(&g).unwrap();
    let wrap = |v: &[C64]| AlgebraElement::new(&g, v.to_vec()).unwrap();
    let tr = |k, h| translation_operator(&g, k, h).unwrap().matrix;
    let op = |k, f: &[C64]| convolution_operator(&pw, k, &wrap(f)).unwrap();
    use ConvolutionKind::{Left, Right, RightTransposed};
    use TranslationKind::{Auto, Left as L, Right as R};

    // translations against their definitions, and 1.94
    for a in g.elements() {
        c.close(mat_diff(&tr(L, a), &left(&g, a)), 0.0, || format!("L[{a}]"));
        c.close(mat_diff(&tr(R, a), &right(&g, a)), 0.0, || format!("R[{a}]"));
        c.close(mat_diff(&tr(Auto, a), &(left(&g, a) * right(&g, inverse(&g, a)))), 0.0, || format!("A[{a}]"));
        for b in g.elements() {
            let ab = g.mul(a, b);
            c.close(mat_diff(&tr(L, ab), &(tr(L, a) * tr(L, b))), 0.0, || format!("1.94 L[{a}·{b}]"));
            c.close(mat_diff(&tr(Auto, ab), &(tr(Auto, a) * tr(Auto, b))), 0.0, || format!("1.94 A[{a}·{b}]"));
            c.close(mat_diff(&tr(R, ab), &(tr(R, b) * tr(R, a))), 0.0, || format!("1.94 R[{a}·{b}]"));
        }
    }

    for _ in 0..20 {
        let (f, h) = (values(n, &mut r), values(n, &mut r));
        let (hf, fh) = (convolve(&g, &h, &f), convolve(&g, &f, &h));
        // the operators are the linear shells of the translations
        c.close(mat_diff(&op(Left, &f).matrix, &shell(&g, &f, |x| left(&g, x))), TOL, || "L{F} shell".into());
        c.close(mat_diff(&op(Right, &f).matrix, &shell(&g, &f, |x| right(&g, x))), TOL, || "R{F} shell".into());
        let rt = shell(&g, &f, |x| right(&g, inverse(&g, x)));
        c.close(mat_diff(&op(RightTransposed, &f).matrix, &rt), TOL, || "Rᵀ{F} shell".into());
        // 1.101, 1.105, 1.105a
        c.close(mat_diff(&(op(Left, &h).matrix * op(Left, &f).matrix), &op(Left, &hf).matrix), TOL, || "1.101".into());
        c.close(mat_diff(&(op(Right, &f).matrix * op(Right, &h).matrix), &op(Right, &hf).matrix), TOL, || {
            "1.105".into()
        });
        let lhs = op(RightTransposed, &f).matrix * op(RightTransposed, &h).matrix;
        c.close(mat_diff(&lhs, &op(RightTransposed, &fh).matrix), TOL, || "1.105a".into());
        // 1.120 for L and R
        let fp = involution(&g, &f);
        c.close(mat_diff(&op(Left, &f).matrix.adjoint(), &op(Left, &fp).matrix), TOL, || "1.120 L{F}⁺".into());
        c.close(mat_diff(&op(Right, &f).matrix.adjoint(), &op(Right, &fp).matrix), TOL, || "1.120 R{F}⁺".into());

        // 1.125a-d against explicit conjugation, and the library's rule-based form
        for x in g.elements() {
            let (lx, rx) = (left(&g, x), right(&g, x));
            let (lf, rf) = (op(Left, &f).matrix, op(Right, &f).matrix);
            let af = automorphism(&g, x, &f);
            let aif = automorphism(&g, inverse(&g, x), &f);
            c.close(mat_diff(&(&lx * &lf * lx.adjoint()), &op(Left, &af).matrix), TOL, || format!("1.125a g = {x}"));
            c.close(mat_diff(&(&rx * &lf * rx.adjoint()), &lf), TOL, || format!("1.125b g = {x}"));
            c.close(mat_diff(&(&lx * &rf * lx.adjoint()), &rf), TOL, || format!("1.125c g = {x}"));
            c.close(mat_diff(&(&rx * &rf * rx.adjoint()), &op(Right, &aif).matrix), TOL, || format!("1.125d g = {x}"));
            for y in g.elements() {
                let u = left(&g, x) * right(&g, y);
                for o in [op(Left, &f), op(Right, &f), op(RightTransposed, &f)] {
                    let got = conjugate_operator(&pw, x, y, &o).unwrap().matrix;
                    c.close(mat_diff(&got, &(&u * &o.matrix * u.adjoint())), TOL, || {
                        format!("conjugation rule for {} at ({x}, {y})", o.provenance.tag())
                    });
                }
            }
        }
    }

    // 1.122-1.123: L{F}, R{F} unitary exactly when F⁺ * F = 𝕀
    let mut unit = vec![zero(); n];
    unit[identity(&g)] = C64::new(n as f64, 0.0);
    for k in 0..20 {
        let f = if k % 2 == 0 { unitary_function(&g, &pw, &mut r) } else { values(n, &mut r) };
        let ff = diff(&convolve(&g, &involution(&g, &f), &f), &unit) / n as f64;
        let (ul, ur) = (is_unitary(&op(Left, &f).matrix), is_unitary(&op(Right, &f).matrix));
        let rep = unitarity_check(&pw, &wrap(&f), TOL).unwrap();
        if k % 2 == 0 {
            c.close(ff.max(ul).max(ur), TOL, || "1.122/1.123: unitary F".into());
            c.holds(rep.unitary, || "library misses a unitary F".into());
        } else {
            c.holds(ff > 1e-3 && ul > 1e-3 && ur > 1e-3, || "1.122/1.123: random F looks unitary".into());
            c.holds(!rep.unitary, || "library accepts a random F".into());
        }
    }

    // non-invariance witness for 1.95a, next to the identities that do hold
    let (f, h) = (values(n, &mut r), values(n, &mut r));
    let fh = convolve(&g, &f, &h);
    let mut witness = 0.0f64;
    for x in g.elements() {
        let lt = |v: &[C64]| -> Vec<C64> { g.elements().map(|y| v[g.mul(inverse(&g, x), y)]).collect() };
        c.close(diff(&lt(&fh), &convolve(&g, &lt(&f), &h)), TOL, || format!("1.95a equality at {x}"));
        witness = witness.max(diff(&lt(&fh), &convolve(&g, &lt(&f), &lt(&h))));
        let a = |v: &[C64]| automorphism(&g, x, v);
        c.close(diff(&a(&fh), &convolve(&g, &a(&f), &a(&h))), TOL, || format!("1.95c at {x}"));
    }
    c.holds(witness > 1e-3, || "no witness: L[g](F*H) = (L[g]F)*(L[g]H) on the sample".into());
    c.note(format!("1.95a witness: ‖L[g](F*H) − (L[g]F)*(L[g]H)‖ = {witness:.3}"));

    // two-sided operators
    let mut literal = 0.0f64;
    for d in ["cyclic:3", "symmetric:3"] {
        let g = group(d);
        let n = g.order();
        let pw = PeterWeyl::new(&g).unwrap();
        let t = |k, f: &PairFunction| two_sided_operator(&g, k, f).unwrap();
        let star = |f: &PairFunction| PairFunction::from_fn(&g, |a, b| f.at(inverse(&g, a), inverse(&g, b)).conj());
        for _ in 0..20 {
            let (f, h) = (pair_values(&g, &mut r), pair_values(&g, &mut r));
            let tt = t(TwoSidedKind::Transposed, &f).matrix;
            let tp = t(TwoSidedKind::Plain, &f).matrix;
            let want = pair_shell(&g, &f, |a, b| left(&g, a) * right(&g, inverse(&g, b)));
            c.close(mat_diff(&tt, &want), TOL, || format!("{d}: T_t{{F}} shell"));
            c.close(mat_diff(&tp, &pair_shell(&g, &f, |a, b| left(&g, a) * right(&g, b))), TOL, || {
                format!("{d}: T{{F}} shell")
            });
            // 1.112 and its plain counterpart
            let fh = pair_convolve(&g, &f, &h, false);
            c.close(diff(&f.convolve(&h, &g).values, &fh.values), TOL, || format!("{d}: pair convolution"));
            let lhs = &tt * t(TwoSidedKind::Transposed, &h).matrix;
            c.close(mat_diff(&lhs, &t(TwoSidedKind::Transposed, &fh).matrix), TOL, || format!("{d}: 1.112"));
            let lhs = &tp * t(TwoSidedKind::Plain, &h).matrix;
            let fth = pair_convolve(&g, &f, &h, true);
            c.close(mat_diff(&lhs, &t(TwoSidedKind::Plain, &fth).matrix), TOL, || format!("{d}: T{{F}}T{{H}}"));
            // 1.120 for T
            c.close(mat_diff(&tp.adjoint(), &t(TwoSidedKind::Plain, &star(&f)).matrix), TOL, || {
                format!("{d}: 1.120 T")
            });

            // 1.127 / 1.128
            for g1 in g.elements() {
                for g2 in g.elements() {
                    let u = left(&g, g1) * right(&g, g2);
                    let want = &u * &tt * u.adjoint();
                    let conj = |x: usize, k: usize| g.mul(g.mul(inverse(&g, x), k), x);
                    // F(g₁⁻¹ a g₁, g₂ b g₂⁻¹): A[g₁] on the first slot, A[g₂⁻¹] on the second
                    let moved = PairFunction::from_fn(&g, |a, b| f.at(conj(g1, a), conj(inverse(&g, g2), b)));
                    let got = t(TwoSidedKind::Transposed, &moved).matrix;
                    c.close(mat_diff(&got, &want), TOL, || format!("{d}: 1.128 at ({g1}, {g2})"));
                    let lib = conjugate_operator(&pw, g1, g2, &t(TwoSidedKind::Transposed, &f)).unwrap();
                    c.close(mat_diff(&lib.matrix, &want), TOL, || format!("{d}: library T_t conjugation"));
                    let plain = &u * &tp * u.adjoint();
                    c.close(mat_diff(&t(TwoSidedKind::Plain, &moved).matrix, &plain), TOL, || format!("{d}: 1.127"));
                    let as_printed = PairFunction::from_fn(&g, |a, b| f.at(conj(g1, a), conj(g2, b)));
                    literal = literal.max(mat_diff(&t(TwoSidedKind::Transposed, &as_printed).matrix, &want));
                }
            }
        }

        // 1.122c/1.123 for T: H(a, b) = F₁(a) F₂(b) with unitary factors, against random H
        let mut pair_unit = PairFunction::from_fn(&g, |_, _| zero());
        let e = identity(&g);
        pair_unit.values[e * n + e] = C64::new((n * n) as f64, 0.0);
        for k in 0..10 {
            let h = if k % 2 == 0 {
                let (f1, f2) = (unitary_function(&g, &pw, &mut r), unitary_function(&g, &pw, &mut r));
                PairFunction::from_fn(&g, |a, b| f1[a] * f2[b])
            } else {
                pair_values(&g, &mut r)
            };
            let hh = diff(&pair_convolve(&g, &star(&h), &h, false).values, &pair_unit.values) / (n * n) as f64;
            let ut =
                is_unitary(&t(TwoSidedKind::Plain, &h).matrix).max(is_unitary(&t(TwoSidedKind::Transposed, &h).matrix));
            if k % 2 == 0 {
                c.close(hh.max(ut), TOL, || format!("{d}: 1.122c unitary H"));
            } else {
                c.holds(hh > 1e-3 && ut > 1e-3, || format!("{d}: random H looks unitary"));
            }
        }
    }
    c.note(format!(
        "1.128 holds with A[g₂⁻¹] on the second slot, as in 1.127; the printed A[g₁] × A[g₂] is off by {literal:.3} on S₃"
    ));
    c
}
