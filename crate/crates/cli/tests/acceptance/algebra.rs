use harmonika::{
    axiom_violations, irreps_of, AlgebraElement, AxiomViolations, CMatrix, GroupAlgebra, HPlusAlgebra, PeterWeyl,
    UnitarySpace, C64,
};

use crate::oracle::*;

const TOL: f64 = 1e-10;

/// Eqs. 1.1, 1.3-1.8 on every catalog group and on `L(H)` for three Gram
/// matrices. Each target is checked by the library checker, by the same
/// checker on a second implementation, and by residuals written out here.
pub fn h_plus_axioms() -> Check {
    let mut c = Check::default();
    let mut r = rng(1);
    let pair = |r: &mut _| (complex(r), complex(r));

    for d in CATALOG {
        let g = group(d);
        let alg = GroupAlgebra::new(&g);
        let naive = NaiveAlgebra(&g);
        let wrap = |v: &Vec<C64>| AlgebraElement::new(&g, v.clone()).unwrap();
        let (mut lib, mut twin) = (AxiomViolations::default(), AxiomViolations::default());
        for _ in 0..200 {
            let (x, y, w) = (element(&g, &mut r), element(&g, &mut r), element(&g, &mut r));
            let (l, m) = pair(&mut r);
            lib.merge(&axiom_violations(&alg, &x, &y, &w, l, m));
            twin.merge(&axiom_violations(&naive, &x.values, &y.values, &w.values, l, m));
            let residuals = axiom_residuals(
                &x.values,
                &y.values,
                &w.values,
                (l, m),
                |a, u, b, v| u.iter().zip(v).map(|(p, q)| a * p + b * q).collect(),
                |u, v| alg.convolve(&wrap(u), &wrap(v)).unwrap().values,
                |u| alg.involution(&wrap(u)).values,
                |u, v| scalar(u, v),
            );
            for (label, dev) in residuals {
                c.close(dev, TOL, || format!("{d}: {label}"));
            }
            c.close(diff(&alg.convolve(&x, &y).unwrap().values, &convolve(&g, &x.values, &y.values)), TOL, || {
                format!("{d}: convolution differs from the explicit sum")
            });
            c.close(diff(&alg.involution(&x).values, &involution(&g, &x.values)), 0.0, || format!("{d}: involution"));
            c.close((alg.trace(&x) - naive.trace(&x.values)).norm(), 0.0, || format!("{d}: trace"));
            c.close((alg.scalar_product(&x, &y).unwrap() - scalar(&x.values, &y.values)).norm(), TOL, || {
                format!("{d}: scalar product")
            });
        }
        for (label, v) in lib.named() {
            c.close(v, TOL, || format!("{d}: library checker, {label}"));
        }
        for (label, v) in twin.named() {
            c.close(v, TOL, || format!("{d}: explicit-sum algebra, {label}"));
        }
    }

    let diag = |w: &[f64]| {
        CMatrix::from_diagonal(&nalgebra::DVector::from_iterator(w.len(), w.iter().map(|&x| C64::new(x, 0.0))))
    };
    let models = [
        ("Γ = I₂", UnitarySpace::orthonormal(2).unwrap(), diag(&[1.0, 1.0])),
        ("Γ = I₃", UnitarySpace::orthonormal(3).unwrap(), diag(&[1.0, 1.0, 1.0])),
        ("Γ = diag(2, 1)", UnitarySpace::diagonal(&[2.0, 1.0]).unwrap(), diag(&[2.0, 1.0])),
    ];
    for (label, space, gram) in models {
        let oracle = GramOracle { gram };
        let n = space.dim();
        let (mut lib, mut twin) = (AxiomViolations::default(), AxiomViolations::default());
        for _ in 0..200 {
            let (x, y, w) = (matrix(n, &mut r), matrix(n, &mut r), matrix(n, &mut r));
            let (l, m) = pair(&mut r);
            lib.merge(&axiom_violations(&space, &x, &y, &w, l, m));
            twin.merge(&axiom_violations(&oracle, &x, &y, &w, l, m));
            let residuals = axiom_residuals(
                &x,
                &y,
                &w,
                (l, m),
                |a, u, b, v| u * a + v * b,
                |u, v| u * v,
                |u| space.adjoint(u),
                |u, v| oracle.pairing(u, v),
            );
            for (axiom, dev) in residuals {
                c.close(dev, TOL, || format!("{label}: {axiom}"));
            }
            c.close(mat_diff(&space.adjoint(&x), &oracle.adjoint(&x)), TOL, || format!("{label}: adjoint"));
            c.close((space.scalar(&x, &y) - oracle.pairing(&x, &y)).norm(), TOL, || format!("{label}: scalar"));
        }
        for (axiom, v) in lib.named() {
            c.close(v, TOL, || format!("{label}: library checker, {axiom}"));
        }
        for (axiom, v) in twin.named() {
            c.close(v, TOL, || format!("{label}: Gram oracle, {axiom}"));
        }
    }
    c
}

/// Eqs. 1.73a-d over all index tuples, Σ n(α)² = N and the class count.
pub fn representations() -> Check {
    let mut c = Check::default();
    for d in CATALOG {
        let g = group(d);
        let n = g.order();
        let irreps = irreps_of(&g).unwrap();
        let squares: usize = irreps.iter().map(|x| x.dim * x.dim).sum();
        c.holds(squares == n, || format!("{d}: Σ n(α)² = {squares}, order {n}"));
        let classes = class_count(&g);
        c.holds(irreps.len() == classes, || format!("{d}: {} irreps for {classes} classes", irreps.len()));

        for rep in &irreps {
            let id = CMatrix::identity(rep.dim, rep.dim);
            for a in g.elements() {
                let da = &rep.matrices[a];
                c.close(mat_diff(&(da.adjoint() * da), &id), TOL, || format!("{d} {}: D not unitary", rep.label));
                for b in g.elements() {
                    let lhs = &rep.matrices[g.mul(a, b)];
                    c.close(mat_diff(lhs, &(da * &rep.matrices[b])), TOL, || {
                        format!("{d} {}: not a homomorphism", rep.label)
                    });
                }
            }
            // Σ |χ|² / N = 1 for an irreducible character
            let chi: Vec<C64> = rep.matrices.iter().map(|m| m.trace()).collect();
            c.close((scalar(&chi, &chi).re - 1.0).abs(), TOL, || format!("{d} {}: reducible", rep.label));
        }

        // every matrix element as a function: (α, i, j, values)
        let mut funcs = Vec::new();
        for (a, rep) in irreps.iter().enumerate() {
            for i in 0..rep.dim {
                for j in 0..rep.dim {
                    funcs.push((a, i, j, rep.matrices.iter().map(|m| m[(i, j)]).collect::<Vec<C64>>()));
                }
            }
        }
        for (a, i, j, f) in &funcs {
            let na = irreps[*a].dim as f64;
            for (b, k, l, h) in &funcs {
                // 1.73a / 1.73c: D_ij * D_kl = δ_jk D_il / n, zero across irreps
                let want = if a == b && j == k {
                    scale(&irreps[*a].matrices.iter().map(|m| m[(*i, *l)]).collect::<Vec<_>>(), 1.0 / na)
                } else {
                    vec![C64::new(0.0, 0.0); n]
                };
                c.close(diff(&convolve(&g, f, h), &want), TOL, || format!("{d}: D({a})_{i}{j} * D({b})_{k}{l}"));
                // 1.73b / 1.73d: (D_ij, D_kl) = δ_ik δ_jl / n
                let want = if a == b && i == k && j == l { 1.0 / na } else { 0.0 };
                c.close((scalar(f, h) - want).norm(), TOL, || format!("{d}: (D({a})_{i}{j}, D({b})_{k}{l})"));
            }
        }
    }
    c
}

/// Eqs. 1.79a-f on S₃ and D₄, Σ ε(α) = 𝕀, and the normalization of the
/// central idempotents.
pub fn epsilon_basis() -> Check {
    let mut c = Check::default();
    let mut largest_1_68 = 0.0f64;
    for d in ["symmetric:3", "dihedral:4"] {
        let g = group(d);
        let n = g.order();
        let pw = PeterWeyl::new(&g).unwrap();
        let alg = pw.algebra();
        let irreps = pw.irreps();
        let zero = vec![C64::new(0.0, 0.0); n];
        // ε(α)_ij = n(α) D(α)_ij
        let eps = |a: usize, i: usize, j: usize| -> Vec<C64> {
            irreps[a].matrices.iter().map(|m| m[(i, j)] * irreps[a].dim as f64).collect()
        };
        let mut tuples = Vec::new();
        for (a, rep) in irreps.iter().enumerate() {
            for i in 0..rep.dim {
                for j in 0..rep.dim {
                    tuples.push((a, i, j));
                    c.close(diff(&pw.epsilon(a, i, j).values, &eps(a, i, j)), 1e-14, || format!("{d}: ε({a})_{i}{j}"));
                }
            }
        }
        for &(a, i, j) in &tuples {
            let e = eps(a, i, j);
            let na = irreps[a].dim as f64;
            for &(b, k, l) in &tuples {
                let f = eps(b, k, l);
                // 1.79a, 1.79b
                let want = if a == b && j == k { eps(a, i, l) } else { zero.clone() };
                c.close(diff(&convolve(&g, &e, &f), &want), TOL, || format!("{d}: ε({a})_{i}{j} * ε({b})_{k}{l}"));
                // 1.79c, 1.79d
                let want = if a == b && i == k && j == l { na } else { 0.0 };
                c.close((scalar(&e, &f) - want).norm(), TOL, || format!("{d}: (ε({a})_{i}{j}, ε({b})_{k}{l})"));
            }
            // 1.79e
            c.close(diff(&involution(&g, &e), &eps(a, j, i)), TOL, || format!("{d}: ε({a})_{i}{j}⁺"));
            // 1.79f: unit trace per ideal, through the blocks
            let delta = if i == j { 1.0 } else { 0.0 };
            let elem = AlgebraElement::new(&g, e.clone()).unwrap();
            let lib = pw.block_trace(&pw.forward(&elem).unwrap()).unwrap();
            c.close((lib - delta).norm(), TOL, || format!("{d}: block trace of ε({a})_{i}{j}"));
            let blockwise: C64 = irreps.iter().map(|rep| forward(rep, &e).trace()).sum();
            c.close((blockwise - delta).norm(), TOL, || format!("{d}: oracle block trace of ε({a})_{i}{j}"));
            // the functional f(e) gives n(α) δ_ij instead
            c.close((alg.trace(&elem) - na * delta).norm(), TOL, || format!("{d}: f(e) of ε({a})_{i}{j}"));
        }

        // 1.70: Σ_α ε(α) = 𝕀 = N δ_e
        let mut unit = zero.clone();
        for (a, rep) in irreps.iter().enumerate() {
            let central: Vec<C64> = (0..rep.dim)
                .map(|i| eps(a, i, i))
                .fold(zero.clone(), |acc, v| acc.iter().zip(&v).map(|(p, q)| p + q).collect());
            let na = rep.dim as f64;
            c.close(diff(&pw.central_idempotent(a).values, &central), TOL, || format!("{d}: ε({a})"));
            // 1.77a: ε(α) * ε(α) = ε(α)
            let square = convolve(&g, &central, &central);
            c.close(diff(&square, &central), TOL, || format!("{d}: ε({a}) * ε({a}) = ε({a})"));
            // 1.77b: (ε(α), ε(α)) = n(α)²
            c.close((scalar(&central, &central) - na * na).norm(), TOL, || format!("{d}: (ε({a}), ε({a}))"));
            // the alternative δ n² ε normalization fails as soon as n(α) > 1
            let alt = diff(&square, &scale(&central, na * na));
            if rep.dim > 1 {
                largest_1_68 = largest_1_68.max(alt);
                c.holds(alt > 0.5, || format!("{d}: ε({a}) * ε({a}) matches n² ε({a})"));
            }
            // raw characters are not idempotent without the factor n(α)
            if rep.dim > 1 {
                let chi: Vec<C64> = scale(&central, 1.0 / na);
                c.holds(diff(&convolve(&g, &chi, &chi), &chi) > 0.1, || format!("{d}: χ({a}) idempotent"));
            }
            for i in 0..n {
                unit[i] += central[i];
            }
        }
        let mut want = zero.clone();
        want[identity(&g)] = C64::new(n as f64, 0.0);
        c.close(diff(&unit, &want), TOL, || format!("{d}: Σ ε(α) = 𝕀"));
    }
    c.note(format!(
        "ε(α) * ε(α) = ε(α) holds (1.77a); the n(α)² ε(α) form of 1.68 is off by {largest_1_68:.3} at n(α) = 2"
    ));
    c.note("Tr ε_ij = δ_ij (1.79f) holds for the block trace Σ_α Tr F(α); the functional f(e) gives n(α) δ_ij");
    c
}

/// Eq. 1.82 on 100 random pairs per catalog group.
pub fn convolution_theorem() -> Check {
    let mut c = Check::default();
    let mut r = rng(4);
    for d in CATALOG {
        let g = group(d);
        let pw = PeterWeyl::new(&g).unwrap();
        let alg = pw.algebra();
        for _ in 0..100 {
            let (f, h) = (element(&g, &mut r), element(&g, &mut r));
            let spatial = convolve(&g, &f.values, &h.values);
            let fh = alg.convolve(&f, &h).unwrap();
            c.close(diff(&fh.values, &spatial), TOL, || format!("{d}: library convolution vs explicit sum"));

            let (bf, bh) = (pw.forward(&f).unwrap(), pw.forward(&h).unwrap());
            let product = pw.convolve(&bf, &bh).unwrap();
            c.close(pw.forward(&fh).unwrap().max_abs_diff(&product), TOL, || format!("{d}: forward(f*h)"));
            let spectral = pw.inverse(&product).unwrap();
            c.close(diff(&spectral.values, &spatial), TOL, || format!("{d}: spectral path vs explicit sum"));

            for (k, rep) in pw.irreps().iter().enumerate() {
                let want = forward(rep, &f.values) * forward(rep, &h.values);
                c.close(mat_diff(&forward(rep, &spatial), &want), TOL, || format!("{d}: oracle blocks of f*h"));
                c.close(mat_diff(&bf.blocks[k], &forward(rep, &f.values)), TOL, || format!("{d}: forward block"));
            }
        }
    }
    c
}

/// Eq. 1.97: eigenvalues of the regular representation against the blockwise
/// spectrum with multiplicities.
pub fn spectrum() -> Check {
    let mut c = Check::default();
    let mut r = rng(5);
    for d in ["cyclic:4", "symmetric:3", "dihedral:4"] {
        let g = group(d);
        let n = g.order();
        let pw = PeterWeyl::new(&g).unwrap();
        for _ in 0..50 {
            let v = values(n, &mut r);
            let vp = involution(&g, &v);
            let f: Vec<C64> = v.iter().zip(&vp).map(|(a, b)| (a + b) * 0.5).collect();

            let mut dense = schur_eigenvalues(&regular_matrix(&g, &f));
            let imag = dense.iter().map(|z| z.im.abs()).fold(0.0, f64::max);
            c.close(imag, 1e-8, || format!("{d}: Hermitian f with complex regular eigenvalue"));
            dense.sort_by(|a, b| a.re.total_cmp(&b.re));

            let elem = AlgebraElement::new(&g, f).unwrap();
            let entries = pw.spectrum(&elem).unwrap();
            let total: usize = entries.iter().map(|e| e.multiplicity).sum();
            c.holds(total == n, || format!("{d}: multiplicities sum to {total}"));
            let mut blockwise = pw.spectrum_flat(&elem).unwrap();
            blockwise.sort_by(|a, b| a.re.total_cmp(&b.re));
            c.holds(blockwise.len() == n, || format!("{d}: {} blockwise eigenvalues", blockwise.len()));
            let dev =
                dense.iter().zip(&blockwise).map(|(a, b)| (a.re - b.re).abs().max(b.im.abs())).fold(0.0, f64::max);
            c.close(dev, 1e-8, || format!("{d}: sorted spectra differ"));
        }
    }
    c
}
