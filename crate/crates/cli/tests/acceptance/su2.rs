use std::f64::consts::PI;

use harmonika::su2::{
    clebsch_gordan, pointwise_product_expand, pointwise_structure_constants, su2_quadrature, wigner_big_d,
};
use harmonika::{CMatrix, Euler, Spin, C64};
use nalgebra::{DMatrix, SymmetricEigen};
use rand::Rng;

use crate::oracle::*;

/// `J₊` in the basis `m = j, j-1, ..., -j`.
fn raising(tj: u32) -> DMatrix<f64> {
    let n = tj as usize + 1;
    let j = tj as f64 / 2.0;
    DMatrix::from_fn(n, n, |row, col| {
        let m = j - col as f64;
        if col >= 1 && row == col - 1 {
            ((j - m) * (j + m + 1.0)).sqrt()
        } else {
            0.0
        }
    })
}

fn jz(tj: u32) -> DMatrix<f64> {
    let n = tj as usize + 1;
    DMatrix::from_fn(n, n, |a, b| if a == b { tj as f64 / 2.0 - a as f64 } else { 0.0 })
}

/// `d^j(β) = exp(-iβJ_y)` by scaling and squaring a Taylor series.
fn little_d(tj: u32, beta: f64) -> DMatrix<f64> {
    let jp = raising(tj);
    let squarings = 8;
    let a = (&jp - jp.transpose()) * (-beta / 2.0 / f64::from(1u32 << squarings));
    let n = tj as usize + 1;
    let mut sum = DMatrix::identity(n, n);
    let mut term = DMatrix::identity(n, n);
    for k in 1..30 {
        term = &term * &a / k as f64;
        sum += &term;
    }
    for _ in 0..squarings {
        sum = &sum * &sum;
    }
    sum
}

/// `D^j_{m'm} = e^{-im'α} d^j_{m'm}(β) e^{-imγ}`.
fn big_d(tj: u32, e: Euler) -> CMatrix {
    let d = little_d(tj, e.beta);
    let m = |k: usize| tj as f64 / 2.0 - k as f64;
    CMatrix::from_fn(d.nrows(), d.ncols(), |a, b| {
        C64::from_polar(1.0, -m(a) * e.alpha) * d[(a, b)] * C64::from_polar(1.0, -m(b) * e.gamma)
    })
}

/// Coupled states `|J M⟩` in the product basis from `J²`: the `M = J`
/// eigenvector with a positive `m₁ = j₁` component, then lowered with `J₋`.
fn cg_oracle(tj1: u32, tj2: u32) -> Vec<(u32, i32, DMatrix<f64>)> {
    let (n1, n2) = (tj1 as usize + 1, tj2 as usize + 1);
    let (i1, i2) = (DMatrix::<f64>::identity(n1, n1), DMatrix::<f64>::identity(n2, n2));
    let jp = raising(tj1).kronecker(&i2) + i1.kronecker(&raising(tj2));
    let z = jz(tj1).kronecker(&i2) + i1.kronecker(&jz(tj2));
    let jm = jp.transpose();
    let j2 = &z * &z + (&jp * &jm + &jm * &jp) * 0.5;
    let mut out = Vec::new();
    let mut tj = tj1.abs_diff(tj2);
    while tj <= tj1 + tj2 {
        let j = tj as f64 / 2.0;
        let sector: Vec<usize> = (0..n1 * n2).filter(|&k| (z[(k, k)] - j).abs() < 1e-12).collect();
        let block = DMatrix::from_fn(sector.len(), sector.len(), |a, b| j2[(sector[a], sector[b])]);
        let eig = SymmetricEigen::new(block);
        let target = j * (j + 1.0);
        let col = (0..sector.len())
            .min_by(|&a, &b| (eig.eigenvalues[a] - target).abs().total_cmp(&(eig.eigenvalues[b] - target).abs()))
            .unwrap();
        let mut v = DMatrix::<f64>::zeros(n1 * n2, 1);
        for (a, &k) in sector.iter().enumerate() {
            v[(k, 0)] = eig.eigenvectors[(a, col)];
        }
        // Condon-Shortley: (j₁ j₂; j₁, J - j₁ | J J) > 0
        let lead = (0..n2).map(|k| v[(k, 0)]).find(|x| x.abs() > 1e-9).unwrap();
        if lead < 0.0 {
            v = -v;
        }
        let mut tm = tj as i32;
        loop {
            out.push((tj, tm, v.clone()));
            if tm == -(tj as i32) {
                break;
            }
            v = &jm * &v;
            v /= v.norm();
            tm -= 2;
        }
        tj += 2;
    }
    out
}

fn random_euler(r: &mut impl Rng) -> Euler {
    Euler::new(r.random_range(0.0..2.0 * PI), r.random_range(0.0..PI), r.random_range(0.0..4.0 * PI))
}

/// Quadrature orthogonality, Clebsch-Gordan tables, the pointwise product
/// expansion (Eq. 1.129) and the structure constants (Eq. 1.130).
pub fn su2_suite() -> Check {
    let mut c = Check::default();
    let mut r = rng(8);

    // the library D against the oracle
    for _ in 0..20 {
        let e = random_euler(&mut r);
        for tj in 0..=4 {
            c.close(mat_diff(&wigner_big_d(Spin(tj), e).unwrap(), &big_d(tj, e)), 1e-10, || format!("D^{tj}/2"));
        }
    }

    // 1.73c with n(α) = 2j + 1, j ≤ 2
    let nodes = su2_quadrature(Spin(4)).unwrap();
    let weight: f64 = nodes.iter().map(|q| q.weight).sum();
    c.close((weight - 1.0).abs(), 1e-12, || "quadrature weights do not sum to 1".into());
    let ds: Vec<Vec<CMatrix>> = nodes.iter().map(|q| (0..=4).map(|tj| big_d(tj, q.euler)).collect()).collect();
    for tj in 0..=4usize {
        for tk in 0..=4usize {
            for a in 0..=tj {
                for b in 0..=tj {
                    for p in 0..=tk {
                        for q in 0..=tk {
                            let v: C64 = ds
                                .iter()
                                .zip(&nodes)
                                .map(|(m, x)| m[tj][(a, b)].conj() * m[tk][(p, q)] * x.weight)
                                .sum();
                            let want = if tj == tk && a == p && b == q { 1.0 / (tj + 1) as f64 } else { 0.0 };
                            c.close((v - want).norm(), 1e-8, || format!("∫ conj D^{tj}_{a}{b} D^{tk}_{p}{q}"));
                        }
                    }
                }
            }
        }
    }

    // Clebsch-Gordan tables for j₁, j₂ ≤ 3/2
    for tj1 in 0..=3 {
        for tj2 in 0..=3 {
            let table = clebsch_gordan(Spin(tj1), Spin(tj2)).unwrap();
            let states = cg_oracle(tj1, tj2);
            c.holds(states.len() == table.rows.len(), || format!("({tj1}/2, {tj2}/2): coupled state count"));
            for (tj, tm, v) in states {
                for (k, &(tm1, tm2)) in table.cols.iter().enumerate() {
                    c.close((table.coefficient(tm1, tm2, tj, tm) - v[(k, 0)]).abs(), 1e-10, || {
                        format!("({tj1}/2 {tm1}/2; {tj2}/2 {tm2}/2 | {tj}/2 {tm}/2)")
                    });
                }
            }
        }
    }

    // 1.129 for every index tuple with j₁, j₂ ≤ 1; 1.130 with its factor
    let points: Vec<Euler> = (0..50).map(|_| random_euler(&mut r)).collect();
    // oracle D^j at each point for 2j = 0..=4, enough for every κ ≤ j₁ + j₂
    let at: Vec<Vec<CMatrix>> = points.iter().map(|&e| (0..=4).map(|tj| big_d(tj, e)).collect()).collect();
    let mut ratio = 0.0f64;
    for tj1 in 0..=2u32 {
        for tj2 in 0..=2u32 {
            let (s1, s2) = (Spin(tj1), Spin(tj2));
            let (n1, n2) = (s1.dim(), s2.dim());
            let oracle = cg_oracle(tj1, tj2);
            // (j₁ j₂ a r | κ k) from the oracle, positions in descending m
            let coeff = |a: usize, rr: usize, tk: u32, k: usize| -> f64 {
                let tm = tk as i32 - 2 * k as i32;
                let (_, _, v) = oracle.iter().find(|(t, m, _)| *t == tk && *m == tm).unwrap();
                v[(a * n2 + rr, 0)]
            };
            for a in 0..n1 {
                for b in 0..n1 {
                    for rr in 0..n2 {
                        for s in 0..n2 {
                            let exp = pointwise_product_expand(s1, (a, b), s2, (rr, s)).unwrap();
                            let sc = pointwise_structure_constants(s1, (a, b), s2, (rr, s)).unwrap();
                            for ((kappa, cd), (_, ce)) in exp.terms.iter().zip(&sc.terms) {
                                let nk = kappa.dim();
                                for k in 0..nk {
                                    for l in 0..nk {
                                        let cg = coeff(a, rr, kappa.0, k) * coeff(b, s, kappa.0, l);
                                        c.close((cd[(k, l)] - cg).abs(), 1e-10, || {
                                            format!("1.129 coefficient {s1} {s2} {kappa}")
                                        });
                                        let want = (n1 * n2) as f64 / nk as f64 * cg;
                                        c.close((ce[(k, l)] - want).abs(), 1e-10, || {
                                            format!("1.130 coefficient {s1} {s2} {kappa}")
                                        });
                                        if cd[(k, l)].abs() > 1e-6 {
                                            ratio = ratio
                                                .max((ce[(k, l)] / cd[(k, l)] - (n1 * n2) as f64 / nk as f64).abs());
                                        }
                                    }
                                }
                            }
                            for (&e, ds) in points.iter().zip(&at) {
                                let want = ds[tj1 as usize][(a, b)] * ds[tj2 as usize][(rr, s)];
                                c.close((exp.evaluate(e).unwrap() - want).norm(), 1e-9, || {
                                    format!("1.129 {s1} {s2} at {e:?}")
                                });
                                // the same product in the ε basis: e^j = (2j+1) D^j
                                let lhs = want * (n1 * n2) as f64;
                                let rhs: C64 = sc
                                    .terms
                                    .iter()
                                    .map(|(kappa, m)| {
                                        let dk = &ds[kappa.0 as usize];
                                        dk.iter().zip(m.iter()).map(|(x, y)| x * *y).sum::<C64>() * kappa.dim() as f64
                                    })
                                    .sum();
                                c.close((lhs - rhs).norm(), 1e-9, || format!("1.130 {s1} {s2} at {e:?}"));
                            }
                        }
                    }
                }
            }
        }
    }
    c.note(format!("structure constants over D coefficients equal n(j₁)n(j₂)/n(κ) to within {ratio:.1e}"));
    c
}
