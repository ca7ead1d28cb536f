//! Unitary irreducible representations of the catalog groups.
//!
//! One representative per equivalence class, trivial irrep first. Labels:
//!
//! * cyclic products: `chi(k1,...,kr)`, `D(g) = exp(2πi Σ k_i g_i / n_i)`,
//!   in the same mixed-radix order as the elements;
//! * dihedral: `A1`, `A2` (and `B1`, `B2` for even n), then `E1`, `E2`, ...
//!   with `r^k ↦ rotation by 2πhk/n` and `s ↦ diag(1, -1)`;
//! * symmetric: partitions, e.g. `[3]`, `[1,1,1]`, `[2,1]`;
//! * quaternion: `A1`, `A_i`, `A_j`, `A_k`, `E` with `i ↦ diag(i, -i)`,
//!   `j ↦ [[0, 1], [-1, 0]]`.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::group::{mixed_radix_digits, nth_permutation, permutation_rank, GroupSpec, GroupTable};
use crate::linalg::{kron, max_abs_diff, nullity, unitarize, CMatrix, C64, I, ONE, ZERO};

#[derive(Debug, Clone, PartialEq)]
pub struct Irrep {
    pub label: String,
    pub group: String,
    pub dim: usize,
    /// `D(g)` for every element, in canonical element order.
    pub matrices: Vec<CMatrix>,
}

impl Irrep {
    pub fn new(label: impl Into<String>, group: &GroupTable, matrices: Vec<CMatrix>) -> Result<Self> {
        let dim = matrices.first().map_or(0, |m| m.nrows());
        if matrices.len() != group.order() {
            return Err(Error::LengthMismatch { expected: group.order(), got: matrices.len() });
        }
        if dim == 0 || matrices.iter().any(|m| m.nrows() != dim || m.ncols() != dim) {
            return Err(Error::DimensionMismatch("irrep matrices must be square and of one size".into()));
        }
        Ok(Irrep { label: label.into(), group: group.label().to_string(), dim, matrices })
    }

    /// `g ↦ D(g)_ij` as a function on the group.
    pub fn matrix_element(&self, i: usize, j: usize) -> Vec<C64> {
        self.matrices.iter().map(|m| m[(i, j)]).collect()
    }

    /// `g ↦ Tr D(g)`.
    pub fn character_values(&self) -> Vec<C64> {
        self.matrices.iter().map(|m| m.trace()).collect()
    }

    /// Block-diagonal sum of two representations of the same group.
    pub fn direct_sum(&self, other: &Irrep) -> Irrep {
        let n = self.dim + other.dim;
        let matrices = self
            .matrices
            .iter()
            .zip(&other.matrices)
            .map(|(a, b)| {
                let mut m = CMatrix::zeros(n, n);
                m.view_mut((0, 0), (self.dim, self.dim)).copy_from(a);
                m.view_mut((self.dim, self.dim), (other.dim, other.dim)).copy_from(b);
                m
            })
            .collect();
        Irrep { label: format!("{}+{}", self.label, other.label), group: self.group.clone(), dim: n, matrices }
    }

    /// Deviations from the representation invariants.
    pub fn check(&self, g: &GroupTable) -> Result<RepresentationCheck> {
        self.check_shape(g)?;
        let id = CMatrix::identity(self.dim, self.dim);
        let mut out =
            RepresentationCheck { identity: max_abs_diff(&self.matrices[g.identity()], &id), ..Default::default() };
        for a in g.elements() {
            let da = &self.matrices[a];
            out.unitarity = out.unitarity.max(max_abs_diff(&(da.adjoint() * da), &id));
            for b in g.elements() {
                let lhs = &self.matrices[g.mul(a, b)];
                out.homomorphism = out.homomorphism.max(max_abs_diff(lhs, &(da * &self.matrices[b])));
            }
        }
        Ok(out)
    }

    fn check_shape(&self, g: &GroupTable) -> Result<()> {
        if self.matrices.len() != g.order() {
            return Err(Error::DimensionMismatch(format!(
                "irrep `{}` has {} matrices, group `{}` has order {}",
                self.label,
                self.matrices.len(),
                g.label(),
                g.order()
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct RepresentationCheck {
    pub homomorphism: f64,
    pub unitarity: f64,
    pub identity: f64,
}

impl RepresentationCheck {
    pub fn max(&self) -> f64 {
        self.homomorphism.max(self.unitarity).max(self.identity)
    }
}

/// Schur test: the representation is irreducible iff its commutant
/// `{X : X D(g) = D(g) X for all g}` is one-dimensional.
pub fn check_irreducible(d: &Irrep, g: &GroupTable) -> Result<bool> {
    Ok(commutant_dimension(d, g)? == 1)
}

pub fn commutant_dimension(d: &Irrep, g: &GroupTable) -> Result<usize> {
    d.check_shape(g)?;
    let n = d.dim;
    let id = CMatrix::identity(n, n);
    // column-major vec(X D - D X) = (Dᵀ ⊗ I - I ⊗ D) vec(X)
    let mut system = CMatrix::zeros(g.order() * n * n, n * n);
    for (k, m) in d.matrices.iter().enumerate() {
        let block = kron(&m.transpose(), &id) - kron(&id, m);
        system.view_mut((k * n * n, 0), (n * n, n * n)).copy_from(&block);
    }
    Ok(nullity(&system, 1e-9))
}

/// Character: one value per conjugacy class.
#[derive(Debug, Clone, PartialEq)]
pub struct Character {
    pub label: String,
    pub classes: Vec<Vec<usize>>,
    pub values: Vec<C64>,
}

impl Character {
    /// The character as a function on all elements.
    pub fn as_function(&self, order: usize) -> Vec<C64> {
        let mut f = vec![ZERO; order];
        for (class, &v) in self.classes.iter().zip(&self.values) {
            for &x in class {
                f[x] = v;
            }
        }
        f
    }
}

pub fn character_of(d: &Irrep, g: &GroupTable) -> Result<Character> {
    d.check_shape(g)?;
    let classes = g.conjugacy_classes();
    let values = classes.iter().map(|c| d.matrices[c[0]].trace()).collect();
    Ok(Character { label: d.label.clone(), classes, values })
}

/// The catalog irreps of a group built from a descriptor.
pub fn irreps_of(g: &GroupTable) -> Result<Vec<Irrep>> {
    let spec = g.spec().ok_or_else(|| Error::NonCatalog(g.label().to_string()))?;
    let raw: Vec<(String, Vec<CMatrix>)> = match spec {
        GroupSpec::Cyclic(ns) => cyclic_irreps(ns, g.order()),
        GroupSpec::Dihedral(n) => dihedral_irreps(*n),
        GroupSpec::Symmetric(n) => symmetric_irreps(*n),
        GroupSpec::Quaternion8 => quaternion_irreps(),
    };
    let irreps = raw
        .into_iter()
        .map(|(label, ms)| Irrep::new(label, g, ms.iter().map(unitarize).collect()))
        .collect::<Result<Vec<_>>>()?;
    check_complete(&irreps, g)?;
    Ok(irreps)
}

/// `Σ n(α)² = N`.
pub fn check_complete(irreps: &[Irrep], g: &GroupTable) -> Result<()> {
    let got: usize = irreps.iter().map(|d| d.dim * d.dim).sum();
    if got != g.order() {
        return Err(Error::IncompleteIrreps { got, order: g.order() });
    }
    if let Some(d) = irreps.iter().find(|d| d.group != g.label()) {
        return Err(Error::GroupMismatch { left: d.group.clone(), right: g.label().to_string() });
    }
    Ok(())
}

fn scalar(z: C64) -> CMatrix {
    CMatrix::from_element(1, 1, z)
}

fn real2(a: f64, b: f64, c: f64, d: f64) -> CMatrix {
    CMatrix::from_row_slice(2, 2, &[C64::new(a, 0.0), C64::new(b, 0.0), C64::new(c, 0.0), C64::new(d, 0.0)])
}

fn cyclic_irreps(ns: &[usize], order: usize) -> Vec<(String, Vec<CMatrix>)> {
    (0..order)
        .map(|chi| {
            let k = mixed_radix_digits(chi, ns);
            let parts: Vec<String> = k.iter().map(|x| x.to_string()).collect();
            let ms = (0..order)
                .map(|x| {
                    let g = mixed_radix_digits(x, ns);
                    let phase: f64 =
                        k.iter().zip(&g).zip(ns).map(|((&ki, &gi), &n)| ((ki * gi) % n) as f64 / n as f64).sum();
                    scalar(C64::from_polar(1.0, 2.0 * PI * phase))
                })
                .collect();
            (format!("chi({})", parts.join(",")), ms)
        })
        .collect()
}

fn dihedral_irreps(n: usize) -> Vec<(String, Vec<CMatrix>)> {
    let elems: Vec<(usize, usize)> = (0..2 * n).map(|x| (x % n, x / n)).collect();
    let one_dim = |label: &str, r: f64, s: f64| {
        let ms = elems.iter().map(|&(k, b)| scalar(C64::new(r.powi(k as i32) * s.powi(b as i32), 0.0))).collect();
        (label.to_string(), ms)
    };
    let mut out = vec![one_dim("A1", 1.0, 1.0), one_dim("A2", 1.0, -1.0)];
    if n.is_multiple_of(2) {
        out.push(one_dim("B1", -1.0, 1.0));
        out.push(one_dim("B2", -1.0, -1.0));
    }
    for h in 1..=(n - 1) / 2 {
        let ms = elems
            .iter()
            .map(|&(k, b)| {
                let t = 2.0 * PI * (h * k % n) as f64 / n as f64;
                let rot = real2(t.cos(), -t.sin(), t.sin(), t.cos());
                if b == 0 {
                    rot
                } else {
                    rot * real2(1.0, 0.0, 0.0, -1.0)
                }
            })
            .collect();
        out.push((format!("E{h}"), ms));
    }
    out
}

fn parity(p: &[usize]) -> f64 {
    let inversions =
        (0..p.len()).flat_map(|i| (i + 1..p.len()).map(move |j| (i, j))).filter(|&(i, j)| p[i] > p[j]).count();
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

/// Orthonormal basis of the sum-zero subspace of `R^n` as columns.
fn helmert_basis(n: usize) -> CMatrix {
    let mut b = CMatrix::zeros(n, n - 1);
    for k in 1..n {
        let norm = ((k * (k + 1)) as f64).sqrt();
        for i in 0..k {
            b[(i, k - 1)] = C64::new(1.0 / norm, 0.0);
        }
        b[(k, k - 1)] = C64::new(-(k as f64) / norm, 0.0);
    }
    b
}

/// Standard representation: permutation matrices restricted to the
/// sum-zero subspace.
fn standard_rep(perms: &[Vec<usize>]) -> Vec<CMatrix> {
    let n = perms[0].len();
    let b = helmert_basis(n);
    perms
        .iter()
        .map(|p| {
            let pm = CMatrix::from_fn(n, n, |i, j| if p[j] == i { ONE } else { ZERO });
            b.transpose() * pm * &b
        })
        .collect()
}

/// Action of a permutation of `0..4` on the three pairings
/// `{01|23}, {02|13}, {03|12}`, as a permutation of `0..3`.
fn pairing_action(p: &[usize]) -> Vec<usize> {
    let partner = |x: usize| -> usize {
        // the pairing containing {0, x}
        x - 1
    };
    let pairings = [(0usize, 1usize), (0, 2), (0, 3)];
    pairings
        .iter()
        .map(|&(a, b)| {
            let (pa, pb) = (p[a], p[b]);
            let other = if pa == 0 {
                pb
            } else if pb == 0 {
                pa
            } else {
                // {pa, pb} avoids 0, so its complement contains 0
                (1..4).find(|&x| x != pa && x != pb).expect("three non-zero points")
            };
            partner(other)
        })
        .collect()
}

fn symmetric_irreps(n: usize) -> Vec<(String, Vec<CMatrix>)> {
    let order: usize = (1..=n).product();
    let perms: Vec<Vec<usize>> = (0..order).map(|i| nth_permutation(n, i)).collect();
    let trivial: Vec<CMatrix> = perms.iter().map(|_| scalar(ONE)).collect();
    let sign: Vec<CMatrix> = perms.iter().map(|p| scalar(C64::new(parity(p), 0.0))).collect();
    let label = |parts: &[usize]| {
        let s: Vec<String> = parts.iter().map(|x| x.to_string()).collect();
        format!("[{}]", s.join(","))
    };
    let mut out = vec![(label(&[n]), trivial)];
    if n >= 2 {
        out.push((label(&vec![1; n]), sign.clone()));
    }
    if n == 4 {
        let s3: Vec<Vec<usize>> = (0..6).map(|i| nth_permutation(3, i)).collect();
        let s3_std = standard_rep(&s3);
        let ms = perms.iter().map(|p| s3_std[permutation_rank(&pairing_action(p))].clone()).collect();
        out.push((label(&[2, 2]), ms));
    }
    if n >= 3 {
        let std = standard_rep(&perms);
        let mut head = vec![n - 1, 1];
        out.push((label(&head), std.clone()));
        if n == 4 {
            head = vec![2, 1, 1];
            let twisted = std.iter().zip(&sign).map(|(m, s)| m * s[(0, 0)]).collect();
            out.push((label(&head), twisted));
        }
    }
    out
}

fn quaternion_irreps() -> Vec<(String, Vec<CMatrix>)> {
    let exps: Vec<(u32, u32)> = (0..8).map(|x| ((x % 4) as u32, (x / 4) as u32)).collect();
    let one_dim = |label: &str, ci: f64, cj: f64| {
        let ms = exps.iter().map(|&(a, b)| scalar(C64::new(ci.powi(a as i32) * cj.powi(b as i32), 0.0))).collect();
        (label.to_string(), ms)
    };
    let qi = CMatrix::from_row_slice(2, 2, &[I, ZERO, ZERO, -I]);
    let qj = real2(0.0, 1.0, -1.0, 0.0);
    let pow = |m: &CMatrix, e: u32| (0..e).fold(CMatrix::identity(2, 2), |acc, _| acc * m);
    let e = exps.iter().map(|&(a, b)| pow(&qi, a) * pow(&qj, b)).collect();
    vec![
        one_dim("A1", 1.0, 1.0),
        one_dim("A_i", 1.0, -1.0),
        one_dim("A_j", -1.0, 1.0),
        one_dim("A_k", -1.0, -1.0),
        ("E".to_string(), e),
    ]
}
