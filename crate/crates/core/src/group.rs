//! Finite groups as full multiplication tables.
//!
//! Elements are indices `0..N`. The ordering is fixed per constructor:
//!
//! * `cyclic:n1xn2x...`: tuples `(g1, g2, ...)` with `0 <= gi < ni` in
//!   mixed-radix order, first factor most significant.
//! * `dihedral:n`: index `b*n + k` is `r^k s^b` (rotations first, then
//!   reflections), with `s r s = r^-1`.
//! * `symmetric:n`: permutations of `0..n` in lexicographic order of their
//!   one-line notation; `(p q)(i) = p(q(i))`.
//! * `quaternion:8`: index `4*b + a` is `i^a j^b`, so the order is
//!   `1, i, -1, -i, j, k, -j, -k`.
//!
//! The identity is always index 0.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::C64;

pub const MAX_ORDER: usize = 1024;

/// Parsed group descriptor.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum GroupSpec {
    Cyclic(Vec<usize>),
    Dihedral(usize),
    Symmetric(usize),
    Quaternion8,
}

impl FromStr for GroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::UnsupportedGroup(s.to_string());
        let (kind, arg) = s.trim().split_once(':').ok_or_else(bad)?;
        let num = |t: &str| t.trim().parse::<usize>().map_err(|_| bad());
        match kind.trim() {
            "cyclic" => {
                let factors = arg.split('x').map(num).collect::<Result<Vec<_>>>()?;
                Ok(GroupSpec::Cyclic(factors))
            }
            "dihedral" => Ok(GroupSpec::Dihedral(num(arg)?)),
            "symmetric" => Ok(GroupSpec::Symmetric(num(arg)?)),
            "quaternion" if num(arg)? == 8 => Ok(GroupSpec::Quaternion8),
            "quaternion" => Err(Error::OutOfRange {
                what: "quaternion group order",
                detail: format!("only quaternion:8 is supported, got `{s}`"),
            }),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for GroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupSpec::Cyclic(ns) => {
                let parts: Vec<String> = ns.iter().map(|n| n.to_string()).collect();
                write!(f, "cyclic:{}", parts.join("x"))
            }
            GroupSpec::Dihedral(n) => write!(f, "dihedral:{n}"),
            GroupSpec::Symmetric(n) => write!(f, "symmetric:{n}"),
            GroupSpec::Quaternion8 => write!(f, "quaternion:8"),
        }
    }
}

/// A finite group given by its multiplication and inverse tables.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupTable {
    label: String,
    spec: Option<GroupSpec>,
    order: usize,
    mul: Vec<usize>,
    inv: Vec<usize>,
    identity: usize,
}

impl GroupTable {
    /// Parse a descriptor string and build the group.
    pub fn parse(descriptor: &str) -> Result<Self> {
        Self::build(&descriptor.parse()?)
    }

    pub fn build(spec: &GroupSpec) -> Result<Self> {
        let mut table = match spec {
            GroupSpec::Cyclic(ns) => cyclic_product(ns)?,
            GroupSpec::Dihedral(n) => dihedral(*n)?,
            GroupSpec::Symmetric(n) => symmetric(*n)?,
            GroupSpec::Quaternion8 => quaternion8(),
        };
        table.label = spec.to_string();
        table.spec = Some(spec.clone());
        Ok(table)
    }

    /// Build from explicit tables. The result is validated but carries no
    /// catalog spec, so no irreps are available for it.
    pub fn from_tables(label: &str, mul: Vec<Vec<usize>>, inv: Vec<usize>, identity: usize) -> Result<Self> {
        let order = mul.len();
        if order == 0 || order > MAX_ORDER {
            return Err(Error::OutOfRange { what: "group order", detail: format!("{order}") });
        }
        if inv.len() != order {
            return Err(Error::LengthMismatch { expected: order, got: inv.len() });
        }
        if let Some(row) = mul.iter().find(|r| r.len() != order) {
            return Err(Error::LengthMismatch { expected: order, got: row.len() });
        }
        let table = GroupTable {
            label: label.to_string(),
            spec: None,
            order,
            mul: mul.into_iter().flatten().collect(),
            inv,
            identity,
        };
        table.verify()?;
        Ok(table)
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn spec(&self) -> Option<&GroupSpec> {
        self.spec.as_ref()
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.order + b]
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inv[a]
    }

    /// `g x g^-1`.
    #[inline]
    pub fn conjugate(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn check_index(&self, index: usize) -> Result<()> {
        if index < self.order {
            Ok(())
        } else {
            Err(Error::IndexOutOfRange { index, order: self.order })
        }
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Normalized Haar weight of a single element, `1/N`.
    pub fn haar_weight(&self) -> f64 {
        1.0 / self.order as f64
    }

    /// `(1/N) * sum_x f(x)`.
    pub fn haar_integral(&self, values: &[C64]) -> Result<C64> {
        if values.len() != self.order {
            return Err(Error::LengthMismatch { expected: self.order, got: values.len() });
        }
        Ok(values.iter().sum::<C64>() * self.haar_weight())
    }

    /// Conjugacy classes, each sorted, ordered by smallest member.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let mut class_of = vec![usize::MAX; self.order];
        let mut classes = Vec::new();
        for x in self.elements() {
            if class_of[x] != usize::MAX {
                continue;
            }
            let mut class: Vec<usize> = self.elements().map(|h| self.conjugate(h, x)).collect();
            class.sort_unstable();
            class.dedup();
            for &y in &class {
                class_of[y] = classes.len();
            }
            classes.push(class);
        }
        classes
    }

    /// Exhaustive check of the group axioms: Latin square, identity,
    /// inverses and associativity (cubic in the order).
    pub fn verify(&self) -> Result<()> {
        let n = self.order;
        let fail = |detail: String| Err(Error::OutOfRange { what: "group table", detail });
        if self.identity >= n {
            return fail(format!("identity {} outside 0..{n}", self.identity));
        }
        if self.mul.iter().chain(&self.inv).any(|&x| x >= n) {
            return fail("entry outside element range".into());
        }
        for a in 0..n {
            let mut row = vec![false; n];
            let mut col = vec![false; n];
            for b in 0..n {
                row[self.mul(a, b)] = true;
                col[self.mul(b, a)] = true;
            }
            if row.contains(&false) || col.contains(&false) {
                return fail(format!("row/column {a} is not a permutation"));
            }
            if self.mul(self.identity, a) != a || self.mul(a, self.identity) != a {
                return fail(format!("identity law fails at {a}"));
            }
            if self.mul(a, self.inv(a)) != self.identity || self.mul(self.inv(a), a) != self.identity {
                return fail(format!("inverse law fails at {a}"));
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = self.mul(a, b);
                for c in 0..n {
                    if self.mul(ab, c) != self.mul(a, self.mul(b, c)) {
                        return fail(format!("associativity fails at ({a},{b},{c})"));
                    }
                }
            }
        }
        Ok(())
    }

    /// Human-readable name of an element in the constructor's notation.
    pub fn element_name(&self, x: usize) -> String {
        match &self.spec {
            Some(GroupSpec::Cyclic(ns)) => {
                let digits = mixed_radix_digits(x, ns);
                let parts: Vec<String> = digits.iter().map(|d| d.to_string()).collect();
                format!("({})", parts.join(","))
            }
            Some(GroupSpec::Dihedral(n)) => {
                let (k, b) = (x % n, x / n);
                match (k, b) {
                    (0, 0) => "e".into(),
                    (0, _) => "s".into(),
                    (_, 0) => format!("r^{k}"),
                    _ => format!("r^{k} s"),
                }
            }
            Some(GroupSpec::Symmetric(n)) => {
                let p = nth_permutation(*n, x);
                let parts: Vec<String> = p.iter().map(|d| d.to_string()).collect();
                format!("[{}]", parts.join(" "))
            }
            Some(GroupSpec::Quaternion8) => ["1", "i", "-1", "-i", "j", "k", "-j", "-k"][x].into(),
            None => x.to_string(),
        }
    }
}

/// Digits of `x` in the mixed radix `ns`, most significant first.
pub fn mixed_radix_digits(mut x: usize, ns: &[usize]) -> Vec<usize> {
    let mut digits = vec![0; ns.len()];
    for (d, &n) in digits.iter_mut().zip(ns).rev() {
        *d = x % n;
        x /= n;
    }
    digits
}

pub fn mixed_radix_index(digits: &[usize], ns: &[usize]) -> usize {
    digits.iter().zip(ns).fold(0, |acc, (&d, &n)| acc * n + d)
}

fn from_fn(order: usize, f: impl Fn(usize, usize) -> usize) -> GroupTable {
    let mut mul = Vec::with_capacity(order * order);
    for a in 0..order {
        for b in 0..order {
            mul.push(f(a, b));
        }
    }
    let mut inv = vec![0; order];
    for a in 0..order {
        inv[a] = (0..order).find(|&b| mul[a * order + b] == 0).expect("identity must be index 0");
    }
    GroupTable { label: String::new(), spec: None, order, mul, inv, identity: 0 }
}

fn cyclic_product(ns: &[usize]) -> Result<GroupTable> {
    if ns.is_empty() || ns.contains(&0) {
        return Err(Error::OutOfRange { what: "cyclic factor", detail: format!("{ns:?}") });
    }
    let order = ns.iter().try_fold(1usize, |acc, &n| acc.checked_mul(n)).filter(|&o| o <= MAX_ORDER);
    let order = order.ok_or_else(|| Error::OutOfRange {
        what: "group order",
        detail: format!("product {ns:?} exceeds {MAX_ORDER}"),
    })?;
    Ok(from_fn(order, |a, b| {
        let da = mixed_radix_digits(a, ns);
        let db = mixed_radix_digits(b, ns);
        let sum: Vec<usize> = da.iter().zip(&db).zip(ns).map(|((x, y), n)| (x + y) % n).collect();
        mixed_radix_index(&sum, ns)
    }))
}

fn dihedral(n: usize) -> Result<GroupTable> {
    if n == 0 || 2 * n > MAX_ORDER {
        return Err(Error::OutOfRange { what: "dihedral n", detail: format!("{n} (supported 1..={})", MAX_ORDER / 2) });
    }
    // r^a s^b * r^c s^d = r^(a + (-1)^b c) s^(b+d)
    Ok(from_fn(2 * n, |x, y| {
        let (a, b) = (x % n, x / n);
        let (c, d) = (y % n, y / n);
        let k = if b == 0 { (a + c) % n } else { (a + n - c) % n };
        ((b + d) % 2) * n + k
    }))
}

/// The `index`-th permutation of `0..n` in lexicographic order.
pub fn nth_permutation(n: usize, mut index: usize) -> Vec<usize> {
    let mut pool: Vec<usize> = (0..n).collect();
    let mut fact: usize = (1..n.max(1)).product();
    let mut out = Vec::with_capacity(n);
    for k in (0..n).rev() {
        let q = index / fact;
        index %= fact;
        out.push(pool.remove(q));
        fact = fact.checked_div(k).unwrap_or(fact);
    }
    out
}

/// Lexicographic rank of a permutation of `0..n`.
pub fn permutation_rank(p: &[usize]) -> usize {
    let n = p.len();
    let mut rank = 0;
    for i in 0..n {
        let smaller = p[i + 1..].iter().filter(|&&x| x < p[i]).count();
        rank = rank * (n - i) + smaller;
    }
    rank
}

fn symmetric(n: usize) -> Result<GroupTable> {
    if !(1..=4).contains(&n) {
        return Err(Error::OutOfRange { what: "symmetric n", detail: format!("{n} (supported 1..=4)") });
    }
    let order: usize = (1..=n).product();
    let perms: Vec<Vec<usize>> = (0..order).map(|i| nth_permutation(n, i)).collect();
    Ok(from_fn(order, |a, b| {
        let composed: Vec<usize> = (0..n).map(|i| perms[a][perms[b][i]]).collect();
        permutation_rank(&composed)
    }))
}

/// Unit quaternions `±1, ±i, ±j, ±k` as `(sign, unit)` with unit in
/// `{1, i, j, k}` encoded 0..4.
fn quaternion8() -> GroupTable {
    // index 4*b + a  <->  i^a j^b
    const ELEMS: [(i8, u8); 8] = [(1, 0), (1, 1), (-1, 0), (-1, 1), (1, 2), (1, 3), (-1, 2), (-1, 3)];
    // unit products: UNIT[p][q] = (sign, unit) for e_p e_q
    const UNIT: [[(i8, u8); 4]; 4] = [
        [(1, 0), (1, 1), (1, 2), (1, 3)],
        [(1, 1), (-1, 0), (1, 3), (-1, 2)],
        [(1, 2), (-1, 3), (-1, 0), (1, 1)],
        [(1, 3), (1, 2), (-1, 1), (-1, 0)],
    ];
    from_fn(8, |x, y| {
        let (sx, ux) = ELEMS[x];
        let (sy, uy) = ELEMS[y];
        let (s, u) = UNIT[ux as usize][uy as usize];
        let target = (sx * sy * s, u);
        ELEMS.iter().position(|&e| e == target).expect("closed")
    })
}

/// JSON export schema: `{label, order, mul, inv, identity}`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct GroupTableJson {
    pub label: String,
    pub order: usize,
    pub mul: Vec<Vec<usize>>,
    pub inv: Vec<usize>,
    pub identity: usize,
}

impl From<&GroupTable> for GroupTableJson {
    fn from(g: &GroupTable) -> Self {
        GroupTableJson {
            label: g.label.clone(),
            order: g.order,
            mul: g.mul.chunks(g.order).map(<[usize]>::to_vec).collect(),
            inv: g.inv.clone(),
            identity: g.identity,
        }
    }
}
