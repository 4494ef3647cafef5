//! Brute-force point counts over prime fields.
//!
//! Solutions of
//!
//! ```text
//! D₁θ(D₁)⋯D_rθ(D_r) Z₁⋯Z_k = 1          (non-orientable, θ(A) = (Aᵀ)⁻¹)
//! [A₁,B₁]⋯[A_g,B_g] X₁⋯X_k = 1           (orientable)
//! ```
//!
//! with `Z_i` (resp. `X_i`) in prescribed conjugacy classes of `GL_n(F_q)`,
//! and the groupoid count `#solutions / |GL_n(F_q)|`.
//!
//! Counting goes through histograms: the distribution of `Dθ(D)` (or of
//! commutators) over the group is convolved `r` (or `g`) times, the orbit
//! side is convolved over its member lists, and the two sides are joined
//! on `P_left · P_right = 1`. Parallel work splits over the outer index of
//! each convolution and partial histograms are merged by addition.

use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::exactalg::Scalar;
use crate::partitions::{MultiPartition, Partition};
use crate::series::{SurfaceKind, SurfaceSpec};

/// Default cap on the estimated number of matrix products.
pub const DEFAULT_ITERATION_CAP: u64 = 1_000_000_000;

/// Largest `q^{n²}` the group enumeration will walk through.
const ENUMERATION_LIMIT: u64 = 50_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FfError {
    #[error("q = {0} must be a prime with 2 < q <= 13")]
    BadField(u32),
    #[error("matrix size n = {0} is outside 1..=3")]
    BadSize(usize),
    #[error("enumerating GL_{n}(F_{q}) means scanning {candidates} matrices (limit {limit})")]
    TooLarge {
        n: usize,
        q: u32,
        candidates: u64,
        limit: u64,
    },
    #[error("estimated cost {estimate} matrix products exceeds the cap {cap}")]
    CostCap { estimate: u64, cap: u64 },
    #[error("matrix is singular")]
    Singular,
    #[error("invalid orbit: {0}")]
    Orbit(String),
}

fn check_field(q: u32) -> Result<(), FfError> {
    let prime = q >= 2 && (2..q).take_while(|d| d * d <= q).all(|d| !q.is_multiple_of(d));
    if !prime || q <= 2 || q > 13 {
        return Err(FfError::BadField(q));
    }
    Ok(())
}

fn check_size(n: usize) -> Result<(), FfError> {
    if !(1..=3).contains(&n) {
        return Err(FfError::BadSize(n));
    }
    Ok(())
}

/// An element of `F_q`, `q` prime.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct FqElem {
    pub value: u32,
    pub q: u32,
}

impl FqElem {
    pub fn new(value: i64, q: u32) -> Self {
        FqElem {
            value: value.rem_euclid(q as i64) as u32,
            q,
        }
    }

    pub fn is_zero(self) -> bool {
        self.value == 0
    }

    pub fn mul(self, other: FqElem) -> FqElem {
        FqElem {
            value: self.value * other.value % self.q,
            q: self.q,
        }
    }

    pub fn pow(self, mut e: u32) -> FqElem {
        let mut base = self;
        let mut acc = FqElem::new(1, self.q);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(base);
            }
            base = base.mul(base);
            e >>= 1;
        }
        acc
    }

    /// Multiplicative inverse by Fermat.
    pub fn inv(self) -> Option<FqElem> {
        (!self.is_zero()).then(|| self.pow(self.q - 2))
    }

    /// Multiplicative order, for nonzero elements.
    pub fn order(self) -> u32 {
        (1..self.q).find(|&k| self.pow(k).value == 1).unwrap_or(0)
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.value)
    }
}

/// An `n×n` matrix over `F_q`, `n ≤ 3`, stored row-major.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqMatrix {
    n: u8,
    q: u8,
    e: [u8; 9],
}

impl FqMatrix {
    pub fn from_rows(rows: &[Vec<i64>], q: u32) -> Result<Self, FfError> {
        let n = rows.len();
        check_size(n)?;
        let mut e = [0u8; 9];
        for (i, row) in rows.iter().enumerate() {
            if row.len() != n {
                return Err(FfError::BadSize(row.len()));
            }
            for (j, &x) in row.iter().enumerate() {
                e[i * n + j] = x.rem_euclid(q as i64) as u8;
            }
        }
        Ok(FqMatrix { n: n as u8, q: q as u8, e })
    }

    pub fn scalar(n: usize, c: FqElem) -> Self {
        let mut m = FqMatrix {
            n: n as u8,
            q: c.q as u8,
            e: [0; 9],
        };
        for i in 0..n {
            m.e[i * n + i] = c.value as u8;
        }
        m
    }

    pub fn identity(n: usize, q: u32) -> Self {
        Self::scalar(n, FqElem::new(1, q))
    }

    pub fn diagonal(entries: &[FqElem]) -> Self {
        let n = entries.len();
        let mut m = Self::identity(n, entries[0].q);
        for (i, x) in entries.iter().enumerate() {
            m.e[i * n + i] = x.value as u8;
        }
        m
    }

    pub fn n(&self) -> usize {
        self.n as usize
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.e[i * self.n() + j] as u32
    }

    fn set(&mut self, i: usize, j: usize, v: u32) {
        let n = self.n();
        self.e[i * n + j] = v as u8;
    }

    pub fn mul(&self, other: &FqMatrix) -> FqMatrix {
        let n = self.n();
        let q = self.q as u32;
        let mut out = FqMatrix {
            n: self.n,
            q: self.q,
            e: [0; 9],
        };
        for i in 0..n {
            for j in 0..n {
                let mut acc = 0u32;
                for l in 0..n {
                    acc += self.get(i, l) * other.get(l, j);
                }
                out.set(i, j, acc % q);
            }
        }
        out
    }

    pub fn transpose(&self) -> FqMatrix {
        let mut out = *self;
        for i in 0..self.n() {
            for j in 0..self.n() {
                out.set(i, j, self.get(j, i));
            }
        }
        out
    }

    pub fn det(&self) -> FqElem {
        let q = self.q as u32;
        let g = |i, j| self.get(i, j) as i64;
        let d = match self.n() {
            1 => g(0, 0),
            2 => g(0, 0) * g(1, 1) - g(0, 1) * g(1, 0),
            _ => {
                g(0, 0) * (g(1, 1) * g(2, 2) - g(1, 2) * g(2, 1))
                    - g(0, 1) * (g(1, 0) * g(2, 2) - g(1, 2) * g(2, 0))
                    + g(0, 2) * (g(1, 0) * g(2, 1) - g(1, 1) * g(2, 0))
            }
        };
        FqElem::new(d, q)
    }

    /// Inverse through the adjugate.
    pub fn inverse(&self) -> Result<FqMatrix, FfError> {
        let q = self.q as u32;
        let dinv = self.det().inv().ok_or(FfError::Singular)?;
        let n = self.n();
        let mut out = *self;
        if n == 1 {
            out.set(0, 0, dinv.value);
            return Ok(out);
        }
        for i in 0..n {
            for j in 0..n {
                // cofactor C_{ji}
                let minor: Vec<i64> = (0..n)
                    .filter(|&r| r != j)
                    .flat_map(|r| (0..n).filter(move |&c| c != i).map(move |c| (r, c)))
                    .map(|(r, c)| self.get(r, c) as i64)
                    .collect();
                let m = if n == 2 {
                    minor[0]
                } else {
                    minor[0] * minor[3] - minor[1] * minor[2]
                };
                let sign = if (i + j) % 2 == 0 { 1 } else { -1 };
                let c = FqElem::new(sign * m, q);
                out.set(i, j, c.mul(dinv).value);
            }
        }
        Ok(out)
    }

    pub fn is_identity(&self) -> bool {
        *self == Self::identity(self.n(), self.q as u32)
    }
}

impl fmt::Debug for FqMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<Vec<u32>> = (0..self.n())
            .map(|i| (0..self.n()).map(|j| self.get(i, j)).collect())
            .collect();
        write!(f, "{rows:?} mod {}", self.q)
    }
}

/// `θ(A) = (Aᵀ)⁻¹`.
pub fn theta(a: &FqMatrix) -> Result<FqMatrix, FfError> {
    a.transpose().inverse()
}

/// `|GL_n(F_q)| = Π_{i<n} (qⁿ - qⁱ)`.
pub fn gl_order(n: usize, q: u32) -> u128 {
    let qn = (q as u128).pow(n as u32);
    (0..n).map(|i| qn - (q as u128).pow(i as u32)).product()
}

/// Every invertible matrix, once, in row-major lexicographic order.
pub fn enumerate_gl(n: usize, q: u32) -> Result<Vec<FqMatrix>, FfError> {
    check_size(n)?;
    check_field(q)?;
    let candidates = (q as u64).pow((n * n) as u32);
    if candidates > ENUMERATION_LIMIT {
        return Err(FfError::TooLarge {
            n,
            q,
            candidates,
            limit: ENUMERATION_LIMIT,
        });
    }
    let out: Vec<FqMatrix> = (0..candidates)
        .into_par_iter()
        .filter_map(|mut idx| {
            let mut m = FqMatrix {
                n: n as u8,
                q: q as u8,
                e: [0; 9],
            };
            for slot in (0..n * n).rev() {
                m.e[slot] = (idx % q as u64) as u8;
                idx /= q as u64;
            }
            (!m.det().is_zero()).then_some(m)
        })
        .collect();
    Ok(out)
}

/// A conjugacy class of `GL_n(F_q)` used as a puncture condition.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum FqOrbit {
    /// `{ζ·I}`.
    Central { zeta: i64 },
    /// The class of `diag(λ₁^{m₁}, …)`, distinct eigenvalues.
    Split { eigenvalues: Vec<(i64, usize)> },
}

impl FqOrbit {
    pub fn central(zeta: i64) -> Self {
        FqOrbit::Central { zeta }
    }

    pub fn split(eigenvalues: Vec<(i64, usize)>) -> Self {
        FqOrbit::Split { eigenvalues }
    }

    /// Eigenvalues in `F_q` with multiplicities, for a given `n` (central
    /// orbits have no intrinsic size).
    fn spectrum(&self, n: usize, q: u32) -> Result<Vec<(FqElem, usize)>, FfError> {
        let spec: Vec<(FqElem, usize)> = match self {
            FqOrbit::Central { zeta } => vec![(FqElem::new(*zeta, q), n)],
            FqOrbit::Split { eigenvalues } => eigenvalues
                .iter()
                .map(|&(l, m)| (FqElem::new(l, q), m))
                .collect(),
        };
        if spec.iter().any(|(x, m)| x.is_zero() || *m == 0) {
            return Err(FfError::Orbit("eigenvalues must be nonzero with positive multiplicity".into()));
        }
        if spec.iter().map(|(_, m)| m).sum::<usize>() != n {
            return Err(FfError::Orbit(format!("multiplicities do not add up to n = {n}")));
        }
        for (i, (a, _)) in spec.iter().enumerate() {
            if spec[..i].iter().any(|(b, _)| b == a) {
                return Err(FfError::Orbit(format!("repeated eigenvalue {a} mod {q}")));
            }
        }
        Ok(spec)
    }

    /// Multiplicities, sorted decreasingly.
    pub fn partition(&self, n: usize, q: u32) -> Result<Partition, FfError> {
        let spec = self.spectrum(n, q)?;
        Ok(Partition::new(spec.iter().map(|(_, m)| *m).collect()).expect("positive"))
    }

    fn representative(&self, n: usize, q: u32) -> Result<FqMatrix, FfError> {
        let diag: Vec<FqElem> = self
            .spectrum(n, q)?
            .into_iter()
            .flat_map(|(x, m)| std::iter::repeat_n(x, m))
            .collect();
        Ok(FqMatrix::diagonal(&diag))
    }

    /// The full conjugacy class.
    pub fn members(&self, n: usize, q: u32, gl: &[FqMatrix]) -> Result<Vec<FqMatrix>, FfError> {
        let rep = self.representative(n, q)?;
        if let FqOrbit::Central { .. } = self {
            return Ok(vec![rep]);
        }
        conjugacy_class(&rep, gl)
    }
}

impl fmt::Display for FqOrbit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FqOrbit::Central { zeta } => write!(f, "central({zeta})"),
            FqOrbit::Split { eigenvalues } => {
                let parts: Vec<String> = eigenvalues.iter().map(|(l, m)| format!("{l}^{m}")).collect();
                write!(f, "split({})", parts.join(","))
            }
        }
    }
}

/// `{g a g⁻¹ : g ∈ GL}`, sorted.
pub fn conjugacy_class(a: &FqMatrix, gl: &[FqMatrix]) -> Result<Vec<FqMatrix>, FfError> {
    let mut out: Vec<FqMatrix> = gl
        .iter()
        .map(|g| Ok(g.mul(a).mul(&g.inverse()?)))
        .collect::<Result<_, FfError>>()?;
    out.sort();
    out.dedup();
    Ok(out)
}

/// Finite-field genericity: no `1 ≤ v < n` with size-`v` eigenvalue
/// sub-multisets, one per orbit, whose product is 1. Returns the first
/// offending `v`.
pub fn fq_nongeneric_witness(orbits: &[FqOrbit], n: usize, q: u32) -> Result<Option<usize>, FfError> {
    let spectra: Vec<Vec<(FqElem, usize)>> = orbits
        .iter()
        .map(|o| o.spectrum(n, q))
        .collect::<Result<_, _>>()?;
    // per orbit: set of (size, product) reachable
    let tables: Vec<std::collections::BTreeSet<(usize, u32)>> = spectra
        .iter()
        .map(|spec| {
            let mut reach = std::collections::BTreeSet::from([(0usize, 1u32)]);
            for (x, m) in spec {
                let mut next = std::collections::BTreeSet::new();
                for &(v, p) in &reach {
                    for c in 0..=*m {
                        next.insert((v + c, FqElem::new(p as i64, q).mul(x.pow(c as u32)).value));
                    }
                }
                reach = next;
            }
            reach
        })
        .collect();
    for v in 1..n {
        let mut prods = std::collections::BTreeSet::from([1u32]);
        for t in &tables {
            let mut next = std::collections::BTreeSet::new();
            for &p in &prods {
                for &(w, x) in t {
                    if w == v {
                        next.insert(FqElem::new(p as i64, q).mul(FqElem::new(x as i64, q)).value);
                    }
                }
            }
            prods = next;
        }
        if prods.contains(&1) {
            return Ok(Some(v));
        }
    }
    Ok(None)
}

type Histogram = HashMap<FqMatrix, u128>;

fn merge(mut a: Histogram, b: Histogram) -> Histogram {
    if a.len() < b.len() {
        return merge(b, a);
    }
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
    a
}

fn convolve(a: &Histogram, b: &Histogram) -> Histogram {
    let entries: Vec<(&FqMatrix, &u128)> = a.iter().collect();
    entries
        .par_iter()
        .fold(Histogram::new, |mut acc, (x, cx)| {
            for (y, cy) in b {
                *acc.entry(x.mul(y)).or_default() += **cx * cy;
            }
            acc
        })
        .reduce(Histogram::new, merge)
}

fn delta(n: usize, q: u32) -> Histogram {
    HashMap::from([(FqMatrix::identity(n, q), 1)])
}

/// Histogram of `Dθ(D)` over the group.
fn theta_histogram(gl: &[FqMatrix]) -> Result<Histogram, FfError> {
    gl.par_iter()
        .try_fold(Histogram::new, |mut acc, d| {
            *acc.entry(d.mul(&theta(d)?)).or_default() += 1;
            Ok(acc)
        })
        .try_reduce(Histogram::new, |a, b| Ok(merge(a, b)))
}

/// Histogram of `ABA⁻¹B⁻¹` over pairs.
fn commutator_histogram(gl: &[FqMatrix]) -> Result<Histogram, FfError> {
    let inverses: Vec<FqMatrix> = gl.iter().map(|g| g.inverse()).collect::<Result<_, _>>()?;
    Ok((0..gl.len())
        .into_par_iter()
        .fold(Histogram::new, |mut acc, i| {
            let a = &gl[i];
            let ai = &inverses[i];
            for (b, bi) in gl.iter().zip(&inverses) {
                *acc.entry(a.mul(b).mul(ai).mul(bi)).or_default() += 1;
            }
            acc
        })
        .reduce(Histogram::new, merge))
}

fn power(h: &Histogram, times: u32, n: usize, q: u32) -> Histogram {
    let mut acc = delta(n, q);
    for _ in 0..times {
        acc = convolve(&acc, h);
    }
    acc
}

/// Number of pairs with `left · right = 1`.
fn join(left: &Histogram, right: &Histogram) -> Result<u128, FfError> {
    let mut total = 0u128;
    for (x, c) in left {
        if let Some(d) = right.get(&x.inverse()?) {
            total += c * d;
        }
    }
    Ok(total)
}

#[derive(Debug, Clone, Copy)]
pub struct CountOptions {
    pub iteration_cap: u64,
}

impl Default for CountOptions {
    fn default() -> Self {
        CountOptions {
            iteration_cap: DEFAULT_ITERATION_CAP,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CountReport {
    pub surface: SurfaceSpec,
    pub n: usize,
    pub q: u32,
    pub orbits: Vec<FqOrbit>,
    pub mu: MultiPartition,
    /// No eigenvalue sub-multiset product equals 1 (finite-field analogue of
    /// genericity).
    pub generic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nongeneric_dimension: Option<usize>,
    pub raw_count: String,
    pub gl_order: String,
    pub groupoid_count: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub formula_value: Option<String>,
    #[serde(rename = "match", skip_serializing_if = "Option::is_none")]
    pub matches: Option<bool>,
    pub cost_estimate: u64,
    #[serde(skip)]
    pub raw: u128,
    #[serde(skip)]
    pub groupoid: Scalar,
}

impl CountReport {
    /// Attaches a formula value and the comparison verdict.
    pub fn with_formula(mut self, value: Scalar) -> Self {
        self.matches = Some(value == self.groupoid);
        self.formula_value = Some(value.to_string());
        self
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{} n={} q={} orbits=[{}]\nraw = {}, |GL| = {}, groupoid = {}\n",
            self.surface,
            self.n,
            self.q,
            self.orbits.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(", "),
            self.raw_count,
            self.gl_order,
            self.groupoid_count
        );
        if let (Some(v), Some(m)) = (&self.formula_value, self.matches) {
            out.push_str(&format!("formula = {v}, match = {m}\n"));
        }
        out
    }
}

/// Matrix products the count will need, estimated before any work.
pub fn cost_estimate(surface: &SurfaceSpec, n: usize, q: u32, member_sizes: &[u64]) -> u64 {
    let g = gl_order(n, q).min(u64::MAX as u128) as u64;
    let scan = (q as u64).saturating_pow((n * n) as u32);
    let square = g.saturating_mul(g);
    let left = match surface.kind {
        SurfaceKind::Nonorientable => {
            let r = surface.r.unwrap() as u64;
            g.saturating_add(square.saturating_mul(r.saturating_sub(1)))
        }
        SurfaceKind::Orientable => {
            let genus = surface.g.unwrap() as u64;
            square.saturating_mul(genus.max(1).saturating_mul(2).saturating_sub(1))
        }
    };
    let right = member_sizes
        .iter()
        .fold(1u64, |acc, &m| acc.saturating_mul(m).min(square))
        .saturating_mul(member_sizes.len() as u64);
    scan.saturating_add(left).saturating_add(right).saturating_add(g)
}

fn count(
    surface: &SurfaceSpec,
    orbits: &[FqOrbit],
    q: u32,
    n: usize,
    opts: CountOptions,
) -> Result<CountReport, FfError> {
    check_size(n)?;
    check_field(q)?;
    if orbits.len() != surface.k {
        return Err(FfError::Orbit(format!(
            "{} orbits given for k = {}",
            orbits.len(),
            surface.k
        )));
    }
    let parts: Vec<Partition> = orbits
        .iter()
        .map(|o| o.partition(n, q))
        .collect::<Result<_, _>>()?;
    let mu = MultiPartition::new(parts).expect("all orbits have size n");
    let witness = fq_nongeneric_witness(orbits, n, q)?;

    // Class sizes are known without enumeration only for central orbits;
    // otherwise bound them by the group order.
    let g = gl_order(n, q).min(u64::MAX as u128) as u64;
    let sizes: Vec<u64> = orbits
        .iter()
        .map(|o| match o {
            FqOrbit::Central { .. } => 1,
            FqOrbit::Split { .. } => g,
        })
        .collect();
    let estimate = cost_estimate(surface, n, q, &sizes);
    if estimate > opts.iteration_cap {
        return Err(FfError::CostCap {
            estimate,
            cap: opts.iteration_cap,
        });
    }

    let gl = enumerate_gl(n, q)?;
    let left = match surface.kind {
        SurfaceKind::Nonorientable => power(&theta_histogram(&gl)?, surface.r.unwrap(), n, q),
        SurfaceKind::Orientable => power(&commutator_histogram(&gl)?, surface.g.unwrap(), n, q),
    };
    let mut right = delta(n, q);
    for o in orbits {
        let members: Histogram = o.members(n, q, &gl)?.into_iter().map(|m| (m, 1)).collect();
        right = convolve(&right, &members);
    }
    let raw = join(&left, &right)?;
    let order = gl_order(n, q);
    let groupoid = Scalar::new(BigInt::from(raw), BigInt::from(order));
    Ok(CountReport {
        surface: *surface,
        n,
        q,
        orbits: orbits.to_vec(),
        mu,
        generic: witness.is_none(),
        nongeneric_dimension: witness,
        raw_count: raw.to_string(),
        gl_order: order.to_string(),
        groupoid_count: groupoid.to_string(),
        formula_value: None,
        matches: None,
        cost_estimate: estimate,
        raw,
        groupoid,
    })
}

/// Counts `D₁θ(D₁)⋯D_rθ(D_r) Z₁⋯Z_k = 1`.
pub fn count_nonorientable(
    r: u32,
    orbits: &[FqOrbit],
    q: u32,
    n: usize,
    opts: CountOptions,
) -> Result<CountReport, FfError> {
    let surface = SurfaceSpec::nonorientable(r, orbits.len())
        .map_err(|e| FfError::Orbit(e.to_string()))?;
    count(&surface, orbits, q, n, opts)
}

/// Counts `[A₁,B₁]⋯[A_g,B_g] X₁⋯X_k = 1`.
pub fn count_orientable(
    g: u32,
    orbits: &[FqOrbit],
    q: u32,
    n: usize,
    opts: CountOptions,
) -> Result<CountReport, FfError> {
    let surface =
        SurfaceSpec::orientable(g, orbits.len()).map_err(|e| FfError::Orbit(e.to_string()))?;
    count(&surface, orbits, q, n, opts)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(x: i64) -> Scalar {
        Scalar::from_integer(x.into())
    }

    #[test]
    fn group_orders() {
        assert_eq!(gl_order(1, 3), 2);
        assert_eq!(gl_order(2, 3), 48);
        assert_eq!(gl_order(2, 5), 480);
        for (n, q) in [(1, 3), (1, 7), (2, 3), (2, 5), (3, 3)] {
            assert_eq!(enumerate_gl(n, q).unwrap().len() as u128, gl_order(n, q));
        }
        assert!(matches!(enumerate_gl(3, 13), Err(FfError::TooLarge { .. })));
        assert!(enumerate_gl(2, 4).is_err());
        assert!(enumerate_gl(4, 3).is_err());
    }

    #[test]
    fn theta_is_an_involution() {
        for (n, q) in [(1, 5), (2, 3), (3, 3)] {
            let id = FqMatrix::identity(n, q);
            assert_eq!(theta(&id).unwrap(), id);
            for a in enumerate_gl(n, q).unwrap().iter().step_by(7) {
                assert_eq!(theta(&theta(a).unwrap()).unwrap(), *a);
                assert!(a.mul(&a.inverse().unwrap()).is_identity());
                if n == 1 {
                    assert!(a.mul(&theta(a).unwrap()).is_identity());
                }
            }
        }
        let sing = FqMatrix::from_rows(&[vec![1, 2], vec![2, 4]], 5).unwrap();
        assert_eq!(theta(&sing), Err(FfError::Singular));
    }

    /// Direct enumeration of `D`-tuples; the oracle for the histogram count.
    fn naive_nonorientable(r: u32, z: &FqMatrix, gl: &[FqMatrix]) -> u128 {
        fn rec(depth: u32, acc: FqMatrix, z: &FqMatrix, gl: &[FqMatrix]) -> u128 {
            if depth == 0 {
                return u128::from(acc.mul(z).is_identity());
            }
            gl.iter()
                .map(|d| rec(depth - 1, acc.mul(&d.mul(&theta(d).unwrap())), z, gl))
                .sum()
        }
        rec(r, FqMatrix::identity(z.n(), z.q as u32), z, gl)
    }

    #[test]
    fn histogram_matches_naive_enumeration() {
        let gl = enumerate_gl(2, 3).unwrap();
        for zeta in [1, -1] {
            let z = FqMatrix::scalar(2, FqElem::new(zeta, 3));
            for r in 1..=2 {
                let rep = count_nonorientable(r, &[FqOrbit::central(zeta)], 3, 2, Default::default())
                    .unwrap();
                assert_eq!(rep.raw, naive_nonorientable(r, &z, &gl), "zeta={zeta} r={r}");
            }
        }
    }

    #[test]
    fn flagship_counts() {
        let rep = count_nonorientable(2, &[FqOrbit::central(-1)], 3, 2, Default::default()).unwrap();
        assert!(rep.generic);
        assert_eq!(rep.groupoid, int(2));
        let rep = count_orientable(1, &[FqOrbit::central(-1)], 3, 2, Default::default()).unwrap();
        assert_eq!(rep.groupoid, int(2));
        let rep = count_orientable(1, &[FqOrbit::central(-1)], 5, 2, Default::default()).unwrap();
        assert_eq!(rep.groupoid, int(4));
        let rep = count_nonorientable(2, &[FqOrbit::central(1)], 3, 2, Default::default()).unwrap();
        assert!(!rep.generic);
        assert_ne!(rep.groupoid, int(2));
    }

    #[test]
    fn rank_one_closed_forms() {
        for q in [3, 5, 7, 11, 13] {
            for r in 1..=4 {
                let rep = count_nonorientable(r, &[FqOrbit::central(1)], q, 1, Default::default()).unwrap();
                assert_eq!(rep.raw, (q as u128 - 1).pow(r));
                assert_eq!(rep.groupoid, int(q as i64 - 1).pow(r as i32 - 1));
            }
            for g in 0..=2 {
                let rep = count_orientable(g, &[FqOrbit::central(1)], q, 1, Default::default()).unwrap();
                assert_eq!(rep.raw, (q as u128 - 1).pow(2 * g));
                let off = count_orientable(g, &[FqOrbit::central(2)], q, 1, Default::default()).unwrap();
                assert_eq!(off.raw, 0);
            }
        }
        let rep = count_nonorientable(3, &[FqOrbit::central(1)], 3, 1, Default::default()).unwrap();
        assert_eq!(rep.groupoid, int(4));
    }

    #[test]
    fn conjugated_orbit_gives_same_count() {
        let gl = enumerate_gl(2, 3).unwrap();
        let orbit = FqOrbit::split(vec![(1, 1), (2, 1)]);
        let class = orbit.members(2, 3, &gl).unwrap();
        let g = gl[17];
        let conj = g.mul(&FqMatrix::diagonal(&[FqElem::new(1, 3), FqElem::new(2, 3)])).mul(&g.inverse().unwrap());
        assert_eq!(conjugacy_class(&conj, &gl).unwrap(), class);
        let a = count_nonorientable(2, &[orbit.clone()], 3, 2, Default::default()).unwrap();
        let rev: Vec<FqMatrix> = gl.iter().rev().copied().collect();
        let mut left = delta(2, 3);
        let th = theta_histogram(&rev).unwrap();
        for _ in 0..2 {
            left = convolve(&left, &th);
        }
        let right: Histogram = conjugacy_class(&conj, &rev).unwrap().into_iter().map(|m| (m, 1)).collect();
        assert_eq!(join(&left, &right).unwrap(), a.raw);
    }

    #[test]
    fn groupoid_times_order_is_raw() {
        let rep = count_nonorientable(2, &[FqOrbit::split(vec![(1, 1), (2, 1)])], 5, 2, Default::default())
            .unwrap();
        assert_eq!(rep.groupoid * int(480), Scalar::from_integer(BigInt::from(rep.raw)));
    }

    #[test]
    fn finite_field_genericity() {
        assert_eq!(fq_nongeneric_witness(&[FqOrbit::central(1)], 2, 5).unwrap(), Some(1));
        assert_eq!(fq_nongeneric_witness(&[FqOrbit::central(-1)], 2, 5).unwrap(), None);
        assert!(FqOrbit::split(vec![(1, 1), (1, 1)]).partition(2, 5).is_err());
    }

    #[test]
    fn cost_cap_refuses() {
        let err = count_nonorientable(
            2,
            &[FqOrbit::central(-1)],
            13,
            3,
            CountOptions::default(),
        )
        .unwrap_err();
        assert!(matches!(err, FfError::CostCap { .. }));
        let err = count_nonorientable(
            2,
            &[FqOrbit::central(-1)],
            5,
            2,
            CountOptions { iteration_cap: 10 },
        )
        .unwrap_err();
        assert!(matches!(err, FfError::CostCap { .. }));
    }
}
