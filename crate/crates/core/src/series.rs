//! Orbit and surface data, genericity, and the E-series / mixed-series
//! formulas built on `ℍ_{μ,m}`.
//!
//! ```text
//! E(q)    = q^{d/2}/(q - 1) · ℍ_{μ,m}(√q, 1/√q)
//! H(q,t)  = (qt²)^{d/2}/(qt² - 1) · ℍ_{μ,m}(t√q, -1/√q)
//! d_μ     = n²(r - 2 + k) + 2 - Σ (μ_i^j)²     (non-orientable, m = r)
//!         = n²(2g - 2 + k) + 2 - Σ (μ_i^j)²    (orientable, m = 2g)
//! ```
//!
//! `√q` is the variable `u`, `(qt²)^{1/2}` is `t·u`; values are rewritten in
//! `q` whenever only even powers of `u` survive.

use std::collections::BTreeMap;
use std::fmt;

use num_integer::Integer;
use num_traits::Zero;
use serde::{Serialize, Serializer};
use thiserror::Error;

use crate::exactalg::{AlgError, RatFunc, Scalar, Var};
use crate::hlvkernel::{hlv_hh, KernelError};
use crate::partitions::{MultiPartition, Partition};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SeriesError {
    #[error("invalid orbit: {0}")]
    Orbit(String),
    #[error("invalid surface: {0}")]
    Surface(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error(transparent)]
    Kernel(#[from] KernelError),
    #[error(transparent)]
    Alg(#[from] AlgError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SurfaceKind {
    Orientable,
    Nonorientable,
}

/// A punctured surface: `r` cross-caps or genus `g`, with `k` punctures.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct SurfaceSpec {
    pub kind: SurfaceKind,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub r: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<u32>,
    pub k: usize,
}

impl SurfaceSpec {
    pub fn nonorientable(r: u32, k: usize) -> Result<Self, SeriesError> {
        if r == 0 {
            return Err(SeriesError::Surface("a non-orientable surface needs r ≥ 1".into()));
        }
        if k == 0 {
            return Err(SeriesError::Surface("need at least one puncture".into()));
        }
        Ok(SurfaceSpec {
            kind: SurfaceKind::Nonorientable,
            r: Some(r),
            g: None,
            k,
        })
    }

    pub fn orientable(g: u32, k: usize) -> Result<Self, SeriesError> {
        if k == 0 {
            return Err(SeriesError::Surface("need at least one puncture".into()));
        }
        Ok(SurfaceSpec {
            kind: SurfaceKind::Orientable,
            r: None,
            g: Some(g),
            k,
        })
    }

    /// The kernel exponent: `r`, or `2g`.
    pub fn m(&self) -> u32 {
        match self.kind {
            SurfaceKind::Nonorientable => self.r.unwrap(),
            SurfaceKind::Orientable => 2 * self.g.unwrap(),
        }
    }

    /// `r - 2` or `2g - 2`, the Euler-characteristic part of `d_μ`.
    fn chi_part(&self) -> i64 {
        self.m() as i64 - 2
    }
}

impl fmt::Display for SurfaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            SurfaceKind::Nonorientable => write!(f, "non-orientable r={} k={}", self.m(), self.k),
            SurfaceKind::Orientable => write!(f, "orientable g={} k={}", self.g.unwrap(), self.k),
        }
    }
}

/// `x mod 1` in `[0, 1)`.
fn frac(x: &Scalar) -> Scalar {
    x - x.floor()
}

fn scalar_text(x: &Scalar) -> String {
    x.to_string()
}

fn ser_angle<S: Serializer>(x: &Scalar, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&scalar_text(x))
}

/// One eigenvalue `e^{2πi·angle}` with its multiplicity.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Eigenvalue {
    #[serde(serialize_with = "ser_angle")]
    pub angle: Scalar,
    pub multiplicity: usize,
}

/// A semisimple conjugacy class in `GL_n(ℂ)` with root-of-unity eigenvalues.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct OrbitSpec {
    pub eigenvalues: Vec<Eigenvalue>,
}

impl OrbitSpec {
    /// Angles are reduced mod 1 and equal eigenvalues merged.
    pub fn new(eigenvalues: impl IntoIterator<Item = (Scalar, usize)>) -> Result<Self, SeriesError> {
        let mut merged: BTreeMap<Scalar, usize> = BTreeMap::new();
        for (a, m) in eigenvalues {
            if m == 0 {
                return Err(SeriesError::Orbit("multiplicities must be positive".into()));
            }
            *merged.entry(frac(&a)).or_default() += m;
        }
        if merged.is_empty() {
            return Err(SeriesError::Orbit("an orbit needs at least one eigenvalue".into()));
        }
        let mut eigenvalues: Vec<Eigenvalue> = merged
            .into_iter()
            .map(|(angle, multiplicity)| Eigenvalue {
                angle,
                multiplicity,
            })
            .collect();
        eigenvalues.sort_by(|a, b| {
            b.multiplicity
                .cmp(&a.multiplicity)
                .then_with(|| a.angle.cmp(&b.angle))
        });
        Ok(OrbitSpec { eigenvalues })
    }

    /// The scalar orbit `{e^{πi d/n} I_n}`, i.e. angle `d/(2n)` with
    /// multiplicity `n`.
    pub fn central(n: usize, d: i64) -> Result<Self, SeriesError> {
        if n == 0 {
            return Err(SeriesError::Orbit("n must be positive".into()));
        }
        Self::new([(Scalar::new(d.into(), (2 * n as i64).into()), n)])
    }

    pub fn n(&self) -> usize {
        self.eigenvalues.iter().map(|e| e.multiplicity).sum()
    }

    /// Multiplicities, sorted decreasingly.
    pub fn partition(&self) -> Partition {
        Partition::new(self.eigenvalues.iter().map(|e| e.multiplicity).collect())
            .expect("multiplicities are positive")
    }

    /// `Σ multiplicity · angle mod 1`, the angle of the determinant.
    pub fn det_angle(&self) -> Scalar {
        frac(
            &self
                .eigenvalues
                .iter()
                .map(|e| &e.angle * Scalar::from_integer(e.multiplicity.into()))
                .fold(Scalar::zero(), |a, b| a + b),
        )
    }
}

impl fmt::Display for OrbitSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .eigenvalues
            .iter()
            .map(|e| format!("{}^{}", scalar_text(&e.angle), e.multiplicity))
            .collect();
        write!(f, "{{{}}}", parts.join(", "))
    }
}

/// Sub-multisets of one size, one per orbit, whose angles add up to an
/// integer: a subspace that violates genericity.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GenericityWitness {
    pub v: usize,
    pub subsets: Vec<Vec<Eigenvalue>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Genericity {
    pub generic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<GenericityWitness>,
}

/// Sub-multiset choices of one orbit keyed by `(size, angle sum mod 1)`,
/// each with one representative count vector.
fn submultisets(orbit: &OrbitSpec) -> BTreeMap<(usize, Scalar), Vec<usize>> {
    let mut out: BTreeMap<(usize, Scalar), Vec<usize>> = BTreeMap::new();
    out.insert((0, Scalar::zero()), Vec::new());
    for e in &orbit.eigenvalues {
        let mut next = BTreeMap::new();
        for ((v, s), counts) in &out {
            for c in 0..=e.multiplicity {
                let key = (v + c, frac(&(s + &e.angle * Scalar::from_integer(c.into()))));
                next.entry(key).or_insert_with(|| {
                    let mut cs = counts.clone();
                    cs.push(c);
                    cs
                });
            }
        }
        out = next;
    }
    out
}

/// Exhaustive genericity test: the tuple is non-generic iff some
/// `1 ≤ v < n` admits size-`v` sub-multisets, one per orbit, with angle sum
/// `≡ 0 mod 1`.
pub fn is_generic(orbits: &[OrbitSpec]) -> Result<Genericity, SeriesError> {
    let Some(first) = orbits.first() else {
        return Err(SeriesError::Orbit("need at least one orbit".into()));
    };
    let n = first.n();
    if let Some(o) = orbits.iter().find(|o| o.n() != n) {
        return Err(SeriesError::Orbit(format!(
            "orbits have different sizes: {n} and {}",
            o.n()
        )));
    }
    let tables: Vec<_> = orbits.iter().map(submultisets).collect();
    for v in 1..n {
        // angle sum -> chosen count vectors so far
        let mut reach: BTreeMap<Scalar, Vec<Vec<usize>>> = BTreeMap::new();
        reach.insert(Scalar::zero(), Vec::new());
        for table in &tables {
            let mut options: Vec<(&Scalar, &Vec<usize>)> = table
                .iter()
                .filter(|((w, _), _)| *w == v)
                .map(|((_, s), c)| (s, c))
                .collect();
            options.sort();
            let mut next = BTreeMap::new();
            for (s, picks) in &reach {
                for (si, c) in &options {
                    next.entry(frac(&(s + *si))).or_insert_with(|| {
                        let mut p = picks.clone();
                        p.push((*c).clone());
                        p
                    });
                }
            }
            reach = next;
        }
        if let Some(picks) = reach.get(&Scalar::zero()) {
            let subsets = orbits
                .iter()
                .zip(picks)
                .map(|(o, counts)| {
                    o.eigenvalues
                        .iter()
                        .zip(counts)
                        .filter(|(_, &c)| c > 0)
                        .map(|(e, &c)| Eigenvalue {
                            angle: e.angle.clone(),
                            multiplicity: c,
                        })
                        .collect()
                })
                .collect();
            return Ok(Genericity {
                generic: false,
                witness: Some(GenericityWitness { v, subsets }),
            });
        }
    }
    Ok(Genericity {
        generic: true,
        witness: None,
    })
}

/// A generic orbit tuple with multiplicity pattern `μ` and trivial total
/// determinant. For a single `(n)` this is the central orbit with angle
/// `1/n`; otherwise angles `x/D` are searched depth-first for growing `D`.
pub fn default_orbits(mu: &MultiPartition) -> Result<Vec<OrbitSpec>, SeriesError> {
    if mu.k() == 1 && mu.components()[0].len() == 1 {
        return Ok(vec![OrbitSpec::central(mu.n(), 2)?]);
    }
    let slots: Vec<(usize, usize)> = mu
        .components()
        .iter()
        .enumerate()
        .flat_map(|(i, p)| p.parts().iter().map(move |&m| (i, m)))
        .collect();
    for den in 2..=48 {
        let mut budget = 5_000usize;
        let mut xs = Vec::with_capacity(slots.len());
        if let Some(found) = search_angles(mu, &slots, den, &mut xs, &mut budget)? {
            return Ok(found);
        }
    }
    Err(SeriesError::Orbit(format!(
        "no generic orbit tuple found for {mu}; pass orbits explicitly"
    )))
}

fn build_orbits(
    mu: &MultiPartition,
    slots: &[(usize, usize)],
    xs: &[i64],
    den: i64,
) -> Result<Vec<OrbitSpec>, SeriesError> {
    (0..mu.k())
        .map(|i| {
            OrbitSpec::new(
                slots
                    .iter()
                    .zip(xs)
                    .filter(|((j, _), _)| *j == i)
                    .map(|((_, m), x)| (Scalar::new((*x).into(), den.into()), *m)),
            )
        })
        .collect()
}

fn search_angles(
    mu: &MultiPartition,
    slots: &[(usize, usize)],
    den: i64,
    xs: &mut Vec<i64>,
    budget: &mut usize,
) -> Result<Option<Vec<OrbitSpec>>, SeriesError> {
    let depth = xs.len();
    let distinct_in_orbit = |x: i64, xs: &[i64]| {
        slots[..xs.len()]
            .iter()
            .zip(xs)
            .all(|((i, _), y)| *i != slots[xs.len()].0 || *y != x)
    };
    let last = depth + 1 == slots.len();
    let partial: i64 = slots.iter().zip(xs.iter()).map(|((_, m), x)| *m as i64 * x).sum();
    for x in 0..den {
        if *budget == 0 {
            return Ok(None);
        }
        if !distinct_in_orbit(x, xs) {
            continue;
        }
        // The last angle must make the total determinant trivial.
        if last && (partial + slots[depth].1 as i64 * x) % den != 0 {
            continue;
        }
        xs.push(x);
        let found = if last {
            *budget -= 1;
            let orbits = build_orbits(mu, slots, xs, den)?;
            let shape_ok = orbits
                .iter()
                .zip(mu.components())
                .all(|(o, part)| o.partition() == *part);
            (shape_ok && is_generic(&orbits)?.generic).then_some(orbits)
        } else {
            search_angles(mu, slots, den, xs, budget)?
        };
        xs.pop();
        if found.is_some() {
            return Ok(found);
        }
    }
    Ok(None)
}

/// `d_μ`.
pub fn d_mu(surface: &SurfaceSpec, mu: &MultiPartition) -> i64 {
    let n = mu.n() as i64;
    n * n * (surface.chi_part() + surface.k as i64) + 2 - mu.sum_of_squares() as i64
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Formula {
    Eseries,
    Mixed,
}

/// One evaluated formula, with the inputs that produced it.
#[derive(Debug, Clone, Serialize)]
pub struct SeriesReport {
    pub formula: Formula,
    pub surface: SurfaceSpec,
    pub mu: MultiPartition,
    pub orbits: Vec<OrbitSpec>,
    pub generic: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genericity_witness: Option<GenericityWitness>,
    pub d_mu: i64,
    /// Canonical text of the value: in `q` (and `t`) when every power of
    /// `u` is even, otherwise in `u` (and `t`).
    pub value: String,
    pub variables: String,
    pub polynomial_in_q_t: bool,
    pub branch: String,
    pub checks: BTreeMap<String, bool>,
    pub derivation: Vec<String>,
    #[serde(skip)]
    pub value_u: RatFunc,
    #[serde(skip)]
    pub value_q: Option<RatFunc>,
}

impl SeriesReport {
    /// The value in `q` when available, otherwise in `u`.
    pub fn value(&self) -> &RatFunc {
        self.value_q.as_ref().unwrap_or(&self.value_u)
    }

    pub fn to_latex(&self) -> String {
        self.value().to_latex()
    }

    pub fn to_text(&self) -> String {
        let mut out = format!(
            "{:?} for {}, mu = {}\nd_mu = {}, generic = {}\nvalue = {}\n",
            self.formula, self.surface, self.mu, self.d_mu, self.generic, self.value
        );
        for (k, v) in &self.checks {
            out.push_str(&format!("check {k}: {v}\n"));
        }
        out
    }
}

fn bindings(pairs: &[(Var, RatFunc)]) -> BTreeMap<Var, RatFunc> {
    pairs.iter().cloned().collect()
}

/// `ℍ(-z,-w)`.
fn sign_flip(h: &RatFunc) -> Result<RatFunc, AlgError> {
    h.substitute(&bindings(&[
        (Var::Z, -RatFunc::var(Var::Z)),
        (Var::W, -RatFunc::var(Var::W)),
    ]))
}

struct Prepared {
    surface: SurfaceSpec,
    mu: MultiPartition,
    orbits: Vec<OrbitSpec>,
    genericity: Genericity,
    d: i64,
    hh: RatFunc,
}

fn prepare(surface: &SurfaceSpec, mu: &MultiPartition, orbits: Option<&[OrbitSpec]>) -> Result<Prepared, SeriesError> {
    if mu.k() != surface.k {
        return Err(SeriesError::Precondition(format!(
            "μ has {} components but the surface has k = {}",
            mu.k(),
            surface.k
        )));
    }
    let orbits = match orbits {
        Some(o) => {
            if o.len() != mu.k()
                || o.iter().zip(mu.components()).any(|(o, p)| o.partition() != *p)
            {
                return Err(SeriesError::Precondition(format!(
                    "orbit multiplicities do not match μ = {mu}"
                )));
            }
            o.to_vec()
        }
        None => default_orbits(mu)?,
    };
    let genericity = is_generic(&orbits)?;
    Ok(Prepared {
        surface: *surface,
        mu: mu.clone(),
        d: d_mu(surface, mu),
        hh: hlv_hh(mu, surface.m())?,
        orbits,
        genericity,
    })
}

fn finish(
    formula: Formula,
    p: Prepared,
    value_u: RatFunc,
    mut checks: BTreeMap<String, bool>,
    mut derivation: Vec<String>,
) -> Result<SeriesReport, SeriesError> {
    let value_q = value_u.in_terms_of_q();
    checks.insert("even_u_powers".into(), value_q.is_some());
    let flipped = sign_flip(&p.hh)?;
    checks.insert("hh_sign_symmetric".into(), flipped == p.hh);
    let odd = (p.mu.n() as u32 * p.surface.m()) % 2 == 1;
    let expected = if odd { -p.hh.clone() } else { p.hh.clone() };
    checks.insert("hh_sign_parity_nm".into(), flipped == expected);
    let with_t = formula == Formula::Mixed;
    let (value, variables, polynomial) = match &value_q {
        Some(v) => {
            derivation.push(format!("rewrite u^2 = q: {v}"));
            let vars = if with_t { "q,t" } else { "q" };
            (v.to_string(), vars.to_string(), v.is_polynomial())
        }
        None => {
            derivation.push("odd powers of u remain; value kept in u = sqrt(q)".into());
            let vars = if with_t { "u,t" } else { "u" };
            (value_u.to_string(), vars.to_string(), false)
        }
    };
    let branch = if with_t {
        "(qt^2)^(1/2) = t*u, sqrt(q) = u (positive branch)"
    } else {
        "sqrt(q) = u (positive branch)"
    };
    Ok(SeriesReport {
        formula,
        surface: p.surface,
        mu: p.mu,
        orbits: p.orbits,
        generic: p.genericity.generic,
        genericity_witness: p.genericity.witness,
        d_mu: p.d,
        value,
        variables,
        polynomial_in_q_t: polynomial,
        branch: branch.into(),
        checks,
        derivation,
        value_u,
        value_q,
    })
}

fn eseries_u(p: &Prepared) -> Result<RatFunc, SeriesError> {
    let u = RatFunc::var(Var::U);
    let sub = p.hh.substitute(&bindings(&[(Var::Z, u.clone()), (Var::W, u.pow(-1))]))?;
    let pre = &u.pow(p.d as i32) / &(&u.pow(2) - &RatFunc::one());
    Ok(&pre * &sub)
}

fn mixed_u(p: &Prepared) -> Result<RatFunc, SeriesError> {
    let u = RatFunc::var(Var::U);
    let tu = &RatFunc::var(Var::T) * &u;
    let sub = p.hh.substitute(&bindings(&[(Var::Z, tu.clone()), (Var::W, -u.pow(-1))]))?;
    let pre = &tu.pow(p.d as i32) / &(&tu.pow(2) - &RatFunc::one());
    Ok(&pre * &sub)
}

fn base_derivation(p: &Prepared) -> Vec<String> {
    vec![
        format!("surface {}, mu = {}, m = {}", p.surface, p.mu, p.surface.m()),
        format!(
            "orbits {}; generic = {}",
            p.orbits.iter().map(|o| o.to_string()).collect::<Vec<_>>().join(" "),
            p.genericity.generic
        ),
        format!("d_mu = {}", p.d),
        format!("HH(z,w) = {}", p.hh),
    ]
}

/// `E(q) = q^{d/2}/(q-1) · ℍ_{μ,m}(√q, 1/√q)`, with default orbits.
pub fn eseries(surface: &SurfaceSpec, mu: &MultiPartition) -> Result<SeriesReport, SeriesError> {
    eseries_with_orbits(surface, mu, None)
}

pub fn eseries_with_orbits(
    surface: &SurfaceSpec,
    mu: &MultiPartition,
    orbits: Option<&[OrbitSpec]>,
) -> Result<SeriesReport, SeriesError> {
    let p = prepare(surface, mu, orbits)?;
    let v = eseries_u(&p)?;
    let mut derivation = base_derivation(&p);
    derivation.push(format!("z = u, w = u^-1, times u^{}/(u^2 - 1): {v}", p.d));
    finish(Formula::Eseries, p, v, BTreeMap::new(), derivation)
}

/// `(qt²)^{d/2}/(qt² - 1) · ℍ_{μ,m}(t√q, -1/√q)`, with default orbits.
pub fn mixed_series(surface: &SurfaceSpec, mu: &MultiPartition) -> Result<SeriesReport, SeriesError> {
    mixed_series_with_orbits(surface, mu, None)
}

pub fn mixed_series_with_orbits(
    surface: &SurfaceSpec,
    mu: &MultiPartition,
    orbits: Option<&[OrbitSpec]>,
) -> Result<SeriesReport, SeriesError> {
    let p = prepare(surface, mu, orbits)?;
    let v = mixed_u(&p)?;
    let e = eseries_u(&p)?;
    let at_minus_one = v.substitute(&bindings(&[(Var::T, RatFunc::from_int(-1))]))?;
    let mut checks = BTreeMap::new();
    checks.insert("t_minus_one_matches_eseries".into(), at_minus_one == e);
    let mut derivation = base_derivation(&p);
    derivation.push(format!(
        "z = t*u, w = -u^-1, times (t*u)^{}/(t^2*u^2 - 1): {v}",
        p.d
    ));
    finish(Formula::Mixed, p, v, checks, derivation)
}

/// The three verdicts for the central orbit `e^{πi d/n}`, `r = 2`, `k = 1`.
#[derive(Debug, Clone, Serialize)]
pub struct CounterexampleReport {
    pub n: usize,
    pub d: i64,
    pub surface: SurfaceSpec,
    pub mu: MultiPartition,
    pub orbit: OrbitSpec,
    pub generic: bool,
    pub value: String,
    /// The mixed series equals `(qt²+t)²/(qt²-1)`.
    pub matches_carlsson_value: bool,
    /// It differs from the expected `qt²+t`.
    pub differs_from_conjectured: bool,
    /// At `t = -1` it gives `q - 1`.
    pub e_series_is_q_minus_1: bool,
    /// `(qt²)·ℍ_{(n),2}(tu, -1/u) = (qt²+t)²` with `q = u²`.
    pub carlsson_identity: bool,
    pub verified: bool,
    pub report: SeriesReport,
}

/// Checks the mixed-series counterexample for the central orbit
/// `e^{πi d/n} I_n`. Requires `n ≥ 2`, `d` even and `gcd(n, d/2) = 1`,
/// which is what makes the orbit generic.
pub fn counterexample_report(n: usize, d: i64) -> Result<CounterexampleReport, SeriesError> {
    if n < 2 {
        return Err(SeriesError::Precondition(format!("n must be at least 2, got {n}")));
    }
    if d % 2 != 0 {
        return Err(SeriesError::Precondition(format!("d must be even, got {d}")));
    }
    if (n as i64).gcd(&(d / 2)) != 1 {
        return Err(SeriesError::Precondition(format!(
            "gcd(n, d/2) must be 1, got gcd({n}, {}) = {}",
            d / 2,
            (n as i64).gcd(&(d / 2))
        )));
    }
    let surface = SurfaceSpec::nonorientable(2, 1)?;
    let mu = MultiPartition::single(Partition::row(n));
    let orbit = OrbitSpec::central(n, d)?;
    let report = mixed_series_with_orbits(&surface, &mu, Some(std::slice::from_ref(&orbit)))?;

    let q = RatFunc::var(Var::Q);
    let t = RatFunc::var(Var::T);
    let qt2 = &q * &t.pow(2);
    let conj = &qt2 + &t;
    let carlsson_value = &conj.pow(2) / &(&qt2 - &RatFunc::one());
    let value = report.value_q.clone();
    let matches = value.as_ref() == Some(&carlsson_value);
    let differs = value.as_ref() != Some(&conj);
    let e_ok = match &value {
        Some(v) => v.substitute(&bindings(&[(Var::T, RatFunc::from_int(-1))]))? == &q - &RatFunc::one(),
        None => false,
    };

    let u = RatFunc::var(Var::U);
    let tu = &t * &u;
    let hh = hlv_hh(&mu, 2)?;
    let lhs = &tu.pow(2) * &hh.substitute(&bindings(&[(Var::Z, tu.clone()), (Var::W, -u.pow(-1))]))?;
    let carlsson = lhs.in_terms_of_q().as_ref() == Some(&conj.pow(2));

    Ok(CounterexampleReport {
        n,
        d,
        surface,
        mu,
        generic: is_generic(std::slice::from_ref(&orbit))?.generic,
        orbit,
        value: report.value.clone(),
        matches_carlsson_value: matches,
        differs_from_conjectured: differs,
        e_series_is_q_minus_1: e_ok,
        carlsson_identity: carlsson,
        verified: matches && differs && e_ok,
        report,
    })
}

/// Evaluates a report value (in `q`, no `t`) at an integer `q`.
pub fn eval_at_q(report: &SeriesReport, q: i64) -> Result<Scalar, SeriesError> {
    let v = report.value_q.as_ref().ok_or_else(|| {
        SeriesError::Precondition("value has odd powers of sqrt(q)".into())
    })?;
    let point: BTreeMap<Var, Scalar> = [(Var::Q, Scalar::from_integer(q.into()))].into();
    Ok(v.eval(&point)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rf;

    fn mp(s: &str) -> MultiPartition {
        s.parse().unwrap()
    }

    fn angle(n: i64, d: i64) -> Scalar {
        Scalar::new(n.into(), d.into())
    }

    #[test]
    fn genericity_examples() {
        let g = is_generic(&[OrbitSpec::central(5, 2).unwrap()]).unwrap();
        assert!(g.generic);

        let id = OrbitSpec::new([(angle(0, 1), 2)]).unwrap();
        let g = is_generic(&[id]).unwrap();
        assert!(!g.generic);
        assert_eq!(g.witness.unwrap().v, 1);

        let pair = OrbitSpec::new([(angle(1, 3), 1), (angle(2, 3), 1)]).unwrap();
        let g = is_generic(&[pair.clone(), pair]).unwrap();
        assert!(!g.generic);
        let w = g.witness.unwrap();
        let total: Scalar = w.subsets.iter().flatten().map(|e| e.angle.clone()).sum();
        assert!(total.is_integer());

        let three = OrbitSpec::new([(angle(0, 1), 3)]).unwrap();
        assert!(is_generic(&[three, OrbitSpec::central(2, 2).unwrap()]).is_err());
    }

    #[test]
    fn d_mu_examples() {
        let no = |r| SurfaceSpec::nonorientable(r, 1).unwrap();
        assert_eq!(d_mu(&no(2), &mp("(2)")), 2);
        assert_eq!(d_mu(&no(1), &mp("(1)")), 1);
        let or = SurfaceSpec::orientable(1, 1).unwrap();
        for n in 1..6 {
            assert_eq!(d_mu(&or, &MultiPartition::single(Partition::row(n))), 2);
        }
    }

    #[test]
    fn eseries_examples() {
        for r in 1..=4 {
            let rep = eseries(&SurfaceSpec::nonorientable(r, 1).unwrap(), &mp("(1)")).unwrap();
            assert_eq!(rep.value_q.unwrap(), rf("q - 1").pow(r as i32 - 1));
        }
        let rep = eseries(&SurfaceSpec::nonorientable(2, 1).unwrap(), &mp("(2)")).unwrap();
        assert_eq!(rep.value, "q - 1");
        assert!(rep.generic && rep.polynomial_in_q_t);
        let rep = eseries(&SurfaceSpec::orientable(1, 1).unwrap(), &mp("(2)")).unwrap();
        assert_eq!(rep.value, "q - 1");
    }

    #[test]
    fn mixed_examples() {
        let rep = mixed_series(&SurfaceSpec::nonorientable(1, 1).unwrap(), &mp("(1)")).unwrap();
        assert_eq!(rep.value_q.clone().unwrap(), rf("(q*t^2 + t)/(q*t^2 - 1)"));
        assert!(rep.checks["t_minus_one_matches_eseries"]);
        let rep = mixed_series(&SurfaceSpec::nonorientable(2, 1).unwrap(), &mp("(2)")).unwrap();
        assert_eq!(rep.value_q.clone().unwrap(), rf("(q*t^2 + t)^2/(q*t^2 - 1)"));
        assert!(!rep.polynomial_in_q_t);
    }

    #[test]
    fn counterexample_verdicts() {
        for n in [2, 3] {
            let c = counterexample_report(n, 2).unwrap();
            assert!(c.generic);
            assert!(c.matches_carlsson_value && c.differs_from_conjectured && c.e_series_is_q_minus_1);
            assert!(c.carlsson_identity && c.verified);
        }
        assert!(counterexample_report(2, 1).is_err());
        assert!(counterexample_report(2, 4).is_err());
        assert!(counterexample_report(1, 2).is_err());
    }

    #[test]
    fn default_orbits_are_generic() {
        for mu in ["(1)", "(2)", "(1,1)", "(2,1)", "(1)|(1)", "(2)|(1,1)", "(1,1)|(1,1)"] {
            let orbits = default_orbits(&mp(mu)).unwrap();
            assert!(is_generic(&orbits).unwrap().generic, "{mu}");
            let det: Scalar = orbits.iter().map(|o| o.det_angle()).sum();
            assert!(det.is_integer(), "{mu}");
            for (o, p) in orbits.iter().zip(mp(mu).components()) {
                assert_eq!(o.partition(), *p);
            }
        }
    }

    #[test]
    fn report_json_is_stable() {
        let s = SurfaceSpec::nonorientable(2, 1).unwrap();
        let a = serde_json::to_string(&eseries(&s, &mp("(2)")).unwrap()).unwrap();
        let b = serde_json::to_string(&eseries(&s, &mp("(2)")).unwrap()).unwrap();
        assert_eq!(a, b);
        let v: serde_json::Value = serde_json::from_str(&a).unwrap();
        assert_eq!(v["surface"]["kind"], "nonorientable");
        assert_eq!(v["surface"]["r"], 2);
        assert_eq!(v["mu"], serde_json::json!([[2]]));
        assert_eq!(v["value"], "q - 1");
    }
}
