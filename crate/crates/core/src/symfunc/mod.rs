//! The ring Λ_k of functions separately symmetric in k alphabets, truncated
//! at a per-alphabet degree bound `N`, with rational-function coefficients.
//!
//! Elements are stored in the monomial basis `m_{μ₁}(x₁)⋯m_{μ_k}(x_k)`. The
//! power-sum basis is used transiently: products are concatenations of
//! power-sum indices there, and the Adams operations `p_r ∘` act diagonally.
//!
//! Plethysm treats every coefficient variable `z, w, q, t, u` as a "variable"
//! of the λ-ring, so `p_r ∘ (c · f) = c(z^r, w^r, …) · (p_r ∘ f)`; rational
//! constants are fixed.

mod transition;

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::exactalg::{RatFunc, Scalar};
use crate::partitions::Partition;
pub use transition::{matrix_from_monomial, matrix_to_monomial};
pub(crate) use transition::transition;

/// One partition per alphabet.
pub type Key = Vec<Partition>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Basis {
    /// monomial
    M,
    /// complete homogeneous
    H,
    /// elementary
    E,
    /// power sum
    P,
    /// Schur
    S,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SymError {
    #[error("key {key} exceeds the degree bound {bound}")]
    DegreeOverflow { key: String, bound: usize },
    #[error("key has {got} components but the ring has {k} alphabets")]
    AlphabetMismatch { k: usize, got: usize },
    #[error("plethystic exponential needs a zero constant term, found {0}")]
    NonzeroConstant(String),
    #[error("plethystic logarithm needs constant term 1, found {0}")]
    ConstantNotOne(String),
    #[error("golden line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// Element of Λ_k truncated at degree `bound` in every alphabet.
#[derive(Clone, PartialEq, Eq)]
pub struct SymFunc {
    k: usize,
    bound: usize,
    coeffs: BTreeMap<Key, RatFunc>,
}

fn key_text(key: &[Partition]) -> String {
    key.iter().map(|p| p.to_string()).collect::<Vec<_>>().join("|")
}

fn fits(key: &[Partition], bound: usize) -> bool {
    key.iter().all(|p| p.size() <= bound)
}

fn add_into(map: &mut BTreeMap<Key, RatFunc>, key: Key, c: RatFunc) {
    if c.is_zero() {
        return;
    }
    match map.entry(key) {
        std::collections::btree_map::Entry::Vacant(v) => {
            v.insert(c);
        }
        std::collections::btree_map::Entry::Occupied(mut o) => {
            let s = o.get() + &c;
            if s.is_zero() {
                o.remove();
            } else {
                *o.get_mut() = s;
            }
        }
    }
}

/// Pushes every coefficient of `src` through the tensor product of the
/// per-alphabet sparse rows chosen by `rows`.
fn tensor_convert(
    src: &BTreeMap<Key, RatFunc>,
    basis: Basis,
    to_m: bool,
) -> BTreeMap<Key, RatFunc> {
    if basis == Basis::M {
        return src.clone();
    }
    let mut out = BTreeMap::new();
    for (key, c) in src {
        let tables: Vec<_> = key
            .iter()
            .map(|p| transition(basis, p.size()))
            .collect();
        let rows: Vec<&transition::Row> = key
            .iter()
            .zip(&tables)
            .map(|(p, t)| {
                let i = t.index[p];
                if to_m {
                    &t.to_m[i]
                } else {
                    &t.from_m[i]
                }
            })
            .collect();
        // Cartesian product of the rows.
        let mut acc: Vec<(Key, Scalar)> = vec![(Vec::new(), Scalar::from_integer(1.into()))];
        for (row, table) in rows.iter().zip(&tables) {
            let mut next = Vec::with_capacity(acc.len() * row.len());
            for (k, x) in &acc {
                for (j, y) in row.iter() {
                    let mut k2 = k.clone();
                    k2.push(table.parts[*j].clone());
                    next.push((k2, x * y));
                }
            }
            acc = next;
        }
        for (k, x) in acc {
            add_into(&mut out, k, c.scale(&x));
        }
    }
    out
}

impl SymFunc {
    pub fn zero(k: usize, bound: usize) -> Self {
        assert!(k >= 1, "need at least one alphabet");
        SymFunc {
            k,
            bound,
            coeffs: BTreeMap::new(),
        }
    }

    pub fn one(k: usize, bound: usize) -> Self {
        Self::constant(k, bound, RatFunc::one())
    }

    pub fn constant(k: usize, bound: usize, c: RatFunc) -> Self {
        let mut f = Self::zero(k, bound);
        add_into(&mut f.coeffs, vec![Partition::empty(); k], c);
        f
    }

    /// Builds from monomial-basis coefficients.
    pub fn from_monomial_coeffs(
        k: usize,
        bound: usize,
        coeffs: impl IntoIterator<Item = (Key, RatFunc)>,
    ) -> Result<Self, SymError> {
        let mut f = Self::zero(k, bound);
        for (key, c) in coeffs {
            f.check_key(&key)?;
            add_into(&mut f.coeffs, key, c);
        }
        Ok(f)
    }

    /// Builds from coefficients in `basis`.
    pub fn from_basis(
        k: usize,
        bound: usize,
        basis: Basis,
        coeffs: impl IntoIterator<Item = (Key, RatFunc)>,
    ) -> Result<Self, SymError> {
        let mut raw = BTreeMap::new();
        let probe = Self::zero(k, bound);
        for (key, c) in coeffs {
            probe.check_key(&key)?;
            add_into(&mut raw, key, c);
        }
        Ok(SymFunc {
            k,
            bound,
            coeffs: tensor_convert(&raw, basis, true),
        })
    }

    /// The basis element `B_{μ₁}(x₁)⋯B_{μ_k}(x_k)` expanded in monomials.
    pub fn basis_element(basis: Basis, key: &[Partition], bound: usize) -> Result<Self, SymError> {
        Self::from_basis(key.len(), bound, basis, [(key.to_vec(), RatFunc::one())])
    }

    fn check_key(&self, key: &[Partition]) -> Result<(), SymError> {
        if key.len() != self.k {
            return Err(SymError::AlphabetMismatch {
                k: self.k,
                got: key.len(),
            });
        }
        if !fits(key, self.bound) {
            return Err(SymError::DegreeOverflow {
                key: key_text(key),
                bound: self.bound,
            });
        }
        Ok(())
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn bound(&self) -> usize {
        self.bound
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Monomial-basis coefficients, keys sorted.
    pub fn monomial_coeffs(&self) -> &BTreeMap<Key, RatFunc> {
        &self.coeffs
    }

    pub fn coeff(&self, key: &[Partition]) -> RatFunc {
        self.coeffs.get(key).cloned().unwrap_or_else(RatFunc::zero)
    }

    /// Coefficients in another basis.
    pub fn in_basis(&self, basis: Basis) -> BTreeMap<Key, RatFunc> {
        tensor_convert(&self.coeffs, basis, false)
    }

    pub fn constant_term(&self) -> RatFunc {
        self.coeff(&vec![Partition::empty(); self.k])
    }

    /// The homogeneous component of multidegree `degree`.
    pub fn component(&self, degree: &[usize]) -> SymFunc {
        SymFunc {
            k: self.k,
            bound: self.bound,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(key, _)| key.iter().map(Partition::size).eq(degree.iter().copied()))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    /// Same element viewed with another degree bound; terms above a smaller
    /// bound are dropped.
    pub fn with_bound(&self, bound: usize) -> SymFunc {
        SymFunc {
            k: self.k,
            bound,
            coeffs: self
                .coeffs
                .iter()
                .filter(|(key, _)| fits(key, bound))
                .map(|(k, c)| (k.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn map_coeffs<E>(
        &self,
        mut f: impl FnMut(&RatFunc) -> Result<RatFunc, E>,
    ) -> Result<SymFunc, E> {
        let mut out = SymFunc::zero(self.k, self.bound);
        for (key, c) in &self.coeffs {
            add_into(&mut out.coeffs, key.clone(), f(c)?);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &RatFunc) -> SymFunc {
        if c.is_zero() {
            return SymFunc::zero(self.k, self.bound);
        }
        SymFunc {
            k: self.k,
            bound: self.bound,
            coeffs: self.coeffs.iter().map(|(k, x)| (k.clone(), x * c)).collect(),
        }
    }

    fn assert_compatible(&self, other: &SymFunc) {
        assert_eq!(
            (self.k, self.bound),
            (other.k, other.bound),
            "SymFunc operands live in different rings"
        );
    }

    pub fn add(&self, other: &SymFunc) -> SymFunc {
        self.assert_compatible(other);
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            add_into(&mut out.coeffs, k.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymFunc) -> SymFunc {
        self.add(&other.scale(&RatFunc::from_int(-1)))
    }

    /// Product, truncated at the degree bound.
    pub fn mul(&self, other: &SymFunc) -> SymFunc {
        self.assert_compatible(other);
        self.to_power_sums()
            .mul(&other.to_power_sums())
            .to_symfunc()
    }

    /// Concatenates alphabets: `f(x₁..x_a) · g(x_{a+1}..x_{a+b})`.
    pub fn tensor(&self, other: &SymFunc) -> SymFunc {
        assert_eq!(self.bound, other.bound, "tensor factors need one bound");
        let mut out = SymFunc::zero(self.k + other.k, self.bound);
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &other.coeffs {
                let mut key = ka.clone();
                key.extend(kb.iter().cloned());
                add_into(&mut out.coeffs, key, ca * cb);
            }
        }
        out
    }

    /// `⟨f, h_μ⟩` for the Hall form. Since `⟨m_λ, h_μ⟩ = δ_{λμ}`, this is the
    /// coefficient of `m_μ`.
    pub fn hall_pair_h(&self, key: &[Partition]) -> RatFunc {
        self.coeff(key)
    }

    /// The Adams operation `p_r ∘ f`; terms pushed past the bound vanish.
    pub fn plethysm_pr(&self, r: usize) -> SymFunc {
        assert!(r >= 1, "plethysm needs r >= 1");
        self.to_power_sums().plethysm(r).to_symfunc()
    }

    /// `Exp(f) = exp(Σ_{r≥1} (p_r ∘ f)/r)`.
    pub fn ple_exp(&self) -> Result<SeriesOnePlus, SymError> {
        let c = self.constant_term();
        if !c.is_zero() {
            return Err(SymError::NonzeroConstant(c.to_string()));
        }
        let g = self.to_power_sums().adams_sum();
        Ok(SeriesOnePlus(g.exp().to_symfunc()))
    }

    pub(crate) fn to_power_sums(&self) -> PowerSums {
        PowerSums {
            k: self.k,
            bound: self.bound,
            coeffs: tensor_convert(&self.coeffs, Basis::P, false),
        }
    }

    /// Golden-file text, one line per key: `μ₁|…|μ_k : <coefficient>`.
    pub fn to_golden(&self) -> String {
        let mut s = String::new();
        for (key, c) in &self.coeffs {
            s.push_str(&key_text(key));
            s.push_str(" : ");
            s.push_str(&c.to_string());
            s.push('\n');
        }
        s
    }

    /// Reads [`SymFunc::to_golden`] output. Blank lines and `#` comments are
    /// skipped.
    pub fn from_golden(k: usize, bound: usize, text: &str) -> Result<SymFunc, SymError> {
        let mut f = SymFunc::zero(k, bound);
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |msg: String| SymError::Parse { line: i + 1, msg };
            let (key, coeff) = line
                .split_once(" : ")
                .ok_or_else(|| err("missing ' : ' separator".into()))?;
            let key: Result<Key, _> = key.split('|').map(|p| p.parse::<Partition>()).collect();
            let key = key.map_err(|e| err(e.to_string()))?;
            let c: RatFunc = coeff.parse().map_err(|e| err(format!("{e}")))?;
            f.check_key(&key).map_err(|e| err(e.to_string()))?;
            add_into(&mut f.coeffs, key, c);
        }
        Ok(f)
    }
}

impl fmt::Display for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_golden())
    }
}

impl fmt::Debug for SymFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "SymFunc(k={}, N={}) {{", self.k, self.bound)?;
        f.write_str(&self.to_golden())?;
        write!(f, "}}")
    }
}

/// A truncated series with constant term exactly 1, the domain of the
/// plethystic logarithm.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SeriesOnePlus(SymFunc);

impl SeriesOnePlus {
    pub fn new(f: SymFunc) -> Result<Self, SymError> {
        let c = f.constant_term();
        if !c.is_one() {
            return Err(SymError::ConstantNotOne(c.to_string()));
        }
        Ok(SeriesOnePlus(f))
    }

    pub fn as_symfunc(&self) -> &SymFunc {
        &self.0
    }

    pub fn into_symfunc(self) -> SymFunc {
        self.0
    }

    /// `Log(Ω) = Σ_{r≥1} (μ(r)/r) · p_r ∘ log Ω`, with μ the Möbius function
    /// and `log` the formal logarithm, all truncated at the bound.
    pub fn ple_log(&self) -> SymFunc {
        let l = self.0.to_power_sums().log1p_of_shifted();
        let mut out = PowerSums::zero(self.0.k, self.0.bound);
        for r in 1..=self.0.bound.max(1) {
            let mu = mobius(r);
            if mu == 0 {
                continue;
            }
            let term = l.plethysm(r);
            out = out.add(&term.scale(&RatFunc::from_scalar(Scalar::new(
                mu.into(),
                (r as i64).into(),
            ))));
        }
        out.to_symfunc()
    }
}

pub fn mobius(n: usize) -> i64 {
    let mut n = n;
    let mut result = 1;
    let mut p = 2;
    while p * p <= n {
        if n.is_multiple_of(p) {
            n /= p;
            if n.is_multiple_of(p) {
                return 0;
            }
            result = -result;
        }
        p += 1;
    }
    if n > 1 {
        result = -result;
    }
    result
}

/// Power-sum-basis coefficients; internal workhorse for products and
/// plethystic operations.
#[derive(Clone, Debug)]
pub(crate) struct PowerSums {
    k: usize,
    bound: usize,
    coeffs: BTreeMap<Key, RatFunc>,
}

impl PowerSums {
    pub(crate) fn zero(k: usize, bound: usize) -> Self {
        PowerSums {
            k,
            bound,
            coeffs: BTreeMap::new(),
        }
    }

    fn one(k: usize, bound: usize) -> Self {
        let mut p = Self::zero(k, bound);
        p.coeffs.insert(vec![Partition::empty(); k], RatFunc::one());
        p
    }

    pub(crate) fn to_symfunc(&self) -> SymFunc {
        SymFunc {
            k: self.k,
            bound: self.bound,
            coeffs: tensor_convert(&self.coeffs, Basis::P, true),
        }
    }

    fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    fn add(&self, other: &PowerSums) -> PowerSums {
        let mut out = self.clone();
        for (k, c) in &other.coeffs {
            add_into(&mut out.coeffs, k.clone(), c.clone());
        }
        out
    }

    fn scale(&self, c: &RatFunc) -> PowerSums {
        let mut out = Self::zero(self.k, self.bound);
        for (k, x) in &self.coeffs {
            add_into(&mut out.coeffs, k.clone(), x * c);
        }
        out
    }

    fn mul(&self, other: &PowerSums) -> PowerSums {
        let mut out = Self::zero(self.k, self.bound);
        for (ka, ca) in &self.coeffs {
            for (kb, cb) in &other.coeffs {
                let key: Key = ka.iter().zip(kb).map(|(a, b)| a.union(b)).collect();
                if fits(&key, self.bound) {
                    add_into(&mut out.coeffs, key, ca * cb);
                }
            }
        }
        out
    }

    fn plethysm(&self, r: usize) -> PowerSums {
        let mut out = Self::zero(self.k, self.bound);
        for (key, c) in &self.coeffs {
            let scaled: Key = key.iter().map(|p| p.scaled(r)).collect();
            if fits(&scaled, self.bound) {
                add_into(&mut out.coeffs, scaled, c.frobenius(r as i32));
            }
        }
        out
    }

    fn constant(&self) -> RatFunc {
        self.coeffs
            .get(&vec![Partition::empty(); self.k])
            .cloned()
            .unwrap_or_else(RatFunc::zero)
    }

    /// `Σ_{r≥1} (p_r ∘ self)/r`.
    fn adams_sum(&self) -> PowerSums {
        let mut out = Self::zero(self.k, self.bound);
        for r in 1..=self.bound.max(1) {
            let term = self.plethysm(r);
            out = out.add(&term.scale(&RatFunc::from_scalar(Scalar::new(
                1.into(),
                (r as i64).into(),
            ))));
        }
        out
    }

    /// Formal exponential of a series with zero constant term.
    fn exp(&self) -> PowerSums {
        let mut out = Self::one(self.k, self.bound);
        let mut power = Self::one(self.k, self.bound);
        let mut j = 1i64;
        loop {
            power = power
                .mul(self)
                .scale(&RatFunc::from_scalar(Scalar::new(1.into(), j.into())));
            if power.is_zero() {
                break;
            }
            out = out.add(&power);
            j += 1;
        }
        out
    }

    /// `log(self)` for a series with constant term 1.
    fn log1p_of_shifted(&self) -> PowerSums {
        let mut x = self.clone();
        let c = x.constant();
        debug_assert!(c.is_one());
        x.coeffs.remove(&vec![Partition::empty(); self.k]);
        let mut out = Self::zero(self.k, self.bound);
        let mut power = Self::one(self.k, self.bound);
        let mut j = 1i64;
        loop {
            power = power.mul(&x);
            if power.is_zero() {
                break;
            }
            let sign = if j % 2 == 1 { 1 } else { -1 };
            out = out.add(&power.scale(&RatFunc::from_scalar(Scalar::new(sign.into(), j.into()))));
            j += 1;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rf;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn key1(s: &str) -> Key {
        vec![p(s)]
    }

    fn mono(pairs: &[(&str, i64)], bound: usize) -> SymFunc {
        SymFunc::from_monomial_coeffs(
            1,
            bound,
            pairs.iter().map(|(s, c)| (key1(s), RatFunc::from_int(*c))),
        )
        .unwrap()
    }

    #[test]
    fn power_sum_squared() {
        let p1 = SymFunc::basis_element(Basis::P, &key1("(1)"), 2).unwrap();
        assert_eq!(p1.mul(&p1), mono(&[("(2)", 1), ("(1,1)", 2)], 2));
        let h1 = SymFunc::basis_element(Basis::H, &key1("(1)"), 2).unwrap();
        assert_eq!(h1, mono(&[("(1)", 1)], 2));
    }

    #[test]
    fn schur_21() {
        let s21 = SymFunc::basis_element(Basis::S, &key1("(2,1)"), 3).unwrap();
        assert_eq!(s21, mono(&[("(2,1)", 1), ("(1,1,1)", 2)], 3));
    }

    #[test]
    fn products() {
        let m1 = mono(&[("(1)", 1)], 3);
        assert_eq!(m1.mul(&m1), mono(&[("(2)", 1), ("(1,1)", 2)], 3));
        let one = SymFunc::one(1, 3);
        assert_eq!(m1.mul(&one), m1);
        let h1 = SymFunc::basis_element(Basis::H, &key1("(1)"), 3).unwrap();
        let cube = h1.mul(&h1).mul(&h1);
        assert_eq!(cube, mono(&[("(3)", 1), ("(2,1)", 3), ("(1,1,1)", 6)], 3));
    }

    #[test]
    fn hall_pairing_examples() {
        let f = SymFunc::from_monomial_coeffs(
            2,
            2,
            [(vec![p("(2)"), p("(1,1)")], RatFunc::one())],
        )
        .unwrap();
        assert!(f.hall_pair_h(&[p("(2)"), p("(1,1)")]).is_one());
        let s1 = SymFunc::basis_element(Basis::S, &key1("(1)"), 1).unwrap();
        assert!(s1.hall_pair_h(&key1("(1)")).is_one());
        let p2 = SymFunc::basis_element(Basis::P, &key1("(2)"), 2).unwrap();
        assert!(p2.hall_pair_h(&key1("(2)")).is_one());
    }

    #[test]
    fn plethysm_examples() {
        let m1 = mono(&[("(1)", 1)], 2);
        let p2 = SymFunc::basis_element(Basis::P, &key1("(2)"), 2).unwrap();
        assert_eq!(m1.plethysm_pr(2), p2);
        assert_eq!(m1.scale(&rf("z")).plethysm_pr(2), p2.scale(&rf("z^2")));
        let p11 = SymFunc::basis_element(Basis::P, &[p("(1)"), p("(1)")], 2).unwrap();
        let p22 = SymFunc::basis_element(Basis::P, &[p("(2)"), p("(2)")], 2).unwrap();
        assert_eq!(p11.plethysm_pr(2), p22);
        // p_3 pushes degree 1 past a bound of 2
        assert!(m1.plethysm_pr(3).is_zero());
    }

    #[test]
    fn exp_examples() {
        let zero = SymFunc::zero(1, 3);
        assert_eq!(zero.ple_exp().unwrap().into_symfunc(), SymFunc::one(1, 3));
        let p1 = SymFunc::basis_element(Basis::P, &key1("(1)"), 3).unwrap();
        let e = p1.ple_exp().unwrap().into_symfunc();
        let mut want = SymFunc::one(1, 3);
        for n in 1..=3 {
            want = want.add(&SymFunc::basis_element(Basis::H, &key1(&format!("({n})")), 3).unwrap());
        }
        assert_eq!(e, want);
        let tp1 = p1.scale(&rf("t"));
        let e = tp1.ple_exp().unwrap().into_symfunc();
        assert_eq!(e.coeff(&key1("(2)")), rf("t^2"));
        assert!(matches!(
            SymFunc::one(1, 2).ple_exp(),
            Err(SymError::NonzeroConstant(_))
        ));
    }

    #[test]
    fn log_examples() {
        let one = SeriesOnePlus::new(SymFunc::one(1, 3)).unwrap();
        assert!(one.ple_log().is_zero());
        let c = rf("(z - w)/((z^2 - 1)*(1 - w^2))");
        let omega = SymFunc::one(1, 3).add(&mono(&[("(1)", 1)], 3).scale(&c));
        let l = SeriesOnePlus::new(omega).unwrap().ple_log();
        assert_eq!(l.component(&[1]), mono(&[("(1)", 1)], 3).scale(&c));
        assert!(SeriesOnePlus::new(SymFunc::zero(1, 3)).is_err());
    }

    #[test]
    fn golden_round_trip() {
        let f = SymFunc::from_monomial_coeffs(
            2,
            2,
            [
                (vec![p("(2)"), p("(1,1)")], rf("(z - w)/(q*t^2 - 1)")),
                (vec![p("()"), p("()")], rf("1")),
            ],
        )
        .unwrap();
        let text = f.to_golden();
        assert_eq!(text, "()|() : 1\n(2)|(1,1) : (z - w)/(q*t^2 - 1)\n");
        assert_eq!(SymFunc::from_golden(2, 2, &text).unwrap(), f);
        assert!(SymFunc::from_golden(2, 1, &text).is_err());
    }

    #[test]
    fn mobius_values() {
        let v: Vec<i64> = (1..=10).map(mobius).collect();
        assert_eq!(v, vec![1, -1, -1, 0, -1, 1, -1, 0, 0, 1]);
    }

    #[test]
    fn degree_overflow_rejected() {
        assert!(matches!(
            SymFunc::basis_element(Basis::H, &key1("(3)"), 2),
            Err(SymError::DegreeOverflow { .. })
        ));
    }
}
