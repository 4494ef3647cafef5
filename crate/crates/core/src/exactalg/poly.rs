use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, AddAssign, Mul, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{Exponents, Scalar, Var, NVARS};

/// Sparse multivariate Laurent polynomial over the rationals in the fixed
/// variables `(z, w, q, t, u)`.
///
/// Terms are kept in a `BTreeMap` keyed by the dense exponent vector, so the
/// lexicographic order on exponent vectors is the iteration order and the
/// last entry is the lex-leading term. Zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct MPoly {
    terms: BTreeMap<Exponents, Scalar>,
}

pub(crate) const ZERO_EXP: Exponents = [0; NVARS];

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Scalar::one())
    }

    pub fn constant(c: Scalar) -> Self {
        Self::monomial(ZERO_EXP, c)
    }

    pub fn from_int(c: i64) -> Self {
        Self::constant(Scalar::from_integer(BigInt::from(c)))
    }

    pub fn monomial(exps: Exponents, c: Scalar) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(exps, c);
        }
        MPoly { terms }
    }

    /// The polynomial `v^e` (e may be negative).
    pub fn var_pow(v: Var, e: i32) -> Self {
        let mut exps = ZERO_EXP;
        exps[v.index()] = e;
        Self::monomial(exps, Scalar::one())
    }

    pub fn var(v: Var) -> Self {
        Self::var_pow(v, 1)
    }

    /// Builds a polynomial from `(exponents, coefficient)` pairs, merging
    /// repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (Exponents, Scalar)>>(it: I) -> Self {
        let mut p = MPoly::zero();
        for (e, c) in it {
            p.add_term(e, c);
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.get(&ZERO_EXP).is_some_and(|c| c.is_one())
    }

    /// True for the zero polynomial and for nonzero constants.
    pub fn is_constant(&self) -> bool {
        self.terms.is_empty() || (self.terms.len() == 1 && self.terms.contains_key(&ZERO_EXP))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        if self.is_zero() {
            Some(Scalar::zero())
        } else if self.is_constant() {
            self.terms.get(&ZERO_EXP).cloned()
        } else {
            None
        }
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponents, &Scalar)> {
        self.terms.iter()
    }

    pub fn coeff(&self, exps: &Exponents) -> Scalar {
        self.terms.get(exps).cloned().unwrap_or_else(Scalar::zero)
    }

    pub(crate) fn add_term(&mut self, exps: Exponents, c: Scalar) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    /// Lex-leading term.
    pub fn leading(&self) -> Option<(&Exponents, &Scalar)> {
        self.terms.iter().next_back()
    }

    pub fn leading_coeff(&self) -> Scalar {
        self.leading()
            .map(|(_, c)| c.clone())
            .unwrap_or_else(Scalar::zero)
    }

    /// Variables with a nonzero exponent in some term.
    pub fn vars_present(&self) -> [bool; NVARS] {
        let mut out = [false; NVARS];
        for e in self.terms.keys() {
            for (i, &x) in e.iter().enumerate() {
                if x != 0 {
                    out[i] = true;
                }
            }
        }
        out
    }

    pub fn contains_var(&self, v: Var) -> bool {
        self.terms.keys().any(|e| e[v.index()] != 0)
    }

    /// Maximum exponent of `v` (0 for the zero polynomial).
    pub fn degree_in(&self, v: Var) -> i32 {
        self.terms.keys().map(|e| e[v.index()]).max().unwrap_or(0)
    }

    /// Componentwise minimum exponent vector (zeros for the zero polynomial).
    pub fn min_exponents(&self) -> Exponents {
        let mut it = self.terms.keys();
        let Some(first) = it.next() else {
            return ZERO_EXP;
        };
        let mut m = *first;
        for e in it {
            for i in 0..NVARS {
                m[i] = m[i].min(e[i]);
            }
        }
        m
    }

    /// True if no exponent is negative.
    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    /// Multiplies by the monomial with exponent vector `shift`.
    pub fn shift(&self, shift: &Exponents) -> MPoly {
        if shift == &ZERO_EXP {
            return self.clone();
        }
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (add_exp(e, shift), c.clone()))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Scalar) -> MPoly {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(e, x)| (*e, x * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> MPoly {
        let mut result = MPoly::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                result = &result * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Replaces every exponent `e` by `r·e` (the coefficient side of the
    /// Adams operation `p_r`).
    pub fn frobenius(&self, r: i32) -> MPoly {
        MPoly {
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut f = *e;
                    f.iter_mut().for_each(|x| *x *= r);
                    (f, c.clone())
                })
                .collect(),
        }
    }

    /// Maps each term through `f`, merging collisions.
    pub fn map_exponents(&self, f: impl Fn(&Exponents) -> Exponents) -> MPoly {
        MPoly::from_terms(self.terms.iter().map(|(e, c)| (f(e), c.clone())))
    }

    /// Coefficients with respect to `v`: `self = Σ_d coeffs[d] · v^d`, where
    /// each coefficient no longer involves `v`.
    pub fn coefficients_in(&self, v: Var) -> BTreeMap<i32, MPoly> {
        let i = v.index();
        let mut out: BTreeMap<i32, MPoly> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = *e;
            let d = rest[i];
            rest[i] = 0;
            out.entry(d).or_default().terms.insert(rest, c.clone());
        }
        out
    }

    /// Coefficient of the highest power of `v`.
    pub fn leading_coeff_in(&self, v: Var) -> MPoly {
        let i = v.index();
        let d = self.degree_in(v);
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(e, _)| e[i] == d)
                .map(|(e, c)| {
                    let mut rest = *e;
                    rest[i] = 0;
                    (rest, c.clone())
                })
                .collect(),
        }
    }

    /// Exact division. Returns `None` when `divisor` does not divide `self`
    /// in the Laurent polynomial ring.
    pub fn div_exact(&self, divisor: &MPoly) -> Option<MPoly> {
        assert!(!divisor.is_zero(), "MPoly division by zero");
        if self.is_zero() {
            return Some(MPoly::zero());
        }
        if divisor.is_monomial() {
            let (e, c) = divisor.leading().unwrap();
            let inv_shift = neg_exp(e);
            return Some(self.shift(&inv_shift).scale(&c.recip()));
        }
        // Reduce to genuine polynomials so the lex division terminates.
        let a_min = self.min_exponents();
        let b_min = divisor.min_exponents();
        let a = self.shift(&neg_exp(&a_min));
        let b = divisor.shift(&neg_exp(&b_min));
        let q = poly_div_exact(&a, &b)?;
        Some(q.shift(&sub_exp(&a_min, &b_min)))
    }

    /// Evaluates at a numeric point, one value per variable. Variables that
    /// do not occur may be given any value. Returns `None` when a variable
    /// with a negative exponent is evaluated at zero.
    pub fn eval(&self, point: &[Scalar; NVARS]) -> Option<Scalar> {
        let mut acc = Scalar::zero();
        for (e, c) in &self.terms {
            let mut term = c.clone();
            for i in 0..NVARS {
                let x = e[i];
                if x == 0 {
                    continue;
                }
                let base = &point[i];
                if x < 0 && base.is_zero() {
                    return None;
                }
                term *= pow_scalar(base, x);
            }
            acc += term;
        }
        Some(acc)
    }

    /// Multiplies through by the lcm of coefficient denominators and divides
    /// by the gcd of the resulting integer numerators; the sign is chosen so
    /// the leading coefficient is positive. Returns the primitive integer
    /// polynomial and the scalar factor removed.
    pub fn integer_primitive(&self) -> (MPoly, Scalar) {
        if self.is_zero() {
            return (MPoly::zero(), Scalar::one());
        }
        use num_integer::Integer;
        let mut lcm = BigInt::one();
        let mut gcd = BigInt::zero();
        for c in self.terms.values() {
            lcm = lcm.lcm(c.denom());
        }
        for c in self.terms.values() {
            let n = c.numer() * (&lcm / c.denom());
            gcd = gcd.gcd(&n);
        }
        let mut content = Scalar::new(gcd, lcm);
        if self.leading_coeff().is_negative() {
            content = -content;
        }
        (self.scale(&content.recip()), content)
    }
}

pub(crate) fn add_exp(a: &Exponents, b: &Exponents) -> Exponents {
    let mut out = *a;
    for i in 0..NVARS {
        out[i] += b[i];
    }
    out
}

pub(crate) fn sub_exp(a: &Exponents, b: &Exponents) -> Exponents {
    let mut out = *a;
    for i in 0..NVARS {
        out[i] -= b[i];
    }
    out
}

pub(crate) fn neg_exp(a: &Exponents) -> Exponents {
    let mut out = *a;
    out.iter_mut().for_each(|x| *x = -*x);
    out
}

fn divides_exp(small: &Exponents, big: &Exponents) -> bool {
    (0..NVARS).all(|i| small[i] <= big[i])
}

pub(crate) fn pow_scalar(base: &Scalar, e: i32) -> Scalar {
    let p = num_traits::pow(base.clone(), e.unsigned_abs() as usize);
    if e < 0 {
        p.recip()
    } else {
        p
    }
}

/// Polynomial division by lex-leading terms; both inputs have nonnegative
/// exponents.
pub(crate) fn poly_div_exact(a: &MPoly, b: &MPoly) -> Option<MPoly> {
    let (lb_exp, lb_coeff) = b.leading().map(|(e, c)| (*e, c.clone()))?;
    let lb_inv = lb_coeff.recip();
    let mut rem = a.clone();
    let mut quot = MPoly::zero();
    while let Some((le, lc)) = rem.leading().map(|(e, c)| (*e, c.clone())) {
        if !divides_exp(&lb_exp, &le) {
            return None;
        }
        let qe = sub_exp(&le, &lb_exp);
        let qc = lc * &lb_inv;
        for (e, c) in &b.terms {
            rem.add_term(add_exp(e, &qe), -(c * &qc));
        }
        quot.add_term(qe, qc);
    }
    Some(quot)
}

impl Add for &MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        out += rhs;
        out
    }
}

impl Sub for &MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        out -= rhs;
        out
    }
}

impl AddAssign<&MPoly> for MPoly {
    fn add_assign(&mut self, rhs: &MPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, c.clone());
        }
    }
}

impl SubAssign<&MPoly> for MPoly {
    fn sub_assign(&mut self, rhs: &MPoly) {
        for (e, c) in &rhs.terms {
            self.add_term(*e, -c.clone());
        }
    }
}

impl Mul for &MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        if self.is_zero() || rhs.is_zero() {
            return MPoly::zero();
        }
        let mut out = MPoly::zero();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &rhs.terms {
                out.add_term(add_exp(ea, eb), ca * cb);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for MPoly {
            type Output = MPoly;
            fn $m(self, rhs: MPoly) -> MPoly {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl From<Var> for MPoly {
    fn from(v: Var) -> Self {
        MPoly::var(v)
    }
}

impl From<i64> for MPoly {
    fn from(c: i64) -> Self {
        MPoly::from_int(c)
    }
}

pub(crate) fn fmt_scalar(c: &Scalar) -> String {
    if c.is_integer() {
        c.numer().to_string()
    } else {
        format!("{}/{}", c.numer(), c.denom())
    }
}

fn fmt_monomial(e: &Exponents) -> String {
    let mut parts = Vec::new();
    for v in Var::ALL {
        let x = e[v.index()];
        match x {
            0 => {}
            1 => parts.push(v.name().to_string()),
            _ => parts.push(format!("{}^{}", v.name(), x)),
        }
    }
    parts.join("*")
}

/// Canonical text: terms in decreasing lex order of exponent vectors,
/// rational coefficients printed as `p/q`, unit coefficients omitted.
impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else if neg {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mono = fmt_monomial(e);
            if mono.is_empty() {
                write!(f, "{}", fmt_scalar(&abs))?;
            } else if abs.is_one() {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{}", fmt_scalar(&abs), mono)?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}
