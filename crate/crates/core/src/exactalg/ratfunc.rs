use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::gcd::gcd;
use super::poly::{fmt_scalar, neg_exp, MPoly};
use super::{AlgError, Scalar, Var, NVARS};

/// Rational function `num / den` in `(z, w, q, t, u)`.
///
/// Values are kept reduced: the gcd of numerator and denominator is 1, the
/// denominator carries no monomial factor (those are units and live in the
/// numerator), and its lex-leading coefficient is 1. This makes `Display`
/// deterministic. Equality is still decided by cross-multiplication, so two
/// values compare equal whenever they denote the same function.
#[derive(Clone)]
pub struct RatFunc {
    num: MPoly,
    den: MPoly,
}

impl RatFunc {
    pub fn zero() -> Self {
        RatFunc {
            num: MPoly::zero(),
            den: MPoly::one(),
        }
    }

    pub fn one() -> Self {
        Self::from_poly(MPoly::one())
    }

    pub fn from_poly(p: MPoly) -> Self {
        RatFunc {
            num: p,
            den: MPoly::one(),
        }
    }

    pub fn from_scalar(c: Scalar) -> Self {
        Self::from_poly(MPoly::constant(c))
    }

    pub fn from_int(c: i64) -> Self {
        Self::from_poly(MPoly::from_int(c))
    }

    pub fn var(v: Var) -> Self {
        Self::from_poly(MPoly::var(v))
    }

    pub fn var_pow(v: Var, e: i32) -> Self {
        Self::from_poly(MPoly::var_pow(v, e))
    }

    /// `num / den`, reduced.
    pub fn new(num: MPoly, den: MPoly) -> Result<Self, AlgError> {
        if den.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    pub fn num(&self) -> &MPoly {
        &self.num
    }

    pub fn den(&self) -> &MPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.den.is_one() && self.num.is_one()
    }

    /// The underlying Laurent polynomial when the denominator is constant.
    pub fn as_polynomial(&self) -> Option<MPoly> {
        let c = self.den.constant_value()?;
        Some(self.num.scale(&c.recip()))
    }

    pub fn constant_value(&self) -> Option<Scalar> {
        self.as_polynomial()?.constant_value()
    }

    fn reduce(num: MPoly, den: MPoly) -> Self {
        if num.is_zero() {
            return Self::zero();
        }
        let shift = neg_exp(&den.min_exponents());
        let mut den = den.shift(&shift);
        let mut num = num.shift(&shift);
        if let Some(c) = den.constant_value() {
            return Self::from_poly(num.scale(&c.recip()));
        }
        let g = gcd(&num, &den);
        if !g.is_one() {
            num = num.div_exact(&g).expect("gcd divides numerator");
            den = den.div_exact(&g).expect("gcd divides denominator");
        }
        Self::normalized(num, den)
    }

    /// Scales so the denominator's leading coefficient is 1.
    fn normalized(num: MPoly, den: MPoly) -> Self {
        let lc = den.leading_coeff();
        if lc.is_one() {
            RatFunc { num, den }
        } else {
            let inv = lc.recip();
            RatFunc {
                num: num.scale(&inv),
                den: den.scale(&inv),
            }
        }
    }

    pub fn inv(&self) -> Result<Self, AlgError> {
        if self.is_zero() {
            return Err(AlgError::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<Self, AlgError> {
        Ok(self * &rhs.inv()?)
    }

    pub fn scale(&self, c: &Scalar) -> Self {
        RatFunc {
            num: self.num.scale(c),
            den: if c.is_zero() { MPoly::one() } else { self.den.clone() },
        }
    }

    /// Integer power; negative exponents invert (and panic on zero).
    pub fn pow(&self, e: i32) -> Self {
        let base = if e < 0 {
            self.inv().expect("negative power of zero")
        } else {
            self.clone()
        };
        let n = e.unsigned_abs();
        RatFunc {
            num: base.num.pow(n),
            den: base.den.pow(n),
        }
    }

    /// Raises every variable to its `r`-th power (`z ↦ z^r`, …), fixing
    /// rational constants. This is how `p_r ∘` acts on coefficients.
    pub fn frobenius(&self, r: i32) -> Self {
        assert!(r >= 1, "frobenius needs r >= 1");
        if r == 1 {
            return self.clone();
        }
        Self::reduce(self.num.frobenius(r), self.den.frobenius(r))
    }

    /// Simultaneous substitution of variables by rational functions.
    /// Variables without a binding are left in place.
    pub fn substitute(&self, bindings: &BTreeMap<Var, RatFunc>) -> Result<Self, AlgError> {
        let mut images: [RatFunc; NVARS] = Var::ALL.map(RatFunc::var);
        for (v, f) in bindings {
            images[v.index()] = f.clone();
        }
        let mut cache = HashMap::new();
        let n = substitute_poly(&self.num, &images, &mut cache)?;
        let d = substitute_poly(&self.den, &images, &mut cache)?;
        if d.is_zero() {
            return Err(AlgError::Pole(format!(
                "denominator {} vanishes after substitution",
                self.den
            )));
        }
        n.checked_div(&d)
    }

    /// Exact value at a point. Every variable occurring in `self` must be
    /// bound.
    pub fn eval(&self, point: &BTreeMap<Var, Scalar>) -> Result<Scalar, AlgError> {
        let mut values: [Scalar; NVARS] = std::array::from_fn(|_| Scalar::zero());
        let used_n = self.num.vars_present();
        let used_d = self.den.vars_present();
        for v in Var::ALL {
            match point.get(&v) {
                Some(x) => values[v.index()] = x.clone(),
                None if used_n[v.index()] || used_d[v.index()] => {
                    return Err(AlgError::UnboundVariable(v))
                }
                None => {}
            }
        }
        let pole = || AlgError::Pole(format!("{self} at {}", fmt_point(point)));
        let n = self.num.eval(&values).ok_or_else(pole)?;
        let d = self.den.eval(&values).ok_or_else(pole)?;
        if d.is_zero() {
            return Err(pole());
        }
        Ok(n / d)
    }

    /// Rewrites a rational function of `u` as a Laurent polynomial in `q = u²`.
    ///
    /// Fails with the offending denominator when `self` is not a Laurent
    /// polynomial, or with the first monomial carrying an odd power of `u`.
    pub fn as_polynomial_in_q(&self) -> Result<MPoly, AlgError> {
        let p = self.as_polynomial().ok_or_else(|| AlgError::NotPolynomial {
            witness: self.den.to_string(),
        })?;
        halve_u(&p)
    }

    /// Rewrites `u² ↦ q` in numerator and denominator when every power of
    /// `u` is even; `None` otherwise.
    pub fn in_terms_of_q(&self) -> Option<RatFunc> {
        let n = halve_u(&self.num).ok()?;
        let d = halve_u(&self.den).ok()?;
        Some(Self::reduce(n, d))
    }

    /// True when the value is a polynomial (nonnegative exponents, constant
    /// denominator).
    pub fn is_polynomial(&self) -> bool {
        self.den.is_constant() && self.num.is_polynomial()
    }

    /// Optional display cleanup: numerator and denominator scaled to
    /// primitive integer polynomials with a common rational factor pulled
    /// out. Returns `(factor, numerator, denominator)`.
    pub fn integer_form(&self) -> (Scalar, MPoly, MPoly) {
        let (n, cn) = self.num.integer_primitive();
        let (d, cd) = self.den.integer_primitive();
        (cn / cd, n, d)
    }

    pub fn to_latex(&self) -> String {
        let n = poly_latex(&self.num);
        if self.den.is_one() {
            n
        } else {
            format!("\\frac{{{}}}{{{}}}", n, poly_latex(&self.den))
        }
    }
}

fn halve_u(p: &MPoly) -> Result<MPoly, AlgError> {
    let ui = Var::U.index();
    let qi = Var::Q.index();
    if let Some((e, _)) = p.terms().find(|(e, _)| e[ui] % 2 != 0) {
        return Err(AlgError::OddPower {
            witness: MPoly::monomial(*e, Scalar::one()).to_string(),
        });
    }
    Ok(p.map_exponents(|e| {
        let mut f = *e;
        f[qi] += f[ui] / 2;
        f[ui] = 0;
        f
    }))
}

fn fmt_point(point: &BTreeMap<Var, Scalar>) -> String {
    let parts: Vec<String> = point
        .iter()
        .map(|(v, x)| format!("{v}={}", fmt_scalar(x)))
        .collect();
    parts.join(", ")
}

/// Substitutes into a Laurent polynomial, bringing everything over one
/// common denominator `Π_v D_v^{P_v} N_v^{M_v}`, where `P_v`/`M_v` are the
/// largest positive/negative exponents of `v`.
fn substitute_poly(
    p: &MPoly,
    images: &[RatFunc; NVARS],
    cache: &mut HashMap<(usize, bool, u32), MPoly>,
) -> Result<RatFunc, AlgError> {
    if p.is_zero() {
        return Ok(RatFunc::zero());
    }
    let mut max_pos = [0i32; NVARS];
    let mut max_neg = [0i32; NVARS];
    for (e, _) in p.terms() {
        for i in 0..NVARS {
            max_pos[i] = max_pos[i].max(e[i]);
            max_neg[i] = max_neg[i].max(-e[i]);
        }
    }
    for i in 0..NVARS {
        if max_neg[i] > 0 && images[i].is_zero() {
            return Err(AlgError::Pole(format!(
                "{} is mapped to 0 but occurs with a negative exponent",
                Var::ALL[i]
            )));
        }
    }
    let mut power = |i: usize, of_num: bool, k: u32| -> MPoly {
        if k == 0 {
            return MPoly::one();
        }
        cache
            .entry((i, of_num, k))
            .or_insert_with(|| {
                let base = if of_num { &images[i].num } else { &images[i].den };
                base.pow(k)
            })
            .clone()
    };
    let mut num = MPoly::zero();
    for (e, c) in p.terms() {
        let mut term = MPoly::constant(c.clone());
        for i in 0..NVARS {
            if max_pos[i] == 0 && max_neg[i] == 0 {
                continue;
            }
            // (N/D)^e · D^P · N^M = N^{e+M} · D^{P-e}
            let n_exp = (e[i] + max_neg[i]) as u32;
            let d_exp = (max_pos[i] - e[i]) as u32;
            term = &term * &power(i, true, n_exp);
            term = &term * &power(i, false, d_exp);
        }
        num += &term;
    }
    let mut den = MPoly::one();
    for i in 0..NVARS {
        den = &den * &power(i, false, max_pos[i] as u32);
        den = &den * &power(i, true, max_neg[i] as u32);
    }
    RatFunc::new(num, den)
}

fn poly_latex(p: &MPoly) -> String {
    if p.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (idx, (e, c)) in p.terms().rev().enumerate() {
        let neg = c.is_negative();
        let abs = c.abs();
        if idx == 0 {
            if neg {
                out.push('-');
            }
        } else {
            out.push_str(if neg { " - " } else { " + " });
        }
        let mut mono = String::new();
        for v in Var::ALL {
            match e[v.index()] {
                0 => {}
                1 => mono.push_str(v.name()),
                x => mono.push_str(&format!("{}^{{{}}}", v.name(), x)),
            }
        }
        let coeff = if abs.is_integer() {
            abs.numer().to_string()
        } else {
            format!("\\frac{{{}}}{{{}}}", abs.numer(), abs.denom())
        };
        if mono.is_empty() {
            out.push_str(&coeff);
        } else if abs.is_one() {
            out.push_str(&mono);
        } else {
            out.push_str(&coeff);
            out.push_str(&mono);
        }
    }
    out
}

impl PartialEq for RatFunc {
    fn eq(&self, other: &Self) -> bool {
        if self.den == other.den {
            return self.num == other.num;
        }
        &self.num * &other.den == &other.num * &self.den
    }
}

impl Eq for RatFunc {}

impl Default for RatFunc {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return RatFunc::from_poly(&self.num + &rhs.num);
            }
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let g = gcd(&self.den, &rhs.den);
        let (b, d) = if g.is_one() {
            (self.den.clone(), rhs.den.clone())
        } else {
            (
                self.den.div_exact(&g).expect("gcd divides"),
                rhs.den.div_exact(&g).expect("gcd divides"),
            )
        };
        let num = &(&self.num * &d) + &(&rhs.num * &b);
        let den = &self.den * &d;
        RatFunc::reduce(num, den)
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero();
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel: gcd(a, d) and gcd(c, b) for (a/b)·(c/d).
        let cancel = |n: &MPoly, d: &MPoly| -> (MPoly, MPoly) {
            if d.is_one() || n.is_monomial() {
                return (n.clone(), d.clone());
            }
            let g = gcd(n, d);
            if g.is_one() {
                (n.clone(), d.clone())
            } else {
                (n.div_exact(&g).unwrap(), d.div_exact(&g).unwrap())
            }
        };
        let (a, d) = cancel(&self.num, &rhs.den);
        let (c, b) = cancel(&rhs.num, &self.den);
        RatFunc::normalized(&a * &c, &b * &d)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use [`RatFunc::checked_div`] to recover.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("RatFunc division by zero")
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: RatFunc) -> RatFunc {
                (&self).$m(&rhs)
            }
        }
        impl $tr<&RatFunc> for RatFunc {
            type Output = RatFunc;
            fn $m(self, rhs: &RatFunc) -> RatFunc {
                (&self).$m(rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);
forward_owned!(Div, div);

impl AddAssign<&RatFunc> for RatFunc {
    fn add_assign(&mut self, rhs: &RatFunc) {
        *self = &*self + rhs;
    }
}

impl SubAssign<&RatFunc> for RatFunc {
    fn sub_assign(&mut self, rhs: &RatFunc) {
        *self = &*self - rhs;
    }
}

impl MulAssign<&RatFunc> for RatFunc {
    fn mul_assign(&mut self, rhs: &RatFunc) {
        *self = &*self * rhs;
    }
}

impl From<MPoly> for RatFunc {
    fn from(p: MPoly) -> Self {
        RatFunc::from_poly(p)
    }
}

impl From<Var> for RatFunc {
    fn from(v: Var) -> Self {
        RatFunc::var(v)
    }
}

impl From<i64> for RatFunc {
    fn from(c: i64) -> Self {
        RatFunc::from_int(c)
    }
}

impl From<Scalar> for RatFunc {
    fn from(c: Scalar) -> Self {
        RatFunc::from_scalar(c)
    }
}

impl From<BigInt> for RatFunc {
    fn from(c: BigInt) -> Self {
        RatFunc::from_scalar(Scalar::from_integer(c))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rf;
    use Var::*;

    fn s(n: i64) -> Scalar {
        Scalar::from_integer(n.into())
    }

    fn frac(n: i64, d: i64) -> Scalar {
        Scalar::new(n.into(), d.into())
    }

    #[test]
    fn field_arithmetic_examples() {
        assert_eq!(rf("z - w") * rf("z + w"), rf("z^2 - w^2"));
        assert_eq!(rf("q - 1") / rf("q - 1"), RatFunc::one());
        assert_eq!(
            rf("1/(q*t^2 - 1)") + RatFunc::one(),
            rf("q*t^2/(q*t^2 - 1)")
        );
        assert_eq!(
            RatFunc::one().checked_div(&RatFunc::zero()),
            Err(AlgError::DivisionByZero)
        );
        assert!(RatFunc::new(MPoly::one(), MPoly::zero()).is_err());
    }

    #[test]
    fn reduced_form_is_canonical() {
        let f = rf("(u^2 - 1)^2 / (u^2 - 1)");
        assert_eq!(f.to_string(), "u^2 - 1");
        let g = rf("(2*z - 2*w)/(4*z^2 - 4*w^2)");
        assert_eq!(g.to_string(), "(1/2)/(z + w)");
        let h = rf("1/(z*w - z)");
        assert_eq!(h.to_string(), "(z^-1)/(w - 1)");
    }

    #[test]
    fn substitution_examples() {
        let bind = |pairs: &[(Var, &str)]| -> BTreeMap<Var, RatFunc> {
            pairs.iter().map(|(v, e)| (*v, rf(e))).collect()
        };
        let f = rf("(z - w)^2");
        let got = f.substitute(&bind(&[(Z, "t*u"), (W, "-u^-1")])).unwrap();
        assert_eq!(got, rf("t^2*u^2 + 2*t + u^-2"));

        let got = rf("q").substitute(&bind(&[(Q, "u^2")])).unwrap();
        assert_eq!(got, rf("u^2"));

        let got = rf("z - w").substitute(&bind(&[(Z, "u"), (W, "u^-1")])).unwrap() * rf("u");
        assert_eq!(got, rf("u^2 - 1"));
        // oracle: numeric agreement at u = 2, 3, 5
        for u in [2, 3, 5] {
            let point: BTreeMap<Var, Scalar> = [(U, s(u))].into();
            let lhs = (u * u - 1) as i64;
            assert_eq!(got.eval(&point).unwrap(), s(lhs));
            let direct = frac(u * u - 1, u) * s(u);
            assert_eq!(direct, s(lhs));
        }
    }

    #[test]
    fn substitution_pole_reported() {
        let f = rf("1/(z - w)");
        let b: BTreeMap<Var, RatFunc> = [(Z, rf("u")), (W, rf("u"))].into();
        assert!(matches!(f.substitute(&b), Err(AlgError::Pole(_))));
        let g = rf("z^-1");
        let b: BTreeMap<Var, RatFunc> = [(Z, RatFunc::zero())].into();
        assert!(matches!(g.substitute(&b), Err(AlgError::Pole(_))));
    }

    #[test]
    fn eval_examples() {
        let at = |pairs: &[(Var, Scalar)]| -> BTreeMap<Var, Scalar> { pairs.iter().cloned().collect() };
        assert_eq!(rf("q - 1").eval(&at(&[(Q, s(3))])).unwrap(), s(2));
        assert_eq!(
            rf("q*t^2 + t").eval(&at(&[(Q, s(3)), (T, s(-1))])).unwrap(),
            s(2)
        );
        assert_eq!(rf("u^-2").eval(&at(&[(U, s(2))])).unwrap(), frac(1, 4));
        assert!(matches!(
            rf("1/(q - 3)").eval(&at(&[(Q, s(3))])),
            Err(AlgError::Pole(_))
        ));
        assert_eq!(rf("q + t").eval(&at(&[(Q, s(3))])), Err(AlgError::UnboundVariable(T)));
    }

    #[test]
    fn polynomial_in_q_examples() {
        assert_eq!(rf("u^4 - u^2").as_polynomial_in_q().unwrap(), "q^2 - q".parse().unwrap());
        assert!(matches!(
            rf("u^3").as_polynomial_in_q(),
            Err(AlgError::OddPower { .. })
        ));
        assert_eq!(
            rf("(u^2 - 1)^2/(u^2 - 1)").as_polynomial_in_q().unwrap(),
            "q - 1".parse().unwrap()
        );
        assert!(matches!(
            rf("1/(u^2 - 1)").as_polynomial_in_q(),
            Err(AlgError::NotPolynomial { .. })
        ));
        assert_eq!(
            rf("t*u^2/(t^2*u^2 - 1)").in_terms_of_q().unwrap(),
            rf("q*t/(q*t^2 - 1)")
        );
    }

    #[test]
    fn frobenius_raises_variables() {
        assert_eq!(rf("(z - w)/(1 - q*t)").frobenius(2), rf("(z^2 - w^2)/(1 - q^2*t^2)"));
        assert_eq!(rf("3/2").frobenius(3), rf("3/2"));
    }

    #[test]
    fn latex_output() {
        assert_eq!(rf("(q*t^2 + t)^2/(q*t^2 - 1)").to_latex(), "\\frac{q^{2}t^{4} + 2qt^{3} + t^{2}}{qt^{2} - 1}");
    }
}
