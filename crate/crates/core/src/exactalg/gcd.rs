//! Multivariate polynomial gcd over the rationals.
//!
//! Recursive: pick the highest-index variable present, split off contents
//! (gcds of coefficient polynomials in the remaining variables) and run the
//! subresultant remainder sequence on the primitive parts. Inputs are Laurent
//! polynomials; monomial factors are units there and are stripped first.
//!
//! Before the remainder sequence, a heuristic gcd is tried: evaluate the main
//! variable at a large integer, recurse, and read the candidate back off its
//! balanced base-ξ digits. A candidate is accepted only if it divides both
//! inputs, which for ξ above twice the smaller coefficient norm proves it is
//! the gcd. On the dense bivariate inputs coming from Macdonald coefficients
//! this avoids the coefficient growth of the remainder sequence entirely.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::poly::{neg_exp, poly_div_exact, MPoly};
use super::{Exponents, Scalar, Var};

/// Gcd of two Laurent polynomials, returned as a polynomial without monomial
/// content and with lex-leading coefficient 1. `gcd(0, 0) = 0`.
pub fn gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_zero() && b.is_zero() {
        return MPoly::zero();
    }
    if a.is_zero() {
        return monic(&strip_monomial(b));
    }
    if b.is_zero() {
        return monic(&strip_monomial(a));
    }
    let (a, _) = strip_monomial(a).integer_primitive();
    let (b, _) = strip_monomial(b).integer_primitive();
    if let Some(g) = heuristic_gcd(&a, &b) {
        return monic(&g);
    }
    monic(&poly_gcd(&a, &b))
}

/// Bit budget for `ξ^deg`; past it the evaluated integers get large enough
/// that the remainder sequence is the better bet.
const HEURISTIC_BITS: u64 = 40_000;

fn norm(p: &MPoly) -> BigInt {
    p.terms()
        .map(|(_, c)| c.numer().abs())
        .max()
        .unwrap_or_else(BigInt::zero)
}

fn int_content(p: &MPoly) -> BigInt {
    p.terms().fold(BigInt::zero(), |g, (_, c)| g.gcd(c.numer()))
}

/// `p` with `x = ξ`.
fn eval_at(p: &MPoly, x: Var, xi: &BigInt) -> MPoly {
    let i = x.index();
    let mut powers: BTreeMap<i32, BigInt> = BTreeMap::new();
    let mut out = MPoly::zero();
    for (e, c) in p.terms() {
        let pw = powers
            .entry(e[i])
            .or_insert_with(|| num_traits::pow(xi.clone(), e[i] as usize))
            .clone();
        let mut rest = *e;
        rest[i] = 0;
        out.add_term(rest, c * Scalar::from_integer(pw));
    }
    out
}

/// Inverse of [`eval_at`] on balanced base-ξ digits.
fn reconstruct(gamma: &MPoly, x: Var, xi: &BigInt) -> MPoly {
    let half: BigInt = xi >> 1;
    let mut out = MPoly::zero();
    for (e, c) in gamma.terms() {
        let mut v = c.numer().clone();
        let mut k = 0;
        while !v.is_zero() {
            let mut d = v.mod_floor(xi);
            if d > half {
                d -= xi;
            }
            if !d.is_zero() {
                let mut exps: Exponents = *e;
                exps[x.index()] = k;
                out.add_term(exps, Scalar::from_integer(d.clone()));
            }
            v = (v - d) / xi;
            k += 1;
        }
    }
    out
}

fn divides(g: &MPoly, p: &MPoly) -> bool {
    poly_div_exact(p, g).is_some()
}

/// Gcd of nonzero integer polynomials with nonnegative exponents, or `None`
/// when the evaluation points tried were all unlucky.
fn heuristic_gcd(a: &MPoly, b: &MPoly) -> Option<MPoly> {
    let ca = int_content(a);
    let cb = int_content(b);
    let c = ca.gcd(&cb);
    let Some(x) = main_var(a, b) else {
        return Some(MPoly::constant(Scalar::from_integer(c)));
    };
    let a = a.scale(&Scalar::from_integer(ca).recip());
    let b = b.scale(&Scalar::from_integer(cb).recip());
    let deg = a.degree_in(x).max(b.degree_in(x)).max(1) as u64;
    let mut xi: BigInt = norm(&a).min(norm(&b)) * 2 + 29;
    for _ in 0..6 {
        if xi.bits() * deg > HEURISTIC_BITS {
            return None;
        }
        let ea = eval_at(&a, x, &xi);
        let eb = eval_at(&b, x, &xi);
        if let Some(gamma) = heuristic_gcd(&ea, &eb) {
            let (g, _) = reconstruct(&gamma, x, &xi).integer_primitive();
            if !g.is_zero() && divides(&g, &a) && divides(&g, &b) {
                return Some(g.scale(&Scalar::from_integer(c)));
            }
        }
        xi = xi * 73794 / 27011;
    }
    None
}

/// Divides out the largest monomial factor.
pub(crate) fn strip_monomial(p: &MPoly) -> MPoly {
    p.shift(&neg_exp(&p.min_exponents()))
}

pub(crate) fn monic(p: &MPoly) -> MPoly {
    if p.is_zero() {
        return MPoly::zero();
    }
    let lc = p.leading_coeff();
    if lc.is_one() {
        p.clone()
    } else {
        p.scale(&lc.recip())
    }
}

fn main_var(a: &MPoly, b: &MPoly) -> Option<Var> {
    let pa = a.vars_present();
    let pb = b.vars_present();
    Var::ALL
        .iter()
        .rev()
        .copied()
        .find(|v| pa[v.index()] || pb[v.index()])
}

/// Gcd of nonzero polynomials with nonnegative exponents, up to a rational
/// unit.
fn poly_gcd(a: &MPoly, b: &MPoly) -> MPoly {
    if a.is_constant() || b.is_constant() {
        return MPoly::one();
    }
    if a == b {
        return a.clone();
    }
    let Some(x) = main_var(a, b) else {
        return MPoly::one();
    };
    let (a, _) = a.integer_primitive();
    let (b, _) = b.integer_primitive();
    if !b.contains_var(x) {
        return poly_gcd(&content(&a, x), &b);
    }
    if !a.contains_var(x) {
        return poly_gcd(&a, &content(&b, x));
    }
    let ca = content(&a, x);
    let cb = content(&b, x);
    let c = poly_gcd(&ca, &cb);
    let pa = a.div_exact(&ca).expect("content divides");
    let pb = b.div_exact(&cb).expect("content divides");
    let g = subresultant(pa, pb, x);
    let g = primitive_part(&g, x);
    &c * &g
}

/// Gcd of the coefficients of `p` viewed as a polynomial in `x`.
fn content(p: &MPoly, x: Var) -> MPoly {
    let mut coeffs: Vec<MPoly> = p.coefficients_in(x).into_values().collect();
    // Small coefficients first keeps the running gcd cheap.
    coeffs.sort_by_key(|c| c.num_terms());
    let mut g = coeffs[0].clone();
    for c in &coeffs[1..] {
        if g.is_constant() {
            break;
        }
        g = poly_gcd(&g, c);
    }
    if g.is_constant() {
        MPoly::one()
    } else {
        g.integer_primitive().0
    }
}

fn primitive_part(p: &MPoly, x: Var) -> MPoly {
    if p.is_zero() {
        return MPoly::zero();
    }
    let c = content(p, x);
    let q = p.div_exact(&c).expect("content divides");
    q.integer_primitive().0
}

/// Pseudo-remainder of `a` by `b` with respect to `x`.
fn prem(a: &MPoly, b: &MPoly, x: Var) -> MPoly {
    let db = b.degree_in(x);
    let lcb = b.leading_coeff_in(x);
    let mut r = a.clone();
    let mut e = a.degree_in(x) - db + 1;
    while !r.is_zero() && r.degree_in(x) >= db {
        let dr = r.degree_in(x);
        let s = &r.leading_coeff_in(x) * &MPoly::var_pow(x, dr - db);
        r = &(&r * &lcb) - &(&s * b);
        e -= 1;
    }
    if e > 0 {
        r = &r * &lcb.pow(e as u32);
    }
    r
}

/// Subresultant PRS; returns a nonzero multiple of the gcd of the primitive
/// inputs (both of positive degree in `x`).
fn subresultant(mut a: MPoly, mut b: MPoly, x: Var) -> MPoly {
    if a.degree_in(x) < b.degree_in(x) {
        std::mem::swap(&mut a, &mut b);
    }
    let mut g = MPoly::one();
    let mut h = MPoly::one();
    loop {
        let d = a.degree_in(x) - b.degree_in(x);
        let r = prem(&a, &b, x);
        if r.is_zero() {
            return b;
        }
        if r.degree_in(x) == 0 {
            return MPoly::one();
        }
        let divisor = &g * &h.pow(d as u32);
        a = b;
        b = r.div_exact(&divisor).expect("subresultant division is exact");
        g = a.leading_coeff_in(x);
        h = match d {
            0 => h,
            1 => g.clone(),
            _ => g
                .pow(d as u32)
                .div_exact(&h.pow((d - 1) as u32))
                .expect("subresultant h update is exact"),
        };
    }
}
