//! Hook functions `ℋ_{m,λ}(z,w)`, the kernel series `Ω_m` and the
//! functions `ℍ_{μ,m}(z,w)`.
//!
//! ```text
//! ℋ_{m,λ} = Π_{s∈λ} (z^{2a+1} - w^{2l+1})^m / ((z^{2a+2} - w^{2l})(z^{2a} - w^{2l+2}))
//! Ω_m     = Σ_λ ℋ_{m,λ} Π_{i=1..k} H̃_λ(x_i; z², w²)
//! ℍ_{μ,m} = (z² - 1)(1 - w²) ⟨Log Ω_m, h_μ⟩
//! ```

use std::collections::HashMap;
use std::sync::{Mutex, OnceLock};

use thiserror::Error;

use crate::exactalg::{RatFunc, Var};
use crate::macdonald::{MacdonaldError, MacdonaldTable};
use crate::partitions::{enumerate_up_to, MultiPartition, Partition};
use crate::symfunc::{SeriesOnePlus, SymError, SymFunc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum KernelError {
    #[error("invalid kernel configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Macdonald(#[from] MacdonaldError),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// `m` is `r` for non-orientable surfaces and `2g` for orientable ones.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct KernelConfig {
    pub m: u32,
    pub k: usize,
    pub n_max: usize,
}

impl KernelConfig {
    pub fn new(m: u32, k: usize, n_max: usize) -> Result<Self, KernelError> {
        if k == 0 {
            return Err(KernelError::Config("k must be at least 1".into()));
        }
        if n_max == 0 {
            return Err(KernelError::Config("truncation N must be at least 1".into()));
        }
        Ok(KernelConfig { m, k, n_max })
    }
}

fn zw(a: i32, b: i32) -> RatFunc {
    &RatFunc::var_pow(Var::Z, a) - &RatFunc::var_pow(Var::W, b)
}

/// `ℋ_{m,λ}(z,w)`; the empty partition gives 1.
pub fn hook_h(m: u32, lambda: &Partition) -> RatFunc {
    let mut num = RatFunc::one();
    let mut den = RatFunc::one();
    for (a, l) in lambda.arm_legs() {
        let (a, l) = (a as i32, l as i32);
        num = &num * &zw(2 * a + 1, 2 * l + 1).pow(m as i32);
        den = &(&den * &zw(2 * a + 2, 2 * l)) * &zw(2 * a, 2 * l + 2);
    }
    &num / &den
}

/// `Ω_m` truncated to `|λ| ≤ N` in every alphabet.
pub fn omega(cfg: KernelConfig) -> Result<SeriesOnePlus, KernelError> {
    omega_with(cfg, MacdonaldTable::global())
}

pub fn omega_with(cfg: KernelConfig, table: &MacdonaldTable) -> Result<SeriesOnePlus, KernelError> {
    let mut total = SymFunc::one(cfg.k, cfg.n_max);
    for lambda in enumerate_up_to(cfg.n_max) {
        if lambda.is_empty() {
            continue;
        }
        let h = table.specialized_h(&lambda)?.with_bound(cfg.n_max);
        let mut prod = h.clone();
        for _ in 1..cfg.k {
            prod = prod.tensor(&h);
        }
        total = total.add(&prod.scale(&hook_h(cfg.m, &lambda)));
    }
    Ok(SeriesOnePlus::new(total)?)
}

/// `ℍ_{μ,m}(z,w)` with truncation `N = n`. Results are cached by `(μ, m)`.
pub fn hlv_hh(mu: &MultiPartition, m: u32) -> Result<RatFunc, KernelError> {
    type Cache = Mutex<HashMap<(MultiPartition, u32), RatFunc>>;
    static CACHE: OnceLock<Cache> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(v) = cache.lock().unwrap().get(&(mu.clone(), m)) {
        return Ok(v.clone());
    }
    let v = hlv_hh_truncated(mu, m, mu.n().max(1))?;
    Ok(cache
        .lock()
        .unwrap()
        .entry((mu.clone(), m))
        .or_insert(v)
        .clone())
}

/// `ℍ_{μ,m}(z,w)` computed from `Ω_m` truncated at `n_max ≥ n`.
pub fn hlv_hh_truncated(mu: &MultiPartition, m: u32, n_max: usize) -> Result<RatFunc, KernelError> {
    if n_max < mu.n() {
        return Err(KernelError::Config(format!(
            "truncation N = {n_max} is below |μ| = {}",
            mu.n()
        )));
    }
    let cfg = KernelConfig::new(m, mu.k(), n_max)?;
    let log = omega(cfg)?.ple_log();
    let prefactor = &zw(2, 0) * &(&RatFunc::one() - &RatFunc::var_pow(Var::W, 2));
    Ok(&prefactor * &log.hall_pair_h(mu.components()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactalg::rf;
    use crate::symfunc::Basis;

    fn p(s: &str) -> Partition {
        s.parse().unwrap()
    }

    fn mp(s: &str) -> MultiPartition {
        s.parse().unwrap()
    }

    #[test]
    fn hook_examples() {
        for m in 0..4 {
            let want = &rf("z - w").pow(m) / &rf("(z^2 - 1)*(1 - w^2)");
            assert_eq!(hook_h(m as u32, &p("(1)")), want);
        }
        assert_eq!(
            hook_h(2, &p("(2)")),
            rf("(z - w)^2*(z^3 - w)^2/((z^2 - 1)*(1 - w^2)*(z^4 - 1)*(z^2 - w^2))")
        );
        assert!(hook_h(5, &Partition::empty()).is_one());
    }

    #[test]
    fn omega_low_degrees() {
        let scalar = hook_h(2, &p("(1)"));
        let o = omega(KernelConfig::new(2, 1, 2).unwrap()).unwrap();
        let f = o.as_symfunc();
        assert!(f.constant_term().is_one());
        assert_eq!(f.coeff(&[p("(1)")]), scalar);

        let schur = |c2: &str, c11: &str| {
            SymFunc::from_basis(
                1,
                2,
                Basis::S,
                [(vec![p("(2)")], rf(c2)), (vec![p("(1,1)")], rf(c11))],
            )
            .unwrap()
        };
        let want = schur("1", "z^2")
            .scale(&hook_h(2, &p("(2)")))
            .add(&schur("1", "w^2").scale(&hook_h(2, &p("(1,1)"))));
        assert_eq!(f.component(&[2]), want);

        let o2 = omega(KernelConfig::new(3, 2, 1).unwrap()).unwrap();
        assert_eq!(o2.as_symfunc().coeff(&[p("(1)"), p("(1)")]), hook_h(3, &p("(1)")));
    }

    #[test]
    fn degree_one_closed_form() {
        for m in 0..=4u32 {
            assert_eq!(hlv_hh(&mp("(1)"), m).unwrap(), rf("z - w").pow(m as i32));
        }
        for m in 0..=3u32 {
            assert_eq!(hlv_hh(&mp("(1)|(1)"), m).unwrap(), rf("z - w").pow(m as i32));
        }
    }

    #[test]
    fn polynomial_and_truncation_stable() {
        for mu in ["(1)", "(2)", "(1,1)", "(1)|(1)"] {
            for m in 0..=3 {
                let v = hlv_hh(&mp(mu), m).unwrap();
                let n = mp(mu).n();
                assert_eq!(hlv_hh_truncated(&mp(mu), m, n + 1).unwrap(), v);
                if mu == "(2)" && m % 2 == 1 {
                    continue;
                }
                let poly = v.as_polynomial().unwrap_or_else(|| panic!("{mu} m={m}: {v}"));
                assert!(poly.is_polynomial());
                assert!(poly.terms().all(|(_, c)| c.is_integer()));
            }
        }
    }

    #[test]
    fn odd_m_single_row_keeps_a_denominator() {
        // Assembled by hand from the degree-2 part of Log Ω:
        // ℋ_(2) + ℋ_(11) - A²/2 - A(z²,w²)/2 with A = ℋ_(1).
        assert_eq!(hlv_hh(&mp("(2)"), 1).unwrap(), rf("1/(z^2 + 1)"));
        let v3 = hlv_hh(&mp("(2)"), 3).unwrap();
        assert_eq!(v3.den().to_string(), "z^2 + 1");
    }

    #[test]
    fn rejects_bad_config() {
        assert!(KernelConfig::new(1, 0, 1).is_err());
        assert!(hlv_hh_truncated(&mp("(2)"), 1, 1).is_err());
    }
}
