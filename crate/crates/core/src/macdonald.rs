//! Macdonald polynomials in one alphabet.
//!
//! `P_μ(x; q, t)` comes from Gram–Schmidt on the monomial basis, ordered by
//! a linear extension of dominance, against the `(q,t)` inner product
//! `⟨p_λ, p_ν⟩ = δ_{λν} z_λ Π_i (1 - q^{λ_i})/(1 - t^{λ_i})`. From there:
//!
//! * `J_μ = Π_{s∈μ} (1 - q^{a(s)} t^{l(s)+1}) · P_μ`
//! * `H_μ = J_μ[X/(1-t)]`, i.e. `p_r ↦ p_r/(1 - t^r)`
//! * `H̃_μ(x; q, t) = t^{n(μ)} H_μ(x; q, 1/t)`
//!
//! All coefficients are exact rational functions. Results are memoized per
//! degree (for `P`) and per partition (for `H̃`).

use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use thiserror::Error;

use crate::exactalg::{rf, AlgError, RatFunc, Var};
use crate::partitions::{enumerate, Partition};
use crate::symfunc::{transition, Basis, SymError, SymFunc};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MacdonaldError {
    #[error("coefficient of {key} in H~{mu} is not a polynomial: {value}")]
    NotPolynomial {
        mu: String,
        key: String,
        value: String,
    },
    #[error(transparent)]
    Alg(#[from] AlgError),
    #[error(transparent)]
    Sym(#[from] SymError),
    #[error("table dump line {line}: {msg}")]
    Dump { line: usize, msg: String },
}

/// Coefficient vector over the power sums of one fixed degree, indexed like
/// `enumerate(n)`.
type PVec = Vec<RatFunc>;

/// The `(q,t)` weights `z_λ Π (1-q^{λ_i})/(1-t^{λ_i})` for the partitions of
/// `n`.
fn qt_weights(parts: &[Partition]) -> Vec<RatFunc> {
    parts
        .iter()
        .map(|l| {
            let mut w = RatFunc::from_scalar(l.zlambda());
            for &p in l.parts() {
                let e = p as i32;
                w = &w * &(&(RatFunc::one() - RatFunc::var_pow(Var::Q, e))
                    / &(RatFunc::one() - RatFunc::var_pow(Var::T, e)));
            }
            w
        })
        .collect()
}

fn weighted_dot(a: &PVec, b: &PVec, w: &[RatFunc]) -> RatFunc {
    let mut acc = RatFunc::zero();
    for ((x, y), wi) in a.iter().zip(b).zip(w) {
        if x.is_zero() || y.is_zero() {
            continue;
        }
        acc += &(&(x * y) * wi);
    }
    acc
}

/// `(q,t)` inner product of two single-alphabet symmetric functions.
pub fn qt_inner(f: &SymFunc, g: &SymFunc) -> RatFunc {
    assert_eq!(f.k(), 1, "qt_inner is defined on one alphabet");
    let pf = f.in_basis(Basis::P);
    let pg = g.in_basis(Basis::P);
    let mut acc = RatFunc::zero();
    for (key, a) in &pf {
        if let Some(b) = pg.get(key) {
            let w = qt_weights(std::slice::from_ref(&key[0])).remove(0);
            acc += &(&(a * b) * &w);
        }
    }
    acc
}

fn to_symfunc(parts: &[Partition], v: &PVec, bound: usize) -> SymFunc {
    let coeffs = parts
        .iter()
        .zip(v)
        .filter(|(_, c)| !c.is_zero())
        .map(|(p, c)| (vec![p.clone()], c.clone()));
    SymFunc::from_basis(1, bound, Basis::P, coeffs).expect("degree fits the bound")
}

/// Memo table for `P_μ` and `H̃_μ`. Fills are idempotent: concurrent
/// computations of the same entry produce identical values and the first
/// insert wins.
#[derive(Default)]
pub struct MacdonaldTable {
    p_by_degree: Mutex<HashMap<usize, Arc<Vec<PVec>>>>,
    modified: Mutex<HashMap<Partition, SymFunc>>,
}

impl MacdonaldTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Process-wide shared table.
    pub fn global() -> &'static MacdonaldTable {
        static TABLE: OnceLock<MacdonaldTable> = OnceLock::new();
        TABLE.get_or_init(MacdonaldTable::new)
    }

    /// Power-sum coefficients of `P_λ` for every `λ ⊢ n`, indexed like
    /// `enumerate(n)`.
    fn p_vectors(&self, n: usize) -> Arc<Vec<PVec>> {
        if let Some(v) = self.p_by_degree.lock().unwrap().get(&n) {
            return v.clone();
        }
        let computed = Arc::new(gram_schmidt(n));
        self.p_by_degree
            .lock()
            .unwrap()
            .entry(n)
            .or_insert(computed)
            .clone()
    }

    /// The monic Macdonald polynomial `P_μ = m_μ + (dominance-lower terms)`.
    pub fn macdonald_p(&self, mu: &Partition) -> SymFunc {
        let n = mu.size();
        let parts = enumerate(n);
        let idx = parts.iter().position(|p| p == mu).expect("μ ⊢ n");
        to_symfunc(&parts, &self.p_vectors(n)[idx], n)
    }

    /// The modified Macdonald polynomial `H̃_μ(x; q, t)` with bound `|μ|`.
    pub fn modified_h(&self, mu: &Partition) -> Result<SymFunc, MacdonaldError> {
        if let Some(f) = self.modified.lock().unwrap().get(mu) {
            return Ok(f.clone());
        }
        let f = self.compute_modified(mu)?;
        Ok(self
            .modified
            .lock()
            .unwrap()
            .entry(mu.clone())
            .or_insert(f)
            .clone())
    }

    /// `H̃_μ(x; z², w²)`.
    pub fn specialized_h(&self, mu: &Partition) -> Result<SymFunc, MacdonaldError> {
        let bindings: BTreeMap<Var, RatFunc> = [(Var::Q, rf("z^2")), (Var::T, rf("w^2"))].into();
        Ok(self.modified_h(mu)?.map_coeffs(|c| c.substitute(&bindings))?)
    }

    fn compute_modified(&self, mu: &Partition) -> Result<SymFunc, MacdonaldError> {
        let n = mu.size();
        if n == 0 {
            return Ok(SymFunc::one(1, 0));
        }
        let parts = enumerate(n);
        let idx = parts.iter().position(|p| p == mu).expect("μ ⊢ n");
        let pvec = &self.p_vectors(n)[idx];

        let mut c_mu = RatFunc::one();
        for (a, l) in mu.arm_legs() {
            let term = MonomialQT { q: a as i32, t: l as i32 + 1 };
            c_mu = &c_mu * &(RatFunc::one() - term.to_ratfunc());
        }
        let invert_t: BTreeMap<Var, RatFunc> = [(Var::T, RatFunc::var_pow(Var::T, -1))].into();
        let t_shift = RatFunc::var_pow(Var::T, mu.nstat() as i32);

        let mut transformed = Vec::with_capacity(parts.len());
        for (rho, c) in parts.iter().zip(pvec) {
            if c.is_zero() {
                transformed.push(RatFunc::zero());
                continue;
            }
            let mut x = c * &c_mu;
            for &r in rho.parts() {
                x = &x / &(RatFunc::one() - RatFunc::var_pow(Var::T, r as i32));
            }
            let x = x.substitute(&invert_t)?;
            transformed.push(&x * &t_shift);
        }
        let h = to_symfunc(&parts, &transformed, n);
        for (key, c) in h.monomial_coeffs() {
            if !c.is_polynomial() {
                return Err(MacdonaldError::NotPolynomial {
                    mu: mu.to_string(),
                    key: key[0].to_string(),
                    value: c.to_string(),
                });
            }
        }
        Ok(h)
    }

    /// Cached `H̃` entries in golden-file form, one `[μ]` section each.
    pub fn dump(&self) -> String {
        let map = self.modified.lock().unwrap();
        let mut keys: Vec<&Partition> = map.keys().collect();
        keys.sort();
        let mut out = String::new();
        for k in keys {
            out.push_str(&format!("[{k}]\n"));
            out.push_str(&map[k].to_golden());
            out.push('\n');
        }
        out
    }

    /// Loads a [`MacdonaldTable::dump`]. Every entry is checked against the
    /// normalization `⟨H̃_μ, s_(n)⟩ = 1` before it is accepted.
    pub fn restore(&self, text: &str) -> Result<usize, MacdonaldError> {
        let mut sections: Vec<(usize, Partition, String)> = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let t = line.trim();
            if let Some(inner) = t.strip_prefix('[').and_then(|r| r.strip_suffix(']')) {
                let mu: Partition = inner.parse().map_err(|e| MacdonaldError::Dump {
                    line: i + 1,
                    msg: format!("{e}"),
                })?;
                sections.push((i + 1, mu, String::new()));
            } else if !t.is_empty() {
                let Some(last) = sections.last_mut() else {
                    return Err(MacdonaldError::Dump {
                        line: i + 1,
                        msg: "entry before any [partition] header".into(),
                    });
                };
                last.2.push_str(line);
                last.2.push('\n');
            }
        }
        let mut loaded = Vec::new();
        for (line, mu, body) in sections {
            let f = SymFunc::from_golden(1, mu.size(), &body)?;
            let s = f.in_basis(Basis::S);
            let top = s
                .get(&vec![Partition::row(mu.size())])
                .cloned()
                .unwrap_or_else(RatFunc::zero);
            if !top.is_one() {
                return Err(MacdonaldError::Dump {
                    line,
                    msg: format!("entry for {mu} is not normalized"),
                });
            }
            loaded.push((mu, f));
        }
        let count = loaded.len();
        let mut map = self.modified.lock().unwrap();
        for (mu, f) in loaded {
            map.entry(mu).or_insert(f);
        }
        Ok(count)
    }
}

struct MonomialQT {
    q: i32,
    t: i32,
}

impl MonomialQT {
    fn to_ratfunc(&self) -> RatFunc {
        &RatFunc::var_pow(Var::Q, self.q) * &RatFunc::var_pow(Var::T, self.t)
    }
}

/// Gram–Schmidt over the partitions of `n`, lowest in dominance first.
/// Returns power-sum coefficient vectors indexed like `enumerate(n)`.
fn gram_schmidt(n: usize) -> Vec<PVec> {
    let parts = enumerate(n);
    let dim = parts.len();
    let weights = qt_weights(&parts);
    let table = transition(Basis::P, n);
    let m_in_p: Vec<PVec> = (0..dim)
        .map(|i| {
            let mut v = vec![RatFunc::zero(); dim];
            for (j, x) in &table.from_m[i] {
                v[*j] = RatFunc::from_scalar(x.clone());
            }
            v
        })
        .collect();

    // enumerate() is reverse lexicographic, which refines dominance, so
    // walking it backwards visits (1^n) first.
    let mut done: Vec<(usize, PVec, RatFunc)> = Vec::with_capacity(dim);
    let mut out = vec![Vec::new(); dim];
    for i in (0..dim).rev() {
        let m = &m_in_p[i];
        let mut v = m.clone();
        for (_, pj, norm) in &done {
            let c = &weighted_dot(m, pj, &weights) / norm;
            if c.is_zero() {
                continue;
            }
            for (vk, pk) in v.iter_mut().zip(pj) {
                if !pk.is_zero() {
                    *vk -= &(&c * pk);
                }
            }
        }
        let norm = weighted_dot(&v, &v, &weights);
        out[i] = v.clone();
        done.push((i, v, norm));
    }
    out
}
