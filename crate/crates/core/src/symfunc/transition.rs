//! Single-alphabet transition matrices between the monomial basis and the
//! `h`, `e`, `p`, `s` bases, per degree, with exact inverses.
//!
//! Tables are built on first use and shared through a process-wide cache.
//! Two threads racing on the same key build identical tables; whichever
//! lands second is discarded.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock, RwLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::Basis;
use crate::exactalg::Scalar;
use crate::partitions::{enumerate, Partition};

/// Sparse row: `(column index, entry)` pairs with nonzero entries.
pub(crate) type Row = Vec<(usize, Scalar)>;

pub(crate) struct Transition {
    pub parts: Vec<Partition>,
    pub index: HashMap<Partition, usize>,
    /// `B_λ = Σ_ν to_m[λ][ν] m_ν`.
    pub to_m: Vec<Row>,
    /// `m_ν = Σ_λ from_m[ν][λ] B_λ`.
    pub from_m: Vec<Row>,
}

type Cache = RwLock<HashMap<(Basis, usize), Arc<Transition>>>;

fn cache() -> &'static Cache {
    static CACHE: OnceLock<Cache> = OnceLock::new();
    CACHE.get_or_init(|| RwLock::new(HashMap::new()))
}

pub(crate) fn transition(basis: Basis, n: usize) -> Arc<Transition> {
    if let Some(t) = cache().read().unwrap().get(&(basis, n)) {
        return t.clone();
    }
    let t = Arc::new(build(basis, n));
    cache()
        .write()
        .unwrap()
        .entry((basis, n))
        .or_insert(t)
        .clone()
}

/// Dense matrix of `B_λ` in the monomial basis, rows and columns indexed by
/// the partitions of `n` in reverse lexicographic order.
pub fn matrix_to_monomial(basis: Basis, n: usize) -> Vec<Vec<Scalar>> {
    densify(&transition(basis, n).to_m, enumerate(n).len())
}

/// Dense inverse of [`matrix_to_monomial`].
pub fn matrix_from_monomial(basis: Basis, n: usize) -> Vec<Vec<Scalar>> {
    densify(&transition(basis, n).from_m, enumerate(n).len())
}

fn densify(rows: &[Row], dim: usize) -> Vec<Vec<Scalar>> {
    rows.iter()
        .map(|r| {
            let mut d = vec![Scalar::zero(); dim];
            for (j, x) in r {
                d[*j] = x.clone();
            }
            d
        })
        .collect()
}

fn build(basis: Basis, n: usize) -> Transition {
    let parts = enumerate(n);
    let index: HashMap<Partition, usize> =
        parts.iter().cloned().enumerate().map(|(i, p)| (p, i)).collect();
    let dense: Vec<Vec<Scalar>> = match basis {
        Basis::M => identity(parts.len()),
        Basis::P => counting_matrix(&parts, power_sum_count),
        Basis::H => counting_matrix(&parts, |r, c| matrix_count(r, c, usize::MAX)),
        Basis::E => counting_matrix(&parts, |r, c| matrix_count(r, c, 1)),
        Basis::S => schur_matrix(&parts, &index),
    };
    let inverse = invert(&dense);
    Transition {
        parts,
        index,
        to_m: sparsify(&dense),
        from_m: sparsify(&inverse),
    }
}

fn identity(d: usize) -> Vec<Vec<Scalar>> {
    (0..d)
        .map(|i| {
            (0..d)
                .map(|j| if i == j { Scalar::one() } else { Scalar::zero() })
                .collect()
        })
        .collect()
}

fn sparsify(m: &[Vec<Scalar>]) -> Vec<Row> {
    m.iter()
        .map(|r| {
            r.iter()
                .enumerate()
                .filter(|(_, x)| !x.is_zero())
                .map(|(j, x)| (j, x.clone()))
                .collect()
        })
        .collect()
}

fn counting_matrix(
    parts: &[Partition],
    count: impl Fn(&[usize], &[usize]) -> u64,
) -> Vec<Vec<Scalar>> {
    parts
        .iter()
        .map(|row| {
            parts
                .iter()
                .map(|col| Scalar::from_integer(BigInt::from(count(row.parts(), col.parts()))))
                .collect()
        })
        .collect()
}

/// Coefficient of `m_λ` in `p_ν`: ways to drop each part of ν into one of
/// the ℓ(λ) slots so that slot `i` sums to `λ_i`.
fn power_sum_count(nu: &[usize], lambda: &[usize]) -> u64 {
    fn rec(nu: &[usize], remaining: &mut [usize]) -> u64 {
        let Some((&first, rest)) = nu.split_first() else {
            return u64::from(remaining.iter().all(|&r| r == 0));
        };
        let mut total = 0;
        for i in 0..remaining.len() {
            if remaining[i] >= first {
                remaining[i] -= first;
                total += rec(rest, remaining);
                remaining[i] += first;
            }
        }
        total
    }
    rec(nu, &mut lambda.to_vec())
}

/// Number of matrices with entries in `0..=cap`, row sums `rows` and column
/// sums `cols`. With `cap = ∞` this is the coefficient of `m_cols` in
/// `h_rows`; with `cap = 1`, in `e_rows`.
fn matrix_count(rows: &[usize], cols: &[usize], cap: usize) -> u64 {
    fn fill_row(
        rows: &[usize],
        cols: &mut [usize],
        col: usize,
        left: usize,
        cap: usize,
    ) -> u64 {
        if col == cols.len() {
            if left != 0 {
                return 0;
            }
            return next_row(&rows[1..], cols, cap);
        }
        let mut total = 0;
        let hi = left.min(cols[col]).min(cap);
        for x in 0..=hi {
            cols[col] -= x;
            total += fill_row(rows, cols, col + 1, left - x, cap);
            cols[col] += x;
        }
        total
    }
    fn next_row(rows: &[usize], cols: &mut [usize], cap: usize) -> u64 {
        match rows.first() {
            None => u64::from(cols.iter().all(|&c| c == 0)),
            Some(&r) => fill_row(rows, cols, 0, r, cap),
        }
    }
    next_row(rows, &mut cols.to_vec(), cap)
}

/// Schur functions through Jacobi–Trudi, `s_λ = det(h_{λ_i - i + j})`,
/// expanded over permutations and then pushed through the `h → m` table.
fn schur_matrix(parts: &[Partition], index: &HashMap<Partition, usize>) -> Vec<Vec<Scalar>> {
    let h = counting_matrix(parts, |r, c| matrix_count(r, c, usize::MAX));
    let dim = parts.len();
    parts
        .iter()
        .map(|lambda| {
            let l = lambda.len();
            let mut in_h = vec![0i64; dim];
            for (perm, sign) in permutations(l) {
                let mut comp = Vec::with_capacity(l);
                let mut ok = true;
                for (i, &j) in perm.iter().enumerate() {
                    let v = lambda.part(i + 1) as i64 - (i as i64) + (j as i64);
                    if v < 0 {
                        ok = false;
                        break;
                    }
                    if v > 0 {
                        comp.push(v as usize);
                    }
                }
                if ok {
                    let key = Partition::new(comp).expect("positive parts");
                    in_h[index[&key]] += sign;
                }
            }
            (0..dim)
                .map(|col| {
                    let mut acc = Scalar::zero();
                    for (row, &c) in in_h.iter().enumerate() {
                        if c != 0 {
                            acc += Scalar::from_integer(c.into()) * &h[row][col];
                        }
                    }
                    acc
                })
                .collect()
        })
        .collect()
}

/// All permutations of `0..n` with their signs (Heap's algorithm).
fn permutations(n: usize) -> Vec<(Vec<usize>, i64)> {
    let mut a: Vec<usize> = (0..n).collect();
    let mut out = vec![(a.clone(), 1)];
    let mut c = vec![0usize; n];
    let mut sign = 1i64;
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                a.swap(0, i);
            } else {
                a.swap(c[i], i);
            }
            sign = -sign;
            out.push((a.clone(), sign));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    out
}

/// Exact Gauss–Jordan inverse over ℚ.
pub(crate) fn invert(m: &[Vec<Scalar>]) -> Vec<Vec<Scalar>> {
    let n = m.len();
    let mut a: Vec<Vec<Scalar>> = m.to_vec();
    let mut inv = identity(n);
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .expect("transition matrix is invertible");
        a.swap(col, pivot);
        inv.swap(col, pivot);
        let p = a[col][col].recip();
        for j in 0..n {
            a[col][j] *= &p;
            inv[col][j] *= &p;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                for j in 0..n {
                    let x = &f * &a[col][j];
                    a[r][j] -= x;
                    let y = &f * &inv[col][j];
                    inv[r][j] -= y;
                }
            }
        }
    }
    inv
}
