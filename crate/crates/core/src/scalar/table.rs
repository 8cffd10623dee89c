//! Cyclotomic polynomials and reduction tables, cached per conductor.

use std::collections::HashMap;
use std::sync::{Arc, OnceLock};

use num_integer::Integer;
use parking_lot::RwLock;

/// Reduction data for ℚ(ζ_N).
#[derive(Debug)]
pub(crate) struct CycloTable {
    pub degree: usize,
    /// `powers[e]` is ζ_N^e written in the power basis, for `0 <= e < N`.
    pub powers: Vec<Vec<i64>>,
}

static TABLES: OnceLock<RwLock<HashMap<u32, Arc<CycloTable>>>> = OnceLock::new();

pub(crate) fn table(n: u32) -> Arc<CycloTable> {
    let cache = TABLES.get_or_init(|| RwLock::new(HashMap::new()));
    if let Some(t) = cache.read().get(&n) {
        return Arc::clone(t);
    }
    let built = Arc::new(build_table(n));
    cache.write().entry(n).or_insert(built).clone()
}

pub fn totient(n: u32) -> u32 {
    (1..=n).filter(|k| k.gcd(&n) == 1).count() as u32
}

/// Integer coefficients of the n-th cyclotomic polynomial, lowest degree first.
pub fn cyclotomic_polynomial(n: u32) -> Vec<i64> {
    // x^n - 1 divided by every Φ_d with d | n, d < n.
    let mut num = vec![0i64; n as usize + 1];
    num[0] = -1;
    num[n as usize] = 1;
    for d in (1..n).filter(|d| n.is_multiple_of(*d)) {
        num = exact_div_monic(&num, &cyclotomic_polynomial(d));
    }
    num
}

fn exact_div_monic(num: &[i64], den: &[i64]) -> Vec<i64> {
    let mut rem = num.to_vec();
    let dd = den.len() - 1;
    let qd = rem.len() - 1 - dd;
    let mut quot = vec![0i64; qd + 1];
    for k in (0..=qd).rev() {
        let c = rem[k + dd];
        quot[k] = c;
        if c != 0 {
            for (i, &dc) in den.iter().enumerate() {
                rem[k + i] -= c * dc;
            }
        }
    }
    debug_assert!(rem.iter().all(|&c| c == 0), "cyclotomic division not exact");
    quot
}

fn build_table(n: u32) -> CycloTable {
    let phi = cyclotomic_polynomial(n);
    let degree = phi.len() - 1;
    let mut powers = Vec::with_capacity(n as usize);
    let mut cur = vec![0i64; degree];
    cur[0] = 1;
    for _ in 0..n {
        powers.push(cur.clone());
        // multiply by x and reduce with the monic relation x^deg = -Σ φ_k x^k
        let top = cur[degree - 1];
        let mut next = vec![0i64; degree];
        next[1..degree].copy_from_slice(&cur[..(degree - 1)]);
        if top != 0 {
            for k in 0..degree {
                next[k] -= top * phi[k];
            }
        }
        cur = next;
    }
    CycloTable { degree, powers }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(cyclotomic_polynomial(1), vec![-1, 1]);
        assert_eq!(cyclotomic_polynomial(2), vec![1, 1]);
        assert_eq!(cyclotomic_polynomial(3), vec![1, 1, 1]);
        assert_eq!(cyclotomic_polynomial(4), vec![1, 0, 1]);
        assert_eq!(cyclotomic_polynomial(6), vec![1, -1, 1]);
        assert_eq!(cyclotomic_polynomial(8), vec![1, 0, 0, 0, 1]);
        assert_eq!(cyclotomic_polynomial(12), vec![1, 0, -1, 0, 1]);
    }

    #[test]
    fn totients() {
        let expect = [(1, 1), (2, 1), (3, 2), (4, 2), (5, 4), (8, 4), (12, 4), (15, 8)];
        for (n, t) in expect {
            assert_eq!(totient(n), t);
            assert_eq!(cyclotomic_polynomial(n).len() as u32 - 1, t);
        }
    }

    #[test]
    fn power_table_wraps() {
        let t = table(4);
        assert_eq!(t.powers[2], vec![-1, 0]);
        assert_eq!(t.powers[3], vec![0, -1]);
    }
}
