use std::sync::{Mutex, OnceLock};

use num_traits::{One, Zero};

use crate::arith::{binomial, Rational};

// Memo tables grow monotonically; readers take the lock only briefly.
static BERNOULLI: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();
static KSEQ: OnceLock<Mutex<Vec<Rational>>> = OnceLock::new();

/// `B_n` from `B_0 = 1` and `sum_{k=0}^{n} C(n+1, k) B_k = 0`, so `B_1 = -1/2`.
pub fn bernoulli(n: usize) -> Rational {
    let mut table = BERNOULLI.get_or_init(|| Mutex::new(vec![Rational::one()])).lock().expect("bernoulli memo");
    while table.len() <= n {
        let m = table.len();
        let s: Rational = table
            .iter()
            .enumerate()
            .map(|(k, b)| Rational::from_integer(binomial(m as i64 + 1, k as i64)) * b)
            .fold(Rational::zero(), |acc, x| acc + x);
        let next = -s / Rational::from_integer((m as i64 + 1).into());
        table.push(next);
    }
    table[n].clone()
}

/// `K_0 = 0`, `K_n = (K_{n-1} + (-1)^{n-1} B_{n-1}) / 2`.
pub fn kseq(n: usize) -> Rational {
    let mut table = KSEQ.get_or_init(|| Mutex::new(vec![Rational::zero()])).lock().expect("kseq memo");
    while table.len() <= n {
        let m = table.len();
        let b = bernoulli(m - 1);
        let alt = if (m - 1).is_multiple_of(2) { b } else { -b };
        let next = (&table[m - 1] + alt) / Rational::from_integer(2.into());
        table.push(next);
    }
    table[n].clone()
}
