//! Exactly-representable infinite sequences and operator application.
//!
//! Sequences come in a few classes: finitely supported vectors, finite
//! combinations of geometric sequences `sum c_j r_j^n` (Binet forms), the
//! Bernoulli family, and lazy exact oracles. Lower-triangular and banded
//! operators apply to every class. Operators unbounded above the diagonal
//! (`P^T D`, `J(a)^{-1}`) apply only to the first two classes, through the
//! closed rules in [`apply_upper`].

mod apply;
mod bernoulli;
mod invariance;

pub use apply::{apply, apply_finite, apply_upper, UpperOp};
pub use bernoulli::{bernoulli, kseq};
pub use invariance::{check_invariance, EvalMode, InvarianceReport, Verdict};

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binomial_scalar, sign_power, Scalar};

/// First kind: eigenvectors of `PD`. Second kind: eigenvectors of `P^T D`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Kind {
    First,
    Second,
}

/// Eigenvalue `+1` (invariant) or `-1` (inverse invariant).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    pub fn value(self) -> Scalar {
        match self {
            Sign::Plus => Scalar::one(),
            Sign::Minus => -Scalar::one(),
        }
    }

    pub fn flip(self) -> Self {
        match self {
            Sign::Plus => Sign::Minus,
            Sign::Minus => Sign::Plus,
        }
    }
}

/// Summation rule for `sum_{k >= n}` series.
///
/// `Classical` accepts only convergent series. `Continued` evaluates
/// `sum_{k>=n} C(k,n) x^k` as `x^n / (1-x)^{n+1}` (and the geometric series
/// of `J(a)^{-1}` likewise) for every `x` away from the pole.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Summation {
    Classical,
    Continued,
}

type Oracle = dyn Fn(usize) -> Scalar + Send + Sync;

/// A sequence given by an exact term oracle.
#[derive(Clone)]
pub struct LazySeq {
    label: String,
    oracle: Arc<Oracle>,
}

impl LazySeq {
    /// Memoizes the oracle's results.
    pub fn new(label: impl Into<String>, oracle: impl Fn(usize) -> Scalar + Send + Sync + 'static) -> Self {
        let cache: Mutex<HashMap<usize, Scalar>> = Mutex::new(HashMap::new());
        let memo = move |n: usize| {
            if let Some(v) = cache.lock().expect("lazy memo").get(&n) {
                return v.clone();
            }
            let v = oracle(n);
            cache.lock().expect("lazy memo").insert(n, v.clone());
            v
        };
        Self { label: label.into(), oracle: Arc::new(memo) }
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn term(&self, n: usize) -> Scalar {
        (self.oracle)(n)
    }
}

impl fmt::Debug for LazySeq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Lazy({})", self.label)
    }
}

/// An infinite sequence `a_0, a_1, ...` of exact scalars.
#[derive(Clone, Debug)]
pub enum Seq {
    /// `terms[n]` for `n < terms.len()`, zero afterwards.
    FinSupp(Vec<Scalar>),
    /// `sum (c * r^n)` over `(c, r)` pairs, with `0^0 = 1`.
    ExpComb(Vec<(Scalar, Scalar)>),
    Bernoulli,
    /// `(-1)^n B_n`.
    AltBernoulli,
    /// `K_0 = 0`, `K_n = sum_{k<n} (1/2)^{n-k} (-1)^k B_k`.
    KSeq,
    Lazy(LazySeq),
}

impl Seq {
    /// Finitely supported sequence; trailing zeros are dropped.
    pub fn fin_supp(mut terms: Vec<Scalar>) -> Self {
        while terms.last().is_some_and(Zero::is_zero) {
            terms.pop();
        }
        Seq::FinSupp(terms)
    }

    /// Geometric combination; equal ratios are merged and zero coefficients
    /// dropped.
    pub fn exp_comb(pairs: Vec<(Scalar, Scalar)>) -> Self {
        let mut merged: Vec<(Scalar, Scalar)> = Vec::with_capacity(pairs.len());
        for (c, r) in pairs {
            match merged.iter_mut().find(|(_, r2)| *r2 == r) {
                Some(slot) => slot.0 = &slot.0 + &c,
                None => merged.push((c, r)),
            }
        }
        merged.retain(|(c, _)| !c.is_zero());
        Seq::ExpComb(merged)
    }

    pub fn lazy(label: impl Into<String>, oracle: impl Fn(usize) -> Scalar + Send + Sync + 'static) -> Self {
        Seq::Lazy(LazySeq::new(label, oracle))
    }

    pub fn zero() -> Self {
        Seq::FinSupp(Vec::new())
    }

    /// The unit vector `e_k`.
    pub fn unit(k: usize) -> Self {
        let mut terms = vec![Scalar::zero(); k + 1];
        terms[k] = Scalar::one();
        Seq::FinSupp(terms)
    }

    pub fn geometric(c: Scalar, r: Scalar) -> Self {
        Seq::exp_comb(vec![(c, r)])
    }

    /// `F_n = (tau1^n - tau2^n) / sqrt 5`.
    pub fn fibonacci() -> Self {
        let (t1, t2) = Scalar::golden_pair();
        let c = Scalar::sqrt(5).expect("5 is square-free").inverse();
        Seq::exp_comb(vec![(c.clone(), t1), (-c, t2)])
    }

    /// `L_n = tau1^n + tau2^n`.
    pub fn lucas() -> Self {
        let (t1, t2) = Scalar::golden_pair();
        Seq::exp_comb(vec![(Scalar::one(), t1), (Scalar::one(), t2)])
    }

    pub fn class_name(&self) -> &'static str {
        match self {
            Seq::FinSupp(_) => "FinSupp",
            Seq::ExpComb(_) => "ExpComb",
            Seq::Bernoulli => "Bernoulli",
            Seq::AltBernoulli => "AltBernoulli",
            Seq::KSeq => "KSeq",
            Seq::Lazy(_) => "Lazy",
        }
    }

    pub fn term(&self, n: usize) -> Scalar {
        match self {
            Seq::FinSupp(t) => t.get(n).cloned().unwrap_or_else(Scalar::zero),
            Seq::ExpComb(pairs) => pairs.iter().map(|(c, r)| c * r.pow(n as i64)).sum(),
            Seq::Bernoulli => Scalar::from(bernoulli(n)),
            Seq::AltBernoulli => sign_power(n as i64) * Scalar::from(bernoulli(n)),
            Seq::KSeq => Scalar::from(kseq(n)),
            Seq::Lazy(l) => l.term(n),
        }
    }

    /// `a_0, ..., a_{depth-1}`.
    pub fn prefix(&self, depth: usize) -> Vec<Scalar> {
        (0..depth).map(|n| self.term(n)).collect()
    }

    pub fn scale(&self, c: &Scalar) -> Seq {
        match self {
            Seq::FinSupp(t) => Seq::fin_supp(t.iter().map(|x| c * x).collect()),
            Seq::ExpComb(p) => Seq::exp_comb(p.iter().map(|(k, r)| (c * k, r.clone())).collect()),
            _ => {
                let (x, c) = (self.clone(), c.clone());
                Seq::lazy(format!("{c}*{x}"), move |n| &c * x.term(n))
            }
        }
    }

    pub fn neg(&self) -> Seq {
        self.scale(&-Scalar::one())
    }

    pub fn add(&self, other: &Seq) -> Seq {
        match (self, other) {
            (Seq::FinSupp(a), Seq::FinSupp(b)) => {
                let len = a.len().max(b.len());
                Seq::fin_supp((0..len).map(|n| self.term(n) + other.term(n)).collect())
            }
            (Seq::ExpComb(a), Seq::ExpComb(b)) => Seq::exp_comb(a.iter().chain(b).cloned().collect()),
            _ => {
                let (x, y) = (self.clone(), other.clone());
                Seq::lazy(format!("{x}+{y}"), move |n| x.term(n) + y.term(n))
            }
        }
    }

    pub fn sub(&self, other: &Seq) -> Seq {
        self.add(&other.neg())
    }

    /// `J(0) x`: `a'_n = a_{n+1}`.
    pub fn shift_down(&self) -> Seq {
        match self {
            Seq::FinSupp(t) => Seq::fin_supp(t.iter().skip(1).cloned().collect()),
            Seq::ExpComb(p) => Seq::exp_comb(p.iter().map(|(c, r)| (c * r, r.clone())).collect()),
            _ => {
                let x = self.clone();
                Seq::lazy(format!("J(0)*{x}"), move |n| x.term(n + 1))
            }
        }
    }

    /// `J(0)^T x`: `a'_0 = 0`, `a'_n = a_{n-1}`.
    ///
    /// A Binet form stays a Binet form when every ratio is nonzero: shifting
    /// `c r^n` up gives `(c/r) r^n` for `n >= 1`, and a ratio-zero pair
    /// cancels the value at `n = 0`.
    pub fn shift_up(&self) -> Seq {
        match self {
            Seq::FinSupp(t) if t.is_empty() => Seq::zero(),
            Seq::FinSupp(t) => Seq::fin_supp(std::iter::once(Scalar::zero()).chain(t.iter().cloned()).collect()),
            Seq::ExpComb(p) if p.iter().all(|(_, r)| !r.is_zero()) => {
                let mut pairs: Vec<(Scalar, Scalar)> = p.iter().map(|(c, r)| (c / r, r.clone())).collect();
                let at_zero: Scalar = pairs.iter().map(|(c, _)| c.clone()).sum();
                pairs.push((-at_zero, Scalar::zero()));
                Seq::exp_comb(pairs)
            }
            _ => {
                let x = self.clone();
                Seq::lazy(format!("J(0)^T*{x}"), move |n| if n == 0 { Scalar::zero() } else { x.term(n - 1) })
            }
        }
    }

    /// `Δ^k a`, with `Δ a_n = a_{n+1} - a_n`.
    pub fn difference(&self, k: usize) -> Seq {
        match self {
            Seq::ExpComb(p) => Seq::exp_comb(
                p.iter().map(|(c, r)| (c * (r - Scalar::one()).pow(k as i64), r.clone())).collect(),
            ),
            Seq::FinSupp(t) => {
                let mut v = t.clone();
                for _ in 0..k {
                    v = (0..v.len())
                        .map(|n| v.get(n + 1).cloned().unwrap_or_else(Scalar::zero) - &v[n])
                        .collect();
                }
                Seq::fin_supp(v)
            }
            _ => {
                let mut acc = self.clone();
                for step in 1..=k {
                    let prev = acc.clone();
                    acc = Seq::lazy(format!("Delta^{step}({self})"), move |n| prev.term(n + 1) - prev.term(n));
                }
                acc
            }
        }
    }
}

/// `a_n = sum_k Δ^k a_0 C(n, k)` for `n < depth`, from the prefix's own
/// difference table.
pub fn newton_reconstruct(seq: &Seq, depth: usize) -> Vec<Scalar> {
    let mut row = seq.prefix(depth);
    let mut leading = Vec::with_capacity(depth);
    while let Some(head) = row.first() {
        leading.push(head.clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    (0..depth)
        .map(|n| {
            leading
                .iter()
                .enumerate()
                .take(n + 1)
                .map(|(k, d)| d * binomial_scalar(n as i64, k as i64))
                .sum()
        })
        .collect()
}

impl fmt::Display for Seq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Seq::FinSupp(t) => {
                let parts: Vec<String> = t.iter().map(ToString::to_string).collect();
                write!(f, "finsupp:[{}]", parts.join(","))
            }
            Seq::ExpComb(p) if p.is_empty() => write!(f, "finsupp:[]"),
            Seq::ExpComb(p) => {
                let parts: Vec<String> = p.iter().map(|(c, r)| format!("({c},{r})")).collect();
                write!(f, "geom:{}", parts.join("+"))
            }
            Seq::Bernoulli => write!(f, "bernoulli"),
            Seq::AltBernoulli => write!(f, "altbernoulli"),
            Seq::KSeq => write!(f, "kseq"),
            Seq::Lazy(l) => write!(f, "{}", l.label()),
        }
    }
}
