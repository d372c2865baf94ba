use num_traits::{One, Zero};

use super::{Seq, Summation};
use crate::arith::{binomial_scalar, sign_power, Scalar};
use crate::error::{Error, Result};
use crate::operators::{jordan_inverse, TriOp};

/// Exact prefix `(op x)_0 .. (op x)_{depth-1}` for an operator with a
/// finite superdiagonal extent. Every entry is a finite sum.
pub fn apply_finite(op: &TriOp, seq: &Seq, depth: usize) -> Result<Vec<Scalar>> {
    if op.row_range(0).is_none() {
        return Err(Error::UnboundedUpper(op.label().to_string()));
    }
    Ok((0..depth).map(|n| row_times(op, seq, n)).collect())
}

fn row_times(op: &TriOp, seq: &Seq, n: usize) -> Scalar {
    let range = match (op.row_range(n), seq) {
        (Some(r), Seq::FinSupp(t)) => r.start..r.end.min(t.len()),
        (Some(r), _) => r,
        (None, Seq::FinSupp(t)) => op.band().min_offset.map_or(0, |m| (n as isize + m).max(0) as usize)..t.len(),
        (None, _) => unreachable!("callers check the row range"),
    };
    let mut acc = Scalar::zero();
    for k in range {
        let a = op.entry(n, k);
        if !a.is_zero() {
            acc = acc + a * seq.term(k);
        }
    }
    acc
}

/// `op x` as a sequence.
///
/// A finitely supported input gives a finitely supported output whenever
/// the operator's columns have a known extent; otherwise the result is a
/// lazy exact oracle. Operators unbounded above the diagonal only accept
/// finitely supported input here (see [`apply_upper`] for the closed rules).
pub fn apply(op: &TriOp, seq: &Seq) -> Result<Seq> {
    if let Seq::FinSupp(t) = seq {
        if t.is_empty() {
            return Ok(Seq::zero());
        }
        if let Some(bound) = op.column_bound() {
            let len = (0..t.len()).filter_map(|j| bound.last_row(j)).max().map_or(0, |r| r + 1);
            return Ok(Seq::fin_supp((0..len).map(|n| row_times(op, seq, n)).collect()));
        }
    } else if op.row_range(0).is_none() {
        return Err(Error::UnsupportedSequenceClass {
            class: seq.class_name().into(),
            reason: format!("`{}` is unbounded above the diagonal", op.label()),
        });
    }
    let (op, x) = (op.clone(), seq.clone());
    let label = format!("{}*{}", op.label(), x);
    Ok(Seq::lazy(label, move |n| row_times(&op, &x, n)))
}

/// Operators whose rows are infinite to the right.
#[derive(Clone, Debug)]
pub enum UpperOp {
    /// `P^T D`: `(P^T D x)_n = sum_{k>=n} C(k,n) (-1)^k x_k`.
    Ptd,
    /// `J(a)^{-1}`: `sum_{k>=n} (-1)^{k-n} a^{-(k-n+1)} x_k`.
    JordanInverse(Scalar),
    /// Any operator with a finite band above the diagonal.
    Banded(TriOp),
}

fn ratio_error(mode_classical: bool, r: &Scalar) -> Error {
    if mode_classical {
        Error::DivergentSum { ratio: r.to_string() }
    } else {
        Error::PoleError { ratio: r.to_string() }
    }
}

/// Applies an upper operator.
///
/// Finitely supported input yields an exact finitely supported result. A
/// geometric pair `(c, r)` maps by linearity:
///
/// * `P^T D`: `(c, r) -> (c / (1+r), -r / (1+r))`; classical needs `|r| < 1`,
///   continued needs `r != -1`.
/// * `J(a)^{-1}`: `(c, r) -> (c / (a+r), r)`; classical needs `|r| < |a|`,
///   continued needs `r != -a`.
pub fn apply_upper(op: &UpperOp, seq: &Seq, mode: Summation) -> Result<Seq> {
    match (op, seq) {
        (UpperOp::Banded(t), _) => {
            if t.row_range(0).is_none() {
                return Err(Error::UnboundedUpper(t.label().to_string()));
            }
            apply(t, seq)
        }
        (UpperOp::Ptd, Seq::FinSupp(t)) => {
            let terms = (0..t.len())
                .map(|n| {
                    (n..t.len())
                        .filter(|&k| !t[k].is_zero())
                        .map(|k| binomial_scalar(k as i64, n as i64) * sign_power(k as i64) * &t[k])
                        .sum()
                })
                .collect();
            Ok(Seq::fin_supp(terms))
        }
        (UpperOp::JordanInverse(a), Seq::FinSupp(t)) => {
            let jinv = jordan_inverse(a.clone())?;
            Ok(Seq::fin_supp(
                (0..t.len())
                    .map(|n| (n..t.len()).map(|k| jinv.entry(n, k) * &t[k]).sum())
                    .collect(),
            ))
        }
        (UpperOp::Ptd, Seq::ExpComb(pairs)) => {
            let one = Scalar::one();
            let mut out = Vec::with_capacity(pairs.len());
            for (c, r) in pairs {
                let denom = &one + r;
                if mode == Summation::Classical && !r.abs_lt(&one)? {
                    return Err(ratio_error(true, r));
                }
                if denom.is_zero() {
                    return Err(ratio_error(false, r));
                }
                out.push((c / &denom, -r / &denom));
            }
            Ok(Seq::exp_comb(out))
        }
        (UpperOp::JordanInverse(a), Seq::ExpComb(pairs)) => {
            if a.is_zero() {
                return Err(Error::InvalidParameter { name: "Jinv".into(), reason: "J(0) is singular".into() });
            }
            let mut out = Vec::with_capacity(pairs.len());
            for (c, r) in pairs {
                if mode == Summation::Classical && !r.abs_lt(a)? {
                    return Err(ratio_error(true, r));
                }
                let denom = a + r;
                if denom.is_zero() {
                    return Err(ratio_error(false, r));
                }
                out.push((c / denom, r.clone()));
            }
            Ok(Seq::exp_comb(out))
        }
        (_, other) => Err(Error::UnsupportedSequenceClass {
            class: other.class_name().into(),
            reason: "upper summation needs a finitely supported or geometric-combination sequence".into(),
        }),
    }
}
