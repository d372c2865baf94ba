use serde::{Deserialize, Serialize};

use super::{apply_finite, apply_upper, Kind, Seq, Sign, Summation, UpperOp};
use crate::arith::Scalar;
use crate::error::{Error, Result};
use crate::operators::pd;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Invariant,
    InverseInvariant,
    Neither,
}

impl Verdict {
    pub fn sign(self) -> Option<Sign> {
        match self {
            Verdict::Invariant => Some(Sign::Plus),
            Verdict::InverseInvariant => Some(Sign::Minus),
            Verdict::Neither => None,
        }
    }
}

/// How the transformed prefix was evaluated.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum EvalMode {
    /// Finite sums only.
    ExactFinite,
    /// Continued (rational-function) evaluation of `sum_{k>=n}` series.
    ClosedForm,
    /// Convergent series, evaluated at their exact limit.
    #[serde(rename = "classical-partial-sum")]
    ClassicalSum,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvarianceReport {
    pub kind: Kind,
    pub verdict: Verdict,
    pub depth: usize,
    pub mode: EvalMode,
    /// For `Neither`: the later of the first indices at which `y = x` and
    /// `y = -x` fail.
    pub first_failure: Option<usize>,
    /// `y = x` on the whole prefix.
    pub fixed: bool,
    /// `y = -x` on the whole prefix.
    pub negated: bool,
}

impl InvarianceReport {
    /// Whether the prefix satisfies `y = sign * x`. The zero sequence
    /// satisfies both signs; its verdict reads `Invariant`.
    pub fn satisfies(&self, sign: Sign) -> bool {
        match sign {
            Sign::Plus => self.fixed,
            Sign::Minus => self.negated,
        }
    }
}

fn first_mismatch(y: &[Scalar], x: &[Scalar], negate: bool) -> Option<usize> {
    y.iter().zip(x).position(|(a, b)| if negate { *a != -b } else { a != b })
}

/// Compares the transformed prefix (`PD x` for the first kind, `P^T D x`
/// for the second) with `+x` and `-x`.
pub fn check_invariance(seq: &Seq, kind: Kind, depth: usize, mode: Summation) -> Result<InvarianceReport> {
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be positive".into()));
    }
    let (y, eval) = match kind {
        Kind::First => (apply_finite(&pd(), seq, depth)?, EvalMode::ExactFinite),
        Kind::Second => {
            let eval = match (seq, mode) {
                (Seq::FinSupp(_), _) => EvalMode::ExactFinite,
                (_, Summation::Continued) => EvalMode::ClosedForm,
                (_, Summation::Classical) => EvalMode::ClassicalSum,
            };
            (apply_upper(&UpperOp::Ptd, seq, mode)?.prefix(depth), eval)
        }
    };
    let x = seq.prefix(depth);
    let plus = first_mismatch(&y, &x, false);
    let minus = first_mismatch(&y, &x, true);
    let (verdict, first_failure) = match (plus, minus) {
        (None, _) => (Verdict::Invariant, None),
        (Some(_), None) => (Verdict::InverseInvariant, None),
        (Some(a), Some(b)) => (Verdict::Neither, Some(a.max(b))),
    };
    Ok(InvarianceReport {
        kind,
        verdict,
        depth,
        mode: eval,
        first_failure,
        fixed: plus.is_none(),
        negated: minus.is_none(),
    })
}
