//! Maps between invariant and inverse invariant sequences.
//!
//! Four elementary transforms flip the sign class within a kind; the four
//! basis matrices `P^{T↓}`, `Q^{T↓}(0|0)`, `Q↓`, `[0^T; P↓]` send any
//! sequence into a fixed class. Pipelines chain them and track the class
//! their output provably lands in.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::Scalar;
use crate::eigen::{pt_down, q_down, qt_down00, zero_p_down};
use crate::error::{Error, Result};
use crate::operators::{
    lin_comb, op_power, pascal, pascal_transpose, sign_diagonal, TriOp,
};
use crate::sequences::{apply, apply_upper, check_invariance, Kind, Seq, Sign, Summation, UpperOp};

/// `(J(1) + J(0))^T x`: `y_n = x_n + 2 x_{n-1}`. Sends invariant sequences
/// of the second kind to inverse invariant ones.
pub fn t42a(x: &Seq) -> Seq {
    x.add(&x.shift_up().scale(&Scalar::integer(2)))
}

/// `J(2)^{-1} J(0) x`. Sends inverse invariant sequences of the second kind
/// to invariant ones.
pub fn t42b(x: &Seq, mode: Summation) -> Result<Seq> {
    apply_upper(&UpperOp::JordanInverse(Scalar::integer(2)), &x.shift_down(), mode)
}

/// `(-J(0) J(-2)^{-1})^T x`: `y_n = sum_{k<n} (1/2)^{n-k} x_k`. Sends
/// invariant sequences of the first kind to inverse invariant ones.
pub fn t42c(x: &Seq) -> Seq {
    let half = Scalar::ratio(1, 2);
    if let Seq::ExpComb(pairs) = x {
        // sum_{k<n} 2^{k-n} c r^k = c (r^n - 2^{-n}) / (2r - 1)
        let two = Scalar::integer(2);
        if pairs.iter().all(|(_, r)| !(&two * r - Scalar::one()).is_zero()) {
            let mut out = Vec::with_capacity(2 * pairs.len());
            for (c, r) in pairs {
                let k = c / (&two * r - Scalar::one());
                out.push((-&k, half.clone()));
                out.push((k, r.clone()));
            }
            return Seq::exp_comb(out);
        }
    }
    let x = x.clone();
    Seq::lazy(format!("t42c({x})"), move |n| {
        let mut acc = Scalar::zero();
        for k in 0..n {
            acc = (acc + x.term(k)) * &half;
        }
        acc
    })
}

/// `(J(-1) + J(0)) x`: `y_n = 2 x_{n+1} - x_n`. Sends inverse invariant
/// sequences of the first kind to invariant ones.
pub fn t42d(x: &Seq) -> Seq {
    x.shift_down().scale(&Scalar::integer(2)).sub(x)
}

/// A kind together with the sign of the eigenvalue.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SeqClass {
    pub kind: Kind,
    pub sign: Sign,
}

impl SeqClass {
    pub fn new(kind: Kind, sign: Sign) -> Self {
        Self { kind, sign }
    }
}

impl fmt::Display for SeqClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.sign {
            Sign::Plus => "invariant",
            Sign::Minus => "inverse invariant",
        };
        let kind = match self.kind {
            Kind::First => "first",
            Kind::Second => "second",
        };
        write!(f, "{sign} of the {kind} kind")
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Stage {
    /// `P^{T↓}`
    PtDown,
    /// `J(1)^T + J(0)^T`
    T42a,
    /// `J(2)^{-1} J(0)`
    T42b,
    /// `Q^{T↓}(0|0)`
    QtDown00,
    /// `Q↓`
    QDown,
    /// `(-J(-2)^{-1})^T J(0)^T`
    T42c,
    /// `J(0) + J(-1)`
    T42d,
    /// `[0^T; P↓]`
    ZeroPDown,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::PtDown => "PTdown",
            Stage::T42a => "t42a",
            Stage::T42b => "t42b",
            Stage::QtDown00 => "QTdown00",
            Stage::QDown => "Qdown",
            Stage::T42c => "t42c",
            Stage::T42d => "t42d",
            Stage::ZeroPDown => "ZeroPdown",
        }
    }

    /// The class of the output given the class of the input, when known.
    pub fn effect(self, input: Option<SeqClass>) -> Option<SeqClass> {
        use Kind::*;
        use Sign::*;
        let flip = |from: SeqClass, to: SeqClass| (input == Some(from)).then_some(to);
        match self {
            Stage::PtDown => Some(SeqClass::new(Second, Plus)),
            Stage::QtDown00 => Some(SeqClass::new(Second, Minus)),
            Stage::QDown => Some(SeqClass::new(First, Plus)),
            Stage::ZeroPDown => Some(SeqClass::new(First, Minus)),
            Stage::T42a => flip(SeqClass::new(Second, Plus), SeqClass::new(Second, Minus)),
            Stage::T42b => flip(SeqClass::new(Second, Minus), SeqClass::new(Second, Plus)),
            Stage::T42c => flip(SeqClass::new(First, Plus), SeqClass::new(First, Minus)),
            Stage::T42d => flip(SeqClass::new(First, Minus), SeqClass::new(First, Plus)),
        }
    }

    fn matrix(self) -> Option<TriOp> {
        match self {
            Stage::PtDown => Some(pt_down()),
            Stage::QtDown00 => Some(qt_down00()),
            Stage::QDown => Some(q_down()),
            Stage::ZeroPDown => Some(zero_p_down()),
            _ => None,
        }
    }

    pub fn apply(self, x: &Seq, mode: Summation) -> Result<Seq> {
        if let Some(op) = self.matrix() {
            return apply(&op, x);
        }
        Ok(match self {
            Stage::T42a => t42a(x),
            Stage::T42b => t42b(x, mode)?,
            Stage::T42c => t42c(x),
            Stage::T42d => t42d(x),
            _ => unreachable!("matrix stages handled above"),
        })
    }
}

/// Stages in application order: `steps[0]` acts first.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Pipeline {
    pub steps: Vec<Stage>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Variant {
    Plain,
    Tilde,
}

fn build(n: usize, variant: Variant, on_plus: Stage, on_minus: Stage) -> Result<Pipeline> {
    if n == 0 {
        return Err(Error::InvalidArgument("pipeline length must be at least 1".into()));
    }
    // plain: l_i = (-1)^{i+1}; tilde: l_i = (-1)^i
    let steps = (1..=n)
        .map(|i| {
            let plus = (i % 2 == 1) == (variant == Variant::Plain);
            if plus {
                on_plus
            } else {
                on_minus
            }
        })
        .collect();
    Ok(Pipeline { steps })
}

/// `Φ_n` (stages `P^{T↓}` / `J(1)^T + J(0)^T`) or `Φ̃_n` (stages
/// `J(2)^{-1} J(0)` / `Q^{T↓}(0|0)`).
pub fn build_phi(n: usize, variant: Variant) -> Result<Pipeline> {
    match variant {
        Variant::Plain => build(n, variant, Stage::PtDown, Stage::T42a),
        Variant::Tilde => build(n, variant, Stage::T42b, Stage::QtDown00),
    }
}

/// `Ψ_n` (stages `Q↓` / `(-J(-2)^{-1})^T J(0)^T`) or `Ψ̃_n` (stages
/// `J(0) + J(-1)` / `[0^T; P↓]`).
pub fn build_psi(n: usize, variant: Variant) -> Result<Pipeline> {
    match variant {
        Variant::Plain => build(n, variant, Stage::QDown, Stage::T42c),
        Variant::Tilde => build(n, variant, Stage::T42d, Stage::ZeroPDown),
    }
}

impl Pipeline {
    pub fn single(stage: Stage) -> Self {
        Self { steps: vec![stage] }
    }

    /// `self` followed by `next`.
    pub fn then(mut self, next: Pipeline) -> Self {
        self.steps.extend(next.steps);
        self
    }

    /// The class the output is guaranteed to lie in, for arbitrary input.
    pub fn declared_class(&self) -> Option<SeqClass> {
        self.steps.iter().fold(None, |class, stage| stage.effect(class))
    }

    pub fn apply(&self, x: &Seq, mode: Summation) -> Result<Seq> {
        self.steps.iter().try_fold(x.clone(), |acc, stage| stage.apply(&acc, mode))
    }
}

impl fmt::Display for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names: Vec<&str> = self.steps.iter().map(|s| s.name()).collect();
        write!(f, "{}", names.join(";"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PowerBase {
    #[serde(rename = "P+D")]
    PPlusD,
    #[serde(rename = "P-D")]
    PMinusD,
    #[serde(rename = "PT+D")]
    PtPlusD,
    #[serde(rename = "PT-D")]
    PtMinusD,
}

impl PowerBase {
    pub const ALL: [PowerBase; 4] = [PowerBase::PPlusD, PowerBase::PMinusD, PowerBase::PtPlusD, PowerBase::PtMinusD];

    pub fn operator(self) -> TriOp {
        let (p, sign) = match self {
            PowerBase::PPlusD => (pascal(), Scalar::one()),
            PowerBase::PMinusD => (pascal(), -Scalar::one()),
            PowerBase::PtPlusD => (pascal_transpose(), Scalar::one()),
            PowerBase::PtMinusD => (pascal_transpose(), -Scalar::one()),
        };
        lin_comb(Scalar::one(), &p, sign, &sign_diagonal())
    }

    /// The class every column of every power lies in.
    pub fn column_class(self) -> SeqClass {
        match self {
            PowerBase::PPlusD => SeqClass::new(Kind::First, Sign::Plus),
            PowerBase::PMinusD => SeqClass::new(Kind::First, Sign::Minus),
            PowerBase::PtPlusD => SeqClass::new(Kind::Second, Sign::Plus),
            PowerBase::PtMinusD => SeqClass::new(Kind::Second, Sign::Minus),
        }
    }

    /// The class `converse_check` concludes for `y` when `X^T D y = 0`.
    pub fn converse_class(self) -> SeqClass {
        match self {
            PowerBase::PPlusD => SeqClass::new(Kind::Second, Sign::Minus),
            PowerBase::PMinusD => SeqClass::new(Kind::Second, Sign::Plus),
            PowerBase::PtPlusD => SeqClass::new(Kind::First, Sign::Minus),
            PowerBase::PtMinusD => SeqClass::new(Kind::First, Sign::Plus),
        }
    }
}

impl fmt::Display for PowerBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PowerBase::PPlusD => "P+D",
            PowerBase::PMinusD => "P-D",
            PowerBase::PtPlusD => "PT+D",
            PowerBase::PtMinusD => "PT-D",
        })
    }
}

/// Column `j` of `base^n`. Columns of the upper bases are finitely supported.
pub fn power_column(base: PowerBase, n: usize, j: usize) -> Result<Seq> {
    let op = op_power(&base.operator(), n)?;
    Ok(match base {
        PowerBase::PtPlusD | PowerBase::PtMinusD => Seq::fin_supp(op.column(j, j + 1)),
        PowerBase::PPlusD | PowerBase::PMinusD => {
            Seq::lazy(format!("({base})^{n}e{j}"), move |i| op.entry(i, j))
        }
    })
}

/// `x^T D y = sum_n (-1)^n x_n y_n`.
///
/// Exact when either sequence is finitely supported. Two geometric
/// combinations are summed in closed form pairwise,
/// `sum (-1)^n c s (r t)^n = c s / (1 + r t)`, which needs `|r t| < 1`.
pub fn orthogonality(x: &Seq, y: &Seq) -> Result<Scalar> {
    let finite = |len: usize| -> Scalar {
        (0..len)
            .map(|n| {
                let t = x.term(n) * y.term(n);
                if n % 2 == 0 {
                    t
                } else {
                    -t
                }
            })
            .sum()
    };
    match (x, y) {
        (Seq::FinSupp(t), _) | (_, Seq::FinSupp(t)) => Ok(finite(t.len())),
        (Seq::ExpComb(a), Seq::ExpComb(b)) => {
            let mut acc = Scalar::zero();
            for (c, r) in a {
                for (s, t) in b {
                    let rt = r * t;
                    if !rt.abs_lt(&Scalar::one())? {
                        return Err(Error::UnsupportedPair(format!("ratio product {rt} is not inside the unit interval")));
                    }
                    acc = acc + c * s / (Scalar::one() + rt);
                }
            }
            Ok(acc)
        }
        _ => Err(Error::UnsupportedPair(format!("{} and {}", x.class_name(), y.class_name()))),
    }
}

/// Outcome of testing the converse of the orthogonality relation on a prefix.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConverseReport {
    pub base: PowerBase,
    pub depth: usize,
    /// `x_i^T D y = 0` for every column `x_i`, `i < depth`.
    pub hypothesis: bool,
    pub claimed: SeqClass,
    /// Whether `y` lies in the claimed class; `None` when the hypothesis fails.
    pub conclusion: Option<bool>,
    /// The evidence is bounded by `depth`, never a proof.
    pub depth_bounded: bool,
}

impl ConverseReport {
    /// The implication holds on the checked prefix.
    pub fn holds(&self) -> bool {
        self.conclusion.unwrap_or(true)
    }
}

/// If every column `x_i` (`i < depth`) of `X` satisfies `x_i^T D y = 0`,
/// checks that `y` lies in the class the converse statement assigns to `X`.
pub fn converse_check(y: &Seq, base: PowerBase, depth: usize) -> Result<ConverseReport> {
    let terms = match y {
        Seq::FinSupp(t) => t,
        other => {
            return Err(Error::UnsupportedSequenceClass {
                class: other.class_name().into(),
                reason: "the converse check needs a finitely supported sequence".into(),
            })
        }
    };
    if terms.is_empty() {
        return Err(Error::InvalidArgument("y must be nonzero".into()));
    }
    if depth == 0 {
        return Err(Error::InvalidArgument("depth must be positive".into()));
    }
    let x = base.operator();
    let hypothesis = (0..depth).all(|i| {
        let col = Seq::fin_supp(x.column(i, terms.len()));
        orthogonality(&col, y).is_ok_and(|v| v.is_zero())
    });
    let claimed = base.converse_class();
    let conclusion = if hypothesis {
        let depth = depth.max(terms.len());
        let report = check_invariance(y, claimed.kind, depth, Summation::Continued)?;
        Some(report.satisfies(claimed.sign))
    } else {
        None
    };
    Ok(ConverseReport { base, depth, hypothesis, claimed, conclusion, depth_bounded: true })
}
