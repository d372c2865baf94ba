//! Lazy infinite matrices with exact entry oracles.
//!
//! Every operator carries band metadata: bounds on the offset `j - i` of its
//! possibly-nonzero entries. Composition legality and all summation ranges
//! are decided from that metadata alone, so an upper-times-lower product is
//! rejected up front instead of being summed forever.

mod dense;

pub use dense::DenseMat;
pub(crate) use dense::csv_cell;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::sync::{Arc, Mutex};

use num_traits::{One, Zero};

use crate::arith::{binomial_scalar, sign_power, Scalar};
use crate::error::{Error, Result};

/// Bounds on `j - i` outside of which every entry is zero. `None` means
/// unbounded in that direction.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Band {
    pub min_offset: Option<isize>,
    pub max_offset: Option<isize>,
}

impl Band {
    pub const LOWER: Band = Band { min_offset: None, max_offset: Some(0) };
    pub const UPPER: Band = Band { min_offset: Some(0), max_offset: None };
    pub const DIAGONAL: Band = Band { min_offset: Some(0), max_offset: Some(0) };

    pub fn banded(min_offset: isize, max_offset: isize) -> Self {
        Band { min_offset: Some(min_offset), max_offset: Some(max_offset) }
    }

    pub fn contains(&self, i: usize, j: usize) -> bool {
        let off = j as isize - i as isize;
        self.min_offset.is_none_or(|m| off >= m) && self.max_offset.is_none_or(|m| off <= m)
    }

    pub fn transpose(self) -> Self {
        Band { min_offset: self.max_offset.map(|m| -m), max_offset: self.min_offset.map(|m| -m) }
    }

    fn join(self, other: Band) -> Self {
        Band {
            min_offset: self.min_offset.zip(other.min_offset).map(|(a, b)| a.min(b)),
            max_offset: self.max_offset.zip(other.max_offset).map(|(a, b)| a.max(b)),
        }
    }

    fn product(self, other: Band) -> Self {
        Band {
            min_offset: self.min_offset.zip(other.min_offset).map(|(a, b)| a + b),
            max_offset: self.max_offset.zip(other.max_offset).map(|(a, b)| a + b),
        }
    }

    pub fn shape(&self) -> Shape {
        match (self.min_offset, self.max_offset) {
            (Some(lo), Some(hi)) => Shape::Banded { lo: -lo, hi },
            (None, Some(hi)) if hi <= 0 => Shape::Lower,
            (Some(lo), None) if lo >= 0 => Shape::Upper,
            _ => Shape::General,
        }
    }
}

/// Coarse classification of an operator's band.
///
/// `Banded { lo, hi }` means entry `(i, j)` vanishes unless
/// `-lo <= j - i <= hi`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Shape {
    Lower,
    Upper,
    Banded { lo: isize, hi: isize },
    General,
}

/// Column `j` vanishes below row `slope * j + intercept`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ColumnBound {
    pub slope: usize,
    pub intercept: isize,
}

impl ColumnBound {
    /// Last row that may be nonzero in column `j`, or `None` when the whole
    /// column vanishes.
    pub fn last_row(&self, j: usize) -> Option<usize> {
        let r = (self.slope * j) as isize + self.intercept;
        (r >= 0).then_some(r as usize)
    }
}

type EntryFn = dyn Fn(usize, usize) -> Scalar + Send + Sync;

/// An infinite matrix given by a pure entry oracle.
#[derive(Clone)]
pub struct TriOp {
    label: String,
    band: Band,
    column_bound: Option<ColumnBound>,
    entry: Arc<EntryFn>,
}

impl fmt::Debug for TriOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("TriOp")
            .field("label", &self.label)
            .field("band", &self.band)
            .field("column_bound", &self.column_bound)
            .finish()
    }
}

impl TriOp {
    /// Wraps an entry oracle. The oracle is only consulted inside `band`.
    pub fn new(
        label: impl Into<String>,
        band: Band,
        entry: impl Fn(usize, usize) -> Scalar + Send + Sync + 'static,
    ) -> Self {
        let column_bound = band.min_offset.map(|m| ColumnBound { slope: 1, intercept: -m });
        Self { label: label.into(), band, column_bound, entry: Arc::new(entry) }
    }

    fn with_column_bound(mut self, bound: Option<ColumnBound>) -> Self {
        if bound.is_some() {
            self.column_bound = bound;
        }
        self
    }

    pub fn label(&self) -> &str {
        &self.label
    }

    pub fn relabel(mut self, label: impl Into<String>) -> Self {
        self.label = label.into();
        self
    }

    pub fn band(&self) -> Band {
        self.band
    }

    pub fn shape(&self) -> Shape {
        self.band.shape()
    }

    pub fn column_bound(&self) -> Option<ColumnBound> {
        self.column_bound
    }

    pub fn entry(&self, i: usize, j: usize) -> Scalar {
        if !self.band.contains(i, j) {
            return Scalar::zero();
        }
        if let Some(cb) = self.column_bound {
            if cb.last_row(j).is_none_or(|r| i > r) {
                return Scalar::zero();
            }
        }
        (self.entry)(i, j)
    }

    /// Caches entries behind the oracle.
    pub fn memoized(self) -> Self {
        let cache: Mutex<HashMap<(usize, usize), Scalar>> = Mutex::new(HashMap::new());
        let inner = self.entry.clone();
        let entry = move |i: usize, j: usize| {
            if let Some(v) = cache.lock().expect("memo lock").get(&(i, j)) {
                return v.clone();
            }
            let v = inner(i, j);
            cache.lock().expect("memo lock").insert((i, j), v.clone());
            v
        };
        Self { entry: Arc::new(entry), ..self }
    }

    /// Column `j` as the rows `0..rows`.
    pub fn column(&self, j: usize, rows: usize) -> Vec<Scalar> {
        (0..rows).map(|i| self.entry(i, j)).collect()
    }

    /// Columns `k` with `self(i, k)` possibly nonzero, when finitely many.
    pub(crate) fn row_range(&self, i: usize) -> Option<std::ops::Range<usize>> {
        let max = self.band.max_offset?;
        let lo = self.band.min_offset.map_or(0, |m| (i as isize + m).max(0) as usize);
        let end = (i as isize + max + 1).max(0) as usize;
        Some(lo..end.max(lo))
    }
}

pub fn identity() -> TriOp {
    TriOp::new("I", Band::DIAGONAL, |_, _| Scalar::one())
}

/// Pascal matrix `P = [C(i,j)]`.
pub fn pascal() -> TriOp {
    TriOp::new("P", Band::LOWER, |i, j| binomial_scalar(i as i64, j as i64))
}

pub fn pascal_transpose() -> TriOp {
    TriOp::new("PT", Band::UPPER, |i, j| binomial_scalar(j as i64, i as i64))
}

/// `D = diag(1, -1, 1, -1, ...)`.
pub fn sign_diagonal() -> TriOp {
    TriOp::new("D", Band::DIAGONAL, |i, _| sign_power(i as i64))
}

/// Jordan block `J(a)`: `a` on the diagonal, ones on the superdiagonal.
pub fn jordan(a: Scalar) -> TriOp {
    let label = format!("J({a})");
    if a.is_zero() {
        return TriOp::new(label, Band::banded(1, 1), |_, _| Scalar::one());
    }
    TriOp::new(label, Band::banded(0, 1), move |i, j| if i == j { a.clone() } else { Scalar::one() })
}

/// `J(a)^{-1}`, entry `(-1)^{j-i} a^{-(j-i+1)}` on and above the diagonal.
pub fn jordan_inverse(a: Scalar) -> Result<TriOp> {
    if a.is_zero() {
        return Err(Error::InvalidParameter { name: "Jinv".into(), reason: "J(0) is singular".into() });
    }
    let label = format!("J({a})^-1");
    let inv = a.inverse();
    let step = -&inv;
    Ok(TriOp::new(label, Band::UPPER, move |i, j| step.pow((j - i) as i64) * &inv))
}

/// Upper matrix with `(-1)^{j-i}` on and above the diagonal; its inverse is
/// `J(1)`.
pub fn alternating_upper() -> TriOp {
    TriOp::new("A", Band::UPPER, |i, j| sign_power((j - i) as i64))
}

/// Lower matrix with `(-1)^{i+j}` on and below the diagonal.
pub fn alternating_lower() -> TriOp {
    TriOp::new("L", Band::LOWER, |i, j| sign_power((i + j) as i64))
}

/// Lower (0,1)-matrix of ones on and below the diagonal.
pub fn ones_lower() -> TriOp {
    TriOp::new("Omega", Band::LOWER, |_, _| Scalar::one())
}

fn q_entry(i: usize, j: usize) -> Scalar {
    let border = if i == 0 && j == 0 { Scalar::one() } else { binomial_scalar(i as i64 - 1, j as i64 - 1) };
    binomial_scalar(i as i64, j as i64) + border
}

/// `Q = P + (1 ⊕ P)`: entry `C(i,j) + C(i-1,j-1)`, with `Q(0,0) = 2`.
pub fn q_matrix() -> TriOp {
    TriOp::new("Q", Band::LOWER, q_entry)
}

pub fn q_matrix_transpose() -> TriOp {
    TriOp::new("QT", Band::UPPER, |i, j| q_entry(j, i))
}

/// Names accepted by [`make_operator`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum OperatorName {
    P,
    PT,
    D,
    J,
    Jinv,
    A,
    L,
    Omega,
    Q,
    QT,
}

impl OperatorName {
    pub const ALL: [OperatorName; 10] = [
        OperatorName::P,
        OperatorName::PT,
        OperatorName::D,
        OperatorName::J,
        OperatorName::Jinv,
        OperatorName::A,
        OperatorName::L,
        OperatorName::Omega,
        OperatorName::Q,
        OperatorName::QT,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            OperatorName::P => "P",
            OperatorName::PT => "PT",
            OperatorName::D => "D",
            OperatorName::J => "J",
            OperatorName::Jinv => "Jinv",
            OperatorName::A => "A",
            OperatorName::L => "L",
            OperatorName::Omega => "Omega",
            OperatorName::Q => "Q",
            OperatorName::QT => "QT",
        }
    }

    fn takes_parameter(&self) -> bool {
        matches!(self, OperatorName::J | OperatorName::Jinv)
    }
}

impl FromStr for OperatorName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        OperatorName::ALL
            .into_iter()
            .find(|n| n.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::UnknownOperator(s.to_string()))
    }
}

/// Builds a named operator. `J` and `Jinv` need `param`; the rest reject it.
pub fn make_operator(name: OperatorName, param: Option<Scalar>) -> Result<TriOp> {
    match (name.takes_parameter(), param) {
        (true, None) => Err(Error::MissingParameter(name.as_str().into())),
        (false, Some(_)) => Err(Error::UnexpectedParameter { name: name.as_str().into() }),
        (_, param) => Ok(match name {
            OperatorName::P => pascal(),
            OperatorName::PT => pascal_transpose(),
            OperatorName::D => sign_diagonal(),
            OperatorName::J => jordan(param.expect("checked above")),
            OperatorName::Jinv => jordan_inverse(param.expect("checked above"))?,
            OperatorName::A => alternating_upper(),
            OperatorName::L => alternating_lower(),
            OperatorName::Omega => ones_lower(),
            OperatorName::Q => q_matrix(),
            OperatorName::QT => q_matrix_transpose(),
        }),
    }
}

pub fn transpose(op: &TriOp) -> TriOp {
    let inner = op.entry.clone();
    TriOp::new(format!("({})^T", op.label), op.band.transpose(), move |i, j| inner(j, i))
}

/// `c1 * op1 + c2 * op2`.
pub fn lin_comb(c1: Scalar, op1: &TriOp, c2: Scalar, op2: &TriOp) -> TriOp {
    let label = match (c1.is_one(), c2.is_one(), c2 == -Scalar::one()) {
        (true, true, _) => format!("({}+{})", op1.label, op2.label),
        (true, _, true) => format!("({}-{})", op1.label, op2.label),
        _ => format!("({c1}*{}+{c2}*{})", op1.label, op2.label),
    };
    let bound = match (op1.column_bound, op2.column_bound) {
        (Some(a), Some(b)) => Some(ColumnBound { slope: a.slope.max(b.slope), intercept: a.intercept.max(b.intercept) }),
        _ => None,
    };
    let (a, b) = (op1.clone(), op2.clone());
    TriOp::new(label, op1.band.join(op2.band), move |i, j| &c1 * a.entry(i, j) + &c2 * b.entry(i, j))
        .with_column_bound(bound)
}

/// Product `left * right`, summed over the finite inner range given by the
/// band metadata. The result memoizes its entries.
pub fn compose(left: &TriOp, right: &TriOp) -> Result<TriOp> {
    // Inner index k is bounded above iff left has a finite superdiagonal
    // extent or right a finite subdiagonal extent.
    if left.band.max_offset.is_none() && right.band.min_offset.is_none() {
        return Err(Error::InfiniteSum { left: left.label.clone(), right: right.label.clone() });
    }
    let bound = match (left.column_bound, right.column_bound) {
        (Some(l), Some(r)) => Some(ColumnBound {
            slope: l.slope * r.slope,
            intercept: l.slope as isize * r.intercept + l.intercept,
        }),
        _ => None,
    };
    let (lb, rb) = (left.band, right.band);
    let (l, r) = (left.clone(), right.clone());
    let entry = move |i: usize, j: usize| {
        let (i_s, j_s) = (i as isize, j as isize);
        let mut lo = 0isize;
        if let Some(m) = lb.min_offset {
            lo = lo.max(i_s + m);
        }
        if let Some(m) = rb.max_offset {
            lo = lo.max(j_s - m);
        }
        let hi = match (lb.max_offset, rb.min_offset) {
            (Some(a), Some(b)) => (i_s + a).min(j_s - b),
            (Some(a), None) => i_s + a,
            (None, Some(b)) => j_s - b,
            (None, None) => unreachable!("rejected above"),
        };
        let mut acc = Scalar::zero();
        for k in lo..=hi {
            let k = k as usize;
            let a = l.entry(i, k);
            if a.is_zero() {
                continue;
            }
            let b = r.entry(k, j);
            if !b.is_zero() {
                acc = acc + a * b;
            }
        }
        acc
    };
    Ok(TriOp::new(format!("{}*{}", left.label, right.label), lb.product(rb), entry)
        .with_column_bound(bound)
        .memoized())
}

/// `A↓`: column `j` pushed down by `j` rows.
pub fn downshift(op: &TriOp) -> TriOp {
    let max = Some(op.band.max_offset.map_or(0, |m| m.min(0)));
    let bound = op.column_bound.map(|b| ColumnBound { slope: b.slope + 1, intercept: b.intercept });
    let inner = op.clone();
    TriOp::new(format!("{}_down", op.label), Band { min_offset: None, max_offset: max }, move |i, j| {
        if i >= j {
            inner.entry(i - j, j)
        } else {
            Scalar::zero()
        }
    })
    .with_column_bound(bound)
}

/// Deletes the leading `rows` rows and `cols` columns:
/// `entry'(i,j) = entry(i + rows, j + cols)`.
pub fn delete_leading(op: &TriOp, rows: usize, cols: usize) -> TriOp {
    if rows == 0 && cols == 0 {
        return op.clone();
    }
    let shift = cols as isize - rows as isize;
    let band = Band {
        min_offset: op.band.min_offset.map(|m| m - shift),
        max_offset: op.band.max_offset.map(|m| m - shift),
    };
    let bound = op.column_bound.map(|b| ColumnBound {
        slope: b.slope,
        intercept: (b.slope * cols) as isize + b.intercept - rows as isize,
    });
    let inner = op.clone();
    TriOp::new(format!("{}({}|{})", op.label, rows, cols), band, move |i, j| inner.entry(i + rows, j + cols))
        .with_column_bound(bound)
}

/// `[0^T; op]`: a zero row on top, i.e. `J(0)^T * op`.
pub fn prepend_zero_row(op: &TriOp) -> TriOp {
    compose(&transpose(&jordan(Scalar::zero())), op)
        .expect("banded left factor always composes")
        .relabel(format!("[0;{}]", op.label))
}

/// Top-left `rows x cols` block.
pub fn truncate(op: &TriOp, rows: usize, cols: usize) -> Result<DenseMat> {
    if rows == 0 || cols == 0 {
        return Err(Error::InvalidArgument("truncation needs at least one row and column".into()));
    }
    Ok(DenseMat::from_fn(rows, cols, |i, j| op.entry(i, j)))
}

/// `op^n` for `n >= 1`.
pub fn op_power(op: &TriOp, n: usize) -> Result<TriOp> {
    if n == 0 {
        return Err(Error::InvalidArgument("power must be at least 1".into()));
    }
    let mut acc = op.clone();
    for _ in 1..n {
        acc = compose(&acc, op)?;
    }
    Ok(acc.relabel(format!("({})^{n}", op.label)))
}

/// `P D`.
pub fn pd() -> TriOp {
    compose(&pascal(), &sign_diagonal()).expect("lower * diagonal").relabel("PD")
}

/// `P^T D`.
pub fn ptd() -> TriOp {
    compose(&pascal_transpose(), &sign_diagonal()).expect("upper * diagonal").relabel("PTD")
}
