//! The similarity transforms `N`, `M` and the eigenbases of `PD` and `P^T D`.
//!
//! `N (P^T D) M` and `(D M^T D)(PD)(D N^T D)` are direct sums of 2x2 blocks,
//! so the columns of `M` and of `D N^T D` split into the four eigenspaces.

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::arith::{binomial_scalar, sign_power, Scalar};
use crate::error::{Error, Result};
use crate::operators::{
    alternating_upper, compose, delete_leading, downshift, jordan, pascal, pascal_transpose, pd,
    prepend_zero_row, ptd, q_matrix, q_matrix_transpose, sign_diagonal, transpose, truncate, Band, DenseMat,
    TriOp,
};
use crate::sequences::{Seq, Sign};

/// `N`: `n_00 = 1`, and for `1 <= i <= j`
/// `n_ij = (-1)^{j-i} C(floor((i-1)/2) + j - i, floor((i-1)/2))`.
pub fn make_n() -> TriOp {
    TriOp::new("N", Band::UPPER, |i, j| {
        if i == 0 || j == 0 {
            return if i == j { Scalar::one() } else { Scalar::zero() };
        }
        let h = (i as i64 - 1) / 2;
        sign_power((j - i) as i64) * binomial_scalar(h + (j - i) as i64, h)
    })
}

/// `M = N^{-1}`: `m_00 = 1`, and `m_ij = C(floor(j/2), j-i)` for `1 <= i <= j`.
pub fn make_m() -> TriOp {
    TriOp::new("M", Band::UPPER, |i, j| {
        if i == 0 || j == 0 {
            return if i == j { Scalar::one() } else { Scalar::zero() };
        }
        binomial_scalar(j as i64 / 2, (j - i) as i64)
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FactorKind {
    /// Identity, then the alternating matrix `A`.
    H,
    /// Identity, then `J(1) = A^{-1}`.
    U,
}

/// `H(k)` or `U(k)`: the identity on indices below `2k - 1` and `A` (resp.
/// `J(1)`) on the indices from `2k - 1` on.
pub fn make_factor(kind: FactorKind, k: usize) -> Result<TriOp> {
    if k == 0 {
        return Err(Error::InvalidArgument("factor index starts at 1".into()));
    }
    let start = 2 * k - 1;
    let (label, block) = match kind {
        FactorKind::H => (format!("H({k})"), alternating_upper()),
        FactorKind::U => (format!("U({k})"), jordan(Scalar::one())),
    };
    Ok(TriOp::new(label, block.band(), move |i, j| {
        if i < start || j < start {
            if i == j {
                Scalar::one()
            } else {
                Scalar::zero()
            }
        } else {
            block.entry(i - start, j - start)
        }
    }))
}

/// `H(m) ... H(1)`.
pub fn n_partial(m: usize) -> Result<TriOp> {
    let mut acc = make_factor(FactorKind::H, 1)?;
    for k in 2..=m {
        acc = compose(&make_factor(FactorKind::H, k)?, &acc)?;
    }
    Ok(acc)
}

/// `U(1) ... U(m)`.
pub fn m_partial(m: usize) -> Result<TriOp> {
    let mut acc = make_factor(FactorKind::U, 1)?;
    for k in 2..=m {
        acc = compose(&acc, &make_factor(FactorKind::U, k)?)?;
    }
    Ok(acc)
}

/// The partial products agree with `N` and `M` on the leading `2m` indices.
pub fn stabilization_holds(m: usize) -> Result<bool> {
    let s = 2 * m;
    Ok(truncate(&n_partial(m)?, s, s)? == truncate(&make_n(), s, s)?
        && truncate(&m_partial(m)?, s, s)? == truncate(&make_m(), s, s)?)
}

/// `P_1^T D_1 = [[1,-1],[0,-1]]`.
pub fn upper_block() -> DenseMat {
    DenseMat::from_rows(&[vec![1, -1], vec![0, -1]])
}

/// `P_1 D_1 = [[1,0],[1,-1]]`.
pub fn lower_block() -> DenseMat {
    DenseMat::from_rows(&[vec![1, 0], vec![1, -1]])
}

/// `D X^T D`.
fn conjugate_transpose(x: &TriOp) -> TriOp {
    let d = sign_diagonal();
    let inner = compose(&transpose(x), &d).expect("diagonal factor");
    compose(&d, &inner).expect("diagonal factor").relabel(format!("D{}^TD", x.label()))
}

/// `D N^T D`, whose columns span the eigenspaces of `PD`.
pub fn dntd() -> TriOp {
    conjugate_transpose(&make_n())
}

/// Checks both block diagonalizations on the leading `2m x 2m` block with
/// the given `N` and `M`.
pub fn verify_block_diag_with(n: &TriOp, m: &TriOp, blocks: usize) -> Result<bool> {
    if blocks == 0 {
        return Err(Error::InvalidArgument("need at least one block".into()));
    }
    let s = 2 * blocks;
    let upper = compose(&compose(n, &ptd())?, m)?;
    let lower = compose(&compose(&conjugate_transpose(m), &pd())?, &conjugate_transpose(n))?;
    Ok(truncate(&upper, s, s)? == DenseMat::direct_sum(&upper_block(), blocks)
        && truncate(&lower, s, s)? == DenseMat::direct_sum(&lower_block(), blocks))
}

pub fn verify_block_diag(blocks: usize) -> Result<bool> {
    verify_block_diag_with(&make_n(), &make_m(), blocks)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EigenOperator {
    #[serde(rename = "PD")]
    Pd,
    #[serde(rename = "PTD")]
    Ptd,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct EigenSpaceId {
    pub operator: EigenOperator,
    pub eigenvalue: Sign,
}

impl EigenSpaceId {
    pub const ALL: [EigenSpaceId; 4] = [
        EigenSpaceId { operator: EigenOperator::Ptd, eigenvalue: Sign::Plus },
        EigenSpaceId { operator: EigenOperator::Ptd, eigenvalue: Sign::Minus },
        EigenSpaceId { operator: EigenOperator::Pd, eigenvalue: Sign::Plus },
        EigenSpaceId { operator: EigenOperator::Pd, eigenvalue: Sign::Minus },
    ];

    pub fn new(operator: EigenOperator, eigenvalue: Sign) -> Self {
        Self { operator, eigenvalue }
    }

    /// The infinite matrix whose columns are the basis vectors.
    pub fn basis_matrix(&self) -> TriOp {
        match (self.operator, self.eigenvalue) {
            (EigenOperator::Ptd, Sign::Plus) => pt_down(),
            (EigenOperator::Ptd, Sign::Minus) => qt_down00(),
            (EigenOperator::Pd, Sign::Plus) => q_down(),
            (EigenOperator::Pd, Sign::Minus) => zero_p_down(),
        }
    }
}

/// `P^{T↓}`.
pub fn pt_down() -> TriOp {
    downshift(&pascal_transpose()).relabel("PTdown")
}

/// `Q^{T↓}(0|0)`.
pub fn qt_down00() -> TriOp {
    delete_leading(&downshift(&q_matrix_transpose()), 1, 1).relabel("QTdown00")
}

/// `Q↓`.
pub fn q_down() -> TriOp {
    downshift(&q_matrix()).relabel("Qdown")
}

/// `[0^T; P↓]`.
pub fn zero_p_down() -> TriOp {
    prepend_zero_row(&downshift(&pascal())).relabel("ZeroPdown")
}

fn column_combination(op: &TriOp, cols: &[(usize, i64)]) -> Vec<Scalar> {
    let last = cols
        .iter()
        .filter_map(|&(j, _)| op.column_bound().and_then(|b| b.last_row(j)))
        .max()
        .map_or(0, |r| r + 1);
    (0..last)
        .map(|i| cols.iter().map(|&(j, c)| Scalar::integer(c) * op.entry(i, j)).sum())
        .collect()
}

/// The `j`-th basis vector of an eigenspace.
///
/// `P^T D`: `M e_{2j}` (eigenvalue 1) and `M (e_{2j} + 2 e_{2j+1})`
/// (eigenvalue -1), both finitely supported. `PD`: `D N^T D (2 e_{2j} + e_{2j+1})`
/// and `D N^T D e_{2j+1}`, as lazy exact sequences.
pub fn basis_vector(space: EigenSpaceId, j: usize) -> Seq {
    let (a, b) = (2 * j, 2 * j + 1);
    match (space.operator, space.eigenvalue) {
        (EigenOperator::Ptd, Sign::Plus) => Seq::fin_supp(column_combination(&make_m(), &[(a, 1)])),
        (EigenOperator::Ptd, Sign::Minus) => Seq::fin_supp(column_combination(&make_m(), &[(a, 1), (b, 2)])),
        (EigenOperator::Pd, sign) => {
            let n = make_n();
            let (ca, label) = match sign {
                Sign::Plus => (2, format!("DN^TD(2e{a}+e{b})")),
                Sign::Minus => (0, format!("DN^TD(e{b})")),
            };
            // (D N^T D)(i, k) = (-1)^{i+k} N(k, i)
            Seq::lazy(label, move |i| {
                let col = |k: usize| sign_power((i + k) as i64) * n.entry(k, i);
                Scalar::integer(ca) * col(a) + col(b)
            })
        }
    }
}

/// Expansion of a prefix in one of the staggered bases.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoordResult {
    pub coefficients: Vec<Scalar>,
    /// Every non-pivot row is reproduced by the coefficients.
    pub residual_ok: bool,
    pub pivot_rows: Vec<usize>,
}

/// Solves `B c = x` row by row, where column `j` of `B` starts at row
/// `pivot(j)` with a nonzero leading entry and pivots increase with `j`.
fn staggered_solve(basis: &TriOp, x: &[Scalar], pivot: impl Fn(usize) -> usize) -> CoordResult {
    let mut coefficients: Vec<Scalar> = Vec::new();
    let mut pivot_rows = Vec::new();
    let mut residual_ok = true;
    for (i, xi) in x.iter().enumerate() {
        let partial: Scalar = coefficients.iter().enumerate().map(|(l, c)| c * basis.entry(i, l)).sum();
        let j = coefficients.len();
        if pivot(j) == i {
            coefficients.push((xi - &partial) / basis.entry(i, j));
            pivot_rows.push(i);
        } else if partial != *xi {
            residual_ok = false;
        }
    }
    CoordResult { coefficients, residual_ok, pivot_rows }
}

/// Coordinates of `x` in the basis of `E_1(PD)` (columns of `Q↓`, pivots at
/// even rows) or `E_{-1}(PD)` (columns of `[0^T; P↓]`, pivots at odd rows).
/// `residual_ok` is the membership verdict on the prefix.
pub fn coords_first_kind(x: &Seq, sign: Sign, depth: usize) -> Result<CoordResult> {
    if depth < 2 {
        return Err(Error::InvalidArgument("depth must be at least 2".into()));
    }
    let prefix = x.prefix(depth);
    Ok(match sign {
        Sign::Plus => staggered_solve(&q_down(), &prefix, |j| 2 * j),
        Sign::Minus => staggered_solve(&zero_p_down(), &prefix, |j| 2 * j + 1),
    })
}

/// Formal coordinates against the columns of `P^{T↓}` (`sign = +1`) or
/// `Q^{T↓}(0|0)` (`sign = -1`). Both are unit lower triangular, so every row
/// is a pivot and the expansion always exists.
pub fn formal_coords_second_kind(x: &Seq, sign: Sign, depth: usize) -> Result<CoordResult> {
    if depth < 2 {
        return Err(Error::InvalidArgument("depth must be at least 2".into()));
    }
    let prefix = x.prefix(depth);
    let basis = match sign {
        Sign::Plus => pt_down(),
        Sign::Minus => qt_down00(),
    };
    Ok(staggered_solve(&basis, &prefix, |j| j))
}
