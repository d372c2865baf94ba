//! Named property checks over the whole calculus, grouped in suites.
//!
//! Every check is exact. Randomized checks draw from a ChaCha stream seeded
//! by the caller, so a report is a pure function of `(suite, depth, seed)`
//! unless timings are requested.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::arith::{Rational, Scalar};
use crate::eigen::{
    basis_vector, coords_first_kind, make_factor, make_m, make_n, stabilization_holds, verify_block_diag,
    EigenOperator, EigenSpaceId, FactorKind,
};
use crate::error::{Error, Result};
use crate::operators::{compose, op_power, pascal, pd, sign_diagonal, truncate};
use crate::sequences::{apply_finite, apply_upper, check_invariance, Kind, Seq, Sign, Summation, UpperOp};
use crate::transforms::{
    build_phi, build_psi, converse_check, orthogonality, power_column, t42a, t42b, t42c, t42d, PowerBase, Variant,
};

/// Published values of `B_n` for `n = 0..=12`, as `(num, den)`.
pub const TABLE1_B: [(i64, i64); 13] = [
    (1, 1),
    (-1, 2),
    (1, 6),
    (0, 1),
    (-1, 30),
    (0, 1),
    (1, 42),
    (0, 1),
    (-1, 30),
    (0, 1),
    (5, 66),
    (0, 1),
    (-691, 2730),
];

/// Published values of `K_n` for `n = 0..=12`.
pub const TABLE1_K: [(i64, i64); 13] = [
    (0, 1),
    (1, 2),
    (1, 2),
    (1, 3),
    (1, 6),
    (1, 15),
    (1, 30),
    (1, 35),
    (1, 70),
    (-1, 105),
    (-1, 210),
    (41, 1155),
    (41, 2310),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Inversion,
    Eigen,
    Similarity,
    Transforms,
    All,
}

impl Suite {
    pub const EACH: [Suite; 4] = [Suite::Inversion, Suite::Eigen, Suite::Similarity, Suite::Transforms];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Inversion => "inversion",
            Suite::Eigen => "eigen",
            Suite::Similarity => "similarity",
            Suite::Transforms => "transforms",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        [Suite::Inversion, Suite::Eigen, Suite::Similarity, Suite::Transforms, Suite::All]
            .into_iter()
            .find(|x| x.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct VerifyConfig {
    pub depth: usize,
    pub seed: u64,
    /// Record wall-clock time per check. Off by default so reports are
    /// reproducible byte for byte.
    pub timings: bool,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self { depth: 32, seed: 0, timings: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: String,
    pub depth: usize,
    pub passed: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyReport {
    pub suite: Suite,
    pub depth: usize,
    pub seed: u64,
    pub passed: bool,
    pub checks: Vec<CheckResult>,
}

type CheckFn = fn(&VerifyConfig, &mut ChaCha8Rng) -> Result<Option<String>>;

/// `Ok(None)` passes, `Ok(Some(reason))` fails, `Err` fails with the error.
fn fail_unless(ok: bool, reason: impl FnOnce() -> String) -> Result<Option<String>> {
    Ok((!ok).then(reason))
}

fn random_finsupp(rng: &mut ChaCha8Rng, max_len: usize) -> Seq {
    let len = rng.gen_range(0..=max_len);
    Seq::fin_supp((0..len).map(|_| Scalar::integer(rng.gen_range(-3..=3))).collect())
}

fn checks(suite: Suite) -> Vec<(&'static str, CheckFn)> {
    match suite {
        Suite::Inversion => vec![
            ("PD-involution", check_pd_involution),
            ("P-inverse-DPD", check_p_inverse),
            ("binomial-inversion", check_binomial_inversion),
            ("PTD-involution", check_ptd_involution),
            ("fibonacci-lucas", check_fibonacci_lucas),
            ("second-kind-continuation", check_continuation),
        ],
        Suite::Eigen => vec![
            ("NM-identity", check_nm_identity),
            ("basis-eigen", check_basis_eigen),
            ("basis-matrix-agreement", check_basis_matrix),
            ("first-kind-membership", check_membership),
        ],
        Suite::Similarity => vec![
            ("factor-inverse", check_factor_inverse),
            ("stabilization", check_stabilization),
            ("block-diag", check_block_diag),
        ],
        Suite::Transforms => vec![
            ("table1", check_table1),
            ("transform-orbit", check_orbit),
            ("pipeline-classes", check_pipeline_classes),
            ("power-columns", check_power_columns),
            ("orthogonality", check_orthogonality),
            ("converse", check_converse),
        ],
        Suite::All => Suite::EACH.into_iter().flat_map(checks).collect(),
    }
}

fn suite_of(name: &str) -> Suite {
    Suite::EACH
        .into_iter()
        .find(|s| checks(*s).iter().any(|(n, _)| *n == name))
        .expect("every check belongs to a suite")
}

/// Runs a suite. Each check gets its own random stream derived from the
/// seed and the check's position, so checks are independent of each other.
pub fn run_suite(suite: Suite, config: &VerifyConfig) -> Result<VerifyReport> {
    if config.depth < 2 {
        return Err(Error::InvalidArgument("depth must be at least 2".into()));
    }
    let mut results = Vec::new();
    for (index, (name, check)) in checks(suite).into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
        rng.set_stream(index as u64);
        let start = Instant::now();
        let outcome = check(config, &mut rng);
        let elapsed = start.elapsed().as_millis() as u64;
        let (passed, detail) = match outcome {
            Ok(None) => (true, None),
            Ok(Some(reason)) => (false, Some(reason)),
            Err(e) => (false, Some(e.to_string())),
        };
        results.push(CheckResult {
            suite: suite_of(name),
            name: name.to_string(),
            depth: config.depth,
            passed,
            detail,
            elapsed_ms: config.timings.then_some(elapsed),
        });
    }
    Ok(VerifyReport {
        suite,
        depth: config.depth,
        seed: config.seed,
        passed: results.iter().all(|c| c.passed),
        checks: results,
    })
}

fn check_pd_involution(c: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    let sq = op_power(&pd(), 2)?;
    fail_unless(truncate(&sq, c.depth, c.depth)?.is_identity(), || "(PD)^2 != I".into())
}

fn check_p_inverse(c: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    let d = sign_diagonal();
    let dpd = compose(&compose(&d, &pascal())?, &d)?;
    let prod = compose(&dpd, &pascal())?;
    fail_unless(truncate(&prod, c.depth, c.depth)?.is_identity(), || "DPD * P != I".into())
}

fn check_binomial_inversion(c: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    let op = pd();
    for _ in 0..50 {
        let x = random_finsupp(rng, c.depth);
        let once = Seq::fin_supp(apply_finite(&op, &x, c.depth)?);
        if apply_finite(&op, &once, c.depth)? != x.prefix(c.depth) {
            return Ok(Some(format!("PD PD x != x for x = {x}")));
        }
    }
    Ok(None)
}

fn check_ptd_involution(c: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    for _ in 0..50 {
        let x = random_finsupp(rng, c.depth);
        let once = apply_upper(&UpperOp::Ptd, &x, Summation::Classical)?;
        let twice = apply_upper(&UpperOp::Ptd, &once, Summation::Classical)?;
        if twice.prefix(c.depth) != x.prefix(c.depth) {
            return Ok(Some(format!("PTD PTD x != x for x = {x}")));
        }
    }
    Ok(None)
}

fn negated(v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|x| -x).collect()
}

fn check_fibonacci_lucas(c: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    let (f, l) = (Seq::fibonacci(), Seq::lucas());
    let op = pd();
    if apply_finite(&op, &f, c.depth)? != negated(&f.prefix(c.depth)) {
        return Ok(Some("PD F != -F".into()));
    }
    fail_unless(apply_finite(&op, &l, c.depth)? == l.prefix(c.depth), || "PD L != L".into())
}

fn check_continuation(c: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    let jf = Seq::fibonacci().shift_down();
    let jl = Seq::lucas().shift_down();
    let yf = apply_upper(&UpperOp::Ptd, &jf, Summation::Continued)?;
    let yl = apply_upper(&UpperOp::Ptd, &jl, Summation::Continued)?;
    if yf.prefix(c.depth) != jf.prefix(c.depth) {
        return Ok(Some("PTD J(0)F != J(0)F".into()));
    }
    fail_unless(yl.prefix(c.depth) == negated(&jl.prefix(c.depth)), || "PTD J(0)L != -J(0)L".into())
}

fn check_nm_identity(c: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    let (n, m) = (make_n(), make_m());
    let nm = truncate(&compose(&n, &m)?, c.depth, c.depth)?;
    let mn = truncate(&compose(&m, &n)?, c.depth, c.depth)?;
    fail_unless(nm.is_identity() && mn.is_identity(), || "N M != I".into())
}

fn basis_range(c: &VerifyConfig) -> usize {
    12.min(c.depth / 2)
}

fn check_basis_eigen(c: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    let op = pd();
    for space in EigenSpaceId::ALL {
        for j in 0..=basis_range(c) {
            let v = basis_vector(space, j);
            let image = match space.operator {
                EigenOperator::Ptd => apply_upper(&UpperOp::Ptd, &v, Summation::Classical)?.prefix(c.depth),
                EigenOperator::Pd => apply_finite(&op, &v, c.depth)?,
            };
            let expect: Vec<Scalar> = v.prefix(c.depth).iter().map(|x| space.eigenvalue.value() * x).collect();
            if image != expect {
                return Ok(Some(format!("{space:?} basis vector {j}")));
            }
        }
    }
    Ok(None)
}

fn check_basis_matrix(c: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    for space in EigenSpaceId::ALL {
        let b = space.basis_matrix();
        for j in 0..=basis_range(c) {
            if basis_vector(space, j).prefix(c.depth) != b.column(j, c.depth) {
                return Ok(Some(format!("{space:?} column {j} of {}", b.label())));
            }
        }
    }
    Ok(None)
}

fn check_membership(c: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    let depth = c.depth.min(24);
    let mut samples = vec![Seq::fibonacci(), Seq::lucas(), Seq::AltBernoulli, Seq::KSeq];
    samples.extend((0..8).map(|_| random_finsupp(rng, 6)));
    for x in samples {
        let report = check_invariance(&x, Kind::First, depth, Summation::Continued)?;
        for sign in [Sign::Plus, Sign::Minus] {
            if coords_first_kind(&x, sign, depth)?.residual_ok != report.satisfies(sign) {
                return Ok(Some(format!("coordinates disagree with the PD check for {x}")));
            }
        }
    }
    Ok(None)
}

fn check_factor_inverse(_: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    let hu = compose(&make_factor(FactorKind::H, 1)?, &make_factor(FactorKind::U, 1)?)?;
    fail_unless(truncate(&hu, 8, 8)?.is_identity(), || "H(1) U(1) != I".into())
}

fn check_stabilization(c: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    for m in 1..=(c.depth / 2).min(8) {
        if !stabilization_holds(m)? {
            return Ok(Some(format!("partial products differ at m = {m}")));
        }
    }
    Ok(None)
}

fn check_block_diag(c: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    for m in 1..=(c.depth / 2).max(1) {
        if !verify_block_diag(m)? {
            return Ok(Some(format!("block diagonalization fails at m = {m}")));
        }
    }
    Ok(None)
}

fn check_table1(_: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    let q = |(n, d): (i64, i64)| Scalar::from(Rational::new(n.into(), d.into()));
    let b: Vec<Scalar> = TABLE1_B.iter().copied().map(q).collect();
    let db: Vec<Scalar> = b.iter().enumerate().map(|(n, x)| if n % 2 == 1 { -x } else { x.clone() }).collect();
    let k: Vec<Scalar> = TABLE1_K.iter().copied().map(q).collect();
    let ok = Seq::Bernoulli.prefix(13) == b && Seq::AltBernoulli.prefix(13) == db && Seq::KSeq.prefix(13) == k;
    fail_unless(ok, || "Table 1 rows differ".into())
}

fn check_orbit(c: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    let d = c.depth;
    let (f, l) = (Seq::fibonacci(), Seq::lucas());
    let (jf, jl) = (f.shift_down(), l.shift_down());
    let cases = [
        ("t42c(L) = F", t42c(&l).prefix(d) == f.prefix(d)),
        ("t42d(F) = L", t42d(&f).prefix(d) == l.prefix(d)),
        ("t42a(J(0)F) = J(0)L", t42a(&jf).prefix(d) == jl.prefix(d)),
        ("t42b(J(0)L) = J(0)F", t42b(&jl, Summation::Continued)?.prefix(d) == jf.prefix(d)),
        ("t42c(DB) = K", t42c(&Seq::AltBernoulli).prefix(d) == Seq::KSeq.prefix(d)),
        ("t42d(K) = DB", t42d(&Seq::KSeq).prefix(d) == Seq::AltBernoulli.prefix(d)),
    ];
    Ok(cases.iter().find(|(_, ok)| !ok).map(|(name, _)| format!("{name} fails")))
}

fn check_pipeline_classes(c: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    let depth = c.depth.min(24);
    for n in 1..=3 {
        for variant in [Variant::Plain, Variant::Tilde] {
            for p in [build_phi(n, variant)?, build_psi(n, variant)?] {
                let class = p.declared_class().expect("built pipelines declare a class");
                let x = random_finsupp(rng, 8);
                let y = p.apply(&x, Summation::Continued)?;
                if !check_invariance(&y, class.kind, depth, Summation::Continued)?.satisfies(class.sign) {
                    return Ok(Some(format!("{p} on {x} is not {class}")));
                }
            }
        }
    }
    Ok(None)
}

fn check_power_columns(c: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    let depth = c.depth.min(24);
    for base in PowerBase::ALL {
        let class = base.column_class();
        for n in 1..=3 {
            for j in 0..=6 {
                let col = power_column(base, n, j)?;
                if !check_invariance(&col, class.kind, depth, Summation::Continued)?.satisfies(class.sign) {
                    return Ok(Some(format!("column {j} of ({base})^{n} is not {class}")));
                }
            }
        }
    }
    Ok(None)
}

fn check_orthogonality(_: &VerifyConfig, rng: &mut ChaCha8Rng) -> Result<Option<String>> {
    for _ in 0..20 {
        let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
        let x = basis_vector(EigenSpaceId::new(EigenOperator::Pd, sign), rng.gen_range(0..=6));
        let y = basis_vector(EigenSpaceId::new(EigenOperator::Ptd, sign.flip()), rng.gen_range(0..=6));
        if !orthogonality(&x, &y)?.is_zero() {
            return Ok(Some(format!("x^T D y != 0 for x = {x}, y = {y}")));
        }
    }
    Ok(None)
}

fn check_converse(c: &VerifyConfig, _: &mut ChaCha8Rng) -> Result<Option<String>> {
    let depth = c.depth.min(24);
    for sign in [Sign::Plus, Sign::Minus] {
        for j in 0..=4 {
            let y = basis_vector(EigenSpaceId::new(EigenOperator::Ptd, sign), j);
            for base in PowerBase::ALL {
                if !converse_check(&y, base, depth)?.holds() {
                    return Ok(Some(format!("converse fails for {y} against {base}")));
                }
            }
        }
    }
    Ok(None)
}
