//! Acceptance criteria, one PASS/FAIL line each.
//!
//! Every comparison is exact. Expected values come from oracles written here
//! (integer recurrences, additive Pascal tables, the Akiyama-Tanigawa
//! Bernoulli algorithm, literal published tables) rather than from the
//! library code under test.

#![allow(clippy::needless_range_loop)]

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use pascal_invariants::eigen::{
    basis_vector, lower_block, make_factor, make_m, make_n, upper_block, verify_block_diag, EigenOperator,
    EigenSpaceId, FactorKind,
};
use pascal_invariants::oeis::{OeisClient, Source};
use pascal_invariants::operators::{compose, pascal, pd, sign_diagonal, truncate};
use pascal_invariants::sequences::{apply_finite, apply_upper, check_invariance, UpperOp};
use pascal_invariants::transforms::{
    build_phi, build_psi, converse_check, orthogonality, power_column, t42a, t42b, t42c, t42d, PowerBase, Variant,
};
use pascal_invariants::{DenseMat, Error, Kind, Scalar, Seq, Sign, Summation};

type Outcome = Result<(), String>;
type Check = fn() -> Outcome;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}

fn ints(v: &[i64]) -> Vec<Scalar> {
    v.iter().map(|&x| Scalar::integer(x)).collect()
}

fn neg(v: &[Scalar]) -> Vec<Scalar> {
    v.iter().map(|x| -x.clone()).collect()
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib(e: Error) -> String {
    format!("library error: {e}")
}

/// `F_0..F_{n-1}` and `L_0..L_{n-1}` by the integer recurrence.
fn fib_lucas(n: usize) -> (Vec<i64>, Vec<i64>) {
    let (mut f, mut l) = (vec![0i64, 1], vec![2i64, 1]);
    while f.len() < n {
        let k = f.len();
        f.push(f[k - 1] + f[k - 2]);
        l.push(l[k - 1] + l[k - 2]);
    }
    f.truncate(n);
    l.truncate(n);
    (f, l)
}

/// Pascal triangle by repeated addition.
fn pascal_table(n: usize) -> Vec<Vec<BigInt>> {
    let mut t = vec![vec![BigInt::zero(); n]; n];
    for i in 0..n {
        t[i][0] = BigInt::one();
        for j in 1..=i {
            t[i][j] = &t[i - 1][j - 1] + &t[i - 1][j];
        }
    }
    t
}

fn c(t: &[Vec<BigInt>], i: usize, j: usize) -> Scalar {
    if j <= i {
        Scalar::from(BigRational::from_integer(t[i][j].clone()))
    } else {
        Scalar::zero()
    }
}

/// Bernoulli numbers with `B_1 = -1/2`, by the Akiyama-Tanigawa algorithm.
fn bernoulli_oracle(n: usize) -> Vec<BigRational> {
    let mut out = Vec::with_capacity(n);
    let mut a: Vec<BigRational> = Vec::new();
    for m in 0..n {
        a.push(q(1, m as i64 + 1));
        for j in (1..=m).rev() {
            a[j - 1] = BigRational::from_integer(BigInt::from(j)) * (&a[j - 1] - &a[j]);
        }
        // the algorithm yields B_1 = +1/2
        out.push(if m == 1 { -a[0].clone() } else { a[0].clone() });
    }
    out
}

fn alt_bernoulli_oracle(n: usize) -> Vec<BigRational> {
    bernoulli_oracle(n).into_iter().enumerate().map(|(k, b)| if k % 2 == 1 { -b } else { b }).collect()
}

/// `K_0 = 0`, `K_n = sum_{k<n} (1/2)^{n-k} (-1)^k B_k`, summed directly.
fn k_oracle(n: usize) -> Vec<BigRational> {
    let alt = alt_bernoulli_oracle(n);
    (0..n)
        .map(|m| {
            (0..m).fold(BigRational::zero(), |acc, k| {
                acc + &alt[k] / BigRational::from_integer(BigInt::from(2).pow((m - k) as u32))
            })
        })
        .collect()
}

fn scalars(v: Vec<BigRational>) -> Vec<Scalar> {
    v.into_iter().map(Scalar::from).collect()
}

fn rational(x: &Scalar) -> Result<BigRational, String> {
    x.as_rational().cloned().ok_or_else(|| format!("{x} is not rational"))
}

fn criterion_1() -> Outcome {
    let b = [q(1, 1), q(-1, 2), q(1, 6), q(0, 1), q(-1, 30), q(0, 1), q(1, 42), q(0, 1), q(-1, 30), q(0, 1), q(5, 66), q(0, 1), q(-691, 2730)];
    let db = [q(1, 1), q(1, 2), q(1, 6), q(0, 1), q(-1, 30), q(0, 1), q(1, 42), q(0, 1), q(-1, 30), q(0, 1), q(5, 66), q(0, 1), q(-691, 2730)];
    let k = [q(0, 1), q(1, 2), q(1, 2), q(1, 3), q(1, 6), q(1, 15), q(1, 30), q(1, 35), q(1, 70), q(-1, 105), q(-1, 210), q(41, 1155), q(41, 2310)];
    ensure(bernoulli_oracle(13) == b && alt_bernoulli_oracle(13) == db && k_oracle(13) == k, || {
        "the oracles disagree with the published table".into()
    })?;

    let mut out = Vec::new();
    let code = pascal_invariants::cli::run(["pascal-inv", "table1", "--format", "csv"], &mut out, &mut Vec::new());
    ensure(code == 0, || format!("table1 exited with {code}"))?;
    let text = String::from_utf8(out).map_err(|e| e.to_string())?;
    let rows: Vec<Vec<&str>> = text.lines().map(|l| l.split(',').collect()).collect();
    ensure(rows.len() == 4 && rows[0][1..] == ["0", "1", "2", "3", "4", "5", "6", "7", "8", "9", "10", "11", "12"], || {
        format!("unexpected table layout:\n{text}")
    })?;
    for (row, (label, want)) in rows[1..].iter().zip([("B", &b), ("DB", &db), ("K", &k)]) {
        ensure(row[0] == label && row.len() == 14, || format!("row {label} missing"))?;
        for (n, cell) in row[1..].iter().enumerate() {
            let got: BigRational = cell.parse().map_err(|_| format!("cell `{cell}`"))?;
            ensure(got == want[n], || format!("{label}_{n} = {got}, expected {}", want[n]))?;
        }
    }
    ensure(rows[3][13] == "41/2310" && rows[1][13] == "-691/2730", || "K_12 or B_12 differs".into())
}

fn criterion_2() -> Outcome {
    const N: usize = 64;
    let t = pascal_table(N);
    let p = DenseMat::from_fn(N, N, |i, j| c(&t, i, j));
    let d = DenseMat::from_fn(N, N, |i, j| Scalar::integer(if i != j { 0 } else if i % 2 == 0 { 1 } else { -1 }));
    ensure(truncate(&pascal(), N, N).map_err(lib)? == p, || "truncated P differs from the Pascal table".into())?;
    let pd_lib = truncate(&pd(), N, N).map_err(lib)?;
    ensure(pd_lib == p.mul(&d).map_err(lib)?, || "PD differs from P times D".into())?;
    ensure(pd_lib.mul(&pd_lib).map_err(lib)?.is_identity(), || "(PD)^2 != I".into())?;
    let dpd = compose(&compose(&sign_diagonal(), &pascal()).map_err(lib)?, &sign_diagonal()).map_err(lib)?;
    let dpdp = truncate(&compose(&dpd, &pascal()).map_err(lib)?, N, N).map_err(lib)?;
    ensure(dpdp.is_identity(), || "DPD P != I".into())?;
    ensure(d.mul(&p).map_err(lib)?.mul(&d).map_err(lib)?.mul(&p).map_err(lib)?.is_identity(), || {
        "oracle DPD P != I".into()
    })?;

    let mut rng = ChaCha8Rng::seed_from_u64(2);
    for trial in 0..50 {
        let len = rng.gen_range(1..=16);
        let x: Vec<Scalar> = (0..len).map(|_| Scalar::ratio(rng.gen_range(-9..=9), rng.gen_range(1..=6))).collect();
        let seq = Seq::fin_supp(x.clone());
        let once = apply_upper(&UpperOp::Ptd, &seq, Summation::Classical).map_err(lib)?;
        // (P^T D x)_n = sum_{k >= n} C(k, n) (-1)^k x_k
        let expect: Vec<Scalar> = (0..len)
            .map(|n| {
                (n..len)
                    .map(|k| {
                        let s = c(&t, k, n) * &x[k];
                        if k % 2 == 0 {
                            s
                        } else {
                            -s
                        }
                    })
                    .sum()
            })
            .collect();
        ensure(once.prefix(len) == expect, || format!("P^T D x wrong for trial {trial}"))?;
        let twice = apply_upper(&UpperOp::Ptd, &once, Summation::Classical).map_err(lib)?;
        ensure(twice.prefix(len + 4) == seq.prefix(len + 4), || format!("(P^T D)^2 x != x for trial {trial}"))?;
    }
    Ok(())
}

fn criterion_3() -> Outcome {
    let (f, l) = fib_lucas(64);
    let (f, l) = (ints(&f), ints(&l));
    ensure(Seq::fibonacci().prefix(64) == f && Seq::lucas().prefix(64) == l, || "Binet forms disagree with the recurrence".into())?;
    let op = pd();
    let pf = apply_finite(&op, &Seq::fibonacci(), 64).map_err(lib)?;
    let pl = apply_finite(&op, &Seq::lucas(), 64).map_err(lib)?;
    ensure(pf.iter().chain(&pl).all(Scalar::is_rational), || "an output term is not rational".into())?;
    ensure(pf == neg(&f), || "PD F != -F".into())?;
    ensure(pl == l, || "PD L != L".into())
}

fn criterion_4() -> Outcome {
    let n_display = DenseMat::from_rows(&[
        vec![1, 0, 0, 0, 0, 0, 0, 0],
        vec![0, 1, -1, 1, -1, 1, -1, 1],
        vec![0, 0, 1, -1, 1, -1, 1, -1],
        vec![0, 0, 0, 1, -2, 3, -4, 5],
        vec![0, 0, 0, 0, 1, -2, 3, -4],
        vec![0, 0, 0, 0, 0, 1, -3, 6],
        vec![0, 0, 0, 0, 0, 0, 1, -3],
        vec![0, 0, 0, 0, 0, 0, 0, 1],
    ]);
    let m_display = DenseMat::from_rows(&[
        vec![1, 0, 0, 0, 0, 0, 0, 0],
        vec![0, 1, 1, 0, 0, 0, 0, 0],
        vec![0, 0, 1, 1, 1, 0, 0, 0],
        vec![0, 0, 0, 1, 2, 1, 1, 0],
        vec![0, 0, 0, 0, 1, 2, 3, 1],
        vec![0, 0, 0, 0, 0, 1, 3, 3],
        vec![0, 0, 0, 0, 0, 0, 1, 3],
        vec![0, 0, 0, 0, 0, 0, 0, 1],
    ]);
    let (n, m) = (make_n(), make_m());
    ensure(truncate(&n, 8, 8).map_err(lib)? == n_display, || "N differs from the displayed block".into())?;
    ensure(truncate(&m, 8, 8).map_err(lib)? == m_display, || "M differs from the displayed block".into())?;
    ensure(truncate(&compose(&n, &m).map_err(lib)?, 64, 64).map_err(lib)?.is_identity(), || "NM != I".into())?;
    for size in 1..=8usize {
        let (mut h, mut u) = (make_factor(FactorKind::H, 1).map_err(lib)?, make_factor(FactorKind::U, 1).map_err(lib)?);
        for k in 2..=size {
            h = compose(&make_factor(FactorKind::H, k).map_err(lib)?, &h).map_err(lib)?;
            u = compose(&u, &make_factor(FactorKind::U, k).map_err(lib)?).map_err(lib)?;
        }
        let s = 2 * size;
        ensure(truncate(&h, s, s).map_err(lib)? == truncate(&n, s, s).map_err(lib)?, || {
            format!("H({size})...H(1) differs from N on the leading {s} indices")
        })?;
        ensure(truncate(&u, s, s).map_err(lib)? == truncate(&m, s, s).map_err(lib)?, || {
            format!("U(1)...U({size}) differs from M on the leading {s} indices")
        })?;
    }
    Ok(())
}

fn criterion_5() -> Outcome {
    ensure(upper_block() == DenseMat::from_rows(&[vec![1, -1], vec![0, -1]]), || "upper block".into())?;
    ensure(lower_block() == DenseMat::from_rows(&[vec![1, 0], vec![1, -1]]), || "lower block".into())?;
    for m in 1..=8 {
        ensure(verify_block_diag(m).map_err(lib)?, || format!("block diagonalization fails for m = {m}"))?;
    }
    Ok(())
}

fn criterion_6() -> Outcome {
    const DEPTH: usize = 32;
    let t = pascal_table(DEPTH + 1);
    let op = pd();
    for space in EigenSpaceId::ALL {
        let matrix = space.basis_matrix();
        for j in 0..=12 {
            let v = basis_vector(space, j);
            let x = v.prefix(DEPTH);
            let image = match space.operator {
                EigenOperator::Pd => apply_finite(&op, &v, DEPTH).map_err(lib)?,
                EigenOperator::Ptd => apply_upper(&UpperOp::Ptd, &v, Summation::Classical).map_err(lib)?.prefix(DEPTH),
            };
            let want = match space.eigenvalue {
                Sign::Plus => x.clone(),
                Sign::Minus => neg(&x),
            };
            ensure(image == want, || format!("{space:?}: basis vector {j} is not an eigenvector"))?;
            ensure(x == matrix.column(j, DEPTH), || format!("{space:?}: basis vector {j} differs from column {j}"))?;
            // two of the matrices have a direct binomial description
            let oracle = |i: usize| match (space.operator, space.eigenvalue) {
                (EigenOperator::Ptd, Sign::Plus) if i >= j => Some(c(&t, j, i - j)),
                (EigenOperator::Ptd, Sign::Plus) => Some(Scalar::zero()),
                (EigenOperator::Pd, Sign::Minus) if i > j => Some(c(&t, i - 1 - j, j)),
                (EigenOperator::Pd, Sign::Minus) => Some(Scalar::zero()),
                _ => None,
            };
            for (i, xi) in x.iter().enumerate() {
                if let Some(o) = oracle(i) {
                    ensure(*xi == o, || format!("{space:?}: entry ({i}, {j})"))?;
                }
            }
        }
    }
    Ok(())
}

/// Rigorous comparison of the closed form with a 200-term partial sum: the
/// difference must not exceed an exact bound on the omitted tail.
fn continuation_vs_partial_sum(r: BigRational) -> Outcome {
    const TERMS: usize = 200;
    let y = apply_upper(&UpperOp::Ptd, &Seq::geometric(Scalar::one(), Scalar::from(r.clone())), Summation::Continued)
        .map_err(lib)?;
    let t = pascal_table(TERMS + 12);
    let a = r.abs();
    for n in 0..=8usize {
        let mut partial = BigRational::zero();
        let mut power = BigRational::one();
        for _ in 0..n {
            power *= -&r;
        }
        for k in n..n + TERMS {
            partial += BigRational::from_integer(t[k][n].clone()) * &power;
            power *= -&r;
        }
        // terms C(k, n) |r|^k shrink by at most rho = (K+1)/(K+1-n) |r| beyond K
        let big_k = n + TERMS;
        let first_omitted = BigRational::from_integer(t[big_k][n].clone()) * a.pow(big_k as i32);
        let rho = q(big_k as i64 + 1, (big_k - n) as i64 + 1) * &a;
        let bound = first_omitted / (BigRational::one() - rho);
        let closed = rational(&y.term(n))?;
        ensure((closed.clone() - &partial).abs() <= bound, || format!("r = {r}, n = {n}: {closed} vs partial sum"))?;
        ensure(bound < q(1, 1) / BigRational::from_integer(BigInt::from(10).pow(60)), || "tail bound too weak".into())?;
    }
    Ok(())
}

fn criterion_7() -> Outcome {
    const DEPTH: usize = 24;
    let (f, l) = fib_lucas(DEPTH + 1);
    let jf = ints(&f[1..]);
    let jl = ints(&l[1..]);
    ensure(Seq::fibonacci().shift_down().prefix(DEPTH) == jf, || "J(0)F".into())?;
    let yf = apply_upper(&UpperOp::Ptd, &Seq::fibonacci().shift_down(), Summation::Continued).map_err(lib)?;
    let yl = apply_upper(&UpperOp::Ptd, &Seq::lucas().shift_down(), Summation::Continued).map_err(lib)?;
    ensure(yf.prefix(DEPTH) == jf, || "P^T D J(0)F != J(0)F".into())?;
    ensure(yl.prefix(DEPTH) == neg(&jl), || "P^T D J(0)L != -J(0)L".into())?;
    continuation_vs_partial_sum(q(1, 3))?;
    continuation_vs_partial_sum(q(-1, 3))
}

fn criterion_8() -> Outcome {
    const DEPTH: usize = 32;
    let (f, l) = fib_lucas(DEPTH + 1);
    let (fs, ls) = (ints(&f[..DEPTH]), ints(&l[..DEPTH]));
    let (jf, jl) = (ints(&f[1..]), ints(&l[1..]));
    let alt = scalars(alt_bernoulli_oracle(DEPTH));
    let k = scalars(k_oracle(DEPTH));
    let (fib, luc) = (Seq::fibonacci(), Seq::lucas());
    ensure(t42c(&luc).prefix(DEPTH) == fs, || "t42c(L) != F".into())?;
    ensure(t42d(&fib).prefix(DEPTH) == ls, || "t42d(F) != L".into())?;
    ensure(t42a(&fib.shift_down()).prefix(DEPTH) == jl, || "t42a(J(0)F) != J(0)L".into())?;
    let b = t42b(&luc.shift_down(), Summation::Continued).map_err(lib)?;
    ensure(b.prefix(DEPTH) == jf, || "t42b(J(0)L) != J(0)F".into())?;
    ensure(t42c(&Seq::AltBernoulli).prefix(DEPTH) == k, || "t42c(AltBernoulli) != K".into())?;
    ensure(t42d(&Seq::KSeq).prefix(DEPTH) == alt, || "t42d(K) != AltBernoulli".into())
}

fn support(v: &[Scalar]) -> Vec<usize> {
    v.iter().enumerate().filter(|(_, x)| !x.is_zero()).map(|(i, _)| i).collect()
}

fn criterion_9() -> Outcome {
    const DEPTH: usize = 32;
    let e7 = Seq::unit(7);
    let mut problems = Vec::new();

    let phi = build_phi(2, Variant::Plain).map_err(lib)?;
    let y = phi.apply(&e7, Summation::Continued).map_err(lib)?.prefix(DEPTH);
    let supp = support(&y);
    let want: Vec<usize> = (6..=15).collect();
    if y[10] != Scalar::integer(56) || supp != want {
        problems.push(format!(
            "phi(2) e7: y10 = {}, support {}..{} (expected y10 = 56, support 6..15); terms {}",
            y[10],
            supp.first().copied().unwrap_or(0),
            supp.last().copied().unwrap_or(0),
            y[..16].iter().map(ToString::to_string).collect::<Vec<_>>().join(",")
        ));
    }

    let psi = build_psi(2, Variant::Tilde).map_err(lib)?;
    let z = psi.apply(&e7, Summation::Continued).map_err(lib)?.prefix(DEPTH);
    if z[14] != Scalar::integer(2) || z[..14].iter().any(|x| !x.is_zero()) {
        problems.push(format!("psitilde(2) e7: y14 = {}, leading terms not all zero", z[14]));
    }
    ensure(problems.is_empty(), || problems.join("; "))
}

fn criterion_10() -> Outcome {
    const DEPTH: usize = 24;
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    for pair in 0..20 {
        let sign = if rng.gen_bool(0.5) { Sign::Plus } else { Sign::Minus };
        let (i, j) = (rng.gen_range(0..=8), rng.gen_range(0..=8));
        let x = basis_vector(EigenSpaceId::new(EigenOperator::Pd, sign), i);
        let y = basis_vector(EigenSpaceId::new(EigenOperator::Ptd, sign.flip()), j);
        let v = orthogonality(&x, &y).map_err(lib)?;
        ensure(v.is_zero(), || format!("pair {pair}: x^T D y = {v} for PD basis {i}, P^T D basis {j}"))?;
    }
    for sign in [Sign::Plus, Sign::Minus] {
        for j in 0..=6 {
            let y = basis_vector(EigenSpaceId::new(EigenOperator::Ptd, sign), j);
            for base in PowerBase::ALL {
                let report = converse_check(&y, base, DEPTH).map_err(lib)?;
                ensure(report.holds(), || format!("converse fails for P^T D {sign:?} basis {j} against {base}"))?;
            }
        }
    }
    Ok(())
}

fn criterion_11() -> Outcome {
    const DEPTH: usize = 24;
    for base in PowerBase::ALL {
        let (kind, sign) = match base {
            PowerBase::PPlusD => (Kind::First, Sign::Plus),
            PowerBase::PMinusD => (Kind::First, Sign::Minus),
            PowerBase::PtPlusD => (Kind::Second, Sign::Plus),
            PowerBase::PtMinusD => (Kind::Second, Sign::Minus),
        };
        for n in 1..=3 {
            for j in 0..=6 {
                let col = power_column(base, n, j).map_err(lib)?;
                let report = check_invariance(&col, kind, DEPTH, Summation::Continued).map_err(lib)?;
                ensure(report.satisfies(sign), || {
                    format!("column {j} of ({base})^{n}: verdict {:?}, expected {kind:?} {sign:?}", report.verdict)
                })?;
            }
        }
    }
    Ok(())
}

/// With the client offline, lookups come from fixtures or fail, and a live
/// query without the network feature is refused rather than attempted.
fn criterion_12(earlier: &[(usize, Outcome)], cache: &std::path::Path) -> Outcome {
    let client = OeisClient::new(cache);
    let r = client.lookup(&Seq::lucas(), 10, true).map_err(lib)?;
    ensure(r.source == Source::Fixture, || "Lucas lookup did not use the fixture".into())?;
    match client.lookup(&Seq::unit(3), 10, false) {
        Err(Error::Network(_)) => {}
        other => return Err(format!("expected the network path to be disabled, got {other:?}")),
    }
    let failed: Vec<String> = earlier.iter().filter(|(_, o)| o.is_err()).map(|(i, _)| i.to_string()).collect();
    ensure(failed.is_empty(), || {
        let (which, verb) = if failed.len() == 1 { ("criterion", "fails") } else { ("criteria", "fail") };
        format!("no criterion needed the network, but {which} {} {verb} offline as well", failed.join(", "))
    })
}

fn main() -> ExitCode {
    let cache = tempfile::tempdir().expect("temporary cache directory");
    std::env::set_var(pascal_invariants::oeis::CACHE_ENV, cache.path());

    let start = Instant::now();
    let criteria: [(&str, Check); 11] = [
        ("Table 1 reproduction", criterion_1),
        ("involution identities", criterion_2),
        ("Fibonacci/Lucas eigen-identities", criterion_3),
        ("N/M correctness", criterion_4),
        ("block diagonalization", criterion_5),
        ("eigenbasis suite", criterion_6),
        ("second-kind continuation consistency", criterion_7),
        ("transform orbit", criterion_8),
        ("pipeline examples", criterion_9),
        ("orthogonality/converse", criterion_10),
        ("power columns", criterion_11),
    ];
    let mut outcomes = Vec::new();
    let report = |index: usize, name: &str, outcome: &Outcome, t: Instant| {
        let ms = t.elapsed().as_millis();
        match outcome {
            Ok(()) => println!("PASS  criterion {index:>2}: {name} ({ms} ms)"),
            Err(why) => println!("FAIL  criterion {index:>2}: {name} ({ms} ms): {why}"),
        }
    };
    for (i, (name, check)) in criteria.iter().enumerate() {
        let t = Instant::now();
        let outcome = check();
        report(i + 1, name, &outcome, t);
        outcomes.push((i + 1, outcome));
    }
    let t = Instant::now();
    let hermetic = criterion_12(&outcomes, &cache.path().join("oeis"));
    report(12, "hermetic build", &hermetic, t);
    outcomes.push((12, hermetic));

    let failed = outcomes.iter().filter(|(_, o)| o.is_err()).count();
    println!("{} criteria, {failed} failed, {:.1} s", outcomes.len(), start.elapsed().as_secs_f64());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
