//! Text literals for scalars, sequences and pipelines.
//!
//! ```text
//! scalar    := rational | [rational] ("+"|"-") [rational] "√" d      (also "sqrt" d)
//! rational  := ["-"] digits ["/" digits]
//! sequence  := fib | lucas | bernoulli | altbernoulli | kseq
//!            | "finsupp:[" scalar ("," scalar)* "]"
//!            | "geom:" "(" scalar "," scalar ")" ("+" "(" scalar "," scalar ")")*
//! pipeline  := step (";" step)*
//! step      := t42a | t42b | t42c | t42d | phi(n) | phitilde(n) | psi(n) | psitilde(n)
//! ```

use num_bigint::BigInt;
use num_traits::Zero;

use crate::arith::{Rational, Scalar};
use crate::error::{Error, Result};
use crate::sequences::Seq;
use crate::transforms::{build_phi, build_psi, Pipeline, Stage, Variant};

fn err(what: &str, input: &str) -> Error {
    Error::Parse(format!("invalid {what} `{input}`"))
}

fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let num: BigInt = num.trim().parse().map_err(|_| err("rational", s))?;
    let den: BigInt = den.trim().parse().map_err(|_| err("rational", s))?;
    if den.is_zero() {
        return Err(Error::Parse(format!("zero denominator in `{s}`")));
    }
    Ok(Rational::new(num, den))
}

/// Parses `p/q`, `p/q+p'/q'√d`, `√5`, `-1/2sqrt5` and similar.
pub fn parse_scalar(input: &str) -> Result<Scalar> {
    let s: String = input.trim().replace("sqrt", "√").chars().filter(|c| !c.is_whitespace()).collect();
    let Some(root) = s.find('√') else {
        return Ok(Scalar::from(parse_rational(&s)?));
    };
    let d: u32 = s[root + '√'.len_utf8()..].parse().map_err(|_| err("scalar", input))?;
    let head = &s[..root];
    // the irrational coefficient starts at the last sign that is not leading
    let split = head.char_indices().filter(|&(i, c)| i > 0 && (c == '+' || c == '-')).map(|(i, _)| i).next_back();
    let (a, b) = match split {
        Some(i) => (parse_rational(&head[..i])?, &head[i..]),
        None => (Rational::zero(), head),
    };
    let b = match b.trim_start_matches('+') {
        "" => Rational::from_integer(1.into()),
        "-" => Rational::from_integer((-1).into()),
        other => parse_rational(other)?,
    };
    Scalar::quad(a, b, d).map_err(|e| Error::Parse(format!("`{input}`: {e}")))
}

fn split_pairs(body: &str, input: &str) -> Result<Vec<(Scalar, Scalar)>> {
    let mut pairs = Vec::new();
    let mut rest = body.trim();
    loop {
        let inner = rest.strip_prefix('(').ok_or_else(|| err("geometric literal", input))?;
        let close = inner.find(')').ok_or_else(|| err("geometric literal", input))?;
        let (c, r) = inner[..close].split_once(',').ok_or_else(|| err("geometric literal", input))?;
        pairs.push((parse_scalar(c)?, parse_scalar(r)?));
        rest = inner[close + 1..].trim();
        if rest.is_empty() {
            return Ok(pairs);
        }
        rest = rest.strip_prefix('+').ok_or_else(|| err("geometric literal", input))?.trim();
    }
}

pub fn parse_seq(input: &str) -> Result<Seq> {
    let s = input.trim();
    match s.to_ascii_lowercase().as_str() {
        "fib" | "fibonacci" => return Ok(Seq::fibonacci()),
        "lucas" => return Ok(Seq::lucas()),
        "bernoulli" => return Ok(Seq::Bernoulli),
        "altbernoulli" => return Ok(Seq::AltBernoulli),
        "kseq" => return Ok(Seq::KSeq),
        _ => {}
    }
    if let Some(body) = s.strip_prefix("finsupp:") {
        let body = body.trim();
        let inner = body
            .strip_prefix('[')
            .and_then(|b| b.strip_suffix(']'))
            .ok_or_else(|| err("finsupp literal", input))?;
        if inner.trim().is_empty() {
            return Ok(Seq::zero());
        }
        let terms = inner.split(',').map(parse_scalar).collect::<Result<Vec<_>>>()?;
        return Ok(Seq::fin_supp(terms));
    }
    if let Some(body) = s.strip_prefix("geom:") {
        return Ok(Seq::exp_comb(split_pairs(body, input)?));
    }
    Err(err("sequence", input))
}

fn parse_step(step: &str) -> Result<Pipeline> {
    let s = step.trim().to_ascii_lowercase();
    let stage = match s.as_str() {
        "t42a" => Some(Stage::T42a),
        "t42b" => Some(Stage::T42b),
        "t42c" => Some(Stage::T42c),
        "t42d" => Some(Stage::T42d),
        "ptdown" => Some(Stage::PtDown),
        "qtdown00" => Some(Stage::QtDown00),
        "qdown" => Some(Stage::QDown),
        "zeropdown" => Some(Stage::ZeroPDown),
        _ => None,
    };
    if let Some(stage) = stage {
        return Ok(Pipeline::single(stage));
    }
    let (name, arg) = s
        .strip_suffix(')')
        .and_then(|t| t.split_once('('))
        .ok_or_else(|| err("pipeline step", step))?;
    let n: usize = arg.trim().parse().map_err(|_| err("pipeline step", step))?;
    let built = match name.trim() {
        "phi" => build_phi(n, Variant::Plain),
        "phitilde" => build_phi(n, Variant::Tilde),
        "psi" => build_psi(n, Variant::Plain),
        "psitilde" => build_psi(n, Variant::Tilde),
        _ => return Err(err("pipeline step", step)),
    };
    built.map_err(|e| Error::Parse(format!("`{step}`: {e}")))
}

/// Steps separated by `;` are applied left to right.
pub fn parse_pipeline(input: &str) -> Result<Pipeline> {
    let mut steps = input.split(';').filter(|s| !s.trim().is_empty());
    let first = steps.next().ok_or_else(|| err("pipeline", input))?;
    steps.try_fold(parse_step(first)?, |acc, s| Ok(acc.then(parse_step(s)?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("1/2").unwrap(), Scalar::ratio(1, 2));
        assert_eq!(parse_scalar("-3").unwrap(), Scalar::integer(-3));
        assert_eq!(parse_scalar(" 4/-8 ").unwrap(), Scalar::ratio(-1, 2));
        let (t1, t2) = Scalar::golden_pair();
        assert_eq!(parse_scalar("1/2+1/2√5").unwrap(), t1);
        assert_eq!(parse_scalar("1/2-1/2sqrt5").unwrap(), t2);
        assert_eq!(parse_scalar("√5").unwrap(), Scalar::sqrt(5).unwrap());
        assert_eq!(parse_scalar("-sqrt5").unwrap(), -Scalar::sqrt(5).unwrap());
        assert_eq!(parse_scalar("2+√5").unwrap(), Scalar::integer(2) + Scalar::sqrt(5).unwrap());
        assert_eq!(parse_scalar("0+0√5").unwrap(), Scalar::zero());
        for bad in ["", "1/0", "x", "1+√4", "1+√"] {
            assert!(parse_scalar(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn display_round_trip() {
        let (t1, t2) = Scalar::golden_pair();
        for x in [t1, t2, Scalar::ratio(-7, 3), -Scalar::sqrt(5).unwrap(), Scalar::sqrt(5).unwrap().inverse()] {
            assert_eq!(parse_scalar(&x.to_string()).unwrap(), x);
        }
    }

    #[test]
    fn sequences() {
        assert_eq!(parse_seq("fib").unwrap().prefix(5), Seq::fibonacci().prefix(5));
        assert_eq!(
            parse_seq("finsupp:[1,0,-2/3]").unwrap().prefix(4),
            vec![Scalar::one(), Scalar::zero(), Scalar::ratio(-2, 3), Scalar::zero()]
        );
        assert_eq!(parse_seq("finsupp:[]").unwrap().prefix(2), vec![Scalar::zero(); 2]);
        let g = parse_seq("geom:(1,1/3)").unwrap();
        assert_eq!(g.prefix(4), vec![Scalar::one(), Scalar::ratio(1, 3), Scalar::ratio(1, 9), Scalar::ratio(1, 27)]);
        let l = parse_seq("geom:(1,1/2+1/2√5)+(1,1/2-1/2√5)").unwrap();
        assert_eq!(l.prefix(10), Seq::lucas().prefix(10));
        for bad in ["fibb", "finsupp:1,2", "geom:(1)", "geom:(1,2)(3,4)"] {
            assert!(parse_seq(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn pipelines() {
        assert_eq!(parse_pipeline("t42c").unwrap().steps, vec![Stage::T42c]);
        assert_eq!(parse_pipeline("t42d;t42c").unwrap().steps, vec![Stage::T42d, Stage::T42c]);
        assert_eq!(parse_pipeline("phi(2)").unwrap(), build_phi(2, Variant::Plain).unwrap());
        assert_eq!(parse_pipeline("psitilde(3); t42c").unwrap().steps.len(), 4);
        for bad in ["", "phi(0)", "phi(x)", "t42e", "chi(2)"] {
            assert!(parse_pipeline(bad).is_err(), "{bad}");
        }
    }
}
