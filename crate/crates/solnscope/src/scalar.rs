//! Exact rational scalars and small parsing/rendering helpers.
//!
//! Every quantity the diagnostics certify is carried as an arbitrary-precision
//! rational; floating point only appears inside the numerical oracles.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

pub type Rat = BigRational;

pub fn rat(n: i64) -> Rat {
    Rat::from_integer(BigInt::from(n))
}

pub fn ratio(num: i64, den: i64) -> Rat {
    assert!(den != 0, "zero denominator");
    Rat::new(BigInt::from(num), BigInt::from(den))
}

pub fn rat_zero() -> Rat {
    Rat::zero()
}

pub fn rat_one() -> Rat {
    Rat::one()
}

/// Parses "p/q" or an integer literal (optionally signed).
pub fn parse_rat(s: &str) -> Result<Rat, String> {
    let s = s.trim();
    if s.is_empty() {
        return Err("empty rational literal".into());
    }
    if let Some((num, den)) = s.split_once('/') {
        let n: BigInt = num
            .trim()
            .parse()
            .map_err(|_| format!("bad numerator in '{s}'"))?;
        let d: BigInt = den
            .trim()
            .parse()
            .map_err(|_| format!("bad denominator in '{s}'"))?;
        if d.is_zero() {
            return Err(format!("zero denominator in '{s}'"));
        }
        Ok(Rat::new(n, d))
    } else {
        let n: BigInt = s.parse().map_err(|_| format!("bad integer '{s}'"))?;
        Ok(Rat::from_integer(n))
    }
}

/// Canonical text form: integers plain, otherwise "p/q" with positive q.
pub fn render_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn render_vec(v: &[Rat]) -> String {
    let parts: Vec<String> = v.iter().map(render_rat).collect();
    format!("({})", parts.join(", "))
}

pub fn rat_to_f64(r: &Rat) -> f64 {
    let n = r.numer();
    let d = r.denom();
    // Good enough for oracle use at desk scale.
    let nf = n.to_string().parse::<f64>().unwrap_or(f64::NAN);
    let df = d.to_string().parse::<f64>().unwrap_or(f64::NAN);
    nf / df
}

/// Nearest rational with denominator at most `max_den` (Stern-Brocot walk).
/// Oracle floats must pass through this before any exact re-verification.
pub fn rationalize(x: f64, max_den: u64) -> Rat {
    if !x.is_finite() {
        panic!("cannot rationalize a non-finite float");
    }
    let neg = x < 0.0;
    let x = x.abs();
    let whole = x.trunc();
    let frac = x - whole;
    // Stern-Brocot on the fractional part.
    let (mut lo_n, mut lo_d, mut hi_n, mut hi_d) = (0u64, 1u64, 1u64, 1u64);
    let (mut best_n, mut best_d, mut best_err) = (0u64, 1u64, frac);
    for _ in 0..128 {
        let mid_n = lo_n + hi_n;
        let mid_d = lo_d + hi_d;
        if mid_d > max_den {
            break;
        }
        let mid = mid_n as f64 / mid_d as f64;
        let err = (mid - frac).abs();
        if err < best_err {
            best_n = mid_n;
            best_d = mid_d;
            best_err = err;
        }
        if mid < frac {
            lo_n = mid_n;
            lo_d = mid_d;
        } else if mid > frac {
            hi_n = mid_n;
            hi_d = mid_d;
        } else {
            break;
        }
    }
    let mut r = Rat::from_integer(BigInt::from(whole as i64))
        + Rat::new(BigInt::from(best_n), BigInt::from(best_d));
    if neg {
        r = -r;
    }
    r
}

pub fn rat_sign(r: &Rat) -> i32 {
    if r.is_zero() {
        0
    } else if r.is_positive() {
        1
    } else {
        -1
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render_round_trip() {
        for s in ["3/4", "-2", "0", "-7/3", "10"] {
            let r = parse_rat(s).unwrap();
            assert_eq!(render_rat(&r), s);
        }
        assert_eq!(render_rat(&parse_rat("2/4").unwrap()), "1/2");
        assert_eq!(render_rat(&parse_rat("-4/-6").unwrap()), "2/3");
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }

    #[test]
    fn rationalize_recovers_small_fractions() {
        assert_eq!(rationalize(0.25, 10_000), ratio(1, 4));
        assert_eq!(rationalize(-1.5, 10_000), ratio(-3, 2));
        assert_eq!(rationalize(0.3333333333333, 10_000), ratio(1, 3));
    }
}
