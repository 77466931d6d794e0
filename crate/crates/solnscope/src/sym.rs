//! Exact symbolic scalars: rational linear combinations of 1, e^r (rational
//! r != 0) and log p (prime p), with certified rational interval enclosures.
//!
//! Normal form: exp(0) folds into the rational part, log arguments are split
//! into prime powers (log(p/q) = sum of prime logs), duplicate arguments are
//! combined. In this basis a value is zero exactly when all coefficients are
//! zero, so zero tests are structural and sign tests of nonzero values
//! terminate by refining enclosures. A comparison an enclosure cannot decide
//! at 128-bit precision is an error, never a guess.

use crate::scalar::{rat, render_rat, Rat};
use num_bigint::BigInt;
use num_traits::{One, Signed, ToPrimitive, Zero};
use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

#[derive(Debug, Clone, thiserror::Error, PartialEq, Eq)]
pub enum SymError {
    #[error("sign undecidable at 128-bit enclosure precision")]
    Undecidable,
    #[error("log argument must be positive, got {0}")]
    LogNonPositive(String),
    #[error("argument too large to factor exactly: {0}")]
    FactorLimit(String),
}

/// rational + sum(coeff * e^arg) + sum(coeff * log prime)
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymVal {
    rational: Rat,
    exp_terms: BTreeMap<Rat, Rat>,
    log_terms: BTreeMap<u64, Rat>,
}

impl SymVal {
    pub fn zero() -> Self {
        SymVal {
            rational: Rat::zero(),
            exp_terms: BTreeMap::new(),
            log_terms: BTreeMap::new(),
        }
    }

    pub fn from_rat(r: Rat) -> Self {
        SymVal {
            rational: r,
            exp_terms: BTreeMap::new(),
            log_terms: BTreeMap::new(),
        }
    }

    pub fn from_int(n: i64) -> Self {
        Self::from_rat(rat(n))
    }

    /// e^arg as a symbolic value.
    pub fn exp_of(arg: Rat) -> Self {
        let mut v = Self::zero();
        v.add_exp_term(arg, Rat::one());
        v
    }

    /// log of a positive rational, split into prime logs.
    pub fn log_of(arg: &Rat) -> Result<Self, SymError> {
        if !arg.is_positive() {
            return Err(SymError::LogNonPositive(render_rat(arg)));
        }
        let mut v = Self::zero();
        for (p, e) in factor_positive(arg.numer())? {
            v.add_log_term(p, rat(e));
        }
        for (p, e) in factor_positive(arg.denom())? {
            v.add_log_term(p, rat(-e));
        }
        Ok(v)
    }

    fn add_exp_term(&mut self, arg: Rat, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        if arg.is_zero() {
            self.rational += coeff;
            return;
        }
        let entry = self.exp_terms.entry(arg.clone()).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.exp_terms.remove(&arg);
        }
    }

    fn add_log_term(&mut self, prime: u64, coeff: Rat) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.log_terms.entry(prime).or_insert_with(Rat::zero);
        *entry += coeff;
        if entry.is_zero() {
            self.log_terms.remove(&prime);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_zero() && self.exp_terms.is_empty() && self.log_terms.is_empty()
    }

    pub fn is_rational(&self) -> bool {
        self.exp_terms.is_empty() && self.log_terms.is_empty()
    }

    pub fn as_rational(&self) -> Option<&Rat> {
        if self.is_rational() {
            Some(&self.rational)
        } else {
            None
        }
    }

    pub fn add(&self, other: &SymVal) -> SymVal {
        let mut out = self.clone();
        out.rational += &other.rational;
        for (a, c) in &other.exp_terms {
            out.add_exp_term(a.clone(), c.clone());
        }
        for (p, c) in &other.log_terms {
            out.add_log_term(*p, c.clone());
        }
        out
    }

    pub fn sub(&self, other: &SymVal) -> SymVal {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> SymVal {
        let mut out = self.clone();
        out.rational = -out.rational.clone();
        for c in out.exp_terms.values_mut() {
            *c = -c.clone();
        }
        for c in out.log_terms.values_mut() {
            *c = -c.clone();
        }
        out
    }

    pub fn scale(&self, k: &Rat) -> SymVal {
        if k.is_zero() {
            return SymVal::zero();
        }
        let mut out = SymVal::zero();
        out.rational = &self.rational * k;
        for (a, c) in &self.exp_terms {
            out.exp_terms.insert(a.clone(), c * k);
        }
        for (p, c) in &self.log_terms {
            out.log_terms.insert(*p, c * k);
        }
        out
    }

    /// Exact sign: 0 for the structural zero, otherwise decided by enclosure
    /// refinement (terms are linearly independent over Q in this basis).
    pub fn sign(&self) -> Result<i32, SymError> {
        if self.is_zero() {
            return Ok(0);
        }
        if self.is_rational() {
            return Ok(if self.rational.is_positive() { 1 } else { -1 });
        }
        for prec in [32u32, 64, 96, 128] {
            let (lo, hi) = self.enclosure(prec)?;
            if lo.is_positive() {
                return Ok(1);
            }
            if hi.is_negative() {
                return Ok(-1);
            }
        }
        Err(SymError::Undecidable)
    }

    pub fn cmp_exact(&self, other: &SymVal) -> Result<Ordering, SymError> {
        match self.sub(other).sign()? {
            0 => Ok(Ordering::Equal),
            s if s > 0 => Ok(Ordering::Greater),
            _ => Ok(Ordering::Less),
        }
    }

    /// Certified rational enclosure with width roughly 2^-prec per term.
    pub fn enclosure(&self, prec: u32) -> Result<(Rat, Rat), SymError> {
        let mut lo = self.rational.clone();
        let mut hi = self.rational.clone();
        for (arg, coeff) in &self.exp_terms {
            let (elo, ehi) = exp_enclosure(arg, prec);
            accumulate(&mut lo, &mut hi, coeff, &elo, &ehi);
        }
        for (prime, coeff) in &self.log_terms {
            let (llo, lhi) = log_enclosure_u64(*prime, prec);
            accumulate(&mut lo, &mut hi, coeff, &llo, &lhi);
        }
        Ok((lo, hi))
    }

    pub fn to_f64(&self) -> f64 {
        let (lo, hi) = self.enclosure(64).expect("enclosure");
        (crate::scalar::rat_to_f64(&lo) + crate::scalar::rat_to_f64(&hi)) / 2.0
    }

    pub fn render(&self) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts: Vec<String> = Vec::new();
        if !self.rational.is_zero() {
            parts.push(render_rat(&self.rational));
        }
        for (arg, coeff) in &self.exp_terms {
            let base = if arg.is_one() {
                "e".to_string()
            } else {
                format!("e^({})", render_rat(arg))
            };
            parts.push(render_coeff_term(coeff, &base));
        }
        for (prime, coeff) in &self.log_terms {
            let base = format!("log({prime})");
            parts.push(render_coeff_term(coeff, &base));
        }
        let mut out = String::new();
        for (i, p) in parts.iter().enumerate() {
            if i == 0 {
                out.push_str(p);
            } else if let Some(stripped) = p.strip_prefix('-') {
                out.push_str(" - ");
                out.push_str(stripped);
            } else {
                out.push_str(" + ");
                out.push_str(p);
            }
        }
        out
    }
}

fn render_coeff_term(coeff: &Rat, base: &str) -> String {
    if coeff.is_one() {
        base.to_string()
    } else if *coeff == -Rat::one() {
        format!("-{base}")
    } else {
        format!("{}*{}", render_rat(coeff), base)
    }
}

fn accumulate(lo: &mut Rat, hi: &mut Rat, coeff: &Rat, term_lo: &Rat, term_hi: &Rat) {
    if coeff.is_positive() {
        *lo += coeff * term_lo;
        *hi += coeff * term_hi;
    } else {
        *lo += coeff * term_hi;
        *hi += coeff * term_lo;
    }
}

impl fmt::Display for SymVal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Trial-division factorization of a positive integer; exactness guard at
/// 10^12 (a surviving cofactor below that bound is prime).
fn factor_positive(n: &BigInt) -> Result<Vec<(u64, i64)>, SymError> {
    assert!(n.is_positive());
    let mut m = n
        .to_u128()
        .ok_or_else(|| SymError::FactorLimit(n.to_string()))?;
    if m > 1_000_000_000_000u128 {
        return Err(SymError::FactorLimit(n.to_string()));
    }
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= m {
        if m % d == 0 {
            let mut e = 0i64;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            out.push((d as u64, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > 1 {
        out.push((m as u64, 1));
    }
    Ok(out)
}

/// Enclosure of e^x for rational x: argument reduction x = k + f with
/// f in [0,1), Taylor series with an explicit remainder bound.
fn exp_enclosure(x: &Rat, prec: u32) -> (Rat, Rat) {
    let k = x.floor();
    let f = x - &k;
    let k_int = k.numer().to_i64().expect("exp argument out of range");
    assert!(
        k_int.abs() <= 512,
        "exp argument magnitude beyond supported range"
    );
    let (flo, fhi) = taylor_exp_unit(&f, prec);
    let (elo, ehi) = e_enclosure(prec);
    // e^k with exact interval powering
    let (mut lo, mut hi) = (Rat::one(), Rat::one());
    let steps = k_int.unsigned_abs();
    for _ in 0..steps {
        if k_int >= 0 {
            lo *= &elo;
            hi *= &ehi;
        } else {
            // divide by e: [lo/ehi, hi/elo]
            let nlo = &lo / &ehi;
            let nhi = &hi / &elo;
            lo = nlo;
            hi = nhi;
        }
    }
    (lo * flo, hi * fhi)
}

/// Taylor enclosure of e^f for f in [0,1).
fn taylor_exp_unit(f: &Rat, prec: u32) -> (Rat, Rat) {
    assert!(!f.is_negative() && f < &Rat::one());
    if f.is_zero() {
        return (Rat::one(), Rat::one());
    }
    let terms = (prec as usize / 2).max(20);
    let mut sum = Rat::one();
    let mut term = Rat::one();
    for i in 1..=terms {
        term = term * f / rat(i as i64);
        sum += &term;
    }
    // remainder <= f^{terms+1}/(terms+1)! * e^f <= next_term * 3
    let next = term * f / rat(terms as i64 + 1);
    let rem = next * rat(3);
    (sum.clone(), sum + rem)
}

fn e_enclosure(prec: u32) -> (Rat, Rat) {
    let terms = (prec as usize / 2).max(25);
    let mut sum = Rat::one();
    let mut term = Rat::one();
    for i in 1..=terms {
        term = term / rat(i as i64);
        sum += &term;
    }
    let rem = term * rat(3) / rat(terms as i64 + 1);
    (sum.clone(), sum + rem)
}

/// Enclosure of log p for a positive integer via the atanh series with
/// argument reduction by powers of 2.
fn log_enclosure_u64(p: u64, prec: u32) -> (Rat, Rat) {
    log_enclosure(&rat(p as i64), prec)
}

fn log_enclosure(x: &Rat, prec: u32) -> (Rat, Rat) {
    assert!(x.is_positive());
    // reduce x = m * 2^k with m in [3/4, 3/2)
    let mut m = x.clone();
    let mut k: i64 = 0;
    let three_half = Rat::new(BigInt::from(3), BigInt::from(2));
    let three_quarter = Rat::new(BigInt::from(3), BigInt::from(4));
    while m >= three_half {
        m /= rat(2);
        k += 1;
    }
    while m < three_quarter {
        m *= rat(2);
        k -= 1;
    }
    let (mlo, mhi) = atanh_log(&m, prec);
    if k == 0 {
        return (mlo, mhi);
    }
    let (l2lo, l2hi) = atanh_log(&rat(2), prec);
    let kk = rat(k);
    if k > 0 {
        (mlo + &kk * l2lo, mhi + &kk * l2hi)
    } else {
        (mlo + &kk * l2hi, mhi + &kk * l2lo)
    }
}

/// log(x) = 2*atanh(y), y = (x-1)/(x+1); valid for x in a moderate range.
fn atanh_log(x: &Rat, prec: u32) -> (Rat, Rat) {
    let y = (x - Rat::one()) / (x + Rat::one());
    if y.is_zero() {
        return (Rat::zero(), Rat::zero());
    }
    let y2 = &y * &y;
    let terms = (prec as usize / 2).max(20);
    let mut sum = Rat::zero();
    let mut pow = y.clone();
    for i in 0..terms {
        sum += &pow / rat(2 * i as i64 + 1);
        pow *= &y2;
    }
    let val = sum * rat(2);
    // |remainder| <= 2*|y|^{2N+1} / ((2N+1)(1-y^2))
    let bound = rat(2) * pow.abs() / (rat(2 * terms as i64 + 1) * (Rat::one() - y2));
    (val.clone() - &bound, val + bound)
}

/// Extended value: exact finite scalar or +/- infinity.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ExtVal {
    MinusInf,
    Finite(SymVal),
    PlusInf,
}

impl ExtVal {
    pub fn from_rat(r: Rat) -> Self {
        ExtVal::Finite(SymVal::from_rat(r))
    }

    pub fn zero() -> Self {
        ExtVal::Finite(SymVal::zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtVal::Finite(_))
    }

    pub fn add(&self, other: &ExtVal) -> ExtVal {
        use ExtVal::*;
        match (self, other) {
            (PlusInf, MinusInf) | (MinusInf, PlusInf) => {
                panic!("indeterminate sum of opposite infinities")
            }
            (PlusInf, _) | (_, PlusInf) => PlusInf,
            (MinusInf, _) | (_, MinusInf) => MinusInf,
            (Finite(a), Finite(b)) => Finite(a.add(b)),
        }
    }

    pub fn cmp_exact(&self, other: &ExtVal) -> Result<Ordering, SymError> {
        use ExtVal::*;
        match (self, other) {
            (MinusInf, MinusInf) | (PlusInf, PlusInf) => Ok(Ordering::Equal),
            (MinusInf, _) | (_, PlusInf) => Ok(Ordering::Less),
            (PlusInf, _) | (_, MinusInf) => Ok(Ordering::Greater),
            (Finite(a), Finite(b)) => a.cmp_exact(b),
        }
    }

    pub fn render(&self) -> String {
        match self {
            ExtVal::MinusInf => "-inf".into(),
            ExtVal::PlusInf => "+inf".into(),
            ExtVal::Finite(v) => v.render(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn log_normalization_cancels() {
        // 2*log(2) - log(4) = 0 exactly
        let a = SymVal::log_of(&rat(2)).unwrap().scale(&rat(2));
        let b = SymVal::log_of(&rat(4)).unwrap();
        assert!(a.sub(&b).is_zero());
        // log(1) = 0, log(2/3) = log 2 - log 3
        assert!(SymVal::log_of(&rat(1)).unwrap().is_zero());
        let l23 = SymVal::log_of(&ratio(2, 3)).unwrap();
        let expect = SymVal::log_of(&rat(2))
            .unwrap()
            .sub(&SymVal::log_of(&rat(3)).unwrap());
        assert!(l23.sub(&expect).is_zero());
    }

    #[test]
    fn exp_zero_is_one() {
        let v = SymVal::exp_of(rat(0));
        assert_eq!(v.as_rational(), Some(&rat(1)));
    }

    #[test]
    fn signs_of_classic_constants() {
        // e > 2.718 and e < 2.719
        let e = SymVal::exp_of(rat(1));
        assert_eq!(e.sub(&SymVal::from_rat(ratio(2718, 1000))).sign(), Ok(1));
        assert_eq!(e.sub(&SymVal::from_rat(ratio(2719, 1000))).sign(), Ok(-1));
        // log 2 in (0.693, 0.6932)
        let l2 = SymVal::log_of(&rat(2)).unwrap();
        assert_eq!(l2.sub(&SymVal::from_rat(ratio(693, 1000))).sign(), Ok(1));
        assert_eq!(l2.sub(&SymVal::from_rat(ratio(6932, 10000))).sign(), Ok(-1));
        // e^{-1} in (0.3678, 0.368)
        let einv = SymVal::exp_of(rat(-1));
        assert_eq!(
            einv.sub(&SymVal::from_rat(ratio(3678, 10000))).sign(),
            Ok(1)
        );
        assert_eq!(einv.sub(&SymVal::from_rat(ratio(368, 1000))).sign(), Ok(-1));
    }

    #[test]
    fn mixed_combination_sign() {
        // e - 2*log(2) - 1.33 > 0 (e = 2.71828, 2 log 2 = 1.38629)
        let v = SymVal::exp_of(rat(1))
            .sub(&SymVal::log_of(&rat(2)).unwrap().scale(&rat(2)))
            .sub(&SymVal::from_rat(ratio(133, 100)));
        assert_eq!(v.sign(), Ok(1));
        let w = SymVal::exp_of(rat(1))
            .sub(&SymVal::log_of(&rat(2)).unwrap().scale(&rat(2)))
            .sub(&SymVal::from_rat(ratio(134, 100)));
        assert_eq!(w.sign(), Ok(-1));
    }

    #[test]
    fn ext_val_ordering() {
        let a = ExtVal::from_rat(rat(3));
        assert_eq!(a.cmp_exact(&ExtVal::PlusInf), Ok(Ordering::Less));
        assert_eq!(ExtVal::MinusInf.cmp_exact(&a), Ok(Ordering::Less));
        assert_eq!(a.cmp_exact(&ExtVal::from_rat(rat(3))), Ok(Ordering::Equal));
    }

    #[test]
    fn rendering() {
        let v = SymVal::from_rat(rat(1))
            .add(&SymVal::log_of(&rat(2)).unwrap())
            .sub(&SymVal::exp_of(ratio(1, 2)).scale(&rat(2)));
        assert_eq!(v.render(), "1 - 2*e^(1/2) + log(2)");
    }
}
