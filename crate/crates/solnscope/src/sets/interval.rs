//! Closed/open/unbounded intervals over exact scalars, plus normalized
//! finite unions. Endpoints carry symbolic values where 1-D range
//! computations produce them; set-algebra callers stay rational.

use crate::scalar::Rat;
use crate::sym::{SymError, SymVal};
use std::cmp::Ordering;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Bnd {
    NegInf,
    PlusInf,
    Open(SymVal),
    Closed(SymVal),
}

impl Bnd {
    pub fn closed_rat(r: Rat) -> Bnd {
        Bnd::Closed(SymVal::from_rat(r))
    }

    pub fn open_rat(r: Rat) -> Bnd {
        Bnd::Open(SymVal::from_rat(r))
    }

    pub fn value(&self) -> Option<&SymVal> {
        match self {
            Bnd::Open(v) | Bnd::Closed(v) => Some(v),
            _ => None,
        }
    }

    pub fn is_closed_finite(&self) -> bool {
        matches!(self, Bnd::Closed(_))
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Interval {
    pub lo: Bnd,
    pub hi: Bnd,
}

impl Interval {
    pub fn whole() -> Interval {
        Interval {
            lo: Bnd::NegInf,
            hi: Bnd::PlusInf,
        }
    }

    pub fn point(v: SymVal) -> Interval {
        Interval {
            lo: Bnd::Closed(v.clone()),
            hi: Bnd::Closed(v),
        }
    }

    pub fn point_rat(r: Rat) -> Interval {
        Interval::point(SymVal::from_rat(r))
    }

    pub fn new(lo: Bnd, hi: Bnd) -> Interval {
        Interval { lo, hi }
    }

    /// Empty test; lo > hi, or lo == hi with an open end.
    pub fn is_empty(&self) -> Result<bool, SymError> {
        let (lv, lo_open) = match &self.lo {
            Bnd::NegInf => return Ok(false),
            Bnd::PlusInf => return Ok(true),
            Bnd::Open(v) => (v, true),
            Bnd::Closed(v) => (v, false),
        };
        let (hv, hi_open) = match &self.hi {
            Bnd::PlusInf => return Ok(false),
            Bnd::NegInf => return Ok(true),
            Bnd::Open(v) => (v, true),
            Bnd::Closed(v) => (v, false),
        };
        match lv.cmp_exact(hv)? {
            Ordering::Greater => Ok(true),
            Ordering::Equal => Ok(lo_open || hi_open),
            Ordering::Less => Ok(false),
        }
    }

    pub fn is_point(&self) -> Result<Option<SymVal>, SymError> {
        if let (Bnd::Closed(a), Bnd::Closed(b)) = (&self.lo, &self.hi) {
            if a.cmp_exact(b)? == Ordering::Equal {
                return Ok(Some(a.clone()));
            }
        }
        Ok(None)
    }

    pub fn contains(&self, v: &SymVal) -> Result<bool, SymError> {
        let lo_ok = match &self.lo {
            Bnd::NegInf => true,
            Bnd::PlusInf => false,
            Bnd::Open(l) => l.cmp_exact(v)? == Ordering::Less,
            Bnd::Closed(l) => l.cmp_exact(v)? != Ordering::Greater,
        };
        if !lo_ok {
            return Ok(false);
        }
        Ok(match &self.hi {
            Bnd::PlusInf => true,
            Bnd::NegInf => false,
            Bnd::Open(h) => v.cmp_exact(h)? == Ordering::Less,
            Bnd::Closed(h) => v.cmp_exact(h)? != Ordering::Greater,
        })
    }

    pub fn intersect(&self, other: &Interval) -> Result<Interval, SymError> {
        let lo = max_lower(&self.lo, &other.lo)?;
        let hi = min_upper(&self.hi, &other.hi)?;
        Ok(Interval { lo, hi })
    }

    pub fn translate(&self, off: &SymVal) -> Interval {
        let shift = |b: &Bnd| match b {
            Bnd::NegInf => Bnd::NegInf,
            Bnd::PlusInf => Bnd::PlusInf,
            Bnd::Open(v) => Bnd::Open(v.add(off)),
            Bnd::Closed(v) => Bnd::Closed(v.add(off)),
        };
        Interval {
            lo: shift(&self.lo),
            hi: shift(&self.hi),
        }
    }

    /// Scale by a nonzero rational; negative scale swaps the ends.
    pub fn scale(&self, k: &Rat) -> Interval {
        use num_traits::Signed;
        assert!(!num_traits::Zero::is_zero(k));
        let sc = |b: &Bnd| match b {
            Bnd::NegInf => {
                if k.is_positive() {
                    Bnd::NegInf
                } else {
                    Bnd::PlusInf
                }
            }
            Bnd::PlusInf => {
                if k.is_positive() {
                    Bnd::PlusInf
                } else {
                    Bnd::NegInf
                }
            }
            Bnd::Open(v) => Bnd::Open(v.scale(k)),
            Bnd::Closed(v) => Bnd::Closed(v.scale(k)),
        };
        if k.is_positive() {
            Interval {
                lo: sc(&self.lo),
                hi: sc(&self.hi),
            }
        } else {
            Interval {
                lo: sc(&self.hi),
                hi: sc(&self.lo),
            }
        }
    }

    /// Recession cone of the (closure of the) interval, as an interval.
    pub fn recession(&self) -> Interval {
        let lo = if matches!(self.lo, Bnd::NegInf) {
            Bnd::NegInf
        } else {
            Bnd::closed_rat(Rat::new(0.into(), 1.into()))
        };
        let hi = if matches!(self.hi, Bnd::PlusInf) {
            Bnd::PlusInf
        } else {
            Bnd::closed_rat(Rat::new(0.into(), 1.into()))
        };
        Interval { lo, hi }
    }

    pub fn is_bounded(&self) -> bool {
        !matches!(self.lo, Bnd::NegInf) && !matches!(self.hi, Bnd::PlusInf)
    }

    pub fn render(&self) -> String {
        if self.is_empty().unwrap_or(false) {
            return "empty".into();
        }
        if let Ok(Some(p)) = self.is_point() {
            return format!("{{{}}}", p.render());
        }
        let lo = match &self.lo {
            Bnd::NegInf => "(-inf".to_string(),
            Bnd::Open(v) => format!("({}", v.render()),
            Bnd::Closed(v) => format!("[{}", v.render()),
            Bnd::PlusInf => "(+inf".to_string(),
        };
        let hi = match &self.hi {
            Bnd::PlusInf => "inf)".to_string(),
            Bnd::Open(v) => format!("{})", v.render()),
            Bnd::Closed(v) => format!("{}]", v.render()),
            Bnd::NegInf => "-inf)".to_string(),
        };
        format!("{lo},{hi}")
    }
}

fn cmp_bnd_values(a: &SymVal, b: &SymVal) -> Result<Ordering, SymError> {
    a.cmp_exact(b)
}

/// Max of two lower bounds (strict dominates at equal value).
pub fn max_lower(a: &Bnd, b: &Bnd) -> Result<Bnd, SymError> {
    Ok(match (a, b) {
        (Bnd::NegInf, x) | (x, Bnd::NegInf) => x.clone(),
        (Bnd::PlusInf, _) | (_, Bnd::PlusInf) => Bnd::PlusInf,
        (x, y) => {
            let (xv, yv) = (x.value().unwrap(), y.value().unwrap());
            match cmp_bnd_values(xv, yv)? {
                Ordering::Greater => x.clone(),
                Ordering::Less => y.clone(),
                Ordering::Equal => {
                    if matches!(x, Bnd::Open(_)) || matches!(y, Bnd::Open(_)) {
                        Bnd::Open(xv.clone())
                    } else {
                        Bnd::Closed(xv.clone())
                    }
                }
            }
        }
    })
}

/// Min of two upper bounds (strict dominates at equal value).
pub fn min_upper(a: &Bnd, b: &Bnd) -> Result<Bnd, SymError> {
    Ok(match (a, b) {
        (Bnd::PlusInf, x) | (x, Bnd::PlusInf) => x.clone(),
        (Bnd::NegInf, _) | (_, Bnd::NegInf) => Bnd::NegInf,
        (x, y) => {
            let (xv, yv) = (x.value().unwrap(), y.value().unwrap());
            match cmp_bnd_values(xv, yv)? {
                Ordering::Less => x.clone(),
                Ordering::Greater => y.clone(),
                Ordering::Equal => {
                    if matches!(x, Bnd::Open(_)) || matches!(y, Bnd::Open(_)) {
                        Bnd::Open(xv.clone())
                    } else {
                        Bnd::Closed(xv.clone())
                    }
                }
            }
        }
    })
}

/// Normalized finite union of intervals on the line.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalUnion {
    pub parts: Vec<Interval>,
}

impl IntervalUnion {
    pub fn empty() -> Self {
        IntervalUnion { parts: Vec::new() }
    }

    pub fn whole() -> Self {
        IntervalUnion {
            parts: vec![Interval::whole()],
        }
    }

    pub fn from_parts(parts: Vec<Interval>) -> Result<Self, SymError> {
        let mut kept: Vec<Interval> = Vec::new();
        for p in parts {
            if !p.is_empty()? {
                kept.push(p);
            }
        }
        // sort by lower bound
        let mut keyed: Vec<(f64, Interval)> = kept
            .into_iter()
            .map(|iv| {
                let key = match &iv.lo {
                    Bnd::NegInf => f64::NEG_INFINITY,
                    Bnd::PlusInf => f64::INFINITY,
                    Bnd::Open(v) | Bnd::Closed(v) => v.to_f64(),
                };
                (key, iv)
            })
            .collect();
        keyed.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap_or(Ordering::Equal));
        let mut merged: Vec<Interval> = Vec::new();
        for (_, iv) in keyed {
            if let Some(last) = merged.last_mut() {
                if intervals_touch(last, &iv)? {
                    let hi = merge_upper(&last.hi, &iv.hi)?;
                    last.hi = hi;
                    continue;
                }
            }
            merged.push(iv);
        }
        Ok(IntervalUnion { parts: merged })
    }

    pub fn contains(&self, v: &SymVal) -> Result<bool, SymError> {
        for p in &self.parts {
            if p.contains(v)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn is_whole_line(&self) -> bool {
        self.parts.len() == 1
            && matches!(self.parts[0].lo, Bnd::NegInf)
            && matches!(self.parts[0].hi, Bnd::PlusInf)
    }

    pub fn render(&self) -> String {
        if self.parts.is_empty() {
            return "empty".into();
        }
        if self.is_whole_line() {
            return "(-inf,inf)".into();
        }
        self.parts
            .iter()
            .map(|p| p.render())
            .collect::<Vec<_>>()
            .join(" U ")
    }
}

fn intervals_touch(a: &Interval, b: &Interval) -> Result<bool, SymError> {
    // assumes a.lo <= b.lo; touch unless a.hi < b.lo, or equal with both open
    let (hv, hi_open) = match &a.hi {
        Bnd::PlusInf => return Ok(true),
        Bnd::NegInf => return Ok(false),
        Bnd::Open(v) => (v, true),
        Bnd::Closed(v) => (v, false),
    };
    let (lv, lo_open) = match &b.lo {
        Bnd::NegInf => return Ok(true),
        Bnd::PlusInf => return Ok(false),
        Bnd::Open(v) => (v, true),
        Bnd::Closed(v) => (v, false),
    };
    Ok(match hv.cmp_exact(lv)? {
        Ordering::Less => false,
        Ordering::Greater => true,
        Ordering::Equal => !(hi_open && lo_open),
    })
}

fn merge_upper(a: &Bnd, b: &Bnd) -> Result<Bnd, SymError> {
    Ok(match (a, b) {
        (Bnd::PlusInf, _) | (_, Bnd::PlusInf) => Bnd::PlusInf,
        (Bnd::NegInf, x) | (x, Bnd::NegInf) => x.clone(),
        (x, y) => {
            let (xv, yv) = (x.value().unwrap(), y.value().unwrap());
            match xv.cmp_exact(yv)? {
                Ordering::Greater => x.clone(),
                Ordering::Less => y.clone(),
                Ordering::Equal => {
                    if x.is_closed_finite() || y.is_closed_finite() {
                        Bnd::Closed(xv.clone())
                    } else {
                        Bnd::Open(xv.clone())
                    }
                }
            }
        }
    })
}
