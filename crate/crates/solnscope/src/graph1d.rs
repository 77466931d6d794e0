//! Piecewise monotone graphs on the line: the exact representation of the
//! set-valued maps v -> (A o df* o A^T)(v) and t -> d(A|>f)(t) for m = 1.
//! Supports output evaluation, range, range of I + T, solving b in T(v),
//! graph inversion and exact resolvents.

use crate::scalar::{rat, Rat};
use crate::sets::interval::{Bnd, Interval, IntervalUnion};
use crate::sym::{SymError, SymVal};
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum GraphError {
    #[error("graph operation undecidable: {0}")]
    Undecidable(String),
    #[error("graph combination unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// Output rule of one piece, as a function of v on the piece's domain.
#[derive(Debug, Clone, PartialEq)]
pub enum PieceFn {
    /// Constant set; the piece is vertical (point domain) or flat
    /// (singleton output).
    Const(Interval),
    /// {a + b v} with b >= 0.
    Affine { a: Rat, b: Rat },
    /// {scale / (v - vshift) + shift} on a domain avoiding vshift.
    Recip { scale: Rat, vshift: Rat, shift: Rat },
    /// {scale * log(inner * (v - vshift)) + shift}.
    Log {
        scale: Rat,
        inner: Rat,
        vshift: Rat,
        shift: Rat,
    },
    /// {scale * e^{rate (v - vshift)} + shift}.
    Exp {
        scale: Rat,
        rate: Rat,
        vshift: Rat,
        shift: Rat,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub struct GraphPiece {
    pub dom: Interval,
    pub out: PieceFn,
}

/// A (maximally or non-maximally) monotone graph as a finite union of
/// pieces; v outside every piece domain has empty output.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Graph1 {
    pub pieces: Vec<GraphPiece>,
}

/// Exact answer to "solve b in T(v) for v".
#[derive(Debug, Clone, PartialEq)]
pub enum VSolution {
    Rational(Rat),
    Symbolic(SymVal),
}

impl VSolution {
    pub fn to_symval(&self) -> SymVal {
        match self {
            VSolution::Rational(r) => SymVal::from_rat(r.clone()),
            VSolution::Symbolic(s) => s.clone(),
        }
    }
}

/// Resolvent outcome: the unique v with b - v in T(v).
#[derive(Debug, Clone, PartialEq)]
pub enum Resolvent {
    None,
    Rational(Rat),
    /// A solution exists inside the piece but its value is transcendental.
    InPiece(usize),
}

impl PieceFn {
    /// Output set at a rational v inside the domain.
    pub fn at(&self, v: &Rat) -> Result<Interval, GraphError> {
        Ok(match self {
            PieceFn::Const(iv) => iv.clone(),
            PieceFn::Affine { a, b } => Interval::point_rat(a + b * v),
            PieceFn::Recip { scale, vshift, shift } => {
                let den = v - vshift;
                if den.is_zero() {
                    return Err(GraphError::Undecidable("reciprocal at its pole".into()));
                }
                Interval::point_rat(scale / den + shift)
            }
            PieceFn::Log {
                scale,
                inner,
                vshift,
                shift,
            } => {
                let arg = inner * &(v - vshift);
                if !arg.is_positive() {
                    return Err(GraphError::Undecidable("log of a nonpositive".into()));
                }
                let val = SymVal::log_of(&arg)?
                    .scale(scale)
                    .add(&SymVal::from_rat(shift.clone()));
                Interval::point(val)
            }
            PieceFn::Exp {
                scale,
                rate,
                vshift,
                shift,
            } => {
                let e = SymVal::exp_of(rate * &(v - vshift))
                    .scale(scale)
                    .add(&SymVal::from_rat(shift.clone()));
                Interval::point(e)
            }
        })
    }

    /// Monotone direction: +1 increasing, 0 constant, -1 decreasing.
    fn direction(&self, dom: &Interval) -> i32 {
        match self {
            PieceFn::Const(_) => 0,
            PieceFn::Affine { b, .. } => {
                if b.is_zero() {
                    0
                } else if b.is_positive() {
                    1
                } else {
                    -1
                }
            }
            PieceFn::Recip { scale, .. } => {
                // d/dv s/(v - v0) = -s/(v - v0)^2
                if scale.is_zero() {
                    0
                } else if scale.is_positive() {
                    -1
                } else {
                    1
                }
            }
            PieceFn::Log { scale, inner, .. } => {
                // derivative scale*inner/arg with arg > 0; sign = sign(scale*inner)
                let s = scale * inner;
                if s.is_zero() {
                    0
                } else if s.is_positive() {
                    1
                } else {
                    -1
                }
            }
            PieceFn::Exp { scale, rate, .. } => {
                let s = scale * rate;
                if s.is_zero() {
                    0
                } else if s.is_positive() {
                    1
                } else {
                    -1
                }
            }
            #[allow(unreachable_patterns)]
            _ => {
                let _ = dom;
                0
            }
        }
    }

    /// Limit value as v approaches a domain endpoint (with identity added
    /// when `plus_v`).
    fn limit_at(&self, end: &Bnd, from_left: bool, plus_v: bool) -> Result<Bnd, GraphError> {
        let _ = from_left;
        let v_rat = match end {
            Bnd::NegInf => None,
            Bnd::PlusInf => None,
            Bnd::Open(v) | Bnd::Closed(v) => Some(
                v.as_rational()
                    .ok_or_else(|| GraphError::Unsupported("symbolic piece boundary".into()))?
                    .clone(),
            ),
        };
        let open = matches!(end, Bnd::Open(_));
        let to_bnd = |val: SymVal| {
            if open {
                Bnd::Open(val)
            } else {
                Bnd::Closed(val)
            }
        };
        match self {
            PieceFn::Const(iv) => {
                // only sensible for flat pieces (singleton output)
                let v = iv
                    .is_point()?
                    .ok_or_else(|| GraphError::Unsupported("range of a thick piece".into()))?;
                match (end, plus_v) {
                    (Bnd::NegInf, true) => Ok(Bnd::NegInf),
                    (Bnd::PlusInf, true) => Ok(Bnd::PlusInf),
                    (_, true) => {
                        let vr = v_rat.expect("finite end");
                        Ok(to_bnd(v.add(&SymVal::from_rat(vr))))
                    }
                    (_, false) => Ok(to_bnd(v)),
                }
            }
            PieceFn::Affine { a, b } => match end {
                Bnd::NegInf => {
                    let slope_pos = if plus_v {
                        (b + Rat::one()).is_positive()
                    } else {
                        b.is_positive()
                    };
                    let slope_zero = if plus_v {
                        (b + Rat::one()).is_zero()
                    } else {
                        b.is_zero()
                    };
                    if slope_zero {
                        Ok(Bnd::Open(SymVal::from_rat(a.clone())))
                    } else if slope_pos {
                        Ok(Bnd::NegInf)
                    } else {
                        Ok(Bnd::PlusInf)
                    }
                }
                Bnd::PlusInf => {
                    let slope_pos = if plus_v {
                        (b + Rat::one()).is_positive()
                    } else {
                        b.is_positive()
                    };
                    let slope_zero = if plus_v {
                        (b + Rat::one()).is_zero()
                    } else {
                        b.is_zero()
                    };
                    if slope_zero {
                        Ok(Bnd::Open(SymVal::from_rat(a.clone())))
                    } else if slope_pos {
                        Ok(Bnd::PlusInf)
                    } else {
                        Ok(Bnd::NegInf)
                    }
                }
                _ => {
                    let vr = v_rat.expect("finite");
                    let mut val = a + b * &vr;
                    if plus_v {
                        val += &vr;
                    }
                    Ok(to_bnd(SymVal::from_rat(val)))
                }
            },
            PieceFn::Recip { scale, vshift, shift } => match end {
                Bnd::NegInf => Ok(if plus_v {
                    Bnd::NegInf
                } else {
                    Bnd::Open(SymVal::from_rat(shift.clone()))
                }),
                Bnd::PlusInf => Ok(if plus_v {
                    Bnd::PlusInf
                } else {
                    Bnd::Open(SymVal::from_rat(shift.clone()))
                }),
                _ => {
                    let vr = v_rat.expect("finite");
                    let den = &vr - vshift;
                    if den.is_zero() {
                        // one-sided blow-up toward the pole; the domain end
                        // approaching from the left means v < vshift (den < 0)
                        let sign_pos = scale.is_positive() == !from_left;
                        return Ok(if sign_pos { Bnd::PlusInf } else { Bnd::NegInf });
                    }
                    let mut val = SymVal::from_rat(scale / &den + shift);
                    if plus_v {
                        val = val.add(&SymVal::from_rat(vr));
                    }
                    Ok(to_bnd(val))
                }
            },
            PieceFn::Log {
                scale,
                inner,
                vshift,
                shift,
            } => match end {
                Bnd::NegInf | Bnd::PlusInf => {
                    // |arg| -> inf; log -> +inf scaled; identity dominates at +-inf
                    if plus_v {
                        Ok(if matches!(end, Bnd::PlusInf) {
                            Bnd::PlusInf
                        } else {
                            Bnd::NegInf
                        })
                    } else {
                        let s = scale * inner;
                        // toward +inf: arg -> +inf needs inner > 0
                        Ok(match (matches!(end, Bnd::PlusInf), s.is_positive()) {
                            (true, true) | (false, false) => Bnd::PlusInf,
                            _ => Bnd::NegInf,
                        })
                    }
                }
                _ => {
                    let vr = v_rat.expect("finite");
                    let arg = inner * &(&vr - vshift);
                    if arg.is_zero() {
                        // log -> -inf, scaled
                        return Ok(if scale.is_positive() {
                            Bnd::NegInf
                        } else {
                            Bnd::PlusInf
                        });
                    }
                    if arg.is_negative() {
                        return Err(GraphError::Undecidable(
                            "log evaluated outside its domain".into(),
                        ));
                    }
                    let mut val = SymVal::log_of(&arg)?
                        .scale(scale)
                        .add(&SymVal::from_rat(shift.clone()));
                    if plus_v {
                        val = val.add(&SymVal::from_rat(vr));
                    }
                    Ok(to_bnd(val))
                }
            },
            PieceFn::Exp {
                scale,
                rate,
                vshift,
                shift,
            } => match end {
                Bnd::NegInf => {
                    if rate.is_positive() {
                        // e term -> 0
                        Ok(if plus_v {
                            Bnd::NegInf
                        } else {
                            Bnd::Open(SymVal::from_rat(shift.clone()))
                        })
                    } else {
                        Ok(if scale.is_positive() {
                            Bnd::PlusInf
                        } else {
                            Bnd::NegInf
                        })
                    }
                }
                Bnd::PlusInf => {
                    if rate.is_positive() {
                        Ok(if scale.is_positive() {
                            Bnd::PlusInf
                        } else {
                            Bnd::NegInf
                        })
                    } else {
                        Ok(if plus_v {
                            Bnd::PlusInf
                        } else {
                            Bnd::Open(SymVal::from_rat(shift.clone()))
                        })
                    }
                }
                _ => {
                    let vr = v_rat.expect("finite");
                    let mut val = SymVal::exp_of(rate * &(&vr - vshift))
                        .scale(scale)
                        .add(&SymVal::from_rat(shift.clone()));
                    if plus_v {
                        val = val.add(&SymVal::from_rat(vr));
                    }
                    Ok(to_bnd(val))
                }
            },
        }
    }

    /// Range over a domain interval, optionally of v + f(v).
    fn range_over(&self, dom: &Interval, plus_v: bool) -> Result<Interval, GraphError> {
        if let PieceFn::Const(iv) = self {
            if !plus_v {
                return Ok(iv.clone());
            }
            if let Some(p) = dom.is_point()? {
                // vertical piece: v fixed
                return Ok(iv.translate(&p));
            }
        }
        let lo_lim = self.limit_at(&dom.lo, false, plus_v)?;
        let hi_lim = self.limit_at(&dom.hi, true, plus_v)?;
        let dir = if plus_v {
            // v + f(v) is non-decreasing for monotone f
            1
        } else {
            self.direction(dom)
        };
        Ok(if dir >= 0 {
            Interval::new(lo_lim, hi_lim)
        } else {
            Interval::new(hi_lim, lo_lim)
        })
    }

    /// Solutions of b in f(v) within the domain.
    fn solve(&self, b: &Rat, dom: &Interval) -> Result<Vec<VSolution>, GraphError> {
        let bs = SymVal::from_rat(b.clone());
        match self {
            PieceFn::Const(iv) => {
                if iv.contains(&bs)? {
                    // vertical or flat piece: every domain v qualifies;
                    // report the canonical representative
                    let wrap = |s: SymVal| match s.as_rational() {
                        Some(r) => VSolution::Rational(r.clone()),
                        None => VSolution::Symbolic(s),
                    };
                    if let Some(p) = dom.is_point()? {
                        Ok(vec![wrap(p)])
                    } else {
                        // flat piece: pick the smallest breakpoint
                        match &dom.lo {
                            Bnd::Closed(v) => Ok(vec![wrap(v.clone())]),
                            Bnd::Open(v) => {
                                // open end: nudge inward one unit or midpoint
                                let vr = v.as_rational().ok_or_else(|| {
                                    GraphError::Unsupported("symbolic boundary".into())
                                })?;
                                let pick = match &dom.hi {
                                    Bnd::PlusInf => vr + Rat::one(),
                                    Bnd::Closed(h) | Bnd::Open(h) => {
                                        let hr = h.as_rational().ok_or_else(|| {
                                            GraphError::Unsupported("symbolic boundary".into())
                                        })?;
                                        (vr + hr) / rat(2)
                                    }
                                    Bnd::NegInf => unreachable!("empty domain"),
                                };
                                Ok(vec![VSolution::Rational(pick)])
                            }
                            Bnd::NegInf => match &dom.hi {
                                Bnd::Closed(h) => Ok(vec![wrap(h.clone())]),
                                Bnd::Open(h) => {
                                    let hr = h.as_rational().ok_or_else(|| {
                                        GraphError::Unsupported("symbolic boundary".into())
                                    })?;
                                    Ok(vec![VSolution::Rational(hr - Rat::one())])
                                }
                                _ => Ok(vec![VSolution::Rational(Rat::zero())]),
                            },
                            Bnd::PlusInf => Ok(vec![]),
                        }
                    }
                } else {
                    Ok(vec![])
                }
            }
            PieceFn::Affine { a, b: slope } => {
                if slope.is_zero() {
                    return PieceFn::Const(Interval::point_rat(a.clone())).solve(b, dom);
                }
                let v = (b - a) / slope;
                if dom.contains(&SymVal::from_rat(v.clone()))? {
                    Ok(vec![VSolution::Rational(v)])
                } else {
                    Ok(vec![])
                }
            }
            PieceFn::Recip { scale, vshift, shift } => {
                let denom = b - shift;
                if denom.is_zero() {
                    return Ok(vec![]);
                }
                let v = scale / &denom + vshift;
                if dom.contains(&SymVal::from_rat(v.clone()))? {
                    Ok(vec![VSolution::Rational(v)])
                } else {
                    Ok(vec![])
                }
            }
            PieceFn::Log {
                scale,
                inner,
                vshift,
                shift,
            } => {
                // scale log(inner (v - vshift)) + shift = b
                let expo = (b - shift) / scale;
                let v_sym = SymVal::exp_of(expo.clone())
                    .scale(&(Rat::one() / inner))
                    .add(&SymVal::from_rat(vshift.clone()));
                if dom.contains(&v_sym)? {
                    if expo.is_zero() {
                        Ok(vec![VSolution::Rational(
                            Rat::one() / inner + vshift,
                        )])
                    } else {
                        Ok(vec![VSolution::Symbolic(v_sym)])
                    }
                } else {
                    Ok(vec![])
                }
            }
            PieceFn::Exp {
                scale,
                rate,
                vshift,
                shift,
            } => {
                let arg = (b - shift) / scale;
                if !arg.is_positive() {
                    return Ok(vec![]);
                }
                let v_sym = SymVal::log_of(&arg)?
                    .scale(&(Rat::one() / rate))
                    .add(&SymVal::from_rat(vshift.clone()));
                if dom.contains(&v_sym)? {
                    if arg.is_one() {
                        Ok(vec![VSolution::Rational(vshift.clone())])
                    } else {
                        Ok(vec![VSolution::Symbolic(v_sym)])
                    }
                } else {
                    Ok(vec![])
                }
            }
        }
    }
}

impl Graph1 {
    pub fn empty() -> Self {
        Graph1 { pieces: Vec::new() }
    }

    pub fn is_empty_graph(&self) -> bool {
        self.pieces.is_empty()
    }

    /// T(v) as a union of intervals (empty when v is outside the domain).
    pub fn output_at(&self, v: &Rat) -> Result<Vec<Interval>, GraphError> {
        let vs = SymVal::from_rat(v.clone());
        let mut out = Vec::new();
        for p in &self.pieces {
            if p.dom.contains(&vs)? {
                out.push(p.out.at(v)?);
            }
        }
        Ok(out)
    }

    pub fn contains(&self, v: &Rat, y: &Rat) -> Result<bool, GraphError> {
        let ys = SymVal::from_rat(y.clone());
        for iv in self.output_at(v)? {
            if iv.contains(&ys)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// ran T.
    pub fn range(&self) -> Result<IntervalUnion, GraphError> {
        let mut parts = Vec::new();
        for p in &self.pieces {
            parts.push(p.out.range_over(&p.dom, false)?);
        }
        Ok(IntervalUnion::from_parts(parts)?)
    }

    /// dom T.
    pub fn domain(&self) -> Result<IntervalUnion, GraphError> {
        Ok(IntervalUnion::from_parts(
            self.pieces.iter().map(|p| p.dom.clone()).collect(),
        )?)
    }

    /// ran(I + T).
    pub fn range_with_identity(&self) -> Result<IntervalUnion, GraphError> {
        let mut parts = Vec::new();
        for p in &self.pieces {
            parts.push(p.out.range_over(&p.dom, true)?);
        }
        Ok(IntervalUnion::from_parts(parts)?)
    }

    /// All v with b in T(v); for thick vertical/flat pieces a canonical
    /// representative (the lexicographically smallest breakpoint).
    pub fn solve_for(&self, b: &Rat) -> Result<Vec<VSolution>, GraphError> {
        let mut out = Vec::new();
        for p in &self.pieces {
            out.extend(p.out.solve(b, &p.dom)?);
        }
        Ok(out)
    }

    /// Swaps the graph axes.
    pub fn invert(&self) -> Result<Graph1, GraphError> {
        let mut pieces = Vec::new();
        for p in &self.pieces {
            let new_dom = p.out.range_over(&p.dom, false)?;
            let out = match &p.out {
                PieceFn::Const(iv) => {
                    // vertical <-> flat
                    if let Some(v0) = p.dom.is_point()? {
                        PieceFn::Const(Interval::point(v0))
                    } else if iv.is_point()?.is_some() {
                        // flat at value c -> vertical with output = old domain
                        let _ = iv;
                        pieces.push(GraphPiece {
                            dom: new_dom,
                            out: PieceFn::Const(p.dom.clone()),
                        });
                        continue;
                    } else {
                        return Err(GraphError::Unsupported(
                            "inverting a thick piece".into(),
                        ));
                    }
                }
                PieceFn::Affine { a, b } => {
                    if b.is_zero() {
                        pieces.push(GraphPiece {
                            dom: new_dom,
                            out: PieceFn::Const(p.dom.clone()),
                        });
                        continue;
                    }
                    PieceFn::Affine {
                        a: -a / b,
                        b: Rat::one() / b,
                    }
                }
                PieceFn::Recip {
                    scale,
                    vshift,
                    shift,
                } => PieceFn::Recip {
                    scale: scale.clone(),
                    vshift: shift.clone(),
                    shift: vshift.clone(),
                },
                PieceFn::Log {
                    scale,
                    inner,
                    vshift,
                    shift,
                } => PieceFn::Exp {
                    scale: Rat::one() / inner,
                    rate: Rat::one() / scale,
                    vshift: shift.clone(),
                    shift: vshift.clone(),
                },
                PieceFn::Exp {
                    scale,
                    rate,
                    vshift,
                    shift,
                } => PieceFn::Log {
                    scale: Rat::one() / rate,
                    inner: Rat::one() / scale,
                    vshift: shift.clone(),
                    shift: vshift.clone(),
                },
            };
            pieces.push(GraphPiece { dom: new_dom, out });
        }
        Ok(Graph1 { pieces })
    }

    /// The unique v with b - v in T(v) (monotone T makes I + T strictly
    /// increasing, so at most one piece answers).
    pub fn resolvent(&self, b: &Rat) -> Result<Resolvent, GraphError> {
        for (idx, p) in self.pieces.iter().enumerate() {
            // does b lie in the range of v + T(v) over this piece?
            let r = p.out.range_over(&p.dom, true)?;
            if !r.contains(&SymVal::from_rat(b.clone()))? {
                continue;
            }
            match &p.out {
                PieceFn::Const(iv) => {
                    if let Some(v0) = p.dom.is_point()? {
                        let v0r = v0.as_rational().ok_or_else(|| {
                            GraphError::Unsupported("symbolic vertical piece".into())
                        })?;
                        let residual = SymVal::from_rat(b - v0r);
                        if iv.contains(&residual)? {
                            return Ok(Resolvent::Rational(v0r.clone()));
                        }
                    } else {
                        // flat: v + c = b
                        let c = iv
                            .is_point()?
                            .and_then(|s| s.as_rational().cloned())
                            .ok_or_else(|| {
                                GraphError::Unsupported("thick flat piece".into())
                            })?;
                        let v = b - &c;
                        if p.dom.contains(&SymVal::from_rat(v.clone()))? {
                            return Ok(Resolvent::Rational(v));
                        }
                    }
                }
                PieceFn::Affine { a, b: slope } => {
                    let v = (b - a) / (slope + Rat::one());
                    if p.dom.contains(&SymVal::from_rat(v.clone()))? {
                        return Ok(Resolvent::Rational(v));
                    }
                }
                PieceFn::Recip {
                    scale,
                    vshift,
                    shift,
                } => {
                    // v + s/(v - v0) + c = b:
                    // v^2 + (c - b - v0) v + (s - v0 (c - b)) = 0
                    let cb = shift - b;
                    let bq = &cb - vshift;
                    let cq = scale - vshift * &cb;
                    let disc = &bq * &bq - rat(4) * &cq;
                    if disc.is_negative() {
                        continue;
                    }
                    match crate::atoms::kinds::rational_sqrt(&disc) {
                        Some(s) => {
                            for sign in [Rat::one(), -Rat::one()] {
                                let v = (-&bq + &sign * &s) / rat(2);
                                if p.dom.contains(&SymVal::from_rat(v.clone()))? {
                                    return Ok(Resolvent::Rational(v));
                                }
                            }
                        }
                        None => return Ok(Resolvent::InPiece(idx)),
                    }
                }
                PieceFn::Log { .. } | PieceFn::Exp { .. } => {
                    return Ok(Resolvent::InPiece(idx));
                }
            }
        }
        Ok(Resolvent::None)
    }

    /// Compares the resolvent value (I+T)^{-1}(b) against a rational c
    /// without computing it: t* >= c iff b >= min(c + T(c)) etc.
    pub fn resolvent_cmp(&self, b: &Rat, c: &Rat) -> Result<Option<Ordering>, GraphError> {
        let outs = self.output_at(c)?;
        if outs.is_empty() {
            return Ok(None);
        }
        let bs = SymVal::from_rat(b - c);
        let mut below_all = true;
        let mut above_all = true;
        for iv in &outs {
            // compare b - c with iv
            match &iv.lo {
                Bnd::NegInf => below_all = false,
                Bnd::PlusInf => {}
                Bnd::Open(v) | Bnd::Closed(v) => {
                    if bs.cmp_exact(v)? != Ordering::Less {
                        below_all = false;
                    }
                }
            }
            match &iv.hi {
                Bnd::PlusInf => above_all = false,
                Bnd::NegInf => {}
                Bnd::Open(v) | Bnd::Closed(v) => {
                    if bs.cmp_exact(v)? != Ordering::Greater {
                        above_all = false;
                    }
                }
            }
        }
        if below_all {
            return Ok(Some(Ordering::Less));
        }
        if above_all {
            return Ok(Some(Ordering::Greater));
        }
        Ok(Some(Ordering::Equal))
    }

    /// Is the resolvent value inside the union (rational endpoints)?
    pub fn resolvent_in_union(
        &self,
        b: &Rat,
        union: &IntervalUnion,
    ) -> Result<Option<bool>, GraphError> {
        match self.resolvent(b)? {
            Resolvent::None => Ok(None),
            Resolvent::Rational(v) => {
                Ok(Some(union.contains(&SymVal::from_rat(v))?))
            }
            Resolvent::InPiece(idx) => {
                let dom = &self.pieces[idx].dom;
                // decide membership by comparing with the union's endpoints
                for part in &union.parts {
                    if interval_covers(part, dom)? {
                        return Ok(Some(true));
                    }
                }
                // fall back to endpoint comparisons
                for part in &union.parts {
                    let lo_ok = match &part.lo {
                        Bnd::NegInf => true,
                        Bnd::Open(v) | Bnd::Closed(v) => {
                            let vr = v.as_rational().ok_or_else(|| {
                                GraphError::Unsupported("symbolic union endpoint".into())
                            })?;
                            matches!(
                                self.resolvent_cmp(b, vr)?,
                                Some(Ordering::Greater) | Some(Ordering::Equal)
                            )
                        }
                        Bnd::PlusInf => false,
                    };
                    if !lo_ok {
                        continue;
                    }
                    let hi_ok = match &part.hi {
                        Bnd::PlusInf => true,
                        Bnd::Open(v) | Bnd::Closed(v) => {
                            let vr = v.as_rational().ok_or_else(|| {
                                GraphError::Unsupported("symbolic union endpoint".into())
                            })?;
                            matches!(
                                self.resolvent_cmp(b, vr)?,
                                Some(Ordering::Less) | Some(Ordering::Equal)
                            )
                        }
                        Bnd::NegInf => false,
                    };
                    if hi_ok {
                        return Ok(Some(true));
                    }
                }
                Ok(Some(false))
            }
        }
    }
}

fn interval_covers(outer: &Interval, inner: &Interval) -> Result<bool, SymError> {
    let lo_ok = match (&outer.lo, &inner.lo) {
        (Bnd::NegInf, _) => true,
        (_, Bnd::NegInf) => false,
        (Bnd::Open(a) | Bnd::Closed(a), Bnd::Open(b) | Bnd::Closed(b)) => {
            match a.cmp_exact(b)? {
                Ordering::Less => true,
                Ordering::Equal => {
                    !(matches!(outer.lo, Bnd::Open(_)) && matches!(inner.lo, Bnd::Closed(_)))
                }
                Ordering::Greater => false,
            }
        }
        _ => false,
    };
    if !lo_ok {
        return Ok(false);
    }
    Ok(match (&outer.hi, &inner.hi) {
        (Bnd::PlusInf, _) => true,
        (_, Bnd::PlusInf) => false,
        (Bnd::Open(a) | Bnd::Closed(a), Bnd::Open(b) | Bnd::Closed(b)) => {
            match a.cmp_exact(b)? {
                Ordering::Greater => true,
                Ordering::Equal => {
                    !(matches!(outer.hi, Bnd::Open(_)) && matches!(inner.hi, Bnd::Closed(_)))
                }
                Ordering::Less => false,
            }
        }
        _ => false,
    })
}
