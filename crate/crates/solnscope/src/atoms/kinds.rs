//! Block-local implementations of the convex function atoms. Every
//! operation is exact: closed forms are hand-derived per atom, and results
//! that would leave the rational catalog come back as typed errors.

use crate::scalar::{rat, render_rat, Rat};
use crate::sets::interval::{Bnd, Interval};
use crate::sets::linsys::{LinCon, LinSys, Rel};
use crate::sets::{ConvexSet, SetUnion};
use crate::sym::{ExtVal, SymVal};
use num_traits::{One, Signed, Zero};

use super::CatalogError;

#[derive(Debug, Clone, PartialEq)]
pub enum AtomKind {
    /// f = 0 on its (single) coordinate.
    Zero,
    /// <c, y> over the block.
    Linear { coef: Vec<Rat> },
    /// |t|, one coordinate.
    Abs,
    /// e^{w.y + c}.
    Exp { w: Vec<Rat>, c: Rat },
    /// -log(w.y + c) on {w.y + c > 0}.
    NegLog { w: Vec<Rat>, c: Rat },
    /// max{w.y + c, 0}.
    Hinge { w: Vec<Rat>, c: Rat },
    /// max{|t| - shift, 0}, one coordinate, shift >= 0.
    HingeAbs { shift: Rat },
    /// max{e^{y0} - y1, 0}; block order (exponent coordinate, linear coordinate).
    HingeExpDiff,
    /// (t - center)^2 / 2, one coordinate.
    QuadShift { center: Rat },
    /// Indicator of {y0 y1 >= 1, y >= 0} (library-only; infimal
    /// postcomposition counterexample).
    HyperbolaInd,
}

impl AtomKind {
    pub fn arity(&self) -> usize {
        match self {
            AtomKind::Zero | AtomKind::Abs | AtomKind::HingeAbs { .. } | AtomKind::QuadShift { .. } => 1,
            AtomKind::Linear { coef } => coef.len(),
            AtomKind::Exp { w, .. } | AtomKind::NegLog { w, .. } | AtomKind::Hinge { w, .. } => {
                w.len()
            }
            AtomKind::HingeExpDiff | AtomKind::HyperbolaInd => 2,
        }
    }

    /// f_inf >= 0 everywhere? True for every atom except a nonzero linear.
    pub fn nonneg_recession(&self) -> bool {
        match self {
            AtomKind::Linear { coef } => coef.iter().all(|c| c.is_zero()),
            _ => true,
        }
    }

    pub fn eval(&self, y: &[Rat]) -> ExtVal {
        match self {
            AtomKind::Zero => ExtVal::zero(),
            AtomKind::Linear { coef } => ExtVal::from_rat(dotr(coef, y)),
            AtomKind::Abs => ExtVal::from_rat(y[0].abs()),
            AtomKind::Exp { w, c } => {
                let s = dotr(w, y) + c;
                ExtVal::Finite(SymVal::exp_of(s))
            }
            AtomKind::NegLog { w, c } => {
                let s = dotr(w, y) + c;
                if s.is_positive() {
                    ExtVal::Finite(SymVal::log_of(&s).expect("positive argument").neg())
                } else {
                    ExtVal::PlusInf
                }
            }
            AtomKind::Hinge { w, c } => {
                let s = dotr(w, y) + c;
                ExtVal::from_rat(if s.is_positive() { s } else { Rat::zero() })
            }
            AtomKind::HingeAbs { shift } => {
                let v = y[0].abs() - shift;
                ExtVal::from_rat(if v.is_positive() { v } else { Rat::zero() })
            }
            AtomKind::HingeExpDiff => {
                let g = SymVal::exp_of(y[0].clone()).sub(&SymVal::from_rat(y[1].clone()));
                match g.sign().expect("decidable sign") {
                    s if s > 0 => ExtVal::Finite(g),
                    _ => ExtVal::zero(),
                }
            }
            AtomKind::QuadShift { center } => {
                let d = &y[0] - center;
                ExtVal::from_rat(&d * &d / rat(2))
            }
            AtomKind::HyperbolaInd => {
                if !y[0].is_negative() && !y[1].is_negative() && &y[0] * &y[1] >= Rat::one() {
                    ExtVal::zero()
                } else {
                    ExtVal::PlusInf
                }
            }
        }
    }

    pub fn domain(&self) -> Result<ConvexSet, CatalogError> {
        let k = self.arity();
        match self {
            AtomKind::NegLog { w, c } => {
                let neg: Vec<Rat> = w.iter().map(|v| -v.clone()).collect();
                Ok(ConvexSet::from_linsys(LinSys::new(
                    k,
                    vec![LinCon::new(neg, Rel::Lt, c.clone())],
                )))
            }
            AtomKind::HyperbolaInd => Err(CatalogError::Unsupported(
                "hyperbola indicator domain is not polyhedral".into(),
            )),
            _ => Ok(ConvexSet::whole(k)),
        }
    }

    pub fn contains_dom(&self, y: &[Rat]) -> bool {
        match self {
            AtomKind::NegLog { w, c } => (dotr(w, y) + c).is_positive(),
            AtomKind::HyperbolaInd => {
                !y[0].is_negative() && !y[1].is_negative() && &y[0] * &y[1] >= Rat::one()
            }
            _ => true,
        }
    }

    /// Subdifferential at a rational point of the domain.
    pub fn subdiff(&self, y: &[Rat]) -> Result<ConvexSet, CatalogError> {
        if !self.contains_dom(y) {
            return Err(CatalogError::DomainViolation);
        }
        let k = self.arity();
        match self {
            AtomKind::Zero => Ok(ConvexSet::origin(1)),
            AtomKind::Linear { coef } => Ok(ConvexSet::point(coef.clone())),
            AtomKind::Abs => {
                let t = &y[0];
                Ok(if t.is_positive() {
                    ConvexSet::point(vec![Rat::one()])
                } else if t.is_negative() {
                    ConvexSet::point(vec![-Rat::one()])
                } else {
                    segment_1d(rat(-1), rat(1))
                })
            }
            AtomKind::Exp { w, c } => {
                let s = dotr(w, y) + c;
                if s.is_zero() {
                    Ok(ConvexSet::point(w.clone()))
                } else {
                    Err(CatalogError::Symbolic(format!(
                        "gradient e^{} w is irrational",
                        render_rat(&s)
                    )))
                }
            }
            AtomKind::NegLog { w, c } => {
                let s = dotr(w, y) + c;
                let g: Vec<Rat> = w.iter().map(|v| -(v / &s)).collect();
                Ok(ConvexSet::point(g))
            }
            AtomKind::Hinge { w, c } => {
                let s = dotr(w, y) + c;
                Ok(if s.is_positive() {
                    ConvexSet::point(w.clone())
                } else if s.is_negative() {
                    ConvexSet::point(vec![Rat::zero(); k])
                } else {
                    ray_segment(w, &rat(0), &rat(1))
                })
            }
            AtomKind::HingeAbs { shift } => {
                let t = &y[0];
                Ok(if t > shift {
                    ConvexSet::point(vec![Rat::one()])
                } else if *t == *shift {
                    if shift.is_zero() {
                        segment_1d(rat(-1), rat(1))
                    } else {
                        segment_1d(rat(0), rat(1))
                    }
                } else if -t.clone() > *shift {
                    ConvexSet::point(vec![-Rat::one()])
                } else if -t.clone() == *shift {
                    segment_1d(rat(-1), rat(0))
                } else {
                    ConvexSet::point(vec![Rat::zero()])
                })
            }
            AtomKind::HingeExpDiff => {
                let g = SymVal::exp_of(y[0].clone()).sub(&SymVal::from_rat(y[1].clone()));
                match g.sign().expect("decidable") {
                    s if s < 0 => Ok(ConvexSet::origin(2)),
                    0 => {
                        // y0 = 0 is the only rational case; gradient ray (e^{y0}, -1)
                        ray_segment_checked_exp(&y[0])
                    }
                    _ => {
                        if y[0].is_zero() {
                            Ok(ConvexSet::point(vec![Rat::one(), -Rat::one()]))
                        } else {
                            Err(CatalogError::Symbolic(format!(
                                "gradient (e^{}, -1) is irrational",
                                render_rat(&y[0])
                            )))
                        }
                    }
                }
            }
            AtomKind::QuadShift { center } => Ok(ConvexSet::point(vec![&y[0] - center])),
            AtomKind::HyperbolaInd => Err(CatalogError::Unsupported(
                "hyperbola indicator subdifferential".into(),
            )),
        }
    }

    /// Conjugate subdifferential at u; Empty outside dom(df*).
    pub fn conj_subdiff(&self, u: &[Rat]) -> Result<ConvexSet, CatalogError> {
        let k = self.arity();
        match self {
            AtomKind::Zero => Ok(if u[0].is_zero() {
                ConvexSet::whole(1)
            } else {
                ConvexSet::empty(1)
            }),
            AtomKind::Linear { coef } => Ok(if u == &coef[..] {
                ConvexSet::whole(k)
            } else {
                ConvexSet::empty(k)
            }),
            AtomKind::Abs => {
                let t = &u[0];
                Ok(if t.abs() < Rat::one() {
                    ConvexSet::origin(1)
                } else if t.is_one() {
                    halfline_1d(rat(0), true)
                } else if *t == -Rat::one() {
                    halfline_1d(rat(0), false)
                } else {
                    ConvexSet::empty(1)
                })
            }
            AtomKind::Exp { w, c } => {
                // u = t w with t > 0 -> {y : w.y + c = log t}
                match on_ray(u, w) {
                    Some(t) if t.is_positive() => {
                        if t.is_one() {
                            Ok(hyperplane(w, &-c.clone()))
                        } else {
                            Err(CatalogError::Symbolic(format!(
                                "level set at log {}",
                                render_rat(&t)
                            )))
                        }
                    }
                    _ => Ok(ConvexSet::empty(k)),
                }
            }
            AtomKind::NegLog { w, c } => {
                // u = t w with t < 0 -> {y : w.y + c = -1/t}
                match on_ray(u, w) {
                    Some(t) if t.is_negative() => {
                        let level = -Rat::one() / &t - c;
                        Ok(hyperplane(w, &level))
                    }
                    _ => Ok(ConvexSet::empty(k)),
                }
            }
            AtomKind::Hinge { w, c } => match on_ray(u, w) {
                Some(t) => {
                    if t.is_zero() {
                        // {w.y + c <= 0}
                        Ok(halfspace(w, &-c.clone(), Rel::Le))
                    } else if t.is_one() {
                        let neg: Vec<Rat> = w.iter().map(|v| -v.clone()).collect();
                        Ok(halfspace(&neg, c, Rel::Le))
                    } else if t.is_positive() && t < Rat::one() {
                        Ok(hyperplane(w, &-c.clone()))
                    } else {
                        Ok(ConvexSet::empty(k))
                    }
                }
                None => Ok(ConvexSet::empty(k)),
            },
            AtomKind::HingeAbs { shift } => {
                let t = &u[0];
                Ok(if *t == -Rat::one() {
                    interval_1d(Bnd::NegInf, Bnd::closed_rat(-shift.clone()))
                } else if t.is_negative() {
                    ConvexSet::point(vec![-shift.clone()])
                } else if t.is_zero() {
                    segment_1d(-shift.clone(), shift.clone())
                } else if t < &Rat::one() {
                    ConvexSet::point(vec![shift.clone()])
                } else if t.is_one() {
                    interval_1d(Bnd::closed_rat(shift.clone()), Bnd::PlusInf)
                } else {
                    ConvexSet::empty(1)
                })
            }
            AtomKind::HingeExpDiff => {
                let (u0, u1) = (&u[0], &u[1]);
                if u0.is_zero() && u1.is_zero() {
                    // {y : y1 >= e^{y0}}  (p = linear coordinate, q = exponent)
                    return Ok(ConvexSet::exp_region(2, 1, 0));
                }
                if !(u1 >= &-Rat::one() && u1.is_negative() && u0.is_positive()) {
                    return Ok(ConvexSet::empty(2));
                }
                if *u1 == -Rat::one() {
                    // y0 = log u0, y1 <= u0
                    if u0.is_one() {
                        let sys = LinSys::new(
                            2,
                            vec![
                                LinCon::new(vec![rat(1), rat(0)], Rel::Eq, rat(0)),
                                LinCon::new(vec![rat(0), rat(1)], Rel::Le, rat(1)),
                            ],
                        );
                        Ok(ConvexSet::from_linsys(sys))
                    } else {
                        Err(CatalogError::Symbolic(format!(
                            "piece anchored at log {}",
                            render_rat(u0)
                        )))
                    }
                } else {
                    // interior piece: singleton (log r, r) with r = -u0/u1
                    let r = -u0 / u1;
                    if r.is_one() {
                        Ok(ConvexSet::point(vec![rat(0), rat(1)]))
                    } else {
                        Err(CatalogError::Symbolic(format!(
                            "piece at log {}",
                            render_rat(&r)
                        )))
                    }
                }
            }
            AtomKind::QuadShift { center } => Ok(ConvexSet::point(vec![center + &u[0]])),
            AtomKind::HyperbolaInd => Err(CatalogError::Unsupported(
                "hyperbola indicator conjugate subdifferential".into(),
            )),
        }
    }

    /// Recession function value f_inf(d).
    pub fn recession(&self, d: &[Rat]) -> ExtVal {
        match self {
            AtomKind::Zero => ExtVal::zero(),
            AtomKind::Linear { coef } => ExtVal::from_rat(dotr(coef, d)),
            AtomKind::Abs => ExtVal::from_rat(d[0].abs()),
            AtomKind::Exp { w, .. } => {
                if dotr(w, d).is_positive() {
                    ExtVal::PlusInf
                } else {
                    ExtVal::zero()
                }
            }
            AtomKind::NegLog { w, .. } => {
                if dotr(w, d).is_negative() {
                    ExtVal::PlusInf
                } else {
                    ExtVal::zero()
                }
            }
            AtomKind::Hinge { w, .. } => {
                let s = dotr(w, d);
                ExtVal::from_rat(if s.is_positive() { s } else { Rat::zero() })
            }
            AtomKind::HingeAbs { .. } => ExtVal::from_rat(d[0].abs()),
            AtomKind::HingeExpDiff => {
                if d[0].is_positive() {
                    ExtVal::PlusInf
                } else if d[1].is_negative() {
                    ExtVal::from_rat(-d[1].clone())
                } else {
                    ExtVal::zero()
                }
            }
            AtomKind::QuadShift { .. } => {
                if d[0].is_zero() {
                    ExtVal::zero()
                } else {
                    ExtVal::PlusInf
                }
            }
            AtomKind::HyperbolaInd => {
                if !d[0].is_negative() && !d[1].is_negative() {
                    ExtVal::zero()
                } else {
                    ExtVal::PlusInf
                }
            }
        }
    }

    /// ker f_inf = {d : f_inf(d) = 0}; convex for every catalog atom.
    pub fn recession_kernel(&self) -> ConvexSet {
        match self {
            AtomKind::Zero => ConvexSet::whole(1),
            AtomKind::Linear { coef } => hyperplane(coef, &Rat::zero()),
            AtomKind::Abs | AtomKind::HingeAbs { .. } | AtomKind::QuadShift { .. } => {
                ConvexSet::origin(1)
            }
            AtomKind::Exp { w, .. } | AtomKind::Hinge { w, .. } => {
                halfspace(w, &Rat::zero(), Rel::Le)
            }
            AtomKind::NegLog { w, .. } => {
                let neg: Vec<Rat> = w.iter().map(|v| -v.clone()).collect();
                halfspace(&neg, &Rat::zero(), Rel::Le)
            }
            AtomKind::HingeExpDiff => ConvexSet::from_linsys(LinSys::new(
                2,
                vec![
                    LinCon::new(vec![rat(1), rat(0)], Rel::Le, rat(0)),
                    LinCon::new(vec![rat(0), rat(-1)], Rel::Le, rat(0)),
                ],
            )),
            AtomKind::HyperbolaInd => ConvexSet::from_linsys(LinSys::new(
                2,
                vec![
                    LinCon::new(vec![rat(-1), rat(0)], Rel::Le, rat(0)),
                    LinCon::new(vec![rat(0), rat(-1)], Rel::Le, rat(0)),
                ],
            )),
        }
    }

    /// R_f = {d : f_inf(d) <= 0}; differs from the kernel only for linear.
    pub fn recession_cone_fn(&self) -> ConvexSet {
        match self {
            AtomKind::Linear { coef } => halfspace(coef, &Rat::zero(), Rel::Le),
            _ => self.recession_kernel(),
        }
    }

    /// ran(df) as a finite union.
    pub fn range_subdiff(&self) -> Result<SetUnion, CatalogError> {
        let k = self.arity();
        match self {
            AtomKind::Zero => Ok(SetUnion::single(ConvexSet::origin(1))),
            AtomKind::Linear { coef } => Ok(SetUnion::single(ConvexSet::point(coef.clone()))),
            AtomKind::Abs => Ok(SetUnion::single(segment_1d(rat(-1), rat(1)))),
            AtomKind::HingeAbs { .. } => Ok(SetUnion::single(segment_1d(rat(-1), rat(1)))),
            AtomKind::Exp { w, .. } => Ok(SetUnion::single(open_ray(w, true))),
            AtomKind::NegLog { w, .. } => Ok(SetUnion::single(open_ray(w, false))),
            AtomKind::Hinge { w, .. } => Ok(SetUnion::single(ray_segment(w, &rat(0), &rat(1)))),
            AtomKind::QuadShift { .. } => Ok(SetUnion::single(ConvexSet::whole(1))),
            AtomKind::HingeExpDiff => {
                // {(0,0)} plus the strip (0, inf) x [-1, 0)
                let strip = ConvexSet::from_linsys(LinSys::new(
                    2,
                    vec![
                        LinCon::new(vec![rat(-1), rat(0)], Rel::Lt, rat(0)),
                        LinCon::new(vec![rat(0), rat(1)], Rel::Lt, rat(0)),
                        LinCon::new(vec![rat(0), rat(-1)], Rel::Le, rat(1)),
                    ],
                ));
                Ok(SetUnion::from_parts(
                    2,
                    vec![ConvexSet::origin(2), strip],
                ))
            }
            AtomKind::HyperbolaInd => Err(CatalogError::Unsupported(
                "hyperbola indicator subdifferential range".into(),
            )),
        }
        .map(|u| {
            debug_assert!(u.dim == k || u.is_empty());
            u
        })
    }

    /// ri ran(df): interior of the range relative to its affine hull.
    pub fn ri_range_subdiff(&self) -> Result<SetUnion, CatalogError> {
        match self {
            AtomKind::Zero => Ok(SetUnion::single(ConvexSet::origin(1))),
            AtomKind::Linear { coef } => Ok(SetUnion::single(ConvexSet::point(coef.clone()))),
            AtomKind::Abs | AtomKind::HingeAbs { .. } => Ok(SetUnion::single(interval_1d(
                Bnd::open_rat(rat(-1)),
                Bnd::open_rat(rat(1)),
            ))),
            AtomKind::Exp { w, .. } => Ok(SetUnion::single(open_ray(w, true))),
            AtomKind::NegLog { w, .. } => Ok(SetUnion::single(open_ray(w, false))),
            AtomKind::Hinge { w, .. } => Ok(SetUnion::single(open_segment(w))),
            AtomKind::QuadShift { .. } => Ok(SetUnion::single(ConvexSet::whole(1))),
            AtomKind::HingeExpDiff => {
                let open_strip = ConvexSet::from_linsys(LinSys::new(
                    2,
                    vec![
                        LinCon::new(vec![rat(-1), rat(0)], Rel::Lt, rat(0)),
                        LinCon::new(vec![rat(0), rat(1)], Rel::Lt, rat(0)),
                        LinCon::new(vec![rat(0), rat(-1)], Rel::Lt, rat(1)),
                    ],
                ));
                Ok(SetUnion::single(open_strip))
            }
            AtomKind::HyperbolaInd => Err(CatalogError::Unsupported(
                "hyperbola indicator subdifferential range".into(),
            )),
        }
    }

    /// Sublevel set {y : f(y) <= level} where it stays rational.
    pub fn sublevel(&self, level: &Rat) -> Result<ConvexSet, CatalogError> {
        let k = self.arity();
        match self {
            AtomKind::Zero => Ok(if level.is_negative() {
                ConvexSet::empty(1)
            } else {
                ConvexSet::whole(1)
            }),
            AtomKind::Linear { coef } => Ok(halfspace(coef, level, Rel::Le)),
            AtomKind::Abs => Ok(if level.is_negative() {
                ConvexSet::empty(1)
            } else {
                segment_1d(-level.clone(), level.clone())
            }),
            AtomKind::Hinge { w, c } => Ok(if level.is_negative() {
                ConvexSet::empty(k)
            } else {
                halfspace(w, &(level - c), Rel::Le)
            }),
            AtomKind::HingeAbs { shift } => Ok(if level.is_negative() {
                ConvexSet::empty(1)
            } else {
                segment_1d(-(shift + level), shift + level)
            }),
            AtomKind::HingeExpDiff => Ok(if level.is_negative() {
                ConvexSet::empty(2)
            } else {
                // {y1 >= e^{y0} - level}
                ConvexSet::exp_region(2, 1, 0)
                    .translate(&[rat(0), -level.clone()])
                    .map_err(CatalogError::Set)?
            }),
            AtomKind::QuadShift { center } => {
                if level.is_negative() {
                    return Ok(ConvexSet::empty(1));
                }
                if level.is_zero() {
                    return Ok(ConvexSet::point(vec![center.clone()]));
                }
                match rational_sqrt(&(rat(2) * level)) {
                    Some(r) => Ok(segment_1d(center - &r, center + &r)),
                    None => Err(CatalogError::Symbolic(
                        "sublevel radius is irrational".into(),
                    )),
                }
            }
            AtomKind::Exp { w, c } => {
                if !level.is_positive() {
                    return Ok(ConvexSet::empty(k));
                }
                if level.is_one() {
                    Ok(halfspace(w, &-c.clone(), Rel::Le))
                } else {
                    Err(CatalogError::Symbolic(
                        "exponential sublevel boundary at log level".into(),
                    ))
                }
            }
            AtomKind::NegLog { w, c } => {
                if level.is_zero() {
                    // -log s <= 0  <=>  s >= 1
                    let neg: Vec<Rat> = w.iter().map(|v| -v.clone()).collect();
                    Ok(halfspace(&neg, &(c - &Rat::one()), Rel::Le))
                } else {
                    Err(CatalogError::Symbolic(
                        "logarithmic sublevel boundary at e^{-level}".into(),
                    ))
                }
            }
            AtomKind::HyperbolaInd => Err(CatalogError::Unsupported(
                "hyperbola indicator sublevel set".into(),
            )),
        }
    }

    /// Exact 1-D minimizers of weight*f(t) + (sigma/2) t^2 - lin*t
    /// (separable solver hook; None when no minimizer exists, error when
    /// the minimizer is irrational).
    pub fn minimize_1d(
        &self,
        weight: &Rat,
        sigma: &Rat,
        lin: &Rat,
    ) -> Result<Option<Interval>, CatalogError> {
        assert_eq!(self.arity(), 1, "separable solver needs 1-D blocks");
        // derivative: weight*df(t) + sigma t - lin must contain 0
        let sigma_pos = sigma.is_positive();
        match self {
            AtomKind::Zero => {
                if sigma_pos {
                    Ok(Some(Interval::point_rat(lin / sigma)))
                } else if lin.is_zero() {
                    Ok(Some(Interval::whole()))
                } else {
                    Ok(None)
                }
            }
            AtomKind::Linear { coef } => {
                let c = weight * &coef[0];
                if sigma_pos {
                    Ok(Some(Interval::point_rat((lin - &c) / sigma)))
                } else if c == *lin {
                    Ok(Some(Interval::whole()))
                } else {
                    Ok(None)
                }
            }
            AtomKind::Abs => Ok(Some(piecewise_linear_min(
                &[-weight.clone(), weight.clone()],
                &[rat(0)],
                sigma,
                lin,
            ))),
            AtomKind::Hinge { w, c } => {
                // 1-D block: slope 0 on the inactive side, weight*w on the other
                let slope = weight * &w[0];
                let kink = -c / &w[0];
                let slopes = if w[0].is_positive() {
                    [rat(0), slope]
                } else {
                    [slope, rat(0)]
                };
                Ok(Some(piecewise_linear_min(&slopes, &[kink], sigma, lin)))
            }
            AtomKind::HingeAbs { shift } => Ok(Some(piecewise_linear_min(
                &[-weight.clone(), rat(0), weight.clone()],
                &[-shift.clone(), shift.clone()],
                sigma,
                lin,
            ))),
            AtomKind::QuadShift { center } => {
                // weight (t - a) + sigma t = lin
                let denom = weight + sigma;
                if denom.is_zero() {
                    return Ok(None);
                }
                Ok(Some(Interval::point_rat(
                    (lin + weight * center) / denom,
                )))
            }
            AtomKind::NegLog { w, c } => {
                // -weight*w/(w t + c) + sigma t = lin, domain w t + c > 0
                let w0 = &w[0];
                if !sigma_pos {
                    // -log is unbounded below along its domain
                    return Ok(None);
                }
                // sigma w t^2 + (sigma c - lin w) t - (lin c + weight w^2) ... solve exactly:
                // multiply: sigma t (w t + c) - lin (w t + c) - weight w = 0
                let a = sigma * w0;
                let b = sigma * c - lin * w0;
                let cc = -(lin * c) - weight * w0 * w0;
                match solve_quadratic_rational(&a, &b, &cc)? {
                    Some(roots) => {
                        for t in roots {
                            if (w0 * &t + c).is_positive() {
                                return Ok(Some(Interval::point_rat(t)));
                            }
                        }
                        Ok(None)
                    }
                    None => Err(CatalogError::Symbolic(
                        "stationary point of -log branch is irrational".into(),
                    )),
                }
            }
            AtomKind::Exp { .. } => Err(CatalogError::Symbolic(
                "exponential stationarity is transcendental".into(),
            )),
            AtomKind::HingeExpDiff | AtomKind::HyperbolaInd => Err(CatalogError::Unsupported(
                "atom is not one-dimensional".into(),
            )),
        }
    }
}

fn dotr(a: &[Rat], b: &[Rat]) -> Rat {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn segment_1d(lo: Rat, hi: Rat) -> ConvexSet {
    ConvexSet::from_linsys(LinSys::new(
        1,
        vec![
            LinCon::new(vec![rat(1)], Rel::Le, hi),
            LinCon::new(vec![rat(-1)], Rel::Le, -lo),
        ],
    ))
}

fn interval_1d(lo: Bnd, hi: Bnd) -> ConvexSet {
    ConvexSet::product(vec![crate::sets::Factor::Iv(Interval::new(lo, hi))]).expect("rational")
}

fn halfline_1d(from: Rat, upward: bool) -> ConvexSet {
    if upward {
        interval_1d(Bnd::closed_rat(from), Bnd::PlusInf)
    } else {
        interval_1d(Bnd::NegInf, Bnd::closed_rat(from))
    }
}

fn hyperplane(coef: &[Rat], rhs: &Rat) -> ConvexSet {
    ConvexSet::from_linsys(LinSys::new(
        coef.len(),
        vec![LinCon::new(coef.to_vec(), Rel::Eq, rhs.clone())],
    ))
}

fn halfspace(coef: &[Rat], rhs: &Rat, rel: Rel) -> ConvexSet {
    ConvexSet::from_linsys(LinSys::new(
        coef.len(),
        vec![LinCon::new(coef.to_vec(), rel, rhs.clone())],
    ))
}

/// {t w : lo <= t <= hi}.
fn ray_segment(w: &[Rat], lo: &Rat, hi: &Rat) -> ConvexSet {
    let k = w.len();
    let mut cons = orthogonal_complement_eqs(w);
    // t = <w, x>/<w,w>
    let ww = dotr(w, w);
    let coef: Vec<Rat> = w.iter().map(|v| v / &ww).collect();
    cons.push(LinCon::new(coef.clone(), Rel::Le, hi.clone()));
    cons.push(LinCon::new(
        coef.iter().map(|v| -v.clone()).collect(),
        Rel::Le,
        -lo.clone(),
    ));
    ConvexSet::from_linsys(LinSys::new(k, cons))
}

/// {t w : 0 < t < 1}.
fn open_segment(w: &[Rat]) -> ConvexSet {
    let k = w.len();
    let mut cons = orthogonal_complement_eqs(w);
    let ww = dotr(w, w);
    let coef: Vec<Rat> = w.iter().map(|v| v / &ww).collect();
    cons.push(LinCon::new(coef.clone(), Rel::Lt, Rat::one()));
    cons.push(LinCon::new(
        coef.iter().map(|v| -v.clone()).collect(),
        Rel::Lt,
        Rat::zero(),
    ));
    ConvexSet::from_linsys(LinSys::new(k, cons))
}

/// {t w : t > 0} (positive = true) or {t w : t < 0}.
fn open_ray(w: &[Rat], positive: bool) -> ConvexSet {
    let k = w.len();
    let mut cons = orthogonal_complement_eqs(w);
    let sign = if positive { rat(-1) } else { rat(1) };
    let coef: Vec<Rat> = w.iter().map(|v| v * &sign).collect();
    cons.push(LinCon::new(coef, Rel::Lt, Rat::zero()));
    ConvexSet::from_linsys(LinSys::new(k, cons))
}

fn orthogonal_complement_eqs(w: &[Rat]) -> Vec<LinCon> {
    let k = w.len();
    let span = crate::linalg::Subspace::new(k, vec![w.to_vec()]).expect("nonzero direction");
    span.orthogonal_complement()
        .basis()
        .iter()
        .map(|row| LinCon::new(row.clone(), Rel::Eq, Rat::zero()))
        .collect()
}

fn ray_segment_checked_exp(y0: &Rat) -> Result<ConvexSet, CatalogError> {
    if y0.is_zero() {
        // {t (1, -1) : t in [0, 1]}
        Ok(ray_segment(&[rat(1), rat(-1)], &rat(0), &rat(1)))
    } else {
        Err(CatalogError::Symbolic(format!(
            "kink gradient ray at e^{}",
            render_rat(y0)
        )))
    }
}

/// u = t w for some scalar t?
fn on_ray(u: &[Rat], w: &[Rat]) -> Option<Rat> {
    let i = w.iter().position(|v| !v.is_zero())?;
    let t = &u[i] / &w[i];
    for (uj, wj) in u.iter().zip(w) {
        if *uj != wj * &t {
            return None;
        }
    }
    Some(t)
}

pub(crate) fn rational_sqrt(r: &Rat) -> Option<Rat> {
    use num_bigint::BigInt;
    use num_traits::Signed as _;
    if r.is_negative() {
        return None;
    }
    let sqrt_int = |n: &BigInt| -> Option<BigInt> {
        let s = n.sqrt();
        if &(&s * &s) == n {
            Some(s)
        } else {
            None
        }
    };
    let sn = sqrt_int(r.numer())?;
    let sd = sqrt_int(r.denom())?;
    Some(Rat::new(sn, sd))
}

/// Minimizes g(t) = f_pw(t) + (sigma/2) t^2 - lin t for a convex piecewise
/// linear f_pw with `slopes.len() == kinks.len() + 1`: slope i rules the
/// piece (kinks[i-1], kinks[i]) with kinks sorted ascending. Returns the
/// exact argmin set (empty interval when no minimizer exists).
fn piecewise_linear_min(slopes: &[Rat], kinks: &[Rat], sigma: &Rat, lin: &Rat) -> Interval {
    debug_assert_eq!(slopes.len(), kinks.len() + 1);
    debug_assert!(kinks.windows(2).all(|w| w[0] <= w[1]));
    let empty = || Interval::new(Bnd::open_rat(rat(0)), Bnd::open_rat(rat(0)));
    if sigma.is_positive() {
        // strictly convex: unique stationary point
        for (i, slope) in slopes.iter().enumerate() {
            let t = (lin - slope) / sigma;
            let left_ok = i == 0 || t >= kinks[i - 1];
            let right_ok = i == kinks.len() || t <= kinks[i];
            if left_ok && right_ok {
                return Interval::point_rat(t);
            }
        }
        for (j, k) in kinks.iter().enumerate() {
            let quad = sigma * k - lin;
            let lo = &slopes[j] + &quad;
            let hi = &slopes[j + 1] + &quad;
            if !lo.is_positive() && !hi.is_negative() {
                return Interval::point_rat(k.clone());
            }
        }
        unreachable!("strictly convex 1-D objective always has a minimizer");
    }
    debug_assert!(sigma.is_zero());
    // effective slopes of g (non-decreasing by convexity)
    let eff: Vec<Rat> = slopes.iter().map(|s| s - lin).collect();
    if eff.first().unwrap().is_positive() || eff.last().unwrap().is_negative() {
        // strictly monotone toward an unbounded end: infimum unattained
        return empty();
    }
    let lo = if eff[0].is_zero() {
        Bnd::NegInf
    } else {
        // last piece with negative slope ends the descent
        let j = eff.iter().rposition(|s| s.is_negative()).unwrap();
        Bnd::closed_rat(kinks[j].clone())
    };
    let hi = if eff.last().unwrap().is_zero() {
        Bnd::PlusInf
    } else {
        let j = eff.iter().position(|s| s.is_positive()).unwrap();
        Bnd::closed_rat(kinks[j - 1].clone())
    };
    Interval::new(lo, hi)
}

/// Rational roots of a t^2 + b t + c = 0; Ok(None) when real roots exist but
/// are irrational, empty vec when no real roots.
fn solve_quadratic_rational(
    a: &Rat,
    b: &Rat,
    c: &Rat,
) -> Result<Option<Vec<Rat>>, CatalogError> {
    if a.is_zero() {
        if b.is_zero() {
            return Ok(Some(vec![]));
        }
        return Ok(Some(vec![-c / b]));
    }
    let disc = b * b - rat(4) * a * c;
    if disc.is_negative() {
        return Ok(Some(vec![]));
    }
    match rational_sqrt(&disc) {
        Some(s) => {
            let two_a = rat(2) * a;
            Ok(Some(vec![(-b + &s) / &two_a, (-b - &s) / &two_a]))
        }
        None => Ok(None),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    #[test]
    fn abs_conj_subdiff() {
        let a = AtomKind::Abs;
        assert!(a.conj_subdiff(&[ratio(1, 2)]).unwrap().is_zero_singleton().unwrap());
        assert_eq!(a.conj_subdiff(&[rat(1)]).unwrap().render(), "[0,inf)");
        assert_eq!(a.conj_subdiff(&[rat(-1)]).unwrap().render(), "(-inf,0]");
        assert!(a.conj_subdiff(&[rat(2)]).unwrap().is_empty());
    }

    #[test]
    fn hinge_exp_diff_tables() {
        let h = AtomKind::HingeExpDiff;
        // conj at origin is the analytic region {y1 >= e^{y0}}
        let s = h.conj_subdiff(&[rat(0), rat(0)]).unwrap();
        assert!(s.as_exp_region().is_some());
        assert!(s.contains_point(&[rat(0), rat(2)]).unwrap());
        assert!(!s.contains_point(&[rat(0), rat(0)]).unwrap());
        // recession values
        assert_eq!(h.recession(&[rat(-1), rat(0)]), ExtVal::zero());
        assert_eq!(h.recession(&[rat(0), rat(-1)]), ExtVal::from_rat(rat(1)));
        assert_eq!(h.recession(&[rat(1), rat(0)]), ExtVal::PlusInf);
        // subdifferential on the kink line (only rational point y0 = 0, y1 = 1)
        let seg = h.subdiff(&[rat(0), rat(1)]).unwrap();
        assert!(seg.contains_point(&[rat(1), rat(-1)]).unwrap());
        assert!(seg.contains_point(&[ratio(1, 2), ratio(-1, 2)]).unwrap());
        assert!(!seg.contains_point(&[rat(2), rat(-2)]).unwrap());
    }

    #[test]
    fn hinge_conj_pieces() {
        // max{t, 0} in one variable
        let h = AtomKind::Hinge {
            w: vec![rat(1)],
            c: rat(0),
        };
        assert_eq!(h.conj_subdiff(&[rat(0)]).unwrap().render(), "(-inf,0]");
        assert!(h
            .conj_subdiff(&[ratio(1, 2)])
            .unwrap()
            .is_zero_singleton()
            .unwrap());
        assert_eq!(h.conj_subdiff(&[rat(1)]).unwrap().render(), "[0,inf)");
        assert!(h.conj_subdiff(&[rat(2)]).unwrap().is_empty());
    }

    #[test]
    fn neglog_exact_pieces() {
        let nl = AtomKind::NegLog {
            w: vec![rat(1)],
            c: rat(0),
        };
        assert_eq!(nl.eval(&[rat(0)]), ExtVal::PlusInf);
        assert_eq!(nl.eval(&[rat(1)]), ExtVal::zero());
        // df(2) = {-1/2}
        let s = nl.subdiff(&[rat(2)]).unwrap();
        assert_eq!(s.is_singleton().unwrap(), Some(vec![ratio(-1, 2)]));
        // df*(-2) = {1/2}
        let c = nl.conj_subdiff(&[rat(-2)]).unwrap();
        assert_eq!(c.is_singleton().unwrap(), Some(vec![ratio(1, 2)]));
        assert!(nl.conj_subdiff(&[rat(1)]).unwrap().is_empty());
    }

    #[test]
    fn one_dim_minimizers() {
        // |t| + (1/2)(t - z)^2: soft threshold at 1
        let abs = AtomKind::Abs;
        let m = abs.minimize_1d(&rat(1), &rat(1), &rat(3)).unwrap().unwrap();
        assert_eq!(m.render(), "{2}");
        let m = abs.minimize_1d(&rat(1), &rat(1), &ratio(1, 2)).unwrap().unwrap();
        assert_eq!(m.render(), "{0}");
        // hinge(t) alone (sigma = 0): argmin = (-inf, 0]
        let h = AtomKind::Hinge {
            w: vec![rat(1)],
            c: rat(0),
        };
        let m = h.minimize_1d(&rat(1), &rat(0), &rat(0)).unwrap().unwrap();
        assert_eq!(m.render(), "(-inf,0]");
        // linear alone: no minimizer
        let l = AtomKind::Linear { coef: vec![rat(1)] };
        assert!(l.minimize_1d(&rat(1), &rat(0), &rat(0)).unwrap().is_none());
        // -log t + (1/2) t^2: t = 1
        let nl = AtomKind::NegLog {
            w: vec![rat(1)],
            c: rat(0),
        };
        let m = nl.minimize_1d(&rat(1), &rat(1), &rat(0)).unwrap().unwrap();
        assert_eq!(m.render(), "{1}");
        // hinge_abs(t, 1) + (1/2)(t-1)^2 -> stays at 1? derivative at 1: [0,1] + 0 contains 0 -> t=1
        let ha = AtomKind::HingeAbs { shift: rat(1) };
        let m = ha.minimize_1d(&rat(1), &rat(1), &rat(1)).unwrap().unwrap();
        assert_eq!(m.render(), "{1}");
    }

    #[test]
    fn sublevels() {
        let h = AtomKind::HingeExpDiff;
        let s = h.sublevel(&rat(0)).unwrap();
        // {y1 >= e^{y0}}
        assert!(s.contains_point(&[rat(0), rat(1)]).unwrap());
        assert!(!s.contains_point(&[rat(0), ratio(1, 2)]).unwrap());
        let q = AtomKind::QuadShift { center: rat(1) };
        assert_eq!(q.sublevel(&rat(2)).unwrap().render(), "[-1,3]");
        assert!(q.sublevel(&rat(1)).is_err()); // sqrt(2) irrational
        let ha = AtomKind::HingeAbs { shift: rat(1) };
        assert_eq!(ha.sublevel(&rat(0)).unwrap().render(), "[-1,1]");
    }
}
