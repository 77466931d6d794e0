//! Infimal postcomposition A|>f : t -> inf{f(x) : a.x = t} for a single
//! row a, materialized as an exact 1-D object: the subgradient graph
//! d(A|>f), the set where the infimum is attained, and properness flags.
//! Built by block rules: free blocks (a zero on their coordinates)
//! contribute their infima; exactly one measured block shapes t.

use crate::atoms::{AtomKind, FuncExpr};
use crate::graph1d::{Graph1, GraphError, GraphPiece, PieceFn};
use crate::scalar::Rat;
use crate::sets::interval::{Bnd, Interval, IntervalUnion};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone)]
pub struct InfPost {
    /// d(A|>f); the empty graph when A|>f is improper.
    pub subgrad: Graph1,
    /// A|>f identically -inf on its domain.
    pub improper: bool,
    /// {t : the infimum defining (A|>f)(t) is attained} = dom(A |> df).
    pub exact_set: IntervalUnion,
    /// dom(A|>f) = A(dom f).
    pub domain: IntervalUnion,
}

impl InfPost {
    /// Maximal monotonicity of d(A|>f) via Minty: ran(I + T) = R.
    pub fn subgrad_maximal(&self) -> Result<bool, GraphError> {
        if self.improper {
            return Ok(false);
        }
        Ok(self.subgrad.range_with_identity()?.is_whole_line())
    }

    /// Exact on all of dom d(A|>f)?
    pub fn exact_on_subgrad_domain(&self) -> Result<bool, GraphError> {
        let dom = self.subgrad.domain()?;
        for part in &dom.parts {
            let mut covered = false;
            for e in &self.exact_set.parts {
                if covers(e, part)? {
                    covered = true;
                    break;
                }
            }
            if !covered {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn covers(outer: &Interval, inner: &Interval) -> Result<bool, GraphError> {
    use std::cmp::Ordering;
    let lo_ok = match (&outer.lo, &inner.lo) {
        (Bnd::NegInf, _) => true,
        (_, Bnd::NegInf) => false,
        (Bnd::Open(a) | Bnd::Closed(a), Bnd::Open(b) | Bnd::Closed(b)) => match a.cmp_exact(b)? {
            Ordering::Less => true,
            Ordering::Equal => {
                !(matches!(outer.lo, Bnd::Open(_)) && matches!(inner.lo, Bnd::Closed(_)))
            }
            Ordering::Greater => false,
        },
        _ => false,
    };
    if !lo_ok {
        return Ok(false);
    }
    Ok(match (&outer.hi, &inner.hi) {
        (Bnd::PlusInf, _) => true,
        (_, Bnd::PlusInf) => false,
        (Bnd::Open(a) | Bnd::Closed(a), Bnd::Open(b) | Bnd::Closed(b)) => match a.cmp_exact(b)? {
            Ordering::Greater => true,
            Ordering::Equal => {
                !(matches!(outer.hi, Bnd::Open(_)) && matches!(inner.hi, Bnd::Closed(_)))
            }
            Ordering::Less => false,
        },
        _ => false,
    })
}

/// (infimum over a free block, attained?); None encodes -infinity.
fn free_block_inf(kind: &AtomKind) -> Option<bool> {
    match kind {
        AtomKind::Zero
        | AtomKind::Abs
        | AtomKind::HingeAbs { .. }
        | AtomKind::QuadShift { .. }
        | AtomKind::Hinge { .. }
        | AtomKind::HingeExpDiff
        | AtomKind::HyperbolaInd => Some(true),
        AtomKind::Exp { .. } => Some(false),
        AtomKind::Linear { coef } => {
            if coef.iter().all(|c| c.is_zero()) {
                Some(true)
            } else {
                None
            }
        }
        AtomKind::NegLog { .. } => None,
    }
}

/// Primal subdifferential graph of a 1-D atom (over its own variable).
fn atom_subdiff_graph_1d(kind: &AtomKind) -> Result<Vec<GraphPiece>, GraphError> {
    let z = Rat::zero();
    Ok(match kind {
        AtomKind::Zero => vec![GraphPiece {
            dom: Interval::whole(),
            out: PieceFn::Const(Interval::point_rat(z)),
        }],
        AtomKind::Linear { coef } => vec![GraphPiece {
            dom: Interval::whole(),
            out: PieceFn::Const(Interval::point_rat(coef[0].clone())),
        }],
        AtomKind::Abs => vec![
            GraphPiece {
                dom: Interval::new(Bnd::NegInf, Bnd::open_rat(z.clone())),
                out: PieceFn::Const(Interval::point_rat(-Rat::one())),
            },
            GraphPiece {
                dom: Interval::point_rat(z.clone()),
                out: PieceFn::Const(Interval::new(
                    Bnd::closed_rat(-Rat::one()),
                    Bnd::closed_rat(Rat::one()),
                )),
            },
            GraphPiece {
                dom: Interval::new(Bnd::open_rat(z), Bnd::PlusInf),
                out: PieceFn::Const(Interval::point_rat(Rat::one())),
            },
        ],
        AtomKind::HingeAbs { shift } => vec![
            GraphPiece {
                dom: Interval::new(Bnd::NegInf, Bnd::open_rat(-shift.clone())),
                out: PieceFn::Const(Interval::point_rat(-Rat::one())),
            },
            GraphPiece {
                dom: Interval::point_rat(-shift.clone()),
                out: PieceFn::Const(Interval::new(
                    Bnd::closed_rat(-Rat::one()),
                    Bnd::closed_rat(Rat::zero()),
                )),
            },
            GraphPiece {
                dom: Interval::new(Bnd::open_rat(-shift.clone()), Bnd::open_rat(shift.clone())),
                out: PieceFn::Const(Interval::point_rat(Rat::zero())),
            },
            GraphPiece {
                dom: Interval::point_rat(shift.clone()),
                out: PieceFn::Const(Interval::new(
                    Bnd::closed_rat(Rat::zero()),
                    Bnd::closed_rat(Rat::one()),
                )),
            },
            GraphPiece {
                dom: Interval::new(Bnd::open_rat(shift.clone()), Bnd::PlusInf),
                out: PieceFn::Const(Interval::point_rat(Rat::one())),
            },
        ],
        AtomKind::Hinge { w, c } => {
            let w0 = &w[0];
            let kink = -c / w0;
            let below = Interval::new(Bnd::NegInf, Bnd::open_rat(kink.clone()));
            let above = Interval::new(Bnd::open_rat(kink.clone()), Bnd::PlusInf);
            let (lo_val, hi_val) = if w0.is_positive() {
                (Rat::zero(), w0.clone())
            } else {
                (w0.clone(), Rat::zero())
            };
            let (below_out, above_out) = if w0.is_positive() {
                (Rat::zero(), w0.clone())
            } else {
                (w0.clone(), Rat::zero())
            };
            vec![
                GraphPiece {
                    dom: below,
                    out: PieceFn::Const(Interval::point_rat(below_out)),
                },
                GraphPiece {
                    dom: Interval::point_rat(kink),
                    out: PieceFn::Const(Interval::new(
                        Bnd::closed_rat(lo_val),
                        Bnd::closed_rat(hi_val),
                    )),
                },
                GraphPiece {
                    dom: above,
                    out: PieceFn::Const(Interval::point_rat(above_out)),
                },
            ]
        }
        AtomKind::QuadShift { center } => vec![GraphPiece {
            dom: Interval::whole(),
            out: PieceFn::Affine {
                a: -center.clone(),
                b: Rat::one(),
            },
        }],
        AtomKind::Exp { w, c } => {
            let w0 = &w[0];
            // d/dx e^{w0 x + c} = w0 e^{w0(x + c/w0)}
            vec![GraphPiece {
                dom: Interval::whole(),
                out: PieceFn::Exp {
                    scale: w0.clone(),
                    rate: w0.clone(),
                    vshift: -c / w0,
                    shift: Rat::zero(),
                },
            }]
        }
        AtomKind::NegLog { w, c } => {
            let w0 = &w[0];
            // dom: w0 x + c > 0; derivative -w0/(w0 x + c) = -1/(x + c/w0)
            let pole = -c / w0;
            let dom = if w0.is_positive() {
                Interval::new(Bnd::open_rat(pole.clone()), Bnd::PlusInf)
            } else {
                Interval::new(Bnd::NegInf, Bnd::open_rat(pole.clone()))
            };
            vec![GraphPiece {
                dom,
                out: PieceFn::Recip {
                    scale: -Rat::one(),
                    vshift: pole,
                    shift: Rat::zero(),
                },
            }]
        }
        AtomKind::HingeExpDiff | AtomKind::HyperbolaInd => {
            return Err(GraphError::Unsupported(
                "atom is not one-dimensional".into(),
            ))
        }
    })
}

fn transform(p: &GraphPiece, in_scale: &Rat, out_scale: &Rat) -> GraphPiece {
    let dom = p.dom.scale(&(Rat::one() / in_scale));
    let out = match &p.out {
        PieceFn::Const(iv) => PieceFn::Const(iv.scale(out_scale)),
        PieceFn::Affine { a, b } => PieceFn::Affine {
            a: a * out_scale,
            b: b * out_scale * in_scale,
        },
        PieceFn::Recip {
            scale,
            vshift,
            shift,
        } => PieceFn::Recip {
            scale: scale * out_scale / in_scale,
            vshift: vshift / in_scale,
            shift: shift * out_scale,
        },
        PieceFn::Log {
            scale,
            inner,
            vshift,
            shift,
        } => PieceFn::Log {
            scale: scale * out_scale,
            inner: inner * in_scale,
            vshift: vshift / in_scale,
            shift: shift * out_scale,
        },
        PieceFn::Exp {
            scale,
            rate,
            vshift,
            shift,
        } => PieceFn::Exp {
            scale: scale * out_scale,
            rate: rate * in_scale,
            vshift: vshift / in_scale,
            shift: shift * out_scale,
        },
    };
    GraphPiece { dom, out }
}

struct Measured {
    subgrad: Vec<GraphPiece>,
    exact: IntervalUnion,
    domain: IntervalUnion,
    improper: bool,
}

fn whole_union() -> IntervalUnion {
    IntervalUnion::whole()
}

fn measured_block(
    kind: &AtomKind,
    weight: &Rat,
    a_block: &[Rat],
) -> Result<Measured, GraphError> {
    let zero_fn = |exact: IntervalUnion| Measured {
        subgrad: vec![GraphPiece {
            dom: Interval::whole(),
            out: PieceFn::Const(Interval::point_rat(Rat::zero())),
        }],
        exact,
        domain: whole_union(),
        improper: false,
    };
    match kind {
        // one-dimensional measured block: h(t) = weight*g(t/a_c)
        AtomKind::Zero
        | AtomKind::Abs
        | AtomKind::HingeAbs { .. }
        | AtomKind::QuadShift { .. } => {
            let a_c = &a_block[0];
            let base = atom_subdiff_graph_1d(kind)?;
            let in_scale = Rat::one() / a_c;
            let out_scale = weight / a_c;
            let subgrad = base
                .iter()
                .map(|p| transform(p, &in_scale, &out_scale))
                .collect();
            Ok(Measured {
                subgrad,
                exact: whole_union(),
                domain: whole_union(),
                improper: false,
            })
        }
        AtomKind::Linear { coef } => {
            if coef.len() == 1 {
                let a_c = &a_block[0];
                let slope = weight * &coef[0] / a_c;
                return Ok(Measured {
                    subgrad: vec![GraphPiece {
                        dom: Interval::whole(),
                        out: PieceFn::Const(Interval::point_rat(slope)),
                    }],
                    exact: whole_union(),
                    domain: whole_union(),
                    improper: false,
                });
            }
            match crate::atoms::kinds_parallel(a_block, coef) {
                Some(kappa) if !kappa.is_zero() => {
                    // c = kappa a: h(t) = weight*kappa*t
                    let slope = weight * &kappa;
                    Ok(Measured {
                        subgrad: vec![GraphPiece {
                            dom: Interval::whole(),
                            out: PieceFn::Const(Interval::point_rat(slope)),
                        }],
                        exact: whole_union(),
                        domain: whole_union(),
                        improper: false,
                    })
                }
                _ => Ok(Measured {
                    subgrad: Vec::new(),
                    exact: IntervalUnion::empty(),
                    domain: whole_union(),
                    improper: true,
                }),
            }
        }
        AtomKind::Hinge { w, .. } if w.len() == 1 => {
            let a_c = &a_block[0];
            let base = atom_subdiff_graph_1d(kind)?;
            let in_scale = Rat::one() / a_c;
            let out_scale = weight / a_c;
            let subgrad = base
                .iter()
                .map(|p| transform(p, &in_scale, &out_scale))
                .collect();
            Ok(Measured {
                subgrad,
                exact: whole_union(),
                domain: whole_union(),
                improper: false,
            })
        }
        AtomKind::Hinge { w, c } => match crate::atoms::kinds_parallel(a_block, w) {
            Some(mu) if !mu.is_zero() => {
                // h(t) = weight*max{t/mu + c, 0}: 1-D hinge in t
                let eff = AtomKind::Hinge {
                    w: vec![Rat::one() / &mu],
                    c: c.clone(),
                };
                let base = atom_subdiff_graph_1d(&eff)?;
                let subgrad = base
                    .iter()
                    .map(|p| transform(p, &Rat::one(), weight))
                    .collect();
                Ok(Measured {
                    subgrad,
                    exact: whole_union(),
                    domain: whole_union(),
                    improper: false,
                })
            }
            _ => Ok(zero_fn(whole_union())),
        },
        AtomKind::Exp { w, c } => match crate::atoms::kinds_parallel(a_block, w) {
            Some(mu) if !mu.is_zero() => {
                // h(t) = weight e^{t/mu + c}
                let subgrad = vec![GraphPiece {
                    dom: Interval::whole(),
                    out: PieceFn::Exp {
                        scale: weight / &mu,
                        rate: Rat::one() / &mu,
                        vshift: -(c * &mu),
                        shift: Rat::zero(),
                    },
                }];
                Ok(Measured {
                    subgrad,
                    exact: whole_union(),
                    domain: whole_union(),
                    improper: false,
                })
            }
            _ => {
                // the exponent escapes to -inf: value 0, never attained
                Ok(Measured {
                    exact: IntervalUnion::empty(),
                    ..zero_fn(IntervalUnion::empty())
                })
            }
        },
        AtomKind::NegLog { w, c } => match crate::atoms::kinds_parallel(a_block, w) {
            Some(mu) if !mu.is_zero() => {
                // h(t) = -weight*log(t/mu + c): pole at t = -c mu
                let pole = -(c * &mu);
                let dom = if mu.is_positive() {
                    Interval::new(Bnd::open_rat(pole.clone()), Bnd::PlusInf)
                } else {
                    Interval::new(Bnd::NegInf, Bnd::open_rat(pole.clone()))
                };
                let subgrad = vec![GraphPiece {
                    dom: dom.clone(),
                    out: PieceFn::Recip {
                        scale: -weight.clone(),
                        vshift: pole,
                        shift: Rat::zero(),
                    },
                }];
                Ok(Measured {
                    subgrad,
                    exact: IntervalUnion::from_parts(vec![dom.clone()])?,
                    domain: IntervalUnion::from_parts(vec![dom])?,
                    improper: false,
                })
            }
            _ => Ok(Measured {
                subgrad: Vec::new(),
                exact: IntervalUnion::empty(),
                domain: whole_union(),
                improper: true,
            }),
        },
        AtomKind::HingeExpDiff => {
            let a0 = &a_block[0]; // exponent coordinate
            let a1 = &a_block[1]; // linear coordinate
            if !a0.is_zero() && !a1.is_zero() {
                return Err(GraphError::Unsupported(
                    "postcomposition of the exponential hinge along a mixed row".into(),
                ));
            }
            if !a0.is_zero() {
                // measures the exponent: infimum 0 attained for every t
                return Ok(zero_fn(whole_union()));
            }
            // measures the linear coordinate: h(t) = weight*max{-t/a1, 0},
            // attained exactly when t/a1 > 0
            let eff = AtomKind::Hinge {
                w: vec![-(Rat::one() / a1)],
                c: Rat::zero(),
            };
            let base = atom_subdiff_graph_1d(&eff)?;
            let subgrad = base
                .iter()
                .map(|p| transform(p, &Rat::one(), weight))
                .collect();
            let exact = if a1.is_positive() {
                IntervalUnion::from_parts(vec![Interval::new(
                    Bnd::open_rat(Rat::zero()),
                    Bnd::PlusInf,
                )])?
            } else {
                IntervalUnion::from_parts(vec![Interval::new(
                    Bnd::NegInf,
                    Bnd::open_rat(Rat::zero()),
                )])?
            };
            Ok(Measured {
                subgrad,
                exact,
                domain: whole_union(),
                improper: false,
            })
        }
        AtomKind::HyperbolaInd => {
            let a0 = &a_block[0];
            let a1 = &a_block[1];
            if !a0.is_zero() && !a1.is_zero() {
                return Err(GraphError::Unsupported(
                    "hyperbola postcomposition along a mixed row".into(),
                ));
            }
            let a = if a0.is_zero() { a1 } else { a0 };
            // h = indicator of {t/a > 0}
            let dom = if a.is_positive() {
                Interval::new(Bnd::open_rat(Rat::zero()), Bnd::PlusInf)
            } else {
                Interval::new(Bnd::NegInf, Bnd::open_rat(Rat::zero()))
            };
            Ok(Measured {
                subgrad: vec![GraphPiece {
                    dom: dom.clone(),
                    out: PieceFn::Const(Interval::point_rat(Rat::zero())),
                }],
                exact: IntervalUnion::from_parts(vec![dom.clone()])?,
                domain: IntervalUnion::from_parts(vec![dom])?,
                improper: false,
            })
        }
    }
}

/// Builds A|>f for a single row; typed error outside the catalog.
pub fn inf_postcomposition(f: &FuncExpr, a_row: &[Rat]) -> Result<InfPost, GraphError> {
    assert_eq!(a_row.len(), f.dim());
    let blocks = f
        .blocks()
        .map_err(|e| GraphError::Unsupported(e.to_string()))?;
    let mut measured: Option<Measured> = None;
    let mut free_all_attained = true;
    let mut improper = false;
    for t in &blocks {
        let a_block: Vec<Rat> = t.coords.iter().map(|&c| a_row[c].clone()).collect();
        if a_block.iter().all(|c| c.is_zero()) {
            match free_block_inf(&t.kind) {
                Some(att) => free_all_attained &= att,
                None => improper = true,
            }
        } else {
            if measured.is_some() {
                return Err(GraphError::Unsupported(
                    "row measures several function blocks".into(),
                ));
            }
            measured = Some(measured_block(&t.kind, &t.weight, &a_block)?);
        }
    }
    let m = measured.unwrap_or_else(|| Measured {
        subgrad: vec![GraphPiece {
            dom: Interval::whole(),
            out: PieceFn::Const(Interval::point_rat(Rat::zero())),
        }],
        exact: whole_union(),
        domain: whole_union(),
        improper: false,
    });
    let improper = improper || m.improper;
    if improper {
        return Ok(InfPost {
            subgrad: Graph1::empty(),
            improper: true,
            exact_set: IntervalUnion::empty(),
            domain: m.domain,
        });
    }
    let exact_set = if free_all_attained {
        m.exact
    } else {
        IntervalUnion::empty()
    };
    Ok(InfPost {
        subgrad: Graph1 { pieces: m.subgrad },
        improper: false,
        exact_set,
        domain: m.domain,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::dsl::parse_func;
    use crate::scalar::rat;

    fn build(src: &str, dim: usize, a: Vec<i64>) -> InfPost {
        let f = parse_func(src, dim).unwrap();
        let a: Vec<Rat> = a.into_iter().map(rat).collect();
        inf_postcomposition(&f, &a).unwrap()
    }

    #[test]
    fn linear_is_improper() {
        let ip = build("lin(1, 0)", 2, vec![0, 1]);
        assert!(ip.improper);
        assert!(!ip.subgrad_maximal().unwrap());
    }

    #[test]
    fn exp_measured_and_free() {
        // measured: A|>f = e^t, maximal, exact everywhere
        let ip = build("exp(x1)", 2, vec![1, 0]);
        assert!(!ip.improper);
        assert!(ip.subgrad_maximal().unwrap());
        assert!(ip.exact_on_subgrad_domain().unwrap());
        // free: A|>f = 0 (inf e^x unattained): maximal but exact nowhere
        let ip = build("exp(x1)", 2, vec![0, 1]);
        assert!(!ip.improper);
        assert!(ip.subgrad_maximal().unwrap());
        assert!(!ip.exact_on_subgrad_domain().unwrap());
        assert!(ip.exact_set.is_empty());
    }

    #[test]
    fn hinge_free_is_exact() {
        let ip = build("hinge(x1)", 2, vec![0, 1]);
        assert!(ip.subgrad_maximal().unwrap());
        assert!(ip.exact_on_subgrad_domain().unwrap());
    }

    #[test]
    fn hed_linear_row() {
        // measures the linear coordinate: subgradient of max{-t, 0}
        let ip = build("hinge_expdiff(x2, x1)", 2, vec![1, 0]);
        assert!(!ip.improper);
        assert!(ip.subgrad_maximal().unwrap()); // piecewise-linear, maximal
        assert!(!ip.exact_on_subgrad_domain().unwrap()); // exact only on (0,inf)
        assert_eq!(ip.exact_set.render(), "(0,inf)");
        // measures the exponent: zero function, exact everywhere
        let ip = build("hinge_expdiff(x2, x1)", 2, vec![0, 1]);
        assert!(ip.subgrad_maximal().unwrap());
        assert!(ip.exact_on_subgrad_domain().unwrap());
    }

    #[test]
    fn neglog_measured() {
        let ip = build("neglog(x1)", 1, vec![1]);
        assert!(ip.subgrad_maximal().unwrap());
        assert!(ip.exact_on_subgrad_domain().unwrap());
        assert_eq!(ip.domain.render(), "(0,inf)");
    }

    #[test]
    fn prox_membership_on_hed_row() {
        // d(A|>f) for the hinge-of-exponential measured on the linear
        // coordinate: prox at b = 0 is t* = 0, which is NOT in the exact set
        let ip = build("hinge_expdiff(x2, x1)", 2, vec![1, 0]);
        match ip.subgrad.resolvent(&rat(0)).unwrap() {
            crate::graph1d::Resolvent::Rational(v) => assert_eq!(v, rat(0)),
            other => panic!("{other:?}"),
        }
        assert_eq!(
            ip.subgrad
                .resolvent_in_union(&rat(0), &ip.exact_set)
                .unwrap(),
            Some(false)
        );
        // for b = 2 the prox is positive and exact
        assert_eq!(
            ip.subgrad
                .resolvent_in_union(&rat(2), &ip.exact_set)
                .unwrap(),
            Some(true)
        );
    }
}
