//! Builds the exact piecewise graph of v -> (A o df* o A^T)(v) for a single
//! measurement row A = a^T. Per-block conjugate graphs are mapped through
//! u = (a_c/weight) v, scaled by the output functional, and summed cell by
//! cell over a common breakpoint refinement.

use crate::atoms::{AtomKind, FuncExpr};
use crate::graph1d::{Graph1, GraphError, GraphPiece, PieceFn};
use crate::scalar::{rat, Rat};
use crate::sets::interval::{Bnd, Interval};
use crate::sym::SymVal;
use num_traits::{One, Signed, Zero};

/// Contribution of one block: a graph over v (empty output when absent).
struct BlockGraph {
    pieces: Vec<GraphPiece>,
}

fn whole_dom() -> Interval {
    Interval::whole()
}

fn point_dom(v: Rat) -> Interval {
    Interval::point_rat(v)
}

fn const_piece(dom: Interval, iv: Interval) -> GraphPiece {
    GraphPiece {
        dom,
        out: PieceFn::Const(iv),
    }
}

/// Conjugate graph of a 1-D atom over its dual variable u, outputs in x.
fn atom_conj_graph_1d(kind: &AtomKind) -> Result<Vec<GraphPiece>, GraphError> {
    let zero = Rat::zero();
    Ok(match kind {
        AtomKind::Zero => vec![const_piece(point_dom(zero), Interval::whole())],
        AtomKind::Linear { coef } => {
            vec![const_piece(point_dom(coef[0].clone()), Interval::whole())]
        }
        AtomKind::Abs => vec![
            const_piece(
                point_dom(rat(-1)),
                Interval::new(Bnd::NegInf, Bnd::closed_rat(rat(0))),
            ),
            const_piece(
                Interval::new(Bnd::open_rat(rat(-1)), Bnd::open_rat(rat(1))),
                Interval::point_rat(rat(0)),
            ),
            const_piece(
                point_dom(rat(1)),
                Interval::new(Bnd::closed_rat(rat(0)), Bnd::PlusInf),
            ),
        ],
        AtomKind::HingeAbs { shift } => vec![
            const_piece(
                point_dom(rat(-1)),
                Interval::new(Bnd::NegInf, Bnd::closed_rat(-shift.clone())),
            ),
            const_piece(
                Interval::new(Bnd::open_rat(rat(-1)), Bnd::open_rat(rat(0))),
                Interval::point_rat(-shift.clone()),
            ),
            const_piece(
                point_dom(rat(0)),
                Interval::new(
                    Bnd::closed_rat(-shift.clone()),
                    Bnd::closed_rat(shift.clone()),
                ),
            ),
            const_piece(
                Interval::new(Bnd::open_rat(rat(0)), Bnd::open_rat(rat(1))),
                Interval::point_rat(shift.clone()),
            ),
            const_piece(
                point_dom(rat(1)),
                Interval::new(Bnd::closed_rat(shift.clone()), Bnd::PlusInf),
            ),
        ],
        AtomKind::Hinge { w, c } => {
            let w0 = &w[0];
            let kink = -c / w0; // x at the hinge boundary
            let at_zero = if w0.is_positive() {
                Interval::new(Bnd::NegInf, Bnd::closed_rat(kink.clone()))
            } else {
                Interval::new(Bnd::closed_rat(kink.clone()), Bnd::PlusInf)
            };
            let at_w = if w0.is_positive() {
                Interval::new(Bnd::closed_rat(kink.clone()), Bnd::PlusInf)
            } else {
                Interval::new(Bnd::NegInf, Bnd::closed_rat(kink.clone()))
            };
            let (between_lo, between_hi) = if w0.is_positive() {
                (Bnd::open_rat(zero.clone()), Bnd::open_rat(w0.clone()))
            } else {
                (Bnd::open_rat(w0.clone()), Bnd::open_rat(zero.clone()))
            };
            vec![
                const_piece(point_dom(zero.clone()), at_zero),
                const_piece(
                    Interval::new(between_lo, between_hi),
                    Interval::point_rat(kink),
                ),
                const_piece(point_dom(w0.clone()), at_w),
            ]
        }
        AtomKind::QuadShift { center } => vec![GraphPiece {
            dom: whole_dom(),
            out: PieceFn::Affine {
                a: center.clone(),
                b: Rat::one(),
            },
        }],
        AtomKind::Exp { w, c } => {
            let w0 = &w[0];
            // dom: u/w0 > 0; x = (log(u/w0) - c)/w0
            let dom = if w0.is_positive() {
                Interval::new(Bnd::open_rat(zero.clone()), Bnd::PlusInf)
            } else {
                Interval::new(Bnd::NegInf, Bnd::open_rat(zero.clone()))
            };
            vec![GraphPiece {
                dom,
                out: PieceFn::Log {
                    scale: Rat::one() / w0,
                    inner: Rat::one() / w0,
                    vshift: Rat::zero(),
                    shift: -c / w0,
                },
            }]
        }
        AtomKind::NegLog { w, c } => {
            let w0 = &w[0];
            // dom: u/w0 < 0; x = -1/u - c/w0
            let dom = if w0.is_positive() {
                Interval::new(Bnd::NegInf, Bnd::open_rat(zero.clone()))
            } else {
                Interval::new(Bnd::open_rat(zero.clone()), Bnd::PlusInf)
            };
            vec![GraphPiece {
                dom,
                out: PieceFn::Recip {
                    scale: -Rat::one(),
                    vshift: Rat::zero(),
                    shift: -c / w0,
                },
            }]
        }
        AtomKind::HingeExpDiff | AtomKind::HyperbolaInd => {
            return Err(GraphError::Unsupported("atom is not one-dimensional".into()))
        }
    })
}

fn transform_piece(p: &GraphPiece, in_scale: &Rat, out_scale: &Rat) -> GraphPiece {
    // new dom: v = u / in_scale
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

/// Contribution of a block whose dual slice is identically zero: a_B = 0.
fn zero_slice_block(kind: &AtomKind, weight: &Rat) -> Result<Option<BlockGraph>, GraphError> {
    // contribution is {0} for all v iff 0 in dom dg*; otherwise the whole
    // composed operator is empty
    let _ = weight;
    let nonempty_at_zero = match kind {
        AtomKind::Zero
        | AtomKind::Abs
        | AtomKind::HingeAbs { .. }
        | AtomKind::QuadShift { .. }
        | AtomKind::Hinge { .. }
        | AtomKind::HingeExpDiff => true,
        AtomKind::Linear { coef } => coef.iter().all(|c| c.is_zero()),
        AtomKind::Exp { .. } | AtomKind::NegLog { .. } => false,
        AtomKind::HyperbolaInd => true,
    };
    if !nonempty_at_zero {
        return Ok(None);
    }
    Ok(Some(BlockGraph {
        pieces: vec![const_piece(whole_dom(), Interval::point_rat(Rat::zero()))],
    }))
}

/// u = t w for a scalar t?
fn parallel_factor(u: &[Rat], w: &[Rat]) -> Option<Rat> {
    let i = w.iter().position(|v| !v.is_zero())?;
    let t = &u[i] / &w[i];
    for (uj, wj) in u.iter().zip(w) {
        if *uj != wj * &t {
            return None;
        }
    }
    Some(t)
}

fn block_graph(
    kind: &AtomKind,
    weight: &Rat,
    a_block: &[Rat],
) -> Result<Option<BlockGraph>, GraphError> {
    if a_block.iter().all(|c| c.is_zero()) {
        return zero_slice_block(kind, weight);
    }
    match kind {
        // one-dimensional atoms: map the conjugate graph through the slice
        AtomKind::Zero
        | AtomKind::Abs
        | AtomKind::HingeAbs { .. }
        | AtomKind::QuadShift { .. } => {
            let a_c = &a_block[0];
            let base = atom_conj_graph_1d(kind)?;
            let in_scale = a_c / weight;
            let pieces = base
                .iter()
                .map(|p| transform_piece(p, &in_scale, a_c))
                .collect();
            Ok(Some(BlockGraph { pieces }))
        }
        AtomKind::Linear { coef } => {
            if coef.len() == 1 {
                let a_c = &a_block[0];
                let base = atom_conj_graph_1d(kind)?;
                let in_scale = a_c / weight;
                let pieces = base
                    .iter()
                    .map(|p| transform_piece(p, &in_scale, a_c))
                    .collect();
                return Ok(Some(BlockGraph { pieces }));
            }
            // multi-coordinate linear: df* nonempty only at u = weight*coef
            match parallel_factor(a_block, coef) {
                Some(_) => {
                    // v a_B / weight = coef  ->  a_B = mu coef: v = weight/mu
                    let mu = parallel_factor(a_block, coef).unwrap();
                    if mu.is_zero() {
                        return Ok(None);
                    }
                    let v0 = weight / &mu;
                    // output: a_B . x over x in R^k = R
                    Ok(Some(BlockGraph {
                        pieces: vec![const_piece(point_dom(v0), Interval::whole())],
                    }))
                }
                None => Ok(None),
            }
        }
        AtomKind::Hinge { w, c } => {
            if w.len() == 1 {
                let a_c = &a_block[0];
                let base = atom_conj_graph_1d(kind)?;
                let in_scale = a_c / weight;
                let pieces = base
                    .iter()
                    .map(|p| transform_piece(p, &in_scale, a_c))
                    .collect();
                return Ok(Some(BlockGraph { pieces }));
            }
            match parallel_factor(a_block, w) {
                Some(mu) => {
                    if mu.is_zero() {
                        return Ok(None);
                    }
                    // t = v mu / weight in [0, 1]; outputs are images of
                    // halfspaces/hyperplanes under a_B = mu w:
                    // a_B . x = mu (w . x)
                    let v_at = |t: i64| rat(t) * weight / &mu;
                    let kink_val = -(&mu * c); // mu * (w.x = -c)
                    let at_zero = if mu.is_positive() {
                        Interval::new(Bnd::NegInf, Bnd::closed_rat(kink_val.clone()))
                    } else {
                        Interval::new(Bnd::closed_rat(kink_val.clone()), Bnd::PlusInf)
                    };
                    let at_one = if mu.is_positive() {
                        Interval::new(Bnd::closed_rat(kink_val.clone()), Bnd::PlusInf)
                    } else {
                        Interval::new(Bnd::NegInf, Bnd::closed_rat(kink_val.clone()))
                    };
                    let (v0, v1) = (v_at(0), v_at(1));
                    let (lo, hi) = if v1 > v0 {
                        (v0.clone(), v1.clone())
                    } else {
                        (v1.clone(), v0.clone())
                    };
                    Ok(Some(BlockGraph {
                        pieces: vec![
                            const_piece(point_dom(v0), at_zero),
                            const_piece(
                                Interval::new(Bnd::open_rat(lo), Bnd::open_rat(hi)),
                                Interval::point_rat(kink_val),
                            ),
                            const_piece(point_dom(v1), at_one),
                        ],
                    }))
                }
                None => {
                    // only u = 0 (t = 0) lies in dom; at v = 0 the output is
                    // the image of a halfspace under a non-parallel
                    // functional: all of R
                    Ok(Some(BlockGraph {
                        pieces: vec![const_piece(point_dom(Rat::zero()), Interval::whole())],
                    }))
                }
            }
        }
        AtomKind::Exp { w, c } => {
            match parallel_factor(a_block, w) {
                Some(mu) if !mu.is_zero() => {
                    // t = v mu / weight > 0; output mu(log t - c)
                    let in_scale = &mu / weight;
                    let dom = if in_scale.is_positive() {
                        Interval::new(Bnd::open_rat(Rat::zero()), Bnd::PlusInf)
                    } else {
                        Interval::new(Bnd::NegInf, Bnd::open_rat(Rat::zero()))
                    };
                    Ok(Some(BlockGraph {
                        pieces: vec![GraphPiece {
                            dom,
                            out: PieceFn::Log {
                                scale: mu.clone(),
                                inner: in_scale,
                                vshift: Rat::zero(),
                                shift: -(&mu * c),
                            },
                        }],
                    }))
                }
                _ => Ok(None), // 0 not in dom df*
            }
        }
        AtomKind::NegLog { w, c } => {
            match parallel_factor(a_block, w) {
                Some(mu) if !mu.is_zero() => {
                    // t = v mu / weight < 0; output mu(-1/t - c) = -weight/v - mu c
                    let in_scale = &mu / weight;
                    let dom = if in_scale.is_positive() {
                        Interval::new(Bnd::NegInf, Bnd::open_rat(Rat::zero()))
                    } else {
                        Interval::new(Bnd::open_rat(Rat::zero()), Bnd::PlusInf)
                    };
                    Ok(Some(BlockGraph {
                        pieces: vec![GraphPiece {
                            dom,
                            out: PieceFn::Recip {
                                scale: -weight.clone(),
                                vshift: Rat::zero(),
                                shift: -(&mu * c),
                            },
                        }],
                    }))
                }
                _ => Ok(None),
            }
        }
        AtomKind::HingeExpDiff => {
            // block order (exponent dual u0, linear dual u1); dual domain:
            // {(0,0)} union {u0 > 0, -1 <= u1 < 0}
            let a0 = &a_block[0];
            let a1 = &a_block[1];
            let mut pieces = Vec::new();
            // v = 0: image of the region {y1 >= e^{y0}} under (a0, a1)
            let region = crate::sets::ConvexSet::exp_region(2, 1, 0);
            let img = region
                .linear_image(&[a0.clone(), a1.clone()])
                .map_err(|e| GraphError::Unsupported(e.to_string()))?;
            pieces.push(const_piece(point_dom(Rat::zero()), img));
            if !a1.is_zero() {
                // u1 = v a1 / weight = -1  ->  v = -weight/a1, need u0 > 0
                let v_ray = -weight / a1;
                let u0 = &v_ray * a0 / weight;
                if u0.is_positive() {
                    // set {y0 = log u0, y1 <= u0}; image a0 log u0 + a1 y1
                    let anchor = SymVal::log_of(&u0)?
                        .scale(a0)
                        .add(&SymVal::from_rat(a1 * &u0));
                    let iv = if a1.is_negative() {
                        Interval::new(Bnd::Closed(anchor), Bnd::PlusInf)
                    } else {
                        Interval::new(Bnd::NegInf, Bnd::Closed(anchor))
                    };
                    pieces.push(const_piece(point_dom(v_ray), iv));
                }
                // strip u1 in (-1, 0), u0 > 0: r = -u0/u1 = -a0/a1 constant
                let r = -(a0 / a1);
                if r.is_positive() {
                    // v range where u1 in (-1,0): v a1/weight in (-1,0)
                    let end = -weight / a1;
                    let (lo, hi) = if end.is_positive() {
                        (Rat::zero(), end.clone())
                    } else {
                        (end.clone(), Rat::zero())
                    };
                    let val = SymVal::log_of(&r)?
                        .scale(a0)
                        .add(&SymVal::from_rat(a1 * &r));
                    pieces.push(const_piece(
                        Interval::new(Bnd::open_rat(lo), Bnd::open_rat(hi)),
                        Interval::point(val),
                    ));
                }
            }
            Ok(Some(BlockGraph { pieces }))
        }
        AtomKind::HyperbolaInd => {
            // dI*(u) = argmax <u, y> over {y0 y1 >= 1, y >= 0}: attained only
            // at u = 0 where the whole set qualifies
            let a0 = &a_block[0];
            let a1 = &a_block[1];
            if !a0.is_zero() && !a1.is_zero() {
                return Err(GraphError::Unsupported(
                    "hyperbola indicator along a non-axis row".into(),
                ));
            }
            // image of the region under an axis functional c*y_i = c*(0,inf)
            let c = if a0.is_zero() { a1 } else { a0 };
            let iv = Interval::new(Bnd::open_rat(Rat::zero()), Bnd::PlusInf).scale(c);
            Ok(Some(BlockGraph {
                pieces: vec![const_piece(point_dom(Rat::zero()), iv)],
            }))
        }
    }
}

/// Sums block contribution graphs over a common cell refinement.
fn sum_blocks(blocks: Vec<BlockGraph>) -> Result<Graph1, GraphError> {
    // gather rational breakpoints
    let mut brk: Vec<Rat> = Vec::new();
    for b in &blocks {
        for p in &b.pieces {
            for bnd in [&p.dom.lo, &p.dom.hi] {
                if let Some(v) = bnd.value() {
                    let r = v.as_rational().ok_or_else(|| {
                        GraphError::Unsupported("symbolic piece boundary".into())
                    })?;
                    brk.push(r.clone());
                }
            }
        }
    }
    brk.sort();
    brk.dedup();
    // cells: open intervals between breakpoints plus the points themselves
    let mut cells: Vec<Interval> = Vec::new();
    if brk.is_empty() {
        cells.push(Interval::whole());
    } else {
        cells.push(Interval::new(
            Bnd::NegInf,
            Bnd::open_rat(brk[0].clone()),
        ));
        for (i, b) in brk.iter().enumerate() {
            cells.push(Interval::point_rat(b.clone()));
            let hi = if i + 1 < brk.len() {
                Bnd::open_rat(brk[i + 1].clone())
            } else {
                Bnd::PlusInf
            };
            cells.push(Interval::new(Bnd::open_rat(b.clone()), hi));
        }
    }
    let mut pieces = Vec::new();
    'cells: for cell in cells {
        if cell.is_empty()? {
            continue;
        }
        // find, per block, the unique piece covering this cell
        let mut covering: Vec<&GraphPiece> = Vec::new();
        for b in &blocks {
            let mut found = None;
            for p in &b.pieces {
                if cell_inside(&cell, &p.dom)? {
                    found = Some(p);
                    break;
                }
            }
            match found {
                Some(p) => covering.push(p),
                None => continue 'cells, // this block contributes nothing here
            }
        }
        if let Some(v0) = cell.is_point()? {
            // point cell: evaluate everything
            let v0r = v0.as_rational().expect("rational breakpoints").clone();
            let mut acc = Interval::point_rat(Rat::zero());
            for p in &covering {
                let o = p.out.at(&v0r)?;
                acc = interval_add(&acc, &o)?;
            }
            pieces.push(const_piece(Interval::point_rat(v0r), acc));
        } else {
            // open cell: combine functional forms
            let mut rational_shift = Rat::zero();
            let mut sym_shift = SymVal::zero();
            let mut affine: Option<(Rat, Rat)> = None;
            let mut special: Option<PieceFn> = None;
            for p in &covering {
                match &p.out {
                    PieceFn::Const(iv) => {
                        let pt = iv.is_point()?.ok_or_else(|| {
                            GraphError::Unsupported("thick output over an open cell".into())
                        })?;
                        match pt.as_rational() {
                            Some(r) => rational_shift += r,
                            None => sym_shift = sym_shift.add(&pt),
                        }
                    }
                    PieceFn::Affine { a, b } => {
                        let (aa, bb) = affine.get_or_insert((Rat::zero(), Rat::zero()));
                        *aa += a;
                        *bb += b;
                    }
                    other => {
                        if special.is_some() {
                            return Err(GraphError::Unsupported(
                                "sum of two non-affine graph pieces".into(),
                            ));
                        }
                        special = Some(other.clone());
                    }
                }
            }
            let out = match (special, affine) {
                (Some(_), Some((_, b))) if !b.is_zero() => {
                    return Err(GraphError::Unsupported(
                        "sum of affine and transcendental pieces".into(),
                    ))
                }
                (Some(sp), aff) => {
                    let extra = aff.map(|(a, _)| a).unwrap_or_else(Rat::zero) + &rational_shift;
                    if !sym_shift.is_zero() {
                        return Err(GraphError::Unsupported(
                            "symbolic shift on a transcendental piece".into(),
                        ));
                    }
                    shift_piece(sp, &extra)
                }
                (None, Some((a, b))) => {
                    if !sym_shift.is_zero() {
                        return Err(GraphError::Unsupported(
                            "symbolic shift on an affine piece".into(),
                        ));
                    }
                    PieceFn::Affine {
                        a: a + &rational_shift,
                        b,
                    }
                }
                (None, None) => {
                    let total = sym_shift.add(&SymVal::from_rat(rational_shift));
                    PieceFn::Const(Interval::point(total))
                }
            };
            pieces.push(GraphPiece { dom: cell, out });
        }
    }
    Ok(Graph1 { pieces })
}

fn shift_piece(p: PieceFn, extra: &Rat) -> PieceFn {
    match p {
        PieceFn::Recip {
            scale,
            vshift,
            shift,
        } => PieceFn::Recip {
            scale,
            vshift,
            shift: shift + extra,
        },
        PieceFn::Log {
            scale,
            inner,
            vshift,
            shift,
        } => PieceFn::Log {
            scale,
            inner,
            vshift,
            shift: shift + extra,
        },
        PieceFn::Exp {
            scale,
            rate,
            vshift,
            shift,
        } => PieceFn::Exp {
            scale,
            rate,
            vshift,
            shift: shift + extra,
        },
        PieceFn::Affine { a, b } => PieceFn::Affine { a: a + extra, b },
        PieceFn::Const(iv) => PieceFn::Const(iv.translate(&SymVal::from_rat(extra.clone()))),
    }
}

fn cell_inside(cell: &Interval, dom: &Interval) -> Result<bool, GraphError> {
    // cell is either a point or an open interval between breakpoints; it is
    // inside dom iff its midpoint-representative set is
    if let Some(p) = cell.is_point()? {
        return Ok(dom.contains(&p)?);
    }
    // open cell: contained iff some interior point is (piece domains share
    // breakpoints with cells, so partial overlap cannot happen)
    let probe = crate::sets::linsys::pick_in_interval(cell)
        .ok_or_else(|| GraphError::Unsupported("degenerate cell".into()))?;
    Ok(dom.contains(&SymVal::from_rat(probe))?)
}

fn interval_add(a: &Interval, b: &Interval) -> Result<Interval, GraphError> {
    let lo = match (&a.lo, &b.lo) {
        (Bnd::NegInf, _) | (_, Bnd::NegInf) => Bnd::NegInf,
        (Bnd::PlusInf, _) | (_, Bnd::PlusInf) => Bnd::PlusInf,
        (x, y) => {
            let v = x.value().unwrap().add(y.value().unwrap());
            if matches!(x, Bnd::Open(_)) || matches!(y, Bnd::Open(_)) {
                Bnd::Open(v)
            } else {
                Bnd::Closed(v)
            }
        }
    };
    let hi = match (&a.hi, &b.hi) {
        (Bnd::PlusInf, _) | (_, Bnd::PlusInf) => Bnd::PlusInf,
        (Bnd::NegInf, _) | (_, Bnd::NegInf) => Bnd::NegInf,
        (x, y) => {
            let v = x.value().unwrap().add(y.value().unwrap());
            if matches!(x, Bnd::Open(_)) || matches!(y, Bnd::Open(_)) {
                Bnd::Open(v)
            } else {
                Bnd::Closed(v)
            }
        }
    };
    Ok(Interval::new(lo, hi))
}

/// The graph of v -> (A o df* o A^T)(v) for a 1 x n row a.
pub fn dual_graph(f: &FuncExpr, a_row: &[Rat]) -> Result<Graph1, GraphError> {
    assert_eq!(a_row.len(), f.dim());
    let blocks = f
        .blocks()
        .map_err(|e| GraphError::Unsupported(e.to_string()))?;
    let mut graphs = Vec::new();
    for t in &blocks {
        let a_block: Vec<Rat> = t.coords.iter().map(|&c| a_row[c].clone()).collect();
        match block_graph(&t.kind, &t.weight, &a_block)? {
            Some(g) => graphs.push(g),
            None => return Ok(Graph1::empty()),
        }
    }
    sum_blocks(graphs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::dsl::parse_func;

    fn graph_for(src: &str, dim: usize, a: Vec<i64>) -> Graph1 {
        let f = parse_func(src, dim).unwrap();
        let a: Vec<Rat> = a.into_iter().map(rat).collect();
        dual_graph(&f, &a).unwrap()
    }

    #[test]
    fn linear_example_is_empty() {
        // f = x1, A = [0 1]: T is empty everywhere
        let g = graph_for("lin(1, 0)", 2, vec![0, 1]);
        assert!(g.is_empty_graph());
    }

    #[test]
    fn exp_examples() {
        // f = e^{x1}, A = [0 1]: empty (P2 example family)
        let g = graph_for("exp(x1)", 2, vec![0, 1]);
        assert!(g.is_empty_graph());
        // f = e^{x1}, A = [1 0]: {log v} on (0, inf); dom(A |> df) = R
        let g = graph_for("exp(x1)", 2, vec![1, 0]);
        assert!(g.range().unwrap().is_whole_line());
        let sols = g.solve_for(&rat(0)).unwrap();
        assert_eq!(sols.len(), 1);
        match &sols[0] {
            crate::graph1d::VSolution::Rational(v) => assert_eq!(*v, rat(1)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn hinge_example_three() {
        // f = max{x1,0}, A = [0 1]: T(0) = R, empty elsewhere
        let g = graph_for("hinge(x1)", 2, vec![0, 1]);
        assert_eq!(g.domain().unwrap().render(), "{0}");
        let out = g.output_at(&rat(0)).unwrap();
        assert_eq!(out.len(), 1);
        assert_eq!(out[0].render(), "(-inf,inf)");
        assert!(g.range_with_identity().unwrap().is_whole_line());
    }

    #[test]
    fn hinge_abs_example_four() {
        let g = graph_for("hinge_abs(x1, 1)", 2, vec![0, 1]);
        assert_eq!(g.domain().unwrap().render(), "{0}");
        assert!(g.range_with_identity().unwrap().is_whole_line());
    }

    #[test]
    fn hed_examples_five_and_six() {
        // f = max{e^{x2} - x1, 0}
        // A = [1 0] (measures the linear coordinate): T(0) = (0, inf)
        let g = graph_for("hinge_expdiff(x2, x1)", 2, vec![1, 0]);
        assert_eq!(g.domain().unwrap().render(), "{0}");
        assert_eq!(g.range().unwrap().render(), "(0,inf)");
        assert_eq!(g.range_with_identity().unwrap().render(), "(0,inf)");
        // A = [0 1] (measures the exponent): T(0) = R
        let g = graph_for("hinge_expdiff(x2, x1)", 2, vec![0, 1]);
        assert_eq!(g.domain().unwrap().render(), "{0}");
        assert!(g.range().unwrap().is_whole_line());
        assert!(g.range_with_identity().unwrap().is_whole_line());
    }

    #[test]
    fn neglog_example() {
        // f = -log x, A = [1]: T(v) = {-1/v} on v < 0; ran = (0, inf)
        let g = graph_for("neglog(x1)", 1, vec![1]);
        assert_eq!(g.range().unwrap().render(), "(0,inf)");
        assert!(g.range_with_identity().unwrap().is_whole_line());
    }

    #[test]
    fn quad_shift_identity() {
        // f = (1/2)(x-0)^2, A = [1]: T(v) = {v}; resolvent b/2
        let g = graph_for("quadshift(x1, 0)", 1, vec![1]);
        match g.resolvent(&rat(3)).unwrap() {
            crate::graph1d::Resolvent::Rational(v) => {
                assert_eq!(v, crate::scalar::ratio(3, 2))
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn norm1_single_row() {
        // f = |x1| + |x2|, A = [1 1]: T(v) = df*(v) + df*(v) summed
        let g = graph_for("norm1()", 2, vec![1, 1]);
        // at v = 0: {0}; at v = 1: [0,inf)+[0,inf) = [0,inf); between: {0}+{0}
        assert!(g.contains(&rat(0), &rat(0)).unwrap());
        assert!(g.contains(&rat(1), &rat(5)).unwrap());
        assert!(!g.contains(&rat(2), &rat(0)).unwrap());
        assert!(g.range_with_identity().unwrap().is_whole_line());
        // mixed row [1, -2]: breakpoints at +-1 and +-1/2
        let g = graph_for("norm1()", 2, vec![1, -2]);
        assert!(g.range_with_identity().unwrap().is_whole_line());
        assert!(g.contains(&rat(0), &rat(0)).unwrap());
    }
}
