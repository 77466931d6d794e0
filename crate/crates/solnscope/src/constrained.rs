//! Diagnostics for min f(x) s.t. Ax = b: range component A^+ b, dual
//! certificate search over the piecewise dual graph (m = 1) or by l1 sign
//! enumeration, the solution set as an explicit finite union, verdicts for
//! existence/compactness/uniqueness, the constraint-influence test, and
//! exactness of the infimal postcomposition at b.

use crate::atoms::FuncExpr;
use crate::dualgraph::dual_graph;
use crate::graph1d::VSolution;
use crate::infpost::inf_postcomposition;
use crate::least_squares::{DiagError, Tri};
use crate::linalg::{kernel_basis, vec_scale, RationalMatrix};
use crate::scalar::Rat;
use crate::sets::interval::IntervalUnion;
use crate::sets::{AffineFlat, ConvexSet, SetUnion};
use crate::sym::{ExtVal, SymVal};
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, PartialEq)]
pub enum P2Reason {
    BNotInRange,
    ViabilityFail,
    NoCertificate,
    Solvable,
}

impl P2Reason {
    pub fn render(&self) -> &'static str {
        match self {
            P2Reason::BNotInRange => "b outside ran A",
            P2Reason::ViabilityFail => "ran df cap ran A^T is empty",
            P2Reason::NoCertificate => "b outside dom(A |> df)",
            P2Reason::Solvable => "dual certificate found",
        }
    }
}

#[derive(Debug, Clone)]
pub struct DualCertificate {
    pub v: Vec<Rat>,
    pub witness_subgradient: Vec<Rat>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Influence {
    NoEffect,
    StrictIncrease,
    NotApplicable(String),
}

impl Influence {
    pub fn render(&self) -> String {
        match self {
            Influence::NoEffect => "no effect: (A|>f)(b) = min f".into(),
            Influence::StrictIncrease => "strict increase: (A|>f)(b) > min f".into(),
            Influence::NotApplicable(w) => format!("not applicable: {w}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct P2Analysis {
    pub n: usize,
    pub m: usize,
    pub existence: Tri,
    pub reason: P2Reason,
    pub x_r_star: Option<Vec<Rat>>,
    pub x_star: Option<Vec<Rat>>,
    pub solution_set: Option<SetUnion>,
    pub a_dom_f: Option<ConvexSet>,
    pub dom_parallel: Option<IntervalUnion>,
    pub viability: Option<SetUnion>,
    pub b_in_dom_parallel: Tri,
    pub exact_at_b: Tri,
    pub certificate: Option<DualCertificate>,
    pub certificate_sets: Option<SetUnion>,
    pub unique: Tri,
    pub unique_cert: Option<SetUnion>,
    pub descent_route_agrees: Option<bool>,
    pub compact: Tri,
    pub b_in_a_conj_zero: Tri,
    pub influence: Influence,
    pub inf_value: Option<ExtVal>,
    pub min_f_value: Option<ExtVal>,
    pub subgrad_postcomp_maximal: Tri,
    pub b_in_ran_i_plus_post: Tri,
    pub exact_at_prox: Tri,
    pub notes: Vec<String>,
}

/// A^+ b when b lies in ran A.
pub fn range_component(a: &RationalMatrix, b: &[Rat]) -> Result<Option<Vec<Rat>>, DiagError> {
    let pinv = a.pseudoinverse();
    let x = pinv.mul_vec(b)?;
    let back = a.mul_vec(&x)?;
    if back == b {
        Ok(Some(x))
    } else {
        Ok(None)
    }
}

/// Representatives of (A |> df)(b) = {v : b in (A o df* o A^T)(v)}, one per
/// graph piece, for m = 1.
fn certificate_candidates(
    f: &FuncExpr,
    a: &RationalMatrix,
    b: &[Rat],
) -> Result<Vec<Rat>, DiagError> {
    assert_eq!(a.rows(), 1);
    let t = dual_graph(f, &a.row(0))?;
    let mut out = Vec::new();
    for s in t.solve_for(&b[0])? {
        match s {
            VSolution::Rational(v) => out.push(v),
            VSolution::Symbolic(sym) => {
                return Err(DiagError::Undecidable(format!(
                    "dual certificate is irrational: v = {}",
                    sym.render()
                )))
            }
        }
    }
    out.sort();
    out.dedup();
    Ok(out)
}

/// Exact l1-constrained minimization (basis pursuit) by sign patterns.
fn basis_pursuit(
    a: &RationalMatrix,
    b: &[Rat],
) -> Result<Option<(Vec<Rat>, SetUnion)>, DiagError> {
    use crate::sets::linsys::{LinCon, LinSys, Rel};
    let n = a.cols();
    if n > 8 {
        return Err(DiagError::Undecidable("l1 enumeration beyond n = 8".into()));
    }
    let mut patterns = vec![vec![]];
    for _ in 0..n {
        let mut next = Vec::new();
        for p in patterns {
            for s in [-1i8, 0, 1] {
                let mut q: Vec<i8> = p.clone();
                q.push(s);
                next.push(q);
            }
        }
        patterns = next;
    }
    let mut best_val: Option<Rat> = None;
    let mut best_faces: Vec<ConvexSet> = Vec::new();
    for pattern in patterns {
        let mut cons = Vec::new();
        for i in 0..a.rows() {
            cons.push(LinCon::new(a.row(i), Rel::Eq, b[i].clone()));
        }
        for (i, &s) in pattern.iter().enumerate() {
            let mut coef = vec![Rat::zero(); n];
            match s {
                0 => {
                    coef[i] = Rat::one();
                    cons.push(LinCon::new(coef, Rel::Eq, Rat::zero()));
                }
                s => {
                    coef[i] = crate::scalar::rat(-(s as i64));
                    cons.push(LinCon::new(coef, Rel::Le, Rat::zero()));
                }
            }
        }
        let sys = LinSys::new(n, cons);
        if !sys.is_feasible() {
            continue;
        }
        // value = sum_i s_i x_i on this pattern
        let g: Vec<Rat> = pattern
            .iter()
            .map(|&s| crate::scalar::rat(s as i64))
            .collect();
        let iv = sys.linear_image(&g);
        let lo = match &iv.lo {
            crate::sets::interval::Bnd::Closed(v) => {
                v.as_rational().expect("rational image").clone()
            }
            _ => continue, // l1 value attains its minimum on a face
        };
        let better = match &best_val {
            None => true,
            Some(cur) => lo < *cur,
        };
        if better {
            best_val = Some(lo.clone());
            best_faces.clear();
        }
        if best_val.as_ref() == Some(&lo) {
            let mut face = sys.clone();
            face.push(LinCon::new(g, Rel::Eq, lo));
            best_faces.push(ConvexSet::from_linsys(face));
        }
    }
    match best_val {
        None => Ok(None),
        Some(_) => {
            let union = SetUnion::from_parts(n, best_faces);
            let mut canonical: Option<Vec<Rat>> = None;
            for p in &union.parts {
                if let Some(sys) = p.as_linsys() {
                    if let Some(x) = crate::sets::min_norm_point(sys) {
                        let better = match &canonical {
                            None => true,
                            Some(q) => {
                                let nx: Rat = x.iter().map(|v| v * v).sum();
                                let nq: Rat = q.iter().map(|v| v * v).sum();
                                nx < nq || (nx == nq && x < *q)
                            }
                        };
                        if better {
                            canonical = Some(x);
                        }
                    }
                }
            }
            let x = canonical
                .ok_or_else(|| DiagError::Undecidable("no canonical l1 point".into()))?;
            Ok(Some((x, union)))
        }
    }
}

/// Searches for some v with b in (A o df* o A^T)(v); exact, m = 1 or l1.
pub fn certificate_search(
    f: &FuncExpr,
    a: &RationalMatrix,
    b: &[Rat],
) -> Result<Option<DualCertificate>, DiagError> {
    if range_component(a, b)?.is_none() {
        return Ok(None);
    }
    if a.rows() == 1 {
        let cands = certificate_candidates(f, a, b)?;
        if let Some(v) = cands.first() {
            let vv = vec![v.clone()];
            let witness = a.transpose().mul_vec(&vv)?;
            return Ok(Some(DualCertificate {
                v: vv,
                witness_subgradient: witness,
            }));
        }
        return Ok(None);
    }
    if f.is_norm1() {
        use crate::sets::linsys::{LinCon, LinSys, Rel};
        // x* from the exact l1 route, then LP feasibility for v:
        // ||A^T v||_inf <= 1, (A^T v)_i = sign(x_i*) on the support
        let (x, _) = match basis_pursuit(a, b)? {
            Some(p) => p,
            None => return Ok(None),
        };
        let m = a.rows();
        let at = a.transpose();
        let mut cons = Vec::new();
        for i in 0..f.dim() {
            let row = at.row(i);
            if x[i].is_zero() {
                cons.push(LinCon::new(row.clone(), Rel::Le, crate::scalar::rat(1)));
                cons.push(LinCon::new(
                    vec_scale(&row, &crate::scalar::rat(-1)),
                    Rel::Le,
                    crate::scalar::rat(1),
                ));
            } else {
                let s = if x[i].is_positive() {
                    crate::scalar::rat(1)
                } else {
                    crate::scalar::rat(-1)
                };
                cons.push(LinCon::new(row.clone(), Rel::Eq, s));
            }
        }
        let sys = LinSys::new(m, cons);
        match sys.find_point() {
            Some(v) => {
                let witness = at.mul_vec(&v)?;
                if !f.fermat_holds(&x, &witness)? {
                    return Err(DiagError::Undecidable(
                        "certificate candidate failed the exact inclusion".into(),
                    ));
                }
                Ok(Some(DualCertificate {
                    v,
                    witness_subgradient: witness,
                }))
            }
            None => Ok(None),
        }
    } else {
        Err(DiagError::Undecidable(
            "no dual-variable search outside m = 1 or the l1 catalog".into(),
        ))
    }
}

/// X = A^+ b + ((union of df*(A^T v) - A^+ b) cap ker A), one convex piece
/// per contributing graph piece; never merged.
pub fn solution_set_p2(
    f: &FuncExpr,
    a: &RationalMatrix,
    b: &[Rat],
) -> Result<SetUnion, DiagError> {
    let n = f.dim();
    let xr = match range_component(a, b)? {
        Some(x) => x,
        None => return Ok(SetUnion::empty(n)),
    };
    if a.rows() == 1 {
        let cands = certificate_candidates(f, a, b)?;
        let flat = AffineFlat::subspace(kernel_basis(a));
        let mut parts = Vec::new();
        for v in cands {
            let u = a.transpose().mul_vec(&[v.clone()])?;
            let s = f.conj_subdiff(&u)?;
            let neg: Vec<Rat> = xr.iter().map(|t| -t.clone()).collect();
            let piece = s
                .translate(&neg)?
                .intersect_flat(&flat)?
                .translate(&xr)?;
            if !piece.is_empty() {
                parts.push(piece);
            }
        }
        return Ok(SetUnion::from_parts(n, parts));
    }
    if f.is_norm1() {
        return Ok(basis_pursuit(a, b)?
            .map(|(_, u)| u)
            .unwrap_or_else(|| SetUnion::empty(n)));
    }
    Err(DiagError::Undecidable(
        "solution set outside m = 1 or the l1 catalog".into(),
    ))
}

/// Union of df*(A^T v) over certificates valid at x*.
fn certificate_sets_at(
    f: &FuncExpr,
    a: &RationalMatrix,
    b: &[Rat],
    x_star: &[Rat],
) -> Result<SetUnion, DiagError> {
    let n = f.dim();
    if a.rows() != 1 {
        if f.is_norm1() {
            // single certificate route
            match certificate_search(f, a, b)? {
                Some(c) => {
                    let s = f.conj_subdiff(&c.witness_subgradient)?;
                    return Ok(SetUnion::single(s));
                }
                None => return Ok(SetUnion::empty(n)),
            }
        }
        return Err(DiagError::Undecidable("m > 1 outside the catalog".into()));
    }
    let cands = certificate_candidates(f, a, b)?;
    let mut parts = Vec::new();
    for v in cands {
        let u = a.transpose().mul_vec(&[v.clone()])?;
        // keep only certificates valid at x*: A^T v in df(x*)
        if f.fermat_holds(x_star, &u)? {
            parts.push(f.conj_subdiff(&u)?);
        }
    }
    Ok(SetUnion::from_parts(n, parts))
}

pub fn uniqueness_p2(
    f: &FuncExpr,
    a: &RationalMatrix,
    b: &[Rat],
    x_star: &[Rat],
) -> Result<(bool, SetUnion), DiagError> {
    let sets = certificate_sets_at(f, a, b, x_star)?;
    let neg: Vec<Rat> = x_star.iter().map(|t| -t.clone()).collect();
    let flat = AffineFlat::subspace(kernel_basis(a));
    let shifted = sets.translate(&neg)?.intersect_flat(&flat)?;
    Ok((shifted.is_zero_singleton()?, shifted))
}

pub fn compactness_p2(
    f: &FuncExpr,
    a: &RationalMatrix,
    b: &[Rat],
    x_star: &[Rat],
) -> Result<bool, DiagError> {
    let sets = certificate_sets_at(f, a, b, x_star)?;
    let flat = AffineFlat::subspace(kernel_basis(a));
    let rec = sets.recession_parts()?.intersect_flat(&flat)?;
    Ok(rec.is_zero_singleton()?)
}

/// Does the constraint change the optimal value? NoEffect iff b lies in
/// (A o df*)(0).
pub fn constraint_influence(
    f: &FuncExpr,
    a: &RationalMatrix,
    b: &[Rat],
) -> Result<(Influence, Tri), DiagError> {
    // the membership row b in (A o df*)(0) is evaluated unconditionally
    let zero = vec![Rat::zero(); f.dim()];
    let s0 = match f.conj_subdiff(&zero) {
        Ok(s) => s,
        Err(e) => {
            return Ok((
                Influence::NotApplicable(e.to_string()),
                Tri::Unknown(e.to_string()),
            ))
        }
    };
    let b_in = if s0.is_empty() {
        Tri::No
    } else if a.rows() == 1 {
        let iv = s0.linear_image(&a.row(0))?;
        Tri::from_bool(iv.contains(&SymVal::from_rat(b[0].clone()))?)
    } else {
        match crate::sets::linear_map_image(&s0, a) {
            Ok(img) => Tri::from_bool(img.contains_point(b)?),
            Err(e) => Tri::Unknown(e.to_string()),
        }
    };
    // applicability: both problems solvable
    if s0.is_empty() {
        return Ok((
            Influence::NotApplicable("unconstrained minimum not attained (0 outside ran df)".into()),
            b_in,
        ));
    }
    let solvable = !solution_set_p2(f, a, b)?.is_empty();
    if !solvable {
        return Ok((
            Influence::NotApplicable("the constrained problem has no solution".into()),
            b_in,
        ));
    }
    match &b_in {
        Tri::Yes => Ok((Influence::NoEffect, b_in)),
        Tri::No => Ok((Influence::StrictIncrease, b_in)),
        Tri::Unknown(w) => Ok((Influence::NotApplicable(w.clone()), b_in)),
    }
}

/// Full analysis of one constrained instance.
pub fn analyze_p2(f: &FuncExpr, a: &RationalMatrix, b: &[Rat]) -> Result<P2Analysis, DiagError> {
    let n = f.dim();
    let m = a.rows();
    if a.cols() != n || b.len() != m {
        return Err(DiagError::UnsupportedProblem("dimension mismatch".into()));
    }
    let mut notes = Vec::new();
    let rowsp = crate::linalg::rowspace_basis(a);
    let viability = match f.range_subdiff() {
        Ok(range) => Some(range.intersect_flat(&AffineFlat::subspace(rowsp))?),
        Err(e) => {
            notes.push(format!("ran df unavailable: {e}"));
            None
        }
    };

    let x_r_star = range_component(a, b)?;

    // A(dom f)
    let a_dom_f = match f.domain() {
        Ok(d) => match crate::sets::linear_map_image(&d, a) {
            Ok(img) => Some(img),
            Err(e) => {
                notes.push(format!("A(dom f) unavailable: {e}"));
                hyperbola_dom_image(f, a)
            }
        },
        Err(e) => {
            notes.push(format!("dom f not polyhedral: {e}"));
            hyperbola_dom_image(f, a)
        }
    };

    // dom(A |> df) and the postcomposition object (m = 1 only)
    let (dom_parallel, post) = if m == 1 {
        let dg = dual_graph(f, &a.row(0));
        let dom = match &dg {
            Ok(t) => Some(t.range()?),
            Err(e) => {
                notes.push(format!("dual graph unavailable: {e}"));
                None
            }
        };
        let ip = match inf_postcomposition(f, &a.row(0)) {
            Ok(ip) => Some(ip),
            Err(e) => {
                notes.push(format!("infimal postcomposition unavailable: {e}"));
                None
            }
        };
        // dual-route consistency: the exactness set of A|>f must equal
        // dom(A |> df)
        if let (Some(d), Some(ip)) = (&dom, &ip) {
            if ip.exact_set != *d {
                notes.push(format!(
                    "exactness set {} vs dom(A |> df) {} disagree",
                    ip.exact_set.render(),
                    d.render()
                ));
            }
        }
        (dom, ip)
    } else {
        (None, None)
    };

    let b_in_dom_parallel = match (&dom_parallel, m) {
        (Some(d), 1) => Tri::from_bool(d.contains(&SymVal::from_rat(b[0].clone()))?),
        _ => {
            if f.is_norm1() {
                Tri::from_bool(basis_pursuit(a, b)?.is_some())
            } else {
                Tri::Unknown("no range description".into())
            }
        }
    };
    let exact_at_b = b_in_dom_parallel.clone();

    // existence cascade
    let (existence, reason) = if x_r_star.is_none() {
        (Tri::No, P2Reason::BNotInRange)
    } else if viability.as_ref().is_some_and(|v| v.is_empty()) {
        (Tri::No, P2Reason::ViabilityFail)
    } else {
        match &b_in_dom_parallel {
            Tri::Yes => (Tri::Yes, P2Reason::Solvable),
            Tri::No => (Tri::No, P2Reason::NoCertificate),
            Tri::Unknown(w) => (Tri::Unknown(w.clone()), P2Reason::NoCertificate),
        }
    };

    let certificate = if existence.is_yes() {
        certificate_search(f, a, b)?
    } else {
        None
    };

    let solution_set = if existence.is_yes() {
        match solution_set_p2(f, a, b) {
            Ok(s) => Some(s),
            Err(e) => {
                notes.push(format!("solution set unavailable: {e}"));
                None
            }
        }
    } else if existence.is_no() {
        Some(SetUnion::empty(n))
    } else {
        None
    };

    // canonical solution: minimum-norm member across polyhedral pieces
    let x_star = match &solution_set {
        Some(u) if !u.is_empty() => {
            let mut best: Option<Vec<Rat>> = None;
            for p in &u.parts {
                if let Some(sys) = p.as_linsys() {
                    if let Some(x) = crate::sets::min_norm_point(sys) {
                        let better = match &best {
                            None => true,
                            Some(q) => {
                                let nx: Rat = x.iter().map(|v| v * v).sum();
                                let nq: Rat = q.iter().map(|v| v * v).sum();
                                nx < nq || (nx == nq && x < *q)
                            }
                        };
                        if better {
                            best = Some(x);
                        }
                    }
                }
            }
            if best.is_none() {
                notes.push("no polyhedral piece for canonical selection".into());
            }
            best
        }
        _ => None,
    };

    let mut unique = Tri::Unknown("no solution computed".into());
    let mut unique_cert = None;
    let mut compact = Tri::Unknown("no solution computed".into());
    let mut certificate_sets = None;
    let mut descent_route_agrees = None;
    if existence.is_no() {
        unique = Tri::No;
        compact = Tri::Yes;
        if x_r_star.is_some() {
            certificate_sets = Some(SetUnion::empty(n));
            unique_cert = Some(SetUnion::empty(n));
        }
    }
    if let Some(x) = &x_star {
        let (u, cert) = uniqueness_p2(f, a, b, x)?;
        unique = Tri::from_bool(u);
        unique_cert = Some(cert);
        compact = Tri::from_bool(compactness_p2(f, a, b, x)?);
        certificate_sets = Some(certificate_sets_at(f, a, b, x)?);
        // descent-cone cross-check for polyhedral sublevel sets
        if let ExtVal::Finite(v) = f.eval(x) {
            if let Some(level) = v.as_rational() {
                if let Ok(slev) = f.sublevel(level) {
                    if let Ok(t) = slev.tangent_cone_at(x) {
                        let flat = AffineFlat::subspace(kernel_basis(a));
                        let cap = t.intersect_flat(&flat)?;
                        // radial-cone route: unique iff D_f(x*) cap ker A = {0};
                        // descent/tangent agree for polyhedral sublevels
                        if slev.as_linsys().is_some() {
                            let route = cap.is_zero_singleton()?;
                            descent_route_agrees = Some(route == unique.is_yes());
                        }
                    }
                }
            }
        }
    }

    // influence of the constraint + objective values
    let (influence, b_in_a_conj_zero) = constraint_influence(f, a, b)?;
    let inf_value = x_star.as_ref().map(|x| f.eval(x));
    let min_f_value = {
        let zero = vec![Rat::zero(); n];
        match f.conj_subdiff(&zero) {
            Ok(s0) if !s0.is_empty() => match s0.as_linsys().and_then(|s| s.find_point()) {
                Some(p) => Some(f.eval(&p)),
                None => {
                    // analytic region: a representative member
                    s0.sample_points(&mut rand::rngs::mock::StepRng::new(1, 1), 1)
                        .ok()
                        .and_then(|pts| pts.first().cloned())
                        .map(|p| f.eval(&p))
                }
            },
            _ => None,
        }
    };

    // infimal-postcomposition rows
    let (subgrad_postcomp_maximal, b_in_ran_i_plus_post, exact_at_prox) = match &post {
        Some(ip) => {
            let maximal = Tri::from_bool(ip.subgrad_maximal().map_err(DiagError::Graph)?);
            let ran = ip.subgrad.range_with_identity()?;
            let b_in = Tri::from_bool(ran.contains(&SymVal::from_rat(b[0].clone()))?);
            let at_prox = if b_in.is_yes() {
                match ip.subgrad.resolvent_in_union(&b[0], &ip.exact_set)? {
                    Some(ok) => Tri::from_bool(ok),
                    None => Tri::Unknown("prox undefined".into()),
                }
            } else {
                Tri::No
            };
            (maximal, b_in, at_prox)
        }
        None => {
            let w = "postcomposition unavailable".to_string();
            (
                Tri::Unknown(w.clone()),
                Tri::Unknown(w.clone()),
                Tri::Unknown(w),
            )
        }
    };

    Ok(P2Analysis {
        n,
        m,
        existence,
        reason,
        x_r_star,
        x_star,
        solution_set,
        a_dom_f,
        dom_parallel,
        viability,
        b_in_dom_parallel,
        exact_at_b,
        certificate,
        certificate_sets,
        unique,
        unique_cert,
        descent_route_agrees,
        compact,
        b_in_a_conj_zero,
        influence,
        inf_value,
        min_f_value,
        subgrad_postcomp_maximal,
        b_in_ran_i_plus_post,
        exact_at_prox,
        notes,
    })
}

/// A(dom f) for the hyperbola indicator (non-polyhedral domain).
fn hyperbola_dom_image(f: &FuncExpr, a: &RationalMatrix) -> Option<ConvexSet> {
    use crate::atoms::AtomKind;
    if a.rows() != 1 {
        return None;
    }
    let blocks = f.blocks().ok()?;
    let hyp: Vec<&crate::atoms::Term> = blocks
        .iter()
        .filter(|t| t.kind == AtomKind::HyperbolaInd)
        .collect();
    if hyp.len() != 1
        || !blocks
            .iter()
            .all(|t| t.kind == AtomKind::HyperbolaInd || t.kind == AtomKind::Zero)
    {
        return None;
    }
    let row = a.row(0);
    let t = hyp[0];
    // row must read exactly one hyperbola coordinate
    let mut coef = None;
    for (i, c) in row.iter().enumerate() {
        if !c.is_zero() {
            if t.coords.contains(&i) && coef.is_none() {
                coef = Some(c.clone());
            } else {
                return None;
            }
        }
    }
    let c = coef?;
    // image of (0, inf) under scaling by c, as a 1-D set
    let iv = crate::sets::interval::Interval::new(
        crate::sets::interval::Bnd::open_rat(Rat::zero()),
        crate::sets::interval::Bnd::PlusInf,
    )
    .scale(&c);
    ConvexSet::product(vec![crate::sets::Factor::Iv(iv)]).ok()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::dsl::parse_func;
    use crate::scalar::rat;

    fn mtx(rows: Vec<Vec<i64>>) -> RationalMatrix {
        RationalMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rat).collect())
                .collect(),
        )
        .unwrap()
    }

    fn rv(v: Vec<i64>) -> Vec<Rat> {
        v.into_iter().map(rat).collect()
    }

    #[test]
    fn p2_example_one_neglog() {
        let f = parse_func("neglog(x1)", 1).unwrap();
        let a = mtx(vec![vec![1]]);
        let b = rv(vec![0]);
        let an = analyze_p2(&f, &a, &b).unwrap();
        assert!(an.existence.is_no());
        assert_eq!(an.reason, P2Reason::NoCertificate);
        assert_eq!(an.x_r_star, Some(vec![rat(0)]));
        assert_eq!(an.dom_parallel.as_ref().unwrap().render(), "(0,inf)");
        assert_eq!(an.a_dom_f.as_ref().unwrap().render(), "(0,inf)");
        assert!(an.exact_at_b.is_no());
        assert!(an.b_in_a_conj_zero.is_no());
        assert!(an.unique.is_no());
        assert_eq!(an.viability.as_ref().unwrap().render(), "(-inf,0)");
    }

    #[test]
    fn p2_example_two_exp_measured() {
        let f = parse_func("exp(x1)", 2).unwrap();
        let a = mtx(vec![vec![1, 0]]);
        let b = rv(vec![0]);
        let an = analyze_p2(&f, &a, &b).unwrap();
        assert!(an.existence.is_yes());
        assert!(an.dom_parallel.as_ref().unwrap().is_whole_line());
        let x = an.x_star.as_ref().unwrap();
        assert_eq!(x, &vec![rat(0), rat(0)]);
        let set = an.solution_set.as_ref().unwrap();
        assert_eq!(set.render(), "{0} x (-inf,inf)");
        assert!(an.unique.is_no());
        assert!(an.compact.is_no());
        // certificate v = 1 with A^T v = (1, 0)
        let c = an.certificate.as_ref().unwrap();
        assert_eq!(c.v, vec![rat(1)]);
        assert_eq!(c.witness_subgradient, vec![rat(1), rat(0)]);
        assert!(an.b_in_a_conj_zero.is_no());
        assert!(matches!(an.influence, Influence::NotApplicable(_)));
        assert_eq!(an.inf_value, Some(ExtVal::Finite(SymVal::from_rat(rat(1)))));
    }

    #[test]
    fn p2_example_three_exp_free() {
        let f = parse_func("exp(x1)", 2).unwrap();
        let a = mtx(vec![vec![0, 1]]);
        let b = rv(vec![0]);
        let an = analyze_p2(&f, &a, &b).unwrap();
        assert!(an.existence.is_no());
        assert_eq!(an.reason, P2Reason::ViabilityFail);
        assert!(an.dom_parallel.as_ref().unwrap().is_empty());
        assert!(an.viability.as_ref().unwrap().is_empty());
        assert!(an.exact_at_b.is_no());
    }

    #[test]
    fn p2_example_four_hed_linear_row() {
        let f = parse_func("hinge_expdiff(x2, x1)", 2).unwrap();
        let a = mtx(vec![vec![1, 0]]);
        let b = rv(vec![0]);
        let an = analyze_p2(&f, &a, &b).unwrap();
        assert!(an.existence.is_no());
        assert_eq!(an.reason, P2Reason::NoCertificate);
        assert_eq!(an.dom_parallel.as_ref().unwrap().render(), "(0,inf)");
        assert!(an.exact_at_b.is_no());
        assert!(an.b_in_a_conj_zero.is_no());
        // proposition-route rows: prox lands outside the exactness set
        assert!(an.subgrad_postcomp_maximal.is_yes());
        assert!(an.b_in_ran_i_plus_post.is_yes());
        assert!(an.exact_at_prox.is_no());
    }

    #[test]
    fn p2_example_five_hed_exp_row() {
        let f = parse_func("hinge_expdiff(x2, x1)", 2).unwrap();
        let a = mtx(vec![vec![0, 1]]);
        let b = rv(vec![0]);
        let an = analyze_p2(&f, &a, &b).unwrap();
        assert!(an.existence.is_yes());
        let set = an.solution_set.as_ref().unwrap();
        assert_eq!(set.render(), "[1,inf) x {0}");
        assert_eq!(an.x_star, Some(vec![rat(1), rat(0)]));
        assert!(an.unique.is_no());
        assert!(an.compact.is_no());
        assert!(an.b_in_a_conj_zero.is_yes());
        assert_eq!(an.influence, Influence::NoEffect);
        assert_eq!(an.inf_value, Some(ExtVal::zero()));
        assert_eq!(an.min_f_value, Some(ExtVal::zero()));
        // certificate v = 0
        assert_eq!(an.certificate.as_ref().unwrap().v, vec![rat(0)]);
        // uniqueness certificate: (C - x*) cap ker A = [0, inf) x {0}
        assert_eq!(an.unique_cert.as_ref().unwrap().render(), "[0,inf) x {0}");
    }

    #[test]
    fn p2_zero_map() {
        let a = mtx(vec![vec![0, 0]]);
        assert_eq!(range_component(&a, &rv(vec![1])).unwrap(), None);
        let f = parse_func("norm1()", 2).unwrap();
        let an = analyze_p2(&f, &a, &rv(vec![1])).unwrap();
        assert!(an.existence.is_no());
        assert_eq!(an.reason, P2Reason::BNotInRange);
    }

    #[test]
    fn p2_basis_pursuit() {
        // min ||x||_1 s.t. x1 + 2 x2 = 2: solution (0, 1)
        let f = parse_func("norm1()", 2).unwrap();
        let a = mtx(vec![vec![1, 2]]);
        let b = rv(vec![2]);
        let an = analyze_p2(&f, &a, &b).unwrap();
        assert!(an.existence.is_yes());
        assert_eq!(an.x_star, Some(vec![rat(0), rat(1)]));
        assert!(an.unique.is_yes());
        assert!(an.compact.is_yes());
        // m >= 2 route
        let a = mtx(vec![vec![1, 0, 2], vec![0, 2, -2]]);
        let b = rv(vec![2, 0]);
        let f = parse_func("norm1()", 3).unwrap();
        let an = analyze_p2(&f, &a, &b).unwrap();
        assert!(an.existence.is_yes());
        let c = an.certificate.as_ref().unwrap();
        let x = an.x_star.as_ref().unwrap();
        assert!(f.fermat_holds(x, &c.witness_subgradient).unwrap());
    }

    #[test]
    fn p2_quadshift_identity_no_effect() {
        let f = parse_func("quadshift(x1, 3)", 1).unwrap();
        let a = mtx(vec![vec![1]]);
        let an = analyze_p2(&f, &a, &rv(vec![3])).unwrap();
        assert!(an.existence.is_yes());
        assert_eq!(an.influence, Influence::NoEffect);
        assert_eq!(an.x_star, Some(vec![rat(3)]));
    }

    #[test]
    fn p2_hyperbola_counterexample() {
        let f = FuncExpr::new(
            2,
            vec![crate::atoms::Term {
                weight: Rat::one(),
                coords: vec![0, 1],
                kind: crate::atoms::AtomKind::HyperbolaInd,
            }],
        )
        .unwrap();
        let a = mtx(vec![vec![0, 1]]);
        // exact on (0, inf), not at 0
        let an = analyze_p2(&f, &a, &rv(vec![0])).unwrap();
        assert!(an.exact_at_b.is_no());
        assert_eq!(an.dom_parallel.as_ref().unwrap().render(), "(0,inf)");
        assert_eq!(an.a_dom_f.as_ref().unwrap().render(), "(0,inf)");
        let an = analyze_p2(&f, &a, &rv(vec![2])).unwrap();
        assert!(an.exact_at_b.is_yes());
        // d(A|>f) is not maximally monotone (Minty fails)
        assert!(an.subgrad_postcomp_maximal.is_no());
    }
}

use num_traits::One;
