//! A closed algebra of convex subsets of R^n with the exact queries the
//! diagnostics need: recession cone, intersection with an affine flat,
//! boundedness, singleton test, membership, projection onto a subspace and
//! normal cones of boxes.
//!
//! Internal normal form: a rational linear constraint system, or the
//! analytic region {x : x_p - a >= e^(x_q - b)} (other coordinates free).
//! Anything outside this catalog is rejected with a typed error rather
//! than approximated.

pub mod interval;
pub mod linsys;
pub mod render;

use crate::linalg::{dot, Subspace};
use crate::scalar::{rat, Rat};
use crate::sym::{SymError, SymVal};
use interval::{Bnd, Interval};
use linsys::{LinCon, LinSys, Rel};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum SetError {
    #[error("recession cone of the empty set is undefined")]
    EmptySet,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("unsupported intersection: {0}")]
    UnsupportedIntersection(String),
    #[error("unsupported projection: {0}")]
    UnsupportedProjection(String),
    #[error("operation leaves the rational catalog: {0}")]
    Symbolic(String),
    #[error("unsupported set operation: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// Affine flat: anchor + span(directions).
#[derive(Debug, Clone)]
pub struct AffineFlat {
    pub anchor: Vec<Rat>,
    pub dirs: Subspace,
}

impl AffineFlat {
    pub fn new(anchor: Vec<Rat>, dirs: Subspace) -> Result<Self, SetError> {
        if dirs.ambient_dim() != anchor.len() {
            return Err(SetError::DimensionMismatch(
                "flat directions vs anchor".into(),
            ));
        }
        Ok(AffineFlat { anchor, dirs })
    }

    pub fn subspace(dirs: Subspace) -> Self {
        let anchor = vec![Rat::zero(); dirs.ambient_dim()];
        AffineFlat { anchor, dirs }
    }

    pub fn dim(&self) -> usize {
        self.dirs.dim()
    }

    pub fn ambient(&self) -> usize {
        self.anchor.len()
    }

    /// H-representation: x - anchor orthogonal-complement equalities.
    pub fn to_linsys(&self) -> LinSys {
        let n = self.ambient();
        let mut cons = Vec::new();
        for row in self.dirs.orthogonal_complement().basis() {
            let rhs = dot(row, &self.anchor);
            cons.push(LinCon::new(row.clone(), Rel::Eq, rhs));
        }
        LinSys::new(n, cons)
    }
}

/// The exponential region {x : x_p - off_p >= e^(x_q - off_q)}; coordinates
/// other than p, q are unconstrained.
#[derive(Debug, Clone, PartialEq)]
pub struct ExpRegion {
    pub p: usize,
    pub q: usize,
    pub off_p: Rat,
    pub off_q: Rat,
}

#[derive(Debug, Clone, PartialEq)]
enum Repr {
    Empty,
    Lin(LinSys),
    Exp(ExpRegion),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexSet {
    dim: usize,
    repr: Repr,
}

/// One-dimensional product factor.
#[derive(Debug, Clone)]
pub enum Factor {
    Point(Rat),
    Iv(Interval),
}

impl ConvexSet {
    pub fn empty(dim: usize) -> Self {
        ConvexSet {
            dim,
            repr: Repr::Empty,
        }
    }

    pub fn whole(dim: usize) -> Self {
        ConvexSet {
            dim,
            repr: Repr::Lin(LinSys::whole_space(dim)),
        }
    }

    pub fn point(x: Vec<Rat>) -> Self {
        let dim = x.len();
        ConvexSet {
            dim,
            repr: Repr::Lin(LinSys::single_point(&x)),
        }
    }

    pub fn origin(dim: usize) -> Self {
        ConvexSet::point(vec![Rat::zero(); dim])
    }

    pub fn from_linsys(sys: LinSys) -> Self {
        let dim = sys.dim;
        if sys.is_feasible() {
            ConvexSet {
                dim,
                repr: Repr::Lin(sys),
            }
        } else {
            ConvexSet::empty(dim)
        }
    }

    /// H-polyhedron {x : Gx <= g, Ex = e}.
    pub fn polyhedron(
        ineq: Vec<(Vec<Rat>, Rat)>,
        eq: Vec<(Vec<Rat>, Rat)>,
        dim: usize,
    ) -> Result<Self, SetError> {
        let mut cons = Vec::new();
        for (coef, rhs) in ineq {
            if coef.len() != dim {
                return Err(SetError::DimensionMismatch("polyhedron row".into()));
            }
            cons.push(LinCon::new(coef, Rel::Le, rhs));
        }
        for (coef, rhs) in eq {
            if coef.len() != dim {
                return Err(SetError::DimensionMismatch("polyhedron row".into()));
            }
            cons.push(LinCon::new(coef, Rel::Eq, rhs));
        }
        Ok(ConvexSet::from_linsys(LinSys::new(dim, cons)))
    }

    /// Generator cone {sum l_i r_i + span(lines) : l >= 0}; dimension guard 4.
    pub fn cone_generated(
        rays: Vec<Vec<Rat>>,
        lines: Vec<Vec<Rat>>,
        dim: usize,
    ) -> Result<Self, SetError> {
        if dim > 4 {
            return Err(SetError::Unsupported(
                "generator-cone conversion beyond dimension 4".into(),
            ));
        }
        let k = rays.len() + lines.len();
        // variables (x, lambda); x - R lambda - L mu = 0, lambda >= 0
        let total = dim + k;
        let mut cons = Vec::new();
        for i in 0..dim {
            let mut coef = vec![Rat::zero(); total];
            coef[i] = Rat::one();
            for (j, r) in rays.iter().enumerate() {
                coef[dim + j] = -r[i].clone();
            }
            for (j, l) in lines.iter().enumerate() {
                coef[dim + rays.len() + j] = -l[i].clone();
            }
            cons.push(LinCon::new(coef, Rel::Eq, Rat::zero()));
        }
        for j in 0..rays.len() {
            let mut coef = vec![Rat::zero(); total];
            coef[dim + j] = -Rat::one();
            cons.push(LinCon::new(coef, Rel::Le, Rat::zero()));
        }
        let sys = LinSys::new(total, cons);
        let keep: Vec<usize> = (0..dim).collect();
        let projected = sys.eliminate_complement_of(&keep);
        let cons = projected
            .cons
            .into_iter()
            .map(|c| LinCon::new(c.coef[..dim].to_vec(), c.rel, c.rhs))
            .collect();
        Ok(ConvexSet::from_linsys(LinSys::new(dim, cons)))
    }

    /// Product of 1-D factors; interval ends must be rational.
    pub fn product(factors: Vec<Factor>) -> Result<Self, SetError> {
        let dim = factors.len();
        let mut cons = Vec::new();
        for (i, f) in factors.iter().enumerate() {
            let mut unit = vec![Rat::zero(); dim];
            unit[i] = Rat::one();
            match f {
                Factor::Point(v) => cons.push(LinCon::new(unit, Rel::Eq, v.clone())),
                Factor::Iv(iv) => {
                    if iv.is_empty()? {
                        return Ok(ConvexSet::empty(dim));
                    }
                    match &iv.hi {
                        Bnd::PlusInf => {}
                        Bnd::Closed(v) | Bnd::Open(v) => {
                            let r = v
                                .as_rational()
                                .ok_or_else(|| {
                                    SetError::Symbolic("product factor endpoint".into())
                                })?
                                .clone();
                            let rel = if matches!(iv.hi, Bnd::Open(_)) {
                                Rel::Lt
                            } else {
                                Rel::Le
                            };
                            cons.push(LinCon::new(unit.clone(), rel, r));
                        }
                        Bnd::NegInf => return Ok(ConvexSet::empty(dim)),
                    }
                    match &iv.lo {
                        Bnd::NegInf => {}
                        Bnd::Closed(v) | Bnd::Open(v) => {
                            let r = v
                                .as_rational()
                                .ok_or_else(|| {
                                    SetError::Symbolic("product factor endpoint".into())
                                })?
                                .clone();
                            let rel = if matches!(iv.lo, Bnd::Open(_)) {
                                Rel::Lt
                            } else {
                                Rel::Le
                            };
                            let neg: Vec<Rat> = unit.iter().map(|c| -c.clone()).collect();
                            cons.push(LinCon::new(neg, rel, -r));
                        }
                        Bnd::PlusInf => return Ok(ConvexSet::empty(dim)),
                    }
                }
            }
        }
        Ok(ConvexSet::from_linsys(LinSys::new(dim, cons)))
    }

    /// {x : x_p >= e^(x_q)} in standard position.
    pub fn exp_region(dim: usize, p: usize, q: usize) -> Self {
        assert!(p < dim && q < dim && p != q);
        ConvexSet {
            dim,
            repr: Repr::Exp(ExpRegion {
                p,
                q,
                off_p: Rat::zero(),
                off_q: Rat::zero(),
            }),
        }
    }

    /// The set spanned by a subspace (as a flat through the origin).
    pub fn from_subspace(s: &Subspace) -> Self {
        ConvexSet::from_linsys(AffineFlat::subspace(s.clone()).to_linsys())
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn is_empty(&self) -> bool {
        matches!(self.repr, Repr::Empty)
    }

    pub fn as_linsys(&self) -> Option<&LinSys> {
        match &self.repr {
            Repr::Lin(s) => Some(s),
            _ => None,
        }
    }

    pub fn as_exp_region(&self) -> Option<&ExpRegion> {
        match &self.repr {
            Repr::Exp(e) => Some(e),
            _ => None,
        }
    }

    pub fn translate(&self, off: &[Rat]) -> Result<ConvexSet, SetError> {
        if off.len() != self.dim {
            return Err(SetError::DimensionMismatch("translate offset".into()));
        }
        Ok(match &self.repr {
            Repr::Empty => self.clone(),
            Repr::Lin(s) => ConvexSet {
                dim: self.dim,
                repr: Repr::Lin(s.translate(off)),
            },
            Repr::Exp(e) => {
                for (i, v) in off.iter().enumerate() {
                    if i != e.p && i != e.q && !v.is_zero() {
                        // free coordinates absorb any shift
                        continue;
                    }
                }
                ConvexSet {
                    dim: self.dim,
                    repr: Repr::Exp(ExpRegion {
                        p: e.p,
                        q: e.q,
                        off_p: &e.off_p + &off[e.p],
                        off_q: &e.off_q + &off[e.q],
                    }),
                }
            }
        })
    }

    pub fn contains_point(&self, x: &[Rat]) -> Result<bool, SetError> {
        if x.len() != self.dim {
            return Err(SetError::DimensionMismatch("membership point".into()));
        }
        match &self.repr {
            Repr::Empty => Ok(false),
            Repr::Lin(s) => Ok(s.contains_point(x)),
            Repr::Exp(e) => {
                let lhs = SymVal::from_rat(&x[e.p] - &e.off_p);
                let rhs = SymVal::exp_of(&x[e.q] - &e.off_q);
                Ok(lhs.cmp_exact(&rhs)? != std::cmp::Ordering::Less)
            }
        }
    }

    /// Recession cone (S)_inf; typed error on the empty set.
    pub fn recession_cone(&self) -> Result<ConvexSet, SetError> {
        match &self.repr {
            Repr::Empty => Err(SetError::EmptySet),
            Repr::Lin(s) => Ok(ConvexSet::from_linsys(s.recession())),
            Repr::Exp(e) => {
                // directions: d_p >= 0, d_q <= 0
                let mut up = vec![Rat::zero(); self.dim];
                up[e.p] = -Rat::one();
                let mut dq = vec![Rat::zero(); self.dim];
                dq[e.q] = Rat::one();
                Ok(ConvexSet::from_linsys(LinSys::new(
                    self.dim,
                    vec![
                        LinCon::new(up, Rel::Le, Rat::zero()),
                        LinCon::new(dq, Rel::Le, Rat::zero()),
                    ],
                )))
            }
        }
    }

    /// Exact intersection with an affine flat.
    pub fn intersect_flat(&self, flat: &AffineFlat) -> Result<ConvexSet, SetError> {
        if flat.ambient() != self.dim {
            return Err(SetError::DimensionMismatch("flat ambient".into()));
        }
        match &self.repr {
            Repr::Empty => Ok(self.clone()),
            Repr::Lin(s) => Ok(ConvexSet::from_linsys(s.intersect(&flat.to_linsys()))),
            Repr::Exp(e) => match flat.dim() {
                0 => {
                    if self.contains_point(&flat.anchor)? {
                        Ok(ConvexSet::point(flat.anchor.clone()))
                    } else {
                        Ok(ConvexSet::empty(self.dim))
                    }
                }
                1 => self.exp_line_intersection(e, flat),
                d => Err(SetError::UnsupportedIntersection(format!(
                    "analytic region with a flat of dimension {d}"
                ))),
            },
        }
    }

    fn exp_line_intersection(
        &self,
        e: &ExpRegion,
        flat: &AffineFlat,
    ) -> Result<ConvexSet, SetError> {
        let d = &flat.dirs.basis()[0];
        let a = &flat.anchor;
        // alpha(t) = (a_p - off_p) + t d_p  must dominate  e^{(a_q - off_q) + t d_q}
        let alpha0 = &a[e.p] - &e.off_p;
        let dp = &d[e.p];
        let beta0 = &a[e.q] - &e.off_q;
        let dq = &d[e.q];
        let t_interval: Interval = if dq.is_zero() {
            if beta0.is_zero() {
                // alpha(t) >= 1
                linear_ge_threshold(&alpha0, dp, &rat(1))?
            } else if dp.is_zero() {
                // constant condition alpha0 >= e^{beta0}
                let lhs = SymVal::from_rat(alpha0.clone());
                let rhs = SymVal::exp_of(beta0.clone());
                if lhs.cmp_exact(&rhs)? != std::cmp::Ordering::Less {
                    Interval::whole()
                } else {
                    return Ok(ConvexSet::empty(self.dim));
                }
            } else {
                return Err(SetError::Symbolic(format!(
                    "line meets the exponential region at e^{}",
                    crate::scalar::render_rat(&beta0)
                )));
            }
        } else if dp.is_zero() {
            // alpha0 >= e^{beta(t)}  <=>  alpha0 > 0 and beta(t) <= log(alpha0)
            if !alpha0.is_positive() {
                return Ok(ConvexSet::empty(self.dim));
            }
            if alpha0.is_one() {
                // beta(t) <= 0
                linear_le_threshold(&beta0, dq, &rat(0))?
            } else {
                return Err(SetError::Symbolic(format!(
                    "line meets the exponential region at log {}",
                    crate::scalar::render_rat(&alpha0)
                )));
            }
        } else {
            return Err(SetError::Symbolic(
                "line crosses the exponential region transversally".into(),
            ));
        };
        if t_interval.is_empty()? {
            return Ok(ConvexSet::empty(self.dim));
        }
        // realize {a + t d : t in I} as a linear system
        let span = Subspace::new(self.dim, vec![d.clone()])
            .map_err(|err| SetError::DimensionMismatch(err.to_string()))?;
        let mut sys = AffineFlat::new(a.clone(), span)?.to_linsys();
        // t = <d, x - a>/<d,d>
        let dd = dot(d, d);
        let coef: Vec<Rat> = d.iter().map(|v| v / &dd).collect();
        let base = dot(&coef, a);
        push_interval_constraint(&mut sys, &coef, &base, &t_interval)?;
        Ok(ConvexSet::from_linsys(sys))
    }

    /// true iff the recession cone is {0} (or the set is empty).
    pub fn is_bounded(&self) -> Result<bool, SetError> {
        match &self.repr {
            Repr::Empty => Ok(true),
            Repr::Lin(s) => Ok(s.is_bounded()),
            Repr::Exp(_) => Ok(false),
        }
    }

    pub fn is_singleton(&self) -> Result<Option<Vec<Rat>>, SetError> {
        match &self.repr {
            Repr::Empty => Ok(None),
            Repr::Lin(s) => Ok(s.as_singleton()),
            Repr::Exp(_) => Ok(None),
        }
    }

    pub fn is_zero_singleton(&self) -> Result<bool, SetError> {
        Ok(match self.is_singleton()? {
            Some(p) => p.iter().all(|v| v.is_zero()),
            None => false,
        })
    }

    /// Exact image P_W(S) for polyhedral S; analytic regions only along
    /// coordinate subspaces.
    pub fn project_subspace(&self, w: &Subspace) -> Result<ConvexSet, SetError> {
        if w.ambient_dim() != self.dim {
            return Err(SetError::DimensionMismatch("projection subspace".into()));
        }
        match &self.repr {
            Repr::Empty => Ok(self.clone()),
            Repr::Lin(s) => {
                // y = P x, eliminate x
                let p = w.projector();
                let n = self.dim;
                let mut cons: Vec<LinCon> = s
                    .cons
                    .iter()
                    .map(|c| {
                        let mut coef = c.coef.clone();
                        coef.extend(vec![Rat::zero(); n]);
                        LinCon::new(coef, c.rel, c.rhs.clone())
                    })
                    .collect();
                for i in 0..n {
                    let mut coef = vec![Rat::zero(); 2 * n];
                    for j in 0..n {
                        coef[j] = -p.at(i, j).clone();
                    }
                    coef[n + i] = Rat::one();
                    cons.push(LinCon::new(coef, Rel::Eq, Rat::zero()));
                }
                let sys = LinSys::new(2 * n, cons);
                let keep: Vec<usize> = (n..2 * n).collect();
                let reduced = sys.eliminate_complement_of(&keep);
                let cons = reduced
                    .cons
                    .into_iter()
                    .map(|c| LinCon::new(c.coef[n..].to_vec(), c.rel, c.rhs))
                    .collect();
                Ok(ConvexSet::from_linsys(LinSys::new(n, cons)))
            }
            Repr::Exp(e) => {
                let axes = coordinate_axes_of(w).ok_or_else(|| {
                    SetError::UnsupportedProjection(
                        "analytic region onto a non-coordinate subspace".into(),
                    )
                })?;
                let mut cons = Vec::new();
                for i in 0..self.dim {
                    if !axes.contains(&i) {
                        let mut unit = vec![Rat::zero(); self.dim];
                        unit[i] = Rat::one();
                        cons.push(LinCon::new(unit, Rel::Eq, Rat::zero()));
                    }
                }
                if axes.contains(&e.p) && axes.contains(&e.q) {
                    return Err(SetError::UnsupportedProjection(
                        "projection keeping both analytic coordinates".into(),
                    ));
                }
                if axes.contains(&e.p) {
                    // image of the p coordinate is (off_p, inf)
                    let mut unit = vec![Rat::zero(); self.dim];
                    unit[e.p] = -Rat::one();
                    cons.push(LinCon::new(unit, Rel::Lt, -e.off_p.clone()));
                }
                // q alone is unconstrained
                Ok(ConvexSet::from_linsys(LinSys::new(self.dim, cons)))
            }
        }
    }

    /// Range of the functional g . x over the set.
    pub fn linear_image(&self, g: &[Rat]) -> Result<Interval, SetError> {
        if g.len() != self.dim {
            return Err(SetError::DimensionMismatch("image functional".into()));
        }
        match &self.repr {
            Repr::Empty => Ok(Interval::new(
                Bnd::open_rat(Rat::zero()),
                Bnd::open_rat(Rat::zero()),
            )),
            Repr::Lin(s) => Ok(s.linear_image(g)),
            Repr::Exp(e) => {
                for (i, c) in g.iter().enumerate() {
                    if i != e.p && i != e.q && !c.is_zero() {
                        // free coordinate with nonzero weight: the range is all of R
                        return Ok(Interval::whole());
                    }
                }
                let gp = &g[e.p];
                let gq = &g[e.q];
                let shift = SymVal::from_rat(gp * &e.off_p + gq * &e.off_q);
                let hi = exp_region_sup(gp, gq)?;
                let lo = match exp_region_sup(&-gp.clone(), &-gq.clone())? {
                    Bnd::PlusInf => Bnd::NegInf,
                    Bnd::Closed(v) => Bnd::Closed(v.neg()),
                    Bnd::Open(v) => Bnd::Open(v.neg()),
                    Bnd::NegInf => Bnd::PlusInf,
                };
                let iv = Interval::new(lo, hi).translate(&shift);
                Ok(iv)
            }
        }
    }

    /// Exact containment where the catalog can decide it.
    pub fn is_subset_of(&self, other: &ConvexSet) -> Result<bool, SetError> {
        if self.dim != other.dim {
            return Err(SetError::DimensionMismatch("containment".into()));
        }
        match (&self.repr, &other.repr) {
            (Repr::Empty, _) => Ok(true),
            (_, Repr::Empty) => Ok(self.is_empty()),
            (Repr::Lin(a), Repr::Lin(b)) => Ok(a.is_subset_of(b)),
            (Repr::Exp(a), Repr::Exp(b)) => {
                Ok(a.p == b.p && a.q == b.q && a.off_q == b.off_q && a.off_p <= b.off_p)
            }
            (Repr::Exp(_), Repr::Lin(b)) => {
                for c in &b.cons {
                    let iv = self.linear_image(&c.coef)?;
                    let rhs = SymVal::from_rat(c.rhs.clone());
                    let ok = match (&c.rel, &iv.hi) {
                        (_, Bnd::PlusInf) => false,
                        (Rel::Le, Bnd::Closed(v)) | (Rel::Le, Bnd::Open(v)) => {
                            v.cmp_exact(&rhs)? != std::cmp::Ordering::Greater
                        }
                        (Rel::Lt, Bnd::Closed(v)) => v.cmp_exact(&rhs)? == std::cmp::Ordering::Less,
                        (Rel::Lt, Bnd::Open(v)) => {
                            v.cmp_exact(&rhs)? != std::cmp::Ordering::Greater
                        }
                        (Rel::Eq, _) => {
                            let lo_ok = match &iv.lo {
                                Bnd::Closed(v) => v.cmp_exact(&rhs)? == std::cmp::Ordering::Equal,
                                _ => false,
                            };
                            let hi_ok = match &iv.hi {
                                Bnd::Closed(v) => v.cmp_exact(&rhs)? == std::cmp::Ordering::Equal,
                                _ => false,
                            };
                            lo_ok && hi_ok
                        }
                        (_, Bnd::NegInf) => true,
                    };
                    if !ok {
                        return Ok(false);
                    }
                }
                Ok(true)
            }
            (Repr::Lin(a), Repr::Exp(_)) => {
                if let Some(p) = a.as_singleton() {
                    other.contains_point(&p)
                } else {
                    Err(SetError::Unsupported(
                        "polyhedron inside analytic region".into(),
                    ))
                }
            }
        }
    }

    pub fn set_eq(&self, other: &ConvexSet) -> Result<bool, SetError> {
        Ok(self.is_subset_of(other)? && other.is_subset_of(self)?)
    }

    /// Deterministic member samples (for membership-based property tests).
    pub fn sample_points(
        &self,
        rng: &mut impl rand::Rng,
        count: usize,
    ) -> Result<Vec<Vec<Rat>>, SetError> {
        let base = match &self.repr {
            Repr::Empty => return Ok(Vec::new()),
            Repr::Lin(s) => s.find_point().ok_or(SetError::EmptySet)?,
            Repr::Exp(e) => {
                let mut x = vec![Rat::zero(); self.dim];
                x[e.p] = &e.off_p + rat(1);
                x[e.q] = e.off_q.clone();
                x
            }
        };
        let mut out = vec![base.clone()];
        let rays = self.recession_rays()?;
        let mut attempts = 0;
        while out.len() < count && attempts < count * 60 {
            attempts += 1;
            let mut cand = base.clone();
            for v in cand.iter_mut() {
                let num = rng.gen_range(-8i64..=8);
                let den = rng.gen_range(1i64..=4);
                *v += crate::scalar::ratio(num, den);
            }
            // optionally push along a recession ray to explore unbounded sets
            if !rays.is_empty() && rng.gen_bool(0.5) {
                let ray = &rays[rng.gen_range(0..rays.len())];
                let t = rat(rng.gen_range(0i64..=6));
                for (c, r) in cand.iter_mut().zip(ray) {
                    *c += r * &t;
                }
            }
            if self.contains_point(&cand)? {
                out.push(cand);
            }
        }
        Ok(out)
    }

    fn recession_rays(&self) -> Result<Vec<Vec<Rat>>, SetError> {
        if self.is_empty() {
            return Ok(Vec::new());
        }
        let rec = self.recession_cone()?;
        let mut rays = Vec::new();
        if let Some(sys) = rec.as_linsys() {
            for i in 0..self.dim {
                for sign in [1i64, -1] {
                    let mut d = vec![Rat::zero(); self.dim];
                    d[i] = rat(sign);
                    if sys.contains_point(&d) && !crate::linalg::is_zero_vec(&d) {
                        rays.push(d);
                    }
                }
            }
        }
        Ok(rays)
    }

    pub fn render(&self) -> String {
        render::render_set(self)
    }

    /// Intersection within the catalog: linear meets linear, and anything
    /// meets an unconstrained set.
    pub fn intersect(&self, other: &ConvexSet) -> Result<ConvexSet, SetError> {
        if self.dim != other.dim {
            return Err(SetError::DimensionMismatch("intersection".into()));
        }
        match (&self.repr, &other.repr) {
            (Repr::Empty, _) | (_, Repr::Empty) => Ok(ConvexSet::empty(self.dim)),
            (Repr::Lin(a), Repr::Lin(b)) => Ok(ConvexSet::from_linsys(a.intersect(b))),
            (Repr::Exp(_), Repr::Lin(b)) if b.cons.is_empty() => Ok(self.clone()),
            (Repr::Lin(a), Repr::Exp(_)) if a.cons.is_empty() => Ok(other.clone()),
            _ => Err(SetError::Unsupported(
                "intersection involving an analytic region".into(),
            )),
        }
    }

    /// The scaled set {k x : x in S} for nonzero rational k.
    pub fn scale(&self, k: &Rat) -> Result<ConvexSet, SetError> {
        assert!(!k.is_zero());
        match &self.repr {
            Repr::Empty => Ok(self.clone()),
            Repr::Lin(s) => {
                let cons = s
                    .cons
                    .iter()
                    .map(|c| {
                        // x in kS  <=>  x/k in S
                        let (coef, rhs) = if k.is_positive() {
                            (c.coef.clone(), &c.rhs * k)
                        } else {
                            (
                                c.coef.iter().map(|v| -v.clone()).collect(),
                                &c.rhs * (-k.clone()),
                            )
                        };
                        LinCon::new(coef, c.rel, rhs)
                    })
                    .collect();
                Ok(ConvexSet::from_linsys(LinSys::new(self.dim, cons)))
            }
            Repr::Exp(_) => Err(SetError::Unsupported(
                "scaling an analytic region".into(),
            )),
        }
    }

    /// Tangent cone at a member point (closure of the feasible directions).
    pub fn tangent_cone_at(&self, x: &[Rat]) -> Result<ConvexSet, SetError> {
        if !self.contains_point(x)? {
            return Err(SetError::Unsupported(
                "tangent cone requested at a non-member point".into(),
            ));
        }
        match &self.repr {
            Repr::Empty => unreachable!("empty set has no members"),
            Repr::Lin(s) => {
                let mut cons = Vec::new();
                for c in &s.cons {
                    match c.rel {
                        Rel::Eq => {
                            cons.push(LinCon::new(c.coef.clone(), Rel::Eq, Rat::zero()))
                        }
                        Rel::Le => {
                            if c.eval_lhs(x) == c.rhs {
                                cons.push(LinCon::new(c.coef.clone(), Rel::Le, Rat::zero()));
                            }
                        }
                        Rel::Lt => {}
                    }
                }
                Ok(ConvexSet::from_linsys(LinSys::new(self.dim, cons)))
            }
            Repr::Exp(e) => {
                let lhs = SymVal::from_rat(&x[e.p] - &e.off_p);
                let rhs = SymVal::exp_of(&x[e.q] - &e.off_q);
                match lhs.cmp_exact(&rhs)? {
                    std::cmp::Ordering::Greater => Ok(ConvexSet::whole(self.dim)),
                    std::cmp::Ordering::Equal => {
                        // rational boundary points have x_q = off_q; the
                        // boundary slope there is e^0 = 1
                        let mut coef = vec![Rat::zero(); self.dim];
                        coef[e.p] = -Rat::one();
                        coef[e.q] = Rat::one();
                        Ok(ConvexSet::from_linsys(LinSys::new(
                            self.dim,
                            vec![LinCon::new(coef, Rel::Le, Rat::zero())],
                        )))
                    }
                    std::cmp::Ordering::Less => unreachable!("membership checked"),
                }
            }
        }
    }
}

/// Product of sets over disjoint coordinate blocks, embedded into R^dim.
/// At most one analytic factor, and only alongside unconstrained factors.
pub fn embed_product(dim: usize, parts: &[(Vec<usize>, ConvexSet)]) -> Result<ConvexSet, SetError> {
    for (coords, part) in parts {
        if part.dim() != coords.len() {
            return Err(SetError::DimensionMismatch("block embedding".into()));
        }
        if part.is_empty() {
            return Ok(ConvexSet::empty(dim));
        }
    }
    let mut exp_part: Option<(usize, usize, Rat, Rat)> = None;
    let mut cons: Vec<LinCon> = Vec::new();
    for (coords, part) in parts {
        match &part.repr {
            Repr::Empty => unreachable!("handled above"),
            Repr::Lin(s) => {
                for c in &s.cons {
                    let mut coef = vec![Rat::zero(); dim];
                    for (local, &global) in coords.iter().enumerate() {
                        coef[global] = c.coef[local].clone();
                    }
                    cons.push(LinCon::new(coef, c.rel, c.rhs.clone()));
                }
            }
            Repr::Exp(e) => {
                if exp_part.is_some() {
                    return Err(SetError::Unsupported(
                        "two analytic factors in one product".into(),
                    ));
                }
                exp_part = Some((
                    coords[e.p],
                    coords[e.q],
                    e.off_p.clone(),
                    e.off_q.clone(),
                ));
            }
        }
    }
    match exp_part {
        None => Ok(ConvexSet::from_linsys(LinSys::new(dim, cons))),
        Some((p, q, off_p, off_q)) => {
            if !cons.is_empty() {
                return Err(SetError::Unsupported(
                    "analytic factor combined with constrained factors".into(),
                ));
            }
            Ok(ConvexSet {
                dim,
                repr: Repr::Exp(ExpRegion { p, q, off_p, off_q }),
            })
        }
    }
}

/// sup of gp*p + gq*q over {(p,q) : p >= e^q} (standard position).
fn exp_region_sup(gp: &Rat, gq: &Rat) -> Result<Bnd, SetError> {
    if gp.is_positive() {
        return Ok(Bnd::PlusInf);
    }
    if gp.is_zero() {
        return Ok(if gq.is_zero() {
            Bnd::Closed(SymVal::zero())
        } else {
            Bnd::PlusInf
        });
    }
    // gp < 0: optimum on the boundary p = e^q
    if gq.is_negative() {
        return Ok(Bnd::PlusInf);
    }
    if gq.is_zero() {
        // gp * e^q -> 0 from below as q -> -inf; supremum 0, not attained
        return Ok(Bnd::Open(SymVal::zero()));
    }
    // maximize gp e^q + gq q at e^q = -gq/gp
    let ratio = -gq / gp; // positive
    let log_term = SymVal::log_of(&ratio).map_err(SetError::Sym)?;
    let val = SymVal::from_rat(-gq.clone()).add(&log_term.scale(gq));
    Ok(Bnd::Closed(val))
}

/// {t : base + t*step >= threshold} as an interval in t.
fn linear_ge_threshold(base: &Rat, step: &Rat, threshold: &Rat) -> Result<Interval, SetError> {
    if step.is_zero() {
        return Ok(if base >= threshold {
            Interval::whole()
        } else {
            Interval::new(Bnd::open_rat(Rat::zero()), Bnd::open_rat(Rat::zero()))
        });
    }
    let bound = (threshold - base) / step;
    Ok(if step.is_positive() {
        Interval::new(Bnd::closed_rat(bound), Bnd::PlusInf)
    } else {
        Interval::new(Bnd::NegInf, Bnd::closed_rat(bound))
    })
}

fn linear_le_threshold(base: &Rat, step: &Rat, threshold: &Rat) -> Result<Interval, SetError> {
    let neg_base = -base.clone();
    let neg_step = -step.clone();
    linear_ge_threshold(&neg_base, &neg_step, &-threshold.clone())
}

fn push_interval_constraint(
    sys: &mut LinSys,
    coef: &[Rat],
    base: &Rat,
    iv: &Interval,
) -> Result<(), SetError> {
    // t = coef.x - base constrained to iv
    match &iv.hi {
        Bnd::PlusInf => {}
        Bnd::Closed(v) | Bnd::Open(v) => {
            let r = v
                .as_rational()
                .ok_or_else(|| SetError::Symbolic("interval endpoint".into()))?;
            let rel = if matches!(iv.hi, Bnd::Open(_)) {
                Rel::Lt
            } else {
                Rel::Le
            };
            sys.push(LinCon::new(coef.to_vec(), rel, r + base));
        }
        Bnd::NegInf => {
            sys.push(LinCon::new(
                vec![Rat::zero(); coef.len()],
                Rel::Le,
                -Rat::one(),
            ));
        }
    }
    match &iv.lo {
        Bnd::NegInf => {}
        Bnd::Closed(v) | Bnd::Open(v) => {
            let r = v
                .as_rational()
                .ok_or_else(|| SetError::Symbolic("interval endpoint".into()))?;
            let rel = if matches!(iv.lo, Bnd::Open(_)) {
                Rel::Lt
            } else {
                Rel::Le
            };
            let neg: Vec<Rat> = coef.iter().map(|c| -c.clone()).collect();
            sys.push(LinCon::new(neg, rel, -(r + base)));
        }
        Bnd::PlusInf => {
            sys.push(LinCon::new(
                vec![Rat::zero(); coef.len()],
                Rel::Le,
                -Rat::one(),
            ));
        }
    }
    Ok(())
}

/// Image {Mx : x in S} of a polyhedral set under a rational matrix.
pub fn linear_map_image(
    set: &ConvexSet,
    m: &crate::linalg::RationalMatrix,
) -> Result<ConvexSet, SetError> {
    if m.cols() != set.dim() {
        return Err(SetError::DimensionMismatch("map image".into()));
    }
    let rows = m.rows();
    if set.is_empty() {
        return Ok(ConvexSet::empty(rows));
    }
    let sys = set.as_linsys().ok_or_else(|| {
        SetError::Unsupported("image of an analytic region under a general map".into())
    })?;
    let n = set.dim();
    // variables (x, y) with y = Mx
    let mut cons: Vec<LinCon> = sys
        .cons
        .iter()
        .map(|c| {
            let mut coef = c.coef.clone();
            coef.extend(vec![Rat::zero(); rows]);
            LinCon::new(coef, c.rel, c.rhs.clone())
        })
        .collect();
    for i in 0..rows {
        let mut coef = vec![Rat::zero(); n + rows];
        for j in 0..n {
            coef[j] = -m.at(i, j).clone();
        }
        coef[n + i] = Rat::one();
        cons.push(LinCon::new(coef, Rel::Eq, Rat::zero()));
    }
    let sys = LinSys::new(n + rows, cons);
    let keep: Vec<usize> = (n..n + rows).collect();
    let reduced = sys.eliminate_complement_of(&keep);
    let cons = reduced
        .cons
        .into_iter()
        .map(|c| LinCon::new(c.coef[n..].to_vec(), c.rel, c.rhs))
        .collect();
    Ok(ConvexSet::from_linsys(LinSys::new(rows, cons)))
}

/// Exact Euclidean projection of the origin onto a nonempty polyhedron:
/// candidates come from equality-restricted least-norm solves over subsets
/// of tight rows, certified by the variational inequality
/// P is contained in {y : <x, y> >= <x, x>}.
pub fn min_norm_point(sys: &LinSys) -> Option<Vec<Rat>> {
    use crate::linalg::RationalMatrix;
    if !sys.is_feasible() {
        return None;
    }
    let n = sys.dim;
    let eqs: Vec<&LinCon> = sys.cons.iter().filter(|c| c.rel == Rel::Eq).collect();
    let ineqs: Vec<&LinCon> = sys.cons.iter().filter(|c| c.rel != Rel::Eq).collect();
    if ineqs.len() > 16 {
        return None; // beyond desk scale
    }
    let mut best: Option<Vec<Rat>> = None;
    'subsets: for mask in 0..(1usize << ineqs.len()) {
        // stack equalities and the selected tight inequalities
        let mut rows: Vec<Vec<Rat>> = Vec::new();
        let mut rhs: Vec<Rat> = Vec::new();
        for c in &eqs {
            rows.push(c.coef.clone());
            rhs.push(c.rhs.clone());
        }
        for (i, c) in ineqs.iter().enumerate() {
            if mask & (1 << i) != 0 {
                rows.push(c.coef.clone());
                rhs.push(c.rhs.clone());
            }
        }
        let x = if rows.is_empty() {
            vec![Rat::zero(); n]
        } else {
            // least-norm solution of C x = d: x = C^+ d; verify consistency
            let c = RationalMatrix::from_rows(rows).ok()?;
            let pinv = c.pseudoinverse();
            let x = pinv.mul_vec(&rhs).ok()?;
            let back = c.mul_vec(&x).ok()?;
            if back != rhs {
                continue 'subsets;
            }
            x
        };
        if !sys.contains_point(&x) {
            continue;
        }
        // variational certificate: P subset of {y : <x, y> >= <x,x>}
        let norm2: Rat = x.iter().map(|v| v * v).sum();
        let neg_x: Vec<Rat> = x.iter().map(|v| -v.clone()).collect();
        let mut halfspace = LinSys::whole_space(n);
        halfspace.push(LinCon::new(neg_x, Rel::Le, -norm2));
        if sys.is_subset_of(&halfspace) {
            best = Some(x);
            break;
        }
    }
    best
}

/// Minkowski sum of two polyhedral sets, by eliminating the split variables.
pub fn minkowski_sum(a: &ConvexSet, b: &ConvexSet) -> Result<ConvexSet, SetError> {
    if a.dim() != b.dim() {
        return Err(SetError::DimensionMismatch("minkowski sum".into()));
    }
    if a.is_empty() || b.is_empty() {
        return Ok(ConvexSet::empty(a.dim()));
    }
    let (sa, sb) = match (a.as_linsys(), b.as_linsys()) {
        (Some(sa), Some(sb)) => (sa, sb),
        _ => {
            return Err(SetError::Unsupported(
                "minkowski sum with an analytic region".into(),
            ))
        }
    };
    let n = a.dim();
    // variables (x, u): u in A and x - u in B
    let mut cons: Vec<LinCon> = Vec::new();
    for c in &sa.cons {
        let mut coef = vec![Rat::zero(); 2 * n];
        for j in 0..n {
            coef[n + j] = c.coef[j].clone();
        }
        cons.push(LinCon::new(coef, c.rel, c.rhs.clone()));
    }
    for c in &sb.cons {
        let mut coef = vec![Rat::zero(); 2 * n];
        for j in 0..n {
            coef[j] = c.coef[j].clone();
            coef[n + j] = -c.coef[j].clone();
        }
        cons.push(LinCon::new(coef, c.rel, c.rhs.clone()));
    }
    let sys = LinSys::new(2 * n, cons);
    let keep: Vec<usize> = (0..n).collect();
    let reduced = sys.eliminate_complement_of(&keep);
    let cons = reduced
        .cons
        .into_iter()
        .map(|c| LinCon::new(c.coef[..n].to_vec(), c.rel, c.rhs))
        .collect();
    Ok(ConvexSet::from_linsys(LinSys::new(n, cons)))
}

/// If W is spanned by coordinate axes, returns their indices.
fn coordinate_axes_of(w: &Subspace) -> Option<Vec<usize>> {
    let mut axes = Vec::new();
    for v in w.basis() {
        let nz: Vec<usize> = v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, _)| i).collect();
        if nz.len() != 1 {
            return None;
        }
        axes.push(nz[0]);
    }
    axes.sort_unstable();
    axes.dedup();
    if axes.len() != w.dim() {
        return None;
    }
    Some(axes)
}

/// Normal cone of the box [lower, upper] at u, as a product of rays.
pub fn normal_cone_box(lower: &[Rat], upper: &[Rat], u: &[Rat]) -> Result<ConvexSet, SetError> {
    let n = lower.len();
    if upper.len() != n || u.len() != n {
        return Err(SetError::DimensionMismatch("box data".into()));
    }
    for i in 0..n {
        if u[i] < lower[i] || u[i] > upper[i] {
            return Ok(ConvexSet::empty(n));
        }
    }
    let mut factors = Vec::with_capacity(n);
    for i in 0..n {
        let at_lower = u[i] == lower[i];
        let at_upper = u[i] == upper[i];
        let f = match (at_lower, at_upper) {
            (true, true) => Factor::Iv(Interval::whole()),
            (false, true) => Factor::Iv(Interval::new(Bnd::closed_rat(Rat::zero()), Bnd::PlusInf)),
            (true, false) => Factor::Iv(Interval::new(Bnd::NegInf, Bnd::closed_rat(Rat::zero()))),
            (false, false) => Factor::Point(Rat::zero()),
        };
        factors.push(f);
    }
    ConvexSet::product(factors)
}

/// Finite union of convex sets (kept as an explicit list; members are never
/// merged, so piecewise provenance survives into certificates).
#[derive(Debug, Clone)]
pub struct SetUnion {
    pub dim: usize,
    pub parts: Vec<ConvexSet>,
}

impl SetUnion {
    pub fn empty(dim: usize) -> Self {
        SetUnion {
            dim,
            parts: Vec::new(),
        }
    }

    pub fn single(set: ConvexSet) -> Self {
        let dim = set.dim();
        let parts = if set.is_empty() { vec![] } else { vec![set] };
        SetUnion { dim, parts }
    }

    pub fn from_parts(dim: usize, parts: Vec<ConvexSet>) -> Self {
        let parts = parts.into_iter().filter(|p| !p.is_empty()).collect();
        SetUnion { dim, parts }
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn translate(&self, off: &[Rat]) -> Result<SetUnion, SetError> {
        let mut parts = Vec::new();
        for p in &self.parts {
            parts.push(p.translate(off)?);
        }
        Ok(SetUnion {
            dim: self.dim,
            parts,
        })
    }

    pub fn intersect_flat(&self, flat: &AffineFlat) -> Result<SetUnion, SetError> {
        let mut parts = Vec::new();
        for p in &self.parts {
            let s = p.intersect_flat(flat)?;
            if !s.is_empty() {
                parts.push(s);
            }
        }
        Ok(SetUnion {
            dim: self.dim,
            parts,
        })
    }

    /// Recession of a finite union, member by member.
    pub fn recession_parts(&self) -> Result<SetUnion, SetError> {
        let mut parts = Vec::new();
        for p in &self.parts {
            parts.push(p.recession_cone()?);
        }
        Ok(SetUnion {
            dim: self.dim,
            parts,
        })
    }

    pub fn contains_point(&self, x: &[Rat]) -> Result<bool, SetError> {
        for p in &self.parts {
            if p.contains_point(x)? {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// union == {0} exactly: every member is {0} and there is one.
    pub fn is_zero_singleton(&self) -> Result<bool, SetError> {
        if self.parts.is_empty() {
            return Ok(false);
        }
        for p in &self.parts {
            if !p.is_zero_singleton()? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    pub fn render(&self) -> String {
        if self.parts.is_empty() {
            return "empty".into();
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut parts = Vec::new();
        for p in &self.parts {
            let r = p.render();
            if seen.insert(r.clone()) {
                parts.push(r);
            }
        }
        parts.join(" U ")
    }
}
