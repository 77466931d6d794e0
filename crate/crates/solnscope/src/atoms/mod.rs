//! Catalog of convex function atoms and their separable composition.
//! A function expression is a positively weighted sum of atoms over
//! coordinate blocks; uncovered coordinates behave as f = 0. Each
//! expression exposes evaluation, domain, subdifferential, conjugate
//! subdifferential, recession function/kernel/cone, subdifferential range
//! and sublevel sets, all exactly.

pub mod dsl;
pub mod kinds;

use crate::scalar::Rat;
use crate::sets::linsys::{LinCon, LinSys, Rel};
use crate::sets::{embed_product, minkowski_sum, ConvexSet, SetError, SetUnion};
use crate::sym::{ExtVal, SymError};
pub use kinds::AtomKind;
use num_traits::{Signed, Zero};

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum CatalogError {
    #[error("point lies outside the effective domain")]
    DomainViolation,
    #[error("exact value leaves the rational catalog: {0}")]
    Symbolic(String),
    #[error("unsupported for this atom: {0}")]
    Unsupported(String),
    #[error("operation needs a separable expression: {0}")]
    NonSeparable(String),
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// One weighted atom over a coordinate block.
#[derive(Debug, Clone, PartialEq)]
pub struct Term {
    pub weight: Rat,
    pub coords: Vec<usize>,
    pub kind: AtomKind,
}

#[derive(Debug, Clone, PartialEq)]
pub struct FuncExpr {
    dim: usize,
    terms: Vec<Term>,
}

impl FuncExpr {
    pub fn new(dim: usize, terms: Vec<Term>) -> Result<Self, CatalogError> {
        for t in &terms {
            if !t.weight.is_positive() {
                return Err(CatalogError::Unsupported(
                    "atom weights must be positive".into(),
                ));
            }
            if t.coords.len() != t.kind.arity() {
                return Err(CatalogError::Unsupported(format!(
                    "atom arity {} vs {} coordinates",
                    t.kind.arity(),
                    t.coords.len()
                )));
            }
            let mut seen = std::collections::HashSet::new();
            for &c in &t.coords {
                if c >= dim {
                    return Err(CatalogError::Unsupported(format!(
                        "coordinate x{} beyond dimension {dim}",
                        c + 1
                    )));
                }
                if !seen.insert(c) {
                    return Err(CatalogError::Unsupported(
                        "atom reads a coordinate twice".into(),
                    ));
                }
            }
        }
        Ok(FuncExpr { dim, terms })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn terms(&self) -> &[Term] {
        &self.terms
    }

    pub fn norm1(dim: usize) -> FuncExpr {
        let terms = (0..dim)
            .map(|i| Term {
                weight: Rat::one(),
                coords: vec![i],
                kind: AtomKind::Abs,
            })
            .collect();
        FuncExpr { dim, terms }
    }

    /// ell-1 norm with unit weights on every coordinate?
    pub fn is_norm1(&self) -> bool {
        if self.terms.len() != self.dim {
            return false;
        }
        let mut covered = vec![false; self.dim];
        for t in &self.terms {
            if t.kind != AtomKind::Abs || !t.weight.is_one() {
                return false;
            }
            covered[t.coords[0]] = true;
        }
        covered.into_iter().all(|c| c)
    }

    /// Terms pairwise coordinate-disjoint?
    pub fn is_separable(&self) -> bool {
        let mut seen = std::collections::HashSet::new();
        for t in &self.terms {
            for &c in &t.coords {
                if !seen.insert(c) {
                    return false;
                }
            }
        }
        true
    }

    /// Every block one-dimensional (after implicit zero fill)?
    pub fn is_coordinate_separable(&self) -> bool {
        self.is_separable() && self.terms.iter().all(|t| t.kind.arity() == 1)
    }

    /// Disjoint blocks covering all coordinates; uncovered coordinates get
    /// implicit zero atoms. Errors when terms overlap.
    pub fn blocks(&self) -> Result<Vec<Term>, CatalogError> {
        if !self.is_separable() {
            return Err(CatalogError::NonSeparable(
                "terms share coordinates".into(),
            ));
        }
        let mut covered = vec![false; self.dim];
        let mut out = self.terms.clone();
        for t in &self.terms {
            for &c in &t.coords {
                covered[c] = true;
            }
        }
        for (c, was) in covered.iter().enumerate() {
            if !was {
                out.push(Term {
                    weight: Rat::one(),
                    coords: vec![c],
                    kind: AtomKind::Zero,
                });
            }
        }
        Ok(out)
    }

    fn slice<'a>(&self, x: &'a [Rat], coords: &[usize]) -> Vec<Rat> {
        coords.iter().map(|&c| x[c].clone()).collect()
    }

    pub fn eval(&self, x: &[Rat]) -> ExtVal {
        assert_eq!(x.len(), self.dim);
        let mut acc = ExtVal::zero();
        for t in &self.terms {
            let local = self.slice(x, &t.coords);
            let v = t.kind.eval(&local);
            let v = match v {
                ExtVal::Finite(s) => ExtVal::Finite(s.scale(&t.weight)),
                other => other,
            };
            acc = acc.add(&v);
        }
        acc
    }

    pub fn domain(&self) -> Result<ConvexSet, CatalogError> {
        let mut acc = ConvexSet::whole(self.dim);
        for t in &self.terms {
            let d = t.kind.domain()?;
            let embedded = embed_product(self.dim, &[(t.coords.clone(), d)])?;
            acc = acc.intersect(&embedded)?;
        }
        Ok(acc)
    }

    pub fn contains_dom(&self, x: &[Rat]) -> bool {
        self.terms
            .iter()
            .all(|t| t.kind.contains_dom(&self.slice(x, &t.coords)))
    }

    /// df(x), exact; the sum rule over terms (Minkowski sum when terms
    /// overlap; all catalog domains are open where it matters).
    pub fn subdiff(&self, x: &[Rat]) -> Result<ConvexSet, CatalogError> {
        if !self.contains_dom(x) {
            return Err(CatalogError::DomainViolation);
        }
        if self.is_separable() {
            let mut parts = Vec::new();
            for t in self.blocks()? {
                let local = self.slice(x, &t.coords);
                let s = t.kind.subdiff(&local)?;
                let s = s.scale(&t.weight)?;
                parts.push((t.coords.clone(), s));
            }
            return Ok(embed_product(self.dim, &parts)?);
        }
        let mut acc = ConvexSet::origin(self.dim);
        for t in &self.terms {
            let local = self.slice(x, &t.coords);
            let s = t.kind.subdiff(&local)?.scale(&t.weight)?;
            let embedded = embed_part_padded(self.dim, &t.coords, &s)?;
            acc = minkowski_sum(&acc, &embedded)?;
        }
        Ok(acc)
    }

    /// df*(u) = (df)^{-1}(u); Empty when u lies outside ran df.
    pub fn conj_subdiff(&self, u: &[Rat]) -> Result<ConvexSet, CatalogError> {
        assert_eq!(u.len(), self.dim);
        let mut parts = Vec::new();
        for t in self.blocks()? {
            let local: Vec<Rat> = t.coords.iter().map(|&c| &u[c] / &t.weight).collect();
            let s = t.kind.conj_subdiff(&local)?;
            if s.is_empty() {
                return Ok(ConvexSet::empty(self.dim));
            }
            parts.push((t.coords.clone(), s));
        }
        Ok(embed_product(self.dim, &parts)?)
    }

    /// Recession function value f_inf(d).
    pub fn recession(&self, d: &[Rat]) -> ExtVal {
        let mut acc = ExtVal::zero();
        for t in &self.terms {
            let local = self.slice(d, &t.coords);
            let v = match t.kind.recession(&local) {
                ExtVal::Finite(s) => ExtVal::Finite(s.scale(&t.weight)),
                other => other,
            };
            acc = acc.add(&v);
        }
        acc
    }

    /// ker f_inf = {d : f_inf(d) = 0}.
    pub fn recession_kernel(&self) -> Result<ConvexSet, CatalogError> {
        let all_nonneg = self.terms.iter().all(|t| t.kind.nonneg_recession());
        if all_nonneg {
            // sum of nonnegatives vanishes iff each does
            let mut acc = ConvexSet::whole(self.dim);
            for t in &self.terms {
                let k = t.kind.recession_kernel();
                let embedded = embed_product(self.dim, &[(t.coords.clone(), k)])?;
                acc = acc.intersect(&embedded)?;
            }
            return Ok(acc);
        }
        // sign-indefinite recessions: only the all-linear case stays convex
        if self
            .terms
            .iter()
            .all(|t| matches!(t.kind, AtomKind::Linear { .. } | AtomKind::Zero))
        {
            let mut coef = vec![Rat::zero(); self.dim];
            for t in &self.terms {
                if let AtomKind::Linear { coef: c } = &t.kind {
                    for (local, &global) in t.coords.iter().enumerate() {
                        coef[global] += &t.weight * &c[local];
                    }
                }
            }
            return Ok(ConvexSet::from_linsys(LinSys::new(
                self.dim,
                vec![LinCon::new(coef, Rel::Eq, Rat::zero())],
            )));
        }
        Err(CatalogError::Unsupported(
            "kernel of a sign-indefinite recession function".into(),
        ))
    }

    /// R_f = {d : f_inf(d) <= 0} via an exact epigraph encoding.
    pub fn recession_cone_fn(&self) -> Result<ConvexSet, CatalogError> {
        let n = self.dim;
        let b = self.terms.len();
        // variables (d, t_1..t_b); final sum constraint then eliminate t
        let total = n + b;
        let mut cons: Vec<LinCon> = Vec::new();
        let mut sum_coef = vec![Rat::zero(); total];
        for (bi, t) in self.terms.iter().enumerate() {
            let tvar = n + bi;
            let mut raw_rows: Vec<(Vec<Rat>, Rel)> = Vec::new(); // over block-local d
            let mut uses_t = false;
            match &t.kind {
                AtomKind::Zero => {}
                AtomKind::Linear { coef } => {
                    for (local, &g) in t.coords.iter().enumerate() {
                        sum_coef[g] += &t.weight * &coef[local];
                    }
                }
                AtomKind::Abs | AtomKind::HingeAbs { .. } => {
                    uses_t = true;
                    raw_rows.push((vec![t.weight.clone()], Rel::Le)); // w*d <= t
                    raw_rows.push((vec![-t.weight.clone()], Rel::Le));
                }
                AtomKind::Hinge { w, .. } => {
                    uses_t = true;
                    raw_rows.push((w.iter().map(|v| v * &t.weight).collect(), Rel::Le));
                    raw_rows.push((vec![Rat::zero(); w.len()], Rel::Le));
                }
                AtomKind::Exp { w, .. } => {
                    // finite only when w.d <= 0, contributing 0
                    let mut coef = vec![Rat::zero(); total];
                    for (local, &g) in t.coords.iter().enumerate() {
                        coef[g] = w[local].clone();
                    }
                    cons.push(LinCon::new(coef, Rel::Le, Rat::zero()));
                }
                AtomKind::NegLog { w, .. } => {
                    let mut coef = vec![Rat::zero(); total];
                    for (local, &g) in t.coords.iter().enumerate() {
                        coef[g] = -w[local].clone();
                    }
                    cons.push(LinCon::new(coef, Rel::Le, Rat::zero()));
                }
                AtomKind::HingeExpDiff => {
                    // finite region d0 <= 0; value max{-weight*d1, 0}
                    let mut coef = vec![Rat::zero(); total];
                    coef[t.coords[0]] = Rat::one();
                    cons.push(LinCon::new(coef, Rel::Le, Rat::zero()));
                    uses_t = true;
                    raw_rows.push((vec![Rat::zero(), -t.weight.clone()], Rel::Le));
                    raw_rows.push((vec![Rat::zero(), Rat::zero()], Rel::Le));
                }
                AtomKind::QuadShift { .. } => {
                    let mut coef = vec![Rat::zero(); total];
                    coef[t.coords[0]] = Rat::one();
                    cons.push(LinCon::new(coef, Rel::Eq, Rat::zero()));
                }
                AtomKind::HyperbolaInd => {
                    for &g in &t.coords {
                        let mut coef = vec![Rat::zero(); total];
                        coef[g] = -Rat::one();
                        cons.push(LinCon::new(coef, Rel::Le, Rat::zero()));
                    }
                }
            }
            if uses_t {
                sum_coef[tvar] = Rat::one();
                for (row, rel) in raw_rows {
                    // row.d - t <= 0
                    let mut coef = vec![Rat::zero(); total];
                    for (local, &g) in t.coords.iter().enumerate() {
                        coef[g] = row[local].clone();
                    }
                    coef[tvar] = -Rat::one();
                    cons.push(LinCon::new(coef, rel, Rat::zero()));
                }
            }
        }
        cons.push(LinCon::new(sum_coef, Rel::Le, Rat::zero()));
        let sys = LinSys::new(total, cons);
        let keep: Vec<usize> = (0..n).collect();
        let reduced = sys.eliminate_complement_of(&keep);
        let cons = reduced
            .cons
            .into_iter()
            .map(|c| LinCon::new(c.coef[..n].to_vec(), c.rel, c.rhs))
            .collect();
        Ok(ConvexSet::from_linsys(LinSys::new(n, cons)))
    }

    /// ran df as a finite union of convex pieces.
    pub fn range_subdiff(&self) -> Result<SetUnion, CatalogError> {
        let mut pieces: Vec<Vec<(Vec<usize>, ConvexSet)>> = vec![Vec::new()];
        for t in self.blocks()? {
            let block_union = t.kind.range_subdiff()?;
            let scaled: Vec<ConvexSet> = block_union
                .parts
                .iter()
                .map(|p| p.scale(&t.weight))
                .collect::<Result<_, _>>()?;
            let mut next = Vec::new();
            for prefix in &pieces {
                for part in &scaled {
                    let mut row = prefix.clone();
                    row.push((t.coords.clone(), part.clone()));
                    next.push(row);
                }
            }
            pieces = next;
        }
        let mut parts = Vec::new();
        for row in pieces {
            parts.push(embed_product(self.dim, &row)?);
        }
        Ok(SetUnion::from_parts(self.dim, parts))
    }

    /// ri ran df (interior relative to the affine hull).
    pub fn ri_range_subdiff(&self) -> Result<SetUnion, CatalogError> {
        let mut parts_per_block: Vec<(Vec<usize>, ConvexSet)> = Vec::new();
        for t in self.blocks()? {
            let block_union = t.kind.ri_range_subdiff()?;
            if block_union.parts.len() != 1 {
                return Err(CatalogError::Unsupported(
                    "relative interior of a multi-piece range".into(),
                ));
            }
            parts_per_block.push((t.coords.clone(), block_union.parts[0].scale(&t.weight)?));
        }
        Ok(SetUnion::single(embed_product(
            self.dim,
            &parts_per_block,
        )?))
    }

    /// {x : f(x) <= level} where exactly constructible.
    pub fn sublevel(&self, level: &Rat) -> Result<ConvexSet, CatalogError> {
        let blocks = self.blocks()?;
        let nontrivial: Vec<&Term> = blocks
            .iter()
            .filter(|t| t.kind != AtomKind::Zero)
            .collect();
        if nontrivial.is_empty() {
            return Ok(if level.is_negative() {
                ConvexSet::empty(self.dim)
            } else {
                ConvexSet::whole(self.dim)
            });
        }
        if nontrivial.len() == 1 {
            let t = nontrivial[0];
            let local_level = level / &t.weight;
            let s = t.kind.sublevel(&local_level)?;
            return Ok(embed_product(self.dim, &[(t.coords.clone(), s)])?);
        }
        // weighted l1: sum w_i |x_i| <= level
        if nontrivial.iter().all(|t| t.kind == AtomKind::Abs) {
            if level.is_negative() {
                return Ok(ConvexSet::empty(self.dim));
            }
            let coords: Vec<usize> = nontrivial.iter().map(|t| t.coords[0]).collect();
            let weights: Vec<Rat> = nontrivial.iter().map(|t| t.weight.clone()).collect();
            if coords.len() > 12 {
                return Err(CatalogError::Unsupported(
                    "l1 sublevel beyond 12 coordinates".into(),
                ));
            }
            let mut cons = Vec::new();
            for mask in 0..(1usize << coords.len()) {
                let mut coef = vec![Rat::zero(); self.dim];
                for (i, &c) in coords.iter().enumerate() {
                    let sign = if mask & (1 << i) != 0 {
                        Rat::one()
                    } else {
                        -Rat::one()
                    };
                    coef[c] = sign * &weights[i];
                }
                cons.push(LinCon::new(coef, Rel::Le, level.clone()));
            }
            return Ok(ConvexSet::from_linsys(LinSys::new(self.dim, cons)));
        }
        Err(CatalogError::Unsupported(
            "sublevel set of a mixed separable sum".into(),
        ))
    }

    /// Fermat inclusion A^T r in df(x); exact membership.
    pub fn fermat_holds(&self, x: &[Rat], atr: &[Rat]) -> Result<bool, CatalogError> {
        let sd = self.subdiff(x)?;
        Ok(sd.contains_point(atr)?)
    }
}

/// u = t w for a scalar t? Returns t when the vectors are parallel.
pub fn kinds_parallel(u: &[Rat], w: &[Rat]) -> Option<Rat> {
    let i = w.iter().position(|v| !v.is_zero())?;
    let t = &u[i] / &w[i];
    for (uj, wj) in u.iter().zip(w) {
        if *uj != wj * &t {
            return None;
        }
    }
    Some(t)
}

/// Embeds a block set, pinning all other coordinates to zero.
fn embed_part_padded(
    dim: usize,
    coords: &[usize],
    set: &ConvexSet,
) -> Result<ConvexSet, CatalogError> {
    let mut parts = vec![(coords.to_vec(), set.clone())];
    for c in 0..dim {
        if !coords.contains(&c) {
            parts.push((vec![c], ConvexSet::origin(1)));
        }
    }
    Ok(embed_product(dim, &parts)?)
}

use num_traits::One;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::{rat, ratio};
    use crate::sym::SymVal;

    fn term(weight: i64, coords: Vec<usize>, kind: AtomKind) -> Term {
        Term {
            weight: rat(weight),
            coords,
            kind,
        }
    }

    fn hinge_x1(dim: usize) -> FuncExpr {
        FuncExpr::new(
            dim,
            vec![term(
                1,
                vec![0],
                AtomKind::Hinge {
                    w: vec![rat(1)],
                    c: rat(0),
                },
            )],
        )
        .unwrap()
    }

    #[test]
    fn eval_examples() {
        // max{|x1| - 1, 0} at (1/2, 7) -> 0
        let f = FuncExpr::new(
            2,
            vec![term(1, vec![0], AtomKind::HingeAbs { shift: rat(1) })],
        )
        .unwrap();
        assert_eq!(f.eval(&[ratio(1, 2), rat(7)]), ExtVal::zero());
        // -log at 0 -> +inf
        let nl = FuncExpr::new(
            1,
            vec![term(
                1,
                vec![0],
                AtomKind::NegLog {
                    w: vec![rat(1)],
                    c: rat(0),
                },
            )],
        )
        .unwrap();
        assert_eq!(nl.eval(&[rat(0)]), ExtVal::PlusInf);
        // l1 norm at (0, 1/4, 0) -> 1/4
        let n1 = FuncExpr::norm1(3);
        assert_eq!(
            n1.eval(&[rat(0), ratio(1, 4), rat(0)]),
            ExtVal::from_rat(ratio(1, 4))
        );
    }

    #[test]
    fn subdiff_examples() {
        // max{x1, 0} on R^2 at (0, 5): [0,1] x {0}
        let f = hinge_x1(2);
        let s = f.subdiff(&[rat(0), rat(5)]).unwrap();
        assert_eq!(s.render(), "[0,1] x {0}");
        // e^{x1} on R^2 at (0,0): {(1,0)}
        let e = FuncExpr::new(
            2,
            vec![term(
                1,
                vec![0],
                AtomKind::Exp {
                    w: vec![rat(1)],
                    c: rat(0),
                },
            )],
        )
        .unwrap();
        let s = e.subdiff(&[rat(0), rat(0)]).unwrap();
        assert_eq!(s.is_singleton().unwrap(), Some(vec![rat(1), rat(0)]));
        // hinge-of-exponential on the kink: segment {(-t, t e^{x2})}
        let hed = FuncExpr::new(
            2,
            vec![term(1, vec![1, 0], AtomKind::HingeExpDiff)],
        )
        .unwrap();
        // f = max{e^{x2} - x1, 0}; kink at x1 = 1, x2 = 0
        let s = hed.subdiff(&[rat(1), rat(0)]).unwrap();
        assert!(s.contains_point(&[rat(-1), rat(1)]).unwrap());
        assert!(s.contains_point(&[ratio(-1, 2), ratio(1, 2)]).unwrap());
        assert!(s.contains_point(&[rat(0), rat(0)]).unwrap());
        assert!(!s.contains_point(&[rat(1), rat(1)]).unwrap());
    }

    #[test]
    fn conj_subdiff_examples() {
        // l1 on R^3 at (1,1,1): [0,inf)^3
        let n1 = FuncExpr::norm1(3);
        let s = n1.conj_subdiff(&[rat(1), rat(1), rat(1)]).unwrap();
        assert_eq!(s.render(), "[0,inf) x [0,inf) x [0,inf)");
        // max{x1,0} on R^2 at (0,0): (-inf,0] x R
        let f = hinge_x1(2);
        let s = f.conj_subdiff(&[rat(0), rat(0)]).unwrap();
        assert_eq!(s.render(), "(-inf,0] x (-inf,inf)");
        // e^{x1} on R^2 at (1,0): {0} x R
        let e = FuncExpr::new(
            2,
            vec![term(
                1,
                vec![0],
                AtomKind::Exp {
                    w: vec![rat(1)],
                    c: rat(0),
                },
            )],
        )
        .unwrap();
        let s = e.conj_subdiff(&[rat(1), rat(0)]).unwrap();
        assert_eq!(s.render(), "{0} x (-inf,inf)");
        // outside the range: empty
        assert!(e.conj_subdiff(&[rat(0), rat(1)]).unwrap().is_empty());
    }

    #[test]
    fn recession_examples() {
        // f = max{|x1| - 1, 0}: f_inf(d) = |d1|
        let f = FuncExpr::new(
            2,
            vec![term(1, vec![0], AtomKind::HingeAbs { shift: rat(1) })],
        )
        .unwrap();
        assert_eq!(
            f.recession(&[rat(-3), rat(7)]),
            ExtVal::Finite(SymVal::from_rat(rat(3)))
        );
        // hinge-of-exponential at d = (-1, 0) in (x1, x2) order -> 1
        let hed = FuncExpr::new(2, vec![term(1, vec![1, 0], AtomKind::HingeExpDiff)]).unwrap();
        assert_eq!(
            hed.recession(&[rat(-1), rat(0)]),
            ExtVal::Finite(SymVal::from_rat(rat(1)))
        );
        // linear x1: f_inf = d1
        let lin = FuncExpr::new(
            2,
            vec![term(1, vec![0], AtomKind::Linear { coef: vec![rat(1)] })],
        )
        .unwrap();
        assert_eq!(
            lin.recession(&[rat(5), rat(-2)]),
            ExtVal::Finite(SymVal::from_rat(rat(5)))
        );
    }

    #[test]
    fn recession_sets() {
        // e^{x1} on R^2: ker = R_f = (-inf,0] x R
        let e = FuncExpr::new(
            2,
            vec![term(
                1,
                vec![0],
                AtomKind::Exp {
                    w: vec![rat(1)],
                    c: rat(0),
                },
            )],
        )
        .unwrap();
        assert_eq!(e.recession_kernel().unwrap().render(), "(-inf,0] x (-inf,inf)");
        assert_eq!(
            e.recession_cone_fn().unwrap().render(),
            "(-inf,0] x (-inf,inf)"
        );
        // linear x1 on R^2: ker = {0} x R, R_f = (-inf,0] x R
        let lin = FuncExpr::new(
            2,
            vec![term(1, vec![0], AtomKind::Linear { coef: vec![rat(1)] })],
        )
        .unwrap();
        assert_eq!(lin.recession_kernel().unwrap().render(), "{0} x (-inf,inf)");
        assert_eq!(
            lin.recession_cone_fn().unwrap().render(),
            "(-inf,0] x (-inf,inf)"
        );
        // l1: both are {0}
        let n1 = FuncExpr::norm1(2);
        assert!(n1.recession_kernel().unwrap().is_zero_singleton().unwrap());
        assert!(n1.recession_cone_fn().unwrap().is_zero_singleton().unwrap());
        // hinge-of-exponential in (x1, x2): [0,inf) x (-inf,0]
        let hed = FuncExpr::new(2, vec![term(1, vec![1, 0], AtomKind::HingeExpDiff)]).unwrap();
        assert_eq!(hed.recession_kernel().unwrap().render(), "[0,inf) x (-inf,0]");
        assert_eq!(
            hed.recession_cone_fn().unwrap().render(),
            "[0,inf) x (-inf,0]"
        );
    }

    #[test]
    fn range_examples() {
        let n1 = FuncExpr::norm1(2);
        let r = n1.range_subdiff().unwrap();
        assert_eq!(r.render(), "[-1,1] x [-1,1]");
        let ri = n1.ri_range_subdiff().unwrap();
        assert_eq!(ri.render(), "(-1,1) x (-1,1)");
        // linear x1 on R^2: {(1, 0)}
        let lin = FuncExpr::new(
            2,
            vec![term(1, vec![0], AtomKind::Linear { coef: vec![rat(1)] })],
        )
        .unwrap();
        assert_eq!(lin.range_subdiff().unwrap().render(), "{(1, 0)}");
        // hinge: [0,1] x {0}
        let f = hinge_x1(2);
        assert_eq!(f.range_subdiff().unwrap().render(), "[0,1] x {0}");
        // hinge-of-exponential in (x1, x2) order: point + strip
        let hed = FuncExpr::new(2, vec![term(1, vec![1, 0], AtomKind::HingeExpDiff)]).unwrap();
        let r = hed.range_subdiff().unwrap();
        assert_eq!(r.parts.len(), 2);
        assert!(r.contains_point(&[rat(0), rat(0)]).unwrap());
        // (u1, u2) = (-1, 1): u_block = (exp-coord dual, lin dual) = (1, -1)
        assert!(r.contains_point(&[rat(-1), rat(1)]).unwrap());
        assert!(!r.contains_point(&[rat(1), rat(1)]).unwrap());
    }

    #[test]
    fn sublevel_examples() {
        let n1 = FuncExpr::norm1(2);
        let s = n1.sublevel(&rat(1)).unwrap();
        assert!(s.contains_point(&[ratio(1, 2), ratio(1, 2)]).unwrap());
        assert!(!s.contains_point(&[rat(1), rat(1)]).unwrap());
        // hinge sublevel at 0: (-inf,0] x R
        let f = hinge_x1(2);
        assert_eq!(f.sublevel(&rat(0)).unwrap().render(), "(-inf,0] x (-inf,inf)");
    }

    #[test]
    fn overlapping_sum_subdiff() {
        // f = |x1| + max{x1, 0}: at 0, df = [-1,1] + [0,1] = [-1,2]
        let f = FuncExpr::new(
            1,
            vec![
                term(1, vec![0], AtomKind::Abs),
                term(
                    1,
                    vec![0],
                    AtomKind::Hinge {
                        w: vec![rat(1)],
                        c: rat(0),
                    },
                ),
            ],
        )
        .unwrap();
        let s = f.subdiff(&[rat(0)]).unwrap();
        assert_eq!(s.render(), "[-1,2]");
        assert!(f.conj_subdiff(&[rat(0)]).is_err());
    }

    #[test]
    fn fermat_membership() {
        let n1 = FuncExpr::norm1(3);
        // at x* = (0, 1/4, 0), df = [-1,1] x {1} x [-1,1] contains (1,1,1)
        assert!(n1
            .fermat_holds(&[rat(0), ratio(1, 4), rat(0)], &[rat(1), rat(1), rat(1)])
            .unwrap());
        assert!(!n1
            .fermat_holds(&[rat(0), ratio(1, 4), rat(0)], &[rat(1), rat(2), rat(1)])
            .unwrap());
    }
}
