//! Diagnostics for min f(x) + 1/2 ||Ax - b||^2: find a particular solution,
//! build the full solution set from the conjugate subdifferential at the
//! residual, and certify existence, compactness and uniqueness. Existence
//! is decided before and independently of compactness, and compactness
//! before uniqueness; verdicts are never inferred from each other.

use crate::atoms::{AtomKind, CatalogError, FuncExpr};
use crate::dualgraph::dual_graph;
use crate::graph1d::{GraphError, Resolvent};
use crate::linalg::{
    decompose, dot, kernel_basis, rowspace_basis, vec_sub, LinalgError, RationalMatrix, Subspace,
};
use crate::oracle::OracleError;
use crate::scalar::Rat;
use crate::sets::interval::IntervalUnion;
use crate::sets::{AffineFlat, ConvexSet, SetError, SetUnion};
use crate::sym::{ExtVal, SymError, SymVal};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum DiagError {
    #[error("unsupported problem: {0}")]
    UnsupportedProblem(String),
    #[error("undecidable: {0}")]
    Undecidable(String),
    #[error(transparent)]
    Catalog(#[from] CatalogError),
    #[error(transparent)]
    Set(#[from] SetError),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Sym(#[from] SymError),
}

/// Three-valued verdict that keeps the reason undecidable cases surface.
#[derive(Debug, Clone, PartialEq)]
pub enum Tri {
    Yes,
    No,
    Unknown(String),
}

impl Tri {
    pub fn from_bool(b: bool) -> Tri {
        if b {
            Tri::Yes
        } else {
            Tri::No
        }
    }

    pub fn is_yes(&self) -> bool {
        matches!(self, Tri::Yes)
    }

    pub fn is_no(&self) -> bool {
        matches!(self, Tri::No)
    }

    pub fn render(&self) -> String {
        match self {
            Tri::Yes => "yes".into(),
            Tri::No => "no".into(),
            Tri::Unknown(why) => format!("undecidable: {why}"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExistenceReason {
    ViabilityFail,
    NotInRange,
    MaximalMonotone,
    SpecificB,
}

impl ExistenceReason {
    pub fn render(&self) -> &'static str {
        match self {
            ExistenceReason::ViabilityFail => "ran df cap ran A^T is empty",
            ExistenceReason::NotInRange => "b outside ran(I + A o df* o A^T)",
            ExistenceReason::MaximalMonotone => "A o df* o A^T maximally monotone",
            ExistenceReason::SpecificB => "b inside ran(I + A o df* o A^T)",
        }
    }
}

#[derive(Debug, Clone)]
pub struct P1Solution {
    pub x_star: Vec<Rat>,
    pub x_r_star: Vec<Rat>,
    pub x_k_star: Vec<Rat>,
    pub residual: Vec<Rat>,
    pub ax_star: Vec<Rat>,
    pub atr: Vec<Rat>,
}

impl P1Solution {
    fn build(a: &RationalMatrix, b: &[Rat], x: Vec<Rat>) -> Result<P1Solution, DiagError> {
        let ax = a.mul_vec(&x)?;
        let residual = vec_sub(b, &ax);
        let atr = a.transpose().mul_vec(&residual)?;
        let (x_r, x_k) = decompose(a, &x)?;
        Ok(P1Solution {
            x_star: x,
            x_r_star: x_r,
            x_k_star: x_k,
            residual,
            ax_star: ax,
            atr,
        })
    }
}

/// Everything the report needs about one regularized least-squares
/// instance, with machine-checkable certificate sets.
#[derive(Debug, Clone)]
pub struct P1Analysis {
    pub n: usize,
    pub m: usize,
    pub existence: Tri,
    pub reason: Option<ExistenceReason>,
    pub solution: Option<P1Solution>,
    pub solution_set: Option<ConvexSet>,
    pub viability: SetUnion,
    pub ri_range: Option<SetUnion>,
    pub zero_in_ri: Tri,
    pub ri_cap_rowspace: Option<SetUnion>,
    pub ran_i_plus_t: Option<IntervalUnion>,
    pub maximal: Tri,
    pub ker_finf: Option<ConvexSet>,
    pub r_f: Option<ConvexSet>,
    pub ker_finf_cap_ker: Option<ConvexSet>,
    pub rf_cap_ker: Option<ConvexSet>,
    pub conj_at_atr: Option<ConvexSet>,
    pub conj_rec_cap_ker: Option<ConvexSet>,
    pub proj_ker_conj_rec: Option<ConvexSet>,
    pub compact: Tri,
    pub compact_sufficient: Tri,
    pub compact_sufficient_inconclusive: bool,
    pub unique: Tri,
    pub unique_cert: Option<ConvexSet>,
    pub unique_range_cert: Option<ConvexSet>,
    pub proj_ker_conj: Option<ConvexSet>,
    pub unique_sufficient: Tri,
    pub unique_sufficient_inconclusive: bool,
    pub sublevel: Option<ConvexSet>,
    pub descent_cap_ker: Option<ConvexSet>,
    pub connect_ok: Option<bool>,
    pub moreau_ok: Option<bool>,
    pub notes: Vec<String>,
}

fn ker_flat(a: &RationalMatrix) -> AffineFlat {
    AffineFlat::subspace(kernel_basis(a))
}

/// Intersects every member of a union with a subspace.
fn union_cap_subspace(u: &SetUnion, s: &Subspace) -> Result<SetUnion, DiagError> {
    Ok(u.intersect_flat(&AffineFlat::subspace(s.clone()))?)
}

/// Existence cascade per the categorization by b: viability, relative
/// interior conditions, then the per-instance range membership.
pub fn existence_p1(
    f: &FuncExpr,
    a: &RationalMatrix,
    b: &[Rat],
) -> Result<(Tri, Option<ExistenceReason>), DiagError> {
    let rowsp = rowspace_basis(a);
    let range = f.range_subdiff()?;
    let viability = union_cap_subspace(&range, &rowsp)?;
    if viability.is_empty() {
        return Ok((Tri::No, Some(ExistenceReason::ViabilityFail)));
    }
    if let Ok(ri) = f.ri_range_subdiff() {
        let zero = vec![Rat::zero(); f.dim()];
        if ri.contains_point(&zero)? {
            return Ok((Tri::Yes, Some(ExistenceReason::MaximalMonotone)));
        }
        let ri_cap = union_cap_subspace(&ri, &rowsp)?;
        if !ri_cap.is_empty() {
            return Ok((Tri::Yes, Some(ExistenceReason::MaximalMonotone)));
        }
    }
    if a.rows() == 1 {
        let a_row = a.row(0);
        let t = dual_graph(f, &a_row)?;
        let ran = t.range_with_identity()?;
        if ran.is_whole_line() {
            return Ok((Tri::Yes, Some(ExistenceReason::MaximalMonotone)));
        }
        if ran.contains(&SymVal::from_rat(b[0].clone()))? {
            return Ok((Tri::Yes, Some(ExistenceReason::SpecificB)));
        }
        return Ok((Tri::No, Some(ExistenceReason::NotInRange)));
    }
    Ok((
        Tri::Unknown("no per-instance range description for m > 1".into()),
        None,
    ))
}

/// A particular minimizer when one exists; exact dispatch per atom family.
pub fn solve_p1(
    f: &FuncExpr,
    a: &RationalMatrix,
    b: &[Rat],
) -> Result<Option<P1Solution>, DiagError> {
    let (ex, _) = existence_p1(f, a, b)?;
    match ex {
        Tri::No => return Ok(None),
        Tri::Unknown(w) if !f.is_norm1() => return Err(DiagError::Undecidable(w)),
        _ => {}
    }
    let x = particular_minimizer(f, a, b)?;
    // exact Fermat verification: A^T r in df(x)
    let sol = P1Solution::build(a, b, x)?;
    if !f.fermat_holds(&sol.x_star, &sol.atr)? {
        return Err(DiagError::UnsupportedProblem(
            "candidate failed the exact stationarity inclusion".into(),
        ));
    }
    // canonicalize: minimum-norm member of the solution set when polyhedral
    let set = solution_set_p1(&sol, f, a)?;
    let canonical = match set.as_linsys() {
        Some(sys) => crate::sets::min_norm_point(sys),
        None => None,
    };
    match canonical {
        Some(x) => Ok(Some(P1Solution::build(a, b, x)?)),
        None => Ok(Some(sol)),
    }
}

fn particular_minimizer(
    f: &FuncExpr,
    a: &RationalMatrix,
    b: &[Rat],
) -> Result<Vec<Rat>, DiagError> {
    if f.is_norm1() {
        let sol = crate::oracle::lasso_enumerate(a, b)?;
        return Ok(sol.canonical);
    }
    let at = a.transpose();
    let ata = at.mul(a)?;
    let atb = at.mul_vec(b)?;
    let n = f.dim();
    let diag_ata = (0..n).all(|i| {
        (0..n).all(|j| i == j || ata.at(i, j).is_zero())
    });
    if f.is_coordinate_separable() && diag_ata {
        let mut x = vec![Rat::zero(); n];
        for t in f.blocks()? {
            let c = t.coords[0];
            let sigma = ata.at(c, c).clone();
            let lin = atb[c].clone();
            match t.kind.minimize_1d(&t.weight, &sigma, &lin)? {
                Some(argmin) => {
                    let v = crate::sets::linsys::pick_in_interval(&argmin).ok_or_else(|| {
                        DiagError::UnsupportedProblem(
                            "coordinate objective has no minimizer".into(),
                        )
                    })?;
                    x[c] = v;
                }
                None => {
                    return Err(DiagError::UnsupportedProblem(
                        "coordinate objective has no minimizer".into(),
                    ))
                }
            }
        }
        return Ok(x);
    }
    // single exponential-hinge block measured along an axis
    if a.rows() == 1 {
        let blocks = f.blocks()?;
        let hed: Vec<&crate::atoms::Term> = blocks
            .iter()
            .filter(|t| t.kind == AtomKind::HingeExpDiff)
            .collect();
        let others_zero = blocks
            .iter()
            .all(|t| t.kind == AtomKind::HingeExpDiff || t.kind == AtomKind::Zero);
        if hed.len() == 1 && others_zero {
            return solve_hed_row(hed[0], a, b, n);
        }
    }
    Err(DiagError::UnsupportedProblem(
        "no exact solve route for this atom family".into(),
    ))
}

/// max{e^{x_j} - x_i, 0} with a single measurement row along an axis.
fn solve_hed_row(
    term: &crate::atoms::Term,
    a: &RationalMatrix,
    b: &[Rat],
    n: usize,
) -> Result<Vec<Rat>, DiagError> {
    let exp_c = term.coords[0];
    let lin_c = term.coords[1];
    let row = a.row(0);
    let bb = &b[0];
    let nz: Vec<usize> = (0..n).filter(|&i| !row[i].is_zero()).collect();
    if nz.len() != 1 {
        return Err(DiagError::UnsupportedProblem(
            "exponential hinge with a non-axis measurement row".into(),
        ));
    }
    let axis = nz[0];
    let alpha = &row[axis];
    let mut x = vec![Rat::zero(); n];
    if axis == exp_c {
        // measured exponent: x_exp = b/alpha; need e^{x_exp} rational
        let xe = bb / alpha;
        if !xe.is_zero() {
            return Err(DiagError::UnsupportedProblem(
                "minimizer needs the irrational value e^(b/alpha)".into(),
            ));
        }
        x[exp_c] = xe;
        x[lin_c] = Rat::one(); // any value >= e^0 = 1
        Ok(x)
    } else if axis == lin_c {
        // measured linear coordinate: x_lin = b/alpha must be positive
        let xl = bb / alpha;
        if !xl.is_positive() {
            return Err(DiagError::UnsupportedProblem(
                "infimum not attained for this b".into(),
            ));
        }
        x[lin_c] = xl.clone();
        // find a rational x_exp with e^{x_exp} <= x_lin
        let mut k = 0i64;
        loop {
            let cand = crate::scalar::rat(k);
            let cmp = SymVal::exp_of(cand.clone()).cmp_exact(&SymVal::from_rat(xl.clone()))?;
            if cmp != std::cmp::Ordering::Greater {
                x[exp_c] = cand;
                return Ok(x);
            }
            k -= 1;
            if k < -64 {
                return Err(DiagError::UnsupportedProblem(
                    "no rational representative found".into(),
                ));
            }
        }
    } else {
        // measured a zero coordinate: minimize f freely -> x in the region
        x[lin_c] = Rat::one();
        x[axis] = bb / alpha;
        Ok(x)
    }
}

/// X = x* + ((df*(A^T r) - x*) cap ker A), from Fermat-verified input.
pub fn solution_set_p1(
    sol: &P1Solution,
    f: &FuncExpr,
    a: &RationalMatrix,
) -> Result<ConvexSet, DiagError> {
    let conj = f.conj_subdiff(&sol.atr)?;
    let neg_x: Vec<Rat> = sol.x_star.iter().map(|v| -v.clone()).collect();
    let shifted = conj.translate(&neg_x)?;
    let capped = shifted.intersect_flat(&ker_flat(a))?;
    Ok(capped.translate(&sol.x_star)?)
}

pub struct CompactnessOutcome {
    pub compact: bool,
    pub necessary_cert: ConvexSet,
    pub sufficient: Option<bool>,
    pub sufficient_cert: Option<ConvexSet>,
}

/// Necessary-and-sufficient recession test plus the projection-based
/// sufficient test; both are recorded, never merged.
pub fn compactness_p1(
    sol: &P1Solution,
    f: &FuncExpr,
    a: &RationalMatrix,
) -> Result<CompactnessOutcome, DiagError> {
    let conj = f.conj_subdiff(&sol.atr)?;
    let rec = conj.recession_cone()?;
    let cert = rec.intersect_flat(&ker_flat(a))?;
    let compact = cert.is_zero_singleton()?;
    let ker = kernel_basis(a);
    let (sufficient, sufficient_cert) = match rec.project_subspace(&ker) {
        Ok(p) => (Some(p.is_zero_singleton()?), Some(p)),
        Err(_) => (None, None),
    };
    Ok(CompactnessOutcome {
        compact,
        necessary_cert: cert,
        sufficient,
        sufficient_cert,
    })
}

pub struct UniquenessOutcome {
    pub unique: bool,
    pub cert: ConvexSet,
    pub range_component_cert: ConvexSet,
    pub sufficient: Option<bool>,
    pub sufficient_cert: Option<ConvexSet>,
}

pub fn uniqueness_p1(
    sol: &P1Solution,
    f: &FuncExpr,
    a: &RationalMatrix,
) -> Result<UniquenessOutcome, DiagError> {
    let conj = f.conj_subdiff(&sol.atr)?;
    let neg_x: Vec<Rat> = sol.x_star.iter().map(|v| -v.clone()).collect();
    let cert = conj
        .translate(&neg_x)?
        .intersect_flat(&ker_flat(a))?;
    let unique = cert.is_zero_singleton()?;
    let neg_xr: Vec<Rat> = sol.x_r_star.iter().map(|v| -v.clone()).collect();
    let range_component_cert = conj
        .translate(&neg_xr)?
        .intersect_flat(&ker_flat(a))?;
    let ker = kernel_basis(a);
    let (sufficient, sufficient_cert) = match conj.translate(&neg_x)?.project_subspace(&ker) {
        Ok(p) => (Some(p.is_zero_singleton()?), Some(p)),
        Err(_) => (None, None),
    };
    Ok(UniquenessOutcome {
        unique,
        cert,
        range_component_cert,
        sufficient,
        sufficient_cert,
    })
}

/// Verifies the resolvent identity b - (I + A o df* o A^T)^{-1}(b) = Ax*
/// by two independent routes (the graph and its inverse for m = 1; exact
/// membership in the image for the l1 path).
pub fn moreau_check(
    f: &FuncExpr,
    a: &RationalMatrix,
    b: &[Rat],
    sol: &P1Solution,
) -> Result<bool, DiagError> {
    if a.rows() == 1 {
        let t = dual_graph(f, &a.row(0))?;
        let v = match t.resolvent(&b[0])? {
            Resolvent::Rational(v) => v,
            Resolvent::None => {
                return Err(DiagError::Undecidable(
                    "resolvent empty although a solution exists".into(),
                ))
            }
            Resolvent::InPiece(_) => {
                return Err(DiagError::Undecidable(
                    "resolvent value is transcendental".into(),
                ))
            }
        };
        let first_route = &b[0] - &v;
        if first_route != sol.ax_star[0] {
            return Ok(false);
        }
        // dual route through the inverse graph
        let tinv = t.invert()?;
        match tinv.resolvent(&b[0])? {
            Resolvent::Rational(w) => Ok(w == sol.ax_star[0]),
            _ => Err(DiagError::Undecidable(
                "inverse-graph resolvent not rational".into(),
            )),
        }
    } else {
        // Ax* must lie in (A o df* o A^T)(r), r = b - Ax*
        let atr = &sol.atr;
        let conj = f.conj_subdiff(atr)?;
        let image = crate::sets::linear_map_image(&conj, a)?;
        Ok(image.contains_point(&sol.ax_star)?)
    }
}

/// Theorem-connection check: the four kernel-restricted sets coincide.
pub fn connect_check(
    sol: &P1Solution,
    f: &FuncExpr,
    a: &RationalMatrix,
) -> Result<bool, DiagError> {
    let flat = ker_flat(a);
    let conj = f.conj_subdiff(&sol.atr)?;
    let s1 = conj.recession_cone()?.intersect_flat(&flat)?;
    let s2 = f.recession_kernel()?.intersect_flat(&flat)?;
    let s3 = f.recession_cone_fn()?.intersect_flat(&flat)?;
    let level = match f.eval(&sol.x_star) {
        ExtVal::Finite(v) => v
            .as_rational()
            .cloned()
            .ok_or_else(|| DiagError::Undecidable("irrational optimal value".into()))?,
        _ => {
            return Err(DiagError::Undecidable(
                "optimal value not finite".into(),
            ))
        }
    };
    let slev = f.sublevel(&level)?;
    let s4 = slev.recession_cone()?.intersect_flat(&flat)?;
    Ok(s1.set_eq(&s2)? && s2.set_eq(&s3)? && s3.set_eq(&s4)?)
}

/// Full analysis of one instance (the report backend).
pub fn analyze_p1(f: &FuncExpr, a: &RationalMatrix, b: &[Rat]) -> Result<P1Analysis, DiagError> {
    let n = f.dim();
    let m = a.rows();
    if a.cols() != n || b.len() != m {
        return Err(DiagError::UnsupportedProblem("dimension mismatch".into()));
    }
    let rowsp = rowspace_basis(a);
    let ker = kernel_basis(a);
    let flat = ker_flat(a);
    let mut notes: Vec<String> = Vec::new();

    let range = f.range_subdiff()?;
    let viability = union_cap_subspace(&range, &rowsp)?;
    let (ri_range, zero_in_ri, ri_cap_rowspace) = match f.ri_range_subdiff() {
        Ok(ri) => {
            let zero = vec![Rat::zero(); n];
            let z = Tri::from_bool(ri.contains_point(&zero)?);
            let cap = union_cap_subspace(&ri, &rowsp)?;
            (Some(ri), z, Some(cap))
        }
        Err(e) => {
            notes.push(format!("ri ran df unavailable: {e}"));
            (None, Tri::Unknown(e.to_string()), None)
        }
    };

    let (ran_i_plus_t, maximal) = if m == 1 {
        match dual_graph(f, &a.row(0)) {
            Ok(t) => {
                let ran = t.range_with_identity()?;
                let max = Tri::from_bool(ran.is_whole_line());
                (Some(ran), max)
            }
            Err(e) => {
                notes.push(format!("dual graph unavailable: {e}"));
                (None, Tri::Unknown(e.to_string()))
            }
        }
    } else if f.is_norm1() && zero_in_ri.is_yes() {
        // under 0 in ri ran df the composition is maximal and I + T is onto
        (None, Tri::Yes)
    } else {
        (None, Tri::Unknown("no m > 1 range description".into()))
    };

    let (existence, reason) = existence_p1(f, a, b)?;

    let solution = match &existence {
        Tri::Yes => solve_p1(f, a, b)?,
        _ => None,
    };
    let solution_set = match (&existence, &solution) {
        (Tri::Yes, Some(sol)) => Some(solution_set_p1(sol, f, a)?),
        (Tri::No, _) => Some(ConvexSet::empty(n)),
        _ => None,
    };

    let ker_finf = match f.recession_kernel() {
        Ok(s) => Some(s),
        Err(e) => {
            notes.push(format!("ker f_inf unavailable: {e}"));
            None
        }
    };
    let r_f = match f.recession_cone_fn() {
        Ok(s) => Some(s),
        Err(e) => {
            notes.push(format!("R_f unavailable: {e}"));
            None
        }
    };
    let ker_finf_cap_ker = match &ker_finf {
        Some(s) => Some(s.intersect_flat(&flat)?),
        None => None,
    };
    let rf_cap_ker = match &r_f {
        Some(s) => Some(s.intersect_flat(&flat)?),
        None => None,
    };

    // compactness and uniqueness (only with a solution in hand)
    let mut conj_at_atr = None;
    let mut conj_rec_cap_ker = None;
    let mut proj_ker_conj_rec = None;
    let mut compact = Tri::Unknown("no solution computed".into());
    let mut compact_sufficient = Tri::Unknown("not evaluated".into());
    let mut compact_sufficient_inconclusive = false;
    let mut unique = Tri::Unknown("no solution computed".into());
    let mut unique_cert = None;
    let mut unique_range_cert = None;
    let mut proj_ker_conj = None;
    let mut unique_sufficient = Tri::Unknown("not evaluated".into());
    let mut unique_sufficient_inconclusive = false;
    let mut sublevel = None;
    let mut descent_cap_ker = None;
    let mut connect_ok = None;
    let mut moreau_ok = None;

    if existence.is_no() {
        // empty solution set: compact vacuously, not unique
        compact = Tri::Yes;
        unique = Tri::No;
    }
    if let Some(sol) = &solution {
        conj_at_atr = Some(f.conj_subdiff(&sol.atr)?);
        let comp = compactness_p1(sol, f, a)?;
        compact = Tri::from_bool(comp.compact);
        conj_rec_cap_ker = Some(comp.necessary_cert.clone());
        match comp.sufficient {
            Some(s) => {
                compact_sufficient = Tri::from_bool(s);
                compact_sufficient_inconclusive = comp.compact && !s;
            }
            None => compact_sufficient = Tri::Unknown("projection unsupported".into()),
        }
        proj_ker_conj_rec = comp.sufficient_cert;

        let uniq = uniqueness_p1(sol, f, a)?;
        unique = Tri::from_bool(uniq.unique);
        unique_cert = Some(uniq.cert.clone());
        unique_range_cert = Some(uniq.range_component_cert.clone());
        match uniq.sufficient {
            Some(s) => {
                unique_sufficient = Tri::from_bool(s);
                unique_sufficient_inconclusive = uniq.unique && !s;
            }
            None => unique_sufficient = Tri::Unknown("projection unsupported".into()),
        }
        // projection of df*(A^T r) itself onto ker A (table row)
        match f.conj_subdiff(&sol.atr)?.project_subspace(&ker) {
            Ok(p) => proj_ker_conj = Some(p),
            Err(e) => notes.push(format!("kernel projection of df* unavailable: {e}")),
        }

        // sublevel and descent-cone rows
        if let ExtVal::Finite(v) = f.eval(&sol.x_star) {
            if let Some(level) = v.as_rational() {
                match f.sublevel(level) {
                    Ok(s) => {
                        match s.tangent_cone_at(&sol.x_star) {
                            Ok(t) => {
                                descent_cap_ker = Some(t.intersect_flat(&flat)?);
                            }
                            Err(e) => notes.push(format!("tangent cone unavailable: {e}")),
                        }
                        sublevel = Some(s);
                    }
                    Err(e) => notes.push(format!("sublevel set unavailable: {e}")),
                }
            }
        }

        match connect_check(sol, f, a) {
            Ok(ok) => connect_ok = Some(ok),
            Err(e) => notes.push(format!("connection identity not evaluated: {e}")),
        }
        match moreau_check(f, a, b, sol) {
            Ok(ok) => moreau_ok = Some(ok),
            Err(e) => notes.push(format!("resolvent identity not evaluated: {e}")),
        }
    }

    Ok(P1Analysis {
        n,
        m,
        existence,
        reason,
        solution,
        solution_set,
        viability,
        ri_range,
        zero_in_ri,
        ri_cap_rowspace,
        ran_i_plus_t,
        maximal,
        ker_finf,
        r_f,
        ker_finf_cap_ker,
        rf_cap_ker,
        conj_at_atr,
        conj_rec_cap_ker,
        proj_ker_conj_rec,
        compact,
        compact_sufficient,
        compact_sufficient_inconclusive,
        unique,
        unique_cert,
        unique_range_cert,
        proj_ker_conj,
        unique_sufficient,
        unique_sufficient_inconclusive,
        sublevel,
        descent_cap_ker,
        connect_ok,
        moreau_ok,
        notes,
    })
}

/// Shared objective evaluation: f(x) + 1/2 ||Ax - b||^2, exactly.
pub fn p1_objective(f: &FuncExpr, a: &RationalMatrix, b: &[Rat], x: &[Rat]) -> ExtVal {
    let fv = f.eval(x);
    let ax = a.mul_vec(x).expect("dims");
    let r = vec_sub(&ax, b);
    let q = dot(&r, &r) / crate::scalar::rat(2);
    fv.add(&ExtVal::from_rat(q))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::atoms::dsl::parse_func;
    use crate::scalar::{rat, ratio};

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
    fn lasso_example_full() {
        let f = parse_func("norm1()", 3).unwrap();
        let a = mtx(vec![vec![1, 0, 2], vec![0, 2, -2]]);
        let b = rv(vec![1, 1]);
        let sol = solve_p1(&f, &a, &b).unwrap().unwrap();
        assert_eq!(sol.x_star, vec![rat(0), ratio(1, 4), rat(0)]);
        assert_eq!(sol.atr, vec![rat(1), rat(1), rat(1)]);
        let uniq = uniqueness_p1(&sol, &f, &a).unwrap();
        assert!(uniq.unique);
        // the sufficient projection test fails (multi-valued projection)
        assert_eq!(uniq.sufficient, Some(false));
        let comp = compactness_p1(&sol, &f, &a).unwrap();
        assert!(comp.compact);
        assert_eq!(comp.sufficient, Some(false));
        assert!(connect_check(&sol, &f, &a).unwrap());
        assert!(moreau_check(&f, &a, &b, &sol).unwrap());
        assert_eq!(sol.ax_star, vec![rat(0), ratio(1, 2)]);
    }

    #[test]
    fn example_three_hinge() {
        let f = parse_func("hinge(x1)", 2).unwrap();
        let a = mtx(vec![vec![0, 1]]);
        let b = rv(vec![1]);
        let (ex, reason) = existence_p1(&f, &a, &b).unwrap();
        assert!(ex.is_yes());
        assert_eq!(reason, Some(ExistenceReason::MaximalMonotone));
        let sol = solve_p1(&f, &a, &b).unwrap().unwrap();
        assert_eq!(sol.x_r_star, vec![rat(0), rat(1)]);
        let set = solution_set_p1(&sol, &f, &a).unwrap();
        assert_eq!(set.render(), "(-inf,0] x {1}");
        let comp = compactness_p1(&sol, &f, &a).unwrap();
        assert!(!comp.compact);
        assert_eq!(comp.necessary_cert.render(), "(-inf,0] x {0}");
        let uniq = uniqueness_p1(&sol, &f, &a).unwrap();
        assert!(!uniq.unique);
        assert!(connect_check(&sol, &f, &a).unwrap());
        assert!(moreau_check(&f, &a, &b, &sol).unwrap());
    }

    #[test]
    fn example_one_and_two_no_solution() {
        // linear: viability fails
        let f = parse_func("lin(1, 0)", 2).unwrap();
        let a = mtx(vec![vec![0, 1]]);
        let (ex, reason) = existence_p1(&f, &a, &rv(vec![1])).unwrap();
        assert!(ex.is_no());
        assert_eq!(reason, Some(ExistenceReason::ViabilityFail));
        // exponential: viability also fails
        let f = parse_func("exp(x1)", 2).unwrap();
        let (ex, reason) = existence_p1(&f, &a, &rv(vec![1])).unwrap();
        assert!(ex.is_no());
        assert_eq!(reason, Some(ExistenceReason::ViabilityFail));
        assert!(solve_p1(&f, &a, &rv(vec![1])).unwrap().is_none());
    }

    #[test]
    fn example_four_hinge_abs() {
        let f = parse_func("hinge_abs(x1, 1)", 2).unwrap();
        let a = mtx(vec![vec![0, 1]]);
        let b = rv(vec![1]);
        let (ex, reason) = existence_p1(&f, &a, &b).unwrap();
        assert!(ex.is_yes());
        assert_eq!(reason, Some(ExistenceReason::MaximalMonotone));
        let sol = solve_p1(&f, &a, &b).unwrap().unwrap();
        let set = solution_set_p1(&sol, &f, &a).unwrap();
        assert_eq!(set.render(), "[-1,1] x {1}");
        // canonical choice is the minimum-norm member (0, 1)
        assert_eq!(sol.x_star, vec![rat(0), rat(1)]);
        let comp = compactness_p1(&sol, &f, &a).unwrap();
        assert!(comp.compact);
        assert_eq!(comp.sufficient, Some(true));
        let uniq = uniqueness_p1(&sol, &f, &a).unwrap();
        assert!(!uniq.unique);
        assert_eq!(uniq.cert.render(), "[-1,1] x {0}");
        assert!(moreau_check(&f, &a, &b, &sol).unwrap());
    }

    #[test]
    fn example_five_no_solution_for_zero_b() {
        let f = parse_func("hinge_expdiff(x2, x1)", 2).unwrap();
        let a = mtx(vec![vec![1, 0]]);
        let (ex, reason) = existence_p1(&f, &a, &rv(vec![0])).unwrap();
        assert!(ex.is_no());
        assert_eq!(reason, Some(ExistenceReason::NotInRange));
        // but solvable for b > 0
        let (ex, reason) = existence_p1(&f, &a, &rv(vec![2])).unwrap();
        assert!(ex.is_yes());
        assert_eq!(reason, Some(ExistenceReason::SpecificB));
    }

    #[test]
    fn example_six_unbounded_solution_set() {
        let f = parse_func("hinge_expdiff(x2, x1)", 2).unwrap();
        let a = mtx(vec![vec![0, 1]]);
        let b = rv(vec![0]);
        let (ex, _) = existence_p1(&f, &a, &b).unwrap();
        assert!(ex.is_yes());
        let sol = solve_p1(&f, &a, &b).unwrap().unwrap();
        assert_eq!(sol.x_star, vec![rat(1), rat(0)]);
        let set = solution_set_p1(&sol, &f, &a).unwrap();
        assert_eq!(set.render(), "[1,inf) x {0}");
        let comp = compactness_p1(&sol, &f, &a).unwrap();
        assert!(!comp.compact);
        assert_eq!(comp.necessary_cert.render(), "[0,inf) x {0}");
        let uniq = uniqueness_p1(&sol, &f, &a).unwrap();
        assert!(!uniq.unique);
        assert_eq!(uniq.range_component_cert.render(), "[1,inf) x {0}");
        assert!(connect_check(&sol, &f, &a).unwrap());
        assert!(moreau_check(&f, &a, &b, &sol).unwrap());
    }

    #[test]
    fn quadshift_identity_matrix() {
        let f = parse_func("quadshift(x1, 0)", 1).unwrap();
        let a = mtx(vec![vec![1]]);
        let b = rv(vec![3]);
        let sol = solve_p1(&f, &a, &b).unwrap().unwrap();
        assert_eq!(sol.x_star, vec![ratio(3, 2)]);
        assert!(moreau_check(&f, &a, &b, &sol).unwrap());
    }
}
