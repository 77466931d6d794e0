//! Independent brute-force oracles: exact sign-pattern enumeration for the
//! l1-regularized problem, dense refined grid minimization, and a proximal
//! gradient reference solver. The grid and proximal paths run in floating
//! point and certify nothing beyond their stated tolerances; exact modules
//! consume their output only after rationalization and re-verification.

use crate::atoms::{AtomKind, FuncExpr};
use crate::linalg::RationalMatrix;
use crate::scalar::{rat, rat_to_f64, Rat};
use crate::sets::linsys::{LinCon, LinSys, Rel};
use num_traits::{One, Signed, Zero};

#[derive(Debug, Clone, thiserror::Error, PartialEq)]
pub enum OracleError {
    #[error("enumeration size limit: n = {0} exceeds 8")]
    SizeLimit(usize),
    #[error("objective is +inf on the whole grid")]
    AllInfinite,
    #[error("no proximal map in the catalog for this atom")]
    NoProx,
    #[error("oracle input error: {0}")]
    Input(String),
}

/// One optimal face discovered by the sign-pattern sweep.
#[derive(Debug, Clone)]
pub struct LassoFace {
    pub pattern: Vec<i8>,
    pub face: LinSys,
    pub witness: Vec<Rat>,
}

#[derive(Debug, Clone)]
pub struct LassoSolution {
    pub faces: Vec<LassoFace>,
    /// Minimum-norm optimal point (ties broken lexicographically).
    pub canonical: Vec<Rat>,
    pub objective: Rat,
    pub ax: Vec<Rat>,
    pub residual: Vec<Rat>,
}

fn l1_objective(a: &RationalMatrix, b: &[Rat], x: &[Rat]) -> Rat {
    let ax = a.mul_vec(x).expect("dims");
    let mut v: Rat = x.iter().map(|t| t.abs()).sum();
    let half = crate::scalar::ratio(1, 2);
    let r2: Rat = ax.iter().zip(b).map(|(p, q)| (p - q) * (p - q)).sum();
    v += half * r2;
    v
}

/// Exact minimizers of ||x||_1 + 1/2 ||Ax - b||^2 by 3^n sign patterns:
/// solve the stationarity system on each support, then verify the
/// subgradient inclusion A^T(b - Ax) in d||.||_1(x) outright.
pub fn lasso_enumerate(a: &RationalMatrix, b: &[Rat]) -> Result<LassoSolution, OracleError> {
    let n = a.cols();
    let m = a.rows();
    if n > 8 {
        return Err(OracleError::SizeLimit(n));
    }
    if b.len() != m {
        return Err(OracleError::Input("b length vs rows".into()));
    }
    let at = a.transpose();
    let atb = at.mul_vec(b).expect("dims");
    let ata = at.mul(a).expect("dims");
    let mut faces: Vec<LassoFace> = Vec::new();
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
    for pattern in patterns {
        let support: Vec<usize> = (0..n).filter(|&i| pattern[i] != 0).collect();
        // stationarity on the support: (A^T A)_SS x_S = (A^T b)_S - s_S
        let k = support.len();
        let mut x = vec![Rat::zero(); n];
        if k > 0 {
            let mut rows = Vec::with_capacity(k);
            let mut rhs = Vec::with_capacity(k);
            for &i in &support {
                let mut row = Vec::with_capacity(k);
                for &j in &support {
                    row.push(ata.at(i, j).clone());
                }
                rows.push(row);
                rhs.push(&atb[i] - rat(pattern[i] as i64));
            }
            let sys = RationalMatrix::from_rows(rows).expect("dims");
            // least-norm solution; skip if inconsistent
            let pinv = sys.pseudoinverse();
            let xs = pinv.mul_vec(&rhs).expect("dims");
            if sys.mul_vec(&xs).expect("dims") != rhs {
                continue;
            }
            for (idx, &i) in support.iter().enumerate() {
                x[i] = xs[idx].clone();
            }
            // sign consistency (weak: zeros allowed inside the face)
            if support
                .iter()
                .any(|&i| (rat(pattern[i] as i64) * &x[i]).is_negative())
            {
                continue;
            }
        }
        // global optimality: A^T r in the l1 subdifferential at x
        let ax = a.mul_vec(&x).expect("dims");
        let r: Vec<Rat> = b.iter().zip(&ax).map(|(p, q)| p - q).collect();
        let atr = at.mul_vec(&r).expect("dims");
        let mut ok = true;
        for i in 0..n {
            if pattern[i] != 0 && !x[i].is_zero() {
                if atr[i] != rat(pattern[i] as i64) {
                    ok = false;
                    break;
                }
            } else if atr[i].abs() > rat(1) {
                ok = false;
                break;
            }
        }
        // the stationarity equations force (A^T r)_S = s_S; re-verify anyway
        for &i in &support {
            if atr[i] != rat(pattern[i] as i64) {
                ok = false;
            }
        }
        if !ok {
            continue;
        }
        // optimal face for this pattern
        let mut cons = Vec::new();
        for i in 0..n {
            let mut coef = vec![Rat::zero(); n];
            if pattern[i] == 0 {
                coef[i] = Rat::one();
                cons.push(LinCon::new(coef, Rel::Eq, Rat::zero()));
            } else {
                coef[i] = rat(-(pattern[i] as i64));
                cons.push(LinCon::new(coef, Rel::Le, Rat::zero()));
            }
        }
        for &i in &support {
            let mut coef = vec![Rat::zero(); n];
            for &j in &support {
                coef[j] = ata.at(i, j).clone();
            }
            let rhs = &atb[i] - rat(pattern[i] as i64);
            cons.push(LinCon::new(coef, Rel::Eq, rhs));
        }
        let face = LinSys::new(n, cons);
        if !face.is_feasible() {
            continue;
        }
        faces.push(LassoFace {
            pattern,
            face,
            witness: x,
        });
    }
    if faces.is_empty() {
        return Err(OracleError::Input(
            "sign-pattern sweep found no KKT point (unexpected for the lasso)".into(),
        ));
    }
    // canonical minimum-norm solution across faces
    let mut canonical: Option<Vec<Rat>> = None;
    for f in &faces {
        if let Some(p) = crate::sets::min_norm_point(&f.face) {
            let better = match &canonical {
                None => true,
                Some(q) => {
                    let np: Rat = p.iter().map(|v| v * v).sum();
                    let nq: Rat = q.iter().map(|v| v * v).sum();
                    np < nq || (np == nq && p < *q)
                }
            };
            if better {
                canonical = Some(p);
            }
        }
    }
    let canonical = canonical.unwrap_or_else(|| faces[0].witness.clone());
    let objective = l1_objective(a, b, &canonical);
    let ax = a.mul_vec(&canonical).expect("dims");
    let residual: Vec<Rat> = b.iter().zip(&ax).map(|(p, q)| p - q).collect();
    // all faces share Ax and the objective, exactly
    for f in &faces {
        debug_assert_eq!(a.mul_vec(&f.witness).expect("dims"), ax);
        debug_assert_eq!(l1_objective(a, b, &f.witness), objective);
    }
    Ok(LassoSolution {
        faces,
        canonical,
        objective,
        ax,
        residual,
    })
}

#[derive(Debug, Clone)]
pub struct GridSpec {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub resolution: usize,
    pub refinement_rounds: usize,
    /// Lipschitz constant of the objective on the box, for the gap bound.
    pub lipschitz: f64,
}

#[derive(Debug, Clone)]
pub struct OracleResult {
    pub minimizer_candidates: Vec<Vec<f64>>,
    pub objective_value: f64,
    pub certified_gap: f64,
    /// Candidates hug the search box boundary (unbounded-direction drift).
    pub boundary_hug: bool,
    /// The objective decreases along a kernel ray from the incumbent.
    pub kernel_descent: bool,
}

/// Multi-round refined grid search. `kernel_dirs` are checked for descent
/// from the incumbent after each round (the unbounded-or-empty flag).
pub fn grid_minimize(
    objective: &dyn Fn(&[f64]) -> f64,
    spec: &GridSpec,
    kernel_dirs: &[Vec<f64>],
) -> Result<OracleResult, OracleError> {
    let dim = spec.lo.len();
    if spec.resolution < 3 {
        return Err(OracleError::Input("resolution must be at least 3".into()));
    }
    if (spec.resolution as f64).powi(dim as i32) > 1e7 {
        return Err(OracleError::Input("grid exceeds 10^7 points".into()));
    }
    let mut lo = spec.lo.clone();
    let mut hi = spec.hi.clone();
    let mut best_pts: Vec<Vec<f64>> = Vec::new();
    let mut best_val = f64::INFINITY;
    let mut boundary_hug = false;
    let mut kernel_descent = false;
    let outer_lo = spec.lo.clone();
    let outer_hi = spec.hi.clone();
    for round in 0..spec.refinement_rounds.max(1) {
        let pitch: Vec<f64> = lo
            .iter()
            .zip(&hi)
            .map(|(l, h)| (h - l) / (spec.resolution as f64 - 1.0))
            .collect();
        let mut idx = vec![0usize; dim];
        let mut round_best = f64::INFINITY;
        let mut round_pts: Vec<Vec<f64>> = Vec::new();
        loop {
            let x: Vec<f64> = (0..dim).map(|i| lo[i] + pitch[i] * idx[i] as f64).collect();
            let v = objective(&x);
            if v.is_finite() {
                if v < round_best - 1e-12 {
                    round_best = v;
                    round_pts = vec![x.clone()];
                } else if (v - round_best).abs() <= 1e-6 {
                    round_pts.push(x.clone());
                }
            }
            // odometer
            let mut k = 0;
            loop {
                if k == dim {
                    break;
                }
                idx[k] += 1;
                if idx[k] < spec.resolution {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == dim {
                break;
            }
        }
        if round_pts.is_empty() {
            return Err(OracleError::AllInfinite);
        }
        best_val = round_best;
        best_pts = round_pts;
        // boundary hugging relative to the ORIGINAL box
        for p in &best_pts {
            for i in 0..dim {
                let span = outer_hi[i] - outer_lo[i];
                if (p[i] - outer_lo[i]).abs() < 1e-9 * span.max(1.0)
                    || (p[i] - outer_hi[i]).abs() < 1e-9 * span.max(1.0)
                {
                    boundary_hug = true;
                }
            }
        }
        // kernel ray descent from the incumbent
        let incumbent = best_pts[0].clone();
        for d in kernel_dirs {
            for t in [1.0, 10.0, 100.0, 1000.0] {
                let probe: Vec<f64> = incumbent
                    .iter()
                    .zip(d)
                    .map(|(x, dd)| x + t * dd)
                    .collect();
                let v = objective(&probe);
                if v.is_finite() && v < best_val - 1e-9 {
                    kernel_descent = true;
                }
            }
        }
        if round + 1 < spec.refinement_rounds {
            // zoom 10x around the incumbent cluster
            let mut c_lo = vec![f64::INFINITY; dim];
            let mut c_hi = vec![f64::NEG_INFINITY; dim];
            for p in &best_pts {
                for i in 0..dim {
                    c_lo[i] = c_lo[i].min(p[i]);
                    c_hi[i] = c_hi[i].max(p[i]);
                }
            }
            for i in 0..dim {
                let width = ((hi[i] - lo[i]) / 10.0).max((c_hi[i] - c_lo[i]) / 2.0 + 1e-9);
                let center = (c_lo[i] + c_hi[i]) / 2.0;
                lo[i] = center - width;
                hi[i] = center + width;
            }
        }
    }
    let pitch_norm: f64 = lo
        .iter()
        .zip(&hi)
        .map(|(l, h)| ((h - l) / (spec.resolution as f64 - 1.0)).powi(2))
        .sum::<f64>()
        .sqrt();
    Ok(OracleResult {
        minimizer_candidates: best_pts,
        objective_value: best_val,
        certified_gap: spec.lipschitz * pitch_norm,
        boundary_hug,
        kernel_descent,
    })
}

/// Float evaluation of a catalog function (oracle use only).
pub fn eval_f64(f: &FuncExpr, x: &[f64]) -> f64 {
    let mut acc = 0.0;
    for t in f.terms() {
        let w = rat_to_f64(&t.weight);
        let local: Vec<f64> = t.coords.iter().map(|&c| x[c]).collect();
        let v = match &t.kind {
            AtomKind::Zero => 0.0,
            AtomKind::Linear { coef } => coef
                .iter()
                .zip(&local)
                .map(|(c, v)| rat_to_f64(c) * v)
                .sum(),
            AtomKind::Abs => local[0].abs(),
            AtomKind::Exp { w, c } => {
                let s: f64 = w
                    .iter()
                    .zip(&local)
                    .map(|(c, v)| rat_to_f64(c) * v)
                    .sum::<f64>()
                    + rat_to_f64(c);
                s.exp()
            }
            AtomKind::NegLog { w, c } => {
                let s: f64 = w
                    .iter()
                    .zip(&local)
                    .map(|(c, v)| rat_to_f64(c) * v)
                    .sum::<f64>()
                    + rat_to_f64(c);
                if s > 0.0 {
                    -s.ln()
                } else {
                    f64::INFINITY
                }
            }
            AtomKind::Hinge { w, c } => {
                let s: f64 = w
                    .iter()
                    .zip(&local)
                    .map(|(c, v)| rat_to_f64(c) * v)
                    .sum::<f64>()
                    + rat_to_f64(c);
                s.max(0.0)
            }
            AtomKind::HingeAbs { shift } => (local[0].abs() - rat_to_f64(shift)).max(0.0),
            AtomKind::HingeExpDiff => (local[0].exp() - local[1]).max(0.0),
            AtomKind::QuadShift { center } => {
                let d = local[0] - rat_to_f64(center);
                0.5 * d * d
            }
            AtomKind::HyperbolaInd => {
                if local[0] >= 0.0 && local[1] >= 0.0 && local[0] * local[1] >= 1.0 {
                    0.0
                } else {
                    f64::INFINITY
                }
            }
        };
        if !v.is_finite() {
            return f64::INFINITY;
        }
        acc += w * v;
    }
    acc
}

/// Objective value f(x) + 1/2 ||Ax - b||^2 in floats.
pub fn p1_objective_f64(f: &FuncExpr, a: &RationalMatrix, b: &[Rat]) -> impl Fn(&[f64]) -> f64 {
    let af: Vec<Vec<f64>> = (0..a.rows())
        .map(|i| (0..a.cols()).map(|j| rat_to_f64(a.at(i, j))).collect())
        .collect();
    let bf: Vec<f64> = b.iter().map(rat_to_f64).collect();
    let f = f.clone();
    move |x: &[f64]| {
        let fv = eval_f64(&f, x);
        if !fv.is_finite() {
            return f64::INFINITY;
        }
        let mut q = 0.0;
        for (row, bv) in af.iter().zip(&bf) {
            let ax: f64 = row.iter().zip(x).map(|(c, v)| c * v).sum();
            q += (ax - bv) * (ax - bv);
        }
        fv + 0.5 * q
    }
}

/// 1-D proximal maps for the catalog atoms that have one.
fn prox_1d(kind: &AtomKind, weight: f64, gamma: f64, u: f64) -> Result<f64, OracleError> {
    let g = gamma * weight;
    Ok(match kind {
        AtomKind::Zero => u,
        AtomKind::Abs => {
            if u > g {
                u - g
            } else if u < -g {
                u + g
            } else {
                0.0
            }
        }
        AtomKind::HingeAbs { shift } => {
            let k = rat_to_f64(shift);
            // prox of max{|t|-k, 0}: soft threshold outside the dead zone
            let s = u.abs();
            let sign = if u >= 0.0 { 1.0 } else { -1.0 };
            if s <= k {
                u
            } else if s - g >= k {
                sign * (s - g)
            } else {
                sign * k
            }
        }
        AtomKind::Hinge { w, c } => {
            if w.len() != 1 {
                return Err(OracleError::NoProx);
            }
            let w0 = rat_to_f64(&w[0]);
            let c0 = rat_to_f64(c);
            let kink = -c0 / w0;
            // argmin (1/2)(t-u)^2 + g*max{w0 t + c0, 0}
            let shifted = u - g * w0;
            if w0 > 0.0 {
                if shifted > kink {
                    shifted
                } else if u < kink {
                    u
                } else {
                    kink
                }
            } else if shifted < kink {
                shifted
            } else if u > kink {
                u
            } else {
                kink
            }
        }
        AtomKind::QuadShift { center } => {
            let a0 = rat_to_f64(center);
            (u + g * a0) / (1.0 + g)
        }
        _ => return Err(OracleError::NoProx),
    })
}

/// Proximal gradient iteration x+ = prox_{gamma f}(x - gamma A^T(Ax - b)).
pub fn prox_grad(
    f: &FuncExpr,
    a: &RationalMatrix,
    b: &[Rat],
    steps: usize,
    stepsize: f64,
    start: &[f64],
) -> Result<OracleResult, OracleError> {
    let n = a.cols();
    // separable blocks with 1-D prox
    let blocks = f
        .blocks()
        .map_err(|_| OracleError::NoProx)?;
    for t in &blocks {
        if t.kind.arity() != 1 {
            return Err(OracleError::NoProx);
        }
    }
    let af: Vec<Vec<f64>> = (0..a.rows())
        .map(|i| (0..n).map(|j| rat_to_f64(a.at(i, j))).collect())
        .collect();
    let bf: Vec<f64> = b.iter().map(rat_to_f64).collect();
    let mut x = start.to_vec();
    for _ in 0..steps {
        // gradient of the quadratic
        let mut grad = vec![0.0; n];
        for (row, bv) in af.iter().zip(&bf) {
            let r: f64 = row.iter().zip(&x).map(|(c, v)| c * v).sum::<f64>() - bv;
            for j in 0..n {
                grad[j] += row[j] * r;
            }
        }
        let y: Vec<f64> = x
            .iter()
            .zip(&grad)
            .map(|(v, g)| v - stepsize * g)
            .collect();
        for t in &blocks {
            let c = t.coords[0];
            x[c] = prox_1d(&t.kind, rat_to_f64(&t.weight), stepsize, y[c])?;
        }
    }
    let obj = {
        let o = p1_objective_f64(f, a, b);
        o(&x)
    };
    Ok(OracleResult {
        minimizer_candidates: vec![x],
        objective_value: obj,
        certified_gap: f64::NAN,
        boundary_hug: false,
        kernel_descent: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::ratio;

    fn mtx(rows: Vec<Vec<i64>>) -> RationalMatrix {
        RationalMatrix::from_rows(
            rows.into_iter()
                .map(|r| r.into_iter().map(rat).collect())
                .collect(),
        )
        .unwrap()
    }

    #[test]
    fn lasso_paper_instance() {
        let a = mtx(vec![vec![1, 0, 2], vec![0, 2, -2]]);
        let b = vec![rat(1), rat(1)];
        let sol = lasso_enumerate(&a, &b).unwrap();
        assert_eq!(sol.canonical, vec![rat(0), ratio(1, 4), rat(0)]);
        let atr = a.transpose().mul_vec(&sol.residual).unwrap();
        assert_eq!(atr, vec![rat(1), rat(1), rat(1)]);
        assert_eq!(sol.ax, vec![rat(0), ratio(1, 2)]);
        // unique: only patterns describing the same single point survive
        for f in &sol.faces {
            assert_eq!(
                crate::sets::min_norm_point(&f.face),
                Some(sol.canonical.clone())
            );
        }
    }

    #[test]
    fn lasso_zero_data() {
        let a = mtx(vec![vec![1, 0], vec![0, 1]]);
        let b = vec![rat(0), rat(0)];
        let sol = lasso_enumerate(&a, &b).unwrap();
        assert_eq!(sol.canonical, vec![rat(0), rat(0)]);
        assert_eq!(sol.objective, rat(0));
    }

    #[test]
    fn lasso_duplicated_column_segment() {
        // A = [[1, 1]], b = 3: optimal set is the segment x1 + x2 = 2, x >= 0
        let a = mtx(vec![vec![1, 1]]);
        let b = vec![rat(3)];
        let sol = lasso_enumerate(&a, &b).unwrap();
        assert_eq!(sol.ax, vec![rat(2)]);
        // the canonical point is the segment midpoint (minimum norm)
        assert_eq!(sol.canonical, vec![rat(1), rat(1)]);
        // several optimal patterns share Ax and the objective
        assert!(sol.faces.len() >= 2);
        for f in &sol.faces {
            assert_eq!(a.mul_vec(&f.witness).unwrap(), sol.ax);
            assert_eq!(l1_objective(&a, &b, &f.witness), sol.objective);
        }
    }

    #[test]
    fn grid_finds_quadratic_minimum() {
        let spec = GridSpec {
            lo: vec![-3.0, -3.0],
            hi: vec![3.0, 3.0],
            resolution: 41,
            refinement_rounds: 3,
            lipschitz: 10.0,
        };
        let obj = |x: &[f64]| (x[0] - 1.0).powi(2) + (x[1] + 0.5).powi(2);
        let r = grid_minimize(&obj, &spec, &[]).unwrap();
        let c = &r.minimizer_candidates[0];
        assert!((c[0] - 1.0).abs() < 0.01, "{c:?}");
        assert!((c[1] + 0.5).abs() < 0.01);
        assert!(!r.boundary_hug);
        assert!(!r.kernel_descent);
    }

    #[test]
    fn grid_flags_kernel_descent() {
        // objective e^{x1} + (x2-1)^2/2 decreases along (-1, 0)
        let spec = GridSpec {
            lo: vec![-3.0, -3.0],
            hi: vec![3.0, 3.0],
            resolution: 31,
            refinement_rounds: 2,
            lipschitz: 30.0,
        };
        let obj = |x: &[f64]| x[0].exp() + 0.5 * (x[1] - 1.0).powi(2);
        let r = grid_minimize(&obj, &spec, &[vec![-1.0, 0.0]]).unwrap();
        assert!(r.kernel_descent);
        assert!(r.boundary_hug);
    }

    #[test]
    fn grid_all_infinite() {
        let spec = GridSpec {
            lo: vec![-1.0],
            hi: vec![1.0],
            resolution: 11,
            refinement_rounds: 1,
            lipschitz: 1.0,
        };
        let obj = |_: &[f64]| f64::INFINITY;
        assert_eq!(
            grid_minimize(&obj, &spec, &[]).unwrap_err(),
            OracleError::AllInfinite
        );
    }

    #[test]
    fn prox_grad_lasso_convergence() {
        let a = mtx(vec![vec![1, 0, 2], vec![0, 2, -2]]);
        let b = vec![rat(1), rat(1)];
        let f = FuncExpr::norm1(3);
        // ||A^T A|| <= 9 for this matrix; stepsize 0.1 is safe
        let r = prox_grad(&f, &a, &b, 20_000, 0.1, &[0.0, 0.0, 0.0]).unwrap();
        let x = &r.minimizer_candidates[0];
        assert!((x[0] - 0.0).abs() < 1e-6, "{x:?}");
        assert!((x[1] - 0.25).abs() < 1e-6);
        assert!((x[2] - 0.0).abs() < 1e-6);
    }

    #[test]
    fn prox_grad_zero_data() {
        let a = mtx(vec![vec![1, 0], vec![0, 1]]);
        let b = vec![rat(0), rat(0)];
        let f = FuncExpr::norm1(2);
        let r = prox_grad(&f, &a, &b, 1000, 0.5, &[2.0, -3.0]).unwrap();
        let x = &r.minimizer_candidates[0];
        assert!(x[0].abs() < 1e-9 && x[1].abs() < 1e-9);
    }

    #[test]
    fn min_norm_point_cases() {
        // segment from (2,0) to (0,2): projection of 0 is (1,1)
        let seg = LinSys::new(
            2,
            vec![
                LinCon::new(vec![rat(1), rat(1)], Rel::Eq, rat(2)),
                LinCon::new(vec![rat(-1), rat(0)], Rel::Le, rat(0)),
                LinCon::new(vec![rat(0), rat(-1)], Rel::Le, rat(0)),
            ],
        );
        assert_eq!(
            crate::sets::min_norm_point(&seg),
            Some(vec![rat(1), rat(1)])
        );
        // box [1,2]x[1,2]: projection (1,1)
        let boxy = LinSys::new(
            2,
            vec![
                LinCon::new(vec![rat(1), rat(0)], Rel::Le, rat(2)),
                LinCon::new(vec![rat(-1), rat(0)], Rel::Le, rat(-1)),
                LinCon::new(vec![rat(0), rat(1)], Rel::Le, rat(2)),
                LinCon::new(vec![rat(0), rat(-1)], Rel::Le, rat(-1)),
            ],
        );
        assert_eq!(
            crate::sets::min_norm_point(&boxy),
            Some(vec![rat(1), rat(1)])
        );
        // half-line [1, inf) x {1}: projection (1,1)
        let hl = LinSys::new(
            2,
            vec![
                LinCon::new(vec![rat(-1), rat(0)], Rel::Le, rat(-1)),
                LinCon::new(vec![rat(0), rat(1)], Rel::Eq, rat(1)),
            ],
        );
        assert_eq!(crate::sets::min_norm_point(&hl), Some(vec![rat(1), rat(1)]));
    }
}
