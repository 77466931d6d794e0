//! Oracle agreement section for the CLI: independent numerical
//! cross-checks (refined grid search, proximal gradient) against the exact
//! diagnostics, plus exact membership sampling for constrained instances.

use crate::oracle::{grid_minimize, p1_objective_f64, prox_grad, GridSpec};
use crate::scalar::{rat_to_f64, rationalize, Rat};
use crate::specfile::{ProblemKind, ProblemSpec};
use rand::SeedableRng;

pub fn oracle_section(spec: &ProblemSpec, seed: u64) -> Result<Vec<(String, String)>, String> {
    match spec.kind {
        ProblemKind::Regularized => p1_section(spec, seed),
        ProblemKind::Constrained => p2_section(spec, seed),
    }
}

fn p1_section(spec: &ProblemSpec, seed: u64) -> Result<Vec<(String, String)>, String> {
    let mut rows = Vec::new();
    let n = spec.f.dim();
    let an = crate::least_squares::analyze_p1(&spec.f, &spec.a, &spec.b)
        .map_err(|e| e.to_string())?;
    // kernel directions for the divergence probe
    let ker = crate::linalg::kernel_basis(&spec.a);
    let kernel_dirs: Vec<Vec<f64>> = ker
        .basis()
        .iter()
        .map(|v| v.iter().map(rat_to_f64).collect())
        .collect();
    let obj = p1_objective_f64(&spec.f, &spec.a, &spec.b);
    let gspec = GridSpec {
        lo: vec![-5.0; n],
        hi: vec![5.0; n],
        resolution: if n <= 2 { 41 } else { 15 },
        refinement_rounds: 3,
        lipschitz: 50.0,
    };
    let grid = grid_minimize(&obj, &gspec, &kernel_dirs).map_err(|e| e.to_string())?;
    rows.push((
        "grid incumbent objective".into(),
        format!("{:.6}", grid.objective_value),
    ));
    rows.push((
        "grid boundary drift".into(),
        if grid.boundary_hug { "yes" } else { "no" }.into(),
    ));
    rows.push((
        "grid kernel descent".into(),
        if grid.kernel_descent { "yes" } else { "no" }.into(),
    ));
    if let Some(set) = &an.solution_set {
        if !set.is_empty() {
            // rationalize grid candidates and test membership near X
            let mut hits = 0;
            for cand in grid.minimizer_candidates.iter().take(20) {
                let snapped: Vec<Rat> = cand.iter().map(|v| rationalize(*v, 10_000)).collect();
                if set.contains_point(&snapped).unwrap_or(false) {
                    hits += 1;
                }
            }
            rows.push((
                "grid candidates on exact X (snapped)".into(),
                format!("{hits}/{}", grid.minimizer_candidates.len().min(20)),
            ));
        }
    }
    // proximal gradient route where the catalog has all the prox maps
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let start: Vec<f64> = (0..n)
        .map(|_| rand::Rng::gen_range(&mut rng, -2.0..2.0))
        .collect();
    match prox_grad(&spec.f, &spec.a, &spec.b, 100_000, 0.1, &start) {
        Ok(r) => {
            rows.push((
                "proximal gradient objective".into(),
                format!("{:.8}", r.objective_value),
            ));
            if let Some(sol) = &an.solution {
                let exact_ax: Vec<f64> = sol.ax_star.iter().map(rat_to_f64).collect();
                let x = &r.minimizer_candidates[0];
                let mut ax = vec![0.0; spec.a.rows()];
                for i in 0..spec.a.rows() {
                    for j in 0..n {
                        ax[i] += rat_to_f64(spec.a.at(i, j)) * x[j];
                    }
                }
                let err: f64 = ax
                    .iter()
                    .zip(&exact_ax)
                    .map(|(p, q)| (p - q).abs())
                    .fold(0.0, f64::max);
                rows.push(("||Ax - Ax*|| (prox route)".into(), format!("{err:.2e}")));
            }
        }
        Err(e) => rows.push(("proximal gradient".into(), format!("unavailable ({e})"))),
    }
    Ok(rows)
}

fn p2_section(spec: &ProblemSpec, seed: u64) -> Result<Vec<(String, String)>, String> {
    let mut rows = Vec::new();
    let an = crate::constrained::analyze_p2(&spec.f, &spec.a, &spec.b)
        .map_err(|e| e.to_string())?;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    if let (Some(set), Some(x)) = (&an.solution_set, &an.x_star) {
        let reference = spec.f.eval(x);
        let mut checked = 0;
        let mut feasible = 0;
        let mut equal_value = 0;
        for part in &set.parts {
            let samples = part.sample_points(&mut rng, 10).map_err(|e| e.to_string())?;
            for s in samples {
                checked += 1;
                if spec.a.mul_vec(&s).map_err(|e| e.to_string())? == spec.b {
                    feasible += 1;
                }
                let v = spec.f.eval(&s);
                if v.cmp_exact(&reference).map(|o| o.is_eq()).unwrap_or(false) {
                    equal_value += 1;
                }
            }
        }
        rows.push((
            "sampled members feasible (Ax = b)".into(),
            format!("{feasible}/{checked}"),
        ));
        rows.push((
            "sampled members share the optimal value".into(),
            format!("{equal_value}/{checked}"),
        ));
    } else {
        rows.push(("solution sampling".into(), "no solution set".into()));
    }
    Ok(rows)
}
