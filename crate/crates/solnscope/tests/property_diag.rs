//! Diagnostics invariants: Fermat verification, uniqueness of Ax* and the
//! optimal value across the solution set, membership soundness, kernel
//! infimum finiteness, certificate inclusions, feasibility of constrained
//! solutions, and the existence linkage through the infimal
//! postcomposition.

use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use solnscope::atoms::dsl::parse_func;
use solnscope::atoms::FuncExpr;
use solnscope::constrained::{analyze_p2, certificate_search, solution_set_p2};
use solnscope::infpost::inf_postcomposition;
use solnscope::least_squares::{existence_p1, p1_objective, solve_p1, solution_set_p1};
use solnscope::linalg::{kernel_basis, RationalMatrix};
use solnscope::oracle::{eval_f64, lasso_enumerate};
use solnscope::scalar::{rat, rat_to_f64, ratio, Rat};
use std::cmp::Ordering;

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

fn solvable_p1_instances() -> Vec<(FuncExpr, RationalMatrix, Vec<Rat>)> {
    vec![
        (
            parse_func("hinge(x1)", 2).unwrap(),
            mtx(vec![vec![0, 1]]),
            rv(vec![1]),
        ),
        (
            parse_func("hinge_abs(x1, 1)", 2).unwrap(),
            mtx(vec![vec![0, 1]]),
            rv(vec![1]),
        ),
        (
            parse_func("hinge_expdiff(x2, x1)", 2).unwrap(),
            mtx(vec![vec![0, 1]]),
            rv(vec![0]),
        ),
        (
            parse_func("norm1()", 3).unwrap(),
            mtx(vec![vec![1, 0, 2], vec![0, 2, -2]]),
            rv(vec![1, 1]),
        ),
        (
            parse_func("quadshift(x1, 0)", 1).unwrap(),
            mtx(vec![vec![1]]),
            rv(vec![3]),
        ),
    ]
}

/// Fermat inclusion holds exactly for every returned solution.
#[test]
fn fermat_inclusion_for_all_solutions() {
    for (f, a, b) in solvable_p1_instances() {
        let sol = solve_p1(&f, &a, &b).unwrap().unwrap();
        assert!(f.fermat_holds(&sol.x_star, &sol.atr).unwrap());
        // x = x_r + x_k with the pieces in the right subspaces
        assert!(kernel_basis(&a).contains(&sol.x_k_star));
        assert!(solnscope::linalg::rowspace_basis(&a).contains(&sol.x_r_star));
    }
}

/// Any two members of the solution set share Ax and the objective value.
#[test]
fn ax_and_value_unique_across_solution_set() {
    let mut rng = ChaCha8Rng::seed_from_u64(41);
    for (f, a, b) in solvable_p1_instances() {
        let sol = solve_p1(&f, &a, &b).unwrap().unwrap();
        let set = solution_set_p1(&sol, &f, &a).unwrap();
        let samples = set.sample_points(&mut rng, 8).unwrap();
        let reference = p1_objective(&f, &a, &b, &sol.x_star);
        for s in &samples {
            assert_eq!(a.mul_vec(s).unwrap(), sol.ax_star, "Ax must be constant on X");
            let v = p1_objective(&f, &a, &b, s);
            assert_eq!(
                v.cmp_exact(&reference).unwrap(),
                Ordering::Equal,
                "objective must be constant on X"
            );
            let fv = f.eval(s);
            assert_eq!(
                fv.cmp_exact(&f.eval(&sol.x_star)).unwrap(),
                Ordering::Equal,
                "f itself must be constant on X"
            );
        }
    }
}

/// Membership soundness: members achieve the optimal value; points off the
/// set achieve a strictly larger one.
#[test]
fn membership_soundness_inside_and_outside() {
    let mut rng = ChaCha8Rng::seed_from_u64(42);
    for (f, a, b) in solvable_p1_instances() {
        let sol = solve_p1(&f, &a, &b).unwrap().unwrap();
        let set = solution_set_p1(&sol, &f, &a).unwrap();
        let reference = p1_objective(&f, &a, &b, &sol.x_star);
        let inside = set.sample_points(&mut rng, 50).unwrap();
        for s in &inside {
            assert_eq!(
                p1_objective(&f, &a, &b, s).cmp_exact(&reference).unwrap(),
                Ordering::Equal
            );
        }
        let mut outside = 0;
        let mut attempts = 0;
        while outside < 50 && attempts < 4000 {
            attempts += 1;
            let x: Vec<Rat> = (0..f.dim())
                .map(|_| {
                    let den = rng.gen_range(1..=4i64);
                    ratio(rng.gen_range(-6 * den..=6 * den), den)
                })
                .collect();
            if set.contains_point(&x).unwrap() || !f.contains_dom(&x) {
                continue;
            }
            outside += 1;
            let v = p1_objective(&f, &a, &b, &x);
            assert_eq!(
                v.cmp_exact(&reference).unwrap(),
                Ordering::Greater,
                "non-member {x:?} must have a strictly larger objective"
            );
        }
        assert!(outside >= 50, "could not sample enough outside points");
    }
}

/// Whenever a solution exists, f stays bounded below along kernel rays
/// from sampled points (grid probe with a -1e6 divergence sentinel).
#[test]
fn kernel_infimum_finite_when_solvable() {
    let mut rng = ChaCha8Rng::seed_from_u64(43);
    for (f, a, _b) in solvable_p1_instances() {
        let ker = kernel_basis(&a);
        if ker.dim() == 0 {
            continue;
        }
        for _ in 0..5 {
            let x: Vec<f64> = (0..f.dim()).map(|_| rng.gen_range(-2.0..2.0)).collect();
            for d in ker.basis() {
                let df: Vec<f64> = d.iter().map(rat_to_f64).collect();
                for t in [1.0, 10.0, 100.0, 1000.0] {
                    let probe: Vec<f64> =
                        x.iter().zip(&df).map(|(p, q)| p + t * q).collect();
                    let v = eval_f64(&f, &probe);
                    assert!(
                        v > -1.0e6,
                        "objective dived below the divergence sentinel along the kernel"
                    );
                }
            }
        }
    }
}

/// Dual certificates satisfy the exact inclusion A^T v in df(x*).
#[test]
fn certificates_verify_exactly() {
    let instances: Vec<(&str, usize, Vec<Vec<i64>>, Vec<i64>)> = vec![
        ("exp(x1)", 2, vec![vec![1, 0]], vec![0]),
        ("hinge_expdiff(x2, x1)", 2, vec![vec![0, 1]], vec![0]),
        ("quadshift(x1, 3)", 1, vec![vec![1]], vec![3]),
        ("norm1()", 3, vec![vec![1, 0, 2], vec![0, 2, -2]], vec![2, 0]),
    ];
    for (src, dim, a_rows, b) in instances {
        let f = parse_func(src, dim).unwrap();
        let a = mtx(a_rows);
        let b = rv(b);
        let cert = certificate_search(&f, &a, &b).unwrap().unwrap();
        let an = analyze_p2(&f, &a, &b).unwrap();
        let x = an.x_star.expect("solvable instance");
        assert!(
            f.fermat_holds(&x, &cert.witness_subgradient).unwrap(),
            "{src}: certificate inclusion must verify"
        );
    }
}

/// Sampled members of the constrained solution set are feasible and share
/// the optimal value.
#[test]
fn constrained_members_feasible_and_equal_value() {
    let mut rng = ChaCha8Rng::seed_from_u64(44);
    let instances: Vec<(&str, usize, Vec<Vec<i64>>, Vec<i64>)> = vec![
        ("exp(x1)", 2, vec![vec![1, 0]], vec![0]),
        ("hinge_expdiff(x2, x1)", 2, vec![vec![0, 1]], vec![0]),
        ("norm1()", 2, vec![vec![1, 2]], vec![2]),
        ("norm1()", 3, vec![vec![1, 0, 2], vec![0, 2, -2]], vec![2, 0]),
    ];
    for (src, dim, a_rows, b) in instances {
        let f = parse_func(src, dim).unwrap();
        let a = mtx(a_rows);
        let b = rv(b);
        let set = solution_set_p2(&f, &a, &b).unwrap();
        assert!(!set.is_empty());
        let an = analyze_p2(&f, &a, &b).unwrap();
        let x_star = an.x_star.unwrap();
        let reference = f.eval(&x_star);
        let mut count = 0;
        let mut singleton = true;
        for part in &set.parts {
            singleton &= part.is_singleton().unwrap().is_some();
            for s in part.sample_points(&mut rng, 25).unwrap() {
                assert_eq!(a.mul_vec(&s).unwrap(), b, "{src}: member must satisfy Ax = b");
                assert_eq!(
                    f.eval(&s).cmp_exact(&reference).unwrap(),
                    Ordering::Equal,
                    "{src}: member must attain the optimal value"
                );
                count += 1;
            }
        }
        let expected = if singleton { set.parts.len() } else { 10 };
        assert!(count >= expected, "{src}: sampled too few members");
    }
}

/// Existence for every b in ran A forces nonempty viability; the
/// counterexamples show the contrapositive.
#[test]
fn viability_consistency_over_sampled_b() {
    let mut rng = ChaCha8Rng::seed_from_u64(45);
    // solvable family: hinge is viable and solvable for every b
    let f = parse_func("hinge(x1)", 2).unwrap();
    let a = mtx(vec![vec![0, 1]]);
    let mut all_exist = true;
    for _ in 0..20 {
        let b = vec![ratio(rng.gen_range(-8..=8), rng.gen_range(1..=3))];
        let an = analyze_p2(&f, &a, &b).unwrap();
        all_exist &= an.existence.is_yes();
    }
    assert!(all_exist);
    let an = analyze_p2(&f, &a, &rv(vec![1])).unwrap();
    assert!(!an.viability.as_ref().unwrap().is_empty());
    // contrapositive instances: empty viability, no existence anywhere
    for (src, a_rows) in [("neglog(x1)", vec![vec![1i64]]), ("exp(x1)", vec![vec![0, 1]])] {
        let dim = a_rows[0].len();
        let f = parse_func(src, dim).unwrap();
        let a = mtx(a_rows);
        let mut exists_somewhere = false;
        for _ in 0..20 {
            let b = vec![ratio(rng.gen_range(-8..=8), rng.gen_range(1..=3))];
            let an = analyze_p2(&f, &a, &b).unwrap();
            exists_somewhere |= an.existence.is_yes();
        }
        if src == "exp(x1)" {
            assert!(
                !exists_somewhere,
                "{src}: no b admits a solution when viability is empty"
            );
        }
    }
}

/// Radial-cone route agreement for polyhedral atoms: the tangent cone of
/// the certificate set intersected with the kernel decides uniqueness the
/// same way as the union form.
#[test]
fn radial_cone_route_for_polyhedral_atoms() {
    let instances: Vec<(&str, usize, Vec<Vec<i64>>, Vec<i64>)> = vec![
        ("norm1()", 2, vec![vec![1, 2]], vec![2]),
        ("norm1()", 3, vec![vec![1, 0, 2], vec![0, 2, -2]], vec![2, 0]),
        ("quadshift(x1, 3)", 1, vec![vec![1]], vec![3]),
    ];
    for (src, dim, a_rows, b) in instances {
        let f = parse_func(src, dim).unwrap();
        let a = mtx(a_rows);
        let b = rv(b);
        let an = analyze_p2(&f, &a, &b).unwrap();
        let x = an.x_star.clone().unwrap();
        let cert = certificate_search(&f, &a, &b).unwrap().unwrap();
        let conj = f.conj_subdiff(&cert.witness_subgradient).unwrap();
        // radial cone of the certificate set at x* (polyhedral: tangent cone)
        let radial = conj.tangent_cone_at(&x).unwrap();
        let flat = solnscope::sets::AffineFlat::subspace(kernel_basis(&a));
        let radial_cap = radial.intersect_flat(&flat).unwrap();
        assert_eq!(
            radial_cap.is_zero_singleton().unwrap(),
            an.unique.is_yes(),
            "{src}: radial-cone route must agree with the union form"
        );
    }
}

/// Existence linkage: when d(A|>f) is maximally monotone and A|>f is exact
/// on its subgradient domain, the least-squares problem is solvable for
/// every sampled b; otherwise some b has an empty solution set.
#[test]
fn postcomposition_linkage() {
    let mut rng = ChaCha8Rng::seed_from_u64(46);
    let instances: Vec<(&str, usize, Vec<Vec<i64>>)> = vec![
        ("lin(1, 0)", 2, vec![vec![0, 1]]),
        ("exp(x1)", 2, vec![vec![0, 1]]),
        ("exp(x1)", 2, vec![vec![1, 0]]),
        ("hinge(x1)", 2, vec![vec![0, 1]]),
        ("hinge_abs(x1, 1)", 2, vec![vec![0, 1]]),
        ("hinge_expdiff(x2, x1)", 2, vec![vec![1, 0]]),
        ("hinge_expdiff(x2, x1)", 2, vec![vec![0, 1]]),
        ("neglog(x1)", 1, vec![vec![1]]),
        ("quadshift(x1, 0)", 1, vec![vec![1]]),
    ];
    for (src, dim, a_rows) in instances {
        let f = parse_func(src, dim).unwrap();
        let a = mtx(a_rows);
        let ip = inf_postcomposition(&f, &a.row(0)).unwrap();
        let premises = !ip.improper
            && ip.subgrad_maximal().unwrap()
            && ip.exact_on_subgrad_domain().unwrap();
        if premises {
            for _ in 0..20 {
                let b = vec![ratio(rng.gen_range(-8..=8), rng.gen_range(1..=3))];
                let (ex, _) = existence_p1(&f, &a, &b).unwrap();
                assert!(
                    ex.is_yes(),
                    "{src}: premises hold, so every b must be solvable (b = {b:?})"
                );
            }
        } else {
            // exhibit at least one b with an empty solution set
            let mut found_empty = false;
            for bb in [-3i64, -1, 0, 1, 3] {
                let b = vec![rat(bb)];
                let (ex, _) = existence_p1(&f, &a, &b).unwrap();
                if ex.is_no() {
                    found_empty = true;
                    break;
                }
            }
            assert!(
                found_empty,
                "{src}: a failing premise must leave some b unsolvable"
            );
        }
    }
}

/// All optimal sign patterns of the enumeration share Ax and the l1 norm.
#[test]
fn enumeration_patterns_share_ax_and_norm() {
    let mut rng = ChaCha8Rng::seed_from_u64(47);
    for _ in 0..30 {
        let n = rng.gen_range(2..=5usize);
        let m = rng.gen_range(1..=3usize);
        let rows: Vec<Vec<Rat>> = (0..m)
            .map(|_| {
                (0..n)
                    .map(|_| ratio(rng.gen_range(-4..=4), rng.gen_range(1..=2)))
                    .collect()
            })
            .collect();
        let a = RationalMatrix::from_rows(rows).unwrap();
        let b: Vec<Rat> = (0..m)
            .map(|_| ratio(rng.gen_range(-4..=4), rng.gen_range(1..=2)))
            .collect();
        let sol = lasso_enumerate(&a, &b).unwrap();
        let norm1: Rat = sol.canonical.iter().map(|v| {
            use num_traits::Signed;
            v.abs()
        }).sum();
        for face in &sol.faces {
            assert_eq!(a.mul_vec(&face.witness).unwrap(), sol.ax);
            let fn1: Rat = face.witness.iter().map(|v| {
                use num_traits::Signed;
                v.abs()
            }).sum();
            assert_eq!(fn1, norm1, "every optimal pattern shares the l1 norm");
        }
    }
}

fn _guard(r: &Rat) -> bool {
    r.is_zero()
}
