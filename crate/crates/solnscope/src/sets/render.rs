//! Deterministic ASCII rendering of convex sets, used by report golden
//! files. Axis-aligned sets render as interval products like
//! "(-inf,0] x {1}"; other polyhedra fall back to a canonical
//! H-representation listing.

use super::{ConvexSet, Factor};
use crate::scalar::{render_rat, Rat};
use crate::sets::interval::Interval;
use crate::sets::linsys::{LinSys, Rel};
use num_traits::{One, Signed, Zero};

pub fn render_set(set: &ConvexSet) -> String {
    if set.is_empty() {
        return "empty".into();
    }
    if let Some(e) = set.as_exp_region() {
        let p_name = coord_name(set.dim(), e.p, "p");
        let q_name = coord_name(set.dim(), e.q, "q");
        let lhs = if e.off_p.is_zero() {
            p_name.clone()
        } else {
            format!("{} - {}", p_name, render_rat(&e.off_p))
        };
        let exponent = if e.off_q.is_zero() {
            q_name.clone()
        } else {
            format!("({} - {})", q_name, render_rat(&e.off_q))
        };
        if set.dim() == 2 && e.p == 0 && e.q == 1 {
            return format!("{{(p,q): {lhs} >= e^{exponent}}}");
        }
        return format!("{{x: {lhs} >= e^{exponent}}}");
    }
    let sys = set.as_linsys().expect("nonempty non-analytic set");
    // try an axis-aligned product decomposition
    if set.dim() <= 4 {
        if let Some(f) = product_factors(set, sys) {
            return render_factors(&f);
        }
    }
    render_linsys(sys)
}

fn coord_name(dim: usize, i: usize, short: &str) -> String {
    if dim == 2 {
        short.to_string()
    } else {
        format!("x{}", i + 1)
    }
}

fn product_factors(set: &ConvexSet, sys: &LinSys) -> Option<Vec<Interval>> {
    let n = set.dim();
    let mut factors = Vec::with_capacity(n);
    for i in 0..n {
        let mut g = vec![Rat::zero(); n];
        g[i] = Rat::one();
        factors.push(sys.linear_image(&g));
    }
    // rebuild the product and compare
    let fs: Vec<Factor> = factors.iter().map(|iv| Factor::Iv(iv.clone())).collect();
    let product = ConvexSet::product(fs).ok()?;
    let psys = product.as_linsys()?;
    if sys.set_eq(psys) {
        Some(factors)
    } else {
        None
    }
}

fn render_factors(factors: &[Interval]) -> String {
    let points: Vec<Option<String>> = factors
        .iter()
        .map(|iv| {
            iv.is_point()
                .ok()
                .flatten()
                .map(|v| v.render())
        })
        .collect();
    if factors.len() > 1 && points.iter().all(|p| p.is_some()) {
        let inner: Vec<String> = points.into_iter().map(|p| p.unwrap()).collect();
        return format!("{{({})}}", inner.join(", "));
    }
    factors
        .iter()
        .map(|iv| iv.render())
        .collect::<Vec<_>>()
        .join(" x ")
}

fn render_linsys(sys: &LinSys) -> String {
    if sys.cons.is_empty() {
        let parts: Vec<&str> = (0..sys.dim).map(|_| "(-inf,inf)").collect();
        return parts.join(" x ");
    }
    let mut rows: Vec<String> = sys.cons.iter().map(render_constraint).collect();
    rows.sort();
    format!("{{x in R^{}: {}}}", sys.dim, rows.join(", "))
}

fn render_constraint(c: &crate::sets::linsys::LinCon) -> String {
    let mut lhs = String::new();
    for (i, coef) in c.coef.iter().enumerate() {
        if coef.is_zero() {
            continue;
        }
        let name = format!("x{}", i + 1);
        if lhs.is_empty() {
            if coef.is_one() {
                lhs = name;
            } else if *coef == -Rat::one() {
                lhs = format!("-{name}");
            } else {
                lhs = format!("{}*{}", render_rat(coef), name);
            }
        } else if coef.is_positive() {
            if coef.is_one() {
                lhs += &format!(" + {name}");
            } else {
                lhs += &format!(" + {}*{}", render_rat(coef), name);
            }
        } else {
            let a = -coef.clone();
            if a.is_one() {
                lhs += &format!(" - {name}");
            } else {
                lhs += &format!(" - {}*{}", render_rat(&a), name);
            }
        }
    }
    if lhs.is_empty() {
        lhs = "0".into();
    }
    let rel = match c.rel {
        Rel::Eq => "=",
        Rel::Le => "<=",
        Rel::Lt => "<",
    };
    format!("{lhs} {rel} {}", render_rat(&c.rhs))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;
    use crate::sets::interval::Bnd;
    use crate::sets::linsys::LinCon;

    #[test]
    fn product_renders() {
        let s = ConvexSet::product(vec![
            Factor::Iv(Interval::new(Bnd::NegInf, Bnd::closed_rat(rat(0)))),
            Factor::Point(rat(1)),
        ])
        .unwrap();
        assert_eq!(s.render(), "(-inf,0] x {1}");
        assert_eq!(ConvexSet::origin(2).render(), "{(0, 0)}");
        assert_eq!(ConvexSet::whole(2).render(), "(-inf,inf) x (-inf,inf)");
        assert_eq!(ConvexSet::empty(1).render(), "empty");
        assert_eq!(ConvexSet::exp_region(2, 0, 1).render(), "{(p,q): p >= e^q}");
    }

    #[test]
    fn non_product_falls_back_to_h_rep() {
        // the diagonal line x1 = x2 in R^2
        let sys = LinSys::new(
            2,
            vec![LinCon::new(vec![rat(1), rat(-1)], Rel::Eq, rat(0))],
        );
        let s = ConvexSet::from_linsys(sys);
        assert_eq!(s.render(), "{x in R^2: x1 - x2 = 0}");
    }
}
