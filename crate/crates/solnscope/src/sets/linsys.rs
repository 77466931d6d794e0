//! Rational linear constraint systems with exact Fourier-Motzkin
//! elimination, tracking strict inequalities. One engine backs feasibility,
//! projection, linear images, containment and point extraction.

use crate::scalar::Rat;
use crate::sets::interval::{Bnd, Interval};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Constraint relation: coef . x REL rhs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Rel {
    Eq,
    Le,
    Lt,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct LinCon {
    pub coef: Vec<Rat>,
    pub rel: Rel,
    pub rhs: Rat,
}

impl LinCon {
    pub fn new(coef: Vec<Rat>, rel: Rel, rhs: Rat) -> Self {
        LinCon { coef, rel, rhs }
    }

    fn is_trivial_true(&self) -> bool {
        self.coef.iter().all(|c| c.is_zero())
            && match self.rel {
                Rel::Eq => self.rhs.is_zero(),
                Rel::Le => !self.rhs.is_negative(),
                Rel::Lt => self.rhs.is_positive(),
            }
    }

    fn is_trivial_false(&self) -> bool {
        self.coef.iter().all(|c| c.is_zero())
            && match self.rel {
                Rel::Eq => !self.rhs.is_zero(),
                Rel::Le => self.rhs.is_negative(),
                Rel::Lt => !self.rhs.is_positive(),
            }
    }

    /// Scale to a primitive integer coefficient vector (positive scale only
    /// for inequalities; equalities also fix the leading sign).
    fn normalize(&mut self) {
        let mut lcm = BigInt::one();
        for c in self.coef.iter().chain(std::iter::once(&self.rhs)) {
            lcm = lcm.lcm(c.denom());
        }
        let mut gcd = BigInt::zero();
        for c in self.coef.iter().chain(std::iter::once(&self.rhs)) {
            gcd = gcd.gcd(&(c.numer() * &lcm / c.denom()));
        }
        if gcd.is_zero() {
            gcd = BigInt::one();
        }
        let scale = Rat::new(lcm, gcd);
        for c in self.coef.iter_mut() {
            *c *= &scale;
        }
        self.rhs *= &scale;
        if self.rel == Rel::Eq {
            if let Some(first) = self.coef.iter().find(|c| !c.is_zero()) {
                if first.is_negative() {
                    for c in self.coef.iter_mut() {
                        *c = -c.clone();
                    }
                    self.rhs = -self.rhs.clone();
                }
            } else if self.rhs.is_negative() {
                self.rhs = -self.rhs.clone();
            }
        }
    }

    pub fn eval_lhs(&self, x: &[Rat]) -> Rat {
        self.coef.iter().zip(x).map(|(c, v)| c * v).sum()
    }

    pub fn satisfied_by(&self, x: &[Rat]) -> bool {
        let lhs = self.eval_lhs(x);
        match self.rel {
            Rel::Eq => lhs == self.rhs,
            Rel::Le => lhs <= self.rhs,
            Rel::Lt => lhs < self.rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinSys {
    pub dim: usize,
    pub cons: Vec<LinCon>,
}

const CONSTRAINT_CAP: usize = 200_000;

impl LinSys {
    pub fn new(dim: usize, cons: Vec<LinCon>) -> Self {
        let mut s = LinSys { dim, cons };
        s.tidy();
        s
    }

    pub fn whole_space(dim: usize) -> Self {
        LinSys {
            dim,
            cons: Vec::new(),
        }
    }

    pub fn single_point(x: &[Rat]) -> Self {
        let dim = x.len();
        let cons = (0..dim)
            .map(|i| {
                let mut coef = vec![Rat::zero(); dim];
                coef[i] = Rat::one();
                LinCon::new(coef, Rel::Eq, x[i].clone())
            })
            .collect();
        LinSys::new(dim, cons)
    }

    pub fn push(&mut self, con: LinCon) {
        assert_eq!(con.coef.len(), self.dim);
        self.cons.push(con);
        self.tidy();
    }

    pub fn intersect(&self, other: &LinSys) -> LinSys {
        assert_eq!(self.dim, other.dim);
        let mut cons = self.cons.clone();
        cons.extend(other.cons.clone());
        LinSys::new(self.dim, cons)
    }

    /// Normalize, drop duplicates/trivially-true rows; keep one canonical
    /// false row if any is trivially false.
    fn tidy(&mut self) {
        for c in self.cons.iter_mut() {
            c.normalize();
        }
        if self.cons.iter().any(|c| c.is_trivial_false()) {
            self.cons = vec![LinCon::new(
                vec![Rat::zero(); self.dim],
                Rel::Le,
                -Rat::one(),
            )];
            return;
        }
        self.cons.retain(|c| !c.is_trivial_true());
        self.cons.sort();
        self.cons.dedup();
        // dominance within identical coefficient vectors
        let mut kept: Vec<LinCon> = Vec::new();
        for c in std::mem::take(&mut self.cons) {
            if let Some(last) = kept.last_mut() {
                if last.coef == c.coef && last.rel != Rel::Eq && c.rel != Rel::Eq {
                    // both are upper-bound style on the same functional
                    match last.rhs.cmp(&c.rhs) {
                        std::cmp::Ordering::Less => continue,
                        std::cmp::Ordering::Greater => {
                            *last = c;
                            continue;
                        }
                        std::cmp::Ordering::Equal => {
                            if c.rel == Rel::Lt {
                                last.rel = Rel::Lt;
                            }
                            continue;
                        }
                    }
                }
            }
            kept.push(c);
        }
        self.cons = kept;
    }

    pub fn is_known_false(&self) -> bool {
        self.cons.iter().any(|c| c.is_trivial_false())
    }

    pub fn contains_point(&self, x: &[Rat]) -> bool {
        assert_eq!(x.len(), self.dim);
        self.cons.iter().all(|c| c.satisfied_by(x))
    }

    /// Eliminates variable k exactly. Uses an equality pivot when available,
    /// otherwise Fourier-Motzkin pairing. The variable remains in the
    /// coordinate numbering with zero coefficients.
    pub fn eliminate(&self, k: usize) -> LinSys {
        assert!(k < self.dim);
        if self.is_known_false() {
            return self.clone();
        }
        // equality pivot
        if let Some(idx) = self
            .cons
            .iter()
            .position(|c| c.rel == Rel::Eq && !c.coef[k].is_zero())
        {
            let pivot = self.cons[idx].clone();
            let pk = pivot.coef[k].clone();
            let mut out = Vec::new();
            for (i, c) in self.cons.iter().enumerate() {
                if i == idx {
                    continue;
                }
                if c.coef[k].is_zero() {
                    out.push(c.clone());
                    continue;
                }
                let factor = &c.coef[k] / &pk;
                let coef: Vec<Rat> = c
                    .coef
                    .iter()
                    .zip(&pivot.coef)
                    .map(|(a, b)| a - &factor * b)
                    .collect();
                let rhs = &c.rhs - &factor * &pivot.rhs;
                out.push(LinCon::new(coef, c.rel, rhs));
            }
            return LinSys::new(self.dim, out);
        }
        let mut zeros = Vec::new();
        let mut uppers = Vec::new(); // coef[k] > 0: x_k <= (...)
        let mut lowers = Vec::new(); // coef[k] < 0: x_k >= (...)
        for c in &self.cons {
            if c.coef[k].is_zero() {
                zeros.push(c.clone());
            } else if c.coef[k].is_positive() {
                uppers.push(c.clone());
            } else {
                lowers.push(c.clone());
            }
        }
        let mut out = zeros;
        for up in &uppers {
            for lo in &lowers {
                // up: a.x <= r with a_k > 0  =>  x_k <= (r - a'.x)/a_k
                // lo: b.x <= s with b_k < 0  =>  x_k >= (s - b'.x)/b_k
                // combine: (s - b'.x)/b_k <= (r - a'.x)/a_k
                let ak = &up.coef[k];
                let bk = &lo.coef[k]; // negative
                let coef: Vec<Rat> = up
                    .coef
                    .iter()
                    .zip(&lo.coef)
                    .map(|(a, b)| a * (-bk) + b * ak)
                    .collect();
                let rhs = &up.rhs * (-bk) + &lo.rhs * ak;
                let rel = if up.rel == Rel::Lt || lo.rel == Rel::Lt {
                    Rel::Lt
                } else {
                    Rel::Le
                };
                out.push(LinCon::new(coef, rel, rhs));
                assert!(
                    out.len() <= CONSTRAINT_CAP,
                    "constraint blow-up beyond supported desk scale"
                );
            }
        }
        LinSys::new(self.dim, out)
    }

    fn eliminate_all_vars(&self, vars: &[usize]) -> LinSys {
        let mut s = self.clone();
        // cheapest-first heuristic: fewest pos*neg products
        let mut remaining: Vec<usize> = vars.to_vec();
        while !remaining.is_empty() {
            let (pos, &var) = remaining
                .iter()
                .enumerate()
                .min_by_key(|(_, &v)| {
                    let eq = s
                        .cons
                        .iter()
                        .any(|c| c.rel == Rel::Eq && !c.coef[v].is_zero());
                    if eq {
                        return 0usize;
                    }
                    let p = s
                        .cons
                        .iter()
                        .filter(|c| c.coef[v].is_positive())
                        .count();
                    let n = s
                        .cons
                        .iter()
                        .filter(|c| c.coef[v].is_negative())
                        .count();
                    1 + p * n
                })
                .expect("nonempty");
            s = s.eliminate(var);
            remaining.remove(pos);
        }
        s
    }

    pub fn is_feasible(&self) -> bool {
        let all: Vec<usize> = (0..self.dim).collect();
        let reduced = self.eliminate_all_vars(&all);
        !reduced.cons.iter().any(|c| c.is_trivial_false())
    }

    /// Projects onto the listed coordinates (image keeps the ambient
    /// numbering; eliminated coordinates become unconstrained, and the
    /// caller re-pins them if a genuine subset of a coordinate subspace is
    /// wanted).
    pub fn eliminate_complement_of(&self, keep: &[usize]) -> LinSys {
        let drop: Vec<usize> = (0..self.dim).filter(|i| !keep.contains(i)).collect();
        self.eliminate_all_vars(&drop)
    }

    /// Exact range of the functional g . x over the set, as an interval
    /// (empty when the set is empty).
    pub fn linear_image(&self, g: &[Rat]) -> Interval {
        assert_eq!(g.len(), self.dim);
        // append variable t = g.x, eliminate the x variables
        let mut cons: Vec<LinCon> = self
            .cons
            .iter()
            .map(|c| {
                let mut coef = c.coef.clone();
                coef.push(Rat::zero());
                LinCon::new(coef, c.rel, c.rhs.clone())
            })
            .collect();
        let mut tcoef: Vec<Rat> = g.iter().map(|v| -v.clone()).collect();
        tcoef.push(Rat::one());
        cons.push(LinCon::new(tcoef, Rel::Eq, Rat::zero()));
        let sys = LinSys::new(self.dim + 1, cons);
        let vars: Vec<usize> = (0..self.dim).collect();
        let reduced = sys.eliminate_all_vars(&vars);
        reduced.to_interval_in(self.dim)
    }

    /// Reads off the interval for a single remaining variable.
    fn to_interval_in(&self, var: usize) -> Interval {
        if self.cons.iter().any(|c| c.is_trivial_false()) {
            return Interval::new(Bnd::open_rat(Rat::zero()), Bnd::open_rat(Rat::zero()));
        }
        let mut lo = Bnd::NegInf;
        let mut hi = Bnd::PlusInf;
        for c in &self.cons {
            let a = &c.coef[var];
            if a.is_zero() {
                continue;
            }
            let bound = &c.rhs / a;
            match c.rel {
                Rel::Eq => {
                    lo = crate::sets::interval::max_lower(&lo, &Bnd::closed_rat(bound.clone()))
                        .expect("rational");
                    hi = crate::sets::interval::min_upper(&hi, &Bnd::closed_rat(bound))
                        .expect("rational");
                }
                Rel::Le | Rel::Lt => {
                    let strict = c.rel == Rel::Lt;
                    if a.is_positive() {
                        let b = if strict {
                            Bnd::open_rat(bound)
                        } else {
                            Bnd::closed_rat(bound)
                        };
                        hi = crate::sets::interval::min_upper(&hi, &b).expect("rational");
                    } else {
                        let b = if strict {
                            Bnd::open_rat(bound)
                        } else {
                            Bnd::closed_rat(bound)
                        };
                        lo = crate::sets::interval::max_lower(&lo, &b).expect("rational");
                    }
                }
            }
        }
        Interval::new(lo, hi)
    }

    /// Substitute x = c + B t; the result constrains the parameters t.
    pub fn substitute_affine(&self, anchor: &[Rat], dirs: &[Vec<Rat>]) -> LinSys {
        assert_eq!(anchor.len(), self.dim);
        let t_dim = dirs.len();
        let cons = self
            .cons
            .iter()
            .map(|c| {
                let mut coef = Vec::with_capacity(t_dim);
                for d in dirs {
                    coef.push(c.coef.iter().zip(d).map(|(a, b)| a * b).sum());
                }
                let shift: Rat = c.coef.iter().zip(anchor).map(|(a, b)| a * b).sum();
                LinCon::new(coef, c.rel, &c.rhs - shift)
            })
            .collect();
        LinSys::new(t_dim, cons)
    }

    /// The translated set {x + off : x in S}.
    pub fn translate(&self, off: &[Rat]) -> LinSys {
        assert_eq!(off.len(), self.dim);
        let cons = self
            .cons
            .iter()
            .map(|c| {
                let shift: Rat = c.coef.iter().zip(off).map(|(a, b)| a * b).sum();
                LinCon::new(c.coef.clone(), c.rel, &c.rhs + shift)
            })
            .collect();
        LinSys::new(self.dim, cons)
    }

    /// Recession cone of the closure: homogenized weak system.
    pub fn recession(&self) -> LinSys {
        if self.is_known_false() {
            return LinSys::single_point(&vec![Rat::zero(); self.dim]);
        }
        let cons = self
            .cons
            .iter()
            .map(|c| {
                let rel = if c.rel == Rel::Eq { Rel::Eq } else { Rel::Le };
                LinCon::new(c.coef.clone(), rel, Rat::zero())
            })
            .collect();
        LinSys::new(self.dim, cons)
    }

    /// Exact containment: every point of self satisfies other.
    pub fn is_subset_of(&self, other: &LinSys) -> bool {
        assert_eq!(self.dim, other.dim);
        if !self.is_feasible() {
            return true;
        }
        for c in &other.cons {
            for neg in negate_constraint(c) {
                let mut sys = self.clone();
                sys.push(neg);
                if sys.is_feasible() {
                    return false;
                }
            }
        }
        true
    }

    pub fn set_eq(&self, other: &LinSys) -> bool {
        self.is_subset_of(other) && other.is_subset_of(self)
    }

    pub fn is_bounded(&self) -> bool {
        if !self.is_feasible() {
            return true;
        }
        let rec = self.recession();
        rec.is_subset_of(&LinSys::single_point(&vec![Rat::zero(); self.dim]))
    }

    /// Exact singleton test; returns the point when |S| = 1.
    pub fn as_singleton(&self) -> Option<Vec<Rat>> {
        if !self.is_feasible() {
            return None;
        }
        let mut point = Vec::with_capacity(self.dim);
        for i in 0..self.dim {
            let mut g = vec![Rat::zero(); self.dim];
            g[i] = Rat::one();
            let iv = self.linear_image(&g);
            match iv.is_point().expect("rational") {
                Some(v) => point.push(v.as_rational().expect("rational sets").clone()),
                None => return None,
            }
        }
        Some(point)
    }

    /// Some feasible point, found by elimination and back-substitution.
    pub fn find_point(&self) -> Option<Vec<Rat>> {
        if self.is_known_false() {
            return None;
        }
        let n = self.dim;
        let mut systems: Vec<LinSys> = Vec::with_capacity(n + 1);
        systems.push(self.clone());
        for k in (0..n).rev() {
            let last = systems.last().unwrap();
            systems.push(last.eliminate(k));
        }
        // systems[n - k] has variables 0..k free
        let empty = systems.last().unwrap();
        if empty.cons.iter().any(|c| c.is_trivial_false()) {
            return None;
        }
        let mut x: Vec<Rat> = Vec::with_capacity(n);
        for k in 0..n {
            let sys = &systems[n - 1 - k]; // constrains vars 0..=k
            // substitute known x_0..x_{k-1}
            let mut lo = Bnd::NegInf;
            let mut hi = Bnd::PlusInf;
            for c in &sys.cons {
                let a = &c.coef[k];
                if a.is_zero() {
                    continue;
                }
                let mut partial = c.rhs.clone();
                for (j, xv) in x.iter().enumerate() {
                    partial -= &c.coef[j] * xv;
                }
                let bound = &partial / a;
                match c.rel {
                    Rel::Eq => {
                        lo = crate::sets::interval::max_lower(&lo, &Bnd::closed_rat(bound.clone()))
                            .expect("rational");
                        hi = crate::sets::interval::min_upper(&hi, &Bnd::closed_rat(bound))
                            .expect("rational");
                    }
                    Rel::Le | Rel::Lt => {
                        let strict = c.rel == Rel::Lt;
                        let b = if strict {
                            Bnd::open_rat(bound)
                        } else {
                            Bnd::closed_rat(bound)
                        };
                        if a.is_positive() {
                            hi = crate::sets::interval::min_upper(&hi, &b).expect("rational");
                        } else {
                            lo = crate::sets::interval::max_lower(&lo, &b).expect("rational");
                        }
                    }
                }
            }
            let iv = Interval::new(lo, hi);
            let v = pick_in_interval(&iv)?;
            x.push(v);
        }
        debug_assert!(self.contains_point(&x));
        Some(x)
    }
}

/// Deterministic rational choice inside a nonempty interval.
pub fn pick_in_interval(iv: &Interval) -> Option<Rat> {
    if iv.is_empty().expect("rational") {
        return None;
    }
    let zero = SymZero::val();
    if iv.contains(&zero).expect("rational") {
        return Some(Rat::zero());
    }
    let lo = iv.lo.value().map(|v| v.as_rational().expect("rational").clone());
    let hi = iv.hi.value().map(|v| v.as_rational().expect("rational").clone());
    match (&iv.lo, &iv.hi) {
        (Bnd::Closed(_), _) => lo,
        (Bnd::Open(_), Bnd::Closed(_)) => hi,
        (Bnd::Open(_), Bnd::Open(_)) => {
            let (a, b) = (lo.unwrap(), hi.unwrap());
            Some((a + b) / crate::scalar::rat(2))
        }
        (Bnd::Open(_), Bnd::PlusInf) => Some(lo.unwrap() + Rat::one()),
        (Bnd::NegInf, Bnd::Closed(_)) => hi,
        (Bnd::NegInf, Bnd::Open(_)) => Some(hi.unwrap() - Rat::one()),
        _ => None,
    }
}

struct SymZero;
impl SymZero {
    fn val() -> crate::sym::SymVal {
        crate::sym::SymVal::zero()
    }
}

fn negate_constraint(c: &LinCon) -> Vec<LinCon> {
    let neg_coef: Vec<Rat> = c.coef.iter().map(|v| -v.clone()).collect();
    match c.rel {
        // not(a.x <= b)  <=>  -a.x < -b
        Rel::Le => vec![LinCon::new(neg_coef, Rel::Lt, -c.rhs.clone())],
        // not(a.x < b)  <=>  -a.x <= -b
        Rel::Lt => vec![LinCon::new(neg_coef, Rel::Le, -c.rhs.clone())],
        Rel::Eq => vec![
            LinCon::new(c.coef.clone(), Rel::Lt, c.rhs.clone()),
            LinCon::new(neg_coef, Rel::Lt, -c.rhs.clone()),
        ],
    }
}
