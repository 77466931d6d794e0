//! Report assembly: deterministic criterion rows mirroring the evaluation
//! tables, plus a machine-readable JSON document where every verdict
//! carries a resolvable certificate reference.

use crate::constrained::P2Analysis;
use crate::least_squares::{P1Analysis, Tri};
use crate::scalar::{render_rat, render_vec, Rat};
use crate::sets::interval::IntervalUnion;
use crate::sets::{ConvexSet, SetUnion};
use crate::specfile::{Check, ProblemKind, ProblemSpec};
use crate::sym::ExtVal;
use serde_json::{json, Value};

#[derive(Debug, Clone)]
pub struct Row {
    pub key: String,
    pub value: String,
}

#[derive(Debug, Clone)]
pub struct ReportDocument {
    pub title: String,
    pub rows: Vec<Row>,
    pub json: Value,
    pub undecidable: bool,
}

impl ReportDocument {
    pub fn render_text(&self) -> String {
        let mut out = format!("{}\n", self.title);
        for r in &self.rows {
            out.push_str(&format!("{}: {}\n", r.key, r.value));
        }
        out
    }
}

fn opt_set(s: &Option<ConvexSet>) -> String {
    s.as_ref().map(|v| v.render()).unwrap_or_else(|| "-".into())
}

fn opt_union(s: &Option<SetUnion>) -> String {
    s.as_ref().map(|v| v.render()).unwrap_or_else(|| "-".into())
}

fn opt_iv(s: &Option<IntervalUnion>) -> String {
    s.as_ref().map(|v| v.render()).unwrap_or_else(|| "-".into())
}

fn opt_vec(v: &Option<Vec<Rat>>) -> String {
    v.as_ref().map(|x| render_vec(x)).unwrap_or_else(|| "-".into())
}

fn opt_val(v: &Option<ExtVal>) -> String {
    v.as_ref().map(|x| x.render()).unwrap_or_else(|| "-".into())
}

fn opt_bool(v: &Option<bool>) -> String {
    match v {
        Some(true) => "yes".into(),
        Some(false) => "no".into(),
        None => "-".into(),
    }
}

fn problem_rows(spec: &ProblemSpec, rows: &mut Vec<Row>) {
    let a_render = {
        let rs: Vec<String> = (0..spec.a.rows())
            .map(|i| {
                let cells: Vec<String> = (0..spec.a.cols())
                    .map(|j| render_rat(spec.a.at(i, j)))
                    .collect();
                format!("[{}]", cells.join(", "))
            })
            .collect();
        format!("[{}]", rs.join(", "))
    };
    rows.push(Row {
        key: "f".into(),
        value: spec.f_src.clone(),
    });
    rows.push(Row {
        key: "A".into(),
        value: a_render,
    });
    rows.push(Row {
        key: "b".into(),
        value: render_vec(&spec.b),
    });
}

fn wants(checks: &Option<Vec<Check>>, c: Check) -> bool {
    match checks {
        None => true,
        Some(list) => list.contains(&c),
    }
}

/// Paper-table convention: the compactness row reads "no" for an empty
/// solution set even though the empty set is (vacuously) compact; the JSON
/// document carries both readings.
fn compactness_row(existence: &Tri, compact: &Tri) -> String {
    if existence.is_no() {
        "no".into()
    } else {
        compact.render()
    }
}

pub fn p1_report(spec: &ProblemSpec, an: &P1Analysis) -> ReportDocument {
    let mut rows = Vec::new();
    rows.push(Row {
        key: "problem".into(),
        value: "minimize f(x) + (1/2)||Ax - b||^2".into(),
    });
    problem_rows(spec, &mut rows);
    let checks = &spec.checks;
    if wants(checks, Check::Existence) {
        rows.push(Row {
            key: "existence".into(),
            value: an.existence.render(),
        });
        rows.push(Row {
            key: "existence reason".into(),
            value: an
                .reason
                .map(|r| r.render().to_string())
                .unwrap_or_else(|| "-".into()),
        });
    }
    rows.push(Row {
        key: "x_r*".into(),
        value: opt_vec(&an.solution.as_ref().map(|s| s.x_r_star.clone()).into()),
    });
    rows.push(Row {
        key: "X".into(),
        value: opt_set(&an.solution_set),
    });
    rows.push(Row {
        key: "ran df cap ran A^T".into(),
        value: an.viability.render(),
    });
    rows.push(Row {
        key: "ri ran df cap ran A^T".into(),
        value: opt_union(&an.ri_cap_rowspace),
    });
    rows.push(Row {
        key: "0 in ri ran df".into(),
        value: an.zero_in_ri.render(),
    });
    rows.push(Row {
        key: "ran(I + A o df* o A^T)".into(),
        value: opt_iv(&an.ran_i_plus_t),
    });
    rows.push(Row {
        key: "maximality of A o df* o A^T".into(),
        value: an.maximal.render(),
    });
    if wants(checks, Check::Compactness) {
        rows.push(Row {
            key: "compactness".into(),
            value: compactness_row(&an.existence, &an.compact),
        });
    }
    rows.push(Row {
        key: "ker f_inf".into(),
        value: opt_set(&an.ker_finf),
    });
    rows.push(Row {
        key: "R_f".into(),
        value: opt_set(&an.r_f),
    });
    rows.push(Row {
        key: "ker f_inf cap ker A".into(),
        value: opt_set(&an.ker_finf_cap_ker),
    });
    rows.push(Row {
        key: "R_f cap ker A".into(),
        value: opt_set(&an.rf_cap_ker),
    });
    rows.push(Row {
        key: "df*(A^T r)".into(),
        value: opt_set(&an.conj_at_atr),
    });
    rows.push(Row {
        key: "(df*(A^T r))_inf cap ker A".into(),
        value: opt_set(&an.conj_rec_cap_ker),
    });
    rows.push(Row {
        key: "P_ker A((df*(A^T r))_inf)".into(),
        value: opt_set(&an.proj_ker_conj_rec),
    });
    if wants(checks, Check::Compactness) {
        let mut v = if an.solution.is_none() {
            "-".to_string()
        } else {
            an.compact_sufficient.render()
        };
        if an.compact_sufficient_inconclusive {
            v.push_str(" (sufficient test inconclusive)");
        }
        rows.push(Row {
            key: "compactness sufficient test (projection)".into(),
            value: v,
        });
    }
    if wants(checks, Check::Uniqueness) {
        rows.push(Row {
            key: "uniqueness".into(),
            value: an.unique.render(),
        });
    }
    rows.push(Row {
        key: "x* (chosen)".into(),
        value: opt_vec(&an.solution.as_ref().map(|s| s.x_star.clone()).into()),
    });
    rows.push(Row {
        key: "slev_x* f".into(),
        value: opt_set(&an.sublevel),
    });
    rows.push(Row {
        key: "T_slev(x*) cap ker A".into(),
        value: opt_set(&an.descent_cap_ker),
    });
    rows.push(Row {
        key: "(df*(A^T r) - x_r*) cap ker A".into(),
        value: opt_set(&an.unique_range_cert),
    });
    rows.push(Row {
        key: "(df*(A^T r) - x*) cap ker A".into(),
        value: opt_set(&an.unique_cert),
    });
    rows.push(Row {
        key: "(P_ker A o df*)(A^T r)".into(),
        value: opt_set(&an.proj_ker_conj),
    });
    if wants(checks, Check::Uniqueness) {
        let mut v = if an.solution.is_none() {
            "-".to_string()
        } else {
            an.unique_sufficient.render()
        };
        if an.unique_sufficient_inconclusive {
            v.push_str(" (sufficient test inconclusive)");
        }
        rows.push(Row {
            key: "uniqueness sufficient test (projection)".into(),
            value: v,
        });
    }
    rows.push(Row {
        key: "connection identities".into(),
        value: opt_bool(&an.connect_ok),
    });
    rows.push(Row {
        key: "resolvent identity".into(),
        value: opt_bool(&an.moreau_ok),
    });
    for n in &an.notes {
        rows.push(Row {
            key: "note".into(),
            value: n.clone(),
        });
    }
    let undecidable = rows.iter().any(|r| r.value.starts_with("undecidable"));
    let json = p1_json(spec, an, &rows);
    ReportDocument {
        title: "solution diagnostics: regularized least squares".into(),
        rows,
        json,
        undecidable,
    }
}

fn rows_json(rows: &[Row]) -> Value {
    Value::Array(
        rows.iter()
            .map(|r| json!({"key": r.key, "value": r.value}))
            .collect(),
    )
}

fn p1_json(spec: &ProblemSpec, an: &P1Analysis, rows: &[Row]) -> Value {
    let mut certificates = serde_json::Map::new();
    let mut put = |name: &str, v: Option<String>| {
        if let Some(s) = v {
            certificates.insert(name.to_string(), json!({ "set": s }));
        }
    };
    put(
        "viability",
        Some(an.viability.render()),
    );
    put(
        "recession-cap-kernel",
        an.conj_rec_cap_ker.as_ref().map(|s| s.render()),
    );
    put(
        "uniqueness-intersection",
        an.unique_cert.as_ref().map(|s| s.render()),
    );
    put(
        "kernel-projection",
        an.proj_ker_conj_rec.as_ref().map(|s| s.render()),
    );
    json!({
        "kind": "regularized",
        "problem": {
            "f": spec.f_src,
            "A": (0..spec.a.rows()).map(|i| (0..spec.a.cols()).map(|j| render_rat(spec.a.at(i,j))).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "b": spec.b.iter().map(render_rat).collect::<Vec<_>>(),
        },
        "verdicts": {
            "existence": {
                "value": an.existence.render(),
                "reason": an.reason.map(|r| r.render().to_string()),
                "certificate": "viability",
            },
            "compactness": {
                "value": compactness_row(&an.existence, &an.compact),
                "vacuous": an.existence.is_no(),
                "certificate": "recession-cap-kernel",
            },
            "uniqueness": {
                "value": an.unique.render(),
                "certificate": "uniqueness-intersection",
            },
        },
        "certificates": Value::Object(certificates),
        "rows": rows_json(rows),
    })
}

pub fn p2_report(spec: &ProblemSpec, an: &P2Analysis) -> ReportDocument {
    let mut rows = Vec::new();
    rows.push(Row {
        key: "problem".into(),
        value: "minimize f(x) subject to Ax = b".into(),
    });
    problem_rows(spec, &mut rows);
    let checks = &spec.checks;
    if wants(checks, Check::Existence) {
        rows.push(Row {
            key: "existence".into(),
            value: an.existence.render(),
        });
        rows.push(Row {
            key: "existence reason".into(),
            value: an.reason.render().into(),
        });
    }
    rows.push(Row {
        key: "x_r*".into(),
        value: opt_vec(&an.x_r_star),
    });
    rows.push(Row {
        key: "X".into(),
        value: opt_union(&an.solution_set),
    });
    rows.push(Row {
        key: "A(dom f)".into(),
        value: opt_set(&an.a_dom_f),
    });
    rows.push(Row {
        key: "dom(A |> df)".into(),
        value: opt_iv(&an.dom_parallel),
    });
    rows.push(Row {
        key: "ran df cap ran A^T".into(),
        value: opt_union(&an.viability),
    });
    rows.push(Row {
        key: "b in dom(A |> df)".into(),
        value: an.b_in_dom_parallel.render(),
    });
    rows.push(Row {
        key: "exactness of A |> f at b".into(),
        value: an.exact_at_b.render(),
    });
    rows.push(Row {
        key: "dual certificate v".into(),
        value: an
            .certificate
            .as_ref()
            .map(|c| render_vec(&c.v))
            .unwrap_or_else(|| "-".into()),
    });
    rows.push(Row {
        key: "C := union of df*(A^T v)".into(),
        value: opt_union(&an.certificate_sets),
    });
    rows.push(Row {
        key: "(C - x*) cap ker A".into(),
        value: opt_union(&an.unique_cert),
    });
    rows.push(Row {
        key: "b in (A o df*)(0)".into(),
        value: an.b_in_a_conj_zero.render(),
    });
    rows.push(Row {
        key: "(A |> f)(b)".into(),
        value: opt_val(&an.inf_value),
    });
    rows.push(Row {
        key: "min f".into(),
        value: opt_val(&an.min_f_value),
    });
    rows.push(Row {
        key: "constraint influence".into(),
        value: an.influence.render(),
    });
    if wants(checks, Check::Uniqueness) {
        rows.push(Row {
            key: "uniqueness".into(),
            value: an.unique.render(),
        });
    }
    if wants(checks, Check::Compactness) {
        rows.push(Row {
            key: "compactness".into(),
            value: compactness_row(&an.existence, &an.compact),
        });
    }
    rows.push(Row {
        key: "x* (chosen)".into(),
        value: opt_vec(&an.x_star),
    });
    rows.push(Row {
        key: "d(A |> f) maximally monotone".into(),
        value: an.subgrad_postcomp_maximal.render(),
    });
    rows.push(Row {
        key: "b in ran(I + d(A |> f))".into(),
        value: an.b_in_ran_i_plus_post.render(),
    });
    rows.push(Row {
        key: "A |> f exact at prox(b)".into(),
        value: an.exact_at_prox.render(),
    });
    if let Some(ok) = an.descent_route_agrees {
        rows.push(Row {
            key: "descent-cone route agrees".into(),
            value: if ok { "yes".into() } else { "no".into() },
        });
    }
    for n in &an.notes {
        rows.push(Row {
            key: "note".into(),
            value: n.clone(),
        });
    }
    let undecidable = rows.iter().any(|r| r.value.starts_with("undecidable"));
    let json = p2_json(spec, an, &rows);
    ReportDocument {
        title: "solution diagnostics: linearly constrained minimization".into(),
        rows,
        json,
        undecidable,
    }
}

fn p2_json(spec: &ProblemSpec, an: &P2Analysis, rows: &[Row]) -> Value {
    let mut certificates = serde_json::Map::new();
    if let Some(u) = &an.certificate_sets {
        certificates.insert("certificate-sets".into(), json!({"set": u.render()}));
    }
    if let Some(u) = &an.unique_cert {
        certificates.insert("uniqueness-intersection".into(), json!({"set": u.render()}));
    }
    if let Some(c) = &an.certificate {
        certificates.insert(
            "dual-certificate".into(),
            json!({"v": render_vec(&c.v), "witness": render_vec(&c.witness_subgradient)}),
        );
    }
    if let Some(v) = &an.viability {
        certificates.insert("viability".into(), json!({"set": v.render()}));
    }
    json!({
        "kind": "constrained",
        "problem": {
            "f": spec.f_src,
            "A": (0..spec.a.rows()).map(|i| (0..spec.a.cols()).map(|j| render_rat(spec.a.at(i,j))).collect::<Vec<_>>()).collect::<Vec<_>>(),
            "b": spec.b.iter().map(render_rat).collect::<Vec<_>>(),
        },
        "verdicts": {
            "existence": {
                "value": an.existence.render(),
                "reason": an.reason.render(),
                "certificate": "dual-certificate",
            },
            "compactness": {
                "value": compactness_row(&an.existence, &an.compact),
                "vacuous": an.existence.is_no(),
                "certificate": "certificate-sets",
            },
            "uniqueness": {
                "value": an.unique.render(),
                "certificate": "uniqueness-intersection",
            },
        },
        "certificates": Value::Object(certificates),
        "rows": rows_json(rows),
    })
}

/// Runs the full diagnostics for a parsed problem specification.
pub fn run(spec: &ProblemSpec) -> Result<ReportDocument, crate::least_squares::DiagError> {
    match spec.kind {
        ProblemKind::Regularized => {
            let an = crate::least_squares::analyze_p1(&spec.f, &spec.a, &spec.b)?;
            Ok(p1_report(spec, &an))
        }
        ProblemKind::Constrained => {
            let an = crate::constrained::analyze_p2(&spec.f, &spec.a, &spec.b)?;
            Ok(p2_report(spec, &an))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::specfile::parse_spec;

    #[test]
    fn deterministic_report_bytes() {
        let spec =
            parse_spec("kind = regularized\nf = hinge(x1)\nA = [[0, 1]]\nb = [1]\n").unwrap();
        let r1 = run(&spec).unwrap().render_text();
        let r2 = run(&spec).unwrap().render_text();
        assert_eq!(r1, r2);
        assert!(r1.contains("X: (-inf,0] x {1}"));
        assert!(r1.contains("existence: yes"));
        assert!(r1.contains("compactness: no"));
        assert!(r1.contains("uniqueness: no"));
    }

    #[test]
    fn checks_filter_rows() {
        let spec = parse_spec(
            "kind = regularized\nf = hinge(x1)\nA = [[0, 1]]\nb = [1]\nchecks = existence\n",
        )
        .unwrap();
        let r = run(&spec).unwrap().render_text();
        assert!(r.contains("existence: yes"));
        assert!(!r.contains("compactness:"));
        assert!(!r.contains("\nuniqueness:"));
    }

    #[test]
    fn json_has_certificates_for_verdicts() {
        let spec =
            parse_spec("kind = regularized\nf = hinge(x1)\nA = [[0, 1]]\nb = [1]\n").unwrap();
        let doc = run(&spec).unwrap();
        let v = &doc.json;
        for name in ["existence", "compactness", "uniqueness"] {
            let cert = v["verdicts"][name]["certificate"].as_str().unwrap();
            assert!(
                v["certificates"].get(cert).is_some(),
                "certificate '{cert}' for {name} must resolve"
            );
        }
    }
}
