//! The committed evaluation-table suite: eleven toy instances plus the
//! l1 example, regenerated from their spec files and diffed row by row
//! against golden reports.

use crate::report::{run, ReportDocument};
use crate::specfile::parse_spec;
use std::path::Path;

pub struct SuiteCase {
    pub name: &'static str,
    pub spec: &'static str,
    pub golden: &'static str,
}

macro_rules! case {
    ($name:literal) => {
        SuiteCase {
            name: $name,
            spec: include_str!(concat!("../assets/paper_suite/", $name, ".spec")),
            golden: include_str!(concat!("../assets/paper_suite/", $name, ".golden")),
        }
    };
}

pub fn cases() -> Vec<SuiteCase> {
    vec![
        case!("p1_example1"),
        case!("p1_example2"),
        case!("p1_example3"),
        case!("p1_example4"),
        case!("p1_example5"),
        case!("p1_example6"),
        case!("p2_example1"),
        case!("p2_example2"),
        case!("p2_example3"),
        case!("p2_example4"),
        case!("p2_example5"),
        case!("lasso"),
    ]
}

pub fn generate(name: &str) -> Result<ReportDocument, String> {
    let case = cases()
        .into_iter()
        .find(|c| c.name == name)
        .ok_or_else(|| format!("unknown suite case '{name}'"))?;
    let spec = parse_spec(case.spec).map_err(|e| e.to_string())?;
    run(&spec).map_err(|e| e.to_string())
}

pub struct SuiteOutcome {
    pub written: usize,
    pub mismatches: Vec<String>,
}

/// Regenerates every report into `out_dir` and diffs against the committed
/// goldens; mismatching rows are listed by name.
pub fn run_suite(out_dir: &Path) -> Result<SuiteOutcome, String> {
    std::fs::create_dir_all(out_dir).map_err(|e| e.to_string())?;
    let mut mismatches = Vec::new();
    let mut written = 0;
    for case in cases() {
        let doc = generate(case.name)?;
        let text = doc.render_text();
        let path = out_dir.join(format!("{}.txt", case.name));
        std::fs::write(&path, &text).map_err(|e| e.to_string())?;
        let json_path = out_dir.join(format!("{}.json", case.name));
        std::fs::write(
            &json_path,
            serde_json::to_string_pretty(&doc.json).map_err(|e| e.to_string())?,
        )
        .map_err(|e| e.to_string())?;
        written += 1;
        if text != case.golden {
            // name the differing rows
            let fresh: Vec<&str> = text.lines().collect();
            let gold: Vec<&str> = case.golden.lines().collect();
            let max = fresh.len().max(gold.len());
            for i in 0..max {
                let f = fresh.get(i).copied().unwrap_or("<missing>");
                let g = gold.get(i).copied().unwrap_or("<missing>");
                if f != g {
                    mismatches.push(format!(
                        "{}: line {}: got '{}', golden '{}'",
                        case.name,
                        i + 1,
                        f,
                        g
                    ));
                }
            }
        }
    }
    Ok(SuiteOutcome {
        written,
        mismatches,
    })
}
