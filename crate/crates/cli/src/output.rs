use qcalc_core::{CheckRecord, Report};

/// Pretty JSON array in record field order; `[]` when empty.
pub fn json(report: &Report) -> String {
    serde_json::to_string_pretty(report).expect("records serialize")
}

fn residual(r: &CheckRecord) -> String {
    r.max_residual.map_or_else(|| "-".into(), |v| format!("{v:.2e}"))
}

/// Aligned table with one row per record and a summary line.
pub fn table(report: &Report) -> String {
    let header = ["STATUS", "SUITE", "CALCULUS", "RESIDUAL", "TOL", "CHECK"];
    let rows: Vec<[String; 6]> = report
        .records
        .iter()
        .map(|r| {
            let mut check = r.check.clone();
            if let Some(v) = &r.variant {
                check.push_str(&format!(" [{v}]"));
            }
            if let Some(d) = r.detail.as_ref().filter(|_| !r.pass) {
                check.push_str(&format!(" ({d})"));
            }
            [
                if r.pass { "PASS" } else { "FAIL" }.to_string(),
                r.suite.clone(),
                r.calculus.clone().unwrap_or_else(|| "-".into()),
                residual(r),
                r.tolerance.map_or_else(|| "-".into(), |t| format!("{t:.0e}")),
                check,
            ]
        })
        .collect();
    let mut width = header.map(str::len);
    for row in &rows {
        for (w, c) in width.iter_mut().zip(row) {
            *w = (*w).max(c.chars().count());
        }
    }
    let line = |cells: [&str; 6]| {
        let mut s = String::new();
        for (i, c) in cells.iter().enumerate() {
            if i == 5 {
                s.push_str(c);
            } else {
                s.push_str(&format!("{c:<w$}  ", w = width[i]));
            }
        }
        s
    };
    let mut out = vec![line(header)];
    for r in &rows {
        out.push(line([&r[0], &r[1], &r[2], &r[3], &r[4], &r[5]]));
    }
    let failed = report.failures().count();
    out.push(format!("{} checks, {} failed", report.len(), failed));
    out.join("\n")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_report_is_empty_array() {
        assert_eq!(json(&Report::new()), "[]");
    }

    #[test]
    fn residuals_have_three_significant_digits() {
        let r = CheckRecord::new("oprep", "x", true).residual(1.23456e-13, 1e-10);
        assert_eq!(residual(&r), "1.23e-13");
        let t = table(&std::iter::once(r).collect());
        assert!(t.contains("1.23e-13"));
        assert!(t.ends_with("1 checks, 0 failed"));
    }
}
