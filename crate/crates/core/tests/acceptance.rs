//! End-to-end acceptance gate: ten numbered criteria, each reported as a
//! single pass/fail line. Run with `--nocapture` to see the report on
//! success; on failure the report is printed by the panic message.

use coxhecke::suites::{suite_affine, suite_e8, suite_f4, suite_thin, CheckResult};

fn find<'a>(results: &'a [CheckResult], name: &str) -> &'a CheckResult {
    results
        .iter()
        .find(|r| r.name == name)
        .unwrap_or_else(|| panic!("missing check {name}"))
}

fn all_pass(results: &[CheckResult], names: &[&str]) -> (bool, String) {
    let picked: Vec<&CheckResult> = names.iter().map(|n| find(results, n)).collect();
    let ok = picked.iter().all(|r| r.passed);
    let detail = picked
        .iter()
        .map(|r| {
            if r.passed {
                r.name.clone()
            } else {
                format!("{} FAILED ({})", r.name, r.detail)
            }
        })
        .collect::<Vec<_>>()
        .join(", ");
    (ok, detail)
}

#[test]
fn acceptance_criteria() {
    let t0 = std::time::Instant::now();
    let f4 = suite_f4().expect("f4 suite failed to run");
    let f4_elapsed = t0.elapsed();

    let t1 = std::time::Instant::now();
    let e8 = suite_e8().expect("e8 suite failed to run");
    let e8_elapsed = t1.elapsed();

    let t2 = std::time::Instant::now();
    let affine = suite_affine().expect("affine suite failed to run");
    let affine_elapsed = t2.elapsed();

    let thin = suite_thin().expect("thin suite failed to run");

    let mut lines: Vec<String> = Vec::new();
    let mut failures = 0usize;
    let mut report = |num: usize, title: &str, ok: bool, detail: String| {
        let tag = if ok { "PASS" } else { "FAIL" };
        if !ok {
            failures += 1;
        }
        lines.push(format!("criterion {num}: {tag} - {title}: {detail}"));
    };

    // 1. F4 intersection numbers, exact polynomial equality
    {
        let r = find(&f4, "f4-structconst-row");
        report(
            1,
            "F4 intersection numbers",
            r.passed,
            format!("{} (suite ran in {:.1}s)", r.detail, f4_elapsed.as_secs_f64()),
        );
    }

    // 2. F4 multiplication table rows
    {
        let (ok, detail) = all_pass(
            &f4,
            &[
                "f4-multable-a1a1",
                "f4-multable-a2a1",
                "f4-multable-a3a1",
                "f4-multable-a4a1",
            ],
        );
        report(2, "F4 multiplication table", ok, detail);
    }

    // 3. E8 structure constants via the pregallery path
    {
        let (ok, detail) = all_pass(&e8, &["e8-rep-count", "e8-named-reps", "e8-structconst"]);
        report(
            3,
            "E8 structure constants",
            ok,
            format!("{detail} (suite ran in {:.1}s)", e8_elapsed.as_secs_f64()),
        );
    }

    // 4. Sphere closed forms for affine A_n and C_n
    {
        let (ok, detail) = all_pass(
            &affine,
            &[
                "affine-sphere-a2",
                "affine-sphere-a3",
                "affine-sphere-a4",
                "affine-sphere-c2",
                "affine-sphere-c3",
            ],
        );
        report(4, "affine sphere closed forms", ok, detail);
    }

    // 5. Thin-building counting oracle at q = 1
    {
        let (ok, detail) = all_pass(&thin, &["thin-oracle-a3", "thin-oracle-b3"]);
        report(5, "thin-building oracle", ok, detail);
    }

    // 6. Triple-path equality on B3
    {
        let r = find(&thin, "triple-path-b3");
        report(6, "triple-path equality", r.passed, r.detail.clone());
    }

    // 7. Nonnegativity of structure constants (value sense; raw coefficients
    // can be negative, see the F4 row A1A1)
    {
        let f = find(&f4, "f4-nonneg");
        let e = find(&e8, "e8-nonneg");
        report(
            7,
            "nonnegativity",
            f.passed && e.passed,
            format!("{}; {}", f.detail, e.detail),
        );
    }

    // 8. Commutativity fixtures: F4 commutes, E8 does not
    {
        let (ok, detail) = all_pass2(&f4, "f4-commutativity", &e8, "e8-noncommutative");
        report(8, "commutativity fixtures", ok, detail);
    }

    // 9. Random-walk transfer against the structure-constant oracle
    {
        let r = find(&affine, "walk-transfer");
        report(9, "walk transfer n<=5", r.passed, r.detail.clone());
    }

    // 10. A2-affine local limit behaviour
    {
        let r = find(&affine, "walk-limit");
        report(
            10,
            "local limit diagnostics",
            r.passed,
            format!("{} (suite ran in {:.1}s)", r.detail, affine_elapsed.as_secs_f64()),
        );
    }

    drop(report);
    let report_text = lines.join("\n");
    println!("{report_text}");
    assert!(failures == 0, "\n{report_text}\n{failures} criteria failed");
}

fn all_pass2(a: &[CheckResult], an: &str, b: &[CheckResult], bn: &str) -> (bool, String) {
    let ra = find(a, an);
    let rb = find(b, bn);
    (
        ra.passed && rb.passed,
        format!("{}: {}; {}: {}", ra.name, ra.detail, rb.name, rb.detail),
    )
}
