//! End-to-end acceptance grid. Every criterion prints exactly one
//! `PASS`/`FAIL` line; values are compared as exact integers.

use std::io::Write;

use num_bigint::BigInt;

use flowvol::closed::Family;
use flowvol::lidskii::volume;
use flowvol::model::{build_car, build_ps, NetFlow};
use flowvol::verify::{
    ehrhart_paths, run_suite, Bounds, CaseRecord, ParamValue, Status, Suite, VerificationReport,
    RANDOM_EXPRESSIONS, RANDOM_WORDS,
};

/// Writes straight to the process's stdout so the verdict lines survive the
/// test harness's output capture and land in plain `cargo test` logs.
macro_rules! say {
    ($($arg:tt)*) => {{
        let mut out = std::io::stdout().lock();
        let _ = writeln!(out, $($arg)*);
        let _ = out.flush();
    }};
}

fn report(suite: Suite, max_n: u64, max_k: u64) -> VerificationReport {
    let bounds = Bounds {
        max_n: Some(max_n),
        max_k: Some(max_k),
    };
    run_suite(suite, bounds, Some(4)).expect("suite runs")
}

fn int(c: &CaseRecord, key: &str) -> i64 {
    match c.params.get(key) {
        Some(ParamValue::Int(v)) => *v,
        Some(ParamValue::Text(s)) => s.parse().expect("numeric parameter"),
        None => panic!("{} has no parameter {key}", c.id),
    }
}

/// Every case with `id` passes, and there are exactly `expected` of them.
fn all_pass(r: &VerificationReport, id: &str, expected: usize, problems: &mut Vec<String>) {
    let cases: Vec<_> = r.cases_with_id(id).collect();
    if cases.len() != expected {
        problems.push(format!("{id}: {} cases, expected {expected}", cases.len()));
    }
    for c in cases.iter().filter(|c| c.status != Status::Pass) {
        problems.push(format!(
            "{} {} [{}] expected={} actual={}",
            c.status, c.id, c.params, c.expected, c.actual
        ));
    }
}

fn no_failures(r: &VerificationReport, problems: &mut Vec<String>) {
    for c in r.cases.iter().filter(|c| c.status == Status::Fail) {
        problems.push(format!(
            "FAIL {} [{}] expected={} actual={}",
            c.id, c.params, c.expected, c.actual
        ));
    }
}

fn spot_ehrhart(family: Family, n: u64, k: u64, want: &str, problems: &mut Vec<String>) {
    let paths = ehrhart_paths(family, n, k).expect("valid grid point");
    for (name, value) in paths {
        if value != want {
            problems.push(format!(
                "{family:?} n={n} k={k} {name}={value}, expected {want}"
            ));
        }
    }
}

fn spot_volume(label: &str, got: BigInt, want: i64, problems: &mut Vec<String>) {
    if got != BigInt::from(want) {
        problems.push(format!("{label} = {got}, expected {want}"));
    }
}

fn verdict(name: &str, problems: &[String]) -> bool {
    if problems.is_empty() {
        say!("PASS {name}");
    } else {
        say!("FAIL {name}");
        for p in problems.iter().take(20) {
            say!("    {p}");
        }
    }
    problems.is_empty()
}

fn ps_ehrhart() -> bool {
    let mut p = Vec::new();
    let r = report(Suite::PsEhrhart, 6, 4);
    all_pass(&r, "PS-EHRHART", 5 * 4, &mut p);
    spot_ehrhart(Family::Ps, 3, 2, "7", &mut p);
    spot_ehrhart(Family::Ps, 2, 1, "1", &mut p);
    verdict(
        "1 ps-ehrhart: kpf = ct = enum = closed, 2<=n<=6, 1<=k<=4",
        &p,
    )
}

fn car_ehrhart() -> bool {
    let mut p = Vec::new();
    let r = report(Suite::CarEhrhart, 6, 3);
    all_pass(&r, "CAR-EHRHART", 4 * 3, &mut p);
    all_pass(&r, "CAR-CT-IDENTITY", 5 * 3, &mut p);
    no_failures(&r, &mut p);
    spot_ehrhart(Family::Car, 3, 1, "2", &mut p);
    spot_ehrhart(Family::Car, 4, 1, "7", &mut p);
    verdict(
        "2 car-ehrhart: kpf = ct(n-1 vars) = enum = closed, 3<=n<=6, 1<=k<=3",
        &p,
    )
}

fn cyclic() -> bool {
    let mut p = Vec::new();
    let r = report(Suite::Cyclic, 4, 2);
    // n = 0..=4, k = 1..=2
    all_pass(&r, "IND-SHIFT", 10, &mut p);
    all_pass(&r, "IND-ORDER", 10, &mut p);
    all_pass(&r, "PROJECT-FIBERS", 10, &mut p);
    all_pass(&r, "IND-ORDER-RANDOM", 1, &mut p);
    if let Some(c) = r.cases_with_id("IND-ORDER-RANDOM").next() {
        if c.expected != RANDOM_WORDS.to_string() {
            p.push(format!("random order check covered {} words", c.expected));
        }
    }
    // the counting and prefix routes on the wider grid
    let wide = report(Suite::Cyclic, 5, 3);
    no_failures(&wide, &mut p);
    if wide.cases_with_id("EW-COUNT").count() == 0
        || wide.cases_with_id("PREFIX-ROUTE").count() == 0
    {
        p.push("counting routes produced no cases".into());
    }
    verdict(
        "3 cyclic: ind o shift = ind + 1, (n+1)-to-1 projection, n<=4, k<=2",
        &p,
    )
}

fn dyck_counts() -> bool {
    let mut p = Vec::new();
    let r = report(Suite::DyckCounts, 6, 3);
    no_failures(&r, &mut p);
    for id in ["LD-ZEROS", "LD-COMP", "DLD", "PREFIX"] {
        if r.cases_with_id(id).count() == 0 {
            p.push(format!("{id}: no cases"));
        }
        if r.cases_with_id(id).any(|c| c.status != Status::Pass) {
            p.push(format!("{id}: not all PASS"));
        }
    }
    all_pass(&r, "PARKING", 5, &mut p);
    for (n, want) in [(3, "16"), (4, "125"), (5, "1296")] {
        match r.cases_with_id("PARKING").find(|c| int(c, "n") == n) {
            Some(c) if c.actual == want && c.expected == want => {}
            Some(c) => p.push(format!("parking n={n}: {}", c.actual)),
            None => p.push(format!("parking n={n} missing")),
        }
    }
    verdict(
        "4 labeled paths: enumeration = closed forms, n<=6, k<=3; parking n<=5",
        &p,
    )
}

fn volumes() -> bool {
    let mut p = Vec::new();
    let r = report(Suite::Volumes, 7, 3);
    let in_range = |id: &'static str, lo: i64, hi: i64| {
        r.cases_with_id(id)
            .filter(move |c| (lo..=hi).contains(&int(c, "n")))
            .collect::<Vec<_>>()
    };
    for (id, lo, hi) in [
        ("EQ1", 2, 7),
        ("EQ2", 3, 7),
        ("P53", 1, 6),
        ("P55", 2, 6),
        ("EQ6", 3, 6),
        ("P58", 2, 6),
        ("EQ7-SHIFT", 2, 7),
        ("EQ8-SHIFT", 3, 7),
    ] {
        let cases = in_range(id, lo, hi);
        if cases.is_empty() {
            p.push(format!("{id}: no cases"));
        }
        for c in cases.iter().filter(|c| c.status != Status::Pass) {
            p.push(format!("{} {} [{}]", c.status, c.id, c.params));
        }
    }
    no_failures(&r, &mut p);
    let ps5 = build_ps(4).unwrap();
    let flow = NetFlow::from_i64s(&[1, 1, 1, 1, -4]).unwrap();
    spot_volume(
        "vol PS_5(1,1,1,1)",
        volume(&ps5, &flow).unwrap(),
        16,
        &mut p,
    );
    let car4 = build_car(3).unwrap();
    let flow = NetFlow::from_i64s(&[1, 1, 5, -7]).unwrap();
    spot_volume("vol Car_4(1,1,5)", volume(&car4, &flow).unwrap(), 3, &mut p);
    verdict(
        "5 volume identities = Lidskii oracle on a,b,c,d in {1,2,3}",
        &p,
    )
}

fn coefficients() -> bool {
    let mut p = Vec::new();
    let r = report(Suite::Coefficients, 7, 3);
    no_failures(&r, &mut p);
    // 1 <= k <= m <= n <= 7
    let b_cases = (1..=7u64).map(|n| n * (n + 1) / 2).sum::<u64>() as usize;
    all_pass(&r, "B", b_cases, &mut p);
    all_pass(&r, "A2", 7 * 9, &mut p);
    all_pass(&r, "A3", 6 * 27, &mut p);
    let apqr: Vec<_> = r
        .cases_with_id("APQR")
        .filter(|c| int(c, "n") <= 6)
        .collect();
    if apqr.is_empty() || apqr.iter().any(|c| c.status != Status::Pass) {
        p.push("APQR: missing or failing cases for n <= 6".into());
    }
    if r.cases_with_id("A3-PRINTED")
        .any(|c| c.status == Status::Pass)
    {
        p.push("A3 with last term a*c^(m-1) unexpectedly matches the defining sum".into());
    }
    verdict(
        "6 coefficient lemmas: closed forms = defining sums and routes \
         (A3 last term m*a*c^(m-1); the a*c^(m-1) form is reported)",
        &p,
    )
}

fn discrepancies() -> bool {
    let mut p = Vec::new();
    let r = report(Suite::Volumes, 6, 3);
    no_failures(&r, &mut p);
    let reported = |pred: &dyn Fn(&CaseRecord) -> bool| {
        r.cases
            .iter()
            .filter(|c| pred(c) && c.status == Status::Reported)
            .count()
    };
    if reported(&|c| c.id == "EQ3" && int(c, "m") == 1) == 0 {
        p.push("printed EQ3 at m=1 is not reported".into());
    }
    for n in 5..=6 {
        if reported(&|c| c.id == "EQ5" && int(c, "n") == n) == 0 {
            p.push(format!("printed EQ5 at n={n} is not reported"));
        }
    }
    if reported(&|c| c.id == "EQCONJ") == 0 {
        p.push("printed EQCONJ is not reported".into());
    }
    all_pass(&r, "EQ5-CORRECTED", 4 * 3, &mut p);
    all_pass(&r, "EQCONJ-CORRECTED", 4 * 27, &mut p);
    verdict(
        "7 printed-form discrepancies reported; corrected forms PASS, n<=6",
        &p,
    )
}

fn engines() -> bool {
    let mut p = Vec::new();
    let r = report(Suite::Engines, 5, 3);
    no_failures(&r, &mut p);
    all_pass(&r, "CT-DUAL-RANDOM", RANDOM_EXPRESSIONS, &mut p);
    for c in r.cases_with_id("CT-DUAL-RANDOM") {
        if c.params.get("cap").is_none() {
            p.push(format!(
                "case {} has no stability certificate",
                int(c, "case")
            ));
        }
    }
    all_pass(&r, "CT-DUAL-PS", 4 * 3, &mut p);
    all_pass(&r, "CT-DUAL-CAR", 4 * 3, &mut p);
    all_pass(&r, "KPF-LIST", 3, &mut p);
    for c in r.cases_with_id("KPF-LIST") {
        if c.expected == "0" {
            p.push(format!("KPF-LIST [{}] checked nothing", c.params));
        }
    }
    verdict("8 engines: two CT evaluators agree; kpf = |list_flows|", &p)
}

#[test]
fn acceptance() {
    say!();
    let results = [
        ps_ehrhart(),
        car_ehrhart(),
        cyclic(),
        dyck_counts(),
        volumes(),
        coefficients(),
        discrepancies(),
        engines(),
    ];
    let passed = results.iter().filter(|&&ok| ok).count();
    say!("acceptance: {passed}/{} criteria PASS", results.len());
    assert_eq!(passed, results.len());
}
