//! Verification harness: runs identity grids across every computation path
//! and assembles a report in canonical case order.
//!
//! Each suite is split into independent tasks. With a worker count the tasks
//! run on a dedicated thread pool; results are still collected in task order,
//! so the report does not depend on scheduling.

mod report;

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::{BigInt, BigUint};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

pub use report::{CaseParams, CaseRecord, ParamValue, Status, Summary, VerificationReport};

use crate::arith::{multiset, pow, weak_compositions};
use crate::closed::{self, Family, Params, VolumeId};
use crate::ct::{
    car_ct_expression, evaluate, evaluate_series_certified, kostant_ct_expression,
    ps_ct_expression, random_expression, CtExpression,
};
use crate::cyclic::{
    enumerate_ew, enumerate_prefix_ew, ind, ind_with, index_candidates, insert_zeros_before_up,
    project, random_extended_word, shift, DeletionOrder,
};
use crate::dyck::{count_dld, count_ld, count_prefixes, label_counts, LabelFilter, Step};
use crate::error::{Error, Result};
use crate::kostant::{kpf, list_flows};
use crate::lidskii::{ehrhart_like, volume, volume_unit_flow, LidskiiExpansion};
use crate::model::{build_car, build_ps, DirectedStepGraph, NetFlow};

/// Seeds for the randomized checks; fixed so reports are reproducible.
const RANDOM_WORD_SEED: u64 = 0x00c0_ffee;
const RANDOM_EXPR_SEED: u64 = 0x5eed_0001;
pub const RANDOM_WORDS: usize = 200;
pub const RANDOM_EXPRESSIONS: usize = 100;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Suite {
    PsEhrhart,
    CarEhrhart,
    DyckCounts,
    Cyclic,
    Volumes,
    Coefficients,
    Engines,
    All,
}

impl Suite {
    pub const EACH: [Suite; 7] = [
        Suite::PsEhrhart,
        Suite::CarEhrhart,
        Suite::DyckCounts,
        Suite::Cyclic,
        Suite::Volumes,
        Suite::Coefficients,
        Suite::Engines,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::PsEhrhart => "ps-ehrhart",
            Suite::CarEhrhart => "car-ehrhart",
            Suite::DyckCounts => "dyck-counts",
            Suite::Cyclic => "cyclic",
            Suite::Volumes => "volumes",
            Suite::Coefficients => "coefficients",
            Suite::Engines => "engines",
            Suite::All => "all",
        }
    }

    /// Default `(max_n, max_k)` for the suite's grid.
    pub fn default_bounds(self) -> (u64, u64) {
        match self {
            Suite::PsEhrhart => (6, 4),
            Suite::CarEhrhart => (6, 3),
            Suite::DyckCounts => (6, 3),
            Suite::Cyclic => (4, 2),
            Suite::Volumes => (7, 3),
            Suite::Coefficients => (7, 3),
            Suite::Engines => (5, 3),
            Suite::All => (0, 0),
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::EACH
            .into_iter()
            .chain([Suite::All])
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::parse("suite", format!("unknown suite {s:?}")))
    }
}

/// Optional overrides of a suite's grid bounds.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Bounds {
    pub max_n: Option<u64>,
    pub max_k: Option<u64>,
}

impl Bounds {
    fn resolve(self, suite: Suite) -> (u64, u64) {
        let (n, k) = suite.default_bounds();
        (self.max_n.unwrap_or(n), self.max_k.unwrap_or(k))
    }
}

type Task = Box<dyn FnOnce() -> Vec<CaseRecord> + Send>;

fn task(f: impl FnOnce() -> Vec<CaseRecord> + Send + 'static) -> Task {
    Box::new(f)
}

/// Runs a suite. `workers` of `None` or `Some(1)` runs sequentially.
pub fn run_suite(
    suite: Suite,
    bounds: Bounds,
    workers: Option<usize>,
) -> Result<VerificationReport> {
    let start = Instant::now();
    let tasks = match suite {
        Suite::All => Suite::EACH
            .into_iter()
            .flat_map(|s| suite_tasks(s, bounds))
            .collect(),
        s => suite_tasks(s, bounds),
    };
    let cases = execute(tasks, workers)?;
    Ok(VerificationReport::new(
        suite.name(),
        cases,
        start.elapsed().as_millis(),
    ))
}

fn execute(tasks: Vec<Task>, workers: Option<usize>) -> Result<Vec<CaseRecord>> {
    match workers {
        None | Some(1) => Ok(tasks.into_iter().flat_map(|t| t()).collect()),
        Some(0) => Err(Error::domain("worker count must be positive")),
        Some(w) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(w)
                .build()
                .map_err(|e| Error::domain(format!("thread pool: {e}")))?;
            let chunks: Vec<Vec<CaseRecord>> =
                pool.install(|| tasks.into_par_iter().map(|t| t()).collect());
            Ok(chunks.into_iter().flatten().collect())
        }
    }
}

fn suite_tasks(suite: Suite, bounds: Bounds) -> Vec<Task> {
    let (max_n, max_k) = bounds.resolve(suite);
    match suite {
        Suite::PsEhrhart => ps_ehrhart_tasks(max_n, max_k),
        Suite::CarEhrhart => car_ehrhart_tasks(max_n, max_k),
        Suite::DyckCounts => dyck_tasks(max_n, max_k),
        Suite::Cyclic => cyclic_tasks(max_n, max_k),
        Suite::Volumes => volume_tasks(max_n),
        Suite::Coefficients => coefficient_tasks(max_n),
        Suite::Engines => engine_tasks(max_n, max_k),
        Suite::All => unreachable!("expanded by run_suite"),
    }
}

fn show<T: fmt::Display>(r: Result<T>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e}"),
    }
}

/// The common value when every path agrees, otherwise `path=value` pairs.
fn agreed(paths: &[(&str, String)]) -> String {
    if paths.windows(2).all(|w| w[0].1 == w[1].1) {
        paths[0].1.clone()
    } else {
        paths
            .iter()
            .map(|(name, v)| format!("{name}={v}"))
            .collect::<Vec<_>>()
            .join(";")
    }
}

fn nk(n: u64, k: u64) -> CaseParams {
    CaseParams::default().with("n", n).with("k", k)
}

fn join<T: fmt::Display>(items: &[T]) -> String {
    items
        .iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(",")
}

/// The four computation paths for the Ehrhart-like value of `PS_{n+1}` or
/// `Car_{n+1}`, in the order kpf, ct, enum, closed. Each path's failure is
/// rendered into its value, so a broken path shows up as a disagreement.
/// The caracol constant-term path uses `n - 1` variables.
pub fn ehrhart_paths(family: Family, n: u64, k: u64) -> Result<Vec<(&'static str, String)>> {
    let min = match family {
        Family::Ps => 2,
        Family::Car => 3,
    };
    if n < min || k < 1 {
        return Err(Error::domain(format!(
            "need n >= {min} and k >= 1, got n={n}, k={k}"
        )));
    }
    let (nu, ku, k32) = (n as usize, k as usize, k as u32);
    Ok(match family {
        Family::Ps => vec![
            ("kpf", show(build_ps(nu).and_then(|g| ehrhart_like(&g, ku)))),
            ("ct", show(ps_ct_expression(nu, k32).map(|e| evaluate(&e)))),
            ("enum", show(count_ld(nu - 1, k32, &LabelFilter::Zeros(0)))),
            ("closed", show(closed::ehrhart_ps_closed(n, k))),
        ],
        Family::Car => vec![
            (
                "kpf",
                show(build_car(nu).and_then(|g| ehrhart_like(&g, ku))),
            ),
            (
                "ct",
                show(car_ct_expression(nu - 1, k32).map(|e| evaluate(&e))),
            ),
            ("enum", show(count_dld(nu - 2, k32))),
            ("closed", show(closed::ehrhart_car_closed(n, k))),
        ],
    })
}

fn paths_case(id: &str, family: Family, n: u64, k: u64) -> CaseRecord {
    match ehrhart_paths(family, n, k) {
        Ok(paths) => {
            let (closed, others) = paths.split_last().expect("four paths");
            CaseRecord::compare(id, nk(n, k), closed.1.clone(), agreed(others), false)
        }
        Err(e) => CaseRecord::compare(id, nk(n, k), "-".into(), show::<u8>(Err(e)), false),
    }
}

fn ps_ehrhart_tasks(max_n: u64, max_k: u64) -> Vec<Task> {
    let mut tasks = Vec::new();
    for n in 2..=max_n {
        for k in 1..=max_k {
            tasks.push(task(move || {
                vec![paths_case("PS-EHRHART", Family::Ps, n, k)]
            }));
        }
    }
    tasks
}

fn car_ehrhart_tasks(max_n: u64, max_k: u64) -> Vec<Task> {
    let mut tasks = Vec::new();
    for n in 3..=max_n {
        for k in 1..=max_k {
            tasks.push(task(move || {
                let closed = show(closed::ehrhart_car_closed(n, k));
                let printed = show(car_ct_expression(n as usize, k as u32).map(|e| evaluate(&e)));
                vec![
                    paths_case("CAR-EHRHART", Family::Car, n, k),
                    CaseRecord::compare("CT2-PRINTED", nk(n, k), closed, printed, true),
                ]
            }));
        }
    }
    // the n-variable caracol expression as a statement on its own
    for n in 2..=max_n {
        for k in 1..=max_k {
            tasks.push(task(move || {
                let expected = show(closed::dld_count_closed(n, k));
                let ct = show(car_ct_expression(n as usize, k as u32).map(|e| evaluate(&e)));
                let dld = show(count_dld(n as usize - 1, k as u32));
                let actual = agreed(&[("ct", ct), ("enum", dld)]);
                vec![CaseRecord::compare(
                    "CAR-CT-IDENTITY",
                    nk(n, k),
                    expected,
                    actual,
                    false,
                )]
            }));
        }
    }
    tasks
}

fn dyck_tasks(max_n: u64, max_k: u64) -> Vec<Task> {
    let mut tasks = Vec::new();
    for n in 0..=max_n {
        for k in 1..=max_k {
            tasks.push(task(move || dyck_cases(n, k)));
        }
    }
    tasks.push(task(move || {
        (1..=max_n.min(5))
            .map(|n| {
                let mut comp = vec![0u64; n as usize + 1];
                comp[1..].fill(1);
                let filter = LabelFilter::Composition(comp.iter().map(|&x| x as usize).collect());
                let actual = agreed(&[
                    ("enum", show(count_ld(n as usize, n as u32, &filter))),
                    ("closed", show(closed::ld_count_closed(n, n, &comp))),
                ]);
                let expected = pow(&BigInt::from(n + 1), n - 1).to_string();
                let params = CaseParams::default().with("n", n).with("comp", join(&comp));
                CaseRecord::compare("PARKING", params, expected, actual, false)
            })
            .collect()
    }));
    tasks
}

fn dyck_cases(n: u64, k: u64) -> Vec<CaseRecord> {
    let (nu, k32) = (n as usize, k as u32);
    let mut out = Vec::new();
    for d in 0..=n {
        let params = nk(n, k).with("d", d);
        out.push(CaseRecord::compare(
            "LD-ZEROS",
            params,
            show(closed::ld_count_by_zeros(n, k, d)),
            show(count_ld(nu, k32, &LabelFilter::Zeros(d as usize))),
            false,
        ));
    }
    for comp in weak_compositions(n, k as usize + 1) {
        let filter = LabelFilter::Composition(comp.iter().map(|&x| x as usize).collect());
        out.push(CaseRecord::compare(
            "LD-COMP",
            nk(n, k).with("comp", join(&comp)),
            show(closed::ld_count_closed(n, k, &comp)),
            show(count_ld(nu, k32, &filter)),
            false,
        ));
    }
    let ld_sum: Result<BigUint> = (0..=n)
        .map(|d| {
            let c = count_ld(nu, k32, &LabelFilter::Zeros(d as usize))?;
            Ok(multiset(k, n + d) * c)
        })
        .sum();
    out.push(CaseRecord::compare(
        "DLD",
        nk(n, k),
        show(closed::dld_count_closed(n + 1, k)),
        agreed(&[
            ("enum", show(count_dld(nu, k32))),
            ("sum", show(closed::dld_count_via_sum(n, k))),
            ("ld-sum", show(ld_sum)),
        ]),
        false,
    ));
    for i in 0..=n {
        for comp in weak_compositions(n - i, k as usize + 1) {
            let c: Vec<usize> = comp.iter().map(|&x| x as usize).collect();
            out.push(CaseRecord::compare(
                "PREFIX",
                nk(n, k).with("i", i).with("comp", join(&comp)),
                show(closed::prefix_count_closed(n, i, k, &comp)),
                show(count_prefixes(nu, i as usize, k32, &c)),
                false,
            ));
        }
    }
    out
}

fn cyclic_tasks(max_n: u64, max_k: u64) -> Vec<Task> {
    let mut tasks = Vec::new();
    for n in 0..=max_n {
        for k in 1..=max_k {
            tasks.push(task(move || cyclic_cases(n as usize, k as u32)));
            for i in 0..=n {
                tasks.push(task(move || {
                    prefix_route_cases(n as usize, i as usize, k as u32)
                }));
            }
        }
    }
    tasks.push(task(move || {
        let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_WORD_SEED);
        let top = max_n.max(1) as usize + 2;
        let top_k = max_k.max(1) as u32;
        let agree = (0..RANDOM_WORDS)
            .filter(|_| {
                let n = rng.gen_range(1..=top);
                let k = rng.gen_range(1..=top_k);
                let w = random_extended_word(&mut rng, n, k);
                ind_with(&w, DeletionOrder::LeftmostFirst)
                    == ind_with(&w, DeletionOrder::RightmostFirst)
            })
            .count();
        let params = CaseParams::default()
            .with("words", RANDOM_WORDS)
            .with("seed", RANDOM_WORD_SEED);
        vec![CaseRecord::compare(
            "IND-ORDER-RANDOM",
            params,
            RANDOM_WORDS.to_string(),
            agree.to_string(),
            false,
        )]
    }));
    tasks
}

fn cyclic_cases(n: usize, k: u32) -> Vec<CaseRecord> {
    let words = enumerate_ew(n, k);
    let total = words.len().to_string();
    let modulus = n + 1;
    let shift_ok = words
        .iter()
        .filter(|w| ind(&shift(w)) % modulus == (ind(w) + 1) % modulus)
        .count();
    let order_ok = words
        .iter()
        .filter(|w| {
            ind_with(w, DeletionOrder::LeftmostFirst) == ind_with(w, DeletionOrder::RightmostFirst)
        })
        .count();

    let mut fibers: HashMap<String, usize> = HashMap::new();
    let mut contract_ok = true;
    for w in &words {
        match project(w) {
            Ok((image, j)) => {
                let expected_j = (modulus - ind(w) % modulus) % modulus;
                contract_ok &= j == expected_j && image.label_counts() == w.label_counts();
                *fibers.entry(image.to_string()).or_default() += 1;
            }
            Err(_) => contract_ok = false,
        }
    }
    let full_fibers = fibers.values().filter(|&&c| c == modulus).count();
    let project_actual = if contract_ok {
        full_fibers.to_string()
    } else {
        "projection contract violated".to_string()
    };

    let mut by_counts: HashMap<Vec<usize>, u64> = HashMap::new();
    for w in &words {
        *by_counts.entry(w.label_counts()).or_default() += 1;
    }
    let params = || nk(n as u64, k as u64);
    let mut out = vec![
        CaseRecord::compare(
            "IND-SHIFT",
            params(),
            total.clone(),
            shift_ok.to_string(),
            false,
        ),
        CaseRecord::compare("IND-ORDER", params(), total, order_ok.to_string(), false),
        CaseRecord::compare(
            "PROJECT-FIBERS",
            params(),
            show(count_ld(n, k, &LabelFilter::None)),
            project_actual,
            false,
        ),
    ];
    for comp in weak_compositions(n as u64, k as usize + 1) {
        let c: Vec<usize> = comp.iter().map(|&x| x as usize).collect();
        let expected: BigUint = comp.iter().map(|&a| multiset(n as u64 + 1, a)).product();
        let ew = by_counts.get(&c).copied().unwrap_or(0);
        let ld = count_ld(n, k, &LabelFilter::Composition(c)).map(|x| x * (n as u64 + 1));
        out.push(CaseRecord::compare(
            "EW-COUNT",
            params().with("comp", join(&comp)),
            expected.to_string(),
            agreed(&[("ew", ew.to_string()), ("ld", show(ld))]),
            false,
        ));
    }
    out
}

/// Maps every (prefix-extended word, index candidate) pair to a Dyck prefix
/// by inserting `i` zero-labeled down steps before the candidate, projecting,
/// and dropping the trailing zeros; each prefix must be hit `n + 1` times.
fn prefix_route_cases(n: usize, i: usize, k: u32) -> Vec<CaseRecord> {
    let words = match enumerate_prefix_ew(n, i, k) {
        Ok(w) => w,
        Err(e) => {
            let params = nk(n as u64, k as u64).with("i", i);
            return vec![CaseRecord::compare(
                "PREFIX-ROUTE",
                params,
                "-".into(),
                show::<u8>(Err(e)),
                false,
            )];
        }
    };
    let mut groups: HashMap<Vec<usize>, Vec<_>> = HashMap::new();
    for w in words {
        groups
            .entry(label_counts(w.steps(), k))
            .or_default()
            .push(w);
    }
    let mut out = Vec::new();
    for comp in weak_compositions((n - i) as u64, k as usize + 1) {
        let c: Vec<usize> = comp.iter().map(|&x| x as usize).collect();
        let mut problem = None;
        let mut tally: HashMap<String, usize> = HashMap::new();
        for w in groups.get(&c).map(|v| v.as_slice()).unwrap_or(&[]) {
            let candidates = index_candidates(w);
            if candidates.len() != i + 1 {
                problem = Some(format!("{w} has {} index candidates", candidates.len()));
                break;
            }
            for j in candidates {
                let image = insert_zeros_before_up(w, j).and_then(|full| project(&full));
                let Ok((word, _)) = image else {
                    problem = Some(format!("{w}: projection failed"));
                    break;
                };
                let steps = word.steps();
                let cut = steps.len() - i;
                if steps[cut..].iter().any(|&s| s != Step::Down(0)) {
                    problem = Some(format!("{w}: projected word lacks {i} trailing D0"));
                    break;
                }
                let prefix: String = steps[..cut].iter().map(|s| s.to_string()).collect();
                *tally.entry(prefix).or_default() += 1;
            }
        }
        let actual = match problem {
            Some(p) => p,
            None => tally.values().filter(|&&t| t == n + 1).count().to_string(),
        };
        out.push(CaseRecord::compare(
            "PREFIX-ROUTE",
            nk(n as u64, k as u64)
                .with("i", i)
                .with("comp", join(&comp)),
            show(count_prefixes(n, i, k, &c)),
            actual,
            false,
        ));
    }
    out
}

fn volume_tasks(max_n: u64) -> Vec<Task> {
    let mut ids: Vec<VolumeId> = VolumeId::ALL_PLAIN.to_vec();
    for m in 1..=3 {
        ids.push(VolumeId::Eq3 { m });
        ids.push(VolumeId::Eq3Candidate { m });
    }
    let mut tasks = Vec::new();
    for id in ids {
        for n in id.min_n()..=max_n {
            tasks.push(task(move || volume_cases(id, n)));
        }
    }
    for (id, shifted) in [
        (VolumeId::Eq7, VolumeId::P53),
        (VolumeId::Eq8, VolumeId::P55),
    ] {
        tasks.push(task(move || {
            let mut out = Vec::new();
            for n in id.min_n()..=max_n {
                for v in param_grid(id.variables()) {
                    out.push(CaseRecord::compare(
                        format!("{id}-SHIFT"),
                        volume_params(id, n, &v),
                        show(id.evaluate(n, &v)),
                        show(shifted.evaluate(n - 1, &v)),
                        false,
                    ));
                }
            }
            out
        }));
    }
    tasks
}

/// Every assignment of `{1, 2, 3}` to the named variables; the rest are 1.
fn param_grid(vars: &[char]) -> Vec<Params> {
    let mut grid = vec![Params::new(1, 1, 1, 1)];
    for &var in vars {
        grid = grid
            .into_iter()
            .flat_map(|p| {
                (1..=3).map(move |x| {
                    let mut q = p.clone();
                    let slot = match var {
                        'a' => &mut q.a,
                        'b' => &mut q.b,
                        'c' => &mut q.c,
                        _ => &mut q.d,
                    };
                    *slot = BigInt::from(x);
                    q
                })
            })
            .collect();
    }
    grid
}

fn volume_params(id: VolumeId, n: u64, v: &Params) -> CaseParams {
    let mut p = CaseParams::default().with("n", n);
    if let VolumeId::Eq3 { m } | VolumeId::Eq3Candidate { m } = id {
        p = p.with("m", m);
    }
    for &var in id.variables() {
        let value = match var {
            'a' => &v.a,
            'b' => &v.b,
            'c' => &v.c,
            _ => &v.d,
        };
        p.0.push((var_name(var), ParamValue::Text(value.to_string())));
    }
    p
}

fn var_name(var: char) -> &'static str {
    match var {
        'a' => "a",
        'b' => "b",
        'c' => "c",
        _ => "d",
    }
}

fn volume_cases(id: VolumeId, n: u64) -> Vec<CaseRecord> {
    let expansion = id.graph(n).and_then(|g| LidskiiExpansion::new(&g));
    param_grid(id.variables())
        .into_iter()
        .map(|v| {
            let oracle = match &expansion {
                Ok(x) => id.supplies(n, &v).map(|s| x.evaluate(&s)),
                Err(e) => Err(e.clone()),
            };
            CaseRecord::compare(
                id.name(),
                volume_params(id, n, &v),
                show(id.evaluate(n, &v)),
                show(oracle),
                id.is_suspect(),
            )
        })
        .collect()
}

fn coefficient_tasks(max_n: u64) -> Vec<Task> {
    let mut tasks: Vec<Task> = Vec::new();
    tasks.push(task(move || {
        let mut out = Vec::new();
        for n in 1..=max_n {
            for k in 1..=n {
                for m in k..=n {
                    out.push(CaseRecord::compare(
                        "B",
                        CaseParams::default().with("n", n).with("k", k).with("m", m),
                        show(closed::coeff_b(n, k, m)),
                        show(closed::coeff_b_sum(n, k, m)),
                        false,
                    ));
                }
            }
        }
        out
    }));
    tasks.push(task(|| {
        let mut out = Vec::new();
        for m in 2..=8u64 {
            for v in param_grid(&['a', 'b']) {
                let params = CaseParams::default()
                    .with("m", m)
                    .with("a", v.a.to_string())
                    .with("b", v.b.to_string());
                out.push(CaseRecord::compare(
                    "A2",
                    params,
                    show(closed::coeff_a2_closed(m, &v.a, &v.b)),
                    show(closed::coeff_a_km(2, m, &[v.a.clone(), v.b.clone()])),
                    false,
                ));
            }
        }
        for m in 3..=8u64 {
            for v in param_grid(&['a', 'b', 'c']) {
                let params = CaseParams::default()
                    .with("m", m)
                    .with("a", v.a.to_string())
                    .with("b", v.b.to_string())
                    .with("c", v.c.to_string());
                let sum = show(closed::coeff_a_km(
                    3,
                    m,
                    &[v.a.clone(), v.b.clone(), v.c.clone()],
                ));
                out.push(CaseRecord::compare(
                    "A3",
                    params.clone(),
                    show(closed::coeff_a3_closed(m, &v.a, &v.b, &v.c)),
                    sum.clone(),
                    false,
                ));
                out.push(CaseRecord::compare(
                    "A3-PRINTED",
                    params,
                    show(closed::coeff_a3_printed(m, &v.a, &v.b, &v.c)),
                    sum,
                    true,
                ));
            }
        }
        out
    }));
    for n in 2..=max_n {
        tasks.push(task(move || {
            let mut out = Vec::new();
            for p in 1..n {
                for q in 1..=n - p {
                    let r = n - p - q;
                    let params = CaseParams::default()
                        .with("n", n)
                        .with("p", p)
                        .with("q", q)
                        .with("r", r);
                    let kostant = show(closed::coeff_a_pqr_kostant(n, p, q, r));
                    let dyck = show(closed::coeff_a_pqr_dyck(n, p, q, r));
                    if r == 0 {
                        out.push(CaseRecord::compare(
                            "APQR-ROUTES",
                            params,
                            kostant,
                            dyck,
                            false,
                        ));
                    } else {
                        out.push(CaseRecord::compare(
                            "APQR",
                            params,
                            show(closed::coeff_a_pqr(n, p, q, r)),
                            agreed(&[("kostant", kostant), ("dyck", dyck)]),
                            false,
                        ));
                    }
                }
            }
            out
        }));
    }
    tasks
}

/// Connected forward multigraphs on `2..=max_vertices` vertices with at most
/// `max_multiplicity` parallel copies of each edge and at most `max_edges`
/// edges in total.
pub fn small_multigraphs(
    max_vertices: usize,
    max_multiplicity: usize,
    max_edges: usize,
) -> Vec<DirectedStepGraph> {
    let mut out = Vec::new();
    for v in 2..=max_vertices {
        let pairs: Vec<(usize, usize)> = (1..=v)
            .flat_map(|i| (i + 1..=v).map(move |j| (i, j)))
            .collect();
        let mut mult = vec![0usize; pairs.len()];
        loop {
            let total: usize = mult.iter().sum();
            if total > 0 && total <= max_edges {
                let edges: Vec<_> = pairs
                    .iter()
                    .zip(&mult)
                    .flat_map(|(&e, &m)| std::iter::repeat_n(e, m))
                    .collect();
                if let Ok(g) = DirectedStepGraph::new(v, edges) {
                    out.push(g);
                }
            }
            // odometer over multiplicities
            let mut idx = 0;
            while idx < mult.len() && mult[idx] == max_multiplicity {
                mult[idx] = 0;
                idx += 1;
            }
            if idx == mult.len() {
                break;
            }
            mult[idx] += 1;
        }
    }
    out
}

/// Zero-sum integer vectors of length `len` with entries in `lo..=hi`.
pub fn zero_sum_flows(len: usize, lo: i64, hi: i64) -> Vec<NetFlow> {
    let mut out = Vec::new();
    let mut cur = vec![lo; len];
    loop {
        if cur.iter().sum::<i64>() == 0 {
            out.push(NetFlow::from_i64s(&cur).expect("zero sum"));
        }
        let mut idx = 0;
        while idx < len && cur[idx] == hi {
            cur[idx] = lo;
            idx += 1;
        }
        if idx == len {
            break;
        }
        cur[idx] += 1;
    }
    out
}

fn engine_tasks(max_n: u64, max_k: u64) -> Vec<Task> {
    let mut tasks = Vec::new();
    for n in 2..=max_n {
        for k in 1..=max_k {
            tasks.push(task(move || {
                let (nu, k32) = (n as usize, k as u32);
                [
                    ("CT-DUAL-PS", ps_ct_expression(nu, k32)),
                    ("CT-DUAL-CAR", car_ct_expression(nu, k32)),
                ]
                .into_iter()
                .map(|(id, e)| match e {
                    Ok(e) => ct_dual_case(id, nk(n, k), &e),
                    Err(err) => {
                        CaseRecord::compare(id, nk(n, k), "-".into(), show::<u8>(Err(err)), false)
                    }
                })
                .collect()
            }));
        }
    }
    tasks.push(task(|| {
        let mut rng = ChaCha8Rng::seed_from_u64(RANDOM_EXPR_SEED);
        (0..RANDOM_EXPRESSIONS)
            .map(|idx| {
                let e = random_expression(&mut rng, 4);
                let params = CaseParams::default()
                    .with("case", idx)
                    .with("expr", e.to_string());
                ct_dual_case("CT-DUAL-RANDOM", params, &e)
            })
            .collect()
    }));
    for v in 2..=4usize {
        tasks.push(task(move || {
            let graphs: Vec<_> = small_multigraphs(v, 2, 8)
                .into_iter()
                .filter(|g| g.vertex_count() == v)
                .collect();
            let flows = zero_sum_flows(v, -3, 3);
            let mut pairs = 0usize;
            let mut agree = 0usize;
            for g in &graphs {
                for a in &flows {
                    pairs += 1;
                    let count = kpf(g, a);
                    let listed = list_flows(g, a, usize::MAX)
                        .map(|l| l.iter().all(|f| f.realizes(g, a)) as usize * l.len());
                    if let (Ok(c), Ok(l)) = (count, listed) {
                        agree += usize::from(c == BigUint::from(l));
                    }
                }
            }
            let params = CaseParams::default()
                .with("vertices", v)
                .with("graphs", graphs.len())
                .with("entries", "-3..3");
            vec![CaseRecord::compare(
                "KPF-LIST",
                params,
                pairs.to_string(),
                agree.to_string(),
                false,
            )]
        }));
        tasks.push(task(move || {
            let graphs: Vec<_> = small_multigraphs(v, 2, 8)
                .into_iter()
                .filter(|g| g.vertex_count() == v && g.edge_count() < v + 3)
                .collect();
            let flows = zero_sum_flows(v, -2, 2);
            let mut pairs = 0usize;
            let mut agree = 0usize;
            for g in &graphs {
                for a in &flows {
                    pairs += 1;
                    let count = kpf(g, a);
                    let series =
                        kostant_ct_expression(g, a).and_then(|e| evaluate_series_certified(&e, 6));
                    if let (Ok(c), Ok((s, _))) = (count, series) {
                        agree += usize::from(c == s);
                    }
                }
            }
            let params = CaseParams::default()
                .with("vertices", v)
                .with("graphs", graphs.len())
                .with("entries", "-2..2");
            vec![CaseRecord::compare(
                "KPF-SERIES",
                params,
                pairs.to_string(),
                agree.to_string(),
                false,
            )]
        }));
    }
    tasks.push(task(|| {
        let mut out = Vec::new();
        type Builder = fn(usize) -> Result<DirectedStepGraph>;
        let families: [(&str, Builder, usize); 2] = [("ps", build_ps, 2), ("car", build_car, 3)];
        for (family, build, min) in families {
            for n in min..=7 {
                let params = CaseParams::default().with("family", family).with("n", n);
                let g = build(n);
                let full = g
                    .as_ref()
                    .map_err(Clone::clone)
                    .and_then(|g| volume(g, &NetFlow::unit(g.vertex_count())));
                let single = g.as_ref().map_err(Clone::clone).and_then(volume_unit_flow);
                out.push(CaseRecord::compare(
                    "UNIT-FLOW",
                    params,
                    show(full),
                    show(single),
                    false,
                ));
            }
        }
        out
    }));
    tasks
}

fn ct_dual_case(id: &str, params: CaseParams, e: &CtExpression) -> CaseRecord {
    let exact = evaluate(e).to_string();
    match evaluate_series_certified(e, 6) {
        Ok((v, cap)) => {
            CaseRecord::compare(id, params.with("cap", cap), exact, v.to_string(), false)
        }
        Err(err) => CaseRecord::compare(id, params, exact, show::<u8>(Err(err)), false),
    }
}
