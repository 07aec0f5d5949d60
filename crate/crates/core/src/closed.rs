//! Closed-form evaluators: Ehrhart-like values for both families, labeled
//! path counts, the coefficient lemmas behind the volume formulas, and the
//! volume identities themselves, keyed by stable identity ids.
//!
//! Quotients that are claimed to be integral go through
//! [`exact_quotient`], so a failed divisibility surfaces as an error instead
//! of a truncated value.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

use crate::arith::{binomial, exact_quotient, multinomial, multiset, pow, weak_compositions};
pub use crate::arith::{catalan, multiset as multiset_coeff};
use crate::dyck::enumerate_min_constrained;
use crate::error::{Error, Result};
use crate::kostant::kpf;
use crate::lidskii::{dominates, Composition};
use crate::model::{build_car, build_ps, DirectedStepGraph, NetFlow};

fn int(v: BigUint) -> BigInt {
    BigInt::from(v)
}

fn small(v: u64) -> BigInt {
    BigInt::from(v)
}

/// `E_{PS_{n+1}}(k) = C((k+1)n - 2, n) / (kn - 1)`.
pub fn ehrhart_ps_closed(n: u64, k: u64) -> Result<BigInt> {
    if n < 2 || k < 1 {
        return Err(Error::domain(format!(
            "need n >= 2 and k >= 1, got n={n}, k={k}"
        )));
    }
    exact_quotient(
        int(binomial((k + 1) * n - 2, n)),
        small(k * n - 1),
        "PS Ehrhart-like value",
    )
}

/// `E_{Car_{n+1}}(k) = C(kn + 2n - 5, n - 1) C(n + k - 3, k - 1) / (kn + n - 3)`.
pub fn ehrhart_car_closed(n: u64, k: u64) -> Result<BigInt> {
    if n < 3 || k < 1 {
        return Err(Error::domain(format!(
            "need n >= 3 and k >= 1, got n={n}, k={k}"
        )));
    }
    exact_quotient(
        int(binomial(k * n + 2 * n - 5, n - 1) * binomial(n + k - 3, k - 1)),
        small(k * n + n - 3),
        "caracol Ehrhart-like value",
    )
}

fn check_composition(composition: &[u64], k: u64, total: u64) -> Result<()> {
    if composition.len() as u64 != k + 1 {
        return Err(Error::domain(format!(
            "composition needs {} entries, got {}",
            k + 1,
            composition.len()
        )));
    }
    let sum: u64 = composition.iter().sum();
    if sum != total {
        return Err(Error::domain(format!(
            "composition sums to {sum}, expected {total}"
        )));
    }
    Ok(())
}

/// `|LD_n(k; a_0, ..., a_k)| = prod multiset(n + 1, a_i) / (n + 1)`.
pub fn ld_count_closed(n: u64, k: u64, composition: &[u64]) -> Result<BigInt> {
    check_composition(composition, k, n)?;
    let prod: BigUint = composition.iter().map(|&a| multiset(n + 1, a)).product();
    exact_quotient(int(prod), small(n + 1), "labeled Dyck count")
}

/// `|LD_n(k, d)| = multiset(n + 1, d) multiset(k(n + 1), n - d) / (n + 1)`.
pub fn ld_count_by_zeros(n: u64, k: u64, d: u64) -> Result<BigInt> {
    if d > n {
        return Err(Error::domain(format!("zero count {d} exceeds n={n}")));
    }
    exact_quotient(
        int(multiset(n + 1, d) * multiset(k * (n + 1), n - d)),
        small(n + 1),
        "labeled Dyck count by zeros",
    )
}

/// `|DLD_{n-1}(k)| = C(kn + k + 2n - 3, n) C(n + k - 2, k - 1) / (k(n + 1) + n - 2)`.
pub fn dld_count_closed(n: u64, k: u64) -> Result<BigInt> {
    if n < 1 || k < 1 {
        return Err(Error::domain(format!(
            "need n >= 1 and k >= 1, got n={n}, k={k}"
        )));
    }
    exact_quotient(
        int(binomial(k * n + k + 2 * n - 3, n) * binomial(n + k - 2, k - 1)),
        small(k * (n + 1) + n - 2),
        "doubly labeled Dyck count",
    )
}

/// `|DLD_n(k)| = sum_d |LD_n(k, d)| multiset(k, n + d)`.
pub fn dld_count_via_sum(n: u64, k: u64) -> Result<BigInt> {
    let mut total = BigInt::zero();
    for d in 0..=n {
        total += ld_count_by_zeros(n, k, d)? * int(multiset(k, n + d));
    }
    Ok(total)
}

/// `|Dyck_{n,i}(k; a)| = (i + 1) prod multiset(n + 1, a_j) / (n + 1)`.
pub fn prefix_count_closed(n: u64, i: u64, k: u64, composition: &[u64]) -> Result<BigInt> {
    if i > n {
        return Err(Error::domain(format!("height {i} exceeds n={n}")));
    }
    check_composition(composition, k, n - i)?;
    let prod: BigUint = composition.iter().map(|&a| multiset(n + 1, a)).product();
    exact_quotient(int(prod) * small(i + 1), small(n + 1), "Dyck prefix count")
}

fn check_bkm(n: u64, k: u64, m: u64) -> Result<()> {
    if !(k <= m && m <= n) {
        return Err(Error::domain(format!(
            "need k <= m <= n, got n={n}, k={k}, m={m}"
        )));
    }
    Ok(())
}

/// `B_{n,k,m} = (m - k + 1)(n - k + 1)^{n - m - 1}` for `m < n`, and 1 at `m = n`.
pub fn coeff_b(n: u64, k: u64, m: u64) -> Result<BigInt> {
    check_bkm(n, k, m)?;
    if m == n {
        return Ok(BigInt::one());
    }
    Ok(small(m - k + 1) * pow(&small(n - k + 1), n - m - 1))
}

/// The defining sum of `B_{n,k,m}`: multinomials `(n - m; s_{k+1}, ..., s_n)`
/// over `(m, s_{k+1}, ..., s_n)` dominating `(k, 1^{n-k})`.
pub fn coeff_b_sum(n: u64, k: u64, m: u64) -> Result<BigInt> {
    check_bkm(n, k, m)?;
    let parts = (n - k) as usize;
    let mut t = vec![k];
    t.extend(std::iter::repeat_n(1, parts));
    let t = Composition::new(t);
    let mut total = BigUint::zero();
    for s in weak_compositions(n - m, parts) {
        let mut full = vec![m];
        full.extend_from_slice(&s);
        if dominates(&Composition::new(full), &t)? {
            total += multinomial(n - m, &s);
        }
    }
    Ok(int(total))
}

/// The defining sum of `A_{k,m}(a_1, ..., a_k)`: multinomials `(m; s)`
/// weighted by `prod a_i^{s_i}` over `s` dominating `(1^k)`.
pub fn coeff_a_km(k: usize, m: u64, a: &[BigInt]) -> Result<BigInt> {
    if a.len() != k {
        return Err(Error::LengthMismatch(k, a.len()));
    }
    let t = Composition::new(vec![1; k]);
    let mut total = BigInt::zero();
    for s in weak_compositions(m, k) {
        let comp = Composition::new(s.clone());
        if k > 0 && !dominates(&comp, &t)? {
            continue;
        }
        let mut term = int(multinomial(m, &s));
        for (base, &e) in a.iter().zip(&s) {
            term *= pow(base, e);
        }
        total += term;
    }
    Ok(total)
}

/// `A_{2,m}(a, b) = (a + b)^m - b^m`, valid for `m >= 2`.
pub fn coeff_a2_closed(m: u64, a: &BigInt, b: &BigInt) -> Result<BigInt> {
    if m < 2 {
        return Err(Error::domain("the two-variable form needs m >= 2"));
    }
    Ok(pow(&(a + b), m) - pow(b, m))
}

/// `A_{3,m}(a, b, c) = (a + b + c)^m - (b + c)^m - m a c^{m-1}`, valid for
/// `m >= 3`. The subtracted last term collects `s = (1, 0, m - 1)`, which
/// carries multinomial `m`.
pub fn coeff_a3_closed(m: u64, a: &BigInt, b: &BigInt, c: &BigInt) -> Result<BigInt> {
    if m < 3 {
        return Err(Error::domain("the three-variable form needs m >= 3"));
    }
    Ok(pow(&(a + b + c), m) - pow(&(b + c), m) - small(m) * a * pow(c, m - 1))
}

/// The three-variable form as it is usually quoted, with last term
/// `a c^{m-1}`; it undercounts `s = (1, 0, m - 1)` and is kept for
/// discrepancy reporting.
pub fn coeff_a3_printed(m: u64, a: &BigInt, b: &BigInt, c: &BigInt) -> Result<BigInt> {
    if m < 1 {
        return Err(Error::domain("the three-variable form needs m >= 1"));
    }
    Ok(pow(&(a + b + c), m) - pow(&(b + c), m) - a * pow(c, m - 1))
}

fn check_pqr(n: u64, p: u64, q: u64, r: u64) -> Result<()> {
    if p + q + r != n || p < 1 || q < 1 || n < 2 {
        return Err(Error::domain(format!(
            "need p + q + r = n >= 2 with p, q >= 1, got n={n}, p={p}, q={q}, r={r}"
        )));
    }
    Ok(())
}

/// `A(p, q, r) = (p + q - 1) C(n + p - 2, n - 1) (n - 1)^{r - 1}
/// - C(n + p - 2, n) (n - 1)^r` for `r >= 1`.
pub fn coeff_a_pqr(n: u64, p: u64, q: u64, r: u64) -> Result<BigInt> {
    check_pqr(n, p, q, r)?;
    if r < 1 {
        return Err(Error::domain(
            "the closed form needs r >= 1; use a defining sum at r = 0",
        ));
    }
    let base = small(n - 1);
    Ok(
        small(p + q - 1) * int(binomial(n + p - 2, n - 1)) * pow(&base, r - 1)
            - int(binomial(n + p - 2, n)) * pow(&base, r),
    )
}

/// Visits `(s_3, ..., s_n)` summing to `r` with `(p, q, s_3, ..., s_n)`
/// dominating `(1^n)`.
fn pqr_terms(
    n: u64,
    p: u64,
    q: u64,
    r: u64,
    mut f: impl FnMut(&[u64]) -> Result<()>,
) -> Result<()> {
    let t = Composition::new(vec![1; n as usize]);
    for s in weak_compositions(r, (n - 2) as usize) {
        let mut full = vec![p, q];
        full.extend_from_slice(&s);
        if dominates(&Composition::new(full), &t)? {
            f(&s)?;
        }
    }
    Ok(())
}

/// `A(p, q, r)` by its defining sum, with Kostant partition functions of the
/// caracol graph on `n + 2` vertices restricted to its first `n + 1`.
pub fn coeff_a_pqr_kostant(n: u64, p: u64, q: u64, r: u64) -> Result<BigInt> {
    check_pqr(n, p, q, r)?;
    let g = build_car(n as usize + 1)?.restrict(n as usize + 1)?;
    let mut total = BigInt::zero();
    pqr_terms(n, p, q, r, |s| {
        let mut flow = vec![small(p) - 1, small(q) - 1];
        flow.extend(s.iter().map(|&x| small(x) - 1));
        let count = kpf(&g, &NetFlow::with_implied_sink(flow))?;
        total += int(multinomial(r, s) * count);
        Ok(())
    })?;
    Ok(total)
}

/// `A(p, q, r)` with the Kostant values replaced by counts of Dyck paths
/// with minimum run lengths `(q, s_3, ..., s_n)`.
pub fn coeff_a_pqr_dyck(n: u64, p: u64, q: u64, r: u64) -> Result<BigInt> {
    check_pqr(n, p, q, r)?;
    let mut total = BigInt::zero();
    pqr_terms(n, p, q, r, |s| {
        let mut mins = vec![q as usize];
        mins.extend(s.iter().map(|&x| x as usize));
        let count = enumerate_min_constrained(n as usize - 1, &mins)?;
        total += int(multinomial(r, s)) * small(count);
        Ok(())
    })?;
    Ok(total)
}

/// Graph family a volume identity lives on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Ps,
    Car,
}

/// Volume identities, by stable id.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VolumeId {
    /// `PS_{n+1}(a, b^{n-2}, d) = a(a + (n-1)b)^{n-2}`
    Eq1,
    /// `PS_{n+1}(a, b^{n-3}, c, d)`
    Eq2,
    /// `PS_{n+1}(a, b^{n-m-2}, c, 0^{m-1}, d)` with binomials `C(n, j)`
    Eq3 { m: u64 },
    /// the same family with binomials `C(n - 1, j)`
    Eq3Candidate { m: u64 },
    /// `PS_{n+1}(a, b, c^{n-2})`
    Eq7,
    /// `PS_{n+1}(a, b, c, d^{n-3})`
    Eq8,
    /// `PS_{n+2}(a, b, c^{n-1})`
    P53,
    /// `PS_{n+2}(a, b, c, d^{n-2})`
    P55,
    /// `Car_{n+1}(a^n)` with factor `a^n`
    Eq5,
    /// `Car_{n+1}(a^n)` with factor `a^{2n-4}`
    Eq5Corrected,
    /// `Car_{n+1}(a, b^{n-1})`
    Eq6,
    /// `Car_{n+1}(a, b, c^{n-2})` with factor `a^{n-1}`
    EqConj,
    /// `Car_{n+1}(a, b, c^{n-2})` with factor `a^{n-2}`
    EqConjCorrected,
    /// `Car_{n+2}(a, b, c^{n-1})`
    P58,
}

impl VolumeId {
    pub const ALL_PLAIN: [VolumeId; 12] = [
        VolumeId::Eq1,
        VolumeId::Eq2,
        VolumeId::Eq7,
        VolumeId::Eq8,
        VolumeId::P53,
        VolumeId::P55,
        VolumeId::Eq5,
        VolumeId::Eq5Corrected,
        VolumeId::Eq6,
        VolumeId::EqConj,
        VolumeId::EqConjCorrected,
        VolumeId::P58,
    ];

    pub fn name(self) -> &'static str {
        match self {
            VolumeId::Eq1 => "EQ1",
            VolumeId::Eq2 => "EQ2",
            VolumeId::Eq3 { .. } => "EQ3",
            VolumeId::Eq3Candidate { .. } => "EQ3-CANDIDATE",
            VolumeId::Eq7 => "EQ7",
            VolumeId::Eq8 => "EQ8",
            VolumeId::P53 => "P53",
            VolumeId::P55 => "P55",
            VolumeId::Eq5 => "EQ5",
            VolumeId::Eq5Corrected => "EQ5-CORRECTED",
            VolumeId::Eq6 => "EQ6",
            VolumeId::EqConj => "EQCONJ",
            VolumeId::EqConjCorrected => "EQCONJ-CORRECTED",
            VolumeId::P58 => "P58",
        }
    }

    /// Parses an id; `EQ3` and `EQ3-CANDIDATE` take `m` separately.
    pub fn parse(name: &str, m: Option<u64>) -> Result<Self> {
        let need_m = || m.ok_or_else(|| Error::parse("identity", format!("{name} needs m")));
        Ok(match name {
            "EQ1" => VolumeId::Eq1,
            "EQ2" => VolumeId::Eq2,
            "EQ3" => VolumeId::Eq3 { m: need_m()? },
            "EQ3-CANDIDATE" => VolumeId::Eq3Candidate { m: need_m()? },
            "EQ7" => VolumeId::Eq7,
            "EQ8" => VolumeId::Eq8,
            "P53" => VolumeId::P53,
            "P55" => VolumeId::P55,
            "EQ5" => VolumeId::Eq5,
            "EQ5-CORRECTED" => VolumeId::Eq5Corrected,
            "EQ6" => VolumeId::Eq6,
            "EQCONJ" => VolumeId::EqConj,
            "EQCONJ-CORRECTED" => VolumeId::EqConjCorrected,
            "P58" => VolumeId::P58,
            other => return Err(Error::parse("identity", format!("unknown id {other:?}"))),
        })
    }

    pub fn family(self) -> Family {
        match self {
            VolumeId::Eq5
            | VolumeId::Eq5Corrected
            | VolumeId::Eq6
            | VolumeId::EqConj
            | VolumeId::EqConjCorrected
            | VolumeId::P58 => Family::Car,
            _ => Family::Ps,
        }
    }

    /// Whether the identity is a printed form with a known problem, whose
    /// mismatches are reported rather than treated as failures.
    pub fn is_suspect(self) -> bool {
        matches!(
            self,
            VolumeId::Eq3 { .. } | VolumeId::Eq3Candidate { .. } | VolumeId::Eq5 | VolumeId::EqConj
        )
    }

    /// The scalar parameters the identity actually depends on.
    pub fn variables(self) -> &'static [char] {
        match self {
            VolumeId::Eq5 | VolumeId::Eq5Corrected => &['a'],
            VolumeId::Eq6 => &['a', 'b'],
            VolumeId::Eq1 => &['a', 'b', 'd'],
            VolumeId::Eq7
            | VolumeId::P53
            | VolumeId::EqConj
            | VolumeId::EqConjCorrected
            | VolumeId::P58 => &['a', 'b', 'c'],
            VolumeId::Eq2
            | VolumeId::Eq3 { .. }
            | VolumeId::Eq3Candidate { .. }
            | VolumeId::Eq8
            | VolumeId::P55 => &['a', 'b', 'c', 'd'],
        }
    }

    /// Smallest `n` for which the identity's flow shape makes sense.
    pub fn min_n(self) -> u64 {
        match self {
            VolumeId::Eq1 | VolumeId::Eq7 => 2,
            VolumeId::Eq2 | VolumeId::Eq8 => 3,
            VolumeId::Eq3 { m } | VolumeId::Eq3Candidate { m } => m + 2,
            VolumeId::P53 => 1,
            VolumeId::P55 | VolumeId::P58 => 2,
            VolumeId::Eq5
            | VolumeId::Eq5Corrected
            | VolumeId::Eq6
            | VolumeId::EqConj
            | VolumeId::EqConjCorrected => 3,
        }
    }

    /// Number of vertices of the graph the identity is stated on.
    pub fn vertex_count(self, n: u64) -> usize {
        match self {
            VolumeId::P53 | VolumeId::P55 | VolumeId::P58 => n as usize + 2,
            _ => n as usize + 1,
        }
    }

    pub fn graph(self, n: u64) -> Result<DirectedStepGraph> {
        self.check_n(n)?;
        let inner = self.vertex_count(n) - 1;
        match self.family() {
            Family::Ps => build_ps(inner),
            Family::Car => build_car(inner),
        }
    }

    fn check_n(self, n: u64) -> Result<()> {
        if n < self.min_n() {
            return Err(Error::domain(format!(
                "{} needs n >= {}, got {n}",
                self.name(),
                self.min_n()
            )));
        }
        if let VolumeId::Eq3 { m } | VolumeId::Eq3Candidate { m } = self {
            if m < 1 {
                return Err(Error::domain("EQ3 needs m >= 1"));
            }
        }
        Ok(())
    }

    /// Supplies at every non-sink vertex, in the identity's shape.
    pub fn supplies(self, n: u64, v: &Params) -> Result<Vec<BigInt>> {
        self.check_n(n)?;
        let rep = |x: &BigInt, times: u64| std::iter::repeat_n(x.clone(), times as usize);
        let Params { a, b, c, d } = v;
        let mut out: Vec<BigInt> = Vec::new();
        match self {
            VolumeId::Eq1 => {
                out.push(a.clone());
                out.extend(rep(b, n - 2));
                out.push(d.clone());
            }
            VolumeId::Eq2 => {
                out.push(a.clone());
                out.extend(rep(b, n - 3));
                out.push(c.clone());
                out.push(d.clone());
            }
            VolumeId::Eq3 { m } | VolumeId::Eq3Candidate { m } => {
                out.push(a.clone());
                out.extend(rep(b, n - m - 2));
                out.push(c.clone());
                out.extend(rep(&BigInt::zero(), m - 1));
                out.push(d.clone());
            }
            VolumeId::Eq7 | VolumeId::EqConj | VolumeId::EqConjCorrected => {
                out.extend([a.clone(), b.clone()]);
                out.extend(rep(c, n - 2));
            }
            VolumeId::Eq8 => {
                out.extend([a.clone(), b.clone(), c.clone()]);
                out.extend(rep(d, n - 3));
            }
            VolumeId::P53 | VolumeId::P58 => {
                out.extend([a.clone(), b.clone()]);
                out.extend(rep(c, n - 1));
            }
            VolumeId::P55 => {
                out.extend([a.clone(), b.clone(), c.clone()]);
                out.extend(rep(d, n - 2));
            }
            VolumeId::Eq5 | VolumeId::Eq5Corrected => out.extend(rep(a, n)),
            VolumeId::Eq6 => {
                out.push(a.clone());
                out.extend(rep(b, n - 1));
            }
        }
        debug_assert_eq!(out.len() + 1, self.vertex_count(n));
        Ok(out)
    }

    pub fn net_flow(self, n: u64, v: &Params) -> Result<NetFlow> {
        Ok(NetFlow::with_implied_sink(self.supplies(n, v)?))
    }

    /// The identity's right-hand side, evaluated verbatim.
    pub fn evaluate(self, n: u64, v: &Params) -> Result<BigInt> {
        self.check_n(n)?;
        let Params { a, b, c, d } = v;
        let nn = |x: u64| small(x);
        let p = |x: &BigInt, e: u64| pow(x, e);
        let cat = |j: u64| int(catalan(j));
        Ok(match self {
            VolumeId::Eq1 => a * p(&(a + nn(n - 1) * b), n - 2),
            VolumeId::Eq2 => {
                a * p(&(a + nn(n - 1) * b), n - 2)
                    + nn(n - 1) * a * (c - b) * p(&(a + nn(n - 2) * b), n - 3)
            }
            VolumeId::Eq3 { m } | VolumeId::Eq3Candidate { m } => {
                let top = if matches!(self, VolumeId::Eq3 { .. }) {
                    n
                } else {
                    n - 1
                };
                let mut sum = BigInt::zero();
                for j in 0..=m {
                    sum += int(binomial(top, j))
                        * p(&(c - nn(m + 1 - j) * b), j)
                        * p(&(a + nn(n - 1 - j) * b), n - j - 2);
                }
                a * sum
            }
            VolumeId::Eq7 => {
                (a + b - c) * p(&(a + b + nn(n - 2) * c), n - 2)
                    + (c - b) * p(&(b + nn(n - 2) * c), n - 2)
            }
            VolumeId::Eq8 => {
                (a + b + c - nn(2) * d) * p(&(a + b + c + nn(n - 3) * d), n - 2)
                    - (b + c - nn(2) * d) * p(&(b + c + nn(n - 3) * d), n - 2)
                    - nn(n - 1) * a * (c - d) * p(&(c + nn(n - 3) * d), n - 3)
            }
            VolumeId::P53 => {
                (a + b - c) * p(&(a + b + nn(n - 1) * c), n - 1)
                    - (b - c) * p(&(b + nn(n - 1) * c), n - 1)
            }
            VolumeId::P55 => {
                (a + b + c - nn(2) * d) * p(&(a + b + c + nn(n - 2) * d), n - 1)
                    - (b + c - nn(2) * d) * p(&(b + c + nn(n - 2) * d), n - 1)
                    - nn(n) * a * (c - d) * p(&(c + nn(n - 2) * d), n - 2)
            }
            VolumeId::Eq5 => cat(n - 2) * p(a, n) * p(&nn(n), n - 2),
            VolumeId::Eq5Corrected => cat(n - 2) * p(a, 2 * n - 4) * p(&nn(n), n - 2),
            VolumeId::Eq6 => cat(n - 2) * p(a, n - 2) * p(&(a + nn(n - 1) * b), n - 2),
            VolumeId::EqConj | VolumeId::EqConjCorrected => {
                let lead = if self == VolumeId::EqConj {
                    n - 1
                } else {
                    n - 2
                };
                cat(n - 2) * p(a, lead) * (a + b * nn(n - 1)) * p(&(a + b + c * nn(n - 2)), n - 3)
            }
            VolumeId::P58 => {
                cat(n - 1) * p(a, n - 1) * (a + nn(n) * b) * p(&(a + b + nn(n - 1) * c), n - 2)
            }
        })
    }
}

impl fmt::Display for VolumeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for VolumeId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        VolumeId::parse(s, None)
    }
}

/// Scalar parameters of a volume identity; unused ones are ignored.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Params {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub d: BigInt,
}

impl Params {
    pub fn new(a: i64, b: i64, c: i64, d: i64) -> Self {
        Self {
            a: a.into(),
            b: b.into(),
            c: c.into(),
            d: d.into(),
        }
    }
}

/// Evaluates a Pitman–Stanley volume identity.
pub fn ps_volume_closed(id: VolumeId, n: u64, a: i64, b: i64, c: i64, d: i64) -> Result<BigInt> {
    if id.family() != Family::Ps {
        return Err(Error::domain(format!(
            "{id} is not a Pitman-Stanley identity"
        )));
    }
    id.evaluate(n, &Params::new(a, b, c, d))
}

/// Evaluates a caracol volume identity.
pub fn car_volume_closed(id: VolumeId, n: u64, a: i64, b: i64, c: i64) -> Result<BigInt> {
    if id.family() != Family::Car {
        return Err(Error::domain(format!("{id} is not a caracol identity")));
    }
    id.evaluate(n, &Params::new(a, b, c, 0))
}
