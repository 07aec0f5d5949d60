//! Normalized flow-polytope volumes through the Lidskii formula
//!
//! ```text
//! vol F_G(a) = sum_{|s| = m - n, s >= t} multinomial(m - n; s) a^s K_{G|n}(s - t)
//! ```
//!
//! with `t_i = outdeg(i) - 1` and `>=` the dominance order.

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::Zero;

use crate::arith::{multinomial, pow};
use crate::error::{Error, Result};
use crate::kostant::kpf;
use crate::model::{augment, DirectedStepGraph, NetFlow};

#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Composition {
    parts: Vec<u64>,
}

impl Composition {
    pub fn new(parts: Vec<u64>) -> Self {
        Self { parts }
    }

    pub fn parts(&self) -> &[u64] {
        &self.parts
    }

    pub fn total(&self) -> u64 {
        self.parts.iter().sum()
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }
}

impl From<Vec<u64>> for Composition {
    fn from(parts: Vec<u64>) -> Self {
        Self::new(parts)
    }
}

/// Whether every prefix sum of `s` is at least the matching prefix sum of `t`.
pub fn dominates(s: &Composition, t: &Composition) -> Result<bool> {
    if s.len() != t.len() {
        return Err(Error::LengthMismatch(s.len(), t.len()));
    }
    let (mut ps, mut pt) = (0u64, 0u64);
    for (x, y) in s.parts.iter().zip(&t.parts) {
        ps += x;
        pt += y;
        if ps < pt {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Compositions of `total` into `length` parts dominating `t`, in
/// lexicographically decreasing order.
pub fn dominant_compositions(total: u64, length: usize, t: &Composition) -> Vec<Composition> {
    let mut out = Vec::new();
    if t.len() != length || t.total() > total {
        return out;
    }
    if length == 0 {
        out.push(Composition::new(Vec::new()));
        return out;
    }
    let mut bound = Vec::with_capacity(length);
    let mut acc = 0;
    for &x in &t.parts {
        acc += x;
        bound.push(acc);
    }
    let mut cur = vec![0; length];
    grow(total, &bound, 0, 0, &mut cur, &mut out);
    out
}

fn grow(
    total: u64,
    bound: &[u64],
    idx: usize,
    prefix: u64,
    cur: &mut Vec<u64>,
    out: &mut Vec<Composition>,
) {
    let need = bound[idx].saturating_sub(prefix);
    let room = total - prefix;
    if idx + 1 == cur.len() {
        if room >= need {
            cur[idx] = room;
            out.push(Composition::new(cur.clone()));
        }
        return;
    }
    for x in (need..=room).rev() {
        cur[idx] = x;
        grow(total, bound, idx + 1, prefix + x, cur, out);
    }
}

/// The Lidskii sum of a graph with the `a^s` factor left symbolic: a list of
/// exponent vectors with their integer coefficients. Evaluating it at many
/// net flows reuses the Kostant counts.
#[derive(Debug, Clone)]
pub struct LidskiiExpansion {
    n: usize,
    terms: Vec<(Composition, BigUint)>,
}

impl LidskiiExpansion {
    pub fn new(g: &DirectedStepGraph) -> Result<Self> {
        let n = g
            .vertex_count()
            .checked_sub(1)
            .filter(|&n| n > 0)
            .ok_or_else(|| Error::domain("the Lidskii formula needs at least two vertices"))?;
        let m = g.edge_count();
        let out = g.out_degrees();
        let mut t = Vec::with_capacity(n);
        for (v, &d) in out.iter().take(n).enumerate() {
            if d == 0 {
                return Err(Error::InteriorSink(v + 1));
            }
            t.push(d as u64 - 1);
        }
        // every edge leaves some vertex in 1..=n, so m - n = |t|
        let degree = (m - n) as u64;
        let t = Composition::new(t);
        let restricted = g.restrict(n)?;
        let mut terms = Vec::new();
        for s in dominant_compositions(degree, n, &t) {
            let diff: Vec<BigInt> = s
                .parts
                .iter()
                .zip(&t.parts)
                .map(|(&x, &y)| BigInt::from(x) - BigInt::from(y))
                .collect();
            let k = kpf(&restricted, &NetFlow::new(diff)?)?;
            if k.is_zero() {
                continue;
            }
            let coeff = multinomial(degree, &s.parts) * k;
            terms.push((s, coeff));
        }
        Ok(Self { n, terms })
    }

    /// Number of free supply coordinates (the vertex count minus one).
    pub fn arity(&self) -> usize {
        self.n
    }

    pub fn terms(&self) -> &[(Composition, BigUint)] {
        &self.terms
    }

    /// Evaluates at the first `n` supplies; further entries are ignored.
    pub fn evaluate(&self, a: &[BigInt]) -> BigInt {
        let mut total = BigInt::zero();
        for (s, coeff) in &self.terms {
            let mut term = BigInt::from(coeff.clone());
            for (&e, x) in s.parts.iter().zip(a) {
                if e > 0 {
                    term *= pow(x, e);
                }
            }
            total += term;
        }
        total
    }
}

/// Normalized volume of `F_G(a)`.
pub fn volume(g: &DirectedStepGraph, a: &NetFlow) -> Result<BigInt> {
    a.check_for(g)?;
    Ok(LidskiiExpansion::new(g)?.evaluate(a.values()))
}

/// `vol F_G(1, 0, ..., 0)` as the single Kostant value
/// `K_G(p, 1 - outdeg(2), ..., 1 - outdeg(n), 0)`.
pub fn volume_unit_flow(g: &DirectedStepGraph) -> Result<BigUint> {
    let vertices = g.vertex_count();
    if vertices < 2 {
        return Err(Error::domain("the unit flow needs at least two vertices"));
    }
    let n = vertices - 1;
    let out = g.out_degrees();
    let inner: i64 = out[1..n].iter().map(|&d| d as i64).sum();
    let mut values = Vec::with_capacity(vertices);
    values.push(BigInt::from(inner - n as i64 + 1));
    values.extend(out[1..n].iter().map(|&d| BigInt::from(1 - d as i64)));
    values.push(BigInt::zero());
    kpf(g, &NetFlow::new(values)?)
}

/// `E_G(k)`, the unit-flow volume of the `k`-fold augmentation.
pub fn ehrhart_like(g: &DirectedStepGraph, k: usize) -> Result<BigUint> {
    volume_unit_flow(&augment(g, k)?)
}

/// Interpolates `E_G(k)` through `k = 1..=k_max` and returns the power-basis
/// coefficients (constant term first). The fit must also reproduce
/// `E_G(k_max + 1)`.
pub fn ehrhart_fit(g: &DirectedStepGraph, k_max: usize) -> Result<Vec<BigRational>> {
    let n = g.vertex_count() - 1;
    if k_max < n + 2 {
        return Err(Error::domain(format!(
            "need k_max >= {} sample points, got {k_max}",
            n + 2
        )));
    }
    let samples: Vec<(BigRational, BigRational)> = (1..=k_max)
        .map(|k| {
            let e = ehrhart_like(g, k)?;
            Ok((
                rational(k as i64),
                BigRational::from_integer(BigInt::from(e)),
            ))
        })
        .collect::<Result<_>>()?;
    let coeffs = interpolate(&samples);
    let check = k_max + 1;
    let predicted = eval_poly(&coeffs, &rational(check as i64));
    let computed = BigRational::from_integer(BigInt::from(ehrhart_like(g, check)?));
    if predicted != computed {
        return Err(Error::Extrapolation {
            k_max,
            k: check,
            predicted: predicted.to_string(),
            computed: computed.to_string(),
        });
    }
    Ok(coeffs)
}

fn rational(x: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

/// Newton interpolation, expanded into the power basis with trailing zero
/// coefficients removed.
pub fn interpolate(points: &[(BigRational, BigRational)]) -> Vec<BigRational> {
    let m = points.len();
    let mut dd: Vec<BigRational> = points.iter().map(|(_, y)| y.clone()).collect();
    for level in 1..m {
        for i in (level..m).rev() {
            let num = &dd[i] - &dd[i - 1];
            let den = &points[i].0 - &points[i - level].0;
            dd[i] = num / den;
        }
    }
    let mut poly: Vec<BigRational> = Vec::new();
    for i in (0..m).rev() {
        // poly = poly * (x - x_i) + dd[i]
        let mut next = vec![BigRational::zero(); poly.len() + 1];
        for (deg, c) in poly.iter().enumerate() {
            next[deg + 1] += c;
            next[deg] -= c * &points[i].0;
        }
        next[0] += &dd[i];
        poly = next;
    }
    while poly.len() > 1 && poly.last().is_some_and(Zero::is_zero) {
        poly.pop();
    }
    poly
}

pub fn eval_poly(coeffs: &[BigRational], x: &BigRational) -> BigRational {
    coeffs
        .iter()
        .rev()
        .fold(BigRational::zero(), |acc, c| acc * x + c)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{build_car, build_ps};

    fn comp(p: &[u64]) -> Composition {
        Composition::new(p.to_vec())
    }

    fn big(v: &[i64]) -> NetFlow {
        NetFlow::with_implied_sink(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn dominance_examples() {
        assert!(dominates(&comp(&[2, 0, 1]), &comp(&[1, 1, 1])).unwrap());
        assert!(dominates(&comp(&[1, 1, 1]), &comp(&[1, 1, 1])).unwrap());
        assert!(!dominates(&comp(&[0, 3]), &comp(&[1, 2])).unwrap());
        assert_eq!(
            dominates(&comp(&[1]), &comp(&[1, 0])),
            Err(Error::LengthMismatch(1, 2))
        );
    }

    #[test]
    fn dominant_composition_examples() {
        assert_eq!(
            dominant_compositions(2, 3, &comp(&[1, 1, 0])),
            vec![comp(&[2, 0, 0]), comp(&[1, 1, 0])]
        );
        assert_eq!(
            dominant_compositions(0, 2, &comp(&[0, 0])),
            vec![comp(&[0, 0])]
        );
        assert!(dominant_compositions(1, 2, &comp(&[1, 1])).is_empty());
    }

    #[test]
    fn volume_examples() {
        let ps4 = build_ps(3).unwrap();
        assert_eq!(volume(&ps4, &big(&[2, 5, 0])).unwrap(), BigInt::from(24));
        let ps5 = build_ps(4).unwrap();
        assert_eq!(volume(&ps5, &big(&[1, 1, 1, 1])).unwrap(), BigInt::from(16));
        let car4 = build_car(3).unwrap();
        assert_eq!(volume(&car4, &big(&[1, 1, 5])).unwrap(), BigInt::from(3));
    }

    #[test]
    fn ps_volume_ignores_last_supply() {
        let g = build_ps(4).unwrap();
        let base = volume(&g, &big(&[2, 1, 3, 0])).unwrap();
        for last in 1..=2 {
            assert_eq!(volume(&g, &big(&[2, 1, 3, last])).unwrap(), base);
        }
    }

    #[test]
    fn unit_flow_examples() {
        for (g, want) in [
            (build_ps(3).unwrap(), 1u32),
            (build_ps(2).unwrap(), 1),
            (build_car(3).unwrap(), 1),
        ] {
            assert_eq!(volume_unit_flow(&g).unwrap(), BigUint::from(want));
            let unit = NetFlow::unit(g.vertex_count());
            assert_eq!(volume(&g, &unit).unwrap(), BigInt::from(want));
        }
    }

    #[test]
    fn ehrhart_examples() {
        assert_eq!(
            ehrhart_like(&build_ps(2).unwrap(), 1).unwrap(),
            BigUint::from(1u32)
        );
        assert_eq!(
            ehrhart_like(&build_ps(3).unwrap(), 2).unwrap(),
            BigUint::from(7u32)
        );
        assert_eq!(
            ehrhart_like(&build_car(3).unwrap(), 1).unwrap(),
            BigUint::from(2u32)
        );
        assert_eq!(
            ehrhart_like(&build_ps(3).unwrap(), 0),
            Err(Error::ZeroMultiplicity)
        );
    }

    #[test]
    fn ehrhart_fit_car4_is_k_3k_plus_1_over_2() {
        let coeffs = ehrhart_fit(&build_car(3).unwrap(), 6).unwrap();
        let half = BigRational::new(BigInt::from(1), BigInt::from(2));
        let want = vec![BigRational::zero(), half.clone(), half * BigInt::from(3)];
        assert_eq!(coeffs, want);
        let one = eval_poly(&coeffs, &rational(1));
        assert_eq!(one, rational(2));
    }

    #[test]
    fn ehrhart_fit_ps3_and_interpolation_identity() {
        let coeffs = ehrhart_fit(&build_ps(2).unwrap(), 5).unwrap();
        assert_eq!(eval_poly(&coeffs, &rational(1)), rational(1));
        let pts: Vec<_> = [(1, 4), (2, -3), (5, 10)]
            .iter()
            .map(|&(x, y)| (rational(x), rational(y)))
            .collect();
        let p = interpolate(&pts);
        for (x, y) in &pts {
            assert_eq!(&eval_poly(&p, x), y);
        }
        assert!(ehrhart_fit(&build_ps(3).unwrap(), 3).is_err());
    }

    #[test]
    fn interior_sink_is_rejected() {
        let g = DirectedStepGraph::new(3, vec![(1, 2), (1, 3)]).unwrap();
        assert_eq!(
            LidskiiExpansion::new(&g).unwrap_err(),
            Error::InteriorSink(2)
        );
    }
}
