//! Kostant partition function: the number of nonnegative integer flows on a
//! graph with prescribed net supplies.
//!
//! Vertices are visited in increasing order. When vertex `v` is reached all
//! of its in-flow is already fixed, so its out-flow `a_v + inflow_v` is known
//! and is split over the outgoing edges as a weak composition.

use std::collections::HashMap;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

use crate::arith::multiset;
use crate::error::{Error, Result};
use crate::model::{DirectedStepGraph, FlowAssignment, NetFlow};

const MAX_ENTRY: i64 = 1 << 40;

fn supplies(g: &DirectedStepGraph, a: &NetFlow) -> Result<Vec<i64>> {
    a.check_for(g)?;
    let total: BigInt = a.values().iter().sum();
    if !total.is_zero() {
        return Err(Error::FlowSum(total));
    }
    a.values()
        .iter()
        .map(|v| match v.to_i64() {
            Some(x) if x.abs() <= MAX_ENTRY => Ok(x),
            _ => Err(Error::FlowTooLarge(v.clone())),
        })
        .collect()
}

/// `K_G(a)`.
///
/// Parallel edges to the same head are counted together: splitting `x` units
/// over `mu` parallel edges can be done in `multiset(mu, x)` ways.
pub fn kpf(g: &DirectedStepGraph, a: &NetFlow) -> Result<BigUint> {
    let supply = supplies(g, a)?;
    let n = g.vertex_count();
    let mut heads: Vec<Vec<(usize, u64)>> = vec![Vec::new(); n];
    for &(i, j) in g.edges() {
        let list = &mut heads[i - 1];
        match list.last_mut() {
            Some((h, mu)) if *h == j - 1 => *mu += 1,
            _ => list.push((j - 1, 1)),
        }
    }
    let mut counter = Counter {
        supply,
        heads,
        memo: HashMap::new(),
    };
    let mut inflow = vec![0i64; n];
    Ok(counter.count(0, &mut inflow))
}

struct Counter {
    supply: Vec<i64>,
    heads: Vec<Vec<(usize, u64)>>,
    memo: HashMap<(usize, Vec<i64>), BigUint>,
}

impl Counter {
    fn count(&mut self, v: usize, inflow: &mut [i64]) -> BigUint {
        if v == self.supply.len() {
            return BigUint::one();
        }
        let out = self.supply[v] + inflow[v];
        if out < 0 {
            return BigUint::zero();
        }
        let key = (v, inflow[v..].to_vec());
        if let Some(hit) = self.memo.get(&key) {
            return hit.clone();
        }
        let heads = self.heads[v].clone();
        let result = if heads.is_empty() {
            if out == 0 {
                self.count(v + 1, inflow)
            } else {
                BigUint::zero()
            }
        } else {
            self.split(v, &heads, 0, out, inflow)
        };
        self.memo.insert(key, result.clone());
        result
    }

    fn split(
        &mut self,
        v: usize,
        heads: &[(usize, u64)],
        idx: usize,
        remaining: i64,
        inflow: &mut [i64],
    ) -> BigUint {
        let (head, mu) = heads[idx];
        if idx + 1 == heads.len() {
            let ways = multiset(mu, remaining as u64);
            inflow[head] += remaining;
            let rest = self.count(v + 1, inflow);
            inflow[head] -= remaining;
            return ways * rest;
        }
        let mut total = BigUint::zero();
        for x in 0..=remaining {
            inflow[head] += x;
            let rest = self.split(v, heads, idx + 1, remaining - x, inflow);
            inflow[head] -= x;
            if !rest.is_zero() {
                total += multiset(mu, x as u64) * rest;
            }
        }
        total
    }
}

/// Lists integer `a`-flows in lexicographic order of the canonical edge
/// list, stopping after `cap` of them.
pub fn list_flows(g: &DirectedStepGraph, a: &NetFlow, cap: usize) -> Result<Vec<FlowAssignment>> {
    let supply = supplies(g, a)?;
    let n = g.vertex_count();
    let mut ranges = vec![(0usize, 0usize); n];
    for (idx, &(i, _)) in g.edges().iter().enumerate() {
        let r = &mut ranges[i - 1];
        if r.0 == r.1 {
            *r = (idx, idx + 1);
        } else {
            r.1 = idx + 1;
        }
    }
    let mut lister = Lister {
        edges: g.edges(),
        supply,
        ranges,
        cap,
        assign: vec![0; g.edge_count()],
        out: Vec::new(),
    };
    let mut inflow = vec![0i64; n];
    lister.vertex(0, &mut inflow);
    Ok(lister.out)
}

struct Lister<'g> {
    edges: &'g [(usize, usize)],
    supply: Vec<i64>,
    ranges: Vec<(usize, usize)>,
    cap: usize,
    assign: Vec<u64>,
    out: Vec<FlowAssignment>,
}

impl Lister<'_> {
    fn vertex(&mut self, v: usize, inflow: &mut [i64]) {
        if self.out.len() >= self.cap {
            return;
        }
        if v == self.supply.len() {
            self.out.push(FlowAssignment(self.assign.clone()));
            return;
        }
        let d = self.supply[v] + inflow[v];
        if d < 0 {
            return;
        }
        let (lo, hi) = self.ranges[v];
        if lo == hi {
            if d == 0 {
                self.vertex(v + 1, inflow);
            }
            return;
        }
        self.edge(v, lo, hi, d, inflow);
    }

    fn edge(&mut self, v: usize, idx: usize, hi: usize, remaining: i64, inflow: &mut [i64]) {
        let head = self.edges[idx].1 - 1;
        let range = if idx + 1 == hi {
            remaining..=remaining
        } else {
            0..=remaining
        };
        for x in range {
            if self.out.len() >= self.cap {
                return;
            }
            self.assign[idx] = x as u64;
            inflow[head] += x;
            if idx + 1 == hi {
                self.vertex(v + 1, inflow);
            } else {
                self.edge(v, idx + 1, hi, remaining - x, inflow);
            }
            inflow[head] -= x;
        }
        self.assign[idx] = 0;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::build_ps;

    fn graph(n: usize, edges: &[(usize, usize)]) -> DirectedStepGraph {
        DirectedStepGraph::new(n, edges.to_vec()).unwrap()
    }

    fn flow(v: &[i64]) -> NetFlow {
        NetFlow::from_i64s(v).unwrap()
    }

    #[test]
    fn path_has_one_flow() {
        let g = graph(3, &[(1, 2), (2, 3)]);
        let a = flow(&[1, -1, 0]);
        assert_eq!(kpf(&g, &a).unwrap(), BigUint::one());
        assert_eq!(
            list_flows(&g, &a, 10).unwrap(),
            vec![FlowAssignment(vec![1, 0])]
        );
    }

    #[test]
    fn triangle_has_two_flows() {
        let g = graph(3, &[(1, 2), (1, 3), (2, 3)]);
        let a = flow(&[1, 1, -2]);
        assert_eq!(kpf(&g, &a).unwrap(), BigUint::from(2u32));
        assert_eq!(
            list_flows(&g, &a, 10).unwrap(),
            vec![FlowAssignment(vec![0, 1, 1]), FlowAssignment(vec![1, 0, 2])]
        );
    }

    #[test]
    fn zero_flow_is_unique() {
        let g = build_ps(4).unwrap();
        let a = flow(&[0; 5]);
        assert_eq!(kpf(&g, &a).unwrap(), BigUint::one());
        assert_eq!(
            list_flows(&g, &a, 10).unwrap(),
            vec![FlowAssignment(vec![0; 7])]
        );
    }

    #[test]
    fn negative_source_has_no_flow() {
        let g = build_ps(3).unwrap();
        assert!(kpf(&g, &flow(&[-1, 2, 0, -1])).unwrap().is_zero());
    }

    #[test]
    fn parallel_edges_and_cap() {
        let g = graph(2, &[(1, 2), (1, 2), (1, 2)]);
        let a = flow(&[2, -2]);
        // multisets of size 2 over 3 edges
        assert_eq!(kpf(&g, &a).unwrap(), BigUint::from(6u32));
        let all = list_flows(&g, &a, 100).unwrap();
        assert_eq!(all.len(), 6);
        assert_eq!(all[0], FlowAssignment(vec![0, 0, 2]));
        assert_eq!(list_flows(&g, &a, 4).unwrap().len(), 4);
    }

    #[test]
    fn disconnected_restriction_is_accepted() {
        let g = DirectedStepGraph::from_forward_edges(4, vec![(1, 2), (3, 4)]).unwrap();
        assert_eq!(kpf(&g, &flow(&[1, -1, 2, -2])).unwrap(), BigUint::one());
        assert!(kpf(&g, &flow(&[1, 0, 0, -1])).unwrap().is_zero());
    }

    #[test]
    fn rejects_bad_flows() {
        let g = graph(3, &[(1, 2), (2, 3)]);
        assert!(matches!(
            kpf(&g, &flow(&[1, -1])),
            Err(Error::FlowLength { .. })
        ));
        let huge = NetFlow::new(vec![
            BigInt::from(1u64 << 50),
            BigInt::zero(),
            -BigInt::from(1u64 << 50),
        ])
        .unwrap();
        assert!(matches!(kpf(&g, &huge), Err(Error::FlowTooLarge(_))));
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    /// A forward multigraph on `v` vertices with a path backbone, so it is
    /// always connected, plus extra random edges.
    fn graph() -> impl Strategy<Value = DirectedStepGraph> {
        (2usize..=4)
            .prop_flat_map(|v| (Just(v), prop::collection::vec((1..v, 1..=v), 0..=4)))
            .prop_map(|(v, extra)| {
                let mut edges: Vec<_> = (1..v).map(|i| (i, i + 1)).collect();
                edges.extend(extra.into_iter().filter(|&(i, j)| i < j));
                DirectedStepGraph::new(v, edges).unwrap()
            })
    }

    fn graph_and_flow() -> impl Strategy<Value = (DirectedStepGraph, NetFlow)> {
        graph().prop_flat_map(|g| {
            let v = g.vertex_count();
            (Just(g), prop::collection::vec(-3i64..=3, v - 1)).prop_map(|(g, head)| {
                let values = head.into_iter().map(BigInt::from).collect();
                (g, NetFlow::with_implied_sink(values))
            })
        })
    }

    proptest! {
        #[test]
        fn count_matches_listing((g, a) in graph_and_flow()) {
            let listed = list_flows(&g, &a, usize::MAX).unwrap();
            prop_assert!(listed.iter().all(|f| f.realizes(&g, &a)));
            prop_assert_eq!(kpf(&g, &a).unwrap(), BigUint::from(listed.len()));
        }

        #[test]
        fn negative_first_supply_has_no_flows((g, a) in graph_and_flow()) {
            prop_assume!(a.values()[0] < BigInt::from(0));
            prop_assert_eq!(kpf(&g, &a).unwrap(), BigUint::from(0u8));
        }
    }
}
