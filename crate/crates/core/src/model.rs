//! Graphs, net flows and the graph families.
//!
//! Vertices are always labeled `1..=vertex_count` and every edge points from
//! a smaller label to a larger one. Parallel edges are stored as repeated
//! entries of a sorted edge list.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DirectedStepGraph {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl DirectedStepGraph {
    /// Builds a connected graph. The edge list is sorted into canonical order.
    pub fn new(vertex_count: usize, edges: Vec<(usize, usize)>) -> Result<Self> {
        let g = Self::from_forward_edges(vertex_count, edges)?;
        if !g.is_connected() {
            return Err(Error::Disconnected);
        }
        Ok(g)
    }

    /// Like [`DirectedStepGraph::new`] but without the connectivity check.
    /// Restrictions of connected graphs need not be connected.
    pub fn from_forward_edges(vertex_count: usize, mut edges: Vec<(usize, usize)>) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::EmptyGraph);
        }
        for &(i, j) in &edges {
            if !(1 <= i && i < j && j <= vertex_count) {
                return Err(Error::InvalidEdge(i, j, vertex_count));
            }
        }
        edges.sort_unstable();
        Ok(Self {
            vertex_count,
            edges,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(i, _)| i == v).count()
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.edges.iter().filter(|&&(_, j)| j == v).count()
    }

    /// Out-degrees of vertices `1..=vertex_count`, in order.
    pub fn out_degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count];
        for &(i, _) in &self.edges {
            deg[i - 1] += 1;
        }
        deg
    }

    pub fn is_connected(&self) -> bool {
        let mut parent: Vec<usize> = (0..=self.vertex_count).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(i, j) in &self.edges {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            parent[a] = b;
        }
        let root = find(&mut parent, 1);
        (2..=self.vertex_count).all(|v| find(&mut parent, v) == root)
    }

    /// The induced subgraph on `1..=n`; may be disconnected.
    pub fn restrict(&self, n: usize) -> Result<Self> {
        let edges = self
            .edges
            .iter()
            .copied()
            .filter(|&(_, j)| j <= n)
            .collect();
        Self::from_forward_edges(n, edges)
    }
}

impl fmt::Display for DirectedStepGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:", self.vertex_count)?;
        for (idx, (i, j)) in self.edges.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{i}-{j}")?;
        }
        Ok(())
    }
}

/// The Pitman-Stanley graph on `n + 1` vertices.
pub fn build_ps(n: usize) -> Result<DirectedStepGraph> {
    if n < 2 {
        return Err(Error::FamilyTooSmall {
            family: "Pitman-Stanley",
            n,
            min: 2,
        });
    }
    let mut edges: Vec<_> = (1..=n).map(|i| (i, i + 1)).collect();
    edges.extend((1..n).map(|i| (i, n + 1)));
    DirectedStepGraph::new(n + 1, edges)
}

/// The caracol graph on `n + 1` vertices.
pub fn build_car(n: usize) -> Result<DirectedStepGraph> {
    if n < 3 {
        return Err(Error::FamilyTooSmall {
            family: "caracol",
            n,
            min: 3,
        });
    }
    let mut edges: Vec<_> = (1..=n).map(|i| (i, i + 1)).collect();
    edges.extend((3..=n).map(|i| (1, i)));
    edges.extend((2..n).map(|i| (i, n + 1)));
    DirectedStepGraph::new(n + 1, edges)
}

/// Prepends a source joined to every vertex by `k` parallel edges. The old
/// vertices are relabeled `v -> v + 1`.
pub fn augment(g: &DirectedStepGraph, k: usize) -> Result<DirectedStepGraph> {
    if k < 1 {
        return Err(Error::ZeroMultiplicity);
    }
    let n = g.vertex_count();
    let mut edges = Vec::with_capacity(g.edge_count() + k * n);
    for v in 1..=n {
        edges.extend(std::iter::repeat_n((1, v + 1), k));
    }
    edges.extend(g.edges().iter().map(|&(i, j)| (i + 1, j + 1)));
    DirectedStepGraph::new(n + 1, edges)
}

/// Per-vertex net supply, stored at full length so the zero-sum condition is
/// local.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct NetFlow {
    values: Vec<BigInt>,
}

impl NetFlow {
    pub fn new(values: Vec<BigInt>) -> Result<Self> {
        let total: BigInt = values.iter().sum();
        if !total.is_zero() {
            return Err(Error::FlowSum(total));
        }
        Ok(Self { values })
    }

    /// Takes the first `values.len()` entries and appends the negated sum.
    pub fn with_implied_sink(mut values: Vec<BigInt>) -> Self {
        let total: BigInt = values.iter().sum();
        values.push(-total);
        Self { values }
    }

    pub fn from_i64s(values: &[i64]) -> Result<Self> {
        Self::new(values.iter().map(|&v| BigInt::from(v)).collect())
    }

    /// `(1, 0, ..., 0, -1)` on `vertex_count` vertices.
    pub fn unit(vertex_count: usize) -> Self {
        let mut values = vec![BigInt::zero(); vertex_count];
        values[0] = BigInt::one();
        if vertex_count > 1 {
            values[vertex_count - 1] = -BigInt::one();
        } else {
            values[0] = BigInt::zero();
        }
        Self { values }
    }

    pub fn values(&self) -> &[BigInt] {
        &self.values
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn check_for(&self, g: &DirectedStepGraph) -> Result<()> {
        if self.values.len() != g.vertex_count() {
            return Err(Error::FlowLength {
                expected: g.vertex_count(),
                found: self.values.len(),
            });
        }
        Ok(())
    }
}

impl fmt::Display for NetFlow {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (idx, v) in self.values.iter().enumerate() {
            if idx > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

/// Nonnegative integer flow on each edge of the canonical edge list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FlowAssignment(pub Vec<u64>);

impl FlowAssignment {
    /// Checks the conservation law `out(v) - in(v) = a_v` at every vertex.
    pub fn realizes(&self, g: &DirectedStepGraph, a: &NetFlow) -> bool {
        if self.0.len() != g.edge_count() || a.len() != g.vertex_count() {
            return false;
        }
        let mut net = vec![BigInt::zero(); g.vertex_count()];
        for (&(i, j), &b) in g.edges().iter().zip(&self.0) {
            net[i - 1] += b;
            net[j - 1] -= b;
        }
        net.as_slice() == a.values()
    }
}

/// Parses a graph description:
///
/// * `ps:<N>` / `car:<N>`: the family member on `N` vertices,
/// * `aug:<k>:<inner>`: the `k`-fold augmentation of `inner`,
/// * `<N>:<i>-<j>,...`: explicit edges (repeats allowed).
pub fn parse_graph_spec(spec: &str) -> Result<DirectedStepGraph> {
    let spec = spec.trim();
    let (head, rest) = spec
        .split_once(':')
        .ok_or_else(|| Error::parse("graph", format!("missing ':' in {spec:?}")))?;
    match head {
        "ps" | "car" => {
            let vertices: usize = parse_num(rest, "graph")?;
            if vertices < 1 {
                return Err(Error::parse("graph", "vertex count must be positive"));
            }
            if head == "ps" {
                build_ps(vertices - 1)
            } else {
                build_car(vertices - 1)
            }
        }
        "aug" => {
            let (k, inner) = rest
                .split_once(':')
                .ok_or_else(|| Error::parse("graph", "expected aug:<k>:<graph>"))?;
            let k: usize = parse_num(k, "graph")?;
            augment(&parse_graph_spec(inner)?, k)
        }
        _ => {
            let vertices: usize = parse_num(head, "graph")?;
            let mut edges = Vec::new();
            for tok in rest.split(',').filter(|t| !t.trim().is_empty()) {
                let (i, j) = tok
                    .split_once('-')
                    .ok_or_else(|| Error::parse("graph", format!("bad edge {tok:?}")))?;
                edges.push((parse_num(i, "graph")?, parse_num(j, "graph")?));
            }
            DirectedStepGraph::new(vertices, edges)
        }
    }
}

/// Parses comma-separated integers. `vertex_count` entries are taken
/// literally; `vertex_count - 1` entries get the sink entry appended.
pub fn parse_flow(text: &str, vertex_count: usize) -> Result<NetFlow> {
    let values = text
        .split(',')
        .map(|t| {
            t.trim()
                .parse::<BigInt>()
                .map_err(|e| Error::parse("flow", format!("{t:?}: {e}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if values.len() == vertex_count {
        NetFlow::new(values)
    } else if values.len() + 1 == vertex_count {
        Ok(NetFlow::with_implied_sink(values))
    } else {
        Err(Error::FlowLength {
            expected: vertex_count,
            found: values.len(),
        })
    }
}

fn parse_num<T: std::str::FromStr>(text: &str, what: &'static str) -> Result<T>
where
    T::Err: fmt::Display,
{
    text.trim()
        .parse()
        .map_err(|e| Error::parse(what, format!("{text:?}: {e}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ps_edges() {
        let g = build_ps(3).unwrap();
        assert_eq!(g.vertex_count(), 4);
        assert_eq!(g.edges(), &[(1, 2), (1, 4), (2, 3), (2, 4), (3, 4)]);
        assert_eq!(build_ps(2).unwrap().edges(), &[(1, 2), (1, 3), (2, 3)]);
        assert_eq!(build_ps(5).unwrap().edge_count(), 9);
        assert!(matches!(build_ps(1), Err(Error::FamilyTooSmall { .. })));
    }

    #[test]
    fn car_edges() {
        let g = build_car(4).unwrap();
        assert_eq!(
            g.edges(),
            &[
                (1, 2),
                (1, 3),
                (1, 4),
                (2, 3),
                (2, 5),
                (3, 4),
                (3, 5),
                (4, 5)
            ]
        );
        assert_eq!(
            build_car(3).unwrap().edges(),
            &[(1, 2), (1, 3), (2, 3), (2, 4), (3, 4)]
        );
        assert_eq!(build_car(6).unwrap().edge_count(), 14);
        assert!(build_car(2).is_err());
    }

    #[test]
    fn augmentation_edge_counts() {
        let ps4 = build_ps(3).unwrap();
        let h = augment(&ps4, 2).unwrap();
        assert_eq!(h.edge_count(), 13);
        assert_eq!(h.vertex_count(), 5);
        assert_eq!(h.out_degree(1), 8);
        assert!(h.edges().contains(&(2, 5)));

        assert_eq!(augment(&ps4, 1).unwrap().edge_count(), 5 + 4);
        assert_eq!(augment(&build_car(3).unwrap(), 3).unwrap().edge_count(), 17);
        assert_eq!(augment(&ps4, 0), Err(Error::ZeroMultiplicity));
    }

    #[test]
    fn family_out_degrees() {
        for n in 3..=8 {
            let mut car = vec![n - 1];
            car.extend(std::iter::repeat_n(2, n - 2));
            car.extend([1, 0]);
            assert_eq!(build_car(n).unwrap().out_degrees(), car);

            let mut ps = vec![2; n - 1];
            ps.extend([1, 0]);
            assert_eq!(build_ps(n).unwrap().out_degrees(), ps);
        }
    }

    #[test]
    fn validation() {
        assert_eq!(
            DirectedStepGraph::new(3, vec![(2, 1)]),
            Err(Error::InvalidEdge(2, 1, 3))
        );
        assert_eq!(
            DirectedStepGraph::new(3, vec![(1, 2)]),
            Err(Error::Disconnected)
        );
        let g = DirectedStepGraph::new(3, vec![(2, 3), (1, 2), (1, 2)]).unwrap();
        assert_eq!(g.edges(), &[(1, 2), (1, 2), (2, 3)]);
        assert_eq!(g.restrict(2).unwrap().edges(), &[(1, 2), (1, 2)]);
    }

    #[test]
    fn graph_spec_grammar() {
        assert_eq!(parse_graph_spec("ps:4").unwrap(), build_ps(3).unwrap());
        assert_eq!(parse_graph_spec("car:5").unwrap(), build_car(4).unwrap());
        assert_eq!(
            parse_graph_spec("aug:2:ps:4").unwrap(),
            augment(&build_ps(3).unwrap(), 2).unwrap()
        );
        let g = parse_graph_spec("3:1-2,1-3,2-3,1-2").unwrap();
        assert_eq!(g.edge_count(), 4);
        assert_eq!(g.to_string(), "3:1-2,1-2,1-3,2-3");
        assert_eq!(parse_graph_spec(&g.to_string()).unwrap(), g);
        assert_eq!(parse_graph_spec("3:1-2"), Err(Error::Disconnected));
        assert!(parse_graph_spec("tri:3").is_err());
        assert!(parse_graph_spec("3:1+2").is_err());
    }

    #[test]
    fn flow_grammar() {
        let f = parse_flow("1,1", 3).unwrap();
        assert_eq!(f, NetFlow::from_i64s(&[1, 1, -2]).unwrap());
        assert_eq!(parse_flow("1,-1,0", 3).unwrap().to_string(), "1,-1,0");
        assert!(matches!(parse_flow("1,1,1", 3), Err(Error::FlowSum(_))));
        assert!(matches!(parse_flow("1", 3), Err(Error::FlowLength { .. })));
        assert!(parse_flow("1,x", 3).is_err());
    }

    #[test]
    fn unit_flow_and_assignment_check() {
        let u = NetFlow::unit(4);
        assert_eq!(u.to_string(), "1,0,0,-1");
        let g = DirectedStepGraph::new(3, vec![(1, 2), (1, 3), (2, 3)]).unwrap();
        let a = NetFlow::from_i64s(&[1, 1, -2]).unwrap();
        assert!(FlowAssignment(vec![0, 1, 1]).realizes(&g, &a));
        assert!(!FlowAssignment(vec![1, 1, 1]).realizes(&g, &a));
    }
}

#[cfg(test)]
mod props {
    use super::*;
    use proptest::prelude::*;

    fn graph() -> impl Strategy<Value = DirectedStepGraph> {
        (2usize..=6)
            .prop_flat_map(|v| (Just(v), prop::collection::vec((1..v, 1..=v), 0..=6)))
            .prop_map(|(v, extra)| {
                let mut edges: Vec<_> = (1..v).map(|i| (i, i + 1)).collect();
                edges.extend(extra.into_iter().filter(|&(i, j)| i < j));
                DirectedStepGraph::new(v, edges).unwrap()
            })
    }

    proptest! {
        #[test]
        fn spec_round_trip(g in graph()) {
            prop_assert_eq!(parse_graph_spec(&g.to_string()).unwrap(), g);
        }

        #[test]
        fn augmentation_adds_k_edges_per_vertex(g in graph(), k in 1usize..=3) {
            let h = augment(&g, k).unwrap();
            prop_assert_eq!(h.vertex_count(), g.vertex_count() + 1);
            prop_assert_eq!(h.edge_count(), g.edge_count() + k * g.vertex_count());
            prop_assert!(h.edges().iter().all(|&(i, j)| i < j));
        }

        #[test]
        fn garbage_specs_never_panic(text in "[a-z0-9:,\\- ]{0,12}") {
            let _ = parse_graph_spec(&text);
        }
    }
}
