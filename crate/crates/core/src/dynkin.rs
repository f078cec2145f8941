//! Simply-laced Dynkin diagrams, subdiagram calculus, roots and weights.
//!
//! Nodes are labelled `1..=n`. Type A is the path `1-2-...-n`; type D_n has
//! trivalent node `n-2` with spin nodes `n-1` and `n`; type E uses the
//! Bourbaki labelling (`1-3-4-5-6-7-8` with `2` attached to `4`).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;
use std::ops::{Add, AddAssign, Index, Neg, Sub, SubAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A node label, 1-based.
pub type Node = usize;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DiagramKind {
    A,
    D,
    E,
}

/// A simply-laced Dynkin diagram of finite type.
///
/// Construction precomputes adjacency and the positive roots, so a
/// `Diagram` is cheap to query and immutable afterwards.
#[derive(Clone, Debug)]
pub struct Diagram {
    kind: DiagramKind,
    rank: usize,
    adjacency: Vec<Vec<Node>>,
    roots: Vec<RootVector>,
}

impl PartialEq for Diagram {
    fn eq(&self, other: &Self) -> bool {
        self.kind == other.kind && self.rank == other.rank
    }
}

impl Eq for Diagram {}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}{}", self.kind, self.rank)
    }
}

impl FromStr for Diagram {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::UnknownDiagram(s.to_string());
        let mut chars = t.chars();
        let kind = match chars.next().map(|c| c.to_ascii_uppercase()) {
            Some('A') => DiagramKind::A,
            Some('D') => DiagramKind::D,
            Some('E') => DiagramKind::E,
            _ => return Err(bad()),
        };
        let rank: usize = chars.as_str().parse().map_err(|_| bad())?;
        Diagram::new(kind, rank)
    }
}

impl Serialize for Diagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Diagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

impl Diagram {
    pub fn new(kind: DiagramKind, rank: usize) -> Result<Self> {
        let ok = match kind {
            DiagramKind::A => (1..=Subdiagram::MAX_NODES).contains(&rank),
            DiagramKind::D => (4..=Subdiagram::MAX_NODES).contains(&rank),
            DiagramKind::E => (6..=8).contains(&rank),
        };
        if !ok {
            return Err(Error::UnknownDiagram(format!("{kind:?}{rank}")));
        }
        let mut edges: Vec<(Node, Node)> = Vec::new();
        match kind {
            DiagramKind::A => edges.extend((1..rank).map(|i| (i, i + 1))),
            DiagramKind::D => {
                edges.extend((1..rank - 2).map(|i| (i, i + 1)));
                edges.push((rank - 2, rank - 1));
                edges.push((rank - 2, rank));
            }
            DiagramKind::E => {
                edges.push((1, 3));
                edges.push((2, 4));
                edges.extend((3..rank).map(|i| (i, i + 1)));
            }
        }
        let mut adjacency = vec![Vec::new(); rank];
        for (a, b) in edges {
            adjacency[a - 1].push(b);
            adjacency[b - 1].push(a);
        }
        for nbrs in &mut adjacency {
            nbrs.sort_unstable();
        }
        let mut d = Diagram { kind, rank, adjacency, roots: Vec::new() };
        d.roots = d.compute_positive_roots();
        Ok(d)
    }

    pub fn a(rank: usize) -> Result<Self> {
        Self::new(DiagramKind::A, rank)
    }

    pub fn d(rank: usize) -> Result<Self> {
        Self::new(DiagramKind::D, rank)
    }

    pub fn e(rank: usize) -> Result<Self> {
        Self::new(DiagramKind::E, rank)
    }

    pub fn kind(&self) -> DiagramKind {
        self.kind
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn nodes(&self) -> impl Iterator<Item = Node> {
        1..=self.rank
    }

    pub fn all(&self) -> Subdiagram {
        Subdiagram::from_nodes(self.nodes())
    }

    pub fn check_node(&self, i: Node) -> Result<()> {
        if i == 0 || i > self.rank {
            Err(Error::NodeOutOfRange { node: i, diagram: self.to_string() })
        } else {
            Ok(())
        }
    }

    pub fn neighbors(&self, i: Node) -> &[Node] {
        &self.adjacency[i - 1]
    }

    pub fn adjacent(&self, i: Node, j: Node) -> bool {
        self.neighbors(i).contains(&j)
    }

    pub fn degree(&self, i: Node) -> usize {
        self.neighbors(i).len()
    }

    /// Cartan matrix entry `c_{ij}`.
    pub fn cartan(&self, i: Node, j: Node) -> i64 {
        if i == j {
            2
        } else if self.adjacent(i, j) {
            -1
        } else {
            0
        }
    }

    pub fn cartan_matrix(&self) -> Vec<Vec<i64>> {
        self.nodes().map(|i| self.nodes().map(|j| self.cartan(i, j)).collect()).collect()
    }

    /// The unique degree-3 node, if any.
    pub fn trivalent(&self) -> Option<Node> {
        self.nodes().find(|&i| self.degree(i) == 3)
    }

    pub fn require_trivalent(&self) -> Result<Node> {
        self.trivalent().ok_or_else(|| Error::NeedsTrivalentNode(self.to_string()))
    }

    /// Nodes of degree at most one.
    pub fn boundary_nodes(&self) -> Vec<Node> {
        self.nodes().filter(|&i| self.degree(i) <= 1).collect()
    }

    /// Spin nodes of D_n, i.e. `n-1` and `n`. Empty for other types.
    pub fn spin_nodes(&self) -> Vec<Node> {
        match self.kind {
            DiagramKind::D => vec![self.rank - 1, self.rank],
            _ => Vec::new(),
        }
    }

    /// Sequence of nodes along the unique path from `i` to `j`, both included.
    pub fn path(&self, i: Node, j: Node) -> Vec<Node> {
        let mut parent = vec![0usize; self.rank + 1];
        let mut seen = vec![false; self.rank + 1];
        let mut queue = VecDeque::from([j]);
        seen[j] = true;
        while let Some(u) = queue.pop_front() {
            if u == i {
                break;
            }
            for &v in self.neighbors(u) {
                if !seen[v] {
                    seen[v] = true;
                    parent[v] = u;
                    queue.push_back(v);
                }
            }
        }
        let mut out = vec![i];
        let mut cur = i;
        while cur != j {
            cur = parent[cur];
            out.push(cur);
        }
        out
    }

    /// `[i, j]`: the smallest connected subdiagram containing both nodes.
    pub fn interval(&self, i: Node, j: Node) -> Subdiagram {
        Subdiagram::from_nodes(self.path(i, j))
    }

    /// Number of edges between `i` and `j`.
    pub fn distance(&self, i: Node, j: Node) -> usize {
        self.path(i, j).len() - 1
    }

    /// Nodes of `(from, to]` ordered from `from` outward.
    pub fn half_open_path(&self, from: Node, to: Node) -> Vec<Node> {
        self.path(from, to).into_iter().skip(1).collect()
    }

    pub fn is_connected(&self, j: Subdiagram) -> bool {
        let Some(start) = j.first() else {
            return true;
        };
        let mut seen = Subdiagram::single(start);
        let mut stack = vec![start];
        while let Some(u) = stack.pop() {
            for &v in self.neighbors(u) {
                if j.contains(v) && !seen.contains(v) {
                    seen.insert(v);
                    stack.push(v);
                }
            }
        }
        seen == j
    }

    /// Minimal connected subdiagram containing `j`.
    pub fn closure(&self, j: Subdiagram) -> Subdiagram {
        let nodes: Vec<Node> = j.iter().collect();
        let Some(&first) = nodes.first() else {
            return Subdiagram::EMPTY;
        };
        let mut out = Subdiagram::single(first);
        for &v in &nodes[1..] {
            out = out.union(self.interval(first, v));
        }
        out
    }

    /// Number of neighbours of `i` lying in `j`.
    pub fn degree_in(&self, i: Node, j: Subdiagram) -> usize {
        self.neighbors(i).iter().filter(|&&v| j.contains(v)).count()
    }

    /// Nodes of `j` with at most one neighbour in `j`.
    pub fn boundary(&self, j: Subdiagram) -> Subdiagram {
        Subdiagram::from_nodes(j.iter().filter(|&i| self.degree_in(i, j) <= 1))
    }

    /// `j` minus its boundary.
    pub fn interior(&self, j: Subdiagram) -> Subdiagram {
        j.difference(self.boundary(j))
    }

    /// Nodes outside `j` adjacent to some node of `j`.
    pub fn outer_neighbors(&self, j: Subdiagram) -> Subdiagram {
        let mut out = Subdiagram::EMPTY;
        for i in j.iter() {
            for &v in self.neighbors(i) {
                if !j.contains(v) {
                    out.insert(v);
                }
            }
        }
        out
    }

    /// True when `j` contains no node of degree three inside `j`.
    pub fn is_type_a(&self, j: Subdiagram) -> bool {
        j.iter().all(|i| self.degree_in(i, j) <= 2)
    }

    /// `ϑ_J`, the sum of the simple roots in `j`.
    pub fn theta(&self, j: Subdiagram) -> RootVector {
        let mut v = RootVector::zero(self.rank);
        for i in j.iter() {
            v.0[i - 1] = 1;
        }
        v
    }

    /// For a boundary node `i` of a D/E diagram, the type-A subdiagram
    /// spanned by the other boundary nodes.
    pub fn leaf_complement(&self, i: Node) -> Result<Subdiagram> {
        self.require_trivalent()?;
        let others = Subdiagram::from_nodes(self.boundary_nodes().into_iter().filter(|&b| b != i));
        if others.len() + 1 != 3 {
            return Err(Error::Precondition(format!("{i} is not a boundary node of {self}")));
        }
        Ok(self.closure(others))
    }

    /// All connected nonempty subdiagrams, in increasing bitmask order.
    pub fn connected_subdiagrams(&self) -> Vec<Subdiagram> {
        let mut found: BTreeSet<Subdiagram> = BTreeSet::new();
        let mut frontier: Vec<Subdiagram> = self.nodes().map(Subdiagram::single).collect();
        found.extend(frontier.iter().copied());
        while let Some(j) = frontier.pop() {
            for v in self.outer_neighbors(j).iter() {
                let mut bigger = j;
                bigger.insert(v);
                if found.insert(bigger) {
                    frontier.push(bigger);
                }
            }
        }
        found.into_iter().collect()
    }

    /// Connected subdiagrams of `within` that contain `i`.
    pub fn connected_containing(&self, i: Node, within: Subdiagram) -> Vec<Subdiagram> {
        if !within.contains(i) {
            return Vec::new();
        }
        let mut found: BTreeSet<Subdiagram> = BTreeSet::from([Subdiagram::single(i)]);
        let mut frontier = vec![Subdiagram::single(i)];
        while let Some(j) = frontier.pop() {
            for v in self.outer_neighbors(j).intersection(within).iter() {
                let mut bigger = j;
                bigger.insert(v);
                if found.insert(bigger) {
                    frontier.push(bigger);
                }
            }
        }
        found.into_iter().collect()
    }

    /// Positive roots in graded-lexicographic order `(ht, coords)`.
    pub fn positive_roots(&self) -> &[RootVector] {
        &self.roots
    }

    pub fn is_root(&self, v: &RootVector) -> bool {
        self.roots.binary_search(v).is_ok() || self.roots.binary_search(&-v.clone()).is_ok()
    }

    pub fn simple_root(&self, i: Node) -> RootVector {
        let mut v = RootVector::zero(self.rank);
        v.0[i - 1] = 1;
        v
    }

    fn compute_positive_roots(&self) -> Vec<RootVector> {
        let simple: Vec<RootVector> = self.nodes().map(|i| self.simple_root(i)).collect();
        let mut found: BTreeSet<RootVector> = simple.iter().cloned().collect();
        let mut queue: VecDeque<RootVector> = simple.into_iter().collect();
        while let Some(beta) = queue.pop_front() {
            for i in self.nodes() {
                if self.pair_with_simple(&beta, i) == -1 {
                    let mut next = beta.clone();
                    next.0[i - 1] += 1;
                    if found.insert(next.clone()) {
                        queue.push_back(next);
                    }
                }
            }
        }
        found.into_iter().collect()
    }

    /// `(β, α_i)` in the form normalised by `(α_i, α_i) = 2`.
    pub fn pair_with_simple(&self, beta: &RootVector, i: Node) -> i64 {
        self.nodes().map(|j| beta.0[j - 1] * self.cartan(j, i)).sum()
    }

    /// `(a, b)` for root-coordinate vectors.
    pub fn form(&self, a: &RootVector, b: &RootVector) -> i64 {
        let mut s = 0;
        for i in self.nodes() {
            if a.0[i - 1] == 0 {
                continue;
            }
            s += a.0[i - 1] * self.pair_with_simple(b, i);
        }
        s
    }

    /// Image of a root-coordinate vector in fundamental-weight coordinates.
    pub fn to_weight(&self, eta: &RootVector) -> Weight {
        Weight(self.nodes().map(|i| self.pair_with_simple(eta, i)).collect())
    }

    pub fn check_weight(&self, w: &Weight) -> Result<()> {
        if w.rank() != self.rank {
            Err(Error::RankMismatch { expected: self.rank, got: w.rank() })
        } else {
            Ok(())
        }
    }

    pub fn check_root_vector(&self, v: &RootVector) -> Result<()> {
        if v.rank() != self.rank {
            Err(Error::RankMismatch { expected: self.rank, got: v.rank() })
        } else {
            Ok(())
        }
    }

    /// For every boundary node `i`, the support node on `(i_*, i]` closest to
    /// `i_*`, or `i` itself when the branch carries no support.
    pub fn lambda_marks(&self, lambda: &Weight) -> Result<LambdaMarks> {
        let centre = self.require_trivalent()?;
        self.check_weight(lambda)?;
        let supp = lambda.support();
        let mut marks = BTreeMap::new();
        for b in self.boundary_nodes() {
            let branch = self.half_open_path(centre, b);
            let mark = branch.iter().copied().find(|&v| supp.contains(v)).unwrap_or(b);
            marks.insert(b, mark);
        }
        let hull = self.closure(Subdiagram::from_nodes(marks.values().copied()));
        let mut branch_hulls = BTreeMap::new();
        for &b in marks.keys() {
            branch_hulls.insert(b, self.leaf_complement(b)?.intersection(hull));
        }
        Ok(LambdaMarks { marks, hull, branch_hulls })
    }

    /// Recognise the connected subdiagram `j` as a Dynkin diagram in its own
    /// right and relabel it with the standard labels.
    ///
    /// Returns the diagram together with `map`, where `map[t - 1]` is the
    /// node of `self` carrying new label `t`.
    pub fn induced(&self, j: Subdiagram) -> Result<(Diagram, Vec<Node>)> {
        if j.is_empty() || !self.is_connected(j) {
            return Err(Error::Disconnected(j.to_string()));
        }
        let leaves: Vec<Node> = self.boundary(j).iter().collect();
        let centre = j.iter().find(|&i| self.degree_in(i, j) == 3);
        let Some(c) = centre else {
            let start = leaves[0];
            let end = *leaves.last().unwrap_or(&start);
            let map = self.path(start, end);
            return Ok((Diagram::a(map.len())?, map));
        };
        let mut arms: Vec<Vec<Node>> =
            leaves.iter().map(|&l| self.half_open_path(c, l)).collect();
        arms.sort_by_key(|a| (a.len(), *a.last().unwrap()));
        let lens: Vec<usize> = arms.iter().map(Vec::len).collect();
        let rank = j.len();
        let map: Vec<Node> = match lens.as_slice() {
            [1, 1, x] => {
                let (long, a, b) = if *x == 1 { (0, 1, 2) } else { (2, 0, 1) };
                let mut m: Vec<Node> = arms[long].iter().rev().copied().collect();
                m.push(c);
                m.push(arms[a][0]);
                m.push(arms[b][0]);
                m
            }
            [1, 2, 2] | [1, 2, 3] | [1, 2, 4] => {
                let mut m = vec![0; rank];
                m[1] = arms[0][0];
                m[0] = arms[1][1];
                m[2] = arms[1][0];
                m[3] = c;
                for (t, &v) in arms[2].iter().enumerate() {
                    m[4 + t] = v;
                }
                m
            }
            _ => return Err(Error::Precondition(format!("subdiagram {j} is not of finite type"))),
        };
        let kind = if lens[1] == 1 { DiagramKind::D } else { DiagramKind::E };
        Ok((Diagram::new(kind, rank)?, map))
    }
}

/// Output of [`Diagram::lambda_marks`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct LambdaMarks {
    pub marks: BTreeMap<Node, Node>,
    pub hull: Subdiagram,
    pub branch_hulls: BTreeMap<Node, Subdiagram>,
}

/// A set of nodes, stored as a bitmask.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subdiagram(u64);

impl Subdiagram {
    pub const EMPTY: Subdiagram = Subdiagram(0);
    pub const MAX_NODES: usize = 64;

    pub fn single(i: Node) -> Self {
        Subdiagram(1u64 << (i - 1))
    }

    pub fn from_nodes<I: IntoIterator<Item = Node>>(nodes: I) -> Self {
        let mut s = Subdiagram::EMPTY;
        for i in nodes {
            s.insert(i);
        }
        s
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn contains(self, i: Node) -> bool {
        (1..=Self::MAX_NODES).contains(&i) && self.0 & (1u64 << (i - 1)) != 0
    }

    pub fn insert(&mut self, i: Node) {
        self.0 |= 1u64 << (i - 1);
    }

    pub fn remove(&mut self, i: Node) {
        self.0 &= !(1u64 << (i - 1));
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: Self) -> Self {
        Subdiagram(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        Subdiagram(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        Subdiagram(self.0 & !o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_disjoint(self, o: Self) -> bool {
        self.0 & o.0 == 0
    }

    pub fn first(self) -> Option<Node> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize + 1)
    }

    pub fn iter(self) -> impl Iterator<Item = Node> {
        let mut bits = self.0;
        std::iter::from_fn(move || {
            if bits == 0 {
                return None;
            }
            let t = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            Some(t + 1)
        })
    }
}

impl fmt::Display for Subdiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.iter().map(|i| i.to_string()).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl Serialize for Subdiagram {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for Subdiagram {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let nodes = Vec::<Node>::deserialize(d)?;
        if nodes.iter().any(|&i| i == 0 || i > Self::MAX_NODES) {
            return Err(serde::de::Error::custom("node label out of range"));
        }
        Ok(Subdiagram::from_nodes(nodes))
    }
}

macro_rules! int_vector {
    ($name:ident) => {
        impl $name {
            pub fn zero(rank: usize) -> Self {
                $name(vec![0; rank])
            }

            pub fn from_coords(coords: Vec<i64>) -> Self {
                $name(coords)
            }

            pub fn coords(&self) -> &[i64] {
                &self.0
            }

            pub fn rank(&self) -> usize {
                self.0.len()
            }

            /// Coordinate at a 1-based node.
            pub fn at(&self, i: Node) -> i64 {
                self.0[i - 1]
            }

            pub fn set(&mut self, i: Node, value: i64) {
                self.0[i - 1] = value;
            }

            pub fn is_zero(&self) -> bool {
                self.0.iter().all(|&c| c == 0)
            }

            /// Nodes with a nonzero coordinate.
            pub fn support(&self) -> Subdiagram {
                Subdiagram::from_nodes((1..=self.rank()).filter(|&i| self.at(i) != 0))
            }

            pub fn scaled(&self, k: i64) -> Self {
                $name(self.0.iter().map(|c| c * k).collect())
            }

            /// Zero every coordinate outside `j`.
            pub fn restrict(&self, j: Subdiagram) -> Self {
                $name(
                    (1..=self.rank())
                        .map(|i| if j.contains(i) { self.at(i) } else { 0 })
                        .collect(),
                )
            }

            /// Parse a JSON object keyed by node labels, e.g. `{"1":2,"3":1}`.
            pub fn from_node_map(rank: usize, map: &BTreeMap<String, i64>) -> Result<Self> {
                let mut v = Self::zero(rank);
                for (k, &c) in map {
                    let i: Node =
                        k.trim().parse().map_err(|_| Error::Parse(format!("bad node key `{k}`")))?;
                    if i == 0 || i > rank {
                        return Err(Error::NodeOutOfRange { node: i, diagram: format!("rank {rank}") });
                    }
                    v.0[i - 1] = c;
                }
                Ok(v)
            }

            /// Nonzero coordinates keyed by node label.
            pub fn to_node_map(&self) -> BTreeMap<String, i64> {
                (1..=self.rank())
                    .filter(|&i| self.at(i) != 0)
                    .map(|i| (i.to_string(), self.at(i)))
                    .collect()
            }
        }

        impl Index<Node> for $name {
            type Output = i64;
            fn index(&self, i: Node) -> &i64 {
                &self.0[i - 1]
            }
        }

        impl Add for $name {
            type Output = $name;
            fn add(mut self, o: $name) -> $name {
                self += &o;
                self
            }
        }

        impl<'a> Add<&'a $name> for &'a $name {
            type Output = $name;
            fn add(self, o: &$name) -> $name {
                self.clone() + o.clone()
            }
        }

        impl Sub for $name {
            type Output = $name;
            fn sub(mut self, o: $name) -> $name {
                self -= &o;
                self
            }
        }

        impl<'a> Sub<&'a $name> for &'a $name {
            type Output = $name;
            fn sub(self, o: &$name) -> $name {
                self.clone() - o.clone()
            }
        }

        impl AddAssign<&$name> for $name {
            fn add_assign(&mut self, o: &$name) {
                assert_eq!(self.rank(), o.rank(), "rank mismatch");
                for (a, b) in self.0.iter_mut().zip(&o.0) {
                    *a += b;
                }
            }
        }

        impl SubAssign<&$name> for $name {
            fn sub_assign(&mut self, o: &$name) {
                assert_eq!(self.rank(), o.rank(), "rank mismatch");
                for (a, b) in self.0.iter_mut().zip(&o.0) {
                    *a -= b;
                }
            }
        }

        impl Neg for $name {
            type Output = $name;
            fn neg(self) -> $name {
                $name(self.0.into_iter().map(|c| -c).collect())
            }
        }

        impl fmt::Display for $name {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                let parts: Vec<String> = self.0.iter().map(|c| c.to_string()).collect();
                write!(f, "({})", parts.join(","))
            }
        }
    };
}

/// An element of the weight lattice, in fundamental-weight coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Weight(Vec<i64>);

int_vector!(Weight);

impl Weight {
    pub fn fundamental(rank: usize, i: Node) -> Self {
        let mut w = Weight::zero(rank);
        w.0[i - 1] = 1;
        w
    }

    pub fn is_dominant(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// `|λ| = Σ λ_i`.
    pub fn level(&self) -> i64 {
        self.0.iter().sum()
    }
}

/// An element of the root lattice, in simple-root coordinates.
///
/// Ordered by height first, then lexicographically by coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RootVector(Vec<i64>);

int_vector!(RootVector);

impl RootVector {
    pub fn height(&self) -> i64 {
        self.0.iter().sum()
    }

    /// True when every coordinate is nonnegative.
    pub fn is_nonnegative(&self) -> bool {
        self.0.iter().all(|&c| c >= 0)
    }

    /// Coordinatewise `self <= other`.
    pub fn fits_in(&self, other: &RootVector) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }
}

impl PartialOrd for RootVector {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for RootVector {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.height().cmp(&other.height()).then_with(|| self.0.cmp(&other.0))
    }
}
