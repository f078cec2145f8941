//! Kostant partitions, plain and restricted to roots touching a support,
//! together with the disjoint-subdiagram families that count weight spaces
//! of tensor products of fundamental-type modules.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dynkin::{Diagram, Node, RootVector, Subdiagram, Weight};
use crate::error::{Error, Result};

/// A multiset of positive roots, stored sparsely.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PartitionFamily {
    parts: BTreeMap<RootVector, u32>,
}

impl PartitionFamily {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, root: RootVector, count: u32) {
        if count > 0 {
            *self.parts.entry(root).or_insert(0) += count;
        }
    }

    pub fn parts(&self) -> &BTreeMap<RootVector, u32> {
        &self.parts
    }

    pub fn count(&self, root: &RootVector) -> u32 {
        self.parts.get(root).copied().unwrap_or(0)
    }

    /// Number of distinct roots used.
    pub fn support_len(&self) -> usize {
        self.parts.len()
    }

    /// `Σ ξ(α)·α`.
    pub fn weight(&self, rank: usize) -> RootVector {
        let mut total = RootVector::zero(rank);
        for (root, &c) in &self.parts {
            total += &root.scaled(c as i64);
        }
        total
    }
}

impl fmt::Display for PartitionFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self
            .parts
            .iter()
            .map(|(r, c)| if *c == 1 { r.to_string() } else { format!("{c}*{r}") })
            .collect();
        write!(f, "[{}]", parts.join(" + "))
    }
}

/// `p(η)`: the number of ways to write `η` as a sum of positive roots.
pub fn kostant_p(d: &Diagram, eta: &RootVector) -> u64 {
    if d.check_root_vector(eta).is_err() || !eta.is_nonnegative() {
        return 0;
    }
    let roots: Vec<&RootVector> = d.positive_roots().iter().filter(|r| r.fits_in(eta)).collect();
    let mut memo = BTreeMap::new();
    count_from(&roots, 0, eta.clone(), &mut memo)
}

fn count_from(
    roots: &[&RootVector],
    start: usize,
    rest: RootVector,
    memo: &mut BTreeMap<(usize, RootVector), u64>,
) -> u64 {
    if rest.is_zero() {
        return 1;
    }
    if start == roots.len() {
        return 0;
    }
    let key = (start, rest);
    if let Some(&v) = memo.get(&key) {
        return v;
    }
    let (_, rest) = &key;
    let mut total = 0;
    let mut cur = rest.clone();
    loop {
        total += count_from(roots, start + 1, cur.clone(), memo);
        if !roots[start].fits_in(&cur) {
            break;
        }
        cur -= roots[start];
    }
    memo.insert(key, total);
    total
}

/// All partitions of `η` into positive roots each meeting `supp(λ)`.
///
/// Families come out in lexicographic order of their multiplicity vectors
/// over the cached root order.
pub fn restricted_partitions(d: &Diagram, eta: &RootVector, lambda: &Weight) -> Vec<PartitionFamily> {
    let supp = lambda.support();
    let roots: Vec<&RootVector> = d
        .positive_roots()
        .iter()
        .filter(|r| r.fits_in(eta) && !r.support().is_disjoint(supp))
        .collect();
    let mut out = Vec::new();
    if !eta.is_nonnegative() || eta.rank() != d.rank() {
        return out;
    }
    let mut counts = vec![0u32; roots.len()];
    enumerate(&roots, 0, eta.clone(), &mut counts, &mut out);
    out
}

fn enumerate(
    roots: &[&RootVector],
    idx: usize,
    rest: RootVector,
    counts: &mut Vec<u32>,
    out: &mut Vec<PartitionFamily>,
) {
    if rest.is_zero() {
        let mut fam = PartitionFamily::new();
        for (r, &c) in roots.iter().zip(counts.iter()) {
            fam.add((*r).clone(), c);
        }
        out.push(fam);
        return;
    }
    if idx == roots.len() {
        return;
    }
    let mut max = 0;
    let mut probe = rest.clone();
    while roots[idx].fits_in(&probe) {
        probe -= roots[idx];
        max += 1;
    }
    let mut cur = rest;
    for c in 0..=max {
        counts[idx] = c;
        enumerate(roots, idx + 1, cur.clone(), counts, out);
        if c < max {
            cur -= roots[idx];
        }
    }
    counts[idx] = 0;
}

/// `dim V(λ)_{λ-ϑ_J}` as a count of restricted partitions.
///
/// Only defined for connected `J` whose intersection with `supp(λ)` lies in
/// the boundary of `J`.
pub fn dim_weight_space_theta(d: &Diagram, lambda: &Weight, j: Subdiagram) -> Result<usize> {
    d.check_weight(lambda)?;
    if !d.is_connected(j) {
        return Err(Error::Disconnected(j.to_string()));
    }
    let inner = lambda.support().intersection(j);
    if !inner.is_subset(d.boundary(j)) {
        return Err(Error::Precondition(format!(
            "supp(λ)∩J = {inner} is not contained in the boundary of J = {j}"
        )));
    }
    Ok(restricted_partitions(d, &d.theta(j), lambda).len())
}

/// A family `(J_i)` indexed by `supp(λ)` of pairwise disjoint connected
/// subdiagrams, where each `J_i` is empty or contains `i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BranchFamily {
    pub parts: BTreeMap<Node, Subdiagram>,
}

impl BranchFamily {
    pub fn part(&self, i: Node) -> Subdiagram {
        self.parts.get(&i).copied().unwrap_or(Subdiagram::EMPTY)
    }

    pub fn union(&self) -> Subdiagram {
        self.parts.values().fold(Subdiagram::EMPTY, |a, &b| a.union(b))
    }

    pub fn weight(&self, d: &Diagram) -> RootVector {
        d.theta(self.union())
    }

    /// Indices with a nonempty part.
    pub fn used(&self) -> impl Iterator<Item = Node> + '_ {
        self.parts.iter().filter(|(_, j)| !j.is_empty()).map(|(&i, _)| i)
    }
}

/// All branch families of total weight `η`.
///
/// Requires every coordinate of `η` to be at most one.
pub fn branch_families(d: &Diagram, lambda: &Weight, eta: &RootVector) -> Result<Vec<BranchFamily>> {
    d.check_weight(lambda)?;
    d.check_root_vector(eta)?;
    if let Some(i) = d.nodes().find(|&i| eta.at(i) > 1) {
        return Err(Error::Precondition(format!("coordinate {} of η at node {i} exceeds 1", eta.at(i))));
    }
    if !eta.is_nonnegative() {
        return Ok(Vec::new());
    }
    let target = eta.support();
    let supp: Vec<Node> = lambda.support().iter().collect();
    let options: Vec<Vec<Subdiagram>> = supp
        .iter()
        .map(|&i| {
            let mut opts = vec![Subdiagram::EMPTY];
            opts.extend(d.connected_containing(i, target));
            opts
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen = vec![Subdiagram::EMPTY; supp.len()];
    choose_parts(&options, 0, Subdiagram::EMPTY, target, &mut chosen, &mut |parts| {
        out.push(BranchFamily { parts: supp.iter().copied().zip(parts.iter().copied()).collect() });
    });
    Ok(out)
}

pub(crate) fn choose_parts(
    options: &[Vec<Subdiagram>],
    idx: usize,
    used: Subdiagram,
    target: Subdiagram,
    chosen: &mut Vec<Subdiagram>,
    emit: &mut dyn FnMut(&[Subdiagram]),
) {
    if idx == options.len() {
        if used == target {
            emit(chosen);
        }
        return;
    }
    for &j in &options[idx] {
        if !j.is_disjoint(used) {
            continue;
        }
        chosen[idx] = j;
        choose_parts(options, idx + 1, used.union(j), target, chosen, emit);
    }
    chosen[idx] = Subdiagram::EMPTY;
}

/// Fibre sizes of the map sending a branch family to the partition with one
/// copy of `ϑ_{J_i}` for each nonempty part.
pub fn psi_fibers(d: &Diagram, families: &[BranchFamily]) -> BTreeMap<PartitionFamily, usize> {
    let mut out = BTreeMap::new();
    for fam in families {
        let mut xi = PartitionFamily::new();
        for j in fam.parts.values().filter(|j| !j.is_empty()) {
            xi.add(d.theta(*j), 1);
        }
        *out.entry(xi).or_insert(0) += 1;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rv(c: &[i64]) -> RootVector {
        RootVector::from_coords(c.to_vec())
    }

    fn boundary_weight(d: &Diagram, vals: &[i64]) -> Weight {
        let mut w = Weight::zero(d.rank());
        for (&b, &v) in d.boundary_nodes().iter().zip(vals) {
            w.set(b, v);
        }
        w
    }

    #[test]
    fn p_small_values() {
        let a2 = Diagram::a(2).unwrap();
        assert_eq!(kostant_p(&a2, &rv(&[1, 1])), 2);
        assert_eq!(kostant_p(&a2, &rv(&[1, -1])), 0);
        assert_eq!(kostant_p(&a2, &rv(&[0, 0])), 1);
        let d4 = Diagram::d(4).unwrap();
        for i in d4.nodes() {
            assert_eq!(kostant_p(&d4, &d4.simple_root(i)), 1);
        }
        assert_eq!(kostant_p(&a2, &rv(&[2, 2])), 3);
    }

    #[test]
    fn restricted_matches_p_for_full_support() {
        let d = Diagram::d(5).unwrap();
        let full = Weight::from_coords(vec![1; 5]);
        for eta in [rv(&[1, 1, 1, 1, 1]), rv(&[1, 2, 1, 0, 1]), rv(&[0, 1, 2, 1, 1])] {
            let fams = restricted_partitions(&d, &eta, &full);
            assert_eq!(fams.len() as u64, kostant_p(&d, &eta));
            assert!(fams.iter().all(|f| f.weight(5) == eta));
        }
    }

    #[test]
    fn restricted_counts_on_theta() {
        for (name, expected) in [("D4", 7), ("D5", 10), ("D6", 13), ("E6", 14)] {
            let d: Diagram = name.parse().unwrap();
            let lam = boundary_weight(&d, &[1, 1, 1]);
            assert_eq!(restricted_partitions(&d, &d.theta(d.all()), &lam).len(), expected, "{name}");
        }
        let d4 = Diagram::d(4).unwrap();
        assert!(restricted_partitions(&d4, &d4.theta(d4.all()), &Weight::zero(4)).is_empty());
    }

    #[test]
    fn dim_theta_by_support_size() {
        let d5 = Diagram::d(5).unwrap();
        let one = Weight::fundamental(5, 1);
        assert_eq!(dim_weight_space_theta(&d5, &one, d5.interval(1, 4)).unwrap(), 1);
        let mut two = Weight::zero(5);
        two.set(1, 2);
        two.set(5, 1);
        let j = d5.interval(1, 5);
        assert_eq!(dim_weight_space_theta(&d5, &two, j).unwrap(), j.len());
        let three = boundary_weight(&d5, &[1, 1, 1]);
        assert_eq!(dim_weight_space_theta(&d5, &three, d5.all()).unwrap(), 10);
        let inner = Weight::fundamental(5, 3);
        assert!(dim_weight_space_theta(&d5, &inner, d5.all()).is_err());
        assert!(dim_weight_space_theta(&d5, &three, Subdiagram::from_nodes([1, 4])).is_err());
    }

    #[test]
    fn branch_family_counts() {
        let d4 = Diagram::d(4).unwrap();
        let lam = boundary_weight(&d4, &[1, 1, 1]);
        let zero = branch_families(&d4, &lam, &RootVector::zero(4)).unwrap();
        assert_eq!(zero.len(), 1);
        assert_eq!(zero[0].union(), Subdiagram::EMPTY);
        let full = branch_families(&d4, &lam, &d4.theta(d4.all())).unwrap();
        assert_eq!(full.len(), 12);
        assert!(branch_families(&d4, &lam, &rv(&[0, 2, 0, 0])).is_err());

        let mut two = Weight::zero(4);
        two.set(1, 1);
        two.set(3, 2);
        let j = d4.interval(1, 3);
        let fams = branch_families(&d4, &two, &d4.theta(j)).unwrap();
        let parts = restricted_partitions(&d4, &d4.theta(j), &two);
        assert_eq!(fams.len(), parts.len() + 1);
    }

    #[test]
    fn psi_fibre_sizes() {
        let d4 = Diagram::d(4).unwrap();
        let lam = boundary_weight(&d4, &[1, 1, 1]);
        let fams = branch_families(&d4, &lam, &d4.theta(d4.all())).unwrap();
        let fib = psi_fibers(&d4, &fams);
        let mut top = PartitionFamily::new();
        top.add(d4.theta(d4.all()), 1);
        assert_eq!(fib[&top], 3);
        let total: usize = restricted_partitions(&d4, &d4.theta(d4.all()), &lam)
            .iter()
            .map(|xi| 1 + 3 - xi.support_len())
            .sum();
        assert_eq!(total, fams.len());
        for (xi, &size) in &fib {
            assert_eq!(size, 1 + 3 - xi.support_len(), "{xi}");
        }

        let mut two = Weight::zero(4);
        two.set(1, 1);
        two.set(4, 1);
        let j = d4.interval(1, 4);
        let fib = psi_fibers(&d4, &branch_families(&d4, &two, &d4.theta(j)).unwrap());
        let mut top = PartitionFamily::new();
        top.add(d4.theta(j), 1);
        assert_eq!(fib[&top], 2);
    }
}
