//! Classification of Drinfeld data: type-A minimality along monotonic
//! orders, preminimality, boundary-node minimality, the minimality order and
//! the coherent / incoherent split for order two.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dynkin::{Diagram, Node, Subdiagram, Weight};
use crate::error::{Error, Result};
use crate::lweight::{DrinfeldSpec, KrString};

/// A total order on a type-A path, as a node sequence whose neighbours in the
/// sequence are neighbours in the diagram.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MonotonicOrder {
    nodes: Vec<Node>,
}

impl MonotonicOrder {
    /// The order along the path from `from` to `to`.
    pub fn between(d: &Diagram, from: Node, to: Node) -> Result<Self> {
        d.check_node(from)?;
        d.check_node(to)?;
        Ok(MonotonicOrder { nodes: d.path(from, to) })
    }

    /// Validate an explicit node sequence.
    pub fn from_nodes(d: &Diagram, nodes: Vec<Node>) -> Result<Self> {
        for &i in &nodes {
            d.check_node(i)?;
        }
        let set = Subdiagram::from_nodes(nodes.iter().copied());
        if set.len() != nodes.len() || nodes.windows(2).any(|w| !d.adjacent(w[0], w[1])) {
            return Err(Error::Precondition(format!("{nodes:?} is not a monotonic order on a path")));
        }
        Ok(MonotonicOrder { nodes })
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn reversed(&self) -> Self {
        MonotonicOrder { nodes: self.nodes.iter().rev().copied().collect() }
    }

    pub fn position(&self, i: Node) -> Option<usize> {
        self.nodes.iter().position(|&v| v == i)
    }

    pub fn subdiagram(&self) -> Subdiagram {
        Subdiagram::from_nodes(self.nodes.iter().copied())
    }

    /// `p_{i,j}(λ) = λ_i + λ_j + 2·(sum strictly between) + (distance)`.
    pub fn p_value(&self, lambda: &Weight, i: Node, j: Node) -> Result<i64> {
        let pi = self.position(i).ok_or_else(|| Error::Precondition(format!("{i} not in order")))?;
        let pj = self.position(j).ok_or_else(|| Error::Precondition(format!("{j} not in order")))?;
        if pi == pj {
            return Ok(0);
        }
        let (a, b) = (pi.min(pj), pi.max(pj));
        let between: i64 = self.nodes[a + 1..b].iter().map(|&v| lambda.at(v)).sum();
        Ok(lambda.at(i) + lambda.at(j) + 2 * between + (b - a) as i64)
    }
}

/// Outcome of the type-A minimality test.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum AMinimality {
    Increasing,
    Decreasing,
    Both,
    No,
}

impl AMinimality {
    pub fn is_minimal(self) -> bool {
        self != AMinimality::No
    }

    /// Two minimal directions are compatible when they could be equal.
    pub fn agrees_with(self, other: AMinimality) -> bool {
        use AMinimality::*;
        match (self, other) {
            (No, _) | (_, No) => false,
            (Both, _) | (_, Both) => true,
            (a, b) => a == b,
        }
    }
}

/// Test whether the strings of `spec` on the nodes of `order` satisfy
/// `c_i - c_j = ε p_{i,j}` for all support pairs `i` before `j`, where `c`
/// is the string centre. `ε = 1` is reported as decreasing.
pub fn is_minimal_a(order: &MonotonicOrder, spec: &DrinfeldSpec, rank: usize) -> Result<AMinimality> {
    let lambda = spec.restrict(order.subdiagram()).weight(rank);
    let supp: Vec<Node> = order.nodes().iter().copied().filter(|&i| lambda.at(i) != 0).collect();
    if supp.len() <= 1 {
        return Ok(AMinimality::Both);
    }
    let centre = |i: Node| spec.center(i).expect("support node carries a string");
    let p01 = order.p_value(&lambda, supp[0], supp[1])?;
    let diff = centre(supp[0]) - centre(supp[1]);
    let eps = if diff == p01 {
        1
    } else if diff == -p01 {
        -1
    } else {
        return Ok(AMinimality::No);
    };
    for (a, &i) in supp.iter().enumerate() {
        for &j in &supp[a + 1..] {
            if centre(i) - centre(j) != eps * order.p_value(&lambda, i, j)? {
                return Ok(AMinimality::No);
            }
        }
    }
    Ok(if eps == 1 { AMinimality::Decreasing } else { AMinimality::Increasing })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Coherence {
    Coherent,
    Incoherent,
    NotApplicable,
}

impl fmt::Display for Coherence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Coherence::Coherent => "coherent",
            Coherence::Incoherent => "incoherent",
            Coherence::NotApplicable => "not-applicable",
        })
    }
}

/// Which of the two coherent orderings to use on the type-A pieces that
/// avoid a boundary node.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Orientation {
    /// Start every order at the failing node.
    #[default]
    AwayFromFailing,
    /// End every order at the failing node.
    TowardFailing,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub preminimal: bool,
    pub i_minimal: BTreeMap<Node, bool>,
    pub mo: usize,
    pub coherence: Coherence,
    pub failing: Option<Node>,
    /// Direction on `I_l` for the two non-failing boundary nodes, when
    /// coherence applies.
    pub directions: BTreeMap<Node, AMinimality>,
}

impl Classification {
    pub fn is_order_two_coherent(&self) -> bool {
        self.preminimal && self.mo == 2 && self.coherence == Coherence::Coherent
    }

    pub fn is_order_two_incoherent(&self) -> bool {
        self.preminimal && self.mo == 2 && self.coherence == Coherence::Incoherent
    }
}

/// The type-A piece `I_l` ordered from `start` to the third boundary node.
fn ordered_leaf_complement(d: &Diagram, l: Node, start: Node) -> Result<MonotonicOrder> {
    let other = d
        .boundary_nodes()
        .into_iter()
        .find(|&b| b != l && b != start)
        .ok_or_else(|| Error::Precondition(format!("no third boundary node for {l}, {start}")))?;
    MonotonicOrder::between(d, start, other)
}

pub fn classify(d: &Diagram, spec: &DrinfeldSpec) -> Result<Classification> {
    classify_oriented(d, spec, Orientation::default())
}

pub fn classify_oriented(d: &Diagram, spec: &DrinfeldSpec, orientation: Orientation) -> Result<Classification> {
    let centre = d.require_trivalent()?;
    spec.check(d)?;
    let n = d.rank();
    let leaves = d.boundary_nodes();
    let mut preminimal = true;
    for &b in &leaves {
        let order = MonotonicOrder::between(d, centre, b)?;
        if !is_minimal_a(&order, spec, n)?.is_minimal() {
            preminimal = false;
        }
    }
    let mut i_minimal = BTreeMap::new();
    for &b in &leaves {
        let others: Vec<Node> = leaves.iter().copied().filter(|&x| x != b).collect();
        let order = MonotonicOrder::between(d, others[0], others[1])?;
        i_minimal.insert(b, is_minimal_a(&order, spec, n)?.is_minimal());
    }
    let mo = i_minimal.values().filter(|&&v| v).count();
    let failing = (mo == 2).then(|| *i_minimal.iter().find(|(_, &v)| !v).unwrap().0);
    let mut directions = BTreeMap::new();
    let mut coherence = Coherence::NotApplicable;
    if let (true, Some(k)) = (preminimal, failing) {
        for &l in leaves.iter().filter(|&&l| l != k) {
            let mut order = ordered_leaf_complement(d, l, k)?;
            if orientation == Orientation::TowardFailing {
                order = order.reversed();
            }
            directions.insert(l, is_minimal_a(&order, spec, n)?);
        }
        let dirs: Vec<AMinimality> = directions.values().copied().collect();
        coherence = if dirs[0].agrees_with(dirs[1]) { Coherence::Coherent } else { Coherence::Incoherent };
    }
    Ok(Classification { preminimal, i_minimal, mo, coherence, failing, directions })
}

/// Reflect the centres of all strings on the branch `(i_*, m]` across the
/// centre of the string at `base`.
pub fn reflect_branch(d: &Diagram, spec: &DrinfeldSpec, m: Node, base: Node) -> Result<DrinfeldSpec> {
    let centre = d.require_trivalent()?;
    let pivot = spec
        .center(base)
        .ok_or_else(|| Error::Precondition(format!("base node {base} carries no string")))?;
    let mut out = spec.clone();
    for v in d.half_open_path(centre, m) {
        if let Some(s) = spec.get(v) {
            out = out.with_string(KrString::with_center(v, 2 * pivot - s.center(), s.m))?;
        }
    }
    Ok(out)
}

/// The incoherent data agreeing with a coherent `spec` on `I_m`, with the
/// same weight and still minimal on `I_l` for both `l ≠ k`.
pub fn incoherent_partner(d: &Diagram, spec: &DrinfeldSpec, k: Node, m: Node) -> Result<DrinfeldSpec> {
    let centre = d.require_trivalent()?;
    let cls = classify(d, spec)?;
    if !cls.is_order_two_coherent() {
        return Err(Error::Precondition(format!(
            "expected preminimal coherent data of order 2, got mo = {}, {}",
            cls.mo, cls.coherence
        )));
    }
    if cls.failing != Some(k) {
        return Err(Error::Precondition(format!("minimality fails at {:?}, not at {k}", cls.failing)));
    }
    if m == k || !d.boundary_nodes().contains(&m) {
        return Err(Error::Precondition(format!("{m} is not a boundary node other than {k}")));
    }
    let supp = spec.support();
    let on_k_branch = supp.intersection(d.interval(k, centre));
    if on_k_branch.len() != 1 {
        return Err(Error::Precondition(format!(
            "support meets [{k}, {centre}] in {} nodes; the partner needs exactly one",
            on_k_branch.len()
        )));
    }
    let base = on_k_branch.first().unwrap();
    let partner = reflect_branch(d, spec, m, base)?;
    let check = classify(d, &partner)?;
    if !(check.is_order_two_incoherent() && check.failing == Some(k)) {
        return Err(Error::Inconsistent(format!(
            "reflected data is not incoherent of order 2 failing at {k}: {check:?}"
        )));
    }
    Ok(partner)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn spec(v: &[(Node, i64, u32)]) -> DrinfeldSpec {
        DrinfeldSpec::new(v.iter().map(|&(i, r, m)| KrString::new(i, r, m)).collect()).unwrap()
    }

    #[test]
    fn p_values() {
        let a2 = Diagram::a(2).unwrap();
        let o = MonotonicOrder::between(&a2, 1, 2).unwrap();
        let lam = Weight::from_coords(vec![1, 1]);
        assert_eq!(o.p_value(&lam, 1, 2).unwrap(), 3);
        assert_eq!(o.p_value(&lam, 2, 1).unwrap(), 3);
        assert_eq!(o.p_value(&lam, 1, 1).unwrap(), 0);
        let a3 = Diagram::a(3).unwrap();
        let o = MonotonicOrder::between(&a3, 1, 3).unwrap();
        let lam = Weight::from_coords(vec![2, 0, 1]);
        assert_eq!(o.p_value(&lam, 1, 3).unwrap(), 5);
    }

    #[test]
    fn monotonic_orders_validate() {
        let d4 = Diagram::d(4).unwrap();
        assert!(MonotonicOrder::from_nodes(&d4, vec![1, 2, 4]).is_ok());
        assert!(MonotonicOrder::from_nodes(&d4, vec![1, 3]).is_err());
        assert_eq!(MonotonicOrder::between(&d4, 3, 4).unwrap().nodes(), &[3, 2, 4]);
    }

    #[test]
    fn type_a_minimality() {
        let a2 = Diagram::a(2).unwrap();
        let o = MonotonicOrder::between(&a2, 1, 2).unwrap();
        // Y[1,0,1] has centre 0; Y[2,r,1] has centre r.
        assert_eq!(is_minimal_a(&o, &spec(&[(1, 0, 1), (2, 3, 1)]), 2).unwrap(), AMinimality::Increasing);
        assert_eq!(is_minimal_a(&o, &spec(&[(1, 0, 1), (2, -3, 1)]), 2).unwrap(), AMinimality::Decreasing);
        assert_eq!(is_minimal_a(&o, &spec(&[(1, 0, 1), (2, 1, 1)]), 2).unwrap(), AMinimality::No);
        assert_eq!(is_minimal_a(&o, &spec(&[(2, 7, 4)]), 2).unwrap(), AMinimality::Both);
        assert_eq!(is_minimal_a(&o.reversed(), &spec(&[(1, 0, 1), (2, 3, 1)]), 2).unwrap(), AMinimality::Decreasing);
    }

    #[test]
    fn minimal_data_matches_closed_form() {
        let a4 = Diagram::a(4).unwrap();
        let o = MonotonicOrder::between(&a4, 1, 4).unwrap();
        let lam = Weight::from_coords(vec![2, 0, 1, 3]);
        for eps in [-1i64, 1] {
            let strings: Vec<KrString> = [1, 3, 4]
                .iter()
                .map(|&i| KrString::with_center(i, eps * o.p_value(&lam, i, 4).unwrap(), lam.at(i) as u32))
                .collect();
            let s = DrinfeldSpec::new(strings).unwrap();
            let expected = if eps == 1 { AMinimality::Decreasing } else { AMinimality::Increasing };
            assert_eq!(is_minimal_a(&o, &s, 4).unwrap(), expected);
        }
    }

    fn d4_coherent(r_k: i64) -> DrinfeldSpec {
        // k = 1, lengths 1, r_l = r_k + 2λ_k + d(k, l).
        spec(&[(1, r_k, 1), (3, r_k + 4, 1), (4, r_k + 4, 1)])
    }

    fn d4_incoherent() -> DrinfeldSpec {
        // l = 3, m = 4: r_3 = r_1 + 4 and r_1 = r_4 + 4.
        spec(&[(4, 0, 1), (1, 4, 1), (3, 8, 1)])
    }

    #[test]
    fn d4_examples() {
        let d4 = Diagram::d(4).unwrap();
        let c = classify(&d4, &d4_coherent(0)).unwrap();
        assert!(c.preminimal);
        assert_eq!(c.mo, 2);
        assert_eq!(c.failing, Some(1));
        assert_eq!(c.coherence, Coherence::Coherent);
        let i = classify(&d4, &d4_incoherent()).unwrap();
        assert_eq!(i.mo, 2);
        assert_eq!(i.failing, Some(1));
        assert_eq!(i.coherence, Coherence::Incoherent);
        let single = classify(&d4, &spec(&[(1, 0, 3)])).unwrap();
        assert_eq!(single.mo, 3);
        assert_eq!(single.coherence, Coherence::NotApplicable);
    }

    #[test]
    fn orientation_does_not_matter() {
        let d4 = Diagram::d(4).unwrap();
        for s in [d4_coherent(3), d4_incoherent()] {
            let a = classify_oriented(&d4, &s, Orientation::AwayFromFailing).unwrap();
            let b = classify_oriented(&d4, &s, Orientation::TowardFailing).unwrap();
            assert_eq!(a.coherence, b.coherence);
        }
    }

    #[test]
    fn partner_of_d4_coherent() {
        let d4 = Diagram::d(4).unwrap();
        let w = d4_coherent(0);
        let p = incoherent_partner(&d4, &w, 1, 4).unwrap();
        assert_eq!(p.weight(4), w.weight(4));
        assert_eq!(p.restrict(Subdiagram::from_nodes([1, 2, 3])), w.restrict(Subdiagram::from_nodes([1, 2, 3])));
        let c = classify(&d4, &p).unwrap();
        assert_eq!(c.coherence, Coherence::Incoherent);
        assert_eq!(c.failing, Some(1));
        assert_eq!(reflect_branch(&d4, &p, 4, 1).unwrap(), w);
        assert!(incoherent_partner(&d4, &p, 1, 4).is_err());
        assert!(incoherent_partner(&d4, &w, 3, 4).is_err());
        assert!(incoherent_partner(&d4, &w, 1, 1).is_err());
    }

    #[test]
    fn partner_rejects_two_support_nodes_on_failing_branch() {
        let d5 = Diagram::d(5).unwrap();
        // λ = ω1 + ω2 + ω4 + ω5 with k = 1 and a coherent increasing pattern.
        let lam = Weight::from_coords(vec![1, 1, 0, 1, 1]);
        let o = MonotonicOrder::between(&d5, 1, 4).unwrap();
        let o2 = MonotonicOrder::between(&d5, 1, 5).unwrap();
        let mut strings = Vec::new();
        for i in [1, 2, 4] {
            strings.push(KrString::with_center(i, o.p_value(&lam, 1, i).unwrap(), 1));
        }
        strings.push(KrString::with_center(5, o2.p_value(&lam, 1, 5).unwrap(), 1));
        let s = DrinfeldSpec::new(strings).unwrap();
        let c = classify(&d5, &s).unwrap();
        assert!(c.is_order_two_coherent(), "{c:?}");
        assert!(incoherent_partner(&d5, &s, 1, 4).is_err());
    }
}
