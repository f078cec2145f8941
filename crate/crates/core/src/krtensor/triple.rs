use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::dynkin::{Diagram, Node, Subdiagram, Weight};
use crate::error::{Error, Result};
use crate::kostant::BranchFamily;
use crate::lweight::{DrinfeldSpec, KrString, LMonomial};
use crate::minclass::{classify, Coherence};

use super::fragment::kr_fragment;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TripleMode {
    Coherent,
    Incoherent,
}

impl fmt::Display for TripleMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TripleMode::Coherent => "coherent",
            TripleMode::Incoherent => "incoherent",
        })
    }
}

/// Three KR strings, one on each boundary node of a D/E diagram, placed so
/// that the product is preminimal of order two and fails minimality at `k`.
///
/// Coherent mode: `r_l = r_k + 2λ_k + d(k,l)` for both `l ≠ k`.
/// Incoherent mode: `r_l = r_k + 2λ_k + d(k,l)` and `r_k = r_m + 2λ_m + d(k,m)`
/// for the unique labelling of the other two nodes as `l`, `m`. Here `λ_k`
/// may be zero, with `r_k` still carried.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "RawTriple", into = "RawTriple")]
pub struct TripleConfig {
    diagram: Diagram,
    mode: TripleMode,
    k: Node,
    l: Node,
    m: Node,
    strings: BTreeMap<Node, KrString>,
}

#[derive(Serialize, Deserialize)]
struct RawTriple {
    diagram: Diagram,
    mode: TripleMode,
    k: Node,
    strings: Vec<KrString>,
}

impl TryFrom<RawTriple> for TripleConfig {
    type Error = Error;

    fn try_from(raw: RawTriple) -> Result<Self> {
        TripleConfig::new(&raw.diagram, raw.mode, raw.k, raw.strings)
    }
}

impl From<TripleConfig> for RawTriple {
    fn from(c: TripleConfig) -> Self {
        RawTriple { diagram: c.diagram, mode: c.mode, k: c.k, strings: c.strings.into_values().collect() }
    }
}

/// Label of a dominant ℓ-weight of the triple tensor product.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum DominantLabel {
    #[serde(rename = "omega")]
    Top,
    #[serde(rename = "omega_l")]
    OmegaL,
    #[serde(rename = "omega_m")]
    OmegaM,
    #[serde(rename = "omega'")]
    Prime,
    #[serde(rename = "omega''")]
    Second,
}

impl fmt::Display for DominantLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DominantLabel::Top => "omega",
            DominantLabel::OmegaL => "omega_l",
            DominantLabel::OmegaM => "omega_m",
            DominantLabel::Prime => "omega'",
            DominantLabel::Second => "omega''",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NamedLWeight {
    pub label: DominantLabel,
    pub monomial: LMonomial,
    pub family: BranchFamily,
}

/// Dominant ℓ-weights of the tensor product in the window of weights at or
/// above `ν = λ - ϑ_I`, together with the size of the window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TripleAnalysis {
    /// Number of part triples.
    pub families: usize,
    /// Number of distinct monomials they produce.
    pub distinct: usize,
    pub injective: bool,
    pub dominant: Vec<NamedLWeight>,
}

impl TripleAnalysis {
    pub fn get(&self, label: DominantLabel) -> Option<&NamedLWeight> {
        self.dominant.iter().find(|w| w.label == label)
    }
}

fn leaf_neighbor_of_centre(d: &Diagram, centre: Node, leaf: Node) -> Node {
    d.half_open_path(centre, leaf)[0]
}

fn string(i: Node, r: i64, len: i64) -> LMonomial {
    debug_assert!(len >= 0);
    LMonomial::string(i, r, len.max(0) as u32)
}

impl TripleConfig {
    pub fn new(d: &Diagram, mode: TripleMode, k: Node, strings: Vec<KrString>) -> Result<Self> {
        d.require_trivalent()?;
        d.check_node(k)?;
        let leaves = d.boundary_nodes();
        if !leaves.contains(&k) {
            return Err(Error::Precondition(format!("{k} is not a boundary node of {d}")));
        }
        let mut map = BTreeMap::new();
        for s in strings {
            d.check_node(s.node)?;
            if !leaves.contains(&s.node) {
                return Err(Error::Precondition(format!("string at interior node {}", s.node)));
            }
            if map.insert(s.node, s).is_some() {
                return Err(Error::Precondition(format!("node {} carries two strings", s.node)));
            }
        }
        if map.len() != 3 {
            return Err(Error::Precondition(format!("expected a string on each of {leaves:?}")));
        }
        for s in map.values() {
            if s.m == 0 && !(mode == TripleMode::Incoherent && s.node == k) {
                return Err(Error::Precondition(format!("string at {} has length 0", s.node)));
            }
        }
        let others: Vec<Node> = leaves.iter().copied().filter(|&b| b != k).collect();
        let r = |i: Node| map[&i].r;
        let lam = |i: Node| map[&i].m as i64;
        let dist = |i: Node, j: Node| d.distance(i, j) as i64;
        let above_k = |l: Node| r(l) == r(k) + 2 * lam(k) + dist(k, l);
        let (l, m) = match mode {
            TripleMode::Coherent => {
                if !others.iter().all(|&l| above_k(l)) {
                    return Err(Error::Precondition(format!(
                        "coherent strings need r_l = r_k + 2λ_k + d(k,l) for l in {others:?}"
                    )));
                }
                let resonant = |l: Node, m: Node| {
                    let gap = r(l) + 2 * lam(l) + dist(l, m) - r(m);
                    gap >= 0 && gap % 2 == 0 && gap / 2 < lam(m)
                };
                if resonant(others[1], others[0]) && !resonant(others[0], others[1]) {
                    (others[1], others[0])
                } else {
                    (others[0], others[1])
                }
            }
            TripleMode::Incoherent => {
                let fits = |l: Node, m: Node| above_k(l) && r(k) == r(m) + 2 * lam(m) + dist(k, m);
                if fits(others[0], others[1]) {
                    (others[0], others[1])
                } else if fits(others[1], others[0]) {
                    (others[1], others[0])
                } else {
                    return Err(Error::Precondition(
                        "incoherent strings need r_l = r_k + 2λ_k + d(k,l) and r_k = r_m + 2λ_m + d(k,m)".into(),
                    ));
                }
            }
        };
        Ok(TripleConfig { diagram: d.clone(), mode, k, l, m, strings: map })
    }

    /// Coherent strings with `λ` supported on the boundary and `r_k` given.
    pub fn coherent(d: &Diagram, k: Node, lambda: &Weight, r_k: i64) -> Result<Self> {
        d.check_weight(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::Precondition(format!("{lambda} is not dominant")));
        }
        let mut strings = vec![KrString::new(k, r_k, lambda.at(k) as u32)];
        for b in d.boundary_nodes().into_iter().filter(|&b| b != k) {
            let r = r_k + 2 * lambda.at(k) + d.distance(k, b) as i64;
            strings.push(KrString::new(b, r, lambda.at(b) as u32));
        }
        TripleConfig::new(d, TripleMode::Coherent, k, strings)
    }

    /// Incoherent strings with `λ` supported on the boundary and `r_m` given.
    pub fn incoherent(d: &Diagram, k: Node, l: Node, lambda: &Weight, r_m: i64) -> Result<Self> {
        d.check_weight(lambda)?;
        if !lambda.is_dominant() {
            return Err(Error::Precondition(format!("{lambda} is not dominant")));
        }
        let m = d
            .boundary_nodes()
            .into_iter()
            .find(|&b| b != k && b != l)
            .ok_or_else(|| Error::Precondition(format!("{k} and {l} must be distinct boundary nodes")))?;
        let r_k = r_m + 2 * lambda.at(m) + d.distance(k, m) as i64;
        let r_l = r_k + 2 * lambda.at(k) + d.distance(k, l) as i64;
        let strings = vec![
            KrString::new(m, r_m, lambda.at(m) as u32),
            KrString::new(k, r_k, lambda.at(k) as u32),
            KrString::new(l, r_l, lambda.at(l) as u32),
        ];
        TripleConfig::new(d, TripleMode::Incoherent, k, strings)
    }

    /// Read a configuration off Drinfeld data supported on the boundary,
    /// mirroring all centres when the data is in the opposite orientation.
    pub fn from_spec(d: &Diagram, spec: &DrinfeldSpec) -> Result<Self> {
        d.require_trivalent()?;
        spec.check(d)?;
        let leaves = Subdiagram::from_nodes(d.boundary_nodes());
        if spec.support() != leaves {
            return Err(Error::Precondition(format!(
                "data must be supported exactly on the boundary {leaves}, got {}",
                spec.support()
            )));
        }
        let cls = classify(d, spec)?;
        let mode = match (cls.preminimal && cls.mo == 2, cls.coherence) {
            (true, Coherence::Coherent) => TripleMode::Coherent,
            (true, Coherence::Incoherent) => TripleMode::Incoherent,
            _ => {
                return Err(Error::Precondition(format!(
                    "data is not preminimal of order 2 (mo = {}, {})",
                    cls.mo, cls.coherence
                )))
            }
        };
        let k = cls.failing.expect("order two has a failing node");
        for candidate in [spec.clone(), spec.negate_centers()] {
            if let Ok(cfg) = TripleConfig::new(d, mode, k, candidate.strings().to_vec()) {
                return Ok(cfg);
            }
        }
        Err(Error::Inconsistent(format!("{mode} data {spec} fits neither orientation")))
    }

    pub fn diagram(&self) -> &Diagram {
        &self.diagram
    }

    pub fn mode(&self) -> TripleMode {
        self.mode
    }

    pub fn k(&self) -> Node {
        self.k
    }

    pub fn l(&self) -> Node {
        self.l
    }

    pub fn m(&self) -> Node {
        self.m
    }

    pub fn string(&self, i: Node) -> Option<&KrString> {
        self.strings.get(&i)
    }

    pub fn strings(&self) -> impl Iterator<Item = &KrString> {
        self.strings.values()
    }

    fn r(&self, i: Node) -> i64 {
        self.strings[&i].r
    }

    fn lam(&self, i: Node) -> i64 {
        self.strings[&i].m as i64
    }

    fn dist(&self, i: Node, j: Node) -> i64 {
        self.diagram.distance(i, j) as i64
    }

    fn centre(&self) -> Node {
        self.diagram.trivalent().expect("validated on construction")
    }

    /// `x_*`, the neighbour of `i_*` on the branch towards `x`.
    pub fn star(&self, x: Node) -> Node {
        leaf_neighbor_of_centre(&self.diagram, self.centre(), x)
    }

    pub fn weight(&self) -> Weight {
        let mut w = Weight::zero(self.diagram.rank());
        for s in self.strings.values() {
            w.set(s.node, s.m as i64);
        }
        w
    }

    pub fn to_spec(&self) -> DrinfeldSpec {
        DrinfeldSpec::new(self.strings.values().copied().filter(|s| s.m > 0).collect())
            .expect("strings sit on distinct nodes")
    }

    pub fn omega(&self) -> LMonomial {
        self.strings.values().map(KrString::monomial).product()
    }

    /// `ν = λ - ϑ_I`.
    pub fn nu(&self) -> Weight {
        self.weight() - self.diagram.to_weight(&self.diagram.theta(self.diagram.all()))
    }

    /// `ν_k = λ - ϑ_{I_k}`.
    pub fn nu_k(&self) -> Result<Weight> {
        Ok(self.weight() - self.diagram.to_weight(&self.diagram.theta(self.diagram.leaf_complement(self.k)?)))
    }

    /// `ω(J) = Π Y[i,r_i,λ_i](J_i)`.
    pub fn omega_of(&self, fam: &BranchFamily) -> Result<LMonomial> {
        let mut out = LMonomial::one();
        for s in self.strings.values() {
            let part = fam.part(s.node);
            if s.m == 0 {
                if !part.is_empty() {
                    return Err(Error::Precondition(format!("node {} carries no string", s.node)));
                }
                continue;
            }
            out *= kr_fragment(&self.diagram, s.node, s.r, s.m, part)?.monomial;
        }
        Ok(out)
    }

    /// All triples `(J_i)` of pairwise disjoint connected parts, each empty
    /// or containing its index; parts at a zero-length string stay empty.
    pub fn families(&self) -> Vec<BranchFamily> {
        let d = &self.diagram;
        let nodes: Vec<Node> = self.strings.keys().copied().collect();
        let options: Vec<Vec<Subdiagram>> = nodes
            .iter()
            .map(|&i| {
                let mut opts = vec![Subdiagram::EMPTY];
                if self.strings[&i].m > 0 {
                    opts.extend(d.connected_containing(i, d.all()));
                }
                opts
            })
            .collect();
        let mut out = Vec::new();
        let mut chosen = vec![Subdiagram::EMPTY; nodes.len()];
        fn walk(
            options: &[Vec<Subdiagram>],
            idx: usize,
            used: Subdiagram,
            chosen: &mut [Subdiagram],
            emit: &mut dyn FnMut(&[Subdiagram]),
        ) {
            if idx == options.len() {
                emit(chosen);
                return;
            }
            for &j in &options[idx] {
                if j.is_disjoint(used) {
                    chosen[idx] = j;
                    walk(options, idx + 1, used.union(j), chosen, emit);
                }
            }
            chosen[idx] = Subdiagram::EMPTY;
        }
        walk(&options, 0, Subdiagram::EMPTY, &mut chosen, &mut |parts| {
            out.push(BranchFamily { parts: nodes.iter().copied().zip(parts.iter().copied()).collect() });
        });
        out
    }

    fn family(&self, owner: Node, part: Subdiagram) -> BranchFamily {
        BranchFamily {
            parts: self.strings.keys().map(|&i| (i, if i == owner { part } else { Subdiagram::EMPTY })).collect(),
        }
    }

    /// In coherent mode, the `p` with `r_l + 2λ_l + d(l,m) = r_m + 2p` and
    /// `0 <= p < λ_m`, if any.
    pub fn resonance(&self) -> Option<i64> {
        if self.mode != TripleMode::Coherent {
            return None;
        }
        let (l, m) = (self.l, self.m);
        let gap = self.r(l) + 2 * self.lam(l) + self.dist(l, m) - self.r(m);
        (gap >= 0 && gap % 2 == 0 && gap / 2 < self.lam(m)).then_some(gap / 2)
    }

    /// The labels expected among the dominant ℓ-weights, with the part
    /// triple producing each.
    pub fn expected(&self) -> Result<Vec<(DominantLabel, BranchFamily)>> {
        let d = &self.diagram;
        let (k, l, m) = (self.k, self.l, self.m);
        let mut out = vec![(DominantLabel::Top, self.family(k, Subdiagram::EMPTY))];
        match self.mode {
            TripleMode::Incoherent => {
                if self.lam(k) > 0 {
                    out.push((DominantLabel::OmegaL, self.family(m, d.leaf_complement(l)?)));
                    out.push((DominantLabel::OmegaM, self.family(k, d.leaf_complement(m)?)));
                }
            }
            TripleMode::Coherent => {
                out.push((DominantLabel::OmegaL, self.family(k, d.leaf_complement(l)?)));
                out.push((DominantLabel::OmegaM, self.family(k, d.leaf_complement(m)?)));
                out.push((DominantLabel::Prime, self.family(k, d.all())));
                if self.resonance().is_some() {
                    out.push((DominantLabel::Second, self.family(l, d.leaf_complement(k)?)));
                }
            }
        }
        Ok(out)
    }

    /// Explicit string products for the labelled dominant ℓ-weights.
    pub fn closed_form(&self, label: DominantLabel) -> Option<LMonomial> {
        let (k, l, m) = (self.k, self.l, self.m);
        let (r, lam) = (|i| self.r(i), |i| self.lam(i));
        let centre = self.centre();
        let out = match (self.mode, label) {
            (_, DominantLabel::Top) => self.omega(),
            (TripleMode::Incoherent, _) if lam(k) == 0 => return None,
            (TripleMode::Incoherent, DominantLabel::OmegaL) => {
                let ls = self.star(l);
                string(m, r(m), lam(m) - 1)
                    * string(k, r(k) + 2, lam(k) - 1)
                    * string(l, r(l), lam(l))
                    * LMonomial::y(ls, r(m) + 2 * (lam(m) - 1) + self.dist(ls, m))
            }
            (TripleMode::Incoherent, DominantLabel::OmegaM) => {
                let ms = self.star(m);
                string(m, r(m), lam(m))
                    * string(k, r(k), lam(k) - 1)
                    * string(l, r(l) + 2, lam(l) - 1)
                    * LMonomial::y(ms, r(k) + 2 * (lam(k) - 1) + self.dist(ms, k))
            }
            (TripleMode::Coherent, DominantLabel::OmegaL | DominantLabel::OmegaM) => {
                let (a, b) = if label == DominantLabel::OmegaL { (l, m) } else { (m, l) };
                let astar = self.star(a);
                string(k, r(k), lam(k) - 1)
                    * string(b, r(b) + 2, lam(b) - 1)
                    * string(a, r(a), lam(a))
                    * LMonomial::y(astar, r(a) - 2 - self.dist(a, astar))
            }
            (TripleMode::Coherent, DominantLabel::Prime) => {
                string(k, r(k), lam(k) - 1)
                    * LMonomial::y(centre, r(k) + 2 * lam(k) + self.dist(centre, k))
                    * string(l, r(l) + 2, lam(l) - 1)
                    * string(m, r(m) + 2, lam(m) - 1)
            }
            (TripleMode::Coherent, DominantLabel::Second) => {
                let p = self.resonance()?;
                let ks = self.star(k);
                string(k, r(k), lam(k))
                    * LMonomial::y(ks, r(l) + 2 * (lam(l) - 1) + self.dist(ks, l))
                    * string(l, r(l), lam(l) - 1)
                    * string(m, r(m), p)
                    * string(m, r(m) + 2 * (p + 1), lam(m) - p - 1)
            }
            _ => return None,
        };
        Some(out)
    }
}

/// Enumerate every part triple, form `ω(J)`, keep the dominant ones and
/// match them against the expected labelled list and its closed forms.
///
/// Any dominant monomial outside the expected list, a missing expected
/// label, or a closed form disagreeing with the enumeration is reported as
/// an internal inconsistency.
pub fn triple_dominant_lweights(cfg: &TripleConfig) -> Result<TripleAnalysis> {
    let families = cfg.families();
    let mut by_monomial: BTreeMap<LMonomial, Vec<BranchFamily>> = BTreeMap::new();
    for fam in &families {
        by_monomial.entry(cfg.omega_of(fam)?).or_default().push(fam.clone());
    }
    let expected = cfg.expected()?;
    let mut dominant = Vec::new();
    for (mono, fams) in by_monomial.iter().filter(|(mono, _)| mono.is_dominant()) {
        let hit = expected.iter().find(|(_, fam)| fams.contains(fam)).ok_or_else(|| {
            Error::Inconsistent(format!("unexpected dominant ℓ-weight {mono} from {:?}", fams[0].parts))
        })?;
        dominant.push(NamedLWeight { label: hit.0, monomial: mono.clone(), family: hit.1.clone() });
    }
    dominant.sort_by_key(|w| w.label);
    for (label, _) in &expected {
        let found = dominant
            .iter()
            .find(|w| w.label == *label)
            .ok_or_else(|| Error::Inconsistent(format!("{label} is missing from the dominant ℓ-weights")))?;
        if let Some(closed) = cfg.closed_form(*label) {
            if closed != found.monomial {
                return Err(Error::Inconsistent(format!(
                    "{label}: enumeration gives {}, closed form gives {closed}",
                    found.monomial
                )));
            }
        }
    }
    Ok(TripleAnalysis {
        families: families.len(),
        distinct: by_monomial.len(),
        injective: by_monomial.len() == families.len(),
        dominant,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn boundary_weight(d: &Diagram, vals: &[(Node, i64)]) -> Weight {
        let mut w = Weight::zero(d.rank());
        for &(i, v) in vals {
            w.set(i, v);
        }
        w
    }

    #[test]
    fn incoherent_d4_example() {
        let d = Diagram::d(4).unwrap();
        let lam = boundary_weight(&d, &[(1, 1), (3, 1), (4, 1)]);
        let cfg = TripleConfig::incoherent(&d, 1, 3, &lam, 0).unwrap();
        assert_eq!(cfg.string(1).unwrap().r, 4);
        assert_eq!(cfg.string(3).unwrap().r, 8);
        let a = triple_dominant_lweights(&cfg).unwrap();
        let labels: Vec<DominantLabel> = a.dominant.iter().map(|w| w.label).collect();
        assert_eq!(labels, vec![DominantLabel::Top, DominantLabel::OmegaL, DominantLabel::OmegaM]);
        assert!(a.injective);
    }

    #[test]
    fn coherent_d4_example() {
        let d = Diagram::d(4).unwrap();
        let lam = boundary_weight(&d, &[(1, 1), (3, 1), (4, 1)]);
        let cfg = TripleConfig::coherent(&d, 1, &lam, 0).unwrap();
        let a = triple_dominant_lweights(&cfg).unwrap();
        let prime = a.get(DominantLabel::Prime).unwrap();
        assert_eq!(prime.monomial, LMonomial::y(2, 3));
        assert_eq!(a.get(DominantLabel::Second).is_some(), cfg.resonance().is_some());
    }

    #[test]
    fn spec_round_trip_and_orientation() {
        let d = Diagram::d(5).unwrap();
        let lam = boundary_weight(&d, &[(1, 2), (4, 1), (5, 3)]);
        let cfg = TripleConfig::incoherent(&d, 4, 1, &lam, -3).unwrap();
        let back = TripleConfig::from_spec(&d, &cfg.to_spec()).unwrap();
        assert_eq!(back, cfg);
        let mirrored = TripleConfig::from_spec(&d, &cfg.to_spec().negate_centers()).unwrap();
        assert_eq!(mirrored.mode(), TripleMode::Incoherent);
        assert_eq!((mirrored.k(), mirrored.l(), mirrored.m()), (4, 5, 1));
        let json = serde_json::to_string(&cfg).unwrap();
        let parsed: TripleConfig = serde_json::from_str(&json).unwrap();
        assert_eq!(parsed, cfg);
    }

    #[test]
    fn zero_length_failing_string() {
        for d in [Diagram::d(4).unwrap(), Diagram::d(5).unwrap(), Diagram::e(6).unwrap()] {
            let leaves = d.boundary_nodes();
            for &k in &leaves {
                for &l in leaves.iter().filter(|&&l| l != k) {
                    for (a, b) in [(1, 1), (2, 3), (3, 1)] {
                        let m = leaves.iter().copied().find(|&x| x != k && x != l).unwrap();
                        let w = boundary_weight(&d, &[(l, a), (m, b)]);
                        let cfg = TripleConfig::incoherent(&d, k, l, &w, 0).unwrap();
                        let an = triple_dominant_lweights(&cfg).unwrap();
                        assert_eq!(an.dominant.len(), 1, "{d} k={k} l={l}");
                        assert!(an.injective);
                    }
                }
            }
        }
    }

    #[test]
    fn invalid_relations_rejected() {
        let d = Diagram::d(4).unwrap();
        let strings = vec![KrString::new(1, 0, 1), KrString::new(3, 4, 1), KrString::new(4, 5, 1)];
        assert!(TripleConfig::new(&d, TripleMode::Coherent, 1, strings).is_err());
    }
}
