use serde::{Deserialize, Serialize};

use crate::dynkin::{Diagram, DiagramKind, Node, Subdiagram, Weight};
use crate::error::{Error, Result};
use crate::lweight::DrinfeldSpec;
use crate::minclass::{classify, incoherent_partner, is_minimal_a, AMinimality, MonotonicOrder};

use super::criteria::{tpa_reducible, tpd_irreducible_sufficient, TpaWitness};
use super::replay::{replay_outer, ReplayReport};
use super::triple::{triple_dominant_lweights, NamedLWeight, TripleConfig, TripleMode};

/// Side conditions under which the comparison is certified.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Hypothesis {
    /// The diagram is of type D.
    TypeD,
    /// The hull of the marked nodes is `D_4` and `d(k, i_*) > 1`.
    HullD4,
    /// The diagram is `E_6` and `supp(λ)` is the boundary.
    E6Boundary,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CertificateConfig {
    pub diagram: Diagram,
    pub spec: DrinfeldSpec,
    pub partner: DrinfeldSpec,
    pub k: Node,
    pub l: Node,
    pub m: Node,
    pub hull: Subdiagram,
    pub hypotheses: Vec<Hypothesis>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairOfDominant {
    pub coherent: Vec<NamedLWeight>,
    pub incoherent: Vec<NamedLWeight>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairOfReplays {
    pub coherent: ReplayReport,
    pub incoherent: ReplayReport,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PairOfXi {
    pub coherent: i64,
    pub incoherent: i64,
}

/// Which of the two data a tensor check refers to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Coherent,
    Incoherent,
}

/// One irreducibility check on a subdiagram `J_μ`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum TensorCheck {
    TypeA { side: Side, part: Subdiagram, rank: usize, lambda: Weight, s: i64, eta: u32, witness: Option<TpaWitness> },
    TypeD { side: Side, part: Subdiagram, rank: usize, both_spin: bool, exponent: i64, irreducible: bool },
}

impl TensorCheck {
    pub fn irreducible(&self) -> bool {
        match self {
            TensorCheck::TypeA { witness, .. } => witness.is_none(),
            TensorCheck::TypeD { irreducible, .. } => *irreducible,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum Verdict {
    /// `m_ν` of the coherent module exceeds that of the incoherent one and
    /// every tensor check is irreducible.
    Strict { coherent_m_nu: i64, incoherent_m_nu: i64 },
    Failed { reason: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub config: CertificateConfig,
    pub dominant_lweights: PairOfDominant,
    pub dims: PairOfReplays,
    pub xi: PairOfXi,
    pub tensor_checks: Vec<TensorCheck>,
    pub verdict: Verdict,
    pub citations: Vec<String>,
}

impl Certificate {
    pub fn is_strict(&self) -> bool {
        matches!(self.verdict, Verdict::Strict { .. })
    }
}

fn hypothesis(msg: String) -> Error {
    Error::Hypothesis(msg)
}

/// The default `m`: the boundary node other than `k` closest to `i_*`,
/// smaller label on ties.
pub fn default_leaf(d: &Diagram, k: Node) -> Result<Node> {
    let centre = d.require_trivalent()?;
    d.boundary_nodes()
        .into_iter()
        .filter(|&b| b != k)
        .min_by_key(|&b| (d.distance(b, centre), b))
        .ok_or_else(|| Error::Precondition(format!("{d} has no boundary node other than {k}")))
}

/// Certify that coherent preminimal data of order two has a strictly larger
/// outer multiplicity at `ν` than its incoherent partner, with the tensor
/// factorisations on the lower subdiagrams shown irreducible for both.
pub fn theorem_main_check(d: &Diagram, spec: &DrinfeldSpec, m: Option<Node>) -> Result<Certificate> {
    let centre = d.require_trivalent()?;
    spec.check(d)?;
    let cls = classify(d, spec)?;
    if !cls.preminimal || cls.mo != 2 {
        return Err(hypothesis(format!("data must be preminimal of order 2 (preminimal = {}, mo = {})", cls.preminimal, cls.mo)));
    }
    if !cls.is_order_two_coherent() {
        return Err(hypothesis(format!("data must be coherent, got {}", cls.coherence)));
    }
    let k = cls.failing.expect("order two has a failing node");
    let lambda = spec.weight(d.rank());
    let supp = lambda.support();
    let on_k = supp.intersection(d.interval(centre, k)).len();
    if on_k != 1 {
        return Err(hypothesis(format!("#(supp(λ) ∩ [i_*, k]) = 1 fails: found {on_k}")));
    }
    if supp.contains(centre) {
        return Err(hypothesis(format!("i_* = {centre} must lie outside supp(λ)")));
    }
    let marks = d.lambda_marks(&lambda)?;
    for (&b, &mark) in &marks.marks {
        if !supp.contains(mark) {
            return Err(Error::Precondition(format!("branch towards {b} carries no support")));
        }
    }
    let (hull_d, hull_map) = d.induced(marks.hull)?;
    let mut hypotheses = Vec::new();
    if d.kind() == DiagramKind::D {
        hypotheses.push(Hypothesis::TypeD);
    }
    if hull_d.kind() == DiagramKind::D && hull_d.rank() == 4 && d.distance(k, centre) > 1 {
        hypotheses.push(Hypothesis::HullD4);
    }
    if d.kind() == DiagramKind::E && d.rank() == 6 && supp == Subdiagram::from_nodes(d.boundary_nodes()) {
        hypotheses.push(Hypothesis::E6Boundary);
    }
    if hypotheses.is_empty() {
        return Err(hypothesis(
            "none of: type D; hull of type D4 with d(k, i_*) > 1; E6 with supp(λ) on the boundary".into(),
        ));
    }

    let m = match m {
        Some(m) => m,
        None => default_leaf(d, k)?,
    };
    d.check_node(m)?;
    if m == k || !d.boundary_nodes().contains(&m) {
        return Err(Error::Precondition(format!("{m} is not a boundary node other than {k}")));
    }
    if supp.intersection(d.interval(centre, m)) != Subdiagram::single(m) {
        return Err(Error::Precondition(format!("supp(λ) must meet [i_*, {m}] only in {m}")));
    }
    let l = d.boundary_nodes().into_iter().find(|&b| b != k && b != m).expect("three boundary nodes");
    let partner = incoherent_partner(d, spec, k, m)?;

    let pull = |s: &DrinfeldSpec| s.pull_back(&hull_map);
    let coh_cfg = TripleConfig::from_spec(&hull_d, &pull(spec))?;
    let inc_cfg = TripleConfig::from_spec(&hull_d, &pull(&partner))?;
    if coh_cfg.mode() != TripleMode::Coherent || inc_cfg.mode() != TripleMode::Incoherent {
        return Err(Error::Inconsistent("restriction to the hull changed the coherence type".into()));
    }
    let coh_dom = triple_dominant_lweights(&coh_cfg)?;
    let inc_dom = triple_dominant_lweights(&inc_cfg)?;
    let coh_rep = replay_outer(&coh_cfg)?;
    let inc_rep = replay_outer(&inc_cfg)?;

    let k_mark = marks.marks[&k];
    let l_mark = marks.marks[&l];
    let mut checks = type_a_checks(d, spec, &partner, k_mark, l_mark, l, m)?;
    if d.distance(k_mark, centre) >= 2 {
        checks.extend(type_d_checks(d, spec, &partner, k_mark, l, m)?);
    }

    let xi = PairOfXi { coherent: coh_rep.xi, incoherent: inc_rep.xi };
    let verdict = if let Some(bad) = checks.iter().find(|c| !c.irreducible()) {
        Verdict::Failed { reason: format!("tensor check not irreducible: {bad:?}") }
    } else if coh_rep.m_nu > inc_rep.m_nu {
        Verdict::Strict { coherent_m_nu: coh_rep.m_nu, incoherent_m_nu: inc_rep.m_nu }
    } else {
        Verdict::Failed { reason: format!("m_ν: coherent {} vs incoherent {}", coh_rep.m_nu, inc_rep.m_nu) }
    };
    let citations = [
        "restriction to the hull of the marked nodes",
        "dominant l-weights of triple KR tensor products",
        "two-string weight multiplicity",
        "xi replay at nu = lambda - theta_I",
        "type A tensor product criterion",
        "type D sufficient irreducibility criterion",
    ]
    .iter()
    .map(|s| s.to_string())
    .collect();
    Ok(Certificate {
        config: CertificateConfig {
            diagram: d.clone(),
            spec: spec.clone(),
            partner,
            k,
            l,
            m,
            hull: marks.hull,
            hypotheses,
        },
        dominant_lweights: PairOfDominant { coherent: coh_dom.dominant, incoherent: inc_dom.dominant },
        dims: PairOfReplays { coherent: coh_rep, incoherent: inc_rep },
        xi,
        tensor_checks: checks,
        verdict,
        citations,
    })
}

/// `J_μ = [j_l, m]` for `j_l` between `l_λ` and `l`, read as `A_n` with
/// `j_l ↦ 1` and `m ↦ n`.
fn type_a_checks(
    d: &Diagram,
    spec: &DrinfeldSpec,
    partner: &DrinfeldSpec,
    k_mark: Node,
    l_mark: Node,
    l: Node,
    m: Node,
) -> Result<Vec<TensorCheck>> {
    let centre = d.trivalent().expect("checked by caller");
    let c = |s: &DrinfeldSpec, i: Node| s.center(i).expect("support node");
    let lam = |i: Node| spec.length(i) as i64;
    let sigma = -(c(spec, l_mark) - c(spec, k_mark)).signum();
    let dist = |i: Node, j: Node| d.distance(i, j) as i64;
    let s_omega = sigma * (c(spec, m) - c(spec, l_mark));
    let s_varpi = sigma * (c(partner, m) - c(spec, l_mark));
    if s_omega != lam(l_mark) - lam(m) + dist(l_mark, centre) - dist(m, centre) {
        return Err(Error::Inconsistent(format!("shift {s_omega} for the coherent data disagrees with its closed form")));
    }
    let want = 2 * lam(k_mark) + lam(l_mark) + lam(m) + dist(m, centre) + dist(l_mark, centre) + 2 * dist(k_mark, centre);
    if s_varpi != want {
        return Err(Error::Inconsistent(format!("shift {s_varpi} for the incoherent data, expected {want}")));
    }
    let mut out = Vec::new();
    for j_l in d.path(l_mark, l) {
        let nodes = d.path(j_l, m);
        let n = nodes.len();
        let mut lambda = Weight::zero(n);
        for (t, &v) in nodes[..n - 1].iter().enumerate() {
            lambda.set(t + 1, lam(v));
        }
        let upper = &nodes[..n - 1];
        let order = MonotonicOrder::from_nodes(d, upper.to_vec())?;
        let oriented = if sigma < 0 { spec.negate_centers() } else { spec.clone() };
        let dir = is_minimal_a(&order, &oriented, d.rank())?;
        if !matches!(dir, AMinimality::Increasing | AMinimality::Both) {
            return Err(Error::Inconsistent(format!("restriction to {upper:?} is {dir:?} after orientation")));
        }
        let part = Subdiagram::from_nodes(nodes.iter().copied());
        for (side, s) in [(Side::Coherent, s_omega), (Side::Incoherent, s_varpi)] {
            let witness = tpa_reducible(n, &lambda, s, lam(m) as u32)?;
            out.push(TensorCheck::TypeA { side, part, rank: n, lambda: lambda.clone(), s, eta: lam(m) as u32, witness });
        }
    }
    Ok(out)
}

/// `J_μ = closure{j_k, l, m}` for `j_k` strictly between `i_*` and `k_λ`,
/// read as `D_n`.
fn type_d_checks(
    d: &Diagram,
    spec: &DrinfeldSpec,
    partner: &DrinfeldSpec,
    k_mark: Node,
    l: Node,
    m: Node,
) -> Result<Vec<TensorCheck>> {
    let centre = d.trivalent().expect("checked by caller");
    let supp = spec.support();
    if supp.intersection(d.interval(centre, l)) != Subdiagram::single(l) || d.distance(m, centre) != 1 {
        return Err(Error::Hypothesis(format!(
            "the lower type-D pieces need supp(λ) ∩ [i_*, {l}] = {{{l}}} and {m} adjacent to i_*"
        )));
    }
    let c = |s: &DrinfeldSpec, i: Node| s.center(i).expect("support node");
    let lam = |i: Node| spec.length(i) as i64;
    let dist = |i: Node, j: Node| d.distance(i, j) as i64;
    let t = dist(l, centre) - 1;
    let e_omega = c(spec, l) - c(spec, m);
    let e_varpi = c(spec, l) - c(partner, m);
    if e_omega.abs() != (lam(m) - lam(l) - t).abs() {
        return Err(Error::Inconsistent(format!("exponent {e_omega} disagrees with its closed form")));
    }
    if e_varpi.abs() != 2 * lam(k_mark) + lam(m) + lam(l) + 2 * dist(m, k_mark) + t {
        return Err(Error::Inconsistent(format!("exponent {e_varpi} disagrees with its closed form")));
    }
    let mut out = Vec::new();
    let between: Vec<Node> = d.half_open_path(centre, k_mark).into_iter().filter(|&v| v != k_mark).collect();
    for j_k in between {
        let part = d.closure(Subdiagram::from_nodes([j_k, l, m]));
        let (sub, map) = d.induced(part)?;
        if sub.kind() != DiagramKind::D {
            return Err(Error::Inconsistent(format!("{part} is not of type D")));
        }
        let label = |v: Node| map.iter().position(|&x| x == v).expect("node of the part") + 1;
        let (li, mi) = (label(l), label(m));
        let spin = sub.spin_nodes();
        let both_spin = spin.contains(&li) && spin.contains(&mi);
        for (side, e) in [(Side::Coherent, e_omega), (Side::Incoherent, e_varpi)] {
            let irreducible = tpd_irreducible_sufficient(sub.rank(), li, mi, (lam(l) as u32, lam(m) as u32), e)?;
            out.push(TensorCheck::TypeD { side, part, rank: sub.rank(), both_spin, exponent: e, irreducible });
        }
    }
    Ok(out)
}
