use serde::{Deserialize, Serialize};

use crate::charcalc::{freudenthal, tensor_truncated, Character64};
use crate::dynkin::{Node, Weight};
use crate::error::{Error, Result};
use crate::kostant::dim_weight_space_theta;
use crate::lweight::LMonomial;

use super::fragment::dim_two_string;
use super::triple::{triple_dominant_lweights, DominantLabel, TripleConfig, TripleMode};

/// A candidate simple factor of the triple tensor product with `ν` as a
/// weight, and the dimension of its `ν`-weight space.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorDim {
    pub label: DominantLabel,
    pub monomial: LMonomial,
    pub dim: i64,
}

/// The weight-space bookkeeping at `ν = λ - ϑ_I` for a triple
/// configuration.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReplayReport {
    pub mode: TripleMode,
    pub dim_w_nu: i64,
    pub dim_v_lambda_nu: i64,
    pub dim_v_nu_k_nu: i64,
    pub candidates: Vec<FactorDim>,
    /// Labels of the candidates that must occur as factors.
    pub factors: Vec<DominantLabel>,
    pub xi: i64,
    /// Outer multiplicity of `V(ν)` in `V(ω)`.
    pub m_nu: i64,
}

impl ReplayReport {
    pub fn factor_sum(&self) -> i64 {
        self.candidates.iter().filter(|c| self.factors.contains(&c.label)).map(|c| c.dim).sum()
    }

    /// `dim W_ν - Σ factors - dim V(λ)_ν - dim V(ν_k)_ν - ξ`, zero when the
    /// books balance.
    pub fn residual(&self) -> i64 {
        self.dim_w_nu - self.factor_sum() - self.dim_v_lambda_nu - self.dim_v_nu_k_nu - self.xi
    }
}

/// `dim W_ν` from the tensor product of the classical characters
/// `V(λ_i ω_i)`, truncated at height `rank`.
pub fn dim_tensor_at_nu(cfg: &TripleConfig) -> Result<i64> {
    let d = cfg.diagram();
    let depth = d.rank() as u32;
    let mut chars: Vec<Character64> = Vec::new();
    for s in cfg.strings() {
        let w = Weight::fundamental(d.rank(), s.node).scaled(s.m as i64);
        chars.push(freudenthal(d, &w, depth)?);
    }
    Ok(tensor_truncated(&chars)?.at(&d.theta(d.all())))
}

/// `(node, r, m)` of a single q-string.
type StringAt = (Node, i64, u32);

/// Split a candidate factor into the two strings and the dominant remainder
/// needed for the two-string count.
fn two_strings(cfg: &TripleConfig, label: DominantLabel) -> Option<(StringAt, StringAt)> {
    let d = cfg.diagram();
    let (k, l, m) = (cfg.k(), cfg.l(), cfg.m());
    let s = |i: Node| *cfg.string(i).expect("boundary string");
    let dist = |i: Node, j: Node| d.distance(i, j) as i64;
    match (cfg.mode(), label) {
        (TripleMode::Incoherent, DominantLabel::OmegaL) => {
            let ls = cfg.star(l);
            let (sm, sl) = (s(m), s(l));
            Some(((ls, sm.r + 2 * (sm.m as i64 - 1) + dist(ls, m), 1), (l, sl.r, sl.m)))
        }
        (TripleMode::Incoherent, DominantLabel::OmegaM) => {
            let ms = cfg.star(m);
            let (sm, sk) = (s(m), s(k));
            Some(((m, sm.r, sm.m), (ms, sk.r + 2 * (sk.m as i64 - 1) + dist(ms, k), 1)))
        }
        (TripleMode::Coherent, DominantLabel::OmegaL | DominantLabel::OmegaM) => {
            let a = if label == DominantLabel::OmegaL { l } else { m };
            let astar = cfg.star(a);
            let sa = s(a);
            Some(((astar, sa.r - 2 - dist(a, astar), 1), (a, sa.r, sa.m)))
        }
        _ => None,
    }
}

fn factor_dim(cfg: &TripleConfig, label: DominantLabel, monomial: &LMonomial) -> Result<i64> {
    let d = cfg.diagram();
    if monomial.weight(d.rank()) == cfg.nu() {
        return Ok(1);
    }
    let ((i, ri, mi), (j, rj, mj)) = two_strings(cfg, label)
        .ok_or_else(|| Error::Inconsistent(format!("no two-string split known for {label}")))?;
    let pair = LMonomial::string(i, ri, mi) * LMonomial::string(j, rj, mj);
    let rest = monomial * &pair.inverse();
    if !(rest.is_one() || rest.is_dominant()) {
        return Err(Error::Inconsistent(format!("{label} = {monomial} does not contain {pair}")));
    }
    Ok(dim_two_string(d, i, j, (ri, mi), (rj, mj), &rest)? as i64)
}

/// Replay the weight-space count at `ν` and solve for `ξ`.
///
/// The candidate factors are the dominant ℓ-weights other than `ω` itself
/// and, in the coherent case, `ω''` (which lies in `V(ω)`). Each occurs at
/// most once, so the factors present and `ξ ∈ {0,1}` are the unique solution
/// of `Σ dims + ξ = dim W_ν - dim V(λ)_ν - dim V(ν_k)_ν`.
pub fn replay_outer(cfg: &TripleConfig) -> Result<ReplayReport> {
    let d = cfg.diagram();
    let lambda = cfg.weight();
    if lambda.support().len() != 3 {
        return Err(Error::Precondition("replay needs all three boundary strings of positive length".into()));
    }
    let centre = d.require_trivalent()?;
    let dim_w_nu = dim_tensor_at_nu(cfg)?;
    let dim_v_lambda_nu = dim_weight_space_theta(d, &lambda, d.all())? as i64;
    let dim_v_nu_k_nu = d.distance(centre, cfg.k()) as i64;

    let n = d.rank() as i64;
    if dim_w_nu - dim_v_lambda_nu != n + 1 {
        return Err(Error::Inconsistent(format!(
            "dim W_ν - dim V(λ)_ν = {} but the rank count gives {}",
            dim_w_nu - dim_v_lambda_nu,
            n + 1
        )));
    }
    let arms = |x: Node| d.distance(cfg.star(x), x) as i64;
    if dim_v_nu_k_nu != n - 3 - arms(cfg.l()) - arms(cfg.m()) {
        return Err(Error::Inconsistent("branch lengths do not add up to the rank".into()));
    }

    let analysis = triple_dominant_lweights(cfg)?;
    let mut candidates = Vec::new();
    for w in &analysis.dominant {
        if matches!(w.label, DominantLabel::Top | DominantLabel::Second) {
            continue;
        }
        let dim = factor_dim(cfg, w.label, &w.monomial)?;
        candidates.push(FactorDim { label: w.label, monomial: w.monomial.clone(), dim });
    }

    let target = dim_w_nu - dim_v_lambda_nu - dim_v_nu_k_nu;
    let mut solutions = Vec::new();
    for mask in 0u32..(1 << candidates.len()) {
        let sum: i64 = candidates.iter().enumerate().filter(|(t, _)| mask >> t & 1 == 1).map(|(_, c)| c.dim).sum();
        let xi = target - sum;
        if xi == 0 || xi == 1 {
            solutions.push((mask, xi));
        }
    }
    let (mask, xi) = match solutions.as_slice() {
        [one] => *one,
        [] => {
            return Err(Error::Inconsistent(format!(
                "no choice of factors balances dim W_ν with residual {target}"
            )))
        }
        _ => return Err(Error::Inconsistent(format!("{} ways to balance dim W_ν", solutions.len()))),
    };
    let factors = candidates.iter().enumerate().filter(|(t, _)| mask >> t & 1 == 1).map(|(_, c)| c.label).collect();
    let report =
        ReplayReport { mode: cfg.mode(), dim_w_nu, dim_v_lambda_nu, dim_v_nu_k_nu, candidates, factors, xi, m_nu: xi };
    if report.residual() != 0 {
        return Err(Error::Inconsistent(format!("replay residual {}", report.residual())));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dynkin::{Diagram, Subdiagram};

    fn lam(d: &Diagram, vals: &[(Node, i64)]) -> Weight {
        let mut w = Weight::zero(d.rank());
        for &(i, v) in vals {
            w.set(i, v);
        }
        w
    }

    #[test]
    fn d4_incoherent_has_xi_zero() {
        let d = Diagram::d(4).unwrap();
        let cfg = TripleConfig::incoherent(&d, 1, 3, &lam(&d, &[(1, 1), (3, 1), (4, 1)]), 0).unwrap();
        let rep = replay_outer(&cfg).unwrap();
        assert_eq!(rep.xi, 0);
        assert_eq!(rep.candidates.iter().map(|c| c.dim).collect::<Vec<_>>(), vec![2, 2]);
    }

    #[test]
    fn d4_coherent_has_xi_one() {
        let d = Diagram::d(4).unwrap();
        let cfg = TripleConfig::coherent(&d, 1, &lam(&d, &[(1, 1), (3, 1), (4, 1)]), 0).unwrap();
        let rep = replay_outer(&cfg).unwrap();
        assert_eq!(rep.xi, 1);
        assert_eq!(rep.factors.len(), 3);
        assert_eq!(rep.dim_w_nu - rep.dim_v_lambda_nu, 5);
    }

    #[test]
    fn e6_coherent() {
        let d = Diagram::e(6).unwrap();
        let cfg = TripleConfig::coherent(&d, 2, &lam(&d, &[(1, 1), (2, 1), (6, 1)]), 0).unwrap();
        let rep = replay_outer(&cfg).unwrap();
        assert_eq!(rep.xi, 1);
        assert_eq!(rep.dim_w_nu - rep.dim_v_lambda_nu, 7);
    }

    #[test]
    fn nu_k_closed_form_matches_freudenthal() {
        for d in [Diagram::d(4).unwrap(), Diagram::d(6).unwrap(), Diagram::e(6).unwrap()] {
            let centre = d.trivalent().unwrap();
            for k in d.boundary_nodes() {
                let cfg = TripleConfig::coherent(&d, k, &lam(&d, &d.boundary_nodes().iter().map(|&b| (b, 1)).collect::<Vec<_>>()), 0).unwrap();
                let nu_k = cfg.nu_k().unwrap();
                let ch: Character64 = freudenthal(&d, &nu_k, d.rank() as u32).unwrap();
                let gap = d.theta(Subdiagram::from_nodes(d.half_open_path(centre, k)));
                assert_eq!(ch.at(&gap), d.distance(centre, k) as i64, "{d} k={k}");
            }
        }
    }
}
