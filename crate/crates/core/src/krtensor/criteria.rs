use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::dynkin::{Diagram, DiagramKind, Node, Weight};
use crate::error::{Error, Result};
use crate::minclass::MonotonicOrder;

/// Which reducibility condition of the type-A criterion fired.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "condition", rename_all = "kebab-case")]
pub enum TpaWitness {
    /// `s + η + n - j' + 2 = -p_{j',j}(λ) - λ_{j'} + 2η'` with
    /// `1 <= η' <= min(λ_{j'}, η)`.
    Support { node: Node, eta: i64 },
    /// `λ_j + n - j + 2 = s - η + 2η'` with `1 <= η' <= min(|λ|, η)`.
    Top { eta: i64 },
}

/// Reducibility of `V(π) ⊗ V(Y[n, b, η])` on `A_n`, where `π` is the
/// increasing minimal data of weight `λ` centred at `a` on the largest
/// support node `j`, and `b = a q^s`.
///
/// Returns a witness when the tensor product is reducible, `None` when it
/// is irreducible.
pub fn tpa_reducible(n: usize, lambda: &Weight, s: i64, eta: u32) -> Result<Option<TpaWitness>> {
    let a = Diagram::a(n)?;
    a.check_weight(lambda)?;
    if !lambda.is_dominant() || lambda.is_zero() {
        return Err(Error::Precondition(format!("λ = {lambda} must be dominant and nonzero")));
    }
    if eta == 0 {
        return Err(Error::Precondition("η must be positive".into()));
    }
    let eta = eta as i64;
    let n_i = n as i64;
    let order = MonotonicOrder::between(&a, 1, n)?;
    let supp: Vec<Node> = lambda.support().iter().collect();
    let j = *supp.last().expect("λ is nonzero");
    for &jp in &supp {
        let p = order.p_value(lambda, jp, j)?;
        let rhs_base = -p - lambda.at(jp) - (s + eta + n_i - jp as i64 + 2);
        for eta_p in 1..=lambda.at(jp).min(eta) {
            if rhs_base + 2 * eta_p == 0 {
                return Ok(Some(TpaWitness::Support { node: jp, eta: eta_p }));
            }
        }
    }
    let total = lambda.level();
    for eta_p in 1..=total.min(eta) {
        if lambda.at(j) + n_i - j as i64 + 2 == s - eta + 2 * eta_p {
            return Ok(Some(TpaWitness::Top { eta: eta_p }));
        }
    }
    Ok(None)
}

/// Exponents `e` with `(a_j/a_i) = q^e` excluded by the type-D sufficient
/// irreducibility criterion for two boundary KR modules of `D_n`. The set is
/// closed under negation.
pub fn tpd_forbidden(n: usize, both_spin: bool, m_i: u32, m_j: u32) -> BTreeSet<i64> {
    let (mi, mj) = (m_i as i64, m_j as i64);
    let mut out = BTreeSet::new();
    for p in 1..=mi.min(mj) {
        if both_spin {
            for s in 1..=((n as i64 - 1) / 2) {
                let e = mi + mj + 2 * (2 * s - p);
                out.insert(e);
                out.insert(-e);
            }
        } else {
            let e = mi + mj + n as i64 - 2 * p;
            out.insert(e);
            out.insert(-e);
        }
    }
    out
}

/// True when `V(Y[i,·,m_i]) ⊗ V(Y[j,·,m_j])` on `D_n` with parameter ratio
/// `q^exponent` is guaranteed irreducible. `false` is inconclusive.
pub fn tpd_irreducible_sufficient(n: usize, i: Node, j: Node, (m_i, m_j): (u32, u32), exponent: i64) -> Result<bool> {
    let d = Diagram::new(DiagramKind::D, n)?;
    d.check_node(i)?;
    d.check_node(j)?;
    let leaves = d.boundary_nodes();
    if i == j || !leaves.contains(&i) || !leaves.contains(&j) {
        return Err(Error::Precondition(format!("need two distinct boundary nodes of {d}, got {i}, {j}")));
    }
    if m_i == 0 || m_j == 0 {
        return Err(Error::Precondition("both strings need positive length".into()));
    }
    let spin = d.spin_nodes();
    let both_spin = spin.contains(&i) && spin.contains(&j);
    Ok(!tpd_forbidden(n, both_spin, m_i, m_j).contains(&exponent))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn weight(c: &[i64]) -> Weight {
        Weight::from_coords(c.to_vec())
    }

    #[test]
    fn forbidden_set_d4_spin() {
        assert_eq!(tpd_forbidden(4, true, 1, 1), BTreeSet::from([-4, 4]));
        assert!(tpd_irreducible_sufficient(4, 3, 4, (1, 1), 0).unwrap());
        assert!(!tpd_irreducible_sufficient(4, 3, 4, (1, 1), -4).unwrap());
    }

    #[test]
    fn forbidden_set_hits_non_spin() {
        let n = 6;
        assert!(!tpd_irreducible_sufficient(n, 1, 5, (2, 3), 2 + 3 + 6 - 2).unwrap());
        assert!(tpd_irreducible_sufficient(n, 1, 5, (2, 3), 2 + 3 + 6 - 1).unwrap());
    }

    #[test]
    fn d4_spin_and_non_spin_forms_agree() {
        for (a, b) in [(1, 1), (2, 3), (3, 2)] {
            assert_eq!(tpd_forbidden(4, true, a, b), tpd_forbidden(4, false, a, b));
        }
    }

    #[test]
    fn no_s_zero_terms() {
        // with s = 0 the value m_i + m_j - 2p would appear
        let f = tpd_forbidden(7, true, 2, 2);
        assert!(!f.contains(&2));
        assert!(!f.contains(&0));
    }

    #[test]
    fn tpa_single_node() {
        // A_2, λ = ω_1, η = 1: condition (ii) reads 1 + 1 + 2 = s - 1 + 2.
        let lam = weight(&[1, 0]);
        assert_eq!(tpa_reducible(2, &lam, 3, 1).unwrap(), Some(TpaWitness::Top { eta: 1 }));
        // condition (i): s + 1 + 2 - 1 + 2 = 0 - 1 + 2.
        assert_eq!(tpa_reducible(2, &lam, -3, 1).unwrap(), Some(TpaWitness::Support { node: 1, eta: 1 }));
        assert_eq!(tpa_reducible(2, &lam, 0, 1).unwrap(), None);
    }

    #[test]
    fn tpa_rejects_zero_weight() {
        assert!(tpa_reducible(3, &weight(&[0, 0, 0]), 0, 1).is_err());
    }
}
