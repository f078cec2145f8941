use serde::{Deserialize, Serialize};

use crate::dynkin::{Diagram, Node, Subdiagram};
use crate::error::{Error, Result};
use crate::lweight::{simple_lroot, LMonomial};

/// The ℓ-weight `Y[l,r,m](J)` of a KR module together with its inputs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KrFragment {
    pub node: Node,
    pub r: i64,
    pub m: u32,
    pub part: Subdiagram,
    pub monomial: LMonomial,
}

/// `Y[l,r,m](J)`: the unique ℓ-weight of `V(Y[l,r,m])` at weight
/// `m ω_l - ϑ_J`.
///
/// For `l` outside `J` this is the string itself. When `l` is a leaf of `J`
/// (or `J = {l}`) the closed product is used; otherwise the monomial is
/// grown from the top one node at a time with [`fm_step`].
pub fn kr_fragment(d: &Diagram, l: Node, r: i64, m: u32, part: Subdiagram) -> Result<KrFragment> {
    d.check_node(l)?;
    if m == 0 {
        return Err(Error::Precondition("KR string length must be positive".into()));
    }
    if let Some(bad) = part.iter().find(|&i| i > d.rank()) {
        return Err(Error::NodeOutOfRange { node: bad, diagram: d.to_string() });
    }
    if !part.is_empty() && !d.is_connected(part) {
        return Err(Error::Disconnected(part.to_string()));
    }
    let monomial = if !part.contains(l) {
        LMonomial::string(l, r, m)
    } else if d.degree_in(l, part) <= 1 {
        closed_form(d, l, r, m, part)
    } else {
        grown(d, l, r, m, part)?
    };
    Ok(KrFragment { node: l, r, m, part, monomial })
}

fn closed_form(d: &Diagram, l: Node, r: i64, m: u32, part: Subdiagram) -> LMonomial {
    let top = r + 2 * m as i64;
    let mut out = LMonomial::string(l, r, m - 1);
    for i in d.outer_neighbors(part).iter() {
        out *= LMonomial::y(i, top - 2 + d.distance(i, l) as i64);
    }
    let ends = if part.len() == 1 { part } else { d.boundary(part).difference(Subdiagram::single(l)) };
    for i in ends.iter() {
        out *= LMonomial::y_pow(i, top + d.distance(i, l) as i64, -1);
    }
    if !d.is_type_a(part) {
        let centre = d.trivalent().expect("a non-type-A subdiagram has a trivalent node");
        out *= LMonomial::y(centre, top + d.distance(centre, l) as i64);
    }
    out
}

fn grown(d: &Diagram, l: Node, r: i64, m: u32, part: Subdiagram) -> Result<LMonomial> {
    let mut order: Vec<Node> = part.iter().collect();
    order.sort_by_key(|&i| (d.distance(i, l), i));
    order.into_iter().try_fold(LMonomial::string(l, r, m), |acc, i| fm_step(d, &acc, i))
}

/// Multiply by the inverse simple ℓ-root sitting just above the `i`-string.
///
/// The `i`-part of `mono` must be a single positive q-string `Y[i,r,k]`; the
/// factor is `A[i, r+2k-1]^-1`.
pub fn fm_step(d: &Diagram, mono: &LMonomial, i: Node) -> Result<LMonomial> {
    d.check_node(i)?;
    let (_, r, k) = mono
        .node_part(i)
        .as_string()
        .ok_or_else(|| Error::Precondition(format!("the part of {mono} at node {i} is not a positive q-string")))?;
    Ok(mono * &simple_lroot(d, i, r + 2 * k as i64 - 1).inverse())
}

/// The ℓ-weights `Y[l,r,m](J)` for `J` empty or connected through `l`; each
/// spans a one-dimensional ℓ-weight space.
pub fn kr_lweights_near_top(d: &Diagram, l: Node, r: i64, m: u32) -> Result<Vec<KrFragment>> {
    let mut parts = vec![Subdiagram::EMPTY];
    parts.extend(d.connected_containing(l, d.all()));
    parts.into_iter().map(|j| kr_fragment(d, l, r, m, j)).collect()
}

/// Dimension of the `λ - ϑ_[i,j]` weight space of `V(Y[i,r_i,m_i] Y[j,r_j,m_j] ϖ)`
/// where `ϖ` is dominant and avoids `[i,j]`.
///
/// The two strings may sit at the same node; the answer is then 1 exactly
/// when they concatenate into a single string.
pub fn dim_two_string(
    d: &Diagram,
    i: Node,
    j: Node,
    (r_i, m_i): (i64, u32),
    (r_j, m_j): (i64, u32),
    rest: &LMonomial,
) -> Result<usize> {
    d.check_node(i)?;
    d.check_node(j)?;
    if m_i == 0 || m_j == 0 {
        return Err(Error::Precondition("both strings need positive length".into()));
    }
    if !rest.is_one() && !rest.is_dominant() {
        return Err(Error::Precondition(format!("{rest} is not dominant")));
    }
    let path = d.interval(i, j);
    if !rest.nodes().is_disjoint(path) {
        return Err(Error::Precondition(format!("{rest} meets the interval {path}")));
    }
    let ((r_lo, m_lo), r_hi) = if r_i <= r_j { ((r_i, m_i), r_j) } else { ((r_j, m_j), r_i) };
    let dist = d.distance(i, j);
    let resonant = r_hi - r_lo == 2 * m_lo as i64 + dist as i64;
    Ok(if resonant { dist + 1 } else { dist + 2 })
}
