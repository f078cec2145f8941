//! Laurent monomials in the variables `Y[i,r]` (node `i`, spectral shift
//! `r`), the q-strings built from them, and Drinfeld data as lists of strings.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Mul, MulAssign};
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::dynkin::{Diagram, Node, Subdiagram, Weight};
use crate::error::{Error, Result};

/// A Laurent monomial in `Y[i,r]`. Zero exponents are never stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LMonomial {
    factors: BTreeMap<(Node, i64), i64>,
}

impl LMonomial {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn y(i: Node, r: i64) -> Self {
        Self::y_pow(i, r, 1)
    }

    pub fn y_pow(i: Node, r: i64, e: i64) -> Self {
        let mut m = Self::one();
        m.bump(i, r, e);
        m
    }

    /// `Y[i,r] Y[i,r+2] ... Y[i,r+2m-2]`.
    pub fn string(i: Node, r: i64, m: u32) -> Self {
        let mut out = Self::one();
        for t in 0..m as i64 {
            out.bump(i, r + 2 * t, 1);
        }
        out
    }

    fn bump(&mut self, i: Node, r: i64, e: i64) {
        if e == 0 {
            return;
        }
        let slot = self.factors.entry((i, r)).or_insert(0);
        *slot += e;
        if *slot == 0 {
            self.factors.remove(&(i, r));
        }
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn exponent(&self, i: Node, r: i64) -> i64 {
        self.factors.get(&(i, r)).copied().unwrap_or(0)
    }

    /// `((node, shift), exponent)` in `(node, shift)` order.
    pub fn factors(&self) -> impl Iterator<Item = ((Node, i64), i64)> + '_ {
        self.factors.iter().map(|(&k, &e)| (k, e))
    }

    pub fn inverse(&self) -> Self {
        LMonomial { factors: self.factors.iter().map(|(&k, &e)| (k, -e)).collect() }
    }

    pub fn pow(&self, k: i64) -> Self {
        if k == 0 {
            return Self::one();
        }
        LMonomial { factors: self.factors.iter().map(|(&key, &e)| (key, e * k)).collect() }
    }

    /// `Σ exponent · ω_i`.
    pub fn weight(&self, rank: usize) -> Weight {
        let mut w = Weight::zero(rank);
        for (&(i, _), &e) in &self.factors {
            w.set(i, w.at(i) + e);
        }
        w
    }

    pub fn is_dominant(&self) -> bool {
        self.factors.values().all(|&e| e > 0)
    }

    /// Drop every variable at a node outside `j`.
    pub fn restrict(&self, j: Subdiagram) -> Self {
        LMonomial { factors: self.factors.iter().filter(|((i, _), _)| j.contains(*i)).map(|(&k, &e)| (k, e)).collect() }
    }

    pub fn node_part(&self, i: Node) -> Self {
        self.restrict(Subdiagram::single(i))
    }

    /// Nodes carrying at least one variable.
    pub fn nodes(&self) -> Subdiagram {
        Subdiagram::from_nodes(self.factors.keys().map(|&(i, _)| i))
    }

    /// Largest spectral shift present.
    pub fn r_max(&self) -> Result<i64> {
        self.factors
            .keys()
            .map(|&(_, r)| r)
            .max()
            .ok_or_else(|| Error::Precondition("the identity monomial has no maximal shift".into()))
    }

    /// Every variable at the maximal shift has a negative exponent.
    pub fn is_right_negative(&self) -> Result<bool> {
        let top = self.r_max()?;
        Ok(self.factors.iter().filter(|((_, r), _)| *r == top).all(|(_, &e)| e < 0))
    }

    /// If the monomial is a single positive q-string `Y[i,r,k]` at its one
    /// node, return `(i, r, k)`.
    pub fn as_string(&self) -> Option<(Node, i64, u32)> {
        let mut it = self.factors.iter();
        let (&(i, r), &e) = it.next()?;
        if e != 1 {
            return None;
        }
        let mut k = 1u32;
        for (&(j, s), &e) in it {
            if j != i || e != 1 || s != r + 2 * k as i64 {
                return None;
            }
            k += 1;
        }
        Some((i, r, k))
    }
}

/// `Y[i,r,m]`, the q-string of length `m` starting at shift `r`.
pub fn expand_string(i: Node, r: i64, m: u32) -> Result<LMonomial> {
    if m == 0 {
        return Err(Error::Precondition("q-string length must be positive".into()));
    }
    Ok(LMonomial::string(i, r, m))
}

/// The simple ℓ-root `A[i,r] = Y[i,r-1] Y[i,r+1] Π_{j~i} Y[j,r]^-1`.
pub fn simple_lroot(d: &Diagram, i: Node, r: i64) -> LMonomial {
    let mut m = LMonomial::y(i, r - 1);
    m.bump(i, r + 1, 1);
    for &j in d.neighbors(i) {
        m.bump(j, r, -1);
    }
    m
}

impl MulAssign<&LMonomial> for LMonomial {
    fn mul_assign(&mut self, o: &LMonomial) {
        for (&(i, r), &e) in &o.factors {
            self.bump(i, r, e);
        }
    }
}

impl MulAssign for LMonomial {
    fn mul_assign(&mut self, o: LMonomial) {
        *self *= &o;
    }
}

impl Mul for LMonomial {
    type Output = LMonomial;
    fn mul(mut self, o: LMonomial) -> LMonomial {
        self *= &o;
        self
    }
}

impl<'a> Mul<&'a LMonomial> for &'a LMonomial {
    type Output = LMonomial;
    fn mul(self, o: &LMonomial) -> LMonomial {
        let mut out = self.clone();
        out *= o;
        out
    }
}

impl std::iter::Product for LMonomial {
    fn product<I: Iterator<Item = LMonomial>>(iter: I) -> Self {
        iter.fold(LMonomial::one(), |a, b| a * b)
    }
}

impl fmt::Display for LMonomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return f.write_str("1");
        }
        let parts: Vec<String> = self
            .factors
            .iter()
            .map(|(&(i, r), &e)| if e == 1 { format!("Y[{i},{r}]") } else { format!("Y[{i},{r}]^{e}") })
            .collect();
        f.write_str(&parts.join(" * "))
    }
}

impl FromStr for LMonomial {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s == "1" {
            return Ok(Self::one());
        }
        let bad = |t: &str| Error::Parse(format!("bad monomial factor `{t}`"));
        let mut out = Self::one();
        for term in s.split('*') {
            let term = term.trim();
            let (var, exp) = match term.split_once('^') {
                Some((v, e)) => (v.trim(), e.trim().parse::<i64>().map_err(|_| bad(term))?),
                None => (term, 1),
            };
            let inner = var
                .strip_prefix("Y[")
                .and_then(|v| v.strip_suffix(']'))
                .ok_or_else(|| bad(term))?;
            let (i, r) = inner.split_once(',').ok_or_else(|| bad(term))?;
            let i: Node = i.trim().parse().map_err(|_| bad(term))?;
            let r: i64 = r.trim().parse().map_err(|_| bad(term))?;
            if i == 0 {
                return Err(bad(term));
            }
            out.bump(i, r, exp);
        }
        Ok(out)
    }
}

impl Serialize for LMonomial {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for LMonomial {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        String::deserialize(d)?.parse().map_err(serde::de::Error::custom)
    }
}

/// A KR string `Y[node, r, m]`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct KrString {
    pub node: Node,
    pub r: i64,
    pub m: u32,
}

impl KrString {
    pub fn new(node: Node, r: i64, m: u32) -> Self {
        KrString { node, r, m }
    }

    pub fn monomial(&self) -> LMonomial {
        LMonomial::string(self.node, self.r, self.m)
    }

    /// Midpoint of the string, `r + m - 1`.
    pub fn center(&self) -> i64 {
        self.r + self.m as i64 - 1
    }

    /// The string of the same length with the given midpoint.
    pub fn with_center(node: Node, center: i64, m: u32) -> Self {
        KrString { node, r: center - m as i64 + 1, m }
    }
}

/// Drinfeld data: at most one positive-length string per node.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<KrString>", into = "Vec<KrString>")]
pub struct DrinfeldSpec {
    strings: Vec<KrString>,
}

impl TryFrom<Vec<KrString>> for DrinfeldSpec {
    type Error = Error;

    fn try_from(v: Vec<KrString>) -> Result<Self> {
        DrinfeldSpec::new(v)
    }
}

impl From<DrinfeldSpec> for Vec<KrString> {
    fn from(s: DrinfeldSpec) -> Self {
        s.strings
    }
}

impl DrinfeldSpec {
    pub fn new(mut strings: Vec<KrString>) -> Result<Self> {
        strings.sort();
        for s in &strings {
            if s.m == 0 {
                return Err(Error::Precondition(format!("string at node {} has length 0", s.node)));
            }
            if s.node == 0 || s.node > Subdiagram::MAX_NODES {
                return Err(Error::Parse(format!("node {} out of range", s.node)));
            }
        }
        if let Some(w) = strings.windows(2).find(|w| w[0].node == w[1].node) {
            return Err(Error::Precondition(format!("node {} carries two strings", w[0].node)));
        }
        Ok(DrinfeldSpec { strings })
    }

    /// Validate that every node belongs to `d`.
    pub fn check(&self, d: &Diagram) -> Result<()> {
        self.strings.iter().try_for_each(|s| d.check_node(s.node))
    }

    pub fn strings(&self) -> &[KrString] {
        &self.strings
    }

    pub fn get(&self, node: Node) -> Option<&KrString> {
        self.strings.iter().find(|s| s.node == node)
    }

    pub fn length(&self, node: Node) -> u32 {
        self.get(node).map_or(0, |s| s.m)
    }

    pub fn center(&self, node: Node) -> Option<i64> {
        self.get(node).map(KrString::center)
    }

    pub fn support(&self) -> Subdiagram {
        Subdiagram::from_nodes(self.strings.iter().map(|s| s.node))
    }

    pub fn weight(&self, rank: usize) -> Weight {
        let mut w = Weight::zero(rank);
        for s in &self.strings {
            w.set(s.node, s.m as i64);
        }
        w
    }

    pub fn monomial(&self) -> LMonomial {
        self.strings.iter().map(KrString::monomial).product()
    }

    /// Keep only the strings on nodes of `j`.
    pub fn restrict(&self, j: Subdiagram) -> DrinfeldSpec {
        DrinfeldSpec { strings: self.strings.iter().copied().filter(|s| j.contains(s.node)).collect() }
    }

    /// Replace (or insert) the string at its node.
    pub fn with_string(&self, s: KrString) -> Result<DrinfeldSpec> {
        let mut v: Vec<KrString> = self.strings.iter().copied().filter(|t| t.node != s.node).collect();
        v.push(s);
        DrinfeldSpec::new(v)
    }

    /// Mirror every centre, `c ↦ -c`.
    pub fn negate_centers(&self) -> DrinfeldSpec {
        DrinfeldSpec {
            strings: self.strings.iter().map(|s| KrString::with_center(s.node, -s.center(), s.m)).collect(),
        }
    }

    /// Translate every string by `t`.
    pub fn shift(&self, t: i64) -> DrinfeldSpec {
        DrinfeldSpec { strings: self.strings.iter().map(|s| KrString::new(s.node, s.r + t, s.m)).collect() }
    }

    /// Relabel nodes through `map[new - 1] = old`, keeping only mapped nodes.
    pub fn pull_back(&self, map: &[Node]) -> DrinfeldSpec {
        let mut v = Vec::new();
        for (t, &old) in map.iter().enumerate() {
            if let Some(s) = self.get(old) {
                v.push(KrString::new(t + 1, s.r, s.m));
            }
        }
        DrinfeldSpec { strings: v }
    }
}

impl fmt::Display for DrinfeldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.strings.iter().map(|s| format!("Y[{},{},{}]", s.node, s.r, s.m)).collect();
        f.write_str(&parts.join(" "))
    }
}
