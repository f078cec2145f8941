//! Truncated characters of finite-dimensional simple modules, computed with
//! Freudenthal's recursion, and the decomposition of tensor products near
//! their top weight.
//!
//! All arithmetic is exact. The multiplicity type is generic so callers can
//! trade `BigInt` safety for `i64` speed.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{FromPrimitive, Signed, ToPrimitive};

use crate::dynkin::{Diagram, RootVector, Weight};
use crate::error::{Error, Result};

/// Exact signed integer usable as a weight multiplicity.
pub trait Multiplicity:
    Clone + fmt::Debug + fmt::Display + Ord + Integer + Signed + FromPrimitive + ToPrimitive
{
}

impl<T> Multiplicity for T where
    T: Clone + fmt::Debug + fmt::Display + Ord + Integer + Signed + FromPrimitive + ToPrimitive
{
}

pub type BigCharacter = TruncatedCharacter<BigInt>;
pub type Character64 = TruncatedCharacter<i64>;
pub type BigDecomposition = Decomposition<BigInt>;

fn lift<T: Multiplicity>(v: i64) -> T {
    T::from_i64(v).expect("multiplicity type cannot represent i64 value")
}

/// Multiplicities `dim V_{top-η}` for all `η` of height at most `depth`.
///
/// Only nonzero entries are stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TruncatedCharacter<T> {
    rank: usize,
    top: Weight,
    depth: u32,
    table: BTreeMap<RootVector, T>,
}

impl<T: Multiplicity> TruncatedCharacter<T> {
    pub fn top(&self) -> &Weight {
        &self.top
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Multiplicity at `top - η`. Zero outside the stored window as well.
    pub fn at(&self, eta: &RootVector) -> T {
        self.table.get(eta).cloned().unwrap_or_else(T::zero)
    }

    pub fn multiplicity(&self, d: &Diagram, mu: &Weight) -> Option<T> {
        let diff = &self.top - mu;
        let eta = solve_root_coords(d, &diff)?;
        (eta.is_nonnegative() && eta.height() <= self.depth as i64).then(|| self.at(&eta))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&RootVector, &T)> {
        self.table.iter()
    }

    pub fn len(&self) -> usize {
        self.table.len()
    }

    pub fn is_empty(&self) -> bool {
        self.table.is_empty()
    }

    /// Sum of all stored multiplicities.
    pub fn total(&self) -> T {
        self.table.values().fold(T::zero(), |a, b| a + b.clone())
    }

    /// Check that multiplicities agree along simple reflections whenever
    /// both ends of the reflection lie inside the window.
    pub fn check_reflections(&self, d: &Diagram) -> Result<()> {
        for (eta, m) in &self.table {
            let mu = &self.top - &d.to_weight(eta);
            for i in d.nodes() {
                let c = mu.at(i);
                if c == 0 {
                    continue;
                }
                let mut image = eta.clone();
                image.set(i, eta.at(i) + c);
                if !image.is_nonnegative() || image.height() > self.depth as i64 {
                    continue;
                }
                let other = self.at(&image);
                if &other != m {
                    return Err(Error::Inconsistent(format!(
                        "multiplicity {m} at {eta} differs from {other} at its reflection {image}"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Express a weight difference in simple-root coordinates, if integral.
fn solve_root_coords(d: &Diagram, w: &Weight) -> Option<RootVector> {
    let n = d.rank();
    let mut a: Vec<Vec<i128>> = d
        .cartan_matrix()
        .into_iter()
        .zip(w.coords())
        .map(|(row, &b)| row.into_iter().map(i128::from).chain([b as i128]).collect())
        .collect();
    // Bareiss elimination keeps every entry integral.
    let mut prev: i128 = 1;
    for k in 0..n {
        let piv = (k..n).find(|&r| a[r][k] != 0)?;
        a.swap(k, piv);
        for i in k + 1..n {
            for j in k + 1..=n {
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) / prev;
            }
            a[i][k] = 0;
        }
        prev = a[k][k];
    }
    let mut x = vec![0i128; n];
    for i in (0..n).rev() {
        let s: i128 = a[i][n] - (i + 1..n).map(|j| a[i][j] * x[j]).sum::<i128>();
        if s % a[i][i] != 0 {
            return None;
        }
        x[i] = s / a[i][i];
    }
    Some(RootVector::from_coords(x.into_iter().map(|v| v as i64).collect()))
}

/// Freudenthal's recursion, truncated at height `depth` below `λ`.
///
/// Uses the invariant form with `(α_i, α_i) = 2`. The multiplicity at
/// `λ-η` is `2 Σ_{α>0} Σ_{k≥1} (λ-η+kα, α) m(η-kα)` divided by
/// `(λ+ρ, λ+ρ) - (λ-η+ρ, λ-η+ρ)`.
pub fn freudenthal<T: Multiplicity>(d: &Diagram, lambda: &Weight, depth: u32) -> Result<TruncatedCharacter<T>> {
    d.check_weight(lambda)?;
    if !lambda.is_dominant() {
        return Err(Error::Precondition(format!("highest weight {lambda} is not dominant")));
    }
    let roots = d.positive_roots();
    let root_weights: Vec<Weight> = roots.iter().map(|a| d.to_weight(a)).collect();
    let lambda_pairs: Vec<i64> =
        roots.iter().map(|a| d.nodes().map(|i| a.at(i) * lambda.at(i)).sum()).collect();

    let mut table: BTreeMap<RootVector, T> = BTreeMap::new();
    table.insert(RootVector::zero(d.rank()), T::one());
    let mut level: BTreeSet<RootVector> = BTreeSet::from([RootVector::zero(d.rank())]);
    for _ in 1..=depth {
        let mut candidates = BTreeSet::new();
        for eta in &level {
            for i in d.nodes() {
                let mut next = eta.clone();
                next.set(i, eta.at(i) + 1);
                candidates.insert(next);
            }
        }
        let mut next_level = BTreeSet::new();
        for eta in candidates {
            let eta_w = d.to_weight(&eta);
            let norm: i64 = d.nodes().map(|i| eta.at(i) * eta_w.at(i)).sum();
            let denom = 2 * d.nodes().map(|i| eta.at(i) * (lambda.at(i) + 1)).sum::<i64>() - norm;
            let mut rhs = T::zero();
            for (idx, alpha) in roots.iter().enumerate() {
                let eta_alpha: i64 = d.nodes().map(|i| eta.at(i) * root_weights[idx].at(i)).sum();
                let mut k = 1i64;
                let mut lower = &eta - alpha;
                while lower.is_nonnegative() {
                    if let Some(m) = table.get(&lower) {
                        let coeff = lambda_pairs[idx] - eta_alpha + 2 * k;
                        rhs = rhs + lift::<T>(coeff) * m.clone();
                    }
                    k += 1;
                    lower -= alpha;
                }
            }
            rhs = rhs * lift::<T>(2);
            if denom <= 0 {
                if !rhs.is_zero() {
                    return Err(Error::Inconsistent(format!(
                        "Freudenthal numerator {rhs} nonzero with nonpositive denominator {denom} at {eta}"
                    )));
                }
                continue;
            }
            let (q, r) = rhs.div_rem(&lift(denom));
            if !r.is_zero() || q.is_negative() {
                return Err(Error::Inconsistent(format!(
                    "Freudenthal quotient {rhs}/{denom} at {eta} is not a nonnegative integer"
                )));
            }
            if !q.is_zero() {
                table.insert(eta.clone(), q);
                next_level.insert(eta);
            }
        }
        level = next_level;
        if level.is_empty() {
            break;
        }
    }
    Ok(TruncatedCharacter { rank: d.rank(), top: lambda.clone(), depth, table })
}

/// Character of the tensor product, valid to the common depth.
pub fn tensor_truncated<T: Multiplicity>(chs: &[TruncatedCharacter<T>]) -> Result<TruncatedCharacter<T>> {
    let first = chs.first().ok_or_else(|| Error::Precondition("empty tensor product".into()))?;
    let (rank, depth) = (first.rank, first.depth);
    for ch in chs {
        if ch.rank != rank {
            return Err(Error::RankMismatch { expected: rank, got: ch.rank });
        }
        if ch.depth != depth {
            return Err(Error::Precondition(format!(
                "depth mismatch in tensor product: {} vs {}",
                depth, ch.depth
            )));
        }
    }
    let mut acc = first.clone();
    for ch in &chs[1..] {
        let mut table: BTreeMap<RootVector, T> = BTreeMap::new();
        for (a, ma) in &acc.table {
            for (b, mb) in &ch.table {
                let s = a + b;
                if s.height() > depth as i64 {
                    continue;
                }
                let e = table.entry(s).or_insert_with(T::zero);
                *e = e.clone() + ma.clone() * mb.clone();
            }
        }
        acc = TruncatedCharacter { rank, top: acc.top + ch.top.clone(), depth, table };
    }
    Ok(acc)
}

/// Multiplicities of simple summands `V(top-η)` with `ht(η) ≤ depth`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Decomposition<T> {
    top: Weight,
    depth: u32,
    summands: BTreeMap<RootVector, T>,
}

impl<T: Multiplicity> Decomposition<T> {
    pub fn top(&self) -> &Weight {
        &self.top
    }

    pub fn depth(&self) -> u32 {
        self.depth
    }

    /// Outer multiplicity of `V(top-η)`.
    pub fn at(&self, eta: &RootVector) -> T {
        self.summands.get(eta).cloned().unwrap_or_else(T::zero)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&RootVector, &T)> {
        self.summands.iter()
    }

    /// Summands keyed by their highest weight.
    pub fn by_weight(&self, d: &Diagram) -> BTreeMap<Weight, T> {
        self.summands.iter().map(|(eta, m)| (&self.top - &d.to_weight(eta), m.clone())).collect()
    }
}

/// Strip highest weights off a truncated character, lowest height first.
///
/// A negative residual, or a nonzero residual at a non-dominant weight,
/// means the table is not a character and is reported as an internal
/// inconsistency.
pub fn outer_multiplicities<T: Multiplicity>(
    d: &Diagram,
    table: &TruncatedCharacter<T>,
    depth: u32,
) -> Result<Decomposition<T>> {
    if depth > table.depth {
        return Err(Error::Precondition(format!(
            "requested depth {depth} exceeds table depth {}",
            table.depth
        )));
    }
    let mut residual: BTreeMap<RootVector, T> =
        table.table.iter().filter(|(e, _)| e.height() <= depth as i64).map(|(e, m)| (e.clone(), m.clone())).collect();
    let keys: Vec<RootVector> = residual.keys().cloned().collect();
    let mut summands = BTreeMap::new();
    for eta in keys {
        let m = residual[&eta].clone();
        if m.is_zero() {
            continue;
        }
        if m.is_negative() {
            return Err(Error::Inconsistent(format!("negative residual {m} at {eta}")));
        }
        let mu = &table.top - &d.to_weight(&eta);
        if !mu.is_dominant() {
            return Err(Error::Inconsistent(format!("residual {m} at non-dominant weight {mu}")));
        }
        let rest = depth - eta.height() as u32;
        let ch: TruncatedCharacter<T> = freudenthal(d, &mu, rest)?;
        for (inner, c) in &ch.table {
            let pos = &eta + inner;
            let e = residual.entry(pos).or_insert_with(T::zero);
            *e = e.clone() - m.clone() * c.clone();
        }
        summands.insert(eta, m);
    }
    if let Some((eta, m)) = residual.iter().find(|(_, m)| !m.is_zero()) {
        return Err(Error::Inconsistent(format!("residual {m} left at {eta} after stripping")));
    }
    Ok(Decomposition { top: table.top.clone(), depth, summands })
}
