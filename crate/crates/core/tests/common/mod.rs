#![allow(dead_code)]

use minaff::krtensor::{fm_step, kr_fragment};
use minaff::lweight::simple_lroot;
use minaff::{Diagram, LMonomial, Node, Subdiagram, Weight};
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub fn grid_diagrams() -> Vec<Diagram> {
    vec![Diagram::d(4).unwrap(), Diagram::d(5).unwrap(), Diagram::e(6).unwrap()]
}

/// All weights supported on the boundary with values in `range`.
pub fn boundary_weights(d: &Diagram, range: std::ops::RangeInclusive<i64>) -> Vec<Weight> {
    let leaves = d.boundary_nodes();
    let mut out = vec![Weight::zero(d.rank())];
    for &b in &leaves {
        out = out
            .into_iter()
            .flat_map(|w| {
                range.clone().map(move |v| {
                    let mut w = w.clone();
                    w.set(b, v);
                    w
                })
            })
            .collect();
    }
    out
}

/// A monomial whose top shift carries only negative exponents.
pub fn right_negative(rank: usize) -> impl Strategy<Value = LMonomial> {
    let body = prop::collection::vec((1..=rank, -6i64..=6, -3i64..=3), 0..6);
    let top = prop::collection::vec((1..=rank, 1i64..=3), 1..3);
    (body, top, 7i64..=10).prop_map(|(body, top, r_top)| {
        let mut m = LMonomial::one();
        for (i, r, e) in body {
            m *= LMonomial::y_pow(i, r, e);
        }
        for (i, e) in top {
            m *= LMonomial::y_pow(i, r_top, -e);
        }
        m
    })
}

pub fn any_monomial(rank: usize) -> impl Strategy<Value = LMonomial> {
    prop::collection::vec((1..=rank, -8i64..=8, -3i64..=3), 0..8).prop_map(|fs| {
        fs.into_iter().map(|(i, r, e)| LMonomial::y_pow(i, r, e)).product()
    })
}

pub fn runner(cases: u32) -> TestRunner {
    TestRunner::new(Config { cases, failure_persistence: None, ..Config::default() })
}

pub fn check_right_negative_closure(a: &LMonomial, b: &LMonomial) -> Result<(), TestCaseError> {
    prop_assert!(a.is_right_negative().unwrap());
    prop_assert!(b.is_right_negative().unwrap());
    let ab = a * b;
    prop_assert!(!ab.is_one());
    prop_assert!(ab.is_right_negative().unwrap(), "{} * {} = {}", a, b, ab);
    Ok(())
}

pub fn check_wt_homomorphism(d: &Diagram, a: &LMonomial, b: &LMonomial, i: Node, r: i64) -> Result<(), TestCaseError> {
    let n = d.rank();
    prop_assert_eq!((a * b).weight(n), &a.weight(n) + &b.weight(n));
    prop_assert_eq!(a.inverse().weight(n), &Weight::zero(n) - &a.weight(n));
    prop_assert_eq!(simple_lroot(d, i, r).weight(n), d.to_weight(&d.simple_root(i)));
    prop_assert!(simple_lroot(d, i, r).inverse().is_right_negative().unwrap());
    Ok(())
}

/// Every `Y[l,r,m](J)` is reached from the top by successive steps along
/// any growth order that keeps the visited set connected through `l`.
pub fn check_fm_reconstruction(d: &Diagram, l: Node, r: i64, m: u32) -> Result<(), TestCaseError> {
    for part in d.connected_containing(l, d.all()) {
        let target = kr_fragment(d, l, r, m, part).unwrap().monomial;
        for j in part.iter() {
            let mut rest = part;
            rest.remove(j);
            let stepped = if rest.is_empty() {
                LMonomial::string(l, r, m)
            } else if rest.contains(l) && d.is_connected(rest) {
                kr_fragment(d, l, r, m, rest).unwrap().monomial
            } else {
                continue;
            };
            let grown = fm_step(d, &stepped, j).map_err(|e| TestCaseError::fail(e.to_string()))?;
            prop_assert_eq!(&grown, &target, "{} l={} J={} last step at {}", d, l, part, j);
        }
    }
    Ok(())
}

pub fn run_right_negative_closure(cases: u32) -> Result<(), String> {
    runner(cases)
        .run(&(right_negative(6), right_negative(6)), |(a, b)| check_right_negative_closure(&a, &b))
        .map_err(|e| e.to_string())
}

pub fn run_wt_homomorphism(cases: u32) -> Result<(), String> {
    for d in grid_diagrams() {
        let n = d.rank();
        runner(cases)
            .run(&(any_monomial(n), any_monomial(n), 1..=n, -10i64..=10), |(a, b, i, r)| {
                check_wt_homomorphism(&d, &a, &b, i, r)
            })
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}

pub fn run_fm_reconstruction(cases: u32) -> Result<(), String> {
    for d in grid_diagrams() {
        let n = d.rank();
        runner(cases)
            .run(&(1..=n, -6i64..=6, 1u32..=4), |(l, r, m)| check_fm_reconstruction(&d, l, r, m))
            .map_err(|e| e.to_string())?;
    }
    Ok(())
}

/// Every `(l, J)` pair at a fixed string, so coverage does not depend on
/// sampling.
pub fn fm_reconstruction_exhaustive() -> Result<usize, String> {
    let mut pairs = 0;
    for d in grid_diagrams() {
        for l in d.nodes() {
            for m in 1..=3 {
                check_fm_reconstruction(&d, l, 0, m).map_err(|e| e.to_string())?;
            }
            pairs += d.connected_containing(l, d.all()).len();
        }
    }
    Ok(pairs)
}

pub fn subdiagram(nodes: &[Node]) -> Subdiagram {
    Subdiagram::from_nodes(nodes.iter().copied())
}
