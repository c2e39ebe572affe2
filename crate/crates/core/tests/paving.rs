use hesspave_core::hessenberg::{enumerate_spaces, from_h, peterson_space};
use hesspave_core::paving::{poincare, TableauModel};
use hesspave_core::{
    weyl, Family, HessFunction, HessenbergSpace, OperatorSpec, Partition, Paver, PavingReport,
    RootSystem,
};

fn sys(f: Family, n: usize) -> RootSystem {
    RootSystem::from_parts(f, n).unwrap()
}

fn poly_mul(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

// Exact division of polynomials with a monic-leading divisor of the form [k]_q.
fn poly_div(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut rem: Vec<i64> = a.iter().map(|&x| x as i64).collect();
    let mut q = vec![0i64; a.len() - b.len() + 1];
    for k in (0..q.len()).rev() {
        let c = rem[k + b.len() - 1];
        q[k] = c;
        for (j, &bj) in b.iter().enumerate() {
            rem[k + j] -= c * bj as i64;
        }
    }
    assert!(rem.iter().all(|&r| r == 0), "inexact division");
    q.into_iter().map(|c| c as u64).collect()
}

/// `∏ [ht α + 1]_q / [ht α]_q` over the negative roots `α` of `H`.
fn product_formula(s: &RootSystem, space: &HessenbergSpace) -> Vec<u64> {
    let heights: Vec<usize> = space
        .negative_part(s)
        .iter()
        .map(|a| s.height(s.negate(a)) as usize)
        .collect();
    let num = heights
        .iter()
        .fold(vec![1], |acc, &h| poly_mul(&acc, &vec![1; h + 1]));
    let den = heights
        .iter()
        .fold(vec![1], |acc, &h| poly_mul(&acc, &vec![1; h]));
    poly_div(&num, &den)
}

#[test]
fn regular_nilpotent_matches_product_formula() {
    for (f, n) in [
        (Family::A, 2),
        (Family::A, 3),
        (Family::A, 4),
        (Family::B, 2),
        (Family::B, 3),
        (Family::C, 2),
        (Family::C, 3),
        (Family::D, 3),
        (Family::D, 4),
    ] {
        let s = sys(f, n);
        let paver = Paver::new(&s, &OperatorSpec::RegularNilpotent).unwrap();
        for space in enumerate_spaces(&s).unwrap() {
            let p = paver.report(&space).unwrap().poincare;
            assert!(p.is_even());
            assert_eq!(p.betti(), product_formula(&s, &space), "{f}{n}");
        }
    }
}

#[test]
fn peterson_variety_in_every_type() {
    for (f, n) in [(Family::B, 3), (Family::C, 3), (Family::D, 4)] {
        let s = sys(f, n);
        let p = Paver::new(&s, &OperatorSpec::RegularNilpotent)
            .unwrap()
            .report(&peterson_space(&s))
            .unwrap()
            .poincare;
        let expect: Vec<u64> = (0..=n as u64)
            .map(|k| (0..k).fold(1, |acc, i| acc * (n as u64 - i) / (i + 1)))
            .collect();
        assert_eq!(p.betti(), expect, "{f}{n}");
    }
}

#[test]
fn tableau_bijection_up_to_five() {
    for m in 2..=5 {
        let s = sys(Family::A, m - 1);
        for mu in Partition::all(m) {
            let spec = OperatorSpec::Nilpotent(mu.clone());
            let paver = Paver::new(&s, &spec).unwrap();
            let model = TableauModel::for_spec(&s, &spec).unwrap().unwrap();
            for h in HessFunction::all(m) {
                let space = from_h(&s, &h).unwrap();
                let cells = paver.pave(&space).unwrap();
                for (pi, c) in paver.elements().iter().zip(&cells) {
                    let t = model.cell(pi, &h).unwrap();
                    assert_eq!(t, c.dim, "mu = {mu}, h = {h}, pi = {pi}");
                    assert!(c.dim.is_none_or(|d| d <= c.length));
                }
            }
        }
    }
}

#[test]
fn general_operators_match_multidiagrams() {
    for (m, specs) in [
        (
            3,
            vec![
                "general:a=2;b=1",
                "general:a=1,1;b=1",
                "general:a=1;b=1;c=1",
            ],
        ),
        (
            4,
            vec![
                "general:a=2,1;b=1",
                "general:a=2;b=2",
                "general:a=1,1;b=1,1",
                "general:a=3;b=1",
                "general:a=1,1,1;b=1",
                "general:a=2;b=1;c=1",
                "general:a=1,1;b=1;c=1",
            ],
        ),
        (
            5,
            vec![
                "general:a=2,1;b=2",
                "general:a=3;b=1,1",
                "general:a=2;b=2;c=1",
            ],
        ),
    ] {
        let s = sys(Family::A, m - 1);
        for spec in specs {
            let spec: OperatorSpec = spec.parse().unwrap();
            let paver = Paver::new(&s, &spec).unwrap();
            let model = TableauModel::for_spec(&s, &spec).unwrap().unwrap();
            for h in HessFunction::all(m) {
                let space = from_h(&s, &h).unwrap();
                let cells = paver.pave(&space).unwrap();
                for (pi, c) in paver.elements().iter().zip(&cells) {
                    assert_eq!(
                        model.cell(pi, &h).unwrap(),
                        c.dim,
                        "{spec}, h = {h}, pi = {pi}"
                    );
                }
            }
        }
    }
}

#[test]
fn equal_blocks_can_be_permuted() {
    let s = sys(Family::A, 4);
    let pairs = [
        ("general:a=2;b=2;c=1", "general:b=2;a=2;c=1"),
        ("general:a=2,1;b=2", "general:b=2;a=2,1"),
        ("general:a=1;b=2;c=2", "general:c=2;b=2;a=1"),
    ];
    for (x, y) in pairs {
        let px = Paver::new(&s, &x.parse().unwrap()).unwrap();
        let py = Paver::new(&s, &y.parse().unwrap()).unwrap();
        for h in HessFunction::all(5) {
            let space = from_h(&s, &h).unwrap();
            assert_eq!(
                px.report(&space).unwrap().poincare,
                py.report(&space).unwrap().poincare,
                "{x} vs {y}, h = {h}"
            );
        }
    }
}

#[test]
fn semisimple_regular_peterson_is_eulerian_up_to_a4() {
    let eulerian = [
        vec![1, 1],
        vec![1, 4, 1],
        vec![1, 11, 11, 1],
        vec![1, 26, 66, 26, 1],
    ];
    for n in 1..=4 {
        let s = sys(Family::A, n);
        let p = Paver::new(&s, &OperatorSpec::Semisimple(vec![]))
            .unwrap()
            .report(&peterson_space(&s))
            .unwrap()
            .poincare;
        assert_eq!(p.betti(), eulerian[n - 1]);
    }
}

#[test]
fn zero_nilpotent_is_the_flag_variety() {
    for m in 2..=5 {
        let s = sys(Family::A, m - 1);
        let spec = OperatorSpec::Nilpotent(Partition::new(vec![1; m]).unwrap());
        let paver = Paver::new(&s, &spec).unwrap();
        let lgf = weyl::length_generating_function(&s).unwrap();
        for h in HessFunction::all(m) {
            let p = paver.report(&from_h(&s, &h).unwrap()).unwrap().poincare;
            assert_eq!(p.betti(), lgf, "h = {h}");
        }
    }
}

#[test]
fn euler_characteristic_two_ways() {
    for (f, n) in [
        (Family::A, 3),
        (Family::B, 3),
        (Family::C, 3),
        (Family::D, 4),
    ] {
        let s = sys(f, n);
        let space = peterson_space(&s);
        let paver = Paver::new(&s, &OperatorSpec::RegularNilpotent).unwrap();
        let p = paver.report(&space).unwrap().poincare;
        let direct = paver
            .elements()
            .iter()
            .filter(|pi| {
                let inv = pi.inverse();
                (1..=n).all(|i| {
                    let a = inv.act(&s, s.simple(i)).unwrap();
                    s.is_positive(a) || (s.height(s.negate(a)) == 1)
                })
            })
            .count() as u64;
        assert_eq!(p.euler_characteristic(), direct, "{f}{n}");
        assert_eq!(direct, 1 << n);
    }
}

#[test]
fn reports_round_trip_and_cover_w() {
    let s = sys(Family::A, 2);
    let paver = Paver::new(&s, &"nilpotent:2,1".parse().unwrap()).unwrap();
    let r = paver.report(&HessenbergSpace::full(&s)).unwrap();
    let json = serde_json::to_value(&r).unwrap();
    for key in [
        "type", "rank", "operator", "h", "formula", "cells", "poincare",
    ] {
        assert!(json.get(key).is_some(), "missing {key}");
    }
    assert_eq!(json["poincare"], serde_json::json!([1, 0, 2, 0, 2, 0, 1]));
    let back: PavingReport = serde_json::from_value(json).unwrap();
    assert_eq!(back, r);
    assert_eq!(poincare(&s, &r.cells).unwrap(), r.poincare);
}
