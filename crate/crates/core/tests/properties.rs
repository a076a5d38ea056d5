use std::collections::BTreeMap;

use affvoa::envalg::Rewrite;
use affvoa::rootsystem::matrix::{mul, trace, Realization};
use affvoa::scalar::{q, Q};
use affvoa::{
    AlgebraType, BasisLabel, EnvElement, LieElement, RootDatum, RootLabel, UniPoly, VacuumModule, VertexState,
};
use num_traits::Zero;
use proptest::prelude::*;

fn d4() -> RootDatum {
    RootDatum::build(AlgebraType::D, 4).unwrap()
}

fn b3() -> RootDatum {
    RootDatum::build(AlgebraType::B, 3).unwrap()
}

/// `[x, y]` on sparse coefficient vectors.
fn br(d: &RootDatum, x: &BTreeMap<usize, Q>, y: &BTreeMap<usize, Q>) -> BTreeMap<usize, Q> {
    let mut out: BTreeMap<usize, Q> = BTreeMap::new();
    for (a, ca) in x {
        for (b, cb) in y {
            for (c, n) in d.bracket_basis(*a, *b) {
                *out.entry(*c).or_default() += ca * cb * q(*n);
            }
        }
    }
    out.retain(|_, v| !v.is_zero());
    out
}

fn unit(i: usize) -> BTreeMap<usize, Q> {
    BTreeMap::from([(i, q(1))])
}

fn add(mut a: BTreeMap<usize, Q>, b: BTreeMap<usize, Q>) -> BTreeMap<usize, Q> {
    for (k, v) in b {
        *a.entry(k).or_default() += v;
    }
    a.retain(|_, v| !v.is_zero());
    a
}

#[test]
fn jacobi_on_every_basis_triple() {
    for d in [d4(), b3()] {
        let n = d.dim();
        for a in 0..n {
            for b in 0..n {
                let ab = br(&d, &unit(a), &unit(b));
                for c in 0..n {
                    let s = add(
                        add(br(&d, &unit(a), &br(&d, &unit(b), &unit(c))), br(&d, &unit(b), &br(&d, &unit(c), &unit(a)))),
                        br(&d, &unit(c), &ab),
                    );
                    assert!(s.is_empty(), "{} {} {}", d.label(a), d.label(b), d.label(c));
                }
            }
        }
    }
}

#[test]
fn form_is_invariant() {
    for d in [d4(), b3()] {
        let n = d.dim();
        let form = |x: &BTreeMap<usize, Q>, y: &BTreeMap<usize, Q>| -> Q {
            let mut s = Q::zero();
            for (a, ca) in x {
                for (b, cb) in y {
                    s += ca * cb * d.form(*a, *b);
                }
            }
            s
        };
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    let l = form(&br(&d, &unit(a), &unit(b)), &unit(c));
                    let r = form(&unit(a), &br(&d, &unit(b), &unit(c)));
                    assert_eq!(l, r);
                }
            }
        }
    }
}

#[test]
fn form_is_half_the_trace_form() {
    for d in [d4(), b3()] {
        let r = Realization::new(d.kind(), d.rank());
        let mat = |i: usize| match d.label(i) {
            BasisLabel::Root(x) => r.root_vectors[&x].clone(),
            BasisLabel::Coroot(j) => r.coroots[j - 1].clone(),
        };
        let half = Q::new(1.into(), 2.into());
        for a in 0..d.dim() {
            for b in 0..d.dim() {
                assert_eq!(*d.form(a, b), &half * trace(&mul(&mat(a), &mat(b))), "{} {}", d.label(a), d.label(b));
            }
        }
    }
}

#[test]
fn structure_constants_are_one_or_two() {
    for d in [d4(), b3(), RootDatum::build(AlgebraType::B, 4).unwrap()] {
        let roots: Vec<RootLabel> = d.positive_roots().into_iter().flat_map(|r| [r, r.neg()]).collect();
        for &a in &roots {
            for &b in &roots {
                let n = d.structure_constant(a, b);
                let sum: Vec<i64> = a.eps(d.rank()).iter().zip(b.eps(d.rank())).map(|(x, y)| x + y).collect();
                if RootLabel::from_eps(&sum).is_some_and(|r| roots.contains(&r)) {
                    assert!(n.abs() == 1 || n.abs() == 2, "{a} {b} {n}");
                } else {
                    assert_eq!(n, 0, "{a} {b}");
                }
            }
        }
    }
}

fn env_strategy(dim: usize) -> impl Strategy<Value = Vec<(Vec<usize>, i64)>> {
    prop::collection::vec((prop::collection::vec(0..dim, 0..4), -3i64..4), 1..4)
}

fn env_from(d: &RootDatum, parts: &[(Vec<usize>, i64)]) -> EnvElement {
    parts
        .iter()
        .fold(EnvElement::zero(d), |acc, (w, c)| acc.add(&EnvElement::word(d, w, q(*c))))
}

fn lie_from(d: &RootDatum, parts: &[(usize, i64)]) -> LieElement {
    LieElement::from_terms(d, parts.iter().map(|&(i, c)| (i, q(c))))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn pbw_product_is_associative(a in env_strategy(28), b in env_strategy(28), c in env_strategy(28)) {
        let d = d4();
        let (a, b, c) = (env_from(&d, &a), env_from(&d, &b), env_from(&d, &c));
        let l = d.env_product(&d.env_product(&a, &b).unwrap(), &c).unwrap();
        let r = d.env_product(&a, &d.env_product(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn pbw_rewriting_is_confluent(a in env_strategy(21), b in env_strategy(21), c in env_strategy(21)) {
        let d = b3();
        let (a, b, c) = (env_from(&d, &a), env_from(&d, &b), env_from(&d, &c));
        let ab = d.env_product_with(&a, &b, Rewrite::FirstDescent).unwrap();
        let l = d.env_product_with(&ab, &c, Rewrite::FirstDescent).unwrap();
        let ab = d.env_product_with(&a, &b, Rewrite::LastDescent).unwrap();
        let r = d.env_product_with(&ab, &c, Rewrite::LastDescent).unwrap();
        prop_assert_eq!(l, r);
    }

    #[test]
    fn env_text_roundtrip(a in env_strategy(28)) {
        let d = d4();
        let a = env_from(&d, &a);
        prop_assert_eq!(d.parse_env(&a.display(&d)).unwrap(), a);
    }

    #[test]
    fn adjoint_action_is_a_derivation_and_a_representation(
        x in prop::collection::vec((0usize..28, -2i64..3), 1..3),
        y in prop::collection::vec((0usize..28, -2i64..3), 1..3),
        a in env_strategy(28),
        b in env_strategy(28),
    ) {
        let d = d4();
        let (x, y) = (lie_from(&d, &x), lie_from(&d, &y));
        let (a, b) = (env_from(&d, &a), env_from(&d, &b));
        let ab = d.env_product(&a, &b).unwrap();
        let lhs = d.adjoint_act(&x, &ab).unwrap();
        let rhs = d.env_product(&d.adjoint_act(&x, &a).unwrap(), &b).unwrap()
            .add(&d.env_product(&a, &d.adjoint_act(&x, &b).unwrap()).unwrap());
        prop_assert_eq!(lhs, rhs);
        let xy = d.bracket(&x, &y).unwrap();
        let comm = d.adjoint_act(&x, &d.adjoint_act(&y, &a).unwrap()).unwrap()
            .sub(&d.adjoint_act(&y, &d.adjoint_act(&x, &a).unwrap()).unwrap());
        prop_assert_eq!(d.adjoint_act(&xy, &a).unwrap(), comm);
    }

    #[test]
    fn mode_commutator_identity(
        x in 0usize..28,
        y in 0usize..28,
        m in -2i64..3,
        n in -2i64..3,
        modes in prop::collection::vec((0usize..28, 1i64..3), 0..3),
    ) {
        let d = d4();
        let vm = VacuumModule::symbolic(&d);
        let neg: Vec<(usize, i64)> = modes.iter().map(|&(z, p)| (z, -p)).collect();
        let s = vm.apply_modes(&neg, &vm.vacuum());
        let lhs = vm.mode_act(x, m, &vm.mode_act(y, n, &s))
            .add(&vm.mode_act(y, n, &vm.mode_act(x, m, &s)).scale(&UniPoly::constant(q(-1))));
        let mut rhs = VertexState::zero(&d);
        for (z, c) in d.bracket_basis(x, y) {
            rhs = rhs.add(&vm.mode_act(*z, m + n, &s).scale(&UniPoly::constant(q(*c))));
        }
        if m + n == 0 && !d.form(x, y).is_zero() {
            let c = UniPoly::new(vec![Q::zero(), q(m) * d.form(x, y)]);
            rhs = rhs.add(&s.scale(&c));
        }
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn state_text_roundtrip(modes in prop::collection::vec((0usize..28, 1i64..3), 0..4), c in -3i64..4) {
        let d = d4();
        let vm = VacuumModule::symbolic(&d);
        let neg: Vec<(usize, i64)> = modes.iter().map(|&(z, p)| (z, -p)).collect();
        let k_plus = UniPoly::new(vec![q(c), q(1)]);
        let s = vm.apply_modes(&neg, &vm.vacuum()).scale(&k_plus);
        prop_assert_eq!(vm.parse_state(&s.display(&d)).unwrap(), s);
    }
}
