use std::collections::BTreeMap;
use std::sync::Arc;

use num_traits::Zero;
use proptest::prelude::*;

use super::*;

fn ctx(space: Space, n: u32) -> Arc<Context> {
    Context::new(space, n).unwrap()
}

fn gen(c: &Arc<Context>, name: &str) -> GradedClass {
    GradedClass::generator(c, name).unwrap()
}

fn h_power_unreduced(c: &Arc<Context>, e: u32) -> GradedClass {
    let mut exps = vec![0; c.table().len()];
    exps[c.table().get("h").unwrap()] = e;
    let m = GradedClass::raw_monomial(c, exps);
    GradedClass::from_terms_unreduced(c, [(m, integer(1))])
}

#[test]
fn additive_identity_and_cancellation() {
    let d = ctx(Space::D, 2);
    let h = gen(&d, "h");
    assert_eq!(h.add(&GradedClass::zero(&d)).unwrap(), h);

    let k = gen(&d, "k");
    let alpha = gen(&d, "alpha");
    let kh = k.mul(&h).unwrap();
    let c1 = alpha.sub(&kh).unwrap();
    assert_eq!(c1.add(&kh).unwrap(), alpha);

    let c2 = gen(&d, "c2");
    assert_eq!(c2.add(&c2).unwrap().to_string(), "2*c2");
}

#[test]
fn mixing_contexts_is_an_error() {
    let x = ctx(Space::X, 2);
    let d = ctx(Space::D, 2);
    let err = gen(&x, "w").add(&gen(&d, "w")).unwrap_err();
    assert!(matches!(err, crate::Error::IncompatibleContext { .. }));
    assert!(gen(&x, "w").mul(&gen(&ctx(Space::X, 3), "w")).is_err());
}

#[test]
fn top_degree_cutoff_on_x() {
    for n in 2..=4 {
        let x = ctx(Space::X, n);
        let w = gen(&x, "w");
        assert!(!w.pow(2 * n).is_zero());
        assert!(w.pow(2 * n).mul(&w).unwrap().is_zero());
    }
}

#[test]
fn difference_of_squares() {
    let d = ctx(Space::D, 2);
    let one = GradedClass::one(&d);
    let h = gen(&d, "h");
    let prod = one.add(&h).unwrap().mul(&one.sub(&h).unwrap()).unwrap();
    assert_eq!(prod.to_string(), "1 - h^2");
}

#[test]
fn grothendieck_relation_in_products() {
    let d = ctx(Space::D, 2);
    let h = gen(&d, "h");
    let h4 = h.pow(3).mul(&h).unwrap();
    assert_eq!(h4.to_string(), "-c2*h^2 - c4");
}

#[test]
fn normal_form_examples() {
    let d = ctx(Space::D, 2);
    assert_eq!(h_power_unreduced(&d, 4).normal_form().to_string(), "-c2*h^2 - c4");
    assert_eq!(h_power_unreduced(&d, 5).normal_form().to_string(), "-c2*h^3 - c4*h");
    let wa = gen(&d, "w").mul(&gen(&d, "alpha")).unwrap();
    assert_eq!(wa.normal_form(), wa);
}

/// Single-step rewriter: replaces one factor `h^{2n}` at a time, with its own
/// degree bookkeeping, until nothing changes.
fn single_step_reduce(n: u32, start: BTreeMap<(u32, Vec<u32>), Scalar>) -> BTreeMap<(u32, Vec<u32>), Scalar> {
    // state: (h exponent, exponents of c2, c4, ..., c2n)
    let top = 2 * n;
    let bound = 4 * n - 1;
    let mut poly = start;
    loop {
        let target = poly.keys().find(|(e, _)| *e >= top).cloned();
        let Some(key) = target else { return poly };
        let coeff = poly.remove(&key).unwrap();
        let (e, cs) = key;
        for j in (2..=top).step_by(2) {
            let mut ncs = cs.clone();
            ncs[(j / 2 - 1) as usize] += 1;
            let base: u32 = ncs.iter().enumerate().map(|(i, x)| x * 2 * (i as u32 + 1)).sum();
            let ne = e - j;
            if base > top || base + ne > bound {
                continue;
            }
            let entry = poly.entry((ne, ncs)).or_insert_with(Scalar::zero);
            *entry -= &coeff;
        }
        poly.retain(|_, c| !c.is_zero());
    }
}

fn oracle_to_class(d: &Arc<Context>, poly: &BTreeMap<(u32, Vec<u32>), Scalar>) -> GradedClass {
    let n = d.n();
    let mut acc = GradedClass::zero(d);
    for ((e, cs), c) in poly {
        let mut factors: Vec<(String, u32)> = vec![("h".into(), *e)];
        for (i, x) in cs.iter().enumerate() {
            factors.push((format!("c{}", 2 * (i + 1)), *x));
        }
        let f: Vec<(&str, u32)> = factors.iter().map(|(s, x)| (s.as_str(), *x)).collect();
        let m = GradedClass::monomial(d, &f).unwrap().scale(c);
        acc = acc.add(&m).unwrap();
        let _ = n;
    }
    acc
}

#[test]
fn normal_form_matches_single_step_rewriter() {
    for n in 2..=4 {
        let d = ctx(Space::D, n);
        for e in 0..=(4 * n - 1) {
            let mut start = BTreeMap::new();
            start.insert((e, vec![0; n as usize]), integer(1));
            let oracle = single_step_reduce(n, start);
            assert_eq!(
                h_power_unreduced(&d, e).normal_form(),
                oracle_to_class(&d, &oracle),
                "n={n}, h^{e}"
            );
        }
    }
}

#[test]
fn graded_component_examples() {
    let d = ctx(Space::D, 2);
    let h = gen(&d, "h");
    let c2 = gen(&d, "c2");
    let td = GradedClass::one(&d)
        .add(&h.scale(&integer(2)))
        .unwrap()
        .add(&c2.scale(&rational(1, 12)))
        .unwrap();
    assert_eq!(td.graded_component(1), h.scale(&integer(2)));
    assert!(c2.graded_component(1).is_zero());

    let nh = gen(&d, "N").mul(&h).unwrap();
    let mut exp = GradedClass::zero(&d);
    for j in 0..=7u32 {
        let c = Scalar::new(1.into(), factorial(j));
        exp = exp.add(&nh.pow(j).scale(&c)).unwrap();
    }
    assert_eq!(exp.graded_component(3).to_string(), "1/6*N^3*h^3");
    assert_eq!(exp.coefficient_in_n(2).to_string(), "1/2*h^2");
    assert_eq!(c2.coefficient_in_n(0), c2);

    let g = gen(&d, "g");
    let nn = gen(&d, "N").pow(4);
    let c = Scalar::new(1.into(), factorial(4));
    let term = g.mul(&h.pow(4)).unwrap().mul(&nn).unwrap().scale(&c);
    let expected = g.mul(&h.pow(4)).unwrap().scale(&c);
    assert_eq!(term.coefficient_in_n(4), expected);
    assert_eq!(expected.to_string(), "-1/24*g*c2*h^2 - 1/24*g*c4");
}

#[test]
fn canonical_serialization() {
    let d = ctx(Space::D, 2);
    let x = GradedClass::monomial(&d, &[("c2", 1), ("h", 2)])
        .unwrap()
        .scale(&rational(-1, 12));
    assert_eq!(x.to_string(), "-1/12*c2*h^2");
    assert_eq!(GradedClass::zero(&d).to_string(), "0");
    let xx = ctx(Space::XX, 2);
    let y = GradedClass::monomial(&xx, &[("f1_w", 3), ("f2_a", 1)]).unwrap();
    assert_eq!(y.to_string(), "f1_w^3*f2_a");
}

#[test]
fn generator_table_invariants() {
    for n in 2..=MAX_N {
        let d = ctx(Space::D, n);
        let t = d.table();
        for j in (1..=2 * n).step_by(2) {
            assert!(t.get(&format!("c{j}")).is_none());
        }
        for j in (2..=2 * n).step_by(2) {
            assert_eq!(t.generator(t.get(&format!("c{j}")).unwrap()).degree, j);
        }
        assert_eq!(t.generator(t.len() - 1).name, "h");
        assert!(t.iter().all(|g| g.degree > 0 || PARAMETERS.contains(&g.name.as_str())));
    }
    assert!(Context::new(Space::X, 1).is_err());
    assert!(Context::new(Space::X, MAX_N + 1).is_err());
    assert!(GeneratorTable::new(vec![
        Generator { name: "x".into(), degree: 1, block: Block::Base },
        Generator { name: "x".into(), degree: 2, block: Block::Base },
    ])
    .is_err());
}

// ---- randomized ring laws ----

const NAMES_D: [&str; 6] = ["N", "w", "alpha", "c2", "c4", "h"];
const NAMES_X: [&str; 6] = ["g", "w", "a", "b", "c2", "u2"];

fn class_strategy(space: Space, reduced: bool) -> impl Strategy<Value = GradedClass> {
    let names: &'static [&'static str] = if space == Space::D { &NAMES_D } else { &NAMES_X };
    let term = (
        proptest::collection::vec(0u32..4, names.len()),
        -5i64..=5,
        1i64..=4,
    );
    proptest::collection::vec(term, 0..5).prop_map(move |terms| {
        let c = ctx(space, 2);
        let raw: Vec<_> = terms
            .into_iter()
            .map(|(es, p, q)| {
                let mut exps = vec![0; c.table().len()];
                for (name, e) in names.iter().zip(es) {
                    exps[c.table().get(name).unwrap()] = e;
                }
                (GradedClass::raw_monomial(&c, exps), rational(p, q))
            })
            .collect();
        if reduced {
            GradedClass::from_terms(&c, raw)
        } else {
            GradedClass::from_terms_unreduced(&c, raw)
        }
    })
}

fn triple(space: Space) -> impl Strategy<Value = (GradedClass, GradedClass, GradedClass)> {
    (
        class_strategy(space, true),
        class_strategy(space, true),
        class_strategy(space, true),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn ring_axioms_on_d((x, y, z) in triple(Space::D)) {
        check_axioms(&x, &y, &z);
    }

    #[test]
    fn ring_axioms_on_x((x, y, z) in triple(Space::X)) {
        check_axioms(&x, &y, &z);
    }

    #[test]
    fn normal_form_is_idempotent_and_additive(
        x in class_strategy(Space::D, false),
        y in class_strategy(Space::D, false),
    ) {
        let nx = x.normal_form();
        prop_assert_eq!(nx.normal_form(), nx.clone());
        prop_assert_eq!(x.add(&y).unwrap().normal_form(), nx.add(&y.normal_form()).unwrap());
        let h = x.context().table().get("h").unwrap();
        prop_assert!(nx.terms().all(|(m, _)| m.exponents()[h] < 4));
        for d in 0..=7 {
            prop_assert!(x.graded_component(d).normal_form().is_homogeneous_of(d));
        }
    }

    #[test]
    fn multiplication_commutes_with_normal_form(
        x in class_strategy(Space::D, false),
        y in class_strategy(Space::D, false),
    ) {
        prop_assert_eq!(
            x.mul(&y).unwrap(),
            x.normal_form().mul(&y.normal_form()).unwrap()
        );
    }

    #[test]
    fn graded_components_sum_to_identity(x in class_strategy(Space::D, true)) {
        let mut acc = GradedClass::zero(x.context());
        for d in 0..=x.context().bound() {
            acc = acc.add(&x.graded_component(d)).unwrap();
        }
        prop_assert_eq!(acc, x);
    }
}

fn check_axioms(x: &GradedClass, y: &GradedClass, z: &GradedClass) {
    let one = GradedClass::one(x.context());
    let zero = GradedClass::zero(x.context());
    assert_eq!(x.add(y).unwrap(), y.add(x).unwrap());
    assert_eq!(x.add(y).unwrap().add(z).unwrap(), x.add(&y.add(z).unwrap()).unwrap());
    assert_eq!(x.mul(y).unwrap(), y.mul(x).unwrap());
    assert_eq!(
        x.mul(y).unwrap().mul(z).unwrap(),
        x.mul(&y.mul(z).unwrap()).unwrap()
    );
    assert_eq!(
        x.mul(&y.add(z).unwrap()).unwrap(),
        x.mul(y).unwrap().add(&x.mul(z).unwrap()).unwrap()
    );
    assert_eq!(x.mul(&one).unwrap(), *x);
    assert_eq!(x.add(&zero).unwrap(), *x);
    assert!(x.add(&x.neg()).unwrap().is_zero());
}
