//! Acceptance criteria 1-8. Runs without the libtest harness so that every
//! criterion prints one `[PASS]` or `[FAIL]` line; exits nonzero on any failure.

use std::cell::Cell;
use std::collections::BTreeMap;
use std::fmt::Display;
use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::test_runner::{Config, RngAlgorithm, TestRng, TestRunner};

use hodge_forge::characters::{contains, decompose, ext_character, sym_character, weyl_dim};
use hodge_forge::dsl::{evaluate_str, parse, Expr, FUNCTIONS};
use hodge_forge::lambda::VirtualBundle;
use hodge_forge::ring::{integer, rational, GradedClass, Space};
use hodge_forge::spaces::Geometry;
use hodge_forge::verifier::{Check, CheckName, CheckReport, Perturbation, Status};

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn ok<T, E: Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn within(label: &str, elapsed: Duration, limit: Duration) -> Result<(), String> {
    ensure(elapsed < limit, || {
        format!("{label} took {elapsed:.2?}, limit {limit:.0?}")
    })
}

fn check(name: CheckName, params: &[(&str, i64)]) -> Result<CheckReport, String> {
    let params: BTreeMap<String, i64> = params.iter().map(|(k, v)| (k.to_string(), *v)).collect();
    let report = ok(Check::new(name, &params))?.run();
    ensure(report.status == Status::Pass, || {
        format!(
            "{name} {:?} {}: lhs `{}` rhs `{}`",
            report.params, report.status, report.lhs, report.rhs
        )
    })?;
    Ok(report)
}

/// Exact binomial by the multiplicative formula.
fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1u128, |acc, i| acc * u128::from(n - i) / u128::from(i + 1)) as u64
}

fn factorial(k: u64) -> u64 {
    (1..=k).product()
}

/// Inverse total Chern class of TX, by geometric series in `c(TX) - 1`.
fn segre(g: &Geometry) -> Result<GradedClass, String> {
    let one = GradedClass::one(g.x());
    let c = ok(g.tangent_bundle().and_then(|t| t.chern_total()))?;
    let x = ok(one.sub(&c))?;
    let mut acc = one.clone();
    let mut power = one;
    for _ in 0..2 * g.n() {
        power = ok(power.mul(&x))?;
        acc = ok(acc.add(&power))?;
    }
    Ok(acc)
}

fn criterion_1() -> Outcome {
    let mut worst = Duration::ZERO;
    for n in 2..=5u32 {
        let start = Instant::now();
        let g = ok(Geometry::new(n))?;
        let h = ok(g.d_class("h"))?;
        let push = |i: u32| ok(g.pushforward_p(&h.pow(i)));
        for i in 0..2 * n - 1 {
            ensure(push(i)?.is_zero(), || format!("n={n}: p_*(h^{i}) != 0"))?;
        }
        ensure(push(2 * n - 1)?.as_constant() == Some(integer(1)), || {
            format!("n={n}: p_*(h^{}) != 1", 2 * n - 1)
        })?;
        for i in (0..=2 * n + 6).step_by(2) {
            ensure(push(i)?.is_zero(), || format!("n={n}: p_*(h^{i}) != 0"))?;
        }
        let s = segre(&g)?;
        for k in [1, 3, 5] {
            let direct = push(2 * n + k)?;
            let expected = s.graded_component(k + 1);
            ensure(direct == expected, || {
                format!("n={n} k={k}: p_*(h^{}) = {direct}, inverse Chern class gives {expected}", 2 * n + k)
            })?;
        }
        check(CheckName::PstarTable, &[("n", i64::from(n)), ("i_max", i64::from(2 * n + 6))])?;
        let elapsed = start.elapsed();
        within(&format!("n={n}"), elapsed, Duration::from_secs(1))?;
        worst = worst.max(elapsed);
    }
    Ok(format!("n=2..5, slowest {worst:.2?}"))
}

fn criterion_2() -> Outcome {
    let start = Instant::now();
    for n in 2..=4u32 {
        let report = check(CheckName::GrrC1, &[("n", i64::from(n))])?;
        let td1 = rational(1 - 2 * i64::from(n), 2);
        let expected = format!("td_1: push_iota({td1});");
        ensure(report.lhs.starts_with(&expected), || {
            format!("n={n}: `{}` does not start with `{expected}`", report.lhs)
        })?;
        ensure(report.lhs.contains("beta_*[D]: 0;"), || format!("n={n}: beta_*[D] != 0"))?;
        let g = ok(Geometry::new(n))?;
        ensure(ok(g.pushforward_beta(&g.exceptional_divisor()))?.is_zero(), || {
            format!("n={n}: direct beta_*[D] != 0")
        })?;
    }
    let elapsed = start.elapsed();
    within("GRR", elapsed, Duration::from_secs(1))?;
    Ok(format!("td_1 = (1-2n)/2 for n=2..4 in {elapsed:.2?}"))
}

fn criterion_3() -> Outcome {
    let start = Instant::now();
    let mut seen = Vec::new();
    for n in [2u32, 3] {
        let b = binomial(u64::from(4 * n - 1), u64::from(2 * n));
        let (top, lin) = (2 * n, 2 * n - 1);
        let expected = format!("{b}*<w^{top}>*<w^{lin}*a> + {b}*<w^{top}>*<w^{lin}*b>");
        let expr = format!("integrate((f1_w + f2_w)^{}*(f1_a + f2_b))", 4 * n - 1);
        let got = ok(evaluate_str(&expr, Space::XX, n))?;
        ensure(got == expected, || format!("n={n}: {got} != {expected}"))?;
        check(CheckName::DegreeChain, &[("n", i64::from(n))])?;
        seen.push(b);
    }
    ensure(seen == [35, 462], || format!("binomials {seen:?}"))?;
    let elapsed = start.elapsed();
    within("degree chain", elapsed, Duration::from_secs(5))?;
    Ok(format!("factors {seen:?} in {elapsed:.2?}"))
}

fn criterion_4() -> Outcome {
    let mut runs = 0;
    for n in 2..=4i64 {
        check(CheckName::DivisorDegree, &[("n", n)])?;
        check(CheckName::DiagonalRestriction, &[("n", n)])?;
        for g in 1..=2 * n - 3 {
            check(CheckName::HomRestriction, &[("n", n), ("g", g)])?;
            runs += 1;
        }
        runs += 2;
    }
    Ok(format!("{runs} checks for n=2..4"))
}

fn criterion_5() -> Outcome {
    let mut worst = Duration::ZERO;
    for n in 2..=4i64 {
        let start = Instant::now();
        let report = check(CheckName::SlopePolynomial, &[("n", n)])?;
        let elapsed = start.elapsed();
        within(&format!("n={n}"), elapsed, Duration::from_secs(10))?;
        worst = worst.max(elapsed);
        let degree = format!("deg_N Q: {};", 2 * n - 1);
        let leading = format!("leading: 1/{}*alpha;", factorial(2 * n as u64 - 1));
        for needle in [degree.as_str(), leading.as_str(), "leading mentions: []"] {
            ensure(report.lhs.contains(needle), || {
                format!("n={n}: `{needle}` missing from `{}`", report.lhs)
            })?;
        }
    }
    Ok(format!("n=2..4, slowest {worst:.2?}"))
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let mut decompositions = 0;
    for n in 2..=4usize {
        for t in 2..=6u32 {
            for j in 0..=2 * n as u32 {
                ensure(!contains(n, t, j), || format!("Sym^{t} inside Lambda^{j} at n={n}"))?;
            }
        }
        let total = |chi| -> Result<BigInt, String> {
            let d = ok(decompose(n, &chi))?;
            let mut sum = BigInt::from(0);
            for (w, mult) in d.iter() {
                sum += ok(weyl_dim(n, w))? * BigInt::from(mult);
            }
            Ok(sum)
        };
        for j in 0..=2 * n as u32 {
            let expected = BigInt::from(binomial(2 * n as u64, u64::from(j)));
            let got = total(ext_character(n, j))?;
            ensure(got == expected, || format!("n={n} j={j}: dimension {got} != {expected}"))?;
            decompositions += 1;
        }
        for t in 2..=6u32 {
            let expected = BigInt::from(binomial(2 * n as u64 + u64::from(t) - 1, u64::from(t)));
            let got = total(sym_character(n, t))?;
            ensure(got == expected, || format!("n={n} t={t}: dimension {got} != {expected}"))?;
            decompositions += 1;
        }
    }
    let elapsed = start.elapsed();
    within("characters", elapsed, Duration::from_secs(30))?;
    Ok(format!("{decompositions} decompositions in {elapsed:.2?}"))
}

/// `sum over j-element sub-multisets (or subsets) of prod ch(L_i)`, enumerated directly.
fn split_oracle(roots: &[GradedClass], j: usize, symmetric: bool) -> Result<GradedClass, String> {
    let ctx = roots[0].context();
    let ch: Vec<GradedClass> = roots
        .iter()
        .map(|r| ok(VirtualBundle::line_bundle(r)).map(VirtualBundle::into_ch))
        .collect::<Result<_, _>>()?;
    let mut out = GradedClass::zero(ctx);
    let mut stack = vec![(0usize, 0usize, GradedClass::one(ctx))];
    while let Some((start, depth, acc)) = stack.pop() {
        if depth == j {
            out = ok(out.add(&acc))?;
            continue;
        }
        for i in start..roots.len() {
            let next = if symmetric { i } else { i + 1 };
            stack.push((next, depth + 1, ok(acc.mul(&ch[i]))?));
        }
    }
    Ok(out)
}

fn sum_of_lines(roots: &[GradedClass]) -> Result<VirtualBundle, String> {
    let mut vb = VirtualBundle::trivial(&GradedClass::zero(roots[0].context()), 0);
    for r in roots {
        vb = ok(vb.direct_sum(&ok(VirtualBundle::line_bundle(r))?))?;
    }
    Ok(vb)
}

fn criterion_7() -> Outcome {
    let mut runs = 0;
    for n in 2..=3i64 {
        for j in 0..=3 {
            for t in 0..=4 {
                check(CheckName::SesCh, &[("n", n), ("j", j), ("t", t)])?;
                runs += 1;
            }
        }
    }
    let g = ok(Geometry::new(2))?;
    let d = |name: &str| ok(g.d_class(name));
    let models = [
        vec![d("h")?],
        vec![d("h")?, d("h")?.neg()],
        vec![d("a")?, d("h")?.neg(), ok(d("w")?.add(&d("h")?))?],
    ];
    for roots in &models {
        let v = sum_of_lines(roots)?;
        let (sub, last) = roots.split_at(roots.len() - 1);
        let quotient = ok(VirtualBundle::line_bundle(&last[0]))?;
        for k in 0..=4u32 {
            let ext = ok(v.ext_power(k))?;
            let sym = ok(v.sym_power(k))?;
            ensure(*ext.ch() == split_oracle(roots, k as usize, false)?, || {
                format!("Lambda^{k} of {} lines", roots.len())
            })?;
            ensure(*sym.ch() == split_oracle(roots, k as usize, true)?, || {
                format!("Sym^{k} of {} lines", roots.len())
            })?;
            if sub.is_empty() {
                continue;
            }
            // 0 -> S -> V -> L -> 0 with L a line bundle
            let s = sum_of_lines(sub)?;
            let mut ext_rhs = ok(s.ext_power(k))?;
            if k > 0 {
                ext_rhs = ok(ext_rhs.direct_sum(&ok(ok(s.ext_power(k - 1))?.tensor(&quotient))?))?;
            }
            ensure(ext_rhs.ch() == ext.ch(), || format!("Lambda^{k} sequence, {} lines", roots.len()))?;
            let mut sym_rhs = VirtualBundle::trivial(&GradedClass::zero(g.d()), 0);
            let mut power = VirtualBundle::trivial(&GradedClass::zero(g.d()), 1);
            for i in 0..=k {
                sym_rhs = ok(sym_rhs.direct_sum(&ok(ok(s.sym_power(k - i))?.tensor(&power))?))?;
                power = ok(power.tensor(&quotient))?;
            }
            ensure(sym_rhs.ch() == sym.ch(), || format!("Sym^{k} sequence, {} lines", roots.len()))?;
        }
    }
    Ok(format!("{runs} sequence checks, {} split models", models.len()))
}

fn runner(cases: u32) -> TestRunner {
    TestRunner::new_with_rng(
        Config {
            cases,
            failure_persistence: None,
            ..Config::default()
        },
        TestRng::deterministic_rng(RngAlgorithm::ChaCha),
    )
}

fn raw_class(ctx: &Arc<hodge_forge::ring::Context>, names: &[&str], terms: &[(Vec<u32>, i64, i64)]) -> GradedClass {
    let raw: Vec<_> = terms
        .iter()
        .map(|(es, p, q)| {
            let mut exps = vec![0; ctx.table().len()];
            for (name, e) in names.iter().zip(es) {
                exps[ctx.table().get(name).expect("generator")] = *e;
            }
            (GradedClass::raw_monomial(ctx, exps), rational(*p, *q))
        })
        .collect();
    GradedClass::from_terms_unreduced(ctx, raw)
}

fn terms_strategy(width: usize, max_exp: u32) -> impl Strategy<Value = Vec<(Vec<u32>, i64, i64)>> {
    prop::collection::vec((prop::collection::vec(0..max_exp, width), -5i64..=5, 1i64..=4), 0..5)
}

fn expr_strategy() -> impl Strategy<Value = Expr> {
    let ident = prop::sample::select(vec!["h", "w", "alpha", "a", "b", "lam", "D", "N", "c2", "c4"])
        .prop_map(Expr::ident);
    let literal = (0i64..50, 1i64..7).prop_map(|(p, q)| Expr::rational(rational(p, q)));
    let leaf = prop_oneof![3 => ident, 1 => literal];
    leaf.prop_recursive(5, 40, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::add(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::sub(a, b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Expr::mul(a, b)),
            (inner.clone(), 0u32..6).prop_map(|(a, e)| Expr::pow(a, e)),
            (prop::sample::select(FUNCTIONS.to_vec()), prop::collection::vec(inner, 1..3))
                .prop_map(|(f, args)| Expr::call(f, args)),
        ]
    })
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    let g2 = ok(Geometry::new(2))?;
    let names = ["N", "w", "alpha", "c2", "c4", "h"];
    let count = Cell::new(0u32);

    let d = g2.d().clone();
    let ring = (terms_strategy(6, 4), terms_strategy(6, 4), terms_strategy(6, 4));
    runner(1000)
        .run(&ring, |(x, y, z)| {
            let (x, y, z) = (
                raw_class(&d, &names, &x).normal_form(),
                raw_class(&d, &names, &y).normal_form(),
                raw_class(&d, &names, &z).normal_form(),
            );
            let one = GradedClass::one(&d);
            prop_assert_eq!(x.add(&y).unwrap(), y.add(&x).unwrap());
            prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
            prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
            prop_assert_eq!(
                x.mul(&y.add(&z).unwrap()).unwrap(),
                x.mul(&y).unwrap().add(&x.mul(&z).unwrap()).unwrap()
            );
            prop_assert_eq!(x.mul(&one).unwrap(), x.clone());
            prop_assert!(x.add(&x.neg()).unwrap().is_zero());
            count.set(count.get() + 1);
            Ok(())
        })
        .map_err(|e| format!("ring axioms: {e}"))?;
    let axioms = count.replace(0);

    runner(1000)
        .run(&(terms_strategy(6, 6), terms_strategy(6, 6)), |(x, y)| {
            let (x, y) = (raw_class(&d, &names, &x), raw_class(&d, &names, &y));
            let nx = x.normal_form();
            prop_assert_eq!(nx.normal_form(), nx.clone());
            prop_assert_eq!(x.add(&y).unwrap().normal_form(), nx.add(&y.normal_form()).unwrap());
            prop_assert_eq!(x.mul(&y).unwrap(), nx.mul(&y.normal_form()).unwrap());
            count.set(count.get() + 1);
            Ok(())
        })
        .map_err(|e| format!("normal form: {e}"))?;
    let normal_forms = count.replace(0);

    for n in [2u32, 3] {
        let g = ok(Geometry::new(n))?;
        let x_names = ["w", "alpha", "c2", "u2", "g"];
        let d_names = ["w", "c2", "h", "u3", "N"];
        let pairs = (terms_strategy(5, 3), terms_strategy(5, 2 * n + 2));
        runner(100)
            .run(&pairs, |(x, y)| {
                let x = raw_class(g.x(), &x_names, &x).normal_form();
                let y = raw_class(g.d(), &d_names, &y).normal_form();
                let lhs = g.pushforward_p(&g.pullback_p(&x).unwrap().mul(&y).unwrap()).unwrap();
                let rhs = x.mul(&g.pushforward_p(&y).unwrap()).unwrap();
                prop_assert_eq!(lhs, rhs);
                count.set(count.get() + 1);
                Ok(())
            })
            .map_err(|e| format!("projection formula n={n}: {e}"))?;
    }
    let projections = count.replace(0);

    runner(1000)
        .run(&expr_strategy(), |e| {
            let printed = e.to_string();
            let reparsed = parse(&printed).unwrap();
            prop_assert_eq!(&reparsed, &e);
            prop_assert_eq!(reparsed.to_string(), printed);
            count.set(count.get() + 1);
            Ok(())
        })
        .map_err(|e| format!("parser round trip: {e}"))?;
    let round_trips = count.get();

    let controls = [
        (Perturbation::FlipHRelation, CheckName::PstarTable),
        (Perturbation::FlipHRelation, CheckName::QRelation),
        (Perturbation::FlipToddCoefficient, CheckName::GrrC1),
    ];
    for n in 2..=4 {
        for (p, name) in controls {
            let report = ok(Check::with_defaults(name, n))?.run_perturbed(p);
            ensure(report.status == Status::Fail, || {
                format!("{name} n={n} under {p:?} is {}", report.status)
            })?;
        }
    }

    let elapsed = start.elapsed();
    within("engine properties", elapsed, Duration::from_secs(60))?;
    Ok(format!(
        "{axioms} axiom triples, {normal_forms} normal-form pairs, {projections} projection pairs, \
         {round_trips} round trips, {} negative controls in {elapsed:.2?}",
        controls.len() * 3
    ))
}

fn main() -> ExitCode {
    let criteria: [(u8, fn() -> Outcome); 8] = [
        (1, criterion_1),
        (2, criterion_2),
        (3, criterion_3),
        (4, criterion_4),
        (5, criterion_5),
        (6, criterion_6),
        (7, criterion_7),
        (8, criterion_8),
    ];
    let mut failed = 0;
    for (id, run) in criteria {
        match run() {
            Ok(detail) => println!("[PASS] criterion {id}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("[FAIL] criterion {id}: {detail}");
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} of 8 criteria failed");
        ExitCode::FAILURE
    }
}
