//! Acceptance suite. Prints one line per criterion and exits non-zero if any
//! criterion fails.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::Instant;

use qsymx_core::characters::ClosedFormCharacter::*;
use qsymx_core::composition::{compositions_up_to, Composition};
use qsymx_core::exactnum::{bivariate_catalan, BigInt, Rational};
use qsymx_core::permutation::all_permutations;
use qsymx_core::qsym::{descent_map, Basis, QSymElement};
use qsymx_core::{Checker, Depth, Exec, IdentityId, SSymElement};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn elements(basis: Basis, max: usize) -> Vec<QSymElement> {
    compositions_up_to(max)
        .into_iter()
        .map(|a| QSymElement::basis_element(basis, a))
        .collect()
}

fn degree(x: &QSymElement) -> usize {
    x.max_degree().unwrap_or(0)
}

// 1
fn oracle_equivalence() -> Outcome {
    let zeta = Zeta.restrict(9);
    let (plus, minus) = zeta.decompose().map_err(|e| e.to_string())?;
    let mut checked = 0usize;
    for a in compositions_up_to(9) {
        for (table, closed) in [(&plus, ZetaPlus), (&minus, ZetaMinus)] {
            let got = table.value(&a).map_err(|e| e.to_string())?;
            let want = closed.eval_m(&a);
            ensure(*got == want, || format!("{closed} on M[{a}]: {got} != {want}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} values of zeta-plus and zeta-minus, n <= 9"))
}

// 2
fn f_basis() -> Outcome {
    let mut checked = 0usize;
    for c in [ZetaMinus, ZetaPlus, ZetaInv, ZetaInvMinus, ZetaInvPlus] {
        for a in compositions_up_to(9) {
            let pushed = c.eval_element(&QSymElement::f(a.clone()).to_m());
            let direct = c.eval_f(&a);
            ensure(pushed == direct, || format!("{c} on F[{a}]: {direct} != {pushed}"))?;
            checked += 1;
        }
    }
    Ok(format!("{checked} F-basis values, n <= 9"))
}

// 3
fn identity_battery() -> Outcome {
    let reports = Checker::new(Depth::Standard)
        .with_exec(Exec::Sequential)
        .verify_all();
    let cases: usize = reports.iter().map(|r| r.cases_run).sum();
    if let Some(bad) = reports.iter().find(|r| !r.passed()) {
        return Err(bad.to_string());
    }
    Ok(format!(
        "{} identities, {cases} cases, standard depth, sequential",
        reports.len()
    ))
}

type Triple = BTreeMap<(Composition, Composition, Composition), Rational>;

fn add_triple(t: &mut Triple, key: (Composition, Composition, Composition), c: Rational) {
    let e = t.entry(key).or_default();
    *e += c;
}

fn coassoc_sides(x: &QSymElement) -> (Triple, Triple) {
    let (mut left, mut right) = (Triple::new(), Triple::new());
    let basis = x.basis();
    for ((a, b), c) in x.coproduct().terms() {
        let da = QSymElement::basis_element(basis, a.clone()).coproduct();
        for ((a1, a2), c2) in da.terms() {
            add_triple(&mut left, (a1.clone(), a2.clone(), b.clone()), c * c2);
        }
        let db = QSymElement::basis_element(basis, b.clone()).coproduct();
        for ((b1, b2), c2) in db.terms() {
            add_triple(&mut right, (a.clone(), b1.clone(), b2.clone()), c * c2);
        }
    }
    left.retain(|_, v| *v != Rational::default());
    right.retain(|_, v| *v != Rational::default());
    (left, right)
}

// 4
fn hopf_axioms() -> Outcome {
    let mut checks = 0usize;
    for basis in [Basis::M, Basis::F] {
        let els = elements(basis, 6);
        let one = QSymElement::one(basis);
        for x in &els {
            let dx = x.coproduct();
            let (l, r) = coassoc_sides(x);
            ensure(l == r, || format!("coassociativity fails on {x}"))?;

            let unit = one.scale(&x.counit());
            let s_left = dx.map_factors(|y| y.antipode(), |y| y.clone()).contract();
            let s_right = dx.map_factors(|y| y.clone(), |y| y.antipode()).contract();
            ensure(s_left == unit && s_right == unit, || format!("antipode axiom fails on {x}"))?;
            ensure(x.antipode().antipode() == *x, || format!("S^2 != id on {x}"))?;

            let other = match basis {
                Basis::M => Basis::F,
                Basis::F => Basis::M,
            };
            let y = x.to_basis(other);
            ensure(y.to_basis(basis) == *x, || format!("basis round trip fails on {x}"))?;
            ensure(y.antipode() == x.antipode().to_basis(other), || {
                format!("antipode does not commute with basis change on {x}")
            })?;
            let mapped = dx.map_factors(|z| z.to_basis(other), |z| z.to_basis(other));
            ensure(y.coproduct() == mapped, || {
                format!("coproduct does not commute with basis change on {x}")
            })?;
            checks += 1;

            for z in els.iter().filter(|z| degree(x) + degree(z) <= 6) {
                let xz = x.multiply(z).map_err(|e| e.to_string())?;
                let dprod = dx.multiply(&z.coproduct()).map_err(|e| e.to_string())?;
                ensure(xz.coproduct() == dprod, || format!("compatibility fails on {x}, {z}"))?;
                let yz = y.multiply(&z.to_basis(other)).map_err(|e| e.to_string())?;
                ensure(yz.to_basis(basis) == xz, || {
                    format!("product does not commute with basis change on {x}, {z}")
                })?;
                checks += 1;
                for w in els.iter().filter(|w| degree(x) + degree(z) + degree(w) <= 6) {
                    let lhs = xz.multiply(w).map_err(|e| e.to_string())?;
                    let rhs = x
                        .multiply(&z.multiply(w).map_err(|e| e.to_string())?)
                        .map_err(|e| e.to_string())?;
                    ensure(lhs == rhs, || format!("associativity fails on {x}, {z}, {w}"))?;
                    checks += 1;
                }
            }
        }
    }
    Ok(format!("{checks} element, pair and triple checks, degree <= 6, M and F"))
}

// 5
fn character_properties() -> Outcome {
    let chars = [Zeta, ZetaMinus, ZetaPlus, ZetaInv, ZetaInvMinus, ZetaInvPlus];
    let els = elements(Basis::M, 8);
    let mut pairs = 0usize;
    for x in &els {
        for y in els.iter().filter(|y| degree(x) + degree(y) <= 8) {
            let xy = x.multiply(y).map_err(|e| e.to_string())?;
            for c in chars {
                let lhs = c.eval_element(&xy);
                let rhs = c.eval_element(x) * c.eval_element(y);
                ensure(lhs == rhs, || format!("{c} not multiplicative on {x}, {y}"))?;
            }
            pairs += 1;
        }
    }

    let n = 8;
    let minus = ZetaMinus.restrict(n);
    let plus = ZetaPlus.restrict(n);
    let inv_minus = ZetaInvMinus.restrict(n);
    let relations = [
        ("zeta-minus o S = bar zeta-minus", minus.compose_antipode(), minus.bar()),
        ("bar zeta-plus = zeta-plus", plus.bar(), plus.clone()),
        ("zeta-plus o T = zeta-plus", plus.compose_t(), plus.clone()),
        ("(zeta^-1)- = bar zeta-minus o T", inv_minus, minus.bar().compose_t()),
    ];
    for (name, a, b) in relations {
        if let Some((alpha, l, r)) = a.first_difference(&b) {
            return Err(format!("{name} fails on M[{alpha}]: {l} != {r}"));
        }
    }
    Ok(format!(
        "multiplicativity of 6 characters on {pairs} pairs (degree <= 8); 4 parity relations at N = 8"
    ))
}

// 6
fn permutation_layer() -> Outcome {
    let mut checked = 0usize;
    for n in 0..=7 {
        for sigma in all_permutations(n).map_err(|e| e.to_string())? {
            let d = sigma.descent_composition();
            let image = descent_map(&SSymElement::basis(sigma.clone()));
            ensure(image == QSymElement::f(d.clone()), || format!("D({sigma}) != F[{d}]"))?;
            for c in [Zeta, ZetaMinus, ZetaPlus] {
                let via_perm = c.eval_perm(&sigma).map_err(|e| e.to_string())?;
                ensure(via_perm == c.eval_f(&d), || format!("{c} on {sigma}"))?;
            }
            ensure(
                sigma.p_minus() == d.p_minus() && sigma.p_plus() == d.p_plus(),
                || format!("peak numbers of {sigma} differ from those of ({d})"),
            )?;
            let (interior, augmented) = sigma.peak_sets();
            ensure(
                interior.len() == sigma.p_minus() && augmented.len() == sigma.p_plus(),
                || format!("peak sets of {sigma}"),
            )?;
            checked += 1;
        }
    }
    let report = Checker::new(Depth::Standard).verify(IdentityId::AllpermsMinus);
    ensure(report.passed(), || report.to_string())?;
    Ok(format!(
        "{checked} permutations with n <= 7; all-permutation sum for n <= 9 ({} cases)",
        report.cases_run
    ))
}

// 7
fn half_binomial_and_power_forms() -> Outcome {
    let checker = Checker::new(Depth::Standard);
    let mut summary = Vec::new();
    for id in [IdentityId::HalfBinomialForms, IdentityId::ZetaPower] {
        let r = checker.verify(id);
        ensure(r.passed(), || r.to_string())?;
        summary.push(format!("{id}: {} cases ({})", r.cases_run, r.domain));
    }
    Ok(summary.join("; "))
}

// 8
fn number_theory() -> Outcome {
    let r = Checker::new(Depth::Standard).verify(IdentityId::Power2);
    ensure(r.passed(), || r.to_string())?;
    Ok(format!("{} cases ({})", r.cases_run, r.domain))
}

fn off_by_one(m: u64, n: u64) -> BigInt {
    bivariate_catalan(m, n) + 1
}

// 9
fn mutation_smoke() -> Outcome {
    let reports = Checker::new(Depth::Small)
        .with_catalan(off_by_one)
        .verify_all();
    let failing: Vec<_> = reports.iter().filter(|r| !r.passed()).collect();
    ensure(!failing.is_empty(), || "mutated C(m, n) went unnoticed".into())?;
    ensure(failing.iter().all(|r| r.first_counterexample.is_some()), || {
        "a failing report lacks a counterexample".into()
    })?;
    let first = failing[0];
    let c = first.first_counterexample.as_ref().expect("checked above");
    Ok(format!(
        "{} of {} identities fail; e.g. {} at {}",
        failing.len(),
        reports.len(),
        first.id,
        c.params
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 9] = [
        ("oracle equivalence", oracle_equivalence),
        ("F-basis closed forms", f_basis),
        ("identity battery", identity_battery),
        ("Hopf axioms", hopf_axioms),
        ("character properties", character_properties),
        ("permutation layer", permutation_layer),
        ("half-binomial and power forms", half_binomial_and_power_forms),
        ("2-adic valuations", number_theory),
        ("mutation smoke test", mutation_smoke),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name} [{secs:.2}s] {detail}", i + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL criterion {}: {name} [{secs:.2}s] {why}", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
