use proptest::prelude::*;

use qsymx_core::characters::{h_minus, h_minus_closed, ClosedFormCharacter};
use qsymx_core::composition::Composition;
use qsymx_core::exactnum::{ratio, Rational};
use qsymx_core::identities::{verify_named, Status};
use qsymx_core::qsym::{Basis, QSymElement};
use qsymx_core::{Checker, Depth, Exec, IdentityId};

fn composition(max: usize) -> impl Strategy<Value = Composition> {
    prop::collection::vec(1usize..=3, 0..=max).prop_map(|parts| {
        Composition::new(parts).expect("positive parts")
    })
}

fn element(basis: Basis) -> impl Strategy<Value = QSymElement> {
    prop::collection::vec((composition(3), -5i64..=5, 1i64..=4), 0..4).prop_map(move |terms| {
        let mut x = QSymElement::zero(basis);
        for (a, p, q) in terms {
            x.add_term(a, ratio(p, q));
        }
        x
    })
}

proptest! {
    #[test]
    fn json_round_trip(x in element(Basis::M)) {
        let json = serde_json::to_string(&x).unwrap();
        let back: QSymElement = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn text_round_trip(x in element(Basis::F)) {
        // "0" carries no basis letter
        prop_assume!(!x.is_zero());
        let back: QSymElement = x.to_string().parse().unwrap();
        prop_assert_eq!(back, x);
    }

    #[test]
    fn basis_change_is_invertible(x in element(Basis::M)) {
        prop_assert_eq!(x.to_f().to_m(), x);
    }

    #[test]
    fn characters_are_multiplicative(x in element(Basis::M), y in element(Basis::F)) {
        let xy = x.multiply(&y.to_m()).unwrap();
        for c in [ClosedFormCharacter::ZetaMinus, ClosedFormCharacter::ZetaInvPlus] {
            prop_assert_eq!(c.eval_element(&xy), c.eval_element(&x) * c.eval_element(&y));
        }
    }

    #[test]
    fn antipode_is_an_anti_morphism(x in element(Basis::M), y in element(Basis::M)) {
        let lhs = x.multiply(&y).unwrap().antipode();
        let rhs = y.antipode().multiply(&x.antipode()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn h_minus_matches_closed(a in composition(7)) {
        prop_assume!(a.weight() > 0);
        prop_assert_eq!(h_minus(&a), h_minus_closed(&a));
    }
}

#[test]
fn worked_evaluations() {
    let c = |s: &str| s.parse::<Composition>().unwrap();
    assert_eq!(ClosedFormCharacter::ZetaMinus.eval_m(&c("1,1")), ratio(1, 2));
    assert_eq!(ClosedFormCharacter::ZetaPlus.eval_m(&c("3")), Rational::default());
}

#[test]
fn named_lookup() {
    assert_eq!(verify_named("cg8", Depth::Standard).unwrap().status, Status::Pass);
    assert!(verify_named("cg9", Depth::Small).is_err());
}

#[test]
fn report_json_shape() {
    let r = Checker::new(Depth::Small).verify(IdentityId::Power2);
    let v = serde_json::to_value(&r).unwrap();
    assert_eq!(v["id"], "power2");
    assert_eq!(v["status"], "pass");
    assert!(v["cases"].as_u64().unwrap() > 0);
    assert!(v.get("counterexample").is_none());
}

#[test]
fn execution_modes_agree_on_the_battery() {
    let seq = Checker::new(Depth::Small).with_exec(Exec::Sequential).verify_all();
    let par = Checker::new(Depth::Small).with_exec(Exec::Parallel).verify_all();
    assert_eq!(seq, par);
}

#[test]
fn decompose_with_either_mode() {
    let zeta = ClosedFormCharacter::Zeta.restrict(7);
    let a = zeta.decompose_with(Exec::Sequential).unwrap();
    let b = zeta.decompose_with(Exec::Parallel).unwrap();
    assert_eq!(a, b);
}
