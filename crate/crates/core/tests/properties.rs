//! Randomized invariants of the scalar rings, the sphere algebra and the
//! antipodes of the bialgebroid.

use std::sync::OnceLock;

use num_rational::BigRational;
use proptest::prelude::*;

use qsphere::algebroid::Elem;
use qsphere::antipodes::{antipode_flip, antipode_s, AntipodeMap, Gen};
use qsphere::kernel::scalar::{Laurent, QPoint, Scalar, Specialized};
use qsphere::kernel::word::free_mul;
use qsphere::kernel::{eval_at_q, Letter, Lin, NCPoly, Word};
use qsphere::quantum_spaces::Sphere;

const N: usize = 2;

struct Fixture {
    s: Sphere<Laurent>,
    half: Sphere<Specialized>,
    sa: AntipodeMap<Laurent>,
    flip: AntipodeMap<Laurent>,
}

fn fixture() -> &'static Fixture {
    static F: OnceLock<Fixture> = OnceLock::new();
    F.get_or_init(|| {
        let s = Sphere::new(N, ()).unwrap();
        let half = Sphere::new(N, half()).unwrap();
        let (sa, flip) = (antipode_s(&s).unwrap(), antipode_flip(&s).unwrap());
        Fixture { s, half, sa, flip }
    })
}

fn half() -> QPoint {
    QPoint::new(BigRational::new(1.into(), 2.into())).unwrap()
}

fn laurent() -> impl Strategy<Value = Laurent> {
    prop::collection::vec((-3i32..=3, -4i64..=4), 0..4)
        .prop_map(|terms| Laurent::from_terms(terms.into_iter().map(|(e, c)| (e, BigRational::from_integer(c.into())))))
}

fn letter() -> impl Strategy<Value = Letter> {
    (1u8..=N as u8, any::<bool>()).prop_map(|(i, star)| if star { Letter::zs(i) } else { Letter::z(i) })
}

fn poly() -> impl Strategy<Value = NCPoly<Laurent>> {
    prop::collection::vec((prop::collection::vec(letter(), 0..4), laurent()), 0..4).prop_map(|terms| {
        let mut p = Lin::zero();
        for (w, c) in terms {
            p.add_term(Word(w), c);
        }
        p
    })
}

/// Combinations of products of at most two generators of `C(A, H)`.
fn elem() -> impl Strategy<Value = Vec<(Vec<usize>, i32, i64)>> {
    let gens = 2 * N * N;
    prop::collection::vec((prop::collection::vec(0..gens, 0..=2), -2i32..=2, -3i64..=3), 1..3)
}

fn build(s: &Sphere<Laurent>, terms: &[(Vec<usize>, i32, i64)]) -> Elem<Laurent> {
    let all = Gen::all(N);
    let mut out = Lin::zero();
    for (word, e, c) in terms {
        let mut acc = s.alg_one();
        for &g in word {
            acc = s.alg_mul(&acc, &all[g].elem(s).unwrap()).unwrap();
        }
        let coeff = Laurent::monomial(BigRational::from_integer((*c).into()), *e);
        out.add_scaled(&acc, &coeff);
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn laurent_ring_laws(a in laurent(), b in laurent(), c in laurent()) {
        prop_assert_eq!(a.clone() * b.clone(), b.clone() * a.clone());
        prop_assert_eq!((a.clone() * b.clone()) * c.clone(), a.clone() * (b.clone() * c.clone()));
        prop_assert_eq!((a.clone() + b.clone()) * c.clone(), a.clone() * c.clone() + b.clone() * c.clone());
        prop_assert_eq!(a.clone() - a.clone(), Laurent::default());
    }

    #[test]
    fn specialization_is_a_ring_map(a in laurent(), b in laurent()) {
        let ctx = half();
        let lift = |x: &Laurent| Specialized::lift(&ctx, x);
        prop_assert_eq!(lift(&(a.clone() * b.clone())), lift(&a) * lift(&b));
        prop_assert_eq!(lift(&(a.clone() + b.clone())), lift(&a) + lift(&b));
    }

    #[test]
    fn normal_forms_are_stable(p in poly()) {
        let s = &fixture().s;
        let nf = s.normalize(&p).unwrap();
        prop_assert_eq!(s.normalize(&nf).unwrap(), nf.clone());
        prop_assert!(nf.keys().all(|w| s.rs().is_normal(w)));
    }

    #[test]
    fn multiplication_respects_normal_forms(a in poly(), b in poly(), c in poly()) {
        let s = &fixture().s;
        let (na, nb, nc) = (s.normalize(&a).unwrap(), s.normalize(&b).unwrap(), s.normalize(&c).unwrap());
        prop_assert_eq!(s.mul(&na, &nb).unwrap(), s.normalize(&free_mul(&a, &b)).unwrap());
        let left = s.mul(&s.mul(&na, &nb).unwrap(), &nc).unwrap();
        let right = s.mul(&na, &s.mul(&nb, &nc).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn star_is_an_involutive_anti_automorphism(a in poly(), b in poly()) {
        let s = &fixture().s;
        let ab = s.mul(&a, &b).unwrap();
        let lhs = s.star(&ab).unwrap();
        let rhs = s.mul(&s.star(&b).unwrap(), &s.star(&a).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
        prop_assert_eq!(s.star(&s.star(&ab).unwrap()).unwrap(), ab);
    }

    #[test]
    fn specialization_commutes_with_normalization(p in poly()) {
        let f = fixture();
        let ctx = half();
        let symbolic = eval_at_q::<Specialized>(&f.s.normalize(&p).unwrap(), &ctx);
        let numeric = f.half.normalize(&eval_at_q::<Specialized>(&p, &ctx)).unwrap();
        prop_assert_eq!(symbolic, numeric);
    }

    #[test]
    fn antipodes_are_invertible_anti_homomorphisms(h in elem(), g in elem()) {
        let f = fixture();
        let s = &f.s;
        let (h, g) = (build(s, &h), build(s, &g));
        for a in [&f.sa, &f.flip] {
            let lhs = a.apply(s, &s.alg_mul(&h, &g).unwrap()).unwrap();
            let rhs = s.alg_mul(&a.apply(s, &g).unwrap(), &a.apply(s, &h).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs, "{}", a.name);
            prop_assert_eq!(a.apply_inv(s, &a.apply(s, &h).unwrap()).unwrap(), h.clone(), "{}", a.name);
        }
        prop_assert_eq!(f.flip.apply(s, &f.flip.apply(s, &h).unwrap()).unwrap(), h);
    }

    #[test]
    fn counit_is_unital_on_source_and_target(h in elem(), p in poly()) {
        let s = &fixture().s;
        let h = build(s, &h);
        // ε(h s(b)) = ε(h t(b)) for b in B
        let b = s.normalize(&p).unwrap();
        let b: NCPoly<Laurent> = b.filter(|w| w.weight() == 0);
        let hs = s.alg_mul(&h, &s.src(&b).unwrap()).unwrap();
        let ht = s.alg_mul(&h, &s.tgt(&b).unwrap()).unwrap();
        prop_assert_eq!(s.counit(&hs).unwrap(), s.counit(&ht).unwrap());
    }
}
