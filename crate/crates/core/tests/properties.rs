use std::sync::Arc;

use asymlab::almostrep::{AlmostRep, Lift};
use asymlab::cohomology::{coboundary1, Cochain1};
use asymlab::families::{diagonal_rep, perturbed_rep};
use asymlab::groups::{ball, NormalFormGroup, Presentation};
use asymlab::normkit::{
    exp_skew, gaussian_matrix, haar_unitary, nearest_involution, norm, random_skew, NormKind,
};
use asymlab::seed::rng_for;
use asymlab::words::Word;
use proptest::prelude::*;

fn group(choice: u8) -> NormalFormGroup {
    match choice % 4 {
        0 => NormalFormGroup::free_abelian(2).unwrap(),
        1 => NormalFormGroup::free_abelian(3).unwrap(),
        2 => NormalFormGroup::cyclic(6).unwrap(),
        _ => NormalFormGroup::cyclic(5).unwrap(),
    }
}

fn word(rank: usize, exps: &[(usize, i64)]) -> Word {
    exps.iter().fold(Word::empty(), |w, &(g, e)| {
        w.multiply(&Word::power(g % rank, e))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn section_is_a_normal_form(choice in 0u8..4, exps in prop::collection::vec((0usize..3, -4i64..5), 0..8)) {
        let g = group(choice);
        let x = g.element_of(&word(g.rank(), &exps));
        let s = g.section(&x);
        prop_assert_eq!(g.element_of(&s), x.clone());
        if !g.is_involution(&x) {
            prop_assert_eq!(g.section(&g.inverse(&x)), s.invert());
        }
        prop_assert!(g.is_identity(&g.multiply(&x, &g.inverse(&x))));
    }

    #[test]
    fn window_products_agree_with_the_group(choice in 0u8..4, radius in 1usize..4) {
        let g = group(choice);
        let w = ball(&g, radius);
        prop_assert_eq!(w.identity(), 0);
        for p in w.pairs() {
            let gh = g.multiply(w.element(p.g), w.element(p.h));
            prop_assert_eq!(w.element(p.gh), &gh);
        }
        for i in 0..w.len() {
            prop_assert_eq!(w.inverse(w.inverse(i)), i);
        }
    }

    #[test]
    fn norms_are_unitarily_invariant(k in 1usize..7, seed in 0u64..10_000) {
        let mut rng = rng_for(seed, 0);
        let a = gaussian_matrix(k, &mut rng);
        let u = haar_unitary(k, seed).unwrap();
        let v = haar_unitary(k, seed + 1).unwrap();
        let uav = u.matrix().matmul(&a).matmul(v.matrix());
        for kind in NormKind::ALL {
            let (x, y) = (norm(&a, kind), norm(&uav, kind));
            prop_assert!((x - y).abs() <= 1e-10 * x.max(1.0));
            prop_assert!(norm(&a, NormKind::Operator) <= norm(&a, NormKind::Frobenius) + 1e-12);
            prop_assert!(norm(&a, NormKind::NormalizedHS) <= norm(&a, NormKind::Operator) + 1e-12);
        }
    }

    #[test]
    fn exponential_of_skew_is_unitary(k in 1usize..7, seed in 0u64..10_000, t in 0.0f64..3.0) {
        let mut rng = rng_for(seed, 1);
        let x = random_skew(k, &mut rng).scale(t);
        let e = exp_skew(&x).unwrap();
        prop_assert!(e.is_certified());
        let back = exp_skew(&x.scale(-1.0)).unwrap();
        let prod = e.matrix().matmul(back.matrix()).minus_identity();
        prop_assert!(prod.frobenius() <= 1e-10);
    }

    #[test]
    fn nearest_involution_is_close(k in 1usize..7, seed in 0u64..10_000) {
        let a = haar_unitary(k, seed).unwrap();
        let b = nearest_involution(&a).unwrap();
        let bm = b.matrix();
        prop_assert_eq!(bm, &bm.adjoint());
        let a2 = a.matrix().matmul(a.matrix()).minus_identity();
        for kind in NormKind::ALL {
            prop_assert!(norm(&(bm - a.matrix()), kind) <= norm(&a2, kind) + 1e-10);
        }
    }

    #[test]
    fn lift_is_normalized(choice in 0u8..4, k in 1usize..5, eps in 0.0f64..0.3, seed in 0u64..1000) {
        let g = group(choice);
        let phi = perturbed_rep(&g, k, eps, seed).unwrap();
        let lift = Lift::new(&phi, Arc::new(ball(&g, 2))).unwrap();
        let w = lift.window().clone();
        prop_assert_eq!(lift.value(w.identity()).matrix(), &asymlab::normkit::ComplexMatrix::identity(k));
        for i in 0..w.len() {
            let inv = lift.value(w.inverse(i)).matrix();
            prop_assert_eq!(inv, &lift.value(i).matrix().adjoint());
        }
    }

    #[test]
    fn coboundaries_are_cocycles(choice in 0u8..4, k in 1usize..4, seed in 0u64..1000) {
        // d beta for a genuine lift has no cocycle defect at all
        let g = group(choice);
        let phi = diagonal_rep(&g, k, seed).unwrap();
        let lift = Lift::new(&phi, Arc::new(ball(&g, 2))).unwrap();
        let w = lift.window().clone();
        let mut rng = rng_for(seed, 2);
        let values = (0..w.len())
            .map(|i| if i == 0 { asymlab::normkit::ComplexMatrix::zeros(k) } else { random_skew(k, &mut rng) })
            .collect();
        let beta = Cochain1::new(w, values).unwrap();
        let alpha = coboundary1(&beta, &lift).unwrap();
        let at = |g, h| alpha.get(g, h).unwrap();
        for t in lift.window().triples() {
            let u = lift.value(t.g).matrix();
            let act = u.matmul(at(t.h, t.k)).matmul(&u.adjoint());
            let d = &(&(&act - at(t.gh, t.k)) + at(t.g, t.hk)) - at(t.g, t.h);
            prop_assert!(d.frobenius() <= 1e-12 * (1.0 + alpha.max_frobenius()));
        }
    }

    #[test]
    fn perturbation_defect_is_linear(choice in 0u8..4, k in 1usize..5, seed in 0u64..1000) {
        let g = group(choice);
        let small = perturbed_rep(&g, k, 1e-3, seed).unwrap().defect(NormKind::Frobenius).unwrap();
        let zero = perturbed_rep(&g, k, 0.0, seed).unwrap().defect(NormKind::Frobenius).unwrap();
        prop_assert!(zero <= 1e-12);
        // the longest relator has length at most 6 (a^6 in Z/6), and each
        // letter moves by at most eps
        prop_assert!(small <= 6.0 * 1e-3 * 1.01);
    }

    #[test]
    fn dumps_round_trip(choice in 0u8..4, k in 1usize..4, eps in 0.0f64..0.5, seed in 0u64..1000) {
        let phi = perturbed_rep(&group(choice), k, eps, seed).unwrap();
        let text = serde_json::to_string(&phi.to_dump()).unwrap();
        let back = AlmostRep::from_dump(&serde_json::from_str(&text).unwrap()).unwrap();
        prop_assert_eq!(back.to_dump(), phi.to_dump());
    }

    #[test]
    fn presentations_round_trip(rank in 1usize..4, m in 2u64..9) {
        for p in [Presentation::free_abelian(rank).unwrap(), Presentation::cyclic(m).unwrap()] {
            let text = p.to_string();
            let back: Presentation = text.parse().unwrap();
            prop_assert_eq!(back.relators(), p.relators());
            prop_assert_eq!(back.to_string(), text);
        }
    }
}
