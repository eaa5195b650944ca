use proptest::prelude::*;

use snakepath::algebra::{derivative_poly, q_derivative, DerivFlavor, DerivKind, Monomial, Poly, QFlavor, Var};
use snakepath::cfrac::q_euler_number;
use snakepath::snakes::{blocks, pattern_stats};

fn poly_with(texp: std::ops::RangeInclusive<i32>) -> impl Strategy<Value = Poly> {
    prop::collection::vec(((0..3i32), texp, (-2..4i32), (0..2i32), (-5i64..=5)), 0..6).prop_map(|terms| {
        terms
            .into_iter()
            .map(|(y, t, q, p, c)| Poly::term(c, Monomial::new(y, t, q, p)))
            .sum()
    })
}

fn poly() -> impl Strategy<Value = Poly> {
    poly_with(-1..=3)
}

fn poly_in_t() -> impl Strategy<Value = Poly> {
    poly_with(0..=4)
}

fn shuffled(n: usize) -> impl Strategy<Value = Vec<u32>> {
    Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle()
}

/// `f(qt)`
fn dilate(f: &Poly) -> Poly {
    f.substitute(Var::T, Monomial::ytq(0, 1, 1)).unwrap()
}

fn t_times(f: &Poly) -> Poly {
    f.mul_monomial(&Monomial::var(Var::T))
}

proptest! {
    #[test]
    fn ring_axioms(a in poly(), b in poly(), c in poly()) {
        prop_assert_eq!(&a + &b, &b + &a);
        prop_assert_eq!(&a * &b, &b * &a);
        prop_assert_eq!((&a + &b) + &c, &a + (&b + &c));
        prop_assert_eq!((&a * &b) * &c, &a * (&b * &c));
        prop_assert_eq!(&a * (&b + &c), &a * &b + &a * &c);
        prop_assert!((&a - &a).is_zero());
        prop_assert_eq!(&a * &Poly::one(), a.clone());
        prop_assert!((&a * &Poly::zero()).is_zero());
    }

    #[test]
    fn text_and_json_round_trip(a in poly()) {
        let back: Poly = a.to_string().parse().unwrap();
        prop_assert_eq!(&back, &a);
        let json = serde_json::to_string(&a).unwrap();
        let back: Poly = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back, a);
    }

    #[test]
    fn q_leibniz(f in poly_in_t(), g in poly_in_t()) {
        let d = |h: &Poly| q_derivative(h, QFlavor::Q);
        prop_assert_eq!(d(&(&f * &g)), d(&f) * &g + dilate(&f) * d(&g));
    }

    #[test]
    fn commutation(f in poly_in_t()) {
        // D U - q U D = 1
        let d = |h: &Poly| q_derivative(h, QFlavor::Q);
        let lhs = d(&t_times(&f)) - t_times(&d(&f)).mul_monomial(&Monomial::var(Var::Q));
        prop_assert_eq!(lhs, f);
    }
}

proptest! {
    // n is drawn uniformly from 1..=9, so about 200 words per n
    #![proptest_config(ProptestConfig::with_cases(1800))]

    #[test]
    fn blocks_match_patterns(w in (1usize..=9).prop_flat_map(shuffled)) {
        let n = w.len() as u32;
        let mut ext = vec![0];
        ext.extend(&w);
        ext.push(n + 1);
        for k in 0..=n {
            let (alpha, beta) = blocks(&ext, k);
            let (left, right) = pattern_stats(&ext, k);
            prop_assert_eq!(beta, right, "k = {}", k);
            prop_assert_eq!(alpha, left + right + 1, "k = {}", k);
        }
    }
}

#[test]
fn euler_numbers_at_t_zero() {
    for n in 0..=5usize {
        let at_zero = |kind| derivative_poly(kind, 2 * n as u32, DerivFlavor::Q).substitute(Var::T, 0).unwrap();
        assert_eq!(at_zero(DerivKind::Q), q_euler_number(2 * n), "Q_{}", 2 * n);
        assert_eq!(at_zero(DerivKind::R), q_euler_number(2 * n + 1), "R_{}", 2 * n);
    }
}
