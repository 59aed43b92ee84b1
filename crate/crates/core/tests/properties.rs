use num_rational::BigRational;
use proptest::prelude::*;

use toroidal_core::lattice::{
    apply_automorphism, is_simple_form, radical_basis, simple_form, simple_form_data, Degree, IntMatrix, QuantumMatrix,
};
use toroidal_core::oracle::word_sigma_exp;
use toroidal_core::qtorus::{multiply, TorusContext, TorusElement};
use toroidal_core::sampling::{ElementSampler, Sampler};
use toroidal_core::toroidal::{ToroidalAlgebra, ToroidalAutomorphism};
use toroidal_core::verify::product_formula_holds;
use toroidal_core::Cyc;

fn cyc(m: u32) -> impl Strategy<Value = Cyc> {
    prop::collection::vec((-6i64..=6, 1i64..=4), 1..8).prop_map(move |cs| {
        let cs = cs
            .into_iter()
            .map(|(p, q)| BigRational::new(p.into(), q.into()))
            .collect();
        Cyc::from_coeffs(m, cs)
    })
}

fn order() -> impl Strategy<Value = u32> {
    prop::sample::select(vec![1u32, 2, 3, 4, 5, 6, 8, 12])
}

/// Random skew exponent matrix of size `n` modulo `m`.
fn quantum(n: usize) -> impl Strategy<Value = QuantumMatrix> {
    (order(), prop::collection::vec(0i64..12, n * n)).prop_map(move |(m, xs)| {
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..i {
                rows[i][j] = xs[i * n + j];
                rows[j][i] = -xs[i * n + j];
            }
        }
        QuantumMatrix::from_rows(m, rows).unwrap()
    })
}

fn degree(n: usize) -> impl Strategy<Value = Degree> {
    prop::collection::vec(-3i64..=3, n).prop_map(Degree)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn field_axioms((m, a, b, c) in order().prop_flat_map(|m| (Just(m), cyc(m), cyc(m), cyc(m)))) {
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        prop_assert_eq!(&a + &b, &b + &a);
        if !a.is_zero() {
            prop_assert!((&a * &a.inverse().unwrap()).is_one());
        }
        prop_assert!(Cyc::root_of_unity(m, m as i64).is_one());
    }

    #[test]
    fn monomials_associate(q in quantum(3), a in degree(3), b in degree(3), c in degree(3)) {
        let ctx = TorusContext::new(q.clone());
        let t = |d: &Degree| TorusElement::unit_monomial(&ctx, d.clone());
        let left = multiply(&ctx, &multiply(&ctx, &t(&a), &t(&b)), &t(&c));
        let right = multiply(&ctx, &t(&a), &multiply(&ctx, &t(&b), &t(&c)));
        prop_assert_eq!(left, right);
        let m = q.order() as i64;
        prop_assert_eq!(ctx.sigma_exp(&a, &b).rem_euclid(m), word_sigma_exp(&q, &a, &b).rem_euclid(m));
        prop_assert_eq!((ctx.f_exp(&a, &b) + ctx.f_exp(&b, &a)).rem_euclid(m), 0);
    }

    #[test]
    fn radical_is_central(q in quantum(3), a in degree(3)) {
        let ctx = TorusContext::new(q.clone());
        let rad = radical_basis(&q);
        for b in rad.basis() {
            prop_assert_eq!(ctx.f_exp(b, &a).rem_euclid(q.order() as i64), 0);
        }
        let m = Degree(a.0.iter().map(|x| x * q.order() as i64).collect());
        prop_assert!(rad.contains(&m));
    }

    #[test]
    fn simple_form_round_trip(q in quantum(4)) {
        let (qp, a) = simple_form(&q);
        prop_assert!(is_simple_form(&qp));
        prop_assert_eq!(apply_automorphism(&a, &q).unwrap(), qp.clone());
        let data = simple_form_data(&qp).unwrap();
        for w in data.orders.windows(2) {
            prop_assert_eq!(w[0] % w[1], 0);
        }
        let idx: u64 = data.orders.iter().map(|&k| (k as u64).pow(2)).product();
        prop_assert_eq!(radical_basis(&q).index(), idx);
    }

    #[test]
    fn congruence_matches_product_formula(q in quantum(3), seed in any::<u64>()) {
        let a = Sampler::new(seed).unimodular(3);
        prop_assert!(product_formula_holds(&a, &q).unwrap());
        let back = apply_automorphism(&a.inverse(), &apply_automorphism(&a, &q).unwrap()).unwrap();
        prop_assert_eq!(back, q);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn brackets_antisymmetric_and_jacobi(q in quantum(2), seed in any::<u64>(), d in 1usize..=3) {
        let alg = ToroidalAlgebra::new(TorusContext::new(q), d);
        let es = ElementSampler::new(&alg, 2);
        let mut s = Sampler::new(seed);
        for _ in 0..10 {
            let (x, y, z) = (es.element(&mut s), es.element(&mut s), es.element(&mut s));
            let xy = alg.bracket(&x, &y).unwrap();
            prop_assert!(xy.add(&alg.bracket(&y, &x).unwrap()).is_zero());
            let j = alg
                .bracket(&x, &alg.bracket(&y, &z).unwrap())
                .unwrap()
                .add(&alg.bracket(&y, &alg.bracket(&z, &x).unwrap()).unwrap())
                .add(&alg.bracket(&z, &xy).unwrap());
            prop_assert!(j.is_zero());
        }
    }

    #[test]
    fn automorphisms_preserve_brackets(q in quantum(3), seed in any::<u64>()) {
        let alg = ToroidalAlgebra::new(TorusContext::new(q), 2);
        let mut s = Sampler::new(seed);
        let phi = ToroidalAutomorphism::new(&alg, s.unimodular(3)).unwrap();
        let src = phi.source().clone();
        let es = ElementSampler::new(&src, 1);
        for _ in 0..8 {
            let (x, y) = (es.element(&mut s), es.element(&mut s));
            let lhs = phi.apply(&src.bracket(&x, &y).unwrap()).unwrap();
            let rhs = alg.bracket(&phi.apply(&x).unwrap(), &phi.apply(&y).unwrap()).unwrap();
            prop_assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn unimodular_samples_are_invertible() {
    let mut s = Sampler::new(5);
    for n in 1..5 {
        for _ in 0..20 {
            let a = s.unimodular(n);
            assert_eq!(a.det().abs(), 1);
            assert_eq!(
                a.then(&a.inverse()).matrix().to_rows(),
                IntMatrix::identity(n).to_rows()
            );
        }
    }
}
