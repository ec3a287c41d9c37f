use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use semihomology::chainkit::{brutal_truncation, good_truncation, homology, homology_map};
use semihomology::diagmod::{DiagramModule, ModuleMap};
use semihomology::exactlin::{quotient_map, RatMatrix, Rational};
use semihomology::oracle::{random_complex, run_battery, CorpusSpec};
use semihomology::simplexcat::{
    coface_factorization, cube_coface_factorization, hom_basis, monochromatic_factorization, ComparisonFunctor,
    CubeMap, GeneratorId, InjMap, Kind, LinComb, Morphism,
};
use semihomology::transport::underlying_complex_map;

fn matrix(max: usize) -> impl Strategy<Value = RatMatrix> {
    (0..=max, 0..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec((-3i64..=3, 1i64..=3), r * c).prop_map(move |v| {
            let data = v.into_iter().map(|(p, q)| Rational::new(p, q)).collect();
            RatMatrix::from_vec(r, c, data).unwrap()
        })
    })
}

fn big_rational() -> impl Strategy<Value = Rational> {
    (prop::collection::vec(any::<u8>(), 32), prop::collection::vec(any::<u8>(), 32)).prop_map(|(n, d)| {
        let num = BigInt::from_signed_bytes_le(&n);
        let den = BigInt::from_signed_bytes_le(&d);
        let den = if den == BigInt::from(0) { BigInt::from(1) } else { den };
        Rational::new(num, den)
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity_and_transpose(m in matrix(6)) {
        prop_assert_eq!(m.rank(), m.transpose().rank());
        prop_assert_eq!(m.kernel_basis().cols() + m.rank(), m.cols());
        prop_assert!((&m * &m.kernel_basis()).is_zero());
    }

    #[test]
    fn quotients_kill_the_subspace(m in matrix(6)) {
        let q = quotient_map(m.rows(), &m).unwrap();
        prop_assert!((&q * &m).is_zero());
        prop_assert_eq!(q.rank() + m.rank(), m.rows());
    }

    #[test]
    fn rref_is_idempotent(m in matrix(6)) {
        let once = m.rref();
        let twice = once.matrix.rref();
        prop_assert_eq!(&twice.matrix, &once.matrix);
        prop_assert_eq!(twice.pivots, once.pivots);
    }

    #[test]
    fn rational_arithmetic_is_exact(a in big_rational(), b in big_rational()) {
        prop_assert_eq!(&(&a + &b) - &b, a.clone());
        if !b.is_zero() {
            prop_assert_eq!(&(&a * &b) / &b, a);
        }
    }

    #[test]
    fn simplicial_coface_relation(n in 2i32..=6, i in 0usize..7, j in 0usize..7) {
        prop_assume!(i < j && j as i32 <= n);
        let lhs = InjMap::coface(j, n).unwrap().compose(&InjMap::coface(i, n - 1).unwrap()).unwrap();
        let rhs = InjMap::coface(i, n).unwrap().compose(&InjMap::coface(j - 1, n - 1).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn cubical_coface_relation(n in 2i32..=6, i in 1usize..7, j in 1usize..7, e in 0u8..2, h in 0u8..2) {
        prop_assume!(i < j && j as i32 <= n);
        let lhs = CubeMap::coface(j, h, n).unwrap().compose(&CubeMap::coface(i, e, n - 1).unwrap()).unwrap();
        let rhs = CubeMap::coface(i, e, n).unwrap().compose(&CubeMap::coface(j - 1, h, n - 1).unwrap()).unwrap();
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn action_is_contravariant(kind_ix in 0usize..3, c in 0i32..=4, a in 0i32..=4, b in 0i32..=4, pick in any::<(usize, usize)>()) {
        let kind = [Kind::Ssimp, Kind::AugSsimp, Kind::Scube][kind_ix];
        let mut objs = [a, b, 5];
        objs.sort();
        let [a, b, top] = objs;
        let x = DiagramModule::representable(kind, c, top).unwrap();
        let psis = hom_basis(kind, a, b);
        let phis = hom_basis(kind, b, top);
        prop_assume!(!psis.is_empty() && !phis.is_empty());
        let (psi, phi) = (&psis[pick.0 % psis.len()], &phis[pick.1 % phis.len()]);
        let composite = phi.compose(psi).unwrap().unwrap();
        prop_assert_eq!(
            x.act_morphism(&composite).unwrap(),
            &x.act_morphism(psi).unwrap() * &x.act_morphism(phi).unwrap()
        );
    }

    #[test]
    fn yoneda_maps_compose_and_homology_is_functorial(
        kind_ix in 0usize..3,
        objs in prop::array::uniform3(0i32..4),
        coeffs in prop::collection::vec(-2i64..=2, 64),
    ) {
        let kind = [Kind::Ssimp, Kind::AugSsimp, Kind::Scube][kind_ix];
        let mut objs = objs;
        objs.sort();
        let w = |m: i32, n: i32, off: usize| {
            let terms = hom_basis(kind, m, n)
                .into_iter()
                .enumerate()
                .map(|(k, f)| (f, Rational::from(coeffs[(off + k) % coeffs.len()])));
            LinComb::from_terms(m, n, terms).unwrap()
        };
        let (w1, w2) = (w(objs[0], objs[1], 0), w(objs[1], objs[2], 17));
        let n = 5;
        let y1 = ModuleMap::yoneda(kind, &w1, n).unwrap();
        let y2 = ModuleMap::yoneda(kind, &w2, n).unwrap();
        let y21 = ModuleMap::yoneda(kind, &w2.compose(&w1).unwrap(), n).unwrap();
        prop_assert_eq!(&y21, &y2.compose(&y1).unwrap());
        if kind != Kind::AugSsimp {
            let h = |f: &ModuleMap| homology_map(&underlying_complex_map(f).unwrap()).unwrap();
            let (h1, h2, h21) = (h(&y1), h(&y2), h(&y21));
            for (deg, m) in &h21 {
                prop_assert_eq!(m, &(&h2[deg] * &h1[deg]));
            }
        }
    }

    #[test]
    fn euler_identity(seed in any::<u64>(), lower in -1i32..=0) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (c, _) = random_complex(&mut rng, lower, 4, 5).unwrap();
        prop_assume!(c.dim(5) == 0);
        let h = homology(&c).unwrap();
        let sign = |n: i32| if n.rem_euclid(2) == 0 { 1i64 } else { -1 };
        let hx: i64 = h.dims().iter().map(|&(n, d)| sign(n) * d as i64).sum();
        prop_assert_eq!(c.euler_characteristic(), hx);
    }

    #[test]
    fn good_truncation_keeps_positive_homology(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (c, _) = random_complex(&mut rng, -1, 4, 5).unwrap();
        let (tau, _) = good_truncation(&c).unwrap();
        let (hc, ht) = (homology(&c).unwrap(), homology(&tau).unwrap());
        for n in 1..ht.window.1 {
            prop_assert_eq!(hc.dim(n).unwrap(), ht.dim(n).unwrap());
        }
        // 0 -> H_0(τC) -> H_0(brutal C) -> im ∂_0 -> 0
        let hb = homology(&brutal_truncation(&c).unwrap()).unwrap();
        prop_assert_eq!(hb.dim(0).unwrap(), ht.dim(0).unwrap() + c.differential(0).rank());
    }
}

#[test]
fn factorizations_recompose() {
    fn recompose(word: &[GeneratorId], start: Morphism) -> Morphism {
        word.iter()
            .rev()
            .fold(start, |acc, g| g.morphism().unwrap().compose(&acc).unwrap().unwrap())
    }
    for n in 0..=6 {
        for m in 0..=n {
            for f in hom_basis(Kind::Ssimp, m, n) {
                let Morphism::Inj(g) = &f else { unreachable!() };
                assert_eq!(recompose(&coface_factorization(g), Kind::Ssimp.identity(m)), f);
            }
            for f in hom_basis(Kind::Scube, m, n) {
                let Morphism::Cube(g) = &f else { unreachable!() };
                assert_eq!(recompose(&cube_coface_factorization(g), Kind::Scube.identity(m)), f);
                let (a, b) = monochromatic_factorization(g).unwrap();
                let j1 = ComparisonFunctor::J1.on_morphism(&Morphism::Inj(a)).unwrap();
                let j0 = ComparisonFunctor::J0.on_morphism(&Morphism::Inj(b)).unwrap();
                assert_eq!(j1.compose(&j0).unwrap(), LinComb::from_morphism(f.clone()));
            }
        }
    }
}

#[test]
fn differentials_square_to_zero_under_the_chain_functors() {
    for u in [ComparisonFunctor::UDelta, ComparisonFunctor::UAug, ComparisonFunctor::USquare] {
        let lo = u.source_kind().min_degree();
        for n in (lo + 1)..=5 {
            let d = |k: i32| u.on_generator(GeneratorId::OmegaD { n: k }).unwrap();
            assert!(d(n + 1).compose(&d(n)).unwrap().is_zero(), "{u} {n}");
        }
    }
}

#[test]
fn sign_embedding_after_augmented_chain_functor_is_the_cube_functor() {
    // v raises degrees by one
    for n in 0..=5 {
        let via = ComparisonFunctor::V
            .on_lincomb(&ComparisonFunctor::UAug.on_generator(GeneratorId::OmegaD { n }).unwrap())
            .unwrap();
        let direct = ComparisonFunctor::USquare.on_generator(GeneratorId::OmegaD { n: n + 1 }).unwrap();
        assert_eq!(via, direct, "d_{n}");
    }
}

#[test]
fn representables_validate() {
    for kind in Kind::ALL {
        for top in kind.min_degree()..=6 {
            for c in kind.min_degree()..=top {
                let x = DiagramModule::representable(kind, c, top).unwrap();
                assert!(x.validate().is_ok(), "{kind} {c} {top}");
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(4))]

    #[test]
    fn small_batteries_succeed_for_any_seed(seed in any::<u64>()) {
        let spec = CorpusSpec {
            seed,
            truncation: 4,
            representables: 3,
            induced: 3,
            sums: 2,
            yoneda_maps: 3,
            ..CorpusSpec::default()
        };
        let r = run_battery(&spec).unwrap();
        prop_assert!(r.is_success(), "{}", r.to_table());
    }
}
