use proptest::prelude::*;
use rand::Rng;

use oriented_cycles::document::{to_json, AnyCycle, CycleDocument};
use oriented_cycles::equivalence::{is_isomorphic, isomorphism_witness, product_operator};
use oriented_cycles::generate::{random_cycle, random_invertible, random_spec, rng, GeneratorSpec};
use oriented_cycles::oracle::{brute_force_isomorphism, peel_chains_bruteforce, verify_sigma_identity};
use oriented_cycles::regularize::{kernel_dim_table, regularizing_decomposition, singular_counts};
use oriented_cycles::similarity::{are_similar, poly_smith, similarity_witness};
use oriented_cycles::{Cycle, Field, GaussianRational, Matrix, Poly, Rational, TransformationSystem};

type Q = Rational;

fn small_matrix(max: usize) -> impl Strategy<Value = Matrix<Q>> {
    (0..=max, 0..=max).prop_flat_map(|(r, c)| {
        prop::collection::vec(-4i64..=4, r * c).prop_map(move |v| Matrix::from_i64(r, c, &v))
    })
}

fn square_matrix(max: usize) -> impl Strategy<Value = Matrix<Q>> {
    (1..=max).prop_flat_map(|n| prop::collection::vec(-3i64..=3, n * n).prop_map(move |v| Matrix::from_i64(n, n, &v)))
}

fn gaussian() -> impl Strategy<Value = GaussianRational> {
    (-6i64..=6, 1i64..=4, -6i64..=6, 1i64..=4)
        .prop_map(|(a, b, c, d)| GaussianRational::new(Rational::new(a, b), Rational::new(c, d)))
}

/// A random instance with `t <= max_t` and total dimension at most `budget`.
fn instance(max_t: usize, budget: usize) -> impl Strategy<Value = (Cycle<Q>, u64)> {
    (1..=max_t, any::<u64>()).prop_map(move |(t, seed)| {
        let mut r = rng(seed);
        let spec: GeneratorSpec<Q> = random_spec(t, budget, &mut r);
        (random_cycle(&spec, seed).unwrap().0, seed)
    })
}

fn random_system(dims: &[usize], seed: u64) -> TransformationSystem<Q> {
    let mut r = rng(seed ^ 0x5eed);
    TransformationSystem::new(dims.iter().map(|&m| random_invertible(m, 3, &mut r)).collect())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn rank_nullity(a in small_matrix(6)) {
        let k = a.kernel_basis();
        prop_assert_eq!(a.rank() + k.ncols(), a.ncols());
        prop_assert!((&a * &k).is_zero());
        prop_assert_eq!(a.image_basis().ncols(), a.rank());
        prop_assert_eq!(a.transpose().rank(), a.rank());
    }

    #[test]
    fn inverse_is_two_sided(a in square_matrix(5)) {
        match a.inverse() {
            Ok(inv) => {
                prop_assert!((&a * &inv).is_identity());
                prop_assert!((&inv * &a).is_identity());
            }
            Err(_) => prop_assert!(a.rank() < a.nrows()),
        }
    }

    #[test]
    fn gaussian_field_laws(x in gaussian(), y in gaussian(), z in gaussian()) {
        prop_assert_eq!(x.mul_ref(&y.add_ref(&z)), x.mul_ref(&y).add_ref(&x.mul_ref(&z)));
        prop_assert_eq!(x.mul_ref(&y).mul_ref(&z), x.mul_ref(&y.mul_ref(&z)));
        if !y.is_zero() {
            prop_assert_eq!(x.div_ref(&y).unwrap().mul_ref(&y), x.clone());
        }
        prop_assert_eq!(GaussianRational::parse_scalar(&x.to_string()).unwrap(), x);
    }

    #[test]
    fn polynomial_division(a in prop::collection::vec(-5i64..=5, 0..6), b in prop::collection::vec(-5i64..=5, 1..4)) {
        let p = Poly::<Q>::from_i64(&a);
        let d = Poly::<Q>::from_i64(&b);
        prop_assume!(d.degree().is_some());
        let (q, r) = p.div_rem(&d);
        prop_assert_eq!(q.mul(&d).add(&r), p);
        prop_assert!(r.degree().is_none() || r.degree() < d.degree());
    }

    #[test]
    fn matrix_is_similar_to_its_transpose(a in square_matrix(4)) {
        prop_assert!(are_similar(&a, &a.transpose()).unwrap());
        let f = poly_smith(&a).unwrap();
        prop_assert_eq!(f.degree_sum(), a.nrows());
        prop_assert!(f.is_divisibility_chain());
    }

    #[test]
    fn similarity_is_an_equivalence(a in square_matrix(4), s1 in any::<u64>(), s2 in any::<u64>()) {
        let n = a.nrows();
        let p: Matrix<Q> = random_invertible(n, 2, &mut rng(s1));
        let q: Matrix<Q> = random_invertible(n, 2, &mut rng(s2));
        let b = &(&p * &a) * &p.inverse().unwrap();
        let c = &(&q * &b) * &q.inverse().unwrap();
        prop_assert!(are_similar(&a, &a).unwrap());
        prop_assert!(are_similar(&b, &a).unwrap());
        prop_assert!(are_similar(&a, &c).unwrap());
        let x = similarity_witness(&a, &c).unwrap().unwrap();
        prop_assert_eq!(&x * &a, &c * &x);
    }

    #[test]
    fn kernel_table_survives_base_change((c, seed) in instance(5, 12)) {
        let moved = c.apply_transformation(&random_system(c.dims(), seed)).unwrap();
        prop_assert_eq!(kernel_dim_table(&c, None), kernel_dim_table(&moved, None));
    }

    #[test]
    fn document_round_trip((c, _) in instance(4, 10)) {
        let text = to_json(&CycleDocument::from_cycle(&c));
        prop_assert_eq!(AnyCycle::parse(&text).unwrap(), AnyCycle::Rational(c));
    }

    #[test]
    fn direct_sum_is_associative_and_commutative((a, _) in instance(3, 4), s1 in any::<u64>(), s2 in any::<u64>()) {
        let t = a.len();
        let b = random_cycle(&random_spec::<Q, _>(t, 4, &mut rng(s1)), s1).unwrap().0;
        let c = random_cycle(&random_spec::<Q, _>(t, 4, &mut rng(s2)), s2).unwrap().0;
        let left = a.direct_sum(&b).unwrap().direct_sum(&c).unwrap();
        let right = a.direct_sum(&b.direct_sum(&c).unwrap()).unwrap();
        prop_assert_eq!(&left, &right);
        let swapped = b.direct_sum(&a).unwrap();
        let ab = a.direct_sum(&b).unwrap();
        prop_assert!(is_isomorphic(&ab, &swapped).unwrap());
        let w = isomorphism_witness(&ab, &swapped).unwrap();
        prop_assert!(ab.commutes(&swapped, &w));
    }

    #[test]
    fn formula_matches_peeling((c, _) in instance(4, 8)) {
        let table = kernel_dim_table(&c, None);
        let peeled = peel_chains_bruteforce(&c, 8).unwrap();
        prop_assert_eq!(singular_counts(&table).unwrap(), peeled.clone());
        prop_assert!(verify_sigma_identity(&table, &peeled));
        let in_chains: usize = peeled.iter().map(|ch| (ch.length + 1) * ch.multiplicity).sum();
        let regular = regularizing_decomposition(&c).unwrap().regular_dim() * c.len();
        prop_assert_eq!(in_chains, c.total_dim() - regular);
    }

    #[test]
    fn bumped_table_breaks_the_sigma_identity((c, seed) in instance(4, 8)) {
        let mut table = kernel_dim_table(&c, None);
        let peeled = peel_chains_bruteforce(&c, 8).unwrap();
        let mut r = rng(seed);
        let i = r.gen_range(1..=table.t());
        let j = r.gen_range(0..=table.jmax());
        *table.k_mut(i, j) += 1;
        prop_assert!(!verify_sigma_identity(&table, &peeled));
    }

    #[test]
    fn decision_matches_brute_force((a, seed) in instance(4, 6), same in any::<bool>()) {
        let t = a.len();
        let b = if same {
            a.apply_transformation(&random_system(a.dims(), seed)).unwrap()
        } else {
            // A second instance with the same dimension vector when possible.
            let mut r = rng(seed.wrapping_add(1));
            let spec = (0..50)
                .map(|_| random_spec::<Q, _>(t, 6, &mut r))
                .find(|s| s.dims() == a.dims())
                .unwrap_or_else(|| random_spec(t, 6, &mut r));
            random_cycle(&spec, seed.wrapping_add(2)).unwrap().0
        };
        let decided = is_isomorphic(&a, &b).unwrap();
        let searched = brute_force_isomorphism(&a, &b, seed, 40).unwrap();
        prop_assert_eq!(decided, searched.is_some());
        if let Some(w) = searched {
            prop_assert!(a.commutes(&b, &w));
        }
    }

    #[test]
    fn product_conjugation_identity(t in 1usize..=4, n in 1usize..=3, seed in any::<u64>()) {
        let mut r = rng(seed);
        let maps = (0..t).map(|_| random_invertible(n, 3, &mut r)).collect();
        let a = Cycle::<Q>::new(vec![n; t], maps).unwrap();
        let phis = random_system(a.dims(), seed);
        let b = a.apply_transformation(&phis).unwrap();
        prop_assert_eq!(phis.phi(1) * &product_operator(&a), &product_operator(&b) * phis.phi(1));
    }

    #[test]
    fn decomposition_recovers_ground_truth(t in 1usize..=5, seed in any::<u64>()) {
        let spec: GeneratorSpec<Q> = random_spec(t, 14, &mut rng(seed));
        let (c, truth) = random_cycle(&spec, seed).unwrap();
        let d = regularizing_decomposition(&c).unwrap();
        prop_assert_eq!(&d.chains, &truth.chains);
        prop_assert_eq!(d.regular_dim(), spec.regular_size());
        prop_assert_eq!(d.z, spec.expected_z());
        prop_assert!(d.canonical_cycle().unwrap().commutes(&c, &d.witness));
    }
}
