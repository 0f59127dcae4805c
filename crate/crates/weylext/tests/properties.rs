use num_bigint::BigInt;
use num_traits::{One, Zero};
use proptest::prelude::*;
use std::sync::Arc;
use weylext::abw::{BasedModule, ModuleRef, SchurMatrix, WeylModule};
use weylext::combinatorics::{
    compositions, conjugate, dominance_leq, enumerate_standard_tableaux, hook_length, partitions_of, Partition, SkewShape,
};
use weylext::homology::{ext_from_exterior, ext_modules, ext_weyl, ResolutionOptions};
use weylext::zlinalg::{invariant_factors, snf, IntMatrix, Kernel};

fn matrix(max_rows: usize, max_cols: usize, range: i64) -> impl Strategy<Value = IntMatrix> {
    (1..=max_rows, 1..=max_cols).prop_flat_map(move |(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-range..=range, c), r).prop_map(|rows| IntMatrix::from_i64(&rows))
    })
}

fn partition(max_degree: usize) -> impl Strategy<Value = Partition> {
    (1..=max_degree).prop_flat_map(|d| proptest::sample::select(partitions_of(d, d)))
}

fn all_vectors(c: usize, bound: i64) -> Vec<Vec<BigInt>> {
    let mut out = vec![Vec::new()];
    for _ in 0..c {
        out = out
            .into_iter()
            .flat_map(|v| {
                (-bound..=bound).map(move |x| {
                    let mut w = v.clone();
                    w.push(BigInt::from(x));
                    w
                })
            })
            .collect();
    }
    out
}

proptest! {
    #[test]
    fn snf_is_a_decomposition(a in matrix(6, 6, 20)) {
        let d = snf(&a);
        prop_assert_eq!(d.u.mul(&a).mul(&d.v), d.s.clone());
        prop_assert!(d.u.det() == BigInt::one() || d.u.det() == -BigInt::one());
        prop_assert!(d.v.det() == BigInt::one() || d.v.det() == -BigInt::one());
        let f = &d.invariant_factors;
        for w in f.windows(2) {
            prop_assert!(w[1].is_zero() || (!w[0].is_zero() && (&w[1] % &w[0]).is_zero()));
        }
        prop_assert_eq!(invariant_factors(&a).into_iter().filter(|x| !x.is_one()).count(),
            f.iter().filter(|x| !x.is_zero() && !x.is_one()).count());
    }

    #[test]
    fn kernel_matches_brute_force(a in matrix(3, 4, 4)) {
        let k = Kernel::new(&a);
        prop_assert!(a.mul(&k.basis).is_zero());
        prop_assert_eq!(k.basis.cols(), a.cols() - a.rank());
        for x in all_vectors(a.cols(), 2) {
            let in_kernel = a.mul_vec(&x).iter().all(|v| v.is_zero());
            let coords = k.coords(&x);
            prop_assert_eq!(in_kernel, coords.is_some());
            if let Some(c) = coords {
                prop_assert_eq!(k.basis.mul_vec(&c), x);
            }
        }
    }

    #[test]
    fn conjugation_reverses_dominance(p in partition(8), q in partition(8)) {
        prop_assert_eq!(conjugate(&conjugate(&p)), p.clone());
        if p.degree() == q.degree() {
            prop_assert_eq!(dominance_leq(&p, &q).unwrap(), dominance_leq(&conjugate(&q), &conjugate(&p)).unwrap());
        }
    }

    #[test]
    fn hook_length_formula(p in partition(7)) {
        let d = p.degree();
        let mut hooks: u64 = 1;
        for r in 1..=p.len() {
            for c in 1..=p.part(r) {
                hooks *= hook_length(&p, r, c).unwrap() as u64;
            }
        }
        let fact: u64 = (1..=d as u64).product();
        let standard = enumerate_standard_tableaux(&SkewShape::straight(p.clone()), d, Some(&vec![1; d])).len() as u64;
        prop_assert_eq!(fact / hooks, standard);
    }

    #[test]
    fn divided_operators_satisfy_sl2(
        (p, w) in partition(4)
            .prop_filter("at most 3 rows", |p| p.len() <= 3)
            .prop_flat_map(|p| { let d = p.degree(); (Just(p), proptest::sample::select(compositions(d, 3))) }),
        i in 0usize..2,
    ) {
        // e_i f_i - f_i e_i = (w_i - w_{i+1}) on the weight space w
        let k = WeylModule::new(SkewShape::straight(p), 3);
        let dim = k.dim(&w);
        let mut lhs = IntMatrix::zeros(dim, dim);
        if let Some(f) = SchurMatrix::lower(&w, i, 1) {
            let e = SchurMatrix::raise(&f.target(), i, 1).unwrap();
            lhs = lhs.add(&k.xi(&e).mul(&k.xi(&f)));
        }
        if let Some(e) = SchurMatrix::raise(&w, i, 1) {
            let f = SchurMatrix::lower(&e.target(), i, 1).unwrap();
            lhs = lhs.sub(&k.xi(&f).mul(&k.xi(&e)));
        }
        let h = w[i] as i64 - w[i + 1] as i64;
        prop_assert_eq!(lhs, IntMatrix::identity(dim).scale(&BigInt::from(h)));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn generator_order_does_not_change_ext(
        pair in (2usize..=4).prop_flat_map(|d| (proptest::sample::select(partitions_of(d, 3)), proptest::sample::select(partitions_of(d, 3)))),
        seed in any::<u64>(),
        reverse in any::<bool>(),
    ) {
        let (l, m) = pair;
        let n = l.len().max(m.len());
        let d = l.degree();
        let mut order: Vec<Vec<usize>> = partitions_of(d, n).into_iter().map(|p| p.padded(n)).collect();
        // deterministic shuffle from the seed
        let mut s = seed;
        for i in (1..order.len()).rev() {
            s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            order.swap(i, (s >> 33) as usize % (i + 1));
        }
        let src: ModuleRef = Arc::new(WeylModule::new(SkewShape::straight(l.clone()), n));
        let tgt: ModuleRef = Arc::new(WeylModule::new(SkewShape::straight(m.clone()), n));
        let base = ext_modules(src.clone(), tgt.clone(), 2, &ResolutionOptions::default()).unwrap();
        let shuffled = ResolutionOptions { weight_order: Some(order), reverse_kernels: reverse, ..Default::default() };
        prop_assert_eq!(&ext_modules(src.clone(), tgt.clone(), 2, &shuffled).unwrap(), &base);
        let full = ResolutionOptions { full_truncation: true, ..Default::default() };
        prop_assert_eq!(&ext_modules(src, tgt, 2, &full).unwrap(), &base);
    }
}

#[test]
fn exterior_route_matches_generic_route() {
    for r in 1..=4 {
        for mu in partitions_of(r, r) {
            let k = WeylModule::new(SkewShape::straight(mu.clone()), r);
            let cobar = ext_from_exterior(r, &k, 2).unwrap();
            let column = Partition::new(vec![1; r]).unwrap();
            let generic: Vec<_> = ext_weyl(&column, &mu, Some(r), 2).unwrap().into_iter().map(|x| x.group).collect();
            assert_eq!(cobar, generic, "r = {r}, mu = {mu}");
        }
    }
}
