use proptest::prelude::*;

use ymalg::exactalg::{add_scaled, kernel_basis, rref, RatMatrix, Rational, SparseVec};
use ymalg::orbit::Functional;
use ymalg::weyl::{ym_weyl_map, Poly, WeylElement, WeylMapOptions};
use ymalg::ymquotient::build;

fn rational() -> impl Strategy<Value = Rational> {
    (-6i64..=6, 1i64..=4).prop_map(|(a, b)| Rational::new(a, b))
}

fn weyl(r: usize) -> impl Strategy<Value = WeylElement> {
    prop::collection::vec((prop::collection::vec(0u32..=2, 2 * r), rational()), 1..4).prop_map(move |terms| {
        WeylElement::from_terms(r, terms.into_iter().map(|(e, c)| ((e[..r].to_vec(), e[r..].to_vec()), c)))
    })
}

fn polys(r: usize) -> Vec<Poly> {
    let mut out = Vec::new();
    for a in 0..=5u32 {
        for b in 0..=(if r == 2 { 5 - a } else { 0 }) {
            let m = if r == 2 { vec![a, b] } else { vec![a] };
            out.push(Poly::from([(m, Rational::one())]));
        }
    }
    out
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn weyl_associative((a, b, c) in (1usize..=2).prop_flat_map(|r| (weyl(r), weyl(r), weyl(r)))) {
        let r = a.r();
        let abc = a.mul(&b).mul(&c);
        prop_assert_eq!(&abc, &a.mul(&b.mul(&c)));
        for p in polys(r) {
            prop_assert_eq!(abc.act(&p), a.act(&b.act(&c.act(&p))));
        }
    }

    #[test]
    fn commutator_is_derivation(a in weyl(1), b in weyl(1), c in weyl(1)) {
        let lhs = a.commutator(&b.mul(&c));
        let rhs = a.commutator(&b).mul(&c).add(&b.mul(&a.commutator(&c)));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn rank_nullity(rows in 1usize..6, cols in 1usize..6, entries in prop::collection::vec(rational(), 36)) {
        let m = RatMatrix::from_rows(cols, (0..rows).map(|i| entries[i * cols..(i + 1) * cols].to_vec()).collect());
        let (_, pivots) = rref(&m);
        let ker = kernel_basis(&m);
        prop_assert_eq!(pivots.len() + ker.len(), cols);
        let zero = vec![Rational::zero(); rows];
        for v in &ker {
            prop_assert_eq!(&m.mul_vec(v), &zero);
        }
    }

    #[test]
    fn jacobi_on_random_elements(xs in prop::collection::vec(prop::collection::vec(rational(), 21), 3)) {
        let g = build(3, 4).unwrap();
        let v: Vec<SparseVec> = xs.iter().map(|x| ymalg::exactalg::dense_to_sparse(x)).collect();
        let mut s = g.bracket(&g.bracket(&v[0], &v[1]), &v[2]);
        add_scaled(&mut s, &Rational::one(), &g.bracket(&g.bracket(&v[1], &v[2]), &v[0]));
        add_scaled(&mut s, &Rational::one(), &g.bracket(&g.bracket(&v[2], &v[0]), &v[1]));
        prop_assert!(s.is_empty());
        let mut anti = g.bracket(&v[0], &v[1]);
        add_scaled(&mut anti, &Rational::one(), &g.bracket(&v[1], &v[0]));
        prop_assert!(anti.is_empty());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn random_functionals_give_homomorphisms(vals in prop::collection::vec(rational(), 11)) {
        let g = build(3, 3).unwrap();
        let f = Functional::from_values(&g, vals).unwrap();
        let opts = WeylMapOptions { truncation: None, surjectivity_depth: 0 };
        let a = ym_weyl_map(&g, &f, &opts).unwrap();
        prop_assert!(a.hom_check);
        prop_assert!(a.relator_check);
        let b = ym_weyl_map(&g, &f, &opts).unwrap();
        prop_assert_eq!(a.basis_images, b.basis_images);
    }
}
