mod common;

use common::ring;
use logdiv_core::arrangements::{binomial_row, Arrangement};
use logdiv_core::corpus;
use logdiv_core::liecoh::{chevalley_eilenberg_cohomology, weight_zero_fields, LieAlgebra, WeightZero};
use logdiv_core::linalg::rank_dense;
use logdiv_core::logder::{free_basis, Freeness};
use logdiv_core::poly::rat;
use logdiv_core::{Budget, Rational};
use proptest::prelude::*;

fn arrangement(n: usize) -> impl Strategy<Value = Arrangement> {
    prop::collection::vec(prop::collection::vec(-2i64..=2, n), 1..=6).prop_filter_map("valid arrangement", move |rows| {
        let forms: Vec<Vec<Rational>> = rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect();
        Arrangement::new(&ring(n), forms).ok()
    })
}

fn whitney(a: &Arrangement) -> Vec<i64> {
    let m = a.len();
    let mut p = vec![0i64; a.dimension() + 1];
    for mask in 0u32..(1 << m) {
        let rows: Vec<Vec<Rational>> = (0..m).filter(|j| mask >> j & 1 == 1).map(|j| a.forms()[j].clone()).collect();
        let r = if rows.is_empty() { 0 } else { rank_dense(&rows) };
        p[r] += if (mask.count_ones() as usize + r) % 2 == 0 { 1 } else { -1 };
    }
    while p.len() > 1 && p.last() == Some(&0) {
        p.pop();
    }
    p
}

fn add(a: &[i64], b: &[i64]) -> Vec<i64> {
    (0..a.len().max(b.len())).map(|i| a.get(i).unwrap_or(&0) + b.get(i).unwrap_or(&0)).collect()
}

/// `g = <e0> ⋉ Q^m` with `[e0, e_i] = sum_k m[k][i] e_k`; Jacobi holds for every `m`.
fn semidirect(m: &[Vec<i64>]) -> LieAlgebra {
    let d = m.len() + 1;
    let brackets: Vec<(usize, usize, Vec<(usize, Rational)>)> =
        (0..m.len()).map(|i| (0, i + 1, (0..m.len()).map(|k| (k + 1, rat(m[k][i]))).collect())).collect();
    let g = LieAlgebra::from_brackets(d, &brackets).unwrap();
    assert_eq!(g.dim(), d);
    g
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn deletion_restriction(a in arrangement(3)) {
        let j = a.len() - 1;
        let pi = a.poincare_polynomial();
        let del = a.deletion(j).poincare_polynomial();
        let res = a.restriction(j).unwrap().poincare_polynomial();
        let shifted: Vec<i64> = std::iter::once(0).chain(res).collect();
        let mut rhs = add(&del, &shifted);
        while rhs.len() > 1 && rhs.last() == Some(&0) {
            rhs.pop();
        }
        prop_assert_eq!(pi, rhs);
    }

    #[test]
    fn matches_whitney_and_has_the_center_factor(a in arrangement(3)) {
        let pi = a.poincare_polynomial();
        prop_assert_eq!(&pi, &whitney(&a));
        let at_minus_one: i64 = pi.iter().enumerate().map(|(k, c)| if k % 2 == 0 { *c } else { -c }).sum();
        prop_assert_eq!(at_minus_one, 0);
    }

    #[test]
    fn mobius_sums_vanish(a in arrangement(4)) {
        let lattice = a.intersection_lattice();
        prop_assert_eq!(lattice.flats[0].mobius, 1);
        for x in lattice.flats.iter().filter(|f| f.codim > 0) {
            let s: i64 = lattice
                .flats
                .iter()
                .filter(|y| y.codim <= x.codim && y.hyperplanes.iter().all(|h| x.hyperplanes.contains(h)))
                .map(|y| y.mobius)
                .sum();
            prop_assert_eq!(s, 0);
        }
    }

    #[test]
    fn semidirect_products_have_zero_euler_characteristic(m in prop::collection::vec(prop::collection::vec(-2i64..=2, 3), 3)) {
        let t = chevalley_eilenberg_cohomology(&semidirect(&m)).unwrap();
        prop_assert_eq!(t.euler_characteristic(), 0);
        prop_assert_eq!(t.betti[0], 1);
    }

    #[test]
    fn square_zero_iff_jacobi(c in prop::collection::vec(-1i64..=1, 9)) {
        // Antisymmetric constants on a 3-dimensional space: [e1,e2], [e1,e3], [e2,e3].
        let mut s = vec![vec![vec![rat(0); 3]; 3]; 3];
        for (p, (i, j)) in [(0, 1), (0, 2), (1, 2)].into_iter().enumerate() {
            for k in 0..3 {
                s[i][j][k] = rat(c[3 * p + k]);
                s[j][i][k] = -rat(c[3 * p + k]);
            }
        }
        let g = LieAlgebra::unchecked(s).unwrap();
        prop_assert_eq!(g.jacobi_failure().is_none(), chevalley_eilenberg_cohomology(&g).is_ok());
    }
}

#[test]
fn abelian_betti_numbers_are_binomial() {
    for m in 0..=5 {
        let t = chevalley_eilenberg_cohomology(&LieAlgebra::abelian(m)).unwrap();
        let betti: Vec<i64> = t.betti.iter().map(|&b| b as i64).collect();
        assert_eq!(betti, binomial_row(m));
    }
}

#[test]
fn torus_cohomology_from_the_normal_crossing() {
    for n in 1..=4 {
        let f = corpus::normal_crossing(n, n).polynomial();
        let Freeness::Free(b) = free_basis(&f, &Budget::unlimited()).unwrap() else { panic!() };
        let WeightZero::Linear(g) = weight_zero_fields(&b) else { panic!() };
        let betti: Vec<i64> = chevalley_eilenberg_cohomology(&g).unwrap().betti.iter().map(|&x| x as i64).collect();
        assert_eq!(betti, binomial_row(n));
        assert_eq!(Arrangement::boolean(n).poincare_polynomial(), binomial_row(n));
    }
}

#[test]
fn braid_arrangements() {
    assert_eq!(Arrangement::braid(3).poincare_polynomial(), vec![1, 3, 2]);
    assert_eq!(Arrangement::braid(4).poincare_polynomial(), vec![1, 6, 11, 6]);
}
