use proptest::prelude::*;

use diagres::algebra::{
    character_of, monomial_basis, rat, CharacterGroup, Matrix, Monomial, Poly, Ring, WeightVector,
};
use diagres::complexes::{check_complex, cone, ChainMap, FreeComplex};
use diagres::graded::{resolve, Generator, GradedAlgebra, GradedMap, GradedModule, PolyMatrix};
use diagres::koszul::{b_spaces, diagonal_strand_check, PiecewiseAlgebra};
use diagres::wps::line_cohomology;

fn weights() -> impl Strategy<Value = Vec<u32>> {
    proptest::collection::vec(1u32..=5, 1..=4)
}

fn small_matrix() -> impl Strategy<Value = Vec<Vec<i64>>> {
    (1usize..=5, 1usize..=6).prop_flat_map(|(r, c)| {
        proptest::collection::vec(proptest::collection::vec(-3i64..=3, c), r)
    })
}

/// A random homogeneous polynomial of weighted degree `e`.
fn random_poly(w: &WeightVector, e: i64, coeffs: &[i64]) -> Poly {
    let mut p = Poly::zero(w.len());
    for (m, &c) in monomial_basis(w, e).iter().zip(coeffs.iter().cycle()) {
        p.add_term(&rat(c), m);
    }
    p
}

fn gens(r: &Ring, degrees: &[i64]) -> Vec<Generator> {
    degrees
        .iter()
        .map(|&d| Generator::new(d, r.group().zero()))
        .collect()
}

proptest! {
    #[test]
    fn monomial_counts_match_the_hilbert_series(ws in weights()) {
        const TOP: usize = 40;
        // coefficients of prod (1 - t^a)^{-1}
        let mut series = vec![0u64; TOP + 1];
        series[0] = 1;
        for &a in &ws {
            for k in a as usize..=TOP {
                series[k] += series[k - a as usize];
            }
        }
        let w = WeightVector::new(ws).unwrap();
        for (d, &want) in series.iter().enumerate() {
            prop_assert_eq!(monomial_basis(&w, d as i64).len() as u64, want);
        }
    }

    #[test]
    fn rref_is_idempotent_and_kernels_are_exact(rows in small_matrix()) {
        let a = Matrix::from_rows(rows.iter().map(|r| r.iter().map(|&x| rat(x)).collect()).collect());
        let e = a.rref().to_matrix();
        prop_assert_eq!(e.rref().to_matrix(), e);
        let k = a.kernel_basis();
        prop_assert_eq!(k.len() + a.rank(), a.cols());
        for v in &k {
            prop_assert!(a.apply(v).iter().all(|x| *x == rat(0)));
        }
    }

    #[test]
    fn character_norms_and_negation(ws in proptest::collection::vec(1u32..=6, 2..=4)) {
        let w = WeightVector::new(ws.clone()).unwrap();
        let g = CharacterGroup::of_weights(&w);
        for c in g.elements() {
            let supp: i64 = c.support().iter().map(|&i| ws[i] as i64).sum();
            prop_assert_eq!(c.norm() + g.neg(&c).norm(), supp);
            prop_assert_eq!(g.neg(&g.neg(&c)), c);
        }
    }

    #[test]
    fn character_of_is_multiplicative(
        ws in proptest::collection::vec(1u32..=6, 3),
        e1 in proptest::collection::vec(0u32..9, 3),
        e2 in proptest::collection::vec(0u32..9, 3),
    ) {
        let w = WeightVector::new(ws).unwrap();
        let g = CharacterGroup::of_weights(&w);
        let (m1, m2) = (Monomial::new(e1), Monomial::new(e2));
        prop_assert_eq!(
            character_of(&w, &m1.mul(&m2)),
            g.add(&character_of(&w, &m1), &character_of(&w, &m2))
        );
        prop_assert!(character_of(&w, &Monomial::one(3)).is_trivial());
    }

    #[test]
    fn free_resolutions_satisfy_euler_hilbert(
        ws in prop_oneof![Just(vec![1u32, 1]), Just(vec![1, 2]), Just(vec![1, 1, 1])],
        monos in proptest::collection::vec(proptest::collection::vec(0u32..3, 3), 1..=3),
    ) {
        let r = Ring::weighted(WeightVector::new(ws.clone()).unwrap());
        let a = GradedAlgebra::polynomial(r.clone());
        let cols: Vec<(i64, Vec<Poly>)> = monos
            .iter()
            .map(|e| Monomial::new(e[..ws.len()].to_vec()))
            .filter(|m| !m.is_one())
            .map(|m| (m.degree(r.weights()), vec![Poly::monomial(m)]))
            .collect();
        let m = GradedModule::new(&a, gens(&r, &[0]), cols).unwrap();
        let f = resolve(&m).unwrap();
        for i in f.lo() + 1..f.hi() {
            prop_assert!(f.differential(i).mul(&f.differential(i + 1)).is_zero());
        }
        for d in 0..=8 {
            let alt: i64 = f
                .indices()
                .map(|i| if i % 2 == 0 { 1 } else { -1 } * f.piece(i, d).dim() as i64)
                .sum();
            prop_assert_eq!(alt, m.dim(d) as i64, "degree {}", d);
        }
    }

    #[test]
    fn kernel_pieces_and_twists(
        e in 0i64..=3,
        coeffs in proptest::collection::vec(-2i64..=2, 1..6),
        j in -3i64..=3,
    ) {
        let w = WeightVector::new(vec![1, 2]).unwrap();
        let r = Ring::weighted(w.clone());
        let a = GradedAlgebra::polynomial(r.clone());
        let f = random_poly(&w, e, &coeffs);
        let src = GradedModule::free_of_degrees(&a, &[e]);
        let tgt = GradedModule::free_of_degrees(&a, &[0]);
        let map = GradedMap::new(&src, &tgt, PolyMatrix::from_rows(2, vec![vec![f.clone()]]), 0).unwrap();
        let quotient = GradedModule::new(&a, gens(&r, &[0]), vec![(e, vec![f])]).unwrap();
        let twisted = quotient.twist(j);
        for d in 0..=10 {
            let mat = map.matrix_in_degree(d);
            let (dim, basis) = map.kernel_piece(d);
            prop_assert_eq!(dim, src.dim(d) - mat.rank());
            for v in &basis {
                prop_assert!(mat.apply(v).iter().all(|x| *x == rat(0)));
            }
            prop_assert_eq!(quotient.dim(d), tgt.dim(d) - mat.rank());
            prop_assert_eq!(twisted.dim(d - j), quotient.dim(d));
        }
    }

    #[test]
    fn cone_long_exact_sequence(
        src_deg in proptest::collection::vec(0i64..=3, 1..=2),
        tgt_deg in proptest::collection::vec(0i64..=2, 1..=2),
        coeffs in proptest::collection::vec(-2i64..=2, 1..8),
    ) {
        let w = WeightVector::new(vec![1, 1]).unwrap();
        let r = Ring::weighted(w.clone());
        let rows: Vec<Vec<Poly>> = tgt_deg
            .iter()
            .enumerate()
            .map(|(a, &t)| {
                src_deg
                    .iter()
                    .enumerate()
                    .map(|(b, &s)| {
                        let rot: Vec<i64> = coeffs.iter().cycle().skip(a + 2 * b).take(coeffs.len()).copied().collect();
                        if s >= t { random_poly(&w, s - t, &rot) } else { Poly::zero(2) }
                    })
                    .collect()
            })
            .collect();
        let src = FreeComplex::single(&r, gens(&r, &src_deg), 0);
        let tgt = FreeComplex::single(&r, gens(&r, &tgt_deg), 0);
        let f = ChainMap::new(&src, &tgt, vec![(0, PolyMatrix::from_rows(2, rows))]).unwrap();
        let c = cone(&f).unwrap();
        prop_assert!(check_complex(&c).passed());
        for d in 0..=6 {
            for i in -1..=2 {
                let bound = tgt.homology_strand(i, d) + src.homology_strand(i - 1, d);
                prop_assert!(c.homology_strand(i, d) <= bound);
            }
            prop_assert_eq!(c.euler_strand(d), tgt.euler_strand(d) - src.euler_strand(d));
        }
    }

    #[test]
    fn serre_duality_of_line_bundles(ws in proptest::collection::vec(1u32..=6, 2..=4), k in -12i64..=12) {
        let w = WeightVector::new(ws).unwrap();
        prop_assume!(w.is_well_formed());
        let n = w.n();
        let h = line_cohomology(&w, k);
        let dual = line_cohomology(&w, -k - w.sigma());
        for q in 0..=n {
            prop_assert_eq!(h[q], dual[n - q]);
        }
    }
}

#[test]
fn strand_reports_are_reproducible() {
    let a = GradedAlgebra::polynomial(Ring::weighted(WeightVector::new(vec![1, 1, 1]).unwrap()));
    let fresh = || b_spaces(&PiecewiseAlgebra::from(a.clone()), 4);
    let (k1, k2) = (fresh(), fresh());
    for (k, l) in [(1, 1), (2, 0), (2, 3)] {
        let r1 = diagonal_strand_check(&k1, k, l).unwrap();
        let r2 = diagonal_strand_check(&k2, k, l).unwrap();
        assert_eq!(r1.positions, r2.positions);
        assert_eq!(r1.is_exact(), r2.is_exact());
        assert_eq!(
            diagonal_strand_check(&k1, k, l).unwrap().positions,
            r1.positions
        );
    }
}
