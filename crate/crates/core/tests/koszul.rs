use diagres::algebra::{Poly, Ring, WeightVector};
use diagres::graded::{Generator, GradedAlgebra, GradedModule};
use diagres::koszul::{
    ar_strand_check, b_spaces, diagonal_strand_check, equivariant_strand_check, euler_kernel_check,
    koszul_check, seq_sheaf_check, veronese, DiagonalStrand, KoszulData, PiecewiseAlgebra,
};
use diagres::Error;

fn ring(ws: &[u32]) -> Ring {
    Ring::weighted(WeightVector::new(ws.to_vec()).unwrap())
}

fn poly_alg(ws: &[u32]) -> GradedAlgebra {
    GradedAlgebra::polynomial(ring(ws))
}

fn data(a: &GradedAlgebra, m_max: usize) -> KoszulData {
    b_spaces(&PiecewiseAlgebra::from(a.clone()), m_max)
}

fn veronese2(m_max: usize) -> KoszulData {
    b_spaces(&veronese(&poly_alg(&[1, 1]), 2).unwrap(), m_max)
}

fn binom(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn b_dims(k: &KoszulData, upto: i64) -> Vec<usize> {
    (0..=upto).map(|m| k.b_dim(m).unwrap()).collect()
}

#[test]
fn veronese_pieces() {
    let s = poly_alg(&[1, 1]);
    let v = veronese(&s, 2).unwrap();
    assert_eq!(
        (0..4).map(|m| v.dim(m)).collect::<Vec<_>>(),
        vec![1, 3, 5, 7]
    );
    let one = veronese(&s, 1).unwrap();
    for m in 0..6 {
        assert_eq!(one.dim(m), s.dim(m));
    }
    let w = veronese(&poly_alg(&[1, 2]), 2).unwrap();
    assert_eq!(
        (0..4).map(|m| w.dim(m)).collect::<Vec<_>>(),
        vec![1, 2, 3, 4]
    );
    assert!(veronese(&s, 0).is_err());
}

#[test]
fn koszul_spaces_of_polynomial_rings() {
    assert_eq!(b_dims(&data(&poly_alg(&[1, 1]), 3), 3), vec![1, 2, 1, 0]);
    for n in 1..=4 {
        let k = data(&poly_alg(&vec![1; n]), n + 1);
        for m in 0..=n + 1 {
            assert_eq!(k.b_dim(m as i64).unwrap(), binom(n, m));
        }
        assert!(k.is_complete());
    }
}

#[test]
fn koszul_spaces_of_the_veronese() {
    let k = veronese2(4);
    assert_eq!(b_dims(&k, 4), vec![1, 3, 4, 4, 4]);
    // (Σ (-1)^m b_m t^m) · (Σ a_k t^k) = 1 up to the computed range
    let a = |j: i64| if j < 0 { 0 } else { 2 * j + 1 };
    for kk in 0..=4i64 {
        let s: i64 = (0..=kk)
            .map(|m| {
                let sign = if m % 2 == 0 { 1 } else { -1 };
                sign * k.b_dim(m).unwrap() as i64 * a(kk - m)
            })
            .sum();
        assert_eq!(s, i64::from(kk == 0), "k = {kk}");
    }
}

#[test]
fn koszul_check_on_polynomial_rings() {
    for n in 1..=4 {
        let k = data(&poly_alg(&vec![1; n]), 4);
        let v = koszul_check(&k, 4, 6).unwrap();
        assert!(v.passed(), "n = {n}: {:?}", v.first_failure);
        assert_eq!(v.strands.len(), 7);
    }
}

#[test]
fn koszul_check_on_the_veronese() {
    let v = koszul_check(&veronese2(4), 4, 6).unwrap();
    assert!(v.passed(), "{:?}", v.first_failure);
}

#[test]
fn cubic_is_not_koszul() {
    let r = ring(&[1, 1, 1]);
    let a =
        GradedAlgebra::quotient(r.clone(), vec![r.parse("x0^3 + x1^3 + x2^3").unwrap()]).unwrap();
    let v = koszul_check(&data(&a, 3), 3, 4).unwrap();
    assert!(!v.passed());
    assert_eq!(v.first_failure.unwrap().1, 3);
    for s in &v.strands[..3] {
        assert!(s.is_exact());
    }
}

#[test]
fn froberg_identity_matches_the_verdict() {
    // both sides of the strand identity, computed independently
    let k = data(&poly_alg(&[1, 1, 1]), 5);
    let a = k.algebra();
    for kk in 0..=6i64 {
        let s: i64 = (0..=kk)
            .map(|m| {
                let sign = if m % 2 == 0 { 1 } else { -1 };
                sign * (k.b_dim(m).unwrap() * a.dim(kk - m)) as i64
            })
            .sum();
        assert_eq!(s, i64::from(kk == 0));
    }
    assert!(koszul_check(&k, 4, 6).unwrap().passed());
}

#[test]
fn syzygy_pieces() {
    let k = data(&poly_alg(&[1, 1]), 3);
    let s = k.algebra();
    for l in 0..8 {
        let oracle = 2 * s.dim(l) - s.dim(l + 1);
        assert_eq!(k.r_piece(1, l).unwrap().dim(), oracle);
        assert_eq!(k.r_piece(1, l).unwrap().dim(), l as usize);
        assert_eq!(k.r_piece(0, l).unwrap().dim(), s.dim(l));
    }
    assert_eq!(k.r_piece(2, -1).unwrap().dim(), 0);
    assert_eq!(k.r_piece(1, -1).unwrap().dim(), 0);
}

#[test]
fn sheaf_sequences_are_exact() {
    let k = data(&poly_alg(&[1, 1]), 3);
    for r in seq_sheaf_check(&k, 1, 0..=4).unwrap() {
        assert!(r.is_exact(), "{r:?}");
    }
    for r in seq_sheaf_check(&k, 0, 0..=4).unwrap() {
        assert!(r.is_exact());
    }
    let v = veronese2(3);
    for r in seq_sheaf_check(&v, 2, 0..=3).unwrap() {
        assert!(r.is_exact(), "{r:?}");
    }
}

#[test]
fn ar_strands_are_exact() {
    let k = data(&poly_alg(&[1, 1]), 3);
    for l in 0..=4 {
        assert!(ar_strand_check(&k, 1, l).unwrap().is_exact());
        let r = ar_strand_check(&k, 0, l).unwrap();
        assert!(r.is_exact());
        assert_eq!(r.positions.len(), 2);
    }
    let v = veronese2(3);
    for l in 0..=2 {
        let r = ar_strand_check(&v, 2, l).unwrap();
        assert!(r.is_exact(), "{r:?}");
    }
}

#[test]
fn diagonal_strands() {
    let k = data(&poly_alg(&[1, 1]), 3);
    let r = diagonal_strand_check(&k, 2, 2).unwrap();
    assert!(r.is_exact(), "{r:?}");
    assert!(r.is_complex);
    let z = diagonal_strand_check(&k, 0, 0).unwrap();
    assert!(z.is_exact());
    assert_eq!(
        z.positions.iter().map(|p| p.dim).collect::<Vec<_>>(),
        vec![1, 1]
    );
    let v = veronese2(3);
    assert!(diagonal_strand_check(&v, 3, 3).unwrap().is_exact());
}

#[test]
fn diagonal_strand_needs_enough_koszul_spaces() {
    let v = veronese2(2);
    assert!(matches!(
        diagonal_strand_check(&v, 3, 1),
        Err(Error::BoundExhausted { degree: 3, .. })
    ));
}

#[test]
fn diagonal_strand_uses_pieces_up_to_total_degree() {
    let k = data(&poly_alg(&[1, 1]), 3);
    let s = DiagonalStrand::new(&k, (3, 2)).unwrap();
    assert_eq!(s.target, 6);
    assert_eq!(s.terms.len(), 4);
    for w in s.maps.windows(2) {
        assert!(w[1].mul(&w[0]).is_zero());
    }
}

#[test]
fn equivariant_diagonal_on_weights_1_2() {
    let w = WeightVector::new(vec![1, 2]).unwrap();
    let blocks = equivariant_strand_check(&w, 2, 2).unwrap();
    assert_eq!(blocks.len(), 2);
    let (psi, inv) = &blocks[0];
    assert!(psi.is_trivial());
    assert!(inv.is_exact(), "{inv:?}");
    let zero = equivariant_strand_check(&w, 0, 0).unwrap();
    assert!(zero[0].1.is_exact());
}

#[test]
fn equivariant_diagonal_with_trivial_group_is_the_full_strand() {
    let w = WeightVector::standard(2);
    let blocks = equivariant_strand_check(&w, 2, 3).unwrap();
    assert_eq!(blocks.len(), 1);
    let full = diagonal_strand_check(&data(&poly_alg(&[1, 1]), 3), 2, 3).unwrap();
    assert_eq!(blocks[0].1.positions, full.positions);
}

#[test]
fn equivariant_check_rejects_bad_weights() {
    let w = WeightVector::new(vec![2, 2]).unwrap();
    assert!(matches!(
        equivariant_strand_check(&w, 1, 1),
        Err(Error::NotWellFormed { .. })
    ));
}

fn cyclic_module(r: &Ring, rels: &[&str]) -> GradedModule {
    let a = GradedAlgebra::polynomial(r.clone());
    let cols = rels
        .iter()
        .map(|s| {
            let p: Poly = r.parse(s).unwrap();
            (r.degree_of(&p).unwrap().unwrap(), vec![p])
        })
        .collect();
    GradedModule::new(&a, vec![Generator::new(0, r.group().zero())], cols).unwrap()
}

#[test]
fn euler_identity() {
    let r = ring(&[1, 1]);
    let s = GradedAlgebra::polynomial(r.clone());
    let k = data(&s, 3);
    // χ(O(k)) = k + 1 on the line, χ(O_point(k)) = 1
    let v = euler_kernel_check(&k, &GradedModule::free_of_degrees(&s, &[0]), -4, 4).unwrap();
    assert!(v.passed(), "{:?}", v.residuals());
    for &(kk, lhs, _) in &v.rows {
        assert_eq!(lhs, kk as i128 + 1);
    }
    let zero = GradedModule::free(&s, vec![]);
    let v = euler_kernel_check(&k, &zero, -4, 4).unwrap();
    assert!(v.passed());
    assert!(v.rows.iter().all(|r| r.1 == 0));
    let v = euler_kernel_check(&k, &cyclic_module(&r, &["x0"]), 0, 4).unwrap();
    assert!(v.passed());
    assert!(v.rows.iter().all(|r| r.1 == 1));
}

#[test]
fn euler_identity_needs_a_finite_sum() {
    let v = veronese2(3);
    let s = poly_alg(&[1, 1]);
    assert!(matches!(
        euler_kernel_check(&v, &GradedModule::free_of_degrees(&s, &[0]), 0, 2),
        Err(Error::BoundExhausted { .. })
    ));
}
