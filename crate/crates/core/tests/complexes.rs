use std::collections::BTreeMap;

use diagres::algebra::{Poly, Ring, WeightVector};
use diagres::complexes::{
    all_bracketings, check_complex, cone, convolve_in_order, hom_derived, hom_derived_in_degree,
    left_convolution, right_convolution, totalization, ChainMap, ComplexOfComplexes,
    ComplexVerdict, FreeComplex,
};
use diagres::graded::{Generator, PolyMatrix};
use diagres::Error;

fn ring(ws: &[u32]) -> Ring {
    Ring::weighted(WeightVector::new(ws.to_vec()).unwrap())
}

fn gens(r: &Ring, degrees: &[i64]) -> Vec<Generator> {
    let z = r.group().zero();
    degrees
        .iter()
        .map(|&d| Generator::new(d, z.clone()))
        .collect()
}

fn p(r: &Ring, s: &str) -> Poly {
    r.parse(s).unwrap()
}

fn mat(r: &Ring, rows: &[&[&str]]) -> PolyMatrix {
    PolyMatrix::from_rows(
        r.nvars(),
        rows.iter()
            .map(|row| row.iter().map(|s| p(r, s)).collect())
            .collect(),
    )
}

/// Koszul complex of `(x0, x1)` over the standard plane.
fn koszul2(r: &Ring) -> FreeComplex {
    FreeComplex::new(
        r,
        0,
        vec![gens(r, &[0]), gens(r, &[1, 1]), gens(r, &[2])],
        vec![mat(r, &[&["x0", "x1"]]), mat(r, &[&["-x1"], &["x0"]])],
    )
    .unwrap()
}

fn free(r: &Ring, degrees: &[i64], at: i64) -> FreeComplex {
    FreeComplex::single(r, gens(r, degrees), at)
}

/// Homology dimensions `(i, d) → dim` over all indices and a degree window.
fn homology_profile(
    c: &FreeComplex,
    degrees: std::ops::RangeInclusive<i64>,
) -> BTreeMap<(i64, i64), usize> {
    let mut out = BTreeMap::new();
    for d in degrees {
        for i in c.lo() - 1..=c.hi() + 1 {
            let h = c.homology_strand(i, d);
            if h > 0 {
                out.insert((i, d), h);
            }
        }
    }
    out
}

fn shifted_profile(m: &BTreeMap<(i64, i64), usize>, by: i64) -> BTreeMap<(i64, i64), usize> {
    m.iter().map(|(&(i, d), &h)| ((i + by, d), h)).collect()
}

#[test]
fn check_complex_verdicts() {
    let r = ring(&[1, 1]);
    assert!(check_complex(&koszul2(&r)).passed());
    assert!(check_complex(&FreeComplex::zero(&r)).passed());
    // d1 d2 = x0^2 != 0
    let bad = FreeComplex::new(
        &r,
        0,
        vec![gens(&r, &[0]), gens(&r, &[1]), gens(&r, &[2])],
        vec![mat(&r, &[&["x0"]]), mat(&r, &[&["x0"]])],
    )
    .unwrap();
    match check_complex(&bad) {
        ComplexVerdict::NotSquareZero {
            index,
            row,
            col,
            entry,
        } => {
            assert_eq!((index, row, col), (2, 0, 0));
            assert_eq!(entry, "x0^2");
        }
        v => panic!("unexpected verdict {v:?}"),
    }
}

#[test]
fn inhomogeneous_differential_is_rejected() {
    let r = ring(&[1, 1]);
    let e = FreeComplex::new(
        &r,
        0,
        vec![gens(&r, &[0]), gens(&r, &[2])],
        vec![mat(&r, &[&["x0"]])],
    );
    assert!(matches!(e, Err(Error::Inhomogeneous(_))));
}

#[test]
fn homology_strands() {
    let r = ring(&[1, 1]);
    let k = koszul2(&r);
    assert_eq!(k.homology_strand(0, 0), 1);
    for d in 0..6 {
        assert_eq!(k.homology_strand(1, d), 0);
        assert_eq!(k.homology_strand(2, d), 0);
        if d > 0 {
            assert_eq!(k.homology_strand(0, d), 0);
        }
    }
    let r12 = ring(&[1, 2]);
    let x0 = FreeComplex::two_term(
        &r12,
        0,
        gens(&r12, &[1]),
        gens(&r12, &[0]),
        mat(&r12, &[&["x0"]]),
    )
    .unwrap();
    assert_eq!(x0.homology_strand(0, 2), 1);
}

#[test]
fn cones() {
    let r = ring(&[1, 1]);
    let k = koszul2(&r);
    let c = cone(&ChainMap::identity(&k)).unwrap();
    assert!(check_complex(&c).passed());
    assert!(homology_profile(&c, 0..=6).is_empty());

    let s = free(&r, &[0], 0);
    let z = cone(&ChainMap::zero(&k, &s)).unwrap();
    for d in 0..6 {
        for i in -1..5 {
            assert_eq!(
                z.piece(i, d).dim(),
                s.piece(i, d).dim() + k.piece(i - 1, d).dim()
            );
        }
    }

    let s1 = free(&r, &[1], 0);
    let f = ChainMap::new(&s1, &s, vec![(0, mat(&r, &[&["x0"]]))]).unwrap();
    let c = cone(&f).unwrap();
    for d in 0..6 {
        assert_eq!(c.homology_strand(0, d), 1);
        assert_eq!(c.homology_strand(1, d), 0);
    }
}

#[test]
fn invalid_chain_map_is_rejected() {
    let r = ring(&[1, 1]);
    let k = koszul2(&r);
    let s = free(&r, &[0], 0);
    assert!(ChainMap::new(&s, &k, vec![(0, PolyMatrix::identity(1, 2))]).is_ok());
    // the augmentation does not commute with d_1
    let g = ChainMap::new(&k, &s, vec![(0, PolyMatrix::identity(1, 2))]);
    assert!(matches!(g, Err(Error::InvalidChainMap(_))));
    let bad = ChainMap::new(&k, &k, vec![(0, PolyMatrix::identity(1, 2))]);
    assert!(matches!(bad, Err(Error::InvalidChainMap(_))));
}

#[test]
fn cone_long_exact_sequence() {
    let r = ring(&[1, 1]);
    let k = koszul2(&r);
    let s = free(&r, &[0], 0);
    let inc = ChainMap::new(&s, &k, vec![(0, PolyMatrix::identity(1, 2))]).unwrap();
    let c = cone(&inc).unwrap();
    for d in 0..6 {
        let mut alt = 0i64;
        for i in -2..5 {
            let hc = c.homology_strand(i, d);
            assert!(hc <= k.homology_strand(i, d) + s.homology_strand(i - 1, d));
            let sign = if i.rem_euclid(2) == 0 { 1 } else { -1 };
            alt += sign
                * (hc as i64 - k.homology_strand(i, d) as i64 - s.homology_strand(i - 1, d) as i64);
        }
        assert_eq!(alt, 0);
    }
}

#[test]
fn derived_hom_between_frees() {
    let r = ring(&[1, 1]);
    let s = free(&r, &[0], 0);
    assert_eq!(hom_derived(&s, &s, 0).unwrap(), 1);
    assert_eq!(hom_derived(&s, &s, 1).unwrap(), 0);
    assert_eq!(hom_derived(&s, &s, -1).unwrap(), 0);
    let s_1 = free(&r, &[1], 0);
    assert_eq!(hom_derived(&s, &s_1, 0).unwrap(), 0);
    assert_eq!(hom_derived(&s_1, &s, 0).unwrap(), 2);
}

#[test]
fn ext_of_residue_field() {
    let r = ring(&[1, 1]);
    let k = koszul2(&r);
    let s = free(&r, &[0], 0);
    // Ext^2(Q, S) is one-dimensional and sits in internal degree -2, so
    // it is seen by Hom(Q, S(-2)[2]) and not by Hom(Q, S[2]).
    assert_eq!(hom_derived(&k, &s, 2).unwrap(), 0);
    assert_eq!(hom_derived(&k, &free(&r, &[2], 0), 2).unwrap(), 1);
    assert_eq!(hom_derived_in_degree(&k, &s, 2, -2).unwrap(), 1);
    for rr in [0, 1, 3] {
        for d in -4..4 {
            assert_eq!(hom_derived_in_degree(&k, &s, rr, d).unwrap(), 0);
        }
    }
}

#[test]
fn derived_hom_shift_invariance() {
    let r = ring(&[1, 2]);
    let f =
        FreeComplex::two_term(&r, 0, gens(&r, &[2]), gens(&r, &[0]), mat(&r, &[&["x1"]])).unwrap();
    let g =
        FreeComplex::two_term(&r, 0, gens(&r, &[1]), gens(&r, &[0]), mat(&r, &[&["x0"]])).unwrap();
    for rr in -3..4 {
        let a = hom_derived(&f, &g, rr).unwrap();
        assert_eq!(a, hom_derived(&f.shift(-1), &g, rr - 1).unwrap());
        assert_eq!(a, hom_derived(&f, &g.shift(1), rr - 1).unwrap());
    }
}

/// The strict sequence `S(-2) → S(-1)^2 → S` of single free modules.
fn sheaf_koszul(r: &Ring) -> ComplexOfComplexes {
    let a0 = free(r, &[0], 0);
    let a1 = free(r, &[1, 1], 0);
    let a2 = free(r, &[2], 0);
    let d1 = ChainMap::new(&a1, &a0, vec![(0, mat(r, &[&["x0", "x1"]]))]).unwrap();
    let d2 = ChainMap::new(&a2, &a1, vec![(0, mat(r, &[&["-x1"], &["x0"]]))]).unwrap();
    ComplexOfComplexes::new(vec![a0, a1, a2], vec![d1, d2]).unwrap()
}

/// `K(x0) ⊗ (Koszul complex of x1, x2)`: objects are two-term complexes.
fn tensored_koszul(r: &Ring) -> ComplexOfComplexes {
    let obj = |degrees: &[i64]| {
        let n = degrees.len();
        let src: Vec<i64> = degrees.iter().map(|d| d + 1).collect();
        let mut m = PolyMatrix::zeros(n, n, 3);
        for i in 0..n {
            m.set(i, i, p(r, "x0"));
        }
        FreeComplex::two_term(r, 0, gens(r, &src), gens(r, degrees), m).unwrap()
    };
    let a0 = obj(&[0]);
    let a1 = obj(&[1, 1]);
    let a2 = obj(&[2]);
    let both = |a: &FreeComplex, b: &FreeComplex, m: PolyMatrix| {
        ChainMap::new(a, b, vec![(0, m.clone()), (1, m)]).unwrap()
    };
    let d1 = both(&a1, &a0, mat(r, &[&["x1", "x2"]]));
    let d2 = both(&a2, &a1, mat(r, &[&["-x2"], &["x1"]]));
    ComplexOfComplexes::new(vec![a0, a1, a2], vec![d1, d2]).unwrap()
}

#[test]
fn right_convolution_of_sheaves_is_the_complex() {
    let r = ring(&[1, 1]);
    let seq = sheaf_koszul(&r);
    let tr = right_convolution(&seq, None).unwrap();
    assert!(check_complex(&tr.result).passed());
    assert!(tr.hypothesis.holds());
    assert_eq!(tr.intermediates.len(), 2);
    let k = koszul2(&r);
    assert_eq!(
        homology_profile(&tr.result, 0..=6),
        homology_profile(&k, 0..=6)
    );
    assert_eq!(
        homology_profile(&tr.result, 0..=6),
        homology_profile(&totalization(&seq), 0..=6)
    );
    for i in 0..3 {
        assert_eq!(tr.result.twists(i), k.twists(i));
    }
}

#[test]
fn convolution_of_length_zero_is_identity() {
    let r = ring(&[1, 1]);
    let k = koszul2(&r);
    let seq = ComplexOfComplexes::new(vec![k.clone()], vec![]).unwrap();
    let right = right_convolution(&seq, None).unwrap();
    assert_eq!(right.result, k);
    assert_eq!(right.morphism, ChainMap::identity(&k));
    let left = left_convolution(&seq, None).unwrap();
    assert_eq!(left.result, k);
    assert_eq!(left.morphism, ChainMap::identity(&k));
}

#[test]
fn two_term_convolution_gives_the_quotient() {
    let r = ring(&[1, 1]);
    let a0 = free(&r, &[0], 0);
    let a1 = free(&r, &[2], 0);
    let d1 = ChainMap::new(&a1, &a0, vec![(0, mat(&r, &[&["x0*x1"]]))]).unwrap();
    let seq = ComplexOfComplexes::new(vec![a0, a1], vec![d1]).unwrap();
    let tr = right_convolution(&seq, None).unwrap();
    // S/(x0 x1): dims 1, 2, 2, 2, ...
    for d in 0..8 {
        let expect = if d == 0 { 1 } else { 2 };
        assert_eq!(tr.result.homology_strand(0, d), expect);
        assert_eq!(tr.result.homology_strand(1, d), 0);
    }
}

#[test]
fn left_convolution_puts_top_object_in_degree_zero() {
    let r = ring(&[1, 1]);
    let seq = sheaf_koszul(&r);
    let tr = left_convolution(&seq, None).unwrap();
    assert!(check_complex(&tr.result).passed());
    assert_eq!(tr.result.twists(0), vec![2]);
    assert_eq!(tr.result.twists(-2), vec![0]);
    let right = right_convolution(&seq, None).unwrap();
    let lp = homology_profile(&tr.result, 0..=6);
    assert_eq!(
        shifted_profile(&lp, 2),
        homology_profile(&right.result, 0..=6)
    );
    assert_eq!(tr.morphism.target(), seq.object(2));
}

#[test]
fn convolutions_of_two_term_objects_match_totalization() {
    let r = ring(&[1, 1, 1]);
    let seq = tensored_koszul(&r);
    let tot = totalization(&seq);
    assert!(check_complex(&tot).passed());
    let right = right_convolution(&seq, None).unwrap();
    let left = left_convolution(&seq, None).unwrap();
    assert!(right.hypothesis.holds());
    let tp = homology_profile(&tot, 0..=5);
    assert_eq!(homology_profile(&right.result, 0..=5), tp);
    assert_eq!(
        shifted_profile(&homology_profile(&left.result, 0..=5), 2),
        tp
    );
    // the result resolves Q = S/(x0, x1, x2)
    assert_eq!(tp, BTreeMap::from([((0, 0), 1)]));
    for order in all_bracketings(2) {
        let c = convolve_in_order(&seq, &order).unwrap();
        assert_eq!(homology_profile(&c, 0..=5), tp, "order {order:?}");
    }
}

#[test]
fn hypothesis_violation_is_reported() {
    let r = ring(&[1, 1]);
    let a0 = free(&r, &[0], 0);
    let a1 = free(&r, &[0], -1);
    let d1 = ChainMap::zero(&a1, &a0);
    let seq = ComplexOfComplexes::new(vec![a0, a1], vec![d1]).unwrap();
    let tr = right_convolution(&seq, Some(3)).unwrap();
    assert!(!tr.hypothesis.holds());
    let v = tr.hypothesis.violations();
    assert_eq!(v.len(), 1);
    assert_eq!((v[0].p, v[0].q, v[0].r, v[0].dim), (1, 0, 1, 1));
}

#[test]
fn non_strict_sequence_is_rejected() {
    let r = ring(&[1, 1]);
    let a0 = free(&r, &[0], 0);
    let a1 = free(&r, &[1], 0);
    let a2 = free(&r, &[2], 0);
    let d1 = ChainMap::new(&a1, &a0, vec![(0, mat(&r, &[&["x0"]]))]).unwrap();
    let d2 = ChainMap::new(&a2, &a1, vec![(0, mat(&r, &[&["x1"]]))]).unwrap();
    assert!(matches!(
        ComplexOfComplexes::new(vec![a0, a1, a2], vec![d1, d2]),
        Err(Error::NotAComplexOfComplexes(_))
    ));
}
