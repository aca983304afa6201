use std::collections::BTreeMap;

use diagres::algebra::{Poly, Ring, WeightVector};
use diagres::complexes::check_complex;
use diagres::graded::{Generator, GradedAlgebra, GradedModule};
use diagres::koszul::{b_spaces, PiecewiseAlgebra};
use diagres::wps::{
    beilinson_e1, bott_eigen, cover_algebra, cover_piece_characters, left_resolution,
    line_cohomology, module_cohomology, omega_module, right_resolution, stabilizer_cover,
    validate_weights, CohomologyTable, E1Options, FiniteLength,
};
use diagres::Error;

fn wv(ws: &[u32]) -> WeightVector {
    WeightVector::new(ws.to_vec()).unwrap()
}

fn weighted(ws: &[u32]) -> Ring {
    Ring::weighted(wv(ws))
}

/// `(S / (rels))(shift)`.
fn cyclic(r: &Ring, shift: i64, rels: &[&str]) -> GradedModule {
    let a = GradedAlgebra::polynomial(r.clone());
    let cols = rels
        .iter()
        .map(|s| {
            let p: Poly = r.parse(s).unwrap();
            (r.degree_of(&p).unwrap().unwrap() - shift, vec![p])
        })
        .collect();
    GradedModule::new(&a, vec![Generator::new(-shift, r.group().zero())], cols).unwrap()
}

fn line(ws: &[u32], m: i64) -> GradedModule {
    cyclic(&weighted(ws), m, &[])
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Bott's formula on `P^n`.
fn bott(n: i64, p: i64, t: i64, q: i64) -> i64 {
    if q == 0 && t > p {
        binom(t + n - p, t) * binom(t - 1, p)
    } else if t == 0 && p == q {
        1
    } else if q == n && t < p - n {
        binom(-t + p, -t) * binom(-t - 1, n - p)
    } else {
        0
    }
}

fn euler(h: &[usize]) -> i64 {
    h.iter()
        .enumerate()
        .map(|(q, &x)| if q % 2 == 0 { x as i64 } else { -(x as i64) })
        .sum()
}

#[test]
fn weights_and_characters() {
    let d = validate_weights(&wv(&[1, 2])).unwrap();
    assert_eq!(d.sigma, 3);
    let norms: Vec<i64> = d.characters.iter().map(|c| c.norm).collect();
    assert_eq!(norms, vec![0, 1]);
    assert_eq!(d.characters[1].character.residues(), &[0, 1]);
    assert!(matches!(
        validate_weights(&wv(&[2, 2])),
        Err(Error::NotWellFormed { .. })
    ));
    let d = validate_weights(&wv(&[1, 1, 2])).unwrap();
    assert_eq!(
        d.characters.iter().map(|c| c.norm).collect::<Vec<_>>(),
        vec![0, 1]
    );
    for ws in [&[1u32, 2, 3][..], &[2, 3, 5], &[1, 4, 5]] {
        let d = validate_weights(&wv(ws)).unwrap();
        let g = d.group();
        assert_eq!(
            d.characters.len() as u64,
            ws.iter().map(|&a| a as u64).product::<u64>()
        );
        for c in &d.characters {
            let supp: i64 = c.support.iter().map(|&i| ws[i] as i64).sum();
            assert_eq!(c.norm + g.neg(&c.character).norm(), supp);
        }
    }
}

#[test]
fn line_bundle_cohomology() {
    assert_eq!(line_cohomology(&wv(&[1, 2]), 4), vec![3, 0]);
    assert_eq!(line_cohomology(&wv(&[1, 2]), -5), vec![0, 2]);
    assert_eq!(line_cohomology(&wv(&[1, 1, 2]), -4), vec![0, 0, 1]);
    // i + 2j = 5 with i, j ≥ 1
    let count = (1..5)
        .filter(|i| (5 - i) % 2 == 0 && (5 - i) / 2 >= 1)
        .count();
    assert_eq!(line_cohomology(&wv(&[1, 2]), -5)[1], count);
}

#[test]
fn serre_duality_of_line_bundles() {
    for ws in [&[1u32, 1][..], &[1, 2], &[1, 1, 2], &[2, 3, 5]] {
        let w = wv(ws);
        let n = w.n();
        for k in -12..=12 {
            let h = line_cohomology(&w, k);
            let dual = line_cohomology(&w, -k - w.sigma());
            for q in 0..=n {
                assert_eq!(h[q], dual[n - q]);
            }
        }
    }
}

#[test]
fn free_modules_match_line_bundles() {
    for ws in [&[1u32, 2][..], &[1, 1, 2]] {
        let w = wv(ws);
        for j in -3..=3 {
            let m = line(ws, j);
            for k in -7..=7 {
                let h = module_cohomology(&m, k, FiniteLength::Sheaf).unwrap();
                assert_eq!(h, line_cohomology(&w, k + j), "w={ws:?} j={j} k={k}");
            }
        }
    }
}

#[test]
fn torsion_and_finite_length_modules() {
    let r = weighted(&[1, 2]);
    let point = cyclic(&r, 0, &["x0"]);
    assert_eq!(
        module_cohomology(&point, 0, FiniteLength::Sheaf).unwrap(),
        vec![1, 0]
    );
    // x1 is invertible along x0 = 0, so sections in degree k are the even
    // degrees of Q[x1]
    for k in 0..6 {
        let h = module_cohomology(&point, k, FiniteLength::Sheaf).unwrap();
        assert_eq!(h, vec![usize::from(k % 2 == 0), 0]);
    }
    let q = cyclic(&r, 0, &["x0", "x1"]);
    assert_eq!(
        module_cohomology(&q, 0, FiniteLength::Sheaf).unwrap(),
        vec![0, 0]
    );
    assert_eq!(
        module_cohomology(&q, 0, FiniteLength::Module).unwrap(),
        vec![1, 0]
    );
}

#[test]
fn bott_examples() {
    let trivial = |m: BTreeMap<_, Vec<usize>>| -> Vec<usize> {
        assert_eq!(m.len(), 1);
        m.into_values().next().unwrap()
    };
    assert_eq!(trivial(bott_eigen(&wv(&[1, 1]), 1, 2).unwrap()), vec![1, 0]);
    // kernel of T_1^3 → T_2 on P^2, which is onto
    let oracle = 3 * 3 - 6;
    assert_eq!(
        trivial(bott_eigen(&wv(&[1, 1, 1]), 1, 2).unwrap()),
        vec![oracle, 0, 0]
    );
    // H^1(Ω^1) is spanned by the invariant class of dx̃_1/x̃_1 - dx̃_0/x̃_0
    let m = bott_eigen(&wv(&[1, 2]), 1, 0).unwrap();
    for (chi, h) in &m {
        if chi.is_trivial() {
            assert_eq!(h, &vec![0, 1]);
        } else {
            assert_eq!(h, &vec![0, 0]);
        }
    }
}

#[test]
fn bott_characters_sum_to_bott_numbers() {
    for ws in [&[1u32, 1][..], &[1, 2], &[1, 1, 2], &[1, 2, 3]] {
        let w = wv(ws);
        let n = w.n() as i64;
        for p in 0..=n {
            for t in -4..=4 {
                let m = bott_eigen(&w, p as usize, t).unwrap();
                assert_eq!(m.len() as u32, ws.iter().product::<u32>());
                for q in 0..=n {
                    let total: usize = m.values().map(|h| h[q as usize]).sum();
                    assert_eq!(total as i64, bott(n, p, t, q), "w={ws:?} p={p} t={t} q={q}");
                }
                if p == 0 && t >= 0 {
                    let total: usize = m.values().map(|h| h[0]).sum();
                    assert_eq!(total as i64, binom(n + t, n));
                }
            }
        }
    }
}

#[test]
fn syzygy_pieces_are_twisted_forms() {
    for len in 2..=3usize {
        let w = WeightVector::standard(len);
        let k = b_spaces(
            &PiecewiseAlgebra::from(GradedAlgebra::polynomial(Ring::weighted(w.clone()))),
            len,
        );
        for m in 0..len as i64 {
            for l in 0..=4 {
                let h: usize = bott_eigen(&w, m as usize, m + l)
                    .unwrap()
                    .values()
                    .map(|h| h[0])
                    .sum();
                assert_eq!(k.r_piece(m, l).unwrap().dim(), h, "m={m} l={l}");
            }
        }
    }
}

#[test]
fn omega_on_the_line_is_o_minus_two() {
    let t = cover_algebra(&WeightVector::standard(2));
    let omega = omega_module(&t, 1).unwrap();
    for k in -4..=4 {
        let h = module_cohomology(&omega, k, FiniteLength::Sheaf).unwrap();
        assert_eq!(h, line_cohomology(&WeightVector::standard(2), k - 2));
    }
}

#[test]
fn eigensheaf_ranks() {
    for ws in [&[1u32, 2][..], &[1, 1, 2], &[2, 3, 5]] {
        let w = wv(ws);
        let s = Ring::weighted(w.clone());
        let t = Ring::cover(&w);
        let d = validate_weights(&w).unwrap();
        for k in 0..=10 {
            let by_chi = cover_piece_characters(&w, k);
            let mut total = 0;
            for c in &d.characters {
                let want = s.dim(k - c.norm);
                assert_eq!(by_chi[&c.character], want);
                total += want;
            }
            assert_eq!(total, t.dim(k));
        }
    }
}

#[test]
fn e1_tables() {
    for ws in [&[1u32, 1][..], &[1, 2]] {
        let t = beilinson_e1(&line(ws, 0), &E1Options::default()).unwrap();
        assert_eq!(t.entries.len(), 1);
        let e = &t.entries[0];
        assert_eq!((e.p, e.q, e.dim), (0, 0, 1));
        assert!(e.chi.is_trivial());
    }
    let zero = GradedModule::free(&GradedAlgebra::polynomial(weighted(&[1, 2])), vec![]);
    assert!(beilinson_e1(&zero, &E1Options::default())
        .unwrap()
        .is_empty());
}

#[test]
fn e1_converges_in_k_theory() {
    let w = wv(&[1, 2]);
    let r = weighted(&[1, 2]);
    let modules = [
        cyclic(&r, 0, &[]),
        cyclic(&r, 1, &[]),
        cyclic(&r, -1, &[]),
        cyclic(&r, 0, &["x0"]),
        cyclic(&r, 1, &["x0"]),
    ];
    for a in &modules {
        let table = beilinson_e1(a, &E1Options::default()).unwrap();
        for k in -4..=4 {
            let lhs: i64 = table
                .entries
                .iter()
                .map(|e| {
                    let sign = if (e.p + e.q as i64) % 2 == 0 { 1 } else { -1 };
                    sign * e.dim as i64 * euler(&line_cohomology(&w, e.p - e.chi.norm() + k))
                })
                .sum();
            let rhs = euler(&module_cohomology(a, k, FiniteLength::Sheaf).unwrap());
            assert_eq!(lhs, rhs, "k={k}");
        }
    }
}

/// Twists of the terms predicted by the row `q` of the table.
fn predicted_twists(table: &CohomologyTable, q: usize, p: i64, degree: i64) -> Vec<i64> {
    let mut out: Vec<i64> = table
        .entries
        .iter()
        .filter(|e| e.q == q && e.p == p)
        .flat_map(|e| std::iter::repeat_n(degree + e.chi.norm(), e.dim))
        .collect();
    out.sort_unstable();
    out
}

fn sorted(mut v: Vec<i64>) -> Vec<i64> {
    v.sort_unstable();
    v
}

#[test]
fn left_resolutions_on_the_line() {
    let c = left_resolution(&line(&[1, 1], 2), 0..=10).unwrap();
    assert_eq!(c.term_ranks(), vec![(1, 2), (0, 3)]);
    assert!(c.is_exact());
    assert!(check_complex(&c.complex).passed());
    let c = left_resolution(&line(&[1, 1], 0), 0..=10).unwrap();
    assert_eq!(c.term_ranks(), vec![(0, 1)]);
    assert!(c.is_exact());
}

#[test]
fn left_resolution_terms_follow_the_table() {
    for (ws, m) in [(&[1u32, 2][..], 3), (&[1, 2], 4), (&[1, 1, 2], 2)] {
        let c = left_resolution(&line(ws, m), 0..=8).unwrap();
        assert!(c.is_exact(), "{ws:?} {m}");
        for p in c.complex.indices() {
            assert_eq!(
                sorted(c.complex.twists(p)),
                predicted_twists(&c.vanishing, 0, -p, p)
            );
        }
        let ranks: i64 = c
            .complex
            .indices()
            .map(|p| {
                if p % 2 == 0 {
                    c.complex.rank(p) as i64
                } else {
                    -(c.complex.rank(p) as i64)
                }
            })
            .sum();
        assert_eq!(ranks, 1);
    }
}

#[test]
fn left_resolution_reports_the_violation() {
    match left_resolution(&line(&[1, 1], -1), 0..=4) {
        Err(Error::VanishingViolated { p, q, dim, .. }) => assert_eq!((p, q, dim), (-1, 1, 1)),
        other => panic!("{other:?}"),
    }
}

#[test]
fn right_resolutions() {
    let w = wv(&[1, 1]);
    let a = line(&[1, 1], -2);
    let c = right_resolution(&a, 0..=8).unwrap();
    assert_eq!(c.term_ranks(), vec![(-1, 1), (0, 2)]);
    assert!(check_complex(&c.complex).passed());
    // the terms have no H^1 in degrees ≥ 0, so sections are exact exactly
    // where a(d) has none
    for r in &c.strands {
        let d: i64 = r.strand.trim_start_matches("degree ").parse().unwrap();
        assert_eq!(
            r.is_exact(),
            line_cohomology(&w, d - 2)[1] == 0,
            "degree {d}"
        );
    }
    let w = wv(&[1, 2]);
    let c = right_resolution(&line(&[1, 2], -3), 0..=8).unwrap();
    let n = w.n() as i64;
    for i in 0..=n {
        assert_eq!(
            sorted(c.complex.twists(-i)),
            predicted_twists(&c.vanishing, 1, i - n, n - i)
        );
    }
    for r in &c.strands {
        let d: i64 = r.strand.trim_start_matches("degree ").parse().unwrap();
        assert_eq!(
            r.is_exact(),
            line_cohomology(&w, d - 3)[1] == 0,
            "degree {d}"
        );
    }
    assert!(matches!(
        right_resolution(&line(&[1, 1], 0), 0..=2),
        Err(Error::VanishingViolated { q: 0, .. })
    ));
}

#[test]
fn stabilizer_covers() {
    assert_eq!(stabilizer_cover(&wv(&[1, 2])).unwrap(), vec![0, 1]);
    assert_eq!(stabilizer_cover(&wv(&[2, 3])).unwrap(), vec![1, 2]);
    assert_eq!(stabilizer_cover(&wv(&[1, 1, 1])).unwrap(), vec![0, 0, 0]);
}
