use std::fmt::Write as _;
use std::ops::RangeInclusive;

use num_traits::Zero;
use serde::Serialize;

use super::cohomology::{
    cover_algebra, dual_complex, exterior_basis, exterior_label, omega_module, pull_back, tensor,
    CharacterConvention, Cohomology, FiniteLength,
};
use crate::algebra::{
    labeled_kernel, Character, Matrix, Monomial, Poly, Rational, Ring, WeightVector,
};
use crate::complexes::FreeComplex;
use crate::error::{Error, Result};
use crate::graded::{Generator, GradedMap, GradedModule, PolyMatrix};
use crate::koszul::LabeledBasis;
use crate::strand::StrandReport;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TableEntry {
    pub p: i64,
    pub q: usize,
    pub chi: Character,
    pub dim: usize,
}

/// Nonzero entries `E_1^{p,q}(χ)` for `-n ≤ p ≤ 0`, `0 ≤ q ≤ n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub weights: WeightVector,
    pub twist: i64,
    pub convention: CharacterConvention,
    pub characters: Vec<Character>,
    pub entries: Vec<TableEntry>,
}

impl CohomologyTable {
    pub fn n(&self) -> usize {
        self.weights.n()
    }

    pub fn dim(&self, p: i64, q: usize, chi: &Character) -> usize {
        self.entries
            .iter()
            .find(|e| e.p == p && e.q == q && &e.chi == chi)
            .map_or(0, |e| e.dim)
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// One block per character with a nonzero entry: rows `p = 0, -1, …, -n`,
    /// columns `q = 0, …, n`.
    pub fn render(&self) -> String {
        let n = self.n();
        let mut out = String::new();
        if self.entries.is_empty() {
            out.push_str("all entries vanish\n");
            return out;
        }
        let width = self
            .entries
            .iter()
            .map(|e| e.dim.to_string().len())
            .max()
            .unwrap_or(1)
            .max(2);
        for chi in &self.characters {
            if !self.entries.iter().any(|e| &e.chi == chi) {
                continue;
            }
            let _ = writeln!(out, "chi = {chi}");
            let _ = write!(out, "{:>4} |", "p\\q");
            for q in 0..=n {
                let _ = write!(out, " {q:>width$}");
            }
            out.push('\n');
            for j in 0..=n as i64 {
                let p = -j;
                let _ = write!(out, "{p:>4} |");
                for q in 0..=n {
                    let _ = write!(out, " {:>width$}", self.dim(p, q, chi));
                }
                out.push('\n');
            }
        }
        out
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct E1Options {
    /// The table is computed for `a(twist)`.
    pub twist: i64,
    pub convention: CharacterConvention,
}

fn weighted_input(a: &GradedModule) -> Result<WeightVector> {
    if a.ring().is_equivariant() {
        return Err(Error::Unsupported(
            "expected a module over the weighted ring".into(),
        ));
    }
    let w = a.ring().weights().clone();
    w.check_well_formed()?;
    Ok(w)
}

/// `E_1^{p,q}(χ) = dim H^q(P^n, Ω^{-p}(-p) ⊗ a^#)^{-χ}` (with the default
/// convention), computed on the cover.
pub fn beilinson_e1(a: &GradedModule, opts: &E1Options) -> Result<CohomologyTable> {
    let w = weighted_input(a)?;
    let n = w.n();
    let t = cover_algebra(&w);
    let g = t.ring().group();
    let sharp = pull_back(&a.twist(opts.twist), &t)?;
    let characters = g.elements();
    let mut entries = Vec::new();
    for j in 0..=n {
        let m = if j == 0 {
            sharp.clone()
        } else {
            tensor(&omega_module(&t, j)?.twist(j as i64), &sharp)?
        };
        let coh = Cohomology::new(&m, FiniteLength::Sheaf)?;
        for psi in &characters {
            let chi = match opts.convention {
                CharacterConvention::Chi => g.neg(psi),
                CharacterConvention::MinusChi => psi.clone(),
            };
            for (q, dim) in coh.eigen(0, psi).into_iter().enumerate() {
                if dim > 0 {
                    entries.push(TableEntry {
                        p: -(j as i64),
                        q,
                        chi: chi.clone(),
                        dim,
                    });
                }
            }
        }
    }
    entries.sort_by(|x, y| (&x.chi, -x.p, x.q).cmp(&(&y.chi, -y.p, y.q)));
    Ok(CohomologyTable {
        weights: w,
        twist: opts.twist,
        convention: opts.convention,
        characters,
        entries,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Side {
    Left,
    Right,
}

/// A resolution of `a` over the weighted ring with its exactness evidence.
/// Left: `0 → C_n → … → C_0 → a → 0`, strand positions `n, …, 0` and `-1`
/// for `a`. Right: `0 → a → D_0 → … → D_{-n} → 0`, positions `1` for `a`,
/// then `0, …, -n`.
#[derive(Clone, Debug)]
pub struct ResolutionCertificate {
    pub side: Side,
    pub complex: FreeComplex,
    pub augmentation: GradedMap,
    pub vanishing: CohomologyTable,
    /// The `(p, q)` slots of the table required to vanish.
    pub checked: Vec<(i64, usize)>,
    pub strands: Vec<StrandReport>,
}

impl ResolutionCertificate {
    pub fn is_exact(&self) -> bool {
        self.strands.iter().all(StrandReport::is_exact)
    }

    /// Ranks of the terms, from the end farthest from `a`.
    pub fn term_ranks(&self) -> Vec<(i64, usize)> {
        let c = &self.complex;
        let idx: Vec<i64> = match self.side {
            Side::Left => (0..=c.hi().max(0)).rev().collect(),
            Side::Right => (c.lo().min(0)..=0).collect(),
        };
        idx.into_iter().map(|i| (i, c.rank(i))).collect()
    }
}

fn check_vanishing(table: &CohomologyTable, bad: impl Fn(usize) -> bool) -> Result<()> {
    match table.entries.iter().find(|e| bad(e.q)) {
        Some(e) => Err(Error::VanishingViolated {
            p: e.p,
            q: e.q,
            chi: e.chi.to_string(),
            dim: e.dim,
        }),
        None => Ok(()),
    }
}

/// The Beilinson complex of a module on the cover, with its augmentation
/// `C_0 → M` (rows: generators of `M`).
struct CoverComplex {
    complex: FreeComplex,
    augmentation: PolyMatrix,
}

/// `C_p = T(-p) ⊗ H_p` with `H_p = ker(Λ^p ⊗ M_0 → Λ^{p-1} ⊗ M_1)`, the
/// sections of `Ω^p(p) ⊗ M~`, and differential `h ↦ Σ_i x̃_i ⊗ ι_i h`.
fn cover_left(m: &GradedModule) -> Result<CoverComplex> {
    let ring = m.ring();
    let nv = ring.nvars();
    let g = ring.group();
    let m0 = m.piece(0);
    let (d0, d1) = (m0.dim(), m.dim(1));
    let labels0 = m0.labels();
    let xs = (0..nv)
        .map(|i| m.mult_matrix(&Poly::var(nv, i), 1, 0))
        .collect::<Result<Vec<Matrix>>>()?;
    let wedge: Vec<Vec<Vec<usize>>> = (0..=nv).map(|p| exterior_basis(nv, p)).collect();
    let index_of = |p: usize, s: &[usize]| {
        wedge[p]
            .binary_search(&s.to_vec())
            .expect("subset is listed")
    };

    let mut spaces: Vec<LabeledBasis> = vec![LabeledBasis::whole(labels0.clone())];
    for p in 1..nv {
        let src_labels: Vec<Character> = wedge[p]
            .iter()
            .flat_map(|s| {
                let e = exterior_label(ring, s);
                labels0.iter().map(move |l| g.add(&e, l))
            })
            .collect();
        let mut kappa = Matrix::zeros(wedge[p - 1].len() * d1, wedge[p].len() * d0);
        for (a, s) in wedge[p].iter().enumerate() {
            for (k, &i) in s.iter().enumerate() {
                let rest: Vec<usize> = s.iter().copied().filter(|&x| x != i).collect();
                let b = index_of(p - 1, &rest);
                for u in 0..d0 {
                    for v in 0..d1 {
                        let x = xs[i].get(v, u);
                        if x.is_zero() {
                            continue;
                        }
                        let val = if k % 2 == 0 { x.clone() } else { -x.clone() };
                        kappa.add_to(b * d1 + v, a * d0 + u, &val);
                    }
                }
            }
        }
        let (vecs, labels) = labeled_kernel(&kappa, &src_labels);
        spaces.push(LabeledBasis::new(wedge[p].len() * d0, vecs, labels));
    }

    let terms: Vec<Vec<Generator>> = spaces
        .iter()
        .enumerate()
        .map(|(p, h)| {
            h.labels()
                .iter()
                .map(|l| Generator::new(p as i64, l.clone()))
                .collect()
        })
        .collect();
    let mut diffs = Vec::new();
    for p in 1..spaces.len() {
        let (src, dst) = (&spaces[p], &spaces[p - 1]);
        let mut d = PolyMatrix::zeros(dst.dim(), src.dim(), nv);
        for (c, h) in src.vectors().iter().enumerate() {
            for i in 0..nv {
                let mut v = vec![Rational::zero(); dst.ambient()];
                for (a, s) in wedge[p].iter().enumerate() {
                    let Some(k) = s.iter().position(|&x| x == i) else {
                        continue;
                    };
                    let rest: Vec<usize> = s.iter().copied().filter(|&x| x != i).collect();
                    let b = index_of(p - 1, &rest);
                    for u in 0..d0 {
                        let x = &h[a * d0 + u];
                        if !x.is_zero() {
                            v[b * d0 + u] += if k % 2 == 0 { x.clone() } else { -x.clone() };
                        }
                    }
                }
                if v.iter().all(Zero::is_zero) {
                    continue;
                }
                let xi = Poly::var(nv, i);
                for (r, coef) in dst.coordinates(&v).iter().enumerate() {
                    if !coef.is_zero() {
                        let entry = d.get(r, c).add(&xi.scale(coef));
                        d.set(r, c, entry);
                    }
                }
            }
        }
        diffs.push(d);
    }
    let complex = FreeComplex::new(ring, 0, terms, diffs)?;

    let mut aug = PolyMatrix::zeros(m.gens().len(), d0, nv);
    for u in 0..d0 {
        let (j, mono) = m0.element(u);
        aug.set(*j, u, Poly::monomial(mono.clone()));
    }
    Ok(CoverComplex {
        complex,
        augmentation: aug,
    })
}

/// The invariant part of `T(-g) ⊗ (λ)` is `S`-free on `x̃^r e` with
/// `r` the residues of `-λ`.
fn descent_exponents(t: &Ring, label: &Character) -> Vec<u32> {
    t.group().neg(label).residues().to_vec()
}

fn descend_gens(t: &Ring, s: &Ring, gens: &[Generator]) -> Vec<Generator> {
    let z = s.group().zero();
    gens.iter()
        .map(|x| Generator::new(x.degree + t.group().neg(&x.label).norm(), z.clone()))
        .collect()
}

/// Restriction of a `T`-matrix between labeled free modules to invariants,
/// written over `S`.
fn descend_matrix(
    w: &WeightVector,
    t: &Ring,
    m: &PolyMatrix,
    src: &[Generator],
    dst: &[Generator],
) -> PolyMatrix {
    let nv = m.nvars();
    let a = w.weights();
    let rs: Vec<Vec<u32>> = src.iter().map(|x| descent_exponents(t, &x.label)).collect();
    let rd: Vec<Vec<u32>> = dst.iter().map(|x| descent_exponents(t, &x.label)).collect();
    let mut out = PolyMatrix::zeros(m.rows(), m.cols(), nv);
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let f = m.get(r, c);
            if f.is_zero() {
                continue;
            }
            let mut p = Poly::zero(nv);
            for (mono, coef) in f.terms() {
                let e: Vec<u32> = (0..nv)
                    .map(|i| {
                        let num = mono.exponents()[i] + rs[c][i] - rd[r][i];
                        debug_assert_eq!(num % a[i], 0, "invariant term");
                        num / a[i]
                    })
                    .collect();
                p.add_term(coef, &Monomial::new(e));
            }
            out.set(r, c, p);
        }
    }
    out
}

fn descend_complex(w: &WeightVector, s: &Ring, c: &FreeComplex) -> Result<FreeComplex> {
    let t = c.ring();
    if c.is_zero() {
        return Ok(FreeComplex::zero(s));
    }
    let terms = c.indices().map(|i| descend_gens(t, s, c.term(i))).collect();
    let diffs = (c.lo() + 1..=c.hi())
        .map(|i| descend_matrix(w, t, &c.differential(i), c.term(i), c.term(i - 1)))
        .collect();
    FreeComplex::new(s, c.lo(), terms, diffs)
}

/// The left resolution `0 → C_n → … → C_0 → a → 0` with
/// `C_p = ⊕_χ S(-p-|χ|) ⊗ H^0(Ω^p(p) ⊗ a^#)^{-χ}`. Requires the higher
/// cohomology in the table to vanish and `a` to agree with the sections of
/// its sheaf in degrees 0 and 1.
pub fn left_resolution(
    a: &GradedModule,
    window: RangeInclusive<i64>,
) -> Result<ResolutionCertificate> {
    let w = weighted_input(a)?;
    let n = w.n();
    let table = beilinson_e1(a, &E1Options::default())?;
    check_vanishing(&table, |q| q > 0)?;
    let t = cover_algebra(&w);
    let sharp = pull_back(a, &t)?;
    let coh = Cohomology::new(&sharp, FiniteLength::Sheaf)?;
    for k in 0..=1 {
        let (h0, dim) = (coh.total(k)[0], sharp.dim(k));
        if h0 != dim {
            return Err(Error::Unsupported(format!(
                "the pulled-back module has {dim} elements in degree {k} but its sheaf has {h0} sections; saturate it first"
            )));
        }
    }
    let cover = cover_left(&sharp)?;
    let s = a.ring();
    let complex = descend_complex(&w, s, &cover.complex)?;
    let c0 = GradedModule::free(a.algebra(), complex.term(0).to_vec());
    let aug_matrix = descend_matrix(
        &w,
        t.ring(),
        &cover.augmentation,
        cover.complex.term(0),
        sharp.gens(),
    );
    let augmentation = GradedMap::new(&c0, a, aug_matrix, 0)?;

    let top = complex.hi().max(0);
    let positions: Vec<i64> = (-1..=top).rev().collect();
    let strands = window
        .map(|d| {
            let mut dims: Vec<usize> = (0..=top).rev().map(|i| complex.piece(i, d).dim()).collect();
            dims.push(a.dim(d));
            let mut maps: Vec<Matrix> = (1..=top)
                .rev()
                .map(|i| complex.strand_differential(i, d))
                .collect();
            maps.push(augmentation.matrix_in_degree(d));
            StrandReport::from_maps(format!("degree {d}"), &positions, &dims, &maps)
        })
        .collect();
    let checked = (0..=n as i64)
        .flat_map(|j| (1..=n).map(move |q| (-j, q)))
        .collect();
    Ok(ResolutionCertificate {
        side: Side::Left,
        complex,
        augmentation,
        vanishing: table,
        checked,
        strands,
    })
}

/// The right resolution `0 → a → D_0 → … → D_{-n} → 0` of a free module,
/// with `D_{-p} = ⊕_χ S(p-n-|χ|) ⊗ H^n(…)`: the left resolution of
/// `N = Hom(a^#, T)(-n)` on the cover, dualized into `T(-n)` and restricted
/// to invariants. Requires the table to vanish below the top row. Strands
/// are exact only in degrees where `a` has no higher cohomology.
pub fn right_resolution(
    a: &GradedModule,
    window: RangeInclusive<i64>,
) -> Result<ResolutionCertificate> {
    let w = weighted_input(a)?;
    let n = w.n();
    let table = beilinson_e1(a, &E1Options::default())?;
    check_vanishing(&table, |q| q < n)?;
    if !a.polynomial_relations().is_empty() {
        return Err(Error::Unsupported(
            "right resolutions are built for free modules".into(),
        ));
    }
    let t = cover_algebra(&w);
    let sharp = pull_back(a, &t)?;
    let z = t.ring().group().zero();
    let dual_gens = sharp
        .gens()
        .iter()
        .map(|x| Generator::new(n as i64 - x.degree, z.clone()))
        .collect();
    let cover = cover_left(&GradedModule::free(&t, dual_gens))?;
    let d_cover = dual_complex(&cover.complex, t.ring(), n as i64, &z);
    let aug_cover = cover.augmentation.transpose();

    let s = a.ring();
    let complex = descend_complex(&w, s, &d_cover)?;
    let d0 = GradedModule::free(a.algebra(), complex.term(0).to_vec());
    let aug_matrix = descend_matrix(&w, t.ring(), &aug_cover, sharp.gens(), d_cover.term(0));
    let augmentation = GradedMap::new(a, &d0, aug_matrix, 0)?;

    let bottom = complex.lo().min(0);
    let positions: Vec<i64> = (bottom..=1).rev().collect();
    let strands = window
        .map(|d| {
            let mut dims = vec![a.dim(d)];
            dims.extend((bottom..=0).rev().map(|i| complex.piece(i, d).dim()));
            let mut maps = vec![augmentation.matrix_in_degree(d)];
            maps.extend(
                (bottom + 1..=0)
                    .rev()
                    .map(|i| complex.strand_differential(i, d)),
            );
            StrandReport::from_maps(format!("degree {d}"), &positions, &dims, &maps)
        })
        .collect();
    let checked = (0..=n as i64)
        .flat_map(|j| (0..n).map(move |q| (-j, q)))
        .collect();
    Ok(ResolutionCertificate {
        side: Side::Right,
        complex,
        augmentation,
        vanishing: table,
        checked,
        strands,
    })
}
