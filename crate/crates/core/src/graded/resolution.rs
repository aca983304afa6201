use std::collections::BTreeMap;

use num_traits::Zero;

use super::free::{strand_matrix, FreePiece, Generator, PolyMatrix};
use super::module::GradedModule;
use crate::algebra::{labeled_kernel, EchelonBasis, Matrix, Monomial, Poly, Rational, Ring};
use crate::complexes::FreeComplex;
use crate::error::{Error, Result};

/// Multiplies a vector of `(⊕ R(-g_j))_d` by the variable `x_v`.
fn mul_var(
    ring: &Ring,
    gens: &[Generator],
    src: &FreePiece,
    dst: &FreePiece,
    v: usize,
    x: &[Rational],
) -> Vec<Rational> {
    let xv = Monomial::var(ring.nvars(), v);
    let mut out = vec![Rational::zero(); dst.dim()];
    for (i, c) in x.iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let (j, m) = &src.elements[i];
        let idx = ring
            .basis(dst.degree - gens[*j].degree)
            .index_of(&m.mul(&xv))
            .expect("degree bookkeeping");
        out[dst.offsets[*j] + idx] = c.clone();
    }
    out
}

/// Minimal generators of a graded subspace family `K_d ⊂ (⊕ R(-g_j))_d`,
/// found degree by degree as complements of `Σ_v x_v K_{d - a_v}`.
struct SyzygyFinder<'a> {
    ring: &'a Ring,
    gens: &'a [Generator],
    kernels: BTreeMap<i64, (FreePiece, Vec<Vec<Rational>>)>,
}

impl<'a> SyzygyFinder<'a> {
    fn new(ring: &'a Ring, gens: &'a [Generator]) -> Self {
        SyzygyFinder {
            ring,
            gens,
            kernels: BTreeMap::new(),
        }
    }

    /// Records `K_d` and returns the new minimal generators in degree `d`.
    fn push(&mut self, piece: FreePiece, kernel: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
        let d = piece.degree;
        let mut span = EchelonBasis::untracked(piece.dim());
        for v in 0..self.ring.nvars() {
            let a = self.ring.weights().weight(v);
            if let Some((src, vecs)) = self.kernels.get(&(d - a)) {
                for x in vecs {
                    span.insert(&mul_var(self.ring, self.gens, src, &piece, v, x));
                }
            }
        }
        let mut fresh = Vec::new();
        for x in &kernel {
            if span.insert(x) {
                fresh.push(x.clone());
            }
        }
        self.kernels.insert(d, (piece, kernel));
        fresh
    }
}

fn label_of_vector(piece: &FreePiece, x: &[Rational]) -> crate::algebra::Character {
    let i = x.iter().position(|c| !c.is_zero()).expect("nonzero syzygy");
    piece.labels[i].clone()
}

/// Minimal graded free resolution `F_max_steps → … → F_1 → F_0 (→ M)`,
/// computed over the polynomial ring degree by degree up to
/// `degree_bound`. The result is exact in every degree `≤ degree_bound`
/// at each index below `max_steps`, and its degree-0 homology is `M`.
///
/// Fails with `BoundExhausted` when a generator appears within `σ` of the
/// bound (so syzygies among the top generators would fall outside the
/// window), or when the resolution over the polynomial ring does not stop
/// after `n+1` steps inside the window.
pub fn free_resolution(
    m: &GradedModule,
    max_steps: usize,
    degree_bound: i64,
) -> Result<FreeComplex> {
    let ring = m.ring().clone();
    let sigma = ring.weights().sigma();
    let nv = ring.nvars();
    let check_margin = |d: i64, what: &str| -> Result<()> {
        if d > degree_bound - sigma {
            return Err(Error::BoundExhausted {
                degree: degree_bound,
                message: format!(
                    "{what} in degree {d} leaves less than {sigma} degrees of room below the bound"
                ),
            });
        }
        Ok(())
    };

    // Minimal generators of M among the monomial multiples of its
    // presentation generators.
    let mut gen_degrees: Vec<i64> = m.gens().iter().map(|g| g.degree).collect();
    gen_degrees.sort_unstable();
    gen_degrees.dedup();
    let mut f0: Vec<Generator> = Vec::new();
    let mut images: Vec<Vec<Poly>> = Vec::new();
    for &d in &gen_degrees {
        if d > degree_bound {
            break;
        }
        let piece = m.piece(d);
        let mut span = EchelonBasis::untracked(piece.dim());
        for v in 0..nv {
            let xv = Poly::var(nv, v);
            let a = ring.weights().weight(v);
            let mm = m.mult_matrix(&xv, a, d - a)?;
            for c in 0..mm.cols() {
                span.insert(&mm.column(c));
            }
        }
        for i in 0..piece.dim() {
            let mut e = vec![Rational::zero(); piece.dim()];
            e[i] = Rational::from_integer(1.into());
            if span.insert(&e) {
                let (j, mono) = piece.element(i);
                let mut elem = vec![Poly::zero(nv); m.gens().len()];
                elem[*j] = Poly::monomial(mono.clone());
                f0.push(Generator::new(d, piece.label(i).clone()));
                images.push(elem);
            }
        }
    }
    if f0.is_empty() {
        return Ok(FreeComplex::zero(&ring));
    }
    for g in &f0 {
        check_margin(g.degree, "a generator of the module")?;
    }

    let lo_degree = f0.iter().map(|g| g.degree).min().expect("nonempty");
    let mut terms = vec![f0];
    let mut diffs: Vec<PolyMatrix> = Vec::new();

    // Kernel of F_0 → M in each degree.
    let augmentation = |d: i64, src: &FreePiece| -> Result<Matrix> {
        let piece = m.piece(d);
        let mut cols = Vec::with_capacity(src.dim());
        for (c, mono) in &src.elements {
            let elem: Vec<Poly> = images[*c].iter().map(|p| p.mul_monomial(mono)).collect();
            cols.push(m.coordinates(&elem, d)?);
        }
        Ok(Matrix::from_columns(piece.dim(), &cols))
    };

    for step in 0..max_steps {
        let current = terms.last().expect("at least F_0").clone();
        let mut finder = SyzygyFinder::new(&ring, &current);
        let mut next: Vec<Generator> = Vec::new();
        let mut columns: Vec<Vec<Poly>> = Vec::new();
        for d in lo_degree..=degree_bound {
            let src = FreePiece::new(&ring, &current, d);
            if src.dim() == 0 {
                finder.push(src, Vec::new());
                continue;
            }
            let map = if step == 0 {
                augmentation(d, &src)?
            } else {
                let prev = &terms[step - 1];
                let dst = FreePiece::new(&ring, prev, d);
                strand_matrix(&ring, &diffs[step - 1], &src, &dst, prev)
            };
            let kernel = labeled_kernel(&map, &src.labels).0;
            for x in finder.push(src.clone(), kernel) {
                next.push(Generator::new(d, label_of_vector(&src, &x)));
                columns.push(src.element(nv, current.len(), &x));
            }
        }
        if next.is_empty() {
            break;
        }
        if step + 1 > nv && m.algebra().is_polynomial() {
            return Err(Error::BoundExhausted {
                degree: degree_bound,
                message: format!(
                    "syzygies persist past step {} over a polynomial ring in {nv} variables",
                    step + 1
                ),
            });
        }
        for g in &next {
            check_margin(g.degree, &format!("a syzygy at step {}", step + 1))?;
        }
        diffs.push(PolyMatrix::from_columns(current.len(), nv, columns));
        terms.push(next);
    }
    Ok(FreeComplex::from_parts(&ring, 0, terms, diffs))
}

/// A full minimal free resolution, retrying with growing degree bounds
/// above the degrees of the presentation.
pub fn resolve(m: &GradedModule) -> Result<FreeComplex> {
    let steps = m.ring().nvars() + 1;
    let top = m
        .gens()
        .iter()
        .map(|g| g.degree)
        .chain(m.polynomial_relations().iter().map(|r| r.degree))
        .max()
        .unwrap_or(0);
    let mut last = None;
    for room in [8, 16, 32, 64] {
        match free_resolution(m, steps, top.max(0) + room) {
            Err(e @ Error::BoundExhausted { .. }) => last = Some(e),
            other => return other,
        }
    }
    Err(last.expect("at least one attempt"))
}
