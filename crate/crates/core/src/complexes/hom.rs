use std::collections::HashMap;
use std::sync::Arc;

use super::complex::FreeComplex;
use crate::algebra::{Matrix, MonomialBasis, Rational};
use crate::error::{Error, Result};

struct HomBlock {
    offset: usize,
    basis: Arc<MonomialBasis>,
    /// Position inside the block of each basis monomial of allowed label.
    slot: Vec<Option<usize>>,
}

/// The degree-`n` term `Π_i Hom(F_i, G_{i-n})` of the Hom complex in
/// internal degree `d`: maps `S(-g) → S(-h)(d)` are polynomials of degree
/// `g - h + d`, and on an equivariant ring only the invariant ones count.
struct HomSpace {
    dim: usize,
    blocks: HashMap<(i64, usize, usize), HomBlock>,
}

impl HomSpace {
    fn new(f: &FreeComplex, g: &FreeComplex, n: i64, d: i64) -> Self {
        let ring = f.ring();
        let grp = ring.group();
        let mut dim = 0;
        let mut blocks = HashMap::new();
        for i in f.indices() {
            let tgt = g.term(i - n);
            for (c, gc) in f.term(i).iter().enumerate() {
                for (r, hr) in tgt.iter().enumerate() {
                    let basis = ring.basis(gc.degree - hr.degree + d);
                    let want = grp.sub(&hr.label, &gc.label);
                    let mut slot = vec![None; basis.len()];
                    let mut k = 0;
                    for (s, x) in slot.iter_mut().enumerate() {
                        if *basis.label(s) == want {
                            *x = Some(k);
                            k += 1;
                        }
                    }
                    if k > 0 {
                        blocks.insert(
                            (i, c, r),
                            HomBlock {
                                offset: dim,
                                basis,
                                slot,
                            },
                        );
                        dim += k;
                    }
                }
            }
        }
        HomSpace { dim, blocks }
    }
}

/// Matrix of the Hom-complex differential
/// `D φ = d_G φ - (-1)^n φ d_F` from degree `n` to degree `n+1`.
fn hom_differential(
    f: &FreeComplex,
    g: &FreeComplex,
    n: i64,
    src: &HomSpace,
    dst: &HomSpace,
) -> Matrix {
    let mut out = Matrix::zeros(dst.dim, src.dim);
    let sign = if n.rem_euclid(2) == 0 { -1 } else { 1 };
    let sign = Rational::from_integer(sign.into());
    for (&(i, c, r), blk) in &src.blocks {
        for (s, pos) in blk.slot.iter().enumerate() {
            let Some(pos) = pos else { continue };
            let col = blk.offset + pos;
            let m = blk.basis.get(s);
            // d_G ∘ φ: component (i, c, r') with d_G[r', r] · m
            let dg = g.differential(i - n);
            for r2 in 0..dg.rows() {
                let p = dg.get(r2, r);
                if p.is_zero() {
                    continue;
                }
                let tb = &dst.blocks[&(i, c, r2)];
                for (t, coef) in p.terms() {
                    let idx = tb.basis.index_of(&m.mul(t)).expect("degree bookkeeping");
                    let k = tb.slot[idx].expect("labels are preserved");
                    out.add_to(tb.offset + k, col, coef);
                }
            }
            // -(-1)^n φ ∘ d_F: component (i+1, c', r) with m · d_F[c, c']
            let df = f.differential(i + 1);
            for c2 in 0..df.cols() {
                let p = df.get(c, c2);
                if p.is_zero() {
                    continue;
                }
                let tb = &dst.blocks[&(i + 1, c2, r)];
                for (t, coef) in p.terms() {
                    let idx = tb.basis.index_of(&m.mul(t)).expect("degree bookkeeping");
                    let k = tb.slot[idx].expect("labels are preserved");
                    out.add_to(tb.offset + k, col, &(coef * &sign));
                }
            }
        }
    }
    out
}

/// `dim Hom_D(F, G(d)[r])`: the degree-`r` cohomology of the internal
/// degree-`d` Hom complex between bounded complexes of free modules.
pub fn hom_derived_in_degree(f: &FreeComplex, g: &FreeComplex, r: i64, d: i64) -> Result<usize> {
    if f.ring() != g.ring() {
        return Err(Error::DimensionMismatch(
            "complexes over different rings".into(),
        ));
    }
    let here = HomSpace::new(f, g, r, d);
    if here.dim == 0 {
        return Ok(0);
    }
    let prev = HomSpace::new(f, g, r - 1, d);
    let next = HomSpace::new(f, g, r + 1, d);
    let out_rank = hom_differential(f, g, r, &here, &next).rank();
    let in_rank = if prev.dim == 0 {
        0
    } else {
        hom_differential(f, g, r - 1, &prev, &here).rank()
    };
    Ok(here.dim - out_rank - in_rank)
}

/// `dim Hom_D(F, G[r])` in internal degree zero.
pub fn hom_derived(f: &FreeComplex, g: &FreeComplex, r: i64) -> Result<usize> {
    hom_derived_in_degree(f, g, r, 0)
}
