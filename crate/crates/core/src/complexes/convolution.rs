use std::collections::BTreeMap;

use serde::Serialize;

use super::complex::{cone, ChainMap, FreeComplex};
use super::hom::hom_derived;
use crate::error::{Error, Result};
use crate::graded::{Generator, PolyMatrix};

/// A strict complex of complexes `a_m → … → a_1 → a_0`: `maps[p-1]` is
/// the chain map `d_p: a_p → a_{p-1}`.
#[derive(Clone, Debug)]
pub struct ComplexOfComplexes {
    objects: Vec<FreeComplex>,
    maps: Vec<ChainMap>,
}

impl ComplexOfComplexes {
    pub fn new(objects: Vec<FreeComplex>, maps: Vec<ChainMap>) -> Result<Self> {
        if objects.is_empty() {
            return Err(Error::NotAComplexOfComplexes("no objects".into()));
        }
        if maps.len() + 1 != objects.len() {
            return Err(Error::NotAComplexOfComplexes(format!(
                "{} objects need {} maps, got {}",
                objects.len(),
                objects.len() - 1,
                maps.len()
            )));
        }
        for (k, f) in maps.iter().enumerate() {
            let p = k + 1;
            if f.source() != &objects[p] || f.target() != &objects[p - 1] {
                return Err(Error::NotAComplexOfComplexes(format!(
                    "d_{p} does not run from a_{p} to a_{}",
                    p - 1
                )));
            }
        }
        for p in 2..objects.len() {
            let (lo, hi) = span(&objects[p]);
            for i in lo..=hi {
                let prod = maps[p - 2].component(i).mul(&maps[p - 1].component(i));
                if !prod.is_zero() {
                    return Err(Error::NotAComplexOfComplexes(format!(
                        "d_{} d_{p} is nonzero at index {i}",
                        p - 1
                    )));
                }
            }
        }
        Ok(ComplexOfComplexes { objects, maps })
    }

    /// Largest position `m`.
    pub fn top(&self) -> usize {
        self.objects.len() - 1
    }

    pub fn object(&self, p: usize) -> &FreeComplex {
        &self.objects[p]
    }

    pub fn map(&self, p: usize) -> &ChainMap {
        &self.maps[p - 1]
    }

    /// Replaces `a_p`, `a_{p-1}` by `cone(d_p)` at position `p-1`; the
    /// objects above move down one position and are shifted by `[1]`.
    pub fn merge(&self, p: usize) -> Result<ComplexOfComplexes> {
        assert!(p >= 1 && p <= self.top(), "merge position out of range");
        let dp = self.map(p);
        let c = cone(dp)?;
        let src = self.object(p);
        let dst = self.object(p - 1);
        let nv = c.ring().nvars();
        let mut objects: Vec<FreeComplex> = self.objects[..p - 1].to_vec();
        let mut maps: Vec<ChainMap> = self.maps[..p.saturating_sub(2)].to_vec();
        objects.push(c.clone());
        if p >= 2 {
            // (u, v) ↦ d_{p-1} v
            let below = self.object(p - 2);
            let dm = self.map(p - 1);
            let comps = c
                .indices()
                .map(|i| {
                    let f = dm.component(i);
                    let zero = PolyMatrix::zeros(f.rows(), src.rank(i - 1), nv);
                    (i, hstack(&zero, &f))
                })
                .collect();
            maps.push(ChainMap::new(&c, below, comps)?);
        }
        if p < self.top() {
            // x ↦ (d_{p+1} x, 0)
            let above = self.object(p + 1).shift(1);
            let du = self.map(p + 1);
            let comps = above
                .indices()
                .map(|i| {
                    let f = du.component(i - 1);
                    let zero = PolyMatrix::zeros(dst.rank(i), f.cols(), nv);
                    (i, vstack(&f, &zero))
                })
                .collect();
            maps.push(ChainMap::new(&above, &c, comps)?);
            objects.push(above);
            for q in p + 2..=self.top() {
                let s = self.object(q).shift(1);
                let t = objects.last().expect("pushed above").clone();
                let f = self.map(q);
                let comps = s.indices().map(|i| (i, f.component(i - 1))).collect();
                maps.push(ChainMap::new(&s, &t, comps)?);
                objects.push(s);
            }
        }
        ComplexOfComplexes::new(objects, maps)
    }
}

fn span(c: &FreeComplex) -> (i64, i64) {
    (c.lo() - 1, c.hi() + 1)
}

fn hstack(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let nv = a.nvars();
    let mut out = PolyMatrix::zeros(a.rows(), a.cols() + b.cols(), nv);
    for r in 0..a.rows() {
        for c in 0..a.cols() {
            out.set(r, c, a.get(r, c).clone());
        }
        for c in 0..b.cols() {
            out.set(r, a.cols() + c, b.get(r, c).clone());
        }
    }
    out
}

fn vstack(a: &PolyMatrix, b: &PolyMatrix) -> PolyMatrix {
    let nv = a.nvars();
    let mut out = PolyMatrix::zeros(a.rows() + b.rows(), a.cols(), nv);
    for c in 0..a.cols() {
        for r in 0..a.rows() {
            out.set(r, c, a.get(r, c).clone());
        }
        for r in 0..b.rows() {
            out.set(a.rows() + r, c, b.get(r, c).clone());
        }
    }
    out
}

/// `⊕_p a_p[p]` with differential `d_int + (-1)^p d_p` on the `a_p[p]`
/// summand, where `d_int` is the differential of `a_p[p]`.
pub fn totalization(seq: &ComplexOfComplexes) -> FreeComplex {
    let ring = seq.object(0).ring().clone();
    let nv = ring.nvars();
    let shifted: Vec<FreeComplex> = (0..=seq.top())
        .map(|p| seq.object(p).shift(p as i64))
        .collect();
    let nonzero: Vec<&FreeComplex> = shifted.iter().filter(|c| !c.is_zero()).collect();
    if nonzero.is_empty() {
        return FreeComplex::zero(&ring);
    }
    let lo = nonzero.iter().map(|c| c.lo()).min().expect("nonempty");
    let hi = nonzero.iter().map(|c| c.hi()).max().expect("nonempty");
    // offsets of each summand inside each total term
    let mut offsets: BTreeMap<(i64, usize), usize> = BTreeMap::new();
    let mut terms: Vec<Vec<Generator>> = Vec::new();
    for i in lo..=hi {
        let mut t = Vec::new();
        for (p, c) in shifted.iter().enumerate() {
            offsets.insert((i, p), t.len());
            t.extend_from_slice(c.term(i));
        }
        terms.push(t);
    }
    let mut diffs = Vec::new();
    for i in lo + 1..=hi {
        let rows = terms[(i - 1 - lo) as usize].len();
        let cols = terms[(i - lo) as usize].len();
        let mut d = PolyMatrix::zeros(rows, cols, nv);
        for (p, c) in shifted.iter().enumerate() {
            let sign = p % 2 == 0;
            let co = offsets[&(i, p)];
            let di = c.differential(i);
            let ro = offsets[&(i - 1, p)];
            for r in 0..di.rows() {
                for cc in 0..di.cols() {
                    let e = di.get(r, cc);
                    if !e.is_zero() {
                        d.set(ro + r, co + cc, e.clone());
                    }
                }
            }
            if p == 0 {
                continue;
            }
            // d_p: (a_p)_{i-p} → (a_{p-1})_{i-p}, the latter sitting in total degree i-1
            let f = seq.map(p).component(i - p as i64);
            let ro = offsets[&(i - 1, p - 1)];
            for r in 0..f.rows() {
                for cc in 0..f.cols() {
                    let e = f.get(r, cc);
                    if !e.is_zero() {
                        d.set(ro + r, co + cc, if sign { e.clone() } else { e.neg() });
                    }
                }
            }
        }
        diffs.push(d);
    }
    FreeComplex::from_parts(&ring, lo, terms, diffs)
}

/// `dim Hom_D(a_p[r], a_q)` for a pair `p > q` and shift `r`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisEntry {
    pub p: usize,
    pub q: usize,
    pub r: i64,
    pub dim: usize,
}

/// The table behind the convolution hypothesis
/// `Hom(a_p[r], a_q) = 0` for `p > q`, `r > 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HypothesisReport {
    pub r_max: i64,
    pub entries: Vec<HypothesisEntry>,
}

impl HypothesisReport {
    pub fn holds(&self) -> bool {
        self.entries.iter().all(|e| e.dim == 0)
    }

    pub fn violations(&self) -> Vec<&HypothesisEntry> {
        self.entries.iter().filter(|e| e.dim > 0).collect()
    }
}

pub fn hypothesis_report(seq: &ComplexOfComplexes, r_max: i64) -> Result<HypothesisReport> {
    let mut entries = Vec::new();
    for p in 1..=seq.top() {
        for q in 0..p {
            for r in 1..=r_max {
                // Hom(a_p[r], a_q) = Hom(a_p, a_q[-r])
                let dim = hom_derived(seq.object(p), seq.object(q), -r)?;
                entries.push(HypothesisEntry { p, q, r, dim });
            }
        }
    }
    Ok(HypothesisReport { r_max, entries })
}

/// Default shift range: number of objects plus `n + 1`.
pub fn default_r_max(seq: &ComplexOfComplexes) -> i64 {
    let nvars = seq.object(0).ring().nvars() as i64;
    seq.objects.len() as i64 + nvars
}

/// Result of a convolution with the intermediate objects of the inductive
/// construction.
#[derive(Clone, Debug)]
pub struct ConvolutionTrace {
    pub result: FreeComplex,
    /// Right convolution: `a_0 → a`; left convolution: `a → a_m`.
    pub morphism: ChainMap,
    pub intermediates: Vec<FreeComplex>,
    pub hypothesis: HypothesisReport,
}

/// Right convolution: repeatedly replace the top two objects by the cone of
/// the map between them.
pub fn right_convolution(seq: &ComplexOfComplexes, r_max: Option<i64>) -> Result<ConvolutionTrace> {
    let hypothesis = hypothesis_report(seq, r_max.unwrap_or_else(|| default_r_max(seq)))?;
    let a0 = seq.object(0).clone();
    let mut cur = seq.clone();
    let mut intermediates = Vec::new();
    while cur.top() > 0 {
        cur = cur.merge(cur.top())?;
        intermediates.push(cur.object(cur.top()).clone());
    }
    let result = cur.object(0).clone();
    let nv = result.ring().nvars();
    // a_0 is the last summand of every cone built on top of it
    let comps = a0
        .indices()
        .map(|i| {
            let lead = result.rank(i) - a0.rank(i);
            let zero = PolyMatrix::zeros(lead, a0.rank(i), nv);
            (i, vstack(&zero, &PolyMatrix::identity(a0.rank(i), nv)))
        })
        .collect();
    let morphism = ChainMap::new(&a0, &result, comps)?;
    Ok(ConvolutionTrace {
        result,
        morphism,
        intermediates,
        hypothesis,
    })
}

/// Left convolution: repeatedly replace the bottom two objects by the
/// shifted cone `cone(d_1)[-1]`; the result carries `a_m` in degree 0 in the
/// sheaf case.
pub fn left_convolution(seq: &ComplexOfComplexes, r_max: Option<i64>) -> Result<ConvolutionTrace> {
    let hypothesis = hypothesis_report(seq, r_max.unwrap_or_else(|| default_r_max(seq)))?;
    let m = seq.top() as i64;
    let am = seq.object(seq.top()).clone();
    let mut cur = seq.clone();
    let mut intermediates = Vec::new();
    let mut k = 0;
    while cur.top() > 0 {
        cur = cur.merge(1)?;
        k += 1;
        intermediates.push(cur.object(0).shift(-k));
    }
    let result = cur.object(0).shift(-m);
    let nv = result.ring().nvars();
    // the first summand of the final cone is a_m[m-1][1]; shifted back by
    // [-m] it is a_m itself
    let comps = am
        .indices()
        .map(|i| {
            let rest = result.rank(i) - am.rank(i);
            let zero = PolyMatrix::zeros(am.rank(i), rest, nv);
            (i, hstack(&PolyMatrix::identity(am.rank(i), nv), &zero))
        })
        .collect();
    let morphism = if m == 0 {
        ChainMap::identity(&am)
    } else {
        ChainMap::new(&result, &am, comps)?
    };
    Ok(ConvolutionTrace {
        result,
        morphism,
        intermediates,
        hypothesis,
    })
}

/// Convolution along an arbitrary bracketing: `order[k]` is the merge
/// position used at step `k` (each must be a valid position of the current
/// sequence). The final object is returned.
pub fn convolve_in_order(seq: &ComplexOfComplexes, order: &[usize]) -> Result<FreeComplex> {
    let mut cur = seq.clone();
    for &p in order {
        if p == 0 || p > cur.top() {
            return Err(Error::NotAComplexOfComplexes(format!(
                "merge position {p} outside 1..={}",
                cur.top()
            )));
        }
        cur = cur.merge(p)?;
    }
    if cur.top() != 0 {
        return Err(Error::NotAComplexOfComplexes(format!(
            "bracketing leaves {} objects",
            cur.top() + 1
        )));
    }
    Ok(cur.object(0).clone())
}

/// All merge orders for a sequence with top position `m`.
pub fn all_bracketings(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in 1..=m {
        for rest in all_bracketings(m - 1) {
            let mut v = vec![p];
            v.extend(rest);
            out.push(v);
        }
    }
    out
}
