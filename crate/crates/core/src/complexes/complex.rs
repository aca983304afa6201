use std::fmt;

use num_traits::Zero;

use crate::algebra::{Character, Matrix, Ring};
use crate::error::{Error, Result};
use crate::graded::{check_homogeneous, strand_matrix, FreePiece, Generator, PolyMatrix};

/// A bounded complex of graded free modules in homological indexing,
/// `d_i: F_i → F_{i-1}`. Entry `(r, c)` of `d_i` is homogeneous of degree
/// `g_c - h_r` where `g`, `h` are the generator degrees of `F_i`, `F_{i-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FreeComplex {
    ring: Ring,
    lo: i64,
    terms: Vec<Vec<Generator>>,
    diffs: Vec<PolyMatrix>,
}

/// Outcome of `check_complex`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ComplexVerdict {
    Pass,
    /// `d_{index-1} ∘ d_index` has a nonzero entry.
    NotSquareZero {
        index: i64,
        row: usize,
        col: usize,
        entry: String,
    },
    Inhomogeneous {
        index: i64,
        message: String,
    },
}

impl ComplexVerdict {
    pub fn passed(&self) -> bool {
        matches!(self, ComplexVerdict::Pass)
    }
}

impl FreeComplex {
    /// `terms[k]` is `F_{lo+k}`; `diffs[k]` is `d_{lo+k+1}`.
    pub fn new(
        ring: &Ring,
        lo: i64,
        terms: Vec<Vec<Generator>>,
        diffs: Vec<PolyMatrix>,
    ) -> Result<Self> {
        if diffs.len() + 1 != terms.len().max(1) {
            return Err(Error::DimensionMismatch(format!(
                "{} terms need {} differentials, got {}",
                terms.len(),
                terms.len().saturating_sub(1),
                diffs.len()
            )));
        }
        for (k, d) in diffs.iter().enumerate() {
            check_homogeneous(ring, d, &terms[k + 1], &terms[k]).map_err(|e| match e {
                Error::Inhomogeneous(m) => {
                    Error::Inhomogeneous(format!("differential d_{}: {m}", lo + k as i64 + 1))
                }
                other => other,
            })?;
        }
        Ok(FreeComplex::from_parts(ring, lo, terms, diffs))
    }

    /// Builds without validation; callers guarantee shapes and homogeneity.
    pub(crate) fn from_parts(
        ring: &Ring,
        lo: i64,
        terms: Vec<Vec<Generator>>,
        diffs: Vec<PolyMatrix>,
    ) -> Self {
        let mut c = FreeComplex {
            ring: ring.clone(),
            lo,
            terms,
            diffs,
        };
        c.trim();
        c
    }

    pub fn zero(ring: &Ring) -> Self {
        FreeComplex {
            ring: ring.clone(),
            lo: 0,
            terms: Vec::new(),
            diffs: Vec::new(),
        }
    }

    /// A single free module placed at homological index `i`.
    pub fn single(ring: &Ring, gens: Vec<Generator>, i: i64) -> Self {
        Self::from_parts(ring, i, vec![gens], Vec::new())
    }

    /// Two-term complex `F_{i+1} → F_i`.
    pub fn two_term(
        ring: &Ring,
        i: i64,
        src: Vec<Generator>,
        dst: Vec<Generator>,
        d: PolyMatrix,
    ) -> Result<Self> {
        Self::new(ring, i, vec![dst, src], vec![d])
    }

    /// Drops zero terms at both ends.
    fn trim(&mut self) {
        while self.terms.last().is_some_and(Vec::is_empty) {
            self.terms.pop();
            self.diffs.pop();
        }
        while self.terms.first().is_some_and(Vec::is_empty) {
            self.terms.remove(0);
            if !self.diffs.is_empty() {
                self.diffs.remove(0);
            }
            self.lo += 1;
        }
        if self.terms.is_empty() {
            self.lo = 0;
            self.diffs.clear();
        }
    }

    pub fn ring(&self) -> &Ring {
        &self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Lowest index with a nonzero term (0 for the zero complex).
    pub fn lo(&self) -> i64 {
        self.lo
    }

    /// Highest index with a nonzero term (-1 for the zero complex).
    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn indices(&self) -> std::ops::RangeInclusive<i64> {
        self.lo()..=self.hi()
    }

    pub fn term(&self, i: i64) -> &[Generator] {
        if i < self.lo || i > self.hi() {
            return &[];
        }
        &self.terms[(i - self.lo) as usize]
    }

    pub fn rank(&self, i: i64) -> usize {
        self.term(i).len()
    }

    /// `d_i: F_i → F_{i-1}` (a zero matrix of the right shape when absent).
    pub fn differential(&self, i: i64) -> PolyMatrix {
        if i > self.lo && i <= self.hi() {
            return self.diffs[(i - self.lo - 1) as usize].clone();
        }
        PolyMatrix::zeros(self.rank(i - 1), self.rank(i), self.ring.nvars())
    }

    pub fn twists(&self, i: i64) -> Vec<i64> {
        self.term(i).iter().map(|g| g.degree).collect()
    }

    /// Extreme generator degrees over all terms, if any.
    pub fn degree_range(&self) -> Option<(i64, i64)> {
        let mut it = self.terms.iter().flatten().map(|g| g.degree);
        let first = it.next()?;
        Some(it.fold((first, first), |(a, b), x| (a.min(x), b.max(x))))
    }

    /// `F[r]` with `F[r]_i = F_{i-r}` and differential `(-1)^r d`.
    pub fn shift(&self, r: i64) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let diffs = if r.rem_euclid(2) == 1 {
            self.diffs.iter().map(PolyMatrix::neg).collect()
        } else {
            self.diffs.clone()
        };
        FreeComplex {
            ring: self.ring.clone(),
            lo: self.lo + r,
            terms: self.terms.clone(),
            diffs,
        }
    }

    /// Internal twist `F(j)`: every generator degree decreases by `j`.
    pub fn twist(&self, j: i64) -> Self {
        let terms = self
            .terms
            .iter()
            .map(|t| {
                t.iter()
                    .map(|g| Generator::new(g.degree - j, g.label.clone()))
                    .collect()
            })
            .collect();
        FreeComplex {
            terms,
            ..self.clone()
        }
    }

    pub fn direct_sum(&self, other: &FreeComplex) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let lo = self.lo.min(other.lo);
        let hi = self.hi().max(other.hi());
        let nv = self.ring.nvars();
        let terms = (lo..=hi)
            .map(|i| [self.term(i), other.term(i)].concat())
            .collect();
        let diffs = (lo + 1..=hi)
            .map(|i| {
                let a = self.differential(i);
                let b = other.differential(i);
                PolyMatrix::blocks(
                    &a,
                    &PolyMatrix::zeros(a.rows(), b.cols(), nv),
                    &PolyMatrix::zeros(b.rows(), a.cols(), nv),
                    &b,
                )
            })
            .collect();
        Self::from_parts(&self.ring, lo, terms, diffs)
    }

    /// Degree-`d` piece of `F_i`.
    pub fn piece(&self, i: i64, d: i64) -> FreePiece {
        FreePiece::new(&self.ring, self.term(i), d)
    }

    /// `d_i` restricted to internal degree `d`.
    pub fn strand_differential(&self, i: i64, d: i64) -> Matrix {
        let src = self.piece(i, d);
        let dst = self.piece(i - 1, d);
        strand_matrix(
            &self.ring,
            &self.differential(i),
            &src,
            &dst,
            self.term(i - 1),
        )
    }

    /// `d_i` in degree `d`, restricted to basis elements of character `chi`.
    pub fn strand_differential_of_label(&self, i: i64, d: i64, chi: &Character) -> Matrix {
        let src = self.piece(i, d);
        let dst = self.piece(i - 1, d);
        let full = strand_matrix(
            &self.ring,
            &self.differential(i),
            &src,
            &dst,
            self.term(i - 1),
        );
        restrict(
            &full,
            &dst.indices_of_label(chi),
            &src.indices_of_label(chi),
        )
    }

    /// `dim H_i` of the degree-`d` strand.
    pub fn homology_strand(&self, i: i64, d: i64) -> usize {
        let dim = self.piece(i, d).dim();
        if dim == 0 {
            return 0;
        }
        dim - self.strand_differential(i, d).rank() - self.strand_differential(i + 1, d).rank()
    }

    /// `dim H_i` of the degree-`d`, character-`chi` strand.
    pub fn homology_strand_of_label(&self, i: i64, d: i64, chi: &Character) -> usize {
        let dim = self.piece(i, d).indices_of_label(chi).len();
        if dim == 0 {
            return 0;
        }
        dim - self.strand_differential_of_label(i, d, chi).rank()
            - self.strand_differential_of_label(i + 1, d, chi).rank()
    }

    /// `Σ_i (-1)^i dim (F_i)_d`.
    pub fn euler_strand(&self, d: i64) -> i64 {
        self.indices()
            .map(|i| {
                let s = if i.rem_euclid(2) == 0 { 1 } else { -1 };
                s * self.piece(i, d).dim() as i64
            })
            .sum()
    }

    /// Largest index `i` with `F_i ≠ 0`, minus the smallest.
    pub fn length(&self) -> usize {
        self.terms.len().saturating_sub(1)
    }
}

pub(crate) fn restrict(m: &Matrix, rows: &[usize], cols: &[usize]) -> Matrix {
    let mut out = Matrix::zeros(rows.len(), cols.len());
    for (a, &r) in rows.iter().enumerate() {
        for (b, &c) in cols.iter().enumerate() {
            let x = m.get(r, c);
            if !x.is_zero() {
                out.set(a, b, x.clone());
            }
        }
    }
    out
}

impl fmt::Display for FreeComplex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return writeln!(f, "0");
        }
        for i in self.indices().rev() {
            let tw: Vec<String> = self
                .twists(i)
                .iter()
                .map(|g| format!("S({})", -g))
                .collect();
            writeln!(f, "F_{i}: {}", tw.join(" + "))?;
        }
        Ok(())
    }
}

/// Verifies homogeneity and `d ∘ d = 0`, reporting the first offending
/// entry.
pub fn check_complex(c: &FreeComplex) -> ComplexVerdict {
    for i in c.lo() + 1..=c.hi() {
        if let Err(e) = check_homogeneous(c.ring(), &c.differential(i), c.term(i), c.term(i - 1)) {
            return ComplexVerdict::Inhomogeneous {
                index: i,
                message: e.to_string(),
            };
        }
    }
    for i in c.lo() + 2..=c.hi() {
        let sq = c.differential(i - 1).mul(&c.differential(i));
        if let Some((row, col)) = sq.first_nonzero() {
            return ComplexVerdict::NotSquareZero {
                index: i,
                row,
                col,
                entry: sq.get(row, col).to_string(),
            };
        }
    }
    ComplexVerdict::Pass
}

/// Per-index matrices `f_i: F_i → G_i` commuting with the differentials.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainMap {
    source: FreeComplex,
    target: FreeComplex,
    maps: Vec<(i64, PolyMatrix)>,
}

impl ChainMap {
    /// `maps` lists `(i, f_i)`; missing indices are zero.
    pub fn new(
        source: &FreeComplex,
        target: &FreeComplex,
        maps: Vec<(i64, PolyMatrix)>,
    ) -> Result<Self> {
        let f = ChainMap {
            source: source.clone(),
            target: target.clone(),
            maps,
        };
        f.validate()?;
        Ok(f)
    }

    pub(crate) fn new_unchecked(
        source: &FreeComplex,
        target: &FreeComplex,
        maps: Vec<(i64, PolyMatrix)>,
    ) -> Self {
        ChainMap {
            source: source.clone(),
            target: target.clone(),
            maps,
        }
    }

    pub fn identity(c: &FreeComplex) -> Self {
        let nv = c.ring().nvars();
        let maps = c
            .indices()
            .map(|i| (i, PolyMatrix::identity(c.rank(i), nv)))
            .collect();
        ChainMap::new_unchecked(c, c, maps)
    }

    pub fn zero(source: &FreeComplex, target: &FreeComplex) -> Self {
        ChainMap::new_unchecked(source, target, Vec::new())
    }

    pub fn source(&self) -> &FreeComplex {
        &self.source
    }

    pub fn target(&self) -> &FreeComplex {
        &self.target
    }

    pub fn component(&self, i: i64) -> PolyMatrix {
        self.maps
            .iter()
            .find(|(j, _)| *j == i)
            .map(|(_, m)| m.clone())
            .unwrap_or_else(|| {
                PolyMatrix::zeros(
                    self.target.rank(i),
                    self.source.rank(i),
                    self.source.ring().nvars(),
                )
            })
    }

    fn validate(&self) -> Result<()> {
        for (i, m) in &self.maps {
            check_homogeneous(
                self.source.ring(),
                m,
                self.source.term(*i),
                self.target.term(*i),
            )
            .map_err(|e| Error::InvalidChainMap(format!("component {i}: {e}")))?;
        }
        let lo = self.source.lo().min(self.target.lo());
        let hi = self.source.hi().max(self.target.hi()) + 1;
        for i in lo..=hi {
            let lhs = self.target.differential(i).mul(&self.component(i));
            let rhs = self.component(i - 1).mul(&self.source.differential(i));
            let diff = lhs.add(&rhs.neg());
            if let Some((r, c)) = diff.first_nonzero() {
                return Err(Error::InvalidChainMap(format!(
                    "d f - f d is nonzero at index {i}, entry ({r},{c}) = {}",
                    diff.get(r, c)
                )));
            }
        }
        Ok(())
    }

    /// `f` in degree `d` at index `i`.
    pub fn strand_matrix(&self, i: i64, d: i64) -> Matrix {
        let src = self.source.piece(i, d);
        let dst = self.target.piece(i, d);
        strand_matrix(
            self.source.ring(),
            &self.component(i),
            &src,
            &dst,
            self.target.term(i),
        )
    }
}

/// `cone(f)_i = F_{i-1} ⊕ G_i` with `d = [[-d_F, 0], [f, d_G]]`.
pub fn cone(f: &ChainMap) -> Result<FreeComplex> {
    f.validate()?;
    let s = f.source();
    let t = f.target();
    let ring = s.ring();
    let nv = ring.nvars();
    if s.is_zero() {
        return Ok(t.clone());
    }
    if t.is_zero() {
        return Ok(s.shift(1));
    }
    let lo = (s.lo() + 1).min(t.lo());
    let hi = (s.hi() + 1).max(t.hi());
    let terms: Vec<Vec<Generator>> = (lo..=hi)
        .map(|i| [s.term(i - 1), t.term(i)].concat())
        .collect();
    let diffs = (lo + 1..=hi)
        .map(|i| {
            let ds = s.differential(i - 1).neg();
            let dt = t.differential(i);
            let fi = f.component(i - 1);
            PolyMatrix::blocks(&ds, &PolyMatrix::zeros(ds.rows(), dt.cols(), nv), &fi, &dt)
        })
        .collect();
    Ok(FreeComplex::from_parts(ring, lo, terms, diffs))
}
