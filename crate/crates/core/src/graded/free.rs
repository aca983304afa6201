//! Graded free modules over a labeled ring and polynomial matrices between
//! them, with their degreewise linear strands.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::algebra::{Character, Matrix, Monomial, Poly, Rational, Ring};
use crate::error::{Error, Result};

/// A generator of a free module: `S(-degree)` twisted by a character label.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Generator {
    pub degree: i64,
    pub label: Character,
}

impl Generator {
    pub fn new(degree: i64, label: Character) -> Self {
        Generator { degree, label }
    }
}

/// Dense matrix of polynomials; entry `(r, c)` is the coefficient of target
/// generator `r` in the image of source generator `c`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    rows: usize,
    cols: usize,
    nvars: usize,
    entries: Vec<Poly>,
}

impl PolyMatrix {
    pub fn zeros(rows: usize, cols: usize, nvars: usize) -> Self {
        PolyMatrix {
            rows,
            cols,
            nvars,
            entries: vec![Poly::zero(nvars); rows * cols],
        }
    }

    pub fn identity(n: usize, nvars: usize) -> Self {
        let mut m = Self::zeros(n, n, nvars);
        for i in 0..n {
            m.set(i, i, Poly::one(nvars));
        }
        m
    }

    /// Builds from columns, each of length `rows`.
    pub fn from_columns(rows: usize, nvars: usize, cols: Vec<Vec<Poly>>) -> Self {
        let mut m = Self::zeros(rows, cols.len(), nvars);
        for (c, col) in cols.into_iter().enumerate() {
            assert_eq!(col.len(), rows, "column length");
            for (r, p) in col.into_iter().enumerate() {
                m.set(r, c, p);
            }
        }
        m
    }

    pub fn from_rows(nvars: usize, rows: Vec<Vec<Poly>>) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols, nvars);
        for (r, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged rows");
            for (c, p) in row.into_iter().enumerate() {
                m.set(r, c, p);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, r: usize, c: usize) -> &Poly {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, p: Poly) {
        self.entries[r * self.cols + c] = p;
    }

    pub fn column(&self, c: usize) -> Vec<Poly> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Poly::is_zero)
    }

    pub fn mul(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!(self.cols, other.rows, "matrix shapes");
        let mut out = PolyMatrix::zeros(self.rows, other.cols, self.nvars);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        let v = out.get(i, j).add(&a.mul(b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, other: &PolyMatrix) -> PolyMatrix {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        PolyMatrix {
            rows: self.rows,
            cols: self.cols,
            nvars: self.nvars,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, c: &Rational) -> PolyMatrix {
        PolyMatrix {
            entries: self.entries.iter().map(|p| p.scale(c)).collect(),
            ..self.clone()
        }
    }

    pub fn neg(&self) -> PolyMatrix {
        PolyMatrix {
            entries: self.entries.iter().map(Poly::neg).collect(),
            ..self.clone()
        }
    }

    pub fn transpose(&self) -> PolyMatrix {
        let mut out = PolyMatrix::zeros(self.cols, self.rows, self.nvars);
        for r in 0..self.rows {
            for c in 0..self.cols {
                out.set(c, r, self.get(r, c).clone());
            }
        }
        out
    }

    /// Block matrix `[[a, b], [c, d]]`.
    pub fn blocks(a: &PolyMatrix, b: &PolyMatrix, c: &PolyMatrix, d: &PolyMatrix) -> PolyMatrix {
        assert_eq!(a.rows, b.rows);
        assert_eq!(c.rows, d.rows);
        assert_eq!(a.cols, c.cols);
        assert_eq!(b.cols, d.cols);
        let mut out = PolyMatrix::zeros(a.rows + c.rows, a.cols + b.cols, a.nvars);
        for (m, r0, c0) in [
            (a, 0, 0),
            (b, 0, a.cols),
            (c, a.rows, 0),
            (d, a.rows, a.cols),
        ] {
            for r in 0..m.rows {
                for cc in 0..m.cols {
                    out.set(r0 + r, c0 + cc, m.get(r, cc).clone());
                }
            }
        }
        out
    }

    /// First nonzero entry, if any.
    pub fn first_nonzero(&self) -> Option<(usize, usize)> {
        self.entries
            .iter()
            .position(|p| !p.is_zero())
            .map(|i| (i / self.cols, i % self.cols))
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self.get(r, c).to_string()).collect();
            writeln!(f, "[{}]", row.join(", "))?;
        }
        Ok(())
    }
}

/// The degree-`d` piece of `⊕_j R(-g_j)`: concatenated monomial bases of
/// `R_{d - g_j}`.
#[derive(Clone, Debug)]
pub struct FreePiece {
    pub degree: i64,
    pub offsets: Vec<usize>,
    pub elements: Vec<(usize, Monomial)>,
    pub labels: Vec<Character>,
}

impl FreePiece {
    pub fn new(ring: &Ring, gens: &[Generator], d: i64) -> Self {
        let g = ring.group();
        let mut offsets = Vec::with_capacity(gens.len());
        let mut elements = Vec::new();
        let mut labels = Vec::new();
        for (j, gen) in gens.iter().enumerate() {
            offsets.push(elements.len());
            let b = ring.basis(d - gen.degree);
            for (i, m) in b.monomials().iter().enumerate() {
                elements.push((j, m.clone()));
                labels.push(g.add(b.label(i), &gen.label));
            }
        }
        FreePiece {
            degree: d,
            offsets,
            elements,
            labels,
        }
    }

    pub fn dim(&self) -> usize {
        self.elements.len()
    }

    /// Indices of the basis elements carrying label `chi`.
    pub fn indices_of_label(&self, chi: &Character) -> Vec<usize> {
        (0..self.dim())
            .filter(|&i| &self.labels[i] == chi)
            .collect()
    }

    /// Coordinates of an element given as one polynomial per generator.
    pub fn coordinates(
        &self,
        ring: &Ring,
        gens: &[Generator],
        elem: &[Poly],
    ) -> Result<Vec<Rational>> {
        let mut v = vec![Rational::zero(); self.dim()];
        for (j, p) in elem.iter().enumerate() {
            if p.is_zero() {
                continue;
            }
            let b = ring.basis(self.degree - gens[j].degree);
            for (m, c) in p.terms() {
                let i = b.index_of(m).ok_or_else(|| {
                    Error::Inhomogeneous(format!(
                        "component {j} = {p} is not of degree {}",
                        self.degree - gens[j].degree
                    ))
                })?;
                v[self.offsets[j] + i] += c;
            }
        }
        Ok(v)
    }

    /// Inverse of `coordinates`.
    pub fn element(&self, nvars: usize, ngens: usize, v: &[Rational]) -> Vec<Poly> {
        let mut out = vec![Poly::zero(nvars); ngens];
        for (i, c) in v.iter().enumerate() {
            if !c.is_zero() {
                let (j, m) = &self.elements[i];
                out[*j].add_term(c, m);
            }
        }
        out
    }
}

/// Checks that entry `(r, c)` is homogeneous of degree `g_c - h_r` and, on an
/// equivariant ring, has label `label(src_c) - label(dst_r)`.
pub fn check_homogeneous(
    ring: &Ring,
    m: &PolyMatrix,
    src: &[Generator],
    dst: &[Generator],
) -> Result<()> {
    if m.rows() != dst.len() || m.cols() != src.len() {
        return Err(Error::DimensionMismatch(format!(
            "matrix is {}x{}, generators {}x{}",
            m.rows(),
            m.cols(),
            dst.len(),
            src.len()
        )));
    }
    let g = ring.group();
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let p = m.get(r, c);
            let e = src[c].degree - dst[r].degree;
            if !p.is_homogeneous_of(ring.weights(), e) {
                return Err(Error::Inhomogeneous(format!(
                    "entry ({r},{c}) = {p} is not homogeneous of degree {e}"
                )));
            }
            let want = g.sub(&src[c].label, &dst[r].label);
            if let Some((mono, _)) = p.terms().find(|(mono, _)| ring.label_of(mono) != want) {
                return Err(Error::Inhomogeneous(format!(
                    "entry ({r},{c}) = {p} has term {mono} of the wrong character (expected {want})"
                )));
            }
        }
    }
    Ok(())
}

/// The linear map `⊕ R_{d - g_c} → ⊕ R_{d - h_r}` induced by `m` in
/// internal degree `d`.
pub fn strand_matrix(
    ring: &Ring,
    m: &PolyMatrix,
    src: &FreePiece,
    dst: &FreePiece,
    dst_gens: &[Generator],
) -> Matrix {
    let mut out = Matrix::zeros(dst.dim(), src.dim());
    for (col, (c, mono)) in src.elements.iter().enumerate() {
        for r in 0..m.rows() {
            let p = m.get(r, *c);
            if p.is_zero() {
                continue;
            }
            let b = ring.basis(dst.degree - dst_gens[r].degree);
            for (t, coef) in p.terms() {
                let i = b
                    .index_of(&mono.mul(t))
                    .expect("homogeneous entry lands in the target piece");
                out.add_to(dst.offsets[r] + i, col, coef);
            }
        }
    }
    out
}
