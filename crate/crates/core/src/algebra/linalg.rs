//! Dense exact linear algebra over the rationals.
//!
//! Everything downstream (kernels of multiplication maps, strand ranks,
//! syzygies) reduces to row reduction of small dense matrices, so the only
//! primitives here are [`Matrix`], its reduced row echelon form, and an
//! incrementally maintained echelon basis of a subspace.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = self.row(r).iter().map(|x| x.to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, Rational::one());
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        assert!(rows.iter().all(|x| x.len() == c), "ragged rows");
        Matrix {
            rows: r,
            cols: c,
            entries: rows.into_iter().flatten().collect(),
        }
    }

    /// Integer convenience constructor, mostly for tests.
    pub fn from_i64(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors, all of length `rows`.
    pub fn from_columns(rows: usize, cols: &[Vec<Rational>]) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), rows);
            for (i, x) in c.iter().enumerate() {
                if !x.is_zero() {
                    m.set(i, j, x.clone());
                }
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

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn add_to(&mut self, r: usize, c: usize, v: &Rational) {
        let e = &mut self.entries[r * self.cols + c];
        *e += v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vec<Rational> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Matrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let v = self.get(r, c);
                if !v.is_zero() {
                    t.set(c, r, v.clone());
                }
            }
        }
        t
    }

    pub fn mul(&self, other: &Matrix) -> Matrix {
        assert_eq!(self.cols, other.rows, "matrix product shape mismatch");
        let mut out = Matrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.add_to(i, j, &(a * b));
                    }
                }
            }
        }
        out
    }

    pub fn apply(&self, v: &[Rational]) -> Vec<Rational> {
        assert_eq!(v.len(), self.cols);
        let mut out = vec![Rational::zero(); self.rows];
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let a = self.get(r, c);
                if !a.is_zero() {
                    *o += a * x;
                }
            }
        }
        out
    }

    /// Submatrix keeping the given columns, in order.
    pub fn select_columns(&self, cols: &[usize]) -> Matrix {
        let mut m = Matrix::zeros(self.rows, cols.len());
        for (j, &c) in cols.iter().enumerate() {
            for r in 0..self.rows {
                let v = self.get(r, c);
                if !v.is_zero() {
                    m.set(r, j, v.clone());
                }
            }
        }
        m
    }

    pub fn rref(&self) -> Rref {
        let mut rows: Vec<Vec<Rational>> = (0..self.rows).map(|r| self.row(r).to_vec()).collect();
        let mut pivots = Vec::new();
        let mut lead = 0;
        for col in 0..self.cols {
            if lead == rows.len() {
                break;
            }
            let Some(p) = (lead..rows.len()).find(|&r| !rows[r][col].is_zero()) else {
                continue;
            };
            rows.swap(lead, p);
            let inv = rows[lead][col].recip();
            if !inv.is_one() {
                for x in rows[lead].iter_mut().skip(col) {
                    if !x.is_zero() {
                        *x *= &inv;
                    }
                }
            }
            let pivot_row = std::mem::take(&mut rows[lead]);
            for (r, row) in rows.iter_mut().enumerate() {
                if r == lead || row[col].is_zero() {
                    continue;
                }
                let factor = row[col].clone();
                for (x, y) in row.iter_mut().zip(pivot_row.iter()).skip(col) {
                    if !y.is_zero() {
                        *x -= &factor * y;
                    }
                }
            }
            rows[lead] = pivot_row;
            pivots.push(col);
            lead += 1;
        }
        rows.truncate(pivots.len());
        Rref {
            cols: self.cols,
            rows,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        if self.rows == 0 || self.cols == 0 {
            return 0;
        }
        // Row reduction on the smaller side.
        if self.rows < self.cols {
            self.transpose().rref().rank()
        } else {
            self.rref().rank()
        }
    }

    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        self.rref().kernel_basis()
    }
}

/// Reduced row echelon form: nonzero rows only, each with a unit pivot.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rref {
    cols: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    pub fn to_matrix(&self) -> Matrix {
        if self.rows.is_empty() {
            return Matrix::zeros(0, self.cols);
        }
        Matrix::from_rows(self.rows.clone())
    }

    /// One kernel vector per free column, with a 1 in that column.
    pub fn kernel_basis(&self) -> Vec<Vec<Rational>> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for (row, &p) in self.rows.iter().zip(&self.pivots) {
                    if !row[free].is_zero() {
                        v[p] = -row[free].clone();
                    }
                }
                v
            })
            .collect()
    }

    pub fn free_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.cols];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.cols).filter(|&c| !is_pivot[c]).collect()
    }
}

/// Fully reduced echelon basis of a growing subspace of `Q^dim`.
///
/// Each stored row remembers how it was formed from the inserted vectors, so
/// membership queries can also return coordinates.
#[derive(Clone, Debug)]
pub struct EchelonBasis {
    dim: usize,
    rows: Vec<Vec<Rational>>,
    pivots: Vec<usize>,
    combos: Vec<Vec<Rational>>,
    inserted: usize,
    track: bool,
}

impl EchelonBasis {
    pub fn new(dim: usize) -> Self {
        EchelonBasis {
            dim,
            rows: Vec::new(),
            pivots: Vec::new(),
            combos: Vec::new(),
            inserted: 0,
            track: true,
        }
    }

    /// A basis that only records the span; `coordinates` is unavailable.
    pub fn untracked(dim: usize) -> Self {
        EchelonBasis {
            track: false,
            ..Self::new(dim)
        }
    }

    pub fn from_vectors<'a>(dim: usize, vs: impl IntoIterator<Item = &'a Vec<Rational>>) -> Self {
        let mut b = Self::untracked(dim);
        for v in vs {
            b.insert(v);
        }
        b
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the basis; returns the remainder and the
    /// combination of stored rows that was subtracted.
    fn reduce_tracking(&self, v: &[Rational]) -> (Vec<Rational>, Vec<Rational>) {
        assert_eq!(v.len(), self.dim);
        let mut rem = v.to_vec();
        let mut coeffs = vec![Rational::zero(); self.rows.len()];
        for (k, (row, &p)) in self.rows.iter().zip(&self.pivots).enumerate() {
            if rem[p].is_zero() {
                continue;
            }
            let f = rem[p].clone();
            for (x, y) in rem.iter_mut().zip(row.iter()) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            coeffs[k] = f;
        }
        (rem, coeffs)
    }

    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        self.reduce_tracking(v).0
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }

    /// Inserts `v`; returns false if it was already in the span.
    pub fn insert(&mut self, v: &[Rational]) -> bool {
        if !self.track {
            return self.insert_untracked(v);
        }
        let idx = self.inserted;
        self.inserted += 1;
        for c in &mut self.combos {
            c.push(Rational::zero());
        }
        let (mut rem, coeffs) = self.reduce_tracking(v);
        let Some(p) = rem.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        // combo for rem = e_idx - sum coeffs_k * combo_k
        let mut combo = vec![Rational::zero(); self.inserted];
        combo[idx] = Rational::one();
        for (k, f) in coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (x, y) in combo.iter_mut().zip(self.combos[k].iter()) {
                if !y.is_zero() {
                    *x -= f * y;
                }
            }
        }
        let inv = rem[p].recip();
        for x in rem.iter_mut() {
            *x *= &inv;
        }
        for x in combo.iter_mut() {
            *x *= &inv;
        }
        for k in 0..self.rows.len() {
            if self.rows[k][p].is_zero() {
                continue;
            }
            let f = self.rows[k][p].clone();
            for (x, y) in self.rows[k].iter_mut().zip(rem.iter()) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
            for (x, y) in self.combos[k].iter_mut().zip(combo.iter()) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push(rem);
        self.pivots.push(p);
        self.combos.push(combo);
        true
    }

    fn insert_untracked(&mut self, v: &[Rational]) -> bool {
        let mut rem = self.reduce(v);
        let Some(p) = rem.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = rem[p].recip();
        for x in rem.iter_mut() {
            *x *= &inv;
        }
        for row in &mut self.rows {
            if row[p].is_zero() {
                continue;
            }
            let f = row[p].clone();
            for (x, y) in row.iter_mut().zip(rem.iter()) {
                if !y.is_zero() {
                    *x -= &f * y;
                }
            }
        }
        self.rows.push(rem);
        self.pivots.push(p);
        true
    }

    /// Stored rows, each with a leading one at the matching pivot.
    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.rows
    }

    /// Coordinates of `v` with respect to the inserted vectors (in insertion
    /// order, dependent insertions get coefficient zero), or `None` when `v`
    /// is outside the span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        assert!(self.track, "coordinates need a tracked basis");
        let (rem, coeffs) = self.reduce_tracking(v);
        if rem.iter().any(|x| !x.is_zero()) {
            return None;
        }
        let mut out = vec![Rational::zero(); self.inserted];
        for (k, f) in coeffs.iter().enumerate() {
            if f.is_zero() {
                continue;
            }
            for (x, y) in out.iter_mut().zip(self.combos[k].iter()) {
                if !y.is_zero() {
                    *x += f * y;
                }
            }
        }
        Some(out)
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
}

/// Expresses vectors in terms of a fixed linearly independent family.
#[derive(Clone, Debug)]
pub struct SpanSolver {
    basis: EchelonBasis,
    len: usize,
}

impl SpanSolver {
    pub fn new(dim: usize, family: &[Vec<Rational>]) -> Self {
        let mut basis = EchelonBasis::new(dim);
        for v in family {
            let fresh = basis.insert(v);
            debug_assert!(fresh, "family must be linearly independent");
        }
        SpanSolver {
            basis,
            len: family.len(),
        }
    }

    pub fn len(&self) -> usize {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.len == 0
    }

    pub fn solve(&self, v: &[Rational]) -> Option<Vec<Rational>> {
        self.basis.coordinates(v)
    }
}

/// Kronecker product `a ⊗ b`.
pub fn kronecker(a: &Matrix, b: &Matrix) -> Matrix {
    let mut out = Matrix::zeros(a.rows() * b.rows(), a.cols() * b.cols());
    for i in 0..a.rows() {
        for j in 0..a.cols() {
            let x = a.get(i, j);
            if x.is_zero() {
                continue;
            }
            for k in 0..b.rows() {
                for l in 0..b.cols() {
                    let y = b.get(k, l);
                    if !y.is_zero() {
                        out.set(i * b.rows() + k, j * b.cols() + l, x * y);
                    }
                }
            }
        }
    }
    out
}
