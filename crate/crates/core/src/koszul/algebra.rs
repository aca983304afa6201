use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use crate::algebra::{Character, CharacterGroup, Matrix, Rational};
use crate::error::{Error, Result};
use crate::graded::GradedAlgebra;

/// A graded algebra seen through its pieces `A_k = base_{step·k}` and the
/// multiplication tables between them. With `step = 1` this is the algebra
/// itself; larger steps give Veronese subrings.
#[derive(Clone)]
pub struct PiecewiseAlgebra(Arc<Inner>);

/// Multiplication `A_i × A_j → A_{i+j}` in the piece bases.
type Table = Arc<Vec<Vec<Rational>>>;

struct Inner {
    base: GradedAlgebra,
    step: i64,
    tables: Mutex<HashMap<(i64, i64), Table>>,
}

impl fmt::Debug for PiecewiseAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PiecewiseAlgebra")
            .field("base", &self.0.base)
            .field("step", &self.0.step)
            .finish()
    }
}

impl From<GradedAlgebra> for PiecewiseAlgebra {
    fn from(base: GradedAlgebra) -> Self {
        PiecewiseAlgebra::with_step(base, 1)
    }
}

impl PiecewiseAlgebra {
    fn with_step(base: GradedAlgebra, step: i64) -> Self {
        PiecewiseAlgebra(Arc::new(Inner {
            base,
            step,
            tables: Mutex::new(HashMap::new()),
        }))
    }

    pub fn base(&self) -> &GradedAlgebra {
        &self.0.base
    }

    pub fn step(&self) -> i64 {
        self.0.step
    }

    pub fn group(&self) -> &CharacterGroup {
        self.0.base.ring().group()
    }

    pub fn dim(&self, k: i64) -> usize {
        if k < 0 {
            0
        } else {
            self.0.base.dim(self.0.step * k)
        }
    }

    /// Characters of the basis of `A_k`.
    pub fn labels(&self, k: i64) -> Vec<Character> {
        if k < 0 {
            return Vec::new();
        }
        self.0.base.piece(self.0.step * k).labels()
    }

    /// `table[a·dim A_j + b]` is the product of basis elements `a ∈ A_i`
    /// and `b ∈ A_j` in coordinates of `A_{i+j}`.
    pub fn table(&self, i: i64, j: i64) -> Table {
        if let Some(t) = self.0.tables.lock().expect("table cache").get(&(i, j)) {
            return Arc::clone(t);
        }
        let s = self.0.step;
        let (di, dj) = (self.dim(i), self.dim(j));
        let mut t = Vec::with_capacity(di * dj);
        for a in 0..di {
            for b in 0..dj {
                t.push(self.0.base.product(s * i, a, s * j, b));
            }
        }
        let t = Arc::new(t);
        let mut cache = self.0.tables.lock().expect("table cache");
        Arc::clone(cache.entry((i, j)).or_insert(t))
    }

    /// Multiplication `A_i ⊗ A_j → A_{i+j}` as a matrix.
    pub fn mult_matrix(&self, i: i64, j: i64) -> Matrix {
        let t = self.table(i, j);
        Matrix::from_columns(self.dim(i + j), &t)
    }
}

/// The Veronese subring `A^(d) = ⊕_m A_{dm}`.
pub fn veronese(a: &GradedAlgebra, d: i64) -> Result<PiecewiseAlgebra> {
    if d < 1 {
        return Err(Error::Unsupported(format!(
            "Veronese degree must be positive, got {d}"
        )));
    }
    Ok(PiecewiseAlgebra::with_step(a.clone(), d))
}
