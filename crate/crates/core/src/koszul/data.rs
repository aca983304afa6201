use num_traits::Zero;

use super::algebra::PiecewiseAlgebra;
use crate::algebra::{labeled_kernel, Character, CharacterGroup, Matrix, Rational, SpanSolver};
use crate::error::{Error, Result};

/// A subspace of a coordinate space whose basis vectors each carry a
/// character.
#[derive(Clone, Debug)]
pub struct LabeledBasis {
    ambient: usize,
    vectors: Vec<Vec<Rational>>,
    labels: Vec<Character>,
    solver: SpanSolver,
}

impl LabeledBasis {
    pub fn new(ambient: usize, vectors: Vec<Vec<Rational>>, labels: Vec<Character>) -> Self {
        let solver = SpanSolver::new(ambient, &vectors);
        LabeledBasis {
            ambient,
            vectors,
            labels,
            solver,
        }
    }

    pub fn whole(labels: Vec<Character>) -> Self {
        let n = labels.len();
        let vectors = (0..n).map(|i| unit(n, i)).collect();
        LabeledBasis::new(n, vectors, labels)
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn vectors(&self) -> &[Vec<Rational>] {
        &self.vectors
    }

    pub fn labels(&self) -> &[Character] {
        &self.labels
    }

    /// Coordinates of an ambient vector known to lie in the span.
    pub fn coordinates(&self, v: &[Rational]) -> Vec<Rational> {
        self.solver.solve(v).expect("vector lies in the subspace")
    }

    /// The inclusion into the ambient space.
    pub fn inclusion(&self) -> Matrix {
        Matrix::from_columns(self.ambient, &self.vectors)
    }
}

fn unit(n: usize, i: usize) -> Vec<Rational> {
    let mut v = vec![Rational::zero(); n];
    v[i] = Rational::from_integer(1.into());
    v
}

/// Labels of a tensor product basis, first factor most significant.
pub fn tensor_labels(group: &CharacterGroup, a: &[Character], b: &[Character]) -> Vec<Character> {
    a.iter()
        .flat_map(|x| b.iter().map(move |y| group.add(x, y)))
        .collect()
}

/// `B_m` inside `A_1^{⊗m}` with its two comultiplications.
#[derive(Clone, Debug)]
struct BSpace {
    basis: LabeledBasis,
    /// `B_m → B_{m-1} ⊗ A_1` splitting off the last factor.
    right: Matrix,
    /// `B_m → A_1 ⊗ B_{m-1}` splitting off the first factor.
    left: Matrix,
}

/// The Koszul spaces `B_0, …, B_{m_max}` of a piecewise algebra.
#[derive(Clone, Debug)]
pub struct KoszulData {
    algebra: PiecewiseAlgebra,
    spaces: Vec<BSpace>,
}

/// `B_0 = A_0`, `B_1 = A_1`, and `B_m = Ker(B_{m-1} ⊗ A_1 → B_{m-2} ⊗ A_2)`.
pub fn b_spaces(algebra: &PiecewiseAlgebra, m_max: usize) -> KoszulData {
    let grp = algebra.group();
    let a1 = algebra.dim(1);
    let l1 = algebra.labels(1);
    let mut spaces: Vec<BSpace> = Vec::new();
    for m in 0..=m_max {
        let basis = match m {
            0 => LabeledBasis::whole(vec![grp.zero()]),
            1 => LabeledBasis::whole(l1.clone()),
            _ => {
                let prev = &spaces[m - 1].basis;
                let amb = prev.ambient() * a1;
                // candidates b ⊗ e_x
                let mut cands = Vec::with_capacity(prev.dim() * a1);
                for b in prev.vectors() {
                    for x in 0..a1 {
                        let mut v = vec![Rational::zero(); amb];
                        for (u, c) in b.iter().enumerate() {
                            if !c.is_zero() {
                                v[u * a1 + x] = c.clone();
                            }
                        }
                        cands.push(v);
                    }
                }
                let labels = tensor_labels(grp, prev.labels(), &l1);
                // id ⊗ mult on the last two factors
                let head = amb / (a1 * a1);
                let a2 = algebra.dim(2);
                let tab = algebra.table(1, 1);
                let mut map = Matrix::zeros(head * a2, cands.len());
                for (c, v) in cands.iter().enumerate() {
                    for (t, x) in v.iter().enumerate() {
                        if x.is_zero() {
                            continue;
                        }
                        let (u, pair) = (t / (a1 * a1), t % (a1 * a1));
                        for (s, y) in tab[pair].iter().enumerate() {
                            if !y.is_zero() {
                                map.add_to(u * a2 + s, c, &(x * y));
                            }
                        }
                    }
                }
                let (ker, ker_labels) = labeled_kernel(&map, &labels);
                let vectors = ker
                    .iter()
                    .map(|k| {
                        let mut v = vec![Rational::zero(); amb];
                        for (c, x) in k.iter().enumerate() {
                            if x.is_zero() {
                                continue;
                            }
                            for (t, y) in cands[c].iter().enumerate() {
                                if !y.is_zero() {
                                    v[t] += x * y;
                                }
                            }
                        }
                        v
                    })
                    .collect();
                LabeledBasis::new(amb, vectors, ker_labels)
            }
        };
        let (right, left) = if m == 0 {
            (Matrix::zeros(0, 1), Matrix::zeros(0, 1))
        } else {
            split(&basis, &spaces[m - 1].basis, a1)
        };
        spaces.push(BSpace { basis, right, left });
    }
    KoszulData {
        algebra: algebra.clone(),
        spaces,
    }
}

/// Comultiplications of `B_m ⊂ B_{m-1} ⊗ A_1` and `B_m ⊂ A_1 ⊗ B_{m-1}`.
fn split(b: &LabeledBasis, prev: &LabeledBasis, a1: usize) -> (Matrix, Matrix) {
    let p = prev.ambient();
    let q = prev.dim();
    let mut right = Matrix::zeros(q * a1, b.dim());
    let mut left = Matrix::zeros(a1 * q, b.dim());
    for (i, v) in b.vectors().iter().enumerate() {
        for x in 0..a1 {
            let tail: Vec<Rational> = (0..p).map(|u| v[u * a1 + x].clone()).collect();
            for (j, c) in prev.coordinates(&tail).into_iter().enumerate() {
                right.set(j * a1 + x, i, c);
            }
            let head: Vec<Rational> = (0..p).map(|u| v[x * p + u].clone()).collect();
            for (j, c) in prev.coordinates(&head).into_iter().enumerate() {
                left.set(x * q + j, i, c);
            }
        }
    }
    (right, left)
}

impl KoszulData {
    pub fn algebra(&self) -> &PiecewiseAlgebra {
        &self.algebra
    }

    /// Largest `m` for which `B_m` was computed.
    pub fn m_max(&self) -> usize {
        self.spaces.len() - 1
    }

    /// Whether every `B_m` past `m_max` is known to vanish.
    pub fn is_complete(&self) -> bool {
        self.spaces.last().is_some_and(|s| s.basis.dim() == 0)
    }

    fn space(&self, m: i64) -> Result<Option<&BSpace>> {
        if m < 0 {
            return Ok(None);
        }
        match self.spaces.get(m as usize) {
            Some(s) => Ok(Some(s)),
            None if self.is_complete() => Ok(None),
            None => Err(Error::BoundExhausted {
                degree: m,
                message: format!("B_{m} was not computed (m_max = {})", self.m_max()),
            }),
        }
    }

    pub fn b_dim(&self, m: i64) -> Result<usize> {
        Ok(self.space(m)?.map_or(0, |s| s.basis.dim()))
    }

    /// Basis of `B_m` as vectors in `A_1^{⊗m}`.
    pub fn b_basis(&self, m: usize) -> Option<&LabeledBasis> {
        self.spaces.get(m).map(|s| &s.basis)
    }

    fn b_labels(&self, m: i64) -> Result<Vec<Character>> {
        Ok(self
            .space(m)?
            .map_or_else(Vec::new, |s| s.basis.labels().to_vec()))
    }

    /// Labels of `B_m ⊗ A_l`.
    pub fn tensor_labels(&self, m: i64, l: i64) -> Result<Vec<Character>> {
        Ok(tensor_labels(
            self.algebra.group(),
            &self.b_labels(m)?,
            &self.algebra.labels(l),
        ))
    }

    /// `B_m ⊗ A_l → B_{m-1} ⊗ A_{l+1}`, the differential of the Koszul
    /// complex: split off the last factor of `B_m` and multiply it into `A`.
    pub fn contraction(&self, m: i64, l: i64) -> Result<Matrix> {
        let a = &self.algebra;
        let (bm, bp) = (self.b_dim(m)?, self.b_dim(m - 1)?);
        let (al, an) = (a.dim(l), a.dim(l + 1));
        let mut out = Matrix::zeros(bp * an, bm * al);
        if out.rows() == 0 || out.cols() == 0 {
            return Ok(out);
        }
        let right = &self.space(m)?.expect("nonzero B_m").right;
        let a1 = a.dim(1);
        let tab = a.table(1, l);
        for i in 0..bm {
            for r in 0..right.rows() {
                let c = right.get(r, i);
                if c.is_zero() {
                    continue;
                }
                let (j, x) = (r / a1, r % a1);
                for s in 0..al {
                    for (t, y) in tab[x * al + s].iter().enumerate() {
                        if !y.is_zero() {
                            out.add_to(j * an + t, i * al + s, &(c * y));
                        }
                    }
                }
            }
        }
        Ok(out)
    }

    /// `(R_m)_l = Ker(B_m ⊗ A_l → B_{m-1} ⊗ A_{l+1})` as a subspace of
    /// `B_m ⊗ A_l`; `(R_0)_l = A_l`.
    pub fn r_piece(&self, m: i64, l: i64) -> Result<LabeledBasis> {
        let labels = self.tensor_labels(m, l)?;
        let amb = labels.len();
        if m == 0 {
            return Ok(LabeledBasis::whole(labels));
        }
        let (vectors, ker_labels) = labeled_kernel(&self.contraction(m, l)?, &labels);
        Ok(LabeledBasis::new(amb, vectors, ker_labels))
    }

    /// `A_i ⊗ (R_m)_l → A_{i+1} ⊗ (R_{m-1})_l`: split off the first factor
    /// of `B_m` and multiply it into the left `A`.
    pub fn left_map(
        &self,
        i: i64,
        m: i64,
        l: i64,
        src: &LabeledBasis,
        dst: &LabeledBasis,
    ) -> Result<Matrix> {
        let a = &self.algebra;
        let (ai, an) = (a.dim(i), a.dim(i + 1));
        let mut out = Matrix::zeros(an * dst.dim(), ai * src.dim());
        if out.rows() == 0 || out.cols() == 0 {
            return Ok(out);
        }
        let left = &self.space(m)?.expect("nonzero B_m").left;
        let q = self.b_dim(m - 1)?;
        let al = a.dim(l);
        let a1 = a.dim(1);
        let tab = a.table(i, 1);
        let inner = q * al;
        for (ri, r) in src.vectors().iter().enumerate() {
            // image of 1 ⊗ r in A_1 ⊗ B_{m-1} ⊗ A_l
            let mut img = vec![Rational::zero(); a1 * inner];
            for (t, c) in r.iter().enumerate() {
                if c.is_zero() {
                    continue;
                }
                let (b, s) = (t / al, t % al);
                for row in 0..left.rows() {
                    let y = left.get(row, b);
                    if !y.is_zero() {
                        let (x, j) = (row / q, row % q);
                        img[x * inner + j * al + s] += c * y;
                    }
                }
            }
            for e in 0..ai {
                let mut full = vec![vec![Rational::zero(); inner]; an];
                for x in 0..a1 {
                    let slice = &img[x * inner..(x + 1) * inner];
                    if slice.iter().all(Zero::is_zero) {
                        continue;
                    }
                    for (t, y) in tab[e * a1 + x].iter().enumerate() {
                        if y.is_zero() {
                            continue;
                        }
                        for (u, z) in slice.iter().enumerate() {
                            if !z.is_zero() {
                                full[t][u] += y * z;
                            }
                        }
                    }
                }
                let col = e * src.dim() + ri;
                for (t, v) in full.iter().enumerate() {
                    if v.iter().all(Zero::is_zero) {
                        continue;
                    }
                    for (k, c) in dst.coordinates(v).into_iter().enumerate() {
                        if !c.is_zero() {
                            out.set(t * dst.dim() + k, col, c);
                        }
                    }
                }
            }
        }
        Ok(out)
    }
}
