use serde::Serialize;

use super::algebra::PiecewiseAlgebra;
use super::data::{b_spaces, tensor_labels, KoszulData, LabeledBasis};
use crate::algebra::{Character, Matrix, Ring, WeightVector};
use crate::error::Result;
use crate::graded::GradedAlgebra;
use crate::strand::StrandReport;

/// Exactness of the Koszul complex `… → B_m ⊗ A_{k-m} → … → A_k → ℚ`
/// strand by strand.
#[derive(Clone, Debug, Serialize)]
pub struct KoszulVerdict {
    pub m_max: usize,
    pub k_max: i64,
    pub strands: Vec<StrandReport>,
    /// `(m, k)` of the first non-exact position, by increasing `k`.
    pub first_failure: Option<(i64, i64)>,
}

impl KoszulVerdict {
    pub fn passed(&self) -> bool {
        self.first_failure.is_none()
    }
}

/// Checks exactness of the Koszul complex in internal degrees `0..=k_max`
/// at homological positions `0..=m_max`.
pub fn koszul_check(k: &KoszulData, m_max: usize, k_max: i64) -> Result<KoszulVerdict> {
    let extended;
    let k = if k.m_max() > m_max || k.is_complete() {
        k
    } else {
        extended = b_spaces(k.algebra(), m_max + 1);
        &extended
    };
    let a = k.algebra();
    let mut strands = Vec::new();
    let mut first_failure = None;
    for deg in 0..=k_max {
        let top = deg.min(m_max as i64 + 1);
        let mut positions = Vec::new();
        let mut dims = Vec::new();
        let mut maps = Vec::new();
        for m in (0..=top).rev() {
            positions.push(m);
            dims.push(k.b_dim(m)? * a.dim(deg - m));
            if m > 0 {
                maps.push(k.contraction(m, deg - m)?);
            }
        }
        // the augmentation A → ℚ
        positions.push(-1);
        if deg == 0 {
            dims.push(1);
            maps.push(Matrix::identity(1));
        } else {
            dims.push(0);
            maps.push(Matrix::zeros(0, a.dim(deg)));
        }
        let report = StrandReport::from_maps(format!("k={deg}"), &positions, &dims, &maps)
            .restrict(|p| p <= m_max as i64);
        if first_failure.is_none() {
            if let Some(m) = report.first_failure {
                first_failure = Some((m, deg));
            }
        }
        strands.push(report);
    }
    Ok(KoszulVerdict {
        m_max,
        k_max,
        strands,
        first_failure,
    })
}

/// The degree-`l` strand `0 → (R_m)_l → B_m ⊗ A_l → … → B_0 ⊗ A_{l+m} → 0`.
/// Positions are the `B` index, with `R_m` at `m + 1`.
pub fn seq_sheaf_strand(k: &KoszulData, m: i64, l: i64) -> Result<StrandReport> {
    let r = k.r_piece(m, l)?;
    let a = k.algebra();
    let mut positions = vec![m + 1];
    let mut dims = vec![r.dim()];
    let mut maps = vec![r.inclusion()];
    for j in (0..=m).rev() {
        positions.push(j);
        dims.push(k.b_dim(j)? * a.dim(l + m - j));
        if j > 0 {
            maps.push(k.contraction(j, l + m - j)?);
        }
    }
    Ok(StrandReport::from_maps(
        format!("m={m} l={l}"),
        &positions,
        &dims,
        &maps,
    ))
}

pub fn seq_sheaf_check(
    k: &KoszulData,
    m: i64,
    ls: impl IntoIterator<Item = i64>,
) -> Result<Vec<StrandReport>> {
    ls.into_iter().map(|l| seq_sheaf_strand(k, m, l)).collect()
}

/// The bidegree-`(k, l)` strand of the resolution of the diagonal:
/// `A_{k-m} ⊗ (R_m)_l` for `m = k, …, 0`, followed by the augmentation
/// target `A_{k+l}`.
#[derive(Clone, Debug)]
pub struct DiagonalStrand {
    pub bidegree: (i64, i64),
    /// `(m, dim A_{k-m} ⊗ (R_m)_l)`, by decreasing `m`.
    pub terms: Vec<(i64, usize)>,
    pub target: usize,
    /// Characters of every coordinate, terms first and then the target.
    pub labels: Vec<Vec<Character>>,
    /// `maps[j]` goes from term `j` to term `j+1` (the last one into the target).
    pub maps: Vec<Matrix>,
}

impl DiagonalStrand {
    pub fn new(k: &KoszulData, deg: (i64, i64)) -> Result<Self> {
        let (kk, l) = deg;
        let a = k.algebra();
        let grp = a.group();
        let rs: Vec<LabeledBasis> = (0..=kk).map(|m| k.r_piece(m, l)).collect::<Result<_>>()?;
        let mut terms = Vec::new();
        let mut labels = Vec::new();
        let mut maps = Vec::new();
        for m in (0..=kk).rev() {
            let r = &rs[m as usize];
            terms.push((m, a.dim(kk - m) * r.dim()));
            labels.push(tensor_labels(grp, &a.labels(kk - m), r.labels()));
            if m > 0 {
                maps.push(k.left_map(kk - m, m, l, r, &rs[m as usize - 1])?);
            }
        }
        labels.push(a.labels(kk + l));
        maps.push(a.mult_matrix(kk, l));
        Ok(DiagonalStrand {
            bidegree: deg,
            terms,
            target: a.dim(kk + l),
            labels,
            maps,
        })
    }

    fn dims(&self) -> Vec<usize> {
        self.terms
            .iter()
            .map(|t| t.1)
            .chain([self.target])
            .collect()
    }

    /// Report with positions numbered by `m`, the target at `-1`.
    pub fn report(&self, name: impl Into<String>) -> StrandReport {
        let positions: Vec<i64> = self.terms.iter().map(|t| t.0).chain([-1]).collect();
        StrandReport::from_maps(name, &positions, &self.dims(), &self.maps)
    }

    /// The sub-strand spanned by coordinates of total character `psi`.
    pub fn block(&self, psi: &Character) -> DiagonalStrand {
        let keep: Vec<Vec<usize>> = self
            .labels
            .iter()
            .map(|ls| (0..ls.len()).filter(|&i| ls[i] == *psi).collect())
            .collect();
        let maps = self
            .maps
            .iter()
            .enumerate()
            .map(|(j, m)| select(m, &keep[j + 1], &keep[j]))
            .collect();
        let n = keep.len();
        DiagonalStrand {
            bidegree: self.bidegree,
            terms: self
                .terms
                .iter()
                .zip(&keep)
                .map(|(t, c)| (t.0, c.len()))
                .collect(),
            target: keep[n - 1].len(),
            labels: keep.iter().map(|c| vec![psi.clone(); c.len()]).collect(),
            maps,
        }
    }
}

fn select(m: &Matrix, rows: &[usize], cols: &[usize]) -> Matrix {
    let mut out = Matrix::zeros(rows.len(), cols.len());
    for (i, &r) in rows.iter().enumerate() {
        for (j, &c) in cols.iter().enumerate() {
            out.set(i, j, m.get(r, c).clone());
        }
    }
    out
}

/// The strand `0 → A_0 ⊗ (R_m)_l → A_1 ⊗ (R_{m-1})_l → … →
/// A_m ⊗ (R_0)_l → A_{m+l} → 0`, positions numbered by the `A` index.
pub fn ar_strand_check(k: &KoszulData, m: i64, l: i64) -> Result<StrandReport> {
    let s = DiagonalStrand::new(k, (m, l))?;
    let positions: Vec<i64> = (0..=m + 1).collect();
    Ok(StrandReport::from_maps(
        format!("m={m} l={l}"),
        &positions,
        &s.dims(),
        &s.maps,
    ))
}

pub fn diagonal_strand_check(k: &KoszulData, kk: i64, l: i64) -> Result<StrandReport> {
    Ok(DiagonalStrand::new(k, (kk, l))?.report(format!("k={kk} l={l}")))
}

/// Koszul data of the cover ring of `P(w)`, with every `B_m` computed.
pub fn cover_koszul_data(w: &WeightVector) -> Result<KoszulData> {
    w.check_well_formed()?;
    let t = GradedAlgebra::polynomial(Ring::cover(w));
    Ok(b_spaces(&PiecewiseAlgebra::from(t), w.len() + 1))
}

/// The bidegree-`(k, l)` diagonal strand on the cover, split by the total
/// character `ψ` of the diagonal action. The `ψ = 0` block is the strand
/// of the invariant complex.
pub fn equivariant_strand_check(
    w: &WeightVector,
    kk: i64,
    l: i64,
) -> Result<Vec<(Character, StrandReport)>> {
    let data = cover_koszul_data(w)?;
    let full = DiagonalStrand::new(&data, (kk, l))?;
    Ok(data
        .algebra()
        .group()
        .elements()
        .into_iter()
        .map(|psi| {
            let r = full.block(&psi).report(format!("k={kk} l={l} psi={psi}"));
            (psi, r)
        })
        .collect())
}
