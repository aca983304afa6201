//! Exactness certificates for finite sequences of linear maps.

use serde::Serialize;

use crate::algebra::Matrix;

/// Ranks at one position of a strand `… → V_{i-1} → V_i → V_{i+1} → …`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrandPosition {
    pub position: i64,
    pub dim: usize,
    /// Rank of the incoming map.
    pub image: usize,
    /// Dimension of the kernel of the outgoing map.
    pub kernel: usize,
    pub exact: bool,
}

/// Exactness verdict of one strand. Positions are listed in the order the
/// maps are composed; the sequence is taken with zeros at both ends.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrandReport {
    pub strand: String,
    pub positions: Vec<StrandPosition>,
    pub first_failure: Option<i64>,
    /// Whether consecutive maps compose to zero.
    pub is_complex: bool,
}

impl StrandReport {
    /// `dims[k]` is the dimension at `positions[k]`; `maps[k]` goes from
    /// position `k` to position `k+1` (so `maps.len() + 1 == dims.len()`).
    pub fn from_maps(
        strand: impl Into<String>,
        positions: &[i64],
        dims: &[usize],
        maps: &[Matrix],
    ) -> Self {
        assert_eq!(positions.len(), dims.len());
        assert_eq!(maps.len() + 1, dims.len().max(1));
        for (k, m) in maps.iter().enumerate() {
            assert_eq!(
                (m.rows(), m.cols()),
                (dims[k + 1], dims[k]),
                "map {k} shape"
            );
        }
        let ranks: Vec<usize> = maps.iter().map(Matrix::rank).collect();
        let is_complex = maps
            .windows(2)
            .all(|w| w[0].rows() == 0 || w[0].cols() == 0 || w[1].mul(&w[0]).is_zero());
        let mut out = Vec::with_capacity(dims.len());
        let mut first_failure = None;
        for (k, (&pos, &dim)) in positions.iter().zip(dims).enumerate() {
            let image = if k == 0 { 0 } else { ranks[k - 1] };
            let kernel = dim - ranks.get(k).copied().unwrap_or(0);
            let exact = image == kernel;
            if !exact && first_failure.is_none() {
                first_failure = Some(pos);
            }
            out.push(StrandPosition {
                position: pos,
                dim,
                image,
                kernel,
                exact,
            });
        }
        StrandReport {
            strand: strand.into(),
            positions: out,
            first_failure,
            is_complex,
        }
    }

    /// Keeps only the positions accepted by `keep`; verdicts at the
    /// remaining positions are unchanged.
    pub fn restrict(mut self, keep: impl Fn(i64) -> bool) -> Self {
        self.positions.retain(|p| keep(p.position));
        self.first_failure = self.positions.iter().find(|p| !p.exact).map(|p| p.position);
        self
    }

    pub fn is_exact(&self) -> bool {
        self.is_complex && self.first_failure.is_none()
    }

    /// Homology dimensions, position by position.
    pub fn homology(&self) -> Vec<(i64, usize)> {
        self.positions
            .iter()
            .map(|p| (p.position, p.kernel - p.image))
            .collect()
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.positions
            .iter()
            .enumerate()
            .map(|(k, p)| {
                if k % 2 == 0 {
                    p.dim as i64
                } else {
                    -(p.dim as i64)
                }
            })
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn short_exact_sequence() {
        let i = Matrix::from_i64(&[&[1], &[0]]);
        let p = Matrix::from_i64(&[&[0, 1]]);
        let r = StrandReport::from_maps("ses", &[0, 1, 2], &[1, 2, 1], &[i, p]);
        assert!(r.is_exact());
        assert_eq!(r.euler_characteristic(), 0);
    }

    #[test]
    fn failure_is_located() {
        let z = Matrix::zeros(1, 1);
        let r = StrandReport::from_maps("zero", &[3, 4], &[1, 1], &[z]);
        assert_eq!(r.first_failure, Some(3));
        assert_eq!(r.homology(), vec![(3, 1), (4, 1)]);
    }
}
