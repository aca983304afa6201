use std::collections::BTreeMap;

use num_traits::Zero;

use super::linalg::{Matrix, Rational};
use super::weights::Character;

/// Kernel of a character-preserving map, computed one character at a
/// time so that the basis is made of eigenvectors.
pub fn labeled_kernel(map: &Matrix, labels: &[Character]) -> (Vec<Vec<Rational>>, Vec<Character>) {
    let mut blocks: BTreeMap<&Character, Vec<usize>> = BTreeMap::new();
    for (i, chi) in labels.iter().enumerate() {
        blocks.entry(chi).or_default().push(i);
    }
    let mut vectors = Vec::new();
    let mut out = Vec::new();
    for (chi, cols) in blocks {
        for k in map.select_columns(&cols).kernel_basis() {
            let mut v = vec![Rational::zero(); labels.len()];
            for (c, x) in cols.iter().zip(k) {
                v[*c] = x;
            }
            vectors.push(v);
            out.push(chi.clone());
        }
    }
    (vectors, out)
}
