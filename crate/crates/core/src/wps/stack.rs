use std::collections::BTreeMap;

use serde::Serialize;

use crate::algebra::{Character, CharacterGroup, Ring, WeightVector};
use crate::error::Result;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CharacterInfo {
    pub character: Character,
    /// Sum of the canonical representatives.
    pub norm: i64,
    pub support: Vec<usize>,
}

/// The weighted projective stack `P(a_0, …, a_n)` with its character group
/// `Z_{a_0} × … × Z_{a_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StackDescriptor {
    pub weights: WeightVector,
    pub sigma: i64,
    pub characters: Vec<CharacterInfo>,
}

pub fn validate_weights(w: &WeightVector) -> Result<StackDescriptor> {
    w.check_well_formed()?;
    let g = CharacterGroup::of_weights(w);
    let characters = g
        .elements()
        .into_iter()
        .map(|c| CharacterInfo {
            norm: c.norm(),
            support: c.support(),
            character: c,
        })
        .collect();
    Ok(StackDescriptor {
        weights: w.clone(),
        sigma: w.sigma(),
        characters,
    })
}

impl StackDescriptor {
    pub fn n(&self) -> usize {
        self.weights.n()
    }

    pub fn group(&self) -> CharacterGroup {
        CharacterGroup::of_weights(&self.weights)
    }

    /// The weighted ring `S`.
    pub fn ring(&self) -> Ring {
        Ring::weighted(self.weights.clone())
    }

    /// The standard-graded cover ring `T`, labeled by characters.
    pub fn cover(&self) -> Ring {
        Ring::cover(&self.weights)
    }
}

/// `(h^0, …, h^n)` of `O(k)`: `h^0 = dim S_k`, `h^n = dim S_{-k-σ}`.
pub fn line_cohomology(w: &WeightVector, k: i64) -> Vec<usize> {
    let r = Ring::weighted(w.clone());
    let n = w.n();
    let mut h = vec![0; n + 1];
    h[0] += r.dim(k);
    h[n] += r.dim(-k - w.sigma());
    h
}

/// Dimensions of `T_k` split by character.
pub fn cover_piece_characters(w: &WeightVector, k: i64) -> BTreeMap<Character, usize> {
    let t = Ring::cover(w);
    let basis = t.basis(k);
    let mut out: BTreeMap<Character, usize> =
        t.group().elements().into_iter().map(|c| (c, 0)).collect();
    for i in 0..basis.len() {
        *out.entry(basis.label(i).clone()).or_default() += 1;
    }
    out
}

/// For each torus-fixed point `i` (stabilizer `μ_{a_i}`), the least `j_0`
/// such that sums of at most `j_0` tangent characters `a_j mod a_i`
/// (`j ≠ i`) cover `Z_{a_i}`.
pub fn stabilizer_cover(w: &WeightVector) -> Result<Vec<usize>> {
    w.check_well_formed()?;
    let ws = w.weights();
    Ok((0..ws.len())
        .map(|i| {
            let a = ws[i] as usize;
            let tangent: Vec<usize> = (0..ws.len())
                .filter(|&j| j != i)
                .map(|j| ws[j] as usize % a)
                .collect();
            let mut reached = vec![false; a];
            reached[0] = true;
            let mut count = 1;
            let mut j0 = 0;
            while count < a {
                let now: Vec<usize> = (0..a).filter(|&r| reached[r]).collect();
                for r in now {
                    for t in &tangent {
                        let s = (r + t) % a;
                        if !reached[s] {
                            reached[s] = true;
                            count += 1;
                        }
                    }
                }
                j0 += 1;
            }
            j0
        })
        .collect())
}
