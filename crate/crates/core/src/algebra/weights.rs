use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Weights `(a_0, ..., a_n)` of a weighted polynomial ring `Q[x_0, ..., x_n]`
/// with `deg x_i = a_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct WeightVector {
    weights: Vec<u32>,
}

impl WeightVector {
    pub fn new(weights: Vec<u32>) -> Result<Self> {
        if weights.is_empty() {
            return Err(Error::InvalidWeights("weights required".into()));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidWeights(format!(
                "weights must be positive, got {weights:?}"
            )));
        }
        Ok(WeightVector { weights })
    }

    /// All weights equal to one, `len` variables.
    pub fn standard(len: usize) -> Self {
        WeightVector {
            weights: vec![1; len],
        }
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Dimension of the weighted projective space.
    pub fn n(&self) -> usize {
        self.weights.len() - 1
    }

    pub fn sigma(&self) -> i64 {
        self.weights.iter().map(|&a| a as i64).sum()
    }

    pub fn weight(&self, i: usize) -> i64 {
        self.weights[i] as i64
    }

    pub fn max_weight(&self) -> i64 {
        self.weights.iter().copied().max().unwrap_or(1) as i64
    }

    pub fn is_standard(&self) -> bool {
        self.weights.iter().all(|&a| a == 1)
    }

    /// First subset of `max(n, 2)` weights whose gcd exceeds one. On a line
    /// the condition is read as coprimality of the two weights.
    pub fn well_formed_violation(&self) -> Option<(Vec<u32>, u32)> {
        let len = self.weights.len();
        if len < 2 {
            return None;
        }
        let skips: Vec<Option<usize>> = if len == 2 {
            vec![None]
        } else {
            (0..len).map(Some).collect()
        };
        skips.into_iter().find_map(|skip| {
            let subset: Vec<u32> = self
                .weights
                .iter()
                .enumerate()
                .filter(|&(i, _)| Some(i) != skip)
                .map(|(_, &a)| a)
                .collect();
            let g = subset.iter().fold(0u32, |g, &a| g.gcd(&a));
            (g > 1).then_some((subset, g))
        })
    }

    pub fn is_well_formed(&self) -> bool {
        self.weights.len() >= 2 && self.well_formed_violation().is_none()
    }

    pub fn check_well_formed(&self) -> Result<()> {
        if self.weights.len() < 2 {
            return Err(Error::InvalidWeights(
                "a weighted projective stack needs at least two weights".into(),
            ));
        }
        match self.well_formed_violation() {
            None => Ok(()),
            Some((subset, gcd)) => Err(Error::NotWellFormed {
                weights: self.weights.clone(),
                subset,
                gcd,
            }),
        }
    }
}

impl fmt::Display for WeightVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.weights.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// An element of `Z_{a_0} x ... x Z_{a_n}`, stored by canonical residues
/// `0 <= chi_i < a_i`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Character {
    residues: Vec<u32>,
}

impl Character {
    pub fn residues(&self) -> &[u32] {
        &self.residues
    }

    /// `|chi|`, the sum of canonical representatives.
    pub fn norm(&self) -> i64 {
        self.residues.iter().map(|&r| r as i64).sum()
    }

    pub fn support(&self) -> Vec<usize> {
        self.residues
            .iter()
            .enumerate()
            .filter(|&(_, &r)| r != 0)
            .map(|(i, _)| i)
            .collect()
    }

    pub fn is_trivial(&self) -> bool {
        self.residues.iter().all(|&r| r == 0)
    }
}

impl fmt::Display for Character {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.residues.iter().map(|a| a.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// The character group `G* = Z_{a_0} x ... x Z_{a_n}` of
/// `G = mu_{a_0} x ... x mu_{a_n}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct CharacterGroup {
    moduli: Vec<u32>,
}

impl CharacterGroup {
    pub fn new(moduli: Vec<u32>) -> Self {
        assert!(moduli.iter().all(|&m| m >= 1));
        CharacterGroup { moduli }
    }

    pub fn of_weights(w: &WeightVector) -> Self {
        Self::new(w.weights().to_vec())
    }

    pub fn trivial(len: usize) -> Self {
        Self::new(vec![1; len])
    }

    pub fn moduli(&self) -> &[u32] {
        &self.moduli
    }

    pub fn order(&self) -> u64 {
        self.moduli.iter().map(|&m| m as u64).product()
    }

    pub fn is_trivial(&self) -> bool {
        self.moduli.iter().all(|&m| m == 1)
    }

    pub fn zero(&self) -> Character {
        Character {
            residues: vec![0; self.moduli.len()],
        }
    }

    /// Reduces arbitrary integer exponents modulo the moduli.
    pub fn from_exponents(&self, e: &[i64]) -> Character {
        assert_eq!(e.len(), self.moduli.len());
        Character {
            residues: e
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| x.rem_euclid(m as i64) as u32)
                .collect(),
        }
    }

    pub fn basis(&self, i: usize) -> Character {
        let mut e = vec![0i64; self.moduli.len()];
        e[i] = 1;
        self.from_exponents(&e)
    }

    pub fn add(&self, a: &Character, b: &Character) -> Character {
        Character {
            residues: a
                .residues
                .iter()
                .zip(&b.residues)
                .zip(&self.moduli)
                .map(|((&x, &y), &m)| (x + y) % m)
                .collect(),
        }
    }

    pub fn scale(&self, a: &Character, k: i64) -> Character {
        let e: Vec<i64> = a.residues.iter().map(|&r| r as i64 * k).collect();
        self.from_exponents(&e)
    }

    pub fn neg(&self, a: &Character) -> Character {
        Character {
            residues: a
                .residues
                .iter()
                .zip(&self.moduli)
                .map(|(&x, &m)| (m - x) % m)
                .collect(),
        }
    }

    pub fn sub(&self, a: &Character, b: &Character) -> Character {
        self.add(a, &self.neg(b))
    }

    /// All characters, lexicographic in residues.
    pub fn elements(&self) -> Vec<Character> {
        let mut out = vec![Vec::new()];
        for &m in &self.moduli {
            out = out
                .into_iter()
                .flat_map(|prefix: Vec<u32>| {
                    (0..m).map(move |r| {
                        let mut p = prefix.clone();
                        p.push(r);
                        p
                    })
                })
                .collect();
        }
        out.into_iter()
            .map(|residues| Character { residues })
            .collect()
    }

    /// Character from explicit residues, validated against the moduli.
    pub fn character(&self, residues: Vec<u32>) -> Result<Character> {
        if residues.len() != self.moduli.len()
            || residues.iter().zip(&self.moduli).any(|(&r, &m)| r >= m)
        {
            return Err(Error::InvalidWeights(format!(
                "residues {residues:?} do not fit moduli {:?}",
                self.moduli
            )));
        }
        Ok(Character { residues })
    }
}
