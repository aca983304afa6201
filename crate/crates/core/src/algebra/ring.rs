use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use super::linalg::Matrix;
use super::poly::{monomial_basis, Monomial, Poly};
use super::weights::{Character, CharacterGroup, WeightVector};
use crate::error::{Error, Result};

/// Monomial basis of one graded piece, with a lookup table and the
/// character label of every monomial.
#[derive(Debug)]
pub struct MonomialBasis {
    degree: i64,
    monomials: Vec<Monomial>,
    index: HashMap<Monomial, usize>,
    labels: Vec<Character>,
}

impl MonomialBasis {
    pub fn degree(&self) -> i64 {
        self.degree
    }

    pub fn len(&self) -> usize {
        self.monomials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.monomials.is_empty()
    }

    pub fn monomials(&self) -> &[Monomial] {
        &self.monomials
    }

    pub fn get(&self, i: usize) -> &Monomial {
        &self.monomials[i]
    }

    pub fn index_of(&self, m: &Monomial) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn label(&self, i: usize) -> &Character {
        &self.labels[i]
    }
}

struct RingInner {
    weights: WeightVector,
    group: CharacterGroup,
    var_labels: Vec<Character>,
    bases: Mutex<HashMap<i64, Arc<MonomialBasis>>>,
}

/// A weighted polynomial ring together with a diagonal action of a finite
/// abelian group: every variable carries a character. The plain weighted
/// ring `S` uses the trivial group; the cover ring `T` of the weighted
/// projective stack has all weights one and `x_i` of character `e_i`.
#[derive(Clone)]
pub struct Ring(Arc<RingInner>);

impl fmt::Debug for Ring {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ring")
            .field("weights", &self.0.weights)
            .field("group", &self.0.group.moduli())
            .finish()
    }
}

impl PartialEq for Ring {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.weights == other.0.weights
                && self.0.group == other.0.group
                && self.0.var_labels == other.0.var_labels)
    }
}

impl Eq for Ring {}

impl Ring {
    fn build(weights: WeightVector, group: CharacterGroup, var_labels: Vec<Character>) -> Self {
        Ring(Arc::new(RingInner {
            weights,
            group,
            var_labels,
            bases: Mutex::new(HashMap::new()),
        }))
    }

    /// The weighted polynomial ring with trivial group action.
    pub fn weighted(weights: WeightVector) -> Self {
        let group = CharacterGroup::trivial(weights.len());
        let labels = vec![group.zero(); weights.len()];
        Self::build(weights, group, labels)
    }

    /// The standard-graded cover ring `Q[y_0..y_n]` with `G` acting by
    /// `y_i -> zeta_i y_i`, where `zeta_i` is a primitive `a_i`-th root.
    pub fn cover(weights: &WeightVector) -> Self {
        let group = CharacterGroup::of_weights(weights);
        let labels = (0..weights.len()).map(|i| group.basis(i)).collect();
        Self::build(WeightVector::standard(weights.len()), group, labels)
    }

    pub fn weights(&self) -> &WeightVector {
        &self.0.weights
    }

    pub fn nvars(&self) -> usize {
        self.0.weights.len()
    }

    pub fn group(&self) -> &CharacterGroup {
        &self.0.group
    }

    pub fn var_label(&self, i: usize) -> &Character {
        &self.0.var_labels[i]
    }

    pub fn is_equivariant(&self) -> bool {
        !self.0.group.is_trivial()
    }

    pub fn label_of(&self, m: &Monomial) -> Character {
        let g = &self.0.group;
        m.exponents()
            .iter()
            .zip(&self.0.var_labels)
            .fold(g.zero(), |acc, (&e, l)| g.add(&acc, &g.scale(l, e as i64)))
    }

    /// Monomial basis of `S_d` (cached, write-once per degree).
    pub fn basis(&self, d: i64) -> Arc<MonomialBasis> {
        if let Some(b) = self.0.bases.lock().expect("basis cache").get(&d) {
            return Arc::clone(b);
        }
        let monomials = monomial_basis(&self.0.weights, d);
        let index = monomials
            .iter()
            .enumerate()
            .map(|(i, m)| (m.clone(), i))
            .collect();
        let labels = monomials.iter().map(|m| self.label_of(m)).collect();
        let b = Arc::new(MonomialBasis {
            degree: d,
            monomials,
            index,
            labels,
        });
        let mut cache = self.0.bases.lock().expect("basis cache");
        Arc::clone(cache.entry(d).or_insert(b))
    }

    pub fn dim(&self, d: i64) -> usize {
        self.basis(d).len()
    }

    pub fn parse(&self, text: &str) -> Result<Poly> {
        Poly::parse(text, self.nvars())
    }

    pub fn degree_of(&self, f: &Poly) -> Result<Option<i64>> {
        f.homogeneous_degree(&self.0.weights)
    }

    /// Coordinates of a homogeneous polynomial of degree `d` in the basis
    /// of `S_d`.
    pub fn coordinates(&self, f: &Poly, d: i64) -> Result<Vec<super::linalg::Rational>> {
        let b = self.basis(d);
        let mut v = vec![super::linalg::Rational::zero(); b.len()];
        for (m, c) in f.terms() {
            let i = b.index_of(m).ok_or_else(|| {
                Error::Inhomogeneous(format!("term {m} of {f} is not of degree {d}"))
            })?;
            v[i] = c.clone();
        }
        Ok(v)
    }

    /// Matrix of multiplication by `f` (homogeneous of degree `e`) from the
    /// degree-`d` basis to the degree-`d+e` basis.
    pub fn mult_map_with_degree(&self, f: &Poly, e: i64, d: i64) -> Result<Matrix> {
        if !f.is_homogeneous_of(&self.0.weights, e) {
            return Err(Error::InhomogeneousMultiplier(format!(
                "{f} is not homogeneous of degree {e}"
            )));
        }
        let src = self.basis(d);
        let dst = self.basis(d + e);
        let mut m = Matrix::zeros(dst.len(), src.len());
        for (j, mono) in src.monomials().iter().enumerate() {
            for (t, c) in f.terms() {
                let i = dst
                    .index_of(&mono.mul(t))
                    .expect("product lies in target degree");
                m.add_to(i, j, c);
            }
        }
        Ok(m)
    }

    pub fn mult_map(&self, f: &Poly, d: i64) -> Result<Matrix> {
        match f.homogeneous_degree(&self.0.weights) {
            Ok(Some(e)) => self.mult_map_with_degree(f, e, d),
            Ok(None) => Err(Error::InhomogeneousMultiplier(
                "the zero polynomial has no degree; use mult_map_with_degree".into(),
            )),
            Err(Error::Inhomogeneous(msg)) => Err(Error::InhomogeneousMultiplier(msg)),
            Err(e) => Err(e),
        }
    }
}

/// Character of a monomial under `mu_{a_0} x ... x mu_{a_n}` acting
/// diagonally on the variables: exponents reduced modulo the weights.
pub fn character_of(w: &WeightVector, m: &Monomial) -> Character {
    let g = CharacterGroup::of_weights(w);
    let e: Vec<i64> = m.exponents().iter().map(|&x| x as i64).collect();
    g.from_exponents(&e)
}
