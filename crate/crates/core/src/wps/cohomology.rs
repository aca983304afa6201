use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{Character, CharacterGroup, Poly, Ring, WeightVector};
use crate::complexes::FreeComplex;
use crate::error::{Error, Result};
use crate::graded::{resolve, Generator, GradedAlgebra, GradedModule, PolyMatrix};

/// How `h^0` treats the part of a module that its sheaf does not see.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum FiniteLength {
    /// Cohomology of the associated sheaf: finite-length modules give zero.
    #[default]
    Sheaf,
    /// `h^0(k) = dim M_k`; higher cohomology as for the sheaf.
    Module,
}

/// Which of `χ` and `-χ` eigenspaces are reported under the name `χ`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CharacterConvention {
    #[default]
    Chi,
    MinusChi,
}

impl CharacterConvention {
    pub fn apply(self, g: &CharacterGroup, chi: &Character) -> Character {
        match self {
            CharacterConvention::Chi => chi.clone(),
            CharacterConvention::MinusChi => g.neg(chi),
        }
    }
}

/// Sheaf cohomology of `M~(k)` on `Proj` of a polynomial ring in `n + 1`
/// variables, by local duality: with `ω` the canonical module and
/// `E^j = Ext^j(M, ω)`,
/// `h^q(k) = dim E^{n-q}_{-k}` for `q ≥ 1` and
/// `h^0(k) = dim M_k - dim E^{n+1}_{-k} + dim E^n_{-k}`.
/// On a labeled ring the same holds eigenspace by eigenspace, pairing the
/// `ψ`-part of cohomology with the `-ψ`-part of `Ext`.
#[derive(Clone, Debug)]
pub struct Cohomology {
    module: GradedModule,
    dual: FreeComplex,
    n: usize,
    convention: FiniteLength,
}

impl Cohomology {
    pub fn new(m: &GradedModule, convention: FiniteLength) -> Result<Self> {
        let res = resolve(m)?;
        Ok(Cohomology {
            module: m.clone(),
            dual: {
                let (deg, lab) = canonical_twist(m.ring());
                dual_complex(&res, m.ring(), deg, &lab)
            },
            n: m.ring().nvars() - 1,
            convention,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    fn assemble(&self, m_k: usize, ext: impl Fn(usize) -> usize) -> Vec<usize> {
        let n = self.n;
        let mut h = vec![0; n + 1];
        for (q, x) in h.iter_mut().enumerate().skip(1) {
            *x = ext(n - q);
        }
        h[0] = match self.convention {
            FiniteLength::Module => m_k,
            FiniteLength::Sheaf => m_k + ext(n) - ext(n + 1),
        };
        h
    }

    /// `(h^0, …, h^n)` of `M~(k)`.
    pub fn total(&self, k: i64) -> Vec<usize> {
        let m_k = self.module.dim(k);
        self.assemble(m_k, |j| self.dual.homology_strand(-(j as i64), -k))
    }

    /// The `ψ`-eigenspace dimensions of `H^q(M~(k))`.
    pub fn eigen(&self, k: i64, psi: &Character) -> Vec<usize> {
        let g = self.module.ring().group();
        let m_k = self.module.piece(k).dim_of_label(psi);
        let minus = g.neg(psi);
        self.assemble(m_k, |j| {
            self.dual.homology_strand_of_label(-(j as i64), -k, &minus)
        })
    }

    pub fn by_character(&self, k: i64) -> BTreeMap<Character, Vec<usize>> {
        self.module
            .ring()
            .group()
            .elements()
            .into_iter()
            .map(|psi| {
                let h = self.eigen(k, &psi);
                (psi, h)
            })
            .collect()
    }
}

/// `Hom(F, R(-deg))` with character shifted by `lab`, as a homological
/// complex: `F_j` becomes index `-j` and generator `(g, λ)` becomes
/// `(deg - g, lab - λ)`.
pub(crate) fn dual_complex(
    f: &FreeComplex,
    ring: &Ring,
    deg_w: i64,
    lab_w: &Character,
) -> FreeComplex {
    if f.is_zero() {
        return FreeComplex::zero(ring);
    }
    let g = ring.group();
    let dual_gens = |j: i64| -> Vec<Generator> {
        f.term(j)
            .iter()
            .map(|x| Generator::new(deg_w - x.degree, g.sub(lab_w, &x.label)))
            .collect()
    };
    let (lo, hi) = (f.lo(), f.hi());
    let terms: Vec<Vec<Generator>> = (lo..=hi).rev().map(dual_gens).collect();
    let diffs: Vec<PolyMatrix> = (lo + 1..=hi)
        .rev()
        .map(|j| f.differential(j).transpose())
        .collect();
    FreeComplex::new(ring, -hi, terms, diffs).expect("dual of a complex is a complex")
}

/// Degree and character of the generator of the canonical module: the sum
/// of the variable degrees and of the variable characters.
pub fn canonical_twist(ring: &Ring) -> (i64, Character) {
    let g = ring.group();
    let lab = (0..ring.nvars()).fold(g.zero(), |acc, i| g.add(&acc, ring.var_label(i)));
    (ring.weights().sigma(), lab)
}

/// `(h^0, …, h^n)` of `M~(k)` on the stack of the module's ring.
pub fn module_cohomology(m: &GradedModule, k: i64, convention: FiniteLength) -> Result<Vec<usize>> {
    Ok(Cohomology::new(m, convention)?.total(k))
}

/// The cover ring `T` of `P(w)` as an algebra.
pub fn cover_algebra(w: &WeightVector) -> GradedAlgebra {
    GradedAlgebra::polynomial(Ring::cover(w))
}

/// `a^# = a ⊗_S T` along `x_i ↦ x̃_i^{a_i}`: the same generators, relations
/// pulled back.
pub fn pull_back(a: &GradedModule, t: &GradedAlgebra) -> Result<GradedModule> {
    let w = a.ring().weights().clone();
    if a.ring().is_equivariant() {
        return Err(Error::Unsupported(
            "pull-back expects a module over the weighted ring".into(),
        ));
    }
    if t.ring().nvars() != a.ring().nvars() {
        return Err(Error::DimensionMismatch(
            "cover ring has a different number of variables".into(),
        ));
    }
    let z = t.ring().group().zero();
    let gens = a
        .gens()
        .iter()
        .map(|g| Generator::new(g.degree, z.clone()))
        .collect();
    let cols = a
        .polynomial_relations()
        .iter()
        .map(|r| {
            (
                r.degree,
                r.entries.iter().map(|p| p.pull_back(&w)).collect(),
            )
        })
        .collect();
    GradedModule::new(t, gens, cols)
}

fn subsets(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        go(0, n, k, &mut Vec::new(), &mut out);
    }
    out
}

/// The `p`-element subsets of `0..n` in lexicographic order.
pub fn exterior_basis(n: usize, p: usize) -> Vec<Vec<usize>> {
    subsets(n, p)
}

/// Character of `dx̃_I`.
pub fn exterior_label(ring: &Ring, subset: &[usize]) -> Character {
    let g = ring.group();
    subset
        .iter()
        .fold(g.zero(), |acc, &i| g.add(&acc, ring.var_label(i)))
}

/// `Ω^p` on the projective space of a standard-graded ring, presented as
/// `coker(Λ^{p+2} ⊗ T(-p-2) → Λ^{p+1} ⊗ T(-p-1))`; the generator `e_I`
/// carries the character of `dx̃_I`.
pub fn omega_module(t: &GradedAlgebra, p: usize) -> Result<GradedModule> {
    let ring = t.ring();
    let nv = ring.nvars();
    if !ring.weights().is_standard() {
        return Err(Error::Unsupported(
            "Ω^p is built over a standard-graded ring".into(),
        ));
    }
    if p >= nv {
        return Err(Error::Unsupported(format!(
            "Ω^{p} on P^{} vanishes",
            nv - 1
        )));
    }
    let gens_idx = subsets(nv, p + 1);
    let gens = gens_idx
        .iter()
        .map(|s| Generator::new(p as i64 + 1, exterior_label(ring, s)))
        .collect();
    let cols = subsets(nv, p + 2)
        .iter()
        .map(|big| {
            let mut col = vec![Poly::zero(nv); gens_idx.len()];
            for (k, &j) in big.iter().enumerate() {
                let rest: Vec<usize> = big.iter().copied().filter(|&x| x != j).collect();
                let idx = gens_idx.binary_search(&rest).expect("subset is listed");
                let x = Poly::var(nv, j);
                col[idx] = if k % 2 == 0 { x } else { x.neg() };
            }
            (p as i64 + 2, col)
        })
        .collect();
    GradedModule::new(t, gens, cols)
}

/// `M ⊗ N` for modules presented over the same polynomial ring.
pub fn tensor(m: &GradedModule, n: &GradedModule) -> Result<GradedModule> {
    let ring = m.ring();
    if ring != n.ring() {
        return Err(Error::DimensionMismatch(
            "tensor of modules over different rings".into(),
        ));
    }
    let g = ring.group();
    let nv = ring.nvars();
    let (gm, gn) = (m.gens(), n.gens());
    let gens = gm
        .iter()
        .flat_map(|a| {
            gn.iter()
                .map(move |b| Generator::new(a.degree + b.degree, g.add(&a.label, &b.label)))
        })
        .collect::<Vec<_>>();
    let idx = |i: usize, j: usize| i * gn.len() + j;
    let mut cols = Vec::new();
    for r in m.polynomial_relations() {
        for (j, b) in gn.iter().enumerate() {
            let mut col = vec![Poly::zero(nv); gens.len()];
            for (i, p) in r.entries.iter().enumerate() {
                col[idx(i, j)] = p.clone();
            }
            cols.push((r.degree + b.degree, col));
        }
    }
    for r in n.polynomial_relations() {
        for (i, a) in gm.iter().enumerate() {
            let mut col = vec![Poly::zero(nv); gens.len()];
            for (j, p) in r.entries.iter().enumerate() {
                col[idx(i, j)] = p.clone();
            }
            cols.push((r.degree + a.degree, col));
        }
    }
    GradedModule::new(m.algebra(), gens, cols)
}

/// `H^q(P^n, Ω^p(t))^χ` on the cover of `P(w)`, for every character.
pub fn bott_eigen(w: &WeightVector, p: usize, t: i64) -> Result<BTreeMap<Character, Vec<usize>>> {
    w.check_well_formed()?;
    let alg = cover_algebra(w);
    let omega = omega_module(&alg, p)?;
    Ok(Cohomology::new(&omega, FiniteLength::Sheaf)?.by_character(t))
}
