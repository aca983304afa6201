use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex};

use num_traits::Zero;

use super::free::{check_homogeneous, FreePiece, Generator, PolyMatrix};
use crate::algebra::{Character, EchelonBasis, Matrix, Monomial, Poly, Rational, Ring};
use crate::error::{Error, Result};

/// A homogeneous relation among module generators: one polynomial per
/// generator, of total degree `degree` and character `label`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub degree: i64,
    pub label: Character,
    pub entries: Vec<Poly>,
}

struct LabelBlock {
    coords: Vec<usize>,
    echelon: EchelonBasis,
}

/// One graded piece `M_d`, presented as the quotient of
/// `⊕_j S_{d - g_j}` by the degree-`d` span of the relations. The basis is
/// the set of non-pivot ambient monomials, so it is deterministic and every
/// basis element is a monomial multiple of a generator.
pub struct ModulePiece {
    ambient: FreePiece,
    blocks: BTreeMap<Character, LabelBlock>,
    basis: Vec<usize>,
}

impl ModulePiece {
    fn build(ring: &Ring, gens: &[Generator], relations: &[Relation], d: i64) -> Self {
        let ambient = FreePiece::new(ring, gens, d);
        let mut coords: BTreeMap<Character, Vec<usize>> = BTreeMap::new();
        for (i, l) in ambient.labels.iter().enumerate() {
            coords.entry(l.clone()).or_default().push(i);
        }
        let mut blocks: BTreeMap<Character, LabelBlock> = coords
            .into_iter()
            .map(|(l, coords)| {
                let echelon = EchelonBasis::untracked(coords.len());
                (l, LabelBlock { coords, echelon })
            })
            .collect();
        let g = ring.group();
        for rel in relations {
            let b = ring.basis(d - rel.degree);
            for (k, m) in b.monomials().iter().enumerate() {
                let label = g.add(b.label(k), &rel.label);
                let Some(block) = blocks.get_mut(&label) else {
                    continue;
                };
                let elem: Vec<Poly> = rel.entries.iter().map(|p| p.mul_monomial(m)).collect();
                let v = ambient
                    .coordinates(ring, gens, &elem)
                    .expect("relations are homogeneous");
                let mut lv = vec![Rational::zero(); block.coords.len()];
                for (li, &gi) in block.coords.iter().enumerate() {
                    lv[li] = v[gi].clone();
                }
                block.echelon.insert(&lv);
            }
        }
        let mut basis = Vec::new();
        for block in blocks.values() {
            let mut pivot = vec![false; block.coords.len()];
            for &p in block.echelon.pivots() {
                pivot[p] = true;
            }
            basis.extend(
                block
                    .coords
                    .iter()
                    .enumerate()
                    .filter(|&(li, _)| !pivot[li])
                    .map(|(_, &gi)| gi),
            );
        }
        basis.sort_unstable();
        ModulePiece {
            ambient,
            blocks,
            basis,
        }
    }

    pub fn degree(&self) -> i64 {
        self.ambient.degree
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> &FreePiece {
        &self.ambient
    }

    /// Basis element `i` as (generator index, monomial multiplier).
    pub fn element(&self, i: usize) -> &(usize, Monomial) {
        &self.ambient.elements[self.basis[i]]
    }

    pub fn label(&self, i: usize) -> &Character {
        &self.ambient.labels[self.basis[i]]
    }

    pub fn labels(&self) -> Vec<Character> {
        (0..self.dim()).map(|i| self.label(i).clone()).collect()
    }

    pub fn dim_of_label(&self, chi: &Character) -> usize {
        (0..self.dim()).filter(|&i| self.label(i) == chi).count()
    }

    /// Quotient coordinates of an ambient vector.
    pub fn reduce(&self, v: &[Rational]) -> Vec<Rational> {
        let mut reduced = v.to_vec();
        for block in self.blocks.values() {
            if block.coords.iter().all(|&gi| v[gi].is_zero()) {
                continue;
            }
            let lv: Vec<Rational> = block.coords.iter().map(|&gi| v[gi].clone()).collect();
            let r = block.echelon.reduce(&lv);
            for (li, &gi) in block.coords.iter().enumerate() {
                reduced[gi] = r[li].clone();
            }
        }
        self.basis.iter().map(|&gi| reduced[gi].clone()).collect()
    }

    /// Whether an ambient vector lies in the relation span.
    pub fn is_zero_class(&self, v: &[Rational]) -> bool {
        self.reduce(v).iter().all(Zero::is_zero)
    }
}

struct AlgebraInner {
    ring: Ring,
    relations: Vec<Relation>,
    pieces: Mutex<HashMap<i64, Arc<ModulePiece>>>,
}

/// `A = S/I` for a homogeneous ideal `I` of a (possibly equivariant)
/// weighted polynomial ring.
#[derive(Clone)]
pub struct GradedAlgebra(Arc<AlgebraInner>);

impl std::fmt::Debug for GradedAlgebra {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedAlgebra")
            .field("ring", &self.0.ring)
            .field("relations", &self.0.relations.len())
            .finish()
    }
}

fn unit_generator(ring: &Ring) -> Generator {
    Generator::new(0, ring.group().zero())
}

fn relation_label(ring: &Ring, gens: &[Generator], entries: &[Poly]) -> Result<Character> {
    let g = ring.group();
    let mut label = None;
    for (j, p) in entries.iter().enumerate() {
        for (m, _) in p.terms() {
            let l = g.add(&ring.label_of(m), &gens[j].label);
            match &label {
                None => label = Some(l),
                Some(l0) if *l0 != l => {
                    return Err(Error::Inhomogeneous(format!(
                        "relation mixes characters {l0} and {l}"
                    )))
                }
                _ => {}
            }
        }
    }
    Ok(label.unwrap_or_else(|| g.zero()))
}

impl GradedAlgebra {
    pub fn polynomial(ring: Ring) -> Self {
        Self::quotient(ring, Vec::new()).expect("no relations to check")
    }

    pub fn quotient(ring: Ring, relations: Vec<Poly>) -> Result<Self> {
        let gens = [unit_generator(&ring)];
        let mut rels = Vec::new();
        for f in relations {
            if f.nvars() != ring.nvars() {
                return Err(Error::DimensionMismatch(format!(
                    "relation {f} uses {} variables, ring has {}",
                    f.nvars(),
                    ring.nvars()
                )));
            }
            let Some(degree) = ring.degree_of(&f)? else {
                continue;
            };
            let entries = vec![f];
            let label = relation_label(&ring, &gens, &entries)?;
            rels.push(Relation {
                degree,
                label,
                entries,
            });
        }
        Ok(GradedAlgebra(Arc::new(AlgebraInner {
            ring,
            relations: rels,
            pieces: Mutex::new(HashMap::new()),
        })))
    }

    pub fn ring(&self) -> &Ring {
        &self.0.ring
    }

    pub fn nvars(&self) -> usize {
        self.0.ring.nvars()
    }

    /// Ideal generators with their degrees and labels.
    pub fn relations(&self) -> &[Relation] {
        &self.0.relations
    }

    pub fn is_polynomial(&self) -> bool {
        self.0.relations.is_empty()
    }

    /// `A_d` with its standard-monomial basis.
    pub fn piece(&self, d: i64) -> Arc<ModulePiece> {
        if let Some(p) = self.0.pieces.lock().expect("piece cache").get(&d) {
            return Arc::clone(p);
        }
        let p = Arc::new(ModulePiece::build(
            &self.0.ring,
            &[unit_generator(&self.0.ring)],
            &self.0.relations,
            d,
        ));
        let mut cache = self.0.pieces.lock().expect("piece cache");
        Arc::clone(cache.entry(d).or_insert(p))
    }

    pub fn dim(&self, d: i64) -> usize {
        self.piece(d).dim()
    }

    /// The standard monomial representing basis element `i` of `A_d`.
    pub fn basis_monomial(&self, d: i64, i: usize) -> Monomial {
        self.piece(d).element(i).1.clone()
    }

    /// Coordinates in `A_d` of a polynomial homogeneous of degree `d`.
    pub fn reduce_poly(&self, f: &Poly, d: i64) -> Result<Vec<Rational>> {
        let p = self.piece(d);
        let v = p.ambient().coordinates(
            &self.0.ring,
            &[unit_generator(&self.0.ring)],
            std::slice::from_ref(f),
        )?;
        Ok(p.reduce(&v))
    }

    /// Product of basis element `i` of `A_d` and basis element `j` of `A_e`,
    /// in coordinates of `A_{d+e}`.
    pub fn product(&self, d: i64, i: usize, e: i64, j: usize) -> Vec<Rational> {
        let m = self.basis_monomial(d, i).mul(&self.basis_monomial(e, j));
        let p = self.piece(d + e);
        let mut v = vec![Rational::zero(); p.ambient().dim()];
        let idx = self
            .0
            .ring
            .basis(d + e)
            .index_of(&m)
            .expect("product has the summed degree");
        v[idx] = Rational::from_integer(1.into());
        p.reduce(&v)
    }
}

struct ModuleInner {
    algebra: GradedAlgebra,
    gens: Vec<Generator>,
    relations: Vec<Relation>,
    pieces: Mutex<HashMap<i64, Arc<ModulePiece>>>,
}

/// A finitely presented graded module `coker(⊕ A(-r_k) → ⊕ A(-g_j))`.
#[derive(Clone)]
pub struct GradedModule(Arc<ModuleInner>);

impl std::fmt::Debug for GradedModule {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("GradedModule")
            .field("gens", &self.0.gens)
            .field("relations", &self.0.relations.len())
            .finish()
    }
}

impl GradedModule {
    fn build(algebra: GradedAlgebra, gens: Vec<Generator>, relations: Vec<Relation>) -> Self {
        GradedModule(Arc::new(ModuleInner {
            algebra,
            gens,
            relations,
            pieces: Mutex::new(HashMap::new()),
        }))
    }

    pub fn free(algebra: &GradedAlgebra, gens: Vec<Generator>) -> Self {
        Self::build(algebra.clone(), gens, Vec::new())
    }

    /// Free module with trivially labeled generators in the given degrees.
    pub fn free_of_degrees(algebra: &GradedAlgebra, degrees: &[i64]) -> Self {
        let z = algebra.ring().group().zero();
        let gens = degrees
            .iter()
            .map(|&g| Generator::new(g, z.clone()))
            .collect();
        Self::free(algebra, gens)
    }

    /// Module presented by relation columns; each column is given with its
    /// declared degree and must be homogeneous against it.
    pub fn new(
        algebra: &GradedAlgebra,
        gens: Vec<Generator>,
        columns: Vec<(i64, Vec<Poly>)>,
    ) -> Result<Self> {
        let ring = algebra.ring();
        let mut relations = Vec::with_capacity(columns.len());
        for (k, (degree, entries)) in columns.into_iter().enumerate() {
            if entries.len() != gens.len() {
                return Err(Error::DimensionMismatch(format!(
                    "relation column {k} has {} entries for {} generators",
                    entries.len(),
                    gens.len()
                )));
            }
            for (j, p) in entries.iter().enumerate() {
                if p.nvars() != ring.nvars() {
                    return Err(Error::DimensionMismatch(format!(
                        "entry ({j},{k}) uses {} variables, ring has {}",
                        p.nvars(),
                        ring.nvars()
                    )));
                }
                let e = degree - gens[j].degree;
                if !p.is_homogeneous_of(ring.weights(), e) {
                    return Err(Error::Inhomogeneous(format!(
                        "entry ({j},{k}) = {p} is not homogeneous of degree {e}"
                    )));
                }
            }
            let label = relation_label(ring, &gens, &entries)?;
            relations.push(Relation {
                degree,
                label,
                entries,
            });
        }
        Ok(Self::build(algebra.clone(), gens, relations))
    }

    /// Cokernel of a polynomial matrix between free modules.
    pub fn cokernel(
        algebra: &GradedAlgebra,
        gens: Vec<Generator>,
        rel_degrees: &[i64],
        matrix: &PolyMatrix,
    ) -> Result<Self> {
        let columns = rel_degrees
            .iter()
            .enumerate()
            .map(|(k, &r)| (r, matrix.column(k)))
            .collect();
        Self::new(algebra, gens, columns)
    }

    pub fn algebra(&self) -> &GradedAlgebra {
        &self.0.algebra
    }

    pub fn ring(&self) -> &Ring {
        self.0.algebra.ring()
    }

    pub fn gens(&self) -> &[Generator] {
        &self.0.gens
    }

    pub fn relations(&self) -> &[Relation] {
        &self.0.relations
    }

    /// Module relations together with `I·e_j`: the presentation as a module
    /// over the polynomial ring.
    pub fn polynomial_relations(&self) -> Vec<Relation> {
        let g = self.ring().group();
        let n = self.0.gens.len();
        let mut out = self.0.relations.clone();
        for (j, gen) in self.0.gens.iter().enumerate() {
            for f in self.0.algebra.relations() {
                let mut entries = vec![Poly::zero(self.ring().nvars()); n];
                entries[j] = f.entries[0].clone();
                out.push(Relation {
                    degree: gen.degree + f.degree,
                    label: g.add(&gen.label, &f.label),
                    entries,
                });
            }
        }
        out
    }

    /// `M(j)`, with `M(j)_k = M_{j+k}`.
    pub fn twist(&self, j: i64) -> Self {
        let gens = self
            .0
            .gens
            .iter()
            .map(|g| Generator::new(g.degree - j, g.label.clone()))
            .collect();
        let relations = self
            .0
            .relations
            .iter()
            .map(|r| Relation {
                degree: r.degree - j,
                ..r.clone()
            })
            .collect();
        Self::build(self.0.algebra.clone(), gens, relations)
    }

    /// Tensors with a one-dimensional representation of character `chi`.
    pub fn relabel(&self, chi: &Character) -> Self {
        let g = self.ring().group();
        let gens = self
            .0
            .gens
            .iter()
            .map(|x| Generator::new(x.degree, g.add(&x.label, chi)))
            .collect();
        let relations = self
            .0
            .relations
            .iter()
            .map(|r| Relation {
                label: g.add(&r.label, chi),
                ..r.clone()
            })
            .collect();
        Self::build(self.0.algebra.clone(), gens, relations)
    }

    pub fn piece(&self, d: i64) -> Arc<ModulePiece> {
        if let Some(p) = self.0.pieces.lock().expect("piece cache").get(&d) {
            return Arc::clone(p);
        }
        let p = Arc::new(ModulePiece::build(
            self.ring(),
            &self.0.gens,
            &self.polynomial_relations(),
            d,
        ));
        let mut cache = self.0.pieces.lock().expect("piece cache");
        Arc::clone(cache.entry(d).or_insert(p))
    }

    pub fn dim(&self, d: i64) -> usize {
        self.piece(d).dim()
    }

    pub fn hilbert(&self, lo: i64, hi: i64) -> Vec<usize> {
        (lo..=hi).map(|d| self.dim(d)).collect()
    }

    /// Quotient coordinates in `M_d` of an element given per generator.
    pub fn coordinates(&self, elem: &[Poly], d: i64) -> Result<Vec<Rational>> {
        let p = self.piece(d);
        let v = p.ambient().coordinates(self.ring(), &self.0.gens, elem)?;
        Ok(p.reduce(&v))
    }

    /// Matrix of multiplication by the homogeneous polynomial `f` of degree
    /// `e`, from `M_d` to `M_{d+e}`.
    pub fn mult_matrix(&self, f: &Poly, e: i64, d: i64) -> Result<Matrix> {
        if !f.is_homogeneous_of(self.ring().weights(), e) {
            return Err(Error::InhomogeneousMultiplier(format!(
                "{f} is not homogeneous of degree {e}"
            )));
        }
        let src = self.piece(d);
        let dst = self.piece(d + e);
        let ring = self.ring();
        let mut cols = Vec::with_capacity(src.dim());
        for i in 0..src.dim() {
            let (j, m) = src.element(i);
            let mut v = vec![Rational::zero(); dst.ambient().dim()];
            let b = ring.basis(d + e - self.0.gens[*j].degree);
            for (t, c) in f.terms() {
                let idx = b.index_of(&m.mul(t)).expect("degree bookkeeping");
                v[dst.ambient().offsets[*j] + idx] += c;
            }
            cols.push(dst.reduce(&v));
        }
        Ok(Matrix::from_columns(dst.dim(), &cols))
    }
}

/// A homogeneous module map `M → N(s)`, sending `M_d` to `N_{d+s}`; column
/// `c` of `matrix` is the image of generator `c` of `M`.
#[derive(Clone, Debug)]
pub struct GradedMap {
    source: GradedModule,
    target: GradedModule,
    matrix: PolyMatrix,
    shift: i64,
}

impl GradedMap {
    pub fn new(
        source: &GradedModule,
        target: &GradedModule,
        matrix: PolyMatrix,
        shift: i64,
    ) -> Result<Self> {
        let ring = source.ring();
        let shifted: Vec<Generator> = source
            .gens()
            .iter()
            .map(|g| Generator::new(g.degree + shift, g.label.clone()))
            .collect();
        check_homogeneous(ring, &matrix, &shifted, target.gens())?;
        let f = GradedMap {
            source: source.clone(),
            target: target.clone(),
            matrix,
            shift,
        };
        for (k, rel) in source.polynomial_relations().iter().enumerate() {
            let img = f.image_of(&rel.entries);
            if !target
                .coordinates(&img, rel.degree + shift)?
                .iter()
                .all(Zero::is_zero)
            {
                return Err(Error::InvalidChainMap(format!(
                    "relation {k} of the source does not map to zero"
                )));
            }
        }
        Ok(f)
    }

    pub fn source(&self) -> &GradedModule {
        &self.source
    }

    pub fn target(&self) -> &GradedModule {
        &self.target
    }

    pub fn matrix(&self) -> &PolyMatrix {
        &self.matrix
    }

    pub fn shift(&self) -> i64 {
        self.shift
    }

    /// Image of a source element given per source generator.
    pub fn image_of(&self, elem: &[Poly]) -> Vec<Poly> {
        let nv = self.matrix.nvars();
        (0..self.matrix.rows())
            .map(|r| {
                elem.iter().enumerate().fold(Poly::zero(nv), |acc, (c, p)| {
                    acc.add(&self.matrix.get(r, c).mul(p))
                })
            })
            .collect()
    }

    /// The linear map `M_d → N_{d+s}` in piece coordinates.
    pub fn matrix_in_degree(&self, d: i64) -> Matrix {
        let src = self.source.piece(d);
        let dst = self.target.piece(d + self.shift);
        let nv = self.matrix.nvars();
        let ngens = self.source.gens().len();
        let mut cols = Vec::with_capacity(src.dim());
        for i in 0..src.dim() {
            let (j, m) = src.element(i);
            let mut elem = vec![Poly::zero(nv); ngens];
            elem[*j] = Poly::monomial(m.clone());
            let img = self.image_of(&elem);
            let v = dst
                .ambient()
                .coordinates(self.target.ring(), self.target.gens(), &img)
                .expect("homogeneity checked at construction");
            cols.push(dst.reduce(&v));
        }
        Matrix::from_columns(dst.dim(), &cols)
    }

    /// Kernel of `M_d → N_{d+s}`: its dimension and a basis in `M_d`
    /// coordinates.
    pub fn kernel_piece(&self, d: i64) -> (usize, Vec<Vec<Rational>>) {
        let k = self.matrix_in_degree(d).kernel_basis();
        (k.len(), k)
    }
}
