//! Turning job fields into library objects.

use diagres::algebra::{Poly, Ring, WeightVector};
use diagres::complexes::{ChainMap, ComplexOfComplexes, FreeComplex};
use diagres::graded::{Generator, GradedAlgebra, GradedModule, PolyMatrix};
use diagres::koszul::{veronese, PiecewiseAlgebra};

use crate::error::CliError;
use crate::job::{ComplexSpec, JobSpec, MapSpec, ModuleSpec};

pub fn weights(job: &JobSpec) -> Result<WeightVector, CliError> {
    let w = job
        .weights
        .clone()
        .ok_or_else(|| CliError::validation("weights required"))?;
    Ok(WeightVector::new(w)?)
}

pub fn stack_weights(job: &JobSpec) -> Result<WeightVector, CliError> {
    let w = weights(job)?;
    w.check_well_formed()?;
    Ok(w)
}

pub fn ring(job: &JobSpec) -> Result<Ring, CliError> {
    Ok(Ring::weighted(weights(job)?))
}

fn parse(ring: &Ring, text: &str) -> Result<Poly, CliError> {
    ring.parse(text)
        .map_err(|e| CliError::validation(format!("in \"{text}\": {e}")))
}

pub fn algebra(job: &JobSpec) -> Result<GradedAlgebra, CliError> {
    let r = ring(job)?;
    if job.relations.is_empty() {
        return Ok(GradedAlgebra::polynomial(r));
    }
    let rels = job
        .relations
        .iter()
        .map(|s| parse(&r, s))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GradedAlgebra::quotient(r, rels)?)
}

pub fn piecewise(job: &JobSpec) -> Result<PiecewiseAlgebra, CliError> {
    let a = algebra(job)?;
    match job.veronese {
        None | Some(1) => Ok(PiecewiseAlgebra::from(a)),
        Some(d) => Ok(veronese(&a, d)?),
    }
}

/// The job's module, or the algebra itself when none is given.
pub fn module(job: &JobSpec, alg: &GradedAlgebra) -> Result<GradedModule, CliError> {
    let spec = job.module.clone().unwrap_or(ModuleSpec {
        generators: vec![0],
        relations: Vec::new(),
        twist: 0,
    });
    let r = alg.ring();
    let zero = r.group().zero();
    let gens: Vec<Generator> = spec
        .generators
        .iter()
        .map(|&d| Generator::new(d, zero.clone()))
        .collect();
    let mut cols = Vec::new();
    for (k, rel) in spec.relations.iter().enumerate() {
        if rel.len() != gens.len() {
            return Err(CliError::validation(format!(
                "module relation {k} has {} entries for {} generators",
                rel.len(),
                gens.len()
            )));
        }
        let entries = rel
            .iter()
            .map(|s| parse(r, s))
            .collect::<Result<Vec<_>, _>>()?;
        let mut degree = None;
        for (j, p) in entries.iter().enumerate() {
            if let Some(d) = r.degree_of(p)? {
                let total = d + gens[j].degree;
                if degree.is_some_and(|x| x != total) {
                    return Err(CliError::validation(format!(
                        "module relation {k} is not homogeneous"
                    )));
                }
                degree = Some(total);
            }
        }
        if let Some(d) = degree {
            cols.push((d, entries));
        }
    }
    let m = GradedModule::new(alg, gens, cols)?;
    Ok(if spec.twist == 0 {
        m
    } else {
        m.twist(spec.twist)
    })
}

/// A module over the polynomial ring, as the sheaf computations need.
pub fn polynomial_module(job: &JobSpec) -> Result<GradedModule, CliError> {
    if !job.relations.is_empty() {
        return Err(CliError::validation(
            "relations of the algebra are not allowed here; present the quotient as a module",
        ));
    }
    module(job, &algebra(job)?)
}

fn matrix(
    ring: &Ring,
    rows: &[Vec<String>],
    nrows: usize,
    ncols: usize,
    what: &str,
) -> Result<PolyMatrix, CliError> {
    if rows.len() != nrows || rows.iter().any(|r| r.len() != ncols) {
        return Err(CliError::validation(format!(
            "{what} must be {nrows}x{ncols}"
        )));
    }
    let mut m = PolyMatrix::zeros(nrows, ncols, ring.nvars());
    for (i, row) in rows.iter().enumerate() {
        for (j, s) in row.iter().enumerate() {
            m.set(i, j, parse(ring, s)?);
        }
    }
    Ok(m)
}

pub fn complex(ring: &Ring, spec: &ComplexSpec, what: &str) -> Result<FreeComplex, CliError> {
    let zero = ring.group().zero();
    let terms: Vec<Vec<Generator>> = spec
        .terms
        .iter()
        .map(|t| t.iter().map(|&d| Generator::new(d, zero.clone())).collect())
        .collect();
    let expected = terms.len().saturating_sub(1);
    if spec.differentials.len() != expected {
        return Err(CliError::validation(format!(
            "{what}: {} terms need {expected} differentials",
            terms.len()
        )));
    }
    let diffs = spec
        .differentials
        .iter()
        .enumerate()
        .map(|(k, rows)| {
            let name = format!("{what} differential d_{}", spec.lo + k as i64 + 1);
            matrix(ring, rows, terms[k].len(), terms[k + 1].len(), &name)
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FreeComplex::new(ring, spec.lo, terms, diffs)?)
}

pub fn chain_map(
    ring: &Ring,
    src: &FreeComplex,
    tgt: &FreeComplex,
    spec: &MapSpec,
    what: &str,
) -> Result<ChainMap, CliError> {
    let comps = spec
        .components
        .iter()
        .map(|c| {
            let name = format!("{what} at index {}", c.index);
            Ok((
                c.index,
                matrix(ring, &c.matrix, tgt.rank(c.index), src.rank(c.index), &name)?,
            ))
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(ChainMap::new(src, tgt, comps)?)
}

pub fn sequence(job: &JobSpec) -> Result<ComplexOfComplexes, CliError> {
    let r = ring(job)?;
    let objects = job
        .objects
        .iter()
        .enumerate()
        .map(|(p, s)| complex(&r, s, &format!("a_{p}")))
        .collect::<Result<Vec<_>, _>>()?;
    if job.maps.len() + 1 != objects.len() {
        return Err(CliError::validation(format!(
            "{} objects need {} maps",
            objects.len(),
            objects.len().saturating_sub(1)
        )));
    }
    let maps = job
        .maps
        .iter()
        .enumerate()
        .map(|(k, m)| chain_map(&r, &objects[k + 1], &objects[k], m, &format!("d_{}", k + 1)))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(ComplexOfComplexes::new(objects, maps)?)
}
