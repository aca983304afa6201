use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Value};

use diagres::algebra::Character;
use diagres::complexes::{
    all_bracketings, convolve_in_order, hom_derived_in_degree, left_convolution, right_convolution,
    totalization, FreeComplex,
};
use diagres::koszul::{b_spaces, diagonal_strand_check, equivariant_strand_check, koszul_check};
use diagres::strand::StrandReport;
use diagres::wps::{
    beilinson_e1, bott_eigen, left_resolution, line_cohomology, right_resolution, stabilizer_cover,
    validate_weights, CharacterConvention, Cohomology, E1Options, ResolutionCertificate,
};

use crate::build;
use crate::error::CliError;
use crate::job::{Command, JobSpec};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Format {
    #[default]
    Human,
    Machine,
}

/// Command-line settings that override fields of the job document.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Overrides {
    pub window: Option<[i64; 2]>,
    pub max_m: Option<i64>,
    pub max_degree: Option<i64>,
    pub character_convention: Option<CharacterConvention>,
    pub n0: Option<i64>,
}

impl Overrides {
    pub fn apply(&self, job: &JobSpec) -> Result<JobSpec, CliError> {
        let mut j = job.clone();
        if let Some(w) = self.window {
            j.window = Some(w);
        }
        if let Some(m) = self.max_m {
            j.max_m = Some(m);
        }
        if let Some(k) = self.max_degree {
            j.max_k = Some(k);
        }
        if let Some(c) = self.character_convention {
            j.character_convention = Some(c);
        }
        if let Some(n0) = self.n0 {
            let [_, hi] = j.window.unwrap_or([n0, n0]);
            j.window = Some([n0, hi.max(n0)]);
        }
        j.validate()?;
        Ok(j)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub machine: Value,
    pub human: String,
}

impl Report {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Human => self.human.clone(),
            Format::Machine => {
                let mut s = serde_json::to_string_pretty(&self.machine).expect("reports serialize");
                s.push('\n');
                s
            }
        }
    }
}

/// Renders a diagnostic for a failed job.
pub fn render_error(e: &CliError, format: Format) -> String {
    match format {
        Format::Human => format!("error: {e}\n"),
        Format::Machine => {
            let mut s =
                serde_json::to_string_pretty(&json!({ "error": e, "exit_code": e.exit_code() }))
                    .expect("diagnostics serialize");
            s.push('\n');
            s
        }
    }
}

/// Left-aligned first column, right-aligned numbers.
fn grid(headers: &[&str], rows: &[Vec<String>]) -> String {
    let ncol = headers.len();
    let mut width: Vec<usize> = headers.iter().map(|h| h.chars().count()).collect();
    for r in rows {
        for (c, x) in r.iter().enumerate() {
            width[c] = width[c].max(x.chars().count());
        }
    }
    let mut out = String::new();
    let line = |cells: Vec<String>, out: &mut String| {
        let parts: Vec<String> = cells
            .iter()
            .enumerate()
            .map(|(c, x)| {
                let pad = width[c] - x.chars().count();
                if c == 0 {
                    format!("{x}{}", " ".repeat(pad))
                } else {
                    format!("{}{x}", " ".repeat(pad))
                }
            })
            .collect();
        let _ = writeln!(out, "{}", parts.join("  ").trim_end());
    };
    line(headers.iter().map(|h| h.to_string()).collect(), &mut out);
    line(
        width.iter().take(ncol).map(|&w| "-".repeat(w)).collect(),
        &mut out,
    );
    for r in rows {
        line(r.clone(), &mut out);
    }
    out
}

fn list<T: ToString>(v: &[T]) -> String {
    let parts: Vec<String> = v.iter().map(T::to_string).collect();
    format!("({})", parts.join(","))
}

fn range(r: [i64; 2]) -> std::ops::RangeInclusive<i64> {
    r[0]..=r[1]
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "exact"
    } else {
        "FAIL"
    }
}

fn strand_json(r: &StrandReport) -> Value {
    json!({
        "strand": r.strand,
        "exact": r.is_exact(),
        "is_complex": r.is_complex,
        "first_failure": r.first_failure,
        "dims": r.positions.iter().map(|p| p.dim).collect::<Vec<_>>(),
        "homology": r.homology().iter().map(|&(i, h)| json!([i, h])).collect::<Vec<_>>(),
    })
}

pub fn run_job(job: &JobSpec) -> Result<Report, CliError> {
    job.validate()?;
    match job.command {
        Command::Hilbert => hilbert(job),
        Command::Cohomology => cohomology(job),
        Command::Bott => bott(job),
        Command::Beilinson => beilinson(job),
        Command::ResolveLeft | Command::ResolveRight => resolve(job),
        Command::KoszulCheck => koszul(job),
        Command::DiagonalCheck => diagonal(job),
        Command::EquivariantCheck => equivariant(job),
        Command::Convolve => convolve(job),
        Command::Hom => hom(job),
        Command::StabilizerCover => stabilizers(job),
    }
}

fn header(job: &JobSpec) -> String {
    format!(
        "{} on weights {}\n",
        job.command.name(),
        list(job.weights.as_deref().unwrap_or(&[]))
    )
}

fn hilbert(job: &JobSpec) -> Result<Report, CliError> {
    let alg = build::algebra(job)?;
    let [lo, hi] = job.range.expect("validated");
    let dims: Vec<usize> = if job.module.is_some() {
        build::module(job, &alg)?.hilbert(lo, hi)
    } else {
        (lo..=hi).map(|d| alg.dim(d)).collect()
    };
    let rows: Vec<Vec<String>> = (lo..=hi)
        .zip(&dims)
        .map(|(d, x)| vec![d.to_string(), x.to_string()])
        .collect();
    Ok(Report {
        machine: json!({
            "command": "hilbert",
            "weights": job.weights,
            "degrees": (lo..=hi).zip(&dims).map(|(d, x)| json!({"degree": d, "dim": x})).collect::<Vec<_>>(),
        }),
        human: header(job) + &grid(&["degree", "dim"], &rows),
    })
}

fn cohomology(job: &JobSpec) -> Result<Report, CliError> {
    let w = build::stack_weights(job)?;
    let ks: Vec<i64> = match (job.k, job.window.or(job.range)) {
        (Some(k), _) => vec![k],
        (None, Some(r)) => range(r).collect(),
        (None, None) => unreachable!("validated"),
    };
    let convention = job.finite_length.unwrap_or_default();
    let hs: Vec<Vec<usize>> = if job.module.is_none() && job.relations.is_empty() {
        ks.iter().map(|&k| line_cohomology(&w, k)).collect()
    } else {
        let engine = Cohomology::new(&build::polynomial_module(job)?, convention)?;
        ks.iter().map(|&k| engine.total(k)).collect()
    };
    let n = w.n();
    let mut headers = vec!["k".to_string()];
    headers.extend((0..=n).map(|q| format!("h^{q}")));
    let headers: Vec<&str> = headers.iter().map(String::as_str).collect();
    let rows: Vec<Vec<String>> = ks
        .iter()
        .zip(&hs)
        .map(|(k, h)| {
            std::iter::once(k.to_string())
                .chain(h.iter().map(usize::to_string))
                .collect()
        })
        .collect();
    Ok(Report {
        machine: json!({
            "command": "cohomology",
            "weights": job.weights,
            "finite_length": convention,
            "rows": ks.iter().zip(&hs).map(|(k, h)| json!({"k": k, "h": h})).collect::<Vec<_>>(),
        }),
        human: header(job) + &grid(&headers, &rows),
    })
}

fn report_character(
    job: &JobSpec,
    g: &diagres::algebra::CharacterGroup,
    psi: &Character,
) -> Character {
    job.character_convention.unwrap_or_default().apply(g, psi)
}

fn bott(job: &JobSpec) -> Result<Report, CliError> {
    let w = build::stack_weights(job)?;
    let (p, t) = (job.p.expect("validated"), job.t.expect("validated"));
    if p as usize > w.n() {
        return Err(CliError::validation(format!("p must lie in 0..={}", w.n())));
    }
    let g = diagres::algebra::CharacterGroup::of_weights(&w);
    let by: BTreeMap<Character, Vec<usize>> = bott_eigen(&w, p as usize, t)?
        .into_iter()
        .map(|(psi, h)| (report_character(job, &g, &psi), h))
        .collect();
    let n = w.n();
    let mut headers = vec!["chi".to_string()];
    headers.extend((0..=n).map(|q| format!("h^{q}")));
    let headers: Vec<&str> = headers.iter().map(String::as_str).collect();
    let rows: Vec<Vec<String>> = by
        .iter()
        .map(|(c, h)| {
            std::iter::once(c.to_string())
                .chain(h.iter().map(usize::to_string))
                .collect()
        })
        .collect();
    Ok(Report {
        machine: json!({
            "command": "bott",
            "weights": job.weights,
            "p": p,
            "t": t,
            "character_convention": job.character_convention.unwrap_or_default(),
            "characters": by.iter().map(|(c, h)| json!({"chi": c.to_string(), "h": h})).collect::<Vec<_>>(),
        }),
        human: header(job)
            + &format!("H^q(Omega^{p}({t}))^chi on the cover\n")
            + &grid(&headers, &rows),
    })
}

fn beilinson(job: &JobSpec) -> Result<Report, CliError> {
    build::stack_weights(job)?;
    let a = build::polynomial_module(job)?;
    let opts = E1Options {
        twist: 0,
        convention: job.character_convention.unwrap_or_default(),
    };
    let table = beilinson_e1(&a, &opts)?;
    Ok(Report {
        machine: json!({
            "command": "beilinson",
            "weights": job.weights,
            "character_convention": opts.convention,
            "entries": table.entries.iter().map(|e| json!({
                "p": e.p, "q": e.q, "chi": e.chi.to_string(), "dim": e.dim,
            })).collect::<Vec<_>>(),
        }),
        human: header(job) + "E_1 table\n" + &table.render(),
    })
}

fn complex_json(c: &FreeComplex) -> Value {
    json!({
        "terms": c.indices().map(|i| json!({"index": i, "generator_degrees": c.twists(i)})).collect::<Vec<_>>(),
        "differentials": (c.lo() + 1..=c.hi()).map(|i| {
            let d = c.differential(i);
            let rows: Vec<Vec<String>> = (0..d.rows()).map(|r| (0..d.cols()).map(|k| d.get(r, k).to_string()).collect()).collect();
            json!({"index": i, "matrix": rows})
        }).collect::<Vec<_>>(),
    })
}

fn resolve(job: &JobSpec) -> Result<Report, CliError> {
    build::stack_weights(job)?;
    let a = build::polynomial_module(job)?;
    let window = range(job.window.expect("validated"));
    let cert: ResolutionCertificate = match job.command {
        Command::ResolveLeft => left_resolution(&a, window)?,
        _ => right_resolution(&a, window)?,
    };
    let mut human = header(job);
    let _ = writeln!(human, "terms (index: generator degrees)");
    for (i, _) in cert.term_ranks() {
        let _ = writeln!(human, "  {i:>3}: {}", list(&cert.complex.twists(i)));
    }
    let rows: Vec<Vec<String>> = cert
        .strands
        .iter()
        .map(|r| {
            let dims: Vec<usize> = r.positions.iter().map(|p| p.dim).collect();
            vec![
                r.strand.clone(),
                list(&dims),
                verdict(r.is_exact()).to_string(),
            ]
        })
        .collect();
    human += &grid(&["strand", "dims", "verdict"], &rows);
    let _ = writeln!(
        human,
        "certificate: {}",
        if cert.is_exact() {
            "exact"
        } else {
            "not exact"
        }
    );
    Ok(Report {
        machine: json!({
            "command": job.command.name(),
            "weights": job.weights,
            "side": cert.side,
            "complex": complex_json(&cert.complex),
            "checked_vanishing": cert.checked,
            "strands": cert.strands.iter().map(strand_json).collect::<Vec<_>>(),
            "exact": cert.is_exact(),
        }),
        human,
    })
}

fn koszul(job: &JobSpec) -> Result<Report, CliError> {
    let pa = build::piecewise(job)?;
    let (m_max, k_max) = (
        job.max_m.expect("validated") as usize,
        job.max_k.expect("validated"),
    );
    let data = b_spaces(&pa, m_max + 1);
    let v = koszul_check(&data, m_max, k_max)?;
    let b: Vec<usize> = (0..=m_max as i64)
        .map(|m| data.b_dim(m))
        .collect::<Result<_, _>>()?;
    let line = match v.first_failure {
        None => "PASS".to_string(),
        Some((m, k)) => format!("FAIL at (m,k)=({m},{k})"),
    };
    let mut human = header(job);
    let _ = writeln!(human, "B dims {}", list(&b));
    let _ = writeln!(human, "{line}");
    Ok(Report {
        machine: json!({
            "command": "koszul-check",
            "weights": job.weights,
            "relations": job.relations,
            "veronese": job.veronese.unwrap_or(1),
            "max_m": m_max,
            "max_k": k_max,
            "b_dims": b,
            "passed": v.passed(),
            "first_failure": v.first_failure,
            "strands": v.strands.iter().map(strand_json).collect::<Vec<_>>(),
        }),
        human,
    })
}

fn diagonal(job: &JobSpec) -> Result<Report, CliError> {
    let pa = build::piecewise(job)?;
    let (ks, ls) = (
        job.k_range.expect("validated"),
        job.l_range.expect("validated"),
    );
    let m_max = job.max_m.map_or(ks[1] as usize + 1, |m| m as usize);
    let data = b_spaces(&pa, m_max);
    let mut rows = Vec::new();
    let mut out = Vec::new();
    for k in range(ks) {
        for l in range(ls) {
            let r = diagonal_strand_check(&data, k, l)?;
            rows.push(vec![
                format!("({k},{l})"),
                list(&r.positions.iter().map(|p| p.dim).collect::<Vec<_>>()),
                verdict(r.is_exact()).into(),
            ]);
            out.push(json!({"k": k, "l": l, "report": strand_json(&r)}));
        }
    }
    let all = out.iter().all(|v| v["report"]["exact"] == json!(true));
    Ok(Report {
        machine: json!({
            "command": "diagonal-check",
            "weights": job.weights,
            "relations": job.relations,
            "veronese": job.veronese.unwrap_or(1),
            "bidegrees": out,
            "all_exact": all,
        }),
        human: header(job)
            + &grid(&["(k,l)", "dims", "verdict"], &rows)
            + &format!("all exact: {all}\n"),
    })
}

fn equivariant(job: &JobSpec) -> Result<Report, CliError> {
    let w = build::stack_weights(job)?;
    let g = diagres::algebra::CharacterGroup::of_weights(&w);
    let (ks, ls) = (
        job.k_range.expect("validated"),
        job.l_range.expect("validated"),
    );
    let mut rows = Vec::new();
    let mut out = Vec::new();
    let mut invariant_ok = true;
    for k in range(ks) {
        for l in range(ls) {
            let blocks = equivariant_strand_check(&w, k, l)?;
            let mut bj = Vec::new();
            for (psi, r) in &blocks {
                let chi = report_character(job, &g, psi);
                if psi.is_trivial() {
                    invariant_ok &= r.is_exact();
                }
                rows.push(vec![
                    format!("({k},{l})"),
                    chi.to_string(),
                    verdict(r.is_exact()).into(),
                ]);
                bj.push(json!({"chi": chi.to_string(), "invariant": psi.is_trivial(), "report": strand_json(r)}));
            }
            out.push(json!({"k": k, "l": l, "blocks": bj}));
        }
    }
    Ok(Report {
        machine: json!({
            "command": "equivariant-check",
            "weights": job.weights,
            "character_convention": job.character_convention.unwrap_or_default(),
            "bidegrees": out,
            "invariant_exact": invariant_ok,
        }),
        human: header(job)
            + &grid(&["(k,l)", "chi", "verdict"], &rows)
            + &format!("invariant strands exact: {invariant_ok}\n"),
    })
}

/// `(index, degree) → dim H` over the given degrees.
fn profile(c: &FreeComplex, degrees: std::ops::RangeInclusive<i64>) -> BTreeMap<(i64, i64), usize> {
    let mut out = BTreeMap::new();
    if c.is_zero() {
        return out;
    }
    for i in c.indices() {
        for d in degrees.clone() {
            let h = c.homology_strand(i, d);
            if h > 0 {
                out.insert((i, d), h);
            }
        }
    }
    out
}

fn profile_json(p: &BTreeMap<(i64, i64), usize>) -> Value {
    Value::Array(
        p.iter()
            .map(|(&(i, d), &h)| json!({"index": i, "degree": d, "dim": h}))
            .collect(),
    )
}

fn convolve(job: &JobSpec) -> Result<Report, CliError> {
    let seq = build::sequence(job)?;
    let tot = totalization(&seq);
    let window = match job.window {
        Some(w) => range(w),
        None => {
            let (lo, hi) = tot.degree_range().unwrap_or((0, 0));
            let s = build::weights(job)?.sigma();
            lo..=hi + s
        }
    };
    let right = right_convolution(&seq, job.r_max)?;
    let left = left_convolution(&seq, job.r_max)?;
    let rp = profile(&right.result, window.clone());
    let tp = profile(&tot, window.clone());
    let lp = profile(&left.result, window.clone());
    let holds = right.hypothesis.holds();
    let bracketings = if holds {
        let mut agree = true;
        for order in all_bracketings(seq.top()) {
            agree &= profile(&convolve_in_order(&seq, &order)?, window.clone()) == rp;
        }
        Some(agree)
    } else {
        None
    };
    let mut human = header(job);
    let _ = writeln!(
        human,
        "hypothesis Hom(a_p[r], a_q) = 0: {}",
        if holds { "holds" } else { "fails" }
    );
    for e in right.hypothesis.violations() {
        let _ = writeln!(human, "  p={} q={} r={}: dim {}", e.p, e.q, e.r, e.dim);
    }
    let _ = writeln!(
        human,
        "right convolution ranks {}",
        list(
            &right
                .result
                .indices()
                .map(|i| right.result.rank(i))
                .collect::<Vec<_>>()
        )
    );
    let _ = writeln!(
        human,
        "right convolution equals totalization strandwise: {}",
        rp == tp
    );
    if let Some(a) = bracketings {
        let _ = writeln!(human, "all bracketings agree: {a}");
    }
    if rp.is_empty() {
        let _ = writeln!(
            human,
            "right convolution acyclic in degrees {}..{}",
            window.start(),
            window.end()
        );
    } else {
        let rows: Vec<Vec<String>> = rp
            .iter()
            .map(|(&(i, d), h)| vec![i.to_string(), d.to_string(), h.to_string()])
            .collect();
        human += &grid(&["index", "degree", "dim H"], &rows);
    }
    Ok(Report {
        machine: json!({
            "command": "convolve",
            "weights": job.weights,
            "degrees": [window.start(), window.end()],
            "hypothesis": right.hypothesis,
            "right": {"complex": complex_json(&right.result), "homology": profile_json(&rp)},
            "left": {"complex": complex_json(&left.result), "homology": profile_json(&lp)},
            "totalization_homology": profile_json(&tp),
            "right_equals_totalization": rp == tp,
            "bracketings_agree": bracketings,
        }),
        human,
    })
}

fn hom(job: &JobSpec) -> Result<Report, CliError> {
    let r = build::ring(job)?;
    let f = build::complex(&r, job.source.as_ref().expect("validated"), "source")?;
    let g = build::complex(&r, job.target.as_ref().expect("validated"), "target")?;
    let (shift, degree) = (job.r.expect("validated"), job.degree.unwrap_or(0));
    let dim = hom_derived_in_degree(&f, &g, shift, degree)?;
    Ok(Report {
        machine: json!({"command": "hom", "weights": job.weights, "r": shift, "degree": degree, "dim": dim}),
        human: header(job) + &format!("dim Hom(F, G({degree})[{shift}]) = {dim}\n"),
    })
}

fn stabilizers(job: &JobSpec) -> Result<Report, CliError> {
    let w = build::stack_weights(job)?;
    let d = validate_weights(&w)?;
    let j0 = stabilizer_cover(&w)?;
    let rows: Vec<Vec<String>> = j0
        .iter()
        .enumerate()
        .map(|(i, j)| vec![i.to_string(), w.weight(i).to_string(), j.to_string()])
        .collect();
    Ok(Report {
        machine: json!({
            "command": "stabilizer-cover",
            "weights": job.weights,
            "sigma": d.sigma,
            "characters": d.characters.iter().map(|c| json!({
                "chi": c.character.to_string(), "norm": c.norm, "support": c.support,
            })).collect::<Vec<_>>(),
            "points": j0.iter().enumerate().map(|(i, j)| json!({"index": i, "weight": w.weight(i), "j0": j})).collect::<Vec<_>>(),
        }),
        human: header(job) + &grid(&["point", "stabilizer order", "j0"], &rows),
    })
}
