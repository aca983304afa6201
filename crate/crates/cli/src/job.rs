use serde::{Deserialize, Serialize};

use diagres::wps::{CharacterConvention, FiniteLength};

use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Hilbert,
    Cohomology,
    Bott,
    Beilinson,
    ResolveLeft,
    ResolveRight,
    KoszulCheck,
    DiagonalCheck,
    EquivariantCheck,
    Convolve,
    Hom,
    StabilizerCover,
}

impl Command {
    pub fn name(self) -> &'static str {
        match self {
            Command::Hilbert => "hilbert",
            Command::Cohomology => "cohomology",
            Command::Bott => "bott",
            Command::Beilinson => "beilinson",
            Command::ResolveLeft => "resolve-left",
            Command::ResolveRight => "resolve-right",
            Command::KoszulCheck => "koszul-check",
            Command::DiagonalCheck => "diagonal-check",
            Command::EquivariantCheck => "equivariant-check",
            Command::Convolve => "convolve",
            Command::Hom => "hom",
            Command::StabilizerCover => "stabilizer-cover",
        }
    }
}

/// A finitely presented module: generator degrees and relations, one
/// polynomial per generator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub generators: Vec<i64>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<Vec<String>>,
    /// The module used is `M(twist)`.
    #[serde(default, skip_serializing_if = "is_zero")]
    pub twist: i64,
}

/// A bounded complex of free modules: `terms[k]` lists the generator
/// degrees of `F_{lo+k}`, `differentials[k]` is `d_{lo+k+1}` by rows.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSpec {
    #[serde(default)]
    pub lo: i64,
    pub terms: Vec<Vec<i64>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub differentials: Vec<Vec<Vec<String>>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapComponent {
    pub index: i64,
    pub matrix: Vec<Vec<String>>,
}

/// The chain map `d_p: a_p → a_{p-1}` of a complex of complexes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MapSpec {
    #[serde(default)]
    pub components: Vec<MapComponent>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Command,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub weights: Option<Vec<u32>>,
    /// Relations of the algebra `S / I`.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub veronese: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub range: Option<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub window: Option<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub p: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub t: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_m: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_k: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k_range: Option<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub l_range: Option<[i64; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r_max: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub finite_length: Option<FiniteLength>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub character_convention: Option<CharacterConvention>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<ModuleSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub source: Option<ComplexSpec>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub target: Option<ComplexSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub objects: Vec<ComplexSpec>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub maps: Vec<MapSpec>,
}

fn is_zero(x: &i64) -> bool {
    *x == 0
}

fn missing(field: &str) -> CliError {
    CliError::validation(format!("{field} required"))
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        JobSpec {
            command,
            weights: None,
            relations: Vec::new(),
            veronese: None,
            range: None,
            window: None,
            k: None,
            p: None,
            t: None,
            r: None,
            degree: None,
            max_m: None,
            max_k: None,
            k_range: None,
            l_range: None,
            r_max: None,
            finite_length: None,
            character_convention: None,
            module: None,
            source: None,
            target: None,
            objects: Vec::new(),
            maps: Vec::new(),
        }
    }

    /// Checks that the fields the command needs are present and that bounds
    /// are nonnegative where they count something.
    pub fn validate(&self) -> Result<(), CliError> {
        if self.weights.is_none() {
            return Err(missing("weights"));
        }
        let need = |present: bool, field: &str| if present { Ok(()) } else { Err(missing(field)) };
        match self.command {
            Command::Hilbert => need(self.range.is_some(), "range")?,
            Command::Cohomology => need(self.k.is_some() || self.range.is_some(), "k")?,
            Command::Bott => {
                need(self.p.is_some(), "p")?;
                need(self.t.is_some(), "t")?;
            }
            Command::ResolveLeft | Command::ResolveRight => need(self.window.is_some(), "window")?,
            Command::KoszulCheck => {
                need(self.max_m.is_some(), "max_m")?;
                need(self.max_k.is_some(), "max_k")?;
            }
            Command::DiagonalCheck | Command::EquivariantCheck => {
                need(self.k_range.is_some(), "k_range")?;
                need(self.l_range.is_some(), "l_range")?;
            }
            Command::Convolve => need(!self.objects.is_empty(), "objects")?,
            Command::Hom => {
                need(self.source.is_some(), "source")?;
                need(self.target.is_some(), "target")?;
                need(self.r.is_some(), "r")?;
            }
            Command::Beilinson | Command::StabilizerCover => {}
        }
        for (name, v) in [
            ("max_m", self.max_m),
            ("max_k", self.max_k),
            ("r_max", self.r_max),
            ("p", self.p),
        ] {
            if v.is_some_and(|x| x < 0) {
                return Err(CliError::validation(format!("{name} must be nonnegative")));
            }
        }
        if self.veronese.is_some_and(|d| d < 1) {
            return Err(CliError::validation("veronese must be at least 1"));
        }
        for (name, r) in [
            ("range", self.range),
            ("window", self.window),
            ("k_range", self.k_range),
            ("l_range", self.l_range),
        ] {
            if let Some([a, b]) = r {
                if a > b {
                    return Err(CliError::validation(format!("{name} is empty: {a} > {b}")));
                }
            }
        }
        for (name, r) in [("k_range", self.k_range), ("l_range", self.l_range)] {
            if r.is_some_and(|[a, _]| a < 0) {
                return Err(CliError::validation(format!("{name} must be nonnegative")));
            }
        }
        Ok(())
    }
}

/// Parses and validates a job document; unknown keys are rejected.
pub fn parse_job(text: &str) -> Result<JobSpec, CliError> {
    let job: JobSpec = toml::from_str(text).map_err(|e| {
        let mut err = CliError::validation(format!("parse error: {}", e.message()));
        if let Some(span) = e.span() {
            let (line, column) = line_column(text, span.start);
            err = err.at(line, column);
        }
        err
    })?;
    job.validate()?;
    Ok(job)
}

fn line_column(text: &str, offset: usize) -> (usize, usize) {
    let before = &text[..offset.min(text.len())];
    let line = before.matches('\n').count() + 1;
    let column = before.len() - before.rfind('\n').map_or(0, |i| i + 1) + 1;
    (line, column)
}

pub fn render_job(job: &JobSpec) -> String {
    toml::to_string(job).expect("job specs serialize")
}
