use nahilb_algebra::{sampled_equal, same_value, FactoredRational, Poly};
use nahilb_lattice::{
    all_enumerations_with, canonical_enumeration, enumerate_nested_with, Enumeration, LatticeError, Limits,
    NestedPartition,
};
use nahilb_localization::{
    contribution, cy_restrict, integrate_localization_with, reduce_full_flag_with, IntegralResult, Method, Space,
    TautClass,
};
use nahilb_residue::integrate_residue_nilfil;
use nahilb_weights::{fixed_ranks, obstruction_class, tangent_class, tangent_class_punctual};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::acceptance::{run_criteria, CriterionReport};
use crate::class_spec::parse_class_spec;
use crate::config::Config;
use crate::error::CliError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Command {
    Enumerate,
    Classify,
    Contribution,
    Integrate,
    Compare,
    Verify,
}

/// A class given either in the text syntax or as a polynomial in JSON form.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ClassSpec {
    Text(String),
    Poly { poly: Poly },
}

impl Default for ClassSpec {
    fn default() -> Self {
        ClassSpec::Text("1".into())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Flags {
    #[serde(default)]
    pub cy: bool,
    #[serde(default)]
    pub expand: bool,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub classify: bool,
    #[serde(default = "default_samples")]
    pub samples: usize,
    /// Acceptance criteria to run for `verify`; empty means all.
    #[serde(default)]
    pub criteria: Vec<u32>,
}

fn default_samples() -> usize {
    20
}

impl Default for Flags {
    fn default() -> Self {
        Flags {
            cy: false,
            expand: false,
            seed: 0,
            classify: false,
            samples: default_samples(),
            criteria: Vec::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JobSpec {
    pub command: Command,
    #[serde(default)]
    pub n: Option<usize>,
    #[serde(default)]
    pub dims: Option<Vec<usize>>,
    #[serde(default = "default_space")]
    pub space: Space,
    #[serde(default = "default_method")]
    pub method: Method,
    #[serde(default)]
    pub class: ClassSpec,
    /// Rank of the auxiliary bundle `W`, i.e. the number of `θ` variables.
    #[serde(default)]
    pub q: usize,
    #[serde(default)]
    pub flags: Flags,
}

fn default_space() -> Space {
    Space::Nhilb
}

fn default_method() -> Method {
    Method::Localization
}

impl JobSpec {
    pub fn new(command: Command) -> Self {
        JobSpec {
            command,
            n: None,
            dims: None,
            space: default_space(),
            method: default_method(),
            class: ClassSpec::default(),
            q: 0,
            flags: Flags::default(),
        }
    }
}

/// A finished job: the JSON document to print and the process exit code.
#[derive(Clone, Debug, PartialEq)]
pub struct Outcome {
    pub document: serde_json::Value,
    pub exit_code: i32,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChainEntry {
    pub chain: NestedPartition,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub admissible: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nilfil: Option<bool>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub porteous: Option<bool>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnumerateOutput {
    pub n: usize,
    pub dims: Vec<usize>,
    pub count: usize,
    pub chains: Vec<ChainEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifiedChain {
    pub chain: NestedPartition,
    pub enumeration: Enumeration,
    /// Number of valid enumerations, when within the enumeration guard.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub enumerations: Option<usize>,
    pub admissible: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub nilfil: Option<bool>,
    pub porteous: bool,
    pub fixed_tangent_rank: i64,
    pub fixed_obstruction_rank: i64,
    pub tangent_rank: i64,
    pub obstruction_rank: i64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub punctual_tangent_rank: Option<i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassifyOutput {
    pub n: usize,
    pub dims: Vec<usize>,
    pub chains: Vec<ClassifiedChain>,
}

/// A rational function as display text, JSON structure and (optionally) the
/// expanded polynomial when it has no denominator.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValueDoc {
    pub value: String,
    pub factored: FactoredRational,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub expanded: Option<Poly>,
}

impl ValueDoc {
    fn new(v: &FactoredRational, expand: bool) -> Self {
        ValueDoc {
            value: v.to_string(),
            factored: v.clone(),
            expanded: if expand { v.expand() } else { None },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointContribution {
    pub chain: NestedPartition,
    #[serde(flatten)]
    pub value: ValueDoc,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ContributionOutput {
    pub n: usize,
    pub dims: Vec<usize>,
    pub space: Space,
    pub points: Vec<PointContribution>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct IntegrateOutput {
    pub space: Space,
    pub method: Method,
    pub vdim: i64,
    #[serde(flatten)]
    pub value: ValueDoc,
    #[serde(default)]
    pub cy: bool,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompareOutput {
    pub equal: bool,
    /// `exact` or `sampled`.
    pub check: String,
    pub method_a: String,
    pub method_b: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub samples: Option<usize>,
    pub seed: u64,
    pub a: IntegrateOutput,
    pub b: IntegrateOutput,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerifyOutput {
    pub passed: bool,
    pub criteria: Vec<CriterionReport>,
}

struct Resolved {
    n: usize,
    dims: Vec<usize>,
}

fn resolve(job: &JobSpec, config: &Config, limits: &Limits) -> Result<Resolved, CliError> {
    let n = job
        .n
        .or(config.n)
        .ok_or_else(|| CliError::Job("n is not set by the job or the config".into()))?;
    let dims = job
        .dims
        .clone()
        .or_else(|| config.dims.clone())
        .ok_or_else(|| CliError::Job("dims is not set by the job or the config".into()))?;
    if n == 0 {
        return Err(CliError::Job("n must be positive".into()));
    }
    if dims.is_empty() {
        return Err(CliError::Job("dims must be nonempty".into()));
    }
    let total: usize = dims.iter().sum();
    if total > limits.max_points {
        return Err(LatticeError::SizeGuardExceeded {
            requested: total,
            limit: limits.max_points,
        }
        .into());
    }
    Ok(Resolved { n, dims })
}

fn class_of(job: &JobSpec, dims: &[usize]) -> Result<TautClass, CliError> {
    match &job.class {
        ClassSpec::Text(text) => parse_class_spec(text, job.q, dims),
        ClassSpec::Poly { poly } => Ok(TautClass::with_blocks(poly.clone(), job.q, dims)?),
    }
}

fn to_value<T: Serialize>(out: &T) -> Result<serde_json::Value, CliError> {
    Ok(serde_json::to_value(out)?)
}

/// Runs a job. Exit code 0 on success and 2 when `compare` or `verify`
/// finds a disagreement; errors map to exit code 1 in the binary.
pub fn run(job: &JobSpec, config: &Config, limits: &Limits) -> Result<Outcome, CliError> {
    if job.command == Command::Verify {
        let reports = run_criteria(&job.flags.criteria);
        let passed = reports.iter().all(|r| r.passed);
        return Ok(Outcome {
            document: to_value(&VerifyOutput {
                passed,
                criteria: reports,
            })?,
            exit_code: if passed { 0 } else { 2 },
        });
    }
    let Resolved { n, dims } = resolve(job, config, limits)?;
    let document = match job.command {
        Command::Enumerate => to_value(&enumerate(n, &dims, job.flags.classify, limits)?)?,
        Command::Classify => to_value(&classify(n, &dims, limits)?)?,
        Command::Contribution => {
            let class = class_of(job, &dims)?;
            to_value(&contributions(n, &dims, job.space, &class, job, limits)?)?
        }
        Command::Integrate => {
            let class = class_of(job, &dims)?;
            let result = integrate(n, &dims, job.space, job.method, &class, limits)?;
            to_value(&integrate_output(&result, n, &job.flags)?)?
        }
        Command::Compare => {
            let class = class_of(job, &dims)?;
            let out = compare(n, &dims, job.space, &class, &job.flags, limits)?;
            let exit_code = if out.equal { 0 } else { 2 };
            return Ok(Outcome {
                document: to_value(&out)?,
                exit_code,
            });
        }
        Command::Verify => unreachable!("handled above"),
    };
    Ok(Outcome { document, exit_code: 0 })
}

fn enumerate(n: usize, dims: &[usize], classify: bool, limits: &Limits) -> Result<EnumerateOutput, CliError> {
    let pointed = dims[0] == 1;
    let chains: Vec<ChainEntry> = enumerate_nested_with(n, dims, limits)?
        .into_iter()
        .map(|chain| {
            let (admissible, nilfil, porteous) = if classify {
                let nilfil = if pointed { Some(chain.is_nilfil()?) } else { None };
                (Some(chain.is_admissible()), nilfil, Some(chain.is_porteous()))
            } else {
                (None, None, None)
            };
            Ok(ChainEntry {
                chain,
                admissible,
                nilfil,
                porteous,
            })
        })
        .collect::<Result<_, LatticeError>>()?;
    Ok(EnumerateOutput {
        n,
        dims: dims.to_vec(),
        count: chains.len(),
        chains,
    })
}

fn classify(n: usize, dims: &[usize], limits: &Limits) -> Result<ClassifyOutput, CliError> {
    let chains = enumerate_nested_with(n, dims, limits)?;
    let classified = chains
        .into_par_iter()
        .map(|chain| {
            let e = canonical_enumeration(&chain);
            let (w_t, w_b) = fixed_ranks(&e);
            let nilfil = if dims[0] == 1 { Some(chain.is_nilfil()?) } else { None };
            let punctual_tangent_rank = match nilfil {
                Some(true) => Some(tangent_class_punctual(&e)?.net_rank()),
                _ => None,
            };
            let enumerations = if chain.total() <= limits.max_enumeration_points {
                Some(all_enumerations_with(&chain, limits)?.len())
            } else {
                None
            };
            Ok(ClassifiedChain {
                admissible: chain.is_admissible(),
                porteous: chain.is_porteous(),
                fixed_tangent_rank: w_t,
                fixed_obstruction_rank: w_b,
                tangent_rank: tangent_class(&e).net_rank(),
                obstruction_rank: obstruction_class(&e).net_rank(),
                punctual_tangent_rank,
                nilfil,
                enumerations,
                enumeration: e,
                chain,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(ClassifyOutput {
        n,
        dims: dims.to_vec(),
        chains: classified,
    })
}

fn contributions(
    n: usize,
    dims: &[usize],
    space: Space,
    class: &TautClass,
    job: &JobSpec,
    limits: &Limits,
) -> Result<ContributionOutput, CliError> {
    let mut chains = enumerate_nested_with(n, dims, limits)?;
    if space == Space::Nilfil {
        if dims[0] != 1 {
            return Err(LatticeError::RequiresPointedDims.into());
        }
        chains.retain(|c| c.is_nilfil().unwrap_or(false));
    }
    let points = chains
        .into_par_iter()
        .map(|chain| {
            let mut value = contribution(&canonical_enumeration(&chain), space, class)?;
            if job.flags.cy {
                value = cy_restrict(&value, n)?;
            }
            Ok(PointContribution {
                value: ValueDoc::new(&value, job.flags.expand),
                chain,
            })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    Ok(ContributionOutput {
        n,
        dims: dims.to_vec(),
        space,
        points,
    })
}

fn integrate(
    n: usize,
    dims: &[usize],
    space: Space,
    method: Method,
    class: &TautClass,
    limits: &Limits,
) -> Result<IntegralResult, CliError> {
    match (space, method) {
        (_, Method::Localization) => Ok(integrate_localization_with(n, dims, space, class, limits)?),
        (Space::Nilfil, Method::Residue) => Ok(integrate_residue_nilfil(n, dims, class)?),
        (Space::Nhilb, Method::Residue) => Err(CliError::Job(
            "the residue method computes nil-fil integrals; use space \"nilfil\"".into(),
        )),
    }
}

fn integrate_output(result: &IntegralResult, n: usize, flags: &Flags) -> Result<IntegrateOutput, CliError> {
    let value = if flags.cy {
        cy_restrict(&result.value, n)?
    } else {
        result.value.clone()
    };
    Ok(IntegrateOutput {
        space: result.space,
        method: result.method,
        vdim: result.vdim,
        value: ValueDoc::new(&value, flags.expand),
        cy: flags.cy,
        warnings: result.warnings.clone(),
    })
}

/// Nil-fil integrals are compared across localization and residues; integrals
/// over full-flag nested Hilbert schemes across direct localization and the
/// reduction to the nil-fil locus.
fn compare(
    n: usize,
    dims: &[usize],
    space: Space,
    class: &TautClass,
    flags: &Flags,
    limits: &Limits,
) -> Result<CompareOutput, CliError> {
    let direct = || integrate_localization_with(n, dims, space, class, limits);
    let (a, b, method_b) = match space {
        Space::Nilfil => {
            let (a, b) = rayon::join(direct, || integrate_residue_nilfil(n, dims, class));
            (a?, b?, "residue")
        }
        Space::Nhilb => {
            let (a, b) = rayon::join(direct, || reduce_full_flag_with(n, dims, class, limits));
            (a?, b?, "full_flag_reduction")
        }
    };
    let exact = same_value(&a.value, &b.value);
    let (equal, check, samples) = if exact {
        (true, "exact", None)
    } else {
        let sampled = sampled_equal(&a.value, &b.value, flags.samples, flags.seed)?;
        (sampled, "sampled", Some(flags.samples))
    };
    Ok(CompareOutput {
        equal: equal && a.vdim == b.vdim,
        check: check.into(),
        method_a: "localization".into(),
        method_b: method_b.into(),
        samples,
        seed: flags.seed,
        a: integrate_output(&a, n, flags)?,
        b: integrate_output(&b, n, flags)?,
    })
}
