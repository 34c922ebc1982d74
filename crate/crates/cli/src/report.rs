//! Command dispatch and the serializable report.

use serde::{Deserialize, Serialize};

use lgorb::jacobian::{poincare_oracle, quotient_ring};
use lgorb::polynomial::WeightSystem;
use lgorb::quasihom::{analyze, Analysis, Classification};
use lgorb::rational::{fmt_q, Q};
use lgorb::statespace::{
    assemble_diamond, check_preconditions, verify_theorem, StateSpace, StateSpaceError,
};
use lgorb::symmetry::{
    diagonal_symmetries, generate_group, make_jf, ClosureOptions, FiniteGroup, GroupElement,
};
use lgorb::{jacobian::RingCache, Error};

use crate::job::{Command, Factor, GenSpec, Job};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Weights {
    pub d0: i64,
    pub d: Vec<i64>,
    pub q: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Graph {
    /// 1-based target of the arrow leaving each variable; roots point to themselves.
    pub kappa: Vec<usize>,
    pub components: usize,
    pub graph_monomials: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AtomInfo {
    pub kind: String,
    pub vars: Vec<String>,
    pub exponents: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisInfo {
    pub calabi_yau: bool,
    pub weight_sum: String,
    pub c_hat: String,
    pub star_shaped: bool,
    /// `Invertible` or `NotInvertible`.
    pub classification: String,
    pub atoms: Vec<AtomInfo>,
    pub additional_terms: String,
    pub transpose: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagonalInfo {
    pub order: u64,
    pub invariant_factors: Vec<i64>,
    pub generators: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SymmetryInfo {
    pub jf: String,
    pub jf_in_sl: bool,
    pub diagonal: DiagonalInfo,
    pub sl_diagonal: DiagonalInfo,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GradedDim {
    pub degree: String,
    pub dim: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JacobianInfo {
    pub mu: usize,
    pub c_hat: String,
    pub hessian_class: String,
    pub graded_dims: Vec<GradedDim>,
    pub oracle_dims: Vec<GradedDim>,
    pub oracle_agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupInfo {
    pub order: usize,
    pub conjugacy_class_count: usize,
    pub generators: Vec<String>,
    pub contains_jf: bool,
    pub is_sl: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SectorInfo {
    pub g: String,
    #[serde(rename = "Ng")]
    pub n_g: usize,
    pub age: String,
    pub mu: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiamondInfo {
    #[serde(rename = "D")]
    pub d: i64,
    /// `h[a][b]`.
    pub h: Vec<Vec<usize>>,
    pub total: usize,
    /// `[a, b, dim]` for invariants at integral bidegrees outside `[0, D]²`.
    pub outside: Vec<[i64; 3]>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckInfo {
    pub name: String,
    pub pass: bool,
    pub witness: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationInfo {
    pub checks: Vec<CheckInfo>,
    /// Set when the hypotheses fail and no checks were run.
    pub error: Option<String>,
}

impl VerificationInfo {
    pub fn passed(&self) -> bool {
        self.error.is_none() && self.checks.iter().all(|c| c.pass)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Report {
    pub schema_version: u32,
    pub command: String,
    pub polynomial: String,
    pub vars: Vec<String>,
    pub weights: Weights,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub graph: Option<Graph>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub analysis: Option<AnalysisInfo>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub symmetries: Option<SymmetryInfo>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub jacobian: Option<JacobianInfo>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub group: Option<GroupInfo>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub sectors: Option<Vec<SectorInfo>>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub diamond: Option<DiamondInfo>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub verification: Option<VerificationInfo>,
}

impl Report {
    /// Whether every verification in the report succeeded.
    pub fn verified(&self) -> bool {
        self.verification.as_ref().is_none_or(VerificationInfo::passed)
            && self.jacobian.as_ref().is_none_or(|j| j.oracle_agrees)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum RunError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("the {0} command needs a `group = [...]` line")]
    MissingGroup(Command),
}

impl From<lgorb::symmetry::SymmetryError> for RunError {
    fn from(e: lgorb::symmetry::SymmetryError) -> Self {
        RunError::Core(e.into())
    }
}

impl From<StateSpaceError> for RunError {
    fn from(e: StateSpaceError) -> Self {
        RunError::Core(e.into())
    }
}

fn strings(q: &[Q]) -> Vec<String> {
    q.iter().map(|x| fmt_q(*x)).collect()
}

fn phase_vector(v: &[Q]) -> String {
    format!("diag({})", strings(v).join(","))
}

fn weights_info(w: &WeightSystem) -> Weights {
    Weights {
        d0: w.d0,
        d: w.d.clone(),
        q: strings(&w.q),
    }
}

fn graph_info(a: &Analysis, vars: &[String]) -> Graph {
    Graph {
        kappa: a.graph.kappa.iter().map(|k| k + 1).collect(),
        components: a.graph.components.len(),
        graph_monomials: a.graph.monomials.iter().map(|m| m.display_with(vars)).collect(),
    }
}

fn analysis_info(a: &Analysis, vars: &[String]) -> AnalysisInfo {
    let (classification, atoms) = match &a.classification {
        Classification::Invertible(atoms) => (
            "Invertible",
            atoms
                .iter()
                .map(|at| AtomInfo {
                    kind: at.kind.to_string(),
                    vars: at.vars.iter().map(|&i| vars[i].clone()).collect(),
                    exponents: at.exponents.clone(),
                })
                .collect(),
        ),
        Classification::NotInvertible => ("NotInvertible", Vec::new()),
    };
    let invertible = matches!(a.classification, Classification::Invertible(_));
    AnalysisInfo {
        calabi_yau: a.is_cy,
        weight_sum: fmt_q(a.weights.sum()),
        c_hat: fmt_q(a.weights.c_hat()),
        star_shaped: a.decomposition.is_star_shaped,
        classification: classification.into(),
        atoms,
        additional_terms: a.decomposition.f_add.display_with(vars),
        transpose: invertible.then(|| a.transpose.poly.display_with(vars)),
    }
}

fn diagonal_info(order: u64, factors: Vec<i64>, gens: &[Vec<Q>]) -> DiagonalInfo {
    DiagonalInfo {
        order,
        invariant_factors: factors,
        generators: gens.iter().map(|g| phase_vector(g)).collect(),
    }
}

fn graded(dims: impl IntoIterator<Item = (Q, usize)>) -> Vec<GradedDim> {
    dims.into_iter()
        .map(|(d, k)| GradedDim {
            degree: fmt_q(d),
            dim: k,
        })
        .collect()
}

/// Resolves generator specs into group elements of `f`.
pub fn resolve_generators(job: &Job, w: &WeightSystem) -> Result<Vec<GroupElement>, RunError> {
    let n = job.vars.len();
    let mut out = Vec::new();
    for spec in job.group.as_deref().unwrap_or_default() {
        match spec {
            GenSpec::Gd => {
                let dg = diagonal_symmetries(&job.f)?;
                out.extend(dg.generators.into_iter().map(GroupElement::diagonal));
            }
            GenSpec::SLd => {
                let dg = diagonal_symmetries(&job.f)?;
                out.extend(dg.sl_part(n).into_iter().map(GroupElement::diagonal));
            }
            GenSpec::Product(factors) => {
                let mut g = GroupElement::identity(n);
                for (factor, k) in factors {
                    let x = match factor {
                        Factor::Id => GroupElement::identity(n),
                        Factor::Jf => make_jf(w),
                        Factor::Diag(ph) => GroupElement::diagonal(ph.clone()),
                        Factor::Perm(cycles) => GroupElement::from_cycles(n, cycles),
                    };
                    g = g.compose(&x.pow(*k));
                }
                out.push(g);
            }
        }
    }
    Ok(out)
}

fn build_group(job: &Job, w: &WeightSystem) -> Result<FiniteGroup, RunError> {
    let gens = resolve_generators(job, w)?;
    let opts = ClosureOptions {
        cap: job.options.closure_cap,
        ..ClosureOptions::default()
    };
    Ok(generate_group(&gens, &job.f, w, opts)?)
}

fn group_info(g: &FiniteGroup, w: &WeightSystem) -> GroupInfo {
    GroupInfo {
        order: g.order(),
        conjugacy_class_count: g.classes().len(),
        generators: g.generators().iter().map(|x| x.to_string()).collect(),
        contains_jf: g.contains(&make_jf(w)),
        is_sl: g.is_sl(),
    }
}

pub fn run(job: &Job) -> Result<Report, RunError> {
    let a = analyze(&job.f).map_err(Error::from)?;
    let w = a.weights.clone();
    let mut report = Report {
        schema_version: SCHEMA_VERSION,
        command: job.command.name().into(),
        polynomial: job.f.display_with(&job.vars),
        vars: job.vars.clone(),
        weights: weights_info(&w),
        graph: Some(graph_info(&a, &job.vars)),
        analysis: None,
        symmetries: None,
        jacobian: None,
        group: None,
        sectors: None,
        diamond: None,
        verification: None,
    };
    match job.command {
        Command::Analyze => {
            report.analysis = Some(analysis_info(&a, &job.vars));
        }
        Command::Symmetries => {
            let n = job.vars.len();
            let dg = diagonal_symmetries(&job.f)?;
            let sl = dg.sl_part(n);
            let sl_order = dg
                .elements(n)
                .iter()
                .filter(|v| v.iter().fold(Q::from_integer(0), |s, x| s + x).is_integer())
                .count() as u64;
            let jf = make_jf(&w);
            report.symmetries = Some(SymmetryInfo {
                jf: phase_vector(jf.phase()),
                jf_in_sl: jf.is_sl(),
                diagonal: diagonal_info(dg.order, dg.invariant_factors.clone(), &dg.generators),
                sl_diagonal: diagonal_info(sl_order, Vec::new(), &sl),
            });
            if job.group.is_some() {
                report.group = Some(group_info(&build_group(job, &w)?, &w));
            }
        }
        Command::Jacobian => {
            let ring = quotient_ring(&job.f, &w).map_err(Error::from)?;
            let dims = ring.graded_dimensions();
            let oracle = poincare_oracle(&w);
            report.jacobian = Some(JacobianInfo {
                mu: ring.mu(),
                c_hat: fmt_q(ring.c_hat),
                hessian_class: ring.hess_class.display_with(&job.vars),
                oracle_agrees: dims == oracle,
                graded_dims: graded(dims),
                oracle_dims: graded(oracle),
            });
        }
        Command::Diamond => {
            if job.group.is_none() {
                return Err(RunError::MissingGroup(job.command));
            }
            let group = build_group(job, &w)?;
            report.group = Some(group_info(&group, &w));
            if job.options.verify {
                if let Err(e) = check_preconditions(&w, &group) {
                    report.verification = Some(VerificationInfo {
                        checks: Vec::new(),
                        error: Some(e.to_string()),
                    });
                    return Ok(report);
                }
            }
            let space = StateSpace::build(&job.f, &w, group, &RingCache::new())?;
            report.sectors = Some(
                space
                    .sectors
                    .iter()
                    .map(|s| SectorInfo {
                        g: s.g.to_string(),
                        n_g: s.n_g(),
                        age: fmt_q(s.age),
                        mu: s.mu(),
                    })
                    .collect(),
            );
            let d = assemble_diamond(&space)?;
            if job.options.verify {
                let v = verify_theorem(&space, &d)?;
                report.verification = Some(VerificationInfo {
                    checks: v
                        .checks
                        .into_iter()
                        .map(|c| CheckInfo {
                            name: c.name,
                            pass: c.pass,
                            witness: c.witness,
                        })
                        .collect(),
                    error: None,
                });
            }
            report.diamond = Some(DiamondInfo {
                d: d.d,
                h: d.h,
                total: d.total,
                outside: d.outside.iter().map(|&((a, b), k)| [a, b, k as i64]).collect(),
            });
        }
    }
    Ok(report)
}
