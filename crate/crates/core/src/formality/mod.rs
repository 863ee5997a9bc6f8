//! The components `F_n = Σ_m Σ_{Γ ∈ G(n,m)} W_Γ · U_Γ` and the residual of
//! the A∞-relation they satisfy.

mod random;
mod signs;
mod weighted;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

pub use random::{random_polynomial, random_polyvector, RandomSpec};
pub use signs::{FlipCup, FlipWedge, Koszul, SignConvention, Table};
pub use weighted::{ResolvedCoeff, WeightMonomial, WeightedOp, WeightedPoly};

use crate::algebra::{Polynomial, Polyvector, Rational, VarIndex};
use crate::error::{Error, Result};
use crate::graphs::{gnm_with_star_sizes, u_gamma, Graph};
use crate::weights::{WeightCache, WeightConfig, WeightMode, WeightResult};

/// `Σ deg γ_i - n + 1`, the arity of `F_n(γ_1, …, γ_n)`.
pub fn forced_arity(degrees: &[usize]) -> isize {
    degrees.iter().sum::<usize>() as isize - degrees.len() as isize + 1
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct GraphWeight {
    pub graph: String,
    pub weight: String,
    pub mode: String,
}

impl GraphWeight {
    fn new(g: &Graph, w: &WeightResult) -> Self {
        GraphWeight {
            graph: g.to_json(),
            weight: w.render(),
            mode: w.mode().to_string(),
        }
    }
}

/// `F_n(γ_1 ⊗ … ⊗ γ_n)`, with Monte Carlo weights kept symbolic.
#[derive(Debug, Clone)]
pub struct FComponent {
    /// Negative when no graph fits the degree profile; `op` is then the zero arity-0 map.
    pub arity: isize,
    pub op: WeightedOp,
    pub graphs: Vec<(Graph, WeightResult)>,
}

impl FComponent {
    /// The operator when every weight is exact.
    pub fn exact(&self) -> Option<crate::algebra::PolyDiffOp> {
        self.op.as_exact()
    }
}

pub fn f_component(gammas: &[Polyvector], weights: &WeightCache) -> Result<FComponent> {
    if gammas.is_empty() {
        return Err(Error::NoSources);
    }
    let degrees: Vec<usize> = gammas.iter().map(Polyvector::degree).collect();
    let arity = forced_arity(&degrees);
    if arity < 0 {
        return Ok(FComponent {
            arity,
            op: WeightedOp::zero(0),
            graphs: Vec::new(),
        });
    }
    let graphs = gnm_with_star_sizes(&degrees);
    let pieces: Vec<(Graph, WeightResult, Option<crate::algebra::PolyDiffOp>)> = graphs
        .par_iter()
        .map(|g| {
            let w = weights.get(g);
            let u = match w {
                WeightResult::Zero => None,
                _ => Some(u_gamma(g.graph(), gammas)),
            };
            u.transpose().map(|u| (g.graph().clone(), w, u))
        })
        .collect::<Result<_>>()?;
    let mut op = WeightedOp::zero(arity as usize);
    let mut used = Vec::with_capacity(pieces.len());
    for (g, w, u) in pieces {
        if let Some(u) = u {
            match &w {
                WeightResult::Exact { value } => op.add_part(Vec::new(), u.scale(value)),
                WeightResult::Mc { .. } => op.add_part(vec![g.clone()], u),
                WeightResult::Zero => unreachable!(),
            }
        }
        used.push((g, w));
    }
    Ok(FComponent {
        arity,
        op,
        graphs: used,
    })
}

/// Evaluated left-hand side of the A∞-relation.
#[derive(Debug, Clone)]
pub struct Residual {
    pub operator: WeightedOp,
    pub value: WeightedPoly,
    pub graphs: Vec<(Graph, WeightResult)>,
}

impl Residual {
    pub fn exact(&self) -> Option<Polynomial> {
        self.value.as_exact()
    }
}

fn sign_rational(s: i8) -> Rational {
    Rational::from_integer(s.into())
}

/// The residual operator only (no evaluation).
pub fn eq2_operator(
    gammas: &[Polyvector],
    signs: &dyn SignConvention,
    weights: &WeightCache,
) -> Result<(WeightedOp, Vec<(Graph, WeightResult)>)> {
    let n = gammas.len();
    if n == 0 {
        return Err(Error::NoSources);
    }
    let degrees: Vec<usize> = gammas.iter().map(Polyvector::degree).collect();
    let target = forced_arity(&degrees) + 1;
    let mut graphs = Vec::new();
    if target < 0 {
        return Ok((WeightedOp::zero(0), graphs));
    }
    let mut total = WeightedOp::zero(target as usize);

    let top = f_component(gammas, weights)?;
    graphs.extend(top.graphs.iter().cloned());
    if top.arity >= 0 {
        total.add_scaled(&top.op.hochschild_d(), &Rational::from_integer(1.into()));
    }

    for k in 1..n {
        let left = f_component(&gammas[..k], weights)?;
        let right = f_component(&gammas[k..], weights)?;
        graphs.extend(left.graphs.iter().cloned());
        graphs.extend(right.graphs.iter().cloned());
        if left.arity < 0 || right.arity < 0 {
            continue;
        }
        total.add_scaled(&left.op.cup(&right.op), &sign_rational(signs.cup_sign(k, &degrees)));
    }

    for i in 1..n {
        let mut merged: Vec<Polyvector> = Vec::with_capacity(n - 1);
        merged.extend(gammas[..i - 1].iter().cloned());
        merged.push(gammas[i - 1].wedge(&gammas[i]));
        merged.extend(gammas[i + 1..].iter().cloned());
        let f = f_component(&merged, weights)?;
        graphs.extend(f.graphs.iter().cloned());
        if f.arity < 0 {
            continue;
        }
        total.add_scaled(&f.op, &sign_rational(signs.wedge_sign(i, &degrees)));
    }
    graphs.sort_by(|a, b| a.0.cmp(&b.0));
    graphs.dedup_by(|a, b| a.0 == b.0);
    Ok((total, graphs))
}

/// Left-hand side of the A∞-relation evaluated on `fs`, which must have
/// `Σ deg γ_i - n + 2` entries.
pub fn eq2_residual(
    gammas: &[Polyvector],
    fs: &[Polynomial],
    signs: &dyn SignConvention,
    weights: &WeightCache,
) -> Result<Residual> {
    let degrees: Vec<usize> = gammas.iter().map(Polyvector::degree).collect();
    let target = forced_arity(&degrees) + 1;
    let expected = target.max(0) as usize;
    if fs.len() != expected {
        return Err(Error::ArityMismatch {
            arity: expected,
            got: fs.len(),
        });
    }
    let (operator, graphs) = eq2_operator(gammas, signs, weights)?;
    let value = operator.evaluate(fs)?;
    Ok(Residual {
        operator,
        value,
        graphs,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyParams {
    pub degrees: Vec<usize>,
    pub var_count: u32,
    pub trials: usize,
    pub seed: u64,
    pub max_coeff_degree: u32,
    /// Allowed multiple of the propagated standard error when weights are estimated.
    pub tolerance_factor: f64,
}

impl VerifyParams {
    pub fn new(degrees: Vec<usize>) -> Self {
        VerifyParams {
            degrees,
            var_count: 3,
            trials: 10,
            seed: 0,
            max_coeff_degree: 3,
            tolerance_factor: 5.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrialOutcome {
    pub trial: usize,
    pub exact: bool,
    pub max_abs: f64,
    /// `max |value| / stderr` over coefficients with nonzero stderr.
    pub max_ratio: f64,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VerifyReport {
    pub params: VerifyParams,
    pub weights: WeightConfig,
    pub signs: String,
    pub trials: Vec<TrialOutcome>,
    pub mode: String,
    pub max_residual: f64,
    pub per_graph: Vec<GraphWeight>,
    pub mc_graphs: Vec<String>,
    pub pass: bool,
}

/// Per-trial inputs, reproducible from `(seed, trial)`.
pub fn trial_inputs(params: &VerifyParams, trial: usize) -> (Vec<Polyvector>, Vec<Polynomial>) {
    let mut rng = ChaCha8Rng::seed_from_u64(params.seed);
    rng.set_stream(trial as u64);
    let spec = RandomSpec {
        var_count: params.var_count,
        max_degree: params.max_coeff_degree,
    };
    let gammas: Vec<Polyvector> = params
        .degrees
        .iter()
        .map(|&k| random_polyvector(&mut rng, k, &spec))
        .collect();
    let arity = (forced_arity(&params.degrees) + 1).max(0) as usize;
    let fs = (0..arity).map(|_| random_polynomial(&mut rng, &spec)).collect();
    (gammas, fs)
}

/// Checks one evaluated residual: exact zero when exact, otherwise every
/// coefficient within `factor` propagated standard errors.
pub fn check_residual(res: &Residual, weights: &WeightCache, factor: f64) -> (bool, f64, f64) {
    if let Some(p) = res.exact() {
        let max = crate::algebra::rational::to_f64(&p.max_abs_coeff());
        return (p.is_zero(), max, 0.0);
    }
    let coeffs = res.value.resolve(&|g: &Graph| {
        weights.get(&crate::graphs::GnmGraph::allow_parallel(g.clone()).expect("weighted graphs are admissible"))
    });
    let mut pass = true;
    let mut max_abs: f64 = 0.0;
    let mut max_ratio: f64 = 0.0;
    for c in &coeffs {
        max_abs = max_abs.max(c.value.abs());
        if c.stderr > 0.0 {
            max_ratio = max_ratio.max(c.value.abs() / c.stderr);
        }
        if c.value.abs() > factor * c.stderr {
            pass = false;
        }
    }
    (pass, max_abs, max_ratio)
}

pub fn verify_report(params: &VerifyParams, signs: &dyn SignConvention, weights: &WeightCache) -> Result<VerifyReport> {
    if params.degrees.is_empty() {
        return Err(Error::NoSources);
    }
    let outcomes: Vec<(TrialOutcome, Vec<(Graph, WeightResult)>)> = (0..params.trials)
        .into_par_iter()
        .map(|t| {
            let (gammas, fs) = trial_inputs(params, t);
            let res = eq2_residual(&gammas, &fs, signs, weights)?;
            let (pass, max_abs, max_ratio) = check_residual(&res, weights, params.tolerance_factor);
            Ok((
                TrialOutcome {
                    trial: t,
                    exact: res.value.is_exact(),
                    max_abs,
                    max_ratio,
                    pass,
                },
                res.graphs,
            ))
        })
        .collect::<Result<_>>()?;

    let mut graphs: Vec<(Graph, WeightResult)> = outcomes.iter().flat_map(|(_, g)| g.iter().cloned()).collect();
    graphs.sort_by(|a, b| a.0.cmp(&b.0));
    graphs.dedup_by(|a, b| a.0 == b.0);
    let trials: Vec<TrialOutcome> = outcomes.into_iter().map(|(o, _)| o).collect();
    let exact = trials.iter().all(|t| t.exact);
    Ok(VerifyReport {
        params: params.clone(),
        weights: *weights.config(),
        signs: signs.name(),
        mode: if exact { "exact" } else { "mc" }.to_string(),
        max_residual: trials.iter().map(|t| t.max_abs).fold(0.0, f64::max),
        pass: trials.iter().all(|t| t.pass),
        mc_graphs: graphs
            .iter()
            .filter(|(_, w)| w.mode() == "mc")
            .map(|(g, _)| g.to_json())
            .collect(),
        per_graph: graphs.iter().map(|(g, w)| GraphWeight::new(g, w)).collect(),
        trials,
    })
}

/// Renames variables in every input; used for the infinite-variable checks.
pub fn rename_inputs(
    gammas: &[Polyvector],
    fs: &[Polynomial],
    f: &impl Fn(VarIndex) -> VarIndex,
) -> (Vec<Polyvector>, Vec<Polynomial>) {
    (
        gammas.iter().map(|g| g.rename(f)).collect(),
        fs.iter().map(|p| p.rename(f)).collect(),
    )
}

/// Weight configuration used when only exact weights are acceptable.
pub fn exact_only() -> WeightConfig {
    WeightConfig {
        mode: WeightMode::ExactPreferred,
        ..WeightConfig::default()
    }
}
