//! Scenario files: a single JSON document describing one workflow run.
//! Validation reports the dotted path of the offending field so schema
//! errors are actionable.

use crate::error::AppError;
use relmech_core::jet_charts::{ChartPartition, ChartTransition, SubmanifoldJet, TransitionMap};
use relmech_core::lagrangian::RelativisticLagrangian;
use relmech_core::linalg::Mat;
use relmech_core::poly::PolynomialScalarField;
use relmech_core::tensor::{euclidean, minkowski, quartic_eta2, OneFormField, SymmetricTensorField};
use serde::Deserialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Kind {
    Simulate,
    CheckNoether,
    CheckGauge,
    Transform,
    Reduce,
    StringCheck,
}

impl Kind {
    pub fn as_str(&self) -> &'static str {
        match self {
            Kind::Simulate => "simulate",
            Kind::CheckNoether => "check-noether",
            Kind::CheckGauge => "check-gauge",
            Kind::Transform => "transform",
            Kind::Reduce => "reduce",
            Kind::StringCheck => "string-check",
        }
    }

    fn parse(s: &str) -> Option<Kind> {
        Some(match s {
            "simulate" => Kind::Simulate,
            "check-noether" => Kind::CheckNoether,
            "check-gauge" => Kind::CheckGauge,
            "transform" => Kind::Transform,
            "reduce" => Kind::Reduce,
            "string-check" => Kind::StringCheck,
            _ => return None,
        })
    }
}

/// One polynomial term: coefficient times a monomial in the m coordinates.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermSpec {
    pub coefficient: f64,
    pub exponents: Vec<u32>,
}

/// One component of an explicit symmetric tensor.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TensorComponentSpec {
    pub indices: Vec<usize>,
    pub terms: Vec<TermSpec>,
}

/// The G field: a catalog name or an explicit component table.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum MetricSpec {
    Catalog(String),
    Explicit { components: Vec<TensorComponentSpec> },
}

/// The A field: "zero", constant components, linear components (constant
/// field strength) or an explicit polynomial table.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum PotentialSpec {
    Named(String),
    Constant { constant: Vec<f64> },
    Linear { linear: Vec<Vec<f64>> },
    Explicit { components: Vec<Vec<TermSpec>> },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InitialSpec {
    pub q: Vec<f64>,
    pub v: Vec<f64>,
    #[serde(default = "default_sign")]
    pub sign: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ReducedInitialSpec {
    pub q0: f64,
    pub qi: Vec<f64>,
    pub vi: Vec<f64>,
    #[serde(default = "default_sign")]
    pub sign: f64,
}

fn default_sign() -> f64 {
    1.0
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct IntegratorSpec {
    pub step: Option<f64>,
    pub t_end: Option<f64>,
    #[serde(default)]
    pub projection: bool,
    pub drift_abort: Option<f64>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JetSpec {
    pub base_indices: Vec<usize>,
    pub point: Vec<f64>,
    pub slopes: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum TransitionSpec {
    Named(String),
    Boost { boost: BoostSpec },
    Affine { affine: AffineSpec },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct BoostSpec {
    pub cosh: f64,
    pub sinh: f64,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AffineSpec {
    pub matrix: Vec<Vec<f64>>,
    #[serde(default)]
    pub offset: Vec<f64>,
}

/// The raw scenario document; kind-specific requirements are enforced in
/// `validate`.
#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub kind: String,
    pub dimension: Option<usize>,
    /// N: half the degree of G (degree = 2N).
    pub degree: Option<usize>,
    pub metric: Option<MetricSpec>,
    pub potential: Option<PotentialSpec>,
    pub initial: Option<InitialSpec>,
    pub reduced_initial: Option<ReducedInitialSpec>,
    pub integrator: Option<IntegratorSpec>,
    pub seed: Option<u64>,
    pub samples: Option<usize>,
    pub tolerance: Option<f64>,
    pub jet: Option<JetSpec>,
    pub transition: Option<TransitionSpec>,
    pub signature_factor: Option<f64>,
    pub panels: Option<usize>,
}

fn config(path: &str, msg: &str) -> AppError {
    AppError::Config(format!("{path}: {msg}"))
}

impl Scenario {
    pub fn from_file(path: &std::path::Path) -> Result<Scenario, AppError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| AppError::Config(format!("cannot read {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| AppError::Config(format!("{}: {e}", path.display())))
    }

    pub fn kind(&self) -> Result<Kind, AppError> {
        Kind::parse(&self.kind).ok_or_else(|| {
            config(
                "kind",
                "expected one of simulate, check-noether, check-gauge, transform, reduce, string-check",
            )
        })
    }

    pub fn dimension(&self) -> Result<usize, AppError> {
        let m = self.dimension.ok_or_else(|| config("dimension", "missing"))?;
        if m < 2 {
            return Err(config("dimension", "must be at least 2"));
        }
        Ok(m)
    }

    pub fn half_degree(&self) -> Result<usize, AppError> {
        let n = self.degree.unwrap_or(1);
        if n < 1 {
            return Err(config("degree", "must be at least 1"));
        }
        Ok(n)
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(0)
    }

    pub fn samples(&self) -> usize {
        self.samples.unwrap_or(1000)
    }

    pub fn tolerance(&self, default: f64) -> f64 {
        self.tolerance.unwrap_or(default)
    }

    pub fn panels(&self) -> usize {
        self.panels.unwrap_or(256)
    }

    /// True when the metric field asks for per-sample random Lagrangians.
    pub fn metric_is_random(&self) -> bool {
        matches!(&self.metric, Some(MetricSpec::Catalog(name)) if name == "random")
    }

    pub fn build_metric(&self) -> Result<SymmetricTensorField, AppError> {
        let m = self.dimension()?;
        let n = self.half_degree()?;
        match self.metric.as_ref().ok_or_else(|| config("metric", "missing"))? {
            MetricSpec::Catalog(name) => match name.as_str() {
                "minkowski" => {
                    if n != 1 {
                        return Err(config("degree", "catalog metric minkowski has degree N = 1"));
                    }
                    Ok(minkowski(m))
                }
                "euclidean" => {
                    if n != 1 {
                        return Err(config("degree", "catalog metric euclidean has degree N = 1"));
                    }
                    Ok(euclidean(m))
                }
                "quartic-eta2" => {
                    if n != 2 {
                        return Err(config("degree", "catalog metric quartic-eta2 has degree N = 2"));
                    }
                    Ok(quartic_eta2(m))
                }
                "random" => Err(config(
                    "metric",
                    "\"random\" is only valid for check-noether",
                )),
                other => Err(config(
                    "metric",
                    &format!("unknown catalog entry \"{other}\""),
                )),
            },
            MetricSpec::Explicit { components } => {
                let mut g = SymmetricTensorField::new(m, 2 * n);
                for (k, c) in components.iter().enumerate() {
                    if c.indices.len() != 2 * n {
                        return Err(config(
                            &format!("metric.components[{k}].indices"),
                            &format!("expected {} indices", 2 * n),
                        ));
                    }
                    if c.indices.iter().any(|&i| i >= m) {
                        return Err(config(
                            &format!("metric.components[{k}].indices"),
                            "index out of range",
                        ));
                    }
                    g.add_component(&c.indices, build_poly(m, &c.terms, &format!("metric.components[{k}].terms"))?);
                }
                Ok(g)
            }
        }
    }

    pub fn build_potential(&self) -> Result<OneFormField, AppError> {
        let m = self.dimension()?;
        match self.potential.as_ref() {
            None => Ok(OneFormField::zero(m)),
            Some(PotentialSpec::Named(name)) if name == "zero" => Ok(OneFormField::zero(m)),
            Some(PotentialSpec::Named(other)) => Err(config(
                "potential",
                &format!("unknown name \"{other}\" (expected \"zero\")"),
            )),
            Some(PotentialSpec::Constant { constant }) => {
                if constant.len() != m {
                    return Err(config("potential.constant", "expected m components"));
                }
                Ok(OneFormField::constant(constant))
            }
            Some(PotentialSpec::Linear { linear }) => {
                if linear.len() != m || linear.iter().any(|r| r.len() != m) {
                    return Err(config("potential.linear", "expected an m by m matrix"));
                }
                let mat = Mat::from_fn(m, m, |i, j| linear[i][j]);
                Ok(OneFormField::linear(&mat))
            }
            Some(PotentialSpec::Explicit { components }) => {
                if components.len() != m {
                    return Err(config("potential.components", "expected m components"));
                }
                let comps = components
                    .iter()
                    .enumerate()
                    .map(|(k, terms)| build_poly(m, terms, &format!("potential.components[{k}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                Ok(OneFormField::new(comps))
            }
        }
    }

    pub fn build_lagrangian(&self) -> Result<RelativisticLagrangian, AppError> {
        let g = self.build_metric()?;
        let a = self.build_potential()?;
        RelativisticLagrangian::new(g, a)
            .map_err(|e| config("metric/potential", &format!("{e}")))
    }

    pub fn integrator(&self) -> Result<(f64, f64, bool, f64), AppError> {
        let spec = self
            .integrator
            .as_ref()
            .ok_or_else(|| config("integrator", "missing"))?;
        let step = spec.step.ok_or_else(|| config("integrator.step", "missing"))?;
        let t_end = spec
            .t_end
            .ok_or_else(|| config("integrator.t_end", "missing"))?;
        if step == 0.0 {
            return Err(config("integrator.step", "must be nonzero"));
        }
        if t_end <= 0.0 {
            return Err(config("integrator.t_end", "must be positive"));
        }
        let drift = spec.drift_abort.unwrap_or(1e-6);
        if drift <= 0.0 {
            return Err(config("integrator.drift_abort", "must be positive"));
        }
        Ok((step, t_end, spec.projection, drift))
    }

    pub fn initial(&self) -> Result<&InitialSpec, AppError> {
        let init = self
            .initial
            .as_ref()
            .ok_or_else(|| config("initial", "missing"))?;
        let m = self.dimension()?;
        if init.q.len() != m {
            return Err(config("initial.q", "expected m coordinates"));
        }
        if init.v.len() != m {
            return Err(config("initial.v", "expected m velocities"));
        }
        if init.sign != 1.0 && init.sign != -1.0 {
            return Err(config("initial.sign", "must be +1 or -1"));
        }
        Ok(init)
    }

    pub fn reduced_initial(&self) -> Result<&ReducedInitialSpec, AppError> {
        let init = self
            .reduced_initial
            .as_ref()
            .ok_or_else(|| config("reduced_initial", "missing"))?;
        let m = self.dimension()?;
        if init.qi.len() != m - 1 {
            return Err(config("reduced_initial.qi", "expected m-1 coordinates"));
        }
        if init.vi.len() != m - 1 {
            return Err(config("reduced_initial.vi", "expected m-1 three-velocities"));
        }
        if init.sign != 1.0 && init.sign != -1.0 {
            return Err(config("reduced_initial.sign", "must be +1 or -1"));
        }
        Ok(init)
    }

    pub fn build_jet(&self) -> Result<SubmanifoldJet, AppError> {
        let m = self.dimension()?;
        let spec = self.jet.as_ref().ok_or_else(|| config("jet", "missing"))?;
        let n = spec.base_indices.len();
        let partition = ChartPartition::new(m, spec.base_indices.clone())
            .map_err(|_| config("jet.base_indices", "invalid partition"))?;
        if spec.point.len() != m {
            return Err(config("jet.point", "expected m coordinates"));
        }
        if spec.slopes.len() != m - n || spec.slopes.iter().any(|r| r.len() != n) {
            return Err(config("jet.slopes", "expected an (m-n) by n matrix"));
        }
        let slopes = Mat::from_fn(m - n, n, |i, a| spec.slopes[i][a]);
        SubmanifoldJet::new(partition, spec.point.clone(), slopes)
            .map_err(|e| config("jet", &format!("{e}")))
    }

    pub fn build_transition(&self) -> Result<ChartTransition, AppError> {
        let m = self.dimension()?;
        let jet = self.jet.as_ref().ok_or_else(|| config("jet", "missing"))?;
        let partition = ChartPartition::new(m, jet.base_indices.clone())
            .map_err(|_| config("jet.base_indices", "invalid partition"))?;
        match self
            .transition
            .as_ref()
            .ok_or_else(|| config("transition", "missing"))?
        {
            TransitionSpec::Named(name) if name == "identity" => {
                Ok(ChartTransition::identity(partition))
            }
            TransitionSpec::Named(other) => Err(config(
                "transition",
                &format!("unknown name \"{other}\" (expected \"identity\")"),
            )),
            TransitionSpec::Boost { boost } => {
                ChartTransition::lorentz_boost(partition, boost.cosh, boost.sinh)
                    .map_err(|e| config("transition.boost", &format!("{e}")))
            }
            TransitionSpec::Affine { affine } => {
                if affine.matrix.len() != m || affine.matrix.iter().any(|r| r.len() != m) {
                    return Err(config("transition.affine.matrix", "expected an m by m matrix"));
                }
                let offset = if affine.offset.is_empty() {
                    vec![0.0; m]
                } else if affine.offset.len() == m {
                    affine.offset.clone()
                } else {
                    return Err(config("transition.affine.offset", "expected m entries"));
                };
                let matrix = Mat::from_fn(m, m, |i, j| affine.matrix[i][j]);
                ChartTransition::new(
                    partition.clone(),
                    partition,
                    TransitionMap::Affine { matrix, offset },
                    "affine",
                )
                .map_err(|e| config("transition.affine", &format!("{e}")))
            }
        }
    }

    pub fn signature_factor(&self) -> Result<f64, AppError> {
        let s = self.signature_factor.unwrap_or(1.0);
        if s != 1.0 && s != -1.0 {
            return Err(config("signature_factor", "must be +1 or -1"));
        }
        Ok(s)
    }
}

fn build_poly(m: usize, terms: &[TermSpec], path: &str) -> Result<PolynomialScalarField, AppError> {
    let mut list = Vec::with_capacity(terms.len());
    for (k, t) in terms.iter().enumerate() {
        if t.exponents.len() != m {
            return Err(config(
                &format!("{path}[{k}].exponents"),
                "expected m exponents",
            ));
        }
        list.push((t.coefficient, t.exponents.clone()));
    }
    Ok(PolynomialScalarField::new(m, list))
}
