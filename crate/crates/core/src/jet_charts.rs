//! Chart algebra for first-order jets of n-dimensional submanifolds:
//! transition laws for the slope coordinates, the regularity predicate for
//! section jets, and the two-way maps between submanifold jets and section
//! jets.

use crate::error::Error;
use crate::linalg::Mat;
use crate::poly::PolynomialScalarField;
use crate::Result;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

/// Condition-number bound above which a transition matrix M is treated as
/// singular.
pub const MAX_CONDITION: f64 = 1e12;

/// Default relative singular-value threshold for regularity.
pub const DEFAULT_REGULARITY_TOL: f64 = 1e-9;

/// A split of the m coordinates into n base coordinates x^a and m−n fiber
/// coordinates y^i.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ChartPartition {
    m: usize,
    n: usize,
    base: Vec<usize>,
    fiber: Vec<usize>,
}

impl ChartPartition {
    /// Build a partition from the ordered base index list; the fiber
    /// indices are the rest in ascending order.
    pub fn new(m: usize, base: Vec<usize>) -> Result<Self> {
        let n = base.len();
        if n == 0 || n >= m {
            return Err(Error::DimensionMismatch);
        }
        let mut seen = vec![false; m];
        for &b in &base {
            if b >= m || seen[b] {
                return Err(Error::DimensionMismatch);
            }
            seen[b] = true;
        }
        let fiber = (0..m).filter(|&i| !seen[i]).collect();
        Ok(ChartPartition { m, n, base, fiber })
    }

    /// Build a partition with explicit base and fiber orderings.
    pub fn with_fiber(m: usize, base: Vec<usize>, fiber: Vec<usize>) -> Result<Self> {
        let n = base.len();
        if n == 0 || n >= m || base.len() + fiber.len() != m {
            return Err(Error::DimensionMismatch);
        }
        let mut seen = vec![false; m];
        for &i in base.iter().chain(fiber.iter()) {
            if i >= m || seen[i] {
                return Err(Error::DimensionMismatch);
            }
            seen[i] = true;
        }
        Ok(ChartPartition { m, n, base, fiber })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn base_indices(&self) -> &[usize] {
        &self.base
    }

    pub fn fiber_indices(&self) -> &[usize] {
        &self.fiber
    }
}

/// A first-order jet of an n-dimensional submanifold: a point plus the
/// (m−n)×n slope matrix y^i_a in a given chart partition.
#[derive(Debug, Clone, PartialEq)]
pub struct SubmanifoldJet {
    pub partition: ChartPartition,
    /// All m coordinates z^A of the point.
    pub point: Vec<f64>,
    /// Slopes y^i_a, rows indexed by fiber, columns by base.
    pub slopes: Mat,
}

impl SubmanifoldJet {
    pub fn new(partition: ChartPartition, point: Vec<f64>, slopes: Mat) -> Result<Self> {
        if point.len() != partition.m()
            || slopes.rows() != partition.m() - partition.n()
            || slopes.cols() != partition.n()
        {
            return Err(Error::DimensionMismatch);
        }
        Ok(SubmanifoldJet {
            partition,
            point,
            slopes,
        })
    }
}

/// A first-order jet of a section of the trivial bundle Σ×Z → Σ: parameter
/// point, target point and the m×n velocity matrix z^A_μ.
#[derive(Debug, Clone, PartialEq)]
pub struct SectionJet {
    pub sigma: Vec<f64>,
    pub point: Vec<f64>,
    /// Velocity matrix z^A_μ, m rows by n columns.
    pub velocity: Mat,
}

impl SectionJet {
    pub fn new(sigma: Vec<f64>, point: Vec<f64>, velocity: Mat) -> Result<Self> {
        if velocity.rows() != point.len() || velocity.cols() != sigma.len() {
            return Err(Error::DimensionMismatch);
        }
        Ok(SectionJet {
            sigma,
            point,
            velocity,
        })
    }

    /// True iff the velocity matrix has maximal rank n, judged by the
    /// relative singular-value threshold `tol`.
    pub fn is_regular(&self, tol: f64) -> bool {
        assert!(tol > 0.0);
        let svs = self.velocity.singular_values();
        match (svs.first(), svs.last()) {
            (Some(&max), Some(&min)) => max > 0.0 && min > tol * max,
            _ => false,
        }
    }
}

/// The map underlying a chart transition, from a closed catalog so the
/// Jacobian is always analytic.
#[derive(Debug, Clone, PartialEq)]
pub enum TransitionMap {
    /// z' = A z + b (covers the identity, coordinate swaps and Lorentz
    /// boosts).
    Affine { matrix: Mat, offset: Vec<f64> },
    /// z'^A = p_A(z) with polynomial components.
    Polynomial { components: Vec<PolynomialScalarField> },
}

impl TransitionMap {
    pub fn dimension(&self) -> usize {
        match self {
            TransitionMap::Affine { matrix, .. } => matrix.rows(),
            TransitionMap::Polynomial { components } => components.len(),
        }
    }

    pub fn apply(&self, z: &[f64]) -> Vec<f64> {
        match self {
            TransitionMap::Affine { matrix, offset } => matrix
                .mul_vec(z)
                .iter()
                .zip(offset)
                .map(|(a, b)| a + b)
                .collect(),
            TransitionMap::Polynomial { components } => {
                components.iter().map(|p| p.eval(z)).collect()
            }
        }
    }

    /// Full m×m Jacobian ∂z'/∂z at `z`.
    pub fn jacobian(&self, z: &[f64]) -> Mat {
        match self {
            TransitionMap::Affine { matrix, .. } => matrix.clone(),
            TransitionMap::Polynomial { components } => {
                let m = components.len();
                Mat::from_fn(m, m, |i, j| components[i].partial(j).eval(z))
            }
        }
    }
}

/// A transition between two chart partitions with an evaluable forward map
/// and analytic Jacobian blocks.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartTransition {
    pub source: ChartPartition,
    pub target: ChartPartition,
    pub map: TransitionMap,
    /// Optional axis-aligned validity box (lower, upper) in source
    /// coordinates; `None` means everywhere.
    pub domain: Option<(Vec<f64>, Vec<f64>)>,
    pub description: String,
}

impl ChartTransition {
    pub fn new(
        source: ChartPartition,
        target: ChartPartition,
        map: TransitionMap,
        description: &str,
    ) -> Result<Self> {
        if source.m() != target.m()
            || source.n() != target.n()
            || map.dimension() != source.m()
        {
            return Err(Error::DimensionMismatch);
        }
        Ok(ChartTransition {
            source,
            target,
            map,
            domain: None,
            description: String::from(description),
        })
    }

    pub fn with_domain(mut self, lower: Vec<f64>, upper: Vec<f64>) -> Self {
        self.domain = Some((lower, upper));
        self
    }

    /// Identity transition on a partition.
    pub fn identity(partition: ChartPartition) -> Self {
        let m = partition.m();
        ChartTransition {
            source: partition.clone(),
            target: partition,
            map: TransitionMap::Affine {
                matrix: Mat::identity(m),
                offset: vec![0.0; m],
            },
            domain: None,
            description: String::from("identity"),
        }
    }

    /// Linear transition z' = A z between two partitions.
    pub fn linear(
        source: ChartPartition,
        target: ChartPartition,
        matrix: Mat,
        description: &str,
    ) -> Result<Self> {
        let m = source.m();
        ChartTransition::new(
            source,
            target,
            TransitionMap::Affine {
                matrix,
                offset: vec![0.0; m],
            },
            description,
        )
    }

    /// Lorentz boost mixing coordinates 0 and 1 with rapidity α
    /// (ch = cosh α, sh = sinh α), identity elsewhere. Both charts use the
    /// same partition.
    pub fn lorentz_boost(partition: ChartPartition, cosh_a: f64, sinh_a: f64) -> Result<Self> {
        let m = partition.m();
        if m < 2 {
            return Err(Error::DimensionMismatch);
        }
        let mut a = Mat::identity(m);
        a.set(0, 0, cosh_a);
        a.set(0, 1, -sinh_a);
        a.set(1, 0, -sinh_a);
        a.set(1, 1, cosh_a);
        ChartTransition::linear(partition.clone(), partition, a, "lorentz boost")
    }

    fn check_domain(&self, z: &[f64]) -> Result<()> {
        if let Some((lo, hi)) = &self.domain {
            for ((&z, &l), &h) in z.iter().zip(lo).zip(hi) {
                if z < l || z > h {
                    return Err(Error::DomainError);
                }
            }
        }
        Ok(())
    }

    /// Compose with a following transition (`other` applied after `self`);
    /// only affine maps compose in closed form.
    pub fn compose(&self, other: &ChartTransition) -> Option<ChartTransition> {
        if self.target != other.source {
            return None;
        }
        match (&self.map, &other.map) {
            (
                TransitionMap::Affine { matrix: a1, offset: b1 },
                TransitionMap::Affine { matrix: a2, offset: b2 },
            ) => {
                let matrix = a2.matmul(a1);
                let offset = a2
                    .mul_vec(b1)
                    .iter()
                    .zip(b2)
                    .map(|(x, y)| x + y)
                    .collect();
                Some(ChartTransition {
                    source: self.source.clone(),
                    target: other.target.clone(),
                    map: TransitionMap::Affine { matrix, offset },
                    domain: self.domain.clone(),
                    description: String::from("composition"),
                })
            }
            _ => None,
        }
    }

    /// Inverse of an affine transition.
    pub fn inverse(&self) -> Option<ChartTransition> {
        match &self.map {
            TransitionMap::Affine { matrix, offset } => {
                let inv = matrix.invert()?;
                let neg_b: Vec<f64> = inv.mul_vec(offset).iter().map(|x| -x).collect();
                Some(ChartTransition {
                    source: self.target.clone(),
                    target: self.source.clone(),
                    map: TransitionMap::Affine {
                        matrix: inv,
                        offset: neg_b,
                    },
                    domain: None,
                    description: String::from("inverse"),
                })
            }
            TransitionMap::Polynomial { .. } => None,
        }
    }
}

/// Apply the first-order jet transformation law to a submanifold jet:
/// the point maps forward and the slopes map by
/// `y'^j_a = [(∂y'^j/∂y^k) y^k_b + ∂y'^j/∂x^b] (M^{-1})^b_a` with
/// `M^c_b = (∂x'^c/∂y^k) y^k_b + ∂x'^c/∂x^b`.
pub fn transform_jet(jet: &SubmanifoldJet, t: &ChartTransition) -> Result<SubmanifoldJet> {
    if jet.partition != t.source {
        return Err(Error::DimensionMismatch);
    }
    t.check_domain(&jet.point)?;
    let n = t.source.n();
    let m = t.source.m();
    let jac = t.map.jacobian(&jet.point);

    // M^c_b and the numerator blocks, with rows/columns selected by the
    // source and target partitions.
    let big_m = Mat::from_fn(n, n, |c, b| {
        let row = t.target.base_indices()[c];
        let mut acc = jac.get(row, t.source.base_indices()[b]);
        for (k_pos, &k) in t.source.fiber_indices().iter().enumerate() {
            acc += jac.get(row, k) * jet.slopes.get(k_pos, b);
        }
        acc
    });
    let cond = big_m.cond_inf().unwrap_or(f64::INFINITY);
    if !cond.is_finite() || cond > MAX_CONDITION {
        return Err(Error::SingularTransition { cond });
    }
    let m_inv = big_m.invert().ok_or(Error::SingularTransition { cond })?;

    let numer = Mat::from_fn(m - n, n, |j, b| {
        let row = t.target.fiber_indices()[j];
        let mut acc = jac.get(row, t.source.base_indices()[b]);
        for (k_pos, &k) in t.source.fiber_indices().iter().enumerate() {
            acc += jac.get(row, k) * jet.slopes.get(k_pos, b);
        }
        acc
    });
    let slopes = numer.matmul(&m_inv);
    SubmanifoldJet::new(t.target.clone(), t.map.apply(&jet.point), slopes)
}

/// Extract the submanifold jet of a regular section jet in the chart given
/// by `partition`: `y^i_a = y^i_μ (x^{-1})^μ_a`.
pub fn section_to_submanifold(
    jet: &SectionJet,
    partition: &ChartPartition,
    tol: f64,
) -> Result<SubmanifoldJet> {
    let m = partition.m();
    let n = partition.n();
    if jet.point.len() != m || jet.velocity.cols() != n {
        return Err(Error::DimensionMismatch);
    }
    let base_block = Mat::from_fn(n, n, |a, mu| {
        jet.velocity.get(partition.base_indices()[a], mu)
    });
    let scale = base_block.max_abs();
    let inv = match base_block.invert() {
        Some(inv) if scale > 0.0 => inv,
        _ => return Err(Error::NonRegularInChart),
    };
    if base_block.cond_inf().unwrap_or(f64::INFINITY) > 1.0 / tol.max(1e-16) {
        return Err(Error::NonRegularInChart);
    }
    let fiber_block = Mat::from_fn(m - n, n, |i, mu| {
        jet.velocity.get(partition.fiber_indices()[i], mu)
    });
    let slopes = fiber_block.matmul(&inv);
    SubmanifoldJet::new(partition.clone(), jet.point.clone(), slopes)
}

/// Choose a section-jet representative of a submanifold jet: the base block
/// of the velocity matrix is `base_velocity` and the fiber block is
/// `y^i_a x^a_μ`. Any `base_velocity` is accepted; invertible choices give
/// regular representatives.
pub fn submanifold_to_sections(jet: &SubmanifoldJet, base_velocity: &Mat) -> Result<SectionJet> {
    let m = jet.partition.m();
    let n = jet.partition.n();
    if base_velocity.rows() != n || base_velocity.cols() != n {
        return Err(Error::DimensionMismatch);
    }
    let fiber_block = jet.slopes.matmul(base_velocity);
    let mut velocity = Mat::zeros(m, n);
    for (a_pos, &a) in jet.partition.base_indices().iter().enumerate() {
        for mu in 0..n {
            velocity.set(a, mu, base_velocity.get(a_pos, mu));
        }
    }
    for (i_pos, &i) in jet.partition.fiber_indices().iter().enumerate() {
        for mu in 0..n {
            velocity.set(i, mu, fiber_block.get(i_pos, mu));
        }
    }
    SectionJet::new(vec![0.0; n], jet.point.clone(), velocity)
}
