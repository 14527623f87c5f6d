//! The n = 2 worldsheet example: induced metric `h_{μν} = η_AB z^A_μ z^B_ν`
//! for a constant non-degenerate target metric η, the density
//! `𝓛 = (s·det h)^{1/2}`, its pointwise variational derivative through the
//! second jet, and diffeomorphism invariance of the patch action.
//!
//! The signature factor `s = ±1` sits inside the root: `det h > 0` for
//! Euclidean-type targets (Cauchy–Schwarz) but `det h < 0` on Lorentzian
//! worldsheets, where the standard string convention is `s = −1`. The
//! default is `s = +1`.

use crate::dual::{second_partial, Dual};
use crate::error::Error;
use crate::linalg::Mat;
use crate::quad::simpson_2d;
use crate::scalar::Scalar;
use crate::Result;
use alloc::vec;
use alloc::vec::Vec;

/// A second-order jet of a worldsheet immersion: target coordinates,
/// tangent matrix `z^A_μ` and symmetric second derivatives `z^A_{μν}`.
#[derive(Debug, Clone, PartialEq)]
pub struct WorldsheetJet {
    /// Target coordinates z^A (unused by the density, which depends on the
    /// first jet only, but part of the jet).
    pub z: Vec<f64>,
    /// Rows indexed by A, columns by the worldsheet index μ ∈ {0, 1}.
    pub z1: Vec<[f64; 2]>,
    /// Per target index A: (z^A_{00}, z^A_{01} = z^A_{10}, z^A_{11}).
    pub z2: Vec<[f64; 3]>,
}

impl WorldsheetJet {
    pub fn new(z: Vec<f64>, z1: Vec<[f64; 2]>, z2: Vec<[f64; 3]>) -> Self {
        assert_eq!(z.len(), z1.len());
        assert_eq!(z.len(), z2.len());
        WorldsheetJet { z, z1, z2 }
    }

    /// An affine sheet: first jet only, all second derivatives zero.
    pub fn affine(z: Vec<f64>, z1: Vec<[f64; 2]>) -> Self {
        let m = z.len();
        WorldsheetJet::new(z, z1, vec![[0.0; 3]; m])
    }

    pub fn dimension(&self) -> usize {
        self.z.len()
    }

    /// `z^A_{μν}` with symmetric index handling.
    pub fn second(&self, a: usize, mu: usize, nu: usize) -> f64 {
        self.z2[a][mu + nu]
    }
}

/// Constant symmetric non-degenerate target metric with the sign put under
/// the square root of the density.
#[derive(Debug, Clone, PartialEq)]
pub struct FlatTargetMetric {
    eta: Mat,
    signature_factor: f64,
}

impl FlatTargetMetric {
    pub fn new(eta: Mat, signature_factor: f64) -> Result<Self> {
        if eta.rows() != eta.cols() {
            return Err(Error::DimensionMismatch);
        }
        for a in 0..eta.rows() {
            for b in 0..a {
                if eta.get(a, b) != eta.get(b, a) {
                    return Err(Error::DimensionMismatch);
                }
            }
        }
        assert!(
            signature_factor == 1.0 || signature_factor == -1.0,
            "signature factor must be +1 or -1"
        );
        Ok(FlatTargetMetric {
            eta,
            signature_factor,
        })
    }

    /// Euclidean target δ_AB with s = +1.
    pub fn euclidean(dimension: usize) -> Self {
        FlatTargetMetric {
            eta: Mat::from_fn(dimension, dimension, |a, b| if a == b { 1.0 } else { 0.0 }),
            signature_factor: 1.0,
        }
    }

    /// Minkowski target diag(+, −, …, −); the worldsheet determinant is
    /// negative for timelike sheets, so s defaults to −1 here.
    pub fn minkowski(dimension: usize) -> Self {
        FlatTargetMetric {
            eta: Mat::from_fn(dimension, dimension, |a, b| {
                if a != b {
                    0.0
                } else if a == 0 {
                    1.0
                } else {
                    -1.0
                }
            }),
            signature_factor: -1.0,
        }
    }

    pub fn with_signature_factor(mut self, s: f64) -> Self {
        assert!(s == 1.0 || s == -1.0);
        self.signature_factor = s;
        self
    }

    pub fn dimension(&self) -> usize {
        self.eta.rows()
    }

    pub fn signature_factor(&self) -> f64 {
        self.signature_factor
    }

    pub fn matrix(&self) -> &Mat {
        &self.eta
    }

    /// `h_{μν} = η_AB z^A_μ z^B_ν` as a 2×2 matrix.
    pub fn induced_metric(&self, z1: &[[f64; 2]]) -> Mat {
        let m = self.dimension();
        debug_assert_eq!(z1.len(), m);
        Mat::from_fn(2, 2, |mu, nu| {
            let mut acc = 0.0;
            for a in 0..m {
                for b in 0..m {
                    let e = self.eta.get(a, b);
                    if e != 0.0 {
                        acc += e * z1[a][mu] * z1[b][nu];
                    }
                }
            }
            acc
        })
    }

    /// The density on a flattened tangent matrix (index A·2 + μ), generic
    /// over the scalar type for nested-dual differentiation.
    fn density_flat<T: Scalar>(&self, z1: &[T]) -> Result<T> {
        let m = self.dimension();
        let mut h = [T::zero(), T::zero(), T::zero()]; // h00, h01, h11
        for a in 0..m {
            for b in 0..m {
                let e = self.eta.get(a, b);
                if e == 0.0 {
                    continue;
                }
                let e = T::from_f64(e);
                h[0] = h[0] + e * z1[a * 2] * z1[b * 2];
                h[1] = h[1] + e * z1[a * 2] * z1[b * 2 + 1];
                h[2] = h[2] + e * z1[a * 2 + 1] * z1[b * 2 + 1];
            }
        }
        let det = h[0] * h[2] - h[1] * h[1];
        let signed = T::from_f64(self.signature_factor) * det;
        if signed.value() <= 0.0 {
            return Err(Error::DegenerateWorldsheet {
                det: signed.value(),
            });
        }
        Ok(signed.sqrt())
    }

    /// `(s·det h)^{1/2}`.
    pub fn ng_density(&self, z1: &[[f64; 2]]) -> Result<f64> {
        let flat: Vec<f64> = z1.iter().flat_map(|r| r.iter().copied()).collect();
        self.density_flat(&flat)
    }

    /// The Euler-Lagrange covector
    /// `E_A = −d_μ ∂^μ_A 𝓛 = −∂²𝓛/(∂z^B_ν ∂z^A_μ) z^B_{νμ}`
    /// (for constant η the density has no explicit z dependence).
    pub fn ng_variational_derivative(&self, jet: &WorldsheetJet) -> Result<Vec<f64>> {
        let m = self.dimension();
        if jet.dimension() != m {
            return Err(Error::DimensionMismatch);
        }
        let flat: Vec<f64> = jet.z1.iter().flat_map(|r| r.iter().copied()).collect();
        let f = |y: &[Dual<Dual<f64>>]| self.density_flat(y);
        let mut out = vec![0.0; m];
        for a in 0..m {
            let mut total = 0.0;
            for mu in 0..2 {
                for b in 0..m {
                    for nu in 0..2 {
                        let z2 = jet.second(b, nu, mu);
                        if z2 == 0.0 {
                            continue;
                        }
                        let p = second_partial(&f, &flat, b * 2 + nu, a * 2 + mu)?;
                        total -= p.d_ij * z2;
                    }
                }
            }
            out[a] = total;
        }
        Ok(out)
    }

    /// The two Noether contractions `z^A_ν E_A`, identically zero for any
    /// jet with non-degenerate induced metric.
    pub fn noether_defects(&self, jet: &WorldsheetJet) -> Result<[f64; 2]> {
        let e = self.ng_variational_derivative(jet)?;
        let mut out = [0.0; 2];
        for nu in 0..2 {
            out[nu] = e
                .iter()
                .enumerate()
                .map(|(a, ea)| jet.z1[a][nu] * ea)
                .sum();
        }
        Ok(out)
    }

    /// Patch action `∫∫ 𝓛(z1(σ)) d²σ` over a rectangle by tensor-product
    /// Simpson quadrature; `tangents` returns the tangent matrix at a point.
    pub fn ng_action<F>(
        &self,
        tangents: F,
        s1: (f64, f64),
        s2: (f64, f64),
        panels: usize,
    ) -> Result<f64>
    where
        F: Fn(f64, f64) -> Vec<[f64; 2]>,
    {
        simpson_2d(
            |u, v| self.ng_density(&tangents(u, v)),
            s1,
            s2,
            panels,
            panels,
        )
    }

    /// Finite diffeomorphism invariance of the patch action: the action of
    /// the sheet over its rectangle and the action of the reparametrized
    /// sheet over `r1' × r2'`, where `phi` maps the primed rectangle onto
    /// the original one with Jacobian `phi_jac` (rows ∂σ^μ/∂u^ν). The two
    /// agree up to quadrature error.
    #[allow(clippy::too_many_arguments)]
    pub fn ng_action_invariance<F, P, J>(
        &self,
        tangents: F,
        s1: (f64, f64),
        s2: (f64, f64),
        phi: P,
        phi_jac: J,
        t1: (f64, f64),
        t2: (f64, f64),
        panels: usize,
    ) -> Result<(f64, f64)>
    where
        F: Fn(f64, f64) -> Vec<[f64; 2]>,
        P: Fn(f64, f64) -> (f64, f64),
        J: Fn(f64, f64) -> [[f64; 2]; 2],
    {
        let before = self.ng_action(&tangents, s1, s2, panels)?;
        let after = simpson_2d(
            |u, v| {
                let (a, b) = phi(u, v);
                let base = tangents(a, b);
                let jac = phi_jac(u, v);
                // chain rule: z'^A_ν = z^A_μ ∂σ^μ/∂u^ν
                let pulled: Vec<[f64; 2]> = base
                    .iter()
                    .map(|row| {
                        [
                            row[0] * jac[0][0] + row[1] * jac[1][0],
                            row[0] * jac[0][1] + row[1] * jac[1][1],
                        ]
                    })
                    .collect();
                self.ng_density(&pulled)
            },
            t1,
            t2,
            panels,
            panels,
        )?;
        Ok((before, after))
    }
}
