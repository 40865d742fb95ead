//! Two-parameter Baxterisation and the braided R-matrix property checks.
//!
//! For a generator `S` solving the `σ` relation, `Ř(x, y) = (1 − yS)(1 − xS)⁻¹`
//! solves the braided Yang–Baxter equation; for a `T` solving the `τ`
//! relation the spectral parameters swap roles, `Ř(x, y) = (1 − xT)(1 − yT)⁻¹`.
//! The checkers take the R-matrix as a closure so Baxterised and closed-form
//! constructions go through the same code.

use serde::{Deserialize, Serialize};

use crate::algebra::CheckReport;
use crate::error::{Error, Result};
use crate::linalg::{embed, LocalOperator, Matrix};
use crate::scalar::Scalar;

/// Spectral parameters at which an R-matrix identity is evaluated.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpectralPoint {
    pub x: Scalar,
    pub y: Scalar,
    pub z: Scalar,
}

impl SpectralPoint {
    pub fn new(x: Scalar, y: Scalar, z: Scalar) -> Self {
        SpectralPoint { x, y, z }
    }
}

/// `(1 − t·op)⁻¹`, reporting `param = t` when singular.
pub fn resolvent(op: &LocalOperator, t: &Scalar, param: &'static str) -> Result<Matrix> {
    let mat = op.mat();
    let shifted = &Matrix::identity(mat.dim()) - &mat.scale(t);
    shifted.inverse().map_err(|_| Error::SingularResolvent { param, value: t.clone() })
}

fn one_minus(op: &LocalOperator, t: &Scalar) -> Matrix {
    let mat = op.mat();
    &Matrix::identity(mat.dim()) - &mat.scale(t)
}

/// `Ř(x, y) = (1 − yS)(1 − xS)⁻¹`.
pub fn baxterise_sigma(s: &LocalOperator, x: &Scalar, y: &Scalar) -> Result<Matrix> {
    let inv = resolvent(s, x, "x")?;
    Ok(&one_minus(s, y) * &inv)
}

/// `Ř(x, y) = (1 − xT)(1 − yT)⁻¹`.
pub fn baxterise_tau(t: &LocalOperator, x: &Scalar, y: &Scalar) -> Result<Matrix> {
    let inv = resolvent(t, y, "y")?;
    Ok(&one_minus(t, x) * &inv)
}

/// `∂Ř(x, y)/∂x = (1 − yS)(1 − xS)⁻¹ S (1 − xS)⁻¹`.
pub fn baxterise_sigma_dx(s: &LocalOperator, x: &Scalar, y: &Scalar) -> Result<Matrix> {
    let inv = resolvent(s, x, "x")?;
    Ok(&(&(&one_minus(s, y) * &inv) * s.mat()) * &inv)
}

/// `A(x) = Σ₂(x)Σ₁(x)` on three sites, as the factored product.
pub fn a_operator_factored(s: &LocalOperator, x: &Scalar) -> Matrix {
    let s12 = embed(s, 1, 3).expect("valid site");
    let s23 = embed(s, 2, 3).expect("valid site");
    let id = Matrix::identity(s12.dim());
    let sigma1 = &id - &s12.scale(x);
    let sigma2 = &id - &s23.scale(x);
    &sigma2 * &sigma1
}

/// `A(x) = 1 − x(S₁₂ + S₂₃) + x²·S₂₃S₁₂`.
pub fn a_operator(s: &LocalOperator, x: &Scalar) -> Matrix {
    let s12 = embed(s, 1, 3).expect("valid site");
    let s23 = embed(s, 2, 3).expect("valid site");
    let id = Matrix::identity(s12.dim());
    let linear = (&s12 + &s23).scale(x);
    let quadratic = (&s23 * &s12).scale(&(x * x));
    &(&id - &linear) + &quadratic
}

/// `[A(x), A(y)] = 0`.
pub fn check_a_commutativity(s: &LocalOperator, x: &Scalar, y: &Scalar) -> CheckReport {
    CheckReport::from_residual(&a_operator(s, x).commutator(&a_operator(s, y)), format!("[A({x}), A({y})] ≠ 0"))
}

fn two_site_on_three(r: &Matrix, m: usize, site: usize) -> Result<Matrix> {
    let op = LocalOperator::new(m, r.clone())?;
    embed(&op, site, 3)
}

/// `Ř₁(x,y) Ř₂(x,z) Ř₁(y,z) = Ř₂(y,z) Ř₁(x,z) Ř₂(x,y)` on three sites.
pub fn check_braided_ybe<F>(r: F, m: usize, x: &Scalar, y: &Scalar, z: &Scalar) -> Result<CheckReport>
where
    F: Fn(&Scalar, &Scalar) -> Result<Matrix>,
{
    let rxy = r(x, y)?;
    let rxz = r(x, z)?;
    let ryz = r(y, z)?;
    let lhs = &(&two_site_on_three(&rxy, m, 1)? * &two_site_on_three(&rxz, m, 2)?) * &two_site_on_three(&ryz, m, 1)?;
    let rhs = &(&two_site_on_three(&ryz, m, 2)? * &two_site_on_three(&rxz, m, 1)?) * &two_site_on_three(&rxy, m, 2)?;
    Ok(CheckReport::from_equality(&lhs, &rhs, format!("braided YBE fails at (x, y, z) = ({x}, {y}, {z})")))
}

/// `Ř(x, y)Ř(y, x) = 1` at each point.
pub fn check_unitarity<F>(r: F, m: usize, points: &[SpectralPoint]) -> Result<CheckReport>
where
    F: Fn(&Scalar, &Scalar) -> Result<Matrix>,
{
    for p in points {
        let prod = &r(&p.x, &p.y)? * &r(&p.y, &p.x)?;
        check_local_dim(&prod, m)?;
        let report =
            CheckReport::from_equality(&prod, &Matrix::identity(m * m), format!("Ř({0},{1})Ř({1},{0}) ≠ 1", p.x, p.y));
        if !report.passed {
            return Ok(report);
        }
    }
    Ok(CheckReport::pass())
}

/// `Ř(x, x) = 1` at each point's `x`.
pub fn check_regularity<F>(r: F, m: usize, points: &[SpectralPoint]) -> Result<CheckReport>
where
    F: Fn(&Scalar, &Scalar) -> Result<Matrix>,
{
    for p in points {
        let rxx = r(&p.x, &p.x)?;
        check_local_dim(&rxx, m)?;
        let report = CheckReport::from_equality(&rxx, &Matrix::identity(m * m), format!("Ř({0},{0}) ≠ 1", p.x));
        if !report.passed {
            return Ok(report);
        }
    }
    Ok(CheckReport::pass())
}

/// `Ř₁(x, y)` and `Ř₃(z, x)` commute on a four-site chain.
pub fn check_locality<F>(r: F, m: usize, points: &[SpectralPoint]) -> Result<CheckReport>
where
    F: Fn(&Scalar, &Scalar) -> Result<Matrix>,
{
    for p in points {
        let first = LocalOperator::new(m, r(&p.x, &p.y)?)?;
        let third = LocalOperator::new(m, r(&p.z, &p.x)?)?;
        let a = embed(&first, 1, 4)?;
        let b = embed(&third, 3, 4)?;
        let report = CheckReport::from_residual(
            &a.commutator(&b),
            format!("Ř₁({},{}) and Ř₃({},{}) do not commute", p.x, p.y, p.z, p.x),
        );
        if !report.passed {
            return Ok(report);
        }
    }
    Ok(CheckReport::pass())
}

fn check_local_dim(mat: &Matrix, m: usize) -> Result<()> {
    if mat.dim() != m * m {
        return Err(Error::DimensionMismatch { expected: m * m, found: mat.dim() });
    }
    Ok(())
}

/// `Ř^H(z₁, z₂) = 1 + (z₂ − z₁)/(z₁ − 1)·g` for an idempotent, braid-compatible `g`.
pub fn hecke_rmatrix(g: &LocalOperator, z1: &Scalar, z2: &Scalar) -> Result<Matrix> {
    let denom = (z1 - &Scalar::one()).inverse().map_err(|_| Error::Pole { factor: "z1-1".into() })?;
    let coeff = &(z2 - z1) * &denom;
    Ok(&Matrix::identity(g.mat().dim()) + &g.mat().scale(&coeff))
}

/// `Ř(x, z) = Ř^ρ(x, z)·Ř^ζ(x, z)` with `Ř^ρ` the `σ`-Baxterisation of `S`
/// and `Ř^ζ` the `τ`-Baxterisation of `T`.
pub fn product_rmatrix(s: &LocalOperator, t: &LocalOperator, x: &Scalar, z: &Scalar) -> Result<Matrix> {
    if s.m() != t.m() {
        return Err(Error::DimensionMismatch { expected: s.m(), found: t.m() });
    }
    Ok(&baxterise_sigma(s, x, z)? * &baxterise_tau(t, x, z)?)
}
