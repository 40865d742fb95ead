//! Named property checks, each evaluated at one random admissible point.
//!
//! A [`Check`] runs against a concrete [`FamilyInstance`]; spectral points and
//! auxiliary draws (Möbius parameters, conjugating matrices) come from the
//! supplied generator. Points where a resolvent or closed-form denominator
//! vanishes are redrawn.

use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::algebra::{check_hecke, check_relation, mobius, CheckReport, Relation};
use crate::baxterisation::{
    a_operator, a_operator_factored, baxterise_sigma, baxterise_tau, check_braided_ybe, check_locality,
    check_regularity, check_unitarity, hecke_rmatrix, product_rmatrix, SpectralPoint,
};
use crate::catalog::{build_family, closed_form_r, Family, FamilyInstance};
use crate::error::{Error, Result};
use crate::integrability::{hamiltonian, transfer_derivative, transfer_matrix, ChainSpec};
use crate::linalg::{st_map, sym_transform, LocalOperator, Matrix, StKind, SymKind};
use crate::sampling::{draw_admissible, random_invertible, random_mobius, small_rational};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Relation,
    Ybe,
    Unitarity,
    Regularity,
    Locality,
    AOperator,
    ClosedForm,
    Mobius,
    Symmetry,
    Hecke,
    Product,
    Singular,
    Transfer,
    Hamiltonian,
}

impl Check {
    pub const ALL: [Check; 14] = [
        Check::Relation,
        Check::Ybe,
        Check::Unitarity,
        Check::Regularity,
        Check::Locality,
        Check::AOperator,
        Check::ClosedForm,
        Check::Mobius,
        Check::Symmetry,
        Check::Hecke,
        Check::Product,
        Check::Singular,
        Check::Transfer,
        Check::Hamiltonian,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Check::Relation => "relation",
            Check::Ybe => "ybe",
            Check::Unitarity => "unitarity",
            Check::Regularity => "regularity",
            Check::Locality => "locality",
            Check::AOperator => "a_operator",
            Check::ClosedForm => "closed_form",
            Check::Mobius => "mobius",
            Check::Symmetry => "symmetry",
            Check::Hecke => "hecke",
            Check::Product => "product",
            Check::Singular => "singular",
            Check::Transfer => "transfer",
            Check::Hamiltonian => "hamiltonian",
        }
    }

    /// Whether the check is meaningful for generators of `family`.
    pub fn applies_to(self, family: Family) -> bool {
        let four = !family.is_tasep();
        match self {
            Check::Relation | Check::Ybe | Check::Unitarity | Check::Regularity | Check::Locality => true,
            Check::Mobius | Check::Symmetry => true,
            Check::AOperator | Check::Transfer | Check::Hamiltonian => true,
            Check::Hecke => family != Family::TasepT,
            Check::ClosedForm => four,
            Check::Product | Check::Singular => family == Family::TasepS,
        }
    }

    /// Whether the check depends on a chain length.
    pub fn uses_chain(self) -> bool {
        matches!(self, Check::Transfer | Check::Hamiltonian)
    }
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Check {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        Check::ALL
            .into_iter()
            .find(|c| c.name() == text.trim())
            .ok_or_else(|| Error::InvalidParameter(format!("unknown check `{text}`")))
    }
}

/// Extra inputs some checks need.
#[derive(Clone, Debug, Default)]
pub struct CheckContext {
    /// Chain length for transfer/Hamiltonian checks.
    pub n: usize,
    /// Hecke parameter for the quadratic relation.
    pub xi: Scalar,
    /// The `TASEP_T` partner of a `TASEP_S` instance for the product R-matrix.
    pub partner: Option<FamilyInstance>,
}

impl CheckContext {
    pub fn with_chain(n: usize) -> Self {
        CheckContext { n, ..Default::default() }
    }
}

/// The relation convention a family's generator satisfies.
pub fn relation_of(family: Family) -> Relation {
    if family == Family::TasepT {
        Relation::Tau
    } else {
        Relation::Sigma
    }
}

/// The braided R-matrix of `op` under its convention.
pub fn rmatrix_for(op: &LocalOperator, relation: Relation, x: &Scalar, y: &Scalar) -> Result<Matrix> {
    match relation {
        Relation::Sigma => baxterise_sigma(op, x, y),
        Relation::Tau => baxterise_tau(op, x, y),
    }
}

/// Pairwise-distinct spectral values. Coinciding values make several
/// identities hold trivially.
fn draw_point<R: Rng + ?Sized>(rng: &mut R) -> SpectralPoint {
    loop {
        let (x, y, z) = (small_rational(rng), small_rational(rng), small_rational(rng));
        if x != y && y != z && x != z {
            return SpectralPoint::new(x, y, z);
        }
    }
}

/// Runs one trial of `check` against `spec`.
pub fn run_check<R: Rng + ?Sized>(
    check: Check,
    spec: &FamilyInstance,
    ctx: &CheckContext,
    rng: &mut R,
) -> Result<CheckReport> {
    if !check.applies_to(spec.family) {
        return Err(Error::InvalidParameter(format!("check `{check}` does not apply to {}", spec.family)));
    }
    let op = build_family(spec)?;
    run_check_on(check, &op, relation_of(spec.family), Some(spec), ctx, rng)
}

/// As [`run_check`] for a bare generator. Checks that need a family
/// (closed form, product) require `spec`.
pub fn run_check_on<R: Rng + ?Sized>(
    check: Check,
    op: &LocalOperator,
    relation: Relation,
    spec: Option<&FamilyInstance>,
    ctx: &CheckContext,
    rng: &mut R,
) -> Result<CheckReport> {
    let m = op.m();
    let r = |x: &Scalar, y: &Scalar| rmatrix_for(op, relation, x, y);
    let sigma_only = || -> Result<()> {
        if relation == Relation::Tau {
            return Err(Error::InvalidParameter(format!("check `{check}` needs a σ-type generator")));
        }
        Ok(())
    };

    match check {
        Check::Relation => Ok(check_relation(op, relation)),
        Check::Ybe => {
            let (p, ()) = draw_admissible(rng, draw_point, |p| {
                r(&p.x, &p.y)?;
                r(&p.x, &p.z)?;
                r(&p.y, &p.z).map(|_| ())
            })?;
            check_braided_ybe(r, m, &p.x, &p.y, &p.z)
        }
        Check::Unitarity => {
            let (p, ()) = draw_admissible(rng, draw_point, |p| {
                r(&p.x, &p.y)?;
                r(&p.y, &p.x).map(|_| ())
            })?;
            check_unitarity(r, m, &[p])
        }
        Check::Regularity => {
            let (p, ()) = draw_admissible(rng, draw_point, |p| r(&p.x, &p.x).map(|_| ()))?;
            check_regularity(r, m, &[p])
        }
        Check::Locality => {
            let (p, ()) = draw_admissible(rng, draw_point, |p| {
                r(&p.x, &p.y)?;
                r(&p.z, &p.x).map(|_| ())
            })?;
            check_locality(r, m, &[p])
        }
        Check::AOperator => {
            let op = &sigma_form(op, relation)?;
            let r = |x: &Scalar, y: &Scalar| baxterise_sigma(op, x, y);
            let (p, ybe) = draw_admissible(rng, draw_point, |p| check_braided_ybe(r, m, &p.x, &p.y, &p.z))?;
            a_operator_agreement(op, &p, &ybe)
        }
        Check::ClosedForm => {
            let spec = spec.ok_or_else(|| Error::InvalidParameter("closed form needs a family instance".into()))?;
            let (p, (closed, baxterised)) = draw_admissible(rng, draw_point, |p| {
                Ok((closed_form_r(spec, &p.x, &p.y)?, baxterise_sigma(op, &p.x, &p.y)?))
            })?;
            Ok(CheckReport::from_equality(
                &closed,
                &baxterised,
                format!("closed form ≠ Baxterisation at (x, y) = ({}, {})", p.x, p.y),
            ))
        }
        Check::Mobius => {
            let (p, image) = draw_admissible(rng, |g| random_mobius(g), |p| mobius(op, p))?;
            let closure = check_relation(&image, relation);
            if !closure.passed {
                return Ok(closure);
            }
            let (q, twice) = draw_admissible(rng, |g| random_mobius(g), |q| mobius(&image, q))?;
            match q.compose(&p) {
                Some(composed) => match mobius(op, &composed) {
                    Ok(direct) => {
                        Ok(CheckReport::from_equality(twice.mat(), direct.mat(), "Möbius composition mismatch"))
                    }
                    // The composed map can be undefined on this operator even when both factors are.
                    Err(Error::MobiusUndefined { .. }) => Ok(CheckReport::pass()),
                    Err(e) => Err(e),
                },
                None => Ok(CheckReport::pass()),
            }
        }
        Check::Symmetry => symmetry_closure(op, relation, rng),
        Check::Hecke => {
            sigma_only()?;
            let quadratic = check_hecke(op, &ctx.xi);
            if !quadratic.passed || !ctx.xi.is_zero() {
                return Ok(quadratic);
            }
            let (p, (closed, baxterised)) = draw_admissible(rng, draw_point, |p| {
                Ok((hecke_rmatrix(op, &p.x, &p.y)?, baxterise_sigma(op, &p.x, &p.y)?))
            })?;
            Ok(CheckReport::from_equality(
                &closed,
                &baxterised,
                format!("Hecke form ≠ Baxterisation at ({}, {})", p.x, p.y),
            ))
        }
        Check::Product => {
            sigma_only()?;
            let partner = ctx
                .partner
                .as_ref()
                .ok_or_else(|| Error::InvalidParameter("product check needs TASEP_T rates (zeta_j, nu_i_j)".into()))?;
            let t = build_family(partner)?;
            product_trial(op, &t, rng)
        }
        Check::Singular => Ok(if op.mat().determinant().is_zero() {
            CheckReport::pass()
        } else {
            CheckReport::fail(0, 0, op.mat().determinant(), "generator is invertible")
        }),
        Check::Transfer => {
            let op = &sigma_form(op, relation)?;
            let n = ctx.n;
            let (p, (tz, tx, ty)) = draw_admissible(rng, draw_point, |p| {
                let chain = ChainSpec::new(op.clone(), n, p.z.clone());
                Ok((transfer_matrix(&chain, &p.z)?, transfer_matrix(&chain, &p.x)?, transfer_matrix(&chain, &p.y)?))
            })?;
            let commute = CheckReport::from_residual(
                &tx.commutator(&ty),
                format!("[t({}|{z}), t({}|{z})] ≠ 0", p.x, p.y, z = p.z),
            );
            Ok(commute.and_then(|| {
                CheckReport::from_equality(
                    &tz.pow(n as u32),
                    &Matrix::identity(tz.dim()),
                    format!("t({0}|{0})^{n} ≠ 1", p.z),
                )
            }))
        }
        Check::Hamiltonian => {
            let op = &sigma_form(op, relation)?;
            let n = ctx.n;
            let (p, (h, dt, tx)) = draw_admissible(rng, draw_point, |p| {
                let chain = ChainSpec::new(op.clone(), n, p.z.clone());
                Ok((hamiltonian(&chain)?, transfer_derivative(&chain)?, transfer_matrix(&chain, &p.x)?))
            })?;
            let identity = CheckReport::from_equality(&dt, &h, format!("t'(z)t(z)⁻¹ ≠ H at z = {}", p.z));
            Ok(identity
                .and_then(|| CheckReport::from_residual(&h.commutator(&tx), format!("[H, t({}|{})] ≠ 0", p.x, p.z))))
        }
    }
}

/// The σ-type generator carrying the same chain. A τ-type `T` is flipped to
/// `PTP`, whose σ-Baxterisation is `PŘ^τ(y, x)P`.
fn sigma_form(op: &LocalOperator, relation: Relation) -> Result<LocalOperator> {
    match relation {
        Relation::Sigma => Ok(op.clone()),
        Relation::Tau => st_map(op, StKind::Flip),
    }
}

/// `[A(x), A(y)] = 0` for every pair drawn from the point, the two forms of
/// `A` agree, and the A-verdict matches the YBE verdict at the same point.
fn a_operator_agreement(op: &LocalOperator, p: &SpectralPoint, ybe: &CheckReport) -> Result<CheckReport> {
    for t in [&p.x, &p.y, &p.z] {
        let report =
            CheckReport::from_equality(&a_operator(op, t), &a_operator_factored(op, t), "A(x) expansions disagree");
        if !report.passed {
            return Ok(report);
        }
    }
    let pairs = [(&p.x, &p.y), (&p.x, &p.z), (&p.y, &p.z)];
    let commute = CheckReport::all(pairs.iter().map(|(a, b)| crate::baxterisation::check_a_commutativity(op, a, b)));
    if commute.passed != ybe.passed {
        return Ok(CheckReport::fail(
            0,
            0,
            Scalar::zero(),
            format!("A-commutativity ({}) disagrees with YBE ({})", commute.passed, ybe.passed),
        ));
    }
    Ok(commute)
}

/// Closure of the relation under inverse, transpose-flip and `Q⊗Q`
/// conjugation, plus the transpose/flip maps into the other convention and back.
fn symmetry_closure<R: Rng + ?Sized>(op: &LocalOperator, relation: Relation, rng: &mut R) -> Result<CheckReport> {
    let q = random_invertible(op.m(), rng)?;
    let mut kinds = vec![SymKind::TransposeFlip, SymKind::Conjugate(q)];
    if !op.mat().determinant().is_zero() {
        kinds.push(SymKind::Inverse);
    }
    for kind in &kinds {
        let image = sym_transform(op, kind)?;
        let report = check_relation(&image, relation);
        if !report.passed {
            return Ok(report);
        }
    }
    for kind in [StKind::Transpose, StKind::Flip] {
        let image = st_map(op, kind)?;
        let report = check_relation(&image, relation.other());
        if !report.passed {
            return Ok(report);
        }
        // Both maps are involutions, so the image maps back to a solution.
        let back = st_map(&image, kind)?;
        let report = check_relation(&back, relation);
        if !report.passed {
            return Ok(report);
        }
    }
    Ok(CheckReport::pass())
}

/// YBE and unitarity of the product R-matrix at one admissible point.
pub fn product_trial<R: Rng + ?Sized>(s: &LocalOperator, t: &LocalOperator, rng: &mut R) -> Result<CheckReport> {
    let r = |x: &Scalar, z: &Scalar| product_rmatrix(s, t, x, z);
    let (p, ()) = draw_admissible(rng, draw_point, |p| {
        for (a, b) in [(&p.x, &p.y), (&p.x, &p.z), (&p.y, &p.z), (&p.y, &p.x)] {
            r(a, b)?;
        }
        Ok(())
    })?;
    let ybe = check_braided_ybe(r, s.m(), &p.x, &p.y, &p.z)?;
    if !ybe.passed {
        return Ok(ybe);
    }
    check_unitarity(r, s.m(), &[p])
}
