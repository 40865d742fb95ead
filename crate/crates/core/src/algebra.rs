//! Relation checkers for the braid-like algebras and the Möbius endomorphism.
//!
//! Generators are checked at representation level: a two-site operator `S`
//! is embedded on three sites and the cubic relation is evaluated exactly.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{embed, LocalOperator, Matrix};
use crate::scalar::Scalar;

/// The first failing entry of an identity check.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub row: usize,
    pub col: usize,
    pub residual: Scalar,
    pub desc: String,
}

/// Outcome of an exact identity check. `witness` is present iff the check failed.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckReport {
    pub passed: bool,
    pub witness: Option<Witness>,
}

impl CheckReport {
    pub fn pass() -> Self {
        CheckReport { passed: true, witness: None }
    }

    pub fn fail(row: usize, col: usize, residual: Scalar, desc: impl Into<String>) -> Self {
        CheckReport { passed: false, witness: Some(Witness { row, col, residual, desc: desc.into() }) }
    }

    /// Passes iff `residual` is the zero matrix; otherwise the first nonzero
    /// entry in row-major order becomes the witness.
    pub fn from_residual(residual: &Matrix, desc: impl Into<String>) -> Self {
        match residual.first_nonzero() {
            None => Self::pass(),
            Some((r, c, v)) => Self::fail(r, c, v.clone(), desc),
        }
    }

    /// Passes iff `lhs == rhs`, with the witness taken from `lhs − rhs`.
    pub fn from_equality(lhs: &Matrix, rhs: &Matrix, desc: impl Into<String>) -> Self {
        if lhs.dim() != rhs.dim() {
            return Self::fail(
                0,
                0,
                Scalar::zero(),
                format!("{} (dimension {} vs {})", desc.into(), lhs.dim(), rhs.dim()),
            );
        }
        Self::from_residual(&(lhs - rhs), desc)
    }

    /// First failure wins.
    pub fn and_then(self, next: impl FnOnce() -> CheckReport) -> CheckReport {
        if self.passed {
            next()
        } else {
            self
        }
    }

    /// Combines reports, keeping the first failure.
    pub fn all(reports: impl IntoIterator<Item = CheckReport>) -> CheckReport {
        reports.into_iter().find(|r| !r.passed).unwrap_or_else(Self::pass)
    }
}

/// Which braid-like relation a generator is meant to satisfy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    /// `[σ_{i+1}σ_i, σ_i + σ_{i+1}] = 0`
    Sigma,
    /// `[τ_iτ_{i+1}, τ_i + τ_{i+1}] = 0`
    Tau,
}

impl Relation {
    pub fn other(self) -> Relation {
        match self {
            Relation::Sigma => Relation::Tau,
            Relation::Tau => Relation::Sigma,
        }
    }
}

/// Cubic relation residual for a pair of adjacent generators `(g_i, g_{i+1})`.
fn cubic_residual(first: &Matrix, second: &Matrix, relation: Relation) -> Matrix {
    let product = match relation {
        Relation::Sigma => second * first,
        Relation::Tau => first * second,
    };
    product.commutator(&(first + second))
}

fn check_local(op: &LocalOperator, relation: Relation) -> CheckReport {
    let s12 = embed(op, 1, 3).expect("site 1 of 3 is valid");
    let s23 = embed(op, 2, 3).expect("site 2 of 3 is valid");
    let desc = match relation {
        Relation::Sigma => "[S23·S12, S12 + S23] ≠ 0",
        Relation::Tau => "[T12·T23, T12 + T23] ≠ 0",
    };
    CheckReport::from_residual(&cubic_residual(&s12, &s23, relation), desc)
}

/// `[S₂₃S₁₂, S₁₂ + S₂₃] = 0` on three sites.
pub fn check_s_relation(s: &LocalOperator) -> CheckReport {
    check_local(s, Relation::Sigma)
}

/// `[T₁₂T₂₃, T₁₂ + T₂₃] = 0` on three sites.
pub fn check_t_relation(t: &LocalOperator) -> CheckReport {
    check_local(t, Relation::Tau)
}

pub fn check_relation(op: &LocalOperator, relation: Relation) -> CheckReport {
    check_local(op, relation)
}

/// Checks the full presentation on a chain: the cubic relation for each
/// adjacent pair and commutativity at distance ≥ 2. `ops[i]` is the image of
/// generator `i + 1`.
pub fn check_chain_relations(ops: &[Matrix], n: usize, m: usize) -> Result<CheckReport> {
    check_chain(ops, n, m, Relation::Sigma)
}

/// As [`check_chain_relations`] with the `τ` ordering of the cubic relation.
pub fn check_chain_relations_tau(ops: &[Matrix], n: usize, m: usize) -> Result<CheckReport> {
    check_chain(ops, n, m, Relation::Tau)
}

fn check_chain(ops: &[Matrix], n: usize, m: usize, relation: Relation) -> Result<CheckReport> {
    if n < 1 || ops.len() != n.saturating_sub(1) {
        return Err(Error::DimensionMismatch { expected: n.saturating_sub(1), found: ops.len() });
    }
    let dim = crate::linalg::space_dim(m, n).ok_or(Error::DimensionGuard { dim: usize::MAX, limit: usize::MAX })?;
    if let Some(bad) = ops.iter().find(|op| op.dim() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: bad.dim() });
    }
    for i in 0..ops.len().saturating_sub(1) {
        let residual = cubic_residual(&ops[i], &ops[i + 1], relation);
        let report = CheckReport::from_residual(
            &residual,
            format!("cubic relation fails for generators {} and {}", i + 1, i + 2),
        );
        if !report.passed {
            return Ok(report);
        }
    }
    for i in 0..ops.len() {
        for j in i + 2..ops.len() {
            let report = CheckReport::from_residual(
                &ops[i].commutator(&ops[j]),
                format!("generators {} and {} do not commute", i + 1, j + 1),
            );
            if !report.passed {
                return Ok(report);
            }
        }
    }
    Ok(CheckReport::pass())
}

/// Parameters of `σ ↦ (α + βσ)(1 + γσ)⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MobiusParams {
    pub alpha: Scalar,
    pub beta: Scalar,
    pub gamma: Scalar,
}

impl MobiusParams {
    pub fn new(alpha: Scalar, beta: Scalar, gamma: Scalar) -> Self {
        MobiusParams { alpha, beta, gamma }
    }

    pub fn identity() -> Self {
        Self::new(Scalar::zero(), Scalar::one(), Scalar::zero())
    }

    /// Parameters of `self ∘ inner`, i.e. apply `inner` first. The map
    /// corresponds to the 2×2 matrix `[[β, α], [γ, 1]]`; the product is
    /// renormalized so its lower-right entry is 1, which fails (`None`) when
    /// that entry vanishes.
    pub fn compose(&self, inner: &MobiusParams) -> Option<MobiusParams> {
        let (a1, b1, g1) = (&self.alpha, &self.beta, &self.gamma);
        let (a2, b2, g2) = (&inner.alpha, &inner.beta, &inner.gamma);
        let top_left = b1 * b2 + a1 * g2;
        let top_right = b1 * a2 + a1.clone();
        let bottom_left = g1 * b2 + g2.clone();
        let bottom_right = g1 * a2 + Scalar::one();
        let norm = bottom_right.inverse().ok()?;
        Some(MobiusParams::new(&top_right * &norm, &top_left * &norm, &bottom_left * &norm))
    }
}

/// `(α + βS)(1 + γS)⁻¹`.
pub fn mobius(s: &LocalOperator, p: &MobiusParams) -> Result<LocalOperator> {
    let dim = s.mat().dim();
    let id = Matrix::identity(dim);
    let denom = &id + &s.mat().scale(&p.gamma);
    let denom_inv = denom.inverse().map_err(|_| Error::MobiusUndefined { gamma: p.gamma.clone() })?;
    let numer = &id.scale(&p.alpha) + &s.mat().scale(&p.beta);
    Ok(s.with_matrix(&numer * &denom_inv))
}

/// Hecke relations with parameter `ξ`: `g² = g + ξ` on two sites and the
/// braid relation `g₁g₂g₁ = g₂g₁g₂` on three. `g` need not be invertible.
pub fn check_hecke(g: &LocalOperator, xi: &Scalar) -> CheckReport {
    let mat = g.mat();
    let quadratic = &(mat * mat) - &(mat + &Matrix::identity(mat.dim()).scale(xi));
    CheckReport::from_residual(&quadratic, format!("g² ≠ g + ({xi})")).and_then(|| {
        let g1 = embed(g, 1, 3).expect("valid site");
        let g2 = embed(g, 2, 3).expect("valid site");
        CheckReport::from_equality(&(&(&g1 * &g2) * &g1), &(&(&g2 * &g1) * &g2), "g1·g2·g1 ≠ g2·g1·g2")
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{st_map, StKind};

    fn local(rows: &[&[i64]]) -> LocalOperator {
        LocalOperator::from_matrix(Matrix::from_int_rows(rows).unwrap()).unwrap()
    }

    fn generic() -> LocalOperator {
        LocalOperator::from_matrix(Matrix::from_fn(4, |r, c| Scalar::from_int((r * 4 + c + 1) as i64))).unwrap()
    }

    // S⁽⁴⁾ with (a, b, c, d) = (1, 2, 3, 4).
    fn s4() -> LocalOperator {
        local(&[&[1, 0, 0, 0], &[0, 2, 0, 0], &[0, 3, 1, 0], &[0, 0, 0, 4]])
    }

    fn idempotent() -> LocalOperator {
        local(&[&[0, 0, 0, 0], &[0, 1, 0, 0], &[0, 3, 0, 0], &[0, 0, 0, 0]])
    }

    #[test]
    fn s_relation_examples() {
        assert!(check_s_relation(&LocalOperator::zero(2).unwrap()).passed);
        assert!(check_s_relation(&s4()).passed);
        let report = check_s_relation(&generic());
        assert!(!report.passed);
        let w = report.witness.unwrap();
        assert!(!w.residual.is_zero());
    }

    #[test]
    fn t_relation_examples() {
        for kind in [StKind::Flip, StKind::Transpose] {
            assert!(check_t_relation(&st_map(&s4(), kind).unwrap()).passed);
        }
        assert!(!check_t_relation(&generic()).passed);
    }

    #[test]
    fn witness_is_first_nonzero_row_major() {
        let mut residual = Matrix::zeros(3);
        residual.set(2, 0, Scalar::from_int(5));
        residual.set(1, 2, Scalar::from_int(-1));
        let report = CheckReport::from_residual(&residual, "x");
        assert_eq!(
            report.witness.unwrap(),
            Witness { row: 1, col: 2, residual: Scalar::from_int(-1), desc: "x".into() }
        );
    }

    #[test]
    fn chain_relations() {
        let s = s4();
        let ops: Vec<Matrix> = (1..4).map(|i| embed(&s, i, 4).unwrap()).collect();
        assert!(check_chain_relations(&ops, 4, 2).unwrap().passed);

        let g = generic();
        let ops: Vec<Matrix> = (1..3).map(|i| embed(&g, i, 3).unwrap()).collect();
        assert!(!check_chain_relations(&ops, 3, 2).unwrap().passed);

        let single = vec![g.mat().clone()];
        assert!(check_chain_relations(&single, 2, 2).unwrap().passed);

        assert!(check_chain_relations(&single, 3, 2).is_err());
        assert!(check_chain_relations(&[Matrix::identity(4), Matrix::identity(4)], 3, 2).is_err());
    }

    #[test]
    fn reversed_chain_satisfies_tau_convention() {
        // σ_i ↦ τ_{n−i}: reversing a chain of S-embeddings gives a τ-chain.
        let s = s4();
        let n = 4;
        let mut ops: Vec<Matrix> = (1..n).map(|i| embed(&s, i, n).unwrap()).collect();
        ops.reverse();
        assert!(check_chain_relations_tau(&ops, n, 2).unwrap().passed);
    }

    #[test]
    fn mobius_examples() {
        let s = s4();
        assert_eq!(mobius(&s, &MobiusParams::identity()).unwrap(), s);

        let g = idempotent();
        let half = mobius(&g, &MobiusParams::new(Scalar::zero(), Scalar::one(), Scalar::one())).unwrap();
        assert_eq!(half.mat(), &g.mat().scale(&Scalar::ratio(1, 2)));

        let d = local(&[&[2, 0, 0, 0], &[0, 2, 0, 0], &[0, 0, 2, 0], &[0, 0, 0, 2]]);
        let err = mobius(&d, &MobiusParams::new(Scalar::zero(), Scalar::one(), Scalar::ratio(-1, 2)));
        assert!(matches!(err, Err(Error::MobiusUndefined { .. })));
    }

    #[test]
    fn mobius_composition_matches_sequential_application() {
        let s = s4();
        let p = MobiusParams::new(Scalar::ratio(1, 3), Scalar::from_int(2), Scalar::ratio(-1, 7));
        let q = MobiusParams::new(Scalar::from_int(-1), Scalar::ratio(1, 2), Scalar::ratio(1, 5));
        let r = q.compose(&p).unwrap();
        let twice = mobius(&mobius(&s, &p).unwrap(), &q).unwrap();
        assert_eq!(twice, mobius(&s, &r).unwrap());
        assert_eq!(MobiusParams::identity().compose(&p).unwrap(), p);
    }

    #[test]
    fn hecke_examples() {
        let zero = Scalar::zero();
        assert!(check_hecke(&idempotent(), &zero).passed);
        assert!(check_hecke(&local(&[&[1, 0, 0, 0], &[0, 1, 0, 0], &[0, 0, 1, 0], &[0, 0, 0, 1]]), &zero).passed);
        let report = check_hecke(&local(&[&[2, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0], &[0, 0, 0, 0]]), &zero);
        assert!(!report.passed);
        // 4 − 2 at the (0, 0) entry.
        assert_eq!(report.witness.unwrap().residual, Scalar::from_int(2));
        assert!(check_s_relation(&idempotent()).passed);
    }
}
