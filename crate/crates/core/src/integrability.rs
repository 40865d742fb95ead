//! Periodic transfer matrices and Hamiltonians built from the braided R-matrix.
//!
//! The unbraided matrix is `R(x, y) = Ř(x, y)·P`. The transfer matrix lives on
//! `n` physical sites and is obtained by tracing out an auxiliary site placed
//! in front of them:
//!
//! ```text
//! t(x | z) = tr₀ R₀₁(x, z) R₀₂(x, z) ⋯ R₀ₙ(x, z)
//! ```
//!
//! At `x = z` every factor is a permutation, so `t(z | z)` is the cyclic
//! shift, and the logarithmic derivative there is a sum of local densities
//! `h = S(1 − zS)⁻¹` over the periodic chain.

use crate::algebra::{mobius, MobiusParams, Relation};
use crate::baxterisation::{baxterise_sigma, baxterise_sigma_dx, resolvent};
use crate::error::{Error, Result};
use crate::linalg::{
    conjugate, embed, partial_trace_first, permutation_op, place_pair, space_dim, st_map, LocalOperator, Matrix, StKind,
};
use crate::scalar::Scalar;

/// Largest auxiliary-plus-chain dimension `m^(n+1)` the transfer matrix accepts.
pub const MAX_TRANSFER_DIM: usize = 1024;

/// A homogeneous periodic chain of `n` sites with inhomogeneity `z`.
#[derive(Clone, Debug, PartialEq)]
pub struct ChainSpec {
    pub s: LocalOperator,
    pub n: usize,
    pub z: Scalar,
}

impl ChainSpec {
    pub fn new(s: LocalOperator, n: usize, z: Scalar) -> Self {
        ChainSpec { s, n, z }
    }

    fn validate(&self) -> Result<usize> {
        if self.n < 2 {
            return Err(Error::InvalidParameter(format!("a chain needs at least 2 sites, got {}", self.n)));
        }
        let dim = space_dim(self.s.m(), self.n + 1).unwrap_or(usize::MAX);
        if dim > MAX_TRANSFER_DIM {
            return Err(Error::DimensionGuard { dim, limit: MAX_TRANSFER_DIM });
        }
        Ok(dim)
    }
}

/// `R(x, y) = Ř(x, y)·P`.
pub fn unbraided_r(s: &LocalOperator, x: &Scalar, y: &Scalar) -> Result<LocalOperator> {
    let p = permutation_op(s.m())?;
    LocalOperator::new(s.m(), &baxterise_sigma(s, x, y)? * p.mat())
}

/// `tr₀` of the ordered product `F₁F₂⋯Fₙ`, each `F_k` a two-site operator
/// acting on the auxiliary site and physical site `k`.
fn traced_product(factors: &[&LocalOperator], m: usize, n: usize) -> Result<Matrix> {
    let mut acc: Option<Matrix> = None;
    for (k, f) in factors.iter().enumerate() {
        let placed = place_pair(f, 1, k + 2, n + 1)?;
        acc = Some(match acc {
            None => placed,
            Some(prev) => &prev * &placed,
        });
    }
    partial_trace_first(&acc.expect("n ≥ 2 factors"), m, n)
}

/// `t(x | z)` on the `n`-site chain.
pub fn transfer_matrix(spec: &ChainSpec, x: &Scalar) -> Result<Matrix> {
    spec.validate()?;
    let r = unbraided_r(&spec.s, x, &spec.z)?;
    let factors = vec![&r; spec.n];
    traced_product(&factors, spec.s.m(), spec.n)
}

/// `h = S(1 − zS)⁻¹`.
pub fn hamiltonian_density(s: &LocalOperator, z: &Scalar) -> Result<LocalOperator> {
    let inv = resolvent(s, z, "z")?;
    LocalOperator::new(s.m(), s.mat() * &inv)
}

/// Sum of `h` over neighbouring pairs `(j, j+1)` plus the wrap-around term
/// whose first tensor slot sits on site `n` and second on site 1.
pub fn hamiltonian(spec: &ChainSpec) -> Result<Matrix> {
    spec.validate()?;
    let h = hamiltonian_density(&spec.s, &spec.z)?;
    let mut total = place_pair(&h, spec.n, 1, spec.n)?;
    for j in 1..spec.n {
        total = &total + &embed(&h, j, spec.n)?;
    }
    Ok(total)
}

/// `(d/dx) t(x | z)` at `x = z`, times `t(z | z)⁻¹`. The derivative is exact:
/// product rule over the `n` factors with `∂Ř/∂x` from the resolvent identity.
pub fn transfer_derivative(spec: &ChainSpec) -> Result<Matrix> {
    spec.validate()?;
    let m = spec.s.m();
    let z = &spec.z;
    let p = permutation_op(m)?;
    let at_z = unbraided_r(&spec.s, z, z)?;
    let d_at_z = LocalOperator::new(m, &baxterise_sigma_dx(&spec.s, z, z)? * p.mat())?;

    let mut derivative = Matrix::zeros(space_dim(m, spec.n).expect("validated"));
    for k in 0..spec.n {
        let factors: Vec<&LocalOperator> = (0..spec.n).map(|j| if j == k { &d_at_z } else { &at_z }).collect();
        derivative = &derivative + &traced_product(&factors, m, spec.n)?;
    }
    let shift = traced_product(&vec![&at_z; spec.n], m, spec.n)?;
    Ok(&derivative * &shift.inverse()?)
}

/// Transformations of a density that keep the model integrable.
#[derive(Clone, Debug, PartialEq)]
pub enum IntegrableTransform {
    /// `(Q⊗Q) h (Q⊗Q)⁻¹`
    Conjugate(Matrix),
    /// `h^{t₁t₂}`
    Transpose,
    /// `P h P`
    Flip,
    /// `(α + βh)(1 + γh)⁻¹`
    Mobius(MobiusParams),
}

impl IntegrableTransform {
    /// The relation the transformed generator satisfies when the input
    /// satisfies `source`. Transpose and flip exchange the two conventions.
    pub fn target_relation(&self, source: Relation) -> Relation {
        match self {
            IntegrableTransform::Transpose | IntegrableTransform::Flip => source.other(),
            IntegrableTransform::Conjugate(_) | IntegrableTransform::Mobius(_) => source,
        }
    }
}

pub fn integrable_transform(h: &LocalOperator, kind: &IntegrableTransform) -> Result<LocalOperator> {
    match kind {
        IntegrableTransform::Conjugate(q) => LocalOperator::new(h.m(), conjugate(h, q)?),
        IntegrableTransform::Transpose => st_map(h, StKind::Transpose),
        IntegrableTransform::Flip => st_map(h, StKind::Flip),
        IntegrableTransform::Mobius(p) => mobius(h, p),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_relation, check_t_relation};
    use crate::catalog::{build_family, build_tasep_s, Family, FamilyInstance};
    use std::collections::BTreeMap;

    fn q(n: i64, d: i64) -> Scalar {
        Scalar::ratio(n, d)
    }

    fn family(f: Family, values: &[i64]) -> LocalOperator {
        let values: Vec<Scalar> = values.iter().map(|&v| Scalar::from_int(v)).collect();
        build_family(&FamilyInstance::four_by_four(f, &values)).unwrap()
    }

    fn idempotent() -> LocalOperator {
        family(Family::S4, &[0, 1, 3, 0])
    }

    #[test]
    fn unbraided_examples() {
        let s = family(Family::S1, &[2, 3, 5, 7, 11]);
        let p = permutation_op(2).unwrap();
        assert_eq!(&unbraided_r(&s, &q(1, 4), &q(1, 4)).unwrap(), &p);
        assert_eq!(unbraided_r(&LocalOperator::zero(2).unwrap(), &q(1, 3), &q(2, 3)).unwrap(), p);
        let r = unbraided_r(&s, &q(1, 4), &q(-1, 6)).unwrap();
        assert_eq!(r.mat() * p.mat(), baxterise_sigma(&s, &q(1, 4), &q(-1, 6)).unwrap());
    }

    #[test]
    fn transfer_at_regular_point_is_cyclic_shift() {
        let s = family(Family::S6, &[2, -1, 3, 5]);
        let z = q(1, 7);
        let t = transfer_matrix(&ChainSpec::new(s.clone(), 2, z.clone()), &z).unwrap();
        assert_eq!(&t, permutation_op(2).unwrap().mat());
        for n in 2..=4 {
            let t = transfer_matrix(&ChainSpec::new(s.clone(), n, z.clone()), &z).unwrap();
            assert!(t.pow(n as u32).is_identity());
            assert!(!t.is_identity());
        }
        let zero = ChainSpec::new(LocalOperator::zero(2).unwrap(), 2, q(1, 3));
        assert_eq!(&transfer_matrix(&zero, &q(5, 2)).unwrap(), permutation_op(2).unwrap().mat());
    }

    #[test]
    fn transfer_matrices_commute() {
        let spec = ChainSpec::new(family(Family::S2, &[1, -2, 3, 4, 5]), 3, q(1, 9));
        let a = transfer_matrix(&spec, &q(1, 4)).unwrap();
        let b = transfer_matrix(&spec, &q(-2, 7)).unwrap();
        assert!(a.commutator(&b).is_zero());
    }

    #[test]
    fn dimension_guard() {
        let s3 = build_tasep_s(
            3,
            &[q(1, 1), q(2, 1)],
            &BTreeMap::from([((1, 2), q(1, 1)), ((1, 3), q(1, 1)), ((2, 3), q(1, 1))]),
        )
        .unwrap();
        let spec = ChainSpec::new(s3, 6, q(1, 2));
        assert_eq!(transfer_matrix(&spec, &q(1, 3)), Err(Error::DimensionGuard { dim: 2187, limit: MAX_TRANSFER_DIM }));
        let short = ChainSpec::new(idempotent(), 1, q(1, 2));
        assert!(transfer_matrix(&short, &q(1, 3)).is_err());
    }

    #[test]
    fn density_examples() {
        let s = family(Family::S3, &[1, 2, 4, 3]);
        assert_eq!(hamiltonian_density(&s, &Scalar::zero()).unwrap(), s);
        let g = idempotent();
        let h = hamiltonian_density(&g, &q(1, 2)).unwrap();
        assert_eq!(h.mat(), &g.mat().scale(&q(2, 1)));
        let z = q(-3, 5);
        let via_mobius = mobius(&s, &MobiusParams::new(Scalar::zero(), Scalar::one(), -&z)).unwrap();
        assert_eq!(hamiltonian_density(&s, &z).unwrap(), via_mobius);
    }

    #[test]
    fn hamiltonian_examples() {
        let s = family(Family::S7, &[3, -1, 2]);
        let h = hamiltonian_density(&s, &q(1, 5)).unwrap();
        let spec = ChainSpec::new(s.clone(), 2, q(1, 5));
        let p = permutation_op(2).unwrap();
        let expected = h.mat() + &(&(p.mat() * h.mat()) * p.mat());
        assert_eq!(hamiltonian(&spec).unwrap(), expected);

        let zero = ChainSpec::new(LocalOperator::zero(2).unwrap(), 3, q(1, 5));
        assert!(hamiltonian(&zero).unwrap().is_zero());
    }

    #[test]
    fn derivative_equals_hamiltonian() {
        for (f, vals) in [(Family::S1, &[2, 3, -5, 7, 1][..]), (Family::S6, &[2, -1, 3, 5])] {
            let spec = ChainSpec::new(family(f, vals), 3, q(1, 11));
            let h = hamiltonian(&spec).unwrap();
            assert_eq!(transfer_derivative(&spec).unwrap(), h, "{f}");
            assert!(h.commutator(&transfer_matrix(&spec, &q(2, 7)).unwrap()).is_zero());
        }
        let zero = ChainSpec::new(LocalOperator::zero(2).unwrap(), 3, q(1, 5));
        assert!(transfer_derivative(&zero).unwrap().is_zero());

        // z = 0 and g idempotent: h = g.
        let g = idempotent();
        let spec = ChainSpec::new(g.clone(), 2, Scalar::zero());
        let p = permutation_op(2).unwrap();
        let expected = g.mat() + &(&(p.mat() * g.mat()) * p.mat());
        assert_eq!(transfer_derivative(&spec).unwrap(), expected);
    }

    #[test]
    fn transform_examples() {
        let s = build_tasep_s(2, &[q(2, 1)], &BTreeMap::from([((1, 2), q(3, 1))])).unwrap();
        let h = hamiltonian_density(&s, &q(1, 3)).unwrap();
        let t = integrable_transform(&h, &IntegrableTransform::Transpose).unwrap();
        assert!(check_t_relation(&t).passed);
        assert_eq!(IntegrableTransform::Transpose.target_relation(Relation::Sigma), Relation::Tau);

        assert_eq!(integrable_transform(&h, &IntegrableTransform::Mobius(MobiusParams::identity())).unwrap(), h);
        let once = integrable_transform(&h, &IntegrableTransform::Flip).unwrap();
        assert_eq!(integrable_transform(&once, &IntegrableTransform::Flip).unwrap(), h);

        let qmat = Matrix::from_int_rows(&[&[1, 2], &[0, 1]]).unwrap();
        let kind = IntegrableTransform::Conjugate(qmat);
        let conj = integrable_transform(&h, &kind).unwrap();
        assert!(check_relation(&conj, kind.target_relation(Relation::Sigma)).passed);
    }
}
