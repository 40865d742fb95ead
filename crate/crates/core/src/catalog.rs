//! Concrete representations: the seven 4×4 families solving the cubic
//! relation, the multi-species TASEP generators for any local dimension, and
//! the closed-form braided R-matrices of the seven families.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{LocalOperator, Matrix};
use crate::scalar::Scalar;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Family {
    S1,
    S2,
    S3,
    S4,
    S5,
    S6,
    S7,
    #[serde(rename = "TASEP_S")]
    TasepS,
    #[serde(rename = "TASEP_T")]
    TasepT,
}

impl Family {
    pub const ALL: [Family; 9] = [
        Family::S1,
        Family::S2,
        Family::S3,
        Family::S4,
        Family::S5,
        Family::S6,
        Family::S7,
        Family::TasepS,
        Family::TasepT,
    ];

    /// The seven 4×4 families.
    pub const FOUR_BY_FOUR: [Family; 7] =
        [Family::S1, Family::S2, Family::S3, Family::S4, Family::S5, Family::S6, Family::S7];

    pub fn name(self) -> &'static str {
        match self {
            Family::S1 => "S1",
            Family::S2 => "S2",
            Family::S3 => "S3",
            Family::S4 => "S4",
            Family::S5 => "S5",
            Family::S6 => "S6",
            Family::S7 => "S7",
            Family::TasepS => "TASEP_S",
            Family::TasepT => "TASEP_T",
        }
    }

    pub fn is_tasep(self) -> bool {
        matches!(self, Family::TasepS | Family::TasepT)
    }

    /// Parameter names for the 4×4 families; TASEP names depend on `m`,
    /// see [`tasep_param_names`].
    pub fn param_names(self) -> &'static [&'static str] {
        match self {
            Family::S1 | Family::S2 => &["a", "b", "c", "d", "e"],
            Family::S3 | Family::S4 | Family::S5 | Family::S6 => &["a", "b", "c", "d"],
            Family::S7 => &["a", "b", "c"],
            Family::TasepS | Family::TasepT => &[],
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        Family::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(text.trim()))
            .ok_or_else(|| Error::InvalidParameter(format!("unknown family `{text}`")))
    }
}

/// Names of the rate parameters of a TASEP family with local dimension `m`:
/// `rho_i` (i < m) and `mu_i_j` for `TASEP_S`, `zeta_j` (j ≥ 2) and `nu_i_j`
/// for `TASEP_T`.
pub fn tasep_param_names(family: Family, m: usize) -> Vec<String> {
    let mut names = Vec::new();
    match family {
        Family::TasepS => names.extend((1..m).map(|i| format!("rho_{i}"))),
        Family::TasepT => names.extend((2..=m).map(|j| format!("zeta_{j}"))),
        _ => return names,
    }
    let pair = if family == Family::TasepS { "mu" } else { "nu" };
    for i in 1..=m {
        for j in i + 1..=m {
            names.push(format!("{pair}_{i}_{j}"));
        }
    }
    names
}

fn default_m() -> usize {
    2
}

/// A named family with a concrete parameter assignment.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyInstance {
    pub family: Family,
    #[serde(default = "default_m")]
    pub m: usize,
    pub params: BTreeMap<String, Scalar>,
}

impl FamilyInstance {
    pub fn new(family: Family, m: usize, params: BTreeMap<String, Scalar>) -> Self {
        FamilyInstance { family, m, params }
    }

    /// Convenience constructor for the 4×4 families, assigning `values` to
    /// `a, b, c, …` in order.
    pub fn four_by_four(family: Family, values: &[Scalar]) -> Self {
        let params = family.param_names().iter().zip(values).map(|(k, v)| (k.to_string(), v.clone())).collect();
        FamilyInstance::new(family, 2, params)
    }

    pub fn required_params(&self) -> Vec<String> {
        if self.family.is_tasep() {
            tasep_param_names(self.family, self.m)
        } else {
            self.family.param_names().iter().map(|s| s.to_string()).collect()
        }
    }

    pub fn param(&self, name: &str) -> Result<&Scalar> {
        self.params
            .get(name)
            .ok_or_else(|| Error::MissingParameter { family: self.family.to_string(), name: name.to_string() })
    }

    /// Checks presence of every parameter and the family-specific constraints.
    pub fn validate(&self) -> Result<()> {
        if self.family.is_tasep() {
            if self.m < 2 {
                return Err(Error::LocalDimension(self.m));
            }
        } else if self.m != 2 {
            return Err(Error::InvalidParameter(format!(
                "{} is a 4×4 family and needs m = 2, got m = {}",
                self.family, self.m
            )));
        }
        for name in self.required_params() {
            self.param(&name)?;
        }
        if self.family == Family::S3 && self.param("c")?.is_zero() {
            return Err(Error::InvalidParameter("S3 requires c ≠ 0".into()));
        }
        Ok(())
    }

    fn abcde(&self) -> Result<[Scalar; 5]> {
        let get = |k: &str| -> Result<Scalar> {
            if self.family.param_names().contains(&k) {
                self.param(k).cloned()
            } else {
                Ok(Scalar::zero())
            }
        };
        Ok([get("a")?, get("b")?, get("c")?, get("d")?, get("e")?])
    }

    /// `ρ_i` for `TASEP_S`, `ζ_j` for `TASEP_T`, in index order.
    pub fn site_rates(&self) -> Result<Vec<Scalar>> {
        let (prefix, range) = match self.family {
            Family::TasepS => ("rho", 1..self.m),
            Family::TasepT => ("zeta", 2..self.m + 1),
            _ => return Ok(Vec::new()),
        };
        range.map(|k| self.param(&format!("{prefix}_{k}")).cloned()).collect()
    }

    /// `μ_{ij}` for `TASEP_S`, `ν_{ij}` for `TASEP_T`.
    pub fn pair_rates(&self) -> Result<BTreeMap<(usize, usize), Scalar>> {
        let prefix = match self.family {
            Family::TasepS => "mu",
            Family::TasepT => "nu",
            _ => return Ok(BTreeMap::new()),
        };
        let mut out = BTreeMap::new();
        for i in 1..=self.m {
            for j in i + 1..=self.m {
                out.insert((i, j), self.param(&format!("{prefix}_{i}_{j}"))?.clone());
            }
        }
        Ok(out)
    }
}

/// Builds the generator of a family instance.
pub fn build_family(spec: &FamilyInstance) -> Result<LocalOperator> {
    spec.validate()?;
    match spec.family {
        Family::TasepS => return build_tasep_s(spec.m, &spec.site_rates()?, &spec.pair_rates()?),
        Family::TasepT => return build_tasep_t(spec.m, &spec.site_rates()?, &spec.pair_rates()?),
        _ => {}
    }
    let [a, b, c, d, e] = spec.abcde()?;
    let z = Scalar::zero;
    let rows: Vec<Vec<Scalar>> = match spec.family {
        Family::S1 => vec![
            vec![a.clone(), z(), z(), z()],
            vec![b, c, z(), z()],
            vec![d, z(), a.clone(), z()],
            vec![z(), e, z(), a],
        ],
        Family::S2 => {
            let corner = &(&b + &c) - &e;
            vec![
                vec![a.clone(), b, c, d],
                vec![z(), a.clone(), z(), e],
                vec![z(), z(), a.clone(), corner],
                vec![z(), z(), z(), a],
            ]
        }
        Family::S3 => {
            let middle = &a + &(&(&b * &(&d - &a)) * &c.inverse()?);
            vec![
                vec![a.clone(), z(), z(), z()],
                vec![b, middle, z(), z()],
                vec![c, z(), d, z()],
                vec![z(), z(), z(), a],
            ]
        }
        Family::S4 => {
            vec![vec![a.clone(), z(), z(), z()], vec![z(), b, z(), z()], vec![z(), c, a, z()], vec![z(), z(), z(), d]]
        }
        Family::S5 => return LocalOperator::new(2, Matrix::diag(&[a, b, c, d])),
        Family::S6 => vec![
            vec![a.clone(), z(), z(), z()],
            vec![b.clone(), c, z(), d],
            vec![z(), z(), a.clone(), z()],
            vec![z(), -&b, b, a],
        ],
        Family::S7 => {
            let off = &c - &a;
            vec![
                vec![a.clone(), z(), z(), z()],
                vec![b, c.clone(), off, z()],
                vec![z(), z(), a, z()],
                vec![z(), z(), z(), c],
            ]
        }
        Family::TasepS | Family::TasepT => unreachable!("handled above"),
    };
    LocalOperator::new(2, Matrix::from_rows(rows)?)
}

fn tasep_generator(
    m: usize,
    diag_rate: impl Fn(usize, usize) -> Result<Scalar>,
    pair: &BTreeMap<(usize, usize), Scalar>,
    family: Family,
) -> Result<LocalOperator> {
    if m < 2 {
        return Err(Error::LocalDimension(m));
    }
    let mut mat = Matrix::zeros(m * m);
    for i in 1..=m {
        for j in i + 1..=m {
            let ij = (i - 1) * m + (j - 1);
            let ji = (j - 1) * m + (i - 1);
            // E_ii ⊗ E_jj
            mat.set(ij, ij, diag_rate(i, j)?);
            // E_ji ⊗ E_ij
            let hop = pair.get(&(i, j)).ok_or_else(|| Error::MissingParameter {
                family: family.to_string(),
                name: format!("{}_{i}_{j}", if family == Family::TasepS { "mu" } else { "nu" }),
            })?;
            mat.set(ji, ij, hop.clone());
        }
    }
    LocalOperator::new(m, mat)
}

/// `Σ_{i<j} ρ_i E_ii⊗E_jj + μ_ij E_ji⊗E_ij`, with `rho[i − 1] = ρ_i`.
pub fn build_tasep_s(m: usize, rho: &[Scalar], mu: &BTreeMap<(usize, usize), Scalar>) -> Result<LocalOperator> {
    let rate = |i: usize, _j: usize| {
        rho.get(i - 1)
            .cloned()
            .ok_or_else(|| Error::MissingParameter { family: Family::TasepS.to_string(), name: format!("rho_{i}") })
    };
    tasep_generator(m, rate, mu, Family::TasepS)
}

/// `Σ_{i<j} ζ_j E_ii⊗E_jj + ν_ij E_ji⊗E_ij`, with `zeta[j − 2] = ζ_j`.
pub fn build_tasep_t(m: usize, zeta: &[Scalar], nu: &BTreeMap<(usize, usize), Scalar>) -> Result<LocalOperator> {
    let rate = |_i: usize, j: usize| {
        zeta.get(j - 2)
            .cloned()
            .ok_or_else(|| Error::MissingParameter { family: Family::TasepT.to_string(), name: format!("zeta_{j}") })
    };
    tasep_generator(m, rate, nu, Family::TasepT)
}

/// The idempotent `S⁽⁴⁾(0, 1, 3, 0)`: `g² = g` and `g` satisfies the braid
/// relation, so it generates a representation of the ξ = 0 Hecke algebra.
pub fn hecke_idempotent() -> LocalOperator {
    let values = [0, 1, 3, 0].map(Scalar::from_int);
    build_family(&FamilyInstance::four_by_four(Family::S4, &values)).expect("fixed parameters are valid")
}

/// Negative control: the `m²×m²` matrix with entries `1, 2, …, m⁴` in
/// row-major order, which violates the cubic relation.
pub fn generic_non_solution(m: usize) -> Result<LocalOperator> {
    let dim = m * m;
    LocalOperator::new(m, Matrix::from_fn(dim, |r, c| Scalar::from_int((r * dim + c + 1) as i64)))
}

/// `1 / value`, reporting `factor` as the vanishing denominator.
fn recip(value: Scalar, factor: &str) -> Result<Scalar> {
    value.inverse().map_err(|_| Error::Pole { factor: factor.to_string() })
}

/// Closed-form braided R-matrix `Ř(x, y)` of a 4×4 family, written out entry
/// by entry rather than through a matrix inverse.
pub fn closed_form_r(spec: &FamilyInstance, x: &Scalar, y: &Scalar) -> Result<Matrix> {
    if spec.family.is_tasep() {
        return Err(Error::InvalidParameter(format!("no closed form for {}", spec.family)));
    }
    spec.validate()?;
    let [a, b, c, d, e] = spec.abcde()?;
    let one = Scalar::one();
    let z = Scalar::zero;
    let dx = x - y;
    // 1 / (x·p − 1) and the matching diagonal ratio (y·p − 1)/(x·p − 1).
    let inv_lin = |p: &Scalar, name: &str| recip(&(x * p) - &one, name);
    let ratio = |p: &Scalar, inv: &Scalar| &(&(y * p) - &one) * inv;

    let rows: Vec<Vec<Scalar>> = match spec.family {
        Family::S1 => {
            let ia = inv_lin(&a, "xa-1")?;
            let ic = inv_lin(&c, "xc-1")?;
            let ra = ratio(&a, &ia);
            let ca = &ic * &ia;
            vec![
                vec![ra.clone(), z(), z(), z()],
                vec![&(&b * &dx) * &ca, ratio(&c, &ic), z(), z()],
                vec![&(&d * &dx) * &(&ia * &ia), z(), ra.clone(), z()],
                vec![-&(&(&(&e * x) * &b) * &(&dx * &(&ca * &ia))), &(&e * &dx) * &ca, z(), ra],
            ]
        }
        Family::S2 => {
            let ia = inv_lin(&a, "xa-1")?;
            let ra = ratio(&a, &ia);
            let ia2 = &ia * &ia;
            let ia3 = &ia2 * &ia;
            let corner_poly = &(&(&(&(&(&(&a * &d) * x) - &(&(x * &c) * &b)) - &(&(&e * x) * &b)) - &(&(x * &c) * &c))
                + &(&(x * &c) * &e))
                - &d;
            let bce = &(&b + &c) - &e;
            vec![
                vec![ra.clone(), &(&b * &dx) * &ia2, &(&c * &dx) * &ia2, &(&dx * &corner_poly) * &ia3],
                vec![z(), ra.clone(), z(), &(&e * &dx) * &ia2],
                vec![z(), z(), ra.clone(), &(&bce * &dx) * &ia2],
                vec![z(), z(), z(), ra],
            ]
        }
        Family::S3 => {
            let ia = inv_lin(&a, "xa-1")?;
            let id = inv_lin(&d, "xd-1")?;
            let q = |t: &Scalar| &(&(&(&(&a * &b) * t) - &(&(&a * &c) * t)) - &(&(&b * &d) * t)) + &c;
            let iq = recip(q(x), "abx-acx-bdx+c")?;
            let ra = ratio(&a, &ia);
            vec![
                vec![ra.clone(), z(), z(), z()],
                vec![-&(&(&(&b * &c) * &dx) * &(&ia * &iq)), &q(y) * &iq, z(), z()],
                vec![&(&c * &dx) * &(&ia * &id), z(), ratio(&d, &id), z()],
                vec![z(), z(), z(), ra],
            ]
        }
        Family::S4 => {
            let ia = inv_lin(&a, "xa-1")?;
            let ib = inv_lin(&b, "xb-1")?;
            let id = inv_lin(&d, "xd-1")?;
            let ra = ratio(&a, &ia);
            vec![
                vec![ra.clone(), z(), z(), z()],
                vec![z(), ratio(&b, &ib), z(), z()],
                vec![z(), &(&c * &dx) * &(&ib * &ia), ra, z()],
                vec![z(), z(), z(), ratio(&d, &id)],
            ]
        }
        Family::S5 => {
            let mut diag = Vec::with_capacity(4);
            for (p, name) in [(&a, "xa-1"), (&b, "xb-1"), (&c, "xc-1"), (&d, "xd-1")] {
                diag.push(ratio(p, &inv_lin(p, name)?));
            }
            return Ok(Matrix::diag(&diag));
        }
        Family::S6 => {
            let ia = inv_lin(&a, "xa-1")?;
            let norm =
                |u: &Scalar, v: &Scalar| &(&(&(&(&(&a * &c) + &(&b * &d)) * u) * v) - &(&(&a * u) + &(&c * v))) + &one;
            let inn = recip(norm(x, x), "n(x,x)")?;
            let ra = ratio(&a, &ia);
            let ian = &ia * &inn;
            let cx1 = &(x * &c) - &one;
            vec![
                vec![ra.clone(), z(), z(), z()],
                vec![&(&b * &dx) * &inn, &norm(x, y) * &inn, -&(&(&(&(&b * &d) * x) * &dx) * &ian), &(&d * &dx) * &inn],
                vec![z(), z(), ra.clone(), z()],
                vec![
                    &(&(&(&b * &b) * x) * &dx) * &ian,
                    -&(&(&b * &dx) * &inn),
                    &(&(&b * &dx) * &cx1) * &ian,
                    // The last diagonal entry is n(y, x)/n(x, x); the argument
                    // order is opposite to the second row's diagonal entry.
                    &norm(y, x) * &inn,
                ],
            ]
        }
        Family::S7 => {
            let ia = inv_lin(&a, "xa-1")?;
            let ic = inv_lin(&c, "xc-1")?;
            let ca = &ic * &ia;
            let ra = ratio(&a, &ia);
            let rc = ratio(&c, &ic);
            vec![
                vec![ra.clone(), z(), z(), z()],
                vec![&(&b * &dx) * &ca, rc.clone(), &(&(&c - &a) * &dx) * &ca, z()],
                vec![z(), z(), ra, z()],
                vec![z(), z(), z(), rc],
            ]
        }
        Family::TasepS | Family::TasepT => unreachable!("rejected above"),
    };
    Matrix::from_rows(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{check_s_relation, check_t_relation};

    fn ints(values: &[i64]) -> Vec<Scalar> {
        values.iter().map(|&v| Scalar::from_int(v)).collect()
    }

    fn unit_sum(entries: &[(usize, usize, i64)]) -> Matrix {
        let mut m = Matrix::zeros(4);
        for &(r, c, v) in entries {
            m.set(r, c, Scalar::from_int(v));
        }
        m
    }

    #[test]
    fn family_examples() {
        let s5 = build_family(&FamilyInstance::four_by_four(Family::S5, &ints(&[2, 3, 5, 7]))).unwrap();
        assert_eq!(s5.mat(), &Matrix::diag(&ints(&[2, 3, 5, 7])));

        let s4 = build_family(&FamilyInstance::four_by_four(Family::S4, &ints(&[0, 1, 1, 0]))).unwrap();
        assert_eq!(s4.mat(), &unit_sum(&[(1, 1, 1), (2, 1, 1)]));

        let s3 = build_family(&FamilyInstance::four_by_four(Family::S3, &ints(&[1, 2, 4, 3]))).unwrap();
        assert_eq!(s3.mat().get(1, 1), &Scalar::from_int(2));
    }

    #[test]
    fn family_errors() {
        let s3 = FamilyInstance::four_by_four(Family::S3, &ints(&[1, 2, 0, 3]));
        assert!(matches!(build_family(&s3), Err(Error::InvalidParameter(_))));

        let short = FamilyInstance::four_by_four(Family::S1, &ints(&[1, 2, 3, 4]));
        assert_eq!(build_family(&short), Err(Error::MissingParameter { family: "S1".into(), name: "e".into() }));

        let mut wrong_m = FamilyInstance::four_by_four(Family::S5, &ints(&[1, 2, 3, 4]));
        wrong_m.m = 3;
        assert!(build_family(&wrong_m).is_err());
    }

    #[test]
    fn every_family_solves_the_relation_at_a_fixed_point() {
        let values = ints(&[2, -3, 5, 7, -11]);
        for family in Family::FOUR_BY_FOUR {
            let s = build_family(&FamilyInstance::four_by_four(family, &values)).unwrap();
            assert!(check_s_relation(&s).passed, "{family}");
        }
    }

    #[test]
    fn tasep_s_examples() {
        let mu = |v: i64| BTreeMap::from([((1, 2), Scalar::from_int(v))]);
        let s = build_tasep_s(2, &ints(&[1]), &mu(1)).unwrap();
        assert_eq!(s.mat(), &unit_sum(&[(1, 1, 1), (2, 1, 1)]));
        let s = build_tasep_s(2, &ints(&[2]), &mu(3)).unwrap();
        assert_eq!(s.mat(), &unit_sum(&[(1, 1, 2), (2, 1, 3)]));

        assert!(matches!(build_tasep_s(2, &[], &mu(3)), Err(Error::MissingParameter { .. })));
        assert!(matches!(build_tasep_s(2, &ints(&[1]), &BTreeMap::new()), Err(Error::MissingParameter { .. })));
    }

    #[test]
    fn tasep_s_three_species_is_singular_and_supported_on_ordered_pairs() {
        let mu = BTreeMap::from([
            ((1, 2), Scalar::from_int(3)),
            ((1, 3), Scalar::ratio(-1, 2)),
            ((2, 3), Scalar::from_int(5)),
        ]);
        let s = build_tasep_s(3, &ints(&[2, 7]), &mu).unwrap();
        assert!(s.mat().determinant().is_zero());
        assert!(check_s_relation(&s).passed);
        // Columns of E_jj⊗E_ii (i < j) and all diagonal-pair states are empty.
        for col in [0, 3, 4, 6, 7, 8] {
            assert!((0..9).all(|r| s.mat().get(r, col).is_zero()), "column {col}");
        }
    }

    #[test]
    fn tasep_t_examples() {
        let nu = |v: i64| BTreeMap::from([((1, 2), Scalar::from_int(v))]);
        let t = build_tasep_t(2, &ints(&[4]), &nu(6)).unwrap();
        assert_eq!(t.mat(), &unit_sum(&[(1, 1, 4), (2, 1, 6)]));
        let zero = build_tasep_t(2, &ints(&[0]), &nu(0)).unwrap();
        assert!(zero.mat().is_zero());
        assert!(check_t_relation(&zero).passed);

        let nu3 = BTreeMap::from([
            ((1, 2), Scalar::from_int(2)),
            ((1, 3), Scalar::ratio(4, 3)),
            ((2, 3), Scalar::from_int(-1)),
        ]);
        let t = build_tasep_t(3, &[Scalar::ratio(1, 2), Scalar::from_int(9)], &nu3).unwrap();
        assert!(check_t_relation(&t).passed);
    }

    #[test]
    fn tasep_instance_param_names() {
        assert_eq!(tasep_param_names(Family::TasepS, 3), ["rho_1", "rho_2", "mu_1_2", "mu_1_3", "mu_2_3"]);
        assert_eq!(tasep_param_names(Family::TasepT, 2), ["zeta_2", "nu_1_2"]);
        let params =
            BTreeMap::from([("rho_1".to_string(), Scalar::from_int(2)), ("mu_1_2".to_string(), Scalar::from_int(3))]);
        let s = build_family(&FamilyInstance::new(Family::TasepS, 2, params)).unwrap();
        assert_eq!(s.mat(), &unit_sum(&[(1, 1, 2), (2, 1, 3)]));
    }

    #[test]
    fn closed_form_s5_at_fixed_point() {
        let spec = FamilyInstance::four_by_four(Family::S5, &ints(&[2, 3, 5, 7]));
        let r = closed_form_r(&spec, &Scalar::ratio(1, 11), &Scalar::ratio(1, 13)).unwrap();
        let expected = Matrix::diag(&[
            Scalar::ratio(121, 117),
            Scalar::ratio(55, 52),
            Scalar::ratio(44, 39),
            Scalar::ratio(33, 26),
        ]);
        assert_eq!(r, expected);
    }

    #[test]
    fn closed_form_is_regular() {
        let values = ints(&[2, -3, 5, 7, -11]);
        let x = Scalar::ratio(1, 17);
        for family in Family::FOUR_BY_FOUR {
            let r = closed_form_r(&FamilyInstance::four_by_four(family, &values), &x, &x).unwrap();
            assert!(r.is_identity(), "{family}");
        }
    }

    #[test]
    fn closed_form_reports_vanishing_factor() {
        let spec = FamilyInstance::four_by_four(Family::S5, &ints(&[3, 2, 5, 7]));
        let err = closed_form_r(&spec, &Scalar::ratio(1, 3), &Scalar::ratio(1, 2)).unwrap_err();
        assert_eq!(err, Error::Pole { factor: "xa-1".into() });

        let s6 = FamilyInstance::four_by_four(Family::S6, &ints(&[0, 1, 2, 1]));
        // a = 0 keeps xa − 1 = −1 while n(x, x) = (x − 1)² vanishes at x = 1.
        assert_eq!(
            closed_form_r(&s6, &Scalar::one(), &Scalar::from_int(2)).unwrap_err(),
            Error::Pole { factor: "n(x,x)".into() }
        );
    }

    #[test]
    fn family_instance_json() {
        let json = r#"{"family": "S4", "m": 2, "params": {"a": "0", "b": "1", "c": "1", "d": "0"}}"#;
        let spec: FamilyInstance = serde_json::from_str(json).unwrap();
        assert_eq!(spec, FamilyInstance::four_by_four(Family::S4, &ints(&[0, 1, 1, 0])));
        let tasep: FamilyInstance =
            serde_json::from_str(r#"{"family": "TASEP_T", "m": 2, "params": {"zeta_2": "4", "nu_1_2": "6"}}"#).unwrap();
        assert_eq!(tasep.family, Family::TasepT);
        assert_eq!("tasep_s".parse::<Family>().unwrap(), Family::TasepS);
    }
}
