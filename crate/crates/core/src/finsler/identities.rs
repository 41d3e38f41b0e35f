use crate::algebra::rational::{int, rat};
use crate::algebra::{MultiPoly, PowerExpr};
use crate::report::{ConditionReport, Verdict};

use super::matrix::{adjugate, determinant, mat_mul, PolyMatrix};
use super::{FinslerError, MthRootMetric};

/// Largest dimension for which the adjugate-based checks run.
pub const MAX_ADJUGATE_DIM: usize = 3;

fn hessian(metric: &MthRootMetric) -> (Vec<MultiPoly>, PolyMatrix) {
    let n = metric.n();
    let a_i: Vec<MultiPoly> = (0..n).map(|i| metric.a().partial_y(i)).collect();
    let a_ij = a_i
        .iter()
        .map(|ai| (0..n).map(|j| ai.partial_y(j)).collect())
        .collect();
    (a_i, a_ij)
}

/// Exact checks of `y^i A_i = m A` and `y^i A_ij = (m−1) A_j`.
pub fn verify_euler_identities(metric: &MthRootMetric) -> ConditionReport {
    let n = metric.n();
    let m = i64::from(metric.m());
    let (a_i, a_ij) = hessian(metric);
    let mut report = ConditionReport::new("euler-identities");

    let first = MultiPoly::contract_y(&a_i) - metric.a().scale_int(m);
    report.push_condition(
        "euler_gradient",
        "y^i A_i = m A",
        Verdict::from_polynomials([("y^i A_i - m A", first)]),
    );

    let second = (0..n).map(|j| {
        let col: Vec<MultiPoly> = (0..n).map(|i| a_ij[i][j].clone()).collect();
        let diff = MultiPoly::contract_y(&col) - a_i[j].scale_int(m - 1);
        (format!("j={}", j + 1), diff)
    });
    report.push_condition(
        "euler_hessian",
        "y^i A_ij = (m-1) A_j",
        Verdict::from_polynomials(second),
    );
    report
}

/// Denominator-cleared checks of the inverse-matrix identities, with
/// `adj`/`det` the adjugate and determinant of `(A_ij)`:
///
/// * `(A_ij) · adj = det · I`
/// * `(m−1) Σ_i adj[j][i] A_i = det · y^j`
/// * `(m−1) Σ_ij A_i A_j adj[i][j] = m · det · A`
pub fn verify_inverse_identities(metric: &MthRootMetric) -> ConditionReport {
    let n = metric.n();
    let m = i64::from(metric.m());
    let mut report = ConditionReport::new("inverse-identities");
    if n > MAX_ADJUGATE_DIM {
        report.push_condition(
            "inverse",
            "A^ij A_jk = delta^i_k",
            Verdict::Inconclusive {
                reason: format!("adjugate checks limited to n <= {MAX_ADJUGATE_DIM}"),
            },
        );
        return report;
    }
    let (a_i, a_ij) = hessian(metric);
    let det = determinant(&a_ij, n);
    if det.is_zero() {
        report.push_condition(
            "inverse",
            "A^ij A_jk = delta^i_k",
            Verdict::Inconclusive {
                reason: "det(A_ij) = 0 identically; the inverse does not exist".into(),
            },
        );
        report.push_fact("det(A_ij)", "0");
        return report;
    }
    report.push_fact("det(A_ij)", &det);
    let adj = adjugate(&a_ij, n);

    let prod = mat_mul(&a_ij, &adj, n);
    let inverse = (0..n).flat_map(|i| {
        let det = det.clone();
        let row = prod[i].clone();
        row.into_iter().enumerate().map(move |(k, v)| {
            let expected = if i == k {
                det.clone()
            } else {
                MultiPoly::zero(n)
            };
            (format!("i={},k={}", i + 1, k + 1), v - expected)
        })
    });
    report.push_condition(
        "inverse",
        "A_ij adj^jk = det delta_i^k",
        Verdict::from_polynomials(inverse),
    );

    let contracted = (0..n).map(|j| {
        let sum = (0..n).fold(MultiPoly::zero(n), |acc, i| acc + &adj[j][i] * &a_i[i]);
        let diff = sum.scale_int(m - 1) - &det * &MultiPoly::y(n, j);
        (format!("j={}", j + 1), diff)
    });
    report.push_condition(
        "inverse_gradient",
        "(m-1) adj^ji A_i = det y^j",
        Verdict::from_polynomials(contracted),
    );

    let mut quad = MultiPoly::zero(n);
    for i in 0..n {
        for j in 0..n {
            quad = quad + &(&a_i[i] * &a_i[j]) * &adj[i][j];
        }
    }
    let diff = quad.scale_int(m - 1) - (&det * metric.a()).scale_int(m);
    report.push_condition(
        "inverse_quadratic",
        "(m-1) A_i A_j adj^ij = m det A",
        Verdict::from_polynomials([("quadratic form", diff)]),
    );
    report
}

/// `g_ij = prefactor · ĝ_ij` with `ĝ_ij = m A A_ij + (2−m) A_i A_j` and
/// `prefactor = A^(2/m − 2) / m²`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FundamentalTensorNormalized {
    pub g_hat: PolyMatrix,
    pub prefactor: PowerExpr,
}

impl FundamentalTensorNormalized {
    /// `y^i y^j ĝ_ij`.
    pub fn contraction(&self) -> MultiPoly {
        let rows: Vec<MultiPoly> = self
            .g_hat
            .iter()
            .map(|r| MultiPoly::contract_y(r))
            .collect();
        MultiPoly::contract_y(&rows)
    }

    pub fn is_symmetric(&self) -> bool {
        let n = self.g_hat.len();
        (0..n).all(|i| (0..i).all(|j| self.g_hat[i][j] == self.g_hat[j][i]))
    }
}

pub fn fundamental_tensor(
    metric: &MthRootMetric,
) -> Result<FundamentalTensorNormalized, FinslerError> {
    let n = metric.n();
    let m = i64::from(metric.m());
    let a = metric.a();
    let (a_i, a_ij) = hessian(metric);
    let g_hat = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| (a * &a_ij[i][j]).scale_int(m) + (&a_i[i] * &a_i[j]).scale_int(2 - m))
                .collect()
        })
        .collect();
    let prefactor = PowerExpr::single(
        metric.m(),
        a.clone(),
        MultiPoly::one(n),
        MultiPoly::constant(n, rat(1, m * m)),
        &(rat(2, m) - int(2)),
        0,
    )?;
    Ok(FundamentalTensorNormalized { g_hat, prefactor })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse;
    use crate::report::Status;

    fn metric(a: &str) -> MthRootMetric {
        MthRootMetric::new(2, 3, parse(a, 2).unwrap()).unwrap()
    }

    #[test]
    fn euler_on_sample_metric() {
        let r = verify_euler_identities(&metric("y1^3 + y1*y2^2 + y2^3"));
        assert_eq!(r.overall, Status::Holds);
        assert_eq!(r.conditions.len(), 2);
    }

    #[test]
    fn inverse_on_sample_metric() {
        let r = verify_inverse_identities(&metric("y1^3 + y1*y2^2 + y2^3"));
        assert_eq!(r.overall, Status::Holds, "{r}");
        assert_eq!(r.fact("det(A_ij)"), Some("12*y1^2 + 36*y1*y2 - 4*y2^2"));
    }

    #[test]
    fn degenerate_hessian_is_inconclusive() {
        let r = verify_inverse_identities(&metric("y1^3"));
        assert_eq!(r.overall, Status::Inconclusive);
        assert_eq!(r.fact("det(A_ij)"), Some("0"));
    }

    #[test]
    fn large_dimension_is_inconclusive() {
        let a = parse("y1^3 + y2^3 + y3^3 + y4^3", 4).unwrap();
        let r = verify_inverse_identities(&MthRootMetric::new(4, 3, a).unwrap());
        assert_eq!(r.overall, Status::Inconclusive);
    }

    #[test]
    fn fundamental_tensor_sample() {
        let metric = metric("y1^3 + y1*y2^2 + y2^3");
        let g = fundamental_tensor(&metric).unwrap();
        assert_eq!(
            g.g_hat[0][0],
            parse("9*y1^4 + 12*y1^2*y2^2 + 18*y1*y2^3 - y2^4", 2).unwrap()
        );
        assert!(g.is_symmetric());
        assert_eq!(g.contraction(), metric.a().pow(2).scale_int(9));
        // prefactor is A^{-4/3}/9
        let (poly, a_exp, b_exp) = g.prefactor.terms().next().unwrap();
        assert_eq!(poly.as_constant(), Some(rat(1, 9)));
        assert_eq!(a_exp, rat(-4, 3));
        assert_eq!(b_exp, 0);
    }
}
