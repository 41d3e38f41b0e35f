use crate::algebra::MultiPoly;

use super::{FinslerError, MthRootMetric, OneForm};

/// Every derivative of `A` and `β` the residuals need.
///
/// Indices are zero-based. With `A_{x^k} = ∂A/∂x^k`:
///
/// * `a_0 = A_{x^k} y^k`
/// * `a_0l[l] = y^k ∂(A_{x^k})/∂y^l`, so that `∂(a_0)/∂y^l = A_{x^l} + a_0l[l]`
/// * `beta_x[l] = (b_i)_{x^l} y^i`, `beta_0 = beta_x[k] y^k`
/// * `beta_0l[l] = (b_l)_{x^k} y^k`
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedQuantities {
    pub a_i: Vec<MultiPoly>,
    pub a_ij: Vec<Vec<MultiPoly>>,
    pub a_x: Vec<MultiPoly>,
    pub a_0: MultiPoly,
    pub a_0l: Vec<MultiPoly>,
    pub beta: MultiPoly,
    pub beta_i: Vec<MultiPoly>,
    pub beta_x: Vec<MultiPoly>,
    pub beta_0: MultiPoly,
    pub beta_0l: Vec<MultiPoly>,
}

pub fn derive(metric: &MthRootMetric, beta: &OneForm) -> Result<DerivedQuantities, FinslerError> {
    let n = metric.n();
    if beta.n() != n {
        return Err(FinslerError::DimensionMismatch {
            expected: n,
            found: beta.n(),
        });
    }
    let a = metric.a();
    let a_i: Vec<MultiPoly> = (0..n).map(|i| a.partial_y(i)).collect();
    let a_ij = a_i
        .iter()
        .map(|ai| (0..n).map(|j| ai.partial_y(j)).collect())
        .collect();
    let a_x: Vec<MultiPoly> = (0..n).map(|k| a.partial_x(k)).collect();
    let a_0 = MultiPoly::contract_y(&a_x);
    let a_0l = (0..n)
        .map(|l| {
            let cols: Vec<MultiPoly> = a_x.iter().map(|ax| ax.partial_y(l)).collect();
            MultiPoly::contract_y(&cols)
        })
        .collect();

    let b = beta.coefficients();
    let beta_poly = beta.to_polynomial();
    let beta_i = b.to_vec();
    let beta_x: Vec<MultiPoly> = (0..n).map(|l| beta_poly.partial_x(l)).collect();
    let beta_0 = MultiPoly::contract_y(&beta_x);
    let beta_0l = b
        .iter()
        .map(|bl| {
            let grads: Vec<MultiPoly> = (0..n).map(|k| bl.partial_x(k)).collect();
            MultiPoly::contract_y(&grads)
        })
        .collect();

    Ok(DerivedQuantities {
        a_i,
        a_ij,
        a_x,
        a_0,
        a_0l,
        beta: beta_poly,
        beta_i,
        beta_x,
        beta_0,
        beta_0l,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::parse;

    fn p(s: &str) -> MultiPoly {
        parse(s, 2).unwrap()
    }

    fn derived(a: &str, beta: &str) -> DerivedQuantities {
        let metric = MthRootMetric::new(2, 3, p(a)).unwrap();
        let beta = OneForm::from_polynomial(&p(beta)).unwrap();
        derive(&metric, &beta).unwrap()
    }

    #[test]
    fn constant_metric_has_no_x_derivatives() {
        let d = derived("y1^3 + y1*y2^2 + y2^3", "y1");
        assert!(d.a_0.is_zero());
        assert!(d.a_x.iter().all(MultiPoly::is_zero));
        assert!(d.a_0l.iter().all(MultiPoly::is_zero));
        assert_eq!(d.a_i[0], p("3*y1^2 + y2^2"));
        assert_eq!(d.a_ij[0][1], p("2*y2"));
    }

    #[test]
    fn perturbed_metric() {
        let d = derived("(1+x1)*y1^3 + y1*y2^2 + y2^3", "y1");
        assert_eq!(d.a_x[0], p("y1^3"));
        assert!(d.a_x[1].is_zero());
        assert_eq!(d.a_0, p("y1^4"));
        assert_eq!(d.a_0l[0], p("3*y1^3"));
        assert!(d.a_0l[1].is_zero());
    }

    #[test]
    fn variable_one_form() {
        let d = derived("y1^3 + y1*y2^2 + y2^3", "(1+x1)*y1");
        assert_eq!(d.beta_x[0], p("y1"));
        assert!(d.beta_x[1].is_zero());
        assert_eq!(d.beta_0, p("y1^2"));
        assert_eq!(d.beta_0l[0], p("y1"));
        assert!(d.beta_0l[1].is_zero());
        assert_eq!(d.beta_i[0], p("1 + x1"));
    }

    #[test]
    fn dimension_mismatch() {
        let metric = MthRootMetric::new(2, 3, p("y1^3 + y2^3 + y1*y2^2")).unwrap();
        let beta = OneForm::from_polynomial(&parse("y3", 3).unwrap()).unwrap();
        assert!(matches!(
            derive(&metric, &beta),
            Err(FinslerError::DimensionMismatch { .. })
        ));
    }
}
