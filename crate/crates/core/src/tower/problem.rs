use std::collections::{BTreeMap, BTreeSet};

use crate::alpha::AlphaSymbol;
use crate::error::{Error, Result};
use crate::kernel::{Field, XRat};

/// Monic polynomial in `t` over `K(x)`, coefficients ascending in `t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonicPoly {
    id: String,
    coeffs: Vec<XRat>,
}

impl MonicPoly {
    pub fn new(id: &str, coeffs: Vec<XRat>) -> Result<Self> {
        if id.is_empty() {
            return Err(Error::Validation("polynomial id must be nonempty".into()));
        }
        let Some(lead) = coeffs.last() else {
            return Err(Error::Validation(format!(
                "polynomial {id} has no coefficients"
            )));
        };
        if coeffs.len() < 2 {
            return Err(Error::Validation(format!(
                "polynomial {id} must have degree >= 1"
            )));
        }
        if !lead.is_one() {
            return Err(Error::Validation(format!("polynomial {id} is not monic")));
        }
        let field = lead.field();
        if coeffs.iter().any(|c| c.field() != field) {
            return Err(Error::Validation(format!("polynomial {id} mixes fields")));
        }
        Ok(MonicPoly {
            id: id.to_string(),
            coeffs,
        })
    }

    /// `t - root`.
    pub fn linear(id: &str, root: XRat) -> Result<Self> {
        let one = XRat::one(root.field());
        Self::new(id, vec![-&root, one])
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn coeffs(&self) -> &[XRat] {
        &self.coeffs
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn field(&self) -> Field {
        self.coeffs[0].field()
    }

    /// The elementary symmetric function `e_k` of the roots, `e_0 = 1`, zero past the degree.
    pub fn elementary(&self, k: usize) -> XRat {
        let n = self.degree();
        if k > n {
            return XRat::zero(self.field());
        }
        let c = &self.coeffs[n - k];
        if k.is_multiple_of(2) {
            c.clone()
        } else {
            -c
        }
    }

    /// For `t - g(x)`, the root `g`.
    pub fn linear_root(&self) -> Option<XRat> {
        (self.degree() == 1).then(|| -&self.coeffs[0])
    }
}

/// One summand `a * prod_i u_i^{alpha_i}` of a pseudopolynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PseudoTerm {
    pub coeff: XRat,
    /// Polynomial id to exponent symbol; absent ids carry exponent 0.
    pub exponents: BTreeMap<String, AlphaSymbol>,
}

impl PseudoTerm {
    pub fn new<'a>(coeff: XRat, factors: impl IntoIterator<Item = (&'a str, &'a str)>) -> Self {
        PseudoTerm {
            coeff,
            exponents: factors
                .into_iter()
                .map(|(p, a)| (p.to_string(), AlphaSymbol::new(a)))
                .collect(),
        }
    }
}

/// Polynomials `P_i` together with `y = sum_j a_j * prod_i u_i^{alpha_ij}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProblemSpec {
    field: Field,
    polynomials: Vec<MonicPoly>,
    terms: Vec<PseudoTerm>,
    alphas: Vec<AlphaSymbol>,
}

impl ProblemSpec {
    pub fn new(
        field: Field,
        polynomials: Vec<MonicPoly>,
        terms: Vec<PseudoTerm>,
        alphas: Vec<AlphaSymbol>,
    ) -> Result<Self> {
        if polynomials.is_empty() {
            return Err(Error::Validation(
                "at least one polynomial is required".into(),
            ));
        }
        if terms.is_empty() {
            return Err(Error::Validation(
                "the pseudopolynomial has no terms".into(),
            ));
        }
        let mut ids = BTreeSet::new();
        for p in &polynomials {
            if p.field() != field {
                return Err(Error::Validation(format!(
                    "polynomial {} is not over {field}",
                    p.id()
                )));
            }
            if !ids.insert(p.id()) {
                return Err(Error::Validation(format!(
                    "duplicate polynomial id {}",
                    p.id()
                )));
            }
            if p.coeffs()[0].is_zero() {
                return Err(Error::Validation(format!(
                    "invertible root: polynomial {} has zero constant term",
                    p.id()
                )));
            }
        }
        let declared: BTreeSet<&AlphaSymbol> = alphas.iter().collect();
        if declared.len() != alphas.len() {
            return Err(Error::Validation("alpha symbols must be distinct".into()));
        }
        if alphas.iter().any(|a| a.as_str().is_empty()) {
            return Err(Error::Validation("alpha symbols must be nonempty".into()));
        }
        let mut used = BTreeSet::new();
        for (j, t) in terms.iter().enumerate() {
            if t.coeff.field() != field {
                return Err(Error::Validation(format!(
                    "term {j} coefficient is not over {field}"
                )));
            }
            for (pid, sym) in &t.exponents {
                if !ids.contains(pid.as_str()) {
                    return Err(Error::Validation(format!(
                        "term {j} references unknown polynomial {pid}"
                    )));
                }
                if !declared.contains(sym) {
                    return Err(Error::Validation(format!(
                        "term {j} uses undeclared alpha symbol {sym}"
                    )));
                }
                used.insert(sym);
            }
        }
        if let Some(unused) = alphas.iter().find(|a| !used.contains(a)) {
            return Err(Error::Validation(format!(
                "alpha symbol {unused} is never used"
            )));
        }
        Ok(ProblemSpec {
            field,
            polynomials,
            terms,
            alphas,
        })
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn polynomials(&self) -> &[MonicPoly] {
        &self.polynomials
    }

    pub fn terms(&self) -> &[PseudoTerm] {
        &self.terms
    }

    pub fn alphas(&self) -> &[AlphaSymbol] {
        &self.alphas
    }

    /// Exponent symbol of polynomial `i` in term `j`.
    pub fn exponent(&self, j: usize, i: usize) -> Option<&AlphaSymbol> {
        self.terms[j].exponents.get(self.polynomials[i].id())
    }

    /// Number of tensor-basis elements per term, `prod_i deg P_i`.
    pub fn basis_size(&self) -> usize {
        self.polynomials.iter().map(MonicPoly::degree).product()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kernel::XPoly;

    const Q: Field = Field::Rational;

    fn xp(c: &[i64]) -> XRat {
        XRat::from_poly(XPoly::from_i64s(Q, c))
    }

    #[test]
    fn elementary_symmetric_signs() {
        let p = MonicPoly::new("z", vec![xp(&[-1]), xp(&[0, 1]), xp(&[]), xp(&[1])]).unwrap();
        assert!(p.elementary(1).is_zero());
        assert_eq!(p.elementary(2), xp(&[0, 1]));
        assert_eq!(p.elementary(3), xp(&[1]));
        assert!(p.elementary(4).is_zero());
    }

    #[test]
    fn rejects_invalid_problems() {
        assert!(MonicPoly::new("z", vec![xp(&[1]), xp(&[2])]).is_err());
        let zero_root = MonicPoly::new("z", vec![xp(&[]), xp(&[1])]).unwrap();
        let err = ProblemSpec::new(
            Q,
            vec![zero_root],
            vec![PseudoTerm::new(xp(&[1]), [("z", "alpha")])],
            vec!["alpha".into()],
        )
        .unwrap_err();
        assert!(err.to_string().contains("invertible root"));

        let z = MonicPoly::linear("z", xp(&[0, 1])).unwrap();
        let unused = ProblemSpec::new(
            Q,
            vec![z.clone()],
            vec![PseudoTerm::new(xp(&[1]), [("z", "alpha")])],
            vec!["alpha".into(), "beta".into()],
        );
        assert!(unused.is_err());
        let unknown = ProblemSpec::new(
            Q,
            vec![z],
            vec![PseudoTerm::new(xp(&[1]), [("v", "alpha")])],
            vec!["alpha".into()],
        );
        assert!(unknown.is_err());
    }
}
