use std::collections::BTreeMap;
use std::fmt;

use crate::alpha::AlphaPoly;
use crate::error::Result;
use crate::kernel::{rational_content, Field, Scalar, XPoly, XRat};

use super::problem::ProblemSpec;
use super::tensor::{derivative_table, TensorVector};

/// `sum_m r_m D^m` with coefficients in `K(x)[alpha]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Lodo {
    field: Field,
    terms: BTreeMap<usize, AlphaPoly>,
}

impl Lodo {
    pub fn zero(field: Field) -> Self {
        Lodo {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(field: Field, terms: impl IntoIterator<Item = (usize, AlphaPoly)>) -> Self {
        let mut out = Lodo::zero(field);
        for (m, c) in terms {
            out.add_term(m, &c);
        }
        out
    }

    /// `D^m`.
    pub fn d_pow(field: Field, m: usize) -> Self {
        Lodo::from_terms(field, [(m, AlphaPoly::one(field))])
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn add_term(&mut self, m: usize, c: &AlphaPoly) {
        let s = &self.coeff(m) + c;
        if s.is_zero() {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, s);
        }
    }

    pub fn coeff(&self, m: usize) -> AlphaPoly {
        self.terms
            .get(&m)
            .cloned()
            .unwrap_or_else(|| AlphaPoly::zero(self.field))
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (usize, &AlphaPoly)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn order(&self) -> Option<usize> {
        self.terms.keys().next_back().copied()
    }

    pub fn map_coeffs(&self, f: impl Fn(&AlphaPoly) -> AlphaPoly) -> Lodo {
        Lodo::from_terms(self.field, self.terms.iter().map(|(m, c)| (*m, f(c))))
    }

    /// Multiplies every coefficient by `c`.
    pub fn scale(&self, c: &XRat) -> Lodo {
        self.map_coeffs(|p| p.scale(c))
    }

    /// Canonical representative up to a unit of `K(x)`.
    ///
    /// Coefficients are made polynomial in `x` with no common polynomial factor; over `Q`
    /// the integer content is removed. The largest symbol monomial of the top-order
    /// coefficient then gets a positive (over `Q`) or monic (over `F_p`) leading coefficient.
    pub fn normalized(&self) -> Lodo {
        if self.is_zero() {
            return self.clone();
        }
        let field = self.field;
        let all: Vec<&XRat> = self
            .terms
            .values()
            .flat_map(|c| c.terms().map(|(_, v)| v))
            .collect();
        let den = all.iter().fold(XPoly::one(field), |l, v| {
            let g = XPoly::gcd_monic(&l, v.den());
            &l * &v.den().exact_div(&g).expect("gcd divides")
        });
        let nums: Vec<XPoly> = all
            .iter()
            .map(|v| {
                (&XRat::from_poly(den.clone()) * *v)
                    .as_poly()
                    .expect("denominators cleared")
                    .clone()
            })
            .collect();
        let g = nums
            .iter()
            .fold(XPoly::zero(field), |g, p| XPoly::gcd_monic(&g, p));
        let mut factor = XRat::new(den, g.clone()).expect("nonzero gcd");
        if let Field::Rational = field {
            let reduced: Vec<XPoly> = nums
                .iter()
                .map(|p| p.exact_div(&g).expect("gcd divides"))
                .collect();
            let c = rational_content(&reduced);
            factor = factor.scale(&Scalar::Q(c).inv().expect("nonzero content"));
        }
        let scaled = self.scale(&factor);
        let (_, top) = scaled.terms.iter().next_back().expect("nonzero operator");
        let (_, lead) = top.leading().expect("nonzero coefficient");
        let lc = lead.num().leading().expect("nonzero").clone();
        let unit = match field {
            Field::Rational if lc.is_negative() => Some(field.from_i64(-1)),
            Field::Rational => None,
            Field::Prime(_) => lc.inv(),
        };
        match unit {
            Some(u) => scaled.scale(&XRat::from_scalar(u)),
            None => scaled,
        }
    }

    /// `D o R` by the product rule.
    pub fn derive(&self) -> Lodo {
        let mut out = Lodo::zero(self.field);
        for (m, c) in &self.terms {
            out.add_term(*m, &c.derive());
            out.add_term(m + 1, c);
        }
        out
    }
}

impl fmt::Display for Lodo {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| match m {
                0 => format!("[{c}]"),
                1 => format!("[{c}]*D"),
                _ => format!("[{c}]*D^{m}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// `D o R`.
pub fn lodo_derive(r: &Lodo) -> Lodo {
    r.derive()
}

/// `R y` in tensor coordinates; zero iff `R` annihilates `y` for all symbol values.
pub fn apply_lodo(r: &Lodo, p: &ProblemSpec) -> Result<TensorVector> {
    let orders: Vec<usize> = r.terms().map(|(m, _)| m).collect();
    let table = derivative_table(p, &orders)?;
    let mut out = TensorVector::zero(p.field());
    for (m, c) in r.terms() {
        out = out.add(&table[&m].scale(c));
    }
    Ok(out)
}
