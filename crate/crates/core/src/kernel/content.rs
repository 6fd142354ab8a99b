use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::scalar::{Field, Scalar};
use super::xpoly::XPoly;
use crate::error::{Error, Result};

/// Splits `ts` into a common content and primitive parts with `content * prims[k] = ts[k]`.
///
/// Over `Q` the primitive parts jointly have coprime integer coefficients and the first
/// nonzero one has a positive leading coefficient. Over `F_p` the first nonzero one is monic.
pub fn content_primitive(ts: &[XPoly]) -> Result<(XPoly, Vec<XPoly>)> {
    let first = ts.iter().find(|t| !t.is_zero()).ok_or(Error::AllZero)?;
    let field = first.field();
    let g = ts
        .iter()
        .fold(XPoly::zero(field), |g, t| XPoly::gcd_monic(&g, t));
    let mut prims: Vec<XPoly> = ts
        .iter()
        .map(|t| t.exact_div(&g).expect("gcd divides every input"))
        .collect();

    let lead = prims
        .iter()
        .find(|t| !t.is_zero())
        .and_then(|t| t.leading())
        .expect("some input is nonzero")
        .clone();
    let unit = match field {
        Field::Rational => {
            let c = rational_content(&prims);
            let c = if lead.is_negative() { -c } else { c };
            Scalar::Q(c)
        }
        Field::Prime(_) => lead,
    };
    let inv = unit.inv().expect("nonzero unit");
    for p in &mut prims {
        *p = p.scale(&inv);
    }
    Ok((g.scale(&unit), prims))
}

/// Positive rational `c` such that every coefficient divided by `c` is an integer and
/// the resulting integers are jointly coprime.
pub(crate) fn rational_content(polys: &[XPoly]) -> BigRational {
    let mut num_gcd = BigInt::zero();
    let mut den_lcm = BigInt::one();
    for c in polys.iter().flat_map(|p| p.coeffs()) {
        if let Scalar::Q(q) = c {
            if q.is_zero() {
                continue;
            }
            num_gcd = num_gcd.gcd(q.numer());
            den_lcm = den_lcm.lcm(q.denom());
        }
    }
    if num_gcd.is_zero() {
        return BigRational::one();
    }
    BigRational::new(num_gcd, den_lcm)
}
