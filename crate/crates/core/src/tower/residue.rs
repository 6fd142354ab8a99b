//! Arithmetic in `K(x)[t] / (P)` for monic `P`, residues stored as ascending
//! coefficient vectors of length `deg P`.

use crate::error::{Error, Result};
use crate::kernel::{Field, XRat};

use super::problem::MonicPoly;

/// Residue class modulo a monic polynomial, `deg < d`.
pub type Residue = Vec<XRat>;

fn trim(mut v: Vec<XRat>) -> Vec<XRat> {
    while v.last().is_some_and(XRat::is_zero) {
        v.pop();
    }
    v
}

fn tdeg(v: &[XRat]) -> Option<usize> {
    v.iter().rposition(|c| !c.is_zero())
}

/// Quotient and remainder of t-polynomials over the field `K(x)`.
fn tdiv_rem(a: &[XRat], b: &[XRat]) -> (Vec<XRat>, Vec<XRat>) {
    let field = a.first().or(b.first()).map_or(Field::Rational, XRat::field);
    let db = tdeg(b).expect("division by the zero polynomial");
    let inv = b[db].inv().expect("nonzero leading coefficient");
    let mut rem = trim(a.to_vec());
    if rem.len() <= db {
        return (Vec::new(), rem);
    }
    let mut quot = vec![XRat::zero(field); rem.len() - db];
    for k in (0..quot.len()).rev() {
        if rem.len() <= k + db || rem[k + db].is_zero() {
            continue;
        }
        let c = &rem[k + db] * &inv;
        for (i, bc) in b[..=db].iter().enumerate() {
            if !bc.is_zero() {
                rem[k + i] = &rem[k + i] - &(&c * bc);
            }
        }
        quot[k] = c;
    }
    (trim(quot), trim(rem))
}

fn tmul(a: &[XRat], b: &[XRat]) -> Vec<XRat> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let field = a[0].field();
    let mut out = vec![XRat::zero(field); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] = &out[i + j] + &(x * y);
            }
        }
    }
    trim(out)
}

fn tsub(a: &[XRat], b: &[XRat]) -> Vec<XRat> {
    let field = a.first().or(b.first()).map_or(Field::Rational, XRat::field);
    let n = a.len().max(b.len());
    let zero = XRat::zero(field);
    trim(
        (0..n)
            .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
            .collect(),
    )
}

fn pad(mut v: Vec<XRat>, d: usize, field: Field) -> Residue {
    v.resize(d, XRat::zero(field));
    v
}

impl MonicPoly {
    /// Reduces an arbitrary t-polynomial modulo `self`.
    pub fn reduce(&self, a: &[XRat]) -> Residue {
        let (_, r) = tdiv_rem(a, self.coeffs());
        pad(r, self.degree(), self.field())
    }

    pub fn mul_mod(&self, a: &[XRat], b: &[XRat]) -> Residue {
        self.reduce(&tmul(a, b))
    }

    /// Residue of `t^k`.
    pub fn t_pow(&self, k: usize) -> Residue {
        let field = self.field();
        let mut v = vec![XRat::zero(field); k + 1];
        v[k] = XRat::one(field);
        self.reduce(&v)
    }
}

/// Inverse of `a` modulo `p` by the extended Euclidean algorithm.
pub fn invert_mod(a: &[XRat], p: &MonicPoly) -> Result<Residue> {
    let field = p.field();
    if tdeg(a).is_some_and(|d| d >= p.degree()) {
        return Err(Error::Validation(format!(
            "residue has degree at least deg {} = {}",
            p.id(),
            p.degree()
        )));
    }
    // invariant: s_i * a = r_i (mod p)
    let (mut r0, mut r1) = (p.coeffs().to_vec(), trim(a.to_vec()));
    let (mut s0, mut s1): (Vec<XRat>, Vec<XRat>) = (Vec::new(), vec![XRat::one(field)]);
    while !r1.is_empty() {
        let (q, r) = tdiv_rem(&r0, &r1);
        let s = tsub(&s0, &tmul(&q, &s1));
        (r0, r1) = (r1, r);
        (s0, s1) = (s1, s);
    }
    match tdeg(&r0) {
        Some(0) => {
            let inv = r0[0].inv().expect("nonzero constant");
            let scaled: Vec<XRat> = s0.iter().map(|c| c * &inv).collect();
            Ok(p.reduce(&scaled))
        }
        _ => Err(Error::NotInvertible(format!(
            "residue shares a factor with {}",
            p.id()
        ))),
    }
}

/// `Du` for a root `u` of `p`: solves `P_x(u) + P_t(u) Du = 0` modulo `p`,
/// where `P_x` differentiates the coefficients and `P_t` is the t-derivative.
pub fn root_derivative(p: &MonicPoly) -> Result<Residue> {
    let coeffs = p.coeffs();
    let field = p.field();
    let px: Vec<XRat> = coeffs.iter().map(XRat::derive).collect();
    let pt: Vec<XRat> = coeffs
        .iter()
        .enumerate()
        .skip(1)
        .map(|(k, c)| c.scale(&field.from_i64(k as i64)))
        .collect();
    let pt = p.reduce(&pt);
    let inv = invert_mod(&pt, p).map_err(|_| {
        Error::NotInvertible(format!(
            "{} and its t-derivative share a factor (repeated roots)",
            p.id()
        ))
    })?;
    let neg_px: Vec<XRat> = p.reduce(&px).iter().map(|c| -c).collect();
    Ok(p.mul_mod(&neg_px, &inv))
}

/// `Du / u` as a residue; needs a nonzero constant term.
pub fn log_derivative(p: &MonicPoly) -> Result<Residue> {
    let du = root_derivative(p)?;
    let u_inv = invert_mod(&p.t_pow(1), p)?;
    Ok(p.mul_mod(&du, &u_inv))
}
