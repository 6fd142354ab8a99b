//! Arbitrary-precision numeric checks for problems whose polynomials are all linear.
//!
//! Derivatives of `y` at `x0` come from Taylor series: the roots `g_i(x0 + h)` are expanded
//! exactly over `Q`, raised to real powers with the recurrence for `f = g^a`
//! (`n g_0 f_n = sum_k (a k - n + k) g_k f_{n-k}`), and multiplied out.

use std::collections::BTreeMap;

use astro_float::{BigFloat, Consts, Radix, RoundingMode};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::alpha::{AlphaPoly, AlphaSymbol};
use crate::error::{Error, Result};
use crate::kernel::{Field, Scalar, XPoly, XRat};
use crate::tower::{Lodo, ProblemSpec};

const RM: RoundingMode = RoundingMode::ToEven;

/// Working state for one precision: bit count and the constants cache.
pub struct RealContext {
    bits: usize,
    cc: Consts,
}

impl RealContext {
    /// Precision of about `digits` decimal digits plus guard bits.
    pub fn new(digits: usize) -> Result<Self> {
        if digits == 0 {
            return Err(Error::Numeric("precision must be positive".into()));
        }
        let cc = Consts::new().map_err(|e| Error::Numeric(format!("{e:?}")))?;
        Ok(RealContext {
            bits: (digits as f64 * std::f64::consts::LOG2_10).ceil() as usize + 64,
            cc,
        })
    }

    pub fn bits(&self) -> usize {
        self.bits
    }

    fn check(&self, v: BigFloat, what: &str) -> Result<BigFloat> {
        if v.is_nan() || v.is_inf() {
            Err(Error::Numeric(format!("{what} is not a finite number")))
        } else {
            Ok(v)
        }
    }

    pub fn from_int(&mut self, n: &BigInt) -> BigFloat {
        BigFloat::parse(&n.to_string(), Radix::Dec, self.bits, RM, &mut self.cc)
    }

    pub fn from_rational(&mut self, q: &BigRational) -> BigFloat {
        let n = self.from_int(q.numer());
        let d = self.from_int(q.denom());
        n.div(&d, self.bits, RM)
    }

    /// A decimal, `p/q`, `pi`, `e` or `sqrt(v)`, optionally negated.
    pub fn parse(&mut self, s: &str) -> Result<BigFloat> {
        let t = s.trim();
        if let Some(rest) = t.strip_prefix('-') {
            return Ok(self.parse(rest)?.neg());
        }
        let v = match t {
            "pi" => self.cc.pi(self.bits, RM),
            "e" => self.cc.e(self.bits, RM),
            _ if t.starts_with("sqrt(") && t.ends_with(')') => {
                let inner = self.parse(&t[5..t.len() - 1])?;
                if inner.is_negative() {
                    return Err(Error::Numeric(format!(
                        "square root of a negative number in {s}"
                    )));
                }
                inner.sqrt(self.bits, RM)
            }
            _ if t.contains('/') => {
                let q = Field::Rational.parse(t)?;
                self.from_rational(q.as_rational().expect("rational field"))
            }
            _ => {
                let ok = !t.is_empty()
                    && t.chars()
                        .all(|c| c.is_ascii_digit() || matches!(c, '.' | 'e' | 'E' | '+' | '-'))
                    && t.chars()
                        .next()
                        .is_some_and(|c| c.is_ascii_digit() || c == '.');
                if !ok {
                    return Err(Error::Parse {
                        location: "real".into(),
                        message: format!("cannot read {s:?} as a real number"),
                    });
                }
                BigFloat::parse(t, Radix::Dec, self.bits, RM, &mut self.cc)
            }
        };
        self.check(v, s)
    }

    pub fn to_f64(&mut self, v: &BigFloat) -> f64 {
        v.format(Radix::Dec, RM, &mut self.cc)
            .ok()
            .and_then(|s| s.parse().ok())
            .unwrap_or(f64::NAN)
    }

    pub fn to_string(&mut self, v: &BigFloat) -> String {
        v.format(Radix::Dec, RM, &mut self.cc)
            .unwrap_or_else(|_| "NaN".into())
    }

    fn pow_real(&mut self, base: &BigFloat, e: &BigFloat) -> BigFloat {
        base.pow(e, self.bits, RM, &mut self.cc)
    }
}

fn scalar_q(s: &Scalar) -> Result<BigRational> {
    s.as_rational()
        .cloned()
        .ok_or_else(|| Error::Numeric("numeric evaluation needs the rational field".into()))
}

/// Exact value of `f` at `x0`.
fn eval_exact(f: &XRat, x0: &BigRational) -> Result<BigRational> {
    let at = Scalar::Q(x0.clone());
    match f.eval(&at) {
        Some(v) => scalar_q(&v),
        None => Err(Error::PoleAtSample(format!("{f} has a pole at x = {x0}"))),
    }
}

/// First `n + 1` Taylor coefficients of a polynomial at `x0`.
fn poly_taylor(p: &XPoly, x0: &BigRational, n: usize) -> Result<Vec<BigRational>> {
    let c: Vec<BigRational> = p.coeffs().iter().map(scalar_q).collect::<Result<_>>()?;
    // repeated synthetic division by (x - x0)
    let mut cur = c;
    let mut out = Vec::with_capacity(n + 1);
    for _ in 0..=n {
        if cur.is_empty() {
            out.push(BigRational::zero());
            continue;
        }
        let mut q = vec![BigRational::zero(); cur.len() - 1];
        let mut acc = BigRational::zero();
        for i in (0..cur.len()).rev() {
            acc = &acc * x0 + &cur[i];
            if i > 0 {
                q[i - 1] = acc.clone();
            }
        }
        out.push(acc);
        cur = q;
    }
    Ok(out)
}

/// Taylor coefficients of `f(x0 + h)` up to `h^n`, exact.
fn rat_taylor(f: &XRat, x0: &BigRational, n: usize) -> Result<Vec<BigRational>> {
    let num = poly_taylor(f.num(), x0, n)?;
    let den = poly_taylor(f.den(), x0, n)?;
    if den[0].is_zero() {
        return Err(Error::PoleAtSample(format!("{f} has a pole at x = {x0}")));
    }
    let mut out: Vec<BigRational> = Vec::with_capacity(n + 1);
    for k in 0..=n {
        let mut v = num[k].clone();
        for i in 1..=k {
            v -= &den[i] * &out[k - i];
        }
        out.push(v / &den[0]);
    }
    Ok(out)
}

fn series_mul(a: &[BigFloat], b: &[BigFloat], bits: usize) -> Vec<BigFloat> {
    let n = a.len().min(b.len());
    (0..n)
        .map(|k| {
            (0..=k).fold(BigFloat::from_u64(0, bits), |acc, i| {
                acc.add(&a[i].mul(&b[k - i], bits, RM), bits, RM)
            })
        })
        .collect()
}

/// Derivatives `y(x0), y'(x0), ..., y^{(n)}(x0)` for real exponent values.
pub fn derivatives_at(
    ctx: &mut RealContext,
    p: &ProblemSpec,
    subs: &BTreeMap<AlphaSymbol, BigFloat>,
    x0: &BigRational,
    n: usize,
) -> Result<Vec<BigFloat>> {
    if p.field() != Field::Rational {
        return Err(Error::Numeric(
            "numeric evaluation needs the rational field".into(),
        ));
    }
    let bits = ctx.bits;
    let mut roots = Vec::new();
    for q in p.polynomials() {
        let g = q.linear_root().ok_or_else(|| {
            Error::UnsupportedDegree(format!(
                "{} has degree {}; numeric checks need linear polynomials",
                q.id(),
                q.degree()
            ))
        })?;
        let series = rat_taylor(&g, x0, n)?;
        if !series[0].is_positive() {
            return Err(Error::Numeric(format!(
                "root of {} is not positive at x = {x0}; real powers are undefined",
                q.id()
            )));
        }
        roots.push(series);
    }
    let zero = BigFloat::from_u64(0, bits);
    let mut total = vec![zero.clone(); n + 1];
    for (j, term) in p.terms().iter().enumerate() {
        let mut acc: Vec<BigFloat> = rat_taylor(&term.coeff, x0, n)?
            .iter()
            .map(|q| ctx.from_rational(q))
            .collect();
        for (i, g) in roots.iter().enumerate() {
            let Some(sym) = p.exponent(j, i) else {
                continue;
            };
            let a = subs
                .get(sym)
                .ok_or_else(|| Error::Validation(format!("no value given for {sym}")))?;
            let gf: Vec<BigFloat> = g.iter().map(|q| ctx.from_rational(q)).collect();
            let mut f = vec![ctx.pow_real(&gf[0], a)];
            for m in 1..=n {
                let mut s = zero.clone();
                for k in 1..=m {
                    let ak = a.mul(&BigFloat::from_u64(k as u64, bits), bits, RM);
                    let w = ak.sub(&BigFloat::from_u64((m - k) as u64, bits), bits, RM);
                    let t = w.mul(&gf[k], bits, RM).mul(&f[m - k], bits, RM);
                    s = s.add(&t, bits, RM);
                }
                let d = gf[0].mul(&BigFloat::from_u64(m as u64, bits), bits, RM);
                f.push(s.div(&d, bits, RM));
            }
            acc = series_mul(&acc, &f, bits);
        }
        for (t, a) in total.iter_mut().zip(&acc) {
            *t = t.add(a, bits, RM);
        }
    }
    let mut fact = BigFloat::from_u64(1, bits);
    for (m, t) in total.iter_mut().enumerate() {
        if m > 0 {
            fact = fact.mul(&BigFloat::from_u64(m as u64, bits), bits, RM);
        }
        *t = t.mul(&fact, bits, RM);
    }
    Ok(total)
}

/// Value of an operator coefficient at real symbol values, as a polynomial in `x` with
/// real coefficients (ascending).
pub fn specialize_coefficient(
    ctx: &mut RealContext,
    c: &AlphaPoly,
    subs: &BTreeMap<AlphaSymbol, BigFloat>,
) -> Result<Vec<BigFloat>> {
    let bits = ctx.bits;
    let mut out: Vec<BigFloat> = Vec::new();
    for (mono, coeff) in c.terms() {
        let poly = coeff.as_poly().ok_or_else(|| {
            Error::Numeric("coefficient is not polynomial in x; normalize first".into())
        })?;
        let mut w = BigFloat::from_u64(1, bits);
        for (s, e) in mono.iter() {
            let v = subs
                .get(s)
                .ok_or_else(|| Error::Validation(format!("no value given for {s}")))?;
            w = w.mul(&v.powi(e as usize, bits, RM), bits, RM);
        }
        for (k, q) in poly.coeffs().iter().enumerate() {
            let term = ctx.from_rational(&scalar_q(q)?).mul(&w, bits, RM);
            if out.len() <= k {
                out.resize(k + 1, BigFloat::from_u64(0, bits));
            }
            out[k] = out[k].add(&term, bits, RM);
        }
    }
    Ok(out)
}

fn eval_coefficient(
    ctx: &mut RealContext,
    c: &AlphaPoly,
    subs: &BTreeMap<AlphaSymbol, BigFloat>,
    x0: &BigRational,
) -> Result<BigFloat> {
    let bits = ctx.bits;
    let mut acc = BigFloat::from_u64(0, bits);
    for (mono, coeff) in c.terms() {
        let mut w = ctx.from_rational(&eval_exact(coeff, x0)?);
        for (s, e) in mono.iter() {
            let v = subs
                .get(s)
                .ok_or_else(|| Error::Validation(format!("no value given for {s}")))?;
            w = w.mul(&v.powi(e as usize, bits, RM), bits, RM);
        }
        acc = acc.add(&w, bits, RM);
    }
    Ok(acc)
}

/// `|sum_m r_m(x0) y^{(m)}(x0)|` divided by the largest `|r_m(x0) y^{(m)}(x0)|`.
pub fn numeric_residual(
    r: &Lodo,
    subs: &BTreeMap<AlphaSymbol, BigFloat>,
    p: &ProblemSpec,
    x0: &BigRational,
    digits: usize,
) -> Result<f64> {
    let mut ctx = RealContext::new(digits)?;
    let v = residual_in(&mut ctx, r, subs, p, x0)?;
    Ok(ctx.to_f64(&v))
}

/// [`numeric_residual`] keeping the full-precision value.
pub fn residual_in(
    ctx: &mut RealContext,
    r: &Lodo,
    subs: &BTreeMap<AlphaSymbol, BigFloat>,
    p: &ProblemSpec,
    x0: &BigRational,
) -> Result<BigFloat> {
    let bits = ctx.bits;
    let zero = BigFloat::from_u64(0, bits);
    let Some(order) = r.order() else {
        return Ok(zero);
    };
    let ders = derivatives_at(ctx, p, subs, x0, order)?;
    let mut sum = zero.clone();
    let mut largest = zero.clone();
    for (m, c) in r.terms() {
        let t = eval_coefficient(ctx, c, subs, x0)?.mul(&ders[m], bits, RM);
        sum = sum.add(&t, bits, RM);
        let a = t.abs();
        if a.cmp(&largest).is_some_and(|o| o > 0) {
            largest = a;
        }
    }
    if largest.is_zero() {
        return Ok(zero);
    }
    Ok(sum.abs().div(&largest, bits, RM))
}

/// Parses `name=value` assignments with [`RealContext::parse`].
pub fn parse_substitutions(
    ctx: &mut RealContext,
    items: &[String],
) -> Result<BTreeMap<AlphaSymbol, BigFloat>> {
    let mut out = BTreeMap::new();
    for item in items {
        let (name, value) = item.split_once('=').ok_or_else(|| Error::Parse {
            location: "subst".into(),
            message: format!("expected name=value, got {item:?}"),
        })?;
        out.insert(AlphaSymbol::new(name.trim()), ctx.parse(value)?);
    }
    Ok(out)
}

/// Exact rational from a decimal or `p/q` string.
pub fn parse_rational(s: &str) -> Result<BigRational> {
    let t = s.trim();
    if let Some((int, frac)) = t.split_once('.') {
        let neg = int.starts_with('-');
        let digits = format!("{}{}", int.trim_start_matches(['-', '+']), frac);
        let n: BigInt = digits.parse().map_err(|_| Error::Parse {
            location: "x0".into(),
            message: format!("cannot read {s:?} as a rational"),
        })?;
        let d = num_traits::pow(BigInt::from(10), frac.len());
        let q = BigRational::new(n, d);
        return Ok(if neg { -q } else { q });
    }
    let q = Field::Rational.parse(t)?;
    Ok(q.as_rational().cloned().unwrap_or_else(BigRational::one))
}
