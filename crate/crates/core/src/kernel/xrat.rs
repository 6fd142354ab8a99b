use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::scalar::{Field, Scalar};
use super::xpoly::XPoly;

/// Reduced rational function `num / den` in `K(x)`.
///
/// `den` is monic and coprime to `num`; zero is `0/1`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct XRat {
    num: XPoly,
    den: XPoly,
}

impl XRat {
    /// Normalizing constructor; `None` for a zero denominator.
    pub fn new(num: XPoly, den: XPoly) -> Option<Self> {
        if den.is_zero() {
            return None;
        }
        let field = num.field();
        if num.is_zero() {
            return Some(XRat::zero(field));
        }
        let g = XPoly::gcd_monic(&num, &den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (
                num.exact_div(&g).expect("gcd divides numerator"),
                den.exact_div(&g).expect("gcd divides denominator"),
            )
        };
        let lc = den.leading().expect("nonzero").clone();
        if !lc.is_one() {
            let inv = lc.inv().expect("nonzero");
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        Some(XRat { num, den })
    }

    pub fn from_poly(p: XPoly) -> Self {
        let den = XPoly::one(p.field());
        XRat { num: p, den }
    }

    pub fn from_scalar(c: Scalar) -> Self {
        Self::from_poly(XPoly::constant(c))
    }

    pub fn from_i64(field: Field, n: i64) -> Self {
        Self::from_scalar(field.from_i64(n))
    }

    pub fn zero(field: Field) -> Self {
        Self::from_poly(XPoly::zero(field))
    }

    pub fn one(field: Field) -> Self {
        Self::from_poly(XPoly::one(field))
    }

    pub fn x(field: Field) -> Self {
        Self::from_poly(XPoly::x(field))
    }

    pub fn field(&self) -> Field {
        self.num.field()
    }

    pub fn num(&self) -> &XPoly {
        &self.num
    }

    pub fn den(&self) -> &XPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_poly(&self) -> bool {
        self.den.is_one()
    }

    /// The polynomial value when the denominator is 1.
    pub fn as_poly(&self) -> Option<&XPoly> {
        self.is_poly().then_some(&self.num)
    }

    pub fn inv(&self) -> Option<XRat> {
        XRat::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, other: &XRat) -> Option<XRat> {
        other.inv().map(|i| self * &i)
    }

    pub fn scale(&self, c: &Scalar) -> XRat {
        if c.is_zero() {
            return XRat::zero(self.field());
        }
        XRat {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn pow(&self, e: u32) -> XRat {
        XRat {
            num: self.num.pow(e),
            den: self.den.pow(e),
        }
    }

    /// Quotient rule with `Dx = 1`.
    pub fn derive(&self) -> XRat {
        if self.den.is_one() {
            return XRat::from_poly(self.num.derive());
        }
        let num = &(&self.num.derive() * &self.den) - &(&self.num * &self.den.derive());
        XRat::new(num, &self.den * &self.den).expect("nonzero denominator")
    }

    /// Value at a point of `K`; `None` at a pole.
    pub fn eval(&self, at: &Scalar) -> Option<Scalar> {
        self.num.eval(at).div(&self.den.eval(at))
    }
}

impl Add for &XRat {
    type Output = XRat;
    fn add(self, rhs: &XRat) -> XRat {
        if self.den == rhs.den {
            if self.den.is_one() {
                return XRat::from_poly(&self.num + &rhs.num);
            }
            return XRat::new(&self.num + &rhs.num, self.den.clone()).expect("nonzero");
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        XRat::new(num, &self.den * &rhs.den).expect("nonzero")
    }
}

impl Sub for &XRat {
    type Output = XRat;
    fn sub(self, rhs: &XRat) -> XRat {
        self + &(-rhs)
    }
}

impl Neg for &XRat {
    type Output = XRat;
    fn neg(self) -> XRat {
        XRat {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Mul for &XRat {
    type Output = XRat;
    fn mul(self, rhs: &XRat) -> XRat {
        if self.den.is_one() && rhs.den.is_one() {
            return XRat::from_poly(&self.num * &rhs.num);
        }
        if self.is_zero() || rhs.is_zero() {
            return XRat::zero(self.field());
        }
        XRat::new(&self.num * &rhs.num, &self.den * &rhs.den).expect("nonzero")
    }
}

crate::forward_owned_ops!(XRat);

impl fmt::Display for XRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const Q: Field = Field::Rational;

    fn p(c: &[i64]) -> XPoly {
        XPoly::from_i64s(Q, c)
    }

    #[test]
    fn reciprocal_derivative() {
        let r = XRat::new(p(&[1]), p(&[0, 1])).unwrap();
        let expected = XRat::new(p(&[-1]), p(&[0, 0, 1])).unwrap();
        assert_eq!(r.derive(), expected);
    }

    #[test]
    fn normalization() {
        let r = XRat::new(p(&[-2, 2]), p(&[-2, 0, 2])).unwrap();
        assert_eq!(r.num(), &p(&[1]));
        assert_eq!(r.den(), &p(&[1, 1]));
        assert_eq!(XRat::new(r.num().clone(), r.den().clone()).unwrap(), r);
        assert!(XRat::new(p(&[1]), XPoly::zero(Q)).is_none());
        assert_eq!(
            XRat::new(XPoly::zero(Q), p(&[3, 1])).unwrap(),
            XRat::zero(Q)
        );
    }

    #[test]
    fn arithmetic() {
        let a = XRat::new(p(&[1]), p(&[0, 1])).unwrap();
        let b = XRat::new(p(&[1]), p(&[1, 1])).unwrap();
        let s = &a + &b;
        assert_eq!(s, XRat::new(p(&[1, 2]), p(&[0, 1, 1])).unwrap());
        assert_eq!(&s - &b, a);
        assert_eq!((&a * &a.inv().unwrap()), XRat::one(Q));
    }
}
