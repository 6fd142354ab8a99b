use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use crate::kernel::{Field, XRat};

/// An indeterminate constant exponent such as `alpha`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlphaSymbol(Arc<str>);

impl AlphaSymbol {
    pub fn new(id: &str) -> Self {
        AlphaSymbol(Arc::from(id))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Display for AlphaSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for AlphaSymbol {
    fn from(s: &str) -> Self {
        AlphaSymbol::new(s)
    }
}

/// Power product of symbols; zero exponents are never stored.
///
/// Ordered lexicographically with earlier symbol ids dominating, which is a
/// monomial order (compatible with multiplication).
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Monomial(BTreeMap<AlphaSymbol, u32>);

impl Monomial {
    pub fn one() -> Self {
        Monomial(BTreeMap::new())
    }

    pub fn var(sym: AlphaSymbol) -> Self {
        Self::from_pairs([(sym, 1)])
    }

    pub fn from_pairs<I: IntoIterator<Item = (AlphaSymbol, u32)>>(pairs: I) -> Self {
        let mut m = BTreeMap::new();
        for (s, e) in pairs {
            if e > 0 {
                *m.entry(s).or_insert(0) += e;
            }
        }
        Monomial(m)
    }

    pub fn is_one(&self) -> bool {
        self.0.is_empty()
    }

    pub fn exponent(&self, sym: &AlphaSymbol) -> u32 {
        self.0.get(sym).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&AlphaSymbol, u32)> {
        self.0.iter().map(|(s, &e)| (s, e))
    }

    pub fn degree(&self) -> u32 {
        self.0.values().sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        let mut m = self.0.clone();
        for (s, e) in &other.0 {
            *m.entry(s.clone()).or_insert(0) += e;
        }
        Monomial(m)
    }

    /// `self / other` when `other` divides `self`.
    pub fn div(&self, other: &Monomial) -> Option<Monomial> {
        let mut m = self.0.clone();
        for (s, &e) in &other.0 {
            let have = m.get_mut(s)?;
            match (*have).cmp(&e) {
                Ordering::Less => return None,
                Ordering::Equal => {
                    m.remove(s);
                }
                Ordering::Greater => *have -= e,
            }
        }
        Some(Monomial(m))
    }

    /// Componentwise minimum.
    pub fn gcd(&self, other: &Monomial) -> Monomial {
        Monomial(
            self.0
                .iter()
                .filter_map(|(s, &e)| {
                    let f = other.exponent(s).min(e);
                    (f > 0).then(|| (s.clone(), f))
                })
                .collect(),
        )
    }

    /// Integer value under a specialization; unassigned symbols count as zero.
    pub fn eval_int(&self, values: &BTreeMap<AlphaSymbol, u64>) -> num_bigint::BigInt {
        self.0
            .iter()
            .map(|(s, &e)| num_bigint::BigInt::from(values.get(s).copied().unwrap_or(0)).pow(e))
            .product()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        let mut a = self.0.iter().peekable();
        let mut b = other.0.iter().peekable();
        loop {
            match (a.peek(), b.peek()) {
                (None, None) => return Ordering::Equal,
                (Some(_), None) => return Ordering::Greater,
                (None, Some(_)) => return Ordering::Less,
                (Some((sa, ea)), Some((sb, eb))) => match sa.cmp(sb) {
                    // `self` carries a positive power of an earlier symbol
                    Ordering::Less => return Ordering::Greater,
                    Ordering::Greater => return Ordering::Less,
                    Ordering::Equal => match ea.cmp(eb) {
                        Ordering::Equal => {
                            a.next();
                            b.next();
                        }
                        ord => return ord,
                    },
                },
            }
        }
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Monomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        let parts: Vec<String> = self
            .0
            .iter()
            .map(|(s, &e)| {
                if e == 1 {
                    s.to_string()
                } else {
                    format!("{s}^{e}")
                }
            })
            .collect();
        write!(f, "{}", parts.join("*"))
    }
}

/// Sparse polynomial in the exponent symbols with coefficients in `K(x)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlphaPoly {
    field: Field,
    terms: BTreeMap<Monomial, XRat>,
}

impl AlphaPoly {
    pub fn zero(field: Field) -> Self {
        AlphaPoly {
            field,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(field: Field) -> Self {
        Self::constant(XRat::one(field))
    }

    pub fn constant(c: XRat) -> Self {
        Self::term(Monomial::one(), c)
    }

    pub fn term(m: Monomial, c: XRat) -> Self {
        let field = c.field();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        AlphaPoly { field, terms }
    }

    pub fn symbol(field: Field, sym: AlphaSymbol) -> Self {
        Self::term(Monomial::var(sym), XRat::one(field))
    }

    pub fn from_terms<I: IntoIterator<Item = (Monomial, XRat)>>(field: Field, it: I) -> Self {
        let mut p = AlphaPoly::zero(field);
        for (m, c) in it {
            p.add_term(m, &c);
        }
        p
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &XRat)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> XRat {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| XRat::zero(self.field))
    }

    /// Largest monomial and its coefficient.
    pub fn leading(&self) -> Option<(&Monomial, &XRat)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn add_term(&mut self, m: Monomial, c: &XRat) {
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(v) => {
                let s = &*v + c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *v = s;
                }
            }
            None => {
                self.terms.insert(m, c.clone());
            }
        }
    }

    pub fn scale(&self, c: &XRat) -> AlphaPoly {
        if c.is_zero() {
            return AlphaPoly::zero(self.field);
        }
        AlphaPoly {
            field: self.field,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial) -> AlphaPoly {
        AlphaPoly {
            field: self.field,
            terms: self
                .terms
                .iter()
                .map(|(k, v)| (k.mul(m), v.clone()))
                .collect(),
        }
    }

    /// Coefficientwise derivation; the symbols are constants.
    pub fn derive(&self) -> AlphaPoly {
        AlphaPoly::from_terms(
            self.field,
            self.terms.iter().map(|(m, c)| (m.clone(), c.derive())),
        )
    }

    /// Substitutes integer values for every symbol.
    pub fn eval_int(&self, values: &BTreeMap<AlphaSymbol, u64>) -> XRat {
        self.terms
            .iter()
            .fold(XRat::zero(self.field), |acc, (m, c)| {
                &acc + &c.scale(&self.field.from_bigint(&m.eval_int(values)))
            })
    }

    /// Maps every coefficient through `f`, dropping those that become zero.
    pub fn map_coeffs(&self, f: impl Fn(&XRat) -> XRat) -> AlphaPoly {
        AlphaPoly::from_terms(
            self.field,
            self.terms.iter().map(|(m, c)| (m.clone(), f(c))),
        )
    }

    /// Largest monomial dividing every term.
    pub fn monomial_content(&self) -> Monomial {
        let mut it = self.terms.keys();
        match it.next() {
            None => Monomial::one(),
            Some(first) => it.fold(first.clone(), |g, m| g.gcd(m)),
        }
    }

    /// Division by a monomial that divides every term.
    pub fn div_monomial(&self, m: &Monomial) -> Option<AlphaPoly> {
        let mut terms = BTreeMap::new();
        for (k, v) in &self.terms {
            terms.insert(k.div(m)?, v.clone());
        }
        Some(AlphaPoly {
            field: self.field,
            terms,
        })
    }

    /// Exact multivariate division over the coefficient field `K(x)`.
    pub fn exact_div(&self, divisor: &AlphaPoly) -> Option<AlphaPoly> {
        let (dm, dc) = divisor.leading()?;
        let (dm, dc_inv) = (dm.clone(), dc.inv()?);
        if divisor.terms.len() == 1 {
            let q = self.div_monomial(&dm)?;
            return Some(q.scale(&dc_inv));
        }
        let mut rem = self.clone();
        let mut quot = AlphaPoly::zero(self.field);
        while let Some((rm, rc)) = rem.leading() {
            let m = rm.div(&dm)?;
            let c = rc * &dc_inv;
            let step = divisor.mul_monomial(&m).scale(&c);
            quot.add_term(m, &c);
            rem = &rem - &step;
        }
        Some(quot)
    }
}

impl Add for &AlphaPoly {
    type Output = AlphaPoly;
    fn add(self, rhs: &AlphaPoly) -> AlphaPoly {
        let (mut acc, other) = if self.terms.len() >= rhs.terms.len() {
            (self.clone(), rhs)
        } else {
            (rhs.clone(), self)
        };
        for (m, c) in &other.terms {
            acc.add_term(m.clone(), c);
        }
        acc
    }
}

impl Sub for &AlphaPoly {
    type Output = AlphaPoly;
    fn sub(self, rhs: &AlphaPoly) -> AlphaPoly {
        self + &(-rhs)
    }
}

impl Neg for &AlphaPoly {
    type Output = AlphaPoly;
    fn neg(self) -> AlphaPoly {
        AlphaPoly {
            field: self.field,
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Mul for &AlphaPoly {
    type Output = AlphaPoly;
    fn mul(self, rhs: &AlphaPoly) -> AlphaPoly {
        let mut out = AlphaPoly::zero(self.field);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), &(ca * cb));
            }
        }
        out
    }
}

crate::forward_owned_ops!(AlphaPoly);

impl fmt::Display for AlphaPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| match (m.is_one(), c.is_one()) {
                (true, _) => format!("({c})"),
                (false, true) => m.to_string(),
                (false, false) => format!("({c})*{m}"),
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}
