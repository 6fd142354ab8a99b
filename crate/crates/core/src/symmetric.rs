//! Newton powersums of the roots and the root-choice sums of a specialized pseudopolynomial.

use std::collections::BTreeMap;
use std::fmt;

use crate::alpha::AlphaSymbol;
use crate::error::{Error, Result};
use crate::kernel::XRat;
use crate::tower::{MonicPoly, ProblemSpec};

/// `p_0, ..., p_n` for the roots of `poly`, via Newton's identities without division.
pub fn powersums_from_elementary(poly: &MonicPoly, n: usize) -> Vec<XRat> {
    let field = poly.field();
    let e: Vec<XRat> = (0..=n.max(poly.degree()))
        .map(|k| poly.elementary(k))
        .collect();
    let mut p = Vec::with_capacity(n + 1);
    p.push(XRat::from_i64(field, poly.degree() as i64));
    for k in 1..=n {
        // p_k = sum_{i<k} (-1)^{i-1} e_i p_{k-i} + (-1)^{k-1} k e_k
        let mut acc = e[k].scale(&field.from_i64(k as i64));
        if k % 2 == 0 {
            acc = -&acc;
        }
        for i in 1..k {
            if e[i].is_zero() {
                continue;
            }
            let t = &e[i] * &p[k - i];
            acc = if i % 2 == 1 { &acc + &t } else { &acc - &t };
        }
        p.push(acc);
    }
    p
}

/// Nonnegative integer values for the exponent symbols.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Specialization(BTreeMap<AlphaSymbol, u64>);

impl Specialization {
    pub fn new(values: BTreeMap<AlphaSymbol, u64>) -> Self {
        Specialization(values)
    }

    /// Values listed in the order of `symbols`.
    pub fn from_values(symbols: &[AlphaSymbol], values: &[u64]) -> Self {
        Specialization(
            symbols
                .iter()
                .cloned()
                .zip(values.iter().copied())
                .collect(),
        )
    }

    pub fn get(&self, sym: &AlphaSymbol) -> Option<u64> {
        self.0.get(sym).copied()
    }

    pub fn values(&self) -> &BTreeMap<AlphaSymbol, u64> {
        &self.0
    }

    /// Values in the order of `symbols`, for display and serialization.
    pub fn ordered(&self, symbols: &[AlphaSymbol]) -> Vec<u64> {
        symbols
            .iter()
            .map(|s| self.0.get(s).copied().unwrap_or(0))
            .collect()
    }

    pub fn check_covers(&self, p: &ProblemSpec) -> Result<()> {
        match p.alphas().iter().find(|s| !self.0.contains_key(*s)) {
            Some(s) => Err(Error::Validation(format!(
                "specialization misses symbol {s}"
            ))),
            None => Ok(()),
        }
    }

    fn max_value(&self) -> u64 {
        self.0.values().copied().max().unwrap_or(0)
    }
}

impl fmt::Display for Specialization {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(|(s, v)| format!("{s}={v}")).collect();
        write!(f, "({})", parts.join(", "))
    }
}

/// Powersums per polynomial id, each of length `n + 1`.
#[derive(Clone, Debug)]
pub struct PowersumTable {
    sums: BTreeMap<String, Vec<XRat>>,
}

impl PowersumTable {
    pub fn new(p: &ProblemSpec, n: usize) -> Self {
        PowersumTable {
            sums: p
                .polynomials()
                .iter()
                .map(|q| (q.id().to_string(), powersums_from_elementary(q, n)))
                .collect(),
        }
    }

    /// Table large enough for every value in `specs`.
    pub fn for_specializations(p: &ProblemSpec, specs: &[Specialization]) -> Self {
        let n = specs
            .iter()
            .map(Specialization::max_value)
            .max()
            .unwrap_or(0);
        Self::new(p, n as usize)
    }

    pub fn get(&self, id: &str) -> Option<&[XRat]> {
        self.sums.get(id).map(Vec::as_slice)
    }

    fn sum(&self, id: &str, k: u64) -> Result<&XRat> {
        self.sums
            .get(id)
            .and_then(|v| v.get(k as usize))
            .ok_or_else(|| Error::Validation(format!("powersum p_{k} of {id} not tabulated")))
    }

    /// `sum_j a_j * prod_i p^{(i)}_{s(alpha_ij)}` before differentiation.
    pub fn collapsed(&self, p: &ProblemSpec, s: &Specialization) -> Result<XRat> {
        s.check_covers(p)?;
        let mut total = XRat::zero(p.field());
        for (j, term) in p.terms().iter().enumerate() {
            let mut v = term.coeff.clone();
            for (i, poly) in p.polynomials().iter().enumerate() {
                let k = p.exponent(j, i).and_then(|a| s.get(a)).unwrap_or(0);
                v = &v * self.sum(poly.id(), k)?;
            }
            total = &total + &v;
        }
        Ok(total)
    }
}

/// `D^m` of the sum of `y` over every simultaneous choice of roots, at integer exponents.
pub fn combined_sum(p: &ProblemSpec, s: &Specialization, m: usize) -> Result<XRat> {
    let table = PowersumTable::for_specializations(p, std::slice::from_ref(s));
    let mut v = table.collapsed(p, s)?;
    for _ in 0..m {
        v = v.derive();
    }
    Ok(v)
}
