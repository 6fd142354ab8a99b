//! Coordinates of `D^m y` over the basis `v_j * prod_i u_i^{c_i}`.

use std::collections::BTreeMap;
use std::fmt;

use crate::alpha::{AlphaPoly, AlphaSymbol};
use crate::error::{Error, Result};
use crate::kernel::{Field, XRat};

use super::problem::ProblemSpec;
use super::residue::{log_derivative, Residue};

/// A basis index: term `j` and exponent vector `c` with `c_i < deg P_i`.
pub type BasisIndex = (usize, Vec<usize>);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TensorVector {
    field: Field,
    entries: BTreeMap<BasisIndex, AlphaPoly>,
}

impl TensorVector {
    pub fn zero(field: Field) -> Self {
        TensorVector {
            field,
            entries: BTreeMap::new(),
        }
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, idx: &BasisIndex) -> AlphaPoly {
        self.entries
            .get(idx)
            .cloned()
            .unwrap_or_else(|| AlphaPoly::zero(self.field))
    }

    pub fn entries(&self) -> impl Iterator<Item = (&BasisIndex, &AlphaPoly)> {
        self.entries.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &BasisIndex> {
        self.entries.keys()
    }

    pub fn add_at(&mut self, idx: BasisIndex, v: &AlphaPoly) {
        if v.is_zero() {
            return;
        }
        match self.entries.get_mut(&idx) {
            Some(cur) => {
                let s = &*cur + v;
                if s.is_zero() {
                    self.entries.remove(&idx);
                } else {
                    *cur = s;
                }
            }
            None => {
                self.entries.insert(idx, v.clone());
            }
        }
    }

    pub fn add(&self, other: &TensorVector) -> TensorVector {
        let mut out = self.clone();
        for (k, v) in &other.entries {
            out.add_at(k.clone(), v);
        }
        out
    }

    pub fn scale(&self, c: &AlphaPoly) -> TensorVector {
        let mut out = TensorVector::zero(self.field);
        for (k, v) in &self.entries {
            out.add_at(k.clone(), &(v * c));
        }
        out
    }

    /// Largest total symbol degree among the coordinates.
    pub fn alpha_degree(&self) -> u32 {
        self.entries
            .values()
            .filter_map(AlphaPoly::total_degree)
            .max()
            .unwrap_or(0)
    }

    /// Value in `K(x)` when every polynomial is linear with root `g_i` and the
    /// symbols take the given integer values.
    pub fn collapse_linear(
        &self,
        p: &ProblemSpec,
        values: &BTreeMap<AlphaSymbol, u64>,
    ) -> Result<XRat> {
        let roots = p
            .polynomials()
            .iter()
            .map(|q| {
                q.linear_root()
                    .ok_or_else(|| Error::UnsupportedDegree(format!("{} is not linear", q.id())))
            })
            .collect::<Result<Vec<_>>>()?;
        let mut acc = XRat::zero(self.field);
        for ((j, _), coeff) in &self.entries {
            let mut v = coeff.eval_int(values);
            for (i, g) in roots.iter().enumerate() {
                if let Some(sym) = p.exponent(*j, i) {
                    let e = values
                        .get(sym)
                        .ok_or_else(|| Error::Validation(format!("no value for symbol {sym}")))?;
                    let e = u32::try_from(*e)
                        .map_err(|_| Error::Validation(format!("exponent {e} too large")))?;
                    v = &v * &g.pow(e);
                }
            }
            acc = &acc + &v;
        }
        Ok(acc)
    }
}

impl fmt::Display for TensorVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, ((j, c), v)) in self.entries.iter().enumerate() {
            if n > 0 {
                writeln!(f)?;
            }
            write!(f, "[{j}; {c:?}] {v}")?;
        }
        Ok(())
    }
}

/// Precomputed residues `u_i^c * (Du_i / u_i) mod P_i` for the tensor derivation.
pub struct DerivationContext<'a> {
    spec: &'a ProblemSpec,
    /// `shifted[i][c]` is the residue of `t^c * w_i`.
    shifted: Vec<Vec<Residue>>,
}

impl<'a> DerivationContext<'a> {
    pub fn new(spec: &'a ProblemSpec) -> Result<Self> {
        let mut shifted = Vec::with_capacity(spec.polynomials().len());
        for p in spec.polynomials() {
            let w = log_derivative(p)?;
            let rows = (0..p.degree())
                .map(|c| p.mul_mod(&p.t_pow(c), &w))
                .collect();
            shifted.push(rows);
        }
        Ok(DerivationContext { spec, shifted })
    }

    pub fn spec(&self) -> &ProblemSpec {
        self.spec
    }

    /// `y` itself: coordinate `a_j` at `(j, 0)`.
    pub fn initial(&self) -> TensorVector {
        let field = self.spec.field();
        let zeros = vec![0; self.spec.polynomials().len()];
        let mut v = TensorVector::zero(field);
        for (j, t) in self.spec.terms().iter().enumerate() {
            v.add_at((j, zeros.clone()), &AlphaPoly::constant(t.coeff.clone()));
        }
        v
    }

    /// Applies `D` in tensor coordinates.
    pub fn derive(&self, v: &TensorVector) -> TensorVector {
        let field = self.spec.field();
        let mut out = TensorVector::zero(field);
        for ((j, c), f) in v.entries() {
            out.add_at((*j, c.clone()), &f.derive());
            for (i, shifted) in self.shifted.iter().enumerate() {
                // D(u^c * u^alpha) = (alpha + c) * u^c * (Du/u) * u^alpha
                let ci = c[i];
                let mut factor = AlphaPoly::constant(XRat::from_i64(field, ci as i64));
                if let Some(sym) = self.spec.exponent(*j, i) {
                    factor = &factor + &AlphaPoly::symbol(field, sym.clone());
                }
                if factor.is_zero() {
                    continue;
                }
                let base = f * &factor;
                for (e, r) in shifted[ci].iter().enumerate() {
                    if r.is_zero() {
                        continue;
                    }
                    let mut idx = c.clone();
                    idx[i] = e;
                    out.add_at((*j, idx), &base.scale(r));
                }
            }
        }
        out
    }
}

/// Coordinates of `D^m y` for every requested order.
pub fn derivative_table(
    p: &ProblemSpec,
    orders: &[usize],
) -> Result<BTreeMap<usize, TensorVector>> {
    let ctx = DerivationContext::new(p)?;
    let Some(&top) = orders.iter().max() else {
        return Ok(BTreeMap::new());
    };
    let mut out = BTreeMap::new();
    let mut cur = ctx.initial();
    for m in 0..=top {
        if orders.contains(&m) {
            out.insert(m, cur.clone());
        }
        if m < top {
            cur = ctx.derive(&cur);
        }
    }
    Ok(out)
}
