//! Pochhammer symbols, partial Bell polynomials, and the integer-exponent resolvent of
//! `e^{A x} + (ln x)^A` over the formal basis `{e^{A x}} + {(ln x)^{A-k}}`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use std::collections::BTreeMap;

use crate::alpha::{signed_maximal_minors, AlphaPoly, AlphaSymbol, Matrix, Monomial};
use crate::kernel::{Field, XPoly, XRat};
use crate::tower::Lodo;

const Q: Field = Field::Rational;

/// Falling factorial `(alpha)_k = alpha (alpha - 1) ... (alpha - k + 1)`.
pub fn pochhammer(sym: &AlphaSymbol, k: usize) -> AlphaPoly {
    let a = AlphaPoly::symbol(Q, sym.clone());
    (0..k).fold(AlphaPoly::one(Q), |acc, i| {
        &acc * &(&a - &AlphaPoly::constant(XRat::from_i64(Q, i as i64)))
    })
}

fn binomial(n: usize, k: usize) -> BigInt {
    (0..k).fold(BigInt::one(), |acc, i| acc * (n - i) / (i + 1))
}

/// Partial Bell polynomial `B_{n,k}(a_1, ..., a_{n-k+1})`; `args[0]` is `a_1`.
pub fn bell_partial(n: usize, k: usize, args: &[XRat]) -> XRat {
    let field = args.first().map_or(Q, XRat::field);
    if k > n || (k == 0 && n > 0) {
        return XRat::zero(field);
    }
    assert!(
        args.len() > n - k,
        "B_{{{n},{k}}} needs {} arguments",
        n - k + 1
    );
    // b[i][j] = B_{i,j}, only where i - j <= n - k
    let mut b = vec![vec![XRat::zero(field); k + 1]; n + 1];
    b[0][0] = XRat::one(field);
    for i in 1..=n {
        for j in i.saturating_sub(n - k).max(1)..=k.min(i) {
            let mut acc = XRat::zero(field);
            for s in 1..=(i - j + 1) {
                let a = &args[s - 1];
                if a.is_zero() || b[i - s][j - 1].is_zero() {
                    continue;
                }
                let c = field.from_bigint(&binomial(i - 1, s - 1));
                acc = &acc + &(a * &b[i - s][j - 1]).scale(&c);
            }
            b[i][j] = acc;
        }
    }
    b[n][k].clone()
}

/// `B_{m,k}(1, -1, 2, ..., (-1)^{j-1} (j-1)!)`, the signed Stirling numbers of the first kind.
pub fn bell_b(m: usize, k: usize) -> BigInt {
    if k > m || (k == 0 && m > 0) {
        return BigInt::zero();
    }
    // s(n, k) = s(n-1, k-1) - (n-1) s(n-1, k)
    let mut row = vec![BigInt::one()];
    for n in 1..=m {
        let mut next = vec![BigInt::zero(); n + 1];
        for j in 1..=n {
            let mut v = row[j - 1].clone();
            if j < n {
                v -= BigInt::from(n - 1) * &row[j];
            }
            next[j] = v;
        }
        row = next;
    }
    row[k].clone()
}

/// The functions `e^{A x}` and `(ln x)^{A-k}` the demo works with.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum FormalBasisFunction {
    ExpAlphaX,
    LogPower(usize),
}

/// Row `m` of `D^m (e^{A x} + (ln x)^A)` over the basis `[e^{Ax}, (ln x)^A, ..., (ln x)^0]`,
/// read off the Bell expansion.
fn bell_row(a: usize, m: usize) -> Vec<XRat> {
    let sym = AlphaSymbol::new("a");
    let at_a = |p: &AlphaPoly| {
        let values = [(sym.clone(), a as u64)].into_iter().collect();
        p.eval_int(&values)
    };
    let x_inv_m = XRat::new(XPoly::one(Q), XPoly::x_pow(Q, m)).expect("nonzero");
    let mut row = vec![XRat::from_i64(Q, a as i64).pow(m as u32)];
    for k in 0..=a {
        let c = Q.from_bigint(&bell_b(m, k));
        row.push((&at_a(&pochhammer(&sym, k)) * &x_inv_m).scale(&c));
    }
    row
}

/// Operator of order `A + 2` with coefficients in `Q[x]` annihilating `e^{A x}` and every
/// `(ln x)^{A-k}`; `D` for `A = 0`, where the basis collapses to `{1}`.
pub fn log_resolvent(a: usize) -> Lodo {
    if a == 0 {
        return Lodo::d_pow(Q, 1);
    }
    let orders = a + 3;
    let rows: Vec<Vec<XRat>> = (0..orders).map(|m| bell_row(a, m)).collect();
    let t = Matrix::from_fn(Q, a + 2, orders, |r, c| rows[c][r].clone());
    let cofactors = signed_maximal_minors(&t);
    Lodo::from_terms(
        Q,
        cofactors
            .into_iter()
            .enumerate()
            .map(|(m, c)| (m, AlphaPoly::constant(c))),
    )
    .normalized()
}

/// `R f` for a basis function `f`, as coefficients of each basis function, by repeated
/// differentiation with the chain rule.
pub fn apply_to_basis(
    r: &Lodo,
    a: usize,
    f: FormalBasisFunction,
) -> Vec<(FormalBasisFunction, XRat)> {
    let af = XRat::from_i64(Q, a as i64);
    let inv_x = XRat::new(XPoly::one(Q), XPoly::x(Q)).expect("nonzero");
    // current derivative as coefficient list over the basis
    let mut cur: Vec<(FormalBasisFunction, XRat)> = vec![(f, XRat::one(Q))];
    let mut out: BTreeMap<FormalBasisFunction, XRat> = BTreeMap::new();
    let top = r.order().unwrap_or(0);
    for m in 0..=top {
        let rm = r.coeff(m).coeff(&Monomial::one());
        for (g, c) in &cur {
            let e = out.entry(*g).or_insert_with(|| XRat::zero(Q));
            *e = &*e + &(&rm * c);
        }
        let mut next: BTreeMap<FormalBasisFunction, XRat> = BTreeMap::new();
        for (g, c) in cur {
            let mut add = |h: FormalBasisFunction, v: XRat| {
                let e = next.entry(h).or_insert_with(|| XRat::zero(Q));
                *e = &*e + &v;
            };
            add(g, c.derive());
            match g {
                FormalBasisFunction::ExpAlphaX => add(g, &c * &af),
                FormalBasisFunction::LogPower(j) if j > 0 => {
                    let jf = XRat::from_i64(Q, j as i64);
                    add(FormalBasisFunction::LogPower(j - 1), &(&c * &jf) * &inv_x);
                }
                FormalBasisFunction::LogPower(_) => {}
            }
        }
        cur = next.into_iter().filter(|(_, c)| !c.is_zero()).collect();
    }
    out.into_iter().filter(|(_, c)| !c.is_zero()).collect()
}

/// Every function of the basis for exponent `a` is annihilated.
pub fn annihilates_basis(r: &Lodo, a: usize) -> bool {
    std::iter::once(FormalBasisFunction::ExpAlphaX)
        .chain((0..=a).map(FormalBasisFunction::LogPower))
        .all(|f| apply_to_basis(r, a, f).is_empty())
}
