//! Fully symbolic resolvents by eliminating the basis coordinates of `y, Dy, ...`.
//!
//! The matrix with rows `(D^{m_k} y, coordinates of D^{m_k} y)` is singular as a
//! function matrix, so expanding it along the first column gives an operator that
//! annihilates `y`. This does not use powersums and serves as an oracle for them.

use std::collections::BTreeSet;

use crate::alpha::{signed_maximal_minors, Matrix, Monomial};
use crate::error::{Error, Result};
use crate::powersum::{ResolventTemplate, TemplateEntry};
use crate::tower::{derivative_table, BasisIndex, Lodo, ProblemSpec};

/// Largest matrix the symbolic expansion accepts.
pub const MAX_ORDERS: usize = 9;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Elimination {
    Resolvent(Lodo),
    /// Every cofactor vanished.
    Degenerate,
}

pub fn eliminate_resolvent(p: &ProblemSpec, orders: &[usize]) -> Result<Elimination> {
    if orders.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::Validation(
            "orders must be strictly increasing".into(),
        ));
    }
    let n = orders.len();
    if n > MAX_ORDERS {
        return Err(Error::TooLarge {
            size: n,
            limit: MAX_ORDERS,
        });
    }
    let field = p.field();
    let table = derivative_table(p, orders)?;
    let support: Vec<&BasisIndex> = table
        .values()
        .flat_map(|v| v.support())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if n != support.len() + 1 {
        return Err(Error::DimensionMismatch {
            expected: support.len() + 1,
            found: n,
        });
    }
    // transpose of the coordinate block: one column per order
    let coords = Matrix::from_fn(field, support.len(), n, |r, c| {
        table[&orders[c]].get(support[r])
    });
    let cofactors = signed_maximal_minors(&coords);
    let lodo = Lodo::from_terms(field, orders.iter().copied().zip(cofactors));
    if lodo.is_zero() {
        return Ok(Elimination::Degenerate);
    }
    Ok(Elimination::Resolvent(
        strip_monomial_content(&lodo).normalized(),
    ))
}

/// Divides out the largest symbol monomial common to all coefficients.
pub fn strip_monomial_content(r: &Lodo) -> Lodo {
    let mut terms = r.terms().map(|(_, c)| c.monomial_content());
    let Some(first) = terms.next() else {
        return r.clone();
    };
    let g = terms.fold(first, |g, m| g.gcd(&m));
    if g.is_one() {
        return r.clone();
    }
    r.map_coeffs(|c| c.div_monomial(&g).expect("common monomial divides"))
}

/// Smallest consecutive orders `0..=K` whose coordinates span exactly `K` basis elements.
pub fn auto_orders(p: &ProblemSpec) -> Result<Vec<usize>> {
    let all: Vec<usize> = (0..MAX_ORDERS).collect();
    let table = derivative_table(p, &all)?;
    let mut support: BTreeSet<&BasisIndex> = BTreeSet::new();
    for (k, v) in &table {
        support.extend(v.support());
        // sizes never decrease and the previous size exceeded k - 1, so this is equality
        if support.len() <= *k {
            return Ok((0..=*k).collect());
        }
    }
    Err(Error::TooLarge {
        size: support.len() + 1,
        limit: MAX_ORDERS,
    })
}

/// `a` and `b` differ by a nonzero factor in `K(x)`.
pub fn equal_up_to_unit(a: &Lodo, b: &Lodo) -> bool {
    let keys = |r: &Lodo| -> Vec<(usize, Monomial)> {
        r.terms()
            .flat_map(|(m, c)| c.terms().map(move |(mono, _)| (m, mono.clone())))
            .collect()
    };
    let ka = keys(a);
    if ka != keys(b) {
        return false;
    }
    let Some((m, mono)) = ka.first() else {
        return true;
    };
    let ca = a.coeff(*m).coeff(mono);
    let cb = b.coeff(*m).coeff(mono);
    a.scale(&cb) == b.scale(&ca)
}

/// Reads the template off an operator's support, by descending order and then descending
/// monomial.
pub fn lodo_to_template(r: &Lodo) -> Result<ResolventTemplate> {
    let mut entries = Vec::new();
    for (m, c) in r.terms().rev() {
        for (mono, _) in c.terms().rev() {
            entries.push(TemplateEntry {
                order: m,
                monomial: mono.clone(),
            });
        }
    }
    ResolventTemplate::new(entries)
}

/// Symbolic support of a template, for comparing shapes.
pub fn template_support(t: &ResolventTemplate) -> BTreeSet<(usize, Monomial)> {
    t.entries()
        .iter()
        .map(|e| (e.order, e.monomial.clone()))
        .collect()
}
