//! The powersum formula: specialize the exponents to integers, sum over all root choices,
//! and read the coefficient functions off the signed maximal minors.

use std::collections::BTreeSet;

use crate::alpha::{signed_maximal_minors, AlphaPoly, AlphaSymbol, Matrix, Monomial};
use crate::error::{Error, Result};
use crate::kernel::{content_primitive, Field, XPoly, XRat};
use crate::symmetric::{PowersumTable, Specialization};
use crate::tower::{Lodo, ProblemSpec};

/// One unknown coefficient function: the factor `monomial * D^order`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct TemplateEntry {
    pub order: usize,
    pub monomial: Monomial,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResolventTemplate {
    entries: Vec<TemplateEntry>,
}

impl ResolventTemplate {
    pub fn new(entries: Vec<TemplateEntry>) -> Result<Self> {
        if entries.len() < 2 {
            return Err(Error::InvalidTemplate(format!(
                "a template needs at least 2 entries, got {}",
                entries.len()
            )));
        }
        let distinct: BTreeSet<&TemplateEntry> = entries.iter().collect();
        if distinct.len() != entries.len() {
            return Err(Error::InvalidTemplate(
                "repeated (order, monomial) entry".into(),
            ));
        }
        Ok(ResolventTemplate { entries })
    }

    pub fn entries(&self) -> &[TemplateEntry] {
        &self.entries
    }

    pub fn psi(&self) -> usize {
        self.entries.len()
    }

    pub fn max_order(&self) -> usize {
        self.entries.iter().map(|e| e.order).max().unwrap_or(0)
    }

    /// Every symbol used by some monomial must belong to the problem.
    pub fn check_symbols(&self, p: &ProblemSpec) -> Result<()> {
        for e in &self.entries {
            for (s, _) in e.monomial.iter() {
                if !p.alphas().contains(s) {
                    return Err(Error::InvalidTemplate(format!(
                        "template uses symbol {s} unknown to the problem"
                    )));
                }
            }
        }
        Ok(())
    }
}

/// Operator shape `sum_{m=0}^{n} sum_j r_{j,m} alpha^j D^m` with
/// `j <= n(n-1)/2 + 1 - m`, without the `alpha^0 D^0` entry.
///
/// Entries are listed by descending order, then ascending power of `alpha`.
pub fn thm83_template(n: usize, alpha: &AlphaSymbol) -> Result<ResolventTemplate> {
    if n == 0 {
        return Err(Error::InvalidTemplate("degree must be at least 1".into()));
    }
    let top = n * (n - 1) / 2 + 1;
    let mut entries = Vec::new();
    for m in (0..=n).rev() {
        for j in 0..=(top - m.min(top)) {
            if m == 0 && j == 0 {
                continue;
            }
            let monomial = if j == 0 {
                Monomial::one()
            } else {
                Monomial::from_pairs([(alpha.clone(), j as u32)])
            };
            entries.push(TemplateEntry { order: m, monomial });
        }
    }
    ResolventTemplate::new(entries)
}

/// How to choose the `Psi - 1` specializations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpecStrategy {
    /// First `Psi - 1` vectors in lexicographic order from `[1,2]^(k-1) x [1,h]`,
    /// with `h` the smallest height that fits.
    Grid,
    Explicit(Vec<Specialization>),
}

pub fn default_specializations(
    tpl: &ResolventTemplate,
    p: &ProblemSpec,
    strategy: &SpecStrategy,
) -> Vec<Specialization> {
    match strategy {
        SpecStrategy::Explicit(v) => v.clone(),
        SpecStrategy::Grid => grid(p.alphas(), tpl.psi() - 1),
    }
}

fn grid(symbols: &[AlphaSymbol], count: usize) -> Vec<Specialization> {
    let k = symbols.len();
    if k == 0 {
        return Vec::new();
    }
    let lower = 1usize << (k - 1).min(20);
    let height = count.div_ceil(lower).max(1) as u64;
    let mut out = Vec::with_capacity(count);
    let mut cur = vec![1u64; k];
    while out.len() < count {
        out.push(Specialization::from_values(symbols, &cur));
        // odometer, last coordinate fastest
        let mut i = k - 1;
        loop {
            let cap = if i == k - 1 { height } else { 2 };
            if cur[i] < cap {
                cur[i] += 1;
                break;
            }
            cur[i] = 1;
            if i == 0 {
                return out;
            }
            i -= 1;
        }
    }
    out
}

/// Row per specialization `s`, column per entry `(m, l)`: `s^l * D^m (sum over roots of y)`.
pub fn build_specialization_matrix(
    p: &ProblemSpec,
    tpl: &ResolventTemplate,
    specs: &[Specialization],
) -> Result<Matrix<XRat>> {
    if specs.len() + 1 != tpl.psi() {
        return Err(Error::DimensionMismatch {
            expected: tpl.psi() - 1,
            found: specs.len(),
        });
    }
    tpl.check_symbols(p)?;
    let distinct: BTreeSet<&Specialization> = specs.iter().collect();
    if distinct.len() != specs.len() {
        return Err(Error::Validation(
            "specializations must be pairwise distinct".into(),
        ));
    }
    let field = p.field();
    let table = PowersumTable::for_specializations(p, specs);
    let top = tpl.max_order();
    let mut rows = Vec::with_capacity(specs.len());
    for s in specs {
        let mut derivs = vec![table.collapsed(p, s)?];
        for m in 1..=top {
            derivs.push(derivs[m - 1].derive());
        }
        let row = tpl
            .entries()
            .iter()
            .map(|e| {
                let w = field.from_bigint(&e.monomial.eval_int(s.values()));
                derivs[e.order].scale(&w)
            })
            .collect();
        rows.push(row);
    }
    Ok(Matrix::from_rows(field, rows))
}

/// Coefficient functions found by the powersum formula.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Resolvent {
    pub template: ResolventTemplate,
    pub raw_t: Vec<XPoly>,
    pub content: XPoly,
    pub primitive_r: Vec<XPoly>,
}

impl Resolvent {
    pub fn field(&self) -> Field {
        self.content.field()
    }

    /// `sum_k r_k * monomial_k * D^{m_k}`.
    pub fn to_lodo(&self) -> Lodo {
        let field = self.field();
        let mut out = Lodo::zero(field);
        for (e, r) in self.template.entries().iter().zip(&self.primitive_r) {
            out.add_term(
                e.order,
                &AlphaPoly::term(e.monomial.clone(), XRat::from_poly(r.clone())),
            );
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Outcome {
    Resolvent(Resolvent),
    /// Every minor vanished; other specializations may succeed.
    IdenticallyZero,
}

/// Clears each row's denominators, so all minors are polynomials in `x`.
fn clear_rows(m: &Matrix<XRat>) -> Matrix<XPoly> {
    let field = m.field();
    let rows = (0..m.rows())
        .map(|i| {
            let den = m.row(i).iter().fold(XPoly::one(field), |l, v| {
                let g = XPoly::gcd_monic(&l, v.den());
                &l * &v.den().exact_div(&g).expect("gcd divides")
            });
            let d = XRat::from_poly(den);
            m.row(i)
                .iter()
                .map(|v| (v * &d).as_poly().expect("denominators cleared").clone())
                .collect()
        })
        .collect();
    Matrix::from_rows(field, rows)
}

pub fn powersum_resolvent(
    p: &ProblemSpec,
    tpl: &ResolventTemplate,
    specs: &[Specialization],
) -> Result<Outcome> {
    let m = build_specialization_matrix(p, tpl, specs)?;
    let raw_t = signed_maximal_minors(&clear_rows(&m));
    match content_primitive(&raw_t) {
        Ok((content, primitive_r)) => Ok(Outcome::Resolvent(Resolvent {
            template: tpl.clone(),
            raw_t,
            content,
            primitive_r,
        })),
        Err(Error::AllZero) => Ok(Outcome::IdenticallyZero),
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::alpha::mat_vec;
    use crate::tower::{apply_lodo, MonicPoly, PseudoTerm};

    const Q: Field = Field::Rational;

    fn alpha() -> AlphaSymbol {
        AlphaSymbol::new("alpha")
    }

    fn mono(pairs: &[(&str, u32)]) -> Monomial {
        Monomial::from_pairs(pairs.iter().map(|(s, e)| (AlphaSymbol::new(s), *e)))
    }

    #[test]
    fn thm83_shapes() {
        let t2 = thm83_template(2, &alpha()).unwrap();
        let got: Vec<(usize, u32)> = t2
            .entries()
            .iter()
            .map(|e| (e.order, e.monomial.exponent(&alpha())))
            .collect();
        assert_eq!(got, vec![(2, 0), (1, 0), (1, 1), (0, 1), (0, 2)]);
        let t1 = thm83_template(1, &alpha()).unwrap();
        assert_eq!(t1.psi(), 2);
        assert_eq!(
            t1.entries()[0],
            TemplateEntry {
                order: 1,
                monomial: Monomial::one()
            }
        );
        assert_eq!(
            t1.entries()[1],
            TemplateEntry {
                order: 0,
                monomial: mono(&[("alpha", 1)])
            }
        );
    }

    #[test]
    fn grid_examples() {
        let ab = [AlphaSymbol::new("alpha"), AlphaSymbol::new("beta")];
        let g: Vec<Vec<u64>> = grid(&ab, 8).iter().map(|s| s.ordered(&ab)).collect();
        assert_eq!(
            g,
            vec![
                vec![1, 1],
                vec![1, 2],
                vec![1, 3],
                vec![1, 4],
                vec![2, 1],
                vec![2, 2],
                vec![2, 3],
                vec![2, 4],
            ]
        );
        assert_eq!(grid(&ab[..1], 1)[0].ordered(&ab[..1]), vec![1]);
        let abc = [ab[0].clone(), ab[1].clone(), AlphaSymbol::new("gamma")];
        let g3 = grid(&abc, 5);
        let distinct: BTreeSet<_> = g3.iter().collect();
        assert_eq!(distinct.len(), 5);
    }

    fn char3() -> ProblemSpec {
        let f3 = Field::prime(3).unwrap();
        let c = |v: &[i64]| XRat::from_poly(XPoly::from_i64s(f3, v));
        ProblemSpec::new(
            f3,
            vec![MonicPoly::new("z", vec![c(&[-1]), c(&[0, 1]), c(&[]), c(&[1])]).unwrap()],
            vec![PseudoTerm::new(c(&[1]), [("z", "alpha")])],
            vec![alpha()],
        )
        .unwrap()
    }

    #[test]
    fn char_three_rows_and_outcomes() {
        let p = char3();
        let f3 = p.field();
        let tpl = thm83_template(1, &alpha()).unwrap();
        let spec = |a| vec![Specialization::from_values(p.alphas(), &[a])];
        let m = build_specialization_matrix(&p, &tpl, &spec(2)).unwrap();
        assert_eq!(
            m.row(0),
            &[
                XRat::one(f3),
                XRat::from_poly(XPoly::from_i64s(f3, &[0, 2]))
            ]
        );
        let m1 = build_specialization_matrix(&p, &tpl, &spec(1)).unwrap();
        assert!(m1.row(0).iter().all(XRat::is_zero));
        for a in [1, 3] {
            assert_eq!(
                powersum_resolvent(&p, &tpl, &spec(a)).unwrap(),
                Outcome::IdenticallyZero
            );
        }
        let Outcome::Resolvent(r) = powersum_resolvent(&p, &tpl, &spec(2)).unwrap() else {
            panic!("expected a resolvent");
        };
        assert_eq!(
            r.primitive_r,
            vec![XPoly::from_i64s(f3, &[0, 1]), XPoly::one(f3)]
        );
        assert_eq!(r.content, XPoly::from_i64s(f3, &[2]));
        assert!(apply_lodo(&r.to_lodo(), &p).unwrap().is_zero());
    }

    #[test]
    fn wrong_number_of_specializations() {
        let p = char3();
        let tpl = thm83_template(1, &alpha()).unwrap();
        assert!(matches!(
            build_specialization_matrix(&p, &tpl, &[]),
            Err(Error::DimensionMismatch {
                expected: 1,
                found: 0
            })
        ));
    }

    #[test]
    fn square_root_power_resolvent() {
        let x = |c: &[i64]| XRat::from_poly(XPoly::from_i64s(Q, c));
        let p = ProblemSpec::new(
            Q,
            vec![MonicPoly::new("u", vec![x(&[0, -1]), x(&[]), x(&[1])]).unwrap()],
            vec![PseudoTerm::new(x(&[1]), [("u", "alpha")])],
            vec![alpha()],
        )
        .unwrap();
        let tpl = thm83_template(1, &alpha()).unwrap();
        // odd exponents sum to zero over the two roots
        let specs = vec![Specialization::from_values(p.alphas(), &[2])];
        let m = build_specialization_matrix(&p, &tpl, &specs).unwrap();
        let Outcome::Resolvent(r) = powersum_resolvent(&p, &tpl, &specs).unwrap() else {
            panic!("expected a resolvent");
        };
        let t: Vec<XRat> = r.raw_t.iter().cloned().map(XRat::from_poly).collect();
        assert!(mat_vec(&m, &t).iter().all(XRat::is_zero));
        assert_eq!(
            r.primitive_r,
            vec![XPoly::from_i64s(Q, &[0, 2]), XPoly::from_i64s(Q, &[-1])]
        );
        assert!(apply_lodo(&r.to_lodo(), &p).unwrap().is_zero());
    }
}
