//! JSON file formats for problems, templates, specializations and resolvents.
//!
//! Rationals are strings (`"3"`, `"-1/2"`); polynomials in `x` are ascending arrays of them.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::alpha::{AlphaPoly, AlphaSymbol, Monomial};
use crate::elimination::lodo_to_template;
use crate::error::{Error, Result};
use crate::kernel::{Field, XPoly, XRat};
use crate::powersum::{
    default_specializations, thm83_template, Resolvent, ResolventTemplate, SpecStrategy,
    TemplateEntry,
};
use crate::symmetric::Specialization;
use crate::tower::{Lodo, MonicPoly, ProblemSpec, PseudoTerm};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldDesc {
    /// `"Q"`
    Name(String),
    Prime {
        #[serde(rename = "Fp")]
        fp: u64,
    },
}

impl FieldDesc {
    pub fn to_field(&self) -> Result<Field> {
        match self {
            FieldDesc::Name(n) if n == "Q" => Ok(Field::Rational),
            FieldDesc::Name(n) => Err(Error::Validation(format!(
                "field: expected \"Q\" or {{\"Fp\": p}}, got {n:?}"
            ))),
            FieldDesc::Prime { fp } => Field::prime(*fp),
        }
    }

    pub fn from_field(f: Field) -> Self {
        match f {
            Field::Rational => FieldDesc::Name("Q".into()),
            Field::Prime(p) => FieldDesc::Prime { fp: p },
        }
    }
}

/// An element of `K(x)`: a polynomial, or a numerator/denominator pair.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum CoeffDesc {
    Poly(Vec<String>),
    Frac { num: Vec<String>, den: Vec<String> },
}

fn read_poly(field: Field, cs: &[String], at: &str) -> Result<XPoly> {
    let coeffs = cs
        .iter()
        .enumerate()
        .map(|(k, s)| {
            field.parse(s).map_err(|e| Error::Parse {
                location: format!("{at}[{k}]"),
                message: e.to_string(),
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(XPoly::new(field, coeffs))
}

fn write_poly(p: &XPoly) -> Vec<String> {
    p.coeffs().iter().map(ToString::to_string).collect()
}

impl CoeffDesc {
    pub fn read(&self, field: Field, at: &str) -> Result<XRat> {
        match self {
            CoeffDesc::Poly(cs) => Ok(XRat::from_poly(read_poly(field, cs, at)?)),
            CoeffDesc::Frac { num, den } => {
                let n = read_poly(field, num, &format!("{at}.num"))?;
                let d = read_poly(field, den, &format!("{at}.den"))?;
                XRat::new(n, d).ok_or_else(|| Error::Validation(format!("{at}: zero denominator")))
            }
        }
    }

    pub fn write(v: &XRat) -> Self {
        match v.as_poly() {
            Some(p) => CoeffDesc::Poly(write_poly(p)),
            None => CoeffDesc::Frac {
                num: write_poly(v.num()),
                den: write_poly(v.den()),
            },
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PolyDesc {
    pub id: String,
    /// Ascending in `t`.
    pub coeffs: Vec<CoeffDesc>,
}

fn one_coeff() -> CoeffDesc {
    CoeffDesc::Poly(vec!["1".into()])
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermDesc {
    #[serde(default = "one_coeff")]
    pub coeff: CoeffDesc,
    /// `(polynomial id, exponent symbol)` pairs.
    pub factors: Vec<(String, String)>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PseudoDesc {
    pub alphas: Vec<String>,
    pub terms: Vec<TermDesc>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ProblemFile {
    pub field: FieldDesc,
    pub polynomials: Vec<PolyDesc>,
    pub pseudopolynomial: PseudoDesc,
}

fn json_error(e: serde_json::Error) -> Error {
    Error::Parse {
        location: format!("line {} column {}", e.line(), e.column()),
        message: e.to_string(),
    }
}

fn anchor(at: String) -> impl FnOnce(Error) -> Error {
    move |e| match e {
        Error::Validation(m) => Error::Validation(format!("{at}: {m}")),
        other => other,
    }
}

impl ProblemFile {
    pub fn to_spec(&self) -> Result<ProblemSpec> {
        let field = self.field.to_field()?;
        let mut polys = Vec::new();
        for (i, p) in self.polynomials.iter().enumerate() {
            let at = format!("polynomials[{i}]");
            let coeffs = p
                .coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| c.read(field, &format!("{at}.coeffs[{k}]")))
                .collect::<Result<Vec<_>>>()?;
            polys.push(MonicPoly::new(&p.id, coeffs).map_err(anchor(at))?);
        }
        let mut terms = Vec::new();
        for (j, t) in self.pseudopolynomial.terms.iter().enumerate() {
            let at = format!("pseudopolynomial.terms[{j}]");
            let coeff = t.coeff.read(field, &format!("{at}.coeff"))?;
            let mut exponents = BTreeMap::new();
            for (pid, sym) in &t.factors {
                if exponents
                    .insert(pid.clone(), AlphaSymbol::new(sym))
                    .is_some()
                {
                    return Err(Error::Validation(format!(
                        "{at}: polynomial {pid} appears twice"
                    )));
                }
            }
            terms.push(PseudoTerm { coeff, exponents });
        }
        let alphas = self
            .pseudopolynomial
            .alphas
            .iter()
            .map(|s| AlphaSymbol::new(s))
            .collect();
        ProblemSpec::new(field, polys, terms, alphas)
    }

    pub fn from_spec(p: &ProblemSpec) -> Self {
        ProblemFile {
            field: FieldDesc::from_field(p.field()),
            polynomials: p
                .polynomials()
                .iter()
                .map(|q| PolyDesc {
                    id: q.id().to_string(),
                    coeffs: q.coeffs().iter().map(CoeffDesc::write).collect(),
                })
                .collect(),
            pseudopolynomial: PseudoDesc {
                alphas: p.alphas().iter().map(|a| a.to_string()).collect(),
                terms: p
                    .terms()
                    .iter()
                    .map(|t| TermDesc {
                        coeff: CoeffDesc::write(&t.coeff),
                        factors: t
                            .exponents
                            .iter()
                            .map(|(k, v)| (k.clone(), v.to_string()))
                            .collect(),
                    })
                    .collect(),
            },
        }
    }
}

pub fn parse_problem(text: &str) -> Result<ProblemSpec> {
    let f: ProblemFile = serde_json::from_str(text).map_err(json_error)?;
    f.to_spec()
}

pub fn write_problem(p: &ProblemSpec) -> String {
    to_json(&ProblemFile::from_spec(p))
}

fn to_json<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntryDesc {
    pub order: usize,
    /// Symbol to exponent; empty for the monomial 1.
    #[serde(default)]
    pub monomial: BTreeMap<String, u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Thm83Desc {
    pub degree: usize,
    pub alpha: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TemplateFile {
    Entries { entries: Vec<EntryDesc> },
    Thm83 { thm83: Thm83Desc },
}

fn entry_desc(e: &TemplateEntry) -> EntryDesc {
    EntryDesc {
        order: e.order,
        monomial: e.monomial.iter().map(|(s, k)| (s.to_string(), k)).collect(),
    }
}

fn entry_from_desc(d: &EntryDesc) -> TemplateEntry {
    TemplateEntry {
        order: d.order,
        monomial: Monomial::from_pairs(d.monomial.iter().map(|(s, k)| (AlphaSymbol::new(s), *k))),
    }
}

impl TemplateFile {
    pub fn to_template(&self) -> Result<ResolventTemplate> {
        match self {
            TemplateFile::Entries { entries } => {
                ResolventTemplate::new(entries.iter().map(entry_from_desc).collect())
            }
            TemplateFile::Thm83 { thm83 } => {
                thm83_template(thm83.degree, &AlphaSymbol::new(&thm83.alpha))
            }
        }
    }

    pub fn from_template(t: &ResolventTemplate) -> Self {
        TemplateFile::Entries {
            entries: t.entries().iter().map(entry_desc).collect(),
        }
    }
}

pub fn parse_template(text: &str) -> Result<ResolventTemplate> {
    let f: TemplateFile = serde_json::from_str(text).map_err(json_error)?;
    f.to_template()
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum SpecsFile {
    /// `"grid"`
    Strategy(String),
    List(Vec<BTreeMap<String, u64>>),
}

fn spec_from_map(m: &BTreeMap<String, u64>) -> Specialization {
    Specialization::new(m.iter().map(|(k, v)| (AlphaSymbol::new(k), *v)).collect())
}

fn spec_to_map(s: &Specialization) -> BTreeMap<String, u64> {
    s.values()
        .iter()
        .map(|(k, v)| (k.to_string(), *v))
        .collect()
}

pub fn parse_specs(
    text: &str,
    p: &ProblemSpec,
    tpl: &ResolventTemplate,
) -> Result<Vec<Specialization>> {
    let f: SpecsFile = serde_json::from_str(text).map_err(json_error)?;
    let strategy = match f {
        SpecsFile::Strategy(s) if s == "grid" => SpecStrategy::Grid,
        SpecsFile::Strategy(s) => {
            return Err(Error::Validation(format!(
                "unknown specialization strategy {s:?}"
            )))
        }
        SpecsFile::List(v) => SpecStrategy::Explicit(v.iter().map(spec_from_map).collect()),
    };
    let specs = default_specializations(tpl, p, &strategy);
    for (k, s) in specs.iter().enumerate() {
        s.check_covers(p).map_err(anchor(format!("specs[{k}]")))?;
    }
    Ok(specs)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    IdenticallyZero,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Provenance {
    /// `"powersum"` or `"eliminate"`.
    pub method: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub specializations: Option<Vec<BTreeMap<String, u64>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub orders: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ResolventFile {
    pub status: Status,
    pub field: FieldDesc,
    pub template: Vec<EntryDesc>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub raw_t: Option<Vec<Vec<String>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub content: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub primitive_r: Option<Vec<Vec<String>>>,
    pub provenance: Provenance,
}

impl ResolventFile {
    pub fn powersum(r: &Resolvent, specs: &[Specialization]) -> Self {
        ResolventFile {
            status: Status::Ok,
            field: FieldDesc::from_field(r.field()),
            template: r.template.entries().iter().map(entry_desc).collect(),
            raw_t: Some(r.raw_t.iter().map(write_poly).collect()),
            content: Some(write_poly(&r.content)),
            primitive_r: Some(r.primitive_r.iter().map(write_poly).collect()),
            provenance: Provenance {
                method: "powersum".into(),
                specializations: Some(specs.iter().map(spec_to_map).collect()),
                orders: None,
            },
        }
    }

    pub fn identically_zero(
        field: Field,
        tpl: &ResolventTemplate,
        specs: &[Specialization],
    ) -> Self {
        ResolventFile {
            status: Status::IdenticallyZero,
            field: FieldDesc::from_field(field),
            template: tpl.entries().iter().map(entry_desc).collect(),
            raw_t: None,
            content: None,
            primitive_r: None,
            provenance: Provenance {
                method: "powersum".into(),
                specializations: Some(specs.iter().map(spec_to_map).collect()),
                orders: None,
            },
        }
    }

    /// An eliminated operator; its coefficients must be polynomial in `x`.
    pub fn elimination(r: &Lodo, orders: &[usize]) -> Result<Self> {
        let tpl = lodo_to_template(r)?;
        let coeffs = tpl
            .entries()
            .iter()
            .map(|e| {
                r.coeff(e.order)
                    .coeff(&e.monomial)
                    .as_poly()
                    .map(write_poly)
                    .ok_or_else(|| Error::Validation("operator has rational coefficients".into()))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(ResolventFile {
            status: Status::Ok,
            field: FieldDesc::from_field(r.field()),
            template: tpl.entries().iter().map(entry_desc).collect(),
            raw_t: Some(coeffs.clone()),
            content: Some(vec!["1".into()]),
            primitive_r: Some(coeffs),
            provenance: Provenance {
                method: "eliminate".into(),
                specializations: None,
                orders: Some(orders.to_vec()),
            },
        })
    }

    pub fn template(&self) -> Result<ResolventTemplate> {
        ResolventTemplate::new(self.template.iter().map(entry_from_desc).collect())
    }

    /// `sum_k r_k * monomial_k * D^{m_k}` from the primitive coefficients.
    pub fn to_lodo(&self) -> Result<Lodo> {
        let field = self.field.to_field()?;
        let prims = self
            .primitive_r
            .as_ref()
            .ok_or_else(|| Error::Validation("resolvent file has no coefficients".into()))?;
        if prims.len() != self.template.len() {
            return Err(Error::DimensionMismatch {
                expected: self.template.len(),
                found: prims.len(),
            });
        }
        let mut out = Lodo::zero(field);
        for (k, (e, r)) in self.template.iter().zip(prims).enumerate() {
            let e = entry_from_desc(e);
            let c = XRat::from_poly(read_poly(field, r, &format!("primitive_r[{k}]"))?);
            out.add_term(e.order, &AlphaPoly::term(e.monomial, c));
        }
        Ok(out)
    }

    pub fn to_json(&self) -> String {
        to_json(self)
    }
}

pub fn parse_resolvent(text: &str) -> Result<ResolventFile> {
    serde_json::from_str(text).map_err(json_error)
}
