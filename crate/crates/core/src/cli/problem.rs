//! Problem files: a plain `key: value` text format describing one
//! difference-field instance.
//!
//! ```text
//! # comments run to the end of the line
//! field: rational              # default; "extension" needs the next two
//! generator: t
//! minpoly: t^2 - t - 1
//! vars: a1, a2, a3             # defaults to a1..an
//! lambda: -1, 1/2, -4          # scaling multipliers, or instead:
//! matrix: 0, 0, 1; 1, 0, 1; 0, 1, 1
//! c: 1
//! f: 1/(a1 - 1)
//! p: a2^2*a3 + a2*a3 + 1       # spread inputs, polynomials
//! q: a2^2*a3 + 1/8*a2*a3 + 1
//! bound: 10                    # optional search bound
//! degree-cap: 12               # optional factorization degree cap
//! ```
//!
//! Exactly one of `lambda`/`matrix` must be present.  All expressions use
//! the grammar from [`super::expr`]; list entries are comma-separated and
//! matrix rows are semicolon-separated.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::cli::expr::parse_expression;
use crate::companion::Matrix;
use crate::field::{FieldElement, NumberFieldCtx};
use crate::field::MultiPoly;
use crate::field::RatFunc;
use crate::field::SigmaSpec;
use crate::{Config, Error, Result};

/// The dynamical system a problem runs under.
#[derive(Clone, Debug)]
pub enum SystemDecl {
    /// Scaling multipliers for `sigma(a_i) = lambda_i * a_i`.
    Multipliers(Vec<FieldElement>),
    /// A square matrix acting on the variables by substitution.
    MatrixAction(Matrix),
}

/// One parsed problem file.
#[derive(Clone, Debug)]
pub struct ProblemSpec {
    /// Number-field context when the coefficient field is an extension.
    pub field: Option<Arc<NumberFieldCtx>>,
    /// Variable names in declaration order (first = highest in graded-lex).
    pub vars: Vec<String>,
    pub system: SystemDecl,
    /// The multiplier in `c*sigma(g) - g = f`; defaults to 1.
    pub c: FieldElement,
    pub f: Option<RatFunc>,
    pub p: Option<MultiPoly>,
    pub q: Option<MultiPoly>,
    pub bound: Option<u32>,
    pub degree_cap: Option<u32>,
}

impl ProblemSpec {
    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn var_names(&self) -> Vec<&str> {
        self.vars.iter().map(String::as_str).collect()
    }

    /// The scaling automorphism, for problems declared via `lambda`.
    pub fn sigma(&self) -> Result<SigmaSpec> {
        match &self.system {
            SystemDecl::Multipliers(l) => SigmaSpec::new(l.clone()),
            SystemDecl::MatrixAction(_) => {
                Err(Error::Invalid("this command needs `lambda`, not `matrix`".into()))
            }
        }
    }

    pub fn multipliers(&self) -> Result<&[FieldElement]> {
        match &self.system {
            SystemDecl::Multipliers(l) => Ok(l),
            SystemDecl::MatrixAction(_) => {
                Err(Error::Invalid("this command needs `lambda`, not `matrix`".into()))
            }
        }
    }

    pub fn matrix(&self) -> Result<&Matrix> {
        match &self.system {
            SystemDecl::MatrixAction(a) => Ok(a),
            SystemDecl::Multipliers(_) => {
                Err(Error::Invalid("this command needs `matrix`, not `lambda`".into()))
            }
        }
    }

    pub fn require_f(&self) -> Result<&RatFunc> {
        self.f.as_ref().ok_or_else(|| Error::Invalid("problem file needs `f:`".into()))
    }

    /// Merges file-level options with command-line overrides.
    pub fn config(&self, bound: Option<u32>, degree_cap: Option<u32>) -> Config {
        let mut cfg = Config::default();
        if let Some(b) = bound.or(self.bound) {
            cfg.search_bound = b;
        }
        if let Some(d) = degree_cap.or(self.degree_cap) {
            cfg.degree_cap = d;
        }
        cfg
    }
}

fn keyed(key: &str, e: Error) -> Error {
    match e {
        Error::Parse { offset, message } => {
            Error::Parse { offset, message: format!("in `{key}`: {message}") }
        }
        other => other,
    }
}

fn parse_u32(key: &str, value: &str) -> Result<u32> {
    value
        .trim()
        .parse()
        .map_err(|_| Error::Invalid(format!("`{key}` expects a nonnegative integer")))
}

/// Parses an expression that must denote a coefficient-field constant.
fn parse_scalar(key: &str, src: &str, field: Option<&Arc<NumberFieldCtx>>) -> Result<FieldElement> {
    let f = parse_expression(src, &[], field).map_err(|e| keyed(key, e))?;
    f.as_constant().ok_or_else(|| Error::Invalid(format!("`{key}` must be constant")))
}

fn parse_poly(
    key: &str,
    src: &str,
    vars: &[String],
    field: Option<&Arc<NumberFieldCtx>>,
) -> Result<MultiPoly> {
    let f = parse_expression(src, vars, field).map_err(|e| keyed(key, e))?;
    f.as_poly()
        .cloned()
        .ok_or_else(|| Error::Invalid(format!("`{key}` must be a polynomial")))
}

/// Parses problem text into a validated [`ProblemSpec`].
pub fn parse_problem(text: &str) -> Result<ProblemSpec> {
    let mut entries: BTreeMap<String, String> = BTreeMap::new();
    for raw in text.lines() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((key, value)) = line.split_once(':') else {
            return Err(Error::Invalid(format!("expected `key: value`, got `{line}`")));
        };
        let key = key.trim().to_string();
        if entries.insert(key.clone(), value.trim().to_string()).is_some() {
            return Err(Error::Invalid(format!("duplicate key `{key}`")));
        }
    }

    const KNOWN: &[&str] = &[
        "field", "generator", "minpoly", "vars", "lambda", "matrix", "c", "f", "p", "q", "bound",
        "degree-cap",
    ];
    for key in entries.keys() {
        if !KNOWN.contains(&key.as_str()) {
            return Err(Error::Invalid(format!("unknown key `{key}`")));
        }
    }

    let field = match entries.get("field").map(String::as_str).unwrap_or("rational") {
        "rational" => {
            if entries.contains_key("generator") || entries.contains_key("minpoly") {
                return Err(Error::Invalid(
                    "`generator`/`minpoly` require `field: extension`".into(),
                ));
            }
            None
        }
        "extension" => {
            let gen = entries
                .get("generator")
                .ok_or_else(|| Error::Invalid("`field: extension` needs `generator:`".into()))?
                .clone();
            let src = entries
                .get("minpoly")
                .ok_or_else(|| Error::Invalid("`field: extension` needs `minpoly:`".into()))?;
            let poly = parse_poly("minpoly", src, std::slice::from_ref(&gen), None)?;
            let coeffs = poly
                .as_var_coeffs(0)
                .into_iter()
                .map(|c| {
                    c.as_constant()
                        .and_then(|e| e.as_rational())
                        .expect("univariate polynomial over the rationals")
                })
                .collect();
            Some(NumberFieldCtx::new(coeffs, &gen)?)
        }
        other => {
            return Err(Error::Invalid(format!(
                "`field` must be `rational` or `extension`, got `{other}`"
            )));
        }
    };

    let system = match (entries.get("lambda"), entries.get("matrix")) {
        (Some(_), Some(_)) => {
            return Err(Error::Invalid("give exactly one of `lambda` or `matrix`".into()));
        }
        (None, None) => {
            return Err(Error::Invalid("problem file needs `lambda:` or `matrix:`".into()));
        }
        (Some(list), None) => {
            let lambdas = list
                .split(',')
                .map(|s| parse_scalar("lambda", s, field.as_ref()))
                .collect::<Result<Vec<_>>>()?;
            if lambdas.iter().any(FieldElement::is_zero) {
                return Err(Error::ZeroMultiplier);
            }
            SystemDecl::Multipliers(lambdas)
        }
        (None, Some(rows_src)) => {
            let rows = rows_src
                .split(';')
                .map(|row| {
                    row.split(',')
                        .map(|s| parse_scalar("matrix", s, field.as_ref()))
                        .collect::<Result<Vec<_>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            let n = rows.len();
            if rows.iter().any(|r| r.len() != n) {
                return Err(Error::Invalid(format!("`matrix` must be square, got {n} rows")));
            }
            SystemDecl::MatrixAction(Matrix::new(n, rows.into_iter().flatten().collect()))
        }
    };

    let nvars = match &system {
        SystemDecl::Multipliers(l) => l.len(),
        SystemDecl::MatrixAction(a) => a.dim(),
    };
    let vars: Vec<String> = match entries.get("vars") {
        Some(list) => list.split(',').map(|s| s.trim().to_string()).collect(),
        None => (1..=nvars).map(|i| format!("a{i}")).collect(),
    };
    if vars.len() != nvars {
        return Err(Error::Invalid(format!(
            "{} variables declared but the system has {nvars}",
            vars.len()
        )));
    }
    for (i, v) in vars.iter().enumerate() {
        let ok = !v.is_empty()
            && v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
            && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(Error::Invalid(format!("`{v}` is not a valid variable name")));
        }
        if vars[..i].contains(v) {
            return Err(Error::Invalid(format!("duplicate variable `{v}`")));
        }
        if field.as_ref().is_some_and(|ctx| ctx.generator() == v) {
            return Err(Error::Invalid(format!("`{v}` is already the field generator")));
        }
    }

    let c = match entries.get("c") {
        Some(src) => {
            let c = parse_scalar("c", src, field.as_ref())?;
            if c.is_zero() {
                return Err(Error::Invalid("`c` must be nonzero".into()));
            }
            c
        }
        None => FieldElement::one(),
    };

    let f = entries
        .get("f")
        .map(|src| parse_expression(src, &vars, field.as_ref()).map_err(|e| keyed("f", e)))
        .transpose()?;
    let p = entries.get("p").map(|src| parse_poly("p", src, &vars, field.as_ref())).transpose()?;
    let q = entries.get("q").map(|src| parse_poly("q", src, &vars, field.as_ref())).transpose()?;
    let bound = entries.get("bound").map(|v| parse_u32("bound", v)).transpose()?;
    let degree_cap =
        entries.get("degree-cap").map(|v| parse_u32("degree-cap", v)).transpose()?;

    Ok(ProblemSpec { field, vars, system, c, f, p, q, bound, degree_cap })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn minimal_lambda_problem() {
        let spec = parse_problem("lambda: -1, 1/2, -4\n").unwrap();
        assert_eq!(spec.vars, vec!["a1", "a2", "a3"]);
        assert!(spec.c.is_one());
        let lambdas = spec.multipliers().unwrap();
        assert_eq!(lambdas[1], FieldElement::from_fraction(1, 2));
        assert!(spec.sigma().is_ok());
        assert!(spec.f.is_none());
    }

    #[test]
    fn full_problem_with_comments_and_options() {
        let text = "\
# q-difference instance
vars: x, y
lambda: 2, 3      # scaling factors
c: -1/2
f: 1/(x - 1) + y^2
bound: 25
degree-cap: 9
";
        let spec = parse_problem(text).unwrap();
        assert_eq!(spec.vars, vec!["x", "y"]);
        assert_eq!(spec.c, FieldElement::from_fraction(-1, 2));
        let f = spec.require_f().unwrap();
        assert_eq!(f.nvars(), 2);
        let cfg = spec.config(None, Some(4));
        assert_eq!(cfg.search_bound, 25);
        assert_eq!(cfg.degree_cap, 4);
    }

    #[test]
    fn matrix_rows_are_semicolon_separated() {
        let spec = parse_problem("matrix: 0, 0, 1; 1, 0, 1; 0, 1, 1\nf: a1\n").unwrap();
        let a = spec.matrix().unwrap();
        assert_eq!(a.dim(), 3);
        assert!(a.at(0, 2).is_one());
        assert!(a.at(0, 0).is_zero());
        assert!(spec.multipliers().is_err());
    }

    #[test]
    fn extension_field_declaration() {
        let text = "\
field: extension
generator: t
minpoly: t^2 - t - 1
lambda: t, 1 - t
f: a1
";
        let spec = parse_problem(text).unwrap();
        let ctx = spec.field.as_ref().unwrap();
        assert_eq!(ctx.generator(), "t");
        assert_eq!(ctx.degree(), 2);
        let lambdas = spec.multipliers().unwrap();
        let t = FieldElement::generator(ctx);
        assert_eq!(lambdas[0], t);
        assert_eq!(lambdas[1], &FieldElement::one() - &t);
    }

    #[test]
    fn rejects_malformed_input() {
        assert!(matches!(parse_problem("lambda 2\n"), Err(Error::Invalid(_))));
        assert!(matches!(parse_problem("lambda: 2\nlambda: 3\n"), Err(Error::Invalid(_))));
        assert!(matches!(parse_problem("lambda: 2\nmatrix: 2\n"), Err(Error::Invalid(_))));
        assert!(matches!(parse_problem("c: 1\n"), Err(Error::Invalid(_))));
        assert!(matches!(parse_problem("lambda: 2\nspread: 1\n"), Err(Error::Invalid(_))));
        assert!(matches!(parse_problem("lambda: 2, 3\nvars: x\n"), Err(Error::Invalid(_))));
        assert!(matches!(parse_problem("lambda: 2\nvars: x\nf: y\n"), Err(Error::Parse { .. })));
        assert!(matches!(parse_problem("lambda: 0\n"), Err(Error::ZeroMultiplier)));
        assert!(matches!(parse_problem("lambda: 2\nc: 0\n"), Err(Error::Invalid(_))));
        assert!(matches!(parse_problem("matrix: 1, 2; 3\n"), Err(Error::Invalid(_))));
        assert!(matches!(parse_problem("lambda: 2\nvars: 1x\n"), Err(Error::Invalid(_))));
    }

    #[test]
    fn spread_inputs_must_be_polynomials() {
        let ok = parse_problem("lambda: 2\np: a1^2 - 1\nq: a1 + 1\n").unwrap();
        assert_eq!(ok.p.unwrap().total_degree(), Some(2));
        assert_eq!(ok.q.unwrap().total_degree(), Some(1));
        let bad = parse_problem("lambda: 2\np: 1/a1\n");
        assert!(matches!(bad, Err(Error::Invalid(_))));
    }
}
