//! Python bindings for the summability library. Expressions cross the
//! boundary as strings in the same grammar the command line accepts, and
//! every result comes back either as a rendered expression or as a plain
//! dictionary, so the module needs no wrapper types on the Python side.

use std::sync::Arc;

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;
use pyo3::types::PyDict;

use dfield::cli::expr::parse_expression;
use dfield::companion::{
    diagonalize, matrix_delta, solve_polynomial_graded, Matrix, MatrixSystem,
};
use dfield::constants::{constant_generators, is_constant};
use dfield::explattice::exponent_lattice;
use dfield::field::{sigma_apply, FieldElement, NumberFieldCtx, RatFunc, SigmaSpec};
use dfield::solution::{solve_all, HomogeneousPart, SolveOutcome};
use dfield::spread::spread;
use dfield::summability::{delta, is_summable, SummabilityOutcome};
use dfield::Config;

fn to_py(e: dfield::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

/// Builds a number field context from a generator name and the rendered
/// minimal polynomial, for example `("t", "t^2 - 2")`.
fn parse_field(generator: &str, minpoly: &str) -> PyResult<Arc<NumberFieldCtx>> {
    let names = vec![generator.to_string()];
    let parsed = parse_expression(minpoly, &names, None).map_err(to_py)?;
    let poly = parsed
        .as_poly()
        .ok_or_else(|| PyValueError::new_err("minimal polynomial must be a polynomial"))?;
    let mut coeffs = Vec::new();
    for c in poly.as_var_coeffs(0) {
        let value = c
            .as_constant()
            .and_then(|fe| fe.as_rational())
            .ok_or_else(|| PyValueError::new_err("minimal polynomial must have rational coefficients"))?;
        coeffs.push(value);
    }
    NumberFieldCtx::new(coeffs, generator).map_err(to_py)
}

fn parse_scalar(src: &str, field: Option<&Arc<NumberFieldCtx>>) -> PyResult<FieldElement> {
    let value = parse_expression(src, &[], field).map_err(to_py)?;
    value
        .as_constant()
        .ok_or_else(|| PyValueError::new_err(format!("expected a scalar, got `{src}`")))
}

fn field_pair(
    generator: Option<String>,
    minpoly: Option<String>,
) -> PyResult<Option<Arc<NumberFieldCtx>>> {
    match (generator, minpoly) {
        (Some(g), Some(m)) => Ok(Some(parse_field(&g, &m)?)),
        (None, None) => Ok(None),
        _ => Err(PyValueError::new_err("generator and minpoly must be given together")),
    }
}

fn outcome_dict<'py>(
    py: Python<'py>,
    out: &SummabilityOutcome,
    names: &[&str],
) -> PyResult<Bound<'py, PyDict>> {
    let d = PyDict::new(py);
    match out {
        SummabilityOutcome::Summable(w) => {
            d.set_item("status", "summable")?;
            d.set_item("witness", w.render(names))?;
        }
        SummabilityOutcome::NotSummable(ob) => {
            d.set_item("status", "not_summable")?;
            d.set_item("obstruction", ob.to_string())?;
        }
        SummabilityOutcome::Unknown(reason) => {
            d.set_item("status", "unknown")?;
            d.set_item("reason", reason)?;
        }
    }
    Ok(d)
}

/// A rational function field with a scaling automorphism: the i-th variable
/// is sent to its multiplier times itself, scalars stay fixed.
#[pyclass]
struct DifferenceField {
    spec: SigmaSpec,
    names: Vec<String>,
    field: Option<Arc<NumberFieldCtx>>,
    cfg: Config,
}

impl DifferenceField {
    fn name_refs(&self) -> Vec<&str> {
        self.names.iter().map(String::as_str).collect()
    }

    fn parse(&self, src: &str) -> PyResult<RatFunc> {
        parse_expression(src, &self.names, self.field.as_ref()).map_err(to_py)
    }

    fn parse_c(&self, c: Option<&str>) -> PyResult<FieldElement> {
        match c {
            None => Ok(FieldElement::one()),
            Some(src) => {
                let value = parse_scalar(src, self.field.as_ref())?;
                if value.is_zero() {
                    return Err(PyValueError::new_err("multiplier c must be nonzero"));
                }
                Ok(value)
            }
        }
    }
}

#[pymethods]
impl DifferenceField {
    #[new]
    #[pyo3(signature = (lambdas, vars=None, generator=None, minpoly=None, search_bound=None, degree_cap=None))]
    fn new(
        lambdas: Vec<String>,
        vars: Option<Vec<String>>,
        generator: Option<String>,
        minpoly: Option<String>,
        search_bound: Option<u32>,
        degree_cap: Option<u32>,
    ) -> PyResult<Self> {
        let field = field_pair(generator, minpoly)?;
        if lambdas.is_empty() {
            return Err(PyValueError::new_err("at least one multiplier is required"));
        }
        let parsed: Vec<FieldElement> = lambdas
            .iter()
            .map(|s| parse_scalar(s, field.as_ref()))
            .collect::<PyResult<_>>()?;
        let spec = SigmaSpec::new(parsed).map_err(to_py)?;
        let names = match vars {
            Some(v) => {
                if v.len() != spec.nvars() {
                    return Err(PyValueError::new_err("one variable name per multiplier"));
                }
                v
            }
            None => (1..=spec.nvars()).map(|i| format!("a{i}")).collect(),
        };
        let mut cfg = Config::default();
        if let Some(b) = search_bound {
            cfg.search_bound = b;
        }
        if let Some(d) = degree_cap {
            cfg.degree_cap = d;
        }
        Ok(DifferenceField { spec, names, field, cfg })
    }

    #[getter]
    fn nvars(&self) -> usize {
        self.spec.nvars()
    }

    #[getter]
    fn var_names(&self) -> Vec<String> {
        self.names.clone()
    }

    #[getter]
    fn multipliers(&self) -> Vec<String> {
        self.spec.lambdas().iter().map(FieldElement::render).collect()
    }

    fn __repr__(&self) -> String {
        format!(
            "DifferenceField(lambdas=[{}], vars=[{}])",
            self.multipliers().join(", "),
            self.names.join(", ")
        )
    }

    /// Parses an expression and returns its canonical rendering.
    fn normalize(&self, expr: &str) -> PyResult<String> {
        Ok(self.parse(expr)?.render(&self.name_refs()))
    }

    /// Applies the automorphism `k` times (negative `k` inverts it).
    #[pyo3(signature = (expr, k=1))]
    fn sigma(&self, expr: &str, k: i64) -> PyResult<String> {
        let f = self.parse(expr)?;
        Ok(sigma_apply(&f, &self.spec, k).render(&self.name_refs()))
    }

    /// The difference operator `c*sigma(g) - g`.
    #[pyo3(signature = (g, c=None))]
    fn delta(&self, g: &str, c: Option<&str>) -> PyResult<String> {
        let g = self.parse(g)?;
        let c = self.parse_c(c)?;
        Ok(delta(&g, &c, &self.spec).render(&self.name_refs()))
    }

    fn is_constant(&self, expr: &str) -> PyResult<bool> {
        Ok(is_constant(&self.parse(expr)?, &self.spec))
    }

    /// The lattice of integer exponent vectors whose multiplier power
    /// product is one.
    fn exponent_lattice<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let lat = exponent_lattice(self.spec.lambdas(), &self.cfg).map_err(to_py)?;
        let d = PyDict::new(py);
        d.set_item("rank", lat.rank())?;
        d.set_item("basis", lat.basis().to_vec())?;
        d.set_item("exact", lat.is_exact())?;
        Ok(d)
    }

    /// Monomial generators of the field of elements fixed by sigma.
    fn constants<'py>(&self, py: Python<'py>) -> PyResult<Bound<'py, PyDict>> {
        let desc = constant_generators(&self.spec, &self.cfg).map_err(to_py)?;
        let names = self.name_refs();
        let d = PyDict::new(py);
        d.set_item("rank", desc.rank())?;
        d.set_item("exponents", desc.generators().to_vec())?;
        let rendered: Vec<String> =
            (0..desc.rank()).map(|i| desc.generator_ratfunc(i).render(&names)).collect();
        d.set_item("generators", rendered)?;
        d.set_item("exact", desc.is_exact())?;
        Ok(d)
    }

    /// The set of shifts `k` with `sigma^k(p) = u*q` for some scalar `u`,
    /// reported with the scalar at the smallest such shift.
    fn spread<'py>(&self, py: Python<'py>, p: &str, q: &str) -> PyResult<Bound<'py, PyDict>> {
        let pf = self.parse(p)?;
        let qf = self.parse(q)?;
        let (Some(pp), Some(qp)) = (pf.as_poly(), qf.as_poly()) else {
            return Err(PyValueError::new_err("spread arguments must be polynomials"));
        };
        let r = spread(pp, qp, &self.spec, &self.cfg).map_err(to_py)?;
        let d = PyDict::new(py);
        d.set_item("display", r.set.to_string())?;
        use dfield::lattice::Progression;
        match r.set {
            Progression::Empty => d.set_item("kind", "empty")?,
            Progression::Single(k) => {
                d.set_item("kind", "single")?;
                d.set_item("shift", k)?;
            }
            Progression::Arith { offset, step } => {
                d.set_item("kind", "progression")?;
                d.set_item("offset", offset)?;
                d.set_item("step", step)?;
            }
        }
        if let Some(u) = &r.witness_unit {
            d.set_item("unit", u.render())?;
        }
        d.set_item("exact", r.exact)?;
        Ok(d)
    }

    /// Decides `c*sigma(g) - g = f` and returns the decision with either a
    /// verified witness, a named obstruction, or the reason it is open.
    #[pyo3(signature = (f, c=None))]
    fn summability<'py>(
        &self,
        py: Python<'py>,
        f: &str,
        c: Option<&str>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let f = self.parse(f)?;
        let c = self.parse_c(c)?;
        let out = is_summable(&f, &c, &self.spec, &self.cfg).map_err(to_py)?;
        outcome_dict(py, &out, &self.name_refs())
    }

    /// The witness alone, or None when there is no proof of summability.
    #[pyo3(signature = (f, c=None))]
    fn witness(&self, f: &str, c: Option<&str>) -> PyResult<Option<String>> {
        let f = self.parse(f)?;
        let c = self.parse_c(c)?;
        let out = is_summable(&f, &c, &self.spec, &self.cfg).map_err(to_py)?;
        Ok(out.witness().map(|w| w.render(&self.name_refs())))
    }

    /// The full solution set of `c*sigma(g) - g = f`: one particular
    /// solution plus a constant multiple of a fixed monomial when the
    /// homogeneous equation has one.
    #[pyo3(signature = (f, c=None))]
    fn solve_all<'py>(
        &self,
        py: Python<'py>,
        f: &str,
        c: Option<&str>,
    ) -> PyResult<Bound<'py, PyDict>> {
        let f = self.parse(f)?;
        let c = self.parse_c(c)?;
        let names = self.name_refs();
        let d = PyDict::new(py);
        match solve_all(&f, &c, &self.spec, &self.cfg).map_err(to_py)? {
            SolveOutcome::Solved(sol) => {
                d.set_item("status", "solved")?;
                d.set_item("particular", sol.particular.render(&names))?;
                match &sol.homogeneous {
                    HomogeneousPart::Monomial(g) => {
                        d.set_item("homogeneous", g.render(&names))?
                    }
                    HomogeneousPart::OnlyZero => d.set_item("homogeneous", "0")?,
                    HomogeneousPart::Unknown => d.set_item("homogeneous", py.None())?,
                }
                let consts = PyDict::new(py);
                consts.set_item("rank", sol.constants.rank())?;
                let rendered: Vec<String> = (0..sol.constants.rank())
                    .map(|i| sol.constants.generator_ratfunc(i).render(&names))
                    .collect();
                consts.set_item("generators", rendered)?;
                consts.set_item("exact", sol.constants.is_exact())?;
                d.set_item("constants", consts)?;
            }
            SolveOutcome::NotSummable(ob) => {
                d.set_item("status", "not_summable")?;
                d.set_item("obstruction", ob.to_string())?;
            }
            SolveOutcome::Unknown(reason) => {
                d.set_item("status", "unknown")?;
                d.set_item("reason", reason)?;
            }
        }
        Ok(d)
    }
}

/// A first-order matrix system `phi(alpha) = alpha * A`, solved by moving to
/// an eigenbasis where `phi` becomes a scaling automorphism.
#[pyclass]
struct CompanionSystem {
    sys: MatrixSystem,
    names: Vec<String>,
    field: Option<Arc<NumberFieldCtx>>,
    cfg: Config,
}

impl CompanionSystem {
    fn name_refs(&self) -> Vec<&str> {
        self.names.iter().map(String::as_str).collect()
    }

    fn parse(&self, src: &str) -> PyResult<RatFunc> {
        parse_expression(src, &self.names, self.field.as_ref()).map_err(to_py)
    }

    fn parse_c(&self, c: Option<&str>) -> PyResult<FieldElement> {
        match c {
            None => Ok(FieldElement::one()),
            Some(src) => {
                let value = parse_scalar(src, self.field.as_ref())?;
                if value.is_zero() {
                    return Err(PyValueError::new_err("multiplier c must be nonzero"));
                }
                Ok(value)
            }
        }
    }

    fn build(
        sys: MatrixSystem,
        field: Option<Arc<NumberFieldCtx>>,
    ) -> CompanionSystem {
        let names = (1..=sys.dim()).map(|i| format!("a{i}")).collect();
        CompanionSystem { sys, names, field, cfg: Config::default() }
    }
}

#[pymethods]
impl CompanionSystem {
    /// Builds the companion system of the recurrence
    /// `t(m+n) = u1*t(m+n-1) + ... + un*t(m)`.
    #[new]
    #[pyo3(signature = (coefficients, generator=None, minpoly=None))]
    fn new(
        coefficients: Vec<String>,
        generator: Option<String>,
        minpoly: Option<String>,
    ) -> PyResult<Self> {
        let field = field_pair(generator, minpoly)?;
        let u: Vec<FieldElement> = coefficients
            .iter()
            .map(|s| parse_scalar(s, field.as_ref()))
            .collect::<PyResult<_>>()?;
        let sys = MatrixSystem::companion(u).map_err(to_py)?;
        Ok(CompanionSystem::build(sys, field))
    }

    /// Builds the system for an arbitrary square matrix given by rows.
    #[staticmethod]
    #[pyo3(signature = (rows, generator=None, minpoly=None))]
    fn from_matrix(
        rows: Vec<Vec<String>>,
        generator: Option<String>,
        minpoly: Option<String>,
    ) -> PyResult<Self> {
        let field = field_pair(generator, minpoly)?;
        let n = rows.len();
        let mut data = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(PyValueError::new_err("matrix must be square"));
            }
            for entry in row {
                data.push(parse_scalar(entry, field.as_ref())?);
            }
        }
        let sys = MatrixSystem::general(Matrix::new(n, data)).map_err(to_py)?;
        Ok(CompanionSystem::build(sys, field))
    }

    #[getter]
    fn dim(&self) -> usize {
        self.sys.dim()
    }

    #[getter]
    fn var_names(&self) -> Vec<String> {
        self.names.clone()
    }

    fn __repr__(&self) -> String {
        format!("CompanionSystem(dim={})", self.sys.dim())
    }

    /// Eigenvalues of the system matrix, over the extension when one was
    /// supplied; raises when the characteristic polynomial does not split.
    fn eigenvalues(&self) -> PyResult<Vec<String>> {
        let diag = diagonalize(&self.sys, self.field.as_ref()).map_err(to_py)?;
        Ok(diag.eigenvalues.iter().map(FieldElement::render).collect())
    }

    /// The matrix difference operator `c*phi(g) - g`.
    #[pyo3(signature = (g, c=None))]
    fn delta(&self, g: &str, c: Option<&str>) -> PyResult<String> {
        let g = self.parse(g)?;
        let c = self.parse_c(c)?;
        Ok(matrix_delta(&self.sys, &g, &c).render(&self.name_refs()))
    }

    /// A polynomial witness found degree by degree without leaving the
    /// coefficient field, or None when some graded piece has no solution.
    #[pyo3(signature = (f, c=None))]
    fn witness_polynomial(&self, f: &str, c: Option<&str>) -> PyResult<Option<String>> {
        let f = self.parse(f)?;
        let c = self.parse_c(c)?;
        let Some(p) = f.as_poly() else {
            return Err(PyValueError::new_err("the graded solver needs a polynomial"));
        };
        Ok(solve_polynomial_graded(&self.sys, p, &c)
            .map(|g| RatFunc::from_poly(g).render(&self.name_refs())))
    }

    /// Decides `c*phi(g) - g = f` through the eigenbasis and returns the
    /// decision in the original coordinates.
    #[pyo3(signature = (f, c=None))]
    fn solve<'py>(&self, py: Python<'py>, f: &str, c: Option<&str>) -> PyResult<Bound<'py, PyDict>> {
        let f = self.parse(f)?;
        let c = self.parse_c(c)?;
        let out = dfield::companion::transport_solve(&self.sys, &f, &c, self.field.as_ref(), &self.cfg)
            .map_err(to_py)?;
        outcome_dict(py, &out, &self.name_refs())
    }
}

#[pymodule]
fn dfield_py(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("__version__", env!("CARGO_PKG_VERSION"))?;
    m.add_class::<DifferenceField>()?;
    m.add_class::<CompanionSystem>()?;
    Ok(())
}
