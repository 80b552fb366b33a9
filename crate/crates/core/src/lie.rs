//! Structure constants, the frame families of unimodular Lorentzian Lie
//! algebras, validation (Jacobi, unimodularity) and the algebra-type tables.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::{parse_poly, rational, Polynomial, Rational, Scalar, VarList};
use crate::tensor::{self, Metric, Signature, Tensor, Variance};

/// `c^k_ij` with `[E_i, E_j] = c^k_ij E_k`, stored at `[i, j, k]`.
#[derive(Clone, Debug, PartialEq)]
pub struct StructureConstants<S> {
    c: Tensor<S>,
}

const SC_VARIANCE: [Variance; 3] = [Variance::Co, Variance::Co, Variance::Contra];

impl<S: Scalar> StructureConstants<S> {
    pub fn zero(dim: usize) -> Self {
        StructureConstants {
            c: Tensor::zeros(dim, &SC_VARIANCE),
        }
    }

    pub fn dim(&self) -> usize {
        self.c.dim()
    }

    /// Sets `c^k_ij` and `c^k_ji = -c^k_ij` together. Indices are 0-based.
    pub fn set(&mut self, i: usize, j: usize, k: usize, value: S) {
        if i == j {
            assert!(value.is_zero(), "c^k_ii must vanish");
            return;
        }
        self.c.set(&[j, i, k], value.negated());
        self.c.set(&[i, j, k], value);
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &S {
        self.c.get(&[i, j, k])
    }

    pub fn tensor(&self) -> &Tensor<S> {
        &self.c
    }

    /// Components of `[E_i, E_j]`.
    pub fn bracket(&self, i: usize, j: usize) -> Vec<S> {
        (0..self.dim()).map(|k| self.get(i, j, k).clone()).collect()
    }

    /// `[X, Y]` for arbitrary component vectors.
    pub fn bracket_of(&self, x: &[S], y: &[S]) -> Vec<S> {
        let n = self.dim();
        (0..n)
            .map(|k| {
                let mut acc = S::zero();
                for i in 0..n {
                    for j in 0..n {
                        let c = self.get(i, j, k);
                        if !c.is_zero() && !x[i].is_zero() && !y[j].is_zero() {
                            acc = acc.plus(&c.times(&x[i]).times(&y[j]));
                        }
                    }
                }
                acc
            })
            .collect()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> StructureConstants<T> {
        StructureConstants { c: self.c.map(f) }
    }

    /// `Σ_k c^k_jk` for each generator `e_j`: the trace of `ad_{e_j}`.
    pub fn traces(&self) -> Vec<S> {
        let n = self.dim();
        (0..n)
            .map(|j| (0..n).fold(S::zero(), |acc, k| acc.plus(self.get(j, k, k))))
            .collect()
    }

    /// Killing form `K_ij = c^k_il c^l_jk`.
    pub fn killing_form(&self) -> Vec<Vec<S>> {
        let n = self.dim();
        (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let mut acc = S::zero();
                        for k in 0..n {
                            for l in 0..n {
                                acc = acc.plus(&self.get(i, l, k).times(self.get(j, k, l)));
                            }
                        }
                        acc
                    })
                    .collect()
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JacobiViolation {
    /// 1-based generator indices.
    pub triple: (usize, usize, usize),
    pub residual: Vec<String>,
}

/// Cyclic sums `[[E_i,E_j],E_k] + [[E_j,E_k],E_i] + [[E_k,E_i],E_j]` that fail to vanish.
pub fn validate_jacobi<S: Scalar + fmt::Display>(sc: &StructureConstants<S>) -> Vec<JacobiViolation> {
    let n = sc.dim();
    let unit = |i: usize| -> Vec<S> { (0..n).map(|t| if t == i { S::one() } else { S::zero() }).collect() };
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let terms = [
                    sc.bracket_of(&sc.bracket(i, j), &unit(k)),
                    sc.bracket_of(&sc.bracket(j, k), &unit(i)),
                    sc.bracket_of(&sc.bracket(k, i), &unit(j)),
                ];
                let sum: Vec<S> = (0..n)
                    .map(|m| terms.iter().fold(S::zero(), |acc, t| acc.plus(&t[m])))
                    .collect();
                if sum.iter().any(|v| !v.is_zero()) {
                    out.push(JacobiViolation {
                        triple: (i + 1, j + 1, k + 1),
                        residual: sum.iter().map(|v| v.to_string()).collect(),
                    });
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Unimodularity {
    /// `trace(ad_{e_j})`, canonical text.
    pub traces: Vec<String>,
    pub unimodular: bool,
    /// Set when some trace is a nonconstant polynomial: the conditions under
    /// which the algebra would be unimodular.
    pub only_if: Vec<String>,
}

pub fn is_unimodular(sc: &StructureConstants<Polynomial>) -> Unimodularity {
    let traces = sc.traces();
    let unimodular = traces.iter().all(Polynomial::is_zero);
    let only_if = traces
        .iter()
        .filter(|t| !t.is_zero() && !t.is_constant())
        .map(|t| format!("{} = 0", t.normalize().0))
        .collect();
    Unimodularity {
        traces: traces.iter().map(|t| t.to_string()).collect(),
        unimodular,
        only_if,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum FamilyId {
    A1,
    A2,
    A3,
    A4,
    #[serde(rename = "A4-variant")]
    A4Variant,
}

impl FamilyId {
    pub const ALL: [FamilyId; 5] = [FamilyId::A1, FamilyId::A2, FamilyId::A3, FamilyId::A4, FamilyId::A4Variant];

    pub fn params(self) -> &'static [&'static str] {
        match self {
            FamilyId::A1 => &["l1", "l2", "l3"],
            FamilyId::A2 => &["l1", "l2"],
            FamilyId::A3 => &["l"],
            FamilyId::A4 | FamilyId::A4Variant => &["a", "b", "l3"],
        }
    }

    /// 1-based index of the timelike frame vector.
    pub fn timelike_index(self) -> usize {
        match self {
            FamilyId::A1 | FamilyId::A4 | FamilyId::A4Variant => 1,
            FamilyId::A2 | FamilyId::A3 => 3,
        }
    }

    pub fn vars(self) -> VarList {
        VarList::new(self.params())
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            FamilyId::A1 => "A1",
            FamilyId::A2 => "A2",
            FamilyId::A3 => "A3",
            FamilyId::A4 => "A4",
            FamilyId::A4Variant => "A4-variant",
        })
    }
}

impl FromStr for FamilyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A1" => Ok(FamilyId::A1),
            "A2" => Ok(FamilyId::A2),
            "A3" => Ok(FamilyId::A3),
            "A4" => Ok(FamilyId::A4),
            "A4-VARIANT" | "A4V" | "A4_VARIANT" => Ok(FamilyId::A4Variant),
            _ => Err(Error::input(format!("unknown family {s:?} (expected A1, A2, A3, A4 or A4-variant)"))),
        }
    }
}

/// Structure constants plus frame metric over a shared parameter list.
#[derive(Clone, Debug, PartialEq)]
pub struct MetricLieAlgebra<S> {
    pub sc: StructureConstants<S>,
    pub metric: Metric<S>,
    pub params: VarList,
    pub label: String,
}

impl<S: Scalar> MetricLieAlgebra<S> {
    pub fn dim(&self) -> usize {
        self.sc.dim()
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> MetricLieAlgebra<T> {
        MetricLieAlgebra {
            sc: self.sc.map(&f),
            metric: self.metric.map(&f),
            params: self.params.clone(),
            label: self.label.clone(),
        }
    }
}

impl MetricLieAlgebra<Polynomial> {
    /// Re-expresses every entry over `vars`, which must contain the current parameters.
    pub fn with_vars(&self, vars: &VarList) -> Result<Self> {
        let align = |p: &Polynomial| p.align(vars);
        let sc = StructureConstants {
            c: self.sc.c.try_map(align)?,
        };
        let g = self.metric.tensor().try_map(align)?;
        Ok(MetricLieAlgebra {
            sc,
            metric: Metric::new(g)?,
            params: vars.clone(),
            label: self.label.clone(),
        })
    }

    /// Numeric instance at `point` (one value per parameter, in order).
    pub fn eval_f64(&self, point: &[f64]) -> Result<MetricLieAlgebra<f64>> {
        let f = |p: &Polynomial| -> Result<f64> {
            if p.vars().len() == point.len() || p.is_constant() {
                Ok(if p.is_constant() { rational::to_f64(&p.constant_term()) } else { p.eval_f64(point) })
            } else {
                Err(Error::input("point length does not match the parameter list"))
            }
        };
        let sc = StructureConstants { c: self.sc.c.try_map(f)? };
        let g = self.metric.tensor().try_map(f)?;
        Ok(MetricLieAlgebra {
            sc,
            metric: Metric::new(g)?,
            params: self.params.clone(),
            label: self.label.clone(),
        })
    }

    /// True when no entry depends on a parameter.
    pub fn is_numeric(&self) -> bool {
        self.sc.c.entries().iter().chain(self.metric.tensor().entries()).all(Polynomial::is_constant)
    }
}

/// Catalog family with its parameters; unbound parameters stay symbolic.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilySpec {
    pub id: FamilyId,
    pub bindings: BTreeMap<String, Rational>,
}

impl FamilySpec {
    pub fn symbolic(id: FamilyId) -> Self {
        FamilySpec {
            id,
            bindings: BTreeMap::new(),
        }
    }

    pub fn numeric(id: FamilyId, values: &[Rational]) -> Result<Self> {
        if values.len() != id.params().len() {
            return Err(Error::input(format!("{id} takes {} parameters", id.params().len())));
        }
        Ok(FamilySpec {
            id,
            bindings: id.params().iter().map(|s| s.to_string()).zip(values.iter().cloned()).collect(),
        })
    }

    /// Parses `"l1=1,l2=-1/2"`.
    pub fn parse(id: FamilyId, text: &str) -> Result<Self> {
        let mut bindings = BTreeMap::new();
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            let (name, value) = part
                .split_once('=')
                .ok_or_else(|| Error::input(format!("expected name=value, got {part:?}")))?;
            let name = name.trim();
            if !id.params().contains(&name) {
                return Err(Error::input(format!(
                    "{id} has no parameter {name:?} (parameters: {})",
                    id.params().join(", ")
                )));
            }
            if bindings.insert(name.to_string(), rational::parse_rational(value)?).is_some() {
                return Err(Error::input(format!("parameter {name:?} bound twice")));
            }
        }
        Ok(FamilySpec { id, bindings })
    }

    pub fn is_fully_numeric(&self) -> bool {
        self.id.params().iter().all(|p| self.bindings.contains_key(*p))
    }

    fn value(&self, name: &str) -> Option<&Rational> {
        self.bindings.get(name)
    }
}

/// Builds the frame algebra of a catalog family.
pub fn build_family(spec: &FamilySpec) -> Result<MetricLieAlgebra<Polynomial>> {
    let id = spec.id;
    if matches!(id, FamilyId::A4 | FamilyId::A4Variant) && spec.value("b").is_some_and(Zero::is_zero) {
        return Err(Error::input(format!("{id} requires b != 0")));
    }
    let vars = id.vars();
    let p = |name: &str| -> Polynomial {
        match spec.value(name) {
            Some(v) => Polynomial::constant(&vars, v.clone()),
            None => Polynomial::var(&vars, name).expect("family parameter"),
        }
    };
    let k = |n: i64| Polynomial::constant(&vars, rational::int(n));
    let mut sc = StructureConstants::zero(3);
    let diag: [i64; 3] = match id {
        FamilyId::A1 => {
            sc.set(1, 2, 0, p("l1"));
            sc.set(0, 2, 1, p("l2").neg());
            sc.set(0, 1, 2, p("l3"));
            [-1, 1, 1]
        }
        FamilyId::A2 => {
            sc.set(0, 1, 1, k(-1));
            sc.set(0, 1, 2, k(1).sub(&p("l2")));
            sc.set(0, 2, 1, k(1).add(&p("l2")).neg());
            sc.set(0, 2, 2, k(1));
            sc.set(1, 2, 0, p("l1"));
            [1, 1, -1]
        }
        FamilyId::A3 => {
            let l = p("l");
            sc.set(0, 1, 0, k(1));
            sc.set(0, 1, 2, l.neg());
            sc.set(0, 2, 0, k(-1));
            sc.set(0, 2, 1, l.neg());
            sc.set(1, 2, 0, l);
            sc.set(1, 2, 1, k(1));
            sc.set(1, 2, 2, k(1));
            [1, 1, -1]
        }
        FamilyId::A4 | FamilyId::A4Variant => {
            let slot = if id == FamilyId::A4 { 1 } else { 2 };
            sc.set(0, 1, slot, p("l3"));
            sc.set(0, 2, 0, p("b").neg());
            sc.set(0, 2, 1, p("a").neg());
            sc.set(1, 2, 0, p("a").neg());
            sc.set(1, 2, 1, p("b"));
            [-1, 1, 1]
        }
    };
    let metric = Metric::diagonal(&diag.map(k))?;
    let bound: Vec<String> = spec
        .bindings
        .iter()
        .map(|(n, v)| format!("{n}={}", rational::format_rational(v)))
        .collect();
    let label = if bound.is_empty() { id.to_string() } else { format!("{id}({})", bound.join(",")) };
    Ok(MetricLieAlgebra {
        sc,
        metric,
        params: vars,
        label,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum LieAlgebraType {
    #[serde(rename = "su(2)")]
    Su2,
    #[serde(rename = "sl(2,R)")]
    Sl2R,
    #[serde(rename = "e(2)")]
    E2,
    #[serde(rename = "e(1,1)")]
    E11,
    #[serde(rename = "h")]
    Heisenberg,
    #[serde(rename = "R^3")]
    Abelian,
}

impl fmt::Display for LieAlgebraType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LieAlgebraType::Su2 => "su(2)",
            LieAlgebraType::Sl2R => "sl(2,R)",
            LieAlgebraType::E2 => "e(2)",
            LieAlgebraType::E11 => "e(1,1)",
            LieAlgebraType::Heisenberg => "h",
            LieAlgebraType::Abelian => "R^3",
        })
    }
}

/// Table lookup by the printed conditions on the structure constants.
///
/// For A1 the sign triple is normalized up to permutation and an overall sign flip.
pub fn classify_type(spec: &FamilySpec) -> Result<LieAlgebraType> {
    if !spec.is_fully_numeric() {
        return Err(Error::input("classification needs numeric values for every parameter"));
    }
    let v = |n: &str| spec.value(n).expect("numeric");
    let nz = |n: &str| !v(n).is_zero();
    use LieAlgebraType::*;
    Ok(match spec.id {
        FamilyId::A1 => {
            let signs = ["l1", "l2", "l3"].map(|n| v(n).signum());
            let pos = signs.iter().filter(|s| s.is_positive()).count();
            let neg = signs.iter().filter(|s| s.is_negative()).count();
            let (pos, neg) = if neg > pos { (neg, pos) } else { (pos, neg) };
            match (pos, neg) {
                (3, 0) => Su2,
                (2, 1) => Sl2R,
                (2, 0) => E2,
                (1, 1) => E11,
                (1, 0) => Heisenberg,
                _ => Abelian,
            }
        }
        FamilyId::A2 => match (nz("l1"), nz("l2")) {
            (true, true) => Sl2R,
            (false, false) => Heisenberg,
            _ => E11,
        },
        FamilyId::A3 => {
            if nz("l") {
                Sl2R
            } else {
                E11
            }
        }
        FamilyId::A4 | FamilyId::A4Variant => {
            if nz("l3") {
                Sl2R
            } else {
                E11
            }
        }
    })
}

/// Classification from the bracket alone: dimension of the derived algebra and
/// the inertia of the Killing form. `None` for algebras outside the unimodular list.
/// Entries must be constants.
pub fn structural_type(sc: &StructureConstants<Polynomial>) -> Option<LieAlgebraType> {
    let n = sc.dim();
    let constant = |p: &Polynomial| p.as_constant();
    let rows: Vec<Vec<Rational>> = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .map(|(i, j)| sc.bracket(i, j).iter().map(constant).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let derived = rank(rows);
    let killing: Vec<Vec<Rational>> = sc
        .killing_form()
        .iter()
        .map(|row| row.iter().map(constant).collect::<Option<Vec<_>>>())
        .collect::<Option<_>>()?;
    let Signature { positive, negative, .. } = tensor::inertia(&killing);
    use LieAlgebraType::*;
    match (derived, positive, negative) {
        (0, _, _) => Some(Abelian),
        (1, 0, 0) => Some(Heisenberg),
        (2, 0, n) if n > 0 => Some(E2),
        (2, p, 0) if p > 0 => Some(E11),
        (3, 0, _) | (3, _, 0) if positive + negative == 3 => Some(Su2),
        (3, p, n) if p > 0 && n > 0 => Some(Sl2R),
        _ => None,
    }
}

/// Rank by Gaussian elimination over the rationals.
pub fn rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let ncols = rows.first().map_or(0, Vec::len);
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let pivot = rows[r][col].clone();
        for i in 0..rows.len() {
            if i != r && !rows[i][col].is_zero() {
                let f = &rows[i][col] / &pivot;
                for c in col..ncols {
                    let v = &f * &rows[r][c];
                    rows[i][c] -= v;
                }
            }
        }
        r += 1;
    }
    r
}

/// Entry of a JSON algebra: a number or a polynomial string.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum JsonScalar {
    Int(i64),
    Float(f64),
    Text(String),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct JsonBracket {
    pub i: usize,
    pub j: usize,
    pub coeffs: BTreeMap<String, JsonScalar>,
}

/// On-disk schema of a custom algebra.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraJson {
    pub name: String,
    pub dim: usize,
    #[serde(default)]
    pub variables: Vec<String>,
    pub metric: Vec<Vec<JsonScalar>>,
    pub brackets: Vec<JsonBracket>,
}

fn json_scalar(v: &JsonScalar, vars: &VarList, at: &str) -> Result<Polynomial> {
    let wrap = |e: Error| match e {
        Error::Parse { offset, message } => Error::Parse {
            offset,
            message: format!("{at}: {message}"),
        },
        Error::Input(m) => Error::Input(format!("{at}: {m}")),
        other => other,
    };
    match v {
        JsonScalar::Int(n) => Ok(Polynomial::constant(vars, rational::int(*n))),
        JsonScalar::Float(x) => rational::from_f64(*x)
            .map(|r| Polynomial::constant(vars, r))
            .ok_or_else(|| Error::input(format!("{at}: non-finite number"))),
        JsonScalar::Text(s) => parse_poly(s, vars).map_err(wrap),
    }
}

impl FromStr for AlgebraJson {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::input(format!("algebra JSON: {e}")))
    }
}

impl AlgebraJson {
    pub fn build(&self) -> Result<MetricLieAlgebra<Polynomial>> {
        let n = self.dim;
        if n == 0 {
            return Err(Error::input("dim must be positive"));
        }
        let mut seen = std::collections::BTreeSet::new();
        for v in &self.variables {
            let valid = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid || !seen.insert(v) {
                return Err(Error::input(format!("invalid or duplicate variable name {v:?}")));
            }
        }
        let vars = VarList::new(&self.variables);
        if self.metric.len() != n || self.metric.iter().any(|r| r.len() != n) {
            return Err(Error::input(format!("metric must be a {n}x{n} matrix")));
        }
        let mut g = Tensor::zeros(n, &[Variance::Co, Variance::Co]);
        for (i, row) in self.metric.iter().enumerate() {
            for (j, v) in row.iter().enumerate() {
                g.set(&[i, j], json_scalar(v, &vars, &format!("metric[{i}][{j}]"))?);
            }
        }
        let metric = Metric::new(g)?;
        let mut sc = StructureConstants::zero(n);
        let mut pairs = std::collections::BTreeSet::new();
        for (b, br) in self.brackets.iter().enumerate() {
            let (i, j) = (br.i, br.j);
            if i == 0 || j == 0 || i > n || j > n || i == j {
                return Err(Error::input(format!("brackets[{b}]: invalid pair ({i}, {j})")));
            }
            if !pairs.insert((i.min(j), i.max(j))) {
                return Err(Error::input(format!("brackets[{b}]: pair ({i}, {j}) given twice")));
            }
            for (key, v) in &br.coeffs {
                let k: usize = key
                    .parse()
                    .ok()
                    .filter(|k| (1..=n).contains(k))
                    .ok_or_else(|| Error::input(format!("brackets[{b}]: invalid component index {key:?}")))?;
                let c = json_scalar(v, &vars, &format!("brackets[{b}].coeffs[{key}]"))?;
                sc.set(i - 1, j - 1, k - 1, c);
            }
        }
        Ok(MetricLieAlgebra {
            sc,
            metric,
            params: vars,
            label: self.name.clone(),
        })
    }

    /// Schema form of an algebra; polynomials are written as canonical strings.
    pub fn from_algebra(mla: &MetricLieAlgebra<Polynomial>) -> Self {
        let n = mla.dim();
        let text = |p: &Polynomial| JsonScalar::Text(p.to_string());
        let metric = (0..n)
            .map(|i| (0..n).map(|j| text(mla.metric.tensor().get(&[i, j]))).collect())
            .collect();
        let mut brackets = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                let coeffs: BTreeMap<String, JsonScalar> = (0..n)
                    .filter(|&k| !mla.sc.get(i, j, k).is_zero())
                    .map(|k| ((k + 1).to_string(), text(mla.sc.get(i, j, k))))
                    .collect();
                if !coeffs.is_empty() {
                    brackets.push(JsonBracket { i: i + 1, j: j + 1, coeffs });
                }
            }
        }
        AlgebraJson {
            name: mla.label.clone(),
            dim: n,
            variables: mla.params.names().to_vec(),
            metric,
            brackets,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(id: FamilyId) -> MetricLieAlgebra<Polynomial> {
        build_family(&FamilySpec::symbolic(id)).unwrap()
    }

    #[test]
    fn a1_and_a2_brackets() {
        let a1 = sym(FamilyId::A1);
        assert_eq!(a1.sc.get(1, 2, 0).to_string(), "l1");
        assert_eq!(a1.sc.get(0, 2, 1).to_string(), "-l2");
        assert_eq!(a1.sc.get(0, 1, 2).to_string(), "l3");
        assert_eq!(a1.sc.get(1, 0, 2).to_string(), "-l3");
        assert_eq!(a1.metric.tensor().get(&[0, 0]).to_string(), "-1");

        let a2 = sym(FamilyId::A2);
        let br: Vec<String> = a2.sc.bracket(0, 1).iter().map(|p| p.to_string()).collect();
        assert_eq!(br, ["0", "-1", "-l2 + 1"]);
        let br: Vec<String> = a2.sc.bracket(0, 2).iter().map(|p| p.to_string()).collect();
        assert_eq!(br, ["0", "-l2 - 1", "1"]);
        assert_eq!(a2.metric.tensor().get(&[2, 2]).to_string(), "-1");
    }

    #[test]
    fn a4_rejects_zero_beta() {
        let spec = FamilySpec::parse(FamilyId::A4, "a=1,b=0,l3=2").unwrap();
        assert!(matches!(build_family(&spec), Err(Error::Input(_))));
        let spec = FamilySpec::parse(FamilyId::A4, "a=1,b=1,l3=2").unwrap();
        assert!(build_family(&spec).is_ok());
    }

    #[test]
    fn jacobi_holds_on_catalog_except_printed_a4() {
        for id in [FamilyId::A1, FamilyId::A2, FamilyId::A3, FamilyId::A4Variant] {
            assert!(validate_jacobi(&sym(id).sc).is_empty(), "{id}");
        }
        assert!(!validate_jacobi(&sym(FamilyId::A4).sc).is_empty());
        assert!(validate_jacobi(&StructureConstants::<Polynomial>::zero(3)).is_empty());
    }

    #[test]
    fn jacobi_violation_is_located() {
        let mut sc = StructureConstants::<Polynomial>::zero(3);
        sc.set(0, 1, 0, Polynomial::from_int(1));
        sc.set(0, 2, 1, Polynomial::from_int(1));
        let v = validate_jacobi(&sc);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].triple, (1, 2, 3));
        assert_eq!(v[0].residual, ["0", "1", "0"]);
    }

    #[test]
    fn unimodularity_traces() {
        for id in [FamilyId::A1, FamilyId::A2, FamilyId::A3, FamilyId::A4Variant] {
            assert!(is_unimodular(&sym(id).sc).unimodular, "{id}");
        }
        let u = is_unimodular(&sym(FamilyId::A4).sc);
        assert!(!u.unimodular);
        assert_eq!(u.traces, ["l3", "0", "0"]);
        assert_eq!(u.only_if, ["l3 = 0"]);

        let mut sc = StructureConstants::<Polynomial>::zero(3);
        sc.set(0, 2, 0, Polynomial::from_int(1));
        let u = is_unimodular(&sc);
        assert_eq!(u.traces, ["0", "0", "-1"]);
        assert!(!u.unimodular);
    }

    #[test]
    fn table_lookup_examples() {
        let c = |id, s: &str| classify_type(&FamilySpec::parse(id, s).unwrap()).unwrap();
        assert_eq!(c(FamilyId::A1, "l1=1,l2=1,l3=1"), LieAlgebraType::Su2);
        assert_eq!(c(FamilyId::A1, "l1=-1,l2=-1,l3=1"), LieAlgebraType::Sl2R);
        assert_eq!(c(FamilyId::A1, "l1=0,l2=-3,l3=2"), LieAlgebraType::E11);
        assert_eq!(c(FamilyId::A2, "l1=0,l2=1"), LieAlgebraType::E11);
        assert_eq!(c(FamilyId::A2, "l1=0,l2=0"), LieAlgebraType::Heisenberg);
        assert_eq!(c(FamilyId::A3, "l=0"), LieAlgebraType::E11);
        assert_eq!(c(FamilyId::A3, "l=2"), LieAlgebraType::Sl2R);
        assert!(classify_type(&FamilySpec::parse(FamilyId::A3, "").unwrap()).is_err());
    }

    #[test]
    fn structural_types_of_standard_forms() {
        let milnor = |a: i64, b: i64, c: i64| {
            let mut sc = StructureConstants::<Polynomial>::zero(3);
            sc.set(1, 2, 0, Polynomial::from_int(a));
            sc.set(2, 0, 1, Polynomial::from_int(b));
            sc.set(0, 1, 2, Polynomial::from_int(c));
            structural_type(&sc)
        };
        assert_eq!(milnor(1, 1, 1), Some(LieAlgebraType::Su2));
        assert_eq!(milnor(1, 1, -1), Some(LieAlgebraType::Sl2R));
        assert_eq!(milnor(1, 1, 0), Some(LieAlgebraType::E2));
        assert_eq!(milnor(1, -1, 0), Some(LieAlgebraType::E11));
        assert_eq!(milnor(1, 0, 0), Some(LieAlgebraType::Heisenberg));
        assert_eq!(milnor(0, 0, 0), Some(LieAlgebraType::Abelian));
    }

    #[test]
    fn json_round_trip_matches_catalog() {
        let a2 = sym(FamilyId::A2);
        let text = serde_json::to_string(&AlgebraJson::from_algebra(&a2)).unwrap();
        let back = text.parse::<AlgebraJson>().unwrap().build().unwrap();
        assert_eq!(back.sc, a2.sc);
        assert_eq!(back.metric.tensor(), a2.metric.tensor());
    }

    #[test]
    fn json_errors() {
        let base = r#"{"name":"x","dim":3,"variables":["l2"],"metric":[[1,0,0],[0,1,0],[0,0,-1]],"brackets":[{"i":1,"j":2,"coeffs":{"3":"1-l2"}}]}"#;
        let mla = base.parse::<AlgebraJson>().unwrap().build().unwrap();
        assert_eq!(mla.sc.get(0, 1, 2).to_string(), "-l2 + 1");

        let unknown = base.replace("1-l2", "1-zz");
        assert!(matches!(unknown.parse::<AlgebraJson>().unwrap().build(), Err(Error::Parse { offset: 2, .. })));
        let singular = base.replace("[0,0,-1]", "[0,0,0]");
        assert!(matches!(singular.parse::<AlgebraJson>().unwrap().build(), Err(Error::Input(_))));
        let bad_pair = base.replace(r#""i":1,"j":2"#, r#""i":2,"j":2"#);
        assert!(bad_pair.parse::<AlgebraJson>().unwrap().build().is_err());
    }
}
