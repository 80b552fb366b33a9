//! Levi-Civita connection, curvature, the Schouten tensor `A`, the
//! Schouten–Weyl tensor `SW`, and the derived operators on a frame.
//!
//! Every frame tensor here is constant, so covariant derivatives contain only
//! connection terms.

use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::lie::MetricLieAlgebra;
use crate::scalar::{rational, Polynomial, Rational, Scalar, VarList};
use crate::tensor::{Direction, Metric, Tensor, Variance};

use Variance::{Co, Contra};

/// Sign rule for covariant derivatives of frame-constant tensors.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum DerivConvention {
    /// `T_{i..,k} = +Σ T_{..l..} Γ^l_{k i}` and `V^i_{,k} = -V^l Γ^i_{lk}`.
    Paper,
    /// Textbook minus rule for covariant slots, `+Γ^i_{kl} V^l` for vectors.
    Standard,
}

impl DerivConvention {
    fn sign(self) -> i64 {
        match self {
            DerivConvention::Paper => 1,
            DerivConvention::Standard => -1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Sign {
    Plus,
    Minus,
}

impl Sign {
    fn apply<S: Scalar>(self, x: S) -> S {
        match self {
            Sign::Plus => x,
            Sign::Minus => x.negated(),
        }
    }
}

/// The sign choices the pipeline depends on.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Conventions {
    /// `Plus` uses the brackets as given; `Minus` reads every `c^k_ij` with the opposite sign.
    pub bracket: Sign,
    /// Derivative rule used for `A` when forming `SW`, and for the curl and divergences of `SW`.
    pub schouten_deriv: DerivConvention,
    /// `Plus`: `curl(T)_{t i..} = T_{i..,t} - Σ_s T_{..t..,i_s}`; `Minus` adds the sum instead.
    pub curl: Sign,
    /// Derivative rule for the contraction `w`.
    pub w_deriv: DerivConvention,
    /// Derivative rule for vector fields.
    pub vector_deriv: DerivConvention,
}

impl Conventions {
    pub const PINNED: Conventions = Conventions {
        bracket: Sign::Plus,
        schouten_deriv: DerivConvention::Paper,
        curl: Sign::Plus,
        w_deriv: DerivConvention::Paper,
        vector_deriv: DerivConvention::Paper,
    };

    /// Stable text tag embedded in reports.
    pub fn tag(&self) -> String {
        let s = |x: Sign| if x == Sign::Plus { "+" } else { "-" };
        let d = |x: DerivConvention| if x == DerivConvention::Paper { "paper" } else { "standard" };
        format!(
            "koszul{};riemann=printed;ricci=tr(Z->R(X,Z)Y);A-deriv={};curl{};w-deriv={};V-deriv={}",
            s(self.bracket),
            d(self.schouten_deriv),
            s(self.curl),
            d(self.w_deriv),
            d(self.vector_deriv)
        )
    }
}

impl Default for Conventions {
    fn default() -> Self {
        Conventions::PINNED
    }
}

/// `Γ^k_ij` stored at `[i, j, k]`, so that `∇_{E_i} E_j = Γ^k_ij E_k`.
#[derive(Clone, Debug, PartialEq)]
pub struct Connection<S> {
    pub gamma: Tensor<S>,
    /// Structure constants with the bracket sign applied, `[i, j, k] = c^k_ij`.
    pub c: Tensor<S>,
}

impl<S: Scalar> Connection<S> {
    pub fn dim(&self) -> usize {
        self.gamma.dim()
    }

    /// `Γ^k_ij`.
    pub fn g(&self, i: usize, j: usize, k: usize) -> &S {
        self.gamma.get(&[i, j, k])
    }
}

/// Koszul formula `Γ^k_ij = ½ g^{km}(c_ijm − c_jmi + c_mij)` with `c_ijm = c^l_ij g_lm`.
pub fn christoffel<S: Scalar>(mla: &MetricLieAlgebra<S>, conv: &Conventions) -> Connection<S> {
    let n = mla.dim();
    let g = mla.metric.tensor();
    let gi = mla.metric.inverse();
    let c = mla.sc.tensor().map(|v| conv.bracket.apply(v.clone()));
    let lowered = Tensor::from_fn(n, &[Co, Co, Co], |ix| {
        (0..n).fold(S::zero(), |acc, l| acc.plus(&c.get(&[ix[0], ix[1], l]).times(g.get(&[l, ix[2]]))))
    });
    let half = S::from_rational(&rational::ratio(1, 2));
    let gamma = Tensor::from_fn(n, &[Co, Co, Contra], |ix| {
        let (i, j, k) = (ix[0], ix[1], ix[2]);
        let mut acc = S::zero();
        for m in 0..n {
            let gkm = gi.get(&[k, m]);
            if gkm.is_zero() {
                continue;
            }
            let koszul = lowered
                .get(&[i, j, m])
                .minus(lowered.get(&[j, m, i]))
                .plus(lowered.get(&[m, i, j]));
            acc = acc.plus(&gkm.times(&koszul));
        }
        acc.times(&half)
    });
    Connection { gamma, c }
}

/// `R(E_i,E_j)E_k = ∇_j∇_i E_k − ∇_i∇_j E_k + ∇_{[E_i,E_j]}E_k`, component `m` at `[i, j, k, m]`.
pub fn riemann<S: Scalar>(conn: &Connection<S>) -> Tensor<S> {
    let n = conn.dim();
    Tensor::from_fn(n, &[Co, Co, Co, Contra], |ix| {
        let (i, j, k, m) = (ix[0], ix[1], ix[2], ix[3]);
        let mut acc = S::zero();
        for l in 0..n {
            acc = acc
                .plus(&conn.g(i, k, l).times(conn.g(j, l, m)))
                .minus(&conn.g(j, k, l).times(conn.g(i, l, m)))
                .plus(&conn.c.get(&[i, j, l]).times(conn.g(l, k, m)));
        }
        acc
    })
}

/// `r_ij = Σ_k (R(E_i,E_k)E_j)^k` and `ρ = g^{ij} r_ij`.
pub fn ricci_and_scalar<S: Scalar>(r: &Tensor<S>, metric: &Metric<S>) -> Result<(Tensor<S>, S)> {
    if r.variance() != [Co, Co, Co, Contra] {
        return Err(Error::tensor("Riemann tensor must have variance lllu"));
    }
    let ric = r.contract(1, 3)?;
    let rho = trace(&ric, metric)?;
    Ok((ric, rho))
}

/// `g^{ij} T_ij`.
pub fn trace<S: Scalar>(t: &Tensor<S>, metric: &Metric<S>) -> Result<S> {
    let raised = t.move_index(1, metric, Direction::Raise)?;
    Ok(raised.contract(0, 1)?.get(&[]).clone())
}

/// `A = (1/(n−2))(r − ρ g / (2(n−1)))`.
pub fn schouten_a<S: Scalar>(ric: &Tensor<S>, rho: &S, metric: &Metric<S>) -> Result<Tensor<S>> {
    let n = metric.dim();
    if n < 3 {
        return Err(Error::domain(format!("the Schouten tensor needs dimension at least 3, got {n}")));
    }
    let n = n as i64;
    let k = S::from_rational(&rational::ratio(1, 2 * (n - 1)));
    let inv = S::from_rational(&rational::ratio(1, n - 2));
    let shifted = ric.sub(&metric.tensor().scale(&rho.times(&k)))?;
    Ok(shifted.scale(&inv))
}

/// Covariant derivative of a frame-constant covariant tensor; the derivative
/// index is appended as the last slot.
pub fn cov_deriv<S: Scalar>(t: &Tensor<S>, conn: &Connection<S>, mode: DerivConvention) -> Result<Tensor<S>> {
    if t.variance().contains(&Contra) {
        return Err(Error::tensor("cov_deriv takes covariant tensors only; use vector_ops for vectors"));
    }
    let p = t.rank();
    let n = t.dim();
    let sign = S::from_int(mode.sign());
    let mut variance = t.variance().to_vec();
    variance.push(Co);
    let mut src = vec![0; p];
    Ok(Tensor::from_fn(n, &variance, |ix| {
        let k = ix[p];
        let mut acc = S::zero();
        for s in 0..p {
            src.copy_from_slice(&ix[..p]);
            for l in 0..n {
                let gamma = conn.g(k, ix[s], l);
                if gamma.is_zero() {
                    continue;
                }
                src[s] = l;
                acc = acc.plus(&t.get(&src).times(gamma));
            }
        }
        acc.times(&sign)
    }))
}

/// `SW_ijk = A_{ij,k} − A_{ik,j}`.
pub fn sw_from_schouten<S: Scalar>(a: &Tensor<S>, conn: &Connection<S>, mode: DerivConvention) -> Result<Tensor<S>> {
    let da = cov_deriv(a, conn, mode)?;
    Ok(Tensor::from_fn(a.dim(), &[Co, Co, Co], |ix| {
        da.get(&[ix[0], ix[1], ix[2]]).minus(da.get(&[ix[0], ix[2], ix[1]]))
    }))
}

/// `curl(T)_{t i1..ip} = T_{i1..ip,t} − Σ_s T_{..t in slot s..,i_s}` (or `+Σ` under `Sign::Minus`).
pub fn curl<S: Scalar>(t: &Tensor<S>, conn: &Connection<S>, mode: DerivConvention, sign: Sign) -> Result<Tensor<S>> {
    let p = t.rank();
    if p == 0 {
        return Err(Error::tensor("curl needs rank at least 1"));
    }
    let dt = cov_deriv(t, conn, mode)?;
    let variance = vec![Co; p + 1];
    let mut src = vec![0; p + 1];
    Ok(Tensor::from_fn(t.dim(), &variance, |ix| {
        let tt = ix[0];
        let idx = &ix[1..];
        src[..p].copy_from_slice(idx);
        src[p] = tt;
        let head = dt.get(&src).clone();
        let mut sum = S::zero();
        for s in 0..p {
            src[..p].copy_from_slice(idx);
            src[s] = tt;
            src[p] = idx[s];
            sum = sum.plus(dt.get(&src));
        }
        match sign {
            Sign::Plus => head.minus(&sum),
            Sign::Minus => head.plus(&sum),
        }
    }))
}

/// Which lower index of `SW` the divergence contracts with the derivative slot.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DivKind {
    /// `pdiv(SW)_jk = g^{it} SW_{ijk,t}`.
    I,
    /// `qdiv(SW)_ik = g^{jt} SW_{ijk,t}`.
    II,
}

pub fn divergence<S: Scalar>(
    t: &Tensor<S>,
    slot: usize,
    conn: &Connection<S>,
    metric: &Metric<S>,
    mode: DerivConvention,
) -> Result<Tensor<S>> {
    let dt = cov_deriv(t, conn, mode)?;
    let last = dt.rank() - 1;
    dt.move_index(last, metric, Direction::Raise)?.contract(slot, last)
}

/// `w_ij = V^k SW_kij`.
pub fn sw_contract<S: Scalar>(sw: &Tensor<S>, v: &Tensor<S>) -> Result<Tensor<S>> {
    if v.rank() != 1 || v.variance() != [Contra] {
        return Err(Error::tensor("V must be a contravariant vector"));
    }
    if v.dim() != sw.dim() {
        return Err(Error::tensor("dimension mismatch between V and SW"));
    }
    let n = sw.dim();
    Ok(Tensor::from_fn(n, &[Co, Co], |ix| {
        (0..n).fold(S::zero(), |acc, k| acc.plus(&v.get(&[k]).times(sw.get(&[k, ix[0], ix[1]]))))
    }))
}

/// `(curl(w), div(w))` with `curl(w)_{tij} = w_{ij,t} − w_{tj,i} − w_{it,j}` and `div(w)_j = g^{it} w_{ij,t}`.
pub fn tensor2_curl_div<S: Scalar>(
    w: &Tensor<S>,
    conn: &Connection<S>,
    metric: &Metric<S>,
    conv: &Conventions,
) -> Result<(Tensor<S>, Tensor<S>)> {
    if w.rank() != 2 || w.variance() != [Co, Co] {
        return Err(Error::tensor("w must be covariant of rank 2"));
    }
    let c = curl(w, conn, conv.w_deriv, conv.curl)?;
    let d = divergence(w, 0, conn, metric, conv.w_deriv)?;
    Ok((c, d))
}

/// Covariant derivative, curl, divergence and squared length of a vector field.
#[derive(Clone, Debug, PartialEq)]
pub struct VectorOps<S> {
    /// `V^i_{,k}` at `[i, k]`.
    pub deriv: Tensor<S>,
    /// `V^i_{,j} − V^j_{,i}` at `[i, j]`.
    pub curl: Tensor<S>,
    pub div: S,
    pub norm2: S,
}

pub fn vector_ops<S: Scalar>(
    v: &Tensor<S>,
    conn: &Connection<S>,
    metric: &Metric<S>,
    mode: DerivConvention,
) -> Result<VectorOps<S>> {
    if v.rank() != 1 || v.variance() != [Contra] {
        return Err(Error::tensor("V must be a contravariant vector"));
    }
    let n = v.dim();
    let deriv = Tensor::from_fn(n, &[Contra, Co], |ix| {
        let (i, k) = (ix[0], ix[1]);
        (0..n).fold(S::zero(), |acc, l| match mode {
            DerivConvention::Paper => acc.minus(&v.get(&[l]).times(conn.g(l, k, i))),
            DerivConvention::Standard => acc.plus(&conn.g(k, l, i).times(v.get(&[l]))),
        })
    });
    let curl = Tensor::from_fn(n, &[Contra, Co], |ix| {
        deriv.get(&[ix[0], ix[1]]).minus(deriv.get(&[ix[1], ix[0]]))
    });
    let div = deriv.contract(0, 1)?.get(&[]).clone();
    let norm2 = v.full_inner(v, metric)?;
    Ok(VectorOps { deriv, curl, div, norm2 })
}

/// Everything from the connection through `SW`.
#[derive(Clone, Debug, PartialEq)]
pub struct CurvatureBundle<S> {
    pub connection: Connection<S>,
    pub riemann: Tensor<S>,
    pub ricci: Tensor<S>,
    pub rho: S,
    pub schouten: Tensor<S>,
    pub sw: Tensor<S>,
}

impl<S: Scalar> CurvatureBundle<S> {
    pub fn compute(mla: &MetricLieAlgebra<S>, conv: &Conventions) -> Result<Self> {
        let connection = christoffel(mla, conv);
        let riemann = riemann(&connection);
        let (ricci, rho) = ricci_and_scalar(&riemann, &mla.metric)?;
        let schouten = schouten_a(&ricci, &rho, &mla.metric)?;
        let sw = sw_from_schouten(&schouten, &connection, conv.schouten_deriv)?;
        Ok(CurvatureBundle {
            connection,
            riemann,
            ricci,
            rho,
            schouten,
            sw,
        })
    }

    /// `‖SW‖² = SW_ijk SW^ijk`.
    pub fn sw_norm2(&self, metric: &Metric<S>) -> Result<S> {
        self.sw.full_inner(&self.sw, metric)
    }

    pub fn sw_divergence(&self, kind: DivKind, metric: &Metric<S>, conv: &Conventions) -> Result<Tensor<S>> {
        let slot = match kind {
            DivKind::I => 0,
            DivKind::II => 1,
        };
        divergence(&self.sw, slot, &self.connection, metric, conv.schouten_deriv)
    }

    pub fn sw_curl(&self, conv: &Conventions) -> Result<Tensor<S>> {
        curl(&self.sw, &self.connection, conv.schouten_deriv, conv.curl)
    }
}

impl<S: Scalar + Serialize> CurvatureBundle<S> {
    pub fn to_json(&self) -> Json {
        json!({
            "christoffel": self.connection.gamma.to_json(),
            "riemann": self.riemann.to_json(),
            "ricci": self.ricci.to_json(),
            "scalar_curvature": serde_json::to_value(&self.rho).expect("scalar serializes"),
            "schouten": self.schouten.to_json(),
            "schouten_weyl": self.sw.to_json(),
        })
    }
}

/// Nonzero components of a tensor as `(1-based index string, value)` pairs.
pub fn components<S: Scalar>(t: &Tensor<S>) -> Vec<(String, S)> {
    t.nonzero()
        .map(|(ix, v)| (ix.iter().map(|i| (i + 1).to_string()).collect::<String>(), v.clone()))
        .collect()
}

/// Symbolic vector `(v1, v2, v3)` over the algebra's parameters followed by the components.
pub fn symbolic_vector(params: &VarList) -> (VarList, Tensor<Polynomial>) {
    let names = ["v1", "v2", "v3"];
    let vars = params.union(&VarList::new(&names));
    let v = Tensor::from_fn(3, &[Contra], |ix| Polynomial::var(&vars, names[ix[0]]).expect("vector symbol"));
    (vars, v)
}

/// A concrete vector with rational entries over `vars`.
pub fn rational_vector(vars: &VarList, entries: &[Rational]) -> Tensor<Polynomial> {
    Tensor::from_fn(entries.len(), &[Contra], |ix| Polynomial::constant(vars, entries[ix[0]].clone()))
}

/// Result of a predicate: exact verdict when decidable, otherwise the defining conditions.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PredicateResult {
    /// Polynomials that must all vanish.
    pub conditions: Vec<String>,
    /// Additional requirement, e.g. `SW != 0` for isotropy.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub requires_nonzero: Option<String>,
    /// `Some` when every condition is a constant.
    pub holds: Option<bool>,
}

impl PredicateResult {
    fn from_conditions(conds: Vec<Polynomial>, nonzero: Option<(&str, Option<bool>)>) -> Self {
        let mut distinct: Vec<Polynomial> = Vec::new();
        for c in conds.into_iter().filter(|c| !c.is_zero()) {
            let p = c.normalize().0;
            if !distinct.contains(&p) {
                distinct.push(p);
            }
        }
        let all_constant = distinct.iter().all(Polynomial::is_constant);
        let vanish = distinct.is_empty();
        let holds = match nonzero {
            Some((_, None)) => None,
            Some((_, Some(nz))) if all_constant => Some(vanish && nz),
            None if all_constant => Some(vanish),
            _ => None,
        };
        PredicateResult {
            conditions: distinct.iter().map(|p| p.to_string()).collect(),
            requires_nonzero: nonzero.map(|(s, _)| s.to_string()),
            holds,
        }
    }
}

/// Verdicts of the isotropy and harmonicity predicates.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Predicates {
    pub isotropic_sw: PredicateResult,
    pub almost_harmonic_sw: PredicateResult,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub harmonic_w: Option<PredicateResult>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub harmonic_v: Option<PredicateResult>,
}

/// Evaluates the predicates. With `v = None` only the `SW` predicates are computed.
/// A symbolic `V` must already share the algebra's variable list.
pub fn predicates(
    mla: &MetricLieAlgebra<Polynomial>,
    v: Option<&Tensor<Polynomial>>,
    conv: &Conventions,
) -> Result<Predicates> {
    let bundle = CurvatureBundle::compute(mla, conv)?;
    let norm2 = bundle.sw_norm2(&mla.metric)?;
    let sw_nonzero = if bundle.sw.is_zero() {
        Some(false)
    } else if bundle.sw.entries().iter().any(|e| e.as_constant().is_some_and(|c| !num_traits::Zero::is_zero(&c))) {
        Some(true)
    } else {
        None
    };
    let isotropic_sw = PredicateResult::from_conditions(vec![norm2], Some(("SW != 0", sw_nonzero)));
    let curl_sw = bundle.sw_curl(conv)?;
    let pdiv = bundle.sw_divergence(DivKind::I, &mla.metric, conv)?;
    let almost_harmonic_sw = PredicateResult::from_conditions(
        curl_sw.entries().iter().chain(pdiv.entries()).cloned().collect(),
        None,
    );
    let (harmonic_w, harmonic_v) = match v {
        None => (None, None),
        Some(v) => {
            let w = sw_contract(&bundle.sw, v)?;
            let (cw, dw) = tensor2_curl_div(&w, &bundle.connection, &mla.metric, conv)?;
            let hw = PredicateResult::from_conditions(cw.entries().iter().chain(dw.entries()).cloned().collect(), None);
            let ops = vector_ops(v, &bundle.connection, &mla.metric, conv.vector_deriv)?;
            let mut conds: Vec<Polynomial> = ops.curl.entries().to_vec();
            conds.push(ops.div);
            (Some(hw), Some(PredicateResult::from_conditions(conds, None)))
        }
    };
    Ok(Predicates {
        isotropic_sw,
        almost_harmonic_sw,
        harmonic_w,
        harmonic_v,
    })
}

/// Names of the structural identities that fail for this algebra: torsion,
/// metric compatibility, curvature slot symmetries and the algebraic
/// identities of `SW`. Empty means all hold exactly.
pub fn invariant_violations<S: Scalar>(mla: &MetricLieAlgebra<S>, conv: &Conventions) -> Result<Vec<&'static str>> {
    let n = mla.dim();
    let b = CurvatureBundle::compute(mla, conv)?;
    let conn = &b.connection;
    let mut bad = Vec::new();
    let all3 = |f: &dyn Fn(usize, usize, usize) -> bool| {
        (0..n).all(|i| (0..n).all(|j| (0..n).all(|k| f(i, j, k))))
    };

    if !all3(&|i, j, k| conn.g(i, j, k).minus(conn.g(j, i, k)) == *conn.c.get(&[i, j, k])) {
        bad.push("torsion-free");
    }
    if !cov_deriv(mla.metric.tensor(), conn, DerivConvention::Standard)?.is_zero() {
        bad.push("metric-parallel");
    }
    let r = &b.riemann;
    if !r.add(&r.permute(&[1, 0, 2, 3])?)?.is_zero() {
        bad.push("riemann-antisymmetric-12");
    }
    let lowered = r.move_index(3, &mla.metric, Direction::Lower)?;
    if !lowered.add(&lowered.permute(&[0, 1, 3, 2])?)?.is_zero() {
        bad.push("riemann-antisymmetric-34");
    }
    let cyclic = lowered.add(&lowered.permute(&[1, 2, 0, 3])?)?.add(&lowered.permute(&[2, 0, 1, 3])?)?;
    if !cyclic.is_zero() {
        bad.push("first-bianchi");
    }
    if b.ricci != b.ricci.permute(&[1, 0])? {
        bad.push("ricci-symmetric");
    }
    let sw = &b.sw;
    if !sw.add(&sw.permute(&[0, 2, 1])?)?.is_zero() {
        bad.push("sw-antisymmetric-23");
    }
    if !sw.sym_part()?.is_zero() {
        bad.push("sw-symmetric-part");
    }
    if !sw.antisym_part()?.is_zero() {
        bad.push("sw-alternating-part");
    }
    if !sw.move_index(1, &mla.metric, Direction::Raise)?.contract(1, 2)?.is_zero() {
        bad.push("sw-trace-23");
    }
    Ok(bad)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lie::{build_family, FamilyId, FamilySpec, StructureConstants};
    use crate::scalar::parse_poly;

    fn sym(id: FamilyId) -> MetricLieAlgebra<Polynomial> {
        build_family(&FamilySpec::symbolic(id)).unwrap()
    }

    fn bundle(mla: &MetricLieAlgebra<Polynomial>) -> CurvatureBundle<Polynomial> {
        CurvatureBundle::compute(mla, &Conventions::PINNED).unwrap()
    }

    fn abelian() -> MetricLieAlgebra<Polynomial> {
        let k = Polynomial::from_int;
        MetricLieAlgebra {
            sc: StructureConstants::zero(3),
            metric: Metric::diagonal(&[k(1), k(1), k(-1)]).unwrap(),
            params: VarList::empty(),
            label: "abelian".into(),
        }
    }

    #[test]
    fn catalog_satisfies_invariants() {
        for id in FamilyId::ALL.into_iter().filter(|&id| id != FamilyId::A4) {
            assert_eq!(invariant_violations(&sym(id), &Conventions::PINNED).unwrap(), Vec::<&str>::new(), "{id}");
        }
    }

    #[test]
    fn jacobi_failure_breaks_bianchi() {
        let bad = invariant_violations(&sym(FamilyId::A4), &Conventions::PINNED).unwrap();
        assert_eq!(bad, ["first-bianchi", "ricci-symmetric", "sw-alternating-part"]);
    }

    #[test]
    fn abelian_is_flat() {
        let b = bundle(&abelian());
        assert!(b.connection.gamma.is_zero());
        assert!(b.riemann.is_zero());
        assert!(b.ricci.is_zero() && b.rho.is_zero());
        assert!(b.sw.is_zero());
    }

    #[test]
    fn torsion_free_on_catalog() {
        for id in FamilyId::ALL {
            let mla = sym(id);
            let conn = christoffel(&mla, &Conventions::PINNED);
            for i in 0..3 {
                for j in 0..3 {
                    for k in 0..3 {
                        assert_eq!(conn.g(i, j, k).sub(conn.g(j, i, k)), *mla.sc.get(i, j, k), "{id}");
                    }
                }
            }
        }
    }

    #[test]
    fn a2_at_origin_has_trivial_nabla_e1_e2() {
        let mla = build_family(&FamilySpec::parse(FamilyId::A2, "l1=0,l2=0").unwrap()).unwrap();
        let conn = christoffel(&mla, &Conventions::PINNED);
        assert!((0..3).all(|k| conn.g(0, 1, k).is_zero()));
    }

    #[test]
    fn a2_schouten_weyl_components() {
        let mla = sym(FamilyId::A2);
        let b = bundle(&mla);
        let p = |s: &str| parse_poly(s, &mla.params).unwrap();
        assert_eq!(b.sw.get(&[0, 2, 1]), &p("-l1^3 + l1^2*l2"));
        assert_eq!(b.sw.get(&[1, 1, 0]), &p("-1/2*l1^2 - 2*l2*l1 + 4*l2^2"));
        assert_eq!(b.sw.get(&[2, 2, 0]), &p("-1/2*l1^2 - 2*l2*l1 + 4*l2^2"));
        assert_eq!(b.sw.get(&[1, 2, 0]), &p("-1/2*l1^2 - 2*l2*l1 + 4*l2^2 - 1/2*l1^3 + 1/2*l1^2*l2"));
        assert_eq!(b.sw.get(&[2, 1, 0]), &p("-1/2*l1^2 - 2*l2*l1 + 4*l2^2 + 1/2*l1^3 - 1/2*l1^2*l2"));
        assert_eq!(b.sw_norm2(&mla.metric).unwrap(), p("-3*l1^4*(l1 - l2)^2"));
    }

    #[test]
    fn a3_norm_vanishes() {
        let mla = sym(FamilyId::A3);
        let b = bundle(&mla);
        assert!(b.sw_norm2(&mla.metric).unwrap().is_zero());
        assert!(!b.sw.is_zero());
    }

    #[test]
    fn pdiv_vanishes_for_a2_a3() {
        for id in [FamilyId::A2, FamilyId::A3] {
            let mla = sym(id);
            let b = bundle(&mla);
            assert!(b.sw_divergence(DivKind::I, &mla.metric, &Conventions::PINNED).unwrap().is_zero(), "{id}");
        }
    }

    #[test]
    fn schouten_needs_dimension_three() {
        let k = Polynomial::from_int;
        let m = Metric::diagonal(&[k(1), k(-1)]).unwrap();
        let r = Tensor::zeros(2, &[Co, Co]);
        assert!(matches!(schouten_a(&r, &k(0), &m), Err(Error::Domain(_))));
    }

    #[test]
    fn schouten_trace_is_quarter_rho() {
        for id in FamilyId::ALL {
            let mla = sym(id);
            let b = bundle(&mla);
            let quarter = rational::ratio(1, 4);
            assert_eq!(trace(&b.schouten, &mla.metric).unwrap(), b.rho.scale(&quarter), "{id}");
        }
    }

    #[test]
    fn metric_is_parallel_in_standard_mode() {
        for id in FamilyId::ALL {
            let mla = sym(id);
            let conn = christoffel(&mla, &Conventions::PINNED);
            assert!(cov_deriv(mla.metric.tensor(), &conn, DerivConvention::Standard).unwrap().is_zero(), "{id}");
        }
    }

    #[test]
    fn cov_deriv_rejects_vectors() {
        let mla = sym(FamilyId::A2);
        let conn = christoffel(&mla, &Conventions::PINNED);
        let v: Tensor<Polynomial> = Tensor::zeros(3, &[Contra]);
        assert!(cov_deriv(&v, &conn, DerivConvention::Paper).is_err());
    }

    #[test]
    fn a2_contraction_and_vector_conditions() {
        let mla = sym(FamilyId::A2);
        let (vars, v) = symbolic_vector(&mla.params);
        let mla = mla.with_vars(&vars).unwrap();
        let b = bundle(&mla);
        let w = sw_contract(&b.sw, &v).unwrap();
        for i in 0..3 {
            for j in 0..3 {
                assert!(w.get(&[i, j]).add(w.get(&[j, i])).is_zero());
            }
        }
        let p = |s: &str| parse_poly(s, &vars).unwrap();
        assert_eq!(w.get(&[1, 2]), &p("v1*l1^2*(l1 - l2)"));
        let preds = predicates(&mla, Some(&v), &Conventions::PINNED).unwrap();
        let hv = preds.harmonic_v.unwrap();
        assert_eq!(hv.conditions, [p("2*v2 + (2 + l1)*v3").normalize().0.to_string()]);
    }

    #[test]
    fn numeric_predicates() {
        let pred = |id, s: &str| {
            let mla = build_family(&FamilySpec::parse(id, s).unwrap()).unwrap();
            predicates(&mla, None, &Conventions::PINNED).unwrap()
        };
        assert_eq!(pred(FamilyId::A2, "l1=0,l2=1").isotropic_sw.holds, Some(true));
        assert_eq!(pred(FamilyId::A2, "l1=1,l2=2").isotropic_sw.holds, Some(false));
        assert_eq!(pred(FamilyId::A3, "l=0").isotropic_sw.holds, Some(false));
        assert_eq!(pred(FamilyId::A2, "l1=0,l2=0").almost_harmonic_sw.holds, Some(true));
        assert_eq!(pred(FamilyId::A2, "l1=1,l2=1").almost_harmonic_sw.holds, Some(false));
    }

    #[test]
    fn zero_vector_gives_zero_contraction() {
        let mla = sym(FamilyId::A3);
        let b = bundle(&mla);
        let v = rational_vector(&mla.params, &[rational::int(0), rational::int(0), rational::int(0)]);
        assert!(sw_contract(&b.sw, &v).unwrap().is_zero());
    }

    #[test]
    fn float_pipeline_agrees_with_exact() {
        let mla = sym(FamilyId::A2);
        let exact = bundle(&build_family(&FamilySpec::parse(FamilyId::A2, "l1=1,l2=2").unwrap()).unwrap());
        let num = mla.eval_f64(&[1.0, 2.0]).unwrap();
        let b = CurvatureBundle::compute(&num, &Conventions::PINNED).unwrap();
        assert_eq!(b.sw_norm2(&num.metric).unwrap(), -3.0);
        for (e, f) in exact.sw.entries().iter().zip(b.sw.entries()) {
            assert_eq!(rational::to_f64(&e.constant_term()), *f);
        }
    }
}
