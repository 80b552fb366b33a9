//! Dense small-dimension tensors over a [`Scalar`] with explicit index variance.
//!
//! Entries are stored row-major over the multi-index. Variance is checked at
//! every contraction; the metric is never inserted implicitly.

use num_traits::{Signed, Zero};
use serde::Serialize;
use serde_json::Value as Json;

use crate::error::{Error, Result};
use crate::scalar::{Rational, Scalar};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Variance {
    /// Lower index.
    Co,
    /// Upper index.
    Contra,
}

impl Variance {
    pub fn flipped(self) -> Variance {
        match self {
            Variance::Co => Variance::Contra,
            Variance::Contra => Variance::Co,
        }
    }

    fn letter(self) -> char {
        match self {
            Variance::Co => 'l',
            Variance::Contra => 'u',
        }
    }
}

/// Parses a variance string such as `"ull"`.
pub fn variance_from_str(s: &str) -> Result<Vec<Variance>> {
    s.chars()
        .map(|c| match c {
            'l' => Ok(Variance::Co),
            'u' => Ok(Variance::Contra),
            other => Err(Error::tensor(format!("invalid variance letter {other:?}"))),
        })
        .collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Raise,
    Lower,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Tensor<S> {
    dim: usize,
    variance: Vec<Variance>,
    data: Vec<S>,
}

impl<S: Scalar> Tensor<S> {
    pub fn zeros(dim: usize, variance: &[Variance]) -> Self {
        assert!(dim > 0, "dimension must be positive");
        let n = dim.pow(variance.len() as u32);
        Tensor {
            dim,
            variance: variance.to_vec(),
            data: vec![S::zero(); n],
        }
    }

    pub fn scalar(value: S) -> Self {
        Tensor {
            dim: 1,
            variance: Vec::new(),
            data: vec![value],
        }
    }

    pub fn from_fn(dim: usize, variance: &[Variance], mut f: impl FnMut(&[usize]) -> S) -> Self {
        let mut t = Tensor::zeros(dim, variance);
        let mut idx = vec![0; variance.len()];
        for flat in 0..t.data.len() {
            t.unflatten(flat, &mut idx);
            t.data[flat] = f(&idx);
        }
        t
    }

    pub fn from_data(dim: usize, variance: &[Variance], data: Vec<S>) -> Result<Self> {
        if data.len() != dim.pow(variance.len() as u32) {
            return Err(Error::tensor(format!(
                "expected {} entries, got {}",
                dim.pow(variance.len() as u32),
                data.len()
            )));
        }
        Ok(Tensor {
            dim,
            variance: variance.to_vec(),
            data,
        })
    }

    /// Kronecker delta `δ^i_j` with variance `(Contra, Co)`.
    pub fn identity(dim: usize) -> Self {
        Tensor::from_fn(dim, &[Variance::Contra, Variance::Co], |ix| {
            if ix[0] == ix[1] {
                S::one()
            } else {
                S::zero()
            }
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.variance.len()
    }

    pub fn variance(&self) -> &[Variance] {
        &self.variance
    }

    pub fn variance_string(&self) -> String {
        self.variance.iter().map(|v| v.letter()).collect()
    }

    pub fn entries(&self) -> &[S] {
        &self.data
    }

    fn flatten(&self, idx: &[usize]) -> usize {
        debug_assert_eq!(idx.len(), self.rank());
        idx.iter().fold(0, |acc, &i| {
            debug_assert!(i < self.dim);
            acc * self.dim + i
        })
    }

    fn unflatten(&self, mut flat: usize, out: &mut [usize]) {
        for slot in (0..out.len()).rev() {
            out[slot] = flat % self.dim;
            flat /= self.dim;
        }
    }

    pub fn get(&self, idx: &[usize]) -> &S {
        &self.data[self.flatten(idx)]
    }

    pub fn set(&mut self, idx: &[usize], value: S) {
        let k = self.flatten(idx);
        self.data[k] = value;
    }

    /// All multi-indices in storage order.
    pub fn indices(&self) -> impl Iterator<Item = Vec<usize>> + '_ {
        (0..self.data.len()).map(move |flat| {
            let mut idx = vec![0; self.rank()];
            self.unflatten(flat, &mut idx);
            idx
        })
    }

    /// Nonzero entries with their multi-indices.
    pub fn nonzero(&self) -> impl Iterator<Item = (Vec<usize>, &S)> + '_ {
        self.indices()
            .zip(&self.data)
            .filter(|(_, v)| !v.is_zero())
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Scalar::is_zero)
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Tensor<T> {
        Tensor {
            dim: self.dim,
            variance: self.variance.clone(),
            data: self.data.iter().map(f).collect(),
        }
    }

    pub fn try_map<T: Scalar>(&self, f: impl Fn(&S) -> Result<T>) -> Result<Tensor<T>> {
        Ok(Tensor {
            dim: self.dim,
            variance: self.variance.clone(),
            data: self.data.iter().map(f).collect::<Result<_>>()?,
        })
    }

    fn check_same_shape(&self, other: &Tensor<S>) -> Result<()> {
        if self.dim != other.dim || self.variance != other.variance {
            return Err(Error::tensor(format!(
                "shape mismatch: dim {} {:?} vs dim {} {:?}",
                self.dim, self.variance, other.dim, other.variance
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Tensor<S>) -> Result<Tensor<S>> {
        self.check_same_shape(other)?;
        Ok(Tensor {
            dim: self.dim,
            variance: self.variance.clone(),
            data: self.data.iter().zip(&other.data).map(|(a, b)| a.plus(b)).collect(),
        })
    }

    pub fn sub(&self, other: &Tensor<S>) -> Result<Tensor<S>> {
        self.add(&other.scale(&S::from_int(-1)))
    }

    pub fn scale(&self, k: &S) -> Tensor<S> {
        self.map(|v| v.times(k))
    }

    /// Reorders slots: slot `s` of the result is slot `perm[s]` of `self`.
    pub fn permute(&self, perm: &[usize]) -> Result<Tensor<S>> {
        let r = self.rank();
        let mut seen = vec![false; r];
        if perm.len() != r || perm.iter().any(|&p| p >= r || std::mem::replace(&mut seen[p], true)) {
            return Err(Error::tensor(format!("invalid permutation {perm:?}")));
        }
        let variance: Vec<_> = perm.iter().map(|&p| self.variance[p]).collect();
        let mut src = vec![0; r];
        Ok(Tensor::from_fn(self.dim, &variance, |ix| {
            for (s, &p) in perm.iter().enumerate() {
                src[p] = ix[s];
            }
            self.get(&src).clone()
        }))
    }

    /// Traces slot `a` against slot `b`; they must have opposite variance.
    pub fn contract(&self, a: usize, b: usize) -> Result<Tensor<S>> {
        let r = self.rank();
        if r < 2 {
            return Err(Error::tensor("contraction needs rank at least 2"));
        }
        if a == b || a >= r || b >= r {
            return Err(Error::tensor(format!("invalid contraction slots ({a}, {b}) for rank {r}")));
        }
        if self.variance[a] == self.variance[b] {
            return Err(Error::tensor(format!(
                "slots {a} and {b} have the same variance; move an index first"
            )));
        }
        let keep: Vec<usize> = (0..r).filter(|&s| s != a && s != b).collect();
        let variance: Vec<_> = keep.iter().map(|&s| self.variance[s]).collect();
        let mut src = vec![0; r];
        let mut out = Tensor::from_fn(self.dim, &variance, |_| S::zero());
        let out_indices: Vec<Vec<usize>> = out.indices().collect();
        for ix in out_indices {
            for (k, &s) in keep.iter().enumerate() {
                src[s] = ix[k];
            }
            let mut acc = S::zero();
            for t in 0..self.dim {
                src[a] = t;
                src[b] = t;
                acc = acc.plus(self.get(&src));
            }
            out.set(&ix, acc);
        }
        Ok(out)
    }

    /// Raises or lowers one slot with the metric.
    pub fn move_index(&self, slot: usize, metric: &Metric<S>, direction: Direction) -> Result<Tensor<S>> {
        if slot >= self.rank() {
            return Err(Error::tensor(format!("slot {slot} out of range for rank {}", self.rank())));
        }
        if metric.dim() != self.dim {
            return Err(Error::tensor("metric dimension does not match tensor"));
        }
        let (needed, mover) = match direction {
            Direction::Raise => (Variance::Co, metric.inverse()),
            Direction::Lower => (Variance::Contra, metric.tensor()),
        };
        if self.variance[slot] != needed {
            return Err(Error::tensor(format!(
                "slot {slot} has variance {:?}; cannot {:?}",
                self.variance[slot], direction
            )));
        }
        let mut variance = self.variance.clone();
        variance[slot] = needed.flipped();
        let mut src = Vec::with_capacity(self.rank());
        Ok(Tensor::from_fn(self.dim, &variance, |ix| {
            src.clear();
            src.extend_from_slice(ix);
            let mut acc = S::zero();
            for a in 0..self.dim {
                let m = mover.get(&[ix[slot], a]);
                if m.is_zero() {
                    continue;
                }
                src[slot] = a;
                acc = acc.plus(&m.times(self.get(&src)));
            }
            acc
        }))
    }

    /// Moves every slot of `self` to the given variance pattern.
    pub fn with_variance(&self, target: &[Variance], metric: &Metric<S>) -> Result<Tensor<S>> {
        if target.len() != self.rank() {
            return Err(Error::tensor("variance pattern length differs from rank"));
        }
        let mut t = self.clone();
        for (slot, &v) in target.iter().enumerate() {
            if t.variance[slot] != v {
                let dir = if v == Variance::Contra { Direction::Raise } else { Direction::Lower };
                t = t.move_index(slot, metric, dir)?;
            }
        }
        Ok(t)
    }

    /// Full contraction of `self` with `other`, after moving every slot of
    /// `other` to the opposite variance of the matching slot of `self`.
    pub fn full_inner(&self, other: &Tensor<S>, metric: &Metric<S>) -> Result<S> {
        if self.rank() != other.rank() || self.dim != other.dim {
            return Err(Error::tensor(format!(
                "rank/dim mismatch: ({}, {}) vs ({}, {})",
                self.rank(),
                self.dim,
                other.rank(),
                other.dim
            )));
        }
        let target: Vec<_> = self.variance.iter().map(|v| v.flipped()).collect();
        let moved = other.with_variance(&target, metric)?;
        Ok(self
            .data
            .iter()
            .zip(&moved.data)
            .fold(S::zero(), |acc, (a, b)| acc.plus(&a.times(b))))
    }

    fn check_rank3_covariant(&self) -> Result<()> {
        if self.rank() != 3 || self.variance.iter().any(|&v| v != Variance::Co) {
            return Err(Error::tensor("expected a rank-3 covariant tensor"));
        }
        Ok(())
    }

    /// `T_(ijk)`: average over all slot permutations.
    pub fn sym_part(&self) -> Result<Tensor<S>> {
        self.check_rank3_covariant()?;
        Ok(self.permutation_average(false))
    }

    /// `T_[ijk]`: signed average over all slot permutations.
    pub fn antisym_part(&self) -> Result<Tensor<S>> {
        self.check_rank3_covariant()?;
        Ok(self.permutation_average(true))
    }

    fn permutation_average(&self, signed: bool) -> Tensor<S> {
        const PERMS: [([usize; 3], i64); 6] = [
            ([0, 1, 2], 1),
            ([1, 2, 0], 1),
            ([2, 0, 1], 1),
            ([1, 0, 2], -1),
            ([0, 2, 1], -1),
            ([2, 1, 0], -1),
        ];
        let sixth = S::from_rational(&Rational::new(1.into(), 6.into()));
        Tensor::from_fn(self.dim, &self.variance, |ix| {
            let mut acc = S::zero();
            for (p, sign) in PERMS {
                let v = self.get(&[ix[p[0]], ix[p[1]], ix[p[2]]]);
                acc = if signed && sign < 0 { acc.minus(v) } else { acc.plus(v) };
            }
            acc.times(&sixth)
        })
    }
}

impl<S: Scalar + Serialize> Tensor<S> {
    /// `{"dim": n, "variance": "lll", "components": [[[...]]]}`.
    pub fn to_json(&self) -> Json {
        fn nest<S: Serialize>(data: &[S], dim: usize, rank: usize) -> Json {
            if rank == 0 {
                return serde_json::to_value(&data[0]).expect("scalar serializes");
            }
            let chunk = data.len() / dim;
            Json::Array((0..dim).map(|i| nest(&data[i * chunk..(i + 1) * chunk], dim, rank - 1)).collect())
        }
        serde_json::json!({
            "dim": self.dim,
            "variance": self.variance_string(),
            "components": nest(&self.data, self.dim, self.rank()),
        })
    }
}

/// Inertia of a symmetric rational matrix.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Signature {
    pub positive: usize,
    pub negative: usize,
    pub zero: usize,
}

/// Frame metric `g_ij` with its cached inverse `g^ij`.
#[derive(Clone, Debug, PartialEq)]
pub struct Metric<S> {
    g: Tensor<S>,
    g_inv: Tensor<S>,
    signature: Option<Signature>,
}

impl<S: Scalar> Metric<S> {
    /// Accepts a symmetric covariant rank-2 tensor with an invertible determinant.
    pub fn new(g: Tensor<S>) -> Result<Self> {
        if g.rank() != 2 || g.variance() != [Variance::Co, Variance::Co] {
            return Err(Error::tensor("metric must be a covariant rank-2 tensor"));
        }
        let n = g.dim();
        for i in 0..n {
            for j in i + 1..n {
                if g.get(&[i, j]) != g.get(&[j, i]) {
                    return Err(Error::input(format!("metric is not symmetric at ({i}, {j})")));
                }
            }
        }
        let rows: Vec<Vec<S>> = (0..n).map(|i| (0..n).map(|j| g.get(&[i, j]).clone()).collect()).collect();
        let det = determinant(&rows);
        let det_inv = det
            .inverse()
            .ok_or_else(|| Error::input("singular metric: determinant is not invertible"))?;
        let g_inv = Tensor::from_fn(n, &[Variance::Contra, Variance::Contra], |ix| {
            cofactor(&rows, ix[1], ix[0]).times(&det_inv)
        });
        let signature = rows
            .iter()
            .map(|r| r.iter().map(Scalar::to_rational).collect::<Option<Vec<_>>>())
            .collect::<Option<Vec<_>>>()
            .map(|m| inertia(&m));
        Ok(Metric { g, g_inv, signature })
    }

    pub fn diagonal(entries: &[S]) -> Result<Self> {
        let n = entries.len();
        Metric::new(Tensor::from_fn(n, &[Variance::Co, Variance::Co], |ix| {
            if ix[0] == ix[1] {
                entries[ix[0]].clone()
            } else {
                S::zero()
            }
        }))
    }

    pub fn dim(&self) -> usize {
        self.g.dim()
    }

    pub fn tensor(&self) -> &Tensor<S> {
        &self.g
    }

    pub fn inverse(&self) -> &Tensor<S> {
        &self.g_inv
    }

    pub fn signature(&self) -> Option<Signature> {
        self.signature
    }

    pub fn is_lorentzian(&self) -> bool {
        matches!(self.signature, Some(Signature { negative: 1, zero: 0, positive }) if positive + 1 == self.dim())
    }

    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> Metric<T> {
        Metric {
            g: self.g.map(&f),
            g_inv: self.g_inv.map(&f),
            signature: self.signature,
        }
    }
}

/// The inverse metric `g^ij`.
pub fn metric_inverse<S: Scalar>(metric: &Metric<S>) -> Tensor<S> {
    metric.inverse().clone()
}

fn minor<S: Clone>(m: &[Vec<S>], row: usize, col: usize) -> Vec<Vec<S>> {
    m.iter()
        .enumerate()
        .filter(|(i, _)| *i != row)
        .map(|(_, r)| r.iter().enumerate().filter(|(j, _)| *j != col).map(|(_, v)| v.clone()).collect())
        .collect()
}

fn cofactor<S: Scalar>(m: &[Vec<S>], row: usize, col: usize) -> S {
    let d = determinant(&minor(m, row, col));
    if (row + col).is_multiple_of(2) {
        d
    } else {
        d.negated()
    }
}

/// Laplace expansion; intended for the small matrices used here.
pub fn determinant<S: Scalar>(m: &[Vec<S>]) -> S {
    match m.len() {
        0 => S::one(),
        1 => m[0][0].clone(),
        2 => m[0][0].times(&m[1][1]).minus(&m[0][1].times(&m[1][0])),
        n => (0..n).fold(S::zero(), |acc, j| {
            if m[0][j].is_zero() {
                return acc;
            }
            acc.plus(&m[0][j].times(&cofactor(m, 0, j)))
        }),
    }
}

/// Sylvester inertia by symmetric congruence elimination.
pub fn inertia(m: &[Vec<Rational>]) -> Signature {
    let n = m.len();
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut sig = Signature {
        positive: 0,
        negative: 0,
        zero: 0,
    };
    let mut active: Vec<usize> = (0..n).collect();
    while let Some(&first) = active.first() {
        let pivot = active.iter().copied().find(|&i| !a[i][i].is_zero());
        let p = match pivot {
            Some(p) => p,
            None => {
                // no diagonal pivot: combine two rows with a nonzero off-diagonal entry
                let pair = active
                    .iter()
                    .flat_map(|&i| active.iter().map(move |&j| (i, j)))
                    .find(|&(i, j)| i != j && !a[i][j].is_zero());
                match pair {
                    None => {
                        sig.zero += active.len();
                        break;
                    }
                    Some((i, j)) => {
                        for k in 0..n {
                            let v = a[j][k].clone();
                            a[i][k] += v;
                        }
                        for k in 0..n {
                            let v = a[k][j].clone();
                            a[k][i] += v;
                        }
                        i
                    }
                }
            }
        };
        let _ = first;
        let d = a[p][p].clone();
        if d.is_positive() {
            sig.positive += 1;
        } else {
            sig.negative += 1;
        }
        active.retain(|&i| i != p);
        for &i in &active {
            let f = &a[i][p] / &d;
            for k in 0..n {
                let v = &f * &a[p][k];
                a[i][k] -= v;
            }
        }
        for &i in &active {
            a[p][i] = Rational::zero();
            a[i][p] = Rational::zero();
        }
    }
    sig
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational::{int, ratio};
    use crate::scalar::{Polynomial, VarList};

    fn q(n: i64) -> Polynomial {
        Polynomial::from_int(n)
    }

    fn diag(d: &[i64]) -> Metric<Polynomial> {
        Metric::diagonal(&d.iter().map(|&x| q(x)).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn inverse_of_frame_metrics() {
        for d in [[1, 1, -1], [-1, 1, 1]] {
            let m = diag(&d);
            assert_eq!(metric_inverse(&m), Tensor::from_fn(3, &[Variance::Contra; 2], |ix| {
                if ix[0] == ix[1] { q(d[ix[0]]) } else { q(0) }
            }));
            assert!(m.is_lorentzian());
        }
        let m = diag(&[2, 1, -1]);
        assert_eq!(m.inverse().get(&[0, 0]), &Polynomial::from_rational(&ratio(1, 2)));
        assert_eq!(m.inverse().get(&[2, 2]), &q(-1));
    }

    #[test]
    fn singular_metric_is_rejected() {
        let g = Tensor::from_fn(3, &[Variance::Co; 2], |ix| if ix == [0, 0] { q(0) } else if ix[0] == ix[1] { q(1) } else { q(0) });
        assert!(matches!(Metric::new(g), Err(Error::Input(_))));
    }

    #[test]
    fn inverse_is_exact_for_offdiagonal_metric() {
        let g = Tensor::from_fn(3, &[Variance::Co; 2], |ix| match (ix[0], ix[1]) {
            (0, 0) => q(0),
            (0, 1) | (1, 0) => q(1),
            (1, 1) => q(0),
            (2, 2) => q(3),
            _ => q(0),
        });
        let m = Metric::new(g.clone()).unwrap();
        let prod = Tensor::from_fn(3, &[Variance::Contra, Variance::Co], |ix| {
            (0..3).fold(q(0), |acc, a| acc.plus(&m.inverse().get(&[ix[0], a]).times(g.get(&[a, ix[1]]))))
        });
        assert_eq!(prod, Tensor::identity(3));
        assert_eq!(m.signature(), Some(Signature { positive: 2, negative: 1, zero: 0 }));
    }

    #[test]
    fn raise_vector_with_lorentz_metric() {
        let vars = VarList::new(&["a", "b", "c"]);
        let v = Tensor::from_fn(3, &[Variance::Co], |ix| Polynomial::var_at(&vars, ix[0]));
        let up = v.move_index(0, &diag(&[1, 1, -1]), Direction::Raise).unwrap();
        assert_eq!(up.variance(), &[Variance::Contra]);
        assert_eq!(up.get(&[2]), &Polynomial::var_at(&vars, 2).neg());
        assert!(v.move_index(0, &diag(&[1, 1, -1]), Direction::Lower).is_err());
        assert!(v.move_index(1, &diag(&[1, 1, -1]), Direction::Raise).is_err());
    }

    #[test]
    fn trace_of_delta_is_dimension() {
        let d: Tensor<Polynomial> = Tensor::identity(3);
        assert_eq!(d.contract(0, 1).unwrap().get(&[]), &q(3));
    }

    #[test]
    fn contraction_errors() {
        let v: Tensor<Polynomial> = Tensor::zeros(3, &[Variance::Co]);
        assert!(v.contract(0, 0).is_err());
        let t: Tensor<Polynomial> = Tensor::zeros(3, &[Variance::Co, Variance::Co]);
        assert!(t.contract(0, 1).is_err());
    }

    #[test]
    fn trace_of_antisymmetric_pair_vanishes() {
        // g^{jk} T_{ijk} with T antisymmetric in (j, k)
        let t = Tensor::from_fn(3, &[Variance::Co; 3], |ix| {
            let s = (ix[0] * 7 + ix[1] * 3 + ix[2]) as i64;
            let a = (ix[0] * 7 + ix[2] * 3 + ix[1]) as i64;
            q(s - a)
        });
        let m = diag(&[1, 1, -1]);
        let raised = t.move_index(2, &m, Direction::Raise).unwrap();
        assert!(raised.contract(1, 2).unwrap().is_zero());
    }

    #[test]
    fn vector_norms() {
        let m = diag(&[1, 1, -1]);
        for (v, n) in [([1, 0, 0], 1), ([0, 0, 1], -1), ([1, 1, 1], 1)] {
            let t = Tensor::from_fn(3, &[Variance::Contra], |ix| q(v[ix[0]]));
            assert_eq!(t.full_inner(&t, &m).unwrap(), q(n));
        }
        let a: Tensor<Polynomial> = Tensor::zeros(3, &[Variance::Co]);
        let b: Tensor<Polynomial> = Tensor::zeros(3, &[Variance::Co, Variance::Co]);
        assert!(a.full_inner(&b, &m).is_err());
    }

    #[test]
    fn symmetric_and_alternating_parts() {
        let sym = Tensor::from_fn(3, &[Variance::Co; 3], |ix| {
            let mut s = ix.to_vec();
            s.sort();
            q((s[0] * 9 + s[1] * 3 + s[2]) as i64)
        });
        assert!(sym.antisym_part().unwrap().is_zero());
        assert_eq!(sym.sym_part().unwrap(), sym);

        let alt = Tensor::from_fn(3, &[Variance::Co; 3], |ix| {
            let (i, j, k) = (ix[0] as i64, ix[1] as i64, ix[2] as i64);
            q((j - i) * (k - i) * (k - j))
        });
        assert_eq!(alt.antisym_part().unwrap(), alt);
        assert!(alt.sym_part().unwrap().is_zero());
        let v: Tensor<Polynomial> = Tensor::zeros(3, &[Variance::Co]);
        assert!(v.sym_part().is_err());
    }

    #[test]
    fn inertia_handles_zero_diagonal() {
        let m = vec![
            vec![int(0), int(1), int(0)],
            vec![int(1), int(0), int(0)],
            vec![int(0), int(0), int(0)],
        ];
        assert_eq!(inertia(&m), Signature { positive: 1, negative: 1, zero: 1 });
    }

    #[test]
    fn json_layout() {
        let t: Tensor<Polynomial> = Tensor::identity(2);
        let j = t.to_json();
        assert_eq!(j["variance"], "ul");
        assert_eq!(j["components"], serde_json::json!([[1, 0], [0, 1]]));
    }
}
