//! Harmonic-contraction conditions as linear systems `M·V = 0` in the vector
//! components, with exact determinants and kernels.

use serde::Serialize;

use super::reference;
use super::roots::{isolate_real_roots, RootInterval, UniPoly};
use super::system::{generate_system, SystemKind};
use crate::curvature::Conventions;
use crate::error::{Error, Result};
use crate::lie::FamilyId;
use crate::scalar::{Polynomial, Rational, VarList};
use crate::tensor::determinant;

pub const VECTOR_VARS: [&str; 3] = ["v1", "v2", "v3"];

/// Rows `[m_i1, m_i2, m_i3]` with `Σ_j m_ij v_j = 0`; entries are polynomials
/// in the structure parameters only.
#[derive(Clone, Debug, PartialEq)]
pub struct LinearSystemInV {
    pub params: VarList,
    pub rows: Vec<[Polynomial; 3]>,
}

impl LinearSystemInV {
    /// Splits each equation into its `v1, v2, v3` coefficients. Any term not of
    /// degree exactly one in the vector components is a consistency error.
    pub fn from_equations(vars: &VarList, equations: &[Polynomial]) -> Result<Self> {
        let idx: Vec<usize> = VECTOR_VARS
            .iter()
            .map(|v| vars.index_of(v).ok_or_else(|| Error::input(format!("system lacks vector component {v}"))))
            .collect::<Result<_>>()?;
        let params = VarList::new(
            &vars
                .names()
                .iter()
                .filter(|n| !VECTOR_VARS.contains(&n.as_str()))
                .cloned()
                .collect::<Vec<_>>(),
        );
        let mut rows = Vec::with_capacity(equations.len());
        for eq in equations {
            let eq = eq.align(vars)?;
            for (m, _) in eq.terms() {
                let d: u32 = idx.iter().map(|&i| m.exponents()[i]).sum();
                if d != 1 {
                    return Err(Error::Consistency(format!(
                        "equation {eq} is not linear homogeneous in v1, v2, v3"
                    )));
                }
            }
            let coeff = |i: usize| eq.coefficient_of(idx[i], 1).align(&params);
            rows.push([coeff(0)?, coeff(1)?, coeff(2)?]);
        }
        Ok(LinearSystemInV { params, rows })
    }

    pub fn is_square(&self) -> bool {
        self.rows.len() == 3
    }

    pub fn matrix(&self) -> Vec<Vec<Polynomial>> {
        self.rows.iter().map(|r| r.to_vec()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && (0..3).all(|i| (0..3).all(|j| self.rows[i][j] == self.rows[j][i]))
    }

    pub fn determinant(&self) -> Result<Polynomial> {
        if !self.is_square() {
            return Err(Error::domain(format!("{} equations do not form a square system", self.rows.len())));
        }
        Ok(determinant(&self.matrix()))
    }

    /// `M` at a rational parameter point.
    pub fn at(&self, point: &[Rational]) -> Vec<Vec<Rational>> {
        self.rows.iter().map(|r| r.iter().map(|p| p.eval_rational(point)).collect()).collect()
    }

    /// `M` with some parameters substituted; the rest stay symbolic.
    pub fn substitute(&self, subs: &std::collections::BTreeMap<String, Polynomial>) -> Result<Vec<Vec<Polynomial>>> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|p| p.substitute(subs)).collect())
            .collect()
    }
}

/// The printed contraction system for A2 or A3.
pub fn contraction_matrix(family: FamilyId) -> Result<LinearSystemInV> {
    let name = match family {
        FamilyId::A2 => "a2_contraction",
        FamilyId::A3 => "a3_contraction",
        other => return Err(Error::input(format!("no printed contraction system for {other}"))),
    };
    let r = reference::system(name)?;
    LinearSystemInV::from_equations(&r.vars, &r.members)
}

/// The engine's contraction system, one row per distinct condition.
pub fn generated_contraction(family: FamilyId, conv: &Conventions) -> Result<LinearSystemInV> {
    let sys = generate_system(family, SystemKind::HarmonicContraction, conv)?;
    LinearSystemInV::from_equations(sys.vars(), sys.members())
}

/// Basis of the rational null space of `m`.
pub fn kernel(m: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let ncols = m.first().map_or(0, Vec::len);
    let mut a: Vec<Vec<Rational>> = m.to_vec();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..a.len()).find(|&i| !num_traits::Zero::is_zero(&a[i][c])) else {
            continue;
        };
        a.swap(r, p);
        let lead = a[r][c].clone();
        for x in a[r].iter_mut() {
            *x /= &lead;
        }
        for i in 0..a.len() {
            if i != r && !num_traits::Zero::is_zero(&a[i][c]) {
                let f = a[i][c].clone();
                let pivot_row = a[r].clone();
                for (x, y) in a[i].iter_mut().zip(pivot_row) {
                    *x -= &f * y;
                }
            }
        }
        pivots.push(c);
        r += 1;
    }
    (0..ncols)
        .filter(|c| !pivots.contains(c))
        .map(|free| {
            let mut v = vec![<Rational as num_traits::Zero>::zero(); ncols];
            v[free] = <Rational as num_traits::One>::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -a[row][free].clone();
            }
            v
        })
        .collect()
}

/// The determinant of a square system and, when one parameter remains, its
/// isolated real roots.
#[derive(Clone, Debug, Serialize)]
pub struct DetLocus {
    pub params: Vec<String>,
    pub det: Polynomial,
    pub degree: u32,
    pub roots: Vec<RootInterval>,
}

pub const ROOT_WIDTH: f64 = 1e-9;

pub fn det_locus(sys: &LinearSystemInV) -> Result<DetLocus> {
    let det = sys.determinant()?;
    let roots = if sys.params.len() == 1 && !det.is_zero() {
        isolate_real_roots(&UniPoly::from_poly(&det)?, ROOT_WIDTH)?
    } else {
        Vec::new()
    };
    Ok(DetLocus {
        params: sys.params.names().to_vec(),
        degree: det.total_degree(),
        det,
        roots,
    })
}

/// Points on the zero curve of a two-parameter determinant: for each value of
/// parameter `fixed`, the isolated real roots in the other parameter.
pub fn curve_samples(det: &Polynomial, fixed: usize, values: &[Rational]) -> Result<Vec<(f64, f64)>> {
    let vars = det.vars();
    if vars.len() != 2 || fixed > 1 {
        return Err(Error::domain("curve sampling needs a two-parameter determinant"));
    }
    let name = vars.names()[fixed].clone();
    let mut out = Vec::new();
    for v in values {
        let subs = [(name.clone(), Polynomial::constant(vars, v.clone()))].into_iter().collect();
        let slice = det.substitute(&subs)?;
        if slice.is_zero() {
            continue;
        }
        for r in isolate_real_roots(&UniPoly::from_poly(&slice)?, ROOT_WIDTH)? {
            let x = crate::scalar::rational::to_f64(v);
            out.push(if fixed == 0 { (x, r.approx) } else { (r.approx, x) });
        }
    }
    Ok(out)
}
