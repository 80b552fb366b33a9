//! Printed condition systems and component tables shipped as versioned JSON.

use std::collections::BTreeMap;

use serde::Deserialize;

use super::system::PolySystem;
use crate::error::{Error, Result};
use crate::lie::FamilyId;
use crate::scalar::{parse_poly, Polynomial, VarList};
use crate::tensor::{Tensor, Variance};

pub const FORMAT_VERSION: u32 = 1;

const FILES: [(&str, &str); 10] = [
    ("a2_curl", include_str!("../../data/reference/a2_curl.json")),
    ("a3_curl", include_str!("../../data/reference/a3_curl.json")),
    ("a2_contraction", include_str!("../../data/reference/a2_contraction.json")),
    ("a3_contraction", include_str!("../../data/reference/a3_contraction.json")),
    ("a2_vector", include_str!("../../data/reference/a2_vector.json")),
    ("a3_vector", include_str!("../../data/reference/a3_vector.json")),
    ("a2_sw", include_str!("../../data/reference/a2_sw.json")),
    ("a3_sw", include_str!("../../data/reference/a3_sw.json")),
    ("a2_w", include_str!("../../data/reference/a2_w.json")),
    ("a3_w", include_str!("../../data/reference/a3_w.json")),
];

#[derive(Debug, Deserialize)]
#[serde(deny_unknown_fields)]
struct RawReference {
    name: String,
    version: u32,
    kind: String,
    family: FamilyId,
    variables: Vec<String>,
    #[serde(default)]
    members: Vec<String>,
    #[serde(default)]
    components: BTreeMap<String, String>,
    #[serde(default)]
    antisymmetric_slots: Vec<usize>,
}

/// A printed polynomial system, members kept verbatim (not normalized).
#[derive(Clone, Debug)]
pub struct ReferenceSystem {
    pub name: String,
    pub family: FamilyId,
    pub vars: VarList,
    pub members: Vec<Polynomial>,
}

impl ReferenceSystem {
    pub fn system(&self) -> PolySystem {
        PolySystem::new(&self.vars, self.members.iter().cloned()).expect("reference members share variables")
    }
}

/// A printed component table, completed by its antisymmetry.
#[derive(Clone, Debug)]
pub struct ReferenceTensor {
    pub name: String,
    pub family: FamilyId,
    pub vars: VarList,
    pub tensor: Tensor<Polynomial>,
}

fn raw(name: &str) -> Result<RawReference> {
    let text = FILES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, t)| *t)
        .ok_or_else(|| Error::input(format!("no reference named {name:?}")))?;
    let r: RawReference = serde_json::from_str(text).map_err(|e| Error::input(format!("reference {name}: {e}")))?;
    if r.version != FORMAT_VERSION || r.name != name {
        return Err(Error::input(format!("reference {name}: unexpected version or name")));
    }
    Ok(r)
}

pub fn names() -> impl Iterator<Item = &'static str> {
    FILES.iter().map(|(n, _)| *n)
}

pub fn system(name: &str) -> Result<ReferenceSystem> {
    let r = raw(name)?;
    if r.kind != "system" {
        return Err(Error::input(format!("reference {name} is not a system")));
    }
    let vars = VarList::new(&r.variables);
    let members = r.members.iter().map(|m| parse_poly(m, &vars)).collect::<Result<_>>()?;
    Ok(ReferenceSystem {
        name: r.name,
        family: r.family,
        vars,
        members,
    })
}

pub fn tensor(name: &str) -> Result<ReferenceTensor> {
    let r = raw(name)?;
    if r.kind != "tensor" {
        return Err(Error::input(format!("reference {name} is not a tensor")));
    }
    let vars = VarList::new(&r.variables);
    let rank = r.components.keys().next().map_or(0, String::len);
    let mut t = Tensor::zeros(3, &vec![Variance::Co; rank]);
    let (a, b) = match r.antisymmetric_slots[..] {
        [a, b] => (a - 1, b - 1),
        _ => return Err(Error::input(format!("reference {name}: expected two antisymmetric slots"))),
    };
    for (key, text) in &r.components {
        let ix: Vec<usize> = key
            .chars()
            .map(|c| c.to_digit(10).map(|d| d as usize - 1))
            .collect::<Option<_>>()
            .filter(|ix: &Vec<usize>| ix.len() == rank && ix.iter().all(|&i| i < 3))
            .ok_or_else(|| Error::input(format!("reference {name}: bad index {key:?}")))?;
        let p = parse_poly(text, &vars)?;
        let mut swapped = ix.clone();
        swapped.swap(a, b);
        t.set(&swapped, p.neg());
        t.set(&ix, p);
    }
    Ok(ReferenceTensor {
        name: r.name,
        family: r.family,
        vars,
        tensor: t,
    })
}
