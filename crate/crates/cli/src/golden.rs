//! Canonical JSON dumps of the model data. Every map is ordered and every
//! coefficient is an exact string, so output is byte-identical across runs.

use std::collections::BTreeMap;

use clap::ValueEnum;
use f4wb::liealg::{F4Model, LieAlgebra};
use f4wb::rootdata::f4;
use f4wb::uea::{IwasawaJson, Workbench};
use f4wb::Rational;
use serde::Serialize;

use crate::{to_json, Failure};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Target {
    StructureConstants,
    Rootdata,
    Omega,
}

impl Target {
    pub const ALL: [Target; 3] = [Target::StructureConstants, Target::Rootdata, Target::Omega];

    pub fn file_name(self) -> &'static str {
        match self {
            Target::StructureConstants => "structure-constants.json",
            Target::Rootdata => "rootdata.json",
            Target::Omega => "omega.json",
        }
    }
}

#[derive(Serialize)]
struct Bracket {
    x: String,
    y: String,
    value: BTreeMap<String, Rational>,
}

#[derive(Serialize)]
struct Table {
    dim: usize,
    basis: Vec<String>,
    /// Nonzero `[x, y]` for `x` before `y` in the basis order.
    brackets: Vec<Bracket>,
}

fn table(alg: &LieAlgebra<Rational>) -> Table {
    let n = alg.dim();
    let brackets = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter_map(|(i, j)| {
            let v = alg.bracket_basis(i, j);
            (!v.is_empty()).then(|| Bracket {
                x: alg.name(i).to_owned(),
                y: alg.name(j).to_owned(),
                value: v.iter().map(|(k, c)| (alg.name(*k).to_owned(), c.clone())).collect(),
            })
        })
        .collect();
    Table { dim: n, basis: alg.names().to_vec(), brackets }
}

#[derive(Serialize)]
struct StructureConstants {
    chevalley: Table,
    iwasawa: Table,
    k: Table,
}

#[derive(Serialize)]
struct RootData {
    root_count: usize,
    roots: Vec<Vec<Rational>>,
    #[serde(flatten)]
    summary: f4::F4Dump,
}

#[derive(Serialize)]
struct OmegaGolden {
    z_degree: usize,
    scale: Rational,
    omega1: Rational,
    casimir_m_coeff: Rational,
    constant: Rational,
    #[serde(flatten)]
    element: IwasawaJson,
}

fn model() -> Result<F4Model, Failure> {
    F4Model::build().map_err(|e| Failure::Model(e.to_string()))
}

pub fn emit(target: Target) -> Result<String, Failure> {
    Ok(match target {
        Target::StructureConstants => {
            let m = model()?;
            to_json(&StructureConstants { chevalley: table(&m.ch.alg), iwasawa: table(&m.g), k: table(&m.k) })
        }
        Target::Rootdata => {
            let rs = f4::f4();
            let roots = f4::all_roots(&rs);
            to_json(&RootData { root_count: roots.len(), roots, summary: f4::dump() })
        }
        Target::Omega => {
            let wb = Workbench::new(model()?);
            let om = wb.omega().map_err(Failure::Model)?;
            to_json(&OmegaGolden {
                z_degree: om.omega.degree().unwrap_or(0),
                scale: om.scale,
                omega1: om.omega1,
                casimir_m_coeff: om.casimir_coeff,
                constant: om.constant,
                element: om.omega.to_json(wb.names()),
            })
        }
    })
}
