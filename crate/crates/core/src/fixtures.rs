//! The JSON files shipped under `fixtures/`, generated from the built-in
//! constructors so that the repository copies can be checked for drift.

use std::path::Path;

use crate::algebra::{Element, SuperAlgebra};
use crate::catalog::{make_dt, make_k10_table, make_k10_tensor, make_k3};
use crate::error::{Error, Result};
use crate::linear::int;
use crate::morphism::table_tensor_iso;
use crate::subalgebra::{maximal_subalgebra, MaximalKind};

/// `K10` with the `f`-coefficient of `p1·p2` and `p2·p1` negated. Still graded
/// and supercommutative, but no longer Jordan.
pub fn make_broken_k10() -> SuperAlgebra {
    let k10 = make_k10_table();
    let (p1, p2, f) = (6, 7, 5);
    SuperAlgebra::from_fn("K10-broken", 6, 4, k10.labels().to_vec(), |i, j| {
        let mut c = Element::from_sparse(10, k10.basis_product(i, j)).into_coords();
        if (i, j) == (p1, p2) || (i, j) == (p2, p1) {
            c[f] = -c[f].clone();
        }
        c
    })
    .expect("same shape as K10")
}

/// `(file name, contents)` for every shipped fixture.
pub fn generate() -> Result<Vec<(String, String)>> {
    let k10 = make_k10_table();
    let mut out = vec![
        ("k10.json".to_string(), k10.to_json() + "\n"),
        ("k10-tensor.json".to_string(), make_k10_tensor().to_json() + "\n"),
        ("k3.json".to_string(), make_k3().to_json() + "\n"),
        ("dt-minus3.json".to_string(), make_dt(&int(-3))?.to_json() + "\n"),
        ("broken.json".to_string(), make_broken_k10().to_json() + "\n"),
        ("k10-iso.json".to_string(), pretty(&table_tensor_iso()?.to_map_file())?),
    ];
    for kind in MaximalKind::ALL {
        let s = maximal_subalgebra(kind)?;
        out.push((format!("maximal-{kind}.json"), pretty(&s.to_file(&k10))?));
    }
    Ok(out)
}

fn pretty<T: serde::Serialize>(value: &T) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

pub fn read(path: &Path) -> Result<String> {
    std::fs::read_to_string(path)
        .map_err(|source| Error::Io { path: path.display().to_string(), source })
}

pub fn write_all(dir: &Path) -> Result<Vec<String>> {
    std::fs::create_dir_all(dir)
        .map_err(|source| Error::Io { path: dir.display().to_string(), source })?;
    let mut written = Vec::new();
    for (name, text) in generate()? {
        let path = dir.join(&name);
        std::fs::write(&path, text)
            .map_err(|source| Error::Io { path: path.display().to_string(), source })?;
        written.push(name);
    }
    Ok(written)
}

/// Names of fixtures in `dir` whose contents differ from the generated ones.
/// A missing file is an I/O error.
pub fn stale(dir: &Path) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for (name, text) in generate()? {
        if read(&dir.join(&name))? != text {
            out.push(name);
        }
    }
    Ok(out)
}
