//! JSON description of a free dg algebra:
//! `{generators: [{name, weight, parity}], differential: {name: expr}, even_mode?}`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::algebra::{parse, Generator, GeneratorTable};
use crate::dg::DgAlgebra;
use crate::error::{Error, Result};

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlgebraDocument {
    #[serde(default)]
    pub generators: Vec<Generator>,
    #[serde(default)]
    pub differential: BTreeMap<String, String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub even_mode: Option<bool>,
}

impl AlgebraDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("malformed algebra document: {e}")))
    }

    pub fn table(&self) -> Result<GeneratorTable> {
        GeneratorTable::with_even_mode(self.generators.clone(), self.even_mode.unwrap_or(false))
    }

    /// Parses the differential and validates it.
    pub fn load(&self) -> Result<DgAlgebra> {
        let table = self.table()?;
        let mut named = Vec::with_capacity(self.differential.len());
        for (name, expr) in &self.differential {
            table.index_of(name)?;
            named.push((name.as_str(), parse(expr, &table)?));
        }
        DgAlgebra::from_named(&table, named)
    }

    pub fn of(a: &DgAlgebra) -> Self {
        let table = a.table();
        AlgebraDocument {
            generators: table.generators().to_vec(),
            differential: a
                .differential()
                .images()
                .iter()
                .enumerate()
                .filter(|(_, e)| !e.is_zero())
                .map(|(i, e)| (table.generator(i).name.clone(), e.to_string()))
                .collect(),
            even_mode: table.even_mode().then_some(true),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_even_disk() {
        let doc = AlgebraDocument::from_json(
            r#"{"generators":[{"name":"t","weight":0,"parity":"even"},{"name":"theta","weight":1,"parity":"odd"}],
                "differential":{"t":"theta"}}"#,
        )
        .unwrap();
        let a = doc.load().unwrap();
        assert_eq!(AlgebraDocument::of(&a), doc);
    }

    #[test]
    fn reports_bidegree_violation() {
        let doc = AlgebraDocument::from_json(
            r#"{"generators":[{"name":"x","weight":0,"parity":"even"}],"differential":{"x":"x"}}"#,
        )
        .unwrap();
        let err = doc.load().unwrap_err();
        assert!(err.to_string().starts_with("bidegree violation at generator x"), "{err}");
    }

    #[test]
    fn rejects_unknown_generator_and_fields() {
        let doc = AlgebraDocument::from_json(r#"{"generators":[],"differential":{"y":"0"}}"#).unwrap();
        assert_eq!(doc.load().unwrap_err(), Error::UnknownGenerator("y".into()));
        assert!(AlgebraDocument::from_json(r#"{"gens":[]}"#).is_err());
    }
}
