use std::path::Path;

use serde::{Deserialize, Serialize};

use super::finite::{FiniteGroup, Group, DEFAULT_CAP};
use crate::error::{Error, Result};
use crate::primitives::GroupElement;

/// A group definition file: generators plus an optional closure cap.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GroupDefinition {
    #[serde(default)]
    pub name: String,
    pub generators: Vec<GroupElement>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub cap: Option<usize>,
}

impl GroupDefinition {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        GroupDefinition::from_json(&text)
    }

    /// Closes the generators. `cap` overrides the file's cap.
    pub fn build(&self, cap: Option<usize>) -> Result<Group> {
        let cap = cap.or(self.cap).unwrap_or(DEFAULT_CAP);
        Ok(FiniteGroup::closure(&self.generators, cap)?.with_name(self.name.clone()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_and_builds() {
        let def = GroupDefinition::from_json(
            r#"{"name": "S3", "generators": [
                {"kind": "perm", "images": [1, 0, 2]},
                {"kind": "perm", "images": [1, 2, 0]}], "cap": 10}"#,
        )
        .unwrap();
        let g = def.build(None).unwrap();
        assert_eq!(g.order(), 6);
        assert_eq!(g.name(), "S3");
        assert!(matches!(def.build(Some(5)), Err(Error::OrderCapExceeded { .. })));
        let again = GroupDefinition::from_json(&serde_json::to_string(&def).unwrap()).unwrap();
        assert_eq!(again.build(None).unwrap().digest(), g.digest());
    }

    #[test]
    fn rejects_bad_literals() {
        assert!(GroupDefinition::from_json(r#"{"generators": [{"kind": "perm", "images": [0, 0]}]}"#)
            .is_err());
        assert!(GroupDefinition::from_json(r#"{"generators": []}"#)
            .unwrap()
            .build(None)
            .is_err());
    }
}
