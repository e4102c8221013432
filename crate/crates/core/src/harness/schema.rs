//! Instance documents: JSON with polynomials written as strings.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const SCHEMA_VERSION: &str = "indepforge/instance/1";
pub const REPORT_VERSION: &str = "indepforge/report/1";

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct InstanceDocument {
    pub schema: String,
    /// `"GF(p)"` or `"QQ"`.
    pub field: String,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub rings: BTreeMap<String, RingSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub morphisms: BTreeMap<String, MorphismSpec>,
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub modules: BTreeMap<String, ModuleSpec>,
    pub command: CommandSpec,
}

/// `k[vars]/(relations + (vars)^truncation)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RingSpec {
    pub vars: Vec<String>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub relations: Vec<String>,
    pub truncation: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MorphismSpec {
    pub source: String,
    pub target: String,
    /// Images of the source variables, written in the target's variables.
    pub images: Vec<String>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ModuleKind {
    /// `A^rank` modulo the span of `columns`.
    Cokernel,
    /// `A/I` with `I` generated by `ideal`.
    QuotientIdeal,
    /// `A^rank`.
    Free,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ModuleSpec {
    pub kind: ModuleKind,
    pub ring: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub rank: Option<usize>,
    /// Relation columns, each with `rank` entries.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub columns: Vec<Vec<String>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub ideal: Vec<String>,
    /// Restrict scalars along this morphism, whose target must be `ring`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub restrict: Option<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CommandSpec {
    pub name: String,
    #[serde(default)]
    pub params: Params,
}

/// Parameters shared by all commands; each command reads what it needs.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "kebab-case")]
pub struct Params {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ring: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub module: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub morphism: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sequence: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ideal: Option<Vec<String>>,
    /// The second sequence of a transition `x = uW`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub u: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta: Option<usize>,
    /// Ordered minimal generators of the maximal ideal of the base.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub route: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub length_bound: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub mode: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub coefficient_bound: Option<u64>,
}

impl InstanceDocument {
    pub fn from_json(src: &str) -> Result<Self> {
        let doc: InstanceDocument =
            serde_json::from_str(src).map_err(|e| Error::validation("", format!("{e}")))?;
        if doc.schema != SCHEMA_VERSION {
            return Err(Error::validation(
                "/schema",
                format!("expected `{SCHEMA_VERSION}`, found `{}`", doc.schema),
            ));
        }
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("documents serialize");
        s.push('\n');
        s
    }
}

/// `/a/b` with `~` and `/` escaped as JSON pointers require.
pub fn pointer(parts: &[&str]) -> String {
    parts
        .iter()
        .map(|p| format!("/{}", p.replace('~', "~0").replace('/', "~1")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pointer_escapes() {
        assert_eq!(pointer(&["rings", "a/b", "x~"]), "/rings/a~1b/x~0");
    }

    #[test]
    fn version_is_checked() {
        let err = InstanceDocument::from_json(
            r#"{"schema":"other","field":"GF(5)","command":{"name":"edim"}}"#,
        )
        .unwrap_err();
        assert!(matches!(err, Error::Validation { ref pointer, .. } if pointer == "/schema"));
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let src = format!(
            r#"{{"schema":"{SCHEMA_VERSION}","field":"GF(5)","command":{{"name":"edim","params":{{"rnig":"A"}}}}}}"#
        );
        assert!(InstanceDocument::from_json(&src).is_err());
    }
}
