//! Instance ingestion, command dispatch, reports and random instances.

pub mod commands;
pub mod generate;
pub mod report;
pub mod resolve;
pub mod schema;

use serde_json::{json, Value};

pub use commands::{run_command, COMMANDS, ROUTES};
pub use generate::{generate_instance, GeneratorConfig, GeneratorKind};
pub use resolve::{Caps, Resolved};
pub use schema::{InstanceDocument, REPORT_VERSION, SCHEMA_VERSION};

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec, PrimeField, Rationals};

/// Resolves the document over its field and hands the objects to `f`.
pub trait WithResolved {
    type Output;
    fn call<F: Field>(self, r: Resolved<F>) -> Result<Self::Output>;
}

pub fn with_resolved<W: WithResolved>(
    doc: &InstanceDocument,
    caps: Caps,
    w: W,
) -> Result<W::Output> {
    let spec = FieldSpec::parse(&doc.field).map_err(|e| e.at("/field"))?;
    match spec {
        FieldSpec::Prime(p) => w.call(Resolved::new(PrimeField::new(p as u64)?, doc, caps)?),
        FieldSpec::Rational => w.call(Resolved::new(Rationals, doc, caps)?),
    }
}

struct Run<'a>(&'a schema::CommandSpec);

impl WithResolved for Run<'_> {
    type Output = Value;
    fn call<F: Field>(self, r: Resolved<F>) -> Result<Value> {
        run_command(&r, self.0)
    }
}

/// Runs the document's command and wraps the result with an echo of the
/// command and field.
pub fn run_document(doc: &InstanceDocument, caps: Caps) -> Result<Value> {
    let result = with_resolved(doc, caps, Run(&doc.command))?;
    Ok(json!({
        "schema": REPORT_VERSION,
        "field": FieldSpec::parse(&doc.field)?.to_string(),
        "command": doc.command,
        "result": result,
    }))
}

/// The report for an error, with the exit code the CLI uses.
pub fn error_report(doc: Option<&InstanceDocument>, err: &Error) -> Value {
    let (kind, pointer) = match err {
        Error::Validation { pointer, .. } => ("validation", Some(pointer.clone())),
        Error::Parse(_) => ("parse", None),
        Error::CapExceeded { .. } => ("cap-exceeded", None),
        Error::TheoremFalsified(_) | Error::Disagreement(_) => ("theorem-falsified", None),
        _ => ("error", None),
    };
    json!({
        "schema": REPORT_VERSION,
        "command": doc.map(|d| &d.command),
        "error": {
            "kind": kind,
            "message": err.to_string(),
            "pointer": pointer,
            "exit_code": err.exit_code(),
        },
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn doc(src: &str) -> InstanceDocument {
        InstanceDocument::from_json(&src.replace("SCHEMA", SCHEMA_VERSION)).unwrap()
    }

    fn result(src: &str) -> Value {
        run_document(&doc(src), Caps::default()).unwrap()["result"].clone()
    }

    #[test]
    fn ring_only_command() {
        let r = result(
            r#"{"schema":"SCHEMA","field":"GF(101)",
                "rings":{"A":{"vars":["x","y"],"truncation":3}},
                "command":{"name":"edim"}}"#,
        );
        assert_eq!(r["edim"], 2);
        assert_eq!(r["dim"], 6);
    }

    #[test]
    fn misspelled_variable_is_located() {
        let d = doc(r#"{"schema":"SCHEMA","field":"GF(101)",
                "rings":{"A":{"vars":["x","y"],"relations":["x^2 - yy"],"truncation":3}},
                "command":{"name":"edim"}}"#);
        let err = run_document(&d, Caps::default()).unwrap_err();
        match err {
            Error::Validation { pointer, message } => {
                assert_eq!(pointer, "/rings/A/relations/0");
                assert!(
                    message.contains("`yy`") && message.contains("column 7"),
                    "{message}"
                );
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(
            run_document(&d, Caps::default()).unwrap_err().exit_code(),
            1
        );
    }

    #[test]
    fn strong_indep_on_the_line() {
        let src = r#"{"schema":"SCHEMA","field":"GF(101)",
                "rings":{"A":{"vars":["x"],"truncation":8}},
                "command":{"name":"strong-indep","params":{"ideal":["IDEAL"]}}}"#;
        let r3 = result(&src.replace("IDEAL", "x^3"));
        assert_eq!(r3["strongly_independent"], false);
        assert_eq!(r3["failing_power"], 2);
        let r4 = result(&src.replace("IDEAL", "x^4"));
        assert_eq!(r4["strongly_independent"], true);
    }

    #[test]
    fn zero_sequence_gives_binomial_homology() {
        let r = result(
            r#"{"schema":"SCHEMA","field":"GF(7)",
                "rings":{"A":{"vars":["x"],"truncation":3}},
                "command":{"name":"koszul-homology","params":{"sequence":["0","0","0"]}}}"#,
        );
        let dims: Vec<u64> = r["homology_dims"]
            .as_array()
            .unwrap()
            .iter()
            .map(|v| v.as_u64().unwrap())
            .collect();
        assert_eq!(dims, vec![3, 9, 9, 3]);
    }

    #[test]
    fn caps_are_enforced() {
        let d = doc(r#"{"schema":"SCHEMA","field":"GF(101)",
                "rings":{"A":{"vars":["x","y","z"],"truncation":6}},
                "command":{"name":"edim"}}"#);
        let caps = Caps {
            max_dim: 20,
            ..Caps::default()
        };
        assert_eq!(run_document(&d, caps).unwrap_err().exit_code(), 2);
    }
}
