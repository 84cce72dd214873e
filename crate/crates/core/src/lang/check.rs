//! Label analysis. Action labels double as the classification targets of the
//! learning phase, so a label shared by several modules deserves a note: it
//! marks a synchronized action (standard guarded-command semantics), not an
//! independent one.

use super::ast::{ModelAst, Span};
use serde::Serialize;
use std::collections::BTreeMap;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum LabelKind {
    /// The label appears in two or more modules and synchronizes them.
    Synchronizing,
    /// Reserved for models that declare a label local-unique; cross-module
    /// reuse of such a label would be a modeling error. The current language
    /// has no such declaration, so this kind is never emitted.
    Collision,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct LabelDiagnostic {
    pub label: String,
    pub modules: Vec<String>,
    pub kind: LabelKind,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Severity {
    Info,
    Warning,
    Error,
}

/// Structured diagnostic record, one JSON object per line when serialized.
#[derive(Debug, Clone, Serialize)]
pub struct Diagnostic {
    pub severity: Severity,
    pub code: &'static str,
    pub line: u32,
    pub column: u32,
    pub message: String,
}

impl Diagnostic {
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("diagnostics always serialize")
    }
}

/// Report every label used by commands of two or more distinct modules.
/// Labels confined to one module produce no diagnostic.
pub fn check_labels(ast: &ModelAst) -> Vec<LabelDiagnostic> {
    let mut owners: BTreeMap<&str, (Vec<&str>, Span)> = BTreeMap::new();
    for module in &ast.modules {
        for cmd in &module.commands {
            let entry = owners
                .entry(cmd.label.as_str())
                .or_insert_with(|| (Vec::new(), cmd.span));
            if !entry.0.contains(&module.name.as_str()) {
                entry.0.push(module.name.as_str());
            }
        }
    }
    owners
        .into_iter()
        .filter(|(_, (modules, _))| modules.len() >= 2)
        .map(|(label, (modules, span))| LabelDiagnostic {
            label: label.to_string(),
            modules: modules.into_iter().map(String::from).collect(),
            kind: LabelKind::Synchronizing,
            span,
        })
        .collect()
}

impl LabelDiagnostic {
    pub fn to_diagnostic(&self) -> Diagnostic {
        Diagnostic {
            severity: Severity::Info,
            code: "sync-label",
            line: self.span.line,
            column: self.span.col,
            message: format!(
                "label `{}` synchronizes modules {}",
                self.label,
                self.modules.join(", ")
            ),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::parser::parse_model;
    use super::*;

    #[test]
    fn single_module_labels_are_silent() {
        let ast = parse_model(
            "mdp\nmodule one\n x : [0..1] init 0;\n [phil_1_line_4] x=0 -> 1:(x'=1);\nendmodule\nlabel \"g\" = x=1;\nproperty Pmax reach \"g\";",
        )
        .unwrap();
        assert!(check_labels(&ast).is_empty());
    }

    #[test]
    fn cross_module_label_is_synchronizing() {
        let ast = parse_model(
            "mdp\nmodule one\n x : [0..1] init 0;\n [tick] x=0 -> 1:(x'=1);\nendmodule\nmodule two\n y : [0..1] init 0;\n [tick] y=0 -> 1:(y'=1);\nendmodule\nlabel \"g\" = x=1;\nproperty Pmax reach \"g\";",
        )
        .unwrap();
        let diags = check_labels(&ast);
        assert_eq!(diags.len(), 1);
        assert_eq!(diags[0].label, "tick");
        assert_eq!(diags[0].kind, LabelKind::Synchronizing);
        assert_eq!(diags[0].modules, vec!["one", "two"]);
        let json = diags[0].to_diagnostic().to_json_line();
        assert!(json.contains("\"severity\":\"info\""));
    }

    #[test]
    fn empty_model_has_no_diagnostics() {
        let ast = parse_model("mdp\nmodule m\n x : [0..1] init 0;\nendmodule\nlabel \"g\" = x=1;\nproperty Pmax reach \"g\";").unwrap();
        assert!(check_labels(&ast).is_empty());
    }
}
