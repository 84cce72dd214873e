//! The guarded-command modeling language (a strict PRISM subset).
//!
//! Model files use the `.gcm` extension and `//` line comments. A file
//! declares an `mdp`, constants (those without a defining expression are the
//! parameters of the model family), modules with bounded-integer or boolean
//! variables and labeled probabilistic commands, one named goal label, and
//! exactly one reachability property.

mod ast;
mod check;
mod expr;
mod instantiate;
mod lexer;
mod parser;
mod print;

pub use ast::{
    Assign, Command, ConstDecl, ConstType, Direction, LabelDecl, ModelAst, ModuleDecl,
    PropertySpec, Span, Update, VarDecl, VarDomain,
};
pub use check::{check_labels, Diagnostic, LabelDiagnostic, LabelKind, Severity};
pub use expr::{BinOp, EvalError, Expr, UnOp, Value};
pub use instantiate::{
    instantiate, ConcreteCommand, ConcreteModel, ConcreteModule, ConcreteUpdate, InstantiateError,
    ParamValuation, ParamValue, VarInfo,
};
pub use parser::{parse_model, ParseError};
pub use print::to_source;
