//! Abstract syntax of parsed model files. Every declaration carries the
//! source position it came from.

use super::expr::Expr;
use serde::Serialize;

/// Line/column source position (1-based).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Span {
    pub line: u32,
    pub col: u32,
}

impl Span {
    pub const ZERO: Span = Span { line: 0, col: 0 };
}

impl std::fmt::Display for Span {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ConstType {
    Int,
    Double,
    Bool,
}

impl std::fmt::Display for ConstType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ConstType::Int => write!(f, "int"),
            ConstType::Double => write!(f, "double"),
            ConstType::Bool => write!(f, "bool"),
        }
    }
}

/// `const <type> name [= expr];` — a constant without a defining expression
/// is a parameter of the model family.
#[derive(Debug, Clone)]
pub struct ConstDecl {
    pub name: String,
    pub ty: ConstType,
    pub value: Option<Expr>,
    pub span: Span,
}

#[derive(Debug, Clone)]
pub enum VarDomain {
    /// `[lo..hi]` with bound expressions over constants.
    Bounded { lo: Expr, hi: Expr },
    Bool,
}

/// `name : [lo..hi] init expr;` or `name : bool init expr;`
#[derive(Debug, Clone)]
pub struct VarDecl {
    pub name: String,
    pub domain: VarDomain,
    pub init: Expr,
    pub span: Span,
}

/// One assignment `(var' = expr)` inside an update.
#[derive(Debug, Clone)]
pub struct Assign {
    pub var: String,
    pub value: Expr,
    pub span: Span,
}

/// One weighted branch of a command: `prob : (x'=e) & (y'=e)`.
/// An empty assignment list (written `true`) leaves the state unchanged.
#[derive(Debug, Clone)]
pub struct Update {
    pub prob: Expr,
    pub assigns: Vec<Assign>,
}

/// `[label] guard -> p1:(updates) + ... ;`
#[derive(Debug, Clone)]
pub struct Command {
    pub label: String,
    pub guard: Expr,
    pub updates: Vec<Update>,
    pub span: Span,
}

#[derive(Debug, Clone)]
pub struct ModuleDecl {
    pub name: String,
    pub variables: Vec<VarDecl>,
    pub commands: Vec<Command>,
    pub span: Span,
}

/// `label "name" = expr;`
#[derive(Debug, Clone)]
pub struct LabelDecl {
    pub name: String,
    pub expr: Expr,
    pub span: Span,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Direction {
    Max,
    Min,
}

impl std::fmt::Display for Direction {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Direction::Max => write!(f, "max"),
            Direction::Min => write!(f, "min"),
        }
    }
}

/// `property Pmax|Pmin reach "label";`
#[derive(Debug, Clone)]
pub struct PropertySpec {
    pub direction: Direction,
    pub target: String,
    pub span: Span,
}

/// A parsed model file.
#[derive(Debug, Clone)]
pub struct ModelAst {
    pub constants: Vec<ConstDecl>,
    pub modules: Vec<ModuleDecl>,
    pub labels: Vec<LabelDecl>,
    pub property: PropertySpec,
}

impl ModelAst {
    /// The parameter space: names of constants without a defining expression,
    /// in declaration order.
    pub fn parameters(&self) -> Vec<&str> {
        self.constants
            .iter()
            .filter(|c| c.value.is_none())
            .map(|c| c.name.as_str())
            .collect()
    }

    /// The goal label expression referenced by the property.
    pub fn goal_label(&self) -> &LabelDecl {
        self.labels
            .iter()
            .find(|l| l.name == self.property.target)
            .expect("parser guarantees the property target exists")
    }

    /// All variable declarations, in file order, with their owning module index.
    pub fn all_variables(&self) -> impl Iterator<Item = (usize, &VarDecl)> {
        self.modules
            .iter()
            .enumerate()
            .flat_map(|(i, m)| m.variables.iter().map(move |v| (i, v)))
    }
}
