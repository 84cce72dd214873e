//! Turning a parsed model plus a parameter valuation into a concrete,
//! fully-folded model: constants become literals, variable references become
//! state-vector indices, domains become finite integer ranges.

use super::ast::*;
use super::expr::{eval, EvalError, Expr, Value};
use super::print::print_expr;
use crate::rational::{self, Rat};
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};
use std::collections::{BTreeMap, BTreeSet, HashMap};
use thiserror::Error;

/// A parameter value: integer or exact rational.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum ParamValue {
    Int(i64),
    Rational(Rat),
}

impl ParamValue {
    fn to_value(&self, ty: ConstType, name: &str) -> Result<Value, InstantiateError> {
        match (ty, self) {
            (ConstType::Int, ParamValue::Int(n)) => Ok(Value::Int(*n)),
            (ConstType::Int, ParamValue::Rational(r)) if r.is_integer() => {
                Ok(Value::Int(*r.numer()))
            }
            (ConstType::Double, ParamValue::Int(n)) => Ok(Value::Rational(Rat::from_integer(*n))),
            (ConstType::Double, ParamValue::Rational(r)) => Ok(Value::Rational(*r)),
            (ConstType::Bool, ParamValue::Int(0)) => Ok(Value::Bool(false)),
            (ConstType::Bool, ParamValue::Int(1)) => Ok(Value::Bool(true)),
            _ => Err(InstantiateError::ParameterType {
                name: name.to_string(),
                expected: ty,
            }),
        }
    }
}

impl std::fmt::Display for ParamValue {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            ParamValue::Int(n) => write!(f, "{n}"),
            ParamValue::Rational(r) => write!(f, "{}/{}", r.numer(), r.denom()),
        }
    }
}

impl Serialize for ParamValue {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ParamValue::Int(n) => serializer.serialize_i64(*n),
            ParamValue::Rational(r) => serializer.serialize_f64(rational::to_f64(*r)),
        }
    }
}

impl<'de> Deserialize<'de> for ParamValue {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let number = serde_json::Number::deserialize(deserializer)?;
        ParamValue::parse(&number.to_string())
            .ok_or_else(|| serde::de::Error::custom(format!("not a usable number: {number}")))
    }
}

impl ParamValue {
    /// Parse `"20"` or `"0.01"`. Scientific notation is rejected so values
    /// stay exact.
    pub fn parse(text: &str) -> Option<ParamValue> {
        if let Ok(n) = text.parse::<i64>() {
            return Some(ParamValue::Int(n));
        }
        let (sign, body) = match text.strip_prefix('-') {
            Some(rest) => (-1i64, rest),
            None => (1i64, text),
        };
        rational::parse_decimal(body).map(|r| ParamValue::Rational(r * Rat::from_integer(sign)))
    }
}

/// Assigns every parameter of a model exactly once.
#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize, PartialOrd, Ord)]
#[serde(transparent)]
pub struct ParamValuation(pub BTreeMap<String, ParamValue>);

impl ParamValuation {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, name: &str, value: ParamValue) -> Self {
        self.0.insert(name.to_string(), value);
        self
    }

    pub fn with_int(self, name: &str, value: i64) -> Self {
        self.with(name, ParamValue::Int(value))
    }

    pub fn get(&self, name: &str) -> Option<&ParamValue> {
        self.0.get(name)
    }

    /// Parse `"k=20,x=0.01"` (comma- or space-separated pairs).
    pub fn parse(text: &str) -> Option<Self> {
        let mut out = ParamValuation::new();
        for pair in text.split([',', ' ']).filter(|p| !p.is_empty()) {
            let (name, value) = pair.split_once('=')?;
            out.0
                .insert(name.trim().to_string(), ParamValue::parse(value.trim())?);
        }
        Some(out)
    }
}

impl std::fmt::Display for ParamValuation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.0.is_empty() {
            return write!(f, "-");
        }
        let parts: Vec<String> = self.0.iter().map(|(k, v)| format!("{k}={v}")).collect();
        write!(f, "{}", parts.join(","))
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum InstantiateError {
    #[error("parameter `{name}` is not bound by the valuation")]
    UnboundParameter { name: String },
    #[error("valuation binds `{name}`, which is not a parameter of the model")]
    UnexpectedParameter { name: String },
    #[error("parameter `{name}` must be of type {expected}")]
    ParameterType { name: String, expected: ConstType },
    #[error("{span}: domain of `{name}` is empty after folding ({lo}..{hi})")]
    EmptyDomain {
        name: String,
        lo: i64,
        hi: i64,
        span: Span,
    },
    #[error("{span}: initial value {value} of `{name}` lies outside [{lo}..{hi}]")]
    InitOutOfDomain {
        name: String,
        value: i64,
        lo: i64,
        hi: i64,
        span: Span,
    },
    #[error("{span}: probability {value} lies outside [0, 1]")]
    ProbabilityOutOfRange { value: f64, span: Span },
    #[error("{span}: update probabilities sum to {sum}, expected 1")]
    ProbabilitySum { sum: f64, span: Span },
    #[error("{span}: domain bound must be an integer expression over constants")]
    NonConstantBound { span: Span },
    #[error("constant `{name}` has type {expected} but its expression evaluates to {found}")]
    ConstantType {
        name: String,
        expected: ConstType,
        found: &'static str,
    },
    #[error(transparent)]
    Eval(#[from] EvalError),
}

/// One entry of the structured-state schema.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct VarInfo {
    pub name: String,
    pub lo: i64,
    pub hi: i64,
    pub init: i64,
    pub is_bool: bool,
    /// Index of the owning module.
    pub module: usize,
    /// The domain as declared (before folding), used to detect schema
    /// conflicts when datasets from different models are merged.
    pub declared_domain: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcreteUpdate {
    pub prob: Expr,
    /// Assignments as (global variable index, folded expression).
    pub assigns: Vec<(usize, Expr)>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcreteCommand {
    pub label: String,
    pub module: usize,
    pub guard: Expr,
    pub updates: Vec<ConcreteUpdate>,
    pub span: Span,
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConcreteModule {
    pub name: String,
    /// Indices into `ConcreteModel::commands`, in declaration order.
    pub commands: Vec<usize>,
}

/// A fully instantiated model: every constant folded, every variable resolved
/// to its position in the state vector.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcreteModel {
    pub schema: Vec<VarInfo>,
    pub modules: Vec<ConcreteModule>,
    pub commands: Vec<ConcreteCommand>,
    /// Labels appearing in commands of two or more modules, i.e. the
    /// synchronizing actions. Groups are in first-appearance order; each
    /// group lists (module index, command indices) per participant.
    pub sync_groups: Vec<(String, Vec<(usize, Vec<usize>)>)>,
    pub goal: Expr,
    pub goal_name: String,
    pub direction: Direction,
    /// The valuation this instance was built from.
    pub valuation: ParamValuation,
}

impl ConcreteModel {
    pub fn initial_state(&self) -> Vec<i64> {
        self.schema.iter().map(|v| v.init).collect()
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.schema.iter().position(|v| v.name == name)
    }

    /// True if `label` synchronizes several modules.
    pub fn is_sync_label(&self, label: &str) -> bool {
        self.sync_groups.iter().any(|(l, _)| l == label)
    }

    /// Evaluate a folded expression in a state.
    pub fn eval_in_state(&self, expr: &Expr, state: &[i64]) -> Result<Value, EvalError> {
        eval(expr, &|name| {
            debug_assert!(false, "unresolved identifier `{name}` after folding");
            None
        }, &|idx| {
            if self.schema[idx].is_bool {
                Value::Bool(state[idx] != 0)
            } else {
                Value::Int(state[idx])
            }
        })
    }
}

/// Instantiate `ast` with valuation `v`. The valuation must cover the
/// parameter space exactly.
pub fn instantiate(ast: &ModelAst, v: &ParamValuation) -> Result<ConcreteModel, InstantiateError> {
    let params: BTreeSet<&str> = ast.parameters().into_iter().collect();
    for name in &params {
        if v.get(name).is_none() {
            return Err(InstantiateError::UnboundParameter {
                name: name.to_string(),
            });
        }
    }
    for name in v.0.keys() {
        if !params.contains(name.as_str()) {
            return Err(InstantiateError::UnexpectedParameter { name: name.clone() });
        }
    }

    // Fold constants in declaration order; each may reference earlier ones.
    let mut consts: HashMap<String, Value> = HashMap::new();
    for decl in &ast.constants {
        let value = match &decl.value {
            Some(expr) => {
                let folded = fold(expr, &consts, &HashMap::new())?;
                let value = eval_const(&folded)?;
                coerce_const(value, decl.ty, &decl.name)?
            }
            None => v.get(&decl.name).unwrap().to_value(decl.ty, &decl.name)?,
        };
        consts.insert(decl.name.clone(), value);
    }

    // Build the schema in declaration order.
    let mut schema: Vec<VarInfo> = Vec::new();
    let mut var_index: HashMap<String, usize> = HashMap::new();
    for (module_idx, var) in ast.all_variables() {
        let (lo, hi, declared) = match &var.domain {
            VarDomain::Bool => (0, 1, "bool".to_string()),
            VarDomain::Bounded { lo, hi } => {
                let lo_v = eval_const_int(lo, &consts)?;
                let hi_v = eval_const_int(hi, &consts)?;
                let declared = format!("[{}..{}]", print_expr(lo), print_expr(hi));
                (lo_v, hi_v, declared)
            }
        };
        if lo > hi {
            return Err(InstantiateError::EmptyDomain {
                name: var.name.clone(),
                lo,
                hi,
                span: var.span,
            });
        }
        let init_folded = fold(&var.init, &consts, &HashMap::new())?;
        let init = match eval_const(&init_folded)? {
            Value::Int(n) => n,
            Value::Bool(b) => b as i64,
            Value::Rational(_) => {
                return Err(EvalError::Type {
                    message: format!("initial value of `{}` must be int or bool", var.name),
                    span: var.span,
                }
                .into())
            }
        };
        if init < lo || init > hi {
            return Err(InstantiateError::InitOutOfDomain {
                name: var.name.clone(),
                value: init,
                lo,
                hi,
                span: var.span,
            });
        }
        var_index.insert(var.name.clone(), schema.len());
        schema.push(VarInfo {
            name: var.name.clone(),
            lo,
            hi,
            init,
            is_bool: matches!(var.domain, VarDomain::Bool),
            module: module_idx,
            declared_domain: declared,
        });
    }

    // Fold commands.
    let mut commands: Vec<ConcreteCommand> = Vec::new();
    let mut modules: Vec<ConcreteModule> = Vec::new();
    for (module_idx, module) in ast.modules.iter().enumerate() {
        let mut indices = Vec::new();
        for cmd in &module.commands {
            let guard = fold(&cmd.guard, &consts, &var_index)?;
            expect_type(&guard, Ty::Bool, &schema, cmd.span)?;
            let mut updates = Vec::new();
            for update in &cmd.updates {
                let prob = fold(&update.prob, &consts, &var_index)?;
                let prob_ty = infer_type(&prob, &schema)?;
                if prob_ty == Ty::Bool {
                    return Err(EvalError::Type {
                        message: "probability must be numeric".to_string(),
                        span: prob.span(),
                    }
                    .into());
                }
                let mut assigns = Vec::new();
                for assign in &update.assigns {
                    let target = *var_index.get(&assign.var).expect("parser checked ownership");
                    let value = fold(&assign.value, &consts, &var_index)?;
                    let value_ty = infer_type(&value, &schema)?;
                    let target_ty = if schema[target].is_bool { Ty::Bool } else { Ty::Int };
                    if value_ty != target_ty {
                        return Err(EvalError::Type {
                            message: format!(
                                "assignment to `{}` has type {value_ty:?}, expected {target_ty:?}",
                                assign.var
                            ),
                            span: assign.span,
                        }
                        .into());
                    }
                    assigns.push((target, value));
                }
                updates.push(ConcreteUpdate { prob, assigns });
            }
            validate_constant_probabilities(&updates, cmd.span)?;
            indices.push(commands.len());
            commands.push(ConcreteCommand {
                label: cmd.label.clone(),
                module: module_idx,
                guard,
                updates,
                span: cmd.span,
            });
        }
        modules.push(ConcreteModule {
            name: module.name.clone(),
            commands: indices,
        });
    }

    // Group synchronizing labels (first-appearance order).
    let mut label_owners: Vec<(String, Vec<(usize, Vec<usize>)>)> = Vec::new();
    for (idx, cmd) in commands.iter().enumerate() {
        match label_owners.iter_mut().find(|(l, _)| *l == cmd.label) {
            Some((_, owners)) => match owners.iter_mut().find(|(m, _)| *m == cmd.module) {
                Some((_, cmds)) => cmds.push(idx),
                None => owners.push((cmd.module, vec![idx])),
            },
            None => label_owners.push((cmd.label.clone(), vec![(cmd.module, vec![idx])])),
        }
    }
    let sync_groups: Vec<_> = label_owners
        .into_iter()
        .filter(|(_, owners)| owners.len() >= 2)
        .collect();

    let goal_decl = ast.goal_label();
    let goal = fold(&goal_decl.expr, &consts, &var_index)?;
    let goal_span = goal_decl.span;
    expect_type(&goal, Ty::Bool, &schema, goal_span)?;

    Ok(ConcreteModel {
        schema,
        modules,
        commands,
        sync_groups,
        goal,
        goal_name: goal_decl.name.clone(),
        direction: ast.property.direction,
        valuation: v.clone(),
    })
}

fn coerce_const(value: Value, ty: ConstType, name: &str) -> Result<Value, InstantiateError> {
    match (ty, value) {
        (ConstType::Int, Value::Int(n)) => Ok(Value::Int(n)),
        (ConstType::Double, Value::Int(n)) => Ok(Value::Rational(Rat::from_integer(n))),
        (ConstType::Double, Value::Rational(r)) => Ok(Value::Rational(r)),
        (ConstType::Bool, Value::Bool(b)) => Ok(Value::Bool(b)),
        (ty, value) => Err(InstantiateError::ConstantType {
            name: name.to_string(),
            expected: ty,
            found: value.type_name(),
        }),
    }
}

/// Partially evaluate an expression: constants become literals, variables
/// become `Var` indices, and any fully-constant subtree is computed.
fn fold(
    expr: &Expr,
    consts: &HashMap<String, Value>,
    vars: &HashMap<String, usize>,
) -> Result<Expr, InstantiateError> {
    let folded = match expr {
        Expr::Int(..) | Expr::Dec(..) | Expr::Bool(..) | Expr::Var(..) => expr.clone(),
        Expr::Ident(name, span) => {
            if let Some(value) = consts.get(name) {
                value_to_expr(value, *span)
            } else if let Some(idx) = vars.get(name) {
                Expr::Var(*idx, *span)
            } else {
                return Err(EvalError::UnknownIdent {
                    name: name.clone(),
                    span: *span,
                }
                .into());
            }
        }
        Expr::Unary(op, inner, span) => {
            Expr::Unary(*op, Box::new(fold(inner, consts, vars)?), *span)
        }
        Expr::Binary(op, lhs, rhs, span) => Expr::Binary(
            *op,
            Box::new(fold(lhs, consts, vars)?),
            Box::new(fold(rhs, consts, vars)?),
            *span,
        ),
    };
    if folded.is_constant() && !matches!(folded, Expr::Int(..) | Expr::Dec(..) | Expr::Bool(..)) {
        let value = eval_const(&folded)?;
        return Ok(value_to_expr(&value, folded.span()));
    }
    Ok(folded)
}

fn value_to_expr(value: &Value, span: Span) -> Expr {
    match value {
        Value::Int(n) => Expr::Int(*n, span),
        Value::Bool(b) => Expr::Bool(*b, span),
        Value::Rational(r) => Expr::Dec(*r, span),
    }
}

fn eval_const(expr: &Expr) -> Result<Value, EvalError> {
    eval(expr, &|_| None, &|_| unreachable!("constant expression"))
}

fn eval_const_int(
    expr: &Expr,
    consts: &HashMap<String, Value>,
) -> Result<i64, InstantiateError> {
    let folded = fold(expr, consts, &HashMap::new())?;
    if !folded.is_constant() {
        return Err(InstantiateError::NonConstantBound { span: expr.span() });
    }
    match eval_const(&folded)? {
        Value::Int(n) => Ok(n),
        _ => Err(EvalError::Type {
            message: "domain bound must be an integer".to_string(),
            span: expr.span(),
        }
        .into()),
    }
}

/// Check probabilities that folded to literals: each in [0,1], and if every
/// update of the command is constant, the exact sum must be 1.
fn validate_constant_probabilities(
    updates: &[ConcreteUpdate],
    span: Span,
) -> Result<(), InstantiateError> {
    let mut sum = Rat::zero();
    let mut all_const = true;
    for update in updates {
        match &update.prob {
            Expr::Int(n, s) => {
                let r = Rat::from_integer(*n);
                if !rational::in_unit_interval(r) {
                    return Err(InstantiateError::ProbabilityOutOfRange {
                        value: *n as f64,
                        span: *s,
                    });
                }
                sum += r;
            }
            Expr::Dec(r, s) => {
                if !rational::in_unit_interval(*r) {
                    return Err(InstantiateError::ProbabilityOutOfRange {
                        value: rational::to_f64(*r),
                        span: *s,
                    });
                }
                sum += *r;
            }
            _ => all_const = false,
        }
    }
    if all_const && !sum.is_one() {
        return Err(InstantiateError::ProbabilitySum {
            sum: rational::to_f64(sum),
            span,
        });
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Ty {
    Int,
    Bool,
    Double,
}

fn expect_type(expr: &Expr, want: Ty, schema: &[VarInfo], span: Span) -> Result<(), EvalError> {
    let got = infer_type(expr, schema)?;
    if got != want {
        return Err(EvalError::Type {
            message: format!("expected {want:?}, found {got:?}"),
            span,
        });
    }
    Ok(())
}

fn infer_type(expr: &Expr, schema: &[VarInfo]) -> Result<Ty, EvalError> {
    use super::expr::BinOp::*;
    match expr {
        Expr::Int(..) => Ok(Ty::Int),
        Expr::Dec(..) => Ok(Ty::Double),
        Expr::Bool(..) => Ok(Ty::Bool),
        Expr::Var(i, _) => Ok(if schema[*i].is_bool { Ty::Bool } else { Ty::Int }),
        Expr::Ident(name, span) => Err(EvalError::UnknownIdent {
            name: name.clone(),
            span: *span,
        }),
        Expr::Unary(op, inner, span) => {
            let inner_ty = infer_type(inner, schema)?;
            match (op, inner_ty) {
                (super::expr::UnOp::Neg, Ty::Int) => Ok(Ty::Int),
                (super::expr::UnOp::Neg, Ty::Double) => Ok(Ty::Double),
                (super::expr::UnOp::Not, Ty::Bool) => Ok(Ty::Bool),
                _ => Err(EvalError::Type {
                    message: format!("cannot apply `{op:?}` to {inner_ty:?}"),
                    span: *span,
                }),
            }
        }
        Expr::Binary(op, lhs, rhs, span) => {
            let l = infer_type(lhs, schema)?;
            let r = infer_type(rhs, schema)?;
            let numeric =
                |t: Ty| matches!(t, Ty::Int | Ty::Double);
            match op {
                And | Or => {
                    if l == Ty::Bool && r == Ty::Bool {
                        Ok(Ty::Bool)
                    } else {
                        Err(EvalError::Type {
                            message: "logical operator requires bool operands".to_string(),
                            span: *span,
                        })
                    }
                }
                Eq | Ne => {
                    if (l == Ty::Bool) == (r == Ty::Bool) {
                        Ok(Ty::Bool)
                    } else {
                        Err(EvalError::Type {
                            message: "cannot compare bool with number".to_string(),
                            span: *span,
                        })
                    }
                }
                Lt | Le | Gt | Ge => {
                    if numeric(l) && numeric(r) {
                        Ok(Ty::Bool)
                    } else {
                        Err(EvalError::Type {
                            message: "ordering requires numeric operands".to_string(),
                            span: *span,
                        })
                    }
                }
                Mod => {
                    if l == Ty::Int && r == Ty::Int {
                        Ok(Ty::Int)
                    } else {
                        Err(EvalError::Type {
                            message: "modulo requires integer operands".to_string(),
                            span: *span,
                        })
                    }
                }
                Add | Sub | Mul | Div => {
                    if !(numeric(l) && numeric(r)) {
                        Err(EvalError::Type {
                            message: "arithmetic requires numeric operands".to_string(),
                            span: *span,
                        })
                    } else if l == Ty::Double || r == Ty::Double {
                        Ok(Ty::Double)
                    } else {
                        Ok(Ty::Int)
                    }
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::parser::parse_model;
    use super::*;
    use crate::models;

    #[test]
    fn running_example_k1_domain() {
        let ast = parse_model(models::BLOCKS).unwrap();
        let model = instantiate(&ast, &ParamValuation::new().with_int("k", 1)).unwrap();
        let m = &model.schema[model.var_index("m").unwrap()];
        assert_eq!((m.lo, m.hi), (0, 1));
        assert_eq!(model.initial_state(), vec![0, 0]);
        assert_eq!(model.direction, Direction::Max);
    }

    #[test]
    fn missing_parameter_is_reported() {
        let ast = parse_model(models::BLOCKS).unwrap();
        assert!(matches!(
            instantiate(&ast, &ParamValuation::new()),
            Err(InstantiateError::UnboundParameter { .. })
        ));
    }

    #[test]
    fn extra_parameter_is_reported() {
        let ast = parse_model(models::BLOCKS).unwrap();
        let v = ParamValuation::new().with_int("k", 1).with_int("zz", 3);
        assert!(matches!(
            instantiate(&ast, &v),
            Err(InstantiateError::UnexpectedParameter { .. })
        ));
    }

    #[test]
    fn degenerate_fold_yields_empty_domain() {
        let text = "\
mdp
const int k;
module main
  x : [1..k] init 1;
  [a] x<k -> 1:(x'=x+1);
endmodule
label \"goal\" = x=k;
property Pmax reach \"goal\";
";
        let ast = parse_model(text).unwrap();
        match instantiate(&ast, &ParamValuation::new().with_int("k", 0)) {
            Err(InstantiateError::EmptyDomain { name, lo, hi, .. }) => {
                assert_eq!(name, "x");
                assert_eq!((lo, hi), (1, 0));
            }
            other => panic!("expected EmptyDomain, got {other:?}"),
        }
    }

    #[test]
    fn constant_probabilities_must_sum_to_one() {
        let text = "\
mdp
module main
  x : [0..1] init 0;
  [a] x=0 -> 0.5:(x'=1) + 0.25:true;
endmodule
label \"goal\" = x=1;
property Pmax reach \"goal\";
";
        let ast = parse_model(text).unwrap();
        assert!(matches!(
            instantiate(&ast, &ParamValuation::new()),
            Err(InstantiateError::ProbabilitySum { .. })
        ));
    }

    #[test]
    fn instantiation_is_deterministic() {
        let ast = parse_model(models::BLOCKS).unwrap();
        let v = ParamValuation::new().with_int("k", 3);
        let a = instantiate(&ast, &v).unwrap();
        let b = instantiate(&ast, &v).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn valuation_parsing() {
        let v = ParamValuation::parse("k=20,x=0.01").unwrap();
        assert_eq!(v.get("k"), Some(&ParamValue::Int(20)));
        assert_eq!(
            v.get("x"),
            Some(&ParamValue::Rational(crate::rational::rat(1, 100)))
        );
    }
}
