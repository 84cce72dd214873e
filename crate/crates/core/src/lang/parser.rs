//! Recursive descent parser for model files.

use super::ast::*;
use super::expr::{BinOp, Expr, UnOp};
use super::lexer::{tokenize, LexError, Tok, Token};
use std::collections::HashSet;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ParseError {
    #[error("{span}: syntax error: expected {expected}, found `{found}`")]
    Syntax {
        expected: String,
        found: String,
        span: Span,
    },
    #[error("{span}: duplicate name `{name}` ({kind})")]
    DuplicateName {
        name: String,
        kind: &'static str,
        span: Span,
    },
    #[error("{span}: command has no label; every command must carry one (the `module_i_line_j` convention works well)")]
    UnlabeledCommand { span: Span },
    #[error("{span}: update assigns variable `{name}` twice")]
    DuplicateAssignment { name: String, span: Span },
    #[error("{span}: update assigns `{name}`, which is not a variable of module `{module}`")]
    ForeignAssignment {
        name: String,
        module: String,
        span: Span,
    },
    #[error("model must declare exactly one property")]
    PropertyCount { found: usize },
    #[error("{span}: property references undeclared label \"{name}\"")]
    UnknownLabel { name: String, span: Span },
    #[error("{span}: lexical error: {message}")]
    Lex { message: String, span: Span },
}

impl From<LexError> for ParseError {
    fn from(e: LexError) -> Self {
        ParseError::Lex {
            message: e.message,
            span: e.span,
        }
    }
}

pub fn parse_model(text: &str) -> Result<ModelAst, ParseError> {
    let tokens = tokenize(text)?;
    let mut parser = Parser { tokens, pos: 0 };
    parser.parse_model()
}

struct Parser {
    tokens: Vec<Token>,
    pos: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.tokens[self.pos].tok
    }

    fn peek_at(&self, offset: usize) -> &Tok {
        let i = (self.pos + offset).min(self.tokens.len() - 1);
        &self.tokens[i].tok
    }

    fn span(&self) -> Span {
        self.tokens[self.pos].span
    }

    fn advance(&mut self) -> Token {
        let t = self.tokens[self.pos].clone();
        if self.pos + 1 < self.tokens.len() {
            self.pos += 1;
        }
        t
    }

    fn error(&self, expected: impl Into<String>) -> ParseError {
        ParseError::Syntax {
            expected: expected.into(),
            found: self.peek().to_string(),
            span: self.span(),
        }
    }

    fn expect(&mut self, tok: Tok) -> Result<Span, ParseError> {
        if *self.peek() == tok {
            Ok(self.advance().span)
        } else {
            Err(self.error(format!("`{tok}`")))
        }
    }

    fn eat(&mut self, tok: Tok) -> bool {
        if *self.peek() == tok {
            self.advance();
            true
        } else {
            false
        }
    }

    fn ident(&mut self) -> Result<(String, Span), ParseError> {
        match self.peek().clone() {
            Tok::Ident(name) => {
                let span = self.advance().span;
                Ok((name, span))
            }
            _ => Err(self.error("identifier")),
        }
    }

    fn parse_model(&mut self) -> Result<ModelAst, ParseError> {
        self.expect(Tok::Mdp)?;
        let mut constants: Vec<ConstDecl> = Vec::new();
        let mut modules: Vec<ModuleDecl> = Vec::new();
        let mut labels: Vec<LabelDecl> = Vec::new();
        let mut properties: Vec<PropertySpec> = Vec::new();

        loop {
            match self.peek() {
                Tok::Const => constants.push(self.parse_const()?),
                Tok::Module => modules.push(self.parse_module()?),
                Tok::Label => labels.push(self.parse_label()?),
                Tok::Property => properties.push(self.parse_property()?),
                Tok::Eof => break,
                _ => return Err(self.error("`const`, `module`, `label` or `property`")),
            }
        }

        if properties.len() != 1 {
            return Err(ParseError::PropertyCount {
                found: properties.len(),
            });
        }
        let property = properties.pop().unwrap();

        let ast = ModelAst {
            constants,
            modules,
            labels,
            property,
        };
        validate(&ast)?;
        Ok(ast)
    }

    fn parse_const(&mut self) -> Result<ConstDecl, ParseError> {
        let span = self.expect(Tok::Const)?;
        let ty = match self.peek() {
            Tok::Int => ConstType::Int,
            Tok::Double => ConstType::Double,
            Tok::Bool => ConstType::Bool,
            _ => return Err(self.error("`int`, `double` or `bool`")),
        };
        self.advance();
        let (name, _) = self.ident()?;
        let value = if self.eat(Tok::Eq) {
            Some(self.parse_expr()?)
        } else {
            None
        };
        self.expect(Tok::Semi)?;
        Ok(ConstDecl {
            name,
            ty,
            value,
            span,
        })
    }

    fn parse_module(&mut self) -> Result<ModuleDecl, ParseError> {
        let span = self.expect(Tok::Module)?;
        let (name, _) = self.ident()?;
        let mut variables = Vec::new();
        // Variable declarations come first: `name : domain init expr;`
        while matches!(self.peek(), Tok::Ident(_)) && *self.peek_at(1) == Tok::Colon {
            variables.push(self.parse_var_decl()?);
        }
        let mut commands = Vec::new();
        while *self.peek() == Tok::LBracket {
            commands.push(self.parse_command(&name)?);
        }
        self.expect(Tok::Endmodule)?;
        Ok(ModuleDecl {
            name,
            variables,
            commands,
            span,
        })
    }

    fn parse_var_decl(&mut self) -> Result<VarDecl, ParseError> {
        let (name, span) = self.ident()?;
        self.expect(Tok::Colon)?;
        let domain = if self.eat(Tok::Bool) {
            VarDomain::Bool
        } else {
            self.expect(Tok::LBracket)?;
            let lo = self.parse_expr()?;
            self.expect(Tok::DotDot)?;
            let hi = self.parse_expr()?;
            self.expect(Tok::RBracket)?;
            VarDomain::Bounded { lo, hi }
        };
        self.expect(Tok::Init)?;
        let init = self.parse_expr()?;
        self.expect(Tok::Semi)?;
        Ok(VarDecl {
            name,
            domain,
            init,
            span,
        })
    }

    fn parse_command(&mut self, module: &str) -> Result<Command, ParseError> {
        let span = self.expect(Tok::LBracket)?;
        if self.eat(Tok::RBracket) {
            return Err(ParseError::UnlabeledCommand { span });
        }
        let (label, _) = self.ident()?;
        self.expect(Tok::RBracket)?;
        let guard = self.parse_expr()?;
        self.expect(Tok::Arrow)?;

        let mut updates = vec![self.parse_update()?];
        while self.eat(Tok::Plus) {
            updates.push(self.parse_update()?);
        }
        self.expect(Tok::Semi)?;

        for update in &updates {
            let mut seen = HashSet::new();
            for assign in &update.assigns {
                if !seen.insert(assign.var.as_str()) {
                    return Err(ParseError::DuplicateAssignment {
                        name: assign.var.clone(),
                        span: assign.span,
                    });
                }
                let _ = module; // ownership check happens after the module's variables are known
            }
        }

        Ok(Command {
            label,
            guard,
            updates,
            span,
        })
    }

    /// One weighted update: `expr : body` or a bare `body` (probability 1).
    /// The probability is detected by attempting an expression parse and
    /// checking for the following `:`; otherwise the position is rewound.
    fn parse_update(&mut self) -> Result<Update, ParseError> {
        let start = self.pos;
        let prob = match self.parse_expr() {
            Ok(expr) if *self.peek() == Tok::Colon => {
                self.advance();
                Some(expr)
            }
            _ => {
                self.pos = start;
                None
            }
        };
        let span = self.span();
        let assigns = self.parse_update_body()?;
        Ok(Update {
            prob: prob.unwrap_or(Expr::Int(1, span)),
            assigns,
        })
    }

    fn parse_update_body(&mut self) -> Result<Vec<Assign>, ParseError> {
        if self.eat(Tok::True) {
            return Ok(Vec::new()); // no-op update
        }
        let mut assigns = vec![self.parse_assign()?];
        while self.eat(Tok::Amp) {
            assigns.push(self.parse_assign()?);
        }
        Ok(assigns)
    }

    fn parse_assign(&mut self) -> Result<Assign, ParseError> {
        self.expect(Tok::LParen)?;
        let (var, span) = self.ident()?;
        self.expect(Tok::Prime)?;
        self.expect(Tok::Eq)?;
        let value = self.parse_expr()?;
        self.expect(Tok::RParen)?;
        Ok(Assign { var, value, span })
    }

    fn parse_label(&mut self) -> Result<LabelDecl, ParseError> {
        let span = self.expect(Tok::Label)?;
        let name = match self.peek().clone() {
            Tok::StrLit(s) => {
                self.advance();
                s
            }
            _ => return Err(self.error("string literal")),
        };
        self.expect(Tok::Eq)?;
        let expr = self.parse_expr()?;
        self.expect(Tok::Semi)?;
        Ok(LabelDecl { name, expr, span })
    }

    fn parse_property(&mut self) -> Result<PropertySpec, ParseError> {
        let span = self.expect(Tok::Property)?;
        let direction = match self.peek() {
            Tok::Pmax => Direction::Max,
            Tok::Pmin => Direction::Min,
            _ => return Err(self.error("`Pmax` or `Pmin`")),
        };
        self.advance();
        self.expect(Tok::Reach)?;
        let target = match self.peek().clone() {
            Tok::StrLit(s) => {
                self.advance();
                s
            }
            _ => return Err(self.error("string literal")),
        };
        self.expect(Tok::Semi)?;
        Ok(PropertySpec {
            direction,
            target,
            span,
        })
    }

    // Expression grammar, loosest to tightest:
    //   or < and < not < comparison < additive < multiplicative < unary minus
    fn parse_expr(&mut self) -> Result<Expr, ParseError> {
        self.parse_or()
    }

    fn parse_or(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.parse_and()?;
        while *self.peek() == Tok::Pipe {
            let span = self.advance().span;
            let rhs = self.parse_and()?;
            lhs = Expr::Binary(BinOp::Or, Box::new(lhs), Box::new(rhs), span);
        }
        Ok(lhs)
    }

    fn parse_and(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.parse_not()?;
        while *self.peek() == Tok::Amp {
            let span = self.advance().span;
            let rhs = self.parse_not()?;
            lhs = Expr::Binary(BinOp::And, Box::new(lhs), Box::new(rhs), span);
        }
        Ok(lhs)
    }

    fn parse_not(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Bang {
            let span = self.advance().span;
            let inner = self.parse_not()?;
            return Ok(Expr::Unary(UnOp::Not, Box::new(inner), span));
        }
        self.parse_comparison()
    }

    fn parse_comparison(&mut self) -> Result<Expr, ParseError> {
        let lhs = self.parse_additive()?;
        let op = match self.peek() {
            Tok::Eq => Some(BinOp::Eq),
            Tok::Ne => Some(BinOp::Ne),
            Tok::Lt => Some(BinOp::Lt),
            Tok::Le => Some(BinOp::Le),
            Tok::Gt => Some(BinOp::Gt),
            Tok::Ge => Some(BinOp::Ge),
            _ => None,
        };
        match op {
            Some(op) => {
                let span = self.advance().span;
                let rhs = self.parse_additive()?;
                Ok(Expr::Binary(op, Box::new(lhs), Box::new(rhs), span))
            }
            None => Ok(lhs),
        }
    }

    fn parse_additive(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.parse_multiplicative()?;
        loop {
            let op = match self.peek() {
                Tok::Plus => BinOp::Add,
                Tok::Minus => BinOp::Sub,
                _ => break,
            };
            let span = self.advance().span;
            let rhs = self.parse_multiplicative()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs), span);
        }
        Ok(lhs)
    }

    fn parse_multiplicative(&mut self) -> Result<Expr, ParseError> {
        let mut lhs = self.parse_unary()?;
        loop {
            let op = match self.peek() {
                Tok::Star => BinOp::Mul,
                Tok::Slash => BinOp::Div,
                Tok::Percent => BinOp::Mod,
                _ => break,
            };
            let span = self.advance().span;
            let rhs = self.parse_unary()?;
            lhs = Expr::Binary(op, Box::new(lhs), Box::new(rhs), span);
        }
        Ok(lhs)
    }

    fn parse_unary(&mut self) -> Result<Expr, ParseError> {
        if *self.peek() == Tok::Minus {
            let span = self.advance().span;
            let inner = self.parse_unary()?;
            return Ok(Expr::Unary(UnOp::Neg, Box::new(inner), span));
        }
        self.parse_primary()
    }

    fn parse_primary(&mut self) -> Result<Expr, ParseError> {
        let span = self.span();
        match self.peek().clone() {
            Tok::IntLit(n) => {
                self.advance();
                Ok(Expr::Int(n, span))
            }
            Tok::DecLit(text) => {
                self.advance();
                let r = crate::rational::parse_decimal(&text).ok_or_else(|| ParseError::Syntax {
                    expected: "decimal literal".to_string(),
                    found: text.clone(),
                    span,
                })?;
                Ok(Expr::Dec(r, span))
            }
            Tok::True => {
                self.advance();
                Ok(Expr::Bool(true, span))
            }
            Tok::False => {
                self.advance();
                Ok(Expr::Bool(false, span))
            }
            Tok::Ident(name) => {
                self.advance();
                // A primed identifier only makes sense in an update body;
                // refuse it here so the update/probability rewind triggers.
                if *self.peek() == Tok::Prime {
                    return Err(self.error("expression"));
                }
                Ok(Expr::Ident(name, span))
            }
            Tok::LParen => {
                self.advance();
                let inner = self.parse_expr()?;
                self.expect(Tok::RParen)?;
                Ok(inner)
            }
            _ => Err(self.error("expression")),
        }
    }
}

/// Syntactic invariants beyond the grammar: unique names, variable ownership,
/// a resolvable property target.
fn validate(ast: &ModelAst) -> Result<(), ParseError> {
    let mut const_names = HashSet::new();
    for c in &ast.constants {
        if !const_names.insert(c.name.as_str()) {
            return Err(ParseError::DuplicateName {
                name: c.name.clone(),
                kind: "constant",
                span: c.span,
            });
        }
    }
    let mut module_names = HashSet::new();
    let mut var_names: HashSet<&str> = HashSet::new();
    for m in &ast.modules {
        if !module_names.insert(m.name.as_str()) {
            return Err(ParseError::DuplicateName {
                name: m.name.clone(),
                kind: "module",
                span: m.span,
            });
        }
        for v in &m.variables {
            // The structured state space requires globally unique variables.
            if !var_names.insert(v.name.as_str()) || const_names.contains(v.name.as_str()) {
                return Err(ParseError::DuplicateName {
                    name: v.name.clone(),
                    kind: "variable",
                    span: v.span,
                });
            }
        }
    }
    for m in &ast.modules {
        let local: HashSet<&str> = m.variables.iter().map(|v| v.name.as_str()).collect();
        for cmd in &m.commands {
            for update in &cmd.updates {
                for assign in &update.assigns {
                    if !local.contains(assign.var.as_str()) {
                        return Err(ParseError::ForeignAssignment {
                            name: assign.var.clone(),
                            module: m.name.clone(),
                            span: assign.span,
                        });
                    }
                }
            }
        }
    }
    let mut label_names = HashSet::new();
    for l in &ast.labels {
        if !label_names.insert(l.name.as_str()) {
            return Err(ParseError::DuplicateName {
                name: l.name.clone(),
                kind: "label expression",
                span: l.span,
            });
        }
    }
    if !label_names.contains(ast.property.target.as_str()) {
        return Err(ParseError::UnknownLabel {
            name: ast.property.target.clone(),
            span: ast.property.span,
        });
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWO_COMMANDS: &str = "\
mdp
module main
  x : [0..1] init 0;
  [a] x=0 -> 1:(x'=1);
  [b] x=0 -> 0.5:(x'=1) + 0.5:true;
endmodule
label \"goal\" = x=1;
property Pmax reach \"goal\";
";

    #[test]
    fn parses_one_module_two_commands() {
        let ast = parse_model(TWO_COMMANDS).unwrap();
        assert_eq!(ast.modules.len(), 1);
        assert_eq!(ast.modules[0].commands.len(), 2);
        assert_eq!(ast.modules[0].commands[0].label, "a");
        assert_eq!(ast.modules[0].commands[1].updates.len(), 2);
        assert!(ast.parameters().is_empty());
    }

    #[test]
    fn rejects_unlabeled_command() {
        let text = TWO_COMMANDS.replace("[a]", "[]");
        match parse_model(&text) {
            Err(ParseError::UnlabeledCommand { span }) => assert_eq!(span.line, 4),
            other => panic!("expected UnlabeledCommand, got {other:?}"),
        }
    }

    #[test]
    fn rejects_duplicate_variable_across_modules() {
        let text = "\
mdp
module one
  x : [0..1] init 0;
  [a] x=0 -> 1:(x'=1);
endmodule
module two
  x : [0..1] init 0;
  [b] x=0 -> 1:(x'=1);
endmodule
label \"goal\" = x=1;
property Pmax reach \"goal\";
";
        assert!(matches!(
            parse_model(text),
            Err(ParseError::DuplicateName { kind: "variable", .. })
        ));
    }

    #[test]
    fn rejects_foreign_assignment() {
        let text = "\
mdp
module one
  x : [0..1] init 0;
  [a] x=0 -> 1:(y'=1);
endmodule
module two
  y : [0..1] init 0;
  [b] y=0 -> 1:(y'=1);
endmodule
label \"goal\" = x=1;
property Pmax reach \"goal\";
";
        assert!(matches!(
            parse_model(text),
            Err(ParseError::ForeignAssignment { .. })
        ));
    }

    #[test]
    fn requires_exactly_one_property() {
        let text = "mdp\nmodule m\n x : [0..1] init 0;\n [a] x=0 -> 1:(x'=1);\nendmodule\nlabel \"goal\" = x=1;\n";
        assert!(matches!(
            parse_model(text),
            Err(ParseError::PropertyCount { found: 0 })
        ));
    }

    #[test]
    fn bare_update_gets_probability_one() {
        let text = "\
mdp
module main
  x : [0..1] init 0;
  [a] x=0 -> (x'=1);
endmodule
label \"goal\" = x=1;
property Pmax reach \"goal\";
";
        let ast = parse_model(text).unwrap();
        let update = &ast.modules[0].commands[0].updates[0];
        assert!(matches!(update.prob, Expr::Int(1, _)));
    }

    #[test]
    fn syntax_error_reports_position_and_expectation() {
        let err = parse_model("mdp\nmodule main\n  x : [0..1] init 0;\n  [a] x=0 -> ;\nendmodule\nlabel \"g\" = x=1;\nproperty Pmax reach \"g\";").unwrap_err();
        match err {
            ParseError::Syntax { span, .. } => {
                assert_eq!(span.line, 4);
            }
            other => panic!("expected syntax error, got {other:?}"),
        }
    }
}
