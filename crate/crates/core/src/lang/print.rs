//! Pretty-printer. `parse_model(to_source(ast))` produces a structurally
//! equal AST, which the round-trip tests rely on.

use super::ast::*;
use super::expr::{BinOp, Expr, UnOp};
use std::fmt::Write;

pub fn to_source(ast: &ModelAst) -> String {
    let mut out = String::new();
    out.push_str("mdp\n");
    if !ast.constants.is_empty() {
        out.push('\n');
    }
    for c in &ast.constants {
        match &c.value {
            Some(expr) => {
                let _ = writeln!(out, "const {} {} = {};", c.ty, c.name, print_expr(expr));
            }
            None => {
                let _ = writeln!(out, "const {} {};", c.ty, c.name);
            }
        }
    }
    for m in &ast.modules {
        let _ = writeln!(out, "\nmodule {}", m.name);
        for v in &m.variables {
            let domain = match &v.domain {
                VarDomain::Bounded { lo, hi } => {
                    format!("[{}..{}]", print_expr(lo), print_expr(hi))
                }
                VarDomain::Bool => "bool".to_string(),
            };
            let _ = writeln!(out, "  {} : {} init {};", v.name, domain, print_expr(&v.init));
        }
        for cmd in &m.commands {
            let updates: Vec<String> = cmd.updates.iter().map(print_update).collect();
            let _ = writeln!(
                out,
                "  [{}] {} -> {};",
                cmd.label,
                print_expr(&cmd.guard),
                updates.join(" + ")
            );
        }
        out.push_str("endmodule\n");
    }
    out.push('\n');
    for l in &ast.labels {
        let _ = writeln!(out, "label \"{}\" = {};", l.name, print_expr(&l.expr));
    }
    let dir = match ast.property.direction {
        Direction::Max => "Pmax",
        Direction::Min => "Pmin",
    };
    let _ = writeln!(out, "property {} reach \"{}\";", dir, ast.property.target);
    out
}

fn print_update(u: &Update) -> String {
    let body = if u.assigns.is_empty() {
        "true".to_string()
    } else {
        u.assigns
            .iter()
            .map(|a| format!("({}'={})", a.var, print_expr(&a.value)))
            .collect::<Vec<_>>()
            .join("&")
    };
    format!("{}:{}", print_expr(&u.prob), body)
}

pub fn print_expr(e: &Expr) -> String {
    print_prec(e, 0)
}

fn precedence(op: BinOp) -> u8 {
    match op {
        BinOp::Or => 1,
        BinOp::And => 2,
        BinOp::Eq | BinOp::Ne | BinOp::Lt | BinOp::Le | BinOp::Gt | BinOp::Ge => 4,
        BinOp::Add | BinOp::Sub => 5,
        BinOp::Mul | BinOp::Div | BinOp::Mod => 6,
    }
}

fn print_prec(e: &Expr, parent: u8) -> String {
    match e {
        Expr::Int(n, _) => n.to_string(),
        Expr::Dec(r, span) => {
            // Rationals with a 2^a·5^b denominator (every parsed decimal
            // literal) print as their exact decimal expansion. Anything else
            // prints as a division of decimals, matching what a reparse
            // produces.
            let mut rest = *r.denom();
            let mut twos = 0u32;
            let mut fives = 0u32;
            while rest % 2 == 0 {
                rest /= 2;
                twos += 1;
            }
            while rest % 5 == 0 {
                rest /= 5;
                fives += 1;
            }
            if rest != 1 {
                let div = Expr::Binary(
                    BinOp::Div,
                    Box::new(Expr::Dec((*r.numer()).into(), *span)),
                    Box::new(Expr::Dec((*r.denom()).into(), *span)),
                    *span,
                );
                return print_prec(&div, parent);
            }
            let digits = twos.max(fives) as usize;
            if digits == 0 {
                return format!("{}.0", r.numer());
            }
            let scale = 10i64.pow(digits as u32) / r.denom();
            let scaled = (r.numer() * scale).unsigned_abs();
            let base = 10u64.pow(digits as u32);
            let sign = if *r.numer() < 0 { "-" } else { "" };
            format!("{sign}{}.{:0digits$}", scaled / base, scaled % base)
        }
        Expr::Bool(b, _) => b.to_string(),
        Expr::Ident(name, _) => name.clone(),
        Expr::Var(i, _) => format!("<var#{i}>"),
        Expr::Unary(op, inner, _) => {
            let sym = match op {
                UnOp::Neg => "-",
                UnOp::Not => "!",
            };
            format!("{sym}{}", print_prec(inner, 7))
        }
        Expr::Binary(op, lhs, rhs, _) => {
            let prec = precedence(*op);
            let text = format!(
                "{} {} {}",
                print_prec(lhs, prec),
                op.symbol(),
                // Right side binds one tighter, keeping the output
                // left-associative on reparse.
                print_prec(rhs, prec + 1)
            );
            if prec < parent {
                format!("({text})")
            } else {
                text
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::super::parser::parse_model;
    use super::*;

    #[test]
    fn print_parse_print_is_stable() {
        let text = "\
mdp
const int k;
const double p = 0.25;
module main
  m : [0..k] init 0;
  x : [0..2] init 0;
  [a] m=0 & x=0 -> 1:(m'=1);
  [b] m>=1 & m<k & x=1 -> 0.5:(m'=0) + 0.5:(m'=m+1)&(x'=0);
  [c] !(x=2) | m>k-1 -> p:true + (1-p):(x'=(x+1)%3);
endmodule
label \"goal\" = m=0 & x=2;
property Pmax reach \"goal\";
";
        let once = to_source(&parse_model(text).unwrap());
        let twice = to_source(&parse_model(&once).unwrap());
        assert_eq!(once, twice);
    }

    #[test]
    fn decimal_printing_reparses_exactly() {
        for text in ["0.5", "0.125", "10.25", "0.001"] {
            let r = crate::rational::parse_decimal(text).unwrap();
            let printed = print_expr(&Expr::Dec(r, Span::ZERO));
            assert_eq!(crate::rational::parse_decimal(&printed), Some(r));
        }
    }
}
