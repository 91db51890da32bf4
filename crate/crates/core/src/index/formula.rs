//! Recursive-descent parser for edge-weight formulas in the degrees `i`, `j`.
//!
//! Grammar, loosest binding first:
//!
//! ```text
//! expr    := term (('+' | '-') term)*
//! term    := unary (('*' | '/') unary)*
//! unary   := ('-' | '+') unary | power
//! power   := primary ('^' unary)?          (right-associative)
//! primary := number | 'i' | 'j' | func '(' expr (',' expr)* ')' | '(' expr ')'
//! func    := sqrt | abs | exp | ln | min | max
//! ```
//!
//! So `-2^2` is `-(2^2)` and `2^3^2` is `2^(3^2)`.

use std::fmt;

use thiserror::Error;

/// Where and why parsing stopped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SyntaxError {
    /// Character offset into the source text.
    pub position: usize,
    pub found: String,
    pub expected: Vec<String>,
}

impl SyntaxError {
    /// Source line with a caret under the error position.
    pub fn caret(&self, source: &str) -> String {
        format!("{source}\n{}^", " ".repeat(self.position))
    }
}

impl fmt::Display for SyntaxError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "syntax error at position {}: found {}, expected {}",
            self.position,
            self.found,
            self.expected.join(" or ")
        )
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum EvalError {
    #[error("division by zero at (i, j) = ({i}, {j})")]
    DivisionByZero { i: u8, j: u8 },
    #[error("square root of negative value {value} at (i, j) = ({i}, {j})")]
    NegativeSqrt { i: u8, j: u8, value: f64 },
    #[error("logarithm of non-positive value {value} at (i, j) = ({i}, {j})")]
    NonPositiveLog { i: u8, j: u8, value: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Func {
    Sqrt,
    Abs,
    Exp,
    Ln,
    Min,
    Max,
}

impl Func {
    fn lookup(name: &str) -> Option<Func> {
        Some(match name {
            "sqrt" => Func::Sqrt,
            "abs" => Func::Abs,
            "exp" => Func::Exp,
            "ln" => Func::Ln,
            "min" => Func::Min,
            "max" => Func::Max,
            _ => return None,
        })
    }

    fn is_variadic(self) -> bool {
        matches!(self, Func::Min | Func::Max)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BinOp {
    Add,
    Sub,
    Mul,
    Div,
    Pow,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Expr {
    Num(f64),
    I,
    J,
    Neg(Box<Expr>),
    Bin(BinOp, Box<Expr>, Box<Expr>),
    Call(Func, Vec<Expr>),
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Num(f64),
    Ident(String),
    Sym(char),
    End,
}

impl Tok {
    fn describe(&self) -> String {
        match self {
            Tok::Num(x) => format!("number {x}"),
            Tok::Ident(s) => format!("'{s}'"),
            Tok::Sym(c) => format!("'{c}'"),
            Tok::End => "end of input".to_string(),
        }
    }
}

fn lex(src: &str) -> Result<Vec<(usize, Tok)>, SyntaxError> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        if c.is_whitespace() {
            k += 1;
        } else if c.is_ascii_digit() || c == '.' {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                k += 1;
            }
            if k < chars.len() && (chars[k] == 'e' || chars[k] == 'E') {
                let mut look = k + 1;
                if look < chars.len() && (chars[look] == '+' || chars[look] == '-') {
                    look += 1;
                }
                if look < chars.len() && chars[look].is_ascii_digit() {
                    k = look;
                    while k < chars.len() && chars[k].is_ascii_digit() {
                        k += 1;
                    }
                }
            }
            let text: String = chars[start..k].iter().collect();
            let value = text.parse::<f64>().map_err(|_| SyntaxError {
                position: start,
                found: format!("'{text}'"),
                expected: vec!["number".into()],
            })?;
            out.push((start, Tok::Num(value)));
        } else if c.is_alphabetic() || c == '_' {
            let start = k;
            while k < chars.len() && (chars[k].is_alphanumeric() || chars[k] == '_') {
                k += 1;
            }
            out.push((start, Tok::Ident(chars[start..k].iter().collect())));
        } else if "+-*/^(),".contains(c) {
            out.push((k, Tok::Sym(c)));
            k += 1;
        } else {
            return Err(SyntaxError {
                position: k,
                found: format!("'{c}'"),
                expected: vec!["operator".into(), "operand".into()],
            });
        }
    }
    out.push((chars.len(), Tok::End));
    Ok(out)
}

struct Parser {
    toks: Vec<(usize, Tok)>,
    at: usize,
}

const OPERAND: [&str; 5] = ["number", "'i'", "'j'", "function", "'('"];

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.at].1
    }

    fn pos(&self) -> usize {
        self.toks[self.at].0
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.at].1.clone();
        if self.at + 1 < self.toks.len() {
            self.at += 1;
        }
        t
    }

    fn error(&self, expected: &[&str]) -> SyntaxError {
        SyntaxError {
            position: self.pos(),
            found: self.peek().describe(),
            expected: expected.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn eat(&mut self, c: char) -> bool {
        if *self.peek() == Tok::Sym(c) {
            self.bump();
            true
        } else {
            false
        }
    }

    fn expr(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.term()?;
        loop {
            let op = if self.eat('+') {
                BinOp::Add
            } else if self.eat('-') {
                BinOp::Sub
            } else {
                return Ok(lhs);
            };
            let rhs = self.term()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn term(&mut self) -> Result<Expr, SyntaxError> {
        let mut lhs = self.unary()?;
        loop {
            let op = if self.eat('*') {
                BinOp::Mul
            } else if self.eat('/') {
                BinOp::Div
            } else {
                return Ok(lhs);
            };
            let rhs = self.unary()?;
            lhs = Expr::Bin(op, Box::new(lhs), Box::new(rhs));
        }
    }

    fn unary(&mut self) -> Result<Expr, SyntaxError> {
        if self.eat('-') {
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        if self.eat('+') {
            return self.unary();
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr, SyntaxError> {
        let base = self.primary()?;
        if self.eat('^') {
            let exp = self.unary()?;
            return Ok(Expr::Bin(BinOp::Pow, Box::new(base), Box::new(exp)));
        }
        Ok(base)
    }

    fn primary(&mut self) -> Result<Expr, SyntaxError> {
        match self.peek().clone() {
            Tok::Num(x) => {
                self.bump();
                Ok(Expr::Num(x))
            }
            Tok::Ident(name) => {
                if name == "i" {
                    self.bump();
                    return Ok(Expr::I);
                }
                if name == "j" {
                    self.bump();
                    return Ok(Expr::J);
                }
                let Some(func) = Func::lookup(&name) else {
                    return Err(self.error(&["'i'", "'j'", "sqrt", "abs", "exp", "ln", "min", "max"]));
                };
                self.bump();
                if !self.eat('(') {
                    return Err(self.error(&["'('"]));
                }
                let mut args = vec![self.expr()?];
                while self.eat(',') {
                    args.push(self.expr()?);
                }
                if !func.is_variadic() && args.len() != 1 {
                    return Err(SyntaxError {
                        position: self.pos(),
                        found: format!("{} arguments", args.len()),
                        expected: vec![format!("1 argument to {name}")],
                    });
                }
                if func.is_variadic() && args.len() < 2 {
                    return Err(self.error(&["','"]));
                }
                if !self.eat(')') {
                    return Err(self.error(&["')'", "','"]));
                }
                Ok(Expr::Call(func, args))
            }
            Tok::Sym('(') => {
                self.bump();
                let inner = self.expr()?;
                if !self.eat(')') {
                    return Err(self.error(&["')'", "operator"]));
                }
                Ok(inner)
            }
            _ => Err(self.error(&OPERAND)),
        }
    }
}

/// Parses a complete formula.
pub fn parse(src: &str) -> Result<Expr, SyntaxError> {
    let mut p = Parser { toks: lex(src)?, at: 0 };
    let e = p.expr()?;
    if *p.peek() != Tok::End {
        return Err(p.error(&["operator", "end of input"]));
    }
    Ok(e)
}

impl Expr {
    /// Evaluates at one degree pair. Non-finite results are left to the caller.
    pub fn eval(&self, i: u8, j: u8) -> Result<f64, EvalError> {
        Ok(match self {
            Expr::Num(x) => *x,
            Expr::I => i as f64,
            Expr::J => j as f64,
            Expr::Neg(e) => -e.eval(i, j)?,
            Expr::Bin(op, a, b) => {
                let x = a.eval(i, j)?;
                let y = b.eval(i, j)?;
                match op {
                    BinOp::Add => x + y,
                    BinOp::Sub => x - y,
                    BinOp::Mul => x * y,
                    BinOp::Div => {
                        if y == 0.0 {
                            return Err(EvalError::DivisionByZero { i, j });
                        }
                        x / y
                    }
                    BinOp::Pow => x.powf(y),
                }
            }
            Expr::Call(f, args) => {
                let vals = args.iter().map(|a| a.eval(i, j)).collect::<Result<Vec<_>, _>>()?;
                let x = vals[0];
                match f {
                    Func::Sqrt => {
                        if x < 0.0 {
                            return Err(EvalError::NegativeSqrt { i, j, value: x });
                        }
                        x.sqrt()
                    }
                    Func::Abs => x.abs(),
                    Func::Exp => x.exp(),
                    Func::Ln => {
                        if x <= 0.0 {
                            return Err(EvalError::NonPositiveLog { i, j, value: x });
                        }
                        x.ln()
                    }
                    Func::Min => vals.iter().copied().fold(f64::INFINITY, f64::min),
                    Func::Max => vals.iter().copied().fold(f64::NEG_INFINITY, f64::max),
                }
            }
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn eval(src: &str, i: u8, j: u8) -> f64 {
        parse(src).unwrap().eval(i, j).unwrap()
    }

    #[test]
    fn precedence() {
        assert_eq!(eval("-2^2", 1, 1), -4.0);
        assert_eq!(eval("2^3^2", 1, 1), 512.0);
        assert_eq!(eval("2^-1", 1, 1), 0.5);
        assert_eq!(eval("1+2*3-4/2", 1, 1), 5.0);
        assert_eq!(eval("(1+2)*3", 1, 1), 9.0);
        assert_eq!(eval("i - j - 1", 3, 2), 0.0);
        assert_eq!(eval("--i", 2, 3), 2.0);
        assert_eq!(eval("2*-i", 2, 3), -4.0);
        assert_eq!(eval("1.5e1 + .5", 1, 1), 15.5);
    }

    #[test]
    fn functions() {
        assert!((eval("1/sqrt(i*j)", 2, 3) - 1.0 / 6f64.sqrt()).abs() < 1e-15);
        assert_eq!(eval("max(i, j, 7)", 1, 3), 7.0);
        assert_eq!(eval("min(i, j)", 1, 3), 1.0);
        assert_eq!(eval("abs(i-j)", 1, 3), 2.0);
        assert!((eval("ln(exp(i))", 2, 2) - 2.0).abs() < 1e-15);
    }

    #[test]
    fn syntax_errors_point_at_the_problem() {
        let e = parse("1/(i-j").unwrap_err();
        assert_eq!(e.position, 6);
        assert!(e.expected.contains(&"')'".to_string()));
        assert_eq!(e.caret("1/(i-j"), "1/(i-j\n      ^");

        let e = parse("1/(i*").unwrap_err();
        assert_eq!(e.position, 5);
        assert_eq!(e.found, "end of input");

        let e = parse("i $ j").unwrap_err();
        assert_eq!(e.position, 2);

        let e = parse("k + 1").unwrap_err();
        assert_eq!(e.position, 0);

        let e = parse("sqrt(i, j)").unwrap_err();
        assert!(e.expected[0].contains("1 argument"));

        assert_eq!(parse("i j").unwrap_err().position, 2);
        assert_eq!(parse("").unwrap_err().position, 0);
        assert_eq!(parse("max(i)").unwrap_err().position, 5);
    }

    #[test]
    fn eval_errors() {
        assert_eq!(
            parse("1/(i-j)").unwrap().eval(2, 2),
            Err(EvalError::DivisionByZero { i: 2, j: 2 })
        );
        assert!(matches!(
            parse("sqrt(i-j)").unwrap().eval(1, 2),
            Err(EvalError::NegativeSqrt { .. })
        ));
        assert!(matches!(
            parse("ln(j-i-1)").unwrap().eval(1, 2),
            Err(EvalError::NonPositiveLog { .. })
        ));
    }
}
