//! Canonical text form for polynomials and `h`-series.
//!
//! ```text
//! expr    = term { ("+" | "-") term } ;
//! term    = unary { "*" unary } ;
//! unary   = "-" unary | power ;
//! power   = atom [ "^" integer ] ;
//! atom    = rational | "i" | "h" | variable | "(" expr ")" ;
//! rational = integer [ "/" integer ] ;
//! variable = "z" index | "q" index | "p" index | "ζ" [index] | "λ" [index] ;
//! ```
//!
//! `q_k`/`ζ_k` name `z_{2k-1}` and `p_k`/`λ_k` name `z_{2k}`, so a product
//! of cotangent planes reads naturally. Printing always uses `z` names,
//! expanded form, terms grouped by ascending power of `h` and descending
//! graded-lex order within a power.

use std::fmt::Write;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::poly::{Monomial, SparsePoly};
use crate::scalar::{decimal_to_fraction, ExactComplex};
use crate::series::HbarSeries;

/// Render `(monomial, coefficient, h power)` triples in the given order.
pub(crate) fn format_terms<'a, I>(terms: I) -> String
where
    I: IntoIterator<Item = (&'a Monomial, &'a ExactComplex, usize)>,
{
    let mut out = String::new();
    for (m, c, k) in terms {
        let (negative, mag) = if c.is_negative_axis() {
            (true, -c)
        } else {
            (false, c.clone())
        };
        if out.is_empty() {
            if negative {
                out.push('-');
            }
        } else {
            out.push_str(if negative { " - " } else { " + " });
        }
        let mut factors: Vec<String> = Vec::new();
        for (j, &e) in m.exps().iter().enumerate() {
            match e {
                0 => {}
                1 => factors.push(format!("z{}", j + 1)),
                _ => factors.push(format!("z{}^{e}", j + 1)),
            }
        }
        match k {
            0 => {}
            1 => factors.push("h".into()),
            _ => factors.push(format!("h^{k}")),
        }
        let coeff = if !mag.is_real() && !mag.re.is_zero() {
            format!("({mag})")
        } else {
            mag.to_string()
        };
        if factors.is_empty() {
            out.push_str(&coeff);
        } else {
            if !mag.is_one() {
                out.push_str(&coeff);
                out.push('*');
            }
            out.push_str(&factors.join("*"));
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

#[derive(Debug, Clone, PartialEq)]
enum Token {
    Int(BigInt),
    Rational(BigRational),
    Ident(String),
    Plus,
    Minus,
    Star,
    Caret,
    LParen,
    RParen,
    End,
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Token,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Spanned>> {
    let chars: Vec<char> = src.chars().collect();
    let mut toks = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let c = chars[k];
        let col = k + 1;
        if c.is_whitespace() {
            k += 1;
            continue;
        }
        let simple = match c {
            '+' => Some(Token::Plus),
            '-' => Some(Token::Minus),
            '*' => Some(Token::Star),
            '^' => Some(Token::Caret),
            '(' => Some(Token::LParen),
            ')' => Some(Token::RParen),
            _ => None,
        };
        if let Some(tok) = simple {
            toks.push(Spanned { tok, col });
            k += 1;
            continue;
        }
        if c.is_ascii_digit() || c == '.' {
            let start = k;
            while k < chars.len() && (chars[k].is_ascii_digit() || chars[k] == '.') {
                k += 1;
            }
            let lit: String = chars[start..k].iter().collect();
            if lit.contains('.') || (k < chars.len() && matches!(chars[k], 'e' | 'E')) {
                let suggestion_lit = decimal_to_fraction(&lit).unwrap_or_else(|| "p/q".into());
                let suggestion: String = chars[..start].iter().collect::<String>()
                    + &suggestion_lit
                    + &chars[k..].iter().collect::<String>();
                return Err(Error::FloatLiteral {
                    column: col,
                    literal: lit,
                    suggestion,
                });
            }
            let num: BigInt = lit.parse().expect("digits");
            // "p/q" is a single literal; '/' is not an operator
            let mut j = k;
            while j < chars.len() && chars[j] == ' ' {
                j += 1;
            }
            if j < chars.len() && chars[j] == '/' {
                j += 1;
                while j < chars.len() && chars[j] == ' ' {
                    j += 1;
                }
                let ds = j;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                if ds == j {
                    return Err(Error::Syntax {
                        column: ds + 1,
                        message: "expected a denominator after '/'".into(),
                    });
                }
                if j < chars.len() && chars[j] == '.' {
                    return Err(Error::FloatLiteral {
                        column: ds + 1,
                        literal: chars[ds..]
                            .iter()
                            .take_while(|c| c.is_ascii_digit() || **c == '.')
                            .collect(),
                        suggestion: "p/q with integer p and q".into(),
                    });
                }
                let den: BigInt = chars[ds..j]
                    .iter()
                    .collect::<String>()
                    .parse()
                    .expect("digits");
                if den == BigInt::from(0) {
                    return Err(Error::Syntax {
                        column: ds + 1,
                        message: "zero denominator".into(),
                    });
                }
                toks.push(Spanned {
                    tok: Token::Rational(BigRational::new(num, den)),
                    col,
                });
                k = j;
            } else {
                toks.push(Spanned {
                    tok: Token::Int(num),
                    col,
                });
            }
            continue;
        }
        if c.is_alphabetic() {
            let start = k;
            k += 1;
            while k < chars.len() && chars[k].is_ascii_digit() {
                k += 1;
            }
            toks.push(Spanned {
                tok: Token::Ident(chars[start..k].iter().collect()),
                col,
            });
            continue;
        }
        return Err(Error::Syntax {
            column: col,
            message: format!("unexpected character '{c}'"),
        });
    }
    toks.push(Spanned {
        tok: Token::End,
        col: chars.len() + 1,
    });
    Ok(toks)
}

#[derive(Debug, Clone)]
enum Expr {
    Const(ExactComplex),
    Var(usize),
    Hbar(usize),
    Neg(Box<Expr>),
    Add(Box<Expr>, Box<Expr>),
    Sub(Box<Expr>, Box<Expr>),
    Mul(Box<Expr>, Box<Expr>),
    Pow(Box<Expr>, u32),
}

struct Parser<'a> {
    toks: &'a [Spanned],
    pos: usize,
    arity: usize,
}

impl Parser<'_> {
    fn peek(&self) -> &Spanned {
        &self.toks[self.pos]
    }

    fn bump(&mut self) -> Spanned {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn expected(&self, what: &str) -> Error {
        let t = self.peek();
        let found = match &t.tok {
            Token::End => "end of input".to_string(),
            other => format!("{other:?}"),
        };
        Error::Syntax {
            column: t.col,
            message: format!("expected {what}, found {found}"),
        }
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut lhs = self.term()?;
        loop {
            match self.peek().tok {
                Token::Plus => {
                    self.bump();
                    lhs = Expr::Add(Box::new(lhs), Box::new(self.term()?));
                }
                Token::Minus => {
                    self.bump();
                    lhs = Expr::Sub(Box::new(lhs), Box::new(self.term()?));
                }
                _ => return Ok(lhs),
            }
        }
    }

    fn term(&mut self) -> Result<Expr> {
        let mut lhs = self.unary()?;
        while self.peek().tok == Token::Star {
            self.bump();
            lhs = Expr::Mul(Box::new(lhs), Box::new(self.unary()?));
        }
        Ok(lhs)
    }

    fn unary(&mut self) -> Result<Expr> {
        if self.peek().tok == Token::Minus {
            self.bump();
            return Ok(Expr::Neg(Box::new(self.unary()?)));
        }
        self.power()
    }

    fn power(&mut self) -> Result<Expr> {
        let base = self.atom()?;
        if self.peek().tok != Token::Caret {
            return Ok(base);
        }
        self.bump();
        let t = self.bump();
        match t.tok {
            Token::Int(n) => {
                let e = u32::try_from(n).map_err(|_| Error::Syntax {
                    column: t.col,
                    message: "exponent too large".into(),
                })?;
                Ok(Expr::Pow(Box::new(base), e))
            }
            _ => Err(Error::Syntax {
                column: t.col,
                message: "expected a nonnegative integer exponent".into(),
            }),
        }
    }

    fn atom(&mut self) -> Result<Expr> {
        let t = self.peek().clone();
        match t.tok {
            Token::Int(n) => {
                self.bump();
                Ok(Expr::Const(ExactComplex::from_rational(
                    BigRational::from_integer(n),
                )))
            }
            Token::Rational(r) => {
                self.bump();
                Ok(Expr::Const(ExactComplex::from_rational(r)))
            }
            Token::Ident(name) => {
                self.bump();
                self.ident(&name, t.col)
            }
            Token::LParen => {
                self.bump();
                let e = self.expr()?;
                if self.peek().tok != Token::RParen {
                    return Err(self.expected("')'"));
                }
                self.bump();
                Ok(e)
            }
            _ => Err(self.expected("a number, variable or '('")),
        }
    }

    fn ident(&self, name: &str, col: usize) -> Result<Expr> {
        let unknown = || Error::UnknownVariable {
            column: col,
            name: name.to_string(),
        };
        match name {
            "i" => return Ok(Expr::Const(ExactComplex::i())),
            "h" => return Ok(Expr::Hbar(col)),
            _ => {}
        }
        let mut chars = name.chars();
        let head = chars.next().ok_or_else(unknown)?;
        let digits: String = chars.collect();
        let index: Option<usize> = if digits.is_empty() {
            None
        } else {
            digits.parse().ok()
        };
        let var = match (head, index) {
            ('z', Some(j)) if j >= 1 => j - 1,
            ('q' | 'ζ', Some(k)) if k >= 1 => 2 * k - 2,
            ('p' | 'λ', Some(k)) if k >= 1 => 2 * k - 1,
            ('ζ', None) => 0,
            ('λ', None) => 1,
            _ => return Err(unknown()),
        };
        if var >= self.arity {
            return Err(unknown());
        }
        Ok(Expr::Var(var))
    }
}

fn parse_tree(src: &str, arity: usize) -> Result<Expr> {
    let toks = lex(src)?;
    let mut p = Parser {
        toks: &toks,
        pos: 0,
        arity,
    };
    let e = p.expr()?;
    if p.peek().tok != Token::End {
        return Err(p.expected("an operator or end of input"));
    }
    Ok(e)
}

fn eval_series(e: &Expr, arity: usize, order: usize) -> HbarSeries {
    let lift = |p: SparsePoly| HbarSeries::from_poly(p, order);
    match e {
        Expr::Const(c) => lift(SparsePoly::constant(arity, c.clone())),
        Expr::Var(j) => lift(SparsePoly::var(arity, *j)),
        Expr::Hbar(_) => HbarSeries::hbar_power(SparsePoly::one(arity), 1, order),
        Expr::Neg(a) => eval_series(a, arity, order).neg(),
        Expr::Add(a, b) => eval_series(a, arity, order)
            .try_add(&eval_series(b, arity, order))
            .expect("shared arity"),
        Expr::Sub(a, b) => eval_series(a, arity, order)
            .try_sub(&eval_series(b, arity, order))
            .expect("shared arity"),
        Expr::Mul(a, b) => eval_series(a, arity, order)
            .try_mul(&eval_series(b, arity, order))
            .expect("shared arity"),
        Expr::Pow(a, n) => {
            let base = eval_series(a, arity, order);
            let mut acc = lift(SparsePoly::one(arity));
            for _ in 0..*n {
                acc = acc.try_mul(&base).expect("shared arity");
            }
            acc
        }
    }
}

fn first_hbar(e: &Expr) -> Option<usize> {
    match e {
        Expr::Hbar(c) => Some(*c),
        Expr::Const(_) | Expr::Var(_) => None,
        Expr::Neg(a) | Expr::Pow(a, _) => first_hbar(a),
        Expr::Add(a, b) | Expr::Sub(a, b) | Expr::Mul(a, b) => {
            first_hbar(a).or_else(|| first_hbar(b))
        }
    }
}

fn eval_poly(e: &Expr, arity: usize) -> SparsePoly {
    match e {
        Expr::Const(c) => SparsePoly::constant(arity, c.clone()),
        Expr::Var(j) => SparsePoly::var(arity, *j),
        Expr::Hbar(_) => unreachable!("checked by first_hbar"),
        Expr::Neg(a) => -&eval_poly(a, arity),
        Expr::Add(a, b) => &eval_poly(a, arity) + &eval_poly(b, arity),
        Expr::Sub(a, b) => &eval_poly(a, arity) - &eval_poly(b, arity),
        Expr::Mul(a, b) => &eval_poly(a, arity) * &eval_poly(b, arity),
        Expr::Pow(a, n) => eval_poly(a, arity).pow(*n),
    }
}

/// Parse a polynomial in `arity` variables. `h` is rejected.
pub fn parse_poly(src: &str, arity: usize) -> Result<SparsePoly> {
    let tree = parse_tree(src, arity)?;
    if let Some(column) = first_hbar(&tree) {
        return Err(Error::HbarNotAllowed { column });
    }
    Ok(eval_poly(&tree, arity))
}

/// Parse an `h`-series truncated at `order`.
pub fn parse_series(src: &str, arity: usize, order: usize) -> Result<HbarSeries> {
    let tree = parse_tree(src, arity)?;
    Ok(eval_series(&tree, arity, order))
}

/// Result of [`parse_expr`]: a plain polynomial unless `h` occurs.
#[derive(Debug, Clone, PartialEq)]
pub enum Parsed {
    Poly(SparsePoly),
    Series(HbarSeries),
}

impl Parsed {
    pub fn into_series(self, order: usize) -> HbarSeries {
        match self {
            Parsed::Poly(p) => HbarSeries::from_poly(p, order),
            Parsed::Series(s) => s.truncate(order),
        }
    }
}

pub fn parse_expr(src: &str, arity: usize, order: usize) -> Result<Parsed> {
    let tree = parse_tree(src, arity)?;
    Ok(if first_hbar(&tree).is_some() {
        Parsed::Series(eval_series(&tree, arity, order))
    } else {
        Parsed::Poly(eval_poly(&tree, arity))
    })
}

/// Parse a constant such as `-1/2`, `3*i` or `1/2 - 2/3*i`.
pub fn parse_scalar(src: &str) -> Result<ExactComplex> {
    let p = parse_poly(src, 1).map_err(|e| match e {
        Error::UnknownVariable { name, .. } => {
            Error::Invalid(format!("'{src}' is not a constant (contains '{name}')"))
        }
        other => other,
    })?;
    if !p.is_constant() {
        return Err(Error::Invalid(format!("'{src}' is not a constant")));
    }
    Ok(p.constant_term())
}

/// Render a list of polynomials as `[f1, f2, ...]`.
pub fn format_list(polys: &[SparsePoly]) -> String {
    let mut s = String::from("[");
    for (k, p) in polys.iter().enumerate() {
        if k > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{p}");
    }
    s.push(']');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_term_polynomial() {
        let p = parse_poly("z1^2*z2 - 1/2*i", 2).unwrap();
        assert_eq!(p.len(), 2);
        assert_eq!(p.coeff(&[2, 1]), ExactComplex::one());
        assert_eq!(p.coeff(&[0, 0]), ExactComplex::gaussian(0, 1, -1, 2));
        assert_eq!(p.to_string(), "z1^2*z2 - 1/2*i");
    }

    #[test]
    fn dangling_operator() {
        assert_eq!(
            parse_poly("z1 + ", 2),
            Err(Error::Syntax {
                column: 6,
                message: "expected a number, variable or '(', found end of input".into()
            })
        );
    }

    #[test]
    fn float_literal_rejected_with_suggestion() {
        match parse_poly("0.5*z1", 2) {
            Err(Error::FloatLiteral {
                column, suggestion, ..
            }) => {
                assert_eq!(column, 1);
                assert_eq!(suggestion, "1/2*z1");
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn precedence() {
        // ^ binds tighter than unary minus
        let p = parse_poly("-z1^2", 1).unwrap();
        assert_eq!(p.coeff(&[2]), ExactComplex::from_int(-1));
        let q = parse_poly("2*z1 + 3*z1*z1 - (z1 - 1)^2", 1).unwrap();
        assert_eq!(q.to_string(), "2*z1^2 + 4*z1 - 1");
    }

    #[test]
    fn aliases_and_unknowns() {
        let p = parse_poly("q1*p2 + ζ2*λ1", 4).unwrap();
        assert_eq!(p, parse_poly("z1*z4 + z3*z2", 4).unwrap());
        assert!(matches!(
            parse_poly("z3", 2),
            Err(Error::UnknownVariable { column: 1, .. })
        ));
        assert!(matches!(
            parse_poly("x", 2),
            Err(Error::UnknownVariable { .. })
        ));
    }

    #[test]
    fn hbar_handling() {
        assert_eq!(
            parse_poly("z1*h", 2),
            Err(Error::HbarNotAllowed { column: 4 })
        );
        let s = parse_series("z1*z2 - 1/2*i*h + h^3", 2, 2).unwrap();
        assert_eq!(s.order(), 2);
        assert_eq!(s.to_string(), "z1*z2 - 1/2*i*h");
        assert!(matches!(parse_expr("z1", 2, 2).unwrap(), Parsed::Poly(_)));
    }

    #[test]
    fn complex_coefficients_print_parenthesized() {
        let p = parse_poly("(1 + 2*i)*z1 - (3 - i)", 1).unwrap();
        assert_eq!(p.to_string(), "(1 + 2*i)*z1 + (-3 + i)");
        assert_eq!(parse_poly(&p.to_string(), 1).unwrap(), p);
    }

    #[test]
    fn scalars() {
        assert_eq!(parse_scalar("-1/2").unwrap(), ExactComplex::ratio(-1, 2));
        assert_eq!(
            parse_scalar("1/2 - 2/3*i").unwrap(),
            ExactComplex::gaussian(1, 2, -2, 3)
        );
        assert!(parse_scalar("z1").is_err());
    }
}
