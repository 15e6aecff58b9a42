use std::fmt;

use super::LogicError;

/// First-order formulas over named sorts and named predicates.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    /// `var ∈ pred`
    In { var: String, pred: String },
    Eq(String, String),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Not(Box<Formula>),
    Exists { var: String, sort: String, body: Box<Formula> },
    Forall { var: String, sort: String, body: Box<Formula> },
}

impl Formula {
    pub fn member(var: &str, pred: &str) -> Formula {
        Formula::In {
            var: var.to_string(),
            pred: pred.to_string(),
        }
    }

    pub fn eq(a: &str, b: &str) -> Formula {
        Formula::Eq(a.to_string(), b.to_string())
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(a: Formula) -> Formula {
        Formula::Not(Box::new(a))
    }

    pub fn exists(var: &str, sort: &str, body: Formula) -> Formula {
        Formula::Exists {
            var: var.to_string(),
            sort: sort.to_string(),
            body: Box::new(body),
        }
    }

    pub fn forall(var: &str, sort: &str, body: Formula) -> Formula {
        Formula::Forall {
            var: var.to_string(),
            sort: sort.to_string(),
            body: Box::new(body),
        }
    }

    /// Number of levels in the syntax tree; atoms have depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Formula::True | Formula::False | Formula::In { .. } | Formula::Eq(..) => 1,
            Formula::Not(a) => 1 + a.depth(),
            Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => 1 + a.depth().max(b.depth()),
            Formula::Exists { body, .. } | Formula::Forall { body, .. } => 1 + body.depth(),
        }
    }

    /// Parses the parenthesized prefix syntax, e.g.
    /// `(forall x F (implies (in x A) (in x B)))`.
    pub fn parse(src: &str) -> Result<Formula, LogicError> {
        let tokens = tokenize(src);
        let mut pos = 0;
        let f = parse_formula(&tokens, &mut pos, src.len())?;
        if let Some(t) = tokens.get(pos) {
            return Err(LogicError::Parse {
                offset: t.offset,
                message: format!("unexpected `{}` after the formula", t.text),
            });
        }
        Ok(f)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::True => write!(f, "true"),
            Formula::False => write!(f, "false"),
            Formula::In { var, pred } => write!(f, "(in {var} {pred})"),
            Formula::Eq(a, b) => write!(f, "(eq {a} {b})"),
            Formula::And(a, b) => write!(f, "(and {a} {b})"),
            Formula::Or(a, b) => write!(f, "(or {a} {b})"),
            Formula::Implies(a, b) => write!(f, "(implies {a} {b})"),
            Formula::Not(a) => write!(f, "(not {a})"),
            Formula::Exists { var, sort, body } => write!(f, "(exists {var} {sort} {body})"),
            Formula::Forall { var, sort, body } => write!(f, "(forall {var} {sort} {body})"),
        }
    }
}

struct Token<'a> {
    text: &'a str,
    offset: usize,
}

fn tokenize(src: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, c) in src.char_indices() {
        if c == '(' || c == ')' || c.is_whitespace() {
            if let Some(s) = start.take() {
                out.push(Token {
                    text: &src[s..i],
                    offset: s,
                });
            }
            if !c.is_whitespace() {
                out.push(Token {
                    text: &src[i..i + 1],
                    offset: i,
                });
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        out.push(Token {
            text: &src[s..],
            offset: s,
        });
    }
    out
}

fn parse_formula(tokens: &[Token], pos: &mut usize, end: usize) -> Result<Formula, LogicError> {
    let err = |offset: usize, message: String| LogicError::Parse { offset, message };
    let t = tokens.get(*pos).ok_or_else(|| err(end, "expected a formula".into()))?;
    *pos += 1;
    match t.text {
        "true" => return Ok(Formula::True),
        "false" => return Ok(Formula::False),
        "(" => {}
        other => return Err(err(t.offset, format!("expected `(`, `true` or `false`, found `{other}`"))),
    }
    let head = tokens.get(*pos).ok_or_else(|| err(end, "expected an operator".into()))?;
    *pos += 1;
    let name = |pos: &mut usize| -> Result<String, LogicError> {
        let t = tokens.get(*pos).ok_or_else(|| err(end, "expected a name".into()))?;
        if t.text == "(" || t.text == ")" {
            return Err(err(t.offset, format!("expected a name, found `{}`", t.text)));
        }
        *pos += 1;
        Ok(t.text.to_string())
    };
    let f = match head.text {
        "in" => {
            let var = name(pos)?;
            Formula::In { var, pred: name(pos)? }
        }
        "eq" => {
            let a = name(pos)?;
            Formula::Eq(a, name(pos)?)
        }
        "not" => Formula::not(parse_formula(tokens, pos, end)?),
        "and" | "or" | "implies" => {
            let mut args = vec![parse_formula(tokens, pos, end)?];
            while tokens.get(*pos).is_some_and(|t| t.text != ")") {
                args.push(parse_formula(tokens, pos, end)?);
            }
            if args.len() < 2 || (head.text == "implies" && args.len() != 2) {
                return Err(err(head.offset, format!("`{}` takes two arguments", head.text)));
            }
            let build = match head.text {
                "and" => Formula::and,
                "or" => Formula::or,
                _ => Formula::implies,
            };
            let last = args.pop().expect("at least two arguments");
            args.into_iter().rev().fold(last, |acc, a| build(a, acc))
        }
        "exists" | "forall" => {
            let var = name(pos)?;
            let sort = name(pos)?;
            let body = parse_formula(tokens, pos, end)?;
            if head.text == "exists" {
                Formula::exists(&var, &sort, body)
            } else {
                Formula::forall(&var, &sort, body)
            }
        }
        other => return Err(err(head.offset, format!("unknown operator `{other}`"))),
    };
    match tokens.get(*pos) {
        Some(t) if t.text == ")" => {
            *pos += 1;
            Ok(f)
        }
        Some(t) => Err(err(t.offset, format!("expected `)`, found `{}`", t.text))),
        None => Err(err(end, "missing `)`".into())),
    }
}
