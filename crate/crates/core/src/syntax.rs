//! Text format for terms, atoms and goals.
//!
//! ```text
//! % comment to end of line
//! named: p(X, t(4)), r(u(5, s(Y)), 8), r(u(8, Z), 5).
//! q(3, +(3, X)), '='(A, B).
//! ```
//!
//! * functors and predicates: `[a-z][A-Za-z0-9_]*`, a run of operator
//!   characters such as `+` or `*`, or a quoted name `'...'`;
//! * variables: `[A-Z_][A-Za-z0-9_]*`;
//! * integers: `-?[0-9]+`;
//! * a goal is a comma-separated atom list ending in `.`, optionally
//!   preceded by a `label:`; a lone `.` is the empty goal.

use std::collections::HashMap;
use std::fmt;

use crate::error::{Error, Result, Span};
use crate::goal::Goal;
use crate::term::{Atom, Constant, Term};

const OPERATOR_CHARS: &str = "+-*/<>=\\^~#&@?!$|";

fn is_plain_name(s: &str) -> bool {
    let mut chars = s.chars();
    matches!(chars.next(), Some(c) if c.is_ascii_lowercase())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

fn is_operator_name(s: &str) -> bool {
    !s.is_empty() && s.chars().all(|c| OPERATOR_CHARS.contains(c))
}

fn quoted(s: &str) -> String {
    let mut out = String::with_capacity(s.len() + 2);
    out.push('\'');
    for c in s.chars() {
        if c == '\'' || c == '\\' {
            out.push('\\');
        }
        out.push(c);
    }
    out.push('\'');
    out
}

/// Spelling of a functor or constant name.
pub fn quote_functor(name: &str) -> String {
    if is_plain_name(name) || is_operator_name(name) {
        name.to_string()
    } else {
        quoted(name)
    }
}

/// Spelling of a predicate name; operator predicates are always quoted.
pub fn quote_predicate(name: &str) -> String {
    if is_plain_name(name) {
        name.to_string()
    } else {
        quoted(name)
    }
}

pub fn is_valid_predicate_name(name: &str) -> bool {
    is_plain_name(name)
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Var(String),
    Name(String),
    Int(i64),
    LParen,
    RParen,
    Comma,
    Dot,
    Colon,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Var(v) => write!(f, "variable `{v}`"),
            Tok::Name(n) => write!(f, "name `{n}`"),
            Tok::Int(n) => write!(f, "integer `{n}`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Colon => f.write_str("`:`"),
        }
    }
}

fn tokenize(text: &str) -> Result<Vec<(Tok, Span)>> {
    let chars: Vec<char> = text.chars().collect();
    let mut toks = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let err = |line, col, message: String| Error::Parse {
        span: Span { line, col },
        message,
    };
    while i < chars.len() {
        let c = chars[i];
        let span = Span { line, col };
        let start = i;
        if c == '\n' {
            i += 1;
            line += 1;
            col = 1;
            continue;
        }
        if c.is_whitespace() {
            i += 1;
            col += 1;
            continue;
        }
        if c == '%' {
            while i < chars.len() && chars[i] != '\n' {
                i += 1;
            }
            continue;
        }
        let word = |i: &mut usize| {
            while *i < chars.len() && (chars[*i].is_ascii_alphanumeric() || chars[*i] == '_') {
                *i += 1;
            }
        };
        let tok = match c {
            '(' => {
                i += 1;
                Tok::LParen
            }
            ')' => {
                i += 1;
                Tok::RParen
            }
            ',' => {
                i += 1;
                Tok::Comma
            }
            '.' => {
                i += 1;
                Tok::Dot
            }
            ':' => {
                i += 1;
                Tok::Colon
            }
            '\'' => {
                i += 1;
                let mut name = String::new();
                loop {
                    match chars.get(i) {
                        None | Some('\n') => {
                            return Err(err(span.line, span.col, "unterminated quoted name".into()))
                        }
                        Some('\\') => {
                            match chars.get(i + 1) {
                                Some(&e) if e != '\n' => name.push(e),
                                _ => {
                                    return Err(err(
                                        span.line,
                                        span.col,
                                        "unterminated quoted name".into(),
                                    ))
                                }
                            }
                            i += 2;
                        }
                        Some('\'') => {
                            i += 1;
                            break;
                        }
                        Some(&ch) => {
                            name.push(ch);
                            i += 1;
                        }
                    }
                }
                if name.is_empty() {
                    return Err(err(span.line, span.col, "empty quoted name".into()));
                }
                Tok::Name(name)
            }
            c if c.is_ascii_digit() || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) => {
                i += 1;
                while i < chars.len() && chars[i].is_ascii_digit() {
                    i += 1;
                }
                let lit: String = chars[start..i].iter().collect();
                let n = lit
                    .parse::<i64>()
                    .map_err(|_| err(span.line, span.col, format!("integer `{lit}` out of range")))?;
                Tok::Int(n)
            }
            c if c.is_ascii_uppercase() || c == '_' => {
                word(&mut i);
                Tok::Var(chars[start..i].iter().collect())
            }
            c if c.is_ascii_lowercase() => {
                word(&mut i);
                Tok::Name(chars[start..i].iter().collect())
            }
            c if OPERATOR_CHARS.contains(c) => {
                while i < chars.len() && OPERATOR_CHARS.contains(chars[i]) {
                    i += 1;
                }
                Tok::Name(chars[start..i].iter().collect())
            }
            other => return Err(err(line, col, format!("unexpected character `{other}`"))),
        };
        col += i - start;
        toks.push((tok, span));
    }
    Ok(toks)
}

struct Parser {
    toks: Vec<(Tok, Span)>,
    pos: usize,
    end: Span,
}

impl Parser {
    fn new(text: &str) -> Result<Self> {
        let toks = tokenize(text)?;
        let lines = text.split('\n').count().max(1);
        let last_col = text.rsplit('\n').next().map_or(0, |l| l.chars().count()) + 1;
        Ok(Parser {
            toks,
            pos: 0,
            end: Span {
                line: lines,
                col: last_col,
            },
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|(t, _)| t)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.toks.get(self.pos + offset).map(|(t, _)| t)
    }

    fn span(&self) -> Span {
        self.toks.get(self.pos).map_or(self.end, |(_, s)| *s)
    }

    fn at_end(&self) -> bool {
        self.pos >= self.toks.len()
    }

    fn next(&mut self) -> Option<(Tok, Span)> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn error<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            span: self.span(),
            message: message.into(),
        })
    }

    fn unexpected<T>(&self, wanted: &str) -> Result<T> {
        match self.peek() {
            Some(t) => self.error(format!("expected {wanted}, found {t}")),
            None => self.error(format!("expected {wanted}, found end of input")),
        }
    }

    fn expect(&mut self, tok: Tok, wanted: &str) -> Result<()> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            self.unexpected(wanted)
        }
    }

    fn args(&mut self) -> Result<Vec<Term>> {
        self.expect(Tok::LParen, "`(`")?;
        if self.peek() == Some(&Tok::RParen) {
            return self.error("empty argument list");
        }
        let mut args = vec![self.term()?];
        loop {
            match self.peek() {
                Some(Tok::Comma) => {
                    self.pos += 1;
                    args.push(self.term()?);
                }
                Some(Tok::RParen) => {
                    self.pos += 1;
                    return Ok(args);
                }
                _ => return self.unexpected("`,` or `)`"),
            }
        }
    }

    fn term(&mut self) -> Result<Term> {
        match self.peek().cloned() {
            Some(Tok::Var(v)) => {
                self.pos += 1;
                Ok(Term::Var(v))
            }
            Some(Tok::Int(n)) => {
                self.pos += 1;
                Ok(Term::Const(Constant::Int(n)))
            }
            Some(Tok::Name(name)) => {
                self.pos += 1;
                if self.peek() == Some(&Tok::LParen) {
                    Ok(Term::App(name, self.args()?))
                } else {
                    Ok(Term::Const(Constant::Sym(name)))
                }
            }
            _ => self.unexpected("a term"),
        }
    }

    fn atom(&mut self) -> Result<(Atom, Span)> {
        let span = self.span();
        match self.peek().cloned() {
            Some(Tok::Name(name)) => {
                self.pos += 1;
                let args = if self.peek() == Some(&Tok::LParen) {
                    self.args()?
                } else {
                    Vec::new()
                };
                Ok((Atom::new(name, args), span))
            }
            _ => self.unexpected("an atom"),
        }
    }

    fn goal(&mut self, arities: &mut Option<HashMap<String, (usize, Span)>>) -> Result<(Option<String>, Goal, Span)> {
        let span = self.span();
        let mut label = None;
        if let (Some(Tok::Name(name)), Some(Tok::Colon)) = (self.peek(), self.peek_at(1)) {
            label = Some(name.clone());
            self.pos += 2;
        }
        let mut goal = Goal::new();
        if self.peek() == Some(&Tok::Dot) {
            self.pos += 1;
            return Ok((label, goal, span));
        }
        loop {
            let (atom, at) = self.atom()?;
            if let Some(seen) = arities.as_mut() {
                match seen.get(&atom.predicate) {
                    Some(&(n, _)) if n != atom.arity() => {
                        return Err(Error::ArityConflict {
                            name: atom.predicate.clone(),
                            first: n,
                            second: atom.arity(),
                            span: at,
                        })
                    }
                    Some(_) => {}
                    None => {
                        seen.insert(atom.predicate.clone(), (atom.arity(), at));
                    }
                }
            }
            goal.insert(atom);
            match self.next() {
                Some((Tok::Comma, _)) => continue,
                Some((Tok::Dot, _)) => return Ok((label, goal, span)),
                _ => {
                    self.pos -= 1;
                    return self.unexpected("`,` or `.`");
                }
            }
        }
    }
}

/// A goal read from a document, with its optional label and position.
#[derive(Debug, Clone)]
pub struct NamedGoal {
    pub name: Option<String>,
    pub goal: Goal,
    pub span: Span,
}

impl PartialEq for NamedGoal {
    /// Spans are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.name == other.name && self.goal == other.goal
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct GoalDocument {
    pub goals: Vec<NamedGoal>,
}

impl GoalDocument {
    pub fn len(&self) -> usize {
        self.goals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.goals.is_empty()
    }

    pub fn push(&mut self, name: Option<String>, goal: Goal) {
        self.goals.push(NamedGoal {
            name,
            goal,
            span: Span::default(),
        });
    }

    pub fn get(&self, name: &str) -> Option<&Goal> {
        self.goals
            .iter()
            .find(|g| g.name.as_deref() == Some(name))
            .map(|g| &g.goal)
    }
}

impl fmt::Display for GoalDocument {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for g in &self.goals {
            if let Some(name) = &g.name {
                write!(f, "{}: ", quote_predicate(name))?;
            }
            writeln!(f, "{}", g.goal)?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, Default)]
pub struct ParseOptions {
    /// Reject a predicate name used with two different arities.
    pub strict_arity: bool,
}

pub fn parse_goals(text: &str) -> Result<GoalDocument> {
    parse_goals_with(text, ParseOptions::default())
}

pub fn parse_goals_with(text: &str, options: ParseOptions) -> Result<GoalDocument> {
    let mut p = Parser::new(text)?;
    let mut arities = options.strict_arity.then(HashMap::new);
    let mut doc = GoalDocument::default();
    while !p.at_end() {
        let (name, goal, span) = p.goal(&mut arities)?;
        doc.goals.push(NamedGoal { name, goal, span });
    }
    Ok(doc)
}

/// Parses exactly one goal.
pub fn parse_goal(text: &str) -> Result<Goal> {
    let mut p = Parser::new(text)?;
    let (_, goal, _) = p.goal(&mut None)?;
    if !p.at_end() {
        return p.error("trailing input after goal");
    }
    Ok(goal)
}

pub fn parse_atom(text: &str) -> Result<Atom> {
    let mut p = Parser::new(text)?;
    let (atom, _) = p.atom()?;
    if !p.at_end() {
        return p.unexpected("end of input");
    }
    Ok(atom)
}

pub fn parse_term(text: &str) -> Result<Term> {
    let mut p = Parser::new(text)?;
    let t = p.term()?;
    if !p.at_end() {
        return p.unexpected("end of input");
    }
    Ok(t)
}
