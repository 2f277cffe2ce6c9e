//! Boolean conditions on the block sizes `m`, `n`, `o`.

use std::fmt;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Guard {
    True,
    Cmp(char, Op, usize),
    And(Box<Guard>, Box<Guard>),
    Or(Box<Guard>, Box<Guard>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Op {
    Ge,
    Le,
    Gt,
    Lt,
    Eq,
    Ne,
}

impl Guard {
    pub fn eval(&self, m: usize, n: usize, o: usize) -> bool {
        match self {
            Guard::True => true,
            Guard::Cmp(v, op, k) => {
                let x = match v {
                    'm' => m,
                    'n' => n,
                    _ => o,
                };
                match op {
                    Op::Ge => x >= *k,
                    Op::Le => x <= *k,
                    Op::Gt => x > *k,
                    Op::Lt => x < *k,
                    Op::Eq => x == *k,
                    Op::Ne => x != *k,
                }
            }
            Guard::And(a, b) => a.eval(m, n, o) && b.eval(m, n, o),
            Guard::Or(a, b) => a.eval(m, n, o) || b.eval(m, n, o),
        }
    }

    pub fn parse(text: &str) -> Result<Guard, String> {
        let toks = tokenize(text)?;
        let mut p = Parser { toks, pos: 0 };
        let g = p.or()?;
        if p.pos != p.toks.len() {
            return Err(format!("trailing input in guard {text:?}"));
        }
        Ok(g)
    }
}

impl fmt::Display for Guard {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Guard::True => write!(f, "true"),
            Guard::Cmp(v, op, k) => {
                let s = match op {
                    Op::Ge => ">=",
                    Op::Le => "<=",
                    Op::Gt => ">",
                    Op::Lt => "<",
                    Op::Eq => "==",
                    Op::Ne => "!=",
                };
                write!(f, "{v}{s}{k}")
            }
            Guard::And(a, b) => write!(f, "{a} & {b}"),
            Guard::Or(a, b) => write!(f, "({a} | {b})"),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Var(char),
    Num(usize),
    Op(Op),
    And,
    Or,
    Open,
    Close,
    True,
}

fn tokenize(s: &str) -> Result<Vec<Tok>, String> {
    let b = s.as_bytes();
    let mut i = 0;
    let mut out = Vec::new();
    while i < b.len() {
        let c = b[i] as char;
        let two = s.get(i..i + 2).unwrap_or("");
        match c {
            ' ' | '\t' => i += 1,
            'm' | 'n' | 'o' => {
                out.push(Tok::Var(c));
                i += 1;
            }
            '&' => {
                out.push(Tok::And);
                i += 1;
            }
            '|' => {
                out.push(Tok::Or);
                i += 1;
            }
            '(' => {
                out.push(Tok::Open);
                i += 1;
            }
            ')' => {
                out.push(Tok::Close);
                i += 1;
            }
            '0'..='9' => {
                let start = i;
                while i < b.len() && b[i].is_ascii_digit() {
                    i += 1;
                }
                out.push(Tok::Num(s[start..i].parse().unwrap()));
            }
            't' if s[i..].starts_with("true") => {
                out.push(Tok::True);
                i += 4;
            }
            _ => {
                let op = match two {
                    ">=" => Op::Ge,
                    "<=" => Op::Le,
                    "==" => Op::Eq,
                    "!=" => Op::Ne,
                    _ => match c {
                        '>' => Op::Gt,
                        '<' => Op::Lt,
                        _ => return Err(format!("unexpected {c:?} in guard {s:?}")),
                    },
                };
                i += if matches!(op, Op::Gt | Op::Lt) { 1 } else { 2 };
                out.push(Tok::Op(op));
            }
        }
    }
    Ok(out)
}

struct Parser {
    toks: Vec<Tok>,
    pos: usize,
}

impl Parser {
    fn next(&mut self) -> Option<Tok> {
        let t = self.toks.get(self.pos).cloned();
        self.pos += 1;
        t
    }

    fn or(&mut self) -> Result<Guard, String> {
        let mut g = self.and()?;
        while self.toks.get(self.pos) == Some(&Tok::Or) {
            self.pos += 1;
            g = Guard::Or(Box::new(g), Box::new(self.and()?));
        }
        Ok(g)
    }

    fn and(&mut self) -> Result<Guard, String> {
        let mut g = self.atom()?;
        while self.toks.get(self.pos) == Some(&Tok::And) {
            self.pos += 1;
            g = Guard::And(Box::new(g), Box::new(self.atom()?));
        }
        Ok(g)
    }

    fn atom(&mut self) -> Result<Guard, String> {
        match self.next() {
            Some(Tok::True) => Ok(Guard::True),
            Some(Tok::Open) => {
                let g = self.or()?;
                match self.next() {
                    Some(Tok::Close) => Ok(g),
                    _ => Err("missing ')'".into()),
                }
            }
            Some(Tok::Var(v)) => match (self.next(), self.next()) {
                (Some(Tok::Op(op)), Some(Tok::Num(k))) => Ok(Guard::Cmp(v, op, k)),
                _ => Err(format!("expected comparison after {v}")),
            },
            t => Err(format!("unexpected token {t:?}")),
        }
    }
}
