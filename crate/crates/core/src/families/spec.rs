//! Textual family descriptions such as `GL(k=3,s=4,l=2)` or `Z(k=3,l=4)`.
//!
//! | syntax                           | construction                 |
//! |----------------------------------|------------------------------|
//! | `L(k=,l=)`                       | ladder                       |
//! | `Z(k=,l=)`                       | zycle                        |
//! | `LZ(k=,m=,l=)`                   | ladder closed by a zycle     |
//! | `exp(k=,s=)`                     | expansion of `K_s`           |
//! | `GL(k=,s=,l=)` / `l=[..]`        | glued ladders                |
//! | `GLZ(k=,s=,m=,l=)`               | glued ladder-zycles          |
//! | `base(k=,s=,n=)`                 | the partite base host        |
//! | `K(k=,n=)`                       | complete k-graph             |
//!
//! Keys may appear in any order on input; [`FamilySpec`]'s `Display` emits
//! the order above, so display output parses back to the same value.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use itertools::Itertools;

use super::{
    expansion_complete, glued_ladder_zycles, glued_ladders, ladder, ladder_zycle, part1_base, zycle, LabeledGraph,
};
use crate::error::{Error, Result};
use crate::hypergraph::{binomial, complete_kgraph, Hypergraph};

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum FamilySpec {
    Ladder { k: usize, l: usize },
    Zycle { k: usize, l: usize },
    LadderZycle { k: usize, m: usize, l: usize },
    Expansion { k: usize, s: usize },
    GluedLadders { k: usize, s: usize, lengths: Vec<usize> },
    GluedLadderZycles { k: usize, s: usize, m: usize, l: usize },
    Part1Base { k: usize, s: usize, n: usize },
    CompleteK { k: usize, n: usize },
}

impl FamilySpec {
    pub fn k(&self) -> usize {
        match *self {
            FamilySpec::Ladder { k, .. }
            | FamilySpec::Zycle { k, .. }
            | FamilySpec::LadderZycle { k, .. }
            | FamilySpec::Expansion { k, .. }
            | FamilySpec::GluedLadders { k, .. }
            | FamilySpec::GluedLadderZycles { k, .. }
            | FamilySpec::Part1Base { k, .. }
            | FamilySpec::CompleteK { k, .. } => k,
        }
    }

    pub fn build(&self) -> Result<LabeledGraph> {
        match self {
            FamilySpec::Ladder { k, l } => ladder(*k, *l),
            FamilySpec::Zycle { k, l } => zycle(*k, *l),
            FamilySpec::LadderZycle { k, m, l } => ladder_zycle(*k, *m, *l),
            FamilySpec::Expansion { k, s } => expansion_complete(*k, *s),
            FamilySpec::GluedLadders { k, s, lengths } => glued_ladders(*k, *s, lengths),
            FamilySpec::GluedLadderZycles { k, s, m, l } => glued_ladder_zycles(*k, *s, *m, *l),
            FamilySpec::Part1Base { k, s, n } => Ok(plain(part1_base(*k, *s, *n)?)),
            FamilySpec::CompleteK { k, n } => Ok(plain(complete_kgraph(*k, *n)?)),
        }
    }

    pub fn graph(&self) -> Result<Hypergraph> {
        Ok(self.build()?.graph)
    }
}

fn plain(g: Hypergraph) -> LabeledGraph {
    LabeledGraph::unlabeled(g)
}

impl fmt::Display for FamilySpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilySpec::Ladder { k, l } => write!(f, "L(k={k},l={l})"),
            FamilySpec::Zycle { k, l } => write!(f, "Z(k={k},l={l})"),
            FamilySpec::LadderZycle { k, m, l } => write!(f, "LZ(k={k},m={m},l={l})"),
            FamilySpec::Expansion { k, s } => write!(f, "exp(k={k},s={s})"),
            FamilySpec::GluedLadders { k, s, lengths } => {
                let full = lengths.len() as u64 == binomial(*s as u64, 2);
                if full && !lengths.is_empty() && lengths.iter().all_equal() {
                    write!(f, "GL(k={k},s={s},l={})", lengths[0])
                } else {
                    write!(f, "GL(k={k},s={s},l=[{}])", lengths.iter().join(","))
                }
            }
            FamilySpec::GluedLadderZycles { k, s, m, l } => write!(f, "GLZ(k={k},s={s},m={m},l={l})"),
            FamilySpec::Part1Base { k, s, n } => write!(f, "base(k={k},s={s},n={n})"),
            FamilySpec::CompleteK { k, n } => write!(f, "K(k={k},n={n})"),
        }
    }
}

#[derive(Debug, Clone)]
enum Value {
    Int(usize),
    List(Vec<usize>),
}

struct Parser<'a> {
    src: &'a [u8],
    pos: usize,
}

impl Parser<'_> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Parse {
            position: self.pos,
            message: message.into(),
        })
    }

    fn skip_ws(&mut self) {
        while self.src.get(self.pos).is_some_and(u8::is_ascii_whitespace) {
            self.pos += 1;
        }
    }

    fn expect(&mut self, c: u8) -> Result<()> {
        self.skip_ws();
        if self.src.get(self.pos) == Some(&c) {
            self.pos += 1;
            Ok(())
        } else {
            self.err(format!("expected '{}'", c as char))
        }
    }

    fn peek(&mut self) -> Option<u8> {
        self.skip_ws();
        self.src.get(self.pos).copied()
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_alphabetic) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a name");
        }
        Ok(String::from_utf8_lossy(&self.src[start..self.pos]).into_owned())
    }

    fn int(&mut self) -> Result<usize> {
        self.skip_ws();
        let start = self.pos;
        while self.src.get(self.pos).is_some_and(u8::is_ascii_digit) {
            self.pos += 1;
        }
        if start == self.pos {
            return self.err("expected a non-negative integer");
        }
        let text = std::str::from_utf8(&self.src[start..self.pos]).expect("ascii digits");
        text.parse().or_else(|_| {
            self.pos = start;
            self.err("integer too large")
        })
    }

    fn value(&mut self) -> Result<Value> {
        if self.peek() == Some(b'[') {
            self.pos += 1;
            let mut items = vec![self.int()?];
            while self.peek() == Some(b',') {
                self.pos += 1;
                items.push(self.int()?);
            }
            self.expect(b']')?;
            Ok(Value::List(items))
        } else {
            Ok(Value::Int(self.int()?))
        }
    }
}

impl FromStr for FamilySpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Parser {
            src: s.as_bytes(),
            pos: 0,
        };
        let name_pos = {
            p.skip_ws();
            p.pos
        };
        let name = p.ident()?;
        p.expect(b'(')?;
        let mut args: BTreeMap<String, (Value, usize)> = BTreeMap::new();
        if p.peek() != Some(b')') {
            loop {
                let at = {
                    p.skip_ws();
                    p.pos
                };
                let key = p.ident()?;
                p.expect(b'=')?;
                let v = p.value()?;
                if args.insert(key.clone(), (v, at)).is_some() {
                    p.pos = at;
                    return p.err(format!("duplicate key '{key}'"));
                }
                match p.peek() {
                    Some(b',') => p.pos += 1,
                    _ => break,
                }
            }
        }
        p.expect(b')')?;
        if p.peek().is_some() {
            return p.err("trailing input");
        }
        let end = p.pos;

        let keys: &[&str] = match name.as_str() {
            "L" | "Z" => &["k", "l"],
            "LZ" => &["k", "m", "l"],
            "exp" => &["k", "s"],
            "GL" => &["k", "s", "l"],
            "GLZ" => &["k", "s", "m", "l"],
            "base" => &["k", "s", "n"],
            "K" => &["k", "n"],
            _ => {
                return Err(Error::Parse {
                    position: name_pos,
                    message: format!("unknown family '{name}'"),
                })
            }
        };
        if let Some((extra, (_, at))) = args.iter().find(|(key, _)| !keys.contains(&key.as_str())) {
            return Err(Error::Parse {
                position: *at,
                message: format!("unexpected key '{extra}' for {name}"),
            });
        }
        let int = |key: &str| -> Result<usize> {
            match args.get(key) {
                Some((Value::Int(v), _)) => Ok(*v),
                Some((Value::List(_), at)) => Err(Error::Parse {
                    position: *at,
                    message: format!("'{key}' must be an integer"),
                }),
                None => Err(Error::Parse {
                    position: end,
                    message: format!("missing key '{key}' for {name}"),
                }),
            }
        };
        Ok(match name.as_str() {
            "L" => FamilySpec::Ladder {
                k: int("k")?,
                l: int("l")?,
            },
            "Z" => FamilySpec::Zycle {
                k: int("k")?,
                l: int("l")?,
            },
            "LZ" => FamilySpec::LadderZycle {
                k: int("k")?,
                m: int("m")?,
                l: int("l")?,
            },
            "exp" => FamilySpec::Expansion {
                k: int("k")?,
                s: int("s")?,
            },
            "GL" => {
                let (k, s) = (int("k")?, int("s")?);
                let lengths = match args.get("l") {
                    Some((Value::List(v), _)) => v.clone(),
                    Some((Value::Int(v), _)) => vec![*v; binomial(s as u64, 2) as usize],
                    None => {
                        return Err(Error::Parse {
                            position: end,
                            message: "missing key 'l' for GL".into(),
                        })
                    }
                };
                FamilySpec::GluedLadders { k, s, lengths }
            }
            "GLZ" => FamilySpec::GluedLadderZycles {
                k: int("k")?,
                s: int("s")?,
                m: int("m")?,
                l: int("l")?,
            },
            "base" => FamilySpec::Part1Base {
                k: int("k")?,
                s: int("s")?,
                n: int("n")?,
            },
            "K" => FamilySpec::CompleteK {
                k: int("k")?,
                n: int("n")?,
            },
            _ => unreachable!("name checked above"),
        })
    }
}
