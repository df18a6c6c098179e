//! PGSolver-style text format.
//!
//! ```text
//! parity <max_id>;
//! <id> <priority> <owner> <succ>,<succ>,... ["label"];
//! ```
//!
//! The header is optional on input and always written on output. Node ids
//! must be exactly `0..count`, in any order.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{ParseError, ParseErrorKind};
use crate::game::{GameGraph, Node, NodeId, ParityGame, Player, Priority};

pub fn serialize(game: &ParityGame) -> String {
    let mut out = String::new();
    let max_id = game.node_count().saturating_sub(1);
    writeln!(out, "parity {max_id};").unwrap();
    for v in game.nodes() {
        let node = game.node(v);
        write!(out, "{} {} {} ", v, node.priority, node.owner).unwrap();
        for (i, s) in node.successors.iter().enumerate() {
            if i > 0 {
                out.push(',');
            }
            write!(out, "{s}").unwrap();
        }
        if let Some(label) = &node.label {
            write!(out, " \"{label}\"").unwrap();
        }
        out.push_str(";\n");
    }
    out
}

pub fn parse(text: &str) -> Result<ParityGame, ParseError> {
    let mut header: Option<(usize, usize)> = None;
    let mut defs: BTreeMap<usize, (usize, Node)> = BTreeMap::new();

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() {
            continue;
        }
        let err = |kind| ParseError { line, kind };
        let mut cur = Cursor::new(trimmed);
        if cur.eat_keyword("parity") {
            if header.is_some() || !defs.is_empty() {
                return Err(err(ParseErrorKind::Syntax(
                    "header must come first and only once".into(),
                )));
            }
            cur.expect_space().map_err(err)?;
            let max_id = cur.number().map_err(err)?;
            cur.skip_space();
            cur.expect(';').map_err(err)?;
            cur.expect_end().map_err(err)?;
            header = Some((line, max_id));
            continue;
        }

        let id = cur.number().map_err(err)?;
        cur.expect_space().map_err(err)?;
        if cur.peek() == Some('-') {
            return Err(err(ParseErrorKind::NegativePriority));
        }
        let priority = Priority::try_from(cur.number().map_err(err)?)
            .map_err(|_| err(ParseErrorKind::Overflow))?;
        cur.expect_space().map_err(err)?;
        let owner = match cur.number().map_err(err)? {
            0 => Player::Even,
            1 => Player::Odd,
            o => {
                return Err(err(ParseErrorKind::Syntax(format!(
                    "owner must be 0 or 1, got {o}"
                ))))
            }
        };
        cur.expect_space().map_err(err)?;
        // An empty list is accepted here; dead ends are a validation concern.
        let mut successors = Vec::new();
        if cur.peek().is_some_and(|c| c.is_ascii_digit()) {
            successors.push(NodeId(cur.number().map_err(err)?));
            while cur.peek() == Some(',') {
                cur.bump();
                successors.push(NodeId(cur.number().map_err(err)?));
            }
        }
        cur.skip_space();
        let label = if cur.peek() == Some('"') {
            Some(cur.quoted().map_err(err)?)
        } else {
            None
        };
        cur.skip_space();
        cur.expect(';').map_err(err)?;
        cur.expect_end().map_err(err)?;

        let mut node = Node::new(owner, priority, successors);
        node.label = label;
        if defs.insert(id, (line, node)).is_some() {
            return Err(err(ParseErrorKind::DuplicateNode(id)));
        }
    }

    let count = defs.len();
    if count == 0 {
        return Err(ParseError {
            line: text.lines().count().max(1),
            kind: ParseErrorKind::Empty,
        });
    }
    if let Some((line, declared)) = header {
        if declared != count - 1 {
            return Err(ParseError {
                line,
                kind: ParseErrorKind::HeaderMismatch {
                    declared,
                    found: count - 1,
                },
            });
        }
    }

    let mut nodes = Vec::with_capacity(count);
    for (expected, (id, (line, node))) in defs.into_iter().enumerate() {
        if id != expected {
            return Err(ParseError {
                line,
                kind: ParseErrorKind::MissingNode(expected),
            });
        }
        if let Some(bad) = node.successors.iter().find(|s| s.index() >= count) {
            return Err(ParseError {
                line,
                kind: ParseErrorKind::DanglingSuccessor(bad.index()),
            });
        }
        nodes.push(node);
    }
    // Ids and labels were checked above, so construction cannot fail.
    Ok(ParityGame::new(nodes).expect("parsed game is well-formed"))
}

struct Cursor<'a> {
    rest: &'a str,
}

impl<'a> Cursor<'a> {
    fn new(s: &'a str) -> Self {
        Cursor { rest: s }
    }

    fn peek(&self) -> Option<char> {
        self.rest.chars().next()
    }

    fn bump(&mut self) {
        if let Some(c) = self.peek() {
            self.rest = &self.rest[c.len_utf8()..];
        }
    }

    fn eat_keyword(&mut self, kw: &str) -> bool {
        match self.rest.strip_prefix(kw) {
            Some(r) if !r.starts_with(|c: char| c.is_ascii_alphanumeric()) => {
                self.rest = r;
                true
            }
            _ => false,
        }
    }

    fn skip_space(&mut self) {
        self.rest = self.rest.trim_start_matches([' ', '\t']);
    }

    fn expect_space(&mut self) -> Result<(), ParseErrorKind> {
        if !self.rest.starts_with([' ', '\t']) {
            return Err(self.unexpected("whitespace"));
        }
        self.skip_space();
        Ok(())
    }

    fn expect(&mut self, c: char) -> Result<(), ParseErrorKind> {
        if self.peek() == Some(c) {
            self.bump();
            Ok(())
        } else {
            Err(self.unexpected(&format!("'{c}'")))
        }
    }

    fn expect_end(&mut self) -> Result<(), ParseErrorKind> {
        self.skip_space();
        if self.rest.is_empty() {
            Ok(())
        } else {
            Err(self.unexpected("end of line"))
        }
    }

    fn number(&mut self) -> Result<usize, ParseErrorKind> {
        let len = self
            .rest
            .find(|c: char| !c.is_ascii_digit())
            .unwrap_or(self.rest.len());
        if len == 0 {
            return Err(self.unexpected("a number"));
        }
        let (digits, rest) = self.rest.split_at(len);
        let value = digits.parse().map_err(|_| ParseErrorKind::Overflow)?;
        self.rest = rest;
        Ok(value)
    }

    fn quoted(&mut self) -> Result<String, ParseErrorKind> {
        self.expect('"')?;
        let end = self
            .rest
            .find('"')
            .ok_or_else(|| ParseErrorKind::Syntax("unterminated label".into()))?;
        let label = &self.rest[..end];
        if label.chars().any(char::is_control) {
            return Err(ParseErrorKind::Syntax("control character in label".into()));
        }
        self.rest = &self.rest[end + 1..];
        Ok(label.to_string())
    }

    fn unexpected(&self, wanted: &str) -> ParseErrorKind {
        match self.peek() {
            Some(c) => ParseErrorKind::Syntax(format!("expected {wanted}, found '{c}'")),
            None => ParseErrorKind::Syntax(format!("expected {wanted}, found end of line")),
        }
    }
}
