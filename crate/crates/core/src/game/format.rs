//! Arena text format, one position per line:
//!
//! ```text
//! parity 3;
//! 0 1 0 1,2 "(s0, mu z. <a> z)";
//! 1 0 1 - "(s0, <a> (mu z. <a> z))";
//! ```
//!
//! The header gives the largest position id. Each line is `id priority
//! owner successors "label";` with owner `0` for Eva and `1` for Adam, and
//! `-` for an empty successor list. Labels escape `"` and `\` with `\`.

use std::fmt;

use crate::error::{Error, Position, Result};

use super::{ParityGame, Player};

impl fmt::Display for ParityGame {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "parity {};", self.len() as isize - 1)?;
        for v in 0..self.len() {
            let owner = match self.owner[v] {
                Player::Eva => 0,
                Player::Adam => 1,
            };
            let succ = if self.edges[v].is_empty() {
                "-".to_string()
            } else {
                self.edges[v]
                    .iter()
                    .map(usize::to_string)
                    .collect::<Vec<_>>()
                    .join(",")
            };
            let label = self.labels[v].replace('\\', "\\\\").replace('"', "\\\"");
            writeln!(f, "{v} {} {owner} {succ} \"{label}\";", self.priority[v])?;
        }
        Ok(())
    }
}

fn err(text: &str, at: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        pos: Position::locate(text, at),
        msg: msg.into(),
    }
}

pub fn parse_game(text: &str) -> Result<ParityGame> {
    let mut lines = Vec::new();
    let mut offset = 0;
    for raw in text.split_inclusive('\n') {
        let start = offset;
        offset += raw.len();
        let line = raw.trim();
        if !line.is_empty() && !line.starts_with('#') {
            lines.push((start, line));
        }
    }
    let Some(&(hstart, header)) = lines.first() else {
        return Err(err(text, 0, "missing `parity` header"));
    };
    let max: isize = header
        .strip_prefix("parity")
        .and_then(|r| r.trim().strip_suffix(';'))
        .and_then(|n| n.trim().parse().ok())
        .ok_or_else(|| err(text, hstart, "expected `parity <max id>;`"))?;
    let n = (max + 1).max(0) as usize;
    if lines.len() - 1 != n {
        return Err(err(text, hstart, format!("expected {n} positions, found {}", lines.len() - 1)));
    }
    let mut game = ParityGame::new();
    let mut pending = Vec::new();
    for (expect, &(start, line)) in lines[1..].iter().enumerate() {
        let bad = |m: &str| err(text, start, m.to_string());
        let body = line.strip_suffix(';').ok_or_else(|| bad("missing `;`"))?;
        let (head, label) = match body.find('"') {
            Some(q) => (&body[..q], unescape(&body[q..]).ok_or_else(|| bad("bad label"))?),
            None => (body, String::new()),
        };
        let fields: Vec<&str> = head.split_whitespace().collect();
        let [id, prio, owner, succ] = fields.as_slice() else {
            return Err(bad("expected `id priority owner successors`"));
        };
        if id.parse::<usize>().ok() != Some(expect) {
            return Err(bad("positions must be listed in order"));
        }
        let prio: u32 = prio.parse().map_err(|_| bad("bad priority"))?;
        let owner = match *owner {
            "0" => Player::Eva,
            "1" => Player::Adam,
            _ => return Err(bad("owner must be 0 or 1")),
        };
        let succ: Vec<usize> = if *succ == "-" {
            Vec::new()
        } else {
            succ.split(',')
                .map(|s| s.parse::<usize>().ok().filter(|&t| t < n))
                .collect::<Option<_>>()
                .ok_or_else(|| bad("bad successor list"))?
        };
        game.add_position(owner, prio, label);
        pending.push(succ);
    }
    for (v, succ) in pending.into_iter().enumerate() {
        for w in succ {
            game.add_edge(v, w);
        }
    }
    Ok(game)
}

fn unescape(quoted: &str) -> Option<String> {
    let inner = quoted.strip_prefix('"')?.strip_suffix('"')?;
    let mut out = String::new();
    let mut chars = inner.chars();
    while let Some(c) = chars.next() {
        match c {
            '\\' => out.push(chars.next()?),
            '"' => return None,
            c => out.push(c),
        }
    }
    Some(out)
}
