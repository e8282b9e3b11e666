//! Text format for models:
//!
//! ```text
//! # comment
//! states: s0 s1 s2
//! rel a: s0->s1, s1->s2
//! val p: s2
//! ```
//!
//! `states:` comes first. Repeated `rel`/`val` lines for the same name
//! accumulate; an empty list declares the action or variable.

use std::fmt;

use crate::error::{Error, Position, Result};
use crate::names::{Action, Name};

use super::KripkeModel;

impl fmt::Display for KripkeModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "states: {}", self.ids.join(" "))?;
        for a in self.relations.keys() {
            let edges: Vec<String> = self
                .edges(a)
                .into_iter()
                .map(|(s, t)| format!("{}->{}", self.ids[s], self.ids[t]))
                .collect();
            write!(f, "rel {a}:")?;
            if !edges.is_empty() {
                write!(f, " {}", edges.join(", "))?;
            }
            writeln!(f)?;
        }
        for (p, set) in &self.valuation {
            let members: Vec<&str> = set.iter().map(|s| self.ids[s].as_str()).collect();
            write!(f, "val {p}:")?;
            if !members.is_empty() {
                write!(f, " {}", members.join(" "))?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

fn model_error(text: &str, line_start: usize, msg: impl Into<String>) -> Error {
    Error::Syntax {
        pos: Position::locate(text, line_start),
        msg: msg.into(),
    }
}

fn valid_name(s: &str) -> bool {
    let mut chars = s.chars();
    chars.next().is_some_and(|c| c.is_ascii_alphabetic())
        && chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn parse_model(text: &str) -> Result<KripkeModel> {
    let mut model: Option<KripkeModel> = None;
    let mut offset = 0;
    for raw in text.split_inclusive('\n') {
        let start = offset;
        offset += raw.len();
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let Some((head, rest)) = line.split_once(':') else {
            return Err(model_error(text, start, "expected `states:`, `rel a:` or `val p:`"));
        };
        let head: Vec<&str> = head.split_whitespace().collect();
        match head.as_slice() {
            ["states"] => {
                if model.is_some() {
                    return Err(model_error(text, start, "duplicate `states:` line"));
                }
                let m = KripkeModel::new(rest.split_whitespace())
                    .map_err(|e| model_error(text, start, e.to_string()))?;
                model = Some(m);
            }
            ["rel", a] => {
                let m = model
                    .as_mut()
                    .ok_or_else(|| model_error(text, start, "`states:` must come first"))?;
                if !valid_name(a) {
                    return Err(model_error(text, start, format!("invalid action `{a}`")));
                }
                let action = Action::new(a);
                m.add_action(action.clone());
                for edge in rest.split(',').map(str::trim).filter(|e| !e.is_empty()) {
                    let Some((s, t)) = edge.split_once("->") else {
                        return Err(model_error(text, start, format!("bad edge `{edge}`")));
                    };
                    let s = m
                        .state(s.trim())
                        .map_err(|e| model_error(text, start, e.to_string()))?;
                    let t = m
                        .state(t.trim())
                        .map_err(|e| model_error(text, start, e.to_string()))?;
                    m.add_edge(action.clone(), s, t);
                }
            }
            ["val", p] => {
                let m = model
                    .as_mut()
                    .ok_or_else(|| model_error(text, start, "`states:` must come first"))?;
                if !valid_name(p) {
                    return Err(model_error(text, start, format!("invalid variable `{p}`")));
                }
                let name = Name::new(p);
                let mut set = m.valuation(&name).cloned().unwrap_or_else(|| m.empty_set());
                for id in rest.split(|c: char| c.is_whitespace() || c == ',').filter(|s| !s.is_empty()) {
                    set.insert(m.state(id).map_err(|e| model_error(text, start, e.to_string()))?);
                }
                m.set_valuation(name, set);
            }
            _ => return Err(model_error(text, start, format!("unknown line `{line}`"))),
        }
    }
    model.ok_or_else(|| model_error(text, 0, "missing `states:` line"))
}
