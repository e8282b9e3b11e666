//! The digraph `G(φ)`, bad/boxed/very-bad occurrences, and the syntactic
//! fragments `C(X)` and `C₀(X)`.

use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::formula::{Formula, Fp, OccAddress};
use crate::names::{Action, Name};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NodeLabel {
    Var(Name),
    NegVar(Name),
    Top,
    Bot,
    And,
    Or,
    Dia(Action),
    Nec(Action),
    Fix(Fp, Name),
}

#[derive(Debug, Clone)]
pub struct GraphNode {
    pub label: NodeLabel,
    pub addr: OccAddress,
    pub parent: Option<usize>,
    pub children: Vec<usize>,
    /// For a bound-variable occurrence: its binder.
    pub back_edge: Option<usize>,
}

/// Syntax tree of a formula plus back edges from bound-variable
/// occurrences to their binders. Node 0 is the root; nodes are numbered
/// in preorder.
#[derive(Debug, Clone)]
pub struct FormulaGraph {
    nodes: Vec<GraphNode>,
    /// `bad[i]`: some path from the root to node `i` visits a `[a]` node.
    bad: Vec<bool>,
    /// `boxed[i]`: the tree path from the root to node `i` visits a `[a]`
    /// node.
    boxed: Vec<bool>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum OccurrenceClass {
    NotBad,
    /// Bad, and the simple path from the root already crosses a box.
    Boxed,
    /// Bad but not boxed.
    VeryBad,
}

impl OccurrenceClass {
    pub fn is_bad(self) -> bool {
        !matches!(self, OccurrenceClass::NotBad)
    }
}

impl fmt::Display for OccurrenceClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OccurrenceClass::NotBad => "not-bad",
            OccurrenceClass::Boxed => "boxed",
            OccurrenceClass::VeryBad => "very-bad",
        })
    }
}

impl FormulaGraph {
    pub fn build(phi: &Formula) -> FormulaGraph {
        let mut nodes = Vec::with_capacity(phi.size());
        let mut scope: Vec<(Name, usize)> = Vec::new();
        add_node(phi, OccAddress::root(), None, &mut scope, &mut nodes);
        let n = nodes.len();

        let mut boxed = vec![false; n];
        for i in 1..n {
            let p = nodes[i].parent.expect("non-root node has a parent");
            boxed[i] = boxed[p] || matches!(nodes[p].label, NodeLabel::Nec(_));
        }

        // Reachability over (node, has-visited-a-box) pairs.
        let is_box = |i: usize| matches!(nodes[i].label, NodeLabel::Nec(_));
        let mut seen = vec![[false; 2]; n];
        let mut stack = vec![(0usize, is_box(0))];
        seen[0][is_box(0) as usize] = true;
        while let Some((i, b)) = stack.pop() {
            let node = &nodes[i];
            for &j in node.children.iter().chain(node.back_edge.iter()) {
                let bj = b || is_box(j);
                if !seen[j][bj as usize] {
                    seen[j][bj as usize] = true;
                    stack.push((j, bj));
                }
            }
        }
        let bad = seen.iter().map(|s| s[1]).collect();
        FormulaGraph { nodes, bad, boxed }
    }

    pub fn nodes(&self) -> &[GraphNode] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn back_edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.nodes
            .iter()
            .enumerate()
            .filter_map(|(i, n)| n.back_edge.map(|b| (i, b)))
    }

    pub fn node_at(&self, addr: &OccAddress) -> Option<usize> {
        let mut cur = 0usize;
        for &c in &addr.0 {
            cur = *self.nodes.get(cur)?.children.get(c as usize)?;
        }
        Some(cur)
    }

    /// Free occurrences of `x`, in preorder.
    pub fn free_occurrences(&self, x: &Name) -> Vec<usize> {
        (0..self.nodes.len())
            .filter(|&i| self.is_free_occurrence_of(i, x))
            .collect()
    }

    fn is_free_occurrence_of(&self, i: usize, x: &Name) -> bool {
        let n = &self.nodes[i];
        n.back_edge.is_none()
            && matches!(&n.label, NodeLabel::Var(v) | NodeLabel::NegVar(v) if v == x)
    }

    /// Every free variable occurrence with its class.
    pub fn classify_all(&self) -> Vec<(OccAddress, Name, OccurrenceClass)> {
        self.nodes
            .iter()
            .enumerate()
            .filter_map(|(i, n)| match &n.label {
                NodeLabel::Var(v) | NodeLabel::NegVar(v) if n.back_edge.is_none() => {
                    Some((n.addr.clone(), v.clone(), self.class_of(i)))
                }
                _ => None,
            })
            .collect()
    }

    fn class_of(&self, i: usize) -> OccurrenceClass {
        match (self.bad[i], self.boxed[i]) {
            (false, _) => OccurrenceClass::NotBad,
            (true, true) => OccurrenceClass::Boxed,
            (true, false) => OccurrenceClass::VeryBad,
        }
    }

    pub fn classify_occurrence(&self, occ: &OccAddress, x: &Name) -> Result<OccurrenceClass> {
        let i = self
            .node_at(occ)
            .ok_or_else(|| Error::IllAddressed(occ.clone()))?;
        if !self.is_free_occurrence_of(i, x) {
            return Err(Error::NotAFreeOccurrence(occ.clone()));
        }
        Ok(self.class_of(i))
    }

    fn any_free_occurrence(&self, xs: &BTreeSet<Name>, pred: impl Fn(OccurrenceClass) -> bool) -> bool {
        self.nodes.iter().enumerate().any(|(i, n)| {
            n.back_edge.is_none()
                && matches!(&n.label, NodeLabel::Var(v) | NodeLabel::NegVar(v) if xs.contains(v))
                && pred(self.class_of(i))
        })
    }
}

fn add_node(
    f: &Formula,
    addr: OccAddress,
    parent: Option<usize>,
    scope: &mut Vec<(Name, usize)>,
    nodes: &mut Vec<GraphNode>,
) -> usize {
    let id = nodes.len();
    let binder_of = |v: &Name, scope: &Vec<(Name, usize)>| {
        scope.iter().rev().find(|(z, _)| z == v).map(|&(_, b)| b)
    };
    let (label, back_edge) = match f {
        Formula::Var(v) => (NodeLabel::Var(v.clone()), binder_of(v, scope)),
        Formula::NegVar(v) => (NodeLabel::NegVar(v.clone()), binder_of(v, scope)),
        Formula::Top => (NodeLabel::Top, None),
        Formula::Bot => (NodeLabel::Bot, None),
        Formula::And(..) => (NodeLabel::And, None),
        Formula::Or(..) => (NodeLabel::Or, None),
        Formula::Dia(a, _) => (NodeLabel::Dia(a.clone()), None),
        Formula::Nec(a, _) => (NodeLabel::Nec(a.clone()), None),
        Formula::Fix(q, z, _) => (NodeLabel::Fix(*q, z.clone()), None),
    };
    nodes.push(GraphNode {
        label,
        addr: addr.clone(),
        parent,
        children: Vec::new(),
        back_edge,
    });
    if let Formula::Fix(_, z, _) = f {
        scope.push((z.clone(), id));
    }
    for (k, c) in f.children().into_iter().enumerate() {
        let child = add_node(c, addr.child(k as u8), Some(id), scope, nodes);
        nodes[id].children.push(child);
    }
    if let Formula::Fix(..) = f {
        scope.pop();
    }
    id
}

fn check_unbound(phi: &Formula, xs: &BTreeSet<Name>) -> Result<()> {
    let bound = phi.bound_vars();
    match xs.iter().find(|x| bound.contains(*x)) {
        Some(x) => Err(Error::BoundVariable(x.clone())),
        None => Ok(()),
    }
}

/// Membership in `C(X)` by the grammar: `x` | X-free formulas | `∧` | `∨` |
/// `<a>` | `μz.χ`, `νz.χ` with `χ ∈ C(X ∪ {z})`.
pub fn in_c(phi: &Formula, xs: &BTreeSet<Name>) -> Result<bool> {
    check_unbound(phi, xs)?;
    Ok(grammar(&phi.make_well_named(), &mut xs.clone(), true))
}

/// Membership in `C₀(X)`: the grammar of [`in_c`] without the fixpoint
/// production.
pub fn in_c0(phi: &Formula, xs: &BTreeSet<Name>) -> Result<bool> {
    check_unbound(phi, xs)?;
    Ok(grammar(&phi.make_well_named(), &mut xs.clone(), false))
}

fn grammar(f: &Formula, xs: &mut BTreeSet<Name>, fixpoints: bool) -> bool {
    if xs.iter().all(|x| !f.has_free(x)) {
        return true;
    }
    match f {
        Formula::Var(_) => true,
        Formula::And(l, r) | Formula::Or(l, r) => {
            grammar(l, xs, fixpoints) && grammar(r, xs, fixpoints)
        }
        Formula::Dia(_, b) => grammar(b, xs, fixpoints),
        Formula::Fix(_, z, b) if fixpoints => {
            let added = xs.insert(z.clone());
            let ok = grammar(b, xs, fixpoints);
            if added {
                xs.remove(z);
            }
            ok
        }
        _ => false,
    }
}

/// The digraph side of the grammar: no occurrence of an `x ∈ X` is bad.
pub fn no_bad_occurrence(phi: &Formula, xs: &BTreeSet<Name>) -> Result<bool> {
    check_unbound(phi, xs)?;
    let g = FormulaGraph::build(phi);
    Ok(!g.any_free_occurrence(xs, OccurrenceClass::is_bad))
}

/// No occurrence of an `x ∈ X` is very-bad.
pub fn is_almost_good(phi: &Formula, xs: &BTreeSet<Name>) -> Result<bool> {
    check_unbound(phi, xs)?;
    let g = FormulaGraph::build(phi);
    Ok(!g.any_free_occurrence(xs, |c| c == OccurrenceClass::VeryBad))
}

pub fn var_set<I, S>(names: I) -> BTreeSet<Name>
where
    I: IntoIterator<Item = S>,
    S: Into<Name>,
{
    names.into_iter().map(Into::into).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse_with, ParseOptions};

    fn p(s: &str) -> Formula {
        parse_with(s, ParseOptions::internal()).unwrap().formula
    }

    fn x() -> BTreeSet<Name> {
        var_set(["x"])
    }

    #[test]
    fn graph_shapes() {
        let g = FormulaGraph::build(&p("mu z. <a> z"));
        assert_eq!(g.len(), 3);
        assert_eq!(g.back_edges().collect::<Vec<_>>(), vec![(2, 0)]);
        let g = FormulaGraph::build(&p("x"));
        assert_eq!(g.len(), 1);
        assert_eq!(g.back_edges().count(), 0);
    }

    #[test]
    fn figure_formula() {
        let phi = p("(mu z1. y0 /\\ (nu z0. z0 /\\ [a] z1)) \\/ (<a> y0 /\\ y1)");
        let g = FormulaGraph::build(&phi);
        assert_eq!(g.back_edges().count(), 2);
        let classes = g.classify_all();
        let got: Vec<(String, OccurrenceClass)> = classes
            .iter()
            .map(|(_, v, c)| (v.to_string(), *c))
            .collect();
        assert_eq!(
            got,
            vec![
                ("y0".into(), OccurrenceClass::VeryBad),
                ("y0".into(), OccurrenceClass::NotBad),
                ("y1".into(), OccurrenceClass::NotBad),
            ]
        );
        // The z1 occurrence is free in the ν-subformula.
        let sub = phi.at(&OccAddress(vec![0, 0, 1])).unwrap().clone();
        let gs = FormulaGraph::build(&sub);
        let z1 = gs.free_occurrences(&Name::new("z1"));
        assert_eq!(z1.len(), 1);
        assert_eq!(
            gs.classify_occurrence(&gs.nodes()[z1[0]].addr, &Name::new("z1")).unwrap(),
            OccurrenceClass::Boxed
        );
    }

    #[test]
    fn classification_examples() {
        let g = FormulaGraph::build(&p("mu z. x \\/ [a] z"));
        let occ = OccAddress(vec![0, 0]);
        assert_eq!(
            g.classify_occurrence(&occ, &Name::new("x")).unwrap(),
            OccurrenceClass::VeryBad
        );
        let g = FormulaGraph::build(&p("[a] x"));
        assert_eq!(
            g.classify_occurrence(&OccAddress(vec![0]), &Name::new("x")).unwrap(),
            OccurrenceClass::Boxed
        );
        assert!(matches!(
            g.classify_occurrence(&OccAddress(vec![1]), &Name::new("x")),
            Err(Error::IllAddressed(_))
        ));
        assert!(matches!(
            g.classify_occurrence(&OccAddress::root(), &Name::new("x")),
            Err(Error::NotAFreeOccurrence(_))
        ));
    }

    #[test]
    fn fragment_examples() {
        assert!(in_c(&p("mu z. x \\/ <a> z"), &x()).unwrap());
        assert!(!in_c(&p("mu z. x \\/ [a] z"), &x()).unwrap());
        assert!(in_c(&p("nu z. x /\\ <a> z"), &x()).unwrap());
        assert!(in_c0(&p("<a> x /\\ y"), &x()).unwrap());
        assert!(!in_c0(&p("nu z. x /\\ <a> z"), &x()).unwrap());
        assert!(in_c0(&p("[a] y /\\ mu z. [a] z"), &x()).unwrap());
        assert!(!in_c(&p("~x"), &x()).unwrap());
        assert!(in_c(&p("[a] y \\/ x"), &x()).unwrap());
        assert!(matches!(
            in_c(&p("mu x. <a> x"), &x()),
            Err(Error::BoundVariable(_))
        ));
    }

    #[test]
    fn almost_good_examples() {
        assert!(is_almost_good(&p("[a] x"), &x()).unwrap());
        assert!(!is_almost_good(&p("mu z. x \\/ [a] z"), &x()).unwrap());
        assert!(no_bad_occurrence(&p("mu z. x \\/ <a> z"), &x()).unwrap());
    }

    #[test]
    fn naming_insensitive() {
        let f = p("mu z. z \\/ x /\\ mu z. [a] z");
        assert_eq!(
            in_c(&f, &x()).unwrap(),
            no_bad_occurrence(&f, &x()).unwrap()
        );
        assert!(in_c(&f, &x()).unwrap());
    }
}
