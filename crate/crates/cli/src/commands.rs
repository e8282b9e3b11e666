use std::collections::BTreeSet;
use std::fmt::Write;
use std::time::Duration;

use serde_json::{json, Value};

use mucalc_core::acceptance::CRITERIA;
use mucalc_core::continuity::{check_continuity, SearchBudget, Verdict};
use mucalc_core::formula::{closure, Formula};
use mucalc_core::fragment::{in_c, in_c0, var_set, FormulaGraph};
use mucalc_core::game::{build_game, solve};
use mucalc_core::kripke::{
    approximants, bisimilar, bisimulation_partition, chain_model, eval, ordinal_chain_model,
    thomason_model, KripkeModel, StateSet,
};
use mucalc_core::transform::{
    boxing, continuity_normal_form, flatten, lift, master_box, referee_scheme, submodel_scheme,
    sum_formula, thomason_scheme, thomason_translate, totalize, translate,
};
use mucalc_core::{Action, Name};

use crate::input;
use crate::{Cli, CliError, Command, GenModel, Global, Op, Scheme, EXIT_INTERNAL};

/// What a command prints: `text` normally, `json` under `--json`, and an
/// optional note on stderr.
pub struct Output {
    pub text: String,
    pub json: Value,
    pub note: Option<String>,
    pub code: u8,
}

impl Output {
    fn new(text: impl Into<String>, json: Value) -> Self {
        let mut text = text.into();
        if !text.ends_with('\n') {
            text.push('\n');
        }
        Output {
            text,
            json,
            note: None,
            code: 0,
        }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }
}

fn set_ids(m: &KripkeModel, s: &StateSet) -> Vec<String> {
    s.iter().map(|i| m.id(i).to_string()).collect()
}

fn show_set(m: &KripkeModel, s: &StateSet) -> String {
    format!("{{{}}}", set_ids(m, s).join(", "))
}

fn names(xs: &[String]) -> BTreeSet<Name> {
    var_set(xs.iter().map(String::as_str))
}

fn formula(g: &Global, arg: &str) -> Result<Formula, CliError> {
    Ok(input::formula(arg, g.allow_reserved)?.formula)
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Parse { formula } => parse(g, formula),
        Command::Print {
            formula,
            well_named,
            closure,
        } => print(g, formula, *well_named, *closure),
        Command::Classify { formula, vars } => classify(g, formula, vars),
        Command::Fragment { formula, vars } => fragment(g, formula, vars),
        Command::Transform {
            op,
            formula,
            var,
            vars,
            scheme,
            marker,
            actions,
            with,
        } => transform(g, *op, formula, var, vars, *scheme, marker, actions, with.as_deref()),
        Command::Eval { model, formula, state } => eval_cmd(g, model, formula, state.as_deref()),
        Command::Approx { model, formula, var } => approx(g, model, formula, var),
        Command::Clord { model, formula, var } => clord(g, model, formula, var),
        Command::Game {
            model,
            formula,
            dump,
            check,
        } => game(g, model, formula, *dump, check.as_deref()),
        Command::Bisim { model, other, pair } => bisim(model, other.as_deref(), pair.as_deref()),
        Command::GenModel(which) => gen_model(which),
        Command::CheckContinuity {
            formula,
            var,
            max_states,
            samples,
        } => continuity(g, formula, var, *max_states, *samples),
        Command::Selftest { only } => selftest(g, only),
    }
}

fn parse(g: &Global, arg: &str) -> Result<Output, CliError> {
    let parsed = input::formula(arg, g.allow_reserved)?;
    let f = &parsed.formula;
    let free: Vec<String> = f.free_vars().iter().map(|v| v.to_string()).collect();
    let actions: Vec<String> = f.actions().iter().map(|a| a.to_string()).collect();
    let mut text = format!("{f}\n");
    writeln!(text, "size: {}, depth: {}, binders: {}", f.size(), f.depth(), f.binder_count()).unwrap();
    writeln!(text, "free: {}", free.join(" ")).unwrap();
    writeln!(text, "actions: {}", actions.join(" ")).unwrap();
    writeln!(text, "well-named: {}", if f.is_well_named() { "yes" } else { "no" }).unwrap();
    let expanded: Vec<String> = parsed.expanded_negations.iter().map(|p| p.to_string()).collect();
    let out = Output::new(
        text,
        json!({
            "formula": f.to_string(),
            "size": f.size(),
            "depth": f.depth(),
            "binders": f.binder_count(),
            "free": free,
            "actions": actions,
            "well_named": f.is_well_named(),
            "expanded_negations": expanded,
        }),
    );
    Ok(if expanded.is_empty() {
        out
    } else {
        out.note(format!("`~` before a compound formula expanded by dualization at {}", expanded.join(", ")))
    })
}

fn print(g: &Global, arg: &str, well_named: bool, list_closure: bool) -> Result<Output, CliError> {
    let mut f = formula(g, arg)?;
    if well_named {
        f = f.make_well_named();
    }
    if list_closure {
        let cl = closure(&f.make_well_named());
        let items: Vec<String> = cl.iter().map(Formula::to_string).collect();
        return Ok(Output::new(items.join("\n"), json!({ "closure": items })));
    }
    Ok(Output::new(f.to_string(), json!({ "formula": f.to_string() })))
}

fn classify(g: &Global, arg: &str, vars: &[String]) -> Result<Output, CliError> {
    let f = formula(g, arg)?;
    let graph = FormulaGraph::build(&f);
    let keep = names(vars);
    let rows: Vec<_> = graph
        .classify_all()
        .into_iter()
        .filter(|(_, v, _)| keep.is_empty() || keep.contains(v))
        .collect();
    let text: String = rows.iter().map(|(a, v, c)| format!("{a} {v} {c}\n")).collect();
    let json: Vec<Value> = rows
        .iter()
        .map(|(a, v, c)| json!({ "address": a.to_string(), "var": v.to_string(), "class": c.to_string() }))
        .collect();
    Ok(Output::new(text, json!({ "occurrences": json })))
}

fn fragment(g: &Global, arg: &str, vars: &[String]) -> Result<Output, CliError> {
    let f = formula(g, arg)?;
    let xs = names(vars);
    let (c, c0) = (in_c(&f, &xs)?, in_c0(&f, &xs)?);
    let label = vars.join(",");
    let yn = |b: bool| if b { "yes" } else { "no" };
    Ok(Output::new(
        format!("C({label}): {}, C0({label}): {}", yn(c), yn(c0)),
        json!({ "vars": vars, "in_c": c, "in_c0": c0 }),
    ))
}

#[allow(clippy::too_many_arguments)]
fn transform(
    g: &Global,
    op: Op,
    arg: &str,
    var: &str,
    vars: &[String],
    scheme: Scheme,
    marker: &str,
    actions: &[String],
    with: Option<&str>,
) -> Result<Output, CliError> {
    let f = formula(g, arg)?;
    let x = Name::new(var);
    let p = Name::new(marker);
    let (result, construction, extra) = match op {
        Op::Lift => {
            let l = lift(&f, &x)?;
            let extra = json!({ "boxed_var": l.boxed_var.to_string() });
            (l.formula, format!("lift: boxed occurrences of {x} renamed to {}", l.boxed_var), extra)
        }
        Op::Flatten => (flatten(&f, &x)?, format!("flatten: boxed occurrences of {x} replaced by false"), Value::Null),
        Op::Boxing => {
            let xs = if vars.is_empty() { var_set([x.clone()]) } else { names(vars) };
            let label: Vec<String> = xs.iter().map(|v| v.to_string()).collect();
            (boxing(&f, &xs)?, format!("boxing over {{{}}}", label.join(",")), Value::Null)
        }
        Op::Cnf => (
            continuity_normal_form(&f, &x)?,
            format!("continuity normal form in {x}: flatten after boxing"),
            Value::Null,
        ),
        Op::Translate => {
            let base = match scheme {
                Scheme::Submodel => submodel_scheme(f.actions()),
                Scheme::Referee => referee_scheme(),
                Scheme::Thomason => thomason_scheme(),
            };
            let s = base.with_marker(&p)?;
            (translate(&f, &s)?, format!("translation along the {scheme:?} scheme, marker {p}").to_lowercase(), Value::Null)
        }
        Op::Thomason => (
            thomason_translate(&f)?,
            "Thomason translation into the monomodal language over `a`".to_string(),
            Value::Null,
        ),
        Op::Sum => {
            let second = match with {
                Some(w) => formula(g, w)?,
                None => f.clone(),
            };
            let action = match actions {
                [] => Action::new("a"),
                [a] => Action::new(a),
                _ => return Err(CliError::Usage("--op sum takes a single action".into())),
            };
            let s = sum_formula(&f, &second, &x, &p, &action)?;
            let extra = json!({
                "chi": s.chi.to_string(),
                "chi0": s.chi0.to_string(),
                "chi1": s.chi1.to_string(),
                "psi": s.psi.to_string(),
            });
            (s.big_psi, format!("ordinal sum over {action} with marker {p}; prints the guarded formula"), extra)
        }
        Op::Totalize => (totalize(&f, &x)?, format!("totalized least fixpoint in {x}"), Value::Null),
        Op::MasterBox => {
            let acts: Vec<Action> = if actions.is_empty() {
                let used = f.actions();
                if used.is_empty() {
                    vec![Action::new("a")]
                } else {
                    used.into_iter().collect()
                }
            } else {
                actions.iter().map(Action::new).collect()
            };
            (master_box(&f, acts), "master modality".to_string(), Value::Null)
        }
    };
    let mut json = json!({ "formula": result.to_string(), "construction": construction });
    if let Value::Object(m) = extra {
        json.as_object_mut().expect("object").extend(m);
    }
    Ok(Output::new(result.to_string(), json).note(construction))
}

fn eval_cmd(g: &Global, model: &str, arg: &str, state: Option<&str>) -> Result<Output, CliError> {
    let m = input::model(model)?;
    let f = formula(g, arg)?;
    let set = eval(&m, &f)?;
    match state {
        Some(id) => {
            let holds = set.contains(m.state(id)?);
            Ok(Output::new(holds.to_string(), json!({ "state": id, "holds": holds })))
        }
        None => Ok(Output::new(show_set(&m, &set), json!({ "states": set_ids(&m, &set) }))),
    }
}

fn approx(g: &Global, model: &str, arg: &str, var: &str) -> Result<Output, CliError> {
    let m = input::model(model)?;
    let f = formula(g, arg)?;
    let trace = approximants(&m, &f, &Name::new(var))?;
    let mut text = String::new();
    let mut stages = Vec::new();
    for (k, s) in trace.sets().iter().enumerate() {
        writeln!(text, "{k}: {}", show_set(&m, s)).unwrap();
        stages.push(set_ids(&m, s));
    }
    writeln!(text, "closure ordinal: {}", trace.closure_ordinal()).unwrap();
    Ok(Output::new(
        text,
        json!({ "stages": stages, "closure_ordinal": trace.closure_ordinal() }),
    ))
}

fn clord(g: &Global, model: &str, arg: &str, var: &str) -> Result<Output, CliError> {
    let m = input::model(model)?;
    let f = formula(g, arg)?;
    let cl = approximants(&m, &f, &Name::new(var))?.closure_ordinal();
    Ok(Output::new(cl.to_string(), json!({ "closure_ordinal": cl })))
}

fn game(g: &Global, model: &str, arg: &str, dump: bool, check: Option<&str>) -> Result<Output, CliError> {
    let m = input::model(model)?;
    let f = formula(g, arg)?.make_well_named();
    let mg = build_game(&m, &f)?;
    let mut text = String::new();
    let mut json = json!({ "positions": mg.game.len() });
    if dump {
        text.push_str(&mg.game.to_string());
        json["arena"] = Value::String(mg.game.to_string());
    }
    let solution = solve(&mg.game);
    let states: Vec<usize> = match check {
        Some(id) => vec![m.state(id)?],
        None if dump => Vec::new(),
        None => (0..m.len()).collect(),
    };
    let mut winners = Vec::new();
    for s in states {
        let w = solution.winner(mg.root(s));
        writeln!(text, "{}: {w}", m.id(s)).unwrap();
        winners.push(json!({ "state": m.id(s), "winner": w.to_string() }));
    }
    if !winners.is_empty() {
        json["winners"] = Value::Array(winners);
    }
    Ok(Output::new(text, json))
}

fn bisim(model: &str, other: Option<&str>, pair: Option<&[String]>) -> Result<Output, CliError> {
    let m = input::model(model)?;
    let n = match other {
        Some(o) => input::model(o)?,
        None => m.clone(),
    };
    let props: BTreeSet<Name> = m.props().chain(n.props()).cloned().collect();
    let actions: BTreeSet<Action> = m.actions().chain(n.actions()).cloned().collect();
    if let Some([s, t]) = pair {
        let yes = bisimilar(&m, m.state(s)?, &n, n.state(t)?, &props, &actions);
        return Ok(Output::new(
            if yes { "bisimilar" } else { "not bisimilar" },
            json!({ "bisimilar": yes }),
        ));
    }
    if other.is_none() {
        let part = bisimulation_partition(&m, &props, &actions);
        let blocks: Vec<Vec<String>> = part
            .blocks()
            .iter()
            .map(|b| b.iter().map(|&s| m.id(s).to_string()).collect())
            .collect();
        let text: String = blocks.iter().map(|b| format!("{}\n", b.join(" "))).collect();
        return Ok(Output::new(text, json!({ "blocks": blocks })));
    }
    let mut pairs = Vec::new();
    for s in 0..m.len() {
        for t in 0..n.len() {
            if bisimilar(&m, s, &n, t, &props, &actions) {
                pairs.push((m.id(s).to_string(), n.id(t).to_string()));
            }
        }
    }
    let text: String = pairs.iter().map(|(s, t)| format!("{s} {t}\n")).collect();
    Ok(Output::new(text, json!({ "pairs": pairs })))
}

fn gen_model(which: &GenModel) -> Result<Output, CliError> {
    let m = match which {
        GenModel::Chain { n, prop, action } => chain_model(*n, prop.as_str(), action.as_str())?,
        GenModel::Ordchain { n } => ordinal_chain_model(*n)?,
        GenModel::Sum { m, n } => input::sum_of_chains(*m, *n)?,
        GenModel::Thomason { model } => thomason_model(&input::model(model)?)?.model,
    };
    Ok(Output::new(m.to_string(), json!({ "model": m.to_string() })))
}

fn continuity(g: &Global, arg: &str, var: &str, max_states: usize, samples: usize) -> Result<Output, CliError> {
    let f = formula(g, arg)?;
    let budget = SearchBudget {
        max_states,
        samples,
        seed: g.seed,
        time_limit: g.time_limit.map(Duration::from_secs_f64),
        ..SearchBudget::default()
    };
    let verdict = check_continuity(&f, &Name::new(var), &budget)?;
    let mut json = json!({
        "verdict": verdict.name(),
        "normal_form": verdict.normal_form().map(|n| n.to_string()),
    });
    let code = match &verdict {
        Verdict::InC0 | Verdict::InC1 => 0,
        Verdict::EquivalentToNormalFormUpToBound { bound, .. } => {
            json["bound"] = json!(bound);
            0
        }
        Verdict::NotContinuous { model, state, .. } => {
            json["model"] = json!(model.to_string());
            json["state"] = json!(model.id(*state));
            1
        }
        Verdict::Exhausted { .. } => 2,
    };
    let mut out = Output::new(verdict.to_string(), json);
    out.code = code;
    Ok(out)
}

fn selftest(g: &Global, only: &[u32]) -> Result<Output, CliError> {
    if let Some(bad) = only.iter().find(|i| !CRITERIA.iter().any(|(id, _)| id == *i)) {
        return Err(CliError::Usage(format!("no criterion {bad}; they are numbered 1 to {}", CRITERIA.len())));
    }
    let mut text = String::new();
    let mut rows = Vec::new();
    let mut failed = 0;
    for (id, criterion) in CRITERIA.iter() {
        if !only.is_empty() && !only.contains(id) {
            continue;
        }
        let r = criterion(g.seed);
        writeln!(text, "{r}").unwrap();
        failed += !r.passed as usize;
        rows.push(json!({
            "id": r.id,
            "name": r.name,
            "passed": r.passed,
            "detail": r.detail,
            "seconds": r.elapsed.as_secs_f64(),
        }));
    }
    writeln!(text, "{} of {} criteria passed", rows.len() - failed, rows.len()).unwrap();
    let mut out = Output::new(text, json!({ "criteria": rows, "failed": failed }));
    if failed > 0 {
        out.code = EXIT_INTERNAL;
    }
    Ok(out)
}
