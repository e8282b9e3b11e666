use std::fs;
use std::io::Read;

use mucalc_core::formula::{parse_with, ParseOptions, Parsed};
use mucalc_core::kripke::{chain_model, ordinal_chain_model, parse_model, sum_witness_model, KripkeModel};
use mucalc_core::{Action, Name};

use crate::CliError;

/// Reads `@path` (or `@-` for stdin) as a file, anything else literally.
fn text_of(arg: &str) -> Result<String, CliError> {
    match arg.strip_prefix('@') {
        Some("-") => {
            let mut s = String::new();
            std::io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
            Ok(s)
        }
        Some(path) => fs::read_to_string(path).map_err(|e| CliError::Input(format!("{path}: {e}"))),
        None => Ok(arg.to_string()),
    }
}

pub fn formula(arg: &str, allow_reserved: bool) -> Result<Parsed, CliError> {
    let text = text_of(arg)?;
    Ok(parse_with(&text, ParseOptions { allow_reserved })?)
}

fn count(spec: &str, what: &str) -> Result<usize, CliError> {
    spec.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("{what}: expected a number, got `{spec}`")))
}

/// A model file, `-` for stdin, or a generator shorthand: `chain:N`
/// (variable `p` at the end of an `a`-chain), `ordchain:N`, or `sum:M,N`
/// (two `q`-chains joined by the sum construction, marker `p`).
pub fn model(arg: &str) -> Result<KripkeModel, CliError> {
    if let Some(n) = arg.strip_prefix("chain:") {
        return Ok(chain_model(count(n, "chain")?, "p", "a")?);
    }
    if let Some(n) = arg.strip_prefix("ordchain:") {
        return Ok(ordinal_chain_model(count(n, "ordchain")?)?);
    }
    if let Some(mn) = arg.strip_prefix("sum:") {
        let (m, n) = mn
            .split_once(',')
            .ok_or_else(|| CliError::Usage(format!("sum: expected `sum:M,N`, got `{arg}`")))?;
        return sum_of_chains(count(m, "sum")?, count(n, "sum")?);
    }
    let text = if arg == "-" { text_of("@-")? } else { text_of(&format!("@{arg}"))? };
    Ok(parse_model(&text)?)
}

pub fn sum_of_chains(m: usize, n: usize) -> Result<KripkeModel, CliError> {
    let a = Action::new("a");
    let q = Name::new("q");
    let left = chain_model(m, q.clone(), a.clone())?;
    let right = chain_model(n, q, a.clone())?;
    Ok(sum_witness_model(&left, &right, &Name::new("p"), &a)?)
}
