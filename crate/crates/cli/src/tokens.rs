//! Command-line tokens with spelling suggestions.

use std::str::FromStr;

use eliminax::symbolic::list_examples;
use eliminax::{BeliefStructure, OperatorName, Ordinal};

use crate::CliError;

fn suggest(kind: &str, token: &str, known: &[String]) -> CliError {
    let mut ranked: Vec<(f64, &String)> =
        known.iter().map(|k| (strsim::jaro_winkler(&token.to_ascii_lowercase(), &k.to_ascii_lowercase()), k)).collect();
    ranked.sort_by(|a, b| b.0.total_cmp(&a.0));
    let hint = match ranked.first() {
        Some((score, best)) if *score >= 0.8 => format!("; did you mean `{best}`?"),
        _ => String::new(),
    };
    CliError::Input(format!("unknown {kind} `{token}`{hint} (expected one of: {})", known.join(", ")))
}

pub fn operator(token: &str) -> Result<OperatorName, CliError> {
    OperatorName::from_str(token).map_err(|_| {
        let known: Vec<String> = OperatorName::ALL.iter().map(|o| o.token().to_string()).collect();
        suggest("operator", token, &known)
    })
}

pub fn operators(list: &str) -> Result<Vec<OperatorName>, CliError> {
    list.split(',').map(str::trim).filter(|t| !t.is_empty()).map(operator).collect()
}

pub fn beliefs(token: &str) -> Result<BeliefStructure, CliError> {
    BeliefStructure::from_str(token).map_err(|_| {
        let known: Vec<String> = BeliefStructure::ALL.iter().map(|b| b.token().to_string()).collect();
        suggest("belief structure", token, &known)
    })
}

pub fn example(token: &str) -> Result<String, CliError> {
    let known: Vec<String> = list_examples().into_iter().map(|e| e.name).collect();
    if known.iter().any(|k| k == token) {
        Ok(token.to_string())
    } else {
        Err(suggest("example", token, &known))
    }
}

pub fn ordinal(token: &str) -> Result<Ordinal, CliError> {
    token.parse().map_err(|e: eliminax::Error| CliError::Input(e.to_string()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Text,
    Jsonl,
}

pub fn format(token: &str) -> Result<Format, CliError> {
    match token {
        "text" => Ok(Format::Text),
        "jsonl" => Ok(Format::Jsonl),
        other => Err(suggest("format", other, &["text".into(), "jsonl".into()])),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub enum Property {
    B,
    C,
    D,
    E,
}

pub fn properties(list: &str) -> Result<Vec<Property>, CliError> {
    let mut out = Vec::new();
    for token in list.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        out.push(match token.to_ascii_uppercase().as_str() {
            "B" => Property::B,
            "C" => Property::C,
            "D" => Property::D,
            "E" => Property::E,
            _ => return Err(suggest("property", token, &["B".into(), "C".into(), "D".into(), "E".into()])),
        });
    }
    out.sort();
    out.dedup();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn near_misses_get_a_suggestion() {
        let CliError::Input(message) = operator("gsbr").unwrap_err();
        assert!(message.contains("did you mean `gsbar`?"), "{message}");
        let CliError::Input(message) = example("nat_minus_one_GRbr").unwrap_err();
        assert!(message.contains("`nat_minus_one_GRbar`"), "{message}");
    }

    #[test]
    fn operator_lists() {
        assert_eq!(operators("gs, GSbar,ls").unwrap(), vec![OperatorName::GS, OperatorName::GSbar, OperatorName::LS]);
        assert!(operators("gs,xx").is_err());
        assert_eq!(properties("e,b,E").unwrap(), vec![Property::B, Property::E]);
    }
}
