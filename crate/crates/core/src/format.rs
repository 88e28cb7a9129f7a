//! The line-oriented game file format.
//!
//! ```text
//! game pd
//! players 2
//! strategies 1 C D
//! strategies 2 C D
//! payoff C C : 2 2
//! payoff C D : 0 3
//! payoff D C : 3 0
//! payoff D D : 1 1
//! ```
//!
//! `#` starts a comment; blank lines are ignored. Payoffs are integers or
//! `a/b` fractions.

use crate::error::ParseError;
use crate::game::{FiniteGame, JointIter, MAX_STRATEGIES};
use crate::rational::{parse_rational, Rational};

struct Lines<'a> {
    inner: std::iter::Enumerate<std::str::Lines<'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        Lines { inner: text.lines().enumerate(), last: 0 }
    }

    /// Next non-blank line with comments stripped, as `(line_number, tokens)`.
    fn next_tokens(&mut self) -> Option<(usize, Vec<&'a str>)> {
        for (idx, raw) in self.inner.by_ref() {
            self.last = idx + 1;
            let content = raw.split('#').next().unwrap_or("");
            let tokens: Vec<&str> = content.split_whitespace().collect();
            if !tokens.is_empty() {
                return Some((idx + 1, tokens));
            }
        }
        None
    }
}

fn syntax(line: usize, expected: &str) -> ParseError {
    ParseError::Syntax { line, expected: expected.to_string() }
}

/// Parses a game file. Labels keep their file order.
pub fn parse_game(text: &str) -> Result<FiniteGame, ParseError> {
    let mut lines = Lines::new(text);

    let (line, tokens) = lines.next_tokens().ok_or_else(|| syntax(1, "game <name>"))?;
    if tokens[0] != "game" || tokens.len() != 2 {
        return Err(syntax(line, "game <name>"));
    }
    let name = tokens[1].to_string();

    let (line, tokens) = lines.next_tokens().ok_or_else(|| syntax(lines.last + 1, "players <n>"))?;
    if tokens[0] != "players" || tokens.len() != 2 {
        return Err(syntax(line, "players <n>"));
    }
    let players: usize = tokens[1]
        .parse()
        .ok()
        .filter(|&n| n >= 2)
        .ok_or_else(|| syntax(line, "players <n> with n >= 2"))?;

    let mut labels: Vec<Vec<String>> = Vec::with_capacity(players);
    for player in 1..=players {
        let expected = format!("strategies {player} <label> ...");
        let (line, tokens) =
            lines.next_tokens().ok_or_else(|| syntax(lines.last + 1, &expected))?;
        if tokens[0] != "strategies" || tokens.len() < 3 || tokens[1] != player.to_string() {
            return Err(syntax(line, &expected));
        }
        let mut list: Vec<String> = Vec::with_capacity(tokens.len() - 2);
        for &label in &tokens[2..] {
            if label.contains([',', '{', '}', '|', ':']) {
                return Err(syntax(line, "labels without `,{}|:`"));
            }
            if list.iter().any(|l| l == label) {
                return Err(ParseError::DuplicateLabel { line, player, label: label.to_string() });
            }
            list.push(label.to_string());
        }
        if list.len() > MAX_STRATEGIES {
            return Err(ParseError::TooManyStrategies {
                line,
                player,
                count: list.len(),
                max: MAX_STRATEGIES,
            });
        }
        labels.push(list);
    }

    let sizes: Vec<usize> = labels.iter().map(Vec::len).collect();
    let mut strides = vec![1usize; players];
    for i in (0..players - 1).rev() {
        strides[i] = strides[i + 1] * sizes[i + 1];
    }
    let total = strides[0] * sizes[0];
    let mut rows: Vec<Option<Vec<Rational>>> = vec![None; total];

    while let Some((line, tokens)) = lines.next_tokens() {
        if tokens[0] != "payoff" {
            return Err(syntax(line, "payoff <labels> : <payoffs>"));
        }
        let colon = tokens
            .iter()
            .position(|&t| t == ":")
            .ok_or_else(|| syntax(line, "payoff <labels> : <payoffs>"))?;
        let profile = &tokens[1..colon];
        let values = &tokens[colon + 1..];
        if profile.len() != players {
            return Err(ParseError::PlayerCountMismatch { line, expected: players, found: profile.len() });
        }
        if values.len() != players {
            return Err(ParseError::PlayerCountMismatch { line, expected: players, found: values.len() });
        }
        let mut index = 0;
        for (player, &label) in profile.iter().enumerate() {
            let s = labels[player].iter().position(|l| l == label).ok_or_else(|| {
                ParseError::UnknownLabel { line, player: player + 1, label: label.to_string() }
            })?;
            index += s * strides[player];
        }
        if rows[index].is_some() {
            return Err(ParseError::DuplicatePayoffRow { line, profile: profile.join(" ") });
        }
        let payoff = values
            .iter()
            .map(|&v| {
                parse_rational(v).ok_or_else(|| ParseError::MalformedRational { line, text: v.to_string() })
            })
            .collect::<Result<Vec<_>, _>>()?;
        rows[index] = Some(payoff);
    }

    let mut payoffs = Vec::with_capacity(total);
    for (joint, row) in JointIter::new(&sizes).zip(rows) {
        match row {
            Some(row) => payoffs.push(row),
            None => {
                let profile: Vec<&str> =
                    joint.iter().enumerate().map(|(i, &s)| labels[i][s].as_str()).collect();
                return Err(ParseError::MissingPayoffRow { line: lines.last, profile: profile.join(" ") });
            }
        }
    }
    FiniteGame::new(name, labels, payoffs)
        .map_err(|e| syntax(lines.last, &e.to_string()))
}

/// Renders the canonical file form: rows in mixed-radix order, payoffs in
/// lowest terms.
pub fn render_game(game: &FiniteGame) -> String {
    let mut out = format!("game {}\nplayers {}\n", game.name(), game.player_count());
    for player in 0..game.player_count() {
        out.push_str(&format!("strategies {} {}\n", player + 1, game.labels(player).join(" ")));
    }
    for joint in JointIter::new(&game.sizes()) {
        out.push_str(&format!("payoff {} : {}\n", game.describe_joint(&joint), game.payoff_text(&joint)));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, ratio};

    const PD: &str = "game pd
players 2
strategies 1 C D
strategies 2 C D
payoff C C : 2 2
payoff C D : 0 3
payoff D C : 3 0
payoff D D : 1 1
";

    #[test]
    fn parses_prisoners_dilemma() {
        let g = parse_game(PD).unwrap();
        assert_eq!(g.name(), "pd");
        assert_eq!(g.labels(0), ["C", "D"]);
        assert_eq!(g.labels(1), ["C", "D"]);
        assert_eq!(g.payoff_vector(&[1, 1]), &[int(1), int(1)]);
        assert_eq!(g.payoff_vector(&[0, 1]), &[int(0), int(3)]);
    }

    #[test]
    fn canonical_form_round_trips() {
        let g = parse_game(PD).unwrap();
        assert_eq!(render_game(&g), PD);
    }

    #[test]
    fn comments_blank_lines_and_fractions() {
        let text = "# a comment\n\ngame frac # trailing\nplayers 2\nstrategies 1 a\nstrategies 2 x y\n\
                    payoff a y : 6/4 -1/3\npayoff a x : 0 2\n";
        let g = parse_game(text).unwrap();
        assert_eq!(g.payoff(0, &[0, 1]), &ratio(3, 2));
        assert_eq!(g.payoff(1, &[0, 1]), &ratio(-1, 3));
    }

    #[test]
    fn duplicate_payoff_row_names_line() {
        let text = PD.replace("payoff D D : 1 1", "payoff C C : 1 1");
        assert_eq!(
            parse_game(&text),
            Err(ParseError::DuplicatePayoffRow { line: 8, profile: "C C".into() })
        );
    }

    #[test]
    fn missing_payoff_row() {
        let text = PD.replace("payoff D C : 3 0\n", "");
        let err = parse_game(&text).unwrap_err();
        assert!(matches!(err, ParseError::MissingPayoffRow { ref profile, .. } if profile == "D C"), "{err:?}");
    }

    #[test]
    fn duplicate_label() {
        let text = PD.replace("strategies 2 C D", "strategies 2 C C");
        assert_eq!(
            parse_game(&text),
            Err(ParseError::DuplicateLabel { line: 4, player: 2, label: "C".into() })
        );
    }

    #[test]
    fn malformed_rational() {
        let text = PD.replace("payoff C D : 0 3", "payoff C D : 0 3.5");
        assert_eq!(
            parse_game(&text),
            Err(ParseError::MalformedRational { line: 6, text: "3.5".into() })
        );
        let text = PD.replace("payoff C D : 0 3", "payoff C D : 1/0 3");
        assert!(matches!(parse_game(&text), Err(ParseError::MalformedRational { line: 6, .. })));
    }

    #[test]
    fn player_count_mismatch() {
        let text = PD.replace("payoff C D : 0 3", "payoff C D : 0 3 4");
        assert_eq!(
            parse_game(&text),
            Err(ParseError::PlayerCountMismatch { line: 6, expected: 2, found: 3 })
        );
        let text = PD.replace("payoff C D : 0 3", "payoff C : 0 3");
        assert_eq!(
            parse_game(&text),
            Err(ParseError::PlayerCountMismatch { line: 6, expected: 2, found: 1 })
        );
    }

    #[test]
    fn header_errors_carry_line_numbers() {
        assert_eq!(parse_game("players 2").unwrap_err().line(), 1);
        let text = PD.replace("strategies 2 C D", "strategies 3 C D");
        assert_eq!(parse_game(&text).unwrap_err().line(), 4);
        let text = PD.replace("payoff C D : 0 3", "payoff C Q : 0 3");
        assert!(matches!(parse_game(&text), Err(ParseError::UnknownLabel { line: 6, player: 2, .. })));
    }
}
