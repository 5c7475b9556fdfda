//! The line-oriented game file grammar, plus text forms for mixed profiles
//! and correlated strategies.
//!
//! ```text
//! # comment                      `#` starts a comment anywhere on a line
//! game <name>                    optional
//! players <n>
//! actions <m_1> ... <m_n>
//! labels <tok> ...               optional; if present, one line per player
//! payoffs
//! <r_1> ... <r_n>                exactly m_1*...*m_n rows, one rational per
//! ...                            player, profile order last-player-fastest
//! ```
//!
//! Rationals are base-10 `p/q` or integer literals. [`write_game`] emits the
//! canonical form (labels always present, lowest-terms rationals, single
//! spaces), and `parse_game(write_game(g)) == g` bit-exactly.

use std::fmt;

use thiserror::Error;

use crate::game::{CorrelatedStrategy, Game, GameError, MixedProfile, MixedStrategy};
use crate::rational::{format_rational, parse_rational, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "line {}, column {}: {}",
            self.line, self.column, self.message
        )
    }
}

fn err<T>(line: usize, column: usize, message: impl Into<String>) -> Result<T, ParseError> {
    Err(ParseError {
        line,
        column,
        message: message.into(),
    })
}

/// Non-comment, non-blank lines with their 1-based line numbers.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .filter_map(|(idx, raw)| {
            let line = match raw.find('#') {
                Some(pos) => &raw[..pos],
                None => raw,
            };
            let trimmed = line.trim();
            if trimmed.is_empty() {
                None
            } else {
                Some((idx + 1, trimmed))
            }
        })
        .collect()
}

fn column_of(line: &str, token_index: usize) -> usize {
    // Good-enough column report: position of the nth whitespace-separated
    // token in the trimmed line.
    line.split_whitespace()
        .take(token_index)
        .map(|t| t.len() + 1)
        .sum::<usize>()
        + 1
}

/// Parse the game file grammar.
pub fn parse_game(text: &str) -> Result<Game, ParseError> {
    let lines = content_lines(text);
    let mut cursor = 0usize;
    let next = |cursor: &mut usize| -> Option<(usize, &str)> {
        let item = lines.get(*cursor).copied();
        *cursor += 1;
        item
    };

    let Some((mut line_no, mut line)) = next(&mut cursor) else {
        return err(1, 1, "empty game file");
    };

    let mut name = None;
    if let Some(rest) = line.strip_prefix("game") {
        if rest.starts_with(char::is_whitespace) || rest.is_empty() {
            let n = rest.trim();
            if n.is_empty() {
                return err(line_no, 6, "expected a game name after `game`");
            }
            name = Some(n.to_string());
            match next(&mut cursor) {
                Some((l, t)) => {
                    line_no = l;
                    line = t;
                }
                None => return err(line_no, 1, "missing `players` line"),
            }
        }
    }

    let Some(rest) = line.strip_prefix("players") else {
        return err(line_no, 1, format!("expected `players`, found `{line}`"));
    };
    let num_players: usize = match rest.trim().parse() {
        Ok(n) if n >= 1 => n,
        _ => return err(line_no, 9, "expected a positive player count"),
    };

    let Some((line_no, line)) = next(&mut cursor) else {
        return err(line_no, 1, "missing `actions` line");
    };
    let Some(rest) = line.strip_prefix("actions") else {
        return err(line_no, 1, format!("expected `actions`, found `{line}`"));
    };
    let counts: Vec<usize> = {
        let tokens: Vec<&str> = rest.split_whitespace().collect();
        if tokens.len() != num_players {
            return err(
                line_no,
                9,
                format!(
                    "expected {num_players} action counts, found {}",
                    tokens.len()
                ),
            );
        }
        let mut counts = Vec::with_capacity(num_players);
        for (i, t) in tokens.iter().enumerate() {
            match t.parse::<usize>() {
                Ok(m) if m >= 1 => counts.push(m),
                _ => {
                    return err(
                        line_no,
                        column_of(line, i + 1),
                        format!("invalid action count `{t}`"),
                    )
                }
            }
        }
        counts
    };

    let Some((mut line_no, mut line)) = next(&mut cursor) else {
        return err(line_no, 1, "missing `payoffs` section");
    };

    let mut labels: Option<Vec<Vec<String>>> = None;
    if line.starts_with("labels") {
        let mut all = Vec::with_capacity(num_players);
        for player in 0..num_players {
            if player > 0 {
                match next(&mut cursor) {
                    Some((l, t)) => {
                        line_no = l;
                        line = t;
                    }
                    None => return err(line_no, 1, "missing `labels` line"),
                }
            }
            let Some(rest) = line.strip_prefix("labels") else {
                return err(
                    line_no,
                    1,
                    format!(
                        "expected `labels` line for player {} of {num_players}",
                        player + 1
                    ),
                );
            };
            let tokens: Vec<&str> = rest.split_whitespace().collect();
            if tokens.len() != counts[player] {
                return err(
                    line_no,
                    8,
                    format!(
                        "expected {} labels for player {}, found {}",
                        counts[player],
                        player + 1,
                        tokens.len()
                    ),
                );
            }
            for (i, t) in tokens.iter().enumerate() {
                if t.contains(';') {
                    return err(
                        line_no,
                        column_of(line, i + 1),
                        format!("label `{t}` must not contain `;`"),
                    );
                }
            }
            all.push(tokens.iter().map(|t| t.to_string()).collect());
        }
        match next(&mut cursor) {
            Some((l, t)) => {
                line_no = l;
                line = t;
            }
            None => return err(line_no, 1, "missing `payoffs` section"),
        }
        labels = Some(all);
    }

    if line != "payoffs" {
        return err(line_no, 1, format!("expected `payoffs`, found `{line}`"));
    }

    let expected_rows: usize = counts.iter().product();
    let mut payoffs = Vec::with_capacity(expected_rows);
    let mut last_line = line_no;
    for row_idx in 0..expected_rows {
        let Some((line_no, line)) = next(&mut cursor) else {
            return err(
                last_line,
                1,
                format!("expected {expected_rows} payoff rows, found {row_idx}"),
            );
        };
        last_line = line_no;
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != num_players {
            return err(
                line_no,
                1,
                format!(
                    "payoff row {} has {} entries, expected {num_players}",
                    row_idx + 1,
                    tokens.len()
                ),
            );
        }
        let mut row = Vec::with_capacity(num_players);
        for (i, t) in tokens.iter().enumerate() {
            match parse_rational(t) {
                Ok(r) => row.push(r),
                Err(e) => return err(line_no, column_of(line, i + 1), e.to_string()),
            }
        }
        payoffs.push(row);
    }
    if let Some((line_no, line)) = next(&mut cursor) {
        return err(
            line_no,
            1,
            format!("unexpected trailing content `{line}` after {expected_rows} payoff rows"),
        );
    }

    let labels = labels.unwrap_or_else(|| {
        counts
            .iter()
            .map(|&m| (1..=m).map(|k| format!("s{k}")).collect())
            .collect()
    });
    Game::new(name, labels, payoffs).map_err(|e| match e {
        GameError::DuplicateLabel { player, label } => ParseError {
            line: 1,
            column: 1,
            message: format!("duplicate label `{label}` for player {}", player + 1),
        },
        other => ParseError {
            line: 1,
            column: 1,
            message: other.to_string(),
        },
    })
}

/// Canonical text form; round-trips bit-exactly through [`parse_game`].
pub fn write_game(game: &Game) -> String {
    let mut out = String::new();
    if let Some(name) = game.name() {
        out.push_str("game ");
        out.push_str(name);
        out.push('\n');
    }
    out.push_str(&format!("players {}\n", game.num_players()));
    out.push_str("actions");
    for m in game.action_counts() {
        out.push_str(&format!(" {m}"));
    }
    out.push('\n');
    for i in 0..game.num_players() {
        out.push_str("labels");
        for label in game.labels(i) {
            out.push_str(&format!(" {label}"));
        }
        out.push('\n');
    }
    out.push_str("payoffs\n");
    for flat in 0..game.num_profiles() {
        let row = game.payoff_row(flat);
        let mut first = true;
        for v in row {
            if !first {
                out.push(' ');
            }
            out.push_str(&format_rational(v));
            first = false;
        }
        out.push('\n');
    }
    out
}

/// Mixed profile text: one line per player with that player's weights.
pub fn parse_mixed_profile(text: &str, game: &Game) -> Result<MixedProfile, ParseError> {
    let lines = content_lines(text);
    if lines.len() != game.num_players() {
        return err(
            lines.last().map(|(l, _)| *l).unwrap_or(1),
            1,
            format!(
                "expected {} weight lines, found {}",
                game.num_players(),
                lines.len()
            ),
        );
    }
    let mut strategies = Vec::with_capacity(game.num_players());
    for (i, (line_no, line)) in lines.into_iter().enumerate() {
        let tokens: Vec<&str> = line.split_whitespace().collect();
        if tokens.len() != game.num_actions(i) {
            return err(
                line_no,
                1,
                format!(
                    "player {} has {} strategies, found {} weights",
                    i + 1,
                    game.num_actions(i),
                    tokens.len()
                ),
            );
        }
        let mut weights = Vec::with_capacity(tokens.len());
        for (t_idx, t) in tokens.iter().enumerate() {
            match parse_rational(t) {
                Ok(r) => weights.push(r),
                Err(e) => return err(line_no, column_of(line, t_idx + 1), e.to_string()),
            }
        }
        match MixedStrategy::new(weights) {
            Ok(s) => strategies.push(s),
            Err(e) => return err(line_no, 1, e.to_string()),
        }
    }
    Ok(MixedProfile::new(strategies))
}

pub fn write_mixed_profile(sigma: &MixedProfile) -> String {
    let mut out = String::new();
    for s in sigma.strategies() {
        let mut first = true;
        for w in s.weights() {
            if !first {
                out.push(' ');
            }
            out.push_str(&format_rational(w));
            first = false;
        }
        out.push('\n');
    }
    out
}

/// Correlated strategy text: one weight per profile in profile order,
/// whitespace-separated across any number of lines.
pub fn parse_correlated(text: &str, game: &Game) -> Result<CorrelatedStrategy, ParseError> {
    let mut weights: Vec<Rational> = Vec::with_capacity(game.num_profiles());
    for (line_no, line) in content_lines(text) {
        for (t_idx, t) in line.split_whitespace().enumerate() {
            match parse_rational(t) {
                Ok(r) => weights.push(r),
                Err(e) => return err(line_no, column_of(line, t_idx + 1), e.to_string()),
            }
        }
    }
    if weights.len() != game.num_profiles() {
        return err(
            1,
            1,
            format!(
                "expected {} profile weights, found {}",
                game.num_profiles(),
                weights.len()
            ),
        );
    }
    CorrelatedStrategy::new(weights).map_err(|e| ParseError {
        line: 1,
        column: 1,
        message: e.to_string(),
    })
}

pub fn write_correlated(mu: &CorrelatedStrategy) -> String {
    let mut out = String::new();
    for w in mu.weights() {
        out.push_str(&format_rational(w));
        out.push('\n');
    }
    out
}
