//! Text formats for automata and CSV helpers for benchmark output.
//!
//! The native format is line oriented:
//!
//! ```text
//! fsa <num_states> <num_symbols>
//! s <state>                 start state
//! f <state>                 final state
//! t <src> <symbol> <dst>    labelled transition
//! e <src> <dst>             ε-move
//! # comment
//! ```
//!
//! The header must be the first record. [`serialise`] writes records in a
//! canonical order (starts, finals, transitions, ε-moves, each ascending),
//! so structurally equal automata serialise to identical bytes.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::io;

use serde::de::DeserializeOwned;
use serde::Serialize;
use thiserror::Error;

use crate::{Dfa, Error as CoreError, Nfa, StateId, Symbol};

#[derive(Debug, Clone, PartialEq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    /// 1-based line number.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum ParseErrorKind {
    #[error("expected header `fsa <states> <symbols>`")]
    MissingHeader,
    #[error("duplicate header")]
    DuplicateHeader,
    #[error("unknown record `{0}`")]
    UnknownRecord(String),
    #[error("record `{record}` takes {expected} fields, found {found}")]
    WrongArity {
        record: String,
        expected: usize,
        found: usize,
    },
    #[error("invalid number `{0}`")]
    BadNumber(String),
    #[error(transparent)]
    Bounds(#[from] CoreError),
    #[error("empty input")]
    Empty,
}

fn err(line: usize, kind: ParseErrorKind) -> ParseError {
    ParseError { line, kind }
}

fn number<T: std::str::FromStr>(line: usize, field: &str) -> Result<T, ParseError> {
    field
        .parse()
        .map_err(|_| err(line, ParseErrorKind::BadNumber(field.to_owned())))
}

fn records(text: &str) -> impl Iterator<Item = (usize, Vec<&str>)> {
    text.lines().enumerate().filter_map(|(i, l)| {
        let l = l.trim();
        if l.is_empty() || l.starts_with('#') {
            None
        } else {
            Some((i + 1, l.split_whitespace().collect()))
        }
    })
}

/// Parses the native format. Duplicate records collapse.
pub fn parse(text: &str) -> Result<Nfa, ParseError> {
    let mut recs = records(text);
    let (line, header) = recs.next().ok_or(err(1, ParseErrorKind::Empty))?;
    if header.first() != Some(&"fsa") {
        return Err(err(line, ParseErrorKind::MissingHeader));
    }
    if header.len() != 3 {
        return Err(err(
            line,
            ParseErrorKind::WrongArity {
                record: "fsa".into(),
                expected: 2,
                found: header.len() - 1,
            },
        ));
    }
    let mut nfa = Nfa::new(number(line, header[1])?, number(line, header[2])?);

    for (line, fields) in recs {
        let arity = |expected: usize| -> Result<(), ParseError> {
            if fields.len() - 1 == expected {
                Ok(())
            } else {
                Err(err(
                    line,
                    ParseErrorKind::WrongArity {
                        record: fields[0].to_owned(),
                        expected,
                        found: fields.len() - 1,
                    },
                ))
            }
        };
        let bounds = |e: CoreError| err(line, ParseErrorKind::Bounds(e));
        match fields[0] {
            "s" => {
                arity(1)?;
                nfa.add_start(number(line, fields[1])?).map_err(bounds)?;
            }
            "f" => {
                arity(1)?;
                nfa.add_final(number(line, fields[1])?).map_err(bounds)?;
            }
            "t" => {
                arity(3)?;
                let (src, sym, dst) = (
                    number(line, fields[1])?,
                    number(line, fields[2])?,
                    number(line, fields[3])?,
                );
                nfa.add_transition(src, sym, dst).map_err(bounds)?;
            }
            "e" => {
                arity(2)?;
                nfa.add_eps(number(line, fields[1])?, number(line, fields[2])?)
                    .map_err(bounds)?;
            }
            "fsa" => return Err(err(line, ParseErrorKind::DuplicateHeader)),
            other => return Err(err(line, ParseErrorKind::UnknownRecord(other.to_owned()))),
        }
    }
    Ok(nfa)
}

/// Canonical serialisation of an NFA.
pub fn serialise(nfa: &Nfa) -> String {
    let mut out = String::new();
    writeln!(out, "fsa {} {}", nfa.num_states(), nfa.num_symbols()).unwrap();
    for s in nfa.starts() {
        writeln!(out, "s {s}").unwrap();
    }
    for f in nfa.finals() {
        writeln!(out, "f {f}").unwrap();
    }
    for (src, sym, dst) in nfa.transition_triples() {
        writeln!(out, "t {src} {sym} {dst}").unwrap();
    }
    for (src, dst) in nfa.eps_moves() {
        writeln!(out, "e {src} {dst}").unwrap();
    }
    out
}

/// Canonical serialisation of a DFA: one `s 0` line, no ε-moves. Subset
/// labels are not written.
pub fn serialise_dfa(dfa: &Dfa) -> String {
    serialise(&dfa.to_nfa())
}

/// An automaton read from AT&T-style text, with its symbol table.
#[derive(Debug, Clone, PartialEq)]
pub struct AttAutomaton {
    pub nfa: Nfa,
    /// `symbols[i]` is the label of symbol `i`, in order of first use.
    pub symbols: Vec<String>,
}

/// Label spelling ε in AT&T-style input.
pub const ATT_EPSILON: &str = "<eps>";

/// Parses AT&T FSM / OpenFst acceptor text.
///
/// Arc lines are `src dst label [weight]`, final lines `state [weight]`.
/// Weights are ignored. The source of the first arc line (or the first
/// final line, if there are no arcs before it) is the start state.
pub fn parse_att(text: &str) -> Result<AttAutomaton, ParseError> {
    enum Line<'a> {
        Arc(StateId, StateId, &'a str),
        Final(StateId),
    }
    let mut lines = Vec::new();
    let mut max_state: Option<StateId> = None;
    let mut bump = |q: StateId| max_state = Some(max_state.map_or(q, |m| m.max(q)));
    for (line, fields) in records(text) {
        match fields.len() {
            1 | 2 => {
                let q = number(line, fields[0])?;
                if fields.len() == 2 {
                    number::<f64>(line, fields[1])?;
                }
                bump(q);
                lines.push(Line::Final(q));
            }
            3 | 4 => {
                let src = number(line, fields[0])?;
                let dst = number(line, fields[1])?;
                if fields.len() == 4 {
                    number::<f64>(line, fields[3])?;
                }
                bump(src);
                bump(dst);
                lines.push(Line::Arc(src, dst, fields[2]));
            }
            found => {
                return Err(err(
                    line,
                    ParseErrorKind::WrongArity {
                        record: "arc".into(),
                        expected: 3,
                        found,
                    },
                ))
            }
        }
    }

    let mut symbols: Vec<String> = Vec::new();
    let mut symbol_ids: HashMap<&str, Symbol> = HashMap::new();
    for l in &lines {
        if let Line::Arc(_, _, label) = l {
            if *label != ATT_EPSILON && !symbol_ids.contains_key(label) {
                symbol_ids.insert(label, symbols.len() as Symbol);
                symbols.push((*label).to_owned());
            }
        }
    }

    let num_states = max_state.map_or(0, |m| m as usize + 1);
    let mut nfa = Nfa::new(num_states, symbols.len());
    let start = lines.first().map(|l| match *l {
        Line::Arc(src, _, _) => src,
        Line::Final(q) => q,
    });
    if let Some(q) = start {
        nfa.add_start(q).expect("state in range");
    }
    for l in &lines {
        // ids are bounded by construction
        match *l {
            Line::Arc(src, dst, ATT_EPSILON) => nfa.add_eps(src, dst),
            Line::Arc(src, dst, label) => nfa.add_transition(src, symbol_ids[label], dst),
            Line::Final(q) => nfa.add_final(q),
        }
        .expect("ids in range");
    }
    Ok(AttAutomaton { nfa, symbols })
}

/// Writes rows as CSV with a header line.
pub fn write_csv<W: io::Write, T: Serialize>(writer: W, rows: &[T]) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(writer);
    for row in rows {
        w.serialize(row)?;
    }
    w.flush()?;
    Ok(())
}

/// Reads rows written by [`write_csv`].
pub fn read_csv<R: io::Read, T: DeserializeOwned>(reader: R) -> csv::Result<Vec<T>> {
    csv::Reader::from_reader(reader).deserialize().collect()
}
