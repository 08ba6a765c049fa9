//! The plain-text design file format.
//!
//! ```text
//! hcs 1
//! m 10
//! n 6
//! trail 10 0 19 1 17 3 15 6 14 8 12
//! trail 2 0 3
//! ```
//!
//! Line one is the magic and format version. `m` and `n` follow, then
//! one `trail <stride> <entries...>` line per base trail. Values are
//! decimal, separated by single spaces, and already reduced modulo the
//! group order. Lines starting with `#` and blank lines are ignored; a
//! trailing newline is required. Parsing does not check that trails are
//! mathematically valid; that is the verifier's job.

use std::fmt;

use crate::constructor::BaseCycleSet;
use crate::trail::ClosedTrail;
use crate::zmod::Params;

/// Render a set in the design format. With `expand`, each trail line is
/// followed by comment lines listing every cycle of the full system that
/// the trail accounts for (its expansion and all distinct translates),
/// so the expanded file still parses as a design file.
pub fn write_design(set: &BaseCycleSet, expand: bool) -> String {
    let params = set.params();
    let mut out = String::new();
    out.push_str("hcs 1\n");
    out.push_str(&format!("m {}\n", params.m()));
    out.push_str(&format!("n {}\n", params.n()));
    for trail in set.trails() {
        out.push_str(&format!("trail {}", trail.stride()));
        for &v in trail.base() {
            out.push_str(&format!(" {v}"));
        }
        out.push('\n');
        if expand {
            for cycle in trail.orbit(params) {
                out.push_str("# cycle");
                for &v in cycle.vertices() {
                    out.push_str(&format!(" {v}"));
                }
                out.push('\n');
            }
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    /// 1-based line number; one past the end for truncated input.
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ParseErrorKind {
    /// First line must read exactly `hcs 1`.
    BadHeader,
    /// Expected `m <int>` or `n <int>` here.
    ExpectedField(&'static str),
    /// Token is not a plain decimal number (no signs, no leading zeros).
    BadInteger(String),
    /// Entry or stride at or above the group order.
    ValueTooLarge { value: u64, order: u64 },
    /// `m`/`n` rejected (too small, or the order overflows).
    BadParams(String),
    /// Line starts with something other than `trail` or `#`.
    UnknownDirective(String),
    /// A trail needs a stride and at least one entry.
    TruncatedTrail,
    /// The file must end with a newline.
    MissingFinalNewline,
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: ", self.line)?;
        match &self.kind {
            ParseErrorKind::BadHeader => write!(f, "expected header `hcs 1`"),
            ParseErrorKind::ExpectedField(name) => write!(f, "expected `{name} <int>`"),
            ParseErrorKind::BadInteger(tok) => write!(f, "bad integer `{tok}`"),
            ParseErrorKind::ValueTooLarge { value, order } => {
                write!(f, "value {value} not below the order {order}")
            }
            ParseErrorKind::BadParams(msg) => write!(f, "bad parameters: {msg}"),
            ParseErrorKind::UnknownDirective(tok) => write!(f, "unknown directive `{tok}`"),
            ParseErrorKind::TruncatedTrail => {
                write!(f, "trail needs a stride and at least one entry")
            }
            ParseErrorKind::MissingFinalNewline => write!(f, "missing final newline"),
        }
    }
}

impl std::error::Error for ParseError {}

/// Strict decimal: digits only, no redundant leading zero.
fn parse_number(token: &str, line: usize) -> Result<u64, ParseError> {
    let bad = || ParseError {
        line,
        kind: ParseErrorKind::BadInteger(token.to_string()),
    };
    if token.is_empty() || !token.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    if token.len() > 1 && token.starts_with('0') {
        return Err(bad());
    }
    token.parse().map_err(|_| bad())
}

fn parse_field(
    line: Option<(usize, &str)>,
    want: &'static str,
    end: usize,
) -> Result<(usize, u64), ParseError> {
    let (no, text) = line.ok_or(ParseError {
        line: end,
        kind: ParseErrorKind::ExpectedField(want),
    })?;
    let expect = || ParseError {
        line: no,
        kind: ParseErrorKind::ExpectedField(want),
    };
    let rest = text.strip_prefix(want).ok_or_else(expect)?;
    let rest = rest.strip_prefix(' ').ok_or_else(expect)?;
    if rest.contains(' ') {
        return Err(expect());
    }
    Ok((no, parse_number(rest, no)?))
}

/// Parse a design file.
pub fn parse_design(text: &str) -> Result<BaseCycleSet, ParseError> {
    let total_lines = text.split('\n').count();
    let body = text.strip_suffix('\n').ok_or(ParseError {
        line: total_lines,
        kind: ParseErrorKind::MissingFinalNewline,
    })?;
    let end = total_lines; // first line number past the content
    let mut lines = body
        .split('\n')
        .enumerate()
        .map(|(i, l)| (i + 1, l))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let (no, header) = lines.next().ok_or(ParseError {
        line: end,
        kind: ParseErrorKind::BadHeader,
    })?;
    if header != "hcs 1" {
        return Err(ParseError {
            line: no,
            kind: ParseErrorKind::BadHeader,
        });
    }
    let (_, m) = parse_field(lines.next(), "m", end)?;
    let (n_line, n) = parse_field(lines.next(), "n", end)?;
    let params = Params::new(m, n).map_err(|e| ParseError {
        line: n_line,
        kind: ParseErrorKind::BadParams(e.to_string()),
    })?;
    let order = params.order();

    let mut trails = Vec::new();
    for (no, text) in lines {
        let rest = match text.strip_prefix("trail ") {
            Some(rest) => rest,
            None if text == "trail" => {
                return Err(ParseError {
                    line: no,
                    kind: ParseErrorKind::TruncatedTrail,
                });
            }
            None => {
                let tok = text.split(' ').next().unwrap_or_default().to_string();
                return Err(ParseError {
                    line: no,
                    kind: ParseErrorKind::UnknownDirective(tok),
                });
            }
        };
        let mut values = Vec::new();
        for token in rest.split(' ') {
            let v = parse_number(token, no)?;
            if v >= order {
                return Err(ParseError {
                    line: no,
                    kind: ParseErrorKind::ValueTooLarge { value: v, order },
                });
            }
            values.push(v);
        }
        if values.len() < 2 {
            return Err(ParseError {
                line: no,
                kind: ParseErrorKind::TruncatedTrail,
            });
        }
        let stride = values[0];
        trails.push(ClosedTrail::new(values[1..].to_vec(), stride, &params));
    }
    Ok(BaseCycleSet::new(params, trails, None))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constructor::{construct, construct_bipartite, Construction};

    fn example_10x6() -> BaseCycleSet {
        match construct(&Params::new(10, 6).unwrap(), None).unwrap() {
            Construction::Built(set) => set,
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn writes_the_documented_format() {
        let text = write_design(&example_10x6(), false);
        assert_eq!(
            text,
            "hcs 1\n\
             m 10\n\
             n 6\n\
             trail 10 0 19 1 17 3 15 6 14 8 12\n\
             trail 2 0 3\n\
             trail 2 0 7\n\
             trail 2 0 13\n\
             trail 10 0 29 1 28 2 27 3 26 4 25\n\
             trail 17 0\n"
        );
    }

    #[test]
    fn expansion_comments_follow_each_trail() {
        let set = construct_bipartite(2).unwrap();
        let text = write_design(&set, true);
        assert_eq!(text, "hcs 1\nm 2\nn 2\ntrail 1 0\n# cycle 0 1 2 3\n");
    }

    #[test]
    fn expansion_lists_the_whole_orbit() {
        let set = construct_bipartite(4).unwrap();
        let text = write_design(&set, true);
        assert_eq!(
            text,
            "hcs 1\nm 2\nn 4\ntrail 2 0 3\n\
             # cycle 0 3 2 5 4 7 6 1\n\
             # cycle 1 4 3 6 5 0 7 2\n"
        );
    }

    #[test]
    fn round_trips_with_and_without_expansion() {
        for expand in [false, true] {
            let set = example_10x6();
            let parsed = parse_design(&write_design(&set, expand)).unwrap();
            assert_eq!(parsed.params(), set.params());
            assert_eq!(parsed.trails(), set.trails());
            assert_eq!(parsed.plan(), None);
        }
    }

    #[test]
    fn accepts_comments_and_blank_lines() {
        let text = "# a design\n\nhcs 1\nm 2\nn 2\n# the single trail\ntrail 1 0\n";
        let set = parse_design(text).unwrap();
        assert_eq!(set.trails().len(), 1);
        assert_eq!(set.trails()[0].stride(), 1);
    }

    fn kind_at(text: &str) -> (usize, ParseErrorKind) {
        let e = parse_design(text).unwrap_err();
        (e.line, e.kind)
    }

    #[test]
    fn rejects_malformed_input() {
        assert_eq!(kind_at("m 2\nn 2\n"), (1, ParseErrorKind::BadHeader));
        assert_eq!(kind_at("hcs 2\nm 2\nn 2\n"), (1, ParseErrorKind::BadHeader));
        assert_eq!(
            kind_at("hcs 1\nm 2\nn 2\ntrail 1 0"),
            (4, ParseErrorKind::MissingFinalNewline)
        );
        assert_eq!(kind_at("hcs 1\n"), (2, ParseErrorKind::ExpectedField("m")));
        assert_eq!(
            kind_at("hcs 1\nm 2\n"),
            (3, ParseErrorKind::ExpectedField("n"))
        );
        assert_eq!(
            kind_at("hcs 1\nn 2\nm 2\n"),
            (2, ParseErrorKind::ExpectedField("m"))
        );
        assert_eq!(
            kind_at("hcs 1\nm 2\nn 2\ntrail 1 0 x\n"),
            (4, ParseErrorKind::BadInteger("x".into()))
        );
        assert_eq!(
            kind_at("hcs 1\nm 2\nn 2\ntrail 1  0\n"),
            (4, ParseErrorKind::BadInteger("".into()))
        );
        assert_eq!(
            kind_at("hcs 1\nm 2\nn 2\ntrail 01 0\n"),
            (4, ParseErrorKind::BadInteger("01".into()))
        );
        assert_eq!(
            kind_at("hcs 1\nm 10\nn 6\ntrail 2 0 60\n"),
            (
                4,
                ParseErrorKind::ValueTooLarge {
                    value: 60,
                    order: 60
                }
            )
        );
        assert_eq!(
            kind_at("hcs 1\nm 2\nn 2\ncycle 1 0\n"),
            (4, ParseErrorKind::UnknownDirective("cycle".into()))
        );
        assert_eq!(
            kind_at("hcs 1\nm 2\nn 2\ntrail 1\n"),
            (4, ParseErrorKind::TruncatedTrail)
        );
        let (line, kind) = kind_at("hcs 1\nm 1\nn 2\n");
        assert_eq!(line, 3);
        assert!(matches!(kind, ParseErrorKind::BadParams(_)));
    }

    #[test]
    fn parses_invalid_trails_without_judging_them() {
        // Mathematical nonsense is a verification failure, not a parse
        // failure.
        let set = parse_design("hcs 1\nm 10\nn 6\ntrail 2 0 10\n").unwrap();
        assert_eq!(set.trails().len(), 1);
        assert!(set.trails()[0].validate(set.params()).is_err());
    }
}
