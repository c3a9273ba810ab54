//! Line-oriented text format for trace documents.
//!
//! ```text
//! SURFACE PLANE
//! CURVE ALPHA LINE
//! -1 0
//! 1 0
//! END
//! CURVE BETA CLOSED
//! 1 -1/2
//! ...
//! END
//! TRACE
//! X -1 0
//! Y 1 0
//! GAMMA_ALPHA FORWARD 0
//! GAMMA_BETA BACKWARD 0
//! OFFSET 0
//! END
//! ```
//!
//! `#` starts a comment. Rationals are written `p` or `p/q`.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_traits::Zero;

use crate::error::{Error, Result};
use crate::geometry::{fmt_rational, PLPath, PathKind, Point, Rational};
use crate::trace::{make_trace, Direction, PathSpec, Surface, Trace};

/// Everything needed to rebuild a trace with [`make_trace`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceDocument {
    pub surface: Surface,
    pub alpha: PLPath,
    pub beta: PLPath,
    pub x: Point,
    pub y: Point,
    pub gamma_alpha: PathSpec,
    pub gamma_beta: PathSpec,
    pub offset: i64,
}

impl TraceDocument {
    pub fn from_trace(trace: &Trace) -> Self {
        TraceDocument {
            surface: trace.surface().clone(),
            alpha: trace.alpha().clone(),
            beta: trace.beta().clone(),
            x: trace.x().location.clone(),
            y: trace.y().location.clone(),
            gamma_alpha: trace.gamma_alpha().spec(),
            gamma_beta: trace.gamma_beta().spec(),
            offset: trace.offset(),
        }
    }

    pub fn to_trace(&self) -> Result<Trace> {
        make_trace(
            self.surface.clone(),
            self.alpha.clone(),
            self.beta.clone(),
            &self.x,
            &self.y,
            self.gamma_alpha,
            self.gamma_beta,
            self.offset,
        )
    }

    pub fn serialize(&self) -> String {
        let mut s = String::new();
        let pt = |p: &Point| format!("{} {}", fmt_rational(&p.x), fmt_rational(&p.y));
        match &self.surface {
            Surface::Plane => s.push_str("SURFACE PLANE\n"),
            Surface::SpherePlane => s.push_str("SURFACE SPHERE\n"),
            Surface::Annulus { period } => {
                let _ = writeln!(s, "SURFACE ANNULUS {}", pt(period));
            }
            Surface::Torus { e1, e2 } => {
                let _ = writeln!(s, "SURFACE TORUS {} {}", pt(e1), pt(e2));
            }
        }
        for (name, curve) in [("ALPHA", &self.alpha), ("BETA", &self.beta)] {
            let kind = match curve.kind() {
                PathKind::Closed => "CLOSED".to_string(),
                PathKind::Open => "OPEN".to_string(),
                PathKind::Line => "LINE".to_string(),
                PathKind::Periodic { period } => format!("PERIODIC {}", pt(period)),
            };
            let _ = writeln!(s, "CURVE {name} {kind}");
            for v in curve.vertices() {
                let _ = writeln!(s, "{}", pt(v));
            }
            s.push_str("END\n");
        }
        let spec = |p: &PathSpec| {
            let d = match p.direction {
                Direction::Forward => "FORWARD",
                Direction::Backward => "BACKWARD",
                Direction::Stay => "STAY",
            };
            format!("{d} {}", p.extra_loops)
        };
        let _ = writeln!(s, "TRACE\nX {}\nY {}", pt(&self.x), pt(&self.y));
        let _ = writeln!(s, "GAMMA_ALPHA {}", spec(&self.gamma_alpha));
        let _ = writeln!(s, "GAMMA_BETA {}", spec(&self.gamma_beta));
        let _ = writeln!(s, "OFFSET {}\nEND", self.offset);
        s
    }
}

pub fn serialize_trace(trace: &Trace) -> String {
    TraceDocument::from_trace(trace).serialize()
}

/// Parses `p` or `p/q` with integer `p`, nonzero `q`.
pub fn parse_rational(s: &str) -> Option<Rational> {
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n, d),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().ok()?;
    let d: BigInt = d.parse().ok()?;
    if d.is_zero() {
        return None;
    }
    Some(Rational::new(n, d))
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

struct Line<'a> {
    number: usize,
    tokens: Vec<Token<'a>>,
    end_column: usize,
}

impl<'a> Line<'a> {
    fn err(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            column,
            message: message.into(),
        }
    }

    fn get(&self, i: usize, what: &str) -> Result<&Token<'a>> {
        self.tokens
            .get(i)
            .ok_or_else(|| self.err(self.end_column, format!("expected {what}")))
    }

    fn rational(&self, i: usize) -> Result<Rational> {
        let t = self.get(i, "a rational")?;
        parse_rational(t.text)
            .ok_or_else(|| self.err(t.column, format!("bad rational '{}'", t.text)))
    }

    fn integer(&self, i: usize) -> Result<i64> {
        let t = self.get(i, "an integer")?;
        t.text
            .parse()
            .map_err(|_| self.err(t.column, format!("bad integer '{}'", t.text)))
    }

    fn point(&self, i: usize) -> Result<Point> {
        Ok(Point::new(self.rational(i)?, self.rational(i + 1)?))
    }

    fn arity(&self, n: usize) -> Result<()> {
        match self.tokens.get(n) {
            Some(t) => Err(self.err(t.column, "unexpected trailing input")),
            None => Ok(()),
        }
    }
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let body = raw.split('#').next().unwrap_or("");
        let mut tokens = Vec::new();
        let mut start = None;
        for (j, ch) in body.char_indices().chain([(body.len(), ' ')]) {
            match (ch.is_whitespace(), start) {
                (false, None) => start = Some(j),
                (true, Some(s)) => {
                    tokens.push(Token {
                        text: &body[s..j],
                        column: body[..s].chars().count() + 1,
                    });
                    start = None;
                }
                _ => {}
            }
        }
        if !tokens.is_empty() {
            out.push(Line {
                number: i + 1,
                tokens,
                end_column: body.trim_end().chars().count() + 1,
            });
        }
    }
    out
}

fn parse_spec(line: &Line) -> Result<PathSpec> {
    let t = line.get(1, "a direction")?;
    let direction = match t.text {
        "FORWARD" => Direction::Forward,
        "BACKWARD" => Direction::Backward,
        "STAY" => Direction::Stay,
        other => return Err(line.err(t.column, format!("unknown direction '{other}'"))),
    };
    let extra_loops = if line.tokens.len() > 2 {
        line.integer(2)?
    } else {
        0
    };
    line.arity(3)?;
    Ok(PathSpec::new(direction, extra_loops))
}

/// Parses a document without building the trace.
pub fn parse_document(text: &str) -> Result<TraceDocument> {
    let lines = tokenize(text);
    let mut it = lines.iter().peekable();
    let last_line = text.lines().count().max(1);
    let eof = |what: &str| Error::Parse {
        line: last_line,
        column: 1,
        message: format!("unexpected end of input, expected {what}"),
    };

    let mut surface = None;
    let mut alpha = None;
    let mut beta = None;
    let mut trace_block = None;

    while let Some(line) = it.next() {
        let head = &line.tokens[0];
        match head.text {
            "SURFACE" => {
                if surface.is_some() {
                    return Err(line.err(head.column, "duplicate SURFACE"));
                }
                let kind = line.get(1, "a surface kind")?;
                surface = Some(match kind.text {
                    "PLANE" => {
                        line.arity(2)?;
                        Surface::Plane
                    }
                    "SPHERE" => {
                        line.arity(2)?;
                        Surface::SpherePlane
                    }
                    "ANNULUS" => {
                        line.arity(4)?;
                        Surface::Annulus {
                            period: line.point(2)?,
                        }
                    }
                    "TORUS" => {
                        line.arity(6)?;
                        Surface::Torus {
                            e1: line.point(2)?,
                            e2: line.point(4)?,
                        }
                    }
                    other => {
                        return Err(line.err(kind.column, format!("unknown surface '{other}'")))
                    }
                });
            }
            "CURVE" => {
                let which = line.get(1, "ALPHA or BETA")?;
                let kt = line.get(2, "a curve kind")?;
                let kind = match kt.text {
                    "CLOSED" => PathKind::Closed,
                    "OPEN" => PathKind::Open,
                    "LINE" => PathKind::Line,
                    "PERIODIC" => PathKind::Periodic {
                        period: line.point(3)?,
                    },
                    other => {
                        return Err(line.err(kt.column, format!("unknown curve kind '{other}'")))
                    }
                };
                line.arity(if matches!(kind, PathKind::Periodic { .. }) {
                    5
                } else {
                    3
                })?;
                let mut vertices = Vec::new();
                loop {
                    let v = it.next().ok_or_else(|| eof("END"))?;
                    if v.tokens[0].text == "END" {
                        v.arity(1)?;
                        break;
                    }
                    v.arity(2)?;
                    vertices.push(v.point(0)?);
                }
                let curve = PLPath::new(vertices, kind).map_err(|e| line.err(1, e.to_string()))?;
                let slot = match which.text {
                    "ALPHA" => &mut alpha,
                    "BETA" => &mut beta,
                    other => return Err(line.err(which.column, format!("unknown curve '{other}'"))),
                };
                if slot.is_some() {
                    return Err(line.err(which.column, "duplicate curve"));
                }
                *slot = Some(curve);
            }
            "TRACE" => {
                line.arity(1)?;
                if trace_block.is_some() {
                    return Err(line.err(head.column, "duplicate TRACE"));
                }
                let (mut x, mut y, mut ga, mut gb, mut offset) = (None, None, None, None, 0);
                loop {
                    let l = it.next().ok_or_else(|| eof("END"))?;
                    let key = &l.tokens[0];
                    match key.text {
                        "END" => {
                            l.arity(1)?;
                            break;
                        }
                        "X" => {
                            l.arity(3)?;
                            x = Some(l.point(1)?);
                        }
                        "Y" => {
                            l.arity(3)?;
                            y = Some(l.point(1)?);
                        }
                        "GAMMA_ALPHA" => ga = Some(parse_spec(l)?),
                        "GAMMA_BETA" => gb = Some(parse_spec(l)?),
                        "OFFSET" => {
                            l.arity(2)?;
                            offset = l.integer(1)?;
                        }
                        other => {
                            return Err(l.err(key.column, format!("unknown trace field '{other}'")))
                        }
                    }
                }
                let missing = |what: &str| line.err(1, format!("TRACE block lacks {what}"));
                trace_block = Some((
                    x.ok_or_else(|| missing("X"))?,
                    y.ok_or_else(|| missing("Y"))?,
                    ga.ok_or_else(|| missing("GAMMA_ALPHA"))?,
                    gb.ok_or_else(|| missing("GAMMA_BETA"))?,
                    offset,
                ));
            }
            other => return Err(line.err(head.column, format!("unknown section '{other}'"))),
        }
    }

    let (x, y, gamma_alpha, gamma_beta, offset) = trace_block.ok_or_else(|| eof("TRACE"))?;
    Ok(TraceDocument {
        surface: surface.ok_or_else(|| eof("SURFACE"))?,
        alpha: alpha.ok_or_else(|| eof("CURVE ALPHA"))?,
        beta: beta.ok_or_else(|| eof("CURVE BETA"))?,
        x,
        y,
        gamma_alpha,
        gamma_beta,
        offset,
    })
}

/// Parses a document and builds the trace it describes.
pub fn parse_trace(text: &str) -> Result<Trace> {
    parse_document(text)?.to_trace()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{circle_pair, half_disc, half_disc_on_sphere};
    use crate::geometry::ratio;

    #[test]
    fn rationals() {
        assert_eq!(parse_rational("-3/6"), Some(ratio(-1, 2)));
        assert_eq!(parse_rational("7"), Some(Rational::from_integer(7.into())));
        assert_eq!(parse_rational("1/0"), None);
        assert_eq!(parse_rational("x"), None);
    }

    #[test]
    fn round_trips() {
        for t in [half_disc(), circle_pair(2, -1), half_disc_on_sphere(3)] {
            let text = serialize_trace(&t);
            let back = parse_trace(&text).unwrap();
            assert_eq!(back, t);
            assert_eq!(serialize_trace(&back), text);
        }
    }

    #[test]
    fn missing_trace_block() {
        let text = serialize_trace(&half_disc());
        let cut = &text[..text.find("TRACE").unwrap()];
        assert!(matches!(parse_document(cut), Err(Error::Parse { .. })));
    }

    #[test]
    fn positioned_errors() {
        let text = serialize_trace(&half_disc()).replace("X -1 0", "X -1 zero");
        match parse_document(&text) {
            Err(Error::Parse { line, column, .. }) => {
                assert_eq!(text.lines().nth(line - 1).unwrap(), "X -1 zero");
                assert_eq!(column, 6);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn endpoint_off_curves_is_semantic() {
        let text = serialize_trace(&half_disc()).replace("X -1 0", "X -2 0");
        assert!(matches!(
            parse_trace(&text),
            Err(Error::EndpointNotIntersection(_))
        ));
    }
}
