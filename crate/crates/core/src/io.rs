//! WKT and CSV polygon files, and the JSON report document.
//!
//! Coordinates are written with Rust's shortest round-trip float formatting,
//! so writing then parsing gives back the same bits.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geom::{Axis, Point};
use crate::polygon::Polygon;
use crate::scanline::{IntersectionEvent, RunMetrics};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Wkt,
    Csv,
}

impl Format {
    /// `.csv` files are CSV, anything else WKT.
    pub fn from_path(path: &Path) -> Format {
        match path.extension().and_then(|e| e.to_str()) {
            Some(e) if e.eq_ignore_ascii_case("csv") => Format::Csv,
            _ => Format::Wkt,
        }
    }
}

impl FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "wkt" => Ok(Format::Wkt),
            "csv" => Ok(Format::Csv),
            other => Err(format!("unknown format `{other}`")),
        }
    }
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Builds the ring, dropping an explicit closing vertex.
fn close_ring(mut pts: Vec<Point>) -> Result<Polygon> {
    if pts.len() > 1 && pts[0].bits() == pts[pts.len() - 1].bits() {
        pts.pop();
    }
    Polygon::new(pts)
}

/// Character cursor with 1-based line and column.
struct Cursor<'a> {
    chars: std::iter::Peekable<std::str::Chars<'a>>,
    line: usize,
    column: usize,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            chars: text.chars().peekable(),
            line: 1,
            column: 1,
        }
    }

    fn peek(&mut self) -> Option<char> {
        self.chars.peek().copied()
    }

    fn bump(&mut self) -> Option<char> {
        let c = self.chars.next()?;
        if c == '\n' {
            self.line += 1;
            self.column = 1;
        } else {
            self.column += 1;
        }
        Some(c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.bump();
        }
    }

    fn err(&self, message: impl Into<String>) -> Error {
        parse_err(self.line, self.column, message)
    }

    fn expect(&mut self, want: char) -> Result<()> {
        self.skip_ws();
        match self.peek() {
            Some(c) if c == want => {
                self.bump();
                Ok(())
            }
            Some(c) => Err(self.err(format!("expected `{want}`, found `{c}`"))),
            None => Err(self.err(format!("expected `{want}`, found end of input"))),
        }
    }

    /// A run of characters that may belong to a word or a number.
    fn token(&mut self) -> (usize, usize, String) {
        self.skip_ws();
        let (line, column) = (self.line, self.column);
        let mut s = String::new();
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || matches!(c, '.' | '+' | '-' | '_') {
                s.push(c);
                self.bump();
            } else {
                break;
            }
        }
        (line, column, s)
    }

    fn number(&mut self) -> Result<f64> {
        let (line, column, tok) = self.token();
        if tok.is_empty() {
            return Err(match self.peek() {
                Some(c) => parse_err(line, column, format!("expected a number, found `{c}`")),
                None => parse_err(line, column, "expected a number, found end of input"),
            });
        }
        tok.parse::<f64>()
            .map_err(|_| parse_err(line, column, format!("invalid number `{tok}`")))
    }
}

/// Parses a single-ring `POLYGON ((x y, ...))`.
pub fn parse_wkt(text: &str) -> Result<Polygon> {
    let mut cur = Cursor::new(text);
    let (line, column, word) = cur.token();
    match word.to_ascii_uppercase().as_str() {
        "POLYGON" => {}
        "MULTIPOLYGON" => return Err(parse_err(line, column, "MULTIPOLYGON is not supported")),
        "" => return Err(parse_err(line, column, "expected POLYGON")),
        _ => {
            return Err(parse_err(
                line,
                column,
                format!("expected POLYGON, found `{word}`"),
            ))
        }
    }
    cur.expect('(')?;
    cur.expect('(')?;
    let mut pts = Vec::new();
    loop {
        let x = cur.number()?;
        let y = cur.number()?;
        pts.push(Point::new(x, y)?);
        cur.skip_ws();
        match cur.peek() {
            Some(',') => {
                cur.bump();
            }
            Some(')') => {
                cur.bump();
                break;
            }
            Some(c) => return Err(cur.err(format!("expected `,` or `)`, found `{c}`"))),
            None => return Err(cur.err("unterminated ring")),
        }
    }
    cur.skip_ws();
    if cur.peek() == Some(',') {
        return Err(cur.err("polygons with holes are not supported"));
    }
    cur.expect(')')?;
    cur.skip_ws();
    if let Some(c) = cur.peek() {
        return Err(cur.err(format!("unexpected `{c}` after polygon")));
    }
    close_ring(pts)
}

/// Parses one `x,y` pair per line. Blank lines are ignored.
pub fn parse_csv(text: &str) -> Result<Polygon> {
    let mut pts = Vec::new();
    for (k, raw) in text.lines().enumerate() {
        let line = k + 1;
        if raw.trim().is_empty() {
            continue;
        }
        let Some(comma) = raw.find(',') else {
            return Err(parse_err(line, raw.len() + 1, "expected `x,y`"));
        };
        let (xs, ys) = (&raw[..comma], &raw[comma + 1..]);
        if let Some(extra) = ys.find(',') {
            return Err(parse_err(
                line,
                comma + 2 + extra,
                "expected exactly two fields",
            ));
        }
        let field = |s: &str, offset: usize| -> Result<f64> {
            let lead = s.len() - s.trim_start().len();
            s.trim().parse::<f64>().map_err(|_| {
                parse_err(
                    line,
                    offset + lead + 1,
                    format!("invalid number `{}`", s.trim()),
                )
            })
        };
        let x = field(xs, 0)?;
        let y = field(ys, comma + 1)?;
        pts.push(Point::new(x, y)?);
    }
    close_ring(pts)
}

pub fn parse_polygon(text: &str, format: Format) -> Result<Polygon> {
    match format {
        Format::Wkt => parse_wkt(text),
        Format::Csv => parse_csv(text),
    }
}

pub fn read_polygon(path: &Path, format: Option<Format>) -> Result<Polygon> {
    let text = fs::read_to_string(path)?;
    parse_polygon(&text, format.unwrap_or_else(|| Format::from_path(path)))
}

/// `POLYGON ((...))` with the first vertex repeated at the end.
pub fn write_wkt(poly: &Polygon) -> String {
    let mut s = String::from("POLYGON ((");
    for (k, p) in poly
        .vertices()
        .iter()
        .chain(poly.vertices().first())
        .enumerate()
    {
        if k > 0 {
            s.push_str(", ");
        }
        let _ = write!(s, "{} {}", p.x, p.y);
    }
    s.push_str("))\n");
    s
}

pub fn write_csv(poly: &Polygon) -> String {
    let mut s = String::new();
    for p in poly.vertices() {
        let _ = writeln!(s, "{},{}", p.x, p.y);
    }
    s
}

pub fn write_polygon(poly: &Polygon, format: Format) -> String {
    match format {
        Format::Wkt => write_wkt(poly),
        Format::Csv => write_csv(poly),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EventDoc {
    pub edge_i: usize,
    pub edge_j: usize,
    pub x: f64,
    pub y: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MetricsDoc {
    pub n_real: usize,
    /// Only meaningful for correction runs; `null` for plain reports.
    pub n_supp: Option<i64>,
    pub explored: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDoc {
    pub n: usize,
    pub k: usize,
    pub axis: Axis,
    pub events: Vec<EventDoc>,
    pub metrics: MetricsDoc,
}

impl ReportDoc {
    /// `corrected` tells whether `metrics` come from a correction run.
    pub fn new(
        axis: Axis,
        events: &[IntersectionEvent],
        metrics: &RunMetrics,
        corrected: bool,
    ) -> Self {
        ReportDoc {
            n: metrics.n_vertices,
            k: events.len(),
            axis,
            events: events
                .iter()
                .map(|e| EventDoc {
                    edge_i: e.edge_i,
                    edge_j: e.edge_j,
                    x: e.at.x,
                    y: e.at.y,
                })
                .collect(),
            metrics: MetricsDoc {
                n_real: metrics.n_real,
                n_supp: corrected.then(|| metrics.n_supp()),
                explored: metrics.explored,
            },
        }
    }

    pub fn events(&self) -> Vec<IntersectionEvent> {
        self.events
            .iter()
            .map(|e| IntersectionEvent::new(e.edge_i, e.edge_j, Point { x: e.x, y: e.y }))
            .collect()
    }
}

pub fn write_report(
    axis: Axis,
    events: &[IntersectionEvent],
    metrics: &RunMetrics,
    corrected: bool,
) -> Result<String> {
    Ok(serde_json::to_string(&ReportDoc::new(
        axis, events, metrics, corrected,
    ))?)
}

pub fn parse_report(text: &str) -> Result<ReportDoc> {
    Ok(serde_json::from_str(text)?)
}
