//! Well-known-text I/O for `POLYGON`, `MULTIPOLYGON` and their `EMPTY` forms.
//!
//! Parsing is whitespace tolerant and accepts rings with or without the
//! repeated closing vertex. Emission never repeats the closing vertex and
//! prints coordinates in shortest round-trip form, so `parse(emit(s)) == s`.

use crate::error::{Error, Result};
use crate::geom::Point;
use crate::shape::{PolygonWithHoles, Ring, Shape};

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn err<T>(&self, message: impl Into<String>) -> Result<T> {
        Err(Error::Syntax { position: self.pos, message: message.into() })
    }

    fn skip_ws(&mut self) {
        let rest = &self.src[self.pos..];
        self.pos += rest.len() - rest.trim_start().len();
    }

    fn peek(&mut self) -> Option<char> {
        self.skip_ws();
        self.src[self.pos..].chars().next()
    }

    fn expect(&mut self, c: char) -> Result<()> {
        match self.peek() {
            Some(x) if x == c => {
                self.pos += c.len_utf8();
                Ok(())
            }
            Some(x) => self.err(format!("expected '{c}', found '{x}'")),
            None => self.err(format!("expected '{c}', found end of input")),
        }
    }

    fn keyword(&mut self) -> String {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest.find(|c: char| !c.is_ascii_alphabetic()).unwrap_or(rest.len());
        self.pos += len;
        rest[..len].to_ascii_uppercase()
    }

    fn number(&mut self) -> Result<f64> {
        self.skip_ws();
        let rest = &self.src[self.pos..];
        let len = rest
            .find(|c: char| !(c.is_ascii_digit() || matches!(c, '+' | '-' | '.' | 'e' | 'E')))
            .unwrap_or(rest.len());
        if len == 0 {
            return self.err("expected a number");
        }
        match rest[..len].parse::<f64>() {
            Ok(v) if v.is_finite() => {
                self.pos += len;
                Ok(v)
            }
            _ => self.err(format!("invalid number '{}'", &rest[..len])),
        }
    }

    /// `EMPTY` or a parenthesized body.
    fn is_empty_tag(&mut self) -> bool {
        let save = self.pos;
        if self.keyword() == "EMPTY" {
            true
        } else {
            self.pos = save;
            false
        }
    }

    fn ring(&mut self) -> Result<Vec<Point>> {
        self.expect('(')?;
        let mut pts = Vec::new();
        loop {
            let x = self.number()?;
            let y = self.number()?;
            pts.push(Point::new(x, y));
            match self.peek() {
                Some(',') => self.pos += 1,
                Some(')') => {
                    self.pos += 1;
                    break;
                }
                _ => return self.err("expected ',' or ')' in coordinate list"),
            }
        }
        if pts.len() > 1 && pts.first() == pts.last() {
            pts.pop();
        }
        Ok(pts)
    }

    fn polygon(&mut self) -> Result<PolygonWithHoles> {
        self.expect('(')?;
        let outer = self.ring()?;
        let mut holes = Vec::new();
        loop {
            match self.peek() {
                Some(',') => {
                    self.pos += 1;
                    holes.push(Ring::new(self.ring()?));
                }
                Some(')') => {
                    self.pos += 1;
                    break;
                }
                _ => return self.err("expected ',' or ')' after ring"),
            }
        }
        Ok(PolygonWithHoles::new(Ring::new(outer), holes))
    }

    fn geometry(&mut self) -> Result<Vec<PolygonWithHoles>> {
        let start = self.pos;
        let tag = self.keyword();
        let polys = match tag.as_str() {
            "POLYGON" => {
                if self.is_empty_tag() {
                    Vec::new()
                } else {
                    vec![self.polygon()?]
                }
            }
            "MULTIPOLYGON" => {
                if self.is_empty_tag() {
                    Vec::new()
                } else {
                    self.expect('(')?;
                    let mut polys = vec![self.polygon()?];
                    loop {
                        match self.peek() {
                            Some(',') => {
                                self.pos += 1;
                                polys.push(self.polygon()?);
                            }
                            Some(')') => {
                                self.pos += 1;
                                break;
                            }
                            _ => return self.err("expected ',' or ')' after polygon"),
                        }
                    }
                    polys
                }
            }
            _ => {
                self.pos = start;
                return self.err("expected POLYGON or MULTIPOLYGON");
            }
        };
        if self.peek().is_some() {
            return self.err("trailing characters after geometry");
        }
        Ok(polys)
    }
}

/// Parses and validates a `POLYGON` or `MULTIPOLYGON` literal.
pub fn parse_wkt(text: &str) -> Result<Shape> {
    let mut p = Parser { src: text, pos: 0 };
    let polys = p.geometry()?;
    Shape::new(polys)
}

fn fmt_coord(v: f64, out: &mut String) {
    use std::fmt::Write;
    let v = if v == 0.0 { 0.0 } else { v };
    write!(out, "{v}").expect("writing to a String cannot fail");
}

fn write_ring(ring: &Ring, out: &mut String) {
    out.push('(');
    for (i, p) in ring.vertices().iter().enumerate() {
        if i > 0 {
            out.push(',');
        }
        fmt_coord(p.x, out);
        out.push(' ');
        fmt_coord(p.y, out);
    }
    out.push(')');
}

fn write_polygon(poly: &PolygonWithHoles, out: &mut String) {
    out.push('(');
    for (i, ring) in poly.rings().enumerate() {
        if i > 0 {
            out.push(',');
        }
        write_ring(ring, out);
    }
    out.push(')');
}

/// Emits `POLYGON(...)` for one polygon, `MULTIPOLYGON(...)` for several and
/// `MULTIPOLYGON EMPTY` for the empty shape.
pub fn emit_wkt(shape: &Shape) -> String {
    let mut out = String::new();
    match shape.polygons.as_slice() {
        [] => out.push_str("MULTIPOLYGON EMPTY"),
        [poly] => {
            out.push_str("POLYGON");
            write_polygon(poly, &mut out);
        }
        polys => {
            out.push_str("MULTIPOLYGON(");
            for (i, poly) in polys.iter().enumerate() {
                if i > 0 {
                    out.push(',');
                }
                write_polygon(poly, &mut out);
            }
            out.push(')');
        }
    }
    out
}
