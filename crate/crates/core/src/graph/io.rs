//! Text formats: the line-oriented edge list and graph6.
//!
//! Edge list:
//!
//! ```text
//! c optional comment
//! n 3
//! e 0 1
//! e 1 1
//! ```
//!
//! `e u u` is a loop. Endpoints are 0-based.

use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

const GRAPH6_MAX_ORDER: usize = 68_719_476_735;

pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut order: Option<usize> = None;
    let mut g = Graph::null();
    for (lineno, raw) in text.lines().enumerate() {
        let line = raw.trim();
        let lineno = lineno + 1;
        if line.is_empty() || line == "c" || line.starts_with("c ") || line.starts_with("c\t") {
            continue;
        }
        let mut fields = line.split_whitespace();
        let tag = fields.next().unwrap_or_default();
        let nums: Vec<usize> = fields
            .map(|f| {
                f.parse::<usize>()
                    .map_err(|_| Error::Parse(format!("line {lineno}: bad number {f:?}")))
            })
            .collect::<Result<_>>()?;
        match (tag, nums.as_slice()) {
            ("n", &[n]) => {
                if order.is_some() {
                    return Err(Error::Parse(format!("line {lineno}: repeated `n` line")));
                }
                order = Some(n);
                g = Graph::empty(n);
            }
            ("e", &[u, v]) => {
                let n = order
                    .ok_or_else(|| Error::Parse(format!("line {lineno}: edge before `n` line")))?;
                if u >= n || v >= n {
                    return Err(Error::Parse(format!(
                        "line {lineno}: endpoint out of range for order {n}"
                    )));
                }
                if g.is_adjacent(u, v) {
                    return Err(Error::Parse(format!(
                        "line {lineno}: duplicate edge {u} {v}"
                    )));
                }
                g.set_edge(u, v, true);
            }
            _ => {
                return Err(Error::Parse(format!(
                    "line {lineno}: unrecognized {line:?}"
                )))
            }
        }
    }
    if order.is_none() {
        return Err(Error::Parse("missing `n` line".into()));
    }
    Ok(g)
}

pub fn write_edge_list(g: &Graph) -> String {
    let mut s = format!("n {}\n", g.order());
    for (u, v) in g.adjacencies() {
        let _ = writeln!(s, "e {u} {v}");
    }
    s
}

fn decode_byte(b: u8) -> Result<u64> {
    if (63..=126).contains(&b) {
        Ok(u64::from(b - 63))
    } else {
        Err(Error::Parse(format!("graph6: byte {b:#04x} out of range")))
    }
}

/// Decodes one graph6 string. A leading `>>graph6<<` header and
/// surrounding whitespace are ignored.
pub fn parse_graph6(text: &str) -> Result<Graph> {
    let s = text.trim();
    let s = s.strip_prefix(">>graph6<<").unwrap_or(s).as_bytes();
    if s.is_empty() {
        return Err(Error::Parse("graph6: empty input".into()));
    }
    let (n, body) = if s[0] != 126 {
        (decode_byte(s[0])? as usize, &s[1..])
    } else if s.len() >= 2 && s[1] != 126 {
        if s.len() < 4 {
            return Err(Error::Parse("graph6: truncated order header".into()));
        }
        let mut n = 0u64;
        for &b in &s[1..4] {
            n = (n << 6) | decode_byte(b)?;
        }
        (n as usize, &s[4..])
    } else {
        if s.len() < 8 {
            return Err(Error::Parse("graph6: truncated order header".into()));
        }
        let mut n = 0u64;
        for &b in &s[2..8] {
            n = (n << 6) | decode_byte(b)?;
        }
        (n as usize, &s[8..])
    };
    let bits = n * n.saturating_sub(1) / 2;
    let need = bits.div_ceil(6);
    if body.len() < need {
        return Err(Error::Parse(format!(
            "graph6: expected {need} data bytes, found {}",
            body.len()
        )));
    }
    if body.len() > need {
        return Err(Error::Parse("graph6: trailing data".into()));
    }
    let data: Vec<u64> = body
        .iter()
        .map(|&b| decode_byte(b))
        .collect::<Result<_>>()?;
    let mut g = Graph::empty(n);
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            if (data[k / 6] >> (5 - k % 6)) & 1 == 1 {
                g.set_edge(i, j, true);
            }
            k += 1;
        }
    }
    Ok(g)
}

pub(crate) fn to_graph6(g: &Graph) -> Result<String> {
    if !g.is_loopless() {
        return Err(Error::LoopsNotAllowed("graph6"));
    }
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for shift in [12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else if n <= GRAPH6_MAX_ORDER {
        out.extend([126, 126]);
        for shift in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> shift) & 63) as u8 + 63);
        }
    } else {
        return Err(Error::OrderTooLarge {
            what: "graph6",
            order: n,
            max: GRAPH6_MAX_ORDER,
        });
    }
    let mut acc = 0u8;
    let mut k = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | u8::from(g.is_adjacent(i, j));
            k += 1;
            if k == 6 {
                out.push(acc + 63);
                acc = 0;
                k = 0;
            }
        }
    }
    if k > 0 {
        out.push((acc << (6 - k)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}
