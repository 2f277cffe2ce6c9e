use super::{Graph, GraphError};

const HEADER: &str = ">>graph6<<";

fn parse_err(offset: usize, message: impl Into<String>) -> GraphError {
    GraphError::Parse {
        offset,
        message: message.into(),
    }
}

fn sixbits(bytes: &[u8], offset: usize) -> Result<u8, GraphError> {
    let b = *bytes
        .get(offset)
        .ok_or_else(|| parse_err(offset, "unexpected end of input"))?;
    if !(63..=126).contains(&b) {
        return Err(parse_err(
            offset,
            format!("byte {b:#04x} outside the graph6 range 63..=126"),
        ));
    }
    Ok(b - 63)
}

/// Decodes one graph6 string. Surrounding whitespace and the optional
/// `>>graph6<<` header are ignored.
pub fn parse_graph6(text: &str) -> Result<Graph, GraphError> {
    let lead = text.len() - text.trim_start().len();
    let mut body = text.trim();
    let mut base = lead;
    if let Some(rest) = body.strip_prefix(HEADER) {
        body = rest;
        base += HEADER.len();
    }
    let bytes = body.as_bytes();
    if bytes.is_empty() {
        return Err(parse_err(base, "empty graph6 string"));
    }
    let (n, mut pos) = if bytes[0] != 126 {
        (sixbits(bytes, 0).map_err(|e| shift(e, base))? as usize, 1)
    } else if bytes.get(1) != Some(&126) {
        let mut n = 0usize;
        for i in 1..4 {
            n = (n << 6) | sixbits(bytes, i).map_err(|e| shift(e, base))? as usize;
        }
        (n, 4)
    } else {
        let mut n = 0usize;
        for i in 2..8 {
            n = (n << 6) | sixbits(bytes, i).map_err(|e| shift(e, base))? as usize;
        }
        (n, 8)
    };
    let nbits = n * n.saturating_sub(1) / 2;
    let nbytes = nbits.div_ceil(6);
    let mut g = Graph::new(n);
    let mut bit = 0usize;
    let mut current = 0u8;
    let (mut i, mut j) = (0usize, 1usize);
    for k in 0..nbytes * 6 {
        if k % 6 == 0 {
            current = sixbits(bytes, pos).map_err(|e| shift(e, base))?;
            pos += 1;
        }
        let set = (current >> (5 - k % 6)) & 1 == 1;
        if bit < nbits {
            if set {
                g.set_multiplicity(i, j, 1).unwrap();
            }
            i += 1;
            if i == j {
                i = 0;
                j += 1;
            }
            bit += 1;
        } else if set {
            return Err(parse_err(base + pos - 1, "nonzero padding bits"));
        }
    }
    if pos != bytes.len() {
        return Err(parse_err(base + pos, "trailing bytes after the adjacency field"));
    }
    Ok(g)
}

fn shift(e: GraphError, by: usize) -> GraphError {
    match e {
        GraphError::Parse { offset, message } => GraphError::Parse {
            offset: offset + by,
            message,
        },
        other => other,
    }
}

/// Encodes a simple graph as graph6 (no header).
pub fn emit_graph6(g: &Graph) -> Result<String, GraphError> {
    g.require_simple()?;
    let n = g.order();
    let mut out: Vec<u8> = Vec::new();
    if n <= 62 {
        out.push(n as u8 + 63);
    } else if n <= 258_047 {
        out.push(126);
        for s in [12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    } else {
        out.push(126);
        out.push(126);
        for s in [30, 24, 18, 12, 6, 0] {
            out.push(((n >> s) & 63) as u8 + 63);
        }
    }
    let mut acc = 0u8;
    let mut filled = 0;
    for j in 1..n {
        for i in 0..j {
            acc = (acc << 1) | g.has_edge(i, j) as u8;
            filled += 1;
            if filled == 6 {
                out.push(acc + 63);
                acc = 0;
                filled = 0;
            }
        }
    }
    if filled > 0 {
        out.push((acc << (6 - filled)) + 63);
    }
    Ok(String::from_utf8(out).expect("graph6 bytes are ASCII"))
}

/// Parses the edge-list format: first line `n`, then one `u v` pair per line
/// with 0-based vertices. Blank lines and `#` comments are skipped; repeated
/// pairs accumulate multiplicity.
pub fn parse_edge_list(text: &str) -> Result<Graph, GraphError> {
    let mut g: Option<Graph> = None;
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        let here = offset;
        offset += line.len();
        let content = line.split('#').next().unwrap().trim();
        if content.is_empty() {
            continue;
        }
        let fields: Vec<&str> = content.split_whitespace().collect();
        match &mut g {
            None => {
                if fields.len() != 1 {
                    return Err(parse_err(here, "expected the vertex count on the first line"));
                }
                let n = fields[0]
                    .parse::<usize>()
                    .map_err(|_| parse_err(here, format!("bad vertex count {:?}", fields[0])))?;
                g = Some(Graph::new(n));
            }
            Some(graph) => {
                if fields.len() != 2 {
                    return Err(parse_err(here, "expected `u v`"));
                }
                let u = fields[0]
                    .parse::<usize>()
                    .map_err(|_| parse_err(here, format!("bad vertex {:?}", fields[0])))?;
                let v = fields[1]
                    .parse::<usize>()
                    .map_err(|_| parse_err(here, format!("bad vertex {:?}", fields[1])))?;
                graph.add_edge(u, v).map_err(|e| parse_err(here, e.to_string()))?;
            }
        }
    }
    g.ok_or_else(|| parse_err(0, "missing vertex count"))
}
