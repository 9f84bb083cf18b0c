//! Plain-text QUBO interchange format.
//!
//! ```text
//! p qubo <n_vars> <n_terms> <offset>
//! <i> <j> <value>
//! ...
//! ```
//!
//! Indices are 0-based with `i <= j`, lines sorted by `(i, j)`, only nonzero
//! coefficients listed, reals printed with 17 significant digits.

use std::io::{BufRead, Write};

use super::{QuboError, QuboProblem};

fn fmt_real(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn write_qubo<W: Write>(p: &QuboProblem, mut out: W) -> std::io::Result<()> {
    let terms: Vec<_> = p.terms().collect();
    writeln!(out, "p qubo {} {} {}", p.n_vars(), terms.len(), fmt_real(p.offset()))?;
    for (i, j, v) in terms {
        writeln!(out, "{i} {j} {}", fmt_real(v))?;
    }
    Ok(())
}

pub fn qubo_to_string(p: &QuboProblem) -> String {
    let mut buf = Vec::new();
    write_qubo(p, &mut buf).expect("writing to a Vec cannot fail");
    String::from_utf8(buf).expect("ascii output")
}

pub fn read_qubo<R: BufRead>(input: R) -> Result<QuboProblem, QuboError> {
    let mut lines = input
        .lines()
        .enumerate()
        .filter(|(_, l)| l.as_ref().map_or(true, |l| !l.trim().is_empty()));
    let parse_err = |line: usize, msg: &str| QuboError::Parse {
        line: line + 1,
        message: msg.to_string(),
    };

    let (hline, header) = lines.next().ok_or_else(|| parse_err(0, "missing header"))?;
    let header = header?;
    let fields: Vec<&str> = header.split_whitespace().collect();
    if fields.len() != 5 || fields[0] != "p" || fields[1] != "qubo" {
        return Err(parse_err(hline, "expected `p qubo <n_vars> <n_terms> <offset>`"));
    }
    let n: usize = fields[2].parse().map_err(|_| parse_err(hline, "bad n_vars"))?;
    let n_terms: usize = fields[3].parse().map_err(|_| parse_err(hline, "bad n_terms"))?;
    let offset: f64 = fields[4].parse().map_err(|_| parse_err(hline, "bad offset"))?;

    let mut p = QuboProblem::new(n);
    p.set_offset(offset);
    let mut count = 0;
    for (ln, line) in lines {
        let line = line?;
        let f: Vec<&str> = line.split_whitespace().collect();
        if f.len() != 3 {
            return Err(parse_err(ln, "expected `<i> <j> <value>`"));
        }
        let i: usize = f[0].parse().map_err(|_| parse_err(ln, "bad index"))?;
        let j: usize = f[1].parse().map_err(|_| parse_err(ln, "bad index"))?;
        let v: f64 = f[2].parse().map_err(|_| parse_err(ln, "bad value"))?;
        if i > j {
            return Err(parse_err(ln, "lower-triangular entry"));
        }
        if j >= n {
            return Err(QuboError::IndexOutOfBounds { i, j, n });
        }
        p.add(i, j, v);
        count += 1;
    }
    if count != n_terms {
        return Err(QuboError::Parse {
            line: 1,
            message: format!("header declares {n_terms} terms, found {count}"),
        });
    }
    Ok(p)
}
