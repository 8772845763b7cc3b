use std::fmt::Write;

use super::{CnfFormula, Lit, SatError};

fn err(line: usize, msg: impl Into<String>) -> SatError {
    SatError::Parse {
        line,
        msg: msg.into(),
    }
}

/// Reads DIMACS CNF: `c` comment lines, one `p cnf <vars> <clauses>` header,
/// then zero-terminated clauses (which may span lines). A `%` line ends the
/// input, as in the SATLIB benchmark files.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, SatError> {
    let mut header: Option<(usize, usize, usize)> = None;
    let mut clauses: Vec<(usize, Vec<Lit>)> = Vec::new();
    let mut current: Vec<Lit> = Vec::new();
    let mut current_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        if line.starts_with('%') {
            break;
        }
        if line.starts_with('p') {
            if header.is_some() {
                return Err(err(line_no, "duplicate header"));
            }
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
                return Err(err(line_no, format!("malformed header {line:?}")));
            }
            let vars = fields[2]
                .parse()
                .map_err(|_| err(line_no, format!("bad variable count {:?}", fields[2])))?;
            let n_clauses = fields[3]
                .parse()
                .map_err(|_| err(line_no, format!("bad clause count {:?}", fields[3])))?;
            header = Some((vars, n_clauses, line_no));
            continue;
        }
        let Some((num_vars, _, _)) = header else {
            return Err(err(line_no, "clause before header"));
        };
        for tok in line.split_whitespace() {
            let v: i64 = tok
                .parse()
                .map_err(|_| err(line_no, format!("bad literal {tok:?}")))?;
            if v == 0 {
                if current.is_empty() {
                    return Err(err(line_no, "empty clause"));
                }
                clauses.push((current_line, std::mem::take(&mut current)));
                continue;
            }
            if v.unsigned_abs() as usize > num_vars {
                return Err(err(line_no, format!("literal {v} out of range 1..={num_vars}")));
            }
            if current.is_empty() {
                current_line = line_no;
            }
            let lit = Lit::new(v as i32);
            if current.iter().any(|l| l.var() == lit.var()) {
                return Err(err(line_no, format!("variable {} repeated in clause", lit.var())));
            }
            current.push(lit);
        }
    }

    let Some((num_vars, n_clauses, header_line)) = header else {
        return Err(err(0, "missing header"));
    };
    if !current.is_empty() {
        return Err(err(current_line, "clause not terminated by 0"));
    }
    if clauses.len() != n_clauses {
        return Err(err(
            header_line,
            format!("header declares {n_clauses} clauses, found {}", clauses.len()),
        ));
    }
    CnfFormula::new(num_vars, clauses.into_iter().map(|(_, c)| c).collect())
        .map_err(|e| err(header_line, e.to_string()))
}

pub fn render_dimacs(f: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", f.num_vars(), f.num_clauses());
    for c in f.clauses() {
        for l in c {
            write!(out, "{} ", l.to_i32()).unwrap();
        }
        out.push_str("0\n");
    }
    out
}
