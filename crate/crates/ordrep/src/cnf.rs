//! CNF reduction of separating-filter existence, plus a small DPLL solver.
//!
//! Variable `i + 1` asserts "element `i` belongs to the filter". A formula
//! built by [`encode_separation`] is satisfiable iff an (m,n)-filter contains
//! `x` and avoids `y`, clause for clause:
//!
//! * up-closure: `¬g_a ∨ g_b` for every strict pair `a < b`,
//! * completeness: `¬g_{s_1} ∨ … ∨ ¬g_{s_k} ∨ g_z` per meet antichain,
//! * primality: `¬g_z ∨ g_{t_1} ∨ … ∨ g_{t_k}` per join antichain,
//! * units `g_x` and `¬g_y`.
//!
//! Antichain quantification matches the filter checker, so the bridge is an
//! independent oracle for the search engine. Output is byte-stable: clause
//! families are emitted in the fixed order above, each in canonical table
//! order.

use std::io::{self, Write};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::bound::BoundPair;
use crate::filter::FilterError;
use crate::poset::{Poset, PosetError, DEFAULT_ANTICHAIN_CAP};
use crate::set::ElemSet;

#[derive(Debug, Error)]
pub enum CnfError {
    #[error(transparent)]
    Filter(#[from] FilterError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error("malformed DIMACS input: {0}")]
    MalformedDimacs(String),
    #[error("malformed solver output: {0}")]
    MalformedSolverOutput(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

/// Provenance carried in the DIMACS comment header so an external solver's
/// answer can be matched back to its instance.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CnfMeta {
    pub labels: Vec<String>,
    pub pair: (String, String),
    pub bounds: BoundPair,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
    pub meta: Option<CnfMeta>,
}

impl CnfFormula {
    /// Elements assigned true in a model, as a subset of the carrier.
    pub fn decode_model(&self, model: &[bool]) -> ElemSet {
        ElemSet::from_indices(
            self.num_vars,
            (0..self.num_vars).filter(|&i| model.get(i).copied().unwrap_or(false)),
        )
    }

    pub fn dimacs_string(&self) -> String {
        let mut out = Vec::new();
        self.write_dimacs(&mut out).expect("writing to memory");
        String::from_utf8(out).expect("DIMACS is ASCII")
    }

    pub fn write_dimacs(&self, w: &mut impl Write) -> Result<(), CnfError> {
        if let Some(meta) = &self.meta {
            writeln!(
                w,
                "c separating-filter instance: x={} y={} bounds={}",
                meta.pair.0, meta.pair.1, meta.bounds
            )?;
            writeln!(w, "c variable i+1 means: element i is in the filter")?;
            writeln!(
                w,
                "c meta {}",
                serde_json::to_string(meta).expect("meta serializes")
            )?;
        }
        writeln!(w, "p cnf {} {}", self.num_vars, self.clauses.len())?;
        for clause in &self.clauses {
            for lit in clause {
                write!(w, "{lit} ")?;
            }
            writeln!(w, "0")?;
        }
        Ok(())
    }
}

/// Builds the separation formula for `x ≰ y` at the given bounds.
pub fn encode_separation(
    p: &Poset,
    x: usize,
    y: usize,
    bounds: BoundPair,
) -> Result<CnfFormula, CnfError> {
    encode_separation_with_cap(p, x, y, bounds, DEFAULT_ANTICHAIN_CAP)
}

pub fn encode_separation_with_cap(
    p: &Poset,
    x: usize,
    y: usize,
    bounds: BoundPair,
    cap: usize,
) -> Result<CnfFormula, CnfError> {
    if p.leq(x, y) {
        return Err(FilterError::NotSeparablePair {
            p: p.label(x).to_string(),
            q: p.label(y).to_string(),
        }
        .into());
    }
    let var = |i: usize| (i + 1) as i32;
    let mut clauses: Vec<Vec<i32>> = Vec::new();
    for (a, b) in p.strict_pairs() {
        clauses.push(vec![-var(a), var(b)]);
    }
    for (s, z) in p.meet_table(bounds.meets.max_subset_size(), cap)? {
        let mut c: Vec<i32> = s.iter().map(|&e| -var(e)).collect();
        c.push(var(z));
        clauses.push(c);
    }
    for (t, z) in p.join_table(bounds.joins.max_subset_size(), cap)? {
        let mut c = vec![-var(z)];
        c.extend(t.iter().map(|&e| var(e)));
        clauses.push(c);
    }
    clauses.push(vec![var(x)]);
    clauses.push(vec![-var(y)]);
    Ok(CnfFormula {
        num_vars: p.size(),
        clauses,
        meta: Some(CnfMeta {
            labels: p.labels().to_vec(),
            pair: (p.label(x).to_string(), p.label(y).to_string()),
            bounds,
        }),
    })
}

/// Parses DIMACS text produced by [`CnfFormula::write_dimacs`] (or any
/// standard CNF file); a `c meta` comment line is restored into `meta`.
pub fn read_dimacs(text: &str) -> Result<CnfFormula, CnfError> {
    let bad = |msg: &str| CnfError::MalformedDimacs(msg.to_string());
    let mut meta = None;
    let mut header: Option<(usize, usize)> = None;
    let mut lits: Vec<i32> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(rest) = line.strip_prefix("c meta ") {
            meta = Some(
                serde_json::from_str::<CnfMeta>(rest)
                    .map_err(|e| bad(&format!("bad meta comment: {e}")))?,
            );
        } else if line.starts_with('c') {
            continue;
        } else if let Some(rest) = line.strip_prefix("p cnf") {
            let mut it = rest.split_whitespace();
            let v = it.next().and_then(|s| s.parse().ok());
            let c = it.next().and_then(|s| s.parse().ok());
            match (v, c, it.next()) {
                (Some(v), Some(c), None) => header = Some((v, c)),
                _ => return Err(bad("unreadable problem line")),
            }
        } else {
            for tok in line.split_whitespace() {
                lits.push(tok.parse().map_err(|_| bad("non-integer literal"))?);
            }
        }
    }
    let (num_vars, num_clauses) = header.ok_or_else(|| bad("missing problem line"))?;
    let mut clauses = Vec::with_capacity(num_clauses);
    let mut cur = Vec::new();
    for lit in lits {
        if lit == 0 {
            clauses.push(std::mem::take(&mut cur));
        } else {
            if lit.unsigned_abs() as usize > num_vars {
                return Err(bad("literal out of range"));
            }
            cur.push(lit);
        }
    }
    if !cur.is_empty() {
        return Err(bad("unterminated clause"));
    }
    if clauses.len() != num_clauses {
        return Err(bad("clause count differs from header"));
    }
    Ok(CnfFormula {
        num_vars,
        clauses,
        meta,
    })
}

/// Parses solver output in the standard `s`/`v` line protocol. Variables the
/// solver leaves unmentioned default to false.
pub fn read_result(text: &str) -> Result<Option<Vec<bool>>, CnfError> {
    let bad = |msg: &str| CnfError::MalformedSolverOutput(msg.to_string());
    let mut status: Option<bool> = None;
    let mut lits: Vec<i32> = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if let Some(rest) = line.strip_prefix("s ") {
            status = Some(match rest.trim() {
                "SATISFIABLE" => true,
                "UNSATISFIABLE" => false,
                other => return Err(bad(&format!("unknown status {other:?}"))),
            });
        } else if line == "v" || line.starts_with("v ") {
            for tok in line[1..].split_whitespace() {
                let lit: i32 = tok.parse().map_err(|_| bad("non-integer in v line"))?;
                if lit != 0 {
                    lits.push(lit);
                }
            }
        }
    }
    match status {
        None => Err(bad("no s line found")),
        Some(false) => Ok(None),
        Some(true) => {
            let max = lits
                .iter()
                .map(|l| l.unsigned_abs() as usize)
                .max()
                .unwrap_or(0);
            let mut model = vec![false; max];
            for lit in lits {
                model[lit.unsigned_abs() as usize - 1] = lit > 0;
            }
            Ok(Some(model))
        }
    }
}

/// DPLL with unit propagation, splitting on the lowest-index free variable,
/// false branch first. Deterministic; adequate for the instances this module
/// emits.
pub fn solve_basic(f: &CnfFormula) -> Option<Vec<bool>> {
    let mut assign: Vec<Option<bool>> = vec![None; f.num_vars];
    if dpll(&f.clauses, &mut assign) {
        Some(assign.into_iter().map(|a| a.unwrap_or(false)).collect())
    } else {
        None
    }
}

fn lit_value(lit: i32, assign: &[Option<bool>]) -> Option<bool> {
    assign[lit.unsigned_abs() as usize - 1].map(|v| v == (lit > 0))
}

fn dpll(clauses: &[Vec<i32>], assign: &mut Vec<Option<bool>>) -> bool {
    loop {
        let mut unit: Option<i32> = None;
        for clause in clauses {
            let mut satisfied = false;
            let mut free = 0;
            let mut last_free = 0;
            for &lit in clause {
                match lit_value(lit, assign) {
                    Some(true) => {
                        satisfied = true;
                        break;
                    }
                    Some(false) => {}
                    None => {
                        free += 1;
                        last_free = lit;
                    }
                }
            }
            if satisfied {
                continue;
            }
            match free {
                0 => return false,
                1 => {
                    unit = Some(last_free);
                    break;
                }
                _ => {}
            }
        }
        match unit {
            Some(lit) => assign[lit.unsigned_abs() as usize - 1] = Some(lit > 0),
            None => break,
        }
    }
    let v = match assign.iter().position(|a| a.is_none()) {
        None => return true,
        Some(v) => v,
    };
    for value in [false, true] {
        let mut trial = assign.clone();
        trial[v] = Some(value);
        if dpll(clauses, &mut trial) {
            *assign = trial;
            return true;
        }
    }
    false
}
