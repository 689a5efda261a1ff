use std::collections::BTreeMap;
use std::io::{BufRead, Write};

use num_traits::Float;

use super::{global_scale, StationaryAssignment};
use crate::error::{Error, Result};
use crate::graph::MarkedComponent;
use crate::scalar::Scalar;

/// Writes one `i j c` line per internal edge of every assignment, followed by
/// `a <value>` with the common scale of the assembled state.
pub fn write_assignments<T: Scalar, W: Write>(
    assignments: &[StationaryAssignment<T>],
    mut writer: W,
) -> Result<()> {
    let Some(first) = assignments.first() else {
        return Ok(());
    };
    for asg in assignments {
        for (&(i, j), c) in asg.coefficients() {
            writeln!(writer, "{i} {j} {c:e}")?;
        }
    }
    let a: T = global_scale(first.component().host_edges(), assignments);
    writeln!(writer, "a {a:e}")?;
    Ok(())
}

/// Reads an assignment file for the given components.
///
/// Coefficients are grouped by the component owning their edge and injected,
/// so the zero-sum constraints are re-checked. The stored `a` must agree with
/// the recomputed one to a relative `1e-12`.
pub fn read_assignments<T: Scalar, R: BufRead>(
    components: &[MarkedComponent],
    reader: R,
) -> Result<Vec<StationaryAssignment<T>>> {
    let mut per_component: Vec<BTreeMap<(usize, usize), T>> = vec![BTreeMap::new(); components.len()];
    let mut stored_a: Option<T> = None;

    for (idx, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = idx + 1;
        let trimmed = line.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        match fields.as_slice() {
            ["a", value] => {
                let a = value.parse().map_err(|_| Error::parse(lineno, format!("bad scale {value:?}")))?;
                stored_a = Some(a);
            }
            [i, j, c] => {
                let i: usize = i.parse().map_err(|_| Error::parse(lineno, format!("bad vertex {i:?}")))?;
                let j: usize = j.parse().map_err(|_| Error::parse(lineno, format!("bad vertex {j:?}")))?;
                let c: T = c.parse().map_err(|_| Error::parse(lineno, format!("bad coefficient {c:?}")))?;
                let key = (i.min(j), i.max(j));
                let owner = components
                    .iter()
                    .position(|comp| comp.internal_edges().binary_search(&key).is_ok())
                    .ok_or(Error::ForeignEdge { u: key.0, v: key.1 })?;
                if per_component[owner].insert(key, c).is_some() {
                    return Err(Error::parse(lineno, format!("edge ({}, {}) listed twice", key.0, key.1)));
                }
            }
            _ => return Err(Error::parse(lineno, "expected \"i j c\" or \"a value\"")),
        }
    }

    let assignments = components
        .iter()
        .zip(per_component)
        .map(|(comp, coefficients)| StationaryAssignment::inject(comp, coefficients))
        .collect::<Result<Vec<_>>>()?;

    if let Some(first) = components.first() {
        let expected: T = global_scale(first.host_edges(), &assignments);
        let stored = stored_a.ok_or_else(|| Error::parse(0, "missing trailing \"a <value>\" line"))?;
        if Float::abs(stored - expected) > T::lit(1e-12) * expected {
            return Err(Error::parse(0, format!("stored a = {stored:e} but coefficients give {expected:e}")));
        }
    }
    Ok(assignments)
}
