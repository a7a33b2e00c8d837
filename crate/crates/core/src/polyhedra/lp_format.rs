//! CPLEX LP text export.

use std::fmt::Write;

use num_traits::{ToPrimitive, Zero};

use super::system::LinearSystem;
use crate::error::Result;
use crate::numeric::Rational;

/// Writes `max objective · x` over the system. Rows are scaled to primitive
/// integer form so the file is exact; objective coefficients that are not
/// integers are written as decimals.
pub fn to_cplex_lp(system: &LinearSystem, objective: &[Rational]) -> Result<String> {
    let space = system.space;
    let mut out = String::new();
    writeln!(out, "Maximize").unwrap();
    let mut obj = String::new();
    for (i, c) in objective.iter().enumerate() {
        if !c.is_zero() {
            push_term(&mut obj, &number(c), &space.var_name(i));
        }
    }
    if obj.is_empty() {
        obj.push_str(" 0 x0");
    }
    writeln!(out, " obj:{obj}").unwrap();
    writeln!(out, "Subject To").unwrap();
    for r in &system.rows {
        let (a, b) = r.integer_form()?;
        let mut line = String::new();
        for (i, c) in a.iter().enumerate() {
            if *c != 0 {
                push_term(&mut line, &c.to_string(), &space.var_name(i));
            }
        }
        if line.is_empty() {
            line.push_str(" 0 x0");
        }
        writeln!(out, " {}:{line} <= {b}", r.label).unwrap();
    }
    writeln!(out, "Bounds").unwrap();
    for i in 0..system.dim() {
        let name = space.var_name(i);
        match &system.upper[i] {
            Some(u) => writeln!(out, " {} <= {name} <= {}", number(&system.lower[i]), number(u)).unwrap(),
            None => writeln!(out, " {name} >= {}", number(&system.lower[i])).unwrap(),
        }
    }
    let ints: Vec<String> = (0..system.dim())
        .filter(|&i| system.integer[i])
        .map(|i| space.var_name(i))
        .collect();
    if !ints.is_empty() {
        writeln!(out, "General").unwrap();
        for chunk in ints.chunks(10) {
            writeln!(out, " {}", chunk.join(" ")).unwrap();
        }
    }
    writeln!(out, "End").unwrap();
    Ok(out)
}

fn number(v: &Rational) -> String {
    if v.is_integer() {
        v.to_integer().to_string()
    } else {
        format!("{}", v.to_f64().unwrap_or(f64::NAN))
    }
}

fn push_term(line: &mut String, coeff: &str, name: &str) {
    match coeff.strip_prefix('-') {
        Some(mag) => write!(line, " - {} {name}", mag),
        None => write!(line, " + {coeff} {name}"),
    }
    .unwrap();
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::numeric::rat;
    use crate::polyhedra::builders::build_e;

    #[test]
    fn single_edge_export() {
        let g = Graph::path(2);
        let text = to_cplex_lp(&build_e(&g), &[rat(1), rat(1), rat(0)]).unwrap();
        assert!(text.starts_with("Maximize\n obj: + 1 x0 + 1 x1\nSubject To\n"));
        assert!(text.contains(" edge_e0_{0,1}: + 1 x0 + 1 x1 - 1 y0 <= 1\n"));
        assert!(text.contains(" 0 <= y0 <= 1\n"));
        assert!(text.contains("General\n x0 x1 y0\nEnd\n"));
    }
}
