//! Rack colorings of link diagrams, the integral counting invariant and
//! the cocycle-enhanced polynomial invariant.

use std::fmt;

use thiserror::Error;

use crate::cocycle::{is_cocycle, is_nd_vanishing, Cochain2};
use crate::diagram::{FramingVector, LinkDiagram, Relation, Sign};
use crate::par::Execution;
use crate::rack::Rack;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum InvariantError {
    #[error("CocycleNotReduced: {0}")]
    CocycleNotReduced(String),
    #[error("cochain is {cochain}x{cochain} but the rack has {rack} elements")]
    SizeMismatch { cochain: usize, rack: usize },
    #[error("polynomial parse error: {0}")]
    Parse(String),
}

/// Arc colors, indexed by arc id.
pub type Coloring = Vec<usize>;

/// Backtracking search over arc colorings.
struct Search<'a> {
    rack: &'a Rack,
    relations: Vec<Relation>,
    /// Relations touching each arc.
    incident: Vec<Vec<usize>>,
    colors: Vec<Option<usize>>,
}

impl<'a> Search<'a> {
    fn new(rack: &'a Rack, diagram: &LinkDiagram) -> Search<'a> {
        let relations = diagram.crossing_relations();
        let mut incident = vec![Vec::new(); diagram.arc_count()];
        for (i, r) in relations.iter().enumerate() {
            for arc in [r.out, r.input, r.over] {
                if !incident[arc].contains(&i) {
                    incident[arc].push(i);
                }
            }
        }
        Search { rack, relations, incident, colors: vec![None; diagram.arc_count()] }
    }

    /// Assigns `arc := color` and propagates. Returns the assigned arcs, or
    /// `None` (with everything undone) on a contradiction.
    fn assign(&mut self, arc: usize, color: usize) -> Option<Vec<usize>> {
        let mut trail = vec![arc];
        self.colors[arc] = Some(color);
        let mut queue = vec![arc];
        while let Some(a) = queue.pop() {
            for &ri in &self.incident[a] {
                let r = self.relations[ri];
                let (inp, over, out) = (self.colors[r.input], self.colors[r.over], self.colors[r.out]);
                let Some(y) = over else { continue };
                let implied = match (inp, out) {
                    (Some(x), Some(z)) => {
                        let expect = match r.sign {
                            Sign::Positive => self.rack.op(x, y),
                            Sign::Negative => self.rack.op_inv(x, y),
                        };
                        if expect != z {
                            self.undo(&trail);
                            return None;
                        }
                        continue;
                    }
                    (Some(x), None) => (
                        r.out,
                        match r.sign {
                            Sign::Positive => self.rack.op(x, y),
                            Sign::Negative => self.rack.op_inv(x, y),
                        },
                    ),
                    (None, Some(z)) => (
                        r.input,
                        match r.sign {
                            Sign::Positive => self.rack.op_inv(z, y),
                            Sign::Negative => self.rack.op(z, y),
                        },
                    ),
                    (None, None) => continue,
                };
                let (target, value) = implied;
                match self.colors[target] {
                    Some(v) if v != value => {
                        self.undo(&trail);
                        return None;
                    }
                    Some(_) => {}
                    None => {
                        self.colors[target] = Some(value);
                        trail.push(target);
                        queue.push(target);
                    }
                }
            }
        }
        Some(trail)
    }

    fn undo(&mut self, trail: &[usize]) {
        for &a in trail {
            self.colors[a] = None;
        }
    }

    /// Unassigned arc with the most relations to already-colored arcs.
    fn pick(&self) -> Option<usize> {
        (0..self.colors.len())
            .filter(|&a| self.colors[a].is_none())
            .max_by_key(|&a| {
                let touching = self.incident[a]
                    .iter()
                    .filter(|&&ri| {
                        let r = self.relations[ri];
                        [r.out, r.input, r.over].iter().any(|&b| self.colors[b].is_some())
                    })
                    .count();
                // prefer lower ids on ties
                (touching, std::cmp::Reverse(a))
            })
    }

    fn run(&mut self, visit: &mut dyn FnMut(&[Option<usize>])) {
        let Some(arc) = self.pick() else {
            visit(&self.colors);
            return;
        };
        for color in 0..self.rack.len() {
            if let Some(trail) = self.assign(arc, color) {
                self.run(visit);
                self.undo(&trail);
            }
        }
    }
}

/// Calls `visit` once per coloring of the diagram by the rack.
pub fn for_each_coloring(diagram: &LinkDiagram, rack: &Rack, mut visit: impl FnMut(&[usize])) {
    let mut search = Search::new(rack, diagram);
    let mut buf = Vec::with_capacity(diagram.arc_count());
    search.run(&mut |colors| {
        buf.clear();
        buf.extend(colors.iter().map(|c| c.expect("complete coloring")));
        visit(&buf);
    });
}

pub fn enumerate_colorings(diagram: &LinkDiagram, rack: &Rack) -> Vec<Coloring> {
    let mut out = Vec::new();
    for_each_coloring(diagram, rack, |c| out.push(c.to_vec()));
    out.sort();
    out
}

pub fn count_colorings(diagram: &LinkDiagram, rack: &Rack) -> u64 {
    let mut n = 0;
    for_each_coloring(diagram, rack, |_| n += 1);
    n
}

/// Coloring counts of every framing in `(Z_N)^c`, in lexicographic order.
pub fn framing_counts(diagram: &LinkDiagram, rack: &Rack, exec: Execution) -> Vec<(FramingVector, u64)> {
    let framings = FramingVector::all(diagram.component_count(), rack.rank());
    exec.map(framings, |w| {
        let n = count_colorings(&diagram.add_kinks(&w), rack);
        (w, n)
    })
}

/// Total number of colorings over the framing sweep.
pub fn counting_invariant(diagram: &LinkDiagram, rack: &Rack, exec: Execution) -> u64 {
    framing_counts(diagram, rack, exec).iter().map(|(_, n)| n).sum()
}

/// Signed sum over crossings of the cocycle value, mod its modulus. A
/// positive crossing contributes `φ(inbound under color, over color)`, a
/// negative one `-φ(outbound under color, over color)`.
pub fn boltzmann_weight(diagram: &LinkDiagram, coloring: &[usize], phi: &Cochain2) -> u64 {
    let m = phi.modulus();
    diagram.crossings().iter().fold(0, |acc, c| {
        let y = coloring[c.over_arc];
        match c.sign {
            Sign::Positive => (acc + phi.value(coloring[c.in_under], y)) % m,
            Sign::Negative => (acc + m - phi.value(coloring[c.out_under], y)) % m,
        }
    })
}

/// Checks that `phi` may be used for the invariant on `rack`.
pub fn check_reduced(rack: &Rack, phi: &Cochain2) -> Result<(), InvariantError> {
    if phi.size() != rack.len() {
        return Err(InvariantError::SizeMismatch { cochain: phi.size(), rack: rack.len() });
    }
    if let Some((a, b, c)) = crate::cocycle::first_cocycle_violation(rack, phi) {
        return Err(InvariantError::CocycleNotReduced(format!(
            "cocycle condition fails at ({}, {}, {})",
            a + 1,
            b + 1,
            c + 1
        )));
    }
    debug_assert!(is_cocycle(rack, phi));
    if !is_nd_vanishing(rack, phi) {
        return Err(InvariantError::CocycleNotReduced("does not vanish on degenerate chains".into()));
    }
    Ok(())
}

/// The cocycle invariant: `u^{BW(f)}` summed over every coloring `f` of
/// every framing in the sweep.
pub fn cocycle_invariant(
    diagram: &LinkDiagram,
    rack: &Rack,
    phi: &Cochain2,
    exec: Execution,
) -> Result<InvariantPolynomial, InvariantError> {
    check_reduced(rack, phi)?;
    Ok(cocycle_invariant_unchecked(diagram, rack, phi, exec))
}

pub(crate) fn cocycle_invariant_unchecked(
    diagram: &LinkDiagram,
    rack: &Rack,
    phi: &Cochain2,
    exec: Execution,
) -> InvariantPolynomial {
    let framings = FramingVector::all(diagram.component_count(), rack.rank());
    let parts = exec.map(framings, |w| {
        let kinked = diagram.add_kinks(&w);
        let mut p = InvariantPolynomial::zero(phi.modulus());
        for_each_coloring(&kinked, rack, |f| p.add_term(boltzmann_weight(&kinked, f, phi), 1));
        p
    });
    parts.into_iter().fold(InvariantPolynomial::zero(phi.modulus()), |mut acc, p| {
        acc.merge(&p);
        acc
    })
}

/// `Σ a_g u^g` with exponents in `Z_m`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct InvariantPolynomial {
    modulus: u64,
    coeffs: Vec<u64>,
}

impl InvariantPolynomial {
    pub fn zero(modulus: u64) -> InvariantPolynomial {
        assert!(modulus >= 1);
        InvariantPolynomial { modulus, coeffs: vec![0; modulus as usize] }
    }

    pub fn from_coefficients(modulus: u64, pairs: &[(u64, u64)]) -> InvariantPolynomial {
        let mut p = InvariantPolynomial::zero(modulus);
        for &(g, a) in pairs {
            p.add_term(g, a);
        }
        p
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Coefficient of `u^g`, indexed by `g` in `0..m`.
    pub fn coefficients(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn coefficient(&self, exponent: u64) -> u64 {
        self.coeffs[(exponent % self.modulus) as usize]
    }

    pub fn add_term(&mut self, exponent: u64, count: u64) {
        self.coeffs[(exponent % self.modulus) as usize] += count;
    }

    pub fn merge(&mut self, other: &InvariantPolynomial) {
        assert_eq!(self.modulus, other.modulus);
        for (a, b) in self.coeffs.iter_mut().zip(&other.coeffs) {
            *a += b;
        }
    }

    /// Value at `u = 1`, the total number of colorings.
    pub fn eval_at_one(&self) -> u64 {
        self.coeffs.iter().sum()
    }

    /// Parses `"10 + 12u + 6u^2"`; `*` between coefficient and `u` is allowed.
    pub fn parse(text: &str, modulus: u64) -> Result<InvariantPolynomial, InvariantError> {
        let mut p = InvariantPolynomial::zero(modulus);
        let cleaned: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned == "0" {
            return Ok(p);
        }
        if cleaned.is_empty() {
            return Err(InvariantError::Parse("empty polynomial".into()));
        }
        for term in cleaned.split('+') {
            let bad = || InvariantError::Parse(format!("bad term `{term}`"));
            let (coef, power) = match term.find('u') {
                None => (term, None),
                Some(i) => (term[..i].trim_end_matches('*'), Some(&term[i + 1..])),
            };
            let a: u64 = if coef.is_empty() {
                if power.is_none() {
                    return Err(bad());
                }
                1
            } else {
                coef.parse().map_err(|_| bad())?
            };
            let g: u64 = match power {
                None => 0,
                Some("") => 1,
                Some(rest) => rest
                    .strip_prefix('^')
                    .and_then(|e| e.trim_matches(|c| c == '{' || c == '}').parse().ok())
                    .ok_or_else(bad)?,
            };
            p.add_term(g, a);
        }
        Ok(p)
    }
}

/// Exponents ascending, zero terms omitted, `u^0` elided.
impl fmt::Display for InvariantPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut terms = Vec::new();
        for (g, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            terms.push(match (g, a) {
                (0, _) => a.to_string(),
                (1, 1) => "u".to_string(),
                (1, _) => format!("{a}u"),
                (_, 1) => format!("u^{g}"),
                _ => format!("{a}u^{g}"),
            });
        }
        if terms.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&terms.join(" + "))
        }
    }
}
