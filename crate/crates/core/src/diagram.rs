//! Oriented link diagrams from signed Gauss codes.
//!
//! A code lists, per component, the passages met while travelling along
//! the component: `O<k><s>` for passing over crossing `k`, `U<k><s>` for
//! passing under it, with `s` the crossing sign (`+` or `-`). Components
//! are separated by `;` and a crossingless component is written `()`.
//! Example (left-handed trefoil): `O1-U2-O3-U1-O2-U3-`.
//!
//! Arcs run from one under-passage to the next. The arc holding the start
//! of a component's code is that component's first arc.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DiagramError {
    #[error("ParseError at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("UnpairedCrossing({0})")]
    UnpairedCrossing(u32),
    #[error("SignMismatch({0})")]
    SignMismatch(u32),
    #[error("link file line {line}: {source}")]
    Line { line: usize, source: Box<DiagramError> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }

    fn symbol(self) -> char {
        match self {
            Sign::Positive => '+',
            Sign::Negative => '-',
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Passage {
    /// Index into [`LinkDiagram::crossings`].
    pub crossing: usize,
    pub over: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Crossing {
    /// Label used in the Gauss code.
    pub label: u32,
    pub sign: Sign,
    pub over_arc: usize,
    pub in_under: usize,
    pub out_under: usize,
}

/// One fundamental-rack relation: `out = input ▷ over` at a positive
/// crossing, `out = input ▷⁻¹ over` at a negative one.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Relation {
    pub out: usize,
    pub input: usize,
    pub over: usize,
    pub sign: Sign,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinkDiagram {
    components: Vec<Vec<Passage>>,
    crossings: Vec<Crossing>,
    /// Component of each arc.
    arc_component: Vec<usize>,
    /// First arc id of each component; its arcs are contiguous.
    first_arc: Vec<usize>,
}

/// Framing vector in `(Z_N)^c`, one entry per component.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FramingVector(pub Vec<usize>);

impl FramingVector {
    /// All vectors of `(Z_modulus)^components` in lexicographic order.
    pub fn all(components: usize, modulus: usize) -> Vec<FramingVector> {
        let total = modulus.pow(components as u32);
        (0..total)
            .map(|mut idx| {
                let mut w = vec![0; components];
                for slot in w.iter_mut().rev() {
                    *slot = idx % modulus;
                    idx /= modulus;
                }
                FramingVector(w)
            })
            .collect()
    }
}

impl fmt::Display for FramingVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

struct RawPassage {
    label: u32,
    over: bool,
    sign: Sign,
}

impl LinkDiagram {
    pub fn parse(text: &str) -> Result<LinkDiagram, DiagramError> {
        if text.trim().is_empty() {
            return Err(DiagramError::Parse { position: 0, message: "empty Gauss code".into() });
        }
        let mut raw: Vec<Vec<RawPassage>> = Vec::new();
        let mut offset = 0;
        for part in text.split(';') {
            raw.push(parse_component(part, offset)?);
            offset += part.len() + 1;
        }
        Self::build(raw)
    }

    fn build(raw: Vec<Vec<RawPassage>>) -> Result<LinkDiagram, DiagramError> {
        use std::collections::BTreeMap;
        // label -> (over seen, under seen, sign)
        let mut seen: BTreeMap<u32, (u8, u8, Sign)> = BTreeMap::new();
        for p in raw.iter().flatten() {
            let entry = seen.entry(p.label).or_insert((0, 0, p.sign));
            if entry.2 != p.sign {
                return Err(DiagramError::SignMismatch(p.label));
            }
            if p.over {
                entry.0 += 1;
            } else {
                entry.1 += 1;
            }
        }
        for (&label, &(o, u, _)) in &seen {
            if o != 1 || u != 1 {
                return Err(DiagramError::UnpairedCrossing(label));
            }
        }
        // crossings are numbered in order of first appearance
        let mut index: BTreeMap<u32, usize> = BTreeMap::new();
        let mut crossings = Vec::new();
        for p in raw.iter().flatten() {
            index.entry(p.label).or_insert_with(|| {
                crossings.push(Crossing { label: p.label, sign: p.sign, over_arc: 0, in_under: 0, out_under: 0 });
                crossings.len() - 1
            });
        }
        let components: Vec<Vec<Passage>> = raw
            .iter()
            .map(|c| c.iter().map(|p| Passage { crossing: index[&p.label], over: p.over }).collect())
            .collect();
        let mut d = LinkDiagram { components, crossings, arc_component: Vec::new(), first_arc: Vec::new() };
        d.assign_arcs();
        Ok(d)
    }

    fn assign_arcs(&mut self) {
        self.arc_component.clear();
        self.first_arc.clear();
        for (k, comp) in self.components.iter().enumerate() {
            let first = self.arc_component.len();
            self.first_arc.push(first);
            let unders = comp.iter().filter(|p| !p.over).count().max(1);
            self.arc_component.extend(std::iter::repeat(k).take(unders));
            let mut seen_unders = 0;
            for p in comp {
                let here = first + seen_unders % unders;
                let c = &mut self.crossings[p.crossing];
                if p.over {
                    c.over_arc = here;
                } else {
                    seen_unders += 1;
                    c.in_under = here;
                    c.out_under = first + seen_unders % unders;
                }
            }
        }
    }

    pub fn component_count(&self) -> usize {
        self.components.len()
    }

    pub fn components(&self) -> &[Vec<Passage>] {
        &self.components
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn arc_count(&self) -> usize {
        self.arc_component.len()
    }

    pub fn arc_component(&self, arc: usize) -> usize {
        self.arc_component[arc]
    }

    /// Arc ids belonging to `component`.
    pub fn component_arcs(&self, component: usize) -> std::ops::Range<usize> {
        let end = self.first_arc.get(component + 1).copied().unwrap_or(self.arc_count());
        self.first_arc[component]..end
    }

    /// Sum of signs of the crossings whose strands both lie on `component`.
    pub fn writhe(&self, component: usize) -> i64 {
        self.crossings
            .iter()
            .filter(|c| self.arc_component[c.over_arc] == component && self.arc_component[c.in_under] == component)
            .map(|c| c.sign.value())
            .sum()
    }

    pub fn crossing_relations(&self) -> Vec<Relation> {
        self.crossings
            .iter()
            .map(|c| Relation { out: c.out_under, input: c.in_under, over: c.over_arc, sign: c.sign })
            .collect()
    }

    /// Splices `w_k` positive curls `O(new)+U(new)+` at the start of the
    /// code of component `k`, i.e. into its first arc.
    pub fn add_kinks(&self, framing: &FramingVector) -> LinkDiagram {
        assert_eq!(framing.0.len(), self.components.len(), "one framing entry per component");
        if framing.0.iter().all(|&w| w == 0) {
            return self.clone();
        }
        let mut next = self.crossings.iter().map(|c| c.label).max().unwrap_or(0);
        let mut raw: Vec<Vec<RawPassage>> = Vec::with_capacity(self.components.len());
        for (comp, &w) in self.components.iter().zip(&framing.0) {
            let mut passages = Vec::with_capacity(comp.len() + 2 * w);
            for _ in 0..w {
                next += 1;
                passages.push(RawPassage { label: next, over: true, sign: Sign::Positive });
                passages.push(RawPassage { label: next, over: false, sign: Sign::Positive });
            }
            passages.extend(comp.iter().map(|p| {
                let c = &self.crossings[p.crossing];
                RawPassage { label: c.label, over: p.over, sign: c.sign }
            }));
            raw.push(passages);
        }
        Self::build(raw).expect("splicing curls keeps a valid code")
    }

    /// The same diagram with component `k`'s code cyclically rotated.
    pub fn rotate_component(&self, component: usize, shift: usize) -> LinkDiagram {
        let mut raw = self.raw();
        let len = raw[component].len();
        if len > 0 {
            raw[component].rotate_left(shift % len);
        }
        Self::build(raw).expect("rotation keeps a valid code")
    }

    /// The same diagram with the orientation of component `k` reversed.
    pub fn reverse_component(&self, component: usize) -> LinkDiagram {
        let mut raw = self.raw();
        raw[component].reverse();
        // reversing one strand of a crossing flips its sign; a self-crossing
        // has both strands reversed and keeps it
        let on_component: std::collections::HashMap<u32, usize> = raw[component]
            .iter()
            .fold(std::collections::HashMap::new(), |mut acc, p| {
                *acc.entry(p.label).or_insert(0) += 1;
                acc
            });
        for p in raw.iter_mut().flatten() {
            if on_component.get(&p.label) == Some(&1) {
                p.sign = match p.sign {
                    Sign::Positive => Sign::Negative,
                    Sign::Negative => Sign::Positive,
                };
            }
        }
        Self::build(raw).expect("reversal keeps a valid code")
    }

    /// Mirror image: every crossing changes sign and over/under swap.
    pub fn mirror(&self) -> LinkDiagram {
        let mut raw = self.raw();
        for p in raw.iter_mut().flatten() {
            p.over = !p.over;
            p.sign = match p.sign {
                Sign::Positive => Sign::Negative,
                Sign::Negative => Sign::Positive,
            };
        }
        Self::build(raw).expect("mirror keeps a valid code")
    }

    fn raw(&self) -> Vec<Vec<RawPassage>> {
        self.components
            .iter()
            .map(|comp| {
                comp.iter()
                    .map(|p| {
                        let c = &self.crossings[p.crossing];
                        RawPassage { label: c.label, over: p.over, sign: c.sign }
                    })
                    .collect()
            })
            .collect()
    }
}

fn parse_component(part: &str, offset: usize) -> Result<Vec<RawPassage>, DiagramError> {
    let trimmed = part.trim();
    if trimmed == "()" {
        return Ok(Vec::new());
    }
    if trimmed.is_empty() {
        return Err(DiagramError::Parse { position: offset, message: "empty component (write `()` for a crossingless one)".into() });
    }
    let bytes = part.as_bytes();
    let mut out = Vec::new();
    let mut i = 0;
    let err = |i: usize, message: &str| DiagramError::Parse { position: offset + i, message: message.to_string() };
    while i < bytes.len() {
        let c = bytes[i];
        if c.is_ascii_whitespace() || c == b',' {
            i += 1;
            continue;
        }
        let over = match c {
            b'O' | b'o' => true,
            b'U' | b'u' => false,
            _ => return Err(err(i, "expected O or U")),
        };
        i += 1;
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let label: u32 = part[start..i].parse().map_err(|_| err(start, "expected crossing number"))?;
        let sign = match bytes.get(i) {
            Some(b'+') => Sign::Positive,
            Some(b'-') => Sign::Negative,
            _ => return Err(err(i, "expected sign + or -")),
        };
        i += 1;
        out.push(RawPassage { label, over, sign });
    }
    Ok(out)
}

impl FromStr for LinkDiagram {
    type Err = DiagramError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        LinkDiagram::parse(s)
    }
}

/// Writes the signed Gauss code.
impl fmt::Display for LinkDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, comp) in self.components.iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            if comp.is_empty() {
                f.write_str("()")?;
            }
            for p in comp {
                let c = &self.crossings[p.crossing];
                write!(f, "{}{}{}", if p.over { 'O' } else { 'U' }, c.label, c.sign.symbol())?;
            }
        }
        Ok(())
    }
}

/// A named diagram from a link file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NamedDiagram {
    pub name: String,
    pub diagram: LinkDiagram,
}

/// Parses a link file: one `name : gauss-code` per line, `#` comments.
pub fn parse_link_file(text: &str) -> Result<Vec<NamedDiagram>, DiagramError> {
    let mut out = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let wrap = |e: DiagramError| DiagramError::Line { line: i + 1, source: Box::new(e) };
        let (name, code) = line
            .split_once(':')
            .ok_or_else(|| wrap(DiagramError::Parse { position: 0, message: "expected `name : code`".into() }))?;
        let diagram = LinkDiagram::parse(code).map_err(wrap)?;
        out.push(NamedDiagram { name: name.trim().to_string(), diagram });
    }
    Ok(out)
}
