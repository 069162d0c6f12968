//! Rack 2-cochains with `Z_m` coefficients, the cocycle and N-degenerate
//! vanishing conditions, and the module of reduced 2-cocycles.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::linalg::{IntegerMatrix, SnfResult};
use crate::rack::Rack;
use crate::zmod::HowellBasis;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CochainError {
    #[error("ParseError at {position}: {message}")]
    Parse { position: usize, message: String },
    #[error("IndexOutOfRange: ({a}, {b}) outside 1..={n}")]
    IndexOutOfRange { a: i64, b: i64, n: usize },
    #[error("modulus must be at least 2, found {0}")]
    BadModulus(u64),
}

/// A function `X × X → Z_m`, stored row-major with 0-based indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Cochain2 {
    modulus: u64,
    n: usize,
    values: Vec<u64>,
}

impl Cochain2 {
    pub fn zero(n: usize, modulus: u64) -> Self {
        Cochain2 { modulus, n, values: vec![0; n * n] }
    }

    /// Builds a cochain from an `n × n` table; entries are reduced mod `m`.
    pub fn from_table(modulus: u64, table: &[Vec<i64>]) -> Self {
        let n = table.len();
        let mut c = Cochain2::zero(n, modulus);
        for (x, row) in table.iter().enumerate() {
            assert_eq!(row.len(), n, "cochain table must be square");
            for (y, &v) in row.iter().enumerate() {
                c.values[x * n + y] = v.rem_euclid(modulus as i64) as u64;
            }
        }
        c
    }

    pub(crate) fn from_flat(n: usize, modulus: u64, values: Vec<u64>) -> Self {
        debug_assert_eq!(values.len(), n * n);
        Cochain2 { modulus, n, values: values.into_iter().map(|v| v % modulus).collect() }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn value(&self, x: usize, y: usize) -> u64 {
        self.values[x * self.n + y]
    }

    pub fn set(&mut self, x: usize, y: usize, v: i64) {
        self.values[x * self.n + y] = v.rem_euclid(self.modulus as i64) as u64;
    }

    pub fn values(&self) -> &[u64] {
        &self.values
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0)
    }

    pub fn add(&self, other: &Cochain2) -> Cochain2 {
        assert_eq!((self.n, self.modulus), (other.n, other.modulus));
        let values = self.values.iter().zip(&other.values).map(|(a, b)| (a + b) % self.modulus).collect();
        Cochain2 { values, ..*self }
    }

    pub fn scale(&self, k: u64) -> Cochain2 {
        let values = self.values.iter().map(|&a| (a as u128 * k as u128 % self.modulus as u128) as u64).collect();
        Cochain2 { values, ..*self }
    }

    /// `n` lines of `n` residues.
    pub fn to_table_string(&self) -> String {
        self.values
            .chunks(self.n)
            .map(|r| r.iter().map(u64::to_string).collect::<Vec<_>>().join(" "))
            .collect::<Vec<_>>()
            .join("\n")
    }

    /// Parses either an `n × n` table or a χ-expression such as
    /// `chi(1,3) + 2*(chi(1,1) + chi(2,2))`.
    pub fn parse(text: &str, modulus: u64, n: usize) -> Result<Cochain2, CochainError> {
        if modulus < 2 {
            return Err(CochainError::BadModulus(modulus));
        }
        let trimmed = text.trim();
        let looks_like_table = !trimmed.is_empty()
            && trimmed.chars().all(|c| c.is_ascii_digit() || c.is_whitespace() || c == '-');
        if looks_like_table {
            parse_table(trimmed, modulus, n)
        } else {
            let mut c = Cochain2::zero(n, modulus);
            ExprParser::new(trimmed, &mut c).parse()?;
            Ok(c)
        }
    }

    /// Parses the cocycle file format: `mod m`, then either `n` table rows
    /// or one line `expr: <χ-expression>`. `#` starts a comment.
    pub fn parse_file(text: &str, n: usize) -> Result<Cochain2, CochainError> {
        let body: Vec<&str> = text
            .lines()
            .map(|l| l.split('#').next().unwrap_or("").trim())
            .filter(|l| !l.is_empty())
            .collect();
        let header = body.first().ok_or(CochainError::Parse { position: 0, message: "empty cocycle file".into() })?;
        let modulus = header
            .strip_prefix("mod")
            .and_then(|m| m.trim().parse::<u64>().ok())
            .ok_or_else(|| CochainError::Parse { position: 0, message: format!("expected `mod m`, found {header:?}") })?;
        let rest = &body[1..];
        match rest.first().and_then(|l| l.strip_prefix("expr:")) {
            Some(expr) => {
                let mut joined = expr.to_string();
                for l in &rest[1..] {
                    joined.push(' ');
                    joined.push_str(l);
                }
                let mut c = Cochain2::zero(n, modulus);
                if modulus < 2 {
                    return Err(CochainError::BadModulus(modulus));
                }
                ExprParser::new(&joined, &mut c).parse()?;
                Ok(c)
            }
            None => Cochain2::parse(&rest.join("\n"), modulus, n),
        }
    }

    /// Writes the cocycle file format with a χ-expression body.
    pub fn to_file_string(&self) -> String {
        format!("mod {}\nexpr: {}\n", self.modulus, self)
    }
}

/// χ-notation grouped by coefficient, e.g. `chi(1,3) + 2*(chi(1,1) + chi(2,2))`.
impl fmt::Display for Cochain2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut groups: BTreeMap<u64, Vec<String>> = BTreeMap::new();
        for x in 0..self.n {
            for y in 0..self.n {
                let v = self.value(x, y);
                if v != 0 {
                    groups.entry(v).or_default().push(format!("chi({},{})", x + 1, y + 1));
                }
            }
        }
        if groups.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = groups
            .into_iter()
            .map(|(c, terms)| match (c, terms.len()) {
                (1, _) => terms.join(" + "),
                (_, 1) => format!("{c}*{}", terms[0]),
                _ => format!("{c}*({})", terms.join(" + ")),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

fn parse_table(text: &str, modulus: u64, n: usize) -> Result<Cochain2, CochainError> {
    let mut table = Vec::new();
    let mut offset = 0;
    for line in text.lines() {
        if line.trim().is_empty() {
            offset += line.len() + 1;
            continue;
        }
        let row = line
            .split_whitespace()
            .map(|t| t.parse::<i64>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| CochainError::Parse { position: offset, message: e.to_string() })?;
        if row.len() != n {
            return Err(CochainError::Parse { position: offset, message: format!("expected {n} entries, found {}", row.len()) });
        }
        table.push(row);
        offset += line.len() + 1;
    }
    if table.len() != n {
        return Err(CochainError::Parse { position: offset, message: format!("expected {n} rows, found {}", table.len()) });
    }
    Ok(Cochain2::from_table(modulus, &table))
}

/// Recursive-descent parser for χ-expressions:
///
/// ```text
/// expr   := ['+'|'-'] term (('+'|'-') term)*
/// term   := [int ['*']] factor | int
/// factor := 'chi' ['_'] ('(' | '{') int ',' int (')' | '}') | '(' expr ')'
/// ```
struct ExprParser<'a> {
    src: &'a str,
    pos: usize,
    target: &'a mut Cochain2,
}

impl<'a> ExprParser<'a> {
    fn new(src: &'a str, target: &'a mut Cochain2) -> Self {
        ExprParser { src, pos: 0, target }
    }

    fn parse(&mut self) -> Result<(), CochainError> {
        self.skip_ws();
        if self.pos == self.src.len() {
            return Ok(());
        }
        self.expr(1)?;
        self.skip_ws();
        if self.pos != self.src.len() {
            return Err(self.error("unexpected trailing input"));
        }
        Ok(())
    }

    fn error(&self, message: &str) -> CochainError {
        CochainError::Parse { position: self.pos, message: message.to_string() }
    }

    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if c.is_whitespace() {
                self.pos += c.len_utf8();
            } else {
                break;
            }
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn eat(&mut self, c: char) -> bool {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += c.len_utf8();
            true
        } else {
            false
        }
    }

    fn expect(&mut self, options: &[char]) -> Result<(), CochainError> {
        if options.iter().any(|&c| self.eat(c)) {
            Ok(())
        } else {
            Err(self.error(&format!("expected one of {options:?}")))
        }
    }

    fn integer(&mut self) -> Option<i64> {
        self.skip_ws();
        let start = self.pos;
        while matches!(self.peek(), Some(c) if c.is_ascii_digit()) {
            self.pos += 1;
        }
        self.src[start..self.pos].parse().ok()
    }

    fn expr(&mut self, scale: i64) -> Result<(), CochainError> {
        let mut sign = if self.eat('-') {
            -1
        } else {
            self.eat('+');
            1
        };
        loop {
            self.term(scale * sign)?;
            if self.eat('+') {
                sign = 1;
            } else if self.eat('-') {
                sign = -1;
            } else {
                return Ok(());
            }
        }
    }

    fn term(&mut self, scale: i64) -> Result<(), CochainError> {
        let coeff = self.integer();
        let had_star = self.eat('*');
        self.skip_ws();
        let at_factor = self.src[self.pos..].starts_with("chi")
            || self.src[self.pos..].starts_with('χ')
            || self.peek() == Some('(');
        match (coeff, at_factor) {
            (Some(c), false) if !had_star => Err(self.error(&format!("bare constant {c} is not a cochain"))),
            (_, false) => Err(self.error("expected chi(a,b) or a parenthesised group")),
            (c, true) => self.factor(scale.wrapping_mul(c.unwrap_or(1))),
        }
    }

    fn factor(&mut self, scale: i64) -> Result<(), CochainError> {
        self.skip_ws();
        if self.eat('(') {
            self.expr(scale)?;
            return self.expect(&[')']);
        }
        if self.src[self.pos..].starts_with("chi") {
            self.pos += 3;
        } else if self.src[self.pos..].starts_with('χ') {
            self.pos += 'χ'.len_utf8();
        } else {
            return Err(self.error("expected chi"));
        }
        self.eat('_');
        self.expect(&['(', '{'])?;
        let a = self.integer().ok_or_else(|| self.error("expected index"))?;
        self.expect(&[','])?;
        let b = self.integer().ok_or_else(|| self.error("expected index"))?;
        self.expect(&[')', '}'])?;
        let n = self.target.n;
        if a < 1 || b < 1 || a as usize > n || b as usize > n {
            return Err(CochainError::IndexOutOfRange { a, b, n });
        }
        let (x, y) = (a as usize - 1, b as usize - 1);
        let m = self.target.modulus as i64;
        let cur = self.target.value(x, y) as i64;
        self.target.set(x, y, cur + scale.rem_euclid(m));
        Ok(())
    }
}

/// `φ(a,c) − φ(a▷b,c) − φ(a,b) + φ(a▷c,b▷c) ≡ 0` for all `a, b, c`.
pub fn is_cocycle(rack: &Rack, phi: &Cochain2) -> bool {
    first_cocycle_violation(rack, phi).is_none()
}

/// The first triple `(a, b, c)` violating the cocycle identity, if any.
pub fn first_cocycle_violation(rack: &Rack, phi: &Cochain2) -> Option<(usize, usize, usize)> {
    assert_eq!(rack.len(), phi.n, "cochain size does not match rack");
    let m = phi.modulus;
    let n = rack.len();
    for a in 0..n {
        for b in 0..n {
            let ab = rack.op(a, b);
            for c in 0..n {
                let lhs = phi.value(a, c) + phi.value(rack.op(a, c), rack.op(b, c));
                let rhs = phi.value(ab, c) + phi.value(a, b);
                if lhs % m != rhs % m {
                    return Some((a, b, c));
                }
            }
        }
    }
    None
}

/// `Σ_{k=1}^{N} φ(π^k x, π^{k+1} x) ≡ 0` for every `x`.
pub fn is_nd_vanishing(rack: &Rack, phi: &Cochain2) -> bool {
    assert_eq!(rack.len(), phi.n, "cochain size does not match rack");
    (0..rack.len()).all(|x| nd_sum(rack, phi, x) == 0)
}

fn nd_sum(rack: &Rack, phi: &Cochain2, x: usize) -> u64 {
    (1..=rack.rank())
        .map(|k| phi.value(rack.power(x, k), rack.power(x, k + 1)))
        .fold(0, |acc, v| (acc + v) % phi.modulus)
}

pub fn is_reduced(rack: &Rack, phi: &Cochain2) -> bool {
    is_cocycle(rack, phi) && is_nd_vanishing(rack, phi)
}

/// `(δψ)(x, y) = ψ(x) − ψ(x ▷ y)`.
pub fn coboundary(rack: &Rack, psi: &[i64], modulus: u64) -> Cochain2 {
    let n = rack.len();
    assert_eq!(psi.len(), n);
    let mut c = Cochain2::zero(n, modulus);
    for x in 0..n {
        for y in 0..n {
            c.set(x, y, psi[x] - psi[rack.op(x, y)]);
        }
    }
    c
}

/// Integer constraint matrix of the reduced-cocycle system: one row per
/// triple `(a,b,c)` and one row per element for the degenerate sums.
/// Columns index `φ(x,y)` at `x·n + y`.
pub fn reduced_cocycle_constraints(rack: &Rack) -> IntegerMatrix {
    let n = rack.len();
    let mut m = IntegerMatrix::zeros(n * n * n + n, n * n);
    let mut row = 0;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                m.add_assign_at(row, a * n + c, 1);
                m.add_assign_at(row, rack.op(a, b) * n + c, -1);
                m.add_assign_at(row, a * n + b, -1);
                m.add_assign_at(row, rack.op(a, c) * n + rack.op(b, c), 1);
                row += 1;
            }
        }
    }
    for x in 0..n {
        for k in 1..=rack.rank() {
            m.add_assign_at(row, rack.power(x, k) * n + rack.power(x, k + 1), 1);
        }
        row += 1;
    }
    m
}

/// The module of reduced 2-cocycles over `Z_m` and its coboundary submodule.
#[derive(Debug, Clone)]
pub struct CocycleBasis {
    modulus: u64,
    n: usize,
    cocycles: HowellBasis,
    coboundaries: HowellBasis,
    /// Invariant factors of the integer constraint matrix.
    pub constraint_snf: SnfResult,
}

impl CocycleBasis {
    /// Solves the reduced-cocycle system over `Z_m` via the Smith form of its
    /// integer constraint matrix.
    pub fn enumerate(rack: &Rack, modulus: u64) -> Result<CocycleBasis, CochainError> {
        if modulus < 2 {
            return Err(CochainError::BadModulus(modulus));
        }
        let n = rack.len();
        let constraints = reduced_cocycle_constraints(rack);
        let (snf, v) = crate::linalg::smith_with_right_transform(&constraints);
        let big_m = BigInt::from(modulus);
        let mut gens = Vec::new();
        for j in 0..n * n {
            // y_j ranges over multiples of m / gcd(d_j, m); d_j = 0 beyond the rank
            let d = snf.factors.get(j).cloned().unwrap_or_else(BigInt::zero);
            let g = d.gcd(&big_m);
            if g.is_one() {
                continue;
            }
            let step = &big_m / &g;
            let col: Vec<u64> = (0..n * n)
                .map(|i| {
                    let x = (v.get(i, j) * &step).mod_floor(&big_m);
                    x.to_u64().expect("residue fits in u64")
                })
                .collect();
            gens.push(col);
        }
        let cocycles = HowellBasis::new(modulus, n * n, &gens);

        let cob_gens: Vec<Vec<u64>> = (0..n)
            .map(|x| {
                let mut psi = vec![0i64; n];
                psi[x] = 1;
                coboundary(rack, &psi, modulus).values
            })
            .collect();
        let coboundaries = HowellBasis::new(modulus, n * n, &cob_gens);
        Ok(CocycleBasis { modulus, n, cocycles, coboundaries, constraint_snf: snf })
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// Canonical generators of the reduced-cocycle module.
    pub fn generators(&self) -> Vec<Cochain2> {
        self.to_cochains(&self.cocycles)
    }

    /// Canonical generators of the coboundary submodule.
    pub fn coboundary_generators(&self) -> Vec<Cochain2> {
        self.to_cochains(&self.coboundaries)
    }

    fn to_cochains(&self, h: &HowellBasis) -> Vec<Cochain2> {
        h.rows().iter().map(|r| Cochain2::from_flat(self.n, self.modulus, r.clone())).collect()
    }

    pub fn contains(&self, phi: &Cochain2) -> bool {
        phi.modulus == self.modulus && phi.n == self.n && self.cocycles.contains(&phi.values)
    }

    /// Canonical representative of the cohomology class of `phi`.
    pub fn representative(&self, phi: &Cochain2) -> Cochain2 {
        Cochain2::from_flat(self.n, self.modulus, self.coboundaries.reduce(&phi.values))
    }

    pub fn cocycle_count(&self) -> BigUint {
        self.cocycles.cardinality()
    }

    /// Size of the module predicted by the Smith form:
    /// `m^(free parameters) · Π gcd(d_i, m)`.
    pub fn predicted_cocycle_count(&self) -> BigUint {
        let m = BigUint::from(self.modulus);
        let free = self.n * self.n - self.constraint_snf.rank;
        let torsion: BigUint = self
            .constraint_snf
            .factors
            .iter()
            .map(|d| d.magnitude().gcd(&m))
            .product();
        m.pow(free as u32) * torsion
    }

    pub fn coboundary_count(&self) -> BigUint {
        self.coboundaries.cardinality()
    }

    /// Number of cohomology classes of reduced cocycles.
    pub fn class_count(&self) -> BigUint {
        self.cocycle_count() / self.coboundary_count()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn example3() -> Rack {
        Rack::ts_rack(4, 1, 2).unwrap()
    }

    #[test]
    fn parse_expression_and_table() {
        let c = Cochain2::parse("5*chi(1,1)", 4, 2).unwrap();
        assert_eq!(c.value(0, 0), 1);
        assert!(Cochain2::parse("", 4, 3).unwrap().is_zero());
        let t = Cochain2::parse("1 2\n3 -1", 4, 2).unwrap();
        assert_eq!(t.values(), &[1, 2, 3, 3]);
        let g = Cochain2::parse("chi(1,2) + 2(chi(2,1) - chi(1,2)) + χ_{2,2}", 5, 2).unwrap();
        assert_eq!(g.values(), &[0, 4, 2, 1]);
    }

    #[test]
    fn parse_errors() {
        assert!(matches!(Cochain2::parse("chi(1,3)", 4, 2), Err(CochainError::IndexOutOfRange { a: 1, b: 3, .. })));
        assert!(matches!(Cochain2::parse("chi(1,", 4, 2), Err(CochainError::Parse { .. })));
        assert!(matches!(Cochain2::parse("3 + chi(1,1)", 4, 2), Err(CochainError::Parse { .. })));
        assert!(matches!(Cochain2::parse("1 2\n3", 4, 2), Err(CochainError::Parse { .. })));
    }

    #[test]
    fn display_round_trips() {
        let c = Cochain2::parse("chi(1,3)+chi(3,2) + 2*(chi(1,1)+chi(2,2)) + 3*chi(2,3)", 4, 3).unwrap();
        assert_eq!(c.to_string(), "chi(1,3) + chi(3,2) + 2*(chi(1,1) + chi(2,2)) + 3*chi(2,3)");
        assert_eq!(Cochain2::parse(&c.to_string(), 4, 3).unwrap(), c);
        assert_eq!(Cochain2::parse_file(&c.to_file_string(), 3).unwrap(), c);
        assert_eq!(Cochain2::zero(2, 3).to_string(), "0");
    }

    #[test]
    fn cocycle_checks_on_example3() {
        let r = example3();
        assert!(is_cocycle(&r, &Cochain2::zero(4, 4)));
        assert!(is_nd_vanishing(&r, &Cochain2::zero(4, 4)));
        let chi12 = Cochain2::parse("chi(1,2)", 4, 4).unwrap();
        // (a,b,c) = (1,1,2): φ(1,2) − φ(3,2) − φ(1,1) + φ(1,1) = 1
        assert_eq!(first_cocycle_violation(&r, &chi12), Some((0, 0, 1)));
        assert!(!is_cocycle(&r, &chi12));
    }

    #[test]
    fn coboundary_examples() {
        let r = example3();
        assert!(coboundary(&r, &[3, 3, 3, 3], 4).is_zero());
        let d = coboundary(&r, &[1, 0, 0, 0], 4);
        assert_eq!(d.value(0, 1), 0);
        assert_eq!(d.value(0, 0), 1);
        assert!(is_cocycle(&r, &d));
        assert!(is_nd_vanishing(&r, &d));
    }

    #[test]
    fn quandle_nd_condition_is_diagonal() {
        let r = Rack::dihedral(3);
        let mut phi = Cochain2::zero(3, 3);
        phi.set(1, 2, 1);
        assert!(is_nd_vanishing(&r, &phi));
        phi.set(1, 1, 1);
        assert!(!is_nd_vanishing(&r, &phi));
    }

    #[test]
    fn trivial_two_element_quandle_has_two_free_parameters() {
        let r = Rack::trivial(2);
        let basis = CocycleBasis::enumerate(&r, 2).unwrap();
        assert_eq!(basis.cocycle_count(), BigUint::from(4u32));
        assert_eq!(basis.predicted_cocycle_count(), BigUint::from(4u32));
        // brute force over all 16 cochains
        let mut count = 0;
        for bits in 0..16u64 {
            let vals: Vec<u64> = (0..4).map(|i| (bits >> i) & 1).collect();
            let phi = Cochain2::from_flat(2, 2, vals);
            assert_eq!(is_reduced(&r, &phi), basis.contains(&phi));
            count += is_reduced(&r, &phi) as u32;
        }
        assert_eq!(count, 4);
    }

    #[test]
    fn example3_generators_are_reduced() {
        let r = example3();
        let basis = CocycleBasis::enumerate(&r, 4).unwrap();
        assert!(!basis.generators().is_empty());
        for g in basis.generators() {
            assert!(is_reduced(&r, &g), "{g}");
        }
        assert_eq!(basis.cocycle_count(), basis.predicted_cocycle_count());
        for c in basis.coboundary_generators() {
            assert!(basis.contains(&c));
            assert!(basis.representative(&c).is_zero());
        }
    }
}
