//! Finite racks given by their operation table.
//!
//! Elements are `0..n` in code. Text formats (rack files, reports, error
//! messages) use the 1-based numbering of the usual rack matrix, so the
//! element printed as `3` is index `2`.

use std::fmt;
use std::str::FromStr;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RackError {
    #[error("rack matrix is empty")]
    Empty,
    #[error("rack matrix is not square: row {row} has {len} entries, expected {n}")]
    NotSquare { row: usize, len: usize, n: usize },
    #[error("entry at ({row}, {col}) is {value}, outside 1..={n}")]
    EntryOutOfRange { row: usize, col: usize, value: usize, n: usize },
    /// Column `j` (1-based) is not a permutation.
    #[error("ColumnNotBijective(j={})", .0 + 1)]
    ColumnNotBijective(usize),
    /// `(i ▷ j) ▷ k != (i ▷ k) ▷ (j ▷ k)` for this triple (0-based).
    #[error("SelfDistributivityFailure(i={}, j={}, k={})", .0 + 1, .1 + 1, .2 + 1)]
    SelfDistributivityFailure(usize, usize, usize),
    #[error("NotAUnit(t={t}) modulo {m}")]
    NotAUnit { t: u64, m: u64 },
    #[error("RelationViolated: s^2 != (1-t)s modulo {m} for t={t}, s={s}")]
    RelationViolated { m: u64, t: u64, s: u64 },
    #[error("modulus must be at least 1")]
    BadModulus,
    #[error("rack file line {line}: {msg}")]
    Parse { line: usize, msg: String },
}

/// A finite rack, immutable once validated.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rack {
    n: usize,
    table: Vec<usize>,
    inv_table: Vec<usize>,
    kink: Vec<usize>,
    rank: usize,
}

impl Rack {
    /// Validates a 0-based operation table, `table[i][j] = i ▷ j`.
    pub fn from_table(table: &[Vec<usize>]) -> Result<Rack, RackError> {
        let n = table.len();
        if n == 0 {
            return Err(RackError::Empty);
        }
        let mut flat = Vec::with_capacity(n * n);
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(RackError::NotSquare { row: row + 1, len: entries.len(), n });
            }
            for (col, &v) in entries.iter().enumerate() {
                if v >= n {
                    return Err(RackError::EntryOutOfRange { row: row + 1, col: col + 1, value: v + 1, n });
                }
                flat.push(v);
            }
        }
        Self::from_flat(n, flat)
    }

    /// Validates a rack matrix written with 1-based entries.
    pub fn from_matrix(matrix: &[Vec<usize>]) -> Result<Rack, RackError> {
        let n = matrix.len();
        for (row, entries) in matrix.iter().enumerate() {
            for (col, &v) in entries.iter().enumerate() {
                if v == 0 || v > n {
                    return Err(RackError::EntryOutOfRange { row: row + 1, col: col + 1, value: v, n });
                }
            }
        }
        let zero_based: Vec<Vec<usize>> =
            matrix.iter().map(|r| r.iter().map(|&v| v - 1).collect()).collect();
        Self::from_table(&zero_based)
    }

    fn from_flat(n: usize, table: Vec<usize>) -> Result<Rack, RackError> {
        let mut inv_table = vec![usize::MAX; n * n];
        for j in 0..n {
            for i in 0..n {
                let v = table[i * n + j];
                if inv_table[v * n + j] != usize::MAX {
                    return Err(RackError::ColumnNotBijective(j));
                }
                inv_table[v * n + j] = i;
            }
        }
        for i in 0..n {
            for j in 0..n {
                let ij = table[i * n + j];
                for k in 0..n {
                    let lhs = table[ij * n + k];
                    let rhs = table[table[i * n + k] * n + table[j * n + k]];
                    if lhs != rhs {
                        return Err(RackError::SelfDistributivityFailure(i, j, k));
                    }
                }
            }
        }
        let kink: Vec<usize> = (0..n).map(|i| table[i * n + i]).collect();
        let rank = permutation_order(&kink);
        Ok(Rack { n, table, inv_table, kink, rank })
    }

    /// The `(t,s)`-rack on `Z_m`, `x ▷ y = t x + s y`.
    ///
    /// Index `i` stands for the residue `i + 1`, so the last index is `0`.
    pub fn ts_rack(m: u64, t: u64, s: u64) -> Result<Rack, RackError> {
        if m == 0 {
            return Err(RackError::BadModulus);
        }
        let (t, s) = (t % m, s % m);
        if t.gcd(&m) != 1 && m != 1 {
            return Err(RackError::NotAUnit { t, m });
        }
        let one_minus_t = (1 + m - t) % m;
        if (s * s) % m != (one_minus_t * s) % m {
            return Err(RackError::RelationViolated { m, t, s });
        }
        let n = m as usize;
        let value = |i: usize| (i as u64 + 1) % m;
        let index = |v: u64| ((v + m - 1) % m) as usize;
        let table: Vec<Vec<usize>> = (0..n)
            .map(|x| (0..n).map(|y| index((t * value(x) + s * value(y)) % m)).collect())
            .collect();
        Rack::from_table(&table)
    }

    /// The trivial quandle `x ▷ y = x` on `n` elements.
    pub fn trivial(n: usize) -> Rack {
        let table: Vec<Vec<usize>> = (0..n).map(|i| vec![i; n]).collect();
        Rack::from_table(&table).expect("trivial quandle is a rack")
    }

    /// The dihedral quandle `x ▷ y = 2y - x mod n`.
    pub fn dihedral(n: usize) -> Rack {
        let table: Vec<Vec<usize>> =
            (0..n).map(|x| (0..n).map(|y| (2 * y + n - x) % n).collect()).collect();
        Rack::from_table(&table).expect("dihedral quandle is a rack")
    }

    /// Cardinality of the underlying set.
    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn op(&self, x: usize, y: usize) -> usize {
        self.table[x * self.n + y]
    }

    #[inline]
    pub fn op_inv(&self, x: usize, y: usize) -> usize {
        self.inv_table[x * self.n + y]
    }

    /// The kink map `π(x) = x ▷ x`.
    #[inline]
    pub fn kink(&self, x: usize) -> usize {
        self.kink[x]
    }

    pub fn kink_map(&self) -> &[usize] {
        &self.kink
    }

    /// Rack power `x^{▷k} = π^k(x)`.
    pub fn power(&self, x: usize, k: usize) -> usize {
        (0..k % self.rank).fold(x, |y, _| self.kink[y])
    }

    /// Rack rank: the order of the kink permutation.
    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_quandle(&self) -> bool {
        self.kink.iter().enumerate().all(|(i, &k)| i == k)
    }

    /// Operation table as 0-based rows.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(|r| r.to_vec()).collect()
    }

    /// The kink permutation in 1-based cycle notation, fixed points omitted.
    pub fn kink_cycles(&self) -> String {
        let mut seen = vec![false; self.n];
        let mut out = String::new();
        for start in 0..self.n {
            if seen[start] || self.kink[start] == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push((x + 1).to_string());
                x = self.kink[x];
            }
            out.push('(');
            out.push_str(&cycle.join(" "));
            out.push(')');
        }
        if out.is_empty() {
            out.push_str("()");
        }
        out
    }

    /// Parses the rack file format: `n`, then `n` rows of 1-based entries.
    /// `#` starts a comment.
    pub fn parse(text: &str) -> Result<Rack, RackError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
            .filter(|(_, l)| !l.is_empty());
        let (line, first) = lines.next().ok_or(RackError::Parse { line: 1, msg: "missing size line".into() })?;
        let n: usize = first
            .parse()
            .map_err(|_| RackError::Parse { line, msg: format!("expected rack size, found {first:?}") })?;
        let mut rows = Vec::with_capacity(n);
        for (line, l) in lines {
            let row = l
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<Result<Vec<_>, _>>()
                .map_err(|e| RackError::Parse { line, msg: e.to_string() })?;
            rows.push(row);
        }
        if rows.len() != n {
            return Err(RackError::Parse { line: 1, msg: format!("expected {n} rows, found {}", rows.len()) });
        }
        Rack::from_matrix(&rows)
    }
}

impl FromStr for Rack {
    type Err = RackError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Rack::parse(s)
    }
}

/// Writes the rack file format.
impl fmt::Display for Rack {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", self.n)?;
        for row in self.table.chunks(self.n) {
            let cells: Vec<String> = row.iter().map(|v| (v + 1).to_string()).collect();
            writeln!(f, "{}", cells.join(" "))?;
        }
        Ok(())
    }
}

fn permutation_order(perm: &[usize]) -> usize {
    let mut seen = vec![false; perm.len()];
    let mut order = 1usize;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut x = start;
        while !seen[x] {
            seen[x] = true;
            x = perm[x];
            len += 1;
        }
        order = order.lcm(&len);
    }
    order
}
