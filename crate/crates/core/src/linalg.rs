//! Exact integer linear algebra: Smith normal form, integer kernels and
//! lattice membership, all over arbitrary-precision integers.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

/// Dense matrix of arbitrary-precision integers, row-major.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntegerMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, BigInt::one());
        }
        m
    }

    pub fn from_rows<T: Into<BigInt> + Copy>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        let mut m = Self::zeros(rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged matrix rows");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, v.into());
            }
        }
        m
    }

    /// Builds a `dim × k` matrix whose columns are the given vectors.
    pub fn from_columns(dim: usize, columns: &[Vec<BigInt>]) -> Self {
        let mut m = Self::zeros(dim, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), dim, "column length mismatch");
            for (i, v) in c.iter().enumerate() {
                m.set(i, j, v.clone());
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn add_assign_at(&mut self, i: usize, j: usize, v: i64) {
        self.data[i * self.cols + j] += v;
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.data[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                (0..self.cols)
                    .filter(|&j| !v[j].is_zero())
                    .fold(BigInt::zero(), |acc, j| acc + self.get(i, j) * &v[j])
            })
            .collect()
    }

    fn to_nested(&self) -> Vec<Vec<BigInt>> {
        self.data.chunks(self.cols.max(1)).take(self.rows).map(|r| r.to_vec()).collect()
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Invariant factors `d_1 | d_2 | ... | d_r` (all positive) and the rank `r`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SnfResult {
    pub factors: Vec<BigInt>,
    pub rank: usize,
}

pub fn smith_normal_form(m: &IntegerMatrix) -> SnfResult {
    let red = Reducer::new(m.to_nested(), m.rows, m.cols, false, false).run();
    SnfResult { rank: red.diag.len(), factors: red.diag }
}

/// Smith form together with the right transform `V` of `U M V = D`.
pub fn smith_with_right_transform(m: &IntegerMatrix) -> (SnfResult, IntegerMatrix) {
    let red = Reducer::new(m.to_nested(), m.rows, m.cols, false, true).run();
    let v = red.v.expect("right transform tracked");
    let mut vm = IntegerMatrix::zeros(m.cols, m.cols);
    for (i, row) in v.into_iter().enumerate() {
        for (j, x) in row.into_iter().enumerate() {
            vm.set(i, j, x);
        }
    }
    (SnfResult { rank: red.diag.len(), factors: red.diag }, vm)
}

pub fn rank(m: &IntegerMatrix) -> usize {
    smith_normal_form(m).rank
}

/// A basis of the integer kernel `{x : M x = 0}`. The basis spans the full
/// (saturated) kernel lattice.
pub fn kernel_basis(m: &IntegerMatrix) -> Vec<Vec<BigInt>> {
    let red = Reducer::new(m.to_nested(), m.rows, m.cols, false, true).run();
    let v = red.v.expect("right transform tracked");
    let r = red.diag.len();
    (r..m.cols).map(|j| v.iter().map(|row| row[j].clone()).collect()).collect()
}

/// A sublattice of `Z^dim` given by generators, with a Smith decomposition
/// of its generator matrix retained for exact membership tests.
#[derive(Debug, Clone)]
pub struct Lattice {
    dim: usize,
    left: Vec<Vec<BigInt>>,
    diag: Vec<BigInt>,
    basis: Vec<Vec<BigInt>>,
}

impl Lattice {
    pub fn new(dim: usize, generators: &[Vec<BigInt>]) -> Lattice {
        let g = IntegerMatrix::from_columns(dim, generators);
        let red = Reducer::new(g.to_nested(), dim, generators.len(), true, false).run();
        let left = red.u.expect("left transform tracked");
        let left_inv = red.u_inv.expect("left inverse tracked");
        let basis = red
            .diag
            .iter()
            .enumerate()
            .map(|(i, d)| left_inv.iter().map(|row| &row[i] * d).collect())
            .collect();
        Lattice { dim, left, diag: red.diag, basis }
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn rank(&self) -> usize {
        self.diag.len()
    }

    /// A basis of the lattice (columns of `U⁻¹ D`).
    pub fn basis(&self) -> &[Vec<BigInt>] {
        &self.basis
    }

    /// Coordinates of `v` in [`Lattice::basis`], or `None` if `v` is not in
    /// the lattice.
    pub fn coordinates(&self, v: &[BigInt]) -> Option<Vec<BigInt>> {
        assert_eq!(v.len(), self.dim);
        let mut coords = Vec::with_capacity(self.rank());
        for (i, row) in self.left.iter().enumerate() {
            let w = row
                .iter()
                .zip(v)
                .filter(|(_, x)| !x.is_zero())
                .fold(BigInt::zero(), |acc, (a, x)| acc + a * x);
            match self.diag.get(i) {
                Some(d) => {
                    let (q, r) = w.div_rem(d);
                    if !r.is_zero() {
                        return None;
                    }
                    coords.push(q);
                }
                None if !w.is_zero() => return None,
                None => {}
            }
        }
        Some(coords)
    }

    pub fn contains(&self, v: &[BigInt]) -> bool {
        self.coordinates(v).is_some()
    }

    /// Free rank and torsion of `self / span(sub)`. Returns `None` if some
    /// generator of `sub` lies outside `self`.
    pub fn quotient(&self, sub: &[Vec<BigInt>]) -> Option<(usize, Vec<BigInt>)> {
        let coords = sub.iter().map(|v| self.coordinates(v)).collect::<Option<Vec<_>>>()?;
        let snf = smith_normal_form(&IntegerMatrix::from_columns(self.rank(), &coords));
        let torsion = snf.factors.into_iter().filter(|d| !d.is_one()).collect();
        Some((self.rank() - snf.rank, torsion))
    }
}

struct Reduction {
    diag: Vec<BigInt>,
    u: Option<Vec<Vec<BigInt>>>,
    u_inv: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

/// In-place Smith reduction `U A V = D` with optional transform tracking.
struct Reducer {
    a: Vec<Vec<BigInt>>,
    rows: usize,
    cols: usize,
    u: Option<Vec<Vec<BigInt>>>,
    u_inv: Option<Vec<Vec<BigInt>>>,
    v: Option<Vec<Vec<BigInt>>>,
}

fn identity_rows(n: usize) -> Vec<Vec<BigInt>> {
    (0..n).map(|i| (0..n).map(|j| if i == j { BigInt::one() } else { BigInt::zero() }).collect()).collect()
}

fn axpy(target: &mut [BigInt], src: &[BigInt], c: &BigInt) {
    for (t, s) in target.iter_mut().zip(src) {
        if !s.is_zero() {
            *t += c * s;
        }
    }
}

impl Reducer {
    fn new(a: Vec<Vec<BigInt>>, rows: usize, cols: usize, track_left: bool, track_right: bool) -> Self {
        Reducer {
            a,
            rows,
            cols,
            u: track_left.then(|| identity_rows(rows)),
            u_inv: track_left.then(|| identity_rows(rows)),
            v: track_right.then(|| identity_rows(cols)),
        }
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        self.a.swap(i, j);
        if let Some(u) = &mut self.u {
            u.swap(i, j);
        }
        if let Some(ui) = &mut self.u_inv {
            for row in ui.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// row_i += c * row_j
    fn add_row(&mut self, i: usize, j: usize, c: &BigInt) {
        let (src, dst) = pair_mut(&mut self.a, j, i);
        axpy(dst, src, c);
        if let Some(u) = &mut self.u {
            let (src, dst) = pair_mut(u, j, i);
            axpy(dst, src, c);
        }
        if let Some(ui) = &mut self.u_inv {
            for row in ui.iter_mut() {
                if !row[i].is_zero() {
                    let d = c * &row[i];
                    row[j] -= d;
                }
            }
        }
    }

    fn negate_row(&mut self, i: usize) {
        for x in self.a[i].iter_mut() {
            *x = -std::mem::take(x);
        }
        if let Some(u) = &mut self.u {
            for x in u[i].iter_mut() {
                *x = -std::mem::take(x);
            }
        }
        if let Some(ui) = &mut self.u_inv {
            for row in ui.iter_mut() {
                row[i] = -std::mem::take(&mut row[i]);
            }
        }
    }

    fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for row in self.a.iter_mut() {
            row.swap(i, j);
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                row.swap(i, j);
            }
        }
    }

    /// col_i += c * col_j
    fn add_col(&mut self, i: usize, j: usize, c: &BigInt) {
        for row in self.a.iter_mut() {
            if !row[j].is_zero() {
                let d = c * &row[j];
                row[i] += d;
            }
        }
        if let Some(v) = &mut self.v {
            for row in v.iter_mut() {
                if !row[j].is_zero() {
                    let d = c * &row[j];
                    row[i] += d;
                }
            }
        }
    }

    fn min_nonzero(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for i in t..self.rows {
            for j in t..self.cols {
                let x = &self.a[i][j];
                if x.is_zero() {
                    continue;
                }
                if best.map_or(true, |(bi, bj)| x.magnitude() < self.a[bi][bj].magnitude()) {
                    if x.magnitude().is_one() {
                        return Some((i, j));
                    }
                    best = Some((i, j));
                }
            }
        }
        best
    }

    fn run(mut self) -> Reduction {
        let mut diag = Vec::new();
        let bound = self.rows.min(self.cols);
        let mut t = 0;
        while t < bound {
            let Some((pi, pj)) = self.min_nonzero(t) else { break };
            self.swap_rows(t, pi);
            self.swap_cols(t, pj);
            loop {
                let mut clean = true;
                for i in t + 1..self.rows {
                    if self.a[i][t].is_zero() {
                        continue;
                    }
                    let q = self.a[i][t].div_floor(&self.a[t][t]);
                    self.add_row(i, t, &-q);
                    clean &= self.a[i][t].is_zero();
                }
                for j in t + 1..self.cols {
                    if self.a[t][j].is_zero() {
                        continue;
                    }
                    let q = self.a[t][j].div_floor(&self.a[t][t]);
                    self.add_col(j, t, &-q);
                    clean &= self.a[t][j].is_zero();
                }
                if clean {
                    let pivot = self.a[t][t].clone();
                    let offender = (t + 1..self.rows)
                        .find(|&i| self.a[i][t + 1..].iter().any(|x| !x.is_multiple_of(&pivot)));
                    match offender {
                        Some(i) => {
                            self.add_row(t, i, &BigInt::one());
                            continue;
                        }
                        None => break,
                    }
                }
                // move the smallest remainder in row/column t onto the pivot
                let mut best = (t, t);
                for i in t + 1..self.rows {
                    let x = &self.a[i][t];
                    if !x.is_zero() && x.magnitude() < self.a[best.0][best.1].magnitude() {
                        best = (i, t);
                    }
                }
                for j in t + 1..self.cols {
                    let x = &self.a[t][j];
                    if !x.is_zero() && x.magnitude() < self.a[best.0][best.1].magnitude() {
                        best = (t, j);
                    }
                }
                self.swap_rows(t, best.0);
                self.swap_cols(t, best.1);
            }
            if self.a[t][t].is_negative() {
                self.negate_row(t);
            }
            diag.push(self.a[t][t].clone());
            t += 1;
        }
        Reduction { diag, u: self.u, u_inv: self.u_inv, v: self.v }
    }
}

fn pair_mut<T>(v: &mut [T], src: usize, dst: usize) -> (&T, &mut T) {
    assert_ne!(src, dst);
    if src < dst {
        let (a, b) = v.split_at_mut(dst);
        (&a[src], &mut b[0])
    } else {
        let (a, b) = v.split_at_mut(src);
        (&b[0], &mut a[dst])
    }
}

/// Converts a small-integer vector into `BigInt`s.
pub fn big_vec(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}
