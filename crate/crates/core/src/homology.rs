//! Rack chain complexes, their N-degenerate subcomplexes and the reduced
//! quotient complex, with homology computed by exact integer elimination.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use thiserror::Error;

use crate::linalg::{kernel_basis, rank, IntegerMatrix, Lattice};
use crate::rack::Rack;

pub const DEFAULT_SIZE_CAP: usize = 10_000_000;

/// Largest dense matrix (in entries) built for a boundary map or a set of
/// degenerate generators.
pub const DENSE_ENTRY_CAP: usize = 20_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HomologyError {
    #[error("SizeOverflow: degree {degree} needs {size} basis elements, cap is {cap}")]
    SizeOverflow { degree: usize, size: String, cap: usize },
    #[error("SizeOverflow: degree {degree} needs a {rows}x{cols} matrix, more than {DENSE_ENTRY_CAP} entries")]
    MatrixTooLarge { degree: usize, rows: usize, cols: usize },
    #[error("degree must be at least 1")]
    BadDegree,
    #[error("modulus must be at least 2")]
    BadModulus,
    #[error("unknown complex {0:?}, expected R, ND, R/ND, ND' or R/ND'")]
    UnknownComplex(String),
}

/// Which N-degenerate chains generate the subcomplex.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Degeneracy {
    /// Sums `Σ_k (…, x^{▷k}, x^{▷(k+1)}, …)`.
    Shifted,
    /// Sums `Σ_k (…, x^{▷k}, x^{▷k}, …)`.
    Diagonal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Complex {
    /// The full rack complex `C^R`.
    Rack,
    /// The N-degenerate subcomplex.
    Degenerate(Degeneracy),
    /// The quotient of `C^R` by the N-degenerate subcomplex.
    Reduced(Degeneracy),
}

impl FromStr for Complex {
    type Err = HomologyError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.replace('′', "'");
        match s.trim() {
            "R" => Ok(Complex::Rack),
            "ND" => Ok(Complex::Degenerate(Degeneracy::Shifted)),
            "ND'" => Ok(Complex::Degenerate(Degeneracy::Diagonal)),
            "R/ND" => Ok(Complex::Reduced(Degeneracy::Shifted)),
            "R/ND'" => Ok(Complex::Reduced(Degeneracy::Diagonal)),
            other => Err(HomologyError::UnknownComplex(other.to_string())),
        }
    }
}

impl fmt::Display for Complex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Complex::Rack => "R",
            Complex::Degenerate(Degeneracy::Shifted) => "ND",
            Complex::Degenerate(Degeneracy::Diagonal) => "ND'",
            Complex::Reduced(Degeneracy::Shifted) => "R/ND",
            Complex::Reduced(Degeneracy::Diagonal) => "R/ND'",
        };
        f.write_str(s)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Coefficients {
    Integers,
    Modular(u64),
}

/// `Z^free_rank ⊕ Z_{t_1} ⊕ …`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyGroup {
    pub free_rank: usize,
    pub torsion: Vec<BigInt>,
}

impl HomologyGroup {
    pub fn is_trivial(&self) -> bool {
        self.free_rank == 0 && self.torsion.is_empty()
    }
}

impl fmt::Display for HomologyGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".to_string()),
            r => parts.push(format!("Z^{r}")),
        }
        parts.extend(self.torsion.iter().map(|t| format!("Z_{t}")));
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" ⊕ "))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyReport {
    pub group: HomologyGroup,
    /// Rank of the cycle lattice (`ker ∂_n` for the full complex over Z).
    pub cycles_rank: usize,
    /// Rank of the boundary lattice (`im ∂_{n+1}` for the full complex over Z).
    pub boundaries_rank: usize,
}

/// Lexicographic basis of `C_n^R`: all `n`-tuples over `0..size`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ChainBasis {
    pub elements: usize,
    pub degree: usize,
}

impl ChainBasis {
    pub fn len(&self) -> usize {
        self.elements.pow(self.degree as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn index(&self, tuple: &[usize]) -> usize {
        debug_assert_eq!(tuple.len(), self.degree);
        tuple.iter().fold(0, |acc, &x| acc * self.elements + x)
    }

    pub fn tuple(&self, mut index: usize) -> Vec<usize> {
        let mut t = vec![0; self.degree];
        for slot in t.iter_mut().rev() {
            *slot = index % self.elements;
            index /= self.elements;
        }
        t
    }
}

/// The rack chain complex of one rack, with a cap on basis sizes.
#[derive(Debug, Clone, Copy)]
pub struct RackComplex<'a> {
    rack: &'a Rack,
    cap: usize,
}

impl<'a> RackComplex<'a> {
    pub fn new(rack: &'a Rack) -> Self {
        RackComplex { rack, cap: DEFAULT_SIZE_CAP }
    }

    pub fn with_cap(mut self, cap: usize) -> Self {
        self.cap = cap;
        self
    }

    pub fn rack(&self) -> &Rack {
        self.rack
    }

    pub fn basis(&self, degree: usize) -> Result<ChainBasis, HomologyError> {
        let n = self.rack.len();
        match n.checked_pow(degree as u32) {
            Some(size) if size <= self.cap => Ok(ChainBasis { elements: n, degree }),
            size => Err(HomologyError::SizeOverflow {
                degree,
                size: size.map_or_else(|| format!("{n}^{degree}"), |s| s.to_string()),
                cap: self.cap,
            }),
        }
    }

    /// Matrix of `∂_n : C_n → C_{n-1}` in lexicographic bases; zero for `n ≤ 1`.
    pub fn boundary_matrix(&self, degree: usize) -> Result<IntegerMatrix, HomologyError> {
        let source = self.basis(degree)?;
        if degree <= 1 {
            return Ok(IntegerMatrix::zeros(0, source.len()));
        }
        let target = self.basis(degree - 1)?;
        dense_check(degree, target.len(), source.len())?;
        let mut m = IntegerMatrix::zeros(target.len(), source.len());
        let mut face = vec![0; degree - 1];
        for col in 0..source.len() {
            let x = source.tuple(col);
            for i in 1..degree {
                // 1-based position i+1, sign (-1)^(i+1)
                let sign: i64 = if i % 2 == 1 { 1 } else { -1 };
                face.clear();
                face.extend_from_slice(&x[..i]);
                face.extend_from_slice(&x[i + 1..]);
                m.add_assign_at(target.index(&face), col, sign);
                for (j, slot) in face.iter_mut().enumerate().take(i) {
                    *slot = self.rack.op(x[j], x[i]);
                }
                m.add_assign_at(target.index(&face), col, -sign);
            }
        }
        Ok(m)
    }

    /// One generating chain per (position, element, remaining coordinates).
    /// Duplicates are kept; only the span matters.
    pub fn nd_generators(&self, degree: usize, kind: Degeneracy) -> Result<Vec<Vec<BigInt>>, HomologyError> {
        let basis = self.basis(degree)?;
        if degree < 2 {
            return Ok(Vec::new());
        }
        let n = self.rack.len();
        let rank = self.rack.rank();
        let others = ChainBasis { elements: n, degree: degree - 2 };
        dense_check(degree, (degree - 1) * n * others.len(), basis.len())?;
        let mut gens = Vec::with_capacity((degree - 1) * n * others.len());
        let mut tuple = vec![0; degree];
        for pos in 0..degree - 1 {
            for x in 0..n {
                for rest in 0..others.len() {
                    let rest = others.tuple(rest);
                    let mut v = vec![BigInt::zero(); basis.len()];
                    for k in 1..=rank {
                        let first = self.rack.power(x, k);
                        let second = match kind {
                            Degeneracy::Shifted => self.rack.power(x, k + 1),
                            Degeneracy::Diagonal => first,
                        };
                        tuple[..pos].copy_from_slice(&rest[..pos]);
                        tuple[pos] = first;
                        tuple[pos + 1] = second;
                        tuple[pos + 2..].copy_from_slice(&rest[pos..]);
                        v[basis.index(&tuple)] += 1;
                    }
                    gens.push(v);
                }
            }
        }
        Ok(gens)
    }

    /// True iff `∂_n` maps every degenerate generator of degree `n` into the
    /// integer span of the degenerate chains of degree `n - 1`.
    pub fn verify_subcomplex(&self, degree: usize, kind: Degeneracy) -> Result<bool, HomologyError> {
        if degree < 2 {
            return Err(HomologyError::BadDegree);
        }
        let boundary = self.boundary_matrix(degree)?;
        let below = Lattice::new(boundary.rows(), &self.nd_generators(degree - 1, kind)?);
        Ok(self
            .nd_generators(degree, kind)?
            .iter()
            .all(|g| below.contains(&boundary.mul_vec(g))))
    }

    pub fn homology(&self, degree: usize, complex: Complex, coeffs: Coefficients) -> Result<HomologyReport, HomologyError> {
        if degree == 0 {
            return Err(HomologyError::BadDegree);
        }
        let modulus = match coeffs {
            Coefficients::Integers => None,
            Coefficients::Modular(m) if m >= 2 => Some(m),
            Coefficients::Modular(_) => return Err(HomologyError::BadModulus),
        };
        let down = self.boundary_matrix(degree)?;
        let up = self.boundary_matrix(degree + 1)?;
        match complex {
            Complex::Rack => Ok(subquotient(&down, &up, &[], &[], modulus)),
            Complex::Reduced(kind) => {
                let sub = self.nd_generators(degree, kind)?;
                let sub_below = self.nd_generators(degree - 1, kind)?;
                Ok(subquotient(&down, &up, &sub, &sub_below, modulus))
            }
            Complex::Degenerate(kind) => {
                let lattice = |d: usize| -> Result<Lattice, HomologyError> {
                    let dim = self.basis(d)?.len();
                    Ok(Lattice::new(dim, &self.nd_generators(d, kind)?))
                };
                let below = lattice(degree - 1)?;
                let here = lattice(degree)?;
                let above = lattice(degree + 1)?;
                let down = restrict(&down, &here, &below);
                let up = restrict(&up, &above, &here);
                Ok(subquotient(&down, &up, &[], &[], modulus))
            }
        }
    }
}

fn dense_check(degree: usize, rows: usize, cols: usize) -> Result<(), HomologyError> {
    match rows.checked_mul(cols) {
        Some(e) if e <= DENSE_ENTRY_CAP => Ok(()),
        _ => Err(HomologyError::MatrixTooLarge { degree, rows, cols }),
    }
}

/// Matrix of a boundary map restricted to lattice bases of a subcomplex.
fn restrict(map: &IntegerMatrix, source: &Lattice, target: &Lattice) -> IntegerMatrix {
    let cols: Vec<Vec<BigInt>> = source
        .basis()
        .iter()
        .map(|b| {
            target
                .coordinates(&map.mul_vec(b))
                .expect("boundary of a degenerate chain is degenerate")
        })
        .collect();
    IntegerMatrix::from_columns(target.rank(), &cols)
}

/// Homology at the middle of `C_{n+1} --up--> C_n --down--> C_{n-1}` modulo
/// the sublattices spanned by `sub` (in `C_n`) and `sub_below` (in `C_{n-1}`),
/// optionally tensored with `Z_m`:
///
/// `Z = {c : down(c) ∈ span(sub_below) + m C_{n-1}}`,
/// `B = im(up) + span(sub) + m C_n`, result `Z / B`.
fn subquotient(
    down: &IntegerMatrix,
    up: &IntegerMatrix,
    sub: &[Vec<BigInt>],
    sub_below: &[Vec<BigInt>],
    modulus: Option<u64>,
) -> HomologyReport {
    let dim = down.cols();
    let below = down.rows();
    let scaled_units = |d: usize, m: u64| -> Vec<Vec<BigInt>> {
        (0..d)
            .map(|i| {
                let mut e = vec![BigInt::zero(); d];
                e[i] = BigInt::from(m);
                e
            })
            .collect()
    };

    let cycle_gens: Vec<Vec<BigInt>> = if below == 0 {
        (0..dim)
            .map(|i| {
                let mut e = vec![BigInt::zero(); dim];
                e[i] = BigInt::one();
                e
            })
            .collect()
    } else {
        let mut cols: Vec<Vec<BigInt>> = (0..dim).map(|j| down.column(j)).collect();
        cols.extend(sub_below.iter().cloned());
        if let Some(m) = modulus {
            cols.extend(scaled_units(below, m));
        }
        kernel_basis(&IntegerMatrix::from_columns(below, &cols))
            .into_iter()
            .map(|mut v| {
                v.truncate(dim);
                v
            })
            .collect()
    };
    let cycles = Lattice::new(dim, &cycle_gens);

    let mut boundary_gens: Vec<Vec<BigInt>> = (0..up.cols()).map(|j| up.column(j)).collect();
    boundary_gens.extend(sub.iter().cloned());
    if let Some(m) = modulus {
        boundary_gens.extend(scaled_units(dim, m));
    }
    let boundaries_rank = rank(&IntegerMatrix::from_columns(dim, &boundary_gens));
    let (free_rank, torsion) = cycles
        .quotient(&boundary_gens)
        .expect("boundaries lie in the cycle lattice");
    HomologyReport { group: HomologyGroup { free_rank, torsion }, cycles_rank: cycles.rank(), boundaries_rank }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::big_vec;

    fn example3() -> Rack {
        Rack::ts_rack(4, 1, 2).unwrap()
    }

    fn e(basis: ChainBasis, tuple1: &[usize]) -> usize {
        basis.index(&tuple1.iter().map(|x| x - 1).collect::<Vec<_>>())
    }

    #[test]
    fn chain_basis_is_lexicographic() {
        let b = ChainBasis { elements: 4, degree: 2 };
        assert_eq!(b.len(), 16);
        assert_eq!(b.index(&[0, 0]), 0);
        assert_eq!(b.index(&[0, 3]), 3);
        assert_eq!(b.index(&[1, 0]), 4);
        for i in 0..16 {
            assert_eq!(b.index(&b.tuple(i)), i);
        }
    }

    #[test]
    fn boundary_two_on_example3() {
        let r = example3();
        let c = RackComplex::new(&r);
        let d2 = c.boundary_matrix(2).unwrap();
        assert_eq!((d2.rows(), d2.cols()), (4, 16));
        // ∂(1,1) = (1) - (3)
        let col = d2.column(e(ChainBasis { elements: 4, degree: 2 }, &[1, 1]));
        assert_eq!(col, big_vec(&[1, 0, -1, 0]));
        assert_eq!(rank(&d2), 2);
        let d1 = c.boundary_matrix(1).unwrap();
        assert!(d1.is_zero());
        assert_eq!(d1.cols(), 4);
    }

    #[test]
    fn nd_generators_for_quandle_are_diagonal_tuples() {
        let r = Rack::dihedral(3);
        let c = RackComplex::new(&r);
        let gens = c.nd_generators(2, Degeneracy::Shifted).unwrap();
        assert_eq!(gens.len(), 3);
        for (x, g) in gens.iter().enumerate() {
            let mut expected = vec![BigInt::zero(); 9];
            expected[x * 3 + x] = BigInt::one();
            assert_eq!(g, &expected);
        }
    }

    #[test]
    fn example3_diagonal_generators() {
        let r = example3();
        let c = RackComplex::new(&r);
        let b = ChainBasis { elements: 4, degree: 2 };
        let gens = c.nd_generators(2, Degeneracy::Diagonal).unwrap();
        let mut expected = Vec::new();
        for (pairs, coeff) in [(&[[1, 1], [3, 3]][..], 1), (&[[2, 2]][..], 2), (&[[4, 4]][..], 2)] {
            let mut v = vec![BigInt::zero(); 16];
            for p in pairs {
                v[e(b, p)] += coeff;
            }
            expected.push(v);
        }
        let span = Lattice::new(16, &gens);
        let expected_span = Lattice::new(16, &expected);
        assert!(expected.iter().all(|v| span.contains(v)));
        assert!(gens.iter().all(|v| expected_span.contains(v)));
    }

    #[test]
    fn size_cap_fails_loudly() {
        let r = example3();
        let c = RackComplex::new(&r).with_cap(100);
        assert!(c.boundary_matrix(3).is_ok());
        assert!(matches!(c.boundary_matrix(4), Err(HomologyError::SizeOverflow { degree: 4, .. })));
    }

    #[test]
    fn one_point_quandle() {
        let r = Rack::trivial(1);
        let h = RackComplex::new(&r).homology(1, Complex::Rack, Coefficients::Integers).unwrap();
        assert_eq!(h.group, HomologyGroup { free_rank: 1, torsion: vec![] });
    }

    #[test]
    fn group_display() {
        let g = HomologyGroup { free_rank: 3, torsion: big_vec(&[2, 2]) };
        assert_eq!(g.to_string(), "Z^3 ⊕ Z_2 ⊕ Z_2");
        assert_eq!(HomologyGroup { free_rank: 0, torsion: vec![] }.to_string(), "0");
    }

    #[test]
    fn complex_names_round_trip() {
        for s in ["R", "ND", "R/ND", "ND'", "R/ND'"] {
            assert_eq!(s.parse::<Complex>().unwrap().to_string(), s);
        }
        assert!("X".parse::<Complex>().is_err());
    }

    #[test]
    fn modular_coefficients_follow_universal_coefficients() {
        // H_1(X; Z_m) = H_1 ⊗ Z_m since H_0 = 0 here
        let r = example3();
        let c = RackComplex::new(&r);
        let h = c.homology(1, Complex::Rack, Coefficients::Modular(4)).unwrap();
        assert_eq!(h.group.free_rank, 0);
        assert_eq!(h.group.torsion, big_vec(&[4, 4]));
    }
}
