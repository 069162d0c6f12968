//! Row spans over `Z_m` for composite `m`, kept in Howell form so that
//! membership and canonical reduction are exact.

use num_integer::Integer;

/// Extended gcd on non-negative inputs: `(g, s, t)` with `s a + t b = g`.
fn xgcd(a: i128, b: i128) -> (i128, i128, i128) {
    let e = a.extended_gcd(&b);
    (e.gcd, e.x, e.y)
}

fn unit_normalizer(a: u64, m: u64) -> u64 {
    // smallest unit u with u * a = gcd(a, m) mod m
    let g = a.gcd(&m);
    (1..m.max(2))
        .find(|&u| u.gcd(&m) == 1 && (u as u128 * a as u128 % m as u128) as u64 == g % m)
        .unwrap_or(1)
}

/// A submodule of `Z_m^len` in Howell form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HowellBasis {
    modulus: u64,
    len: usize,
    rows: Vec<Vec<u64>>,
    pivots: Vec<usize>,
}

impl HowellBasis {
    pub fn new(modulus: u64, len: usize, generators: &[Vec<u64>]) -> HowellBasis {
        assert!(modulus >= 1);
        let m = modulus as i128;
        let mut a: Vec<Vec<i128>> = generators
            .iter()
            .map(|g| {
                assert_eq!(g.len(), len);
                g.iter().map(|&x| (x % modulus) as i128).collect()
            })
            .collect();
        let mut rows: Vec<Vec<i128>> = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..len {
            // fold every remaining row into a single pivot row for this column
            let mut pivot: Option<Vec<i128>> = None;
            let mut rest = Vec::with_capacity(a.len());
            for mut r in a.drain(..) {
                if r[col] == 0 {
                    if r.iter().any(|&x| x != 0) {
                        rest.push(r);
                    }
                    continue;
                }
                match pivot.take() {
                    None => pivot = Some(r),
                    Some(p) => {
                        let (g, s, t) = xgcd(p[col], r[col]);
                        let (pa, ra) = (p[col] / g, r[col] / g);
                        let new_p: Vec<i128> =
                            p.iter().zip(&r).map(|(x, y)| (s * x + t * y).rem_euclid(m)).collect();
                        for (x, pv) in r.iter_mut().zip(&p) {
                            *x = (ra * pv - pa * *x).rem_euclid(m);
                        }
                        if r.iter().any(|&x| x != 0) {
                            rest.push(r);
                        }
                        pivot = Some(new_p);
                    }
                }
            }
            a = rest;
            let Some(mut p) = pivot else { continue };
            if p[col] == 0 {
                if p.iter().any(|&x| x != 0) {
                    a.push(p);
                }
                continue;
            }
            let u = unit_normalizer(p[col] as u64, modulus) as i128;
            for x in p.iter_mut() {
                *x = (*x * u).rem_euclid(m);
            }
            let pv = p[col];
            for prev in rows.iter_mut() {
                let q = prev[col].div_euclid(pv);
                if q != 0 {
                    for (x, y) in prev.iter_mut().zip(&p) {
                        *x = (*x - q * y).rem_euclid(m);
                    }
                }
            }
            // the annihilator multiple of the pivot row joins later columns
            let ann: Vec<i128> = p.iter().map(|&x| (x * (m / pv)).rem_euclid(m)).collect();
            if ann.iter().any(|&x| x != 0) {
                a.push(ann);
            }
            rows.push(p);
            pivots.push(col);
        }
        HowellBasis {
            modulus,
            len,
            rows: rows.into_iter().map(|r| r.into_iter().map(|x| x as u64).collect()).collect(),
            pivots,
        }
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn rows(&self) -> &[Vec<u64>] {
        &self.rows
    }

    pub fn is_zero(&self) -> bool {
        self.rows.is_empty()
    }

    /// Canonical representative of `v` modulo the span.
    pub fn reduce(&self, v: &[u64]) -> Vec<u64> {
        let m = self.modulus as i128;
        let mut w: Vec<i128> = v.iter().map(|&x| (x % self.modulus) as i128).collect();
        for (row, &c) in self.rows.iter().zip(&self.pivots) {
            let q = w[c].div_euclid(row[c] as i128);
            if q != 0 {
                for (x, &y) in w.iter_mut().zip(row) {
                    *x = (*x - q * y as i128).rem_euclid(m);
                }
            }
        }
        w.into_iter().map(|x| x as u64).collect()
    }

    pub fn contains(&self, v: &[u64]) -> bool {
        self.reduce(v).iter().all(|&x| x == 0)
    }

    /// Number of elements of the submodule, `Π m / pivot`.
    pub fn cardinality(&self) -> num_bigint::BigUint {
        self.rows
            .iter()
            .zip(&self.pivots)
            .map(|(r, &c)| num_bigint::BigUint::from(self.modulus / r[c]))
            .product()
    }

    pub fn len(&self) -> usize {
        self.len
    }
}
