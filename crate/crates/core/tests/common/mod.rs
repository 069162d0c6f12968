#![allow(dead_code)]

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rackinv::Rack;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `x ▷ y = σ(x)` for a permutation `σ`.
pub fn permutation_rack(sigma: &[usize]) -> Rack {
    let n = sigma.len();
    let rows: Vec<Vec<usize>> = (0..n).map(|x| vec![sigma[x]; n]).collect();
    Rack::from_table(&rows).unwrap()
}

/// Disjoint union in which neither part acts on the other.
pub fn disjoint_union(a: &Rack, b: &Rack) -> Rack {
    let (p, q) = (a.len(), b.len());
    let rows: Vec<Vec<usize>> = (0..p + q)
        .map(|x| {
            (0..p + q)
                .map(|y| match (x < p, y < p) {
                    (true, true) => a.op(x, y),
                    (false, false) => p + b.op(x - p, y - p),
                    _ => x,
                })
                .collect()
        })
        .collect();
    Rack::from_table(&rows).unwrap()
}

/// The same rack with elements renamed by `perm`.
pub fn relabel(r: &Rack, perm: &[usize]) -> Rack {
    let n = r.len();
    let mut rows = vec![vec![0; n]; n];
    for x in 0..n {
        for y in 0..n {
            rows[perm[x]][perm[y]] = perm[r.op(x, y)];
        }
    }
    Rack::from_table(&rows).unwrap()
}

/// Every valid (t,s)-rack on Z_m.
pub fn ts_racks(m: u64) -> Vec<Rack> {
    let mut out = Vec::new();
    for t in 0..m {
        for s in 0..m {
            if let Ok(r) = Rack::ts_rack(m, t, s) {
                out.push(r);
            }
        }
    }
    out
}

/// A deterministic family of racks with at most `max_n` elements.
pub fn small_racks(max_n: usize) -> Vec<Rack> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.push(Rack::trivial(n));
        if n >= 3 {
            out.push(Rack::dihedral(n));
        }
        out.extend(ts_racks(n as u64));
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        out.push(permutation_rack(&cycle));
    }
    for a in 1..max_n {
        for b in 1..=(max_n - a) {
            let cycle: Vec<usize> = (0..b).map(|i| (i + 1) % b).collect();
            out.push(disjoint_union(&permutation_rack(&cycle), &Rack::trivial(a)));
        }
    }
    if max_n >= 5 {
        out.push(disjoint_union(&Rack::dihedral(3), &permutation_rack(&[1, 0])));
    }
    out
}

/// `count` racks drawn from [`small_racks`] or random permutation racks,
/// each shuffled by a random relabeling.
pub fn random_racks(seed: u64, count: usize, max_n: usize) -> Vec<Rack> {
    let mut g = rng(seed);
    let pool = small_racks(max_n);
    (0..count)
        .map(|_| {
            let base = if g.gen_bool(0.25) {
                let n = g.gen_range(1..=max_n);
                let mut sigma: Vec<usize> = (0..n).collect();
                sigma.shuffle(&mut g);
                permutation_rack(&sigma)
            } else {
                pool.choose(&mut g).unwrap().clone()
            };
            let mut perm: Vec<usize> = (0..base.len()).collect();
            perm.shuffle(&mut g);
            relabel(&base, &perm)
        })
        .collect()
}

/// Invariant factors of a small integer matrix, by naive elimination on
/// `i128`; kept separate from the library's arbitrary-precision routine.
pub fn oracle_invariant_factors(mut a: Vec<Vec<i128>>) -> Vec<i128> {
    let rows = a.len();
    let cols = a.first().map_or(0, |r| r.len());
    let mut diag = Vec::new();
    let mut t = 0;
    while t < rows.min(cols) {
        // smallest nonzero entry of the remaining block
        let mut best: Option<(usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                if a[i][j] != 0 && best.map_or(true, |(bi, bj)| a[i][j].abs() < a[bi][bj].abs()) {
                    best = Some((i, j));
                }
            }
        }
        let Some((bi, bj)) = best else { break };
        a.swap(t, bi);
        for r in a.iter_mut() {
            r.swap(t, bj);
        }
        let p = a[t][t];
        let mut dirty = false;
        for i in t + 1..rows {
            let q = a[i][t] / p;
            if q != 0 {
                for j in t..cols {
                    a[i][j] -= q * a[t][j];
                }
            }
            dirty |= a[i][t] != 0;
        }
        for j in t + 1..cols {
            let q = a[t][j] / p;
            if q != 0 {
                for i in t..rows {
                    a[i][j] -= q * a[i][t];
                }
            }
            dirty |= a[t][j] != 0;
        }
        if dirty {
            continue;
        }
        // the pivot must divide the rest of the block
        if let Some(i) = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % p != 0)) {
            for j in t..cols {
                a[t][j] += a[i][j];
            }
            continue;
        }
        diag.push(p.abs());
        t += 1;
    }
    diag
}

/// Quandle homology with the degenerate tuples (some `x_i = x_{i+1}`)
/// factored out, from a boundary map written out independently.
/// Returns `(free rank, torsion factors > 1)`.
pub fn oracle_quandle_homology(r: &Rack, degree: usize) -> (usize, Vec<i128>) {
    let n = r.len();
    let tuples = |d: usize| -> Vec<Vec<usize>> {
        let mut all = vec![vec![]];
        for _ in 0..d {
            all = all
                .into_iter()
                .flat_map(|t: Vec<usize>| (0..n).map(move |x| [t.clone(), vec![x]].concat()))
                .collect();
        }
        all.into_iter().filter(|t| t.windows(2).all(|w| w[0] != w[1])).collect()
    };
    let boundary = |d: usize| -> Vec<Vec<i128>> {
        let src = tuples(d);
        let dst = tuples(d.saturating_sub(1));
        let mut m = vec![vec![0i128; src.len()]; dst.len()];
        if d <= 1 {
            return m;
        }
        for (c, t) in src.iter().enumerate() {
            for i in 1..d {
                let sign = if i % 2 == 1 { 1 } else { -1 };
                let mut omit = t.clone();
                omit.remove(i);
                let mut act: Vec<usize> = t[..i].iter().map(|&x| r.op(x, t[i])).collect();
                act.extend_from_slice(&t[i + 1..]);
                for (face, s) in [(omit, sign), (act, -sign)] {
                    if let Some(row) = dst.iter().position(|u| *u == face) {
                        m[row][c] += s;
                    }
                }
            }
        }
        m
    };
    let dim = tuples(degree).len();
    let down = oracle_invariant_factors(boundary(degree)).len();
    let up = oracle_invariant_factors(boundary(degree + 1));
    let torsion = up.iter().copied().filter(|&d| d > 1).collect();
    (dim - down - up.len(), torsion)
}
