mod common;

use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;
use rackinv::bundled::{self, TableExample};
use rackinv::cocycle::{coboundary, is_cocycle, is_nd_vanishing, CocycleBasis};
use rackinv::linalg::rank;
use rackinv::*;

#[test]
fn derived_rack_identities() {
    for r in common::small_racks(5) {
        let n = r.len();
        for x in 0..n {
            for y in 0..n {
                assert_eq!(r.op_inv(r.op(x, y), y), x);
                for z in 0..n {
                    assert_eq!(r.op_inv(r.op_inv(x, y), z), r.op_inv(r.op_inv(x, z), r.op_inv(y, z)));
                    assert_eq!(r.op_inv(r.op(x, y), z), r.op(r.op_inv(x, z), r.op_inv(y, z)));
                    assert_eq!(r.op(r.op_inv(x, y), z), r.op_inv(r.op(x, z), r.op(y, z)));
                }
                // acting by x ▷ x is acting by x
                assert_eq!(r.op(y, r.kink(x)), r.op(y, x));
            }
            assert_eq!(r.power(x, r.rank()), x);
        }
    }
}

#[test]
fn boundary_squares_to_zero_and_rank_nullity() {
    for r in common::random_racks(1, 20, 4) {
        let c = RackComplex::new(&r);
        for n in 2..=4 {
            let d = c.boundary_matrix(n).unwrap();
            assert!(c.boundary_matrix(n - 1).unwrap().mul(&d).is_zero());
            let kernel = rackinv::linalg::kernel_basis(&d).len();
            assert_eq!(kernel + rank(&d), r.len().pow(n as u32));
        }
    }
}

#[test]
fn degenerate_chains_are_subcomplexes() {
    for r in common::small_racks(4) {
        let c = RackComplex::new(&r);
        let top = if r.len() <= 3 { 4 } else { 3 };
        for n in 2..=top {
            for kind in [Degeneracy::Shifted, Degeneracy::Diagonal] {
                assert!(c.verify_subcomplex(n, kind).unwrap(), "{:?} degree {n} {kind:?}", r.rows());
            }
        }
    }
}

#[test]
fn both_degeneracies_give_isomorphic_quotients() {
    for r in common::small_racks(4) {
        let c = RackComplex::new(&r);
        for n in [1, 2] {
            for coeffs in [Coefficients::Integers, Coefficients::Modular(4)] {
                let a = c.homology(n, Complex::Reduced(Degeneracy::Shifted), coeffs).unwrap().group;
                let b = c.homology(n, Complex::Reduced(Degeneracy::Diagonal), coeffs).unwrap().group;
                assert_eq!(a, b, "{:?} degree {n}", r.rows());
            }
        }
    }
}

#[test]
fn quandle_homology_matches_brute_force() {
    let cases: Vec<(Rack, usize)> = vec![
        (Rack::dihedral(3), 3),
        (Rack::dihedral(4), 2),
        (Rack::dihedral(5), 2),
        (Rack::trivial(2), 3),
        (Rack::ts_rack(5, 2, 4).unwrap(), 2),
    ];
    for (r, top) in cases {
        assert!(r.is_quandle());
        let c = RackComplex::new(&r);
        for n in 1..=top {
            let h = c.homology(n, Complex::Reduced(Degeneracy::Shifted), Coefficients::Integers).unwrap().group;
            let (free, torsion) = common::oracle_quandle_homology(&r, n);
            let torsion: Vec<BigInt> = torsion.into_iter().map(BigInt::from).collect();
            assert_eq!((h.free_rank, h.torsion.clone()), (free, torsion), "{:?} degree {n}", r.rows());
        }
    }
    // the three-element dihedral quandle
    let r3 = Rack::dihedral(3);
    let c = RackComplex::new(&r3);
    let h = |n| c.homology(n, Complex::Reduced(Degeneracy::Shifted), Coefficients::Integers).unwrap().group.to_string();
    assert_eq!((h(1), h(2), h(3)), ("Z".to_string(), "0".to_string(), "Z_3".to_string()));
}

/// All reduced 2-cocycles, by checking every cochain.
fn brute_force_cocycles(r: &Rack, m: u64) -> Vec<Cochain2> {
    let n = r.len();
    let total = (m as usize).pow((n * n) as u32);
    (0..total)
        .filter_map(|mut idx| {
            let mut phi = Cochain2::zero(n, m);
            for x in 0..n {
                for y in 0..n {
                    phi.set(x, y, (idx % m as usize) as i64);
                    idx /= m as usize;
                }
            }
            (is_cocycle(r, &phi) && is_nd_vanishing(r, &phi)).then_some(phi)
        })
        .collect()
}

#[test]
fn cocycle_module_matches_brute_force() {
    let mut racks = common::small_racks(3);
    racks.push(Rack::dihedral(3));
    for r in racks {
        for m in [2u64, 3, 4] {
            if (m as usize).pow((r.len() * r.len()) as u32) > 300_000 {
                continue;
            }
            let basis = CocycleBasis::enumerate(&r, m).unwrap();
            let all = brute_force_cocycles(&r, m);
            assert_eq!(basis.cocycle_count(), all.len().into(), "{:?} mod {m}", r.rows());
            assert_eq!(basis.predicted_cocycle_count(), basis.cocycle_count());
            assert!(all.iter().all(|phi| basis.contains(phi)));
            // coboundaries: images of every 1-cochain
            let mut cobs = std::collections::BTreeSet::new();
            let n = r.len();
            for mut idx in 0..(m as usize).pow(n as u32) {
                let psi: Vec<i64> = (0..n)
                    .map(|_| {
                        let v = idx % m as usize;
                        idx /= m as usize;
                        v as i64
                    })
                    .collect();
                cobs.insert(coboundary(&r, &psi, m).values().to_vec());
            }
            assert_eq!(basis.coboundary_count(), cobs.len().into());
            // representatives are constant on classes
            for phi in all.iter().take(20) {
                let rep = basis.representative(phi);
                for g in basis.coboundary_generators() {
                    assert_eq!(basis.representative(&phi.add(&g)), rep);
                }
            }
        }
    }
}

#[test]
fn every_cocycle_agrees_on_the_diagonal_and_its_kink() {
    for r in common::small_racks(6) {
        for m in [2, 3, 4] {
            let basis = CocycleBasis::enumerate(&r, m).unwrap();
            for phi in basis.generators() {
                assert!(is_cocycle(&r, &phi) && is_nd_vanishing(&r, &phi));
                for x in 0..r.len() {
                    assert_eq!(phi.value(x, x), phi.value(x, r.kink(x)));
                }
            }
        }
    }
}

#[test]
fn bundled_cocycles_lie_in_enumerated_modules() {
    for ex in bundled::TABLE_EXAMPLES {
        let (r, phi) = (ex.rack(), ex.cocycle());
        let basis = CocycleBasis::enumerate(&r, phi.modulus()).unwrap();
        assert!(basis.contains(&phi), "{}", ex.name);
    }
}

#[test]
fn reidemeister_weight_identities() {
    for ex in bundled::TABLE_EXAMPLES {
        let r = ex.rack();
        let basis = CocycleBasis::enumerate(&r, ex.cocycle().modulus()).unwrap();
        let m = basis.modulus();
        for phi in basis.generators().into_iter().chain([ex.cocycle()]) {
            let n = r.len();
            for x in 0..n {
                for y in 0..n {
                    // R2: a positive then a negative crossing under the same strand
                    let out = r.op(x, y);
                    assert_eq!((phi.value(x, y) + m - phi.value(r.op_inv(out, y), y)) % m, 0);
                    for z in 0..n {
                        // R3 with all positive crossings
                        let left = phi.value(x, y) + phi.value(r.op(x, y), z) + phi.value(y, z);
                        let right = phi.value(y, z) + phi.value(x, z) + phi.value(r.op(x, z), r.op(y, z));
                        assert_eq!(left % m, right % m);
                    }
                }
            }
        }
    }
}

#[test]
fn cohomologous_cocycles_give_equal_invariants() {
    let links: Vec<_> = bundled::all_links()
        .into_iter()
        .filter(|l| ["3_1", "5_2", "8_18", "L2a1", "L6a4"].contains(&l.name.as_str()))
        .collect();
    let mut g = common::rng(5);
    for ex in bundled::TABLE_EXAMPLES {
        let (r, phi) = (ex.rack(), ex.cocycle());
        let m = phi.modulus();
        for _ in 0..10 {
            let psi: Vec<i64> = (0..r.len()).map(|_| g.gen_range(0..m as i64)).collect();
            let shifted = phi.add(&coboundary(&r, &psi, m));
            for l in &links {
                assert_eq!(
                    cocycle_invariant(&l.diagram, &r, &phi, Execution::Sequential),
                    cocycle_invariant(&l.diagram, &r, &shifted, Execution::Sequential),
                    "{} {}",
                    ex.name,
                    l.name
                );
            }
        }
    }
}

#[test]
fn invariant_at_one_is_the_counting_invariant() {
    for ex in bundled::TABLE_EXAMPLES {
        let (r, phi) = (ex.rack(), ex.cocycle());
        for l in bundled::all_links() {
            let p = cocycle_invariant(&l.diagram, &r, &phi, Execution::Sequential).unwrap();
            assert_eq!(p.eval_at_one(), counting_invariant(&l.diagram, &r, Execution::Sequential));
        }
    }
}

#[test]
fn quandle_sweep_has_one_framing() {
    let r = Rack::dihedral(3);
    for l in bundled::knots() {
        let counts = framing_counts(&l.diagram, &r, Execution::Sequential);
        assert_eq!(counts.len(), 1);
        // Fox colorings: 2·(over) ≡ (in) + (out) mod 3 at every crossing
        let d = &l.diagram;
        let rel = d.crossing_relations();
        let arcs = d.arc_count();
        let brute = (0..3usize.pow(arcs as u32))
            .filter(|&idx| {
                let f: Vec<usize> = (0..arcs).map(|a| idx / 3usize.pow(a as u32) % 3).collect();
                rel.iter().all(|x| (f[x.input] + f[x.out]) % 3 == 2 * f[x.over] % 3)
            })
            .count() as u64;
        assert_eq!(counts[0].1, brute, "{}", l.name);
    }
}

#[test]
fn independent_diagrams_agree() {
    let main = bundled::all_links();
    let alternates = bundled::alternate_diagrams();
    let distinct_knots: std::collections::BTreeSet<_> =
        alternates.iter().filter(|a| !a.name.starts_with('L')).map(|a| a.name.clone()).collect();
    assert!(distinct_knots.len() >= 3);
    for ex in bundled::TABLE_EXAMPLES {
        let (r, phi) = (ex.rack(), ex.cocycle());
        for alt in &alternates {
            let original = &main.iter().find(|l| l.name == alt.name).unwrap().diagram;
            assert_ne!(original, &alt.diagram);
            assert_eq!(
                cocycle_invariant(original, &r, &phi, Execution::Sequential),
                cocycle_invariant(&alt.diagram, &r, &phi, Execution::Sequential),
                "{} {}",
                ex.name,
                alt.name
            );
        }
    }
}

#[test]
fn rotating_a_component_changes_nothing() {
    let ex = TableExample::by_name("example22").unwrap();
    let (r, phi) = (ex.rack(), ex.cocycle());
    for l in bundled::all_links() {
        let base_counts: Vec<u64> = framing_counts(&l.diagram, &r, Execution::Sequential).into_iter().map(|(_, n)| n).collect();
        let base = cocycle_invariant(&l.diagram, &r, &phi, Execution::Sequential).unwrap();
        for k in 0..l.diagram.component_count() {
            for shift in [1, 3] {
                // kinks now land on another arc of component k
                let d = l.diagram.rotate_component(k, shift);
                let counts: Vec<u64> = framing_counts(&d, &r, Execution::Sequential).into_iter().map(|(_, n)| n).collect();
                assert_eq!(counts, base_counts, "{} component {k} shift {shift}", l.name);
                assert_eq!(cocycle_invariant(&d, &r, &phi, Execution::Sequential).unwrap(), base);
            }
        }
    }
}

#[test]
fn diagram_structure() {
    for l in bundled::all_links().into_iter().chain(bundled::alternate_diagrams()) {
        let d = &l.diagram;
        // one arc per under-passage, at least one per component
        let unders: usize = d.components().iter().map(|c| c.iter().filter(|p| !p.over).count().max(1)).sum();
        assert_eq!(d.arc_count(), unders);
        assert_eq!(LinkDiagram::parse(&d.to_string()).unwrap(), *d);
        let w = FramingVector((0..d.component_count()).map(|k| k + 1).collect());
        let kinked = d.add_kinks(&w);
        for k in 0..d.component_count() {
            assert_eq!(kinked.writhe(k), d.writhe(k) + (k as i64 + 1));
        }
    }
}

#[test]
fn parallel_and_sequential_agree() {
    let ex = TableExample::by_name("example23").unwrap();
    let (r, phi) = (ex.rack(), ex.cocycle());
    let links = bundled::all_links();
    let a = rackinv::table::evaluate(&links, &r, &phi, Execution::Sequential).unwrap();
    let b = rackinv::table::evaluate(&links, &r, &phi, Execution::best()).unwrap();
    assert_eq!(rackinv::table::format_grouped(&a), rackinv::table::format_grouped(&b));
}

fn arb_code() -> impl Strategy<Value = LinkDiagram> {
    let all = bundled::all_links();
    (0..all.len(), 0usize..20, 0usize..4).prop_map(move |(i, shift, flips)| {
        let mut d = all[i].diagram.clone();
        let k = shift % d.component_count();
        d = d.rotate_component(k, shift);
        if flips & 1 == 1 {
            d = d.mirror();
        }
        if flips & 2 == 2 {
            d = d.reverse_component(k);
        }
        d
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn serialize_then_parse_is_identity(d in arb_code()) {
        let text = d.to_string();
        prop_assert_eq!(LinkDiagram::parse(&text).unwrap(), d);
    }

    #[test]
    fn counting_invariant_survives_rotation(d in arb_code(), k in 0usize..3, shift in 1usize..9) {
        let r = bundled::example3_rack();
        let k = k % d.component_count();
        prop_assert_eq!(
            counting_invariant(&d, &r, Execution::Sequential),
            counting_invariant(&d.rotate_component(k, shift), &r, Execution::Sequential)
        );
    }
}
