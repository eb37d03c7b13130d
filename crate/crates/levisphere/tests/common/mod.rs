//! Shared randomized property suite, used by the granular property tests
//! and by the acceptance gate. Every law is sampled with a seeded generator
//! so failures replay.

#![allow(dead_code)]

use levisphere::action::{
    chain_action, crossed_pairs_action, crossed_spheres_action, mask_poset_action,
    pair_poset_action, phi_model_action, MatrixGroup,
};
use levisphere::building::Building;
use levisphere::decomp::{
    build_d, build_od, build_opd, build_pd, build_y, map_f, map_f_crossed, map_gamma, map_phi,
};
use levisphere::homology::{homology, ChainComplex};
use levisphere::poset::SimplicialComplex;
use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use std::collections::HashMap;

pub struct Tally {
    pub cases: u64,
    pub failures: Vec<String>,
}

impl Tally {
    pub fn new() -> Tally {
        Tally { cases: 0, failures: Vec::new() }
    }

    fn case(&mut self, ok: bool, desc: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failures.push(desc());
        }
    }
}

fn sample_in_apartment(b: &Building, rng: &mut ChaCha8Rng, max: usize) -> Vec<u32> {
    let apt = rng.gen_range(0..b.apartment_count());
    let pool: Vec<u32> = b.apartment_mask(apt).iter().map(|i| i as u32).collect();
    let size = rng.gen_range(1..=max.min(pool.len()));
    pool.choose_multiple(rng, size).copied().collect()
}

fn closure_laws_at<F>(
    label: &str,
    set: &[u32],
    hull_of: F,
    rng: &mut ChaCha8Rng,
    tally: &mut Tally,
) where
    F: Fn(&[u32]) -> levisphere::bits::Bits,
{
    let hull = hull_of(set);
    tally.case(set.iter().all(|&s| hull.contains(s as usize)), || {
        format!("{label}: hull not extensive on {set:?}")
    });
    let mut sub: Vec<u32> = set.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
    if sub.is_empty() {
        sub.push(set[0]);
    }
    tally.case(hull_of(&sub).is_subset(&hull), || {
        format!("{label}: hull not monotone on {sub:?} inside {set:?}")
    });
    let members: Vec<u32> = hull.iter().map(|i| i as u32).collect();
    tally.case(hull_of(&members) == hull, || {
        format!("{label}: hull not idempotent on {set:?}")
    });
}

/// Convex hulls are closure operators: extensive, monotone, idempotent.
pub fn hull_closure_laws(rng: &mut ChaCha8Rng, tally: &mut Tally, rounds: usize) {
    let thins: Vec<Building> =
        ["A2", "A3"].iter().map(|n| Building::thin(n).unwrap()).collect();
    let thicks: Vec<Building> = [(2u8, 2usize), (3, 2), (2, 3)]
        .iter()
        .map(|&(p, n)| Building::type_a(p, n).unwrap())
        .collect();
    for round in 0..rounds {
        if rng.gen_bool(0.5) {
            let b = &thins[rng.gen_range(0..thins.len())];
            let n = b.model.simplex_count();
            let size = rng.gen_range(1..=3.min(n));
            let set: Vec<u32> = (0..n as u32).choose_multiple(rng, size).into_iter().collect();
            let label = format!("thin round {round}");
            closure_laws_at(&label, &set, |ids| b.model.convex_hull(ids), rng, tally);
        } else {
            let b = &thicks[rng.gen_range(0..thicks.len())];
            let set = sample_in_apartment(b, rng, 3);
            let label = format!("thick round {round}");
            closure_laws_at(&label, &set, |ids| b.convex_hull(ids).unwrap().1, rng, tally);
        }
    }
}

/// Opposition is an involution and preserves the face relation; swapping an
/// opposite pair is an automorphism of the pair poset.
pub fn op_involution(rng: &mut ChaCha8Rng, tally: &mut Tally, rounds: usize) {
    let thins: Vec<Building> =
        ["A2", "A3"].iter().map(|n| Building::thin(n).unwrap()).collect();
    let ods: Vec<(String, levisphere::decomp::PairPoset)> = [(2u8, 2usize), (3, 2), (2, 3)]
        .iter()
        .map(|&(p, n)| {
            let b = Building::type_a(p, n).unwrap();
            (format!("GF({p})^{n}"), build_od(&b).unwrap())
        })
        .collect();
    let swaps: Vec<Vec<u32>> = ods
        .iter()
        .map(|(_, od)| {
            let pos: HashMap<(u32, u32), u32> = od
                .pairs
                .iter()
                .enumerate()
                .map(|(i, &p)| (p, i as u32))
                .collect();
            od.pairs.iter().map(|&(a, b)| pos[&(b, a)]).collect()
        })
        .collect();
    for _ in 0..rounds {
        let model = &thins[rng.gen_range(0..thins.len())].model;
        let a = rng.gen_range(0..model.simplex_count()) as u32;
        let b = rng.gen_range(0..model.simplex_count()) as u32;
        tally.case(model.opposite(model.opposite(a)) == a, || {
            format!("op not an involution at simplex {a}")
        });
        tally.case(
            model.is_face(a, b) == model.is_face(model.opposite(a), model.opposite(b)),
            || format!("op does not preserve the face relation on ({a}, {b})"),
        );

        let oi = rng.gen_range(0..ods.len());
        let (name, od) = &ods[oi];
        let swap = &swaps[oi];
        let i = rng.gen_range(0..od.pairs.len());
        let j = rng.gen_range(0..od.pairs.len());
        tally.case(swap[swap[i] as usize] as usize == i, || {
            format!("{name}: pair swap not an involution at {i}")
        });
        tally.case(
            od.poset.leq(i, j) == od.poset.leq(swap[i] as usize, swap[j] as usize),
            || format!("{name}: pair swap not order preserving on ({i}, {j})"),
        );
    }
}

fn random_complex(rng: &mut ChaCha8Rng, max_verts: usize, max_facets: usize, max_size: usize) -> SimplicialComplex {
    let nv = rng.gen_range(3..=max_verts);
    let nf = rng.gen_range(2..=max_facets);
    let mut facets = Vec::new();
    for _ in 0..nf {
        let size = rng.gen_range(2..=max_size.min(nv));
        let f: Vec<u32> = (0..nv as u32).choose_multiple(rng, size).into_iter().collect();
        facets.push(f);
    }
    SimplicialComplex::from_facets((0..nv).map(|i| i.to_string()).collect(), &facets).unwrap()
}

/// Boundary matrices compose to zero, and the ranks they produce satisfy
/// the Euler identity against the face counts.
pub fn boundary_squares_to_zero(rng: &mut ChaCha8Rng, tally: &mut Tally, rounds: usize) {
    for round in 0..rounds {
        let k = random_complex(rng, 7, 6, 4);
        let c = ChainComplex::reduced(&k);
        tally.case(
            ChainComplex::new(c.dims.clone(), c.boundaries.clone()).is_ok(),
            || format!("round {round}: boundary squared nonzero"),
        );
        let h = homology(&k);
        let mut euler = -1i64;
        for d in 0..=k.dim() {
            let f = k.faces_of_dim(d as usize).len() as i64;
            euler += if d % 2 == 0 { f } else { -f };
        }
        let mut ranks = 0i64;
        for d in -1..=h.complex_dim {
            let b = h.betti(d) as i64;
            ranks += if d % 2 == 0 { b } else { -b };
        }
        tally.case(euler == ranks, || {
            format!("round {round}: Euler characteristic {euler} vs Betti sum {ranks}")
        });
    }
}

/// Barycentric subdivision leaves homology unchanged.
pub fn subdivision_invariance(rng: &mut ChaCha8Rng, tally: &mut Tally, rounds: usize) {
    for round in 0..rounds {
        let k = random_complex(rng, 6, 5, 4);
        let sd = k.barycentric_subdivision().unwrap();
        tally.case(homology(&k).same_groups(&homology(&sd)), || {
            format!("round {round}: subdivision changed homology")
        });
    }
}

/// Reduced Betti numbers of a join multiply degree by degree.
pub fn join_betti_formula(rng: &mut ChaCha8Rng, tally: &mut Tally, rounds: usize) {
    for round in 0..rounds {
        let x = random_complex(rng, 5, 4, 3);
        let y = random_complex(rng, 5, 4, 3);
        let j = x.join(&y).unwrap();
        let hx = homology(&x);
        let hy = homology(&y);
        let hj = homology(&j);
        let mut ok = true;
        for k in -1..=(hj.complex_dim + 1) {
            let mut expect = 0u64;
            for i in -1..=(k - 1) {
                expect += hx.betti(i) * hy.betti(k - 1 - i);
            }
            ok &= hj.betti(k) == expect;
        }
        tally.case(ok, || format!("round {round}: join Betti numbers do not multiply"));
    }
}

struct MapInstance {
    name: String,
    map: Vec<u32>,
    src: Vec<Vec<u32>>,
    dst: Vec<Vec<u32>>,
}

/// Every comparison map commutes with the full generator set of the
/// general linear group, sampled one (generator, element) pair at a time.
pub fn map_equivariance(rng: &mut ChaCha8Rng, tally: &mut Tally, rounds: usize) {
    let mut instances = Vec::new();
    for (p, n) in [(2u8, 2usize), (3, 2), (2, 3)] {
        let b = Building::type_a(p, n).unwrap();
        let grp = MatrixGroup::general_linear(p, n).unwrap();
        let od = build_od(&b).unwrap();
        let d = build_d(&b).unwrap();
        let od_act = pair_poset_action(&b, &od, &grp).unwrap();
        let d_act = mask_poset_action(&b, &d, &grp).unwrap();
        let f = map_f(&od, &d).unwrap();
        instances.push(MapInstance {
            name: format!("F on GF({p})^{n}"),
            map: f.map,
            src: od_act.perms,
            dst: d_act.perms,
        });
        let pd = build_pd(&b).unwrap();
        let opd = build_opd(&b).unwrap();
        let pd_act = crossed_spheres_action(&b, &pd, &grp).unwrap();
        let opd_act = crossed_pairs_action(&b, &opd, &grp).unwrap();
        let fc = map_f_crossed(&opd, &pd).unwrap();
        instances.push(MapInstance {
            name: format!("crossed F on GF({p})^{n}"),
            map: fc.map,
            src: opd_act.perms.clone(),
            dst: pd_act.perms.clone(),
        });
        if n == 2 {
            let y = build_y(&b).unwrap();
            let g = map_gamma(&b, &pd, &y, None).unwrap();
            let chain_act = chain_action(&g.chain_poset, &g.chains, &pd_act).unwrap();
            let y_act = mask_poset_action(&b, &y, &grp).unwrap();
            instances.push(MapInstance {
                name: format!("hull map on GF({p})^{n}"),
                map: g.map.map,
                src: chain_act.perms,
                dst: y_act.perms,
            });
            let (model, phi) = map_phi(&b, &opd).unwrap();
            let model_act = phi_model_action(&b, &model, &grp).unwrap();
            instances.push(MapInstance {
                name: format!("join comparison on GF({p})^{n}"),
                map: phi.map,
                src: opd_act.perms,
                dst: model_act.perms,
            });
        }
    }
    for _ in 0..rounds {
        let inst = &instances[rng.gen_range(0..instances.len())];
        let g = rng.gen_range(0..inst.src.len());
        let x = rng.gen_range(0..inst.map.len());
        let lhs = inst.dst[g][inst.map[x] as usize];
        let rhs = inst.map[inst.src[g][x] as usize];
        tally.case(lhs == rhs, || {
            format!("{}: generator {g} does not commute at element {x}", inst.name)
        });
    }
}

/// The full suite at the published case counts.
pub fn run_all(seed: u64) -> Tally {
    let mut tally = Tally::new();
    let families: [(&str, fn(&mut ChaCha8Rng, &mut Tally, usize), usize); 6] = [
        ("hull closure", hull_closure_laws, 120),
        ("op involution", op_involution, 100),
        ("boundary", boundary_squares_to_zero, 100),
        ("subdivision", subdivision_invariance, 100),
        ("join betti", join_betti_formula, 120),
        ("equivariance", map_equivariance, 300),
    ];
    for (i, (_, f, rounds)) in families.iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(seed ^ (i as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15));
        f(&mut rng, &mut tally, *rounds);
    }
    tally
}
