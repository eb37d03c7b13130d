//! The six decomposition posets of a building and the maps tying them
//! together.
//!
//! For GF(q)^2 the building is q+1 points, so everything is small enough to
//! print whole. The script builds CB, Y, D, OD, PD, OPD, compares their
//! homology, and then runs the two comparison maps: the hull map from chains
//! of PD into Y, and the map from OPD onto the join of the face poset with
//! reversed OD.

use levisphere::building::Building;
use levisphere::decomp::{
    build_cb, build_d, build_od, build_opd, build_pd, build_y, map_gamma, map_phi,
};
use levisphere::homology::{homology, induced_iso, Homology};

fn betti_line(h: &Homology) -> String {
    let parts: Vec<String> = (-1..=h.complex_dim)
        .filter(|&d| h.betti(d) > 0)
        .map(|d| format!("b{}={}", d, h.betti(d)))
        .collect();
    if parts.is_empty() {
        "trivial".to_string()
    } else {
        parts.join(", ")
    }
}

fn tour(p: u8) -> Result<(), levisphere::Error> {
    let b = Building::type_a(p, 2)?;
    let q = p as u64;
    println!("== GF({p})^2: {} points, {} apartments ==", b.simplex_count(), b.apartment_count());

    let cb = build_cb(&b)?;
    let y = build_y(&b)?;
    let d = build_d(&b)?;
    let od = build_od(&b)?;
    let pd = build_pd(&b)?;
    let opd = build_opd(&b)?;

    println!("  sizes: CB facets {}, Y {}, D {}, OD {}, PD {}, OPD {}",
        cb.facets().len(), y.poset.len(), d.poset.len(),
        od.poset.len(), pd.poset.len(), opd.poset.len());

    // Solomon-Tits at rank one: the building is q+1 points, a wedge of q
    // zero-spheres.
    let h_b = homology(&b.as_simplicial());
    println!("  building: {} (expect b0={q})", betti_line(&h_b));

    // The three contractible-carrier constructions agree.
    let h_cb = homology(&cb);
    let h_y = homology(&y.poset.order_complex()?);
    let h_pd = homology(&pd.poset.order_complex()?);
    println!("  K(CB): {}", betti_line(&h_cb));
    println!("  K(Y):  {}", betti_line(&h_y));
    println!("  K(PD): {}", betti_line(&h_pd));
    assert!(h_cb.same_groups(&h_y) && h_y.same_groups(&h_pd));

    // The hull map: chains in PD, each sent to the hull of its union in Y.
    let g = map_gamma(&b, &pd, &y, None)?;
    let iso = induced_iso(&g.chain_poset.order_complex()?, &y.poset.order_complex()?, &g.map.map)?;
    println!("  hull map on {} chains: iso in every degree = {}", g.chains.len(), iso.all_iso);

    // OPD against the join model, one degree at a time.
    let (model, phi) = map_phi(&b, &opd)?;
    let h_opd = homology(&opd.poset.order_complex()?);
    let h_model = homology(&model.order_complex()?);
    println!("  K(OPD): {} (expect b1={})", betti_line(&h_opd), q * q);
    assert_eq!(h_opd.betti(1), q * q);
    assert!(h_opd.same_groups(&h_model));
    let iso = induced_iso(&opd.poset.order_complex()?, &model.order_complex()?, &phi.map)?;
    println!("  join comparison map: iso in every degree = {}", iso.all_iso);

    // The unordered posets D and OD are homotopy spheres of dimension
    // dim Delta = 0 here; print them for contrast.
    let h_d = homology(&d.poset.order_complex()?);
    let h_od = homology(&od.poset.order_complex()?);
    println!("  K(D): {}   K(OD): {}", betti_line(&h_d), betti_line(&h_od));
    println!();
    Ok(())
}

fn main() -> Result<(), levisphere::Error> {
    tour(2)?;
    tour(3)?;

    // One size up: the flag complex of GF(2)^3 has 14 vertices and its
    // posets are big enough that only the sizes are worth printing.
    let b = Building::type_a(2, 3)?;
    println!("== GF(2)^3: {} simplices, {} apartments ==", b.simplex_count(), b.apartment_count());
    let y = build_y(&b)?;
    let pd = build_pd(&b)?;
    let opd = build_opd(&b)?;
    println!("  sizes: Y {}, PD {}, OPD {}", y.poset.len(), pd.poset.len(), opd.poset.len());
    let h = homology(&b.as_simplicial());
    println!("  building: {} (a wedge of eight circles)", betti_line(&h));
    Ok(())
}
