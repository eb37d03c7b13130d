//! Vector-space models of the decomposition posets.
//!
//! Instead of simplices in a flag complex, work directly with tuples or
//! sets of independent nonzero subspaces of GF(p)^n. Full decompositions
//! recover D and OD, partial ones PD and OPD, and the crossed posets K2 and
//! OK2 adjoin flags below the full decompositions they share a basis with.
//! The partial-sum map identifies the chain homology of the partial posets
//! with the crossed ones.

use levisphere::building::Building;
use levisphere::decomp::{
    crossed_k2, crossed_ok2, map_phi_vector, vector_d, vector_od, vector_opd, vector_pd,
    vector_d_matches_building, vector_od_matches_building,
};
use levisphere::homology::{homology, induced_iso};

fn survey(p: u8, n: usize) -> Result<(), levisphere::Error> {
    println!("== GF({p})^{n} ==");
    let pd = vector_pd(p, n)?;
    let opd = vector_opd(p, n)?;
    let d = vector_d(p, n)?;
    let od = vector_od(p, n)?;
    let k2 = crossed_k2(p, n)?;
    let ok2 = crossed_ok2(p, n)?;
    println!(
        "  PD(V) {}, OPD(V) {}, D(V) {}, OD(V) {}, K2 {}, OK2 {}",
        pd.poset.len(), opd.poset.len(), d.poset.len(), od.poset.len(),
        k2.poset.len(), ok2.poset.len(),
    );

    // The full decompositions match the opposite-pair posets of the
    // building: a decomposition into lines picks out an apartment.
    let b = Building::type_a(p, n)?;
    println!(
        "  D(V) matches building side: {}",
        vector_d_matches_building(&d, &b)?
    );
    println!(
        "  OD(V) matches building side: {}",
        vector_od_matches_building(&od, &b)?
    );

    // Partial sums: chains of PD(V) map to K2, chains of OPD(V) to OK2,
    // inducing isomorphisms in every homology degree.
    for (name, v, k) in [("PD(V) -> K2", &pd, &k2), ("OPD(V) -> OK2", &opd, &ok2)] {
        let (cp, chains, phi) = map_phi_vector(v, k)?;
        let iso = induced_iso(&cp.order_complex()?, &k.poset.order_complex()?, &phi.map)?;
        let h = homology(&k.poset.order_complex()?);
        let tops: Vec<String> = (-1..=h.complex_dim)
            .filter(|&deg| h.betti(deg) > 0)
            .map(|deg| format!("b{}={}", deg, h.betti(deg)))
            .collect();
        println!(
            "  {name}: {} chains, iso in every degree = {}, target homology {}",
            chains.len(),
            iso.all_iso,
            if tops.is_empty() { "trivial".into() } else { tops.join(", ") },
        );
        assert!(iso.all_iso);
    }
    println!();
    Ok(())
}

fn main() -> Result<(), levisphere::Error> {
    survey(2, 2)?;
    survey(3, 2)?;
    survey(2, 3)?;
    Ok(())
}
