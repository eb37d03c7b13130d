//! Levi spheres inside a building and the poset D they form.
//!
//! Each sphere is the hull of an opposite pair of simplices, a thin
//! subcomplex sitting inside every apartment containing the pair. Ordered by
//! refinement (reverse inclusion of subcomplexes), with a formal empty
//! sphere on top they reproduce the parabolic-subgroup poset of the Weyl
//! group, and each lower interval is the sphere poset of a link.

use levisphere::building::Building;
use levisphere::coxeter::parabolic_poset;
use levisphere::decomp::{build_d, dbar_of_building, dbar_poset, lower_interval_check};
use levisphere::homology::{homology, is_spherical};
use levisphere::poset::isomorphism;

fn apartment_side(name: &str) -> Result<(), levisphere::Error> {
    let b = Building::thin(name)?;
    let dbar = dbar_poset(&b.model)?;
    let para = parabolic_poset(&b.model.system)?;
    let matched = isomorphism(&dbar, &para).is_some();
    println!(
        "{name} apartment: {} spheres (+ empty top) vs {} conjugated parabolics, isomorphic = {matched}",
        dbar.len() - 1,
        para.len(),
    );
    assert!(matched);
    Ok(())
}

fn main() -> Result<(), levisphere::Error> {
    // Thin case first: the sphere poset of one apartment is the poset of
    // conjugates of standard parabolic subgroups under inclusion.
    apartment_side("A2")?;
    apartment_side("A3")?;
    println!();

    // Thick case: the flag complex of GF(2)^3.
    let b = Building::type_a(2, 3)?;
    let d = build_d(&b)?;
    println!("GF(2)^3: {} Levi spheres", d.poset.len());

    // Every sphere is spherical of the dimension its mask spans, and the
    // whole poset D is homotopy equivalent to a wedge in the top dimension.
    let mut by_dim = std::collections::BTreeMap::new();
    for mask in &d.masks {
        let sub = b.subcomplex_simplicial(mask);
        let dim = sub.dim();
        assert!(is_spherical(&sub, dim));
        *by_dim.entry(dim).or_insert(0u32) += 1;
    }
    for (dim, count) in &by_dim {
        println!("  {count} spheres of dimension {dim}");
    }
    let h = homology(&d.poset.order_complex()?);
    println!("  K(D): b{} = {}", b.dim(), h.betti(b.dim()));

    // Lower intervals: below a chamber sphere only the sphere itself, below
    // a vertex sphere a copy of the sphere poset of the vertex link.
    let all_ok = (0..d.masks.len()).try_fold(true, |acc, s| {
        lower_interval_check(&b, &d, s).map(|ok| acc && ok)
    })?;
    println!("  lower intervals match link sphere posets: {all_ok}");
    assert!(all_ok);

    // And with the empty sphere adjoined the full poset again matches the
    // parabolic poset pattern computed from any one apartment.
    let dbar = dbar_of_building(&b)?;
    println!("  D with empty top: {} elements", dbar.len());
    Ok(())
}
