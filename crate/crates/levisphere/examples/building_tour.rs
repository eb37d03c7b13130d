//! The flag building of GF(2)^3 with its complete apartment system.
//!
//! Vertices are proper nonzero subspaces, simplices are flags, apartments
//! come from frames (triples of independent lines), and any two simplices
//! lie in a common apartment.  The top homology is the Steinberg module.

use levisphere::building::Building;
use levisphere::homology::homology;

fn main() -> Result<(), levisphere::Error> {
    let b = Building::type_a(2, 3)?;
    println!(
        "building of GF(2)^3: {} vertices, {} simplices, dim {}, {} chambers",
        b.vertex_count(),
        b.simplex_count(),
        b.dim(),
        b.chambers().len()
    );
    println!("{} apartments in the complete system", b.apartment_count());

    // Every chamber lies in the same number of apartments.
    let c0 = b.chambers()[0];
    let through_chamber = b.apartments_containing(&[c0]).len();
    println!("each chamber lies in {through_chamber} apartments");

    // Vertex type is subspace dimension: 7 lines and 7 planes.
    for ty in 1..=2u8 {
        let names: Vec<&str> = (0..b.vertex_count() as u32)
            .filter(|&v| b.vertex_type(v) == ty)
            .map(|v| b.vertex_key(v))
            .collect();
        println!("type {ty}: {} vertices: {}", names.len(), names.join(" "));
    }

    // An apartment is a hexagon: 6 vertices, 6 edges.
    let apt = b.apartment_mask(0);
    println!(
        "\napartment 0 has {} simplices: {}",
        apt.count(),
        b.mask_key(apt)
    );

    // Opposite simplices span Levi spheres; chambers pair across diameters.
    let pairs = b.opposite_pairs();
    let chamber_pairs =
        pairs.iter().filter(|&&(s, _)| b.dim_of(s) == b.dim()).count();
    let vertex_pairs = pairs.iter().filter(|&&(s, _)| b.dim_of(s) == 0).count();
    println!(
        "\nordered opposite pairs: {} total, {} vertex pairs, {} chamber pairs",
        pairs.len(),
        vertex_pairs,
        chamber_pairs
    );

    // A vertex pair spans the wall of an apartment, a chamber pair spans
    // the whole apartment.
    let &(v0, v1) = pairs.iter().find(|&&(s, _)| b.dim_of(s) == 0).unwrap();
    let (_, hull) = b.convex_hull(&[v0, v1])?;
    println!(
        "hull of opposite vertices {} and {}: {} simplices",
        b.simplex_key(v0),
        b.simplex_key(v1),
        hull.count()
    );
    let &(c0, c1) = pairs.iter().find(|&&(s, _)| b.dim_of(s) == 1).unwrap();
    let (_, hull) = b.convex_hull(&[c0, c1])?;
    println!("hull of opposite chambers: {} simplices (a full apartment)", hull.count());

    // Top homology: the Steinberg module of GL_3(2) has dimension 8,
    // and the building is a wedge of 8 circles.
    let h = homology(&b.as_simplicial());
    println!("\nreduced homology of the building:");
    for d in -1..=b.dim() {
        println!("  degree {d}: Z^{}", h.betti(d));
    }
    assert!(!h.has_torsion());

    // Links of vertices are smaller buildings: here complete bipartite.
    let k = b.link_complex(0);
    let hl = homology(&k);
    println!(
        "link of vertex {}: {} faces, top betti {}",
        b.vertex_key(0),
        k.total_faces(),
        hl.betti(k.dim())
    );
    Ok(())
}
