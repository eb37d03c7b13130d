//! Exact integral homology from sparse Smith normal form.
//!
//! Small sanity landscape: spheres, a torus, a projective plane with its
//! 2-torsion, joins, and a Cohen-Macaulay verdict with a witness when the
//! answer is no.

use levisphere::homology::{cohen_macaulay, homology, is_spherical, CmStatus};
use levisphere::poset::SimplicialComplex;

fn named(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

fn main() -> Result<(), levisphere::Error> {
    // The boundary of a triangle is a circle.
    let circle = SimplicialComplex::from_facets(
        named(&["a", "b", "c"]),
        &[vec![0, 1], vec![0, 2], vec![1, 2]],
    )?;
    let h = homology(&circle);
    println!("circle: betti(0) = {}, betti(1) = {}", h.betti(0), h.betti(1));
    assert!(is_spherical(&circle, 1));

    // The 2-sphere as the boundary of a tetrahedron.
    let sphere = SimplicialComplex::from_facets(
        named(&["a", "b", "c", "d"]),
        &[vec![0, 1, 2], vec![0, 1, 3], vec![0, 2, 3], vec![1, 2, 3]],
    )?;
    println!("2-sphere: betti(2) = {}", homology(&sphere).betti(2));

    // Join of two circles: a 3-sphere.
    let s3 = circle.join(&circle)?;
    let h = homology(&s3);
    println!("circle * circle: dim {}, betti(3) = {}", s3.dim(), h.betti(3));

    // The minimal 7-vertex torus: faces {i, i+1, i+3} and {i, i+2, i+3} mod 7.
    let mut facets = Vec::new();
    for i in 0..7u32 {
        facets.push(vec![i, (i + 1) % 7, (i + 3) % 7]);
        facets.push(vec![i, (i + 2) % 7, (i + 3) % 7]);
    }
    let torus = SimplicialComplex::from_facets(
        (0..7).map(|i| i.to_string()).collect(),
        &facets,
    )?;
    let h = homology(&torus);
    println!(
        "7-vertex torus: betti = ({}, {}, {}), torsion-free: {}",
        h.betti(0) + 1,
        h.betti(1),
        h.betti(2),
        !h.has_torsion()
    );

    // The 6-vertex projective plane (antipodal icosahedron): 2-torsion in
    // degree 1 and nothing on top.
    let rp2 = SimplicialComplex::from_facets(
        named(&["1", "2", "3", "4", "5", "6"]),
        &[
            vec![0, 1, 2], vec![0, 2, 3], vec![0, 3, 4], vec![0, 4, 5],
            vec![0, 1, 5], vec![1, 2, 4], vec![2, 3, 5], vec![1, 3, 4],
            vec![2, 4, 5], vec![1, 3, 5],
        ],
    )?;
    let h = homology(&rp2);
    println!(
        "projective plane: betti(1) = {}, torsion in degree 1 = {:?}",
        h.betti(1),
        h.torsion_at(1).iter().map(|t| t.to_string()).collect::<Vec<_>>()
    );

    // Cohen-Macaulay: the sphere is, two triangles sharing a vertex are not.
    println!("\nCohen-Macaulay verdicts:");
    match cohen_macaulay(&sphere, 10_000) {
        CmStatus::Cm { dim } => println!("  2-sphere: CM of dimension {dim}"),
        other => println!("  2-sphere: unexpected {other:?}"),
    }
    let pinched = SimplicialComplex::from_facets(
        named(&["a", "b", "c", "d", "e"]),
        &[vec![0, 1, 2], vec![2, 3, 4]],
    )?;
    match cohen_macaulay(&pinched, 10_000) {
        CmStatus::NotCm { witness } => println!("  pinched triangles: not CM ({witness})"),
        other => println!("  pinched triangles: unexpected {other:?}"),
    }
    Ok(())
}
