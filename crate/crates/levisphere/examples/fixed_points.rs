//! Group actions on the decomposition posets: orbits, equivariance, and
//! fixed-point subposets.
//!
//! The general linear group permutes everything in sight and every
//! comparison map commutes with it. Restricting to a subgroup cuts out
//! fixed subposets on both sides of the partial-sum map, and the restricted
//! map still induces isomorphisms on homology.

use levisphere::action::{
    chain_action, check_equivariance, crossed_pairs_action, crossed_vector_action,
    fixed_point_comparison, mask_poset_action, orbits, simplex_permutation, vector_poset_action,
    vertex_permutation, MatrixGroup,
};
use levisphere::building::Building;
use levisphere::decomp::{
    build_opd, build_pd, build_y, crossed_ok2, map_gamma, map_phi_vector, vector_opd,
};
use levisphere::gf::Mat;

fn main() -> Result<(), levisphere::Error> {
    // Orbits of GL_3(2) on the flag complex of GF(2)^3: the 14 vertices
    // split into lines and planes, the 21 chambers form one orbit.
    let b = Building::type_a(2, 3)?;
    let mut gl = MatrixGroup::general_linear(2, 3)?;
    gl.close(200_000)?;
    println!("GL_3(2): order {}", gl.order().unwrap());
    let vperms: Vec<Vec<u32>> = gl
        .generators
        .iter()
        .map(|g| vertex_permutation(&b, g))
        .collect::<Result<_, _>>()?;
    let vt = orbits(b.vertex_count(), &vperms, gl.order())?;
    println!("  vertex orbits:");
    for o in &vt.orbits {
        println!(
            "    size {} with stabilizer of order {}",
            o.size,
            o.stabilizer_order.unwrap()
        );
    }
    let sperms: Vec<Vec<u32>> = gl
        .generators
        .iter()
        .map(|g| simplex_permutation(&b, g))
        .collect::<Result<_, _>>()?;
    let st = orbits(b.simplex_count(), &sperms, gl.order())?;
    println!("  simplex orbits: {}", st.orbits.len());

    // The hull map from chains of PD into Y commutes with the action.
    let pd = build_pd(&b)?;
    let y = build_y(&b)?;
    let g = map_gamma(&b, &pd, &y, None)?;
    let pd_act = levisphere::action::crossed_spheres_action(&b, &pd, &gl)?;
    let chain_act = chain_action(&g.chain_poset, &g.chains, &pd_act)?;
    let y_act = mask_poset_action(&b, &y, &gl)?;
    println!(
        "  hull map equivariant: {}",
        check_equivariance(&g.map, &chain_act, &y_act)
    );

    // Fixed points of the diagonal torus of GL_2(3) on OPD: the two
    // eigenlines and the two ordered eigenline pairs, nothing else.
    println!();
    let b3 = Building::type_a(3, 2)?;
    let mut torus = MatrixGroup::diagonal_torus(3, 2)?;
    torus.close(1000)?;
    println!("diagonal torus of GL_2(3): order {}", torus.order().unwrap());
    let opd = build_opd(&b3)?;
    let act = crossed_pairs_action(&b3, &opd, &torus)?;
    let (fixed, picked) = opd.poset.fixed_points(&act);
    println!("  fixed points on OPD(GF(3)^2), {} of {}:", fixed.len(), opd.poset.len());
    for &i in &picked {
        println!("    {}", opd.poset.key(i as usize));
    }

    // Restricting the partial-sum map to torus-fixed subposets still gives
    // an isomorphism on homology.
    let v = vector_opd(3, 2)?;
    let k2 = crossed_ok2(3, 2)?;
    let (cp, chains, phi) = map_phi_vector(&v, &k2)?;
    let v_act = vector_poset_action(&v, &torus)?;
    let cp_act = chain_action(&cp, &chains, &v_act)?;
    let k_act = crossed_vector_action(&k2, &torus)?;
    println!("  partial-sum map equivariant: {}", check_equivariance(&phi, &cp_act, &k_act));
    let cmp = fixed_point_comparison(&cp, &cp_act, &k2.poset, &k_act, &phi)?;
    println!(
        "  fixed chains {} -> fixed targets {}, homology iso: {}",
        cmp.src_size, cmp.dst_size, cmp.report.all_iso
    );

    // Over GF(2) the diagonal torus is trivial; the cyclic rotation of the
    // three basis vectors of GF(2)^3 stands in for it, fixing the sum line,
    // its invariant plane, and the rotation-stable decompositions.
    println!();
    let rot = Mat::from_rows(2, vec![vec![0, 1, 0], vec![0, 0, 1], vec![1, 0, 0]])?;
    let mut cyc = MatrixGroup::from_generators(2, 3, vec![rot])?;
    cyc.close(1000)?;
    println!("basis rotation in GL_3(2): order {}", cyc.order().unwrap());
    let v = vector_opd(2, 3)?;
    let k2 = crossed_ok2(2, 3)?;
    let (cp, chains, phi) = map_phi_vector(&v, &k2)?;
    let v_act = vector_poset_action(&v, &cyc)?;
    let cp_act = chain_action(&cp, &chains, &v_act)?;
    let k_act = crossed_vector_action(&k2, &cyc)?;
    let cmp = fixed_point_comparison(&cp, &cp_act, &k2.poset, &k_act, &phi)?;
    println!(
        "  fixed chains {} -> fixed targets {}, homology iso: {}",
        cmp.src_size, cmp.dst_size, cmp.report.all_iso
    );
    Ok(())
}
