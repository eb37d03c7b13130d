//! A walk around the A2 Coxeter complex, which is a hexagon.
//!
//! Six chambers, six vertices, three walls.  Every root is a half-circle of
//! three chambers, the convex hull of two chambers is the geodesic between
//! them, and opposition is the antipodal map.

use levisphere::coxeter::{CoxeterComplex, CoxeterSystem};

fn main() -> Result<(), levisphere::Error> {
    let system = CoxeterSystem::named("A2")?;
    println!(
        "W(A2): order {}, longest element {} of length {}",
        system.order(),
        system.word_key(system.w0()),
        system.length(system.w0())
    );

    let cc = CoxeterComplex::new(system)?;
    println!(
        "complex: {} simplices, dim {}, {} chambers",
        cc.simplex_count(),
        cc.dim(),
        cc.chamber_ids().len()
    );

    println!("\nsimplices by key (word:cotype):");
    for id in 0..cc.simplex_count() as u32 {
        print!("  {}", cc.simplex_key(id));
    }
    println!();

    println!("\nwalls and roots:");
    for t in 0..cc.wall_count() {
        let wall = cc.wall_mask(t);
        let plus = cc.root_mask(2 * t);
        let minus = cc.root_mask(2 * t + 1);
        println!(
            "  wall {t}: {} simplices; sides have {} and {} simplices, overlap {}",
            wall.count(),
            plus.count(),
            minus.count(),
            plus.and(minus).count()
        );
        // The wall is exactly the intersection of its two roots.
        assert_eq!(&plus.and(minus), wall);
    }

    // Opposition sends each chamber to the one at maximal gallery distance.
    println!("\nopposition on chambers:");
    for &c in &cc.chamber_ids() {
        println!("  {} -> {}", cc.simplex_key(c), cc.simplex_key(cc.opposite(c)));
    }

    // Convex hulls grow with gallery distance, from an edge to the whole
    // circle; distance from the identity chamber is word length.
    let e0 = cc.system.identity();
    let c0 = cc.chamber_id(e0);
    for e in 0..cc.system.order() as u32 {
        let c = cc.chamber_id(e);
        let hull = cc.convex_hull(&[c0, c]);
        println!(
            "hull(chamber e, chamber {}): distance {}, {} simplices",
            cc.system.word_key(e),
            cc.system.length(e),
            hull.count()
        );
    }

    // The whole census of convex subcomplexes, which is the Y poset.
    let (y, masks) = cc.convexity_poset()?;
    println!(
        "\nconvex subcomplexes: {} of them, poset dimension {} (2 dim + 1 would be {})",
        masks.len(),
        y.dim(),
        2 * cc.dim() + 1
    );
    Ok(())
}
