//! Two open-ended probes, recorded as data rather than asserted.
//!
//! First: the order dimension of the hull census Y of a single apartment,
//! against the reference value twice the dimension plus one. The computed
//! dimensions exceed it in every rank two case, so the question of the
//! right general bound stays open and the numbers are simply printed.
//!
//! Second: strict upper intervals of simplices inside the crossed posets,
//! conjectured spherical of complementary dimension. At this scale they
//! check out.

use levisphere::building::Building;
use levisphere::coxeter::y_dimension_probe;
use levisphere::decomp::upper_interval_probe;

fn main() -> Result<(), levisphere::Error> {
    println!("hull census of one apartment:");
    println!(
        "  {:<6} {:>5} {:>7} {:>10} {:>8}",
        "type", "dim", "census", "poset dim", "2d+1"
    );
    for name in ["A1", "A2", "A3", "I2(3)", "I2(4)", "I2(5)", "I2(6)"] {
        let row = y_dimension_probe(name)?;
        println!(
            "  {:<6} {:>5} {:>7} {:>10} {:>8}{}",
            row.type_name,
            row.sigma_dim,
            row.census_size,
            row.poset_dim,
            row.double_plus_one,
            if row.matches { "  =" } else { "" },
        );
    }

    println!();
    println!("strict upper intervals in PD and OPD of the flag complex of GF(2)^3:");
    println!(
        "  {:<5} {:>11} {:>9} {:>6} {:>9} {:>6}",
        "poset", "simplex dim", "conj dim", "size", "spherical", "count"
    );
    let b = Building::type_a(2, 3)?;
    for row in upper_interval_probe(&b)? {
        println!(
            "  {:<5} {:>11} {:>9} {:>6} {:>9} {:>6}",
            row.family, row.simplex_dim, row.conjectured_dim, row.interval_size,
            row.spherical, row.count
        );
    }
    Ok(())
}
