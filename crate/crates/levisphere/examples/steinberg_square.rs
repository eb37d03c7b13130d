//! Dimension bookkeeping for the Steinberg square.
//!
//! The ordered decomposition poset of a linear building filters by height,
//! and each filtration step contributes one induced module built from the
//! stabilizer of an opposite pair.  On dimensions this telescopes to an
//! alternating sum that must vanish.  Every number below is computed twice:
//! once by orbit enumeration and once from homology of the height skeleta.

use levisphere::action::steinberg_les_check;

fn main() -> Result<(), levisphere::Error> {
    for (p, n) in [(2u8, 2usize), (3, 2), (2, 3)] {
        let r = steinberg_les_check(p, n)?;
        println!("GL_{}(GF({})), order {}", r.n, r.p, r.group_order);
        println!("  Steinberg dimension {}", r.st_dim);
        let pretty: Vec<String> = r
            .terms
            .iter()
            .enumerate()
            .map(|(i, t)| {
                if i == 0 {
                    format!("{t}")
                } else if *t < 0 {
                    format!("- {}", -t)
                } else {
                    format!("+ {t}")
                }
            })
            .collect();
        println!("  {} = {}  ({})", pretty.join(" "), r.alternating_sum, verdict(r.les_ok));
        println!("  orbits of opposite pairs:");
        for row in &r.orbit_rows {
            println!(
                "    dim {}: {} pairs, stabilizer order {}, Levi Steinberg dim {}, term {}",
                row.simplex_dim, row.size, row.stabilizer_order, row.st_levi, row.term
            );
        }
        println!("  height skeleta of the ordered decomposition poset:");
        for row in &r.skeleton_rows {
            println!(
                "    level {}: {} elements, top homology {} (join model {}), relative {}, stratum {}, {}",
                row.level,
                row.elements,
                row.direct_top,
                row.join_model_top,
                row.relative,
                row.stratum_total,
                verdict(row.consistent)
            );
        }
        println!("  skeleton cross-check: {}", verdict(r.skeleton_ok));
        println!();
    }
    Ok(())
}

fn verdict(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "MISMATCH"
    }
}
