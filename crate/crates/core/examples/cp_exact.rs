// Exact annealed quantities of the oriented-lattice walk for short horizons.

use rangewalk::cp_walk::{
    enumerate_quenched_paths, exact_annealed_law, exact_no_return_probabilities, exact_return_probabilities,
};

pub fn run_example() -> rangewalk::Result<()> {
    let p = 0.5;
    println!("law of M_2 at p = {p}:");
    for ((x, y), w) in exact_annealed_law(p, 2)? {
        println!("  ({x:>2}, {y:>2})  {w:.6}");
    }

    let returns = exact_return_probabilities(p, 12)?;
    let escape = exact_no_return_probabilities(p, 12)?;
    println!(" L   P(M_L = 0)   P(no return by L)");
    for l in 1..=12 {
        println!("{l:>2}   {:.6}     {:.6}", returns[l], escape[l]);
    }
    assert!((escape[2] - 0.875).abs() < 1e-15);

    // the merged recursion agrees with brute force over paths and orientations
    let mut mass_at_origin = 0.0;
    enumerate_quenched_paths(p, 6, |path, _, w| {
        if path.end() == (0, 0) {
            mass_at_origin += w;
        }
    })?;
    assert!((mass_at_origin - returns[6]).abs() < 1e-12);
    Ok(())
}

#[allow(dead_code)]
fn main() -> rangewalk::Result<()> {
    run_example()
}
