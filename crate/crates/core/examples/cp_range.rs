// Simulating the oriented-lattice walk and measuring its ranges.

use rangewalk::cp_walk::{
    annealed_trial, first_coordinate_decomposition, horizontal_local_time, range_first_coordinate, range_sites,
    simulate_quenched, skew_product_path, Environment,
};
use rangewalk::stable_core::derive_stream;

pub fn run_example() -> rangewalk::Result<()> {
    let (p, n) = (0.5, 100_000);
    let (path, env) = annealed_trial(p, n, derive_stream(3, 0))?;
    let r = range_sites(&path);
    let r1 = range_first_coordinate(&path);
    println!("n = {n}: R_n = {r} (R_n / n = {:.3}), first-coordinate range = {r1}", r as f64 / n as f64);

    // x_n is the sum over rows of orientation times horizontal local time
    let x = first_coordinate_decomposition(&path, &env)?;
    assert_eq!(x, path.end().0);
    println!("horizontal steps: {}", horizontal_local_time(&path).total());

    // quenched: one fixed environment, fresh step randomness
    let mut fixed = Environment::seeded(11);
    let a = simulate_quenched(&mut fixed, p, 1000, derive_stream(11, 1))?;
    let b = simulate_quenched(&mut fixed, p, 1000, derive_stream(11, 2))?;
    println!("two quenched walks in one environment end at {:?} and {:?}", a.end(), b.end());

    let skew = skew_product_path(p, 1000, derive_stream(5, 0))?;
    println!("skew-product walk ends at {:?}", skew.end());
    Ok(())
}

#[allow(dead_code)]
fn main() -> rangewalk::Result<()> {
    run_example()
}
