// Random walk in random scenery: range, local times and exact small-n laws.

use rangewalk::rwrs::{
    exact_no_return_z, exact_rwrs_law, exponent_delta, normalizer_a, range_z, self_intersections, simulate_rwrs,
    z_spread, RwrsModel,
};
use rangewalk::stable_core::LatticeLaw;

pub fn run_example() -> rangewalk::Result<()> {
    let model = RwrsModel::simple_rademacher();
    let n = 100_000;
    let path = simulate_rwrs(&model, n, 17);
    let a_n = normalizer_a(model.alpha(), model.beta(), n as u64)?;
    println!(
        "n = {n}: range of Z = {}, spread = {}, V_n = {}, a_n = {a_n:.1}, delta = {}",
        range_z(&path.z),
        z_spread(&path.z),
        self_intersections(&path.local_time),
        exponent_delta(model.alpha(), model.beta())
    );

    // with scenery on {-1, 0, 1} the walk Z moves by at most one, so its range is an interval
    let ternary = RwrsModel::new(LatticeLaw::SimpleSymmetric, LatticeLaw::Ternary { p0: 0.3 })?;
    let t = simulate_rwrs(&ternary, 10_000, 4);
    assert_eq!(range_z(&t.z) as i64, z_spread(&t.z));

    let law = exact_rwrs_law(&model, 4)?;
    println!("law of Z_4: {law:?}");
    println!("P(Z_j != 0, j <= 8) = {:.6}", exact_no_return_z(&model, 8)?);

    let heavy = RwrsModel::new(
        LatticeLaw::SimpleSymmetric,
        LatticeLaw::ParetoTail {
            index: 0.8,
            tail_constant: 0.2,
        },
    )?;
    let h = simulate_rwrs(&heavy, 10_000, 9);
    println!("heavy-tailed scenery (beta = 0.8): range {} of 10000", range_z(&h.z));
    Ok(())
}

#[allow(dead_code)]
fn main() -> rangewalk::Result<()> {
    run_example()
}
