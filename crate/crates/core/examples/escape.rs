// Escape probabilities: exact short-horizon values against simulation.

use rangewalk::cp_walk::exact_no_return_probability;
use rangewalk::mc_harness::{estimate_escape, ModelSpec};
use rangewalk::rwrs::{exact_no_return_z, RwrsModel};

pub fn run_example() -> rangewalk::Result<()> {
    let cp = ModelSpec::Cp { p: 0.5 };
    for horizon in [2, 6, 12] {
        let exact = exact_no_return_probability(0.5, horizon as usize)?;
        let est = estimate_escape(&cp, horizon, 40_000, 8, None)?;
        let se = est.std_error.unwrap_or(0.0);
        println!("CP   L = {horizon:>2}: exact {exact:.5}, simulated {:.5} +/- {:.5}", est.mean, se);
        assert!((est.mean - exact).abs() <= 5.0 * se + 1e-12);
    }

    let model = RwrsModel::simple_rademacher();
    let rw = ModelSpec::Rwrs { model: model.clone() };
    let exact = exact_no_return_z(&model, 10)?;
    let est = estimate_escape(&rw, 10, 40_000, 8, None)?;
    println!("RWRS L = 10: exact {exact:.5}, simulated {:.5}", est.mean);
    Ok(())
}

#[allow(dead_code)]
fn main() -> rangewalk::Result<()> {
    run_example()
}
