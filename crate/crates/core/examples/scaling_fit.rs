// Monte Carlo experiments and log-log exponent fits.

use rangewalk::mc_harness::{
    convergence_diagnostic, expected_exponent, run_experiment, scaling_fit, ExperimentSpec, ModelSpec, Statistic,
};

pub fn run_example() -> rangewalk::Result<()> {
    let model = ModelSpec::Cp { p: 0.5 };
    let sizes: Vec<u64> = (8..=14).map(|e| 1u64 << e).collect();
    let spec = ExperimentSpec::new(
        model.clone(),
        sizes,
        100,
        2024,
        vec![Statistic::FirstRange, Statistic::Range],
    );
    let result = run_experiment(&spec, None)?;

    let points: Vec<(f64, f64)> = result
        .series(Statistic::FirstRange)
        .iter()
        .map(|(n, s)| (*n as f64, s.mean))
        .collect();
    let fit = scaling_fit(&points)?;
    println!(
        "first-coordinate range: slope {:.3} +/- {:.3} (expected {:?})",
        fit.slope,
        fit.slope_ci_half(0.99).unwrap_or(f64::NAN),
        expected_exponent(&model, Statistic::FirstRange)
    );

    let ratios: Vec<(u64, _)> = result
        .series(Statistic::Range)
        .into_iter()
        .map(|(n, s)| (n, s.scaled(1.0 / n as f64)))
        .collect();
    let report = convergence_diagnostic(&ratios);
    for d in &report.sizes {
        println!("n = {:>6}: R_n / n = {:.4} (variance {:.2e})", d.n, d.mean, d.dispersion);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> rangewalk::Result<()> {
    run_example()
}
