// Sampling the scaling limit of random walk in random scenery.

use rangewalk::limit_process::{
    default_cell_width, estimate_local_time, functionals, k_p, kesten_spitzer_sample, limit_path, sample_y_path,
    TimeGrid,
};
use rangewalk::stable_core::{derive_stream, StableLaw};

pub fn run_example() -> rangewalk::Result<()> {
    // unit-variance walk and scenery both scale to Brownian motion
    let bm = StableLaw::symmetric(2.0, 0.5)?;
    let m = 1 << 12;
    let h = default_cell_width(&bm, m);

    let y = sample_y_path(&bm, m, &mut derive_stream(1, 0));
    let lt = estimate_local_time(&y, h, 1.0)?;
    println!("L_1(0) ~ {:.3}, occupation {:.3}", lt.at(0.0), lt.occupation());

    let paths = 200;
    let mut spread = 0.0;
    for i in 0..paths {
        let delta = limit_path(&bm, &bm, m, h, derive_stream(2, i))?;
        spread += functionals(&delta).spread / paths as f64;
    }
    println!("E[sup - inf of Delta on [0,1]] ~ {spread:.3}");
    println!("first-coordinate constant K_0.5 = {:.4}", k_p(0.5)?);

    let at = TimeGrid::Points(vec![0.25, 0.5, 1.0]);
    let cauchy_scenery = StableLaw::symmetric(1.0, 1.0)?;
    let sample = kesten_spitzer_sample(&bm, &cauchy_scenery, m, h, &at, derive_stream(3, 0))?;
    println!("Cauchy scenery: Delta at {:?} = {:?}", sample.times, sample.values);
    Ok(())
}

#[allow(dead_code)]
fn main() -> rangewalk::Result<()> {
    run_example()
}
