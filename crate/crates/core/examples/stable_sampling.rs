// Stable laws, lattice laws and reproducible random streams.

use num_complex::Complex64;
use rangewalk::stable_core::{derive_stream, sample_lattice, LatticeLaw, StableLaw};

pub fn run_example() -> rangewalk::Result<()> {
    // every trial owns a stream; re-deriving it replays the same words
    let a = derive_stream(42, 7);
    let b = derive_stream(42, 7);
    assert_eq!(a.word_at(1000), b.word_at(1000));

    let laws = [
        StableLaw::new(2.0, 1.0, 0.0)?,
        StableLaw::new(1.5, 1.0, 0.5)?,
        StableLaw::new(1.0, 1.0, 0.0)?,
        StableLaw::new(0.8, 1.0, 0.0)?,
    ];
    let n = 20_000;
    for (i, law) in laws.iter().enumerate() {
        let mut rng = derive_stream(42, 100 + i as u64);
        let xs: Vec<f64> = (0..n).map(|_| law.sample(&mut rng)).collect();
        for u in [0.3, 1.0, 3.0] {
            let empirical: Complex64 =
                xs.iter().map(|&x| Complex64::new(0.0, u * x).exp()).sum::<Complex64>() / n as f64;
            let exact = law.characteristic_function(u);
            let gap = (empirical - exact).norm();
            println!("index {:.1} u {u:>3}: |empirical - exact| = {gap:.4}", law.index());
            assert!(gap < 6.0 / (n as f64).sqrt());
        }
    }

    let pareto = LatticeLaw::ParetoTail {
        index: 1.5,
        tail_constant: 0.1,
    };
    pareto.validate()?;
    let mut rng = derive_stream(42, 1);
    let draws: Vec<i64> = (0..10).map(|_| sample_lattice(&pareto, &mut rng)).collect();
    println!("pareto_tail(1.5) draws: {draws:?}");
    println!("P(|X| > 20) = {:.5}", pareto.tail(20));
    Ok(())
}

#[allow(dead_code)]
fn main() -> rangewalk::Result<()> {
    run_example()
}
