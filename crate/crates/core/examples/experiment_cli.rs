// Driving an experiment through the command-line interface.

use std::fs;

use rangewalk::cli;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let dir = tempfile::tempdir()?;
    let config = dir.path().join("experiment.json");
    fs::write(
        &config,
        r#"{
  "experiment": {
    "model": { "type": "rwrs", "model": { "walk": { "kind": "simple_symmetric" },
                                           "scenery": { "kind": "rademacher" } } },
    "sizes": [100, 1000, 10000],
    "trials": 50,
    "master_seed": 1,
    "outputs": ["range", "self_intersections"]
  }
}"#,
    )?;
    let out = dir.path().join("out");
    let args = [
        "rangewalk",
        "run",
        "--config",
        config.to_str().unwrap(),
        "--seed",
        "99",
        "--out",
        out.to_str().unwrap(),
    ];
    let (mut stdout, mut stderr) = (Vec::new(), Vec::new());
    let code = cli::run(args, &mut stdout, &mut stderr);
    assert_eq!(code, 0, "{}", String::from_utf8_lossy(&stderr));
    print!("{}", fs::read_to_string(out.join("results.csv"))?);

    let mut exact = Vec::new();
    let code = cli::run(["rangewalk", "exact", "cp-escape", "--p", "0.5", "-L", "2"], &mut exact, &mut stderr);
    assert_eq!(code, 0);
    print!("exact escape at L = 2: {}", String::from_utf8(exact)?);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
