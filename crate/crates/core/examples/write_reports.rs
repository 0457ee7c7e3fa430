//! Deterministic CSV and JSON output, written atomically.

use compacton_lab::report::{csv_string, json_string, write_atomic};
use compacton_lab::verify::{run_suite, SuiteOptions};
use compacton_lab::*;

fn main() -> Result<()> {
    let two = Rational::integer(2);
    let eq = EquationParams::new(1.0, 1.0, 1, two, two, 2)?;
    let p = make_profile(FamilyId::CosCompacton, &eq, &WaveParams::new(vec![1.0], 1.75)?, Extras::default())?;

    let rows: Vec<Vec<f64>> = (0..=8).map(|i| -1.1 * p.half_width + 2.2 * p.half_width * i as f64 / 8.0).map(|x| vec![x, p.evaluate(x)]).collect();
    let csv = csv_string(&["xi", "u"], &rows);
    print!("{csv}");

    let rep = run_suite(&p, &SuiteOptions::default())?;
    let json = json_string(&rep)?;
    let dir = std::env::temp_dir().join("compacton-lab-example");
    std::fs::create_dir_all(&dir).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    write_atomic(&dir.join("profile.csv"), &csv).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    write_atomic(&dir.join("report.json"), &json).map_err(|e| Error::InvalidParameter(e.to_string()))?;
    println!("wrote {}", dir.display());
    Ok(())
}
