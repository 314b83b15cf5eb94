//! CSV ingestion and emission of boundary samples.
//!
//! The sample format is `theta,re,im` with a header row, θ strictly
//! increasing in `[0, 2π)`.  Uniformly spaced samples (any offset) are
//! resampled onto the requested grid by trigonometric interpolation;
//! non-uniform files are rejected.

use num_complex::Complex64;
use rustfft::FftPlanner;
use std::f64::consts::TAU;
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::grid::{BoundaryFunction, CircleGrid};
use crate::series::{synthesize, FourierSeries};

/// Angular slack allowed when checking uniform spacing.
const UNIFORM_TOL: f64 = 1e-9;

/// Write `theta,re,im` rows for every node.
pub fn write_samples_csv(path: &Path, f: &BoundaryFunction) -> Result<()> {
    let mut out = std::io::BufWriter::new(std::fs::File::create(path)?);
    writeln!(out, "theta,re,im")?;
    for (k, v) in f.values().iter().enumerate() {
        writeln!(out, "{},{},{}", f.grid().theta(k), v.re, v.im)?;
    }
    Ok(())
}

/// Read samples and interpolate them onto `target`.
pub fn read_samples_csv(path: &Path, target: CircleGrid) -> Result<BoundaryFunction> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .trim(csv::Trim::All)
        .from_path(path)?;
    let headers = reader.headers()?.clone();
    let expected = ["theta", "re", "im"];
    if headers.iter().zip(expected).any(|(h, e)| h != e) {
        return Err(Error::NonUniformSamples {
            reason: format!("header must be theta,re,im, got {}", headers.iter().collect::<Vec<_>>().join(",")),
        });
    }
    let mut thetas = Vec::new();
    let mut values = Vec::new();
    for record in reader.records() {
        let record = record?;
        let parse = |i: usize| -> Result<f64> {
            record
                .get(i)
                .ok_or_else(|| Error::NonUniformSamples {
                    reason: "short row".into(),
                })?
                .parse::<f64>()
                .map_err(|e| Error::NonUniformSamples {
                    reason: format!("bad number: {e}"),
                })
        };
        thetas.push(parse(0)?);
        values.push(Complex64::new(parse(1)?, parse(2)?));
    }
    interpolate_uniform(&thetas, values, target)
}

fn interpolate_uniform(
    thetas: &[f64],
    mut values: Vec<Complex64>,
    target: CircleGrid,
) -> Result<BoundaryFunction> {
    let m = thetas.len();
    if m < 4 {
        return Err(Error::NonUniformSamples {
            reason: format!("need at least 4 samples, got {m}"),
        });
    }
    for w in thetas.windows(2) {
        if w[1] <= w[0] {
            return Err(Error::NonUniformSamples {
                reason: "theta must be strictly increasing".into(),
            });
        }
    }
    if thetas[0] < 0.0 || *thetas.last().unwrap() >= TAU {
        return Err(Error::NonUniformSamples {
            reason: "theta must lie in [0, 2π)".into(),
        });
    }
    let spacing = TAU / m as f64;
    let offset = thetas[0];
    for (j, &t) in thetas.iter().enumerate() {
        if (t - (offset + j as f64 * spacing)).abs() > UNIFORM_TOL {
            return Err(Error::NonUniformSamples {
                reason: format!("node {j} off the uniform grid by more than {UNIFORM_TOL:e}"),
            });
        }
    }

    // Same nodes as the target: take the samples as they are.
    if m == target.n() && offset.abs() <= UNIFORM_TOL {
        return BoundaryFunction::new(target, values);
    }

    // Fourier coefficients of the offset grid: c_k = e^{-ik·offset}·X_k/m.
    FftPlanner::new().plan_fft_forward(m).process(&mut values);
    let half = (m - 1) / 2;
    let order = half.min(target.n() / 2 - 1);
    let mut s = FourierSeries::zero(order);
    for k in 0..=order as i64 {
        let phase = Complex64::from_polar(1.0, -(k as f64) * offset);
        s.set_coeff(k, values[k as usize] * phase / m as f64);
        if k > 0 {
            let phase = Complex64::from_polar(1.0, k as f64 * offset);
            s.set_coeff(-k, values[m - k as usize] * phase / m as f64);
        }
    }
    synthesize(&s, target)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn roundtrip_dir() -> std::path::PathBuf {
        let dir = std::env::temp_dir().join("windext-io-tests");
        std::fs::create_dir_all(&dir).unwrap();
        dir
    }

    #[test]
    fn roundtrip_preserves_samples() {
        let g = CircleGrid::new(256).unwrap();
        let f = BoundaryFunction::from_fn(g, |z| z * z + 0.5 * z.conj()).unwrap();
        let path = roundtrip_dir().join("roundtrip.csv");
        write_samples_csv(&path, &f).unwrap();
        let back = read_samples_csv(&path, g).unwrap();
        assert!(f.max_abs_diff(&back) < 1e-12);
    }

    #[test]
    fn resamples_between_grid_sizes() {
        let coarse = CircleGrid::new(128).unwrap();
        let fine = CircleGrid::new(512).unwrap();
        let f = BoundaryFunction::from_fn(coarse, |z| z + 2.0 * z * z).unwrap();
        let path = roundtrip_dir().join("resample.csv");
        write_samples_csv(&path, &f).unwrap();
        let up = read_samples_csv(&path, fine).unwrap();
        let expect = BoundaryFunction::from_fn(fine, |z| z + 2.0 * z * z).unwrap();
        assert!(up.max_abs_diff(&expect) < 1e-11);
    }

    #[test]
    fn rejects_nonuniform_nodes() {
        let path = roundtrip_dir().join("nonuniform.csv");
        let mut out = String::from("theta,re,im\n");
        for j in 0..64 {
            let t = TAU * (j as f64 / 64.0).powf(1.1);
            out.push_str(&format!("{t},1.0,0.0\n"));
        }
        std::fs::write(&path, out).unwrap();
        let g = CircleGrid::new(64).unwrap();
        assert!(matches!(
            read_samples_csv(&path, g),
            Err(Error::NonUniformSamples { .. })
        ));
    }

    #[test]
    fn rejects_decreasing_theta() {
        let path = roundtrip_dir().join("decreasing.csv");
        std::fs::write(&path, "theta,re,im\n0.0,1,0\n0.2,1,0\n0.1,1,0\n0.3,1,0\n").unwrap();
        let g = CircleGrid::new(64).unwrap();
        assert!(read_samples_csv(&path, g).is_err());
    }
}
