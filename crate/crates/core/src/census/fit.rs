//! Least-squares exponent of `log count` against `log H`.

use serde::Serialize;

use super::count::CensusRecord;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Serialize)]
pub struct ExponentFit {
    pub label: String,
    pub records: Vec<CensusRecord>,
    pub slope: f64,
    pub stderr: f64,
    /// Reported only; no constant is asserted.
    pub intercept: f64,
    pub h_range: (f64, f64),
    /// Records with positive count used in the fit.
    pub points: usize,
}

/// Fits the records of one label; records with zero count are ignored.
pub fn exponent_fit(records: &[CensusRecord]) -> Result<ExponentFit> {
    let Some(first) = records.first() else {
        return Err(Error::InsufficientData);
    };
    if records.iter().any(|r| r.label != first.label) {
        return Err(Error::InvalidParameters("records must share one label".into()));
    }
    let used: Vec<&CensusRecord> = records.iter().filter(|r| r.count > 0 && r.h > 0.0).collect();
    if used.len() < 3 {
        return Err(Error::InsufficientData);
    }
    let xs: Vec<f64> = used.iter().map(|r| r.h.ln()).collect();
    let ys: Vec<f64> = used.iter().map(|r| (r.count as f64).ln()).collect();
    let (slope, intercept, stderr) = least_squares(&xs, &ys)?;
    let hs = used.iter().map(|r| r.h);
    let h_range = (hs.clone().fold(f64::INFINITY, f64::min), hs.fold(f64::NEG_INFINITY, f64::max));
    Ok(ExponentFit { label: first.label.clone(), records: records.to_vec(), slope, stderr, intercept, h_range, points: used.len() })
}

/// `(slope, intercept, stderr of slope)` for `y = a x + b`.
pub fn least_squares(xs: &[f64], ys: &[f64]) -> Result<(f64, f64, f64)> {
    let n = xs.len() as f64;
    if xs.len() < 3 || xs.len() != ys.len() {
        return Err(Error::InsufficientData);
    }
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
    if sxx == 0.0 {
        return Err(Error::InsufficientData);
    }
    let sxy: f64 = xs.iter().zip(ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let slope = sxy / sxx;
    let intercept = my - slope * mx;
    let ssr: f64 = xs.iter().zip(ys).map(|(x, y)| (y - intercept - slope * x).powi(2)).sum();
    let stderr = (ssr / (n - 2.0) / sxx).sqrt();
    Ok((slope, intercept, stderr))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec(h: f64, count: u64) -> CensusRecord {
        CensusRecord { n: 3, h, mode: "exhaustive".into(), seed: None, label: "x".into(), count, runtime_ms: 0 }
    }

    #[test]
    fn synthetic_slopes() {
        let cubes: Vec<_> = [2.0, 3.0, 5.0, 8.0].iter().map(|&h: &f64| rec(h, h.powi(3) as u64)).collect();
        let f = exponent_fit(&cubes).unwrap();
        assert!((f.slope - 3.0).abs() < 1e-12 && f.stderr < 1e-9);
        let flat: Vec<_> = [2.0, 3.0, 5.0].iter().map(|&h| rec(h, 7)).collect();
        assert!(exponent_fit(&flat).unwrap().slope.abs() < 1e-12);
        assert!(matches!(exponent_fit(&[rec(2.0, 1), rec(3.0, 0), rec(4.0, 5)]), Err(Error::InsufficientData)));
    }
}
