//! Geotechnical layer: magnitude scaling, factor-of-safety profiles from
//! CPT soundings, the three manifestation-index functionals (LPI, LPI_ISH,
//! LSN), MI–PGA_M curve construction with two-parameter saturating fits,
//! and fragility functions mapping an MI to a probability of ground failure.

mod curve;
mod fragility;
mod mi;
mod triggering;

pub use curve::{
    build_mi_curve, build_mi_curve_with, curve_pga_m_grid, eval_mi, fit_ab, fit_grid_candidates,
    write_mi_curves_csv, CurveFit, MiCurve, CURVE_SAMPLES,
};
pub use fragility::{FragilityCurve, FragilityForm, FragilitySet};
pub use mi::{lpi, lpi_ish_default, lsn};
pub use triggering::{demo_triggering, FsProfile, SoilLayer};

use crate::grid::GeoGrid;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GeotechError {
    #[error("magnitude {0} outside the supported range [4.0, 9.5]")]
    MagnitudeOutOfRange(f64),
    #[error("negative PGA {0}")]
    NegativePga(f64),
    #[error("invalid profile: {0}")]
    InvalidProfile(String),
    #[error("invalid fragility curve: {0}")]
    InvalidFragility(String),
    #[error("curve fit needs at least {min} samples, got {got}")]
    TooFewSamples { min: usize, got: usize },
    #[error("curve fit input contains a non-finite or negative sample")]
    BadFitSample,
    #[error("curve fit failed to produce finite parameters")]
    FitDiverged,
}

impl GeotechError {
    pub fn is_numeric(&self) -> bool {
        matches!(self, GeotechError::FitDiverged)
    }
}

/// Manifestation-index family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MiType {
    Lpi,
    LpiIsh,
    Lsn,
}

impl MiType {
    pub const ALL: [MiType; 3] = [MiType::Lpi, MiType::LpiIsh, MiType::Lsn];

    pub fn as_str(&self) -> &'static str {
        match self {
            MiType::Lpi => "LPI",
            MiType::LpiIsh => "LPI_ISH",
            MiType::Lsn => "LSN",
        }
    }

    pub fn parse(s: &str) -> Option<MiType> {
        match s.to_ascii_uppercase().as_str() {
            "LPI" => Some(MiType::Lpi),
            "LPI_ISH" | "LPIISH" => Some(MiType::LpiIsh),
            "LSN" => Some(MiType::Lsn),
            _ => None,
        }
    }
}

impl std::fmt::Display for MiType {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Magnitude scaling factor, capped at 1.8:
/// `min(6.9·exp(−M/4) − 0.058, 1.8)`. Strictly decreasing in M on the
/// uncapped range.
pub fn msf(magnitude: f64) -> Result<f64, GeotechError> {
    if !(4.0..=9.5).contains(&magnitude) || !magnitude.is_finite() {
        return Err(GeotechError::MagnitudeOutOfRange(magnitude));
    }
    Ok((6.9 * (-magnitude / 4.0).exp() - 0.058).min(1.8))
}

/// Magnitude-scaled PGA for a scalar: `PGA_M = PGA / msf(M)`.
pub fn scale_pga_m(pga_g: f64, magnitude: f64) -> Result<f64, GeotechError> {
    if !(pga_g >= 0.0) {
        return Err(GeotechError::NegativePga(pga_g));
    }
    Ok(pga_g / msf(magnitude)?)
}

/// Magnitude-scaled PGA applied cellwise; nodata propagates.
pub fn scale_pga_m_grid(pga: &GeoGrid, magnitude: f64) -> Result<GeoGrid, GeotechError> {
    let factor = msf(magnitude)?;
    Ok(pga.map(|v| v / factor))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{GeoGrid, GridSpec};
    use approx::assert_relative_eq;

    #[test]
    fn msf_reference_magnitude_is_unity() {
        // 6.9·e^(−7.5/4) − 0.058 = 1.00015…
        assert!((msf(7.5).unwrap() - 1.0).abs() < 1e-3);
    }

    #[test]
    fn msf_large_magnitude() {
        assert!((msf(9.0).unwrap() - 0.669).abs() < 1e-3);
    }

    #[test]
    fn msf_cap_engages_at_low_magnitude() {
        // Uncapped value at M=4.5 is 2.182.
        assert_eq!(msf(4.5).unwrap(), 1.8);
        assert!((6.9 * (-4.5f64 / 4.0).exp() - 0.058 - 2.182).abs() < 1e-3);
    }

    #[test]
    fn msf_rejects_out_of_range() {
        assert!(msf(3.9).is_err());
        assert!(msf(9.6).is_err());
        assert!(msf(f64::NAN).is_err());
    }

    #[test]
    fn msf_strictly_decreasing_past_cap() {
        let mut prev = msf(5.3).unwrap();
        let mut m = 5.3 + 0.01;
        while m <= 9.5 {
            let cur = msf(m).unwrap();
            assert!(cur < prev, "msf not decreasing at M={m}");
            prev = cur;
            m += 0.01;
        }
    }

    #[test]
    fn scale_pga_m_examples() {
        assert!((scale_pga_m(0.3, 7.5).unwrap() - 0.300).abs() < 1e-3);
        assert!((scale_pga_m(0.3, 9.0).unwrap() - 0.448).abs() < 5e-4);
        assert_eq!(scale_pga_m(0.0, 6.0).unwrap(), 0.0);
        assert!(scale_pga_m(-0.1, 6.0).is_err());
    }

    #[test]
    fn scale_pga_m_grid_propagates_nodata() {
        let spec = GridSpec::new(1, 2, 1.0, 0.0, 0.0).unwrap();
        let mut g = GeoGrid::filled(spec, 0.3).unwrap();
        g.set(0, 1, None);
        let scaled = scale_pga_m_grid(&g, 9.0).unwrap();
        assert_relative_eq!(scaled.get(0, 0).unwrap(), 0.3 / msf(9.0).unwrap());
        assert_eq!(scaled.get(0, 1), None);
    }
}
