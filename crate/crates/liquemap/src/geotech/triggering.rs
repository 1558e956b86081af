//! Simplified stress-based triggering chain turning a CPT sounding and a
//! magnitude-scaled PGA into a per-depth factor-of-safety profile.
//!
//! The chain is a documented stand-in with fixed constants: total stress
//! from unit weights of 18 kN/m³ above the water table and 19 below,
//! hydrostatic pore pressure, a bilinear depth-reduction factor, cyclic
//! stress ratio `0.65·pga_m·(σv/σ'v)·rd`, overburden-normalized tip
//! resistance capped at 254, and a two-branch cyclic resistance curve.

use super::GeotechError;
use crate::ingest::CptProfile;

const GAMMA_ABOVE_GWT: f64 = 18.0; // kN/m³
const GAMMA_BELOW_GWT: f64 = 19.0; // kN/m³
const GAMMA_WATER: f64 = 9.81; // kN/m³
const ATMOSPHERIC_KPA: f64 = 101.3;
const FS_CAP: f64 = 4.0;
const MAX_EPS_V: f64 = 0.05;

/// One depth interval of a factor-of-safety profile. `depth` is the bottom
/// of the interval; the interval spans `[depth - thickness, depth]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SoilLayer {
    /// Bottom depth of the layer, m.
    pub depth: f64,
    /// Layer thickness, m.
    pub thickness: f64,
    /// Factor of safety against triggering; `+∞` above the water table or
    /// when there is no demand.
    pub fs: f64,
    /// Post-liquefaction volumetric strain, decimal.
    pub eps_v: f64,
}

impl SoilLayer {
    pub fn top(&self) -> f64 {
        self.depth - self.thickness
    }
}

/// Factor-of-safety and volumetric-strain profile derived from one CPT.
#[derive(Debug, Clone, PartialEq)]
pub struct FsProfile {
    pub cpt_id: String,
    pub layers: Vec<SoilLayer>,
    /// Contiguous surface crust with no triggering (FS > 1 or above the
    /// water table), m.
    pub crust_thickness: f64,
}

impl FsProfile {
    pub fn new(
        cpt_id: impl Into<String>,
        layers: Vec<SoilLayer>,
        crust_thickness: f64,
    ) -> Result<Self, GeotechError> {
        let mut prev_bottom = 0.0f64;
        for (i, layer) in layers.iter().enumerate() {
            if !(layer.thickness > 0.0) {
                return Err(GeotechError::InvalidProfile(format!(
                    "layer {i} has non-positive thickness {}",
                    layer.thickness
                )));
            }
            if layer.top() < prev_bottom - 1e-9 {
                return Err(GeotechError::InvalidProfile(format!(
                    "layer {i} overlaps the previous layer"
                )));
            }
            if layer.fs.is_nan() || layer.fs < 0.0 {
                return Err(GeotechError::InvalidProfile(format!(
                    "layer {i} has invalid FS {}",
                    layer.fs
                )));
            }
            if !(0.0..=0.10).contains(&layer.eps_v) {
                return Err(GeotechError::InvalidProfile(format!(
                    "layer {i} has volumetric strain {} outside [0, 0.10]",
                    layer.eps_v
                )));
            }
            prev_bottom = layer.depth;
        }
        if !(crust_thickness >= 0.0) {
            return Err(GeotechError::InvalidProfile(format!(
                "negative crust thickness {crust_thickness}"
            )));
        }
        Ok(FsProfile {
            cpt_id: cpt_id.into(),
            layers,
            crust_thickness,
        })
    }

    /// Bottom depth of the deepest layer, m.
    pub fn depth(&self) -> f64 {
        self.layers.last().map_or(0.0, |l| l.depth)
    }
}

/// Total vertical stress at depth `z` for a water table at `gwt`, kPa.
fn total_stress(z: f64, gwt: f64) -> f64 {
    GAMMA_ABOVE_GWT * z.min(gwt) + GAMMA_BELOW_GWT * (z - gwt).max(0.0)
}

/// Depth reduction factor, floored at 0.5.
fn depth_reduction(z: f64) -> f64 {
    let rd = if z <= 9.15 {
        1.0 - 0.00765 * z
    } else {
        1.174 - 0.0267 * z
    };
    rd.max(0.5)
}

/// Evaluate the triggering chain for every sample of a CPT at one
/// magnitude-scaled PGA. Layers span the intervals between consecutive
/// sample depths (the first from the surface); stresses and resistances are
/// evaluated at the sample depth. FS is `+∞` above the water table or when
/// `pga_m` is zero, and capped at 4 otherwise.
pub fn demo_triggering(cpt: &CptProfile, pga_m: f64) -> Result<FsProfile, GeotechError> {
    if !(pga_m >= 0.0) || !pga_m.is_finite() {
        return Err(GeotechError::NegativePga(pga_m));
    }
    let gwt = cpt.gwt_depth;
    let mut layers = Vec::with_capacity(cpt.samples.len());
    let mut prev_depth = 0.0f64;
    let mut crust = None;
    for sample in &cpt.samples {
        let z = sample.depth;
        let thickness = z - prev_depth;
        let fs = if pga_m == 0.0 || z <= gwt {
            f64::INFINITY
        } else {
            let sigma_v = total_stress(z, gwt);
            let pore = GAMMA_WATER * (z - gwt).max(0.0);
            let sigma_v_eff = (sigma_v - pore).max(1.0);
            let csr = 0.65 * pga_m * (sigma_v / sigma_v_eff) * depth_reduction(z);
            let qc1n = ((sample.qc / ATMOSPHERIC_KPA) * (ATMOSPHERIC_KPA / sigma_v_eff).sqrt())
                .clamp(0.0, 254.0);
            let crr = if qc1n < 50.0 {
                0.833 * (qc1n / 1000.0) + 0.05
            } else {
                93.0 * (qc1n / 1000.0).powi(3) + 0.08
            };
            (crr / csr).min(FS_CAP)
        };
        let eps_v = MAX_EPS_V * ((2.0 - fs) / 1.5).clamp(0.0, 1.0);
        if crust.is_none() && fs.is_finite() && fs <= 1.0 {
            crust = Some(prev_depth);
        }
        layers.push(SoilLayer {
            depth: z,
            thickness,
            fs,
            eps_v,
        });
        prev_depth = z;
    }
    let crust_thickness = crust.unwrap_or(prev_depth);
    FsProfile::new(cpt.cpt_id.clone(), layers, crust_thickness)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ingest::{CptProfile, CptSample};
    use approx::assert_relative_eq;

    fn single_sample_cpt(z: f64, qc: f64, gwt: f64) -> CptProfile {
        CptProfile::new(
            "test",
            0.0,
            0.0,
            gwt,
            vec![CptSample {
                depth: z,
                qc,
                fs_sleeve: 10.0,
            }],
        )
        .unwrap()
    }

    // Independent scalar recomputation of the documented chain.
    fn oracle_fs(z: f64, qc: f64, gwt: f64, pga_m: f64) -> (f64, f64, f64, f64) {
        let sigma_v = 18.0 * z.min(gwt) + 19.0 * (z - gwt).max(0.0);
        let u = 9.81 * (z - gwt).max(0.0);
        let sigma_v_eff = (sigma_v - u).max(1.0);
        let rd = if z <= 9.15 {
            1.0 - 0.00765 * z
        } else {
            1.174 - 0.0267 * z
        }
        .max(0.5);
        let csr = 0.65 * pga_m * (sigma_v / sigma_v_eff) * rd;
        let qc1n = ((qc / 101.3) * (101.3 / sigma_v_eff).sqrt()).clamp(0.0, 254.0);
        let crr = if qc1n < 50.0 {
            0.833 * (qc1n / 1000.0) + 0.05
        } else {
            93.0 * (qc1n / 1000.0).powi(3) + 0.08
        };
        (sigma_v, sigma_v_eff, csr, (crr / csr).min(4.0))
    }

    #[test]
    fn zero_demand_gives_infinite_fs() {
        let cpt = single_sample_cpt(5.0, 3000.0, 1.0);
        let profile = demo_triggering(&cpt, 0.0).unwrap();
        assert!(profile.layers.iter().all(|l| l.fs.is_infinite()));
        assert!(profile.layers.iter().all(|l| l.eps_v == 0.0));
        assert_eq!(profile.crust_thickness, profile.depth());
    }

    #[test]
    fn single_sample_matches_hand_evaluation() {
        // z=5 m, qc=3000 kPa, gwt=1 m, pga_m=0.3 g with γ=18 above / 19
        // below the water table: σv = 18·1 + 19·4 = 94, u = 39.24,
        // σ'v = 54.76, rd = 0.96175, FS ≈ 0.2595.
        let cpt = single_sample_cpt(5.0, 3000.0, 1.0);
        let profile = demo_triggering(&cpt, 0.3).unwrap();
        let layer = profile.layers[0];

        let (sigma_v, sigma_v_eff, csr, fs) = oracle_fs(5.0, 3000.0, 1.0, 0.3);
        assert_relative_eq!(sigma_v, 94.0, epsilon = 1e-12);
        assert_relative_eq!(sigma_v - sigma_v_eff, 39.24, epsilon = 1e-12);
        assert_relative_eq!(csr, 0.3219, epsilon = 5e-5);
        assert!((fs - 0.2595).abs() < 1e-4);
        assert_relative_eq!(layer.fs, fs, epsilon = 1e-12);
        assert!(layer.fs <= 1.0);
        assert_eq!(profile.crust_thickness, 0.0);
    }

    #[test]
    fn fs_monotone_in_demand_and_resistance() {
        // FS non-increasing in pga_m, non-decreasing in qc at fixed depth.
        for &z in &[2.0, 5.0, 12.0] {
            let mut prev = f64::INFINITY;
            for &pga in &[0.05, 0.1, 0.2, 0.4, 0.8, 1.6] {
                let p = demo_triggering(&single_sample_cpt(z, 4000.0, 1.0), pga).unwrap();
                let fs = p.layers[0].fs;
                assert!(fs <= prev + 1e-12, "FS increased with pga_m at z={z}");
                prev = fs;
            }
            let mut prev = 0.0;
            for &qc in &[500.0, 2000.0, 8000.0, 20000.0, 60000.0] {
                let p = demo_triggering(&single_sample_cpt(z, qc, 1.0), 0.3).unwrap();
                let fs = p.layers[0].fs;
                assert!(fs >= prev - 1e-12, "FS decreased with qc at z={z}");
                prev = fs;
            }
        }
    }

    #[test]
    fn fs_capped_and_infinite_above_water_table() {
        // Very stiff soil hits the cap of 4.
        let p = demo_triggering(&single_sample_cpt(5.0, 80000.0, 1.0), 0.05).unwrap();
        assert_eq!(p.layers[0].fs, 4.0);
        // Sample above the water table is not evaluated.
        let p = demo_triggering(&single_sample_cpt(2.0, 3000.0, 10.0), 0.5).unwrap();
        assert!(p.layers[0].fs.is_infinite());
    }

    #[test]
    fn strain_model_tracks_fs() {
        let profile = FsProfile::new(
            "s",
            vec![SoilLayer {
                depth: 1.0,
                thickness: 1.0,
                fs: 0.5,
                eps_v: 0.05 * ((2.0f64 - 0.5) / 1.5).clamp(0.0, 1.0),
            }],
            0.0,
        )
        .unwrap();
        assert_relative_eq!(profile.layers[0].eps_v, 0.05);
    }

    #[test]
    fn profile_validation_rejects_bad_layers() {
        let bad_eps = FsProfile::new(
            "x",
            vec![SoilLayer {
                depth: 1.0,
                thickness: 1.0,
                fs: 1.0,
                eps_v: 0.2,
            }],
            0.0,
        );
        assert!(bad_eps.is_err());
        let overlapping = FsProfile::new(
            "x",
            vec![
                SoilLayer {
                    depth: 1.0,
                    thickness: 1.0,
                    fs: 1.0,
                    eps_v: 0.0,
                },
                SoilLayer {
                    depth: 1.5,
                    thickness: 1.0,
                    fs: 1.0,
                    eps_v: 0.0,
                },
            ],
            0.0,
        );
        assert!(overlapping.is_err());
    }
}
