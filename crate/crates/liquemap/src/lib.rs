//! Scenario-earthquake liquefaction hazard and impact forecasting engine.
//!
//! The crate covers the full forward pipeline — ShakeMap PGA ingestion,
//! magnitude scaling, manifestation-index surrogates, fragility-based
//! probability of ground failure (PGF), ensembling — together with the
//! surrogate-training workflow (CPT triggering profiles, MI–PGA curves,
//! bagged regression trees, regression kriging of residuals) and the
//! model-evaluation statistics (Brier score, bootstrap CIs, Moran's I,
//! KS, Cohen's d) and downstream impact overlays (assets, road networks,
//! population exposure).
//!
//! Modules map one-to-one onto the pipeline stages:
//!
//! * [`grid`] — georeferenced rasters, ESRI ASCII codec, resampling
//! * [`ingest`] — ShakeMap XML, CPT CSV, case-history/asset/network loaders
//! * [`geotech`] — MSF, triggering profiles, LPI/LPI_ISH/LSN, curve fitting,
//!   fragility functions
//! * [`surrogate`] — bagged regression-tree ensembles with CV grid search
//! * [`kriging`] — semivariograms and simple kriging of model residuals
//! * [`hazard`] — the scenario pipeline producing MI/PGF/ensemble rasters
//! * [`stats`] — Brier score, bootstrap, Moran's I, stratification, reports
//! * [`impact`] — asset sampling, network exposure, population binning
//! * [`cli`] — command orchestration behind the `liquemap` binary
//!
//! Everything is deterministic: all randomness flows from explicit seeds
//! through counter-based per-task streams, so results are independent of
//! thread count.

pub mod cli;
pub mod error;
pub mod geo;
pub mod geotech;
pub mod grid;
pub mod hazard;
pub mod impact;
pub mod ingest;
pub mod kriging;
pub mod seeds;
pub mod stats;
pub mod surrogate;

pub use error::{Error, Result};
pub use grid::{GeoGrid, GridSpec};
