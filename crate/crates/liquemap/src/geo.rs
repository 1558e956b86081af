//! Spherical-earth geometry helpers shared by the kriging, statistics, and
//! impact modules. All rasters live in geographic degrees; distances are
//! haversine kilometres on a sphere of radius 6371 km.

/// Mean earth radius, km.
pub const EARTH_RADIUS_KM: f64 = 6371.0;

/// Kilometres per degree of latitude (and of longitude at the equator).
pub const KM_PER_DEG: f64 = 111.195;

/// Great-circle distance in km between two (lon, lat) points in degrees.
pub fn haversine_km(lon1: f64, lat1: f64, lon2: f64, lat2: f64) -> f64 {
    let phi1 = lat1.to_radians();
    let phi2 = lat2.to_radians();
    let dphi = (lat2 - lat1).to_radians();
    let dlambda = (lon2 - lon1).to_radians();
    let a = (dphi / 2.0).sin().powi(2) + phi1.cos() * phi2.cos() * (dlambda / 2.0).sin().powi(2);
    2.0 * EARTH_RADIUS_KM * a.sqrt().min(1.0).asin()
}

/// Approximate area in km² of a square raster cell of `cell_size_deg`
/// centred at latitude `lat_deg`.
pub fn cell_area_km2(cell_size_deg: f64, lat_deg: f64) -> f64 {
    (KM_PER_DEG * cell_size_deg).powi(2) * lat_deg.to_radians().cos()
}

/// Length in km of a polyline given as (lon, lat) vertices.
pub fn polyline_length_km(vertices: &[(f64, f64)]) -> f64 {
    vertices
        .windows(2)
        .map(|w| haversine_km(w[0].0, w[0].1, w[1].0, w[1].1))
        .sum()
}
