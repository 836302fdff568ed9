//! Distance and kernel maps, their inverses, and probability bounds.

pub mod bounds;
pub mod closed_form;
pub mod curve;
pub mod distance;
pub mod inverse;
pub mod subadditivity;

pub use bounds::{
    continuous_extension_bound, decay_threshold_eps, discontinuous_extension_bound, p2_bound, p2_meaningful_radius,
    p2_monte_carlo, pointcloud_bound, quantized_bound_inflation, rate_form, scalar_quantizer_eq, BoundReport,
    ContinuousExtension, DiscontinuousExtension, MonteCarloEstimate, P2Bound, PointCloudFlavor,
};
pub use closed_form::{
    linear_saturation_radius, multibit_map, universal_binary_map, universal_binary_map_l1, BinaryUniversal,
};
pub use curve::{curve_table, linear_grid, log_grid, BinaryParams};
pub use distance::{distance_map, kernel_map, DistanceMapModel, Flavor, DEFAULT_TOL, SATURATION_FRACTION};
pub use inverse::{ambiguity, invert_map, DistanceCurve, Inversion, InversionStatus, LinearMap};
pub use subadditivity::{check_subadditivity, pair_grid, SubadditivityReport, SUBADDITIVITY_SLACK};
