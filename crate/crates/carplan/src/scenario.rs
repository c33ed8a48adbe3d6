//! JSON scenario files.
//!
//! A scenario file bundles everything a planning run needs: the map (inline
//! shape list or a PGM raster), start and goal poses, the vehicle, the
//! motion model, cost weights, discretization and limits. Angles cross this
//! boundary in degrees and are converted to radians exactly once, during
//! [`ScenarioFile::resolve`]. Unknown fields are rejected so that typos
//! fail loudly instead of silently falling back to defaults.

use crate::geometry::{CollisionMode, Footprint, Pose};
use crate::model::{ConfigError, ControlSet, Model, VehicleSpec};
use crate::search::{CostConfig, Scenario, SearchConfig};
use crate::world::{load_raster, BuildError, GridBuilder, RasterError, RasterImportConfig};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};
use thiserror::Error;

/// Errors arising while reading or resolving a scenario file.
#[derive(Debug, Error)]
pub enum ScenarioError {
    #[error("failed to parse scenario JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("failed to read {path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error(transparent)]
    Raster(#[from] RasterError),
    #[error(transparent)]
    Build(#[from] BuildError),
    #[error(transparent)]
    Config(#[from] ConfigError),
}

/// Top-level scenario document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioFile {
    pub map: MapSpec,
    pub start: PoseSpec,
    pub goal: PoseSpec,
    pub vehicle: VehicleFileSpec,
    pub model: ModelSpec,
    #[serde(default)]
    pub costs: CostsSpec,
    #[serde(default)]
    pub discretization: DiscretizationSpec,
    #[serde(default)]
    pub limits: LimitsSpec,
    /// Optional override for the collision check; defaults to the full
    /// footprint test.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub collision_mode: Option<CollisionModeSpec>,
}

/// Map source: either an inline shape list or an external PGM raster.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", deny_unknown_fields)]
pub enum MapSpec {
    Grid(GridMapSpec),
    Pgm(PgmMapSpec),
}

/// Inline map built from primitive shapes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GridMapSpec {
    pub width: usize,
    pub height: usize,
    #[serde(default = "default_cell_size")]
    pub cell_size: f64,
    #[serde(default)]
    pub shapes: Vec<ShapeSpec>,
    #[serde(default)]
    pub clears: Vec<RectSpec>,
}

/// Map imported from a PGM grayscale image.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PgmMapSpec {
    /// Raster path, resolved relative to the scenario file's directory.
    pub path: String,
    #[serde(default = "default_threshold")]
    pub threshold: f64,
    #[serde(default)]
    pub invert: bool,
    #[serde(default = "default_cell_size")]
    pub cell_size: f64,
}

/// An obstacle primitive in cell coordinates.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum ShapeSpec {
    Rect {
        x0: i64,
        y0: i64,
        x1: i64,
        y1: i64,
    },
    Circle {
        cx: f64,
        cy: f64,
        r: f64,
    },
    Border {
        thickness: usize,
    },
}

/// Half-open cell rectangle used for carving free space.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RectSpec {
    pub x0: i64,
    pub y0: i64,
    pub x1: i64,
    pub y1: i64,
}

/// A pose with the heading in degrees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PoseSpec {
    pub x: f64,
    pub y: f64,
    pub theta_deg: f64,
}

impl PoseSpec {
    fn to_pose(&self) -> Pose {
        Pose::new(self.x, self.y, self.theta_deg.to_radians())
    }
}

/// Vehicle description with the steering limit in degrees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VehicleFileSpec {
    pub wheelbase: f64,
    pub length: f64,
    pub width: f64,
    pub v_max: f64,
    pub delta_max_deg: f64,
}

/// Motion model selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ModelSpec {
    Kinematic,
    Geometric,
}

impl From<ModelSpec> for Model {
    fn from(spec: ModelSpec) -> Self {
        match spec {
            ModelSpec::Kinematic => Model::Kinematic,
            ModelSpec::Geometric => Model::Geometric,
        }
    }
}

/// Collision-check selector.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CollisionModeSpec {
    Footprint,
    Midpoint,
}

impl From<CollisionModeSpec> for CollisionMode {
    fn from(spec: CollisionModeSpec) -> Self {
        match spec {
            CollisionModeSpec::Footprint => CollisionMode::Footprint,
            CollisionModeSpec::Midpoint => CollisionMode::Midpoint,
        }
    }
}

/// Cost weights; every field defaults to the library default.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CostsSpec {
    #[serde(default = "default_steer_weight")]
    pub steer_weight: f64,
    #[serde(default = "default_one")]
    pub reverse_penalty: f64,
    #[serde(default = "default_one")]
    pub heading_weight: f64,
    #[serde(default = "default_one")]
    pub heuristic_weight: f64,
}

impl Default for CostsSpec {
    fn default() -> Self {
        let costs = CostConfig::default();
        Self {
            steer_weight: costs.steer_weight,
            reverse_penalty: costs.reverse_penalty,
            heading_weight: costs.heading_weight,
            heuristic_weight: costs.heuristic_weight,
        }
    }
}

/// Control sampling; absent fields fall back to vehicle-derived defaults.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DiscretizationSpec {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub v_samples: Option<Vec<f64>>,
    /// Steering samples in degrees.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub delta_samples_deg: Option<Vec<f64>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dt: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub arc_len: Option<f64>,
    #[serde(default = "default_theta_bins")]
    pub theta_bins: usize,
}

impl DiscretizationSpec {
    fn theta_bins_or_default(&self) -> usize {
        if self.theta_bins == 0 {
            default_theta_bins()
        } else {
            self.theta_bins
        }
    }
}

/// Search limits.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LimitsSpec {
    #[serde(default = "default_max_expansions")]
    pub max_expansions: usize,
}

impl Default for LimitsSpec {
    fn default() -> Self {
        Self {
            max_expansions: default_max_expansions(),
        }
    }
}

fn default_cell_size() -> f64 {
    1.0
}
fn default_threshold() -> f64 {
    0.5
}
fn default_steer_weight() -> f64 {
    CostConfig::default().steer_weight
}
fn default_one() -> f64 {
    1.0
}
fn default_theta_bins() -> usize {
    16
}
fn default_max_expansions() -> usize {
    200_000
}

impl ScenarioFile {
    /// Parse a scenario from JSON text.
    pub fn from_json(text: &str) -> Result<Self, ScenarioError> {
        Ok(serde_json::from_str(text)?)
    }

    /// Read and parse a scenario file.
    pub fn from_path(path: &Path) -> Result<Self, ScenarioError> {
        let text = std::fs::read_to_string(path).map_err(|source| ScenarioError::Io {
            path: path.to_path_buf(),
            source,
        })?;
        Self::from_json(&text)
    }

    /// Serialize back to pretty-printed JSON.
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("scenario serialization cannot fail")
    }

    /// Turn the document into a runnable [`Scenario`]. Relative raster
    /// paths are resolved against `base_dir`.
    pub fn resolve(&self, base_dir: &Path) -> Result<Scenario, ScenarioError> {
        let (grid, cell_size) = match &self.map {
            MapSpec::Grid(spec) => {
                let mut builder = GridBuilder::new(spec.width, spec.height, spec.cell_size);
                for shape in &spec.shapes {
                    builder = match *shape {
                        ShapeSpec::Rect { x0, y0, x1, y1 } => builder.rect(x0, y0, x1, y1),
                        ShapeSpec::Circle { cx, cy, r } => builder.circle(cx, cy, r),
                        ShapeSpec::Border { thickness } => builder.border(thickness),
                    };
                }
                for clear in &spec.clears {
                    builder = builder.clear(clear.x0, clear.y0, clear.x1, clear.y1);
                }
                (builder.build()?, spec.cell_size)
            }
            MapSpec::Pgm(spec) => {
                let raster_path = base_dir.join(&spec.path);
                let bytes = std::fs::read(&raster_path).map_err(|source| ScenarioError::Io {
                    path: raster_path.clone(),
                    source,
                })?;
                let config = RasterImportConfig {
                    threshold: spec.threshold,
                    invert: spec.invert,
                    cell_size: spec.cell_size,
                };
                (load_raster(&bytes, &config)?, spec.cell_size)
            }
        };

        let vehicle = VehicleSpec {
            wheelbase: self.vehicle.wheelbase,
            max_speed: self.vehicle.v_max,
            max_steer: self.vehicle.delta_max_deg.to_radians(),
            footprint: Footprint::new(self.vehicle.length, self.vehicle.width),
        };
        vehicle.validate()?;

        let mut controls = ControlSet::defaults(&vehicle, cell_size);
        let disc = &self.discretization;
        if let Some(v) = &disc.v_samples {
            controls.speeds = v.clone();
        }
        if let Some(deltas) = &disc.delta_samples_deg {
            controls.steers = deltas.iter().map(|d| d.to_radians()).collect();
        }
        if let Some(dt) = disc.dt {
            controls.dt = dt;
        }
        if let Some(arc_len) = disc.arc_len {
            controls.arc_length = arc_len;
        }

        let costs = CostConfig {
            steer_weight: self.costs.steer_weight,
            reverse_penalty: self.costs.reverse_penalty,
            heading_weight: self.costs.heading_weight,
            heuristic_weight: self.costs.heuristic_weight,
        };

        let search = SearchConfig {
            theta_bins: disc.theta_bins_or_default(),
            collision_mode: self
                .collision_mode
                .map(CollisionMode::from)
                .unwrap_or(CollisionMode::Footprint),
            max_expansions: self.limits.max_expansions,
            ..SearchConfig::default()
        };

        let scenario = Scenario {
            grid,
            start: self.start.to_pose(),
            goal: self.goal.to_pose(),
            vehicle,
            model: self.model.into(),
            controls,
            costs,
            search,
        };
        scenario.validate()?;
        Ok(scenario)
    }
}
