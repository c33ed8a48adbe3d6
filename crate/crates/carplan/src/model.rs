//! Vehicle models: the Euler-integrated kinematic bicycle and exact
//! circular-arc motion primitives, plus successor generation for the search.
//!
//! Both models produce short motions of roughly one cell in length. The
//! kinematic model integrates the bicycle equations for a fixed time step, so
//! its arcs are polygonal approximations whose error shrinks with the step.
//! The geometric model moves along exact circles of fixed radii, so a motion
//! and its reverse compose to the identity.

use crate::geometry::{pose_in_collision, CollisionMode, Footprint, OccupancyGrid, Pose};
use std::f64::consts::{FRAC_PI_2, SQRT_2};
use thiserror::Error;

/// A speed/steer command held constant over one motion.
///
/// `v` is signed longitudinal speed (negative = reverse) and `delta` the front
/// wheel steering angle, positive left.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Control {
    pub v: f64,
    pub delta: f64,
}

/// Travel direction of a motion primitive.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Reverse,
}

/// Which expansion model the planner uses.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Model {
    /// Euler steps of the kinematic bicycle over a fixed time step.
    Kinematic,
    /// Exact arc and straight primitives at the minimum turning radius.
    Geometric,
}

/// Physical parameters of the planned vehicle.
#[derive(Debug, Clone, PartialEq)]
pub struct VehicleSpec {
    /// Distance between the axles, in world units.
    pub wheelbase: f64,
    /// Speed magnitude cap; sampled speeds live in `[-max_speed, max_speed]`.
    pub max_speed: f64,
    /// Steering magnitude cap, strictly below a quarter turn.
    pub max_steer: f64,
    /// Body rectangle used for footprint collision checking.
    pub footprint: Footprint,
}

impl VehicleSpec {
    /// Check the physical parameters for sanity.
    pub fn validate(&self) -> Result<(), ConfigError> {
        if !(self.wheelbase > 0.0 && self.wheelbase.is_finite()) {
            return Err(ConfigError::Wheelbase(self.wheelbase));
        }
        if !(self.max_speed > 0.0 && self.max_speed.is_finite()) {
            return Err(ConfigError::MaxSpeed(self.max_speed));
        }
        if !(self.max_steer > 0.0 && self.max_steer < FRAC_PI_2) {
            return Err(ConfigError::MaxSteer(self.max_steer));
        }
        Ok(())
    }

    /// Turning radius at full steer: `wheelbase / tan(max_steer)`.
    pub fn min_turn_radius(&self) -> f64 {
        self.wheelbase / self.max_steer.tan()
    }
}

/// Discretized command set the planner expands at every node.
///
/// For the kinematic model, each speed sample is paired with each steer
/// sample and held for `dt`. For the geometric model, arcs of `arc_length`
/// are generated at the minimum turning radius (plus any `extra_radii`) in
/// both turn senses and both directions, along with straight segments.
#[derive(Debug, Clone, PartialEq)]
pub struct ControlSet {
    pub speeds: Vec<f64>,
    pub steers: Vec<f64>,
    /// Integration time per kinematic step, seconds.
    pub dt: f64,
    /// Path length per geometric primitive, world units.
    pub arc_length: f64,
    /// Additional turning radii (each at least the minimum radius) for the
    /// geometric model.
    pub extra_radii: Vec<f64>,
}

impl ControlSet {
    /// The default sampling for a vehicle on a grid with the given cell size:
    /// full speed in both directions, five steer samples, and steps roughly
    /// one cell long.
    ///
    /// For vehicles whose turning is slow relative to the grid (a long
    /// wheelbase or a gentle steering limit), one-cell steps change the
    /// heading by less than a heading bin; every turning successor then
    /// collides with the straight successor's search key and the vehicle can
    /// never turn. Steps are therefore lengthened so a full-steer step sweeps
    /// at least 0.45 rad, comfortably more than one default heading bin.
    pub fn defaults(vehicle: &VehicleSpec, cell_size: f64) -> Self {
        let v = vehicle.max_speed;
        let d = vehicle.max_steer;
        let maneuver = 0.45 * vehicle.min_turn_radius();
        Self {
            speeds: vec![-v, v],
            steers: vec![-d, -d / 2.0, 0.0, d / 2.0, d],
            dt: cell_size.max(maneuver) / v,
            arc_length: (cell_size * SQRT_2).max(maneuver),
            extra_radii: Vec::new(),
        }
    }

    /// Check the samples against the vehicle limits.
    pub fn validate(&self, vehicle: &VehicleSpec) -> Result<(), ConfigError> {
        if self.speeds.is_empty() {
            return Err(ConfigError::NoSpeeds);
        }
        if self.steers.is_empty() {
            return Err(ConfigError::NoSteers);
        }
        for &v in &self.speeds {
            if !v.is_finite() || v.abs() > vehicle.max_speed + 1e-12 {
                return Err(ConfigError::SpeedOutOfRange(v, vehicle.max_speed));
            }
        }
        for &d in &self.steers {
            if !d.is_finite() || d.abs() > vehicle.max_steer + 1e-12 {
                return Err(ConfigError::SteerOutOfRange(d, vehicle.max_steer));
            }
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(ConfigError::TimeStep(self.dt));
        }
        if !(self.arc_length > 0.0 && self.arc_length.is_finite()) {
            return Err(ConfigError::ArcLength(self.arc_length));
        }
        let min_radius = vehicle.min_turn_radius();
        for &r in &self.extra_radii {
            if !r.is_finite() || r < min_radius * (1.0 - 1e-9) {
                return Err(ConfigError::RadiusTooSmall(r, min_radius));
            }
        }
        Ok(())
    }
}

/// A configuration problem reported before any search work happens.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConfigError {
    #[error("wheelbase must be positive and finite, got {0}")]
    Wheelbase(f64),
    #[error("max speed must be positive and finite, got {0}")]
    MaxSpeed(f64),
    #[error("max steer must lie strictly between 0 and pi/2, got {0}")]
    MaxSteer(f64),
    #[error("control set has no speed samples")]
    NoSpeeds,
    #[error("control set has no steer samples")]
    NoSteers,
    #[error("speed sample {0} exceeds the vehicle limit {1}")]
    SpeedOutOfRange(f64, f64),
    #[error("steer sample {0} exceeds the vehicle limit {1}")]
    SteerOutOfRange(f64, f64),
    #[error("time step must be positive and finite, got {0}")]
    TimeStep(f64),
    #[error("arc length must be positive and finite, got {0}")]
    ArcLength(f64),
    #[error("turn radius {0} is below the vehicle minimum {1}")]
    RadiusTooSmall(f64, f64),
    #[error("cost weight {name} must be non-negative and finite, got {value}")]
    CostWeight { name: &'static str, value: f64 },
    #[error("theta_bins must be at least 1")]
    ThetaBins,
    #[error("max_expansions must be at least 1")]
    MaxExpansions,
    #[error("goal tolerance must be positive and finite, got {0}")]
    GoalTolerance(f64),
}

/// One Euler step of the kinematic bicycle.
///
/// The pre-step heading drives all three updates:
///
/// ```text
/// x'     = x + v cos(theta) dt
/// y'     = y + v sin(theta) dt
/// theta' = theta + (v / wheelbase) tan(delta) dt
/// ```
///
/// # Panics
///
/// Panics if `|delta| >= pi/2` (tangent singularity), or if `dt` or
/// `wheelbase` is not positive.
pub fn kinematic_step(pose: Pose, control: Control, dt: f64, wheelbase: f64) -> Pose {
    assert!(
        control.delta.abs() < FRAC_PI_2,
        "steer angle {} outside (-pi/2, pi/2)",
        control.delta
    );
    assert!(dt > 0.0, "time step must be positive");
    assert!(wheelbase > 0.0, "wheelbase must be positive");
    let (sin_t, cos_t) = pose.theta.sin_cos();
    Pose::new(
        pose.x + control.v * cos_t * dt,
        pose.y + control.v * sin_t * dt,
        pose.theta + control.v / wheelbase * control.delta.tan() * dt,
    )
}

/// An exact motion primitive for the geometric model.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Primitive {
    /// Circular arc of the given radius, swept through `angle` radians
    /// (positive = left turn) when traversed forward.
    Arc { radius: f64, angle: f64 },
    /// Straight segment of the given length.
    Straight { length: f64 },
}

impl Primitive {
    /// Path length of the primitive.
    pub fn length(&self) -> f64 {
        match *self {
            Primitive::Arc { radius, angle } => radius * angle.abs(),
            Primitive::Straight { length } => length.abs(),
        }
    }

    /// The constant steer angle that would trace this primitive:
    /// `atan(wheelbase / radius)`, signed by turn sense.
    pub fn steer_angle(&self, wheelbase: f64) -> f64 {
        match *self {
            Primitive::Arc { radius, angle } => {
                let mag = (wheelbase / radius).atan();
                if angle < 0.0 {
                    -mag
                } else {
                    mag
                }
            }
            Primitive::Straight { .. } => 0.0,
        }
    }

    /// The primitive truncated to the first fraction `t` of its length.
    pub fn scaled(&self, t: f64) -> Primitive {
        match *self {
            Primitive::Arc { radius, angle } => Primitive::Arc {
                radius,
                angle: angle * t,
            },
            Primitive::Straight { length } => Primitive::Straight { length: length * t },
        }
    }
}

/// Apply a geometric primitive to a pose.
///
/// Arcs rotate the pose about the circle center on the steering side;
/// traversing in [`Direction::Reverse`] inverts the rotation sense about the
/// same center, so a motion followed by its reverse returns exactly to the
/// starting pose.
pub fn geometric_step(pose: Pose, primitive: &Primitive, direction: Direction) -> Pose {
    let flip = match direction {
        Direction::Forward => 1.0,
        Direction::Reverse => -1.0,
    };
    let (sin_t, cos_t) = pose.theta.sin_cos();
    match *primitive {
        Primitive::Straight { length } => {
            let d = flip * length;
            Pose::new(pose.x + d * cos_t, pose.y + d * sin_t, pose.theta)
        }
        Primitive::Arc { radius, angle } => {
            assert!(
                radius > 0.0 && radius.is_finite(),
                "arc radius must be positive, got {radius}"
            );
            // Center sits perpendicular to the heading, on the turn side.
            let side = if angle < 0.0 { -1.0 } else { 1.0 };
            let cx = pose.x - side * radius * sin_t;
            let cy = pose.y + side * radius * cos_t;
            let phi = flip * angle;
            let (sin_p, cos_p) = phi.sin_cos();
            let ox = pose.x - cx;
            let oy = pose.y - cy;
            Pose::new(
                cx + ox * cos_p - oy * sin_p,
                cy + ox * sin_p + oy * cos_p,
                pose.theta + phi,
            )
        }
    }
}

/// A single planner motion: the atom a path is made of.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Motion {
    /// One kinematic bicycle step.
    Kinematic { control: Control, dt: f64 },
    /// One geometric primitive traversal.
    Geometric {
        primitive: Primitive,
        direction: Direction,
    },
}

impl Motion {
    /// Path length of the motion.
    pub fn length(&self) -> f64 {
        match *self {
            Motion::Kinematic { control, dt } => control.v.abs() * dt,
            Motion::Geometric { primitive, .. } => primitive.length(),
        }
    }

    /// Travel direction of the motion.
    pub fn direction(&self) -> Direction {
        match *self {
            Motion::Kinematic { control, .. } => {
                if control.v < 0.0 {
                    Direction::Reverse
                } else {
                    Direction::Forward
                }
            }
            Motion::Geometric { direction, .. } => direction,
        }
    }

    /// Pose after traversing the full motion from `start`.
    pub fn apply(&self, start: Pose, wheelbase: f64) -> Pose {
        match *self {
            Motion::Kinematic { control, dt } => kinematic_step(start, control, dt, wheelbase),
            Motion::Geometric {
                primitive,
                direction,
            } => geometric_step(start, &primitive, direction),
        }
    }

    /// Pose after traversing the first `s` units of path length from `start`.
    ///
    /// `s` is clamped to `[0, length]`. Used for collision sampling along a
    /// motion.
    pub fn pose_at(&self, start: Pose, s: f64, wheelbase: f64) -> Pose {
        let len = self.length();
        if len <= 0.0 {
            return start;
        }
        let t = (s / len).clamp(0.0, 1.0);
        if t <= 0.0 {
            return start;
        }
        match *self {
            Motion::Kinematic { control, dt } => {
                kinematic_step(start, control, dt * t, wheelbase)
            }
            Motion::Geometric {
                primitive,
                direction,
            } => geometric_step(start, &primitive.scaled(t), direction),
        }
    }
}

/// A candidate next state produced by expanding a pose.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Successor {
    pub pose: Pose,
    /// The command (or equivalent command, for geometric primitives) that
    /// produced this successor; used for cost terms.
    pub control: Control,
    pub motion: Motion,
}

/// Expand a pose into its successor states under the chosen model.
///
/// The order is deterministic: speeds outer, steers inner for the kinematic
/// model; forward before reverse and left, straight, right for the geometric
/// model. Zero-speed samples are skipped — they go nowhere.
pub fn successors(
    model: Model,
    pose: Pose,
    vehicle: &VehicleSpec,
    controls: &ControlSet,
) -> Vec<Successor> {
    match model {
        Model::Kinematic => kinematic_successors(pose, vehicle, controls),
        Model::Geometric => geometric_successors(pose, vehicle, controls),
    }
}

fn kinematic_successors(
    pose: Pose,
    vehicle: &VehicleSpec,
    controls: &ControlSet,
) -> Vec<Successor> {
    let mut out = Vec::with_capacity(controls.speeds.len() * controls.steers.len());
    for &v in &controls.speeds {
        if v == 0.0 {
            continue;
        }
        for &delta in &controls.steers {
            let control = Control { v, delta };
            let motion = Motion::Kinematic {
                control,
                dt: controls.dt,
            };
            out.push(Successor {
                pose: motion.apply(pose, vehicle.wheelbase),
                control,
                motion,
            });
        }
    }
    out
}

fn geometric_successors(
    pose: Pose,
    vehicle: &VehicleSpec,
    controls: &ControlSet,
) -> Vec<Successor> {
    let mut radii = vec![vehicle.min_turn_radius()];
    radii.extend_from_slice(&controls.extra_radii);
    let mut out = Vec::with_capacity((2 * radii.len() + 1) * 2);
    for direction in [Direction::Forward, Direction::Reverse] {
        let v = match direction {
            Direction::Forward => vehicle.max_speed,
            Direction::Reverse => -vehicle.max_speed,
        };
        let mut primitives = Vec::with_capacity(2 * radii.len() + 1);
        for &r in &radii {
            primitives.push(Primitive::Arc {
                radius: r,
                angle: controls.arc_length / r,
            });
        }
        primitives.push(Primitive::Straight {
            length: controls.arc_length,
        });
        for &r in &radii {
            primitives.push(Primitive::Arc {
                radius: r,
                angle: -controls.arc_length / r,
            });
        }
        for primitive in primitives {
            let motion = Motion::Geometric {
                primitive,
                direction,
            };
            out.push(Successor {
                pose: motion.apply(pose, vehicle.wheelbase),
                control: Control {
                    v,
                    delta: primitive.steer_angle(vehicle.wheelbase),
                },
                motion,
            });
        }
    }
    out
}

/// Collision-check a motion by sampling poses along it no more than half a
/// cell apart, endpoints included.
pub fn motion_blocked(
    from: Pose,
    motion: &Motion,
    vehicle: &VehicleSpec,
    grid: &OccupancyGrid,
    mode: CollisionMode,
) -> bool {
    let len = motion.length();
    let spacing = grid.cell_size() / 2.0;
    let n = (len / spacing).ceil().max(1.0) as usize;
    for k in 0..=n {
        let s = len * k as f64 / n as f64;
        let p = motion.pose_at(from, s, vehicle.wheelbase);
        if pose_in_collision(p, &vehicle.footprint, grid, mode) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::angle_diff;
    use approx::assert_relative_eq;
    use proptest::prelude::*;
    use std::f64::consts::FRAC_PI_4;

    fn test_vehicle() -> VehicleSpec {
        VehicleSpec {
            wheelbase: 1.0,
            max_speed: 1.0,
            max_steer: FRAC_PI_4,
            footprint: Footprint::new(1.0, 0.6),
        }
    }

    #[test]
    fn kinematic_step_uses_pre_step_heading() {
        let p = kinematic_step(
            Pose::new(0.0, 0.0, 0.0),
            Control {
                v: 1.0,
                delta: FRAC_PI_4,
            },
            0.1,
            1.0,
        );
        assert_relative_eq!(p.x, 0.1, epsilon = 1e-12);
        assert_relative_eq!(p.y, 0.0, epsilon = 1e-12);
        assert_relative_eq!(p.theta, 0.1, epsilon = 1e-12);
    }

    #[test]
    #[should_panic(expected = "steer angle")]
    fn kinematic_step_rejects_singular_steer() {
        kinematic_step(
            Pose::new(0.0, 0.0, 0.0),
            Control {
                v: 1.0,
                delta: FRAC_PI_2,
            },
            0.1,
            1.0,
        );
    }

    #[test]
    fn quarter_arc_lands_on_circle_corner() {
        let prim = Primitive::Arc {
            radius: 1.0,
            angle: FRAC_PI_2,
        };
        let p = geometric_step(Pose::new(0.0, 0.0, 0.0), &prim, Direction::Forward);
        assert_relative_eq!(p.x, 1.0, epsilon = 1e-12);
        assert_relative_eq!(p.y, 1.0, epsilon = 1e-12);
        assert_relative_eq!(p.theta, FRAC_PI_2, epsilon = 1e-12);
    }

    #[test]
    fn reverse_arc_inverts_forward_arc() {
        let prim = Primitive::Arc {
            radius: 2.0,
            angle: 0.7,
        };
        let start = Pose::new(3.0, 1.0, 0.4);
        let there = geometric_step(start, &prim, Direction::Forward);
        let back = geometric_step(there, &prim, Direction::Reverse);
        assert_relative_eq!(back.x, start.x, epsilon = 1e-9);
        assert_relative_eq!(back.y, start.y, epsilon = 1e-9);
        assert_relative_eq!(back.theta, start.theta, epsilon = 1e-9);
    }

    #[test]
    fn min_turn_radius_matches_full_steer() {
        let v = test_vehicle();
        assert_relative_eq!(v.min_turn_radius(), 1.0, epsilon = 1e-12);
        let prim = Primitive::Arc {
            radius: v.min_turn_radius(),
            angle: 0.5,
        };
        assert_relative_eq!(prim.steer_angle(v.wheelbase), FRAC_PI_4, epsilon = 1e-12);
    }

    #[test]
    fn successor_counts_and_order() {
        let v = test_vehicle();
        let controls = ControlSet::defaults(&v, 1.0);
        let kin = successors(Model::Kinematic, Pose::new(5.0, 5.0, 0.0), &v, &controls);
        assert_eq!(kin.len(), 10);
        // Reverse speeds come first in the default set.
        assert!(kin[0].control.v < 0.0);
        assert!(kin[9].control.v > 0.0);

        let geo = successors(Model::Geometric, Pose::new(5.0, 5.0, 0.0), &v, &controls);
        assert_eq!(geo.len(), 6);
        assert_eq!(geo[0].motion.direction(), Direction::Forward);
        assert!(geo[0].control.delta > 0.0); // left arc first
        assert_eq!(geo[1].control.delta, 0.0); // then straight
        assert!(geo[2].control.delta < 0.0); // then right arc
        assert_eq!(geo[3].motion.direction(), Direction::Reverse);
        for s in &geo {
            assert_relative_eq!(s.motion.length(), controls.arc_length, epsilon = 1e-12);
        }
    }

    #[test]
    fn validate_catches_bad_samples() {
        let v = test_vehicle();
        let mut c = ControlSet::defaults(&v, 1.0);
        c.speeds = vec![2.0];
        assert!(matches!(
            c.validate(&v),
            Err(ConfigError::SpeedOutOfRange(..))
        ));
        let mut c = ControlSet::defaults(&v, 1.0);
        c.steers.push(1.0);
        assert!(matches!(
            c.validate(&v),
            Err(ConfigError::SteerOutOfRange(..))
        ));
        let mut c = ControlSet::defaults(&v, 1.0);
        c.extra_radii = vec![0.5];
        assert!(matches!(c.validate(&v), Err(ConfigError::RadiusTooSmall(..))));
        assert!(ControlSet::defaults(&v, 1.0).validate(&v).is_ok());
    }

    #[test]
    fn motion_blocked_catches_mid_motion_contact() {
        // A straight dash over an occupied cell whose endpoints are free.
        let mut grid = crate::geometry::OccupancyGrid::new_free(8, 8, 1.0);
        grid.set(4, 2, true);
        let v = test_vehicle();
        let from = Pose::new(2.5, 2.5, 0.0);
        let motion = Motion::Geometric {
            primitive: Primitive::Straight { length: 4.0 },
            direction: Direction::Forward,
        };
        assert!(motion_blocked(
            from,
            &motion,
            &v,
            &grid,
            CollisionMode::Midpoint
        ));
        let clear = Motion::Geometric {
            primitive: Primitive::Straight { length: 1.0 },
            direction: Direction::Forward,
        };
        assert!(!motion_blocked(
            from,
            &clear,
            &v,
            &grid,
            CollisionMode::Midpoint
        ));
    }

    proptest! {
        #[test]
        fn geometric_motions_have_constant_speed_profile(
            angle in -1.5..1.5f64,
            radius in 0.5..5.0f64,
            s in 0.0..1.0f64,
        ) {
            // pose_at(s) really is s units of arc away from the start.
            let prim = Primitive::Arc { radius, angle };
            let start = Pose::new(0.0, 0.0, 0.3);
            let len = prim.length();
            let motion = Motion::Geometric { primitive: prim, direction: Direction::Forward };
            let p = motion.pose_at(start, s * len, 1.0);
            let swept = angle_diff(p.theta, start.theta);
            prop_assert!((swept - angle * s).abs() < 1e-9);
            // Chord length of an arc segment: 2 r sin(phi / 2).
            let chord = 2.0 * radius * (angle.abs() * s / 2.0).sin();
            prop_assert!((start.distance_xy(p) - chord).abs() < 1e-9);
        }

        #[test]
        fn forward_then_reverse_returns_home(
            x in -5.0..5.0f64,
            y in -5.0..5.0f64,
            theta in -3.0..3.0f64,
            angle in -1.5..1.5f64,
            radius in 0.5..5.0f64,
        ) {
            let start = Pose::new(x, y, theta);
            let prim = Primitive::Arc { radius, angle };
            let there = geometric_step(start, &prim, Direction::Forward);
            let back = geometric_step(there, &prim, Direction::Reverse);
            prop_assert!(start.distance_xy(back) < 1e-9);
            prop_assert!(angle_diff(back.theta, start.theta).abs() < 1e-9);
        }

        #[test]
        fn kinematic_step_moves_at_commanded_speed(
            v in 0.1..1.0f64,
            delta in -0.7..0.7f64,
            dt in 0.01..0.5f64,
        ) {
            let start = Pose::new(0.0, 0.0, 0.0);
            let p = kinematic_step(start, Control { v, delta }, dt, 1.0);
            // Euler position update uses the pre-step heading only.
            prop_assert!((start.distance_xy(p) - v * dt).abs() < 1e-12);
        }
    }
}
