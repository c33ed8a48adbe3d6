//! Planar geometry: angles, poses, rectangular footprints, and occupancy
//! grids.
//!
//! Conventions used throughout the crate:
//!
//! * world frame is right-handed with `x` east and `y` north; headings are
//!   radians counter-clockwise from `+x` and always normalized to `(-pi, pi]`;
//! * an occupancy grid covers the half-open domain
//!   `[0, width * cell_size) x [0, height * cell_size)`; cell `(ix, iy)` covers
//!   `[ix * cell_size, (ix + 1) * cell_size)` on each axis, and everything
//!   outside the domain is treated as occupied;
//! * collision tests treat shapes as closed sets: a footprint that exactly
//!   touches an occupied cell counts as colliding.

use std::f64::consts::{PI, TAU};

/// Wrap an angle to the half-open interval `(-pi, pi]`.
///
/// # Panics
///
/// Panics if `theta` is not finite.
pub fn normalize_angle(theta: f64) -> f64 {
    assert!(theta.is_finite(), "angle must be finite, got {theta}");
    let wrapped = theta.rem_euclid(TAU);
    if wrapped > PI {
        wrapped - TAU
    } else {
        wrapped
    }
}

/// Smallest signed rotation taking heading `b` onto heading `a`, in
/// `(-pi, pi]`.
pub fn angle_diff(a: f64, b: f64) -> f64 {
    normalize_angle(a - b)
}

/// A point in the world frame.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Euclidean distance to `other`.
    pub fn distance(self, other: Point) -> f64 {
        (self.x - other.x).hypot(self.y - other.y)
    }
}

/// A vehicle pose: reference-point position plus heading.
///
/// The heading is normalized to `(-pi, pi]` on construction, so two poses
/// describing the same physical configuration compare equal.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Pose {
    pub x: f64,
    pub y: f64,
    /// Heading in radians, counter-clockwise from `+x`, in `(-pi, pi]`.
    pub theta: f64,
}

impl Pose {
    /// Build a pose, normalizing the heading.
    ///
    /// # Panics
    ///
    /// Panics if any component is not finite.
    pub fn new(x: f64, y: f64, theta: f64) -> Self {
        assert!(
            x.is_finite() && y.is_finite(),
            "pose position must be finite, got ({x}, {y})"
        );
        Self {
            x,
            y,
            theta: normalize_angle(theta),
        }
    }

    pub fn position(self) -> Point {
        Point::new(self.x, self.y)
    }

    /// Euclidean distance between the reference points, ignoring heading.
    pub fn distance_xy(self, other: Pose) -> f64 {
        self.position().distance(other.position())
    }
}

/// Axis-aligned dimensions of a rectangular vehicle body.
///
/// The body is `length` along the heading axis and `width` across it.
/// `ref_offset` places the pose reference point on the heading axis, measured
/// forward from the geometric center; `0.0` centers the body on the reference
/// point.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Footprint {
    pub length: f64,
    pub width: f64,
    pub ref_offset: f64,
}

impl Footprint {
    /// A body centered on the pose reference point.
    ///
    /// # Panics
    ///
    /// Panics unless `length` and `width` are positive and finite.
    pub fn new(length: f64, width: f64) -> Self {
        Self::with_ref_offset(length, width, 0.0)
    }

    /// A body whose center sits `ref_offset` behind (negative: ahead of) the
    /// reference point along the heading axis.
    pub fn with_ref_offset(length: f64, width: f64, ref_offset: f64) -> Self {
        assert!(
            length > 0.0 && length.is_finite(),
            "footprint length must be positive, got {length}"
        );
        assert!(
            width > 0.0 && width.is_finite(),
            "footprint width must be positive, got {width}"
        );
        assert!(ref_offset.is_finite(), "ref_offset must be finite");
        Self {
            length,
            width,
            ref_offset,
        }
    }

    /// Geometric center of the body at `pose`.
    pub fn center(&self, pose: Pose) -> Point {
        let (sin_t, cos_t) = pose.theta.sin_cos();
        Point::new(
            pose.x - self.ref_offset * cos_t,
            pose.y - self.ref_offset * sin_t,
        )
    }

    /// Body corners at `pose`, in order front-left, front-right, rear-right,
    /// rear-left.
    pub fn corners(&self, pose: Pose) -> [Point; 4] {
        let (sin_t, cos_t) = pose.theta.sin_cos();
        let center = self.center(pose);
        let hl = self.length / 2.0;
        let hw = self.width / 2.0;
        let corner = |du: f64, dv: f64| {
            Point::new(
                center.x + du * cos_t - dv * sin_t,
                center.y + du * sin_t + dv * cos_t,
            )
        };
        [
            corner(hl, hw),
            corner(hl, -hw),
            corner(-hl, -hw),
            corner(-hl, hw),
        ]
    }
}

/// How much of the vehicle the collision checker looks at.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CollisionMode {
    /// Only the pose reference point is tested against the grid. Fast, and
    /// exactly what naive grid planners do; the body may overlap obstacles.
    Midpoint,
    /// The full oriented body rectangle is tested against occupied cells.
    Footprint,
}

/// A boolean occupancy grid with square cells.
///
/// Cells are stored row-major with `(0, 0)` at the world origin and `y`
/// growing north. Queries outside the grid report occupied, so the world
/// boundary acts as a wall.
#[derive(Debug, Clone, PartialEq)]
pub struct OccupancyGrid {
    width: usize,
    height: usize,
    cell_size: f64,
    cells: Vec<bool>,
}

impl OccupancyGrid {
    /// An all-free grid of `width x height` cells.
    ///
    /// # Panics
    ///
    /// Panics if either dimension is zero or `cell_size` is not positive.
    pub fn new_free(width: usize, height: usize, cell_size: f64) -> Self {
        Self::from_cells(width, height, cell_size, vec![false; width * height])
    }

    /// Build a grid from row-major cell data (`true` = occupied).
    ///
    /// # Panics
    ///
    /// Panics if `cells.len() != width * height`, a dimension is zero, or
    /// `cell_size` is not positive and finite.
    pub fn from_cells(width: usize, height: usize, cell_size: f64, cells: Vec<bool>) -> Self {
        assert!(width > 0 && height > 0, "grid dimensions must be nonzero");
        assert!(
            cell_size > 0.0 && cell_size.is_finite(),
            "cell size must be positive, got {cell_size}"
        );
        assert_eq!(cells.len(), width * height, "cell data length mismatch");
        Self {
            width,
            height,
            cell_size,
            cells,
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn cell_size(&self) -> f64 {
        self.cell_size
    }

    /// World-frame extent along `x`.
    pub fn world_width(&self) -> f64 {
        self.width as f64 * self.cell_size
    }

    /// World-frame extent along `y`.
    pub fn world_height(&self) -> f64 {
        self.height as f64 * self.cell_size
    }

    /// Occupancy of an in-bounds cell, or `None` outside the grid.
    pub fn cell(&self, ix: i64, iy: i64) -> Option<bool> {
        if ix < 0 || iy < 0 || ix >= self.width as i64 || iy >= self.height as i64 {
            None
        } else {
            Some(self.cells[iy as usize * self.width + ix as usize])
        }
    }

    /// Mark one cell.
    ///
    /// # Panics
    ///
    /// Panics if the cell is out of bounds.
    pub fn set(&mut self, ix: usize, iy: usize, occupied: bool) {
        assert!(ix < self.width && iy < self.height, "cell out of bounds");
        self.cells[iy * self.width + ix] = occupied;
    }

    /// `true` if the cell is occupied or lies outside the grid.
    pub fn blocked_cell(&self, ix: i64, iy: i64) -> bool {
        self.cell(ix, iy).unwrap_or(true)
    }

    /// `true` if the continuous point falls in an occupied cell or outside the
    /// grid domain.
    pub fn blocked_point(&self, x: f64, y: f64) -> bool {
        let (ix, iy) = self.cell_of(x, y);
        self.blocked_cell(ix, iy)
    }

    /// Cell index containing a continuous point (floor on both axes).
    pub fn cell_of(&self, x: f64, y: f64) -> (i64, i64) {
        (
            (x / self.cell_size).floor() as i64,
            (y / self.cell_size).floor() as i64,
        )
    }

    /// `true` if the point lies inside the half-open grid domain.
    pub fn contains_point(&self, x: f64, y: f64) -> bool {
        x >= 0.0 && y >= 0.0 && x < self.world_width() && y < self.world_height()
    }

    /// Number of occupied cells.
    pub fn occupied_count(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }

    /// Iterate over occupied cell indices in row-major order.
    pub fn occupied_cells(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.cells
            .iter()
            .enumerate()
            .filter(|(_, &c)| c)
            .map(move |(i, _)| (i % self.width, i / self.width))
    }
}

/// Test a pose for collision under the given mode.
///
/// Midpoint mode looks only at the cell under the pose reference point.
/// Footprint mode tests the full oriented body rectangle against every
/// occupied cell it could overlap (exact rectangle-vs-cell intersection, with
/// touching counted as collision), and additionally requires the body to lie
/// entirely inside the grid domain and the reference cell to be free — so a
/// pose accepted in footprint mode is always accepted in midpoint mode too.
pub fn pose_in_collision(
    pose: Pose,
    footprint: &Footprint,
    grid: &OccupancyGrid,
    mode: CollisionMode,
) -> bool {
    match mode {
        CollisionMode::Midpoint => grid.blocked_point(pose.x, pose.y),
        CollisionMode::Footprint => footprint_in_collision(pose, footprint, grid),
    }
}

fn footprint_in_collision(pose: Pose, footprint: &Footprint, grid: &OccupancyGrid) -> bool {
    // Keeping the reference cell free makes footprint acceptance imply
    // midpoint acceptance even for bodies offset from the reference point.
    if grid.blocked_point(pose.x, pose.y) {
        return true;
    }
    let corners = footprint.corners(pose);
    if corners
        .iter()
        .any(|c| !grid.contains_point(c.x, c.y))
    {
        return true;
    }

    let (sin_t, cos_t) = pose.theta.sin_cos();
    let center = footprint.center(pose);
    let hl = footprint.length / 2.0;
    let hw = footprint.width / 2.0;
    // Rectangle extent projected onto the grid axes.
    let ex = hl * cos_t.abs() + hw * sin_t.abs();
    let ey = hl * sin_t.abs() + hw * cos_t.abs();
    // Cell extent projected onto either rectangle axis.
    let cs = grid.cell_size();
    let half_cell = cs / 2.0;
    let cell_extent = half_cell * (cos_t.abs() + sin_t.abs());

    let ix0 = ((center.x - ex) / cs).floor() as i64;
    let ix1 = ((center.x + ex) / cs).floor() as i64;
    let iy0 = ((center.y - ey) / cs).floor() as i64;
    let iy1 = ((center.y + ey) / cs).floor() as i64;
    for iy in iy0..=iy1 {
        for ix in ix0..=ix1 {
            if !grid.blocked_cell(ix, iy) {
                continue;
            }
            // Separating-axis test between the oriented rectangle and the
            // cell square: grid axes first, then the rectangle axes.
            let dx = (ix as f64 + 0.5) * cs - center.x;
            let dy = (iy as f64 + 0.5) * cs - center.y;
            if dx.abs() > ex + half_cell || dy.abs() > ey + half_cell {
                continue;
            }
            let du = dx * cos_t + dy * sin_t;
            let dv = -dx * sin_t + dy * cos_t;
            if du.abs() > hl + cell_extent || dv.abs() > hw + cell_extent {
                continue;
            }
            return true;
        }
    }
    false
}
