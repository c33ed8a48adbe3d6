//! Occupancy-grid construction: programmatic shape builders, PGM raster
//! import/export, and the named scenario fixtures used by the examples and
//! tests.

use crate::geometry::OccupancyGrid;
use crate::pgm::{self, Pgm, PgmError};
use thiserror::Error;

mod fixtures;
pub use fixtures::{cropped_fixtures, fixture, fixtures, vehicles, Fixture};

/// An occupancy shape in cell coordinates.
#[derive(Debug, Clone, PartialEq)]
enum Shape {
    /// Half-open cell rectangle `[x0, x1) x [y0, y1)`.
    Rect {
        x0: i64,
        y0: i64,
        x1: i64,
        y1: i64,
    },
    /// Cells whose centers lie within `r` of `(cx, cy)`, all in cell units.
    Circle { cx: f64, cy: f64, r: f64 },
    /// A frame of the given thickness around the grid edge.
    Border { thickness: usize },
}

/// Builds an [`OccupancyGrid`] as a union of occupied shapes, minus any
/// cleared rectangles.
///
/// Shapes may overlap each other and the grid edge; occupancy is their union,
/// so call order never matters. Cleared rectangles are carved out after all
/// shapes, which keeps the result order-independent too.
#[derive(Debug, Clone)]
pub struct GridBuilder {
    width: usize,
    height: usize,
    cell_size: f64,
    shapes: Vec<Shape>,
    clears: Vec<(i64, i64, i64, i64)>,
}

/// A shape that cannot contribute to the grid.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum BuildError {
    #[error("shape {index} lies entirely outside the {width}x{height} grid")]
    ShapeOutOfBounds {
        index: usize,
        width: usize,
        height: usize,
    },
}

impl GridBuilder {
    /// Start building a `width x height` grid of the given cell size.
    ///
    /// # Panics
    ///
    /// Panics if a dimension is zero or `cell_size` is not positive.
    pub fn new(width: usize, height: usize, cell_size: f64) -> Self {
        assert!(width > 0 && height > 0, "grid dimensions must be nonzero");
        assert!(
            cell_size > 0.0 && cell_size.is_finite(),
            "cell size must be positive"
        );
        Self {
            width,
            height,
            cell_size,
            shapes: Vec::new(),
            clears: Vec::new(),
        }
    }

    /// Occupy the half-open cell rectangle `[x0, x1) x [y0, y1)`.
    pub fn rect(mut self, x0: i64, y0: i64, x1: i64, y1: i64) -> Self {
        self.shapes.push(Shape::Rect { x0, y0, x1, y1 });
        self
    }

    /// Occupy cells whose centers lie within `r` of `(cx, cy)` (cell units).
    pub fn circle(mut self, cx: f64, cy: f64, r: f64) -> Self {
        self.shapes.push(Shape::Circle { cx, cy, r });
        self
    }

    /// Occupy a frame of `thickness` cells around the grid edge.
    pub fn border(mut self, thickness: usize) -> Self {
        self.shapes.push(Shape::Border { thickness });
        self
    }

    /// Clear the half-open cell rectangle `[x0, x1) x [y0, y1)` after all
    /// shapes have been applied. Useful for carving openings in walls.
    pub fn clear(mut self, x0: i64, y0: i64, x1: i64, y1: i64) -> Self {
        self.clears.push((x0, y0, x1, y1));
        self
    }

    /// Produce the grid, or an error if some shape misses it entirely.
    pub fn build(self) -> Result<OccupancyGrid, BuildError> {
        let (w, h) = (self.width as i64, self.height as i64);
        let mut grid = OccupancyGrid::new_free(self.width, self.height, self.cell_size);
        for (index, shape) in self.shapes.iter().enumerate() {
            let mut touched = false;
            match *shape {
                Shape::Rect { x0, y0, x1, y1 } => {
                    for iy in y0.max(0)..y1.min(h) {
                        for ix in x0.max(0)..x1.min(w) {
                            grid.set(ix as usize, iy as usize, true);
                            touched = true;
                        }
                    }
                }
                Shape::Circle { cx, cy, r } => {
                    let x0 = ((cx - r).floor() as i64).max(0);
                    let x1 = ((cx + r).ceil() as i64).min(w - 1);
                    let y0 = ((cy - r).floor() as i64).max(0);
                    let y1 = ((cy + r).ceil() as i64).min(h - 1);
                    for iy in y0..=y1 {
                        for ix in x0..=x1 {
                            let dx = ix as f64 + 0.5 - cx;
                            let dy = iy as f64 + 0.5 - cy;
                            if dx * dx + dy * dy <= r * r {
                                grid.set(ix as usize, iy as usize, true);
                                touched = true;
                            }
                        }
                    }
                }
                Shape::Border { thickness } => {
                    let t = thickness as i64;
                    for iy in 0..h {
                        for ix in 0..w {
                            if ix < t || iy < t || ix >= w - t || iy >= h - t {
                                grid.set(ix as usize, iy as usize, true);
                                touched = true;
                            }
                        }
                    }
                    // A zero-thickness border touches nothing but is not a
                    // placement mistake; accept it.
                    touched |= thickness == 0;
                }
            }
            if !touched {
                return Err(BuildError::ShapeOutOfBounds {
                    index,
                    width: self.width,
                    height: self.height,
                });
            }
        }
        for &(x0, y0, x1, y1) in &self.clears {
            for iy in y0.max(0)..y1.min(h) {
                for ix in x0.max(0)..x1.min(w) {
                    grid.set(ix as usize, iy as usize, false);
                }
            }
        }
        Ok(grid)
    }
}

/// How to binarize a grayscale raster into occupancy.
#[derive(Debug, Clone, PartialEq)]
pub struct RasterImportConfig {
    /// Normalized luminance threshold in `[0, 1]`: pixels strictly darker
    /// than this are occupied.
    pub threshold: f64,
    /// Flip the occupied/free decision (for maps drawn the other way round).
    pub invert: bool,
    /// World units per pixel.
    pub cell_size: f64,
}

impl Default for RasterImportConfig {
    fn default() -> Self {
        Self {
            threshold: 0.5,
            invert: false,
            cell_size: 1.0,
        }
    }
}

/// A raster that cannot be turned into a grid.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum RasterError {
    #[error(transparent)]
    Pgm(#[from] PgmError),
    #[error("threshold must lie in [0, 1], got {0}")]
    Threshold(f64),
    #[error("cell size must be positive and finite, got {0}")]
    CellSize(f64),
}

/// Load a PGM image (P2 or P5) as an occupancy grid.
///
/// A pixel is occupied iff `luminance / maxval < threshold`, XOR `invert`.
/// Image row 0 is the top of the map, so rows are flipped to the grid's
/// y-up convention.
pub fn load_raster(bytes: &[u8], cfg: &RasterImportConfig) -> Result<OccupancyGrid, RasterError> {
    if !(0.0..=1.0).contains(&cfg.threshold) {
        return Err(RasterError::Threshold(cfg.threshold));
    }
    if !(cfg.cell_size > 0.0 && cfg.cell_size.is_finite()) {
        return Err(RasterError::CellSize(cfg.cell_size));
    }
    let image = pgm::parse(bytes)?;
    let (w, h) = (image.width, image.height);
    let maxval = f64::from(image.maxval);
    let mut cells = vec![false; w * h];
    for row in 0..h {
        let grid_y = h - 1 - row;
        for col in 0..w {
            let lum = f64::from(image.pixels[row * w + col]) / maxval;
            let dark = lum < cfg.threshold;
            cells[grid_y * w + col] = dark != cfg.invert;
        }
    }
    Ok(OccupancyGrid::from_cells(w, h, cfg.cell_size, cells))
}

/// Export a grid as an 8-bit binary PGM (P5): occupied cells black, free
/// cells white, top image row = top of the map.
pub fn to_pgm(grid: &OccupancyGrid) -> Vec<u8> {
    let (w, h) = (grid.width(), grid.height());
    let mut pixels = vec![255u16; w * h];
    for (ix, iy) in grid.occupied_cells() {
        let row = h - 1 - iy;
        pixels[row * w + ix] = 0;
    }
    Pgm {
        width: w,
        height: h,
        maxval: 255,
        pixels,
    }
    .encode()
}

/// Copy a `width x height` window of `grid` starting at cell `(x0, y0)`.
///
/// # Panics
///
/// Panics if the window exceeds the grid.
pub fn crop_grid(
    grid: &OccupancyGrid,
    x0: usize,
    y0: usize,
    width: usize,
    height: usize,
) -> OccupancyGrid {
    assert!(
        x0 + width <= grid.width() && y0 + height <= grid.height(),
        "crop window exceeds the grid"
    );
    let mut cells = Vec::with_capacity(width * height);
    for iy in 0..height {
        for ix in 0..width {
            cells.push(grid.cell((x0 + ix) as i64, (y0 + iy) as i64) == Some(true));
        }
    }
    OccupancyGrid::from_cells(width, height, grid.cell_size(), cells)
}
