//! Discrete cell grid laid over the field for the beginner commands and mazes.

use serde::{Deserialize, Serialize};

use crate::geom::{Segment, Vec2};
use crate::num::Real;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridMap<T> {
    pub cell_size: T,
    /// Field coordinates of the center of cell (0, 0).
    pub origin: Vec2<T>,
    pub cols: i32,
    pub rows: i32,
}

impl<T: Real> GridMap<T> {
    /// Grid covering a field of the given half extents.
    pub fn covering(half_x: T, half_y: T, cell_size: T) -> Self {
        let cols = (T::two() * half_x / cell_size).round().to_i32().unwrap_or(1).max(1);
        let rows = (T::two() * half_y / cell_size).round().to_i32().unwrap_or(1).max(1);
        let half = cell_size * T::half();
        Self { cell_size, origin: Vec2::new(-half_x + half, -half_y + half), cols, rows }
    }

    pub fn contains(&self, cell: (i32, i32)) -> bool {
        (0..self.cols).contains(&cell.0) && (0..self.rows).contains(&cell.1)
    }

    pub fn center(&self, cell: (i32, i32)) -> Vec2<T> {
        self.origin + Vec2::new(T::from_i32(cell.0).unwrap(), T::from_i32(cell.1).unwrap()) * self.cell_size
    }

    /// Cell whose area contains `p`, clamped into the grid.
    pub fn cell_of(&self, p: Vec2<T>) -> (i32, i32) {
        let rel = (p - self.origin) * (T::one() / self.cell_size);
        let i = rel.x.round().to_i32().unwrap_or(0).clamp(0, self.cols - 1);
        let j = rel.y.round().to_i32().unwrap_or(0).clamp(0, self.rows - 1);
        (i, j)
    }

    pub fn clamp_cell(&self, cell: (i32, i32)) -> (i32, i32) {
        (cell.0.clamp(0, self.cols - 1), cell.1.clamp(0, self.rows - 1))
    }

    /// Wall segment separating two edge-adjacent cells.
    pub fn wall_between(&self, a: (i32, i32), b: (i32, i32)) -> Option<Segment<T>> {
        let (dx, dy) = (b.0 - a.0, b.1 - a.1);
        if dx.abs() + dy.abs() != 1 || !self.contains(a) || !self.contains(b) {
            return None;
        }
        let mid = (self.center(a) + self.center(b)) * T::half();
        let half = self.cell_size * T::half();
        let along = if dx != 0 { Vec2::new(T::zero(), half) } else { Vec2::new(half, T::zero()) };
        Some(Segment::new(mid - along, mid + along))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_grid_is_12_by_8() {
        let g = GridMap::covering(1.8_f64, 1.2, 0.3);
        assert_eq!((g.cols, g.rows), (12, 8));
        let c = g.center((0, 0));
        assert!((c.x + 1.65).abs() < 1e-12 && (c.y + 1.05).abs() < 1e-12);
        let last = g.center((11, 7));
        assert!((last.x - 1.65).abs() < 1e-12 && (last.y - 1.05).abs() < 1e-12);
        assert_eq!(g.cell_of(Vec2::new(0.16, -0.01)), (6, 3));
        assert_eq!(g.cell_of(Vec2::new(9.0, 9.0)), (11, 7));
    }

    #[test]
    fn walls_only_between_neighbours() {
        let g = GridMap::covering(1.8_f64, 1.2, 0.3);
        let w = g.wall_between((0, 0), (1, 0)).unwrap();
        assert!((w.a.x + 1.5).abs() < 1e-12 && (w.b.x + 1.5).abs() < 1e-12);
        assert!(g.wall_between((0, 0), (1, 1)).is_none());
        assert!(g.wall_between((0, 0), (-1, 0)).is_none());
    }
}
