//! Height function on the dual lattice and its exact identities.
//!
//! Faces carry integer heights anchored at 0 on the lower-right corner face,
//! with coordinates (j, k): j counts faces leftward from the right boundary,
//! k upward from the bottom. Crossing an edge changes the height by +1 when
//! the arrow points left-to-right relative to the direction of travel, -1
//! otherwise. The ice rule makes the result path-independent; the builder
//! checks that, the linear boundary values, and the diagonal sum rules
//! relating boundary heights to vertex-type imbalances.

use super::config::Configuration;

/// Heights `h[k][j]` on the (rows+1) x (cols+1) face grid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HeightGrid {
    rows: usize,
    cols: usize,
    h: Vec<Vec<i64>>,
}

impl HeightGrid {
    /// Height at face (j, k): j from the right boundary, k from the bottom.
    pub fn at(&self, j: usize, k: usize) -> i64 {
        self.h[k][j]
    }

    pub fn face_rows(&self) -> usize {
        self.rows + 1
    }

    pub fn face_cols(&self) -> usize {
        self.cols + 1
    }

    /// Sum of heights along the free top row, corners excluded.
    pub fn top_row_sum(&self) -> i64 {
        (1..self.cols).map(|j| self.h[self.rows][j]).sum()
    }
}

/// Build the height function of a configuration. Panics only on internal
/// inconsistency, which the ice rule rules out for valid configurations.
pub fn height_function(config: &Configuration) -> HeightGrid {
    let rows = config.rows();
    let cols = config.cols();
    let mut h = vec![vec![0i64; cols + 1]; rows + 1];
    // Bottom face row: cross vertical edges at level 0, right to left.
    for j in 0..cols {
        let c = cols - 1 - j; // vertex column of the crossed edge
        let step = if config.v_north_at(0, c) { 1 } else { -1 };
        h[0][j + 1] = h[0][j] + step;
    }
    // Each higher face row: cross the horizontal edge below it.
    for k in 0..rows {
        let (below, above) = h.split_at_mut(k + 1);
        for (j, face) in above[0].iter_mut().enumerate() {
            // Horizontal edge position counted from the right in row k.
            let step = if config.h_east_at(k, cols - j) { 1 } else { -1 };
            *face = below[k][j] + step;
        }
    }
    let grid = HeightGrid { rows, cols, h };
    debug_assert!(grid_is_consistent(config, &grid));
    grid
}

/// Path independence: the value reached by moving left must agree with the
/// value reached by moving up, across the whole grid.
fn grid_is_consistent(config: &Configuration, grid: &HeightGrid) -> bool {
    let rows = config.rows();
    let cols = config.cols();
    for k in 1..=rows {
        for j in 1..=cols {
            let c = cols - j;
            let step = if config.v_north_at(k, c) { 1 } else { -1 };
            if grid.h[k][j] != grid.h[k][j - 1] + step {
                return false;
            }
        }
    }
    true
}

/// Boundary values and the three diagonal-sum identities:
/// linear heights on the fixed boundaries, H - S = 2(N1 - N2),
/// H - T = 2(N3 - N4), and their difference (N1-N2) - (N3-N4) = m(n-m).
pub fn verify_height_identities(config: &Configuration) -> bool {
    let grid = height_function(config);
    if !grid_is_consistent(config, &grid) {
        return false;
    }
    let n = config.cols() as i64;
    let rows = config.rows() as i64;
    let m = n - rows;

    // Fixed-boundary heights are linear.
    for k in 0..=rows {
        if grid.at(0, k as usize) != k || grid.at(n as usize, k as usize) != n - k {
            return false;
        }
    }
    for j in 0..=n {
        if grid.at(j as usize, 0) != j {
            return false;
        }
    }

    let counts = config.vertex_counts().map(|v| v as i64);
    let (n1, n2, n3, n4) = (counts[0], counts[1], counts[2], counts[3]);
    let h_sum = grid.top_row_sum();
    let s = (rows - 1) * rows / 2 + (m - 1) * m / 2;
    let t = rows * (n + m + 1) / 2 + (m - 1) * (2 * n - m) / 2;

    h_sum - s == 2 * (n1 - n2)
        && h_sum - t == 2 * (n3 - n4)
        && (n1 - n2) - (n3 - n4) == m * rows
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::config::enumerate_configs;
    use crate::lattice::ground::ground_state;

    #[test]
    fn single_vertex_corner_heights() {
        let config = &enumerate_configs(1, 0).unwrap()[0];
        let grid = height_function(config);
        assert_eq!(grid.at(0, 0), 0);
        assert_eq!(grid.at(1, 0), 1);
        assert_eq!(grid.at(1, 1), 0);
        assert_eq!(grid.at(0, 1), 1);
        assert!(verify_height_identities(config));
    }

    #[test]
    fn identities_exhaustive_through_n4() {
        for n in 1..=4 {
            for m in 0..n {
                for config in enumerate_configs(n, m).unwrap() {
                    assert!(verify_height_identities(&config), "n={n} m={m}");
                }
            }
        }
    }

    #[test]
    fn ground_state_identities_without_type12_vertices() {
        let config = ground_state(4, 1).unwrap();
        let counts = config.vertex_counts();
        assert_eq!(counts[0], 0);
        assert_eq!(counts[1], 0);
        assert!(verify_height_identities(&config));
    }
}
