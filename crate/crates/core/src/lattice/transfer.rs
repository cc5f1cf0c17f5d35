//! Row-to-row transfer summation of the partition function.
//!
//! The state between two consecutive rows is the vector of n vertical-edge
//! orientations, kept as a bitmask (bit c set = arrow up in column c). Rows
//! are absorbed bottom to top; within a row the sum is resolved left to right
//! with the two fixed horizontal boundary arrows, so each row costs
//! O(n * 2^n) exact operations instead of 4^n.

use super::config::classify;
use super::params::Weights6;
use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Hard cap: 2^n states per level.
pub const MAX_TRANSFER_N: usize = 16;

/// Partition sum with homogeneous weights. Exactly equals the sum of
/// configuration weights over the full enumeration whenever both run.
pub fn partition_transfer<S: Scalar>(n: usize, m: usize, weights: &Weights6<S>) -> Result<S> {
    let rows = check_dims(n, m)?;
    let per_row = vec![weights.clone(); rows];
    Ok(transfer_sum(n, m, &per_row))
}

/// Partition sum with row-dependent weights; `row_weights[0]` is the bottom
/// row. Serves the inhomogeneous determinant cross-checks.
pub fn partition_transfer_by_row<S: Scalar>(
    n: usize,
    m: usize,
    row_weights: &[Weights6<S>],
) -> Result<S> {
    let rows = check_dims(n, m)?;
    if row_weights.len() != rows {
        return Err(Error::Size(format!(
            "expected {rows} row weight sets, got {}",
            row_weights.len()
        )));
    }
    Ok(transfer_sum(n, m, row_weights))
}

fn check_dims(n: usize, m: usize) -> Result<usize> {
    if n == 0 || n > MAX_TRANSFER_N {
        return Err(Error::Resource(format!(
            "transfer summation supports 1 <= n <= {MAX_TRANSFER_N}, got n = {n}"
        )));
    }
    if m >= n {
        return Err(Error::Size(format!("need 0 <= m < n, got m = {m}, n = {n}")));
    }
    Ok(n - m)
}

fn transfer_sum<S: Scalar>(n: usize, m: usize, row_weights: &[Weights6<S>]) -> S {
    let states = 1usize << n;
    // level[mask]: total weight of all partial configurations whose current
    // vertical-edge orientations are `mask`.
    let mut level = vec![S::ring_zero(); states];
    level[states - 1] = S::ring_one(); // bottom boundary: all arrows up

    for weights in row_weights {
        // Within-row DP over (mask, horizontal arrow). Bits below the sweep
        // column already hold the next level, bits above still hold this one.
        let mut dp_west = level; // horizontal arrow pointing west
        let mut dp_east = vec![S::ring_zero(); states]; // pointing east
        for c in 0..n {
            let bit = 1usize << c;
            let mut next_west = vec![S::ring_zero(); states];
            let mut next_east = vec![S::ring_zero(); states];
            for (h_east, dp) in [(false, &dp_west), (true, &dp_east)] {
                for (mask, acc) in dp.iter().enumerate() {
                    if acc.is_ring_zero() {
                        continue;
                    }
                    let s_north = mask & bit != 0;
                    for n_north in [false, true] {
                        let Some(vertex) = ice_step(h_east, s_north, n_north) else {
                            continue;
                        };
                        let (e_east, t) = vertex;
                        let new_mask = if n_north { mask | bit } else { mask & !bit };
                        let contrib = acc.mul(weights.weight(t));
                        let target = if e_east { &mut next_east } else { &mut next_west };
                        let slot = &mut target[new_mask];
                        *slot = slot.add(&contrib);
                    }
                }
            }
            dp_west = next_west;
            dp_east = next_east;
        }
        // Right boundary arrow must point east; reset the horizontal arrow to
        // the left-boundary state (west) for the next row.
        level = dp_east;
        let _ = dp_west;
    }

    let mut total = S::ring_zero();
    for (mask, acc) in level.iter().enumerate() {
        if (mask as u32).count_ones() as usize == m && !acc.is_ring_zero() {
            total = total.add(acc);
        }
    }
    total
}

/// Resolve one vertex during the left-to-right sweep: given the west, south
/// and north arrows, the east arrow and the vertex type are forced (or the
/// ice rule fails).
fn ice_step(w_east: bool, s_north: bool, n_north: bool) -> Option<(bool, u8)> {
    let in_count = w_east as u8 + s_north as u8 + (!n_north) as u8;
    let e_east = match in_count {
        1 => false,
        2 => true,
        _ => return None,
    };
    classify(w_east, e_east, s_north, n_north).map(|t| (e_east, t))
}
