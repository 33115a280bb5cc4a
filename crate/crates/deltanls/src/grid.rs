//! Uniform symmetric grids and sampled real-valued functions.
//!
//! Grids have an odd node count so that the origin is a node: the derivative
//! jump induced by the point nonlinearity lives exactly at a grid point.
//! Node coordinates are constructed as `(i − center)·h`, never accumulated,
//! so the origin node is exactly `0.0`.

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GridError {
    #[error("half width {0} must be positive and finite")]
    HalfWidth(f64),
    #[error("node count {0} must be an odd integer >= 3")]
    Count(usize),
}

/// Non-finite value produced while sampling a profile onto a grid.
#[derive(Debug, Clone, PartialEq, Error)]
#[error("non-finite sample {value} at node {index} (x = {x})")]
pub struct SampleError {
    pub index: usize,
    pub x: f64,
    pub value: f64,
}

/// Uniform grid on `[−L, L]` with an odd number of nodes.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Grid {
    half_width: f64,
    count: usize,
}

impl Grid {
    pub fn new(half_width: f64, count: usize) -> Result<Self, GridError> {
        if half_width <= 0.0 || !half_width.is_finite() {
            return Err(GridError::HalfWidth(half_width));
        }
        if count < 3 || count.is_multiple_of(2) {
            return Err(GridError::Count(count));
        }
        Ok(Self { half_width, count })
    }

    pub fn half_width(&self) -> f64 {
        self.half_width
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Node spacing `h = 2L/(n−1)`.
    pub fn spacing(&self) -> f64 {
        2.0 * self.half_width / (self.count - 1) as f64
    }

    /// Index of the origin node.
    pub fn center_index(&self) -> usize {
        (self.count - 1) / 2
    }

    /// Coordinate of node `i`, exact zero at the center index.
    pub fn node(&self, i: usize) -> f64 {
        (i as f64 - self.center_index() as f64) * self.spacing()
    }

    pub fn nodes(&self) -> impl Iterator<Item = f64> + '_ {
        (0..self.count).map(move |i| self.node(i))
    }
}

/// Uniform symmetric grid with the origin as a node.
pub fn make_grid(half_width: f64, count: usize) -> Result<Grid, GridError> {
    Grid::new(half_width, count)
}

/// Real function sampled at the nodes of a [`Grid`].
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<f64>,
}

impl GridFunction {
    /// Wrap existing nodal values. Panics if the length does not match.
    pub fn from_values(grid: Grid, values: Vec<f64>) -> Self {
        assert_eq!(values.len(), grid.count(), "value count must match grid");
        Self { grid, values }
    }

    pub fn zeros(grid: Grid) -> Self {
        let n = grid.count();
        Self {
            grid,
            values: vec![0.0; n],
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn values_mut(&mut self) -> &mut [f64] {
        &mut self.values
    }

    /// Value at the origin node.
    pub fn origin_value(&self) -> f64 {
        self.values[self.grid.center_index()]
    }

    /// Decay diagnostic `max(|u(−L)|, |u(L)|)`.
    pub fn tail_magnitude(&self) -> f64 {
        self.values[0]
            .abs()
            .max(self.values[self.values.len() - 1].abs())
    }

    /// Discrete mass `h·Σ uᵢ²` (the inner product the minimizer projects in).
    pub fn mass(&self) -> f64 {
        self.grid.spacing() * self.values.iter().map(|v| v * v).sum::<f64>()
    }

    /// Rescale in place to the requested discrete mass.
    pub fn project_to_mass(&mut self, mu: f64) {
        let m = self.mass();
        if m > 0.0 {
            let c = (mu / m).sqrt();
            for v in &mut self.values {
                *v *= c;
            }
        }
    }
}

/// Sample a profile at every node, reporting the first non-finite value.
pub fn sample<F: Fn(f64) -> f64>(profile: F, grid: &Grid) -> Result<GridFunction, SampleError> {
    let mut values = Vec::with_capacity(grid.count());
    for i in 0..grid.count() {
        let x = grid.node(i);
        let v = profile(x);
        if !v.is_finite() {
            return Err(SampleError {
                index: i,
                x,
                value: v,
            });
        }
        values.push(v);
    }
    Ok(GridFunction::from_values(*grid, values))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn smallest_grid() {
        let g = make_grid(1.0, 3).unwrap();
        assert_eq!(g.spacing(), 1.0);
        let nodes: Vec<f64> = g.nodes().collect();
        assert_eq!(nodes, vec![-1.0, 0.0, 1.0]);
    }

    #[test]
    fn wide_grid_arithmetic() {
        let g = make_grid(40.0, 4001).unwrap();
        assert_eq!(g.spacing(), 0.02);
        assert_eq!(g.center_index(), 2000);
        assert_eq!(g.node(2000), 0.0);
    }

    #[test]
    fn parity_and_width_rules() {
        assert_eq!(make_grid(1.0, 4), Err(GridError::Count(4)));
        assert_eq!(make_grid(1.0, 1), Err(GridError::Count(1)));
        assert_eq!(make_grid(0.0, 3), Err(GridError::HalfWidth(0.0)));
        assert_eq!(make_grid(-2.0, 3), Err(GridError::HalfWidth(-2.0)));
    }

    #[test]
    fn origin_node_is_exact_zero() {
        // constructed, not accumulated: exact 0.0 even for awkward widths
        for &(l, n) in &[(0.3, 7_usize), (37.7, 12345), (1e-3, 9), (123.456, 20001)] {
            let g = make_grid(l, n).unwrap();
            assert_eq!(g.node(g.center_index()), 0.0);
        }
    }

    #[test]
    fn samples_constant_zero() {
        let g = make_grid(5.0, 11).unwrap();
        let u = sample(|_| 0.0, &g).unwrap();
        assert!(u.values().iter().all(|&v| v == 0.0));
        assert_eq!(u.tail_magnitude(), 0.0);
    }

    #[test]
    fn samples_exponential_origin() {
        let g = make_grid(40.0, 4001).unwrap();
        let u = sample(|x: f64| (-x.abs()).exp(), &g).unwrap();
        assert_eq!(u.origin_value(), 1.0);
        assert!(u.tail_magnitude() < 1e-17);
    }

    #[test]
    fn sample_reports_offending_node() {
        let g = make_grid(1.0, 5).unwrap();
        let err = sample(|x: f64| 1.0 / x, &g).unwrap_err();
        assert_eq!(err.index, 2);
        assert_eq!(err.x, 0.0);
    }

    #[test]
    fn projection_hits_mass_exactly() {
        let g = make_grid(10.0, 101).unwrap();
        let mut u = sample(|x: f64| (-x.abs()).exp(), &g).unwrap();
        u.project_to_mass(2.5);
        assert!((u.mass() - 2.5).abs() <= 1e-14 * 2.5);
    }
}
