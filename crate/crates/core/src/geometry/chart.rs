//! Charts of the reconstructed space and their grids.

use alloc::vec::Vec;
use core::f64::consts::TAU;

#[allow(unused_imports)]
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{param, Error, Result};
use crate::topology::{TopologyClass, TopologyReport};

/// The glued space as a union of circles or segments.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Chart {
    /// One circle of length 4π; interval 2 continues interval 1 at `s = 2π + x`.
    CircleOf4Pi,
    /// Each interval closed into its own circle of length 2π.
    TwoCirclesOf2Pi,
    /// Two disjoint segments `[0, 2π]`.
    TwoIntervals,
}

/// `x ∈ [0, 2π]` on interval `1` or `2`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChartPoint {
    pub interval: u8,
    pub x: f64,
}

impl ChartPoint {
    pub fn new(interval: u8, x: f64) -> Result<Self> {
        if !(interval == 1 || interval == 2) {
            return Err(param("interval must be 1 or 2"));
        }
        if !(0.0..=TAU).contains(&x) {
            return Err(param("x must lie in [0, 2π]"));
        }
        Ok(Self { interval, x })
    }
}

/// Geodesic distance; points on different components are infinitely far apart.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Distance {
    Finite(f64),
    /// The points lie on different connected components.
    Infinite,
}

impl Distance {
    pub fn finite(&self) -> Option<f64> {
        match self {
            Distance::Finite(d) => Some(*d),
            Distance::Infinite => None,
        }
    }
}

/// One connected component of a grid: `nodes` points spaced `h`, periodic or not.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GridComponent {
    pub offset: usize,
    pub nodes: usize,
    pub periodic: bool,
}

/// Grid with `P` closed-grid points per interval; glued endpoints are merged.
#[derive(Debug, Clone, PartialEq)]
pub struct ChartGrid {
    pub chart: Chart,
    pub points_per_interval: usize,
    pub h: f64,
    pub components: Vec<GridComponent>,
    /// `(interval, x)` of every node.
    pub nodes: Vec<ChartPoint>,
}

impl ChartGrid {
    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    /// Index of the node nearest to `p` on its component.
    pub fn nearest(&self, p: &ChartPoint) -> usize {
        let mut best = (f64::INFINITY, 0);
        for (i, n) in self.nodes.iter().enumerate() {
            if let Distance::Finite(d) = self.chart.geodesic(n, p) {
                if d < best.0 {
                    best = (d, i);
                }
            }
        }
        best.1
    }

    /// Samples `f` at every node.
    pub fn sample<F: Fn(&ChartPoint) -> f64>(&self, f: F) -> Vec<f64> {
        self.nodes.iter().map(f).collect()
    }
}

impl Chart {
    /// Chart of a classification; ambiguous reports are refused.
    pub fn from_report(r: &TopologyReport) -> Result<Self> {
        if r.ambiguous {
            return Err(Error::AmbiguousChart(alloc::format!(
                "separation factor {:e} below threshold",
                r.separation
            )));
        }
        Ok(Self::from_class(r.class))
    }

    pub fn from_class(c: TopologyClass) -> Self {
        match c {
            TopologyClass::CircleOf4Pi => Chart::CircleOf4Pi,
            TopologyClass::TwoCirclesOf2Pi => Chart::TwoCirclesOf2Pi,
            TopologyClass::TwoIntervals => Chart::TwoIntervals,
        }
    }

    pub fn geodesic(&self, a: &ChartPoint, b: &ChartPoint) -> Distance {
        match self {
            Chart::CircleOf4Pi => {
                let s = |p: &ChartPoint| if p.interval == 1 { p.x } else { TAU + p.x };
                let d = (s(a) - s(b)).abs();
                Distance::Finite(d.min(2.0 * TAU - d))
            }
            Chart::TwoCirclesOf2Pi if a.interval == b.interval => {
                let d = (a.x - b.x).abs();
                Distance::Finite(d.min(TAU - d))
            }
            Chart::TwoIntervals if a.interval == b.interval => Distance::Finite((a.x - b.x).abs()),
            _ => Distance::Infinite,
        }
    }

    /// Grid with `p` points per interval (`p ≥ 3`).
    pub fn grid(&self, p: usize) -> Result<ChartGrid> {
        if p < 3 {
            return Err(Error::Resolution(alloc::format!("{p} points per interval")));
        }
        let h = TAU / (p - 1) as f64;
        let mut nodes = Vec::new();
        let mut components = Vec::new();
        match self {
            Chart::CircleOf4Pi => {
                for interval in 1..=2u8 {
                    for m in 0..p - 1 {
                        nodes.push(ChartPoint { interval, x: m as f64 * h });
                    }
                }
                components.push(GridComponent { offset: 0, nodes: 2 * (p - 1), periodic: true });
            }
            Chart::TwoCirclesOf2Pi | Chart::TwoIntervals => {
                let periodic = *self == Chart::TwoCirclesOf2Pi;
                let count = if periodic { p - 1 } else { p };
                for interval in 1..=2u8 {
                    components.push(GridComponent { offset: nodes.len(), nodes: count, periodic });
                    for m in 0..count {
                        nodes.push(ChartPoint { interval, x: m as f64 * h });
                    }
                }
            }
        }
        Ok(ChartGrid { chart: *self, points_per_interval: p, h, components, nodes })
    }
}
