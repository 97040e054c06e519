//! Grid comparison of polygon membership against the raw half-plane list.

use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::bounds;
use crate::channel::ChannelSpec;
use crate::geometry::Point;
use crate::rational::Rational;
use crate::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GridReport {
    pub points: usize,
    pub feasible: usize,
    pub disagreements: Vec<Point>,
}

/// `resolution × resolution` grid over the region's bounding box (a unit
/// side stands in for a zero-width side). Every grid point is classified
/// both by the polygon and by testing all critical-weight half-planes.
pub fn grid_cross_check(spec: &ChannelSpec, resolution: usize) -> Result<GridReport> {
    if resolution < 2 {
        return Err(Error::Range(format!("grid resolution {resolution} < 2")));
    }
    let constraints = bounds::halfplanes_theorem1(spec);
    let region = bounds::region_of(&constraints)?;
    let (x, y) = region.bounding_box();
    let side = |v: Rational| if v.is_zero() { Rational::one() } else { v };
    let (x, y) = (side(x), side(y));
    let steps = Rational::from_integer((resolution as i64 - 1).into());
    let rows: Vec<(usize, Vec<Point>)> = (0..resolution)
        .into_par_iter()
        .map(|i| {
            let r1 = &x * Rational::from_integer((i as i64).into()) / &steps;
            let mut feasible = 0;
            let mut bad = Vec::new();
            for j in 0..resolution {
                let r2 = &y * Rational::from_integer((j as i64).into()) / &steps;
                let p = Point::new(r1.clone(), r2);
                let direct = constraints.iter().all(|c| c.plane.contains(&p));
                if direct {
                    feasible += 1;
                }
                if direct != region.contains(&p) {
                    bad.push(p);
                }
            }
            (feasible, bad)
        })
        .collect();
    Ok(GridReport {
        points: resolution * resolution,
        feasible: rows.iter().map(|r| r.0).sum(),
        disagreements: rows.into_iter().flat_map(|r| r.1).collect(),
    })
}
