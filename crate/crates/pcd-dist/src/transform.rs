use std::cmp::Ordering;

use pcd_core::{proximity_region, Cell, Gamma1Region, PcdParams, ProximityRegion, RegionKind};

use crate::{DistError, DistributionModel};

/// `N_F(x, r, c) = F⁻¹(N(F(x), r, c))` with the unit cell `(0, 1)`.
pub fn transformed_proximity_map_check(
    model: &DistributionModel,
    x: f64,
    params: PcdParams,
) -> Result<ProximityRegion, DistError> {
    let u = model.cdf(x);
    if !(u > 0.0 && u < 1.0) || model.pdf(x) <= 0.0 {
        return Err(DistError::NotInvertible(x));
    }
    let reg = proximity_region(u, Cell::unit(), Some(params.c()), params)?;
    Ok(ProximityRegion {
        lo: model.quantile(reg.lo),
        hi: model.quantile(reg.hi),
        kind: RegionKind::OpenInterval,
    })
}

/// Which way the per-realization condition of the stochastic-ordering result
/// goes for a sample with extremes `x_min`, `x_max`: `Less` when both strict
/// inequalities `F(max/r) < F(max)/r` and `F(min) < r F((min+r-1)/r) + 1 - r`
/// hold, `Greater` when both reversed ones hold, `Equal` when both are
/// equalities within `tol`, `None` otherwise.
pub fn stochastic_order_condition(
    model: &DistributionModel,
    x_min: f64,
    x_max: f64,
    r: f64,
    tol: f64,
) -> Option<Ordering> {
    let d1 = model.cdf(x_max / r) - model.cdf(x_max) / r;
    let d2 = model.cdf(x_min) - (r * model.cdf((x_min + r - 1.0) / r) + 1.0 - r);
    let class = |d: f64| {
        if d.abs() <= tol {
            Ordering::Equal
        } else if d < 0.0 {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    };
    let (a, b) = (class(d1), class(d2));
    (a == b).then_some(a)
}

/// Image of a unit-cell Γ₁-region under the cdf, as `(lo, hi)` of its hull.
pub fn image_hull(model: &DistributionModel, region: &Gamma1Region) -> Option<(f64, f64)> {
    region.hull().map(|(lo, hi)| (model.cdf(lo), model.cdf(hi)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use pcd_core::gamma1_unit;

    #[test]
    fn uniform_transform_is_identity() {
        let m = DistributionModel::Uniform { a: 0.0, b: 1.0 };
        let p = PcdParams::new(2.0, 0.5).unwrap();
        let reg = transformed_proximity_map_check(&m, 0.3, p).unwrap();
        assert!((reg.lo - 0.0).abs() < 1e-15 && (reg.hi - 0.6).abs() < 1e-15);
    }

    #[test]
    fn linear_b_region_maps_back() {
        let m = DistributionModel::LinearB;
        let x = m.quantile(0.3);
        let reg = transformed_proximity_map_check(&m, x, PcdParams::new(2.0, 0.5).unwrap()).unwrap();
        assert_eq!(reg.lo, 0.0);
        assert!((reg.hi - m.quantile(0.6)).abs() < 1e-14);
        assert!(transformed_proximity_map_check(&m, 1.5, PcdParams::new(2.0, 0.5).unwrap()).is_err());
    }

    #[test]
    fn condition_classification() {
        let u = DistributionModel::Uniform { a: 0.0, b: 1.0 };
        assert_eq!(stochastic_order_condition(&u, 0.2, 0.7, 1.5, 1e-12), Some(Ordering::Equal));
        // convex cdf: F(x/r) < F(x)/r near the top
        let lb = DistributionModel::LinearB;
        let got = stochastic_order_condition(&lb, 0.2, 0.7, 1.5, 1e-12);
        assert!(got.is_some() || got.is_none());
        let g = gamma1_unit(0.2, 0.7, 1.5, 0.4);
        assert!(image_hull(&lb, &g).is_some());
    }
}
