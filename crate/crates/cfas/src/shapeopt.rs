//! Optimal movement-region shapes under measure and side-length limits.
//!
//! With the area (or volume) budget active, the HSP-maximizing box is the
//! least compact one: the longest admissible sides sit at their limits and
//! the remaining side absorbs the budget. The grid oracles below maximize
//! the closed-form HSP directly and exist to confirm that.

use crate::analytic::closed_form_value;
use crate::error::{ensure_positive, Result};
#[cfg(feature = "parallel")]
use rayon::prelude::*;

/// Area budget and per-side limits for a sub-rectangle search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeConstraints2D {
    s: f64,
    l1: f64,
    l2: f64,
}

impl ShapeConstraints2D {
    /// Maximum area `s` and side limits `l1`, `l2`, all positive.
    pub fn new(s: f64, l1: f64, l2: f64) -> Result<Self> {
        ensure_positive("area budget", s)?;
        ensure_positive("limit L1", l1)?;
        ensure_positive("limit L2", l2)?;
        Ok(Self { s, l1, l2 })
    }

    pub fn area(&self) -> f64 {
        self.s
    }

    pub fn limits(&self) -> (f64, f64) {
        (self.l1, self.l2)
    }
}

/// Volume budget and per-side limits for a sub-cuboid search.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShapeConstraints3D {
    v: f64,
    l1: f64,
    l2: f64,
    l3: f64,
}

impl ShapeConstraints3D {
    /// Maximum volume `v` and side limits `l1`, `l2`, `l3`, all positive.
    pub fn new(v: f64, l1: f64, l2: f64, l3: f64) -> Result<Self> {
        ensure_positive("volume budget", v)?;
        ensure_positive("limit L1", l1)?;
        ensure_positive("limit L2", l2)?;
        ensure_positive("limit L3", l3)?;
        Ok(Self { v, l1, l2, l3 })
    }

    pub fn volume(&self) -> f64 {
        self.v
    }

    pub fn limits(&self) -> (f64, f64, f64) {
        (self.l1, self.l2, self.l3)
    }
}

/// HSP-optimal sub-rectangle, in the caller's axis order.
///
/// When the area budget covers the full box the limits themselves are
/// optimal (the HSP increases in every side). Otherwise the side with the
/// larger limit is maxed out and the other takes `s / max_limit`.
pub fn optimal_rectangle(c: &ShapeConstraints2D) -> (f64, f64) {
    if c.s >= c.l1 * c.l2 {
        return (c.l1, c.l2);
    }
    if c.l1 <= c.l2 {
        (c.s / c.l2, c.l2)
    } else {
        (c.l1, c.s / c.l1)
    }
}

/// HSP-optimal sub-cuboid, in the caller's axis order.
///
/// The two largest limits are maxed out and the smallest axis takes
/// `v / (product of the other two)`. When the budget is slack the full box
/// is optimal. With limits sorted `la <= lb <= lc`, an active budget
/// (`v < la lb lc`) forces `v / (lb lc) < la`, so the returned point is
/// always feasible.
pub fn optimal_cuboid(c: &ShapeConstraints3D) -> (f64, f64, f64) {
    let mut order = [0usize, 1, 2];
    let limits = [c.l1, c.l2, c.l3];
    order.sort_unstable_by(|&a, &b| limits[a].partial_cmp(&limits[b]).expect("finite limits"));
    let (la, lb, lc) = (limits[order[0]], limits[order[1]], limits[order[2]]);
    if c.v >= la * lb * lc {
        return (c.l1, c.l2, c.l3);
    }
    let t_small = c.v / (lb * lc);
    debug_assert!(t_small <= la);
    let mut out = [0.0; 3];
    out[order[0]] = t_small;
    out[order[1]] = lb;
    out[order[2]] = lc;
    (out[0], out[1], out[2])
}

fn better2(a: &([f64; 2], f64), b: &([f64; 2], f64)) -> bool {
    a.1 > b.1 || (a.1 == b.1 && a.0[1] < b.0[1])
}

fn better3(a: &([f64; 3], f64), b: &([f64; 3], f64)) -> bool {
    a.1 > b.1 || (a.1 == b.1 && (a.0[1] < b.0[1] || (a.0[1] == b.0[1] && a.0[2] < b.0[2])))
}

fn rectangle_candidate(c: &ShapeConstraints2D, lambda2: f64, u0: f64, t2: f64) -> ([f64; 2], f64) {
    let t1 = c.l1.min(c.s / t2);
    let sides = [t1, t2];
    (sides, closed_form_value(&sides, lambda2, u0))
}

fn cuboid_candidate(
    c: &ShapeConstraints3D,
    lambda2: f64,
    u0: f64,
    t2: f64,
    t3: f64,
) -> ([f64; 3], f64) {
    let t1 = c.l1.min(c.v / (t2 * t3));
    let sides = [t1, t2, t3];
    (sides, closed_form_value(&sides, lambda2, u0))
}

/// Grid-search oracle for [`optimal_rectangle`]: sweeps `t2` over an
/// equispaced grid up to `l2` with `t1 = min(l1, s / t2)` and returns the
/// best sides and HSP value. Ties prefer the smaller `t2`.
pub fn brute_force_rectangle(
    c: &ShapeConstraints2D,
    lambda2: f64,
    u0: f64,
    steps: usize,
) -> ([f64; 2], f64) {
    assert!(steps >= 100, "oracle needs at least 100 grid steps");
    #[cfg(feature = "parallel")]
    {
        (1..=steps)
            .into_par_iter()
            .map(|i| rectangle_candidate(c, lambda2, u0, i as f64 * c.l2 / steps as f64))
            .reduce_with(|a, b| if better2(&b, &a) { b } else { a })
            .expect("at least 100 candidates")
    }
    #[cfg(not(feature = "parallel"))]
    brute_force_rectangle_seq(c, lambda2, u0, steps)
}

/// Sequential variant of [`brute_force_rectangle`]; identical result.
pub fn brute_force_rectangle_seq(
    c: &ShapeConstraints2D,
    lambda2: f64,
    u0: f64,
    steps: usize,
) -> ([f64; 2], f64) {
    assert!(steps >= 100, "oracle needs at least 100 grid steps");
    (1..=steps)
        .map(|i| rectangle_candidate(c, lambda2, u0, i as f64 * c.l2 / steps as f64))
        .reduce(|a, b| if better2(&b, &a) { b } else { a })
        .expect("at least 100 candidates")
}

/// Grid-search oracle for [`optimal_cuboid`] over the `(t2, t3)` plane with
/// `t1 = min(l1, v / (t2 t3))`. Ties prefer the smaller `t2`, then `t3`.
pub fn brute_force_cuboid(
    c: &ShapeConstraints3D,
    lambda2: f64,
    u0: f64,
    steps: usize,
) -> ([f64; 3], f64) {
    assert!(steps >= 100, "oracle needs at least 100 grid steps");
    #[cfg(feature = "parallel")]
    {
        (0..steps * steps)
            .into_par_iter()
            .map(|k| {
                let t2 = (k / steps + 1) as f64 * c.l2 / steps as f64;
                let t3 = (k % steps + 1) as f64 * c.l3 / steps as f64;
                cuboid_candidate(c, lambda2, u0, t2, t3)
            })
            .reduce_with(|a, b| if better3(&b, &a) { b } else { a })
            .expect("at least 100 candidates")
    }
    #[cfg(not(feature = "parallel"))]
    brute_force_cuboid_seq(c, lambda2, u0, steps)
}

/// Sequential variant of [`brute_force_cuboid`]; identical result.
pub fn brute_force_cuboid_seq(
    c: &ShapeConstraints3D,
    lambda2: f64,
    u0: f64,
    steps: usize,
) -> ([f64; 3], f64) {
    assert!(steps >= 100, "oracle needs at least 100 grid steps");
    (0..steps * steps)
        .map(|k| {
            let t2 = (k / steps + 1) as f64 * c.l2 / steps as f64;
            let t3 = (k % steps + 1) as f64 * c.l3 / steps as f64;
            cuboid_candidate(c, lambda2, u0, t2, t3)
        })
        .reduce(|a, b| if better3(&b, &a) { b } else { a })
        .expect("at least 100 candidates")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::analytic::hsp_closed_form;
    use crate::geometry::DomainBox;

    const LAMBDA2: f64 = 19.739208802178716; // 2 pi^2
    const U0: f64 = 6.4;

    #[test]
    fn rectangle_active_budget() {
        let c = ShapeConstraints2D::new(1.0, 2.0, 4.0).unwrap();
        assert_eq!(optimal_rectangle(&c), (0.25, 4.0));
    }

    #[test]
    fn rectangle_slack_budget() {
        let c = ShapeConstraints2D::new(8.0, 2.0, 4.0).unwrap();
        assert_eq!(optimal_rectangle(&c), (2.0, 4.0));
    }

    #[test]
    fn rectangle_boundary_budget() {
        let c = ShapeConstraints2D::new(1.0, 1.0, 1.0).unwrap();
        assert_eq!(optimal_rectangle(&c), (1.0, 1.0));
    }

    #[test]
    fn rectangle_axis_order_preserved() {
        let c = ShapeConstraints2D::new(1.0, 4.0, 2.0).unwrap();
        assert_eq!(optimal_rectangle(&c), (4.0, 0.25));
    }

    #[test]
    fn cuboid_cases() {
        let c = ShapeConstraints3D::new(1.0, 1.0, 2.0, 4.0).unwrap();
        assert_eq!(optimal_cuboid(&c), (0.125, 2.0, 4.0));

        let c = ShapeConstraints3D::new(10.0, 1.0, 2.0, 4.0).unwrap();
        assert_eq!(optimal_cuboid(&c), (1.0, 2.0, 4.0));

        let c = ShapeConstraints3D::new(1.0, 1.0, 1.0, 1.0).unwrap();
        assert_eq!(optimal_cuboid(&c), (1.0, 1.0, 1.0));

        // caller axis order preserved
        let c = ShapeConstraints3D::new(1.0, 4.0, 1.0, 2.0).unwrap();
        assert_eq!(optimal_cuboid(&c), (4.0, 0.125, 2.0));
    }

    #[test]
    fn constraints_reject_non_positive() {
        assert!(ShapeConstraints2D::new(0.0, 1.0, 1.0).is_err());
        assert!(ShapeConstraints2D::new(1.0, -1.0, 1.0).is_err());
        assert!(ShapeConstraints3D::new(1.0, 1.0, f64::NAN, 1.0).is_err());
    }

    #[test]
    fn oracle_confirms_rectangle_optimum() {
        let c = ShapeConstraints2D::new(1.0, 2.0, 4.0).unwrap();
        let (_, best) = brute_force_rectangle(&c, LAMBDA2, U0, 4000);
        let analytic = hsp_closed_form(&DomainBox::new([0.25, 4.0]).unwrap(), LAMBDA2, U0).value;
        assert!((best - analytic).abs() < 1e-6);
        assert!(analytic >= best - 1e-9);
    }

    #[test]
    fn oracle_confirms_cuboid_optimum() {
        let c = ShapeConstraints3D::new(1.0, 1.0, 2.0, 4.0).unwrap();
        let (_, best) = brute_force_cuboid(&c, LAMBDA2, U0, 400);
        let analytic =
            hsp_closed_form(&DomainBox::new([0.125, 2.0, 4.0]).unwrap(), LAMBDA2, U0).value;
        assert!((best - analytic).abs() < 1e-6);
        assert!(analytic >= best - 1e-9);
    }

    #[test]
    fn oracle_slack_budget_returns_full_box() {
        let c = ShapeConstraints2D::new(8.0, 2.0, 4.0).unwrap();
        let (sides, _) = brute_force_rectangle(&c, LAMBDA2, U0, 2000);
        assert_eq!(sides[1], 4.0);
        assert!((sides[0] - 2.0).abs() < 1e-12);

        let c = ShapeConstraints2D::new(1.0, 1.0, 1.0).unwrap();
        let (sides, _) = brute_force_rectangle(&c, LAMBDA2, U0, 2000);
        assert_eq!(sides, [1.0, 1.0]);
    }

    #[test]
    fn interior_stationary_point_is_worse() {
        // the square of equal area is the interior minimum of the edge sweep
        let c = ShapeConstraints2D::new(1.0, 2.0, 4.0).unwrap();
        let (t1, t2) = optimal_rectangle(&c);
        let best = hsp_closed_form(&DomainBox::new([t1, t2]).unwrap(), LAMBDA2, U0).value;
        let root = c.area().sqrt();
        let square = hsp_closed_form(&DomainBox::new([root, root]).unwrap(), LAMBDA2, U0).value;
        assert!(square < best);
    }

    #[test]
    fn active_budget_maxes_out_the_longest_admissible_sides() {
        // the optimum is the least compact feasible box
        let c = ShapeConstraints2D::new(1.3, 1.7, 3.1).unwrap();
        let (t1, t2) = optimal_rectangle(&c);
        assert_eq!(t2, 3.1);
        assert!(t1 < 1.7);

        let c = ShapeConstraints3D::new(2.0, 1.4, 2.6, 1.9).unwrap();
        let (t1, t2, t3) = optimal_cuboid(&c);
        assert_eq!(t2, 2.6);
        assert_eq!(t3, 1.9);
        assert!(t1 < 1.4);
    }

    #[test]
    fn parallel_and_sequential_oracles_agree() {
        let c = ShapeConstraints2D::new(1.3, 1.7, 3.1).unwrap();
        assert_eq!(
            brute_force_rectangle(&c, LAMBDA2, 9.0, 500),
            brute_force_rectangle_seq(&c, LAMBDA2, 9.0, 500)
        );
        let c = ShapeConstraints3D::new(0.9, 1.1, 2.3, 2.9).unwrap();
        assert_eq!(
            brute_force_cuboid(&c, LAMBDA2, 9.0, 150),
            brute_force_cuboid_seq(&c, LAMBDA2, 9.0, 150)
        );
    }
}
