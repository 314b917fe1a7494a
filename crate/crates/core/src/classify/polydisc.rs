//! Zero scans for polynomial weights on the polydisc.
//!
//! Both invertibility questions are decided on grids, so they are
//! heuristics: a zero set that touches the torus tangentially between grid
//! points, or a zero in the open polydisc that no grid slice meets, can be
//! missed.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::analysis::{Tri, TOL_ZERO};
use crate::error::{Result, WroError};
use crate::parallel::pool;
use crate::weights::{cis_turns, MultiPolynomial, Weight, WeightRepr};

/// Budget of grid slices per scan.
const MAX_SLICES: usize = 1 << 14;
const RADII: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];

/// The weight as a polynomial in `dim` variables (one-variable polynomials
/// depend on z_1 only).
pub fn lift(w: &Weight, dim: usize) -> Result<MultiPolynomial> {
    match w.repr() {
        WeightRepr::Multivariate(p) if p.dim() == dim => Ok(p.clone()),
        WeightRepr::Multivariate(p) if p.dim() < dim => MultiPolynomial::new(
            dim,
            p.terms()
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.resize(dim, 0);
                    (e, *c)
                })
                .collect(),
        ),
        WeightRepr::Polynomial(p) => MultiPolynomial::new(
            dim,
            p.coeffs()
                .iter()
                .enumerate()
                .map(|(k, c)| {
                    let mut e = vec![0; dim];
                    e[0] = k as u32;
                    (e, *c)
                })
                .collect(),
        ),
        WeightRepr::Multivariate(_) => Err(WroError::Precondition(
            "weight has more variables than the polydisc".into(),
        )),
        _ => Err(WroError::Unsupported(
            "polydisc classification needs a polynomial weight".into(),
        )),
    }
}

fn angles_per_axis(axes: usize, points_per_axis_factor: usize) -> usize {
    if axes == 0 {
        return 1;
    }
    let budget = MAX_SLICES / points_per_axis_factor.pow(axes as u32).max(1);
    let mut m: usize = 4;
    while (2 * m).pow(axes as u32) <= budget.max(1) && m < 1024 {
        m *= 2;
    }
    m
}

/// Evaluate `f` on every point of a product grid with `axes` factors of
/// size `per_axis`, in index order.
fn product_grid<T: Send>(
    axes: usize,
    per_axis: usize,
    point: impl Fn(usize) -> Complex64 + Sync,
    f: impl Fn(&[Complex64]) -> T + Sync + Send,
) -> Vec<T> {
    let total = per_axis.pow(axes as u32);
    pool().install(|| {
        (0..total)
            .into_par_iter()
            .map(|mut idx| {
                let z: Vec<Complex64> = (0..axes)
                    .map(|_| {
                        let i = idx % per_axis;
                        idx /= per_axis;
                        point(i)
                    })
                    .collect();
                f(&z)
            })
            .collect()
    })
}

/// Roots in z_1 of the slice at z', counted inside the unit disc, and the
/// distance of the nearest root modulus to 1.
fn slice_data(p: &MultiPolynomial, rest: &[Complex64]) -> Result<(usize, f64)> {
    let q = p.in_first_variable(rest);
    if q.is_zero() {
        return Ok((usize::MAX, 0.0));
    }
    let mut inside = 0;
    let mut dist = f64::INFINITY;
    for r in q.roots()? {
        let m = r.value.norm();
        dist = dist.min((m - 1.0).abs());
        if m < 1.0 {
            inside += r.multiplicity;
        }
    }
    Ok((inside, dist))
}

/// Invertibility on the torus T^n: no root of a one-variable slice over a torus grid
/// lies within `TOL_ZERO` of the circle, and the number of roots inside the
/// disc does not change across the grid (a change means some root crossed
/// the circle between grid points).
pub fn torus_invertible(p: &MultiPolynomial) -> Result<Tri> {
    for i in 0..p.dim() {
        if torus_scan(&swap_first(p, i)?)? == Tri::No {
            return Ok(Tri::No);
        }
    }
    Ok(Tri::Yes)
}

/// The same polynomial with variables 0 and i exchanged, so every variable
/// takes a turn as the root-finding variable.
fn swap_first(p: &MultiPolynomial, i: usize) -> Result<MultiPolynomial> {
    MultiPolynomial::new(
        p.dim(),
        p.terms()
            .iter()
            .map(|(e, c)| {
                let mut e = e.clone();
                e.swap(0, i);
                (e, *c)
            })
            .collect(),
    )
}

fn torus_scan(p: &MultiPolynomial) -> Result<Tri> {
    let axes = p.dim() - 1;
    let m = angles_per_axis(axes, 1);
    let data = product_grid(
        axes,
        m,
        |i| cis_turns(i as f64 / m as f64),
        |rest| slice_data(p, rest),
    );
    let data = data.into_iter().collect::<Result<Vec<_>>>()?;
    let first = data[0].0;
    let crossing = data.iter().any(|d| d.0 != first);
    let touching = data.iter().any(|d| d.1 <= TOL_ZERO);
    Ok(Tri::from_bool(!crossing && !touching))
}

/// Invertibility in A(U^n): no zero of a one-variable slice in the closed disc,
/// over a grid of the other variables in the closed polydisc (radii 0, 1/4, ..., 1 times a uniform
/// angle grid in each remaining variable).
pub fn polydisc_invertible(p: &MultiPolynomial) -> Result<Tri> {
    for i in 0..p.dim() {
        if polydisc_scan(&swap_first(p, i)?)? == Tri::No {
            return Ok(Tri::No);
        }
    }
    Ok(Tri::Yes)
}

fn polydisc_scan(p: &MultiPolynomial) -> Result<Tri> {
    let axes = p.dim() - 1;
    let m = angles_per_axis(axes, RADII.len());
    let per_axis = RADII.len() * m;
    let data = product_grid(
        axes,
        per_axis,
        |i| cis_turns((i % m) as f64 / m as f64) * RADII[i / m],
        |rest| -> Result<bool> {
            let q = p.in_first_variable(rest);
            if q.is_zero() {
                return Ok(true);
            }
            Ok(q.roots()?.iter().any(|r| r.value.norm() <= 1.0 + TOL_ZERO))
        },
    );
    for hit in data {
        if hit? {
            return Ok(Tri::No);
        }
    }
    Ok(Tri::Yes)
}
