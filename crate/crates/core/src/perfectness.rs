//! Uniform-perfectness diagnostics: moduli of round annuli, separation
//! tests against point clouds, maximum-separating-modulus search, and
//! multi-scale perfectness profiles.
//!
//! The search is restricted to round annuli in the plane, so reported
//! values are lower bounds for the supremum over all conformal annuli
//! (round annuli detect non-uniform-perfectness up to a universal
//! constant). A scale floor is mandatory: around an isolated point of any
//! finite cloud the inner radius could otherwise shrink indefinitely,
//! producing unbounded moduli that say nothing about the underlying set.
//! Annuli separating with ∞ in the inner component are found by running
//! the search on the inverted cloud (see [`invert_cloud`]).

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sphere::{PointCloud, SpherePoint};

/// Clouds up to this many finite points are scanned with every pairwise
/// midpoint as a candidate center: the exact brute-force gap scan. Larger
/// clouds fall back to midpoints of the 8 nearest neighbors per point.
const EXACT_CENTER_LIMIT: usize = 2000;

const NEAR_NEIGHBORS: usize = 8;

/// A round annulus {z : r1 < |z − center| < r2} with 0 < r1 < r2 < ∞.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct RoundAnnulus {
    pub center: Complex64,
    pub r1: f64,
    pub r2: f64,
}

impl RoundAnnulus {
    pub fn new(center: Complex64, r1: f64, r2: f64) -> Result<Self> {
        if !center.re.is_finite() || !center.im.is_finite() {
            return Err(Error::invalid("annulus center must be finite"));
        }
        if !(r1 > 0.0) || !(r2 > r1) || !r2.is_finite() {
            return Err(Error::invalid(format!(
                "annulus radii must satisfy 0 < r1 < r2 < ∞, got ({r1}, {r2})"
            )));
        }
        Ok(RoundAnnulus { center, r1, r2 })
    }

    /// (1/2π) log(r2/r1).
    pub fn modulus(&self) -> f64 {
        (self.r2 / self.r1).ln() / (2.0 * std::f64::consts::PI)
    }

    /// Shrink both radii inward by the relative margin `eps`, for testing
    /// stochastic clouds of known accuracy against prescribed annuli.
    pub fn shrunk(&self, eps: f64) -> Result<Self> {
        RoundAnnulus::new(self.center, self.r1 * (1.0 + eps), self.r2 * (1.0 - eps))
    }
}

impl Serialize for RoundAnnulus {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = ser.serialize_map(Some(3))?;
        m.serialize_entry("center", &[self.center.re, self.center.im])?;
        m.serialize_entry("r1", &self.r1)?;
        m.serialize_entry("r2", &self.r2)?;
        m.end()
    }
}

impl<'de> Deserialize<'de> for RoundAnnulus {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            center: [f64; 2],
            r1: f64,
            r2: f64,
        }
        let raw = Raw::deserialize(de)?;
        RoundAnnulus::new(Complex64::new(raw.center[0], raw.center[1]), raw.r1, raw.r2)
            .map_err(serde::de::Error::custom)
    }
}

/// Exact (tolerance-free) separation test: true iff no cloud point lies
/// strictly inside the open annulus, at least one point lies in the closed
/// inner disk, and at least one lies in the closed outer region (∞ counts
/// as outer). Stochastic clouds should be tested against annuli shrunk by
/// the cloud's known accuracy.
pub fn separates(annulus: &RoundAnnulus, cloud: &PointCloud) -> bool {
    let mut inner = false;
    let mut outer = false;
    for p in &cloud.points {
        match p {
            SpherePoint::Infinity => outer = true,
            SpherePoint::Finite(z) => {
                let d = (z - annulus.center).norm();
                if d > annulus.r1 && d < annulus.r2 {
                    return false;
                }
                if d <= annulus.r1 {
                    inner = true;
                }
                if d >= annulus.r2 {
                    outer = true;
                }
            }
        }
    }
    inner && outer
}

/// Best separating candidate found by the gap scan, ordered by modulus
/// then by (center.re, center.im, r1) ascending for deterministic ties.
#[derive(Clone, Copy, Debug, PartialEq)]
struct Candidate {
    modulus: f64,
    center: Complex64,
    r1: f64,
    r2: f64,
}

impl Candidate {
    fn better_than(&self, other: &Candidate) -> bool {
        if self.modulus != other.modulus {
            return self.modulus > other.modulus;
        }
        let a = (self.center.re, self.center.im, self.r1);
        let b = (other.center.re, other.center.im, other.r1);
        a < b
    }
}

fn candidate_centers(points: &[Complex64]) -> Vec<Complex64> {
    let n = points.len();
    let mut centers = points.to_vec();
    if n <= EXACT_CENTER_LIMIT {
        for i in 0..n {
            for j in i + 1..n {
                centers.push((points[i] + points[j]) * 0.5);
            }
        }
    } else {
        let knn: Vec<Vec<Complex64>> = points
            .par_iter()
            .enumerate()
            .map(|(i, &p)| {
                let mut dists: Vec<(f64, usize)> = points
                    .iter()
                    .enumerate()
                    .filter(|&(j, _)| j != i)
                    .map(|(j, &q)| ((q - p).norm(), j))
                    .collect();
                let k = NEAR_NEIGHBORS.min(dists.len());
                if k > 0 {
                    dists.select_nth_unstable_by(k - 1, |a, b| a.partial_cmp(b).unwrap());
                }
                let mut near = dists[..k].to_vec();
                near.sort_by(|a, b| a.partial_cmp(b).unwrap());
                near.iter().map(|&(_, j)| (p + points[j]) * 0.5).collect()
            })
            .collect();
        for mids in knn {
            centers.extend(mids);
        }
    }
    centers
}

/// Per-center gap scan evaluated at several floors at once (one distance
/// sort per center). `floors` need not be ordered here.
fn scan_centers(points: &[Complex64], centers: &[Complex64], floors: &[f64]) -> Vec<Option<Candidate>> {
    centers
        .par_iter()
        .map(|&c| {
            let mut dists: Vec<f64> = points.iter().map(|&p| (p - c).norm()).collect();
            dists.sort_by(|a, b| a.partial_cmp(b).unwrap());
            dists.dedup();
            let mut best: Vec<Option<Candidate>> = vec![None; floors.len()];
            for w in dists.windows(2) {
                let (d_in, d_out) = (w[0], w[1]);
                for (fi, &floor) in floors.iter().enumerate() {
                    let r1 = d_in.max(floor);
                    if r1 < d_out {
                        let cand = Candidate {
                            modulus: (d_out / r1).ln() / (2.0 * std::f64::consts::PI),
                            center: c,
                            r1,
                            r2: d_out,
                        };
                        if best[fi].map_or(true, |b| cand.better_than(&b)) {
                            best[fi] = Some(cand);
                        }
                    }
                }
            }
            best
        })
        .reduce(
            || vec![None; floors.len()],
            |mut acc, row| {
                for (slot, cand) in acc.iter_mut().zip(row) {
                    if let Some(c) = cand {
                        if slot.map_or(true, |b| c.better_than(&b)) {
                            *slot = Some(c);
                        }
                    }
                }
                acc
            },
        )
}

fn scan(cloud: &PointCloud, floors: &[f64]) -> Result<Vec<Option<(f64, RoundAnnulus)>>> {
    for &f in floors {
        if !(f > 0.0) {
            return Err(Error::invalid("scale floors must be positive"));
        }
    }
    let points: Vec<Complex64> = cloud.finite_points().collect();
    if points.len() < 2 {
        return Err(Error::invalid(
            "gap scan requires at least 2 finite points",
        ));
    }
    let centers = candidate_centers(&points);
    let best = scan_centers(&points, &centers, floors);
    Ok(best
        .into_iter()
        .map(|opt| {
            opt.map(|c| {
                let annulus = RoundAnnulus::new(c.center, c.r1, c.r2)
                    .expect("candidate radii are valid by construction");
                (c.modulus, annulus)
            })
        })
        .collect())
}

/// The maximum-modulus round annulus separating the cloud, over candidate
/// centers (every finite point, plus pairwise midpoints — all pairs up to
/// 2000 points, 8-nearest-neighbor pairs beyond) and radii taken from
/// consecutive sorted point distances, with the inner radius clamped up
/// to `scale_floor`. Returns None when no candidate separates.
pub fn max_separating_modulus(
    cloud: &PointCloud,
    scale_floor: f64,
) -> Result<Option<(f64, RoundAnnulus)>> {
    Ok(scan(cloud, &[scale_floor])?.pop().expect("one floor"))
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ProfileEntry {
    pub floor: f64,
    pub modulus: Option<f64>,
    pub annulus: Option<RoundAnnulus>,
}

/// [`max_separating_modulus`] at each floor; floors must be positive and
/// strictly descending. The resulting moduli are monotone non-decreasing
/// as the floor decreases.
pub fn perfectness_profile(cloud: &PointCloud, floors: &[f64]) -> Result<Vec<ProfileEntry>> {
    if floors.is_empty() {
        return Err(Error::invalid("at least one floor required"));
    }
    if floors.windows(2).any(|w| w[0] <= w[1]) {
        return Err(Error::invalid("floors must be strictly descending"));
    }
    let results = scan(cloud, floors)?;
    Ok(floors
        .iter()
        .zip(results)
        .map(|(&floor, r)| ProfileEntry {
            floor,
            modulus: r.as_ref().map(|(m, _)| *m),
            annulus: r.map(|(_, a)| a),
        })
        .collect())
}

/// The cloud under z ↦ 1/z (0 ↔ ∞), for searching annuli that separate
/// with ∞ inside the inner component; report found annuli in the inverted
/// coordinates.
pub fn invert_cloud(cloud: &PointCloud) -> PointCloud {
    let points = cloud
        .points
        .iter()
        .map(|p| match p {
            SpherePoint::Infinity => SpherePoint::finite(0.0, 0.0),
            SpherePoint::Finite(z) if *z == Complex64::new(0.0, 0.0) => SpherePoint::Infinity,
            SpherePoint::Finite(z) => SpherePoint::from_complex(z.inv()),
        })
        .collect();
    let mut out = PointCloud::new(points, format!("inverted:{}", cloud.method_tag));
    out.params = cloud.params.clone();
    out
}
