//! Points on the Riemann sphere, the chordal metric, and point-cloud
//! distance utilities.
//!
//! The spherical metric is realized as the chordal metric of diameter 2,
//! `σ(z,w) = 2|z−w| / √((1+|z|²)(1+|w|²))`, which is the Euclidean distance
//! between the stereographic images of `z` and `w` on the embedded unit
//! sphere. All operations here are pure and all types are immutable after
//! construction.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Magnitude above which the direct chordal formula is at risk of
/// overflowing `(1+|z|²)`; such points are routed through the inverted
/// chart (`σ` is invariant under `z ↦ 1/z`).
const CHART_SWITCH: f64 = 1e100;

/// A point of the Riemann sphere: a finite complex number or ∞.
///
/// Finite coordinates are required to be finite `f64`s; values with
/// `|z| > 1e150` are *not* coerced to ∞ — callers must construct ∞
/// explicitly.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpherePoint {
    Finite(Complex64),
    Infinity,
}

impl SpherePoint {
    /// A finite point. Panics if either coordinate is NaN or infinite.
    pub fn finite(re: f64, im: f64) -> Self {
        assert!(
            re.is_finite() && im.is_finite(),
            "finite sphere point requires finite coordinates, got ({re}, {im})"
        );
        SpherePoint::Finite(Complex64::new(re, im))
    }

    pub fn from_complex(z: Complex64) -> Self {
        Self::finite(z.re, z.im)
    }

    pub const fn infinity() -> Self {
        SpherePoint::Infinity
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }

    pub fn as_finite(&self) -> Option<Complex64> {
        match self {
            SpherePoint::Finite(z) => Some(*z),
            SpherePoint::Infinity => None,
        }
    }

    /// Stereographic embedding into the unit sphere in R³. The chordal
    /// metric is exactly the Euclidean distance between embedded points.
    pub fn embed(&self) -> [f64; 3] {
        match self {
            SpherePoint::Infinity => [0.0, 0.0, 1.0],
            SpherePoint::Finite(z) => {
                let n = z.norm_sqr();
                if n <= 1.0 {
                    let d = 1.0 + n;
                    [2.0 * z.re / d, 2.0 * z.im / d, (n - 1.0) / d]
                } else {
                    // work with w = 1/z to avoid overflow for huge |z|
                    let w = z.inv();
                    let m = w.norm_sqr();
                    let d = 1.0 + m;
                    [2.0 * w.re / d, -2.0 * w.im / d, (1.0 - m) / d]
                }
            }
        }
    }
}

impl fmt::Display for SpherePoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpherePoint::Finite(z) => write!(f, "{} {}", z.re, z.im),
            SpherePoint::Infinity => write!(f, "inf"),
        }
    }
}

/// Chordal (spherical) distance, with range [0, 2].
///
/// `σ(z,w) = 2|z−w|/√((1+|z|²)(1+|w|²))`, `σ(z,∞) = 2/√(1+|z|²)`.
pub fn chordal_dist(p: SpherePoint, q: SpherePoint) -> f64 {
    use SpherePoint::*;
    match (p, q) {
        (Infinity, Infinity) => 0.0,
        (Finite(z), Infinity) | (Infinity, Finite(z)) => {
            let t = z.norm();
            if t <= 1.0 {
                2.0 / (1.0 + t * t).sqrt()
            } else {
                let s = 1.0 / t;
                2.0 * s / (s * s + 1.0).sqrt()
            }
        }
        (Finite(z), Finite(w)) => {
            if z.norm() <= CHART_SWITCH && w.norm() <= CHART_SWITCH {
                2.0 * (z - w).norm() / ((1.0 + z.norm_sqr()).sqrt() * (1.0 + w.norm_sqr()).sqrt())
            } else {
                // σ is invariant under the sphere rotation z ↦ 1/z
                let inv = |v: Complex64| {
                    if v == Complex64::new(0.0, 0.0) {
                        Infinity
                    } else {
                        Finite(v.inv())
                    }
                };
                chordal_dist(inv(z), inv(w))
            }
        }
    }
}

/// A finite spherical point set together with the method and parameters
/// that produced it. `params` must record enough to reproduce the cloud
/// bit-exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PointCloud {
    pub points: Vec<SpherePoint>,
    pub method_tag: String,
    pub params: BTreeMap<String, String>,
}

impl PointCloud {
    pub fn new(points: Vec<SpherePoint>, method_tag: impl Into<String>) -> Self {
        PointCloud {
            points,
            method_tag: method_tag.into(),
            params: BTreeMap::new(),
        }
    }

    pub fn with_param(mut self, key: impl Into<String>, value: impl ToString) -> Self {
        self.params.insert(key.into(), value.to_string());
        self
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn finite_points(&self) -> impl Iterator<Item = Complex64> + '_ {
        self.points.iter().filter_map(|p| p.as_finite())
    }

    /// Newline-delimited text form: `re im` per finite point, the literal
    /// token `inf` for ∞.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for p in &self.points {
            s.push_str(&p.to_string());
            s.push('\n');
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Self> {
        let mut points = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            if line == "inf" {
                points.push(SpherePoint::Infinity);
                continue;
            }
            let mut it = line.split_whitespace();
            let (re, im) = match (it.next(), it.next(), it.next()) {
                (Some(re), Some(im), None) => (re, im),
                _ => {
                    return Err(Error::invalid(format!(
                        "cloud line {}: expected `re im` or `inf`, got {line:?}",
                        lineno + 1
                    )))
                }
            };
            let re: f64 = re
                .parse()
                .map_err(|e| Error::invalid(format!("cloud line {}: {e}", lineno + 1)))?;
            let im: f64 = im
                .parse()
                .map_err(|e| Error::invalid(format!("cloud line {}: {e}", lineno + 1)))?;
            if !re.is_finite() || !im.is_finite() {
                return Err(Error::invalid(format!(
                    "cloud line {}: non-finite coordinates",
                    lineno + 1
                )));
            }
            points.push(SpherePoint::finite(re, im));
        }
        Ok(PointCloud::new(points, "file"))
    }
}

// JSON mirrors the text form: {"re":…, "im":…} or {"inf":true}.
impl Serialize for SpherePoint {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let mut m = ser.serialize_map(None)?;
        match self {
            SpherePoint::Finite(z) => {
                m.serialize_entry("re", &z.re)?;
                m.serialize_entry("im", &z.im)?;
            }
            SpherePoint::Infinity => {
                m.serialize_entry("inf", &true)?;
            }
        }
        m.end()
    }
}

impl<'de> Deserialize<'de> for SpherePoint {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            re: Option<f64>,
            im: Option<f64>,
            inf: Option<bool>,
        }
        let raw = Raw::deserialize(de)?;
        match raw {
            Raw { inf: Some(true), .. } => Ok(SpherePoint::Infinity),
            Raw {
                re: Some(re),
                im: Some(im),
                inf: None | Some(false),
            } => {
                if re.is_finite() && im.is_finite() {
                    Ok(SpherePoint::finite(re, im))
                } else {
                    Err(serde::de::Error::custom("non-finite coordinates"))
                }
            }
            _ => Err(serde::de::Error::custom(
                "expected {re, im} or {inf: true}",
            )),
        }
    }
}

/// Maximum pairwise chordal distance of a nonempty cloud.
pub fn spherical_diameter(cloud: &PointCloud) -> Result<f64> {
    if cloud.is_empty() {
        return Err(Error::invalid("spherical_diameter of an empty cloud"));
    }
    let pts = &cloud.points;
    let d = pts
        .par_iter()
        .enumerate()
        .map(|(i, p)| {
            pts[i + 1..]
                .iter()
                .map(|q| chordal_dist(*p, *q))
                .fold(0.0, f64::max)
        })
        .reduce(|| 0.0, f64::max);
    Ok(d)
}

fn directed_hausdorff(a: &[SpherePoint], b: &[SpherePoint]) -> f64 {
    a.par_iter()
        .map(|p| {
            b.iter()
                .map(|q| chordal_dist(*p, *q))
                .fold(f64::INFINITY, f64::min)
        })
        .reduce(|| 0.0, f64::max)
}

/// Symmetric Hausdorff distance between two nonempty clouds in the chordal
/// metric.
pub fn hausdorff_dist(a: &PointCloud, b: &PointCloud) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::invalid("hausdorff_dist of an empty cloud"));
    }
    Ok(f64::max(
        directed_hausdorff(&a.points, &b.points),
        directed_hausdorff(&b.points, &a.points),
    ))
}

/// Merge points closer than `tol` (chordal), keeping first occurrences.
/// Sort-and-sweep on the R³ embedding keeps this near O(n log n).
pub fn dedup_points(points: &[SpherePoint], tol: f64) -> Vec<SpherePoint> {
    let embedded: Vec<[f64; 3]> = points.iter().map(|p| p.embed()).collect();
    let mut order: Vec<usize> = (0..points.len()).collect();
    order.sort_by(|&i, &j| {
        embedded[i][0]
            .partial_cmp(&embedded[j][0])
            .unwrap()
            .then(i.cmp(&j))
    });

    let mut kept: Vec<usize> = Vec::new();
    let mut keep_flag = vec![false; points.len()];
    for &i in &order {
        let xi = embedded[i][0];
        // scan kept points backwards while their x-coordinate is within tol
        let mut duplicate = false;
        for &j in kept.iter().rev() {
            if xi - embedded[j][0] > tol {
                break;
            }
            if chordal_dist(points[i], points[j]) <= tol {
                duplicate = true;
                break;
            }
        }
        if !duplicate {
            kept.push(i);
            keep_flag[i] = true;
        }
    }
    points
        .iter()
        .zip(keep_flag)
        .filter_map(|(p, keep)| keep.then_some(*p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const ZERO: SpherePoint = SpherePoint::Finite(Complex64::new(0.0, 0.0));
    const ONE: SpherePoint = SpherePoint::Finite(Complex64::new(1.0, 0.0));
    const I: SpherePoint = SpherePoint::Finite(Complex64::new(0.0, 1.0));

    #[test]
    fn chordal_antipodal() {
        assert_eq!(chordal_dist(ZERO, SpherePoint::Infinity), 2.0);
    }

    #[test]
    fn chordal_identity() {
        let z = SpherePoint::finite(0.3, -0.7);
        assert_eq!(chordal_dist(z, z), 0.0);
        assert_eq!(
            chordal_dist(SpherePoint::Infinity, SpherePoint::Infinity),
            0.0
        );
    }

    #[test]
    fn chordal_zero_one() {
        let d = chordal_dist(ZERO, ONE);
        assert!((d - 2.0_f64.sqrt()).abs() < 1e-15, "got {d}");
    }

    #[test]
    fn chordal_huge_points() {
        // 1e200 is chordally within ~1e-200 of ∞, so nearly antipodal to 0
        let big = SpherePoint::finite(1e200, 0.0);
        let d = chordal_dist(big, ZERO);
        assert!((d - 2.0).abs() < 1e-12, "got {d}");
        let d = chordal_dist(big, SpherePoint::Infinity);
        assert!(d < 1e-12, "got {d}");
    }

    #[test]
    fn embedding_matches_direct_formula() {
        let pts = [
            SpherePoint::finite(0.5, -0.25),
            SpherePoint::finite(-3.0, 4.0),
            SpherePoint::finite(0.0, 0.0),
            SpherePoint::Infinity,
        ];
        for &p in &pts {
            for &q in &pts {
                let e = p.embed();
                let f = q.embed();
                let de =
                    ((e[0] - f[0]).powi(2) + (e[1] - f[1]).powi(2) + (e[2] - f[2]).powi(2)).sqrt();
                assert!((de - chordal_dist(p, q)).abs() < 1e-14);
            }
        }
    }

    #[test]
    fn diameter_examples() {
        let single = PointCloud::new(vec![I], "t");
        assert_eq!(spherical_diameter(&single).unwrap(), 0.0);

        let anti = PointCloud::new(vec![ZERO, SpherePoint::Infinity], "t");
        assert_eq!(spherical_diameter(&anti).unwrap(), 2.0);

        // {0, 1, i}: brute force over the 3 pairs gives √2
        let c = PointCloud::new(vec![ZERO, ONE, I], "t");
        let mut expect = 0.0_f64;
        for (p, q) in [(ZERO, ONE), (ZERO, I), (ONE, I)] {
            expect = expect.max(chordal_dist(p, q));
        }
        assert!((expect - 2.0_f64.sqrt()).abs() < 1e-15);
        assert_eq!(spherical_diameter(&c).unwrap(), expect);

        assert!(spherical_diameter(&PointCloud::new(vec![], "t")).is_err());
    }

    #[test]
    fn hausdorff_examples() {
        let a = PointCloud::new(vec![ZERO, ONE, I], "t");
        assert_eq!(hausdorff_dist(&a, &a).unwrap(), 0.0);

        let z = PointCloud::new(vec![ZERO], "t");
        let inf = PointCloud::new(vec![SpherePoint::Infinity], "t");
        assert_eq!(hausdorff_dist(&z, &inf).unwrap(), 2.0);

        let zo = PointCloud::new(vec![ZERO, ONE], "t");
        let d = hausdorff_dist(&zo, &z).unwrap();
        assert!((d - 2.0_f64.sqrt()).abs() < 1e-15);

        assert!(hausdorff_dist(&z, &PointCloud::new(vec![], "t")).is_err());
    }

    #[test]
    fn hausdorff_zero_iff_equal_sets() {
        let a = PointCloud::new(vec![ZERO, ONE, SpherePoint::Infinity], "t");
        let b = PointCloud::new(vec![ONE, SpherePoint::Infinity, ZERO, ONE], "t");
        assert_eq!(hausdorff_dist(&a, &b).unwrap(), 0.0);
        let c = PointCloud::new(vec![ZERO, ONE], "t");
        assert!(hausdorff_dist(&a, &c).unwrap() > 0.0);
    }

    #[test]
    fn text_round_trip() {
        let cloud = PointCloud::new(
            vec![
                SpherePoint::finite(0.25, -1.5),
                SpherePoint::Infinity,
                SpherePoint::finite(-3.0, 0.125),
            ],
            "t",
        );
        let text = cloud.to_text();
        assert_eq!(text, "0.25 -1.5\ninf\n-3 0.125\n");
        let back = PointCloud::from_text(&text).unwrap();
        assert_eq!(back.points, cloud.points);

        assert!(PointCloud::from_text("0.5").is_err());
        assert!(PointCloud::from_text("a b").is_err());
    }

    #[test]
    fn json_round_trip() {
        let cloud = PointCloud::new(
            vec![SpherePoint::finite(1.0, 2.0), SpherePoint::Infinity],
            "t",
        );
        let s = serde_json::to_string(&cloud).unwrap();
        assert!(s.contains("\"inf\":true"));
        let back: PointCloud = serde_json::from_str(&s).unwrap();
        assert_eq!(back, cloud);
    }

    #[test]
    fn dedup_merges_close_points() {
        let pts = vec![
            SpherePoint::finite(0.0, 0.0),
            SpherePoint::finite(1e-12, 0.0),
            SpherePoint::finite(1.0, 0.0),
            SpherePoint::Infinity,
            SpherePoint::Infinity,
        ];
        let out = dedup_points(&pts, 1e-10);
        assert_eq!(out.len(), 3);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_point() -> impl Strategy<Value = SpherePoint> {
            prop_oneof![
                9 => (-50.0..50.0_f64, -50.0..50.0_f64)
                    .prop_map(|(re, im)| SpherePoint::finite(re, im)),
                1 => Just(SpherePoint::Infinity),
            ]
        }

        proptest! {
            #[test]
            fn metric_axioms(p in arb_point(), q in arb_point(), r in arb_point()) {
                let pq = chordal_dist(p, q);
                let qp = chordal_dist(q, p);
                prop_assert_eq!(pq, qp);
                prop_assert!((0.0..=2.0 + 1e-15).contains(&pq));
                let pr = chordal_dist(p, r);
                let rq = chordal_dist(r, q);
                prop_assert!(pq <= pr + rq + 1e-12);
            }

            // σ is invariant under the rotation z ↦ −1/z̄ of the sphere
            #[test]
            fn rotation_invariance(p in arb_point(), q in arb_point()) {
                let rot = |s: SpherePoint| match s {
                    SpherePoint::Infinity => SpherePoint::finite(0.0, 0.0),
                    SpherePoint::Finite(z) if z == Complex64::new(0.0, 0.0) =>
                        SpherePoint::Infinity,
                    SpherePoint::Finite(z) => SpherePoint::Finite(-z.conj().inv()),
                };
                let d1 = chordal_dist(p, q);
                let d2 = chordal_dist(rot(p), rot(q));
                prop_assert!((d1 - d2).abs() < 1e-12);
            }
        }
    }
}
