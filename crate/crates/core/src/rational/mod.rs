//! Rational and Möbius maps on the Riemann sphere: evaluation, composition,
//! spherical derivatives, fixed points with multipliers, preimages,
//! exceptional sets, and the spherical Lipschitz constant.

mod moebius;
mod poly;
mod roots;

pub use moebius::{is_loxodromic, MoebiusMap};
pub use poly::Polynomial;
pub use roots::{poly_roots, CLUSTER_TOL};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sphere::{dedup_points, SpherePoint};

const ZERO_C: Complex64 = Complex64::new(0.0, 0.0);

/// Tolerance for the numerical-coprimality check at construction.
const COPRIME_TOL: f64 = 1e-9;

/// Default degree cap for explicit composition.
pub const DEFAULT_DEGREE_CAP: usize = 64;

/// A nonconstant rational map num/den in lowest terms (numerically),
/// stored with monic denominator so the representation is canonical.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalMap {
    num: Polynomial,
    den: Polynomial,
    degree: usize,
}

impl RationalMap {
    /// Validating constructor: den not identically zero, map nonconstant,
    /// and num/den numerically coprime (no common root within 1e-9).
    pub fn new(num: Polynomial, den: Polynomial) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::invalid("denominator is identically zero"));
        }
        if num.is_zero() {
            return Err(Error::invalid("map is constant (zero numerator)"));
        }
        for c in num.coeffs().iter().chain(den.coeffs()) {
            if !c.re.is_finite() || !c.im.is_finite() {
                return Err(Error::invalid("coefficients must be finite"));
            }
        }
        let map = Self::new_unchecked(num, den);
        if map.degree == 0 {
            return Err(Error::invalid("map is constant"));
        }
        // constant-ratio degenerate pair, e.g. (2z+2)/(z+1)
        if map.num.degree() == map.den.degree() {
            let ratio = map.num.leading(); // den is monic
            if map.num.sub(&map.den.scale(ratio)).is_zero() {
                return Err(Error::invalid("map is constant (num = c*den)"));
            }
        }
        if map.num.degree().unwrap_or(0) >= 1 && map.den.degree().unwrap_or(0) >= 1 {
            let nroots = poly_roots(&map.num, 1e-12)?;
            let droots = poly_roots(&map.den, 1e-12)?;
            for a in &nroots {
                for b in &droots {
                    // relative to the root scale: maps conjugated to tiny
                    // scales keep legitimately close zero/pole pairs
                    let scale = a.norm().max(b.norm());
                    if (a - b).norm() <= COPRIME_TOL * scale || a == b {
                        return Err(Error::invalid(format!(
                            "num and den share a root near {a} (within relative {COPRIME_TOL:e})"
                        )));
                    }
                }
            }
        }
        Ok(map)
    }

    /// For pairs already known valid (compositions of valid maps, Möbius
    /// conversions). Trims and canonicalizes only.
    pub(crate) fn new_unchecked(num: Polynomial, den: Polynomial) -> Self {
        let lead = den.leading();
        let (num, den) = (num.scale(lead.inv()), den.scale(lead.inv()));
        let degree = num.degree_or_zero().max(den.degree_or_zero());
        RationalMap { num, den, degree }
    }

    pub fn from_polynomial(p: Polynomial) -> Result<Self> {
        Self::new(p, Polynomial::constant(Complex64::new(1.0, 0.0)))
    }

    /// Convenience: polynomial map from real ascending coefficients.
    pub fn polynomial_from_reals(coeffs: &[f64]) -> Result<Self> {
        Self::from_polynomial(Polynomial::from_reals(coeffs))
    }

    pub fn num(&self) -> &Polynomial {
        &self.num
    }

    pub fn den(&self) -> &Polynomial {
        &self.den
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn is_moebius(&self) -> bool {
        self.degree == 1
    }

    pub fn as_moebius(&self) -> Option<MoebiusMap> {
        if self.degree != 1 {
            return None;
        }
        MoebiusMap::new(
            self.num.coeff(1),
            self.num.coeff(0),
            self.den.coeff(1),
            self.den.coeff(0),
        )
        .ok()
    }

    /// The inverse (dz − b)/(−cz + a) of a degree-1 map, computed on raw
    /// coefficients.
    pub fn moebius_inverse(&self) -> Option<RationalMap> {
        if self.degree != 1 {
            return None;
        }
        let (a, b, c, d) = (
            self.num.coeff(1),
            self.num.coeff(0),
            self.den.coeff(1),
            self.den.coeff(0),
        );
        Some(RationalMap::new_unchecked(
            Polynomial::new(vec![-b, d]),
            Polynomial::new(vec![a, -c]),
        ))
    }

    /// Identity map z.
    pub fn identity() -> Self {
        Self::new_unchecked(
            Polynomial::from_reals(&[0.0, 1.0]),
            Polynomial::from_reals(&[1.0]),
        )
    }

    /// Numerically the identity map.
    pub fn is_identity(&self) -> bool {
        self.num.sub(&self.den.shift_up(1)).is_zero()
    }

    /// Coefficient-wise comparison of canonical forms.
    pub fn approx_eq(&self, other: &RationalMap, tol: f64) -> bool {
        let cmp = |a: &Polynomial, b: &Polynomial| {
            a.coeffs().len() == b.coeffs().len()
                && a.coeffs()
                    .iter()
                    .zip(b.coeffs())
                    .all(|(x, y)| (x - y).norm() <= tol)
        };
        cmp(&self.num, &other.num) && cmp(&self.den, &other.den)
    }

    /// The pair (num_w, den_w) of F(w) = 1/f(1/w), the conjugate of f by
    /// the chart swap. Used for everything at or near ∞.
    fn chart_pair(&self) -> (Polynomial, Polynomial) {
        let a = self.num.reversed();
        let b = self.den.reversed();
        let dn = self.num.degree_or_zero();
        let dd = self.den.degree_or_zero();
        if dn >= dd {
            (b.shift_up(dn - dd), a)
        } else {
            (b, a.shift_up(dd - dn))
        }
    }

    /// Total evaluation on the sphere: poles map to ∞, f(∞) is decided by
    /// leading coefficients, and points with |z| > 1 are evaluated through
    /// the 1/z chart so huge magnitudes cannot overflow.
    pub fn eval(&self, p: SpherePoint) -> SpherePoint {
        let dn = self.num.degree_or_zero();
        let dd = self.den.degree_or_zero();
        match p {
            SpherePoint::Infinity => {
                if dn > dd {
                    SpherePoint::Infinity
                } else if dn < dd {
                    SpherePoint::Finite(ZERO_C)
                } else {
                    // den is monic
                    SpherePoint::Finite(self.num.leading())
                }
            }
            SpherePoint::Finite(z) if z.norm() <= 1.0 => {
                let n = self.num.eval(z);
                let d = self.den.eval(z);
                if d == ZERO_C {
                    return SpherePoint::Infinity;
                }
                let q = n / d;
                if q.re.is_finite() && q.im.is_finite() {
                    SpherePoint::Finite(q)
                } else {
                    SpherePoint::Infinity
                }
            }
            SpherePoint::Finite(z) => {
                // f(z) = z^(dn-dd) * A(w)/B(w), w = 1/z, A = rev num, B = rev den
                let w = z.inv();
                let a = self.num.reversed().eval(w);
                let b = self.den.reversed().eval(w);
                if a == ZERO_C {
                    return if b == ZERO_C {
                        SpherePoint::Infinity
                    } else {
                        SpherePoint::Finite(ZERO_C)
                    };
                }
                if b == ZERO_C {
                    return SpherePoint::Infinity;
                }
                let k = dn as i32 - dd as i32;
                let r = a / b;
                let direct = z.powi(k) * r;
                if direct.re.is_finite() && direct.im.is_finite() {
                    return SpherePoint::Finite(direct);
                }
                // decide overflow/underflow by log-magnitude
                let ln_mag = k as f64 * z.norm().ln() + a.norm().ln() - b.norm().ln();
                if ln_mag > 709.0 {
                    SpherePoint::Infinity
                } else if ln_mag < -745.0 {
                    SpherePoint::Finite(ZERO_C)
                } else {
                    let phase = k as f64 * z.arg() + a.arg() - b.arg();
                    SpherePoint::Finite(Complex64::from_polar(ln_mag.exp(), phase))
                }
            }
        }
    }

    /// The spherical derivative f#(z) = |f'(z)|(1+|z|²)/(1+|f(z)|²),
    /// computed in the chart where the point is moderate so the value is
    /// finite and chart-independent (poles and ∞ included).
    pub fn spherical_derivative(&self, p: SpherePoint) -> f64 {
        DerivKit::new(self).eval_point(p)
    }

    /// sup over the sphere of the spherical derivative, to relative
    /// accuracy ~tol: the best spherical Lipschitz constant for the
    /// chordal metric.
    ///
    /// Dense quasi-uniform two-chart sampling (2·10^5 Fibonacci-lattice
    /// points) followed by coordinate-wise golden-section refinement of
    /// the best candidates. Deterministic and thread-count independent.
    pub fn lipschitz_constant(&self, tol: f64) -> f64 {
        let kit = DerivKit::new(self);
        const SAMPLES: usize = 200_000;
        const TOP: usize = 50;
        let golden = 0.618_033_988_749_894_9_f64;

        let mut charts: Vec<(bool, Complex64)> = Vec::with_capacity(SAMPLES + 2);
        for i in 0..SAMPLES {
            let zc = 1.0 - 2.0 * (i as f64 + 0.5) / SAMPLES as f64;
            let r = (1.0 - zc * zc).max(0.0).sqrt();
            let phi = 2.0 * std::f64::consts::PI * (i as f64 * golden).fract();
            let (x, y) = (r * phi.cos(), r * phi.sin());
            if zc <= 0.0 {
                charts.push((false, Complex64::new(x, y) / (1.0 - zc)));
            } else {
                charts.push((true, Complex64::new(x, -y) / (1.0 + zc)));
            }
        }
        charts.push((false, ZERO_C)); // 0
        charts.push((true, ZERO_C)); // ∞

        let values: Vec<f64> = charts
            .par_iter()
            .map(|&(w_chart, z)| kit.eval_chart(w_chart, z))
            .collect();

        let mut idx: Vec<usize> = (0..charts.len()).collect();
        idx.sort_by(|&i, &j| values[j].partial_cmp(&values[i]).unwrap().then(i.cmp(&j)));

        let mut best = values[idx[0]];
        let spacing = 2.0 * (4.0 * std::f64::consts::PI / SAMPLES as f64).sqrt();
        for &i in idx.iter().take(TOP) {
            let (w_chart, z) = charts[i];
            best = best.max(refine_local(&kit, w_chart, z, spacing, tol));
        }
        best
    }
}

/// Precomputed polynomial data for fast spherical-derivative evaluation in
/// both charts.
struct DerivKit {
    num: Polynomial,
    den: Polynomial,
    dnum: Polynomial,
    dden: Polynomial,
    num_w: Polynomial,
    den_w: Polynomial,
    dnum_w: Polynomial,
    dden_w: Polynomial,
}

impl DerivKit {
    fn new(map: &RationalMap) -> Self {
        let (num_w, den_w) = map.chart_pair();
        DerivKit {
            dnum: map.num.derivative(),
            dden: map.den.derivative(),
            dnum_w: num_w.derivative(),
            dden_w: den_w.derivative(),
            num: map.num.clone(),
            den: map.den.clone(),
            num_w,
            den_w,
        }
    }

    /// |W(z)| (1+|z|²) / (|den(z)|² + |num(z)|²) with W the Wronskian
    /// num'·den − num·den'; finite at poles.
    fn eval_chart(&self, w_chart: bool, z: Complex64) -> f64 {
        let (num, den, dnum, dden) = if w_chart {
            (&self.num_w, &self.den_w, &self.dnum_w, &self.dden_w)
        } else {
            (&self.num, &self.den, &self.dnum, &self.dden)
        };
        let n = num.eval(z);
        let d = den.eval(z);
        let np = dnum.eval(z);
        let dp = dden.eval(z);
        let wr = np * d - n * dp;
        wr.norm() * (1.0 + z.norm_sqr()) / (d.norm_sqr() + n.norm_sqr())
    }

    fn eval_point(&self, p: SpherePoint) -> f64 {
        match p {
            SpherePoint::Infinity => self.eval_chart(true, ZERO_C),
            SpherePoint::Finite(z) if z.norm() <= 1.0 => self.eval_chart(false, z),
            SpherePoint::Finite(z) => self.eval_chart(true, z.inv()),
        }
    }

    /// Multiplier f'(ζ) at a fixed point ζ, which is conjugation-invariant:
    /// at ∞ and at huge finite roots it is read off in the 1/z chart as
    /// F'(1/ζ) for F = 1/f(1/w).
    fn multiplier_at(&self, p: SpherePoint) -> Complex64 {
        let (num, den, dnum, dden, z) = match p {
            SpherePoint::Infinity => (&self.num_w, &self.den_w, &self.dnum_w, &self.dden_w, ZERO_C),
            SpherePoint::Finite(z) if z.norm() <= 1.0 => {
                (&self.num, &self.den, &self.dnum, &self.dden, z)
            }
            SpherePoint::Finite(z) => (&self.num_w, &self.den_w, &self.dnum_w, &self.dden_w, z.inv()),
        };
        let n = num.eval(z);
        let d = den.eval(z);
        let np = dnum.eval(z);
        let dp = dden.eval(z);
        (np * d - n * dp) / (d * d)
    }
}

fn golden_max(mut lo: f64, mut hi: f64, f: impl Fn(f64) -> f64) -> f64 {
    const INV_PHI: f64 = 0.618_033_988_749_894_9;
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    for _ in 0..48 {
        if f1 < f2 {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        } else {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        }
    }
    if f1 >= f2 {
        x1
    } else {
        x2
    }
}

fn refine_local(kit: &DerivKit, w_chart: bool, start: Complex64, h0: f64, tol: f64) -> f64 {
    let eval = |x: f64, y: f64| kit.eval_chart(w_chart, Complex64::new(x, y));
    let (mut x, mut y) = (start.re, start.im);
    let mut h = h0;
    let mut best = eval(x, y);
    for sweep in 0..40 {
        x = golden_max(x - h, x + h, |t| eval(t, y));
        y = golden_max(y - h, y + h, |t| eval(x, t));
        let v = eval(x, y);
        let gain = v - best;
        if v > best {
            best = v;
        }
        h *= 0.5;
        if sweep >= 3 && gain.abs() <= tol * best.max(1.0) {
            break;
        }
    }
    best
}

/// f ∘ g as an explicit coefficient expansion; Möbius ∘ Möbius goes through
/// the 2×2 matrix product. Errors when deg f · deg g exceeds `degree_cap`.
pub fn compose(f: &RationalMap, g: &RationalMap, degree_cap: usize) -> Result<RationalMap> {
    let would_be = f.degree() * g.degree();
    if would_be > degree_cap {
        return Err(Error::DegreeCapExceeded {
            would_be,
            cap: degree_cap,
        });
    }
    if f.degree() == 1 && g.degree() == 1 {
        // 2×2 coefficient-matrix product on the raw den-monic coefficients;
        // rescaling by the computed determinant would shred precision for
        // maps with extreme coefficient scales
        let (a1, b1, c1, d1) = (
            f.num.coeff(1),
            f.num.coeff(0),
            f.den.coeff(1),
            f.den.coeff(0),
        );
        let (a2, b2, c2, d2) = (
            g.num.coeff(1),
            g.num.coeff(0),
            g.den.coeff(1),
            g.den.coeff(0),
        );
        return Ok(RationalMap::new_unchecked(
            Polynomial::new(vec![a1 * b2 + b1 * d2, a1 * a2 + b1 * c2]),
            Polynomial::new(vec![c1 * b2 + d1 * d2, c1 * a2 + d1 * c2]),
        ));
    }
    // f = P/Q of degree m: f∘g = Σ p_k N^k D^(m-k) / Σ q_k N^k D^(m-k)
    let m = f.degree();
    let n = g.num();
    let d = g.den();
    let mut n_pows = Vec::with_capacity(m + 1);
    let mut d_pows = Vec::with_capacity(m + 1);
    n_pows.push(Polynomial::constant(Complex64::new(1.0, 0.0)));
    d_pows.push(Polynomial::constant(Complex64::new(1.0, 0.0)));
    for k in 1..=m {
        n_pows.push(n_pows[k - 1].mul(n));
        d_pows.push(d_pows[k - 1].mul(d));
    }
    let expand = |p: &Polynomial| {
        let mut acc = Polynomial::zero();
        for k in 0..=m {
            let c = p.coeff(k);
            if c != ZERO_C {
                acc = acc.add(&n_pows[k].mul(&d_pows[m - k]).scale(c));
            }
        }
        acc
    };
    Ok(RationalMap::new_unchecked(
        expand(f.num()),
        expand(f.den()),
    ))
}

pub fn moebius_to_rational(m: &MoebiusMap) -> RationalMap {
    RationalMap::new_unchecked(
        Polynomial::new(vec![m.b, m.a]),
        Polynomial::new(vec![m.d, m.c]),
    )
}

/// Classification of a fixed point by the modulus of its multiplier, with
/// tolerance 1e-9 around 0 and 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FixedPointClass {
    Superattracting,
    Attracting,
    Indifferent,
    Repelling,
}

pub fn classify_multiplier(lambda: Complex64) -> FixedPointClass {
    const TOL: f64 = 1e-9;
    let m = lambda.norm();
    if m <= TOL {
        FixedPointClass::Superattracting
    } else if m < 1.0 - TOL {
        FixedPointClass::Attracting
    } else if m <= 1.0 + TOL {
        FixedPointClass::Indifferent
    } else {
        FixedPointClass::Repelling
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct FixedPointRecord {
    pub location: SpherePoint,
    pub multiplier: Complex64,
    pub class: FixedPointClass,
}

/// All fixed points of f counted with multiplicity (deg f + 1 in total on
/// the sphere). Finite fixed points are the roots of num − z·den; ∞ is
/// fixed iff deg num > deg den, with multiplier read off in the 1/z chart.
/// Degree ≤ 2 fixed-point polynomials (all Möbius maps) are solved in
/// closed form, bypassing the simultaneous iteration.
pub fn fixed_points(f: &RationalMap) -> Result<Vec<FixedPointRecord>> {
    let phi = f.num().sub(&f.den().shift_up(1));
    if phi.is_zero() {
        return Err(Error::IdentityMap);
    }
    let kit = DerivKit::new(f);
    let mut records = Vec::new();

    if phi.degree().unwrap_or(0) >= 1 {
        for zeta in poly_roots(&phi, 1e-12)? {
            let lambda = kit.multiplier_at(SpherePoint::Finite(zeta));
            records.push(FixedPointRecord {
                location: SpherePoint::Finite(zeta),
                multiplier: lambda,
                class: classify_multiplier(lambda),
            });
        }
    }

    // total fixed-point count on the sphere is deg f + 1; the deficiency
    // of num − z·den from full degree lands at ∞
    let inf_mult = (f.degree() + 2).saturating_sub(phi.coeffs().len());
    if inf_mult > 0 {
        debug_assert!(f.num().degree_or_zero() > f.den().degree_or_zero());
        let lambda = kit.multiplier_at(SpherePoint::Infinity);
        let rec = FixedPointRecord {
            location: SpherePoint::Infinity,
            multiplier: lambda,
            class: classify_multiplier(lambda),
        };
        records.extend(std::iter::repeat(rec).take(inf_mult));
    }
    Ok(records)
}

/// The deg(f) preimages of w counted with multiplicity: roots of
/// num − w·den for finite w (plus ∞ for any degree deficiency), roots of
/// den plus ∞ with multiplicity deg num − deg den for w = ∞.
pub fn preimages(f: &RationalMap, w: SpherePoint) -> Result<Vec<SpherePoint>> {
    let phi = match w {
        SpherePoint::Infinity => f.den().clone(),
        SpherePoint::Finite(wv) => f.num().sub(&f.den().scale(wv)),
    };
    let finite: Vec<Complex64> = if phi.degree().unwrap_or(0) >= 1 {
        poly_roots(&phi, 1e-12)?
    } else {
        vec![]
    };
    let expected = match w {
        SpherePoint::Infinity => f.num().degree_or_zero(),
        SpherePoint::Finite(_) => f.degree(),
    };
    let inf_mult = match w {
        SpherePoint::Infinity => f
            .num()
            .degree_or_zero()
            .saturating_sub(f.den().degree_or_zero()),
        SpherePoint::Finite(_) => expected.saturating_sub(finite.len()),
    };
    let mut out: Vec<SpherePoint> = finite.into_iter().map(SpherePoint::Finite).collect();
    out.extend(std::iter::repeat(SpherePoint::Infinity).take(inf_mult));
    // canonical order keeps downstream random walks reproducible
    out.sort_by(|p, q| match (p, q) {
        (SpherePoint::Infinity, SpherePoint::Infinity) => std::cmp::Ordering::Equal,
        (SpherePoint::Infinity, _) => std::cmp::Ordering::Greater,
        (_, SpherePoint::Infinity) => std::cmp::Ordering::Less,
        (SpherePoint::Finite(a), SpherePoint::Finite(b)) => {
            (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap()
        }
    });
    Ok(out)
}

/// The exceptional set E(f).
///
/// For deg f ≥ 2: candidates are the fixed points of f and of f∘f; a
/// candidate is exceptional iff its accumulated depth-3 iterated-preimage
/// set has at most two distinct elements (clustering tolerance 1e-9). For
/// a loxodromic Möbius map the set is the single attracting fixed point;
/// other Möbius maps are rejected.
pub fn exceptional_points(f: &RationalMap) -> Result<Vec<SpherePoint>> {
    const DEDUP: f64 = 1e-9;
    if f.degree() == 1 {
        let m = f
            .as_moebius()
            .ok_or_else(|| Error::invalid("degree-1 map is not Möbius"))?;
        if !is_loxodromic(&m)? {
            return Err(Error::NotLoxodromic);
        }
        let attracting: Vec<SpherePoint> = fixed_points(f)?
            .into_iter()
            .filter(|r| {
                matches!(
                    r.class,
                    FixedPointClass::Attracting | FixedPointClass::Superattracting
                )
            })
            .map(|r| r.location)
            .collect();
        debug_assert_eq!(attracting.len(), 1);
        return Ok(attracting);
    }

    let f2 = compose(f, f, f.degree() * f.degree())?;
    let mut candidates: Vec<SpherePoint> = fixed_points(f)?
        .into_iter()
        .chain(fixed_points(&f2)?)
        .map(|r| r.location)
        .collect();
    candidates = dedup_points(&candidates, DEDUP);

    let mut exceptional = Vec::new();
    'cand: for &z in &candidates {
        let mut frontier = vec![z];
        let mut accumulated = vec![z];
        for _depth in 0..3 {
            let mut next = Vec::new();
            for &p in &frontier {
                next.extend(preimages(f, p)?);
            }
            frontier = dedup_points(&next, DEDUP);
            accumulated.extend(frontier.iter().copied());
            accumulated = dedup_points(&accumulated, DEDUP);
            if accumulated.len() > 2 {
                continue 'cand;
            }
        }
        exceptional.push(z);
    }
    Ok(dedup_points(&exceptional, DEDUP))
}

/// Maps serialize as {"num": [[re,im],…], "den": […]} in ascending powers.
impl Serialize for RationalMap {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let pairs = |p: &Polynomial| -> Vec<[f64; 2]> {
            p.coeffs().iter().map(|c| [c.re, c.im]).collect()
        };
        let mut m = ser.serialize_map(Some(2))?;
        m.serialize_entry("num", &pairs(&self.num))?;
        m.serialize_entry("den", &pairs(&self.den))?;
        m.end()
    }
}

impl<'de> Deserialize<'de> for RationalMap {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            num: Vec<[f64; 2]>,
            den: Vec<[f64; 2]>,
        }
        let raw = Raw::deserialize(de)?;
        let poly = |v: Vec<[f64; 2]>| Polynomial::new(v.into_iter().map(|p| Complex64::new(p[0], p[1])).collect());
        RationalMap::new(poly(raw.num), poly(raw.den)).map_err(serde::de::Error::custom)
    }
}
