//! Built-in constructors for four reference systems: the middle-third
//! Cantor IFS, the von Koch IFS, a quadratic family accumulating on the
//! unit circle, and a Schottky group whose limit set admits separating
//! annuli of unbounded modulus.

use std::collections::BTreeMap;

use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::perfectness::RoundAnnulus;
use crate::rational::{MoebiusMap, Polynomial, RationalMap};
use crate::semigroup::SemigroupSpec;
use crate::sphere::{PointCloud, SpherePoint};

/// A named system plus documented target quantities for its diagnostics.
#[derive(Clone, Debug)]
pub struct ExampleConfig {
    pub name: String,
    pub spec: SemigroupSpec,
    /// Documented expectations, keyed by quantity name. Closed forms are
    /// noted at the constructor that fills them in.
    pub expected: BTreeMap<String, f64>,
}

/// Lip of the affine map az + b from the singular values of the
/// determinant-normalized coefficient matrix: (T + √(T²−4))/2 with
/// T = (|a|² + |b|² + 1)/|a|.
fn affine_lip(a: Complex64, b: Complex64) -> f64 {
    let t = (a.norm_sqr() + b.norm_sqr() + 1.0) / a.norm();
    (t + (t * t - 4.0).max(0.0).sqrt()) / 2.0
}

fn affine_map(a: Complex64, b: Complex64) -> RationalMap {
    RationalMap::new(
        Polynomial::new(vec![b, a]),
        Polynomial::new(vec![Complex64::new(1.0, 0.0)]),
    )
    .expect("affine map is valid")
}

/// ⟨3z, 3z−2⟩: the inverses of z/3 and (z+2)/3. The backward-orbit
/// attractor is the middle-third Cantor set in [0, 1].
pub fn cantor_spec() -> ExampleConfig {
    let one = Complex64::new(1.0, 0.0);
    let three = Complex64::new(3.0, 0.0);
    let spec = SemigroupSpec::with_labels(
        vec![
            affine_map(three, Complex64::new(0.0, 0.0)),
            affine_map(three, Complex64::new(-2.0, 0.0)),
        ],
        false,
        64,
        Some(vec!["3z".into(), "3z-2".into()]),
    )
    .expect("cantor spec is valid");
    let mut expected = BTreeMap::new();
    // sup of generator Lipschitz constants, from the affine closed form
    expected.insert(
        "lip_sup".into(),
        affine_lip(three, Complex64::new(-2.0, 0.0)).max(affine_lip(three, one * 0.0)),
    );
    // thickest separating round annulus of the endpoint clouds: the moat
    // of a cylinder across its neighboring middle-third gaps, ratio 3
    expected.insert(
        "separating_modulus".into(),
        3.0_f64.ln() / (2.0 * std::f64::consts::PI),
    );
    expected.insert("attractor_min".into(), 0.0);
    expected.insert("attractor_max".into(), 1.0);
    ExampleConfig {
        name: "cantor".into(),
        spec,
        expected,
    }
}

/// Inverses of the four Koch contractions g₁ = z/3,
/// g₂ = (e^{iπ/3}z+1)/3, g₃ = (e^{2iπ/3}z+2)/3, g₄ = (z+2)/3: the
/// backward-orbit attractor is the von Koch curve over [0, 1].
pub fn koch_spec() -> ExampleConfig {
    let rot = |theta: f64| Complex64::from_polar(1.0, theta);
    let third = std::f64::consts::PI / 3.0;
    // g_k(z) = (w z + c)/3 inverts to z ↦ (3w⁻¹)z − c·w⁻¹
    let inv_of = |w: Complex64, c: f64| affine_map(3.0 * w.inv(), -c * w.inv());
    let gens = vec![
        inv_of(rot(0.0), 0.0),
        inv_of(rot(third), 1.0),
        inv_of(rot(2.0 * third), 2.0),
        inv_of(rot(0.0), 2.0),
    ];
    let lips: Vec<f64> = [
        (rot(0.0), 0.0),
        (rot(third), 1.0),
        (rot(2.0 * third), 2.0),
        (rot(0.0), 2.0),
    ]
    .iter()
    .map(|&(w, c)| affine_lip(3.0 * w.inv(), -c * w.inv()))
    .collect();
    let spec = SemigroupSpec::with_labels(
        gens,
        false,
        64,
        Some(vec![
            "g1_inv".into(),
            "g2_inv".into(),
            "g3_inv".into(),
            "g4_inv".into(),
        ]),
    )
    .expect("koch spec is valid");
    let mut expected = BTreeMap::new();
    expected.insert("lip_sup".into(), lips.iter().fold(0.0_f64, |a, &b| a.max(b)));
    expected.insert("strip_re_min".into(), 0.0);
    expected.insert("strip_re_max".into(), 1.0);
    expected.insert("strip_im_min".into(), 0.0);
    // apex height of the curve: 1/(2√3)
    expected.insert("strip_im_max".into(), 0.5 / 3.0_f64.sqrt());
    ExampleConfig {
        name: "koch".into(),
        spec,
        expected,
    }
}

/// b_n = 1 + 1/(n+2), the shift parameters of the quadratic family.
pub fn example4_b(n: usize) -> f64 {
    1.0 + 1.0 / (n as f64 + 2.0)
}

/// f_n(z) = (z + b_n)² − b_n for b_n = 1 + 1/(n+2), n = 0..=N, together
/// with z². Each f_n is z² conjugated by the shift z ↦ z + b_n, so
/// J(f_n) is the unit circle around −b_n and the repelling fixed point of
/// f_n is 1 − b_n = −1/(n+2). The family certifies an escape region near
/// ∞ while its Julia sets accumulate on the circle around −1.
pub fn example4_spec(n_max: usize) -> ExampleConfig {
    let mut gens = vec![RationalMap::polynomial_from_reals(&[0.0, 0.0, 1.0]).unwrap()];
    let mut labels = vec!["z^2".to_string()];
    for n in 0..=n_max {
        let b = example4_b(n);
        gens.push(RationalMap::polynomial_from_reals(&[b * b - b, 2.0 * b, 1.0]).unwrap());
        labels.push(format!("f{n}"));
    }
    let spec = SemigroupSpec::with_labels(gens, false, 64, Some(labels))
        .expect("example4 spec is valid");
    let mut expected = BTreeMap::new();
    expected.insert("escape_radius_max".into(), 10.0);
    expected.insert("repelling_fp_last".into(), -1.0 / (n_max as f64 + 2.0));
    ExampleConfig {
        name: "example4".into(),
        spec,
        expected,
    }
}

/// Default Schottky scales a_n = 2^{−n²}, r_n = a_n/4: they satisfy
/// r_n < a_n ≤ 1, both decrease to 0, and
/// (a_n − r_n)/(a_{n+1} + r_{n+1}) = (3/5)·2^{2n+1} → ∞.
pub fn schottky_scales(n: usize) -> (f64, f64) {
    let a = 2.0_f64.powi(-((n * n) as i32));
    (a, a / 4.0)
}

/// Circle centers: C_n around a_n on the real axis, C_n′ around a_n + 2i.
pub fn schottky_circles(n: usize) -> (Complex64, Complex64, f64) {
    let (a, r) = schottky_scales(n);
    (
        Complex64::new(a, 0.0),
        Complex64::new(a, 2.0),
        r,
    )
}

/// The inversive pairing map g_n(z) = (a_n + 2i) + r_n²/(z − a_n): the
/// canonical Möbius map carrying C_n onto C_n′ with the interior of C_n
/// going to the exterior of C_n′. Any alternative differing by pre/post
/// rotations fixing the circles would pair them equally well.
pub fn schottky_pairing(n: usize) -> MoebiusMap {
    let (center, center_prime, r) = schottky_circles(n);
    // (c′(z − c) + r²)/(z − c)
    MoebiusMap::new(
        center_prime,
        Complex64::new(r * r, 0.0) - center_prime * center,
        Complex64::new(1.0, 0.0),
        -center,
    )
    .expect("pairing map is invertible")
}

/// The round annulus A_n = Ann(0; a_{n+1}+r_{n+1}, a_n−r_n) between
/// consecutive circle pairs; its modulus has the closed form
/// (1/2π)(log(3/5) + (2n+1)·log 2) for the default scales.
pub fn schottky_annulus(n: usize) -> RoundAnnulus {
    let (a_n, r_n) = schottky_scales(n);
    let (a_next, r_next) = schottky_scales(n + 1);
    RoundAnnulus::new(Complex64::new(0.0, 0.0), a_next + r_next, a_n - r_n)
        .expect("schottky annulus is valid")
}

pub fn schottky_modulus_closed_form(n: usize) -> f64 {
    ((3.0_f64 / 5.0).ln() + (2 * n + 1) as f64 * 2.0_f64.ln()) / (2.0 * std::f64::consts::PI)
}

/// Möbius group generated by the pairing maps g_1..g_N (inverses appended
/// by group mode). N is capped at 6 to keep the default scale sequence
/// well inside double-precision range.
pub fn schottky_spec(n_max: usize) -> Result<ExampleConfig> {
    if !(1..=6).contains(&n_max) {
        return Err(Error::invalid(format!(
            "schottky N must be in 1..=6, got {n_max}"
        )));
    }
    // raw den-monic coefficients: (c′z + (r² − c′c))/(z − c)
    let gens: Vec<RationalMap> = (1..=n_max)
        .map(|n| {
            let (center, center_prime, r) = schottky_circles(n);
            RationalMap::new(
                Polynomial::new(vec![
                    Complex64::new(r * r, 0.0) - center_prime * center,
                    center_prime,
                ]),
                Polynomial::new(vec![-center, Complex64::new(1.0, 0.0)]),
            )
            .expect("pairing map is a valid rational map")
        })
        .collect();
    let labels: Vec<String> = (1..=n_max).map(|n| format!("g{n}")).collect();
    let spec = SemigroupSpec::with_labels(gens, true, 64, Some(labels))?;
    let mut expected = BTreeMap::new();
    for n in 1..n_max {
        expected.insert(
            format!("annulus_modulus_{n}"),
            schottky_modulus_closed_form(n),
        );
    }
    Ok(ExampleConfig {
        name: "schottky".into(),
        spec,
        expected,
    })
}

/// Exact level-N middle-third endpoint cloud: the 2^{N+1} interval
/// endpoints of the N-th Cantor construction stage.
pub fn cantor_endpoint_cloud(level: usize) -> PointCloud {
    let mut pts = vec![0.0_f64, 1.0];
    for _ in 0..level {
        let mut next = Vec::with_capacity(pts.len() * 2);
        next.extend(pts.iter().map(|x| x / 3.0));
        next.extend(pts.iter().map(|x| x / 3.0 + 2.0 / 3.0));
        pts = next;
    }
    pts.sort_by(|a, b| a.partial_cmp(b).unwrap());
    pts.dedup();
    PointCloud::new(
        pts.into_iter().map(|x| SpherePoint::finite(x, 0.0)).collect(),
        "cantor-endpoints",
    )
    .with_param("level", level)
}

pub const EXAMPLE_NAMES: [&str; 4] = ["cantor", "koch", "example4", "schottky"];

/// Look up a built-in system by name; `example4` and `schottky` accept an
/// optional `:N` suffix (defaults 18 and 4).
pub fn by_name(name: &str) -> Result<ExampleConfig> {
    let (base, param) = match name.split_once(':') {
        Some((b, p)) => {
            let n: usize = p
                .parse()
                .map_err(|_| Error::invalid(format!("bad example parameter {p:?}")))?;
            (b, Some(n))
        }
        None => (name, None),
    };
    match base {
        "cantor" => Ok(cantor_spec()),
        "koch" => Ok(koch_spec()),
        "example4" => Ok(example4_spec(param.unwrap_or(18))),
        "schottky" => schottky_spec(param.unwrap_or(4)),
        other => Err(Error::invalid(format!(
            "unknown example {other:?}; available: {}",
            EXAMPLE_NAMES.join(", ")
        ))),
    }
}
