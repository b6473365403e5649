//! Möbius transformations z ↦ (az+b)/(cz+d), stored with determinant
//! normalized to 1 (up to the global ± sign ambiguity).

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::sphere::SpherePoint;

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MoebiusMap {
    pub a: Complex64,
    pub b: Complex64,
    pub c: Complex64,
    pub d: Complex64,
}

impl MoebiusMap {
    /// Build z ↦ (az+b)/(cz+d); rejects ad − bc = 0 and non-finite entries.
    /// The stored coefficients are scaled so ad − bc = 1.
    pub fn new(a: Complex64, b: Complex64, c: Complex64, d: Complex64) -> Result<Self> {
        for v in [a, b, c, d] {
            if !v.re.is_finite() || !v.im.is_finite() {
                return Err(Error::invalid("Möbius coefficients must be finite"));
            }
        }
        let det = a * d - b * c;
        if det == Complex64::new(0.0, 0.0) {
            return Err(Error::invalid("Möbius map requires ad - bc != 0"));
        }
        let s = det.sqrt().inv();
        Ok(MoebiusMap {
            a: a * s,
            b: b * s,
            c: c * s,
            d: d * s,
        })
    }

    pub fn from_reals(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::new(
            Complex64::new(a, 0.0),
            Complex64::new(b, 0.0),
            Complex64::new(c, 0.0),
            Complex64::new(d, 0.0),
        )
    }

    pub fn identity() -> Self {
        MoebiusMap {
            a: Complex64::new(1.0, 0.0),
            b: Complex64::new(0.0, 0.0),
            c: Complex64::new(0.0, 0.0),
            d: Complex64::new(1.0, 0.0),
        }
    }

    pub fn det(&self) -> Complex64 {
        self.a * self.d - self.b * self.c
    }

    /// tr² after determinant normalization.
    pub fn trace_sq(&self) -> Complex64 {
        let t = self.a + self.d;
        t * t
    }

    /// Within `tol` of ±identity.
    pub fn is_identity(&self, tol: f64) -> bool {
        for sign in [1.0, -1.0] {
            if (self.a - sign).norm() <= tol
                && (self.d - sign).norm() <= tol
                && self.b.norm() <= tol
                && self.c.norm() <= tol
            {
                return true;
            }
        }
        false
    }

    pub fn eval(&self, p: SpherePoint) -> SpherePoint {
        match p {
            SpherePoint::Infinity => {
                if self.c == Complex64::new(0.0, 0.0) {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::Finite(self.a / self.c)
                }
            }
            SpherePoint::Finite(z) => {
                let den = self.c * z + self.d;
                if den == Complex64::new(0.0, 0.0) {
                    return SpherePoint::Infinity;
                }
                let w = (self.a * z + self.b) / den;
                if w.re.is_finite() && w.im.is_finite() {
                    SpherePoint::Finite(w)
                } else {
                    SpherePoint::Infinity
                }
            }
        }
    }

    /// (dz − b)/(−cz + a).
    pub fn inverse(&self) -> MoebiusMap {
        MoebiusMap {
            a: self.d,
            b: -self.b,
            c: -self.c,
            d: self.a,
        }
    }

    /// self ∘ other as a 2×2 coefficient-matrix product. The determinant
    /// stays 1 up to rounding; it is not recomputed, since for extreme
    /// coefficient scales the computed ad − bc cancels catastrophically.
    pub fn compose(&self, other: &MoebiusMap) -> MoebiusMap {
        MoebiusMap {
            a: self.a * other.a + self.b * other.c,
            b: self.a * other.b + self.b * other.d,
            c: self.c * other.a + self.d * other.c,
            d: self.c * other.b + self.d * other.d,
        }
    }
}

/// True iff `m` has one attracting and one repelling fixed point, decided
/// by tr² ∉ [0, 4] after determinant normalization. The identity is
/// rejected.
pub fn is_loxodromic(m: &MoebiusMap) -> Result<bool> {
    if m.is_identity(1e-12) {
        return Err(Error::IdentityMap);
    }
    let t = m.trace_sq();
    let on_real_interval = t.im.abs() <= 1e-12 && (-1e-12..=4.0 + 1e-12).contains(&t.re);
    Ok(!on_real_interval)
}

impl Serialize for MoebiusMap {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        use serde::ser::SerializeMap;
        let coeffs: [[f64; 2]; 4] = [
            [self.a.re, self.a.im],
            [self.b.re, self.b.im],
            [self.c.re, self.c.im],
            [self.d.re, self.d.im],
        ];
        let mut m = ser.serialize_map(Some(1))?;
        m.serialize_entry("moebius", &coeffs)?;
        m.end()
    }
}

impl<'de> Deserialize<'de> for MoebiusMap {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        #[derive(Deserialize)]
        struct Raw {
            moebius: [[f64; 2]; 4],
        }
        let raw = Raw::deserialize(de)?;
        let [a, b, c, d] = raw.moebius.map(|p| Complex64::new(p[0], p[1]));
        MoebiusMap::new(a, b, c, d).map_err(serde::de::Error::custom)
    }
}
