//! Finitely generated rational semigroups (and Möbius groups via
//! auto-inverse closure): word enumeration, Julia-set approximation by
//! repelling fixed points and by randomized backward orbits,
//! self-similarity verification, and escape-region certification.

mod render;

pub use render::{render_cloud, Raster, Window};

use std::collections::BTreeMap;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};
use crate::rational::{
    compose, exceptional_points, fixed_points, moebius_to_rational, preimages, FixedPointClass,
    MoebiusMap, RationalMap,
};
use crate::sphere::{chordal_dist, dedup_points, hausdorff_dist, PointCloud, SpherePoint};

/// Coefficient tolerance for duplicate-generator detection after
/// canonical normalization.
const GENERATOR_DEDUP_TOL: f64 = 1e-12;

/// Chordal tolerance for merging repelling fixed points; sits above the
/// root-finder residual scale so multiple roots are not split.
const POINT_MERGE_TOL: f64 = 1e-10;

/// Samples per independent backward-walk chunk; fixed so results are
/// reproducible regardless of thread count.
const WALK_CHUNK: usize = 1024;

/// A finitely generated rational semigroup G = ⟨g_i⟩. With
/// `group_mode = true` every generator must be Möbius and the inverses are
/// appended, so G is the Möbius group generated by the originals.
#[derive(Clone, Debug)]
pub struct SemigroupSpec {
    generators: Vec<RationalMap>,
    group_mode: bool,
    degree_cap: usize,
    labels: Option<Vec<String>>,
    /// In group mode, `partner[i]` is the index of the generator inverse
    /// to generator i (words reduce freely before composition).
    inverse_partners: Option<Vec<usize>>,
}

impl SemigroupSpec {
    pub fn new(generators: Vec<RationalMap>, group_mode: bool, degree_cap: usize) -> Result<Self> {
        Self::with_labels(generators, group_mode, degree_cap, None)
    }

    pub fn with_labels(
        generators: Vec<RationalMap>,
        group_mode: bool,
        degree_cap: usize,
        labels: Option<Vec<String>>,
    ) -> Result<Self> {
        if generators.is_empty() {
            return Err(Error::invalid("at least one generator required"));
        }
        if degree_cap < 1 {
            return Err(Error::invalid("degree_cap must be >= 1"));
        }
        if let Some(l) = &labels {
            if l.len() != generators.len() {
                return Err(Error::invalid("labels must match generator count"));
            }
        }
        let mut gens = generators;
        let mut labs = labels;
        if group_mode {
            if let Some(bad) = gens.iter().position(|g| !g.is_moebius()) {
                return Err(Error::invalid(format!(
                    "group_mode requires Möbius generators; generator {bad} has degree {}",
                    gens[bad].degree()
                )));
            }
            let inverses: Vec<RationalMap> = gens
                .iter()
                .map(|g| g.moebius_inverse().expect("checked Möbius"))
                .collect();
            if let Some(l) = &mut labs {
                let inv_labels: Vec<String> = l.iter().map(|s| format!("{s}_inv")).collect();
                l.extend(inv_labels);
            }
            gens.extend(inverses);
        }
        // duplicate-free closure (coefficient comparison on canonical forms)
        let mut unique: Vec<RationalMap> = Vec::new();
        let mut kept_idx = Vec::new();
        for (i, g) in gens.iter().enumerate() {
            if !unique.iter().any(|u| u.approx_eq(g, GENERATOR_DEDUP_TOL)) {
                unique.push(g.clone());
                kept_idx.push(i);
            }
        }
        let labs = labs.map(|l| kept_idx.iter().map(|&i| l[i].clone()).collect());
        let inverse_partners = if group_mode {
            let mut partners = Vec::with_capacity(unique.len());
            for g in &unique {
                let inv = g.moebius_inverse().expect("group mode is Möbius");
                let partner = unique
                    .iter()
                    .position(|h| h.approx_eq(&inv, GENERATOR_DEDUP_TOL))
                    .ok_or_else(|| {
                        Error::invalid("group closure lost an inverse generator")
                    })?;
                partners.push(partner);
            }
            Some(partners)
        } else {
            None
        };
        Ok(SemigroupSpec {
            generators: unique,
            group_mode,
            degree_cap,
            labels: labs,
            inverse_partners,
        })
    }

    /// Generators after group-mode closure and deduplication.
    pub fn generators(&self) -> &[RationalMap] {
        &self.generators
    }

    pub fn group_mode(&self) -> bool {
        self.group_mode
    }

    pub fn degree_cap(&self) -> usize {
        self.degree_cap
    }

    pub fn label(&self, i: usize) -> String {
        self.labels
            .as_ref()
            .and_then(|l| l.get(i).cloned())
            .unwrap_or_else(|| format!("g{i}"))
    }

    /// SHA-256 of the canonical JSON form; stamped on every approximation
    /// so clouds can be traced back to the exact system.
    pub fn digest(&self) -> String {
        let json = serde_json::to_string(self).expect("spec serializes");
        let hash = Sha256::digest(json.as_bytes());
        let mut out = String::with_capacity(64);
        for byte in hash {
            out.push_str(&format!("{byte:02x}"));
        }
        out
    }
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum GeneratorForm {
    Moebius(MoebiusMap),
    Rational(RationalMap),
}

#[derive(Serialize, Deserialize)]
struct SpecForm {
    generators: Vec<GeneratorForm>,
    group_mode: bool,
    degree_cap: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<String>>,
}

impl Serialize for SemigroupSpec {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> std::result::Result<S::Ok, S::Error> {
        // always write the canonical num/den form: re-parsing it yields the
        // same coefficients bit for bit, so digests survive round trips
        // (the Möbius form is accepted on input)
        let generators = self
            .generators
            .iter()
            .map(|g| GeneratorForm::Rational(g.clone()))
            .collect();
        SpecForm {
            generators,
            group_mode: self.group_mode,
            degree_cap: self.degree_cap,
            labels: self.labels.clone(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for SemigroupSpec {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> std::result::Result<Self, D::Error> {
        let form = SpecForm::deserialize(de)?;
        let generators = form
            .generators
            .into_iter()
            .map(|g| match g {
                GeneratorForm::Moebius(m) => moebius_to_rational(&m),
                GeneratorForm::Rational(r) => r,
            })
            .collect();
        SemigroupSpec::with_labels(generators, form.group_mode, form.degree_cap, form.labels)
            .map_err(serde::de::Error::custom)
    }
}

/// A word (i₁,…,i_m) denotes g_{i₁} ∘ g_{i₂} ∘ ⋯ ∘ g_{i_m}: the rightmost
/// index is applied first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Word(pub Vec<usize>);

impl Word {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::fmt::Display for Word {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "(")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct WordEntry {
    pub word: Word,
    /// Composed degree would exceed the cap: the word can only be applied
    /// functionally, not expanded to coefficients.
    pub functional_only: bool,
}

/// All words of length 1..=max_len in length-then-lexicographic order.
pub fn enumerate_words(spec: &SemigroupSpec, max_len: usize) -> Vec<WordEntry> {
    let n = spec.generators.len();
    let degs: Vec<usize> = spec.generators.iter().map(|g| g.degree()).collect();
    let mut out = Vec::new();
    for len in 1..=max_len {
        let mut idx = vec![0usize; len];
        loop {
            let degree: usize = idx.iter().map(|&i| degs[i]).fold(1usize, |a, d| {
                a.saturating_mul(d)
            });
            out.push(WordEntry {
                word: Word(idx.clone()),
                functional_only: degree > spec.degree_cap,
            });
            // lexicographic increment
            let mut pos = len;
            loop {
                if pos == 0 {
                    break;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < n {
                    break;
                }
                idx[pos] = 0;
            }
            if idx.iter().all(|&i| i == 0) {
                break;
            }
        }
    }
    out
}

/// The explicit expanded composition of a word, rightmost factor applied
/// first.
///
/// In group mode the word is freely reduced first (adjacent inverse pairs
/// cancelled): the function is unchanged, and words that reduce to nothing
/// come back as the identity map instead of a noise-ridden near-identity
/// composite.
pub fn word_map(spec: &SemigroupSpec, word: &Word) -> Result<RationalMap> {
    if word.is_empty() {
        return Err(Error::invalid("empty word"));
    }
    for &i in &word.0 {
        if i >= spec.generators.len() {
            return Err(Error::invalid(format!(
                "word index {i} out of range ({} generators)",
                spec.generators.len()
            )));
        }
    }
    let letters: Vec<usize> = match &spec.inverse_partners {
        Some(partners) => {
            let mut stack: Vec<usize> = Vec::with_capacity(word.0.len());
            for &i in &word.0 {
                if stack.last().is_some_and(|&top| partners[top] == i) {
                    stack.pop();
                } else {
                    stack.push(i);
                }
            }
            stack
        }
        None => word.0.clone(),
    };
    if letters.is_empty() {
        return Ok(RationalMap::identity());
    }
    let would_be: usize = letters
        .iter()
        .map(|&i| spec.generators[i].degree())
        .fold(1usize, |a, d| a.saturating_mul(d));
    if would_be > spec.degree_cap {
        return Err(Error::DegreeCapExceeded {
            would_be,
            cap: spec.degree_cap,
        });
    }
    let mut acc = spec.generators[*letters.last().expect("nonempty")].clone();
    for &i in letters.iter().rev().skip(1) {
        acc = compose(&spec.generators[i], &acc, spec.degree_cap)?;
    }
    Ok(acc)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CloudMethod {
    Repelling,
    BackwardOrbit,
}

/// A finite approximation to J(G), reproducible from spec + method +
/// params.
#[derive(Clone, Debug)]
pub struct JuliaApproximation {
    pub cloud: PointCloud,
    pub spec_hash: String,
    pub method: CloudMethod,
    pub params: BTreeMap<String, String>,
}

/// The set of repelling fixed points of every expandable word of length
/// ≤ max_len, duplicates merged at 1e-10. Words whose composed degree
/// exceeds the cap are skipped and counted in `params["skipped_words"]`;
/// identity words (possible in group mode) contribute no repelling points.
pub fn repelling_cloud(spec: &SemigroupSpec, max_len: usize) -> Result<JuliaApproximation> {
    if max_len < 1 {
        return Err(Error::invalid("max_len must be >= 1"));
    }
    let entries = enumerate_words(spec, max_len);
    let skipped = entries.iter().filter(|e| e.functional_only).count();

    let per_word: Vec<Result<Vec<SpherePoint>>> = entries
        .par_iter()
        .map(|entry| {
            if entry.functional_only {
                return Ok(vec![]);
            }
            let f = word_map(spec, &entry.word)?;
            match fixed_points(&f) {
                Ok(records) => Ok(records
                    .into_iter()
                    .filter(|r| r.class == FixedPointClass::Repelling)
                    .map(|r| r.location)
                    .collect()),
                Err(Error::IdentityMap) => Ok(vec![]),
                Err(e) => Err(e.with_context(format!("word {}", entry.word))),
            }
        })
        .collect();

    let mut points = Vec::new();
    for r in per_word {
        points.extend(r?);
    }
    let points = dedup_points(&points, POINT_MERGE_TOL);

    let mut params = BTreeMap::new();
    params.insert("max_word_len".into(), max_len.to_string());
    params.insert("skipped_words".into(), skipped.to_string());
    params.insert("merge_tol".into(), POINT_MERGE_TOL.to_string());
    let mut cloud = PointCloud::new(points, "repelling");
    cloud.params = params.clone();
    Ok(JuliaApproximation {
        cloud,
        spec_hash: spec.digest(),
        method: CloudMethod::Repelling,
        params,
    })
}

/// Randomized backward orbit: repeatedly pick a generator uniformly at
/// random, then one of its preimages of the current point uniformly with
/// multiplicity weighting; points after the first `burn_in` steps are
/// recorded one per step.
///
/// The walk is split into fixed-size chunks, each an independent walk
/// driven by a ChaCha stream derived from (rng_seed, chunk index), so the
/// result is bit-identical across runs and thread counts.
pub fn backward_orbit_cloud(
    spec: &SemigroupSpec,
    seed: SpherePoint,
    n_samples: usize,
    burn_in: usize,
    rng_seed: u64,
) -> Result<JuliaApproximation> {
    if n_samples < 1 {
        return Err(Error::invalid("n_samples must be >= 1"));
    }
    warn_if_seed_exceptional(spec, seed);

    let n_chunks = n_samples.div_ceil(WALK_CHUNK);
    let chunks: Vec<Result<Vec<SpherePoint>>> = (0..n_chunks)
        .into_par_iter()
        .map(|chunk| {
            let take = WALK_CHUNK.min(n_samples - chunk * WALK_CHUNK);
            let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
            rng.set_stream(chunk as u64 + 1);
            let mut state = seed;
            let mut out = Vec::with_capacity(take);
            for step in 0..burn_in + take {
                let gi = rng.gen_range(0..spec.generators.len());
                let pres = preimages(&spec.generators[gi], state).map_err(|e| {
                    e.with_context(format!("backward walk chunk {chunk}, step {step}"))
                })?;
                state = pres[rng.gen_range(0..pres.len())];
                if step >= burn_in {
                    out.push(state);
                }
            }
            Ok(out)
        })
        .collect();

    let mut points = Vec::with_capacity(n_samples);
    for c in chunks {
        points.extend(c?);
    }

    let mut params = BTreeMap::new();
    params.insert("n_samples".into(), n_samples.to_string());
    params.insert("burn_in".into(), burn_in.to_string());
    params.insert("rng_seed".into(), rng_seed.to_string());
    params.insert("seed_point".into(), seed.to_string());
    params.insert("chunk_size".into(), WALK_CHUNK.to_string());
    let mut cloud = PointCloud::new(points, "backward_orbit");
    cloud.params = params.clone();
    Ok(JuliaApproximation {
        cloud,
        spec_hash: spec.digest(),
        method: CloudMethod::BackwardOrbit,
        params,
    })
}

fn warn_if_seed_exceptional(spec: &SemigroupSpec, seed: SpherePoint) {
    for (i, g) in spec.generators.iter().enumerate() {
        if let Ok(exceptional) = exceptional_points(g) {
            for e in exceptional {
                if chordal_dist(e, seed) < 1e-9 {
                    log::warn!(
                        "backward-orbit seed {seed} lies in the exceptional set of generator {}; \
                         the walk may not reach all of J(G)",
                        spec.label(i)
                    );
                }
            }
        }
    }
}

/// Hausdorff distance between `cloud` and ∪_i g_i⁻¹(cloud). A small defect
/// is necessary but not sufficient for the cloud to approximate J(G): any
/// common fixed point of all generator preimage sets has defect 0.
pub fn self_similarity_defect(spec: &SemigroupSpec, cloud: &PointCloud) -> Result<f64> {
    if cloud.is_empty() {
        return Err(Error::invalid("self_similarity_defect of an empty cloud"));
    }
    let union: Vec<Result<Vec<SpherePoint>>> = cloud
        .points
        .par_iter()
        .map(|&p| {
            let mut acc = Vec::new();
            for g in &spec.generators {
                acc.extend(preimages(g, p)?);
            }
            Ok(acc)
        })
        .collect();
    let mut pullback = Vec::with_capacity(cloud.len() * spec.generators.len());
    for r in union {
        pullback.extend(r?);
    }
    hausdorff_dist(cloud, &PointCloud::new(pullback, "pullback"))
}

/// Number of sample points per certification circle.
const ESCAPE_CIRCLE_SAMPLES: usize = 4096;

/// Smallest integer radius R in {2, 3, …, R_max} such that every
/// generator satisfies |g(z)| > |z| on |z| ≥ R, certified by dense circle
/// sampling at radii R, 2R, 4R, … together with a leading-coefficient
/// tail bound, and a zero/pole-free check of the sampled annulus so the
/// minimum-modulus principle applies between circles. Returns None if no
/// radius up to R_max certifies. Presence certifies a neighborhood of ∞
/// inside N(G), hence J(G) ≠ C̄.
pub fn forward_invariant_escape_region(spec: &SemigroupSpec, r_max: f64) -> Option<f64> {
    if !(r_max > 1.0) {
        return None;
    }
    let mut r = 2.0;
    while r <= r_max {
        if spec
            .generators
            .iter()
            .all(|g| certifies_escape_at(g, r))
        {
            return Some(r);
        }
        r += 1.0;
    }
    None
}

fn certifies_escape_at(g: &RationalMap, r: f64) -> bool {
    let dn = g.num().degree_or_zero();
    let dd = g.den().degree_or_zero();
    if dn <= dd {
        // |g| is bounded (or → 0) near ∞: cannot dominate |z|
        return false;
    }
    let lead = g.num().leading().norm();
    let s_a: f64 = g.num().coeffs()[..dn].iter().map(|c| c.norm()).sum();
    let s_b: f64 = g.den().coeffs().iter().map(|c| c.norm()).sum();
    let e = dn - dd;

    // tail radius T beyond which |g(z)| > |z| from coefficient norms alone
    let tail = if e == 1 {
        if lead <= s_b {
            return false;
        }
        (2.0 * s_a / (lead - s_b)).max(1.0)
    } else {
        (2.0 * s_a / lead)
            .max((2.0 * s_b / lead).powf(1.0 / (e as f64 - 1.0)))
            .max(1.0)
    };

    // between sampled circles the minimum-modulus principle needs g
    // zero- and pole-free in the annulus
    let mut outer = r;
    while outer < tail {
        outer *= 2.0;
    }
    for poly in [g.num(), g.den()] {
        if poly.degree().unwrap_or(0) >= 1 {
            match crate::rational::poly_roots(poly, 1e-12) {
                Ok(roots) => {
                    if roots
                        .iter()
                        .any(|z| z.norm() >= r * (1.0 - 1e-9) && z.norm() <= outer * (1.0 + 1e-9))
                    {
                        return false;
                    }
                }
                // fall back to the Cauchy bound: all roots lie inside it
                Err(_) => {
                    let cauchy = 1.0
                        + poly.coeffs()[..poly.degree_or_zero()]
                            .iter()
                            .map(|c| (c / poly.leading()).norm())
                            .fold(0.0, f64::max);
                    if cauchy >= r * (1.0 - 1e-9) {
                        return false;
                    }
                }
            }
        }
    }

    // sampled circles at R, 2R, 4R, … up to the tail radius
    let mut radius = r;
    loop {
        for k in 0..ESCAPE_CIRCLE_SAMPLES {
            let theta = 2.0 * std::f64::consts::PI * k as f64 / ESCAPE_CIRCLE_SAMPLES as f64;
            let z = Complex64::from_polar(radius, theta);
            match g.eval(SpherePoint::Finite(z)) {
                SpherePoint::Infinity => {}
                SpherePoint::Finite(w) => {
                    if w.norm() <= radius {
                        return false;
                    }
                }
            }
        }
        if radius >= tail {
            break;
        }
        radius *= 2.0;
    }
    true
}
