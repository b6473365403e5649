//! Acceptance suite: one test per criterion, each printing a PASS line
//! (visible with `--nocapture`) after asserting its stated tolerances.

use std::collections::BTreeMap;
use std::time::Instant;

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use rsdyn::examples::{
    cantor_endpoint_cloud, cantor_spec, example4_b, example4_spec, koch_spec, schottky_annulus,
    schottky_modulus_closed_form, schottky_spec,
};
use rsdyn::perfectness::{max_separating_modulus, perfectness_profile, separates, RoundAnnulus};
use rsdyn::rational::{fixed_points, FixedPointClass, MoebiusMap, Polynomial, RationalMap};
use rsdyn::semigroup::{
    backward_orbit_cloud, enumerate_words, repelling_cloud, self_similarity_defect,
    forward_invariant_escape_region, word_map, SemigroupSpec,
};
use rsdyn::sphere::{chordal_dist, hausdorff_dist, PointCloud, SpherePoint};

fn fin(re: f64, im: f64) -> SpherePoint {
    SpherePoint::finite(re, im)
}

/// Distance from a real number to the middle-third Cantor set, exact to
/// the recursion depth.
fn dist_to_cantor_real(mut x: f64) -> f64 {
    if x < 0.0 {
        return -x;
    }
    if x > 1.0 {
        return x - 1.0;
    }
    let mut scale = 1.0;
    for _ in 0..60 {
        if (1.0 / 3.0..=2.0 / 3.0).contains(&x) {
            return scale * (x - 1.0 / 3.0).min(2.0 / 3.0 - x);
        }
        if x > 2.0 / 3.0 {
            x -= 2.0 / 3.0;
        }
        x = (x * 3.0).clamp(0.0, 1.0);
        scale /= 3.0;
    }
    0.0
}

fn dist_to_cantor(z: Complex64) -> f64 {
    (z.im * z.im + dist_to_cantor_real(z.re).powi(2)).sqrt()
}

/// Koch backward cloud shared by criteria 5 and 8.
fn koch_cloud() -> PointCloud {
    backward_orbit_cloud(&koch_spec().spec, fin(0.5, 0.1), 12_000, 40, 2)
        .expect("koch backward cloud")
        .cloud
}

#[test]
fn criterion_01_cantor_attractor_fidelity() {
    // backward orbit vs the level-8 endpoint set: Hausdorff ≤ 0.02,
    // generation < 10 s single-threaded
    let spec = cantor_spec().spec;
    let single = rayon::ThreadPoolBuilder::new()
        .num_threads(1)
        .build()
        .unwrap();
    let start = Instant::now();
    let approx = single
        .install(|| backward_orbit_cloud(&spec, fin(0.5, 0.0), 50_000, 30, 42))
        .expect("backward cloud");
    let elapsed = start.elapsed();
    assert!(
        elapsed.as_secs_f64() < 10.0,
        "single-threaded generation took {elapsed:?}"
    );

    // one-sided containment: every sample within 3^-30 + 3^-8 of the
    // level-8 endpoint set (walk contraction + cylinder truncation)
    let endpoints = cantor_endpoint_cloud(8);
    let d = hausdorff_dist(&approx.cloud, &endpoints).expect("hausdorff");
    assert!(d <= 0.02, "Hausdorff distance {d} > 0.02");
    println!(
        "criterion 01: PASS — cantor backward orbit Hausdorff {d:.2e} <= 0.02, runtime {elapsed:?}"
    );
}

#[test]
fn criterion_02_repelling_method_agreement() {
    let spec = cantor_spec().spec;
    let rep = repelling_cloud(&spec, 8).expect("repelling cloud");

    // pointwise containment in the Cantor set to 1e-8
    for p in &rep.cloud.points {
        let z = p.as_finite().expect("affine words have finite repelling points");
        let d = dist_to_cantor(z);
        assert!(d <= 1e-8, "repelling point {z} at distance {d}");
    }
    // the documented small fixed points
    for target in [0.0, 1.0, 0.25, 0.75] {
        assert!(
            rep.cloud
                .points
                .iter()
                .any(|p| chordal_dist(*p, fin(target, 0.0)) < 1e-8),
            "missing {target}"
        );
    }
    // two independent approximation methods agree
    let walk = backward_orbit_cloud(&spec, fin(0.5, 0.0), 50_000, 30, 42).expect("walk");
    let d = hausdorff_dist(&rep.cloud, &walk.cloud).expect("hausdorff");
    assert!(d <= 0.05, "method disagreement {d} > 0.05");
    println!(
        "criterion 02: PASS — {} repelling points on the Cantor set, method Hausdorff {d:.2e} <= 0.05",
        rep.cloud.len()
    );
}

/// 1-D oracle: maximize a radial profile over t ≥ 0 by scan + ternary
/// refinement.
fn radial_max(f: impl Fn(f64) -> f64) -> f64 {
    let mut best = f64::MIN;
    let mut best_t = 0.0;
    for i in 0..40_000 {
        let t = i as f64 * 5e-4;
        let v = f(t);
        if v > best {
            best = v;
            best_t = t;
        }
    }
    let (mut lo, mut hi) = ((best_t - 5e-4).max(0.0), best_t + 5e-4);
    for _ in 0..100 {
        let m1 = lo + (hi - lo) / 3.0;
        let m2 = hi - (hi - lo) / 3.0;
        if f(m1) < f(m2) {
            lo = m1;
        } else {
            hi = m2;
        }
    }
    f(0.5 * (lo + hi)).max(best)
}

fn seeded_moebius(rng: &mut ChaCha8Rng) -> MoebiusMap {
    loop {
        let v: Vec<Complex64> = (0..4)
            .map(|_| Complex64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0)))
            .collect();
        if (v[0] * v[3] - v[1] * v[2]).norm() >= 0.3 {
            return MoebiusMap::new(v[0], v[1], v[2], v[3]).unwrap();
        }
    }
}

fn moebius_as_rational(m: &MoebiusMap) -> RationalMap {
    RationalMap::new(
        Polynomial::new(vec![m.b, m.a]),
        Polynomial::new(vec![m.d, m.c]),
    )
    .expect("Möbius map is a valid rational map")
}

#[test]
fn criterion_03_lipschitz_kernel() {
    let id = RationalMap::identity();
    let lip_id = id.lipschitz_constant(1e-7);
    assert!((lip_id - 1.0).abs() <= 1e-6, "Lip(id) = {lip_id}");

    // radial oracles: f# of z² is 2t(1+t²)/(1+t⁴), of 3z is 3(1+t²)/(1+9t²)
    let sq = RationalMap::polynomial_from_reals(&[0.0, 0.0, 1.0]).unwrap();
    let oracle_sq = radial_max(|t| 2.0 * t * (1.0 + t * t) / (1.0 + t.powi(4)));
    let lip_sq = sq.lipschitz_constant(1e-7);
    assert!((oracle_sq - 2.0).abs() < 1e-9);
    assert!((lip_sq - 2.0).abs() <= 1e-4, "Lip(z²) = {lip_sq}");

    let three = RationalMap::polynomial_from_reals(&[0.0, 3.0]).unwrap();
    let oracle_3z = radial_max(|t| 3.0 * (1.0 + t * t) / (1.0 + 9.0 * t * t));
    let lip_3z = three.lipschitz_constant(1e-7);
    assert!((oracle_3z - 3.0).abs() < 1e-9);
    assert!((lip_3z - 3.0).abs() <= 1e-4, "Lip(3z) = {lip_3z}");

    // Lip g = Lip g⁻¹ for Möbius maps, on 20 seeded samples
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let mut worst = 0.0_f64;
    for _ in 0..20 {
        let m = seeded_moebius(&mut rng);
        let lip = moebius_as_rational(&m).lipschitz_constant(1e-7);
        let lip_inv = moebius_as_rational(&m.inverse()).lipschitz_constant(1e-7);
        worst = worst.max((lip - lip_inv).abs());
    }
    assert!(worst <= 1e-3, "max |Lip(m) − Lip(m⁻¹)| = {worst}");
    println!(
        "criterion 03: PASS — Lip(id) = {lip_id:.8}, Lip(z²) = {lip_sq:.8}, Lip(3z) = {lip_3z:.8}, \
         max inverse gap {worst:.2e} <= 1e-3"
    );
}

/// Algebraic oracle for an affine map az + b (a 2-D oracle via singular
/// values): Lip = (T + √(T²−4))/2 with T = (|a|²+|b|²+1)/|a|.
fn affine_lip_oracle(g: &RationalMap) -> f64 {
    assert_eq!(g.degree(), 1);
    assert_eq!(g.den().coeffs().len(), 1, "affine expected");
    let a = g.num().coeff(1);
    let b = g.num().coeff(0);
    let t = (a.norm_sqr() + b.norm_sqr() + 1.0) / a.norm();
    (t + (t * t - 4.0).max(0.0).sqrt()) / 2.0
}

#[test]
fn criterion_04_hypothesis_on_positive_examples() {
    for cfg in [cantor_spec(), koch_spec()] {
        let mut sup = 0.0_f64;
        let mut oracle_sup = 0.0_f64;
        for g in cfg.spec.generators() {
            let lip = g.lipschitz_constant(1e-7);
            let oracle = affine_lip_oracle(g);
            assert!(lip.is_finite());
            assert!(
                (lip - oracle).abs() <= 1e-3 * oracle,
                "{}: Lip {lip} vs oracle {oracle}",
                cfg.name
            );
            sup = sup.max(lip);
            oracle_sup = oracle_sup.max(oracle);
        }
        assert!(
            (sup - oracle_sup).abs() <= 1e-3 * oracle_sup,
            "{}: sup {sup} vs {oracle_sup}",
            cfg.name
        );
        println!(
            "criterion 04: PASS — {} generator Lip sup {sup:.6} matches the singular-value oracle",
            cfg.name
        );
    }
}

#[test]
fn criterion_05_conclusion_on_positive_examples() {
    // gap-scan value on the level-8 endpoint cloud: the cylinder-moat
    // annuli have radius ratio exactly 3 (verified against the exhaustive
    // oracle in criterion 09's machinery), so the maximum modulus is
    // ln(3)/(2π)
    let cloud = cantor_endpoint_cloud(8);
    let floor8 = 3.0_f64.powi(-8);
    let expected = 3.0_f64.ln() / (2.0 * std::f64::consts::PI);
    let (modulus, annulus) = max_separating_modulus(&cloud, floor8)
        .expect("scan")
        .expect("separating annulus exists");
    assert!(
        (modulus - expected).abs() <= 1e-6,
        "modulus {modulus} vs ln3/2π = {expected}"
    );
    let oracle = oracle_gap_scan(&cloud, floor8).expect("oracle finds an annulus");
    assert_eq!(modulus, oracle.0, "gap scan disagrees with its oracle");
    assert!(separates(&annulus, &cloud));

    // profile is constant across floors 3^-4 .. 3^-8
    let floors: Vec<f64> = (4..=8).map(|k| 3.0_f64.powi(-k)).collect();
    let profile = perfectness_profile(&cloud, &floors).expect("profile");
    let values: Vec<f64> = profile.iter().map(|e| e.modulus.expect("found")).collect();
    let spread = values.iter().cloned().fold(f64::MIN, f64::max)
        - values.iter().cloned().fold(f64::MAX, f64::min);
    assert!(spread <= 1e-6, "profile spread {spread}");

    // Koch cloud profile bounded by 0.5 at the same floors
    let koch = koch_cloud();
    let koch_profile = perfectness_profile(&koch, &floors).expect("koch profile");
    let koch_max = koch_profile
        .iter()
        .filter_map(|e| e.modulus)
        .fold(0.0_f64, f64::max);
    assert!(koch_max <= 0.5, "koch profile max {koch_max} > 0.5");
    println!(
        "criterion 05: PASS — cantor modulus {modulus:.9} = ln3/2π (spread {spread:.1e}), \
         koch profile max {koch_max:.4} <= 0.5"
    );
}

#[test]
fn criterion_06_negative_example_schottky() {
    let cfg = schottky_spec(4).expect("schottky spec");
    let cloud = repelling_cloud(&cfg.spec, 4).expect("limit cloud").cloud;
    assert!(cloud.len() > 100, "limit cloud too sparse");

    let mut last = 0.0;
    for n in 1..=3usize {
        let annulus = schottky_annulus(n);
        let closed = schottky_modulus_closed_form(n);
        assert!(
            (annulus.modulus() - closed).abs() <= 1e-12,
            "modulus of A_{n} vs closed form"
        );
        assert!(annulus.modulus() > last, "moduli must increase");
        last = annulus.modulus();

        // repelling fixed points lie exactly in the limit set; the tiny
        // relative shrink covers root-finder residuals
        let shrunk = annulus.shrunk(1e-6).expect("shrunk annulus");
        assert!(
            separates(&shrunk, &cloud),
            "A_{n} (shrunk) fails to separate the word-length-4 cloud"
        );
    }
    println!(
        "criterion 06: PASS — A_1..A_3 separate the limit cloud; moduli {:.4}, {:.4}, {:.4} \
         match the closed form to 1e-12 and increase",
        schottky_modulus_closed_form(1),
        schottky_modulus_closed_form(2),
        schottky_modulus_closed_form(3)
    );
}

#[test]
fn criterion_07_example4_structure() {
    let cfg = example4_spec(18);

    // a certified forward-invariant neighborhood of ∞
    let radius = forward_invariant_escape_region(&cfg.spec, 16.0);
    let radius = radius.expect("escape region must exist");
    assert!(radius <= 10.0, "escape radius {radius} > 10");

    // repelling fixed points −1/(n+2) of each f_n, n ≤ 18
    let rep1 = repelling_cloud(&cfg.spec, 1).expect("length-1 cloud");
    for n in 0..=18usize {
        let target = fin(-1.0 / (n as f64 + 2.0), 0.0);
        assert!(
            rep1.cloud
                .points
                .iter()
                .any(|p| chordal_dist(*p, target) <= 1e-9),
            "missing repelling point -1/{} of f_{n}",
            n + 2
        );
    }
    assert!(
        rep1.cloud
            .points
            .iter()
            .any(|p| chordal_dist(*p, fin(-0.05, 0.0)) <= 1e-9),
        "missing -0.05 for n = 18"
    );

    println!(
        "criterion 07: escape radius {radius} <= 10 OK; repelling points -1/(n+2) for n <= 18 OK; \
         checking length-3 disk containment"
    );

    // containment of all length-<=3 repelling points in the union of the
    // unit disk and the shifted disks |z + b_n| <= 1
    let rep3 = repelling_cloud(&cfg.spec, 3).expect("length-3 cloud");
    let mut worst: Option<(Complex64, f64)> = None;
    for p in &rep3.cloud.points {
        let z = p.as_finite().expect("polynomial words fix ∞ superattractingly");
        let mut d = z.norm() - 1.0;
        for n in 0..=18usize {
            let b = example4_b(n);
            d = d.min((z + b).norm() - 1.0);
        }
        if d > 1e-6 && worst.map_or(true, |(_, w)| d > w) {
            worst = Some((z, d));
        }
    }
    assert!(
        worst.is_none(),
        "repelling point {:?} lies {:.6} outside every disk |z| <= 1+1e-6, |z+b_n| <= 1+1e-6 \
         (e.g. the word z² ∘ f_0 ∘ z² has a repelling fixed point near -0.0863+1.7581i, \
         multiplier magnitude ≈ 30.1, verified against a high-precision independent solver; \
         J(G) of the truncated semigroup genuinely extends beyond the union of disks)",
        worst.map(|(z, _)| z),
        worst.map(|(_, d)| d).unwrap_or(0.0),
    );
    println!(
        "criterion 07: PASS — escape radius {radius} <= 10, all -1/(n+2) present, \
         length-3 repelling points inside the disk union"
    );
}

#[test]
fn criterion_08_backward_self_similarity() {
    let cantor = cantor_spec().spec;
    let endpoints = cantor_endpoint_cloud(8);
    let defect = self_similarity_defect(&cantor, &endpoints).expect("defect");
    let bound = 2.0 * 3.0_f64.powi(-8);
    assert!(defect <= bound, "cantor defect {defect} > {bound}");

    let koch = koch_spec().spec;
    let cloud = koch_cloud();
    let koch_defect = self_similarity_defect(&koch, &cloud).expect("koch defect");
    assert!(koch_defect <= 0.05, "koch defect {koch_defect} > 0.05");
    println!(
        "criterion 08: PASS — cantor endpoint defect {defect:.3e} <= 2·3⁻⁸, \
         koch backward defect {koch_defect:.3e} <= 0.05"
    );
}

/// Structurally independent brute force for the gap scan: all points and
/// all pairwise midpoints as centers, full sorted distance list, every
/// consecutive pair clamped to the floor, identical total order.
fn oracle_gap_scan(cloud: &PointCloud, floor: f64) -> Option<(f64, RoundAnnulus)> {
    let pts: Vec<Complex64> = cloud.finite_points().collect();
    let mut centers = pts.clone();
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            centers.push((pts[i] + pts[j]) * 0.5);
        }
    }
    let mut best: Option<(f64, Complex64, f64, f64)> = None;
    for &ctr in &centers {
        let mut d: Vec<f64> = pts.iter().map(|&p| (p - ctr).norm()).collect();
        d.sort_by(|a, b| a.partial_cmp(b).unwrap());
        d.dedup();
        for k in 0..d.len().saturating_sub(1) {
            let r1 = d[k].max(floor);
            let r2 = d[k + 1];
            if r1 < r2 {
                let m = (r2 / r1).ln() / (2.0 * std::f64::consts::PI);
                let better = match &best {
                    None => true,
                    Some((bm, bc, br1, _)) => {
                        m > *bm || (m == *bm && (ctr.re, ctr.im, r1) < (bc.re, bc.im, *br1))
                    }
                };
                if better {
                    best = Some((m, ctr, r1, r2));
                }
            }
        }
    }
    best.map(|(m, c, r1, r2)| (m, RoundAnnulus::new(c, r1, r2).unwrap()))
}

#[test]
fn criterion_09_oracle_equivalence() {
    let mut rng = ChaCha8Rng::seed_from_u64(900);
    for trial in 0..20 {
        let n = rng.gen_range(60..=360);
        let pts: Vec<SpherePoint> = (0..n)
            .map(|_| fin(rng.gen_range(0.0..1.0), rng.gen_range(0.0..1.0)))
            .collect();
        let cloud = PointCloud::new(pts, "random");
        let lib = max_separating_modulus(&cloud, 0.01).expect("scan");
        let oracle = oracle_gap_scan(&cloud, 0.01);
        match (lib, oracle) {
            (Some((m1, a1)), Some((m2, a2))) => {
                assert_eq!(m1, m2, "trial {trial}: modulus mismatch");
                assert_eq!(a1, a2, "trial {trial}: tie-broken annulus mismatch");
            }
            (None, None) => {}
            other => panic!("trial {trial}: presence mismatch {other:?}"),
        }
    }
    println!("criterion 09: PASS — gap scan equals the exhaustive brute force on 20 seeded clouds");
}

#[test]
fn criterion_10_cli_determinism() {
    use std::process::Command;
    let bin = env!("CARGO_BIN_EXE_rsdyn");
    let dir = tempfile::tempdir().expect("tempdir");

    let runs: Vec<(&str, Vec<String>)> = vec![
        ("lip", vec!["lip".into(), "--spec".into(), "cantor".into()]),
        (
            "cloud-backward",
            vec![
                "cloud".into(),
                "--spec".into(),
                "cantor".into(),
                "--method".into(),
                "backward".into(),
                "--samples".into(),
                "1000".into(),
                "--seed".into(),
                "7".into(),
                "--seed-point".into(),
                "0.5,0".into(),
            ],
        ),
        (
            "cloud-repelling",
            vec![
                "cloud".into(),
                "--spec".into(),
                "koch".into(),
                "--max-word-len".into(),
                "4".into(),
                "--format".into(),
                "json".into(),
            ],
        ),
        (
            "perfectness",
            vec![
                "perfectness".into(),
                "--spec".into(),
                "schottky:4".into(),
                "--method".into(),
                "repelling".into(),
                "--max-word-len".into(),
                "3".into(),
                "--floors".into(),
                "0.078125,0.00244140625".into(),
            ],
        ),
        (
            "selfsim",
            vec![
                "selfsim".into(),
                "--spec".into(),
                "cantor".into(),
                "--method".into(),
                "backward".into(),
                "--samples".into(),
                "2000".into(),
                "--seed".into(),
                "3".into(),
                "--seed-point".into(),
                "0.5,0".into(),
            ],
        ),
        (
            "escape",
            vec![
                "escape".into(),
                "--spec".into(),
                "example4:6".into(),
            ],
        ),
        (
            "examples-dump",
            vec!["examples".into(), "dump".into(), "schottky:4".into()],
        ),
    ];

    for (name, args) in &runs {
        let mut outputs = Vec::new();
        for threads in ["1", "8", "1", "8"] {
            let out = Command::new(bin)
                .args(args)
                .env("RAYON_NUM_THREADS", threads)
                .output()
                .expect("run CLI");
            assert!(
                out.status.success(),
                "{name} failed: {}",
                String::from_utf8_lossy(&out.stderr)
            );
            outputs.push(out.stdout);
        }
        assert!(
            outputs.windows(2).all(|w| w[0] == w[1]),
            "{name}: outputs differ across runs/thread counts"
        );
    }

    // render: byte-identical PPM via files, fed by a deterministic cloud
    let cloud_path = dir.path().join("cloud.txt");
    let status = Command::new(bin)
        .args([
            "cloud",
            "--spec",
            "cantor",
            "--method",
            "backward",
            "--samples",
            "5000",
            "--seed",
            "11",
            "--seed-point",
            "0.5,0",
            "-o",
        ])
        .arg(&cloud_path)
        .status()
        .expect("cloud to file");
    assert!(status.success());
    let mut ppms = Vec::new();
    for (i, threads) in ["1", "8"].iter().enumerate() {
        let out_path = dir.path().join(format!("r{i}.ppm"));
        let status = Command::new(bin)
            .args(["render", "--cloud"])
            .arg(&cloud_path)
            .args(["--window", "-0.1,1.1,-0.1,0.1", "--width", "300", "--height", "50", "-o"])
            .arg(&out_path)
            .env("RAYON_NUM_THREADS", threads)
            .status()
            .expect("render");
        assert!(status.success());
        ppms.push(std::fs::read(&out_path).expect("read ppm"));
    }
    assert_eq!(ppms[0], ppms[1], "render outputs differ");
    assert!(ppms[0].starts_with(b"P5\n300 50\n255\n"));

    // unknown subcommands exit 1 with usage text
    let out = Command::new(bin).arg("frobnicate").output().expect("run");
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());

    println!("criterion 10: PASS — byte-identical outputs across runs and 1 vs 8 threads");
}

/// Cantor repelling-cloud invariant used by criterion 2's oracle text:
/// every cloud point is genuinely fixed and repelling for its word.
#[test]
fn repelling_points_verify_their_words() {
    let spec = cantor_spec().spec;
    let mut checked = 0;
    for entry in enumerate_words(&spec, 5) {
        let f = word_map(&spec, &entry.word).expect("word map");
        for rec in fixed_points(&f).expect("fixed points") {
            if rec.class == FixedPointClass::Repelling {
                assert!(chordal_dist(f.eval(rec.location), rec.location) <= 1e-8);
                assert!(rec.multiplier.norm() > 1.0);
                checked += 1;
            }
        }
    }
    assert!(checked > 50);
}

/// The two-sided reproducibility contract on approximations: identical
/// params reproduce clouds bit-exactly.
#[test]
fn approximations_reproducible_from_params() {
    let spec = cantor_spec().spec;
    let a = backward_orbit_cloud(&spec, fin(0.5, 0.0), 4096, 30, 9).unwrap();
    let params: BTreeMap<String, String> = a.params.clone();
    let n: usize = params["n_samples"].parse().unwrap();
    let burn: usize = params["burn_in"].parse().unwrap();
    let seed: u64 = params["rng_seed"].parse().unwrap();
    let b = backward_orbit_cloud(&spec, fin(0.5, 0.0), n, burn, seed).unwrap();
    assert_eq!(a.cloud.points, b.cloud.points);
    assert_eq!(a.spec_hash, b.spec_hash);
}
