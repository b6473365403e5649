//! Simultaneous polynomial root refinement (Aberth–Ehrlich), with root
//! clustering for multiplicity detection.

use num_complex::Complex64;

use super::poly::Polynomial;
use crate::error::{Error, Result};

/// Roots closer than this after convergence are merged with summed
/// multiplicity; chosen above the square-root noise scale of double
/// precision residuals at multiple roots.
pub const CLUSTER_TOL: f64 = 1e-7;

const MAX_ITER: usize = 600;
/// Step-stagnation threshold relative to root magnitude.
const STEP_TOL: f64 = 1e-14;

/// All complex roots of `p` (counted with multiplicity) to relative
/// residual tolerance `tol`.
///
/// Degrees one and two are solved in closed form; higher degrees run
/// Aberth–Ehrlich simultaneous iteration from deterministic
/// perturbed-circle initial guesses. Clusters of converged iterates within
/// [`CLUSTER_TOL`] are merged to their centroid and reported with
/// multiplicity. The output is sorted by (re, im).
pub fn poly_roots(p: &Polynomial, tol: f64) -> Result<Vec<Complex64>> {
    if p.degree().unwrap_or(0) < 1 {
        return Err(Error::invalid("poly_roots requires degree >= 1"));
    }
    if !(tol > 0.0) {
        return Err(Error::invalid("poly_roots requires tol > 0"));
    }

    // Exact roots at the origin come off first; Aberth handles the rest.
    let (zeros_at_origin, q) = p.factor_out_origin();
    let mut roots = vec![Complex64::new(0.0, 0.0); zeros_at_origin];

    let deg = q.degree().expect("nonzero by construction");
    match deg {
        0 => {}
        1 => roots.push(-q.coeff(0) / q.coeff(1)),
        2 => roots.extend(quadratic_roots(q.coeff(0), q.coeff(1), q.coeff(2))),
        _ => roots.extend(aberth(&q, tol)?),
    }

    let mut clustered = cluster_roots(&roots);
    clustered.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    Ok(clustered)
}

/// Stable quadratic formula: q = -(b + s·√(b²-4ac))/2 with s aligned to b,
/// roots q/a and c/q.
fn quadratic_roots(c0: Complex64, c1: Complex64, c2: Complex64) -> Vec<Complex64> {
    let disc = (c1 * c1 - 4.0 * c2 * c0).sqrt();
    let s = if (c1.conj() * disc).re >= 0.0 {
        disc
    } else {
        -disc
    };
    let q = -(c1 + s) / 2.0;
    if q == Complex64::new(0.0, 0.0) {
        // b = 0 and disc = 0: double root at origin of c2 z^2 + c0 (c0 = 0 here)
        return vec![Complex64::new(0.0, 0.0); 2];
    }
    vec![q / c2, c0 / q]
}

fn aberth(p: &Polynomial, tol: f64) -> Result<Vec<Complex64>> {
    let deg = p.degree().unwrap();
    let dp = p.derivative();
    let lead = p.leading();

    // Cauchy-style radius bound, perturbed circle start.
    let radius = 1.0
        + p.coeffs()[..deg]
            .iter()
            .map(|c| (*c / lead).norm())
            .fold(0.0, f64::max);
    let golden = 0.618_033_988_749_894_9_f64;
    let mut z: Vec<Complex64> = (0..deg)
        .map(|j| {
            let angle =
                2.0 * std::f64::consts::PI * (j as f64 / deg as f64) + 0.397 / deg as f64 + 0.1;
            let r = radius * (1.0 + 0.08 * ((j as f64 * golden).fract() - 0.5));
            Complex64::from_polar(r, angle)
        })
        .collect();

    // Residual scale: |p(z)| against sum_k |a_k||z|^k.
    let coeff_abs: Vec<f64> = p.coeffs().iter().map(|c| c.norm()).collect();
    let scale_at = |x: f64| {
        let mut s = 0.0;
        for &a in coeff_abs.iter().rev() {
            s = s * x + a;
        }
        s.max(f64::MIN_POSITIVE)
    };

    for _iter in 0..MAX_ITER {
        let mut max_step = 0.0_f64;
        for j in 0..deg {
            let pj = p.eval(z[j]);
            if pj == Complex64::new(0.0, 0.0) {
                continue;
            }
            let dpj = dp.eval(z[j]);
            let newton = if dpj == Complex64::new(0.0, 0.0) {
                // at an exact critical point: nudge deterministically
                Complex64::new(1e-8 * (1.0 + z[j].norm()), 0.0)
            } else {
                pj / dpj
            };
            let mut repulsion = Complex64::new(0.0, 0.0);
            for (k, zk) in z.iter().enumerate() {
                if k != j {
                    let d = z[j] - zk;
                    if d != Complex64::new(0.0, 0.0) {
                        repulsion += d.inv();
                    }
                }
            }
            let denom = Complex64::new(1.0, 0.0) - newton * repulsion;
            let step = if denom == Complex64::new(0.0, 0.0) {
                newton
            } else {
                newton / denom
            };
            z[j] -= step;
            max_step = max_step.max(step.norm() / (1.0 + z[j].norm()));
        }
        // Steps of a multiple-root cluster shrink to its noise-floor
        // separation, so waiting for sub-1e-9 steps guarantees clusters
        // have collapsed well below CLUSTER_TOL before we stop.
        if max_step <= 1e-9 {
            let worst_rel = (0..deg)
                .map(|j| p.eval(z[j]).norm() / scale_at(z[j].norm()))
                .fold(0.0, f64::max);
            if worst_rel <= tol {
                return Ok(z);
            }
            if max_step <= STEP_TOL {
                // fully stagnated: accept a relaxed multiple-root noise
                // floor, otherwise report the failure
                if worst_rel <= tol.max(1e-10) {
                    return Ok(z);
                }
                return Err(Error::RootFinderDiverged {
                    iterations: MAX_ITER,
                    worst_residual: worst_rel,
                });
            }
        }
    }
    let worst_rel = (0..deg)
        .map(|j| p.eval(z[j]).norm() / scale_at(z[j].norm()))
        .fold(0.0, f64::max);
    if worst_rel <= tol {
        return Ok(z);
    }
    Err(Error::RootFinderDiverged {
        iterations: MAX_ITER,
        worst_residual: worst_rel,
    })
}

/// Greedy centroid clustering at [`CLUSTER_TOL`]; output repeats each
/// centroid by its cluster size.
fn cluster_roots(roots: &[Complex64]) -> Vec<Complex64> {
    let mut order: Vec<usize> = (0..roots.len()).collect();
    order.sort_by(|&i, &j| {
        (roots[i].re, roots[i].im)
            .partial_cmp(&(roots[j].re, roots[j].im))
            .unwrap()
    });

    struct Cluster {
        sum: Complex64,
        count: usize,
    }
    let mut clusters: Vec<Cluster> = Vec::new();
    for &i in &order {
        let z = roots[i];
        let mut placed = false;
        for cl in clusters.iter_mut() {
            let centroid = cl.sum / cl.count as f64;
            if (z - centroid).norm() <= CLUSTER_TOL {
                cl.sum += z;
                cl.count += 1;
                placed = true;
                break;
            }
        }
        if !placed {
            clusters.push(Cluster { sum: z, count: 1 });
        }
    }
    let mut out = Vec::with_capacity(roots.len());
    for cl in clusters {
        let centroid = cl.sum / cl.count as f64;
        out.extend(std::iter::repeat(centroid).take(cl.count));
    }
    out
}
