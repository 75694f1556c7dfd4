//! Partial-energy curves and the energy delay theorem.
//!
//! Robinson's energy delay theorem: among all causal transfer functions with
//! the same boundary gain, the minimum-phase one concentrates its energy
//! earliest. Formally, if `f` is minimum-phase and `|g| = |f|` on the circle
//! then every partial sum `sum_{n<=N} |b_n|^2` of `g` is dominated by the
//! corresponding sum for `f`. The matrix version replaces `|g| = |f|` by
//! equality of the para-Hermitian products `G G^H = F F^H` and coefficient
//! magnitudes by Frobenius norms.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::grid::default_grid_for;
use crate::matpoly::MatrixPoly;
use crate::poly::Poly;
use crate::EQUAL_GAIN_TOL;

/// Default relative margin tolerance for scalar energy-delay checks.
pub const SCALAR_MARGIN_SCALE: f64 = 1e-8;

/// Default relative margin tolerance for matrix energy-delay checks.
pub const MATRIX_MARGIN_SCALE: f64 = 1e-6;

/// Nondecreasing partial energies `E_N = sum_{n<=N} |a_n|^2` of a
/// coefficient sequence, ending at the total energy.
#[derive(Debug, Clone, PartialEq)]
pub struct EnergyCurve {
    partials: Vec<f64>,
}

impl EnergyCurve {
    fn from_increments(increments: impl Iterator<Item = f64>) -> Self {
        let mut acc = 0.0;
        let partials = increments
            .map(|e| {
                acc += e;
                acc
            })
            .collect();
        Self { partials }
    }

    /// Partial sums `E_0, E_1, ..., E_deg`; empty for the zero polynomial.
    pub fn partials(&self) -> &[f64] {
        &self.partials
    }

    pub fn len(&self) -> usize {
        self.partials.len()
    }

    pub fn is_empty(&self) -> bool {
        self.partials.is_empty()
    }

    /// Total energy `E_inf`.
    pub fn total(&self) -> f64 {
        self.partials.last().copied().unwrap_or(0.0)
    }

    /// `E_N`, saturating at the total beyond the degree.
    pub fn value_at(&self, n: usize) -> f64 {
        if self.partials.is_empty() {
            0.0
        } else {
            self.partials[n.min(self.partials.len() - 1)]
        }
    }
}

/// Partial energies of a scalar polynomial.
pub fn energy_curve(p: &Poly) -> EnergyCurve {
    EnergyCurve::from_increments(p.coeffs().iter().map(|c| c.norm_sqr()))
}

/// Partial energies of a matrix polynomial, in squared Frobenius norms.
pub fn matrix_energy_curve(p: &MatrixPoly) -> EnergyCurve {
    EnergyCurve::from_increments(
        p.coeffs()
            .iter()
            .map(|a| a.iter().map(|c| c.norm_sqr()).sum()),
    )
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
}

/// Outcome of an energy-delay comparison between a reference `f` and a
/// challenger `g` of equal gain.
#[derive(Debug, Clone, PartialEq)]
pub struct DelayReport {
    pub curve_f: EnergyCurve,
    pub curve_g: EnergyCurve,
    /// Smallest margin `E_f(N) - E_g(N)` over all `N`.
    pub min_margin: f64,
    /// Difference of total energies, zero for exactly equal gains.
    pub total_gap: f64,
    /// Absolute margin tolerance the verdict was taken against.
    pub tol: f64,
    pub verdict: Verdict,
}

impl DelayReport {
    /// Margins `E_f(N) - E_g(N)` for `N` up to the longer curve.
    pub fn margins(&self) -> Vec<f64> {
        let len = self.curve_f.len().max(self.curve_g.len()).max(1);
        (0..len)
            .map(|n| self.curve_f.value_at(n) - self.curve_g.value_at(n))
            .collect()
    }

    pub fn passed(&self) -> bool {
        self.verdict == Verdict::Pass
    }
}

fn report_from_curves(curve_f: EnergyCurve, curve_g: EnergyCurve, tol: f64) -> DelayReport {
    let len = curve_f.len().max(curve_g.len()).max(1);
    let min_margin = (0..len)
        .map(|n| curve_f.value_at(n) - curve_g.value_at(n))
        .fold(f64::INFINITY, f64::min);
    let total_gap = curve_f.total() - curve_g.total();
    let verdict = if min_margin >= -tol {
        Verdict::Pass
    } else {
        Verdict::Fail
    };
    DelayReport {
        curve_f,
        curve_g,
        min_margin,
        total_gap,
        tol,
        verdict,
    }
}

/// Relative sup-norm gain defect between two scalar polynomials.
pub fn scalar_gain_defect(f: &Poly, g: &Poly, m: usize) -> Result<f64> {
    let fv = f.evaluate_on_grid(m)?;
    let gv = g.evaluate_on_grid(m)?;
    let scale = fv.sup_norm().max(gv.sup_norm());
    if scale == 0.0 {
        return Ok(0.0);
    }
    Ok(fv
        .values()
        .iter()
        .zip(gv.values())
        .map(|(a, b)| (a.norm() - b.norm()).abs())
        .fold(0.0, f64::max)
        / scale)
}

/// Relative sup-norm defect between the para-Hermitian products
/// `F F^H` and `G G^H` on the circle.
pub fn matrix_gain_defect(f: &MatrixPoly, g: &MatrixPoly, m: usize) -> Result<f64> {
    if f.dim() != g.dim() {
        return Err(Error::DimensionMismatch {
            left: f.dim(),
            right: g.dim(),
        });
    }
    let fv = f.evaluate_on_grid(m)?;
    let gv = g.evaluate_on_grid(m)?;
    let mut defect: f64 = 0.0;
    let mut scale: f64 = 0.0;
    for (a, b) in fv.values().iter().zip(gv.values()) {
        let sa = a * a.adjoint();
        let sb = b * b.adjoint();
        scale = scale.max(sa.norm());
        defect = defect.max((sa - sb).norm());
    }
    if scale == 0.0 {
        return Ok(0.0);
    }
    Ok(defect / scale)
}

fn scalar_check_grid(f: &Poly, g: &Poly) -> usize {
    default_grid_for(f.degree().unwrap_or(0).max(g.degree().unwrap_or(0)))
}

fn matrix_check_grid(f: &MatrixPoly, g: &MatrixPoly) -> usize {
    let deg = f.degree().unwrap_or(0).max(g.degree().unwrap_or(0));
    (2 * deg + 3).next_power_of_two().max(512)
}

/// Checks the energy delay theorem for a minimum-phase reference `f` and an
/// equal-gain challenger `g`, with an absolute margin tolerance `tol`.
///
/// Gains are compared first; a relative defect beyond the equal-gain
/// tolerance makes the curves incomparable and is an error, not a failed
/// verdict. The verdict is `Pass` when every margin is at least `-tol`.
pub fn verify_energy_delay(f: &Poly, g: &Poly, tol: f64) -> Result<DelayReport> {
    let defect = scalar_gain_defect(f, g, scalar_check_grid(f, g))?;
    if defect > EQUAL_GAIN_TOL {
        return Err(Error::NotComparable {
            defect,
            tol: EQUAL_GAIN_TOL,
        });
    }
    Ok(report_from_curves(energy_curve(f), energy_curve(g), tol))
}

/// Matrix form of [`verify_energy_delay`], comparing `F F^H = G G^H` on the
/// circle and partial sums of squared Frobenius norms.
pub fn verify_matrix_energy_delay(f: &MatrixPoly, g: &MatrixPoly, tol: f64) -> Result<DelayReport> {
    let defect = matrix_gain_defect(f, g, matrix_check_grid(f, g))?;
    if defect > EQUAL_GAIN_TOL {
        return Err(Error::NotComparable {
            defect,
            tol: EQUAL_GAIN_TOL,
        });
    }
    Ok(report_from_curves(
        matrix_energy_curve(f),
        matrix_energy_curve(g),
        tol,
    ))
}

/// Default absolute margin tolerance for a scalar comparison.
pub fn scalar_tolerance(total_energy: f64) -> f64 {
    SCALAR_MARGIN_SCALE * total_energy
}

/// Default absolute margin tolerance for a matrix comparison.
pub fn matrix_tolerance(total_energy: f64) -> f64 {
    MATRIX_MARGIN_SCALE * total_energy
}

/// Deterministic equal-gain pair: an outer `f` and a non-outer `g` with
/// exactly the same boundary gain and the same total energy.
///
/// Zeros are drawn outside an annulus `[0.98, 1.02]` around the circle so
/// every case is well conditioned: `f` takes all zeros outside the circle
/// (it is outer by construction), `g` reflects a nonempty subset back
/// inside and carries a random unimodular constant. Factor for factor the
/// gains agree exactly, so the pair is equal-gain to rounding accuracy and
/// the theorem applies to it without any tolerance caveat.
pub fn generate_equal_gain_pair(seed: u64, degree: usize) -> (Poly, Poly) {
    let deg = degree.max(1);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tau = std::f64::consts::TAU;

    // Exterior zero pool; interior draws are reflected out.
    let mut zeros = Vec::with_capacity(deg);
    for _ in 0..deg {
        let inside = rng.random_bool(0.5);
        let modulus = if inside {
            rng.random_range(0.10..0.98)
        } else {
            rng.random_range(1.02..2.0)
        };
        let z = Complex64::from_polar(modulus, rng.random_range(0.0..tau));
        zeros.push(if inside { 1.0 / z.conj() } else { z });
    }
    let scale = rng.random_range(0.5..2.0);

    let f = Poly::from_roots(Complex64::new(scale, 0.0), &zeros);
    let f0 = f.coeff(0);
    let f = f.scale(f0.conj() / f0.norm());

    // Reflect a nonempty subset of factors back inside, at equal gain:
    // (z - w) and |w| (z - 1/conj(w)) have the same modulus on the circle.
    let mut flip: Vec<bool> = (0..deg).map(|_| rng.random_bool(0.5)).collect();
    if !flip.iter().any(|&b| b) {
        let forced = rng.random_range(0..deg);
        flip[forced] = true;
    }
    let phase = rng.random_range(0.0..tau);
    let mut g = Poly::constant(Complex64::from_polar(scale, phase));
    for (i, &w) in zeros.iter().enumerate() {
        let factor = if flip[i] {
            Poly::new(vec![-1.0 / w.conj(), Complex64::ONE]).scale(w.norm().into())
        } else {
            Poly::new(vec![-w, Complex64::ONE])
        };
        g = &g * &factor;
    }
    (f, g)
}

/// Sorts equal-gain candidates from most to least front-loaded, comparing
/// energy curves lexicographically. Stable: exact ties keep input order.
///
/// All candidates must have the same gain within the equal-gain tolerance,
/// otherwise their curves are not comparable and this is an error.
pub fn delay_ordering(candidates: &[Poly]) -> Result<Vec<usize>> {
    if candidates.len() < 2 {
        return Ok((0..candidates.len()).collect());
    }
    let deg = candidates
        .iter()
        .map(|p| p.degree().unwrap_or(0))
        .max()
        .unwrap_or(0);
    let m = default_grid_for(deg);
    for (i, a) in candidates.iter().enumerate() {
        for b in candidates.iter().skip(i + 1) {
            let defect = scalar_gain_defect(a, b, m)?;
            if defect > EQUAL_GAIN_TOL {
                return Err(Error::NotComparable {
                    defect,
                    tol: EQUAL_GAIN_TOL,
                });
            }
        }
    }
    let curves: Vec<EnergyCurve> = candidates.iter().map(energy_curve).collect();
    let len = curves.iter().map(EnergyCurve::len).max().unwrap_or(1);
    let mut order: Vec<usize> = (0..candidates.len()).collect();
    order.sort_by(|&i, &j| {
        for n in 0..len {
            let cmp = curves[j].value_at(n).total_cmp(&curves[i].value_at(n));
            if cmp != std::cmp::Ordering::Equal {
                return cmp;
            }
        }
        std::cmp::Ordering::Equal
    });
    Ok(order)
}
