//! Fringe analysis of screen densities: marginals, extrema, visibility,
//! fringe period, lobe splitting, complementarity and which-way
//! distinguishability.

use num_complex::Complex;

use crate::density::{DensityField, Profile};
use crate::error::{Error, Result};
use crate::grid::Interval;
use crate::num::{from_usize, lit, Real};

/// Relative prominence below which an extremum is treated as ripple.
pub const PROMINENCE: f64 = 1e-3;

fn trapezoid<T: Real>(values: impl ExactSizeIterator<Item = T>, h: T) -> T {
    let n = values.len();
    if n < 2 {
        return T::zero();
    }
    let half = lit::<T>(0.5);
    let s = values.enumerate().fold(T::zero(), |a, (k, v)| {
        a + if k == 0 || k == n - 1 { half * v } else { v }
    });
    s * h
}

fn window_indices<T: Real>(coords: impl Iterator<Item = T>, w: &Interval<T>) -> Option<(usize, usize)> {
    let idx: Vec<usize> = coords.enumerate().filter(|(_, c)| w.contains(*c)).map(|(i, _)| i).collect();
    match (idx.first(), idx.last()) {
        (Some(&a), Some(&b)) if b > a => Some((a, b)),
        _ => None,
    }
}

/// Trapezoidal integral over x node columns `i0..=i1`, one value per z node.
fn z_marginal_cols<T: Real>(d: &DensityField<T>, i0: usize, i1: usize) -> Profile<T> {
    let dx = d.grid.dx();
    let values = d
        .values
        .rows()
        .into_iter()
        .map(|row| trapezoid(row.iter().skip(i0).take(i1 + 1 - i0).copied(), dx))
        .collect();
    Profile::new(d.grid.zs(), values)
}

/// Density integrated over `x ∈ x_window`, per z node.
///
/// Fails with [`Error::EmptyWindow`] when the window holds fewer than two x
/// nodes.
pub fn z_marginal<T: Real>(d: &DensityField<T>, x_window: Interval<T>) -> Result<Profile<T>> {
    let (i0, i1) = window_indices(d.grid.xs().into_iter(), &x_window).ok_or(Error::EmptyWindow {
        lo: x_window.lo.to_f64().unwrap_or(f64::NAN),
        hi: x_window.hi.to_f64().unwrap_or(f64::NAN),
    })?;
    Ok(z_marginal_cols(d, i0, i1))
}

/// Density integrated over `z ∈ z_window`, per x node.
pub fn x_marginal<T: Real>(d: &DensityField<T>, z_window: Interval<T>) -> Result<Profile<T>> {
    let (j0, j1) = window_indices(d.grid.zs().into_iter(), &z_window).ok_or(Error::EmptyWindow {
        lo: z_window.lo.to_f64().unwrap_or(f64::NAN),
        hi: z_window.hi.to_f64().unwrap_or(f64::NAN),
    })?;
    let dz = d.grid.dz();
    let values = (0..d.grid.nx)
        .map(|i| trapezoid(d.values.column(i).iter().skip(j0).take(j1 + 1 - j0).copied(), dz))
        .collect();
    Ok(Profile::new(d.grid.xs(), values))
}

fn full_x<T: Real>(d: &DensityField<T>) -> Interval<T> {
    Interval::new(d.grid.x_min, d.grid.x_max)
}

fn full_z<T: Real>(d: &DensityField<T>) -> Interval<T> {
    Interval::new(d.grid.z_min, d.grid.z_max)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExtremumKind {
    Max,
    Min,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Extremum<T> {
    pub index: usize,
    pub coord: T,
    pub value: T,
    pub kind: ExtremumKind,
}

/// Interior extrema whose prominence exceeds [`PROMINENCE`] of the profile's
/// range, in coordinate order. Maxima and minima alternate.
pub fn extrema<T: Real>(p: &Profile<T>) -> Vec<Extremum<T>> {
    let n = p.len();
    if n < 3 {
        return Vec::new();
    }
    let (lo, hi) = p.values.iter().fold((T::infinity(), T::neg_infinity()), |(a, b), &v| (a.min(v), b.max(v)));
    let delta = (hi - lo) * lit(PROMINENCE);
    if !(delta > T::zero()) {
        return Vec::new();
    }
    let mut out = Vec::new();
    let (mut mx, mut mxi) = (p.values[0], 0);
    let (mut mn, mut mni) = (p.values[0], 0);
    let mut seeking: Option<ExtremumKind> = None;
    let mut push = |i: usize, kind| {
        if i > 0 && i < n - 1 {
            out.push(Extremum { index: i, coord: p.coords[i], value: p.values[i], kind });
        }
    };
    for (i, &v) in p.values.iter().enumerate() {
        if v > mx {
            mx = v;
            mxi = i;
        }
        if v < mn {
            mn = v;
            mni = i;
        }
        match seeking {
            None | Some(ExtremumKind::Max) if v < mx - delta => {
                push(mxi, ExtremumKind::Max);
                seeking = Some(ExtremumKind::Min);
                mn = v;
                mni = i;
            }
            None | Some(ExtremumKind::Min) if v > mn + delta => {
                push(mni, ExtremumKind::Min);
                seeking = Some(ExtremumKind::Max);
                mx = v;
                mxi = i;
            }
            _ => {}
        }
    }
    out
}

/// Result of [`visibility`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Visibility<T> {
    pub value: T,
    /// Adjacent max/min pairs that were averaged.
    pub pairs: usize,
    /// Fewer than two extrema in the window; `value` is 0.
    pub degenerate: bool,
}

/// Mean of `(I_max - I_min) / (I_max + I_min)` over adjacent extrema pairs
/// inside `z_window`.
pub fn visibility<T: Real>(p: &Profile<T>, z_window: Interval<T>) -> Visibility<T> {
    let ext: Vec<_> = extrema(p).into_iter().filter(|e| z_window.contains(e.coord)).collect();
    let mut sum = T::zero();
    let mut pairs = 0;
    for w in ext.windows(2) {
        if w[0].kind == w[1].kind {
            continue;
        }
        let (a, b) = if w[0].kind == ExtremumKind::Max { (w[0].value, w[1].value) } else { (w[1].value, w[0].value) };
        let denom = a + b;
        if denom > T::zero() {
            sum = sum + ((a - b) / denom).max(T::zero()).min(T::one());
            pairs += 1;
        }
    }
    if pairs == 0 {
        return Visibility { value: T::zero(), pairs: 0, degenerate: true };
    }
    Visibility { value: sum / from_usize(pairs), pairs, degenerate: false }
}

/// Result of [`fringe_period`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FringePeriod<T> {
    pub period: T,
    /// Standard error of the extrema-spacing estimate.
    pub std_error: T,
    pub extrema: usize,
}

/// `|Σ c_k e^{-i q z_k}|`.
fn spectral_amplitude<T: Real>(coords: &[T], centered: &[T], q: T) -> T {
    coords
        .iter()
        .zip(centered)
        .fold(Complex::new(T::zero(), T::zero()), |acc, (&z, &c)| acc + Complex::from_polar(c, -q * z))
        .norm()
}

/// Golden-section maximization of `f` on `[a, b]`.
fn golden_max<T: Real>(f: impl Fn(T) -> T, mut a: T, mut b: T) -> T {
    let r = (lit::<T>(5.0).sqrt() - T::one()) / lit(2.0);
    let mut c = b - r * (b - a);
    let mut d = a + r * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    for _ in 0..200 {
        if (b - a).abs() <= lit::<T>(1e-12) * (a.abs() + b.abs()) {
            break;
        }
        if fc > fd {
            b = d;
            d = c;
            fd = fc;
            c = b - r * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + r * (b - a);
            fd = f(d);
        }
    }
    (a + b) / lit(2.0)
}

/// Dominant oscillation period of a profile.
///
/// A coarse period from the mean spacing of consecutive extrema is refined
/// by locating the peak of the Hann-windowed spectrum within
/// `[0.6, 1.6]` of the coarse value. Absent when fewer than three extrema
/// are found.
pub fn fringe_period<T: Real>(p: &Profile<T>) -> Option<FringePeriod<T>> {
    let ext = extrema(p);
    if ext.len() < 3 {
        return None;
    }
    let two = lit::<T>(2.0);
    let spacings: Vec<T> = ext.windows(2).map(|w| two * (w[1].coord - w[0].coord)).collect();
    let m = from_usize::<T>(spacings.len());
    let coarse = spacings.iter().fold(T::zero(), |a, &s| a + s) / m;
    let var = spacings.iter().fold(T::zero(), |a, &s| a + (s - coarse).powi(2)) / (m - T::one()).max(T::one());
    let std_error = (var / m).sqrt();

    let n = p.len();
    let hann: Vec<T> = (0..n)
        .map(|i| (T::PI() * from_usize::<T>(i) / from_usize::<T>(n - 1)).sin().powi(2))
        .collect();
    let wsum = hann.iter().fold(T::zero(), |a, &w| a + w);
    let mean = hann.iter().zip(&p.values).fold(T::zero(), |a, (&w, &v)| a + w * v) / wsum;
    let centered: Vec<T> = hann.iter().zip(&p.values).map(|(&w, &v)| w * (v - mean)).collect();

    let tau = two * T::PI();
    let (q_lo, q_hi) = (tau / (lit::<T>(1.6) * coarse), tau / (lit::<T>(0.6) * coarse));
    let amp = |q: T| spectral_amplitude(&p.coords, &centered, q);
    let scan = 96;
    let step = (q_hi - q_lo) / from_usize(scan);
    let best = (0..=scan)
        .map(|k| (k, amp(q_lo + step * from_usize(k))))
        .fold((0, T::neg_infinity()), |b, c| if c.1 > b.1 { c } else { b })
        .0;
    let a = q_lo + step * from_usize(best.saturating_sub(1));
    let b = q_lo + step * from_usize((best + 1).min(scan));
    let q = golden_max(amp, a, b);
    Some(FringePeriod { period: tau / q, std_error, extrema: ext.len() })
}

/// Result of [`complementarity`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Complementarity<T> {
    /// Visibility of `dplus + dminus` over the whole axis.
    pub visibility: T,
    /// Largest `|dplus + dminus - 2 reference| / (2 reference)`, taken where
    /// the reference is above 1e-12 of its peak.
    pub max_deviation: T,
}

pub fn complementarity<T: Real>(dplus: &Profile<T>, dminus: &Profile<T>, reference: &Profile<T>) -> Result<Complementarity<T>> {
    if !dplus.same_axis(dminus) || !dplus.same_axis(reference) {
        return Err(Error::GridMismatch);
    }
    // Sum in a fixed order so the result is symmetric in the two lobes.
    let sum: Vec<T> = dplus.values.iter().zip(&dminus.values).map(|(&a, &b)| if a <= b { a + b } else { b + a }).collect();
    let sum = Profile::new(dplus.coords.clone(), sum);
    let whole = match (dplus.coords.first(), dplus.coords.last()) {
        (Some(&a), Some(&b)) => Interval::new(a, b),
        _ => return Err(Error::GridMismatch),
    };
    let peak = reference.values.iter().fold(T::zero(), |m, &v| m.max(v));
    let floor = peak * lit(1e-12);
    let two = lit::<T>(2.0);
    let max_deviation = sum
        .values
        .iter()
        .zip(&reference.values)
        .filter(|(_, &r)| r > floor && r > T::zero())
        .fold(T::zero(), |m, (&s, &r)| m.max((s - two * r).abs() / (two * r)));
    Ok(Complementarity { visibility: visibility(&sum, whole).value, max_deviation })
}

/// Result of [`antiphase`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Antiphase {
    /// Maxima of the `+` lobe's oscillatory part that were matched.
    pub matched: usize,
    /// Largest distance, in grid cells, from such a maximum to the nearest
    /// minimum of the `-` lobe's oscillatory part.
    pub max_offset_cells: usize,
}

impl Antiphase {
    pub fn holds(&self) -> bool {
        self.matched > 0 && self.max_offset_cells <= 1
    }
}

/// Compares the maxima of `dplus - reference` with the minima of
/// `dminus - reference`.
pub fn antiphase<T: Real>(dplus: &Profile<T>, dminus: &Profile<T>, reference: &Profile<T>) -> Result<Antiphase> {
    if !dplus.same_axis(dminus) || !dplus.same_axis(reference) {
        return Err(Error::GridMismatch);
    }
    let osc = |p: &Profile<T>| {
        Profile::new(p.coords.clone(), p.values.iter().zip(&reference.values).map(|(&a, &r)| a - r).collect())
    };
    let maxima: Vec<usize> = extrema(&osc(dplus))
        .into_iter()
        .filter(|e| e.kind == ExtremumKind::Max)
        .map(|e| e.index)
        .collect();
    let minima: Vec<usize> = extrema(&osc(dminus))
        .into_iter()
        .filter(|e| e.kind == ExtremumKind::Min)
        .map(|e| e.index)
        .collect();
    if minima.is_empty() {
        return Ok(Antiphase { matched: 0, max_offset_cells: usize::MAX });
    }
    let max_offset_cells = maxima
        .iter()
        .map(|&i| minima.iter().map(|&j| i.abs_diff(j)).min().unwrap_or(usize::MAX))
        .max()
        .unwrap_or(usize::MAX);
    Ok(Antiphase { matched: maxima.len(), max_offset_cells })
}

/// Two x-lobes of a density, or a single one.
#[derive(Debug, Clone, PartialEq)]
pub struct Lobes<T> {
    /// x node indices of the lobe peaks in increasing x.
    pub peaks: Vec<usize>,
    pub centers: Vec<T>,
    /// x node of the density minimum between two lobes.
    pub split: Option<usize>,
}

impl<T> Lobes<T> {
    pub fn is_single(&self) -> bool {
        self.split.is_none()
    }
}

/// Locates the two largest maxima of the x-marginal and the minimum between
/// them. Among equal minima the one closest to `x = 0` wins.
pub fn find_lobes<T: Real>(d: &DensityField<T>) -> Result<Lobes<T>> {
    let xm = x_marginal(d, full_z(d))?;
    let mut maxima: Vec<_> = extrema(&xm).into_iter().filter(|e| e.kind == ExtremumKind::Max).collect();
    if maxima.is_empty() {
        let i = xm.values.iter().enumerate().fold(0, |b, (i, &v)| if v > xm.values[b] { i } else { b });
        return Ok(Lobes { peaks: vec![i], centers: vec![xm.coords[i]], split: None });
    }
    maxima.sort_by(|a, b| b.value.partial_cmp(&a.value).unwrap_or(std::cmp::Ordering::Equal));
    maxima.truncate(2);
    maxima.sort_by_key(|e| e.index);
    let peaks: Vec<usize> = maxima.iter().map(|e| e.index).collect();
    let centers = maxima.iter().map(|e| e.coord).collect();
    let split = if peaks.len() == 2 {
        let (a, b) = (peaks[0], peaks[1]);
        let mut best = a;
        for i in a..=b {
            let (v, bv) = (xm.values[i], xm.values[best]);
            if v < bv || (v == bv && xm.coords[i].abs() < xm.coords[best].abs()) {
                best = i;
            }
        }
        Some(best)
    } else {
        None
    };
    Ok(Lobes { peaks, centers, split })
}

/// z-profiles of the two lobes, integrated over `x ≤ split` and
/// `x ≥ split` (sharing the split node, so the two add up to the full
/// marginal) and scaled by 2.
///
/// The factor 2 puts each lobe on the scale of its bracket
/// `P₊ + P₋ ± 2f`, so a no-eraser marginal `P₊ + P₋` compares directly and
/// the two lobes sum to twice it. Returns `(plus, minus)`, `plus` being the
/// lobe at larger x.
pub fn lobe_profiles<T: Real>(d: &DensityField<T>, lobes: &Lobes<T>) -> Result<(Profile<T>, Profile<T>)> {
    let s = lobes
        .split
        .ok_or_else(|| Error::UnsupportedState("density has a single x-lobe".into()))?;
    let two = lit::<T>(2.0);
    let minus = z_marginal_cols(d, 0, s).scaled(two);
    let plus = z_marginal_cols(d, s, d.grid.nx - 1).scaled(two);
    Ok((plus, minus))
}

/// Result of [`distinguishability`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Distinguishability<T> {
    pub value: T,
    pub single_lobe: bool,
}

/// `1 - ∫ min(p₊, p₋) dx` for the normalized x-distributions of the two
/// lobes.
///
/// Each lobe's distribution is rebuilt from its outer half, mirrored about
/// the lobe peak, so tails reaching past the split point count as overlap.
/// A single-lobe density is flagged and scores 0.
pub fn distinguishability<T: Real>(d: &DensityField<T>) -> Result<Distinguishability<T>> {
    let lobes = find_lobes(d)?;
    if lobes.is_single() {
        return Ok(Distinguishability { value: T::zero(), single_lobe: true });
    }
    let xm = x_marginal(d, full_z(d))?;
    let n = xm.len();
    let mirrored = |peak: usize, outward_right: bool| -> Vec<T> {
        let mut out = vec![T::zero(); n];
        for k in 0..n {
            let src = if outward_right { peak + k } else { match peak.checked_sub(k) { Some(s) => s, None => break } };
            if src >= n {
                break;
            }
            let v = xm.values[src];
            out[src] = v;
            let image = if outward_right { peak.checked_sub(k) } else { Some(peak + k).filter(|&i| i < n) };
            if let Some(i) = image {
                out[i] = v;
            }
        }
        let total = out.iter().fold(T::zero(), |a, &v| a + v);
        if total > T::zero() {
            out.iter_mut().for_each(|v| *v = *v / total);
        }
        out
    };
    let left = mirrored(lobes.peaks[0], false);
    let right = mirrored(lobes.peaks[1], true);
    let overlap = left.iter().zip(&right).fold(T::zero(), |a, (&l, &r)| a + l.min(r));
    Ok(Distinguishability { value: (T::one() - overlap).max(T::zero()).min(T::one()), single_lobe: false })
}

/// Summary of the fringe content of a screen density.
#[derive(Debug, Clone, PartialEq)]
pub struct FringeReport<T> {
    pub lobe_centers: Vec<T>,
    /// One entry per lobe, in increasing x (a single entry for one lobe).
    pub visibility_per_lobe: Vec<T>,
    /// Period of the largest-x lobe.
    pub fringe_period: Option<T>,
    /// Visibility of the summed lobe profiles; needs a reference.
    pub complementarity: Option<T>,
    /// Deviation of the summed lobes from twice the reference.
    pub complementarity_deviation: Option<T>,
    pub antiphase: Option<Antiphase>,
    pub distinguishability: T,
    pub single_lobe: bool,
}

/// Runs the full analysis. Visibilities are taken over `z_window`;
/// `reference` is the matching no-eraser density, used for the
/// complementarity and antiphase checks.
pub fn analyze<T: Real>(
    d: &DensityField<T>,
    reference: Option<&DensityField<T>>,
    z_window: Interval<T>,
) -> Result<FringeReport<T>> {
    let lobes = find_lobes(d)?;
    let dist = distinguishability(d)?;
    if lobes.is_single() {
        let zm = z_marginal(d, full_x(d))?;
        return Ok(FringeReport {
            lobe_centers: lobes.centers,
            visibility_per_lobe: vec![visibility(&zm, z_window).value],
            fringe_period: fringe_period(&zm).map(|f| f.period),
            complementarity: None,
            complementarity_deviation: None,
            antiphase: None,
            distinguishability: dist.value,
            single_lobe: true,
        });
    }
    let (plus, minus) = lobe_profiles(d, &lobes)?;
    let (mut comp, mut dev, mut anti) = (None, None, None);
    if let Some(r) = reference {
        if r.grid != d.grid {
            return Err(Error::GridMismatch);
        }
        let rz = z_marginal(r, full_x(r))?;
        let c = complementarity(&plus, &minus, &rz)?;
        comp = Some(c.visibility);
        dev = Some(c.max_deviation);
        anti = Some(antiphase(&plus, &minus, &rz)?);
    }
    Ok(FringeReport {
        lobe_centers: lobes.centers,
        visibility_per_lobe: vec![visibility(&minus, z_window).value, visibility(&plus, z_window).value],
        fringe_period: fringe_period(&plus).map(|f| f.period),
        complementarity: comp,
        complementarity_deviation: dev,
        antiphase: anti,
        distinguishability: dist.value,
        single_lobe: false,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::GridSpec;
    use proptest::prelude::*;

    fn profile(n: usize, lo: f64, hi: f64, f: impl Fn(f64) -> f64) -> Profile<f64> {
        let h = (hi - lo) / (n - 1) as f64;
        let coords: Vec<f64> = (0..n).map(|i| lo + h * i as f64).collect();
        let values = coords.iter().map(|&z| f(z)).collect();
        Profile::new(coords, values)
    }

    fn gauss(x: f64, c: f64, s: f64) -> f64 {
        (-(x - c).powi(2) / (2.0 * s * s)).exp()
    }

    #[test]
    fn ideal_fringes_have_unit_visibility() {
        let p = profile(4001, -40.0, 40.0, |z| 1.0 + (0.8 * z).cos());
        let v = visibility(&p, Interval::new(-20.0, 20.0));
        assert!(!v.degenerate);
        assert!((v.value - 1.0).abs() < 1e-3, "{}", v.value);
    }

    #[test]
    fn single_hump_is_degenerate() {
        let p = profile(501, -10.0, 10.0, |z| gauss(z, 0.0, 2.0));
        let v = visibility(&p, Interval::new(-10.0, 10.0));
        assert!(v.degenerate);
        assert_eq!(v.value, 0.0);
        assert!(fringe_period(&p).is_none());
    }

    #[test]
    fn extrema_alternate_and_skip_ripple() {
        let p = profile(2001, -30.0, 30.0, |z| 2.0 + z.cos() + 1e-6 * (40.0 * z).sin());
        let e = extrema(&p);
        assert!(e.windows(2).all(|w| w[0].kind != w[1].kind));
        assert_eq!(e.len(), 19);
    }

    #[test]
    fn period_of_enveloped_cosine() {
        let k = 0.4;
        let p = profile(1024, -84.0, 84.0, |z| {
            gauss(z, 4.0, 10.0) + gauss(z, -4.0, 10.0) + 2.0 * gauss(z, 0.0, 10.0) * (-16.0f64 / 200.0).exp() * (k * z).cos()
        });
        let f = fringe_period(&p).unwrap();
        let exact = 2.0 * std::f64::consts::PI / k;
        assert!((f.period - exact).abs() < 0.02 * exact, "{} vs {exact}", f.period);
    }

    #[test]
    fn marginal_window_errors() {
        let g = GridSpec::<f64>::square(1.0, 11).unwrap();
        let d = DensityField::from_fn(g, |_, _| 1.0);
        assert!(matches!(z_marginal(&d, Interval::new(5.0, 6.0)), Err(Error::EmptyWindow { .. })));
        let zm = z_marginal(&d, Interval::new(-1.0, 1.0)).unwrap();
        assert!(zm.values.iter().all(|v| (v - 2.0).abs() < 1e-14));
    }

    #[test]
    fn lobe_halves_sum_to_full_marginal() {
        let g = GridSpec::new(-30.0, 30.0, 301, -10.0, 10.0, 101).unwrap();
        let d = DensityField::from_fn(g, |x, z| (gauss(x, 12.0, 3.0) + gauss(x, -12.0, 3.0)) * gauss(z, 0.0, 2.0));
        let lobes = find_lobes(&d).unwrap();
        assert_eq!(lobes.split.map(|s| g.x(s)), Some(0.0));
        let (plus, minus) = lobe_profiles(&d, &lobes).unwrap();
        let full = z_marginal(&d, Interval::new(-30.0, 30.0)).unwrap();
        for k in 0..full.len() {
            assert!((plus.values[k] + minus.values[k] - 2.0 * full.values[k]).abs() < 1e-12);
        }
    }

    #[test]
    fn distinguishability_limits() {
        let g = GridSpec::new(-60.0, 60.0, 601, -5.0, 5.0, 21).unwrap();
        let far = DensityField::from_fn(g, |x, z| (gauss(x, 30.0, 2.0) + gauss(x, -30.0, 2.0)) * gauss(z, 0.0, 1.0));
        let d = distinguishability(&far).unwrap();
        assert!(!d.single_lobe);
        assert!((d.value - 1.0).abs() < 1e-6);
        let one = DensityField::from_fn(g, |x, z| gauss(x, 0.0, 2.0) * gauss(z, 0.0, 1.0));
        let d = distinguishability(&one).unwrap();
        assert!(d.single_lobe);
        assert_eq!(d.value, 0.0);
        // Two unit Gaussians 4 widths apart overlap by 2 Φ(-2) ≈ 0.0455.
        let near = DensityField::from_fn(g, |x, z| (gauss(x, 2.0, 1.0) + gauss(x, -2.0, 1.0)) * gauss(z, 0.0, 1.0));
        let d = distinguishability(&near).unwrap();
        assert!((d.value - (1.0 - 0.0455)).abs() < 2e-3, "{}", d.value);
    }

    #[test]
    fn antiphase_of_complementary_profiles() {
        let r = profile(801, -40.0, 40.0, |z| 2.0 * gauss(z, 0.0, 10.0));
        let osc = |s: f64| profile(801, -40.0, 40.0, move |z| 2.0 * gauss(z, 0.0, 10.0) * (1.0 + s * 0.9 * (0.5 * z).cos()));
        let a = antiphase(&osc(1.0), &osc(-1.0), &r).unwrap();
        assert!(a.holds());
        assert_eq!(a.max_offset_cells, 0);
        let c = complementarity(&osc(1.0), &osc(-1.0), &r).unwrap();
        assert!(c.max_deviation < 1e-12);
    }

    proptest! {
        #[test]
        fn visibility_in_unit_interval_and_scale_invariant(k in 0.2..2.0f64, a in 0.0..1.0f64, s in 1e-3..1e3f64) {
            let p = profile(1501, -30.0, 30.0, |z| gauss(z, 0.0, 12.0) * (1.0 + a * (k * z).cos()));
            let w = Interval::new(-15.0, 15.0);
            let v = visibility(&p, w);
            prop_assert!((0.0..=1.0).contains(&v.value));
            let vs = visibility(&p.scaled(s), w);
            prop_assert!((v.value - vs.value).abs() < 1e-12);
        }

        #[test]
        fn period_invariant_under_scale_and_offset(k in 0.3..1.5f64, s in 1e-2..1e2f64, c in 0.0..10.0f64) {
            let p = profile(2001, -40.0, 40.0, |z| 1.0 + 0.8 * (k * z).cos());
            let base = fringe_period(&p).unwrap().period;
            let moved = Profile::new(p.coords.clone(), p.values.iter().map(|v| v * s + c).collect());
            let other = fringe_period(&moved).unwrap().period;
            prop_assert!((base - other).abs() < 1e-6 * base);
            let exact = 2.0 * std::f64::consts::PI / k;
            prop_assert!((base - exact).abs() < 0.01 * exact);
        }

        #[test]
        fn complementarity_symmetric(k in 0.2..1.0f64, a in 0.0..1.0f64) {
            let r = profile(601, -30.0, 30.0, |z| gauss(z, 1.0, 8.0));
            let p = profile(601, -30.0, 30.0, |z| gauss(z, 1.0, 8.0) * (1.0 + a * (k * z).cos()));
            let m = profile(601, -30.0, 30.0, |z| gauss(z, 1.0, 8.0) * (1.0 - a * (k * z).cos()) + 1e-3);
            let x = complementarity(&p, &m, &r).unwrap();
            let y = complementarity(&m, &p, &r).unwrap();
            prop_assert_eq!(x, y);
        }
    }
}
