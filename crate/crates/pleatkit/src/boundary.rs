//! The boundary circle, limit-map providers, and cross ratios.
//!
//! Boundary points carry an angle on the circle as the source of cyclic
//! order; rays attached by a provider are data and never used to infer
//! order. The cross ratio of a representation is
//! `Sgn(u,v,w,z) * sqrt((<xi u, xi w><xi v, xi z>) / (<xi u, xi z><xi v, xi w>))`,
//! invariant under rescaling of the ray representatives; its hyperbolic
//! counterpart is the classical projective cross ratio of the angles.

use alloc::string::{String, ToString};
use alloc::vec::Vec;

use rand::Rng;

use crate::error::{Error, Result};
use crate::form::{AmbientIsometry, FormVector, IsotropicRay};
use crate::real;
use crate::tol;
use crate::words::{GroupRep, Word};

// ---------------------------------------------------------------------------
// Boundary points
// ---------------------------------------------------------------------------

pub fn normalize_angle(theta: f64) -> f64 {
    let tau = 2.0 * core::f64::consts::PI;
    let mut t = theta % tau;
    if t < 0.0 {
        t += tau;
    }
    // Collapse values within rounding of the branch cut.
    if (t - tau).abs() < 1e-15 {
        t = 0.0;
    }
    t
}

/// Signed angle difference wrapped to (-pi, pi].
pub fn angle_diff(a: f64, b: f64) -> f64 {
    let tau = 2.0 * core::f64::consts::PI;
    let mut d = (a - b) % tau;
    if d <= -core::f64::consts::PI {
        d += tau;
    } else if d > core::f64::consts::PI {
        d -= tau;
    }
    d
}

pub fn angle_eq(a: f64, b: f64) -> bool {
    angle_diff(a, b).abs() < tol::TOL_ANGLE
}

/// A point of the boundary circle, optionally tagged by the group word whose
/// attracting fixed point it is.
#[derive(Debug, Clone, PartialEq)]
pub struct BoundaryPoint {
    pub angle: f64,
    pub tag: Option<String>,
}

impl BoundaryPoint {
    pub fn at(angle: f64) -> Self {
        BoundaryPoint { angle: normalize_angle(angle), tag: None }
    }

    pub fn tagged(angle: f64, tag: &str) -> Self {
        BoundaryPoint { angle: normalize_angle(angle), tag: Some(tag.to_string()) }
    }
}

/// The isotropic vector (cos t, sin t, 1, 0, ..., 0).
pub fn circle_vector(dim: usize, theta: f64) -> FormVector {
    let mut c = alloc::vec![0.0; dim];
    c[0] = real::cos(theta);
    c[1] = real::sin(theta);
    c[2] = 1.0;
    FormVector::new(c).expect("circle vector")
}

/// Angle of an isotropic ray lying on the standard circle (third coordinate
/// block trivial): atan2 of the renormalized positive part.
pub fn circle_angle(ray: &FormVector) -> Result<f64> {
    let c = ray.coords();
    if c[2].abs() < 1e-12 {
        return Err(Error::ChartDegenerate);
    }
    for &extra in &c[3..] {
        if extra.abs() > 1e-7 * c[2].abs() {
            return Err(Error::InvalidInput("ray is not on the standard circle"));
        }
    }
    Ok(normalize_angle(real::atan2(c[1] / c[2], c[0] / c[2])))
}

// ---------------------------------------------------------------------------
// Providers
// ---------------------------------------------------------------------------

#[cfg(feature = "std")]
#[derive(Default)]
struct RayCache(std::sync::Mutex<alloc::collections::BTreeMap<String, (f64, IsotropicRay)>>);

#[cfg(not(feature = "std"))]
#[derive(Default)]
struct RayCache;

impl core::fmt::Debug for RayCache {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str("RayCache")
    }
}

impl Clone for RayCache {
    fn clone(&self) -> Self {
        RayCache::default()
    }
}

impl RayCache {
    #[cfg(feature = "std")]
    fn get(&self, key: &str) -> Option<(f64, IsotropicRay)> {
        self.0.lock().ok().and_then(|m| m.get(key).cloned())
    }

    #[cfg(feature = "std")]
    fn put(&self, key: String, value: (f64, IsotropicRay)) {
        if let Ok(mut m) = self.0.lock() {
            m.entry(key).or_insert(value);
        }
    }

    #[cfg(not(feature = "std"))]
    fn get(&self, _key: &str) -> Option<(f64, IsotropicRay)> {
        None
    }

    #[cfg(not(feature = "std"))]
    fn put(&self, _key: String, _value: (f64, IsotropicRay)) {}
}

/// Evaluates the equivariant limit map at tagged boundary points.
#[derive(Debug, Clone)]
pub enum BoundaryMapProvider {
    /// `xi(theta) = g (cos theta, sin theta, 1, 0, ..., 0)`. The optional
    /// representation (with generators conjugated the same way) makes word
    /// actions available.
    FuchsianCircle { conjugator: AmbientIsometry, rep: Option<GroupRep> },
    /// Rays are attracting fixed rays of word holonomies; angles come from
    /// the reference (Fuchsian) representation with the same marking.
    FixedPointTable { rep: GroupRep, reference: GroupRep, cache: RayCacheHandle },
}

/// Shared handle so providers stay cloneable; the cache is an idempotent
/// map (same key always receives the same value).
#[derive(Debug, Clone, Default)]
pub struct RayCacheHandle(alloc::sync::Arc<RayCache>);

impl BoundaryMapProvider {
    pub fn fuchsian(dim: usize) -> Self {
        BoundaryMapProvider::FuchsianCircle {
            conjugator: AmbientIsometry::identity(dim),
            rep: None,
        }
    }

    pub fn fuchsian_conjugated(conjugator: AmbientIsometry) -> Self {
        BoundaryMapProvider::FuchsianCircle { conjugator, rep: None }
    }

    pub fn fuchsian_with_rep(conjugator: AmbientIsometry, rep: GroupRep) -> Self {
        BoundaryMapProvider::FuchsianCircle { conjugator, rep: Some(rep) }
    }

    pub fn table(rep: GroupRep, reference: GroupRep) -> Self {
        BoundaryMapProvider::FixedPointTable { rep, reference, cache: RayCacheHandle::default() }
    }

    pub fn dim(&self) -> usize {
        match self {
            BoundaryMapProvider::FuchsianCircle { conjugator, .. } => conjugator.dim(),
            BoundaryMapProvider::FixedPointTable { rep, .. } => rep.dim(),
        }
    }

    /// The representation whose words act on the circle, when available.
    pub fn rep(&self) -> Option<&GroupRep> {
        match self {
            BoundaryMapProvider::FuchsianCircle { rep, .. } => rep.as_ref(),
            BoundaryMapProvider::FixedPointTable { rep, .. } => Some(rep),
        }
    }

    /// Reference representation used for angles.
    fn angle_rep(&self) -> Option<&GroupRep> {
        match self {
            BoundaryMapProvider::FuchsianCircle { rep, .. } => rep.as_ref(),
            BoundaryMapProvider::FixedPointTable { reference, .. } => Some(reference),
        }
    }

    /// Holonomy of a word.
    pub fn holonomy(&self, w: &Word) -> Result<AmbientIsometry> {
        let rep = self.rep().ok_or(Error::InvalidInput("provider carries no representation"))?;
        Ok(rep.evaluate(w))
    }

    /// Evaluate the limit map at a boundary point.
    pub fn xi(&self, p: &BoundaryPoint) -> Result<IsotropicRay> {
        match self {
            BoundaryMapProvider::FuchsianCircle { conjugator, .. } => {
                let v = conjugator.apply(&circle_vector(conjugator.dim(), p.angle));
                IsotropicRay::new(v)
            }
            BoundaryMapProvider::FixedPointTable { rep, cache, .. } => {
                let tag = p
                    .tag
                    .as_ref()
                    .ok_or_else(|| Error::UnresolvableEndpoint("<untagged>".into()))?;
                if let Some((_, ray)) = cache.0.get(tag) {
                    return Ok(ray);
                }
                let word = rep.parse(tag)?.reduced();
                let data =
                    crate::form::classify_loxodromic(&rep.evaluate(&word)).expect_loxodromic()?;
                let ray = data.attracting;
                let angle = self.reference_angle(&word)?;
                cache.0.put(tag.clone(), (angle, ray.clone()));
                Ok(ray)
            }
        }
    }

    /// Attracting-fixed-point angle of a word in the reference structure.
    fn reference_angle(&self, w: &Word) -> Result<f64> {
        let reference = self
            .angle_rep()
            .ok_or(Error::InvalidInput("provider carries no reference representation"))?;
        let data = crate::form::classify_loxodromic(&reference.evaluate(w)).expect_loxodromic()?;
        circle_angle(data.attracting.rep())
    }

    /// The boundary point at the attracting fixed point of a word.
    pub fn point_for_word(&self, w: &Word) -> Result<BoundaryPoint> {
        let rep = self.rep().ok_or(Error::InvalidInput("provider carries no representation"))?;
        let word = w.reduced();
        let angle = self.reference_angle(&word)?;
        Ok(BoundaryPoint { angle, tag: Some(rep.format(&word)) })
    }

    /// Action of a word on a boundary point. Tagged points map to the fixed
    /// point of the conjugated word; untagged (Fuchsian-circle) points map
    /// through the matrix action on the circle.
    pub fn act(&self, gamma: &Word, p: &BoundaryPoint) -> Result<BoundaryPoint> {
        match self {
            BoundaryMapProvider::FuchsianCircle { conjugator, rep } => {
                let rep =
                    rep.as_ref().ok_or(Error::InvalidInput("provider carries no representation"))?;
                let m = rep.evaluate(gamma);
                // Pull back through the conjugator, act, and read the angle.
                let v = conjugator
                    .inverse()
                    .apply(&m.apply(&conjugator.apply(&circle_vector(m.dim(), p.angle))));
                Ok(BoundaryPoint { angle: circle_angle(&v)?, tag: p.tag.clone() })
            }
            BoundaryMapProvider::FixedPointTable { rep, .. } => {
                let tag = p
                    .tag
                    .as_ref()
                    .ok_or_else(|| Error::UnresolvableEndpoint("<untagged>".into()))?;
                let w = rep.parse(tag)?;
                let conj = gamma.concat(&w).concat(&gamma.inverse()).reduced();
                self.point_for_word(&conj)
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Sgn and cross ratios
// ---------------------------------------------------------------------------

fn chord(a: f64, b: f64) -> f64 {
    real::sin((a - b) / 2.0)
}

/// Check the standing precondition of 4-tuples: u != z and v != w.
fn check_quadruple(u: &BoundaryPoint, v: &BoundaryPoint, w: &BoundaryPoint, z: &BoundaryPoint) -> Result<()> {
    if angle_eq(u.angle, z.angle) || angle_eq(v.angle, w.angle) {
        return Err(Error::InvalidInput("quadruple requires u != z and v != w"));
    }
    Ok(())
}

/// The sign of the projective cross ratio of the four boundary angles,
/// independent of the chart used to compute it; zero exactly when u = w or
/// v = z.
pub fn sgn(u: &BoundaryPoint, v: &BoundaryPoint, w: &BoundaryPoint, z: &BoundaryPoint) -> Result<i8> {
    check_quadruple(u, v, w, z)?;
    if angle_eq(u.angle, w.angle) || angle_eq(v.angle, z.angle) {
        return Ok(0);
    }
    let val = chord(u.angle, w.angle) * chord(v.angle, z.angle)
        / (chord(u.angle, z.angle) * chord(v.angle, w.angle));
    Ok(if val > 0.0 { 1 } else { -1 })
}

/// A signed cross-ratio value.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CrossRatioValue {
    pub value: f64,
    pub sign_factor: i8,
}

impl CrossRatioValue {
    fn new(value: f64, sign_factor: i8) -> Self {
        CrossRatioValue { value, sign_factor }
    }
}

/// The hyperbolic (projective) cross ratio of the four angles, computed in
/// the pole-free chord chart; agrees with the tan-half-angle chart wherever
/// the latter is finite.
pub fn cross_ratio_hyperbolic(
    u: &BoundaryPoint,
    v: &BoundaryPoint,
    w: &BoundaryPoint,
    z: &BoundaryPoint,
) -> Result<CrossRatioValue> {
    check_quadruple(u, v, w, z)?;
    if angle_eq(u.angle, w.angle) || angle_eq(v.angle, z.angle) {
        return Ok(CrossRatioValue::new(0.0, 0));
    }
    let val = chord(u.angle, w.angle) * chord(v.angle, z.angle)
        / (chord(u.angle, z.angle) * chord(v.angle, w.angle));
    Ok(CrossRatioValue::new(val, if val > 0.0 { 1 } else { -1 }))
}

/// The cross ratio of a representation on resolvable boundary points.
pub fn cross_ratio_rho(
    provider: &BoundaryMapProvider,
    u: &BoundaryPoint,
    v: &BoundaryPoint,
    w: &BoundaryPoint,
    z: &BoundaryPoint,
) -> Result<CrossRatioValue> {
    check_quadruple(u, v, w, z)?;
    let sign = sgn(u, v, w, z)?;
    if sign == 0 {
        return Ok(CrossRatioValue::new(0.0, 0));
    }
    let (xu, xv, xw, xz) = (provider.xi(u)?, provider.xi(v)?, provider.xi(w)?, provider.xi(z)?);
    let value = cross_ratio_from_rays(&xu, &xv, &xw, &xz)?;
    Ok(CrossRatioValue::new(sign as f64 * value, sign))
}

/// |beta| from the rays alone: `sqrt((<u,w><v,z>) / (<u,z><v,w>))`, with the
/// transversality and radicand-consistency gates.
pub fn cross_ratio_from_rays(
    u: &IsotropicRay,
    v: &IsotropicRay,
    w: &IsotropicRay,
    z: &IsotropicRay,
) -> Result<f64> {
    let uw = u.inner(w);
    let vz = v.inner(z);
    let uz = u.inner(z);
    let vw = v.inner(w);
    if uz.abs() < 1e-14 || vw.abs() < 1e-14 {
        return Err(Error::TransversalityFailure { product: if uz.abs() < vw.abs() { uz } else { vw } });
    }
    let radicand = (uw * vz) / (uz * vw);
    if radicand < -1e-12 {
        return Err(Error::NegativeRadicand { value: radicand });
    }
    Ok(real::sqrt(radicand.max(0.0)))
}

// ---------------------------------------------------------------------------
// Periods
// ---------------------------------------------------------------------------

/// `L_beta(gamma) = log |beta(gamma+, gamma-, x, gamma x)|` for a loxodromic
/// holonomy; by the cross-ratio symmetries the value is independent of the
/// auxiliary point x and equals the logarithm of the leading eigenvalue
/// modulus.
pub fn period(
    provider: &BoundaryMapProvider,
    holonomy: &AmbientIsometry,
    x: &BoundaryPoint,
) -> Result<f64> {
    let data = crate::form::classify_loxodromic(holonomy).expect_loxodromic()?;
    let xx = provider.xi(x)?;
    if xx.same_ray(&data.attracting, 1e-9) || xx.same_ray(&data.repelling, 1e-9) {
        return Err(Error::InvalidInput("auxiliary point coincides with a fixed point"));
    }
    let gx = IsotropicRay::new(holonomy.apply(xx.rep()))?;
    let value = cross_ratio_from_rays(&data.attracting, &data.repelling, &xx, &gx)?;
    if value == 0.0 {
        return Err(Error::LogOfZero);
    }
    Ok(real::ln(value).abs())
}

// ---------------------------------------------------------------------------
// Style conversions
// ---------------------------------------------------------------------------

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CrossRatioStyle {
    Ledrappier,
    Hamenstadt,
    LabourieReindex,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Converted {
    Value(f64),
    /// Argument permutation as indices into (u, v, w, z).
    Permutation([usize; 4]),
}

/// Convert a cross-ratio value to another convention from the literature.
pub fn convert(value: &CrossRatioValue, style: CrossRatioStyle) -> Result<Converted> {
    match style {
        CrossRatioStyle::Ledrappier => {
            if value.value == 0.0 {
                return Err(Error::LogOfZero);
            }
            Ok(Converted::Value(real::ln(value.value.abs())))
        }
        CrossRatioStyle::Hamenstadt => Ok(Converted::Value(value.value.abs())),
        CrossRatioStyle::LabourieReindex => Ok(Converted::Permutation([0, 2, 1, 3])),
    }
}

// ---------------------------------------------------------------------------
// Local boundedness probe
// ---------------------------------------------------------------------------

/// Result of the local-boundedness sampling probe.
#[derive(Debug, Clone)]
pub struct BoundednessReport {
    pub c_hat: f64,
    pub alpha_hat: f64,
    pub worst_ratio: f64,
    pub worst_pair: [f64; 4],
    pub samples: usize,
}

/// Distance between the disjoint geodesics (b, c) and (a, d) of a nested
/// angle quadruple a < b < c < d, through the tan-half chart and the
/// half-plane distance formula.
pub fn nested_pair_distance(a: f64, b: f64, c: f64, d: f64) -> Result<f64> {
    // Rotate so none of the four points sits at the chart pole (theta = pi).
    let mut offset = 0.0;
    'search: for k in 0..8 {
        offset = k as f64 * 0.39269908169872414; // pi/8
        for &t in &[a, b, c, d] {
            if angle_diff(t + offset, core::f64::consts::PI).abs() < 1e-3 {
                continue 'search;
            }
        }
        break;
    }
    let phi = |t: f64| real::tan(normalize_angle(t + offset) / 2.0);
    // Send the inner geodesic to (0, infinity).
    let (pb, pc) = (phi(b), phi(c));
    let t = |x: f64| (x - pb) / (x - pc);
    let (u1, u2) = (t(phi(a)), t(phi(d)));
    if u1 * u2 <= 0.0 {
        return Err(Error::InvalidInput("quadruple is not nested"));
    }
    let cosh_d = (u1 + u2).abs() / (u2 - u1).abs();
    Ok(real::acosh(cosh_d.max(1.0)))
}

/// Sample coherently oriented nested geodesic pairs from the pool, compare
/// `|log beta_rho|` against `|log beta_X|` and fit the power law
/// `|log beta_rho| <= C |log beta_X|^alpha` by log-log regression.
pub fn local_boundedness_probe<R: Rng>(
    provider: &BoundaryMapProvider,
    pool: &[BoundaryPoint],
    d_max: f64,
    samples: usize,
    rng: &mut R,
) -> Result<BoundednessReport> {
    if d_max <= 0.0 {
        return Err(Error::InvalidInput("distance bound must be positive"));
    }
    if pool.len() < 4 {
        return Err(Error::InvalidInput("pool too small"));
    }
    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    let mut worst_ratio = 0.0_f64;
    let mut worst_pair = [0.0; 4];
    let mut tries = 0usize;
    while xs.len() < samples && tries < samples * 50 {
        tries += 1;
        // Four distinct pool indices, sorted by angle into a < b < c < d.
        let mut idx = [0usize; 4];
        for slot in idx.iter_mut() {
            *slot = rng.random_range(0..pool.len());
        }
        let mut pts: Vec<&BoundaryPoint> = idx.iter().map(|&i| &pool[i]).collect();
        pts.sort_by(|p, q| p.angle.partial_cmp(&q.angle).unwrap());
        if (0..3).any(|i| angle_eq(pts[i].angle, pts[i + 1].angle)) {
            continue;
        }
        let (a, b, c, d) = (pts[0], pts[1], pts[2], pts[3]);
        let dist = match nested_pair_distance(a.angle, b.angle, c.angle, d.angle) {
            Ok(x) => x,
            Err(_) => continue,
        };
        if dist <= 0.0 || dist > d_max {
            continue;
        }
        // Coherently oriented pair: (h+, l+, l-, h-) = (a, b, c, d).
        let bx = cross_ratio_hyperbolic(a, b, c, d)?.value;
        let brho = match cross_ratio_rho(provider, a, b, c, d) {
            Ok(v) => v.value,
            Err(_) => continue,
        };
        let lx = real::ln(bx.abs());
        let lr = real::ln(brho.abs());
        if lx.abs() < 1e-14 || lr.abs() < 1e-300 {
            continue;
        }
        let ratio = lr.abs() / lx.abs();
        if ratio > worst_ratio {
            worst_ratio = ratio;
            worst_pair = [a.angle, b.angle, c.angle, d.angle];
        }
        xs.push(real::ln(lx.abs()));
        ys.push(real::ln(lr.abs()));
    }
    if xs.len() < 8 {
        return Err(Error::InvalidInput("insufficient admissible samples"));
    }
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut var = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        cov += (x - mx) * (y - my);
        var += (x - mx) * (x - mx);
    }
    let alpha_hat = if var > 0.0 { cov / var } else { 1.0 };
    let mut c_hat: f64 = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        c_hat = c_hat.max(real::exp(y - alpha_hat * x));
    }
    Ok(BoundednessReport { c_hat, alpha_hat, worst_ratio, worst_pair, samples: xs.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    fn bp(t: f64) -> BoundaryPoint {
        BoundaryPoint::at(t)
    }

    #[test]
    fn sgn_examples() {
        // Cyclically ordered quadruple has positive sign.
        assert_eq!(
            sgn(&bp(PI / 2.0), &bp(PI), &bp(3.0 * PI / 2.0), &bp(0.0)).unwrap(),
            1
        );
        // Degenerate u = w.
        assert_eq!(sgn(&bp(0.3), &bp(1.0), &bp(0.3), &bp(2.0)).unwrap(), 0);
        // Swapping w and z inverts the value, so the sign flips accordingly
        // for this configuration.
        let plus = cross_ratio_hyperbolic(&bp(PI / 2.0), &bp(PI), &bp(3.0 * PI / 2.0), &bp(0.0))
            .unwrap()
            .value;
        let swapped =
            cross_ratio_hyperbolic(&bp(PI / 2.0), &bp(PI), &bp(0.0), &bp(3.0 * PI / 2.0))
                .unwrap()
                .value;
        assert!((plus * swapped - 1.0).abs() < 1e-12);
        // Agreement with the tan-half chart away from its pole.
        let quad = [0.3, 1.1, 2.9, 5.2];
        let phi = |t: f64| (t / 2.0).tan();
        let chart = (phi(quad[0]) - phi(quad[2])) * (phi(quad[1]) - phi(quad[3]))
            / ((phi(quad[0]) - phi(quad[3])) * (phi(quad[1]) - phi(quad[2])));
        let here = cross_ratio_hyperbolic(&bp(quad[0]), &bp(quad[1]), &bp(quad[2]), &bp(quad[3]))
            .unwrap()
            .value;
        assert!((chart - here).abs() < 1e-10);
    }

    #[test]
    fn standard_quadruple_value_is_two() {
        let v = cross_ratio_hyperbolic(&bp(PI / 2.0), &bp(PI), &bp(3.0 * PI / 2.0), &bp(0.0))
            .unwrap();
        assert!((v.value - 2.0).abs() < 1e-12);
        let provider = BoundaryMapProvider::fuchsian(4);
        let r = cross_ratio_rho(&provider, &bp(PI / 2.0), &bp(PI), &bp(3.0 * PI / 2.0), &bp(0.0))
            .unwrap();
        assert!((r.value - 2.0).abs() < 1e-12);
    }

    #[test]
    fn degenerate_pairs_give_one() {
        let provider = BoundaryMapProvider::fuchsian(4);
        let v = cross_ratio_rho(&provider, &bp(0.4), &bp(0.4), &bp(2.0), &bp(3.0)).unwrap();
        assert!((v.value - 1.0).abs() < 1e-12);
    }

    #[test]
    fn normalized_configuration_value() {
        // xi(u) = e2+e3, xi(v) = -e1+e3, xi(w) = -e2+e3, xi(z) = e1+e3 is the
        // circle at angles (pi/2, pi, 3pi/2, 0); the value is
        // sqrt((-2)(-2) / ((-1)(-1))) = 2.
        let u = IsotropicRay::new(circle_vector(4, PI / 2.0)).unwrap();
        let v = IsotropicRay::new(circle_vector(4, PI)).unwrap();
        let w = IsotropicRay::new(circle_vector(4, 3.0 * PI / 2.0)).unwrap();
        let z = IsotropicRay::new(circle_vector(4, 0.0)).unwrap();
        let val = cross_ratio_from_rays(&u, &v, &w, &z).unwrap();
        assert!((val - 2.0).abs() < 1e-12);
    }

    #[test]
    fn fuchsian_reduction_on_samples() {
        // With any conjugator, the representation cross ratio reduces to the
        // hyperbolic one.
        let g = crate::form::boost_along(
            &circle_vector(5, 0.3),
            &circle_vector(5, 0.3 + PI),
            0.8,
        )
        .unwrap();
        let provider = BoundaryMapProvider::fuchsian_conjugated(g);
        let mut state: u64 = 7;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            (state >> 11) as f64 / (1u64 << 53) as f64 * 2.0 * PI
        };
        for _ in 0..200 {
            let (u, v, w, z) = (bp(next()), bp(next()), bp(next()), bp(next()));
            if angle_eq(u.angle, z.angle) || angle_eq(v.angle, w.angle) {
                continue;
            }
            let bx = cross_ratio_hyperbolic(&u, &v, &w, &z).unwrap();
            let br = cross_ratio_rho(&provider, &u, &v, &w, &z).unwrap();
            assert!(
                (bx.value - br.value).abs() < 1e-9,
                "{} vs {}",
                bx.value,
                br.value
            );
        }
    }

    #[test]
    fn period_of_boost_is_its_length() {
        let l = 2.0_f64.ln();
        let a = circle_vector(4, 0.0);
        let b = circle_vector(4, PI);
        let m = crate::form::boost_along(&a, &b, l).unwrap();
        let provider = BoundaryMapProvider::fuchsian(4);
        let p1 = period(&provider, &m, &bp(PI / 2.0)).unwrap();
        assert!((p1 - l).abs() < 1e-10);
        // Independence of the auxiliary point.
        let p2 = period(&provider, &m, &bp(PI / 3.0)).unwrap();
        assert!((p1 - p2).abs() < 1e-10);
        // Inverse has the same period.
        let p3 = period(&provider, &m.inverse(), &bp(PI / 3.0)).unwrap();
        assert!((p1 - p3).abs() < 1e-10);
    }

    #[test]
    fn conversion_styles() {
        let v = CrossRatioValue { value: 2.0, sign_factor: 1 };
        assert_eq!(
            convert(&v, CrossRatioStyle::Ledrappier).unwrap(),
            Converted::Value(2.0_f64.ln())
        );
        assert_eq!(
            convert(&v, CrossRatioStyle::Hamenstadt).unwrap(),
            Converted::Value(2.0)
        );
        let neg = CrossRatioValue { value: -0.5, sign_factor: -1 };
        assert_eq!(
            convert(&neg, CrossRatioStyle::Hamenstadt).unwrap(),
            Converted::Value(0.5)
        );
        assert_eq!(
            convert(&neg, CrossRatioStyle::LabourieReindex).unwrap(),
            Converted::Permutation([0, 2, 1, 3])
        );
        let zero = CrossRatioValue { value: 0.0, sign_factor: 0 };
        assert!(convert(&zero, CrossRatioStyle::Ledrappier).is_err());
    }

    #[test]
    fn nested_distance_against_inversive_distance() {
        // Half-plane endpoints 0.5 < 1 < 3 < 9: the inner semicircle (1,3)
        // has center 2 radius 1, the outer (0.5,9) center 4.75 radius 4.25;
        // their inversive distance gives cosh d = 23/17.
        let ang = |x: f64| normalize_angle(2.0 * (x as f64).atan());
        let got = nested_pair_distance(ang(0.5), ang(1.0), ang(3.0), ang(9.0)).unwrap();
        let want = (23.0_f64 / 17.0).acosh();
        assert!((got - want).abs() < 1e-12, "got {got} want {want}");
    }

    #[test]
    fn probe_on_fuchsian_is_identity_power_law() {
        use rand::SeedableRng;
        let provider = BoundaryMapProvider::fuchsian(4);
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(11);
        let pool: Vec<BoundaryPoint> = (0..64)
            .map(|k| bp(2.0 * PI * (k as f64 + 0.13) / 64.0))
            .collect();
        let report = local_boundedness_probe(&provider, &pool, 2.0, 400, &mut rng).unwrap();
        assert!((report.alpha_hat - 1.0).abs() < 0.1, "alpha {}", report.alpha_hat);
        assert!((report.c_hat - 1.0).abs() < 0.1, "c {}", report.c_hat);
        assert!((report.worst_ratio - 1.0).abs() < 1e-6);
    }
}
