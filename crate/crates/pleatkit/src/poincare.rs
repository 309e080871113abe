//! The product model D^2 x S^n of the double cover.
//!
//! A chart is determined by a spacelike 2-plane E; the model map is
//! `Psi(u,v) = (2/(1-|u|^2)) u + ((1+|u|^2)/(1-|u|^2)) v` with boundary
//! extension `u + v` on |u| = 1. Causality of pairs becomes a comparison of
//! the hemispherical distance on the disk with the spherical distance on the
//! fiber, which is what makes acausal sets graphs of strictly 1-Lipschitz
//! functions.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::form::{
    self, enorm, ip, vaxpy, vscale, AmbientIsometry, FormVector, HPoint, IsotropicRay,
    SegmentClass, SegmentModel,
};
use crate::real;
use crate::tol;

/// A chart of the product model: an orthonormalized spacelike 2-plane and an
/// orthonormalized basis of its negative-definite complement.
#[derive(Debug, Clone)]
pub struct PoincareChart {
    /// Two vectors with <e_i, e_j> = delta_ij.
    e_basis: [FormVector; 2],
    /// n+1 vectors with <q_i, q_j> = -delta_ij.
    complement: Vec<FormVector>,
}

impl PoincareChart {
    /// Build the chart from two independent spacelike vectors spanning E,
    /// Gram-Schmidt orthonormalized with the ambient form; the complement
    /// basis comes from projecting the coordinate axes.
    pub fn new(span1: &FormVector, span2: &FormVector) -> Result<Self> {
        if span1.dim() != span2.dim() {
            return Err(Error::DimensionMismatch { expected: span1.dim(), got: span2.dim() });
        }
        let dim = span1.dim();
        let q1 = span1.inner(span1);
        if q1 <= 0.0 {
            return Err(Error::InvalidInput("chart plane vector is not spacelike"));
        }
        let f1 = span1.scale(1.0 / real::sqrt(q1));
        let raw2 = span2.sub(&f1.scale(span2.inner(&f1)));
        let q2 = raw2.inner(&raw2);
        if q2 <= 1e-12 {
            return Err(Error::InvalidInput("chart plane is degenerate"));
        }
        let f2 = raw2.scale(1.0 / real::sqrt(q2));
        // Complement by form-orthogonal projection of the coordinate axes.
        let mut complement: Vec<FormVector> = Vec::new();
        for i in 0..dim {
            let e = form::basis(dim, i);
            let mut w = e
                .sub(&f1.scale(e.inner(&f1)))
                .add(&f2.scale(-e.inner(&f2)));
            // Subtract components along the complement vectors found so far
            // (all negative-definite directions).
            for q in &complement {
                w = w.add(&q.scale(-(-w.inner(q))));
            }
            let norm = -w.inner(&w);
            if norm > 1e-10 {
                complement.push(w.scale(1.0 / real::sqrt(norm)));
            }
            if complement.len() == dim - 2 {
                break;
            }
        }
        if complement.len() != dim - 2 {
            return Err(Error::InvalidInput("failed to complete the chart complement"));
        }
        Ok(PoincareChart { e_basis: [f1, f2], complement })
    }

    /// The chart with E = span{e1, e2}.
    pub fn standard(dim: usize) -> Self {
        PoincareChart::new(&form::basis(dim, 0), &form::basis(dim, 1))
            .expect("standard chart is well defined")
    }

    pub fn dim(&self) -> usize {
        self.e_basis[0].dim()
    }

    /// Disk and fiber coordinates of an ambient vector: the pair of E-
    /// coefficients and the complement coefficients.
    fn split(&self, x: &FormVector) -> ([f64; 2], Vec<f64>) {
        let p = [x.inner(&self.e_basis[0]), x.inner(&self.e_basis[1])];
        let w: Vec<f64> = self.complement.iter().map(|q| -x.inner(q)).collect();
        (p, w)
    }

    fn assemble(&self, p: &[f64; 2], w: &[f64]) -> FormVector {
        let mut coords = vscale(self.e_basis[0].coords(), p[0]);
        coords = vaxpy(&coords, p[1], self.e_basis[1].coords());
        for (c, q) in w.iter().zip(&self.complement) {
            coords = vaxpy(&coords, *c, q.coords());
        }
        FormVector::new(coords).expect("assembled chart vector")
    }
}

/// A point of the product model: disk coordinates `u` with |u| < 1 (or = 1
/// on the boundary) and a unit fiber vector `v`.
#[derive(Debug, Clone, PartialEq)]
pub struct DiskSpherePoint {
    pub u: [f64; 2],
    pub v: Vec<f64>,
}

impl DiskSpherePoint {
    pub fn new(u: [f64; 2], v: Vec<f64>) -> Result<Self> {
        let ru = real::hypot(u[0], u[1]);
        if ru > 1.0 + tol::TOL_POINT {
            return Err(Error::InvalidInput("disk coordinate outside the closed disk"));
        }
        let rv = enorm(&v);
        if (rv - 1.0).abs() > 1e-9 {
            return Err(Error::InvalidInput("fiber coordinate is not unit"));
        }
        Ok(DiskSpherePoint { u, v: vscale(&v, 1.0 / rv) })
    }

    pub fn is_boundary(&self) -> bool {
        (real::hypot(self.u[0], self.u[1]) - 1.0).abs() <= tol::TOL_POINT.max(1e-12)
    }
}

/// Either endpoint type of the extended model map.
#[derive(Debug, Clone)]
pub enum ModelInput {
    Interior(HPoint),
    Boundary(IsotropicRay),
}

/// Invert the model map on an interior point or a boundary ray.
pub fn to_model(x: &ModelInput, chart: &PoincareChart) -> Result<DiskSpherePoint> {
    match x {
        ModelInput::Interior(pt) => {
            let (p, w) = chart.split(pt.rep());
            let mu = enorm(&w);
            if mu < 1e-12 {
                return Err(Error::ChartDegenerate);
            }
            // mu = (1+|u|^2)/(1-|u|^2) >= 1 and the disk factor is p/(1+mu).
            let u = [p[0] / (1.0 + mu), p[1] / (1.0 + mu)];
            DiskSpherePoint::new(u, vscale(&w, 1.0 / mu))
        }
        ModelInput::Boundary(ray) => {
            let (p, w) = chart.split(ray.rep());
            let np = real::hypot(p[0], p[1]);
            let nw = enorm(&w);
            if nw < 1e-12 || np < 1e-12 {
                return Err(Error::ChartDegenerate);
            }
            DiskSpherePoint::new([p[0] / np, p[1] / np], vscale(&w, 1.0 / nw))
        }
    }
}

/// Evaluate the model map (or its boundary extension).
pub fn from_model(p: &DiskSpherePoint, chart: &PoincareChart) -> Result<ModelInput> {
    let r2 = p.u[0] * p.u[0] + p.u[1] * p.u[1];
    if p.is_boundary() {
        let coords = chart.assemble(&p.u, &p.v);
        Ok(ModelInput::Boundary(IsotropicRay::new(coords)?))
    } else {
        let a = 2.0 / (1.0 - r2);
        let b = (1.0 + r2) / (1.0 - r2);
        let coords = chart.assemble(&[a * p.u[0], a * p.u[1]], &vscale(&p.v, b));
        Ok(ModelInput::Interior(HPoint::new(coords)?))
    }
}

/// Spherical distance on the fiber.
pub fn sphere_distance(v: &[f64], w: &[f64]) -> f64 {
    let c = v.iter().zip(w).map(|(a, b)| a * b).sum::<f64>();
    real::acos(c.clamp(-1.0, 1.0))
}

/// Hemispherical distance on the closed disk:
/// `cos d = (2/(1+|u|^2))(2/(1+|u'|^2)) <u,u'> + ((1-|u|^2)(1-|u'|^2)) / ((1+|u|^2)(1+|u'|^2))`.
pub fn hemisphere_distance(u: &[f64; 2], w: &[f64; 2]) -> f64 {
    let ru = u[0] * u[0] + u[1] * u[1];
    let rw = w[0] * w[0] + w[1] * w[1];
    let dot = u[0] * w[0] + u[1] * w[1];
    let c = (2.0 / (1.0 + ru)) * (2.0 / (1.0 + rw)) * dot
        + ((1.0 - ru) / (1.0 + ru)) * ((1.0 - rw) / (1.0 + rw));
    real::acos(c.clamp(-1.0, 1.0))
}

/// Hyperbolic distance on the open disk.
pub fn disk_hyperbolic_distance(u: &[f64; 2], w: &[f64; 2]) -> f64 {
    let ru = u[0] * u[0] + u[1] * u[1];
    let rw = w[0] * w[0] + w[1] * w[1];
    let dot = u[0] * w[0] + u[1] * w[1];
    let c = -(2.0 / (1.0 - ru)) * (2.0 / (1.0 - rw)) * dot
        + ((1.0 + ru) / (1.0 - ru)) * ((1.0 + rw) / (1.0 - rw));
    real::acosh(c.max(1.0))
}

/// Causal class of a pair of model points: spacelike iff the fiber moves
/// strictly less than the base in the spherical metrics.
pub fn model_causality(p: &DiskSpherePoint, q: &DiskSpherePoint) -> SegmentClass {
    let db = hemisphere_distance(&p.u, &q.u);
    let df = sphere_distance(&p.v, &q.v);
    if (df - db).abs() < tol::TOL_CLASS {
        SegmentClass::Lightlike
    } else if df < db {
        SegmentClass::Spacelike
    } else {
        SegmentClass::Timelike
    }
}

/// Outcome of the graph/Lipschitz diagnostic.
#[derive(Debug, Clone)]
pub enum GraphReport {
    /// All pairs satisfy the strict inequality; `margin` is the smallest gap
    /// `d_base - d_fiber` over all pairs.
    Ok { margin: f64 },
    /// Some pair violates injectivity or the strict 1-Lipschitz property.
    Violation { pair: (usize, usize), gap: f64 },
}

impl GraphReport {
    pub fn is_ok(&self) -> bool {
        matches!(self, GraphReport::Ok { .. })
    }
}

/// Check that the point set projects injectively to the disk and that the
/// fiber component is a strictly 1-Lipschitz function of the base.
pub fn graph_lipschitz_report(points: &[DiskSpherePoint]) -> Result<GraphReport> {
    if points.len() < 2 {
        return Err(Error::InvalidInput("need at least two points"));
    }
    let mut margin = f64::INFINITY;
    for i in 0..points.len() {
        for j in i + 1..points.len() {
            let db = hemisphere_distance(&points[i].u, &points[j].u);
            let df = sphere_distance(&points[i].v, &points[j].v);
            if db < tol::TOL_ANGLE && df > tol::TOL_CLASS {
                return Ok(GraphReport::Violation { pair: (i, j), gap: df - db });
            }
            let gap = db - df;
            if gap <= 0.0 {
                return Ok(GraphReport::Violation { pair: (i, j), gap });
            }
            margin = margin.min(gap);
        }
    }
    Ok(GraphReport::Ok { margin })
}

/// Both distances of the comparison `d_H2(u, u') >= d(x, x')` for a
/// spacelike pair; equality holds exactly when the fiber components agree.
pub fn hyperbolic_comparison(
    p: &DiskSpherePoint,
    q: &DiskSpherePoint,
    chart: &PoincareChart,
) -> Result<(f64, f64)> {
    let x = match from_model(p, chart)? {
        ModelInput::Interior(pt) => pt,
        ModelInput::Boundary(_) => return Err(Error::InvalidInput("boundary point")),
    };
    let y = match from_model(q, chart)? {
        ModelInput::Interior(pt) => pt,
        ModelInput::Boundary(_) => return Err(Error::InvalidInput("boundary point")),
    };
    let d_pseudo = crate::form::pseudo_distance(&x, &y)?;
    let d_disk = disk_hyperbolic_distance(&p.u, &q.u);
    Ok((d_disk, d_pseudo))
}

/// Signed value of the diameter functional `sin(theta) u_1 - cos(theta) u_2`
/// on the disk projection of an ambient point; the diameter at angle `theta`
/// is its zero set.
pub fn diameter_functional(x: &HPoint, chart: &PoincareChart, theta: f64) -> Result<f64> {
    let m = to_model(&ModelInput::Interior(x.clone()), chart)?;
    Ok(real::sin(theta) * m.u[0] - real::cos(theta) * m.u[1])
}

/// Count sign changes of the diameter functional along sampled parameters of
/// a spacelike line. Acausality predicts at most one for lines that are not
/// the diameter itself.
pub fn diameter_crossings(
    a: &FormVector,
    b: &FormVector,
    chart: &PoincareChart,
    theta: f64,
    samples: usize,
) -> Result<usize> {
    let mut crossings = 0usize;
    let mut last: Option<f64> = None;
    for k in 0..samples {
        let t = -6.0 + 12.0 * (k as f64) / (samples.max(2) - 1) as f64;
        let pt = form::spacelike_line_point(a, b, t)?;
        let val = diameter_functional(&pt, chart, theta)?;
        if let Some(prev) = last {
            if prev.signum() != val.signum() && prev != 0.0 && val != 0.0 {
                crossings += 1;
            }
        }
        last = Some(val);
    }
    Ok(crossings)
}

/// Apply an isometry to the ambient object behind a model point (used by the
/// chart-covariance checks).
pub fn transport(
    p: &DiskSpherePoint,
    g: &AmbientIsometry,
    chart: &PoincareChart,
) -> Result<DiskSpherePoint> {
    match from_model(p, chart)? {
        ModelInput::Interior(pt) => to_model(&ModelInput::Interior(g.apply_point(&pt)), chart),
        ModelInput::Boundary(r) => to_model(&ModelInput::Boundary(g.apply_ray(&r)), chart),
    }
}

/// Cross-check between model causality and the ambient classification.
pub fn causality_agrees(
    p: &DiskSpherePoint,
    q: &DiskSpherePoint,
    chart: &PoincareChart,
) -> Result<bool> {
    let mp = model_causality(p, q);
    let (xp, xq) = (from_model(p, chart)?, from_model(q, chart)?);
    let ambient = match (xp, xq) {
        (ModelInput::Interior(x), ModelInput::Interior(y)) => {
            match form::classify_segment(&x, &y, SegmentModel::Lift)? {
                // Pairs with <x,y> >= 1 are joined by no geodesic of the
                // double cover; causally they are exactly the non-spacelike
                // pairs the model labels timelike.
                SegmentClass::CoincidentOrAntipodal => SegmentClass::Timelike,
                other => other,
            }
        }
        (ModelInput::Interior(x), ModelInput::Boundary(r))
        | (ModelInput::Boundary(r), ModelInput::Interior(x)) => {
            // Mixed case: sign of <x, ray> decides (negative = spacelike).
            let prod = ip(x.rep().coords(), r.rep().coords());
            if prod.abs() < tol::TOL_CLASS {
                SegmentClass::Lightlike
            } else if prod < 0.0 {
                SegmentClass::Spacelike
            } else {
                SegmentClass::Timelike
            }
        }
        (ModelInput::Boundary(r), ModelInput::Boundary(s)) => {
            let prod = ip(r.rep().coords(), s.rep().coords());
            if prod.abs() < tol::TOL_CLASS {
                SegmentClass::Lightlike
            } else if prod < 0.0 {
                SegmentClass::Spacelike
            } else {
                SegmentClass::Timelike
            }
        }
    };
    Ok(mp == ambient)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::form::basis;
    use alloc::vec;

    fn fv(c: &[f64]) -> FormVector {
        FormVector::new(c.to_vec()).unwrap()
    }

    #[test]
    fn chart_center_and_boundary() {
        let chart = PoincareChart::standard(4);
        let e3 = HPoint::new(fv(&[0.0, 0.0, 1.0, 0.0])).unwrap();
        let m = to_model(&ModelInput::Interior(e3.clone()), &chart).unwrap();
        assert!(m.u[0].abs() < 1e-14 && m.u[1].abs() < 1e-14);
        assert!((m.v[0] - 1.0).abs() < 1e-14);
        // Boundary ray e1 + e3 -> u = (1,0), v = e3 direction.
        let ray = IsotropicRay::new(fv(&[1.0, 0.0, 1.0, 0.0])).unwrap();
        let mb = to_model(&ModelInput::Boundary(ray), &chart).unwrap();
        assert!((mb.u[0] - 1.0).abs() < 1e-14 && mb.u[1].abs() < 1e-14);
        assert!((mb.v[0] - 1.0).abs() < 1e-14);
    }

    #[test]
    fn interior_point_has_hyperbolic_radius() {
        // cosh(1) e3 + sinh(1) e1 maps to disk radius tanh(1/2).
        let chart = PoincareChart::standard(4);
        let x = HPoint::new(fv(&[1.0_f64.sinh(), 0.0, 1.0_f64.cosh(), 0.0])).unwrap();
        let m = to_model(&ModelInput::Interior(x), &chart).unwrap();
        assert!((m.u[0] - 0.5_f64.tanh()).abs() < 1e-12);
        assert!(m.u[1].abs() < 1e-14);
    }

    #[test]
    fn roundtrip_interior_and_boundary() {
        let chart = PoincareChart::standard(5);
        let p = DiskSpherePoint::new([0.3, -0.4], vec![0.6, 0.8, 0.0]).unwrap();
        let x = from_model(&p, &chart).unwrap();
        let back = to_model(&x, &chart).unwrap();
        assert!((back.u[0] - p.u[0]).abs() < 1e-12);
        assert!((back.u[1] - p.u[1]).abs() < 1e-12);
        for (a, b) in back.v.iter().zip(&p.v) {
            assert!((a - b).abs() < 1e-12);
        }
        let pb = DiskSpherePoint::new([0.6, 0.8], vec![0.0, 1.0, 0.0]).unwrap();
        let xb = from_model(&pb, &chart).unwrap();
        let backb = to_model(&xb, &chart).unwrap();
        assert!((backb.u[0] - 0.6).abs() < 1e-12 && (backb.u[1] - 0.8).abs() < 1e-12);
    }

    #[test]
    fn model_causality_extremes() {
        // Same fiber, different base: spacelike.
        let p = DiskSpherePoint::new([0.1, 0.0], vec![1.0, 0.0]).unwrap();
        let q = DiskSpherePoint::new([-0.2, 0.3], vec![1.0, 0.0]).unwrap();
        assert_eq!(model_causality(&p, &q), SegmentClass::Spacelike);
        // Same base, different fiber: timelike.
        let r = DiskSpherePoint::new([0.1, 0.0], vec![0.8, 0.6]).unwrap();
        assert_eq!(model_causality(&p, &r), SegmentClass::Timelike);
    }

    #[test]
    fn model_causality_matches_ambient() {
        let chart = PoincareChart::standard(4);
        // Deterministic scattered sample.
        let mut state: u64 = 42;
        let mut next = || {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            ((state >> 11) as f64 / (1u64 << 53) as f64) * 2.0 - 1.0
        };
        let mut pts = Vec::new();
        for _ in 0..40 {
            let u = [0.7 * next(), 0.7 * next()];
            if u[0] * u[0] + u[1] * u[1] >= 0.98 {
                continue;
            }
            let ang = core::f64::consts::PI * next();
            let v = vec![ang.cos(), ang.sin()];
            pts.push(DiskSpherePoint::new(u, v).unwrap());
        }
        for i in 0..pts.len() {
            for j in i + 1..pts.len() {
                let db = hemisphere_distance(&pts[i].u, &pts[j].u);
                let df = sphere_distance(&pts[i].v, &pts[j].v);
                if (db - df).abs() < 1e-7 {
                    continue; // skip the tolerance band
                }
                assert!(causality_agrees(&pts[i], &pts[j], &chart).unwrap());
            }
        }
    }

    #[test]
    fn lightlike_band_engineered() {
        // Equal base and fiber distances force the ambient product to -1.
        let chart = PoincareChart::standard(4);
        let p = DiskSpherePoint::new([0.0, 0.0], vec![1.0, 0.0]).unwrap();
        // Choose u on a radius with hemispherical distance d, and rotate the
        // fiber by the same angle.
        let d = 0.8_f64;
        // Invert cos d = (2/(1+r^2)) * 0 ... for u = (x, 0) from the center:
        // cos d = (1 - x^2)/(1 + x^2)  =>  x = tan(d/2).
        let x = (d / 2.0).tan();
        let q = DiskSpherePoint::new([x, 0.0], vec![d.cos(), d.sin()]).unwrap();
        assert!((hemisphere_distance(&p.u, &q.u) - d).abs() < 1e-12);
        assert_eq!(model_causality(&p, &q), SegmentClass::Lightlike);
        let (xp, xq) = (from_model(&p, &chart).unwrap(), from_model(&q, &chart).unwrap());
        if let (ModelInput::Interior(a), ModelInput::Interior(b)) = (xp, xq) {
            assert!((a.inner(&b) + 1.0).abs() < 1e-12);
        } else {
            panic!("expected interior points");
        }
    }

    #[test]
    fn graph_report_on_spacelike_plane() {
        // Constant fiber: margin is the smallest base distance.
        let pts = vec![
            DiskSpherePoint::new([0.0, 0.0], vec![1.0, 0.0]).unwrap(),
            DiskSpherePoint::new([0.4, 0.1], vec![1.0, 0.0]).unwrap(),
            DiskSpherePoint::new([-0.3, 0.2], vec![1.0, 0.0]).unwrap(),
        ];
        match graph_lipschitz_report(&pts).unwrap() {
            GraphReport::Ok { margin } => assert!(margin > 0.0),
            GraphReport::Violation { .. } => panic!("expected ok"),
        }
        // A timelike pair violates.
        let bad = vec![
            DiskSpherePoint::new([0.1, 0.0], vec![1.0, 0.0]).unwrap(),
            DiskSpherePoint::new([0.1, 0.0], vec![0.0, 1.0]).unwrap(),
        ];
        assert!(!graph_lipschitz_report(&bad).unwrap().is_ok());
    }

    #[test]
    fn hyperbolic_comparison_cases() {
        let chart = PoincareChart::standard(4);
        // Same fiber: equality of the two distances.
        let p = DiskSpherePoint::new([0.0, 0.0], vec![1.0, 0.0]).unwrap();
        let q = DiskSpherePoint::new([0.5, 0.0], vec![1.0, 0.0]).unwrap();
        let (dh, dp) = hyperbolic_comparison(&p, &q, &chart).unwrap();
        assert!((dh - dp).abs() < 1e-10);
        // Different fiber on a spacelike pair: strict inequality.
        let r = DiskSpherePoint::new([0.5, 0.0], vec![0.9995_f64, (1.0 - 0.9995_f64 * 0.9995)
            .max(0.0)
            .sqrt()])
        .unwrap();
        let (dh2, dp2) = hyperbolic_comparison(&p, &r, &chart).unwrap();
        assert!(dh2 > dp2 + 1e-6);
    }

    #[test]
    fn spacelike_line_crosses_diameter_once() {
        let chart = PoincareChart::standard(4);
        let a = fv(&[1.0, 0.0, 1.0, 0.0]);
        let b = fv(&[0.0, 1.0, 1.0, 0.0]);
        for k in 0..8 {
            let theta = 0.37 + 0.4 * k as f64;
            let c = diameter_crossings(&a, &b, &chart, theta, 1000).unwrap();
            assert!(c <= 1, "line crossed diameter {theta} {c} times");
        }
    }

    #[test]
    fn chart_covariance_under_fiber_rotation() {
        // A rotation of the negative block fixes E setwise; causal labels
        // are unchanged.
        let chart = PoincareChart::standard(5);
        let theta: f64 = 0.6;
        let mut m = crate::mat::Mat::identity(5);
        m[(3, 3)] = theta.cos();
        m[(3, 4)] = -theta.sin();
        m[(4, 3)] = theta.sin();
        m[(4, 4)] = theta.cos();
        let g = crate::form::validate_isometry(m).unwrap();
        let p = DiskSpherePoint::new([0.2, 0.1], vec![1.0, 0.0, 0.0]).unwrap();
        let q = DiskSpherePoint::new([-0.1, 0.4], vec![0.8, 0.6, 0.0]).unwrap();
        let before = model_causality(&p, &q);
        let gp = transport(&p, &g, &chart).unwrap();
        let gq = transport(&q, &g, &chart).unwrap();
        assert_eq!(before, model_causality(&gp, &gq));
        let _ = basis(5, 0);
    }
}
