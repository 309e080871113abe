//! Finite leaved laminations on the boundary circle.
//!
//! A lamination here is a finite window into a (possibly infinitely
//! spiraling) lamination: leaves are chords of the circle between marked
//! angles, flagged closed leaves carry the spiral tails implicitly, and
//! "maximal" means every complementary region of the window's convex hull is
//! an ideal triangle. Faces incident to a flagged closed leaf are wedge
//! regions standing in for infinitely many spiraling plaques and are not
//! reported as plaques.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::boundary::{angle_eq, normalize_angle};
use crate::error::{Error, Result};
use crate::tol;

/// An unoriented chord of the circle.
#[derive(Debug, Clone, PartialEq)]
pub struct Geodesic {
    /// Endpoint angles, stored sorted.
    pub a: f64,
    pub b: f64,
}

impl Geodesic {
    pub fn new(a: f64, b: f64) -> Result<Self> {
        let (a, b) = (normalize_angle(a), normalize_angle(b));
        if angle_eq(a, b) {
            return Err(Error::InvalidInput("geodesic endpoints coincide"));
        }
        Ok(if a <= b { Geodesic { a, b } } else { Geodesic { a: b, b: a } })
    }

    pub fn endpoints(&self) -> (f64, f64) {
        (self.a, self.b)
    }

    pub fn has_endpoint(&self, t: f64) -> bool {
        angle_eq(self.a, t) || angle_eq(self.b, t)
    }
}

/// Mutual position of two chords.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Crossing {
    Crossing,
    Disjoint,
    SharedEndpoint,
}

/// Whether the strictly-between relation holds on the circle: is t inside
/// the open counterclockwise arc from a to b?
fn in_ccw_arc(t: f64, a: f64, b: f64) -> bool {
    let tau = 2.0 * core::f64::consts::PI;
    let span = normalize_angle(b - a);
    let off = normalize_angle(t - a);
    off > tol::TOL_ANGLE && off < span - tol::TOL_ANGLE && span > 0.0 && span < tau
}

/// Crossing predicate: the endpoints of one chord lie in distinct components
/// of the circle minus the other chord's endpoints.
pub fn crossing(g: &Geodesic, h: &Geodesic) -> Crossing {
    if g.has_endpoint(h.a) || g.has_endpoint(h.b) {
        return Crossing::SharedEndpoint;
    }
    let first = in_ccw_arc(h.a, g.a, g.b);
    let second = in_ccw_arc(h.b, g.a, g.b);
    if first != second {
        Crossing::Crossing
    } else {
        Crossing::Disjoint
    }
}

/// An ideal triangle of the window, vertices in counterclockwise order.
#[derive(Debug, Clone, PartialEq)]
pub struct Plaque {
    pub vertices: [f64; 3],
}

impl Plaque {
    pub fn new(a: f64, b: f64, c: f64) -> Self {
        // Counterclockwise normalization starting at the smallest angle.
        let mut v = [normalize_angle(a), normalize_angle(b), normalize_angle(c)];
        // Rotate so the smallest angle is first; the circle orientation of the
        // input is preserved by rotation only.
        let min_idx = (0..3).min_by(|&i, &j| v[i].partial_cmp(&v[j]).unwrap()).unwrap();
        v.rotate_left(min_idx);
        // Ensure counterclockwise: after rotation, v[1] < v[2] iff ccw.
        if v[1] > v[2] {
            v.swap(1, 2);
        }
        Plaque { vertices: v }
    }

    pub fn has_vertex(&self, t: f64) -> bool {
        self.vertices.iter().any(|&v| angle_eq(v, t))
    }

    /// Identity key: sorted vertex angles quantized below the angle
    /// tolerance (plaque identity is order-free).
    pub fn key(&self) -> [i64; 3] {
        let mut k = self.vertices.map(|v| (v / tol::TOL_ANGLE / 10.0).round() as i64);
        k.sort_unstable();
        k
    }

    pub fn same_as(&self, other: &Plaque) -> bool {
        self.key() == other.key()
    }

    /// The edges as chords.
    pub fn edges(&self) -> [Geodesic; 3] {
        let v = &self.vertices;
        [
            Geodesic::new(v[0], v[1]).unwrap(),
            Geodesic::new(v[1], v[2]).unwrap(),
            Geodesic::new(v[2], v[0]).unwrap(),
        ]
    }

    /// The vertex not on the given edge.
    pub fn opposite_vertex(&self, edge: &Geodesic) -> Result<f64> {
        for &v in &self.vertices {
            if !edge.has_endpoint(v) {
                return Ok(v);
            }
        }
        Err(Error::InvalidInput("edge does not bound this plaque"))
    }
}

/// A finite window into a lamination.
#[derive(Debug, Clone, Default)]
pub struct FiniteLamination {
    pub leaves: Vec<Geodesic>,
    /// Indices into `leaves` of the flagged closed leaves.
    pub closed: Vec<usize>,
    /// Optional word labels: leaf index -> word whose axis realizes it.
    pub words: BTreeMap<usize, String>,
}

impl FiniteLamination {
    pub fn new(leaves: Vec<Geodesic>) -> Result<Self> {
        let lam = FiniteLamination { leaves, closed: Vec::new(), words: BTreeMap::new() };
        lam.check_non_crossing()?;
        Ok(lam)
    }

    pub fn with_closed(mut self, closed: Vec<usize>) -> Self {
        self.closed = closed;
        self
    }

    pub fn with_word(mut self, leaf: usize, word: &str) -> Self {
        self.words.insert(leaf, String::from(word));
        self
    }

    pub fn is_closed_leaf(&self, idx: usize) -> bool {
        self.closed.contains(&idx)
    }

    fn check_non_crossing(&self) -> Result<()> {
        for i in 0..self.leaves.len() {
            for j in i + 1..self.leaves.len() {
                if crossing(&self.leaves[i], &self.leaves[j]) == Crossing::Crossing {
                    return Err(Error::InvalidInput("leaves cross"));
                }
            }
        }
        Ok(())
    }

    /// All distinct endpoint angles, sorted counterclockwise.
    pub fn marked_angles(&self) -> Vec<f64> {
        let mut out: Vec<f64> = Vec::new();
        for leaf in &self.leaves {
            for &t in &[leaf.a, leaf.b] {
                if !out.iter().any(|&u| angle_eq(u, t)) {
                    out.push(t);
                }
            }
        }
        out.sort_by(|x, y| x.partial_cmp(y).unwrap());
        out
    }

    /// Leaf index with the given endpoints, if present.
    pub fn find_leaf(&self, g: &Geodesic) -> Option<usize> {
        self.leaves
            .iter()
            .position(|l| angle_eq(l.a, g.a) && angle_eq(l.b, g.b))
    }
}

/// A face of the window subdivision: its vertex cycle in counterclockwise
/// order and whether any bounding edge is a flagged closed leaf.
#[derive(Debug, Clone)]
pub struct Face {
    pub cycle: Vec<f64>,
    pub touches_closed_leaf: bool,
}

/// Enumerate the complementary faces of the leaf set inside the convex hull
/// of its endpoints, by half-edge tracing. Hull arcs between consecutive
/// marked angles bound the window.
pub fn faces(lamination: &FiniteLamination) -> Result<Vec<Face>> {
    let verts = lamination.marked_angles();
    let nv = verts.len();
    if nv < 3 {
        return Err(Error::InvalidInput("window needs at least three marked angles"));
    }
    let vid = |t: f64| -> usize {
        verts
            .iter()
            .position(|&u| angle_eq(u, t))
            .expect("endpoint is a marked angle")
    };
    // Edge list: all leaves plus the hull arcs (i, i+1). Duplicate chords
    // collapse to one edge.
    let mut edges: Vec<(usize, usize, bool)> = Vec::new(); // (v, w, closed)
    let mut push_edge = |a: usize, b: usize, closed: bool, edges: &mut Vec<(usize, usize, bool)>| {
        let (a, b) = if a < b { (a, b) } else { (b, a) };
        if let Some(e) = edges.iter_mut().find(|e| e.0 == a && e.1 == b) {
            e.2 = e.2 || closed;
        } else {
            edges.push((a, b, closed));
        }
    };
    for (idx, leaf) in lamination.leaves.iter().enumerate() {
        push_edge(vid(leaf.a), vid(leaf.b), lamination.is_closed_leaf(idx), &mut edges);
    }
    for i in 0..nv {
        push_edge(i, (i + 1) % nv, false, &mut edges);
    }
    // Rotation system: for each vertex, incident half-edges sorted by the
    // angle of the far endpoint, counterclockwise starting just after the
    // vertex's own angle.
    let mut rot: Vec<Vec<usize>> = vec![Vec::new(); nv]; // edge indices
    for (eidx, &(a, b, _)) in edges.iter().enumerate() {
        rot[a].push(eidx);
        rot[b].push(eidx);
    }
    for (v, list) in rot.iter_mut().enumerate() {
        let base = verts[v];
        list.sort_by(|&e1, &e2| {
            let far = |e: usize| {
                let (a, b, _) = edges[e];
                let far_v = if a == v { b } else { a };
                normalize_angle(verts[far_v] - base)
            };
            far(e1).partial_cmp(&far(e2)).unwrap()
        });
    }
    // Half-edge next: from half-edge (u -> v), the next half-edge of the face
    // on its left is (v -> w) where (v -> u) is followed clockwise by (v -> w)
    // in the rotation at v (standard planar face tracing for the embedding
    // with counterclockwise rotations).
    let he_count = edges.len() * 2;
    let he = |eidx: usize, dir: usize| eidx * 2 + dir; // dir 0: a->b, 1: b->a
    let he_src = |h: usize| {
        let (a, b, _) = edges[h / 2];
        if h % 2 == 0 {
            a
        } else {
            b
        }
    };
    let he_dst = |h: usize| {
        let (a, b, _) = edges[h / 2];
        if h % 2 == 0 {
            b
        } else {
            a
        }
    };
    let next = |h: usize| -> usize {
        let v = he_dst(h);
        let back_edge = h / 2;
        let pos = rot[v].iter().position(|&e| e == back_edge).unwrap();
        let n = rot[v].len();
        let next_edge = rot[v][(pos + n - 1) % n];
        let (a, _, _) = edges[next_edge];
        if a == v {
            he(next_edge, 0)
        } else {
            he(next_edge, 1)
        }
    };
    let mut seen = vec![false; he_count];
    let mut out = Vec::new();
    for h0 in 0..he_count {
        if seen[h0] {
            continue;
        }
        let mut cycle_v: Vec<usize> = Vec::new();
        let mut closed_touch = false;
        let mut h = h0;
        loop {
            seen[h] = true;
            cycle_v.push(he_src(h));
            closed_touch = closed_touch || edges[h / 2].2;
            h = next(h);
            if h == h0 {
                break;
            }
            if cycle_v.len() > he_count {
                return Err(Error::InvalidInput("face tracing failed to close"));
            }
        }
        // Discard the outer face: it visits every hull vertex and is traced
        // clockwise. Identify it as the unique face containing all vertices
        // of the hull in descending circular order.
        let is_outer = cycle_v.len() == nv && {
            // Clockwise means angles decrease along the cycle (up to one wrap).
            let mut desc = 0;
            for k in 0..cycle_v.len() {
                let a = verts[cycle_v[k]];
                let b = verts[cycle_v[(k + 1) % cycle_v.len()]];
                if normalize_angle(a - b) < core::f64::consts::PI {
                    desc += 1;
                }
            }
            desc >= cycle_v.len() - 1
        };
        if is_outer {
            continue;
        }
        out.push(Face {
            cycle: cycle_v.into_iter().map(|v| verts[v]).collect(),
            touches_closed_leaf: closed_touch,
        });
    }
    Ok(out)
}

/// The plaques of the window: triangular faces not resting on a flagged
/// closed leaf (those are wedge regions carrying the spiral tails). Errors
/// with the offending region if some face is not a triangle.
pub fn plaques(lamination: &FiniteLamination) -> Result<Vec<Plaque>> {
    let all = faces(lamination)?;
    let mut out = Vec::new();
    for f in all {
        if f.cycle.len() != 3 {
            return Err(Error::NonMaximalWindow { region: f.cycle });
        }
        if f.touches_closed_leaf {
            continue;
        }
        out.push(Plaque::new(f.cycle[0], f.cycle[1], f.cycle[2]));
    }
    Ok(out)
}

/// Which side of the plaque the configuration sits on: every plaque splits
/// the disk into itself plus three outer components, one per edge.
fn side_of(p: &Plaque, t: f64) -> Option<usize> {
    // Component behind edge (v[i], v[i+1]) is the open arc ccw from v[i] to
    // v[i+1] (not containing the third vertex).
    for i in 0..3 {
        let a = p.vertices[i];
        let b = p.vertices[(i + 1) % 3];
        if in_ccw_arc(t, a, b) {
            return Some(i);
        }
    }
    None
}

/// Does plaque `r` separate `p` from `q` (all within one window)?
pub fn separates(r: &Plaque, p: &Plaque, q: &Plaque) -> bool {
    if r.same_as(p) || r.same_as(q) {
        return false;
    }
    let comp = |x: &Plaque| -> Option<usize> {
        let mut side = None;
        for &v in &x.vertices {
            if r.has_vertex(v) {
                continue;
            }
            match (side, side_of(r, v)) {
                (_, None) => return None,
                (None, s) => side = s,
                (Some(s1), Some(s2)) if s1 == s2 => {}
                _ => return None, // straddles r: not cleanly on one side
            }
        }
        side
    };
    match (comp(p), comp(q)) {
        (Some(sp), Some(sq)) => sp != sq,
        _ => false,
    }
}

/// All plaques of the window separating `p` from `q`, ordered from `p`
/// towards `q`. The order is the separation order and is independent of any
/// transversal: `r` comes before `r'` exactly when `r` separates `p` from `r'`.
pub fn separating_plaques(
    lamination: &FiniteLamination,
    p: &Plaque,
    q: &Plaque,
) -> Result<Vec<Plaque>> {
    if p.same_as(q) {
        return Err(Error::InvalidInput("plaques coincide"));
    }
    let all = plaques(lamination)?;
    let sep: Vec<Plaque> = all.into_iter().filter(|r| separates(r, p, q)).collect();
    // Rank by how many of the other separating plaques lie between p and r.
    let mut ranked: Vec<(usize, Plaque)> = sep
        .iter()
        .map(|r| {
            let rank = sep
                .iter()
                .filter(|s| !s.same_as(r) && separates(s, p, r))
                .count();
            (rank, r.clone())
        })
        .collect();
    ranked.sort_by_key(|(rank, _)| *rank);
    Ok(ranked.into_iter().map(|(_, r)| r).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::PI;

    #[test]
    fn crossing_examples() {
        let g = Geodesic::new(0.0, PI).unwrap();
        assert_eq!(
            crossing(&g, &Geodesic::new(PI / 2.0, 3.0 * PI / 2.0).unwrap()),
            Crossing::Crossing
        );
        assert_eq!(
            crossing(&g, &Geodesic::new(PI / 4.0, PI / 2.0).unwrap()),
            Crossing::Disjoint
        );
        assert_eq!(
            crossing(&g, &Geodesic::new(PI, 3.0 * PI / 2.0).unwrap()),
            Crossing::SharedEndpoint
        );
    }

    #[test]
    fn crossing_is_symmetric_and_rotation_invariant() {
        let pairs = [
            (0.3, 2.0, 1.0, 4.0),
            (0.3, 2.0, 2.5, 3.0),
            (5.0, 1.0, 0.2, 3.0),
        ];
        for &(a, b, c, d) in &pairs {
            let g = Geodesic::new(a, b).unwrap();
            let h = Geodesic::new(c, d).unwrap();
            assert_eq!(crossing(&g, &h), crossing(&h, &g));
            for rot in [0.7, 2.9, 4.4] {
                let gr = Geodesic::new(a + rot, b + rot).unwrap();
                let hr = Geodesic::new(c + rot, d + rot).unwrap();
                assert_eq!(crossing(&g, &h), crossing(&gr, &hr));
            }
        }
    }

    #[test]
    fn quadrilateral_splits_into_two_triangles() {
        let quad = [0.0, PI / 2.0, PI, 3.0 * PI / 2.0];
        let lam = FiniteLamination::new(vec![
            Geodesic::new(quad[0], quad[1]).unwrap(),
            Geodesic::new(quad[1], quad[2]).unwrap(),
            Geodesic::new(quad[2], quad[3]).unwrap(),
            Geodesic::new(quad[3], quad[0]).unwrap(),
            Geodesic::new(quad[0], quad[2]).unwrap(), // diagonal
        ])
        .unwrap();
        let p = plaques(&lam).unwrap();
        assert_eq!(p.len(), 2);
    }

    #[test]
    fn empty_square_window_is_not_maximal() {
        let quad = [0.0, PI / 2.0, PI, 3.0 * PI / 2.0];
        let lam = FiniteLamination::new(vec![
            Geodesic::new(quad[0], quad[1]).unwrap(),
            Geodesic::new(quad[1], quad[2]).unwrap(),
            Geodesic::new(quad[2], quad[3]).unwrap(),
            Geodesic::new(quad[3], quad[0]).unwrap(),
        ])
        .unwrap();
        match plaques(&lam) {
            Err(Error::NonMaximalWindow { region }) => assert_eq!(region.len(), 4),
            other => panic!("expected non-maximal window, got {other:?}"),
        }
    }

    #[test]
    fn fan_separation_order() {
        // Fan of four triangles sharing the vertex at angle 0.
        let w = 0.0;
        let spokes = [1.0, 1.8, 2.6, 3.4, 4.2];
        let mut leaves = vec![];
        for &s in &spokes {
            leaves.push(Geodesic::new(w, s).unwrap());
        }
        let lam = FiniteLamination::new(leaves).unwrap();
        let all = plaques(&lam).unwrap();
        assert_eq!(all.len(), 4);
        let first = Plaque::new(w, spokes[0], spokes[1]);
        let last = Plaque::new(w, spokes[3], spokes[4]);
        let mids = separating_plaques(&lam, &first, &last).unwrap();
        assert_eq!(mids.len(), 2);
        assert!(mids[0].same_as(&Plaque::new(w, spokes[1], spokes[2])));
        assert!(mids[1].same_as(&Plaque::new(w, spokes[2], spokes[3])));
        // Reversal symmetry.
        let back = separating_plaques(&lam, &last, &first).unwrap();
        assert!(back[0].same_as(&mids[1]) && back[1].same_as(&mids[0]));
        // Adjacent plaques have no separators.
        let adj = separating_plaques(&lam, &first, &Plaque::new(w, spokes[1], spokes[2])).unwrap();
        assert!(adj.is_empty());
    }

    #[test]
    fn wedge_faces_are_not_plaques() {
        // Closed leaf on the vertical axis, one genuine plaque on each side.
        let up = PI / 2.0;
        let down = 3.0 * PI / 2.0;
        let xl = [PI - 0.9, PI - 0.3]; // left-side marked points
        let xr = [2.0 * PI - 0.9, 2.0 * PI - 0.3]; // right side
        let leaves = vec![
            Geodesic::new(up, down).unwrap(),     // closed leaf (index 0)
            Geodesic::new(up, xl[0]).unwrap(),
            Geodesic::new(up, xl[1]).unwrap(),
            Geodesic::new(xl[0], xl[1]).unwrap(),
            Geodesic::new(down, xr[0]).unwrap(),
            Geodesic::new(down, xr[1]).unwrap(),
            Geodesic::new(xr[0], xr[1]).unwrap(),
        ];
        let lam = FiniteLamination::new(leaves).unwrap().with_closed(vec![0]);
        let p = plaques(&lam).unwrap();
        // Only the two genuine triangles; the wedges against the closed leaf
        // are suppressed.
        assert_eq!(p.len(), 2);
        let left = Plaque::new(up, xl[0], xl[1]);
        let right = Plaque::new(down, xr[0], xr[1]);
        assert!(p.iter().any(|x| x.same_as(&left)));
        assert!(p.iter().any(|x| x.same_as(&right)));
    }
}
