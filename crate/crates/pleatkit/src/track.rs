//! Trivalent train tracks, weight systems, the Thurston symplectic form,
//! and divergence-radius functions.
//!
//! Tracks are combinatorial: branches are ids, switches are ordered triples
//! (big, left, right) with the switch relation `w_big = w_left + w_right`,
//! and each branch carries the plaque pair at the two ends of one of its
//! ties, which is how transverse cocycles turn into weights. Transversals
//! are combinatorial as well: for each separating plaque they record the
//! branch windows of its two boundary leaves around the crossing branch.

use alloc::vec;
use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::lamination::{separates, Plaque};
use crate::tol;

/// A switch: the big branch contains the switch in its vertical boundary and
/// the two small branches merge into it, seen left/right from the big side.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Switch {
    pub big: usize,
    pub left: usize,
    pub right: usize,
}

/// A combinatorial trivalent train track.
#[derive(Debug, Clone, PartialEq)]
pub struct TrainTrack {
    branch_count: usize,
    switches: Vec<Switch>,
    /// Plaques at the two ends of a tie of each branch.
    tie_plaques: Vec<(Plaque, Plaque)>,
}

impl TrainTrack {
    pub fn new(
        branch_count: usize,
        switches: Vec<Switch>,
        tie_plaques: Vec<(Plaque, Plaque)>,
    ) -> Result<Self> {
        if tie_plaques.len() != branch_count {
            return Err(Error::DimensionMismatch { expected: branch_count, got: tie_plaques.len() });
        }
        for s in &switches {
            if s.big >= branch_count || s.left >= branch_count || s.right >= branch_count {
                return Err(Error::InvalidInput("switch references unknown branch"));
            }
            if s.big == s.left || s.big == s.right || s.left == s.right {
                return Err(Error::InvalidInput("switch branches must be distinct"));
            }
        }
        Ok(TrainTrack { branch_count, switches, tie_plaques })
    }

    pub fn branch_count(&self) -> usize {
        self.branch_count
    }

    pub fn switches(&self) -> &[Switch] {
        &self.switches
    }

    pub fn tie_plaques(&self, branch: usize) -> &(Plaque, Plaque) {
        &self.tie_plaques[branch]
    }

    /// Structural identity used to guard weight-system operations.
    pub fn same_track(&self, other: &TrainTrack) -> bool {
        self.branch_count == other.branch_count && self.switches == other.switches
    }
}

/// Branch weights subject to the switch relations.
#[derive(Debug, Clone)]
pub struct WeightSystem {
    weights: Vec<f64>,
}

impl WeightSystem {
    pub fn new(track: &TrainTrack, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != track.branch_count() {
            return Err(Error::DimensionMismatch {
                expected: track.branch_count(),
                got: weights.len(),
            });
        }
        for (idx, s) in track.switches().iter().enumerate() {
            let residual = (weights[s.big] - weights[s.left] - weights[s.right]).abs();
            if residual >= tol::TOL_SWITCH.max(1e-10) {
                return Err(Error::SwitchCondition { switch: idx, residual });
            }
        }
        Ok(WeightSystem { weights })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, branch: usize) -> f64 {
        self.weights[branch]
    }

    /// Largest switch residual on the given track.
    pub fn switch_residual(&self, track: &TrainTrack) -> f64 {
        track
            .switches()
            .iter()
            .map(|s| (self.weights[s.big] - self.weights[s.left] - self.weights[s.right]).abs())
            .fold(0.0, f64::max)
    }

    pub fn scale(&self, s: f64) -> WeightSystem {
        WeightSystem { weights: self.weights.iter().map(|w| w * s).collect() }
    }
}

/// The Thurston symplectic form
/// `omega(a, b) = 1/2 sum_s (a_r^s b_l^s - a_l^s b_r^s)` over all switches.
pub fn thurston_symplectic(
    track: &TrainTrack,
    alpha: &WeightSystem,
    beta: &WeightSystem,
) -> Result<f64> {
    if alpha.weights.len() != track.branch_count() || beta.weights.len() != track.branch_count() {
        return Err(Error::TrackMismatch);
    }
    let mut sum = 0.0;
    for s in track.switches() {
        sum += alpha.weight(s.right) * beta.weight(s.left)
            - alpha.weight(s.left) * beta.weight(s.right);
    }
    Ok(0.5 * sum)
}

/// Turn a transverse cocycle into branch weights by evaluating it on the
/// plaque pair at the ends of a tie of each branch; the switch conditions of
/// the result are verified and the offending switch reported on failure.
pub fn cocycle_to_weights<F>(track: &TrainTrack, mut eval: F) -> Result<WeightSystem>
where
    F: FnMut(&Plaque, &Plaque) -> Result<f64>,
{
    let mut weights = Vec::with_capacity(track.branch_count());
    for b in 0..track.branch_count() {
        let (p, q) = track.tie_plaques(b);
        weights.push(eval(p, q)?);
    }
    WeightSystem::new(track, weights)
}

// ---------------------------------------------------------------------------
// Divergence radius
// ---------------------------------------------------------------------------

/// Branch window of one leaf around the crossing branch of a transversal:
/// entry `center + k` is the branch the leaf runs through `k` steps from the
/// crossing, `None` where the leaf has left the track.
#[derive(Debug, Clone)]
pub struct LeafWindow {
    pub center: usize,
    pub branches: Vec<Option<usize>>,
}

impl LeafWindow {
    pub fn at(&self, offset: i64) -> Option<usize> {
        let idx = self.center as i64 + offset;
        if idx < 0 || idx as usize >= self.branches.len() {
            return None;
        }
        self.branches[idx as usize]
    }
}

/// A combinatorial transversal: the ordered plaque pair and, per separating
/// plaque, the branch windows of its two boundary leaves that cross the
/// transversal (or `None` when the plaque meets the transversal outside the
/// track).
#[derive(Debug, Clone)]
pub struct Transversal {
    pub from: Plaque,
    pub to: Plaque,
    crossings: Vec<(Plaque, Option<(LeafWindow, LeafWindow)>)>,
}

impl Transversal {
    pub fn new(
        from: Plaque,
        to: Plaque,
        crossings: Vec<(Plaque, Option<(LeafWindow, LeafWindow)>)>,
    ) -> Self {
        Transversal { from, to, crossings }
    }

    pub fn separating_plaques(&self) -> impl Iterator<Item = &Plaque> {
        self.crossings.iter().map(|(p, _)| p)
    }

    fn lookup(&self, r: &Plaque) -> Option<&Option<(LeafWindow, LeafWindow)>> {
        self.crossings.iter().find(|(p, _)| p.same_as(r)).map(|(_, w)| w)
    }
}

/// The divergence radius `r(R)`: zero if the plaque meets the transversal
/// outside the track, otherwise n+1 where n is the largest integer such that
/// the two boundary leaves of R crossing the transversal run through the same
/// branches at offsets -n..n around the crossing branch.
pub fn divergence_radius(transversal: &Transversal, r: &Plaque) -> Result<usize> {
    if !separates(r, &transversal.from, &transversal.to) {
        return Err(Error::InvalidInput("plaque does not separate the transversal endpoints"));
    }
    let windows = transversal
        .lookup(r)
        .ok_or(Error::InvalidInput("plaque missing from transversal data"))?;
    let (w1, w2) = match windows {
        None => return Ok(0),
        Some(pair) => pair,
    };
    let mut n: i64 = 0;
    loop {
        let probe = n;
        let ok = [probe, -probe].iter().all(|&off| {
            matches!((w1.at(off), w2.at(off)), (Some(b1), Some(b2)) if b1 == b2)
        });
        if !ok {
            break;
        }
        n += 1;
    }
    // n is now the first failing level, so the largest shared level is n-1
    // and r = (n-1) + 1 = n; n = 0 means even the crossing branch differs,
    // which the construction excludes, so report 1 in that case too.
    Ok((n.max(1)) as usize)
}

/// Plaques at divergence radius at most `n`, in separation order from the
/// transversal's first plaque.
pub fn plaques_up_to_radius(transversal: &Transversal, n: usize) -> Result<Vec<Plaque>> {
    let mut chosen: Vec<Plaque> = Vec::new();
    for (p, _) in transversal.crossings.iter() {
        if divergence_radius(transversal, p)? <= n {
            chosen.push(p.clone());
        }
    }
    // Sort by separation rank from `from`.
    let copy = chosen.clone();
    chosen.sort_by_key(|r| {
        copy.iter()
            .filter(|s| !s.same_as(r) && separates(s, &transversal.from, r))
            .count()
    });
    Ok(chosen)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dummy_plaque(seed: f64) -> Plaque {
        Plaque::new(seed, seed + 1.0, seed + 2.0)
    }

    fn single_switch_track() -> TrainTrack {
        // Branches: 0 = big, 1 = left, 2 = right.
        TrainTrack::new(
            3,
            vec![Switch { big: 0, left: 1, right: 2 }],
            vec![
                (dummy_plaque(0.0), dummy_plaque(0.1)),
                (dummy_plaque(0.2), dummy_plaque(0.3)),
                (dummy_plaque(0.4), dummy_plaque(0.5)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn switch_conditions_enforced() {
        let track = single_switch_track();
        assert!(WeightSystem::new(&track, vec![3.0, 1.0, 2.0]).is_ok());
        match WeightSystem::new(&track, vec![3.0, 1.0, 1.0]) {
            Err(Error::SwitchCondition { switch: 0, residual }) => {
                assert!((residual - 1.0).abs() < 1e-12)
            }
            other => panic!("expected switch violation, got {other:?}"),
        }
    }

    #[test]
    fn symplectic_form_formula_and_antisymmetry() {
        let track = single_switch_track();
        let alpha = WeightSystem::new(&track, vec![3.0, 1.0, 2.0]).unwrap();
        let beta = WeightSystem::new(&track, vec![1.0, 0.0, 1.0]).unwrap();
        // 1/2 (a_r b_l - a_l b_r) = 1/2 (2*0 - 1*1) = -1/2.
        let w = thurston_symplectic(&track, &alpha, &beta).unwrap();
        assert!((w + 0.5).abs() < 1e-15);
        let wb = thurston_symplectic(&track, &beta, &alpha).unwrap();
        assert!((w + wb).abs() < 1e-15);
        assert_eq!(thurston_symplectic(&track, &alpha, &alpha).unwrap(), 0.0);
        // Bilinearity in the first slot.
        let alpha2 = alpha.scale(2.5);
        let w2 = thurston_symplectic(&track, &alpha2, &beta).unwrap();
        assert!((w2 - 2.5 * w).abs() < 1e-12);
    }

    #[test]
    fn cocycle_weights_from_zero_cocycle() {
        let track = single_switch_track();
        let ws = cocycle_to_weights(&track, |_, _| Ok(0.0)).unwrap();
        assert!(ws.weights().iter().all(|&w| w == 0.0));
    }

    #[test]
    fn divergence_radius_from_windows() {
        // Two plaques: one leaving the track, one with a shared window of
        // offsets -3..3 (r = 4).
        let from = Plaque::new(0.0, 0.4, 0.8);
        let to = Plaque::new(3.0, 3.4, 3.8);
        let mid1 = Plaque::new(1.0, 1.2, 5.8); // separates
        let mid2 = Plaque::new(1.4, 1.6, 5.6); // separates
        let window = |ids: &[Option<usize>], center: usize| LeafWindow {
            center,
            branches: ids.to_vec(),
        };
        let shared: Vec<Option<usize>> =
            vec![Some(9), Some(1), Some(2), Some(3), Some(4), Some(5), Some(6), Some(7), None];
        let mut other = shared.clone();
        other[0] = Some(8); // differs at offset -4
        other[8] = Some(9); // differs at offset +4
        let t = Transversal::new(
            from.clone(),
            to.clone(),
            vec![
                (mid1.clone(), Some((window(&shared, 4), window(&other, 4)))),
                (mid2.clone(), None),
            ],
        );
        assert_eq!(divergence_radius(&t, &mid1).unwrap(), 4);
        assert_eq!(divergence_radius(&t, &mid2).unwrap(), 0);
        let level = plaques_up_to_radius(&t, 3).unwrap();
        assert_eq!(level.len(), 1); // only the r = 0 plaque
        let level4 = plaques_up_to_radius(&t, 4).unwrap();
        assert_eq!(level4.len(), 2);
    }

    #[test]
    fn leaves_diverging_at_first_switch() {
        // Shared only at the crossing branch: r = 1.
        let from = Plaque::new(0.0, 0.4, 0.8);
        let to = Plaque::new(3.0, 3.4, 3.8);
        let mid = Plaque::new(1.0, 1.2, 5.8);
        let w1 = LeafWindow { center: 1, branches: vec![Some(1), Some(0), Some(2)] };
        let w2 = LeafWindow { center: 1, branches: vec![Some(3), Some(0), Some(4)] };
        let t = Transversal::new(from, to, vec![(mid.clone(), Some((w1, w2)))]);
        assert_eq!(divergence_radius(&t, &mid).unwrap(), 1);
    }
}
