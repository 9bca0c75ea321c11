//! Disconnected sets: unions of short intervals around even- or odd-indexed
//! shifted nodes.

use rayon::prelude::*;

use crate::config::RsConfig;
use crate::error::{Error, Result};
use crate::grid::{enumerate_nodes, solve_node, Parity, Window};
use crate::kahan::KahanSum;

/// Which family of intervals.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SetKind {
    /// Intervals (t_2nu(-x), t_2nu(x)) around even-indexed nodes.
    G1,
    /// Intervals (t_(2nu+1)(-y), t_(2nu+1)(y)) around odd-indexed nodes.
    G2,
}

/// A finite disjoint union of intervals with its measure.
#[derive(Clone, Debug, PartialEq)]
pub struct SegmentSet {
    segments: Vec<(f64, f64)>,
    measure: f64,
}

impl SegmentSet {
    /// Builds the set, enforcing strict ordering and disjointness.
    pub fn new(segments: Vec<(f64, f64)>) -> Result<Self> {
        for (i, &(lo, hi)) in segments.iter().enumerate() {
            if !(lo < hi) {
                return Err(Error::InvalidWindow(format!(
                    "degenerate segment ({lo}, {hi})"
                )));
            }
            if i > 0 && !(segments[i - 1].1 < lo) {
                return Err(Error::InvalidWindow(format!(
                    "segments overlap near ({lo}, {hi})"
                )));
            }
        }
        let measure = KahanSum::sum_iter(segments.iter().map(|&(lo, hi)| hi - lo));
        Ok(SegmentSet { segments, measure })
    }

    pub fn segments(&self) -> &[(f64, f64)] {
        &self.segments
    }

    pub fn measure(&self) -> f64 {
        self.measure
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }
}

/// Builds G1(x, T, H) or G2(y, T, H): one interval per even- (G1) or
/// odd-indexed (G2) node whose tau = 0 abscissa lies in the window.
pub fn build_set(kind: SetKind, offset: f64, w: &Window, cfg: &RsConfig) -> Result<SegmentSet> {
    if !(offset > 0.0 && offset <= std::f64::consts::FRAC_PI_2) {
        return Err(Error::OffsetOutOfRange(offset));
    }
    let parity = match kind {
        SetKind::G1 => Parity::Even,
        SetKind::G2 => Parity::Odd,
    };
    let centers = enumerate_nodes(w, 0.0, parity, cfg)?;
    let ends: Vec<Result<(f64, f64)>> = centers
        .par_iter()
        .map(|node| {
            let lo = solve_node(node.nu, -offset, cfg)?;
            let hi = solve_node(node.nu, offset, cfg)?;
            Ok((lo.t, hi.t))
        })
        .collect();
    let segments = ends.into_iter().collect::<Result<Vec<_>>>()?;
    SegmentSet::new(segments)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CFG: RsConfig = RsConfig {
        min_t: 50.0,
        correction_order: 1,
        newton_tol: 1e-10,
        quad_order: 16,
    };

    #[test]
    fn rejects_overlap_and_degenerate() {
        assert!(SegmentSet::new(vec![(1.0, 1.0)]).is_err());
        assert!(SegmentSet::new(vec![(1.0, 2.0), (1.5, 3.0)]).is_err());
        assert!(SegmentSet::new(vec![(1.0, 2.0), (2.0, 3.0)]).is_err());
        let ok = SegmentSet::new(vec![(1.0, 2.0), (2.5, 3.0)]).unwrap();
        assert!((ok.measure() - 1.5).abs() < 1e-15);
    }

    #[test]
    fn rejects_offset_out_of_range() {
        let w = Window::new(1e4, 50.0).unwrap();
        assert!(build_set(SetKind::G1, 0.0, &w, &CFG).is_err());
        assert!(build_set(SetKind::G1, 1.6, &w, &CFG).is_err());
    }

    #[test]
    fn g1_g2_interleave_and_shrink() {
        let w = Window::new(1e4, 60.0).unwrap();
        let g1 = build_set(SetKind::G1, 0.4, &w, &CFG).unwrap();
        let g2 = build_set(SetKind::G2, 0.4, &w, &CFG).unwrap();
        assert!(!g1.is_empty() && !g2.is_empty());
        // nested offsets give monotone measures
        let mut prev = f64::INFINITY;
        for x in [0.4, 0.2, 0.1] {
            let m = build_set(SetKind::G1, x, &w, &CFG).unwrap().measure();
            assert!(m < prev);
            prev = m;
        }
        // max offset keeps segments disjoint
        let full = build_set(SetKind::G1, std::f64::consts::FRAC_PI_2, &w, &CFG).unwrap();
        assert!(full.measure() > g1.measure());
    }
}
