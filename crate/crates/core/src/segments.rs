//! Interval segments, structured segment families and node sets.
//!
//! A [`SegmentSet`] carries the segments together with the working interval
//! and a structural class: chains that partition the interval, arc-uniform
//! sets whose images on the upper half circle have constant arc length, and
//! nested sets sharing their left endpoint.

use std::f64::consts::PI;
use std::fmt::Write as _;

use crate::error::{invalid, Error, Result};

/// A closed segment `[alpha, beta]` with `alpha < beta`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    alpha: f64,
    beta: f64,
}

impl Segment {
    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        if !alpha.is_finite() || !beta.is_finite() {
            return Err(invalid(format!("non-finite segment [{alpha}, {beta}]")));
        }
        if alpha >= beta {
            return Err(invalid(format!("segment [{alpha}, {beta}] has alpha >= beta")));
        }
        Ok(Self { alpha, beta })
    }

    #[inline]
    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    #[inline]
    pub fn beta(&self) -> f64 {
        self.beta
    }

    #[inline]
    pub fn len(&self) -> f64 {
        self.beta - self.alpha
    }

    #[inline]
    pub fn midpoint(&self) -> f64 {
        0.5 * (self.alpha + self.beta)
    }

    #[inline]
    pub fn contains(&self, x: f64) -> bool {
        self.alpha <= x && x <= self.beta
    }
}

/// Structural class of a segment set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SegmentClass {
    /// Consecutive segments partition the interval.
    Chain,
    /// `[cos(tau_i + rho), cos(tau_i - rho)]` with common arc radius `rho`.
    ArcUniform,
    /// All segments share the left endpoint; right endpoints increase.
    LeftAnchored,
    General,
}

/// Which factory built the set. Used to decide which growth bounds apply.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Equidistant,
    ChebyshevLobatto,
    ClOverlapping,
    ArcUniform,
    Custom,
}

/// Arc data of an arc-uniform family: one arc-midpoint per segment and a
/// shared arc radius.
#[derive(Debug, Clone, PartialEq)]
pub struct ArcParams {
    rho: f64,
    taus: Vec<f64>,
}

impl ArcParams {
    pub fn rho(&self) -> f64 {
        self.rho
    }

    /// Arc-midpoint angles, in segment order.
    pub fn taus(&self) -> &[f64] {
        &self.taus
    }

    /// The arc-midpoints `cos tau_i`.
    pub fn midpoints(&self) -> Vec<f64> {
        self.taus.iter().map(|t| t.cos()).collect()
    }
}

/// An ordered list of segments on a working interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq)]
pub struct SegmentSet {
    segments: Vec<Segment>,
    interval: (f64, f64),
    class: SegmentClass,
    arc: Option<ArcParams>,
    family: Family,
}

fn check_interval(lo: f64, hi: f64) -> Result<()> {
    if !lo.is_finite() || !hi.is_finite() || lo >= hi {
        return Err(invalid(format!("invalid interval [{lo}, {hi}]")));
    }
    Ok(())
}

fn is_chain(segments: &[Segment], (lo, hi): (f64, f64)) -> bool {
    segments.first().map(|s| s.alpha) == Some(lo)
        && segments.last().map(|s| s.beta) == Some(hi)
        && segments.windows(2).all(|w| w[0].beta == w[1].alpha)
}

fn is_left_anchored(segments: &[Segment]) -> bool {
    let alpha = segments[0].alpha;
    segments.iter().all(|s| s.alpha == alpha) && segments.windows(2).all(|w| w[0].beta < w[1].beta)
}

/// Chebyshev-Lobatto nodes `-cos(pi i / r)`, `i = 0..=r`, written in the
/// symmetric sine form so that `0` and `+-1` come out exact.
pub fn chebyshev_lobatto_nodes(r: usize) -> Vec<f64> {
    let rf = r as f64;
    (0..=r)
        .map(|i| (PI * (2.0 * i as f64 - rf) / (2.0 * rf)).sin())
        .collect()
}

impl SegmentSet {
    /// Builds a set from segments and detects its class (`Chain`,
    /// `LeftAnchored` or `General`). Arc-uniform sets come only from
    /// [`SegmentSet::arc_uniform`].
    pub fn new(segments: Vec<Segment>, interval: (f64, f64)) -> Result<Self> {
        Self::validate_common(&segments, interval)?;
        let class = if is_chain(&segments, interval) {
            SegmentClass::Chain
        } else if is_left_anchored(&segments) {
            SegmentClass::LeftAnchored
        } else {
            SegmentClass::General
        };
        Ok(Self {
            segments,
            interval,
            class,
            arc: None,
            family: Family::Custom,
        })
    }

    /// Convenience constructor from endpoint pairs.
    pub fn from_endpoints(pairs: &[(f64, f64)], interval: (f64, f64)) -> Result<Self> {
        let segments = pairs
            .iter()
            .map(|&(a, b)| Segment::new(a, b))
            .collect::<Result<Vec<_>>>()?;
        Self::new(segments, interval)
    }

    fn validate_common(segments: &[Segment], (lo, hi): (f64, f64)) -> Result<()> {
        check_interval(lo, hi)?;
        if segments.is_empty() {
            return Err(invalid("segment set must contain at least one segment"));
        }
        for (i, s) in segments.iter().enumerate() {
            if s.alpha < lo || s.beta > hi {
                return Err(invalid(format!(
                    "segment {i} = [{}, {}] leaves interval [{lo}, {hi}]",
                    s.alpha, s.beta
                )));
            }
        }
        Ok(())
    }

    /// Chain of `r` equal segments on `[lo, hi]`.
    pub fn equidistant(r: usize, lo: f64, hi: f64) -> Result<Self> {
        if r == 0 {
            return Err(invalid("r must be at least 1"));
        }
        check_interval(lo, hi)?;
        let width = hi - lo;
        let mut nodes: Vec<f64> = (0..=r).map(|i| lo + width * (i as f64 / r as f64)).collect();
        nodes[0] = lo;
        nodes[r] = hi;
        let mut set = Self::chain_from_nodes(&nodes)?;
        set.family = Family::Equidistant;
        Ok(set)
    }

    /// Chebyshev-Lobatto chain on `[-1, 1]`. The set is simultaneously
    /// arc-uniform and carries its arc data (`rho = pi/(2r)`).
    pub fn chebyshev_lobatto(r: usize) -> Result<Self> {
        if r == 0 {
            return Err(invalid("r must be at least 1"));
        }
        let nodes = chebyshev_lobatto_nodes(r);
        let mut set = Self::chain_from_nodes(&nodes)?;
        let rf = r as f64;
        let taus = (1..=r)
            .map(|i| (2.0 * (r - i) as f64 + 1.0) * PI / (2.0 * rf))
            .collect();
        set.arc = Some(ArcParams {
            rho: PI / (2.0 * rf),
            taus,
        });
        set.family = Family::ChebyshevLobatto;
        Ok(set)
    }

    /// Nested segments `[-1, xi_i]` over the Chebyshev-Lobatto nodes.
    pub fn cl_overlapping(r: usize) -> Result<Self> {
        if r == 0 {
            return Err(invalid("r must be at least 1"));
        }
        let nodes = chebyshev_lobatto_nodes(r);
        let segments = nodes[1..]
            .iter()
            .map(|&b| Segment::new(-1.0, b))
            .collect::<Result<Vec<_>>>()?;
        Self::validate_common(&segments, (-1.0, 1.0))?;
        Ok(Self {
            segments,
            interval: (-1.0, 1.0),
            class: SegmentClass::LeftAnchored,
            arc: None,
            family: Family::ClOverlapping,
        })
    }

    /// Arc-uniform set `[cos(tau_i + rho), cos(tau_i - rho)]` on `[-1, 1]`.
    ///
    /// Requires `0 < tau_1 < ... < tau_r < pi` and `0 < rho < pi`. Arcs that
    /// cross `0` or `pi` fold back onto the interval; the endpoints are still
    /// ordered because `|s_i| = 2 sin(tau_i) sin(rho) > 0`.
    pub fn arc_uniform(taus: &[f64], rho: f64) -> Result<Self> {
        if taus.is_empty() {
            return Err(invalid("arc-uniform set needs at least one tau"));
        }
        if !(rho > 0.0 && rho < PI) {
            return Err(invalid(format!("arc radius {rho} outside (0, pi)")));
        }
        if taus.iter().any(|&t| !(t > 0.0 && t < PI)) {
            return Err(invalid("arc-midpoint angles must lie in (0, pi)"));
        }
        if taus.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("arc-midpoint angles must be strictly increasing"));
        }
        let segments = taus
            .iter()
            .map(|&t| Segment::new((t + rho).cos(), (t - rho).cos()))
            .collect::<Result<Vec<_>>>()?;
        Self::validate_common(&segments, (-1.0, 1.0))?;
        Ok(Self {
            segments,
            interval: (-1.0, 1.0),
            class: SegmentClass::ArcUniform,
            arc: Some(ArcParams {
                rho,
                taus: taus.to_vec(),
            }),
            family: Family::ArcUniform,
        })
    }

    /// Arc-uniform set with the Chebyshev-Lobatto arc-midpoints and radius
    /// `rho = lambda * pi / r`. `lambda = 1/2` reproduces the CL segments
    /// (in reverse order).
    pub fn arc_uniform_cl_midpoints(r: usize, lambda: f64) -> Result<Self> {
        if r == 0 {
            return Err(invalid("r must be at least 1"));
        }
        let rf = r as f64;
        let taus: Vec<f64> = (0..r).map(|k| (2.0 * k as f64 + 1.0) * PI / (2.0 * rf)).collect();
        Self::arc_uniform(&taus, lambda * PI / rf)
    }

    fn chain_from_nodes(nodes: &[f64]) -> Result<Self> {
        let segments = nodes
            .windows(2)
            .map(|w| Segment::new(w[0], w[1]))
            .collect::<Result<Vec<_>>>()?;
        let interval = (nodes[0], nodes[nodes.len() - 1]);
        Self::validate_common(&segments, interval)?;
        Ok(Self {
            segments,
            interval,
            class: SegmentClass::Chain,
            arc: None,
            family: Family::Custom,
        })
    }

    pub fn segments(&self) -> &[Segment] {
        &self.segments
    }

    pub fn len(&self) -> usize {
        self.segments.len()
    }

    /// Always false; kept for clippy's `len_without_is_empty`.
    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }

    pub fn class(&self) -> SegmentClass {
        self.class
    }

    pub fn family(&self) -> Family {
        self.family
    }

    pub fn arc(&self) -> Option<&ArcParams> {
        self.arc.as_ref()
    }

    pub fn lengths(&self) -> Vec<f64> {
        self.segments.iter().map(Segment::len).collect()
    }

    /// Chain nodes `xi_0 < ... < xi_r`, for chain sets only.
    pub fn chain_nodes(&self) -> Result<NodeSet> {
        if self.class != SegmentClass::Chain {
            return Err(invalid("chain nodes requested for a non-chain set"));
        }
        let mut nodes = Vec::with_capacity(self.len() + 1);
        nodes.push(self.segments[0].alpha);
        nodes.extend(self.segments.iter().map(|s| s.beta));
        NodeSet::new(nodes, self.interval)
    }

    /// True iff every pair of segments meets in at most one point.
    pub fn is_nonoverlapping(&self) -> bool {
        let mut sorted: Vec<&Segment> = self.segments.iter().collect();
        sorted.sort_by(|a, b| a.alpha.total_cmp(&b.alpha));
        sorted.windows(2).all(|w| w[1].alpha >= w[0].beta)
    }

    /// Image of the set under the increasing affine map of the working
    /// interval onto `target`. Chain and left-anchored structure survive;
    /// arc-uniform structure does not.
    pub fn affine_map(&self, target: (f64, f64)) -> Result<Self> {
        check_interval(target.0, target.1)?;
        let map = AffineMap::new(self.interval, target);
        let segments = self
            .segments
            .iter()
            .map(|s| Segment::new(map.apply(s.alpha), map.apply(s.beta)))
            .collect::<Result<Vec<_>>>()?;
        Self::validate_common(&segments, target)?;
        let class = match self.class {
            SegmentClass::Chain if is_chain(&segments, target) => SegmentClass::Chain,
            SegmentClass::LeftAnchored if is_left_anchored(&segments) => SegmentClass::LeftAnchored,
            SegmentClass::Chain | SegmentClass::LeftAnchored => {
                return Err(Error::Internal("affine map broke segment structure".into()))
            }
            SegmentClass::ArcUniform | SegmentClass::General => SegmentClass::General,
        };
        let family = match self.family {
            Family::ArcUniform => Family::Custom,
            f => f,
        };
        Ok(Self {
            segments,
            interval: target,
            class,
            arc: None,
            family,
        })
    }

    /// CSV with header `i,alpha,beta` and 1-based indices.
    pub fn to_csv(&self) -> String {
        let mut out = String::from("i,alpha,beta\n");
        for (i, s) in self.segments.iter().enumerate() {
            let _ = writeln!(out, "{},{},{}", i + 1, s.alpha, s.beta);
        }
        out
    }

    /// Parses the format written by [`SegmentSet::to_csv`]. Blank lines,
    /// `#` comments and the header are skipped; rows must be in index order.
    /// The working interval is the hull of the segments unless given.
    pub fn from_csv(text: &str, interval: Option<(f64, f64)>) -> Result<Self> {
        let mut segments = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') || line.starts_with("i,") {
                continue;
            }
            let parse_err = |message: String| Error::Parse {
                line: lineno + 1,
                message,
            };
            let fields: Vec<&str> = line.split(',').map(str::trim).collect();
            if fields.len() != 3 {
                return Err(parse_err(format!("expected 3 fields, found {}", fields.len())));
            }
            let idx: usize = fields[0]
                .parse()
                .map_err(|e| parse_err(format!("bad index {:?}: {e}", fields[0])))?;
            if idx != segments.len() + 1 {
                return Err(parse_err(format!("expected index {}, found {idx}", segments.len() + 1)));
            }
            let value = |k: usize| -> Result<f64> {
                fields[k]
                    .parse::<f64>()
                    .map_err(|e| parse_err(format!("bad number {:?}: {e}", fields[k])))
            };
            let (a, b) = (value(1)?, value(2)?);
            segments.push(Segment::new(a, b).map_err(|e| parse_err(e.to_string()))?);
        }
        if segments.is_empty() {
            return Err(Error::Parse {
                line: 0,
                message: "no segments found".into(),
            });
        }
        let interval = interval.unwrap_or_else(|| {
            let lo = segments.iter().map(|s| s.alpha).fold(f64::INFINITY, f64::min);
            let hi = segments.iter().map(|s| s.beta).fold(f64::NEG_INFINITY, f64::max);
            (lo, hi)
        });
        Self::new(segments, interval)
    }
}

/// Increasing affine bijection between two intervals. Interval endpoints map
/// exactly onto the target endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AffineMap {
    from: (f64, f64),
    to: (f64, f64),
}

impl AffineMap {
    pub fn new(from: (f64, f64), to: (f64, f64)) -> Self {
        Self { from, to }
    }

    /// Map of `from` onto `[-1, 1]`.
    pub fn to_reference(from: (f64, f64)) -> Self {
        Self::new(from, (-1.0, 1.0))
    }

    #[inline]
    pub fn apply(&self, x: f64) -> f64 {
        if x == self.from.0 {
            return self.to.0;
        }
        if x == self.from.1 {
            return self.to.1;
        }
        self.to.0 + (x - self.from.0) * ((self.to.1 - self.to.0) / (self.from.1 - self.from.0))
    }

    /// `d(target)/d(source)`.
    #[inline]
    pub fn scale(&self) -> f64 {
        (self.to.1 - self.to.0) / (self.from.1 - self.from.0)
    }

    pub fn inverse(&self) -> Self {
        Self::new(self.to, self.from)
    }
}

/// Strictly increasing interpolation nodes on a working interval.
#[derive(Debug, Clone, PartialEq)]
pub struct NodeSet {
    nodes: Vec<f64>,
    interval: (f64, f64),
}

impl NodeSet {
    pub fn new(nodes: Vec<f64>, interval: (f64, f64)) -> Result<Self> {
        check_interval(interval.0, interval.1)?;
        if nodes.is_empty() {
            return Err(invalid("node set must be non-empty"));
        }
        if nodes.iter().any(|x| !x.is_finite() || *x < interval.0 || *x > interval.1) {
            return Err(invalid("nodes must be finite and inside the interval"));
        }
        if nodes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(invalid("nodes must be distinct and sorted ascending"));
        }
        Ok(Self { nodes, interval })
    }

    /// Chebyshev points `cos((2i-1) pi / (2r))`, sorted ascending.
    pub fn chebyshev(r: usize) -> Result<Self> {
        if r == 0 {
            return Err(invalid("r must be at least 1"));
        }
        let rf = r as f64;
        // sin form gives exact symmetry about 0
        let nodes = (0..r)
            .map(|k| (PI * (2.0 * k as f64 + 1.0 - rf) / (2.0 * rf)).sin())
            .collect();
        Self::new(nodes, (-1.0, 1.0))
    }

    /// `n >= 2` equally spaced nodes including both endpoints.
    pub fn equidistant(n: usize, lo: f64, hi: f64) -> Result<Self> {
        if n < 2 {
            return Err(invalid("equidistant node set needs at least 2 nodes"));
        }
        check_interval(lo, hi)?;
        let mut nodes: Vec<f64> = (0..n)
            .map(|i| lo + (hi - lo) * (i as f64 / (n - 1) as f64))
            .collect();
        nodes[n - 1] = hi;
        Self::new(nodes, (lo, hi))
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn interval(&self) -> (f64, f64) {
        self.interval
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn endpoints(set: &SegmentSet) -> Vec<(f64, f64)> {
        set.segments().iter().map(|s| (s.alpha(), s.beta())).collect()
    }

    fn assert_pairs(actual: &[(f64, f64)], expected: &[(f64, f64)], tol: f64) {
        assert_eq!(actual.len(), expected.len());
        for (a, e) in actual.iter().zip(expected) {
            assert!((a.0 - e.0).abs() <= tol && (a.1 - e.1).abs() <= tol, "{a:?} vs {e:?}");
        }
    }

    #[test]
    fn equidistant_examples() {
        let s = SegmentSet::equidistant(2, -1.0, 1.0).unwrap();
        assert_eq!(endpoints(&s), vec![(-1.0, 0.0), (0.0, 1.0)]);
        assert_eq!(s.class(), SegmentClass::Chain);
        let s = SegmentSet::equidistant(1, -1.0, 1.0).unwrap();
        assert_eq!(endpoints(&s), vec![(-1.0, 1.0)]);
        let s = SegmentSet::equidistant(4, 0.0, 2.0).unwrap();
        assert_eq!(endpoints(&s), vec![(0.0, 0.5), (0.5, 1.0), (1.0, 1.5), (1.5, 2.0)]);
        assert!(SegmentSet::equidistant(0, -1.0, 1.0).is_err());
        assert!(SegmentSet::equidistant(3, 1.0, 1.0).is_err());
    }

    #[test]
    fn chebyshev_lobatto_examples() {
        let s = SegmentSet::chebyshev_lobatto(2).unwrap();
        assert_eq!(endpoints(&s), vec![(-1.0, 0.0), (0.0, 1.0)]);
        let s = SegmentSet::chebyshev_lobatto(1).unwrap();
        assert_eq!(endpoints(&s), vec![(-1.0, 1.0)]);
        let s = SegmentSet::chebyshev_lobatto(3).unwrap();
        for (i, len) in s.lengths().into_iter().enumerate() {
            let closed = 2.0 * (PI / 6.0).sin() * ((2 * i + 1) as f64 * PI / 6.0).sin();
            assert!((len - closed).abs() < 1e-15);
        }
        assert_pairs(&s.lengths().iter().map(|&l| (l, 0.0)).collect::<Vec<_>>(), &[(0.5, 0.0), (1.0, 0.0), (0.5, 0.0)], 1e-15);
        let arc = s.arc().unwrap();
        assert!((arc.rho() - PI / 6.0).abs() < 1e-16);
    }

    #[test]
    fn cl_overlapping_examples() {
        let s = SegmentSet::cl_overlapping(2).unwrap();
        assert_eq!(endpoints(&s), vec![(-1.0, 0.0), (-1.0, 1.0)]);
        assert_eq!(s.class(), SegmentClass::LeftAnchored);
        let s = SegmentSet::cl_overlapping(1).unwrap();
        assert_eq!(endpoints(&s), vec![(-1.0, 1.0)]);
        let s = SegmentSet::cl_overlapping(3).unwrap();
        assert_pairs(&endpoints(&s), &[(-1.0, -0.5), (-1.0, 0.5), (-1.0, 1.0)], 1e-15);
    }

    #[test]
    fn arc_uniform_examples() {
        let s = SegmentSet::arc_uniform(&[PI / 2.0], PI / 4.0).unwrap();
        let h = 0.5f64.sqrt();
        assert_pairs(&endpoints(&s), &[(-h, h)], 1e-15);
        assert!((s.lengths()[0] - 2.0 * (PI / 4.0).sin()).abs() < 1e-15);

        let s = SegmentSet::arc_uniform(&[PI / 2.0], 1e-6).unwrap();
        let seg = s.segments()[0];
        assert!((seg.len() - 2e-6).abs() < 1e-15);
        assert!(seg.midpoint().abs() < 1e-15);

        assert!(SegmentSet::arc_uniform(&[1.0, 0.5], 0.1).is_err());
        assert!(SegmentSet::arc_uniform(&[1.0], 0.0).is_err());
        assert!(SegmentSet::arc_uniform(&[1.0], PI).is_err());
        assert!(SegmentSet::arc_uniform(&[0.0, 1.0], 0.1).is_err());
    }

    #[test]
    fn arc_uniform_folds_arcs_crossing_zero() {
        // tau - rho < 0: still a valid segment of length 2 sin(tau) sin(rho)
        let s = SegmentSet::arc_uniform(&[PI / 3.0, 2.0 * PI / 3.0], PI / 2.0).unwrap();
        for (seg, tau) in s.segments().iter().zip([PI / 3.0, 2.0 * PI / 3.0]) {
            assert!((seg.len() - 2.0 * tau.sin()).abs() < 1e-15);
        }
    }

    #[test]
    fn cl_equals_arc_uniform_with_cl_midpoints() {
        for r in 1..=40 {
            let cl = SegmentSet::chebyshev_lobatto(r).unwrap();
            let arc = SegmentSet::arc_uniform_cl_midpoints(r, 0.5).unwrap();
            let mut a = endpoints(&arc);
            a.reverse();
            assert_pairs(&a, &endpoints(&cl), 1e-14);
        }
    }

    #[test]
    fn nonoverlap_examples() {
        assert!(SegmentSet::equidistant(5, -1.0, 1.0).unwrap().is_nonoverlapping());
        assert!(!SegmentSet::cl_overlapping(3).unwrap().is_nonoverlapping());
        let s = SegmentSet::arc_uniform(&[PI / 3.0, 2.0 * PI / 3.0], PI / 4.0).unwrap();
        assert!(!s.is_nonoverlapping());
    }

    #[test]
    fn affine_map_examples() {
        let s = SegmentSet::equidistant(2, -1.0, 1.0).unwrap();
        assert_eq!(s.affine_map((-1.0, 1.0)).unwrap(), s);
        let m = s.affine_map((0.0, 1.0)).unwrap();
        assert_eq!(endpoints(&m), vec![(0.0, 0.5), (0.5, 1.0)]);
        let cl = SegmentSet::chebyshev_lobatto(3).unwrap().affine_map((0.0, 2.0)).unwrap();
        assert_eq!(cl.class(), SegmentClass::Chain);
        assert_eq!(cl.family(), Family::ChebyshevLobatto);
        let arc = SegmentSet::arc_uniform(&[1.0, 2.0], 0.3).unwrap().affine_map((0.0, 1.0)).unwrap();
        assert_eq!(arc.class(), SegmentClass::General);
        assert!(s.affine_map((1.0, 0.0)).is_err());
    }

    #[test]
    fn class_detection() {
        let chain = SegmentSet::from_endpoints(&[(0.0, 0.3), (0.3, 1.0)], (0.0, 1.0)).unwrap();
        assert_eq!(chain.class(), SegmentClass::Chain);
        // gap: not a chain
        let gap = SegmentSet::from_endpoints(&[(0.0, 0.3), (0.4, 1.0)], (0.0, 1.0)).unwrap();
        assert_eq!(gap.class(), SegmentClass::General);
        let nested = SegmentSet::from_endpoints(&[(0.0, 0.3), (0.0, 1.0)], (0.0, 1.0)).unwrap();
        assert_eq!(nested.class(), SegmentClass::LeftAnchored);
        assert!(SegmentSet::from_endpoints(&[(0.0, 2.0)], (0.0, 1.0)).is_err());
        assert!(SegmentSet::from_endpoints(&[], (0.0, 1.0)).is_err());
        assert!(Segment::new(1.0, 1.0).is_err());
    }

    #[test]
    fn csv_round_trip_and_errors() {
        let s = SegmentSet::chebyshev_lobatto(7).unwrap();
        let back = SegmentSet::from_csv(&s.to_csv(), None).unwrap();
        assert_eq!(endpoints(&back), endpoints(&s));
        assert_eq!(back.class(), SegmentClass::Chain);

        let err = SegmentSet::from_csv("i,alpha,beta\n1,0,1\n3,1,2\n", None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, .. }));
        let err = SegmentSet::from_csv("1,0.5,0.25\n", None).unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, .. }));
        assert!(SegmentSet::from_csv("# nothing\n", None).is_err());
    }

    #[test]
    fn node_sets() {
        let c = NodeSet::chebyshev(3).unwrap();
        assert_eq!(c.nodes()[1], 0.0);
        assert!(NodeSet::new(vec![0.0, 0.0], (-1.0, 1.0)).is_err());
        assert!(NodeSet::new(vec![0.5, 0.0], (-1.0, 1.0)).is_err());
        let e = NodeSet::equidistant(3, -1.0, 1.0).unwrap();
        assert_eq!(e.nodes(), &[-1.0, 0.0, 1.0]);
    }
}
