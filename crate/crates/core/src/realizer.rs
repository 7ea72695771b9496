//! Two interval orders whose intersection is the gadget poset, realized on
//! an explicit integer grid.
//!
//! Core vertices become points and subdivision vertices become intervals
//! straddling the origin. With `K = m + 1` slots of width `K` (m the number
//! of subdivision vertices), side A sits left of the origin and side B right
//! of it in the first representation; the second representation reverses
//! the order within each side. Each subdivision interval starts just right
//! of its A-endpoint and ends just left of its B-endpoint, offset by its
//! 1-based rank among the intervals sharing that endpoint, so all required
//! inequalities are strict by at least one integer step.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::poset::{build_gadget_poset, Poset};
use crate::reduction::{Side, TripartiteGadget};

/// A closed integer interval `[lo, hi]`; `lo == hi` is a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Interval {
    pub lo: i64,
    pub hi: i64,
}

impl Interval {
    pub fn new(lo: i64, hi: i64) -> Self {
        assert!(lo <= hi, "interval [{lo}, {hi}] is inverted");
        Interval { lo, hi }
    }

    pub fn point(p: i64) -> Self {
        Interval { lo: p, hi: p }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    /// Strictly-before relation that defines interval orders.
    pub fn precedes(&self, other: &Interval) -> bool {
        self.hi < other.lo
    }

    pub fn contains(&self, p: i64) -> bool {
        self.lo <= p && p <= self.hi
    }

    pub fn contains_strictly(&self, p: i64) -> bool {
        self.lo < p && p < self.hi
    }
}

/// The origin coordinate shared by both representations.
pub const ORIGIN: i64 = 0;

/// One interval per element; `index` records which of the two orders this
/// representation belongs to.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntervalRepresentation {
    index: u8,
    intervals: Vec<Interval>,
}

impl IntervalRepresentation {
    pub fn new(index: u8, intervals: Vec<Interval>) -> Self {
        assert!(index == 1 || index == 2, "representation index must be 1 or 2");
        IntervalRepresentation { index, intervals }
    }

    pub fn index(&self) -> u8 {
        self.index
    }

    pub fn element_count(&self) -> usize {
        self.intervals.len()
    }

    pub fn interval(&self, x: usize) -> Interval {
        self.intervals[x]
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    /// The strict order `x < y iff the interval of x ends before the
    /// interval of y begins`. Interval orders are irreflexive, antisymmetric,
    /// and transitive by construction.
    pub fn interval_order_relation(&self) -> Poset {
        let n = self.intervals.len();
        let mut pairs = Vec::new();
        for x in 0..n {
            for y in 0..n {
                if x != y && self.intervals[x].precedes(&self.intervals[y]) {
                    pairs.push((x, y));
                }
            }
        }
        Poset::new(n, pairs)
    }
}

/// A pair of interval representations together with the poset their
/// intersection is meant to equal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Realizer {
    pub rep1: IntervalRepresentation,
    pub rep2: IntervalRepresentation,
    pub target: Poset,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealizerError {
    #[error("poset does not match the gadget poset of the given tripartite graph")]
    PosetMismatch,
}

/// Builds the two interval orders realizing the gadget poset on the integer
/// grid described at module level.
pub fn build_realizer(h: &TripartiteGadget, p: &Poset) -> Result<Realizer, RealizerError> {
    let expected = build_gadget_poset(h);
    if expected.element_count() != p.element_count()
        || expected.pairs().ne(p.pairs())
    {
        return Err(RealizerError::PosetMismatch);
    }

    let n = h.graph().vertex_count();
    let s = h.side_a().len() as i64;
    let t = h.side_b().len() as i64;
    let m = h.side_c().len();
    let slot = m as i64 + 1;

    // 1-based positions within each side.
    let mut pos_a = vec![0i64; n];
    let mut pos_b = vec![0i64; n];
    for (i, &a) in h.side_a().iter().enumerate() {
        pos_a[a] = i as i64 + 1;
    }
    for (j, &b) in h.side_b().iter().enumerate() {
        pos_b[b] = j as i64 + 1;
    }

    // 1-based rank of each subdivision vertex among those sharing its
    // A-endpoint (ordered by B-position) and its B-endpoint (ordered by
    // A-position).
    let mut rank_a = vec![0i64; n];
    let mut rank_b = vec![0i64; n];
    for &a in h.side_a() {
        let mut group: Vec<(i64, usize)> = h
            .origin_map()
            .iter()
            .filter(|&(_, &(oa, _))| oa == a)
            .map(|(&c, &(_, ob))| (pos_b[ob], c))
            .collect();
        group.sort_unstable();
        for (k, &(_, c)) in group.iter().enumerate() {
            rank_a[c] = k as i64 + 1;
        }
    }
    for &b in h.side_b() {
        let mut group: Vec<(i64, usize)> = h
            .origin_map()
            .iter()
            .filter(|&(_, &(_, ob))| ob == b)
            .map(|(&c, &(oa, _))| (pos_a[oa], c))
            .collect();
        group.sort_unstable();
        for (k, &(_, c)) in group.iter().enumerate() {
            rank_b[c] = k as i64 + 1;
        }
    }

    let mut intervals1 = vec![Interval::point(0); n];
    let mut intervals2 = vec![Interval::point(0); n];
    for &a in h.side_a() {
        let i = pos_a[a];
        intervals1[a] = Interval::point((i - s - 1) * slot);
        intervals2[a] = Interval::point(-i * slot);
    }
    for &b in h.side_b() {
        let j = pos_b[b];
        intervals1[b] = Interval::point(j * slot);
        intervals2[b] = Interval::point((t - j + 1) * slot);
    }
    for (&c, &(a, b)) in h.origin_map() {
        intervals1[c] = Interval::new(
            intervals1[a].lo + rank_a[c],
            intervals1[b].lo - rank_b[c],
        );
        intervals2[c] = Interval::new(
            intervals2[a].lo + rank_a[c],
            intervals2[b].lo - rank_b[c],
        );
    }

    let realizer = Realizer {
        rep1: IntervalRepresentation::new(1, intervals1),
        rep2: IntervalRepresentation::new(2, intervals2),
        target: p.clone(),
    };
    debug_assert!(verify_realizes(&realizer).is_clean());
    Ok(realizer)
}

/// One ordered pair on which the realizer disagrees with its target.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RealizeViolation {
    pub x: usize,
    pub y: usize,
    pub in_target: bool,
    pub in_rep1: bool,
    pub in_rep2: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct RealizeReport {
    pub violations: Vec<RealizeViolation>,
}

impl RealizeReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Exhaustively checks, over all ordered pairs, that `x < y` in the target
/// exactly when `x` precedes `y` in both representations.
pub fn verify_realizes(r: &Realizer) -> RealizeReport {
    let n = r.target.element_count();
    let mut report = RealizeReport::default();
    for x in 0..n {
        for y in 0..n {
            if x == y {
                continue;
            }
            let in_rep1 = r.rep1.interval(x).precedes(&r.rep1.interval(y));
            let in_rep2 = r.rep2.interval(x).precedes(&r.rep2.interval(y));
            let in_target = r.target.lt(x, y);
            if in_target != (in_rep1 && in_rep2) {
                report.violations.push(RealizeViolation { x, y, in_target, in_rep1, in_rep2 });
            }
        }
    }
    report
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PlacementReport {
    pub violations: Vec<String>,
}

impl PlacementReport {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Checks the realizer's placement inequalities literally on the integer
/// grid: the point orderings of both representations (side A strictly left
/// of the origin, side B strictly right, with the second representation
/// reversing each side) and, for every subdivision vertex with endpoints
/// `(a_i, b_j)`, the chains
///
/// ```text
/// p1(a_i) < l1(c) < p1(a_{i+1}) <= 0 <= p1(b_{j-1}) < r1(c) < p1(b_j)
/// p2(a_i) < l2(c) < p2(a_{i-1}) <= 0 <= p2(b_{j+1}) < r2(c) < p2(b_j)
/// ```
///
/// with the boundary conventions `p1(a_{s+1}) = p1(b_0) = 0` and
/// `p2(a_0) = p2(b_{t+1}) = 0`.
pub fn verify_placement(h: &TripartiteGadget, r: &Realizer) -> PlacementReport {
    let mut report = PlacementReport::default();
    let mut flag = |ok: bool, msg: String| {
        if !ok {
            report.violations.push(msg);
        }
    };

    let s = h.side_a().len();
    let t = h.side_b().len();
    let p1 = |v: usize| r.rep1.interval(v).lo;
    let p2 = |v: usize| r.rep2.interval(v).lo;

    for &v in h.side_a().iter().chain(h.side_b()) {
        flag(
            r.rep1.interval(v).is_point() && r.rep2.interval(v).is_point(),
            format!("core vertex {v} is not a point in both representations"),
        );
    }

    // Point ordering, representation 1: a_1 < ... < a_s < 0 < b_1 < ... < b_t.
    let mut chain1: Vec<i64> = h.side_a().iter().map(|&a| p1(a)).collect();
    chain1.push(ORIGIN);
    chain1.extend(h.side_b().iter().map(|&b| p1(b)));
    flag(
        chain1.windows(2).all(|w| w[0] < w[1]),
        format!("representation 1 point ordering violated: {chain1:?}"),
    );

    // Point ordering, representation 2: a_s < ... < a_1 < 0 < b_t < ... < b_1.
    let mut chain2: Vec<i64> = h.side_a().iter().rev().map(|&a| p2(a)).collect();
    chain2.push(ORIGIN);
    chain2.extend(h.side_b().iter().rev().map(|&b| p2(b)));
    flag(
        chain2.windows(2).all(|w| w[0] < w[1]),
        format!("representation 2 point ordering violated: {chain2:?}"),
    );

    for (&c, &(a, b)) in h.origin_map() {
        let i = h.side_a().iter().position(|&x| x == a).unwrap();
        let j = h.side_b().iter().position(|&x| x == b).unwrap();
        let iv1 = r.rep1.interval(c);
        let iv2 = r.rep2.interval(c);

        // Boundary conventions: one slot past the last A-point (rep 1) or
        // before the first (rep 2) is the origin, and symmetrically for B.
        let p1_a_next = if i + 1 < s { p1(h.side_a()[i + 1]) } else { ORIGIN };
        let p1_b_prev = if j > 0 { p1(h.side_b()[j - 1]) } else { ORIGIN };
        let p2_a_prev = if i > 0 { p2(h.side_a()[i - 1]) } else { ORIGIN };
        let p2_b_next = if j + 1 < t { p2(h.side_b()[j + 1]) } else { ORIGIN };

        let chain_1 = p1(a) < iv1.lo
            && iv1.lo < p1_a_next
            && p1_a_next <= ORIGIN
            && ORIGIN <= p1_b_prev
            && p1_b_prev < iv1.hi
            && iv1.hi < p1(b);
        flag(chain_1, format!("representation 1 chain violated at subdivision vertex {c}"));

        let chain_2 = p2(a) < iv2.lo
            && iv2.lo < p2_a_prev
            && p2_a_prev <= ORIGIN
            && ORIGIN <= p2_b_next
            && p2_b_next < iv2.hi
            && iv2.hi < p2(b);
        flag(chain_2, format!("representation 2 chain violated at subdivision vertex {c}"));

        flag(
            iv1.contains_strictly(ORIGIN) && iv2.contains_strictly(ORIGIN),
            format!("subdivision interval of {c} does not strictly contain the origin"),
        );
    }

    report
}

/// Flat serialization record shared by the realizer and trapezoid formats.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizerElement {
    pub id: usize,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub label: Option<String>,
    pub side: Side,
    pub interval1: (i64, i64),
    pub interval2: (i64, i64),
}

/// Serializable view of a realizer: per element its label, side, and both
/// intervals, plus the (always zero) origin.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RealizerDoc {
    pub origin: i64,
    pub elements: Vec<RealizerElement>,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum RealizerDocError {
    #[error("element ids are not exactly 0..{expected}")]
    NonDenseIds { expected: usize },
    #[error("element {id} has inverted interval")]
    InvertedInterval { id: usize },
}

impl RealizerDoc {
    pub fn from_realizer(r: &Realizer, h: &TripartiteGadget) -> Self {
        let elements = (0..r.target.element_count())
            .map(|v| {
                let i1 = r.rep1.interval(v);
                let i2 = r.rep2.interval(v);
                RealizerElement {
                    id: v,
                    label: h.graph().label(v).map(str::to_string),
                    side: h.side_of(v),
                    interval1: (i1.lo, i1.hi),
                    interval2: (i2.lo, i2.hi),
                }
            })
            .collect();
        RealizerDoc { origin: ORIGIN, elements }
    }

    /// Rebuilds the two representations (and the label table) from the
    /// document. The realized poset is recomputed as the intersection of
    /// the two interval orders.
    pub fn to_realizer(&self) -> Result<(Realizer, Vec<Option<String>>), RealizerDocError> {
        let n = self.elements.len();
        let mut seen = vec![false; n];
        for e in &self.elements {
            if e.id >= n || seen[e.id] {
                return Err(RealizerDocError::NonDenseIds { expected: n });
            }
            seen[e.id] = true;
            if e.interval1.0 > e.interval1.1 || e.interval2.0 > e.interval2.1 {
                return Err(RealizerDocError::InvertedInterval { id: e.id });
            }
        }
        let mut intervals1 = vec![Interval::point(0); n];
        let mut intervals2 = vec![Interval::point(0); n];
        let mut labels = vec![None; n];
        for e in &self.elements {
            intervals1[e.id] = Interval::new(e.interval1.0, e.interval1.1);
            intervals2[e.id] = Interval::new(e.interval2.0, e.interval2.1);
            labels[e.id] = e.label.clone();
        }
        let rep1 = IntervalRepresentation::new(1, intervals1);
        let rep2 = IntervalRepresentation::new(2, intervals2);
        let target = intersection_order(&rep1, &rep2);
        Ok((Realizer { rep1, rep2, target }, labels))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    /// Plain-text form: a header line, then one line per element.
    pub fn to_text(&self) -> String {
        let mut out = format!("realizer origin={}\n", self.origin);
        for e in &self.elements {
            out.push_str(&format!(
                "{} {} {} [{},{}] [{},{}]\n",
                e.id,
                e.label.as_deref().unwrap_or("-"),
                e.side,
                e.interval1.0,
                e.interval1.1,
                e.interval2.0,
                e.interval2.1,
            ));
        }
        out
    }
}

/// The poset realized by a pair of representations: related exactly when
/// related in both.
pub fn intersection_order(rep1: &IntervalRepresentation, rep2: &IntervalRepresentation) -> Poset {
    assert_eq!(rep1.element_count(), rep2.element_count());
    let n = rep1.element_count();
    let mut pairs = Vec::new();
    for x in 0..n {
        for y in 0..n {
            if x != y
                && rep1.interval(x).precedes(&rep1.interval(y))
                && rep2.interval(x).precedes(&rep2.interval(y))
            {
                pairs.push((x, y));
            }
        }
    }
    Poset::new(n, pairs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::test_fixtures::reference_bipartite;
    use crate::reduction::reduce;

    fn reference_realizer() -> (TripartiteGadget, Realizer) {
        let h = reduce(&reference_bipartite()).unwrap();
        let p = build_gadget_poset(&h);
        let r = build_realizer(&h, &p).unwrap();
        (h, r)
    }

    #[test]
    fn reference_core_points() {
        let (_, r) = reference_realizer();
        // Side A occupies ids 0..3, side B ids 3..6; slot width is 6.
        let p1: Vec<i64> = (0..6).map(|v| r.rep1.interval(v).lo).collect();
        assert_eq!(p1, vec![-18, -12, -6, 6, 12, 18]);
        let p2: Vec<i64> = (0..6).map(|v| r.rep2.interval(v).lo).collect();
        assert_eq!(p2, vec![-6, -12, -18, 18, 12, 6]);
    }

    #[test]
    fn reference_subdivision_intervals() {
        let (h, r) = reference_realizer();
        // Edges in (A-position, B-position) order: 11, 12, 22, 23, 33.
        let expected1 = [(-17, 5), (-16, 11), (-11, 10), (-10, 17), (-5, 16)];
        let expected2 = [(-5, 17), (-4, 11), (-11, 10), (-10, 5), (-17, 4)];
        for (k, &c) in h.side_c().iter().enumerate() {
            let i1 = r.rep1.interval(c);
            let i2 = r.rep2.interval(c);
            assert_eq!((i1.lo, i1.hi), expected1[k], "rep1 interval of c{}", k + 1);
            assert_eq!((i2.lo, i2.hi), expected2[k], "rep2 interval of c{}", k + 1);
        }
    }

    #[test]
    fn subdivision_intervals_straddle_origin() {
        let (h, r) = reference_realizer();
        for &c in h.side_c() {
            assert!(r.rep1.interval(c).contains_strictly(ORIGIN));
            assert!(r.rep2.interval(c).contains_strictly(ORIGIN));
        }
    }

    #[test]
    fn core_pairs_are_comparable_in_both_orders() {
        let (h, r) = reference_realizer();
        for &a in h.side_a() {
            for &b in h.side_b() {
                assert!(r.rep1.interval(a).precedes(&r.rep1.interval(b)));
                assert!(r.rep2.interval(a).precedes(&r.rep2.interval(b)));
            }
        }
    }

    #[test]
    fn interval_order_basic_cases() {
        let rep = IntervalRepresentation::new(1, vec![Interval::new(0, 1), Interval::new(2, 3)]);
        let p = rep.interval_order_relation();
        assert_eq!(p.pairs().collect::<Vec<_>>(), vec![(0, 1)]);

        let nested = IntervalRepresentation::new(1, vec![Interval::new(0, 3), Interval::new(1, 2)]);
        assert_eq!(nested.interval_order_relation().pair_count(), 0);
    }

    #[test]
    fn interval_orders_satisfy_the_axioms() {
        let (_, r) = reference_realizer();
        assert!(r.rep1.interval_order_relation().verify_axioms().is_clean());
        assert!(r.rep2.interval_order_relation().verify_axioms().is_clean());
    }

    #[test]
    fn intersection_of_orders_is_the_target() {
        let (_, r) = reference_realizer();
        let meet = intersection_order(&r.rep1, &r.rep2);
        assert_eq!(meet.pairs().collect::<Vec<_>>(), r.target.pairs().collect::<Vec<_>>());
    }

    #[test]
    fn verify_realizes_is_clean_on_construction() {
        let (_, r) = reference_realizer();
        assert!(verify_realizes(&r).is_clean());
    }

    #[test]
    fn verify_placement_is_clean_on_construction() {
        let (h, r) = reference_realizer();
        assert!(verify_placement(&h, &r).violations.is_empty());
    }

    #[test]
    fn endpoint_coordinates_are_distinct_where_required() {
        let (h, r) = reference_realizer();
        for rep in [&r.rep1, &r.rep2] {
            // Left endpoints of subdivision intervals are pairwise distinct
            // within a group sharing an A-endpoint; same for rights over B.
            for &a in h.side_a() {
                let mut lefts: Vec<i64> = h
                    .origin_map()
                    .iter()
                    .filter(|&(_, &(oa, _))| oa == a)
                    .map(|(&c, _)| rep.interval(c).lo)
                    .collect();
                let before = lefts.len();
                lefts.sort_unstable();
                lefts.dedup();
                assert_eq!(lefts.len(), before);
            }
            for &b in h.side_b() {
                let mut rights: Vec<i64> = h
                    .origin_map()
                    .iter()
                    .filter(|&(_, &(_, ob))| ob == b)
                    .map(|(&c, _)| rep.interval(c).hi)
                    .collect();
                let before = rights.len();
                rights.sort_unstable();
                rights.dedup();
                assert_eq!(rights.len(), before);
            }
        }
    }

    #[test]
    fn shifted_interval_breaks_the_realizer() {
        let (h, mut r) = reference_realizer();
        // Drag the first subdivision interval fully left of the origin in
        // both representations; it then precedes another subdivision
        // interval in both orders, a pair the target keeps incomparable.
        let c1 = h.side_c()[0];
        let mut iv1 = r.rep1.intervals().to_vec();
        let mut iv2 = r.rep2.intervals().to_vec();
        iv1[c1] = Interval::new(-17, -16);
        iv2[c1] = Interval::new(-17, -12);
        r.rep1 = IntervalRepresentation::new(1, iv1);
        r.rep2 = IntervalRepresentation::new(2, iv2);

        let report = verify_realizes(&r);
        assert!(!report.is_clean());
        assert!(report.violations.iter().any(|v| {
            h.side_c().contains(&v.x) && h.side_c().contains(&v.y) && !v.in_target
        }));
    }

    #[test]
    fn antichain_with_overlapping_reps_is_clean() {
        let all = vec![Interval::new(0, 10); 4];
        let r = Realizer {
            rep1: IntervalRepresentation::new(1, all.clone()),
            rep2: IntervalRepresentation::new(2, all),
            target: Poset::new(4, []),
        };
        assert!(verify_realizes(&r).is_clean());
    }

    #[test]
    fn build_realizer_rejects_mismatched_poset() {
        let h = reduce(&reference_bipartite()).unwrap();
        let wrong = Poset::new(11, [(0, 1)]);
        assert_eq!(build_realizer(&h, &wrong).unwrap_err(), RealizerError::PosetMismatch);
    }

    #[test]
    fn document_roundtrip() {
        let (h, r) = reference_realizer();
        let doc = RealizerDoc::from_realizer(&r, &h);
        let json = doc.to_json();
        let parsed = RealizerDoc::from_json(&json).unwrap();
        assert_eq!(parsed, doc);
        let (back, labels) = parsed.to_realizer().unwrap();
        assert_eq!(back.rep1, r.rep1);
        assert_eq!(back.rep2, r.rep2);
        // The recomputed target is the intersection order, which the
        // construction guarantees equals the gadget poset.
        assert_eq!(
            back.target.pairs().collect::<Vec<_>>(),
            r.target.pairs().collect::<Vec<_>>()
        );
        assert_eq!(labels[0].as_deref(), Some("a1"));
    }

    #[test]
    fn document_rejects_inverted_interval() {
        let doc = RealizerDoc {
            origin: 0,
            elements: vec![RealizerElement {
                id: 0,
                label: None,
                side: Side::C,
                interval1: (3, 1),
                interval2: (0, 0),
            }],
        };
        assert!(matches!(
            doc.to_realizer().unwrap_err(),
            RealizerDocError::InvertedInterval { id: 0 }
        ));
    }
}
