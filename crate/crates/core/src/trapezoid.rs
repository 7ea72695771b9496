//! Trapezoid representations on two parallel lines: the intersection model,
//! the bridge from a realizer to a trapezoid representation of the
//! complement, and SVG rendering.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::Graph;
use crate::realizer::{verify_realizes, Interval, RealizeReport, Realizer, RealizerDoc};

/// A trapezoid spanning the two lines: `top` lies on L1 and `bottom` on L2.
/// Either interval may be a point, degenerating the trapezoid to a
/// triangle, a segment, or a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Trapezoid {
    pub top: Interval,
    pub bottom: Interval,
}

impl Trapezoid {
    pub fn new(top: Interval, bottom: Interval) -> Self {
        Trapezoid { top, bottom }
    }

    /// Degenerate on both lines: a segment or a point.
    pub fn is_segment(&self) -> bool {
        self.top.is_point() && self.bottom.is_point()
    }
}

/// Closed-region intersection test. Two trapezoids spanning the same pair
/// of lines are disjoint exactly when one lies strictly left of the other
/// on both lines; anything else (including touching at a single point)
/// counts as intersecting.
pub fn trapezoids_intersect(t1: &Trapezoid, t2: &Trapezoid) -> bool {
    let strictly_left = |x: &Trapezoid, y: &Trapezoid| {
        x.top.precedes(&y.top) && x.bottom.precedes(&y.bottom)
    };
    !(strictly_left(t1, t2) || strictly_left(t2, t1))
}

/// One trapezoid per vertex, with optional display labels.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrapezoidRepresentation {
    trapezoids: Vec<Trapezoid>,
    labels: Vec<Option<String>>,
}

impl TrapezoidRepresentation {
    pub fn new(trapezoids: Vec<Trapezoid>) -> Self {
        let labels = vec![None; trapezoids.len()];
        TrapezoidRepresentation { trapezoids, labels }
    }

    pub fn with_labels(mut self, labels: Vec<Option<String>>) -> Self {
        assert_eq!(labels.len(), self.trapezoids.len());
        self.labels = labels;
        self
    }

    pub fn vertex_count(&self) -> usize {
        self.trapezoids.len()
    }

    pub fn trapezoid(&self, v: usize) -> Trapezoid {
        self.trapezoids[v]
    }

    pub fn trapezoids(&self) -> &[Trapezoid] {
        &self.trapezoids
    }

    pub fn label(&self, v: usize) -> Option<&str> {
        self.labels[v].as_deref()
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TrapezoidError {
    #[error("realizer does not realize its target poset ({violations} violating pairs)")]
    InvalidRealizer { violations: usize },
}

/// Reads each vertex's two intervals off a verified realizer as a trapezoid
/// between the lines. Comparable pairs of the realized poset become
/// disjoint trapezoids, so the intersection graph is the complement of the
/// poset's comparability graph.
pub fn from_realizer(r: &Realizer) -> Result<TrapezoidRepresentation, TrapezoidError> {
    let report: RealizeReport = verify_realizes(r);
    if !report.is_clean() {
        return Err(TrapezoidError::InvalidRealizer { violations: report.violations.len() });
    }
    let trapezoids = (0..r.target.element_count())
        .map(|v| Trapezoid::new(r.rep1.interval(v), r.rep2.interval(v)))
        .collect();
    Ok(TrapezoidRepresentation::new(trapezoids))
}

/// Graph on the trapezoid index set with edges exactly where trapezoids
/// intersect.
pub fn intersection_graph(t: &TrapezoidRepresentation) -> Graph {
    let n = t.vertex_count();
    let mut edges = Vec::new();
    for u in 0..n {
        for v in (u + 1)..n {
            if trapezoids_intersect(&t.trapezoids[u], &t.trapezoids[v]) {
                edges.push((u, v));
            }
        }
    }
    Graph::from_edges(n, edges)
        .expect("intersection pairs are valid vertex pairs")
        .with_labels(t.labels.clone())
}

/// Serialized trapezoid representation: the realizer document keyed under
/// a `trapezoid` wrapper, with `interval1` on the top line and `interval2`
/// on the bottom line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TrapezoidDoc {
    pub trapezoid: RealizerDoc,
}

impl TrapezoidDoc {
    pub fn new(inner: RealizerDoc) -> Self {
        TrapezoidDoc { trapezoid: inner }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("document serialization cannot fail")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn to_text(&self) -> String {
        let mut out = format!("trapezoid origin={}\n", self.trapezoid.origin);
        for e in &self.trapezoid.elements {
            out.push_str(&format!(
                "{} {} {} top=[{},{}] bottom=[{},{}]\n",
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

/// Rendering options for [`render_svg`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RenderOptions {
    pub width: u32,
    pub height: u32,
    pub labels: bool,
}

impl Default for RenderOptions {
    fn default() -> Self {
        RenderOptions { width: 1000, height: 400, labels: true }
    }
}

/// Deterministic SVG drawing: the top line carries every `top` interval,
/// the bottom line every `bottom` interval, the origin is marked with a
/// dashed vertical, and each vertex becomes a polygon (or a line when
/// degenerate on both lines). Data coordinates are scaled affinely into
/// the viewport.
pub fn render_svg(t: &TrapezoidRepresentation, options: &RenderOptions) -> String {
    let width = f64::from(options.width);
    let height = f64::from(options.height);
    let top_y = height * 0.22;
    let bottom_y = height * 0.78;
    let margin = 48.0;

    let mut min_x = 0i64;
    let mut max_x = 0i64;
    for tz in &t.trapezoids {
        for iv in [tz.top, tz.bottom] {
            min_x = min_x.min(iv.lo);
            max_x = max_x.max(iv.hi);
        }
    }
    let span = (max_x - min_x).max(1) as f64;
    let scale_x = move |x: i64| margin + ((x - min_x) as f64 / span) * (width - 2.0 * margin);

    let fmt = |v: f64| format!("{v:.2}");
    let mut svg = String::new();
    svg.push_str("<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n");
    svg.push_str(&format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"{}\" height=\"{}\" viewBox=\"0 0 {} {}\">\n",
        options.width, options.height, options.width, options.height
    ));

    for (y, name) in [(top_y, "L1"), (bottom_y, "L2")] {
        svg.push_str(&format!(
            "  <line class=\"axis\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#444\" stroke-width=\"1\"/>\n",
            fmt(margin * 0.25),
            fmt(y),
            fmt(width - margin * 0.25),
            fmt(y)
        ));
        if options.labels {
            svg.push_str(&format!(
                "  <text class=\"axis-label\" x=\"{}\" y=\"{}\" font-size=\"12\">{}</text>\n",
                fmt(margin * 0.25),
                fmt(y - 6.0),
                name
            ));
        }
    }

    let origin_x = scale_x(0);
    svg.push_str(&format!(
        "  <line class=\"origin\" x1=\"{0}\" y1=\"{1}\" x2=\"{0}\" y2=\"{2}\" stroke=\"#999\" stroke-width=\"1\" stroke-dasharray=\"4 3\"/>\n",
        fmt(origin_x),
        fmt(top_y - 14.0),
        fmt(bottom_y + 14.0)
    ));
    if options.labels {
        svg.push_str(&format!(
            "  <text class=\"origin-label\" x=\"{}\" y=\"{}\" font-size=\"12\">o</text>\n",
            fmt(origin_x + 3.0),
            fmt(bottom_y + 26.0)
        ));
    }

    for (v, tz) in t.trapezoids.iter().enumerate() {
        if tz.is_segment() {
            svg.push_str(&format!(
                "  <line class=\"segment\" x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"#1f4e8c\" stroke-width=\"2\"/>\n",
                fmt(scale_x(tz.top.lo)),
                fmt(top_y),
                fmt(scale_x(tz.bottom.lo)),
                fmt(bottom_y)
            ));
        } else {
            svg.push_str(&format!(
                "  <polygon class=\"trapezoid\" points=\"{},{} {},{} {},{} {},{}\" fill=\"#d98a29\" fill-opacity=\"0.18\" stroke=\"#b26a10\" stroke-width=\"1.5\"/>\n",
                fmt(scale_x(tz.top.lo)),
                fmt(top_y),
                fmt(scale_x(tz.top.hi)),
                fmt(top_y),
                fmt(scale_x(tz.bottom.hi)),
                fmt(bottom_y),
                fmt(scale_x(tz.bottom.lo)),
                fmt(bottom_y)
            ));
        }
        if options.labels {
            let anchor = scale_x(tz.top.lo);
            svg.push_str(&format!(
                "  <text class=\"label\" x=\"{}\" y=\"{}\" font-size=\"11\">{}</text>\n",
                fmt(anchor),
                fmt(top_y - 8.0),
                match t.label(v) {
                    Some(s) => s.to_string(),
                    None => v.to_string(),
                }
            ));
        }
    }

    svg.push_str("</svg>\n");
    svg
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poset::build_gadget_poset;
    use crate::realizer::build_realizer;
    use crate::reduction::test_fixtures::reference_bipartite;
    use crate::reduction::reduce;

    fn trap(t: (i64, i64), b: (i64, i64)) -> Trapezoid {
        Trapezoid::new(Interval::new(t.0, t.1), Interval::new(b.0, b.1))
    }

    fn reference_pipeline() -> (crate::reduction::TripartiteGadget, TrapezoidRepresentation) {
        let h = reduce(&reference_bipartite()).unwrap();
        let p = build_gadget_poset(&h);
        let r = build_realizer(&h, &p).unwrap();
        let t = from_realizer(&r).unwrap();
        (h, t)
    }

    #[test]
    fn identical_trapezoids_intersect() {
        let t = trap((0, 1), (0, 1));
        assert!(trapezoids_intersect(&t, &t));
    }

    #[test]
    fn separated_trapezoids_do_not_intersect() {
        let t1 = trap((0, 1), (0, 1));
        let t2 = trap((2, 3), (2, 3));
        assert!(!trapezoids_intersect(&t1, &t2));
        assert!(!trapezoids_intersect(&t2, &t1));
    }

    #[test]
    fn crossing_trapezoids_intersect() {
        // Separated on each line individually but in opposite directions,
        // so the legs cross between the lines.
        let t1 = trap((0, 1), (4, 5));
        let t2 = trap((2, 3), (0, 1));
        assert!(trapezoids_intersect(&t1, &t2));
    }

    #[test]
    fn touching_endpoints_count_as_intersecting() {
        let t1 = trap((0, 1), (0, 1));
        let t2 = trap((1, 2), (1, 2));
        assert!(trapezoids_intersect(&t1, &t2));
    }

    #[test]
    fn intersection_graph_extremes() {
        let same = TrapezoidRepresentation::new(vec![trap((0, 1), (0, 1)); 4]);
        assert_eq!(intersection_graph(&same).edge_count(), 6);

        let apart = TrapezoidRepresentation::new(
            (0..4).map(|i| trap((4 * i, 4 * i + 1), (4 * i, 4 * i + 1))).collect(),
        );
        assert_eq!(intersection_graph(&apart).edge_count(), 0);
    }

    #[test]
    fn reference_core_vertices_become_segments() {
        let (h, t) = reference_pipeline();
        // a1 joins its two point coordinates across the lines.
        let a1 = t.trapezoid(0);
        assert!(a1.is_segment());
        assert_eq!(a1.top.lo, -18);
        assert_eq!(a1.bottom.lo, -6);
        for &v in h.side_a().iter().chain(h.side_b()) {
            assert!(t.trapezoid(v).is_segment());
        }
    }

    #[test]
    fn reference_subdivision_trapezoids_straddle_origin() {
        let (h, t) = reference_pipeline();
        let c1 = t.trapezoid(h.side_c()[0]);
        assert_eq!((c1.top.lo, c1.top.hi), (-17, 5));
        for &c in h.side_c() {
            let tz = t.trapezoid(c);
            assert!(tz.top.contains_strictly(0) && tz.bottom.contains_strictly(0));
        }
        // All subdivision trapezoids share the origin vertical, hence
        // pairwise intersect.
        for &c in h.side_c() {
            for &d in h.side_c() {
                assert!(trapezoids_intersect(&t.trapezoid(c), &t.trapezoid(d)));
            }
        }
    }

    #[test]
    fn pipeline_yields_complement_of_gadget() {
        let (h, t) = reference_pipeline();
        let inter = intersection_graph(&t);
        assert!(inter.same_edge_set(&h.graph().complement()));
    }

    #[test]
    fn from_realizer_rejects_broken_realizer() {
        let h = reduce(&reference_bipartite()).unwrap();
        let p = build_gadget_poset(&h);
        let mut r = build_realizer(&h, &p).unwrap();
        let c1 = h.side_c()[0];
        let mut iv = r.rep1.intervals().to_vec();
        iv[c1] = Interval::new(40, 50);
        r.rep1 = crate::realizer::IntervalRepresentation::new(1, iv);
        assert!(matches!(
            from_realizer(&r).unwrap_err(),
            TrapezoidError::InvalidRealizer { .. }
        ));
    }

    #[test]
    fn svg_of_empty_representation_has_axes_and_origin_only() {
        let svg = render_svg(&TrapezoidRepresentation::new(Vec::new()), &RenderOptions::default());
        assert_eq!(svg.matches("class=\"axis\"").count(), 2);
        assert_eq!(svg.matches("class=\"origin\"").count(), 1);
        assert_eq!(svg.matches("class=\"segment\"").count(), 0);
        assert_eq!(svg.matches("class=\"trapezoid\"").count(), 0);
    }

    #[test]
    fn svg_of_point_trapezoid_is_a_segment() {
        let t = TrapezoidRepresentation::new(vec![trap((2, 2), (2, 2))]);
        let svg = render_svg(&t, &RenderOptions::default());
        assert_eq!(svg.matches("class=\"segment\"").count(), 1);
    }

    #[test]
    fn svg_of_reference_instance_has_six_segments_and_five_trapezoids() {
        let (h, t) = reference_pipeline();
        let labeled = t.with_labels(h.graph().labels().to_vec());
        let svg = render_svg(&labeled, &RenderOptions::default());
        assert_eq!(svg.matches("class=\"segment\"").count(), 6);
        assert_eq!(svg.matches("class=\"trapezoid\"").count(), 5);
        assert!(svg.contains(">a1<"));
        assert!(svg.contains(">c5<"));
    }

    #[test]
    fn svg_respects_label_toggle_and_size() {
        let (_, t) = reference_pipeline();
        let opts = RenderOptions { width: 640, height: 320, labels: false };
        let svg = render_svg(&t, &opts);
        assert!(svg.contains("width=\"640\""));
        assert!(svg.contains("height=\"320\""));
        assert_eq!(svg.matches("class=\"label\"").count(), 0);
    }

    #[test]
    fn trapezoid_doc_roundtrip() {
        let h = reduce(&reference_bipartite()).unwrap();
        let p = build_gadget_poset(&h);
        let r = build_realizer(&h, &p).unwrap();
        let doc = TrapezoidDoc::new(RealizerDoc::from_realizer(&r, &h));
        let parsed = TrapezoidDoc::from_json(&doc.to_json()).unwrap();
        assert_eq!(parsed, doc);
        assert!(doc.to_text().starts_with("trapezoid origin=0"));
    }
}
