//! The marked surface with dissection determined by a gentle algebra.
//!
//! Each vertex of the quiver is an arc with two ends. An end of arc `j` is
//! the half-edge `2j + e`. Arrows are angles between consecutive arc ends
//! at a marked point; the ends meeting at a marked point form its fan, a
//! linear chain joined by arrows. Cutting the surface along the arcs gives
//! polygons, one per forbidden thread, each with exactly one boundary
//! segment.
//!
//! A side `2j + e` is arc `j` traversed from end `e` to the other end; the
//! two sides of an arc lie in (possibly the same) polygon(s). Walking a
//! polygon, a side is followed by the arrow leaving its far end, which lands
//! on the near end of the next side.

use std::fmt::Write as _;

use serde::Serialize;

use crate::algebra::GentleAlgebra;
use crate::error::{Error, Result};

pub type HalfEdge = usize;
pub type Side = usize;

pub fn half_edge(arc: usize, end: usize) -> HalfEdge {
    2 * arc + end
}

pub fn arc_of(h: HalfEdge) -> usize {
    h / 2
}

pub fn end_of(h: HalfEdge) -> usize {
    h % 2
}

/// The side leaving half-edge `h` along its arc.
pub fn side_from(h: HalfEdge) -> Side {
    h
}

/// The side arriving at half-edge `h` along its arc.
pub fn side_to(h: HalfEdge) -> Side {
    h ^ 1
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MarkedPoint {
    /// Arc ends in fan order.
    pub fan: Vec<HalfEdge>,
    /// `angles[i]` joins `fan[i]` to `fan[i + 1]`.
    pub angles: Vec<usize>,
    pub boundary: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Polygon {
    /// Sides in order; `angles[t]` sits between `sides[t]` and `sides[t + 1]`.
    /// The boundary segment closes the polygon between the last and first side.
    pub sides: Vec<Side>,
    pub angles: Vec<usize>,
    /// Marked point at the far end of the last side, where the boundary segment starts.
    pub segment_start: usize,
    /// Marked point at the near end of the first side, where it ends.
    pub segment_end: usize,
}

impl Polygon {
    /// Number of angles, i.e. sides minus one.
    pub fn angle_count(&self) -> usize {
        self.angles.len()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BoundaryComponent {
    /// Marked points in boundary order; the segment after `marked_points[i]`
    /// is the one of polygon `segments[i]`.
    pub marked_points: Vec<usize>,
    pub segments: Vec<usize>,
    pub winding: i64,
}

impl BoundaryComponent {
    pub fn marked_count(&self) -> usize {
        self.marked_points.len()
    }
}

/// A maximal sequence of arrows with consecutive pairs in the relations.
/// Trivial threads carry no arrows and sit at a single vertex.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Thread {
    pub vertex: usize,
    pub arrows: Vec<usize>,
}

#[derive(Debug, Clone)]
pub struct SurfaceModel {
    algebra: GentleAlgebra,
    marked_points: Vec<MarkedPoint>,
    polygons: Vec<Polygon>,
    boundaries: Vec<BoundaryComponent>,
    genus: usize,
    euler: i64,
    point_of: Vec<usize>,
    position_in_fan: Vec<usize>,
    out_arrow: Vec<Option<usize>>,
    in_arrow: Vec<Option<usize>>,
    arrow_ends: Vec<(HalfEdge, HalfEdge)>,
    /// side -> (polygon, index in polygon)
    side_place: Vec<(usize, usize)>,
}

/// Assigns each arrow an end of its source and target arc so that `ab` is a
/// relation exactly when `a` lands on a different end than `b` leaves from.
fn assign_ends(a: &GentleAlgebra) -> Result<Vec<(HalfEdge, HalfEdge)>> {
    let m = a.arrow_count();
    let mut src_end = vec![usize::MAX; m];
    let mut tgt_end = vec![usize::MAX; m];
    for v in 0..a.vertex_count() {
        let ins = a.incoming(v);
        let outs = a.outgoing(v);
        for (e, &x) in ins.iter().enumerate() {
            tgt_end[x] = e;
        }
        let mut next_free = 0;
        for &y in outs {
            src_end[y] = if let Some(x) = a.free_predecessor(y) {
                tgt_end[x]
            } else if let Some(x) = a.relation_predecessor(y) {
                1 - tgt_end[x]
            } else {
                next_free += 1;
                next_free - 1
            };
        }
        let mut out_used = [false; 2];
        for &y in outs {
            if std::mem::replace(&mut out_used[src_end[y]], true) {
                return Err(Error::InternalInconsistency(format!(
                    "two arrows leave the same end of arc `{}`",
                    a.vertex_name(v)
                )));
            }
            for &x in ins {
                if (tgt_end[x] == src_end[y]) == a.is_relation(x, y) {
                    return Err(Error::InternalInconsistency(format!(
                        "no consistent end assignment at arc `{}`",
                        a.vertex_name(v)
                    )));
                }
            }
        }
    }
    Ok((0..m)
        .map(|x| {
            let arrow = a.arrow(x);
            (half_edge(arrow.source, src_end[x]), half_edge(arrow.target, tgt_end[x]))
        })
        .collect())
}

/// Forbidden threads of the algebra, including trivial ones, so that every
/// vertex occurs exactly twice as a side.
pub fn forbidden_threads(a: &GentleAlgebra) -> Result<Vec<Thread>> {
    let mut threads: Vec<Thread> =
        a.relation_threads()?.into_iter().map(|arrows| Thread { vertex: a.arrow(arrows[0]).source, arrows }).collect();
    let mut occurrences = vec![0usize; a.vertex_count()];
    for t in &threads {
        occurrences[t.vertex] += 1;
        for &x in &t.arrows {
            occurrences[a.arrow(x).target] += 1;
        }
    }
    for (v, &k) in occurrences.iter().enumerate() {
        if k > 2 {
            return Err(Error::InternalInconsistency(format!(
                "vertex `{}` occurs {k} times in forbidden threads",
                a.vertex_name(v)
            )));
        }
        for _ in k..2 {
            threads.push(Thread { vertex: v, arrows: Vec::new() });
        }
    }
    threads.sort();
    Ok(threads)
}

pub fn build_surface(a: &GentleAlgebra) -> Result<SurfaceModel> {
    if let Some(x) = a.loops().next() {
        return Err(Error::UnsupportedLoop(a.arrow(x).id.clone()));
    }
    let components = a.component_vertex_sets().len();
    if components > 1 {
        return Err(Error::Disconnected(components));
    }
    let n = a.vertex_count();
    let arrow_ends = assign_ends(a)?;
    let mut out_arrow = vec![None; 2 * n];
    let mut in_arrow = vec![None; 2 * n];
    for (x, &(s, t)) in arrow_ends.iter().enumerate() {
        out_arrow[s] = Some(x);
        in_arrow[t] = Some(x);
    }

    // fans
    let mut marked_points = Vec::new();
    let mut point_of = vec![usize::MAX; 2 * n];
    let mut position_in_fan = vec![usize::MAX; 2 * n];
    for (h, incoming) in in_arrow.iter().enumerate() {
        if incoming.is_some() {
            continue;
        }
        let q = marked_points.len();
        let mut fan = vec![h];
        let mut angles = Vec::new();
        let mut cur = h;
        while let Some(x) = out_arrow[cur] {
            cur = arrow_ends[x].1;
            angles.push(x);
            fan.push(cur);
        }
        for (i, &f) in fan.iter().enumerate() {
            point_of[f] = q;
            position_in_fan[f] = i;
        }
        marked_points.push(MarkedPoint { fan, angles, boundary: usize::MAX });
    }
    if let Some(h) = point_of.iter().position(|&q| q == usize::MAX) {
        // the remaining ends are chained into a cycle of nonzero compositions
        let mut cycle = Vec::new();
        let mut cur = h;
        loop {
            let x = out_arrow[cur].expect("end on a cyclic fan has an outgoing arrow");
            cycle.push(x);
            cur = arrow_ends[x].1;
            if cur == h {
                break;
            }
        }
        return Err(Error::NotProper(a.arrow_word(&cycle)));
    }

    // polygons
    let mut polygons = Vec::new();
    let mut side_place = vec![(usize::MAX, usize::MAX); 2 * n];
    for mp in &marked_points {
        let start = mp.fan[0];
        let mut sides = vec![side_from(start)];
        let mut angles = Vec::new();
        loop {
            let far = *sides.last().unwrap() ^ 1;
            match out_arrow[far] {
                Some(x) => {
                    angles.push(x);
                    sides.push(side_from(arrow_ends[x].1));
                }
                None => break,
            }
        }
        let p = polygons.len();
        for (i, &s) in sides.iter().enumerate() {
            side_place[s] = (p, i);
        }
        let last_far = *sides.last().unwrap() ^ 1;
        polygons.push(Polygon { sides, angles, segment_start: point_of[last_far], segment_end: point_of[start] });
    }
    if let Some(s) = side_place.iter().position(|&(p, _)| p == usize::MAX) {
        let mut cycle = Vec::new();
        let mut cur = s;
        loop {
            let x = out_arrow[cur ^ 1].expect("side on a closed polygon continues");
            cycle.push(x);
            cur = side_from(arrow_ends[x].1);
            if cur == s {
                break;
            }
        }
        return Err(Error::NotSmooth(a.arrow_word(&cycle)));
    }

    // boundary components: the segment of polygon p runs from segment_start to segment_end
    let mut segment_after = vec![usize::MAX; marked_points.len()];
    for (p, poly) in polygons.iter().enumerate() {
        if segment_after[poly.segment_start] != usize::MAX {
            return Err(Error::InternalInconsistency("marked point starts two boundary segments".into()));
        }
        segment_after[poly.segment_start] = p;
    }
    let mut boundaries = Vec::new();
    for q0 in 0..marked_points.len() {
        if marked_points[q0].boundary != usize::MAX {
            continue;
        }
        let b = boundaries.len();
        let (mut points, mut segments) = (Vec::new(), Vec::new());
        let mut q = q0;
        loop {
            if marked_points[q].boundary != usize::MAX {
                return Err(Error::InternalInconsistency("boundary successor map is not a permutation".into()));
            }
            marked_points[q].boundary = b;
            points.push(q);
            let p = segment_after[q];
            segments.push(p);
            q = polygons[p].segment_end;
            if q == q0 {
                break;
            }
        }
        let winding = closed_boundary_winding(a, &marked_points, &polygons, &points, &segments);
        boundaries.push(BoundaryComponent { marked_points: points, segments, winding });
    }

    let nm = marked_points.len() as i64;
    let nb = boundaries.len() as i64;
    let twice_genus = n as i64 - nm - nb + 2;
    if twice_genus < 0 || twice_genus % 2 != 0 {
        return Err(Error::InternalInconsistency(format!("|Q0| = {n}, |M| = {nm}, b = {nb} give non-integral genus")));
    }
    if nm != 2 * n as i64 - a.arrow_count() as i64 {
        return Err(Error::InternalInconsistency("marked point count differs from 2|Q0| - |Q1|".into()));
    }

    Ok(SurfaceModel {
        algebra: a.clone(),
        marked_points,
        polygons,
        boundaries,
        genus: (twice_genus / 2) as usize,
        euler: nm - n as i64,
        point_of,
        position_in_fan,
        out_arrow,
        in_arrow,
        arrow_ends,
        side_place,
    })
}

/// Polygon contributions `1 - m + sum |angles|` of the segments on the
/// component, minus the fan angles at its marked points.
fn closed_boundary_winding(
    a: &GentleAlgebra,
    points: &[MarkedPoint],
    polygons: &[Polygon],
    on_boundary: &[usize],
    segments: &[usize],
) -> i64 {
    let deg = |x: &usize| a.arrow(*x).degree;
    let polygon_part: i64 = segments
        .iter()
        .map(|&p| 1 - polygons[p].angle_count() as i64 + polygons[p].angles.iter().map(deg).sum::<i64>())
        .sum();
    let fan_part: i64 = on_boundary.iter().flat_map(|&q| points[q].angles.iter()).map(deg).sum();
    polygon_part - fan_part
}

impl SurfaceModel {
    pub fn algebra(&self) -> &GentleAlgebra {
        &self.algebra
    }

    pub fn arc_count(&self) -> usize {
        self.algebra.vertex_count()
    }

    pub fn marked_points(&self) -> &[MarkedPoint] {
        &self.marked_points
    }

    pub fn polygons(&self) -> &[Polygon] {
        &self.polygons
    }

    pub fn boundaries(&self) -> &[BoundaryComponent] {
        &self.boundaries
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn euler(&self) -> i64 {
        self.euler
    }

    /// Marked point at which half-edge `h` sits.
    pub fn point_of(&self, h: HalfEdge) -> usize {
        self.point_of[h]
    }

    pub fn position_in_fan(&self, h: HalfEdge) -> usize {
        self.position_in_fan[h]
    }

    pub fn out_arrow(&self, h: HalfEdge) -> Option<usize> {
        self.out_arrow[h]
    }

    pub fn in_arrow(&self, h: HalfEdge) -> Option<usize> {
        self.in_arrow[h]
    }

    /// Half-edges at which arrow `x` leaves and lands.
    pub fn arrow_ends(&self, x: usize) -> (HalfEdge, HalfEdge) {
        self.arrow_ends[x]
    }

    /// Polygon containing `side` and its index there.
    pub fn side_place(&self, side: Side) -> (usize, usize) {
        self.side_place[side]
    }

    pub fn degree(&self, arrow: usize) -> i64 {
        self.algebra.arrow(arrow).degree
    }

    /// `(g, b, marked points per boundary component)`.
    pub fn topology_summary(&self) -> (usize, usize, Vec<usize>) {
        (self.genus, self.boundaries.len(), self.boundaries.iter().map(BoundaryComponent::marked_count).collect())
    }

    pub fn boundary_winding(&self, i: usize) -> Result<i64> {
        self.boundaries.get(i).map(|b| b.winding).ok_or(Error::IndexOutOfRange { index: i, len: self.boundaries.len() })
    }

    fn half_edge_label(&self, h: HalfEdge) -> String {
        format!("{}.{}", self.algebra.vertex_name(arc_of(h)), end_of(h))
    }

    /// DOT rendering of the marked points joined by arcs, and of the
    /// polygons joined across arcs.
    pub fn to_dot(&self) -> String {
        let mut out = String::new();
        let a = &self.algebra;
        out.push_str("graph marked_points {\n");
        for (q, mp) in self.marked_points.iter().enumerate() {
            let fan: Vec<String> = mp.fan.iter().map(|&h| self.half_edge_label(h)).collect();
            let angles: Vec<String> =
                mp.angles.iter().map(|&x| format!("{}:{}", a.arrow(x).id, a.arrow(x).degree)).collect();
            let _ = writeln!(
                out,
                "  q{q} [label=\"q{q} (boundary {})\\nfan {}\\nangles {}\"];",
                mp.boundary,
                fan.join(" "),
                angles.join(" ")
            );
        }
        for j in 0..self.arc_count() {
            let _ = writeln!(
                out,
                "  q{} -- q{} [label=\"{}\"];",
                self.point_of[half_edge(j, 0)],
                self.point_of[half_edge(j, 1)],
                a.vertex_name(j)
            );
        }
        out.push_str("}\n");
        out.push_str("graph polygons {\n");
        for (p, poly) in self.polygons.iter().enumerate() {
            let angles: Vec<String> =
                poly.angles.iter().map(|&x| format!("{}:{}", a.arrow(x).id, a.arrow(x).degree)).collect();
            let _ = writeln!(
                out,
                "  p{p} [label=\"p{p} ({} sides)\\nangles {}\\nsegment q{} -> q{}\"];",
                poly.sides.len(),
                angles.join(" "),
                poly.segment_start,
                poly.segment_end
            );
        }
        for j in 0..self.arc_count() {
            let _ = writeln!(
                out,
                "  p{} -- p{} [label=\"{}\"];",
                self.side_place[2 * j].0,
                self.side_place[2 * j + 1].0,
                a.vertex_name(j)
            );
        }
        out.push_str("}\n");
        out
    }
}
