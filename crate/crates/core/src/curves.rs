//! Closed curves on a surface model: winding numbers, intersection numbers,
//! homology classes and symplectic bases of simple closed curves.
//!
//! Curves come in two encodings. An [`EdgeCycle`] runs along arcs through
//! marked points. A [`DualWalk`] crosses arcs transversally and is cut by
//! them into chords, each inside one polygon; its winding number is the sum
//! of the chord contributions.

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::intmat::{smith_normal_form, IntMatrix};
use crate::surface::{arc_of, half_edge, side_from, side_to, HalfEdge, Side, SurfaceModel};

/// Transverse crossing of arc `into / 2` into the polygon containing side `into`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct Crossing {
    pub into: Side,
}

impl Crossing {
    pub fn arc(&self) -> usize {
        arc_of(self.into)
    }

    pub fn inverse(&self) -> Crossing {
        Crossing { into: self.into ^ 1 }
    }
}

/// Piece of a curve inside one polygon, from side index `entry` to side
/// index `exit`. `forward` matters only when both are the same side: it
/// says whether the exit point lies further along that side than the entry.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Chord {
    pub polygon: usize,
    pub entry: usize,
    pub exit: usize,
    pub forward: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DualWalk {
    chords: Vec<Chord>,
}

impl DualWalk {
    /// Checks that consecutive chords meet on the two sides of one arc.
    pub fn new(model: &SurfaceModel, chords: Vec<Chord>) -> Result<Self> {
        if chords.is_empty() {
            return Err(Error::InconsistentWalk("empty walk".into()));
        }
        let polys = model.polygons();
        for c in &chords {
            let len = polys.get(c.polygon).map(|p| p.sides.len()).unwrap_or(0);
            if c.entry >= len || c.exit >= len {
                return Err(Error::InconsistentWalk(format!("chord {c:?} leaves its polygon")));
            }
        }
        for i in 0..chords.len() {
            let c = chords[i];
            let d = chords[(i + 1) % chords.len()];
            let exit = polys[c.polygon].sides[c.exit];
            let entry = polys[d.polygon].sides[d.entry];
            if exit ^ 1 != entry {
                return Err(Error::InconsistentWalk(format!(
                    "chord {i} exits side {exit} but next enters side {entry}"
                )));
            }
        }
        Ok(DualWalk { chords })
    }

    /// Builds the walk crossing the given arcs in order, after cancelling
    /// immediate back-and-forth crossings.
    pub fn from_crossings(model: &SurfaceModel, crossings: &[Crossing]) -> Result<Self> {
        let reduced = cancel_backtracks(crossings);
        if reduced.is_empty() {
            return Err(Error::InconsistentWalk("curve crosses no arc".into()));
        }
        let mut chords = Vec::with_capacity(reduced.len());
        for i in 0..reduced.len() {
            let into = reduced[i].into;
            let out = reduced[(i + 1) % reduced.len()].into ^ 1;
            let (p, entry) = model.side_place(into);
            let (p2, exit) = model.side_place(out);
            if p != p2 {
                return Err(Error::InconsistentWalk(format!(
                    "crossings {i} and {} are not joined inside one polygon",
                    (i + 1) % reduced.len()
                )));
            }
            if entry == exit {
                return Err(Error::InconsistentWalk("chord returns to its entry side".into()));
            }
            chords.push(Chord { polygon: p, entry, exit, forward: exit > entry });
        }
        DualWalk::new(model, chords)
    }

    pub fn chords(&self) -> &[Chord] {
        &self.chords
    }

    pub fn len(&self) -> usize {
        self.chords.len()
    }

    pub fn is_empty(&self) -> bool {
        self.chords.is_empty()
    }

    pub fn reversed(&self) -> DualWalk {
        let chords = self
            .chords
            .iter()
            .rev()
            .map(|c| Chord { polygon: c.polygon, entry: c.exit, exit: c.entry, forward: !c.forward })
            .collect();
        DualWalk { chords }
    }

    /// Crossings in order: chord `i` is entered through `crossings()[i]`.
    pub fn crossings(&self, model: &SurfaceModel) -> Vec<Crossing> {
        self.chords.iter().map(|c| Crossing { into: model.polygons()[c.polygon].sides[c.entry] }).collect()
    }

    /// Per-chord winding contributions.
    pub fn chord_windings(&self, model: &SurfaceModel) -> Vec<i64> {
        self.chords.iter().map(|c| chord_winding(model, c)).collect()
    }

    pub fn winding(&self, model: &SurfaceModel) -> i64 {
        self.chord_windings(model).iter().sum()
    }
}

/// Removes adjacent inverse pairs, cyclically.
fn cancel_backtracks(crossings: &[Crossing]) -> Vec<Crossing> {
    let mut stack: Vec<Crossing> = Vec::with_capacity(crossings.len());
    for &c in crossings {
        if stack.last() == Some(&c.inverse()) {
            stack.pop();
        } else {
            stack.push(c);
        }
    }
    // wrap-around
    let mut lo = 0;
    while stack.len() - lo >= 2 && stack[lo] == stack[stack.len() - 1].inverse() {
        lo += 1;
        stack.pop();
    }
    stack.drain(..lo);
    stack
}

/// Contribution of one chord. Going forward around the polygon from the
/// entry to the exit without meeting the boundary segment covers `k`
/// angles; the chord then contributes `1 - k + sum of their degrees`, and
/// the negative of that when travelled the other way.
pub fn chord_winding(model: &SurfaceModel, chord: &Chord) -> i64 {
    let poly = &model.polygons()[chord.polygon];
    let angle_sum = |lo: usize, hi: usize| -> i64 {
        // angles strictly after side lo up to side hi
        poly.angles[lo..hi].iter().map(|&x| model.degree(x)).sum()
    };
    let (x, y) = (chord.entry, chord.exit);
    if x < y {
        1 - (y - x) as i64 + angle_sum(x, y)
    } else if x > y {
        -(1 - (x - y) as i64 + angle_sum(y, x))
    } else if chord.forward {
        1
    } else {
        -1
    }
}

/// The boundary component `i` pushed into the surface, as a dual walk that
/// hugs every corner of the fans on it and runs along each boundary segment.
pub fn boundary_push_in(model: &SurfaceModel, i: usize) -> Result<DualWalk> {
    let comp = model.boundaries().get(i).ok_or(Error::IndexOutOfRange { index: i, len: model.boundaries().len() })?;
    let mut crossings = Vec::new();
    for &q in comp.marked_points.iter().rev() {
        for &h in model.marked_points()[q].fan.iter().rev() {
            crossings.push(Crossing { into: side_from(h) });
        }
    }
    let mut chords = Vec::with_capacity(crossings.len());
    for k in 0..crossings.len() {
        let (p, entry) = model.side_place(crossings[k].into);
        let (p2, exit) = model.side_place(crossings[(k + 1) % crossings.len()].into ^ 1);
        if p != p2 {
            return Err(Error::InternalInconsistency("boundary walk leaves a polygon".into()));
        }
        // a same-side chord here runs along the boundary segment of a monogon
        chords.push(Chord { polygon: p, entry, exit, forward: true });
    }
    DualWalk::new(model, chords)
}

/// The closed curve crossing `arc` once, when both sides of the arc bound
/// the same polygon; it enters through the side listed first.
pub fn dual_loop_across(model: &SurfaceModel, arc: usize) -> Result<DualWalk> {
    let (p, x) = model.side_place(2 * arc);
    let (p2, y) = model.side_place(2 * arc + 1);
    if p != p2 {
        return Err(Error::InconsistentWalk(format!("the two sides of arc {arc} lie in different polygons")));
    }
    let into = if x < y { 2 * arc } else { 2 * arc + 1 };
    DualWalk::from_crossings(model, &[Crossing { into }])
}

/// A closed walk along arcs: step `(arc, from_end)` runs along `arc` from
/// end `from_end` to the other end.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct EdgeCycle {
    steps: Vec<(usize, usize)>,
}

impl EdgeCycle {
    pub fn new(model: &SurfaceModel, steps: Vec<(usize, usize)>) -> Result<Self> {
        if steps.is_empty() {
            return Err(Error::NotEmbedded("empty cycle".into()));
        }
        for &(arc, end) in &steps {
            if arc >= model.arc_count() || end > 1 {
                return Err(Error::IndexOutOfRange { index: arc, len: model.arc_count() });
            }
        }
        for i in 0..steps.len() {
            let (j, e) = steps[i];
            let (k, f) = steps[(i + 1) % steps.len()];
            if model.point_of(half_edge(j, 1 - e)) != model.point_of(half_edge(k, f)) {
                return Err(Error::NotEmbedded(format!("steps {i} and {} do not meet", (i + 1) % steps.len())));
            }
        }
        Ok(EdgeCycle { steps })
    }

    pub fn steps(&self) -> &[(usize, usize)] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn reversed(&self) -> EdgeCycle {
        EdgeCycle { steps: self.steps.iter().rev().map(|&(j, e)| (j, 1 - e)).collect() }
    }

    /// No arc and no marked point is visited twice.
    pub fn is_embedded(&self, model: &SurfaceModel) -> bool {
        let arcs: HashSet<usize> = self.steps.iter().map(|s| s.0).collect();
        let points: HashSet<usize> = self.steps.iter().map(|&(j, e)| model.point_of(half_edge(j, e))).collect();
        arcs.len() == self.steps.len() && points.len() == self.steps.len()
    }

    fn require_embedded(&self, model: &SurfaceModel) -> Result<()> {
        if self.is_embedded(model) {
            Ok(())
        } else {
            Err(Error::NotEmbedded(format!("{:?}", self.steps)))
        }
    }

    /// Signed multiplicity of each arc, oriented from end 0 to end 1.
    pub fn arc_chain(&self, arc_count: usize) -> Vec<i64> {
        let mut chain = vec![0; arc_count];
        for &(j, e) in &self.steps {
            chain[j] += if e == 0 { 1 } else { -1 };
        }
        chain
    }

    pub fn describe(&self, model: &SurfaceModel) -> String {
        self.steps
            .iter()
            .map(|&(j, e)| format!("{}{}", if e == 0 { "+" } else { "-" }, model.algebra().vertex_name(j)))
            .collect::<Vec<_>>()
            .join(" ")
    }
}

/// Crossings of the cycle pushed off the boundary into the interior.
///
/// Near each marked point the pushed curve passes through the corners
/// between the incoming and the outgoing arc that avoid the boundary, and
/// so crosses the arcs of the fan strictly between them. Along an arc it
/// crosses the arc itself when it has to switch sides.
fn push_off_crossings(model: &SurfaceModel, cycle: &EdgeCycle) -> Vec<Crossing> {
    let steps = cycle.steps();
    let len = steps.len();
    // per step i: (side travelled on arrival into step i's start, fan crossings, departure side of step i)
    let mut transitions = Vec::with_capacity(len);
    for i in 0..len {
        let (pj, pe) = steps[(i + len - 1) % len];
        let (j, e) = steps[i];
        let h_in: HalfEdge = half_edge(pj, 1 - pe);
        let h_out: HalfEdge = half_edge(j, e);
        let fan = &model.marked_points()[model.point_of(h_in)].fan;
        let (p_in, p_out) = (model.position_in_fan(h_in), model.position_in_fan(h_out));
        let mut fan_crossings = Vec::new();
        let (arrive, depart) = if p_in < p_out {
            for &h in &fan[p_in + 1..p_out] {
                fan_crossings.push(Crossing { into: side_to(h) });
            }
            (side_to(h_in), side_from(h_out))
        } else {
            for &h in fan[p_out + 1..p_in].iter().rev() {
                fan_crossings.push(Crossing { into: side_from(h) });
            }
            (side_from(h_in), side_to(h_out))
        };
        transitions.push((arrive, fan_crossings, depart));
    }
    let mut crossings = Vec::new();
    for i in 0..len {
        crossings.extend_from_slice(&transitions[i].1);
        let depart = transitions[i].2;
        let arrive = transitions[(i + 1) % len].0;
        if depart != arrive {
            crossings.push(Crossing { into: arrive });
        }
    }
    crossings
}

/// The embedded cycle pushed into the interior, as a dual walk.
pub fn push_off(model: &SurfaceModel, cycle: &EdgeCycle) -> Result<DualWalk> {
    cycle.require_embedded(model)?;
    DualWalk::from_crossings(model, &push_off_crossings(model, cycle))
}

pub fn cycle_winding(model: &SurfaceModel, cycle: &EdgeCycle) -> Result<i64> {
    Ok(push_off(model, cycle)?.winding(model))
}

/// Algebraic intersection number in the closed-up surface, counted as the
/// signed crossings of the pushed-off first cycle with the arcs of the second.
pub fn intersection_number(model: &SurfaceModel, c1: &EdgeCycle, c2: &EdgeCycle) -> Result<i64> {
    c1.require_embedded(model)?;
    c2.require_embedded(model)?;
    let chain = c2.arc_chain(model.arc_count());
    Ok(crossing_pairing(&push_off_crossings(model, c1), &chain))
}

fn crossing_pairing(crossings: &[Crossing], chain: &[i64]) -> i64 {
    crossings
        .iter()
        .map(|c| {
            let sign = if c.into % 2 == 0 { 1 } else { -1 };
            sign * chain[c.arc()]
        })
        .sum()
}

/// First homology of the surface with every boundary component capped by a
/// disk, from its cell structure: marked points; arcs and boundary
/// segments; polygons and caps.
#[derive(Debug, Clone)]
pub struct HomologyBasis {
    rank: usize,
    arc_count: usize,
    chain_len: usize,
    q1_inv: IntMatrix,
    r1: usize,
    p2: IntMatrix,
    r2: usize,
}

pub fn homology(model: &SurfaceModel) -> Result<HomologyBasis> {
    let n = model.arc_count();
    let polys = model.polygons();
    let np = polys.len();
    let nm = model.marked_points().len();
    let ones = n + np;
    let twos = np + model.boundaries().len();

    let mut d1 = IntMatrix::zeros(nm, ones);
    for j in 0..n {
        d1.add_to(model.point_of(half_edge(j, 1)), j, 1);
        d1.add_to(model.point_of(half_edge(j, 0)), j, -1);
    }
    for (p, poly) in polys.iter().enumerate() {
        d1.add_to(poly.segment_end, n + p, 1);
        d1.add_to(poly.segment_start, n + p, -1);
    }
    let mut d2 = IntMatrix::zeros(ones, twos);
    for (p, poly) in polys.iter().enumerate() {
        for &s in &poly.sides {
            d2.add_to(arc_of(s), p, if s % 2 == 0 { 1 } else { -1 });
        }
        d2.add_to(n + p, p, 1);
    }
    for (b, comp) in model.boundaries().iter().enumerate() {
        for &p in &comp.segments {
            d2.add_to(n + p, np + b, -1);
        }
    }
    let product = d1.mul(&d2);
    if (0..product.rows()).any(|i| (0..product.cols()).any(|j| product.get(i, j) != 0)) {
        return Err(Error::InternalInconsistency("cellular boundary maps do not compose to zero".into()));
    }

    let s1 = smith_normal_form(&d1);
    let r1 = s1.rank;
    let x = s1.q_inv.mul(&d2).row_tail(r1);
    let s2 = smith_normal_form(&x);
    let r2 = s2.rank;
    if s2.diagonal().iter().any(|&d| d != 1) {
        return Err(Error::InternalInconsistency(format!("torsion in first homology: {:?}", s2.diagonal())));
    }
    let rank = ones - r1 - r2;
    if rank != 2 * model.genus() {
        return Err(Error::InternalInconsistency(format!(
            "first homology has rank {rank}, expected {}",
            2 * model.genus()
        )));
    }
    Ok(HomologyBasis { rank, arc_count: n, chain_len: ones, q1_inv: s1.q_inv, r1, p2: s2.p, r2 })
}

impl HomologyBasis {
    pub fn rank(&self) -> usize {
        self.rank
    }

    /// Coordinates of a 1-cycle given on arcs and boundary segments.
    pub fn class_of_chain(&self, chain: &[i64]) -> Result<Vec<i64>> {
        assert_eq!(chain.len(), self.chain_len);
        let y = self.q1_inv.mul_vec(chain);
        if y[..self.r1].iter().any(|&v| v != 0) {
            return Err(Error::InternalInconsistency("chain is not closed".into()));
        }
        let z = self.p2.mul_vec(&y[self.r1..]);
        Ok(z[self.r2..].to_vec())
    }

    pub fn class_of(&self, cycle: &EdgeCycle) -> Result<Vec<i64>> {
        let mut chain = cycle.arc_chain(self.arc_count);
        chain.resize(self.chain_len, 0);
        self.class_of_chain(&chain)
    }

    /// Class of boundary component `i` traversed along its segments.
    pub fn boundary_class(&self, model: &SurfaceModel, i: usize) -> Result<Vec<i64>> {
        let comp =
            model.boundaries().get(i).ok_or(Error::IndexOutOfRange { index: i, len: model.boundaries().len() })?;
        let mut chain = vec![0; self.chain_len];
        for &p in &comp.segments {
            chain[self.arc_count + p] += 1;
        }
        self.class_of_chain(&chain)
    }
}

/// Embedded cycles with at most `max_len` arcs, one per cycle up to
/// rotation and reversal: the first step uses the smallest arc, from end 0.
pub fn enumerate_embedded_cycles(model: &SurfaceModel, max_len: usize) -> Vec<EdgeCycle> {
    let n = model.arc_count();
    let nm = model.marked_points().len();
    // arcs leaving each marked point: (arc, end at this point)
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); nm];
    for j in 0..n {
        for e in 0..2 {
            incident[model.point_of(half_edge(j, e))].push((j, e));
        }
    }
    let mut out = Vec::new();
    for first in 0..n {
        if max_len == 0 {
            break;
        }
        let start = model.point_of(half_edge(first, 0));
        let next = model.point_of(half_edge(first, 1));
        if next == start {
            out.push(EdgeCycle { steps: vec![(first, 0)] });
            continue;
        }
        let mut visited = vec![false; nm];
        visited[start] = true;
        visited[next] = true;
        let mut steps = vec![(first, 0)];
        extend_cycles(model, &incident, first, start, next, max_len, &mut visited, &mut steps, &mut out);
    }
    out
}

#[allow(clippy::too_many_arguments)]
fn extend_cycles(
    model: &SurfaceModel,
    incident: &[Vec<(usize, usize)>],
    first: usize,
    start: usize,
    at: usize,
    max_len: usize,
    visited: &mut [bool],
    steps: &mut Vec<(usize, usize)>,
    out: &mut Vec<EdgeCycle>,
) {
    if steps.len() == max_len {
        return;
    }
    for &(k, f) in &incident[at] {
        if k <= first || steps.iter().any(|s| s.0 == k) {
            continue;
        }
        let to = model.point_of(half_edge(k, 1 - f));
        if to == at {
            continue;
        }
        if to == start {
            let mut done = steps.clone();
            done.push((k, f));
            out.push(EdgeCycle { steps: done });
            continue;
        }
        if visited[to] {
            continue;
        }
        visited[to] = true;
        steps.push((k, f));
        extend_cycles(model, incident, first, start, to, max_len, visited, steps, out);
        steps.pop();
        visited[to] = false;
    }
}

/// Curves `s_1, t_1, ..., s_g, t_g` with `<s_i, t_i> = 1` and all other
/// pairings zero.
#[derive(Debug, Clone, Serialize)]
pub struct SymplecticCurveBasis {
    pub pairs: Vec<(EdgeCycle, EdgeCycle)>,
    pub windings: Vec<(i64, i64)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    pub max_len: Option<usize>,
    pub seed: u64,
    /// Upper bound on search nodes before giving up.
    pub budget: usize,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { max_len: None, seed: 0, budget: 200_000 }
    }
}

/// Nonseparating embedded cycles with their windings and pairings.
#[derive(Debug, Clone)]
pub struct CurvePool {
    pub cycles: Vec<EdgeCycle>,
    pub windings: Vec<i64>,
    pub classes: Vec<Vec<i64>>,
    /// `gram[i][j] = <cycles[i], cycles[j]>`
    pub gram: Vec<Vec<i64>>,
}

pub fn curve_pool(model: &SurfaceModel, homology: &HomologyBasis, max_len: usize) -> Result<CurvePool> {
    let mut cycles = Vec::new();
    let mut classes = Vec::new();
    let mut windings = Vec::new();
    for c in enumerate_embedded_cycles(model, max_len) {
        let class = homology.class_of(&c)?;
        if class.iter().all(|&v| v == 0) {
            continue;
        }
        windings.push(cycle_winding(model, &c)?);
        classes.push(class);
        cycles.push(c);
    }
    let crossings: Vec<Vec<Crossing>> = cycles.iter().map(|c| push_off_crossings(model, c)).collect();
    let chains: Vec<Vec<i64>> = cycles.iter().map(|c| c.arc_chain(model.arc_count())).collect();
    let gram = (0..cycles.len())
        .map(|i| (0..cycles.len()).map(|j| crossing_pairing(&crossings[i], &chains[j])).collect())
        .collect();
    Ok(CurvePool { cycles, windings, classes, gram })
}

pub fn find_symplectic_basis(model: &SurfaceModel, options: SearchOptions) -> Result<SymplecticCurveBasis> {
    let g = model.genus();
    if g == 0 {
        return Err(Error::GenusOutOfRange { genus: 0, invariant: "a symplectic basis" });
    }
    let hom = homology(model)?;
    let pool = curve_pool(model, &hom, options.max_len.unwrap_or(model.arc_count()))?;
    search_symplectic(model, &pool, options)
}

pub fn search_symplectic(
    model: &SurfaceModel,
    pool: &CurvePool,
    options: SearchOptions,
) -> Result<SymplecticCurveBasis> {
    let g = model.genus();
    let mut order: Vec<usize> = (0..pool.cycles.len()).collect();
    order.shuffle(&mut ChaCha8Rng::seed_from_u64(options.seed));
    let mut search = Search { gram: &pool.gram, order: &order, g, budget: options.budget, chosen: Vec::new() };
    if !search.run(0) {
        return Err(Error::SymplecticBasisNotFound { genus: g, pool: pool.cycles.len() });
    }
    let mut pairs = Vec::with_capacity(g);
    let mut windings = Vec::with_capacity(g);
    for &(s, t) in &search.chosen {
        let (mut tc, mut tw) = (pool.cycles[t].clone(), pool.windings[t]);
        if pool.gram[s][t] < 0 {
            tc = tc.reversed();
            tw = -tw;
        }
        pairs.push((pool.cycles[s].clone(), tc));
        windings.push((pool.windings[s], tw));
    }
    Ok(SymplecticCurveBasis { pairs, windings })
}

struct Search<'a> {
    gram: &'a [Vec<i64>],
    order: &'a [usize],
    g: usize,
    budget: usize,
    chosen: Vec<(usize, usize)>,
}

impl Search<'_> {
    fn compatible(&self, c: usize) -> bool {
        self.chosen.iter().all(|&(s, t)| self.gram[c][s] == 0 && self.gram[c][t] == 0)
    }

    /// Picks pairs with `s` drawn from `order[from..]` so each basis is found once.
    fn run(&mut self, from: usize) -> bool {
        if self.chosen.len() == self.g {
            return true;
        }
        for a in from..self.order.len() {
            let s = self.order[a];
            if !self.compatible(s) {
                continue;
            }
            for &t in self.order {
                if self.budget == 0 {
                    return false;
                }
                self.budget -= 1;
                if self.gram[s][t].abs() != 1 || !self.compatible(t) {
                    continue;
                }
                self.chosen.push((s, t));
                if self.run(a + 1) {
                    return true;
                }
                self.chosen.pop();
            }
        }
        false
    }
}
