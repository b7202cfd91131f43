//! The complete derived invariant of a smooth proper graded gentle algebra
//! and the decisions built on it: derived equivalence, existence of silting
//! objects, and partial silting of idempotent summands.

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::{
    an_form_of, connected_components, corner_algebra, corner_quiver, reduce_idempotent, AnForm, GentleAlgebra,
    GradedDimension, VertexSet,
};
use crate::curves::{curve_pool, homology, search_symplectic, CurvePool, SearchOptions};
use crate::error::{Error, Result};
use crate::intmat::gcd_all;
use crate::surface::{build_surface, SurfaceModel};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct BoundaryData {
    pub marked: usize,
    pub winding: i64,
}

/// How the curve windings in a record were obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BasisSource {
    /// No handles, nothing to choose.
    None,
    /// A symplectic basis of embedded cycles was found.
    Symplectic,
    /// No symplectic basis in the pool; invariants were derived from a
    /// homology basis of embedded cycles and their intersection form.
    HomologyBasis,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InvariantRecord {
    pub genus: usize,
    pub boundaries: Vec<BoundaryData>,
    pub sigma: Option<u8>,
    pub atilde: Option<i64>,
    pub arf: Option<u8>,
    /// Boundary windings followed by the windings of `s_1..s_g` and `t_1..t_g`.
    pub w: Vec<i64>,
    pub basis_source: BasisSource,
}

impl InvariantRecord {
    pub fn boundary_count(&self) -> usize {
        self.boundaries.len()
    }

    pub fn marked_points(&self) -> usize {
        self.boundaries.iter().map(|b| b.marked).sum()
    }

    pub fn sigma(&self) -> Result<u8> {
        self.sigma.ok_or(Error::GenusOutOfRange { genus: self.genus, invariant: "sigma" })
    }

    pub fn atilde(&self) -> Result<i64> {
        self.atilde.ok_or(Error::GenusOutOfRange { genus: self.genus, invariant: "atilde" })
    }

    pub fn arf(&self) -> Result<u8> {
        if self.genus <= 1 {
            return Err(Error::GenusOutOfRange { genus: self.genus, invariant: "the Arf invariant" });
        }
        self.arf.ok_or_else(|| {
            Error::ArfUndefined(if self.sigma == Some(1) {
                "sigma is 1".into()
            } else {
                "some boundary winding is not 2 mod 4".into()
            })
        })
    }

    fn sorted_boundaries(&self) -> Vec<BoundaryData> {
        let mut b = self.boundaries.clone();
        b.sort();
        b
    }

    pub fn to_json(&self) -> Value {
        json!({
            "genus": self.genus,
            "boundaries": self.boundaries.iter().map(|b| json!({"marked": b.marked, "winding": b.winding})).collect::<Vec<_>>(),
            "sigma": self.sigma,
            "atilde": self.atilde,
            "arf": self.arf,
            "W": self.w,
        })
    }
}

pub fn compute_invariants(a: &GentleAlgebra) -> Result<InvariantRecord> {
    compute_invariants_with(a, &SearchOptions::default())
}

pub fn compute_invariants_with(a: &GentleAlgebra, options: &SearchOptions) -> Result<InvariantRecord> {
    invariants_of_model(&build_surface(a)?, options)
}

pub fn invariants_of_model(model: &SurfaceModel, options: &SearchOptions) -> Result<InvariantRecord> {
    invariants_by(model, options, false)
}

/// Same invariants, always derived from a homology basis of embedded cycles
/// and the intersection form instead of a symplectic basis of curves.
pub fn invariants_via_homology(model: &SurfaceModel, options: &SearchOptions) -> Result<InvariantRecord> {
    invariants_by(model, options, true)
}

fn invariants_by(model: &SurfaceModel, options: &SearchOptions, skip_search: bool) -> Result<InvariantRecord> {
    let g = model.genus();
    let boundaries: Vec<BoundaryData> =
        model.boundaries().iter().map(|b| BoundaryData { marked: b.marked_count(), winding: b.winding }).collect();
    let bw: Vec<i64> = boundaries.iter().map(|b| b.winding).collect();
    let mut record = InvariantRecord {
        genus: g,
        boundaries,
        sigma: None,
        atilde: None,
        arf: None,
        w: bw.clone(),
        basis_source: BasisSource::None,
    };
    if g == 0 {
        return Ok(record);
    }

    let hom = homology(model)?;
    let pool = curve_pool(model, &hom, options.max_len.unwrap_or(model.arc_count()))?;
    let found = if skip_search {
        Err(Error::SymplecticBasisNotFound { genus: g, pool: pool.cycles.len() })
    } else {
        search_symplectic(model, &pool, *options)
    };
    match found {
        Ok(basis) => {
            record.basis_source = BasisSource::Symplectic;
            record.w.extend(basis.windings.iter().map(|w| w.0));
            record.w.extend(basis.windings.iter().map(|w| w.1));
            let all_even = record.w.iter().all(|w| w % 2 == 0);
            if g == 1 {
                let (s, t) = basis.windings[0];
                record.atilde = Some(gcd_all(bw.iter().map(|w| w + 2).chain([s, t])));
            } else {
                record.sigma = Some(if all_even { 0 } else { 1 });
                if all_even && bw.iter().all(|w| w.rem_euclid(4) == 2) {
                    let arf: i64 = basis.windings.iter().map(|&(s, t)| (s / 2 + 1) * (t / 2 + 1)).sum();
                    record.arf = Some(arf.rem_euclid(2) as u8);
                }
            }
        }
        Err(Error::SymplecticBasisNotFound { .. }) => from_homology_basis(&mut record, &pool, g)?,
        Err(e) => return Err(e),
    }
    Ok(record)
}

/// Invariants from any basis of homology realized by embedded cycles.
///
/// Windings mod 2 of simple closed curves are linear on homology, `w/2 + 1`
/// mod 2 is a quadratic refinement of the intersection form when all
/// windings are even, and in genus one windings are linear modulo the gcd
/// of the `w(boundary) + 2`.
fn from_homology_basis(record: &mut InvariantRecord, pool: &CurvePool, g: usize) -> Result<()> {
    let basis = mod2_basis(pool, 2 * g).ok_or(Error::SymplecticBasisNotFound { genus: g, pool: pool.cycles.len() })?;
    record.basis_source = BasisSource::HomologyBasis;
    record.w.extend(basis.iter().map(|&i| pool.windings[i]));
    let bw: Vec<i64> = record.boundaries.iter().map(|b| b.winding).collect();
    let all_even = bw.iter().chain(&pool.windings).all(|w| w % 2 == 0);
    if g == 1 {
        record.atilde = Some(gcd_all(bw.iter().map(|w| w + 2).chain(pool.windings.iter().copied())));
        return Ok(());
    }
    record.sigma = Some(if all_even { 0 } else { 1 });
    if !all_even || bw.iter().any(|w| w.rem_euclid(4) != 2) {
        return Ok(());
    }
    // symplectic reduction over Z/2, carrying the quadratic form along
    let k = basis.len();
    let form = |u: &[u8], v: &[u8]| -> u8 {
        let mut acc = 0i64;
        for i in 0..k {
            for j in 0..k {
                if u[i] == 1 && v[j] == 1 {
                    acc += pool.gram[basis[i]][basis[j]];
                }
            }
        }
        acc.rem_euclid(2) as u8
    };
    let mut vectors: Vec<(Vec<u8>, u8)> = (0..k)
        .map(|i| {
            let mut e = vec![0u8; k];
            e[i] = 1;
            (e, ((pool.windings[basis[i]] / 2 + 1).rem_euclid(2)) as u8)
        })
        .collect();
    let add = |x: &(Vec<u8>, u8), y: &(Vec<u8>, u8)| -> (Vec<u8>, u8) {
        let v: Vec<u8> = x.0.iter().zip(&y.0).map(|(a, b)| a ^ b).collect();
        (v, x.1 ^ y.1 ^ form(&x.0, &y.0))
    };
    let mut arf = 0u8;
    while !vectors.is_empty() {
        let u = vectors.remove(0);
        let pos = vectors
            .iter()
            .position(|v| form(&u.0, &v.0) == 1)
            .ok_or_else(|| Error::InternalInconsistency("degenerate intersection form mod 2".into()))?;
        let v = vectors.remove(pos);
        arf ^= u.1 & v.1;
        for w in vectors.iter_mut() {
            if form(&w.0, &v.0) == 1 {
                *w = add(w, &u);
            }
            if form(&w.0, &u.0) == 1 {
                *w = add(w, &v);
            }
        }
    }
    record.arf = Some(arf);
    Ok(())
}

/// Indices of pool cycles whose classes are independent mod 2, if `rank` of them exist.
fn mod2_basis(pool: &CurvePool, rank: usize) -> Option<Vec<usize>> {
    let mut rows: Vec<Vec<u8>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut chosen = Vec::new();
    for (i, class) in pool.classes.iter().enumerate() {
        let mut v: Vec<u8> = class.iter().map(|x| x.rem_euclid(2) as u8).collect();
        for (r, &p) in rows.iter().zip(&pivots) {
            if v[p] == 1 {
                for (a, b) in v.iter_mut().zip(r) {
                    *a ^= b;
                }
            }
        }
        if let Some(p) = v.iter().position(|&x| x == 1) {
            rows.push(v);
            pivots.push(p);
            chosen.push(i);
            if chosen.len() == rank {
                return Some(chosen);
            }
        }
    }
    None
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Comparison {
    pub invariant: String,
    pub left: String,
    pub right: String,
    pub agrees: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EquivalenceDecision {
    pub equivalent: bool,
    pub certificate: Vec<Comparison>,
}

pub fn derived_equivalent(a: &GentleAlgebra, b: &GentleAlgebra) -> Result<EquivalenceDecision> {
    derived_equivalent_with(a, b, &SearchOptions::default())
}

pub fn derived_equivalent_with(
    a: &GentleAlgebra,
    b: &GentleAlgebra,
    options: &SearchOptions,
) -> Result<EquivalenceDecision> {
    Ok(compare_records(&compute_invariants_with(a, options)?, &compute_invariants_with(b, options)?))
}

fn show<T: std::fmt::Debug>(x: &Option<T>) -> String {
    match x {
        Some(v) => format!("{v:?}"),
        None => "undefined".into(),
    }
}

/// Decides whether two records describe derived equivalent algebras.
pub fn compare_records(r1: &InvariantRecord, r2: &InvariantRecord) -> EquivalenceDecision {
    let mut cert = Vec::new();
    let mut push = |name: &str, l: String, r: String, agrees: bool| {
        cert.push(Comparison { invariant: name.into(), left: l, right: r, agrees });
        agrees
    };
    let mut ok = push("genus", r1.genus.to_string(), r2.genus.to_string(), r1.genus == r2.genus);
    ok &= push(
        "boundary components",
        r1.boundary_count().to_string(),
        r2.boundary_count().to_string(),
        r1.boundary_count() == r2.boundary_count(),
    );
    let (b1, b2) = (r1.sorted_boundaries(), r2.sorted_boundaries());
    let fmt_b =
        |b: &[BoundaryData]| b.iter().map(|x| format!("({},{})", x.marked, x.winding)).collect::<Vec<_>>().join(" ");
    ok &= push("boundary (marked, winding) multiset", fmt_b(&b1), fmt_b(&b2), b1 == b2);
    if ok {
        match r1.genus {
            0 => {}
            1 => ok &= push("atilde", show(&r1.atilde), show(&r2.atilde), r1.atilde == r2.atilde),
            _ => {
                let sig = push("sigma", show(&r1.sigma), show(&r2.sigma), r1.sigma == r2.sigma);
                ok &= sig;
                if sig && r1.sigma == Some(0) {
                    let zero_mod4 = b1.iter().any(|b| b.winding.rem_euclid(4) == 0);
                    if !zero_mod4 {
                        ok &= push("arf", show(&r1.arf), show(&r2.arf), r1.arf == r2.arf);
                    }
                }
            }
        }
    }
    EquivalenceDecision { equivalent: ok, certificate: cert }
}

/// Records in the derived class without silting objects: one handle, one
/// boundary component with one marked point, and `atilde = 0`.
pub fn record_has_silting(r: &InvariantRecord) -> bool {
    !(r.genus == 1 && r.boundary_count() == 1 && r.marked_points() == 1 && r.atilde == Some(0))
}

pub fn has_silting(a: &GentleAlgebra) -> Result<bool> {
    Ok(record_has_silting(&compute_invariants(a)?))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    NotPreSilting,
    NotPartialSilting,
    PartialSilting,
    Unknown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ComponentReport {
    pub vertices: Vec<String>,
    pub an_form: Option<AnForm>,
    /// `None` when the component is outside the range of the surface model.
    pub has_silting: Option<bool>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PartialSiltingReport {
    pub presilting: bool,
    pub corner_dimensions: GradedDimension,
    pub components: Vec<ComponentReport>,
    pub corner_smooth: Option<bool>,
    pub verdict: Verdict,
    pub reason: String,
}

/// Whether `eA`, for `e` the sum of the idempotents of `kept`, is partial silting.
pub fn partial_silting_analysis(a: &GentleAlgebra, kept: &VertexSet) -> Result<PartialSiltingReport> {
    a.require_smooth()?;
    a.require_proper()?;
    if kept.is_empty() {
        return Err(Error::InvalidIdempotent("no vertices kept".into()));
    }
    let corner = corner_algebra(a, kept)?;
    let presilting = corner.keys().all(|&d| d <= 0);
    let mut report = PartialSiltingReport {
        presilting,
        corner_dimensions: corner,
        components: Vec::new(),
        corner_smooth: None,
        verdict: Verdict::Unknown,
        reason: String::new(),
    };
    if !presilting {
        report.verdict = Verdict::NotPreSilting;
        report.reason = "eAe has basis elements in positive degree".into();
        return Ok(report);
    }
    if kept.len() == a.vertex_count() {
        report.verdict = Verdict::PartialSilting;
        report.reason = "eA is the whole algebra, which is silting".into();
        return Ok(report);
    }

    let reduced = reduce_idempotent(a, kept)?;
    for comp in connected_components(&reduced) {
        let vertices = comp.quiver().vertices().to_vec();
        let an_form = an_form_of(&comp);
        let has = if comp.is_smooth() && comp.is_proper() && comp.loops().next().is_none() {
            has_silting(&comp).ok()
        } else {
            None
        };
        report.components.push(ComponentReport { vertices, an_form, has_silting: has });
    }

    if kept.len() + 1 == a.vertex_count() {
        report.verdict = Verdict::PartialSilting;
        report.reason = "the reduced algebra has one vertex and a non-positive loop or none".into();
        return Ok(report);
    }
    report.corner_smooth = corner_quiver(a, kept).ok().map(|c| c.is_smooth());
    if report.corner_smooth != Some(true) {
        report.reason = "eAe is not presented as a smooth gentle algebra".into();
        return Ok(report);
    }
    if report.components.iter().any(|c| c.has_silting == Some(false)) {
        report.verdict = Verdict::NotPartialSilting;
        report.reason = "a component of the reduced algebra is derived equivalent to (1,1)".into();
    } else if report.components.iter().all(|c| c.has_silting == Some(true)) {
        report.verdict = Verdict::PartialSilting;
        report.reason = "every component of the reduced algebra admits a silting object".into();
    } else {
        report.reason = "a component of the reduced algebra is not smooth and proper".into();
    }
    Ok(report)
}
