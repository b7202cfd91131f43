//! Idempotent reductions: the algebra `A_e` obtained by removing the vertices
//! of `e`, and the corner algebra `eAe`.

use std::collections::{BTreeMap, BTreeSet};

use super::{Arrow, GentleAlgebra, GradedQuiver};
use crate::error::{Error, Result};

/// A subset of the vertices of an algebra, stored as vertex indices.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct VertexSet(BTreeSet<usize>);

impl VertexSet {
    pub fn new(algebra: &GentleAlgebra, vertices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let n = algebra.vertex_count();
        let mut set = BTreeSet::new();
        for v in vertices {
            if v >= n {
                return Err(Error::IndexOutOfRange { index: v, len: n });
            }
            set.insert(v);
        }
        Ok(VertexSet(set))
    }

    pub fn from_names<S: AsRef<str>>(algebra: &GentleAlgebra, names: &[S]) -> Result<Self> {
        let mut set = BTreeSet::new();
        for name in names {
            let name = name.as_ref();
            let v = algebra
                .vertex_index(name)
                .ok_or_else(|| Error::InvalidIdempotent(format!("unknown vertex `{name}`")))?;
            set.insert(v);
        }
        Ok(VertexSet(set))
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.contains(&v)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn complement(&self, algebra: &GentleAlgebra) -> VertexSet {
        VertexSet((0..algebra.vertex_count()).filter(|v| !self.0.contains(v)).collect())
    }
}

/// Number of basis paths in each degree.
pub type GradedDimension = BTreeMap<i64, usize>;

/// The algebra `A_e` for `e` the sum of the idempotents in `dropped`.
///
/// Its arrows are the paths `[x_1 ... x_k]` in which every consecutive pair
/// is a relation, both endpoints are kept and all interior vertices are
/// dropped; `[x_1 ... x_k]` has degree `sum |x_i| - k + 1`. `[p][q]` is a
/// relation iff `last(p) first(q)` is one in `A`.
pub fn reduce_idempotent(algebra: &GentleAlgebra, dropped: &VertexSet) -> Result<GentleAlgebra> {
    let n = algebra.vertex_count();
    if dropped.iter().any(|v| v >= n) {
        return Err(Error::InvalidIdempotent("vertex out of range".into()));
    }
    if dropped.len() == n {
        return Err(Error::InvalidIdempotent("cannot drop every vertex".into()));
    }
    let kept: Vec<usize> = (0..n).filter(|&v| !dropped.contains(v)).collect();
    let mut new_index = vec![usize::MAX; n];
    for (i, &v) in kept.iter().enumerate() {
        new_index[v] = i;
    }

    let mut paths: Vec<Vec<usize>> = Vec::new();
    for a in 0..algebra.arrow_count() {
        if dropped.contains(algebra.arrow(a).source) {
            continue;
        }
        let mut path = vec![a];
        loop {
            let last = *path.last().unwrap();
            let t = algebra.arrow(last).target;
            if !dropped.contains(t) {
                paths.push(path);
                break;
            }
            match algebra.relation_successor(last) {
                // a cyclic forbidden thread through dropped vertices never returns
                Some(b) if path.len() <= algebra.arrow_count() => path.push(b),
                _ => break,
            }
        }
    }

    let arrows = paths
        .iter()
        .map(|p| Arrow {
            id: p.iter().map(|&a| algebra.arrow(a).id.as_str()).collect::<Vec<_>>().join("."),
            source: new_index[algebra.arrow(p[0]).source],
            target: new_index[algebra.arrow(*p.last().unwrap()).target],
            degree: p.iter().map(|&a| algebra.arrow(a).degree).sum::<i64>() - p.len() as i64 + 1,
        })
        .collect();
    let mut rels = Vec::new();
    for (i, p) in paths.iter().enumerate() {
        for (j, q) in paths.iter().enumerate() {
            if algebra.is_relation(*p.last().unwrap(), q[0]) {
                rels.push((i, j));
            }
        }
    }
    let names = kept.iter().map(|&v| algebra.vertex_name(v).to_string()).collect();
    let quiver = GradedQuiver::new(names, arrows)?;
    GentleAlgebra::new(quiver, rels)
}

/// Graded dimension of `eAe` for `e` the sum of the idempotents in `kept`.
pub fn corner_algebra(algebra: &GentleAlgebra, kept: &VertexSet) -> Result<GradedDimension> {
    let mut dims = GradedDimension::new();
    for p in algebra.path_basis()? {
        if kept.contains(p.start) && kept.contains(p.end) {
            *dims.entry(p.degree).or_default() += 1;
        }
    }
    Ok(dims)
}

/// Whether `eA` has no positive self-extensions, i.e. `eAe` lives in
/// non-positive degrees.
pub fn is_presilting_idempotent(algebra: &GentleAlgebra, kept: &VertexSet) -> Result<bool> {
    Ok(corner_algebra(algebra, kept)?.keys().all(|&d| d <= 0))
}

/// `eAe` as a quiver with quadratic monomial relations, when it is gentle.
///
/// Generators are the nonzero paths between kept vertices whose interior
/// vertices are all outside `kept`; two generators compose to zero iff the
/// arrows meeting at the junction form a relation.
pub fn corner_quiver(algebra: &GentleAlgebra, kept: &VertexSet) -> Result<GentleAlgebra> {
    algebra.require_proper()?;
    if kept.is_empty() {
        return Err(Error::InvalidIdempotent("empty idempotent".into()));
    }
    let kept_list: Vec<usize> = kept.iter().collect();
    let mut new_index = vec![usize::MAX; algebra.vertex_count()];
    for (i, &v) in kept_list.iter().enumerate() {
        new_index[v] = i;
    }
    let mut paths: Vec<Vec<usize>> = Vec::new();
    for a in 0..algebra.arrow_count() {
        if !kept.contains(algebra.arrow(a).source) {
            continue;
        }
        let mut path = vec![a];
        loop {
            let last = *path.last().unwrap();
            if kept.contains(algebra.arrow(last).target) {
                paths.push(path);
                break;
            }
            match algebra.free_successor(last) {
                Some(b) => path.push(b),
                None => break,
            }
        }
    }
    let arrows = paths
        .iter()
        .map(|p| Arrow {
            id: p.iter().map(|&a| algebra.arrow(a).id.as_str()).collect::<Vec<_>>().join("."),
            source: new_index[algebra.arrow(p[0]).source],
            target: new_index[algebra.arrow(*p.last().unwrap()).target],
            degree: p.iter().map(|&a| algebra.arrow(a).degree).sum(),
        })
        .collect();
    let mut rels = Vec::new();
    for (i, p) in paths.iter().enumerate() {
        for (j, q) in paths.iter().enumerate() {
            if algebra.is_relation(*p.last().unwrap(), q[0]) {
                rels.push((i, j));
            }
        }
    }
    let names = kept_list.iter().map(|&v| algebra.vertex_name(v).to_string()).collect();
    GentleAlgebra::new(GradedQuiver::new(names, arrows)?, rels)
}
