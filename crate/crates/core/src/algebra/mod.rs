//! Graded gentle algebras `kQ/I` given by a graded quiver and a set of
//! length-two monomial relations.
//!
//! Paths are composed left to right: the relation `(a, b)` stands for the
//! path "first `a`, then `b`", so it requires `target(a) == source(b)`.

mod an;
mod reduce;

pub use an::{an_form_of, an_rewrite_move, koszul_dual_a2, make_an, make_an_graded, AnForm};
pub use reduce::{
    corner_algebra, corner_quiver, is_presilting_idempotent, reduce_idempotent, GradedDimension, VertexSet,
};

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Arrow {
    pub id: String,
    pub source: usize,
    pub target: usize,
    pub degree: i64,
}

/// A finite quiver whose arrows carry integer degrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedQuiver {
    vertices: Vec<String>,
    arrows: Vec<Arrow>,
}

impl GradedQuiver {
    pub fn new(vertices: Vec<String>, arrows: Vec<Arrow>) -> Result<Self> {
        let mut seen = HashSet::new();
        for v in &vertices {
            if !seen.insert(v.as_str()) {
                return Err(Error::InvalidPresentation(format!("duplicate vertex id `{v}`")));
            }
        }
        let mut seen = HashSet::new();
        for a in &arrows {
            if !seen.insert(a.id.as_str()) {
                return Err(Error::InvalidPresentation(format!("duplicate arrow id `{}`", a.id)));
            }
            if a.source >= vertices.len() || a.target >= vertices.len() {
                return Err(Error::InvalidPresentation(format!("arrow `{}` refers to an undeclared vertex", a.id)));
            }
        }
        Ok(GradedQuiver { vertices, arrows })
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.arrows
    }
}

/// Name-level description of an algebra, the common shape of the text and
/// JSON file formats.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Presentation {
    pub vertices: Vec<String>,
    pub arrows: Vec<ArrowDecl>,
    #[serde(default)]
    pub relations: Vec<(String, String)>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ArrowDecl {
    pub id: String,
    pub src: String,
    pub tgt: String,
    pub deg: i64,
}

/// A validated graded gentle algebra.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GentleAlgebra {
    quiver: GradedQuiver,
    relations: BTreeSet<(usize, usize)>,
    outgoing: Vec<Vec<usize>>,
    incoming: Vec<Vec<usize>>,
    relation_successor: Vec<Option<usize>>,
    relation_predecessor: Vec<Option<usize>>,
    free_successor: Vec<Option<usize>>,
    free_predecessor: Vec<Option<usize>>,
}

/// A path of the quiver together with its degree. Trivial paths have no
/// arrows and degree zero.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Path {
    pub start: usize,
    pub end: usize,
    pub arrows: Vec<usize>,
    pub degree: i64,
}

impl Path {
    pub fn is_trivial(&self) -> bool {
        self.arrows.is_empty()
    }
}

pub type PathBasis = Vec<Path>;

impl GentleAlgebra {
    /// Validates the gentleness conditions. Relations are given by arrow index.
    pub fn new(quiver: GradedQuiver, relations: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let n = quiver.vertices.len();
        if n == 0 {
            return Err(Error::InvalidPresentation("quiver has no vertices".into()));
        }
        let arrows = &quiver.arrows;
        let mut rels = BTreeSet::new();
        for (a, b) in relations {
            if a >= arrows.len() || b >= arrows.len() {
                return Err(Error::InvalidPresentation("relation refers to an unknown arrow".into()));
            }
            if arrows[a].target != arrows[b].source {
                return Err(Error::RelationNotComposable { first: arrows[a].id.clone(), second: arrows[b].id.clone() });
            }
            if !rels.insert((a, b)) {
                return Err(Error::InvalidPresentation(format!("duplicate relation {}{}", arrows[a].id, arrows[b].id)));
            }
        }

        let mut outgoing = vec![Vec::new(); n];
        let mut incoming = vec![Vec::new(); n];
        for (i, a) in arrows.iter().enumerate() {
            outgoing[a.source].push(i);
            incoming[a.target].push(i);
        }
        for v in 0..n {
            if outgoing[v].len() > 2 {
                return Err(Error::NotGentle(format!(
                    "vertex `{}` is the source of {} arrows (at most 2 allowed)",
                    quiver.vertices[v],
                    outgoing[v].len()
                )));
            }
            if incoming[v].len() > 2 {
                return Err(Error::NotGentle(format!(
                    "vertex `{}` is the target of {} arrows (at most 2 allowed)",
                    quiver.vertices[v],
                    incoming[v].len()
                )));
            }
        }

        let m = arrows.len();
        let mut relation_successor = vec![None; m];
        let mut relation_predecessor = vec![None; m];
        let mut free_successor = vec![None; m];
        let mut free_predecessor = vec![None; m];
        for a in 0..m {
            let name = &arrows[a].id;
            let (mut rel, mut free) = (Vec::new(), Vec::new());
            for &b in &outgoing[arrows[a].target] {
                if rels.contains(&(a, b)) {
                    rel.push(b);
                } else {
                    free.push(b);
                }
            }
            if rel.len() > 1 {
                return Err(Error::NotGentle(format!("arrow `{name}` is followed by more than one relation")));
            }
            if free.len() > 1 {
                return Err(Error::NotGentle(format!(
                    "arrow `{name}` has more than one successor outside the relations"
                )));
            }
            relation_successor[a] = rel.first().copied();
            free_successor[a] = free.first().copied();

            let (mut rel, mut free) = (Vec::new(), Vec::new());
            for &c in &incoming[arrows[a].source] {
                if rels.contains(&(c, a)) {
                    rel.push(c);
                } else {
                    free.push(c);
                }
            }
            if rel.len() > 1 {
                return Err(Error::NotGentle(format!("arrow `{name}` is preceded by more than one relation")));
            }
            if free.len() > 1 {
                return Err(Error::NotGentle(format!(
                    "arrow `{name}` has more than one predecessor outside the relations"
                )));
            }
            relation_predecessor[a] = rel.first().copied();
            free_predecessor[a] = free.first().copied();
        }

        Ok(GentleAlgebra {
            quiver,
            relations: rels,
            outgoing,
            incoming,
            relation_successor,
            relation_predecessor,
            free_successor,
            free_predecessor,
        })
    }

    /// Builds and validates an algebra from a name-level presentation.
    pub fn from_presentation(p: &Presentation) -> Result<Self> {
        let mut index = HashMap::new();
        for (i, v) in p.vertices.iter().enumerate() {
            if index.insert(v.as_str(), i).is_some() {
                return Err(Error::InvalidPresentation(format!("duplicate vertex id `{v}`")));
            }
        }
        let lookup = |name: &str| {
            index.get(name).copied().ok_or_else(|| Error::InvalidPresentation(format!("unknown vertex `{name}`")))
        };
        let mut arrows = Vec::with_capacity(p.arrows.len());
        for a in &p.arrows {
            arrows.push(Arrow { id: a.id.clone(), source: lookup(&a.src)?, target: lookup(&a.tgt)?, degree: a.deg });
        }
        let quiver = GradedQuiver::new(p.vertices.clone(), arrows)?;
        let arrow_index: HashMap<&str, usize> =
            quiver.arrows.iter().enumerate().map(|(i, a)| (a.id.as_str(), i)).collect();
        let mut rels = Vec::with_capacity(p.relations.len());
        for (a, b) in &p.relations {
            let ia = *arrow_index
                .get(a.as_str())
                .ok_or_else(|| Error::InvalidPresentation(format!("unknown arrow `{a}` in relation")))?;
            let ib = *arrow_index
                .get(b.as_str())
                .ok_or_else(|| Error::InvalidPresentation(format!("unknown arrow `{b}` in relation")))?;
            rels.push((ia, ib));
        }
        GentleAlgebra::new(quiver, rels)
    }

    pub fn to_presentation(&self) -> Presentation {
        let v = &self.quiver.vertices;
        Presentation {
            vertices: v.clone(),
            arrows: self
                .quiver
                .arrows
                .iter()
                .map(|a| ArrowDecl {
                    id: a.id.clone(),
                    src: v[a.source].clone(),
                    tgt: v[a.target].clone(),
                    deg: a.degree,
                })
                .collect(),
            relations: self
                .relations
                .iter()
                .map(|&(a, b)| (self.arrow(a).id.clone(), self.arrow(b).id.clone()))
                .collect(),
        }
    }

    pub fn quiver(&self) -> &GradedQuiver {
        &self.quiver
    }

    pub fn vertex_count(&self) -> usize {
        self.quiver.vertices.len()
    }

    pub fn arrow_count(&self) -> usize {
        self.quiver.arrows.len()
    }

    pub fn vertex_name(&self, v: usize) -> &str {
        &self.quiver.vertices[v]
    }

    pub fn vertex_index(&self, name: &str) -> Option<usize> {
        self.quiver.vertices.iter().position(|v| v == name)
    }

    pub fn arrow(&self, a: usize) -> &Arrow {
        &self.quiver.arrows[a]
    }

    pub fn arrows(&self) -> &[Arrow] {
        &self.quiver.arrows
    }

    pub fn arrow_index(&self, id: &str) -> Option<usize> {
        self.quiver.arrows.iter().position(|a| a.id == id)
    }

    pub fn relations(&self) -> &BTreeSet<(usize, usize)> {
        &self.relations
    }

    pub fn is_relation(&self, a: usize, b: usize) -> bool {
        self.relations.contains(&(a, b))
    }

    pub fn outgoing(&self, v: usize) -> &[usize] {
        &self.outgoing[v]
    }

    pub fn incoming(&self, v: usize) -> &[usize] {
        &self.incoming[v]
    }

    /// The arrow `b` with `ab` a relation, if any.
    pub fn relation_successor(&self, a: usize) -> Option<usize> {
        self.relation_successor[a]
    }

    pub fn relation_predecessor(&self, a: usize) -> Option<usize> {
        self.relation_predecessor[a]
    }

    /// The arrow `b` with `ab` a nonzero path, if any.
    pub fn free_successor(&self, a: usize) -> Option<usize> {
        self.free_successor[a]
    }

    pub fn free_predecessor(&self, a: usize) -> Option<usize> {
        self.free_predecessor[a]
    }

    pub fn is_ungraded(&self) -> bool {
        self.quiver.arrows.iter().all(|a| a.degree == 0)
    }

    pub fn loops(&self) -> impl Iterator<Item = usize> + '_ {
        self.quiver.arrows.iter().enumerate().filter(|(_, a)| a.source == a.target).map(|(i, _)| i)
    }

    /// Same quiver and relations with new arrow degrees.
    pub fn with_degrees(&self, degrees: &[i64]) -> GentleAlgebra {
        assert_eq!(degrees.len(), self.arrow_count(), "one degree per arrow");
        let mut out = self.clone();
        for (a, &d) in out.quiver.arrows.iter_mut().zip(degrees) {
            a.degree = d;
        }
        out
    }

    /// Renames vertex `v` to `names[v]` and reorders vertices and arrows by
    /// the given permutations. Produces an isomorphic algebra.
    pub fn relabeled(&self, vertex_perm: &[usize], arrow_perm: &[usize]) -> GentleAlgebra {
        let n = self.vertex_count();
        let m = self.arrow_count();
        assert_eq!(vertex_perm.len(), n);
        assert_eq!(arrow_perm.len(), m);
        // vertex v moves to position vertex_perm[v]
        let mut vertices = vec![String::new(); n];
        for v in 0..n {
            vertices[vertex_perm[v]] = format!("r{}", self.vertex_name(v));
        }
        let mut arrows = vec![None; m];
        for (a, arrow) in self.quiver.arrows.iter().enumerate() {
            arrows[arrow_perm[a]] = Some(Arrow {
                id: format!("r{}", arrow.id),
                source: vertex_perm[arrow.source],
                target: vertex_perm[arrow.target],
                degree: arrow.degree,
            });
        }
        let quiver = GradedQuiver::new(vertices, arrows.into_iter().map(Option::unwrap).collect())
            .expect("relabeling preserves well-formedness");
        let rels = self.relations.iter().map(|&(a, b)| (arrow_perm[a], arrow_perm[b]));
        GentleAlgebra::new(quiver, rels).expect("relabeling preserves gentleness")
    }

    /// Finite dimensionality: no cyclic sequence of arrows whose consecutive
    /// pairs (including the wrap-around) are all nonzero.
    pub fn is_proper(&self) -> bool {
        find_functional_cycle(&self.free_successor).is_none()
    }

    /// No cyclic forbidden thread: no cyclic sequence of arrows whose
    /// consecutive pairs (including the wrap-around) are all relations.
    pub fn is_smooth(&self) -> bool {
        find_functional_cycle(&self.relation_successor).is_none()
    }

    pub(crate) fn require_proper(&self) -> Result<()> {
        match find_functional_cycle(&self.free_successor) {
            None => Ok(()),
            Some(cycle) => Err(Error::NotProper(self.arrow_word(&cycle))),
        }
    }

    pub(crate) fn require_smooth(&self) -> Result<()> {
        match find_functional_cycle(&self.relation_successor) {
            None => Ok(()),
            Some(cycle) => Err(Error::NotSmooth(self.arrow_word(&cycle))),
        }
    }

    pub fn arrow_word(&self, arrows: &[usize]) -> String {
        arrows.iter().map(|&a| self.arrow(a).id.as_str()).collect::<Vec<_>>().join("·")
    }

    /// All nonzero paths, trivial paths included.
    pub fn path_basis(&self) -> Result<PathBasis> {
        self.require_proper()?;
        let mut basis: PathBasis =
            (0..self.vertex_count()).map(|v| Path { start: v, end: v, arrows: Vec::new(), degree: 0 }).collect();
        for a in 0..self.arrow_count() {
            let mut arrows = vec![a];
            let mut degree = self.arrow(a).degree;
            loop {
                let last = *arrows.last().unwrap();
                basis.push(Path {
                    start: self.arrow(a).source,
                    end: self.arrow(last).target,
                    arrows: arrows.clone(),
                    degree,
                });
                match self.free_successor(last) {
                    Some(b) => {
                        degree += self.arrow(b).degree;
                        arrows.push(b);
                    }
                    None => break,
                }
            }
        }
        Ok(basis)
    }

    /// Maximal sequences of arrows in which each consecutive pair is a
    /// relation. Only arrow-carrying threads are listed.
    pub fn relation_threads(&self) -> Result<Vec<Vec<usize>>> {
        self.require_smooth()?;
        let mut threads = Vec::new();
        for a in 0..self.arrow_count() {
            if self.relation_predecessor(a).is_some() {
                continue;
            }
            let mut thread = vec![a];
            while let Some(b) = self.relation_successor(*thread.last().unwrap()) {
                thread.push(b);
            }
            threads.push(thread);
        }
        Ok(threads)
    }

    /// Vertex sets of the connected components of the underlying graph,
    /// each sorted, ordered by smallest vertex.
    pub fn component_vertex_sets(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut parent: Vec<usize> = (0..n).collect();
        fn find(parent: &mut [usize], x: usize) -> usize {
            let mut r = x;
            while parent[r] != r {
                r = parent[r];
            }
            let mut x = x;
            while parent[x] != r {
                let next = parent[x];
                parent[x] = r;
                x = next;
            }
            r
        }
        for a in &self.quiver.arrows {
            let (ra, rb) = (find(&mut parent, a.source), find(&mut parent, a.target));
            if ra != rb {
                parent[ra.max(rb)] = ra.min(rb);
            }
        }
        let mut groups: BTreeMap<usize, Vec<usize>> = BTreeMap::new();
        for v in 0..n {
            let r = find(&mut parent, v);
            groups.entry(r).or_default().push(v);
        }
        groups.into_values().collect()
    }

    pub fn is_connected(&self) -> bool {
        self.component_vertex_sets().len() == 1
    }

    /// The full subalgebra on a vertex subset closed under arrows in both
    /// directions (a union of components).
    pub(crate) fn restrict_to(&self, vertices: &[usize]) -> GentleAlgebra {
        let mut new_index = vec![None; self.vertex_count()];
        for (i, &v) in vertices.iter().enumerate() {
            new_index[v] = Some(i);
        }
        let mut arrow_index = vec![None; self.arrow_count()];
        let mut arrows = Vec::new();
        for (i, a) in self.quiver.arrows.iter().enumerate() {
            if let (Some(s), Some(t)) = (new_index[a.source], new_index[a.target]) {
                arrow_index[i] = Some(arrows.len());
                arrows.push(Arrow { id: a.id.clone(), source: s, target: t, degree: a.degree });
            }
        }
        let names = vertices.iter().map(|&v| self.vertex_name(v).to_string()).collect();
        let quiver = GradedQuiver::new(names, arrows).expect("sub-quiver of a valid quiver");
        let rels =
            self.relations.iter().filter_map(|&(a, b)| Some((arrow_index[a]?, arrow_index[b]?))).collect::<Vec<_>>();
        GentleAlgebra::new(quiver, rels).expect("restriction of a gentle algebra is gentle")
    }
}

/// Partition into connected components with relations restricted.
pub fn connected_components(algebra: &GentleAlgebra) -> Vec<GentleAlgebra> {
    algebra.component_vertex_sets().iter().map(|vs| algebra.restrict_to(vs)).collect()
}

/// Finds a cycle in the partial map `next` (each node has at most one
/// successor), returned in traversal order.
fn find_functional_cycle(next: &[Option<usize>]) -> Option<Vec<usize>> {
    // 0 = unvisited, 1 = on current walk, 2 = done
    let mut state = vec![0u8; next.len()];
    for start in 0..next.len() {
        if state[start] != 0 {
            continue;
        }
        let mut walk = Vec::new();
        let mut cur = Some(start);
        while let Some(x) = cur {
            match state[x] {
                0 => {
                    state[x] = 1;
                    walk.push(x);
                    cur = next[x];
                }
                1 => {
                    let pos = walk.iter().position(|&w| w == x).unwrap();
                    return Some(walk[pos..].to_vec());
                }
                _ => break,
            }
        }
        for w in walk {
            state[w] = 2;
        }
    }
    None
}

impl fmt::Display for GentleAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::presentation::to_text(self))
    }
}
