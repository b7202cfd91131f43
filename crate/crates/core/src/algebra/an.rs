//! The family `A^(n)`: the gentle algebra on vertices `1..2n` with arrows
//! `a_i, c_i: 2i-1 -> 2i`, `b_i: 2i -> 2i-1`, `d_j: 2j -> 2j+1` and
//! relations `a_i b_i`, `b_i c_i`, `c_j d_j`, `d_j a_{j+1}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{Arrow, GentleAlgebra, GradedQuiver};
use crate::error::{Error, Result};

/// Grading sums `(a_i, b_i)` with `a_i = |a_i| + |b_i|` and `b_i = |b_i| + |c_i|`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AnForm {
    pub pairs: Vec<(i64, i64)>,
}

impl AnForm {
    pub fn new(pairs: Vec<(i64, i64)>) -> Result<Self> {
        if pairs.is_empty() {
            return Err(Error::NotAnForm("at least one pair".into()));
        }
        Ok(AnForm { pairs })
    }

    pub fn n(&self) -> usize {
        self.pairs.len()
    }
}

impl fmt::Display for AnForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("(")?;
        for (i, (a, b)) in self.pairs.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{a},{b}")?;
        }
        f.write_str(")")
    }
}

/// Parses `"a1,b1;a2,b2"`, with or without surrounding parentheses.
impl FromStr for AnForm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let mut pairs = Vec::new();
        for chunk in body.split(';') {
            let parts: Vec<&str> = chunk.split(',').map(str::trim).collect();
            let bad = || Error::Parse { line: 1, message: format!("expected `a,b` pair, found `{}`", chunk.trim()) };
            if parts.len() != 2 {
                return Err(bad());
            }
            let a = parts[0].parse().map_err(|_| bad())?;
            let b = parts[1].parse().map_err(|_| bad())?;
            pairs.push((a, b));
        }
        AnForm::new(pairs)
    }
}

/// `A^(n)` with `|b_i| = |d_j| = 0`, `|a_i| = a_i`, `|c_i| = b_i`.
pub fn make_an(form: &AnForm) -> GentleAlgebra {
    let n = form.n();
    make_an_graded(form, &vec![0; n], &vec![0; n.saturating_sub(1)])
}

/// `A^(n)` realizing the same sums with prescribed degrees on the `b_i` and `d_j`.
pub fn make_an_graded(form: &AnForm, b_degrees: &[i64], d_degrees: &[i64]) -> GentleAlgebra {
    let n = form.n();
    assert!(n >= 1, "AnForm is nonempty");
    assert_eq!(b_degrees.len(), n);
    assert_eq!(d_degrees.len(), n - 1);
    let vertices = (1..=2 * n).map(|v| v.to_string()).collect();
    let mut arrows = Vec::with_capacity(4 * n - 1);
    let mut rels = Vec::with_capacity(4 * n - 2);
    let arrow = |id: String, source, target, degree| Arrow { id, source, target, degree };
    for i in 0..n {
        let (a, b) = form.pairs[i];
        let bd = b_degrees[i];
        let base = arrows.len();
        arrows.push(arrow(format!("a{}", i + 1), 2 * i, 2 * i + 1, a - bd));
        arrows.push(arrow(format!("b{}", i + 1), 2 * i + 1, 2 * i, bd));
        arrows.push(arrow(format!("c{}", i + 1), 2 * i, 2 * i + 1, b - bd));
        rels.push((base, base + 1));
        rels.push((base + 1, base + 2));
        if i + 1 < n {
            arrows.push(arrow(format!("d{}", i + 1), 2 * i + 1, 2 * i + 2, d_degrees[i]));
            rels.push((base + 2, base + 3));
            rels.push((base + 3, base + 4));
        }
    }
    let quiver = GradedQuiver::new(vertices, arrows).expect("A^(n) quiver is well formed");
    GentleAlgebra::new(quiver, rels).expect("A^(n) is gentle")
}

/// Recognizes algebras whose ungraded quiver with relations is isomorphic to
/// that of `A^(n)` and returns the grading sums. When several isomorphisms
/// exist, the lexicographically smallest form is returned.
pub fn an_form_of(algebra: &GentleAlgebra) -> Option<AnForm> {
    let nv = algebra.vertex_count();
    if !nv.is_multiple_of(2) || nv == 0 {
        return None;
    }
    let n = nv / 2;
    if algebra.arrow_count() != 4 * n - 1 || algebra.relations().len() != 4 * n - 2 {
        return None;
    }
    let template = make_an(&AnForm { pairs: vec![(0, 0); n] });
    let mut forms = Vec::new();
    for start in 0..nv {
        let mut m = Matcher {
            template: &template,
            target: algebra,
            vmap: vec![None; nv],
            vused: vec![false; nv],
            amap: vec![None; template.arrow_count()],
            aused: vec![false; algebra.arrow_count()],
            found: Vec::new(),
        };
        m.vmap[0] = Some(start);
        m.vused[start] = true;
        m.extend(0);
        for amap in m.found {
            let deg = |t: usize| algebra.arrow(amap[t]).degree;
            // template arrows per pair: a, b, c (then d)
            let pairs = (0..n)
                .map(|i| {
                    let base = 4 * i;
                    (deg(base) + deg(base + 1), deg(base + 1) + deg(base + 2))
                })
                .collect();
            forms.push(AnForm { pairs });
        }
    }
    forms.into_iter().min()
}

struct Matcher<'a> {
    template: &'a GentleAlgebra,
    target: &'a GentleAlgebra,
    vmap: Vec<Option<usize>>,
    vused: Vec<bool>,
    amap: Vec<Option<usize>>,
    aused: Vec<bool>,
    found: Vec<Vec<usize>>,
}

impl Matcher<'_> {
    // Template arrows are ordered so that each arrow's source is already
    // mapped when it is reached.
    fn extend(&mut self, t: usize) {
        if t == self.template.arrow_count() {
            let amap: Vec<usize> = self.amap.iter().map(|a| a.unwrap()).collect();
            let ok = self.template.relations().iter().all(|&(x, y)| self.target.is_relation(amap[x], amap[y]));
            if ok {
                self.found.push(amap);
            }
            return;
        }
        let ta = self.template.arrow(t);
        let src = self.vmap[ta.source].expect("template order maps sources first");
        for &cand in self.target.outgoing(src) {
            if self.aused[cand] {
                continue;
            }
            let ct = self.target.arrow(cand).target;
            let fresh = match self.vmap[ta.target] {
                Some(v) if v == ct => false,
                Some(_) => continue,
                None if self.vused[ct] => continue,
                None => true,
            };
            if fresh {
                self.vmap[ta.target] = Some(ct);
                self.vused[ct] = true;
            }
            self.amap[t] = Some(cand);
            self.aused[cand] = true;
            self.extend(t + 1);
            self.aused[cand] = false;
            self.amap[t] = None;
            if fresh {
                self.vmap[ta.target] = None;
                self.vused[ct] = false;
            }
        }
    }
}

/// Koszul dual of a two-handle form: `(2-a2, 2-b2; 2-a1, 2-b1)`.
pub fn koszul_dual_a2(form: &AnForm) -> Result<AnForm> {
    match form.pairs.as_slice() {
        &[(a1, b1), (a2, b2)] => Ok(AnForm { pairs: vec![(2 - a2, 2 - b2), (2 - a1, 2 - b1)] }),
        _ => Err(Error::NotAnForm(format!("exactly 2 pairs, got {}", form.n()))),
    }
}

/// Derived-equivalent rewrite `(a1+a2+b1-4, b1; a2, 3-b1+b2; rest)`.
pub fn an_rewrite_move(form: &AnForm) -> Result<AnForm> {
    if form.n() < 2 {
        return Err(Error::NotAnForm(format!("at least 2 pairs, got {}", form.n())));
    }
    let (a1, b1) = form.pairs[0];
    let (a2, b2) = form.pairs[1];
    let mut pairs = vec![(a1 + a2 + b1 - 4, b1), (a2, 3 - b1 + b2)];
    pairs.extend_from_slice(&form.pairs[2..]);
    Ok(AnForm { pairs })
}
