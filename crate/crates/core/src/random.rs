//! Random smooth, proper, connected gentle algebras for property tests and
//! sweeps.
//!
//! The generator works on the surface side: it scatters the `2n` ends of
//! `n` arcs into linear fans, reads off arrows between consecutive ends and
//! relations between arrows meeting a vertex at different ends, and keeps
//! the result when it is connected and smooth.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::algebra::{AnForm, Arrow, GentleAlgebra, GradedQuiver};

#[derive(Debug, Clone, Copy)]
pub struct RandomConfig {
    pub min_vertices: usize,
    pub max_vertices: usize,
    pub min_degree: i64,
    pub max_degree: i64,
}

impl Default for RandomConfig {
    fn default() -> Self {
        RandomConfig { min_vertices: 1, max_vertices: 8, min_degree: -3, max_degree: 3 }
    }
}

/// Attempts one draw; `None` when the draw is disconnected, has a loop, or
/// is not smooth.
pub fn try_random_gentle<R: Rng + ?Sized>(rng: &mut R, n: usize, config: &RandomConfig) -> Option<GentleAlgebra> {
    let mut ends: Vec<usize> = (0..2 * n).collect();
    ends.shuffle(rng);
    // cut the shuffled ends into fans
    let mut fans: Vec<Vec<usize>> = Vec::new();
    for (i, &h) in ends.iter().enumerate() {
        if i == 0 || rng.gen_bool(0.35) {
            fans.push(Vec::new());
        }
        fans.last_mut().unwrap().push(h);
    }
    let mut arrows = Vec::new();
    // (source end, target end) per arrow
    let mut at = Vec::new();
    for fan in &fans {
        for w in fan.windows(2) {
            let (s, t) = (w[0] / 2, w[1] / 2);
            if s == t {
                return None;
            }
            arrows.push(Arrow {
                id: String::new(),
                source: s,
                target: t,
                degree: rng.gen_range(config.min_degree..=config.max_degree),
            });
            at.push((w[0], w[1]));
        }
    }
    let mut relations = Vec::new();
    for x in 0..arrows.len() {
        for y in 0..arrows.len() {
            if arrows[x].target == arrows[y].source && at[x].1 != at[y].0 {
                relations.push((x, y));
            }
        }
    }
    // random names so that nothing depends on declaration order
    let mut vnames: Vec<usize> = (1..=n).collect();
    vnames.shuffle(rng);
    let vertices = vnames.iter().map(|v| format!("v{v}")).collect();
    let mut anames: Vec<usize> = (1..=arrows.len()).collect();
    anames.shuffle(rng);
    for (a, k) in arrows.iter_mut().zip(anames) {
        a.id = format!("x{k}");
    }
    let quiver = GradedQuiver::new(vertices, arrows).ok()?;
    let algebra = GentleAlgebra::new(quiver, relations).ok()?;
    (algebra.is_connected() && algebra.is_smooth() && algebra.is_proper()).then_some(algebra)
}

/// Draws until a smooth, proper, connected algebra comes out.
pub fn random_gentle<R: Rng + ?Sized>(rng: &mut R, config: &RandomConfig) -> GentleAlgebra {
    loop {
        let n = rng.gen_range(config.min_vertices..=config.max_vertices);
        if let Some(a) = try_random_gentle(rng, n, config) {
            return a;
        }
    }
}

pub fn random_an_form<R: Rng + ?Sized>(rng: &mut R, n: usize, lo: i64, hi: i64) -> AnForm {
    AnForm { pairs: (0..n).map(|_| (rng.gen_range(lo..=hi), rng.gen_range(lo..=hi))).collect() }
}
