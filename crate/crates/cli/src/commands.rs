use std::fmt::Write as _;

use gentle_topo::algebra::{an_form_of, an_rewrite_move, koszul_dual_a2, make_an, reduce_idempotent, AnForm};
use gentle_topo::curves::SearchOptions;
use gentle_topo::invariants::{
    compute_invariants_with, derived_equivalent_with, partial_silting_analysis, record_has_silting, InvariantRecord,
    PartialSiltingReport,
};
use gentle_topo::presentation::{read_algebra, to_json, to_text};
use gentle_topo::{build_surface, Error, GentleAlgebra, VertexSet};
use serde_json::{json, Value};

use crate::{Cli, Command};

pub struct Report {
    pub text: String,
    pub json: Value,
}

#[derive(Debug)]
pub enum Failure {
    Domain(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Domain(e)
    }
}

impl Failure {
    pub fn kind(&self) -> &'static str {
        match self {
            Failure::Domain(e) => e.kind(),
            Failure::Io(_) => "IoError",
        }
    }

    pub fn message(&self) -> String {
        match self {
            Failure::Domain(e) => e.to_string(),
            Failure::Io(m) => m.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        json!({"error": self.kind(), "message": self.message()})
    }
}

fn options(cli: &Cli) -> SearchOptions {
    SearchOptions { max_len: cli.max_cycle_len.map(|n| n as usize), seed: cli.seed, ..SearchOptions::default() }
}

/// Reads a presentation, also accepting the JSON objects printed by the
/// algebra-producing commands.
fn parse_input(src: &str) -> Result<GentleAlgebra, Failure> {
    Ok(read_algebra(src)?)
}

pub fn execute(command: &Command, src: &str, cli: &Cli) -> Result<Report, Failure> {
    match command {
        Command::Validate { .. } => validate(&parse_input(src)?),
        Command::Invariants { .. } => {
            let r = compute_invariants_with(&parse_input(src)?, &options(cli))?;
            Ok(Report { text: invariants_text(&r), json: r.to_json() })
        }
        Command::Equiv { left, right } => {
            let read = |p: &std::path::PathBuf| {
                std::fs::read_to_string(p).map_err(|e| Failure::Io(format!("{}: {e}", p.display())))
            };
            let (a, b) = (parse_input(&read(left)?)?, parse_input(&read(right)?)?);
            let d = derived_equivalent_with(&a, &b, &options(cli))?;
            let mut text = format!("{}\n", d.equivalent);
            for c in &d.certificate {
                let mark = if c.agrees { "=" } else { "≠" };
                let _ = writeln!(text, "  {}: {} {mark} {}", c.invariant, c.left, c.right);
            }
            Ok(Report { text, json: json!({"equivalent": d.equivalent, "certificate": d.certificate}) })
        }
        Command::Silting { .. } => {
            let r = compute_invariants_with(&parse_input(src)?, &options(cli))?;
            let has = record_has_silting(&r);
            Ok(Report { text: format!("{has}\n"), json: json!({"has_silting": has}) })
        }
        Command::Presilting { keep, .. } => {
            let a = parse_input(src)?;
            let kept = VertexSet::from_names(&a, keep)?;
            Ok(presilting_report(&partial_silting_analysis(&a, &kept)?))
        }
        Command::Reduce { drop, .. } => {
            let a = parse_input(src)?;
            let dropped = VertexSet::from_names(&a, drop)?;
            Ok(algebra_report(&reduce_idempotent(&a, &dropped)?, None))
        }
        Command::An { pairs } => Ok(algebra_report(&make_an(pairs), Some(pairs))),
        Command::Move { .. } => {
            let form = canonical_form(&parse_input(src)?)?;
            let moved = an_rewrite_move(&form)?;
            Ok(algebra_report(&make_an(&moved), Some(&moved)))
        }
        Command::Koszul { .. } => {
            let form = canonical_form(&parse_input(src)?)?;
            let dual = koszul_dual_a2(&form)?;
            Ok(algebra_report(&make_an(&dual), Some(&dual)))
        }
        Command::EmitDot { .. } => {
            let dot = build_surface(&parse_input(src)?)?.to_dot();
            Ok(Report { json: json!({ "dot": dot }), text: dot })
        }
    }
}

fn canonical_form(a: &GentleAlgebra) -> Result<AnForm, Failure> {
    an_form_of(a).ok_or_else(|| Error::NotAnForm("the algebra is not of canonical shape".into()).into())
}

fn validate(a: &GentleAlgebra) -> Result<Report, Failure> {
    let (proper, smooth) = (a.is_proper(), a.is_smooth());
    let text = format!(
        "gentle: {} vertices, {} arrows, {} relations\nproper: {proper}\nsmooth: {smooth}\n",
        a.vertex_count(),
        a.arrow_count(),
        a.relations().len()
    );
    let json = json!({
        "gentle": true,
        "vertices": a.vertex_count(),
        "arrows": a.arrow_count(),
        "relations": a.relations().len(),
        "proper": proper,
        "smooth": smooth,
    });
    Ok(Report { text, json })
}

fn show<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "undefined".into(), |v| v.to_string())
}

fn invariants_text(r: &InvariantRecord) -> String {
    let boundaries: Vec<String> = r.boundaries.iter().map(|b| format!("({},{})", b.marked, b.winding)).collect();
    let w: Vec<String> = r.w.iter().map(i64::to_string).collect();
    format!(
        "genus {}\nboundaries {}\nsigma {}\natilde {}\narf {}\nW {}\n",
        r.genus,
        boundaries.join(" "),
        show(r.sigma),
        show(r.atilde),
        show(r.arf),
        w.join(" ")
    )
}

fn algebra_report(a: &GentleAlgebra, form: Option<&AnForm>) -> Report {
    let mut json = to_json(a);
    let mut text = String::new();
    if let Some(f) = form {
        json["form"] = json!(f.to_string());
        let _ = writeln!(text, "# {f}");
    }
    text.push_str(&to_text(a));
    Report { text, json }
}

fn presilting_report(r: &PartialSiltingReport) -> Report {
    let dims: Vec<String> = r.corner_dimensions.iter().map(|(d, k)| format!("{d}:{k}")).collect();
    let mut text = format!(
        "{:?}\n  {}\n  presilting: {}\n  eAe by degree: {}\n",
        r.verdict,
        r.reason,
        r.presilting,
        dims.join(" ")
    );
    if let Some(s) = r.corner_smooth {
        let _ = writeln!(text, "  eAe smooth: {s}");
    }
    let components: Vec<Value> = r
        .components
        .iter()
        .map(|c| {
            let _ = writeln!(
                text,
                "  component {}: form {}, has silting {}",
                c.vertices.join(","),
                show(c.an_form.as_ref()),
                show(c.has_silting)
            );
            json!({
                "vertices": c.vertices,
                "an_form": c.an_form.as_ref().map(ToString::to_string),
                "has_silting": c.has_silting,
            })
        })
        .collect();
    let json = json!({
        "verdict": format!("{:?}", r.verdict),
        "reason": r.reason,
        "presilting": r.presilting,
        "corner_dimensions": r.corner_dimensions.iter().map(|(d, k)| json!({"degree": d, "dimension": k})).collect::<Vec<_>>(),
        "corner_smooth": r.corner_smooth,
        "components": components,
    });
    Report { text, json }
}
