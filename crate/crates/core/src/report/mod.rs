//! Input parsing and report assembly for the command line front end.
//!
//! Every report is a JSON object with exact values written as strings; the
//! text format is a rendering of the same object.

mod parse;

pub use parse::{
    parse_input, rational_string, InputDocument, InputMode, ParseError, ParseErrorKind, Position,
};

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::blowup::{ch_audit, pre_reduce, BlowupNode, PreReductionOutcome};
use crate::laurent::{bernstein_count_oracle, general_position};
use crate::local::{
    classify_point_branches, corner_newton_polygon, side_nondegenerate, AdaptedGenerator,
};
use crate::polytope::{mixed_area, LatticePoint, NewtonPolygon, Polytope2};
use crate::projective::{
    classify_case, dichotomy, homogeneous_polygon, lambda_modulus, newton_nondegenerate_everywhere,
    CaseClass, DichotomyReport, HomogeneousPolygon, HullShape, ProjectiveFoliation, Verdict,
    VARIABLES,
};

pub const DEFAULT_MAX_DEPTH: usize = crate::blowup::DEFAULT_MAX_DEPTH;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Command {
    Analyze,
    Polygon,
    BlowupTree,
    Bkk,
    Dichotomy,
}

impl Command {
    pub fn label(self) -> &'static str {
        match self {
            Command::Analyze => "analyze",
            Command::Polygon => "polygon",
            Command::BlowupTree => "blowup-tree",
            Command::Bkk => "bkk",
            Command::Dichotomy => "dichotomy",
        }
    }
}

#[derive(Clone, Copy, Debug)]
pub struct RunOptions {
    pub max_depth: usize,
    /// Chart whose origin `blowup-tree` expands, for projective inputs.
    pub chart: usize,
}

impl Default for RunOptions {
    fn default() -> Self {
        RunOptions {
            max_depth: DEFAULT_MAX_DEPTH,
            chart: 0,
        }
    }
}

#[derive(Debug, Error)]
pub enum ReportError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid input: {0}")]
    Validation(String),
    #[error("'{command}' does not apply to {mode} input")]
    Unsupported {
        command: &'static str,
        mode: &'static str,
    },
    #[error("chart must be 0, 1 or 2, got {0}")]
    Chart(usize),
}

/// Parses, runs and returns the report object.
pub fn run_text(text: &str, command: Command, options: RunOptions) -> Result<Value, ReportError> {
    run(&parse_input(text)?, command, options)
}

pub fn run(
    doc: &InputDocument,
    command: Command,
    options: RunOptions,
) -> Result<Value, ReportError> {
    let unsupported = || ReportError::Unsupported {
        command: command.label(),
        mode: doc.mode.label(),
    };
    let mut out = match (doc.mode, command) {
        (InputMode::Logarithmic | InputMode::Holomorphic, Command::Bkk) => {
            return Err(unsupported())
        }
        (InputMode::Logarithmic | InputMode::Holomorphic, _) => {
            let f = doc
                .foliation()
                .map_err(|e| ReportError::Validation(e.to_string()))?;
            match command {
                Command::Analyze => analyze_projective(&f, options),
                Command::Polygon => polygon_projective(&f),
                Command::BlowupTree => {
                    if options.chart > 2 {
                        return Err(ReportError::Chart(options.chart));
                    }
                    let mut m = blowup_report(&f.chart_germ(options.chart), options.max_depth);
                    m.insert("chart".into(), json!(options.chart.to_string()));
                    m
                }
                Command::Dichotomy => dichotomy_projective(&f, options),
                Command::Bkk => unreachable!("handled above"),
            }
        }
        (InputMode::LocalCorner, Command::Bkk | Command::Dichotomy) => return Err(unsupported()),
        (InputMode::LocalCorner, _) => {
            let germ = doc
                .corner_germ()
                .map_err(|e| ReportError::Validation(e.to_string()))?;
            match command {
                Command::Analyze => analyze_corner(&germ, options),
                Command::Polygon => polygon_corner(&germ),
                _ => blowup_report(&germ, options.max_depth),
            }
        }
        (InputMode::LaurentPair, Command::Bkk) => bkk_report(doc),
        (InputMode::LaurentPair, _) => return Err(unsupported()),
    };
    out.insert("command".into(), json!(command.label()));
    out.insert("input_echo".into(), input_echo(doc));
    Ok(Value::Object(out))
}

fn input_echo(doc: &InputDocument) -> Value {
    let polys: Map<String, Value> = doc
        .named()
        .into_iter()
        .map(|(n, p)| (n.to_string(), json!(p)))
        .collect();
    json!({
        "mode": doc.mode.label(),
        "field": doc.field.as_ref().map(|m| m.to_string()),
        "polynomials": polys,
        "text": doc.render(),
    })
}

fn point3(p: &[i64; 3]) -> String {
    format!("({}, {}, {})", p[0], p[1], p[2])
}

fn point2(p: &LatticePoint) -> String {
    p.to_string()
}

fn error_text(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn chart_points(polygon: &HomogeneousPolygon, chart: usize) -> Vec<LatticePoint> {
    let (j, k) = match chart {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    polygon
        .points
        .iter()
        .map(|p| LatticePoint::new(p[j], p[k]))
        .collect()
}

fn polygon_json(polygon: &HomogeneousPolygon, ascii: bool) -> Value {
    let charts: Vec<Value> = (0..3)
        .map(|i| {
            let hull: &Polytope2 = &polygon.charts[i];
            let points = chart_points(polygon, i);
            let newton = NewtonPolygon::from_support(points.iter().copied());
            let mut m = Map::new();
            m.insert("chart".into(), json!(i.to_string()));
            m.insert("variables".into(), json!(chart_variables(i)));
            m.insert(
                "vertices".into(),
                json!(hull.vertices().iter().map(point2).collect::<Vec<_>>()),
            );
            m.insert("area".into(), json!(rational_string(&hull.area())));
            m.insert(
                "newton_sides".into(),
                json!(newton
                    .compact_sides()
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()),
            );
            if ascii {
                m.insert("ascii".into(), json!(newton.render_ascii(&points)));
            }
            Value::Object(m)
        })
        .collect();
    let endpoints = match &polygon.shape {
        HullShape::Point(p) => vec![point3(p)],
        HullShape::Segment(v, w) => vec![point3(v), point3(w)],
        HullShape::Fat => Vec::new(),
    };
    json!({
        "degree": polygon.degree.to_string(),
        "points": polygon.points.iter().map(point3).collect::<Vec<_>>(),
        "classification": polygon.shape.label(),
        "endpoints": endpoints,
        "charts": charts,
    })
}

fn chart_variables(i: usize) -> String {
    let (j, k) = match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    };
    format!(
        "{}/{}, {}/{}",
        VARIABLES[j], VARIABLES[i], VARIABLES[k], VARIABLES[i]
    )
}

fn case_json(case: &CaseClass) -> Value {
    let mut m = Map::new();
    m.insert("label".into(), json!(case.label()));
    m.insert("description".into(), json!(case.to_string()));
    match case {
        CaseClass::B { perm, degree } => {
            m.insert("permutation".into(), json!(perm.map(|p| p.to_string())));
            m.insert("d".into(), json!(degree.to_string()));
        }
        CaseClass::C {
            perm,
            degree,
            offset,
            reduced_degree,
            reduced_offset,
            family_size,
        } => {
            m.insert("permutation".into(), json!(perm.map(|p| p.to_string())));
            m.insert("d".into(), json!(degree.to_string()));
            m.insert("a".into(), json!(offset.to_string()));
            m.insert("reduced_d".into(), json!(reduced_degree.to_string()));
            m.insert("reduced_a".into(), json!(reduced_offset.to_string()));
            m.insert("n".into(), json!(family_size.to_string()));
        }
        CaseClass::NotWtt { evidence } => {
            m.insert("evidence".into(), json!(evidence));
        }
        CaseClass::A => {}
    }
    Value::Object(m)
}

fn foliation_header(f: &ProjectiveFoliation) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("d_F".into(), json!(f.d_f().to_string()));
    m.insert(
        "foliation_degree".into(),
        json!(f.foliation_degree().to_string()),
    );
    let natures: Map<String, Value> = (0..3)
        .map(|i| {
            (
                format!("{}=0", VARIABLES[i]),
                json!(f.natures()[i].to_string()),
            )
        })
        .collect();
    m.insert("divisor".into(), Value::Object(natures));
    m
}

fn nnd_json(f: &ProjectiveFoliation) -> Value {
    match newton_nondegenerate_everywhere(f) {
        Ok(r) => json!({ "verdict": r.verdict, "witness": r.witness.map(|w| w.to_string()) }),
        Err(e) => json!({ "verdict": Value::Null, "error": error_text(e) }),
    }
}

fn verdict_json(v: &Verdict) -> Value {
    let mut m = Map::new();
    m.insert(
        "verdict".into(),
        json!(match v {
            Verdict::I { .. } => "I",
            Verdict::II { .. } => "II",
            Verdict::WeakOnly { .. } => "WeakOnly",
            Verdict::NotApplicable { .. } => "NotApplicable",
        }),
    );
    match v {
        Verdict::I {
            exponents,
            first_integral,
        } => {
            m.insert("first_integral".into(), json!(first_integral));
            m.insert("exponents".into(), json!(exponents.map(|e| e.to_string())));
        }
        Verdict::II { curves } => {
            m.insert("curves".into(), json!(curves));
        }
        Verdict::WeakOnly { notes } => {
            m.insert("notes".into(), json!(notes));
        }
        Verdict::NotApplicable { reason } => {
            m.insert("reason".into(), json!(reason));
        }
    }
    Value::Object(m)
}

fn dichotomy_sections(r: &DichotomyReport) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert(
        "nnd".into(),
        json!({ "verdict": r.nnd.verdict, "witness": r.nnd.witness.as_ref().map(|w| w.to_string()) }),
    );
    m.insert(
        "ch".into(),
        match &r.ch {
            Some(ch) => json!({
                "verdict": ch.is_ch,
                "witnesses": ch.witnesses,
                "toric": ch.toric,
                "non_simple_trace_points": ch.non_simple_traces,
                "corner_reductions": ch.reductions.iter().enumerate().map(|(i, o)| json!({
                    "corner": format!("O{i}"),
                    "status": o.status.to_string(),
                    "blowups": o.blowups.to_string(),
                })).collect::<Vec<_>>(),
            }),
            None => Value::Null,
        },
    );
    m.insert("case".into(), case_json(&r.case));
    m.insert(
        "lambda".into(),
        match &r.lambda {
            Some(l) => json!({
                "modulus": lambda_modulus(l),
                "count": l.count.to_string(),
                "expected": l.expected.to_string(),
                "warnings": l.warnings,
            }),
            None => Value::Null,
        },
    );
    m.insert(
        "curves".into(),
        serde_json::to_value(&r.curves).expect("serializable"),
    );
    m.insert(
        "branches".into(),
        serde_json::to_value(&r.branches).expect("serializable"),
    );
    let ends: Vec<Value> = r
        .ends
        .iter()
        .map(|t| {
            let mut e = json!({
                "lambda": t.lambda.to_string(),
                "eigenvalues_1": [t.first.0.to_string(), t.first.1.to_string()],
                "eigenvalues_2": [t.second.0.to_string(), t.second.1.to_string()],
                "r1": t.r1.as_ref().map(|r| r.to_string()),
                "r2": t.r2.as_ref().map(|r| r.to_string()),
                "opposite": t.opposite,
                "ends": t.ends.map(|c| c.label()),
            });
            if let Some(c) = &t.cusp {
                e["cusp_relations"] = json!({
                    "mu1": c.mu1.to_string(),
                    "rho1": c.rho1.to_string(),
                    "mu2": c.mu2.to_string(),
                    "rho2": c.rho2.to_string(),
                    "mu_relation": c.mu_relation,
                    "rho_relation": c.rho_relation,
                });
            }
            e
        })
        .collect();
    m.insert("ends".into(), json!(ends));
    if let Some(e) = r.family.first().and_then(|c| c.exponents) {
        m.insert(
            "cusp_exponents".into(),
            json!({
                "alpha": e.alpha.to_string(),
                "beta": e.beta.to_string(),
                "gamma": e.gamma.to_string(),
                "delta": e.delta.to_string(),
            }),
        );
    }
    m.insert("dichotomy".into(), verdict_json(&r.verdict));
    m
}

fn failed_dichotomy(f: &ProjectiveFoliation, reason: String) -> Map<String, Value> {
    let polygon = homogeneous_polygon(f);
    let mut m = Map::new();
    m.insert("nnd".into(), nnd_json(f));
    m.insert("ch".into(), Value::Null);
    m.insert("case".into(), case_json(&classify_case(&polygon)));
    m.insert("lambda".into(), Value::Null);
    m.insert("curves".into(), json!([]));
    m.insert("branches".into(), json!([]));
    m.insert(
        "dichotomy".into(),
        verdict_json(&Verdict::NotApplicable { reason }),
    );
    m
}

fn analyze_projective(f: &ProjectiveFoliation, options: RunOptions) -> Map<String, Value> {
    let mut m = foliation_header(f);
    let polygon = homogeneous_polygon(f);
    m.insert("polygon".into(), polygon_json(&polygon, false));
    let sections = match dichotomy(f, options.max_depth) {
        Ok(r) => dichotomy_sections(&r),
        Err(e) => failed_dichotomy(f, format!("analysis stopped: {e}")),
    };
    m.extend(sections);
    m
}

fn dichotomy_projective(f: &ProjectiveFoliation, options: RunOptions) -> Map<String, Value> {
    let sections = match dichotomy(f, options.max_depth) {
        Ok(r) => dichotomy_sections(&r),
        Err(e) => failed_dichotomy(f, format!("analysis stopped: {e}")),
    };
    let mut m = Map::new();
    for key in ["case", "lambda", "curves", "branches", "dichotomy"] {
        m.insert(
            key.into(),
            sections.get(key).cloned().unwrap_or(Value::Null),
        );
    }
    m
}

fn polygon_projective(f: &ProjectiveFoliation) -> Map<String, Value> {
    let mut m = foliation_header(f);
    let polygon = homogeneous_polygon(f);
    m.insert("polygon".into(), polygon_json(&polygon, true));
    m.insert("case".into(), case_json(&classify_case(&polygon)));
    m.insert("nnd".into(), nnd_json(f));
    m
}

fn germ_json(g: &AdaptedGenerator) -> Value {
    json!({
        "a1": g.a1().render(&["x1", "x2"]),
        "a2": g.a2().render(&["x1", "x2"]),
        "components": g.components().iter().map(|c| json!({
            "name": c.name,
            "label": c.label.to_string(),
            "nature": c.nature.to_string(),
        })).collect::<Vec<_>>(),
    })
}

fn matrix_json(m: [[i64; 2]; 2]) -> Value {
    json!(m.map(|row| row.map(|v| v.to_string())))
}

fn node_json(node: &BlowupNode) -> Value {
    let m = BlowupNode::composite_matrix(&node.path);
    json!({
        "path": node.path,
        "step": node.step.to_string(),
        "depth": node.depth.to_string(),
        "composite_substitution": format!(
            "x1 = y1^{}*y2^{}, x2 = y1^{}*y2^{}", m[0][0], m[0][1], m[1][0], m[1][1]
        ),
        "composite_matrix": matrix_json(m),
        "germ": germ_json(&node.germ),
        "class": node.class.label(),
        "description": node.class.to_string(),
        "exceptional": node.exceptional.map(|n| n.to_string()),
        "children": node.children.iter().map(node_json).collect::<Vec<_>>(),
    })
}

fn reduction_json(outcome: &PreReductionOutcome) -> Value {
    let audit = ch_audit(outcome);
    json!({
        "status": outcome.status.to_string(),
        "success": outcome.is_success(),
        "blowups": outcome.blowups.to_string(),
        "depth": outcome.depth().to_string(),
        "ch": match audit {
            Ok(a) => json!({
                "verdict": a.is_ch,
                "witnesses": a.witnesses.iter().map(|w| format!("{}: {}", w.path, w.kind)).collect::<Vec<_>>(),
            }),
            Err(e) => json!({ "verdict": Value::Null, "error": error_text(e) }),
        },
        "tree": node_json(&outcome.tree),
    })
}

fn blowup_report(germ: &AdaptedGenerator, max_depth: usize) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("germ".into(), germ_json(germ));
    m.insert(
        "blowup_tree".into(),
        match pre_reduce(germ, max_depth) {
            Ok(outcome) => reduction_json(&outcome),
            Err(e) => json!({ "error": error_text(e) }),
        },
    );
    m
}

fn corner_polygon_json(germ: &AdaptedGenerator, ascii: bool) -> Value {
    let newton = match corner_newton_polygon(germ) {
        Ok(n) => n,
        Err(e) => return json!({ "error": error_text(e) }),
    };
    let sides: Vec<Value> = newton
        .compact_sides()
        .iter()
        .map(|s| {
            let verdict = side_nondegenerate(germ, s);
            json!({
                "side": s.to_string(),
                "slope": rational_string(&s.slope()),
                "nondegenerate": verdict.as_ref().ok(),
                "error": verdict.err().map(error_text),
            })
        })
        .collect();
    let support: Vec<LatticePoint> = germ
        .a1()
        .support()
        .iter()
        .chain(germ.a2().support().iter())
        .map(LatticePoint::from_exponent)
        .collect();
    let mut m = json!({
        "vertices": newton.vertices().iter().map(point2).collect::<Vec<_>>(),
        "sides": sides,
    });
    if ascii {
        m["ascii"] = json!(newton.render_ascii(&support));
    }
    m
}

fn analyze_corner(germ: &AdaptedGenerator, options: RunOptions) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert(
        "classification".into(),
        match classify_point_branches(germ) {
            Ok(classes) => json!(classes
                .iter()
                .map(|(ctx, c)| json!({
                    "field": ctx.as_ref().map(|c| c.modulus().to_string()),
                    "class": c.label(),
                    "description": c.to_string(),
                }))
                .collect::<Vec<_>>()),
            Err(e) => json!({ "error": error_text(e) }),
        },
    );
    m.insert("newton_polygon".into(), corner_polygon_json(germ, false));
    m.extend(blowup_report(germ, options.max_depth));
    m
}

fn polygon_corner(germ: &AdaptedGenerator) -> Map<String, Value> {
    let mut m = Map::new();
    m.insert("germ".into(), germ_json(germ));
    m.insert("newton_polygon".into(), corner_polygon_json(germ, true));
    m
}

fn bkk_report(doc: &InputDocument) -> Map<String, Value> {
    let (h1, h2) = (&doc.polys[0], &doc.polys[1]);
    let hull = |p: &crate::algebra::SparsePoly| {
        Polytope2::hull(p.support().iter().map(LatticePoint::from_exponent))
    };
    let area = mixed_area(&hull(h1), &hull(h2));
    let position = general_position(h1, h2);
    let oracle = match position {
        Ok(true) => Some(bernstein_count_oracle(h1, h2)),
        _ => None,
    };
    let count = oracle.as_ref().and_then(|r| r.as_ref().ok()).copied();
    let mut m = Map::new();
    m.insert("general_position".into(), json!(position.as_ref().ok()));
    if let Err(e) = &position {
        m.insert("general_position_error".into(), json!(error_text(e)));
    }
    m.insert("mixed_area".into(), json!(rational_string(&area)));
    m.insert("oracle_count".into(), json!(count.map(|c| c.to_string())));
    if let Some(Err(e)) = &oracle {
        m.insert("oracle_error".into(), json!(error_text(e)));
    }
    m.insert(
        "agreement".into(),
        json!(count.map(|c| crate::algebra::Rat::from_integer(c.into()) == area)),
    );
    m
}

/// Pretty-printed JSON; keys are sorted, so equal reports give equal bytes.
pub fn render_json(report: &Value) -> String {
    serde_json::to_string_pretty(report).expect("JSON values always serialize")
}

/// Indented `key: value` rendering of a report.
pub fn render_text(report: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, report, 0);
    out
}

fn scalar_text(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("-".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) if !s.contains('\n') => Some(s.clone()),
        _ => None,
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent);
    match v {
        Value::Object(m) => {
            for (k, v) in m {
                match scalar_text(v) {
                    Some(s) => out.push_str(&format!("{pad}{k}: {s}\n")),
                    None if matches!(v, Value::Array(a) if a.is_empty()) => {
                        out.push_str(&format!("{pad}{k}: (none)\n"))
                    }
                    None => {
                        out.push_str(&format!("{pad}{k}:\n"));
                        write_value(out, v, indent + 1);
                    }
                }
            }
        }
        Value::Array(a) => {
            for item in a {
                match scalar_text(item) {
                    Some(s) => out.push_str(&format!("{pad}- {s}\n")),
                    None => {
                        out.push_str(&format!("{pad}-\n"));
                        write_value(out, item, indent + 1);
                    }
                }
            }
        }
        Value::String(s) => {
            for line in s.lines() {
                out.push_str(&format!("{pad}{line}\n"));
            }
        }
        other => out.push_str(&format!(
            "{pad}{}\n",
            scalar_text(other).unwrap_or_default()
        )),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_json(text: &str, command: Command) -> Value {
        run_text(text, command, RunOptions::default()).unwrap()
    }

    #[test]
    fn constants_give_first_integral() {
        let r = run_json("A0 = 1; A1 = 1; A2 = -2", Command::Analyze);
        assert_eq!(r["dichotomy"]["verdict"], "I");
        assert_eq!(r["dichotomy"]["first_integral"], "X0*X1*X2^-2");
        assert_eq!(r["d_F"], "0");
    }

    #[test]
    fn jouanolou_polygon_is_fat() {
        let text = "f0 = X0^2*X1 - X2^3; f1 = X1^2*X2 - X0^3; f2 = X2^2*X0 - X1^3";
        let r = run_json(text, Command::Polygon);
        assert_eq!(r["polygon"]["classification"], "fat");
        assert_eq!(r["nnd"]["verdict"], false);
        assert_eq!(r["polygon"]["charts"][0]["area"], "7/2");
    }

    #[test]
    fn bkk_pinned_pair() {
        let r = run_json("h1 = 1 + u1 + u2; h2 = 1 + u1*u2", Command::Bkk);
        assert_eq!(r["mixed_area"], "2");
        assert_eq!(r["oracle_count"], "2");
        assert_eq!(r["agreement"], true);
    }

    #[test]
    fn blowup_tree_dump() {
        let r = run_json("a1 = x1 + x2; a2 = x1 - 2*x2", Command::BlowupTree);
        assert_eq!(r["blowup_tree"]["tree"]["path"], "root");
        let r = run_text(
            "A0 = 1; A1 = 1; A2 = -2",
            Command::BlowupTree,
            RunOptions {
                chart: 2,
                ..Default::default()
            },
        )
        .unwrap();
        assert_eq!(r["chart"], "2");
        assert!(run_text(
            "A0 = 1; A1 = 1; A2 = -2",
            Command::BlowupTree,
            RunOptions {
                chart: 3,
                ..Default::default()
            }
        )
        .is_err());
    }

    #[test]
    fn mode_mismatch_is_an_error() {
        assert!(matches!(
            run_text(
                "A0 = 1; A1 = 1; A2 = -2",
                Command::Bkk,
                RunOptions::default()
            ),
            Err(ReportError::Unsupported { .. })
        ));
        assert!(matches!(
            run_text(
                "A0 = X1; A1 = -X1; A2 = 0",
                Command::Analyze,
                RunOptions::default()
            ),
            Err(ReportError::Validation(_))
        ));
    }

    #[test]
    fn json_is_deterministic_and_text_renders() {
        let text = "field t^2-2; A0 = X2 - X1; A1 = (1+t)*X1 - X2; A2 = -t*X1";
        let a = serde_json::to_string(&run_json(text, Command::Analyze)).unwrap();
        let b = serde_json::to_string(&run_json(text, Command::Analyze)).unwrap();
        assert_eq!(a, b);
        let r = run_json(text, Command::Dichotomy);
        assert_eq!(r["dichotomy"]["verdict"], "II");
        assert!(render_text(&r).contains("verdict: II"));
    }
}
