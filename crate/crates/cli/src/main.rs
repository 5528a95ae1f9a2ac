use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use splitkit_core::bass_serre::{local_tree, minimal_subtree};
use splitkit_core::cayley::{estimate_ends, vertex_budget_from_mb, Ball, DEFAULT_VERTEX_BUDGET};
use splitkit_core::crossing::{
    crosses_sets, crosses_strongly_sets, intersection_number, strong_intersection_number, AiSet, CountReport,
    CrossingConfig,
};
use splitkit_core::dunwoody::{assemble_with_stability, build_tree, validate_poset};
use splitkit_core::json::{subgroup_from_spec, GroupRef, PosetFile, PresentationFile, SplittingFile, SCHEMA_VERSION};
use splitkit_core::surface::{brute_force_crossing_count, slope_intersection, slope_splitting, Slope};
use splitkit_core::{Group, NormalForm, Splitting, Subgroup, Variant, Verdict, Word};

/// Splittings of finitely generated groups: normal forms, half-spaces,
/// intersection numbers and Dunwoody trees.
#[derive(Parser)]
#[command(name = "splitkit", version)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Global {
    /// Ball radius for certified computations.
    #[arg(long, global = true, default_value_t = 8)]
    radius: usize,
    /// Depth for tree neighbourhoods.
    #[arg(long, global = true, default_value_t = 3)]
    depth: usize,
    /// Worker threads; defaults to the number of cores.
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Print the JSON report on stdout (the default).
    #[arg(long, global = true, conflicts_with = "dot")]
    json: bool,
    /// Print DOT instead of JSON, for commands that draw a graph.
    #[arg(long, global = true)]
    dot: bool,
    /// Memory budget for balls, in megabytes.
    #[arg(long = "budget-mb", global = true)]
    budget_mb: Option<usize>,
    /// Count a quadrant as infinite once it meets this many cosets.
    #[arg(long, global = true, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..=64))]
    threshold: u32,
}

#[derive(Subcommand)]
enum Command {
    /// Syllable normal form of a word.
    Nf {
        #[arg(long)]
        splitting: PathBuf,
        #[arg(long)]
        word: String,
    },
    /// Membership in a translate of a standard set.
    Side {
        #[arg(long)]
        splitting: PathBuf,
        /// Words to test; without any, lists the members in the ball.
        #[arg(long)]
        word: Vec<String>,
        #[arg(long, default_value = "e")]
        translator: String,
        #[arg(long, value_enum, default_value_t = VariantArg::X)]
        variant: VariantArg,
    },
    /// Ball of the Cayley graph.
    Ball {
        #[arg(long)]
        group: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Number of ends of the pair (G, H).
    Ends {
        #[arg(long)]
        group: PathBuf,
        /// Named subgroup of the group file, `trivial`, or `;`-separated words.
        #[arg(long, default_value = "trivial")]
        subgroup: String,
    },
    /// Does gX cross Y?
    Cross {
        #[arg(long)]
        s: PathBuf,
        #[arg(long)]
        t: PathBuf,
        #[arg(long, default_value = "e")]
        g: String,
        #[arg(long)]
        strong: bool,
    },
    /// Intersection number as a count of double cosets.
    Inum {
        #[arg(long)]
        s: PathBuf,
        #[arg(long)]
        t: PathBuf,
    },
    /// Strong intersection number.
    Sinum {
        #[arg(long)]
        s: PathBuf,
        #[arg(long)]
        t: PathBuf,
    },
    /// Neighbourhood of the base edge in the Bass-Serre tree.
    Tree {
        #[arg(long)]
        splitting: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Quotient of the minimal subtree of an acting subgroup.
    Psi {
        #[arg(long)]
        target: PathBuf,
        /// A splitting file whose edge group acts, `trivial`, or `;`-separated words.
        #[arg(long)]
        actor: String,
    },
    /// Tree of a nested poset.
    Dtree {
        #[arg(long)]
        poset: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Graph of groups assembled from compatible splittings.
    Gog {
        #[arg(long, num_args = 1.., required = true)]
        splittings: Vec<PathBuf>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Curves on the punctured torus.
    Oracle {
        #[command(subcommand)]
        which: Oracle,
    },
}

#[derive(Subcommand)]
enum Oracle {
    /// Compare determinant, brute force and library for two slopes.
    Slopes {
        #[arg(long, allow_hyphen_values = true)]
        a: String,
        #[arg(long, allow_hyphen_values = true)]
        b: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    X,
    XUnionH,
    XStar,
    XStarMinusH,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Variant {
        match v {
            VariantArg::X => Variant::X,
            VariantArg::XUnionH => Variant::XUnionH,
            VariantArg::XStar => Variant::XStar,
            VariantArg::XStarMinusH => Variant::XStarMinusH,
        }
    }
}

/// What a command produced: a JSON report, maybe a drawing, and whether the
/// answer is still open at the radius used.
struct Output {
    report: Value,
    dot: Option<String>,
    unresolved: bool,
}

impl Output {
    fn new(report: Value) -> Output {
        Output { report, dot: None, unresolved: false }
    }
}

fn main() -> ExitCode {
    // clap exits with 2 on bad usage, which is reserved for unresolved answers
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {:#}", e);
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<ExitCode> {
    if let Some(n) = cli.global.threads {
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    }
    let out = execute(&cli.command, &cli.global)?;
    let mut report = out.report;
    if let Value::Object(m) = &mut report {
        m.insert("schema_version".into(), SCHEMA_VERSION.into());
    }
    let out_path = match &cli.command {
        Command::Ball { out, .. } | Command::Tree { out, .. } | Command::Dtree { out, .. } | Command::Gog { out, .. } => {
            out.clone()
        }
        _ => None,
    };
    if let (Some(path), Some(dot)) = (&out_path, &out.dot) {
        std::fs::write(path, dot).with_context(|| format!("writing {}", path.display()))?;
    }
    let text = match (&out.dot, cli.global.dot) {
        (Some(dot), true) => dot.clone(),
        (None, true) => bail!("this command has no DOT output"),
        _ => serde_json::to_string_pretty(&report)? + "\n",
    };
    let mut stdout = std::io::stdout().lock();
    match stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => return Err(e.into()),
        _ => {}
    }
    Ok(ExitCode::from(if out.unresolved { 2 } else { 0 }))
}

fn budget(g: &Global, group: &Group) -> usize {
    match g.budget_mb {
        Some(mb) => vertex_budget_from_mb(mb, group.letters().len()),
        None => DEFAULT_VERTEX_BUDGET,
    }
}

fn crossing_config(g: &Global, group: &Group) -> CrossingConfig {
    let mut cfg = CrossingConfig::with_radius(g.radius);
    cfg.threshold = g.threshold as usize;
    cfg.vertex_budget = budget(g, group);
    cfg
}

fn load_splitting(path: &Path) -> Result<Splitting> {
    let (file, dir) = SplittingFile::load(path)?;
    Ok(file.build(&dir).with_context(|| format!("building {}", path.display()))?)
}

fn generators(file: &SplittingFile, dir: &Path) -> Result<Vec<String>> {
    Ok(match &file.group {
        GroupRef::Inline(p) => p.generators.clone(),
        GroupRef::Path(p) => PresentationFile::load(&dir.join(p))?.generators,
    })
}

/// Loads splittings of one group; later files are rebuilt in the group of
/// the first.
fn load_splittings(paths: &[PathBuf]) -> Result<Vec<Arc<Splitting>>> {
    let first = load_splitting(&paths[0])?;
    let g = first.group().clone();
    let mut out = vec![Arc::new(first)];
    for p in &paths[1..] {
        let (file, dir) = SplittingFile::load(p)?;
        if generators(&file, &dir)? != g.alphabet().names() {
            bail!("{} is not over the same generators as {}", p.display(), paths[0].display());
        }
        out.push(Arc::new(file.build_in(&g).with_context(|| format!("building {}", p.display()))?));
    }
    Ok(out)
}

fn parse_word(g: &Group, text: &str) -> Result<Word> {
    if text.trim() == "e" {
        return Ok(Word::empty());
    }
    Ok(g.parse(text)?)
}

fn verdict_json(g: &Group, v: &Verdict) -> Value {
    json!({
        "verdict": v.label(),
        "radius": v.radius,
        "witness": v.witness.as_ref().map(|w| g.format(w)),
    })
}

fn count_json(g: &Group, r: &CountReport) -> Value {
    let per_coset: Vec<Value> = r
        .per_coset
        .iter()
        .map(|c| json!({"rep": g.format(&c.rep), "verdict": c.verdict, "radius": c.radius, "method": c.method}))
        .collect();
    json!({"count": r.count, "exact": r.exact, "radius": r.radius, "per_coset": per_coset})
}

fn nf_json(g: &Group, nf: &NormalForm) -> Value {
    match nf {
        NormalForm::Amalgam { syllables, h } => {
            let s: Vec<Value> = syllables
                .iter()
                .map(|(side, w)| json!({"side": if *side == 0 { "A" } else { "B" }, "word": g.format(w)}))
                .collect();
            json!({"kind": "amalgam", "syllables": s, "edge_element": g.format(h)})
        }
        NormalForm::Hnn { syllables, tail } => {
            let s: Vec<Value> =
                syllables.iter().map(|(a, e)| json!({"word": g.format(a), "exponent": e})).collect();
            json!({"kind": "hnn", "syllables": s, "tail": g.format(tail)})
        }
    }
}

fn actor_subgroup(target: &Splitting, actor: &str) -> Result<Subgroup> {
    let g = target.group();
    let path = Path::new(actor);
    if actor.ends_with(".json") && path.exists() {
        let (file, dir) = SplittingFile::load(path)?;
        if generators(&file, &dir)? != g.alphabet().names() {
            bail!("{} is not over the generators of the target", actor);
        }
        return Ok(file.build_in(g)?.edge_group().clone());
    }
    Ok(subgroup_from_spec(g, &Default::default(), actor)?)
}

fn ball_dot(g: &Group, ball: &Ball) -> String {
    let mut out = String::from("graph ball {\n");
    for (i, w) in ball.words.iter().enumerate() {
        out.push_str(&format!("  v{} [label=\"{}\"];\n", i, g.format(w)));
    }
    for (i, l, j) in ball.edges() {
        out.push_str(&format!("  v{} -- v{} [label=\"{}\"];\n", i, j, g.format(&Word::letter(l))));
    }
    out.push_str("}\n");
    out
}

#[derive(Serialize)]
struct Membership {
    word: String,
    member: bool,
}

fn execute(cmd: &Command, gl: &Global) -> Result<Output> {
    Ok(match cmd {
        Command::Nf { splitting, word } => {
            let s = load_splitting(splitting)?;
            let g = s.group();
            let w = parse_word(g, word)?;
            let nf = s.normal_form(&w);
            Output::new(json!({
                "splitting": s.name,
                "word": g.format(&w),
                "canonical": g.format(&g.canon(w.letters())),
                "normal_form": nf_json(g, &nf),
                "length": nf.length(),
                "exact": true,
            }))
        }
        Command::Side { splitting, word, translator, variant } => {
            let s = load_splitting(splitting)?;
            let g = s.group();
            let t = parse_word(g, translator)?;
            let v = Variant::from(*variant);
            let mut report = json!({
                "splitting": s.name,
                "translator": g.format(&t),
                "variant": v.name(),
            });
            if word.is_empty() {
                let members: Vec<String> = splitkit_core::cayley::canonical_words(g, gl.radius)
                    .iter()
                    .filter(|w| s.half_space_contains(&t, v, w))
                    .map(|w| g.format(w))
                    .collect();
                report["radius"] = gl.radius.into();
                report["count"] = members.len().into();
                report["members"] = json!(members);
            } else {
                let rows = word
                    .iter()
                    .map(|text| {
                        let w = parse_word(g, text)?;
                        Ok(Membership { word: g.format(&w), member: s.half_space_contains(&t, v, &w) })
                    })
                    .collect::<Result<Vec<_>>>()?;
                report["words"] = serde_json::to_value(rows)?;
            }
            report["exact"] = true.into();
            Output::new(report)
        }
        Command::Ball { group, .. } => {
            let g = PresentationFile::load(group)?.build()?;
            let ball = Ball::new(&g, gl.radius, budget(gl, &g))?;
            let edges = ball.edges().len();
            let spheres: Vec<usize> = ball.sphere_start.windows(2).map(|p| p[1] - p[0]).collect();
            Output {
                report: json!({"radius": gl.radius, "vertices": ball.len(), "edges": edges, "spheres": spheres}),
                dot: Some(ball_dot(&g, &ball)),
                unresolved: false,
            }
        }
        Command::Ends { group, subgroup } => {
            let file = PresentationFile::load(group)?;
            let g = file.build()?;
            let h = file.subgroup(&g, subgroup)?;
            let e = estimate_ends(&g, &h, gl.radius, budget(gl, &g))?;
            Output {
                report: json!({"value": e.value.as_str(), "certified_radius": e.certified_radius, "radius": gl.radius.max(4)}),
                dot: None,
                unresolved: e.certified_radius.is_none(),
            }
        }
        Command::Cross { s, t, g, strong } => {
            let pair = load_splittings(&[s.clone(), t.clone()])?;
            let grp = pair[0].group().clone();
            let w = parse_word(&grp, g)?;
            let cfg = crossing_config(gl, &grp);
            let x = AiSet::from_splitting(&pair[0], Variant::X);
            let y = AiSet::from_splitting(&pair[1], Variant::X);
            let v = if *strong { crosses_strongly_sets(&x, &w, &y, &cfg)? } else { crosses_sets(&x, &w, &y, &cfg)? };
            let mut report = verdict_json(&grp, &v);
            report["translator"] = grp.format(&w).into();
            report["strong"] = (*strong).into();
            Output { report, dot: None, unresolved: v.is_unresolved() }
        }
        Command::Inum { s, t } | Command::Sinum { s, t } => {
            let pair = load_splittings(&[s.clone(), t.clone()])?;
            let g = pair[0].group().clone();
            let cfg = crossing_config(gl, &g);
            let r = if matches!(cmd, Command::Inum { .. }) {
                intersection_number(&pair[0], &pair[1], &cfg)?
            } else {
                strong_intersection_number(&pair[0], &pair[1], &cfg)?
            };
            Output { report: count_json(&g, &r), dot: None, unresolved: !r.exact }
        }
        Command::Tree { splitting, .. } => {
            let s = load_splitting(splitting)?;
            let g = s.group();
            let t = local_tree(&s, gl.depth, budget(gl, g))?;
            let reps: Vec<String> = t.edges.iter().map(|e| g.format(&e.rep)).collect();
            Output {
                report: json!({"depth": t.depth, "edges": t.edges.len(), "vertices": t.vertices.len(), "edge_reps": reps}),
                dot: Some(t.to_dot(&s)),
                unresolved: false,
            }
        }
        Command::Psi { target, actor } => {
            let t = load_splitting(target)?;
            let g = t.group();
            let h = actor_subgroup(&t, actor)?;
            let q = minimal_subtree(&t, h.gens(), gl.depth)?;
            let reps: Vec<String> = q.edge_reps.iter().map(|w| g.format(w)).collect();
            Output {
                report: json!({
                    "edges": q.edges,
                    "vertices": q.vertices,
                    "stabilized": q.stabilized,
                    "depth": q.depth,
                    "counts": q.counts,
                    "radius": q.verdict_radius,
                    "edge_reps": reps,
                }),
                dot: None,
                unresolved: !q.stabilized,
            }
        }
        Command::Dtree { poset, .. } => {
            let p = PosetFile::load(poset)?.to_poset()?;
            validate_poset(&p)?;
            let t = build_tree(&p)?;
            let edges: Vec<[&str; 2]> = (0..t.ends.len())
                .filter(|&e| e < t.inv[e])
                .map(|e| [t.labels[e].as_str(), t.labels[t.inv[e]].as_str()])
                .collect();
            Output {
                report: json!({"edges": t.edge_count(), "vertices": t.vertex_count, "labels": edges, "exact": true}),
                dot: Some(t.to_dot()),
                unresolved: false,
            }
        }
        Command::Gog { splittings, .. } => {
            let list = load_splittings(splittings)?;
            let g = list[0].group().clone();
            let gog = assemble_with_stability(&list, gl.radius, &crossing_config(gl, &g))?;
            let stable = gog.stability.as_ref().is_some_and(|s| s.stable);
            Output { report: gog.sidecar(), dot: Some(gog.to_dot()), unresolved: !stable }
        }
        Command::Oracle { which: Oracle::Slopes { a, b } } => {
            let (a, b) = (Slope::parse(a)?, Slope::parse(b)?);
            let s = Arc::new(slope_splitting(a.p, a.q)?);
            let t = Arc::new(slope_splitting(b.p, b.q)?);
            let det = slope_intersection(a, b) as usize;
            let bf = brute_force_crossing_count(&s, &t, gl.radius, (gl.radius / 2).max(1), gl.threshold as usize)?;
            let lib = intersection_number(&s, &t, &crossing_config(gl, s.group()))?;
            let agree = det == bf.count && det == lib.count;
            Output {
                report: json!({
                    "a": a.to_string(),
                    "b": b.to_string(),
                    "determinant": det,
                    "brute_force": {"count": bf.count, "radius": bf.radius, "crossing_reps": bf.crossing_reps},
                    "library": count_json(s.group(), &lib),
                    "agree": agree,
                }),
                dot: None,
                unresolved: !lib.exact,
            }
        }
    })
}
