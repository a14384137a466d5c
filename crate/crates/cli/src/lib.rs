//! Command-line front end for `artin-core`.
//!
//! Every subcommand prints one JSON report on standard output: the payload
//! fields at top level plus a `meta` object with the command line, SHA-256
//! digests of the inputs and the elapsed time. Errors go to standard error as
//! JSON, with exit status 1 for mathematical failures and 2 for bad input.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::PathBuf;
use std::sync::Arc;
use std::time::Instant;

use artin_core::algebra::groebner::{reduce, unit_ideal_evidence, CHECK_PRIMES};
use artin_core::algebra::{buchberger, parse_laurent, vars, Fp, LaurentPoly, MonomialOrder, Poly};
use artin_core::character::{living_subgraph, parse_character, Character};
use artin_core::fox::{abelianization_map, artin_presentation, fox_derivative, jacobian, parse_word};
use artin_core::graph::{hypothesis_witness, parse_artin, HypothesisMode, LabeledGraph};
use artin_core::kt::certify_character;
use artin_core::polyhedron::{complement_polyhedron, polyhedron_contains};
use artin_core::sigma::decide_sigma1;
use clap::{Parser, Subcommand, ValueEnum};
use num_rational::BigRational;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

/// Result of one invocation, captured instead of printed so that tests can
/// drive the tool in-process.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum CliError {
    Input(String),
    Math(String),
}

impl CliError {
    fn code(&self) -> i32 {
        match self {
            CliError::Math(_) => 1,
            CliError::Input(_) => 2,
        }
    }

    fn to_json(&self) -> Value {
        let (kind, message) = match self {
            CliError::Input(m) => ("input", m),
            CliError::Math(m) => ("math", m),
        };
        json!({ "error": { "kind": kind, "message": message } })
    }
}

fn input<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Input(e.to_string())
}

fn math<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Math(e.to_string())
}

#[derive(Parser, Debug)]
#[command(name = "artin-sigma", version, about = "Sigma^1 invariants of even Artin groups")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum OrderArg {
    Lex,
    Grlex,
    Grevlex,
}

impl From<OrderArg> for MonomialOrder {
    fn from(o: OrderArg) -> Self {
        match o {
            OrderArg::Lex => MonomialOrder::Lex,
            OrderArg::Grlex => MonomialOrder::GrLex,
            OrderArg::Grevlex => MonomialOrder::GRevLex,
        }
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Decide whether [chi] lies in Sigma^1.
    Sigma1 {
        graph: PathBuf,
        /// Character as `a=1,b=-1/2`; defaults to the file's `c` lines.
        #[arg(long = "char")]
        character: Option<String>,
        #[arg(long, default_value = "simple-cycle")]
        mode: HypothesisMode,
    },
    /// Enumerate the complement polyhedron of Sigma^1.
    Polyhedron {
        graph: PathBuf,
        /// Also report whether this character lies in the polyhedron.
        #[arg(long = "char")]
        character: Option<String>,
    },
    /// Check the even-cycle hypothesis on the heavy subgraph.
    Hypothesis {
        graph: PathBuf,
        #[arg(long, default_value = "simple-cycle")]
        mode: HypothesisMode,
    },
    /// Fox derivative of a free-group word.
    Fox {
        #[arg(long)]
        word: String,
        #[arg(long = "gen")]
        generator: String,
    },
    /// Abelianized Fox Jacobian of the Artin presentation.
    Jacobian { graph: PathBuf },
    /// Certify that the kernel of chi is not finitely generated.
    KtCertify {
        graph: PathBuf,
        #[arg(long = "char")]
        character: Option<String>,
        /// Vertices placed on the first side, comma separated.
        #[arg(long, value_delimiter = ',')]
        bipartition: Option<Vec<String>>,
    },
    /// Groebner basis and unit-ideal test.
    Groebner {
        /// Variable names, comma separated.
        #[arg(long, value_delimiter = ',', required = true)]
        vars: Vec<String>,
        /// Generators; commas outside parentheses separate polynomials.
        #[arg(long, num_args = 1.., required = true)]
        gens: Vec<String>,
        /// Work in the Laurent ring instead of the polynomial ring.
        #[arg(long)]
        laurent: bool,
        #[arg(long, value_enum, default_value_t = OrderArg::Grevlex)]
        order: OrderArg,
    },
}

struct Report {
    payload: Map<String, Value>,
    text: String,
}

fn sha256_hex(bytes: &[u8]) -> String {
    hex::encode(Sha256::digest(bytes))
}

struct Inputs {
    digests: BTreeMap<String, String>,
}

impl Inputs {
    fn new() -> Self {
        Inputs {
            digests: BTreeMap::new(),
        }
    }

    fn text(&mut self, key: &str, value: &str) {
        self.digests.insert(key.to_string(), sha256_hex(value.as_bytes()));
    }

    fn graph(&mut self, path: &PathBuf) -> Result<(LabeledGraph, Vec<(String, BigRational)>), CliError> {
        let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        self.digests.insert("graph".to_string(), sha256_hex(&bytes));
        let text = String::from_utf8(bytes).map_err(|_| CliError::Input(format!("{}: not UTF-8", path.display())))?;
        let doc = parse_artin(&text).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
        Ok((doc.graph, doc.character))
    }

    fn character(
        &mut self,
        g: &Arc<LabeledGraph>,
        char_arg: Option<&str>,
        from_file: Vec<(String, BigRational)>,
    ) -> Result<Character, CliError> {
        match char_arg {
            Some(s) => {
                self.text("char", s);
                parse_character(g.clone(), s).map_err(input)
            }
            None if !from_file.is_empty() => Character::from_pairs(g.clone(), &from_file).map_err(input),
            None => Err(CliError::Input("no character: pass --char or add `c` lines".into())),
        }
    }
}

fn names(g: &LabeledGraph, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| g.name(i).to_string()).collect()
}

fn into_map(v: Value) -> Map<String, Value> {
    match v {
        Value::Object(m) => m,
        other => {
            let mut m = Map::new();
            m.insert("value".into(), other);
            m
        }
    }
}

fn sigma1(inputs: &mut Inputs, path: &PathBuf, char_arg: Option<&str>, mode: HypothesisMode) -> Result<Report, CliError> {
    let (g, file_char) = inputs.graph(path)?;
    let g = Arc::new(g);
    let chi = inputs.character(&g, char_arg, file_char)?;
    let verdict = decide_sigma1(&chi, mode);
    let living = living_subgraph(&chi);
    let comps = living.components();
    let ncomp = comps.iter().max().map_or(0, |m| m + 1);
    let mut groups = vec![Vec::new(); ncomp];
    for (i, &c) in comps.iter().enumerate() {
        groups[c].push(living.name(i).to_string());
    }
    let witness = hypothesis_witness(&g, mode).map(|c| names(&g, &c));
    let mut payload = into_map(serde_json::to_value(&verdict).expect("verdict serializes"));
    payload.insert("character".into(), json!(chi.to_string()));
    payload.insert("mode".into(), json!(mode.name()));
    payload.insert("living_components".into(), json!(groups));
    payload.insert("witness_cycle".into(), json!(witness));
    payload.insert("summary".into(), json!(verdict.to_string()));
    let d = &verdict.diagnostics;
    let mut text = format!("{verdict}\n");
    let _ = writeln!(
        text,
        "L_F connected: {}, dominant: {}, L connected: {}, even: {}, hypothesis: {}, cycle rank: {}",
        d.lf_connected, d.lf_dominant, d.l_connected, d.even, d.hypothesis_holds, d.cycle_rank
    );
    Ok(Report { payload, text })
}

fn polyhedron(inputs: &mut Inputs, path: &PathBuf, char_arg: Option<&str>) -> Result<Report, CliError> {
    let (g, _) = inputs.graph(path)?;
    let g = Arc::new(g);
    let p = complement_polyhedron(&g).map_err(math)?;
    let mut payload = into_map(p.to_json());
    let mut text = format!("{p}");
    if !text.ends_with('\n') {
        text.push('\n');
    }
    if let Some(s) = char_arg {
        inputs.text("char", s);
        let chi = parse_character(g.clone(), s).map_err(input)?;
        let inside = polyhedron_contains(&p, &chi).map_err(math)?;
        payload.insert("contains".into(), json!(inside));
        let _ = writeln!(
            text,
            "{chi}: {}",
            if inside {
                "in the polyhedron"
            } else {
                "not in the polyhedron"
            }
        );
    }
    Ok(Report { payload, text })
}

fn hypothesis(inputs: &mut Inputs, path: &PathBuf, mode: HypothesisMode) -> Result<Report, CliError> {
    let (g, _) = inputs.graph(path)?;
    let witness = hypothesis_witness(&g, mode).map(|c| names(&g, &c));
    let text = match &witness {
        None => format!("hypothesis holds ({})\n", mode.name()),
        Some(c) => format!("hypothesis fails ({}): even cycle {}\n", mode.name(), c.join(" ")),
    };
    let payload = into_map(json!({ "holds": witness.is_none(), "witness_cycle": witness }));
    Ok(Report { payload, text })
}

fn fox(inputs: &mut Inputs, word: &str, generator: &str) -> Result<Report, CliError> {
    inputs.text("word", word);
    inputs.text("gen", generator);
    let w = parse_word(word).map_err(input)?;
    let d = fox_derivative(&w, generator);
    let terms: Vec<Value> = d
        .terms()
        .map(|(w, c)| json!({ "word": w.to_string(), "coefficient": c.to_string() }))
        .collect();
    let payload = into_map(json!({
        "word": w.to_string(),
        "generator": generator,
        "derivative": d.to_string(),
        "terms": terms,
    }));
    Ok(Report {
        payload,
        text: format!("d({w})/d{generator} = {d}\n"),
    })
}

fn jacobian_report(inputs: &mut Inputs, path: &PathBuf) -> Result<Report, CliError> {
    let (g, _) = inputs.graph(path)?;
    let map = abelianization_map(&g);
    let (gens, rels) = artin_presentation(&g);
    let j = jacobian(&gens, &rels, &map).map_err(math)?;
    let rows: Vec<Vec<String>> = j
        .rows
        .iter()
        .map(|r| r.iter().map(|e| e.to_string()).collect())
        .collect();
    let chain = j.boundary_images(&map).iter().all(LaurentPoly::is_zero);
    let payload = into_map(json!({
        "generators": gens,
        "relators": rels.iter().map(|r| r.to_string()).collect::<Vec<_>>(),
        "variables": map.vars().to_vec(),
        "classes": map.classes(),
        "rows": rows,
        "chain_condition": chain,
    }));
    let mut text = String::new();
    for (r, row) in rels.iter().zip(&rows) {
        let _ = writeln!(text, "{r}: [{}]", row.join(", "));
    }
    let _ = writeln!(text, "chain condition: {}", if chain { "holds" } else { "FAILS" });
    Ok(Report { payload, text })
}

fn kt_certify(
    inputs: &mut Inputs,
    path: &PathBuf,
    char_arg: Option<&str>,
    bipartition: Option<&[String]>,
) -> Result<Report, CliError> {
    let (g, file_char) = inputs.graph(path)?;
    let g = Arc::new(g);
    let chi = inputs.character(&g, char_arg, file_char)?;
    if let Some(b) = bipartition {
        inputs.text("bipartition", &b.join(","));
    }
    let (split, cert) = certify_character(&g, &chi, bipartition).map_err(math)?;
    let mut payload = into_map(serde_json::to_value(&cert).expect("certificate serializes"));
    let edges: Vec<Value> = split.forest.edges().map(|(v, w, m)| json!([v, w, 2 * m])).collect();
    payload.insert("v_side".into(), json!(split.forest.v_side()));
    payload.insert("w_side".into(), json!(split.forest.w_side()));
    payload.insert("dead_edges".into(), json!(edges));
    payload.insert("summary".into(), json!(cert.to_string()));
    Ok(Report {
        payload,
        text: format!("{cert}\n"),
    })
}

/// Splits on commas that are not inside parentheses.
fn split_top_level(s: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut cur = String::new();
    for ch in s.chars() {
        match ch {
            '(' => depth += 1,
            ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(std::mem::take(&mut cur));
                continue;
            }
            _ => {}
        }
        cur.push(ch);
    }
    out.push(cur);
    out.into_iter()
        .map(|p| p.trim().to_string())
        .filter(|p| !p.is_empty())
        .collect()
}

fn polynomial_unit(gens: &[LaurentPoly<BigRational>], order: MonomialOrder, p: u64) -> Option<bool> {
    let polys = gens
        .iter()
        .map(|g| {
            if g.terms().any(|(_, c)| Fp::from_rational(c, p).is_none()) {
                return None;
            }
            let reduced = g.map_coeffs(&p, |c| Fp::from_rational(c, p).unwrap());
            Poly::from_laurent(&reduced, order)
        })
        .collect::<Option<Vec<_>>>()?;
    let gb = buchberger(&polys, order);
    Some(gb.len() == 1 && gb[0].is_constant())
}

fn groebner(
    inputs: &mut Inputs,
    var_names: &[String],
    raw_gens: &[String],
    laurent: bool,
    order: MonomialOrder,
) -> Result<Report, CliError> {
    inputs.text("vars", &var_names.join(","));
    let gen_texts: Vec<String> = raw_gens.iter().flat_map(|g| split_top_level(g)).collect();
    inputs.text("gens", &gen_texts.join(","));
    if var_names.is_empty() || var_names.iter().any(|v| v.trim().is_empty()) {
        return Err(CliError::Input("--vars needs non-empty names".into()));
    }
    let vs = vars(var_names);
    let gens = gen_texts
        .iter()
        .map(|t| parse_laurent(t, &vs).map_err(|e| CliError::Input(format!("`{t}`: {e}"))))
        .collect::<Result<Vec<_>, _>>()?;
    let (unit, basis_vars, basis, modular) = if laurent {
        let ev = unit_ideal_evidence(&gens, &vs, order);
        let basis: Vec<String> = ev.rational.basis.iter().map(|b| b.to_string()).collect();
        (ev.rational.unit, ev.rational.vars.clone(), basis, ev.modular)
    } else {
        let polys = gens
            .iter()
            .zip(&gen_texts)
            .map(|(g, t)| {
                Poly::from_laurent(g, order)
                    .ok_or_else(|| CliError::Input(format!("`{t}` has negative exponents; pass --laurent")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        let gb = buchberger(&polys, order);
        debug_assert!(polys.iter().all(|p| reduce(p, &gb, order).is_zero()));
        let unit = gb.len() == 1 && gb[0].is_constant();
        let basis = gb.iter().map(|b| b.to_laurent(&vs, &()).to_string()).collect();
        let modular = CHECK_PRIMES
            .iter()
            .map(|&p| (p, polynomial_unit(&gens, order, p)))
            .collect();
        (unit, vs.clone(), basis, modular)
    };
    let modular_json: Map<String, Value> = modular.iter().map(|(p, r)| (p.to_string(), json!(r))).collect();
    let payload = into_map(json!({
        "unit_ideal": unit,
        "basis": basis,
        "basis_vars": basis_vars.to_vec(),
        "vars": vs.to_vec(),
        "laurent": laurent,
        "order": order.name(),
        "modular": modular_json,
    }));
    let mut text = format!(
        "{} ({} ring, {})\n",
        if unit { "unit ideal" } else { "proper ideal" },
        if laurent { "Laurent" } else { "polynomial" },
        order.name()
    );
    for b in &basis {
        let _ = writeln!(text, "  {b}");
    }
    let mods: Vec<String> = modular
        .iter()
        .map(|(p, r)| format!("F_{p}: {}", r.map_or("n/a".to_string(), |u| u.to_string())))
        .collect();
    let _ = writeln!(text, "{}", mods.join(", "));
    Ok(Report { payload, text })
}

fn thread_count() -> Option<usize> {
    std::env::var("ARTIN_SIGMA_THREADS")
        .ok()?
        .trim()
        .parse()
        .ok()
        .filter(|&n| n > 0)
}

fn dispatch(cli: &Cli) -> Result<(Report, BTreeMap<String, String>), CliError> {
    let mut inputs = Inputs::new();
    let report = match &cli.command {
        Command::Sigma1 { graph, character, mode } => sigma1(&mut inputs, graph, character.as_deref(), *mode),
        Command::Polyhedron { graph, character } => polyhedron(&mut inputs, graph, character.as_deref()),
        Command::Hypothesis { graph, mode } => hypothesis(&mut inputs, graph, *mode),
        Command::Fox { word, generator } => fox(&mut inputs, word, generator),
        Command::Jacobian { graph } => jacobian_report(&mut inputs, graph),
        Command::KtCertify {
            graph,
            character,
            bipartition,
        } => kt_certify(&mut inputs, graph, character.as_deref(), bipartition.as_deref()),
        Command::Groebner {
            vars,
            gens,
            laurent,
            order,
        } => groebner(&mut inputs, vars, gens, *laurent, (*order).into()),
    }?;
    Ok((report, inputs.digests))
}

/// Runs the tool on a full argument list (program name first).
pub fn run<I, S>(args: I) -> Outcome
where
    I: IntoIterator<Item = S>,
    S: Into<String>,
{
    let argv: Vec<String> = args.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                return Outcome {
                    code: 0,
                    stdout: e.to_string(),
                    stderr: String::new(),
                };
            }
            let err = CliError::Input(e.to_string().trim().to_string());
            return Outcome {
                code: err.code(),
                stdout: String::new(),
                stderr: format!("{}\n", err.to_json()),
            };
        }
    };
    let start = Instant::now();
    let result = match thread_count() {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| dispatch(&cli)),
            Err(e) => Err(CliError::Input(format!("ARTIN_SIGMA_THREADS: {e}"))),
        },
        None => dispatch(&cli),
    };
    let elapsed = start.elapsed();
    match result {
        Ok((report, digests)) => {
            let stdout = match cli.format {
                Format::Text => report.text,
                Format::Json => {
                    let mut doc = report.payload;
                    doc.insert(
                        "meta".into(),
                        json!({
                            "command": argv.get(1..).unwrap_or_default(),
                            "input_sha256": digests,
                            "elapsed_ms": elapsed.as_secs_f64() * 1000.0,
                        }),
                    );
                    format!("{}\n", Value::Object(doc))
                }
            };
            Outcome {
                code: 0,
                stdout,
                stderr: String::new(),
            }
        }
        Err(err) => Outcome {
            code: err.code(),
            stdout: String::new(),
            stderr: format!("{}\n", err.to_json()),
        },
    }
}

/// Drops the timing field so that two reports can be compared byte for byte.
pub fn strip_timing(report: &str) -> String {
    match serde_json::from_str::<Value>(report) {
        Ok(Value::Object(mut doc)) => {
            if let Some(Value::Object(meta)) = doc.get_mut("meta") {
                meta.remove("elapsed_ms");
            }
            Value::Object(doc).to_string()
        }
        _ => report.to_string(),
    }
}
