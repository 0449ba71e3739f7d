mod infer;

use std::collections::BTreeMap;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use u1kit::dl::{concept_extension, parse_concept, print_concept, Concept};
use u1kit::dlr::{dlr_concept_extension, parse_dlr_concept, print_dlr_concept, DlrConcept, TopMode};
use u1kit::eval::{eval, satisfaction_set};
use u1kit::fragments::{check_fragment, FragmentId};
use u1kit::lab::{separation_experiments, separation_structures, run_experiment};
use u1kit::logic::{parse_formula_untyped, parse_structure, print_formula, Assignment};
use u1kit::sat::{find_model_with, Outcome, SearchConfig, DEFAULT_CELL_LIMIT};
use u1kit::translate::{dl_to_fu1, dlr0_to_fu1, eliminate_comp_union, fu1_to_dl, TranslateError};
use u1kit::{Formula, Structure, Vocabulary};

#[derive(Parser)]
#[command(name = "u1", version, about = "Uniform one-dimensional fragment toolkit")]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Lang {
    Formula,
    Dl,
    Dlr,
}

impl Lang {
    fn name(self) -> &'static str {
        match self {
            Lang::Formula => "formula",
            Lang::Dl => "dl",
            Lang::Dlr => "dlr",
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum From {
    Fu1,
    Dl,
    Dlr,
    Dlr0,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum To {
    Fu1,
    Dl,
    Dlr0,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Tops {
    Full,
    Explicit,
}

impl Tops {
    fn mode(self) -> TopMode {
        match self {
            Tops::Full => TopMode::Full,
            Tops::Explicit => TopMode::Explicit,
        }
    }
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Input text given inline.
    #[arg(short = 'e', long = "expr")]
    expr: Option<String>,
    /// File holding the input.
    file: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and print in canonical form.
    Parse {
        #[arg(long, value_enum, default_value_t = Lang::Formula)]
        lang: Lang,
        #[command(flatten)]
        input: Input,
    },
    /// Check membership of a formula in a fragment.
    Check {
        #[arg(long)]
        fragment: FragmentId,
        #[command(flatten)]
        input: Input,
    },
    /// Evaluate a formula or concept on a structure.
    Eval {
        /// Structure document (JSON).
        #[arg(long)]
        model: PathBuf,
        /// Assignment such as `x=a,y=b`.
        #[arg(long)]
        assign: Option<String>,
        #[arg(long, value_enum, default_value_t = Lang::Formula)]
        lang: Lang,
        #[arg(long, value_enum, default_value_t = Tops::Full)]
        top_mode: Tops,
        #[command(flatten)]
        input: Input,
    },
    /// Translate between FU1, DL_FU1 and DLR_reg.
    Translate {
        #[arg(long, value_enum)]
        from: From,
        #[arg(long, value_enum)]
        to: To,
        /// Vocabulary document (JSON object from names to arities).
        #[arg(long)]
        vocab: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Tops::Full)]
        top_mode: Tops,
        #[command(flatten)]
        input: Input,
    },
    /// Search for a finite model of a sentence.
    Sat {
        #[arg(long)]
        max_size: usize,
        /// Skip interpretations that an element swap makes smaller.
        #[arg(long)]
        prune: bool,
        #[arg(long, default_value_t = DEFAULT_CELL_LIMIT)]
        cell_limit: usize,
        /// Search on one thread.
        #[arg(long)]
        sequential: bool,
        #[arg(long)]
        vocab: Option<PathBuf>,
        #[command(flatten)]
        input: Input,
    },
    /// Separation experiments.
    Lab {
        #[command(subcommand)]
        command: LabCommand,
    },
}

#[derive(Subcommand)]
enum LabCommand {
    /// Run the experiments and report each probe.
    Run {
        #[arg(long)]
        name: Option<String>,
    },
    /// Write every experiment structure as a structure document.
    Dump {
        /// Directory to write one file per structure into; standard output if absent.
        #[arg(long)]
        dir: Option<PathBuf>,
    },
}

/// An operational failure with its exit code.
struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
    detail: Option<Value>,
}

impl Failure {
    fn input(message: impl ToString) -> Self {
        Failure { code: 2, kind: "input", message: message.to_string(), detail: None }
    }

    fn parse(message: impl ToString) -> Self {
        Failure { code: 2, kind: "parse", message: message.to_string(), detail: None }
    }

    fn translate(e: TranslateError) -> Self {
        let detail = match &e {
            TranslateError::Fragment(d) => serde_json::to_value(d).ok(),
            _ => None,
        };
        let (code, kind) = if e.is_gate() { (3, "gate") } else { (2, "input") };
        Failure { code, kind, message: e.to_string(), detail }
    }
}

/// A report and the exit code it carries.
struct Report {
    code: u8,
    json: Value,
    human: String,
}

fn read_input(input: &Input) -> Result<String, Failure> {
    match (&input.expr, &input.file) {
        (Some(text), _) => Ok(text.clone()),
        (None, Some(path)) => read(path),
        (None, None) => Err(Failure::input("no input given")),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        kind: "io",
        message: format!("{}: {e}", path.display()),
        detail: None,
    })
}

fn read_vocab(path: &Path) -> Result<Vocabulary, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn read_model(path: &Path) -> Result<Structure, Failure> {
    parse_structure(&read(path)?).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

fn formula(text: &str) -> Result<Formula, Failure> {
    parse_formula_untyped(text.trim()).map_err(Failure::parse)
}

fn dl(text: &str) -> Result<Concept, Failure> {
    parse_concept(text.trim()).map_err(Failure::parse)
}

fn dlr(text: &str) -> Result<DlrConcept, Failure> {
    parse_dlr_concept(text.trim()).map_err(Failure::parse)
}

fn vocab_json(v: &Vocabulary) -> Value {
    serde_json::to_value(v).expect("vocabularies serialize")
}

fn names_list(names: &[String]) -> String {
    format!("{{{}}}", names.join(", "))
}

fn parse_cmd(lang: Lang, text: &str) -> Result<Report, Failure> {
    let (canonical, vocab, free) = match lang {
        Lang::Formula => {
            let f = formula(text)?;
            let v = f.infer_vocabulary().map_err(Failure::input)?;
            let free: Vec<String> = f.free_variables().iter().map(|v| v.name().to_string()).collect();
            (print_formula(&f), v, Some(free))
        }
        Lang::Dl => {
            let c = dl(text)?;
            (print_concept(&c), infer::dl_vocabulary(&c).map_err(Failure::input)?, None)
        }
        Lang::Dlr => {
            let c = dlr(text)?;
            (print_dlr_concept(&c), infer::dlr_vocabulary(&c).map_err(Failure::input)?, None)
        }
    };
    let json = json!({
        "lang": lang.name(),
        "canonical": canonical,
        "vocabulary": vocab_json(&vocab),
        "free_variables": free,
    });
    Ok(Report { code: 0, json, human: canonical })
}

fn check_cmd(fragment: FragmentId, text: &str) -> Result<Report, Failure> {
    let f = formula(text)?;
    let d = check_fragment(&f, fragment);
    Ok(Report {
        code: if d.verdict { 0 } else { 1 },
        json: serde_json::to_value(&d).expect("diagnostics serialize"),
        human: d.to_string(),
    })
}

fn eval_cmd(model: &Path, assign: Option<&str>, lang: Lang, tops: Tops, text: &str) -> Result<Report, Failure> {
    let s = read_model(model)?;
    let a = match assign {
        Some(text) => Assignment::parse(text, &s).map_err(Failure::input)?,
        None => Assignment::new(),
    };
    let (extension, subject): (Vec<String>, String) = match lang {
        Lang::Formula => {
            let f = formula(text)?;
            let unassigned: Vec<_> = f.free_variables().into_iter().filter(|v| a.get(v).is_none()).collect();
            if unassigned.is_empty() {
                let truth = eval(&s, &a, &f).map_err(Failure::input)?;
                let json = json!({ "formula": print_formula(&f), "truth": truth });
                return Ok(Report { code: if truth { 0 } else { 1 }, json, human: truth.to_string() });
            }
            if a.iter().next().is_some() || unassigned.len() > 1 {
                return Err(Failure::input(format!(
                    "{} free variables are unassigned; assign all of them or leave exactly one free",
                    unassigned.len()
                )));
            }
            let set = satisfaction_set(&s, &f).map_err(Failure::input)?;
            (set.names(&s).into_iter().map(String::from).collect(), print_formula(&f))
        }
        Lang::Dl => {
            let c = dl(text)?;
            let ext = concept_extension(&s, &c).map_err(Failure::input)?;
            (ext.iter().map(|&e| s.element_name(e).to_string()).collect(), print_concept(&c))
        }
        Lang::Dlr => {
            let c = dlr(text)?;
            let ext = dlr_concept_extension(&s, &c, tops.mode()).map_err(Failure::input)?;
            (ext.iter().map(|&e| s.element_name(e).to_string()).collect(), print_dlr_concept(&c))
        }
    };
    if lang != Lang::Formula {
        if let Some((_, e)) = a.iter().next() {
            let member = extension.iter().any(|n| n == s.element_name(e));
            let json = json!({ "concept": subject, "element": s.element_name(e), "truth": member });
            return Ok(Report { code: if member { 0 } else { 1 }, json, human: member.to_string() });
        }
    }
    let human = names_list(&extension);
    let json = json!({ "subject": subject, "extension": extension });
    Ok(Report { code: 0, json, human })
}

fn translate_cmd(from: From, to: To, vocab: Option<&Path>, tops: Tops, text: &str) -> Result<Report, Failure> {
    let vocab = vocab.map(read_vocab).transpose()?;
    let (input, output) = match (from, to) {
        (From::Fu1, To::Dl) => {
            let f = formula(text)?;
            if let Some(v) = &vocab {
                f.validate(v).map_err(Failure::input)?;
            }
            (print_formula(&f), print_concept(&fu1_to_dl(&f).map_err(Failure::translate)?))
        }
        (From::Dl, To::Fu1) => {
            let c = dl(text)?;
            let v = match vocab {
                Some(v) => v,
                None => infer::dl_vocabulary(&c).map_err(Failure::input)?,
            };
            (print_concept(&c), print_formula(&dl_to_fu1(&c, &v).map_err(Failure::translate)?))
        }
        (From::Dlr | From::Dlr0, To::Fu1) => {
            let c = dlr(text)?;
            let v = match vocab {
                Some(v) => v,
                None => infer::dlr_vocabulary(&c).map_err(Failure::input)?,
            };
            let f = dlr0_to_fu1(&c, &v, tops.mode()).map_err(Failure::translate)?;
            (print_dlr_concept(&c), print_formula(&f))
        }
        (From::Dlr, To::Dlr0) => {
            let c = dlr(text)?;
            (print_dlr_concept(&c), print_dlr_concept(&eliminate_comp_union(&c).map_err(Failure::translate)?))
        }
        _ => return Err(Failure::input("unsupported translation; use fu1->dl, dl->fu1, dlr0->fu1 or dlr->dlr0")),
    };
    let name = |x: &str| x.to_string();
    let (from, to) = (
        name(match from {
            From::Fu1 => "fu1",
            From::Dl => "dl",
            From::Dlr => "dlr",
            From::Dlr0 => "dlr0",
        }),
        name(match to {
            To::Fu1 => "fu1",
            To::Dl => "dl",
            To::Dlr0 => "dlr0",
        }),
    );
    let json = json!({ "from": from, "to": to, "input": input, "output": output });
    Ok(Report { code: 0, json, human: output })
}

fn sat_cmd(config: SearchConfig, vocab: Option<&Path>, text: &str) -> Result<Report, Failure> {
    let f = formula(text)?;
    let vocab = match vocab {
        Some(p) => read_vocab(p)?,
        None => f.infer_vocabulary().map_err(Failure::input)?,
    };
    let report = find_model_with(&f, &vocab, &config).map_err(Failure::input)?;
    let (code, human) = match &report.outcome {
        Outcome::FoundModel(s) => (0, format!("found a model of size {}\n{}", s.size(), s.to_json())),
        Outcome::NoModelUpTo(n) => (1, format!("no model of size at most {n}")),
    };
    let human = format!(
        "{human}\n{} structures examined, {} nodes visited, {:.3}s",
        report.stats.structures_examined,
        report.stats.nodes_visited,
        report.stats.elapsed.as_secs_f64()
    );
    Ok(Report { code, json: report.to_json(), human })
}

fn lab_run(name: Option<&str>) -> Result<Report, Failure> {
    let experiments: Vec<_> =
        separation_experiments().into_iter().filter(|e| name.map_or(true, |n| e.name == n)).collect();
    if experiments.is_empty() {
        let known: Vec<String> = separation_experiments().into_iter().map(|e| e.name).collect();
        return Err(Failure::input(format!("unknown experiment; known: {}", known.join(", "))));
    }
    let results = experiments
        .iter()
        .map(run_experiment)
        .collect::<Result<Vec<_>, _>>()
        .map_err(Failure::input)?;
    let passed = results.iter().all(|r| r.passed);
    let mut human = String::new();
    for r in &results {
        human.push_str(&format!("{} {}  sizes {:?}\n", if r.passed { "PASS" } else { "FAIL" }, r.name, r.sizes));
        for p in r.probes.iter().filter(|p| !p.passed || name.is_some()) {
            human.push_str(&format!(
                "  {} {}  [{}]  {}\n",
                if p.passed { "ok  " } else { "FAIL" },
                p.subject,
                p.claim,
                serde_json::to_string(&p.observed).expect("observations serialize")
            ));
        }
    }
    let json = json!({ "passed": passed, "experiments": results });
    Ok(Report { code: if passed { 0 } else { 1 }, json, human: human.trim_end().to_string() })
}

fn lab_dump(dir: Option<&Path>) -> Result<Report, Failure> {
    let structures = separation_structures();
    let docs: BTreeMap<String, Value> = structures
        .iter()
        .map(|(n, s)| (n.clone(), serde_json::to_value(s.to_doc()).expect("structures serialize")))
        .collect();
    let Some(dir) = dir else {
        let human = serde_json::to_string_pretty(&docs).expect("structures serialize");
        return Ok(Report { code: 0, json: json!(docs), human });
    };
    let io = |e: std::io::Error| Failure { code: 2, kind: "io", message: e.to_string(), detail: None };
    fs::create_dir_all(dir).map_err(io)?;
    let mut written = Vec::new();
    for (name, s) in &structures {
        let path = dir.join(format!("{}.json", name.replace('/', "__")));
        fs::write(&path, s.to_json() + "\n").map_err(io)?;
        written.push(path.display().to_string());
    }
    Ok(Report { code: 0, json: json!({ "written": written }), human: written.join("\n") })
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    match &cli.command {
        Command::Parse { lang, input } => parse_cmd(*lang, &read_input(input)?),
        Command::Check { fragment, input } => check_cmd(*fragment, &read_input(input)?),
        Command::Eval { model, assign, lang, top_mode, input } => {
            eval_cmd(model, assign.as_deref(), *lang, *top_mode, &read_input(input)?)
        }
        Command::Translate { from, to, vocab, top_mode, input } => {
            translate_cmd(*from, *to, vocab.as_deref(), *top_mode, &read_input(input)?)
        }
        Command::Sat { max_size, prune, cell_limit, sequential, vocab, input } => {
            let config = SearchConfig { max_size: *max_size, prune: *prune, cell_limit: *cell_limit, parallel: !sequential };
            sat_cmd(config, vocab.as_deref(), &read_input(input)?)
        }
        Command::Lab { command: LabCommand::Run { name } } => lab_run(name.as_deref()),
        Command::Lab { command: LabCommand::Dump { dir } } => lab_dump(dir.as_deref()),
    }
}

/// Writes to standard output; a reader that went away early is not an error.
fn emit(text: &str) {
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{text}").and_then(|()| out.flush());
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            match cli.format {
                Format::Human => emit(&report.human),
                Format::Json => emit(&serde_json::to_string_pretty(&report.json).expect("reports serialize")),
            }
            ExitCode::from(report.code)
        }
        Err(f) => {
            eprintln!("error: {}", f.message);
            if cli.format == Format::Json {
                let mut body = json!({ "error": { "kind": f.kind, "message": f.message } });
                if let Some(d) = f.detail {
                    body["error"]["diagnostic"] = d;
                }
                emit(&serde_json::to_string_pretty(&body).expect("errors serialize"));
            }
            ExitCode::from(f.code)
        }
    }
}
