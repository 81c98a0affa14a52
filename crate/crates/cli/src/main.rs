//! Batch front end: validate algebra files, materialize free algebras,
//! check definable pre-orders, synthesize and verify cover certificates.
//!
//! Exit codes: 0 success, 1 property failure (non-atomic relation or failed
//! certificate), 2 parse/validation, 3 switching-term failure, 4 cap
//! exceeded.

mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use freealg::{
    build_free_algebra, CoverEngine, Error, FiniteAlgebra, FreeAlgebra, PreorderSpec,
    RelationView, Term, VariableSet, VarietyPresentation,
};
use output::*;

#[derive(Parser)]
#[command(name = "freealg", version, about = "Free algebras of finite-algebra-generated varieties: pre-orders, covers, certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Default, PartialEq, Eq, ValueEnum)]
enum OutputMode {
    #[default]
    Human,
    Structured,
}

#[derive(Args)]
struct PresentationArgs {
    /// Algebra files of the generating algebras (shared signature).
    #[arg(required = true)]
    files: Vec<PathBuf>,
    /// Switching term over the variables x, y, u, v.
    #[arg(long)]
    switch: String,
}

#[derive(Args)]
struct FreeArgs {
    /// Number of free generators (named x, y, z, or x0.. beyond three).
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    generators: u32,
    /// Cap on the number of free-algebra elements.
    #[arg(long, default_value_t = freealg::DEFAULT_FREE_CAP)]
    free_cap: usize,
}

#[derive(Args)]
struct SpecArgs {
    /// Left-hand term of the defining equation, over x and y.
    #[arg(long)]
    le_lhs: String,
    /// Right-hand term of the defining equation, over x and y.
    #[arg(long)]
    le_rhs: String,
}

#[derive(Subcommand)]
enum Command {
    /// Validate algebra files and optionally a switching term.
    Validate {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Switching term to verify on every algebra.
        #[arg(long)]
        switch: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        output: OutputMode,
    },
    /// List every subuniverse of each algebra.
    Subalgebras {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        #[arg(long, default_value_t = freealg::DEFAULT_SUBALGEBRA_CAP)]
        subalgebra_cap: usize,
        #[arg(long, value_enum, default_value_t)]
        output: OutputMode,
    },
    /// Materialize the free algebra and report its size and growth.
    BuildFree {
        #[command(flatten)]
        presentation: PresentationArgs,
        #[command(flatten)]
        free: FreeArgs,
        /// Emit one line per element: index, value vector, witness term.
        #[arg(long)]
        dump: bool,
        #[arg(long, value_enum, default_value_t)]
        output: OutputMode,
    },
    /// Verify that the definable relation is a pre-order on the free algebra.
    CheckPreorder {
        #[command(flatten)]
        presentation: PresentationArgs,
        #[command(flatten)]
        free: FreeArgs,
        #[command(flatten)]
        spec: SpecArgs,
        #[arg(long, value_enum, default_value_t)]
        output: OutputMode,
    },
    /// Synthesize and verify a cover certificate for one strict pair.
    FindCover {
        #[command(flatten)]
        presentation: PresentationArgs,
        #[command(flatten)]
        free: FreeArgs,
        #[command(flatten)]
        spec: SpecArgs,
        /// Term over the free generators naming the lower class.
        #[arg(long)]
        alpha: String,
        /// Term over the free generators naming the upper class.
        #[arg(long)]
        beta: String,
        #[arg(long, value_enum, default_value_t)]
        output: OutputMode,
    },
    /// Run cover synthesis over all strict pairs and cross-validate against
    /// the exhaustive atomicity oracle.
    AtomicCheck {
        #[command(flatten)]
        presentation: PresentationArgs,
        #[command(flatten)]
        free: FreeArgs,
        #[command(flatten)]
        spec: SpecArgs,
        /// Run only the enumeration oracle.
        #[arg(long, conflicts_with = "synthesis_only")]
        oracle_only: bool,
        /// Run only the synthesis path.
        #[arg(long)]
        synthesis_only: bool,
        #[arg(long, value_enum, default_value_t)]
        output: OutputMode,
    },
    /// Compile a hand-written diagram into a single equation pair.
    CompileFormula {
        #[command(flatten)]
        presentation: PresentationArgs,
        #[command(flatten)]
        free: FreeArgs,
        /// Equation clause "lhs = rhs" (repeatable), terms over the free generators.
        #[arg(long = "eq")]
        equations: Vec<String>,
        /// Disequation clause "lhs != rhs" (repeatable).
        #[arg(long = "neq")]
        disequations: Vec<String>,
        /// Designated-pair term u (defaults to the constants witness).
        #[arg(long)]
        u: Option<String>,
        /// Designated-pair term w (defaults to the constants witness).
        #[arg(long)]
        w: Option<String>,
        #[arg(long, value_enum, default_value_t)]
        output: OutputMode,
    },
}

fn exit_code(err: &Error) -> u8 {
    match err {
        Error::Syntax { .. }
        | Error::UnknownSymbol { .. }
        | Error::ArityMismatch { .. }
        | Error::UnassignedVariable { .. }
        | Error::InvalidSignature(_)
        | Error::InvalidVariables(_)
        | Error::InvalidAlgebra { .. }
        | Error::AlgebraFile { .. }
        | Error::SignatureMismatch(_) => 2,
        Error::BadSwitchTerm { .. } | Error::NotSwitching { .. } => 3,
        Error::CapExceeded { .. } => 4,
        Error::Precondition(_)
        | Error::NoCoverInInterval { .. }
        | Error::EmptyDiagram
        | Error::AssignmentOutOfRange { .. } => 1,
    }
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: exit_code(&e),
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<u8, Failure>;

fn read_file(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure {
        code: 2,
        message: format!("{}: {e}", path.display()),
    })
}

fn load_algebras(files: &[PathBuf]) -> Result<Vec<(String, FiniteAlgebra)>, Failure> {
    let mut out = Vec::new();
    for path in files {
        let text = read_file(path)?;
        let alg = freealg::parse_algebra(&text).map_err(|e| Failure {
            code: exit_code(&e),
            message: format!("{}: {e}", path.display()),
        })?;
        out.push((path.display().to_string(), alg));
    }
    Ok(out)
}

fn load_presentation(args: &PresentationArgs) -> Result<VarietyPresentation, Failure> {
    let algebras: Vec<FiniteAlgebra> = load_algebras(&args.files)?
        .into_iter()
        .map(|(_, a)| a)
        .collect();
    let sig = algebras[0].signature().clone();
    let switch_vars = VariableSet::switch_vars(&sig)?;
    let switch = freealg::parse_term(&args.switch, &sig, &switch_vars)?;
    Ok(VarietyPresentation::new(algebras, switch, switch_vars)?)
}

struct Session {
    fa: FreeAlgebra,
}

impl Session {
    fn build(presentation: &PresentationArgs, free: &FreeArgs) -> Result<Session, Failure> {
        let vp = load_presentation(presentation)?;
        let fa = build_free_algebra(&vp, free.generators as usize, free.free_cap)?;
        Ok(Session { fa })
    }

    fn spec(&self, args: &SpecArgs) -> Result<PreorderSpec, Failure> {
        Ok(PreorderSpec::parse(
            &args.le_lhs,
            &args.le_rhs,
            self.fa.signature(),
        )?)
    }

    fn witness_text(&self, i: usize) -> String {
        freealg::print_term(
            &self.fa.element(i).witness,
            self.fa.signature(),
            self.fa.variables(),
        )
    }

    fn parse_element(&self, text: &str) -> Result<usize, Failure> {
        let t = freealg::parse_term(text, self.fa.signature(), self.fa.variables())?;
        Ok(self.fa.element_of_term(&t)?)
    }
}

fn emit_json<T: serde::Serialize>(doc: &T) {
    println!("{}", serde_json::to_string_pretty(doc).expect("serializable"));
}

fn cmd_validate(files: &[PathBuf], switch: &Option<String>, output: OutputMode) -> CmdResult {
    let mut docs = Vec::new();
    let mut code = 0u8;
    for path in files {
        let text = read_file(path)?;
        let alg = freealg::parse_algebra(&text).map_err(|e| Failure {
            code: exit_code(&e),
            message: format!("{}: {e}", path.display()),
        })?;
        let report = freealg::validate_algebra(&alg);
        if !report.is_valid() {
            for v in &report.violations {
                eprintln!("{}: {v}", path.display());
            }
            return Err(Failure {
                code: 2,
                message: format!("{}: algebra `{}` is not well-formed", path.display(), alg.name()),
            });
        }
        let mut switching = None;
        if let Some(switch_text) = switch {
            let vars = VariableSet::switch_vars(alg.signature())?;
            let term = freealg::parse_term(switch_text, alg.signature(), &vars)?;
            let sw = freealg::verify_switching_term(&alg, &term, &vars)?;
            if let Some((tuple, got, expected)) = sw.counterexample {
                let [x, y, u, v] = tuple;
                eprintln!(
                    "{}: switching term fails on `{}` at (x,y,u,v)=({x},{y},{u},{v}): got {got}, expected {expected}",
                    path.display(),
                    alg.name()
                );
                code = 3;
            }
            switching = Some(sw.ok);
        }
        docs.push(ValidationDoc {
            file: path.display().to_string(),
            algebra: alg.name().to_string(),
            size: alg.size(),
            operations: alg.signature().len(),
            valid: true,
            violations: vec![],
            switching,
        });
    }
    match output {
        OutputMode::Structured => emit_json(&docs),
        OutputMode::Human => {
            for d in &docs {
                let sw = match d.switching {
                    Some(true) => ", switching term ok",
                    Some(false) => ", switching term FAILED",
                    None => "",
                };
                println!(
                    "{}: algebra `{}` ok (size {}, {} operations{sw})",
                    d.file, d.algebra, d.size, d.operations
                );
            }
        }
    }
    Ok(code)
}

fn cmd_subalgebras(files: &[PathBuf], cap: usize, output: OutputMode) -> CmdResult {
    let mut docs = Vec::new();
    for (file, alg) in load_algebras(files)? {
        freealg::validate_algebra(&alg).into_result()?;
        let subs = freealg::all_subalgebras(&alg, cap)?;
        let _ = file;
        docs.push(SubalgebrasDoc {
            algebra: alg.name().to_string(),
            subuniverses: subs,
        });
    }
    match output {
        OutputMode::Structured => emit_json(&docs),
        OutputMode::Human => {
            for d in &docs {
                println!("{}: {} subuniverse(s)", d.algebra, d.subuniverses.len());
                for s in &d.subuniverses {
                    let elems: Vec<String> = s.iter().map(|e| e.to_string()).collect();
                    println!("  {{{}}}", elems.join(", "));
                }
            }
        }
    }
    Ok(0)
}

fn cmd_build_free(
    presentation: &PresentationArgs,
    free: &FreeArgs,
    dump: bool,
    output: OutputMode,
) -> CmdResult {
    let session = Session::build(presentation, free)?;
    let fa = &session.fa;
    let dump_lines = dump.then(|| {
        (0..fa.len())
            .map(|i| {
                let values: Vec<String> = fa
                    .element(i)
                    .values
                    .iter()
                    .map(|v| v.to_string())
                    .collect();
                format!("{i} [{}] {}", values.join(","), session.witness_text(i))
            })
            .collect::<Vec<_>>()
    });
    let doc = BuildFreeDoc {
        algebras: fa
            .presentation()
            .generators()
            .iter()
            .map(|g| g.name().to_string())
            .collect(),
        generators: fa.generator_count(),
        elements: fa.len(),
        layers: fa
            .layers()
            .iter()
            .map(|&(witness_size, count)| LayerDoc {
                witness_size,
                count,
            })
            .collect(),
        dump: dump_lines,
    };
    match output {
        OutputMode::Structured => emit_json(&doc),
        OutputMode::Human => {
            println!(
                "free algebra on {} generator(s) over {}: {} elements",
                doc.generators,
                doc.algebras.join(", "),
                doc.elements
            );
            for l in &doc.layers {
                println!("  witness size {}: {} element(s)", l.witness_size, l.count);
            }
            if let Some(lines) = &doc.dump {
                for line in lines {
                    println!("{line}");
                }
            }
        }
    }
    Ok(0)
}

fn cmd_check_preorder(
    presentation: &PresentationArgs,
    free: &FreeArgs,
    spec_args: &SpecArgs,
    output: OutputMode,
) -> CmdResult {
    let session = Session::build(presentation, free)?;
    let fa = &session.fa;
    let spec = session.spec(spec_args)?;
    let view = RelationView::build(&spec, fa);
    let preorder = PreorderDoc::build(fa, &view, &spec);
    let is_preorder = preorder.reflexive && preorder.transitive;
    let doc = CheckPreorderDoc {
        algebras: fa
            .presentation()
            .generators()
            .iter()
            .map(|g| g.name().to_string())
            .collect(),
        generators: fa.generator_count(),
        elements: fa.len(),
        is_preorder,
        strict_pairs: view.strict_pairs().len(),
        preorder,
    };
    match output {
        OutputMode::Structured => emit_json(&doc),
        OutputMode::Human => {
            println!("elements: {}", doc.elements);
            println!("reflexive: {}", doc.preorder.reflexive);
            println!("transitive: {}", doc.preorder.transitive);
            println!("antisymmetric: {}", doc.preorder.antisymmetric);
            println!("strict pairs: {}", doc.strict_pairs);
            if let Some(w) = &doc.preorder.reflexivity_counterexample {
                println!("reflexivity fails at {w}");
            }
            if let Some(ws) = &doc.preorder.transitivity_counterexample {
                println!("transitivity fails at ({})", ws.join(", "));
            }
        }
    }
    Ok(if is_preorder { 0 } else { 1 })
}

fn cmd_find_cover(
    presentation: &PresentationArgs,
    free: &FreeArgs,
    spec_args: &SpecArgs,
    alpha: &str,
    beta: &str,
    output: OutputMode,
) -> CmdResult {
    let session = Session::build(presentation, free)?;
    let fa = &session.fa;
    let spec = session.spec(spec_args)?;
    let alpha = session.parse_element(alpha)?;
    let beta = session.parse_element(beta)?;
    let engine = CoverEngine::new(fa, &spec);
    let cert = engine.synthesize_cover(alpha, beta)?;
    let doc = CertificateDoc::build(fa, &cert);
    if output == OutputMode::Human {
        println!("alpha class: {}", doc.alpha);
        println!("beta class: {}", doc.beta);
        println!(
            "separating coordinate: #{} ({} under {:?})",
            doc.coordinate.index, doc.coordinate.generator, doc.coordinate.assignment
        );
        println!("subalgebra A: {:?}", doc.subalgebra);
        println!("cover c of h(alpha) in A: {}", doc.c);
        for entry in &doc.rho {
            println!("rho({}) = {}", entry.element, entry.term);
        }
        println!(
            "diagram: {} equation(s), {} disequation(s), strategy {}",
            doc.eta_equations.len(),
            doc.eta_disequations.len(),
            cert.pair.strategy.as_str()
        );
        println!("gamma term: {}", doc.gamma);
        println!("gamma class: {}", session.witness_text(cert.gamma));
        println!(
            "checks: alpha<=gamma {}, gamma<=beta {}, gamma<=alpha fails {}, dichotomy {}, covers {}",
            doc.checks.alpha_le_gamma,
            doc.checks.gamma_le_beta,
            doc.checks.gamma_not_le_alpha,
            doc.checks.dichotomy,
            doc.checks.covers_alpha
        );
        println!("verified: {}", doc.checks.all_passed);
    }
    emit_json(&doc);
    Ok(if cert.checks.all_passed() { 0 } else { 1 })
}

fn cmd_atomic_check(
    presentation: &PresentationArgs,
    free: &FreeArgs,
    spec_args: &SpecArgs,
    oracle_only: bool,
    synthesis_only: bool,
    output: OutputMode,
) -> CmdResult {
    let session = Session::build(presentation, free)?;
    let fa = &session.fa;
    let spec = session.spec(spec_args)?;
    let engine = CoverEngine::new(fa, &spec);
    let view = engine.f_view();
    let preorder = PreorderDoc::build(fa, view, &spec);
    if !(preorder.reflexive && preorder.transitive) {
        let doc = AtomicCheckDoc {
            algebras: fa
                .presentation()
                .generators()
                .iter()
                .map(|g| g.name().to_string())
                .collect(),
            generators: fa.generator_count(),
            elements: fa.len(),
            preorder,
            strict_pairs: 0,
            oracle: None,
            synthesis: None,
            agree: None,
            atomic: false,
        };
        match output {
            OutputMode::Structured => emit_json(&doc),
            OutputMode::Human => println!("relation is not a pre-order on the free algebra"),
        }
        return Ok(1);
    }
    let strict = view.strict_pairs();
    let oracle = (!synthesis_only).then(|| {
        let report = freealg::preorder::is_atomic_view(view);
        OracleDoc {
            atomic: report.atomic,
            counterexample: report
                .counterexample
                .map(|(a, b)| vec![session.witness_text(a), session.witness_text(b)]),
        }
    });
    let synthesis = if oracle_only {
        None
    } else {
        let mut pairs = Vec::with_capacity(strict.len());
        let mut all_verified = true;
        for &(a, b) in &strict {
            let cert = engine.synthesize_cover(a, b)?;
            let verified = cert.checks.all_passed()
                && view.cover_set(a).contains(&cert.gamma)
                && view.holds(cert.gamma, b);
            all_verified &= verified;
            pairs.push(PairSummaryDoc {
                alpha: session.witness_text(a),
                beta: session.witness_text(b),
                gamma_class: session.witness_text(cert.gamma),
                verified,
            });
        }
        Some(SynthesisDoc {
            certificates: pairs.len(),
            all_verified,
            pairs,
        })
    };
    let oracle_atomic = oracle.as_ref().map(|o| o.atomic);
    let synthesis_atomic = synthesis.as_ref().map(|s| s.all_verified);
    let agree = match (oracle_atomic, synthesis_atomic) {
        (Some(a), Some(b)) => Some(a == b),
        _ => None,
    };
    let atomic = oracle_atomic.unwrap_or(true) && synthesis_atomic.unwrap_or(true);
    let ok = atomic && agree.unwrap_or(true);
    let doc = AtomicCheckDoc {
        algebras: fa
            .presentation()
            .generators()
            .iter()
            .map(|g| g.name().to_string())
            .collect(),
        generators: fa.generator_count(),
        elements: fa.len(),
        preorder,
        strict_pairs: strict.len(),
        oracle,
        synthesis,
        agree,
        atomic,
    };
    match output {
        OutputMode::Structured => emit_json(&doc),
        OutputMode::Human => {
            println!("elements: {}", doc.elements);
            println!("strict pairs: {}", doc.strict_pairs);
            if let Some(o) = &doc.oracle {
                println!("oracle: atomic = {}", o.atomic);
            }
            if let Some(s) = &doc.synthesis {
                println!(
                    "synthesis: {} certificate(s), all verified = {}",
                    s.certificates, s.all_verified
                );
                for p in &s.pairs {
                    println!(
                        "  {} < {}  cover {}  {}",
                        p.alpha,
                        p.beta,
                        p.gamma_class,
                        if p.verified { "ok" } else { "FAILED" }
                    );
                }
            }
            if let Some(a) = doc.agree {
                println!("paths agree: {a}");
            }
            println!("atomic: {}", doc.atomic);
        }
    }
    Ok(if ok { 0 } else { 1 })
}

fn split_clause(text: &str, op: &str) -> Result<(String, String), Failure> {
    match text.split_once(op) {
        Some((l, r)) => Ok((l.trim().to_string(), r.trim().to_string())),
        None => Err(Failure {
            code: 2,
            message: format!("clause `{text}` must contain `{op}`"),
        }),
    }
}

#[allow(clippy::too_many_arguments)]
fn cmd_compile_formula(
    presentation: &PresentationArgs,
    free: &FreeArgs,
    equations: &[String],
    disequations: &[String],
    u: &Option<String>,
    w: &Option<String>,
    output: OutputMode,
) -> CmdResult {
    let vp = load_presentation(presentation)?;
    let sig = vp.signature().clone();
    let vars = VariableSet::generators(free.generators as usize, &sig)?;
    let parse = |text: &str| -> Result<Term, Failure> {
        Ok(freealg::parse_term(text, &sig, &vars)?)
    };
    let mut eta = freealg::DiagramFormula {
        equations: Vec::new(),
        disequations: Vec::new(),
    };
    for clause in equations {
        let (l, r) = split_clause(clause, "=")?;
        eta.equations.push((parse(&l)?, parse(&r)?));
    }
    for clause in disequations {
        let (l, r) = split_clause(clause, "!=")?;
        eta.disequations.push((parse(&l)?, parse(&r)?));
    }
    let (u_term, w_term, strategy) = match (u, w) {
        (Some(u), Some(w)) => (parse(u)?, parse(w)?, freealg::PairStrategy::DesignatedPair),
        (None, None) => match vp.constant_witness_pair() {
            Some((c, d)) => (
                Term::constant(c),
                Term::constant(d),
                freealg::PairStrategy::ConstantsWitness,
            ),
            None => {
                return Err(Failure {
                    code: 2,
                    message: "no constants witness available; pass --u and --w".into(),
                })
            }
        },
        _ => {
            return Err(Failure {
                code: 2,
                message: "--u and --w must be given together".into(),
            })
        }
    };
    let pair = freealg::compile_to_equation(&eta, &vp, &u_term, &w_term, strategy)?;
    let doc = CompileFormulaDoc {
        strategy: pair.strategy.as_str().to_string(),
        delta: freealg::print_term(&pair.delta, &sig, &vars),
        epsilon: freealg::print_term(&pair.epsilon, &sig, &vars),
    };
    match output {
        OutputMode::Structured => emit_json(&doc),
        OutputMode::Human => {
            println!("strategy: {}", doc.strategy);
            println!("delta: {}", doc.delta);
            println!("epsilon: {}", doc.epsilon);
        }
    }
    Ok(0)
}

fn run(cli: Cli) -> CmdResult {
    match &cli.command {
        Command::Validate {
            files,
            switch,
            output,
        } => cmd_validate(files, switch, *output),
        Command::Subalgebras {
            files,
            subalgebra_cap,
            output,
        } => cmd_subalgebras(files, *subalgebra_cap, *output),
        Command::BuildFree {
            presentation,
            free,
            dump,
            output,
        } => cmd_build_free(presentation, free, *dump, *output),
        Command::CheckPreorder {
            presentation,
            free,
            spec,
            output,
        } => cmd_check_preorder(presentation, free, spec, *output),
        Command::FindCover {
            presentation,
            free,
            spec,
            alpha,
            beta,
            output,
        } => cmd_find_cover(presentation, free, spec, alpha, beta, *output),
        Command::AtomicCheck {
            presentation,
            free,
            spec,
            oracle_only,
            synthesis_only,
            output,
        } => cmd_atomic_check(presentation, free, spec, *oracle_only, *synthesis_only, *output),
        Command::CompileFormula {
            presentation,
            free,
            equations,
            disequations,
            u,
            w,
            output,
        } => cmd_compile_formula(presentation, free, equations, disequations, u, w, *output),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(failure) => {
            eprintln!("error: {}", failure.message);
            ExitCode::from(failure.code)
        }
    }
}
