//! The `goursat` command line: argument parsing, dispatch, reports and replay.
//!
//! Exit codes: 0 holds, 1 fails, 2 inconclusive, 3 input error.

mod files;
mod report;

pub use files::{
    algebra_from_json, algebra_to_json, load_algebra, load_identities, AlgebraSource, DiagramFile, InputRef,
    LoadedDiagram,
};
pub use report::{Budget, Report};

use std::ffi::OsString;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::algebra::{FinAlgebra, Homomorphism, DEFAULT_LATTICE_CAP};
use crate::diagrams::{
    beck_chevalley_comparison, cube_lambda_check, cube_right_face_check, goursat_pushout_check, product_comparison,
    ComparisonWitness, Cube, GeneralCube, LambdaWitness, PairWitness, Point, SplitEpiSquare,
};
use crate::error::{Error, Result};
use crate::permutability::{
    check_modularity_with_cap, check_permutable_with_cap, check_relation_condition_with_target,
    check_shifting_lemma_with_cap, ModularityWitness, PermutabilityWitness, RelCondition, RelationBudget,
    RelationWitness, ShiftingWitness,
};
use crate::reflection::{
    galois_pregroupoid, groupoid_check, pullback_comparison, reflect, GroupoidWitness, IdentitySet,
};
use crate::termsynth::{find_hm_pair, find_maltsev, remark_cube_report, RemarkCube, Search, DEFAULT_FUNCTION_CAP};
use crate::verdict::{Status, Verdict};

/// Exit code for unreadable or invalid input.
pub const EXIT_INPUT: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "goursat", version, about = "Permutability checks, term synthesis and diagram checks for finite algebras")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
    /// Congruence-lattice cap for lattice checks, clone cap for term searches.
    #[arg(long, global = true)]
    pub cap: Option<usize>,
    /// Largest number of seed pairs for generated relations.
    #[arg(long, global = true)]
    pub seed_pairs: Option<usize>,
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    /// Include the labelled witness in JSON reports.
    #[arg(long, global = true)]
    pub witness_labels: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TermKind {
    Maltsev,
    Hm,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConditionArg {
    Ii,
    Iii,
    Iv,
}

impl From<ConditionArg> for RelCondition {
    fn from(c: ConditionArg) -> Self {
        match c {
            ConditionArg::Ii => RelCondition::Ii,
            ConditionArg::Iii => RelCondition::Iii,
            ConditionArg::Iv => RelCondition::Iv,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "subcommand", rename_all = "kebab-case")]
pub enum Command {
    /// Run a check with a holds/fails/inconclusive verdict.
    #[command(subcommand)]
    Check(CheckCommand),
    /// Search the clone for Mal'tsev or Hagemann–Mitschke terms.
    Terms { kind: TermKind, algebra: PathBuf },
    /// The cube of free algebras on 1, 2, 3 generators.
    RemarkCube { algebra: PathBuf },
    /// Reflect an algebra into the subvariety given by identities.
    Reflect {
        algebra: PathBuf,
        #[arg(long)]
        ids: PathBuf,
    },
    /// Build the Galois pregroupoid of a surjection and test it is a groupoid.
    Galois {
        diagram: PathBuf,
        #[arg(long)]
        ids: PathBuf,
    },
    /// Re-evaluate the witness of a saved report.
    Replay { report: PathBuf },
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand, Serialize, Deserialize)]
#[serde(tag = "check", rename_all = "kebab-case")]
pub enum CheckCommand {
    /// Congruence n-permutability.
    Perm {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=3))]
        n: u8,
        algebra: PathBuf,
    },
    /// Congruence modularity.
    Modularity { algebra: PathBuf },
    /// The Shifting Lemma.
    Shifting { algebra: PathBuf },
    /// One of the relational characterisations, on generated relations.
    GoursatRelations {
        condition: ConditionArg,
        algebra: PathBuf,
        /// Codomain for condition iv; defaults to the algebra itself.
        #[arg(long)]
        target: Option<PathBuf>,
    },
    /// Eq(f) → Eq(g) surjective for a regular epimorphism of points.
    PushoutSquare { diagram: PathBuf },
    /// λ surjective for a cube of regular epimorphisms of points.
    Cube { diagram: PathBuf },
    /// The right face of a cube with apex A is a pullback.
    CubeGeneral { diagram: PathBuf },
    /// α_! f* ≅ g* β_! on one point.
    BeckChevalley { diagram: PathBuf },
    /// β_! preserves the binary product of two points.
    ProductPreservation { diagram: PathBuf },
    /// The reflector preserves a pullback of split epimorphisms.
    ReflectorPullbacks {
        diagram: PathBuf,
        #[arg(long)]
        ids: PathBuf,
    },
}

impl Command {
    pub fn name(&self) -> String {
        match self {
            Command::Check(c) => format!("check {}", c.name()),
            Command::Terms { kind: TermKind::Maltsev, .. } => "terms maltsev".into(),
            Command::Terms { kind: TermKind::Hm, .. } => "terms hm".into(),
            Command::RemarkCube { .. } => "remark-cube".into(),
            Command::Reflect { .. } => "reflect".into(),
            Command::Galois { .. } => "galois".into(),
            Command::Replay { .. } => "replay".into(),
        }
    }

    fn absolute(&self) -> Command {
        let a = |p: &PathBuf| fs::canonicalize(p).unwrap_or_else(|_| p.clone());
        match self {
            Command::Check(c) => Command::Check(c.absolute(&a)),
            Command::Terms { kind, algebra } => Command::Terms { kind: *kind, algebra: a(algebra) },
            Command::RemarkCube { algebra } => Command::RemarkCube { algebra: a(algebra) },
            Command::Reflect { algebra, ids } => Command::Reflect { algebra: a(algebra), ids: a(ids) },
            Command::Galois { diagram, ids } => Command::Galois { diagram: a(diagram), ids: a(ids) },
            Command::Replay { report } => Command::Replay { report: a(report) },
        }
    }
}

impl CheckCommand {
    fn name(&self) -> &'static str {
        match self {
            CheckCommand::Perm { .. } => "perm",
            CheckCommand::Modularity { .. } => "modularity",
            CheckCommand::Shifting { .. } => "shifting",
            CheckCommand::GoursatRelations { .. } => "goursat-relations",
            CheckCommand::PushoutSquare { .. } => "pushout-square",
            CheckCommand::Cube { .. } => "cube",
            CheckCommand::CubeGeneral { .. } => "cube-general",
            CheckCommand::BeckChevalley { .. } => "beck-chevalley",
            CheckCommand::ProductPreservation { .. } => "product-preservation",
            CheckCommand::ReflectorPullbacks { .. } => "reflector-pullbacks",
        }
    }

    fn absolute(&self, a: &dyn Fn(&PathBuf) -> PathBuf) -> CheckCommand {
        use CheckCommand::*;
        match self {
            Perm { n, algebra } => Perm { n: *n, algebra: a(algebra) },
            Modularity { algebra } => Modularity { algebra: a(algebra) },
            Shifting { algebra } => Shifting { algebra: a(algebra) },
            GoursatRelations { condition, algebra, target } => GoursatRelations {
                condition: *condition,
                algebra: a(algebra),
                target: target.as_ref().map(a),
            },
            PushoutSquare { diagram } => PushoutSquare { diagram: a(diagram) },
            Cube { diagram } => Cube { diagram: a(diagram) },
            CubeGeneral { diagram } => CubeGeneral { diagram: a(diagram) },
            BeckChevalley { diagram } => BeckChevalley { diagram: a(diagram) },
            ProductPreservation { diagram } => ProductPreservation { diagram: a(diagram) },
            ReflectorPullbacks { diagram, ids } => ReflectorPullbacks { diagram: a(diagram), ids: a(ids) },
        }
    }
}

/// Cap and seed-pair settings as given on the command line.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct Options {
    pub cap: Option<usize>,
    pub seed_pairs: Option<usize>,
}

/// What a run printed and how it exited.
#[derive(Debug, Clone)]
pub struct Outcome {
    pub exit_code: i32,
    pub stdout: String,
    pub stderr: String,
    pub report: Option<Report>,
}

impl Outcome {
    fn input_error(msg: impl Into<String>) -> Self {
        Outcome {
            exit_code: EXIT_INPUT,
            stdout: String::new(),
            stderr: format!("error: {}\n", msg.into()),
            report: None,
        }
    }
}

/// Parse `args` (program name first) and run the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            use clap::error::ErrorKind;
            let text = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => Outcome {
                    exit_code: 0,
                    stdout: text,
                    stderr: String::new(),
                    report: None,
                },
                ErrorKind::InvalidSubcommand | ErrorKind::MissingSubcommand
                | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                    let mut usage = text;
                    usage.push('\n');
                    usage.push_str(&<Cli as clap::CommandFactory>::command().render_help().to_string());
                    Outcome { exit_code: EXIT_INPUT, stdout: String::new(), stderr: usage, report: None }
                }
                _ => Outcome { exit_code: EXIT_INPUT, stdout: String::new(), stderr: text, report: None },
            };
        }
    };
    let opts = Options { cap: cli.cap, seed_pairs: cli.seed_pairs };
    if let Command::Replay { report } = &cli.command {
        return match replay(report) {
            Ok((code, msg)) => Outcome { exit_code: code, stdout: format!("{msg}\n"), stderr: String::new(), report: None },
            Err(e) => Outcome::input_error(e.to_string()),
        };
    }
    match execute(&cli.command, opts) {
        Ok(mut report) => {
            let exit_code = report.status.exit_code();
            let stdout = if cli.json {
                if !cli.witness_labels {
                    report.witness_display = None;
                }
                let mut s = report.to_json();
                s.push('\n');
                s
            } else {
                report.render_human()
            };
            Outcome { exit_code, stdout, stderr: String::new(), report: Some(report) }
        }
        Err(e) => Outcome::input_error(e.to_string()),
    }
}

struct Partial {
    status: Status,
    witness: Option<Value>,
    witness_display: Option<String>,
    result: Option<Value>,
    message: String,
    note: Option<String>,
    assumptions: Vec<String>,
}

impl Partial {
    fn new(status: Status, message: impl Into<String>) -> Self {
        Partial {
            status,
            witness: None,
            witness_display: None,
            result: None,
            message: message.into(),
            note: None,
            assumptions: Vec::new(),
        }
    }

    fn from_verdict<W: Serialize>(v: Verdict<W>, holds: &str, fails: &str, show: impl FnOnce(&W) -> String) -> Self {
        let message = match v.status {
            Status::Holds => holds.to_string(),
            Status::Fails => fails.to_string(),
            Status::Inconclusive => "budget exhausted before a decision".to_string(),
        };
        let mut p = Partial::new(v.status, message);
        if let Some(w) = &v.witness {
            p.witness_display = Some(show(w));
            p.witness = Some(serde_json::to_value(w).expect("witnesses serialize"));
        }
        p.note = v.budget_note;
        p
    }

    fn assume(mut self, a: &str) -> Self {
        self.assumptions.push(a.to_string());
        self
    }
}

const ASSUME_RELATIONS: &str = "holds covers only the relations generated by the seed sets enumerated";
const ASSUME_VARIETY: &str = "identities are decided in the variety generated by the input algebra";
const ASSUME_BECK: &str = "checked per object: the canonical map α_! f* P → g* β_! P is tested for bijectivity";
const ASSUME_EXACT: &str = "exactness of the ambient variety is taken for granted, not checked";
const ASSUME_LAMBDA: &str =
    "the verdict is the fiber of λ over the two binary projections; surjectivity of λ is reported alongside";
const ASSUME_GROUPOID: &str =
    "groupoid means: P2 is the pullback of d2 along d1, and units, associativity and inverses hold on elements";

fn lattice_cap(opts: Options) -> usize {
    opts.cap.unwrap_or(DEFAULT_LATTICE_CAP)
}

fn function_cap(opts: Options) -> usize {
    opts.cap.unwrap_or(DEFAULT_FUNCTION_CAP)
}

fn relation_budget(opts: Options) -> RelationBudget {
    opts.seed_pairs
        .map(|seed_pairs| RelationBudget { seed_pairs })
        .unwrap_or_default()
}

/// Run a non-replay command and build its report.
pub fn execute(command: &Command, opts: Options) -> Result<Report> {
    let start = Instant::now();
    let mut inputs = Vec::new();
    let (partial, budget) = dispatch(command, opts, &mut inputs)?;
    let mut seen = std::collections::HashSet::new();
    inputs.retain(|i| seen.insert(i.path.clone()));
    Ok(Report {
        command: command.name(),
        args: serde_json::to_value(command.absolute()).expect("commands serialize"),
        input: inputs,
        status: partial.status,
        witness: partial.witness,
        witness_display: partial.witness_display,
        result: partial.result,
        message: partial.message,
        budget: Budget { note: partial.note, ..budget },
        assumptions: partial.assumptions,
        elapsed_ms: start.elapsed().as_millis() as u64,
    })
}

fn algebra(path: &Path, inputs: &mut Vec<InputRef>) -> Result<FinAlgebra> {
    let (a, i) = load_algebra(path)?;
    inputs.push(i);
    Ok(a)
}

fn identities(path: &Path, inputs: &mut Vec<InputRef>) -> Result<IdentitySet> {
    let (ids, i) = load_identities(path)?;
    inputs.push(i);
    Ok(ids)
}

fn diagram(path: &Path, inputs: &mut Vec<InputRef>) -> Result<LoadedDiagram> {
    let d = LoadedDiagram::load(path)?;
    inputs.extend(d.inputs.iter().cloned());
    Ok(d)
}

fn square_of(d: &LoadedDiagram) -> Result<SplitEpiSquare> {
    let left = Point::new(d.hom("f", "X", "Y")?, d.hom("i", "Y", "X")?)?;
    let right = Point::new(d.hom("g", "U", "W")?, d.hom("j", "W", "U")?)?;
    SplitEpiSquare::new(left, right, d.hom("alpha", "X", "U")?, d.hom("beta", "Y", "W")?)
}

fn cube_of(d: &LoadedDiagram) -> Result<Cube> {
    let back = square_of(d)?;
    let left = Point::new(d.hom("l", "Z", "Y")?, d.hom("k", "Y", "Z")?)?;
    let right = Point::new(d.hom("h", "V", "W")?, d.hom("h_section", "W", "V")?)?;
    let front = SplitEpiSquare::new(left, right, d.hom("gamma", "Z", "V")?, back.beta.clone())?;
    Cube::new(back, front)
}

fn general_cube_of(d: &LoadedDiagram) -> Result<GeneralCube> {
    let cube = cube_of(d)?;
    let (p, _) = cube.faces()?;
    let map = d
        .maps
        .get("delta")
        .ok_or_else(|| Error::Input("diagram: missing map `delta`".into()))?;
    let delta =
        Homomorphism::new(p.alg, d.alg("A")?, map.clone()).map_err(|e| Error::Input(format!("map `delta`: {e}")))?;
    GeneralCube::new(cube, delta)
}

fn side_point(d: &LoadedDiagram) -> Result<Point> {
    Point::new(d.hom("l", "Z", "Y")?, d.hom("k", "Y", "Z")?)
}

fn product_of(d: &LoadedDiagram) -> Result<(Homomorphism, Point, Point)> {
    let a = Point::new(d.hom("f", "X", "Y")?, d.hom("i", "Y", "X")?)?;
    Ok((d.hom("beta", "Y", "W")?, a, side_point(d)?))
}

/// `(f, l)`: a split epi `f` and either a split epi or a surjection `p` into `Y`.
fn cospan_of(d: &LoadedDiagram) -> Result<(Homomorphism, Homomorphism, bool)> {
    let a = Point::new(d.hom("f", "X", "Y")?, d.hom("i", "Y", "X")?)?;
    if d.has_map("p") {
        let p = d.hom("p", "Z", "Y")?;
        if !p.is_surjective() {
            return Err(Error::NotSurjective("map `p`".into()));
        }
        Ok((p, a.f, true))
    } else {
        Ok((a.f, side_point(d)?.f, false))
    }
}

fn comparison_partial(v: Verdict<ComparisonWitness>, c: &crate::diagrams::Comparison, holds: &str, fails: &str) -> Partial {
    Partial::from_verdict(v, holds, fails, |w| w.describe(c))
}

fn dispatch(command: &Command, opts: Options, inputs: &mut Vec<InputRef>) -> Result<(Partial, Budget)> {
    let lat = Budget { cap: Some(lattice_cap(opts)), ..Budget::default() };
    let fun = Budget { cap: Some(function_cap(opts)), ..Budget::default() };
    let none = Budget::default();
    Ok(match command {
        Command::Check(CheckCommand::Perm { n, algebra: p }) => {
            let a = algebra(p, inputs)?;
            let n = *n as usize;
            let v = check_permutable_with_cap(&a, n, lattice_cap(opts));
            let word = if n == 2 { "RS = SR" } else { "RSR = SRS" };
            let p = Partial::from_verdict(
                v,
                &format!("{word} for all congruences"),
                &format!("two congruences with {}", if n == 2 { "RS ≠ SR" } else { "RSR ≠ SRS" }),
                |w| w.describe(&a),
            );
            (p, lat)
        }
        Command::Check(CheckCommand::Modularity { algebra: p }) => {
            let a = algebra(p, inputs)?;
            let v = check_modularity_with_cap(&a, lattice_cap(opts));
            (Partial::from_verdict(v, "the congruence lattice is modular", "modular law fails", |w| w.describe(&a)), lat)
        }
        Command::Check(CheckCommand::Shifting { algebra: p }) => {
            let a = algebra(p, inputs)?;
            let v = check_shifting_lemma_with_cap(&a, lattice_cap(opts));
            (Partial::from_verdict(v, "the Shifting Lemma holds", "the Shifting Lemma fails", |w| w.describe(&a)), lat)
        }
        Command::Check(CheckCommand::GoursatRelations { condition, algebra: p, target }) => {
            let a = algebra(p, inputs)?;
            let t = match target {
                Some(t) => algebra(t, inputs)?,
                None => a.clone(),
            };
            let cond: RelCondition = (*condition).into();
            let budget = relation_budget(opts);
            let v = check_relation_condition_with_target(&a, &t, cond, budget);
            let p = Partial::from_verdict(
                v,
                &format!("{} on every generated relation", cond.formula()),
                &format!("{} fails", cond.formula()),
                |w| w.describe(&a, &t),
            )
            .assume(ASSUME_RELATIONS);
            (p, Budget { seed_pairs: Some(budget.seed_pairs), ..none })
        }
        Command::Terms { kind, algebra: p } => {
            let a = algebra(p, inputs)?;
            let cap = function_cap(opts);
            let p = match kind {
                TermKind::Maltsev => terms_partial(find_maltsev(&a, cap)?, "Mal'tsev term", |t| vec![t.to_sexpr_string()]),
                TermKind::Hm => terms_partial(find_hm_pair(&a, cap)?, "Hagemann–Mitschke pair", |(r, s)| {
                    vec![r.to_sexpr_string(), s.to_sexpr_string()]
                }),
            };
            (p.assume(ASSUME_VARIETY), fun)
        }
        Command::RemarkCube { algebra: p } => {
            let a = algebra(p, inputs)?;
            let p = match remark_cube_report(&a, function_cap(opts))? {
                None => Partial::new(Status::Inconclusive, "a free algebra did not close within the cap"),
                Some(rc) => remark_partial(&rc),
            };
            (p.assume(ASSUME_VARIETY).assume(ASSUME_LAMBDA), fun)
        }
        Command::Check(CheckCommand::PushoutSquare { diagram: p }) => {
            let d = diagram(p, inputs)?;
            let sq = square_of(&d)?;
            let v = goursat_pushout_check(&sq)?;
            let p = Partial::from_verdict(v, "Eq(f) → Eq(g) is surjective", "Eq(f) → Eq(g) is not surjective", |w| {
                w.describe(&sq)
            });
            (p, none)
        }
        Command::Check(CheckCommand::Cube { diagram: p }) => {
            let d = diagram(p, inputs)?;
            let cube = cube_of(&d)?;
            let v = cube_lambda_check(&cube)?;
            let p = Partial::from_verdict(v, "λ is surjective", "λ is not surjective", |w| w.describe(&cube));
            (p, none)
        }
        Command::Check(CheckCommand::CubeGeneral { diagram: p }) => {
            let d = diagram(p, inputs)?;
            let gc = general_cube_of(&d)?;
            let c = gc.comparison()?;
            let v = cube_right_face_check(&gc)?;
            (comparison_partial(v, &c, "the right face is a pullback", "the right face is not a pullback"), none)
        }
        Command::Check(CheckCommand::BeckChevalley { diagram: p }) => {
            let d = diagram(p, inputs)?;
            let (sq, pt) = (square_of(&d)?, side_point(&d)?);
            let c = beck_chevalley_comparison(&sq, &pt)?;
            let v = c.verdict();
            let p = comparison_partial(v, &c, "α_! f* P ≅ g* β_! P", "α_! f* P → g* β_! P is not bijective")
                .assume(ASSUME_BECK);
            (p, none)
        }
        Command::Check(CheckCommand::ProductPreservation { diagram: p }) => {
            let d = diagram(p, inputs)?;
            let (beta, a, b) = product_of(&d)?;
            let c = product_comparison(&beta, &a, &b)?;
            let v = c.verdict();
            (comparison_partial(v, &c, "β_! preserves the product", "β_!(A × B) → β_!A × β_!B is not bijective"), none)
        }
        Command::Check(CheckCommand::ReflectorPullbacks { diagram: p, ids }) => {
            let d = diagram(p, inputs)?;
            let ids = identities(ids, inputs)?;
            let (f, l, _) = cospan_of(&d)?;
            let c = pullback_comparison(&f, &l, &ids)?;
            let v = c.verdict();
            let p = comparison_partial(v, &c, "the reflector preserves the pullback", "I(X ×_Y Z) → IX ×_IY IZ is not bijective")
                .assume(ASSUME_EXACT);
            (p, none)
        }
        Command::Reflect { algebra: p, ids } => {
            let a = algebra(p, inputs)?.into_ref();
            let ids = identities(ids, inputs)?;
            let r = reflect(&a, &ids)?;
            let mut p = Partial::new(Status::Holds, format!("reflection has {} elements", r.alg.size()));
            p.result = Some(json!({
                "algebra": algebra_to_json(&r.alg),
                "eta": r.eta.map(),
            }));
            (p, none)
        }
        Command::Galois { diagram: p, ids } => {
            let d = diagram(p, inputs)?;
            let ids = identities(ids, inputs)?;
            let f = d.hom("f", "A", "B")?;
            let pc = galois_pregroupoid(&f, &ids)?;
            let v = groupoid_check(&pc)?;
            let sizes = [pc.p0.size(), pc.p1.size(), pc.p2.size()];
            let mut p = Partial::from_verdict(v, "Gal(f) is an internal groupoid", "Gal(f) is not a groupoid", |w| {
                describe_groupoid(w, &pc)
            })
            .assume(ASSUME_GROUPOID);
            p.result = Some(json!({ "sizes": sizes }));
            (p, none)
        }
        Command::Replay { .. } => return Err(Error::Input("replay is not a check".into())),
    })
}

fn describe_groupoid(w: &GroupoidWitness, pc: &crate::reflection::PreCategory) -> String {
    let l = |a: &usize| pc.p1.label(*a);
    match w {
        GroupoidWitness::Composable { comparison } => {
            format!("P2 is not the object of composable pairs: {comparison:?}")
        }
        GroupoidWitness::LeftUnit { arrow } => format!("left unit law fails at {}", l(arrow)),
        GroupoidWitness::RightUnit { arrow } => format!("right unit law fails at {}", l(arrow)),
        GroupoidWitness::Associativity { a, b, c } => {
            format!("composition is not associative at ({}, {}, {})", l(a), l(b), l(c))
        }
        GroupoidWitness::NoInverse { arrow } => format!("{} has no inverse", l(arrow)),
    }
}

fn terms_partial<T: Serialize>(s: Search<T>, what: &str, sexprs: impl Fn(&T) -> Vec<String>) -> Partial {
    match &s {
        Search::Found { terms } => {
            let mut p = Partial::new(Status::Holds, format!("found {what}: {}", sexprs(terms).join(", ")));
            p.result = Some(serde_json::to_value(&s).expect("terms serialize"));
            p
        }
        Search::None { clone_size } => {
            let mut p = Partial::new(
                Status::Fails,
                format!("exhaustive: no {what} among {clone_size} ternary term functions"),
            );
            p.witness = Some(serde_json::to_value(&s).expect("searches serialize"));
            p.witness_display = Some(format!("complete clone of {clone_size} ternary functions"));
            p
        }
        Search::Inconclusive { explored } => {
            let mut p = Partial::new(Status::Inconclusive, format!("cap reached after {explored} functions"));
            p.note = Some(format!("clone generation stopped at {explored} functions"));
            p
        }
    }
}

fn remark_partial(rc: &RemarkCube) -> Partial {
    let sizes = format!(
        "|F1| = {}, |F2| = {}, |F3| = {}, |P| = {}, |Eq(∇)| = {}, |λ(P)| = {}, λ {}",
        rc.unary,
        rc.binary,
        rc.ternary,
        rc.pullback,
        rc.kernel_pair,
        rc.image,
        if rc.lambda_surjective { "surjective" } else { "not surjective" }
    );
    let value = serde_json::to_value(rc).expect("cubes serialize");
    if rc.fiber_nonempty {
        let mut p = Partial::new(Status::Holds, format!("the fiber of λ over (π1, π2) is inhabited; {sizes}"));
        p.result = Some(value);
        p
    } else {
        let mut p = Partial::new(Status::Fails, format!("the fiber of λ over (π1, π2) is empty; {sizes}"));
        p.witness_display = Some(sizes);
        p.witness = Some(value);
        p
    }
}

fn witness_as<W: DeserializeOwned>(v: &Value) -> Result<W> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Input(format!("report witness: {e}")))
}

/// Re-evaluate the witness of a saved report. Returns the exit code and a message.
pub fn replay(path: &Path) -> Result<(i32, String)> {
    let text = fs::read_to_string(path).map_err(|e| Error::Input(format!("{}: {e}", path.display())))?;
    let report = Report::from_json(&text)?;
    for i in &report.input {
        if !i.is_current() {
            return Ok((EXIT_INPUT, format!("stale input: {} changed since the report was written", i.path)));
        }
    }
    if report.status != Status::Fails {
        return Ok((EXIT_INPUT, format!("nothing to replay: status is {}", report.status.as_str())));
    }
    let witness = report
        .witness
        .as_ref()
        .ok_or_else(|| Error::Input("failing report without witness".into()))?;
    let command: Command = witness_as(&report.args)?;
    let opts = Options { cap: report.budget.cap, seed_pairs: report.budget.seed_pairs };
    let reproduced = replay_witness(&command, opts, witness)?;
    Ok(if reproduced {
        (0, format!("{}: violation reproduced", report.command))
    } else {
        (1, format!("{}: witness does not reproduce", report.command))
    })
}

fn replay_witness(command: &Command, opts: Options, w: &Value) -> Result<bool> {
    let mut inputs = Vec::new();
    let inputs = &mut inputs;
    match command {
        Command::Check(CheckCommand::Perm { algebra: p, .. }) => witness_as::<PermutabilityWitness>(w)?.replay(&algebra(p, inputs)?),
        Command::Check(CheckCommand::Modularity { algebra: p }) => witness_as::<ModularityWitness>(w)?.replay(&algebra(p, inputs)?),
        Command::Check(CheckCommand::Shifting { algebra: p }) => witness_as::<ShiftingWitness>(w)?.replay(&algebra(p, inputs)?),
        Command::Check(CheckCommand::GoursatRelations { algebra: p, target, .. }) => {
            let a = algebra(p, inputs)?;
            let t = match target {
                Some(t) => algebra(t, inputs)?,
                None => a.clone(),
            };
            witness_as::<RelationWitness>(w)?.replay(&a, &t)
        }
        Command::Terms { kind, algebra: p } => {
            let a = algebra(p, inputs)?;
            let cap = function_cap(opts);
            let Search::None { clone_size } = witness_as::<Search<Value>>(w)? else {
                return Ok(false);
            };
            Ok(match kind {
                TermKind::Maltsev => find_maltsev(&a, cap)? == Search::None { clone_size },
                TermKind::Hm => find_hm_pair(&a, cap)? == Search::None { clone_size },
            })
        }
        Command::RemarkCube { algebra: p } => {
            let stated: RemarkCube = witness_as(w)?;
            let a = algebra(p, inputs)?;
            Ok(!stated.fiber_nonempty && remark_cube_report(&a, function_cap(opts))? == Some(stated))
        }
        Command::Check(CheckCommand::PushoutSquare { diagram: p }) => {
            witness_as::<PairWitness>(w)?.replay(&square_of(&diagram(p, inputs)?)?)
        }
        Command::Check(CheckCommand::Cube { diagram: p }) => {
            witness_as::<LambdaWitness>(w)?.replay(&cube_of(&diagram(p, inputs)?)?)
        }
        Command::Check(CheckCommand::CubeGeneral { diagram: p }) => {
            let c = general_cube_of(&diagram(p, inputs)?)?.comparison()?;
            Ok(witness_as::<ComparisonWitness>(w)?.reproduces(&c))
        }
        Command::Check(CheckCommand::BeckChevalley { diagram: p }) => {
            let d = diagram(p, inputs)?;
            let c = beck_chevalley_comparison(&square_of(&d)?, &side_point(&d)?)?;
            Ok(witness_as::<ComparisonWitness>(w)?.reproduces(&c))
        }
        Command::Check(CheckCommand::ProductPreservation { diagram: p }) => {
            let (beta, a, b) = product_of(&diagram(p, inputs)?)?;
            Ok(witness_as::<ComparisonWitness>(w)?.reproduces(&product_comparison(&beta, &a, &b)?))
        }
        Command::Check(CheckCommand::ReflectorPullbacks { diagram: p, ids }) => {
            let d = diagram(p, inputs)?;
            let ids = identities(ids, inputs)?;
            let (f, l, _) = cospan_of(&d)?;
            Ok(witness_as::<ComparisonWitness>(w)?.reproduces(&pullback_comparison(&f, &l, &ids)?))
        }
        Command::Galois { diagram: p, ids } => {
            let d = diagram(p, inputs)?;
            let ids = identities(ids, inputs)?;
            let pc = galois_pregroupoid(&d.hom("f", "A", "B")?, &ids)?;
            let stated: GroupoidWitness = witness_as(w)?;
            Ok(groupoid_check(&pc)?.witness == Some(stated))
        }
        Command::Reflect { .. } | Command::Replay { .. } => Ok(false),
    }
}

/// Diagram files for constructed instances, with algebras inlined.
pub mod export {
    use super::*;
    use crate::algebra::AlgRef;

    fn with(file: DiagramFile, algs: &[(&str, &AlgRef)], maps: &[(&str, &Homomorphism)]) -> DiagramFile {
        let file = algs.iter().fold(file, |f, (n, a)| f.with_algebra(n, a));
        maps.iter().fold(file, |f, (n, h)| f.with_map(n, h))
    }

    pub fn square(sq: &SplitEpiSquare) -> DiagramFile {
        with(
            DiagramFile::default(),
            &[("X", sq.left.total()), ("Y", sq.left.base()), ("U", sq.right.total()), ("W", sq.right.base())],
            &[
                ("f", &sq.left.f),
                ("i", &sq.left.i),
                ("g", &sq.right.f),
                ("j", &sq.right.i),
                ("alpha", &sq.alpha),
                ("beta", &sq.beta),
            ],
        )
    }

    pub fn cube(c: &Cube) -> DiagramFile {
        let fr = &c.front;
        with(
            square(&c.back),
            &[("Z", fr.left.total()), ("V", fr.right.total())],
            &[
                ("l", &fr.left.f),
                ("k", &fr.left.i),
                ("h", &fr.right.f),
                ("h_section", &fr.right.i),
                ("gamma", &fr.alpha),
            ],
        )
    }

    pub fn general_cube(gc: &GeneralCube) -> DiagramFile {
        with(cube(&gc.cube), &[("A", gc.apex())], &[("delta", &gc.delta)])
    }

    pub fn beck_chevalley(sq: &SplitEpiSquare, pt: &Point) -> DiagramFile {
        with(square(sq), &[("Z", pt.total())], &[("l", &pt.f), ("k", &pt.i)])
    }

    pub fn product(beta: &Homomorphism, a: &Point, b: &Point) -> DiagramFile {
        with(
            DiagramFile::default(),
            &[("Y", a.base()), ("W", beta.dst()), ("X", a.total()), ("Z", b.total())],
            &[("beta", beta), ("f", &a.f), ("i", &a.i), ("l", &b.f), ("k", &b.i)],
        )
    }

    pub fn split_cospan(a: &Point, b: &Point) -> DiagramFile {
        with(
            DiagramFile::default(),
            &[("X", a.total()), ("Y", a.base()), ("Z", b.total())],
            &[("f", &a.f), ("i", &a.i), ("l", &b.f), ("k", &b.i)],
        )
    }

    pub fn regular_cospan(a: &Point, p: &Homomorphism) -> DiagramFile {
        with(
            DiagramFile::default(),
            &[("X", a.total()), ("Y", a.base()), ("Z", p.src())],
            &[("f", &a.f), ("i", &a.i), ("p", p)],
        )
    }

    pub fn surjection(f: &Homomorphism) -> DiagramFile {
        with(DiagramFile::default(), &[("A", f.src()), ("B", f.dst())], &[("f", f)])
    }
}
