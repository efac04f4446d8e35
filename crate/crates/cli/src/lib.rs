//! `fusioncat`: command-line access to every fusioncat operation.
//!
//! Exit codes: 0 on success, 1 on a domain error (its name goes to stderr),
//! 2 on a usage error.

use std::ffi::OsString;
use std::io::Write;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};

mod commands;
mod format;
pub mod parse;

pub use format::{canonical_json, real};

#[derive(Debug)]
pub enum CliError {
    Core(fusioncat_core::Error),
    Usage(String),
    Io(String),
}

impl From<fusioncat_core::Error> for CliError {
    fn from(e: fusioncat_core::Error) -> Self {
        CliError::Core(e)
    }
}

/// Text and machine-readable renderings of one command's result.
pub struct Report {
    pub text: String,
    pub result: Value,
}

#[derive(Parser, Debug)]
#[command(name = "fusioncat", version, about = "Fusion rings, centers, channels and spin-chain verdicts")]
pub struct Cli {
    /// Emit a single JSON object instead of text.
    #[arg(long, global = true)]
    pub json: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Fusion ring axioms, dimensions and products.
    #[command(subcommand)]
    Ring(RingCmd),
    /// Built-in example rings.
    #[command(subcommand)]
    Catalog(CatalogCmd),
    /// Lagrangian subgroups, dualities and boundaries of pointed centers.
    #[command(subcommand)]
    Center(CenterCmd),
    /// The symmetry hypergroup.
    #[command(subcommand)]
    Channels(ChannelsCmd),
    /// Spin-chain dimension counts and the Pauli duality check.
    #[command(subcommand)]
    Chain(ChainCmd),
    /// Temperley-Lieb diagram algebra.
    #[command(subcommand)]
    Tl(TlCmd),
    /// Realizability and gaplessness verdicts.
    #[command(subcommand)]
    Lsm(LsmCmd),
}

#[derive(Args, Debug, Serialize)]
pub struct RingArg {
    /// Catalog name or path to a ring file.
    #[arg(long)]
    pub ring: String,
}

#[derive(Args, Debug, Serialize)]
pub struct TensorArgs {
    #[arg(long)]
    pub ring: String,
    /// Comma-separated labels, multiplied left to right.
    #[arg(long)]
    pub word: String,
}

#[derive(Args, Debug, Serialize)]
pub struct IsoArgs {
    #[arg(long)]
    pub ring: String,
    #[arg(long)]
    pub other: String,
}

#[derive(Subcommand, Debug)]
pub enum RingCmd {
    /// Check the fusion ring axioms.
    Verify(RingArg),
    /// Frobenius-Perron dimensions.
    Dims(RingArg),
    /// Integrality of the dimensions.
    Integral(RingArg),
    /// Multiplicities in a tensor product of labels.
    Tensor(TensorArgs),
    /// The regular element of an integral ring.
    Regular(RingArg),
    /// Print the ring in file format.
    Show(RingArg),
    /// Search for a label bijection preserving the fusion rules.
    Iso(IsoArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct NameArg {
    #[arg(long)]
    pub name: String,
}

#[derive(Args, Debug, Serialize)]
pub struct FactorsArg {
    /// Comma-separated cyclic orders, e.g. `2,2`.
    #[arg(long)]
    pub factors: String,
}

#[derive(Args, Debug, Serialize)]
pub struct TyArgs {
    #[arg(long)]
    pub factors: String,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub s: i64,
}

#[derive(Args, Debug, Serialize)]
pub struct LevelArg {
    #[arg(long, allow_negative_numbers = true)]
    pub k: i64,
}

#[derive(Subcommand, Debug)]
pub enum CatalogCmd {
    /// List the standard entries.
    List,
    /// Show one entry.
    Show(NameArg),
    /// Group ring of a finite abelian group.
    Pointed(FactorsArg),
    /// Tambara-Yamagami ring.
    Ty(TyArgs),
    /// Integer-spin part of SU(2) at level k.
    Psu2(LevelArg),
}

#[derive(Args, Debug, Serialize)]
pub struct GroupArg {
    /// `Z/n`, `Z/a x Z/b`, or a catalog group (`s3`, `a4`, `q8`, `d4`, ...).
    #[arg(long)]
    pub group: String,
}

#[derive(Args, Debug, Serialize)]
pub struct DualityArgs {
    /// A cyclic group `Z/n`.
    #[arg(long)]
    pub group: String,
    #[arg(long, default_value_t = 1, allow_negative_numbers = true)]
    pub s: i64,
}

#[derive(Args, Debug, Serialize)]
pub struct ForcedArgs {
    /// Number of objects permuted.
    #[arg(long)]
    pub count: u64,
    /// Order of the acting symmetry.
    #[arg(long)]
    pub order: u64,
}

#[derive(Subcommand, Debug)]
pub enum CenterCmd {
    /// Lagrangian subgroups of the center of Vec(G).
    Lagrangians(GroupArg),
    /// Elements and quadratic form of the center of Vec(G).
    Metric(GroupArg),
    /// Lagrangians from subgroups with alternating bicharacters.
    Pairs(GroupArg),
    /// Orbits of the Tambara-Yamagami duality on Lagrangians.
    Anomaly(DualityArgs),
    /// Boundary count by subgroup classes and Schur multipliers.
    Boundaries(GroupArg),
    /// Whether a prime-order action must fix one of `count` objects.
    Forced(ForcedArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct ComposeArgs {
    #[arg(long)]
    pub ring: String,
    /// A label or a combination `w*X + w*Y`.
    #[arg(long)]
    pub left: String,
    #[arg(long)]
    pub right: String,
}

#[derive(Subcommand, Debug)]
pub enum ChannelsCmd {
    /// Full composition table and the conditional expectation.
    Table(RingArg),
    /// Compose two channel combinations.
    Compose(ComposeArgs),
    /// The conditional expectation and its absorption identities.
    Expectation(RingArg),
}

#[derive(Args, Debug, Serialize)]
pub struct ChainDimsArgs {
    #[arg(long)]
    pub ring: String,
    /// A label or direct sum `X+Y`.
    #[arg(long)]
    pub object: String,
    #[arg(long)]
    pub n: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct EmbedArgs {
    #[arg(long)]
    pub ring: String,
    #[arg(long)]
    pub k: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct NArg {
    #[arg(long)]
    pub n: usize,
}

#[derive(Subcommand, Debug)]
pub enum ChainCmd {
    /// dim End(X^{⊗k}) for k = 1..n.
    Dims(ChainDimsArgs),
    /// Bigraded dimensions of the regular object.
    Bigraded(RingArg),
    /// Dimension bookkeeping of the spread-one embedding.
    Embed(EmbedArgs),
    /// Kramers-Wannier generator check on Pauli words.
    KwPauli(NArg),
}

#[derive(Args, Debug, Serialize)]
pub struct MArg {
    #[arg(long)]
    pub m: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct KmArgs {
    #[arg(long)]
    pub k: usize,
    #[arg(long)]
    pub m: usize,
}

#[derive(Args, Debug, Serialize)]
pub struct JwArgs {
    #[arg(long)]
    pub p: usize,
    #[arg(long)]
    pub k: usize,
}

#[derive(Subcommand, Debug)]
pub enum TlCmd {
    /// Number of diagrams on m strands.
    Dim(MArg),
    /// Dimension of the semisimple quotient at level k.
    Semisimple(KmArgs),
    /// Jones-Wenzl idempotent at level k.
    Jw(JwArgs),
    /// Shift check e_i ↦ e_{i-1} on a window.
    KwCheck(KmArgs),
    /// Residuals of the Jones projection relations.
    Relations(KmArgs),
}

#[derive(Args, Debug, Serialize)]
pub struct VacuaArgs {
    #[arg(long)]
    pub group: String,
    /// Generators of the state's Lagrangian, e.g. `1+e` or `(1,0)`.
    #[arg(long)]
    pub state: String,
    /// Generators of the boundary Lagrangian.
    #[arg(long)]
    pub ext: String,
}

#[derive(Subcommand, Debug)]
pub enum LsmCmd {
    /// Verdict for a pure symmetric state.
    Verdict(RingArg),
    /// Vacua of a state against a boundary condition.
    Vacua(VacuaArgs),
    /// Gaplessness from an anomalous Tambara-Yamagami duality.
    Duality(DualityArgs),
    /// Realizability report.
    Realize(RingArg),
    /// Fiber-functor status.
    Fiber(RingArg),
}

impl Command {
    /// Subcommand path and its arguments as JSON.
    fn describe(&self) -> (String, Value) {
        fn v<T: Serialize>(t: &T) -> Value {
            serde_json::to_value(t).expect("arguments serialize")
        }
        let (group, name, inputs) = match self {
            Command::Ring(c) => match c {
                RingCmd::Verify(a) => ("ring", "verify", v(a)),
                RingCmd::Dims(a) => ("ring", "dims", v(a)),
                RingCmd::Integral(a) => ("ring", "integral", v(a)),
                RingCmd::Tensor(a) => ("ring", "tensor", v(a)),
                RingCmd::Regular(a) => ("ring", "regular", v(a)),
                RingCmd::Show(a) => ("ring", "show", v(a)),
                RingCmd::Iso(a) => ("ring", "iso", v(a)),
            },
            Command::Catalog(c) => match c {
                CatalogCmd::List => ("catalog", "list", json!({})),
                CatalogCmd::Show(a) => ("catalog", "show", v(a)),
                CatalogCmd::Pointed(a) => ("catalog", "pointed", v(a)),
                CatalogCmd::Ty(a) => ("catalog", "ty", v(a)),
                CatalogCmd::Psu2(a) => ("catalog", "psu2", v(a)),
            },
            Command::Center(c) => match c {
                CenterCmd::Lagrangians(a) => ("center", "lagrangians", v(a)),
                CenterCmd::Metric(a) => ("center", "metric", v(a)),
                CenterCmd::Pairs(a) => ("center", "pairs", v(a)),
                CenterCmd::Anomaly(a) => ("center", "anomaly", v(a)),
                CenterCmd::Boundaries(a) => ("center", "boundaries", v(a)),
                CenterCmd::Forced(a) => ("center", "forced", v(a)),
            },
            Command::Channels(c) => match c {
                ChannelsCmd::Table(a) => ("channels", "table", v(a)),
                ChannelsCmd::Compose(a) => ("channels", "compose", v(a)),
                ChannelsCmd::Expectation(a) => ("channels", "expectation", v(a)),
            },
            Command::Chain(c) => match c {
                ChainCmd::Dims(a) => ("chain", "dims", v(a)),
                ChainCmd::Bigraded(a) => ("chain", "bigraded", v(a)),
                ChainCmd::Embed(a) => ("chain", "embed", v(a)),
                ChainCmd::KwPauli(a) => ("chain", "kw-pauli", v(a)),
            },
            Command::Tl(c) => match c {
                TlCmd::Dim(a) => ("tl", "dim", v(a)),
                TlCmd::Semisimple(a) => ("tl", "semisimple", v(a)),
                TlCmd::Jw(a) => ("tl", "jw", v(a)),
                TlCmd::KwCheck(a) => ("tl", "kw-check", v(a)),
                TlCmd::Relations(a) => ("tl", "relations", v(a)),
            },
            Command::Lsm(c) => match c {
                LsmCmd::Verdict(a) => ("lsm", "verdict", v(a)),
                LsmCmd::Vacua(a) => ("lsm", "vacua", v(a)),
                LsmCmd::Duality(a) => ("lsm", "duality", v(a)),
                LsmCmd::Realize(a) => ("lsm", "realize", v(a)),
                LsmCmd::Fiber(a) => ("lsm", "fiber", v(a)),
            },
        };
        (format!("{group} {name}"), inputs)
    }
}

/// Parses `args` (including the program name), runs the command and writes
/// its output. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let rendered = e.render().to_string();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => {
                    let _ = write!(out, "{rendered}");
                    0
                }
                _ => {
                    let _ = write!(err, "{rendered}");
                    2
                }
            };
        }
    };
    let (command, inputs) = cli.command.describe();
    match commands::dispatch(&cli.command, err) {
        Ok(report) => {
            if cli.json {
                let doc = json!({
                    "command": command,
                    "inputs": inputs,
                    "result": report.result,
                });
                let _ = writeln!(out, "{}", canonical_json(&doc));
            } else {
                let _ = write!(out, "{}", report.text);
            }
            0
        }
        Err(CliError::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(CliError::Io(msg)) => {
            let _ = writeln!(err, "error: IoError: {msg}");
            1
        }
        Err(CliError::Core(e)) => {
            let _ = writeln!(err, "error: {}: {e}", e.name());
            1
        }
    }
}

/// Every subcommand path, for coverage checks.
pub const COMMANDS: &[&str] = &[
    "ring verify",
    "ring dims",
    "ring integral",
    "ring tensor",
    "ring regular",
    "ring show",
    "ring iso",
    "catalog list",
    "catalog show",
    "catalog pointed",
    "catalog ty",
    "catalog psu2",
    "center lagrangians",
    "center metric",
    "center pairs",
    "center anomaly",
    "center boundaries",
    "center forced",
    "channels table",
    "channels compose",
    "channels expectation",
    "chain dims",
    "chain bigraded",
    "chain embed",
    "chain kw-pauli",
    "tl dim",
    "tl semisimple",
    "tl jw",
    "tl kw-check",
    "tl relations",
    "lsm verdict",
    "lsm vacua",
    "lsm duality",
    "lsm realize",
    "lsm fiber",
];
