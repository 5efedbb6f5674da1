//! The `diffchar` command line: load complexes and characters, run one
//! computation, print a JSON report.
//!
//! Exit status: 0 success / all checks pass, 1 a check failed (or the
//! requested object does not exist, e.g. no section), 2 bad input.

use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand};
use serde::Serialize;
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

use crate::character::{DiffChar, FlatClass, GradedChar};
use crate::error::Error;
use crate::fiber::{boundary_fiber_integrate, fiber_integrate, TransferData};
use crate::fixtures;
use crate::holonomy::holonomy;
use crate::io::{self, ChainFile, CharacterFile, CochainFile, ComplexFile, MapFile, RelCharFile};
use crate::product::{external_product, internal_product};
use crate::relative::find_section;
use crate::simplicial::{Chain, Complex, MappingCone, ProductComplex};
use crate::verify::{self, SuiteOptions};

#[derive(Parser, Debug)]
#[command(name = "diffchar", version, about = "Exact differential characters on simplicial complexes")]
pub struct Cli {
    /// Complex: a JSON file or a bundled fixture name (e.g. T2_9).
    #[arg(long, global = true)]
    pub complex: Option<String>,
    /// Character: a JSON file, or one of the named characters i, ixi, ju.
    #[arg(long, global = true)]
    pub character: Option<String>,
    /// Chain JSON file.
    #[arg(long, global = true)]
    pub chain: Option<PathBuf>,
    /// Simplicial map JSON file.
    #[arg(long, global = true)]
    pub map: Option<PathBuf>,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Verification suite name.
    #[arg(long, global = true)]
    pub suite: Option<String>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Betti number, torsion and generators of H_n.
    Homology {
        #[arg(long)]
        degree: usize,
    },
    /// Evaluate a character on a cycle.
    Eval,
    /// ι(η) for a cochain η.
    Iota {
        #[arg(long)]
        cochain: PathBuf,
    },
    /// j(u) for a Q/Z cocycle u.
    J {
        #[arg(long)]
        cochain: PathBuf,
    },
    /// Internal product h * f.
    Product {
        #[arg(long)]
        other: String,
    },
    /// External product h × h′ on the staircase product of --complex and --other-complex.
    Xproduct {
        #[arg(long)]
        other: String,
        #[arg(long)]
        other_complex: String,
    },
    /// Fiber integration over a closed fiber: --complex is the base, the
    /// character lives on base × fiber.
    FiberIntegrate {
        #[arg(long)]
        fiber: String,
        /// Fiber chain; defaults to the fundamental cycle of the fiber.
        #[arg(long)]
        fiber_chain: Option<PathBuf>,
    },
    /// Integration over a fiber with boundary.
    BoundaryFiberIntegrate {
        #[arg(long)]
        fiber: String,
        #[arg(long)]
        fiber_chain: Option<PathBuf>,
    },
    /// A section of the character along --map (whose file names its source).
    FindSection,
    /// Holonomy along --map; the cycle defaults to the fundamental cycle of its source.
    Holonomy,
    /// Run a verification suite.
    Verify {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
        #[arg(long, default_value_t = 8)]
        samples: usize,
    },
}

#[derive(Serialize)]
pub struct Report {
    pub command: String,
    pub inputs_digest: String,
    pub result: Value,
}

/// How a run ended short of success.
#[derive(Debug)]
pub enum Failure {
    /// Exit 1, with a report.
    Check(Value),
    /// Exit 2.
    Input(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Input(e.to_string())
    }
}

type Outcome = std::result::Result<Value, Failure>;

/// Collects the bytes of every input so the report can carry their digest.
#[derive(Default)]
struct Inputs {
    parts: Vec<(String, Vec<u8>)>,
}

impl Inputs {
    fn read(&mut self, label: &str, path: &Path) -> std::result::Result<String, Failure> {
        let text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
        self.parts.push((label.to_string(), text.as_bytes().to_vec()));
        Ok(text)
    }

    fn note(&mut self, label: &str, value: &str) {
        self.parts.push((label.to_string(), value.as_bytes().to_vec()));
    }

    fn digest(&self) -> String {
        let mut h = Sha256::new();
        for (label, bytes) in &self.parts {
            h.update(label.as_bytes());
            h.update([0]);
            h.update((bytes.len() as u64).to_le_bytes());
            h.update(bytes);
        }
        h.finalize().iter().map(|b| format!("{b:02x}")).collect()
    }

    fn complex(&mut self, label: &str, spec: &str) -> std::result::Result<Arc<Complex>, Failure> {
        if let Some(cx) = fixtures::complex_by_name(spec) {
            if !Path::new(spec).exists() {
                self.note(label, spec);
                return Ok(cx);
            }
        }
        let text = self.read(label, Path::new(spec))?;
        Ok(Arc::new(io::parse_complex(&text).map_err(|e| Failure::Input(format!("{spec}: {e}")))?))
    }

    fn character(&mut self, label: &str, spec: &str, cx: &Arc<Complex>) -> std::result::Result<DiffChar, Failure> {
        if !Path::new(spec).exists() {
            if let Some(h) = named_character(spec) {
                if **cx != **h.complex() {
                    return Err(Failure::Input(format!("the named character `{spec}` lives on {}", h.complex().name())));
                }
                self.note(label, spec);
                return Ok(DiffChar::new(cx.clone(), h.curvature().clone(), h.lift().clone())?);
            }
        }
        let text = self.read(label, Path::new(spec))?;
        io::parse::<CharacterFile>(&text).and_then(|f| f.build(cx.clone())).map_err(|e| Failure::Input(format!("{spec}: {e}")))
    }
}

/// `i` on S1_3, `ixi` on T2_9, `ju` on RP2_6.
fn named_character(name: &str) -> Option<DiffChar> {
    match name {
        "i" => Some(fixtures::winding_character(&fixtures::circle())),
        "ixi" => Some(fixtures::poincare_character(&fixtures::torus())),
        "ju" => Some(fixtures::rp2_flat_character(&fixtures::rp2())),
        _ => None,
    }
}

fn need<'a, T>(v: &'a Option<T>, flag: &str) -> std::result::Result<&'a T, Failure> {
    v.as_ref().ok_or_else(|| Failure::Input(format!("missing --{flag}")))
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Homology { .. } => "homology",
        Command::Eval => "eval",
        Command::Iota { .. } => "iota",
        Command::J { .. } => "j",
        Command::Product { .. } => "product",
        Command::Xproduct { .. } => "xproduct",
        Command::FiberIntegrate { .. } => "fiber-integrate",
        Command::BoundaryFiberIntegrate { .. } => "boundary-fiber-integrate",
        Command::FindSection => "find-section",
        Command::Holonomy => "holonomy",
        Command::Verify { .. } => "verify",
    }
}

fn graded_json(g: &GradedChar) -> Value {
    match g {
        GradedChar::Positive(h) => serde_json::to_value(CharacterFile::of(h)).expect("plain data"),
        GradedChar::Low(l) => json!({
            "degree": l.degree(),
            "cocycle": l.cocycle().map(|c| CochainFile::of(l.complex(), c)),
        }),
    }
}

fn char_json(h: &DiffChar) -> Value {
    serde_json::to_value(CharacterFile::of(h)).expect("plain data")
}

fn fiber_chain(inputs: &mut Inputs, fiber: &Complex, path: &Option<PathBuf>) -> std::result::Result<Chain, Failure> {
    match path {
        Some(p) => {
            let text = inputs.read("fiber-chain", p)?;
            Ok(io::parse::<ChainFile>(&text)?.build(fiber)?)
        }
        // a finite fiber: every point, positively oriented
        None if fiber.dim() == 0 => Ok(Chain::new(0, vec![1.into(); fiber.n_vertices()])),
        None => Ok(fiber.fundamental_cycle()?),
    }
}

fn run_command(cli: &Cli, inputs: &mut Inputs) -> Outcome {
    match &cli.command {
        Command::Homology { degree } => {
            let cx = inputs.complex("complex", need(&cli.complex, "complex")?)?;
            let h = cx.homology(*degree);
            let generators: Vec<Value> = h
                .generators
                .iter()
                .enumerate()
                .map(|(i, g)| {
                    json!({
                        "order": h.order(i).map_or("infinite".to_string(), |d| d.to_string()),
                        "cycle": ChainFile::of(&cx, &Chain::new(*degree, g.clone())),
                    })
                })
                .collect();
            Ok(json!({
                "complex": cx.name(),
                "degree": degree,
                "group": h.to_string(),
                "betti": h.betti,
                "torsion": h.torsion.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                "generators": generators,
            }))
        }
        Command::Eval => {
            let cx = inputs.complex("complex", need(&cli.complex, "complex")?)?;
            let h = inputs.character("character", need(&cli.character, "character")?, &cx)?;
            let text = inputs.read("chain", need(&cli.chain, "chain")?)?;
            let z = io::parse::<ChainFile>(&text)?.build(&cx)?;
            if z.degree() + 1 != h.degree() {
                return Err(Failure::Input(format!("a degree-{} character evaluates {}-cycles, not {}-chains", h.degree(), h.degree() - 1, z.degree())));
            }
            if !cx.is_cycle(&z) {
                let b = cx.boundary(&z);
                return Err(Failure::Input(format!("{}; boundary {}", Error::NotACycle, io::to_pretty(&ChainFile::of(&cx, &b)).replace('\n', " "))));
            }
            Ok(json!({ "value": h.evaluate(&z)?.to_string() }))
        }
        Command::Iota { cochain } => {
            let cx = inputs.complex("complex", need(&cli.complex, "complex")?)?;
            let text = inputs.read("cochain", cochain)?;
            let eta = io::parse::<CochainFile>(&text)?.build(&cx)?;
            Ok(char_json(&DiffChar::iota(cx, &eta)))
        }
        Command::J { cochain } => {
            let cx = inputs.complex("complex", need(&cli.complex, "complex")?)?;
            let text = inputs.read("cochain", cochain)?;
            let u = io::parse::<CochainFile>(&text)?.build(&cx)?;
            Ok(char_json(&DiffChar::j(&FlatClass::new(cx, u)?)))
        }
        Command::Product { other } => {
            let cx = inputs.complex("complex", need(&cli.complex, "complex")?)?;
            let h = inputs.character("character", need(&cli.character, "character")?, &cx)?;
            let f = inputs.character("other", other, &cx)?;
            Ok(char_json(&internal_product(&h, &f)?))
        }
        Command::Xproduct { other, other_complex } => {
            let cx = inputs.complex("complex", need(&cli.complex, "complex")?)?;
            let cy = inputs.complex("other-complex", other_complex)?;
            let h = inputs.character("character", need(&cli.character, "character")?, &cx)?;
            let f = inputs.character("other", other, &cy)?;
            let prod = ProductComplex::new(cx, cy);
            Ok(json!({
                "complex": ComplexFile::of(prod.complex()),
                "character": char_json(&external_product(&prod, &h, &f)?),
            }))
        }
        Command::FiberIntegrate { fiber, fiber_chain: fc } => {
            let x = inputs.complex("complex", need(&cli.complex, "complex")?)?;
            let f = inputs.complex("fiber", fiber)?;
            let prod = ProductComplex::new(x, f.clone());
            let cf = fiber_chain(inputs, &f, fc)?;
            let h = inputs.character("character", need(&cli.character, "character")?, prod.complex())?;
            let t = TransferData::product(&prod, &cf)?;
            Ok(graded_json(&fiber_integrate(&h, &t)?))
        }
        Command::BoundaryFiberIntegrate { fiber, fiber_chain: fc } => {
            let x = inputs.complex("complex", need(&cli.complex, "complex")?)?;
            let f = inputs.complex("fiber", fiber)?;
            let prod = ProductComplex::new(x, f.clone());
            let cf = fiber_chain(inputs, &f, fc)?;
            let h = inputs.character("character", need(&cli.character, "character")?, prod.complex())?;
            let out = boundary_fiber_integrate(&h, &prod, &cf)?;
            let agree = out.boundary.equals(&out.predicted);
            let result = json!({
                "boundary": char_json(&out.boundary),
                "predicted": char_json(&out.predicted),
                "relative": RelCharFile::of(&out.relative),
                "agree": agree,
            });
            if agree {
                Ok(result)
            } else {
                Err(Failure::Check(result))
            }
        }
        Command::FindSection => {
            let x = inputs.complex("complex", need(&cli.complex, "complex")?)?;
            let text = inputs.read("map", need(&cli.map, "map")?)?;
            let phi = io::parse::<MapFile>(&text)?.build(None, Some(x.clone()))?;
            let h = inputs.character("character", need(&cli.character, "character")?, &x)?;
            let cone = Arc::new(MappingCone::new(phi));
            match find_section(&cone, &h) {
                Ok(f) => Ok(json!({ "section": RelCharFile::of(&f) })),
                Err(Error::NoSection { witness }) => Err(Failure::Check(json!({ "section": null, "obstruction": witness }))),
                Err(e) => Err(e.into()),
            }
        }
        Command::Holonomy => {
            let x = inputs.complex("complex", need(&cli.complex, "complex")?)?;
            let text = inputs.read("map", need(&cli.map, "map")?)?;
            let phi = io::parse::<MapFile>(&text)?.build(None, Some(x.clone()))?;
            let h = inputs.character("character", need(&cli.character, "character")?, &x)?;
            let c = match &cli.chain {
                Some(p) => {
                    let text = inputs.read("chain", p)?;
                    io::parse::<ChainFile>(&text)?.build(phi.source())?
                }
                None => phi.source().fundamental_cycle()?,
            };
            Ok(json!({ "holonomy": holonomy(&h, &phi, &c)?.to_string() }))
        }
        Command::Verify { seed, samples } => {
            let suite = need(&cli.suite, "suite")?;
            inputs.note("suite", suite);
            inputs.note("seed", &seed.to_string());
            inputs.note("samples", &samples.to_string());
            let names: Vec<&str> = if suite == "all" { verify::SUITES.to_vec() } else { vec![suite.as_str()] };
            let mut reports = Vec::new();
            for name in names {
                reports.push(verify::run_suite(name, &SuiteOptions { seed: *seed, samples: *samples })?);
            }
            let passed = reports.iter().all(|r| r.passed());
            let result = json!({ "passed": passed, "suites": reports });
            if passed {
                Ok(result)
            } else {
                Err(Failure::Check(result))
            }
        }
    }
}

/// Runs the CLI on `args` and returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let mut inputs = Inputs::default();
    let outcome = run_command(&cli, &mut inputs);
    let command = command_name(&cli.command).to_string();
    let (code, result) = match outcome {
        Ok(v) => (0, v),
        Err(Failure::Check(v)) => (1, v),
        Err(Failure::Input(msg)) => {
            let report = json!({ "command": command, "error": msg });
            eprintln!("{}", io::to_pretty(&report));
            return 2;
        }
    };
    let report = Report { command, inputs_digest: inputs.digest(), result };
    let text = io::to_pretty(&report) + "\n";
    match &cli.out {
        Some(p) => {
            if let Err(e) = std::fs::write(p, &text) {
                eprintln!("{}: {e}", p.display());
                return 2;
            }
        }
        None => print!("{text}"),
    }
    code
}
