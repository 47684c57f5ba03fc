use std::fmt;
use std::fs;
use std::io::{self, Read, Write};
use std::path::Path;
use std::process::ExitCode;
use std::sync::Arc;

use modelcat::enumerate::{
    count_models, count_premodels, count_saturated_chain, count_saturated_grid, count_transfer,
    enumerate_models, oracle_models, oracle_wfs, shapiro_table, MODEL_ORACLE_CAP, WFS_ORACLE_CAP,
};
use modelcat::io::{export_model, graph_dot, model_to_json, ExportConfig, Format, ModelJson};
use modelcat::localize::{localization_graph, zigzag_from_trivial};
use modelcat::model::{homotopy_category, verify_model};
use modelcat::paths::{crossings, model_to_path, path_to_model, phi, phi_inverse};
use modelcat::transfer::{enumerate_transfer_systems, wfs_from_transfer};
use modelcat::{Endo, FiniteLattice, LatticePath, ModelStructure};

use crate::{Cli, Command, Count, Example, OutputFormat};

const WORKED_PATH: &str = "NNENEEENENNNEE";

#[derive(Debug)]
pub enum CliError {
    /// Bad arguments or unparseable input.
    Usage(String),
    /// Well-formed input that fails a check.
    Failed(String),
    Io(io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Failed(_) | CliError::Io(_) => ExitCode::from(1),
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Usage(s) | CliError::Failed(s) => f.write_str(s),
            CliError::Io(e) => write!(f, "{e}"),
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

fn usage(msg: impl Into<String>) -> CliError {
    CliError::Usage(msg.into())
}

fn failed(msg: impl fmt::Display) -> CliError {
    CliError::Failed(msg.to_string())
}

fn need_n(cli: &Cli) -> Result<usize, CliError> {
    cli.n.ok_or_else(|| usage("--n is required"))
}

fn format_or(cli: &Cli, default: OutputFormat, allowed: &[OutputFormat]) -> Result<OutputFormat, CliError> {
    let f = cli.format.unwrap_or(default);
    if allowed.contains(&f) {
        Ok(f)
    } else {
        Err(usage(format!("--format {f:?} is not supported here").to_lowercase()))
    }
}

fn read_input(path: &Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
    }
}

fn parse_json(path: &Path) -> Result<ModelJson, CliError> {
    let text = read_input(path)?;
    serde_json::from_str(&text).map_err(|e| usage(format!("{}: {e}", path.display())))
}

/// Parses and verifies; malformed documents are usage errors, axiom failures are not.
fn load_model(path: &Path) -> Result<ModelStructure, CliError> {
    let raw = parse_json(path)?.classes().map_err(|e| usage(e.to_string()))?;
    ModelStructure::new(raw.lattice, raw.w, raw.c, raw.f).map_err(failed)
}

fn export_config(format: OutputFormat, mark_classes: bool) -> ExportConfig {
    ExportConfig {
        format: match format {
            OutputFormat::Tikz => Format::Tikz,
            OutputFormat::Json => Format::Json,
            _ => Format::Dot,
        },
        mark_classes,
        ..ExportConfig::default()
    }
}

pub fn run(cli: &Cli, out: &mut impl Write) -> Result<ExitCode, CliError> {
    match &cli.command {
        Command::Count { what, grid } => count(cli, *what, *grid, out),
        Command::Enumerate => enumerate(cli, out),
        Command::Verify { input } => verify(input, out),
        Command::Triangle => {
            format_or(cli, OutputFormat::Tsv, &[OutputFormat::Tsv])?;
            write!(out, "{}", shapiro_table(need_n(cli)?))?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Bijection { check, example } => bijection(cli, *check, *example, out),
        Command::Localize { target, all } => localize(cli, target.as_deref(), *all, out),
        Command::Graph { quillen } => {
            format_or(cli, OutputFormat::Dot, &[OutputFormat::Dot])?;
            let g = localization_graph(need_n(cli)?).map_err(failed)?;
            write!(out, "{}", graph_dot(&g, *quillen).map_err(failed)?)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Export { input, mark_classes } => export(cli, input.as_deref(), *mark_classes, out),
        Command::Oracle { grid, wfs } => oracle(cli, *grid, *wfs, out),
    }
}

fn count(cli: &Cli, what: Count, grid: Option<usize>, out: &mut impl Write) -> Result<ExitCode, CliError> {
    let n = need_n(cli)? as u64;
    let value = match (what, grid) {
        (Count::Models, None) => count_models(n),
        (Count::Premodels, None) => count_premodels(n),
        (Count::Transfer, None) => count_transfer(n),
        (Count::Saturated, None) => count_saturated_chain(n),
        (Count::Saturated, Some(m)) => count_saturated_grid(m as u64, n),
        (_, Some(_)) => return Err(usage("--grid only applies to --what saturated")),
    };
    writeln!(out, "{value}")?;
    Ok(ExitCode::SUCCESS)
}

fn enumerate(cli: &Cli, out: &mut impl Write) -> Result<ExitCode, CliError> {
    let n = need_n(cli)?;
    let format = format_or(
        cli,
        OutputFormat::Json,
        &[OutputFormat::Json, OutputFormat::Dot, OutputFormat::Tikz],
    )?;
    for m in enumerate_models(n) {
        match format {
            OutputFormat::Json => {
                writeln!(out, "{}", serde_json::to_string(&model_to_json(&m)).expect("serializable"))?
            }
            f => writeln!(out, "{}", export_model(&m, &export_config(f, false)))?,
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn classify(m: &ModelStructure) -> &'static str {
    if m.is_trivial() {
        "trivial"
    } else if m.is_contractible() {
        "contractible"
    } else {
        "other"
    }
}

fn verify(input: &Path, out: &mut impl Write) -> Result<ExitCode, CliError> {
    let raw = parse_json(input)?.classes().map_err(|e| usage(e.to_string()))?;
    if let Err(v) = verify_model(&raw.lattice, &raw.w, &raw.c, &raw.f) {
        writeln!(out, "INVALID")?;
        writeln!(out, "axiom: {}", v.axiom())?;
        let witness: Vec<String> = v.witness_arrows().iter().map(|a| a.to_string()).collect();
        writeln!(out, "witness: {}", witness.join(" "))?;
        writeln!(out, "detail: {v}")?;
        return Ok(ExitCode::from(1));
    }
    let m = ModelStructure::new(raw.lattice, raw.w, raw.c, raw.f).map_err(failed)?;
    writeln!(out, "VALID")?;
    writeln!(out, "class: {}", classify(&m))?;
    if let Ok(ho) = homotopy_category(&m) {
        writeln!(out, "homotopy: [{}]", ho.k)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn bijection(cli: &Cli, check: bool, example: Option<Example>, out: &mut impl Write) -> Result<ExitCode, CliError> {
    if let Some(Example::Worked) = example {
        let path: LatticePath = WORKED_PATH.parse().expect("valid path");
        if cli.n.is_some_and(|n| n != path.n()) {
            return Err(usage(format!("the worked example lives on [{}]", path.n())));
        }
        let m = path_to_model(&path).map_err(failed)?;
        writeln!(out, "path: {path}")?;
        writeln!(out, "crossings: {}", crossings(&path))?;
        writeln!(out, "endo: {}", phi(&m).map_err(failed)?)?;
        return Ok(ExitCode::SUCCESS);
    }
    let n = need_n(cli)?;
    if check {
        return bijection_check(n, out);
    }
    for m in enumerate_models(n) {
        let path = model_to_path(&m).map_err(failed)?;
        writeln!(out, "{path}\t{}", phi(&m).map_err(failed)?)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn bijection_check(n: usize, out: &mut impl Write) -> Result<ExitCode, CliError> {
    let models: Vec<ModelStructure> = enumerate_models(n).collect();
    let mut images = Vec::with_capacity(models.len());
    for m in &models {
        let e = phi(m).map_err(failed)?;
        if &phi_inverse(&e).map_err(failed)? != m {
            return Err(failed(format!("inverse does not recover the structure sent to {e}")));
        }
        images.push(e);
    }
    let endos = Endo::all(n);
    images.sort_by(|a, b| a.values().cmp(b.values()));
    images.dedup();
    if images.len() != models.len() {
        return Err(failed("two structures share an endomorphism"));
    }
    if images.len() != endos.len() {
        return Err(failed(format!("{} endomorphisms but {} images", endos.len(), images.len())));
    }
    for e in &endos {
        let m = phi_inverse(e).map_err(failed)?;
        if &phi(&m).map_err(failed)? != e {
            return Err(failed(format!("{e} is not fixed by the round trip")));
        }
    }
    writeln!(out, "[{n}]: {} structures, {} endomorphisms, bijective", models.len(), endos.len())?;
    Ok(ExitCode::SUCCESS)
}

fn localize(cli: &Cli, target: Option<&Path>, all: bool, out: &mut impl Write) -> Result<ExitCode, CliError> {
    if let Some(path) = target {
        let m = load_model(path)?;
        if cli.n.is_some_and(|n| m.carrier().as_chain() != Some(n)) {
            return Err(usage("--n does not match the target"));
        }
        writeln!(out, "{}", zigzag_from_trivial(&m).map_err(failed)?)?;
        return Ok(ExitCode::SUCCESS);
    }
    if !all {
        return Err(usage("pass --target <json> or --all"));
    }
    for m in enumerate_models(need_n(cli)?) {
        let word = zigzag_from_trivial(&m).map_err(failed)?;
        writeln!(out, "{}\t{word}", phi(&m).map_err(failed)?)?;
    }
    Ok(ExitCode::SUCCESS)
}

fn extension(format: OutputFormat) -> &'static str {
    match format {
        OutputFormat::Tikz => "tex",
        OutputFormat::Json => "json",
        _ => "dot",
    }
}

fn export(cli: &Cli, input: Option<&Path>, mark_classes: bool, out: &mut impl Write) -> Result<ExitCode, CliError> {
    let format = format_or(
        cli,
        OutputFormat::Dot,
        &[OutputFormat::Dot, OutputFormat::Tikz, OutputFormat::Json],
    )?;
    let cfg = export_config(format, mark_classes);
    if let Some(path) = input {
        let text = export_model(&load_model(path)?, &cfg);
        match &cli.out {
            Some(dir) => fs::write(dir, text)?,
            None => write!(out, "{text}")?,
        }
        return Ok(ExitCode::SUCCESS);
    }
    let n = need_n(cli)?;
    let dir = cli.out.as_ref().ok_or_else(|| usage("--out <dir> is required without --input"))?;
    fs::create_dir_all(dir)?;
    let mut written = 0;
    for (i, m) in enumerate_models(n).enumerate() {
        let name = format!("model_{n}_{i:05}.{}", extension(format));
        fs::write(dir.join(name), export_model(&m, &cfg))?;
        written += 1;
    }
    writeln!(out, "{written}")?;
    Ok(ExitCode::SUCCESS)
}

fn oracle(cli: &Cli, grid: Option<usize>, wfs: bool, out: &mut impl Write) -> Result<ExitCode, CliError> {
    let n = need_n(cli)?;
    let l: Arc<FiniteLattice> = match grid {
        Some(m) => FiniteLattice::grid(m, n).into_shared(),
        None => FiniteLattice::chain(n).into_shared(),
    };
    if wfs {
        let cap = cli.cap.unwrap_or(WFS_ORACLE_CAP);
        let scanned = oracle_wfs(&l, cap).map_err(failed)?;
        let expected: Vec<_> = enumerate_transfer_systems(&l)
            .iter()
            .map(|r| wfs_from_transfer(&l, r))
            .collect();
        return report(out, scanned.len(), same_sets(&scanned, &expected));
    }
    let cap = cli.cap.unwrap_or(MODEL_ORACLE_CAP);
    let scanned = oracle_models(&l, cap).map_err(failed)?;
    if grid.is_some() {
        let ok = scanned.iter().all(|m| m.verify().is_ok());
        return report(out, scanned.len(), ok);
    }
    let expected: Vec<ModelStructure> = enumerate_models(n).collect();
    report(out, scanned.len(), same_sets(&scanned, &expected))
}

fn same_sets<T: PartialEq>(a: &[T], b: &[T]) -> bool {
    a.len() == b.len() && a.iter().all(|x| b.contains(x))
}

fn report(out: &mut impl Write, found: usize, agrees: bool) -> Result<ExitCode, CliError> {
    writeln!(out, "{found}")?;
    if agrees {
        Ok(ExitCode::SUCCESS)
    } else {
        Err(failed("scan disagrees with the enumeration"))
    }
}
