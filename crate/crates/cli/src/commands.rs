use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use gapsub::{
    catalog, central_patch, complexity_profile, derive_block_substitution, fixed_prefix,
    predicted_patch_length, right_special_tree, tm_complexity_closed_form, tm_special_closed_form,
    validate_substitution, verify_complexity_shift, Error, ErrorKind, GappedSubstitution, Letter,
    SubstitutionSpec,
};
use thiserror::Error;

use crate::table::{csv_header, csv_record, run_table, write_table_csv};

/// Exit status for a shift check that ran but did not hold.
pub const EXIT_CHECK_FAILED: i32 = 1;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("{path}: {message}")]
    Io { path: PathBuf, message: String },
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    fn io(path: &Path, e: impl std::fmt::Display) -> Self {
        CliError::Io {
            path: path.to_path_buf(),
            message: e.to_string(),
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) => match e.kind() {
                ErrorKind::Validation => 2,
                ErrorKind::Stabilization => 3,
                ErrorKind::Overflow => 4,
            },
            CliError::Io { .. } => 1,
            CliError::Failed(_) => EXIT_CHECK_FAILED,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            CliError::Core(e) => match e.kind() {
                ErrorKind::Validation => "validation",
                ErrorKind::Stabilization => "stabilization",
                ErrorKind::Overflow => "overflow",
            },
            CliError::Io { .. } => "io",
            CliError::Failed(_) => "check-failed",
        }
    }

    /// Single line: `error kind=<kind>: <message>`.
    pub fn one_line(&self) -> String {
        format!("error kind={}: {}", self.kind(), self.to_string().replace('\n', " "))
    }
}

#[derive(Debug, Parser)]
#[command(name = "gapsub", version, about = "Analyse gapped digit substitutions")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check a substitution file and list its fixed seeds.
    Validate {
        #[arg(env = "GAPSUB_SPEC")]
        spec: PathBuf,
    },
    /// Print the level-k supertile of a seed.
    Supertile {
        #[arg(env = "GAPSUB_SPEC")]
        spec: PathBuf,
        #[arg(long, env = "GAPSUB_SEED")]
        seed: Option<String>,
        #[arg(long, env = "GAPSUB_LEVEL")]
        level: u32,
        #[arg(long, env = "GAPSUB_JSON")]
        json: bool,
    },
    /// Print the central patch at a level.
    Patch {
        #[arg(env = "GAPSUB_SPEC")]
        spec: PathBuf,
        #[arg(long, env = "GAPSUB_LEVEL")]
        level: u32,
        #[arg(long, env = "GAPSUB_SEED")]
        seed: Option<String>,
    },
    /// Print a fixed-point prefix of at least the given length.
    Prefix {
        #[arg(env = "GAPSUB_SPEC")]
        spec: PathBuf,
        #[arg(long, env = "GAPSUB_MIN_LEN")]
        min_len: usize,
        #[arg(long, env = "GAPSUB_SEED")]
        seed: Option<String>,
    },
    /// Complexity p(n) and right special counts s(n).
    Complexity {
        #[arg(env = "GAPSUB_SPEC")]
        spec: PathBuf,
        #[arg(long, env = "GAPSUB_MAX_N")]
        max_n: usize,
        #[arg(long, env = "GAPSUB_CSV")]
        csv: Option<PathBuf>,
        #[arg(long, env = "GAPSUB_SEED")]
        seed: Option<String>,
    },
    /// Right special words and their tree.
    Special {
        #[arg(env = "GAPSUB_SPEC")]
        spec: PathBuf,
        #[arg(long, env = "GAPSUB_MAX_N")]
        max_n: usize,
        #[arg(long, env = "GAPSUB_TREE")]
        tree: Option<PathBuf>,
        #[arg(long, env = "GAPSUB_SEED")]
        seed: Option<String>,
    },
    /// Higher-block recoding and the derived constant-length substitution.
    Recode {
        #[arg(env = "GAPSUB_SPEC")]
        spec: PathBuf,
        #[arg(long, env = "GAPSUB_WINDOW")]
        window: usize,
        #[arg(long, env = "GAPSUB_EMIT_RULES")]
        emit_rules: Option<PathBuf>,
        #[arg(long, env = "GAPSUB_SEED")]
        seed: Option<String>,
    },
    /// Check p_recoded(n) = p(n + N - 1).
    ShiftCheck {
        #[arg(env = "GAPSUB_SPEC")]
        spec: PathBuf,
        #[arg(long, env = "GAPSUB_WINDOW")]
        window: usize,
        #[arg(long, env = "GAPSUB_MAX_N")]
        max_n: usize,
        #[arg(long, env = "GAPSUB_SEED")]
        seed: Option<String>,
    },
    /// Recompute the binary Q = 3 complexity table.
    Table {
        #[arg(long, env = "GAPSUB_OUT")]
        out: Option<PathBuf>,
    },
    /// Thue-Morse complexity against its closed forms.
    TmReference {
        #[arg(long, env = "GAPSUB_MAX_N")]
        max_n: usize,
    },
}

pub fn load_spec(path: &Path) -> Result<GappedSubstitution, CliError> {
    let text = fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
    let spec = SubstitutionSpec::from_json(&text)?;
    Ok(GappedSubstitution::from_spec(&spec)?)
}

fn pick_seed(sub: &GappedSubstitution, seed: Option<&str>) -> Result<Letter, CliError> {
    match seed {
        Some(name) => Ok(sub.alphabet().letter(name)?),
        None => sub
            .seeds()
            .first()
            .copied()
            .ok_or_else(|| CliError::Core(Error::NotASeed("(no letter keeps itself at digit 0)".into()))),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

/// Runs a command and returns what it prints on stdout.
pub fn run(cli: Cli) -> Result<String, CliError> {
    let mut out = String::new();
    match cli.command {
        Command::Validate { spec } => {
            let text = fs::read_to_string(&spec).map_err(|e| CliError::io(&spec, e))?;
            let report = validate_substitution(&SubstitutionSpec::from_json(&text)?)?;
            let _ = writeln!(out, "valid");
            let _ = writeln!(out, "seeds: {}", report.seeds.join(" "));
            let _ = writeln!(out, "contiguous: {}", report.contiguous);
        }
        Command::Supertile { spec, seed, level, json } => {
            let sub = load_spec(&spec)?;
            let seed = pick_seed(&sub, seed.as_deref())?;
            let tile = sub.supertile(seed, level)?;
            let al = sub.alphabet();
            if json {
                let cells: Vec<(i64, &str)> = tile.cells().iter().map(|c| (c.position, al.name(c.letter))).collect();
                out = serde_json::to_string(&cells).expect("cells serialize");
                out.push('\n');
            } else {
                for c in tile.cells() {
                    let _ = writeln!(out, "{} {}", c.position, al.name(c.letter));
                }
            }
        }
        Command::Patch { spec, level, seed } => {
            let sub = load_spec(&spec)?;
            let seed = pick_seed(&sub, seed.as_deref())?;
            let patch = central_patch(&sub, seed, level)?;
            let _ = writeln!(out, "start: {}", patch.start);
            let _ = writeln!(out, "length: {}", patch.len());
            if let Ok(expected) = predicted_patch_length(&sub, level) {
                let _ = writeln!(out, "predicted: {expected}");
            }
            let _ = writeln!(out, "word: {}", patch.render(sub.alphabet()));
        }
        Command::Prefix { spec, min_len, seed } => {
            let sub = load_spec(&spec)?;
            let seed = pick_seed(&sub, seed.as_deref())?;
            let prefix = fixed_prefix(&sub, seed, min_len)?;
            let _ = writeln!(out, "start: {}", prefix.start);
            let _ = writeln!(out, "word: {}", prefix.render(sub.alphabet()));
        }
        Command::Complexity { spec, max_n, csv, seed } => {
            let sub = load_spec(&spec)?;
            let seed = pick_seed(&sub, seed.as_deref())?;
            let profile = complexity_profile(&sub, seed, max_n)?;
            let _ = writeln!(out, "n p s");
            for n in 1..=max_n {
                let _ = writeln!(out, "{n} {} {}", profile.p_at(n), profile.s_at(n));
            }
            let _ = writeln!(out, "stabilized at level {}", profile.stabilized_at_level);
            if let Some(path) = csv {
                write_file(&path, &complexity_csv(&sub, &profile.p).map_err(|e| CliError::io(&path, e))?)?;
            }
        }
        Command::Special { spec, max_n, tree, seed } => {
            let sub = load_spec(&spec)?;
            let seed = pick_seed(&sub, seed.as_deref())?;
            let rst = right_special_tree(&sub, seed, max_n)?;
            for (i, count) in rst.counts().iter().enumerate() {
                let words: Vec<String> = rst.nodes_at(i + 1).iter().map(|w| sub.alphabet().render(w)).collect();
                let _ = writeln!(out, "s({}) = {count}: {}", i + 1, words.join(" "));
            }
            if let Some(path) = tree {
                write_file(&path, &rst.to_dot())?;
            }
        }
        Command::Recode { spec, window, emit_rules, seed } => {
            let sub = load_spec(&spec)?;
            let seed = pick_seed(&sub, seed.as_deref())?;
            let block = match derive_block_substitution(&sub, seed, window) {
                Err(e @ Error::Coverage { .. }) => {
                    return Err(CliError::Core(Error::Unsupported(format!("{e}; retry with --window {}", window + 2))))
                }
                other => other?,
            };
            let table = block.table();
            let _ = writeln!(out, "symbols:");
            for (label, w) in table.entries() {
                let _ = writeln!(out, "  {label} = {}", sub.alphabet().render(w));
            }
            let recoded = block.recoding().recoded();
            let shown: Vec<&str> = recoded.letters.iter().take(60).map(|&x| table.label(x)).collect();
            let _ = writeln!(out, "recoded from {}: {}", recoded.start, shown.join(" "));
            let _ = writeln!(out, "rules:");
            for (label, _) in table.entries() {
                let _ = writeln!(out, "  {label} -> {}", block.image_labels(label)?.join(" "));
            }
            if let Some(path) = emit_rules {
                let mut json = block.to_spec().to_json();
                json.push('\n');
                write_file(&path, &json)?;
            }
        }
        Command::ShiftCheck { spec, window, max_n, seed } => {
            let sub = load_spec(&spec)?;
            let seed = pick_seed(&sub, seed.as_deref())?;
            let check = verify_complexity_shift(&sub, seed, window, max_n)?;
            let _ = writeln!(out, "n p(n+{}) p_recoded(n)", window - 1);
            for n in 1..=max_n {
                let _ = writeln!(out, "{n} {} {}", check.original[n - 1], check.recoded[n - 1]);
            }
            let _ = writeln!(out, "holds: {}", check.holds());
            if !check.holds() {
                return Err(CliError::Failed(format!("complexity shift fails for window {window}\n{out}")));
            }
        }
        Command::Table { out: path } => {
            let rows = run_table();
            let mut buf = Vec::new();
            let failures = write_table_csv(&rows, &mut buf).map_err(|e| CliError::io(Path::new("<table>"), e))?;
            let text = String::from_utf8(buf).expect("csv is utf-8");
            match path {
                Some(p) => write_file(&p, &text)?,
                None => out.push_str(&text),
            }
            for f in &failures {
                eprintln!("warning: {f}");
            }
        }
        Command::TmReference { max_n } => {
            let tm = catalog::thue_morse();
            let profile = complexity_profile(&tm, Letter(0), max_n)?;
            let _ = writeln!(out, "n p closed_p s closed_s");
            let mut all = true;
            for n in 1..=max_n {
                let (p, s) = (profile.p_at(n) as u64, profile.s_at(n) as u64);
                let (cp, cs) = (tm_complexity_closed_form(n as u64), tm_special_closed_form(n as u64));
                all &= p == cp && s == cs;
                let _ = writeln!(out, "{n} {p} {cp} {s} {cs}");
            }
            let _ = writeln!(out, "agree: {all}");
            if !all {
                return Err(CliError::Failed(format!("closed forms disagree\n{out}")));
            }
        }
    }
    Ok(out)
}

/// Table layout for binary `{a, b}` rules with `Q = 3`, otherwise one
/// `n,p` record per length.
fn complexity_csv(sub: &GappedSubstitution, p: &[usize]) -> csv::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let al = sub.alphabet();
    let binary_q3 = sub.modulus() == 3 && al.names() == ["a", "b"];
    if binary_q3 && p.len() >= 2 {
        let rule = |name: &str| al.render(sub.rule(al.letter(name).expect("binary")));
        w.write_record(csv_header(p.len()))?;
        w.write_record(csv_record(&rule("a"), &rule("b"), sub.system().digits(), &p[1..]))?;
    } else {
        w.write_record(["n", "p"])?;
        for (i, v) in p.iter().enumerate() {
            w.write_record([(i + 1).to_string(), v.to_string()])?;
        }
    }
    let bytes = w.into_inner().map_err(|e| e.into_error())?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}
