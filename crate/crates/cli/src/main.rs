//! `mst3`: key generation, file encryption and decryption, the worked
//! example and the toy-scale attacks.
//!
//! Exit codes: 0 success, 1 verification or decryption failure, 2 usage,
//! 3 file or format error.

mod demo;
mod files;

use std::fmt;
use std::io;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use mst3_ree::attack::{self, AttackError, AttackKind, AttackReport};
use mst3_ree::codec::BlockCodec;
use mst3_ree::format::{self, CiphertextFile};
use mst3_ree::profile::SizingReport;
use mst3_ree::scheme::{decrypt_batch, encrypt_batch, keygen_with};
use mst3_ree::{Execution, Profile, Randomness};
use num_bigint::BigUint;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

#[derive(Debug)]
pub enum CliError {
    /// Decryption, verification or recovery failed.
    Failed(String),
    Usage(String),
    Format(String),
}

impl CliError {
    fn io(path: &Path, e: io::Error) -> Self {
        CliError::Format(format!("{}: {e}", path.display()))
    }

    fn format(path: &Path, e: impl fmt::Display) -> Self {
        CliError::Format(format!("{}: {e}", path.display()))
    }

    fn code(&self) -> u8 {
        match self {
            CliError::Failed(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Format(_) => 3,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Failed(m) | CliError::Usage(m) | CliError::Format(m) => f.write_str(m),
        }
    }
}

#[derive(Parser)]
#[command(
    name = "mst3",
    version,
    about = "MST3 encryption over the Sylow 3-subgroup of the small Ree group"
)]
struct Cli {
    /// Run batch work on the calling thread only.
    #[arg(long, global = true)]
    sequential: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Generate <out>.pub and <out>.sec.
    Keygen(KeygenArgs),
    /// Encrypt a file, one fresh randomness per block.
    Encrypt(EncryptArgs),
    /// Decrypt a ciphertext file.
    Decrypt(DecryptArgs),
    /// Replay the GF(3^5) worked example.
    Demo(DemoArgs),
    /// Run an exhaustive attack on a ciphertext (toy sizes only).
    Attack(AttackArgs),
    /// Print key-size arithmetic for a profile and for the quoted 128-bit sizing.
    Sizing {
        #[arg(long, default_value = "large")]
        profile: Profile,
    },
}

#[derive(Args)]
struct KeygenArgs {
    #[arg(long, value_parser = parse_profile)]
    profile: Profile,
    /// Up to 32 bytes of hex; zero-padded on the right. Random when absent.
    #[arg(long, env = "MST3_SEED")]
    seed: Option<String>,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct EncryptArgs {
    #[arg(long = "pub")]
    public: PathBuf,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Fixed R1 for every block; needs --insecure-test.
    #[arg(long, requires = "insecure_test")]
    r1: Option<BigUint>,
    /// Fixed R2 for every block; needs --insecure-test.
    #[arg(long, requires = "insecure_test")]
    r2: Option<BigUint>,
    /// Allow fixed randomness. Equal blocks then encrypt identically.
    #[arg(long)]
    insecure_test: bool,
}

#[derive(Args)]
struct DecryptArgs {
    #[arg(long)]
    sec: PathBuf,
    #[arg(long = "in")]
    input: PathBuf,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct DemoArgs {
    #[arg(long, required = true)]
    paper_example: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum AttackChoice {
    Pair,
    Split,
    Tkey,
}

#[derive(Args)]
struct AttackArgs {
    #[arg(value_enum)]
    kind: AttackChoice,
    #[arg(long = "pub")]
    public: Option<PathBuf>,
    /// Secret key file supplying beta for `tkey`; its translations are not used.
    #[arg(long)]
    sec: Option<PathBuf>,
    #[arg(long)]
    ct: PathBuf,
    /// Write the reports as CSV to this path.
    #[arg(long)]
    csv: Option<PathBuf>,
}

fn parse_profile(s: &str) -> Result<Profile, String> {
    s.parse()
}

fn parse_seed(hex_seed: &str) -> Result<[u8; 32], CliError> {
    let bytes = hex::decode(hex_seed.trim())
        .map_err(|e| CliError::Usage(format!("seed is not valid hex: {e}")))?;
    if bytes.len() > 32 {
        return Err(CliError::Usage("seed is longer than 32 bytes".into()));
    }
    let mut seed = [0u8; 32];
    seed[..bytes.len()].copy_from_slice(&bytes);
    Ok(seed)
}

fn with_ext(base: &Path, ext: &str) -> PathBuf {
    let mut s = base.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

fn keygen(args: KeygenArgs, exec: Execution) -> Result<(), CliError> {
    let mut rng = match &args.seed {
        Some(s) => ChaCha20Rng::from_seed(parse_seed(s)?),
        None => ChaCha20Rng::from_os_rng(),
    };
    let params = args.profile.params();
    let (pk, sk) = keygen_with(&params, &mut rng, exec);
    let pub_path = with_ext(&args.out, "pub");
    let sec_path = with_ext(&args.out, "sec");
    files::write_atomic(&pub_path, format::write_public(&pk).as_bytes())?;
    files::write_atomic(&sec_path, format::write_secret(&pk, &sk).as_bytes())?;
    println!("wrote {} and {}", pub_path.display(), sec_path.display());
    Ok(())
}

fn encrypt(args: EncryptArgs, exec: Execution) -> Result<(), CliError> {
    let pk = files::load_public(&args.public)?;
    let payload = files::read_bytes(&args.input)?;
    let codec = BlockCodec::new(pk.params.group.field().clone());
    let blocks = codec.encode(&payload);
    let fixed = match (args.r1, args.r2) {
        (Some(r1), Some(r2)) => Some(Randomness::new(r1, r2)),
        (None, None) => None,
        _ => {
            return Err(CliError::Usage(
                "--r1 and --r2 must be given together".into(),
            ))
        }
    };
    let mut rng = ChaCha20Rng::from_os_rng();
    let items: Vec<_> = blocks
        .into_iter()
        .map(|m| {
            let r = fixed
                .clone()
                .unwrap_or_else(|| Randomness::sample(&pk.params, &mut rng));
            (m, r)
        })
        .collect();
    let cts = encrypt_batch(&pk, &items, exec).map_err(|e| CliError::Usage(e.to_string()))?;
    let file = CiphertextFile {
        field: pk.params.group.field().clone(),
        blocks: cts,
    };
    files::write_atomic(&args.out, file.write().as_bytes())
}

fn decrypt(args: DecryptArgs, exec: Execution) -> Result<(), CliError> {
    let (pk, sk) = files::load_secret(&args.sec)?;
    let file = files::load_ciphertext(&args.input, &pk)?;
    let blocks = decrypt_batch(&pk, &sk, &file.blocks, exec)
        .map_err(|e| CliError::Failed(format!("decryption failed: {e}")))?;
    let codec = BlockCodec::new(pk.params.group.field().clone());
    let payload = codec
        .decode(&blocks)
        .map_err(|e| CliError::Failed(format!("decryption failed: {e}")))?;
    files::write_atomic(&args.out, &payload)
}

fn demo(_: DemoArgs) -> Result<(), CliError> {
    let mismatches = demo::run(io::stdout().lock()).map_err(|e| CliError::Format(e.to_string()))?;
    if mismatches > 0 {
        return Err(CliError::Failed(format!(
            "{mismatches} values differ from the worked example"
        )));
    }
    Ok(())
}

fn run_attack(args: AttackArgs, exec: Execution) -> Result<(), CliError> {
    let secret = args.sec.as_deref().map(files::load_secret).transpose()?;
    let pk = match (&args.public, &secret) {
        (Some(path), _) => files::load_public(path)?,
        (None, Some((pk, _))) => pk.clone(),
        (None, None) => return Err(CliError::Usage("--pub or --sec is required".into())),
    };
    let file = files::load_ciphertext(&args.ct, &pk)?;
    let mut reports: Vec<AttackReport> = Vec::with_capacity(file.blocks.len());
    for ct in &file.blocks {
        let report = match args.kind {
            AttackChoice::Pair => attack::brute_force_r_pair_with(&pk, ct, exec),
            AttackChoice::Split => attack::brute_force_split_with(&pk, ct, exec),
            AttackChoice::Tkey => {
                let (_, sk) = secret
                    .as_ref()
                    .ok_or_else(|| CliError::Usage("tkey needs --sec to supply beta".into()))?;
                attack::brute_force_t_with(&pk, &sk.beta1, &sk.beta2, ct, exec)
            }
        };
        let report = report.map_err(|e| match e {
            AttackError::SearchSpaceTooLarge { .. } => CliError::Usage(e.to_string()),
            AttackError::Scheme(e) => CliError::Failed(e.to_string()),
        })?;
        println!("{report}");
        println!();
        reports.push(report);
    }
    if let Some(path) = &args.csv {
        let mut buf = Vec::new();
        attack::write_csv(&mut buf, &reports).map_err(|e| CliError::io(path, e))?;
        files::write_atomic(path, &buf)?;
    }
    let failed = reports.iter().filter(|r| !r.succeeded).count();
    if failed > 0 {
        let kind = reports.first().map_or(AttackKind::Pair, |r| r.attack);
        return Err(CliError::Failed(format!(
            "{kind}: {failed} of {} blocks not recovered",
            reports.len()
        )));
    }
    Ok(())
}

fn sizing(profile: Profile) -> Result<(), CliError> {
    let params = profile.params();
    println!("profile {profile}: GF(3^{})", params.degree());
    println!("type1 {:?}", params.type1.radices());
    println!("type2 {:?}", params.type2.radices());
    for (label, value) in SizingReport::for_params(&params) {
        println!("{label}: {value}");
    }
    println!();
    println!("quoted 128-bit sizing (q = 3^80, r = 3^5, s = 8):");
    print!("{}", SizingReport::quoted_128_bit());
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    };
    let result = match cli.command {
        Command::Keygen(a) => keygen(a, exec),
        Command::Encrypt(a) => encrypt(a, exec),
        Command::Decrypt(a) => decrypt(a, exec),
        Command::Demo(a) => demo(a),
        Command::Attack(a) => run_attack(a, exec),
        Command::Sizing { profile } => sizing(profile),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("mst3: {e}");
            ExitCode::from(e.code())
        }
    }
}
