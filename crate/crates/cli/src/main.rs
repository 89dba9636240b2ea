//! `duncode`: encode, decode, inspect and measure Duncode streams.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use duncode_eval::{Format, DEFAULT_MAX_BYTES, DEFAULT_SEED};

#[derive(Parser, Debug)]
#[command(name = "duncode", version, about = "Self-synchronizing compact Unicode encoding")]
pub struct Cli {
    /// Table file to use instead of the bundled default tables.
    #[arg(long, global = true, value_name = "PATH")]
    pub tables: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Args, Debug)]
pub struct Io {
    /// Input file; stdin when omitted or "-".
    pub input: Option<PathBuf>,
    /// Output file; stdout when omitted.
    #[arg(short, long, value_name = "PATH")]
    pub output: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// UTF-8 text in, Duncode bytes out.
    Encode(Io),
    /// Duncode bytes in, UTF-8 text out.
    Decode {
        #[command(flatten)]
        io: Io,
        /// Fail on the first malformed unit instead of writing U+FFFD.
        #[arg(long)]
        strict: bool,
        /// Also reject well-formed input the encoder would not produce.
        /// Reads the whole input before writing anything.
        #[arg(long)]
        canonical: bool,
    },
    /// One line per unit: offset, zone, alphabet, indexes, characters.
    Inspect(Io),
    /// Size report for text files, wiki dumps or synthetic corpora.
    Bench {
        /// Plain text files, or MediaWiki XML dumps (by .xml extension).
        paths: Vec<PathBuf>,
        /// Add the built-in synthetic language profiles.
        #[arg(long)]
        synthetic: bool,
        /// Read every path as a MediaWiki XML dump.
        #[arg(long)]
        wikidump: bool,
        #[arg(long, default_value = "csv", value_name = "csv|markdown")]
        format: Format,
        /// Per-source size cap in bytes.
        #[arg(long, default_value_t = DEFAULT_MAX_BYTES as u64, value_parser = clap::value_parser!(u64).range(1..))]
        max_bytes: u64,
        /// Seed for the synthetic corpora.
        #[arg(long, default_value_t = DEFAULT_SEED)]
        seed: u64,
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Dump or validate table files.
    #[command(subcommand)]
    Tables(TablesCommand),
}

#[derive(Subcommand, Debug)]
pub enum TablesCommand {
    /// Write the active tables in table-file form.
    Dump {
        #[arg(short, long, value_name = "PATH")]
        output: Option<PathBuf>,
    },
    /// Check a table file and summarise it.
    Validate { path: PathBuf },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            eprintln!("duncode: {:#}", failure.error);
            ExitCode::from(failure.code)
        }
    }
}
