use std::fs::File;
use std::io::{self, BufWriter, Read, Write};
use std::path::Path;

use anyhow::{anyhow, Context};
use duncode::{
    check_canonical, decode_bytes, default_tables, inspect, parse_tables, segment, serialize_tables, DecodeErrorKind,
    Decoder, Encoder, ErrorPolicy, TableSet, UnitReport, Zone,
};
use duncode_eval::{measure_all, measure_corpora, report, synthetic_corpus, CorpusKind, CorpusSpec};

use crate::{Cli, Command, Io, TablesCommand};

const CHUNK: usize = 64 * 1024;

/// An error plus the process exit code it maps to.
pub struct Failure {
    pub code: u8,
    pub error: anyhow::Error,
}

trait Classify<T> {
    /// Bad invocation: missing files, nothing to do.
    fn usage(self) -> Result<T, Failure>;
    /// Bad input data or a failed write.
    fn data(self) -> Result<T, Failure>;
}

impl<T, E: Into<anyhow::Error>> Classify<T> for Result<T, E> {
    fn usage(self) -> Result<T, Failure> {
        self.map_err(|e| Failure { code: 2, error: e.into() })
    }

    fn data(self) -> Result<T, Failure> {
        self.map_err(|e| Failure { code: 1, error: e.into() })
    }
}

pub fn run(cli: Cli) -> Result<(), Failure> {
    let custom;
    let tables: &TableSet = match &cli.tables {
        Some(path) => {
            custom = load_tables(path)?;
            &custom
        }
        None => default_tables(),
    };
    match cli.command {
        Command::Encode(io) => encode(&io, tables),
        Command::Decode { io, strict, canonical } => {
            let policy = if strict { ErrorPolicy::Strict } else { ErrorPolicy::Replace };
            decode(&io, tables, policy, canonical)
        }
        Command::Inspect(io) => inspect_units(&io, tables),
        Command::Bench { paths, synthetic, wikidump, format, max_bytes, seed, output } => {
            if paths.is_empty() && !synthetic {
                return Err(anyhow!("bench needs input paths or --synthetic")).usage();
            }
            let max_bytes = usize::try_from(max_bytes).unwrap_or(usize::MAX);
            let specs: Vec<CorpusSpec> = paths
                .iter()
                .map(|p| {
                    let spec = CorpusSpec::from_path(p).with_max_bytes(max_bytes);
                    if wikidump {
                        spec.with_kind(CorpusKind::WikiDump)
                    } else {
                        spec
                    }
                })
                .collect();
            for spec in &specs {
                if !spec.source.is_file() {
                    return Err(anyhow!("no such file: {}", spec.source.display())).usage();
                }
            }
            let mut rows = Vec::new();
            for (spec, row) in specs.iter().zip(measure_corpora(&specs, tables)) {
                rows.push(row.with_context(|| format!("{}", spec.source.display())).data()?);
            }
            if synthetic {
                rows.extend(measure_all(&synthetic_corpus(max_bytes, seed), tables));
            }
            let mut out = open_output(output.as_deref())?;
            out.write_all(report(&rows, format).as_bytes()).data()?;
            out.flush().data()
        }
        Command::Tables(TablesCommand::Dump { output }) => {
            let mut out = open_output(output.as_deref())?;
            out.write_all(&serialize_tables(tables)).data()?;
            out.flush().data()
        }
        Command::Tables(TablesCommand::Validate { path }) => {
            let t = load_tables(&path)?;
            let count = |zone| t.blocks().iter().filter(|b| b.zone == zone && b.mother.is_none()).count();
            println!(
                "ok: version {:?}, {} blocks, {} byte2 entries, {} bit8 and {} bit7 alphabets",
                t.version(),
                t.blocks().len(),
                t.byte2_len(),
                count(Zone::Bit8),
                count(Zone::Bit7),
            );
            Ok(())
        }
    }
}

fn load_tables(path: &Path) -> Result<TableSet, Failure> {
    let bytes = std::fs::read(path).with_context(|| format!("cannot read {}", path.display())).usage()?;
    parse_tables(&bytes).with_context(|| format!("{}", path.display())).data()
}

fn open_input(path: Option<&Path>) -> Result<Box<dyn Read>, Failure> {
    match path {
        None => Ok(Box::new(io::stdin().lock())),
        Some(p) if p == Path::new("-") => Ok(Box::new(io::stdin().lock())),
        Some(p) => {
            let file = File::open(p).with_context(|| format!("cannot open {}", p.display())).usage()?;
            Ok(Box::new(file))
        }
    }
}

fn open_output(path: Option<&Path>) -> Result<Box<dyn Write>, Failure> {
    match path {
        None => Ok(Box::new(BufWriter::new(io::stdout().lock()))),
        Some(p) => {
            let file = File::create(p).with_context(|| format!("cannot create {}", p.display())).usage()?;
            Ok(Box::new(BufWriter::new(file)))
        }
    }
}

/// Feeds `input` to `f` in bounded chunks.
fn for_each_chunk(input: &mut dyn Read, mut f: impl FnMut(&[u8]) -> Result<(), Failure>) -> Result<(), Failure> {
    let mut buf = vec![0u8; CHUNK];
    loop {
        let n = match input.read(&mut buf) {
            Ok(0) => return Ok(()),
            Ok(n) => n,
            Err(e) if e.kind() == io::ErrorKind::Interrupted => continue,
            Err(e) => return Err(anyhow!(e).context("read failed")).data(),
        };
        f(&buf[..n])?;
    }
}

fn encode(io: &Io, tables: &TableSet) -> Result<(), Failure> {
    let mut input = open_input(io.input.as_deref())?;
    let mut out = open_output(io.output.as_deref())?;
    let mut enc = Encoder::new(tables);
    let mut pending: Vec<u8> = Vec::new();
    let mut consumed = 0usize;
    let mut encoded = Vec::with_capacity(CHUNK);
    for_each_chunk(&mut *input, |chunk| {
        pending.extend_from_slice(chunk);
        let valid = match std::str::from_utf8(&pending) {
            Ok(s) => s.len(),
            Err(e) if e.error_len().is_none() => e.valid_up_to(),
            Err(e) => return Err(anyhow!("invalid UTF-8 at byte offset {}", consumed + e.valid_up_to())).data(),
        };
        let text = std::str::from_utf8(&pending[..valid]).expect("validated above");
        enc.push_str(text, &mut encoded);
        out.write_all(&encoded).data()?;
        encoded.clear();
        pending.drain(..valid);
        consumed += valid;
        Ok(())
    })?;
    if !pending.is_empty() {
        return Err(anyhow!("input ends inside a UTF-8 sequence at byte offset {consumed}")).data();
    }
    enc.flush(&mut encoded);
    out.write_all(&encoded).data()?;
    out.flush().data()
}

fn decode(io: &Io, tables: &TableSet, policy: ErrorPolicy, canonical: bool) -> Result<(), Failure> {
    let mut input = open_input(io.input.as_deref())?;
    if canonical {
        let mut bytes = Vec::new();
        input.read_to_end(&mut bytes).context("read failed").data()?;
        check_canonical(&bytes, tables).data()?;
        let text = decode_bytes(&bytes, tables, policy).data()?;
        let mut out = open_output(io.output.as_deref())?;
        out.write_all(text.as_bytes()).data()?;
        return out.flush().data();
    }
    let mut out = open_output(io.output.as_deref())?;
    let mut dec = Decoder::new(tables, policy);
    let mut text = String::with_capacity(CHUNK);
    for_each_chunk(&mut *input, |chunk| {
        let fed = dec.feed(chunk, &mut text);
        out.write_all(text.as_bytes()).data()?;
        text.clear();
        fed.data()
    })?;
    let finished = dec.finish(&mut text);
    out.write_all(text.as_bytes()).data()?;
    out.flush().data()?;
    finished.data()
}

fn hex_list<T: std::fmt::UpperHex>(items: impl IntoIterator<Item = T>, width: usize) -> String {
    items.into_iter().map(|i| format!("{i:0width$X}")).collect::<Vec<_>>().join(" ")
}

fn describe(report: &UnitReport, base: usize) -> String {
    let offset = base + report.offset;
    match (&report.unit, &report.chars) {
        (Ok(unit), Some(chars)) => {
            let alphabet = unit.alphabet().map_or_else(|| "-".to_owned(), |a| a.to_string());
            let indexes = match *unit {
                duncode::Unit::Ascii(b) => hex_list([b], 2),
                duncode::Unit::Byte2(i) => hex_list([i], 4),
                duncode::Unit::Isolate(cp) => hex_list([cp], 4),
                _ => hex_list(unit.letters().iter().copied(), 2),
            };
            format!("{offset} {} alphabet={alphabet} indexes={indexes} {:?}", unit.zone(), chars.to_string())
        }
        (Err(DecodeErrorKind::Truncated(n)), _) => format!("{offset} error len={n} \"stream ends inside a unit\""),
        (Err(e), _) => format!("{offset} error len={} {:?}", report.len, e.to_string()),
        (Ok(unit), None) => format!("{offset} {} unmapped", unit.zone()),
    }
}

fn inspect_units(io: &Io, tables: &TableSet) -> Result<(), Failure> {
    let mut input = open_input(io.input.as_deref())?;
    let mut out = open_output(io.output.as_deref())?;
    let mut pending: Vec<u8> = Vec::new();
    let mut base = 0usize;
    for_each_chunk(&mut *input, |chunk| {
        pending.extend_from_slice(chunk);
        let (_, rest) = segment(&pending);
        let complete = pending.len() - rest.len();
        for r in inspect(&pending[..complete], tables) {
            writeln!(out, "{}", describe(&r, base)).data()?;
        }
        pending.drain(..complete);
        base += complete;
        Ok(())
    })?;
    for r in inspect(&pending, tables) {
        writeln!(out, "{}", describe(&r, base)).data()?;
    }
    out.flush().data()
}
