use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Read, Write};
use std::path::{Path, PathBuf};

use amrkit::corpus::{CorpusError, CorpusReader};
use amrkit::Document;
use anyhow::{Context, Result};

use crate::UsageError;

pub fn open(path: Option<&Path>) -> Result<Box<dyn BufRead>> {
    Ok(match path {
        Some(p) => Box::new(BufReader::new(
            File::open(p).with_context(|| format!("opening {}", p.display()))?,
        )),
        None => Box::new(BufReader::new(io::stdin())),
    })
}

pub fn read_text(path: Option<&Path>) -> Result<String> {
    let mut text = String::new();
    open(path)?
        .read_to_string(&mut text)
        .with_context(|| format!("reading {}", display(path)))?;
    Ok(text)
}

pub fn display(path: Option<&Path>) -> String {
    path.map_or_else(|| "<stdin>".to_string(), |p| p.display().to_string())
}

/// Streams documents; the first bad block stops the stream with file and
/// line context.
pub fn documents(path: Option<&Path>) -> Result<impl Iterator<Item = Result<Document>>> {
    let name = display(path);
    Ok(CorpusReader::new(open(path)?).map(move |item| {
        item.map_err(|e| match e {
            CorpusError::Block(b) => anyhow::anyhow!("{name}: {b}"),
            CorpusError::Io(e) => anyhow::Error::new(e).context(format!("reading {name}")),
        })
    }))
}

pub fn read_corpus(path: &Path) -> Result<Vec<Document>> {
    documents(Some(path))?.collect()
}

pub fn output(path: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(
            File::create(p).with_context(|| format!("creating {}", p.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn write_all(path: Option<&Path>, text: &str) -> Result<()> {
    let mut out = output(path)?;
    out.write_all(text.as_bytes())?;
    out.flush()?;
    Ok(())
}

/// A required path from the flag or the config.
pub fn required(flag: Option<PathBuf>, config: Option<&PathBuf>, name: &str) -> Result<PathBuf> {
    flag.or_else(|| config.cloned())
        .ok_or_else(|| UsageError(format!("--{name} is required")).into())
}
