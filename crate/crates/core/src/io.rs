//! File helpers shared by the loaders and the command-line front end.

use std::fs::File;
use std::io::{BufRead, BufReader, BufWriter, Read, Write};
use std::path::Path;

use flate2::read::MultiGzDecoder;
use flate2::write::GzEncoder;
use flate2::Compression;

use crate::error::{Error, Result};

fn is_gzip(path: &Path) -> bool {
    path.extension().is_some_and(|ext| ext == "gz")
}

/// Opens `path` for buffered reading, decompressing when the name ends in `.gz`.
pub fn open_reader(path: &Path) -> Result<Box<dyn BufRead + Send>> {
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    if is_gzip(path) {
        Ok(Box::new(BufReader::with_capacity(
            1 << 16,
            MultiGzDecoder::new(file),
        )))
    } else {
        Ok(Box::new(BufReader::with_capacity(1 << 16, file)))
    }
}

/// Opens `path` for buffered writing, compressing when the name ends in `.gz`.
pub fn create_writer(path: &Path) -> Result<Box<dyn Write + Send>> {
    if let Some(parent) = path.parent().filter(|p| !p.as_os_str().is_empty()) {
        std::fs::create_dir_all(parent).map_err(|e| Error::io(parent, e))?;
    }
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    if is_gzip(path) {
        Ok(Box::new(BufWriter::new(GzEncoder::new(
            file,
            Compression::default(),
        ))))
    } else {
        Ok(Box::new(BufWriter::with_capacity(1 << 16, file)))
    }
}

/// Reads a whole (possibly compressed) file into memory.
pub fn read_all(path: &Path) -> Result<Vec<u8>> {
    let mut buf = Vec::new();
    open_reader(path)?
        .read_to_end(&mut buf)
        .map_err(|e| Error::io(path, e))?;
    Ok(buf)
}

/// One data line of a tab-separated table: comment and blank lines are skipped.
#[derive(Debug)]
pub(crate) struct TsvLine {
    pub number: u64,
    pub fields: Vec<String>,
}

/// Iterates the data lines of a `#`-commented TSV file.
pub(crate) fn tsv_lines<R: BufRead>(
    reader: R,
    origin: &str,
) -> impl Iterator<Item = Result<TsvLine>> {
    let origin = origin.to_string();
    reader.lines().enumerate().filter_map(move |(idx, line)| {
        let number = idx as u64 + 1;
        match line {
            Err(e) => Some(Err(Error::parse(origin.clone(), number, e.to_string()))),
            Ok(line) => {
                let line = line.strip_suffix('\r').unwrap_or(&line);
                if line.trim().is_empty() || line.starts_with('#') {
                    None
                } else {
                    Some(Ok(TsvLine {
                        number,
                        fields: line.split('\t').map(str::to_string).collect(),
                    }))
                }
            }
        }
    })
}

/// Reads every data line of a TSV file at `path`.
pub(crate) fn read_tsv(path: &Path) -> Result<Vec<TsvLine>> {
    let reader = open_reader(path)?;
    tsv_lines(reader, &path.display().to_string()).collect()
}
