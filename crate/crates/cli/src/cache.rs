//! On-disk cache of sieved tables.
//!
//! Files are named `<descriptor slug>_x<x_max>.rpt` and hold the RPT1 format,
//! whose checksum is verified on every load. Writers go through a private
//! temporary file and `rename`, so readers never see a partial table.

use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::time::{SystemTime, UNIX_EPOCH};

use distance_energy::repcount::{sieve, FormDescriptor};
use distance_energy::RepTable;

use crate::error::CliError;

pub fn cache_path(dir: &Path, descriptor: FormDescriptor, x_max: u64) -> PathBuf {
    dir.join(format!("{}_x{x_max}.rpt", descriptor.slug()))
}

fn load(path: &Path, descriptor: FormDescriptor, x_max: u64) -> Option<RepTable> {
    let file = File::open(path).ok()?;
    match RepTable::read_from(BufReader::new(file)) {
        Ok(t) if t.descriptor() == descriptor && t.x_max() == x_max => Some(t),
        Ok(_) => {
            eprintln!(
                "warning kind=cache reason=\"{} holds a different table\"",
                path.display()
            );
            None
        }
        Err(e) => {
            eprintln!("warning kind=cache reason=\"{}: {e}\"", path.display());
            None
        }
    }
}

fn store(path: &Path, table: &RepTable) -> Result<(), CliError> {
    let dir = path.parent().unwrap_or(Path::new("."));
    fs::create_dir_all(dir)?;
    let nanos = SystemTime::now()
        .duration_since(UNIX_EPOCH)
        .map(|d| d.subsec_nanos())
        .unwrap_or(0);
    let name = path.file_name().and_then(|n| n.to_str()).unwrap_or("table");
    let tmp = dir.join(format!(".{name}.{}.{nanos}.tmp", std::process::id()));
    let result = (|| -> Result<(), CliError> {
        let file = File::create(&tmp)?;
        let mut w = BufWriter::new(file);
        table.write_to(&mut w)?;
        w.flush()?;
        w.get_ref().sync_all()?;
        fs::rename(&tmp, path)?;
        Ok(())
    })();
    if result.is_err() {
        let _ = fs::remove_file(&tmp);
    }
    result
}

/// Loads `r(0..=x_max)` from the cache, or sieves and stores it.
pub fn sieve_cached(
    descriptor: FormDescriptor,
    x_max: u64,
    dir: Option<&Path>,
) -> Result<RepTable, CliError> {
    let Some(dir) = dir else {
        return Ok(sieve(descriptor, x_max)?);
    };
    let path = cache_path(dir, descriptor, x_max);
    if let Some(t) = load(&path, descriptor, x_max) {
        return Ok(t);
    }
    let table = sieve(descriptor, x_max)?;
    store(&path, &table)?;
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip_and_corruption() {
        let dir = tempfile::tempdir().unwrap();
        let d = FormDescriptor::binary(1, 1, 1).unwrap();
        let fresh = sieve_cached(d, 1000, Some(dir.path())).unwrap();
        let path = cache_path(dir.path(), d, 1000);
        assert!(path.exists());
        assert_eq!(sieve_cached(d, 1000, Some(dir.path())).unwrap(), fresh);

        // flip one count byte: the checksum rejects it and the table is rebuilt
        let mut bytes = fs::read(&path).unwrap();
        let last = bytes.len() - 1;
        bytes[last] ^= 0xff;
        fs::write(&path, &bytes).unwrap();
        assert_eq!(sieve_cached(d, 1000, Some(dir.path())).unwrap(), fresh);
        assert_eq!(
            RepTable::read_from(fs::read(&path).unwrap().as_slice()).unwrap(),
            fresh
        );

        let leftovers = fs::read_dir(dir.path())
            .unwrap()
            .filter(|e| {
                e.as_ref()
                    .unwrap()
                    .file_name()
                    .to_string_lossy()
                    .ends_with(".tmp")
            })
            .count();
        assert_eq!(leftovers, 0);
    }
}
