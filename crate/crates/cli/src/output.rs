//! Run directories. Files are staged in a hidden sibling directory and moved
//! into place with one rename once every output has been written, so a failed
//! run leaves no partial results behind.

use std::fs::{self, File};
use std::io::{BufWriter, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use chrono::Utc;

pub struct RunDir {
    staging: PathBuf,
    base: PathBuf,
    name: String,
}

impl RunDir {
    pub fn create(base: &Path, hash: &str) -> Result<RunDir> {
        fs::create_dir_all(base).with_context(|| format!("creating output directory {}", base.display()))?;
        let name = format!("{}-{hash}", Utc::now().format("%Y%m%dT%H%M%S%.3fZ"));
        let staging = base.join(format!(".tmp-{name}-{}", std::process::id()));
        fs::create_dir(&staging).with_context(|| format!("creating {}", staging.display()))?;
        Ok(RunDir { staging, base: base.to_path_buf(), name })
    }

    pub fn writer(&self, file: &str) -> Result<BufWriter<File>> {
        let path = self.staging.join(file);
        let f = File::create(&path).with_context(|| format!("creating {}", path.display()))?;
        Ok(BufWriter::new(f))
    }

    pub fn write_json<T: serde::Serialize>(&self, file: &str, value: &T) -> Result<()> {
        let mut w = self.writer(file)?;
        serde_json::to_writer_pretty(&mut w, value)?;
        writeln!(w)?;
        w.flush()?;
        Ok(())
    }

    /// Moves the staged files to `<base>/<timestamp>-<hash>` and returns
    /// that path. A numeric suffix avoids clobbering an earlier run.
    pub fn commit(self) -> Result<PathBuf> {
        let mut target = self.base.join(&self.name);
        let mut n = 1;
        while target.exists() {
            target = self.base.join(format!("{}-{n}", self.name));
            n += 1;
        }
        fs::rename(&self.staging, &target).with_context(|| format!("moving results to {}", target.display()))?;
        Ok(target)
    }
}

impl Drop for RunDir {
    fn drop(&mut self) {
        // after a commit the staging path is gone and this is a no-op
        let _ = fs::remove_dir_all(&self.staging);
    }
}

/// `{:?}` keeps the shortest round-tripping form of a float.
pub fn num(x: f64) -> String {
    format!("{x:?}")
}
