use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use brillouin_core::{Config, Error, Result};
use serde::Serialize;

/// Output files are staged under a `.partial` suffix and renamed together once the command
/// has succeeded, so a failed run leaves only `.partial` files behind.
pub struct Outputs {
    dir: PathBuf,
    staged: Vec<String>,
    started: Instant,
}

#[derive(Serialize)]
struct Manifest<'a> {
    command: &'a str,
    arguments: Vec<String>,
    version: &'static str,
    config: &'a Config,
    outputs: &'a [String],
    wall_clock_s: f64,
}

fn partial(path: &Path) -> PathBuf {
    let mut name = path.as_os_str().to_owned();
    name.push(".partial");
    PathBuf::from(name)
}

impl Outputs {
    pub fn new(dir: &Path) -> Result<Self> {
        fs::create_dir_all(dir).map_err(|e| Error::Io(format!("{}: {e}", dir.display())))?;
        Ok(Self { dir: dir.to_path_buf(), staged: Vec::new(), started: Instant::now() })
    }

    pub fn write(&mut self, name: &str, contents: &str) -> Result<()> {
        let path = partial(&self.dir.join(name));
        fs::write(&path, contents).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        self.staged.push(name.to_string());
        Ok(())
    }

    /// Renames the staged files into place and writes `<command>_manifest.json`.
    pub fn commit(self, command: &str, config: &Config) -> Result<Vec<PathBuf>> {
        let mut done = Vec::new();
        for name in &self.staged {
            let target = self.dir.join(name);
            fs::rename(partial(&target), &target).map_err(|e| Error::Io(format!("{}: {e}", target.display())))?;
            done.push(target);
        }
        let manifest = Manifest {
            command,
            arguments: std::env::args().collect(),
            version: env!("CARGO_PKG_VERSION"),
            config,
            outputs: &self.staged,
            wall_clock_s: self.started.elapsed().as_secs_f64(),
        };
        let path = self.dir.join(format!("{command}_manifest.json"));
        let text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
        fs::write(&path, text).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
        done.push(path);
        Ok(done)
    }
}
