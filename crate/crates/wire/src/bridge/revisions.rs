use std::fs;
use std::io;
use std::path::{Path, PathBuf};

/// Saved program versions, laid out as `<root>/<account>/<file>/NNN.js`
/// with `NNN` counting up from `001`.
#[derive(Debug, Clone)]
pub struct RevisionStore {
    root: PathBuf,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty()
        && name != "."
        && name != ".."
        && name.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.' | '@'))
}

impl RevisionStore {
    pub fn new(root: impl Into<PathBuf>) -> Self {
        Self { root: root.into() }
    }

    pub fn root(&self) -> &Path {
        &self.root
    }

    fn dir(&self, account: &str, file: &str) -> io::Result<PathBuf> {
        if !valid_name(account) || !valid_name(file) {
            return Err(io::Error::new(io::ErrorKind::InvalidInput, "account and file names may only use letters, digits, '-', '_', '.' and '@'"));
        }
        Ok(self.root.join(account).join(file))
    }

    /// Revision files in order, oldest first.
    pub fn revisions(&self, account: &str, file: &str) -> io::Result<Vec<PathBuf>> {
        let dir = self.dir(account, file)?;
        let mut found: Vec<(u32, PathBuf)> = match fs::read_dir(&dir) {
            Ok(entries) => entries
                .filter_map(|e| e.ok())
                .filter_map(|e| {
                    let path = e.path();
                    let n = path.file_name()?.to_str()?.strip_suffix(".js")?.parse().ok()?;
                    Some((n, path))
                })
                .collect(),
            Err(e) if e.kind() == io::ErrorKind::NotFound => Vec::new(),
            Err(e) => return Err(e),
        };
        found.sort();
        Ok(found.into_iter().map(|(_, p)| p).collect())
    }

    pub fn latest(&self, account: &str, file: &str) -> io::Result<Option<String>> {
        match self.revisions(account, file)?.last() {
            Some(p) => fs::read_to_string(p).map(Some),
            None => Ok(None),
        }
    }

    /// Stores `source` as a new revision unless it equals the latest one.
    /// Returns the new revision number.
    pub fn save_if_changed(&self, account: &str, file: &str, source: &str) -> io::Result<Option<u32>> {
        let existing = self.revisions(account, file)?;
        if let Some(last) = existing.last() {
            if fs::read_to_string(last)? == source {
                return Ok(None);
            }
        }
        let dir = self.dir(account, file)?;
        fs::create_dir_all(&dir)?;
        let n = existing
            .last()
            .and_then(|p| p.file_stem()?.to_str()?.parse::<u32>().ok())
            .map_or(1, |last| last + 1);
        fs::write(dir.join(format!("{n:03}.js")), source)?;
        Ok(Some(n))
    }
}
