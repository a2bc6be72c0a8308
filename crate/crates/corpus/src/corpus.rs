use std::collections::BTreeSet;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};
use std::time::SystemTime;

use serde::Serialize;

/// One saved version of one program.
#[derive(Debug, Clone, PartialEq)]
pub struct Revision {
    pub account: String,
    pub file: String,
    pub number: u32,
    pub path: PathBuf,
    pub source: String,
    pub modified: Option<SystemTime>,
}

/// Every revision under a `<account>/<file>/NNN.js` tree, ordered by
/// account, file and revision number.
#[derive(Debug, Clone, Default)]
pub struct RevisionCorpus {
    pub revisions: Vec<Revision>,
    /// Files that were skipped, with the reason.
    pub warnings: Vec<String>,
}

fn sorted_dirs(dir: &Path) -> io::Result<Vec<(String, PathBuf)>> {
    let mut out = Vec::new();
    for entry in fs::read_dir(dir)? {
        let entry = entry?;
        if entry.file_type()?.is_dir() {
            if let Some(name) = entry.file_name().to_str() {
                out.push((name.to_string(), entry.path()));
            }
        }
    }
    out.sort();
    Ok(out)
}

impl RevisionCorpus {
    pub fn load(root: &Path) -> io::Result<Self> {
        let mut corpus = Self::default();
        for (account, account_dir) in sorted_dirs(root)? {
            for (file, file_dir) in sorted_dirs(&account_dir)? {
                let mut numbered = Vec::new();
                for entry in fs::read_dir(&file_dir)? {
                    let path = entry?.path();
                    let number = path
                        .file_name()
                        .and_then(|n| n.to_str())
                        .and_then(|n| n.strip_suffix(".js"))
                        .and_then(|n| n.parse::<u32>().ok());
                    match number {
                        Some(n) => numbered.push((n, path)),
                        None => corpus.warnings.push(format!("{}: not a numbered revision, skipped", path.display())),
                    }
                }
                numbered.sort();
                for (number, path) in numbered {
                    match fs::read(&path).map(String::from_utf8) {
                        Ok(Ok(source)) => {
                            let modified = fs::metadata(&path).and_then(|m| m.modified()).ok();
                            corpus.revisions.push(Revision { account: account.clone(), file: file.clone(), number, path, source, modified });
                        }
                        Ok(Err(_)) => corpus.warnings.push(format!("{}: not UTF-8 text, skipped", path.display())),
                        Err(e) => corpus.warnings.push(format!("{}: {e}, skipped", path.display())),
                    }
                }
            }
        }
        Ok(corpus)
    }

    /// Account names in order.
    pub fn accounts(&self) -> Vec<&str> {
        let set: BTreeSet<&str> = self.revisions.iter().map(|r| r.account.as_str()).collect();
        set.into_iter().collect()
    }
}

/// Size of one account's history, or of the whole corpus.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AccountStats {
    pub account: String,
    /// Physical lines, summed over revisions.
    pub lines: u64,
    pub revisions: u64,
    pub files: u64,
}

impl AccountStats {
    pub fn lines_per_revision(&self) -> Option<f64> {
        (self.revisions > 0).then(|| self.lines as f64 / self.revisions as f64)
    }

    pub fn revisions_per_file(&self) -> Option<f64> {
        (self.files > 0).then(|| self.revisions as f64 / self.files as f64)
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct CorpusStats {
    pub accounts: Vec<AccountStats>,
    pub total: AccountStats,
}

pub fn scan(corpus: &RevisionCorpus) -> CorpusStats {
    let mut accounts: Vec<AccountStats> = Vec::new();
    let mut files: BTreeSet<(&str, &str)> = BTreeSet::new();
    for rev in &corpus.revisions {
        if accounts.last().is_none_or(|a| a.account != rev.account) {
            accounts.push(AccountStats { account: rev.account.clone(), ..Default::default() });
        }
        let a = accounts.last_mut().unwrap();
        a.lines += rev.source.lines().count() as u64;
        a.revisions += 1;
        if files.insert((&rev.account, &rev.file)) {
            a.files += 1;
        }
    }
    let total = AccountStats {
        account: "Total".into(),
        lines: accounts.iter().map(|a| a.lines).sum(),
        revisions: accounts.iter().map(|a| a.revisions).sum(),
        files: accounts.iter().map(|a| a.files).sum(),
    };
    CorpusStats { accounts, total }
}
