use std::collections::{BTreeMap, BTreeSet};

use rayon::prelude::*;
use robojs_lang::api::ApiManifest;
use robojs_lang::check::{static_check, ArityTable};
use robojs_lang::diagnostic::{Category, CheckCategory, Diagnostic};
use robojs_lang::syntax::{check_syntax, parse_source};
use serde::Serialize;

use crate::corpus::RevisionCorpus;
use crate::rules::pattern_sites;

/// What was found in one revision.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Finding {
    pub syntax_errors: Vec<Diagnostic>,
    /// Categories the checked language would report and plain JavaScript
    /// would not. Empty when the revision does not parse.
    pub categories: BTreeSet<CheckCategory>,
    pub sites: Vec<Diagnostic>,
}

impl Finding {
    pub fn has_syntax_error(&self) -> bool {
        !self.syntax_errors.is_empty()
    }

    pub fn has_robojs_error(&self) -> bool {
        !self.categories.is_empty()
    }
}

pub fn analyze_revision(source: &str, manifest: &ApiManifest) -> Finding {
    if let Err(errors) = check_syntax(source) {
        return Finding { syntax_errors: errors, ..Finding::default() };
    }
    let ast = parse_source(source, 0).expect("syntax already checked");
    let arities = ArityTable::from_manifest(manifest).with_program(&ast);
    let mut sites: Vec<Diagnostic> = static_check(&ast, &arities)
        .into_iter()
        .filter(|d| matches!(d.category, Category::Check(_)))
        .collect();
    sites.extend(pattern_sites(&ast, &arities));
    sites.sort_by_key(|d| (d.span.start(), d.span.end()));
    let categories = sites
        .iter()
        .filter_map(|d| match d.category {
            Category::Check(c) => Some(c),
            _ => None,
        })
        .collect();
    Finding { syntax_errors: Vec::new(), categories, sites }
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct AccountErrors {
    pub account: String,
    pub syntax: u64,
    pub robojs: u64,
    pub revisions: u64,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct ErrorEstimate {
    pub accounts: Vec<AccountErrors>,
    pub total: AccountErrors,
    /// Revisions showing each category; a revision with several counts
    /// once under each.
    pub categories: BTreeMap<CheckCategory, u64>,
}

impl ErrorEstimate {
    pub fn syntax_share(&self) -> Option<f64> {
        (self.total.revisions > 0).then(|| self.total.syntax as f64 / self.total.revisions as f64)
    }

    pub fn robojs_share(&self) -> Option<f64> {
        (self.total.revisions > 0).then(|| self.total.robojs as f64 / self.total.revisions as f64)
    }
}

pub fn estimate_errors(corpus: &RevisionCorpus, manifest: &ApiManifest) -> ErrorEstimate {
    let findings: Vec<Finding> = corpus.revisions.par_iter().map(|r| analyze_revision(&r.source, manifest)).collect();
    let mut est = ErrorEstimate {
        total: AccountErrors { account: "Total".into(), ..Default::default() },
        categories: CheckCategory::ALL.iter().map(|c| (*c, 0)).collect(),
        ..Default::default()
    };
    for (rev, f) in corpus.revisions.iter().zip(&findings) {
        if est.accounts.last().is_none_or(|a| a.account != rev.account) {
            est.accounts.push(AccountErrors { account: rev.account.clone(), ..Default::default() });
        }
        let a = est.accounts.last_mut().unwrap();
        a.revisions += 1;
        a.syntax += f.has_syntax_error() as u64;
        a.robojs += f.has_robojs_error() as u64;
        for c in &f.categories {
            *est.categories.get_mut(c).unwrap() += 1;
        }
    }
    est.total.revisions = est.accounts.iter().map(|a| a.revisions).sum();
    est.total.syntax = est.accounts.iter().map(|a| a.syntax).sum();
    est.total.robojs = est.accounts.iter().map(|a| a.robojs).sum();
    est
}
