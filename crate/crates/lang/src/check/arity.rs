use std::collections::BTreeMap;

use crate::api::ApiManifest;
use crate::syntax::{Ast, Stmt, StmtKind};

/// Declared parameter counts of builtins and user functions. `None` marks
/// a variadic builtin.
#[derive(Debug, Clone, PartialEq)]
pub struct ArityTable {
    namespaces: BTreeMap<String, BTreeMap<String, Option<usize>>>,
    functions: BTreeMap<String, usize>,
}

/// Builtins that accept any number of arguments.
pub const VARIADIC: &[(&str, &str)] = &[("console", "log")];

impl ArityTable {
    pub fn from_manifest(manifest: &ApiManifest) -> Self {
        let mut namespaces = BTreeMap::new();
        let robot: BTreeMap<_, _> = manifest.entries.iter().map(|e| (e.name.clone(), Some(e.arity))).collect();
        namespaces.insert(manifest.namespace.clone(), robot);
        for (ns, name) in VARIADIC {
            namespaces.entry(ns.to_string()).or_insert_with(BTreeMap::new).insert(name.to_string(), None);
        }
        Self { namespaces, functions: BTreeMap::new() }
    }

    pub fn standard() -> Self {
        Self::from_manifest(&crate::api::api_catalog())
    }

    /// Adds every function declared in `ast`. A name declared in several
    /// scopes keeps its first declaration; calls are resolved per scope by
    /// the checker.
    pub fn with_program(mut self, ast: &Ast) -> Self {
        fn walk(stmts: &[Stmt], out: &mut BTreeMap<String, usize>) {
            for s in stmts {
                match &s.kind {
                    StmtKind::Function(f) => {
                        out.entry(f.name.name.to_string()).or_insert(f.params.len());
                        walk(&f.body, out);
                    }
                    StmtKind::Block(b) => walk(b, out),
                    StmtKind::If { then_branch, else_branch, .. } => {
                        walk(std::slice::from_ref(then_branch), out);
                        if let Some(e) = else_branch {
                            walk(std::slice::from_ref(e), out);
                        }
                    }
                    StmtKind::While { body, .. } | StmtKind::For { body, .. } => walk(std::slice::from_ref(body), out),
                    _ => {}
                }
            }
        }
        walk(&ast.body, &mut self.functions);
        self
    }

    /// `Some(arity)` for a known member, `None` if the namespace lacks it.
    pub fn member(&self, namespace: &str, name: &str) -> Option<Option<usize>> {
        self.namespaces.get(namespace)?.get(name).copied()
    }

    pub fn function(&self, name: &str) -> Option<usize> {
        self.functions.get(name).copied()
    }

    pub fn functions(&self) -> impl Iterator<Item = (&str, usize)> {
        self.functions.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_source;

    #[test]
    fn builtins_and_user_functions() {
        let ast = parse_source("function f(a, b) { function g() {} } { function h(x) {} }", 0).unwrap();
        let t = ArityTable::standard().with_program(&ast);
        assert_eq!(t.member("robot", "moveTo"), Some(Some(3)));
        assert_eq!(t.member("console", "log"), Some(None));
        assert_eq!(t.member("robot", "fly"), None);
        assert_eq!((t.function("f"), t.function("g"), t.function("h")), (Some(2), Some(0), Some(1)));
        assert_eq!(t.functions().count(), 3);
    }
}
