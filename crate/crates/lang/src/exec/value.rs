use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;

use crate::api::manifest::catalog_name;
use crate::check::Intrinsic;
use crate::js::number_to_string;
use crate::syntax::FunctionDecl;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Builtin {
    Log,
    /// Index into the robot API catalog.
    Robot(usize),
    Intrinsic(Intrinsic),
}

impl Builtin {
    pub fn short_name(self) -> &'static str {
        match self {
            Builtin::Log => "log",
            Builtin::Robot(i) => catalog_name(i),
            Builtin::Intrinsic(i) => i.name(),
        }
    }

    pub fn qualified_name(self) -> String {
        match self {
            Builtin::Log => "console.log".into(),
            Builtin::Robot(i) => format!("robot.{}", catalog_name(i)),
            Builtin::Intrinsic(i) => i.name().into(),
        }
    }
}

pub struct Closure {
    pub decl: Rc<FunctionDecl>,
    pub env: Rc<Scope>,
}

#[derive(Clone)]
pub enum Function {
    Builtin(Builtin),
    User(Rc<Closure>),
}

impl Function {
    /// Name as written by the student, e.g. `robot.getBallPosX` or `f`.
    pub fn display_name(&self) -> String {
        match self {
            Function::Builtin(b) => b.qualified_name(),
            Function::User(c) => c.decl.name.name.to_string(),
        }
    }

    pub fn same(&self, other: &Function) -> bool {
        match (self, other) {
            (Function::Builtin(a), Function::Builtin(b)) => a == b,
            (Function::User(a), Function::User(b)) => Rc::ptr_eq(a, b),
            _ => false,
        }
    }
}

#[derive(Clone)]
pub enum Value {
    Undefined,
    Bool(bool),
    Number(f64),
    Str(Rc<str>),
    Function(Function),
}

impl Value {
    pub fn str(s: &str) -> Value {
        Value::Str(Rc::from(s))
    }

    /// Phrase used in messages: "a number", "undefined", ...
    pub fn describe(&self) -> &'static str {
        match self {
            Value::Undefined => "undefined",
            Value::Bool(_) => "a boolean",
            Value::Number(_) => "a number",
            Value::Str(_) => "a string",
            Value::Function(_) => "a function",
        }
    }

    pub fn as_number(&self) -> Option<f64> {
        match self {
            Value::Number(n) => Some(*n),
            _ => None,
        }
    }

    pub fn as_function(&self) -> Option<&Function> {
        match self {
            Value::Function(f) => Some(f),
            _ => None,
        }
    }

    /// JavaScript truthiness.
    pub fn to_boolean(&self) -> bool {
        match self {
            Value::Undefined => false,
            Value::Bool(b) => *b,
            Value::Number(n) => !(n.is_nan() || *n == 0.0),
            Value::Str(s) => !s.is_empty(),
            Value::Function(_) => true,
        }
    }

    /// `===`
    pub fn strict_eq(&self, other: &Value) -> bool {
        match (self, other) {
            (Value::Undefined, Value::Undefined) => true,
            (Value::Bool(a), Value::Bool(b)) => a == b,
            (Value::Number(a), Value::Number(b)) => a == b,
            (Value::Str(a), Value::Str(b)) => a == b,
            (Value::Function(a), Value::Function(b)) => a.same(b),
            _ => false,
        }
    }

    /// One `console.log` argument, formatted the way Node.js prints it.
    pub fn log_format(&self) -> String {
        match self {
            Value::Undefined => "undefined".into(),
            Value::Bool(b) => b.to_string(),
            Value::Number(n) if *n == 0.0 && n.is_sign_negative() => "-0".into(),
            Value::Number(n) => number_to_string(*n),
            Value::Str(s) => s.to_string(),
            Value::Function(Function::Builtin(b)) => format!("[Function: {}]", b.short_name()),
            Value::Function(Function::User(c)) => format!("[Function: {}]", c.decl.name.name),
        }
    }
}

impl fmt::Debug for Value {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Value::Str(s) => write!(f, "{s:?}"),
            other => f.write_str(&other.log_format()),
        }
    }
}

/// Result of looking a name up.
pub enum Slot {
    Undeclared,
    /// Declared with `let` but the declaration has not run yet.
    Uninitialized,
    Value(Value),
}

/// A lexical environment. `None` marks a binding still in its temporal
/// dead zone.
#[derive(Default)]
pub struct Scope {
    vars: RefCell<HashMap<Rc<str>, Option<Value>>>,
    parent: Option<Rc<Scope>>,
}

impl Scope {
    pub fn root() -> Rc<Scope> {
        Rc::new(Scope::default())
    }

    pub fn child(parent: &Rc<Scope>) -> Rc<Scope> {
        Rc::new(Scope { vars: RefCell::default(), parent: Some(parent.clone()) })
    }

    /// A sibling holding copies of this scope's bindings, for per-iteration
    /// loop variables.
    pub fn copy(&self) -> Rc<Scope> {
        Rc::new(Scope { vars: RefCell::new(self.vars.borrow().clone()), parent: self.parent.clone() })
    }

    pub fn declare(&self, name: Rc<str>, value: Option<Value>) {
        self.vars.borrow_mut().insert(name, value);
    }

    pub fn lookup(&self, name: &str) -> Slot {
        if let Some(v) = self.vars.borrow().get(name) {
            return match v {
                Some(v) => Slot::Value(v.clone()),
                None => Slot::Uninitialized,
            };
        }
        match &self.parent {
            Some(p) => p.lookup(name),
            None => Slot::Undeclared,
        }
    }

    /// Assigns to the nearest binding, which must be initialized.
    pub fn assign(&self, name: &str, value: Value) -> Result<(), Slot> {
        if let Some(v) = self.vars.borrow_mut().get_mut(name) {
            return match v {
                Some(slot) => {
                    *slot = value;
                    Ok(())
                }
                None => Err(Slot::Uninitialized),
            };
        }
        match &self.parent {
            Some(p) => p.assign(name, value),
            None => Err(Slot::Undeclared),
        }
    }

    /// Drops all bindings, breaking reference cycles through closures.
    pub fn clear(&self) {
        self.vars.borrow_mut().clear();
    }
}
