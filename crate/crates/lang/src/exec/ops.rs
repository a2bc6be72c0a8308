//! JavaScript's coercing operators on primitive values. Callers convert
//! functions to their source text first.

use std::cmp::Ordering;
use std::rc::Rc;

use super::value::Value;
use crate::js::{number_to_string, remainder, string_to_number};
use crate::syntax::BinaryOp;

pub fn to_number(v: &Value) -> f64 {
    match v {
        Value::Undefined => f64::NAN,
        Value::Bool(b) => f64::from(u8::from(*b)),
        Value::Number(n) => *n,
        Value::Str(s) => string_to_number(s),
        Value::Function(_) => f64::NAN,
    }
}

pub fn to_string(v: &Value) -> String {
    match v {
        Value::Undefined => "undefined".into(),
        Value::Bool(b) => b.to_string(),
        Value::Number(n) => number_to_string(*n),
        Value::Str(s) => s.to_string(),
        Value::Function(_) => unreachable!("functions are converted to primitives first"),
    }
}

pub fn add(l: &Value, r: &Value) -> Value {
    if matches!(l, Value::Str(_)) || matches!(r, Value::Str(_)) {
        let mut s = to_string(l);
        s.push_str(&to_string(r));
        Value::Str(Rc::from(s))
    } else {
        Value::Number(to_number(l) + to_number(r))
    }
}

pub fn arithmetic(op: BinaryOp, a: f64, b: f64) -> f64 {
    match op {
        BinaryOp::Sub => a - b,
        BinaryOp::Mul => a * b,
        BinaryOp::Div => a / b,
        BinaryOp::Mod => remainder(a, b),
        other => unreachable!("{other:?} is not arithmetic"),
    }
}

/// `<`, `<=`, `>`, `>=`. Strings compare by UTF-16 code units.
pub fn relational(op: BinaryOp, l: &Value, r: &Value) -> bool {
    let ord = match (l, r) {
        (Value::Str(a), Value::Str(b)) => Some(a.encode_utf16().cmp(b.encode_utf16())),
        _ => to_number(l).partial_cmp(&to_number(r)),
    };
    let Some(ord) = ord else { return false };
    match op {
        BinaryOp::Lt => ord == Ordering::Less,
        BinaryOp::Le => ord != Ordering::Greater,
        BinaryOp::Gt => ord == Ordering::Greater,
        BinaryOp::Ge => ord != Ordering::Less,
        other => unreachable!("{other:?} is not relational"),
    }
}

/// The abstract equality algorithm, restricted to the subset's types.
pub fn loose_eq(l: &Value, r: &Value, prim: &dyn Fn(&Value) -> Value) -> bool {
    match (l, r) {
        (Value::Undefined, Value::Undefined) => true,
        (Value::Undefined, _) | (_, Value::Undefined) => false,
        (Value::Number(a), Value::Number(b)) => a == b,
        (Value::Str(a), Value::Str(b)) => a == b,
        (Value::Bool(a), Value::Bool(b)) => a == b,
        (Value::Function(_), Value::Function(_)) => l.strict_eq(r),
        (Value::Number(a), Value::Str(_)) => *a == to_number(r),
        (Value::Str(_), Value::Number(b)) => to_number(l) == *b,
        (Value::Bool(_), _) => loose_eq(&Value::Number(to_number(l)), r, prim),
        (_, Value::Bool(_)) => loose_eq(l, &Value::Number(to_number(r)), prim),
        (Value::Function(_), _) => loose_eq(&prim(l), r, prim),
        (_, Value::Function(_)) => loose_eq(l, &prim(r), prim),
    }
}
