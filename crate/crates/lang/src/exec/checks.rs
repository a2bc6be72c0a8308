//! The strict-mode rules as pure functions. Strict evaluation and the
//! check functions called by instrumented code both go through here, which
//! is what keeps the two execution paths in agreement.

use std::rc::Rc;

use super::value::Value;
use crate::check::messages;
use crate::diagnostic::CheckCategory;
use crate::syntax::{BinaryOp, UnaryOp, UpdateOp};

#[derive(Debug, Clone, PartialEq)]
pub struct CheckFailure {
    pub category: CheckCategory,
    pub message: String,
}

fn fail(category: CheckCategory, message: String) -> CheckFailure {
    CheckFailure { category, message }
}

pub fn read(value: &Value, name: &str) -> Result<(), CheckFailure> {
    match value {
        Value::Undefined => Err(fail(CheckCategory::UninitializedVariable, messages::uninitialized(name))),
        _ => Ok(()),
    }
}

pub fn binary(op: BinaryOp, l: &Value, r: &Value) -> Result<Value, CheckFailure> {
    use BinaryOp::*;
    match op {
        LooseEq | LooseNe => Err(fail(CheckCategory::LooseComparison, messages::loose_comparison(op))),
        StrictEq => Ok(Value::Bool(l.strict_eq(r))),
        StrictNe => Ok(Value::Bool(!l.strict_eq(r))),
        Add => match (l, r) {
            (Value::Number(a), Value::Number(b)) => Ok(Value::Number(a + b)),
            (Value::Str(a), Value::Str(b)) => {
                let mut s = String::with_capacity(a.len() + b.len());
                s.push_str(a);
                s.push_str(b);
                Ok(Value::Str(Rc::from(s)))
            }
            _ => Err(fail(CheckCategory::OpTypeMismatch, messages::arithmetic(op))),
        },
        Sub | Mul | Div | Mod => match (l, r) {
            (Value::Number(a), Value::Number(b)) => Ok(Value::Number(match op {
                Sub => a - b,
                Mul => a * b,
                Div => a / b,
                _ => a % b,
            })),
            _ => Err(fail(CheckCategory::OpTypeMismatch, messages::arithmetic(op))),
        },
        Lt | Le | Gt | Ge => match (l, r) {
            (Value::Number(a), Value::Number(b)) => Ok(Value::Bool(match op {
                Lt => a < b,
                Le => a <= b,
                Gt => a > b,
                _ => a >= b,
            })),
            _ => {
                let function = l.as_function().or(r.as_function());
                Err(match function {
                    Some(f) => fail(
                        CheckCategory::FunctionComparedAsValue,
                        messages::function_compared(op, &f.display_name()),
                    ),
                    None => fail(CheckCategory::OpTypeMismatch, messages::ordering(op)),
                })
            }
        },
        And | Or => unreachable!("logical operators short-circuit before reaching checks"),
    }
}

pub fn unary(op: UnaryOp, v: &Value) -> Result<Value, CheckFailure> {
    match (op, v) {
        (UnaryOp::Neg, Value::Number(n)) => Ok(Value::Number(-n)),
        (UnaryOp::Not, Value::Bool(b)) => Ok(Value::Bool(!b)),
        _ => Err(fail(CheckCategory::OpTypeMismatch, messages::unary(op))),
    }
}

pub fn update(op: UpdateOp, v: &Value) -> Result<Value, CheckFailure> {
    let (delta, symbol) = match op {
        UpdateOp::Inc => (1.0, "++"),
        UpdateOp::Dec => (-1.0, "--"),
    };
    match v {
        Value::Number(n) => Ok(Value::Number(n + delta)),
        _ => Err(fail(CheckCategory::OpTypeMismatch, messages::update(symbol))),
    }
}

/// Conditions must be exactly `true` or `false`.
pub fn condition(v: &Value, is_assignment: bool) -> Result<bool, CheckFailure> {
    match v {
        Value::Bool(b) => Ok(*b),
        other if is_assignment => {
            Err(fail(CheckCategory::ConditionalAssignment, messages::conditional_assignment(other.describe())))
        }
        other => Err(fail(CheckCategory::NonBooleanCondition, messages::non_boolean_condition(other.describe()))),
    }
}

pub fn arity(name: &str, expected: usize, got: usize) -> Result<(), CheckFailure> {
    if expected == got {
        Ok(())
    } else {
        Err(fail(CheckCategory::ArityMismatch, messages::arity(name, expected, got)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exec::value::{Builtin, Function};

    #[test]
    fn greater_than_requires_numbers() {
        let err = binary(BinaryOp::Gt, &Value::str("a"), &Value::Number(1.0)).unwrap_err();
        assert_eq!(err.category, CheckCategory::OpTypeMismatch);
        assert_eq!(err.message, "Arguments of \">\" must both be numbers.");
    }

    #[test]
    fn function_operand_gets_hint() {
        let f = Value::Function(Function::Builtin(Builtin::Robot(crate::api::manifest::catalog_index("getBallPosX").unwrap())));
        let err = binary(BinaryOp::Gt, &f, &Value::Number(0.0)).unwrap_err();
        assert_eq!(err.category, CheckCategory::FunctionComparedAsValue);
        assert!(err.message.contains("robot.getBallPosX") && err.message.contains("()"));
    }

    #[test]
    fn plus_rules() {
        assert!(binary(BinaryOp::Add, &Value::str("a"), &Value::str("b")).is_ok());
        assert!(binary(BinaryOp::Add, &Value::str("a"), &Value::Number(1.0)).is_err());
        assert!(binary(BinaryOp::Mul, &Value::str("x"), &Value::Number(2.0)).is_err());
        assert!(binary(BinaryOp::StrictEq, &Value::str("1"), &Value::Number(1.0)).is_ok());
    }

    #[test]
    fn conditions() {
        assert_eq!(condition(&Value::Bool(true), false), Ok(true));
        assert_eq!(condition(&Value::Number(0.0), true).unwrap_err().category, CheckCategory::ConditionalAssignment);
        assert_eq!(condition(&Value::Number(1.0), false).unwrap_err().category, CheckCategory::NonBooleanCondition);
    }
}
