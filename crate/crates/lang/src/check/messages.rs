//! Fixed wording for every checked pitfall. Static and dynamic reports of
//! the same problem use the same text.

use crate::syntax::{BinaryOp, UnaryOp};

pub fn loose_comparison(op: BinaryOp) -> String {
    let strict = if op == BinaryOp::LooseNe { "!==" } else { "===" };
    format!("Use \"{strict}\" instead of \"{}\" to compare values.", op.symbol())
}

pub fn uninitialized(name: &str) -> String {
    format!("Variable \"{name}\" is used before it has been given a value.")
}

pub fn conditional_assignment(kind: &str) -> String {
    format!(
        "This condition assigns {kind}; an assignment is only allowed as a condition if it assigns true or false. Did you mean \"===\"?"
    )
}

pub fn non_boolean_condition(kind: &str) -> String {
    format!("A condition must be true or false, but this one is {kind}.")
}

pub fn arithmetic(op: BinaryOp) -> String {
    if op == BinaryOp::Add {
        "Arguments of \"+\" must both be numbers or both be strings.".to_string()
    } else {
        format!("Arguments of \"{}\" must both be numbers.", op.symbol())
    }
}

pub fn ordering(op: BinaryOp) -> String {
    format!("Arguments of \"{}\" must both be numbers.", op.symbol())
}

pub fn unary(op: UnaryOp) -> String {
    match op {
        UnaryOp::Neg => "Argument of \"-\" must be a number.".to_string(),
        UnaryOp::Not => "Argument of \"!\" must be a boolean.".to_string(),
    }
}

pub fn update(symbol: &str) -> String {
    format!("Argument of \"{symbol}\" must be a number.")
}

pub fn function_compared(op: BinaryOp, function: &str) -> String {
    format!(
        "Arguments of \"{}\" must both be numbers, but \"{function}\" is a function. Did you mean to call it with ()?",
        op.symbol()
    )
}

pub fn arity(function: &str, expected: usize, got: usize) -> String {
    let plural = if expected == 1 { "" } else { "s" };
    format!("Function \"{function}\" expects {expected} argument{plural} but received {got}.")
}

pub fn missing_member(namespace: &str, member: &str) -> String {
    let what = if namespace == "robot" { "command" } else { "member" };
    format!("\"{namespace}\" has no {what} named \"{member}\".")
}
