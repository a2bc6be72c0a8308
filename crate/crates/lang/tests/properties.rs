use proptest::prelude::*;

use robojs_lang::gen::generate;
use robojs_lang::js::{number_to_string, string_to_number};
use robojs_lang::syntax::*;

fn expr_spans(e: &Expr, parent: SourceSpan, bad: &mut Vec<String>) {
    if !parent.contains(&e.span) {
        bad.push(format!("{:?} not inside {:?}", e.span, parent));
    }
    match &e.kind {
        ExprKind::Unary { operand, .. } => expr_spans(operand, e.span, bad),
        ExprKind::Binary { left, right, .. } => {
            expr_spans(left, e.span, bad);
            expr_spans(right, e.span, bad);
        }
        ExprKind::Assign { value, target, .. } => {
            expr_spans(value, e.span, bad);
            if !e.span.contains(&target.span) {
                bad.push(format!("target {:?}", target.span));
            }
        }
        ExprKind::Call { callee, args } => {
            expr_spans(callee, e.span, bad);
            args.iter().for_each(|a| expr_spans(a, e.span, bad));
        }
        ExprKind::Paren(inner) => expr_spans(inner, e.span, bad),
        _ => {}
    }
}

fn stmt_spans(s: &Stmt, parent: SourceSpan, bad: &mut Vec<String>) {
    if !parent.contains(&s.span) {
        bad.push(format!("stmt {:?} not inside {:?}", s.span, parent));
    }
    match &s.kind {
        StmtKind::Let { init: Some(e), .. } | StmtKind::Expr(e) | StmtKind::Return(Some(e)) => expr_spans(e, s.span, bad),
        StmtKind::If { cond, then_branch, else_branch } => {
            expr_spans(cond, s.span, bad);
            stmt_spans(then_branch, s.span, bad);
            if let Some(e) = else_branch {
                stmt_spans(e, s.span, bad);
            }
        }
        StmtKind::While { cond, body } => {
            expr_spans(cond, s.span, bad);
            stmt_spans(body, s.span, bad);
        }
        StmtKind::For { init, test, update, body } => {
            if let Some(i) = init {
                stmt_spans(i, s.span, bad);
            }
            test.iter().chain(update.iter()).for_each(|e| expr_spans(e, s.span, bad));
            stmt_spans(body, s.span, bad);
        }
        StmtKind::Function(f) => f.body.iter().for_each(|b| stmt_spans(b, f.span, bad)),
        StmtKind::Block(b) => b.iter().for_each(|b| stmt_spans(b, s.span, bad)),
        _ => {}
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn print_then_parse_is_identity(seed in any::<u64>()) {
        let src = generate(seed);
        let ast = parse_source(&src, 0).unwrap();
        let printed = print(&ast, PrintOptions::default());
        let again = parse_source(&printed, 0).unwrap();
        prop_assert_eq!(strip_spans(&ast), strip_spans(&again));
        prop_assert_eq!(print(&again, PrintOptions::default()), printed);
    }

    #[test]
    fn child_spans_nest_inside_parents(seed in any::<u64>()) {
        let ast = parse_source(&generate(seed), 0).unwrap();
        let mut bad = Vec::new();
        ast.body.iter().for_each(|s| stmt_spans(s, ast.span, &mut bad));
        prop_assert!(bad.is_empty(), "{:?}", bad);
    }

    #[test]
    fn parser_never_panics(src in "[ -~\n]{0,80}") {
        let _ = parse_source(&src, 0);
    }

    #[test]
    fn parser_survives_mutated_programs(seed in any::<u64>(), cut in 0usize..400, junk in "[(){};=+<!a-z0-9\" ]{0,4}") {
        let src = generate(seed);
        let cut = src.char_indices().map(|(i, _)| i).nth(cut).unwrap_or(src.len());
        let mutated = format!("{}{}{}", &src[..cut], junk, &src[cut..]);
        if let Err(diags) = parse_source(&mutated, 0) {
            prop_assert!(!diags.is_empty() && diags.len() <= 50);
            for d in diags {
                prop_assert!(d.span.start_line >= 1);
            }
        }
    }

    #[test]
    fn number_text_round_trips(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        let back = string_to_number(&number_to_string(x));
        prop_assert!(back == x || (x == 0.0 && back == 0.0));
    }
}
