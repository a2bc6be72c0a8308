/// Runtime check functions referenced by instrumented code.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Intrinsic {
    Read,
    Add,
    Sub,
    Mul,
    Div,
    Mod,
    Lt,
    Le,
    Gt,
    Ge,
    LooseEq,
    LooseNe,
    Neg,
    Not,
    Cond,
    AssignCond,
    Inc,
    Dec,
    Call,
    CheckArity,
}

impl Intrinsic {
    pub const ALL: [Intrinsic; 20] = [
        Intrinsic::Read,
        Intrinsic::Add,
        Intrinsic::Sub,
        Intrinsic::Mul,
        Intrinsic::Div,
        Intrinsic::Mod,
        Intrinsic::Lt,
        Intrinsic::Le,
        Intrinsic::Gt,
        Intrinsic::Ge,
        Intrinsic::LooseEq,
        Intrinsic::LooseNe,
        Intrinsic::Neg,
        Intrinsic::Not,
        Intrinsic::Cond,
        Intrinsic::AssignCond,
        Intrinsic::Inc,
        Intrinsic::Dec,
        Intrinsic::Call,
        Intrinsic::CheckArity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Intrinsic::Read => "__checkedRead",
            Intrinsic::Add => "__checkedAdd",
            Intrinsic::Sub => "__checkedSub",
            Intrinsic::Mul => "__checkedMul",
            Intrinsic::Div => "__checkedDiv",
            Intrinsic::Mod => "__checkedMod",
            Intrinsic::Lt => "__checkedLT",
            Intrinsic::Le => "__checkedLE",
            Intrinsic::Gt => "__checkedGT",
            Intrinsic::Ge => "__checkedGE",
            Intrinsic::LooseEq => "__checkedLooseEq",
            Intrinsic::LooseNe => "__checkedLooseNe",
            Intrinsic::Neg => "__checkedNeg",
            Intrinsic::Not => "__checkedNot",
            Intrinsic::Cond => "__checkedCond",
            Intrinsic::AssignCond => "__checkedAssignCond",
            Intrinsic::Inc => "__checkedInc",
            Intrinsic::Dec => "__checkedDec",
            Intrinsic::Call => "__checkedCall",
            Intrinsic::CheckArity => "__checkArity",
        }
    }

    pub fn from_name(name: &str) -> Option<Intrinsic> {
        Intrinsic::ALL.into_iter().find(|i| i.name() == name)
    }
}
