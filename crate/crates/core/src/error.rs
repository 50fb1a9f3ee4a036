use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValueError {
    #[error("denominator is zero")]
    ZeroDenominator,
    #[error("value {0} is outside [0,1]")]
    OutOfUnitInterval(String),
    #[error("malformed rational `{0}`")]
    Malformed(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("connective `{0}` is not enabled in the active profile")]
    NotInProfile(&'static str),
    #[error("truth constant out of range: {0}")]
    ConstantOutOfRange(ValueError),
}

/// Parse failure at a byte offset of the input.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("at byte {position}: {kind}")]
pub struct ParseError {
    pub position: usize,
    pub kind: ParseErrorKind,
}

impl ParseError {
    pub(crate) fn syntax(position: usize, msg: impl Into<String>) -> Self {
        ParseError {
            position,
            kind: ParseErrorKind::Syntax(msg.into()),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("valuation does not assign variable `{0}`")]
    MissingVariable(String),
    #[error("connective `{0}` is not available in this model")]
    ProfileViolation(&'static str),
    #[error("value {0} does not lie on the chain grid")]
    OffGrid(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("carrier size {size} exceeds bound {bound}")]
    SizeBound { size: usize, bound: usize },
    #[error("line {line}: {msg}")]
    Format { line: usize, msg: String },
    #[error("unknown operation `{0}`")]
    UnknownOperation(String),
}

/// Errors from reading or writing textual artifacts (theory and proof files).
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FormatError {
    #[error("line {line}: {source}")]
    Formula { line: usize, source: ParseError },
    #[error("line {line}: {msg}")]
    Malformed { line: usize, msg: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LemmaError {
    #[error("lemma `{name}` fails at {assignment}: value {value}")]
    Counterexample {
        name: String,
        assignment: String,
        value: String,
    },
    #[error("lemma `{0}` is already registered")]
    Duplicate(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SearchError {
    #[error("search budget exhausted after {steps} steps without a proof")]
    BudgetExhausted { steps: usize },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SynthesisError {
    #[error("truth constants are not enabled")]
    ConstantsDisabled,
    #[error("formula has variables; ground synthesis needs a closed formula")]
    NotGround,
    #[error("requested degree {requested} exceeds the value {value}")]
    DegreeTooHigh { requested: String, value: String },
    #[error("connective `{0}` is not enabled in the active profile")]
    ProfileViolation(&'static str),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DegreeError {
    #[error("product connective outside the piecewise-linear fragment")]
    ProductNode,
    #[error("{count} truncation nodes exceed the cap of {cap}")]
    RegionCap { count: usize, cap: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error(transparent)]
    Eval(#[from] EvalError),
}
