use std::fmt;

use thiserror::Error;

/// Which of the two brace operations a diagnosis refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Operation {
    Add,
    Circ,
}

impl fmt::Display for Operation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Operation::Add => f.write_str("add"),
            Operation::Circ => f.write_str("circ"),
        }
    }
}

/// The first group axiom a table was found to violate.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GroupWitness {
    Shape { rows: usize, expected: usize },
    EntryOutOfRange { row: usize, col: usize, value: usize },
    RepeatedInRow { row: usize, value: usize },
    RepeatedInColumn { col: usize, value: usize },
    NonAssociative { a: usize, b: usize, c: usize },
}

impl fmt::Display for GroupWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GroupWitness::Shape { rows, expected } => {
                write!(f, "table has a row of length {rows}, expected {expected}")
            }
            GroupWitness::EntryOutOfRange { row, col, value } => {
                write!(f, "entry ({row},{col}) = {value} is not an element index")
            }
            GroupWitness::RepeatedInRow { row, value } => {
                write!(f, "row {row} repeats value {value}")
            }
            GroupWitness::RepeatedInColumn { col, value } => {
                write!(f, "column {col} repeats value {value}")
            }
            GroupWitness::NonAssociative { a, b, c } => {
                write!(f, "(a b) c != a (b c) for (a,b,c) = ({a},{b},{c})")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("{which} table is not a group: {witness}")]
    NotAGroup { which: Operation, witness: GroupWitness },
    #[error("{which} table does not have its identity at index 0")]
    IdentityMismatch { which: Operation },
    #[error("the two tables have different orders ({add} and {circ})")]
    OrderMismatch { add: usize, circ: usize },
    #[error("brace law a∘(b+c) = a∘b − a + a∘c fails for (a,b,c) = ({a},{b},{c})")]
    BraceLawViolation { a: usize, b: usize, c: usize },
    #[error("order {order} exceeds the supported maximum {max}")]
    OrderTooLarge { order: usize, max: usize },
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("not an ideal: {0}")]
    NotAnIdeal(String),
    #[error("not a brace homomorphism: {0}")]
    NotAMorphism(String),
    #[error("map is not surjective: {0}")]
    NotSurjective(String),
    #[error("vector is not in the span of the given generators (coordinate {0})")]
    NotInSpan(usize),
    #[error("moduli do not match ({0} vs {1})")]
    ModulusMismatch(u64, u64),
    #[error("mismatched data: {0}")]
    MismatchedData(String),
    #[error("not a factor set: {0}")]
    InvalidCocycle(String),
    #[error("cocycle value {value} at ({x},{y}) lies outside Z/{factor}")]
    ValueOutsideK { x: usize, y: usize, value: u64, factor: u64 },
    #[error("kernel is not contained in the annihilator (element {0})")]
    NotAnnihilatorContained(usize),
    #[error("internal inconsistency: {0}")]
    Inconsistency(String),
    #[error("budget exceeded: {what} = {requested} > {budget}")]
    TooLarge { what: &'static str, requested: u128, budget: u128 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
