use thiserror::Error;

use crate::algebra::BiWeight;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("duplicate generator block name `{0}`")]
    DuplicateName(String),

    #[error("base block `{name}` must have weight 0, found {weight}")]
    BaseWeight { name: String, weight: u32 },

    #[error("even fiber block `{0}` must have positive weight")]
    EvenFiberWeightZero(String),

    #[error("block `{0}` has dimension 0")]
    EmptyBlock(String),

    #[error("`{0}` is a reserved word and cannot name a generator block")]
    ReservedName(String),

    #[error("elements live over different generator tables")]
    TableMismatch,

    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),

    #[error("generator `{generator}`: expected bi-weight {expected}, found terms of bi-weight {}", list(found))]
    WeightMismatch {
        generator: String,
        expected: BiWeight,
        found: Vec<BiWeight>,
    },

    #[error("{slot}: entry must be a function of the even generators (no odd factors)")]
    OddCoefficient { slot: String },

    #[error("{slot}: expected weight {expected}, found terms of weight {found:?}")]
    CoefficientWeight {
        slot: String,
        expected: i64,
        found: Vec<u32>,
    },

    #[error("bracket entries for ({first}, {second}) -> {target} are not antisymmetric")]
    NotAntisymmetric {
        first: String,
        second: String,
        target: String,
    },

    #[error("homological check requires an odd form-degree shift, got {0}")]
    EvenShift(i32),

    #[error("differential must have bi-degree (0,1), got ({0},{1})")]
    NotCeDegree(i32, i32),

    #[error("truncation weight {weight} outside 1..={degree}")]
    TruncationRange { weight: u32, degree: u32 },

    #[error("weight {weight} outside 1..={degree}")]
    WeightRange { weight: u32, degree: u32 },

    #[error("generator `{0}` already exists in the chart")]
    NameClash(String),

    #[error("input must be a degree-0 algebroid, found degree {0}")]
    NotDegreeZero(u32),

    #[error("graded bundle chart may only declare base and even blocks; `{0}` is odd")]
    OddInGradedBundle(String),

    #[error("base blocks do not match: {0}")]
    BaseMismatch(String),

    #[error("weighted Lie algebra must live over a point, found base block `{0}`")]
    HasBase(String),

    #[error("base-degree cap {cap} does not close the complex: {witness}")]
    CapTooSmall { cap: u32, witness: String },

    #[error("gauge block {block} sends a basis element outside the allowed sector: {detail}")]
    GaugeDegree { block: usize, detail: String },

    #[error("substitution for `{generator}` does not preserve bi-weight")]
    SubstitutionWeight { generator: String },

    #[error("substitution is not triangular at `{0}`")]
    NotTriangular(String),

    #[error("{0}")]
    Expr(String),
}

pub type Result<T> = std::result::Result<T, Error>;

fn list(ws: &[BiWeight]) -> String {
    ws.iter().map(|w| w.to_string()).collect::<Vec<_>>().join(", ")
}
