use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("incompatible context: {left} vs {right}")]
    IncompatibleContext { left: String, right: String },

    #[error("unknown generator `{name}` in {context}")]
    UnknownGenerator { name: String, context: String },

    #[error("space mismatch: expected a class on {expected}, got one on {found}")]
    SpaceMismatch { expected: String, found: String },

    #[error("class is not homogeneous of complex degree {expected}")]
    NotHomogeneous { expected: u32 },

    #[error("integrand is not of top complex degree {top}: {class}")]
    NotTopDegree { top: u32, class: String },

    #[error(
        "unsupported representation: pushforward leaves a nonzero diagonal class delta_*({inner}); \
         only integrals of such classes are supported"
    )]
    DiagonalMaterialization { inner: String },

    #[error("weight {weight} is not dominant")]
    NotDominant { weight: String },

    #[error("weight multiset is not invariant under signed permutations (at {weight})")]
    NotWeylInvariant { weight: String },

    #[error("negative multiplicity at {weight} while peeling {highest}: not a character")]
    NegativeMultiplicity { weight: String, highest: String },

    #[error("parameter out of range: {0}")]
    Guard(String),

    #[error("{line}:{column}: {message}; expected one of: {}", expected.join(", "))]
    Syntax {
        line: usize,
        column: usize,
        message: String,
        expected: Vec<String>,
    },

    #[error("evaluation error: {0}")]
    Eval(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
