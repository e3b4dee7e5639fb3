use thiserror::Error;

/// Everything that can go wrong in this crate.
///
/// Ray indices carried by variants are 0-based; `Display` prints them 1-based
/// to match the `D_1..D_d` labels used in output.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("fan needs at least 3 rays, got {0}")]
    TooFewRays(usize),
    #[error("ray {} = ({}, {}) is not primitive", .index + 1, .ray.0, .ray.1)]
    NotPrimitive { index: usize, ray: (i64, i64) },
    #[error("ray {} repeats an earlier ray", .index + 1)]
    DuplicateRay { index: usize },
    #[error("rays {} and {} are not in counterclockwise order", .index + 1, .next + 1)]
    NotCounterclockwise { index: usize, next: usize },
    #[error("cone spanned by rays {} and {} is not smooth (det = {det})", .index + 1, .next + 1)]
    NotSmooth { index: usize, next: usize, det: i64 },
    #[error("rays wind {winding} times around the origin; the fan is not complete")]
    NotComplete { winding: usize },
    #[error("every divisor has self-intersection -2")]
    FullCycle,
    #[error("ray {} out of range for {len} rays", .index + 1)]
    IndexOutOfRange { index: usize, len: usize },

    #[error("expected {expected} polytope constants, got {got}")]
    ConstantCount { expected: usize, got: usize },
    #[error("constant of ray {} has {got} coefficients, expected {expected}", .index + 1)]
    ParameterCount {
        index: usize,
        expected: usize,
        got: usize,
    },
    #[error("edge of facet {} has length identically zero", .index + 1)]
    DegenerateEdge { index: usize },
    #[error("edge of facet {} has no positive sample point with t_l in 1..=4", .index + 1)]
    NotKahler { index: usize },
    #[error("edge of facet {} is not a lattice multiple of its direction", .index + 1)]
    NonLatticeEdge { index: usize },

    #[error("dual basis needs at least 4 rays, got {0}")]
    NoDualBasis(usize),
    #[error("Gram matrix of the chosen basis is singular")]
    SingularPairing,

    #[error("disk class has Maslov index {0}, expected 2")]
    WrongMaslov(i64),

    #[error("parameter counts differ: {0} against {1}")]
    ParameterMismatch(usize, usize),
    #[error("q{} must lie strictly between 0 and 1", .index + 1)]
    OutOfRange { index: usize },

    #[error("surface is not semi-Fano")]
    NotSemiFano,
    #[error("pairing of a disk class with the bulk divisor is not an integer")]
    NonIntegralPairing,
    #[error("bulk deformation by the point class is not supported")]
    UnsupportedBulk,

    #[error("quantum cohomology of P^2 is outside the scope of the primitive-pair presentation")]
    IsP2,
    #[error("rays {} and {} span a cone; not a primitive pair", .0 + 1, .1 + 1)]
    NotPrimitivePair(usize, usize),
    #[error("curve class has first Chern number {got}, expected {expected}")]
    WrongChern { expected: i64, got: i64 },

    #[error("Jacobian ring is infinite dimensional at this parameter sample")]
    InfiniteDimensional,

    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {source}")]
    AtLine {
        line: usize,
        #[source]
        source: Box<Error>,
    },
}

pub type Result<T> = std::result::Result<T, Error>;
