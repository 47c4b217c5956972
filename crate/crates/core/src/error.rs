use crate::algebra::rational::Rat;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("ray {0} is zero")]
    ZeroRay(usize),
    #[error("ray {index} has length {len}, expected ambient dimension {dim}")]
    DimensionMismatch { index: usize, len: usize, dim: usize },
    #[error("cone {cone} refers to ray {ray}, which does not exist")]
    RayIndexOutOfRange { cone: usize, ray: usize },
    #[error("rays {0} and {1} point in the same direction")]
    DuplicateRay(usize, usize),
    #[error("cone {0} is not pointed")]
    NonPointedCone(usize),
    #[error("ray {ray} is not an extreme ray of cone {cone}")]
    NonExtremeRay { cone: usize, ray: usize },
    #[error("cones {0} and {1} do not intersect in a common face")]
    IntersectionNotAFace(usize, usize),
    #[error("cone is not in the fan")]
    ConeNotInFan,
    #[error("fan is not purely dimensional")]
    NotPurelyDimensional,
    #[error("fine cone {0} is not contained in any coarse cone")]
    NotARefinement(usize),
    #[error("supports differ: {0}")]
    SupportMismatch(String),
    #[error("fans live in different ambient spaces ({0} vs {1})")]
    AmbientMismatch(usize, usize),
    #[error("cone {cone} is not Gorenstein: degree map takes value {value} at {witness:?}")]
    NotGorenstein { cone: usize, witness: Vec<i64>, value: Rat },
    #[error("degree maps of the two fans differ on fine cone {0}")]
    DegreeMapMismatch(usize),
    #[error("degree cap too small: reduced space is nonzero at sentinel degree {degree:?}")]
    CapTooSmall { degree: Vec<u32> },
    #[error("not expressible in c and d (witness word {word:?})")]
    NotCdExpressible { word: String },
    #[error("eta' of {left}|{right} has negative exponents")]
    NegativeExponentResidue { left: String, right: String },
    #[error("poset is not Eulerian: interval [{0}, {1}] fails the parity test")]
    NotEulerian(usize, usize),
    #[error("poset has no greatest element")]
    NoGreatestElement,
    #[error("poset has no least element")]
    NoLeastElement,
    #[error("target fan is not a single cone")]
    TargetNotSingleCone,
    #[error("pushforward stalk at cone {0} failed the freeness certificate")]
    FreenessCertificateFailed(usize),
    #[error("decomposition identity fails: {0}")]
    ConsistencyMismatch(String),
    #[error("triple-graded computation disagrees with the summand formula: {0}")]
    TripleGradedMismatch(String),
    #[error("ambient dimension {dim} exceeds the cap {cap}")]
    DimensionCap { dim: usize, cap: usize },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
