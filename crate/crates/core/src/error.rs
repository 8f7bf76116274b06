use core::fmt;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    SelfLoop {
        vertex: usize,
    },
    VertexOutOfRange {
        vertex: usize,
        n: usize,
    },
    /// A vertex set was built over a different ground set than the graph.
    GroundMismatch {
        expected: usize,
        found: usize,
    },
    SampleTooLarge {
        requested: usize,
        population: usize,
    },
    InvalidParameter {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },
    NotIndependent {
        u: usize,
        v: usize,
    },
    /// Exhaustive oracle refused an instance whose search space exceeds the cap.
    ExhaustiveCapExceeded {
        work: f64,
        cap: u64,
    },
    /// Container-shrinking hypothesis does not hold for the supplied set.
    ShrinkingHypothesis {
        detail: &'static str,
        observed: f64,
        limit: f64,
    },
    /// The union-size validator only covers `0 < ε < e^{-2}`.
    EpsilonOutOfRange {
        epsilon: f64,
    },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::SelfLoop { vertex } => write!(f, "self-loop at vertex {vertex}"),
            Error::VertexOutOfRange { vertex, n } => {
                write!(f, "vertex {vertex} out of range for graph on {n} vertices")
            }
            Error::GroundMismatch { expected, found } => write!(
                f,
                "vertex set ground size {found} does not match graph size {expected}"
            ),
            Error::SampleTooLarge {
                requested,
                population,
            } => write!(
                f,
                "cannot draw {requested} vertices without replacement from {population}"
            ),
            Error::InvalidParameter {
                name,
                value,
                expected,
            } => {
                write!(f, "invalid {name} = {value}: expected {expected}")
            }
            Error::NotIndependent { u, v } => {
                write!(f, "set is not independent: contains edge ({u}, {v})")
            }
            Error::ExhaustiveCapExceeded { work, cap } => write!(
                f,
                "exhaustive search space {work:.3e} exceeds cap {cap}; certify analytically instead"
            ),
            Error::ShrinkingHypothesis {
                detail,
                observed,
                limit,
            } => {
                write!(
                    f,
                    "shrinking hypothesis violated: {detail} ({observed} vs limit {limit})"
                )
            }
            Error::EpsilonOutOfRange { epsilon } => write!(
                f,
                "epsilon {epsilon} outside the validated range 0 < epsilon < e^-2"
            ),
        }
    }
}

impl core::error::Error for Error {}

pub type Result<T> = core::result::Result<T, Error>;

pub(crate) fn check_fraction(name: &'static str, value: f64, allow_one: bool) -> Result<()> {
    let ok = value > 0.0 && (value < 1.0 || (allow_one && value == 1.0));
    if ok {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            expected: if allow_one {
                "a value in (0, 1]"
            } else {
                "a value in (0, 1)"
            },
        })
    }
}
