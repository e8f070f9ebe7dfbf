use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{name} = {value} is outside its domain ({expected})")]
    Domain {
        name: &'static str,
        value: f64,
        expected: &'static str,
    },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("quadrature order {0} exceeds the supported maximum of 1000")]
    OrderTooLarge(usize),

    #[error("root bracket for {0} not found")]
    Convergence(&'static str),

    #[error("airspace radius {r_max} m exceeds d_max = {d_max} m; the convexity condition behind the lower bound does not hold")]
    BoundInvalid { r_max: f64, d_max: f64 },

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn domain(name: &'static str, value: f64, expected: &'static str) -> Self {
        Error::Domain {
            name,
            value,
            expected,
        }
    }
}
