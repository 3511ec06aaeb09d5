//! Error plumbing: every failure funnels into [`CliError`], which decides
//! the process exit code.

use std::fmt;

use distkit::Error;

pub enum CliError {
    /// A distribution-layer error; carries the library's own message.
    Lib(Error),
    Io(std::io::Error),
    Csv(csv::Error),
    /// Bad command-line usage: unknown columns, malformed lists, option
    /// combinations that make no sense.
    Usage(String),
    /// The benchmark's correctness gate failed; timings are withheld.
    Gate(String),
}

impl CliError {
    /// Map an error to the process exit code.
    ///
    /// Parameter-validation failures exit with 2, the same code used for
    /// bad command-line usage; the data-quality family gets distinct codes
    /// so scripts can react to each condition.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Lib(err) => match err {
                Error::InvalidParameter(_)
                | Error::BadBandwidth(_)
                | Error::UnknownFamily(_)
                | Error::BadEdges(_)
                | Error::NotASimplex(_) => 2,
                Error::DegenerateData(_) => 3,
                Error::NonPositive(_) => 4,
                Error::EmptyComponent { .. } | Error::EmptyComponents => 5,
                Error::NoCharacteristicFunction(_) => 6,
                _ => 1,
            },
            CliError::Usage(_) => 2,
            CliError::Io(_) | CliError::Csv(_) | CliError::Gate(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Lib(err) => write!(f, "{err}"),
            CliError::Io(err) => write!(f, "{err}"),
            CliError::Csv(err) => write!(f, "{err}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Gate(msg) => write!(f, "{msg}"),
        }
    }
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::Lib(err)
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err)
    }
}

impl From<csv::Error> for CliError {
    fn from(err: csv::Error) -> Self {
        CliError::Csv(err)
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        CliError::Io(err.into())
    }
}
