use std::fmt;

/// Command failure with the documented exit-code mapping.
#[derive(Debug)]
pub enum CmdError {
    /// Malformed input (config syntax, unparsable numbers): exit 2.
    Parse(String),
    /// Valid syntax, inadmissible values: exit 3.
    Domain(String),
    /// Grid cannot resolve the request or a fit is impossible: exit 4.
    Resolution(String),
    /// Filesystem trouble: exit 1.
    Io(String),
}

impl CmdError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CmdError::Parse(_) => 2,
            CmdError::Domain(_) => 3,
            CmdError::Resolution(_) => 4,
            CmdError::Io(_) => 1,
        }
    }
}

impl fmt::Display for CmdError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CmdError::Parse(msg) => write!(f, "parse: {msg}"),
            CmdError::Domain(msg) => write!(f, "domain: {msg}"),
            CmdError::Resolution(msg) => write!(f, "resolution: {msg}"),
            CmdError::Io(msg) => write!(f, "io: {msg}"),
        }
    }
}

impl From<std::io::Error> for CmdError {
    fn from(err: std::io::Error) -> Self {
        CmdError::Io(err.to_string())
    }
}

pub type CmdResult<T> = Result<T, CmdError>;
