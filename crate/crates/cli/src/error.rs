use std::fmt;
use std::process::ExitCode;

/// Failure classes, each with its own exit status.
#[derive(Debug)]
pub enum CliError {
    /// Bad config, unknown experiment, failed validation: exit 2.
    Config(Vec<String>),
    /// CFL abort, node in a decomposed field: exit 3.
    Numerical(String),
    /// Unreadable input or unwritable output: exit 4.
    Io(String),
}

impl CliError {
    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(vec![msg.into()])
    }

    pub fn io(context: impl fmt::Display, err: impl fmt::Display) -> Self {
        CliError::Io(format!("{context}: {err}"))
    }

    pub fn exit_code(&self) -> ExitCode {
        ExitCode::from(match self {
            CliError::Config(_) => 2,
            CliError::Numerical(_) => 3,
            CliError::Io(_) => 4,
        })
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Config(msgs) => {
                for (i, m) in msgs.iter().enumerate() {
                    if i > 0 {
                        writeln!(f)?;
                    }
                    write!(f, "config error: {m}")?;
                }
                Ok(())
            }
            CliError::Numerical(m) => write!(f, "numerical failure: {m}"),
            CliError::Io(m) => write!(f, "i/o error: {m}"),
        }
    }
}

impl From<soliton_core::Error> for CliError {
    fn from(e: soliton_core::Error) -> Self {
        match e {
            soliton_core::Error::Config(msg) => CliError::config(msg),
            e if e.is_numerical() => CliError::Numerical(e.to_string()),
            e => CliError::config(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
