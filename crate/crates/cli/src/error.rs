use std::path::PathBuf;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Read { path: PathBuf, source: std::io::Error },

    #[error("cannot write {path}: {source}")]
    Write { path: PathBuf, source: std::io::Error },

    #[error("malformed document: {0}")]
    Parse(String),

    #[error("{0}")]
    Usage(String),

    #[error(transparent)]
    Core(#[from] qavg::Error),
}

impl CliError {
    /// 2 for unreadable or inconsistent input, 1 for a mathematical failure.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if !is_input_error(e) => 1,
            _ => 2,
        }
    }
}

pub fn is_input_error(e: &qavg::Error) -> bool {
    matches!(
        e,
        qavg::Error::Inconsistent(_)
            | qavg::Error::NotAGroup(_)
            | qavg::Error::NotAnAction(_)
            | qavg::Error::NotClassical
    )
}

pub type CliResult<T> = std::result::Result<T, CliError>;

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_split_input_from_math() {
        assert_eq!(CliError::Parse("x".into()).exit_code(), 2);
        assert_eq!(CliError::Usage("x".into()).exit_code(), 2);
        assert_eq!(CliError::from(qavg::Error::NotClassical).exit_code(), 2);
        assert_eq!(CliError::from(qavg::Error::Inconsistent("x".into())).exit_code(), 2);
        assert_eq!(CliError::from(qavg::Error::NoSolution).exit_code(), 1);
        assert_eq!(CliError::from(qavg::Error::NotKac("x".into())).exit_code(), 1);
    }
}
